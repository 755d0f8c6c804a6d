#include <stdio.h>
#include <string.h>

#include "isospec.h"

int main(void) {
    IsospecPoly *a = NULL, *b = NULL, *p = NULL;
    char *text = NULL;
    if (isospec_poly_parse("u + v", &a) != ISOSPEC_STATUS_OK) return 1;
    if (isospec_poly_parse("u - v", &b) != ISOSPEC_STATUS_OK) return 1;
    if (isospec_poly_mul(a, b, &p) != ISOSPEC_STATUS_OK) return 1;
    if (isospec_poly_to_string(p, &text) != ISOSPEC_STATUS_OK) return 1;
    printf("%s\n", text);
    int ok = strcmp(text, "u^2 - v^2") == 0;
    isospec_string_free(text);
    isospec_poly_free(a);
    isospec_poly_free(b);
    isospec_poly_free(p);

    if (isospec_poly_parse("(", &a) != ISOSPEC_STATUS_INVALID_INPUT) return 1;
    if (isospec_last_error() == NULL) return 1;
    return ok ? 0 : 2;
}

//! Recursive-descent parser for polynomial text.
//!
//! ```text
//! expr     := ('+'|'-')? term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := primary ('^' nat)*
//! primary  := rational | var | '(' expr ')'
//! rational := int ('/' posint)?
//! ```
//!
//! The optional leading sign is what lets printed polynomials with a negative
//! leading coefficient parse back.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{Poly, PolyError, Rational, Result, Vars};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (l, c) = (line, column);
        let single = |tok| Spanned {
            tok,
            line: l,
            column: c,
        };
        match ch {
            '\n' => {
                chars.next();
                line += 1;
                column = 1;
                continue;
            }
            ch if ch.is_whitespace() => {
                chars.next();
                column += 1;
                continue;
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                        column += 1;
                    } else {
                        break;
                    }
                }
                let n: BigInt = digits.parse().expect("ascii digits");
                out.push(single(Tok::Int(n)));
                continue;
            }
            ch if ch.is_alphabetic() || ch == '_' => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_alphanumeric() || d == '_' {
                        name.push(d);
                        chars.next();
                        column += 1;
                    } else {
                        break;
                    }
                }
                out.push(single(Tok::Ident(name)));
                continue;
            }
            _ => {}
        }
        let tok = match ch {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(PolyError::Syntax {
                    line,
                    column,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        chars.next();
        column += 1;
        out.push(single(tok));
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, at: &Spanned, message: impl Into<String>) -> Result<T> {
        Err(PolyError::Syntax {
            line: at.line,
            column: at.column,
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Poly> {
        let negate = match self.peek().tok {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let mut base = self.primary()?;
        while self.peek().tok == Tok::Caret {
            self.bump();
            let at = self.bump();
            let Tok::Int(n) = &at.tok else {
                return self.error(&at, "expected a natural-number exponent after `^`");
            };
            let Some(e) = n.to_u32() else {
                return self.error(&at, "exponent too large");
            };
            base = base.pow(e);
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Poly> {
        let at = self.bump();
        match &at.tok {
            Tok::Int(n) => {
                let num = n.clone();
                if self.peek().tok == Tok::Slash {
                    self.bump();
                    let den_at = self.bump();
                    let Tok::Int(d) = &den_at.tok else {
                        return self.error(&den_at, "expected a positive integer denominator");
                    };
                    if d.is_zero() {
                        return Err(PolyError::ZeroDenominator {
                            line: den_at.line,
                            column: den_at.column,
                        });
                    }
                    Ok(Poly::constant(self.vars, Rational::new(num, d.clone())))
                } else {
                    Ok(Poly::constant(self.vars, Rational::from_integer(num)))
                }
            }
            Tok::Ident(name) => match self.vars.index_of(name) {
                Some(i) => Ok(Poly::var_at(self.vars, i)),
                None => Err(PolyError::UnknownVariable {
                    name: name.clone(),
                    line: at.line,
                    column: at.column,
                }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return self.error(&close, "expected `)`");
                }
                Ok(inner)
            }
            Tok::End => self.error(&at, "unexpected end of input"),
            other => self.error(&at, format!("unexpected token {}", describe(other))),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Int(_) => "integer",
        Tok::Ident(_) => "identifier",
        Tok::Plus => "`+`",
        Tok::Minus => "`-`",
        Tok::Star => "`*`",
        Tok::Slash => "`/`",
        Tok::Caret => "`^`",
        Tok::LParen => "`(`",
        Tok::RParen => "`)`",
        Tok::End => "end of input",
    }
}

/// Parses `text` as a polynomial in the given context.
pub fn parse_poly(text: &str, vars: &Vars) -> Result<Poly> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, pos: 0, vars };
    let p = parser.expr()?;
    let rest = parser.peek().clone();
    if rest.tok != Tok::End {
        return parser.error(&rest, format!("unexpected token {}", describe(&rest.tok)));
    }
    Ok(p)
}

/// Parses `text`, building the context from the identifiers it mentions
/// (in default order) followed by any `extra` names.
pub fn parse_poly_in(text: &str, extra: &[&str]) -> Result<Poly> {
    let toks = lex(text)?;
    let mut names: Vec<String> = toks
        .iter()
        .filter_map(|t| match &t.tok {
            Tok::Ident(n) => Some(n.clone()),
            _ => None,
        })
        .collect();
    names.extend(extra.iter().map(|s| s.to_string()));
    let vars = Vars::default_order(names);
    parse_poly(text, &vars)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Vars {
        Vars::new(["u", "t"]).unwrap()
    }

    #[test]
    fn reads_examples() {
        let c = ctx();
        let p = parse_poly("t^2 - 1", &c).unwrap();
        assert_eq!(p.coeff(&[0, 2]), Rational::from_integer(1.into()));
        assert_eq!(p.coeff(&[0, 0]), Rational::from_integer((-1).into()));
        assert_eq!(p.num_terms(), 2);

        assert!(parse_poly("0", &c).unwrap().is_zero());

        let p = parse_poly("3/2*t*u^2", &c).unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coeff(&[2, 1]), Rational::new(3.into(), 2.into()));
    }

    #[test]
    fn nested_powers_and_parens() {
        let c = ctx();
        assert_eq!(parse_poly("(u+1)^2^2", &c).unwrap(), parse_poly("(u+1)^4", &c).unwrap());
        assert_eq!(parse_poly("-(t - 1)", &c).unwrap(), parse_poly("1 - t", &c).unwrap());
    }

    #[test]
    fn unknown_variable_reports_position() {
        let err = parse_poly("t + \n  2*x", &ctx()).unwrap_err();
        assert_eq!(
            err,
            PolyError::UnknownVariable {
                name: "x".into(),
                line: 2,
                column: 5
            }
        );
    }

    #[test]
    fn zero_denominator() {
        let err = parse_poly("1/0*t", &ctx()).unwrap_err();
        assert_eq!(err, PolyError::ZeroDenominator { line: 1, column: 3 });
    }

    #[test]
    fn syntax_errors() {
        for bad in ["t +", "(t", "t^u", "t t", "*t", "t/2", "1/-2"] {
            assert!(
                matches!(parse_poly(bad, &ctx()), Err(PolyError::Syntax { .. })),
                "{bad} should be a syntax error"
            );
        }
    }

    #[test]
    fn auto_context_uses_default_order() {
        let p = parse_poly_in("a*t + u", &[]).unwrap();
        assert_eq!(p.vars().names(), ["u", "t", "a"]);
    }
}

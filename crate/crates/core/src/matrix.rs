//! Dense matrices with polynomial entries.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use thiserror::Error;

use crate::poly::{parse_poly, Poly, PolyError, Rational, Vars};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("entry ({0},{1}) is not a rational constant")]
    NonConstant(usize, usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub type Result<T> = std::result::Result<T, MatrixError>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    vars: Vars,
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(vars: &Vars, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            vars: vars.clone(),
            rows,
            cols,
            data: vec![Poly::zero(vars); rows * cols],
        }
    }

    pub fn identity(vars: &Vars, n: usize) -> Self {
        let mut m = Self::zeros(vars, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(vars));
        }
        m
    }

    pub fn from_rows(vars: &Vars, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(MatrixError::Dimension(format!(
                    "row {i} has {} entries, expected {c}",
                    row.len()
                )));
            }
            for p in row {
                vars.ensure_same(p.vars())?;
                data.push(p);
            }
        }
        Ok(PolyMatrix {
            vars: vars.clone(),
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_ints(vars: &Vars, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Poly::from_int(vars, x)).collect())
            .collect();
        Self::from_rows(vars, rows).expect("rectangular integer rows")
    }

    /// Entries given as polynomial text.
    pub fn parse(vars: &Vars, rows: &[&[&str]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| parse_poly(s, vars))
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Self::from_rows(vars, rows)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        debug_assert_eq!(p.vars(), &self.vars);
        self.data[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        PolyMatrix {
            vars: self.vars.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn embed(&self, target: &Vars) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|p| p.embed(target))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(PolyMatrix {
            vars: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(PolyMatrix {
            vars: self.vars.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(PolyMatrix {
            vars: self.vars.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.vars.ensure_same(&other.vars)?;
        if self.cols != other.rows {
            return Err(MatrixError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.vars, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero(&self.vars);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        self.vars.ensure_same(&other.vars)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(MatrixError::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn scale(&self, c: &Poly) -> Self {
        self.map(|p| p * c)
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(&self.vars, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Kronecker product; basis of the result is `e_i ⊗ f_j` at index
    /// `i * other.rows + j`.
    pub fn kron(&self, other: &Self) -> Self {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Self::zeros(&self.vars, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Poly {
        (0..self.rows.min(self.cols)).fold(Poly::zero(&self.vars), |acc, i| acc + self.get(i, i))
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        let mut acc = Self::identity(&self.vars, self.rows);
        for _ in 0..e {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let mut out = Self::zeros(&self.vars, rows.len(), cols.len());
        for (a, i) in rows.clone().enumerate() {
            for (b, j) in cols.clone().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Assembles a block matrix from a grid of blocks.
    pub fn block(vars: &Vars, grid: &[&[&PolyMatrix]]) -> Result<Self> {
        let heights: Vec<usize> = grid.iter().map(|row| row[0].rows).collect();
        let widths: Vec<usize> = grid[0].iter().map(|b| b.cols).collect();
        let mut out = Self::zeros(vars, heights.iter().sum(), widths.iter().sum());
        let mut r0 = 0;
        for (bi, row) in grid.iter().enumerate() {
            if row.len() != widths.len() {
                return Err(MatrixError::Dimension("ragged block grid".into()));
            }
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                if b.rows != heights[bi] || b.cols != widths[bj] {
                    return Err(MatrixError::Dimension(format!(
                        "block ({bi},{bj}) is {}x{}",
                        b.rows, b.cols
                    )));
                }
                vars.ensure_same(&b.vars)?;
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        out.set(r0 + i, c0 + j, b.get(i, j).clone());
                    }
                }
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        Ok(out)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square() && *self == -&self.transpose()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::one(&self.vars));
        }
        let mut a: Vec<Vec<Poly>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = Rational::one();
        let mut prev = Poly::one(&self.vars);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(Poly::zero(&self.vars)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num
                        .div_exact(&prev)
                        .expect("Bareiss division is exact over an integral domain");
                }
            }
            prev = a[k][k].clone();
        }
        Ok(a[n - 1][n - 1].scale(&sign))
    }

    /// Determinant by Laplace expansion along the first row.
    pub fn det_cofactor(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        Ok(laplace(self))
    }

    pub fn constant_entries(&self) -> Result<Vec<Rational>> {
        let mut out = Vec::with_capacity(self.data.len());
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.push(self.get(i, j).constant_value().ok_or(MatrixError::NonConstant(i, j))?);
            }
        }
        Ok(out)
    }

    /// Inverse of a matrix with rational constant entries (Gauss–Jordan).
    pub fn inverse_rational(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let vals = self.constant_entries()?;
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row = vals[i * n..(i + 1) * n].to_vec();
                row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(MatrixError::Singular)?;
            a.swap(col, piv);
            let inv = a[col][col].recip();
            for x in a[col].iter_mut() {
                *x *= &inv;
            }
            let pivot = a[col].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (x, p) in row.iter_mut().zip(&pivot) {
                        *x -= &f * p;
                    }
                }
            }
        }
        let mut out = Self::zeros(&self.vars, n, n);
        for (i, row) in a.iter().enumerate() {
            for j in 0..n {
                out.set(i, j, Poly::constant(&self.vars, row[n + j].clone()));
            }
        }
        Ok(out)
    }
}

fn laplace(m: &PolyMatrix) -> Poly {
    let n = m.rows;
    match n {
        0 => Poly::one(&m.vars),
        1 => m.get(0, 0).clone(),
        _ => {
            let mut acc = Poly::zero(&m.vars);
            for j in 0..n {
                let a = m.get(0, j);
                if a.is_zero() {
                    continue;
                }
                let mut minor = PolyMatrix::zeros(&m.vars, n - 1, n - 1);
                for i in 1..n {
                    let mut c = 0;
                    for k in 0..n {
                        if k != j {
                            minor.set(i - 1, c, m.get(i, k).clone());
                            c += 1;
                        }
                    }
                }
                let term = a * &laplace(&minor);
                acc = if j % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

macro_rules! mat_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&PolyMatrix> for &PolyMatrix {
            type Output = PolyMatrix;
            fn $method(self, rhs: &PolyMatrix) -> PolyMatrix {
                self.$checked(rhs)
                    .unwrap_or_else(|e| panic!("{}: {e}", stringify!($method)))
            }
        }
        impl $trait<PolyMatrix> for PolyMatrix {
            type Output = PolyMatrix;
            fn $method(self, rhs: PolyMatrix) -> PolyMatrix {
                (&self).$method(&rhs)
            }
        }
    };
}

mat_binop!(Add, add, checked_add);
mat_binop!(Sub, sub, checked_sub);
mat_binop!(Mul, mul, checked_mul);

impl Neg for &PolyMatrix {
    type Output = PolyMatrix;
    fn neg(self) -> PolyMatrix {
        self.map(|p| -p)
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            f.write_str(&row.join(", "))?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix{}x{}{}", self.rows, self.cols, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Vars {
        Vars::new(["a", "b", "c", "d"]).unwrap()
    }

    #[test]
    fn det_two_by_two() {
        let m = PolyMatrix::parse(&ctx(), &[&["a", "b"], &["c", "d"]]).unwrap();
        let want = parse_poly("a*d - b*c", &ctx()).unwrap();
        assert_eq!(m.det().unwrap(), want);
        assert_eq!(m.det_cofactor().unwrap(), want);
    }

    #[test]
    fn bareiss_agrees_with_laplace_symbolic() {
        let m = PolyMatrix::parse(
            &ctx(),
            &[
                &["a", "b", "0", "1"],
                &["c", "a+d", "2", "b"],
                &["1", "0", "d", "c^2"],
                &["b", "1", "a", "0"],
            ],
        )
        .unwrap();
        assert_eq!(m.det().unwrap(), m.det_cofactor().unwrap());
    }

    #[test]
    fn kron_layout() {
        let v = ctx();
        let a = PolyMatrix::from_ints(&v, &[&[1, 2], &[3, 4]]);
        let i = PolyMatrix::identity(&v, 2);
        let k = a.kron(&i);
        assert_eq!(k.get(0, 2), &Poly::from_int(&v, 2));
        assert_eq!(k.get(3, 1), &Poly::from_int(&v, 3));
        assert_eq!(k.get(1, 0), &Poly::zero(&v));
    }

    #[test]
    fn rational_inverse() {
        let v = ctx();
        let q = PolyMatrix::from_ints(&v, &[&[0, 0, 1], &[0, -2, 0], &[1, 0, 0]]);
        let inv = q.inverse_rational().unwrap();
        assert_eq!(&q * &inv, PolyMatrix::identity(&v, 3));
        let sing = PolyMatrix::from_ints(&v, &[&[1, 2], &[2, 4]]);
        assert_eq!(sing.inverse_rational().unwrap_err(), MatrixError::Singular);
    }

    #[test]
    fn block_assembly() {
        let v = ctx();
        let z = PolyMatrix::zeros(&v, 2, 2);
        let i = PolyMatrix::identity(&v, 2);
        let q = PolyMatrix::block(&v, &[&[&z, &i], &[&i, &z]]).unwrap();
        assert!(q.is_symmetric());
        assert_eq!(q.det().unwrap(), Poly::one(&v));
    }
}

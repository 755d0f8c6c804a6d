//! Linear algebra over a polynomial base ring `R = Q[x..]` through its
//! fraction field.
//!
//! Kernels are computed over `Frac(R)` and then cleared of denominators. When
//! `R` has at most one variable it is a PID and a primitive vector spans the
//! saturated rank-one kernel exactly; [`is_pid`] reports whether that holds.

use crate::matrix::PolyMatrix;
use crate::poly::{gcd_univariate, Poly, Vars};

/// Element of the fraction field of `Q[vars]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.vars());
        RatFunc { num: p, den }
    }

    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        RatFunc { num, den }.reduced()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduced(self) -> Self {
        let vars = self.num.vars().clone();
        if self.num.is_zero() {
            return RatFunc {
                num: Poly::zero(&vars),
                den: Poly::one(&vars),
            };
        }
        let RatFunc { mut num, mut den } = self;
        if let Some(q) = num.div_exact(&den) {
            return RatFunc {
                num: q,
                den: Poly::one(&vars),
            };
        }
        if let Ok(g) = gcd_univariate(&num, &den) {
            if !g.is_constant() {
                num = num.div_exact(&g).expect("gcd divides");
                den = den.div_exact(&g).expect("gcd divides");
            }
        }
        // normalize so the denominator's leading coefficient is 1
        if let Some((_, c)) = den.leading_term() {
            let inv = c.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone());
        }
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn div(&self, o: &Self) -> Self {
        assert!(!o.is_zero(), "division by zero");
        RatFunc::new(&self.num * &o.den, &self.den * &o.num)
    }
}

/// True when `Q[vars]` (restricted to the variables in use) is a PID.
pub fn is_pid(entries: &[Poly]) -> bool {
    let mut used: Vec<usize> = Vec::new();
    for p in entries {
        for i in p.used_vars() {
            if !used.contains(&i) {
                used.push(i);
            }
        }
    }
    used.len() <= 1
}

/// Reduced row-echelon form over the fraction field, with pivot columns.
pub fn rref(m: &PolyMatrix) -> (Vec<Vec<RatFunc>>, Vec<usize>) {
    let mut a: Vec<Vec<RatFunc>> = (0..m.rows())
        .map(|i| m.row(i).iter().cloned().map(RatFunc::from_poly).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = x.div(&inv);
        }
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x = x.sub(&f.mul(p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &PolyMatrix) -> usize {
    rref(m).1.len()
}

/// Basis of the right kernel over `Frac(R)`, each vector cleared of
/// denominators and made primitive (see [`primitive`]).
pub fn nullspace(m: &PolyMatrix) -> Vec<Vec<Poly>> {
    let vars = m.vars().clone();
    let (a, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v: Vec<RatFunc> = vec![RatFunc::from_poly(Poly::zero(&vars)); m.cols()];
            v[f] = RatFunc::from_poly(Poly::one(&vars));
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = a[row][f].neg();
            }
            primitive(&clear_denominators(&v))
        })
        .collect()
}

fn clear_denominators(v: &[RatFunc]) -> Vec<Poly> {
    let vars = v[0].num.vars().clone();
    let mut l = Poly::one(&vars);
    for x in v {
        if x.den.is_constant() {
            continue;
        }
        l = lcm(&l, &x.den);
    }
    v.iter()
        .map(|x| (&x.num * &l).div_exact(&x.den).expect("lcm is a multiple"))
        .collect()
}

fn lcm(a: &Poly, b: &Poly) -> Poly {
    if let Ok(g) = gcd_univariate(a, b) {
        if !g.is_zero() {
            return (a * b).div_exact(&g).expect("gcd divides");
        }
    }
    if b.div_exact(a).is_some() {
        return b.clone();
    }
    if a.div_exact(b).is_some() {
        return a.clone();
    }
    a * b
}

/// Divides out the content when it is computable (one variable in use) and
/// scales so the last nonzero entry has leading coefficient 1.
pub fn primitive(v: &[Poly]) -> Vec<Poly> {
    let Some(last) = v.iter().rev().find(|p| !p.is_zero()) else {
        return v.to_vec();
    };
    let mut out = v.to_vec();
    if is_pid(v) {
        let mut g = Poly::zero(last.vars());
        for p in v {
            g = gcd_univariate(&g, p).expect("pid base");
        }
        if !g.is_zero() && !g.is_constant() {
            out = out.iter().map(|p| p.div_exact(&g).expect("content divides")).collect();
        }
    }
    let last = out.iter().rev().find(|p| !p.is_zero()).unwrap();
    let c = last.leading_term().unwrap().1.recip();
    out.iter().map(|p| p.scale(&c)).collect()
}

/// Greedy choice of linearly independent columns, left to right.
pub fn independent_columns(m: &PolyMatrix) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for j in 0..m.cols() {
        let mut cols = chosen.clone();
        cols.push(j);
        let sub = select_columns(m, &cols);
        if rank(&sub) == cols.len() {
            chosen.push(j);
        }
    }
    chosen
}

pub fn select_columns(m: &PolyMatrix, cols: &[usize]) -> PolyMatrix {
    let vars: &Vars = m.vars();
    let mut out = PolyMatrix::zeros(vars, m.rows(), cols.len());
    for i in 0..m.rows() {
        for (k, &j) in cols.iter().enumerate() {
            out.set(i, k, m.get(i, j).clone());
        }
    }
    out
}

/// Checks `m * v = 0` exactly.
pub fn is_in_kernel(m: &PolyMatrix, v: &[Poly]) -> bool {
    (0..m.rows()).all(|i| {
        m.row(i)
            .iter()
            .zip(v)
            .fold(Poly::zero(m.vars()), |acc, (a, b)| acc + a * b)
            .is_zero()
    })
}

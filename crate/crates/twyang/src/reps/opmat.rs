//! Operator-valued rational functions: `d×d` matrices of `RatFunc`, their
//! cleared polynomial forms, and bivariate operator polynomials in `(u, v)`.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::error::TwError;
use crate::exact::{BiPoly, Mat, Poly, Rat, RatFunc};
use crate::rk::common_denominator;

/// A `d×d` matrix of rational functions of `u`, acting on a module.
#[derive(Clone, PartialEq, Debug)]
pub struct OpMat {
    d: usize,
    e: Vec<RatFunc>,
}

impl OpMat {
    pub fn zero(d: usize) -> Self {
        OpMat { d, e: vec![RatFunc::zero(); d * d] }
    }

    pub fn identity(d: usize) -> Self {
        OpMat::scalar(d, &RatFunc::one())
    }

    pub fn scalar(d: usize, f: &RatFunc) -> Self {
        let mut m = OpMat::zero(d);
        for i in 0..d {
            m.e[i * d + i] = f.clone();
        }
        m
    }

    pub fn from_fn(d: usize, f: impl Fn(usize, usize) -> RatFunc) -> Self {
        OpMat { d, e: (0..d * d).map(|k| f(k / d, k % d)).collect() }
    }

    /// A constant matrix.
    pub fn from_mat(m: &Mat) -> Self {
        assert_eq!(m.rows(), m.cols(), "operator matrices are square");
        OpMat::from_fn(m.rows(), |i, j| RatFunc::constant(m.get(i, j).clone()))
    }

    /// `m · f(u)`.
    pub fn from_mat_times(m: &Mat, f: &RatFunc) -> Self {
        OpMat::from_fn(m.rows(), |i, j| f.scale(m.get(i, j)))
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.e[i * self.d + j]
    }

    pub fn set(&mut self, i: usize, j: usize, f: RatFunc) {
        self.e[i * self.d + j] = f;
    }

    pub fn entries(&self) -> &[RatFunc] {
        &self.e
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|f| f.is_zero())
    }

    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> OpMat {
        OpMat { d: self.d, e: self.e.iter().map(f).collect() }
    }

    pub fn try_map(&self, f: impl Fn(&RatFunc) -> Result<RatFunc, TwError>) -> Result<OpMat, TwError> {
        Ok(OpMat { d: self.d, e: self.e.iter().map(f).collect::<Result<_, _>>()? })
    }

    /// `M(u + s)`.
    pub fn shift(&self, s: &Rat) -> OpMat {
        self.map(|f| f.shift(s))
    }

    /// `M(−u + c)`.
    pub fn reflect(&self, c: &Rat) -> OpMat {
        self.map(|f| f.reflect(c))
    }

    /// `M(a·u + b)`.
    pub fn substitute(&self, a: &Rat, b: &Rat) -> Result<OpMat, TwError> {
        self.try_map(|f| f.substitute(a, b))
    }

    pub fn scale(&self, f: &RatFunc) -> OpMat {
        if f.is_zero() {
            return OpMat::zero(self.d);
        }
        self.map(|x| x * f)
    }

    pub fn scale_rat(&self, r: &Rat) -> OpMat {
        self.map(|x| x.scale(r))
    }

    pub fn add(&self, o: &OpMat) -> OpMat {
        assert_eq!(self.d, o.d, "operator dimension mismatch");
        OpMat { d: self.d, e: self.e.iter().zip(&o.e).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &OpMat) -> OpMat {
        assert_eq!(self.d, o.d, "operator dimension mismatch");
        OpMat { d: self.d, e: self.e.iter().zip(&o.e).map(|(a, b)| a - b).collect() }
    }

    pub fn mul(&self, o: &OpMat) -> OpMat {
        assert_eq!(self.d, o.d, "operator dimension mismatch");
        let d = self.d;
        let mut out = OpMat::zero(d);
        for i in 0..d {
            for k in 0..d {
                let a = &self.e[i * d + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = &o.e[k * d + j];
                    if !b.is_zero() {
                        out.e[i * d + j] = &out.e[i * d + j] + &(a * b);
                    }
                }
            }
        }
        out
    }

    /// `self ⊗ o` on the tensor product of the two modules.
    pub fn kron(&self, o: &OpMat) -> OpMat {
        let (a, b) = (self.d, o.d);
        OpMat::from_fn(a * b, |r, c| {
            let x = self.get(r / b, c / b);
            if x.is_zero() {
                return RatFunc::zero();
            }
            x * o.get(r % b, c % b)
        })
    }

    /// `Some(f)` if the matrix is `f(u)·I`.
    pub fn as_scalar(&self) -> Option<RatFunc> {
        let f = if self.d == 0 { RatFunc::zero() } else { self.get(0, 0).clone() };
        for i in 0..self.d {
            for j in 0..self.d {
                let x = self.get(i, j);
                if (i == j && *x != f) || (i != j && !x.is_zero()) {
                    return None;
                }
            }
        }
        Some(f)
    }

    /// Value at a point; `None` at a pole of some entry.
    pub fn eval(&self, x: &Rat) -> Option<Mat> {
        let mut m = Mat::zeros(self.d, self.d);
        for i in 0..self.d {
            for j in 0..self.d {
                m.set(i, j, self.get(i, j).eval(x)?);
            }
        }
        Some(m)
    }

    pub fn value_at_infinity(&self) -> Option<Mat> {
        let mut m = Mat::zeros(self.d, self.d);
        for i in 0..self.d {
            for j in 0..self.d {
                m.set(i, j, self.get(i, j).value_at_infinity()?);
            }
        }
        Some(m)
    }

    /// The `u⁻ʳ` coefficient matrix of the expansion at infinity.
    pub fn series_coeff(&self, r: usize) -> Result<Mat, TwError> {
        let mut m = Mat::zeros(self.d, self.d);
        for i in 0..self.d {
            for j in 0..self.d {
                m.set(i, j, self.get(i, j).series(r)?.coeff(r));
            }
        }
        Ok(m)
    }

    /// Applies the operator to a vector of rational functions.
    pub fn apply(&self, x: &[RatFunc]) -> Vec<RatFunc> {
        (0..self.d)
            .map(|i| {
                let mut acc = RatFunc::zero();
                for (j, xj) in x.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !xj.is_zero() {
                        acc = &acc + &(a * xj);
                    }
                }
                acc
            })
            .collect()
    }

    /// Applies the operator to a constant vector.
    pub fn apply_rat(&self, x: &[Rat]) -> Vec<RatFunc> {
        let xs: Vec<RatFunc> = x.iter().map(|r| RatFunc::constant(r.clone())).collect();
        self.apply(&xs)
    }

    /// Compression `L·M·B` onto a subspace with basis columns `B` and a left
    /// inverse `L` (`L·B = I`). The caller is responsible for stability.
    pub fn compress(&self, basis: &Mat, left: &Mat) -> OpMat {
        OpMat::rect_mul(left, self, basis)
    }

    fn rect_mul(l: &Mat, m: &OpMat, b: &Mat) -> OpMat {
        let r = b.cols();
        let d = m.d;
        // (M·B) is d×r
        let mut mb = vec![RatFunc::zero(); d * r];
        for i in 0..d {
            for k in 0..d {
                let x = m.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..r {
                    let y = b.get(k, j);
                    if !y.is_zero() {
                        mb[i * r + j] = &mb[i * r + j] + &x.scale(y);
                    }
                }
            }
        }
        OpMat::from_fn(r, |i, j| {
            let mut acc = RatFunc::zero();
            for k in 0..d {
                let y = l.get(i, k);
                if !y.is_zero() && !mb[k * r + j].is_zero() {
                    acc = &acc + &mb[k * r + j].scale(y);
                }
            }
            acc
        })
    }

    /// Whether the column span of `basis` is invariant under the operator.
    pub fn preserves(&self, basis: &Mat, left: &Mat) -> bool {
        // M·B − B·(L·M·B) must vanish
        let c = self.compress(basis, left);
        let d = self.d;
        let r = basis.cols();
        for i in 0..d {
            for j in 0..r {
                let mut mb = RatFunc::zero();
                for k in 0..d {
                    if !basis.get(k, j).is_zero() {
                        mb = &mb + &self.get(i, k).scale(basis.get(k, j));
                    }
                }
                let mut bc = RatFunc::zero();
                for k in 0..r {
                    if !basis.get(i, k).is_zero() {
                        bc = &bc + &c.get(k, j).scale(basis.get(i, k));
                    }
                }
                if mb != bc {
                    return false;
                }
            }
        }
        true
    }

    /// Common denominator of the entries and the numerator as a matrix
    /// polynomial.
    pub fn cleared(&self) -> (MatPoly, Poly) {
        let den = common_denominator(self.e.iter());
        (MatPoly::from_opmat_with(self, &den), den)
    }
}

impl fmt::Display for OpMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.d {
            let row: Vec<String> = (0..self.d).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Orthonormal-free bookkeeping for subspaces: a basis (as columns) and a
/// left inverse selecting pivot rows.
pub fn basis_with_left_inverse(vectors: &[Vec<Rat>], d: usize) -> Option<(Mat, Mat)> {
    if vectors.is_empty() {
        return None;
    }
    let b = Mat::from_cols(d, vectors);
    // rows of Bᵀ in rref give pivot coordinates; L = (B restricted to pivots)⁻¹ · selector
    let (_, pivots) = b.transpose().rref();
    let r = vectors.len();
    let mut sub = Mat::zeros(r, r);
    for (a, &p) in pivots.iter().enumerate() {
        for j in 0..r {
            sub.set(a, j, b.get(p, j).clone());
        }
    }
    let inv = sub.inverse()?;
    let mut l = Mat::zeros(r, d);
    for i in 0..r {
        for (a, &p) in pivots.iter().enumerate() {
            l.set(i, p, inv.get(i, a).clone());
        }
    }
    Some((b, l))
}

/// `Σₖ Aₖ uᵏ` with constant `d×d` coefficient matrices.
#[derive(Clone, PartialEq, Debug)]
pub struct MatPoly {
    d: usize,
    c: Vec<Mat>,
}

impl MatPoly {
    /// Numerator of `den·M(u)`; `den` must be a multiple of every entry denominator.
    pub fn from_opmat_with(m: &OpMat, den: &Poly) -> Self {
        let d = m.d;
        let polys: Vec<Poly> = m
            .e
            .iter()
            .map(|f| (den * f.num()).exact_div(f.den()).expect("denominator divides"))
            .collect();
        let len = polys.iter().map(|p| p.len()).max().unwrap_or(0);
        let c = (0..len)
            .map(|k| {
                let mut a = Mat::zeros(d, d);
                for (idx, p) in polys.iter().enumerate() {
                    a.set(idx / d, idx % d, p.coeff(k));
                }
                a
            })
            .collect();
        MatPoly { d, c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|m| m.is_zero())
    }

    pub fn coeffs(&self) -> &[Mat] {
        &self.c
    }

    pub fn degree_bound(&self) -> usize {
        self.c.len()
    }

    pub fn eval(&self, x: &Rat) -> Mat {
        let mut acc = Mat::zeros(self.d, self.d);
        for a in self.c.iter().rev() {
            acc = &acc.scale(x) + a;
        }
        acc
    }
}

/// `Σ M_{rs} uʳ vˢ` with constant `d×d` coefficients; zero coefficients are
/// not stored.
#[derive(Clone, PartialEq, Debug)]
pub struct BiMat {
    d: usize,
    c: BTreeMap<(usize, usize), Mat>,
}

impl BiMat {
    pub fn zero(d: usize) -> Self {
        BiMat { d, c: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn add_term(&mut self, key: (usize, usize), m: &Mat, r: &Rat) {
        if r.is_zero() || m.is_zero() {
            return;
        }
        let d = self.d;
        let e = self.c.entry(key).or_insert_with(|| Mat::zeros(d, d));
        e.add_scaled(m, r);
        if e.is_zero() {
            self.c.remove(&key);
        }
    }

    /// `a(u)·b(v)`.
    pub fn uv(a: &MatPoly, b: &MatPoly) -> Self {
        let mut out = BiMat::zero(a.d);
        for (r, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (s, y) in b.c.iter().enumerate() {
                if !y.is_zero() {
                    out.add_term((r, s), &(x * y), &Rat::one());
                }
            }
        }
        out
    }

    /// `b(v)·a(u)`: the operator at `v` acts after the one at `u`.
    pub fn vu(b_at_v: &MatPoly, a_at_u: &MatPoly) -> Self {
        let mut out = BiMat::zero(a_at_u.d);
        for (r, x) in a_at_u.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (s, y) in b_at_v.c.iter().enumerate() {
                if !y.is_zero() {
                    out.add_term((r, s), &(y * x), &Rat::one());
                }
            }
        }
        out
    }

    /// `self += p(u, v)·o`.
    pub fn add_scaled(&mut self, p: &BiPoly, o: &BiMat) {
        if p.is_zero() {
            return;
        }
        for (i, row) in p.coeffs().iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (&(r, s), m) in &o.c {
                    self.add_term((r + i, s + j), m, x);
                }
            }
        }
    }

    /// `self += r·o` for a rational `r`.
    pub fn add_rat(&mut self, r: &Rat, o: &BiMat) {
        for (&k, m) in &o.c {
            self.add_term(k, m, r);
        }
    }

    pub fn sub(&self, o: &BiMat) -> BiMat {
        let mut out = self.clone();
        out.add_rat(&-Rat::one(), o);
        out
    }

    /// Some nonzero coefficient: `(r, s, row, col, value)` for `uʳvˢ`.
    pub fn first_nonzero(&self) -> Option<(usize, usize, usize, usize, Rat)> {
        let (&(r, s), m) = self.c.iter().next()?;
        for i in 0..self.d {
            for j in 0..self.d {
                if !m.get(i, j).is_zero() {
                    return Some((r, s, i, j, m.get(i, j).clone()));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ri, rq};

    fn m2(a: [[i64; 2]; 2]) -> Mat {
        Mat::from_rows(a.iter().map(|r| r.iter().map(|&x| ri(x)).collect()).collect())
    }

    #[test]
    fn cleared_round_trip() {
        let f = RatFunc::pole(&ri(1));
        let m = OpMat::from_mat_times(&m2([[1, 2], [0, 1]]), &f).add(&OpMat::identity(2));
        let (mp, den) = m.cleared();
        let x = rq(5, 3);
        let lhs = mp.eval(&x).scale(&den.eval(&x).recip());
        assert_eq!(Some(lhs), m.eval(&x));
    }

    #[test]
    fn vu_orders_operators() {
        let a = OpMat::from_mat(&m2([[0, 1], [0, 0]])).cleared().0;
        let b = OpMat::from_mat(&m2([[0, 0], [1, 0]])).cleared().0;
        let uv = BiMat::uv(&a, &b);
        let vu = BiMat::vu(&b, &a);
        assert_ne!(uv, vu);
        let (_, _, i, j, _) = uv.first_nonzero().unwrap();
        assert_eq!((i, j), (0, 0));
    }

    #[test]
    fn left_inverse_selects_subspace() {
        let v = vec![vec![ri(1), ri(1), ri(0)], vec![ri(0), ri(2), ri(1)]];
        let (b, l) = basis_with_left_inverse(&v, 3).unwrap();
        assert_eq!(&l * &b, Mat::identity(2));
    }
}

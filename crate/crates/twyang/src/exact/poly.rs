use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};

use super::rat::{ri, Rat};
use super::Ring;

/// Univariate polynomial in `u`, coefficients ascending. Never stores
/// trailing zeros, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    c: Vec<Rat>,
}

impl Poly {
    pub fn new(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| ri(x)).collect())
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(r: Rat) -> Self {
        Poly::new(vec![r])
    }

    /// The variable `u`.
    pub fn u() -> Self {
        Poly::new(vec![Rat::zero(), Rat::one()])
    }

    /// `a·u + b`.
    pub fn linear(a: Rat, b: Rat) -> Self {
        Poly::new(vec![b, a])
    }

    /// Monic `∏ (u − r)`.
    pub fn from_roots(roots: &[Rat]) -> Self {
        roots
            .iter()
            .fold(Poly::one(), |acc, r| &acc * &Poly::linear(Rat::one(), -r))
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.c.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Length of the coefficient vector (degree + 1, or 0).
    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn lead(&self) -> Rat {
        self.c.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_one()
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let l = self.lead();
        self.scale(&(Rat::one() / l))
    }

    pub fn scale(&self, r: &Rat) -> Poly {
        Poly::new(self.c.iter().map(|x| x * r).collect())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    /// `p(a·u + b)`.
    pub fn compose_affine(&self, a: &Rat, b: &Rat) -> Poly {
        let lin = Poly::linear(a.clone(), b.clone());
        let mut acc = Poly::zero();
        for x in self.c.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(x.clone());
        }
        acc
    }

    /// `p(u + s)`.
    pub fn shift(&self, s: &Rat) -> Poly {
        self.compose_affine(&Rat::one(), s)
    }

    /// `p(−u + c)`.
    pub fn reflect(&self, c: &Rat) -> Poly {
        self.compose_affine(&-Rat::one(), c)
    }

    pub fn pow(&self, k: usize) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| &acc * self)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a * ri(k as i64))
                .collect(),
        )
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.c.len() - 1;
        let inv = Rat::one() / d.lead();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let t = &r[k] * &inv;
            if !t.is_zero() {
                for (j, dj) in d.c.iter().enumerate() {
                    let idx = k - dd + j;
                    r[idx] = &r[idx] - &t * dj;
                }
            }
            q[k - dd] = t;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    /// Monic gcd (zero iff both inputs are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.div_rem(&y).1;
            x = y;
            y = r.monic();
        }
        x.monic()
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Primitive integer coefficients (same roots), or empty for zero.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = self
            .c
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = self
            .c
            .iter()
            .map(|x| (x * Rat::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        ints.into_iter().map(|x| x / &g).collect()
    }

    /// Distinct rational roots with multiplicities, and the cofactor that has
    /// no rational roots. `None` if a coefficient is too large to enumerate
    /// divisors by trial division.
    pub fn rational_roots(&self) -> Option<(Vec<(Rat, usize)>, Poly)> {
        let mut rest = self.clone();
        let mut out: Vec<(Rat, usize)> = Vec::new();
        if rest.is_zero() {
            return Some((out, rest));
        }
        let mut m0 = 0;
        while rest.c.len() > 1 && rest.c[0].is_zero() {
            rest = Poly::new(rest.c[1..].to_vec());
            m0 += 1;
        }
        if m0 > 0 {
            out.push((Rat::zero(), m0));
        }
        if rest.c.len() <= 1 {
            return Some((out, rest));
        }
        let ints = rest.integer_coeffs();
        let a0 = divisors(ints[0].abs())?;
        let an = divisors(ints.last().unwrap().abs())?;
        let mut cands: Vec<Rat> = Vec::new();
        for p in &a0 {
            for q in &an {
                for s in [1i64, -1] {
                    let r = Rat::new(p * BigInt::from(s), q.clone());
                    if !cands.contains(&r) {
                        cands.push(r);
                    }
                }
            }
        }
        for r in cands {
            let lin = Poly::linear(Rat::one(), -r.clone());
            let mut m = 0;
            while let Some(q) = rest.exact_div(&lin) {
                rest = q;
                m += 1;
            }
            if m > 0 {
                out.push((r, m));
            }
        }
        Some((out, rest))
    }
}

const TRIAL_LIMIT: u64 = 20_000_000;

fn divisors(n: BigInt) -> Option<Vec<BigInt>> {
    let n = n.to_u128()?;
    if n == 0 {
        return Some(vec![BigInt::one()]);
    }
    let mut out = Vec::new();
    let mut d: u128 = 1;
    while d * d <= n {
        if d as u64 > TRIAL_LIMIT {
            return None;
        }
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rat::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Poly::new(c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.c.iter().map(|x| -x).collect())
    }
}

macro_rules! forward_owned {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Poly, Add, add);
forward_owned!(Poly, Sub, sub);
forward_owned!(Poly, Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Ring for Poly {
    fn rzero() -> Self {
        Poly::zero()
    }
    fn rone() -> Self {
        Poly::one()
    }
    fn ris_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn from_rat(r: &Rat) -> Self {
        Poly::constant(r.clone())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show = !(mag.is_one() && k > 0);
            if show {
                if mag.is_integer() || k == 0 {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "u")?,
                _ => write!(f, "u^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rq;

    #[test]
    fn arithmetic_and_division() {
        let p = Poly::from_ints(&[-1, 0, 1]);
        let q = Poly::from_ints(&[1, 1]);
        let (d, r) = p.div_rem(&q);
        assert_eq!(d, Poly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(Poly::gcd(&p, &Poly::from_ints(&[-2, 1, 1])), Poly::from_ints(&[-1, 1]));
    }

    #[test]
    fn shifts_and_reflections() {
        let p = Poly::from_roots(&[ri(1), ri(2)]);
        assert_eq!(p.shift(&ri(1)), Poly::from_roots(&[ri(0), ri(1)]));
        assert_eq!(p.reflect(&ri(3)), p);
    }

    #[test]
    fn rational_roots_found() {
        let p = &Poly::from_roots(&[rq(1, 2), rq(-3, 4), rq(1, 2)]) * &Poly::from_ints(&[2, 0, 1]);
        let (roots, rest) = p.rational_roots().unwrap();
        assert_eq!(rest.degree(), Some(2));
        assert!(roots.contains(&(rq(1, 2), 2)));
        assert!(roots.contains(&(rq(-3, 4), 1)));
    }

    #[test]
    fn display() {
        assert_eq!(Poly::from_ints(&[1, -3, 1]).to_string(), "u^2 - 3u + 1");
        assert_eq!(Poly::new(vec![rq(1, 2), Rat::one()]).to_string(), "u + 1/2");
    }
}

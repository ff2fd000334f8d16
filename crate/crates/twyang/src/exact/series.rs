use std::ops::{Add, Mul, Sub};

use num::{BigInt, One, Zero};

use super::rat::{ri, Rat};
use crate::error::TwError;

/// Default truncation order for series-valued checks.
pub const DEFAULT_ORDER: usize = 12;

/// `c₀ + c₁u⁻¹ + … + c_D u⁻ᴰ`, known exactly through `u⁻ᴰ` and nothing beyond.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TruncSeries {
    c: Vec<Rat>,
}

fn binom(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl TruncSeries {
    /// Panics on an empty coefficient list (order is `len − 1`).
    pub fn new(c: Vec<Rat>) -> Self {
        assert!(!c.is_empty(), "series needs at least the constant term");
        TruncSeries { c }
    }

    pub fn one(order: usize) -> Self {
        let mut c = vec![Rat::zero(); order + 1];
        c[0] = Rat::one();
        TruncSeries { c }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.c.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn truncate(&self, order: usize) -> TruncSeries {
        TruncSeries::new((0..=order.min(self.order())).map(|k| self.c[k].clone()).collect())
    }

    pub fn scale(&self, r: &Rat) -> TruncSeries {
        TruncSeries::new(self.c.iter().map(|x| x * r).collect())
    }

    /// `f(α·u)` for `α ≠ 0`: coefficient `r` is scaled by `α⁻ʳ`.
    pub fn scale_arg(&self, alpha: &Rat) -> TruncSeries {
        let inv = Rat::one() / alpha;
        let mut p = Rat::one();
        let mut out = Vec::with_capacity(self.c.len());
        for x in &self.c {
            out.push(x * &p);
            p *= &inv;
        }
        TruncSeries::new(out)
    }

    /// `f(u + a)` re-expanded in `u⁻¹`, using
    /// `(u + a)⁻ˢ = Σₘ binom(−s, m) aᵐ u⁻ˢ⁻ᵐ`.
    pub fn shift_arg(&self, a: &Rat) -> TruncSeries {
        let d = self.order();
        let mut out = vec![Rat::zero(); d + 1];
        out[0] = self.c[0].clone();
        for s in 1..=d {
            if self.c[s].is_zero() {
                continue;
            }
            let mut ap = Rat::one();
            for m in 0..=(d - s) {
                // binom(−s, m) = (−1)^m binom(s+m−1, m)
                let mut b = Rat::from_integer(binom((s + m - 1) as u64, m as u64));
                if m % 2 == 1 {
                    b = -b;
                }
                out[s + m] += &self.c[s] * &b * &ap;
                ap *= a;
            }
        }
        TruncSeries::new(out)
    }

    /// Multiplicative inverse; errors on zero constant term.
    pub fn inv(&self) -> Result<TruncSeries, TwError> {
        if self.c[0].is_zero() {
            return Err(TwError::Normalization("series with zero constant term is not invertible".into()));
        }
        let inv0 = Rat::one() / &self.c[0];
        let mut out: Vec<Rat> = vec![inv0.clone()];
        for r in 1..=self.order() {
            let mut acc = Rat::zero();
            for j in 1..=r {
                acc += &self.c[j] * &out[r - j];
            }
            out.push(-acc * &inv0);
        }
        Ok(TruncSeries::new(out))
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, o: &TruncSeries) -> TruncSeries {
        let d = self.order().min(o.order());
        TruncSeries::new((0..=d).map(|k| &self.c[k] + &o.c[k]).collect())
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, o: &TruncSeries) -> TruncSeries {
        let d = self.order().min(o.order());
        TruncSeries::new((0..=d).map(|k| &self.c[k] - &o.c[k]).collect())
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, o: &TruncSeries) -> TruncSeries {
        let d = self.order().min(o.order());
        let mut out = vec![Rat::zero(); d + 1];
        for i in 0..=d {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..=(d - i) {
                out[i + j] += &self.c[i] * &o.c[j];
            }
        }
        TruncSeries::new(out)
    }
}

/// The unique `k = 1 + O(u⁻¹)` with `k(u)·k(u+a) = h(u)` through the order of `h`.
pub fn factor_shifted_square(h: &TruncSeries, a: &Rat) -> Result<TruncSeries, TwError> {
    if !h.coeff(0).is_one() {
        return Err(TwError::Normalization("factor_shifted_square needs constant term 1".into()));
    }
    let d = h.order();
    let mut k = TruncSeries::one(d);
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    for r in 1..=d {
        // with k_r = 0, the u^{-r} coefficient of k(u)k(u+a) misses exactly 2·k_r
        let prod = &k * &k.shift_arg(a);
        k.c[r] = (h.coeff(r) - prod.coeff(r)) * &half;
    }
    Ok(k)
}

impl TruncSeries {
    /// Convenience: integer coefficients.
    pub fn from_ints(c: &[i64]) -> Self {
        TruncSeries::new(c.iter().map(|&x| ri(x)).collect())
    }
}

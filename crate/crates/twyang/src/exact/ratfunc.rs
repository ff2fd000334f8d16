use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{One, Zero};

use super::poly::Poly;
use super::rat::Rat;
use super::series::TruncSeries;
use super::Ring;
use crate::error::TwError;

/// Reduced rational function `num/den` in `u` with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Panics if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (mut n, mut d) = (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap());
        let l = d.lead();
        if !l.is_one() {
            let inv = Rat::one() / l;
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        RatFunc { num: n, den: d }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::constant(Rat::one())
    }

    pub fn constant(r: Rat) -> Self {
        RatFunc {
            num: Poly::constant(r),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    /// The variable `u`.
    pub fn u() -> Self {
        RatFunc::from_poly(Poly::u())
    }

    /// `1/(u − a)`.
    pub fn pole(a: &Rat) -> Self {
        RatFunc::new(Poly::one(), Poly::linear(Rat::one(), -a.clone()))
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

    pub fn is_one(&self) -> bool {
        self.den.is_constant() && self.num == Poly::one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn scale(&self, r: &Rat) -> RatFunc {
        RatFunc::new(self.num.scale(r), self.den.clone())
    }

    pub fn inv(&self) -> Option<RatFunc> {
        (!self.is_zero()).then(|| RatFunc::new(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, k: usize) -> RatFunc {
        (0..k).fold(RatFunc::one(), |acc, _| &acc * self)
    }

    /// Value at a rational point; `None` at a pole.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    pub fn is_finite_at_infinity(&self) -> bool {
        self.num.len() <= self.den.len()
    }

    /// Limit at `u = ∞` when finite.
    pub fn value_at_infinity(&self) -> Option<Rat> {
        if !self.is_finite_at_infinity() {
            return None;
        }
        Some(if self.num.len() == self.den.len() {
            self.num.lead() / self.den.lead()
        } else {
            Rat::zero()
        })
    }

    /// `f(a·u + b)`; errors when `a = 0`.
    pub fn substitute(&self, a: &Rat, b: &Rat) -> Result<RatFunc, TwError> {
        if a.is_zero() {
            return Err(TwError::DegenerateSubstitution);
        }
        Ok(RatFunc::new(
            self.num.compose_affine(a, b),
            self.den.compose_affine(a, b),
        ))
    }

    /// `f(u + s)`.
    pub fn shift(&self, s: &Rat) -> RatFunc {
        self.substitute(&Rat::one(), s).unwrap()
    }

    /// `f(−u + c)`.
    pub fn reflect(&self, c: &Rat) -> RatFunc {
        self.substitute(&-Rat::one(), c).unwrap()
    }

    /// Expansion at `u = ∞` through `u⁻ᴰ`.
    pub fn series(&self, order: usize) -> Result<TruncSeries, TwError> {
        if !self.is_finite_at_infinity() {
            return Err(TwError::NotPowerSeries);
        }
        let dd = self.den.len() - 1;
        // t = 1/u: den*(t) = t^dd den(1/t), num*(t) = t^dd num(1/t)
        let dstar: Vec<Rat> = self.den.coeffs().iter().rev().cloned().collect();
        let mut nstar = vec![Rat::zero(); dd + 1];
        for (k, a) in self.num.coeffs().iter().enumerate() {
            nstar[dd - k] = a.clone();
        }
        let inv0 = Rat::one() / &dstar[0];
        let mut c: Vec<Rat> = Vec::with_capacity(order + 1);
        for r in 0..=order {
            let mut acc = nstar.get(r).cloned().unwrap_or_else(Rat::zero);
            for j in 1..dstar.len().min(r + 1) {
                acc -= &dstar[j] * &c[r - j];
            }
            c.push(acc * &inv0);
        }
        Ok(TruncSeries::new(c))
    }
}

/// `f(a·u + b)` (operation form).
pub fn ratfunc_substitute(f: &RatFunc, a: &Rat, b: &Rat) -> Result<RatFunc, TwError> {
    f.substitute(a, b)
}

/// Expansion of `f` at infinity through order `d` (operation form).
pub fn series_expand(f: &RatFunc, d: usize) -> Result<TruncSeries, TwError> {
    f.series(d)
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone());
        }
        RatFunc::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero.
    fn div(self, o: &RatFunc) -> RatFunc {
        self * &o.inv().expect("division by the zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<Rat> for RatFunc {
    fn from(r: Rat) -> Self {
        RatFunc::constant(r)
    }
}

impl Ring for RatFunc {
    fn rzero() -> Self {
        RatFunc::zero()
    }
    fn rone() -> Self {
        RatFunc::one()
    }
    fn ris_zero(&self) -> bool {
        self.num.is_zero()
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
        RatFunc::constant(r.clone())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::{ri, rq};

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_ints(n), Poly::from_ints(d))
    }

    #[test]
    fn canonical_form() {
        let f = rf(&[2, 2], &[4, 2]);
        assert_eq!(f.den(), &Poly::from_ints(&[2, 1]));
        assert_eq!(f.num(), &Poly::from_ints(&[1, 1]));
    }

    #[test]
    fn substitution_examples() {
        let f = RatFunc::pole(&ri(2));
        assert_eq!(f.substitute(&ri(-1), &ri(0)).unwrap(), -RatFunc::pole(&ri(-2)));
        assert_eq!(RatFunc::u().reflect(&ri(2)), rf(&[2, -1], &[1]));
        let g = rf(&[1, 2], &[-1, 2]);
        assert_eq!(g.shift(&rq(-1, 2)), rf(&[0, 1], &[-1, 1]));
        assert_eq!(f.substitute(&ri(0), &ri(1)), Err(TwError::DegenerateSubstitution));
    }

    #[test]
    fn series_examples() {
        assert_eq!(RatFunc::one().series(3).unwrap().coeffs(), &[ri(1), ri(0), ri(0), ri(0)]);
        assert_eq!(RatFunc::pole(&ri(2)).series(3).unwrap().coeffs(), &[ri(0), ri(1), ri(2), ri(4)]);
        assert_eq!(rf(&[1, 1], &[-1, 1]).series(3).unwrap().coeffs(), &[ri(1), ri(2), ri(2), ri(2)]);
        assert_eq!(RatFunc::u().series(2), Err(TwError::NotPowerSeries));
    }
}

use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};

use super::poly::Poly;
use super::rat::Rat;
use super::Ring;

/// Dense bivariate polynomial: `c[i][j]` is the coefficient of `uⁱ vʲ`.
/// The grid is trimmed so that the last row and last column are not all zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BiPoly {
    c: Vec<Vec<Rat>>,
}

impl BiPoly {
    pub fn new(c: Vec<Vec<Rat>>) -> Self {
        let mut p = BiPoly { c };
        p.trim();
        p
    }

    fn trim(&mut self) {
        let cols = self
            .c
            .iter()
            .map(|row| row.iter().rposition(|x| !x.is_zero()).map_or(0, |k| k + 1))
            .max()
            .unwrap_or(0);
        for row in &mut self.c {
            row.resize(cols, Rat::zero());
        }
        while self.c.last().is_some_and(|r| r.iter().all(|x| x.is_zero())) {
            self.c.pop();
        }
        if cols == 0 {
            self.c.clear();
        }
    }

    pub fn zero() -> Self {
        BiPoly { c: Vec::new() }
    }

    pub fn constant(r: Rat) -> Self {
        BiPoly::new(vec![vec![r]])
    }

    /// `p(u)` viewed as a bivariate polynomial.
    pub fn from_u(p: &Poly) -> Self {
        BiPoly::new(p.coeffs().iter().map(|x| vec![x.clone()]).collect())
    }

    /// `p(v)`.
    pub fn from_v(p: &Poly) -> Self {
        BiPoly::new(vec![p.coeffs().to_vec()])
    }

    /// `p(a·u + b·v + c)`.
    pub fn compose_linear(p: &Poly, a: &Rat, b: &Rat, c: &Rat) -> Self {
        let lin = BiPoly::new(vec![vec![c.clone(), b.clone()], vec![a.clone(), Rat::zero()]]);
        let mut acc = BiPoly::zero();
        for x in p.coeffs().iter().rev() {
            acc = &(&acc * &lin) + &BiPoly::constant(x.clone());
        }
        acc
    }

    pub fn coeffs(&self) -> &[Vec<Rat>] {
        &self.c
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rat {
        self.c
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// `(deg_u + 1, deg_v + 1)`; `(0, 0)` for zero.
    pub fn shape(&self) -> (usize, usize) {
        (self.c.len(), self.c.first().map_or(0, |r| r.len()))
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn scale(&self, r: &Rat) -> BiPoly {
        BiPoly::new(self.c.iter().map(|row| row.iter().map(|x| x * r).collect()).collect())
    }

    pub fn eval(&self, u: &Rat, v: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for row in self.c.iter().rev() {
            let mut inner = Rat::zero();
            for x in row.iter().rev() {
                inner = inner * v + x;
            }
            acc = acc * u + inner;
        }
        acc
    }

    /// Some nonzero coefficient, with its exponents, for witnesses.
    pub fn first_nonzero(&self) -> Option<(usize, usize, Rat)> {
        for (i, row) in self.c.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    return Some((i, j, x.clone()));
                }
            }
        }
        None
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let (a, b) = (self.shape(), o.shape());
        let rows = a.0.max(b.0);
        let cols = a.1.max(b.1);
        BiPoly::new(
            (0..rows)
                .map(|i| (0..cols).map(|j| self.coeff(i, j) + o.coeff(i, j)).collect())
                .collect(),
        )
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&-Rat::one())
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        self + &(-o)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        if self.is_zero() || o.is_zero() {
            return BiPoly::zero();
        }
        let (a, b) = (self.shape(), o.shape());
        let mut c = vec![vec![Rat::zero(); a.1 + b.1 - 1]; a.0 + b.0 - 1];
        for (i1, r1) in self.c.iter().enumerate() {
            for (j1, x) in r1.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (i2, r2) in o.c.iter().enumerate() {
                    for (j2, y) in r2.iter().enumerate() {
                        if !y.is_zero() {
                            c[i1 + i2][j1 + j2] += x * y;
                        }
                    }
                }
            }
        }
        BiPoly::new(c)
    }
}

impl Ring for BiPoly {
    fn rzero() -> Self {
        BiPoly::zero()
    }
    fn rone() -> Self {
        BiPoly::constant(Rat::one())
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
        BiPoly::constant(r.clone())
    }
}

/// Bivariate rational function, normalized only by content: the first
/// nonzero denominator coefficient (in `(i, j)` order) is made 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BiRatFunc {
    num: BiPoly,
    den: BiPoly,
}

impl BiRatFunc {
    /// Panics on a zero denominator.
    pub fn new(num: BiPoly, den: BiPoly) -> Self {
        let (_, _, lead) = den.first_nonzero().expect("zero denominator");
        if num.is_zero() {
            return BiRatFunc {
                num,
                den: BiPoly::constant(Rat::one()),
            };
        }
        let inv = Rat::one() / lead;
        BiRatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_poly(p: BiPoly) -> Self {
        BiRatFunc::new(p, BiPoly::constant(Rat::one()))
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cross-multiplied comparison.
    pub fn equals(&self, o: &BiRatFunc) -> bool {
        (&(&self.num * &o.den) - &(&o.num * &self.den)).is_zero()
    }

    pub fn eval(&self, u: &Rat, v: &Rat) -> Option<Rat> {
        let d = self.den.eval(u, v);
        (!d.is_zero()).then(|| self.num.eval(u, v) / d)
    }
}

impl PartialEq<BiRatFunc> for &BiRatFunc {
    fn eq(&self, o: &BiRatFunc) -> bool {
        self.equals(o)
    }
}

impl Ring for BiRatFunc {
    fn rzero() -> Self {
        BiRatFunc::from_poly(BiPoly::zero())
    }
    fn rone() -> Self {
        BiRatFunc::from_poly(BiPoly::constant(Rat::one()))
    }
    fn ris_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        if self.den == o.den {
            return BiRatFunc::new(&self.num + &o.num, self.den.clone());
        }
        BiRatFunc::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }
    fn times(&self, o: &Self) -> Self {
        BiRatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }
    fn negate(&self) -> Self {
        BiRatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
    fn from_rat(r: &Rat) -> Self {
        BiRatFunc::from_poly(BiPoly::constant(r.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::ri;

    #[test]
    fn compose_binomial() {
        // (u + v)^2 = u^2 + 2uv + v^2
        let p = Poly::from_ints(&[0, 0, 1]);
        let b = BiPoly::compose_linear(&p, &ri(1), &ri(1), &ri(0));
        assert_eq!(b.coeff(2, 0), ri(1));
        assert_eq!(b.coeff(1, 1), ri(2));
        assert_eq!(b.coeff(0, 2), ri(1));
        assert_eq!(b.eval(&ri(2), &ri(3)), ri(25));
    }

    #[test]
    fn subtraction_cancels() {
        let p = BiPoly::compose_linear(&Poly::from_ints(&[1, 2, 3]), &ri(1), &ri(-1), &ri(2));
        assert!((&p - &p).is_zero());
        assert_eq!((&p - &p).shape(), (0, 0));
    }

    #[test]
    fn birat_equality() {
        let u = BiPoly::from_u(&Poly::u());
        let f = BiRatFunc::new(&u * &u, u.clone());
        assert!(f.equals(&BiRatFunc::from_poly(u)));
    }
}

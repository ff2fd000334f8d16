//! Drinfeld-polynomial extraction: monic `P` with `P(u+s)/P(u)` equal to a
//! given rational function, optionally times a `γ`-factor.

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{poly_linear_solve, ri, Mat, Poly, Rat, RatFunc};

pub const DEFAULT_DEG_MAX: usize = 16;

/// Result of a Drinfeld-polynomial search. `None` is a proof of
/// non-existence; `Inconclusive` means the search space was exhausted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum SolveOutcome<T> {
    Found(T),
    None(String),
    Inconclusive(String),
}

impl<T> SolveOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SolveOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SolveOutcome::Found(_))
    }
}

/// The only degree a monic `P` with `P(u+s)/P(u) = num/den` can have:
/// comparing the `u^{d+m−1}` coefficients gives `d·s = num_{m−1} − den_{m−1}`
/// once both sides are made monic. `Err` means no degree works.
pub fn forced_degree(ratio: &RatFunc, shift: &Rat) -> Result<usize, String> {
    if shift.is_zero() {
        return Err("shift must be nonzero".into());
    }
    if ratio.is_zero() {
        return Err("ratio is zero".into());
    }
    let (num, den) = (ratio.num(), ratio.den());
    if num.degree() != den.degree() || num.lead() != den.lead() {
        return Err(format!("ratio {ratio} does not tend to 1 at infinity"));
    }
    let m = den.degree().unwrap_or(0);
    if m == 0 {
        return Ok(0);
    }
    let lead = num.lead();
    let d = (num.coeff(m - 1) / lead - den.coeff(m - 1)) / shift;
    if !d.is_integer() || d.is_negative() {
        return Err(format!("forced degree {d} is not a non-negative integer"));
    }
    d.to_integer()
        .try_into()
        .map_err(|_| format!("forced degree {d} is out of range"))
}

/// The monic `P` of degree exactly `d` with `P(u+s)·den = num·P(u)`, if any.
pub fn solve_p_at_degree(ratio: &RatFunc, shift: &Rat, d: usize) -> Option<Poly> {
    let num = ratio.num();
    let den = ratio.den();
    let m = num.degree().max(den.degree()).unwrap_or(0);
    let rows = d + m + 1;
    // column k: coefficients of (u+s)^k·den − u^k·num
    let col = |k: usize| -> Vec<Rat> {
        let uk = Poly::u().pow(k);
        let c = &(&uk.shift(shift) * den) - &(&uk * num);
        (0..rows).map(|r| c.coeff(r)).collect()
    };
    let p = if d == 0 {
        Poly::one()
    } else {
        let cols: Vec<Vec<Rat>> = (0..d).map(col).collect();
        let rhs: Vec<Rat> = col(d).into_iter().map(|x| -x).collect();
        let sol = poly_linear_solve(&Mat::from_cols(rows, &cols), &rhs);
        let mut c = sol.particular?;
        c.push(Rat::one());
        Poly::new(c)
    };
    let ok = &p.shift(shift) * den == num * &p;
    ok.then_some(p)
}

/// Monic `P` with `P(u+s)/P(u) = ratio` and, if `sym_center = Some(c)`,
/// `P(u) = P(c − u)`.
pub fn solve_p(ratio: &RatFunc, shift: &Rat, sym_center: Option<&Rat>, deg_max: usize) -> SolveOutcome<Poly> {
    let d = match forced_degree(ratio, shift) {
        Ok(d) => d,
        Err(e) => return SolveOutcome::None(e),
    };
    if d > deg_max {
        return SolveOutcome::Inconclusive(format!("forced degree {d} exceeds deg_max = {deg_max}"));
    }
    let Some(p) = solve_p_at_degree(ratio, shift, d) else {
        return SolveOutcome::None(format!("no monic P of degree {d} with P(u+{shift})/P(u) = {ratio}"));
    };
    if let Some(c) = sym_center {
        if p.reflect(c) != p {
            return SolveOutcome::None(format!("P = {p} is not symmetric under u -> {c} - u"));
        }
    }
    SolveOutcome::Found(p)
}

/// `(γ − u)/(γ + u − κ)`.
pub fn gamma_factor(gamma: &Rat, kappa: &Rat) -> RatFunc {
    RatFunc::new(Poly::linear(-Rat::one(), gamma.clone()), Poly::linear(Rat::one(), gamma - kappa))
}

/// `(P, γ)` with `ratio = P(u+s)/P(u)·(γ−u)/(γ+u−κ)` and `P(γ) ≠ 0`.
///
/// Clearing denominators and setting `u = γ` shows `γ` is a root of the
/// numerator of `ratio` unless the factor cancels, which happens only at
/// `γ = κ/2`; only rational candidates are searched.
pub fn solve_p_gamma(
    ratio: &RatFunc,
    shift: &Rat,
    kappa: &Rat,
    sym_center: Option<&Rat>,
    deg_max: usize,
) -> SolveOutcome<(Poly, Rat)> {
    let half = kappa / ri(2);
    let mut cands = vec![half];
    let irrational = match ratio.num().rational_roots() {
        Some((roots, rest)) => {
            for (r, _) in roots {
                if !cands.contains(&r) {
                    cands.push(r);
                }
            }
            rest.degree().unwrap_or(0) > 0
        }
        None => true,
    };
    let mut inconclusive = Vec::new();
    let mut rejected = Vec::new();
    for g in &cands {
        let r = &(ratio * &gamma_factor(g, kappa).inv().unwrap());
        match solve_p(r, shift, sym_center, deg_max) {
            SolveOutcome::Found(p) => {
                if p.eval(g).is_zero() {
                    rejected.push(format!("γ = {g}: P(γ) = 0"));
                } else {
                    return SolveOutcome::Found((p, g.clone()));
                }
            }
            SolveOutcome::None(e) => rejected.push(format!("γ = {g}: {e}")),
            SolveOutcome::Inconclusive(e) => inconclusive.push(format!("γ = {g}: {e}")),
        }
    }
    if irrational {
        inconclusive.push(format!(
            "numerator of {ratio} has roots that are not rational; γ may be irrational"
        ));
    }
    if inconclusive.is_empty() {
        SolveOutcome::None(rejected.join("; "))
    } else {
        SolveOutcome::Inconclusive(inconclusive.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rq;

    fn lin(a: Rat) -> Poly {
        Poly::linear(Rat::one(), a)
    }

    #[test]
    fn trivial_ratio() {
        assert_eq!(solve_p(&RatFunc::one(), &ri(1), None, 16), SolveOutcome::Found(Poly::one()));
    }

    #[test]
    fn two_root_chain() {
        let a = rq(1, 3);
        // (u+1−a)/(u−a−1) = P(u+1)/P(u) for P = (u−a)(u−a−1)
        let r = RatFunc::new(lin(ri(1) - &a), lin(-&a - ri(1)));
        let p = solve_p(&r, &ri(1), None, 16).found().unwrap();
        assert_eq!(p, &lin(-a.clone()) * &lin(-&a - ri(1)));
        let oracle = &RatFunc::from_poly(p.shift(&ri(1))) / &RatFunc::from_poly(p.clone());
        assert_eq!(oracle, r);
    }

    #[test]
    fn symmetry_rejects() {
        // a single root is never symmetric: P(c − u) has leading coefficient −1
        let r = RatFunc::new(lin(ri(1)), lin(ri(0)));
        assert_eq!(solve_p(&r, &ri(1), None, 16).found(), Some(Poly::u()));
        assert!(matches!(solve_p(&r, &ri(1), Some(&ri(0)), 16), SolveOutcome::None(_)));
        // P = u(u − 1) is symmetric about 1 only
        let r = RatFunc::new(lin(ri(1)), lin(ri(-1)));
        let p = &Poly::u() * &lin(ri(-1));
        assert_eq!(solve_p(&r, &ri(1), Some(&ri(1)), 16).found(), Some(p));
        assert!(matches!(solve_p(&r, &ri(1), Some(&ri(0)), 16), SolveOutcome::None(_)));
    }

    #[test]
    fn degree_cap_is_inconclusive() {
        let p = Poly::from_roots(&(0..5).map(|k| ri(3 * k)).collect::<Vec<_>>());
        let r = &RatFunc::from_poly(p.shift(&ri(1))) / &RatFunc::from_poly(p);
        assert!(matches!(solve_p(&r, &ri(1), None, 4), SolveOutcome::Inconclusive(_)));
        assert!(solve_p(&r, &ri(1), None, 5).is_found());
    }

    #[test]
    fn pure_gamma_factor() {
        let kappa = ri(2);
        let g = rq(-5, 2);
        let r = gamma_factor(&g, &kappa);
        assert_eq!(solve_p_gamma(&r, &ri(2), &kappa, None, 16).found(), Some((Poly::one(), g)));
    }
}

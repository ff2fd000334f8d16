//! Exact check of reflection-type relations
//! `R₁(u,v) S₁(u) R₂(u,v) S₂(v) = S₂(v) R₂(u,v) S₁(u) R₁(u,v)`
//! where each `Rₖ = αₖ I + βₖ P + γₖ Q` has bivariate polynomial scalars and
//! `S(u)` is given by its operator entries. Both sides are expanded blockwise
//! over `End(ℂᴺ ⊗ ℂᴺ)`, so no `N²d`-dimensional matrix is ever formed.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::exact::{BiPoly, Poly, Rat};
use crate::reps::opmat::{BiMat, MatPoly, OpMat};
use crate::rk::{common_denominator, IdentityReport, MAX_WITNESSES};
use crate::tensor::Family;

/// `αI + βP + γQ` with polynomial coefficients in `(u, v)`.
#[derive(Clone, Debug)]
pub struct RCoeffs {
    pub alpha: BiPoly,
    pub beta: BiPoly,
    pub gamma: BiPoly,
}

impl RCoeffs {
    /// Cleared `R(u ∓ v)` from the univariate cleared coefficients `(a, b, c)` of
    /// `R(u)`: `sign = −1` gives `R(u−v)`, `+1` gives `R(u+v)`.
    pub fn at(a: &Poly, b: &Poly, c: &Poly, sign: i64) -> Self {
        let one = Rat::from_integer(1.into());
        let s = Rat::from_integer(sign.into());
        let z = Rat::from_integer(0.into());
        let f = |p: &Poly| BiPoly::compose_linear(p, &one, &s, &z);
        RCoeffs { alpha: f(a), beta: f(b), gamma: f(c) }
    }
}

/// Shape of the auxiliary space: its labels and the `θ` used by `Q`
/// (`None` when `Q` never occurs).
pub struct Aux<'a> {
    pub labels: &'a [i32],
    pub theta: Option<Family>,
}

impl Aux<'_> {
    fn th(&self, i: i32, j: i32) -> i64 {
        self.theta.map_or(1, |f| f.theta(i, j))
    }
}

/// `s` is indexed by `pos(i)·N + pos(j)`.
pub fn check_reflection(name: &str, aux: &Aux<'_>, s: &[OpMat], r1: &RCoeffs, r2: &RCoeffs) -> IdentityReport {
    let n = aux.labels.len();
    assert_eq!(s.len(), n * n, "S must have N² entries");
    let d = s[0].dim();
    let pos: HashMap<i32, usize> = aux.labels.iter().enumerate().map(|(k, &l)| (l, k)).collect();
    let den = common_denominator(s.iter().flat_map(|m| m.entries().iter()));
    let a: Vec<MatPoly> = s.iter().map(|m| MatPoly::from_opmat_with(m, &den)).collect();
    let ix = |i: i32, j: i32| pos[&i] * n + pos[&j];
    let quad = |p: usize, q: usize| p * n * n + q;

    // uv[(x,y),(z,w)] = A_xy(u) A_zw(v), vu[(x,y),(z,w)] = A_xy(v) A_zw(u)
    let uv: Vec<BiMat> = (0..n.pow(4))
        .into_par_iter()
        .map(|k| {
            let (p, q) = (k / (n * n), k % (n * n));
            if a[p].is_zero() || a[q].is_zero() {
                BiMat::zero(d)
            } else {
                BiMat::uv(&a[p], &a[q])
            }
        })
        .collect();
    let vu: Vec<BiMat> = (0..n.pow(4))
        .into_par_iter()
        .map(|k| {
            let (p, q) = (k / (n * n), k % (n * n));
            if a[p].is_zero() || a[q].is_zero() {
                BiMat::zero(d)
            } else {
                BiMat::vu(&a[p], &a[q])
            }
        })
        .collect();
    let has_q = !r1.gamma.is_zero() || !r2.gamma.is_zero();
    let neg_ok = |i: i32| pos.contains_key(&-i);
    if has_q {
        assert!(aux.labels.iter().all(|&l| neg_ok(l)), "Q needs a signed label set");
    }

    let labels = aux.labels;
    let pairs: Vec<(i32, i32)> = labels.iter().flat_map(|&x| labels.iter().map(move |&y| (x, y))).collect();

    // Z[(i,k),(j,l)] = (S₁(u) R₂ S₂(v)) block
    let z: Vec<BiMat> = (0..n.pow(4))
        .into_par_iter()
        .map(|t| {
            let (ik, jl) = (pairs[t / (n * n)], pairs[t % (n * n)]);
            let ((i, k), (j, l)) = (ik, jl);
            let mut acc = BiMat::zero(d);
            acc.add_scaled(&r2.alpha, &uv[quad(ix(i, j), ix(k, l))]);
            if k == j && !r2.beta.is_zero() {
                let mut sum = BiMat::zero(d);
                for &c in labels {
                    sum.add_rat(&Rat::from_integer(1.into()), &uv[quad(ix(i, c), ix(c, l))]);
                }
                acc.add_scaled(&r2.beta, &sum);
            }
            if !r2.gamma.is_zero() {
                let th = aux.th(-k, j);
                let p = r2.gamma.scale(&Rat::from_integer(th.into()));
                acc.add_scaled(&p, &uv[quad(ix(i, -k), ix(-j, l))]);
            }
            acc
        })
        .collect();
    // W[(i,k),(j,l)] = (S₂(v) R₂ S₁(u)) block
    let w: Vec<BiMat> = (0..n.pow(4))
        .into_par_iter()
        .map(|t| {
            let ((i, k), (j, l)) = (pairs[t / (n * n)], pairs[t % (n * n)]);
            let mut acc = BiMat::zero(d);
            acc.add_scaled(&r2.alpha, &vu[quad(ix(k, l), ix(i, j))]);
            if i == l && !r2.beta.is_zero() {
                let mut sum = BiMat::zero(d);
                for &b in labels {
                    sum.add_rat(&Rat::from_integer(1.into()), &vu[quad(ix(k, b), ix(b, j))]);
                }
                acc.add_scaled(&r2.beta, &sum);
            }
            if !r2.gamma.is_zero() {
                let th = aux.th(i, -l);
                let p = r2.gamma.scale(&Rat::from_integer(th.into()));
                acc.add_scaled(&p, &vu[quad(ix(k, -i), ix(-l, j))]);
            }
            acc
        })
        .collect();
    let zi = |i: i32, k: i32, j: i32, l: i32| &z[quad(ix(i, k), ix(j, l))];
    let wi = |i: i32, k: i32, j: i32, l: i32| &w[quad(ix(i, k), ix(j, l))];

    let diffs: Vec<(usize, BiMat)> = (0..n.pow(4))
        .into_par_iter()
        .filter_map(|t| {
            let ((i, k), (j, l)) = (pairs[t / (n * n)], pairs[t % (n * n)]);
            let mut lhs = BiMat::zero(d);
            lhs.add_scaled(&r1.alpha, zi(i, k, j, l));
            lhs.add_scaled(&r1.beta, zi(k, i, j, l));
            if !r1.gamma.is_zero() && k == -i {
                let mut sum = BiMat::zero(d);
                for &c in labels {
                    sum.add_rat(&Rat::from_integer(aux.th(i, c).into()), zi(c, -c, j, l));
                }
                lhs.add_scaled(&r1.gamma, &sum);
            }
            let mut rhs = BiMat::zero(d);
            rhs.add_scaled(&r1.alpha, wi(i, k, j, l));
            rhs.add_scaled(&r1.beta, wi(i, k, l, j));
            if !r1.gamma.is_zero() && l == -j {
                let mut sum = BiMat::zero(d);
                for &c in labels {
                    sum.add_rat(&Rat::from_integer(aux.th(c, j).into()), wi(i, k, c, -c));
                }
                rhs.add_scaled(&r1.gamma, &sum);
            }
            let diff = lhs.sub(&rhs);
            (!diff.is_zero()).then_some((t, diff))
        })
        .collect();
    let witnesses = diffs
        .iter()
        .take(MAX_WITNESSES)
        .map(|(t, diff)| {
            let ((i, k), (j, l)) = (pairs[t / (n * n)], pairs[t % (n * n)]);
            let (r, s, a, b, x) = diff.first_nonzero().expect("nonzero difference");
            format!("block ({i},{k}),({j},{l}), module entry ({a},{b}): coefficient of u^{r} v^{s} in LHS−RHS is {x}")
        })
        .collect();
    IdentityReport::new(name, witnesses)
}

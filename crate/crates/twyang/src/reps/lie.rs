//! Finite-dimensional modules over the low-rank Lie algebras `sp₂`, `so₃`,
//! `gl₂ ⊂ so₄` and `so₄`, realized by explicit action matrices of the
//! generators `F_ij = E_ij − θ_ij E_{−j,−i}`.
//!
//! Convention: the highest vector `ξ` is annihilated by every `F_ij` with
//! `i < j`. For `sp₂` this makes `F₁₁ξ = −m·ξ` on the `(m+1)`-dimensional
//! module, since `[F₁,₋₁, F₋₁,₁] = 4F₁₁` and `F₁,₋₁` raises the `F₁₁`-weight
//! by 2. The other algebras are assembled from `sp₂`/`so₂` modules through the
//! isomorphisms `so₃ ≅ sp₂` and `so₄ ≅ sp₂ ⊕ sp₂`, `gl₂ ≅ so₂ ⊕ sp₂`.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::TwError;
use crate::exact::{ri, rq, Mat, Rat};
use crate::tensor::{Family, IndexSet};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum LieAlgebra {
    /// `gl₁ ⊂ sp₂`: only `F₁₁ = −F₋₁,₋₁` acts.
    Gl1,
    Sp2,
    So3,
    /// `gl₂ ⊂ so₄`, spanned by `F_ij` with `i, j` of equal sign.
    Gl2,
    So4,
}

impl LieAlgebra {
    /// `N` and family of the ambient `g_N`.
    pub fn ambient(self) -> (usize, Family) {
        match self {
            LieAlgebra::Gl1 | LieAlgebra::Sp2 => (2, Family::Symplectic),
            LieAlgebra::So3 => (3, Family::Orthogonal),
            LieAlgebra::Gl2 | LieAlgebra::So4 => (4, Family::Orthogonal),
        }
    }

    /// Whether `F_ij` belongs to the (sub)algebra.
    pub fn contains(self, i: i32, j: i32) -> bool {
        match self {
            LieAlgebra::Gl1 => i == j,
            LieAlgebra::Gl2 => i.signum() == j.signum(),
            _ => true,
        }
    }
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LieAlgebra::Gl1 => "gl1",
            LieAlgebra::Sp2 => "sp2",
            LieAlgebra::So3 => "so3",
            LieAlgebra::Gl2 => "gl2",
            LieAlgebra::So4 => "so4",
        };
        f.write_str(s)
    }
}

/// A module given by the action matrices of all `F_ij` of the ambient `g_N`
/// (zero outside the subalgebra).
#[derive(Clone, PartialEq, Debug)]
pub struct LieModule {
    pub algebra: LieAlgebra,
    pub dim: usize,
    f: BTreeMap<(i32, i32), Mat>,
    /// Eigenvalues of `F₁₁, …, Fₙₙ` on the highest vector.
    pub highest_weight: Vec<Rat>,
}

impl LieModule {
    pub fn index_set(&self) -> IndexSet {
        IndexSet::signed(self.algebra.ambient().0).expect("ambient N is valid")
    }

    pub fn family(&self) -> Family {
        self.algebra.ambient().1
    }

    /// Action of `F_ij`.
    pub fn f(&self, i: i32, j: i32) -> Mat {
        self.f.get(&(i, j)).cloned().unwrap_or_else(|| Mat::zeros(self.dim, self.dim))
    }

    /// `F′_ij = (g_ii + g_jj)F_ij` for a diagonal `±1` matrix `G`.
    pub fn f_prime(&self, i: i32, j: i32, g: impl Fn(i32) -> i64) -> Mat {
        self.f(i, j).scale(&ri(g(i) + g(j)))
    }

    fn from_map(algebra: LieAlgebra, dim: usize, mut f: BTreeMap<(i32, i32), Mat>, hw: Vec<Rat>) -> Self {
        f.retain(|_, m| !m.is_zero());
        LieModule { algebra, dim, f, highest_weight: hw }
    }

    /// Completes the generators through `F_{−j,−i} = −θ_ij F_ij`.
    fn complete(algebra: LieAlgebra, dim: usize, base: Vec<((i32, i32), Mat)>, hw: Vec<Rat>) -> Self {
        let fam = algebra.ambient().1;
        let mut f = BTreeMap::new();
        for ((i, j), m) in base {
            let t = ri(-fam.theta(i, j));
            f.insert((-j, -i), m.scale(&t));
            f.insert((i, j), m);
        }
        LieModule::from_map(algebra, dim, f, hw)
    }

    /// `ev`-side casimir of `so₃`: `Ω = F₁₁² − F₁₁ + 2F₁₀F₀₁`.
    pub fn casimir_so3(&self) -> Mat {
        let f11 = self.f(1, 1);
        let mut m = &(&f11 * &f11) - &f11;
        m.add_scaled(&(&self.f(1, 0) * &self.f(0, 1)), &ri(2));
        m
    }

    /// `Ω = F₁₁² + F₂₂² − 2F₂₂ + 2F₂₁F₁₂ + 2F₂,₋₁F₋₁,₂` on an `so₄` module.
    pub fn casimir_so4(&self) -> Mat {
        let (f11, f22) = (self.f(1, 1), self.f(2, 2));
        let mut m = &(&f11 * &f11) + &(&f22 * &f22);
        m.add_scaled(&f22, &ri(-2));
        m.add_scaled(&(&self.f(2, 1) * &self.f(1, 2)), &ri(2));
        m.add_scaled(&(&self.f(2, -1) * &self.f(-1, 2)), &ri(2));
        m
    }

    /// `z = F₁₁² + F₂₂² + F₁₂F₂₁ + F₂₁F₁₂` on a `gl₂` module.
    pub fn casimir_gl2(&self) -> Mat {
        let (f11, f22) = (self.f(1, 1), self.f(2, 2));
        let (f12, f21) = (self.f(1, 2), self.f(2, 1));
        let mut m = &(&f11 * &f11) + &(&f22 * &f22);
        m = &m + &(&f12 * &f21);
        &m + &(&f21 * &f12)
    }

    /// Checks `[F_ij, F_kl]` and `F_ij + θ_ij F_{−j,−i} = 0` over the
    /// generators of the subalgebra; returns the violated relations.
    pub fn bracket_violations(&self) -> Vec<String> {
        let fam = self.family();
        let labels = self.index_set().labels();
        let th = |i: i32, j: i32| ri(fam.theta(i, j));
        let d = |a: i32, b: i32| if a == b { Rat::one() } else { Rat::zero() };
        let mut out = Vec::new();
        for &i in &labels {
            for &j in &labels {
                let s = &self.f(i, j) + &self.f(-j, -i).scale(&th(i, j));
                if !s.is_zero() {
                    out.push(format!("F_{i}{j} + θ F_{}{} ≠ 0", -j, -i));
                }
                if !self.algebra.contains(i, j) {
                    continue;
                }
                for &k in &labels {
                    for &l in &labels {
                        if !self.algebra.contains(k, l) {
                            continue;
                        }
                        let (a, b) = (self.f(i, j), self.f(k, l));
                        let lhs = &(&a * &b) - &(&b * &a);
                        let mut rhs = self.f(i, l).scale(&d(j, k));
                        rhs.add_scaled(&self.f(k, j), &-d(i, l));
                        rhs.add_scaled(&self.f(k, -i), &(th(i, j) * d(j, -l)));
                        rhs.add_scaled(&self.f(-j, l), &-(th(i, j) * d(i, -k)));
                        if lhs != rhs {
                            out.push(format!("[F_{i},{j}, F_{k},{l}]"));
                        }
                    }
                }
            }
        }
        out
    }
}

fn weight_to_dim(mu: &Rat, scale: i64, what: &str) -> Result<usize, TwError> {
    // m = −scale·μ must be a non-negative integer
    let m = -(mu * ri(scale));
    if !m.is_integer() || m.is_negative() {
        return Err(TwError::Config(format!(
            "{what}: weight {mu} is not admissible (need −{scale}·μ ∈ ℤ≥0)"
        )));
    }
    let m: usize = m.to_integer().try_into().map_err(|_| TwError::Config("weight too large".into()))?;
    if m > 64 {
        return Err(TwError::Config(format!("{what}: module dimension {} is too large", m + 1)));
    }
    Ok(m)
}

/// Raw `sp₂` matrices `(F₁₁, F₁,₋₁, F₋₁,₁)` on basis `v_k = F₁,₋₁ᵏ ξ`.
fn sp2_mats(m: usize) -> (Mat, Mat, Mat) {
    let d = m + 1;
    let mu = -(m as i64);
    let mut h = Mat::zeros(d, d);
    let mut lower = Mat::zeros(d, d);
    let mut raise = Mat::zeros(d, d);
    for k in 0..d {
        h.set(k, k, ri(mu + 2 * k as i64));
        if k + 1 < d {
            lower.set(k + 1, k, Rat::one());
        }
        if k > 0 {
            let kk = k as i64;
            raise.set(k - 1, k, ri(-4 * (kk * mu + kk * (kk - 1))));
        }
    }
    (h, lower, raise)
}

/// The `sp₂` module with `F₁₁`-weight `μ` on the highest vector; admissible
/// exactly when `μ = −m`, `m ∈ ℤ≥0` (dimension `m + 1`).
pub fn sp2_module(mu: &Rat) -> Result<LieModule, TwError> {
    let m = weight_to_dim(mu, 1, "sp2")?;
    let (h, lo, hi) = sp2_mats(m);
    Ok(LieModule::complete(
        LieAlgebra::Sp2,
        m + 1,
        vec![((1, 1), h), ((1, -1), lo), ((-1, 1), hi)],
        vec![mu.clone()],
    ))
}

/// One-dimensional `gl₁` module: `F₁₁ = μ` (any rational `μ`).
pub fn gl1_module(mu: &Rat) -> LieModule {
    LieModule::complete(LieAlgebra::Gl1, 1, vec![((1, 1), Mat::scalar(1, mu))], vec![mu.clone()])
}

/// One-dimensional `so₂` module with `F₁₁ = c`, viewed inside the orthogonal
/// labels `±1`.
pub fn so2_matrices(c: &Rat) -> (Mat, Mat) {
    (Mat::scalar(1, c), Mat::scalar(1, &-c.clone()))
}

/// The `so₃` module with highest weight `μ`; admissible exactly when
/// `μ ∈ −½ℤ≥0` (dimension `1 − 2μ`). The basis `F₀,₋₁ᵏξ` is rescaled so that
/// all matrices are rational: `F₋₁,₀ = F°₋₁,₁/4`, `F₀,₋₁ = F°₁,₋₁/2`,
/// `F₁₁ = F°₁₁/2` in terms of the `sp₂` module of weight `2μ`.
pub fn so3_module(mu: &Rat) -> Result<LieModule, TwError> {
    let m = weight_to_dim(mu, 2, "so3")?;
    let (h, lo, hi) = sp2_mats(m);
    Ok(LieModule::complete(
        LieAlgebra::So3,
        m + 1,
        vec![((1, 1), h.scale(&rq(1, 2))), ((-1, 0), hi.scale(&rq(1, 4))), ((0, -1), lo.scale(&rq(1, 2)))],
        vec![mu.clone()],
    ))
}

/// The `gl₂` module `V(μ₁, μ₂)`; admissible iff `μ₁ − μ₂ ∈ ℤ≥0`. Realized on
/// `W° ⊗ W•` with `W°` the one-dimensional `so₂` module `F°₁₁ = μ₁ + μ₂` and
/// `W•` the `sp₂` module of weight `μ₂ − μ₁`.
pub fn gl2_module(mu1: &Rat, mu2: &Rat) -> Result<LieModule, TwError> {
    let mb = weight_to_dim(&(mu2 - mu1), 1, "gl2")?;
    let c = mu1 + mu2;
    let (h, lo, hi) = sp2_mats(mb);
    let d = mb + 1;
    let fo = Mat::scalar(d, &c);
    let half = rq(1, 2);
    let f11 = (&fo - &h).scale(&half);
    let f22 = (&fo + &h).scale(&half);
    Ok(LieModule::complete(
        LieAlgebra::Gl2,
        d,
        vec![
            ((1, 1), f11),
            ((2, 2), f22),
            ((1, 2), hi.scale(&-half.clone())),
            ((2, 1), lo.scale(&-half)),
        ],
        vec![mu1.clone(), mu2.clone()],
    ))
}

/// The `so₄` module `V(μ₁, μ₂)`; admissible iff `μ₁ + μ₂ ∈ ℤ≤0` and
/// `μ₂ − μ₁ ∈ ℤ≤0`. Realized on `W° ⊗ W•` (both `sp₂`, weights `μ₁ + μ₂` and
/// `μ₂ − μ₁`).
pub fn so4_module(mu1: &Rat, mu2: &Rat) -> Result<LieModule, TwError> {
    let mo = weight_to_dim(&(mu1 + mu2), 1, "so4 (μ₁+μ₂)")?;
    let mb = weight_to_dim(&(mu2 - mu1), 1, "so4 (μ₂−μ₁)")?;
    let (ho, loo, hio) = sp2_mats(mo);
    let (hb, lob, hib) = sp2_mats(mb);
    let io = Mat::identity(mo + 1);
    let ib = Mat::identity(mb + 1);
    let half = rq(1, 2);
    let ho_ = ho.kron(&ib);
    let hb_ = io.kron(&hb);
    Ok(LieModule::complete(
        LieAlgebra::So4,
        (mo + 1) * (mb + 1),
        vec![
            ((1, 1), (&ho_ - &hb_).scale(&half)),
            ((2, 2), (&ho_ + &hb_).scale(&half)),
            ((1, 2), io.kron(&hib).scale(&-half.clone())),
            ((2, 1), io.kron(&lob).scale(&-half.clone())),
            ((-2, 1), hio.kron(&ib).scale(&half)),
            ((1, -2), loo.kron(&ib).scale(&half)),
        ],
        vec![mu1.clone(), mu2.clone()],
    ))
}

/// Dispatch by algebra name and highest weight.
pub fn lie_module(algebra: LieAlgebra, weight: &[Rat]) -> Result<LieModule, TwError> {
    let need = match algebra {
        LieAlgebra::Gl2 | LieAlgebra::So4 => 2,
        _ => 1,
    };
    if weight.len() != need {
        return Err(TwError::Config(format!("{algebra} needs {need} weight component(s)")));
    }
    match algebra {
        LieAlgebra::Gl1 => Ok(gl1_module(&weight[0])),
        LieAlgebra::Sp2 => sp2_module(&weight[0]),
        LieAlgebra::So3 => so3_module(&weight[0]),
        LieAlgebra::Gl2 => gl2_module(&weight[0], &weight[1]),
        LieAlgebra::So4 => so4_module(&weight[0], &weight[1]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sp2_bracket_table() {
        for m in 0..5 {
            let v = sp2_module(&ri(-m)).unwrap();
            assert_eq!(v.dim, m as usize + 1);
            assert!(v.bracket_violations().is_empty());
            let c = &(&v.f(1, -1) * &v.f(-1, 1)) - &(&v.f(-1, 1) * &v.f(1, -1));
            assert_eq!(c, v.f(1, 1).scale(&ri(4)));
        }
    }

    #[test]
    fn positive_sp2_weight_rejected() {
        assert!(sp2_module(&ri(1)).is_err());
        assert!(sp2_module(&rq(-1, 2)).is_err());
    }

    #[test]
    fn so3_modules() {
        for k in 0..5 {
            let mu = rq(-k, 2);
            let v = so3_module(&mu).unwrap();
            assert!(v.bracket_violations().is_empty(), "{:?}", v.bracket_violations());
            assert_eq!(v.casimir_so3(), Mat::scalar(v.dim, &(&mu * &mu - &mu)));
        }
    }

    #[test]
    fn so4_and_gl2_modules() {
        for (a, b) in [(0, 0), (0, -1), (1, -1), (-1, -1), (1, -2)] {
            let v = so4_module(&ri(a), &ri(b)).unwrap();
            assert!(v.bracket_violations().is_empty());
            let om = ri(a * a + b * b - 2 * b);
            assert_eq!(v.casimir_so4(), Mat::scalar(v.dim, &om));
        }
        for (a, b) in [(rq(1, 2), rq(1, 2)), (ri(1), ri(0)), (rq(3, 2), rq(-1, 2))] {
            let v = gl2_module(&a, &b).unwrap();
            assert!(v.bracket_violations().is_empty());
            let z = &(&a * &a + &b * &b) + &(&a - &b);
            assert_eq!(v.casimir_gl2(), Mat::scalar(v.dim, &z));
        }
        assert!(so4_module(&ri(1), &ri(0)).is_err());
    }
}

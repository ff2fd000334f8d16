//! Highest weights of concrete modules and the two restriction functors:
//! rank reduction to `V₊` and the reflection-algebra subspace `Vᴶ`.

use std::collections::BTreeMap;

use num::Zero;

use crate::error::TwError;
use crate::exact::{ri, Mat, Poly, Rat, RatFunc};
use crate::reps::engine::{check_reflection, Aux, RCoeffs};
use crate::reps::module::{TwistedModule, XModule};
use crate::reps::opmat::{basis_with_left_inverse, OpMat};
use crate::rk::{build_g, compute_p, IdentityReport, PairTag, PairType};

/// A highest weight vector and the eigenvalues of every diagonal `s_ii(u)` on it.
#[derive(Clone, Debug, PartialEq)]
pub struct HighestWeight {
    pub vector: Vec<Rat>,
    /// `μ_i(u)` for every label `i` (negative labels included).
    pub eigenvalues: BTreeMap<i32, RatFunc>,
    /// Dimension of the joint kernel `V⁰` of the `s_ij(u)`, `i < j`.
    pub v0_dim: usize,
}

impl HighestWeight {
    /// The highest weight `(μ_i(u))_{i ∈ I_N}`.
    pub fn weight(&self, pair: &PairType) -> Vec<RatFunc> {
        pair.weight_indices().iter().map(|i| self.eigenvalues[i].clone()).collect()
    }
}

/// Joint kernel of the numerator coefficient matrices of the given operators.
pub fn joint_kernel(ops: &[&OpMat], d: usize) -> Vec<Vec<Rat>> {
    let mut blocks = Vec::new();
    for op in ops {
        let (mp, _) = op.cleared();
        blocks.extend(mp.coeffs().iter().filter(|m| !m.is_zero()).cloned());
    }
    if blocks.is_empty() {
        return (0..d).map(|k| (0..d).map(|j| if j == k { ri(1) } else { Rat::zero() }).collect()).collect();
    }
    let refs: Vec<&Mat> = blocks.iter().collect();
    Mat::vstack(&refs).nullspace()
}

/// `Some(λ)` if `op·v = λ(u)·v`.
fn eigenvalue(op: &OpMat, v: &[Rat]) -> Option<RatFunc> {
    let y = op.apply_rat(v);
    let k = v.iter().position(|x| !x.is_zero())?;
    let lam = y[k].scale(&v[k].recip());
    let ok = y.iter().zip(v).all(|(yi, vi)| *yi == lam.scale(vi));
    ok.then_some(lam)
}

/// Finds a vector in `V⁰` that is a joint eigenvector of all `s_ii(u)`.
pub fn highest_weight_extract(m: &TwistedModule) -> Result<HighestWeight, TwError> {
    let labels = m.labels();
    let upper: Vec<&OpMat> = labels
        .iter()
        .flat_map(|&i| labels.iter().filter(move |&&j| i < j).map(move |&j| (i, j)))
        .map(|(i, j)| m.s(i, j))
        .collect();
    let v0 = joint_kernel(&upper, m.dim);
    if v0.is_empty() {
        return Err(TwError::Hypothesis("V⁰ = 0: no vector is annihilated by all s_ij(u), i < j".into()));
    }
    match first_joint_eigenvector(&v0, m.dim, &labels, |i| m.s(i, i)) {
        Some((vector, eigenvalues)) => Ok(HighestWeight { vector, eigenvalues, v0_dim: v0.len() }),
        None => Err(TwError::Hypothesis(format!(
            "V⁰ has dimension {} but contains no joint eigenvector of the diagonal operators",
            v0.len()
        ))),
    }
}

fn first_joint_eigenvector<'a>(
    v0: &[Vec<Rat>],
    d: usize,
    labels: &[i32],
    diag: impl Fn(i32) -> &'a OpMat,
) -> Option<(Vec<Rat>, BTreeMap<i32, RatFunc>)> {
    let mut candidates = v0.to_vec();
    if v0.len() > 1 {
        // a generic combination catches eigenvectors that are not basis vectors
        let mut sum = vec![Rat::zero(); d];
        for (k, v) in v0.iter().enumerate() {
            for (s, x) in sum.iter_mut().zip(v) {
                *s += x * ri(k as i64 + 1);
            }
        }
        candidates.push(sum);
    }
    candidates.into_iter().find_map(|v| {
        let ev: Option<BTreeMap<i32, RatFunc>> = labels.iter().map(|&i| eigenvalue(diag(i), &v).map(|l| (i, l))).collect();
        ev.map(|ev| (v, ev))
    })
}

/// Eigenvalues of the diagonal `s_ii(u)` on `v` when `v` is annihilated by
/// every `s_ij(u)`, `i < j`; `None` otherwise.
pub fn weight_of_vector(m: &TwistedModule, v: &[Rat]) -> Option<BTreeMap<i32, RatFunc>> {
    let labels = m.labels();
    for &i in &labels {
        for &j in labels.iter().filter(|&&j| i < j) {
            if m.s(i, j).apply_rat(v).iter().any(|x| !x.is_zero()) {
                return None;
            }
        }
    }
    labels.iter().map(|&i| eigenvalue(m.s(i, i), v).map(|l| (i, l))).collect()
}

/// Highest vector of an `X(g_N)`-module and the eigenvalues `λ_i(u)` of all
/// `t_ii(u)` on it.
pub fn x_highest_weight(x: &XModule) -> Result<(Vec<Rat>, BTreeMap<i32, RatFunc>), TwError> {
    let labels = x.index_set().labels();
    let upper: Vec<&OpMat> = labels
        .iter()
        .flat_map(|&i| labels.iter().filter(move |&&j| i < j).map(move |&j| (i, j)))
        .map(|(i, j)| x.t(i, j))
        .collect();
    let v0 = joint_kernel(&upper, x.dim);
    first_joint_eigenvector(&v0, x.dim, &labels, |i| x.t(i, i))
        .ok_or_else(|| TwError::Hypothesis("X(g_N)-module has no highest vector".into()))
}

/// `(2κ−2u−n)μ_{−i}(u) = Σ_ℓ β_iℓ(u)(p(u)μ_ℓ(κ−u) ± μ_ℓ(u)/(2u−κ)) + Σ_{ℓ∈I_N} μ_ℓ(u)`
/// with `β_iℓ = 1` for `ℓ ≠ i` and `β_ii = 2κ−2u−n+1`.
pub fn check_neg_weights(pair: &PairType, hw: &HighestWeight) -> Result<IdentityReport, TwError> {
    let n = pair.n() as i64;
    let kap = pair.kappa();
    let p = compute_p(&build_g(pair), pair)?;
    let pm = ri(pair.sign_pm());
    let inv = RatFunc::new(Poly::constant(pm), Poly::linear(ri(2), -kap.clone()));
    let lead = RatFunc::from_poly(Poly::linear(ri(-2), ri(2) * &kap - ri(n)));
    let mu = |i: i32| &hw.eigenvalues[&i];
    let total = pair.weight_indices().iter().fold(RatFunc::zero(), |acc, &l| &acc + mu(l));
    let mut w = Vec::new();
    for i in 1..=n as i32 {
        let mut rhs = total.clone();
        for l in 1..=n as i32 {
            let term = &(&p * &mu(l).reflect(&kap)) + &(mu(l) * &inv);
            let beta = if l == i { &lead + &RatFunc::constant(ri(1)) } else { RatFunc::constant(ri(1)) };
            rhs = &rhs + &(&beta * &term);
        }
        let lhs = &lead * mu(-i);
        if lhs != rhs {
            w.push(format!("i = {i}: LHS − RHS = {}", &lhs - &rhs));
        }
    }
    Ok(IdentityReport::new("negative-index eigenvalues", w))
}

/// `h(u)` of the rank reduction: `1` for CI/DIII and `(2u−2κ′−1)/(2u−2κ′)`
/// for BCD0, where `κ′` belongs to the rank `N−2` pair.
pub fn rank_reduction_h(reduced: &PairType) -> RatFunc {
    if matches!(reduced.tag, PairTag::CI | PairTag::DIII) {
        return RatFunc::constant(ri(1));
    }
    let k2 = ri(2) * reduced.kappa();
    RatFunc::new(Poly::linear(ri(2), -(&k2 + ri(1))), Poly::linear(ri(2), -k2))
}

/// The reduced pair of rank `N − 2`, when the rank reduction applies.
pub fn reduced_pair(pair: &PairType) -> Result<PairType, TwError> {
    if !matches!(pair.tag, PairTag::CI | PairTag::DIII | PairTag::B0 | PairTag::C0 | PairTag::D0) {
        return Err(TwError::Unsupported(format!("rank reduction is implemented for CI, DIII and BCD0, not {}", pair.tag)));
    }
    PairType::simple(pair.tag, pair.big_n - 2)
        .map_err(|_| TwError::Unsupported(format!("{} has no rank N−2 = {} partner", pair, pair.big_n - 2)))
}

/// `V₊` = joint kernel of `s_kn(u)`, `k < n`, with the operators
/// `h(u)·(s_ij(u+½) + δ_ij/(2u)·s_nn(u+½))`, `|i|, |j| < n`.
pub fn restrict_vplus(m: &TwistedModule) -> Result<TwistedModule, TwError> {
    let red = reduced_pair(&m.pair)?;
    let n = m.pair.n() as i32;
    let labels = m.labels();
    let ops: Vec<&OpMat> = labels.iter().filter(|&&k| k < n).map(|&k| m.s(k, n)).collect();
    let kern = joint_kernel(&ops, m.dim);
    let (b, l) = basis_with_left_inverse(&kern, m.dim).ok_or_else(|| TwError::Hypothesis("V₊ = 0".into()))?;
    let h = rank_reduction_h(&red);
    let half = Rat::new(1.into(), 2.into());
    let snn = m.s(n, n).shift(&half);
    let inv2u = RatFunc::new(Poly::one(), Poly::from_ints(&[0, 2]));
    let mut out = Vec::new();
    for i in red.index_set().labels() {
        for j in red.index_set().labels() {
            let mut op = m.s(i, j).shift(&half);
            if i == j {
                op = op.add(&snn.scale(&inv2u));
            }
            let op = op.scale(&h);
            if !op.preserves(&b, &l) {
                return Err(TwError::Relation(format!("V₊ is not stable under s°_({i},{j})(u)")));
            }
            out.push(((i, j), op.compress(&b, &l)));
        }
    }
    Ok(TwistedModule::from_fn(red, b.cols(), format!("V₊ of ({})", m.note), |i, j| {
        out.iter().find(|(k, _)| *k == (i, j)).expect("label").1.clone()
    }))
}

/// A module over the extended reflection algebra `B̃(n, ℓ)`, labels `1..n`.
#[derive(Clone, Debug, PartialEq)]
pub struct BModule {
    pub n: usize,
    pub dim: usize,
    b: Vec<OpMat>,
}

impl BModule {
    pub fn b(&self, i: i32, j: i32) -> &OpMat {
        &self.b[(i as usize - 1) * self.n + (j as usize - 1)]
    }
}

/// `Vᴶ` = joint kernel of `s_{−i,j}(u)` and `s_{0j}(u)` (`1 ≤ i, j ≤ n`) with
/// `b̃_ij(u) ↦ [±]s_ij(u)`. The reports check the reflection equation with
/// `R(u) = I − P/u` and that `B̃(u)B̃(−u)` is scalar.
pub fn restrict_vj(m: &TwistedModule) -> Result<(BModule, Vec<IdentityReport>, Option<RatFunc>), TwError> {
    if m.pair.tag == PairTag::AIII {
        return Err(TwError::Config("Vᴶ is defined for B-C-D pairs".into()));
    }
    let n = m.pair.n() as i32;
    let labels = m.labels();
    let has0 = labels.contains(&0);
    let mut ops = Vec::new();
    for j in 1..=n {
        for i in 1..=n {
            ops.push(m.s(-i, j));
        }
        if has0 {
            ops.push(m.s(0, j));
        }
    }
    let kern = joint_kernel(&ops, m.dim);
    let (bas, l) = basis_with_left_inverse(&kern, m.dim).ok_or_else(|| TwError::Hypothesis("Vᴶ = 0".into()))?;
    let sgn = ri(m.pair.sign_bracket());
    let mut b = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let op = m.s(i, j).scale_rat(&sgn);
            if !op.preserves(&bas, &l) {
                return Err(TwError::Relation(format!("Vᴶ is not stable under s_({i},{j})(u)")));
            }
            b.push(op.compress(&bas, &l));
        }
    }
    let bm = BModule { n: n as usize, dim: bas.cols(), b };
    let (reports, f) = verify_b(&bm);
    Ok((bm, reports, f))
}

/// Reflection equation `R(u−v)B₁(u)R(u+v)B₂(v) = B₂(v)R(u+v)B₁(u)R(u−v)`,
/// `R(u) = I − P/u`, and scalarity of `B(u)B(−u)`.
pub fn verify_b(bm: &BModule) -> (Vec<IdentityReport>, Option<RatFunc>) {
    let labels: Vec<i32> = (1..=bm.n as i32).collect();
    let u = Poly::u();
    let m1 = Poly::constant(-Rat::from_integer(1.into()));
    let r1 = RCoeffs::at(&u, &m1, &Poly::zero(), -1);
    let r2 = RCoeffs::at(&u, &m1, &Poly::zero(), 1);
    let aux = Aux { labels: &labels, theta: None };
    let rel = check_reflection("reflection equation [b,b]", &aux, &bm.b, &r1, &r2);
    let z = Rat::zero();
    let mut w = Vec::new();
    let mut f = None;
    for &i in &labels {
        for &j in &labels {
            let mut acc = OpMat::zero(bm.dim);
            for &k in &labels {
                acc = acc.add(&bm.b(i, k).mul(&bm.b(k, j).reflect(&z)));
            }
            if i == j {
                match (acc.as_scalar(), &f) {
                    (Some(s), None) => f = Some(s),
                    (Some(s), Some(g)) if s == *g => {}
                    _ => w.push(format!("(B(u)B(−u))_({i},{i}) is not the common scalar")),
                }
            } else if !acc.is_zero() {
                w.push(format!("(B(u)B(−u))_({i},{j}) ≠ 0"));
            }
        }
    }
    let unit = IdentityReport::new("B(u)B(−u) is scalar", w);
    let f = if unit.pass { f } else { None };
    (vec![rel, unit], f)
}

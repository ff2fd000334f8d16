//! Highest weights `λ` of the extended Yangian and the passage from
//! Drinfeld data back to twisted-Yangian weights.

use std::collections::BTreeMap;

use num::{One, Zero};

use super::solve::solve_p;
use super::{first_index, p1_shift, p_center, residual, untilde_components, Certificate, WeightTuple};
use crate::error::TwError;
use crate::exact::{factor_shifted_square, ri, rq, Poly, Rat, RatFunc, TruncSeries};
use crate::rk::{kappa, IdentityReport, PairTag};
use crate::tensor::Family;

/// `λ_i(u)` by label, `i ∈ {−n, …, n}` (0 only for odd `N`).
pub type LambdaTuple = BTreeMap<i32, RatFunc>;

fn get<'a>(l: &'a LambdaTuple, i: i32) -> Result<&'a RatFunc, TwError> {
    l.get(&i).ok_or_else(|| TwError::Shape(format!("lambda_{i} missing")))
}

/// `(λ_i/λ_{i+1})(u − κ + n − i)`.
fn ext_step(l: &LambdaTuple, i: i32, n: i32, kap: &Rat) -> Result<RatFunc, TwError> {
    let s = ri((n - i) as i64) - kap;
    Ok(&get(l, i)?.shift(&s) / &get(l, i + 1)?.shift(&s))
}

/// `λ_{−i}/λ_{−i−1} = (λ_{i+1}/λ_i)(u − κ + n − i)` for `i ∈ I_N \ {n}`.
pub fn check_ext_nontrivial(l: &LambdaTuple, big_n: usize, family: Family) -> IdentityReport {
    let n = (big_n / 2) as i32;
    let kap = kappa(big_n, family);
    let first = if big_n % 2 == 1 { 0 } else { 1 };
    let mut w = Vec::new();
    for i in first..n {
        let (Ok(a), Ok(b), Ok(st)) = (get(l, -i), get(l, -i - 1), ext_step(l, i, n, &kap)) else {
            w.push(format!("i={i}: component missing"));
            continue;
        };
        let lhs = a / b;
        let rhs = st.inv().unwrap();
        w.extend(residual(&lhs, &rhs).into_iter().map(|r| format!("i={i}: {r}")));
    }
    IdentityReport::new("lambda_{-i}/lambda_{-i-1} = (lambda_{i+1}/lambda_i)(u-kappa+n-i)", w)
}

/// The unique extension of `(λ_i)_{i ∈ I_N}` (plus `λ_{−k} = ν` for even `N`)
/// to a tuple whose Verma module is non-trivial.
pub fn extend_lambda(
    partial: &LambdaTuple,
    big_n: usize,
    family: Family,
    seed: Option<(i32, RatFunc)>,
) -> Result<LambdaTuple, TwError> {
    let n = (big_n / 2) as i32;
    let odd = big_n % 2 == 1;
    let kap = kappa(big_n, family);
    let first = if odd { 0 } else { 1 };
    let mut l: LambdaTuple = BTreeMap::new();
    for i in first..=n {
        let f = get(partial, i)?;
        if f.value_at_infinity() != Some(Rat::one()) {
            return Err(TwError::Normalization(format!("lambda_{i} = {f} is not 1 + O(1/u)")));
        }
        l.insert(i, f.clone());
    }
    let k = if odd {
        0
    } else {
        let (k, nu) = seed.ok_or_else(|| TwError::Config("even N needs lambda_{-k} = nu".into()))?;
        if !(1..=n).contains(&k) {
            return Err(TwError::Config(format!("k = {k} outside 1..={n}")));
        }
        if nu.value_at_infinity() != Some(Rat::one()) {
            return Err(TwError::Normalization(format!("nu = {nu} is not 1 + O(1/u)")));
        }
        l.insert(-k, nu);
        k
    };
    for i in k..n {
        let v = &ext_step(&l, i, n, &kap)? * get(&l, -i)?;
        l.insert(-i - 1, v);
    }
    for i in (first.max(1)..k).rev() {
        let v = get(&l, -i - 1)? / &ext_step(&l, i, n, &kap)?;
        l.insert(-i, v);
    }
    let rep = check_ext_nontrivial(&l, big_n, family);
    if !rep.pass {
        return Err(TwError::Relation(rep.to_string()));
    }
    Ok(l)
}

/// Drinfeld polynomials `P_1, …, P_n` of the extended-Yangian weight `λ`.
pub fn xgn_fd_check(l: &LambdaTuple, big_n: usize, family: Family, deg_max: usize) -> Option<Vec<Poly>> {
    let n = (big_n / 2) as i32;
    let one = ri(1);
    let (num, den, s) = if big_n % 2 == 1 {
        (0, 1, rq(1, 2))
    } else if family == Family::Symplectic {
        (-1, 1, ri(2))
    } else {
        if n < 2 {
            return None;
        }
        (-1, 2, ri(1))
    };
    let r = l.get(&num)? / l.get(&den)?;
    let mut out = vec![solve_p(&r, &s, None, deg_max).found()?];
    for i in 2..=n {
        let r = l.get(&(i - 1))? / l.get(&i)?;
        out.push(solve_p(&r, &one, None, deg_max).found()?);
    }
    Some(out)
}

/// `μ°` with `ν̃₁(u) = 2u·μ°(2u)·μ°(2u−1)` and `ν̃₀(u) = 2u·μ°(2u)·μ°(1−2u)`
/// for a weight `(μ₀, μ₁)` of `so₃`, through order `d`.
pub fn mu_factorize_b0(mu0: &RatFunc, mu1: &RatFunc, d: usize) -> Result<TruncSeries, TwError> {
    let half = rq(1, 2);
    let nu = super::tilde_components(1, 0, &[mu0.clone(), mu1.clone()]);
    let u = RatFunc::u();
    let lhs = &u * &nu[0].reflect(&half);
    let rhs = &RatFunc::from_poly(Poly::linear(-Rat::one(), half.clone())) * &nu[0];
    if lhs != rhs {
        return Err(TwError::Hypothesis(format!("u*nu_0(1/2-u) = (1/2-u)*nu_0(u) fails: {lhs} != {rhs}")));
    }
    let one = Rat::one();
    let lhs = &nu[0] * &nu[0].reflect(&one);
    let rhs = &nu[1] * &nu[1].reflect(&one);
    if lhs != rhs {
        return Err(TwError::Hypothesis(format!("nu_0(u)nu_0(1-u) = nu_1(u)nu_1(1-u) fails: {lhs} != {rhs}")));
    }
    // μ₁(u) = λ(u)λ(u − 1/2), μ°(u) = λ(u/2)
    let lam = factor_shifted_square(&mu1.series(d)?, &-half.clone())?;
    let circ = lam.scale_arg(&half);
    let two = ri(2);
    let at_2u = circ.scale_arg(&two);
    let check1 = &at_2u * &circ.shift_arg(&-one.clone()).scale_arg(&two);
    let check0 = &at_2u * &circ.scale_arg(&-one.clone()).shift_arg(&-one.clone()).scale_arg(&two);
    let two_u = RatFunc::from_poly(Poly::linear(two, Rat::zero()));
    for (k, (c, nu_k)) in [(check0, &nu[0]), (check1, &nu[1])].into_iter().enumerate() {
        let target = (nu_k / &two_u).series(d)?;
        if c != target {
            return Err(TwError::Relation(format!(
                "nu_{k}(u)/(2u) differs from its factorization through order {d}"
            )));
        }
    }
    Ok(circ)
}

/// A weight whose certificate is `cert`, built from monic `Q_i` with
/// `P_i(u) = (−1)^{deg Q_i}·Q_i(u)·Q_i(c_i − u)`.
pub fn construct_from_cert(cert: &Certificate, qs: &[Poly]) -> Result<WeightTuple, TwError> {
    let pair = cert.pair;
    if !(pair.tag.is_bcd0() || matches!(pair.tag, PairTag::CI | PairTag::DIII)) {
        return Err(TwError::Unsupported(format!("no sufficiency construction for {pair}")));
    }
    let n = pair.n();
    if cert.polys.len() != n || qs.len() != n {
        return Err(TwError::Shape(format!("{pair} needs {n} polynomials")));
    }
    let wants_gamma = matches!(pair.tag, PairTag::CI | PairTag::DIII);
    if wants_gamma != cert.gamma.is_some() {
        return Err(TwError::Config(format!("gamma must be present exactly for CI/DIII, pair is {pair}")));
    }
    if let (Some(g), Some(p1)) = (&cert.gamma, cert.polys.first()) {
        if p1.eval(g).is_zero() {
            return Err(TwError::Config(format!("P_1({g}) = 0")));
        }
    }
    for (k, (p, q)) in cert.polys.iter().zip(qs).enumerate() {
        let i = k + 1;
        if !q.is_monic() {
            return Err(TwError::Config(format!("Q_{i} = {q} is not monic")));
        }
        let c = p_center(&pair, i);
        let deg = q.degree().unwrap_or(0);
        let mut prod = q * &q.reflect(&c);
        if deg % 2 == 1 {
            prod = -prod;
        }
        if prod != *p {
            return Err(TwError::Config(format!("Q_{i} = {q} gives {prod}, not P_{i} = {p}")));
        }
    }
    let kap = pair.kappa();
    let half_k = &kap / ri(2);
    let qh: Vec<RatFunc> = qs.iter().map(|q| RatFunc::from_poly(q.shift(&half_k))).collect();
    let a: usize = qs.iter().skip(1).map(|q| q.degree().unwrap_or(0)).sum();
    let u_pow = RatFunc::from_poly(Poly::u().pow(a));
    let one = ri(1);
    let mut partial: LambdaTuple = BTreeMap::new();
    for i in 1..=n {
        let mut f = RatFunc::one();
        for (j, qj) in qh.iter().enumerate().skip(1) {
            // Q̂_j(u) for j ≤ i, Q̂_j(u+1) otherwise (labels are 1-based)
            f = if j < i { &f * qj } else { &f * &qj.shift(&one) };
        }
        partial.insert(i as i32, &f / &u_pow);
    }
    let s1 = p1_shift(&pair);
    let q1 = &qh[0].shift(&s1) / &qh[0];
    let family = pair.family();
    let full = match pair.big_n % 2 {
        1 => {
            partial.insert(0, &q1 * &partial[&1]);
            extend_lambda(&partial, pair.big_n, family, None)?
        }
        _ => {
            let base = if family == Family::Symplectic { &partial[&1] } else { &partial[&2] };
            let nu = &q1 * base;
            extend_lambda(&partial, pair.big_n, family, Some((1, nu)))?
        }
    };
    let two_u = match &cert.gamma {
        // 2u·(1 + (γ − κ)/u)
        Some(g) => Poly::linear(ri(2), ri(2) * (g - &kap)),
        None => Poly::linear(ri(2), Rat::zero()),
    };
    let two_u = RatFunc::from_poly(two_u);
    let first = first_index(&pair);
    let nu: Vec<RatFunc> = (first..=n as i32)
        .map(|i| {
            let a = full[&i].shift(&-half_k.clone());
            let b = full[&-i].reflect(&half_k);
            &(&two_u * &a) * &b
        })
        .collect();
    WeightTuple::new(pair, untilde_components(n, first, &nu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify, DEFAULT_DEG_MAX};
    use crate::rk::PairType;

    fn lin(a: Rat) -> Poly {
        Poly::linear(Rat::one(), a)
    }

    #[test]
    fn constant_lambda_extends_constantly() {
        for (n, fam) in [(5, Family::Orthogonal), (6, Family::Symplectic), (6, Family::Orthogonal)] {
            let first = if n % 2 == 1 { 0 } else { 1 };
            let p: LambdaTuple = (first..=(n as i32 / 2)).map(|i| (i, RatFunc::one())).collect();
            let seed = (n % 2 == 0).then(|| (1, RatFunc::one()));
            let l = extend_lambda(&p, n, fam, seed).unwrap();
            assert!(l.values().all(|f| f.is_one()));
            assert_eq!(xgn_fd_check(&l, n, fam, 16).unwrap(), vec![Poly::one(); n / 2]);
        }
    }

    #[test]
    fn odd_single_step() {
        let l0 = &RatFunc::one() + &RatFunc::pole(&rq(1, 3));
        let p: LambdaTuple = [(0, l0.clone()), (1, RatFunc::one())].into_iter().collect();
        let l = extend_lambda(&p, 3, Family::Orthogonal, None).unwrap();
        let kap = kappa(3, Family::Orthogonal);
        let s = ri(1) - &kap;
        assert_eq!(l[&-1], &l0.shift(&s) * &l0);
    }

    #[test]
    fn even_needs_seed() {
        let p: LambdaTuple = [(1, RatFunc::one()), (2, RatFunc::one())].into_iter().collect();
        assert!(extend_lambda(&p, 4, Family::Orthogonal, None).is_err());
    }

    #[test]
    fn so3_trivial_factorization() {
        let c = mu_factorize_b0(&RatFunc::one(), &RatFunc::one(), 8).unwrap();
        assert_eq!(c, TruncSeries::one(8));
    }

    #[test]
    fn so3_hypothesis_violation() {
        let bad = &RatFunc::one() + &RatFunc::pole(&ri(2));
        match mu_factorize_b0(&bad, &RatFunc::one(), 8) {
            Err(TwError::Hypothesis(m)) => assert!(m.contains("nu_0")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ci_round_trip_linear_q() {
        let pair = PairType::simple(PairTag::CI, 2).unwrap();
        let q = lin(ri(-1));
        let c = p_center(&pair, 1);
        let p = -(&q * &q.reflect(&c));
        let cert = Certificate { pair, polys: vec![p], gamma: Some(rq(1, 2)) };
        let w = construct_from_cert(&cert, &[q]).unwrap();
        let v = classify(&w, DEFAULT_DEG_MAX);
        assert_eq!(v.certificate, Some(cert), "{:?}", v.diagnostics);
    }

    #[test]
    fn d0_round_trip() {
        let pair = PairType::simple(PairTag::D0, 4).unwrap();
        let q2 = lin(rq(-3, 2));
        let p2 = -(&q2 * &q2.reflect(&p_center(&pair, 2)));
        let cert = Certificate { pair, polys: vec![Poly::one(), p2], gamma: None };
        let w = construct_from_cert(&cert, &[Poly::one(), q2]).unwrap();
        assert_eq!(classify(&w, DEFAULT_DEG_MAX).certificate, Some(cert));
    }

    #[test]
    fn trivial_certificate_gives_trivial_weight() {
        for (tag, n) in [(PairTag::B0, 5), (PairTag::C0, 4), (PairTag::D0, 6)] {
            let pair = PairType::simple(tag, n).unwrap();
            let cert = Certificate { pair, polys: vec![Poly::one(); pair.n()], gamma: None };
            let w = construct_from_cert(&cert, &vec![Poly::one(); pair.n()]).unwrap();
            assert_eq!(w, WeightTuple::trivial(pair).unwrap());
        }
    }
}

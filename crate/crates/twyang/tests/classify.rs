use num::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twyang::classify::*;
use twyang::exact::{factor_shifted_square, ri, rq, Poly, Rat, RatFunc, TruncSeries};
use twyang::reps::lie::sp2_module;
use twyang::reps::weights::joint_kernel;
use twyang::reps::*;
use twyang::rk::{PairTag, PairType};
use twyang::tensor::Family;

fn half(k: i64) -> Rat {
    rq(k, 2)
}

/// `P = (−1)^{deg Q}·Q(u)·Q(c − u)`.
fn p_from_q(q: &Poly, c: &Rat) -> Poly {
    let p = q * &q.reflect(c);
    if q.degree().unwrap_or(0) % 2 == 1 {
        -p
    } else {
        p
    }
}

fn pair_strategy() -> impl Strategy<Value = PairType> {
    prop::sample::select(vec![
        (PairTag::B0, 3),
        (PairTag::B0, 5),
        (PairTag::B0, 7),
        (PairTag::C0, 2),
        (PairTag::C0, 4),
        (PairTag::C0, 6),
        (PairTag::D0, 4),
        (PairTag::D0, 6),
        (PairTag::CI, 2),
        (PairTag::CI, 4),
        (PairTag::CI, 6),
        (PairTag::DIII, 4),
        (PairTag::DIII, 6),
    ])
    .prop_map(|(t, n)| PairType::simple(t, n).unwrap())
}

/// Monic polynomials of degree ≤ 2 with half-integer roots in `[−3, 3]`.
fn q_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-6i64..=6, 0..=2).prop_map(|r| Poly::from_roots(&r.into_iter().map(half).collect::<Vec<_>>()))
}

fn ratio(p: &Poly, s: &Rat) -> RatFunc {
    &RatFunc::from_poly(p.shift(s)) / &RatFunc::from_poly(p.clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn certificate_round_trip(pair in pair_strategy(), qs in prop::collection::vec(q_strategy(), 3), g in -6i64..=6) {
        let n = pair.n();
        let qs = &qs[..n];
        let polys: Vec<Poly> = qs.iter().enumerate().map(|(k, q)| p_from_q(q, &p_center(&pair, k + 1))).collect();
        let gamma = matches!(pair.tag, PairTag::CI | PairTag::DIII).then(|| half(g));
        if let Some(g) = &gamma {
            prop_assume!(!polys[0].eval(g).is_zero());
        }
        let cert = Certificate { pair, polys, gamma };
        prop_assert!(cert.check_invariants().iter().all(|r| r.pass));
        let mu = construct_from_cert(&cert, qs).unwrap();
        let v = classify(&mu, DEFAULT_DEG_MAX);
        prop_assert!(v.nontrivial, "{:?}", v.diagnostics);
        prop_assert_eq!(v.finite_dim, FiniteDim::Yes);
        prop_assert_eq!(v.certificate, Some(cert));
    }

    #[test]
    fn drinfeld_polynomial_is_unique(roots in prop::collection::vec(-12i64..=12, 0..=4), s in prop::sample::select(vec![half(1), ri(1), ri(2)])) {
        let p = Poly::from_roots(&roots.into_iter().map(|r| rq(r, 4)).collect::<Vec<_>>());
        let r = ratio(&p, &s);
        let d = p.degree().unwrap_or(0);
        prop_assert_eq!(forced_degree(&r, &s), Ok(d));
        for e in 0..=DEFAULT_DEG_MAX {
            let got = solve_p_at_degree(&r, &s, e);
            if e == d {
                prop_assert_eq!(got.as_ref(), Some(&p));
            } else {
                prop_assert!(got.is_none(), "degree {} also solves: {:?}", e, got);
            }
        }
    }

    #[test]
    fn tilde_is_a_bijection(pair in pair_strategy(), poles in prop::collection::vec((-4i64..=4, -6i64..=6), 4)) {
        let mu: Vec<RatFunc> = pair
            .weight_indices()
            .iter()
            .zip(&poles)
            .map(|(&i, &(a, b))| &RatFunc::constant(ri(pair.g_const(i))) + &RatFunc::pole(&half(b)).scale(&ri(a)))
            .collect();
        let w = WeightTuple::new(pair, mu).unwrap();
        prop_assert_eq!(untilde(&tilde(&w)).unwrap(), w);
    }

    #[test]
    fn tilde_components_round_trip(n in 1usize..5, first in 0i32..2, cs in prop::collection::vec((-5i64..=5, 1i64..=4), 5)) {
        let mu: Vec<RatFunc> = cs[..n].iter().map(|&(a, b)| RatFunc::new(Poly::from_ints(&[a, b]), Poly::from_ints(&[1, 1]))).collect();
        let nu = tilde_components(n, first, &mu);
        prop_assert_eq!(untilde_components(n, first, &nu), mu);
    }
}

#[test]
fn catalog_modules_are_finite_dimensional() {
    for m in catalog().unwrap() {
        let hw = highest_weight_extract(&m).unwrap();
        let mu = WeightTuple::new(m.pair, hw.weight(&m.pair)).unwrap();
        let v = classify(&mu, DEFAULT_DEG_MAX);
        assert!(v.nontrivial, "{} ({}): {:?}", m.note, m.pair, v.diagnostics);
        if m.pair.tag.is_mixed() {
            assert_eq!(v.finite_dim, FiniteDim::NecessaryOnly { pass: true }, "{} ({})", m.note, m.pair);
        } else {
            assert_eq!(v.finite_dim, FiniteDim::Yes, "{} ({}): {:?}", m.note, m.pair, v.diagnostics);
            let cert = v.certificate.unwrap();
            for r in cert.check_invariants() {
                assert!(r.pass, "{r}");
            }
        }
    }
}

#[test]
fn so3_certificates_are_symmetric_about_three_halves() {
    for m in 0..5 {
        let e = eval_so3(&rq(-m, 2)).unwrap();
        let hw = highest_weight_extract(&e).unwrap();
        let cert = classify(&WeightTuple::new(e.pair, hw.weight(&e.pair)).unwrap(), DEFAULT_DEG_MAX)
            .certificate
            .unwrap();
        let p1 = &cert.polys[0];
        assert_eq!(p1.reflect(&rq(3, 2)), *p1);
        assert_eq!(p1.degree(), Some(2 * m as usize), "dimension {}", m + 1);
    }
}

#[test]
fn d0_violation_is_reported() {
    let pair = PairType::simple(PairTag::D0, 4).unwrap();
    let mu = WeightTuple::new(pair, vec![&RatFunc::one() + &RatFunc::pole(&ri(0)), RatFunc::one()]).unwrap();
    let r = check_nontrivial(&mu);
    assert!(!r.pass);
    assert_eq!(r.first_violation, Some(1));
    let v = classify(&mu, DEFAULT_DEG_MAX);
    assert!(!v.nontrivial);
    assert_eq!(v.finite_dim, FiniteDim::Undefined);
}

#[test]
fn irrational_gamma_is_inconclusive() {
    // CI, N = 2: ν̃₁ = 2(u² − 2)/u has ratio numerator u(u² − 4u + 2)
    let pair = PairType::simple(PairTag::CI, 2).unwrap();
    let mu1 = RatFunc::new(Poly::from_ints(&[-2, 0, 1]), Poly::from_ints(&[0, 0, 1]));
    let v = classify(&WeightTuple::new(pair, vec![mu1]).unwrap(), DEFAULT_DEG_MAX);
    assert!(v.nontrivial);
    assert_eq!(v.finite_dim, FiniteDim::Inconclusive);
    assert!(v.diagnostics.iter().any(|r| r.note.as_deref().is_some_and(|n| n.contains("not rational"))));
}

#[test]
fn gamma_candidates_can_all_fail() {
    // (5 − u)/(u − 1): γ = 5 forces P = (u−1)(u+1), not symmetric about 4; γ = 1 forces a negative degree
    let r = RatFunc::new(Poly::from_ints(&[5, -1]), Poly::from_ints(&[-1, 1]));
    let out = solve_p_gamma(&r, &ri(2), &ri(2), Some(&ri(4)), DEFAULT_DEG_MAX);
    assert!(matches!(out, SolveOutcome::None(_)), "{out:?}");
    let out = solve_p_gamma(&r, &ri(2), &ri(2), None, DEFAULT_DEG_MAX);
    assert_eq!(out.found(), Some((Poly::from_ints(&[-1, 0, 1]), ri(5))));
}

#[test]
fn sp2_gamma_example() {
    // ν̃₁(κ−u)/ν̃₁(u) for the CI evaluation weight 1 + 2m/u
    for m in [ri(-3), rq(1, 2), ri(4)] {
        let pair = PairType::simple(PairTag::CI, 2).unwrap();
        let mu = &RatFunc::one() + &RatFunc::pole(&ri(0)).scale(&(ri(2) * &m));
        let v = classify(&WeightTuple::new(pair, vec![mu]).unwrap(), DEFAULT_DEG_MAX);
        assert_eq!(v.finite_dim, FiniteDim::Yes, "m = {m}: {:?}", v.diagnostics);
    }
}

#[test]
fn mixed_pairs_use_necessary_conditions() {
    let pair = PairType::new(PairTag::CII, 4, Some(2), Some(2)).unwrap();
    let triv = WeightTuple::trivial(pair).unwrap();
    assert_eq!(classify(&triv, DEFAULT_DEG_MAX).finite_dim, FiniteDim::NecessaryOnly { pass: true });
}

/// `s°₁₁(u)` on the vector killed by `s°₋₁,₁(u)`.
fn olshanskii_top_eigenvalue(m: &OlshanskiiModule) -> RatFunc {
    let v = joint_kernel(&[m.s(-1, 1)], m.dim).remove(0);
    let y = m.s(1, 1).apply_rat(&v);
    let k = v.iter().position(|x| !x.is_zero()).unwrap();
    let lam = y[k].scale(&v[k].recip());
    assert!(y.iter().zip(&v).all(|(a, b)| *a == lam.scale(b)));
    lam
}

#[test]
fn so3_factorization_matches_olshanskii_weight() {
    let d = 12;
    for m in 0..5 {
        let e = eval_so3(&rq(-m, 2)).unwrap();
        let hw = highest_weight_extract(&e).unwrap();
        let circ = mu_factorize_b0(&hw.eigenvalues[&0], &hw.eigenvalues[&1], d).unwrap();
        let ol = olshanskii_eval(-1, &OlshanskiiLie::Sp2(sp2_module(&ri(-m)).unwrap())).unwrap();
        let oracle = olshanskii_top_eigenvalue(&ol).series(d).unwrap();
        assert_eq!(circ, oracle, "dimension {}", m + 1);
    }
}

#[test]
fn so3_factorization_rejects_bad_hypotheses() {
    let mu0 = &RatFunc::one() + &RatFunc::pole(&ri(1));
    assert!(mu_factorize_b0(&mu0, &RatFunc::one(), 8).is_err());
}

#[test]
fn shifted_square_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let d = 12;
    for _ in 0..100 {
        let mut c = vec![ri(1)];
        c.extend((0..d).map(|_| rq(rng.gen_range(-9..=9), rng.gen_range(1..=4))));
        let k0 = TruncSeries::new(c);
        let a = rq(rng.gen_range(-6..=6), rng.gen_range(1..=3));
        let h = &k0 * &k0.shift_arg(&a);
        let k = factor_shifted_square(&h, &a).unwrap();
        assert_eq!(k, k0, "a = {a}");
    }
}

#[test]
fn vector_module_lambda_extends() {
    for (big_n, family) in [(4, Family::Orthogonal), (4, Family::Symplectic), (5, Family::Orthogonal)] {
        let x = vector_eval_x(big_n, family, &rq(1, 3)).unwrap();
        let (_, lam) = x_highest_weight(&x).unwrap();
        assert!(check_ext_nontrivial(&lam, big_n, family).pass);
        let n = (big_n / 2) as i32;
        let first = if big_n % 2 == 1 { 0 } else { 1 };
        let partial: LambdaTuple = (first..=n).map(|i| (i, lam[&i].clone())).collect();
        let seed = (big_n % 2 == 0).then(|| (n, lam[&-n].clone()));
        let ext = extend_lambda(&partial, big_n, family, seed).unwrap();
        assert_eq!(ext, lam, "N = {big_n}, {family:?}");
        assert!(xgn_fd_check(&lam, big_n, family, DEFAULT_DEG_MAX).is_some());
    }
}

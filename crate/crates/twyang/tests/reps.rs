use twyang::exact::{ri, rq, Poly, Rat, RatFunc};
use twyang::reps::lie::sp2_module;
use twyang::reps::*;
use twyang::rk::{supported_pairs, PairTag, PairType};
use twyang::tensor::Family;

fn u() -> RatFunc {
    RatFunc::u()
}
fn c(r: Rat) -> RatFunc {
    RatFunc::constant(r)
}
fn lin(a: i64, b: Rat) -> RatFunc {
    RatFunc::from_poly(Poly::linear(ri(a), b))
}
fn div(a: &RatFunc, b: &RatFunc) -> RatFunc {
    a * &b.inv().unwrap()
}

fn passes(m: &TwistedModule) -> ModuleReport {
    let r = verify_twisted(m).unwrap();
    assert!(r.pass(), "{}:\n{r}", m.note);
    r
}

fn same(a: &TwistedModule, b: &TwistedModule) -> Result<(), String> {
    if a.dim != b.dim {
        return Err(format!("dimensions {} vs {}", a.dim, b.dim));
    }
    for i in a.labels() {
        for j in a.labels() {
            if a.s(i, j) != b.s(i, j) {
                return Err(format!("s_({i},{j}):\n{}\nvs\n{}", a.s(i, j), b.s(i, j)));
            }
        }
    }
    Ok(())
}

#[test]
fn sp2_evaluation_modules_and_weights() {
    for mu in [0, -1, -2, -3] {
        let m = eval_sp2(Sp2Variant::C0, &ri(mu)).unwrap();
        let r = passes(&m);
        let hw = highest_weight_extract(&m).unwrap();
        let want = &c(ri(1)) + &div(&c(ri(2 * mu)), &lin(1, ri(-2)));
        assert_eq!(hw.eigenvalues[&1], want);
        assert_eq!(r.w.unwrap(), &want * &want.reflect(&ri(0)));
        assert!(check_neg_weights(&m.pair, &hw).unwrap().pass);
    }
    for mu in [ri(0), ri(3), rq(-5, 2)] {
        let m = eval_sp2(Sp2Variant::CI, &mu).unwrap();
        passes(&m);
        let hw = highest_weight_extract(&m).unwrap();
        assert_eq!(hw.eigenvalues[&1], &c(ri(1)) + &div(&c(ri(2) * &mu), &u()));
        assert!(check_neg_weights(&m.pair, &hw).unwrap().pass);
    }
}

#[test]
fn so3_evaluation_modules_and_weights() {
    for (a, b) in [(0, 1), (-1, 2), (-1, 1), (-3, 2), (-2, 1)] {
        let mu = rq(a, b);
        let m = eval_so3(&mu).unwrap();
        let r = passes(&m);
        let hw = highest_weight_extract(&m).unwrap();
        let q3 = lin(1, rq(-3, 4));
        let q1 = lin(1, rq(-1, 4));
        let mu1 = &c(ri(1))
            + &div(&(&c(&mu * &mu) + &(&lin(2, ri(-1)) * &c(mu.clone()))), &(&q3 * &q1));
        let num0 = &(&c(&mu * &mu) * &lin(-1, rq(-1, 4))) - &(&c(mu.clone()) * &q1);
        let mu0 = &c(ri(1)) + &div(&num0, &(&q3 * &(&q1 * &q1)));
        assert_eq!(hw.eigenvalues[&1], mu1, "mu = {mu}");
        assert_eq!(hw.eigenvalues[&0], mu0, "mu = {mu}");
        assert_eq!(r.w.unwrap(), &mu1 * &mu1.reflect(&ri(0)));
        assert!(check_neg_weights(&m.pair, &hw).unwrap().pass);
    }
}

#[test]
fn so4_evaluation_modules_and_weights() {
    let cases = [
        (So4Variant::D0, ri(0), ri(0)),
        (So4Variant::D0, ri(0), ri(-1)),
        (So4Variant::D0, ri(1), ri(-1)),
        (So4Variant::D0, ri(-1), ri(-1)),
        (So4Variant::DIII, ri(0), ri(0)),
        (So4Variant::DIII, ri(1), ri(0)),
        (So4Variant::DIII, rq(1, 2), rq(1, 2)),
        (So4Variant::DIII, rq(3, 2), rq(-1, 2)),
    ];
    for (v, m1, m2) in cases {
        let m = eval_so4(v, &m1, &m2).unwrap();
        let r = passes(&m);
        let hw = highest_weight_extract(&m).unwrap();
        let weight = |a: &Rat, b: &Rat| match v {
            So4Variant::D0 => {
                let q = lin(1, ri(-1));
                &(&c(ri(1)) + &div(&c(ri(2) * a), &q)) + &div(&c(a * a - b * b), &(&q * &q))
            }
            So4Variant::DIII => {
                &(&c(ri(1)) + &div(&c(ri(2) * a), &u())) + &div(&c(a * a - b * b + a - b), &(&u() * &lin(1, ri(-1))))
            }
        };
        assert_eq!(hw.eigenvalues[&1], weight(&m1, &m2), "{v:?} ({m1},{m2}) μ₁");
        assert_eq!(hw.eigenvalues[&2], weight(&m2, &m1), "{v:?} ({m1},{m2}) μ₂");
        let mu2 = &hw.eigenvalues[&2];
        assert_eq!(r.w.unwrap(), mu2 * &mu2.reflect(&ri(0)));
        assert!(check_neg_weights(&m.pair, &hw).unwrap().pass);
    }
}

#[test]
fn one_dimensional_modules() {
    for pair in supported_pairs(5).into_iter().filter(|p| p.tag != PairTag::AIII) {
        let m = onedim_module(&pair, None).unwrap();
        let r = passes(&m);
        let hw = highest_weight_extract(&m).unwrap();
        for i in pair.weight_indices() {
            assert_eq!(hw.eigenvalues[&i], pair.g_entry(i));
        }
        if pair.tag.is_bcd0() {
            assert_eq!(r.w.unwrap(), c(ri(1)));
        }
    }
    for tag in [PairTag::CI, PairTag::DIII] {
        let pair = PairType::simple(tag, 4).unwrap();
        let a = rq(2, 3);
        let m = onedim_module(&pair, Some(&a)).unwrap();
        passes(&m);
        let hw = highest_weight_extract(&m).unwrap();
        assert_eq!(hw.eigenvalues[&1], &c(ri(1)) + &div(&c(a.clone()), &u()));
    }
    assert!(onedim_module(&PairType::simple(PairTag::C0, 4).unwrap(), Some(&ri(1))).is_err());
}

#[test]
fn corrupted_module_fails_with_witness() {
    let m = eval_sp2(Sp2Variant::C0, &ri(-2)).unwrap();
    let mut bad = m.clone();
    bad.set_s(1, -1, m.s(1, -1).scale_rat(&ri(2)));
    let r = verify_twisted(&bad).unwrap();
    assert!(!r.pass());
    let failing = r.reports.iter().find(|x| !x.pass).unwrap();
    assert!(!failing.witnesses.is_empty());
}

#[test]
fn olshanskii_modules_and_sdet() {
    let triv = olshanskii_eval(-1, &OlshanskiiLie::Sp2(sp2_module(&ri(0)).unwrap())).unwrap();
    let (rep, sdet) = olshanskii_sdet2(&triv);
    assert!(rep.pass, "{rep}");
    assert_eq!(sdet.unwrap(), div(&lin(2, ri(1)), &lin(2, ri(-1))));
    for mu in [-1, -2] {
        let m = olshanskii_eval(-1, &OlshanskiiLie::Sp2(sp2_module(&ri(mu)).unwrap())).unwrap();
        for r in verify_olshanskii(&m) {
            assert!(r.pass, "{r}");
        }
        let (rep, sdet) = olshanskii_sdet2(&m);
        assert!(rep.pass, "{rep}");
        assert!(sdet.is_some());
    }
    let plus = olshanskii_eval(1, &OlshanskiiLie::So2(rq(3, 5))).unwrap();
    for r in verify_olshanskii(&plus) {
        assert!(r.pass, "{r}");
    }
    assert!(olshanskii_eval(1, &OlshanskiiLie::Sp2(sp2_module(&ri(0)).unwrap())).is_err());
}

#[test]
fn so3_bridge_matches_evaluation() {
    for m in 0..5 {
        let ol = olshanskii_eval(-1, &OlshanskiiLie::Sp2(sp2_module(&ri(-m)).unwrap())).unwrap();
        let b = bridge_so3(&ol).unwrap();
        passes(&b);
        let e = eval_so3(&rq(-m, 2)).unwrap();
        same(&b, &e).unwrap_or_else(|d| panic!("dimension {}: {d}", m + 1));
    }
}

#[test]
fn sp2_bridge_matches_evaluation() {
    for mu in [0, -1, -2] {
        let ol = olshanskii_eval(-1, &OlshanskiiLie::Sp2(sp2_module(&ri(mu)).unwrap())).unwrap();
        let b = bridge_sp2(Sp2Variant::C0, &ol).unwrap();
        passes(&b);
        same(&b, &eval_sp2(Sp2Variant::C0, &ri(mu)).unwrap()).unwrap_or_else(|d| panic!("C0 {mu}: {d}"));
    }
    for mu in [ri(0), rq(1, 3)] {
        let ol = olshanskii_eval(1, &OlshanskiiLie::So2(mu.clone())).unwrap();
        let b = bridge_sp2(Sp2Variant::CI, &ol).unwrap();
        passes(&b);
        let hb = highest_weight_extract(&b).unwrap();
        let he = highest_weight_extract(&eval_sp2(Sp2Variant::CI, &mu).unwrap()).unwrap();
        assert_eq!(hb.eigenvalues[&1], he.eigenvalues[&1], "CI {mu}");
    }
}

#[test]
fn so4_bridge_matches_evaluation() {
    for (m1, m2) in [(0, 0), (1, 0), (1, -1), (2, 0)] {
        let (m1, m2) = (ri(m1), ri(m2));
        let circ = olshanskii_eval(1, &OlshanskiiLie::So2(&m1 + &m2)).unwrap();
        let bullet = olshanskii_eval(-1, &OlshanskiiLie::Sp2(sp2_module(&(&m2 - &m1)).unwrap())).unwrap();
        let b = bridge_so4(&circ, &bullet).unwrap();
        passes(&b);
        let hb = highest_weight_extract(&b).unwrap();
        let he = highest_weight_extract(&eval_so4(So4Variant::DIII, &m1, &m2).unwrap()).unwrap();
        assert_eq!(hb.weight(&b.pair), he.weight(&b.pair), "DIII ({m1},{m2})");
    }
    for (a, b) in [(0, 0), (0, -1), (-1, -1)] {
        let x = olshanskii_eval(-1, &OlshanskiiLie::Sp2(sp2_module(&ri(a)).unwrap())).unwrap();
        let y = olshanskii_eval(-1, &OlshanskiiLie::Sp2(sp2_module(&ri(b)).unwrap())).unwrap();
        let m = bridge_so4(&x, &y).unwrap();
        passes(&m);
    }
}

fn tilde(pair: &PairType, mu: &std::collections::BTreeMap<i32, RatFunc>) -> Vec<RatFunc> {
    let n = pair.n() as i64;
    let idx = pair.weight_indices();
    idx.iter()
        .map(|&i| {
            let mut t = &lin(2, ri(i as i64 - n)) * &mu[&i];
            for &l in idx.iter().filter(|&&l| l > i) {
                t = &t + &mu[&l];
            }
            t
        })
        .collect()
}

#[test]
fn tensor_with_vector_evaluation_modules() {
    let mut pairs = Vec::new();
    for n in 2..=6 {
        for tag in [PairTag::CI, PairTag::DIII, PairTag::B0, PairTag::C0, PairTag::D0] {
            if let Ok(p) = PairType::simple(tag, n) {
                pairs.push(p);
            }
        }
    }
    for pair in pairs {
        let a = rq(1, 3);
        let x = vector_eval_x(pair.big_n, pair.family(), &a).unwrap();
        let (xi, lam) = x_highest_weight(&x).unwrap();
        let v = onedim_module(&pair, None).unwrap();
        let t = tensor_twisted(&x, &v).unwrap();
        if pair.big_n <= 4 {
            let r = passes(&t);
            assert!(r.w.is_some());
        }
        let gamma = weight_of_vector(&t, &xi).unwrap_or_else(|| panic!("{pair}: ξ⊗η is not a highest vector"));
        let eta = highest_weight_extract(&v).unwrap().eigenvalues;
        let k2 = pair.kappa() * rq(1, 2);
        let (gt, mt) = (tilde(&pair, &gamma), tilde(&pair, &eta));
        for (pos, &i) in pair.weight_indices().iter().enumerate() {
            let f = &lam[&i].shift(&-k2.clone()) * &lam[&-i].reflect(&k2);
            assert_eq!(gt[pos], &mt[pos] * &f, "{pair}: tensor rule at i = {i}");
            let (k, ell) = pair.k_ell();
            let sgn = ri(-pair.sign_bracket());
            let lead = if i > k { lin(2, ri(0)) } else { lin(-2, ri(2 * ell as i64)) };
            assert_eq!(gt[pos], &(&lead * &c(sgn)) * &f, "{pair}: restriction rule at i = {i}");
        }
    }
}

#[test]
fn rank_reduction_of_sp4_tensor_module() {
    let pair = PairType::simple(PairTag::CI, 4).unwrap();
    let x = vector_eval_x(4, Family::Symplectic, &rq(1, 2)).unwrap();
    let t = tensor_twisted(&x, &onedim_module(&pair, None).unwrap()).unwrap();
    let hw = highest_weight_extract(&t).unwrap();
    let r = restrict_vplus(&t).unwrap();
    assert_eq!(r.pair, PairType::simple(PairTag::CI, 2).unwrap());
    passes(&r);
    let hr = highest_weight_extract(&r).unwrap();
    let h = rank_reduction_h(&r.pair);
    let half = rq(1, 2);
    let mun = hw.eigenvalues[&2].shift(&half);
    let want = &h * &(&hw.eigenvalues[&1].shift(&half) + &div(&mun, &lin(2, ri(0))));
    assert_eq!(hr.eigenvalues[&1], want);
}

#[test]
fn rank_reduction_of_one_dimensional_modules() {
    for tag in [PairTag::C0, PairTag::D0, PairTag::B0, PairTag::DIII] {
        let big_n = match tag {
            PairTag::B0 => 5,
            PairTag::D0 | PairTag::DIII => 6,
            _ => 4,
        };
        let pair = PairType::simple(tag, big_n).unwrap();
        let r = restrict_vplus(&onedim_module(&pair, None).unwrap()).unwrap();
        assert_eq!(r.dim, 1);
        passes(&r);
    }
}

#[test]
fn reflection_algebra_subspace() {
    let m = eval_so4(So4Variant::DIII, &ri(1), &ri(0)).unwrap();
    let hw = highest_weight_extract(&m).unwrap();
    let (b, reps, f) = restrict_vj(&m).unwrap();
    assert!(b.dim >= 1);
    for r in &reps {
        assert!(r.pass, "{r}");
    }
    assert!(f.is_some());
    // the highest vector lies in Vᴶ
    for i in 1..=2 {
        for j in 1..=2 {
            assert!(m.s(-i, j).apply_rat(&hw.vector).iter().all(|x| *x == RatFunc::zero()));
        }
    }
    let one = onedim_module(&PairType::simple(PairTag::C0, 4).unwrap(), None).unwrap();
    let (_, reps, f) = restrict_vj(&one).unwrap();
    assert!(reps.iter().all(|r| r.pass));
    assert_eq!(f.unwrap(), c(ri(1)));
}

#[test]
fn embedding_brackets_hold() {
    for m in [
        eval_sp2(Sp2Variant::C0, &ri(-2)).unwrap(),
        eval_so3(&ri(-1)).unwrap(),
        eval_so4(So4Variant::DIII, &ri(1), &ri(0)).unwrap(),
    ] {
        let r = verify_twisted(&m).unwrap();
        assert!(r.reports.iter().any(|x| x.identity.contains("embedding") || x.identity.contains("bracket")));
    }
}

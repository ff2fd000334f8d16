use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twyang::exact::{ri, rq, Poly, RatFunc};
use twyang::rk::*;
use twyang::tensor::{Family, IndexSet};

fn timed<T>(what: &str, limit: Duration, f: impl FnOnce() -> T) -> T {
    let t = Instant::now();
    let out = f();
    assert!(t.elapsed() <= limit, "{what} took {:?}", t.elapsed());
    out
}

#[test]
fn yang_baxter_suite() {
    let mut cases: Vec<(usize, RFamily)> = (2..=6).map(|n| (n, RFamily::Gl)).collect();
    cases.extend((3..=6).map(|n| (n, RFamily::G(Family::Orthogonal))));
    cases.extend([2, 4, 6].map(|n| (n, RFamily::G(Family::Symplectic))));
    for (n, fam) in cases {
        let rep = timed(&format!("YBE {fam:?} N={n}"), Duration::from_secs(60), || {
            check_ybe(&build_r(n, fam).unwrap()).unwrap()
        });
        assert!(rep.pass, "{fam:?} N={n}: {rep}");
    }
}

#[test]
fn perturbed_r_matrix_fails_with_witness() {
    let idx = IndexSet::signed(4).unwrap();
    let bad = RStruct::g_with_kappa(idx, Family::Symplectic, &(kappa(4, Family::Symplectic) + rq(1, 7)));
    let rep = check_ybe(&bad.to_matrix().unwrap()).unwrap();
    assert!(!rep.pass);
    assert!(rep.witnesses.iter().any(|w| w.contains("LHS−RHS")), "{rep}");
}

#[test]
fn every_supported_pair_verifies() {
    let pairs = supported_pairs(6);
    for tag in PairTag::ALL {
        assert!(pairs.iter().any(|p| p.tag == tag), "{tag} missing");
    }
    for pair in pairs {
        for rep in verify_kmatrix(&pair).unwrap() {
            assert!(rep.pass, "{pair}: {rep}");
        }
    }
}

#[test]
fn p_identity_is_exact() {
    for pair in supported_pairs(6).into_iter().filter(|p| p.tag != PairTag::AIII) {
        let p = compute_p(&build_g(&pair), &pair).unwrap();
        let kap = pair.kappa();
        let lhs = &p * &p.reflect(&kap);
        let two_u = RatFunc::from_poly(Poly::linear(ri(2), -kap.clone()));
        let rhs = &RatFunc::one() - &(&two_u * &two_u).inv().unwrap();
        assert_eq!(lhs, rhs, "{pair}");
        if matches!(pair.tag, PairTag::B0 | PairTag::D0) {
            assert_eq!(p, p0(&pair), "{pair}");
        }
    }
}

#[test]
fn one_parameter_family() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for tag in [PairTag::CI, PairTag::DIII] {
        for n in [2, 4, 6] {
            let Ok(pair) = PairType::simple(tag, n) else { continue };
            let r = build_r(n, RFamily::G(pair.family())).unwrap();
            for _ in 0..5 {
                let a = rq(rng.gen_range(-30..=30), rng.gen_range(1..=7));
                timed(&format!("{pair} a={a}"), Duration::from_secs(60), || {
                    let k = build_k_oneparam(&pair, &a).unwrap();
                    let re = check_re(&r, &k).unwrap();
                    assert!(re.pass, "{pair}, a = {a}: {re}");
                    for rep in check_symmetry(&k, &pair, Some(&a)).unwrap() {
                        assert!(rep.pass, "{pair}, a = {a}: {rep}");
                    }
                });
            }
        }
    }
    let b0 = PairType::simple(PairTag::B0, 3).unwrap();
    assert!(build_k_oneparam(&b0, &ri(1)).is_err());
}

#[test]
fn invalid_pairs_are_rejected() {
    assert!("DIb".parse::<PairTag>().is_err());
    assert!(PairType::simple(PairTag::D0, 2).is_err());
    assert!(PairType::simple(PairTag::B0, 4).is_err());
    assert!(PairType::new(PairTag::BIa, 5, Some(2), Some(3)).is_err());
    assert!(PairType::new(PairTag::CII, 4, Some(3), Some(1)).is_err());
    assert!(PairType::new(PairTag::CI, 4, Some(2), Some(2)).is_err());
}

use proptest::prelude::*;

use twyang::exact::{rq, Rat};
use twyang::tensor::{kron, op_p, op_q, Family, IndexSet, LabeledMatrix};

fn families(n: usize) -> Vec<Family> {
    if n % 2 == 0 {
        vec![Family::Orthogonal, Family::Symplectic]
    } else {
        vec![Family::Orthogonal]
    }
}

fn random(legs: Vec<IndexSet>, seed: &[i64]) -> LabeledMatrix<Rat> {
    let m = LabeledMatrix::<Rat>::zero(legs.clone());
    let labels = m.labels();
    let pos = |l: &[i32]| labels.iter().position(|x| x == l).unwrap();
    LabeledMatrix::from_fn(legs, |a, b| {
        let k = (pos(a) * 7 + pos(b) * 3) % seed.len();
        rq(seed[k], 1 + (k as i64 % 3))
    })
}

#[test]
fn p_and_q_relations() {
    for n in 2..=6 {
        let idx = IndexSet::signed(n).unwrap();
        let p = op_p::<Rat>(idx);
        let id = LabeledMatrix::<Rat>::identity(vec![idx, idx]);
        assert_eq!(p.mul(&p).unwrap(), id, "P² = I, N = {n}");
        for fam in families(n) {
            let q = op_q::<Rat>(idx, fam).unwrap();
            assert_eq!(q.mul(&q).unwrap(), q.scale(&rq(n as i64, 1)), "Q² = NQ, N = {n}, {fam:?}");
            // P Q = Q P = ±Q
            let s = rq(fam.sign(), 1);
            assert_eq!(p.mul(&q).unwrap(), q.scale(&s));
            assert_eq!(q.mul(&p).unwrap(), q.scale(&s));
        }
    }
    assert!(op_q::<Rat>(IndexSet::signed(3).unwrap(), Family::Symplectic).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn transpose_is_an_involution(n in 2usize..=6, seed in prop::collection::vec(-9i64..=9, 5..40), symp in any::<bool>()) {
        let fam = if symp && n % 2 == 0 { Family::Symplectic } else { Family::Orthogonal };
        let a = random(vec![IndexSet::signed(n).unwrap()], &seed);
        prop_assert_eq!(a.transpose_t(fam).unwrap().transpose_t(fam).unwrap(), a);
    }

    #[test]
    fn transpose_reverses_products(n in 2usize..=5, s1 in prop::collection::vec(-9i64..=9, 5..20), s2 in prop::collection::vec(-9i64..=9, 5..20)) {
        let fam = if n % 2 == 0 { Family::Symplectic } else { Family::Orthogonal };
        let idx = vec![IndexSet::signed(n).unwrap()];
        let (a, b) = (random(idx.clone(), &s1), random(idx, &s2));
        let lhs = a.mul(&b).unwrap().transpose_t(fam).unwrap();
        let rhs = b.transpose_t(fam).unwrap().mul(&a.transpose_t(fam).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kron_is_associative(s1 in prop::collection::vec(-9i64..=9, 3..10), s2 in prop::collection::vec(-9i64..=9, 3..10), s3 in prop::collection::vec(-9i64..=9, 3..10)) {
        let a = random(vec![IndexSet::signed(2).unwrap()], &s1);
        let b = random(vec![IndexSet::signed(3).unwrap()], &s2);
        let c = random(vec![IndexSet::plain(2)], &s3);
        prop_assert_eq!(kron(&kron(&a, &b), &c), kron(&a, &kron(&b, &c)));
    }

    #[test]
    fn partial_transposes_agree_on_symmetric_q_span(n in 2usize..=6, seed in prop::collection::vec(-9i64..=9, 5..30), symp in any::<bool>()) {
        // M = Σ c_ij θ_ij E_ij ⊗ E_{−i,−j} with c_ij = c_{−j,−i}
        let fam = if symp && n % 2 == 0 { Family::Symplectic } else { Family::Orthogonal };
        let idx = IndexSet::signed(n).unwrap();
        let labels = idx.labels();
        let c = |i: i32, j: i32| {
            let (a, b) = if (i, j) <= (-j, -i) { (i, j) } else { (-j, -i) };
            let k = (labels.iter().position(|&x| x == a).unwrap() * 5 + labels.iter().position(|&x| x == b).unwrap()) % seed.len();
            rq(seed[k] * fam.theta(i, j), 1)
        };
        let m = LabeledMatrix::from_fn(vec![idx, idx], |r, s| {
            if r[1] == -r[0] && s[1] == -s[0] { c(r[0], s[0]) } else { rq(0, 1) }
        });
        prop_assert_eq!(m.partial_transpose(1, fam).unwrap(), m.partial_transpose(2, fam).unwrap());
    }
}

#[test]
fn q_transposes_to_p() {
    for n in 2..=6 {
        let idx = IndexSet::signed(n).unwrap();
        for fam in families(n) {
            let q = op_q::<Rat>(idx, fam).unwrap();
            let p = op_p::<Rat>(idx);
            assert_eq!(q.partial_transpose(1, fam).unwrap(), p);
            assert_eq!(q.partial_transpose(2, fam).unwrap(), p);
        }
    }
}

#[test]
fn partial_transposes_differ_off_the_symmetric_span() {
    // E_12 ⊗ E_{−1,−2} alone: its partner coefficient c_{−2,−1} is zero
    let idx = IndexSet::signed(4).unwrap();
    let m = LabeledMatrix::from_fn(vec![idx, idx], |r, s| {
        if r == [1, -1] && s == [2, -2] { rq(1, 1) } else { rq(0, 1) }
    });
    let fam = Family::Orthogonal;
    assert_ne!(m.partial_transpose(1, fam).unwrap(), m.partial_transpose(2, fam).unwrap());
}

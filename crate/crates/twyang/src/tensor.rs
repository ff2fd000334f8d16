//! Signed-index labeled matrices, Kronecker products and the operators
//! `P`, `Q` and the transposes `t±`.

use serde::{Deserialize, Serialize};

use crate::error::TwError;
use crate::exact::{Rat, Ring};

/// Orthogonal (`θ ≡ 1`) or symplectic (`θᵢⱼ = sign(i)·sign(j)`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Family {
    Orthogonal,
    Symplectic,
}

impl Family {
    /// `θᵢⱼ`; index 0 only occurs in the orthogonal case, where θ is 1.
    pub fn theta(self, i: i32, j: i32) -> i64 {
        match self {
            Family::Orthogonal => 1,
            Family::Symplectic => {
                let s = |x: i32| if x < 0 { -1 } else { 1 };
                s(i) * s(j)
            }
        }
    }

    /// `+1` orthogonal, `−1` symplectic (the lower sign of `±`).
    pub fn sign(self) -> i64 {
        match self {
            Family::Orthogonal => 1,
            Family::Symplectic => -1,
        }
    }
}

/// Row/column labels of one tensor leg: `−n, …, −1, (0,) 1, …, n` for the
/// orthogonal and symplectic algebras, or `1, …, N` for the plain `gl_N` labels.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct IndexSet {
    pub n: usize,
    pub includes_zero: bool,
    pub plain: bool,
}

impl IndexSet {
    /// Signed labels for `C^N`; odd `N` includes 0.
    pub fn signed(big_n: usize) -> Result<Self, TwError> {
        if big_n < 2 {
            return Err(TwError::Config(format!("N must be at least 2, got {big_n}")));
        }
        Ok(IndexSet {
            n: big_n / 2,
            includes_zero: big_n % 2 == 1,
            plain: false,
        })
    }

    /// Labels `1..N`.
    pub fn plain(big_n: usize) -> Self {
        IndexSet {
            n: big_n,
            includes_zero: false,
            plain: true,
        }
    }

    pub fn len(&self) -> usize {
        if self.plain {
            self.n
        } else {
            2 * self.n + usize::from(self.includes_zero)
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn labels(&self) -> Vec<i32> {
        let n = self.n as i32;
        if self.plain {
            return (1..=n).collect();
        }
        (-n..=n).filter(|&i| i != 0 || self.includes_zero).collect()
    }

    /// Position of a label in enumeration order.
    pub fn pos(&self, label: i32) -> usize {
        let n = self.n as i32;
        if self.plain {
            assert!((1..=n).contains(&label), "label {label} out of range");
            return (label - 1) as usize;
        }
        assert!(label.abs() <= n && (label != 0 || self.includes_zero), "label {label} out of range");
        if label < 0 {
            (label + n) as usize
        } else if self.includes_zero {
            (label + n) as usize
        } else {
            (label + n - 1) as usize
        }
    }

    pub fn contains(&self, label: i32) -> bool {
        let n = self.n as i32;
        if self.plain {
            (1..=n).contains(&label)
        } else {
            label.abs() <= n && (label != 0 || self.includes_zero)
        }
    }
}

/// Square matrix over `R` whose rows and columns are labeled by tuples of
/// signed indices, one per tensor leg, flattened lexicographically.
#[derive(Clone, PartialEq, Debug)]
pub struct LabeledMatrix<R> {
    legs: Vec<IndexSet>,
    dim: usize,
    data: Vec<R>,
}

impl<R: Ring> LabeledMatrix<R> {
    pub fn zero(legs: Vec<IndexSet>) -> Self {
        let dim = legs.iter().map(|l| l.len()).product();
        LabeledMatrix {
            legs,
            dim,
            data: vec![R::rzero(); dim * dim],
        }
    }

    pub fn identity(legs: Vec<IndexSet>) -> Self {
        let mut m = Self::zero(legs);
        for i in 0..m.dim {
            m.data[i * m.dim + i] = R::rone();
        }
        m
    }

    /// Entry `(row, col)` given by a function of composite labels.
    pub fn from_fn(legs: Vec<IndexSet>, f: impl Fn(&[i32], &[i32]) -> R) -> Self {
        let mut m = Self::zero(legs);
        let labels = m.labels();
        for (a, la) in labels.iter().enumerate() {
            for (b, lb) in labels.iter().enumerate() {
                m.data[a * m.dim + b] = f(la, lb);
            }
        }
        m
    }

    /// Single-leg diagonal matrix.
    pub fn diagonal(idx: IndexSet, f: impl Fn(i32) -> R) -> Self {
        Self::from_fn(vec![idx], |a, b| if a == b { f(a[0]) } else { R::rzero() })
    }

    /// Matrix unit `E_ij` on one leg.
    pub fn unit(idx: IndexSet, i: i32, j: i32) -> Self {
        Self::from_fn(vec![idx], |a, b| {
            if a[0] == i && b[0] == j {
                R::rone()
            } else {
                R::rzero()
            }
        })
    }

    pub fn legs(&self) -> &[IndexSet] {
        &self.legs
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// All composite labels in storage order.
    pub fn labels(&self) -> Vec<Vec<i32>> {
        let mut out: Vec<Vec<i32>> = vec![Vec::new()];
        for leg in &self.legs {
            let ls = leg.labels();
            out = out
                .into_iter()
                .flat_map(|p| {
                    ls.iter().map(move |&l| {
                        let mut q = p.clone();
                        q.push(l);
                        q
                    })
                })
                .collect();
        }
        out
    }

    fn flat(&self, lab: &[i32]) -> usize {
        assert_eq!(lab.len(), self.legs.len(), "label arity mismatch");
        lab.iter()
            .zip(&self.legs)
            .fold(0, |acc, (&l, leg)| acc * leg.len() + leg.pos(l))
    }

    pub fn get(&self, row: &[i32], col: &[i32]) -> &R {
        &self.data[self.flat(row) * self.dim + self.flat(col)]
    }

    pub fn set(&mut self, row: &[i32], col: &[i32], x: R) {
        let k = self.flat(row) * self.dim + self.flat(col);
        self.data[k] = x;
    }

    /// Entry by storage position.
    pub fn at(&self, r: usize, c: usize) -> &R {
        &self.data[r * self.dim + c]
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> LabeledMatrix<S> {
        LabeledMatrix {
            legs: self.legs.clone(),
            dim: self.dim,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.ris_zero())
    }

    fn check_shape(&self, o: &Self) -> Result<(), TwError> {
        if self.legs != o.legs {
            return Err(TwError::Shape("label sets differ".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self, TwError> {
        self.check_shape(o)?;
        Ok(LabeledMatrix {
            legs: self.legs.clone(),
            dim: self.dim,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.plus(b)).collect(),
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self, TwError> {
        self.check_shape(o)?;
        Ok(LabeledMatrix {
            legs: self.legs.clone(),
            dim: self.dim,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.minus(b)).collect(),
        })
    }

    pub fn scale(&self, r: &R) -> Self {
        self.map(|x| if x.ris_zero() { R::rzero() } else { x.times(r) })
    }

    /// Sparse-aware product.
    pub fn mul(&self, o: &Self) -> Result<Self, TwError> {
        self.check_shape(o)?;
        let d = self.dim;
        let nz: Vec<Vec<(usize, &R)>> = (0..d)
            .map(|k| {
                (0..d)
                    .filter_map(|j| {
                        let x = &o.data[k * d + j];
                        (!x.ris_zero()).then_some((j, x))
                    })
                    .collect()
            })
            .collect();
        let mut data = vec![R::rzero(); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = &self.data[i * d + k];
                if a.ris_zero() {
                    continue;
                }
                for &(j, b) in &nz[k] {
                    let t = a.times(b);
                    let slot = &mut data[i * d + j];
                    *slot = if slot.ris_zero() { t } else { slot.plus(&t) };
                }
            }
        }
        Ok(LabeledMatrix {
            legs: self.legs.clone(),
            dim: d,
            data,
        })
    }

    /// Kronecker product; composite labels concatenate.
    pub fn kron(&self, o: &Self) -> Self {
        let mut legs = self.legs.clone();
        legs.extend(o.legs.iter().copied());
        let d = self.dim * o.dim;
        let mut data = vec![R::rzero(); d * d];
        for i in 0..self.dim {
            for j in 0..self.dim {
                let a = &self.data[i * self.dim + j];
                if a.ris_zero() {
                    continue;
                }
                for k in 0..o.dim {
                    for l in 0..o.dim {
                        let b = &o.data[k * o.dim + l];
                        if !b.ris_zero() {
                            data[(i * o.dim + k) * d + j * o.dim + l] = a.times(b);
                        }
                    }
                }
            }
        }
        LabeledMatrix { legs, dim: d, data }
    }

    /// Trace over all labels.
    pub fn trace(&self) -> R {
        (0..self.dim).fold(R::rzero(), |acc, i| acc.plus(&self.data[i * self.dim + i]))
    }

    /// `(Aᵗ)ᵢⱼ = θⱼᵢ A₋ⱼ,₋ᵢ` on a single signed leg.
    pub fn transpose_t(&self, family: Family) -> Result<Self, TwError> {
        if self.legs.len() != 1 || self.legs[0].plain {
            return Err(TwError::Shape("transpose_t needs one signed leg".into()));
        }
        Ok(Self::from_fn(self.legs.clone(), |a, b| {
            let (i, j) = (a[0], b[0]);
            let x = self.get(&[-j], &[-i]);
            if family.theta(j, i) == 1 {
                x.clone()
            } else {
                x.negate()
            }
        }))
    }

    /// Transpose `t` on one leg (1-based) of a two-leg matrix.
    pub fn partial_transpose(&self, leg: usize, family: Family) -> Result<Self, TwError> {
        if self.legs.len() != 2 || self.legs.iter().any(|l| l.plain) {
            return Err(TwError::Shape("partial_transpose needs exactly two signed legs".into()));
        }
        if leg != 1 && leg != 2 {
            return Err(TwError::Shape(format!("leg {leg} out of range")));
        }
        let t = leg - 1;
        Ok(Self::from_fn(self.legs.clone(), |a, b| {
            let (i, j) = (a[t], b[t]);
            let mut ra = a.to_vec();
            let mut rb = b.to_vec();
            ra[t] = -j;
            rb[t] = -i;
            let x = self.get(&ra, &rb);
            if family.theta(j, i) == 1 {
                x.clone()
            } else {
                x.negate()
            }
        }))
    }
}

/// Places `a` (acting on `legs.len()` legs) onto the given 1-based legs of a
/// `total`-leg space, identity elsewhere. Every leg uses `a`'s first label set.
pub fn leg_embed<R: Ring>(a: &LabeledMatrix<R>, legs: &[usize], total: usize) -> Result<LabeledMatrix<R>, TwError> {
    if legs.len() != a.legs.len() || legs.iter().any(|&s| s == 0 || s > total) {
        return Err(TwError::Shape(format!("legs {legs:?} out of range for {total} legs")));
    }
    let mut seen = legs.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != legs.len() {
        return Err(TwError::Shape("repeated leg".into()));
    }
    let idx = a.legs[0];
    let all = vec![idx; total];
    let mut out = LabeledMatrix::zero(all);
    let labels = out.labels();
    let d = out.dim;
    for (r, lr) in labels.iter().enumerate() {
        for (c, lc) in labels.iter().enumerate() {
            let others_equal = (1..=total)
                .filter(|s| !legs.contains(s))
                .all(|s| lr[s - 1] == lc[s - 1]);
            if !others_equal {
                continue;
            }
            let ra: Vec<i32> = legs.iter().map(|&s| lr[s - 1]).collect();
            let ca: Vec<i32> = legs.iter().map(|&s| lc[s - 1]).collect();
            out.data[r * d + c] = a.get(&ra, &ca).clone();
        }
    }
    Ok(out)
}

pub fn kron<R: Ring>(a: &LabeledMatrix<R>, b: &LabeledMatrix<R>) -> LabeledMatrix<R> {
    a.kron(b)
}

/// `P = Σ Eᵢⱼ ⊗ Eⱼᵢ` on two copies of `idx`.
pub fn op_p<R: Ring>(idx: IndexSet) -> LabeledMatrix<R> {
    LabeledMatrix::from_fn(vec![idx, idx], |a, b| {
        if a[0] == b[1] && a[1] == b[0] {
            R::rone()
        } else {
            R::rzero()
        }
    })
}

/// `Q = Σ θᵢⱼ Eᵢⱼ ⊗ E₋ᵢ,₋ⱼ`. Symplectic requires even `N`.
pub fn op_q<R: Ring>(idx: IndexSet, family: Family) -> Result<LabeledMatrix<R>, TwError> {
    if idx.plain {
        return Err(TwError::Shape("Q needs signed labels".into()));
    }
    if family == Family::Symplectic && idx.includes_zero {
        return Err(TwError::Config("symplectic family needs even N".into()));
    }
    Ok(LabeledMatrix::from_fn(vec![idx, idx], |a, b| {
        let (i, j) = (a[0], b[0]);
        if a[1] == -i && b[1] == -j {
            R::from_rat(&Rat::from_integer(family.theta(i, j).into()))
        } else {
            R::rzero()
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ri;

    type M = LabeledMatrix<Rat>;

    #[test]
    fn index_order() {
        assert_eq!(IndexSet::signed(5).unwrap().labels(), vec![-2, -1, 0, 1, 2]);
        assert_eq!(IndexSet::signed(4).unwrap().labels(), vec![-2, -1, 1, 2]);
        let s = IndexSet::signed(4).unwrap();
        for (k, l) in s.labels().into_iter().enumerate() {
            assert_eq!(s.pos(l), k);
        }
    }

    #[test]
    fn swap_matrix_n2() {
        let idx = IndexSet::plain(2);
        let p: M = op_p(idx);
        // e_a ⊗ e_b ↦ e_b ⊗ e_a on the four basis vectors
        for a in 1..=2 {
            for b in 1..=2 {
                for c in 1..=2 {
                    for d in 1..=2 {
                        let want = if (c, d) == (b, a) { ri(1) } else { ri(0) };
                        assert_eq!(p.get(&[c, d], &[a, b]), &want);
                    }
                }
            }
        }
        let e11: M = LabeledMatrix::unit(idx, 1, 1);
        let e22: M = LabeledMatrix::unit(idx, 2, 2);
        let k = e11.kron(&e22);
        assert_eq!(k.get(&[1, 2], &[1, 2]), &ri(1));
        assert_eq!(k.data.iter().filter(|x| !x.ris_zero()).count(), 1);
    }

    #[test]
    fn pq_relations() {
        let idx = IndexSet::signed(3).unwrap();
        let p: M = op_p(idx);
        let q: M = op_q(idx, Family::Orthogonal).unwrap();
        assert_eq!(p.mul(&p).unwrap(), LabeledMatrix::identity(vec![idx, idx]));
        assert_eq!(p.mul(&q).unwrap(), q);
        let idx2 = IndexSet::signed(2).unwrap();
        let p2: M = op_p(idx2);
        let q2: M = op_q(idx2, Family::Symplectic).unwrap();
        assert_eq!(p2.mul(&q2).unwrap(), q2.scale(&ri(-1)));
        assert!(op_q::<Rat>(idx, Family::Symplectic).is_err());
    }

    #[test]
    fn transpose_examples() {
        let idx = IndexSet::signed(2).unwrap();
        let e: M = LabeledMatrix::unit(idx, 1, -1);
        assert_eq!(e.transpose_t(Family::Symplectic).unwrap(), e.scale(&ri(-1)));
        let i: M = LabeledMatrix::identity(vec![idx]);
        assert_eq!(i.transpose_t(Family::Symplectic).unwrap(), i);
    }

    #[test]
    fn p_partial_transpose_is_q() {
        for (n, fam) in [(3, Family::Orthogonal), (4, Family::Symplectic)] {
            let idx = IndexSet::signed(n).unwrap();
            let p: M = op_p(idx);
            let q = op_q(idx, fam).unwrap();
            assert_eq!(p.partial_transpose(1, fam).unwrap(), q);
            assert_eq!(p.partial_transpose(2, fam).unwrap(), q);
        }
    }

    #[test]
    fn leg_embedding() {
        let idx = IndexSet::signed(2).unwrap();
        let p: M = op_p(idx);
        let i: M = LabeledMatrix::identity(vec![idx]);
        assert_eq!(leg_embed(&p, &[1, 2], 3).unwrap(), p.kron(&i));
        assert_eq!(leg_embed(&i, &[1], 1).unwrap(), i);
        // P13 = P23 P12 P23
        let p12 = leg_embed(&p, &[1, 2], 3).unwrap();
        let p23 = leg_embed(&p, &[2, 3], 3).unwrap();
        let p13 = leg_embed(&p, &[1, 3], 3).unwrap();
        assert_eq!(p23.mul(&p12).unwrap().mul(&p23).unwrap(), p13);
        assert!(leg_embed(&p, &[1, 4], 3).is_err());
    }
}

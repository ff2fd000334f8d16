//! Concrete modules over `X(g_N, G)^tw`, Olshanskii's `Y±(2)` and `X(g_N)`,
//! together with the exact verification of their defining relations.

use std::collections::HashMap;
use std::fmt;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::TwError;
use crate::exact::{ri, rq, Mat, Poly, Rat, RatFunc};
use crate::reps::engine::{check_reflection, Aux, RCoeffs};
use crate::reps::opmat::OpMat;
use crate::rk::{IdentityReport, PairTag, PairType, MAX_WITNESSES};
use crate::tensor::{Family, IndexSet};

/// A finite-dimensional module over the extended twisted Yangian
/// `X(g_N, G)^tw`, stored as the operators `s_ij(u)` on `ℂᵈ`.
#[derive(Clone, PartialEq, Debug)]
pub struct TwistedModule {
    pub pair: PairType,
    pub dim: usize,
    s: Vec<OpMat>,
    pub note: String,
}

impl TwistedModule {
    pub fn from_fn(pair: PairType, dim: usize, note: impl Into<String>, f: impl Fn(i32, i32) -> OpMat) -> Self {
        let labels = pair.index_set().labels();
        let mut s = Vec::with_capacity(labels.len() * labels.len());
        for &i in &labels {
            for &j in &labels {
                let m = f(i, j);
                assert_eq!(m.dim(), dim, "operator s_{i},{j} has the wrong size");
                s.push(m);
            }
        }
        TwistedModule { pair, dim, s, note: note.into() }
    }

    pub fn labels(&self) -> Vec<i32> {
        self.pair.index_set().labels()
    }

    fn idx(&self, i: i32, j: i32) -> usize {
        let is = self.pair.index_set();
        is.pos(i) * is.len() + is.pos(j)
    }

    /// The operator `s_ij(u)`.
    pub fn s(&self, i: i32, j: i32) -> &OpMat {
        &self.s[self.idx(i, j)]
    }

    pub fn set_s(&mut self, i: i32, j: i32, m: OpMat) {
        let k = self.idx(i, j);
        self.s[k] = m;
    }

    pub(crate) fn all_s(&self) -> &[OpMat] {
        &self.s
    }
}

impl fmt::Display for TwistedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "module over {} of dimension {}", self.pair, self.dim)?;
        if !self.note.is_empty() {
            write!(f, " [{}]", self.note)?;
        }
        Ok(())
    }
}

/// A module over Olshanskii's twisted Yangian `Y⁺(2)` (`sign = +1`,
/// orthogonal) or `Y⁻(2)` (`sign = −1`, symplectic), labels `±1`.
#[derive(Clone, PartialEq, Debug)]
pub struct OlshanskiiModule {
    pub sign: i64,
    pub dim: usize,
    /// `s°_ij` for `(i, j)` in the order `(−1,−1), (−1,1), (1,−1), (1,1)`.
    s: Vec<OpMat>,
}

impl OlshanskiiModule {
    pub fn from_fn(sign: i64, dim: usize, f: impl Fn(i32, i32) -> OpMat) -> Self {
        let s = [(-1, -1), (-1, 1), (1, -1), (1, 1)].iter().map(|&(i, j)| f(i, j)).collect();
        OlshanskiiModule { sign, dim, s }
    }

    pub fn family(&self) -> Family {
        if self.sign > 0 {
            Family::Orthogonal
        } else {
            Family::Symplectic
        }
    }

    pub fn s(&self, i: i32, j: i32) -> &OpMat {
        let k = ((i + 1) + (j + 1) / 2) as usize;
        &self.s[k]
    }
}

/// A module over the extended Yangian `X(g_N)` given by `t_ij(u)`.
#[derive(Clone, PartialEq, Debug)]
pub struct XModule {
    pub big_n: usize,
    pub family: Family,
    pub dim: usize,
    t: Vec<OpMat>,
}

impl XModule {
    pub fn from_fn(big_n: usize, family: Family, dim: usize, f: impl Fn(i32, i32) -> OpMat) -> Result<Self, TwError> {
        let labels = IndexSet::signed(big_n)?.labels();
        let t = labels.iter().flat_map(|&i| labels.iter().map(move |&j| (i, j))).map(|(i, j)| f(i, j)).collect();
        Ok(XModule { big_n, family, dim, t })
    }

    pub fn index_set(&self) -> IndexSet {
        IndexSet::signed(self.big_n).expect("validated N")
    }

    pub fn t(&self, i: i32, j: i32) -> &OpMat {
        let is = self.index_set();
        &self.t[is.pos(i) * is.len() + is.pos(j)]
    }

    pub fn kappa(&self) -> Rat {
        crate::rk::kappa(self.big_n, self.family)
    }
}

/// Result of [`verify_twisted`]: one report per relation and the scalar
/// `w(u)` when `S(u)S(−u)` is scalar.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleReport {
    pub reports: Vec<IdentityReport>,
    #[serde(skip)]
    pub w: Option<RatFunc>,
}

impl ModuleReport {
    pub fn pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }
}

impl fmt::Display for ModuleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.reports {
            writeln!(f, "{r}")?;
        }
        if let Some(w) = &self.w {
            writeln!(f, "w(u) = {w}")?;
        }
        Ok(())
    }
}

fn lin(a: i64, b: Rat) -> Poly {
    Poly::linear(ri(a), b)
}

/// Cleared coefficients of `R(u) = I − P/u + Q/(u−κ)` times `u(u−κ)`.
fn r_g_cleared(kappa: &Rat) -> (Poly, Poly, Poly) {
    let u = Poly::u();
    let umk = lin(1, -kappa.clone());
    (&u * &umk, umk.scale(&-Rat::one()), u)
}

fn op_diffs(name: &str, pairs: Vec<(String, OpMat, OpMat)>) -> IdentityReport {
    let mut w = Vec::new();
    for (label, a, b) in pairs {
        if a != b {
            let dm = a.sub(&b);
            let (r, c) = (0..dm.dim() * dm.dim())
                .map(|k| (k / dm.dim(), k % dm.dim()))
                .find(|&(r, c)| !dm.get(r, c).is_zero())
                .unwrap_or((0, 0));
            w.push(format!("{label}, module entry ({r},{c}): LHS−RHS = {}", dm.get(r, c)));
            if w.len() >= MAX_WITNESSES {
                break;
            }
        }
    }
    IdentityReport::new(name, w)
}

/// The reflection relation `R(u−v)S₁(u)R(u+v)S₂(v) = S₂(v)R(u+v)S₁(u)R(u−v)`.
pub fn check_ss(m: &TwistedModule) -> IdentityReport {
    let pair = &m.pair;
    let labels = m.labels();
    let kap = pair.kappa();
    let (a, b, c) = r_g_cleared(&kap);
    let r1 = RCoeffs::at(&a, &b, &c, -1);
    let r2 = RCoeffs::at(&a, &b, &c, 1);
    let aux = Aux { labels: &labels, theta: Some(pair.family()) };
    check_reflection("reflection relation [s,s]", &aux, m.all_s(), &r1, &r2)
}

/// The symmetry relation `θ_ij s_{−j,−i}(u) = (±)s_ij(κ−u) ± (s_ij(u) − s_ij(κ−u))/(2u−κ)
/// + (Tr G(u)·s_ij(κ−u) − δ_ij Σ_k s_kk(u))/(2u−2κ)`.
pub fn check_sym(m: &TwistedModule) -> IdentityReport {
    let pair = &m.pair;
    let fam = pair.family();
    let kap = pair.kappa();
    let labels = m.labels();
    let tr = labels.iter().fold(RatFunc::zero(), |acc, &i| &acc + &pair.g_entry(i));
    let x = RatFunc::new(Poly::one(), lin(2, -kap.clone()));
    let y = RatFunc::new(Poly::one(), lin(2, -(ri(2) * &kap)));
    let pm = ri(pair.sign_pm());
    let paren = ri(pair.sign_paren());
    let trace_s = labels.iter().fold(OpMat::zero(m.dim), |acc, &k| acc.add(m.s(k, k)));
    let mut items = Vec::new();
    for &i in &labels {
        for &j in &labels {
            let lhs = m.s(-j, -i).scale_rat(&ri(fam.theta(i, j)));
            let sij = m.s(i, j);
            let sr = sij.reflect(&kap);
            let mut rhs = sr.scale_rat(&paren);
            rhs = rhs.add(&sij.sub(&sr).scale(&x.scale(&pm)));
            let mut last = sr.scale(&tr);
            if i == j {
                last = last.sub(&trace_s);
            }
            rhs = rhs.add(&last.scale(&y));
            items.push((format!("(i,j) = ({i},{j})"), lhs, rhs));
        }
    }
    op_diffs("symmetry relation s=s", items)
}

/// `S(u)S(−u) = w(u)·I`; returns the report and `w(u)` when scalar.
pub fn check_w(m: &TwistedModule) -> (IdentityReport, Option<RatFunc>) {
    let labels = m.labels();
    let zero = Rat::zero();
    let neg: HashMap<(i32, i32), OpMat> =
        labels.iter().flat_map(|&i| labels.iter().map(move |&j| (i, j))).map(|(i, j)| ((i, j), m.s(i, j).reflect(&zero))).collect();
    let mut prod = HashMap::new();
    for &i in &labels {
        for &j in &labels {
            let mut acc = OpMat::zero(m.dim);
            for &k in &labels {
                let a = m.s(i, k);
                let b = &neg[&(k, j)];
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            prod.insert((i, j), acc);
        }
    }
    let i0 = labels[0];
    let w = prod[&(i0, i0)].as_scalar();
    let mut items = Vec::new();
    let target = w.clone().unwrap_or_else(RatFunc::zero);
    for &i in &labels {
        for &j in &labels {
            let want = if i == j { OpMat::scalar(m.dim, &target) } else { OpMat::zero(m.dim) };
            items.push((format!("(S(u)S(−u))_({i},{j})"), prod[&(i, j)].clone(), want));
        }
    }
    let mut rep = op_diffs("S(u)S(−u) is scalar", items);
    if w.is_none() && rep.pass {
        rep = IdentityReport::new("S(u)S(−u) is scalar", vec!["diagonal block is not scalar".into()]);
    }
    let w = if rep.pass { w } else { None };
    (rep, w)
}

/// `ḡ_ii`: zero for the first kind, `(g_ii − 1)/c` for the second kind.
fn g_bar(pair: &PairType, i: i32) -> Rat {
    match pair.c() {
        Some(c) => (ri(pair.g_const(i)) - Rat::one()) / c,
        None => Rat::zero(),
    }
}

/// The operators `s⁽¹⁾_ij − ḡ_ij` satisfy
/// `[F′_ij, s_kl(v)] = (g_ii+g_jj)(δ_kj s_il − δ_il s_kj − δ_{k,−i}θ_ij s_{−j,l} + δ_{l,−j}θ_ij s_{k,−i})`.
pub fn check_embedding(m: &TwistedModule) -> Result<IdentityReport, TwError> {
    let pair = &m.pair;
    let fam = pair.family();
    let labels = m.labels();
    let has = |x: i32| labels.contains(&x);
    let mut items = Vec::new();
    for &i in &labels {
        for &j in &labels {
            let mut x = m.s(i, j).series_coeff(1)?;
            if i == j {
                x = &x - &Mat::scalar(m.dim, &g_bar(pair, i));
            }
            let xo = OpMat::from_mat(&x);
            let gij = ri(pair.g_const(i) + pair.g_const(j));
            let th = ri(fam.theta(i, j));
            for &k in &labels {
                for &l in &labels {
                    let skl = m.s(k, l);
                    let lhs = xo.mul(skl).sub(&skl.mul(&xo));
                    let mut rhs = OpMat::zero(m.dim);
                    if k == j {
                        rhs = rhs.add(m.s(i, l));
                    }
                    if i == l {
                        rhs = rhs.sub(m.s(k, j));
                    }
                    if k == -i && has(-j) {
                        rhs = rhs.sub(&m.s(-j, l).scale_rat(&th));
                    }
                    if l == -j && has(-i) {
                        rhs = rhs.add(&m.s(k, -i).scale_rat(&th));
                    }
                    items.push((format!("[F′_({i},{j}), s_({k},{l})]"), lhs, rhs.scale_rat(&gij)));
                }
            }
        }
    }
    Ok(op_diffs("embedding brackets", items))
}

/// Exact verification of all defining relations on a module.
pub fn verify_twisted(m: &TwistedModule) -> Result<ModuleReport, TwError> {
    if m.pair.tag == PairTag::AIII {
        return Err(TwError::Config("type A pairs are not twisted Yangians of type B-C-D".into()));
    }
    let mut reports = vec![check_ss(m), check_sym(m)];
    let (wr, w) = check_w(m);
    reports.push(wr);
    reports.push(check_embedding(m)?);
    Ok(ModuleReport { reports, w })
}

/// `[s,s]-Ols` and `Sym-Ols` on an Olshanskii module.
pub fn verify_olshanskii(m: &OlshanskiiModule) -> Vec<IdentityReport> {
    let labels = [-1, 1];
    let s: Vec<OpMat> = labels.iter().flat_map(|&i| labels.iter().map(move |&j| (i, j))).map(|(i, j)| m.s(i, j).clone()).collect();
    let u = Poly::u();
    // R(u) = I − P/u cleared by u;  Rᵗ(−u) = I + Q/u cleared by u
    let r1 = RCoeffs::at(&u, &Poly::constant(-Rat::one()), &Poly::zero(), -1);
    let r2 = RCoeffs::at(&u, &Poly::zero(), &Poly::one(), 1);
    let aux = Aux { labels: &labels, theta: Some(m.family()) };
    let rel = check_reflection("twisted reflection relation [s,s]-Ols", &aux, &s, &r1, &r2);
    // Sᵗ(u) = S(−u) ± (S(u) − S(−u))/(2u)
    let fam = m.family();
    let x = RatFunc::new(Poly::constant(ri(m.sign)), Poly::from_ints(&[0, 2]));
    let mut items = Vec::new();
    for &i in &labels {
        for &j in &labels {
            let lhs = m.s(-j, -i).scale_rat(&ri(fam.theta(i, j)));
            let sm = m.s(i, j).reflect(&Rat::zero());
            let rhs = sm.add(&m.s(i, j).sub(&sm).scale(&x));
            items.push((format!("(i,j) = ({i},{j})"), lhs, rhs));
        }
    }
    vec![rel, op_diffs("symmetry Sym-Ols", items)]
}

/// Both expressions of the Sklyanin determinant of `S°(u)`; the report
/// checks that they agree and are scalar.
pub fn olshanskii_sdet2(m: &OlshanskiiModule) -> (IdentityReport, Option<RatFunc>) {
    let sg = ri(m.sign);
    // (2u+1)/(2u±1)
    let pre = RatFunc::new(Poly::linear(ri(2), ri(1)), Poly::linear(ri(2), sg.clone()));
    let one = Rat::one();
    let at_um1 = |i, j| m.s(i, j).shift(&-one.clone());
    let at_neg = |i, j| m.s(i, j).reflect(&Rat::zero());
    // ∓: subtract for Y⁺, add for Y⁻
    let mp = -sg;
    let first = at_um1(-1, -1).mul(&at_neg(-1, -1)).add(&at_um1(-1, 1).mul(&at_neg(1, -1)).scale_rat(&mp)).scale(&pre);
    let second = at_neg(1, 1).mul(&at_um1(1, 1)).add(&at_neg(1, -1).mul(&at_um1(-1, 1)).scale_rat(&mp)).scale(&pre);
    let mut rep = op_diffs("Sklyanin determinant: both expressions agree", vec![("sdet".into(), first.clone(), second)]);
    let sc = first.as_scalar();
    if rep.pass && sc.is_none() {
        rep = IdentityReport::new(rep.identity.clone(), vec!["sdet S°(u) is not a scalar operator".into()]);
    }
    (rep.with_note("scalar check included"), sc)
}

/// The RTT relation `R(u−v)T₁(u)T₂(v) = T₂(v)T₁(u)R(u−v)`.
pub fn verify_x(m: &XModule) -> IdentityReport {
    let labels = m.index_set().labels();
    let (a, b, c) = r_g_cleared(&m.kappa());
    let r1 = RCoeffs::at(&a, &b, &c, -1);
    let r2 = RCoeffs::at(&Poly::one(), &Poly::zero(), &Poly::zero(), 1);
    let s: Vec<OpMat> = labels.iter().flat_map(|&i| labels.iter().map(move |&j| (i, j))).map(|(i, j)| m.t(i, j).clone()).collect();
    let aux = Aux { labels: &labels, theta: Some(m.family) };
    check_reflection("RTT relation", &aux, &s, &r1, &r2)
}

/// `½`, used by several constructors.
pub(crate) fn half() -> Rat {
    rq(1, 2)
}

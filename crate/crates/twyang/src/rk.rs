//! R-matrices, G/K-matrices, the scalar `p(u)`, and exact checks of the
//! Yang–Baxter, reflection, twisted reflection, unitarity and symmetry
//! identities.

use std::fmt;
use std::str::FromStr;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::TwError;
use crate::exact::{ri, rq, BiPoly, Poly, Rat, RatFunc};
use crate::tensor::{leg_embed, op_p, op_q, Family, IndexSet, LabeledMatrix};

/// Symmetric-pair tags. `DIb` is not representable: the non-diagonal
/// `G` of that type is outside this library.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum PairTag {
    B0,
    C0,
    D0,
    CI,
    DIII,
    BIa,
    BIb,
    CII,
    DIa,
    AIII,
}

impl PairTag {
    pub const ALL: [PairTag; 10] = [
        PairTag::B0,
        PairTag::C0,
        PairTag::D0,
        PairTag::CI,
        PairTag::DIII,
        PairTag::BIa,
        PairTag::BIb,
        PairTag::CII,
        PairTag::DIa,
        PairTag::AIII,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PairTag::B0 => "B0",
            PairTag::C0 => "C0",
            PairTag::D0 => "D0",
            PairTag::CI => "CI",
            PairTag::DIII => "DIII",
            PairTag::BIa => "BIa",
            PairTag::BIb => "BIb",
            PairTag::CII => "CII",
            PairTag::DIa => "DIa",
            PairTag::AIII => "AIII",
        }
    }

    pub fn is_bcd0(self) -> bool {
        matches!(self, PairTag::B0 | PairTag::C0 | PairTag::D0)
    }

    /// BDI/CII pairs (`p, q > 0`).
    pub fn is_mixed(self) -> bool {
        matches!(self, PairTag::BIa | PairTag::BIb | PairTag::CII | PairTag::DIa)
    }
}

impl fmt::Display for PairTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PairTag {
    type Err = TwError;
    fn from_str(s: &str) -> Result<Self, TwError> {
        let t = s.trim();
        let norm: String = t.chars().filter(|c| !matches!(c, '(' | ')' | '_' | ' ')).collect();
        match norm.to_ascii_uppercase().as_str() {
            "B0" => Ok(PairTag::B0),
            "C0" => Ok(PairTag::C0),
            "D0" => Ok(PairTag::D0),
            "CI" => Ok(PairTag::CI),
            "DIII" => Ok(PairTag::DIII),
            "BIA" => Ok(PairTag::BIa),
            "BIB" => Ok(PairTag::BIb),
            "CII" => Ok(PairTag::CII),
            "DIA" => Ok(PairTag::DIa),
            "AIII" => Ok(PairTag::AIII),
            "DIB" => Err(TwError::Unsupported(
                "type DI(b) is excluded: its G cannot be chosen diagonal".into(),
            )),
            _ => Err(TwError::Config(format!("unknown pair type {t:?}"))),
        }
    }
}

/// A symmetric pair together with `N` (and `p`, `q` where they apply).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct PairType {
    pub tag: PairTag,
    #[serde(rename = "N")]
    pub big_n: usize,
    pub p: usize,
    pub q: usize,
}

impl PairType {
    /// Validates parity and `(p, q)` constraints. For BCD0, CI, DIII the
    /// arguments `p`, `q` must be absent.
    pub fn new(tag: PairTag, big_n: usize, p: Option<usize>, q: Option<usize>) -> Result<Self, TwError> {
        let cfg = |m: String| Err(TwError::Config(m));
        let odd = big_n % 2 == 1;
        match tag {
            PairTag::B0 | PairTag::C0 | PairTag::D0 | PairTag::CI | PairTag::DIII => {
                if p.is_some() || q.is_some() {
                    return cfg(format!("{tag} takes no p, q"));
                }
                let ok = match tag {
                    PairTag::B0 => odd && big_n >= 3,
                    PairTag::C0 | PairTag::CI => !odd && big_n >= 2,
                    _ => !odd && big_n >= 4,
                };
                if !ok {
                    return cfg(format!("N = {big_n} is not valid for {tag}"));
                }
                Ok(PairType { tag, big_n, p: big_n, q: 0 })
            }
            PairTag::AIII => {
                let (Some(p), Some(q)) = (p, q) else {
                    return cfg("AIII needs p and q".into());
                };
                if p + q != big_n || big_n < 1 {
                    return cfg(format!("AIII needs p + q = N, got {p} + {q} != {big_n}"));
                }
                Ok(PairType { tag, big_n, p, q })
            }
            _ => {
                let (Some(p), Some(q)) = (p, q) else {
                    return cfg(format!("{tag} needs p and q"));
                };
                if p + q != big_n || q == 0 || p < q {
                    return cfg(format!("{tag} needs p >= q > 0 and p + q = N, got p = {p}, q = {q}, N = {big_n}"));
                }
                let ok = match tag {
                    PairTag::BIa => odd && p % 2 == 1 && q % 2 == 0,
                    PairTag::BIb => odd && p % 2 == 0 && q % 2 == 1,
                    _ => !odd && p % 2 == 0 && q % 2 == 0,
                };
                if !ok {
                    return cfg(format!("parity of (N, p, q) = ({big_n}, {p}, {q}) does not match {tag}"));
                }
                Ok(PairType { tag, big_n, p, q })
            }
        }
    }

    /// Re-runs the constructor checks, e.g. on a deserialized value.
    pub fn validated(self) -> Result<Self, TwError> {
        let pq = !(self.tag.is_bcd0() || matches!(self.tag, PairTag::CI | PairTag::DIII));
        let (p, q) = if pq { (Some(self.p), Some(self.q)) } else { (None, None) };
        let v = PairType::new(self.tag, self.big_n, p, q)?;
        if v != self {
            return Err(TwError::Config(format!("inconsistent pair data {self:?}")));
        }
        Ok(v)
    }

    /// Convenience constructor for pairs without `p, q`.
    pub fn simple(tag: PairTag, big_n: usize) -> Result<Self, TwError> {
        PairType::new(tag, big_n, None, None)
    }

    pub fn family(&self) -> Family {
        match self.tag {
            PairTag::C0 | PairTag::CI | PairTag::CII => Family::Symplectic,
            _ => Family::Orthogonal,
        }
    }

    pub fn n(&self) -> usize {
        self.big_n / 2
    }

    pub fn index_set(&self) -> IndexSet {
        if self.tag == PairTag::AIII {
            IndexSet::plain(self.big_n)
        } else {
            IndexSet::signed(self.big_n).expect("validated N")
        }
    }

    /// `κ = N/2 ∓ 1`, upper sign orthogonal.
    pub fn kappa(&self) -> Rat {
        kappa(self.big_n, self.family())
    }

    /// The sign `(±)`: `−1` exactly for CI and DIII.
    pub fn sign_paren(&self) -> i64 {
        if matches!(self.tag, PairTag::CI | PairTag::DIII) {
            -1
        } else {
            1
        }
    }

    /// The sign `±`: `−1` exactly for symplectic.
    pub fn sign_pm(&self) -> i64 {
        self.family().sign()
    }

    /// The sign `[±]`: `−1` exactly for BI(b).
    pub fn sign_bracket(&self) -> i64 {
        if self.tag == PairTag::BIb {
            -1
        } else {
            1
        }
    }

    pub fn is_second_kind(&self) -> bool {
        self.tag.is_mixed() && self.p > self.q
    }

    /// `c = 4/(p − q)` for the second kind.
    pub fn c(&self) -> Option<Rat> {
        self.is_second_kind()
            .then(|| rq(4, (self.p - self.q) as i64))
    }

    /// Constant diagonal entry `gᵢᵢ` of `G` (the value of `G(u)` at infinity).
    pub fn g_const(&self, i: i32) -> i64 {
        let a = i.unsigned_abs() as usize;
        match self.tag {
            PairTag::B0 | PairTag::C0 | PairTag::D0 => 1,
            PairTag::CI | PairTag::DIII => {
                if i > 0 {
                    1
                } else {
                    -1
                }
            }
            PairTag::BIa => {
                if a <= (self.p - 1) / 2 {
                    1
                } else {
                    -1
                }
            }
            PairTag::BIb => {
                if a <= (self.q - 1) / 2 {
                    -1
                } else {
                    1
                }
            }
            PairTag::CII | PairTag::DIa => {
                if a <= self.p / 2 {
                    1
                } else {
                    -1
                }
            }
            PairTag::AIII => {
                if (i as usize) <= self.p {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// Diagonal entry `gᵢᵢ(u)` of `G(u)`.
    pub fn g_entry(&self, i: i32) -> RatFunc {
        let g = ri(self.g_const(i));
        match self.c() {
            None => RatFunc::constant(g),
            Some(c) => {
                // (1 − c·u·g)/(1 − c·u)
                let num = Poly::linear(-(&c * &g), Rat::one());
                let den = Poly::linear(-c, Rat::one());
                RatFunc::new(num, den)
            }
        }
    }

    /// `I_N`: `0..=n` for type B, `1..=n` otherwise (labels `1..=N` for AIII).
    pub fn weight_indices(&self) -> Vec<i32> {
        let n = self.n() as i32;
        if self.tag == PairTag::AIII {
            return (1..=self.big_n as i32).collect();
        }
        if self.big_n % 2 == 1 {
            (0..=n).collect()
        } else {
            (1..=n).collect()
        }
    }

    /// `k`: `n` when all `gᵢᵢ` (`i ∈ I_N`) are 1, otherwise the index where
    /// the sequence changes value. Returns `(k, ℓ = n − k)`.
    pub fn k_ell(&self) -> (i32, i32) {
        let n = self.n() as i32;
        let idx = self.weight_indices();
        if idx.iter().all(|&i| self.g_const(i) == 1) {
            return (n, 0);
        }
        let k = idx
            .windows(2)
            .find(|w| self.g_const(w[0]) != self.g_const(w[1]))
            .map(|w| w[0])
            .unwrap_or(n);
        (k, n - k)
    }

    /// `g(u)` of the type-B normalization: 1 for B0, and
    /// `(1 [±] c(ℓ − u))/(1 − c·u)` for BI with `ℓ = p/2` (BI(b)) or `q/2` (BI(a)).
    pub fn g_scalar(&self) -> Option<RatFunc> {
        match self.tag {
            PairTag::B0 => Some(RatFunc::one()),
            PairTag::BIa | PairTag::BIb => {
                let c = self.c()?;
                let ell = if self.tag == PairTag::BIb {
                    rq(self.p as i64, 2)
                } else {
                    rq(self.q as i64, 2)
                };
                let s = ri(self.sign_bracket());
                // 1 + s·c·ℓ − s·c·u
                let num = Poly::linear(-(&s * &c), Rat::one() + &s * &c * &ell);
                let den = Poly::linear(-c, Rat::one());
                Some(RatFunc::new(num, den))
            }
            _ => None,
        }
    }
}

impl fmt::Display for PairType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tag.is_mixed() || self.tag == PairTag::AIII {
            write!(f, "{} (N={}, p={}, q={})", self.tag, self.big_n, self.p, self.q)
        } else {
            write!(f, "{} (N={})", self.tag, self.big_n)
        }
    }
}

/// `κ = N/2 − 1` (orthogonal) or `N/2 + 1` (symplectic).
pub fn kappa(big_n: usize, family: Family) -> Rat {
    rq(big_n as i64, 2) - ri(family.sign())
}

/// Which R-matrix: Yang's `I − P/u`, or `I − P/u + Q/(u − κ)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum RFamily {
    Gl,
    G(Family),
}

/// `R(u) = (a(u)·I + b(u)·P + c(u)·Q)/den(u)` with polynomial coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct RStruct {
    pub idx: IndexSet,
    pub family: Family,
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
    pub den: Poly,
}

impl RStruct {
    /// Yang's R-matrix on the given labels.
    pub fn gl(idx: IndexSet) -> Self {
        RStruct {
            idx,
            family: Family::Orthogonal,
            a: Poly::u(),
            b: Poly::constant(-Rat::one()),
            c: Poly::zero(),
            den: Poly::u(),
        }
    }

    /// `I − P/u + Q/(u − κ)` with an arbitrary `κ` (perturbations allowed).
    pub fn g_with_kappa(idx: IndexSet, family: Family, kappa: &Rat) -> Self {
        let uk = Poly::linear(Rat::one(), -kappa.clone());
        RStruct {
            idx,
            family,
            a: &Poly::u() * &uk,
            b: -&uk,
            c: Poly::u(),
            den: &Poly::u() * &uk,
        }
    }

    pub fn to_matrix(&self) -> Result<LabeledMatrix<RatFunc>, TwError> {
        let legs = vec![self.idx, self.idx];
        let inv = RatFunc::new(Poly::one(), self.den.clone());
        let a = &RatFunc::from_poly(self.a.clone()) * &inv;
        let b = &RatFunc::from_poly(self.b.clone()) * &inv;
        let mut m = LabeledMatrix::<RatFunc>::identity(legs).scale(&a);
        m = m.add(&op_p::<RatFunc>(self.idx).scale(&b))?;
        if !self.c.is_zero() {
            let c = &RatFunc::from_poly(self.c.clone()) * &inv;
            m = m.add(&op_q::<RatFunc>(self.idx, self.family)?.scale(&c))?;
        }
        Ok(m)
    }
}

/// `R(u)` for `gl_N` (plain labels) or `g_N` (signed labels).
pub fn build_r(big_n: usize, family: RFamily) -> Result<LabeledMatrix<RatFunc>, TwError> {
    build_r_struct(big_n, family)?.to_matrix()
}

pub fn build_r_struct(big_n: usize, family: RFamily) -> Result<RStruct, TwError> {
    if big_n < 2 {
        return Err(TwError::Config(format!("N must be at least 2, got {big_n}")));
    }
    match family {
        RFamily::Gl => Ok(RStruct::gl(IndexSet::plain(big_n))),
        RFamily::G(fam) => {
            if fam == Family::Symplectic && big_n % 2 == 1 {
                return Err(TwError::Config("symplectic family needs even N".into()));
            }
            let idx = IndexSet::signed(big_n)?;
            Ok(RStruct::g_with_kappa(idx, fam, &kappa(big_n, fam)))
        }
    }
}

/// `G(u)` for a pair: constant (first kind) or `(I − c·u·G)/(1 − c·u)`.
pub fn build_g(pair: &PairType) -> LabeledMatrix<RatFunc> {
    LabeledMatrix::diagonal(pair.index_set(), |i| pair.g_entry(i))
}

/// `G + a·u⁻¹·I` for CI and DIII.
pub fn build_k_oneparam(pair: &PairType, a: &Rat) -> Result<LabeledMatrix<RatFunc>, TwError> {
    if !matches!(pair.tag, PairTag::CI | PairTag::DIII) {
        return Err(TwError::Config(format!("one-parameter K is defined for CI and DIII, not {}", pair.tag)));
    }
    let shift = RatFunc::new(Poly::constant(a.clone()), Poly::u());
    Ok(LabeledMatrix::diagonal(pair.index_set(), |i| &pair.g_entry(i) + &shift))
}

/// Outcome of one exact identity check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub pass: bool,
    /// A few violated entries, human readable.
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl IdentityReport {
    pub fn new(identity: impl Into<String>, witnesses: Vec<String>) -> Self {
        IdentityReport {
            identity: identity.into(),
            pass: witnesses.is_empty(),
            witnesses,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.identity, if self.pass { "pass" } else { "FAIL" })?;
        if let Some(n) = &self.note {
            write!(f, " ({n})")?;
        }
        for w in &self.witnesses {
            write!(f, "\n    {w}")?;
        }
        Ok(())
    }
}

pub(crate) const MAX_WITNESSES: usize = 5;

/// Least common multiple of the entry denominators (monic).
pub fn common_denominator<'a>(entries: impl IntoIterator<Item = &'a RatFunc>) -> Poly {
    let mut l = Poly::one();
    for f in entries {
        let g = Poly::gcd(&l, f.den());
        l = (&l * f.den()).exact_div(&g).unwrap();
    }
    l
}

/// Numerator matrix `D(u)·M(u)` and the common denominator `D`.
pub fn clear_denominators(m: &LabeledMatrix<RatFunc>) -> (LabeledMatrix<Poly>, Poly) {
    let labels = m.labels();
    let ents: Vec<&RatFunc> = labels
        .iter()
        .flat_map(|a| labels.iter().map(move |b| (a, b)))
        .map(|(a, b)| m.get(a, b))
        .collect();
    let d = common_denominator(ents);
    let hat = m.map(|f| {
        let q = (&d * f.num()).exact_div(f.den()).unwrap();
        q
    });
    (hat, d)
}

fn lift(m: &LabeledMatrix<Poly>, a: &Rat, b: &Rat, c: &Rat) -> LabeledMatrix<BiPoly> {
    m.map(|p| BiPoly::compose_linear(p, a, b, c))
}

fn compare(identity: &str, lhs: &LabeledMatrix<BiPoly>, rhs: &LabeledMatrix<BiPoly>) -> IdentityReport {
    let labels = lhs.labels();
    let mut w = Vec::new();
    'outer: for a in &labels {
        for b in &labels {
            let d = lhs.get(a, b) - rhs.get(a, b);
            if let Some((i, j, c)) = d.first_nonzero() {
                w.push(format!("entry {a:?},{b:?}: coefficient of u^{i} v^{j} in LHS−RHS is {c}"));
                if w.len() >= MAX_WITNESSES {
                    break 'outer;
                }
            }
        }
    }
    IdentityReport::new(identity, w)
}

/// `R₁₂(u) R₁₃(u+v) R₂₃(v) = R₂₃(v) R₁₃(u+v) R₁₂(u)`, compared on cleared numerators.
pub fn check_ybe(r: &LabeledMatrix<RatFunc>) -> Result<IdentityReport, TwError> {
    if r.legs().len() != 2 {
        return Err(TwError::Shape("R must act on two legs".into()));
    }
    let (hat, _) = clear_denominators(r);
    let (one, zero) = (Rat::one(), Rat::zero());
    let r12 = leg_embed(&lift(&hat, &one, &zero, &zero), &[1, 2], 3)?;
    let r13 = leg_embed(&lift(&hat, &one, &one, &zero), &[1, 3], 3)?;
    let r23 = leg_embed(&lift(&hat, &zero, &one, &zero), &[2, 3], 3)?;
    let lhs = r12.mul(&r13)?.mul(&r23)?;
    let rhs = r23.mul(&r13)?.mul(&r12)?;
    Ok(compare("YBE", &lhs, &rhs))
}

fn k_legs(k: &LabeledMatrix<RatFunc>) -> Result<(LabeledMatrix<BiPoly>, LabeledMatrix<BiPoly>), TwError> {
    let (hat, _) = clear_denominators(k);
    let (one, zero) = (Rat::one(), Rat::zero());
    let k1 = leg_embed(&lift(&hat, &one, &zero, &zero), &[1], 2)?;
    let k2 = leg_embed(&lift(&hat, &zero, &one, &zero), &[2], 2)?;
    Ok((k1, k2))
}

/// `R(u−v) K₁(u) R(u+v) K₂(v) = K₂(v) R(u+v) K₁(u) R(u−v)`.
pub fn check_re(r: &LabeledMatrix<RatFunc>, k: &LabeledMatrix<RatFunc>) -> Result<IdentityReport, TwError> {
    if k.legs().len() != 1 || r.legs() != [k.legs()[0], k.legs()[0]] {
        return Err(TwError::Shape("R and K label sets do not match".into()));
    }
    let (hat, _) = clear_denominators(r);
    let (one, zero) = (Rat::one(), Rat::zero());
    let rm = lift(&hat, &one, &-Rat::one(), &zero);
    let rp = lift(&hat, &one, &one, &zero);
    let (k1, k2) = k_legs(k)?;
    let lhs = rm.mul(&k1)?.mul(&rp)?.mul(&k2)?;
    let rhs = k2.mul(&rp)?.mul(&k1)?.mul(&rm)?;
    Ok(compare("RE", &lhs, &rhs))
}

/// `R(u−v) K₁(u) Rᵗ(−u−v) K₂(v) = K₂(v) Rᵗ(−u−v) K₁(u) R(u−v)`.
pub fn check_twisted_re(
    r: &LabeledMatrix<RatFunc>,
    k: &LabeledMatrix<RatFunc>,
    family: Family,
) -> Result<IdentityReport, TwError> {
    if k.legs().len() != 1 || r.legs() != [k.legs()[0], k.legs()[0]] {
        return Err(TwError::Shape("R and K label sets do not match".into()));
    }
    let (hat, _) = clear_denominators(r);
    let hat_t = hat.partial_transpose(1, family)?;
    let (one, zero) = (Rat::one(), Rat::zero());
    let rm = lift(&hat, &one, &-Rat::one(), &zero);
    let rt = lift(&hat_t, &-Rat::one(), &-Rat::one(), &zero);
    let (k1, k2) = k_legs(k)?;
    let lhs = rm.mul(&k1)?.mul(&rt)?.mul(&k2)?;
    let rhs = k2.mul(&rt)?.mul(&k1)?.mul(&rm)?;
    Ok(compare("twisted RE", &lhs, &rhs))
}

fn diff_witnesses(identity: &str, a: &LabeledMatrix<RatFunc>, b: &LabeledMatrix<RatFunc>) -> IdentityReport {
    let labels = a.labels();
    let mut w = Vec::new();
    for x in &labels {
        for y in &labels {
            let d = a.get(x, y) - b.get(x, y);
            if !d.is_zero() && w.len() < MAX_WITNESSES {
                w.push(format!("entry {x:?},{y:?}: LHS−RHS = {d}"));
            }
        }
    }
    IdentityReport::new(identity, w)
}

/// `K(u)·K(−u) = I`.
pub fn check_unitarity(k: &LabeledMatrix<RatFunc>) -> Result<IdentityReport, TwError> {
    let km = k.map(|f| f.reflect(&Rat::zero()));
    let prod = k.mul(&km)?;
    Ok(diff_witnesses("unitarity K(u)K(-u) = I", &prod, &LabeledMatrix::identity(k.legs().to_vec())))
}

fn pole_lin(a: i64, b: &Rat) -> RatFunc {
    // 1/(a·u + b)
    RatFunc::new(Poly::one(), Poly::linear(ri(a), b.clone()))
}

/// `p(u) = (±)1 ∓ 1/(2u−κ) + Tr K(u)/(2u−2κ)`.
pub fn compute_p(k: &LabeledMatrix<RatFunc>, pair: &PairType) -> Result<RatFunc, TwError> {
    if pair.tag == PairTag::AIII {
        return Err(TwError::Config("p(u) is not defined in type A".into()));
    }
    let kap = pair.kappa();
    let tr = k.trace();
    let a = RatFunc::constant(ri(pair.sign_paren()));
    let b = pole_lin(2, &-kap.clone()).scale(&ri(-pair.sign_pm()));
    let c = &tr * &pole_lin(2, &(-ri(2) * &kap));
    Ok(&(&a + &b) + &c)
}

/// `p₀(u) = 1 − 1/(2u−κ) + N/(2u−2κ)`.
pub fn p0(pair: &PairType) -> RatFunc {
    let kap = pair.kappa();
    let a = RatFunc::one();
    let b = -pole_lin(2, &-kap.clone());
    let c = pole_lin(2, &(-ri(2) * &kap)).scale(&ri(pair.big_n as i64));
    &(&a + &b) + &c
}

/// `p(u)·p(κ−u) = 1 − (2u−κ)⁻²`.
pub fn check_p_identity(k: &LabeledMatrix<RatFunc>, pair: &PairType) -> Result<IdentityReport, TwError> {
    let p = compute_p(k, pair)?;
    let kap = pair.kappa();
    let lhs = &p * &p.reflect(&kap);
    let x = pole_lin(2, &-kap);
    let rhs = &RatFunc::one() - &(&x * &x);
    let d = &lhs - &rhs;
    let w = if d.is_zero() { vec![] } else { vec![format!("p(u)p(κ−u) − 1 + (2u−κ)⁻² = {d}")] };
    Ok(IdentityReport::new("p(u)p(κ−u) = 1 − (2u−κ)⁻²", w))
}

/// Symmetry of `K(u)`: both displayed forms of the identity, or the
/// one-parameter form when `a` is given (CI/DIII).
pub fn check_symmetry(k: &LabeledMatrix<RatFunc>, pair: &PairType, a: Option<&Rat>) -> Result<Vec<IdentityReport>, TwError> {
    if pair.tag == PairTag::AIII {
        return Err(TwError::Config("symmetry identity is not defined in type A".into()));
    }
    let fam = pair.family();
    let kap = pair.kappa();
    let kt = k.transpose_t(fam)?;
    let kr = k.map(|f| f.reflect(&kap));
    let id = LabeledMatrix::<RatFunc>::identity(k.legs().to_vec());
    let tr = k.trace();
    let x = pole_lin(2, &-kap.clone());
    let y = pole_lin(2, &(-ri(2) * &kap));
    let pm = RatFunc::constant(ri(pair.sign_pm()));
    let diff = k.sub(&kr)?;
    let mut out = Vec::new();
    if let Some(a) = a {
        let _ = a;
        // Kᵗ = −K(κ−u) ± (K − K(κ−u))/(2u−κ) − Tr K·I/(2u−2κ)
        let rhs = kr
            .scale(&RatFunc::constant(-Rat::one()))
            .add(&diff.scale(&(&pm * &x)))?
            .sub(&id.scale(&(&tr * &y)))?;
        out.push(diff_witnesses("symmetry (one-parameter form)", &kt, &rhs));
        return Ok(out);
    }
    let paren = RatFunc::constant(ri(pair.sign_paren()));
    // first form: (±)K(κ−u) ± (K − K(κ−u))/(2u−κ) + (Tr K·K(κ−u) − Tr K·I)/(2u−2κ)
    let rhs1 = kr
        .scale(&paren)
        .add(&diff.scale(&(&pm * &x)))?
        .add(&kr.scale(&(&tr * &y)))?
        .sub(&id.scale(&(&tr * &y)))?;
    out.push(diff_witnesses("symmetry", &kt, &rhs1));
    // second form: p(u)K(κ−u) ± K/(2u−κ) − Tr K·I/(2u−2κ)
    let p = compute_p(k, pair)?;
    let rhs2 = kr
        .scale(&p)
        .add(&k.scale(&(&pm * &x)))?
        .sub(&id.scale(&(&tr * &y)))?;
    out.push(diff_witnesses("symmetry via p(u)", &kt, &rhs2));
    Ok(out)
}

/// Full K-matrix verification for a pair: RE (twisted RE is not used for
/// the B-C-D pairs), unitarity, both symmetry forms, and the `p` identity.
pub fn verify_kmatrix(pair: &PairType) -> Result<Vec<IdentityReport>, TwError> {
    let g = build_g(pair);
    let r = if pair.tag == PairTag::AIII {
        build_r(pair.big_n, RFamily::Gl)?
    } else {
        build_r(pair.big_n, RFamily::G(pair.family()))?
    };
    let mut out = vec![check_re(&r, &g)?, check_unitarity(&g)?];
    if pair.tag != PairTag::AIII {
        out.extend(check_symmetry(&g, pair, None)?);
        out.push(check_p_identity(&g, pair)?);
    }
    Ok(out)
}

/// Every supported pair with `N ≤ max_n`.
pub fn supported_pairs(max_n: usize) -> Vec<PairType> {
    let mut out = Vec::new();
    for big_n in 2..=max_n {
        for tag in PairTag::ALL {
            if tag.is_mixed() || tag == PairTag::AIII {
                for q in 1..big_n {
                    let p = big_n - q;
                    if let Ok(pt) = PairType::new(tag, big_n, Some(p), Some(q)) {
                        out.push(pt);
                    }
                }
            } else if let Ok(pt) = PairType::simple(tag, big_n) {
                out.push(pt);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_values() {
        assert_eq!(kappa(3, Family::Orthogonal), rq(1, 2));
        assert_eq!(kappa(4, Family::Symplectic), ri(3));
    }

    #[test]
    fn r_unitarity_sp4() {
        let r = build_r(4, RFamily::G(Family::Symplectic)).unwrap();
        let rm = r.map(|f| f.reflect(&Rat::zero()));
        let prod = r.mul(&rm).unwrap();
        let want = &RatFunc::one() - &RatFunc::new(Poly::one(), Poly::from_ints(&[0, 0, 1]));
        assert_eq!(prod, LabeledMatrix::identity(r.legs().to_vec()).scale(&want));
    }

    #[test]
    fn g_examples() {
        let ci = PairType::simple(PairTag::CI, 4).unwrap();
        let g = build_g(&ci);
        let diag: Vec<RatFunc> = [-2, -1, 1, 2].iter().map(|&i| g.get(&[i], &[i]).clone()).collect();
        assert_eq!(diag, [-1, -1, 1, 1].map(|x| RatFunc::constant(ri(x))).to_vec());
        let bia = PairType::new(PairTag::BIa, 5, Some(3), Some(2)).unwrap();
        assert_eq!([-2, -1, 0, 1, 2].map(|i| bia.g_const(i)), [-1, 1, 1, 1, -1]);
        assert_eq!(bia.c(), Some(ri(4)));
        assert!("DIb".parse::<PairTag>().is_err());
    }

    #[test]
    fn ybe_small() {
        assert!(check_ybe(&build_r(2, RFamily::Gl).unwrap()).unwrap().pass);
        assert!(check_ybe(&build_r(3, RFamily::G(Family::Orthogonal)).unwrap()).unwrap().pass);
        let bad = RStruct::g_with_kappa(IndexSet::signed(3).unwrap(), Family::Orthogonal, &rq(3, 2));
        let rep = check_ybe(&bad.to_matrix().unwrap()).unwrap();
        assert!(!rep.pass && !rep.witnesses.is_empty());
    }

    #[test]
    fn re_examples() {
        let r = build_r(4, RFamily::G(Family::Orthogonal)).unwrap();
        let i = LabeledMatrix::identity(vec![IndexSet::signed(4).unwrap()]);
        assert!(check_re(&r, &i).unwrap().pass);
        let ci = PairType::simple(PairTag::CI, 4).unwrap();
        let r = build_r(4, RFamily::G(Family::Symplectic)).unwrap();
        assert!(check_re(&r, &build_g(&ci)).unwrap().pass);
        let r2 = build_r(2, RFamily::Gl).unwrap();
        let k = LabeledMatrix::diagonal(IndexSet::plain(2), |i| RatFunc::constant(ri(i as i64)));
        assert!(!check_re(&r2, &k).unwrap().pass);
    }

    #[test]
    fn p_examples() {
        let ci = PairType::simple(PairTag::CI, 2).unwrap();
        let p = compute_p(&build_g(&ci), &ci).unwrap();
        // −1 + 1/(2u−κ) with κ = 2
        let want = &RatFunc::constant(ri(-1)) + &pole_lin(2, &ri(-2));
        assert_eq!(p, want);
        let b0 = PairType::simple(PairTag::B0, 3).unwrap();
        assert_eq!(compute_p(&build_g(&b0), &b0).unwrap(), p0(&b0));
    }
}

#[cfg(test)]
mod pair_sweep {
    use super::*;

    #[test]
    fn every_small_pair_verifies() {
        for pair in supported_pairs(5) {
            for rep in verify_kmatrix(&pair).unwrap() {
                assert!(rep.pass, "{pair}: {rep}");
            }
        }
    }

    #[test]
    fn oneparam_symmetry() {
        for pair in [PairType::simple(PairTag::CI, 4).unwrap(), PairType::simple(PairTag::DIII, 4).unwrap()] {
            let a = rq(3, 7);
            let k = build_k_oneparam(&pair, &a).unwrap();
            for rep in check_symmetry(&k, &pair, Some(&a)).unwrap() {
                assert!(rep.pass, "{pair}: {rep}");
            }
            let r = build_r(4, RFamily::G(pair.family())).unwrap();
            assert!(check_re(&r, &k).unwrap().pass);
        }
    }

    #[test]
    fn p0_ratio_matches_g() {
        for pair in supported_pairs(9).into_iter().filter(|p| matches!(p.tag, PairTag::B0 | PairTag::BIa | PairTag::BIb)) {
            let kap = pair.kappa();
            let p = compute_p(&build_g(&pair), &pair).unwrap();
            let g = pair.g_scalar().unwrap();
            let lhs = &p0(&pair) / &p;
            let rhs = &g.reflect(&kap) / &g;
            assert_eq!(lhs, rhs, "{pair}");
        }
    }
}

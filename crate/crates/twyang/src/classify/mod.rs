//! Non-triviality and finite-dimensionality of highest weights, Drinfeld
//! certificates, and the inverse construction of weights from certificates.

pub mod lambda;
pub mod mr;
pub mod solve;

use num::One;
use serde::{Deserialize, Serialize};

use crate::error::TwError;
use crate::exact::{ri, rq, Poly, Rat, RatFunc};
use crate::rk::{build_g, compute_p, p0, IdentityReport, PairTag, PairType};
use crate::tensor::Family;

pub use lambda::{check_ext_nontrivial, construct_from_cert, extend_lambda, mu_factorize_b0, xgn_fd_check, LambdaTuple};
pub use mr::{check_mr, MrCertificate, MrReport};
pub use solve::{
    forced_degree, gamma_factor, solve_p, solve_p_at_degree, solve_p_gamma, SolveOutcome, DEFAULT_DEG_MAX,
};

/// Highest weight `(μ_i(u))_{i ∈ I_N}` of a pair with diagonal `G`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightTuple {
    pub pair: PairType,
    pub mu: Vec<RatFunc>,
}

impl WeightTuple {
    /// Checks the length and `μ_i(∞) = g_ii`.
    pub fn new(pair: PairType, mu: Vec<RatFunc>) -> Result<Self, TwError> {
        if pair.tag == PairTag::AIII {
            return Err(TwError::Unsupported("AIII weights are handled by check_mr".into()));
        }
        let idx = pair.weight_indices();
        if idx.len() != mu.len() {
            return Err(TwError::Shape(format!("{pair} needs {} weight components, got {}", idx.len(), mu.len())));
        }
        for (i, m) in idx.iter().zip(&mu) {
            let g = ri(pair.g_const(*i));
            match m.value_at_infinity() {
                Some(v) if v == g => {}
                Some(v) => {
                    return Err(TwError::Normalization(format!("mu_{i}(inf) = {v}, expected g_{i}{i} = {g}")));
                }
                None => return Err(TwError::Normalization(format!("mu_{i} = {m} is not finite at infinity"))),
            }
        }
        Ok(WeightTuple { pair, mu })
    }

    pub fn indices(&self) -> Vec<i32> {
        self.pair.weight_indices()
    }

    /// `μ_i` for a label `i ∈ I_N`.
    pub fn get(&self, i: i32) -> &RatFunc {
        &self.mu[(i - first_index(&self.pair)) as usize]
    }

    /// Weight of the one-dimensional module `G(u)` itself.
    pub fn trivial(pair: PairType) -> Result<Self, TwError> {
        let mu = pair.weight_indices().iter().map(|&i| pair.g_entry(i)).collect();
        WeightTuple::new(pair, mu)
    }
}

/// `(ν̃μ_i(u))_{i ∈ I_N}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TildeTuple {
    pub pair: PairType,
    pub nu: Vec<RatFunc>,
}

impl TildeTuple {
    pub fn get(&self, i: i32) -> &RatFunc {
        &self.nu[(i - first_index(&self.pair)) as usize]
    }
}

fn first_index(pair: &PairType) -> i32 {
    pair.weight_indices()[0]
}

/// `2u − n + i`.
fn lead_factor(n: usize, i: i32) -> RatFunc {
    RatFunc::from_poly(Poly::linear(ri(2), ri(i as i64 - n as i64)))
}

/// `ν̃_i = (2u − n + i)·μ_i + Σ_{ℓ > i} μ_ℓ` over consecutive labels starting at `first`.
pub fn tilde_components(n: usize, first: i32, mu: &[RatFunc]) -> Vec<RatFunc> {
    let mut out = vec![RatFunc::zero(); mu.len()];
    let mut tail = RatFunc::zero();
    for k in (0..mu.len()).rev() {
        let i = first + k as i32;
        out[k] = &(&lead_factor(n, i) * &mu[k]) + &tail;
        tail = &tail + &mu[k];
    }
    out
}

/// Inverse of [`tilde_components`] by descending back-substitution.
pub fn untilde_components(n: usize, first: i32, nu: &[RatFunc]) -> Vec<RatFunc> {
    let mut out = vec![RatFunc::zero(); nu.len()];
    let mut tail = RatFunc::zero();
    for k in (0..nu.len()).rev() {
        let i = first + k as i32;
        out[k] = &(&nu[k] - &tail) / &lead_factor(n, i);
        tail = &tail + &out[k];
    }
    out
}

pub fn tilde(mu: &WeightTuple) -> TildeTuple {
    TildeTuple {
        pair: mu.pair,
        nu: tilde_components(mu.pair.n(), first_index(&mu.pair), &mu.mu),
    }
}

pub fn untilde(nu: &TildeTuple) -> Result<WeightTuple, TwError> {
    WeightTuple::new(nu.pair, untilde_components(nu.pair.n(), first_index(&nu.pair), &nu.nu))
}

fn residual(lhs: &RatFunc, rhs: &RatFunc) -> Vec<String> {
    if lhs == rhs {
        Vec::new()
    } else {
        vec![format!("lhs = {lhs}, rhs = {rhs}, lhs - rhs = {}", lhs - rhs)]
    }
}

fn is_type_b(pair: &PairType) -> bool {
    pair.big_n % 2 == 1
}

/// Outcome of the non-triviality test.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NontrivialReport {
    pub pass: bool,
    /// First label `i` whose relation fails (`-1` stands for the type-B
    /// relation on `ν̃μ₀`).
    pub first_violation: Option<i32>,
    pub checks: Vec<IdentityReport>,
}

/// `p₀(u)/p(u)`, which equals `g(κ−u)/g(u)` for type B.
pub fn type_b_ratio(pair: &PairType) -> Result<RatFunc, TwError> {
    let p = compute_p(&build_g(pair), pair)?;
    Ok(&p0(pair) / &p)
}

/// `ν̃_i(u)ν̃_i(n−i−u) = ν̃_{i+1}(u)ν̃_{i+1}(n−i−u)` for `i ∈ I_N \ {n}`, and for
/// type B also `u·ν̃₀(κ−u) = (κ−u)·(p₀(u)/p(u))·ν̃₀(u)`.
pub fn check_nontrivial(mu: &WeightTuple) -> NontrivialReport {
    let pair = &mu.pair;
    let n = pair.n() as i32;
    let nu = tilde(mu);
    let mut checks = Vec::new();
    let mut first_violation = None;
    for i in mu.indices().into_iter().filter(|&i| i < n) {
        let c = ri((n - i) as i64);
        let lhs = nu.get(i) * &nu.get(i).reflect(&c);
        let rhs = nu.get(i + 1) * &nu.get(i + 1).reflect(&c);
        let r = IdentityReport::new(format!("nontrivial i={i}"), residual(&lhs, &rhs));
        if !r.pass && first_violation.is_none() {
            first_violation = Some(i);
        }
        checks.push(r);
    }
    if is_type_b(pair) {
        let kap = pair.kappa();
        let u = RatFunc::u();
        let kmu = RatFunc::from_poly(Poly::linear(-Rat::one(), kap.clone()));
        let r = match type_b_ratio(pair) {
            Ok(q) => {
                let lhs = &u * &nu.get(0).reflect(&kap);
                let rhs = &(&kmu * &q) * nu.get(0);
                IdentityReport::new("type B: u*nu_0(kappa-u) = (kappa-u)*g(kappa-u)/g(u)*nu_0(u)", residual(&lhs, &rhs))
            }
            Err(e) => IdentityReport::new("type B normalization", vec![e.to_string()]),
        };
        if !r.pass && first_violation.is_none() {
            first_violation = Some(-1);
        }
        checks.push(r);
    }
    NontrivialReport {
        pass: first_violation.is_none(),
        first_violation,
        checks,
    }
}

/// Shift in the `P₁` relation: `1/2` (B), `2` (C), `1` (D).
pub fn p1_shift(pair: &PairType) -> Rat {
    if is_type_b(pair) {
        rq(1, 2)
    } else if pair.family() == Family::Symplectic {
        ri(2)
    } else {
        ri(1)
    }
}

/// Symmetry center `c_i` with `P_i(u) = P_i(c_i − u)`.
pub fn p_center(pair: &PairType, i: usize) -> Rat {
    let n = pair.n() as i64;
    if i > 1 {
        ri(n - i as i64 + 2)
    } else if is_type_b(pair) {
        ri(n) + rq(1, 2)
    } else if pair.family() == Family::Symplectic {
        ri(n + 3)
    } else {
        ri(n)
    }
}

/// Drinfeld data of a finite-dimensional module.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub pair: PairType,
    /// `P_1, …, P_n`.
    pub polys: Vec<Poly>,
    #[serde(with = "crate::io::opt_rat")]
    pub gamma: Option<Rat>,
}

impl Certificate {
    /// Monicity, symmetry and `P₁(γ) ≠ 0`.
    pub fn check_invariants(&self) -> Vec<IdentityReport> {
        let mut out = Vec::new();
        for (k, p) in self.polys.iter().enumerate() {
            let i = k + 1;
            let c = p_center(&self.pair, i);
            let mut w = Vec::new();
            if !p.is_monic() {
                w.push(format!("P_{i} = {p} is not monic"));
            }
            if p.reflect(&c) != *p {
                w.push(format!("P_{i}({c} - u) = {} != P_{i}(u) = {p}", p.reflect(&c)));
            }
            out.push(IdentityReport::new(format!("P_{i} monic, P_{i}(u) = P_{i}({c} - u)"), w));
        }
        if let (Some(g), Some(p1)) = (&self.gamma, self.polys.first()) {
            let v = p1.eval(g);
            let w = if num::Zero::is_zero(&v) { vec![format!("P_1({g}) = 0")] } else { vec![] };
            out.push(IdentityReport::new("P_1(gamma) != 0", w));
        }
        out
    }
}

/// Finite-dimensionality answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum FiniteDim {
    Yes,
    No,
    /// The search was not exhaustive (irrational `γ`, degree cap, …).
    Inconclusive,
    /// Only necessary conditions are known for this pair.
    NecessaryOnly { pass: bool },
    /// `V(μ)` does not exist.
    Undefined,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub pair: PairType,
    pub nontrivial: bool,
    pub finite_dim: FiniteDim,
    pub certificate: Option<Certificate>,
    /// Every condition checked, with residual witnesses on failure.
    pub diagnostics: Vec<IdentityReport>,
}

enum Step {
    Poly(Poly),
    Gamma(Poly, Rat),
}

fn record<T>(diag: &mut Vec<IdentityReport>, name: String, out: SolveOutcome<T>) -> SolveOutcome<T> {
    let rep = match &out {
        SolveOutcome::Found(_) => IdentityReport::new(name, vec![]),
        SolveOutcome::None(e) => IdentityReport::new(name, vec![e.clone()]),
        SolveOutcome::Inconclusive(e) => IdentityReport::new(name, vec![]).with_note(format!("inconclusive: {e}")),
    };
    diag.push(rep);
    out
}

/// Decides non-triviality and finite-dimensionality of `V(μ)`.
pub fn classify(mu: &WeightTuple, deg_max: usize) -> Verdict {
    let pair = mu.pair;
    let nt = check_nontrivial(mu);
    if !nt.pass {
        return Verdict {
            pair,
            nontrivial: false,
            finite_dim: FiniteDim::Undefined,
            certificate: None,
            diagnostics: nt.checks,
        };
    }
    let mut diag = nt.checks;
    if pair.tag.is_mixed() {
        let (k, ell) = pair.k_ell();
        let is_bi = matches!(pair.tag, PairTag::BIa | PairTag::BIb);
        let q_tilde = if is_bi && pair.q == 1 { 0 } else { ell as usize };
        let pos: Vec<RatFunc> = (1..=pair.n() as i32).map(|i| mu.get(i).clone()).collect();
        let rep = check_mr(&pos, q_tilde, deg_max);
        if q_tilde > 0 && (k + 1) < 2 {
            diag.push(
                IdentityReport::new("gamma condition", vec![])
                    .with_note(format!("k + 1 = {} lies outside 2..=n; no gamma condition applies", k + 1)),
            );
        }
        diag.extend(rep.fd_checks);
        let finite_dim = match rep.fd {
            SolveOutcome::Found(_) => FiniteDim::NecessaryOnly { pass: true },
            SolveOutcome::None(_) => FiniteDim::NecessaryOnly { pass: false },
            SolveOutcome::Inconclusive(_) => FiniteDim::Inconclusive,
        };
        return Verdict {
            pair,
            nontrivial: true,
            finite_dim,
            certificate: None,
            diagnostics: diag,
        };
    }

    let n = pair.n();
    let nu = tilde(mu);
    let one = ri(1);
    let mut outcomes: Vec<SolveOutcome<Step>> = Vec::new();
    // P_1
    let kap = pair.kappa();
    let u = RatFunc::u();
    let kmu = RatFunc::from_poly(Poly::linear(-Rat::one(), kap.clone()));
    let c1 = p_center(&pair, 1);
    let s1 = p1_shift(&pair);
    let p1 = match pair.tag {
        PairTag::B0 => {
            let r = nu.get(0) / nu.get(1);
            map(solve_p(&r, &s1, Some(&c1), deg_max))
        }
        PairTag::C0 | PairTag::D0 => {
            let den = if pair.tag == PairTag::C0 { nu.get(1) } else { nu.get(2) };
            let r = &(&(&nu.get(1).reflect(&kap) / den) * &u) / &kmu;
            map(solve_p(&r, &s1, Some(&c1), deg_max))
        }
        PairTag::CI | PairTag::DIII => {
            let den = if pair.tag == PairTag::CI { nu.get(1) } else { nu.get(2) };
            let r = &nu.get(1).reflect(&kap) / den;
            match solve_p_gamma(&r, &s1, &kap, Some(&c1), deg_max) {
                SolveOutcome::Found((p, g)) => SolveOutcome::Found(Step::Gamma(p, g)),
                SolveOutcome::None(e) => SolveOutcome::None(e),
                SolveOutcome::Inconclusive(e) => SolveOutcome::Inconclusive(e),
            }
        }
        _ => unreachable!("mixed and AIII pairs handled above"),
    };
    outcomes.push(record(&mut diag, "Drinfeld P_1".into(), p1));
    for i in 2..=n as i32 {
        let r = nu.get(i - 1) / nu.get(i);
        let c = p_center(&pair, i as usize);
        let o = map(solve_p(&r, &one, Some(&c), deg_max));
        outcomes.push(record(&mut diag, format!("Drinfeld P_{i}"), o));
    }
    let finite_dim = if outcomes.iter().any(|o| matches!(o, SolveOutcome::None(_))) {
        FiniteDim::No
    } else if outcomes.iter().any(|o| matches!(o, SolveOutcome::Inconclusive(_))) {
        FiniteDim::Inconclusive
    } else {
        FiniteDim::Yes
    };
    let certificate = (finite_dim == FiniteDim::Yes).then(|| {
        let mut polys = Vec::new();
        let mut gamma = None;
        for o in outcomes {
            match o {
                SolveOutcome::Found(Step::Poly(p)) => polys.push(p),
                SolveOutcome::Found(Step::Gamma(p, g)) => {
                    polys.push(p);
                    gamma = Some(g);
                }
                _ => unreachable!(),
            }
        }
        Certificate { pair, polys, gamma }
    });
    Verdict {
        pair,
        nontrivial: true,
        finite_dim,
        certificate,
        diagnostics: diag,
    }
}

fn map(o: SolveOutcome<Poly>) -> SolveOutcome<Step> {
    match o {
        SolveOutcome::Found(p) => SolveOutcome::Found(Step::Poly(p)),
        SolveOutcome::None(e) => SolveOutcome::None(e),
        SolveOutcome::Inconclusive(e) => SolveOutcome::Inconclusive(e),
    }
}

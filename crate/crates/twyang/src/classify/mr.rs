//! Highest-weight conditions for the reflection algebras `B(Ñ, q̃)` of type AIII.

use serde::{Deserialize, Serialize};

use super::solve::{solve_p, solve_p_gamma, SolveOutcome};
use super::{residual, tilde_components};
use crate::exact::{ri, Poly, Rat, RatFunc};
use crate::rk::IdentityReport;

/// `P_2, …, P_Ñ` and `γ` when `0 < q̃ < Ñ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MrCertificate {
    pub polys: Vec<Poly>,
    #[serde(with = "crate::io::opt_rat")]
    pub gamma: Option<Rat>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MrReport {
    pub nontrivial: bool,
    pub nontrivial_checks: Vec<IdentityReport>,
    pub fd: SolveOutcome<MrCertificate>,
    pub fd_checks: Vec<IdentityReport>,
}

/// Non-triviality and finite-dimensionality for a weight `(μ_1, …, μ_Ñ)`.
///
/// The finite-dimensionality part only looks at ratios `ν̃_{i−1}/ν̃_i`, so it
/// is insensitive to a common scalar factor and sign of the weight.
pub fn check_mr(mu: &[RatFunc], q_tilde: usize, deg_max: usize) -> MrReport {
    let nn = mu.len();
    let nu = tilde_components(nn, 1, mu);
    let mut nontrivial_checks = Vec::new();
    if let Some(last) = mu.last() {
        let lhs = last * &last.reflect(&ri(0));
        nontrivial_checks.push(IdentityReport::new("mu_N(u) mu_N(-u) = 1", residual(&lhs, &RatFunc::one())));
    }
    for i in 1..nn {
        let c = ri((nn - i) as i64);
        let lhs = &nu[i - 1] * &nu[i - 1].reflect(&c);
        let rhs = &nu[i] * &nu[i].reflect(&c);
        nontrivial_checks.push(IdentityReport::new(format!("nontrivial i={i}"), residual(&lhs, &rhs)));
    }
    let nontrivial = nontrivial_checks.iter().all(|r| r.pass);

    let gamma_index = (q_tilde > 0 && q_tilde < nn).then(|| nn - q_tilde + 1);
    let one = ri(1);
    let mut polys = Vec::new();
    let mut gamma = None;
    let mut fd_checks = Vec::new();
    let mut failed: Option<String> = None;
    let mut inconclusive: Option<String> = None;
    for i in 2..=nn {
        let r = &nu[i - 2] / &nu[i - 1];
        let c = ri(nn as i64 - i as i64 + 2);
        let name = format!("Drinfeld P_{i}");
        let out = if gamma_index == Some(i) {
            match solve_p_gamma(&r, &one, &ri(q_tilde as i64), Some(&c), deg_max) {
                SolveOutcome::Found((p, g)) => {
                    gamma = Some(g);
                    SolveOutcome::Found(p)
                }
                SolveOutcome::None(e) => SolveOutcome::None(e),
                SolveOutcome::Inconclusive(e) => SolveOutcome::Inconclusive(e),
            }
        } else {
            solve_p(&r, &one, Some(&c), deg_max)
        };
        match out {
            SolveOutcome::Found(p) => {
                fd_checks.push(IdentityReport::new(name, vec![]));
                polys.push(p);
            }
            SolveOutcome::None(e) => {
                fd_checks.push(IdentityReport::new(name.clone(), vec![e.clone()]));
                failed.get_or_insert(format!("{name}: {e}"));
            }
            SolveOutcome::Inconclusive(e) => {
                fd_checks.push(IdentityReport::new(name.clone(), vec![]).with_note(format!("inconclusive: {e}")));
                inconclusive.get_or_insert(format!("{name}: {e}"));
            }
        }
    }
    let fd = match (failed, inconclusive) {
        (Some(e), _) => SolveOutcome::None(e),
        (None, Some(e)) => SolveOutcome::Inconclusive(e),
        (None, None) => SolveOutcome::Found(MrCertificate { polys, gamma }),
    };
    MrReport {
        nontrivial,
        nontrivial_checks,
        fd,
        fd_checks,
    }
}

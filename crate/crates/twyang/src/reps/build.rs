//! Constructors of concrete modules: evaluation modules in low rank,
//! one-dimensional modules, Olshanskii evaluation modules and the bridges
//! from `Y±(2)`, vector evaluation modules of `X(g_N)` and coproduct tensors.

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::TwError;
use crate::exact::{ri, rq, Mat, Poly, Rat, RatFunc};
use crate::reps::lie::{gl1_module, gl2_module, so2_matrices, so3_module, so4_module, sp2_module, LieModule};
use crate::reps::module::{half, verify_x, OlshanskiiModule, TwistedModule, XModule};
use crate::reps::opmat::OpMat;
use crate::rk::{PairTag, PairType};
use crate::tensor::Family;

/// `1/(u − a)`.
fn pole(a: Rat) -> RatFunc {
    RatFunc::pole(&a)
}

/// Operator matrix `(F′²)_ij = Σ_k F′_ik F′_kj`.
fn fprime_sq(lie: &LieModule, g: &dyn Fn(i32) -> i64, i: i32, j: i32) -> Mat {
    let mut acc = Mat::zeros(lie.dim, lie.dim);
    for k in lie.index_set().labels() {
        acc = &acc + &(&lie.f_prime(i, k, g) * &lie.f_prime(k, j, g));
    }
    acc
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Sp2Variant {
    C0,
    CI,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum So4Variant {
    D0,
    DIII,
}

/// Evaluation module of `X(sp₂, sp₂^ρ)^tw`: `S(u) = I + F′(u−2)⁻¹` (C0, `μ ∈ ℤ≤0`)
/// or `S(u) = G + F′u⁻¹` (CI, one-dimensional `gl₁` module, any `μ`).
pub fn eval_sp2(variant: Sp2Variant, mu: &Rat) -> Result<TwistedModule, TwError> {
    let (tag, lie, shift) = match variant {
        Sp2Variant::C0 => (PairTag::C0, sp2_module(mu)?, ri(2)),
        Sp2Variant::CI => (PairTag::CI, gl1_module(mu), ri(0)),
    };
    let pair = PairType::simple(tag, 2)?;
    let g = |i: i32| pair.g_const(i);
    let p = pole(shift);
    let d = lie.dim;
    Ok(TwistedModule::from_fn(pair, d, format!("ev {tag}, mu = {mu}"), |i, j| {
        let mut m = OpMat::from_mat_times(&lie.f_prime(i, j, &g), &p);
        if i == j {
            m = m.add(&OpMat::scalar(d, &RatFunc::constant(ri(g(i)))));
        }
        m
    }))
}

/// Evaluation module of `X(so₃, so₃)^tw`:
/// `S(u) = I + u/(u−¾)·(F′/(u−¼) + (F′² − 2F′ − 2Ω(u))/(2(u−¼)²))`,
/// `Ω(u) = (4u+1)/(4u)·Ω`. Admissible `μ ∈ −½ℤ≥0`.
pub fn eval_so3(mu: &Rat) -> Result<TwistedModule, TwError> {
    let lie = so3_module(mu)?;
    let pair = PairType::simple(PairTag::B0, 3)?;
    let d = lie.dim;
    let one = |_: i32| 1i64;
    let om = lie.casimir_so3();
    let u = RatFunc::u();
    let a = &u * &pole(rq(3, 4));
    let q = pole(rq(1, 4));
    let q2 = &q * &q;
    // Ω(u) = (4u+1)/(4u)·Ω
    let om_u = RatFunc::new(Poly::linear(ri(4), ri(1)), Poly::from_ints(&[0, 4]));
    Ok(TwistedModule::from_fn(pair, d, format!("ev B0, mu = {mu}"), |i, j| {
        let fp = lie.f_prime(i, j, &one);
        let quad = &fprime_sq(&lie, &one, i, j) - &fp.scale(&ri(2));
        let mut m = OpMat::from_mat_times(&fp, &(&a * &q));
        if i == j {
            let om_term = OpMat::from_mat_times(&om, &(&(&a * &q2) * &om_u).scale(&ri(-1)));
            m = m.add(&om_term).add(&OpMat::identity(d));
        }
        m.add(&OpMat::from_mat_times(&quad, &(&a * &q2).scale(&half())))
    }))
}

/// Evaluation module of `X(so₄, so₄^ρ)^tw`:
/// D0: `S(u) = I + F′/(u−1) + (F′² − 2F′ − 2Ω)/(2(u−1)²)`;
/// DIII: `S(u) = G + F′/u + G(F′² − 2z)/(2u(u−1))`.
pub fn eval_so4(variant: So4Variant, mu1: &Rat, mu2: &Rat) -> Result<TwistedModule, TwError> {
    match variant {
        So4Variant::D0 => {
            let lie = so4_module(mu1, mu2)?;
            let pair = PairType::simple(PairTag::D0, 4)?;
            let d = lie.dim;
            let one = |_: i32| 1i64;
            let om = lie.casimir_so4();
            let p = pole(ri(1));
            let p2 = (&p * &p).scale(&half());
            Ok(TwistedModule::from_fn(pair, d, format!("ev D0, mu = ({mu1}, {mu2})"), |i, j| {
                let fp = lie.f_prime(i, j, &one);
                let mut quad = &fprime_sq(&lie, &one, i, j) - &fp.scale(&ri(2));
                if i == j {
                    quad = &quad - &om.scale(&ri(2));
                }
                let mut m = OpMat::from_mat_times(&fp, &p).add(&OpMat::from_mat_times(&quad, &p2));
                if i == j {
                    m = m.add(&OpMat::identity(d));
                }
                m
            }))
        }
        So4Variant::DIII => {
            let lie = gl2_module(mu1, mu2)?;
            let pair = PairType::simple(PairTag::DIII, 4)?;
            let d = lie.dim;
            let g = |i: i32| pair.g_const(i);
            let z = lie.casimir_gl2();
            let inv_u = RatFunc::new(Poly::one(), Poly::u());
            // 1/(2u(u−1))
            let c2 = RatFunc::new(Poly::one(), Poly::from_ints(&[0, -2, 2]));
            Ok(TwistedModule::from_fn(pair, d, format!("ev DIII, mu = ({mu1}, {mu2})"), |i, j| {
                let fp = lie.f_prime(i, j, &g);
                let mut quad = fprime_sq(&lie, &g, i, j);
                if i == j {
                    quad = &quad - &z.scale(&ri(2));
                }
                let mut m = OpMat::from_mat_times(&fp, &inv_u).add(&OpMat::from_mat_times(&quad.scale(&ri(g(i))), &c2));
                if i == j {
                    m = m.add(&OpMat::scalar(d, &RatFunc::constant(ri(g(i)))));
                }
                m
            }))
        }
    }
}

/// One-dimensional module `S(u) ↦ G(u)`, or `G + a·u⁻¹·I` for CI/DIII.
pub fn onedim_module(pair: &PairType, a: Option<&Rat>) -> Result<TwistedModule, TwError> {
    if pair.tag == PairTag::AIII {
        return Err(TwError::Config("one-dimensional modules are built for B-C-D pairs".into()));
    }
    if a.is_some() && !matches!(pair.tag, PairTag::CI | PairTag::DIII) {
        return Err(TwError::Config(format!("the parameter a is only available for CI and DIII, not {}", pair.tag)));
    }
    let extra = a.map(|a| RatFunc::new(Poly::constant(a.clone()), Poly::u())).unwrap_or_else(RatFunc::zero);
    let note = match a {
        Some(a) => format!("one-dimensional, G + ({a})/u"),
        None => "one-dimensional, G(u)".to_string(),
    };
    Ok(TwistedModule::from_fn(*pair, 1, note, |i, j| {
        if i == j {
            OpMat::scalar(1, &(&pair.g_entry(i) + &extra))
        } else {
            OpMat::zero(1)
        }
    }))
}

/// Lie data accepted by [`olshanskii_eval`]: an `so₂` weight for `Y⁺(2)` or
/// an `sp₂` module for `Y⁻(2)`.
#[derive(Clone, Debug)]
pub enum OlshanskiiLie {
    So2(Rat),
    Sp2(LieModule),
}

/// `ev°±: s°_ij(u) ↦ δ_ij + F_ij (u ± ½)⁻¹`.
pub fn olshanskii_eval(sign: i64, lie: &OlshanskiiLie) -> Result<OlshanskiiModule, TwError> {
    let (d, fmat): (usize, Box<dyn Fn(i32, i32) -> Mat>) = match (sign, lie) {
        (1, OlshanskiiLie::So2(c)) => {
            let (p, m) = so2_matrices(c);
            (1, Box::new(move |i, j| match (i, j) {
                (1, 1) => p.clone(),
                (-1, -1) => m.clone(),
                _ => Mat::zeros(1, 1),
            }))
        }
        (-1, OlshanskiiLie::Sp2(v)) => {
            let v = v.clone();
            (v.dim, Box::new(move |i, j| v.f(i, j)))
        }
        _ => return Err(TwError::Config("Y⁺(2) takes so₂ data, Y⁻(2) takes an sp₂ module".into())),
    };
    let p = pole(-(half() * ri(sign)));
    Ok(OlshanskiiModule::from_fn(sign, d, |i, j| {
        let mut m = OpMat::from_mat_times(&fmat(i, j), &p);
        if i == j {
            m = m.add(&OpMat::identity(d));
        }
        m
    }))
}

/// `X(sp₂, sp₂^ρ)^tw` from `Y∓(2)`: `s_ij(u) = s°_ij(u/2 − ½)` for C0 (from `Y⁻`),
/// `s_ij(u) = s°_ij(u/2 − ½)·K_jj`, `K = E₁₁ − E₋₁,₋₁` for CI (from `Y⁺`).
pub fn bridge_sp2(variant: Sp2Variant, m: &OlshanskiiModule) -> Result<TwistedModule, TwError> {
    let (tag, sign) = match variant {
        Sp2Variant::C0 => (PairTag::C0, -1),
        Sp2Variant::CI => (PairTag::CI, 1),
    };
    if m.sign != sign {
        return Err(TwError::Config(format!("{tag} bridges from Y{}(2)", if sign > 0 { "⁺" } else { "⁻" })));
    }
    let pair = PairType::simple(tag, 2)?;
    let mut s = Vec::new();
    for i in [-1, 1] {
        for j in [-1, 1] {
            let mut x = m.s(i, j).substitute(&half(), &-half())?;
            if tag == PairTag::CI && j < 0 {
                x = x.scale_rat(&-Rat::one());
            }
            s.push(((i, j), x));
        }
    }
    Ok(TwistedModule::from_fn(pair, m.dim, format!("bridge {tag} from Olshanskii module"), |i, j| {
        s.iter().find(|(k, _)| *k == (i, j)).expect("label").1.clone()
    }))
}

/// `X(so₃, so₃)^tw` from `Y⁻(2)` through the explicit image table of
/// `φ₀ S(u) = ½R°(−1)S°₁(2u−1)R°(−4u+1)^{t}S°₂(2u)`, basis `(v₋₁, v₀, v₁)`.
///
/// The irrational factors `1/√2` of the table are absorbed by rescaling the
/// module: a vector of `F°₁₁`-weight `w` is multiplied by `(√2)^{(w−w₀)/2}`.
/// In this basis `s°₋₁,₁` acquires a factor `1/√2` and `s°₁,₋₁` a factor `√2`,
/// which turns every table entry rational; the result is conjugate to the
/// true image by a diagonal matrix, so every verified identity is unaffected.
pub fn bridge_so3(m: &OlshanskiiModule) -> Result<TwistedModule, TwError> {
    if m.sign != -1 {
        return Err(TwError::Config("the so₃ bridge starts from Y⁻(2)".into()));
    }
    let pair = PairType::simple(PairTag::B0, 3)?;
    let x = |i, j| m.s(i, j).substitute(&ri(2), &ri(-1));
    let y = |i, j| m.s(i, j).substitute(&ri(2), &ri(0));
    let (mm, mp, pm, pp) = ((-1, -1), (-1, 1), (1, -1), (1, 1));
    let xm = |k: (i32, i32)| x(k.0, k.1);
    let ym = |k: (i32, i32)| y(k.0, k.1);
    let four_u = RatFunc::from_poly(Poly::from_ints(&[0, 4]));
    let inv = RatFunc::new(Poly::one(), Poly::from_ints(&[-1, 4])); // 1/(4u−1)
    let r = &four_u * &inv; // 4u/(4u−1)
    let h = half();
    let mut t = std::collections::HashMap::new();
    let prod = |a: OpMat, b: OpMat| a.mul(&b);
    t.insert(
        (-1, -1),
        prod(xm(mm)?, ym(mm)?).sub(&prod(xm(mp)?, ym(pm)?).scale(&inv)),
    );
    t.insert(
        (-1, 0),
        prod(xm(mm)?, ym(mp)?)
            .add(&prod(xm(mp)?, ym(mm)?).scale(&r))
            .sub(&prod(xm(mp)?, ym(pp)?).scale(&inv))
            .scale_rat(&h),
    );
    t.insert((-1, 1), prod(xm(mp)?, ym(mp)?).scale(&r).scale_rat(&-h.clone()));
    t.insert(
        (0, -1),
        prod(xm(pm)?, ym(mm)?)
            .add(&prod(xm(mm)?, ym(pm)?).scale(&r))
            .sub(&prod(xm(pp)?, ym(pm)?).scale(&inv)),
    );
    let inv2 = RatFunc::new(Poly::one(), Poly::from_ints(&[-2, 8])); // 1/(8u−2)
    let a1 = xm(mm)?.scale(&four_u).sub(&xm(pp)?);
    let a2 = xm(pp)?.scale(&four_u).sub(&xm(mm)?);
    t.insert(
        (0, 0),
        prod(a1, ym(pp)?)
            .add(&prod(a2, ym(mm)?))
            .scale(&inv2)
            .add(&prod(xm(pm)?, ym(mp)?).add(&prod(xm(mp)?, ym(pm)?)).scale_rat(&h)),
    );
    t.insert(
        (0, 1),
        prod(xm(mp)?, ym(pp)?)
            .add(&prod(xm(pp)?, ym(mp)?).scale(&r))
            .sub(&prod(xm(mm)?, ym(mp)?).scale(&inv))
            .scale_rat(&-h.clone()),
    );
    t.insert((1, -1), prod(xm(pm)?, ym(pm)?).scale(&r).scale_rat(&ri(-2)));
    t.insert(
        (1, 0),
        prod(xm(pp)?, ym(pm)?)
            .add(&prod(xm(pm)?, ym(pp)?).scale(&r))
            .sub(&prod(xm(pm)?, ym(mm)?).scale(&inv))
            .scale_rat(&-Rat::one()),
    );
    t.insert((1, 1), prod(xm(pp)?, ym(pp)?).sub(&prod(xm(pm)?, ym(mp)?).scale(&inv)));
    Ok(TwistedModule::from_fn(pair, m.dim, "bridge B0 from Y⁻(2)", |i, j| t[&(i, j)].clone()))
}

/// `X(so₄, so₄^ρ)^tw` from a pair of Olshanskii modules acting on `W° ⊗ W•`:
/// `s_ij(u) = ε_iε_j·s°_{a(i)a(j)}(ũ)·[K_{a(j)a(j)}] ⊗ s•_{b(i)b(j)}(ũ)`, `ũ = u − ½`,
/// with `v₋₂ = (−1,−1)`, `v₋₁ = (−1,1)`, `v₁ = (1,−1)`, `v₂ = (1,1)` and
/// `ε = (1,1,1,−1)`. The factor `K = E₁₁ − E₋₁,₋₁` is present exactly for DIII
/// (`m°` from `Y⁺(2)`); D0 uses `Y⁻(2)` twice.
pub fn bridge_so4(m_circ: &OlshanskiiModule, m_bullet: &OlshanskiiModule) -> Result<TwistedModule, TwError> {
    if m_bullet.sign != -1 {
        return Err(TwError::Config("the second factor must be a Y⁻(2) module".into()));
    }
    let tag = if m_circ.sign > 0 { PairTag::DIII } else { PairTag::D0 };
    let pair = PairType::simple(tag, 4)?;
    let a = |i: i32| if i < 0 { -1 } else { 1 };
    let b = |i: i32| if i.abs() == 1 { -i.signum() } else { i.signum() };
    let eps = |i: i32| if i == 2 { -1 } else { 1 };
    let sh = -half();
    let d = m_circ.dim * m_bullet.dim;
    let mut t = std::collections::HashMap::new();
    for i in [-2, -1, 1, 2] {
        for j in [-2, -1, 1, 2] {
            let mut o = m_circ.s(a(i), a(j)).shift(&sh);
            if tag == PairTag::DIII && a(j) < 0 {
                o = o.scale_rat(&-Rat::one());
            }
            let bl = m_bullet.s(b(i), b(j)).shift(&sh);
            t.insert((i, j), o.kron(&bl).scale_rat(&ri(eps(i) * eps(j))));
        }
    }
    Ok(TwistedModule::from_fn(pair, d, format!("bridge {tag} from Olshanskii modules"), |i, j| t[&(i, j)].clone()))
}

/// `X(g_N)`-module on `ℂᴺ` with `T(u) = R(u − a)`: `t_ij(u)` is the `(i,j)`
/// block `δ_ij I − E_ji/(u−a) + θ_ij E₋ᵢ,₋ⱼ/(u−a−κ)`. The RTT relation is
/// verified before returning.
pub fn vector_eval_x(big_n: usize, family: Family, a: &Rat) -> Result<XModule, TwError> {
    let kap = crate::rk::kappa(big_n, family);
    let idx = crate::tensor::IndexSet::signed(big_n)?;
    let p1 = pole(a.clone());
    let p2 = pole(a + &kap);
    let m = XModule::from_fn(big_n, family, big_n, |i, j| {
        let mut e = Mat::zeros(big_n, big_n);
        e.set(idx.pos(j), idx.pos(i), ri(-1));
        let mut q = Mat::zeros(big_n, big_n);
        q.set(idx.pos(-i), idx.pos(-j), ri(family.theta(i, j)));
        let mut o = OpMat::from_mat_times(&e, &p1).add(&OpMat::from_mat_times(&q, &p2));
        if i == j {
            o = o.add(&OpMat::identity(big_n));
        }
        o
    })?;
    let rep = verify_x(&m);
    if !rep.pass {
        return Err(TwError::Relation(format!("vector evaluation module: {rep}")));
    }
    Ok(m)
}

/// Coproduct action on `W ⊗ V`:
/// `s_ij(u) ↦ Σ_{a,b} θ_jb t_ia(u−κ/2) t_{−j,−b}(−u+κ/2) ⊗ s_ab(u)`.
pub fn tensor_twisted(x: &XModule, v: &TwistedModule) -> Result<TwistedModule, TwError> {
    if x.big_n != v.pair.big_n || x.family != v.pair.family() {
        return Err(TwError::Shape(format!(
            "X(g_N) module (N = {}, {:?}) does not match {}",
            x.big_n, x.family, v.pair
        )));
    }
    let kap = v.pair.kappa();
    let k2 = &kap * half();
    let labels = v.labels();
    let fam = x.family;
    let tl = |i: i32, a: i32| x.t(i, a).shift(&-k2.clone());
    let tr = |j: i32, b: i32| x.t(-j, -b).reflect(&k2);
    let d = x.dim * v.dim;
    let mut t = std::collections::HashMap::new();
    for &i in &labels {
        for &j in &labels {
            let mut acc = OpMat::zero(d);
            for &a in &labels {
                let ta = tl(i, a);
                if ta.is_zero() {
                    continue;
                }
                for &b in &labels {
                    let sab = v.s(a, b);
                    if sab.is_zero() {
                        continue;
                    }
                    let w = ta.mul(&tr(j, b));
                    if w.is_zero() {
                        continue;
                    }
                    acc = acc.add(&w.scale_rat(&ri(fam.theta(j, b))).kron(sab));
                }
            }
            t.insert((i, j), acc);
        }
    }
    Ok(TwistedModule::from_fn(v.pair, d, format!("X(g_N)-module ⊗ ({})", v.note), |i, j| t[&(i, j)].clone()))
}

/// `true` when every operator is finite at infinity with value `g_ij·I`.
pub fn has_standard_limit(m: &TwistedModule) -> bool {
    let labels = m.labels();
    labels.iter().all(|&i| {
        labels.iter().all(|&j| match m.s(i, j).value_at_infinity() {
            Some(v) => {
                let want = if i == j { ri(m.pair.g_const(i)) } else { Rat::zero() };
                v == Mat::scalar(m.dim, &want)
            }
            None => false,
        })
    })
}

/// The reference set of concrete modules: `sp₂` evaluation modules (C0 and CI),
/// `so₃` and `so₄` evaluation modules, and the one-dimensional modules of
/// every pair with `N ≤ 6` (plus the `a`-deformed ones for CI and DIII).
pub fn catalog() -> Result<Vec<TwistedModule>, TwError> {
    let mut out = Vec::new();
    for mu in [0, -1, -2, -3] {
        out.push(eval_sp2(Sp2Variant::C0, &ri(mu))?);
    }
    for mu in [ri(0), ri(3), rq(-5, 2), rq(1, 3)] {
        out.push(eval_sp2(Sp2Variant::CI, &mu)?);
    }
    for (a, b) in [(0, 1), (-1, 2), (-1, 1), (-3, 2), (-2, 1)] {
        out.push(eval_so3(&rq(a, b))?);
    }
    let so4 = [
        (So4Variant::D0, ri(0), ri(0)),
        (So4Variant::D0, ri(0), ri(-1)),
        (So4Variant::D0, ri(1), ri(-1)),
        (So4Variant::D0, ri(-1), ri(-1)),
        (So4Variant::DIII, ri(0), ri(0)),
        (So4Variant::DIII, ri(1), ri(0)),
        (So4Variant::DIII, rq(1, 2), rq(1, 2)),
        (So4Variant::DIII, rq(3, 2), rq(-1, 2)),
    ];
    for (v, a, b) in so4 {
        out.push(eval_so4(v, &a, &b)?);
    }
    for pair in crate::rk::supported_pairs(6).into_iter().filter(|p| p.tag != PairTag::AIII) {
        out.push(onedim_module(&pair, None)?);
        if matches!(pair.tag, PairTag::CI | PairTag::DIII) {
            out.push(onedim_module(&pair, Some(&rq(2, 3)))?);
        }
    }
    Ok(out)
}

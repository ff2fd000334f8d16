//! JSON forms of exact objects. Rationals are decimal strings (`"-3/4"`),
//! polynomials are ascending coefficient lists, rational functions are
//! `{"num": [...], "den": [...]}`; a bare list is accepted as a polynomial.

use serde::de::{DeserializeOwned, Error as _};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::TwError;
use crate::exact::{parse_rat, Poly, Rat, RatFunc, TruncSeries};
use crate::reps::{OpMat, TwistedModule, XModule};
use crate::tensor::{Family, IndexSet};
use crate::rk::PairType;

/// `#[serde(with = "rat_str")]` for a `Rat` field.
pub mod rat_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let t = RatRepr::deserialize(d)?;
        t.into_rat().map_err(D::Error::custom)
    }
}

/// `#[serde(with = "opt_rat")]` for an `Option<Rat>` field.
pub mod opt_rat {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&r.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rat>, D::Error> {
        Option::<RatRepr>::deserialize(d)?
            .map(|t| t.into_rat().map_err(D::Error::custom))
            .transpose()
    }
}

/// A rational written as a string or a JSON integer.
#[derive(Deserialize)]
#[serde(untagged)]
enum RatRepr {
    Str(String),
    Int(i64),
}

impl RatRepr {
    fn into_rat(self) -> Result<Rat, TwError> {
        match self {
            RatRepr::Str(s) => parse_rat(&s),
            RatRepr::Int(k) => Ok(crate::exact::ri(k)),
        }
    }
}

fn rats_out(c: &[Rat]) -> Vec<String> {
    c.iter().map(|r| r.to_string()).collect()
}

fn rats_in<E: serde::de::Error>(v: Vec<RatRepr>) -> Result<Vec<Rat>, E> {
    v.into_iter().map(|r| r.into_rat().map_err(E::custom)).collect()
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        rats_out(self.coeffs()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Poly::new(rats_in(Vec::<RatRepr>::deserialize(d)?)?))
    }
}

#[derive(Serialize)]
struct RatFuncOut<'a> {
    num: &'a Poly,
    den: &'a Poly,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RatFuncIn {
    Frac { num: Poly, den: Poly },
    Poly(Poly),
    Const(RatRepr),
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RatFuncOut { num: self.num(), den: self.den() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match RatFuncIn::deserialize(d)? {
            RatFuncIn::Frac { num, den } => {
                if den.is_zero() {
                    return Err(D::Error::custom("rational function with zero denominator"));
                }
                Ok(RatFunc::new(num, den))
            }
            RatFuncIn::Poly(p) => Ok(RatFunc::from_poly(p)),
            RatFuncIn::Const(c) => Ok(RatFunc::constant(c.into_rat().map_err(D::Error::custom)?)),
        }
    }
}

impl Serialize for TruncSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        rats_out(self.coeffs()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let c = rats_in(Vec::<RatRepr>::deserialize(d)?)?;
        if c.is_empty() {
            return Err(D::Error::custom("empty series"));
        }
        Ok(TruncSeries::new(c))
    }
}

#[derive(Serialize, Deserialize)]
struct OpMatRepr {
    dim: usize,
    /// Row-major.
    entries: Vec<RatFunc>,
}

impl Serialize for OpMat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        OpMatRepr { dim: self.dim(), entries: self.entries().to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for OpMat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = OpMatRepr::deserialize(d)?;
        if r.entries.len() != r.dim * r.dim {
            return Err(D::Error::custom(format!("{} entries for dimension {}", r.entries.len(), r.dim)));
        }
        Ok(OpMat::from_fn(r.dim, |i, j| r.entries[i * r.dim + j].clone()))
    }
}

#[derive(Serialize, Deserialize)]
struct Entry {
    i: i32,
    j: i32,
    s: OpMat,
}

#[derive(Serialize, Deserialize)]
struct ModuleRepr {
    pair: PairType,
    dim: usize,
    #[serde(default)]
    note: String,
    /// Every `s_ij(u)`; missing pairs are zero.
    ops: Vec<Entry>,
}

impl Serialize for TwistedModule {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let labels = self.labels();
        let ops = labels
            .iter()
            .flat_map(|&i| labels.iter().map(move |&j| (i, j)))
            .filter(|&(i, j)| !self.s(i, j).is_zero())
            .map(|(i, j)| Entry { i, j, s: self.s(i, j).clone() })
            .collect();
        ModuleRepr { pair: self.pair, dim: self.dim, note: self.note.clone(), ops }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TwistedModule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = ModuleRepr::deserialize(d)?;
        r.pair.validated().map_err(D::Error::custom)?;
        let labels = r.pair.index_set().labels();
        for e in &r.ops {
            if !labels.contains(&e.i) || !labels.contains(&e.j) {
                return Err(D::Error::custom(format!("label ({}, {}) outside the index set", e.i, e.j)));
            }
            if e.s.dim() != r.dim {
                return Err(D::Error::custom(format!("s_{},{} has dimension {}", e.i, e.j, e.s.dim())));
            }
        }
        Ok(TwistedModule::from_fn(r.pair, r.dim, r.note, |i, j| {
            r.ops
                .iter()
                .find(|e| e.i == i && e.j == j)
                .map(|e| e.s.clone())
                .unwrap_or_else(|| OpMat::zero(r.dim))
        }))
    }
}

#[derive(Serialize, Deserialize)]
struct XModuleRepr {
    #[serde(rename = "N")]
    big_n: usize,
    family: Family,
    dim: usize,
    /// Every `t_ij(u)`; missing pairs are zero.
    ops: Vec<Entry>,
}

impl Serialize for XModule {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let labels = self.index_set().labels();
        let ops = labels
            .iter()
            .flat_map(|&i| labels.iter().map(move |&j| (i, j)))
            .filter(|&(i, j)| !self.t(i, j).is_zero())
            .map(|(i, j)| Entry { i, j, s: self.t(i, j).clone() })
            .collect();
        XModuleRepr { big_n: self.big_n, family: self.family, dim: self.dim, ops }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for XModule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = XModuleRepr::deserialize(d)?;
        let labels = IndexSet::signed(r.big_n).map_err(D::Error::custom)?.labels();
        for e in &r.ops {
            if !labels.contains(&e.i) || !labels.contains(&e.j) || e.s.dim() != r.dim {
                return Err(D::Error::custom(format!("bad entry t_{},{}", e.i, e.j)));
            }
        }
        XModule::from_fn(r.big_n, r.family, r.dim, |i, j| {
            r.ops
                .iter()
                .find(|e| e.i == i && e.j == j)
                .map(|e| e.s.clone())
                .unwrap_or_else(|| OpMat::zero(r.dim))
        })
        .map_err(D::Error::custom)
    }
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("exact objects always serialize")
}

pub fn from_json<T: DeserializeOwned>(s: &str) -> Result<T, TwError> {
    serde_json::from_str(s).map_err(|e| TwError::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ri, rq};

    #[test]
    fn ratfunc_forms() {
        let f: RatFunc = from_json(r#"{"num": ["1", "-1/2"], "den": [3, 1]}"#).unwrap();
        assert_eq!(f, RatFunc::new(Poly::new(vec![ri(1), rq(-1, 2)]), Poly::from_ints(&[3, 1])));
        let back: RatFunc = from_json(&to_json(&f)).unwrap();
        assert_eq!(back, f);
        let p: RatFunc = from_json(r#"["2", "0", "1"]"#).unwrap();
        assert_eq!(p, RatFunc::from_poly(Poly::from_ints(&[2, 0, 1])));
        let c: RatFunc = from_json(r#""-7/3""#).unwrap();
        assert_eq!(c, RatFunc::constant(rq(-7, 3)));
        assert!(from_json::<RatFunc>(r#"{"num": [1], "den": []}"#).is_err());
    }

    #[test]
    fn rationals_are_strings() {
        let s = to_json(&Poly::new(vec![rq(1, 3), ri(-2)]));
        assert!(s.contains("\"1/3\"") && s.contains("\"-2\""));
    }

    #[test]
    fn modules_round_trip() {
        let x = crate::reps::vector_eval_x(4, Family::Symplectic, &rq(1, 3)).unwrap();
        let back: XModule = from_json(&to_json(&x)).unwrap();
        assert_eq!(back, x);
        let m = crate::reps::eval_so3(&rq(-1, 2)).unwrap();
        let back: TwistedModule = from_json(&to_json(&m)).unwrap();
        assert_eq!(back, m);
    }
}

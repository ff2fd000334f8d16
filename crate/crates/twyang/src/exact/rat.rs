use num::{BigInt, BigRational};

use crate::error::TwError;

/// Arbitrary-precision rational; `num` keeps it reduced with a positive denominator.
pub type Rat = BigRational;

/// Integer as a rational.
pub fn ri(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a rational. Panics on `d == 0`.
pub fn rq(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"7"`, `"-3/4"` (decimal integers, optional slash).
pub fn parse_rat(s: &str) -> Result<Rat, TwError> {
    let t = s.trim();
    let bad = || TwError::Parse(format!("not a rational: {s:?}"));
    match t.split_once('/') {
        None => t.parse::<BigInt>().map(Rat::from_integer).map_err(|_| bad()),
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rat::new(a, b))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "-5", "3/4", "-7/12"] {
            assert_eq!(parse_rat(s).unwrap().to_string(), s);
        }
        assert_eq!(parse_rat("6/8").unwrap(), rq(3, 4));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};

/// Block count and replication numbers a 3-(v,k,1) design must have.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DesignParams {
    pub v: u64,
    pub k: u64,
    /// `v(v-1)(v-2) / (k(k-1)(k-2))`.
    #[serde(serialize_with = "crate::serde_util::ratio")]
    pub blocks: BigRational,
    /// Blocks through a point, `(v-1)(v-2) / ((k-1)(k-2))`.
    #[serde(serialize_with = "crate::serde_util::ratio")]
    pub lambda1: BigRational,
    /// Blocks through two points, `(v-2) / (k-2)`.
    #[serde(serialize_with = "crate::serde_util::ratio")]
    pub lambda2: BigRational,
    pub all_integral: bool,
}

fn int(x: u64) -> BigInt {
    BigInt::from(x)
}

pub fn design_params(v: u64, k: u64) -> Result<DesignParams> {
    if k <= 3 || k >= v {
        return Err(Error::InvalidParameters(format!(
            "design parameters need 3 < k < v, got v={v}, k={k}"
        )));
    }
    let blocks = BigRational::new(int(v) * int(v - 1) * int(v - 2), int(k) * int(k - 1) * int(k - 2));
    let lambda1 = BigRational::new(int(v - 1) * int(v - 2), int(k - 1) * int(k - 2));
    let lambda2 = BigRational::new(int(v - 2), int(k - 2));
    let all_integral = [&blocks, &lambda1, &lambda2].iter().all(|r| r.denom().is_one());
    Ok(DesignParams {
        v,
        k,
        blocks,
        lambda1,
        lambda2,
        all_integral,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn known_parameter_sets() {
        let p = design_params(10, 4).unwrap();
        assert_eq!((p.blocks.clone(), p.lambda1.clone(), p.lambda2.clone()), (r(30, 1), r(12, 1), r(4, 1)));
        assert!(p.all_integral);
        let p = design_params(56, 11).unwrap();
        assert_eq!((p.blocks.clone(), p.lambda1.clone(), p.lambda2.clone()), (r(168, 1), r(33, 1), r(6, 1)));
        let p = design_params(15, 4).unwrap();
        assert_eq!(p.lambda2, r(13, 2));
        assert!(!p.all_integral);
    }

    #[test]
    fn bounds() {
        assert!(design_params(10, 3).is_err());
        assert!(design_params(10, 10).is_err());
    }

    #[test]
    fn serializes_as_strings() {
        let json = serde_json::to_value(design_params(15, 4).unwrap()).unwrap();
        assert_eq!(json["lambda2"], "13/2");
        assert_eq!(json["blocks"], "455/4");
    }
}

use serde::{Deserialize, Serialize};

use super::{ExoticRingSpec, TabulatedRing};
use crate::error::Result;

/// Serializable description of a ring construction.
///
/// ```
/// use ringsteps::ring::RingDescriptor;
/// let d: RingDescriptor = serde_json::from_str(r#"{"kind":"zq_power","q":2,"n":4}"#).unwrap();
/// assert_eq!(d.build().unwrap().size(), 16);
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingDescriptor {
    ZqPower { q: u32, n: u32 },
    Boolean { x_size: u32 },
    PolyQuotient { k: u32, l: u32, kp: u32 },
    Exotic { a: u32, b: u32 },
    Zero { modulus: u32, dim: u32 },
}

impl RingDescriptor {
    pub fn build(&self) -> Result<TabulatedRing> {
        match *self {
            RingDescriptor::ZqPower { q, n } => TabulatedRing::zq_power(q, n),
            RingDescriptor::Boolean { x_size } => TabulatedRing::boolean(x_size),
            RingDescriptor::PolyQuotient { k, l, kp } => TabulatedRing::poly_quotient(k, l, kp),
            RingDescriptor::Exotic { a, b } => TabulatedRing::exotic(ExoticRingSpec { a, b }),
            RingDescriptor::Zero { modulus, dim } => TabulatedRing::zero_ring(modulus, dim),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for d in [
            RingDescriptor::ZqPower { q: 3, n: 2 },
            RingDescriptor::Boolean { x_size: 3 },
            RingDescriptor::PolyQuotient { k: 2, l: 3, kp: 1 },
            RingDescriptor::Exotic { a: 1, b: 1 },
            RingDescriptor::Zero { modulus: 2, dim: 2 },
        ] {
            let s = serde_json::to_string(&d).unwrap();
            assert_eq!(serde_json::from_str::<RingDescriptor>(&s).unwrap(), d);
            assert!(d.build().is_ok());
        }
    }

    #[test]
    fn unknown_kind_rejected() {
        assert!(serde_json::from_str::<RingDescriptor>(r#"{"kind":"matrix","n":2}"#).is_err());
    }
}

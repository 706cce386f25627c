use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{approximate, CycNumber};

/// Digits carried in the `approx` field of serialized values.
pub const SERIAL_DIGITS: usize = 12;

impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs: Vec<String> = self.coeffs().iter().map(|c| c.to_string()).collect();
        let mut st = s.serialize_struct("CycNumber", 3)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("coeffs", &coeffs)?;
        st.serialize_field("approx", &approximate(self, SERIAL_DIGITS))?;
        st.end()
    }
}

#[derive(Deserialize)]
struct Raw {
    order: u32,
    coeffs: Vec<String>,
}

pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

impl<'de> Deserialize<'de> for CycNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Raw::deserialize(d)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|c| {
                parse_rational(c).ok_or_else(|| D::Error::custom(format!("bad rational '{c}'")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        CycNumber::from_rational_coeffs(raw.order, &coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let x = CycNumber::sqrt2() * CycNumber::from_ratio(3, 4) - CycNumber::from_integer(1);
        let j = serde_json::to_string(&x).unwrap();
        assert_eq!(
            j,
            r#"{"order":8,"coeffs":["-1","3/4","0","-3/4"],"approx":"0.060660171780"}"#
        );
        let y: CycNumber = serde_json::from_str(&j).unwrap();
        assert_eq!(x, y);
    }
}

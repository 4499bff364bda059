//! JSON fan files: `{"rank": n, "rays": [[int,...],...], "max_cones": [[int,...],...]}`.
//!
//! Ray coordinates are arbitrary-precision integers; rationals elsewhere in
//! reports are written as `"p/q"` strings.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

use crate::error::{Error, Result};
use crate::fan::{Fan, LatticeVector};
use crate::Q;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanFile {
    pub rank: usize,
    pub rays: Vec<Vec<Number>>,
    pub max_cones: Vec<Vec<usize>>,
}

impl FanFile {
    pub fn from_fan(fan: &Fan) -> Self {
        Self {
            rank: fan.rank(),
            rays: fan
                .rays()
                .iter()
                .map(|r| {
                    r.coords()
                        .iter()
                        .map(|x| Number::from_str(&x.to_string()).expect("integer literal"))
                        .collect()
                })
                .collect(),
            max_cones: fan.max_cone_lists(),
        }
    }

    pub fn to_fan(&self) -> Result<Fan> {
        let mut rays = Vec::with_capacity(self.rays.len());
        for (i, r) in self.rays.iter().enumerate() {
            let coords = r
                .iter()
                .enumerate()
                .map(|(j, x)| {
                    BigInt::from_str(&x.to_string())
                        .map_err(|_| Error::Parse(format!("rays[{i}][{j}]: `{x}` is not an integer")))
                })
                .collect::<Result<Vec<_>>>()?;
            rays.push(LatticeVector(coords));
        }
        Fan::new(self.rank, rays, self.max_cones.clone())
    }
}

/// Parse a fan file; malformed JSON reports its line and column.
pub fn parse_fan(text: &str) -> Result<Fan> {
    let file: FanFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_fan()
}

pub fn fan_to_json(fan: &Fan) -> String {
    serde_json::to_string(&FanFile::from_fan(fan)).expect("fan file serializes")
}

pub fn rational_to_json(x: &Q) -> Value {
    Value::String(x.to_string())
}

pub fn rational_from_str(s: &str) -> Result<Q> {
    Q::from_str(s.trim()).map_err(|_| Error::Parse(format!("`{s}` is not a rational")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use proptest::prelude::*;

    #[test]
    fn p2_text() {
        let text = fan_to_json(&catalog::projective(2));
        assert_eq!(text, r#"{"rank":2,"rays":[[1,0],[0,1],[-1,-1]],"max_cones":[[0,1],[0,2],[1,2]]}"#);
    }

    #[test]
    fn big_coordinates_survive() {
        let text = r#"{"rank":2,"rays":[[1,0],[123456789012345678901234567890,1]],"max_cones":[[0,1]]}"#;
        let fan = parse_fan(text).unwrap();
        assert_eq!(fan_to_json(&fan), text);
    }

    #[test]
    fn garbage_is_a_parse_error() {
        assert!(matches!(parse_fan("{\"rank\": 2,"), Err(Error::Parse(_))));
        assert!(matches!(parse_fan(r#"{"rank":1,"rays":[[1.5]],"max_cones":[[0]]}"#), Err(Error::Parse(_))));
    }

    proptest! {
        #[test]
        fn chain_fans_round_trip(seed in 0u64..500, steps in 0usize..5) {
            let start = catalog::by_name("p1xp1").unwrap();
            let chain = crate::subdivision::random_chain(seed, &start, steps).unwrap();
            let fan = chain.last().map_or(start, |s| s.fan.clone());
            let text = fan_to_json(&fan);
            let back = parse_fan(&text).unwrap();
            prop_assert_eq!(&back, &fan);
            prop_assert_eq!(fan_to_json(&back), text);
        }
    }
}

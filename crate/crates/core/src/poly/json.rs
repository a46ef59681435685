//! JSON forms of [`UniPoly`] and [`BiPoly`].
//!
//! Coefficients are `"numerator/denominator"` strings keyed by exponent
//! (`"i"` for one variable, `"i,j"` for two), emitted in increasing exponent
//! order so that output is byte-stable.

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::poly::{BiPoly, UniPoly};
use crate::rational::{parse_rational, to_fraction_string};

struct UniCoeffs<'a>(&'a UniPoly);

impl Serialize for UniCoeffs<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        for (i, c) in self.0.terms() {
            map.serialize_entry(&i.to_string(), &to_fraction_string(c))?;
        }
        map.end()
    }
}

struct BiCoeffs<'a>(&'a BiPoly);

impl Serialize for BiCoeffs<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        for ((i, j), c) in self.0.terms() {
            map.serialize_entry(&format!("{i},{j}"), &to_fraction_string(c))?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct UniOut<'a> {
    var: String,
    coeffs: UniCoeffs<'a>,
}

#[derive(Deserialize)]
struct UniIn {
    #[serde(default = "default_x")]
    var: String,
    coeffs: BTreeMap<String, String>,
}

#[derive(Serialize)]
struct BiOut<'a> {
    vars: [String; 2],
    coeffs: BiCoeffs<'a>,
}

#[derive(Deserialize)]
struct BiIn {
    #[serde(default = "default_xy")]
    vars: [String; 2],
    coeffs: BTreeMap<String, String>,
}

fn default_x() -> String {
    "x".into()
}

fn default_xy() -> [String; 2] {
    ["x".into(), "y".into()]
}

fn single_char<E: serde::de::Error>(s: &str) -> Result<char, E> {
    let mut it = s.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(E::custom(format!("variable name must be one character, got {s:?}"))),
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        UniOut {
            var: self.var().to_string(),
            coeffs: UniCoeffs(self),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = UniIn::deserialize(d)?;
        let mut entries = Vec::new();
        for (k, v) in &raw.coeffs {
            let i: usize = k.parse().map_err(D::Error::custom)?;
            let c = parse_rational(v).map_err(D::Error::custom)?;
            entries.push((i, c));
        }
        let len = entries.iter().map(|(i, _)| i + 1).max().unwrap_or(0);
        let mut coeffs = vec![num_traits::Zero::zero(); len];
        for (i, c) in entries {
            coeffs[i] = c;
        }
        Ok(UniPoly::new(coeffs).with_var(single_char(&raw.var)?))
    }
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (x, y) = self.vars();
        BiOut {
            vars: [x.to_string(), y.to_string()],
            coeffs: BiCoeffs(self),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = BiIn::deserialize(d)?;
        let mut terms = Vec::new();
        for (k, v) in &raw.coeffs {
            let (i, j) = k
                .split_once(',')
                .ok_or_else(|| D::Error::custom(format!("bad exponent pair {k:?}")))?;
            let i: usize = i.trim().parse().map_err(D::Error::custom)?;
            let j: usize = j.trim().parse().map_err(D::Error::custom)?;
            terms.push(((i, j), parse_rational(v).map_err(D::Error::custom)?));
        }
        Ok(BiPoly::from_terms(terms).with_vars(single_char(&raw.vars[0])?, single_char(&raw.vars[1])?))
    }
}

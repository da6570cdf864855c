//! Colored Jones polynomials of knot diagrams and the degree data derived
//! from them: quadratic quasi-polynomial models of the extreme degrees,
//! Jones period, Jones slopes, state-surface invariants of adequate diagrams,
//! and the slope/characterization checks built on top of that data.
//!
//! The pipeline is
//! [`diagram`] → [`engine`] → [`quasifit`] → [`checks`], with [`adequacy`]
//! supplying closed-form models for adequate diagrams and [`pretzel`]
//! generating 3-string pretzel diagrams.

pub mod adequacy;
pub mod checks;
pub mod diagram;
pub mod engine;
pub mod polynomial;
pub mod pretzel;
pub mod quasifit;
pub mod table;

pub use adequacy::{Resolution, State, StateSurfaceData};
pub use checks::{CheckReport, Slope, Verdict};
pub use diagram::{Crossing, CrossingSign, DiagramError, KnotDiagram};
pub use engine::{ColoredJonesSequence, Engine, EngineError, ResourceLimits};
pub use polynomial::{DegreePair, LaurentPoly, PolyError, Variable};
pub use quasifit::{DegreeModel, FitError, QuasiPolynomial};

/// Exact rationals serialized as fraction strings (`"-1/2"`, `"4"`).
pub(crate) mod ratio_serde {
    use num_rational::Rational64;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn to_string(r: &Rational64) -> String {
        if *r.denom() == 1 {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }

    pub fn parse(s: &str) -> Result<Rational64, String> {
        let s = s.trim();
        let parse_int = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| format!("bad fraction {s:?}: {e}"))
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let d = parse_int(d)?;
                if d == 0 {
                    return Err(format!("zero denominator in {s:?}"));
                }
                Ok(Rational64::new(parse_int(n)?, d))
            }
            None => Ok(Rational64::from_integer(parse_int(s)?)),
        }
    }

    pub fn serialize<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational64, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rational64], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&to_string(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational64>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter()
                .map(|s| parse(s).map_err(serde::de::Error::custom))
                .collect()
        }
    }

    pub mod set {
        use super::*;
        use std::collections::BTreeSet;

        pub fn serialize<S: Serializer>(v: &BTreeSet<Rational64>, s: S) -> Result<S::Ok, S::Error> {
            super::vec::serialize(&v.iter().copied().collect::<Vec<_>>(), s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> Result<BTreeSet<Rational64>, D::Error> {
            Ok(super::vec::deserialize(d)?.into_iter().collect())
        }
    }
}

pub use ratio_serde::{parse as parse_fraction, to_string as fraction_string};

//! Kauffman bracket, Jones polynomial and unreduced colored Jones polynomial.
//!
//! `J_K(n)` is evaluated as a `U_q(sl_2)` state sum on an upright drawing of
//! the diagram (see [`rotation`]), then framing-corrected by the writhe. The
//! normalization is `J_unknot(n) = [n]`, so `J_K(1) = 1` and
//! `J_K(2) = [2]·V_K`.

mod bracket;
mod dense;
mod rmatrix;
mod rotation;
mod statesum;

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::RwLock;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::KnotDiagram;
use crate::polynomial::{DegreePair, LaurentPoly, Variable};

use dense::{Coeff, DensePoly};
use rmatrix::BraidingTables;
use statesum::StateSumError;

/// Sign of the pivotal weight on an edge of rotation number `w`.
const ROTATION_SIGN: i64 = -1;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("color must be at least 1")]
    ZeroColor,
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("diagram is not planar; no upright drawing exists")]
    NonPlanar,
    #[error("cache file: {0}")]
    Cache(String),
}

/// Caps that make exponential cases fail loudly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceLimits {
    pub max_n: u32,
    /// Bound on `c(D)·(n−1)²`, the size of the equivalent cabled diagram.
    pub max_cabled_crossings: u64,
    /// Bound on the number of simultaneous partial states.
    pub max_states: usize,
}

impl Default for ResourceLimits {
    fn default() -> Self {
        ResourceLimits {
            max_n: 10,
            max_cabled_crossings: 1500,
            max_states: 4_000_000,
        }
    }
}

impl ResourceLimits {
    pub fn with_max_n(mut self, max_n: u32) -> Self {
        self.max_n = max_n;
        self
    }

    fn admit(&self, d: &KnotDiagram, n: u32) -> Result<(), EngineError> {
        if n == 0 {
            return Err(EngineError::ZeroColor);
        }
        if n > self.max_n {
            return Err(EngineError::ResourceLimit(format!(
                "n = {n} exceeds max_n = {}",
                self.max_n
            )));
        }
        let cabled = d.crossing_count() as u64 * (n as u64 - 1).pow(2);
        if cabled > self.max_cabled_crossings {
            return Err(EngineError::ResourceLimit(format!(
                "{} crossings at n = {n} give {cabled} cabled crossings (budget {})",
                d.crossing_count(),
                self.max_cabled_crossings
            )));
        }
        Ok(())
    }
}

/// Colored Jones values and degrees of one diagram for `n = 1..=n_max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColoredJonesSequence {
    pub knot: String,
    pub values: BTreeMap<u32, LaurentPoly>,
    pub degrees: BTreeMap<u32, DegreePair>,
}

impl ColoredJonesSequence {
    pub fn degree_list(&self) -> Vec<(u32, DegreePair)> {
        self.degrees.iter().map(|(&n, &d)| (n, d)).collect()
    }
}

pub fn kauffman_bracket(d: &KnotDiagram) -> LaurentPoly {
    bracket::bracket(d)
}

/// Reduced Jones polynomial in `q = t^{1/2}` (unknot ↦ 1).
pub fn jones_polynomial(d: &KnotDiagram) -> LaurentPoly {
    bracket::jones(d)
}

/// Uncached colored Jones polynomial under the given limits.
pub fn colored_jones(
    d: &KnotDiagram,
    n: u32,
    limits: &ResourceLimits,
) -> Result<LaurentPoly, EngineError> {
    limits.admit(d, n)?;
    if n == 1 {
        return Ok(LaurentPoly::one(Variable::Q));
    }
    if d.crossing_count() == 0 {
        return Ok(LaurentPoly::quantum_integer(n));
    }
    let rotation = rotation::rotation_numbers(d).map_err(|_| EngineError::NonPlanar)?;
    let order = statesum::contraction_order(d);
    let raw = match raw_sum::<i128>(d, n, &rotation, &order, limits.max_states) {
        Err(StateSumError::Overflow) => {
            raw_sum::<BigInt>(d, n, &rotation, &order, limits.max_states)
        }
        other => other,
    }
    .map_err(|e| match e {
        StateSumError::TooManyStates(k) => EngineError::ResourceLimit(format!(
            "{k} partial states exceed max_states = {}",
            limits.max_states
        )),
        StateSumError::Overflow => unreachable!("big integers do not overflow"),
    })?;
    // framing: a positive curl contributes v^{−(n²−1)}
    let framing = d.writhe() * (n as i64 * n as i64 - 1);
    let v = raw.shift(framing);
    let terms: Vec<(i64, BigInt)> = v
        .terms()
        .map(|(e, c)| {
            assert!(e % 2 == 0, "odd power of q^(1/2) in a knot invariant");
            (e / 2, c.clone())
        })
        .collect();
    Ok(LaurentPoly::from_terms(Variable::Q, terms))
}

fn raw_sum<C: Coeff>(
    d: &KnotDiagram,
    n: u32,
    rotation: &[i64],
    order: &[usize],
    max_states: usize,
) -> Result<LaurentPoly, StateSumError> {
    let tables = BraidingTables::<C>::new(n as usize);
    let p: DensePoly<C> =
        statesum::state_sum(d, &tables, rotation, ROTATION_SIGN, order, max_states)?;
    Ok(p.to_laurent(Variable::Q))
}

/// Caching front end. The cache is keyed by `(content hash, n)` and is safe
/// under concurrent insertion.
#[derive(Debug, Default)]
pub struct Engine {
    limits: ResourceLimits,
    cache: RwLock<HashMap<(String, u32), LaurentPoly>>,
}

impl Engine {
    pub fn new(limits: ResourceLimits) -> Self {
        Engine {
            limits,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn limits(&self) -> &ResourceLimits {
        &self.limits
    }

    pub fn colored_jones(&self, d: &KnotDiagram, n: u32) -> Result<LaurentPoly, EngineError> {
        let key = (d.content_hash(), n);
        if let Some(p) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(p.clone());
        }
        let p = colored_jones(d, n, &self.limits)?;
        self.cache
            .write()
            .expect("cache lock")
            .insert(key, p.clone());
        Ok(p)
    }

    /// Values for `n = 1..=n_max`, computed in parallel.
    pub fn sequence(
        &self,
        d: &KnotDiagram,
        n_max: u32,
    ) -> Result<ColoredJonesSequence, EngineError> {
        if n_max == 0 {
            return Err(EngineError::ZeroColor);
        }
        self.limits.admit(d, n_max)?;
        let values: Vec<(u32, LaurentPoly)> = (1..=n_max)
            .into_par_iter()
            .map(|n| self.colored_jones(d, n).map(|p| (n, p)))
            .collect::<Result<_, _>>()?;
        let degrees = values
            .iter()
            .map(|(n, p)| (*n, p.degrees().expect("colored Jones is nonzero")))
            .collect();
        Ok(ColoredJonesSequence {
            knot: d.name().map(str::to_owned).unwrap_or_else(|| d.to_pd()),
            values: values.into_iter().collect(),
            degrees,
        })
    }

    pub fn degree_sequence(
        &self,
        d: &KnotDiagram,
        n_max: u32,
    ) -> Result<Vec<(u32, DegreePair)>, EngineError> {
        Ok(self.sequence(d, n_max)?.degree_list())
    }

    pub fn cached_entries(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }

    /// Merges entries from a JSON cache file; a missing file is not an error.
    pub fn load_cache(&self, path: &Path) -> Result<usize, EngineError> {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(EngineError::Cache(e.to_string())),
        };
        let map: BTreeMap<String, LaurentPoly> =
            serde_json::from_str(&text).map_err(|e| EngineError::Cache(e.to_string()))?;
        let mut cache = self.cache.write().expect("cache lock");
        for (k, v) in &map {
            let (hash, n) = k
                .rsplit_once(':')
                .ok_or_else(|| EngineError::Cache(format!("bad key {k:?}")))?;
            let n: u32 = n
                .parse()
                .map_err(|_| EngineError::Cache(format!("bad key {k:?}")))?;
            cache.insert((hash.to_owned(), n), v.clone());
        }
        Ok(map.len())
    }

    /// Writes the cache as a JSON object `"hash:n" → [[exponent, coefficient], …]`.
    pub fn save_cache(&self, path: &Path) -> Result<(), EngineError> {
        let cache = self.cache.read().expect("cache lock");
        let map: BTreeMap<String, &LaurentPoly> = cache
            .iter()
            .map(|((h, n), p)| (format!("{h}:{n}"), p))
            .collect();
        let text = serde_json::to_string(&map).map_err(|e| EngineError::Cache(e.to_string()))?;
        std::fs::write(path, text).map_err(|e| EngineError::Cache(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    const TREFOIL: &str = "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]";
    const FIGURE_EIGHT: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";

    fn cj(pd: &str, n: u32) -> LaurentPoly {
        colored_jones(&parse_pd(pd).unwrap(), n, &ResourceLimits::default()).unwrap()
    }

    #[test]
    fn kinks_are_unknots() {
        for pd in ["X[1,1,2,2]", "X[1,2,2,1]", "X[2,1,1,2]", "X[2,2,1,1]"] {
            for n in 1..=4 {
                assert_eq!(cj(pd, n), LaurentPoly::quantum_integer(n), "{pd} n={n}");
            }
        }
    }

    #[test]
    fn color_two_is_quantum_two_times_jones() {
        for pd in [TREFOIL, FIGURE_EIGHT] {
            let d = parse_pd(pd).unwrap();
            assert_eq!(
                cj(pd, 2),
                &LaurentPoly::quantum_integer(2) * &jones_polynomial(&d),
                "{pd}"
            );
        }
    }

    #[test]
    fn figure_eight_degrees() {
        for n in 1..=5i64 {
            let deg = cj(FIGURE_EIGHT, n as u32).degrees().unwrap();
            let expect = num_rational::Rational64::new(2 * n * n - n - 1, 2);
            assert_eq!((deg.d_plus, deg.d_minus), (expect, -expect), "n={n}");
        }
    }

    #[test]
    fn limits_are_enforced() {
        let d = parse_pd(FIGURE_EIGHT).unwrap();
        let tight = ResourceLimits::default().with_max_n(3);
        assert!(matches!(
            colored_jones(&d, 4, &tight),
            Err(EngineError::ResourceLimit(_))
        ));
        assert_eq!(colored_jones(&d, 0, &tight), Err(EngineError::ZeroColor));
        let few = ResourceLimits {
            max_states: 2,
            ..Default::default()
        };
        assert!(matches!(
            colored_jones(&d, 3, &few),
            Err(EngineError::ResourceLimit(_))
        ));
    }

    #[test]
    fn cache_roundtrip() {
        let d = parse_pd(TREFOIL).unwrap();
        let engine = Engine::default();
        let seq = engine.sequence(&d, 3).unwrap();
        assert_eq!(engine.cached_entries(), 3);
        let dir = std::env::temp_dir().join(format!("cjones-cache-{}", std::process::id()));
        engine.save_cache(&dir).unwrap();
        let warm = Engine::default();
        assert_eq!(warm.load_cache(&dir).unwrap(), 3);
        assert_eq!(warm.sequence(&d, 3).unwrap(), seq);
        std::fs::remove_file(&dir).unwrap();
    }
}

//! States, state circles, adequacy and state surfaces.
//!
//! The A-resolution of a crossing `X[a,b,c,d]` joins `a` with `b` and `c`
//! with `d`; the B-resolution joins `a` with `d` and `b` with `c`. On a
//! positive crossing the A-resolution is the oriented (Seifert) smoothing.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::diagram::KnotDiagram;
use crate::quasifit::{jones_invariants, DegreeModel, QuasiPolynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Resolution {
    A,
    B,
}

impl Resolution {
    pub fn flip(self) -> Self {
        match self {
            Resolution::A => Resolution::B,
            Resolution::B => Resolution::A,
        }
    }

    /// Slot pairs joined at a crossing.
    pub fn pairs(self) -> [(usize, usize); 2] {
        match self {
            Resolution::A => [(0, 1), (2, 3)],
            Resolution::B => [(0, 3), (1, 2)],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AdequacyError {
    #[error("state has {found} entries for a diagram with {expected} crossings")]
    PartialState { expected: usize, found: usize },
    #[error("state strings use only 'A' and 'B', found {0:?}")]
    BadStateChar(char),
    #[error("diagram is not {0:?}-adequate")]
    NotAdequate(Resolution),
}

/// One resolution per crossing, in crossing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct State {
    pub assignment: Vec<Resolution>,
}

impl State {
    pub fn uniform(r: Resolution, crossings: usize) -> Self {
        State {
            assignment: vec![r; crossings],
        }
    }

    pub fn all_a(d: &KnotDiagram) -> Self {
        Self::uniform(Resolution::A, d.crossing_count())
    }

    pub fn all_b(d: &KnotDiagram) -> Self {
        Self::uniform(Resolution::B, d.crossing_count())
    }

    pub fn is_uniform(&self, r: Resolution) -> bool {
        self.assignment.iter().all(|&x| x == r)
    }

    fn check(&self, d: &KnotDiagram) -> Result<(), AdequacyError> {
        if self.assignment.len() != d.crossing_count() {
            return Err(AdequacyError::PartialState {
                expected: d.crossing_count(),
                found: self.assignment.len(),
            });
        }
        Ok(())
    }
}

impl FromStr for State {
    type Err = AdequacyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let assignment = s
            .trim()
            .chars()
            .map(|ch| match ch {
                'A' | 'a' => Ok(Resolution::A),
                'B' | 'b' => Ok(Resolution::B),
                other => Err(AdequacyError::BadStateChar(other)),
            })
            .collect::<Result<_, _>>()?;
        Ok(State { assignment })
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.assignment {
            f.write_str(if *r == Resolution::A { "A" } else { "B" })?;
        }
        Ok(())
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

/// Union-find over crossing ports: `(dsu, circle count)`.
fn circles(d: &KnotDiagram, state: &State) -> (Dsu, usize) {
    let c = d.crossing_count();
    let mut dsu = Dsu::new(4 * c);
    let mut components = 4 * c;
    for (x, r) in state.assignment.iter().enumerate() {
        for (s, t) in r.pairs() {
            components -= dsu.union(4 * x + s, 4 * x + t) as usize;
        }
    }
    for label in 1..=d.edge_count() {
        let (a, b) = d.edge_ends(label);
        components -= dsu.union(4 * a.crossing + a.slot, 4 * b.crossing + b.slot) as usize;
    }
    (dsu, components)
}

/// Number of state circles `v_σ`.
pub fn resolve_state(d: &KnotDiagram, state: &State) -> Result<usize, AdequacyError> {
    state.check(d)?;
    if d.crossing_count() == 0 {
        return Ok(1);
    }
    Ok(circles(d, state).1)
}

/// Whether the two arcs at every crossing lie on different circles of the
/// uniform state `r`.
fn side_adequate(d: &KnotDiagram, r: Resolution) -> (bool, usize) {
    if d.crossing_count() == 0 {
        return (true, 1);
    }
    let (mut dsu, v) = circles(d, &State::uniform(r, d.crossing_count()));
    let [(s0, _), (s1, _)] = r.pairs();
    let ok = (0..d.crossing_count()).all(|x| dsu.find(4 * x + s0) != dsu.find(4 * x + s1));
    (ok, v)
}

impl From<Vec<Resolution>> for State {
    fn from(assignment: Vec<Resolution>) -> Self {
        State { assignment }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Adequacy {
    pub a_adequate: bool,
    pub b_adequate: bool,
    pub v_a: usize,
    pub v_b: usize,
}

impl Adequacy {
    pub fn adequate(&self) -> bool {
        self.a_adequate && self.b_adequate
    }
}

pub fn adequacy(d: &KnotDiagram) -> Adequacy {
    let (a_adequate, v_a) = side_adequate(d, Resolution::A);
    let (b_adequate, v_b) = side_adequate(d, Resolution::B);
    Adequacy {
        a_adequate,
        b_adequate,
        v_a,
        v_b,
    }
}

/// Combinatorics of the state surface `S_σ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateSurfaceData {
    pub circles: usize,
    pub euler_char: i64,
    /// Defined for the all-A (`−2c_−`) and all-B (`2c_+`) states.
    #[serde(with = "optional_slope")]
    pub boundary_slope: Option<Rational64>,
    pub boundary_components: usize,
    pub sheets: usize,
}

mod optional_slope {
    use super::Rational64;
    use crate::ratio_serde::{parse, to_string};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Rational64>, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.as_ref().map_or_else(|| "undefined".to_owned(), to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational64>, D::Error> {
        let s = String::deserialize(d)?;
        if s == "undefined" {
            return Ok(None);
        }
        parse(&s).map(Some).map_err(serde::de::Error::custom)
    }
}

pub fn state_surface(d: &KnotDiagram, state: &State) -> Result<StateSurfaceData, AdequacyError> {
    let v = resolve_state(d, state)?;
    let (c_plus, c_minus, _) = d.crossing_signs();
    let boundary_slope = if state.is_uniform(Resolution::A) {
        Some(Rational64::from_integer(-2 * c_minus as i64))
    } else if state.is_uniform(Resolution::B) {
        Some(Rational64::from_integer(2 * c_plus as i64))
    } else {
        None
    };
    // the boundary of a state surface is the knot itself
    let boundary_components = 1;
    let denominator = boundary_slope.map_or(1, |s| *s.denom() as usize);
    Ok(StateSurfaceData {
        circles: v,
        euler_char: v as i64 - d.crossing_count() as i64,
        boundary_slope,
        boundary_components,
        sheets: boundary_components * denominator,
    })
}

/// Closed form of one extreme degree from a uniform state: `d_+` from the
/// all-B state, `d_−` from the all-A state. Exact when that side is adequate;
/// otherwise a bound (`d_+ ≤`, `d_− ≥`).
pub fn kauffman_degree_form(d: &KnotDiagram, side: Resolution) -> QuasiPolynomial {
    let (c_plus, c_minus, _) = d.crossing_signs();
    let c = d.crossing_count() as i64;
    let (cp, cm) = (c_plus as i64, c_minus as i64);
    let ad = adequacy(d);
    let r4 = |x: i64| Rational64::new(x, 4);
    match side {
        Resolution::B => {
            let vb = ad.v_b as i64;
            QuasiPolynomial::quadratic(r4(2 * cp), r4(2 * (vb - c)), r4(2 * cm - 2 * vb))
        }
        Resolution::A => {
            let va = ad.v_a as i64;
            QuasiPolynomial::quadratic(r4(-2 * cm), r4(2 * (c - va)), r4(2 * va - 2 * cp))
        }
    }
}

/// Period-one model of an adequate diagram.
pub fn adequate_degree_model(d: &KnotDiagram) -> Result<DegreeModel, AdequacyError> {
    let ad = adequacy(d);
    if !ad.a_adequate {
        return Err(AdequacyError::NotAdequate(Resolution::A));
    }
    if !ad.b_adequate {
        return Err(AdequacyError::NotAdequate(Resolution::B));
    }
    Ok(jones_invariants(
        &kauffman_degree_form(d, Resolution::B),
        &kauffman_degree_form(d, Resolution::A),
    ))
}

/// Degree function of the requested side, if that side is adequate.
pub fn adequate_side_degree(
    d: &KnotDiagram,
    side: Resolution,
) -> Result<QuasiPolynomial, AdequacyError> {
    let ad = adequacy(d);
    let ok = match side {
        Resolution::A => ad.a_adequate,
        Resolution::B => ad.b_adequate,
    };
    if ok {
        Ok(kauffman_degree_form(d, side))
    } else {
        Err(AdequacyError::NotAdequate(side))
    }
}

/// Diagrammatic Turaev genus `(2 + c − v_A − v_B)/2`.
pub fn turaev_genus(d: &KnotDiagram) -> u32 {
    let ad = adequacy(d);
    let g2 = 2 + d.crossing_count() as i64 - ad.v_a as i64 - ad.v_b as i64;
    debug_assert!(g2 >= 0 && g2 % 2 == 0);
    (g2 / 2) as u32
}

/// `(χ(S_A), χ(S_B), 2c)`: the checkerboard data entering Howie's sum for an
/// alternating diagram.
pub fn checkerboard_data(d: &KnotDiagram) -> (i64, i64, u64) {
    let ad = adequacy(d);
    let c = d.crossing_count() as i64;
    (ad.v_a as i64 - c, ad.v_b as i64 - c, 2 * c as u64)
}

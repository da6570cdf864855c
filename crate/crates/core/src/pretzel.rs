//! Standard 3-string pretzel diagrams `P(r, s, t)` and the closed-form degree
//! model claimed for `r < 0 < s, t` with `−2r < s, t`:
//! `2d_+ = (s+t−r)n² + (1−s−t)n + (r−1)` and `2d_− = −rn² + n + (r−1)`,
//! so the slope `−2r` sits on the `d_−` side.
//!
//! The model is reported as claimed; [`crate::engine`] degrees are the ground
//! truth to compare it against.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::diagram::{DiagramError, KnotDiagram, OverPair, PlanarBuilder, PortSlot};
use crate::quasifit::{jones_invariants, DegreeModel, QuasiPolynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PretzelParams {
    pub r: i64,
    pub s: i64,
    pub t: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PretzelError {
    #[error("P({r},{s},{t}) has {evens} even parameters and is a link")]
    Link {
        r: i64,
        s: i64,
        t: i64,
        evens: usize,
    },
    #[error("twist regions must be nonempty")]
    ZeroTwist,
    #[error("closed form needs r < 0 < s, t and -2r < s, t; {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

impl PretzelParams {
    pub fn new(r: i64, s: i64, t: i64) -> Self {
        PretzelParams { r, s, t }
    }

    pub fn crossing_count(&self) -> usize {
        (self.r.abs() + self.s.abs() + self.t.abs()) as usize
    }

    pub fn name(&self) -> String {
        format!("P({},{},{})", self.r, self.s, self.t)
    }

    fn check_knot(&self) -> Result<(), PretzelError> {
        let p = [self.r, self.s, self.t];
        if p.contains(&0) {
            return Err(PretzelError::ZeroTwist);
        }
        let evens = p.iter().filter(|x| *x % 2 == 0).count();
        if evens > 1 {
            return Err(PretzelError::Link {
                r: self.r,
                s: self.s,
                t: self.t,
                evens,
            });
        }
        Ok(())
    }

    /// `r < 0 < s, t` and `−2r < s, t`.
    pub fn closed_form_applies(&self) -> Result<(), PretzelError> {
        let PretzelParams { r, s, t } = *self;
        if !(r < 0 && s > 0 && t > 0) {
            return Err(PretzelError::Hypothesis(format!("signs of ({r},{s},{t})")));
        }
        if -2 * r >= s || -2 * r >= t {
            return Err(PretzelError::Hypothesis(format!(
                "-2r = {} is not below min(s, t) = {}",
                -2 * r,
                s.min(t)
            )));
        }
        Ok(())
    }
}

/// Ports of a vertical twist column: bottom-left, bottom-right, top-left, top-right.
type Column = [(usize, PortSlot); 4];

fn column(b: &mut PlanarBuilder, twists: i64) -> Column {
    use PortSlot::*;
    // positive parameters twist so that, with the strands oriented as in an
    // even column, every crossing is positive
    let over = if twists > 0 {
        OverPair::SwNe
    } else {
        OverPair::SeNw
    };
    let mut prev: Option<usize> = None;
    let mut first = 0;
    for _ in 0..twists.unsigned_abs() {
        let x = b.add_crossing(over);
        match prev {
            Some(p) => {
                b.connect((p, NorthWest), (x, SouthWest));
                b.connect((p, NorthEast), (x, SouthEast));
            }
            None => first = x,
        }
        prev = Some(x);
    }
    let last = prev.expect("nonempty column");
    [
        (first, SouthWest),
        (first, SouthEast),
        (last, NorthWest),
        (last, NorthEast),
    ]
}

/// Three twist columns joined side by side at the top and bottom, with the
/// outer arcs closing around the left and right.
pub fn pretzel_diagram(p: PretzelParams) -> Result<KnotDiagram, PretzelError> {
    p.check_knot()?;
    let mut b = PlanarBuilder::new();
    let cols: Vec<Column> = [p.r, p.s, p.t].iter().map(|&k| column(&mut b, k)).collect();
    for i in 0..3 {
        let (left, right) = (&cols[i], &cols[(i + 1) % 3]);
        b.connect(left[3], right[2]);
        b.connect(left[1], right[0]);
    }
    Ok(b.build()?.with_name(p.name()))
}

/// The closed-form period-one model, gated on the hypotheses.
pub fn pretzel_degree_model(p: PretzelParams) -> Result<DegreeModel, PretzelError> {
    p.check_knot()?;
    p.closed_form_applies()?;
    let PretzelParams { r, s, t } = p;
    let h = |x: i64| Rational64::new(x, 2);
    let plus = QuasiPolynomial::quadratic(h(s + t - r), h(1 - s - t), h(r - 1));
    let minus = QuasiPolynomial::quadratic(h(-r), h(1), h(r - 1));
    Ok(jones_invariants(&plus, &minus))
}

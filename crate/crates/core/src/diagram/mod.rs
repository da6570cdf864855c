//! Oriented knot diagrams given as PD codes.
//!
//! A crossing `X[a,b,c,d]` lists its four edge labels counterclockwise,
//! starting from the incoming under-strand; `a → c` is the under-strand.
//! Orientation of the over-strand is recovered by following the knot from
//! the under-strand of the first crossing. The reserved token `U` is the
//! crossingless unknot.

mod builder;

pub use builder::{braid_closure, OverPair, PlanarBuilder, PortSlot};

use std::fmt;

use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("empty diagram (write the unknot as \"U\")")]
    Empty,
    #[error("malformed PD code at byte {offset}: {message}")]
    Malformed { offset: usize, message: String },
    #[error("edge label {label} appears {count} times (expected exactly 2)")]
    EdgeMultiplicity { label: u32, count: usize },
    #[error("edge labels must be 1..={expected}, found {found}")]
    LabelRange { expected: u32, found: u32 },
    #[error("diagram has more than one component")]
    MultiComponent,
    #[error("crossing {index} is inconsistent with the orientation of the knot")]
    InconsistentOrientation { index: usize },
    #[error("builder port ({crossing}, {slot}) is {problem}")]
    Builder {
        crossing: usize,
        slot: u8,
        problem: &'static str,
    },
    #[error("invalid braid word: {0}")]
    Braid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum CrossingSign {
    Positive,
    Negative,
}

impl CrossingSign {
    pub fn value(self) -> i64 {
        match self {
            CrossingSign::Positive => 1,
            CrossingSign::Negative => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            CrossingSign::Positive => CrossingSign::Negative,
            CrossingSign::Negative => CrossingSign::Positive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    edges: [u32; 4],
    sign: CrossingSign,
}

impl Crossing {
    pub fn edges(&self) -> [u32; 4] {
        self.edges
    }

    pub fn sign(&self) -> CrossingSign {
        self.sign
    }

    /// Position (1 or 3) where the over-strand enters.
    pub fn over_in(&self) -> usize {
        match self.sign {
            CrossingSign::Positive => 3,
            CrossingSign::Negative => 1,
        }
    }

    /// Whether the edge at `pos` enters this crossing.
    pub fn is_incoming(&self, pos: usize) -> bool {
        pos == 0 || pos == self.over_in()
    }
}

/// A position on a crossing: `(crossing index, slot 0..4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub crossing: usize,
    pub slot: usize,
}

/// Validated, immutable knot diagram.
#[derive(Clone, Debug)]
pub struct KnotDiagram {
    crossings: Vec<Crossing>,
    edge_count: u32,
    name: Option<String>,
    // indexed by label - 1: (tail port, head port)
    ends: Vec<(Port, Port)>,
}

impl PartialEq for KnotDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings
    }
}

impl Eq for KnotDiagram {}

impl KnotDiagram {
    pub fn unknot() -> Self {
        KnotDiagram {
            crossings: Vec::new(),
            edge_count: 0,
            name: None,
            ends: Vec::new(),
        }
    }

    /// Validates raw PD tuples and derives orientation and crossing signs.
    pub fn from_tuples(tuples: &[[u32; 4]]) -> Result<Self, DiagramError> {
        if tuples.is_empty() {
            return Err(DiagramError::Empty);
        }
        let expected = 2 * tuples.len() as u32;
        let mut occurrences: Vec<Vec<Port>> = vec![Vec::new(); expected as usize];
        for (i, t) in tuples.iter().enumerate() {
            for (slot, &label) in t.iter().enumerate() {
                if label == 0 || label > expected {
                    return Err(DiagramError::LabelRange {
                        expected,
                        found: label,
                    });
                }
                occurrences[label as usize - 1].push(Port { crossing: i, slot });
            }
        }
        for (idx, occ) in occurrences.iter().enumerate() {
            if occ.len() != 2 {
                return Err(DiagramError::EdgeMultiplicity {
                    label: idx as u32 + 1,
                    count: occ.len(),
                });
            }
        }
        let other_end = |p: Port| -> Port {
            let label = tuples[p.crossing][p.slot];
            let occ = &occurrences[label as usize - 1];
            if occ[0] == p {
                occ[1]
            } else {
                occ[0]
            }
        };

        // Follow the knot starting on the under-strand of crossing 0.
        let mut ends: Vec<Option<(Port, Port)>> = vec![None; expected as usize];
        let start = Port {
            crossing: 0,
            slot: 0,
        };
        let mut entering = start;
        loop {
            let exit = Port {
                crossing: entering.crossing,
                slot: (entering.slot + 2) % 4,
            };
            let label = tuples[exit.crossing][exit.slot];
            let next = other_end(exit);
            if ends[label as usize - 1].is_some() {
                return Err(DiagramError::InconsistentOrientation {
                    index: exit.crossing,
                });
            }
            ends[label as usize - 1] = Some((exit, next));
            entering = next;
            if entering == start {
                break;
            }
        }
        if ends.iter().any(Option::is_none) {
            return Err(DiagramError::MultiComponent);
        }
        let ends: Vec<(Port, Port)> = ends.into_iter().map(Option::unwrap).collect();

        let mut crossings = Vec::with_capacity(tuples.len());
        for (i, t) in tuples.iter().enumerate() {
            let head = |slot: usize| ends[t[slot] as usize - 1].1 == Port { crossing: i, slot };
            if !head(0) || head(2) {
                return Err(DiagramError::InconsistentOrientation { index: i });
            }
            let sign = match (head(1), head(3)) {
                (false, true) => CrossingSign::Positive,
                (true, false) => CrossingSign::Negative,
                _ => return Err(DiagramError::InconsistentOrientation { index: i }),
            };
            crossings.push(Crossing { edges: *t, sign });
        }
        Ok(KnotDiagram {
            crossings,
            edge_count: expected,
            name: None,
            ends,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> u32 {
        self.edge_count
    }

    pub fn is_unknot_diagram(&self) -> bool {
        self.crossings.is_empty()
    }

    /// Tail (outgoing) and head (incoming) ports of edge `label`.
    pub fn edge_ends(&self, label: u32) -> (Port, Port) {
        self.ends[label as usize - 1]
    }

    pub fn label_at(&self, port: Port) -> u32 {
        self.crossings[port.crossing].edges[port.slot]
    }

    /// The port joined to `port` by an edge.
    pub fn other_end(&self, port: Port) -> Port {
        let (tail, head) = self.edge_ends(self.label_at(port));
        if tail == port {
            head
        } else {
            tail
        }
    }

    /// `(c_+, c_-, writhe)`.
    pub fn crossing_signs(&self) -> (usize, usize, i64) {
        let plus = self
            .crossings
            .iter()
            .filter(|c| c.sign == CrossingSign::Positive)
            .count();
        let minus = self.crossings.len() - plus;
        (plus, minus, plus as i64 - minus as i64)
    }

    pub fn writhe(&self) -> i64 {
        self.crossing_signs().2
    }

    /// Switches every crossing. Labels and orientation are kept; each tuple is
    /// rotated so that it again starts at the incoming under-strand.
    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let r = c.over_in();
                let e = c.edges;
                Crossing {
                    edges: [e[r], e[(r + 1) % 4], e[(r + 2) % 4], e[(r + 3) % 4]],
                    sign: c.sign.flip(),
                }
            })
            .collect::<Vec<_>>();
        let mut ends = self.ends.clone();
        for (tail, head) in ends.iter_mut() {
            for p in [tail, head] {
                let r = self.crossings[p.crossing].over_in();
                p.slot = (p.slot + 4 - r) % 4;
            }
        }
        KnotDiagram {
            crossings,
            edge_count: self.edge_count,
            name: self.name.as_ref().map(|n| format!("mirror({n})")),
            ends,
        }
    }

    /// Over and under passages alternate along the knot.
    pub fn is_alternating(&self) -> bool {
        // an edge leaving along the under-strand (slot 2) must arrive over
        self.ends
            .iter()
            .all(|(tail, head)| (tail.slot == 2) == (head.slot != 0))
    }

    /// Canonical PD text; `parse_pd(d.to_pd())` reproduces `d`.
    pub fn to_pd(&self) -> String {
        if self.crossings.is_empty() {
            return "U".to_string();
        }
        self.crossings
            .iter()
            .map(|c| {
                format!(
                    "X[{},{},{},{}]",
                    c.edges[0], c.edges[1], c.edges[2], c.edges[3]
                )
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Stable content hash of the PD code (the name is not included).
    pub fn content_hash(&self) -> String {
        let digest = Sha256::digest(self.to_pd().as_bytes());
        hex::encode(&digest[..16])
    }

    /// Faces of the planar map, each as the cyclic list of corners
    /// `(crossing, slot)` meaning the sector between `slot` and `slot+1`.
    pub fn faces(&self) -> Vec<Vec<Port>> {
        let n = self.crossings.len();
        let mut seen = vec![[false; 4]; n];
        let mut faces = Vec::new();
        for x in 0..n {
            for s in 0..4 {
                if seen[x][s] {
                    continue;
                }
                let mut face = Vec::new();
                let mut corner = Port {
                    crossing: x,
                    slot: s,
                };
                while !seen[corner.crossing][corner.slot] {
                    seen[corner.crossing][corner.slot] = true;
                    face.push(corner);
                    let leave = Port {
                        crossing: corner.crossing,
                        slot: (corner.slot + 1) % 4,
                    };
                    corner = self.other_end(leave);
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Genus of the surface carried by the PD rotation system; 0 for a planar
    /// diagram. Planarity is otherwise assumed, not enforced, at parse time.
    pub fn embedding_genus(&self) -> usize {
        if self.crossings.is_empty() {
            return 0;
        }
        let v = self.crossings.len() as i64;
        let e = 2 * v;
        let f = self.faces().len() as i64;
        ((2 - (v - e + f)) / 2) as usize
    }
}

impl fmt::Display for KnotDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd())
    }
}

impl std::str::FromStr for KnotDiagram {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pd(s)
    }
}

/// Parses whitespace-separated `X[a,b,c,d]` tokens, or the single token `U`.
pub fn parse_pd(text: &str) -> Result<KnotDiagram, DiagramError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut tuples = Vec::new();
    let mut saw_unknot = false;
    loop {
        p.skip_separators();
        match p.peek() {
            None => break,
            Some(b'U') => {
                p.pos += 1;
                if saw_unknot {
                    return Err(DiagramError::MultiComponent);
                }
                saw_unknot = true;
            }
            Some(b'X') => {
                p.pos += 1;
                tuples.push(p.tuple()?);
            }
            Some(_) => return Err(p.error("expected `X[` or `U`")),
        }
    }
    match (saw_unknot, tuples.is_empty()) {
        (true, true) => Ok(KnotDiagram::unknot()),
        (true, false) => Err(DiagramError::MultiComponent),
        (false, true) => Err(DiagramError::Empty),
        (false, false) => KnotDiagram::from_tuples(&tuples),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn error(&self, message: &str) -> DiagramError {
        DiagramError::Malformed {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_separators(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace() || b == b',') {
            self.pos += 1;
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), DiagramError> {
        self.skip_ws();
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", byte as char)))
        }
    }

    fn label(&mut self) -> Result<u32, DiagramError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a positive integer label"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        match digits.parse::<u32>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(DiagramError::Malformed {
                offset: start,
                message: format!("bad label {digits:?}"),
            }),
        }
    }

    fn tuple(&mut self) -> Result<[u32; 4], DiagramError> {
        self.expect(b'[')?;
        let mut t = [0u32; 4];
        for (i, slot) in t.iter_mut().enumerate() {
            if i > 0 {
                self.expect(b',')?;
            }
            *slot = self.label()?;
        }
        self.expect(b']')?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]";
    const FIGURE_EIGHT: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";

    #[test]
    fn parses_trefoil() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.edge_count(), 6);
        // labels increase along the knot: edge k runs from its tail to the
        // crossing where edge k+1 starts
        for label in 1..=6u32 {
            let (_, head) = d.edge_ends(label);
            let next = label % 6 + 1;
            let (tail_next, _) = d.edge_ends(next);
            assert_eq!(head.crossing, tail_next.crossing);
            assert_eq!((head.slot + 2) % 4, tail_next.slot);
        }
        assert_eq!(d.crossing_signs(), (3, 0, 3));
    }

    #[test]
    fn empty_input_is_rejected() {
        assert_eq!(parse_pd(""), Err(DiagramError::Empty));
        assert_eq!(parse_pd("   \n"), Err(DiagramError::Empty));
    }

    #[test]
    fn reserved_unknot_token() {
        let u = parse_pd("U").unwrap();
        assert!(u.is_unknot_diagram());
        assert_eq!(u.to_pd(), "U");
        assert_eq!(u.mirror().to_pd(), "U");
        assert_eq!(parse_pd("U U"), Err(DiagramError::MultiComponent));
        assert_eq!(parse_pd("U X[1,2,2,1]"), Err(DiagramError::MultiComponent));
    }

    #[test]
    fn single_kinks() {
        let d = parse_pd("X[1,2,2,1]").unwrap();
        assert_eq!(d.crossing_signs().2.abs(), 1);
        assert_eq!(d.crossing_signs(), (0, 1, -1));
        assert_eq!(parse_pd("X[1,1,2,2]").unwrap().crossing_signs(), (1, 0, 1));
    }

    #[test]
    fn figure_eight_signs() {
        let d = parse_pd(FIGURE_EIGHT).unwrap();
        assert_eq!(d.crossing_signs(), (2, 2, 0));
    }

    #[test]
    fn malformed_tokens() {
        assert!(matches!(
            parse_pd("X[1,2,3]"),
            Err(DiagramError::Malformed { .. })
        ));
        assert!(matches!(
            parse_pd("Y[1,2,2,1]"),
            Err(DiagramError::Malformed { .. })
        ));
        assert!(matches!(
            parse_pd("X[1,2,2,0]"),
            Err(DiagramError::Malformed { .. })
        ));
        assert!(matches!(
            parse_pd("X[1,-2,2,1]"),
            Err(DiagramError::Malformed { .. })
        ));
    }

    #[test]
    fn edge_multiplicity() {
        assert_eq!(
            parse_pd("X[1,2,2,2]"),
            Err(DiagramError::EdgeMultiplicity { label: 1, count: 1 })
        );
        assert!(matches!(
            parse_pd("X[1,4,2,3] X[3,6,4,5] X[5,2,6,7]"),
            Err(DiagramError::LabelRange { .. })
        ));
    }

    #[test]
    fn alternation() {
        assert!(parse_pd(TREFOIL).unwrap().is_alternating());
        assert!(parse_pd(FIGURE_EIGHT).unwrap().is_alternating());
        assert!(KnotDiagram::unknot().is_alternating());
        // trefoil with one crossing switched
        assert!(!parse_pd("X[1,5,2,4] X[3,1,4,6] X[2,5,3,6]")
            .unwrap()
            .is_alternating());
    }

    #[test]
    fn three_chain_is_not_a_knot() {
        // every label appears twice, but the strands close up into three loops
        assert_eq!(
            parse_pd("X[1,4,2,3] X[3,6,4,5] X[5,2,6,1]"),
            Err(DiagramError::MultiComponent)
        );
    }

    #[test]
    fn two_component_input() {
        // Hopf link
        assert_eq!(
            parse_pd("X[1,3,2,4] X[3,1,4,2]"),
            Err(DiagramError::MultiComponent)
        );
    }

    #[test]
    fn mirror_is_an_involution() {
        for pd in [TREFOIL, FIGURE_EIGHT, "X[1,2,2,1]"] {
            let d = parse_pd(pd).unwrap();
            let m = d.mirror();
            let (p, n, w) = d.crossing_signs();
            assert_eq!(m.crossing_signs(), (n, p, -w));
            assert_eq!(m.mirror(), d);
            assert_eq!(m.mirror().to_pd(), d.to_pd());
            let reparsed = parse_pd(&m.to_pd()).unwrap();
            assert_eq!(reparsed, m);
            for label in 1..=d.edge_count() {
                assert_eq!(reparsed.edge_ends(label), m.edge_ends(label));
            }
        }
    }

    #[test]
    fn planar_codes_have_genus_zero() {
        for pd in [TREFOIL, FIGURE_EIGHT, "X[1,2,2,1]"] {
            let d = parse_pd(pd).unwrap();
            assert_eq!(d.faces().len(), d.crossing_count() + 2);
            assert_eq!(d.embedding_genus(), 0);
        }
    }

    #[test]
    fn serialization_roundtrip() {
        let d = parse_pd(FIGURE_EIGHT).unwrap();
        assert_eq!(d.to_pd(), FIGURE_EIGHT);
        assert_eq!(parse_pd(&d.to_pd()).unwrap(), d);
        assert_eq!(
            d.content_hash(),
            parse_pd(FIGURE_EIGHT)
                .unwrap()
                .with_name("4_1")
                .content_hash()
        );
    }
}

//! Construct PD codes from an unoriented planar description: crossings with
//! four counterclockwise slots and explicit slot-to-slot connections.

use super::{DiagramError, KnotDiagram};

/// Counterclockwise slots of a crossing drawn as an `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PortSlot {
    SouthEast = 0,
    NorthEast = 1,
    NorthWest = 2,
    SouthWest = 3,
}

/// Which diagonal passes over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OverPair {
    /// South-east to north-west strand is on top.
    SeNw,
    /// South-west to north-east strand is on top.
    SwNe,
}

#[derive(Default, Debug)]
pub struct PlanarBuilder {
    over: Vec<OverPair>,
    links: Vec<[Option<(usize, usize)>; 4]>,
}

impl PlanarBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_crossing(&mut self, over: OverPair) -> usize {
        self.over.push(over);
        self.links.push([None; 4]);
        self.over.len() - 1
    }

    pub fn connect(&mut self, a: (usize, PortSlot), b: (usize, PortSlot)) {
        let (ax, asl) = (a.0, a.1 as usize);
        let (bx, bsl) = (b.0, b.1 as usize);
        self.links[ax][asl] = Some((bx, bsl));
        self.links[bx][bsl] = Some((ax, asl));
    }

    /// Orients the curve, labels edges 1..=2c along it and emits PD tuples.
    pub fn build(&self) -> Result<KnotDiagram, DiagramError> {
        let n = self.over.len();
        if n == 0 {
            return Ok(KnotDiagram::unknot());
        }
        for (x, slots) in self.links.iter().enumerate() {
            for (s, l) in slots.iter().enumerate() {
                if l.is_none() {
                    return Err(DiagramError::Builder {
                        crossing: x,
                        slot: s as u8,
                        problem: "unconnected",
                    });
                }
            }
        }
        let mut label = vec![[0u32; 4]; n];
        let mut incoming = vec![[false; 4]; n];
        let start = (0usize, 0usize);
        let mut entering = start;
        let mut next_label = 1u32;
        loop {
            incoming[entering.0][entering.1] = true;
            let exit = (entering.0, (entering.1 + 2) % 4);
            let to = self.links[exit.0][exit.1].unwrap();
            if label[exit.0][exit.1] != 0 {
                return Err(DiagramError::Builder {
                    crossing: exit.0,
                    slot: exit.1 as u8,
                    problem: "revisited",
                });
            }
            label[exit.0][exit.1] = next_label;
            label[to.0][to.1] = next_label;
            next_label += 1;
            entering = to;
            if entering == start {
                break;
            }
        }
        if next_label - 1 != 2 * n as u32 {
            return Err(DiagramError::MultiComponent);
        }
        let tuples: Vec<[u32; 4]> = (0..n)
            .map(|x| {
                let under = match self.over[x] {
                    OverPair::SeNw => [1, 3],
                    OverPair::SwNe => [0, 2],
                };
                let start = if incoming[x][under[0]] {
                    under[0]
                } else {
                    under[1]
                };
                std::array::from_fn(|k| label[x][(start + k) % 4])
            })
            .collect();
        KnotDiagram::from_tuples(&tuples)
    }
}

/// Closure of a braid word. Generator `i > 0` is `σ_i` (strand `i` passes over
/// strand `i+1`, a positive crossing when strands run upward); `-i` is its
/// inverse.
pub fn braid_closure(word: &[i32]) -> Result<KnotDiagram, DiagramError> {
    use PortSlot::*;
    if word.is_empty() {
        return Err(DiagramError::Braid("empty word".into()));
    }
    if word.contains(&0) {
        return Err(DiagramError::Braid("generator 0".into()));
    }
    let strands = word
        .iter()
        .map(|g| g.unsigned_abs() as usize)
        .max()
        .unwrap()
        + 1;
    let mut b = PlanarBuilder::new();
    let mut top: Vec<Option<(usize, PortSlot)>> = vec![None; strands];
    let mut bottom: Vec<Option<(usize, PortSlot)>> = vec![None; strands];
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        let x = b.add_crossing(if g > 0 {
            OverPair::SwNe
        } else {
            OverPair::SeNw
        });
        for (pos, slot_in, slot_out) in [(i, SouthWest, NorthWest), (i + 1, SouthEast, NorthEast)] {
            match top[pos] {
                Some(prev) => b.connect(prev, (x, slot_in)),
                None => bottom[pos] = Some((x, slot_in)),
            }
            top[pos] = Some((x, slot_out));
        }
    }
    for pos in 0..strands {
        match (top[pos], bottom[pos]) {
            (Some(t), Some(bt)) => b.connect(t, bt),
            _ => {
                return Err(DiagramError::Braid(format!(
                    "strand {} has no crossings",
                    pos + 1
                )))
            }
        }
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_closure() {
        let d = braid_closure(&[1, 1, 1]).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.crossing_signs(), (3, 0, 3));
        let m = braid_closure(&[-1, -1, -1]).unwrap();
        assert_eq!(m.crossing_signs(), (0, 3, -3));
    }

    #[test]
    fn figure_eight_closure() {
        let d = braid_closure(&[1, -2, 1, -2]).unwrap();
        assert_eq!(d.crossing_signs(), (2, 2, 0));
        assert_eq!(d.embedding_genus(), 0);
    }

    #[test]
    fn links_are_rejected() {
        assert_eq!(braid_closure(&[1, 1]), Err(DiagramError::MultiComponent));
        assert_eq!(braid_closure(&[1, 3]), Err(DiagramError::MultiComponent));
        assert!(matches!(
            braid_closure(&[2, 2, 2]),
            Err(DiagramError::Braid(_))
        ));
        assert!(braid_closure(&[]).is_err());
    }
}

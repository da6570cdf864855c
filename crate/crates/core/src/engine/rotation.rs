//! Rotation numbers for an upright drawing of a planar diagram.
//!
//! Every crossing is drawn with both strands pointing up: inputs on the
//! bottom-left/bottom-right legs, outputs on the top-left/top-right legs, and
//! the over-strand of a positive crossing running bottom-left to top-right.
//! Each edge then leaves and arrives pointing up, so its total turning is an
//! integer number `w_e` of full counterclockwise turns. Going once around a
//! face with the face on the left turns by `+1` (or `-1` for the outer face);
//! the top and bottom corners of a crossing contribute half a turn each. Any
//! integral solution of these face equations is realized by a planar drawing.

use std::collections::VecDeque;

use crate::diagram::{CrossingSign, KnotDiagram, Port};

/// Upright legs of a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Leg {
    BottomLeft,
    BottomRight,
    TopLeft,
    TopRight,
}

/// Leg occupied by PD slot `slot` of a crossing with the given sign.
pub(crate) fn leg(sign: CrossingSign, slot: usize) -> Leg {
    use Leg::*;
    match sign {
        CrossingSign::Positive => [BottomRight, TopRight, TopLeft, BottomLeft][slot],
        CrossingSign::Negative => [BottomLeft, BottomRight, TopRight, TopLeft][slot],
    }
}

/// Whether the sector between `slot` and `slot + 1` is a top or bottom corner.
fn half_turn_corner(sign: CrossingSign, slot: usize) -> bool {
    match sign {
        CrossingSign::Positive => slot % 2 == 1,
        CrossingSign::Negative => slot.is_multiple_of(2),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct NonPlanar;

/// Rotation number of every edge, indexed by `label - 1`.
pub(crate) fn rotation_numbers(d: &KnotDiagram) -> Result<Vec<i64>, NonPlanar> {
    let c = d.crossing_count();
    if c == 0 {
        return Ok(Vec::new());
    }
    let faces = d.faces();
    if faces.len() != c + 2 {
        return Err(NonPlanar);
    }
    let mut face_of = vec![[usize::MAX; 4]; c];
    let mut rhs = Vec::with_capacity(faces.len());
    for (f, corners) in faces.iter().enumerate() {
        let mut half_turns = 0i64;
        for p in corners {
            face_of[p.crossing][p.slot] = f;
            if half_turn_corner(d.crossings()[p.crossing].sign(), p.slot) {
                half_turns += 1;
            }
        }
        let target = if f == 0 { -2 } else { 2 };
        let diff = target - half_turns;
        debug_assert!(diff % 2 == 0);
        rhs.push(diff / 2);
    }

    // Edge e adds +w_e to the face entering its head and -w_e to the face
    // leaving its tail: a flow from `from[e]` to `to[e]` on the dual graph.
    let m = d.edge_count() as usize;
    let corner_face = |p: Port| face_of[p.crossing][(p.slot + 3) % 4];
    let mut from = vec![0usize; m];
    let mut to = vec![0usize; m];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); faces.len()];
    for e in 0..m {
        let (tail, head) = d.edge_ends(e as u32 + 1);
        from[e] = corner_face(tail);
        to[e] = corner_face(head);
        adj[from[e]].push(e);
        adj[to[e]].push(e);
    }

    // Spanning tree rooted at the outer face; solve from the leaves up.
    let nf = faces.len();
    let mut parent_edge = vec![usize::MAX; nf];
    let mut visited = vec![false; nf];
    let mut order = Vec::with_capacity(nf);
    let mut queue = VecDeque::from([0usize]);
    visited[0] = true;
    while let Some(f) = queue.pop_front() {
        order.push(f);
        for &e in &adj[f] {
            let g = if from[e] == f { to[e] } else { from[e] };
            if !visited[g] {
                visited[g] = true;
                parent_edge[g] = e;
                queue.push_back(g);
            }
        }
    }
    if order.len() != nf {
        return Err(NonPlanar);
    }
    let mut w = vec![0i64; m];
    // residual demand at each face after accounting for settled edges
    let mut demand = rhs.clone();
    for &f in order.iter().rev().take(nf - 1) {
        let e = parent_edge[f];
        // contribution of w_e to face f is +1 if f == to[e], -1 if f == from[e]
        let value = if to[e] == f { demand[f] } else { -demand[f] };
        w[e] = value;
        demand[to[e]] -= value;
        demand[from[e]] += value;
    }
    debug_assert!(demand.iter().all(|&x| x == 0));
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    fn face_sums_hold(d: &KnotDiagram, w: &[i64]) -> bool {
        d.faces().iter().enumerate().all(|(f, corners)| {
            let mut total = 0i64; // in half turns
            for p in corners {
                let x = &d.crossings()[p.crossing];
                if half_turn_corner(x.sign(), p.slot) {
                    total += 1;
                }
                let leave = Port {
                    crossing: p.crossing,
                    slot: (p.slot + 1) % 4,
                };
                let label = d.label_at(leave);
                let (_, head) = d.edge_ends(label);
                total += if head == leave { 2 } else { -2 } * w[label as usize - 1];
            }
            total == if f == 0 { -2 } else { 2 }
        })
    }

    #[test]
    fn solutions_satisfy_every_face() {
        for pd in [
            "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]",
            "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]",
            "X[1,1,2,2]",
            "X[1,2,2,1]",
            "X[2,1,1,2]",
            "X[2,2,1,1]",
        ] {
            let d = parse_pd(pd).unwrap();
            let w = rotation_numbers(&d).unwrap();
            assert!(face_sums_hold(&d, &w), "{pd}: {w:?}");
        }
    }

    #[test]
    fn legs_follow_strands() {
        // inputs are the incoming slots, and strands run BL->TR, BR->TL
        let d = parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]").unwrap();
        for x in d.crossings() {
            for slot in 0..4 {
                let l = leg(x.sign(), slot);
                let bottom = matches!(l, Leg::BottomLeft | Leg::BottomRight);
                assert_eq!(bottom, x.is_incoming(slot));
            }
            let under_out = leg(x.sign(), 2);
            let under_in = leg(x.sign(), 0);
            assert!(
                (under_in, under_out) == (Leg::BottomLeft, Leg::TopRight)
                    || (under_in, under_out) == (Leg::BottomRight, Leg::TopLeft)
            );
        }
    }
}

//! Kauffman bracket by contracting crossings into crossingless matchings of
//! the open edges. Each state is a perfect matching of the frontier; closed
//! loops are absorbed into the coefficient as powers of `δ = −A² − A⁻²`.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::diagram::KnotDiagram;
use crate::polynomial::{LaurentPoly, Variable};

use super::dense::DensePoly;
use super::statesum::contraction_order;

type Poly = DensePoly<BigInt>;

/// Slot pairs joined by the A- and B-smoothings.
pub(crate) const A_PAIRS: [(usize, usize); 2] = [(0, 1), (2, 3)];
pub(crate) const B_PAIRS: [(usize, usize); 2] = [(0, 3), (1, 2)];

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

pub(crate) fn bracket(d: &KnotDiagram) -> LaurentPoly {
    let delta: Poly = DensePoly::from_terms(&[(2, -1), (-2, -1)]);
    if d.crossing_count() == 0 {
        return delta.to_laurent(Variable::A);
    }
    let m = d.edge_count() as usize;
    let mut delta_pows = vec![DensePoly::monomial(0, 1)];
    let mut frontier: Vec<u32> = Vec::new();
    // key: partner index of every frontier position
    let mut states: HashMap<Vec<u8>, Poly> =
        HashMap::from([(Vec::new(), DensePoly::monomial(0, 1))]);

    for x in contraction_order(d) {
        let edges = d.crossings()[x].edges();
        let mut at_crossing = vec![0u8; m + 1];
        for &e in &edges {
            at_crossing[e as usize] += 1;
        }
        let mut in_frontier = vec![false; m + 1];
        for &e in &frontier {
            in_frontier[e as usize] = true;
        }
        let kept: Vec<u32> = frontier
            .iter()
            .copied()
            .filter(|&e| at_crossing[e as usize] == 0)
            .collect();
        let mut fresh: Vec<u32> = Vec::new();
        for &e in &edges {
            if !in_frontier[e as usize] && at_crossing[e as usize] == 1 {
                fresh.push(e);
            }
        }
        let next_frontier: Vec<u32> = kept.iter().chain(fresh.iter()).copied().collect();
        let mut next_pos = vec![usize::MAX; m + 1];
        for (i, &e) in next_frontier.iter().enumerate() {
            next_pos[e as usize] = i;
        }

        let mut next: HashMap<Vec<u8>, Poly> = HashMap::with_capacity(states.len() * 2);
        let mut parent = vec![0usize; m + 1];
        for (key, poly) in &states {
            for (pairs, a_exp) in [(A_PAIRS, 1i64), (B_PAIRS, -1i64)] {
                for (i, p) in parent.iter_mut().enumerate() {
                    *p = i;
                }
                let union = |parent: &mut Vec<usize>, a: u32, b: u32| {
                    let (ra, rb) = (find(parent, a as usize), find(parent, b as usize));
                    if ra != rb {
                        parent[ra] = rb;
                    }
                };
                for (i, &p) in key.iter().enumerate() {
                    union(&mut parent, frontier[i], frontier[p as usize]);
                }
                for (s, t) in pairs {
                    union(&mut parent, edges[s], edges[t]);
                }
                // components touching the new frontier are paths; others are loops
                let mut touched = vec![false; m + 1];
                let mut end_of: HashMap<usize, usize> = HashMap::new();
                let mut next_key = vec![0u8; next_frontier.len()];
                for (i, &e) in next_frontier.iter().enumerate() {
                    let r = find(&mut parent, e as usize);
                    touched[r] = true;
                    if let Some(j) = end_of.remove(&r) {
                        next_key[i] = j as u8;
                        next_key[j] = i as u8;
                    } else {
                        end_of.insert(r, i);
                    }
                }
                debug_assert!(end_of.is_empty());
                let mut loops = 0usize;
                let mut seen = vec![false; m + 1];
                for &e in frontier.iter().chain(edges.iter()) {
                    let r = find(&mut parent, e as usize);
                    if !touched[r] && !seen[r] {
                        seen[r] = true;
                        loops += 1;
                    }
                }
                while delta_pows.len() <= loops {
                    let last = delta_pows.last().unwrap().mul(&delta).unwrap();
                    delta_pows.push(last);
                }
                let term = poly.mul(&delta_pows[loops]).unwrap().shift(a_exp);
                next.entry(next_key)
                    .or_insert_with(DensePoly::zero)
                    .add_assign(&term)
                    .unwrap();
            }
        }
        next.retain(|_, p| !p.is_zero());
        states = next;
        frontier = next_frontier;
    }
    states
        .remove(&Vec::new())
        .unwrap_or_else(DensePoly::zero)
        .to_laurent(Variable::A)
}

/// `V(t) = (−A³)^{−w}⟨D⟩/δ` rewritten in `q = t^{1/2} = A^{−2}`.
pub(crate) fn jones(d: &KnotDiagram) -> LaurentPoly {
    let w = d.writhe();
    let delta = LaurentPoly::from_terms(Variable::A, [(2, -1), (-2, -1)]);
    let normalized = bracket(d)
        .div_exact(&delta)
        .expect("bracket of a knot is divisible by δ");
    let mut v = normalized.shift(-3 * w);
    if w % 2 != 0 {
        v = -v;
    }
    let terms: Vec<(i64, BigInt)> = v
        .terms()
        .map(|(e, c)| {
            debug_assert!(e % 2 == 0);
            (-e / 2, c.clone())
        })
        .collect();
    LaurentPoly::from_terms(Variable::Q, terms)
}

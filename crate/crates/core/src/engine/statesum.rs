//! Colored Jones state sum: contract the braiding tensors of an upright
//! drawing crossing by crossing, weighting each edge by `K^{rotation}`.

use std::collections::HashMap;

use crate::diagram::{CrossingSign, KnotDiagram};

use super::dense::{Coeff, DensePoly, Overflow};
use super::rmatrix::{weight, BraidingTables};
use super::rotation::{leg, Leg};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum StateSumError {
    Overflow,
    TooManyStates(usize),
}

impl From<Overflow> for StateSumError {
    fn from(_: Overflow) -> Self {
        StateSumError::Overflow
    }
}

/// Orders crossings so that the number of open edges stays small.
pub(crate) fn contraction_order(d: &KnotDiagram) -> Vec<usize> {
    let c = d.crossing_count();
    let mut best: Option<(usize, usize, Vec<usize>)> = None;
    for start in 0..c {
        let (width, total, order) = greedy_from(d, start);
        if best
            .as_ref()
            .is_none_or(|(w, t, _)| (width, total) < (*w, *t))
        {
            best = Some((width, total, order));
        }
    }
    best.map(|b| b.2).unwrap_or_default()
}

fn greedy_from(d: &KnotDiagram, start: usize) -> (usize, usize, Vec<usize>) {
    let c = d.crossing_count();
    let m = d.edge_count() as usize;
    let mut open = vec![false; m + 1];
    let mut done = vec![false; c];
    let mut open_count = 0usize;
    let mut order = Vec::with_capacity(c);
    let (mut width, mut total) = (0usize, 0usize);
    let delta = |x: usize, open: &[bool]| -> i64 {
        let edges = d.crossings()[x].edges();
        let mut dlt = 0i64;
        for (s, &e) in edges.iter().enumerate() {
            let twice = edges.iter().enumerate().any(|(t, &f)| t != s && f == e);
            if open[e as usize] {
                dlt -= 1;
            } else if !twice {
                dlt += 1;
            }
        }
        dlt
    };
    let mut next = Some(start);
    while let Some(x) = next {
        done[x] = true;
        order.push(x);
        let edges = d.crossings()[x].edges();
        for (s, &e) in edges.iter().enumerate() {
            let twice = edges.iter().enumerate().any(|(t, &f)| t != s && f == e);
            if open[e as usize] {
                open[e as usize] = false;
                open_count -= 1;
            } else if !twice {
                open[e as usize] = true;
                open_count += 1;
            }
        }
        width = width.max(open_count);
        total += open_count;
        next = (0..c).filter(|&y| !done[y]).min_by_key(|&y| {
            let shared = d.crossings()[y]
                .edges()
                .iter()
                .filter(|&&e| open[e as usize])
                .count();
            (delta(y, &open), usize::MAX - shared, y)
        });
    }
    (width, total, order)
}

#[derive(Clone, Copy)]
enum LegSource {
    /// index into the current frontier key
    Open(usize),
    /// index into the appended part of the next key
    New(usize),
    /// edge with both ends at this crossing; value shared with another leg
    SelfLoop(usize),
}

struct Step {
    // legs in order BL, BR, TL, TR
    labels: [u32; 4],
    sources: [LegSource; 4],
    /// `R` (true) or `R⁻¹` (false)
    braid: bool,
    keep: Vec<usize>,
    new_labels: Vec<u32>,
}

/// Unnormalized state sum `Σ_states Π braiding entries · Π v^{2·w_e·λ}` in
/// `v = q^{1/2}`. `rotation_sign` selects the pivotal convention.
pub(crate) fn state_sum<C: Coeff>(
    d: &KnotDiagram,
    tables: &BraidingTables<C>,
    rotation: &[i64],
    rotation_sign: i64,
    order: &[usize],
    max_states: usize,
) -> Result<DensePoly<C>, StateSumError> {
    let n = tables.n;
    let m = d.edge_count() as usize;
    let mut frontier: Vec<u32> = Vec::new();
    let mut states: HashMap<Vec<u8>, DensePoly<C>> = HashMap::new();
    states.insert(Vec::new(), DensePoly::monomial(0, 1));

    for &x in order {
        let crossing = &d.crossings()[x];
        let mut labels = [0u32; 4];
        for (slot, &e) in crossing.edges().iter().enumerate() {
            let idx = match leg(crossing.sign(), slot) {
                Leg::BottomLeft => 0,
                Leg::BottomRight => 1,
                Leg::TopLeft => 2,
                Leg::TopRight => 3,
            };
            labels[idx] = e;
        }
        let mut pos = vec![usize::MAX; m + 1];
        for (i, &e) in frontier.iter().enumerate() {
            pos[e as usize] = i;
        }
        let mut new_labels: Vec<u32> = Vec::new();
        let mut sources = [LegSource::Open(0); 4];
        for l in 0..4 {
            let e = labels[l];
            sources[l] = if pos[e as usize] != usize::MAX {
                LegSource::Open(pos[e as usize])
            } else if let Some(first) = (0..l).find(|&k| labels[k] == e) {
                LegSource::SelfLoop(first)
            } else if (l + 1..4).any(|k| labels[k] == e) {
                // first leg of a self loop; assign a value below
                LegSource::SelfLoop(l)
            } else {
                new_labels.push(e);
                LegSource::New(new_labels.len() - 1)
            };
        }
        let closing: Vec<usize> = sources
            .iter()
            .filter_map(|s| {
                if let LegSource::Open(p) = s {
                    Some(*p)
                } else {
                    None
                }
            })
            .collect();
        let keep: Vec<usize> = (0..frontier.len())
            .filter(|p| !closing.contains(p))
            .collect();
        // With inputs at the bottom, a negative crossing is the braid generator
        // whose matrix is R; checked against the bracket on chiral knots.
        let braid = crossing.sign() == CrossingSign::Negative;
        let step = Step {
            labels,
            sources,
            braid,
            keep,
            new_labels,
        };

        states = apply_step(&step, &states, tables, rotation, rotation_sign)?;
        if states.len() > max_states {
            return Err(StateSumError::TooManyStates(states.len()));
        }
        frontier = step
            .keep
            .iter()
            .map(|&p| frontier[p])
            .chain(step.new_labels.iter().copied())
            .collect();
    }
    debug_assert!(frontier.is_empty());
    let _ = n;
    Ok(states.remove(&Vec::new()).unwrap_or_else(DensePoly::zero))
}

fn apply_step<C: Coeff>(
    step: &Step,
    states: &HashMap<Vec<u8>, DensePoly<C>>,
    tables: &BraidingTables<C>,
    rotation: &[i64],
    rotation_sign: i64,
) -> Result<HashMap<Vec<u8>, DensePoly<C>>, StateSumError> {
    let n = tables.n;
    let mut out: HashMap<Vec<u8>, DensePoly<C>> = HashMap::with_capacity(states.len());
    let known = |key: &[u8], l: usize| -> Option<usize> {
        match step.sources[l] {
            LegSource::Open(p) => Some(key[p] as usize),
            _ => None,
        }
    };
    for (key, poly) in states {
        let range = |v: Option<usize>| v.map_or(0..n, |x| x..x + 1);
        for i in range(known(key, 0)) {
            for j in range(known(key, 1)) {
                let entries = if step.braid {
                    &tables.r[i][j]
                } else {
                    &tables.r_inv[i][j]
                };
                'entry: for (k, coeff) in entries {
                    let (tl, tr) = if step.braid {
                        (j + k, i - k)
                    } else {
                        (j - k, i + k)
                    };
                    let values = [i, j, tl, tr];
                    for l in 0..4 {
                        if let Some(v) = known(key, l) {
                            if v != values[l] {
                                continue 'entry;
                            }
                        }
                        if let LegSource::SelfLoop(first) = step.sources[l] {
                            if values[first] != values[l] {
                                continue 'entry;
                            }
                        }
                    }
                    let mut shift = 0i64;
                    let mut next_key: Vec<u8> = step.keep.iter().map(|&p| key[p]).collect();
                    next_key.resize(step.keep.len() + step.new_labels.len(), 0);
                    for l in 0..4 {
                        let fresh = match step.sources[l] {
                            LegSource::New(idx) => {
                                next_key[step.keep.len() + idx] = values[l] as u8;
                                true
                            }
                            LegSource::SelfLoop(first) => first == l,
                            LegSource::Open(_) => false,
                        };
                        if fresh {
                            let w = rotation[step.labels[l] as usize - 1];
                            shift += 2 * rotation_sign * w * weight(n, values[l]);
                        }
                    }
                    let term = coeff.mul(poly)?.shift(shift);
                    match out.get_mut(&next_key) {
                        Some(acc) => acc.add_assign(&term)?,
                        None => {
                            out.insert(next_key, term);
                        }
                    }
                }
            }
        }
    }
    out.retain(|_, p| !p.is_zero());
    Ok(out)
}

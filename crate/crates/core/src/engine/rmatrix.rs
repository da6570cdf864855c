//! Braiding matrices of the `N`-dimensional irreducible `U_q(sl_2)` module in
//! the weight basis `v_0..v_{N-1}` (weight of `v_i` is `N-1-2i`).
//!
//! Entries are Laurent polynomials in `v = q^{1/2}`. With inputs on the
//! bottom-left/bottom-right legs of an upright crossing:
//!
//! * `R`: `(i, j) ↦ Σ_k c⁺(i,j,k) · (j+k, i-k)`
//! * `R⁻¹`: `(i, j) ↦ Σ_k c⁻(i,j,k) · (j-k, i+k)`
//!
//! where outputs are listed as (top-left, top-right).

use crate::polynomial::{LaurentPoly, Variable};

use super::dense::{Coeff, DensePoly};

pub(crate) fn weight(n: usize, i: usize) -> i64 {
    n as i64 - 1 - 2 * i as i64
}

fn qint(m: i64) -> LaurentPoly {
    assert!(m >= 0);
    LaurentPoly::quantum_integer(m as u32)
}

/// Gaussian binomial `[a choose b]` as a Laurent polynomial in `q`.
pub(crate) fn qbinom(a: usize, b: usize) -> LaurentPoly {
    if b > a {
        return LaurentPoly::zero(Variable::Q);
    }
    // Pascal rule: [a,b] = q^{a-b}[a-1,b-1] + q^{-b}[a-1,b]
    let mut row = vec![LaurentPoly::one(Variable::Q)];
    for m in 1..=a {
        let mut next = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let left = if k > 0 {
                row[k - 1].shift(m as i64 - k as i64)
            } else {
                LaurentPoly::zero(Variable::Q)
            };
            let right = if k < m {
                row[k].shift(-(k as i64))
            } else {
                LaurentPoly::zero(Variable::Q)
            };
            next.push(&left + &right);
        }
        row = next;
    }
    row[b].clone()
}

fn q_minus_qinv_pow(k: usize) -> LaurentPoly {
    LaurentPoly::from_terms(Variable::Q, [(1, 1), (-1, -1)]).pow(k as u32)
}

/// q-polynomial to v-polynomial (`q = v^2`).
fn to_v(p: &LaurentPoly) -> LaurentPoly {
    p.substitute_power(2)
}

pub(crate) fn positive_entry(n: usize, i: usize, j: usize, k: usize) -> LaurentPoly {
    if k > i || j + k >= n {
        return LaurentPoly::zero(Variable::Q);
    }
    let kk = k as i64;
    let mut c = q_minus_qinv_pow(k).shift(kk * (kk - 1) / 2);
    c = &c * &qbinom(j + k, k);
    for m in 0..k {
        c = &c * &qint(n as i64 - i as i64 + m as i64);
    }
    to_v(&c).shift(weight(n, i - k) * weight(n, j + k))
}

pub(crate) fn negative_entry(n: usize, i: usize, j: usize, k: usize) -> LaurentPoly {
    if k > j || i + k >= n {
        return LaurentPoly::zero(Variable::Q);
    }
    let kk = k as i64;
    let mut c = q_minus_qinv_pow(k).shift(-kk * (kk - 1) / 2);
    if k % 2 == 1 {
        c = -c;
    }
    c = &c * &qbinom(i + k, k);
    for m in 0..k {
        c = &c * &qint(n as i64 - j as i64 + m as i64);
    }
    to_v(&c).shift(-weight(n, i) * weight(n, j))
}

/// Nonzero entries indexed `[i][j] -> [(k, coefficient)]`.
pub(crate) type EntryTable<C> = Vec<Vec<Vec<(usize, DensePoly<C>)>>>;

/// Precomputed braiding entries.
pub(crate) struct BraidingTables<C> {
    pub n: usize,
    /// `R`, entries of `positive_entry`
    pub r: EntryTable<C>,
    /// `R⁻¹`, entries of `negative_entry`
    pub r_inv: EntryTable<C>,
}

impl<C: Coeff> BraidingTables<C> {
    pub fn new(n: usize) -> Self {
        let build = |f: fn(usize, usize, usize, usize) -> LaurentPoly| {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            (0..n)
                                .filter_map(|k| {
                                    let e = f(n, i, j, k);
                                    (!e.is_zero()).then(|| {
                                        (
                                            k,
                                            DensePoly::from_laurent(&e)
                                                .expect("braiding entries are small"),
                                        )
                                    })
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect()
        };
        BraidingTables {
            n,
            r: build(positive_entry),
            r_inv: build(negative_entry),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    type Vec3 = BTreeMap<Vec<usize>, LaurentPoly>;

    fn apply(n: usize, positive: bool, at: usize, vec: &Vec3) -> Vec3 {
        let mut out: Vec3 = BTreeMap::new();
        for (idx, coeff) in vec {
            let (i, j) = (idx[at], idx[at + 1]);
            for k in 0..n {
                let (entry, tl, tr) = if positive {
                    if k > i || j + k >= n {
                        continue;
                    }
                    (positive_entry(n, i, j, k), j + k, i - k)
                } else {
                    if k > j || i + k >= n {
                        continue;
                    }
                    (negative_entry(n, i, j, k), j - k, i + k)
                };
                if entry.is_zero() {
                    continue;
                }
                let mut key = idx.clone();
                key[at] = tl;
                key[at + 1] = tr;
                let slot = out
                    .entry(key)
                    .or_insert_with(|| LaurentPoly::zero(Variable::Q));
                *slot = &*slot + &(&entry * coeff);
            }
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    fn basis(idx: Vec<usize>) -> Vec3 {
        BTreeMap::from([(idx, LaurentPoly::one(Variable::Q))])
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(qbinom(4, 0), LaurentPoly::one(Variable::Q));
        assert_eq!(qbinom(3, 1), LaurentPoly::quantum_integer(3));
        // [4 choose 2] = [4][3]/[2]
        let expect = (&LaurentPoly::quantum_integer(4) * &LaurentPoly::quantum_integer(3))
            .div_exact(&LaurentPoly::quantum_integer(2))
            .unwrap();
        assert_eq!(qbinom(4, 2), expect);
    }

    #[test]
    fn inverse_pair_is_identity() {
        for n in 1..=5 {
            for i in 0..n {
                for j in 0..n {
                    let v = basis(vec![i, j]);
                    assert_eq!(
                        apply(n, false, 0, &apply(n, true, 0, &v)),
                        v,
                        "n={n} ({i},{j})"
                    );
                    assert_eq!(
                        apply(n, true, 0, &apply(n, false, 0, &v)),
                        v,
                        "n={n} ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn yang_baxter() {
        for n in 2..=4 {
            for idx in (0..n * n * n).map(|m| vec![m / (n * n), (m / n) % n, m % n]) {
                for positive in [true, false] {
                    let v = basis(idx.clone());
                    let lhs = apply(
                        n,
                        positive,
                        0,
                        &apply(n, positive, 1, &apply(n, positive, 0, &v)),
                    );
                    let rhs = apply(
                        n,
                        positive,
                        1,
                        &apply(n, positive, 0, &apply(n, positive, 1, &v)),
                    );
                    assert_eq!(lhs, rhs, "n={n} {idx:?}");
                }
            }
        }
    }

    #[test]
    fn weight_is_conserved() {
        let n = 4;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !positive_entry(n, i, j, k).is_zero() {
                        assert_eq!(
                            weight(n, i) + weight(n, j),
                            weight(n, j + k) + weight(n, i - k)
                        );
                    }
                }
            }
        }
    }
}

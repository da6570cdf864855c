//! Quadratic quasi-polynomial models of degree sequences.
//!
//! Beyond some `n_K`, each extreme degree is `a(n)n² + b(n)n + c(n)` with
//! periodic rational coefficients. The Jones period is the lcm of the periods
//! of the two degree functions; Jones slopes are the values `4a`, and the
//! linear-term sets are `2b` (top) and `−2b*` (bottom).

use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::polynomial::DegreePair;

pub const DEFAULT_MAX_PERIOD: u32 = 4;

/// Points used to determine one residue class; `CONFIRM` more must agree.
const DETERMINE: usize = 3;
const CONFIRM: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FitError {
    #[error("empty sequence")]
    Empty,
    #[error("duplicate point at n = {0}")]
    Duplicate(u32),
    #[error("no period up to {max_period} admits a verified quadratic fit of {points} points")]
    NoFit { max_period: u32, points: usize },
}

/// `n ↦ a_r n² + b_r n + c_r` for `n ≡ r (mod period)`, valid for `n > stable_from`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiPolynomial {
    pub period: u32,
    #[serde(with = "triples")]
    pub coeffs: Vec<[Rational64; 3]>,
    pub stable_from: u32,
}

mod triples {
    use super::Rational64;
    use crate::ratio_serde::{parse, to_string};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[[Rational64; 3]], s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<[String; 3]> = v.iter().map(|t| t.map(|r| to_string(&r))).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<[Rational64; 3]>, D::Error> {
        let strings = Vec::<[String; 3]>::deserialize(d)?;
        strings
            .iter()
            .map(|[a, b, c]| Ok([parse(a)?, parse(b)?, parse(c)?]))
            .collect::<Result<_, String>>()
            .map_err(serde::de::Error::custom)
    }
}

impl QuasiPolynomial {
    /// Period-one model `a n² + b n + c`.
    pub fn quadratic(a: Rational64, b: Rational64, c: Rational64) -> Self {
        QuasiPolynomial {
            period: 1,
            coeffs: vec![[a, b, c]],
            stable_from: 0,
        }
    }

    pub fn residue_coeffs(&self, n: u32) -> [Rational64; 3] {
        self.coeffs[(n % self.period) as usize]
    }

    pub fn eval(&self, n: u32) -> Rational64 {
        let [a, b, c] = self.residue_coeffs(n);
        let n = Rational64::from_integer(n as i64);
        a * n * n + b * n + c
    }

    /// Same function of `n` (ignores where stabilization starts).
    pub fn same_function(&self, other: &Self) -> bool {
        let l = self.period.lcm(&other.period);
        (0..l).all(|r| self.residue_coeffs(r) == other.residue_coeffs(r))
    }

    /// Canonical form: the smallest period representing the same coefficients.
    fn reduced(mut self) -> Self {
        for p in 1..self.period {
            if self.period.is_multiple_of(p)
                && (0..self.period)
                    .all(|r| self.coeffs[r as usize] == self.coeffs[(r % p) as usize])
            {
                self.coeffs.truncate(p as usize);
                self.period = p;
                break;
            }
        }
        self
    }

    /// Termwise `self − other` on the common period.
    pub fn minus(&self, other: &Self) -> Self {
        let l = self.period.lcm(&other.period);
        let coeffs = (0..l)
            .map(|r| {
                let (x, y) = (self.residue_coeffs(r), other.residue_coeffs(r));
                [x[0] - y[0], x[1] - y[1], x[2] - y[2]]
            })
            .collect();
        QuasiPolynomial {
            period: l,
            coeffs,
            stable_from: self.stable_from.max(other.stable_from),
        }
        .reduced()
    }

    pub fn scaled(&self, k: i64) -> Self {
        let k = Rational64::from_integer(k);
        QuasiPolynomial {
            coeffs: self.coeffs.iter().map(|t| t.map(|x| x * k)).collect(),
            ..self.clone()
        }
    }
}

/// Exact quadratic through three points.
fn interpolate(pts: &[(u32, Rational64)]) -> [Rational64; 3] {
    let x: Vec<Rational64> = pts
        .iter()
        .map(|p| Rational64::from_integer(p.0 as i64))
        .collect();
    let y: Vec<Rational64> = pts.iter().map(|p| p.1).collect();
    // Newton divided differences
    let d01 = (y[1] - y[0]) / (x[1] - x[0]);
    let d12 = (y[2] - y[1]) / (x[2] - x[1]);
    let a = (d12 - d01) / (x[2] - x[0]);
    let b = d01 - a * (x[0] + x[1]);
    let c = y[0] - a * x[0] * x[0] - b * x[0];
    [a, b, c]
}

pub fn fit_quasi(seq: &[(u32, Rational64)]) -> Result<QuasiPolynomial, FitError> {
    fit_quasi_with(seq, DEFAULT_MAX_PERIOD)
}

/// Smallest period, then smallest `n_K`, such that every residue class beyond
/// `n_K` is one quadratic, determined by three points and confirmed by at
/// least two more.
pub fn fit_quasi_with(
    seq: &[(u32, Rational64)],
    max_period: u32,
) -> Result<QuasiPolynomial, FitError> {
    if seq.is_empty() {
        return Err(FitError::Empty);
    }
    let mut pts = seq.to_vec();
    pts.sort_by_key(|p| p.0);
    if let Some(w) = pts.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(FitError::Duplicate(w[0].0));
    }
    let mut cutoffs: Vec<u32> = vec![0];
    cutoffs.extend(pts.iter().map(|p| p.0));
    for p in 1..=max_period {
        'cutoff: for &n_k in &cutoffs {
            let mut coeffs = Vec::with_capacity(p as usize);
            for r in 0..p {
                let class: Vec<(u32, Rational64)> = pts
                    .iter()
                    .copied()
                    .filter(|&(n, _)| n > n_k && n % p == r)
                    .collect();
                if class.len() < DETERMINE + CONFIRM {
                    // later cutoffs only have fewer points
                    break 'cutoff;
                }
                let abc = interpolate(&class[..DETERMINE]);
                let model = QuasiPolynomial::quadratic(abc[0], abc[1], abc[2]);
                if class.iter().any(|&(n, v)| model.eval(n) != v) {
                    continue 'cutoff;
                }
                coeffs.push(abc);
            }
            return Ok(QuasiPolynomial {
                period: p,
                coeffs,
                stable_from: n_k,
            });
        }
    }
    Err(FitError::NoFit {
        max_period,
        points: pts.len(),
    })
}

/// Period, Jones slopes and linear-term sets of a pair of degree models.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeModel {
    pub d_plus: QuasiPolynomial,
    pub d_minus: QuasiPolynomial,
    pub period: u32,
    #[serde(with = "crate::ratio_serde::set")]
    pub js: BTreeSet<Rational64>,
    #[serde(with = "crate::ratio_serde::set")]
    pub js_star: BTreeSet<Rational64>,
    #[serde(with = "crate::ratio_serde::set")]
    pub jx: BTreeSet<Rational64>,
    #[serde(with = "crate::ratio_serde::set")]
    pub jx_star: BTreeSet<Rational64>,
    /// False only when the period is one and some slope is not an integer,
    /// which no knot can produce.
    pub integral_slopes: bool,
}

impl DegreeModel {
    /// Same degree functions, regardless of where stabilization starts.
    pub fn same_degrees(&self, other: &Self) -> bool {
        self.d_plus.same_function(&other.d_plus) && self.d_minus.same_function(&other.d_minus)
    }

    /// `2d_+ − 2d_−` as a quasi-polynomial.
    pub fn doubled_span(&self) -> QuasiPolynomial {
        self.d_plus.minus(&self.d_minus).scaled(2)
    }

    pub fn is_period_one(&self) -> bool {
        self.period == 1
    }
}

pub fn jones_invariants(dp: &QuasiPolynomial, dm: &QuasiPolynomial) -> DegreeModel {
    let four = Rational64::from_integer(4);
    let two = Rational64::from_integer(2);
    let js: BTreeSet<_> = dp.coeffs.iter().map(|t| four * t[0]).collect();
    let js_star: BTreeSet<_> = dm.coeffs.iter().map(|t| four * t[0]).collect();
    let jx = dp.coeffs.iter().map(|t| two * t[1]).collect();
    let jx_star = dm.coeffs.iter().map(|t| -two * t[1]).collect();
    let period = dp.period.lcm(&dm.period);
    let integral_slopes = period != 1 || js.iter().chain(js_star.iter()).all(|s| s.is_integer());
    DegreeModel {
        d_plus: dp.clone(),
        d_minus: dm.clone(),
        period,
        js,
        js_star,
        jx,
        jx_star,
        integral_slopes,
    }
}

/// Fits both degree functions of a computed sequence.
pub fn fit_degrees(degrees: &[(u32, DegreePair)]) -> Result<DegreeModel, FitError> {
    fit_degrees_with(degrees, DEFAULT_MAX_PERIOD)
}

pub fn fit_degrees_with(
    degrees: &[(u32, DegreePair)],
    max_period: u32,
) -> Result<DegreeModel, FitError> {
    let plus: Vec<_> = degrees.iter().map(|(n, d)| (*n, d.d_plus)).collect();
    let minus: Vec<_> = degrees.iter().map(|(n, d)| (*n, d.d_minus)).collect();
    Ok(jones_invariants(
        &fit_quasi_with(&plus, max_period)?,
        &fit_quasi_with(&minus, max_period)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn sample(
        f: impl Fn(i64) -> Rational64,
        ns: std::ops::RangeInclusive<u32>,
    ) -> Vec<(u32, Rational64)> {
        ns.map(|n| (n, f(n as i64))).collect()
    }

    #[test]
    fn figure_eight_top_degree() {
        let seq = sample(|n| r(2 * n * n - n - 1, 2), 1..=8);
        let q = fit_quasi(&seq).unwrap();
        assert_eq!(q.period, 1);
        assert_eq!(q.coeffs, vec![[r(1, 1), r(-1, 2), r(-1, 2)]]);
        assert!(q.stable_from <= 1);
    }

    #[test]
    fn unknot_degrees() {
        let seq = sample(|n| r(n - 1, 2), 1..=6);
        let q = fit_quasi(&seq).unwrap();
        assert_eq!(
            (q.period, q.coeffs.clone()),
            (1, vec![[r(0, 1), r(1, 2), r(-1, 2)]])
        );
        let m = jones_invariants(&q, &q.scaled(-1));
        assert_eq!(m.js, BTreeSet::from([r(0, 1)]));
        assert_eq!(m.js_star, BTreeSet::from([r(0, 1)]));
        assert_eq!(m.jx, BTreeSet::from([r(1, 1)]));
        assert_eq!(m.jx_star, BTreeSet::from([r(1, 1)]));
    }

    #[test]
    fn alternating_constant() {
        let seq = sample(|n| r(if n % 2 == 0 { 1 } else { 2 }, 1), 1..=12);
        let q = fit_quasi(&seq).unwrap();
        assert_eq!(q.period, 2);
        let zero = r(0, 1);
        assert_eq!(q.coeffs, vec![[zero, zero, r(1, 1)], [zero, zero, r(2, 1)]]);
    }

    #[test]
    fn late_stabilization() {
        // garbage at n = 1, 2, then n² + 1
        let mut seq = sample(|n| r(n * n + 1, 1), 1..=9);
        seq[0].1 = r(7, 1);
        seq[1].1 = r(-3, 1);
        let q = fit_quasi(&seq).unwrap();
        assert_eq!((q.period, q.stable_from), (1, 2));
    }

    #[test]
    fn too_short_is_an_error() {
        let seq = sample(|n| r(n, 1), 1..=4);
        assert_eq!(
            fit_quasi(&seq),
            Err(FitError::NoFit {
                max_period: 4,
                points: 4
            })
        );
        assert_eq!(fit_quasi(&[]), Err(FitError::Empty));
        assert_eq!(
            fit_quasi(&[(1, r(0, 1)), (1, r(0, 1))]),
            Err(FitError::Duplicate(1))
        );
    }

    #[test]
    fn figure_eight_model() {
        let dp = fit_quasi(&sample(|n| r(2 * n * n - n - 1, 2), 1..=8)).unwrap();
        let dm = fit_quasi(&sample(|n| r(-2 * n * n + n + 1, 2), 1..=8)).unwrap();
        let m = jones_invariants(&dp, &dm);
        assert_eq!(m.period, 1);
        assert_eq!(m.js, BTreeSet::from([r(4, 1)]));
        assert_eq!(m.js_star, BTreeSet::from([r(-4, 1)]));
        assert_eq!(m.jx, BTreeSet::from([r(-1, 1)]));
        assert_eq!(m.jx_star, BTreeSet::from([r(-1, 1)]));
        assert!(m.integral_slopes);
        assert_eq!(m.doubled_span().coeffs, vec![[r(4, 1), r(-2, 1), r(-2, 1)]]);
    }

    #[test]
    fn json_uses_fraction_strings() {
        let q = QuasiPolynomial::quadratic(r(1, 1), r(-1, 2), r(-1, 2));
        let j = serde_json::to_string(&q).unwrap();
        assert_eq!(
            j,
            r#"{"period":1,"coeffs":[["1","-1/2","-1/2"]],"stable_from":0}"#
        );
        assert_eq!(serde_json::from_str::<QuasiPolynomial>(&j).unwrap(), q);
    }

    fn arb_quasi() -> impl Strategy<Value = QuasiPolynomial> {
        (1u32..=3).prop_flat_map(|p| {
            prop::collection::vec((-20i64..20, -20i64..20, -20i64..20), p as usize).prop_map(
                move |cs| {
                    QuasiPolynomial {
                        period: p,
                        coeffs: cs
                            .iter()
                            .map(|&(a, b, c)| [r(a, 4), r(b, 2), r(c, 4)])
                            .collect(),
                        stable_from: 0,
                    }
                    .reduced()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn fit_recovers_model(q in arb_quasi()) {
            let seq: Vec<_> = (1..=18).map(|n| (n, q.eval(n))).collect();
            let fit = fit_quasi(&seq).unwrap();
            prop_assert!(fit.same_function(&q));
            prop_assert!(fit.period <= q.period);
            for &(n, v) in &seq {
                if n > fit.stable_from {
                    prop_assert_eq!(fit.eval(n), v);
                }
            }
        }

        #[test]
        fn refit_on_longer_prefix_is_stable(q in arb_quasi(), extra in 0u32..6) {
            let short: Vec<_> = (1..=15).map(|n| (n, q.eval(n))).collect();
            let long: Vec<_> = (1..=15 + extra).map(|n| (n, q.eval(n))).collect();
            let (a, b) = (fit_quasi(&short).unwrap(), fit_quasi(&long).unwrap());
            prop_assert_eq!(a.period, b.period);
            prop_assert_eq!(a.coeffs, b.coeffs);
        }
    }
}

//! Decision procedures over degree models and surface data.
//!
//! Every topological conclusion is reported conditionally: the tool checks
//! the combinatorial identities, never the essentiality or isotopy claims
//! they feed into.

use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::adequacy::adequate_degree_model;
use crate::quasifit::{jones_invariants, DegreeModel, QuasiPolynomial};
use crate::ratio_serde::to_string as frac;
use crate::table::TABLE;

/// Questions the checks touch but never answer; reports carry them as flags.
pub const OPEN_QUESTIONS: [(&str, &str); 2] = [
    (
        "exceptional-jones-slopes",
        "Is the figure-eight the only hyperbolic knot with two exceptional Jones slopes?",
    ),
    (
        "characteristic-surfaces",
        "Is every Jones slope realized by a characteristic Jones surface?",
    ),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    NotApplicable,
}

/// `{check, verdict, witness, narrative}`; the witness is an exact number and
/// is present only on `holds` for checks that define one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub verdict: Verdict,
    pub witness: Option<String>,
    pub narrative: String,
}

impl CheckReport {
    fn new(check: &str, verdict: Verdict, witness: Option<String>, narrative: String) -> Self {
        debug_assert!(witness.is_none() || verdict == Verdict::Holds);
        CheckReport {
            check: check.to_owned(),
            verdict,
            witness,
            narrative,
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn witness_int(&self) -> Option<i64> {
        self.witness.as_deref().and_then(|w| w.parse().ok())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error("slope 0/0 is not a slope")]
    ZeroSlope,
    #[error("intersection number {0} is odd; half of it is not an integer")]
    OddIntersection(u64),
}

/// Reduced `α/β` with `β ≥ 0`; `1/0` is the meridian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slope {
    pub alpha: i64,
    pub beta: i64,
}

impl Slope {
    pub fn new(alpha: i64, beta: i64) -> Result<Self, CheckError> {
        if alpha == 0 && beta == 0 {
            return Err(CheckError::ZeroSlope);
        }
        let g = alpha.gcd(&beta);
        let (mut a, mut b) = (alpha / g, beta / g);
        if b < 0 || (b == 0 && a < 0) {
            a = -a;
            b = -b;
        }
        Ok(Slope { alpha: a, beta: b })
    }

    pub fn integer(alpha: i64) -> Self {
        Slope { alpha, beta: 1 }
    }

    pub fn meridian() -> Self {
        Slope { alpha: 1, beta: 0 }
    }
}

impl From<Rational64> for Slope {
    fn from(r: Rational64) -> Self {
        Slope {
            alpha: *r.numer(),
            beta: *r.denom(),
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.beta == 1 {
            write!(f, "{}", self.alpha)
        } else {
            write!(f, "{}/{}", self.alpha, self.beta)
        }
    }
}

/// Geometric intersection `|αβ' − α'β|`.
pub fn slope_distance(s: Slope, t: Slope) -> u64 {
    (s.alpha as i128 * t.beta as i128 - t.alpha as i128 * s.beta as i128).unsigned_abs() as u64
}

/// The doubled span as `[a, b, c]` if it has period one.
fn span_quadratic(model: &DegreeModel) -> Option<[Rational64; 3]> {
    let d = model.doubled_span();
    (d.period == 1).then(|| d.coeffs[0])
}

fn span_text(abc: &[Rational64; 3]) -> String {
    format!(
        "2d+ - 2d- = ({})n^2 + ({})n + ({})",
        frac(&abc[0]),
        frac(&abc[1]),
        frac(&abc[2])
    )
}

/// `p_K = 1` and `2d_+ − 2d_− = cn² + (2−c)n − 2` for an integer `c`.
pub fn check_eq1(model: &DegreeModel) -> CheckReport {
    const NAME: &str = "eq1";
    let Some(abc) = span_quadratic(model) else {
        return CheckReport::new(
            NAME,
            Verdict::Fails,
            None,
            "the degree span is not a single quadratic".into(),
        );
    };
    if model.period != 1 {
        return CheckReport::new(
            NAME,
            Verdict::Fails,
            None,
            format!("Jones period is {}, not 1", model.period),
        );
    }
    let c = abc[0];
    let two = Rational64::from_integer(2);
    if !c.is_integer() || abc[1] != two - c || abc[2] != -two {
        return CheckReport::new(
            NAME,
            Verdict::Fails,
            None,
            format!(
                "{} is not of the form cn^2 + (2-c)n - 2 with integer c",
                span_text(&abc)
            ),
        );
    }
    CheckReport::new(
        NAME,
        Verdict::Holds,
        Some(frac(&c)),
        format!(
            "p_K = 1 and {} with c = {}. If K satisfies the strong slope conjecture and its Jones slopes \
             are realized by characteristic surfaces, then K is alternating with crossing number {} \
             (Howie's criterion); if c is known to equal c(K), K is alternating unconditionally.",
            span_text(&abc),
            frac(&c),
            frac(&c)
        ),
    )
}

/// `2d_+ − 2d_− = cn² + (2 − 2g_T − c)n + 2g_T − 2` for an integer `c`.
pub fn check_eq2(model: &DegreeModel, turaev_genus: u32) -> CheckReport {
    const NAME: &str = "eq2";
    let Some(abc) = span_quadratic(model) else {
        return CheckReport::new(
            NAME,
            Verdict::Fails,
            None,
            "the degree span is not a single quadratic".into(),
        );
    };
    let g = Rational64::from_integer(turaev_genus as i64);
    let two = Rational64::from_integer(2);
    let c = abc[0];
    if !c.is_integer() || abc[1] != two - two * g - c || abc[2] != two * g - two {
        return CheckReport::new(
            NAME,
            Verdict::Fails,
            None,
            format!("{} does not match g_T = {turaev_genus}", span_text(&abc)),
        );
    }
    CheckReport::new(
        NAME,
        Verdict::Holds,
        Some(frac(&c)),
        format!(
            "{} matches the Turaev-genus form with g_T = {turaev_genus} and c = {}. Adequate knots satisfy \
             this with c = c(K); c < c(K) rules out adequacy.",
            span_text(&abc),
            frac(&c)
        ),
    )
}

/// Holds when the pair is not excluded from being simultaneously
/// exceptional, i.e. `i(s, t) ≤ 8`.
pub fn gordon_filter(s: Slope, t: Slope) -> CheckReport {
    let i = slope_distance(s, t);
    let (verdict, narrative) = if i <= 8 {
        (
            Verdict::Holds,
            format!("i({s}, {t}) = {i} <= 8: both slopes may be exceptional (Lackenby-Meyerhoff bound not violated)."),
        )
    } else {
        (
            Verdict::Fails,
            format!("i({s}, {t}) = {i} > 8: by the Lackenby-Meyerhoff bound, not both slopes can be exceptional."),
        )
    };
    CheckReport::new("gordon", verdict, None, narrative)
}

/// `χ(S) + χ(S*) + i/2 = 2`.
pub fn howie_sum(chi_s: i64, chi_s_star: i64, i: u64) -> Result<CheckReport, CheckError> {
    howie_sum_with_genus(chi_s, chi_s_star, i, 0)
}

/// `χ(S) + χ(S*) + i/2 = 2 − 2g_T`.
pub fn howie_sum_with_genus(
    chi_s: i64,
    chi_s_star: i64,
    i: u64,
    turaev_genus: u32,
) -> Result<CheckReport, CheckError> {
    if i % 2 == 1 {
        return Err(CheckError::OddIntersection(i));
    }
    let sum = chi_s + chi_s_star + (i / 2) as i64;
    let target = 2 - 2 * turaev_genus as i64;
    let text = format!(
        "chi(S) + chi(S*) + i/2 = {chi_s} + {chi_s_star} + {} = {sum}; target {target}",
        i / 2
    );
    Ok(if sum == target {
        let tail = if turaev_genus == 0 {
            " For spanning surfaces this characterizes alternating knots (Howie)."
        } else {
            ""
        };
        CheckReport::new(
            "howie",
            Verdict::Holds,
            Some(sum.to_string()),
            format!("{text}.{tail}"),
        )
    } else {
        CheckReport::new("howie", Verdict::Fails, None, format!("{text}."))
    })
}

/// Whether a surface with this many sheets is characteristic.
pub fn characteristic_check(sheets: u64, jones_period: u64) -> bool {
    sheets >= 1 && jones_period.is_multiple_of(sheets)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Unknot,
    Torus,
    FigureEight,
    Alternating,
}

#[derive(Debug, Clone)]
pub struct KnownModel {
    pub name: String,
    pub family: Family,
    pub crossing_number: usize,
    pub model: DegreeModel,
}

/// `J_U(n) = [n]`: degrees `±(n − 1)/2`.
pub fn unknot_model() -> DegreeModel {
    let h = |x: i64| Rational64::new(x, 2);
    jones_invariants(
        &QuasiPolynomial::quadratic(h(0), h(1), h(-1)),
        &QuasiPolynomial::quadratic(h(0), h(-1), h(1)),
    )
}

/// `T(2, q)` for odd `|q| ≥ 3`; negative `q` gives the mirror image.
pub fn torus_2q_model(q: i64) -> DegreeModel {
    assert!(
        q % 2 != 0 && q.abs() >= 3,
        "T(2,q) is a nontrivial knot only for odd |q| >= 3"
    );
    let h = |x: i64| Rational64::new(x, 2);
    let a = q.abs();
    let top = QuasiPolynomial::quadratic(h(a), h(0), h(-a));
    let bottom = QuasiPolynomial::quadratic(h(0), h(a - 2), h(2 - a));
    if q > 0 {
        jones_invariants(&top, &bottom)
    } else {
        jones_invariants(&bottom.scaled(-1), &top.scaled(-1))
    }
}

/// Degree model of the mirror image.
pub fn mirror_model(m: &DegreeModel) -> DegreeModel {
    jones_invariants(&m.d_minus.scaled(-1), &m.d_plus.scaled(-1))
}

/// Unknot, torus knots `T(2, q)` for `q ≤ 9`, the figure-eight knot and the
/// bundled alternating table knots, each with its mirror image when chiral.
pub fn known_models() -> &'static [KnownModel] {
    static LIBRARY: OnceLock<Vec<KnownModel>> = OnceLock::new();
    LIBRARY.get_or_init(|| {
        fn push(
            lib: &mut Vec<KnownModel>,
            name: String,
            family: Family,
            crossing_number: usize,
            model: DegreeModel,
        ) {
            let mirror = mirror_model(&model);
            let chiral = !mirror.same_degrees(&model);
            lib.push(KnownModel {
                name: name.clone(),
                family,
                crossing_number,
                model,
            });
            if chiral {
                lib.push(KnownModel {
                    name: format!("mirror({name})"),
                    family,
                    crossing_number,
                    model: mirror,
                });
            }
        }
        let mut lib = Vec::new();
        push(&mut lib, "unknot".into(), Family::Unknot, 0, unknot_model());
        for q in [3, 5, 7, 9] {
            push(
                &mut lib,
                format!("T(2,{q})"),
                Family::Torus,
                q as usize,
                torus_2q_model(q),
            );
        }
        for k in TABLE {
            let d = k.diagram();
            let model = adequate_degree_model(&d).expect("bundled table diagrams are adequate");
            // torus knots already present under their torus names
            if lib.iter().any(|e| e.model.same_degrees(&model)) {
                continue;
            }
            let family = if k.name == "4_1" {
                Family::FigureEight
            } else {
                Family::Alternating
            };
            push(
                &mut lib,
                k.name.to_owned(),
                family,
                k.crossing_number,
                model,
            );
        }
        lib
    })
}

pub fn match_known_model(model: &DegreeModel) -> CheckReport {
    const NAME: &str = "match";
    let hits: Vec<&KnownModel> = known_models()
        .iter()
        .filter(|k| k.model.same_degrees(model))
        .collect();
    match hits[..] {
        [] => CheckReport::new(
            NAME,
            Verdict::Fails,
            None,
            "no bundled knot has these degrees".into(),
        ),
        [k] => {
            let narrative = match k.family {
                Family::Unknot => "degrees of the unknot. If K satisfies the strong slope conjecture, K is the unknot."
                    .to_owned(),
                Family::Torus => format!(
                    "degrees of {}. If K satisfies the strong slope conjecture, then up to orientation change K is \
                     isotopic to this torus knot.",
                    k.name
                ),
                Family::FigureEight => "degrees of the figure-eight knot (slopes 4 and -4, i = 8). If K satisfies \
                                        the strong slope conjecture, K is isotopic to the figure-eight knot."
                    .to_owned(),
                Family::Alternating => format!(
                    "degrees of {}. If K satisfies the strong slope conjecture with characteristic Jones surfaces, \
                     K is alternating with crossing number {}, and among the bundled knots of that crossing number \
                     only {} has these degrees.",
                    k.name, k.crossing_number, k.name
                ),
            };
            CheckReport::new(NAME, Verdict::Holds, Some(k.name.clone()), narrative)
        }
        _ => CheckReport::new(
            NAME,
            Verdict::NotApplicable,
            None,
            format!(
                "ambiguous: {} bundled knots share these degrees",
                hits.iter()
                    .map(|k| k.name.as_str())
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::figure_eight;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn f8() -> DegreeModel {
        adequate_degree_model(&figure_eight()).unwrap()
    }

    #[test]
    fn eq1_on_figure_eight_and_unknot() {
        let rep = check_eq1(&f8());
        assert_eq!((rep.verdict, rep.witness_int()), (Verdict::Holds, Some(4)));
        let u = check_eq1(&unknot_model());
        assert_eq!((u.verdict, u.witness_int()), (Verdict::Holds, Some(0)));
    }

    #[test]
    fn eq1_fails_without_the_constant_term() {
        // span 6n^2 - 6n
        let plus = QuasiPolynomial::quadratic(r(7, 2), r(-5, 2), r(-1, 1));
        let minus = QuasiPolynomial::quadratic(r(1, 2), r(1, 2), r(-1, 1));
        let m = jones_invariants(&plus, &minus);
        assert_eq!(check_eq1(&m).verdict, Verdict::Fails);
        let rep = check_eq2(&m, 1);
        assert_eq!((rep.verdict, rep.witness_int()), (Verdict::Holds, Some(6)));
    }

    #[test]
    fn eq2_on_figure_eight() {
        assert_eq!(check_eq2(&f8(), 0).witness_int(), Some(4));
        assert_eq!(check_eq2(&f8(), 1).verdict, Verdict::Fails);
    }

    #[test]
    fn eq1_needs_period_one() {
        let wobble = QuasiPolynomial {
            period: 2,
            coeffs: vec![[r(1, 1), r(0, 1), r(0, 1)], [r(1, 1), r(0, 1), r(1, 4)]],
            stable_from: 0,
        };
        let m = jones_invariants(
            &wobble,
            &QuasiPolynomial::quadratic(r(0, 1), r(0, 1), r(0, 1)),
        );
        assert_eq!(check_eq1(&m).verdict, Verdict::Fails);
    }

    #[test]
    fn distances() {
        assert_eq!(slope_distance(Slope::integer(4), Slope::integer(-4)), 8);
        assert_eq!(
            slope_distance(Slope::new(37, 2).unwrap(), Slope::integer(0)),
            37
        );
        assert_eq!(
            slope_distance(Slope::new(3, 7).unwrap(), Slope::new(3, 7).unwrap()),
            0
        );
        assert_eq!(slope_distance(Slope::meridian(), Slope::integer(0)), 1);
        assert_eq!(Slope::new(-6, -4).unwrap(), Slope::new(3, 2).unwrap());
        assert_eq!(Slope::new(0, 0), Err(CheckError::ZeroSlope));
    }

    #[test]
    fn gordon() {
        assert!(gordon_filter(Slope::integer(4), Slope::integer(-4)).holds());
        assert!(!gordon_filter(Slope::integer(6), Slope::integer(-4)).holds());
        assert!(!gordon_filter(Slope::new(37, 2).unwrap(), Slope::integer(0)).holds());
    }

    #[test]
    fn howie() {
        let rep = howie_sum(-1, -1, 8).unwrap();
        assert_eq!((rep.verdict, rep.witness_int()), (Verdict::Holds, Some(2)));
        assert_eq!(howie_sum(-1, -1, 2).unwrap().verdict, Verdict::Fails);
        assert_eq!(howie_sum(-1, -1, 3), Err(CheckError::OddIntersection(3)));
        assert!(howie_sum_with_genus(0, -2, 4, 1).unwrap().holds());
    }

    #[test]
    fn adequate_slopes_are_2c_apart() {
        for k in TABLE {
            let d = k.diagram();
            let (cp, cm, _) = d.crossing_signs();
            let (s, t) = (
                Slope::integer(2 * cp as i64),
                Slope::integer(-2 * cm as i64),
            );
            assert_eq!(slope_distance(s, t), 2 * k.crossing_number as u64);
            assert_eq!(
                gordon_filter(s, t).holds(),
                k.crossing_number <= 4,
                "{}",
                k.name
            );
        }
    }

    #[test]
    fn characteristic() {
        assert!(characteristic_check(1, 1));
        assert!(!characteristic_check(2, 1));
        assert!(characteristic_check(2, 4));
    }

    #[test]
    fn library_is_injective() {
        let lib = known_models();
        for (i, a) in lib.iter().enumerate() {
            for b in &lib[i + 1..] {
                assert!(!a.model.same_degrees(&b.model), "{} and {}", a.name, b.name);
            }
        }
        assert_eq!(match_known_model(&f8()).witness.as_deref(), Some("4_1"));
    }

    #[test]
    fn report_json_shape() {
        let j = serde_json::to_value(check_eq1(&f8())).unwrap();
        assert_eq!(j["check"], "eq1");
        assert_eq!(j["verdict"], "holds");
        assert_eq!(j["witness"], "4");
        let j = serde_json::to_value(gordon_filter(Slope::integer(10), Slope::integer(0))).unwrap();
        assert_eq!(j["verdict"], "fails");
        assert!(j["witness"].is_null());
    }

    proptest! {
        #[test]
        fn distance_is_symmetric(a in -50i64..50, b in 1i64..20, c in -50i64..50, d in 1i64..20) {
            let (s, t) = (Slope::new(a, b).unwrap(), Slope::new(c, d).unwrap());
            prop_assert_eq!(slope_distance(s, t), slope_distance(t, s));
            prop_assert_eq!(slope_distance(s, t) == 0, s == t);
        }
    }
}

//! Exact Laurent polynomials in one variable with arbitrary-precision integer
//! coefficients.
//!
//! Two variables are in use: `A` for the Kauffman bracket and `q = t^{1/2}`
//! for Jones-type invariants (`t = A^{-4}`). Exponents are stored as integers
//! in the tagged variable; degrees in `t` are exposed as exact rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable mismatch: {0:?} vs {1:?}")]
    VariableMismatch(Variable, Variable),
    #[error("the zero polynomial has no degrees")]
    ZeroPolynomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variable {
    A,
    #[serde(rename = "q")]
    Q,
}

impl Variable {
    fn symbol(self) -> &'static str {
        match self {
            Variable::A => "A",
            Variable::Q => "q",
        }
    }
}

/// Laurent polynomial in canonical form: no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    var: Variable,
    terms: BTreeMap<i64, BigInt>,
}

/// Maximal and minimal degree in `t`, as exact rationals (denominator ≤ 2
/// for `q`-polynomials).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreePair {
    #[serde(with = "crate::ratio_serde")]
    pub d_plus: Rational64,
    #[serde(with = "crate::ratio_serde")]
    pub d_minus: Rational64,
}

impl DegreePair {
    pub fn span(&self) -> Rational64 {
        self.d_plus - self.d_minus
    }
}

impl LaurentPoly {
    pub fn zero(var: Variable) -> Self {
        LaurentPoly {
            var,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(var: Variable) -> Self {
        Self::monomial(var, 0, 1)
    }

    pub fn monomial(var: Variable, exp: i64, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(var);
        p.add_term(exp, coeff.into());
        p
    }

    pub fn from_terms<C: Into<BigInt>>(
        var: Variable,
        terms: impl IntoIterator<Item = (i64, C)>,
    ) -> Self {
        let mut p = Self::zero(var);
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// `[n]_q = q^{n-1} + q^{n-3} + … + q^{1-n}`; `[0] = 0`.
    pub fn quantum_integer(n: u32) -> Self {
        let n = n as i64;
        Self::from_terms(Variable::Q, (0..n).map(|k| (n - 1 - 2 * k, 1)))
    }

    pub fn var(&self) -> Variable {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub(crate) fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_var(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_var(other)?;
        let mut out = Self::zero(self.var);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        Ok(out)
    }

    fn check_var(&self, other: &Self) -> Result<(), PolyError> {
        if self.var != other.var {
            return Err(PolyError::VariableMismatch(self.var, other.var));
        }
        Ok(())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero(self.var);
        }
        LaurentPoly {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.var);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `x ↦ x^{-1}`.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// `x ↦ x^k` for a nonzero integer `k`.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k != 0);
        LaurentPoly {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    pub fn with_var(mut self, var: Variable) -> Self {
        self.var = var;
        self
    }

    /// Exact division by a monic-up-to-sign divisor. Returns `None` unless the
    /// division is exact over the integers.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if self.var != divisor.var || divisor.is_zero() {
            return None;
        }
        let (dmax, lead) = divisor
            .terms
            .iter()
            .next_back()
            .map(|(e, c)| (*e, c.clone()))?;
        let dmin = divisor.min_exp()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.var);
        while let Some(rmax) = rem.max_exp() {
            if rmax - dmax < rem.min_exp()? - dmin {
                return None;
            }
            let c = rem.coeff(rmax);
            if !(&c % &lead).is_zero() {
                return None;
            }
            let factor = Self::monomial(self.var, rmax - dmax, &c / &lead);
            rem = &rem - &(&factor * divisor);
            quot = &quot + &factor;
        }
        Some(quot)
    }

    /// Degrees in `t`. For `q` the `t`-degree is `e/2`; for `A` it is `-e/4`.
    pub fn degrees(&self) -> Result<DegreePair, PolyError> {
        let (lo, hi) = match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(PolyError::ZeroPolynomial),
        };
        Ok(match self.var {
            Variable::Q => DegreePair {
                d_plus: Rational64::new(hi, 2),
                d_minus: Rational64::new(lo, 2),
            },
            Variable::A => DegreePair {
                d_plus: Rational64::new(-lo, 4),
                d_minus: Rational64::new(-hi, 4),
            },
        })
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}]({})", self.var.symbol(), self)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let x = self.var.symbol();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let unit = abs.is_one();
            match (*e, unit) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "{x}")?,
                (1, false) => write!(f, "{abs}{x}")?,
                (e, true) => write!(f, "{x}^{e}")?,
                (e, false) => write!(f, "{abs}{x}^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("LaurentPoly addition")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(&-rhs).expect("LaurentPoly subtraction")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("LaurentPoly multiplication")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

// JSON form: sorted `[[exponent, coefficient], ...]`. Coefficients that fit in
// an i64 are numbers, larger ones are decimal strings.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            match c.to_i64() {
                Some(small) => seq.serialize_element(&(e, small))?,
                None => seq.serialize_element(&(e, c.to_string()))?,
            }
        }
        seq.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoeffRepr {
    Int(i64),
    Text(String),
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct TermsVisitor;
        impl<'de> Visitor<'de> for TermsVisitor {
            type Value = LaurentPoly;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an array of [exponent, coefficient] pairs")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<LaurentPoly, A::Error> {
                let mut p = LaurentPoly::zero(Variable::Q);
                while let Some((e, c)) = seq.next_element::<(i64, CoeffRepr)>()? {
                    let c = match c {
                        CoeffRepr::Int(i) => BigInt::from(i),
                        CoeffRepr::Text(s) => s.parse::<BigInt>().map_err(de::Error::custom)?,
                    };
                    p.add_term(e, c);
                }
                Ok(p)
            }
        }
        deserializer.deserialize_seq(TermsVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(Variable::Q, terms.iter().copied())
    }

    #[test]
    fn difference_of_squares() {
        let a = q(&[(1, 1), (-1, 1)]);
        let b = q(&[(1, 1), (-1, -1)]);
        assert_eq!(&a * &b, q(&[(2, 1), (-2, -1)]));
    }

    #[test]
    fn additive_inverse() {
        let p = q(&[(3, 5), (-2, -7), (0, 1)]);
        assert!((&p + &-&p).is_zero());
    }

    #[test]
    fn square_of_trinomial() {
        let p = q(&[(2, 1), (0, 1), (-2, 1)]);
        assert_eq!(p.pow(2), q(&[(4, 1), (2, 2), (0, 3), (-2, 2), (-4, 1)]));
    }

    #[test]
    fn variable_mismatch_is_an_error() {
        let a = LaurentPoly::one(Variable::A);
        let b = LaurentPoly::one(Variable::Q);
        assert_eq!(
            a.try_add(&b),
            Err(PolyError::VariableMismatch(Variable::A, Variable::Q))
        );
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn degrees_in_t_units() {
        let three = LaurentPoly::quantum_integer(3);
        let d = three.degrees().unwrap();
        assert_eq!(d.d_plus, Rational64::from_integer(1));
        assert_eq!(d.d_minus, Rational64::from_integer(-1));

        let one = LaurentPoly::one(Variable::Q).degrees().unwrap();
        assert_eq!((one.d_plus, one.d_minus), (0.into(), 0.into()));

        assert_eq!(
            LaurentPoly::zero(Variable::Q).degrees(),
            Err(PolyError::ZeroPolynomial)
        );

        // t = A^{-4}
        let a = LaurentPoly::from_terms(Variable::A, [(8, 1), (-4, 1)])
            .degrees()
            .unwrap();
        assert_eq!(a.d_plus, Rational64::from_integer(1));
        assert_eq!(a.d_minus, Rational64::from_integer(-2));
    }

    #[test]
    fn exact_division() {
        let two = LaurentPoly::quantum_integer(2);
        let p = &two * &q(&[(4, -1), (2, 3), (-6, 2)]);
        assert_eq!(p.div_exact(&two), Some(q(&[(4, -1), (2, 3), (-6, 2)])));
        assert_eq!(q(&[(0, 1)]).div_exact(&two), None);
    }

    #[test]
    fn json_form() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let mut p = q(&[(-2, 3), (4, -1)]);
        p.add_term(7, big);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[[-2,3],[4,-1],[7,"123456789012345678901234567890"]]"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn display() {
        assert_eq!(
            q(&[(2, 1), (0, -2), (-3, 3)]).to_string(),
            "q^2 - 2 + 3q^-3"
        );
        assert_eq!(LaurentPoly::zero(Variable::A).to_string(), "0");
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i64..6, -4i64..5), 0..5).prop_map(|ts| q(&ts))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
        }

        #[test]
        fn degrees_add_under_multiplication(a in small_poly(), b in small_poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let (da, db) = (a.degrees().unwrap(), b.degrees().unwrap());
            let dp = (&a * &b).degrees().unwrap();
            prop_assert_eq!(dp.d_plus, da.d_plus + db.d_plus);
            prop_assert_eq!(dp.d_minus, da.d_minus + db.d_minus);
        }

        #[test]
        fn json_roundtrip(a in small_poly()) {
            let s = serde_json::to_string(&a).unwrap();
            let back: LaurentPoly = serde_json::from_str(&s).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}

//! Dense Laurent polynomials used inside the state-sum contraction. The
//! coefficient ring is either checked `i128` (fast path) or `BigInt`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::polynomial::{LaurentPoly, Variable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Overflow;

pub(crate) trait Coeff: Clone + std::fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, a: &Self) -> Result<(), Overflow>;
    fn mul_add(&mut self, a: &Self, b: &Self) -> Result<(), Overflow>;
    fn to_bigint(&self) -> BigInt;
}

impl Coeff for i128 {
    fn zero() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add_assign(&mut self, a: &Self) -> Result<(), Overflow> {
        *self = self.checked_add(*a).ok_or(Overflow)?;
        Ok(())
    }
    fn mul_add(&mut self, a: &Self, b: &Self) -> Result<(), Overflow> {
        let p = a.checked_mul(*b).ok_or(Overflow)?;
        *self = self.checked_add(p).ok_or(Overflow)?;
        Ok(())
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coeff for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign(&mut self, a: &Self) -> Result<(), Overflow> {
        *self += a;
        Ok(())
    }
    fn mul_add(&mut self, a: &Self, b: &Self) -> Result<(), Overflow> {
        *self += a * b;
        Ok(())
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// `Σ coeffs[k] x^{lo+k}`; an empty vector is zero.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct DensePoly<C> {
    pub lo: i64,
    pub coeffs: Vec<C>,
}

impl<C: Coeff> DensePoly<C> {
    pub fn zero() -> Self {
        DensePoly {
            lo: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn monomial(exp: i64, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        DensePoly {
            lo: exp,
            coeffs: vec![C::from_i64(c)],
        }
    }

    pub fn from_terms(terms: &[(i64, i64)]) -> Self {
        let mut p = Self::zero();
        for &(e, c) in terms {
            p.add_assign(&Self::monomial(e, c))
                .expect("small coefficients");
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn shift(mut self, k: i64) -> Self {
        self.lo += k;
        self
    }

    fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.lo = 0;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.lo += lead as i64;
        }
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<(), Overflow> {
        if other.is_zero() {
            return Ok(());
        }
        if self.is_zero() {
            *self = other.clone();
            return Ok(());
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        if lo < self.lo {
            let pad = (self.lo - lo) as usize;
            let mut v = vec![C::zero(); pad];
            v.append(&mut self.coeffs);
            self.coeffs = v;
            self.lo = lo;
        }
        if hi > self.hi() {
            let len = (hi - self.lo) as usize;
            self.coeffs.resize(len, C::zero());
        }
        let off = (other.lo - self.lo) as usize;
        for (i, c) in other.coeffs.iter().enumerate() {
            self.coeffs[off + i].add_assign(c)?;
        }
        self.trim();
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Overflow> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut out = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j].mul_add(a, b)?;
            }
        }
        let mut p = DensePoly {
            lo: self.lo + other.lo,
            coeffs: out,
        };
        p.trim();
        Ok(p)
    }

    pub fn to_laurent(&self, var: Variable) -> LaurentPoly {
        LaurentPoly::from_terms(
            var,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (self.lo + k as i64, c.to_bigint())),
        )
    }

    pub fn from_laurent(p: &LaurentPoly) -> Option<Self> {
        let mut out = Self::zero();
        for (e, c) in p.terms() {
            let c: i64 = num_traits::ToPrimitive::to_i64(c)?;
            out.add_assign(&Self::monomial(e, c)).ok()?;
        }
        Some(out)
    }
}

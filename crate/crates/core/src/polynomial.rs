//! Dense univariate polynomials with arbitrary-precision integer coefficients.
//!
//! Every g- and h-invariant in the crate is one of these. Coefficients are
//! stored in ascending degree with trailing zeros trimmed, so structural
//! equality is polynomial equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_coeffs(vec![BigInt::from(c)])
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::from(c);
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().copied().map(BigInt::from).collect())
    }

    /// `(t + shift)^n`.
    pub fn binomial_power(shift: i64, n: usize) -> Self {
        let base = Self::from_i64s(&[shift, 1]);
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * &base;
        }
        out
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^k`; zero outside the stored range, including negative `k`.
    pub fn coeff(&self, k: i64) -> BigInt {
        if k < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(k as usize).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// Sum of the coefficients.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Keep only the terms of degree `<= max_degree`.
    pub fn truncate(&self, max_degree: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(max_degree + 1).cloned().collect())
    }

    /// `t^n * p(1/t)`; requires `n >= deg p`.
    pub fn reverse(&self, n: usize) -> Self {
        assert!(
            self.degree().is_none_or(|deg| deg <= n),
            "reversal length {n} below degree"
        );
        let mut coeffs = vec![BigInt::zero(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[n - k] = c.clone();
        }
        Self::from_coeffs(coeffs)
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `self += c * other`, in place.
    pub fn add_scaled(&mut self, other: &Polynomial, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b * c;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_palindromic(&self, n: usize) -> bool {
        (0..=n as i64).all(|i| self.coeff(i) == self.coeff(n as i64 - i))
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// `a >= b` coefficient by coefficient, padding with zeros.
    pub fn coefficientwise_geq(&self, other: &Polynomial) -> bool {
        (self - other).has_nonnegative_coeffs()
    }

    /// Coefficients as `i64`, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl From<Vec<i64>> for Polynomial {
    fn from(coeffs: Vec<i64>) -> Self {
        Self::from_i64s(&coeffs)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &BigInt::one());
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(rhs, &-BigInt::one());
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;

            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Polynomial {
    /// Renders as `c0 + c1*t + c2*t^2`, omitting zero terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}*t")?,
                _ => write!(f, "{mag}*t^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Serializes a big integer as a JSON number when it fits in `i64`, and as a
/// decimal string otherwise.
pub(crate) fn serialize_bigint<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match n.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&n.to_string()),
    }
}

struct BigIntRepr(BigInt);

impl Serialize for BigIntRepr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_bigint(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for BigIntRepr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = BigIntRepr;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigIntRepr, E> {
                Ok(BigIntRepr(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigIntRepr, E> {
                Ok(BigIntRepr(v.into()))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<BigIntRepr, E> {
                v.trim()
                    .parse()
                    .map(BigIntRepr)
                    .map_err(|_| E::custom(format!("invalid integer {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&BigIntRepr(c.clone()))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Polynomial;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an array of integer coefficients in ascending degree")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Polynomial, A::Error> {
                let mut coeffs = Vec::new();
                while let Some(BigIntRepr(c)) = seq.next_element()? {
                    coeffs.push(c);
                }
                Ok(Polynomial::from_coeffs(coeffs))
            }
        }
        d.deserialize_seq(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p(&[-1, 1]) * &p(&[-1, 1]), p(&[1, -2, 1]));
        assert_eq!(&p(&[3, 0, 5]) + &Polynomial::zero(), p(&[3, 0, 5]));
        // (1+t)(1+t+t^2) = 1 + t + t^2 + t + t^2 + t^3
        assert_eq!(&p(&[1, 1]) * &p(&[1, 1, 1]), p(&[1, 2, 2, 1]));
        assert!((&p(&[1, 2]) - &p(&[1, 2])).is_zero());
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert_eq!(p(&[0, 0]), Polynomial::zero());
        assert_eq!(Polynomial::zero().degree(), None);
        assert_eq!(&p(&[1, 1]) - &p(&[0, 1]), Polynomial::one());
    }

    #[test]
    fn binomial_powers() {
        assert_eq!(Polynomial::binomial_power(-1, 0), p(&[1]));
        assert_eq!(Polynomial::binomial_power(-1, 2), p(&[1, -2, 1]));
        // binomial theorem: C(3,k) (-1)^(3-k)
        assert_eq!(Polynomial::binomial_power(-1, 3), p(&[-1, 3, -3, 1]));
    }

    #[test]
    fn coefficientwise_comparison() {
        assert!(p(&[1, 4]).coefficientwise_geq(&p(&[1, 1])));
        assert!(!p(&[1, 1]).coefficientwise_geq(&p(&[1, 4])));
        assert!(p(&[1, 1]).coefficientwise_geq(&p(&[1, 1])));
        assert!(p(&[1, 1]).coefficientwise_geq(&p(&[1])));
        assert!(!p(&[1]).coefficientwise_geq(&p(&[1, 1])));
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[1, 2, 1]).to_string(), "1 + 2*t + 1*t^2");
        assert_eq!(p(&[-1, 3, -3, 1]).to_string(), "-1 + 3*t - 3*t^2 + 1*t^3");
        assert_eq!(p(&[0, 0, 2]).to_string(), "2*t^2");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn json_form_is_an_integer_array() {
        let q = p(&[1, 5, 5, 1]);
        assert_eq!(serde_json::to_string(&q).unwrap(), "[1,5,5,1]");
        let big = Polynomial::from_coeffs(vec![BigInt::from(10).pow(30)]);
        let text = serde_json::to_string(&big).unwrap();
        assert_eq!(text, "[\"1000000000000000000000000000000\"]");
        let back: Polynomial = serde_json::from_str(&text).unwrap();
        assert_eq!(back, big);
        let parsed: Polynomial = serde_json::from_str("[1,-2,1,0]").unwrap();
        assert_eq!(parsed, p(&[1, -2, 1]));
    }

    #[test]
    fn reverse_and_shift() {
        assert_eq!(p(&[1, 2]).reverse(3), p(&[0, 0, 2, 1]));
        assert_eq!(p(&[1, 2]).shift(2), p(&[0, 0, 1, 2]));
        assert_eq!(p(&[1, 2, 3]).truncate(1), p(&[1, 2]));
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(-20i64..20, 0..6).prop_map(Polynomial::from)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a - &b) + &b, a);
        }

        #[test]
        fn power_of_t_minus_one_at_one(n in 0usize..12) {
            let v = Polynomial::binomial_power(-1, n).eval_one();
            prop_assert_eq!(v, BigInt::from(if n == 0 { 1 } else { 0 }));
        }

        #[test]
        fn json_roundtrip(a in small_poly()) {
            let back: Polynomial = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}

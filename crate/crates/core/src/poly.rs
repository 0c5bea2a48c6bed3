//! Laurent polynomials in one variable `t` with exact integer coefficients.
//!
//! These are the values of the knot-type oracle: Alexander polynomials are
//! Laurent polynomials normalized so that the lowest exponent is zero and
//! the lowest coefficient is positive, which makes equality a plain map
//! comparison.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A Laurent polynomial over the integers. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, 1)
    }

    /// `c * t^e`.
    pub fn monomial(exp: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        LaurentPoly { coeffs }
    }

    /// The variable `t` itself.
    pub fn t() -> Self {
        LaurentPoly::monomial(1, 1)
    }

    /// `1 + t + t^2 + ... + t^(n-1)`.
    pub fn geometric(n: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        for e in 0..n {
            coeffs.insert(e as i64, BigInt::one());
        }
        LaurentPoly { coeffs }
    }

    pub fn from_coeffs(pairs: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in pairs {
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Canonical form: multiply by ±t^k so the lowest exponent is zero and
    /// the lowest coefficient is positive. Zero stays zero.
    pub fn normalized(&self) -> Self {
        let Some(min) = self.min_exp() else {
            return LaurentPoly::zero();
        };
        let mut p = self.shift(-min);
        if p.coeff(0).is_negative() {
            p = -&p;
        }
        p
    }

    /// Exact division; returns `None` if `divisor` is zero or does not divide
    /// `self` exactly.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        // Work with ordinary polynomials by shifting both operands to start
        // at exponent zero, then undo the shift at the end.
        let smin = self.min_exp().unwrap();
        let dmin = divisor.min_exp().unwrap();
        let mut rem = self.shift(-smin);
        let div = divisor.shift(-dmin);
        let dlead = div.max_exp().unwrap();
        let dlc = div.coeff(dlead);
        let mut quot = LaurentPoly::zero();
        while !rem.is_zero() {
            let rlead = rem.max_exp().unwrap();
            if rlead < dlead {
                return None;
            }
            let rlc = rem.coeff(rlead);
            if (&rlc % &dlc) != BigInt::zero() {
                return None;
            }
            let q = &rlc / &dlc;
            let qterm = LaurentPoly::monomial(rlead - dlead, q);
            rem = &rem - &(&qterm * &div);
            quot = &quot + &qterm;
        }
        Some(quot.shift(smin - dmin))
    }

    /// Substitute `t^k` for `t`.
    pub fn compose_power(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// Evaluate at an integer point (useful for quick cross-checks).
    pub fn eval_int(&self, x: i64) -> BigInt {
        let mut acc = BigInt::zero();
        let x = BigInt::from(x);
        for (e, c) in &self.coeffs {
            assert!(*e >= 0, "eval_int requires a plain polynomial");
            acc += c * x.pow(*e as u32);
        }
        acc
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

// JSON form: {"coeffs": {"0": 1, "1": -1, "2": 1}} with exponents as keys.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            coeffs: BTreeMap<String, i128>,
        }
        let mut coeffs = BTreeMap::new();
        for (e, c) in &self.coeffs {
            let c: i128 = c
                .try_into()
                .map_err(|_| S::Error::custom("coefficient exceeds i128 range"))?;
            coeffs.insert(e.to_string(), c);
        }
        Repr { coeffs }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            coeffs: BTreeMap<String, i128>,
        }
        let repr = Repr::deserialize(de)?;
        let mut p = LaurentPoly::zero();
        for (e, c) in repr.coeffs {
            let exp: i64 = e.parse().map_err(|_| D::Error::custom("bad exponent key"))?;
            p.add_term(exp, BigInt::from(c));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_fixes_sign_and_offset() {
        // -t^3 - 1 normalizes to t^3 + 1 shifted to start at 0... already at 0,
        // so only the sign flips.
        let p = LaurentPoly::from_coeffs([(3, -1), (0, -1)]);
        let n = p.normalized();
        assert_eq!(n, LaurentPoly::from_coeffs([(3, 1), (0, 1)]));
        // t^-2 - t^-1 shifts up.
        let p = LaurentPoly::from_coeffs([(-2, 1), (-1, -1)]);
        assert_eq!(p.normalized(), LaurentPoly::from_coeffs([(0, 1), (1, -1)]));
        assert_eq!(LaurentPoly::zero().normalized(), LaurentPoly::zero());
    }

    #[test]
    fn exact_division() {
        // (t+1)(t^2-t+1) = t^3+1
        let a = LaurentPoly::from_coeffs([(3, 1), (0, 1)]);
        let b = LaurentPoly::from_coeffs([(1, 1), (0, 1)]);
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q, LaurentPoly::from_coeffs([(2, 1), (1, -1), (0, 1)]));
        // non-exact division is rejected
        let c = LaurentPoly::from_coeffs([(1, 1), (0, -1)]);
        assert!(a.div_exact(&c).is_none());
        // division tracks Laurent shifts
        let a = LaurentPoly::from_coeffs([(-1, 1), (2, 1)]);
        let b = LaurentPoly::from_coeffs([(-1, 1)]);
        assert_eq!(a.div_exact(&b).unwrap(), LaurentPoly::from_coeffs([(0, 1), (3, 1)]));
    }

    #[test]
    fn json_round_trip() {
        let p = LaurentPoly::from_coeffs([(0, 1), (1, -1), (2, 1)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"coeffs":{"0":1,"1":-1,"2":1}}"#);
        let q: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }
}

//! Dense univariate polynomials over the rationals, lowest degree first.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// Polynomial with rational coefficients; `coeffs[i]` multiplies x^i.
/// The zero polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    pub coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = UniPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect())
    }

    /// x
    pub fn x() -> Self {
        UniPoly::from_i64(&[0, 1])
    }

    /// x^n
    pub fn x_pow(n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        UniPoly { coeffs }
    }

    /// x^n - 1
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[0] = -Rational::one();
        coeffs[n] = Rational::one();
        UniPoly { coeffs }
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        UniPoly::from_coeffs(out)
    }

    pub fn sub(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        UniPoly::from_coeffs(out)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn mul(&self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Quotient and remainder; panics if rhs is zero.
    pub fn div_rem(&self, rhs: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!rhs.is_zero(), "division by zero polynomial");
        let dr = rhs.degree().unwrap();
        let lead = rhs.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dr {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dr];
        while rem.len() > dr && !rem.is_empty() {
            let d = rem.len() - 1;
            let c = rem[d].clone();
            if c.is_zero() {
                rem.pop();
                continue;
            }
            let q = &c / &lead;
            let pos = d - dr;
            quot[pos] = q.clone();
            for i in 0..=dr {
                let t = &rhs.coeffs[i] * &q;
                rem[pos + i] -= t;
            }
            rem.pop();
        }
        (UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem))
    }

    /// Exact division; returns an error on a nonzero remainder.
    pub fn exact_div(&self, rhs: &UniPoly) -> Result<UniPoly> {
        let (q, r) = self.div_rem(rhs);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Parse("polynomial division is not exact".into()))
        }
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
            .collect();
        UniPoly::from_coeffs(out)
    }

    /// Monic gcd via the Euclidean algorithm over Q.
    pub fn gcd(&self, rhs: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.make_monic();
        a
    }

    pub fn make_monic(&mut self) {
        if let Some(lead) = self.leading().cloned() {
            if !lead.is_one() {
                for c in &mut self.coeffs {
                    *c /= &lead;
                }
            }
        }
    }

    /// Clear denominators and divide by the content; result has coprime
    /// integer coefficients with a positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        use num_integer::Integer;
        if self.is_zero() {
            return vec![];
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        if !content.is_zero() && !content.is_one() {
            for v in &mut ints {
                *v /= &content;
            }
        }
        if ints.last().map(|v| v.is_negative()).unwrap_or(false) {
            for v in &mut ints {
                *v = -v.clone();
            }
        }
        ints
    }

    pub fn pow(&self, mut n: usize) -> UniPoly {
        let mut base = self.clone();
        let mut acc = UniPoly::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }
}

impl std::fmt::Display for UniPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = format_rational(&c.abs());
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{cs}")?,
                1 if cs == "1" => write!(f, "x")?,
                1 => write!(f, "{cs}*x")?,
                _ if cs == "1" => write!(f, "x^{i}")?,
                _ => write!(f, "{cs}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for UniPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strs: Vec<String> = Vec::deserialize(d)?;
        let coeffs = strs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(UniPoly::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, ratio};

    #[test]
    fn div_rem_basic() {
        // (x^2 - 1) / (x - 1) = x + 1
        let p = UniPoly::from_i64(&[-1, 0, 1]);
        let q = UniPoly::from_i64(&[-1, 1]);
        let (quot, rem) = p.div_rem(&q);
        assert_eq!(quot, UniPoly::from_i64(&[1, 1]));
        assert!(rem.is_zero());
    }

    #[test]
    fn div_rem_with_remainder() {
        // x^3 + 2 = (x)(x^2) + 2
        let p = UniPoly::from_i64(&[2, 0, 0, 1]);
        let q = UniPoly::from_i64(&[0, 0, 1]);
        let (quot, rem) = p.div_rem(&q);
        assert_eq!(quot, UniPoly::from_i64(&[0, 1]));
        assert_eq!(rem, UniPoly::from_i64(&[2]));
    }

    #[test]
    fn gcd_monic() {
        // gcd((x-1)(x-2), (x-1)(x-3)) = x - 1
        let a = UniPoly::from_i64(&[2, -3, 1]);
        let b = UniPoly::from_i64(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), UniPoly::from_i64(&[-1, 1]));
    }

    #[test]
    fn derivative_and_eval() {
        let p = UniPoly::from_i64(&[1, -2, 3]); // 3x^2 - 2x + 1
        assert_eq!(p.derivative(), UniPoly::from_i64(&[-2, 6]));
        assert_eq!(p.eval(&rat(2)), rat(9));
        assert_eq!(p.eval(&ratio(1, 2)), ratio(3, 4));
    }

    #[test]
    fn primitive_integer_normalization() {
        let p = UniPoly::from_coeffs(vec![ratio(-2, 3), ratio(4, 3)]); // (4x - 2)/3
        assert_eq!(p.primitive_integer(), vec![BigInt::from(-1), BigInt::from(2)]);
        let q = UniPoly::from_i64(&[2, -4]); // leading negative
        assert_eq!(q.primitive_integer(), vec![BigInt::from(-1), BigInt::from(2)]);
    }
}

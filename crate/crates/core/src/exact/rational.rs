//! Helpers for arbitrary-precision rationals.
//!
//! `BigRational` from `num-rational` already keeps values reduced with a
//! positive denominator, which matches the invariants we need. This module
//! adds the "p/q" string serialization used by every external interface and
//! a few small constructors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Format as "p/q" (or "p" when the denominator is one).
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse "p/q" or "p".
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("invalid integer `{t}`")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(parse_int(p)?, den))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

/// True iff `r` is an integer.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Floor of a rational as a BigInt.
pub fn floor_int(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

/// True iff the rational is an odd integer.
pub fn is_odd_integer(r: &Rational) -> bool {
    is_integer(r) && r.numer().is_odd()
}

trait OddCheck {
    fn is_odd(&self) -> bool;
}

impl OddCheck for BigInt {
    fn is_odd(&self) -> bool {
        use num_integer::Integer;
        Integer::is_odd(self)
    }
}

/// Pochhammer symbol (a)_n = a (a+1) ... (a+n-1).
pub fn pochhammer(a: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    let mut x = a.clone();
    for _ in 0..n {
        acc *= &x;
        x += Rational::one();
    }
    acc
}

/// An exact Gaussian rational a + b*i, used for lambda sample points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn real(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl std::fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", format_rational(&self.re));
        }
        if self.re.is_zero() {
            if self.im.is_one() {
                return write!(f, "i");
            }
            return write!(f, "{}*i", format_rational(&self.im));
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        let im_abs = self.im.abs();
        if im_abs.is_one() {
            write!(f, "{}{}i", format_rational(&self.re), sign)
        } else {
            write!(f, "{}{}{}*i", format_rational(&self.re), sign, format_rational(&im_abs))
        }
    }
}

/// Parse Gaussian-rational expressions: "3", "5/2", "-2", "i", "-i", "2*i",
/// "1/2+1/3*i", "1-i".
pub fn parse_gaussian(s: &str) -> Result<GaussianRational> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty lambda expression".into()));
    }
    // split into terms at '+'/'-' that are not part of an exponent or leading sign
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    for (idx, ch) in s.char_indices() {
        if (ch == '+' || ch == '-') && idx > 0 {
            let prev = s.as_bytes()[idx - 1] as char;
            if prev != '/' && prev != '*' {
                terms.push(cur.clone());
                cur.clear();
            }
        }
        cur.push(ch);
    }
    terms.push(cur);

    let mut re = Rational::zero();
    let mut im = Rational::zero();
    for t in terms {
        if t.is_empty() {
            continue;
        }
        if t.ends_with('i') {
            let body = &t[..t.len() - 1];
            let body = body.strip_suffix('*').unwrap_or(body);
            let coeff = match body {
                "" | "+" => Rational::one(),
                "-" => -Rational::one(),
                other => parse_rational(other)?,
            };
            im += coeff;
        } else {
            re += parse_rational(&t)?;
        }
    }
    Ok(GaussianRational { re, im })
}

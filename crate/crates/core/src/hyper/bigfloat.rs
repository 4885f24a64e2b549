//! Arbitrary-precision complex numbers with conservatively propagated
//! absolute error bounds, on top of astro-float reals.
//!
//! Precision is always an explicit parameter (bits); nothing reads ambient
//! state except the shared constants cache.

use std::cell::RefCell;

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::exact::rational::Rational;

pub const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

/// Run a closure with the thread-local constants cache.
pub fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

pub fn digits_to_bits(digits: usize) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 16
}

pub fn pi(p: usize) -> BigFloat {
    with_consts(|cc| cc.pi(p, RM))
}

pub fn bf_zero(p: usize) -> BigFloat {
    BigFloat::from_i8(0, p)
}

pub fn bf_from_i64(v: i64, p: usize) -> BigFloat {
    BigFloat::from_i64(v, p)
}

/// Exact conversion of a big integer (then rounded to p bits).
pub fn bf_from_bigint(v: &BigInt, p: usize) -> BigFloat {
    if v.is_zero() {
        return bf_zero(p);
    }
    let mag = v.magnitude();
    let bits = mag.bits();
    let word_len = bits.div_ceil(64) as usize;
    // normalize so the top bit of the last word is set
    let shifted = mag << (64 * word_len as u64 - bits);
    let mut words = shifted.to_u64_digits();
    words.resize(word_len, 0);
    let sign = if v.is_negative() { Sign::Neg } else { Sign::Pos };
    let mut x = BigFloat::from_words(&words, sign, bits as astro_float::Exponent);
    x.set_precision(p, RM).expect("set precision");
    x
}

pub fn bf_from_rational(v: &Rational, p: usize) -> BigFloat {
    let num = bf_from_bigint(v.numer(), p + 32);
    let den = bf_from_bigint(v.denom(), p + 32);
    num.div(&den, p, RM)
}

/// Nearest integer as a BigInt (ties toward +inf; exact enough for lattice
/// scaling where the value is far from a tie).
pub fn bf_round_to_bigint(x: &BigFloat) -> BigInt {
    let p = x.mantissa_max_bit_len().unwrap_or(64);
    let half = BigFloat::from_f64(0.5, 64);
    let shifted = x.add(&half, p + 8, RoundingMode::Down);
    let int = shifted.floor();
    bf_to_bigint_exact(&int)
}

/// Exact conversion of an integer-valued BigFloat.
fn bf_to_bigint_exact(x: &BigFloat) -> BigInt {
    if x.is_zero() {
        return BigInt::zero();
    }
    let (words, n_bits, sign, exp, _) = x.as_raw_parts().expect("finite");
    // value = 0.mantissa * 2^exp with the mantissa's top bit at position n_bits
    let mantissa = BigInt::from_bytes_le(
        num_bigint::Sign::Plus,
        &words.iter().flat_map(|w| w.to_le_bytes()).collect::<Vec<u8>>(),
    );
    let shift = exp as i64 - n_bits as i64;
    let mag = if shift >= 0 { mantissa << shift } else { mantissa >> (-shift) };
    if sign == Sign::Neg {
        -mag
    } else {
        mag
    }
}

/// Upper bound of |x| as a low-precision float (rounded away from zero).
fn abs_hi(x: &BigFloat) -> BigFloat {
    let mut a = x.abs();
    a.set_precision(64, RoundingMode::Up).expect("set precision");
    a
}

/// One unit in the last place of x at precision p.
fn ulp(x: &BigFloat, p: usize) -> BigFloat {
    match x.exponent() {
        Some(e) => {
            let mut one = BigFloat::from_i8(1, 64);
            let ee = e as i64 - p as i64 + 1;
            one.set_exponent(ee.clamp(i32::MIN as i64 + 64, i32::MAX as i64 - 64) as i32 + 1);
            one
        }
        None => {
            let mut one = BigFloat::from_i8(1, 64);
            one.set_exponent(-(p as i64).min(i32::MAX as i64 / 2) as i32);
            one
        }
    }
}

fn e_add(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.add(b, 64, RoundingMode::Up)
}

fn e_mul(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.mul(b, 64, RoundingMode::Up)
}

/// Complex number with an absolute error bound on the complex value.
#[derive(Debug, Clone)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
    pub err: BigFloat,
    pub prec: usize,
}

impl BigComplex {
    pub fn exact(re: BigFloat, im: BigFloat, prec: usize) -> Self {
        BigComplex { re, im, err: bf_zero(64), prec }
    }

    pub fn zero(prec: usize) -> Self {
        BigComplex::exact(bf_zero(prec), bf_zero(prec), prec)
    }

    pub fn one(prec: usize) -> Self {
        BigComplex::exact(bf_from_i64(1, prec), bf_zero(prec), prec)
    }

    pub fn from_rational(v: &Rational, prec: usize) -> Self {
        let mut z = BigComplex::exact(bf_from_rational(v, prec), bf_zero(prec), prec);
        z.err = ulp(&z.re, prec);
        z
    }

    pub fn from_gaussian(re: &Rational, im: &Rational, prec: usize) -> Self {
        let mut z =
            BigComplex::exact(bf_from_rational(re, prec), bf_from_rational(im, prec), prec);
        z.err = e_add(&ulp(&z.re, prec), &ulp(&z.im, prec));
        z
    }

    pub fn is_real_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Upper bound of the modulus, low precision.
    pub fn abs_upper(&self) -> BigFloat {
        e_add(&abs_hi(&self.re), &abs_hi(&self.im))
    }

    /// |z| at the full working precision (no error tracking).
    pub fn abs(&self) -> BigFloat {
        let p = self.prec;
        let rr = self.re.mul(&self.re, p, RM);
        let ii = self.im.mul(&self.im, p, RM);
        rr.add(&ii, p, RM).sqrt(p, RM)
    }

    pub fn conj(&self) -> Self {
        BigComplex { re: self.re.clone(), im: self.im.neg(), err: self.err.clone(), prec: self.prec }
    }

    pub fn neg(&self) -> Self {
        BigComplex { re: self.re.neg(), im: self.im.neg(), err: self.err.clone(), prec: self.prec }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let p = self.prec.min(rhs.prec);
        let re = self.re.add(&rhs.re, p, RM);
        let im = self.im.add(&rhs.im, p, RM);
        let err = e_add(&e_add(&self.err, &rhs.err), &e_add(&ulp(&re, p), &ulp(&im, p)));
        BigComplex { re, im, err, prec: p }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let p = self.prec.min(rhs.prec);
        let re = self.re.mul(&rhs.re, p, RM).sub(&self.im.mul(&rhs.im, p, RM), p, RM);
        let im = self.re.mul(&rhs.im, p, RM).add(&self.im.mul(&rhs.re, p, RM), p, RM);
        let ea = &self.err;
        let eb = &rhs.err;
        let err = e_add(
            &e_add(&e_mul(&self.abs_upper(), eb), &e_mul(&rhs.abs_upper(), ea)),
            &e_add(&e_mul(ea, eb), &e_add(&ulp(&re, p), &ulp(&im, p))),
        );
        BigComplex { re, im, err, prec: p }
    }

    pub fn mul_real(&self, rhs: &BigFloat) -> Self {
        let p = self.prec;
        let re = self.re.mul(rhs, p, RM);
        let im = self.im.mul(rhs, p, RM);
        let err = e_add(&e_mul(&self.err, &abs_hi(rhs)), &e_add(&ulp(&re, p), &ulp(&im, p)));
        BigComplex { re, im, err, prec: p }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let p = self.prec.min(rhs.prec);
        let d = rhs.re.mul(&rhs.re, p, RM).add(&rhs.im.mul(&rhs.im, p, RM), p, RM);
        let re = self
            .re
            .mul(&rhs.re, p, RM)
            .add(&self.im.mul(&rhs.im, p, RM), p, RM)
            .div(&d, p, RM);
        let im = self
            .im
            .mul(&rhs.re, p, RM)
            .sub(&self.re.mul(&rhs.im, p, RM), p, RM)
            .div(&d, p, RM);
        // |1/b| <= 1/(|b| - err_b); bound the quotient error accordingly
        let b_lo = {
            let mut b = rhs.abs();
            b.set_precision(64, RoundingMode::Down).expect("set precision");
            b.sub(&rhs.err, 64, RoundingMode::Down)
        };
        let err = if b_lo.is_positive() && !b_lo.is_zero() {
            let r_hi = BigComplex { re: re.clone(), im: im.clone(), err: bf_zero(64), prec: p }
                .abs_upper();
            let num = e_add(&self.err, &e_mul(&r_hi, &rhs.err));
            e_add(&num.div(&b_lo, 64, RoundingMode::Up), &e_add(&ulp(&re, p), &ulp(&im, p)))
        } else {
            BigFloat::from_f64(f64::INFINITY, 64)
        };
        BigComplex { re, im, err, prec: p }
    }

    /// exp(z) with error |exp(z)| * (err_in + rounding).
    pub fn exp(&self) -> Self {
        let p = self.prec;
        let ex = with_consts(|cc| self.re.exp(p, RM, cc));
        let (s, c) = with_consts(|cc| (self.im.sin(p, RM, cc), self.im.cos(p, RM, cc)));
        let re = ex.mul(&c, p, RM);
        let im = ex.mul(&s, p, RM);
        let mag = abs_hi(&ex);
        let delta = e_add(&self.err, &ulp(&bf_from_i64(1, 64), p));
        // |e^(z+d) - e^z| <= |e^z| (e^|d| - 1) <= 2 |e^z| |d| for |d| < 1/2
        let err = e_add(
            &e_mul(&e_mul(&mag, &delta), &BigFloat::from_f64(2.0, 64)),
            &e_add(&ulp(&re, p), &ulp(&im, p)),
        );
        BigComplex { re, im, err, prec: p }
    }

    /// Principal logarithm; errors on inputs near zero blow up the bound.
    pub fn ln(&self) -> Self {
        let p = self.prec;
        let r = self.abs();
        let re = with_consts(|cc| r.ln(p, RM, cc));
        let im = atan2(&self.im, &self.re, p);
        let r_lo = {
            let mut lo = r.clone();
            lo.set_precision(64, RoundingMode::Down).expect("set precision");
            lo.sub(&self.err, 64, RoundingMode::Down)
        };
        let err = if r_lo.is_positive() && !r_lo.is_zero() {
            // |d ln z| <= 2 |dz| / |z| covering both components
            e_add(
                &self.err.div(&r_lo, 64, RoundingMode::Up).mul(
                    &BigFloat::from_f64(2.0, 64),
                    64,
                    RoundingMode::Up,
                ),
                &e_add(&ulp(&re, p), &ulp(&im, p)),
            )
        } else {
            BigFloat::from_f64(f64::INFINITY, 64)
        };
        BigComplex { re, im, err, prec: p }
    }

    /// Principal power with an exact rational exponent: exp(e * Log z).
    pub fn pow_rational(&self, e: &Rational, prec: usize) -> Self {
        if e.is_zero() {
            return BigComplex::one(prec);
        }
        if self.is_real_zero() {
            return BigComplex::zero(prec);
        }
        // fast path: positive real base and the log stays real
        if self.im.is_zero() && self.re.is_positive() {
            let lo = with_consts(|cc| self.re.ln(prec, RM, cc));
            let ef = bf_from_rational(e, prec);
            let v = with_consts(|cc| lo.mul(&ef, prec, RM).exp(prec, RM, cc));
            let mag = abs_hi(&v);
            let rel_in = if self.re.is_zero() {
                BigFloat::from_f64(f64::INFINITY, 64)
            } else {
                self.err.div(&abs_hi(&self.re), 64, RoundingMode::Up)
            };
            let e_abs = abs_hi(&bf_from_rational(e, 64));
            let err = e_add(
                &e_mul(&e_mul(&mag, &rel_in), &e_mul(&e_abs, &BigFloat::from_f64(2.0, 64))),
                &e_mul(&ulp(&v, prec), &BigFloat::from_f64(4.0, 64)),
            );
            return BigComplex { re: v, im: bf_zero(prec), err, prec };
        }
        let le = self.ln();
        let ec = BigComplex::from_rational(e, prec);
        le.mul(&ec).exp()
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, n: u64) -> Self {
        let mut acc = BigComplex::one(self.prec);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// Decimal rendering.
    pub fn to_decimal_string(&self) -> String {
        if self.im.is_zero() {
            bf_to_decimal(&self.re)
        } else {
            let sign = if self.im.is_negative() { "-" } else { "+" };
            format!("{} {} {}i", bf_to_decimal(&self.re), sign, bf_to_decimal(&self.im.abs()))
        }
    }
}

/// Render a BigFloat as a decimal string.
pub fn bf_to_decimal(x: &BigFloat) -> String {
    with_consts(|cc| {
        x.format(astro_float::Radix::Dec, RM, cc).unwrap_or_else(|_| "nan".into())
    })
}

/// Principal-branch atan2 built from atan with quadrant corrections.
pub fn atan2(y: &BigFloat, x: &BigFloat, p: usize) -> BigFloat {
    let pi_p = pi(p);
    if x.is_zero() {
        if y.is_zero() {
            return bf_zero(p);
        }
        let half = pi_p.div(&bf_from_i64(2, p), p, RM);
        return if y.is_positive() { half } else { half.neg() };
    }
    let base = with_consts(|cc| y.div(x, p, RM).atan(p, RM, cc));
    if x.is_positive() {
        base
    } else if y.is_negative() {
        base.sub(&pi_p, p, RM)
    } else {
        base.add(&pi_p, p, RM)
    }
}

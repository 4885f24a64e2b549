//! Gamma and multi-parameter Beta at rational arguments, arbitrary precision.
//!
//! Gamma uses the Stirling series after shifting the argument right until the
//! first omitted term (a valid remainder bound for positive real arguments)
//! drops below the target, with Bernoulli numbers computed exactly.

use std::sync::Mutex;

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::bigfloat::{
    bf_from_i64, bf_from_rational, digits_to_bits, pi, with_consts, BigComplex, RM,
};
use crate::error::{Error, Result};
use crate::exact::rational::{is_integer, Rational};

static BERNOULLI: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// B_n, cached; B_1 = -1/2.
pub fn bernoulli(n: usize) -> Rational {
    let mut cache = BERNOULLI.lock().unwrap();
    if cache.is_empty() {
        cache.push(Rational::one());
    }
    while cache.len() <= n {
        let m = cache.len();
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let mut acc = Rational::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for (j, b) in cache.iter().enumerate() {
            acc += b * Rational::from_integer(binom.clone());
            binom = &binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        let den = Rational::from_integer(BigInt::from(m + 1));
        cache.push(-acc / den);
    }
    cache[n].clone()
}

/// ln Gamma(x) for exact rational x > 0, with the Stirling remainder included
/// in the returned error bound (absolute, on ln Gamma).
fn ln_gamma_positive(x: &Rational, p: usize) -> (BigFloat, BigFloat) {
    // shift so the optimal-truncation remainder ~ e^{-2 pi x} clears p bits
    let min_x = (p as f64 * std::f64::consts::LN_2 / (2.0 * std::f64::consts::PI)).ceil() + 4.0;
    let xf: f64 = {
        let n: f64 = x.numer().to_string().parse().unwrap_or(f64::MAX);
        let d: f64 = x.denom().to_string().parse().unwrap_or(1.0);
        n / d
    };
    let shift = if xf < min_x { (min_x - xf).ceil() as u64 } else { 0 };
    let xs = x + Rational::from_integer(BigInt::from(shift));

    let wp = p + 32;
    let xb = bf_from_rational(&xs, wp);
    let ln_x = with_consts(|cc| xb.ln(wp, RM, cc));
    let two_pi = pi(wp).mul(&bf_from_i64(2, wp), wp, RM);
    let half = bf_from_rational(&Rational::new(BigInt::one(), BigInt::from(2)), wp);

    // (x - 1/2) ln x - x + ln(2 pi)/2
    let mut acc = xb.sub(&half, wp, RM).mul(&ln_x, wp, RM).sub(&xb, wp, RM);
    acc = acc.add(
        &with_consts(|cc| two_pi.ln(wp, RM, cc)).mul(&half, wp, RM),
        wp,
        RM,
    );

    // sum_{k>=1} B_{2k} / (2k (2k-1) x^{2k-1}); remainder bounded by the
    // first omitted term for real positive x
    let x2 = &xs * &xs;
    let mut xpow = xs.clone(); // x^{2k-1}
    let mut k = 1usize;
    let tol = {
        let mut t = bf_from_i64(1, 64);
        t.set_exponent(-(p as i64 + 8).min(i32::MAX as i64 / 2) as i32);
        t
    };
    let remainder;
    loop {
        let b2k = bernoulli(2 * k);
        let denom = Rational::from_integer(BigInt::from(2 * k) * BigInt::from(2 * k - 1)) * &xpow;
        let term = b2k / denom;
        let term_bf = bf_from_rational(&term, wp);
        let mag = term_bf.abs();
        if mag.cmp(&tol).map(|c| c < 0).unwrap_or(false) {
            remainder = mag;
            break;
        }
        acc = acc.add(&term_bf, wp, RM);
        xpow = xpow * &x2;
        k += 1;
        if k > 4 * min_x as usize + 64 {
            // the series stopped converging before the target: give a
            // conservative bound from the last term
            remainder = mag;
            break;
        }
    }

    // undo the shift: ln Gamma(x) = ln Gamma(x + s) - ln( x (x+1) ... (x+s-1) )
    if shift > 0 {
        let mut prod = Rational::one();
        let mut t = x.clone();
        for _ in 0..shift {
            prod *= &t;
            t += Rational::one();
        }
        // positive x: the product is positive
        let pb = bf_from_rational(&prod, wp);
        acc = acc.sub(&with_consts(|cc| pb.ln(wp, RM, cc)), wp, RM);
    }
    (acc, remainder)
}

/// Gamma(a) for exact rational a (real), to `digits` decimal digits.
pub fn eval_gamma(a: &Rational, digits: usize) -> Result<BigComplex> {
    if is_integer(a) && !a.is_positive() {
        return Err(Error::PoleOfGamma);
    }
    let p = digits_to_bits(digits);
    if a.is_positive() {
        let (lng, rem) = ln_gamma_positive(a, p);
        let g = with_consts(|cc| lng.exp(p, RM, cc));
        // |d Gamma| <= Gamma * (remainder + rounding slop)
        let slop = {
            let mut t = bf_from_i64(1, 64);
            t.set_exponent(-(p as i64 - 6).min(i32::MAX as i64 / 2) as i32);
            t
        };
        let err = g
            .abs()
            .mul(&rem.add(&slop, 64, astro_float::RoundingMode::Up), 64, astro_float::RoundingMode::Up);
        return Ok(BigComplex { re: g, im: super::bigfloat::bf_zero(p), err, prec: p });
    }
    // negative non-integer: Gamma(a) = Gamma(a + n) / (a (a+1) ... (a+n-1))
    let n = (-a.floor().to_integer()).max(BigInt::one());
    let n: u64 = n.try_into().expect("moderate shift");
    let mut prod = Rational::one();
    let mut t = a.clone();
    for _ in 0..n {
        prod *= &t;
        t += Rational::one();
    }
    let shifted = eval_gamma(&t, digits + 8)?;
    let pb = BigComplex::from_rational(&(Rational::one() / prod), p);
    Ok(shifted.mul(&pb))
}

/// Multi-parameter Beta: B(b_1, ..., b_n) = prod Gamma(b_i) / Gamma(sum b_i).
pub fn eval_beta(args: &[Rational], digits: usize) -> Result<BigComplex> {
    assert!(!args.is_empty(), "beta needs at least one argument");
    let p = digits_to_bits(digits);
    let mut num = BigComplex::one(p);
    let mut sum = Rational::zero();
    for a in args {
        num = num.mul(&eval_gamma(a, digits + 8)?);
        sum += a;
    }
    let den = eval_gamma(&sum, digits + 8)?;
    Ok(num.div(&den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, ratio};
    use crate::hyper::bigfloat::bf_from_rational;

    fn assert_close_to(v: &BigComplex, want: &str, digits: usize) {
        let want_r = crate::exact::rational::parse_rational("0").unwrap();
        let _ = want_r;
        let w = {
            // parse decimal literal into BigFloat via rational p/10^k
            let (int_part, frac_part) = want.split_once('.').unwrap_or((want, ""));
            let num: BigInt = format!("{int_part}{frac_part}").parse().unwrap();
            let den = BigInt::from(10u32).pow(frac_part.len() as u32);
            bf_from_rational(&Rational::new(num, den), v.prec)
        };
        let d = v.re.sub(&w, v.prec, RM).abs();
        let tol = {
            let mut t = bf_from_i64(1, 64);
            t.set_exponent(-((digits as f64 * 3.32) as i64) as i32);
            t
        };
        assert!(
            d.cmp(&tol).map(|c| c < 0).unwrap_or(false),
            "value {} differs from {} by {}",
            crate::hyper::bigfloat::bf_to_decimal(&v.re),
            want,
            crate::hyper::bigfloat::bf_to_decimal(&d),
        );
        assert!(v.im.is_zero());
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), rat(1));
        assert_eq!(bernoulli(1), ratio(-1, 2));
        assert_eq!(bernoulli(2), ratio(1, 6));
        assert_eq!(bernoulli(4), ratio(-1, 30));
        assert_eq!(bernoulli(12), ratio(-691, 2730));
        assert_eq!(bernoulli(3), rat(0));
    }

    #[test]
    fn gamma_small_integers() {
        let g = eval_gamma(&rat(1), 60).unwrap();
        assert_close_to(&g, "1.0", 58);
        let g = eval_gamma(&rat(5), 60).unwrap();
        assert_close_to(&g, "24.0", 57);
    }

    #[test]
    fn gamma_half_is_sqrt_pi() {
        let g = eval_gamma(&ratio(1, 2), 100).unwrap();
        // frozen reference
        assert_close_to(
            &g,
            "1.77245385090551602729816748334114518279754945612238712821380778985291128459103218137495065673854466541",
            98,
        );
    }

    #[test]
    fn gamma_third_reference() {
        let g = eval_gamma(&ratio(1, 3), 100).unwrap();
        assert_close_to(
            &g,
            "2.67893853470774763365569294097467764412868937795730110095042832759041761016774381954098288904118878941",
            98,
        );
    }

    #[test]
    fn gamma_reflection_residual() {
        // Gamma(1/3) Gamma(2/3) = 2 pi / sqrt(3)
        let digits = 80;
        let p = digits_to_bits(digits);
        let a = eval_gamma(&ratio(1, 3), digits).unwrap();
        let b = eval_gamma(&ratio(2, 3), digits).unwrap();
        let prod = a.mul(&b);
        let want = pi(p)
            .mul(&bf_from_i64(2, p), p, RM)
            .div(&bf_from_i64(3, p).sqrt(p, RM), p, RM);
        let d = prod.re.sub(&want, p, RM).abs();
        let tol = {
            let mut t = bf_from_i64(1, 64);
            t.set_exponent(-249); // 10^-75
            t
        };
        assert!(d.cmp(&tol).map(|c| c < 0).unwrap_or(false));
    }

    #[test]
    fn gamma_pole_and_negative() {
        assert!(matches!(eval_gamma(&rat(0), 50), Err(Error::PoleOfGamma)));
        assert!(matches!(eval_gamma(&rat(-3), 50), Err(Error::PoleOfGamma)));
        // Gamma(-1/2) = -2 sqrt(pi)
        let g = eval_gamma(&ratio(-1, 2), 80).unwrap();
        assert_close_to(&g, "-3.5449077018110320545963349666822903655950989122447742564276155797058225691820", 76);
    }

    #[test]
    fn beta_values() {
        let b = eval_beta(&[rat(1), rat(1)], 60).unwrap();
        assert_close_to(&b, "1.0", 58);
        // B(1/2, 1/2) = pi
        let b = eval_beta(&[ratio(1, 2), ratio(1, 2)], 100).unwrap();
        assert_close_to(
            &b,
            "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899862803482534211706798",
            97,
        );
        // B(1/2, 5/6): frozen reference
        let b = eval_beta(&[ratio(1, 2), ratio(5, 6)], 100).unwrap();
        assert_close_to(
            &b,
            "2.24050260066656043931041264166857046917507597104113201374510073138038873008787066324049681771839117414",
            97,
        );
        // error bound is reported and finite
        assert!(!b.err.is_inf() && !b.err.is_nan());
    }

    #[test]
    fn beta_multiparameter() {
        // B(1/3, 2/3) = Gamma(1/3)Gamma(2/3) = 2 pi / sqrt 3; and the
        // three-argument version B(1/2,1/2,1/2) = pi^{3/2} / Gamma(3/2)
        let digits = 70;
        let p = digits_to_bits(digits);
        let b = eval_beta(&[ratio(1, 2), ratio(1, 2), ratio(1, 2)], digits).unwrap();
        let pi_p = pi(p);
        let want = pi_p.sqrt(p, RM).powi(3, p, RM).div(
            &pi_p.sqrt(p, RM).mul(&bf_from_rational(&ratio(1, 2), p), p, RM),
            p,
            RM,
        );
        let d = b.re.sub(&want, p, RM).abs();
        let tol = {
            let mut t = bf_from_i64(1, 64);
            t.set_exponent(-216); // ~1e-65
            t
        };
        assert!(d.cmp(&tol).map(|c| c < 0).unwrap_or(false));
    }
}

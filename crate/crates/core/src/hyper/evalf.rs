//! Numeric evaluation of Gauss F(a,b,c;z): power series with a tail bound
//! inside |z| <= 1/2, Euler-integral via tanh-sinh quadrature elsewhere,
//! with contiguous a-shifts to reach the integrable region c > a > 0.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::bigfloat::{bf_from_i64, bf_from_rational, bf_zero, pi, with_consts, BigComplex, RM};
use super::gamma::eval_beta;
use super::HyperParams;
use crate::error::{Error, Result};
use crate::exact::rational::{is_integer, Rational};

/// One positive-u tanh-sinh node: t(u), 1 - t(u), weight h * w(u).
#[derive(Clone)]
struct Node {
    t: BigFloat,
    omt: BigFloat,
    w: BigFloat,
}

struct NodeTable {
    /// nodes[level] holds the nodes introduced at that level (odd multiples
    /// of h_level), level 0 holding multiples of h0 = 1/8.
    levels: Vec<Arc<Vec<Node>>>,
    center_w: BigFloat,
    cutoff: f64,
    prec: usize,
}

static TABLES: Mutex<Option<HashMap<usize, Arc<Mutex<NodeTable>>>>> = Mutex::new(None);

const H0_LOG2: i32 = 3; // h0 = 1/8

fn node_at(u: &BigFloat, p: usize) -> Node {
    // s = (pi/2) sinh u; t = 1/(1+e^{-2s}), 1-t = 1/(1+e^{2s}),
    // w(u) = (pi/4) cosh u / cosh^2 s = (pi) cosh u * t * (1-t) ... using
    // 1/cosh^2 s = 4 t (1-t)
    let half_pi = pi(p).div(&bf_from_i64(2, p), p, RM);
    let (sh, ch) = with_consts(|cc| (u.sinh(p, RM, cc), u.cosh(p, RM, cc)));
    let s = half_pi.mul(&sh, p, RM);
    let two_s = s.add(&s, p, RM);
    let e2s = with_consts(|cc| two_s.exp(p, RM, cc));
    let em2s = BigFloat::from_i8(1, p).div(&e2s, p, RM);
    let one = BigFloat::from_i8(1, p);
    let t = one.div(&one.add(&em2s, p, RM), p, RM);
    let omt = one.div(&one.add(&e2s, p, RM), p, RM);
    let w = pi(p)
        .mul(&ch, p, RM)
        .mul(&t, p, RM)
        .mul(&omt, p, RM);
    Node { t, omt, w }
}

fn get_table(p: usize, cutoff: f64) -> Arc<Mutex<NodeTable>> {
    let mut guard = TABLES.lock().unwrap();
    let map = guard.get_or_insert_with(HashMap::new);
    let entry = map.entry(p).or_insert_with(|| {
        Arc::new(Mutex::new(NodeTable {
            levels: Vec::new(),
            center_w: pi(p).div(&bf_from_i64(4, p), p, RM),
            cutoff,
            prec: p,
        }))
    });
    {
        let mut t = entry.lock().unwrap();
        if cutoff > t.cutoff {
            // a caller with weaker endpoint exponents needs nodes further out
            t.cutoff = cutoff;
            t.levels.clear();
        }
    }
    entry.clone()
}

fn ensure_level(table: &mut NodeTable, level: usize) {
    while table.levels.len() <= level {
        let l = table.levels.len();
        let p = table.prec;
        let mut nodes = Vec::new();
        // level 0: u = k/8 for k = 1.., level l>0: odd k at h = 2^-(3+l)
        let h_log2 = H0_LOG2 + l as i32;
        let step = if l == 0 { 1 } else { 2 };
        let start = 1;
        let mut k = start;
        loop {
            let mut u = bf_from_i64(k, p);
            u.set_exponent(u.exponent().unwrap_or(0) - h_log2);
            let uf: f64 = k as f64 / f64::powi(2.0, h_log2);
            if uf > table.cutoff {
                break;
            }
            nodes.push(node_at(&u, p));
            k += step;
        }
        table.levels.push(Arc::new(nodes));
    }
}

/// Integrate f over (0,1) by tanh-sinh refinement. `f` receives (t, 1-t).
/// `min_exponent` is a lower bound for the endpoint singularity exponents of
/// f (e.g. -0.95 for t^{-0.95}); tolerance is absolute.
pub fn tanh_sinh_01<F>(f: F, p: usize, min_exponent: f64, tol: &BigFloat) -> (BigComplex, BigFloat)
where
    F: Fn(&BigFloat, &BigFloat) -> BigComplex,
{
    assert!(min_exponent > -1.0, "integrand must be integrable");
    // cutoff U: exp(-(pi/2) e^U (1 + mu)) < 2^-(p+16)
    let target = (p as f64 + 16.0) * std::f64::consts::LN_2;
    let cutoff = (2.0 * target / (std::f64::consts::PI * (1.0 + min_exponent))).ln() + 0.1;
    let table = get_table(p, cutoff);

    let eval_node = |n: &Node| -> BigComplex {
        // f(t) w + f(1-t) w: symmetric pair at +-u
        let a = f(&n.t, &n.omt);
        let b = f(&n.omt, &n.t);
        a.add(&b).mul_real(&n.w)
    };

    let mut sums: Vec<BigComplex> = Vec::new();
    let mut prev: Option<BigComplex> = None;
    let mut last_diff = BigFloat::from_f64(f64::INFINITY, 64);
    let max_level = 16usize;
    for level in 0..max_level {
        let nodes = {
            let mut t = table.lock().unwrap();
            ensure_level(&mut t, level);
            t.levels[level].clone()
        };
        let mut s = BigComplex::zero(p);
        for n in nodes.iter() {
            s = s.add(&eval_node(n));
        }
        if level == 0 {
            let center = f(
                &bf_from_rational(&Rational::new(BigInt::one(), BigInt::from(2)), p),
                &bf_from_rational(&Rational::new(BigInt::one(), BigInt::from(2)), p),
            );
            let cw = { table.lock().unwrap().center_w.clone() };
            s = s.add(&center.mul_real(&cw));
        }
        sums.push(s);
        // I_level = h_level * (all node sums up to this level)
        let mut total = BigComplex::zero(p);
        for partial in &sums {
            total = total.add(partial);
        }
        let h_exp = -(H0_LOG2 + level as i32);
        let mut h = bf_from_i64(1, p);
        h.set_exponent(h.exponent().unwrap_or(1) + h_exp);
        let estimate = total.mul_real(&h);
        if let Some(last) = &prev {
            let diff = estimate.sub(last).abs();
            let mut d64 = diff.clone();
            let _ = d64.set_precision(64, astro_float::RoundingMode::Up);
            last_diff = d64;
            if last_diff.cmp(tol).map(|c| c <= 0).unwrap_or(false) {
                let err = last_diff.add(&estimate.err, 64, astro_float::RoundingMode::Up);
                return (estimate, err);
            }
        }
        prev = Some(estimate);
    }
    let estimate = prev.expect("at least one level");
    let err = last_diff.add(&estimate.err, 64, astro_float::RoundingMode::Up);
    (estimate, err)
}

/// Power series sum with rigorous tail cutoff; valid for |z| < 1 and used
/// for |z| <= 1/2 (plus the exactly-terminating polynomial cases).
fn series(params: &HyperParams, z: &BigComplex, p: usize) -> BigComplex {
    let HyperParams { a, b, c } = params;
    // terminating case: a or b a non-positive integer
    let neg_int_bound = |x: &Rational| -> Option<u64> {
        if is_integer(x) && !x.is_positive() {
            Some((-x.to_integer()).try_into().expect("small"))
        } else {
            None
        }
    };
    let finite_n = match (neg_int_bound(a), neg_int_bound(b)) {
        (Some(na), Some(nb)) => Some(na.min(nb)),
        (Some(na), None) => Some(na),
        (None, Some(nb)) => Some(nb),
        (None, None) => None,
    };

    let tol = {
        let mut t = bf_from_i64(1, 64);
        t.set_exponent(-(p as i64 + 8).min(i32::MAX as i64 / 2) as i32);
        t
    };
    let mut sum = BigComplex::one(p);
    let mut term = BigComplex::one(p);
    let mut n = 0u64;
    // |z| upper bound for the tail estimate
    let zmag = {
        let mut m = z.abs();
        let _ = m.set_precision(64, astro_float::RoundingMode::Up);
        m
    };
    loop {
        let ratio = (a + Rational::from_integer(BigInt::from(n)))
            * (b + Rational::from_integer(BigInt::from(n)))
            / ((c + Rational::from_integer(BigInt::from(n)))
                * (Rational::one() + Rational::from_integer(BigInt::from(n))));
        term = term.mul_real(&bf_from_rational(&ratio, p)).mul(z);
        sum = sum.add(&term);
        n += 1;
        if let Some(fin) = finite_n {
            if n >= fin {
                return sum;
            }
            continue;
        }
        // tail bound once the ratio has stabilized: for k >= n,
        // |term_{k+1}/term_k| <= rho with rho < 1
        if n >= 8 {
            let max_abs = |x: &Rational| -> f64 {
                let nf: f64 = x.numer().to_string().parse().unwrap_or(f64::MAX);
                let df: f64 = x.denom().to_string().parse().unwrap_or(1.0);
                (nf / df).abs()
            };
            let big = max_abs(a).max(max_abs(b)).max(max_abs(c)) + 1.0;
            if (n as f64) > 4.0 * big {
                let nf = n as f64;
                let grow = (1.0 + big / nf) * (1.0 + 2.0 * big / nf);
                let rho = zmag.mul(&BigFloat::from_f64(grow, 64), 64, astro_float::RoundingMode::Up);
                if rho.cmp(&BigFloat::from_f64(0.96, 64)).map(|c| c < 0).unwrap_or(false) {
                    let tmag = term.abs_upper();
                    let one = bf_from_i64(1, 64);
                    let tail = tmag
                        .mul(&rho, 64, astro_float::RoundingMode::Up)
                        .div(&one.sub(&rho, 64, astro_float::RoundingMode::Down), 64, astro_float::RoundingMode::Up);
                    if tail.cmp(&tol).map(|c| c < 0).unwrap_or(false) {
                        let err = sum.err.add(&tail, 64, astro_float::RoundingMode::Up);
                        return BigComplex { err, ..sum };
                    }
                }
            }
        }
        if n > 200_000 {
            // convergence failure surfaces as a huge error bound
            return BigComplex {
                err: BigFloat::from_f64(f64::INFINITY, 64),
                ..sum
            };
        }
    }
}

/// Euler-integral evaluation, requiring c > a > 0 exactly:
/// F = (1/B(a, c-a)) Int_0^1 t^{a-1} (1-t)^{c-a-1} (1-z t)^{-b} dt.
fn euler_integral(params: &HyperParams, z: &BigComplex, p: usize, digits: usize) -> Result<BigComplex> {
    let HyperParams { a, b, c } = params;
    let ca = c - a;
    debug_assert!(a.is_positive() && ca.is_positive());
    let am1 = a - Rational::one();
    let cam1 = &ca - Rational::one();
    let am1_bf = bf_from_rational(&am1, p);
    let cam1_bf = bf_from_rational(&cam1, p);
    let minus_b = -b.clone();
    let mb_bf = BigComplex::from_rational(&minus_b, p);

    let to_f64 = |x: &Rational| -> f64 {
        let nf: f64 = x.numer().to_string().parse().unwrap_or(f64::MAX);
        let df: f64 = x.denom().to_string().parse().unwrap_or(1.0);
        nf / df
    };
    let min_exp = to_f64(&am1).min(to_f64(&cam1)).min(0.0).max(-0.97);

    let tol = {
        let mut t = bf_from_i64(1, 64);
        t.set_exponent(-(p as i64 - 10).min(i32::MAX as i64 / 2) as i32);
        t
    };
    let integrand = |t: &BigFloat, omt: &BigFloat| -> BigComplex {
        // t^{a-1} (1-t)^{c-a-1}: real positive powers
        let tp = with_consts(|cc| {
            t.ln(p, RM, cc).mul(&am1_bf, p, RM).exp(p, RM, cc)
        });
        let omtp = with_consts(|cc| {
            omt.ln(p, RM, cc).mul(&cam1_bf, p, RM).exp(p, RM, cc)
        });
        // (1 - z t)^{-b}: principal complex power
        let zt = z.mul_real(t);
        let w = BigComplex::one(p).sub(&zt);
        let wp = w.ln().mul(&mb_bf).exp();
        wp.mul_real(&tp).mul_real(&omtp)
    };
    let (integral, qerr) = tanh_sinh_01(integrand, p, min_exp, &tol);
    let beta = eval_beta(&[a.clone(), ca], digits + 8)?;
    let mut result = integral.div(&beta);
    result.err = result.err.add(&qerr, 64, astro_float::RoundingMode::Up);
    Ok(result)
}

/// True iff z touches the branch cut [1, inf).
fn on_branch_cut(z: &BigComplex) -> bool {
    z.im.is_zero() && z.re.cmp(&bf_from_i64(1, 64)).map(|c| c >= 0).unwrap_or(false)
}

/// Evaluate F(a,b,c;z) at `digits` decimal digits with an error bound.
pub fn eval_hyper(params: &HyperParams, z: &BigComplex, digits: usize) -> Result<BigComplex> {
    let p = super::bigfloat::digits_to_bits(digits) + 32;
    eval_hyper_bits(params, z, p, digits)
}

fn eval_hyper_bits(
    params: &HyperParams,
    z: &BigComplex,
    p: usize,
    digits: usize,
) -> Result<BigComplex> {
    let HyperParams { a, b, c } = params;
    if is_integer(c) && !c.is_positive() {
        return Err(Error::Parse("hypergeometric c parameter is a non-positive integer".into()));
    }
    if z.is_real_zero() {
        return Ok(BigComplex::one(p));
    }
    // exact polynomial when a or b is a non-positive integer
    let neg_int = |x: &Rational| is_integer(x) && !x.is_positive();
    if neg_int(a) || neg_int(b) {
        return Ok(series(params, z, p));
    }
    let half = BigFloat::from_f64(0.5001, 64);
    let zmag = {
        let mut m = z.abs();
        let _ = m.set_precision(64, astro_float::RoundingMode::Up);
        m
    };
    if zmag.cmp(&half).map(|c| c <= 0).unwrap_or(false) {
        return Ok(series(params, z, p));
    }
    if on_branch_cut(z) {
        return Err(Error::BranchCut);
    }
    // Euler region: c > a > 0, possibly after swapping a and b
    let ca_ok = |a: &Rational, c: &Rational| a.is_positive() && (c - a).is_positive();
    if ca_ok(a, c) {
        return euler_integral(params, z, p, digits);
    }
    if ca_ok(b, c) {
        let swapped = HyperParams { a: b.clone(), b: a.clone(), c: c.clone() };
        return euler_integral(&swapped, z, p, digits);
    }
    // raise a by contiguous shifts: with a1 = a + 1,
    // (c-a1) F(a1-1) + (2 a1 - c - a1 z + b z) F(a1) + a1 (z-1) F(a1+1) = 0
    // choose the shift count n with 0 < a + n < c
    let shift = {
        let lo = -a.clone(); // need n > lo
        let hi = c - a; // need n < hi
        let n0 = lo.floor().to_integer() + BigInt::one();
        if Rational::from_integer(n0.clone()) < hi && n0.is_positive() {
            let n: u64 = n0.try_into().map_err(|_| Error::NonNormalizable)?;
            Some(n)
        } else {
            None
        }
    };
    let Some(n) = shift else {
        return Err(Error::NonNormalizable);
    };
    // evaluate F(a+n) and F(a+n+1) in the good region, then recurse downward
    let mut upper = HyperParams { a: a + Rational::from_integer(BigInt::from(n)), b: b.clone(), c: c.clone() };
    let upper2 = HyperParams { a: &upper.a + Rational::one(), b: b.clone(), c: c.clone() };
    if !ca_ok(&upper2.a, c) {
        // the window (0, c - a) is too tight for two adjacent seed points
        return Err(Error::NonNormalizable);
    }
    let mut f1 = eval_hyper_bits(&upper, z, p, digits)?; // F(a+n)
    let mut f2 = eval_hyper_bits(&upper2, z, p, digits)?; // F(a+n+1)
    // now step down: F(a1-1) = -[(2a1 - c - a1 z + b z) F(a1) + a1(z-1) F(a1+1)]/(c - a1)
    let one = BigComplex::one(p);
    let zc = z.clone();
    for step in 0..n {
        let a1 = &upper.a; // current lower index is a1 - 1
        let ca1 = c - a1;
        if ca1.is_zero() {
            return Err(Error::NonNormalizable);
        }
        let coef_mid = {
            // 2 a1 - c - a1 z + b z
            let t1 = BigComplex::from_rational(&(Rational::from_integer(BigInt::from(2)) * a1 - c), p);
            let t2 = zc.mul(&BigComplex::from_rational(&(b - a1), p));
            t1.add(&t2)
        };
        let coef_hi = zc.sub(&one).mul(&BigComplex::from_rational(a1, p));
        let inv = BigComplex::from_rational(&(-Rational::one() / ca1), p);
        let lower = coef_mid.mul(&f1).add(&coef_hi.mul(&f2)).mul(&inv);
        f2 = f1;
        f1 = lower;
        upper.a -= Rational::one();
        let _ = step;
    }
    Ok(f1)
}

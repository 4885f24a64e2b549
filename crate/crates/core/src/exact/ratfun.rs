//! Rational functions in one variable (the deformation parameter lambda).

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::UniPoly;
use super::rational::Rational;

/// num/den with den monic and gcd(num, den) = 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalFunction {
    pub num: UniPoly,
    pub den: UniPoly,
}

impl RationalFunction {
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        let mut rf = RationalFunction { num, den };
        rf.reduce();
        rf
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RationalFunction { num: p, den: UniPoly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction::from_poly(UniPoly::constant(c))
    }

    pub fn zero() -> Self {
        RationalFunction::from_poly(UniPoly::zero())
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(UniPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = UniPoly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree().unwrap_or(0) > 0 {
            self.num = self.num.exact_div(&g).expect("gcd divides");
            self.den = self.den.exact_div(&g).expect("gcd divides");
        }
        // make denominator monic
        let lead = self.den.leading().expect("nonzero den").clone();
        if !lead.is_one() {
            let inv = Rational::one() / lead;
            self.den = self.den.scale(&inv);
            self.num = self.num.scale(&inv);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        RationalFunction::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        RationalFunction::new(
            self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        RationalFunction::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    pub fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RationalFunction::new(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Evaluate at an exact rational point; None if the denominator vanishes.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }
}

impl std::fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == UniPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::ratio;

    #[test]
    fn reduces_on_construction() {
        // (x^2 - 1)/(x - 1) = x + 1
        let rf = RationalFunction::new(UniPoly::from_i64(&[-1, 0, 1]), UniPoly::from_i64(&[-1, 1]));
        assert_eq!(rf.num, UniPoly::from_i64(&[1, 1]));
        assert_eq!(rf.den, UniPoly::one());
    }

    #[test]
    fn monic_denominator() {
        // 1/(2x) -> (1/2)/x
        let rf = RationalFunction::new(UniPoly::one(), UniPoly::from_i64(&[0, 2]));
        assert_eq!(rf.den, UniPoly::from_i64(&[0, 1]));
        assert_eq!(rf.num, UniPoly::constant(ratio(1, 2)));
    }

    #[test]
    fn arithmetic() {
        let x = RationalFunction::from_poly(UniPoly::x());
        let one = RationalFunction::one();
        let inv_x = one.div(&x);
        // x * 1/x = 1
        assert!(x.mul(&inv_x).is_one());
        // x + 1/x = (x^2+1)/x
        let s = x.add(&inv_x);
        assert_eq!(s.num, UniPoly::from_i64(&[1, 0, 1]));
        assert_eq!(s.den, UniPoly::from_i64(&[0, 1]));
    }
}

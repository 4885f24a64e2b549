//! Classification, rewriting, and numeric evaluation of Gauss hypergeometric
//! functions.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::exact::rational::{is_integer, is_odd_integer, Rational};

pub mod bigfloat;
pub mod evalf;
pub mod gamma;

pub use bigfloat::{digits_to_bits, BigComplex};
pub use evalf::{eval_hyper, tanh_sinh_01};
pub use gamma::{eval_beta, eval_gamma};

/// Parameters of a Gauss hypergeometric function F(a,b,c;z).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl HyperParams {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        HyperParams { a, b, c }
    }
}

/// F(a,b,c) is irreducible iff none of a, b, c-a, c-b is an integer.
pub fn is_irreducible(p: &HyperParams) -> bool {
    let HyperParams { a, b, c } = p;
    ![a.clone(), b.clone(), c - a, c - b].iter().any(is_integer)
}

/// Two F's are contiguous iff all three parameter differences are integers.
pub fn are_contiguous(p: &HyperParams, q: &HyperParams) -> bool {
    is_integer(&(&p.a - &q.a)) && is_integer(&(&p.b - &q.b)) && is_integer(&(&p.c - &q.c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Algebraicity {
    Algebraic,
    NotAlgebraic,
    NotApplicable,
}

/// Reducible-case algebraicity: with angular parameters l = 1-c, m = c-a-b,
/// n = a-b, the function is algebraic iff exactly two of l+m+n, -l+m+n,
/// l-m+n, l+m-n are odd integers. Irreducible parameters: NotApplicable.
pub fn reducible_algebraicity_test(p: &HyperParams) -> Algebraicity {
    if is_irreducible(p) {
        return Algebraicity::NotApplicable;
    }
    let l = Rational::from_integer(1.into()) - &p.c;
    let m = &p.c - &p.a - &p.b;
    let n = &p.a - &p.b;
    let sums = [
        &l + &m + &n,
        -&l + &m + &n,
        &l - &m + &n,
        &l + &m - &n,
    ];
    let odd = sums.iter().filter(|s| is_odd_integer(s)).count();
    if odd == 2 {
        Algebraicity::Algebraic
    } else {
        Algebraicity::NotAlgebraic
    }
}

/// The negation helper used above.
impl std::ops::Neg for &HyperParams {
    type Output = HyperParams;
    fn neg(self) -> HyperParams {
        HyperParams { a: -self.a.clone(), b: -self.b.clone(), c: -self.c.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, ratio};

    fn hp(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> HyperParams {
        HyperParams::new(ratio(a.0, a.1), ratio(b.0, b.1), ratio(c.0, c.1))
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&hp((5, 6), (1, 6), (5, 3))));
        assert!(!is_irreducible(&hp((4, 3), (-4, 3), (8, 3)))); // c - b = 4
        assert!(!is_irreducible(&HyperParams::new(rat(1), rat(1), rat(2))));
    }

    #[test]
    fn contiguity() {
        let p = hp((4, 3), (-4, 3), (8, 3));
        let q = hp((4, 3), (-1, 3), (8, 3));
        assert!(are_contiguous(&p, &q));
        assert!(are_contiguous(&p, &p));
        assert!(!are_contiguous(&hp((1, 2), (1, 2), (1, 1)), &hp((1, 3), (1, 2), (1, 1))));
    }

    #[test]
    fn algebraicity_criterion() {
        // only -l+m+n = 7 is an odd integer
        assert_eq!(reducible_algebraicity_test(&hp((4, 3), (-4, 3), (8, 3))), Algebraicity::NotAlgebraic);
        // F(-1/2, 1, 1; z) = (1-z)^{1/2}
        assert_eq!(
            reducible_algebraicity_test(&HyperParams::new(ratio(-1, 2), rat(1), rat(1))),
            Algebraicity::Algebraic
        );
        assert_eq!(reducible_algebraicity_test(&hp((5, 6), (1, 6), (5, 3))), Algebraicity::NotApplicable);
    }

    #[test]
    fn all_named_reducible_fs_not_algebraic() {
        // the lone F's of the two period propositions
        let named = [
            hp((4, 3), (-4, 3), (8, 3)),
            hp((4, 3), (-1, 3), (8, 3)),
            hp((2, 3), (-2, 3), (4, 3)),
            hp((2, 3), (1, 3), (4, 3)),
            hp((2, 3), (-5, 3), (4, 3)),
            hp((2, 3), (-8, 3), (4, 3)),
            hp((7, 3), (-1, 3), (11, 3)),
            hp((5, 3), (1, 3), (7, 3)),
            hp((8, 3), (1, 3), (10, 3)),
            hp((11, 3), (1, 3), (13, 3)),
        ];
        for p in &named {
            assert_eq!(
                reducible_algebraicity_test(p),
                Algebraicity::NotAlgebraic,
                "{p:?} should be reducible and non-algebraic"
            );
        }
    }
}

//! Dense univariate polynomials over the integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Polynomial with arbitrary-precision integer coefficients.
///
/// `coeffs[k]` is the coefficient of `x^k`. The vector never ends in a zero,
/// so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero past the end.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the highest nonzero coefficient. The zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Coefficient of `x^degree`; zero for the zero polynomial.
    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_one()
    }

    /// Sum of the absolute values of the coefficients.
    ///
    /// A polynomial with positive leading coefficient is positive at every
    /// integer `t >= coeff_bound(p)`, and such a `t` is itself positive.
    pub fn coeff_bound(&self) -> BigInt {
        self.coeffs.iter().map(BigInt::abs).sum()
    }

    /// Horner evaluation at an integer point.
    pub fn eval_at(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact division by another polynomial.
    ///
    /// Returns `None` when `divisor` is zero or does not divide `self` over
    /// the integers.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.degree() < divisor.degree() {
            return None;
        }
        let lead = divisor.leading_coeff();
        let dd = divisor.degree();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * dc;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(quot))
    }
}

impl From<BigInt> for IntPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        IntPoly::new(coeffs)
    }
}

impl<'a> Sub<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(len, BigInt::zero());
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        IntPoly::new(coeffs)
    }
}

impl<'a> Mul<&'a IntPoly> for &'a IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
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
        IntPoly::new(coeffs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &'a IntPoly) -> IntPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        -&self
    }
}

/// Renders the coefficient list lowest degree first, e.g. `[0, 1, -2, 1]`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn degree_conventions() {
        assert_eq!(IntPoly::zero().degree(), 0);
        assert_eq!(p(&[0, 1, -2, 1]).degree(), 3);
        assert_eq!(p(&[7]).degree(), 0);
    }

    #[test]
    fn trailing_zeros_are_stripped() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert!(p(&[0, 0]).is_zero());
    }

    #[test]
    fn worked_char_poly_product() {
        let xm1 = p(&[-1, 1]);
        let prod = &(&xm1 * &xm1) * &IntPoly::x();
        assert_eq!(prod, p(&[0, 1, -2, 1]));
    }

    #[test]
    fn identities() {
        let q = p(&[3, -4, 1]);
        assert_eq!(&q + &IntPoly::zero(), q);
        assert!((&q - &q).is_zero());
        assert_eq!(-(-q.clone()), q);
        assert!(q.scale(&big(0)).is_zero());
        assert_eq!(q.scale(&big(-2)), p(&[-6, 8, -2]));
    }

    #[test]
    fn evaluation() {
        assert_eq!(p(&[0, 1, -2, 1]).eval_at(&big(4)), big(36));
        assert_eq!(p(&[1, -4, 3]).eval_at(&big(4)), big(33));
        assert_eq!(IntPoly::zero().eval_at(&big(123)), big(0));
    }

    #[test]
    fn evaluation_does_not_overflow() {
        let t = BigInt::from(10u64).pow(30);
        let v = p(&[0, 0, 0, 1]).eval_at(&t);
        assert_eq!(v, BigInt::from(10u64).pow(90));
    }

    #[test]
    fn coeff_bounds() {
        assert_eq!(p(&[0, 1, -2, 1]).coeff_bound(), big(4));
        assert_eq!(IntPoly::zero().coeff_bound(), big(0));
        assert_eq!(p(&[-2, -2, 1]).coeff_bound(), big(5));
    }

    #[test]
    fn leading_coefficients() {
        assert_eq!(p(&[0, 1, -2, 1]).leading_coeff(), big(1));
        assert_eq!(p(&[1, -4, 3]).leading_coeff(), big(3));
        assert_eq!(IntPoly::zero().leading_coeff(), big(0));
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[0, 1, -2, 1]).to_string(), "[0, 1, -2, 1]");
        assert_eq!(IntPoly::zero().to_string(), "[]");
    }

    #[test]
    fn exact_division() {
        let a = p(&[-1, 1]);
        let b = p(&[2, 0, 3]);
        assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        assert_eq!(p(&[1, 1]).div_exact(&p(&[0, 2])), None);
        assert_eq!(p(&[1, 0, 1]).div_exact(&p(&[1, 1])), None);
        assert_eq!(a.div_exact(&IntPoly::zero()), None);
    }

    #[test]
    fn positivity_for_constants() {
        // degree 0: p = c with c >= 1, t >= c
        for c in 1..20 {
            let q = p(&[c]);
            let t = q.coeff_bound();
            assert!(t > big(0));
            assert!(q.eval_at(&t) > big(0));
        }
    }

    fn arb_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-100i64..=100, 0..=9).prop_map(|c| p(&c))
    }

    fn arb_positive_lead() -> impl Strategy<Value = IntPoly> {
        (prop::collection::vec(-100i64..=100, 0..=8), 1i64..=100).prop_map(|(mut c, lead)| {
            c.push(lead);
            p(&c)
        })
    }

    fn normalized(q: &IntPoly) -> bool {
        q.coeffs().last().is_none_or(|c| !c.is_zero())
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!(normalized(&(&a + &b)));
            prop_assert!(normalized(&(&a - &b)));
            prop_assert!(normalized(&(&a * &b)));
        }

        #[test]
        fn eval_is_homomorphism(a in arb_poly(), b in arb_poly(), t in -1000i64..1000) {
            let t = big(t);
            prop_assert_eq!((&a * &b).eval_at(&t), a.eval_at(&t) * b.eval_at(&t));
            prop_assert_eq!((&a + &b).eval_at(&t), a.eval_at(&t) + b.eval_at(&t));
        }

        #[test]
        fn coeff_bound_sub_additive_and_multiplicative(a in arb_poly(), b in arb_poly()) {
            prop_assert!((&a + &b).coeff_bound() <= a.coeff_bound() + b.coeff_bound());
            prop_assert!((&a * &b).coeff_bound() <= a.coeff_bound() * b.coeff_bound());
        }

        #[test]
        fn positive_beyond_coeff_bound(q in arb_positive_lead(), extra in 0u32..50) {
            let t = q.coeff_bound() + BigInt::from(extra);
            prop_assert!(t > big(0));
            prop_assert!(q.eval_at(&t) > big(0));
        }
    }
}

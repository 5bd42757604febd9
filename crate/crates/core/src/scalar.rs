//! Coefficient abstraction shared by the exact evaluator and the degree probe.
//!
//! Every family and identity side is written once against [`QAlgebra`]. Run
//! with a [`QContext`](crate::qarith::QContext) it produces exact rational
//! coefficients at a fixed `q`; run with a
//! [`DegreeProbe`](crate::qdegree::DegreeProbe) it produces, per coefficient,
//! a bound on the degree in `q` of the cleared numerator.

use std::fmt;

use crate::error::Result;
use crate::qarith::Rational;
use num_traits::{One, Zero};

/// Ring operations needed by [`MPoly`](crate::mpoly::MPoly).
pub trait Coeff: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_rational(r: &Rational) -> Self;

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_rational(&Rational::new(numer.into(), denom.into()))
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

/// Source of the scalar q-quantities used by the family constructors.
///
/// Division only ever happens by q-integers, q-factorials and powers of `q`,
/// so the trait exposes those inverses directly instead of a general `div`.
pub trait QAlgebra: Sync {
    type Scalar: Coeff;

    /// `q^exp`; negative exponents fail at `q = 0`.
    fn q_power(&self, exp: i64) -> Result<Self::Scalar>;

    /// `[n]_{q^m}`.
    fn q_number(&self, base_exp: u32, n: u32) -> Self::Scalar;

    fn q_number_inv(&self, base_exp: u32, n: u32) -> Result<Self::Scalar>;

    fn q_factorial(&self, base_exp: u32, n: u32) -> Self::Scalar {
        (1..=n).fold(Self::Scalar::one(), |acc, k| acc.times(&self.q_number(base_exp, k)))
    }

    fn q_factorial_inv(&self, base_exp: u32, n: u32) -> Result<Self::Scalar> {
        let mut acc = Self::Scalar::one();
        for k in 1..=n {
            acc = acc.times(&self.q_number_inv(base_exp, k)?);
        }
        Ok(acc)
    }

    /// Gaussian binomial in base `q^m`; zero outside `0 <= k <= n`.
    fn q_binomial(&self, base_exp: u32, n: u32, k: u32) -> Result<Self::Scalar>;

    /// `[mk]_q!! = [m]_q [2m]_q ... [mk]_q`.
    fn q_semifactorial(&self, m: u32, k: u32) -> Self::Scalar {
        (1..=k).fold(Self::Scalar::one(), |acc, l| acc.times(&self.q_number(1, m * l)))
    }

    fn q_semifactorial_inv(&self, m: u32, k: u32) -> Result<Self::Scalar> {
        let mut acc = Self::Scalar::one();
        for l in 1..=k {
            acc = acc.times(&self.q_number_inv(1, m * l)?);
        }
        Ok(acc)
    }
}

/// Exact binomial coefficient `C(n, k)` as a rational.
pub fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return <Rational as num_traits::Zero>::zero();
    }
    let mut acc = <Rational as num_traits::One>::one();
    for i in 0..k {
        acc = acc * Rational::from_integer((n - i).into()) / Rational::from_integer((i + 1).into());
    }
    acc
}

pub fn factorial(n: u32) -> Rational {
    (1..=n).fold(<Rational as num_traits::One>::one(), |acc, k| acc * Rational::from_integer(k.into()))
}

/// `C(k, 2)`, the exponent of `q` in the JHC and `E_q` weights.
pub fn choose2(k: u32) -> i64 {
    let k = i64::from(k);
    k * (k - 1) / 2
}

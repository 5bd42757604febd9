//! Degree bookkeeping in `q` for identity certification.
//!
//! Every coefficient produced by the family constructors is a rational
//! function of `q` whose denominator is a product of powers of `q` and
//! q-integers. Since `[n]_{q^m} = (q^{mn} - 1)/(q^m - 1)`, each q-integer
//! factors as the product of cyclotomic polynomials `Phi_d(q)` over the `d`
//! dividing `mn` but not `m`. [`QDegree`] stores such a denominator as
//! cyclotomic exponents together with an upper bound on the degree of the
//! numerator; sums take the lcm of denominators.
//!
//! If a difference polynomial evaluated through [`DegreeProbe`] has every
//! coefficient bounded by numerator degree `D`, the exact difference vanishes
//! identically in `q` as soon as it vanishes at `D + 1` distinct values of `q`
//! where no denominator factor vanishes (any positive rational).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::qarith::Rational;
use crate::scalar::{Coeff, QAlgebra};
use num_traits::Zero;

/// Key `0` stands for the factor `q`; key `d >= 2` for `Phi_d(q)`.
type Denominator = BTreeMap<u32, u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QDegree {
    Zero,
    Frac { num: i64, den: Denominator },
}

fn euler_phi(mut n: u32) -> u32 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn factor_degree(key: u32) -> i64 {
    if key == 0 {
        1
    } else {
        i64::from(euler_phi(key))
    }
}

fn den_degree(den: &Denominator) -> i64 {
    den.iter().map(|(&d, &e)| factor_degree(d) * i64::from(e)).sum()
}

/// Cyclotomic indices of `[n]_{q^m}`.
fn q_number_factors(base_exp: u32, n: u32) -> impl Iterator<Item = u32> {
    let total = base_exp * n;
    (2..=total).filter(move |d| total.is_multiple_of(*d) && !base_exp.is_multiple_of(*d))
}

impl QDegree {
    pub fn constant() -> Self {
        QDegree::Frac { num: 0, den: Denominator::new() }
    }

    /// Upper bound on the degree of the numerator once the denominator is cleared.
    pub fn numerator_degree(&self) -> Option<i64> {
        match self {
            QDegree::Zero => None,
            QDegree::Frac { num, .. } => Some(*num),
        }
    }

    pub fn denominator_degree(&self) -> i64 {
        match self {
            QDegree::Zero => 0,
            QDegree::Frac { den, .. } => den_degree(den),
        }
    }
}

impl Coeff for QDegree {
    fn zero() -> Self {
        QDegree::Zero
    }

    fn one() -> Self {
        QDegree::constant()
    }

    fn is_zero(&self) -> bool {
        matches!(self, QDegree::Zero)
    }

    fn plus(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (QDegree::Zero, other) | (other, QDegree::Zero) => other.clone(),
            (QDegree::Frac { num: na, den: da }, QDegree::Frac { num: nb, den: db }) => {
                let mut lcm = da.clone();
                for (&d, &e) in db {
                    let slot = lcm.entry(d).or_insert(0);
                    *slot = (*slot).max(e);
                }
                let dl = den_degree(&lcm);
                let num = (na + dl - den_degree(da)).max(nb + dl - den_degree(db));
                QDegree::Frac { num, den: lcm }
            }
        }
    }

    fn times(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (QDegree::Zero, _) | (_, QDegree::Zero) => QDegree::Zero,
            (QDegree::Frac { num: na, den: da }, QDegree::Frac { num: nb, den: db }) => {
                let mut den = da.clone();
                for (&d, &e) in db {
                    *den.entry(d).or_insert(0) += e;
                }
                QDegree::Frac { num: na + nb, den }
            }
        }
    }

    fn negated(&self) -> Self {
        self.clone()
    }

    fn from_rational(r: &Rational) -> Self {
        if Zero::is_zero(r) {
            QDegree::Zero
        } else {
            QDegree::constant()
        }
    }
}

/// [`QAlgebra`] over [`QDegree`]: evaluates constructors symbolically in `q`,
/// keeping only degree information.
#[derive(Debug, Clone, Copy, Default)]
pub struct DegreeProbe;

impl QAlgebra for DegreeProbe {
    type Scalar = QDegree;

    fn q_power(&self, exp: i64) -> Result<QDegree> {
        if exp >= 0 {
            Ok(QDegree::Frac { num: exp, den: Denominator::new() })
        } else {
            Ok(QDegree::Frac { num: 0, den: Denominator::from([(0, exp.unsigned_abs() as u32)]) })
        }
    }

    fn q_number(&self, base_exp: u32, n: u32) -> QDegree {
        if n == 0 {
            QDegree::Zero
        } else {
            QDegree::Frac { num: i64::from(base_exp * (n - 1)), den: Denominator::new() }
        }
    }

    fn q_number_inv(&self, base_exp: u32, n: u32) -> Result<QDegree> {
        if n == 0 {
            return Err(Error::InvalidArgument(format!("[0]_{{q^{base_exp}}} has no inverse")));
        }
        let mut den = Denominator::new();
        for d in q_number_factors(base_exp, n) {
            *den.entry(d).or_insert(0) += 1;
        }
        Ok(QDegree::Frac { num: 0, den })
    }

    fn q_binomial(&self, base_exp: u32, n: u32, k: u32) -> Result<QDegree> {
        if k > n {
            return Ok(QDegree::Zero);
        }
        Ok(QDegree::Frac { num: i64::from(base_exp * k * (n - k)), den: Denominator::new() })
    }
}

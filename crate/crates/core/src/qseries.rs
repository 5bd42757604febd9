//! Truncated formal power series in `t` with polynomial coefficients, and the
//! kernels appearing in the generating functions: `e_q`, `E_{q^m}` and the
//! `(q, m)` Bessel-Tricomi function.
//!
//! Kernels only accept arguments of the shape `c * t^p` with `c` free of `t`;
//! that covers every kernel invocation needed here without general series
//! composition.

use crate::error::{Error, Result};
use crate::mpoly::{MPoly, Monomial, Var};
use crate::scalar::{choose2, Coeff, QAlgebra};

#[derive(Debug, Clone, PartialEq)]
pub struct TSeries<C: Coeff = crate::qarith::Rational> {
    coeffs: Vec<MPoly<C>>,
}

impl<C: Coeff> TSeries<C> {
    pub fn zero(order: usize) -> Self {
        TSeries { coeffs: vec![MPoly::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = TSeries::zero(order);
        s.coeffs[0] = MPoly::one();
        s
    }

    /// Builds a series from its first `order + 1` coefficients.
    pub fn from_coeffs(coeffs: Vec<MPoly<C>>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant coefficient");
        TSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Result<&MPoly<C>> {
        self.coeffs.get(n).ok_or(Error::OrderExceeded { index: n, order: self.order() })
    }

    pub fn coeffs(&self) -> &[MPoly<C>] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        TSeries { coeffs: self.coeffs[..=order.min(self.order())].to_vec() }
    }

    /// Cauchy product, truncated at the smaller order.
    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut out = TSeries::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        TSeries { coeffs: (0..=order).map(|n| &self.coeffs[n] - &rhs.coeffs[n]).collect() }
    }

    /// `sum_n c_n t^n` as a polynomial in `var`.
    pub fn to_poly(&self, var: Var) -> MPoly<C> {
        let mut out = MPoly::zero();
        for (n, c) in self.coeffs.iter().enumerate() {
            out = &out + &c.mul_monomial(&Monomial::var(var, n as u16));
        }
        out
    }
}

/// Places `weight(n) * arg^n` at `t^{p n}` for every `p n <= order`.
fn kernel<C: Coeff>(
    arg: &MPoly<C>,
    power: u32,
    order: usize,
    mut weight: impl FnMut(u32) -> Result<C>,
) -> Result<TSeries<C>> {
    if power == 0 {
        return Err(Error::InvalidArgument("kernel argument must carry a positive power of t".into()));
    }
    let mut out = TSeries::zero(order);
    let mut arg_pow = MPoly::one();
    let mut n = 0u32;
    while (n * power) as usize <= order {
        out.coeffs[(n * power) as usize] = arg_pow.scale(&weight(n)?);
        arg_pow = &arg_pow * arg;
        n += 1;
    }
    Ok(out)
}

/// `e_q(arg * t^p) = sum (arg t^p)^n / [n]_q!`.
pub fn series_eq<A: QAlgebra>(alg: &A, arg: &MPoly<A::Scalar>, power: u32, order: usize) -> Result<TSeries<A::Scalar>> {
    kernel(arg, power, order, |n| alg.q_factorial_inv(1, n))
}

/// `E_{q^m}(arg * t^p) = sum q^{m C(n,2)} (arg t^p)^n / [n]_{q^m}!`.
pub fn series_big_e<A: QAlgebra>(
    alg: &A,
    base_exp: u32,
    arg: &MPoly<A::Scalar>,
    power: u32,
    order: usize,
) -> Result<TSeries<A::Scalar>> {
    kernel(arg, power, order, |n| {
        Ok(alg.q_power(i64::from(base_exp) * choose2(n))?.times(&alg.q_factorial_inv(base_exp, n)?))
    })
}

/// Order-`nu` `(q, m)` Bessel-Tricomi function
/// `sum_k (-1)^k q^{m C(k,2)} (arg t^p)^k / ([k]_{q^m}! [nu + k]_{q^m}!)`.
pub fn series_bessel_tricomi<A: QAlgebra>(
    alg: &A,
    base_exp: u32,
    nu: u32,
    arg: &MPoly<A::Scalar>,
    power: u32,
    order: usize,
) -> Result<TSeries<A::Scalar>> {
    kernel(arg, power, order, |k| {
        let w = alg
            .q_power(i64::from(base_exp) * choose2(k))?
            .times(&alg.q_factorial_inv(base_exp, k)?)
            .times(&alg.q_factorial_inv(base_exp, nu + k)?);
        Ok(if k % 2 == 1 { w.negated() } else { w })
    })
}

/// `e_q(yt) E_{q^s}(z t^s) C_0^{(m)}(-x t^m)`, the generating function of the
/// `LH^{(m,s)}` family; without `s` the middle factor is dropped, giving that
/// of the `L^{(m)}` family.
pub fn generating_kernel<A: QAlgebra>(alg: &A, m: u32, s: Option<u32>, order: usize) -> Result<TSeries<A::Scalar>> {
    let mut product = series_eq(alg, &MPoly::var(Var::Y), 1, order)?;
    if let Some(s) = s {
        product = product.mul(&series_big_e(alg, s, &MPoly::var(Var::Z), s, order)?);
    }
    Ok(product.mul(&series_bessel_tricomi(alg, m, 0, &-MPoly::var(Var::X), m, order)?))
}

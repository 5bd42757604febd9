//! The q-operator calculus: the Euler-Heine-Jackson q-difference operator and
//! its inverse powers on the monomial basis, Jackson-Hahn-Cigler (JHC)
//! q-addition powers, the mixed `(q, q^m)` subtraction, and formal
//! composition of a series with a JHC power.
//!
//! JHC "sums" are never values. `(a ⊕_q b)^n` only exists as the expansion
//! `sum_k [n;k]_q q^{C(k,2)} a^{n-k} b^k`, so composing a polynomial with
//! `a ⊕_q b` means replacing every power of the slot variable by that
//! expansion.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::mpoly::{MPoly, Monomial, Var};
use crate::qarith::{QContext, Rational};
use crate::scalar::{choose2, Coeff, QAlgebra};

/// `D_x` in base `q^m`, acting on `target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QDiffOp {
    pub base_exp: u32,
    pub target: Var,
}

impl QDiffOp {
    pub fn new(base_exp: u32, target: Var) -> Self {
        QDiffOp { base_exp, target }
    }

    fn check(&self, ctx: &QContext) -> Result<()> {
        if ctx.base(self.base_exp).is_one() {
            return Err(Error::DegenerateBase { base_exp: self.base_exp, q: ctx.q().clone() });
        }
        Ok(())
    }
}

/// `x^n -> [n]_{q^m} x^{n-1}`, linearly; other variables are constants.
pub fn qdiff(ctx: &QContext, op: QDiffOp, p: &MPoly) -> Result<MPoly> {
    op.check(ctx)?;
    let mut out = MPoly::zero();
    for (mono, c) in p.terms() {
        let e = mono.exp(op.target);
        if e == 0 {
            continue;
        }
        let rest = strip(mono, op.target, e - 1);
        out.add_term(rest, &(c * ctx.q_number(op.base_exp, u32::from(e))));
    }
    Ok(out)
}

/// Applies `qdiff` `times` times.
pub fn qdiff_pow(ctx: &QContext, op: QDiffOp, times: u32, p: &MPoly) -> Result<MPoly> {
    let mut acc = p.clone();
    for _ in 0..times {
        acc = qdiff(ctx, op, &acc)?;
    }
    Ok(acc)
}

/// `(D_x)^{-n}`: `x^k -> [k]!/[k+n]! x^{k+n}` in base `q^m`. On `1` this is
/// `x^n/[n]!`, and `qdiff` applied `n` times undoes it.
pub fn qdiff_inv_pow(ctx: &QContext, op: QDiffOp, n: u32, p: &MPoly) -> Result<MPoly> {
    op.check(ctx)?;
    if n == 0 {
        return Ok(p.clone());
    }
    let mut out = MPoly::zero();
    for (mono, c) in p.terms() {
        let k = u32::from(mono.exp(op.target));
        let ratio = ctx.q_factorial(op.base_exp, k) * QAlgebra::q_factorial_inv(ctx, op.base_exp, k + n)?;
        out.add_term(strip(mono, op.target, (k + n) as u16), &(c * ratio));
    }
    Ok(out)
}

fn strip(mono: &Monomial, v: Var, new_exp: u16) -> Monomial {
    let mut pairs: Vec<(Var, u16)> = mono.factors().filter(|&(w, _)| w != v).collect();
    pairs.push((v, new_exp));
    Monomial::from_pairs(&pairs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JhcSign {
    Plus,
    Minus,
}

/// `(a ⊕_q b)^n`, or `(a ⊖_q b)^n = P_n(a, -b)` for [`JhcSign::Minus`].
pub fn jhc_pow<A: QAlgebra>(
    alg: &A,
    a: &MPoly<A::Scalar>,
    b: &MPoly<A::Scalar>,
    n: u32,
    sign: JhcSign,
) -> Result<MPoly<A::Scalar>> {
    let b = match sign {
        JhcSign::Plus => b.clone(),
        JhcSign::Minus => -b,
    };
    let a_pows = powers(a, n);
    let b_pows = powers(&b, n);
    let mut out = MPoly::zero();
    for k in 0..=n {
        let w = alg.q_binomial(1, n, k)?.times(&alg.q_power(choose2(k))?);
        let term = &a_pows[(n - k) as usize] * &b_pows[k as usize];
        out.add_scaled(&term, &w);
    }
    Ok(out)
}

fn powers<C: Coeff>(p: &MPoly<C>, n: u32) -> Vec<MPoly<C>> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(MPoly::one());
    for i in 0..n as usize {
        let next = &out[i] * p;
        out.push(next);
    }
    out
}

/// `(a ⊖_{q,q^m} b)^n = [n]_q! sum_k (-1)^k q^{mC(k,2)} a^{n-k} b^k / ([n-k]_q! [k]_{q^m}!)`.
pub fn mixed_sub_pow<A: QAlgebra>(
    alg: &A,
    a: &MPoly<A::Scalar>,
    b: &MPoly<A::Scalar>,
    m: u32,
    n: u32,
) -> Result<MPoly<A::Scalar>> {
    let a_pows = powers(a, n);
    let b_pows = powers(b, n);
    let lead = alg.q_factorial(1, n);
    let mut out = MPoly::zero();
    for k in 0..=n {
        let mut w = lead
            .times(&alg.q_power(i64::from(m) * choose2(k))?)
            .times(&alg.q_factorial_inv(1, n - k)?)
            .times(&alg.q_factorial_inv(m, k)?);
        if k % 2 == 1 {
            w = w.negated();
        }
        out.add_scaled(&(&a_pows[(n - k) as usize] * &b_pows[k as usize]), &w);
    }
    Ok(out)
}

/// Coefficients `c_0, ..., c_N` of a truncated formal series `F(w) = sum c_n w^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSeq<C: Coeff = Rational>(pub Vec<MPoly<C>>);

impl<C: Coeff> CoeffSeq<C> {
    pub fn from_scalars(values: impl IntoIterator<Item = C>) -> Self {
        CoeffSeq(values.into_iter().map(MPoly::constant).collect())
    }

    pub fn order(&self) -> usize {
        self.0.len().saturating_sub(1)
    }
}

/// Truncated `e_q(w) = sum w^n / [n]_q!` as a coefficient sequence.
pub fn eq_coeffs<A: QAlgebra>(alg: &A, order: u32) -> Result<CoeffSeq<A::Scalar>> {
    let mut out = Vec::new();
    for n in 0..=order {
        out.push(alg.q_factorial_inv(1, n)?);
    }
    Ok(CoeffSeq::from_scalars(out))
}

/// `F(a ⊕_q b) = sum_n c_n (a ⊕_q b)^n`.
pub fn compose_jhc<A: QAlgebra>(
    alg: &A,
    series: &CoeffSeq<A::Scalar>,
    a: &MPoly<A::Scalar>,
    b: &MPoly<A::Scalar>,
    sign: JhcSign,
) -> Result<MPoly<A::Scalar>> {
    let mut out = MPoly::zero();
    for (n, c) in series.0.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        out = &out + &(c * &jhc_pow(alg, a, b, n as u32, sign)?);
    }
    Ok(out)
}

/// What a slot variable of a family is replaced by.
#[derive(Debug, Clone)]
pub enum Slot<C: Coeff> {
    /// Ordinary substitution: `v^e -> p^e`.
    Poly(MPoly<C>),
    /// JHC composition: `v^e -> (a ⊕/⊖ b)^e`.
    Jhc { a: MPoly<C>, b: MPoly<C>, sign: JhcSign },
}

impl<C: Coeff> Slot<C> {
    pub fn var(v: Var) -> Self {
        Slot::Poly(MPoly::var(v))
    }

    pub fn jhc(a: Var, b: Var, sign: JhcSign) -> Self {
        Slot::Jhc { a: MPoly::var(a), b: MPoly::var(b), sign }
    }
}

/// Replaces the slot variables of `p` simultaneously, expanding each slot
/// independently; unlisted variables pass through.
pub fn instantiate<A: QAlgebra>(
    alg: &A,
    p: &MPoly<A::Scalar>,
    slots: &[(Var, Slot<A::Scalar>)],
) -> Result<MPoly<A::Scalar>> {
    let mut cache: BTreeMap<(usize, u16), MPoly<A::Scalar>> = BTreeMap::new();
    let mut out = MPoly::zero();
    for (mono, c) in p.terms() {
        let mut rest: Vec<(Var, u16)> = mono.factors().collect();
        rest.retain(|(v, _)| slots.iter().all(|(s, _)| s != v));
        let mut factor = MPoly::constant(c.clone());
        for (i, (v, slot)) in slots.iter().enumerate() {
            let e = mono.exp(*v);
            if e == 0 {
                continue;
            }
            let power = match cache.entry((i, e)) {
                Entry::Occupied(hit) => hit.into_mut(),
                Entry::Vacant(slot_entry) => slot_entry.insert(match slot {
                    Slot::Poly(image) => image.pow(u32::from(e)),
                    Slot::Jhc { a, b, sign } => jhc_pow(alg, a, b, u32::from(e), *sign)?,
                }),
            };
            factor = &factor * &*power;
        }
        out = &out + &factor.mul_monomial(&Monomial::from_pairs(&rest));
    }
    Ok(out)
}

/// Literal divided difference `(f(x) - f(q^m x)) / ((1 - q^m) x)`; an oracle for [`qdiff`].
pub fn qdiff_by_definition(ctx: &QContext, op: QDiffOp, p: &MPoly) -> Result<MPoly> {
    op.check(ctx)?;
    let base = ctx.base(op.base_exp);
    let dilated = p.substitute(&BTreeMap::from([(op.target, MPoly::var(op.target).scale(&base))]));
    let numerator = p - &dilated;
    let mut out = MPoly::zero();
    let scale = (<Rational as One>::one() - &base).recip();
    for (mono, c) in numerator.terms() {
        // f(x) - f(qx) has no x-free part, so every term is divisible by x
        let e = mono.exp(op.target);
        out.add_term(strip(mono, op.target, e - 1), &(c * &scale));
    }
    Ok(out)
}

//! Exact rationals and the scalar q-combinatorics: q-integers, q-factorials,
//! q-semifactorials, Gaussian binomials and q-shifted factorials.
//!
//! A [`QContext`] pins `q` to one exact rational. Values of `[n]_{q^m}` and
//! `[n]_{q^m}!` are memoised behind a lock so a context can be shared by the
//! parallel verifier.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::scalar::QAlgebra;

pub type Rational = num_rational::BigRational;

/// Parses `a/b` or a bare integer. Decimals are rejected on purpose: every
/// value flowing through the verifier must be exact.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("invalid rational `{text}` (expected `a/b` or an integer)"));
    let parse_int = |s: &str| -> Result<BigInt> {
        let s = s.trim();
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        BigInt::from_str(s).map_err(|_| bad())
    };
    match text.split_once('/') {
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{text}`")));
            }
            Ok(Rational::new(parse_int(num)?, den))
        }
        None => Ok(Rational::from_integer(parse_int(text)?)),
    }
}

/// Renders `a/b`, or `a` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_pow(base: &Rational, exp: i64) -> Result<Rational> {
    if exp >= 0 {
        return Ok(Pow::pow(base, exp as u64));
    }
    if base.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Pow::pow(base.recip(), exp.unsigned_abs()))
}

/// A fixed exact deformation parameter with memoised q-combinatorics.
pub struct QContext {
    q: Rational,
    numbers: RwLock<HashMap<(u32, u32), Rational>>,
    factorials: RwLock<HashMap<(u32, u32), Rational>>,
}

impl QContext {
    pub fn new(q: Rational) -> Self {
        QContext { q, numbers: RwLock::default(), factorials: RwLock::default() }
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::new(Rational::new(numer.into(), denom.into()))
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn is_classical(&self) -> bool {
        self.q.is_one()
    }

    /// `q^m`, the base of the `[n]_{q^m}` family.
    pub fn base(&self, base_exp: u32) -> Rational {
        Pow::pow(&self.q, base_exp)
    }

    /// `[n]_{q^m} = 1 + q^m + ... + q^{m(n-1)}`, summed directly so `q = 1` is fine.
    pub fn q_number(&self, base_exp: u32, n: u32) -> Rational {
        if let Some(v) = self.numbers.read().unwrap().get(&(base_exp, n)) {
            return v.clone();
        }
        let base = self.base(base_exp);
        let mut term = Rational::one();
        let mut acc = Rational::zero();
        for _ in 0..n {
            acc += &term;
            term *= &base;
        }
        self.numbers.write().unwrap().insert((base_exp, n), acc.clone());
        acc
    }

    pub fn q_factorial(&self, base_exp: u32, n: u32) -> Rational {
        if let Some(v) = self.factorials.read().unwrap().get(&(base_exp, n)) {
            return v.clone();
        }
        let value = (1..=n).fold(Rational::one(), |acc, k| acc * self.q_number(base_exp, k));
        self.factorials.write().unwrap().insert((base_exp, n), value.clone());
        value
    }

    pub fn q_semifactorial(&self, m: u32, k: u32) -> Rational {
        (1..=k).fold(Rational::one(), |acc, l| acc * self.q_number(1, m * l))
    }

    pub fn q_binomial(&self, base_exp: u32, n: u32, k: u32) -> Result<Rational> {
        if k > n {
            return Err(Error::BinomialRange { n, k });
        }
        let base = self.base(base_exp);
        let k = k.min(n - k);
        let mut num = Rational::one();
        let mut den = Rational::one();
        for i in 0..k {
            num *= Rational::one() - Pow::pow(&base, n - i);
            den *= Rational::one() - Pow::pow(&base, i + 1);
        }
        if den.is_zero() {
            // base = 1 or -1: fall back to the Pascal recurrence, which never divides.
            let mut row = vec![Rational::one()];
            for len in 1..=n {
                let mut next = vec![Rational::one(); len as usize + 1];
                for j in 1..len as usize {
                    next[j] = &row[j - 1] + Pow::pow(&base, j) * &row[j];
                }
                row = next;
            }
            return Ok(row[k as usize].clone());
        }
        Ok(num / den)
    }

    /// `(a; q)_n = (1 - a)(1 - aq) ... (1 - aq^{n-1})`.
    pub fn q_shifted_factorial(&self, a: &Rational, n: u32) -> Rational {
        let mut acc = Rational::one();
        let mut aq = a.clone();
        for _ in 0..n {
            acc *= Rational::one() - &aq;
            aq *= &self.q;
        }
        acc
    }

    fn vanishing(&self, base_exp: u32, n: u32) -> Error {
        let n = (1..=n).find(|&k| self.q_number(base_exp, k).is_zero()).unwrap_or(n);
        Error::VanishingFactor { base_exp, n, q: self.q.clone() }
    }
}

impl Clone for QContext {
    fn clone(&self) -> Self {
        QContext::new(self.q.clone())
    }
}

impl fmt::Debug for QContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QContext").field("q", &format_rational(&self.q)).finish()
    }
}

impl QAlgebra for QContext {
    type Scalar = Rational;

    fn q_power(&self, exp: i64) -> Result<Rational> {
        rational_pow(&self.q, exp)
    }

    fn q_number(&self, base_exp: u32, n: u32) -> Rational {
        QContext::q_number(self, base_exp, n)
    }

    fn q_number_inv(&self, base_exp: u32, n: u32) -> Result<Rational> {
        let v = QContext::q_number(self, base_exp, n);
        if v.is_zero() {
            return Err(Error::VanishingFactor { base_exp, n, q: self.q.clone() });
        }
        Ok(v.recip())
    }

    fn q_factorial(&self, base_exp: u32, n: u32) -> Rational {
        QContext::q_factorial(self, base_exp, n)
    }

    fn q_factorial_inv(&self, base_exp: u32, n: u32) -> Result<Rational> {
        let v = QContext::q_factorial(self, base_exp, n);
        if v.is_zero() {
            return Err(self.vanishing(base_exp, n));
        }
        Ok(v.recip())
    }

    fn q_binomial(&self, base_exp: u32, n: u32, k: u32) -> Result<Rational> {
        if k > n {
            return Ok(Rational::zero());
        }
        QContext::q_binomial(self, base_exp, n, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn q_number_examples() {
        let half = QContext::from_ratio(1, 2);
        assert_eq!(half.q_number(1, 3), r(7, 4));
        assert_eq!(half.q_number(1, 0), r(0, 1));
        assert_eq!(QContext::from_ratio(2, 1).q_number(2, 2), r(5, 1));
    }

    #[test]
    fn q_factorial_examples() {
        assert_eq!(QContext::from_ratio(1, 2).q_factorial(1, 3), r(21, 8));
        assert_eq!(QContext::from_ratio(1, 2).q_factorial(3, 0), r(1, 1));
        assert_eq!(QContext::from_ratio(1, 1).q_factorial(1, 4), r(24, 1));
    }

    #[test]
    fn semifactorial_examples() {
        let half = QContext::from_ratio(1, 2);
        assert_eq!(half.q_semifactorial(2, 2), r(45, 16));
        assert_eq!(half.q_semifactorial(3, 0), r(1, 1));
    }

    #[test]
    fn semifactorial_splits_into_power_times_factorial() {
        let ctx = QContext::from_ratio(2, 3);
        for m in 1..=5 {
            for k in 0..=5 {
                let rhs = Pow::pow(ctx.q_number(1, m), k) * ctx.q_factorial(m, k);
                assert_eq!(ctx.q_semifactorial(m, k), rhs, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn q_binomial_examples() {
        let two = QContext::from_ratio(2, 1);
        assert_eq!(two.q_binomial(1, 4, 2).unwrap(), r(35, 1));
        assert_eq!(two.q_binomial(1, 7, 0).unwrap(), r(1, 1));
        assert_eq!(two.q_binomial(1, 7, 7).unwrap(), r(1, 1));
        assert!(matches!(two.q_binomial(1, 2, 3), Err(Error::BinomialRange { .. })));
    }

    #[test]
    fn q_binomial_at_minus_one_and_one() {
        // [4;2] = 1 + q + 2q^2 + q^3 + q^4
        assert_eq!(QContext::from_ratio(-1, 1).q_binomial(1, 4, 2).unwrap(), r(2, 1));
        assert_eq!(QContext::from_ratio(1, 1).q_binomial(1, 4, 2).unwrap(), r(6, 1));
    }

    #[test]
    fn shifted_factorial_examples() {
        assert_eq!(QContext::from_ratio(1, 2).q_shifted_factorial(&r(1, 1), 2), r(0, 1));
        assert_eq!(QContext::from_ratio(1, 2).q_shifted_factorial(&r(5, 7), 0), r(1, 1));
        assert_eq!(QContext::from_ratio(2, 1).q_shifted_factorial(&r(3, 1), 2), r(10, 1));
    }

    #[test]
    fn q_number_matches_geometric_closed_form() {
        for q in [r(1, 2), r(2, 3), r(3, 1), r(-5, 4)] {
            let ctx = QContext::new(q.clone());
            for m in 1..=3u32 {
                let base = ctx.base(m);
                for n in 0..=12u32 {
                    let closed = (Rational::one() - Pow::pow(&base, n)) / (Rational::one() - &base);
                    assert_eq!(ctx.q_number(m, n), closed);
                }
            }
        }
    }

    #[test]
    fn q_binomial_symmetry_and_pascal() {
        let ctx = QContext::from_ratio(2, 3);
        for n in 0..=12u32 {
            for k in 0..=n {
                let b = ctx.q_binomial(1, n, k).unwrap();
                assert_eq!(b, ctx.q_binomial(1, n, n - k).unwrap());
                if n > 0 && k > 0 && k < n {
                    let pascal = ctx.q_binomial(1, n - 1, k - 1).unwrap()
                        + Pow::pow(ctx.q(), k) * ctx.q_binomial(1, n - 1, k).unwrap();
                    assert_eq!(b, pascal, "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn q_binomial_is_pochhammer_ratio() {
        for q in [r(1, 2), r(2, 3), r(3, 1)] {
            let ctx = QContext::new(q.clone());
            for n in 0..=10u32 {
                for k in 0..=n {
                    let poch = |j| ctx.q_shifted_factorial(&q, j);
                    let ratio = poch(n) / (poch(n - k) * poch(k));
                    assert_eq!(ctx.q_binomial(1, n, k).unwrap(), ratio);
                    let facts = ctx.q_factorial(1, n) / (ctx.q_factorial(1, n - k) * ctx.q_factorial(1, k));
                    assert_eq!(ratio, facts);
                }
            }
        }
    }

    #[test]
    fn vanishing_factor_is_reported() {
        let ctx = QContext::from_ratio(-1, 1);
        let err = QAlgebra::q_factorial_inv(&ctx, 1, 3).unwrap_err();
        assert_eq!(err, Error::VanishingFactor { base_exp: 1, n: 2, q: r(-1, 1) });
        // base q^2 = 1 never vanishes: [n]_1 = n
        assert!(QAlgebra::q_factorial_inv(&ctx, 2, 3).is_ok());
    }

    #[test]
    fn parse_rejects_decimals() {
        assert_eq!(parse_rational("3/6").unwrap(), r(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), r(-4, 1));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert_eq!(format_rational(&r(-3, 2)), "-3/2");
        assert_eq!(format_rational(&r(4, 2)), "2");
    }

    #[test]
    fn memo_is_consistent_across_threads() {
        let ctx = std::sync::Arc::new(QContext::from_ratio(3, 5));
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let ctx = ctx.clone();
                std::thread::spawn(move || (0..20).map(|n| ctx.q_factorial(2, n)).collect::<Vec<_>>())
            })
            .collect();
        let fresh = QContext::from_ratio(3, 5);
        let expected: Vec<_> = (0..20).map(|n| fresh.q_factorial(2, n)).collect();
        for h in handles {
            assert_eq!(h.join().unwrap(), expected);
        }
    }
}

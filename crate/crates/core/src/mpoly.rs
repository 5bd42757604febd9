//! Sparse multivariate polynomials over a [`Coeff`] ring in a fixed registry
//! of named indeterminates.
//!
//! Terms live in a `BTreeMap` keyed by exponent vector with zero coefficients
//! never stored, so structural equality is mathematical equality. Monomials
//! are ordered graded-lexicographically on the registry order; rendering walks
//! them from the largest down.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::qarith::{format_rational, Rational};
use crate::scalar::Coeff;

pub const NVARS: usize = 13;

/// Indeterminates, in registry order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
    Xi,
    Zeta,
    CapX,
    CapY,
    CapZ,
    Omega,
    CapU,
    T,
    U,
    CapT,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::X,
        Var::Y,
        Var::Z,
        Var::Xi,
        Var::Zeta,
        Var::CapX,
        Var::CapY,
        Var::CapZ,
        Var::Omega,
        Var::CapU,
        Var::T,
        Var::U,
        Var::CapT,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
            Var::Xi => "xi",
            Var::Zeta => "zeta",
            Var::CapX => "X",
            Var::CapY => "Y",
            Var::CapZ => "Z",
            Var::Omega => "Omega",
            Var::CapU => "U",
            Var::T => "t",
            Var::U => "u",
            Var::CapT => "T",
        }
    }

    pub fn latex(self) -> &'static str {
        match self {
            Var::Xi => "\\xi",
            Var::Zeta => "\\zeta",
            Var::Omega => "\\Omega",
            other => other.name(),
        }
    }

    /// Accepts the ASCII names and the Greek letters themselves.
    pub fn from_name(name: &str) -> Option<Var> {
        match name {
            "ξ" => Some(Var::Xi),
            "ζ" => Some(Var::Zeta),
            "Ω" => Some(Var::Omega),
            _ => Var::ALL.into_iter().find(|v| v.name() == name),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u16; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var, exp: u16) -> Self {
        let mut e = [0; NVARS];
        e[v.index()] = exp;
        Monomial(e)
    }

    pub fn from_pairs(pairs: &[(Var, u16)]) -> Self {
        let mut e = [0; NVARS];
        for &(v, k) in pairs {
            e[v.index()] += k;
        }
        Monomial(e)
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(e)
    }

    /// `(var, exponent)` pairs with nonzero exponent, in registry order.
    pub fn factors(&self) -> impl Iterator<Item = (Var, u16)> + '_ {
        Var::ALL.into_iter().filter_map(|v| {
            let e = self.exp(v);
            (e > 0).then_some((v, e))
        })
    }

    fn with_exp(&self, v: Var, exp: u16) -> Monomial {
        let mut e = self.0;
        e[v.index()] = exp;
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq)]
pub struct MPoly<C: Coeff = Rational> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> Default for MPoly<C> {
    fn default() -> Self {
        MPoly::zero()
    }
}

impl<C: Coeff> MPoly<C> {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        MPoly::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        MPoly::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        MPoly::term(C::one(), Monomial::var(v, 1))
    }

    pub fn term(c: C, mono: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, mono: &Monomial) -> C {
        self.terms.get(mono).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: Var) -> Option<u16> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    pub fn vars(&self) -> Vec<Var> {
        Var::ALL.into_iter().filter(|&v| self.terms.keys().any(|m| m.exp(v) > 0)).collect()
    }

    pub fn add_term(&mut self, mono: Monomial, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(existing) => {
                let sum = existing.plus(c);
                if sum.is_zero() {
                    self.terms.remove(&mono);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(mono, c.clone());
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &MPoly<C>, c: &C) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(*m, &a.times(c));
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return MPoly::zero();
        }
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, a)| {
                let v = a.times(c);
                (!v.is_zero()).then_some((*m, v))
            })
            .collect();
        MPoly { terms }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Self {
        MPoly { terms: self.terms.iter().map(|(m, a)| (m.mul(mono), a.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = MPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        let mut out = MPoly::zero();
        for (m, a) in &self.terms {
            out.add_term(*m, &f(a));
        }
        out
    }

    /// Simultaneous substitution; variables without a binding pass through.
    pub fn substitute(&self, bindings: &BTreeMap<Var, MPoly<C>>) -> Self {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut powers: BTreeMap<(Var, u16), MPoly<C>> = BTreeMap::new();
        let mut out = MPoly::zero();
        for (mono, c) in &self.terms {
            let mut rest = *mono;
            let mut factor = MPoly::constant(c.clone());
            for (&v, image) in bindings {
                let e = mono.exp(v);
                if e == 0 {
                    continue;
                }
                rest = rest.with_exp(v, 0);
                let p = powers.entry((v, e)).or_insert_with(|| image.pow(u32::from(e)));
                factor = &factor * &*p;
            }
            for (m, a) in factor.terms {
                out.add_term(m.mul(&rest), &a);
            }
        }
        out
    }

    /// Renames variables simultaneously (`x -> y, y -> x` swaps them).
    pub fn rename(&self, pairs: &[(Var, Var)]) -> Self {
        let mut out = MPoly::zero();
        for (mono, c) in &self.terms {
            let mut e = *mono;
            for &(from, _) in pairs {
                e = e.with_exp(from, 0);
            }
            let mut target = Monomial::one();
            for &(from, to) in pairs {
                target = target.mul(&Monomial::var(to, mono.exp(from)));
            }
            out.add_term(e.mul(&target), c);
        }
        out
    }

    /// Sets the given variables to zero.
    pub fn vanish(&self, vars: &[Var]) -> Self {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| vars.iter().all(|&v| m.exp(v) == 0))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Coefficients of the powers of `v`, as polynomials in the other variables.
    pub fn coefficients_in(&self, v: Var) -> BTreeMap<u16, MPoly<C>> {
        let mut out: BTreeMap<u16, MPoly<C>> = BTreeMap::new();
        for (mono, c) in &self.terms {
            out.entry(mono.exp(v)).or_default().add_term(mono.with_exp(v, 0), c);
        }
        out
    }
}

impl MPoly<Rational> {
    pub fn eval_rational(&self, point: &BTreeMap<Var, Rational>) -> Result<Rational> {
        let mut acc = Rational::default();
        for (mono, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in mono.factors() {
                let value = point.get(&v).ok_or_else(|| Error::MissingBinding(v.name().to_string()))?;
                term *= num_traits::Pow::pow(value, u32::from(e));
            }
            acc += term;
        }
        Ok(acc)
    }

    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (mono, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let coeff = if abs.denom().is_one() {
                abs.numer().to_string()
            } else {
                format!("\\frac{{{}}}{{{}}}", abs.numer(), abs.denom())
            };
            if mono.is_one() {
                out.push_str(&coeff);
                continue;
            }
            if !abs.is_one() {
                out.push_str(&coeff);
                out.push(' ');
            }
            let factors: Vec<String> = mono
                .factors()
                .map(|(v, e)| if e == 1 { v.latex().to_string() } else { format!("{}^{{{}}}", v.latex(), e) })
                .collect();
            out.push_str(&factors.join(" "));
        }
        out
    }
}

fn render_monomial(mono: &Monomial) -> String {
    mono.factors()
        .map(|(v, e)| if e == 1 { v.name().to_string() } else { format!("{}^{}", v.name(), e) })
        .collect::<Vec<_>>()
        .join("*")
}

/// Canonical text form: `y^2 + 3/2*x - z`, graded-lex from the top.
impl fmt::Display for MPoly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (mono, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mono.is_one() {
                f.write_str(&format_rational(&abs))?;
            } else if abs.is_one() {
                f.write_str(&render_monomial(mono))?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), render_monomial(mono))?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms().map(|(m, c)| (render_monomial(m), c))).finish()
    }
}

impl<C: Coeff> Add for &MPoly<C> {
    type Output = MPoly<C>;
    fn add(self, rhs: &MPoly<C>) -> MPoly<C> {
        let (mut big, small) = if self.len() >= rhs.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(*m, c);
        }
        big
    }
}

impl<C: Coeff> Sub for &MPoly<C> {
    type Output = MPoly<C>;
    fn sub(self, rhs: &MPoly<C>) -> MPoly<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &c.negated());
        }
        out
    }
}

impl<C: Coeff> Mul for &MPoly<C> {
    type Output = MPoly<C>;
    fn mul(self, rhs: &MPoly<C>) -> MPoly<C> {
        let mut out = MPoly::zero();
        for (ma, a) in &self.terms {
            for (mb, b) in &rhs.terms {
                out.add_term(ma.mul(mb), &a.times(b));
            }
        }
        out
    }
}

impl<C: Coeff> Neg for &MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> MPoly<C> {
        MPoly { terms: self.terms.iter().map(|(m, c)| (*m, c.negated())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<C: Coeff> $tr for MPoly<C> {
            type Output = MPoly<C>;
            fn $method(self, rhs: MPoly<C>) -> MPoly<C> {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coeff> Neg for MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> MPoly<C> {
        -&self
    }
}

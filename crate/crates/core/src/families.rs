//! Constructors for the polynomial families: classical Gould-Hopper `g_n^m`,
//! q-Gould-Hopper `𝒢_n^m`, q-2D Laguerre `_mL_n`, q-Laguerre-Gould-Hopper
//! `_LH_n^{(m,s)}` and q-Hermite `H_n`.
//!
//! Explicit sums are generic over [`QAlgebra`] so the same code serves exact
//! evaluation and degree probing. Operational forms apply terminating
//! operator series termwise and exist as independent cross-checks.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::mpoly::{MPoly, Monomial, Var};
use crate::qarith::{QContext, Rational};
use crate::qops::{qdiff_inv_pow, qdiff_pow, QDiffOp};
use crate::scalar::{choose2, factorial, Coeff, QAlgebra};

fn mono(pairs: &[(Var, u32)]) -> Monomial {
    let pairs: Vec<(Var, u16)> = pairs.iter().map(|&(v, e)| (v, e as u16)).collect();
    Monomial::from_pairs(&pairs)
}

fn check_index(name: &str, value: u32) -> Result<()> {
    if value == 0 {
        return Err(Error::InvalidArgument(format!("{name} must be at least 1")));
    }
    Ok(())
}

fn signed<C: Coeff>(c: C, k: u32) -> C {
    if k % 2 == 1 {
        c.negated()
    } else {
        c
    }
}

/// `g_n^m(x, y) = n! sum_k x^{n-mk} y^k / (k! (n-mk)!)`.
pub fn classical_gh(n: u32, m: u32) -> Result<MPoly> {
    check_index("m", m)?;
    let mut out = MPoly::zero();
    for k in 0..=n / m {
        let c = factorial(n) / (factorial(k) * factorial(n - m * k));
        out.add_term(mono(&[(Var::X, n - m * k), (Var::Y, k)]), &c);
    }
    Ok(out)
}

/// `_mL_n(x, y) = n! sum_k x^k y^{n-mk} / ((k!)^2 (n-mk)!)`.
pub fn classical_2dlp(n: u32, m: u32) -> Result<MPoly> {
    check_index("m", m)?;
    let mut out = MPoly::zero();
    for k in 0..=n / m {
        let c = factorial(n) / (factorial(k) * factorial(k) * factorial(n - m * k));
        out.add_term(mono(&[(Var::X, k), (Var::Y, n - m * k)]), &c);
    }
    Ok(out)
}

/// `_LH_n^{(m,s)}(x, y, z) = n! sum_k z^k _mL_{n-sk}(x, y) / (k! (n-sk)!)`.
pub fn classical_lghp(n: u32, m: u32, s: u32) -> Result<MPoly> {
    check_index("s", s)?;
    let mut out = MPoly::zero();
    for k in 0..=n / s {
        let c = factorial(n) / (factorial(k) * factorial(n - s * k));
        let term = classical_2dlp(n - s * k, m)?.mul_monomial(&mono(&[(Var::Z, k)]));
        out.add_scaled(&term, &c);
    }
    Ok(out)
}

/// `𝒢_n^m(x, y) = [n]! sum_k (-1)^k q^{mC(k,2)} x^{n-mk} y^k / ([n-mk]! [mk]!!)`.
pub fn q_gh<A: QAlgebra>(alg: &A, n: u32, m: u32) -> Result<MPoly<A::Scalar>> {
    check_index("m", m)?;
    let lead = alg.q_factorial(1, n);
    let mut out = MPoly::zero();
    for k in 0..=n / m {
        let c = lead
            .times(&alg.q_power(i64::from(m) * choose2(k))?)
            .times(&alg.q_factorial_inv(1, n - m * k)?)
            .times(&alg.q_semifactorial_inv(m, k)?);
        out.add_term(mono(&[(Var::X, n - m * k), (Var::Y, k)]), &signed(c, k));
    }
    Ok(out)
}

/// `_mL_n(x, y) = [n]! sum_k q^{mC(k,2)} x^k y^{n-mk} / (([k]_{q^m}!)^2 [n-mk]!)`.
pub fn q_2dlp<A: QAlgebra>(alg: &A, n: u32, m: u32) -> Result<MPoly<A::Scalar>> {
    check_index("m", m)?;
    let lead = alg.q_factorial(1, n);
    let mut out = MPoly::zero();
    for k in 0..=n / m {
        let inv_k = alg.q_factorial_inv(m, k)?;
        let c = lead
            .times(&alg.q_power(i64::from(m) * choose2(k))?)
            .times(&inv_k)
            .times(&inv_k)
            .times(&alg.q_factorial_inv(1, n - m * k)?);
        out.add_term(mono(&[(Var::X, k), (Var::Y, n - m * k)]), &c);
    }
    Ok(out)
}

/// `_LH_n^{(m,s)}(x, y, z) = [n]! sum_k q^{sC(k,2)} z^k _mL_{n-sk}(x, y) / ([k]_{q^s}! [n-sk]!)`.
pub fn q_lghp<A: QAlgebra>(alg: &A, n: u32, m: u32, s: u32) -> Result<MPoly<A::Scalar>> {
    check_index("m", m)?;
    check_index("s", s)?;
    let lead = alg.q_factorial(1, n);
    let mut out = MPoly::zero();
    for k in 0..=n / s {
        let c = lead
            .times(&alg.q_power(i64::from(s) * choose2(k))?)
            .times(&alg.q_factorial_inv(s, k)?)
            .times(&alg.q_factorial_inv(1, n - s * k)?);
        let term = q_2dlp(alg, n - s * k, m)?.mul_monomial(&mono(&[(Var::Z, k)]));
        out.add_scaled(&term, &c);
    }
    Ok(out)
}

/// `H_n(x, y) = _LH_n^{(1,2)}(0, x, y)`; the value does not depend on the
/// Laguerre index.
pub fn q_hermite<A: QAlgebra>(alg: &A, n: u32) -> Result<MPoly<A::Scalar>> {
    let lghp = q_lghp(alg, n, 1, 2)?.vanish(&[Var::X]);
    Ok(lghp.rename(&[(Var::Y, Var::X), (Var::Z, Var::Y)]))
}

fn require_deformed(ctx: &QContext) -> Result<()> {
    if ctx.is_classical() {
        return Err(Error::DegenerateBase { base_exp: 1, q: ctx.q().clone() });
    }
    Ok(())
}

/// `E_{q^m}((D_x^{q^m})^{-1} (D_y^q)^m)` applied to `p`. The series stops
/// once `(D_y^q)^{mk}` annihilates `p`.
pub fn apply_2dlp_operator(ctx: &QContext, m: u32, p: &MPoly) -> Result<MPoly> {
    check_index("m", m)?;
    require_deformed(ctx)?;
    let dy = QDiffOp::new(1, Var::Y);
    let dx = QDiffOp::new(m, Var::X);
    let mut out = MPoly::zero();
    let mut derived = p.clone();
    let mut k = 0u32;
    while !derived.is_zero() {
        let weight = ctx.q_power(i64::from(m) * choose2(k))? * QAlgebra::q_factorial_inv(ctx, m, k)?;
        out.add_scaled(&qdiff_inv_pow(ctx, dx, k, &derived)?, &weight);
        derived = qdiff_pow(ctx, dy, m, &derived)?;
        k += 1;
    }
    Ok(out)
}

/// `_mL_n` as the 2D Laguerre operator applied to `y^n`.
pub fn q_2dlp_operational(ctx: &QContext, n: u32, m: u32) -> Result<MPoly> {
    apply_2dlp_operator(ctx, m, &MPoly::term(Rational::from_int(1), mono(&[(Var::Y, n)])))
}

/// The seed `𝒢_n^s(y, -[s]_q z)` carried by the first operational form.
pub fn lghp_seed(ctx: &QContext, n: u32, s: u32) -> Result<MPoly> {
    let gh = q_gh(ctx, n, s)?;
    let image = MPoly::var(Var::Z).scale(&-ctx.q_number(1, s));
    let mut bindings = std::collections::BTreeMap::new();
    bindings.insert(Var::X, MPoly::var(Var::Y));
    bindings.insert(Var::Y, image);
    Ok(gh.substitute(&bindings))
}

/// `_LH_n^{(m,s)}` as the 2D Laguerre operator applied to the q-Gould-Hopper seed.
pub fn q_lghp_operational_a(ctx: &QContext, n: u32, m: u32, s: u32) -> Result<MPoly> {
    check_index("s", s)?;
    apply_2dlp_operator(ctx, m, &lghp_seed(ctx, n, s)?)
}

/// `_LH_n^{(m,s)}` as `E_{q^s}(z (D_y^q)^s)` applied to `_mL_n`.
pub fn q_lghp_operational_b(ctx: &QContext, n: u32, m: u32, s: u32) -> Result<MPoly> {
    check_index("s", s)?;
    require_deformed(ctx)?;
    let dy = QDiffOp::new(1, Var::Y);
    let mut derived = q_2dlp(ctx, n, m)?;
    let mut out = MPoly::zero();
    let mut k = 0u32;
    while !derived.is_zero() {
        let weight = ctx.q_power(i64::from(s) * choose2(k))? * QAlgebra::q_factorial_inv(ctx, s, k)?;
        out.add_scaled(&derived.mul_monomial(&mono(&[(Var::Z, k)])), &weight);
        derived = qdiff_pow(ctx, dy, s, &derived)?;
        k += 1;
    }
    Ok(out)
}

/// A family together with its shape parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    ClassicalGh { m: u32 },
    QGh { m: u32 },
    Q2dlp { m: u32 },
    QLghp { m: u32, s: u32 },
    QHermite,
}

impl Family {
    pub fn variables(&self) -> &'static [Var] {
        match self {
            Family::QLghp { .. } => &[Var::X, Var::Y, Var::Z],
            _ => &[Var::X, Var::Y],
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Family::ClassicalGh { m } | Family::QGh { m } | Family::Q2dlp { m } => check_index("m", m),
            Family::QLghp { m, s } => check_index("m", m).and(check_index("s", s)),
            Family::QHermite => Ok(()),
        }
    }
}

/// One member of a family: the family and its degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub family: Family,
    pub n: u32,
}

impl FamilySpec {
    pub fn new(family: Family, n: u32) -> Self {
        FamilySpec { family, n }
    }

    pub fn build<A: QAlgebra>(&self, alg: &A) -> Result<MPoly<A::Scalar>> {
        let n = self.n;
        match self.family {
            Family::ClassicalGh { m } => Ok(classical_gh(n, m)?.map_coeffs(A::Scalar::from_rational)),
            Family::QGh { m } => q_gh(alg, n, m),
            Family::Q2dlp { m } => q_2dlp(alg, n, m),
            Family::QLghp { m, s } => q_lghp(alg, n, m, s),
            Family::QHermite => q_hermite(alg, n),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        match self.family {
            Family::ClassicalGh { m } => write!(f, "gh({n},{m})"),
            Family::QGh { m } => write!(f, "qgh({n},{m})"),
            Family::Q2dlp { m } => write!(f, "L({n},{m})"),
            Family::QLghp { m, s } => write!(f, "LH({n},{m},{s})"),
            Family::QHermite => write!(f, "H({n})"),
        }
    }
}

/// Memoized family values at one fixed `q`, shared between threads.
#[derive(Debug)]
pub struct FamilyTable {
    ctx: QContext,
    table: RwLock<HashMap<FamilySpec, MPoly>>,
}

impl FamilyTable {
    pub fn new(ctx: QContext) -> Self {
        FamilyTable { ctx, table: RwLock::new(HashMap::new()) }
    }

    pub fn context(&self) -> &QContext {
        &self.ctx
    }

    pub fn get(&self, spec: FamilySpec) -> Result<MPoly> {
        if let Some(p) = self.table.read().expect("family table poisoned").get(&spec) {
            return Ok(p.clone());
        }
        let p = spec.build(&self.ctx)?;
        self.table.write().expect("family table poisoned").insert(spec, p.clone());
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qdegree::DegreeProbe;

    const QS: [(i64, i64); 3] = [(1, 2), (2, 3), (3, 1)];

    fn ctx(n: i64, d: i64) -> QContext {
        QContext::from_ratio(n, d)
    }

    #[test]
    fn classical_gh_examples() {
        assert_eq!(classical_gh(2, 2).unwrap().to_string(), "x^2 + 2*y");
        assert_eq!(classical_gh(0, 3).unwrap(), MPoly::one());
        assert_eq!(classical_gh(5, 2).unwrap().vanish(&[Var::Y]).to_string(), "x^5");
        assert_eq!(classical_gh(7, 3).unwrap().len(), 3);
        assert!(classical_gh(3, 0).is_err());
    }

    #[test]
    fn q_gh_examples() {
        for (a, b) in QS {
            let c = ctx(a, b);
            assert_eq!(q_gh(&c, 2, 2).unwrap().to_string(), "x^2 - y");
            assert_eq!(q_gh(&c, 6, 2).unwrap().vanish(&[Var::Y]).to_string(), "x^6");
        }
    }

    #[test]
    fn q_gh_at_one_is_rescaled_classical() {
        let one = ctx(1, 1);
        for m in 1..=3u32 {
            for n in 0..=6 {
                let image = MPoly::var(Var::Y).scale(&Rational::from_ratio(-1, i64::from(m)));
                let mut bind = std::collections::BTreeMap::new();
                bind.insert(Var::Y, image);
                let expected = classical_gh(n, m).unwrap().substitute(&bind);
                assert_eq!(q_gh(&one, n, m).unwrap(), expected, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn q_2dlp_examples() {
        let c = ctx(1, 2);
        assert_eq!(q_2dlp(&c, 2, 2).unwrap().to_string(), "y^2 + 3/2*x");
        assert_eq!(q_2dlp(&c, 0, 3).unwrap(), MPoly::one());
        assert_eq!(q_2dlp(&c, 5, 2).unwrap().vanish(&[Var::X]).to_string(), "y^5");
        let d = ctx(2, 3);
        assert_eq!(q_2dlp(&d, 2, 2).unwrap().to_string(), "y^2 + 5/3*x");
    }

    #[test]
    fn operational_2dlp_matches_explicit() {
        for (a, b) in QS {
            let c = ctx(a, b);
            for m in 1..=3 {
                for n in 0..=8 {
                    assert_eq!(
                        q_2dlp_operational(&c, n, m).unwrap(),
                        q_2dlp(&c, n, m).unwrap(),
                        "q={a}/{b} n={n} m={m}"
                    );
                }
            }
        }
        assert!(q_2dlp_operational(&ctx(1, 1), 2, 2).is_err());
    }

    #[test]
    fn q_lghp_examples() {
        let c = ctx(1, 2);
        assert_eq!(q_lghp(&c, 2, 2, 2).unwrap().to_string(), "y^2 + 3/2*x + 3/2*z");
        assert_eq!(q_lghp(&c, 0, 2, 3).unwrap(), MPoly::one());
    }

    #[test]
    fn z_free_reduction() {
        for (a, b) in QS {
            let c = ctx(a, b);
            for m in 1..=3 {
                for s in 1..=3 {
                    for n in 0..=8 {
                        let reduced = q_lghp(&c, n, m, s).unwrap().vanish(&[Var::Z]);
                        assert_eq!(reduced, q_2dlp(&c, n, m).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn operational_forms_match_explicit() {
        for (a, b) in QS {
            let c = ctx(a, b);
            for m in 1..=3 {
                for s in 1..=3 {
                    for n in 0..=6 {
                        let explicit = q_lghp(&c, n, m, s).unwrap();
                        assert_eq!(q_lghp_operational_a(&c, n, m, s).unwrap(), explicit);
                        assert_eq!(q_lghp_operational_b(&c, n, m, s).unwrap(), explicit);
                    }
                }
            }
        }
        let half = ctx(1, 2);
        assert_eq!(q_lghp_operational_b(&half, 2, 2, 2).unwrap().to_string(), "y^2 + 3/2*x + 3/2*z");
    }

    #[test]
    fn unscaled_seed_does_not_reproduce_lghp() {
        // the seed 𝒢_n^s(x, z) without the substitution x -> y, z -> -[s] z
        let c = ctx(1, 2);
        let seed = q_gh(&c, 2, 2).unwrap().rename(&[(Var::Y, Var::Z)]);
        let candidate = apply_2dlp_operator(&c, 2, &seed).unwrap();
        assert_ne!(candidate, q_lghp(&c, 2, 2, 2).unwrap());
    }

    #[test]
    fn degree_bookkeeping() {
        let c = ctx(2, 3);
        for m in 1..=3u16 {
            for s in 1..=3u16 {
                for n in 0..=8u16 {
                    let p = q_lghp(&c, u32::from(n), u32::from(m), u32::from(s)).unwrap();
                    assert_eq!(p.degree_in(Var::Y), Some(n));
                    assert_eq!(p.degree_in(Var::X), Some(n / m));
                    assert_eq!(p.degree_in(Var::Z), Some(n / s));
                }
            }
        }
    }

    #[test]
    fn hermite_examples() {
        let c = ctx(1, 2);
        assert_eq!(q_hermite(&c, 2).unwrap().to_string(), "x^2 + 3/2*y");
        for n in 0..=6 {
            assert_eq!(q_hermite(&c, n).unwrap().vanish(&[Var::Y]), MPoly::var(Var::X).pow(n));
        }
    }

    #[test]
    fn hermite_is_independent_of_laguerre_index() {
        for (a, b) in QS {
            let c = ctx(a, b);
            for n in 0..=6 {
                let base = q_lghp(&c, n, 1, 2).unwrap().vanish(&[Var::X]);
                for m in 2..=3 {
                    assert_eq!(q_lghp(&c, n, m, 2).unwrap().vanish(&[Var::X]), base);
                }
            }
        }
    }

    #[test]
    fn classical_forms_agree_with_q_forms_at_one() {
        let one = ctx(1, 1);
        for m in 1..=3 {
            for s in 1..=3 {
                for n in 0..=6 {
                    assert_eq!(classical_2dlp(n, m).unwrap(), q_2dlp(&one, n, m).unwrap());
                    assert_eq!(classical_lghp(n, m, s).unwrap(), q_lghp(&one, n, m, s).unwrap());
                }
            }
        }
    }

    #[test]
    fn probe_sees_the_same_support() {
        let c = ctx(2, 3);
        let exact = q_lghp(&c, 6, 2, 3).unwrap();
        let probed = q_lghp(&DegreeProbe, 6, 2, 3).unwrap();
        let a: Vec<_> = exact.terms().map(|(m, _)| *m).collect();
        let b: Vec<_> = probed.terms().map(|(m, _)| *m).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn table_memoizes_across_threads() {
        let table = FamilyTable::new(ctx(1, 2));
        let spec = FamilySpec::new(Family::QLghp { m: 2, s: 2 }, 5);
        let first = table.get(spec).unwrap();
        std::thread::scope(|scope| {
            for _ in 0..4 {
                scope.spawn(|| assert_eq!(table.get(spec).unwrap(), first));
            }
        });
        assert_eq!(spec.to_string(), "LH(5,2,2)");
    }
}

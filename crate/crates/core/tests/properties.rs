//! Property tests for the algebraic invariants of every layer.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use proptest::prelude::*;

use qlghp::cli::{parse_family, poly_from_json, poly_json};
use qlghp::families::{q_2dlp, q_lghp, FamilySpec};
use qlghp::identities::{build_sides, CaseParams, IdentityId, Param};
use qlghp::mpoly::{MPoly, Monomial, Var};
use qlghp::qops::{compose_jhc, eq_coeffs, jhc_pow, mixed_sub_pow, qdiff, qdiff_by_definition, JhcSign, QDiffOp};
use qlghp::qseries::{generating_kernel, series_big_e, series_eq, TSeries};
use qlghp::scalar::QAlgebra;
use qlghp::{QContext, Rational};

const VARS: [Var; 4] = [Var::X, Var::Y, Var::Z, Var::T];

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Rational `q` other than `0` and `1`, either sign.
fn any_q() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9)
        .prop_map(|(n, d)| rat(n, d))
        .prop_filter("q must differ from 0 and 1", |q| !q.is_zero() && !q.is_one())
}

/// Rational `q` at which no q-number vanishes: neither `0`, `1` nor `-1`.
fn regular_q() -> impl Strategy<Value = Rational> {
    any_q().prop_filter("q must differ from -1", |q| *q != rat(-1, 1))
}

/// Up to five terms in four variables, each of total degree at most 6.
fn small_poly() -> impl Strategy<Value = MPoly> {
    let term = (-5i64..=5, 1i64..=4, proptest::collection::vec(0u16..=2, 4));
    proptest::collection::vec(term, 0..=5).prop_map(|terms| {
        let mut p = MPoly::zero();
        for (n, d, exps) in terms {
            let pairs: Vec<(Var, u16)> = VARS.iter().copied().zip(exps).collect();
            let mono = Monomial::from_pairs(&pairs);
            if mono.degree() <= 6 {
                p.add_term(mono, &rat(n, d));
            }
        }
        p
    })
}

fn var(v: Var) -> MPoly {
    MPoly::var(v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &MPoly::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!((&a - &a).len(), 0);
    }

    #[test]
    fn substitutions_compose(p in small_poly(), s in small_poly(), t in small_poly()) {
        // sigma: x -> s(y, z); tau: y -> t(z, t); images avoid the domains
        let s = s.vanish(&[Var::X, Var::T]);
        let t = t.vanish(&[Var::X, Var::Y]);
        let sigma = BTreeMap::from([(Var::X, s.clone())]);
        let tau = BTreeMap::from([(Var::Y, t.clone())]);
        let composed = BTreeMap::from([(Var::X, s.substitute(&tau)), (Var::Y, t)]);
        prop_assert_eq!(p.substitute(&sigma).substitute(&tau), p.substitute(&composed));
    }

    #[test]
    fn substitution_is_a_ring_map(a in small_poly(), b in small_poly(), image in small_poly()) {
        let sigma = BTreeMap::from([(Var::Z, image)]);
        prop_assert_eq!((&a * &b).substitute(&sigma), &a.substitute(&sigma) * &b.substitute(&sigma));
        prop_assert_eq!((&a + &b).substitute(&sigma), &a.substitute(&sigma) + &b.substitute(&sigma));
    }

    #[test]
    fn json_round_trip(p in small_poly()) {
        let text = poly_json(&p).to_string();
        prop_assert_eq!(poly_from_json(&text).unwrap(), p);
    }

    #[test]
    fn q_number_closed_form(q in any_q(), m in 1u32..=4, n in 0u32..=12) {
        let ctx = QContext::new(q.clone());
        let qm = ctx.base(m);
        prop_assume!(!qm.is_one());
        let closed = (Rational::one() - num_traits::Pow::pow(&qm, n)) / (Rational::one() - &qm);
        prop_assert_eq!(ctx.q_number(m, n), closed);
    }

    #[test]
    fn q_binomial_symmetry_and_pascal(q in any_q(), n in 1u32..=12, k in 0u32..=12) {
        prop_assume!(k <= n);
        let ctx = QContext::new(q);
        prop_assert_eq!(ctx.q_binomial(1, n, k).unwrap(), ctx.q_binomial(1, n, n - k).unwrap());
        let lower = if k == 0 { Rational::zero() } else { ctx.q_binomial(1, n - 1, k - 1).unwrap() };
        let upper = if k == n { Rational::zero() } else { ctx.q_binomial(1, n - 1, k).unwrap() };
        let shifted = QAlgebra::q_power(&ctx, i64::from(k)).unwrap() * upper;
        prop_assert_eq!(ctx.q_binomial(1, n, k).unwrap(), lower + shifted);
    }

    #[test]
    fn q_binomial_pochhammer_form(q in regular_q(), n in 0u32..=10, k in 0u32..=10) {
        prop_assume!(k <= n);
        let ctx = QContext::new(q.clone());
        let poch = |j: u32| ctx.q_shifted_factorial(&q, j);
        prop_assert_eq!(ctx.q_binomial(1, n, k).unwrap(), poch(n) / (poch(n - k) * poch(k)));
    }

    #[test]
    fn semifactorial_factorizes(q in any_q(), m in 1u32..=4, k in 0u32..=6) {
        let ctx = QContext::new(q);
        let rhs = num_traits::Pow::pow(&ctx.q_number(1, m), k) * ctx.q_factorial(m, k);
        prop_assert_eq!(ctx.q_semifactorial(m, k), rhs);
    }

    #[test]
    fn qdiff_is_linear_and_literal(q in any_q(), a in small_poly(), b in small_poly(), c in -4i64..=4) {
        let ctx = QContext::new(q);
        prop_assume!(!ctx.base(1).is_one());
        let op = QDiffOp::new(1, Var::X);
        let combo = &a + &b.scale(&rat(c, 1));
        let lhs = qdiff(&ctx, op, &combo).unwrap();
        let rhs = &qdiff(&ctx, op, &a).unwrap() + &qdiff(&ctx, op, &b).unwrap().scale(&rat(c, 1));
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(lhs, qdiff_by_definition(&ctx, op, &combo).unwrap());
    }

    #[test]
    fn jhc_boundary_values(q in any_q(), n in 0u32..=8) {
        let ctx = QContext::new(q);
        let x = var(Var::X);
        prop_assert_eq!(jhc_pow(&ctx, &x, &MPoly::zero(), n, JhcSign::Plus).unwrap(), x.pow(n));
        let classical = QContext::from_ratio(1, 1);
        let sum = &x + &var(Var::Y);
        prop_assert_eq!(jhc_pow(&classical, &x, &var(Var::Y), n, JhcSign::Plus).unwrap(), sum.pow(n));
    }

    #[test]
    fn jhc_product_form(q in any_q(), n in 0u32..=8) {
        let ctx = QContext::new(q);
        let mut product = MPoly::one();
        for k in 0..n {
            let factor = &var(Var::X) + &var(Var::Y).scale(&QAlgebra::q_power(&ctx, i64::from(k)).unwrap());
            product = &product * &factor;
        }
        prop_assert_eq!(jhc_pow(&ctx, &var(Var::X), &var(Var::Y), n, JhcSign::Plus).unwrap(), product);
    }

    #[test]
    fn kernel_rules(q in regular_q(), m in 1u32..=3, order in 0usize..=8) {
        let ctx = QContext::new(q);
        let x = var(Var::X);
        let y = var(Var::Y);
        // e_q(x t) E_q(-x t) = 1
        let inverse = series_eq(&ctx, &x, 1, order).unwrap().mul(&series_big_e(&ctx, 1, &-&x, 1, order).unwrap());
        prop_assert_eq!(inverse, TSeries::one(order));
        // e_q(x t) E_q(y t) = e_q((x ⊕ y) t), the right side by composition
        let product = series_eq(&ctx, &x, 1, order).unwrap().mul(&series_big_e(&ctx, 1, &y, 1, order).unwrap());
        let (xt, yt) = (&x * &var(Var::T), &y * &var(Var::T));
        let composed = compose_jhc(&ctx, &eq_coeffs(&ctx, order as u32).unwrap(), &xt, &yt, JhcSign::Plus).unwrap();
        prop_assert_eq!(product.to_poly(Var::T), composed);
        // e_q(x t) E_{q^m}(-y t) = sum t^n (x ⊖_{q,q^m} y)^n / [n]_q!
        let mixed = series_eq(&ctx, &x, 1, order).unwrap().mul(&series_big_e(&ctx, m, &-&y, 1, order).unwrap());
        let mut expected = MPoly::zero();
        for n in 0..=order as u32 {
            let term = mixed_sub_pow(&ctx, &x, &y, m, n).unwrap().mul_monomial(&Monomial::var(Var::T, n as u16));
            expected.add_scaled(&term, &ctx.q_factorial_inv(1, n).unwrap());
        }
        prop_assert_eq!(mixed.to_poly(Var::T), expected);
    }

    #[test]
    fn generating_functions(q in regular_q(), m in 1u32..=3, s in 1u32..=3) {
        let ctx = QContext::new(q);
        let order = 10;
        let with_z = generating_kernel(&ctx, m, Some(s), order).unwrap();
        let without_z = generating_kernel(&ctx, m, None, order).unwrap();
        for n in 0..=order as u32 {
            let scale = ctx.q_factorial(1, n);
            prop_assert_eq!(with_z.coeff(n as usize).unwrap().scale(&scale), q_lghp(&ctx, n, m, s).unwrap());
            prop_assert_eq!(without_z.coeff(n as usize).unwrap().scale(&scale), q_2dlp(&ctx, n, m).unwrap());
        }
    }

    #[test]
    fn reduction_at_z_zero(q in regular_q(), n in 0u32..=8, m in 1u32..=3, s in 1u32..=3) {
        let ctx = QContext::new(q);
        prop_assert_eq!(q_lghp(&ctx, n, m, s).unwrap().vanish(&[Var::Z]), q_2dlp(&ctx, n, m).unwrap());
    }

    #[test]
    fn degree_bookkeeping(q in regular_q(), n in 0u32..=10, m in 1u32..=3, s in 1u32..=3) {
        let p = q_lghp(&QContext::new(q), n, m, s).unwrap();
        prop_assert_eq!(p.degree_in(Var::Y), Some(n as u16));
        prop_assert_eq!(p.degree_in(Var::X), Some((n / m) as u16));
        prop_assert_eq!(p.degree_in(Var::Z), Some((n / s) as u16));
    }

    #[test]
    fn rearrangement_lemmas(seed in any::<u64>()) {
        for id in [IdentityId::H310, IdentityId::H322, IdentityId::H314] {
            let mut params = CaseParams::default();
            params.set(Param::Seed, seed);
            params.set(Param::M, 2);
            let sides = build_sides(&QContext::from_ratio(2, 3), id, &params).unwrap();
            prop_assert_eq!(sides.lhs, sides.rhs, "{}", id);
        }
    }

    #[test]
    fn parser_never_panics(src in "\\PC{0,24}") {
        let _ = parse_family(&src);
    }

    #[test]
    fn parser_accepts_rendered_specs(n in 0u32..=50, m in 1u32..=9, s in 1u32..=9, which in 0usize..5) {
        let text = match which {
            0 => format!("gh({n},{m})"),
            1 => format!("qgh({n},{m})"),
            2 => format!("L({n},{m})"),
            3 => format!("LH({n},{m},{s})"),
            _ => format!("H({n})"),
        };
        let spec: FamilySpec = parse_family(&text).unwrap().spec;
        prop_assert_eq!(spec.to_string(), text);
    }
}

#[test]
fn exponent_identity_exhaustive() {
    let c2 = |n: i64| n * (n - 1) / 2;
    for l in 0..=20i64 {
        for r in 0..=l {
            assert_eq!(c2(r) + c2(l - r) - c2(l), r * (r - l));
        }
    }
}

//! Randomized cross-module checks beyond the exhaustive degree caps of the
//! acceptance gate.

use malcev::closedform::{us_product, ut_product};
use malcev::quotient::{quotient_product, MonomialSpanIdeal, QuotientTag};
use malcev::{catalog, EnvContext, Monomial, QAlgebra, QContext};
use proptest::prelude::*;
use std::sync::OnceLock;

fn s_ctx() -> &'static QContext {
    static CTX: OnceLock<QContext> = OnceLock::new();
    CTX.get_or_init(|| EnvContext::new(catalog::algebra_s()).unwrap())
}

fn t_ctx() -> &'static QContext {
    static CTX: OnceLock<QContext> = OnceLock::new();
    CTX.get_or_init(|| EnvContext::new(catalog::algebra_t()).unwrap())
}

fn monomial(dim: usize, max_total: u32) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0u32..=max_total, dim)
        .prop_filter("degree cap", move |e| e.iter().sum::<u32>() <= max_total)
        .prop_map(|e| Monomial::from_exponents(&e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn us_closed_form_matches_engine_in_degree_four(x in monomial(4, 4), y in monomial(4, 4)) {
        prop_assert_eq!(us_product(&x, &y).unwrap(), s_ctx().product_monomials(&x, &y).unwrap());
    }

    #[test]
    fn ut_closed_form_matches_engine_in_degree_four(x in monomial(5, 4), y in monomial(5, 3)) {
        prop_assert_eq!(ut_product(&x, &y).unwrap(), t_ctx().product_monomials(&x, &y).unwrap());
    }

    #[test]
    fn quotient_products_are_reduced_products(x in monomial(5, 4), y in monomial(5, 4)) {
        for (tag, ctx) in [(QuotientTag::S, s_ctx()), (QuotientTag::T, t_ctx())] {
            let ideal = MonomialSpanIdeal::new(tag);
            let dim = ctx.dim();
            let (x, y) = (Monomial::from_exponents(&x.exponents()[..dim]), Monomial::from_exponents(&y.exponents()[..dim]));
            if !ideal.is_survivor(&x) || !ideal.is_survivor(&y) {
                continue;
            }
            let engine = ideal.reduce(&ctx.product_monomials(&x, &y).unwrap());
            prop_assert_eq!(quotient_product(tag, &x, &y).unwrap(), engine);
        }
    }
}

#[test]
fn catalog_json_round_trips() {
    for name in catalog::NAMES {
        let a = catalog::catalog(name).unwrap();
        let text = serde_json::to_string(&a.to_json()).unwrap();
        let b = QAlgebra::from_json_str(&text).unwrap();
        assert_eq!(a.dense_table(), b.dense_table(), "{name}");
        assert_eq!(a.labels(), b.labels());
    }
}

#[test]
fn element_json_round_trips() {
    let ctx = s_ctx();
    let x = ctx
        .product_monomials(
            &ctx.parse_monomial("abc").unwrap(),
            &ctx.parse_monomial("bc").unwrap(),
        )
        .unwrap();
    let back = malcev::EnvElement::from_json(4, &x.to_json()).unwrap();
    assert_eq!(x, back);
}

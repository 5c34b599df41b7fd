use super::*;
use crate::catalog;
use crate::scalar::{q, qq, Rational};

fn ctx(name: &str) -> EnvContext<Rational> {
    EnvContext::new(catalog::catalog(name).unwrap()).unwrap()
}

fn el(ctx: &EnvContext<Rational>, terms: &[(&str, Rational)]) -> EnvElement<Rational> {
    EnvElement::from_terms(
        ctx.dim(),
        terms
            .iter()
            .map(|(m, c)| (ctx.parse_monomial(m).unwrap(), c.clone())),
    )
}

fn m(ctx: &EnvContext<Rational>, s: &str) -> Monomial {
    ctx.parse_monomial(s).unwrap()
}

fn e(ctx: &EnvContext<Rational>, s: &str) -> EnvElement<Rational> {
    EnvElement::monomial(m(ctx, s))
}

#[test]
fn rejects_non_malcev_input() {
    let a4 = catalog::algebra_a4();
    assert!(matches!(EnvContext::new(a4), Err(Error::NotMalcev { .. })));
}

#[test]
fn bracket_examples_in_s() {
    let s = ctx("S");
    let a = s.algebra().label_index("a").unwrap();
    assert_eq!(
        s.bracket_mono_gen(&m(&s, "bcd"), a).unwrap(),
        el(&s, &[("bcd", q(1)), ("d^2", q(-3))])
    );
    assert!(s.bracket_mono_gen(&Monomial::one(4), a).unwrap().is_zero());
    assert!(s.bracket_mono_gen(&m(&s, "cd"), a).unwrap().is_zero());
    assert!(matches!(
        s.bracket_mono_gen(&m(&s, "b"), 9),
        Err(Error::IndexOutOfRange { index: 9, dim: 4 })
    ));
}

#[test]
fn left_multiplication_examples() {
    let s = ctx("S");
    assert_eq!(
        s.left_mul_gen(1, &m(&s, "a")).unwrap(),
        el(&s, &[("ab", q(1)), ("b", q(1))])
    );
    assert_eq!(s.left_mul_gen(0, &m(&s, "ab")).unwrap(), e(&s, "a^2b"));
    let t = ctx("T");
    assert_eq!(
        t.left_mul_gen(1, &m(&t, "a")).unwrap(),
        el(&t, &[("ab", q(1)), ("c", q(-1))])
    );
    assert!(s.left_mul_gen(4, &m(&s, "a")).is_err());
}

#[test]
fn product_examples() {
    let s = ctx("S");
    let p = s.product(&e(&s, "abc"), &e(&s, "bc")).unwrap();
    assert_eq!(
        p,
        el(&s, &[("ab^2c^2", q(1)), ("abcd", q(-2)), ("d^2", q(2))])
    );
    assert_eq!(s.display(&p), "ab²c² - 2abcd + 2d²");
    let y = el(&s, &[("ab", q(3)), ("cd^2", qq(-1, 2))]);
    assert_eq!(s.product(&s.one(), &y).unwrap(), y);
    assert_eq!(s.product(&y, &s.one()).unwrap(), y);
    assert_eq!(
        s.product(&e(&s, "c"), &e(&s, "b")).unwrap(),
        el(&s, &[("bc", q(1)), ("d", q(-2))])
    );
    let t = ctx("T");
    assert!(matches!(
        s.product(&t.one(), &y),
        Err(Error::ContextMismatch(..))
    ));
}

#[test]
fn derivation_examples() {
    let s = ctx("S");
    let c = e(&s, "c");
    assert!(s.derivation_dab(0, 0, &e(&s, "abc")).unwrap().is_zero());
    assert_eq!(s.derivation_dab(0, 1, &c).unwrap(), e(&s, "d"));
    assert_eq!(s.derivation_dab(1, 0, &c).unwrap(), -e(&s, "d"));
}

#[test]
fn worked_alternator_examples() {
    let s = ctx("S");
    let cases = [
        ("a", "bc", el(&s, &[("d^2", q(2))])),
        ("b", "ac", el(&s, &[("cd", q(1))])),
        ("c", "ab", el(&s, &[("bd", q(-1))])),
    ];
    for (x, y, want) in cases {
        let got = s.associator(&e(&s, x), &e(&s, y), &e(&s, y)).unwrap();
        assert_eq!(got, want, "({x},{y},{y})");
    }
    let t = ctx("T");
    let ab = e(&t, "ab");
    assert_eq!(
        t.associator(&ab, &ab, &e(&t, "d")).unwrap(),
        el(&t, &[("ce", qq(-1, 6))])
    );
    let bd = e(&t, "bd");
    assert_eq!(
        t.associator(&bd, &bd, &e(&t, "a^2")).unwrap(),
        el(&t, &[("e^2", qq(1, 18))])
    );
    assert_eq!(
        t.left_alternator(&ab, &e(&t, "d")).unwrap(),
        el(&t, &[("ce", qq(-1, 6))])
    );
    assert!(t.associator(&t.one(), &ab, &bd).unwrap().is_zero());
}

#[test]
fn nucleus_and_center() {
    let s = ctx("S");
    let r = s.nucleus_center_check(&e(&s, "d"), 3).unwrap();
    assert!(r.sections[0].passed(), "{r}");
    assert!(!r.sections[1].passed());

    let r = s.nucleus_center_check(&e(&s, "a"), 1).unwrap();
    let center = &r.sections[1];
    assert!(center
        .failures
        .iter()
        .any(|f| f.inputs == ["a", "b"] && f.residual == "-b"));

    let t = ctx("T");
    let r = t.nucleus_center_check(&e(&t, "e"), 3).unwrap();
    assert!(r.passed(), "{r}");

    assert!(s.nucleus_center_check(&e(&s, "d"), 0).is_err());
}

/// `ab − ba = [a,b]` read off the structure constants directly.
#[test]
fn defining_relation() {
    for name in ["S", "T", "sl2", "LV5", "M_split"] {
        let c = ctx(name);
        let n = c.dim();
        for a in 0..n {
            for b in 0..n {
                let comm = c.commutator(&c.generator(a), &c.generator(b)).unwrap();
                let want = EnvElement::from_terms(
                    n,
                    c.algebra()
                        .basis_product(a, b)
                        .iter()
                        .map(|(k, v)| (Monomial::generator(n, *k), v.clone())),
                );
                assert_eq!(comm, want, "{name}: [{a},{b}]");
            }
        }
    }
}

/// Generators lie in the generalized alternative nucleus and satisfy
/// `(a,b,x) = ⅙[[x,a],b] − ⅙[[x,b],a] − ⅙[x,[a,b]]`.
#[test]
fn generators_in_alternative_nucleus() {
    for (name, cap) in [("S", 4), ("T", 3)] {
        let c = ctx(name);
        let sixth = qq(1, 6);
        for x in monomials_up_to(c.dim(), cap) {
            let xe = EnvElement::monomial(x.clone());
            for a in 0..c.dim() {
                let ga = c.generator(a);
                for b in 0..c.dim() {
                    let gb = c.generator(b);
                    let abx = c.assoc(&ga, &gb, &xe);
                    assert_eq!(abx, -c.assoc(&gb, &ga, &xe));
                    assert_eq!(c.assoc(&gb, &xe, &ga), abx);
                    let mut want = c.bracket_eg(&c.bracket_eg(&xe, a), b);
                    want.sub_assign(&c.bracket_eg(&c.bracket_eg(&xe, b), a));
                    want.sub_assign(&c.bracket_with_vector(&xe, c.algebra().basis_product(a, b)));
                    assert_eq!(abx, want.scaled(&sixth), "{name}: ({a},{b},{x:?})");
                }
            }
        }
    }
}

/// The top-degree part of `xy` is the commutative product of `x` and `y`.
#[test]
fn associated_graded_is_polynomial() {
    for name in ["S", "T"] {
        let c = ctx(name);
        let basis = monomials_up_to(c.dim(), 3);
        for x in &basis {
            for y in &basis {
                let p = c.product_monomials(x, y).unwrap();
                assert_eq!(
                    p.top_degree_part(),
                    EnvElement::monomial(x.mul_commutative(y))
                );
            }
        }
    }
}

#[test]
fn dab_is_a_derivation() {
    let c = ctx("S");
    let basis = monomials_up_to(4, 3);
    for a in 0..4 {
        for b in 0..4 {
            for x in &basis {
                let xe = EnvElement::monomial(x.clone());
                for y in &basis {
                    let ye = EnvElement::monomial(y.clone());
                    let lhs = c.dab(a, b, &c.mul(&xe, &ye));
                    let rhs = c.mul(&c.dab(a, b, &xe), &ye) + c.mul(&xe, &c.dab(a, b, &ye));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn dab_antisymmetric() {
    let c = ctx("T");
    for x in monomials_up_to(5, 3) {
        let xe = EnvElement::monomial(x);
        for a in 0..5 {
            assert!(c.dab(a, a, &xe).is_zero());
            for b in 0..5 {
                assert_eq!(c.dab(a, b, &xe), -c.dab(b, a, &xe));
            }
        }
    }
}

#[test]
fn cache_coherence() {
    let cached = ctx("S");
    let plain = cached.without_cache();
    let basis = monomials_up_to(4, 3);
    for x in &basis {
        for y in &basis {
            assert_eq!(
                cached.product_monomials(x, y).unwrap(),
                plain.product_monomials(x, y).unwrap()
            );
        }
    }
    assert!(cached.cache_len() > 0);
    assert_eq!(plain.cache_len(), 0);
}

#[test]
fn lie_algebra_envelope_is_associative() {
    let c = ctx("sl2");
    let basis = monomials_up_to(3, 2);
    for x in &basis {
        for y in &basis {
            for z in &basis {
                let (xe, ye, ze) = (
                    EnvElement::monomial(x.clone()),
                    EnvElement::monomial(y.clone()),
                    EnvElement::monomial(z.clone()),
                );
                assert!(c.assoc(&xe, &ye, &ze).is_zero());
            }
        }
    }
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn arb_elem(dim: usize) -> impl Strategy<Value = EnvElement<Rational>> {
        proptest::collection::vec((proptest::collection::vec(0u32..2, dim), -3i64..4), 1..4)
            .prop_map(move |ts| {
                EnvElement::from_terms(
                    dim,
                    ts.into_iter()
                        .map(|(e, c)| (Monomial::from_exponents(&e), q(c))),
                )
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn product_is_bilinear(x in arb_elem(4), y in arb_elem(4), z in arb_elem(4), k in -3i64..4) {
            let c = ctx("S");
            let lhs = c.mul(&(x.clone() + y.scaled(&q(k))), &z);
            let rhs = c.mul(&x, &z) + c.mul(&y, &z).scaled(&q(k));
            prop_assert_eq!(lhs, rhs);
            let lhs = c.mul(&z, &(x.clone() + y.scaled(&q(k))));
            let rhs = c.mul(&z, &x) + c.mul(&z, &y).scaled(&q(k));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn generators_flexible_with_elements(x in arb_elem(5), a in 0usize..5) {
            // (a, x, a) = 0 for a generator a, since the associator alternates in it.
            let c = ctx("T");
            let g = c.generator(a);
            prop_assert!(c.assoc(&g, &x, &g).is_zero());
        }
    }
}

//! The alternative quotients `U(S)/J` and `U(T)/J`.
//!
//! Both ideals are spanned by PBW monomials, so a quotient element is an
//! [`EnvElement`] whose terms all lie outside the ideal, and reduction just
//! deletes ideal terms. The predicates are the explicit bases:
//!
//! * `S`: `a^i b^j c^k d^ℓ ∈ J` iff `ℓ ≥ 2`, or `ℓ = 1` and `j + k ≥ 1`
//!   (generated by `d², cd, bd`; survivors `a^i d` and `a^i b^j c^k`);
//! * `T`: `a^i b^j c^k d^ℓ e^m ∈ J` iff `m ≥ 2`, or `m = 1` and `k ≥ 1`
//!   (generated by `ce, e²`; survivors `a^i b^j c^k d^ℓ` and `a^i b^j d^ℓ e`).

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closedform::{first_difference, ShiftedPolynomialTerm};
use crate::combinat::{binomial, factorial, sign};
use crate::envelope::{monomials_up_to, EnvContext, EnvElement, Monomial};
use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::scalar::{q, qq, Rational};
use crate::{catalog, FiniteAlgebra};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuotientTag {
    S,
    T,
}

impl QuotientTag {
    pub fn for_algebra(name: &str) -> Option<Self> {
        match name {
            "S" => Some(QuotientTag::S),
            "T" => Some(QuotientTag::T),
            _ => None,
        }
    }

    pub fn algebra(self) -> FiniteAlgebra<Rational> {
        match self {
            QuotientTag::S => catalog::algebra_s(),
            QuotientTag::T => catalog::algebra_t(),
        }
    }

    fn dim(self) -> usize {
        match self {
            QuotientTag::S => 4,
            QuotientTag::T => 5,
        }
    }
}

/// An ideal of `U(S)` or `U(T)` given by its monomial basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonomialSpanIdeal {
    pub tag: QuotientTag,
}

impl MonomialSpanIdeal {
    pub fn new(tag: QuotientTag) -> Self {
        MonomialSpanIdeal { tag }
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        match self.tag {
            QuotientTag::S => {
                let l = m.exponent(3);
                l >= 2 || (l == 1 && m.exponent(1) + m.exponent(2) >= 1)
            }
            QuotientTag::T => {
                let e = m.exponent(4);
                e >= 2 || (e == 1 && m.exponent(2) >= 1)
            }
        }
    }

    pub fn is_survivor(&self, m: &Monomial) -> bool {
        m.dim() == self.tag.dim() && !self.contains(m)
    }

    /// Deletes every term lying in the ideal.
    pub fn reduce(&self, x: &EnvElement<Rational>) -> EnvElement<Rational> {
        x.filter(|m| !self.contains(m))
    }

    /// Survivor monomials of degree `≤ cap`, in PBW order.
    pub fn survivors(&self, cap: u32) -> Vec<Monomial> {
        monomials_up_to(self.tag.dim(), cap)
            .into_iter()
            .filter(|m| !self.contains(m))
            .collect()
    }

    /// `reduce ∘ product`, the multiplication of the quotient.
    pub fn product(
        &self,
        ctx: &EnvContext<Rational>,
        x: &EnvElement<Rational>,
        y: &EnvElement<Rational>,
    ) -> Result<EnvElement<Rational>> {
        Ok(self.reduce(&ctx.product(x, y)?))
    }

    fn check_survivor(&self, m: &Monomial) -> Result<()> {
        if m.dim() != self.tag.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.tag.dim(),
                got: m.dim(),
            });
        }
        if self.contains(m) {
            return Err(Error::Unsupported(format!(
                "{m:?} lies in the ideal J, not a survivor monomial"
            )));
        }
        Ok(())
    }
}

/// Checks that every ideal basis monomial `u` of degree `≤ cap` satisfies
/// `g·u, u·g ∈ J` for every generator `g`.
pub fn verify_ideal_closed(
    ideal: MonomialSpanIdeal,
    ctx: &EnvContext<Rational>,
    cap: u32,
) -> VerificationReport {
    let members: Vec<Monomial> = monomials_up_to(ctx.dim(), cap)
        .into_iter()
        .filter(|m| ideal.contains(m))
        .collect();
    let rows: Vec<(Vec<String>, Option<String>)> = members
        .par_iter()
        .flat_map_iter(|u| {
            let ue = EnvElement::monomial(u.clone());
            (0..ctx.dim()).flat_map(move |g| {
                let ge = ctx.generator(g);
                let ue2 = ue.clone();
                [(true, ge.clone()), (false, ge)]
                    .into_iter()
                    .map(move |(left, ge)| {
                        let (x, y) = if left { (&ge, &ue2) } else { (&ue2, &ge) };
                        let leak = ideal.reduce(&ctx.product(x, y).expect("same algebra"));
                        let inputs = vec![ctx.display(x), ctx.display(y)];
                        (
                            inputs,
                            (!leak.is_zero()).then(|| format!("leaves J: {}", ctx.display(&leak))),
                        )
                    })
            })
        })
        .collect();
    let mut report = VerificationReport::new(format!(
        "J is closed under multiplication by generators of {}, degree <= {cap}",
        ctx.algebra().name()
    ));
    for (inputs, residual) in rows {
        report.record(|| inputs, residual);
    }
    report
}

/// The multiplication table of `U(S)/J` on survivors:
///
/// ```text
/// (a^i d)(a^m d) = 0
/// (a^i b^j c^k)(a^m d) = δ_{j0} δ_{k0} a^{i+m} d
/// (a^i d)(a^m b^n c^p) = δ_{n0} δ_{p0} a^i (a−1)^m d
/// (a^i b^j c^k)(a^m b^n c^p) = a^i (a+j+k)^m b^{j+n} c^{k+p} + δ_{j+n,1} δ_{k+p,1} T^{im}_{jk}
/// ```
///
/// where `T^{im}_{jk}` is `0`, `(a−1)^{i+m} d − a^i (a+1)^m d`,
/// `−(a−1)^{i+m} d − a^i (a+1)^m d` or `a^i (a−1)^m d − a^i (a+2)^m d` for
/// `(j,k) = (0,0), (1,0), (0,1), (1,1)`.
pub fn as_product(m1: &Monomial, m2: &Monomial) -> Result<EnvElement<Rational>> {
    let ideal = MonomialSpanIdeal::new(QuotientTag::S);
    ideal.check_survivor(m1)?;
    ideal.check_survivor(m2)?;
    let [i, j, k, l1] = [0, 1, 2, 3].map(|v| m1.exponent(v));
    let [m, n, p, l2] = [0, 1, 2, 3].map(|v| m2.exponent(v));
    let d = Monomial::from_exponents(&[0, 0, 0, 1]);
    let shifted = |pre: u32, shift: i64, post: u32, rest: &Monomial| {
        ShiftedPolynomialTerm {
            var: 0,
            pre,
            shift,
            post,
        }
        .expand_times(rest)
    };
    let out = match (l1, l2) {
        (1, 1) => EnvElement::zero(4),
        (0, 1) => {
            if j == 0 && k == 0 {
                shifted(i + m, 0, 0, &d)
            } else {
                EnvElement::zero(4)
            }
        }
        (1, 0) => {
            if n == 0 && p == 0 {
                shifted(i, -1, m, &d)
            } else {
                EnvElement::zero(4)
            }
        }
        _ => {
            let rest = Monomial::from_exponents(&[0, j + n, k + p, 0]);
            let mut out = shifted(i, (j + k) as i64, m, &rest);
            if j + n == 1 && k + p == 1 {
                let correction = match (j, k) {
                    (0, 0) => EnvElement::zero(4),
                    (1, 0) => shifted(0, -1, i + m, &d) - shifted(i, 1, m, &d),
                    (0, 1) => -shifted(0, -1, i + m, &d) - shifted(i, 1, m, &d),
                    _ => shifted(i, -1, m, &d) - shifted(i, 2, m, &d),
                };
                out.add_assign(&correction);
            }
            out
        }
    };
    Ok(ideal.reduce(&out))
}

/// The multiplication table of `U(T)/J` on survivors:
///
/// ```text
/// (a^i b^j d^ℓ e)(a^p b^q d^s e) = 0
/// (a^i b^j c^k d^ℓ)(a^p b^q d^s e) = δ_{k0} a^{i+p} b^{j+q} d^{ℓ+s} e
/// (a^i b^j d^ℓ e)(a^p b^q c^r d^s) = δ_{r0} a^{i+p} b^{j+q} d^{ℓ+s} e
/// (a^i b^j c^k d^ℓ)(a^p b^q c^r d^s)
///   = Σ_{μ ≤ j} (−1)^μ μ! C(j,μ) C(p,μ) a^{i+p−μ} b^{j+q−μ} c^{k+r+μ} d^{ℓ+s}
///   + δ_{k0} δ_{r0} (ijs/6 − iℓq/6 + jℓp/2 + jps/3 − ℓpq/3) a^{i+p−1} b^{j+q−1} d^{ℓ+s−1} e
///   − δ_{k0} δ_{r1} ℓ a^{i+p} b^{j+q} d^{ℓ+s−1} e
/// ```
pub fn at_product(m1: &Monomial, m2: &Monomial) -> Result<EnvElement<Rational>> {
    let ideal = MonomialSpanIdeal::new(QuotientTag::T);
    ideal.check_survivor(m1)?;
    ideal.check_survivor(m2)?;
    let [i, j, k, l, e1] = [0, 1, 2, 3, 4].map(|v| m1.exponent(v) as i64);
    let [p, qe, r, s, e2] = [0, 1, 2, 3, 4].map(|v| m2.exponent(v) as i64);
    let mut out = EnvElement::zero(5);
    let mut add = |c: Rational, exps: [i64; 5]| -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        if exps.iter().any(|&x| x < 0) {
            return Err(Error::Internal(format!(
                "A(T) product: coefficient {c} on exponents {exps:?}"
            )));
        }
        out.add_term(Monomial::from_exponents(&exps.map(|x| x as u32)), c);
        Ok(())
    };
    match (e1, e2) {
        (1, 1) => {}
        (0, 1) => {
            if k == 0 {
                add(q(1), [i + p, j + qe, 0, l + s, 1])?;
            }
        }
        (1, 0) => {
            if r == 0 {
                add(q(1), [i + p, j + qe, 0, l + s, 1])?;
            }
        }
        _ => {
            for mu in 0..=j {
                let c = factorial(mu) * binomial(j, mu) * binomial(p, mu) * sign(mu);
                add(
                    Rational::from_integer(c),
                    [i + p - mu, j + qe - mu, k + r + mu, l + s, 0],
                )?;
            }
            if k == 0 && r == 0 {
                let c = qq(i * j * s, 6) - qq(i * l * qe, 6) + qq(j * l * p, 2) + qq(j * p * s, 3)
                    - qq(l * p * qe, 3);
                add(c, [i + p - 1, j + qe - 1, 0, l + s - 1, 1])?;
            }
            if k == 0 && r == 1 {
                add(
                    Rational::from_integer(BigInt::from(-l)),
                    [i + p, j + qe, 0, l + s - 1, 1],
                )?;
            }
        }
    }
    Ok(ideal.reduce(&out))
}

/// The closed-form quotient product for a tag.
pub fn quotient_product(
    tag: QuotientTag,
    m1: &Monomial,
    m2: &Monomial,
) -> Result<EnvElement<Rational>> {
    match tag {
        QuotientTag::S => as_product(m1, m2),
        QuotientTag::T => at_product(m1, m2),
    }
}

/// Compares the closed-form quotient product with `reduce ∘ product` on
/// all pairs of survivors of degree `≤ cap`.
pub fn verify_quotient_crosscheck(
    tag: QuotientTag,
    ctx: &EnvContext<Rational>,
    cap: u32,
) -> VerificationReport {
    let ideal = MonomialSpanIdeal::new(tag);
    let basis = ideal.survivors(cap);
    let labels = ctx.labels();
    let rows: Vec<(Vec<String>, Option<String>)> = basis
        .par_iter()
        .flat_map_iter(|x| {
            basis.iter().map(move |y| {
                let engine = ideal.reduce(
                    &ctx.product_monomials(x, y)
                        .expect("survivors of this algebra"),
                );
                let residual = match quotient_product(tag, x, y) {
                    Err(e) => Some(format!("closed form failed: {e}")),
                    Ok(closed) => first_difference(&closed, &engine).map(|(m, a, b)| {
                        format!("at {}: closed form {a}, engine {b}", m.display(labels))
                    }),
                };
                (vec![x.display(labels), y.display(labels)], residual)
            })
        })
        .collect();
    let mut report = VerificationReport::new(format!(
        "quotient closed form vs reduced engine product in U({})/J, {} pairs of degree <= {cap}",
        ctx.algebra().name(),
        rows.len()
    ));
    for (inputs, residual) in rows {
        report.record(|| inputs, residual);
    }
    report
}

/// Checks that the quotient is alternative on survivors of degree `≤ cap`:
/// `(x,x,y) = (y,x,x) = 0` and the associator changes sign under the two
/// adjacent transpositions. Products are `reduce ∘ product`.
pub fn verify_alternative_quotient(
    tag: QuotientTag,
    ctx: &EnvContext<Rational>,
    cap: u32,
) -> VerificationReport {
    let ideal = MonomialSpanIdeal::new(tag);
    let basis: Vec<EnvElement<Rational>> = ideal
        .survivors(cap)
        .into_iter()
        .map(EnvElement::monomial)
        .collect();
    let assoc = |x: &EnvElement<Rational>, y: &EnvElement<Rational>, z: &EnvElement<Rational>| {
        let p = |u: &EnvElement<Rational>, v: &EnvElement<Rational>| {
            ideal.product(ctx, u, v).expect("same algebra")
        };
        p(&p(x, y), z) - p(x, &p(y, z))
    };
    let rows: Vec<(Vec<String>, Option<String>)> = basis
        .par_iter()
        .flat_map_iter(|x| {
            let mut rows = Vec::new();
            for y in &basis {
                let xxy = assoc(x, x, y);
                let yxx = assoc(y, x, x);
                let pair = vec![ctx.display(x), ctx.display(y)];
                rows.push((
                    pair.clone(),
                    (!xxy.is_zero()).then(|| format!("(x,x,y) = {}", ctx.display(&xxy))),
                ));
                rows.push((
                    pair,
                    (!yxx.is_zero()).then(|| format!("(y,x,x) = {}", ctx.display(&yxx))),
                ));
                for z in &basis {
                    let a = assoc(x, y, z);
                    let swap12 = assoc(y, x, z) + a.clone();
                    let swap23 = assoc(x, z, y) + a;
                    let residual = if !swap12.is_zero() {
                        Some(format!("(x,y,z) + (y,x,z) = {}", ctx.display(&swap12)))
                    } else if !swap23.is_zero() {
                        Some(format!("(x,y,z) + (x,z,y) = {}", ctx.display(&swap23)))
                    } else {
                        None
                    };
                    rows.push((
                        vec![ctx.display(x), ctx.display(y), ctx.display(z)],
                        residual,
                    ));
                }
            }
            rows
        })
        .collect();
    let mut report = VerificationReport::new(format!(
        "U({})/J is alternative on survivors of degree <= {cap}",
        ctx.algebra().name()
    ));
    for (inputs, residual) in rows {
        report.record(|| inputs, residual);
    }
    report
}

/// Checks that the commutator algebra of the 4-dimensional alternative
/// algebra `A4` has exactly the structure constants of `S`.
pub fn verify_speciality_s() -> VerificationReport {
    let a4 = catalog::algebra_a4();
    let s = catalog::algebra_s();
    let minus = a4.commutator_algebra();
    let mut report =
        VerificationReport::new("S is the commutator algebra of the alternative algebra A4");
    report.expect(a4.labels() == s.labels(), || {
        format!("labels {:?} vs {:?}", a4.labels(), s.labels())
    });
    for x in 0..4 {
        for y in 0..4 {
            let got = minus.basis_product(x, y);
            let want = s.basis_product(x, y);
            report.record(
                || vec![s.labels()[x].clone(), s.labels()[y].clone()],
                (got != want).then(|| {
                    let fmt = |t: &[(usize, Rational)]| {
                        let mut v = crate::Vector::zero(4);
                        for (k, c) in t {
                            v.0[*k] = c.clone();
                        }
                        s.format_vector(&v)
                    };
                    format!("{} != {}", fmt(got), fmt(want))
                }),
            );
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(tag: QuotientTag) -> EnvContext<Rational> {
        EnvContext::new(tag.algebra()).unwrap()
    }

    fn el(c: &EnvContext<Rational>, terms: &[(&str, Rational)]) -> EnvElement<Rational> {
        EnvElement::from_terms(
            c.dim(),
            terms
                .iter()
                .map(|(m, k)| (c.parse_monomial(m).unwrap(), k.clone())),
        )
    }

    #[test]
    fn reduce_examples() {
        let s = ctx(QuotientTag::S);
        let js = MonomialSpanIdeal::new(QuotientTag::S);
        let x = el(&s, &[("ab^2c^2", q(1)), ("abcd", q(-2)), ("d^2", q(2))]);
        assert_eq!(js.reduce(&x), el(&s, &[("ab^2c^2", q(1))]));
        let a3d = el(&s, &[("a^3d", q(1))]);
        assert_eq!(js.reduce(&a3d), a3d);
        let t = ctx(QuotientTag::T);
        let jt = MonomialSpanIdeal::new(QuotientTag::T);
        assert!(jt.reduce(&el(&t, &[("ce", q(1))])).is_zero());
        assert!(!jt.contains(&t.parse_monomial("abde").unwrap()));
    }

    #[test]
    fn survivors_have_the_two_shapes() {
        let js = MonomialSpanIdeal::new(QuotientTag::S);
        for m in js.survivors(5) {
            let l = m.exponent(3);
            assert!(
                l == 0 || (l == 1 && m.exponent(1) == 0 && m.exponent(2) == 0),
                "{m:?}"
            );
        }
        let jt = MonomialSpanIdeal::new(QuotientTag::T);
        for m in jt.survivors(5) {
            let e = m.exponent(4);
            assert!(e == 0 || (e == 1 && m.exponent(2) == 0), "{m:?}");
        }
        assert_eq!(js.survivors(3).len(), 23);
        assert_eq!(jt.survivors(3).len(), 45);
    }

    #[test]
    fn as_examples() {
        let s = ctx(QuotientTag::S);
        let m = |x: &str| s.parse_monomial(x).unwrap();
        assert!(as_product(&m("a^2d"), &m("ad")).unwrap().is_zero());
        assert_eq!(
            as_product(&m("c"), &m("b")).unwrap(),
            el(&s, &[("bc", q(1)), ("d", q(-2))])
        );
        assert_eq!(
            as_product(&m("b"), &m("c")).unwrap(),
            el(&s, &[("bc", q(1))])
        );
        assert!(as_product(&m("bd"), &m("a")).is_err());
    }

    #[test]
    fn at_examples() {
        let t = ctx(QuotientTag::T);
        let m = |x: &str| t.parse_monomial(x).unwrap();
        assert!(at_product(&m("abde"), &m("be")).unwrap().is_zero());
        assert_eq!(
            at_product(&m("b"), &m("a")).unwrap(),
            el(&t, &[("ab", q(1)), ("c", q(-1))])
        );
        assert_eq!(
            at_product(&m("abc"), &m("1")).unwrap(),
            el(&t, &[("abc", q(1))])
        );
        assert!(at_product(&m("ce"), &m("a")).is_err());
    }

    #[test]
    fn ideals_closed_to_degree_four() {
        for tag in [QuotientTag::S, QuotientTag::T] {
            let c = ctx(tag);
            let r = verify_ideal_closed(MonomialSpanIdeal::new(tag), &c, 4);
            assert!(r.passed(), "{r}");
        }
        let s = ctx(QuotientTag::S);
        let js = MonomialSpanIdeal::new(QuotientTag::S);
        let d2 = el(&s, &[("d^2", q(1))]);
        assert!(js.product(&s, &s.generator(0), &d2).unwrap().is_zero());
    }

    #[test]
    fn ideal_absorbs_low_degree_monomials() {
        let s = ctx(QuotientTag::S);
        let js = MonomialSpanIdeal::new(QuotientTag::S);
        let small = monomials_up_to(4, 2);
        for u in monomials_up_to(4, 3).into_iter().filter(|m| js.contains(m)) {
            let u = EnvElement::monomial(u);
            for v in &small {
                let v = EnvElement::monomial(v.clone());
                assert!(js.product(&s, &u, &v).unwrap().is_zero());
                assert!(js.product(&s, &v, &u).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn quotient_crosscheck_low_degree() {
        for tag in [QuotientTag::S, QuotientTag::T] {
            let c = ctx(tag);
            let r = verify_quotient_crosscheck(tag, &c, 2);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn alternators_vanish_in_quotients() {
        let s = ctx(QuotientTag::S);
        let js = MonomialSpanIdeal::new(QuotientTag::S);
        let bc = el(&s, &[("bc", q(1))]);
        let a = s.generator(0);
        let raw = s.associator(&a, &bc, &bc).unwrap();
        assert_eq!(raw, el(&s, &[("d^2", q(2))]));
        assert!(js.reduce(&raw).is_zero());

        let t = ctx(QuotientTag::T);
        let jt = MonomialSpanIdeal::new(QuotientTag::T);
        let ab = el(&t, &[("ab", q(1))]);
        let bd = el(&t, &[("bd", q(1))]);
        let a2 = el(&t, &[("a^2", q(1))]);
        assert!(jt
            .reduce(&t.associator(&ab, &ab, &t.generator(3)).unwrap())
            .is_zero());
        assert!(jt.reduce(&t.associator(&bd, &bd, &a2).unwrap()).is_zero());
    }

    #[test]
    fn alternative_quotient_degree_one() {
        for tag in [QuotientTag::S, QuotientTag::T] {
            let c = ctx(tag);
            let r = verify_alternative_quotient(tag, &c, 1);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn speciality() {
        let r = verify_speciality_s();
        assert!(r.passed(), "{r}");
        let minus = catalog::algebra_a4().commutator_algebra();
        assert_eq!(minus.structure_constant(1, 2, 3), q(2));
        assert_eq!(minus.structure_constant(0, 3, 3), q(1));
        assert!(minus.basis_product(0, 0).is_empty());
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent_and_linear(
            xs in proptest::collection::vec((0u32..3, 0u32..3, 0u32..3, 0u32..3, -5i64..5), 0..8),
            ys in proptest::collection::vec((0u32..3, 0u32..3, 0u32..3, 0u32..3, -5i64..5), 0..8),
            k in -4i64..4,
        ) {
            let build = |v: &[(u32, u32, u32, u32, i64)]| EnvElement::from_terms(
                4,
                v.iter().map(|&(a, b, c, d, k)| (Monomial::from_exponents(&[a, b, c, d]), q(k))),
            );
            let (x, y) = (build(&xs), build(&ys));
            let j = MonomialSpanIdeal::new(QuotientTag::S);
            prop_assert_eq!(j.reduce(&j.reduce(&x)), j.reduce(&x));
            let lin = x.clone() + y.scaled(&q(k));
            prop_assert_eq!(j.reduce(&lin), j.reduce(&x) + j.reduce(&y).scaled(&q(k)));
        }
    }
}

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use crate::algebra::format_terms;
use crate::error::{Error, Result};
use crate::scalar::{is_zero, parse_rational, Rational, Scalar};

/// Finite linear combination of PBW monomials. Zero coefficients are never
/// stored, so equality of values is equality of canonical forms.
///
/// Via the exponent-vector identification this is also a polynomial in the
/// commutative algebra on the same generators; [`EnvElement::mul_commutative`]
/// is that polynomial product.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvElement<F> {
    dim: usize,
    terms: BTreeMap<Monomial, F>,
}

/// Polynomials share the sparse representation of enveloping-algebra elements.
pub type Polynomial<F> = EnvElement<F>;

impl<F: Scalar> EnvElement<F> {
    pub fn zero(dim: usize) -> Self {
        EnvElement {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::monomial(Monomial::one(dim))
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, F::one())
    }

    pub fn generator(dim: usize, i: usize) -> Self {
        Self::monomial(Monomial::generator(dim, i))
    }

    pub fn term(m: Monomial, c: F) -> Self {
        let mut e = Self::zero(m.dim());
        e.add_term(m, c);
        e
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut e = Self::zero(dim);
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
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

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    /// Largest total degree of a stored monomial; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        debug_assert_eq!(m.dim(), self.dim);
        if is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if is_zero(o.get()) {
                    o.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &EnvElement<F>, c: &F) {
        if is_zero(c) {
            return;
        }
        for (m, x) in &other.terms {
            let mut t = x.clone();
            t *= c;
            self.add_term(m.clone(), t);
        }
    }

    pub fn add_assign(&mut self, other: &EnvElement<F>) {
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &EnvElement<F>) {
        for (m, x) in &other.terms {
            self.add_term(m.clone(), -x.clone());
        }
    }

    pub fn scaled(&self, c: &F) -> Self {
        let mut out = Self::zero(self.dim);
        out.add_scaled(self, c);
        out
    }

    /// Keeps only the terms for which `keep` holds.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Self {
        EnvElement {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms of the maximal total degree.
    pub fn top_degree_part(&self) -> Self {
        match self.degree() {
            None => self.clone(),
            Some(d) => self.filter(|m| m.degree() == d),
        }
    }

    /// Product in the commutative polynomial algebra.
    pub fn mul_commutative(&self, other: &EnvElement<F>) -> Self {
        let mut out = Self::zero(self.dim);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut c = c1.clone();
                c *= c2;
                out.add_term(m1.mul_commutative(m2), c);
            }
        }
        out
    }

    /// Pretty form such as `ab²c² - 2abcd + 2d²`, highest degree first.
    pub fn display(&self, labels: &[String]) -> String {
        let mut terms: Vec<(&Monomial, &F)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then_with(|| b.cmp(a)));
        let names: Vec<String> = terms
            .iter()
            .map(|(m, _)| {
                if m.is_one() {
                    String::new()
                } else {
                    m.display(labels)
                }
            })
            .collect();
        format_terms(terms.iter().zip(&names).map(|((_, c), n)| (*c, n.as_str())))
    }
}

impl<F: Scalar> std::ops::Add for EnvElement<F> {
    type Output = EnvElement<F>;
    fn add(mut self, rhs: EnvElement<F>) -> EnvElement<F> {
        self.add_assign(&rhs);
        self
    }
}

impl<F: Scalar> std::ops::Sub for EnvElement<F> {
    type Output = EnvElement<F>;
    fn sub(mut self, rhs: EnvElement<F>) -> EnvElement<F> {
        self.sub_assign(&rhs);
        self
    }
}

impl<F: Scalar> std::ops::Neg for EnvElement<F> {
    type Output = EnvElement<F>;
    fn neg(self) -> EnvElement<F> {
        EnvElement {
            dim: self.dim,
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

/// One serialized term: `{"exponents": [..], "coeff": "p/q"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

impl EnvElement<Rational> {
    /// Terms sorted lexicographically by exponent vector.
    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(m, c)| TermJson {
                exponents: m.exponents().to_vec(),
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn from_json(dim: usize, terms: &[TermJson]) -> Result<Self> {
        let mut e = Self::zero(dim);
        for t in terms {
            if t.exponents.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: t.exponents.len(),
                });
            }
            e.add_term(
                Monomial::from_exponents(&t.exponents),
                parse_rational(&t.coeff)?,
            );
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qq};
    use proptest::prelude::*;

    fn labels() -> Vec<String> {
        ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn zero_coefficients_vanish() {
        let m = Monomial::from_exponents(&[1, 0, 0, 0]);
        let mut e = EnvElement::term(m.clone(), q(2));
        e.add_term(m, q(-2));
        assert!(e.is_zero());
        assert_eq!(e.display(&labels()), "0");
    }

    #[test]
    fn display_orders_by_degree() {
        let l = labels();
        let e = EnvElement::from_terms(
            4,
            [
                (Monomial::parse("d^2", &l).unwrap(), q(2)),
                (Monomial::parse("abcd", &l).unwrap(), q(-2)),
                (Monomial::parse("ab^2c^2", &l).unwrap(), q(1)),
            ],
        );
        assert_eq!(e.display(&l), "ab²c² - 2abcd + 2d²");
        let f = EnvElement::from_terms(
            5,
            [(
                Monomial::parse("ce", &["a", "b", "c", "d", "e"].map(String::from)).unwrap(),
                qq(-1, 6),
            )],
        );
        assert_eq!(
            f.display(&["a", "b", "c", "d", "e"].map(String::from)),
            "-1/6ce"
        );
    }

    fn arb_element() -> impl Strategy<Value = EnvElement<Rational>> {
        proptest::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..6, 1i64..4), 0..6).prop_map(
            |ts| {
                EnvElement::from_terms(
                    3,
                    ts.into_iter()
                        .map(|((a, b, c), n, d)| (Monomial::from_exponents(&[a, b, c]), qq(n, d))),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn json_round_trips(e in arb_element()) {
            let back = EnvElement::from_json(3, &e.to_json()).unwrap();
            prop_assert_eq!(back, e);
        }

        #[test]
        fn json_is_sorted(e in arb_element()) {
            let j = e.to_json();
            prop_assert!(j.windows(2).all(|w| w[0].exponents < w[1].exponents));
        }
    }
}

//! The universal nonassociative enveloping algebra `U(M)` of a Malcev algebra
//! on its PBW basis.
//!
//! Products are computed by straightening. With `x = b y` a basis monomial
//! (`b` its first generator), `a` a generator and `z` any element:
//!
//! ```text
//! [by, a] = [b,a]y + b[y,a] + ½[[y,a],b] − ½[[y,b],a] − ½[y,[a,b]]
//! a(by)   = b(ay) + [a,b]y − ⅓[[y,a],b] + ⅓[[y,b],a] + ⅓[y,[a,b]]     (a > b)
//! (by)z   = 2b(yz) − y(bz) − y[z,b] + [yz, b]
//! ```
//!
//! `a(by)` with `a ≤ b` is already a basis monomial. The first two rules
//! recurse on the degree of `y`; in the second, the leading term of `ay` is
//! the monomial `y·a`, which `b` prefixes without further rewriting. The
//! third recurses on the degree of the left factor.
//!
//! Results of the two generator-level operations are memoized per
//! `(generator, monomial)`; monomial-by-monomial products are recomputed from
//! them.

mod element;
mod monomial;

use std::collections::HashMap;
use std::sync::Arc;

use parking_lot::RwLock;
use rayon::prelude::*;

pub use element::{EnvElement, Polynomial, TermJson};
pub use monomial::{monomials_of_degree, monomials_up_to, Monomial};

use crate::algebra::{verify_variety, FiniteAlgebra, Variety};
use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::scalar::Scalar;

type Cache<F> = RwLock<HashMap<(usize, Monomial), Arc<EnvElement<F>>>>;

/// A Malcev algebra together with memo tables for its enveloping algebra.
pub struct EnvContext<F> {
    algebra: FiniteAlgebra<F>,
    caching: bool,
    half: F,
    third: F,
    bracket_cache: Cache<F>,
    lmul_cache: Cache<F>,
}

impl<F: Scalar> EnvContext<F> {
    /// Checks that `algebra` is anticommutative and Malcev over a field of
    /// characteristic 0 and sets up empty caches.
    pub fn new(algebra: FiniteAlgebra<F>) -> Result<Self> {
        if F::CHARACTERISTIC != 0 {
            return Err(Error::Characteristic(F::CHARACTERISTIC));
        }
        for v in [Variety::Anticommutative, Variety::Malcev] {
            let r = verify_variety(&algebra, v);
            if let Some(f) = r.first_failure() {
                return Err(Error::NotMalcev {
                    name: algebra.name().to_string(),
                    reason: format!(
                        "{} fails at ({}): {}",
                        v.name(),
                        f.inputs.join(", "),
                        f.residual
                    ),
                });
            }
        }
        Ok(Self::new_unchecked(algebra))
    }

    fn new_unchecked(algebra: FiniteAlgebra<F>) -> Self {
        EnvContext {
            algebra,
            caching: true,
            half: F::from_ratio(1, 2),
            third: F::from_ratio(1, 3),
            bracket_cache: RwLock::new(HashMap::new()),
            lmul_cache: RwLock::new(HashMap::new()),
        }
    }

    /// Same algebra, memoization switched off.
    pub fn without_cache(&self) -> Self {
        let mut ctx = Self::new_unchecked(self.algebra.clone());
        ctx.caching = false;
        ctx
    }

    pub fn algebra(&self) -> &FiniteAlgebra<F> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn labels(&self) -> &[String] {
        self.algebra.labels()
    }

    pub fn cache_len(&self) -> usize {
        self.bracket_cache.read().len() + self.lmul_cache.read().len()
    }

    pub fn zero(&self) -> EnvElement<F> {
        EnvElement::zero(self.dim())
    }

    pub fn one(&self) -> EnvElement<F> {
        EnvElement::one(self.dim())
    }

    pub fn generator(&self, i: usize) -> EnvElement<F> {
        EnvElement::generator(self.dim(), i)
    }

    /// Parses a monomial in this algebra's labels, e.g. `a^2bc`.
    pub fn parse_monomial(&self, s: &str) -> Result<Monomial> {
        Monomial::parse(s, self.labels())
    }

    pub fn display(&self, x: &EnvElement<F>) -> String {
        x.display(self.labels())
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.dim() {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: self.dim(),
            });
        }
        Ok(())
    }

    fn check_monomial(&self, m: &Monomial) -> Result<()> {
        if m.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: m.dim(),
            });
        }
        Ok(())
    }

    fn check_element(&self, x: &EnvElement<F>) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::ContextMismatch(
                self.algebra.name().to_string(),
                format!("element of dimension {}", x.dim()),
            ));
        }
        Ok(())
    }

    /// `[x, a]` for a basis monomial `x` and generator `a`.
    pub fn bracket_mono_gen(&self, x: &Monomial, a: usize) -> Result<EnvElement<F>> {
        self.check_index(a)?;
        self.check_monomial(x)?;
        Ok((*self.bracket_mg(x, a)).clone())
    }

    /// `a · x` for a generator `a` and basis monomial `x`, on the PBW basis.
    pub fn left_mul_gen(&self, a: usize, x: &Monomial) -> Result<EnvElement<F>> {
        self.check_index(a)?;
        self.check_monomial(x)?;
        Ok((*self.lmul(a, x)).clone())
    }

    /// Bilinear product in `U(M)`.
    pub fn product(&self, x: &EnvElement<F>, y: &EnvElement<F>) -> Result<EnvElement<F>> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(self.mul(x, y))
    }

    /// Product of two basis monomials.
    pub fn product_monomials(&self, x: &Monomial, y: &Monomial) -> Result<EnvElement<F>> {
        self.check_monomial(x)?;
        self.check_monomial(y)?;
        Ok(self.mono_mul(x, &EnvElement::monomial(y.clone())))
    }

    /// `xy − yx`.
    pub fn commutator(&self, x: &EnvElement<F>, y: &EnvElement<F>) -> Result<EnvElement<F>> {
        Ok(self.product(x, y)? - self.product(y, x)?)
    }

    /// `(xy)z − x(yz)`.
    pub fn associator(
        &self,
        x: &EnvElement<F>,
        y: &EnvElement<F>,
        z: &EnvElement<F>,
    ) -> Result<EnvElement<F>> {
        self.check_element(x)?;
        self.check_element(y)?;
        self.check_element(z)?;
        Ok(self.assoc(x, y, z))
    }

    /// `(x, x, y)`.
    pub fn left_alternator(&self, x: &EnvElement<F>, y: &EnvElement<F>) -> Result<EnvElement<F>> {
        self.associator(x, x, y)
    }

    /// `(y, x, x)`.
    pub fn right_alternator(&self, x: &EnvElement<F>, y: &EnvElement<F>) -> Result<EnvElement<F>> {
        self.associator(y, x, x)
    }

    /// `D_{a,b}(x) = ½ ad_{[a,b]}(x) + ½ [ad_a, ad_b](x)` with `ad_a(x) = [a, x]`.
    pub fn derivation_dab(&self, a: usize, b: usize, x: &EnvElement<F>) -> Result<EnvElement<F>> {
        self.check_index(a)?;
        self.check_index(b)?;
        self.check_element(x)?;
        Ok(self.dab(a, b, x))
    }

    /// `[x, v]` for `v = Σ_k v_k e_k` of degree one, given sparsely.
    fn bracket_with_vector(&self, x: &EnvElement<F>, v: &[(usize, F)]) -> EnvElement<F> {
        let mut out = self.zero();
        for (k, c) in v {
            out.add_scaled(&self.bracket_eg(x, *k), c);
        }
        out
    }

    pub(crate) fn dab(&self, a: usize, b: usize, x: &EnvElement<F>) -> EnvElement<F> {
        // ad_{[a,b]}(x) = [[a,b], x] = −[x, [a,b]]
        let mut out = -self.bracket_with_vector(x, self.algebra.basis_product(a, b));
        // [ad_a, ad_b](x) = [a,[b,x]] − [b,[a,x]] = [[x,b],a] − [[x,a],b]
        out.add_assign(&self.bracket_eg(&self.bracket_eg(x, b), a));
        out.sub_assign(&self.bracket_eg(&self.bracket_eg(x, a), b));
        out.scaled(&self.half)
    }

    pub(crate) fn assoc(
        &self,
        x: &EnvElement<F>,
        y: &EnvElement<F>,
        z: &EnvElement<F>,
    ) -> EnvElement<F> {
        self.mul(&self.mul(x, y), z) - self.mul(x, &self.mul(y, z))
    }

    pub(crate) fn mul(&self, x: &EnvElement<F>, y: &EnvElement<F>) -> EnvElement<F> {
        let mut out = self.zero();
        for (m, c) in x.iter() {
            out.add_scaled(&self.mono_mul(m, y), c);
        }
        out
    }

    /// `[z, a]` for an element `z`.
    pub(crate) fn bracket_eg(&self, z: &EnvElement<F>, a: usize) -> EnvElement<F> {
        let mut out = self.zero();
        for (m, c) in z.iter() {
            out.add_scaled(&self.bracket_mg(m, a), c);
        }
        out
    }

    /// `a · z` for an element `z`.
    pub(crate) fn lmul_eg(&self, a: usize, z: &EnvElement<F>) -> EnvElement<F> {
        let mut out = self.zero();
        for (m, c) in z.iter() {
            out.add_scaled(&self.lmul(a, m), c);
        }
        out
    }

    /// `x · z` for a basis monomial `x`.
    fn mono_mul(&self, x: &Monomial, z: &EnvElement<F>) -> EnvElement<F> {
        let Some((b, y)) = x.split_first() else {
            return z.clone();
        };
        if y.is_one() {
            return self.lmul_eg(b, z);
        }
        // (by)z = 2b(yz) − y(bz + [z,b]) + [yz, b]
        let yz = self.mono_mul(&y, z);
        let mut out = self.lmul_eg(b, &yz).scaled(&F::from_i64(2));
        let mut zb = self.lmul_eg(b, z);
        zb.add_assign(&self.bracket_eg(z, b));
        out.sub_assign(&self.mono_mul(&y, &zb));
        out.add_assign(&self.bracket_eg(&yz, b));
        out
    }

    fn cached(
        &self,
        cache: &Cache<F>,
        key: (usize, &Monomial),
        compute: impl FnOnce() -> EnvElement<F>,
    ) -> Arc<EnvElement<F>> {
        if !self.caching {
            return Arc::new(compute());
        }
        if let Some(v) = cache.read().get(&(key.0, key.1.clone())) {
            return v.clone();
        }
        let v = Arc::new(compute());
        // Concurrent fills compute the same value; keep whichever landed first.
        cache
            .write()
            .entry((key.0, key.1.clone()))
            .or_insert(v)
            .clone()
    }

    fn bracket_mg(&self, x: &Monomial, a: usize) -> Arc<EnvElement<F>> {
        let Some((b, y)) = x.split_first() else {
            return Arc::new(self.zero());
        };
        self.cached(&self.bracket_cache, (a, x), || {
            let mut out = self.zero();
            // [b,a] y
            for (k, c) in self.algebra.basis_product(b, a) {
                out.add_scaled(&self.lmul(*k, &y), c);
            }
            if y.is_one() {
                return out;
            }
            let ya = self.bracket_mg(&y, a);
            // b [y,a]
            out.add_assign(&self.lmul_eg(b, &ya));
            // ½ [[y,a],b] − ½ [[y,b],a] − ½ [y,[a,b]]
            let mut corr = self.bracket_eg(&ya, b);
            corr.sub_assign(&self.bracket_eg(&self.bracket_mg(&y, b), a));
            for (k, c) in self.algebra.basis_product(a, b) {
                corr.add_scaled(&self.bracket_mg(&y, *k), &-c.clone());
            }
            out.add_scaled(&corr, &self.half);
            out
        })
    }

    fn lmul(&self, a: usize, x: &Monomial) -> Arc<EnvElement<F>> {
        let Some((b, y)) = x.split_first() else {
            return Arc::new(self.generator(a));
        };
        if a <= b {
            return Arc::new(EnvElement::monomial(x.times_generator(a)));
        }
        self.cached(&self.lmul_cache, (a, x), || {
            // b (a y)
            let mut out = self.lmul_eg(b, &self.lmul(a, &y));
            // [a,b] y
            for (k, c) in self.algebra.basis_product(a, b) {
                out.add_scaled(&self.lmul(*k, &y), c);
            }
            if y.is_one() {
                return out;
            }
            // −⅓ [[y,a],b] + ⅓ [[y,b],a] + ⅓ [y,[a,b]]
            let mut corr = self.bracket_eg(&self.bracket_mg(&y, b), a);
            corr.sub_assign(&self.bracket_eg(&self.bracket_mg(&y, a), b));
            for (k, c) in self.algebra.basis_product(a, b) {
                corr.add_scaled(&self.bracket_mg(&y, *k), c);
            }
            out.add_scaled(&corr, &self.third);
            out
        })
    }

    /// Checks whether `elem` lies in the nucleus (associates in every
    /// position with all basis monomials of degree `≤ cap`) and in the
    /// center (additionally commutes with them). The two verdicts are
    /// reported as separate sections.
    pub fn nucleus_center_check(
        &self,
        elem: &EnvElement<F>,
        cap: u32,
    ) -> Result<VerificationReport> {
        self.check_element(elem)?;
        if cap < 1 {
            return Err(Error::Unsupported("degree cap must be at least 1".into()));
        }
        let basis = monomials_up_to(self.dim(), cap);
        let label = |m: &Monomial| m.display(self.labels());
        let shown = self.display(elem);

        let rows: Vec<(
            Vec<(Vec<String>, Option<String>)>,
            (Vec<String>, Option<String>),
        )> = basis
            .par_iter()
            .map(|x| {
                let xe = EnvElement::monomial(x.clone());
                let mut nuc = Vec::new();
                for y in &basis {
                    let ye = EnvElement::monomial(y.clone());
                    for (pos, r) in [
                        (0, self.assoc(elem, &xe, &ye)),
                        (1, self.assoc(&xe, elem, &ye)),
                        (2, self.assoc(&xe, &ye, elem)),
                    ] {
                        let mut args = vec![label(x), label(y)];
                        args.insert(pos, shown.clone());
                        nuc.push((args, (!r.is_zero()).then(|| self.display(&r))));
                    }
                }
                let c = self.mul(elem, &xe) - self.mul(&xe, elem);
                (
                    nuc,
                    (
                        vec![shown.clone(), label(x)],
                        (!c.is_zero()).then(|| self.display(&c)),
                    ),
                )
            })
            .collect();

        let mut nucleus = VerificationReport::new(format!(
            "nucleus: ({shown}, x, y) = (x, {shown}, y) = (x, y, {shown}) = 0"
        ));
        let mut center = VerificationReport::new(format!("center: [{shown}, x] = 0"));
        for (nuc, comm) in rows {
            for (args, res) in nuc {
                nucleus.record(|| args, res);
            }
            let (args, res) = comm;
            center.record(|| args, res);
        }
        let mut report = VerificationReport::new(format!(
            "nucleus/center of U({}) for {shown}, degree <= {cap}",
            self.algebra.name()
        ));
        report.push_section(nucleus);
        report.push_section(center);
        Ok(report)
    }
}

#[cfg(test)]
mod tests;

//! Closed-form structure constants of `U(S)` and `U(T)`.
//!
//! Each formula is evaluated term by term over its literal summation
//! bounds. Binomials, multinomials and falling factorials with out-of-range
//! indices are zero (see [`crate::combinat`]); a term is skipped as soon as
//! one of its factors vanishes. A surviving term with a negative exponent
//! means the bounds were transcribed wrongly and is reported as an internal
//! error rather than dropped.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::combinat::{binomial, factorial, falling_factorial, multinomial, pow, sign, stirling2};
use crate::envelope::{monomials_up_to, EnvContext, EnvElement, Monomial};
use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::scalar::Rational;

/// `x^pre (x + shift)^post`, a polynomial in one variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftedPolynomialTerm {
    pub var: usize,
    pub pre: u32,
    pub shift: i64,
    pub post: u32,
}

impl ShiftedPolynomialTerm {
    /// Expands and multiplies by the monomial `rest` (which must not involve
    /// `var`), giving a combination of PBW monomials.
    pub fn expand_times(&self, rest: &Monomial) -> EnvElement<Rational> {
        debug_assert_eq!(rest.exponent(self.var), 0);
        let mut out = EnvElement::zero(rest.dim());
        let post = self.post as i64;
        for r in 0..=post {
            let c = binomial(post, r) * pow(self.shift, post - r);
            out.add_term(
                rest.with_exponent(self.var, self.pre + r as u32),
                Rational::from_integer(c),
            );
        }
        out
    }
}

/// Accumulates `coeff · monomial(exps)`, rejecting negative exponents.
struct Sum {
    out: EnvElement<Rational>,
}

impl Sum {
    fn new(dim: usize) -> Self {
        Sum {
            out: EnvElement::zero(dim),
        }
    }

    fn add(&mut self, coeff: Rational, exps: &[i64], formula: &str) -> Result<()> {
        if coeff.is_zero() {
            return Ok(());
        }
        if let Some(e) = exps.iter().find(|&&e| e < 0) {
            return Err(Error::Internal(format!(
                "{formula}: term with nonzero coefficient {coeff} has exponent {e} in {exps:?}"
            )));
        }
        let exps: Vec<u32> = exps.iter().map(|&e| e as u32).collect();
        self.out.add_term(Monomial::from_exponents(&exps), coeff);
        Ok(())
    }
}

fn exps4(m: &Monomial) -> Result<[i64; 4]> {
    if m.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: m.dim(),
        });
    }
    Ok([0, 1, 2, 3].map(|k| m.exponent(k) as i64))
}

fn exps5(m: &Monomial) -> Result<[i64; 5]> {
    if m.dim() != 5 {
        return Err(Error::DimensionMismatch {
            expected: 5,
            got: m.dim(),
        });
    }
    Ok([0, 1, 2, 3, 4].map(|k| m.exponent(k) as i64))
}

/// Lie subalgebras of `S` whose enveloping algebras are associative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubalgebraKind {
    /// `{a, b}`, `{a, c}` or `{a, d}`.
    Solvable2,
    /// `{b, c, d}`.
    Nilpotent3,
}

/// Products inside the associative subalgebras of `U(S)`:
///
/// ```text
/// (a^i e^j)(a^k e^ℓ) = a^i (a + j)^k e^{j+ℓ}     e ∈ {b, c}
/// (a^i d^j)(a^k d^ℓ) = a^i (a − j)^k d^{j+ℓ}
/// (b^i c^j d^k)(b^ℓ c^m d^n) = Σ_h (−1)^h 2^h C(ℓ,h) j!/(j−h)! b^{i+ℓ−h} c^{j+m−h} d^{k+n+h}
/// ```
pub fn us_subalgebra_product(
    kind: SubalgebraKind,
    m1: &Monomial,
    m2: &Monomial,
) -> Result<EnvElement<Rational>> {
    let x = exps4(m1)?;
    let y = exps4(m2)?;
    match kind {
        SubalgebraKind::Solvable2 => {
            let others: Vec<usize> = (1..4).filter(|&k| x[k] > 0 || y[k] > 0).collect();
            let e = match others[..] {
                [] => 1,
                [e] => e,
                _ => {
                    return Err(Error::Unsupported(format!(
                        "{m1:?}, {m2:?} not supported on {{a, e}}"
                    )))
                }
            };
            let (i, j, k, l) = (x[0], x[e], y[0], y[e]);
            let shift = if e == 3 { -j } else { j };
            let rest = Monomial::one(4).with_exponent(e, (j + l) as u32);
            Ok(ShiftedPolynomialTerm {
                var: 0,
                pre: i as u32,
                shift,
                post: k as u32,
            }
            .expand_times(&rest))
        }
        SubalgebraKind::Nilpotent3 => {
            if x[0] > 0 || y[0] > 0 {
                return Err(Error::Unsupported(format!(
                    "{m1:?}, {m2:?} not supported on {{b, c, d}}"
                )));
            }
            let ([_, i, j, k], [_, l, m, n]) = (x, y);
            let mut sum = Sum::new(4);
            for h in 0..=l {
                let c =
                    BigInt::from(sign(h)) * pow(2, h) * binomial(l, h) * falling_factorial(j, h);
                sum.add(
                    Rational::from_integer(c),
                    &[0, i + l - h, j + m - h, k + n + h],
                    "bcd product",
                )?;
            }
            Ok(sum.out)
        }
    }
}

/// `[b^n c^p d^q, a] = (n + p − q) b^n c^p d^q − 3np b^{n−1} c^{p−1} d^{q+1}`.
pub fn bcd_bracket_closed(n: u32, p: u32, q: u32) -> EnvElement<Rational> {
    let mut out = EnvElement::zero(4);
    let (n, p, q) = (n as i64, p as i64, q as i64);
    out.add_term(
        Monomial::from_exponents(&[0, n as u32, p as u32, q as u32]),
        Rational::from_integer(BigInt::from(n + p - q)),
    );
    if n > 0 && p > 0 {
        out.add_term(
            Monomial::from_exponents(&[0, (n - 1) as u32, (p - 1) as u32, (q + 1) as u32]),
            Rational::from_integer(BigInt::from(-3 * n * p)),
        );
    }
    out
}

/// `(a^i b^j c^k d^ℓ)(a^m b^n c^p d^q)` in `U(S)`:
///
/// ```text
/// Σ (−1)^{i+j+k+α−β−γ−ε−η−θ−λ} (α−β)^ζ α! C(α,β) (δ+ε)! ω^ν C(i; γ,ζ) {i−γ−ζ, δ+ε}
///   C(j; α,ε,η,θ) C(k; α,δ,λ,μ) C(m,ν) [n, k−α−λ] [p+λ, j−α−η]
///   a^{m+γ−ν} b^{−k+n+α+η+λ} c^{−j+p+α+η+λ} d^{j+k+ℓ+q−α−η−λ}
/// ```
///
/// with `ω = j+k−ℓ−2α−β−2δ−2ε−2θ−2μ`, over `α ≤ min(j,k)`, `β ≤ α`,
/// `γ ≤ i`, `δ ≤ i−γ`, `ε ≤ i−γ−δ`, `ζ ≤ i−γ−δ−ε`, `η ≤ j−α−ε`,
/// `θ ≤ j−α−ε−η`, `λ ≤ k−α−δ`, `μ ≤ k−α−δ−λ`, `ν ≤ m`, and `0⁰ = 1`.
pub fn us_product(m1: &Monomial, m2: &Monomial) -> Result<EnvElement<Rational>> {
    let [i, j, k, l] = exps4(m1)?;
    let [m, n, p, q] = exps4(m2)?;
    let mut sum = Sum::new(4);
    for alpha in 0..=j.min(k) {
        for beta in 0..=alpha {
            let t = alpha - beta;
            let c_ab = factorial(alpha) * binomial(alpha, beta);
            for gamma in 0..=i {
                for delta in 0..=(i - gamma) {
                    for eps in 0..=(i - gamma - delta) {
                        let c_de = &c_ab * factorial(delta + eps);
                        for zeta in 0..=(i - gamma - delta - eps) {
                            let c_z = &c_de
                                * pow(t, zeta)
                                * multinomial(i, &[gamma, zeta])
                                * stirling2(i - gamma - zeta, delta + eps);
                            if c_z.is_zero() {
                                continue;
                            }
                            for eta in 0..=(j - alpha - eps) {
                                let ff_p_base = falling_factorial(p, 0);
                                debug_assert!(ff_p_base.is_one());
                                for theta in 0..=(j - alpha - eps - eta) {
                                    let c_j = &c_z * multinomial(j, &[alpha, eps, eta, theta]);
                                    if c_j.is_zero() {
                                        continue;
                                    }
                                    for lam in 0..=(k - alpha - delta) {
                                        let ff = falling_factorial(n, k - alpha - lam)
                                            * falling_factorial(p + lam, j - alpha - eta);
                                        if ff.is_zero() {
                                            continue;
                                        }
                                        for mu in 0..=(k - alpha - delta - lam) {
                                            let c_k = &c_j
                                                * &ff
                                                * multinomial(k, &[alpha, delta, lam, mu]);
                                            if c_k.is_zero() {
                                                continue;
                                            }
                                            let omega = j + k
                                                - l
                                                - 2 * alpha
                                                - beta
                                                - 2 * delta
                                                - 2 * eps
                                                - 2 * theta
                                                - 2 * mu;
                                            let s = sign(
                                                i + j + k + alpha
                                                    - beta
                                                    - gamma
                                                    - eps
                                                    - eta
                                                    - theta
                                                    - lam,
                                            );
                                            for nu in 0..=m {
                                                let c = &c_k * pow(omega, nu) * binomial(m, nu) * s;
                                                sum.add(
                                                    Rational::from_integer(c),
                                                    &[
                                                        m + gamma - nu,
                                                        -k + n + alpha + eta + lam,
                                                        -j + p + alpha + eta + lam,
                                                        j + k + l + q - alpha - eta - lam,
                                                    ],
                                                    "U(S) product",
                                                )?;
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(sum.out)
}

/// `(a^i b^j c^k d^ℓ e^m)(a^p b^q c^r d^s e^t)` in `U(T)`:
///
/// ```text
/// Σ (−1)^{β+ζ+ℓ−α−γ−η} α! β! λ! / (2^{α+γ} 3^{j−ε−ζ+ℓ−α−η−θ})
///   C(α, β−γ) C(i, β) C(j; α,δ,ε,ζ) C(j−α−ε−ζ, λ) C(ℓ; α,γ−δ,η,θ) C(η, λ)
///   [p, j−β−ε+ℓ−α−η−θ] [q, ℓ−α−η−θ] [r, θ] [s, j−α−ε−ζ−λ]
///   a^{i+p−j+ε−ℓ+α+η+θ} b^{ε+q−ℓ+α+η+θ} c^{ζ+k+r−θ} d^{η+s+α+ε+ζ−j} e^{j−α−ε−ζ+ℓ−η+m+t}
/// ```
///
/// over `α ≤ ℓ`, `β ≤ i`, `γ ≤ β`, `δ ≤ γ`, `ε ≤ j−α−δ`, `ζ ≤ j−α−δ−ε`,
/// `η ≤ ℓ−α−(γ−δ)`, `θ ≤ ℓ−α−(γ−δ)−η`, `λ ≤ η`.
pub fn ut_product(m1: &Monomial, m2: &Monomial) -> Result<EnvElement<Rational>> {
    let [i, j, k, l, m] = exps5(m1)?;
    let [p, q, r, s, t] = exps5(m2)?;
    let mut sum = Sum::new(5);
    for alpha in 0..=l {
        for beta in 0..=i {
            for gamma in 0..=beta {
                let c_abg = factorial(alpha)
                    * factorial(beta)
                    * binomial(alpha, beta - gamma)
                    * binomial(i, beta);
                if c_abg.is_zero() {
                    continue;
                }
                for delta in 0..=gamma {
                    for eps in 0..=(j - alpha - delta) {
                        for zeta in 0..=(j - alpha - delta - eps) {
                            let c_j = &c_abg * multinomial(j, &[alpha, delta, eps, zeta]);
                            if c_j.is_zero() {
                                continue;
                            }
                            for eta in 0..=(l - alpha - (gamma - delta)) {
                                for theta in 0..=(l - alpha - (gamma - delta) - eta) {
                                    let c_l = &c_j
                                        * multinomial(l, &[alpha, gamma - delta, eta, theta])
                                        * falling_factorial(
                                            p,
                                            j - beta - eps + l - alpha - eta - theta,
                                        )
                                        * falling_factorial(q, l - alpha - eta - theta)
                                        * falling_factorial(r, theta);
                                    if c_l.is_zero() {
                                        continue;
                                    }
                                    for lam in 0..=eta {
                                        let c = &c_l
                                            * factorial(lam)
                                            * binomial(j - alpha - eps - zeta, lam)
                                            * binomial(eta, lam)
                                            * falling_factorial(s, j - alpha - eps - zeta - lam)
                                            * sign(beta + zeta + l - alpha - gamma - eta);
                                        if c.is_zero() {
                                            continue;
                                        }
                                        let den = pow(2, alpha + gamma)
                                            * pow(3, j - eps - zeta + l - alpha - eta - theta);
                                        sum.add(
                                            Rational::new(c, den),
                                            &[
                                                i + p - j + eps - l + alpha + eta + theta,
                                                eps + q - l + alpha + eta + theta,
                                                zeta + k + r - theta,
                                                eta + s + alpha + eps + zeta - j,
                                                j - alpha - eps - zeta + l - eta + m + t,
                                            ],
                                            "U(T) product",
                                        )?;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(sum.out)
}

/// Extends a monomial product bilinearly.
pub fn bilinear(
    x: &EnvElement<Rational>,
    y: &EnvElement<Rational>,
    product: impl Fn(&Monomial, &Monomial) -> Result<EnvElement<Rational>>,
) -> Result<EnvElement<Rational>> {
    let mut out = EnvElement::zero(x.dim());
    for (m1, c1) in x.iter() {
        for (m2, c2) in y.iter() {
            out.add_scaled(&product(m1, m2)?, &(c1 * c2));
        }
    }
    Ok(out)
}

/// The first monomial (in PBW order) where two elements differ, with both
/// coefficients.
pub fn first_difference(
    x: &EnvElement<Rational>,
    y: &EnvElement<Rational>,
) -> Option<(Monomial, Rational, Rational)> {
    let diff = x.clone() - y.clone();
    let (m, _) = diff.iter().next()?;
    Some((m.clone(), x.coeff(m), y.coeff(m)))
}

/// Which closed-form product to compare against the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    S,
    T,
}

impl ClosedForm {
    /// The closed form available for a catalog algebra name, if any.
    pub fn for_algebra(name: &str) -> Option<Self> {
        match name {
            "S" => Some(ClosedForm::S),
            "T" => Some(ClosedForm::T),
            _ => None,
        }
    }

    pub fn product(self, m1: &Monomial, m2: &Monomial) -> Result<EnvElement<Rational>> {
        match self {
            ClosedForm::S => us_product(m1, m2),
            ClosedForm::T => ut_product(m1, m2),
        }
    }

    pub fn algebra(self) -> crate::algebra::FiniteAlgebra<Rational> {
        match self {
            ClosedForm::S => crate::catalog::algebra_s(),
            ClosedForm::T => crate::catalog::algebra_t(),
        }
    }
}

/// Compares the closed form with the generic engine on all pairs of
/// monomials of degree `≤ cap`. Failures name the first differing
/// monomial and both coefficients.
pub fn crosscheck(form: ClosedForm, ctx: &EnvContext<Rational>, cap: u32) -> VerificationReport {
    let basis = monomials_up_to(ctx.dim(), cap);
    let labels = ctx.labels();
    let rows: Vec<(Vec<String>, Option<String>)> = basis
        .par_iter()
        .flat_map_iter(|x| {
            basis.iter().map(move |y| {
                let inputs = vec![x.display(labels), y.display(labels)];
                let engine = ctx
                    .product_monomials(x, y)
                    .expect("monomials of this algebra");
                let residual = match form.product(x, y) {
                    Err(e) => Some(format!("closed form failed: {e}")),
                    Ok(closed) => first_difference(&closed, &engine).map(|(m, a, b)| {
                        format!("at {}: closed form {a}, engine {b}", m.display(labels))
                    }),
                };
                (inputs, residual)
            })
        })
        .collect();
    let mut report = VerificationReport::new(format!(
        "closed form vs engine in U({}), {} pairs of degree <= {cap}",
        ctx.algebra().name(),
        rows.len()
    ));
    for (inputs, residual) in rows {
        report.record(|| inputs, residual);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::{q, qq};

    fn s_ctx() -> EnvContext<Rational> {
        EnvContext::new(catalog::algebra_s()).unwrap()
    }

    fn t_ctx() -> EnvContext<Rational> {
        EnvContext::new(catalog::algebra_t()).unwrap()
    }

    fn el(ctx: &EnvContext<Rational>, terms: &[(&str, Rational)]) -> EnvElement<Rational> {
        EnvElement::from_terms(
            ctx.dim(),
            terms
                .iter()
                .map(|(m, c)| (ctx.parse_monomial(m).unwrap(), c.clone())),
        )
    }

    #[test]
    fn subalgebra_examples() {
        let s = s_ctx();
        let m = |x: &str| s.parse_monomial(x).unwrap();
        assert_eq!(
            us_subalgebra_product(SubalgebraKind::Solvable2, &m("ab"), &m("ab")).unwrap(),
            el(&s, &[("a^2b^2", q(1)), ("ab^2", q(1))])
        );
        assert_eq!(
            us_subalgebra_product(SubalgebraKind::Solvable2, &m("ad"), &m("ad")).unwrap(),
            el(&s, &[("a^2d^2", q(1)), ("ad^2", q(-1))])
        );
        assert_eq!(
            us_subalgebra_product(SubalgebraKind::Nilpotent3, &m("bcd"), &m("b")).unwrap(),
            el(&s, &[("b^2cd", q(1)), ("bd^2", q(-2))])
        );
        assert!(us_subalgebra_product(SubalgebraKind::Solvable2, &m("ab"), &m("c")).is_err());
        assert!(us_subalgebra_product(SubalgebraKind::Nilpotent3, &m("a"), &m("c")).is_err());
    }

    #[test]
    fn subalgebra_products_match_closed_form_and_engine() {
        let s = s_ctx();
        let all = monomials_up_to(4, 4);
        for (kind, support) in [
            (SubalgebraKind::Solvable2, [0usize, 1].as_slice()),
            (SubalgebraKind::Solvable2, &[0, 2]),
            (SubalgebraKind::Solvable2, &[0, 3]),
            (SubalgebraKind::Nilpotent3, &[1, 2, 3]),
        ] {
            let on: Vec<&Monomial> = all
                .iter()
                .filter(|m| (0..4).all(|k| support.contains(&k) || m.exponent(k) == 0))
                .collect();
            for x in &on {
                for y in &on {
                    let sub = us_subalgebra_product(kind, x, y).unwrap();
                    assert_eq!(sub, us_product(x, y).unwrap(), "{x:?} {y:?}");
                    if x.degree() + y.degree() <= 5 {
                        assert_eq!(sub, s.product_monomials(x, y).unwrap(), "{x:?} {y:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn lie_subalgebra_supports_associate() {
        let s = s_ctx();
        let all = monomials_up_to(4, 3);
        for support in [[0usize, 1].as_slice(), &[0, 2], &[0, 3], &[1, 2, 3]] {
            let on: Vec<EnvElement<Rational>> = all
                .iter()
                .filter(|m| (0..4).all(|k| support.contains(&k) || m.exponent(k) == 0))
                .map(|m| EnvElement::monomial(m.clone()))
                .collect();
            for x in &on {
                for y in &on {
                    for z in &on {
                        assert!(s.associator(x, y, z).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn bcd_bracket() {
        let s = s_ctx();
        assert_eq!(
            bcd_bracket_closed(1, 1, 1),
            el(&s, &[("bcd", q(1)), ("d^2", q(-3))])
        );
        assert_eq!(bcd_bracket_closed(0, 2, 1), el(&s, &[("c^2d", q(1))]));
        assert!(bcd_bracket_closed(0, 0, 0).is_zero());
        for mono in monomials_up_to(4, 5)
            .into_iter()
            .filter(|m| m.exponent(0) == 0)
        {
            let (n, p, qe) = (mono.exponent(1), mono.exponent(2), mono.exponent(3));
            assert_eq!(
                bcd_bracket_closed(n, p, qe),
                s.bracket_mono_gen(&mono, 0).unwrap()
            );
        }
    }

    #[test]
    fn us_examples() {
        let s = s_ctx();
        let m = |x: &str| s.parse_monomial(x).unwrap();
        let p = us_product(&m("abc"), &m("bc")).unwrap();
        assert_eq!(
            p,
            el(&s, &[("ab^2c^2", q(1)), ("abcd", q(-2)), ("d^2", q(2))])
        );
        assert_eq!(
            us_product(&m("a^2cd"), &m("1")).unwrap(),
            el(&s, &[("a^2cd", q(1))])
        );
        assert_eq!(
            us_product(&m("c"), &m("b")).unwrap(),
            el(&s, &[("bc", q(1)), ("d", q(-2))])
        );
        assert!(us_product(&Monomial::one(5), &m("b")).is_err());
    }

    #[test]
    fn ut_examples() {
        let t = t_ctx();
        let m = |x: &str| t.parse_monomial(x).unwrap();
        assert_eq!(
            ut_product(&m("b"), &m("a")).unwrap(),
            el(&t, &[("ab", q(1)), ("c", q(-1))])
        );
        assert_eq!(
            ut_product(&m("bde"), &m("1")).unwrap(),
            el(&t, &[("bde", q(1))])
        );
        let ab = EnvElement::monomial(m("ab"));
        let d = EnvElement::monomial(m("d"));
        let prod = |x: &EnvElement<Rational>, y: &EnvElement<Rational>| {
            bilinear(x, y, ut_product).unwrap()
        };
        let assoc = prod(&prod(&ab, &ab), &d) - prod(&ab, &prod(&ab, &d));
        assert_eq!(assoc, el(&t, &[("ce", qq(-1, 6))]));
    }

    #[test]
    fn first_difference_reports_coefficients() {
        let s = s_ctx();
        let x = el(&s, &[("ab", q(1)), ("d", q(2))]);
        let y = el(&s, &[("ab", q(1)), ("d", q(3))]);
        let (m, a, b) = first_difference(&x, &y).unwrap();
        assert_eq!((m.display(s.labels()), a, b), ("d".to_string(), q(2), q(3)));
        assert!(first_difference(&x, &x).is_none());
    }

    #[test]
    fn crosscheck_small() {
        let s = s_ctx();
        let r = crosscheck(ClosedForm::S, &s, 2);
        assert!(r.passed(), "{r}");
        assert_eq!(r.checked, 15 * 15);
        let t = t_ctx();
        let r = crosscheck(ClosedForm::T, &t, 2);
        assert!(r.passed(), "{r}");
        assert_eq!(r.checked, 21 * 21);
    }
}

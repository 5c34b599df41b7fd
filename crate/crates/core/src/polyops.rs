//! Differential operators on the polynomial algebra `P(S)` and the
//! realization of right bracketing and left multiplication in `U(S)` as such
//! operators.
//!
//! `P(S)` is identified with `U(S)` through the PBW exponent vectors, so a
//! polynomial is an [`EnvElement`] read commutatively. Operators are sums of
//! words in the primitives `I`, `M_x` (multiply by `x`), `D_x`
//! (differentiate), `S^k` (substitute `a ↦ a + k`) and the named operators
//! `λ(x)`, `ρ(x)` from the table below. A word `[P, Q, R]` acts as
//! `P(Q(R(f)))`.
//!
//! | x | ρ(x)                                 | λ(x)                    |
//! |---|--------------------------------------|-------------------------|
//! | a | M_b D_b + M_c D_c − M_d D_d − 3M_d D_b D_c | M_a               |
//! | b | (I − S)M_b + (S − I − 2S⁻¹)M_d D_c    | S M_b + (S⁻¹ − S)M_d D_c |
//! | c | (I − S)M_c + (S − I + 2S⁻¹)M_d D_b    | S M_c − (S⁻¹ + S)M_d D_b |
//! | d | (I − S⁻¹)M_d                          | S⁻¹ M_d                 |

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::combinat::{binomial, factorial, multinomial, pow, sign};
use crate::envelope::{monomials_up_to, EnvContext, Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::scalar::{q, Rational};

pub use crate::combinat::{falling_factorial, stirling2};

/// Variables of `P(S)`.
pub const A: usize = 0;
pub const B: usize = 1;
pub const C: usize = 2;
pub const D: usize = 3;
const DIM: usize = 4;
const NAMES: [&str; 4] = ["a", "b", "c", "d"];

/// A primitive or named operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Prim {
    Id,
    /// Multiplication by a variable.
    Mul(usize),
    /// Partial derivative in a variable.
    Diff(usize),
    /// `S^k`: substitute `a + k` for `a`.
    Shift(i64),
    /// Left multiplication by a generator of `S` (table operator).
    Lambda(usize),
    /// Right bracket with a generator of `S` (table operator).
    Rho(usize),
}

/// Formal sum of scaled operator words.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffOp {
    terms: Vec<(Rational, Vec<Prim>)>,
}

impl DiffOp {
    pub fn zero() -> Self {
        DiffOp { terms: Vec::new() }
    }

    pub fn identity() -> Self {
        Self::word(vec![])
    }

    pub fn prim(p: Prim) -> Self {
        Self::word(vec![p])
    }

    pub fn word(w: Vec<Prim>) -> Self {
        Self::term(q(1), w)
    }

    pub fn term(c: Rational, w: Vec<Prim>) -> Self {
        let mut op = Self::zero();
        op.push(c, w);
        op
    }

    pub fn m(x: usize) -> Self {
        Self::prim(Prim::Mul(x))
    }

    pub fn d(x: usize) -> Self {
        Self::prim(Prim::Diff(x))
    }

    pub fn s(k: i64) -> Self {
        Self::prim(Prim::Shift(k))
    }

    pub fn lambda(x: usize) -> Self {
        Self::prim(Prim::Lambda(x))
    }

    pub fn rho(x: usize) -> Self {
        Self::prim(Prim::Rho(x))
    }

    pub fn terms(&self) -> &[(Rational, Vec<Prim>)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn push(&mut self, c: Rational, w: Vec<Prim>) {
        if c.is_zero() {
            return;
        }
        let w: Vec<Prim> = w
            .into_iter()
            .filter(|p| *p != Prim::Id && *p != Prim::Shift(0))
            .collect();
        match self.terms.iter_mut().find(|(_, v)| *v == w) {
            Some((d, _)) => *d += c,
            None => self.terms.push((c, w)),
        }
        self.terms.retain(|(c, _)| !c.is_zero());
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (d, w) in &self.terms {
            out.push(d * c, w.clone());
        }
        out
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &DiffOp) -> Self {
        let mut out = Self::zero();
        for (c1, w1) in &self.terms {
            for (c2, w2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.push(c1 * c2, w);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(), |acc, _| acc.compose(self))
    }

    /// `[self, other] = self ∘ other − other ∘ self`.
    pub fn bracket(&self, other: &DiffOp) -> Self {
        self.compose(other) + other.compose(self).scaled(&q(-1))
    }

    /// Replaces every `λ(x)` and `ρ(x)` by its table operator.
    pub fn expand(&self) -> Self {
        let mut out = Self::zero();
        for (c, w) in &self.terms {
            let mut acc = Self::term(c.clone(), vec![]);
            for p in w {
                let piece = match *p {
                    Prim::Lambda(x) => table_operators_s(x, OpKind::Lambda)
                        .expect("λ and ρ are indexed by generators of S"),
                    Prim::Rho(x) => table_operators_s(x, OpKind::Rho)
                        .expect("λ and ρ are indexed by generators of S"),
                    other => Self::prim(other),
                };
                acc = acc.compose(&piece);
            }
            out = out + acc;
        }
        out
    }

    /// Applies the operator to a polynomial in `a, b, c, d`.
    pub fn apply(&self, f: &Polynomial<Rational>) -> Result<Polynomial<Rational>> {
        if f.dim() != DIM {
            return Err(Error::DimensionMismatch {
                expected: DIM,
                got: f.dim(),
            });
        }
        for (_, w) in &self.terms {
            for p in w {
                if let Prim::Mul(x) | Prim::Diff(x) | Prim::Lambda(x) | Prim::Rho(x) = *p {
                    if x >= DIM {
                        return Err(Error::IndexOutOfRange { index: x, dim: DIM });
                    }
                }
            }
        }
        let mut out = Polynomial::zero(DIM);
        for (c, w) in &self.terms {
            let mut g = f.clone();
            for p in w.iter().rev() {
                if g.is_zero() {
                    break;
                }
                g = apply_prim(*p, &g);
            }
            out.add_scaled(&g, c);
        }
        Ok(out)
    }

    /// Table notation, e.g. `M_b D_b + M_c D_c - M_d D_d - 3M_d D_b D_c`.
    pub fn display(&self) -> String {
        let names: Vec<String> = self.terms.iter().map(|(_, w)| word_name(w)).collect();
        crate::algebra::format_terms(
            self.terms
                .iter()
                .zip(&names)
                .map(|((c, _), n)| (c, n.as_str())),
        )
    }
}

impl std::ops::Add for DiffOp {
    type Output = DiffOp;
    fn add(mut self, rhs: DiffOp) -> DiffOp {
        for (c, w) in rhs.terms {
            self.push(c, w);
        }
        self
    }
}

impl std::ops::Sub for DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: DiffOp) -> DiffOp {
        self + rhs.scaled(&q(-1))
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

fn word_name(w: &[Prim]) -> String {
    if w.is_empty() {
        return "I".into();
    }
    w.iter()
        .map(|p| match *p {
            Prim::Id => "I".to_string(),
            Prim::Mul(x) => format!("M_{}", NAMES[x]),
            Prim::Diff(x) => format!("D_{}", NAMES[x]),
            Prim::Shift(1) => "S".to_string(),
            Prim::Shift(-1) => "S⁻¹".to_string(),
            Prim::Shift(k) => format!("S^{k}"),
            Prim::Lambda(x) => format!("λ({})", NAMES[x]),
            Prim::Rho(x) => format!("ρ({})", NAMES[x]),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn apply_prim(p: Prim, f: &Polynomial<Rational>) -> Polynomial<Rational> {
    let mut out = Polynomial::zero(DIM);
    match p {
        Prim::Id | Prim::Shift(0) => return f.clone(),
        Prim::Mul(x) => {
            for (m, c) in f.iter() {
                out.add_term(m.times_generator(x), c.clone());
            }
        }
        Prim::Diff(x) => {
            for (m, c) in f.iter() {
                let e = m.exponent(x);
                if e > 0 {
                    out.add_term(m.with_exponent(x, e - 1), c * q(e as i64));
                }
            }
        }
        Prim::Shift(k) => {
            // (a + k)^i = Σ_r C(i, r) k^{i−r} a^r
            for (m, c) in f.iter() {
                let i = m.exponent(A) as i64;
                for r in 0..=i {
                    let coeff = Rational::from_integer(binomial(i, r) * pow(k, i - r));
                    out.add_term(m.with_exponent(A, r as u32), c * coeff);
                }
            }
        }
        Prim::Lambda(x) => {
            return table_operators_s(x, OpKind::Lambda)
                .expect("checked")
                .apply(f)
                .expect("dimension checked")
        }
        Prim::Rho(x) => {
            return table_operators_s(x, OpKind::Rho)
                .expect("checked")
                .apply(f)
                .expect("dimension checked")
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpKind {
    Rho,
    Lambda,
}

/// The table operator `ρ(x)` or `λ(x)` for a generator `x` of `S`.
pub fn table_operators_s(x: usize, kind: OpKind) -> Result<DiffOp> {
    use DiffOp as O;
    let id = O::identity;
    let s = || O::s(1);
    let sinv = || O::s(-1);
    let two = q(2);
    let op = match (kind, x) {
        (OpKind::Rho, A) => {
            O::m(B).compose(&O::d(B)) + O::m(C).compose(&O::d(C))
                - O::m(D).compose(&O::d(D))
                - O::m(D).compose(&O::d(B)).compose(&O::d(C)).scaled(&q(3))
        }
        (OpKind::Rho, B) => {
            (id() - s()).compose(&O::m(B))
                + (s() - id() - sinv().scaled(&two))
                    .compose(&O::m(D))
                    .compose(&O::d(C))
        }
        (OpKind::Rho, C) => {
            (id() - s()).compose(&O::m(C))
                + (s() - id() + sinv().scaled(&two))
                    .compose(&O::m(D))
                    .compose(&O::d(B))
        }
        (OpKind::Rho, D) => (id() - sinv()).compose(&O::m(D)),
        (OpKind::Lambda, A) => O::m(A),
        (OpKind::Lambda, B) => {
            s().compose(&O::m(B)) + (sinv() - s()).compose(&O::m(D)).compose(&O::d(C))
        }
        (OpKind::Lambda, C) => {
            s().compose(&O::m(C)) - (sinv() + s()).compose(&O::m(D)).compose(&O::d(B))
        }
        (OpKind::Lambda, D) => sinv().compose(&O::m(D)),
        (_, x) => return Err(Error::IndexOutOfRange { index: x, dim: DIM }),
    };
    Ok(op)
}

/// How [`x_coefficient`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XMode {
    Recurrence,
    Closed,
}

/// The coefficient `X_i(γ, δ, ε)` of the general λ-formula, a polynomial in
/// `t = α − β`. Zero unless `0 ≤ γ ≤ i`, `0 ≤ δ ≤ i − γ`, `0 ≤ ε ≤ i − γ − δ`.
///
/// Recurrence: `X_0(0,0,0) = 1` and
/// `X_{i+1}(γ,δ,ε) = (t+δ+ε) X_i(γ,δ,ε) + X_i(γ−1,δ,ε) + X_i(γ,δ−1,ε) + X_i(γ,δ,ε−1)`.
///
/// Closed form: `C(δ+ε, ε) Σ_ζ C(i; γ, ζ) {i−γ−ζ, δ+ε} t^ζ` over
/// `0 ≤ ζ ≤ i−γ−δ−ε`, with `0⁰ = 1`.
pub fn x_coefficient(i: i64, gamma: i64, delta: i64, eps: i64, t: i64, mode: XMode) -> BigInt {
    if i < 0 || gamma < 0 || delta < 0 || eps < 0 || gamma + delta + eps > i {
        return BigInt::zero();
    }
    match mode {
        XMode::Recurrence => x_recurrence(i, gamma, delta, eps, t),
        XMode::Closed => {
            let mut sum = BigInt::zero();
            for zeta in 0..=(i - gamma - delta - eps) {
                sum += multinomial(i, &[gamma, zeta])
                    * stirling2(i - gamma - zeta, delta + eps)
                    * pow(t, zeta);
            }
            binomial(delta + eps, eps) * sum
        }
    }
}

fn x_recurrence(i: i64, g: i64, d: i64, e: i64, t: i64) -> BigInt {
    // Table over (γ, δ, ε) filled level by level.
    let n = (i + 1) as usize;
    let idx = |g: i64, d: i64, e: i64| (g as usize * n + d as usize) * n + e as usize;
    let mut cur = vec![BigInt::zero(); n * n * n];
    cur[idx(0, 0, 0)] = BigInt::one();
    for level in 0..i {
        let mut next = vec![BigInt::zero(); n * n * n];
        let get = |v: &Vec<BigInt>, g: i64, d: i64, e: i64| {
            if g < 0 || d < 0 || e < 0 || g + d + e > level {
                BigInt::zero()
            } else {
                v[idx(g, d, e)].clone()
            }
        };
        for gg in 0..=level + 1 {
            for dd in 0..=level + 1 - gg {
                for ee in 0..=level + 1 - gg - dd {
                    next[idx(gg, dd, ee)] = BigInt::from(t + dd + ee) * get(&cur, gg, dd, ee)
                        + get(&cur, gg - 1, dd, ee)
                        + get(&cur, gg, dd - 1, ee)
                        + get(&cur, gg, dd, ee - 1);
                }
            }
        }
        cur = next;
    }
    cur[idx(g, d, e)].clone()
}

fn rat(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

fn repeat(p: Prim, n: i64) -> impl Iterator<Item = Prim> {
    std::iter::repeat_n(p, n.max(0) as usize)
}

/// `λ(c^k d^ℓ) = λ(c)^k λ(d)^ℓ`.
pub fn lambda_cd(k: i64, l: i64) -> DiffOp {
    DiffOp::word(
        repeat(Prim::Lambda(C), k)
            .chain(repeat(Prim::Lambda(D), l))
            .collect(),
    )
}

/// `λ(b^j c^k d^ℓ) = Σ_{α ≤ min(j,k)} Σ_{β ≤ α} (−1)^{α−β} α! C(α,β) C(j,α) C(k,α)
/// S^{−β} λ(b)^{j−α} λ(c)^{k−α} M_d^α λ(d)^ℓ`.
pub fn lambda_bcd(j: i64, k: i64, l: i64) -> DiffOp {
    let mut op = DiffOp::zero();
    for alpha in 0..=j.min(k) {
        for beta in 0..=alpha {
            let coeff = BigInt::from(sign(alpha - beta))
                * factorial(alpha)
                * binomial(alpha, beta)
                * binomial(j, alpha)
                * binomial(k, alpha);
            let word = std::iter::once(Prim::Shift(-beta))
                .chain(repeat(Prim::Lambda(B), j - alpha))
                .chain(repeat(Prim::Lambda(C), k - alpha))
                .chain(repeat(Prim::Mul(D), alpha))
                .chain(repeat(Prim::Lambda(D), l))
                .collect();
            op.push(rat(coeff), word);
        }
    }
    op
}

/// The general formula for `λ(a^i b^j c^k d^ℓ)`:
///
/// ```text
/// Σ (−1)^{i+α−β−γ−δ} α! δ! ε! C(α,β) C(j; α,ε) C(k; α,δ) X_i(γ,δ,ε)
///   λ(a)^γ S^{−β−δ−ε} λ(b)^{j−α−ε} D_b^δ D_c^ε λ(c)^{k−α−δ} M_d^{α+δ+ε} λ(d)^ℓ
/// ```
///
/// over `α ≤ min(j,k)`, `β ≤ α`, `γ ≤ i`, `δ ≤ i−γ`, `ε ≤ i−γ−δ`, with
/// `X_i` evaluated at `t = α − β`.
pub fn lambda_general(i: i64, j: i64, k: i64, l: i64, mode: XMode) -> DiffOp {
    let mut op = DiffOp::zero();
    for alpha in 0..=j.min(k) {
        for beta in 0..=alpha {
            for gamma in 0..=i {
                for delta in 0..=(i - gamma) {
                    for eps in 0..=(i - gamma - delta) {
                        let x = x_coefficient(i, gamma, delta, eps, alpha - beta, mode);
                        let coeff = BigInt::from(sign(i + alpha - beta - gamma - delta))
                            * factorial(alpha)
                            * factorial(delta)
                            * factorial(eps)
                            * binomial(alpha, beta)
                            * multinomial(j, &[alpha, eps])
                            * multinomial(k, &[alpha, delta])
                            * x;
                        if coeff.is_zero() {
                            continue;
                        }
                        let word = repeat(Prim::Lambda(A), gamma)
                            .chain(std::iter::once(Prim::Shift(-beta - delta - eps)))
                            .chain(repeat(Prim::Lambda(B), j - alpha - eps))
                            .chain(repeat(Prim::Diff(B), delta))
                            .chain(repeat(Prim::Diff(C), eps))
                            .chain(repeat(Prim::Lambda(C), k - alpha - delta))
                            .chain(repeat(Prim::Mul(D), alpha + delta + eps))
                            .chain(repeat(Prim::Lambda(D), l))
                            .collect();
                        op.push(rat(coeff), word);
                    }
                }
            }
        }
    }
    op
}

/// `λ(m)` for a monomial of `U(S)`, using the most specific of the three
/// formulas that applies.
pub fn lambda_formula_s(m: &Monomial) -> Result<DiffOp> {
    if m.dim() != DIM {
        return Err(Error::DimensionMismatch {
            expected: DIM,
            got: m.dim(),
        });
    }
    let e = |x: usize| m.exponent(x) as i64;
    let (i, j, k, l) = (e(A), e(B), e(C), e(D));
    Ok(if i == 0 && j == 0 {
        lambda_cd(k, l)
    } else if i == 0 {
        lambda_bcd(j, k, l)
    } else {
        lambda_general(i, j, k, l, XMode::Closed)
    })
}

fn s_context() -> EnvContext<Rational> {
    EnvContext::new(crate::catalog::algebra_s()).expect("S is Malcev")
}

/// Compares the table operators with bracketing and left multiplication in
/// `U(S)` on all monomials of degree `≤ cap`.
pub fn verify_operator_tables(cap: u32) -> VerificationReport {
    let ctx = s_context();
    let basis = monomials_up_to(DIM, cap);
    let mut report =
        VerificationReport::new(format!("table operators agree with U(S), degree <= {cap}"));
    for (kind, name) in [(OpKind::Rho, "rho"), (OpKind::Lambda, "lambda")] {
        let mut s = VerificationReport::new(format!("{name}(x) table vs engine"));
        for x in 0..DIM {
            let op = table_operators_s(x, kind).expect("generator of S");
            for f in &basis {
                let fe = Polynomial::monomial(f.clone());
                let got = op.apply(&fe).expect("dimension 4");
                let want = match kind {
                    OpKind::Rho => ctx.bracket_mono_gen(f, x),
                    OpKind::Lambda => ctx.left_mul_gen(x, f),
                }
                .expect("valid generator");
                s.record(
                    || vec![format!("{name}({})", NAMES[x]), f.display(ctx.labels())],
                    (got != want)
                        .then(|| format!("{} != {}", ctx.display(&got), ctx.display(&want))),
                );
            }
        }
        report.push_section(s);
    }
    report
}

/// Checks the commutation relations between `M_x`, `D_x`, `S` and `S⁻¹` on
/// all monomials of degree `≤ cap`.
pub fn verify_commutation_relations(cap: u32) -> VerificationReport {
    use DiffOp as O;
    let basis = monomials_up_to(DIM, cap);
    let mut relations: Vec<(String, DiffOp, DiffOp)> = Vec::new();
    for x in 0..DIM {
        for y in 0..DIM {
            let (nx, ny) = (NAMES[x], NAMES[y]);
            let want = if x == y { O::identity() } else { O::zero() };
            relations.push((format!("[D_{nx}, M_{ny}]"), O::d(x).bracket(&O::m(y)), want));
            relations.push((
                format!("[D_{nx}, D_{ny}]"),
                O::d(x).bracket(&O::d(y)),
                O::zero(),
            ));
            relations.push((
                format!("[M_{nx}, M_{ny}]"),
                O::m(x).bracket(&O::m(y)),
                O::zero(),
            ));
        }
        let nx = NAMES[x];
        let (ms, msinv) = if x == A {
            (O::s(1).scaled(&q(-1)), O::s(-1))
        } else {
            (O::zero(), O::zero())
        };
        relations.push((format!("[M_{nx}, S]"), O::m(x).bracket(&O::s(1)), ms));
        relations.push((format!("[M_{nx}, S⁻¹]"), O::m(x).bracket(&O::s(-1)), msinv));
        relations.push((format!("[D_{nx}, S]"), O::d(x).bracket(&O::s(1)), O::zero()));
        relations.push((
            format!("[D_{nx}, S⁻¹]"),
            O::d(x).bracket(&O::s(-1)),
            O::zero(),
        ));
    }
    relations.push(("S S⁻¹".into(), O::s(1).compose(&O::s(-1)), O::identity()));
    relations.push(("S⁻¹ S".into(), O::s(-1).compose(&O::s(1)), O::identity()));

    let labels: Vec<String> = NAMES.iter().map(|s| s.to_string()).collect();
    let mut report = VerificationReport::new(format!(
        "commutation relations of M_x, D_x, S, degree <= {cap}"
    ));
    for (name, lhs, rhs) in relations {
        for f in &basis {
            let fe = Polynomial::monomial(f.clone());
            let got = lhs.apply(&fe).expect("dimension 4");
            let want = rhs.apply(&fe).expect("dimension 4");
            report.record(
                || vec![name.clone(), f.display(&labels)],
                (got != want)
                    .then(|| format!("{} != {}", got.display(&labels), want.display(&labels))),
            );
        }
    }
    report
}

/// Compares the λ-formulas with left multiplication in `U(S)`: every
/// monomial `m` of degree `≤ cap_m` against every `f` of degree `≤ cap_f`.
/// The most specific formula is checked, and the general formula too
/// wherever a more specific one applies, so the three agree on overlaps.
pub fn verify_lambda_formulas(cap_m: u32, cap_f: u32) -> VerificationReport {
    let ctx = s_context();
    let ms = monomials_up_to(DIM, cap_m);
    let fs = monomials_up_to(DIM, cap_f);
    let rows: Vec<Vec<(Vec<String>, Option<String>)>> = ms
        .par_iter()
        .map(|m| {
            let e = |x: usize| m.exponent(x) as i64;
            let mut ops = vec![("formula", lambda_formula_s(m).expect("dimension 4"))];
            if e(A) == 0 {
                ops.push((
                    "general",
                    lambda_general(0, e(B), e(C), e(D), XMode::Closed),
                ));
                ops.push((
                    "general/recurrence",
                    lambda_general(0, e(B), e(C), e(D), XMode::Recurrence),
                ));
            } else {
                ops.push((
                    "general/recurrence",
                    lambda_general(e(A), e(B), e(C), e(D), XMode::Recurrence),
                ));
            }
            if e(A) == 0 && e(B) == 0 {
                ops.push(("b-formula", lambda_bcd(0, e(C), e(D))));
            }
            let mut out = Vec::new();
            for f in &fs {
                let want = ctx.product_monomials(m, f).expect("same algebra");
                let fe = Polynomial::monomial(f.clone());
                for (name, op) in &ops {
                    let got = op.apply(&fe).expect("dimension 4");
                    out.push((
                        vec![
                            name.to_string(),
                            m.display(ctx.labels()),
                            f.display(ctx.labels()),
                        ],
                        (got != want)
                            .then(|| format!("{} != {}", ctx.display(&got), ctx.display(&want))),
                    ));
                }
            }
            out
        })
        .collect();
    let mut report = VerificationReport::new(format!(
        "lambda formulas agree with left multiplication, |m| <= {cap_m}, |f| <= {cap_f}"
    ));
    for (inputs, res) in rows.into_iter().flatten() {
        report.record(|| inputs, res);
    }
    report
}

/// Recurrence and closed form of `X_i(γ,δ,ε)` agree for `i ≤ max_i`, all
/// valid `(γ,δ,ε)` and `t ∈ 0..=max_t`.
pub fn verify_x_coefficients(max_i: i64, max_t: i64) -> VerificationReport {
    let mut report = VerificationReport::new(format!(
        "X_i recurrence equals closed form, i <= {max_i}, t <= {max_t}"
    ));
    for i in 0..=max_i {
        for g in 0..=i {
            for d in 0..=(i - g) {
                for e in 0..=(i - g - d) {
                    for t in 0..=max_t {
                        let r = x_coefficient(i, g, d, e, t, XMode::Recurrence);
                        let c = x_coefficient(i, g, d, e, t, XMode::Closed);
                        report.record(
                            || vec![format!("X_{i}({g},{d},{e}) at t={t}")],
                            (r != c).then(|| format!("recurrence {r} != closed {c}")),
                        );
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qq;

    fn poly(s: &str) -> Polynomial<Rational> {
        let labels: Vec<String> = NAMES.iter().map(|s| s.to_string()).collect();
        let mut out = Polynomial::zero(DIM);
        for part in s.split('+') {
            let part = part.trim();
            let (c, m) = match part.find(|ch: char| ch.is_ascii_alphabetic()) {
                Some(0) => (q(1), part),
                Some(p) => (
                    crate::scalar::parse_rational(&part[..p]).unwrap(),
                    &part[p..],
                ),
                None => (crate::scalar::parse_rational(part).unwrap(), "1"),
            };
            out.add_term(Monomial::parse(m, &labels).unwrap(), c);
        }
        out
    }

    #[test]
    fn apply_examples() {
        let mbdb = DiffOp::m(B).compose(&DiffOp::d(B));
        assert_eq!(mbdb.apply(&poly("b^2")).unwrap(), poly("2b^2"));
        assert_eq!(
            DiffOp::s(1).apply(&poly("a^2b")).unwrap(),
            poly("a^2b + 2ab + b")
        );
        let rho_a = table_operators_s(A, OpKind::Rho).unwrap();
        assert_eq!(rho_a.apply(&poly("bc")).unwrap(), poly("2bc + -3d"));
        assert!(DiffOp::m(7).apply(&poly("a")).is_err());
        assert!(DiffOp::identity().apply(&Polynomial::zero(3)).is_err());
    }

    #[test]
    fn table_display() {
        assert_eq!(
            table_operators_s(D, OpKind::Rho).unwrap().display(),
            "M_d - S⁻¹ M_d"
        );
        assert_eq!(
            table_operators_s(A, OpKind::Lambda).unwrap().display(),
            "M_a"
        );
        assert_eq!(
            table_operators_s(B, OpKind::Lambda).unwrap().display(),
            "S M_b + S⁻¹ M_d D_c - S M_d D_c"
        );
        assert_eq!(
            table_operators_s(A, OpKind::Rho).unwrap().display(),
            "M_b D_b + M_c D_c - M_d D_d - 3M_d D_b D_c"
        );
        assert!(table_operators_s(4, OpKind::Rho).is_err());
    }

    #[test]
    fn commutation_examples() {
        let f = poly("a^2b");
        assert_eq!(DiffOp::d(B).bracket(&DiffOp::m(B)).apply(&f).unwrap(), f);
        assert_eq!(
            DiffOp::m(A)
                .bracket(&DiffOp::s(1))
                .apply(&poly("a"))
                .unwrap(),
            poly("-1a + -1")
        );
        assert!(DiffOp::d(A)
            .bracket(&DiffOp::s(1))
            .apply(&poly("a^2"))
            .unwrap()
            .is_zero());
        assert!(verify_commutation_relations(4).passed());
    }

    #[test]
    fn expansion_is_confluent() {
        let ops = [
            DiffOp::lambda(B).compose(&DiffOp::rho(C)),
            lambda_bcd(2, 1, 1),
            lambda_general(1, 1, 1, 0, XMode::Closed),
        ];
        for op in ops {
            let expanded = op.expand();
            for f in monomials_up_to(DIM, 2) {
                let fe = Polynomial::monomial(f);
                assert_eq!(op.apply(&fe).unwrap(), expanded.apply(&fe).unwrap());
            }
        }
    }

    #[test]
    fn lambda_bc_terms() {
        // α = 0: λ(b)λ(c); α = 1: β = 0 gives −M_d, β = 1 gives S⁻¹ M_d.
        let op = lambda_bcd(1, 1, 0);
        assert_eq!(op.display(), "λ(b) λ(c) - M_d + S⁻¹ M_d");
        let one = Polynomial::one(DIM);
        assert_eq!(lambda_bcd(1, 0, 0).apply(&one).unwrap(), poly("b"));
        assert_eq!(
            lambda_cd(1, 1),
            DiffOp::lambda(C).compose(&DiffOp::lambda(D))
        );
    }

    #[test]
    fn x_examples() {
        for mode in [XMode::Recurrence, XMode::Closed] {
            assert_eq!(x_coefficient(0, 0, 0, 0, 3, mode), BigInt::one());
            assert_eq!(x_coefficient(1, 1, 0, 0, 3, mode), BigInt::one());
            assert_eq!(x_coefficient(1, 0, 0, 0, 3, mode), BigInt::from(3));
            assert_eq!(x_coefficient(1, 0, 0, 0, 0, mode), BigInt::zero());
            assert_eq!(x_coefficient(2, 2, 1, 0, 1, mode), BigInt::zero());
        }
        assert!(verify_x_coefficients(5, 5).passed());
    }

    #[test]
    fn operator_tables_match_engine() {
        let r = verify_operator_tables(4);
        assert!(r.passed(), "{r}");
        assert_eq!(r.total_checked(), 2 * 4 * 70);
    }

    #[test]
    fn lambda_formulas_match_engine() {
        let r = verify_lambda_formulas(3, 3);
        assert!(r.passed(), "{r}");
        assert!(r.total_checked() >= 2 * 35 * 35);
    }

    #[test]
    fn rational_scaling() {
        let op = DiffOp::m(A).scaled(&qq(1, 2));
        assert_eq!(op.apply(&poly("b")).unwrap(), poly("1/2ab"));
        assert!(DiffOp::m(A).scaled(&q(0)).is_empty());
    }
}

//! Multilinear degree-4 elements of the free nonassociative algebra, the
//! primitive operations `f` and `g`, and the Bol algebra structure carried by
//! a right alternative algebra.
//!
//! A multilinear element in `a, b, c, d` lives in a 120-dimensional space:
//! five bracketings times 24 orderings of the leaves. Coordinates are
//! shape-major, with shapes ordered
//!
//! ```text
//! ((xy)z)w, (x(yz))w, (xy)(zw), x((yz)w), x(y(zw))
//! ```
//!
//! and leaf orderings ranked lexicographically.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{for_tuples, format_terms, FiniteAlgebra, Variety, Vector};
use crate::error::{Error, Result};
use crate::linalg::{rational_rank, solve_combination};
use crate::report::VerificationReport;
use crate::scalar::{q, qq, Rational, Scalar};
use crate::verify_variety;

pub const VARIABLES: [char; 4] = ['a', 'b', 'c', 'd'];
pub const SHAPES: [&str; 5] = ["((xy)z)w", "(x(yz))w", "(xy)(zw)", "x((yz)w)", "x(y(zw))"];
pub const SPACE_DIM: usize = 120;

/// A binary tree with variables at the leaves.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tree {
    Leaf(u8),
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    fn node(x: &Tree, y: &Tree) -> Tree {
        Tree::Node(Box::new(x.clone()), Box::new(y.clone()))
    }

    fn leaves(&self, out: &mut Vec<u8>) {
        match self {
            Tree::Leaf(v) => out.push(*v),
            Tree::Node(x, y) => {
                x.leaves(out);
                y.leaves(out);
            }
        }
    }

    fn shape(&self) -> Option<usize> {
        use Tree::{Leaf as L, Node as N};
        let shape = match self {
            N(x, w) if matches!(**w, L(_)) => match &**x {
                N(xy, z) if matches!(**z, L(_)) => match &**xy {
                    N(x, y) if matches!((&**x, &**y), (L(_), L(_))) => 0,
                    _ => return None,
                },
                N(x, yz) if matches!(**x, L(_)) => match &**yz {
                    N(y, z) if matches!((&**y, &**z), (L(_), L(_))) => 1,
                    _ => return None,
                },
                _ => return None,
            },
            N(xy, zw) if matches!((&**xy, &**zw), (N(..), N(..))) => {
                let leafy = |t: &Tree| matches!(t, N(p, q) if matches!((&**p, &**q), (L(_), L(_))));
                if leafy(xy) && leafy(zw) {
                    2
                } else {
                    return None;
                }
            }
            N(x, rest) if matches!(**x, L(_)) => match &**rest {
                N(yz, w) if matches!(**w, L(_)) => match &**yz {
                    N(y, z) if matches!((&**y, &**z), (L(_), L(_))) => 3,
                    _ => return None,
                },
                N(y, zw) if matches!(**y, L(_)) => match &**zw {
                    N(z, w) if matches!((&**z, &**w), (L(_), L(_))) => 4,
                    _ => return None,
                },
                _ => return None,
            },
            _ => return None,
        };
        Some(shape)
    }

    fn from_shape(shape: usize, w: [u8; 4]) -> Tree {
        let l = |k: usize| Tree::Leaf(w[k]);
        let n = |x: Tree, y: Tree| Tree::Node(Box::new(x), Box::new(y));
        match shape {
            0 => n(n(n(l(0), l(1)), l(2)), l(3)),
            1 => n(n(l(0), n(l(1), l(2))), l(3)),
            2 => n(n(l(0), l(1)), n(l(2), l(3))),
            3 => n(l(0), n(n(l(1), l(2)), l(3))),
            _ => n(l(0), n(l(1), n(l(2), l(3)))),
        }
    }

    fn evaluate<F: Scalar>(&self, alg: &FiniteAlgebra<F>, args: &[Vector<F>]) -> Vector<F> {
        match self {
            Tree::Leaf(v) => args[*v as usize].clone(),
            Tree::Node(x, y) => alg.mul(&x.evaluate(alg, args), &y.evaluate(alg, args)),
        }
    }
}

/// An element of the free nonassociative algebra.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FreePoly(BTreeMap<Tree, Rational>);

impl FreePoly {
    pub fn var(v: u8) -> Self {
        FreePoly(BTreeMap::from([(Tree::Leaf(v), Rational::one())]))
    }

    fn add_term(&mut self, t: Tree, c: Rational) {
        let slot = self.0.entry(t.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&t);
        }
    }

    pub fn add(&self, other: &FreePoly) -> FreePoly {
        let mut out = self.clone();
        for (t, c) in &other.0 {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn scaled(&self, k: &Rational) -> FreePoly {
        if k.is_zero() {
            return FreePoly::default();
        }
        FreePoly(self.0.iter().map(|(t, c)| (t.clone(), c * k)).collect())
    }

    pub fn sub(&self, other: &FreePoly) -> FreePoly {
        self.add(&other.scaled(&q(-1)))
    }

    pub fn mul(&self, other: &FreePoly) -> FreePoly {
        let mut out = FreePoly::default();
        for (s, c) in &self.0 {
            for (t, d) in &other.0 {
                out.add_term(Tree::node(s, t), c * d);
            }
        }
        out
    }

    pub fn commutator(&self, other: &FreePoly) -> FreePoly {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn associator(&self, y: &FreePoly, z: &FreePoly) -> FreePoly {
        self.mul(y).mul(z).sub(&self.mul(&y.mul(z)))
    }
}

/// Formal expressions in `a, b, c, d` built from products, commutators
/// `[x,y]` and associators `(x,y,z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Var(u8),
    Scale(Rational, Box<Expr>),
    Sum(Vec<Expr>),
    Product(Box<Expr>, Box<Expr>),
    Commutator(Box<Expr>, Box<Expr>),
    Associator(Box<Expr>, Box<Expr>, Box<Expr>),
}

impl Expr {
    /// Parses e.g. `(ab,c,d) - a(b,c,d) - (a,c,d)b`. Juxtaposition is a
    /// left-associated product; `[x,y]` is a commutator, `(x,y,z)` an
    /// associator and `(x)` a group. A term may start with an integer or
    /// `p/q` coefficient.
    pub fn parse(s: &str) -> Result<Expr> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { s: &chars, pos: 0 };
        let e = p.sum()?;
        if p.pos != chars.len() {
            return Err(Error::Parse(format!(
                "unexpected {:?} in {s:?}",
                chars[p.pos]
            )));
        }
        Ok(e)
    }

    pub fn expand(&self) -> FreePoly {
        match self {
            Expr::Var(v) => FreePoly::var(*v),
            Expr::Scale(k, e) => e.expand().scaled(k),
            Expr::Sum(es) => es
                .iter()
                .fold(FreePoly::default(), |acc, e| acc.add(&e.expand())),
            Expr::Product(x, y) => x.expand().mul(&y.expand()),
            Expr::Commutator(x, y) => x.expand().commutator(&y.expand()),
            Expr::Associator(x, y, z) => x.expand().associator(&y.expand(), &z.expand()),
        }
    }
}

struct Parser<'a> {
    s: &'a [char],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "expected {c:?} at position {}",
                self.pos
            )))
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut terms = vec![self.term()?];
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            terms.push(if c == '-' {
                Expr::Scale(q(-1), Box::new(t))
            } else {
                t
            });
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<Expr> {
        let mut coeff = None;
        if self.peek() == Some('-') {
            self.pos += 1;
            coeff = Some(q(-1));
        }
        let start = self.pos;
        while matches!(self.peek(), Some('0'..='9' | '/')) {
            self.pos += 1;
        }
        if self.pos > start {
            let text: String = self.s[start..self.pos].iter().collect();
            let k = crate::scalar::parse_rational(&text)?;
            coeff = Some(coeff.map_or(k.clone(), |c| c * k));
        }
        let mut e = self.factor()?;
        while matches!(self.peek(), Some('a'..='d' | '(' | '[')) {
            e = Expr::Product(Box::new(e), Box::new(self.factor()?));
        }
        Ok(match coeff {
            Some(k) => Expr::Scale(k, Box::new(e)),
            None => e,
        })
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(c @ 'a'..='d') => {
                self.pos += 1;
                Ok(Expr::Var(c as u8 - b'a'))
            }
            Some('[') => {
                self.pos += 1;
                let x = self.sum()?;
                self.eat(',')?;
                let y = self.sum()?;
                self.eat(']')?;
                Ok(Expr::Commutator(Box::new(x), Box::new(y)))
            }
            Some('(') => {
                self.pos += 1;
                let x = self.sum()?;
                if self.peek() == Some(')') {
                    self.pos += 1;
                    return Ok(x);
                }
                self.eat(',')?;
                let y = self.sum()?;
                self.eat(',')?;
                let z = self.sum()?;
                self.eat(')')?;
                Ok(Expr::Associator(Box::new(x), Box::new(y), Box::new(z)))
            }
            other => Err(Error::Parse(format!(
                "unexpected {other:?} at position {}",
                self.pos
            ))),
        }
    }
}

/// All 24 orderings of `[0, 1, 2, 3]`, lexicographically.
pub fn permutations() -> Vec<[u8; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4u8 {
        for b in (0..4u8).filter(|&b| b != a) {
            for c in (0..4u8).filter(|&c| c != a && c != b) {
                out.push([a, b, c, 6 - a - b - c]);
            }
        }
    }
    out
}

fn perm_rank(w: [u8; 4]) -> usize {
    let mut rank = 0;
    for i in 0..4 {
        let smaller_later = (i + 1..4).filter(|&j| w[j] < w[i]).count();
        rank = rank * (4 - i) + smaller_later;
    }
    rank
}

/// Writes a permutation as the images of `a, b, c, d`, e.g. `bacd`.
pub fn format_permutation(p: [u8; 4]) -> String {
    p.iter().map(|&v| VARIABLES[v as usize]).collect()
}

/// A multilinear element of degree 4 in `a, b, c, d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultilinearPoly4(pub Vec<Rational>);

impl MultilinearPoly4 {
    pub fn zero() -> Self {
        MultilinearPoly4(vec![Rational::zero(); SPACE_DIM])
    }

    pub fn index(shape: usize, leaves: [u8; 4]) -> usize {
        shape * 24 + perm_rank(leaves)
    }

    /// The basis element with the given shape and leaf order.
    pub fn basis(shape: usize, leaves: [u8; 4]) -> Self {
        let mut out = Self::zero();
        out.0[Self::index(shape, leaves)] = Rational::one();
        out
    }

    pub fn from_free(p: &FreePoly) -> Result<Self> {
        let mut out = Self::zero();
        for (t, c) in &p.0 {
            let mut leaves = Vec::with_capacity(4);
            t.leaves(&mut leaves);
            let mut sorted = leaves.clone();
            sorted.sort_unstable();
            if sorted != [0, 1, 2, 3] {
                return Err(Error::Unsupported(format!(
                    "not multilinear in a, b, c, d: leaves {leaves:?}"
                )));
            }
            let shape = t
                .shape()
                .ok_or_else(|| Error::Internal(format!("degree-4 tree without a shape: {t:?}")))?;
            out.0[Self::index(shape, [leaves[0], leaves[1], leaves[2], leaves[3]])] += c;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn coeff(&self, shape: usize, leaves: [u8; 4]) -> Rational {
        self.0[Self::index(shape, leaves)].clone()
    }

    /// Substitutes `v ↦ σ(v)` for each variable.
    pub fn permuted(&self, sigma: [u8; 4]) -> Self {
        let mut out = Self::zero();
        for shape in 0..5 {
            for w in permutations() {
                let c = &self.0[Self::index(shape, w)];
                if !c.is_zero() {
                    out.0[Self::index(shape, w.map(|v| sigma[v as usize]))] = c.clone();
                }
            }
        }
        out
    }

    /// Evaluates in a finite algebra with `args[v]` substituted for variable `v`.
    pub fn evaluate<F: Scalar>(&self, alg: &FiniteAlgebra<F>, args: &[Vector<F>; 4]) -> Vector<F> {
        let mut out = Vector::zero(alg.dim());
        for shape in 0..5 {
            for w in permutations() {
                let c = &self.0[Self::index(shape, w)];
                if !c.is_zero() {
                    out.add_scaled(
                        &Tree::from_shape(shape, w).evaluate(alg, args),
                        &F::from_rational(c),
                    );
                }
            }
        }
        out
    }
}

impl fmt::Display for MultilinearPoly4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for shape in 0..5 {
            for w in permutations() {
                let c = &self.0[Self::index(shape, w)];
                if c.is_zero() {
                    continue;
                }
                let word: Vec<char> = w.iter().map(|&v| VARIABLES[v as usize]).collect();
                let mono = SHAPES[shape]
                    .replace('x', "0")
                    .replace('y', "1")
                    .replace('z', "2")
                    .replace('w', "3");
                let mono: String = mono
                    .chars()
                    .map(|ch| ch.to_digit(10).map_or(ch, |k| word[k as usize]))
                    .collect();
                let neg = *c < Rational::zero();
                let abs = if neg { -c.clone() } else { c.clone() };
                match (first, neg) {
                    (true, true) => write!(f, "-")?,
                    (false, true) => write!(f, " - ")?,
                    (false, false) => write!(f, " + ")?,
                    (true, false) => {}
                }
                if !abs.is_one() {
                    write!(f, "{abs} ")?;
                }
                write!(f, "{mono}")?;
                first = false;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Parses and expands a multilinear expression in `a, b, c, d`.
pub fn expand_multilinear(expr: &str) -> Result<MultilinearPoly4> {
    MultilinearPoly4::from_free(&Expr::parse(expr)?.expand())
}

pub const F_EXPR: &str = "(ab,c,d) - a(b,c,d) - (a,c,d)b";
pub const G_EXPR: &str = "(a,bc,d) - b(a,c,d) - (a,b,d)c";
pub const AKIVIS_EXPRS: [&str; 6] = [
    "[[[a,b],c],d]",
    "[(a,b,c),d]",
    "[[a,b],[c,d]]",
    "([a,b],c,d)",
    "(a,[b,c],d)",
    "(a,b,[c,d])",
];
/// The two displayed degree-4 consequences of the linearized identity
/// `(x,x,x) = 0`. Both already lie in the span of the Akivis elements and `f`.
pub const THIRD_POWER_EXPRS: [&str; 2] = [
    "([a,d],b,c) + ([a,d],c,b) + (b,[a,d],c) + (b,c,[a,d]) + (c,[a,d],b) + (c,b,[a,d])",
    "[(a,b,c),d] + [(a,c,b),d] + [(b,a,c),d] + [(b,c,a),d] + [(c,a,b),d] + [(c,b,a),d]",
];
/// Generators of the degree-4 part of the ideal of consequences of the
/// linearization `L(x,y,z) = Σ_σ (x,y,z)^σ`: `L(ab,c,d)`, `L(a,b,c)d` and
/// `dL(a,b,c)`. Under all permutations they span a 20-dimensional space.
pub const THIRD_POWER_IDEAL_EXPRS: [&str; 3] = [
    "(ab,c,d) + (ab,d,c) + (c,ab,d) + (c,d,ab) + (d,ab,c) + (d,c,ab)",
    "(a,b,c)d + (a,c,b)d + (b,a,c)d + (b,c,a)d + (c,a,b)d + (c,b,a)d",
    "d(a,b,c) + d(a,c,b) + d(b,a,c) + d(b,c,a) + d(c,a,b) + d(c,b,a)",
];

/// An expanded element together with its source expression.
#[derive(Debug, Clone)]
pub struct NamedElement {
    pub name: String,
    pub expr: &'static str,
    pub poly: MultilinearPoly4,
}

fn named(name: impl Into<String>, expr: &'static str) -> NamedElement {
    let poly = expand_multilinear(expr).expect("built-in expressions are multilinear");
    NamedElement {
        name: name.into(),
        expr,
        poly,
    }
}

fn family(prefix: &str, exprs: &[&'static str]) -> Vec<NamedElement> {
    exprs
        .iter()
        .enumerate()
        .map(|(k, e)| named(format!("{prefix}{}", k + 1), e))
        .collect()
}

/// The six Akivis elements followed by `f` and `g`.
pub fn akivis_f_g_elements() -> Vec<NamedElement> {
    let mut out = family("akivis", &AKIVIS_EXPRS);
    out.push(named("f", F_EXPR));
    out.push(named("g", G_EXPR));
    out
}

/// The two displayed third-power consequences under every permutation of
/// the variables: 48 elements.
pub fn third_power_consequences() -> Vec<(NamedElement, [u8; 4])> {
    let mut out = Vec::with_capacity(48);
    for base in family("tpa", &THIRD_POWER_EXPRS) {
        for p in permutations() {
            out.push((base.clone(), p));
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionTerm {
    pub element: String,
    pub permutation: String,
    pub coefficient: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    pub space_dim: usize,
    pub spanning_elements: usize,
    pub span_rank: usize,
    pub member: bool,
    /// Explicit combination reproducing `g` (nonzero coefficients only).
    pub coefficients: Vec<DecompositionTerm>,
    /// Whether the verdict agrees when the spanning set is enumerated in
    /// reverse order.
    pub order_independent: bool,
    /// Membership when only the two displayed consequences are used.
    pub member_with_displayed_consequences_only: bool,
    /// Membership when `f` is left out.
    pub member_without_f: bool,
    #[serde(skip)]
    pub report: VerificationReport,
}

/// Which families enter the spanning set; each contributes all 24
/// permutations of its elements.
#[derive(Debug, Clone, Copy)]
pub struct SpanningFamilies {
    pub f: bool,
    pub akivis: bool,
    pub displayed: bool,
    pub ideal: bool,
}

impl SpanningFamilies {
    pub const ALL: SpanningFamilies = SpanningFamilies {
        f: true,
        akivis: true,
        displayed: true,
        ideal: true,
    };
}

pub fn spanning_set(which: SpanningFamilies) -> Vec<(String, [u8; 4], MultilinearPoly4)> {
    let mut gens = Vec::new();
    if which.f {
        gens.push(named("f", F_EXPR));
    }
    if which.akivis {
        gens.extend(family("akivis", &AKIVIS_EXPRS));
    }
    if which.displayed {
        gens.extend(family("tpa", &THIRD_POWER_EXPRS));
    }
    if which.ideal {
        gens.extend(family("tpi", &THIRD_POWER_IDEAL_EXPRS));
    }
    let mut rows = Vec::new();
    for e in gens {
        for p in permutations() {
            rows.push((e.name.clone(), p, e.poly.permuted(p)));
        }
    }
    rows
}

/// Whether `target` lies in the span of the rows, by comparing exact ranks.
pub fn in_span(rows: &[MultilinearPoly4], target: &MultilinearPoly4) -> bool {
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.0.clone()).collect();
    let r0 = rational_rank(&m);
    m.push(target.0.clone());
    rational_rank(&m) == r0
}

fn polys(rows: &[(String, [u8; 4], MultilinearPoly4)]) -> Vec<MultilinearPoly4> {
    rows.iter().map(|r| r.2.clone()).collect()
}

/// Decides whether `g` is a combination of permutations of `f`, the Akivis
/// elements and the degree-4 consequences of the linearized third-power
/// identity, and if so finds one.
pub fn decompose_g() -> DecompositionReport {
    let g = expand_multilinear(G_EXPR).expect("g");
    let rows = spanning_set(SpanningFamilies::ALL);
    let all = polys(&rows);
    let dense: Vec<Vec<Rational>> = all.iter().map(|p| p.0.clone()).collect();
    let span_rank = rational_rank(&dense);
    let member = in_span(&all, &g);
    let reversed: Vec<MultilinearPoly4> = all.iter().rev().cloned().collect();
    let order_independent = in_span(&reversed, &g) == member;
    let displayed_only = SpanningFamilies {
        ideal: false,
        ..SpanningFamilies::ALL
    };
    let member_with_displayed_consequences_only =
        in_span(&polys(&spanning_set(displayed_only)), &g);
    let member_without_f = in_span(
        &polys(&spanning_set(SpanningFamilies {
            f: false,
            ..SpanningFamilies::ALL
        })),
        &g,
    );

    let mut report = VerificationReport::new(
        "g is a combination of permutations of f, Akivis elements and third-power consequences",
    );
    report.expect(g.0.len() == SPACE_DIM, || {
        format!("space dimension {}", g.0.len())
    });
    report.expect(member, || format!("g not in span (span rank {span_rank})"));
    report.expect(order_independent, || {
        "verdict depends on enumeration order".into()
    });

    let mut coefficients = Vec::new();
    if member {
        match solve_combination(&dense, &g.0) {
            None => report.expect(false, || "rank test and solve disagree".into()),
            Some(x) => {
                let mut recon = MultilinearPoly4::zero();
                for ((name, p, poly), c) in rows.iter().zip(&x) {
                    if c.is_zero() {
                        continue;
                    }
                    for (r, v) in recon.0.iter_mut().zip(&poly.0) {
                        *r += c * v;
                    }
                    coefficients.push(DecompositionTerm {
                        element: name.clone(),
                        permutation: format_permutation(*p),
                        coefficient: c.to_string(),
                    });
                }
                report.expect(recon == g, || "combination does not reproduce g".into());
            }
        }
    }
    DecompositionReport {
        space_dim: SPACE_DIM,
        spanning_elements: rows.len(),
        span_rank,
        member,
        coefficients,
        order_independent,
        member_with_displayed_consequences_only,
        member_without_f,
        report,
    }
}

/// `⟨x, y, z⟩ = (x∘y)∘z − x∘(y∘z)` with `x∘y = ½(xy + yx)`.
pub fn jordan_associator<F: Scalar>(
    alg: &FiniteAlgebra<F>,
    x: &Vector<F>,
    y: &Vector<F>,
    z: &Vector<F>,
) -> Vector<F> {
    let half = F::from_rational(&qq(1, 2));
    let circ = |u: &Vector<F>, v: &Vector<F>| (alg.mul(u, v) + alg.mul(v, u)).scaled(&half);
    circ(&circ(x, y), z) - circ(x, &circ(y, z))
}

/// A binary and a ternary operation on a finite basis.
#[derive(Debug, Clone, PartialEq)]
pub struct BolData<F: Scalar> {
    pub labels: Vec<String>,
    /// `binary[i][j] = [e_i, e_j]`
    pub binary: Vec<Vec<Vector<F>>>,
    /// `ternary[i][j][k] = [e_i, e_j, e_k]`
    pub ternary: Vec<Vec<Vec<Vector<F>>>>,
}

impl<F: Scalar> BolData<F> {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn bracket(&self, x: &Vector<F>, y: &Vector<F>) -> Vector<F> {
        let mut out = Vector::zero(self.dim());
        for (i, xi) in x.0.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.0.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                out.add_scaled(&self.binary[i][j], &(xi.clone() * yj.clone()));
            }
        }
        out
    }

    pub fn triple(&self, x: &Vector<F>, y: &Vector<F>, z: &Vector<F>) -> Vector<F> {
        let mut out = Vector::zero(self.dim());
        for (i, xi) in x.0.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.0.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let xy = xi.clone() * yj.clone();
                for (k, zk) in z.0.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    out.add_scaled(&self.ternary[i][j][k], &(xy.clone() * zk.clone()));
                }
            }
        }
        out
    }

    /// A Lie triple system viewed as a Bol algebra with zero binary product.
    /// `ternary` lists nonzero values `[e_i, e_j, e_k] = v`.
    pub fn lie_triple_system(
        labels: Vec<String>,
        ternary: &[((usize, usize, usize), Vector<F>)],
    ) -> Self {
        let n = labels.len();
        let zero = Vector::zero(n);
        let mut t = vec![vec![vec![zero.clone(); n]; n]; n];
        for ((i, j, k), v) in ternary {
            t[*i][*j][*k] = v.clone();
        }
        BolData {
            labels,
            binary: vec![vec![zero; n]; n],
            ternary: t,
        }
    }

    /// The 2-dimensional simple Lie triple system: `[e,f,e] = 2e`,
    /// `[e,f,f] = −2f`, extended by skew-symmetry in the first two slots.
    pub fn simple_lts2() -> Self {
        let v = |a: i64, b: i64| Vector(vec![F::from_i64(a), F::from_i64(b)]);
        Self::lie_triple_system(
            vec!["e".into(), "f".into()],
            &[
                ((0, 1, 0), v(2, 0)),
                ((0, 1, 1), v(0, -2)),
                ((1, 0, 0), v(-2, 0)),
                ((1, 0, 1), v(0, 2)),
            ],
        )
    }

    /// Checks the five defining identities of Bol algebras on all basis
    /// tuples. The quadratic ones are checked together with their
    /// linearizations, which is equivalent in characteristic 0.
    pub fn verify_axioms(&self) -> VerificationReport {
        let n = self.dim();
        let e: Vec<Vector<F>> = (0..n).map(|i| Vector::basis(n, i)).collect();
        let lab = |t: &[usize]| {
            t.iter()
                .map(|&i| self.labels[i].clone())
                .collect::<Vec<_>>()
        };
        let fmt = |v: Vector<F>| {
            if v.is_zero() {
                None
            } else {
                Some(format_terms(
                    v.0.iter()
                        .zip(self.labels.iter().map(String::as_str))
                        .filter(|(c, _)| !c.is_zero()),
                ))
            }
        };
        let mut report = VerificationReport::new("Bol algebra identities");

        let mut s = VerificationReport::new("[a,a] = 0");
        for_tuples(n, 2, |t| {
            let (a, b) = (&e[t[0]], &e[t[1]]);
            s.record(|| lab(t), fmt(self.bracket(a, b) + self.bracket(b, a)));
        });
        report.push_section(s);

        let mut s = VerificationReport::new("[a,a,c] = 0");
        for_tuples(n, 3, |t| {
            let (a, b, c) = (&e[t[0]], &e[t[1]], &e[t[2]]);
            s.record(|| lab(t), fmt(self.triple(a, b, c) + self.triple(b, a, c)));
        });
        report.push_section(s);

        let mut s = VerificationReport::new("[a,b,c] + [b,c,a] + [c,a,b] = 0");
        for_tuples(n, 3, |t| {
            let (a, b, c) = (&e[t[0]], &e[t[1]], &e[t[2]]);
            s.record(
                || lab(t),
                fmt(self.triple(a, b, c) + self.triple(b, c, a) + self.triple(c, a, b)),
            );
        });
        report.push_section(s);

        let mut s = VerificationReport::new(
            "[a,b,[c,d,e]] = [[a,b,c],d,e] + [c,[a,b,d],e] + [c,d,[a,b,e]]",
        );
        for_tuples(n, 5, |t| {
            let (a, b, c, d, x) = (&e[t[0]], &e[t[1]], &e[t[2]], &e[t[3]], &e[t[4]]);
            let lhs = self.triple(a, b, &self.triple(c, d, x));
            let rhs = self.triple(&self.triple(a, b, c), d, x)
                + self.triple(c, &self.triple(a, b, d), x)
                + self.triple(c, d, &self.triple(a, b, x));
            s.record(|| lab(t), fmt(lhs - rhs));
        });
        report.push_section(s);

        let mut s = VerificationReport::new(
            "[[a,b],[c,d]] - [a,b,[c,d]] + [c,d,[a,b]] + [[a,b,c],d] - [[a,b,d],c] = 0",
        );
        for_tuples(n, 4, |t| {
            let (a, b, c, d) = (&e[t[0]], &e[t[1]], &e[t[2]], &e[t[3]]);
            let ab = self.bracket(a, b);
            let cd = self.bracket(c, d);
            let v = self.bracket(&ab, &cd) - self.triple(a, b, &cd)
                + self.triple(c, d, &ab)
                + self.bracket(&self.triple(a, b, c), d)
                - self.bracket(&self.triple(a, b, d), c);
            s.record(|| lab(t), fmt(v));
        });
        report.push_section(s);
        report
    }
}

/// The Bol structure of a right alternative algebra, with the report of its
/// axioms: `[a,b,c] = ⟨b,c,a⟩` and the half commutator
/// `[a,b] = ½(ab − ba)`, so that `ab = a∘b + [a,b]`. With the full
/// commutator the last identity fails (already on the octonions).
pub fn bol_from_right_alternative<F: Scalar>(
    alg: &FiniteAlgebra<F>,
) -> Result<(BolData<F>, VerificationReport)> {
    if !verify_variety(alg, Variety::RightAlternative).passed() {
        return Err(Error::NotRightAlternative(alg.name().to_string()));
    }
    let n = alg.dim();
    let e: Vec<Vector<F>> = (0..n).map(|i| alg.basis_vector(i)).collect();
    let half = F::from_rational(&qq(1, 2));
    let binary = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (alg.mul(&e[i], &e[j]) - alg.mul(&e[j], &e[i])).scaled(&half))
                .collect()
        })
        .collect();
    let ternary = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|k| jordan_associator(alg, &e[j], &e[k], &e[i]))
                        .collect()
                })
                .collect()
        })
        .collect();
    let data = BolData {
        labels: alg.labels().to_vec(),
        binary,
        ternary,
    };
    let mut report = data.verify_axioms();
    report.name = format!("Bol algebra identities derived from {}", alg.name());
    Ok((data, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::octonion::octonion_algebra;

    #[test]
    fn basis_ordering() {
        assert_eq!(permutations().len(), 24);
        assert_eq!(permutations()[0], [0, 1, 2, 3]);
        assert_eq!(permutations()[23], [3, 2, 1, 0]);
        for (k, p) in permutations().into_iter().enumerate() {
            assert_eq!(perm_rank(p), k);
        }
        let e = expand_multilinear("((ab)c)d").unwrap();
        assert_eq!(e, MultilinearPoly4::basis(0, [0, 1, 2, 3]));
        assert_eq!(e.0.len(), 120);
        assert!(e.0[0].is_one());
        let x = expand_multilinear("b(a(dc))").unwrap();
        assert_eq!(x, MultilinearPoly4::basis(4, [1, 0, 3, 2]));
    }

    #[test]
    fn expansion_examples() {
        let f = expand_multilinear(F_EXPR).unwrap();
        assert_eq!(f.coeff(0, [0, 1, 2, 3]), q(1));
        assert!(!f.is_zero());
        let akivis3 = expand_multilinear("[[a,b],[c,d]]").unwrap();
        assert_eq!(akivis3.coeff(2, [0, 1, 2, 3]), q(1));
        assert_eq!(akivis3.coeff(2, [2, 3, 0, 1]), q(-1));
        let akivis2 = expand_multilinear("[(a,b,c),d]").unwrap();
        assert_eq!(akivis2.coeff(0, [0, 1, 2, 3]), q(1));
        assert!(expand_multilinear("(ab)c").is_err());
        assert!(expand_multilinear("(ab)(ca)").is_err());
        assert!(Expr::parse("(a,b").is_err());
    }

    #[test]
    fn expansion_is_linear() {
        let x = expand_multilinear("2((ab)c)d - 1/3 a(b(cd))").unwrap();
        assert_eq!(x.coeff(0, [0, 1, 2, 3]), q(2));
        assert_eq!(x.coeff(4, [0, 1, 2, 3]), qq(-1, 3));
        let sum = expand_multilinear("[(a,b,c),d] + (a,b,[c,d])").unwrap();
        let parts: Vec<Rational> = expand_multilinear("[(a,b,c),d]")
            .unwrap()
            .0
            .iter()
            .zip(&expand_multilinear("(a,b,[c,d])").unwrap().0)
            .map(|(x, y)| x + y)
            .collect();
        assert_eq!(sum.0, parts);
    }

    #[test]
    fn distinct_basis_terms_expand_to_distinct_vectors() {
        let mut seen = std::collections::HashSet::new();
        for shape in 0..5 {
            for w in permutations() {
                let t = Tree::from_shape(shape, w);
                let v =
                    MultilinearPoly4::from_free(&FreePoly(BTreeMap::from([(t, q(1))]))).unwrap();
                assert_eq!(v, MultilinearPoly4::basis(shape, w));
                assert!(seen.insert(MultilinearPoly4::index(shape, w)));
            }
        }
        assert_eq!(seen.len(), SPACE_DIM);
    }

    #[test]
    fn permutation_matches_renaming() {
        let f = expand_multilinear(F_EXPR).unwrap();
        // σ = (a b): substitute a ↦ b, b ↦ a
        let swapped = expand_multilinear("(ba,c,d) - b(a,c,d) - (b,c,d)a").unwrap();
        assert_eq!(f.permuted([1, 0, 2, 3]), swapped);
    }

    #[test]
    fn third_power_consequences_are_symmetric_and_vanish_where_expected() {
        let all = third_power_consequences();
        assert_eq!(all.len(), 48);
        let first = expand_multilinear(THIRD_POWER_EXPRS[0]).unwrap();
        assert!(!first.is_zero());
        assert_eq!(first.permuted([0, 2, 1, 3]), first);
        let second = expand_multilinear(THIRD_POWER_EXPRS[1]).unwrap();
        assert_eq!(second.permuted([0, 2, 1, 3]), second);

        // Both are consequences of (x,x,x) = 0, so they vanish in any
        // third-power associative algebra, in particular the octonions and
        // any commutative associative algebra.
        let o = octonion_algebra();
        let comm = FiniteAlgebra::from_entries(
            "k[x]/(x^2)",
            &["1", "x"],
            &[
                (0, 0, vec![(0, q(1))]),
                (0, 1, vec![(1, q(1))]),
                (1, 0, vec![(1, q(1))]),
            ],
        );
        for alg in [&o, &comm] {
            let n = alg.dim();
            for_tuples(n, 4, |t| {
                let args = [0, 1, 2, 3].map(|k| alg.basis_vector(t[k]));
                for p in [&first, &second] {
                    assert!(p.evaluate(alg, &args).is_zero(), "{} at {t:?}", alg.name());
                }
            });
        }
    }

    #[test]
    fn span_ranks() {
        let rank_of = |w: SpanningFamilies| {
            rational_rank(
                &spanning_set(w)
                    .into_iter()
                    .map(|r| r.2 .0)
                    .collect::<Vec<_>>(),
            )
        };
        let none = SpanningFamilies {
            f: false,
            akivis: false,
            displayed: false,
            ideal: false,
        };
        assert_eq!(
            rank_of(SpanningFamilies {
                akivis: true,
                ..none
            }),
            65
        );
        assert_eq!(
            rank_of(SpanningFamilies {
                akivis: true,
                f: true,
                ..none
            }),
            74
        );
        assert_eq!(
            rank_of(SpanningFamilies {
                akivis: true,
                f: true,
                displayed: true,
                ..none
            }),
            74
        );
        assert_eq!(
            rank_of(SpanningFamilies {
                displayed: true,
                ..none
            }),
            10
        );
        assert_eq!(
            rank_of(SpanningFamilies {
                ideal: true,
                ..none
            }),
            20
        );
    }

    #[test]
    fn ideal_consequences_vanish_in_octonions() {
        let o = octonion_algebra();
        for e in family("tpi", &THIRD_POWER_IDEAL_EXPRS) {
            for_tuples(8, 4, |t| {
                let args = [0, 1, 2, 3].map(|k| o.basis_vector(t[k]));
                assert!(e.poly.evaluate(&o, &args).is_zero(), "{} at {t:?}", e.name);
            });
        }
    }

    #[test]
    fn f_and_g_are_not_identities_of_the_free_algebra() {
        for e in akivis_f_g_elements() {
            assert!(!e.poly.is_zero(), "{}", e.name);
        }
    }

    #[test]
    fn decomposition_of_g() {
        let d = decompose_g();
        assert!(d.report.passed(), "{}", d.report);
        assert_eq!(d.space_dim, 120);
        assert_eq!(d.spanning_elements, 12 * 24);
        assert!(d.member && d.order_independent);
        assert_eq!(d.span_rank, 82);
        assert!(!d.member_with_displayed_consequences_only);
        assert!(!d.member_without_f);
        assert!(!d.coefficients.is_empty());
    }

    #[test]
    fn membership_examples() {
        let rows = polys(&spanning_set(SpanningFamilies::ALL));
        assert!(!in_span(&rows, &MultilinearPoly4::basis(0, [0, 1, 2, 3])));
        assert!(in_span(&rows, &expand_multilinear(F_EXPR).unwrap()));
    }

    #[test]
    fn octonions_give_a_bol_algebra() {
        let (data, report) = bol_from_right_alternative(&octonion_algebra()).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.sections.len(), 5);
        let e1 = Vector::basis(8, 1);
        let e2 = Vector::basis(8, 2);
        assert!(data.triple(&e1, &e1, &e2).is_zero());
    }

    #[test]
    fn full_commutator_breaks_the_last_identity() {
        let (mut data, _) = bol_from_right_alternative(&octonion_algebra()).unwrap();
        for row in data.binary.iter_mut() {
            for v in row.iter_mut() {
                *v = v.scaled(&q(2));
            }
        }
        let r = data.verify_axioms();
        assert!(r.sections[..4].iter().all(|s| s.passed()));
        assert_eq!(r.sections[4].failures.len(), 1512);
    }

    #[test]
    fn lie_triple_system_is_bol() {
        let lts = BolData::<Rational>::simple_lts2();
        let e = Vector::basis(2, 0);
        let f = Vector::basis(2, 1);
        assert_eq!(lts.triple(&e, &f, &e), Vector(vec![q(2), q(0)]));
        assert_eq!(lts.triple(&e, &f, &f), Vector(vec![q(0), q(-2)]));
        let r = lts.verify_axioms();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn broken_triple_system_fails() {
        let v = |a: i64, b: i64| Vector(vec![q(a), q(b)]);
        let bad = BolData::lie_triple_system(vec!["e".into(), "f".into()], &[((0, 1, 0), v(2, 0))]);
        assert!(!bad.verify_axioms().passed());
    }

    #[test]
    fn non_right_alternative_rejected() {
        assert!(matches!(
            bol_from_right_alternative(&catalog::algebra_s()),
            Err(Error::NotRightAlternative(_))
        ));
    }

    #[test]
    fn jordan_associator_is_associator_when_commutative() {
        let comm = FiniteAlgebra::from_entries(
            "commutative",
            &["x", "y"],
            &[
                (0, 0, vec![(1, q(1))]),
                (0, 1, vec![(0, q(1))]),
                (1, 0, vec![(0, q(1))]),
            ],
        );
        for_tuples(2, 3, |t| {
            let (x, y, z) = (
                comm.basis_vector(t[0]),
                comm.basis_vector(t[1]),
                comm.basis_vector(t[2]),
            );
            assert_eq!(
                jordan_associator(&comm, &x, &y, &z),
                comm.associator(&x, &y, &z)
            );
        });
    }
}

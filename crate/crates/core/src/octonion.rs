//! Octonions, the traceless octonions as a Malcev algebra, and a mechanical
//! check of the argument that the universal alternative envelope of the
//! 7-dimensional simple Malcev algebra is the octonions.
//!
//! Units are `e1, ..., e7` with indices taken mod 7 on `1..=7`:
//! `e_i² = −1`, `e_i e_j = −e_j e_i` for `i ≠ j`, and
//! `e_i e_{i+1} = e_{i+3}`, `e_{i+1} e_{i+3} = e_i`, `e_{i+3} e_i = e_{i+1}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{for_tuples, verify_variety, FiniteAlgebra, Variety, Vector};
use crate::catalog;
use crate::envelope::{monomials_up_to, EnvContext, EnvElement};
use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::scalar::{is_zero, q, Rational};

/// `i + k` on `1..=7`, wrapping mod 7.
pub fn idx(i: usize, k: usize) -> usize {
    (i - 1 + k) % 7 + 1
}

/// `e_i e_j = sign · e_k` on the full basis `0 = 1, 1..=7 = e_i`.
fn unit_product(i: usize, j: usize) -> (i64, usize) {
    match (i, j) {
        (0, j) => (1, j),
        (i, 0) => (1, i),
        (i, j) if i == j => (-1, 0),
        (i, j) => {
            for s in 1..=7 {
                let t = [s, idx(s, 1), idx(s, 3)];
                for r in 0..3 {
                    let (p, q, k) = (t[r], t[(r + 1) % 3], t[(r + 2) % 3]);
                    if (p, q) == (i, j) {
                        return (1, k);
                    }
                    if (q, p) == (i, j) {
                        return (-1, k);
                    }
                }
            }
            unreachable!("every pair of distinct units lies on one line")
        }
    }
}

/// An octonion `c_0 + c_1 e1 + ⋯ + c_7 e7`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Octonion(pub [Rational; 8]);

impl Octonion {
    pub fn zero() -> Self {
        Octonion(std::array::from_fn(|_| q(0)))
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    /// Basis element `0 = 1`, `i = e_i`.
    pub fn basis(i: usize) -> Self {
        let mut o = Self::zero();
        o.0[i] = q(1);
        o
    }

    /// The unit `e_i`, `i ∈ 1..=7`.
    pub fn e(i: usize) -> Self {
        assert!((1..=7).contains(&i), "octonion units are e1..e7");
        Self::basis(i)
    }

    pub fn scalar(c: Rational) -> Self {
        let mut o = Self::zero();
        o.0[0] = c;
        o
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(is_zero)
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Octonion(std::array::from_fn(|i| &self.0[i] * c))
    }

    /// `xy − yx`.
    pub fn commutator(&self, other: &Octonion) -> Octonion {
        oct_mul(self, other) - oct_mul(other, self)
    }

    /// `xy + yx`.
    pub fn circle(&self, other: &Octonion) -> Octonion {
        oct_mul(self, other) + oct_mul(other, self)
    }

    /// `(xy)z − x(yz)`.
    pub fn associator(&self, y: &Octonion, z: &Octonion) -> Octonion {
        oct_mul(&oct_mul(self, y), z) - oct_mul(self, &oct_mul(y, z))
    }

    /// `[[x,y],z] + [[y,z],x] + [[z,x],y]`.
    pub fn jacobian(&self, y: &Octonion, z: &Octonion) -> Octonion {
        self.commutator(y).commutator(z)
            + y.commutator(z).commutator(self)
            + z.commutator(self).commutator(y)
    }

    /// If this is `±e_k` (or `±1` with `k = 0`), returns `(±1, k)`.
    pub fn as_signed_unit(&self) -> Option<(i64, usize)> {
        let nz: Vec<usize> = (0..8).filter(|&i| !is_zero(&self.0[i])).collect();
        match nz[..] {
            [k] if self.0[k] == q(1) => Some((1, k)),
            [k] if self.0[k] == q(-1) => Some((-1, k)),
            _ => None,
        }
    }
}

impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = labels();
        let s = crate::algebra::format_terms(
            self.0
                .iter()
                .zip(&labels)
                .filter(|(c, _)| !is_zero(*c))
                .map(|(c, l)| (c, if l == "1" { "" } else { l.as_str() })),
        );
        f.write_str(&s)
    }
}

/// Bilinear extension of the unit table; `1` is the identity.
pub fn oct_mul(u: &Octonion, v: &Octonion) -> Octonion {
    let mut out = Octonion::zero();
    for i in 0..8 {
        if is_zero(&u.0[i]) {
            continue;
        }
        for j in 0..8 {
            if is_zero(&v.0[j]) {
                continue;
            }
            let (s, k) = unit_product(i, j);
            let c = &u.0[i] * &v.0[j];
            if s > 0 {
                out.0[k] += c;
            } else {
                out.0[k] -= c;
            }
        }
    }
    out
}

impl Add for Octonion {
    type Output = Octonion;
    fn add(self, rhs: Octonion) -> Octonion {
        Octonion(std::array::from_fn(|i| &self.0[i] + &rhs.0[i]))
    }
}

impl Sub for Octonion {
    type Output = Octonion;
    fn sub(self, rhs: Octonion) -> Octonion {
        Octonion(std::array::from_fn(|i| &self.0[i] - &rhs.0[i]))
    }
}

impl Neg for Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        Octonion(self.0.map(|c| -c))
    }
}

impl Mul for &Octonion {
    type Output = Octonion;
    fn mul(self, rhs: &Octonion) -> Octonion {
        oct_mul(self, rhs)
    }
}

fn labels() -> Vec<String> {
    std::iter::once("1".to_string())
        .chain((1..=7).map(|i| format!("e{i}")))
        .collect()
}

/// The octonions as an 8-dimensional structure-constant algebra on
/// `1, e1, ..., e7`.
pub fn octonion_algebra() -> FiniteAlgebra<Rational> {
    let labels = labels();
    let table = (0..8)
        .map(|i| {
            (0..8)
                .map(|j| oct_mul(&Octonion::basis(i), &Octonion::basis(j)).0.to_vec())
                .collect()
        })
        .collect();
    FiniteAlgebra::new("octonions", labels, table).expect("square table")
}

/// Commutator algebra of the pure imaginary octonions on `e1, ..., e7`.
pub fn traceless_malcev() -> FiniteAlgebra<Rational> {
    let labels: Vec<String> = (1..=7).map(|i| format!("e{i}")).collect();
    let table = (1..=7)
        .map(|i| {
            (1..=7)
                .map(|j| {
                    let c = Octonion::e(i).commutator(&Octonion::e(j));
                    debug_assert!(is_zero(&c.0[0]));
                    c.0[1..].to_vec()
                })
                .collect()
        })
        .collect();
    FiniteAlgebra::new("traceless octonions", labels, table).expect("square table")
}

/// Basis map `e_i ↦ signs[i] · f_{perm[i]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn identity(dim: usize) -> Self {
        SignedPermutation {
            perm: (0..dim).collect(),
            signs: vec![1; dim],
        }
    }

    /// Image of a coordinate vector.
    pub fn apply(&self, v: &Vector<Rational>) -> Vector<Rational> {
        let mut out = Vector::zero(v.dim());
        for (i, c) in v.0.iter().enumerate() {
            out.0[self.perm[i]] = if self.signs[i] > 0 {
                c.clone()
            } else {
                -c.clone()
            };
        }
        out
    }

    /// Whether the map carries the product of `a` onto that of `b`.
    pub fn is_homomorphism(
        &self,
        a: &FiniteAlgebra<Rational>,
        b: &FiniteAlgebra<Rational>,
    ) -> bool {
        let n = a.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let lhs = self.apply(&a.mul(&a.basis_vector(i), &a.basis_vector(j)));
                let rhs = b.mul(
                    &self.apply(&a.basis_vector(i)),
                    &self.apply(&a.basis_vector(j)),
                );
                lhs == rhs
            })
        })
    }

    /// `e_1 ↦ −f_3, ...` in the algebras' labels.
    pub fn describe(
        &self,
        a: &FiniteAlgebra<Rational>,
        b: &FiniteAlgebra<Rational>,
    ) -> Vec<String> {
        (0..self.perm.len())
            .map(|i| {
                let sign = if self.signs[i] < 0 { "-" } else { "" };
                format!("{} -> {sign}{}", a.labels()[i], b.labels()[self.perm[i]])
            })
            .collect()
    }
}

/// Searches the signed permutations of the basis for an isomorphism
/// `a → b`. Branches on the image of the first basis vector run in
/// parallel; within a branch partial assignments are pruned as soon as an
/// assigned product disagrees. Returns the first map in lexicographic
/// order of `(perm, signs)` branches, or `None`.
pub fn find_signed_isomorphism(
    a: &FiniteAlgebra<Rational>,
    b: &FiniteAlgebra<Rational>,
) -> Option<SignedPermutation> {
    let n = a.dim();
    if n != b.dim() || n == 0 {
        return None;
    }
    let a_tab = a.dense_table();
    let b_tab = b.dense_table();
    let roots: Vec<(usize, i8)> = (0..n).flat_map(|p| [(p, 1), (p, -1)]).collect();
    let found: Vec<Option<SignedPermutation>> = roots
        .par_iter()
        .map(|&(p, s)| {
            let mut st = Search {
                n,
                a: &a_tab,
                b: &b_tab,
                perm: vec![p],
                signs: vec![s],
                used: vec![false; n],
            };
            st.used[p] = true;
            st.extend().then_some(SignedPermutation {
                perm: st.perm,
                signs: st.signs,
            })
        })
        .collect();
    found.into_iter().flatten().next()
}

/// Searches for a signed-permutation isomorphism from the traceless
/// octonions onto the non-split 7-dimensional Malcev table and records the
/// witness.
pub fn verify_octonion_isomorphism() -> VerificationReport {
    let t = traceless_malcev();
    let m = catalog::malcev_nonsplit();
    let mut report = VerificationReport::new(
        "traceless octonions are isomorphic to M_nonsplit by a signed permutation",
    );
    match find_signed_isomorphism(&t, &m) {
        None => report.expect(false, || "no signed permutation is an isomorphism".into()),
        Some(phi) => {
            let hom = phi.is_homomorphism(&t, &m);
            report.record(
                || phi.describe(&t, &m),
                (!hom).then(|| "witness is not a homomorphism".into()),
            );
        }
    }
    report
}

struct Search<'a> {
    n: usize,
    a: &'a [Vec<Vec<Rational>>],
    b: &'a [Vec<Vec<Rational>>],
    perm: Vec<usize>,
    signs: Vec<i8>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self) -> bool {
        let i = self.perm.len();
        if i == self.n {
            return self.consistent(i);
        }
        for p in 0..self.n {
            if self.used[p] {
                continue;
            }
            for s in [1i8, -1] {
                self.perm.push(p);
                self.signs.push(s);
                self.used[p] = true;
                if self.consistent(i + 1) && self.extend() {
                    return true;
                }
                self.used[p] = false;
                self.perm.pop();
                self.signs.pop();
            }
        }
        false
    }

    /// Checks every product `e_j e_k` with `j, k < m` whose value only
    /// involves already-assigned basis vectors; products reaching outside
    /// must at least land on unused targets.
    fn consistent(&self, m: usize) -> bool {
        let sign = |k: usize| if self.signs[k] > 0 { q(1) } else { q(-1) };
        for j in 0..m {
            for k in 0..m {
                let lhs = &self.a[j][k];
                let rhs = &self.b[self.perm[j]][self.perm[k]];
                let scale = sign(j) * sign(k);
                // φ(e_j e_k) = Σ_l c_l s_l f_{π l} must equal s_j s_k f_{πj} f_{πk}.
                let mut expected = vec![q(0); self.n];
                let mut complete = true;
                for (l, c) in lhs.iter().enumerate() {
                    if is_zero(c) {
                        continue;
                    }
                    if l >= m {
                        complete = false;
                        continue;
                    }
                    expected[self.perm[l]] = c * sign(l);
                }
                let actual: Vec<Rational> = rhs.iter().map(|c| c * &scale).collect();
                if complete {
                    if expected != actual {
                        return false;
                    }
                } else {
                    // Assigned coordinates must match; the rest may only
                    // sit on targets not yet used.
                    for t in 0..self.n {
                        let assigned = self.perm[..m].contains(&t);
                        if assigned && expected[t] != actual[t] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

fn unit(i: usize) -> Octonion {
    Octonion::e(i)
}

fn show(o: &Octonion) -> String {
    o.to_string()
}

fn residual(o: Octonion) -> Option<String> {
    (!o.is_zero()).then(|| show(&o))
}

fn ename(i: usize) -> String {
    format!("e{i}")
}

fn equal(got: &Octonion, want: &Octonion) -> Option<String> {
    (got != want).then(|| format!("{} != {}", show(got), show(want)))
}

/// Checks inside the octonions every identity and derived relation used to
/// show that the alternative envelope of the traceless octonions is the
/// octonions, one section per step.
pub fn verify_octonion_structure() -> VerificationReport {
    let mut report = VerificationReport::new("octonion structure chain");
    let o = octonion_algebra();
    let all: Vec<Octonion> = (0..8).map(Octonion::basis).collect();
    let two = q(2);

    // Multiplication table.
    let mut s = VerificationReport::new(
        "unit table: e_i^2 = -1, e_i e_j = -e_j e_i, e_i e_(i+1) = e_(i+3)",
    );
    for i in 1..=7 {
        s.record(
            || vec![format!("e{i}^2")],
            equal(&(&unit(i) * &unit(i)), &Octonion::scalar(q(-1))),
        );
        s.record(
            || vec![format!("e{i}e{}", idx(i, 1))],
            equal(&(&unit(i) * &unit(idx(i, 1))), &unit(idx(i, 3))),
        );
        for j in 1..=7 {
            if i != j {
                s.record(
                    || vec![ename(i), ename(j)],
                    residual(&unit(i) * &unit(j) + &unit(j) * &unit(i)),
                );
            }
        }
        s.record(
            || vec![format!("1e{i}")],
            equal(&(&Octonion::one() * &unit(i)), &unit(i)),
        );
    }
    report.push_section(s);

    let mut s = VerificationReport::new("octonions are alternative");
    s.absorb(verify_variety(&o, Variety::LeftAlternative));
    s.absorb(verify_variety(&o, Variety::RightAlternative));
    report.push_section(s);

    // Bracket table of the traceless part.
    let mut s = VerificationReport::new("traceless brackets: [e_i,e_(i+1)] = 2e_(i+3) and cyclic");
    for i in 1..=7 {
        let (a, b, c) = (i, idx(i, 1), idx(i, 3));
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            s.record(
                || vec![ename(x), ename(y)],
                equal(&unit(x).commutator(&unit(y)), &unit(z).scaled(&two)),
            );
        }
    }
    let m = traceless_malcev();
    s.absorb(verify_variety(&m, Variety::Anticommutative));
    s.absorb(verify_variety(&m, Variety::Malcev));
    report.push_section(s);

    // (x,y,z) = J(x,y,z)/6 on all basis triples.
    let sixth = q(1) / q(6);
    let mut s = VerificationReport::new("associator equals J/6");
    for_tuples(8, 3, |t| {
        let (x, y, z) = (&all[t[0]], &all[t[1]], &all[t[2]]);
        s.record(
            || t.iter().map(|&k| label(k)).collect(),
            residual(x.associator(y, z) - x.jacobian(y, z).scaled(&sixth)),
        );
    });
    report.push_section(s);

    // The three associator values, through J/6 and directly.
    let lines = |i: usize| {
        [
            ((idx(i, 1), idx(i, 2), idx(i, 5)), i),
            ((idx(i, 4), idx(i, 1), idx(i, 6)), i),
            ((idx(i, 1), idx(i, 3), idx(i, 2)), idx(i, 6)),
        ]
    };
    let mut s = VerificationReport::new(
        "associator values: (e_(i+1),e_(i+2),e_(i+5)) = 2e_i and companions",
    );
    for i in 1..=7 {
        for ((x, y, z), k) in lines(i) {
            let want = unit(k).scaled(&two);
            let args = || vec![ename(x), ename(y), ename(z)];
            s.record(
                args,
                equal(&unit(x).jacobian(&unit(y), &unit(z)).scaled(&sixth), &want),
            );
            s.record(args, equal(&unit(x).associator(&unit(y), &unit(z)), &want));
        }
    }
    report.push_section(s);

    // [x,y] ∘ (x,y,z) = 0 and the orthogonality it forces.
    let mut s = VerificationReport::new("[x,y] o (x,y,z) = 0, hence e_i o e_j = 0 for i != j");
    for_tuples(8, 3, |t| {
        let (x, y, z) = (&all[t[0]], &all[t[1]], &all[t[2]]);
        s.record(
            || t.iter().map(|&k| label(k)).collect(),
            residual(x.commutator(y).circle(&x.associator(y, z))),
        );
    });
    let mut offsets = Vec::new();
    for i in 1..=7 {
        for ((x, y, z), k) in lines(i) {
            // [x,y] = ±2e_m, (x,y,z) = 2e_k, so the identity reads ±4 e_m ∘ e_k = 0.
            let br = unit(x).commutator(&unit(y));
            let Some((_, m)) = br.scaled(&(q(1) / q(2))).as_signed_unit() else {
                s.expect(false, || format!("[e{x},e{y}] is not ±2 times a unit"));
                continue;
            };
            s.expect(m != k && m != 0, || {
                format!("[e{x},e{y}] and (e{x},e{y},e{z}) are proportional")
            });
            offsets.push((m + 7 - k) % 7);
            offsets.push((k + 7 - m) % 7);
            s.record(
                || vec![ename(m), ename(k)],
                residual(unit(m).circle(&unit(k))),
            );
        }
    }
    offsets.sort_unstable();
    offsets.dedup();
    s.expect(offsets == [1, 2, 3, 4, 5, 6], || {
        format!("index differences covered: {offsets:?}")
    });
    report.push_section(s);

    // Distinct units anticommute, and the product relations follow.
    let mut s = VerificationReport::new("distinct units anticommute; e_i e_j = [e_i,e_j]/2 = ±e_k");
    for i in 1..=7 {
        for j in 1..=7 {
            if i == j {
                continue;
            }
            let p = &unit(i) * &unit(j);
            s.record(
                || vec![ename(i), ename(j)],
                equal(&p, &unit(i).commutator(&unit(j)).scaled(&(q(1) / q(2)))),
            );
            s.expect(matches!(p.as_signed_unit(), Some((_, k)) if k != 0), || {
                format!("e{i}e{j} = {p}")
            });
        }
    }
    for i in 1..=7 {
        let (a, b, c) = (i, idx(i, 1), idx(i, 3));
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            s.record(
                || vec![ename(x), ename(y)],
                equal(&(&unit(x) * &unit(y)), &unit(z)),
            );
        }
    }
    // e1, e2, e3 generate: e1e2 = e4, e2e3 = e5, e3e4 = e6, e4e5 = e7.
    for (x, y, z) in [(1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7)] {
        s.record(
            || vec![ename(x), ename(y)],
            equal(&(&unit(x) * &unit(y)), &unit(z)),
        );
    }
    report.push_section(s);

    // Linearized identity, exhaustively and on the substitution that isolates e_i^2.
    let mut s = VerificationReport::new("linearized [x,y] o (x,y,z) identity");
    let lin = |x: &Octonion, y: &Octonion, r: &Octonion, sv: &Octonion, z: &Octonion| {
        [
            x.commutator(y).circle(&r.associator(sv, z)),
            r.commutator(y).circle(&x.associator(sv, z)),
            x.commutator(sv).circle(&r.associator(y, z)),
            r.commutator(sv).circle(&x.associator(y, z)),
        ]
    };
    let rows: Vec<Vec<(Vec<usize>, Option<String>)>> = (0..8usize)
        .into_par_iter()
        .map(|x| {
            let mut out = Vec::new();
            for_tuples(8, 4, |t| {
                let terms = lin(&all[x], &all[t[0]], &all[t[1]], &all[t[2]], &all[t[3]]);
                let sum = terms.into_iter().fold(Octonion::zero(), |acc, v| acc + v);
                out.push((vec![x, t[0], t[1], t[2], t[3]], residual(sum)));
            });
            out
        })
        .collect();
    for (t, r) in rows.into_iter().flatten() {
        s.record(|| t.iter().map(|&k| label(k)).collect(), r);
    }
    for i in 1..=7 {
        let (x, y, r, sv, z) = (idx(i, 2), idx(i, 6), idx(i, 1), idx(i, 2), idx(i, 5));
        let args = || vec![ename(x), ename(y), ename(r), ename(sv), ename(z)];
        let [t1, t2, t3, t4] = lin(&unit(x), &unit(y), &unit(r), &unit(sv), &unit(z));
        s.record(args, residual(t2));
        s.record(args, residual(t3));
        // The surviving terms are (2e_i) o (2e_i) and (2e_(i+4)) o (-2e_(i+4)).
        let i4 = idx(i, 4);
        s.record(
            args,
            equal(&unit(x).commutator(&unit(y)), &unit(i).scaled(&two)),
        );
        s.record(
            args,
            equal(
                &unit(r).associator(&unit(sv), &unit(z)),
                &unit(i).scaled(&two),
            ),
        );
        s.record(
            args,
            equal(&unit(r).commutator(&unit(sv)), &unit(i4).scaled(&two)),
        );
        s.record(
            args,
            equal(
                &unit(x).associator(&unit(y), &unit(z)),
                &unit(i4).scaled(&-two.clone()),
            ),
        );
        let sq = |k: usize| &unit(k) * &unit(k);
        let eight = q(8);
        s.record(
            args,
            equal(
                &(t1.clone() + t4.clone()),
                &(sq(i).scaled(&eight) - sq(i4).scaled(&eight)),
            ),
        );
        s.record(args, residual(t1 + t4));
    }
    report.push_section(s);

    // All squares agree; a = e_i^2 = -1.
    let a = &unit(1) * &unit(1);
    let mut s =
        VerificationReport::new("8e_i^2 - 8e_(i+4)^2 = 0, so every e_i^2 equals a common a");
    for i in 1..=7 {
        let sq = &unit(i) * &unit(i);
        s.record(
            || vec![ename(i), ename(idx(i, 4))],
            residual(sq.scaled(&q(8)) - (&unit(idx(i, 4)) * &unit(idx(i, 4))).scaled(&q(8))),
        );
        s.record(|| vec![ename(i)], equal(&sq, &a));
    }
    s.record(|| vec!["a".into()], equal(&a, &Octonion::scalar(q(-1))));
    report.push_section(s);

    let mut s = VerificationReport::new("a e_j = e_j a = -e_j");
    for i in 1..=7 {
        let j = idx(i, 1);
        // e_i (e_i e_(i+1)) = e_i e_(i+3) = -e_(i+1), and by left alternativity also a e_(i+1).
        s.record(
            || vec![ename(i), ename(j)],
            equal(&(&unit(i) * &unit(idx(i, 3))), &-unit(j)),
        );
        s.record(
            || vec![ename(i), ename(j)],
            equal(&(&unit(i) * &(&unit(i) * &unit(j))), &(&a * &unit(j))),
        );
        s.record(
            || vec!["a".into(), ename(j)],
            equal(&(&a * &unit(j)), &-unit(j)),
        );
        s.record(
            || vec![ename(j), "a".into()],
            equal(&(&unit(j) * &a), &-unit(j)),
        );
    }
    report.push_section(s);

    let mut s = VerificationReport::new("a^2 = -a");
    for i in 1..=7 {
        // a^2 = a e_i^2 = (a e_i) e_i = -e_i^2
        s.record(
            || vec![ename(i)],
            equal(
                &(&a * &(&unit(i) * &unit(i))),
                &(&(&a * &unit(i)) * &unit(i)),
            ),
        );
        s.record(
            || vec![ename(i)],
            equal(&(&(&a * &unit(i)) * &unit(i)), &-(&unit(i) * &unit(i))),
        );
    }
    s.record(|| vec!["a".into()], equal(&(&a * &a), &-a.clone()));
    report.push_section(s);

    let mut s = VerificationReport::new("span{a, e_1..e_7} is closed with identity -a");
    let id = -a.clone();
    let span: Vec<Octonion> = std::iter::once(a.clone())
        .chain((1..=7).map(unit))
        .collect();
    for (p, x) in span.iter().enumerate() {
        s.record(|| vec![span_label(p)], equal(&(&id * x), x));
        s.record(|| vec![span_label(p)], equal(&(x * &id), x));
        for (r, y) in span.iter().enumerate() {
            let xy = x * y;
            let inside = xy.as_signed_unit().is_some() || xy.is_zero();
            s.expect(inside, || {
                format!("{} {} = {xy}", span_label(p), span_label(r))
            });
        }
    }
    report.push_section(s);

    report
}

fn label(k: usize) -> String {
    if k == 0 {
        "1".into()
    } else {
        ename(k)
    }
}

fn span_label(p: usize) -> String {
    if p == 0 {
        "a".into()
    } else {
        ename(p)
    }
}

/// Forms `c = Σ x_i x_i` over the basis of the 7-dimensional simple Malcev
/// algebra inside its universal enveloping algebra and checks that it lies
/// in the nucleus and center, tested against all monomials of degree `≤ cap`.
pub fn verify_um_center(cap: u32) -> Result<VerificationReport> {
    if cap < 1 {
        return Err(Error::Unsupported("degree cap must be at least 1".into()));
    }
    let ctx = EnvContext::new(catalog::malcev_nonsplit())?;
    let c = casimir(&ctx);
    let mut report = ctx.nucleus_center_check(&c, cap)?;
    report.name = format!(
        "c = {} lies in N(U(M)) and Z(U(M)), degree <= {cap}",
        ctx.display(&c)
    );
    let mut gens = VerificationReport::new("c commutes and associates with generators");
    let one = ctx.one();
    gens.record(
        || vec!["1".into()],
        (!ctx.commutator(&one, &c)?.is_zero()).then(|| "[1,c] != 0".into()),
    );
    let basis = monomials_up_to(ctx.dim(), 1);
    for i in 0..ctx.dim() {
        let g = ctx.generator(i);
        let comm = ctx.commutator(&c, &g)?;
        gens.record(
            || vec![ctx.labels()[i].clone()],
            (!comm.is_zero()).then(|| ctx.display(&comm)),
        );
        for m in &basis {
            let y = EnvElement::monomial(m.clone());
            for r in [
                ctx.associator(&c, &g, &y)?,
                ctx.associator(&g, &c, &y)?,
                ctx.associator(&g, &y, &c)?,
            ] {
                gens.record(
                    || vec![ctx.labels()[i].clone(), m.display(ctx.labels())],
                    (!r.is_zero()).then(|| ctx.display(&r)),
                );
            }
        }
    }
    report.sections.insert(0, gens);
    Ok(report)
}

/// `Σ x_i x_i` over the basis of the algebra.
pub fn casimir(ctx: &EnvContext<Rational>) -> EnvElement<Rational> {
    let mut c = ctx.zero();
    for i in 0..ctx.dim() {
        let g = ctx.generator(i);
        c.add_assign(&ctx.mul(&g, &g));
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_products() {
        assert_eq!(&unit(1) * &unit(2), unit(4));
        assert_eq!(&unit(2) * &unit(1), -unit(4));
        assert_eq!(&unit(3) * &unit(3), Octonion::scalar(q(-1)));
        assert_eq!(unit(1).circle(&unit(5)), Octonion::zero());
        assert_eq!(
            unit(2).associator(&unit(3), &unit(6)),
            unit(1).scaled(&q(2))
        );
        assert_eq!(unit(2).jacobian(&unit(3), &unit(6)), unit(1).scaled(&q(12)));
        let a = Octonion::scalar(q(-1));
        assert_eq!(&a * &a, -a.clone());
    }

    #[test]
    fn index_wraps() {
        assert_eq!(idx(7, 1), 1);
        assert_eq!(idx(5, 6), 4);
        assert_eq!(idx(1, 0), 1);
    }

    #[test]
    fn traceless_brackets() {
        let m = traceless_malcev();
        assert_eq!(
            m.format_vector(&m.mul(&m.basis_vector(0), &m.basis_vector(1))),
            "2e4"
        );
        assert_eq!(
            m.format_vector(&m.mul(&m.basis_vector(1), &m.basis_vector(3))),
            "2e1"
        );
        assert!(m.mul(&m.basis_vector(0), &m.basis_vector(0)).is_zero());
        assert!(verify_variety(&m, Variety::Malcev).passed());
    }

    #[test]
    fn octonions_alternative_and_commutator_splits() {
        let o = octonion_algebra();
        assert!(verify_variety(&o, Variety::LeftAlternative).passed());
        assert!(verify_variety(&o, Variety::RightAlternative).passed());
        assert!(!verify_variety(&o, Variety::Associative).passed());
        let c = o.commutator_algebra();
        for j in 0..8 {
            assert!(c.basis_product(0, j).is_empty());
            assert!(c.basis_product(j, 0).is_empty());
        }
    }

    #[test]
    fn isomorphism_search() {
        let t = traceless_malcev();
        let m = catalog::malcev_nonsplit();
        let phi = find_signed_isomorphism(&t, &m).expect("table is the traceless octonions");
        assert!(phi.is_homomorphism(&t, &m));
        assert_eq!(
            find_signed_isomorphism(&m, &m),
            Some(SignedPermutation::identity(7))
        );
        let abelian = FiniteAlgebra::<Rational>::new(
            "abelian",
            (0..7).map(|i| format!("u{i}")).collect(),
            vec![vec![vec![q(0); 7]; 7]; 7],
        )
        .unwrap();
        assert_eq!(find_signed_isomorphism(&m, &abelian), None);
    }

    #[test]
    fn isomorphism_report() {
        let r = verify_octonion_isomorphism();
        assert!(r.passed(), "{r}");
        assert_eq!(r.checked, 1);
    }

    #[test]
    fn structure_chain_passes() {
        let r = verify_octonion_structure();
        assert!(r.passed(), "{r}");
        assert!(r.sections.len() >= 10);
    }

    #[test]
    fn display() {
        let x = Octonion::scalar(q(-1)) + unit(3).scaled(&q(2));
        assert_eq!(x.to_string(), "-1 + 2e3");
    }
}

#[cfg(test)]
mod center_tests {
    use super::*;

    #[test]
    fn casimir_is_central_to_degree_two() {
        let r = verify_um_center(2).unwrap();
        assert!(r.passed(), "{r}");
    }
}

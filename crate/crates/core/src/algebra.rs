//! Finite-dimensional algebras given by structure constants, and checks of
//! the identities defining the varieties used throughout the crate.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::scalar::{is_one, is_zero, parse_rational, Rational, Scalar};

/// Dense coordinate vector over an algebra's basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector<F>(pub Vec<F>);

impl<F: Scalar> Vector<F> {
    pub fn zero(dim: usize) -> Self {
        Vector(vec![F::zero(); dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = F::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(is_zero)
    }

    pub fn add_scaled(&mut self, other: &Vector<F>, c: &F) {
        for (x, y) in self.0.iter_mut().zip(&other.0) {
            if !is_zero(y) {
                let mut t = y.clone();
                t *= c;
                *x += &t;
            }
        }
    }

    pub fn scaled(&self, c: &F) -> Self {
        Vector(
            self.0
                .iter()
                .map(|x| {
                    let mut t = x.clone();
                    t *= c;
                    t
                })
                .collect(),
        )
    }
}

impl<F: Scalar> std::ops::Add for Vector<F> {
    type Output = Vector<F>;
    fn add(mut self, rhs: Vector<F>) -> Vector<F> {
        for (x, y) in self.0.iter_mut().zip(&rhs.0) {
            *x += y;
        }
        self
    }
}

impl<F: Scalar> std::ops::Sub for Vector<F> {
    type Output = Vector<F>;
    fn sub(mut self, rhs: Vector<F>) -> Vector<F> {
        for (x, y) in self.0.iter_mut().zip(&rhs.0) {
            *x -= y;
        }
        self
    }
}

impl<F: Scalar> std::ops::Neg for Vector<F> {
    type Output = Vector<F>;
    fn neg(self) -> Vector<F> {
        Vector(self.0.into_iter().map(|x| -x).collect())
    }
}

/// Algebra with basis `labels` and product `e_i e_j = Σ_k c_{ij}^k e_k`.
///
/// No symmetry is assumed: the same type holds Malcev bracket tables and
/// full multiplication tables.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteAlgebra<F> {
    name: String,
    labels: Vec<String>,
    /// `table[i * dim + j]` is the sparse list of `(k, c_{ij}^k)`.
    table: Vec<Vec<(usize, F)>>,
}

impl<F: Scalar> FiniteAlgebra<F> {
    /// Builds an algebra from a dense `dim × dim × dim` table.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<Vec<Vec<F>>>,
    ) -> Result<Self> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::Parse("algebra must have positive dimension".into()));
        }
        if table.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: table.len(),
            });
        }
        let mut sparse = Vec::with_capacity(dim * dim);
        for row in table {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            for entry in row {
                if entry.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: entry.len(),
                    });
                }
                sparse.push(
                    entry
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| !is_zero(c))
                        .collect(),
                );
            }
        }
        Ok(FiniteAlgebra {
            name: name.into(),
            labels,
            table: sparse,
        })
    }

    /// Builds an algebra from the nonzero products only:
    /// each entry is `(i, j, [(k, c_{ij}^k), ...])`.
    pub fn from_entries(
        name: impl Into<String>,
        labels: &[&str],
        entries: &[(usize, usize, Vec<(usize, F)>)],
    ) -> Self {
        let dim = labels.len();
        let mut table = vec![Vec::new(); dim * dim];
        for (i, j, terms) in entries {
            let mut v = Vector::<F>::zero(dim);
            for (k, c) in terms {
                v.0[*k] += c;
            }
            table[i * dim + j] =
                v.0.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !is_zero(c))
                    .collect();
        }
        FiniteAlgebra {
            name: name.into(),
            labels: labels.iter().map(|s| s.to_string()).collect(),
            table,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `e_i e_j` as a sparse list of `(k, c_{ij}^k)`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, F)] {
        &self.table[i * self.dim() + j]
    }

    /// Coefficient `c_{ij}^k`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> F {
        self.basis_product(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(F::zero)
    }

    pub fn dense_table(&self) -> Vec<Vec<Vec<F>>> {
        let dim = self.dim();
        (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| (0..dim).map(|k| self.structure_constant(i, j, k)).collect())
                    .collect()
            })
            .collect()
    }

    pub fn basis_vector(&self, i: usize) -> Vector<F> {
        Vector::basis(self.dim(), i)
    }

    fn check(&self, v: &Vector<F>) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.dim(),
            });
        }
        Ok(())
    }

    /// `Σ u_i v_j c_{ij}^k e_k`.
    pub fn evaluate_bilinear(&self, u: &Vector<F>, v: &Vector<F>) -> Result<Vector<F>> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.mul(u, v))
    }

    /// Bilinear product without dimension checks.
    pub(crate) fn mul(&self, u: &Vector<F>, v: &Vector<F>) -> Vector<F> {
        let dim = self.dim();
        let mut out = Vector::zero(dim);
        for (i, ui) in u.0.iter().enumerate() {
            if is_zero(ui) {
                continue;
            }
            for (j, vj) in v.0.iter().enumerate() {
                if is_zero(vj) {
                    continue;
                }
                let mut uv = ui.clone();
                uv *= vj;
                for (k, c) in self.basis_product(i, j) {
                    let mut t = c.clone();
                    t *= &uv;
                    out.0[*k] += &t;
                }
            }
        }
        out
    }

    /// `(uv)w − u(vw)`.
    pub(crate) fn associator(&self, u: &Vector<F>, v: &Vector<F>, w: &Vector<F>) -> Vector<F> {
        self.mul(&self.mul(u, v), w) - self.mul(u, &self.mul(v, w))
    }

    /// `J(x,y,z) = [[x,y],z] + [[y,z],x] + [[z,x],y]`, reading this algebra's
    /// product as the bracket.
    pub fn jacobian(&self, x: &Vector<F>, y: &Vector<F>, z: &Vector<F>) -> Result<Vector<F>> {
        self.check(x)?;
        self.check(y)?;
        self.check(z)?;
        Ok(self.jacobian_unchecked(x, y, z))
    }

    pub(crate) fn jacobian_unchecked(
        &self,
        x: &Vector<F>,
        y: &Vector<F>,
        z: &Vector<F>,
    ) -> Vector<F> {
        self.mul(&self.mul(x, y), z) + self.mul(&self.mul(y, z), x) + self.mul(&self.mul(z, x), y)
    }

    /// The algebra on the same basis with product `[u,v] = uv − vu`.
    pub fn commutator_algebra(&self) -> FiniteAlgebra<F> {
        let dim = self.dim();
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut v = Vector::<F>::zero(dim);
                for (k, c) in self.basis_product(i, j) {
                    v.0[*k] += c;
                }
                for (k, c) in self.basis_product(j, i) {
                    v.0[*k] -= c;
                }
                table.push(
                    v.0.into_iter()
                        .enumerate()
                        .filter(|(_, c)| !is_zero(c))
                        .collect(),
                );
            }
        }
        FiniteAlgebra {
            name: format!("{}^-", self.name),
            labels: self.labels.clone(),
            table,
        }
    }

    /// Span of all products `e_i e_j`, as a rank.
    pub fn derived_rank(&self) -> usize {
        let rows: Vec<Vec<F>> = (0..self.dim() * self.dim())
            .map(|ij| {
                let mut v = vec![F::zero(); self.dim()];
                for (k, c) in &self.table[ij] {
                    v[*k] = c.clone();
                }
                v
            })
            .collect();
        crate::linalg::rank(rows)
    }

    /// Pretty form of a vector, e.g. `-6d` or `2x' + h`.
    pub fn format_vector(&self, v: &Vector<F>) -> String {
        format_terms(
            v.0.iter()
                .zip(&self.labels)
                .filter(|(c, _)| !is_zero(*c))
                .map(|(c, l)| (c, l.as_str())),
        )
    }
}

/// Joins `coeff·label` terms with signs, printing `0` for the empty sum.
pub(crate) fn format_terms<'a, F: Scalar>(terms: impl Iterator<Item = (&'a F, &'a str)>) -> String {
    struct Coeff<'a, F>(&'a F);
    impl<F: Scalar> fmt::Display for Coeff<'_, F> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            self.0.write_coeff(f)
        }
    }
    let mut out = String::new();
    for (c, label) in terms {
        let (neg, mag) = if c.is_negative_rational() {
            (true, -c.clone())
        } else {
            (false, c.clone())
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if label.is_empty() {
            out.push_str(&Coeff(&mag).to_string());
        } else {
            if !is_one(&mag) {
                out.push_str(&Coeff(&mag).to_string());
            }
            out.push_str(label);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Identities that can be checked on a structure-constant table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variety {
    Anticommutative,
    Jacobi,
    Malcev,
    LeftAlternative,
    RightAlternative,
    ThirdPowerAssociative,
    Associative,
}

impl Variety {
    pub const ALL: [Variety; 7] = [
        Variety::Anticommutative,
        Variety::Jacobi,
        Variety::Malcev,
        Variety::LeftAlternative,
        Variety::RightAlternative,
        Variety::ThirdPowerAssociative,
        Variety::Associative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variety::Anticommutative => "anticommutative",
            Variety::Jacobi => "jacobi",
            Variety::Malcev => "malcev",
            Variety::LeftAlternative => "left-alternative",
            Variety::RightAlternative => "right-alternative",
            Variety::ThirdPowerAssociative => "third-power-associative",
            Variety::Associative => "associative",
        }
    }
}

impl std::str::FromStr for Variety {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Variety::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown variety {s:?}")))
    }
}

/// Checks a defining identity of `variety` on all basis substitutions.
///
/// Multilinear identities are checked on every basis tuple. For the
/// non-multilinear ones (Malcev, the alternative laws, third-power
/// associativity) both the identity itself on basis elements and its full
/// linearization on basis tuples are checked.
pub fn verify_variety<F: Scalar>(alg: &FiniteAlgebra<F>, variety: Variety) -> VerificationReport {
    let dim = alg.dim();
    let e: Vec<Vector<F>> = (0..dim).map(|i| alg.basis_vector(i)).collect();
    let lab =
        |idx: &[usize]| -> Vec<String> { idx.iter().map(|&i| alg.labels()[i].clone()).collect() };
    let residual = |v: Vector<F>| {
        if v.is_zero() {
            None
        } else {
            Some(alg.format_vector(&v))
        }
    };
    let mut report = VerificationReport::new(format!("{} is {}", alg.name(), variety.name()));

    match variety {
        Variety::Anticommutative => {
            for i in 0..dim {
                report.record(|| lab(&[i, i]), residual(alg.mul(&e[i], &e[i])));
                for j in i + 1..dim {
                    let s = alg.mul(&e[i], &e[j]) + alg.mul(&e[j], &e[i]);
                    report.record(|| lab(&[i, j]), residual(s));
                }
            }
        }
        Variety::Jacobi => {
            for_tuples(dim, 3, |t| {
                report.record(
                    || lab(t),
                    residual(alg.jacobian_unchecked(&e[t[0]], &e[t[1]], &e[t[2]])),
                );
            });
        }
        Variety::Malcev => {
            // [J(a,b,c),a] = J(a,b,[a,c])
            let malcev = |a: &Vector<F>, b: &Vector<F>, c: &Vector<F>| {
                alg.mul(&alg.jacobian_unchecked(a, b, c), a)
                    - alg.jacobian_unchecked(a, b, &alg.mul(a, c))
            };
            for_tuples(dim, 3, |t| {
                report.record(|| lab(t), residual(malcev(&e[t[0]], &e[t[1]], &e[t[2]])));
            });
            // linearized in a, with d the second copy
            for_tuples(dim, 4, |t| {
                let (a, b, c, d) = (&e[t[0]], &e[t[1]], &e[t[2]], &e[t[3]]);
                let lhs = alg.mul(&alg.jacobian_unchecked(a, b, c), d)
                    + alg.mul(&alg.jacobian_unchecked(d, b, c), a);
                let rhs = alg.jacobian_unchecked(a, b, &alg.mul(d, c))
                    + alg.jacobian_unchecked(d, b, &alg.mul(a, c));
                report.record(|| lab(t), residual(lhs - rhs));
            });
        }
        Variety::LeftAlternative => {
            for_tuples(dim, 2, |t| {
                report.record(
                    || lab(t),
                    residual(alg.associator(&e[t[0]], &e[t[0]], &e[t[1]])),
                );
            });
            for_tuples(dim, 3, |t| {
                let (a, c, b) = (&e[t[0]], &e[t[1]], &e[t[2]]);
                report.record(
                    || lab(t),
                    residual(alg.associator(a, c, b) + alg.associator(c, a, b)),
                );
            });
        }
        Variety::RightAlternative => {
            for_tuples(dim, 2, |t| {
                report.record(
                    || lab(t),
                    residual(alg.associator(&e[t[1]], &e[t[0]], &e[t[0]])),
                );
            });
            for_tuples(dim, 3, |t| {
                let (b, a, c) = (&e[t[0]], &e[t[1]], &e[t[2]]);
                report.record(
                    || lab(t),
                    residual(alg.associator(b, a, c) + alg.associator(b, c, a)),
                );
            });
        }
        Variety::ThirdPowerAssociative => {
            for i in 0..dim {
                report.record(|| lab(&[i]), residual(alg.associator(&e[i], &e[i], &e[i])));
            }
            for_tuples(dim, 3, |t| {
                let mut sum = Vector::zero(dim);
                for p in PERMS3 {
                    sum = sum + alg.associator(&e[t[p[0]]], &e[t[p[1]]], &e[t[p[2]]]);
                }
                report.record(|| lab(t), residual(sum));
            });
        }
        Variety::Associative => {
            for_tuples(dim, 3, |t| {
                report.record(
                    || lab(t),
                    residual(alg.associator(&e[t[0]], &e[t[1]], &e[t[2]])),
                );
            });
        }
    }
    report
}

pub(crate) const PERMS3: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Calls `f` on every tuple in `{0..dim}^len`, in lexicographic order.
pub(crate) fn for_tuples(dim: usize, len: usize, mut f: impl FnMut(&[usize])) {
    let mut t = vec![0usize; len];
    loop {
        f(&t);
        let mut pos = len;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            t[pos] += 1;
            if t[pos] < dim {
                break;
            }
            t[pos] = 0;
        }
    }
}

/// Serialized form: `table[i][j][k]` is `c_{ij}^k` as a rational string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub name: String,
    pub dim: usize,
    pub labels: Vec<String>,
    pub table: Vec<Vec<Vec<String>>>,
}

impl FiniteAlgebra<Rational> {
    /// Embeds a rational algebra into a larger field.
    pub fn convert<G: Scalar>(&self) -> FiniteAlgebra<G> {
        FiniteAlgebra {
            name: self.name.clone(),
            labels: self.labels.clone(),
            table: self
                .table
                .iter()
                .map(|e| e.iter().map(|(k, c)| (*k, G::from_rational(c))).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            name: self.name.clone(),
            dim: self.dim(),
            labels: self.labels.clone(),
            table: self
                .dense_table()
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|e| e.into_iter().map(|c| c.to_string()).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_json(json: &AlgebraJson) -> Result<Self> {
        if json.labels.len() != json.dim {
            return Err(Error::DimensionMismatch {
                expected: json.dim,
                got: json.labels.len(),
            });
        }
        let mut seen = std::collections::HashSet::new();
        for l in &json.labels {
            if l.is_empty() || !seen.insert(l) {
                return Err(Error::Parse(format!(
                    "labels must be distinct and nonempty: {:?}",
                    json.labels
                )));
            }
        }
        let table = json
            .table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| {
                        e.iter()
                            .map(|s| parse_rational(s))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteAlgebra::new(json.name.clone(), json.labels.clone(), table)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: AlgebraJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&json)
    }
}

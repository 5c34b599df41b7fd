use std::fmt::Write;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// PBW basis monomial, stored as the exponent of each ordered generator.
///
/// The exponent vector `(n_1, ..., n_dim)` stands for the left-tapped product
/// `a_{i_1}(a_{i_2}(⋯(a_{i_{n-1}} a_{i_n})⋯))` with `i_1 ≤ ⋯ ≤ i_n`. Read as
/// a commutative monomial it is the image under the linear isomorphism onto
/// the polynomial algebra, so the same value serves both sides.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(dim: usize) -> Self {
        Monomial(SmallVec::from_elem(0, dim))
    }

    pub fn generator(dim: usize, i: usize) -> Self {
        let mut m = Self::one(dim);
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Smallest generator index present.
    pub fn first_generator(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    /// Splits `x = b y` with `b` the first generator.
    pub fn split_first(&self) -> Option<(usize, Monomial)> {
        let b = self.first_generator()?;
        let mut y = self.clone();
        y.0[b] -= 1;
        Some((b, y))
    }

    /// The monomial with one more factor of generator `i`.
    pub fn times_generator(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.0[i] += 1;
        m
    }

    /// Commutative product (sum of exponent vectors).
    pub fn mul_commutative(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn with_exponent(&self, i: usize, e: u32) -> Monomial {
        let mut m = self.clone();
        m.0[i] = e;
        m
    }

    /// `ab²c²`-style rendering; the unit prints as `1`.
    pub fn display(&self, labels: &[String]) -> String {
        let mut s = String::new();
        for (e, l) in self.0.iter().zip(labels) {
            match e {
                0 => {}
                1 => s.push_str(l),
                _ => {
                    s.push_str(l);
                    s.push_str(&superscript(*e));
                }
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    /// ASCII form `a b^2 c^2` suitable for re-parsing.
    pub fn display_ascii(&self, labels: &[String]) -> String {
        let mut s = String::new();
        for (e, l) in self.0.iter().zip(labels) {
            match e {
                0 => {}
                1 => s.push_str(l),
                _ => {
                    let _ = write!(s, "{l}^{e}");
                }
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    /// Parses juxtaposed generator names with optional exponents, e.g.
    /// `a^2bc`, `ab²c²` or `xy'^3`. Names are matched longest first; `1` is
    /// the unit. Generators may appear in any order (the result is the
    /// sorted PBW monomial).
    pub fn parse(s: &str, labels: &[String]) -> Result<Monomial> {
        let s = s.trim();
        let mut m = Monomial::one(labels.len());
        if s == "1" {
            return Ok(m);
        }
        if s.is_empty() {
            return Err(Error::Parse("empty monomial".into()));
        }
        let mut order: Vec<usize> = (0..labels.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(labels[i].len()));
        let mut rest = s;
        while !rest.is_empty() {
            rest = rest.trim_start_matches([' ', '*', '·']);
            if rest.is_empty() {
                break;
            }
            let Some(i) = order
                .iter()
                .copied()
                .find(|&i| rest.starts_with(labels[i].as_str()))
            else {
                return Err(Error::UnknownGenerator(rest.to_string()));
            };
            rest = &rest[labels[i].len()..];
            let (exp, tail) = parse_exponent(rest)?;
            m.0[i] += exp;
            rest = tail;
        }
        Ok(m)
    }
}

fn parse_exponent(s: &str) -> Result<(u32, &str)> {
    if let Some(t) = s.strip_prefix('^') {
        let end = t.find(|c: char| !c.is_ascii_digit()).unwrap_or(t.len());
        if end == 0 {
            return Err(Error::Parse(format!("missing exponent after '^' in {s:?}")));
        }
        let e = t[..end]
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
        return Ok((e, &t[end..]));
    }
    let mut e: u32 = 0;
    let mut len = 0;
    for c in s.chars() {
        match SUPERSCRIPTS.iter().position(|&d| d == c) {
            Some(d) => {
                e = e * 10 + d as u32;
                len += c.len_utf8();
            }
            None => break,
        }
    }
    if len == 0 {
        Ok((1, s))
    } else {
        Ok((e, &s[len..]))
    }
}

const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

fn superscript(n: u32) -> String {
    n.to_string()
        .chars()
        .map(|c| SUPERSCRIPTS[c.to_digit(10).unwrap() as usize])
        .collect()
}

/// All monomials of total degree `≤ max_degree` in `dim` variables, ordered
/// by degree and then lexicographically descending exponent vectors.
pub fn monomials_up_to(dim: usize, max_degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        out.extend(monomials_of_degree(dim, d));
    }
    out
}

pub fn monomials_of_degree(dim: usize, degree: u32) -> Vec<Monomial> {
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(Monomial::from_exponents(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if dim == 0 {
        if degree == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, degree, &mut vec![0; dim], &mut out);
    out
}

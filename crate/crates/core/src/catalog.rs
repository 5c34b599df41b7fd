//! Named algebras with fixed basis orders.
//!
//! | name        | dim | basis                       |
//! |-------------|-----|-----------------------------|
//! | `S`         | 4   | a, b, c, d                  |
//! | `T`         | 5   | a, b, c, d, e               |
//! | `A4`        | 4   | a, b, c, d (alternative)    |
//! | `M_nonsplit`| 7   | i, j, k, l, m, n, p         |
//! | `M_split`   | 7   | h, x, y, z, x', y', z'      |
//! | `sl2`       | 3   | h, x, x'                    |
//! | `LV5`       | 5   | h, x, x', y, z'             |
//! | `octonions` | 8   | 1, e1, ..., e7              |

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::scalar::{q, Rational};

pub const NAMES: [&str; 8] = [
    "S",
    "T",
    "A4",
    "M_nonsplit",
    "M_split",
    "sl2",
    "LV5",
    "octonions",
];

/// Looks up a catalog algebra by name.
pub fn catalog(name: &str) -> Result<FiniteAlgebra<Rational>> {
    match name {
        "S" => Ok(algebra_s()),
        "T" => Ok(algebra_t()),
        "A4" => Ok(algebra_a4()),
        "M_nonsplit" => Ok(malcev_nonsplit()),
        "M_split" => Ok(malcev_split()),
        "sl2" => Ok(sl2()),
        "LV5" => Ok(lv5()),
        "octonions" => Ok(crate::octonion::octonion_algebra()),
        _ => Err(Error::UnknownAlgebra(name.to_string())),
    }
}

/// Parses a table written row by row, with entries like `0`, `h`, `-2x'`.
pub(crate) fn parse_table(name: &str, labels: &[&str], rows: &[&str]) -> FiniteAlgebra<Rational> {
    let mut entries = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<&str> = row.split_whitespace().collect();
        assert_eq!(cells.len(), labels.len(), "row {i} of {name}");
        for (j, cell) in cells.into_iter().enumerate() {
            if cell == "0" {
                continue;
            }
            let (sign, rest) = match cell.strip_prefix('-') {
                Some(r) => (-1, r),
                None => (1, cell),
            };
            let split = rest
                .find(|c: char| !c.is_ascii_digit())
                .unwrap_or(rest.len());
            let coeff: i64 = if split == 0 {
                1
            } else {
                rest[..split].parse().unwrap()
            };
            let k = labels
                .iter()
                .position(|l| *l == &rest[split..])
                .unwrap_or_else(|| panic!("bad cell {cell:?} in {name}"));
            entries.push((i, j, vec![(k, q(sign * coeff))]));
        }
    }
    FiniteAlgebra::from_entries(name, labels, &entries)
}

/// The 4-dimensional solvable non-Lie Malcev algebra.
pub fn algebra_s() -> FiniteAlgebra<Rational> {
    parse_table(
        "S",
        &["a", "b", "c", "d"],
        &[
            "0  -b  -c  d", //
            "b   0  2d  0",
            "c  -2d  0  0",
            "-d  0   0  0",
        ],
    )
}

/// The 5-dimensional nilpotent Malcev algebra.
pub fn algebra_t() -> FiniteAlgebra<Rational> {
    parse_table(
        "T",
        &["a", "b", "c", "d", "e"],
        &[
            "0  c  0  0  0", //
            "-c 0  0  0  0",
            "0  0  0  e  0",
            "0  0 -e  0  0",
            "0  0  0  0  0",
        ],
    )
}

/// The 4-dimensional alternative algebra whose commutator algebra is `S`.
pub fn algebra_a4() -> FiniteAlgebra<Rational> {
    parse_table(
        "A4",
        &["a", "b", "c", "d"],
        &[
            "a  0  0  d", //
            "b  0  d  0",
            "c -d  0  0",
            "0  0  0  0",
        ],
    )
}

/// The 7-dimensional simple Malcev algebra in its real (non-split) basis.
///
/// Row `i` carries `[i,j] = 2k`, `[i,k] = -2j`; this is the sign choice that
/// makes the table anticommutative and Malcev.
pub fn malcev_nonsplit() -> FiniteAlgebra<Rational> {
    parse_table(
        "M_nonsplit",
        &["i", "j", "k", "l", "m", "n", "p"],
        &[
            "0   2k -2j  2m -2l -2p  2n",
            "-2k  0  2i  2n  2p -2l -2m",
            "2j -2i  0   2p -2n  2m -2l",
            "-2m -2n -2p 0   2i  2j  2k",
            "2l -2p  2n -2i  0  -2k  2j",
            "2p  2l -2m -2j  2k  0  -2i",
            "-2n 2m  2l -2k -2j  2i  0",
        ],
    )
}

/// The 7-dimensional simple Malcev algebra in the split basis.
pub fn malcev_split() -> FiniteAlgebra<Rational> {
    parse_table("M_split", &SPLIT_LABELS, &SPLIT_ROWS)
}

pub(crate) const SPLIT_LABELS: [&str; 7] = ["h", "x", "y", "z", "x'", "y'", "z'"];
const SPLIT_ROWS: [&str; 7] = [
    "0   2x  2y  2z -2x' -2y' -2z'",
    "-2x  0  2z' -2y'  h   0    0",
    "-2y -2z' 0  2x'   0   h    0",
    "-2z 2y' -2x' 0    0   0    h",
    "2x' -h   0   0    0  -2z   2y",
    "2y'  0  -h   0   2z   0   -2x",
    "2z'  0   0  -h  -2y   2x   0",
];

/// `sl2` spanned by `h, x, x'` inside the split form.
pub fn sl2() -> FiniteAlgebra<Rational> {
    parse_table(
        "sl2",
        &["h", "x", "x'"],
        &[
            "0  2x -2x'", //
            "-2x 0  h",
            "2x' -h 0",
        ],
    )
}

/// The 5-dimensional non-solvable Malcev algebra `L ⊕ V` with
/// `L = span{h, x, x'}` and `V = span{y, z'}`.
pub fn lv5() -> FiniteAlgebra<Rational> {
    parse_table(
        "LV5",
        &["h", "x", "x'", "y", "z'"],
        &[
            "0   2x -2x'  2y  -2z'",
            "-2x  0   h   2z'  0",
            "2x' -h   0   0    2y",
            "-2y -2z' 0   0    0",
            "2z'  0  -2y  0    0",
        ],
    )
}

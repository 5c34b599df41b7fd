//! The split form of the 7-dimensional simple Malcev algebra, obtained from
//! the non-split table by complexifying (`ε² = −1`) and changing basis:
//!
//! ```text
//! h = εl,  x = ½(i − εm),  y = ½(k − εp),  z = ½(j − εn),
//!          x' = −½(i + εm), y' = −½(k + εp), z' = −½(j + εn)
//! ```
//!
//! In the new basis `L = span{h, x, x'}` is `sl2` and the rest splits into
//! the two 2-dimensional modules `V = span{y, z'}` and `W = span{z, y'}`.

use num_complex::Complex;

use crate::algebra::{FiniteAlgebra, Vector};
use crate::catalog::{self, SPLIT_LABELS};
use crate::linalg::solve_combination;
use crate::report::VerificationReport;
use crate::scalar::{q, qq, GaussianRational, Rational};

fn g(re: Rational, im: Rational) -> GaussianRational {
    Complex::new(re, im)
}

/// Rows are the split basis `h, x, y, z, x', y', z'` in coordinates of the
/// non-split basis `i, j, k, l, m, n, p`.
pub fn change_of_basis() -> Vec<Vec<GaussianRational>> {
    let zero = || g(q(0), q(0));
    let half = qq(1, 2);
    let mut rows = vec![vec![zero(); 7]; 7];
    // non-split indices
    let (i, j, k, l, m, n, p) = (0, 1, 2, 3, 4, 5, 6);
    rows[0][l] = g(q(0), q(1));
    // x, y, z = ½(u − εv); x', y', z' = −½(u + εv)
    for (row, (u, v)) in [(1, (i, m)), (2, (k, p)), (3, (j, n))] {
        rows[row][u] = g(half.clone(), q(0));
        rows[row][v] = g(q(0), -half.clone());
        rows[row + 3][u] = g(-half.clone(), q(0));
        rows[row + 3][v] = g(q(0), -half.clone());
    }
    rows
}

/// The bracket table of the non-split algebra rewritten in the split basis.
/// Returns `None` if some bracket leaves the span (it cannot, the basis is
/// invertible, but the solve is checked rather than assumed).
pub fn split_from_nonsplit() -> Option<FiniteAlgebra<GaussianRational>> {
    let old = catalog::malcev_nonsplit().convert::<GaussianRational>();
    let p = change_of_basis();
    let mut table = Vec::with_capacity(7);
    for a in 0..7 {
        let mut row = Vec::with_capacity(7);
        for b in 0..7 {
            let br = old.mul(&Vector(p[a].clone()), &Vector(p[b].clone()));
            row.push(solve_combination(&p, &br.0)?);
        }
        table.push(row);
    }
    FiniteAlgebra::new(
        "M_split (computed)",
        SPLIT_LABELS.iter().map(|s| s.to_string()).collect(),
        table,
    )
    .ok()
}

/// Checks the change of basis against the split table, the `sl2` relations,
/// the module actions on `V` and `W`, and the intertwiner
/// `y ↦ −z, z' ↦ y'` between them.
pub fn verify_split_decomposition() -> VerificationReport {
    let mut report =
        VerificationReport::new("split form of the 7-dimensional simple Malcev algebra");
    let split = catalog::malcev_split();
    let target = split.convert::<GaussianRational>();
    let lab = |i: usize| SPLIT_LABELS[i].to_string();

    let mut s = VerificationReport::new("change of basis reproduces the split table");
    match split_from_nonsplit() {
        None => s.expect(false, || "change of basis is not invertible".into()),
        Some(computed) => {
            for a in 0..7 {
                for b in 0..7 {
                    let got = computed.basis_product(a, b);
                    let want = target.basis_product(a, b);
                    s.record(
                        || vec![lab(a), lab(b)],
                        (got != want).then(|| {
                            format!(
                                "{} != {}",
                                computed.format_vector(&dense(got)),
                                target.format_vector(&dense(want))
                            )
                        }),
                    );
                }
            }
        }
    }
    report.push_section(s);

    let idx = |l: &str| split.label_index(l).expect("split label");
    let bracket =
        |a: &str, b: &str| split.mul(&split.basis_vector(idx(a)), &split.basis_vector(idx(b)));
    let vec_of = |terms: &[(i64, &str)]| {
        let mut v = Vector::<Rational>::zero(7);
        for (c, l) in terms {
            v.0[idx(l)] += q(*c);
        }
        v
    };
    let check = |s: &mut VerificationReport, a: &str, b: &str, want: Vector<Rational>| {
        let got = bracket(a, b);
        s.record(
            || vec![a.to_string(), b.to_string()],
            (got != want).then(|| {
                format!(
                    "{} != {}",
                    split.format_vector(&got),
                    split.format_vector(&want)
                )
            }),
        );
    };

    let mut s = VerificationReport::new("L = span{h, x, x'} is sl2");
    check(&mut s, "h", "x", vec_of(&[(2, "x")]));
    check(&mut s, "h", "x'", vec_of(&[(-2, "x'")]));
    check(&mut s, "x", "x'", vec_of(&[(1, "h")]));
    let sl2 = catalog::sl2();
    for a in 0..3 {
        for b in 0..3 {
            let got = bracket(&sl2.labels()[a], &sl2.labels()[b]);
            let want = sl2.mul(&sl2.basis_vector(a), &sl2.basis_vector(b));
            let mapped = map_vector(&want, sl2.labels(), &split);
            s.record(
                || vec![sl2.labels()[a].clone(), sl2.labels()[b].clone()],
                (got != mapped).then(|| split.format_vector(&got)),
            );
        }
    }
    report.push_section(s);

    let mut s = VerificationReport::new(
        "V = span{y, z'} and W = span{z, y'} are L-modules with zero product",
    );
    let actions: [(&str, &str, &[(i64, &str)]); 14] = [
        ("h", "y", &[(2, "y")]),
        ("h", "z'", &[(-2, "z'")]),
        ("h", "z", &[(2, "z")]),
        ("h", "y'", &[(-2, "y'")]),
        ("x", "y", &[(2, "z'")]),
        ("x", "z'", &[]),
        ("x", "z", &[(-2, "y'")]),
        ("x", "y'", &[]),
        ("x'", "y", &[]),
        ("x'", "z'", &[(2, "y")]),
        ("x'", "z", &[]),
        ("x'", "y'", &[(-2, "z")]),
        ("y", "z'", &[]),
        ("z", "y'", &[]),
    ];
    for (a, b, want) in actions {
        check(&mut s, a, b, vec_of(want));
    }
    report.push_section(s);

    // φ: V → W, y ↦ −z, z' ↦ y'; φ([l, v]) = [l, φ(v)].
    let mut s = VerificationReport::new("y <-> -z, z' <-> y' intertwines the L-actions on V and W");
    let phi = |v: &Vector<Rational>| {
        let mut out = Vector::zero(7);
        out.0[idx("z")] = -v.0[idx("y")].clone();
        out.0[idx("y'")] = v.0[idx("z'")].clone();
        let rest = ["y", "z'"].iter().map(|l| idx(l)).collect::<Vec<_>>();
        let stray =
            v.0.iter()
                .enumerate()
                .any(|(k, c)| !rest.contains(&k) && *c != q(0));
        (out, stray)
    };
    for l in ["h", "x", "x'"] {
        for v in ["y", "z'"] {
            let lv = bracket(l, v);
            let (lhs, stray) = phi(&lv);
            let (image, _) = phi(&split.basis_vector(idx(v)));
            let rhs = split.mul(&split.basis_vector(idx(l)), &image);
            s.expect(!stray, || format!("[{l},{v}] leaves V"));
            s.record(
                || vec![l.to_string(), v.to_string()],
                (lhs != rhs).then(|| {
                    format!(
                        "{} != {}",
                        split.format_vector(&lhs),
                        split.format_vector(&rhs)
                    )
                }),
            );
        }
    }
    report.push_section(s);

    let mut s =
        VerificationReport::new("L + V and L + W are the 5-dimensional non-solvable algebra");
    let lv5 = catalog::lv5();
    for (name, images) in [
        (
            "L + V",
            [(1, "h"), (1, "x"), (1, "x'"), (1, "y"), (1, "z'")],
        ),
        (
            "L + W",
            [(1, "h"), (1, "x"), (1, "x'"), (-1, "z"), (1, "y'")],
        ),
    ] {
        let embed = |v: &Vector<Rational>| {
            let mut out = Vector::zero(7);
            for (k, (sgn, l)) in images.iter().enumerate() {
                out.0[idx(l)] += &v.0[k] * q(*sgn);
            }
            out
        };
        for a in 0..5 {
            for b in 0..5 {
                let lhs = embed(&lv5.mul(&lv5.basis_vector(a), &lv5.basis_vector(b)));
                let rhs = split.mul(&embed(&lv5.basis_vector(a)), &embed(&lv5.basis_vector(b)));
                s.record(
                    || {
                        vec![
                            name.to_string(),
                            lv5.labels()[a].clone(),
                            lv5.labels()[b].clone(),
                        ]
                    },
                    (lhs != rhs).then(|| split.format_vector(&(lhs - rhs))),
                );
            }
        }
    }
    report.push_section(s);

    report
}

fn dense(sparse: &[(usize, GaussianRational)]) -> Vector<GaussianRational> {
    let mut v = Vector::zero(7);
    for (k, c) in sparse {
        v.0[*k] = c.clone();
    }
    v
}

/// Moves a vector between algebras by matching labels.
fn map_vector(
    v: &Vector<Rational>,
    from: &[String],
    to: &FiniteAlgebra<Rational>,
) -> Vector<Rational> {
    let mut out = Vector::zero(to.dim());
    for (k, c) in v.0.iter().enumerate() {
        out.0[to.label_index(&from[k]).expect("shared label")] += c;
    }
    out
}

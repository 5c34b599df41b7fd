use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use malcev::closedform::{self, ClosedForm};
use malcev::envelope::monomials_up_to;
use malcev::identities::{bol_from_right_alternative, decompose_g, BolData};
use malcev::octonion::{self, octonion_algebra};
use malcev::quotient::{self, MonomialSpanIdeal, QuotientTag};
use malcev::{
    catalog, EnvContext, EnvElement, Error, QAlgebra, Rational, Variety, VerificationReport,
};

#[derive(Parser)]
#[command(
    name = "malcev",
    version,
    about = "Exact computations in universal enveloping algebras of Malcev algebras"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Generic,
    Closedform,
    Quotient,
}

#[derive(Subcommand)]
enum Command {
    /// Check the identities of one or more varieties on all basis tuples.
    Verify {
        /// Catalog name or path to a JSON table.
        #[arg(long)]
        algebra: String,
        #[arg(long = "variety", default_values_t = ["anticommutative".to_string(), "malcev".to_string()])]
        varieties: Vec<String>,
    },
    /// Multiply two PBW monomials such as `abc` and `b^2c`.
    Multiply {
        #[arg(long)]
        algebra: String,
        #[arg(long, value_enum, default_value_t = Engine::Generic)]
        engine: Engine,
        left: String,
        right: String,
    },
    /// List the nonzero alternators (x,x,y) and (y,x,x) on monomials.
    Alternators {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 2)]
        cap: u32,
        /// Reduce modulo the alternator ideal J (S and T only); fails if
        /// anything survives.
        #[arg(long)]
        reduce: bool,
    },
    /// Compare a closed form with the generic engine on all monomial pairs.
    Crosscheck {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 3)]
        cap: u32,
        #[arg(long, value_enum, default_value_t = Engine::Closedform)]
        engine: Engine,
    },
    /// Print the multiplication table of U(M)/J on survivor monomials.
    QuotientTable {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 2)]
        cap: u32,
    },
    /// Run the octonion structure chain and the isomorphism search.
    OctonionVerify {
        /// Also check the Casimir element against monomials up to this degree.
        #[arg(long)]
        center_cap: Option<u32>,
    },
    /// Degree-4 identities and Bol algebras (both when no flag is given).
    Identities {
        #[arg(long)]
        decompose_g: bool,
        #[arg(long)]
        bol: bool,
    },
    /// List the built-in algebras.
    CatalogList,
}

/// Failures that are not verification failures.
enum Fail {
    Usage(String),
    Internal(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(m) => Fail::Internal(m),
            other => Fail::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Fail::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(1)
        }
    }
}

fn load_algebra(source: &str) -> Result<QAlgebra, Fail> {
    if catalog::NAMES.contains(&source) {
        return Ok(catalog::catalog(source)?);
    }
    let path = Path::new(source);
    if !path.exists() {
        return Err(Fail::Usage(format!(
            "{source:?} is neither a catalog algebra ({}) nor a file",
            catalog::NAMES.join(", ")
        )));
    }
    let text = std::fs::read_to_string(path).map_err(|e| Fail::Usage(format!("{source}: {e}")))?;
    QAlgebra::from_json_str(&text).map_err(|e| Fail::Usage(format!("{source}: {e}")))
}

fn quotient_tag(alg: &QAlgebra) -> Result<QuotientTag, Fail> {
    QuotientTag::for_algebra(alg.name()).ok_or_else(|| {
        Fail::Usage(format!(
            "no alternative quotient is implemented for {}",
            alg.name()
        ))
    })
}

fn report_json(r: &VerificationReport) -> Value {
    json!({
        "name": r.name,
        "passed": r.passed(),
        "checked": r.total_checked(),
        "failures": r.total_failures(),
        "first_failure": r.first_failure(),
        "report": r,
    })
}

fn emit(format: Format, text: impl FnOnce() -> String, value: impl FnOnce() -> Value) {
    match format {
        Format::Text => out(&text()),
        Format::Json => out(&format!(
            "{}\n",
            serde_json::to_string_pretty(&value()).expect("serializable")
        )),
    }
}

/// Writes to stdout, exiting quietly when the reader has gone away (e.g. `| head`).
fn out(s: &str) {
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = stdout.write_all(s.as_bytes()).and_then(|_| stdout.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

fn emit_reports(format: Format, reports: &[VerificationReport], extra: Value) -> bool {
    let passed = reports.iter().all(VerificationReport::passed);
    emit(
        format,
        || {
            reports
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join("")
        },
        || {
            let mut v = json!({ "passed": passed, "reports": reports.iter().map(report_json).collect::<Vec<_>>() });
            if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
                m.extend(e);
            }
            v
        },
    );
    passed
}

fn element_json(ctx: &EnvContext<Rational>, x: &EnvElement<Rational>) -> Value {
    json!({ "display": ctx.display(x), "terms": x.to_json() })
}

fn run(cli: &Cli) -> Result<bool, Fail> {
    let format = cli.format;
    match &cli.command {
        Command::CatalogList => {
            let algebras: Vec<QAlgebra> = catalog::NAMES
                .iter()
                .map(|n| catalog::catalog(n))
                .collect::<Result<_, _>>()?;
            emit(
                format,
                || {
                    algebras
                        .iter()
                        .map(|a| {
                            format!(
                                "{:<12} dim {}  basis {}\n",
                                a.name(),
                                a.dim(),
                                a.labels().join(" ")
                            )
                        })
                        .collect()
                },
                || {
                    Value::Array(
                        algebras
                            .iter()
                            .map(|a| json!({ "name": a.name(), "dim": a.dim(), "labels": a.labels() }))
                            .collect(),
                    )
                },
            );
            Ok(true)
        }
        Command::Verify { algebra, varieties } => {
            let alg = load_algebra(algebra)?;
            let varieties: Vec<Variety> = varieties
                .iter()
                .map(|v| v.parse::<Variety>())
                .collect::<Result<_, _>>()?;
            let reports: Vec<VerificationReport> = varieties
                .iter()
                .map(|&v| malcev::verify_variety(&alg, v))
                .collect();
            Ok(emit_reports(
                format,
                &reports,
                json!({ "algebra": alg.name() }),
            ))
        }
        Command::Multiply {
            algebra,
            engine,
            left,
            right,
        } => {
            let alg = load_algebra(algebra)?;
            let name = alg.name().to_string();
            let ctx = EnvContext::new(alg)?;
            let (x, y) = (ctx.parse_monomial(left)?, ctx.parse_monomial(right)?);
            let product = match engine {
                Engine::Generic => ctx.product_monomials(&x, &y)?,
                Engine::Closedform => {
                    let form = ClosedForm::for_algebra(&name).ok_or_else(|| {
                        Fail::Usage(format!("no closed form is implemented for {name}"))
                    })?;
                    form.product(&x, &y)?
                }
                Engine::Quotient => {
                    quotient::quotient_product(quotient_tag(ctx.algebra())?, &x, &y)?
                }
            };
            emit(
                format,
                || format!("{}\n", ctx.display(&product)),
                || json!({ "algebra": name, "left": left, "right": right, "product": element_json(&ctx, &product) }),
            );
            Ok(true)
        }
        Command::Alternators {
            algebra,
            cap,
            reduce,
        } => {
            let alg = load_algebra(algebra)?;
            let ideal = if *reduce {
                Some(MonomialSpanIdeal::new(quotient_tag(&alg)?))
            } else {
                None
            };
            let ctx = EnvContext::new(alg)?;
            let basis: Vec<EnvElement<Rational>> = monomials_up_to(ctx.dim(), *cap)
                .into_iter()
                .filter(|m| !m.is_one())
                .map(EnvElement::monomial)
                .collect();
            let mut rows = Vec::new();
            for x in &basis {
                for y in &basis {
                    for (kind, value) in [
                        ("(x,x,y)", ctx.left_alternator(x, y)?),
                        ("(y,x,x)", ctx.right_alternator(x, y)?),
                    ] {
                        let value = match &ideal {
                            Some(j) => j.reduce(&value),
                            None => value,
                        };
                        if !value.is_zero() {
                            rows.push((kind, ctx.display(x), ctx.display(y), value));
                        }
                    }
                }
            }
            let passed = ideal.is_none() || rows.is_empty();
            emit(
                format,
                || {
                    let mut out = String::new();
                    for (kind, x, y, v) in &rows {
                        let (a, b, c) = if *kind == "(x,x,y)" {
                            (x, x, y)
                        } else {
                            (y, x, x)
                        };
                        out.push_str(&format!("({a}, {b}, {c}) = {}\n", ctx.display(v)));
                    }
                    let scope = if ideal.is_some() {
                        " after reduction modulo J"
                    } else {
                        ""
                    };
                    out.push_str(&format!(
                        "{} nonzero alternators{scope} on {} monomials of degree 1..{cap}\n",
                        rows.len(),
                        basis.len()
                    ));
                    out
                },
                || {
                    json!({
                        "algebra": ctx.algebra().name(),
                        "cap": cap,
                        "reduced": ideal.is_some(),
                        "passed": passed,
                        "nonzero": rows.iter().map(|(kind, x, y, v)| json!({
                            "kind": kind, "x": x, "y": y, "value": element_json(&ctx, v),
                        })).collect::<Vec<_>>(),
                    })
                },
            );
            Ok(passed)
        }
        Command::Crosscheck {
            algebra,
            cap,
            engine,
        } => {
            let alg = load_algebra(algebra)?;
            let name = alg.name().to_string();
            let report = match engine {
                Engine::Closedform => {
                    let form = ClosedForm::for_algebra(&name)
                        .ok_or_else(|| Fail::Usage(format!("no closed form is implemented for {name}")))?;
                    closedform::crosscheck(form, &EnvContext::new(alg)?, *cap)
                }
                Engine::Quotient => {
                    let tag = quotient_tag(&alg)?;
                    quotient::verify_quotient_crosscheck(tag, &EnvContext::new(alg)?, *cap)
                }
                Engine::Generic => return Err(Fail::Usage("crosscheck compares a closed form with the generic engine; choose --engine closedform or quotient".into())),
            };
            Ok(emit_reports(
                format,
                &[report],
                json!({ "algebra": name, "cap": cap }),
            ))
        }
        Command::QuotientTable { algebra, cap } => {
            let alg = load_algebra(algebra)?;
            let tag = quotient_tag(&alg)?;
            let ctx = EnvContext::new(alg)?;
            let survivors = MonomialSpanIdeal::new(tag).survivors(*cap);
            let mut rows = Vec::new();
            for x in &survivors {
                for y in &survivors {
                    rows.push((
                        x.display(ctx.labels()),
                        y.display(ctx.labels()),
                        quotient::quotient_product(tag, x, y)?,
                    ));
                }
            }
            emit(
                format,
                || {
                    rows.iter()
                        .map(|(x, y, p)| format!("({x})({y}) = {}\n", ctx.display(p)))
                        .collect()
                },
                || {
                    json!({
                        "algebra": ctx.algebra().name(),
                        "cap": cap,
                        "survivors": survivors.iter().map(|m| m.display(ctx.labels())).collect::<Vec<_>>(),
                        "table": rows.iter().map(|(x, y, p)| json!({ "left": x, "right": y, "product": element_json(&ctx, p) })).collect::<Vec<_>>(),
                    })
                },
            );
            Ok(true)
        }
        Command::OctonionVerify { center_cap } => {
            let mut reports = vec![
                octonion::verify_octonion_structure(),
                octonion::verify_octonion_isomorphism(),
            ];
            if let Some(cap) = center_cap {
                reports.push(octonion::verify_um_center(*cap)?);
            }
            let t = octonion::traceless_malcev();
            let m = catalog::malcev_nonsplit();
            let witness = octonion::find_signed_isomorphism(&t, &m).map(|phi| phi.describe(&t, &m));
            let passed = emit_reports(format, &reports, json!({ "isomorphism": witness }));
            if format == Format::Text {
                if let Some(w) = witness {
                    out(&format!("isomorphism: {}\n", w.join(", ")));
                }
            }
            Ok(passed)
        }
        Command::Identities {
            decompose_g: dg,
            bol,
        } => {
            let (dg, bol) = if !dg && !bol {
                (true, true)
            } else {
                (*dg, *bol)
            };
            let mut reports = Vec::new();
            let mut extra = serde_json::Map::new();
            let mut text = String::new();
            if dg {
                let d = decompose_g();
                text.push_str(&format!(
                    "multilinear space dimension {}; span of {} elements has rank {}; g in span: {}\n",
                    d.space_dim, d.spanning_elements, d.span_rank, d.member
                ));
                text.push_str(&format!(
                    "g in span using only the two displayed consequences: {}; without f: {}\n",
                    d.member_with_displayed_consequences_only, d.member_without_f
                ));
                for t in &d.coefficients {
                    text.push_str(&format!(
                        "  {:>8}  {}[{}]\n",
                        t.coefficient, t.element, t.permutation
                    ));
                }
                reports.push(d.report.clone());
                extra.insert(
                    "decomposition".into(),
                    serde_json::to_value(&d).expect("serializable"),
                );
            }
            if bol {
                let (_, r) = bol_from_right_alternative(&octonion_algebra())?;
                reports.push(r);
                let mut lts = BolData::<Rational>::simple_lts2().verify_axioms();
                lts.name =
                    "Bol algebra identities for the Lie triple system [e,f,e] = 2e, [e,f,f] = -2f"
                        .into();
                reports.push(lts);
            }
            if format == Format::Text {
                out(&text);
            }
            Ok(emit_reports(format, &reports, Value::Object(extra)))
        }
    }
}

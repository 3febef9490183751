use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde_json::json;

use skewpbw::coeffs::ParamScalar;
use skewpbw::graded::{gr_presentation, hilbert_dim, iterated_ore, HILBERT_CROSS_CHECK_MAX};
use skewpbw::points::{
    multilinearize, next_point, on_locus, point_chain, point_scheme_locus, symbolic_point_matrix, Locus, ProjPoint,
};
use skewpbw::presentation::{
    classify_shape, emit, parse, parse_expression, specialize, validate_axioms, Presentation,
};
use skewpbw::properties::{gkdim_report, property_report};
use skewpbw::report::{Check, Report};
use skewpbw::rewrite::{check_pbw_consistency, multiply, normal_form_expr, Strategy};

#[derive(Parser, Debug)]
#[command(name = "skewpbw", version, about = "Exact computations in skew PBW extensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Presentation file
    input: PathBuf,
    /// Specialize a parameter before running, e.g. `--assign q=3/2`
    #[arg(long = "assign", value_name = "NAME=VALUE")]
    assign: Vec<String>,
    /// Write the report here instead of standard output
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate the axioms, classify the shape and certify the PBW basis
    Check {
        #[command(flatten)]
        common: Common,
    },
    /// Normal form of an expression
    Nf {
        #[command(flatten)]
        common: Common,
        expr: String,
        #[arg(long, default_value = "leftmost")]
        strategy: Strategy,
    },
    /// Product of two expressions
    Mul {
        #[command(flatten)]
        common: Common,
        left: String,
        right: String,
    },
    /// Emit the associated graded presentation
    Gr {
        #[command(flatten)]
        common: Common,
    },
    /// Iterated Ore description of a quasi-commutative presentation
    Ore {
        #[command(flatten)]
        common: Common,
    },
    /// Transfer-theorem property report and GK dimension
    Report {
        #[command(flatten)]
        common: Common,
    },
    /// Graded dimensions up to a degree
    Hilbert {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
    },
    /// Point scheme data and point chains
    Points {
        #[command(flatten)]
        common: Common,
        /// Emit the symbolic matrix M(u) and its maximal minors
        #[arg(long)]
        symbolic: bool,
        /// Starting point, e.g. "1,1" or "1:q"
        #[arg(long)]
        start: Option<String>,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
}

/// A usage or input error; exit status 1.
#[derive(Debug)]
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

enum Output {
    Json(Report),
    Text(String),
}

fn load(common: &Common) -> Result<(String, Presentation), UsageError> {
    let src = std::fs::read_to_string(&common.input)
        .map_err(|e| UsageError(format!("{}: {}", common.input.display(), e)))?;
    let p = parse(&src).map_err(|e| UsageError(format!("{}: {}", common.input.display(), e)))?;
    let name = common.input.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    if common.assign.is_empty() {
        return Ok((name, p));
    }
    let mut values = BTreeMap::new();
    for a in &common.assign {
        let (k, v) = a.split_once('=').ok_or_else(|| UsageError(format!("expected NAME=VALUE, got `{}`", a)))?;
        let v = BigRational::from_str(v.trim()).map_err(|_| UsageError(format!("`{}` is not a rational number", v)))?;
        values.insert(k.trim().to_string(), v);
    }
    Ok((name, specialize(&p, &values)?))
}

fn scalar(p: &Presentation, src: &str) -> Result<ParamScalar, UsageError> {
    parse_expression(src, p.symbols())?
        .as_scalar()
        .ok_or_else(|| UsageError(format!("coordinate `{}` is not a scalar", src)))
}

fn certificate_checks(p: &Presentation) -> Vec<Check> {
    let mut checks = validate_axioms(p).checks;
    checks.extend(check_pbw_consistency(p).to_checks(p.symbols()));
    checks
}

fn run(cmd: &Command) -> Result<Output, UsageError> {
    match cmd {
        Command::Check { common } => {
            let (name, p) = load(common)?;
            let cert = check_pbw_consistency(&p);
            let mut checks = validate_axioms(&p).checks;
            checks.extend(cert.to_checks(p.symbols()));
            let data = json!({
                "shape": classify_shape(&p),
                "overlaps": cert.to_json(p.symbols()),
                "pbw_certified": cert.all_pass(),
            });
            Ok(Output::Json(Report::new(name, checks, data)))
        }
        Command::Nf { common, expr, strategy } => {
            let (name, p) = load(common)?;
            let e = parse_expression(expr, p.symbols())?;
            let nf = normal_form_expr(&p, &e, *strategy);
            let data = json!({ "input": expr, "strategy": strategy.to_string(), "normal_form": nf.render(p.symbols()) });
            Ok(Output::Json(Report::new(name, vec![], data)))
        }
        Command::Mul { common, left, right } => {
            let (name, p) = load(common)?;
            let f = normal_form_expr(&p, &parse_expression(left, p.symbols())?, Strategy::Leftmost);
            let g = normal_form_expr(&p, &parse_expression(right, p.symbols())?, Strategy::Leftmost);
            let fg = multiply(&p, &f, &g);
            let data = json!({
                "left": f.render(p.symbols()),
                "right": g.render(p.symbols()),
                "product": fg.render(p.symbols()),
            });
            Ok(Output::Json(Report::new(name, vec![], data)))
        }
        Command::Gr { common } => {
            let (_, p) = load(common)?;
            Ok(Output::Text(emit(&gr_presentation(&p))))
        }
        Command::Ore { common } => {
            let (name, p) = load(common)?;
            let report = match iterated_ore(&p) {
                Ok(t) => {
                    let (agreed, total) = t.replay;
                    let replay = if t.replay_agrees() {
                        Check::pass("ore_replay")
                    } else {
                        Check::fail("ore_replay", format!("{} of {} products agree", agreed, total))
                    };
                    Report::new(name, vec![Check::pass("quasi_commutative"), replay], t.to_json(&p))
                }
                Err(e) => Report::new(name, vec![Check::fail("quasi_commutative", e.to_string())], json!(null)),
            };
            Ok(Output::Json(report))
        }
        Command::Report { common } => {
            let (name, p) = load(common)?;
            let mut checks = certificate_checks(&p);
            let gk = gkdim_report(&p);
            let report = match property_report(&p) {
                Ok(r) => {
                    checks.push(if r.is_monotone() {
                        Check::pass("report_monotone")
                    } else {
                        Check::fail("report_monotone", "a record says yes with an unmet hypothesis")
                    });
                    Report::new(name, checks, json!({ "properties": r.records, "gkdim": gk }))
                }
                Err(e) => {
                    checks.push(Check::fail("pbw_certified", e.to_string()));
                    Report::new(name, checks, json!({ "properties": null, "gkdim": gk }))
                }
            };
            Ok(Output::Json(report))
        }
        Command::Hilbert { common, max_degree } => {
            let (name, p) = load(common)?;
            let mut checks = Vec::new();
            let mut dims = Vec::new();
            for d in 0..=*max_degree {
                match hilbert_dim(&p, d) {
                    Ok(h) => {
                        if let (Some(ok), Some(rank)) = (h.cross_check(), h.word_rank) {
                            let label = format!("degree {} word rank", d);
                            checks.push(if ok {
                                Check::pass(label)
                            } else {
                                Check::fail(label, format!("rank {} but {} standard monomials", rank, h.dim))
                            });
                        }
                        dims.push(json!({ "degree": d, "dim": h.dim, "word_rank": h.word_rank }));
                    }
                    Err(e) => {
                        checks.push(Check::fail("finitely_graded", e.to_string()));
                        break;
                    }
                }
            }
            let data = json!({ "dims": dims, "cross_check_max_degree": HILBERT_CROSS_CHECK_MAX });
            Ok(Output::Json(Report::new(name, checks, data)))
        }
        Command::Points { common, symbolic, start, depth } => {
            let (name, p) = load(common)?;
            let s = match multilinearize(&p) {
                Ok(s) => s,
                Err(e) => {
                    let checks = vec![Check::fail("finitely_graded", e.to_string())];
                    return Ok(Output::Json(Report::new(name, checks, json!(null))));
                }
            };
            let params = &p.symbols().params;
            let mut checks = vec![Check::pass("finitely_graded")];
            let mut data = serde_json::Map::new();
            data.insert("forms".into(), json!((0..s.forms.len()).map(|l| s.render_form(l, params)).collect::<Vec<_>>()));
            let locus = point_scheme_locus(&s);
            if *symbolic {
                let m: Vec<Vec<String>> = symbolic_point_matrix(&s)
                    .iter()
                    .map(|row| row.iter().map(|e| e.render(params, s.u_names())).collect())
                    .collect();
                data.insert("matrix".into(), json!(m));
                data.insert(
                    "locus".into(),
                    match &locus {
                        Locus::KernelAlwaysNonzero => json!("kernel always nonzero"),
                        Locus::Minors(ms) => json!(ms.iter().map(|f| f.render(params, s.u_names())).collect::<Vec<_>>()),
                    },
                );
            }
            if let Some(start) = start {
                let coords = start
                    .split([',', ':'])
                    .map(|c| scalar(&p, c.trim()))
                    .collect::<Result<Vec<_>, _>>()?;
                let p0 = ProjPoint::new(coords)?;
                if p0.coords().len() != s.n {
                    return Err(UsageError(format!("start point needs {} coordinates", s.n)));
                }
                let chain = point_chain(&s, &p0, *depth)?;
                let pairs_ok = chain.points.windows(2).all(|w| s.annihilates(&w[0], &w[1]));
                checks.push(if pairs_ok {
                    Check::pass("chain_on_point_scheme")
                } else {
                    Check::fail("chain_on_point_scheme", "a consecutive pair misses a form")
                });
                data.insert("start_on_locus".into(), json!(on_locus(&locus, &p0)));
                data.insert("next_point_kind".into(), json!(match next_point(&s, &p0)? {
                    skewpbw::points::NextPoint::Unique(_) => "unique",
                    skewpbw::points::NextPoint::Family(_) => "family",
                    skewpbw::points::NextPoint::Empty => "empty",
                }));
                data.insert("chain".into(), chain.to_json(params));
            }
            Ok(Output::Json(Report::new(name, checks, serde_json::Value::Object(data))))
        }
    }
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::Check { common }
        | Command::Nf { common, .. }
        | Command::Mul { common, .. }
        | Command::Gr { common }
        | Command::Ore { common }
        | Command::Report { common }
        | Command::Hilbert { common, .. }
        | Command::Points { common, .. } => common,
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), UsageError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| UsageError(format!("{}: {}", p.display(), e))),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let out_path = common(&cli.command).output.clone();
    let outcome = run(&cli.command).and_then(|out| match out {
        Output::Text(t) => write_out(out_path.as_deref(), &t).map(|_| true),
        Output::Json(r) => {
            let passed = r.checks.iter().filter(|c| c.pass).count();
            for c in r.checks.iter().filter(|c| !c.pass) {
                eprintln!("FAIL {}: {}", c.name, c.witness.as_deref().unwrap_or(""));
            }
            eprintln!("{}: {}/{} checks passed", r.presentation_name, passed, r.checks.len());
            write_out(out_path.as_deref(), &(r.to_json() + "\n")).map(|_| r.all_pass())
        }
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(UsageError(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(1)
        }
    }
}

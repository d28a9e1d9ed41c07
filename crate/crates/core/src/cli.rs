//! Command line front end. [`run`] parses arguments and returns the exit
//! status with the text for stdout and stderr; `main` only prints it.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::builder::PossibleValuesParser;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::algebra::{Bidendriform, Fqsym, Hck, HckVariant};
use crate::error::{Error, Result};
use crate::golden;
use crate::halfprod::{build_table, DEFAULT_BOUND};
use crate::iso::{verify_iso, DEFAULT_MAX};
use crate::laws::{self, LawReport, Options};
use crate::linear::{LinComb, Rational};
use crate::pairing::{gram, pair_elem, pair_oracle};
use crate::pforest::{render_forest, DecorationSet};
use crate::prim::prim_tot_basis;
use crate::series::{p_from_r, r_from_d, Series};
use crate::verbs::{self, Computed, FQSYM_OPS, HCK_OPS};

#[derive(Parser, Debug)]
#[command(name = "bidend", version, about = "Exact computations with planar decorated forests and FQSym")]
struct Cli {
    /// Degree bound for tables, suites and checks.
    #[arg(long = "max-degree", visible_aliases = ["max", "maxdeg"], global = true)]
    max_degree: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Same as `--format json`.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Operations on decorated forests.
    Hck {
        #[arg(value_parser = PossibleValuesParser::new(HCK_OPS))]
        op: String,
        #[arg(required = true, num_args = 1..=2)]
        exprs: Vec<String>,
        /// Decoration set such as `a,b:2`; inferred from the expressions when absent.
        #[arg(long)]
        decorations: Option<String>,
    },
    /// Operations on FQSym in the basis of permutations.
    Fqsym {
        #[arg(value_parser = PossibleValuesParser::new(FQSYM_OPS))]
        op: String,
        #[arg(required = true, num_args = 1..=2)]
        exprs: Vec<String>,
    },
    /// The pairing of two forest expressions, or a Gram table.
    Pair(PairArgs),
    /// Half-products of forests reconstructed from the pairing.
    Halfprod {
        #[command(subcommand)]
        command: HalfprodCommand,
    },
    /// Totally primitive elements.
    Prim {
        #[command(subcommand)]
        command: PrimCommand,
    },
    /// Generating series of forests and primitives.
    Series {
        #[command(subcommand)]
        command: SeriesCommand,
    },
    /// The map from decorated forests to FQSym.
    Iso {
        #[command(subcommand)]
        command: IsoCommand,
    },
    /// Check an axiom suite on an algebra.
    Laws {
        /// Suite name, or `all`.
        #[arg(long)]
        suite: String,
        #[arg(long, value_enum)]
        algebra: AlgebraName,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// Degree through which inputs are enumerated exhaustively.
        #[arg(long, default_value_t = 4)]
        exhaustive: usize,
        #[arg(long, default_value = "*")]
        decorations: String,
    },
    /// Replay the reference data.
    Golden {
        #[command(subcommand)]
        command: GoldenCommand,
    },
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true)]
struct PairArgs {
    #[command(subcommand)]
    table: Option<PairCommand>,
    #[arg(num_args = 2)]
    forests: Vec<String>,
    #[arg(long, value_enum, default_value_t = Oracle::Recursive)]
    oracle: Oracle,
    #[arg(long)]
    decorations: Option<String>,
}

#[derive(Subcommand, Debug)]
enum PairCommand {
    /// Gram matrix of one weight on undecorated forests, or on `--decorations`.
    Table {
        #[arg(long)]
        weight: usize,
        #[arg(long)]
        decorations: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Oracle {
    Recursive,
    Bijection,
    Both,
}

#[derive(Subcommand, Debug)]
enum HalfprodCommand {
    /// `F ≺ G`.
    Preml {
        f: String,
        g: String,
        #[arg(long)]
        decorations: Option<String>,
    },
    /// `F ≻ G`.
    Premr {
        f: String,
        g: String,
        #[arg(long)]
        decorations: Option<String>,
    },
    /// Every `F ≺ G` and `F ≻ G` with total degree at most `--max`.
    Table {
        #[arg(long, default_value = "*")]
        decorations: String,
    },
}

#[derive(Subcommand, Debug)]
enum PrimCommand {
    /// Dimensions of the totally primitive part in degrees 1..=max.
    Dims {
        #[arg(long, value_enum)]
        algebra: PrimAlgebra,
        #[arg(long, default_value = "*")]
        decorations: String,
    },
    /// A basis of the totally primitive part in one degree.
    Basis {
        #[arg(long, value_enum)]
        algebra: PrimAlgebra,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value = "*")]
        decorations: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PrimAlgebra {
    Fqsym,
    Hck,
}

#[derive(Subcommand, Debug)]
enum SeriesCommand {
    /// Primitive dimensions from the dimensions of the algebra.
    PFromDims {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<i64>,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Forest counts from the number of decorations of each degree.
    RFromD {
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<i64>,
        #[arg(long)]
        order: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum IsoCommand {
    /// Counts, ranks and intertwining up to `--max`.
    Check,
}

#[derive(Subcommand, Debug)]
enum GoldenCommand {
    Run {
        /// Print each file with its source instead of running it.
        #[arg(long)]
        list: bool,
        /// Read the files from a directory instead of the embedded copies.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AlgebraName {
    Fqsym,
    Hck,
    HckPrime,
}

/// Exit status and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Text to print and whether every check in it passed.
struct Printed {
    text: String,
    ok: bool,
}

impl Printed {
    fn ok(text: String) -> Self {
        Self { text, ok: true }
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    match execute(&cli) {
        Ok(p) => {
            let mut stdout = p.text;
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Outcome { code: if p.ok { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

/// 1 for failed verifications, 2 for everything the input is to blame for.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Verification(_) => 1,
        _ => 2,
    }
}

impl Cli {
    fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else {
            self.format.unwrap_or(Format::Text)
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable report")
}

fn computed(cli: &Cli, c: &Computed) -> Printed {
    match cli.format() {
        Format::Json => Printed::ok(to_json(&json!({ "result": c.to_string(), "terms": c.terms() }))),
        _ => Printed::ok(c.to_string()),
    }
}

fn execute(cli: &Cli) -> Result<Printed> {
    match &cli.command {
        Command::Hck { op, exprs, decorations } => {
            let args: Vec<&str> = exprs.iter().map(String::as_str).collect();
            let d = verbs::decorations_for(decorations.as_deref(), &args)?;
            Ok(computed(cli, &verbs::hck(op, &args, &d)?))
        }
        Command::Fqsym { op, exprs } => {
            let args: Vec<&str> = exprs.iter().map(String::as_str).collect();
            Ok(computed(cli, &verbs::fqsym(op, &args)?))
        }
        Command::Pair(p) => pair(cli, p),
        Command::Halfprod { command } => halfprod(cli, command),
        Command::Prim { command } => prim(cli, command),
        Command::Series { command } => series(cli, command),
        Command::Iso { command: IsoCommand::Check } => iso(cli),
        Command::Laws { suite, algebra, samples, exhaustive, decorations } => {
            laws_cmd(cli, suite, *algebra, *samples, *exhaustive, decorations)
        }
        Command::Golden { command: GoldenCommand::Run { list, dir } } => golden_cmd(cli, *list, dir.as_deref()),
    }
}

fn pair(cli: &Cli, p: &PairArgs) -> Result<Printed> {
    if let Some(PairCommand::Table { weight, decorations }) = &p.table {
        let d = match decorations {
            Some(s) => verbs::parse_decorations(s)?,
            None => DecorationSet::single(),
        };
        let g = gram(&d, *weight)?;
        let names: Vec<String> = g.basis.iter().map(render_forest).collect();
        return Ok(Printed::ok(match cli.format() {
            Format::Tsv => g.to_tsv(),
            Format::Json => {
                let rows: Vec<Vec<String>> =
                    g.entries.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
                to_json(&json!({ "weight": weight, "forests": names, "rows": rows }))
            }
            Format::Text => {
                let mut out = String::new();
                for (name, row) in names.iter().zip(&g.entries) {
                    let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                    writeln!(out, "{name}\t{}", cells.join(" ")).expect("write to string");
                }
                out
            }
        }));
    }
    if p.forests.len() != 2 {
        return Err(Error::Precondition("pair takes two forest expressions".into()));
    }
    let args: Vec<&str> = p.forests.iter().map(String::as_str).collect();
    let d = verbs::decorations_for(p.decorations.as_deref(), &args)?;
    let (x, y) = (verbs::parse_hck(args[0], &d)?, verbs::parse_hck(args[1], &d)?);
    let bijection = || -> Result<Rational> {
        let mut acc = Rational::default();
        for (f, cf) in x.iter() {
            for (g, cg) in y.iter() {
                acc += cf * cg * pair_oracle(f, g)?;
            }
        }
        Ok(acc)
    };
    let value = match p.oracle {
        Oracle::Recursive => pair_elem(&x, &y),
        Oracle::Bijection => bijection()?,
        Oracle::Both => {
            let (r, b) = (pair_elem(&x, &y), bijection()?);
            if r != b {
                return Err(Error::Verification(format!("recursive pairing {r} differs from card I = {b}")));
            }
            r
        }
    };
    Ok(computed(cli, &Computed::Scalar(value)))
}

fn halfprod(cli: &Cli, c: &HalfprodCommand) -> Result<Printed> {
    let single = |left: bool, f: &str, g: &str, decorations: &Option<String>| -> Result<Printed> {
        let d = verbs::decorations_for(decorations.as_deref(), &[f, g])?;
        let (x, y) = (verbs::parse_hck(f, &d)?, verbs::parse_hck(g, &d)?);
        Ok(computed(cli, &Computed::Forests(verbs::half_product(&d, left, &x, &y)?)))
    };
    match c {
        HalfprodCommand::Preml { f, g, decorations } => single(true, f, g, decorations),
        HalfprodCommand::Premr { f, g, decorations } => single(false, f, g, decorations),
        HalfprodCommand::Table { decorations } => {
            let d = verbs::parse_decorations(decorations)?;
            let t = build_table(&d, cli.max_degree.unwrap_or(DEFAULT_BOUND))?;
            let rows: Vec<[String; 4]> = t
                .iter()
                .map(|((f, g), (p, s))| [render_forest(f), render_forest(g), p.to_string(), s.to_string()])
                .collect();
            Ok(Printed::ok(match cli.format() {
                Format::Json => to_json(
                    &rows
                        .iter()
                        .map(|[f, g, p, s]| json!({ "left": f, "right": g, "prec": p, "succ": s }))
                        .collect::<Vec<_>>(),
                ),
                Format::Tsv => {
                    let mut out = String::from("left\tright\tprec\tsucc\n");
                    for r in &rows {
                        writeln!(out, "{}", r.join("\t")).expect("write to string");
                    }
                    out
                }
                Format::Text => {
                    let mut out = String::new();
                    for [f, g, p, s] in &rows {
                        writeln!(out, "({f}) ≺ ({g}) = {p}\n({f}) ≻ ({g}) = {s}").expect("write to string");
                    }
                    out
                }
            }))
        }
    }
}

fn forests_algebra(decorations: &str) -> Result<Hck> {
    Hck::new(verbs::parse_decorations(decorations)?, 1, HckVariant::Standard)
}

fn prim(cli: &Cli, c: &PrimCommand) -> Result<Printed> {
    match c {
        PrimCommand::Dims { algebra, decorations } => {
            let max = cli.max_degree.unwrap_or(5);
            let dims: Vec<usize> = match algebra {
                PrimAlgebra::Fqsym => (1..=max).map(|n| prim_tot_basis(&Fqsym, n).dim()).collect(),
                PrimAlgebra::Hck => {
                    let h = forests_algebra(decorations)?;
                    (1..=max).map(|n| prim_tot_basis(&h, n).dim()).collect()
                }
            };
            Ok(Printed::ok(match cli.format() {
                Format::Json => to_json(&json!({ "max": max, "dims": dims })),
                _ => dims.iter().map(ToString::to_string).collect::<Vec<_>>().join(","),
            }))
        }
        PrimCommand::Basis { algebra, degree, decorations } => {
            let vectors: Vec<String> = match algebra {
                PrimAlgebra::Fqsym => render_all(prim_tot_basis(&Fqsym, *degree).vectors()),
                PrimAlgebra::Hck => render_all(prim_tot_basis(&forests_algebra(decorations)?, *degree).vectors()),
            };
            Ok(Printed::ok(match cli.format() {
                Format::Json => to_json(&json!({ "degree": degree, "vectors": vectors })),
                _ => vectors.join("\n"),
            }))
        }
    }
}

fn render_all<K: Ord + std::fmt::Display>(xs: Vec<LinComb<K>>) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn series(cli: &Cli, c: &SeriesCommand) -> Result<Printed> {
    let (s, order) = match c {
        SeriesCommand::PFromDims { dims, order } => {
            let order = order.unwrap_or(dims.len());
            if order > dims.len() {
                return Err(Error::Series(format!("order {order} needs {order} dimensions, got {}", dims.len())));
            }
            (p_from_r(&Series::from_dims(order, &dims[..order]))?, order)
        }
        SeriesCommand::RFromD { d, order } => {
            let order = order.unwrap_or(d.len());
            let n = order.min(d.len());
            (r_from_d(&Series::from_dims(order, &d[..n]))?, order)
        }
    };
    let coeffs: Vec<String> = s.integers()?[1..=order].iter().map(ToString::to_string).collect();
    Ok(Printed::ok(match cli.format() {
        Format::Json => to_json(&json!({ "order": order, "coefficients": coeffs })),
        _ => coeffs.join(","),
    }))
}

fn iso(cli: &Cli) -> Result<Printed> {
    let r = verify_iso(cli.max_degree.unwrap_or(DEFAULT_MAX))?;
    let text = match cli.format() {
        Format::Json => to_json(&r),
        _ => {
            let mut out = String::new();
            for d in &r.degrees {
                writeln!(
                    out,
                    "degree {}: decorations {} forests {} expected {} rank {} {}",
                    d.degree,
                    d.decorations,
                    d.forests,
                    d.expected,
                    d.rank,
                    if d.ok { "ok" } else { "FAIL" }
                )
                .expect("write to string");
            }
            writeln!(
                out,
                "morphism through degree {}: {}",
                r.morphism_max,
                if r.morphism_ok { "ok" } else { "FAIL" }
            )
            .expect("write to string");
            if let Some(w) = &r.witness {
                writeln!(out, "witness: {w}").expect("write to string");
            }
            out.push_str(if r.ok { "PASS" } else { "FAIL" });
            out
        }
    };
    Ok(Printed { text, ok: r.ok })
}

fn laws_cmd(
    cli: &Cli,
    suite: &str,
    algebra: AlgebraName,
    samples: usize,
    exhaustive: usize,
    decorations: &str,
) -> Result<Printed> {
    let opts = Options {
        max_degree: cli.max_degree.unwrap_or(Options::default().max_degree),
        exhaustive,
        samples,
        seed: cli.seed.unwrap_or(0),
    };
    let suites: Vec<&str> = if suite == "all" { laws::suite_names() } else { vec![suite] };
    let reports = match algebra {
        AlgebraName::Fqsym => run_suites(&suites, &Fqsym, &opts)?,
        AlgebraName::Hck | AlgebraName::HckPrime => {
            let variant = if algebra == AlgebraName::Hck { HckVariant::Standard } else { HckVariant::Prime };
            let h = Hck::new(verbs::parse_decorations(decorations)?, opts.max_degree, variant)?;
            run_suites(&suites, &h, &opts)?
        }
    };
    let ok = reports.iter().all(LawReport::passed);
    let text = match cli.format() {
        Format::Json if reports.len() == 1 => to_json(&reports[0]),
        Format::Json => to_json(&reports),
        _ => reports.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n\n"),
    };
    Ok(Printed { text, ok })
}

fn run_suites<A: Bidendriform>(names: &[&str], alg: &A, opts: &Options) -> Result<Vec<LawReport>> {
    names.iter().map(|n| laws::run_suite(n, alg, opts)).collect()
}

fn golden_cmd(cli: &Cli, list: bool, dir: Option<&std::path::Path>) -> Result<Printed> {
    let files = match dir {
        Some(d) => golden::load_dir(d)?,
        None => golden::FILES.iter().map(|(n, t)| (n.to_string(), t.to_string())).collect(),
    };
    if list {
        let mut rows = Vec::new();
        for (name, text) in &files {
            rows.push((name.clone(), golden::parse_file(name, text)?.source));
        }
        return Ok(Printed::ok(match cli.format() {
            Format::Json => to_json(&rows.iter().map(|(n, s)| json!({ "file": n, "source": s })).collect::<Vec<_>>()),
            _ => rows.iter().map(|(n, s)| format!("{n}\t{s}")).collect::<Vec<_>>().join("\n"),
        }));
    }
    let r = golden::run_files(&files)?;
    let ok = r.passed();
    Ok(Printed { text: if cli.format() == Format::Json { to_json(&r) } else { r.to_string() }, ok })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("bidend").chain(args.iter().copied()))
    }

    #[test]
    fn examples() {
        let o = go(&["pair", "*[*]", "*[*]"]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "1\n"));
        let o = go(&["fqsym", "preml", "12", "123"]);
        assert_eq!(o.stdout, "1*13452 + 1*31452 + 1*34152 + 1*34512\n");
        assert_eq!(go(&["pair", "--oracle", "both", "*[*] *", "* *[*]"]).stdout, "2\n");
    }

    #[test]
    fn exit_statuses() {
        assert_eq!(go(&["hck", "cop", "a[b"]).code, 2);
        assert_eq!(go(&["hck", "frobnicate", "a"]).code, 2);
        assert_eq!(go(&["bogus"]).code, 2);
        assert_eq!(go(&["fqsym", "mul", "112", "1"]).code, 2);
        assert_eq!(go(&["--help"]).code, 0);
        let o = go(&["laws", "--suite", "bidendriform", "--algebra", "hck-prime", "--maxdeg", "3", "--samples", "0"]);
        assert_eq!(o.code, 1, "{}", o.stdout);
        assert!(o.stdout.contains("E8"));
    }

    #[test]
    fn tables_and_series() {
        let o = go(&["pair", "table", "--weight", "2", "--format", "tsv"]);
        assert_eq!(o.stdout, "forest\t* *\t*[*]\n* *\t2\t1\n*[*]\t1\t1\n");
        assert_eq!(go(&["series", "r-from-d", "--d", "1", "--order", "6"]).stdout, "1,2,5,14,42,132\n");
        assert_eq!(go(&["series", "p-from-dims", "--dims", "1,2,6,24"]).stdout, "1,0,1,6\n");
        assert_eq!(go(&["series", "p-from-dims", "--dims", "1,2", "--order", "3"]).code, 2);
        assert_eq!(go(&["prim", "dims", "--algebra", "fqsym", "--max", "4"]).stdout, "1,0,1,6\n");
    }

    #[test]
    fn golden_listing() {
        let o = go(&["golden", "run", "--list"]);
        assert_eq!(o.code, 0);
        assert_eq!(o.stdout.lines().count(), golden::FILES.len());
    }
}

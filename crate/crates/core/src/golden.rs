//! Checked-in reference data and the runner that replays it.
//!
//! Each file carries a `source` describing where its values were transcribed
//! from, and any of four kinds of entries: expression cases, Gram tables,
//! series rows with kernel dimensions, and lists of primitive vectors.

use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::Fqsym;
use crate::error::{Error, Result};
use crate::fqsym::{self, Perm};
use crate::pairing::{gram_on, pair_oracle};
use crate::pforest::{enumerate_forests, parse_forest, render_forest, DecorationSet};
use crate::prim::{prim_tot_basis, GradedSubspace};
use crate::series::{p_from_r, Series};
use crate::verbs::{self, Computed};

/// The embedded data files, by name.
pub const FILES: &[(&str, &str)] = &[
    ("forest_coproducts.toml", include_str!("../data/golden/forest_coproducts.toml")),
    ("fqsym.toml", include_str!("../data/golden/fqsym.toml")),
    ("pairing_tables.toml", include_str!("../data/golden/pairing_tables.toml")),
    ("primitive_dimensions.toml", include_str!("../data/golden/primitive_dimensions.toml")),
    ("primitives.toml", include_str!("../data/golden/primitives.toml")),
];

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoldenFile {
    pub source: String,
    #[serde(default)]
    pub case: Vec<Case>,
    #[serde(default)]
    pub table: Vec<Table>,
    #[serde(default)]
    pub series: Vec<SeriesRow>,
    #[serde(default)]
    pub kernel: Vec<KernelDims>,
    #[serde(default)]
    pub primitives: Vec<Primitives>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Case {
    pub name: String,
    pub algebra: String,
    pub decorations: Option<String>,
    pub op: String,
    pub args: Vec<String>,
    pub expected: String,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Table {
    pub weight: usize,
    pub forests: Vec<String>,
    pub rows: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesRow {
    pub name: String,
    pub input: String,
    pub values: Vec<i64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelDims {
    pub name: String,
    pub algebra: String,
    pub dims: Vec<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Primitives {
    pub degree: usize,
    pub vectors: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub file: String,
    pub entry: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenReport {
    pub outcomes: Vec<Outcome>,
}

impl GoldenReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Outcome> {
        self.outcomes.iter().filter(|o| !o.ok)
    }
}

impl fmt::Display for GoldenReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            let mark = if o.ok { "ok  " } else { "FAIL" };
            writeln!(f, "{mark} {}: {}", o.file, o.entry)?;
            if !o.ok {
                for line in o.detail.lines() {
                    writeln!(f, "       {line}")?;
                }
            }
        }
        let failed = self.failures().count();
        write!(f, "{} entries, {failed} failed: {}", self.outcomes.len(), if failed == 0 { "PASS" } else { "FAIL" })
    }
}

pub fn parse_file(name: &str, text: &str) -> Result<GoldenFile> {
    toml::from_str(text).map_err(|e| Error::Syntax { offset: 0, message: format!("{name}: {e}") })
}

/// `(file, source)` for every embedded file.
pub fn list() -> Result<Vec<(String, String)>> {
    FILES.iter().map(|(name, text)| Ok((name.to_string(), parse_file(name, text)?.source))).collect()
}

/// Reads every `*.toml` file of `dir`, in name order.
pub fn load_dir(dir: &Path) -> Result<Vec<(String, String)>> {
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", dir.display()));
    let mut names: Vec<_> = std::fs::read_dir(dir)
        .map_err(io)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).map_err(io)?;
            Ok((p.file_name().unwrap_or_default().to_string_lossy().into_owned(), text))
        })
        .collect()
}

pub fn run_embedded() -> Result<GoldenReport> {
    let files: Vec<(String, String)> = FILES.iter().map(|(n, t)| (n.to_string(), t.to_string())).collect();
    run_files(&files)
}

pub fn run_files(files: &[(String, String)]) -> Result<GoldenReport> {
    let mut outcomes = Vec::new();
    for (name, text) in files {
        let g = parse_file(name, text)?;
        outcomes.extend(run_file(name, &g)?);
    }
    Ok(GoldenReport { outcomes })
}

fn squash(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn outcome(file: &str, entry: String, mismatch: Option<String>) -> Outcome {
    Outcome { file: file.to_string(), entry, ok: mismatch.is_none(), detail: mismatch.unwrap_or_default() }
}

pub fn run_file(file: &str, g: &GoldenFile) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    for c in &g.case {
        out.push(outcome(file, c.name.clone(), run_case(c)?));
    }
    for t in &g.table {
        out.push(outcome(file, format!("pairing table, weight {}", t.weight), run_table(t)?));
    }
    for s in &g.series {
        out.push(outcome(file, s.name.clone(), run_series(s)?));
    }
    for k in &g.kernel {
        out.push(outcome(file, k.name.clone(), run_kernel(k)?));
    }
    for p in &g.primitives {
        out.push(outcome(file, format!("primitives of degree {}", p.degree), run_primitives(p)?));
    }
    Ok(out)
}

/// `None` on an exact match, else the expected and computed values.
pub fn run_case(c: &Case) -> Result<Option<String>> {
    let args: Vec<&str> = c.args.iter().map(String::as_str).collect();
    let expected = squash(&c.expected);
    let (got, d) = match c.algebra.as_str() {
        "hck" => {
            let d = verbs::decorations_for(c.decorations.as_deref(), &args)?;
            (verbs::hck(&c.op, &args, &d)?, d)
        }
        "fqsym" => (verbs::fqsym(&c.op, &args)?, DecorationSet::empty()),
        other => return Err(Error::Unknown { kind: "algebra", name: other.to_string() }),
    };
    let want: Computed = got.parse_like(&expected, &d)?;
    Ok((want != got).then(|| format!("expected {want}\ncomputed {got}")))
}

pub fn run_table(t: &Table) -> Result<Option<String>> {
    let d = DecorationSet::single();
    let basis = t.forests.iter().map(|f| parse_forest(f, &d)).collect::<Result<Vec<_>>>()?;
    let mut sorted = basis.clone();
    sorted.sort();
    let all = enumerate_forests(&d, t.weight);
    if sorted != *all {
        let names: Vec<String> = all.iter().map(render_forest).collect();
        return Ok(Some(format!("forests of weight {} are {names:?}", t.weight)));
    }
    let g = gram_on(t.weight, basis)?;
    let names = &t.forests;
    let want: Vec<Vec<BigInt>> = t.rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    if g.entries != want {
        return Ok(Some(format!("recursive pairing gives\n{}", g.to_tsv())));
    }
    for (i, f) in g.basis.iter().enumerate() {
        for (j, h) in g.basis.iter().enumerate() {
            let c = pair_oracle(f, h)?;
            if c != crate::linear::Rational::from_integer(want[i][j].clone()) {
                return Ok(Some(format!("card I({}, {}) = {c}, table has {}", names[i], names[j], want[i][j])));
            }
        }
    }
    Ok(None)
}

pub fn run_series(s: &SeriesRow) -> Result<Option<String>> {
    let order = s.values.len();
    let input = match s.input.as_str() {
        "factorials" => Series::factorials(order),
        other => return Err(Error::Unknown { kind: "series input", name: other.to_string() }),
    };
    let got = p_from_r(&input)?.integers()?;
    let want: Vec<BigInt> = s.values.iter().map(|&x| BigInt::from(x)).collect();
    Ok((got[1..] != want[..]).then(|| format!("computed {:?}", &got[1..])))
}

pub fn run_kernel(k: &KernelDims) -> Result<Option<String>> {
    if k.algebra != "fqsym" {
        return Err(Error::Unknown { kind: "algebra", name: k.algebra.clone() });
    }
    let got: Vec<usize> = (1..=k.dims.len()).map(|n| prim_tot_basis(&Fqsym, n).dim()).collect();
    Ok((got != k.dims).then(|| format!("computed {got:?}")))
}

/// Each vector must lie in the kernel, and together they must span it.
pub fn run_primitives(p: &Primitives) -> Result<Option<String>> {
    let kernel = prim_tot_basis(&Fqsym, p.degree);
    let mut span = GradedSubspace::new(p.degree, Perm::all(p.degree));
    for text in &p.vectors {
        let x = fqsym::parse_elem(text)?;
        if !kernel.contains(&x)? {
            return Ok(Some(format!("{x} is not totally primitive")));
        }
        span.insert(&x)?;
    }
    Ok((!span.same_span(&kernel)).then(|| format!("span has dimension {}, kernel {}", span.dim(), kernel.dim())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_files_pass() {
        let r = run_embedded().unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.outcomes.len() > 25);
    }

    #[test]
    fn every_file_is_listed() {
        let l = list().unwrap();
        assert_eq!(l.len(), FILES.len());
        assert!(l.iter().all(|(_, s)| !s.is_empty()));
    }

    #[test]
    fn mismatches_are_reported() {
        let text = r#"
source = "test"
[[case]]
name = "wrong"
algebra = "fqsym"
op = "preml"
args = ["12", "123"]
expected = "13452 + 31452 + 34152"
[[table]]
weight = 2
forests = ["* *", "*[*]"]
rows = [[2, 1], [1, 2]]
"#;
        let g = parse_file("t", text).unwrap();
        let r = run_file("t", &g).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|o| !o.ok));
        assert!(r[0].detail.contains("34512"));
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(parse_file("t", "source = \"x\"\nbogus = 1").is_err());
    }
}

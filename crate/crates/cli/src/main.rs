use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use cpa_core::algebra::{associativity_residuals, compatibility_residuals, nonzero_indices, residual_label};
use cpa_core::catalog::{load_catalog, load_catalog_dir, parse_algebra, verify_entry, CatalogEntry, ReportVerdict};
use cpa_core::invariants::{format_solution, solve, InvariantKind};
use cpa_core::kernel::{parse_rational, RatFunc};
use cpa_core::operators::{exhaustive_solutions_mod_p, verify_family, FamilyKind, ParamMatrix, Verdict, Witness, DEFAULT_LIMIT};
use cpa_core::report::{emit_report, Format};
use cpa_core::{AlgebraPair, Product};

#[derive(Parser)]
#[command(name = "cpa", version, about = "Exact checks on compatible pairs of associative algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Associativity of both products and their compatibility.
    Check {
        file: PathBuf,
        #[arg(long, value_name = "NAME=VALUE")]
        assign: Vec<String>,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Solution space of a linear invariant.
    Invariants {
        file: PathBuf,
        #[arg(long)]
        kind: InvariantKind,
        #[arg(long, value_name = "NAME=VALUE")]
        assign: Vec<String>,
        #[arg(long, default_value = "json")]
        format: Format,
    },
    /// Verify a parametrized family, or enumerate all solutions over F_p.
    Operators {
        file: PathBuf,
        #[arg(long)]
        kind: FamilyKind,
        #[arg(long, conflicts_with = "oracle", required_unless_present = "oracle")]
        family: Option<PathBuf>,
        #[arg(long, value_name = "P")]
        oracle: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: u64,
        #[arg(long, value_name = "NAME=VALUE")]
        assign: Vec<String>,
        #[arg(long, default_value = "json")]
        format: Format,
    },
    /// Verify every catalog entry against its printed tables.
    VerifyCatalog {
        #[arg(long, value_name = "NAME")]
        only: Vec<String>,
        #[arg(long)]
        out: PathBuf,
        /// Catalog directory; defaults to CPA_CATALOG_DIR, then the built-in catalog.
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Exit nonzero when any check is MISMATCH.
        #[arg(long)]
        strict_paper: bool,
        #[arg(long, default_value = "json")]
        format: Format,
    },
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyDoc {
    #[serde(default)]
    params: Vec<String>,
    matrix: Vec<Vec<String>>,
    #[serde(default)]
    exclusions: Vec<String>,
}

type Res<T> = Result<T, String>;

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_pair(path: &Path, assign: &[String]) -> Res<AlgebraPair<RatFunc>> {
    let pair = parse_algebra(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    if assign.is_empty() {
        return Ok(pair);
    }
    let mut a = BTreeMap::new();
    for s in assign {
        let (k, v) = s.split_once('=').ok_or_else(|| format!("assignment `{s}` is not NAME=VALUE"))?;
        let k = k.trim();
        if pair.vars().index_of(k).is_none() {
            return Err(format!("`{k}` is not a parameter of {}", pair.name));
        }
        let v = parse_rational(v.trim()).ok_or_else(|| format!("assignment `{s}`: `{}` is not a rational number", v.trim()))?;
        a.insert(k.to_string(), v);
    }
    pair.assign(&a).map_err(|e| format!("cannot assign parameters of {}: {e}", pair.name))
}

fn output(v: &Value, text: String, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(v).unwrap()),
        Format::Text => print!("{text}"),
    }
}

fn check(file: &Path, assign: &[String], format: Format) -> Res<()> {
    let pair = load_pair(file, assign)?;
    let n = pair.dim();
    let mut v = serde_json::Map::new();
    let mut text = String::new();
    v.insert("name".into(), json!(pair.name));
    let mut record = |key: &str, res: &[RatFunc]| {
        let bad: Vec<String> = nonzero_indices(res).into_iter().map(|i| residual_label(i, n, 4)).collect();
        text.push_str(&format!("{key}: {}\n", bad.is_empty()));
        if !bad.is_empty() {
            text.push_str(&format!("  nonzero residuals: {}\n", bad.join(" ")));
        }
        v.insert(key.into(), json!({ "holds": bad.is_empty(), "nonzero": bad }));
    };
    for p in Product::BOTH {
        record(&format!("associative({})", p.name()), &associativity_residuals(pair.tensor(p)));
    }
    record("compatible", &compatibility_residuals(&pair));
    output(&Value::Object(v), text, format);
    Ok(())
}

fn invariants(file: &Path, kind: InvariantKind, assign: &[String], format: Format) -> Res<()> {
    let pair = load_pair(file, assign)?;
    let sp = solve(kind, &pair);
    let general = format_solution(&sp, pair.vars());
    let params = general.first().map(|g| g.params.clone()).unwrap_or_default();
    let basis: Vec<Vec<Vec<Vec<String>>>> = sp
        .basis()
        .iter()
        .map(|b| b.iter().map(|m| m.rows().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()).collect())
        .collect();
    let v = json!({
        "name": pair.name,
        "kind": kind.name(),
        "slots": sp.slots,
        "freedim": sp.freedim(),
        "params": params,
        "basis": basis,
        "general": general.iter().map(|g| g.to_strings()).collect::<Vec<_>>(),
        "exclusions": sp.exclusions.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
    });
    let mut text = format!("{} {}: freedim {}\n", pair.name, kind, sp.freedim());
    for (slot, g) in sp.slots.iter().zip(&general) {
        text.push_str(&format!("{slot} =\n"));
        for row in g.to_strings() {
            text.push_str(&format!("  [{}]\n", row.join(", ")));
        }
    }
    if !sp.exclusions.is_empty() {
        let e: Vec<String> = sp.exclusions.iter().map(|e| e.to_string()).collect();
        text.push_str(&format!("assuming nonzero: {}\n", e.join(", ")));
    }
    output(&v, text, format);
    Ok(())
}

fn load_family(path: &Path, pair: &AlgebraPair<RatFunc>) -> Res<ParamMatrix> {
    let doc: FamilyDoc = serde_json::from_str(&read(path)?)
        .map_err(|e| format!("{}: syntax error at line {}, column {}: {e}", path.display(), e.line(), e.column()))?;
    let n = pair.dim();
    if doc.matrix.len() != n || doc.matrix.iter().any(|r| r.len() != n) {
        return Err(format!("{}: family matrix is not {n}x{n}", path.display()));
    }
    ParamMatrix::parse(&doc.matrix, &doc.params, pair.vars(), &doc.exclusions).map_err(|e| format!("{}: {e}", path.display()))
}

fn verdict_value(kind: FamilyKind, pair: &AlgebraPair<RatFunc>, fam: &ParamMatrix) -> (Value, String) {
    let v = verify_family(kind, pair, fam);
    let n = pair.dim();
    let mut o = serde_json::Map::new();
    o.insert("kind".into(), json!(kind.to_string()));
    o.insert("verdict".into(), json!(v.set.verdict.tag()));
    let mut text = format!("{kind}: {}\n", v.set.verdict.tag());
    match &v.set.verdict {
        Verdict::Zero => {}
        Verdict::Conditional { constraints } => {
            let c: Vec<String> = constraints.iter().map(|c| c.to_string()).collect();
            text.push_str(&format!("holds where: {} = 0\n", c.join(" = ")));
            o.insert("constraints".into(), json!(c));
        }
        Verdict::NonZero { witness } => {
            let w = match witness {
                Witness::Residual(i) => residual_label(*i, n, 3),
                Witness::Determinant => "determinant".into(),
            };
            text.push_str(&format!("witness: {w}\n"));
            o.insert("witness".into(), json!(w));
        }
    }
    if let Some(d) = &v.det {
        text.push_str(&format!("det: {}\n", d.det));
        o.insert("det".into(), json!(d.det.to_string()));
        o.insert("det_unit".into(), json!(d.unit));
    }
    (Value::Object(o), text)
}

fn operators(
    file: &Path,
    kind: FamilyKind,
    family: Option<&Path>,
    oracle: Option<u64>,
    limit: u64,
    assign: &[String],
    format: Format,
) -> Res<()> {
    let pair = load_pair(file, assign)?;
    if let Some(f) = family {
        let fam = load_family(f, &pair)?;
        let (v, text) = verdict_value(kind, &pair, &fam);
        output(&v, text, format);
        return Ok(());
    }
    let q = oracle.expect("clap requires --family or --oracle");
    let rational = pair
        .to_rational()
        .ok_or_else(|| format!("{} has free parameters; fix them with --assign", pair.name))?;
    let r = exhaustive_solutions_mod_p(kind, &rational, q, limit).map_err(|e| e.to_string())?;
    let n = r.n;
    let mats: Vec<Vec<Vec<u32>>> = r.solutions.iter().map(|s| s.chunks(n).map(|c| c.to_vec()).collect()).collect();
    let v = json!({
        "kind": kind.to_string(),
        "p": r.q,
        "count": r.count,
        "solutions": mats,
        "truncated": r.truncated,
    });
    let mut text = format!("{kind} over F_{}: {} solutions\n", r.q, r.count);
    for m in &mats {
        let rows: Vec<String> = m.iter().map(|r| format!("{r:?}")).collect();
        text.push_str(&format!("  [{}]\n", rows.join(", ")));
    }
    if r.truncated {
        text.push_str("  (list truncated)\n");
    }
    output(&v, text, format);
    Ok(())
}

fn verify_catalog(only: &[String], out: &Path, dir: Option<&Path>, strict: bool, format: Format) -> Res<bool> {
    let entries: Vec<CatalogEntry> = match dir {
        Some(d) => load_catalog_dir(d),
        None => load_catalog(),
    }
    .map_err(|e| e.to_string())?;
    let selected: Vec<&CatalogEntry> = if only.is_empty() {
        entries.iter().collect()
    } else {
        for o in only {
            if !entries.iter().any(|e| e.name() == o) {
                return Err(format!("no catalog entry named `{o}`"));
            }
        }
        entries.iter().filter(|e| only.iter().any(|o| o == e.name())).collect()
    };
    let reports: Vec<_> = selected.par_iter().map(|e| verify_entry(e)).collect();
    std::fs::create_dir_all(out).map_err(|e| format!("{}: {e}", out.display()))?;
    let name = match format {
        Format::Json => "report.json",
        Format::Text => "report.txt",
    };
    let path = out.join(name);
    std::fs::write(&path, emit_report(&reports, format)).map_err(|e| format!("{}: {e}", path.display()))?;
    let summary = cpa_core::report::summary(&reports);
    println!("entries: {}", reports.len());
    for (v, n) in &summary {
        println!("{v}: {n}");
    }
    println!("report: {}", path.display());
    Ok(!(strict && summary[ReportVerdict::Mismatch.as_str()] > 0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check { file, assign, format } => check(file, assign, *format).map(|_| true),
        Command::Invariants { file, kind, assign, format } => invariants(file, *kind, assign, *format).map(|_| true),
        Command::Operators { file, kind, family, oracle, limit, assign, format } => {
            operators(file, *kind, family.as_deref(), *oracle, *limit, assign, *format).map(|_| true)
        }
        Command::VerifyCatalog { only, out, catalog, strict_paper, format } => {
            verify_catalog(only, out, catalog.as_deref(), *strict_paper, *format)
        }
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: MISMATCH verdicts present (--strict-paper)");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

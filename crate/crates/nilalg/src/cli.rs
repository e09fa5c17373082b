//! Command-line front end.
//!
//! Exit codes: 0 = all checks passed, 1 = a mathematical check failed,
//! 2 = usage or parse error.  `--format json` switches every command
//! to a stable machine-readable report (one JSON object on stdout).

use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::catalog::{
    self, builtin_catalog, claim_for, instantiate, parse_algebra_file, sample_assignments,
    unparse, CatalogEntry, Product,
};
use crate::cohomology::{coboundary_space, cocycle_space, h2, parse_form, BilinearForm};
use crate::extension::{extend, ExtensionSpec};
use crate::identity::{builtin, holds};
use crate::iso::{decide, verify_witness, DecideOptions, IsoVerdict, NonIsoEvidence};
use crate::linalg::Matrix;
use crate::orbit::{verify_action_block, verify_family};
use crate::scalar::{parse_scalar, FieldTag, Scalar};

#[derive(Parser)]
#[command(name = "nilalg", version, about = "Exact toolkit for nilpotent CD-algebras")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct FileArgs {
    /// Algebra file in the catalog text format.
    file: PathBuf,
    /// Parameter assignment, e.g. `alpha=1,lambda=-2`.
    #[arg(long)]
    params: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Identity report, nilpotency index, annihilator dimensions, and
    /// fingerprint of one algebra.
    Check {
        #[command(flatten)]
        target: FileArgs,
        /// Identity set to sweep.
        #[arg(long, default_value = "cd")]
        variety: String,
    },
    /// Z²/B²/H² dimensions and printed bases.
    Cohomology {
        #[command(flatten)]
        target: FileArgs,
        /// Variety whose cocycle identities are used (always includes
        /// the cd constraints).
        #[arg(long, default_value = "cd")]
        variety: String,
    },
    /// Central extension by one cocycle per adjoined direction,
    /// emitted in the algebra file format.
    Extend {
        #[command(flatten)]
        target: FileArgs,
        /// Cocycle expression over D(i,j) symbols; repeatable.
        #[arg(long = "cocycle", required = true)]
        cocycles: Vec<String>,
    },
    /// Isomorphism decision for two algebra files.
    Iso {
        file_a: PathBuf,
        file_b: PathBuf,
        /// JSON file `{"rows": [[scalar, ...], ...]}` with a claimed
        /// witness (columns are basis-vector images).
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Primes for the finite-field search, e.g. `5,7,11`.
        #[arg(long)]
        primes: Option<String>,
        /// Time budget per prime, e.g. `60s` or `500ms`.
        #[arg(long)]
        budget: Option<String>,
    },
    /// Basis-invariant fingerprint of one algebra.
    Fingerprint {
        #[command(flatten)]
        target: FileArgs,
    },
    /// Catalog-level verification.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Orbit-formula verification.
    Action {
        #[command(subcommand)]
        cmd: ActionCmd,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// Verifies every claim attached to the selected catalog entries.
    Verify {
        /// Restrict to one section label (e.g. `2.2`).
        #[arg(long)]
        section: Option<String>,
        /// Admissible parameter samples per family.
        #[arg(long, default_value_t = 3)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum ActionCmd {
    /// Verifies one stored action block at random samples.
    Verify {
        /// Block id (e.g. `2.3`).
        #[arg(long)]
        block: String,
        /// Random samples per lambda value.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// RNG seed (deterministic default).
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// A failed run: exit code (1 or 2) plus a message for stderr.
struct Failure {
    code: i32,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        msg: msg.into(),
    }
}

fn math(msg: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        msg: msg.into(),
    }
}

/// A finished report in both formats.
struct Report {
    text: String,
    json: Value,
    code: i32,
}

/// Runs the command line; returns the process exit code.
pub fn run<I: IntoIterator<Item = String>>(argv: I) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version with code 0.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    init_threads();
    let format = cli.format;
    match dispatch(cli.cmd) {
        Ok(report) => {
            match format {
                Format::Text => println!("{}", report.text.trim_end()),
                Format::Json => println!("{}", report.json),
            }
            report.code
        }
        Err(f) => {
            match format {
                Format::Text => eprintln!("error: {}", f.msg),
                Format::Json => println!("{}", json!({ "error": f.msg, "exit": f.code })),
            }
            f.code
        }
    }
}

fn init_threads() {
    if let Ok(n) = std::env::var("NILALG_THREADS") {
        if let Ok(n) = n.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<Report, Failure> {
    match cmd {
        Cmd::Check { target, variety } => cmd_check(&target, &variety),
        Cmd::Cohomology { target, variety } => cmd_cohomology(&target, &variety),
        Cmd::Extend { target, cocycles } => cmd_extend(&target, &cocycles),
        Cmd::Iso {
            file_a,
            file_b,
            witness,
            primes,
            budget,
        } => cmd_iso(&file_a, &file_b, witness.as_deref(), primes.as_deref(), budget.as_deref()),
        Cmd::Fingerprint { target } => cmd_fingerprint(&target),
        Cmd::Catalog {
            cmd: CatalogCmd::Verify { section, samples },
        } => cmd_catalog_verify(section.as_deref(), samples),
        Cmd::Action {
            cmd: ActionCmd::Verify {
                block,
                samples,
                seed,
            },
        } => cmd_action_verify(&block, samples, seed),
    }
}

// ---------------------------------------------------------------------------
// Loading helpers
// ---------------------------------------------------------------------------

fn parse_params(text: &str, tag: FieldTag) -> Result<Vec<(String, Scalar)>, Failure> {
    let mut out = Vec::new();
    for piece in text.split(',').filter(|p| !p.trim().is_empty()) {
        let Some((k, v)) = piece.split_once('=') else {
            return Err(usage(format!("bad parameter assignment {piece:?}; expected K=V")));
        };
        let value = parse_scalar(v.trim(), tag)
            .map_err(|e| usage(format!("bad value for {}: {e}", k.trim())))?;
        out.push((k.trim().to_string(), value));
    }
    Ok(out)
}

fn load_algebra(target: &FileArgs) -> Result<(CatalogEntry, Algebra), Failure> {
    let text = std::fs::read_to_string(&target.file)
        .map_err(|e| usage(format!("{}: {e}", target.file.display())))?;
    let entry = parse_algebra_file(&text)
        .map_err(|e| usage(format!("{}: {e}", target.file.display())))?;
    let assignment = match &target.params {
        Some(p) => parse_params(p, entry.tag)?,
        None => Vec::new(),
    };
    let a = instantiate(&entry, entry.tag, &assignment)
        .map_err(|e| usage(format!("{}: {e}", target.file.display())))?;
    Ok((entry, a))
}

/// Renders a scalar so the result re-parses as a single factor in the
/// file format and in form expressions.
fn coeff_text(s: &Scalar) -> String {
    let t = s.to_string();
    let atom = t == "i" || t.chars().all(|c| c.is_ascii_digit() || c == '/');
    let neg_atom = t.strip_prefix('-').is_some_and(|r| {
        r == "i" || r.chars().all(|c| c.is_ascii_digit() || c == '/')
    });
    if atom || neg_atom {
        t
    } else {
        format!("({t})")
    }
}

/// Serializes an algebra into a catalog entry with literal
/// coefficients.
fn algebra_as_entry(a: &Algebra, name: &str) -> CatalogEntry {
    let n = a.dim();
    let mut table = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let terms: Vec<(String, usize)> = (0..n)
                .filter(|&k| !a.sc(i, j, k).is_zero())
                .map(|k| {
                    let c = a.sc(i, j, k);
                    let text = if c.is_one() {
                        String::new()
                    } else {
                        coeff_text(c)
                    };
                    (text, k + 1)
                })
                .collect();
            if !terms.is_empty() {
                table.push(Product { i: i + 1, j: j + 1, terms });
            }
        }
    }
    CatalogEntry {
        name: name.to_string(),
        dim: n,
        tag: a.tag(),
        params: Vec::new(),
        derived: Vec::new(),
        constraints: Vec::new(),
        section: String::new(),
        external: false,
        table,
    }
}

/// Renders a bilinear form as a `D(i,j)` combination (1-based).
fn form_text(theta: &BilinearForm) -> String {
    let n = theta.dim();
    let mut out = String::new();
    for i in 0..n {
        for j in 0..n {
            let c = theta.get(i, j);
            if c.is_zero() {
                continue;
            }
            let sym = format!("D({},{})", i + 1, j + 1);
            let piece = if c.is_one() {
                sym
            } else if c.neg().is_one() {
                format!("-{sym}")
            } else {
                format!("{}*{sym}", coeff_text(c))
            };
            if out.is_empty() {
                out.push_str(&piece);
            } else if let Some(rest) = piece.strip_prefix('-') {
                out.push('-');
                out.push_str(rest);
            } else {
                out.push('+');
                out.push_str(&piece);
            }
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

// ---------------------------------------------------------------------------
// check / fingerprint
// ---------------------------------------------------------------------------

fn fingerprint_json(a: &Algebra) -> Value {
    let f = a.fingerprint();
    json!({
        "dim_sq": f.dim_sq,
        "dim_cube": f.dim_cube,
        "dim_fourth": f.dim_fourth,
        "dim_ann": f.dim_ann,
        "dim_left_ann": f.dim_left_ann,
        "dim_right_ann": f.dim_right_ann,
        "dim_der": f.dim_der,
        "dim_square_span": f.dim_square_span,
        "commutative": f.commutative,
        "anticommutative": f.anticommutative,
    })
}

fn fingerprint_text(a: &Algebra) -> String {
    let f = a.fingerprint();
    format!(
        "fingerprint: A^2={} A^3={} A^4={} Ann={} LAnn={} RAnn={} Der={} Sq={} comm={} anticomm={}",
        f.dim_sq,
        f.dim_cube,
        f.dim_fourth,
        f.dim_ann,
        f.dim_left_ann,
        f.dim_right_ann,
        f.dim_der,
        f.dim_square_span,
        f.commutative,
        f.anticommutative
    )
}

fn cmd_check(target: &FileArgs, variety: &str) -> Result<Report, Failure> {
    let (_, a) = load_algebra(target)?;
    let templates = builtin(variety).map_err(|e| usage(e.to_string()))?;
    let reports = holds(&templates, &a);
    let total: usize = reports.iter().map(|r| r.instances).sum();
    let failed = reports.iter().find(|r| !r.holds);
    let identity_line = match failed {
        None => format!("{variety}: PASS ({total} instances)"),
        Some(r) => {
            let tuple = r
                .counterexample
                .as_ref()
                .map(|t| {
                    t.iter()
                        .map(|i| format!("e{}", i + 1))
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .unwrap_or_default();
            format!("{variety}: FAIL ({} at {tuple})", r.name)
        }
    };
    let (_, index) = a.power_series();
    let nil_line = match index {
        Some(m) => format!("nilpotent, index {m}"),
        None => "not nilpotent".to_string(),
    };
    let ann = a.annihilator().dim();
    let text = format!(
        "{identity_line}; {nil_line}; Ann dim {ann}\n{}",
        fingerprint_text(&a)
    );
    let jreports: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "name": r.name,
                "holds": r.holds,
                "instances": r.instances,
                "counterexample": r.counterexample,
            })
        })
        .collect();
    let code = if failed.is_some() { 1 } else { 0 };
    Ok(Report {
        text,
        json: json!({
            "command": "check",
            "variety": variety,
            "identities": jreports,
            "nilpotent": index.is_some(),
            "nilpotency_index": index,
            "ann_dim": ann,
            "fingerprint": fingerprint_json(&a),
        }),
        code,
    })
}

fn cmd_fingerprint(target: &FileArgs) -> Result<Report, Failure> {
    let (_, a) = load_algebra(target)?;
    Ok(Report {
        text: fingerprint_text(&a),
        json: json!({ "command": "fingerprint", "fingerprint": fingerprint_json(&a) }),
        code: 0,
    })
}

// ---------------------------------------------------------------------------
// cohomology / extend
// ---------------------------------------------------------------------------

fn cmd_cohomology(target: &FileArgs, variety: &str) -> Result<Report, Failure> {
    let (_, a) = load_algebra(target)?;
    let templates = crate::identity::variety_templates(variety).map_err(|e| usage(e.to_string()))?;
    let z = cocycle_space(&a, &templates).map_err(|e| math(e.to_string()))?;
    let b = coboundary_space(&a);
    let reps = h2(&a, &templates).map_err(|e| math(e.to_string()))?;
    let rep_texts: Vec<String> = reps.iter().map(form_text).collect();
    let text = format!(
        "Z²={} B²={} H²={}; H² reps: {}",
        z.dim(),
        b.dim(),
        reps.len(),
        if rep_texts.is_empty() {
            "(none)".to_string()
        } else {
            rep_texts.join(", ")
        }
    );
    Ok(Report {
        text,
        json: json!({
            "command": "cohomology",
            "variety": variety,
            "z2_dim": z.dim(),
            "b2_dim": b.dim(),
            "h2_dim": reps.len(),
            "h2_reps": rep_texts,
        }),
        code: 0,
    })
}

fn cmd_extend(target: &FileArgs, cocycle_texts: &[String]) -> Result<Report, Failure> {
    let (entry, a) = load_algebra(target)?;
    let forms: Vec<BilinearForm> = cocycle_texts
        .iter()
        .map(|t| parse_form(t, a.dim(), a.tag()).map_err(|e| usage(e.to_string())))
        .collect::<Result<_, _>>()?;
    let spec = ExtensionSpec::new(a, forms).map_err(|e| math(e.to_string()))?;
    let extended = extend(&spec).map_err(|e| math(e.to_string()))?;
    let out_entry = algebra_as_entry(&extended, &format!("{}_ext", entry.name));
    let text = unparse(&out_entry);
    Ok(Report {
        json: json!({
            "command": "extend",
            "name": out_entry.name,
            "dim": out_entry.dim,
            "algebra": text,
        }),
        text,
        code: 0,
    })
}

// ---------------------------------------------------------------------------
// iso
// ---------------------------------------------------------------------------

fn parse_budget(text: &str) -> Result<Duration, Failure> {
    let t = text.trim();
    let (digits, unit) = t
        .find(|c: char| !c.is_ascii_digit())
        .map(|k| t.split_at(k))
        .unwrap_or((t, "s"));
    let n: u64 = digits
        .parse()
        .map_err(|_| usage(format!("bad budget {text:?}")))?;
    match unit.trim() {
        "s" | "" => Ok(Duration::from_secs(n)),
        "ms" => Ok(Duration::from_millis(n)),
        other => Err(usage(format!("bad budget unit {other:?}"))),
    }
}

#[derive(serde::Deserialize)]
struct WitnessFile {
    rows: Vec<Vec<String>>,
}

fn load_witness(path: &std::path::Path, tag: FieldTag, dim: usize) -> Result<Matrix, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let w: WitnessFile =
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    if w.rows.len() != dim || w.rows.iter().any(|r| r.len() != dim) {
        return Err(usage(format!(
            "{}: witness must be {dim}x{dim}",
            path.display()
        )));
    }
    let rows: Result<Vec<Vec<Scalar>>, Failure> = w
        .rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|t| parse_scalar(t, tag).map_err(|e| usage(format!("bad witness entry {t:?}: {e}"))))
                .collect()
        })
        .collect();
    Matrix::from_rows(rows?, dim, tag).map_err(|e| usage(e.to_string()))
}

fn witness_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

fn cmd_iso(
    file_a: &std::path::Path,
    file_b: &std::path::Path,
    witness: Option<&std::path::Path>,
    primes: Option<&str>,
    budget: Option<&str>,
) -> Result<Report, Failure> {
    let load = |p: &std::path::Path| -> Result<Algebra, Failure> {
        let text =
            std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
        let entry = parse_algebra_file(&text).map_err(|e| usage(format!("{}: {e}", p.display())))?;
        instantiate(&entry, entry.tag, &[]).map_err(|e| usage(format!("{}: {e}", p.display())))
    };
    let a = load(file_a)?;
    let b = load(file_b)?;
    let mut options = DecideOptions::default();
    if let Some(p) = primes {
        options.primes = p
            .split(',')
            .map(|x| x.trim().parse::<u64>().map_err(|_| usage(format!("bad prime {x:?}"))))
            .collect::<Result<_, _>>()?;
    }
    if let Some(t) = budget {
        options.budget = parse_budget(t)?;
    }
    if let Some(path) = witness {
        let w = load_witness(path, a.tag(), a.dim())?;
        let ok = verify_witness(&a, &b, &w).map_err(|e| usage(e.to_string()))?;
        return if ok {
            Ok(Report {
                text: "Isomorphic (witness verified)".into(),
                json: json!({
                    "command": "iso",
                    "verdict": "Isomorphic",
                    "how": "witness verified",
                    "witness": witness_rows(&w),
                }),
                code: 0,
            })
        } else {
            Err(math("witness does not verify".to_string()))
        };
    }
    let (text, jverdict, code) = match decide(&a, &b, &options) {
        IsoVerdict::Isomorphic { witness } => (
            "Isomorphic (witness found)".to_string(),
            json!({ "verdict": "Isomorphic", "how": "search", "witness": witness_rows(&witness) }),
            0,
        ),
        IsoVerdict::NonIsomorphic { evidence } => {
            let (how, caveat) = match &evidence {
                NonIsoEvidence::Dimension => ("dimension mismatch".to_string(), false),
                NonIsoEvidence::FingerprintDifference => ("fingerprint difference".to_string(), false),
                NonIsoEvidence::ExhaustedSearch { p, caveat_mod_p } => (
                    format!("exhausted GF({p}) search"),
                    *caveat_mod_p,
                ),
            };
            let note = if caveat { "; reductions only" } else { "" };
            (
                format!("NonIsomorphic ({how}{note})"),
                json!({ "verdict": "NonIsomorphic", "how": how, "mod_p_caveat": caveat }),
                0,
            )
        }
        IsoVerdict::Unknown { reason } => (
            format!("Unknown: {reason}"),
            json!({ "verdict": "Unknown", "reason": reason }),
            1,
        ),
    };
    let mut obj = jverdict;
    obj["command"] = json!("iso");
    Ok(Report {
        text,
        json: obj,
        code,
    })
}

// ---------------------------------------------------------------------------
// catalog verify / action verify
// ---------------------------------------------------------------------------

fn cmd_catalog_verify(section: Option<&str>, samples: usize) -> Result<Report, Failure> {
    use rayon::prelude::*;
    let cat = builtin_catalog();
    let selected: Vec<&CatalogEntry> = cat
        .entries()
        .iter()
        .filter(|e| !e.external)
        .filter(|e| section.is_none_or(|s| e.section == s))
        .collect();
    if selected.is_empty() {
        return Err(usage(format!(
            "no catalog entries in section {:?}",
            section.unwrap_or("<all>")
        )));
    }
    let results: Vec<(String, Result<usize, String>)> = selected
        .par_iter()
        .map(|entry| {
            let outcome = (|| -> Result<usize, String> {
                let claim = claim_for(&entry.name)
                    .ok_or_else(|| format!("{}: no claim", entry.name))?;
                let count = if entry.params.is_empty() { 1 } else { samples };
                let assignments = sample_assignments(entry, entry.tag, count)
                    .map_err(|e| format!("{}: {e}", entry.name))?;
                for a in &assignments {
                    catalog::verify_entry(&claim, entry.tag, a)
                        .map_err(|e| format!("{}: {e}", entry.name))?;
                    catalog::verify_parent_claim(&claim, entry.tag, a)
                        .map_err(|e| format!("{}: {e}", entry.name))?;
                }
                Ok(assignments.len())
            })();
            (entry.name.clone(), outcome)
        })
        .collect();
    let mut lines = Vec::new();
    let mut jentries = Vec::new();
    let mut failures = Vec::new();
    for (name, outcome) in &results {
        match outcome {
            Ok(n) => {
                lines.push(format!("{name}: ok ({n} samples)"));
                jentries.push(json!({ "name": name, "ok": true, "samples": n }));
            }
            Err(msg) => {
                lines.push(format!("{name}: FAIL ({msg})"));
                jentries.push(json!({ "name": name, "ok": false, "detail": msg }));
                failures.push(msg.clone());
            }
        }
    }
    // Isomorphism relations, when their entries are selected.
    let selected_names: Vec<&str> = selected.iter().map(|e| e.name.as_str()).collect();
    for claim in catalog::iso_claims() {
        if !selected_names.contains(&claim.name.as_str()) {
            continue;
        }
        for (k, sample) in claim.samples.iter().enumerate() {
            match catalog::verify_iso_sample(&claim, sample) {
                Ok(_) => {
                    lines.push(format!("{} sample {k}: ok (iso)", claim.relation));
                    jentries.push(json!({
                        "name": claim.name, "relation": claim.relation,
                        "sample": k, "ok": true,
                    }));
                }
                Err(e) => {
                    let msg = format!("{} sample {k}: {e}", claim.relation);
                    lines.push(format!("FAIL {msg}"));
                    jentries.push(json!({
                        "name": claim.name, "relation": claim.relation,
                        "sample": k, "ok": false, "detail": msg,
                    }));
                    failures.push(msg);
                }
            }
        }
    }
    let code = if failures.is_empty() { 0 } else { 1 };
    let summary = format!(
        "catalog verify: {}/{} entries ok",
        results.iter().filter(|(_, o)| o.is_ok()).count(),
        results.len()
    );
    lines.push(summary.clone());
    Ok(Report {
        text: lines.join("\n"),
        json: json!({
            "command": "catalog-verify",
            "section": section,
            "entries": jentries,
            "failures": failures,
            "summary": summary,
        }),
        code,
    })
}

fn cmd_action_verify(block: &str, samples: usize, seed: Option<u64>) -> Result<Report, Failure> {
    let seed = seed.unwrap_or(0x6e696c61);
    // An unknown block id is a usage error, not a failed check.
    let parent = crate::orbit::block(block)
        .map_err(|e| usage(e.to_string()))?
        .parent;
    let report = verify_action_block(block, samples, seed).map_err(|e| math(e.to_string()))?;
    // Exercise the parent's automorphism family at the same seed too:
    // the block formulas presuppose it.
    let fam = verify_family(&parent, samples, seed).map_err(|e| math(e.to_string()))?;
    let text = format!(
        "block {}: {} action checks passed; family {}: {} automorphism checks passed",
        report.block, report.checks, fam.parent, fam.checks
    );
    Ok(Report {
        text,
        json: json!({
            "command": "action-verify",
            "block": report.block,
            "checks": report.checks,
            "family": fam.parent,
            "family_checks": fam.checks,
            "seed": seed,
        }),
        code: 0,
    })
}

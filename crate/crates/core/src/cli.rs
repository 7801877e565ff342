//! Command-line front end. Exit codes: 0 when every check passes (a refusal
//! is not a failure), 1 on any failure or finding, 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;

use crate::berkovich::{verify_theorem51, Theorem51Outcome};
use crate::catalog::{bundled_catalog, find};
use crate::derivation::{enumerate_derivations, verify_aut_correspondence};
use crate::error::{Error, Result};
use crate::fullness::{check_theorem43, is_full_wrt, Fullness};
use crate::group::{FiniteGroup, Subgroup, DEFAULT_MAX_ORDER};
use crate::io::GroupFile;
use crate::report::{parse_selection, run_checks, run_entry, Report, RunOptions, CHECKS};
use crate::structure::{center, maximal_subgroups, nilpotency_class, omega};

#[derive(Debug, Parser)]
#[command(name = "pgauto", version, about = "Derivations, fullness and non-inner automorphisms of small p-groups")]
pub struct Cli {
    /// Refuse groups larger than this.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER)]
    pub max_order: usize,
    /// Worker threads for batch runs (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structure profile of a group file or catalog entry.
    Analyze {
        group: String,
        /// Comma-separated checks to run as well, or "all".
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
    },
    /// The derivation ring Der(G, A).
    Derivations {
        group: String,
        #[arg(long, default_value = "center")]
        module: String,
    },
    /// Fullness with respect to maximal subgroups.
    Fullness {
        group: String,
        /// Position in the sorted list of maximal subgroups.
        #[arg(long)]
        wrt: Option<usize>,
    },
    /// Exactness of Der(G,A) -> Hom(G/Z1, A/Z1) against fullness.
    Exactness {
        group: String,
        #[arg(long)]
        module: String,
    },
    /// Non-inner automorphism of order p for coclass-2 groups.
    Berkovich { group: String },
    /// Run every check on the catalog and write one report per group.
    Batch {
        #[arg(long)]
        all: bool,
        #[arg(long)]
        out: PathBuf,
        /// Record wall-clock seconds per check (makes reports non-reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Bundled catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
}

/// A catalog id, or a path to a group file.
pub fn load_group(spec: &str, max_order: usize) -> Result<(String, FiniteGroup)> {
    if let Ok(entry) = find(spec) {
        return Ok((entry.id.clone(), entry.build(max_order)?));
    }
    let path = Path::new(spec);
    if path.exists() {
        let id = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| spec.to_string());
        return Ok((id, GroupFile::load(path)?.build(max_order)?));
    }
    Err(Error::UnknownGroup(spec.to_string()))
}

/// `center`, `omega1-center`, or a comma-separated list of element indices
/// whose closure is taken.
pub fn parse_module(g: &FiniteGroup, spec: &str) -> Result<Subgroup> {
    match spec.trim() {
        "center" => Ok(center(g)),
        "omega1-center" => Ok(omega(g, &center(g), 1)),
        list => {
            let mut gens = Vec::new();
            for tok in list.split(',') {
                match tok.trim().parse::<usize>() {
                    Ok(x) if x < g.order() => gens.push(x),
                    _ => return Err(Error::BadSubgroupSpec(spec.to_string())),
                }
            }
            Ok(g.closure(gens))
        }
    }
}

fn is_usage(e: &Error) -> bool {
    matches!(
        e,
        Error::UnknownGroup(_)
            | Error::UnknownCheck(_)
            | Error::BadSubgroupSpec(_)
            | Error::NotNormal { .. }
            | Error::NotAbelian
            | Error::Json(_)
            | Error::Io(_)
            | Error::MalformedPresentation(_)
            | Error::MalformedTable { .. }
            | Error::TooLarge { .. }
    )
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if is_usage(&e) {
                2
            } else {
                1
            }
        }
    }
}

fn emit(out: &mut dyn Write, value: &serde_json::Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Analyze { group, checks } => {
            let (id, g) = load_group(group, cli.max_order)?;
            let names: Vec<&str> =
                if checks.iter().any(|c| c == "all") { CHECKS.to_vec() } else { parse_selection(checks)? };
            let report = run_checks(&id, &g, &names, RunOptions::default())?;
            if cli.json {
                write!(out, "{}", report.to_json())?;
            } else {
                print_report(out, &report)?;
            }
            Ok(exit_for(&report))
        }
        Command::Derivations { group, module } => {
            let (id, g) = load_group(group, cli.max_order)?;
            let a = parse_module(&g, module)?;
            let der = enumerate_derivations(&g, &a)?;
            let adjoint = der.ring.adjoint_group();
            let correspondence = verify_aut_correspondence(&g, &a)?;
            let degree = der.ring.nilpotency_degree();
            let adjoint_class = match degree {
                Some(_) => Some(nilpotency_class(&adjoint.group)?),
                None => None,
            };
            let value = json!({
                "group": id,
                "module": a.to_vec(),
                "order": der.len(),
                "homomorphisms": der.homomorphism_indices(&g).len(),
                "ring_degree": degree,
                "adjoint_order": adjoint.members.len(),
                "adjoint_class": adjoint_class,
                "aut_correspondence": correspondence,
            });
            if cli.json {
                emit(out, &value)?;
            } else {
                writeln!(out, "{id}: |A| = {}, |Der(G,A)| = {}", a.order(), der.len())?;
                writeln!(out, "  homomorphisms: {}", value["homomorphisms"])?;
                match (degree, adjoint_class) {
                    (Some(d), Some(c)) => {
                        writeln!(out, "  nilpotency degree: {d}")?;
                        writeln!(out, "  adjoint group: order {}, class {c}", adjoint.members.len())?;
                    }
                    _ => {
                        writeln!(out, "  ring is not nilpotent")?;
                        writeln!(out, "  unit group: order {}", adjoint.members.len())?;
                    }
                }
                writeln!(
                    out,
                    "  Aut_A(G) by search: {} ({})",
                    correspondence.aut_order,
                    if correspondence.holds() { "isomorphic to the adjoint group" } else { "MISMATCH" }
                )?;
            }
            Ok(if correspondence.holds() { 0 } else { 1 })
        }
        Command::Fullness { group, wrt } => {
            let (id, g) = load_group(group, cli.max_order)?;
            let maximals = maximal_subgroups(&g);
            let picked: Vec<(usize, &Subgroup)> = match wrt {
                Some(i) => {
                    let c = maximals
                        .get(*i)
                        .ok_or_else(|| Error::BadSubgroupSpec(format!("maximal index {i} of {}", maximals.len())))?;
                    vec![(*i, c)]
                }
                None => maximals.iter().enumerate().collect(),
            };
            let mut rows = Vec::new();
            for (i, c) in picked {
                let f = is_full_wrt(&g, c)?;
                let row = match &f {
                    Fullness::Full(w) => json!({
                        "index": i,
                        "C": c.to_vec(),
                        "full": true,
                        "K": w.records.iter().map(|r| r.k.to_vec()).collect::<Vec<_>>(),
                    }),
                    Fullness::NotFull { failing, .. } => json!({
                        "index": i,
                        "C": c.to_vec(),
                        "full": false,
                        "failing_M": failing.as_ref().map(Subgroup::to_vec),
                    }),
                };
                rows.push(row);
            }
            if cli.json {
                emit(out, &json!({ "group": id, "maximals": rows }))?;
            } else {
                writeln!(out, "{id}: {} maximal subgroups", maximals.len())?;
                for r in &rows {
                    let verdict = if r["full"] == true { "full" } else { "not full" };
                    writeln!(out, "  C#{}: {verdict}", r["index"])?;
                }
            }
            Ok(0)
        }
        Command::Exactness { group, module } => {
            let (id, g) = load_group(group, cli.max_order)?;
            let a = parse_module(&g, module)?;
            match check_theorem43(&g, &a) {
                Err(Error::HypothesisFailed(r)) => {
                    if cli.json {
                        emit(out, &json!({ "group": id, "refused": r }))?;
                    } else {
                        writeln!(out, "refused: {r}")?;
                    }
                    Ok(0)
                }
                Err(e) => Err(e),
                Ok(v) => {
                    let value = json!({
                        "group": id,
                        "module": a.to_vec(),
                        "exact": v.exact,
                        "full": v.full,
                        "agree": v.agree,
                        "counts": v.counts,
                        "lifts": v.lifts,
                        "non_liftable": v.non_liftable.as_ref().map(|h| h.images.clone()),
                        "findings": v.findings,
                    });
                    if cli.json {
                        emit(out, &value)?;
                    } else {
                        writeln!(out, "{id}: exact = {}, full = {}, agree = {}", v.exact, v.full, v.agree)?;
                        writeln!(
                            out,
                            "  |Der(G,A)| = {}, |Hom(G,Z1)| = {}, |Hom(G/Z1,A/Z1)| = {}",
                            v.counts.der, v.counts.hom_g_z1, v.counts.hom_quot
                        )?;
                        for f in &v.findings {
                            writeln!(out, "  finding: {f}")?;
                        }
                    }
                    Ok(if v.agree && v.findings.is_empty() { 0 } else { 1 })
                }
            }
        }
        Command::Berkovich { group } => {
            let (id, g) = load_group(group, cli.max_order)?;
            match verify_theorem51(&g)? {
                Theorem51Outcome::Refused(r) => {
                    if cli.json {
                        emit(out, &json!({ "group": id, "refused": r }))?;
                    } else {
                        writeln!(out, "refused: {r}")?;
                    }
                    Ok(0)
                }
                Theorem51Outcome::Inconclusive { reason, .. } => {
                    if cli.json {
                        emit(out, &json!({ "group": id, "inconclusive": reason }))?;
                    } else {
                        writeln!(out, "inconclusive: {reason}")?;
                    }
                    Ok(0)
                }
                Theorem51Outcome::Witness { witness, ranks, counts, findings, notes } => {
                    if cli.json {
                        emit(
                            out,
                            &json!({
                                "group": id,
                                "branch": witness.branch,
                                "witness": {
                                    "sigma": witness.sigma.images,
                                    "order": witness.order,
                                    "certificate_size": witness.certificate_size,
                                },
                                "ranks": ranks,
                                "counts": counts,
                                "findings": findings,
                                "notes": notes,
                            }),
                        )?;
                    } else {
                        writeln!(
                            out,
                            "{id}: non-inner automorphism of order {} ({:?}), checked against {} inner automorphisms",
                            witness.order, witness.branch, witness.certificate_size
                        )?;
                        if let Some(c) = &counts {
                            writeln!(
                                out,
                                "  |Der(G,H1)| = {}, |Hom(G,Z1)| = {}, |Hom(G/Z1,H1/Z1)| = {}, inner part = {}",
                                c.der_g_h1, c.hom_g_z1, c.hom_quot, c.inner_part
                            )?;
                        }
                        for n in &notes {
                            writeln!(out, "  note: {n}")?;
                        }
                        for f in &findings {
                            writeln!(out, "  finding: {f}")?;
                        }
                    }
                    Ok(if findings.is_empty() { 0 } else { 1 })
                }
            }
        }
        Command::Batch { all, out: dir, timings } => {
            if !*all {
                return Err(Error::UnknownGroup("batch needs --all".into()));
            }
            let reports = batch(dir, cli.max_order, cli.jobs, RunOptions { timings: *timings })?;
            let failed: Vec<&Report> = reports.iter().filter(|r| !r.passed()).collect();
            if cli.json {
                emit(
                    out,
                    &json!({
                        "reports": reports.len(),
                        "failed": failed.iter().map(|r| r.group.clone()).collect::<Vec<_>>(),
                    }),
                )?;
            } else {
                for r in &reports {
                    writeln!(out, "{:<16} {}", r.group, if r.passed() { "pass" } else { "FAIL" })?;
                }
                writeln!(out, "{} reports written to {}", reports.len(), dir.display())?;
            }
            Ok(if failed.is_empty() { 0 } else { 1 })
        }
        Command::Catalog { action: CatalogAction::List } => {
            let entries = bundled_catalog();
            if cli.json {
                let rows: Vec<_> =
                    entries.iter().map(|e| json!({ "id": e.id, "description": e.description })).collect();
                emit(out, &json!(rows))?;
            } else {
                for e in entries {
                    writeln!(out, "{:<16} {}", e.id, e.description)?;
                }
            }
            Ok(0)
        }
    }
}

fn exit_for(report: &Report) -> i32 {
    if report.passed() {
        0
    } else {
        1
    }
}

fn print_report(out: &mut dyn Write, r: &Report) -> Result<()> {
    let p = &r.profile;
    writeln!(
        out,
        "{}: order {}^{}, class {}, coclass {}, d(G) = {}, exponent {}",
        r.group, p.p, p.n, p.class, p.coclass, p.d, p.exponent
    )?;
    writeln!(
        out,
        "  r = {}, s = {}, powerful = {}, purely non-abelian = {}, strongly frattinian = {}, C_G(Phi) <= Phi = {}",
        p.r,
        p.s,
        p.is_powerful,
        p.is_purely_nonabelian.map_or("unknown".to_string(), |b| b.to_string()),
        p.is_strongly_frattinian,
        p.cgphi_in_phi
    )?;
    for (name, s) in &r.checks {
        match &s.reason {
            Some(reason) => writeln!(out, "  {name}: {} ({reason})", s.verdict)?,
            None => writeln!(out, "  {name}: {}", s.verdict)?,
        }
    }
    for f in &r.findings {
        writeln!(out, "  finding [{}]: {}", f.check, f.message)?;
    }
    Ok(())
}

/// Runs every check on every catalog entry; reports are written one file
/// per group plus `summary.json`, each serially after the parallel phase.
pub fn batch(dir: &Path, max_order: usize, jobs: usize, opts: RunOptions) -> Result<Vec<Report>> {
    std::fs::create_dir_all(dir)?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| Error::Io(e.to_string()))?;
    let reports: Vec<Result<Report>> =
        pool.install(|| bundled_catalog().par_iter().map(|e| run_entry(e, max_order, &CHECKS, opts)).collect());
    let reports: Vec<Report> = reports.into_iter().collect::<Result<_>>()?;
    for r in &reports {
        std::fs::write(dir.join(format!("{}.json", r.group)), r.to_json())?;
    }
    let summary: serde_json::Map<String, serde_json::Value> =
        reports.iter().map(|r| (r.group.clone(), json!(if r.passed() { "pass" } else { "fail" }))).collect();
    std::fs::write(dir.join("summary.json"), serde_json::to_string_pretty(&summary)? + "\n")?;
    Ok(reports)
}

//! Per-group reports: every selected check with a verdict, its data, and
//! any theorem-violation findings.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::berkovich::{check_lemma32, check_lemma33, check_theorem31, verify_theorem51, Theorem51Outcome};
use crate::catalog::CatalogEntry;
use crate::derivation::{enumerate_derivations, verify_aut_correspondence};
use crate::error::{Error, Result};
use crate::fullness::{admissible_modules, check_corollary47, check_prop42, check_theorem43, fullness_table, Fullness};
use crate::group::{homs_into, FiniteGroup, GroupHom, Subgroup};
use crate::structure::{center, nilpotency_class, structure_profile, StructureProfile};

pub const REPORT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Known checks, in report order.
pub const CHECKS: [&str; 8] =
    ["derivation_ring", "fullness", "theorem43", "corollary47", "lemma32", "lemma33", "theorem31", "berkovich"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Section {
    /// `pass`, `fail`, `skipped` or `inconclusive`.
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub details: Value,
}

impl Section {
    fn new(verdict: &str, reason: Option<String>, details: Value) -> Self {
        Section { verdict: verdict.into(), reason, details }
    }

    pub fn pass(details: Value) -> Self {
        Self::new("pass", None, details)
    }

    pub fn fail(details: Value) -> Self {
        Self::new("fail", None, details)
    }

    pub fn skipped(reason: impl Into<String>) -> Self {
        Self::new("skipped", Some(reason.into()), Value::Null)
    }

    pub fn inconclusive(reason: impl Into<String>, details: Value) -> Self {
        Self::new("inconclusive", Some(reason.into()), details)
    }

    pub fn is_fail(&self) -> bool {
        self.verdict == "fail"
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub check: String,
    pub group: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub group: String,
    pub profile: StructureProfile,
    pub checks: BTreeMap<String, Section>,
    pub findings: Vec<Finding>,
    /// Seconds per check; empty unless timings were requested.
    pub timings: BTreeMap<String, f64>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.findings.is_empty() && !self.checks.values().any(Section::is_fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub timings: bool,
}

pub fn parse_selection<S: AsRef<str>>(names: &[S]) -> Result<Vec<&'static str>> {
    let mut out = Vec::new();
    for n in names {
        let n = n.as_ref();
        let known = CHECKS.iter().find(|c| **c == n).ok_or_else(|| Error::UnknownCheck(n.to_string()))?;
        if !out.contains(known) {
            out.push(*known);
        }
    }
    out.sort_by_key(|c| CHECKS.iter().position(|k| k == c));
    Ok(out)
}

fn elems(s: &Subgroup) -> Value {
    json!(s.to_vec())
}

fn table(h: &GroupHom) -> Value {
    json!(h.images)
}

struct Ctx<'a> {
    id: &'a str,
    g: &'a FiniteGroup,
    profile: &'a StructureProfile,
    findings: Vec<Finding>,
}

impl Ctx<'_> {
    fn finding(&mut self, check: &str, message: impl Into<String>, data: Value) {
        self.findings.push(Finding { check: check.into(), group: self.id.into(), message: message.into(), data });
    }
}

/// Gating errors become skips; anything else is a failure with a finding.
fn recover(ctx: &mut Ctx, check: &str, e: Error) -> Section {
    match e {
        Error::HypothesisFailed(r) => Section::skipped(r),
        Error::TooLarge { order, limit } => Section::skipped(format!("size {order} exceeds limit {limit}")),
        Error::NotPPower(n) => Section::skipped(format!("order {n} is not a prime power")),
        other => {
            ctx.finding(check, other.to_string(), Value::Null);
            Section::fail(Value::Null)
        }
    }
}

pub fn run_checks(id: &str, g: &FiniteGroup, selection: &[&str], opts: RunOptions) -> Result<Report> {
    let selection = parse_selection(selection)?;
    let profile = structure_profile(g)?;
    let mut ctx = Ctx { id, g, profile: &profile, findings: Vec::new() };
    let mut checks = BTreeMap::new();
    let mut timings = BTreeMap::new();
    for name in selection {
        let start = Instant::now();
        let result = match name {
            "derivation_ring" => derivation_ring(&mut ctx),
            "fullness" => fullness(&mut ctx),
            "theorem43" => theorem43(&mut ctx),
            "corollary47" => corollary47(&mut ctx),
            "lemma32" => lemma32(&mut ctx),
            "lemma33" => lemma33(&mut ctx),
            "theorem31" => theorem31(&mut ctx),
            "berkovich" => berkovich(&mut ctx),
            _ => unreachable!("selection validated"),
        };
        let section = match result {
            Ok(s) => s,
            Err(e) => recover(&mut ctx, name, e),
        };
        if opts.timings {
            timings.insert(name.to_string(), start.elapsed().as_secs_f64());
        }
        checks.insert(name.to_string(), section);
    }
    let findings = ctx.findings;
    Ok(Report { version: REPORT_VERSION.into(), group: id.into(), profile, checks, findings, timings })
}

/// Builds a catalog entry, compares its frozen profile and runs `selection`.
pub fn run_entry(entry: &CatalogEntry, max_order: usize, selection: &[&str], opts: RunOptions) -> Result<Report> {
    let g = entry.build(max_order)?;
    let mut report = run_checks(&entry.id, &g, selection, opts)?;
    for (field, want, got) in entry.profile_mismatches(&report.profile) {
        report.findings.push(Finding {
            check: "profile".into(),
            group: entry.id.clone(),
            message: format!("profile field {field} changed"),
            data: json!({"field": field, "expected": want, "computed": got}),
        });
    }
    Ok(report)
}

fn derivation_ring(ctx: &mut Ctx) -> Result<Section> {
    let g = ctx.g;
    let z = center(g);
    let der = enumerate_derivations(g, &z)?;
    let homs = homs_into(g, g, &z).len();
    let correspondence = verify_aut_correspondence(g, &z)?;
    let degree = der.ring.nilpotency_degree();
    let adjoint = der.ring.adjoint_group();
    // Only a nilpotent ring has a nilpotent adjoint group; when Z(G) is not
    // inside Phi(G) the ring contains idempotents.
    let adjoint_class = match degree {
        Some(_) => Some(nilpotency_class(&adjoint.group)?),
        None => None,
    };
    let class_ok = match (degree, adjoint_class) {
        (Some(d), Some(c)) => c <= d.max(1),
        _ => true,
    };
    let details = json!({
        "module": elems(&z),
        "order": der.len(),
        "hom_count": homs,
        "ring_degree": degree,
        "adjoint_order": adjoint.members.len(),
        "adjoint_class": adjoint_class,
        "aut_correspondence": correspondence,
    });
    if der.len() != homs {
        ctx.finding("derivation_ring", "Der(G, Z(G)) differs from Hom(G, Z(G))", details.clone());
    }
    if !correspondence.holds() {
        ctx.finding("derivation_ring", "Aut_Z(G) does not match the adjoint group of Der(G, Z(G))", details.clone());
    }
    if !class_ok {
        ctx.finding("derivation_ring", "adjoint class exceeds nilpotency degree", details.clone());
    }
    let ok = der.len() == homs && correspondence.holds() && class_ok;
    Ok(if ok { Section::pass(details) } else { Section::fail(details) })
}

fn fullness(ctx: &mut Ctx) -> Result<Section> {
    let g = ctx.g;
    let table = fullness_table(g)?;
    let prop42 = check_prop42(g)?;
    let maximals: Vec<Value> = table
        .iter()
        .map(|f| match f {
            Fullness::Full(w) => json!({
                "C": elems(&w.c),
                "full": true,
                "witness": w.records.iter().map(|r| json!({"M": elems(&r.m), "K": elems(&r.k), "checks": r.checks})).collect::<Vec<_>>(),
            }),
            Fullness::NotFull { c, failing } => json!({
                "C": elems(c),
                "full": false,
                "failing_M": failing.as_ref().map(elems),
            }),
        })
        .collect();
    let details = json!({
        "maximals": maximals,
        "prop42": {
            "dG": prop42.d,
            "powerful": prop42.powerful,
            "in_hypothesis": prop42.in_hypothesis,
            "holds": prop42.holds,
            "quotient_full_wrt": prop42.quotient_full_wrt,
            "quotient_criterion_holds": prop42.quotient_criterion_holds,
        },
    });
    let mut ok = true;
    if prop42.holds == Some(false) {
        ok = false;
        ctx.finding("fullness", "2-generated non-powerful group is not full everywhere", details.clone());
    }
    if prop42.powerful && prop42.full_wrt.iter().any(|&f| f) {
        ok = false;
        ctx.finding("fullness", "powerful group is full with respect to some maximal subgroup", details.clone());
    }
    if !prop42.quotient_criterion_holds {
        ok = false;
        ctx.finding("fullness", "fullness differs on G/gamma_3(G)G^p", details.clone());
    }
    Ok(if ok { Section::pass(details) } else { Section::fail(details) })
}

fn theorem43(ctx: &mut Ctx) -> Result<Section> {
    let g = ctx.g;
    if ctx.profile.p == 2 {
        return Ok(Section::skipped("p = 2"));
    }
    match ctx.profile.is_purely_nonabelian {
        Some(true) => {}
        Some(false) => return Ok(Section::skipped("G has an abelian direct factor")),
        None => return Ok(Section::skipped("subgroup lattice beyond enumeration cap")),
    }
    let modules = admissible_modules(g)?;
    if modules.is_empty() {
        return Ok(Section::skipped("no admissible module"));
    }
    let mut ok = true;
    let mut rows = Vec::new();
    for a in &modules {
        let v = check_theorem43(g, a)?;
        let row = json!({
            "module": elems(&v.module),
            "C": elems(&v.c),
            "exact": v.exact,
            "exact_by_count": v.exact_by_count,
            "exact_by_image": v.exact_by_image,
            "full": v.full,
            "agree": v.agree,
            "counts": v.counts,
            "lifts": v.lifts,
            "non_liftable": v.non_liftable.as_ref().map(table),
        });
        for f in &v.findings {
            ctx.finding("theorem43", f.clone(), row.clone());
        }
        ok &= v.agree && v.findings.is_empty();
        rows.push(row);
    }
    let details = json!({ "modules": rows });
    Ok(if ok { Section::pass(details) } else { Section::fail(details) })
}

fn corollary47(ctx: &mut Ctx) -> Result<Section> {
    let v = check_corollary47(ctx.g)?;
    let mut rows = Vec::new();
    for m in &v.modules {
        let row = json!({
            "module": elems(&m.module),
            "rank_over_Z1": m.rank_over_z1,
            "homs": m.homs,
            "exact_by_lifting": m.exact_by_lifting,
            "exact_by_sequence": m.exact_by_sequence,
        });
        for f in &m.findings {
            ctx.finding("corollary47", f.clone(), row.clone());
        }
        if !(m.exact_by_lifting && m.exact_by_sequence) {
            ctx.finding("corollary47", "sequence not exact", row.clone());
        }
        rows.push(row);
    }
    let details = json!({ "modules": rows });
    Ok(if v.holds() { Section::pass(details) } else { Section::fail(details) })
}

fn lemma32(ctx: &mut Ctx) -> Result<Section> {
    let v = check_lemma32(ctx.g)?;
    let details = serde_json::to_value(&v).expect("serializes");
    if v.holds() {
        Ok(Section::pass(details))
    } else {
        ctx.finding("lemma32", "H is not inside C_G(Phi(G)) or not abelian", details.clone());
        Ok(Section::fail(details))
    }
}

fn lemma33(ctx: &mut Ctx) -> Result<Section> {
    let v = check_lemma33(ctx.g)?;
    let details = serde_json::to_value(&v).expect("serializes");
    if v.holds() {
        Ok(Section::pass(details))
    } else {
        ctx.finding("lemma33", "ring conditions on Der(G,H) violated", details.clone());
        Ok(Section::fail(details))
    }
}

fn theorem31(ctx: &mut Ctx) -> Result<Section> {
    let v = check_theorem31(ctx.g)?;
    let details = serde_json::to_value(&v).expect("serializes");
    if v.holds() {
        Ok(Section::pass(details))
    } else {
        ctx.finding("theorem31", "class or power-structure bound on Aut_H(G) violated", details.clone());
        Ok(Section::fail(details))
    }
}

fn berkovich(ctx: &mut Ctx) -> Result<Section> {
    match verify_theorem51(ctx.g)? {
        Theorem51Outcome::Refused(r) => Ok(Section::skipped(format!("refused: {r}"))),
        Theorem51Outcome::Inconclusive { ranks, reason } => {
            Ok(Section::inconclusive(reason, json!({ "ranks": ranks })))
        }
        Theorem51Outcome::Witness { witness, ranks, counts, findings, notes } => {
            let details = json!({
                "branch": witness.branch,
                "witness": {
                    "sigma": table(&witness.sigma),
                    "order": witness.order,
                    "certificate_size": witness.certificate_size,
                },
                "ranks": ranks,
                "counts": counts,
                "notes": notes,
            });
            for f in &findings {
                ctx.finding("berkovich", f.clone(), details.clone());
            }
            Ok(if findings.is_empty() { Section::pass(details) } else { Section::fail(details) })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::{from_pc_presentation, PcPresentation};

    fn heis() -> FiniteGroup {
        from_pc_presentation(&PcPresentation::new(3, 3).commutator(1, 0, &[0, 0, 1])).unwrap()
    }

    #[test]
    fn empty_selection_is_profile_only() {
        let r = run_checks("heis27", &heis(), &[], RunOptions::default()).unwrap();
        assert!(r.checks.is_empty() && r.findings.is_empty() && r.timings.is_empty());
        assert_eq!(r.profile.class, 2);
    }

    #[test]
    fn unknown_check() {
        assert_eq!(run_checks("x", &heis(), &["nope"], RunOptions::default()), Err(Error::UnknownCheck("nope".into())));
    }

    #[test]
    fn heisenberg_all_checks() {
        let r = run_checks("heis27", &heis(), &CHECKS, RunOptions::default()).unwrap();
        assert_eq!(r.checks.len(), CHECKS.len());
        assert_eq!(r.checks["fullness"].verdict, "pass");
        assert_eq!(r.checks["theorem43"].verdict, "pass");
        assert_eq!(r.checks["berkovich"].verdict, "skipped");
        assert_eq!(r.checks["berkovich"].reason.as_deref(), Some("refused: coclass 1"));
        assert_eq!(r.checks["lemma33"].verdict, "skipped");
        assert!(r.passed());
        let again = run_checks("heis27", &heis(), &CHECKS, RunOptions::default()).unwrap();
        assert_eq!(r.to_json(), again.to_json());
    }
}

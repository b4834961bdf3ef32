//! Whole-corpus runs: corpus classification, parameter sweeps, and the
//! theorem-level checks built on them.

use rayon::prelude::*;
use serde::Serialize;

use crate::char_table::character_table;
use crate::classify::{
    check_frobenius_criterion, check_isaacs_bound, classify, find_complement, module_witness,
    CaseTag, ClassificationReport, ClassifyError, GroupAction, Verdict,
};
use crate::constructors::{construct_case, sweep_points, CaseParams, ConstructError};
use crate::corpus::CorpusEntry;
use crate::number_theory::{as_prime_power, is_mersenne_prime, is_prime, multiplicative_order, zsigmondy_prime};
use crate::oracle::{hand_tables, matches_up_to_permutation, regular_representation_check};
use crate::perm_group::PermGroup;

pub const SWEEP_PRIMES: [u64; 4] = [2, 3, 5, 7];
pub const SWEEP_MAX_FIELD: u64 = 81;
pub const SWEEP_MAX_ORDER: u64 = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusRecord {
    pub name: String,
    pub order: u64,
    pub report: Option<ClassificationReport>,
    pub error: Option<String>,
    pub matches_expected: bool,
}

/// Classifies every entry; output order follows the input.
pub fn classify_corpus(entries: &[CorpusEntry], seed: u64) -> Vec<CorpusRecord> {
    entries
        .par_iter()
        .map(|e| {
            let (report, error) = match classify(&e.group, seed) {
                Ok(r) => (Some(r), None),
                Err(err) => (None, Some(err.to_string())),
            };
            let matches_expected = report.as_ref().is_some_and(|r| {
                r.verdict == e.expected.verdict
                    && r.case_tag == e.expected.tag
                    && e.expected.pnd.is_none_or(|(p, n, d)| {
                        r.p == Some(p) && r.n == Some(n) && r.d == Some(d)
                    })
            });
            CorpusRecord {
                name: e.name.to_string(),
                order: e.group.order() as u64,
                report,
                error,
                matches_expected,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SweepStatus {
    Classified,
    #[serde(rename = "PARAMS-INVALID")]
    ParamsInvalid,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRecord {
    pub params: CaseParams,
    pub status: SweepStatus,
    pub reason: Option<String>,
    pub order: Option<u64>,
    pub report: Option<ClassificationReport>,
}

impl SweepRecord {
    /// Constructed, classified as a single class with the requested tag, and
    /// free of theorem violations.
    pub fn confirms_case(&self) -> bool {
        self.report.as_ref().is_some_and(|r| {
            r.verdict == Verdict::SingleGaloisClass
                && r.case_tag == Some(self.params.tag)
                && r.theorem_violation.is_none()
        })
    }
}

pub fn default_sweep_points(tags: &[CaseTag], max_order: u64) -> Vec<CaseParams> {
    sweep_points(tags, &SWEEP_PRIMES, SWEEP_MAX_FIELD, max_order)
}

/// Constructs and classifies every parameter point.
pub fn run_sweep(points: &[CaseParams], seed: u64) -> Vec<SweepRecord> {
    points
        .par_iter()
        .map(|&params| match construct_case(&params) {
            Ok(g) => {
                let order = Some(g.order() as u64);
                match classify(&g, seed) {
                    Ok(r) => SweepRecord {
                        params,
                        status: SweepStatus::Classified,
                        reason: None,
                        order,
                        report: Some(r),
                    },
                    Err(e) => SweepRecord {
                        params,
                        status: SweepStatus::Error,
                        reason: Some(e.to_string()),
                        order,
                        report: None,
                    },
                }
            }
            Err(ConstructError::ParamsInvalid(reason)) => SweepRecord {
                params,
                status: SweepStatus::ParamsInvalid,
                reason: Some(reason),
                order: None,
                report: None,
            },
            Err(e) => SweepRecord {
                params,
                status: SweepStatus::Error,
                reason: Some(e.to_string()),
                order: None,
                report: None,
            },
        })
        .collect()
}

/// Zsigmondy exception list: `p^n = 2`, `n = 2` with `p` Mersenne, `p^n = 64`.
pub fn is_zsigmondy_exception(p: u64, n: u32) -> bool {
    (p == 2 && n == 1) || (n == 2 && is_mersenne_prime(p)) || (p == 2 && n == 6)
}

/// Prime powers `p^n ≤ bound` where the computed Zsigmondy prime disagrees
/// with the exception list or fails the order check.
pub fn zsigmondy_mismatches(bound: u64) -> Vec<(u64, u32)> {
    (2..=bound)
        .into_par_iter()
        .filter(|&p| is_prime(p))
        .flat_map_iter(|p| {
            let mut out = Vec::new();
            let mut n = 1u32;
            let mut pn = p;
            while pn <= bound {
                let ok = match zsigmondy_prime(p, n) {
                    Ok(None) => is_zsigmondy_exception(p, n),
                    Ok(Some(q)) => {
                        !is_zsigmondy_exception(p, n)
                            && (pn - 1) % q == 0
                            && multiplicative_order(p % q, q) == Some(n as u64)
                    }
                    Err(_) => false,
                };
                if !ok {
                    out.push((p, n));
                }
                n += 1;
                pn = match pn.checked_mul(p) {
                    Some(x) => x,
                    None => break,
                };
            }
            out
        })
        .collect()
}

/// One coprime action checked against the centralizer bound and the
/// pointwise Frobenius criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionCheck {
    pub source: String,
    pub acting_order: u64,
    pub target_order: u64,
    pub isaacs_bound: bool,
    pub criterion_hypothesis: bool,
    pub frobenius: bool,
}

impl ActionCheck {
    pub fn passes(&self) -> bool {
        self.isaacs_bound && (!self.criterion_hypothesis || self.frobenius)
    }
}

/// The faithful action of `H/C_H(P)` on `P/U` for every group whose
/// nilpotent residue is a Sylow subgroup with a nontrivial complement.
pub fn coprime_actions(
    groups: &[(String, PermGroup)],
    seed: u64,
) -> Result<Vec<ActionCheck>, ClassifyError> {
    let mut out = Vec::new();
    for (name, g) in groups {
        let Some(w) = module_witness(g, seed)? else {
            continue;
        };
        if w.n == 0 || w.h.order() == w.c.order() {
            continue;
        }
        let action = GroupAction::linear(&w.matrices, w.p, w.n)?;
        if !action.acting.is_nilpotent() {
            continue;
        }
        let isaacs_bound = check_isaacs_bound(&action)?;
        let (criterion_hypothesis, frobenius) =
            match check_frobenius_criterion(&w.matrices, w.p, w.n) {
                Ok(c) => (c.hypothesis, c.frobenius),
                Err(ClassifyError::Hypothesis(_)) => (false, false),
                Err(e) => return Err(e),
            };
        out.push(ActionCheck {
            source: name.clone(),
            acting_order: action.acting.order() as u64,
            target_order: action.target.order() as u64,
            isaacs_bound,
            criterion_hypothesis,
            frobenius,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Minimum number of coprime actions the full corpus must supply.
pub const MIN_COPRIME_ACTIONS: usize = 10;

fn result(id: u32, name: &'static str, failures: Vec<String>, ok_detail: String) -> CriterionResult {
    CriterionResult {
        id,
        name,
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            ok_detail
        } else {
            failures.join("; ")
        },
    }
}

fn find<'a>(records: &'a [CorpusRecord], name: &str) -> Option<&'a ClassificationReport> {
    records
        .iter()
        .find(|r| r.name == name)
        .and_then(|r| r.report.as_ref())
}

fn sweep_label(s: &SweepRecord) -> String {
    let q = &s.params;
    format!("{} p={} n={} d={} h={}", q.tag, q.p, q.n, q.d, q.height)
}

fn check_tables(entries: &[CorpusEntry]) -> CriterionResult {
    let mut failures = Vec::new();
    let mut hand_count = 0;
    for hand in hand_tables() {
        let Some(e) = entries.iter().find(|e| e.name == hand.name) else {
            continue;
        };
        hand_count += 1;
        match character_table(&e.group) {
            Ok(t) if matches_up_to_permutation(&t, &hand) => {}
            Ok(_) => failures.push(format!("{} differs from the hand table", hand.name)),
            Err(err) => failures.push(format!("{}: {err}", hand.name)),
        }
    }
    let checks: Vec<Option<String>> = entries
        .par_iter()
        .map(|e| {
            let t = match character_table(&e.group) {
                Ok(t) => t,
                Err(err) => return Some(format!("{}: {err}", e.name)),
            };
            let sum: u64 = t.degrees().iter().map(|d| d * d).sum();
            if sum != e.group.order() as u64 {
                return Some(format!("{}: sum of squared degrees is {sum}", e.name));
            }
            t.verify()
                .err()
                .map(|err| format!("{}: {err}", e.name))
                .or_else(|| {
                    regular_representation_check(&e.group, &t, 1e-8)
                        .err()
                        .map(|err| format!("{}: {err}", e.name))
                })
        })
        .collect();
    failures.extend(checks.into_iter().flatten());
    result(
        1,
        "character tables match oracles",
        failures,
        format!("{hand_count} hand tables, {} tables verified", entries.len()),
    )
}

fn check_nilpotent(entries: &[CorpusEntry], records: &[CorpusRecord]) -> CriterionResult {
    let mut failures = Vec::new();
    for (e, r) in entries.iter().zip(records) {
        match &r.report {
            Some(rep) => {
                if rep.irr_s_degrees.is_empty() != e.group.is_nilpotent() {
                    failures.push(e.name.to_string());
                }
                if e.group.is_nilpotent() != (rep.verdict == Verdict::NilpotentEmpty) {
                    failures.push(format!("{}: verdict {}", e.name, rep.verdict));
                }
            }
            None => failures.push(format!("{}: {}", e.name, r.error.clone().unwrap_or_default())),
        }
    }
    let nilpotent = entries.iter().filter(|e| e.group.is_nilpotent()).count();
    result(
        2,
        "irr_s empty iff nilpotent",
        failures,
        format!("{} groups, {nilpotent} nilpotent", entries.len()),
    )
}

fn check_positives(entries: &[CorpusEntry], records: &[CorpusRecord]) -> CriterionResult {
    let mut failures = Vec::new();
    let mut count = 0;
    for (e, r) in entries.iter().zip(records) {
        let Some(tag) = e.expected.tag else {
            continue;
        };
        count += 1;
        let Some(rep) = &r.report else {
            failures.push(format!("{}: {}", e.name, r.error.clone().unwrap_or_default()));
            continue;
        };
        let c = &rep.checklist;
        let mut bad = Vec::new();
        if !r.matches_expected {
            bad.push(format!(
                "got {} {:?} (p,n,d) = {:?}",
                rep.verdict,
                rep.case_tag,
                (rep.p, rep.n, rep.d)
            ));
        }
        if rep.d != Some(rep.irr_s_degrees.len() as u64) {
            bad.push("d differs from |irr_s|".into());
        }
        if c.single_galois_class != Some(true) {
            bad.push("not a single Galois orbit".into());
        }
        if c.shared_kernel != Some(true) || c.kernel_is_c_times_u != Some(true) {
            bad.push("kernel is not C x U".into());
        }
        if c.field_in_pth_cyclotomic != Some(true) {
            bad.push("field of values".into());
        }
        if !bad.is_empty() {
            failures.push(format!("{} ({tag}): {}", e.name, bad.join(", ")));
        }
    }
    let specifics: [(&str, u64, Option<Vec<u64>>); 6] = [
        ("C7:C3", 21, Some(vec![3, 3])),
        ("C3^2:Q8", 72, Some(vec![8])),
        ("V4:C9", 36, None),
        ("Heis3:C8", 216, None),
        ("Heis3:Q8", 216, None),
        ("Q8:C9", 72, None),
    ];
    for (name, order, degrees) in specifics {
        let Some(rep) = find(records, name) else {
            continue;
        };
        if rep.group_order != order {
            failures.push(format!("{name}: order {}", rep.group_order));
        }
        if let Some(d) = degrees {
            if rep.irr_s_degrees != d {
                failures.push(format!("{name}: irr_s degrees {:?}", rep.irr_s_degrees));
            }
        }
    }
    if let Some(rep) = find(records, "V4:C9") {
        if rep.order_h.zip(rep.order_c).map(|(h, c)| h / c) != Some(3) {
            failures.push("V4:C9: |H/C| is not 3".into());
        }
    }
    if let Some(rep) = find(records, "SL(2,3)") {
        if rep.order_k != Some(2) {
            failures.push("SL(2,3): kernel is not the center".into());
        }
    }
    result(3, "positive classifications", failures, format!("{count} positive cases"))
}

fn check_negatives(entries: &[CorpusEntry], records: &[CorpusRecord]) -> CriterionResult {
    let mut failures = Vec::new();
    let mut count = 0;
    for (e, r) in entries.iter().zip(records) {
        if e.expected.verdict == Verdict::SingleGaloisClass {
            continue;
        }
        count += 1;
        if !r.matches_expected {
            let got = r.report.as_ref().map_or("error".to_string(), |x| x.verdict.to_string());
            failures.push(format!("{}: expected {}, got {got}", e.name, e.expected.verdict));
        }
    }
    if let Some(rep) = find(records, "S4") {
        let reason = rep.failure_reason.as_deref().unwrap_or("");
        if rep.irr_s_degrees.len() != 3 || !reason.starts_with("multiple kernels") {
            failures.push(format!("S4: irr_s {:?}, reason {reason:?}", rep.irr_s_degrees));
        }
    }
    if let Some(e) = entries.iter().find(|e| e.name == "C3^2:C4") {
        let rational_fours = character_table(&e.group).map(|t| {
            (0..t.num_rows())
                .filter(|&r| t.degrees()[r] == 4 && t.is_rational_row(r))
                .count()
        });
        let irr_s = find(records, "C3^2:C4").map(|r| r.irr_s_degrees.clone());
        if rational_fours != Ok(2) || irr_s != Some(vec![4, 4]) {
            failures.push("C3^2:C4: irr_s is not two rational degree-4 characters".into());
        }
    }
    result(4, "negative controls", failures, format!("{count} negative cases"))
}

fn check_equivalence(records: &[CorpusRecord], sweep: &[SweepRecord]) -> CriterionResult {
    let mut failures = Vec::new();
    for r in records {
        let Some(rep) = &r.report else {
            failures.push(format!("{}: {}", r.name, r.error.clone().unwrap_or_default()));
            continue;
        };
        if let Some(v) = &rep.theorem_violation {
            failures.push(format!("{}: THEOREM-VIOLATION {v}", r.name));
        }
    }
    for s in sweep {
        match s.status {
            SweepStatus::ParamsInvalid => {}
            SweepStatus::Error => failures.push(format!(
                "{}: {}",
                sweep_label(s),
                s.reason.clone().unwrap_or_default()
            )),
            SweepStatus::Classified if !s.confirms_case() => {
                let why = s
                    .report
                    .as_ref()
                    .and_then(|r| r.theorem_violation.clone())
                    .unwrap_or_else(|| "requested case not confirmed".into());
                failures.push(format!("{}: {why}", sweep_label(s)));
            }
            SweepStatus::Classified => {}
        }
    }
    let built = sweep
        .iter()
        .filter(|s| s.status == SweepStatus::Classified)
        .count();
    result(
        5,
        "central equivalence over corpus and sweep",
        failures,
        format!(
            "{} corpus groups, {built} constructed sweep groups, {} invalid parameter points",
            records.len(),
            sweep.len() - built
        ),
    )
}

fn check_fitting(entries: &[CorpusEntry], records: &[CorpusRecord]) -> CriterionResult {
    let mut failures = Vec::new();
    let mut count = 0;
    for (e, r) in entries.iter().zip(records) {
        if r.report.as_ref().map(|x| x.verdict) != Some(Verdict::SingleGaloisClass) {
            continue;
        }
        count += 1;
        if !e.group.is_solvable() || e.group.has_fitting_height_at_most_two() != Ok(true) {
            failures.push(e.name.to_string());
        }
    }
    result(
        6,
        "single class implies solvable of Fitting height <= 2",
        failures,
        format!("{count} single-class groups"),
    )
}

fn check_zsigmondy() -> CriterionResult {
    let bad = zsigmondy_mismatches(1_000_000);
    let failures = bad.iter().map(|(p, n)| format!("{p}^{n}")).collect();
    result(
        7,
        "Zsigmondy primes match the exception list",
        failures,
        "all p^n <= 10^6".into(),
    )
}

fn check_actions(entries: &[CorpusEntry], seed: u64, min_actions: usize) -> CriterionResult {
    let mut failures = Vec::new();
    let groups: Vec<(String, PermGroup)> = entries
        .iter()
        .map(|e| (e.name.to_string(), e.group.clone()))
        .collect();
    let mut count = 0;
    match coprime_actions(&groups, seed) {
        Ok(actions) => {
            failures.extend(
                actions
                    .iter()
                    .filter(|a| !a.passes())
                    .map(|a| format!("{}: action on P/U", a.source)),
            );
            count += actions.len();
        }
        Err(e) => failures.push(e.to_string()),
    }
    for e in entries {
        match conjugation_check(&e.group, seed) {
            Ok(Some(true)) => count += 1,
            Ok(Some(false)) => failures.push(format!("{}: conjugation action on P", e.name)),
            Ok(None) => {}
            Err(err) => failures.push(format!("{}: {err}", e.name)),
        }
    }
    if count < min_actions {
        failures.push(format!("only {count} actions, need {min_actions}"));
    }
    result(
        8,
        "coprime actions satisfy the centralizer bound and Frobenius criterion",
        failures,
        format!("{count} actions"),
    )
}

/// Centralizer bound for the complement acting by conjugation on the
/// nilpotent residue, when that action is faithful, coprime and nilpotent.
fn conjugation_check(g: &PermGroup, seed: u64) -> Result<Option<bool>, ClassifyError> {
    let p = g.nilpotent_residue();
    if p.is_trivial() || !g.is_solvable() {
        return Ok(None);
    }
    let Some(pp) = as_prime_power(p.order() as u64) else {
        return Ok(None);
    };
    if ((g.order() / p.order()) as u64).is_multiple_of(pp.p) {
        return Ok(None);
    }
    let h = find_complement(g, &p, seed)?;
    if !h.is_nilpotent() || !h.centralizer(&p).is_trivial() {
        return Ok(None);
    }
    check_isaacs_bound(&GroupAction::conjugation(&h, &p)?).map(Some)
}

/// Everything one run reports, serialized for the determinism check.
fn full_run(entries: &[CorpusEntry], seed: u64) -> String {
    let records = classify_corpus(entries, seed);
    let sweep = run_sweep(&default_sweep_points(&CaseTag::ALL, SWEEP_MAX_ORDER), seed);
    let tables: Vec<_> = entries
        .par_iter()
        .map(|e| character_table(&e.group).map(|t| t.to_json()).ok())
        .collect();
    serde_json::to_string(&(records, sweep, tables)).expect("reports serialize")
}

fn check_determinism(entries: &[CorpusEntry], seed: u64, first: &str) -> CriterionResult {
    let second = full_run(entries, seed);
    let failures = if first == second {
        Vec::new()
    } else {
        vec!["reports differ between runs".to_string()]
    };
    result(
        9,
        "identical reports on a second run",
        failures,
        format!("{} bytes identical", first.len()),
    )
}

/// Runs the nine acceptance criteria on `entries`. Checks tied to a named
/// group are skipped when the group is absent; `min_actions` is the number
/// of coprime actions criterion 8 requires.
pub fn check_theorem(entries: &[CorpusEntry], seed: u64, min_actions: usize) -> Vec<CriterionResult> {
    let first = full_run(entries, seed);
    let records = classify_corpus(entries, seed);
    let sweep = run_sweep(&default_sweep_points(&CaseTag::ALL, SWEEP_MAX_ORDER), seed);
    vec![
        check_tables(entries),
        check_nilpotent(entries, &records),
        check_positives(entries, &records),
        check_negatives(entries, &records),
        check_equivalence(&records, &sweep),
        check_fitting(entries, &records),
        check_zsigmondy(),
        check_actions(entries, seed, min_actions),
        check_determinism(entries, seed, &first),
    ]
}

/// One line per criterion.
pub fn render_results(results: &[CriterionResult]) -> String {
    results
        .iter()
        .map(|r| {
            let mark = if r.passed { "PASS" } else { "FAIL" };
            format!("criterion {}: {mark} {} ({})\n", r.id, r.name, r.detail)
        })
        .collect()
}

//! Splitting `Irr(G)` by the degree condition `χ(1)² | |G : ker χ|`, the
//! single-Galois-class test, and the structural checklist with its case tags.
//!
//! The character-theoretic verdict and the structural verdict are computed
//! independently; any disagreement is reported as a theorem violation.

mod actions;

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::char_table::{CharTableError, CharacterTable};
use crate::number_theory::{as_prime_power, is_mersenne_prime, is_prime, NumberTheoryError};
use crate::perm_group::{quotient_module_action, GroupError, PermGroup, Permutation, Subgroup};

pub use actions::{
    check_frobenius_action, check_frobenius_criterion, check_irreducible_action,
    check_isaacs_bound, check_scalar_transitivity, matrix_group_elements, FrobeniusCriterion,
    GroupAction, DEFAULT_MATRIX_GROUP_BOUND,
};

pub const DEFAULT_COMPLEMENT_ATTEMPTS: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error(transparent)]
    CharTable(#[from] CharTableError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    NumberTheory(#[from] NumberTheoryError),
    #[error("no complement found within {attempts} closures")]
    ComplementNotFound { attempts: usize },
    #[error("matrix group exceeds {bound} elements")]
    MatrixGroupTooLarge { bound: usize },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseTag {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
}

impl CaseTag {
    pub const ALL: [CaseTag; 7] = [
        CaseTag::A1,
        CaseTag::A2,
        CaseTag::A3,
        CaseTag::A4,
        CaseTag::A5,
        CaseTag::A6,
        CaseTag::A7,
    ];
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", *self as usize + 1)
    }
}

impl FromStr for CaseTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CaseTag::ALL
            .into_iter()
            .find(|t| t.to_string() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| format!("unknown case tag {s:?} (expected a1..a7)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    NilpotentEmpty,
    SingleGaloisClass,
    NotSingleClass,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NilpotentEmpty => "NilpotentEmpty",
            Verdict::SingleGaloisClass => "SingleGaloisClass",
            Verdict::NotSingleClass => "NotSingleClass",
        })
    }
}

/// Rows with `χ(1)² | |G : ker χ|` and the rest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrPartition {
    pub irr_n: Vec<usize>,
    pub irr_s: Vec<usize>,
}

pub fn irr_partition(table: &CharacterTable) -> Result<IrrPartition, CharTableError> {
    let order = table.order();
    let mut part = IrrPartition {
        irr_n: Vec::new(),
        irr_s: Vec::new(),
    };
    for row in 0..table.num_rows() {
        let index = order / table.kernel_of(row)?.order() as u64;
        let deg = table.degrees()[row];
        if index.is_multiple_of(deg * deg) {
            part.irr_n.push(row);
        } else {
            part.irr_s.push(row);
        }
    }
    Ok(part)
}

/// `irr_s` is nonempty and is exactly one Galois orbit.
pub fn is_single_galois_class(
    table: &CharacterTable,
    part: &IrrPartition,
) -> Result<bool, CharTableError> {
    if part.irr_s.is_empty() {
        return Ok(false);
    }
    let orbits = table.galois_orbits()?;
    Ok(orbits.contains(&part.irr_s))
}

/// Why the single-class test fails, in terms of the characters alone.
fn single_class_failure(
    table: &CharacterTable,
    part: &IrrPartition,
) -> Result<String, CharTableError> {
    let mut kernels: Vec<Subgroup> = Vec::new();
    for &row in &part.irr_s {
        let k = table.kernel_of(row)?;
        if !kernels.iter().any(|x| x.same_elements(&k)) {
            kernels.push(k);
        }
    }
    if kernels.len() > 1 {
        return Ok(format!(
            "multiple kernels in irr_s: {} characters with {} distinct kernels",
            part.irr_s.len(),
            kernels.len()
        ));
    }
    let orbits = table.galois_orbits()?;
    let count = orbits
        .iter()
        .filter(|o| o.iter().any(|r| part.irr_s.contains(r)))
        .count();
    Ok(format!(
        "irr_s ({} characters) meets {count} Galois orbits",
        part.irr_s.len()
    ))
}

fn is_coprime_to(x: &Permutation, p: u64) -> bool {
    !x.order().is_multiple_of(p)
}

/// A complement to the normal Sylow subgroup `p_sub`, found by closing
/// random `p'`-elements; deterministic for a given seed.
pub fn find_complement(
    g: &PermGroup,
    p_sub: &Subgroup,
    seed: u64,
) -> Result<Subgroup, ClassifyError> {
    find_complement_bounded(g, p_sub, seed, DEFAULT_COMPLEMENT_ATTEMPTS)
}

pub fn find_complement_bounded(
    g: &PermGroup,
    p_sub: &Subgroup,
    seed: u64,
    max_attempts: usize,
) -> Result<Subgroup, ClassifyError> {
    let target = g.order() / p_sub.order();
    if target == 1 {
        return Ok(PermGroup::trivial(g.degree()));
    }
    let p = match as_prime_power(p_sub.order() as u64) {
        Some(pp) => pp.p,
        None => {
            return Err(ClassifyError::Hypothesis(
                "subgroup is not a nontrivial p-group".into(),
            ))
        }
    };
    if (target as u64).is_multiple_of(p) || !g.is_normal_subgroup(p_sub) {
        return Err(ClassifyError::Hypothesis(
            "subgroup is not a normal Sylow subgroup".into(),
        ));
    }
    let candidates: Vec<&Permutation> = g
        .elements()
        .iter()
        .filter(|x| !x.is_identity() && is_coprime_to(x, p))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    let mut h = PermGroup::trivial(g.degree());
    let mut stale = 0;
    while attempts < max_attempts {
        let x = *candidates.choose(&mut rng).expect("p'-elements exist");
        if h.contains(x) {
            stale += 1;
            if stale > 64 {
                h = PermGroup::trivial(g.degree());
                stale = 0;
            }
            continue;
        }
        attempts += 1;
        let mut gens = h.generators().to_vec();
        gens.push(x.clone());
        match PermGroup::generate_capped(g.degree(), gens, target) {
            Some(next) if !(next.order() as u64).is_multiple_of(p) => {
                stale = 0;
                if next.order() == target {
                    return Ok(next);
                }
                h = next;
            }
            _ => {
                stale += 1;
                if stale > 8 {
                    h = PermGroup::trivial(g.degree());
                    stale = 0;
                }
            }
        }
    }
    Err(ClassifyError::ComplementNotFound {
        attempts: max_attempts,
    })
}

/// Order `p³` with center, derived subgroup, and Frattini subgroup equal of
/// order `p`.
pub fn is_extraspecial_p3(p_group: &PermGroup, p: u64) -> bool {
    if p_group.order() as u64 != p * p * p || !p_group.is_p_group(p) {
        return false;
    }
    let z = p_group.center();
    if z.order() as u64 != p {
        return false;
    }
    let d = p_group.derived_subgroup();
    match p_group.frattini_of_pgroup(p) {
        Ok(f) => z.same_elements(&d) && d.same_elements(&f),
        Err(_) => false,
    }
}

/// Named structural conditions. `None` means the item was not reached.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checklist {
    pub nonnilpotent: Option<bool>,
    pub solvable: Option<bool>,
    pub single_galois_class: Option<bool>,
    pub residue_is_sylow: Option<bool>,
    pub frattini_equals_derived: Option<bool>,
    pub complement_found: Option<bool>,
    pub shared_kernel: Option<bool>,
    pub kernel_is_c_times_u: Option<bool>,
    pub frobenius_action: Option<bool>,
    pub irreducible_action: Option<bool>,
    pub complement_index: Option<bool>,
    pub d_divides_p_minus_1: Option<bool>,
    pub scalar_transitive: Option<bool>,
    pub field_in_pth_cyclotomic: Option<bool>,
    pub case_tag_found: Option<bool>,
}

impl Checklist {
    /// Items from the residue check through the case tag all hold.
    pub fn structural_ok(&self) -> bool {
        [
            self.residue_is_sylow,
            self.frattini_equals_derived,
            self.complement_found,
            self.shared_kernel,
            self.kernel_is_c_times_u,
            self.frobenius_action,
            self.irreducible_action,
            self.complement_index,
            self.d_divides_p_minus_1,
            self.scalar_transitive,
            self.field_in_pth_cyclotomic,
            self.case_tag_found,
        ]
        .iter()
        .all(|x| *x == Some(true))
    }

    pub fn items(&self) -> Vec<(&'static str, Option<bool>)> {
        vec![
            ("nonnilpotent", self.nonnilpotent),
            ("solvable", self.solvable),
            ("single_galois_class", self.single_galois_class),
            ("residue_is_sylow", self.residue_is_sylow),
            ("frattini_equals_derived", self.frattini_equals_derived),
            ("complement_found", self.complement_found),
            ("shared_kernel", self.shared_kernel),
            ("kernel_is_c_times_u", self.kernel_is_c_times_u),
            ("frobenius_action", self.frobenius_action),
            ("irreducible_action", self.irreducible_action),
            ("complement_index", self.complement_index),
            ("d_divides_p_minus_1", self.d_divides_p_minus_1),
            ("scalar_transitive", self.scalar_transitive),
            ("field_in_pth_cyclotomic", self.field_in_pth_cyclotomic),
            ("case_tag_found", self.case_tag_found),
        ]
    }
}

/// Result of the full analysis of one group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    pub case_tag: Option<CaseTag>,
    pub group_order: u64,
    pub p: Option<u64>,
    pub n: Option<u32>,
    pub d: Option<u64>,
    pub irr_s_degrees: Vec<u64>,
    pub order_p: Option<u64>,
    pub order_u: Option<u64>,
    pub order_k: Option<u64>,
    pub order_h: Option<u64>,
    pub order_c: Option<u64>,
    pub checklist: Checklist,
    pub failure_reason: Option<String>,
    pub theorem_violation: Option<String>,
    pub seed: u64,
}

impl ClassificationReport {
    pub fn to_text(&self) -> String {
        let opt = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
        let mut out = format!("verdict: {}\n", self.verdict);
        out.push_str(&format!(
            "case: {}\n",
            self.case_tag.map_or("-".to_string(), |t| t.to_string())
        ));
        out.push_str(&format!(
            "|G| = {}  p = {}  n = {}  d = {}\n",
            self.group_order,
            opt(self.p),
            opt(self.n.map(u64::from)),
            opt(self.d)
        ));
        out.push_str(&format!(
            "|P| = {}  |U| = {}  |K| = {}  |H| = {}  |C| = {}\n",
            opt(self.order_p),
            opt(self.order_u),
            opt(self.order_k),
            opt(self.order_h),
            opt(self.order_c)
        ));
        out.push_str(&format!("irr_s degrees: {:?}\n", self.irr_s_degrees));
        for (name, v) in self.checklist.items() {
            let mark = match v {
                Some(true) => "yes",
                Some(false) => "no",
                None => "-",
            };
            out.push_str(&format!("  {name:<26} {mark}\n"));
        }
        if let Some(r) = &self.failure_reason {
            out.push_str(&format!("reason: {r}\n"));
        }
        if let Some(v) = &self.theorem_violation {
            out.push_str(&format!("THEOREM-VIOLATION: {v}\n"));
        }
        out.push_str(&format!("seed: {}\n", self.seed));
        out
    }
}

/// Witness subgroups from the structural path.
struct Structure {
    p: u64,
    n: u32,
    p_sub: Subgroup,
    u: Subgroup,
    h: Subgroup,
    c: Subgroup,
}

/// Computes the table and runs the analysis.
pub fn classify(g: &PermGroup, seed: u64) -> Result<ClassificationReport, ClassifyError> {
    let table = CharacterTable::compute(g, seed)?;
    analyze_structure(g, &table, seed)
}

/// The full checklist on `g` with precomputed table `table`; `seed` drives
/// the complement search.
pub fn analyze_structure(
    g: &PermGroup,
    table: &CharacterTable,
    seed: u64,
) -> Result<ClassificationReport, ClassifyError> {
    let part = irr_partition(table)?;
    let mut report = ClassificationReport {
        verdict: Verdict::NotSingleClass,
        case_tag: None,
        group_order: g.order() as u64,
        p: None,
        n: None,
        d: None,
        irr_s_degrees: part.irr_s.iter().map(|&r| table.degrees()[r]).collect(),
        order_p: None,
        order_u: None,
        order_k: None,
        order_h: None,
        order_c: None,
        checklist: Checklist::default(),
        failure_reason: None,
        theorem_violation: None,
        seed,
    };
    let nilpotent = g.is_nilpotent();
    report.checklist.nonnilpotent = Some(!nilpotent);
    if nilpotent {
        report.verdict = Verdict::NilpotentEmpty;
        if !part.irr_s.is_empty() {
            report.theorem_violation = Some(format!(
                "nilpotent group with {} characters in irr_s",
                part.irr_s.len()
            ));
        }
        return Ok(report);
    }
    if part.irr_s.is_empty() {
        report.theorem_violation = Some("nonnilpotent group with empty irr_s".into());
    }

    let single = is_single_galois_class(table, &part)?;
    report.checklist.single_galois_class = Some(single);
    let solvable = g.is_solvable();
    report.checklist.solvable = Some(solvable);
    if !single {
        report.failure_reason = Some(single_class_failure(table, &part)?);
    }
    if !solvable {
        if single {
            report.verdict = Verdict::SingleGaloisClass;
            report.theorem_violation =
                Some("irr_s is a single Galois class in a nonsolvable group".into());
        } else if report.failure_reason.is_none() {
            report.failure_reason = Some("group is not solvable".into());
        }
        return Ok(report);
    }

    let structural = run_structure(g, table, &part, seed, &mut report)?;
    let structural_ok = report.checklist.structural_ok();
    if let Some(s) = &structural {
        report.p = Some(s.p);
        report.n = Some(s.n);
        report.order_p = Some(s.p_sub.order() as u64);
        report.order_u = Some(s.u.order() as u64);
        report.order_h = Some(s.h.order() as u64);
        report.order_c = Some(s.c.order() as u64);
    }
    report.d = Some(part.irr_s.len() as u64);
    if single {
        report.verdict = Verdict::SingleGaloisClass;
        if !structural_ok {
            let failed: Vec<&str> = report
                .checklist
                .items()
                .into_iter()
                .skip(3)
                .filter(|(_, v)| *v != Some(true))
                .map(|(name, _)| name)
                .collect();
            report.theorem_violation = Some(format!(
                "irr_s is a single Galois class but the structure fails: {}",
                failed.join(", ")
            ));
        }
    } else {
        report.verdict = Verdict::NotSingleClass;
        report.case_tag = None;
        if structural_ok {
            report.theorem_violation = Some(
                "structure matches a case but irr_s is not a single Galois class".into(),
            );
        }
    }
    Ok(report)
}

/// Items (4)–(11). Stops at the first item that leaves nothing to build on.
fn run_structure(
    g: &PermGroup,
    table: &CharacterTable,
    part: &IrrPartition,
    seed: u64,
    report: &mut ClassificationReport,
) -> Result<Option<Structure>, ClassifyError> {
    let cl = &mut report.checklist;
    let p_sub = g.nilpotent_residue();
    let Some(pp) = as_prime_power(p_sub.order() as u64) else {
        cl.residue_is_sylow = Some(false);
        return Ok(None);
    };
    let p = pp.p;
    let mut rest = g.order() as u64;
    let mut p_part = 1;
    while rest.is_multiple_of(p) {
        rest /= p;
        p_part *= p;
    }
    if p_sub.order() as u64 != p_part {
        cl.residue_is_sylow = Some(false);
        return Ok(None);
    }
    cl.residue_is_sylow = Some(true);

    let u = p_sub.frattini_of_pgroup(p)?;
    cl.frattini_equals_derived = Some(u.same_elements(&p_sub.derived_subgroup()));
    let quotient_order = (p_sub.order() / u.order()) as u64;
    let n = as_prime_power(quotient_order).map_or(0, |q| q.n);

    let h = find_complement(g, &p_sub, seed)?;
    cl.complement_found = Some(true);
    let c = h.centralizer(&p_sub);

    let d = part.irr_s.len() as u64;
    let mut kernels: Vec<Subgroup> = Vec::new();
    for &row in &part.irr_s {
        kernels.push(table.kernel_of(row)?);
    }
    let shared = !kernels.is_empty() && kernels.iter().all(|k| k.same_elements(&kernels[0]));
    cl.shared_kernel = Some(shared);
    let cu = g.join(&c, &u)?;
    cl.kernel_is_c_times_u = Some(
        shared
            && kernels[0].same_elements(&cu)
            && c.intersection(&u).is_trivial()
            && c.generators()
                .iter()
                .all(|x| u.generators().iter().all(|y| x.commutes_with(y))),
    );
    let order_k = shared.then(|| kernels[0].order() as u64);

    let structure = Structure {
        p,
        n,
        p_sub,
        u,
        h,
        c,
    };
    if n == 0 {
        cl.frobenius_action = Some(false);
        report.order_k = order_k;
        return Ok(Some(structure));
    }
    let mats = quotient_module_action(&structure.p_sub, &structure.u, structure.h.generators(), p)?;
    let image = matrix_group_elements(&mats, p, n, DEFAULT_MATRIX_GROUP_BOUND)?;
    let h_over_c = structure.h.order() / structure.c.order();
    cl.frobenius_action = Some(image.len() == h_over_c && check_frobenius_action(&mats, p, n)?);
    cl.irreducible_action = Some(check_irreducible_action(&mats, p, n)?);
    let pn_minus_1 = quotient_order - 1;
    cl.complement_index = Some(h_over_c as u64 * d == pn_minus_1);
    cl.d_divides_p_minus_1 = Some(d > 0 && (p - 1) % d == 0);
    cl.scalar_transitive = Some(check_scalar_transitivity(&mats, p, n)?);
    let mut field_ok = true;
    for &row in &part.irr_s {
        field_ok &= table.field_in_pth_cyclotomic(row, p)?;
    }
    cl.field_in_pth_cyclotomic = Some(field_ok);

    let tag = case_tag(g, &structure, d)?;
    cl.case_tag_found = Some(tag.is_some());
    report.case_tag = tag;
    report.order_k = order_k;
    Ok(Some(structure))
}

/// First case whose defining conditions hold.
fn case_tag(g: &PermGroup, s: &Structure, d: u64) -> Result<Option<CaseTag>, ClassifyError> {
    let (p, n) = (s.p, s.n);
    let pn_minus_1 = p.pow(n) - 1;
    let h_order = s.h.order() as u64;
    let u_trivial = s.u.is_trivial();
    let c_trivial = s.c.is_trivial();
    let d_ok = d > 0 && (p - 1) % d == 0;
    if !d_ok {
        return Ok(None);
    }
    if u_trivial && c_trivial && s.h.is_cyclic() && h_order == pn_minus_1 / d {
        return Ok(Some(CaseTag::A1));
    }
    if u_trivial && c_trivial && n == 2 && is_mersenne_prime(p) && s.h.is_nilpotent() {
        let sylows = s.h.nilpotent_sylow_decomposition()?;
        let two_ok = sylows
            .iter()
            .any(|(q, sy)| *q == 2 && sy.is_generalized_quaternion());
        let odd_ok = sylows
            .iter()
            .filter(|(q, _)| *q != 2)
            .try_fold(PermGroup::trivial(g.degree()), |acc, (_, sy)| {
                s.h.join(&acc, sy).ok()
            })
            .is_some_and(|dd| dd.is_cyclic());
        if two_ok && odd_ok {
            return Ok(Some(CaseTag::A2));
        }
    }
    let h_over_c = h_order / s.c.order() as u64;
    let h_is_q_group = as_prime_power(h_order).is_some();
    if u_trivial && !c_trivial && h_is_q_group {
        let q = pn_minus_1 / (p - 1);
        if is_prime(q) && h_over_c == q && as_prime_power(h_order).is_some_and(|x| x.p == q) {
            return Ok(Some(CaseTag::A3));
        }
    }
    if is_extraspecial_p3(&s.p_sub, p) {
        let c_u = s.h.centralizer(&s.u);
        if c_trivial {
            if p > 2
                && s.h.is_cyclic()
                && h_order == 2 * (p + 1)
                && h_order == 2 * c_u.order() as u64
            {
                return Ok(Some(CaseTag::A4));
            }
            if c_u.same_elements(&s.h) && s.h.is_cyclic() && h_order == p + 1 {
                return Ok(Some(CaseTag::A5));
            }
            if is_mersenne_prime(p)
                && c_u.same_elements(&s.h)
                && s.h.is_generalized_quaternion()
                && h_order * d == p * p - 1
                && (d == (p - 1) / 2 || d == p - 1)
            {
                return Ok(Some(CaseTag::A6));
            }
        } else if p == 2
            && s.p_sub.is_generalized_quaternion()
            && as_prime_power(h_order).is_some_and(|x| x.p == 3)
        {
            let quotient = g.quotient(&s.c)?;
            let sylow2_normal = quotient.nilpotent_residue().order() == 8
                && quotient.nilpotent_residue().is_generalized_quaternion();
            if quotient.order() == 24
                && quotient.center().order() == 2
                && quotient.derived_subgroup().order() == 8
                && sylow2_normal
            {
                return Ok(Some(CaseTag::A7));
            }
        }
    }
    Ok(None)
}

/// The complement and its action on `P/U` for a group whose nilpotent
/// residue `P` is a Sylow subgroup.
#[derive(Debug, Clone)]
pub struct ModuleWitness {
    pub p: u64,
    pub n: u32,
    pub p_sub: Subgroup,
    pub u: Subgroup,
    pub h: Subgroup,
    pub c: Subgroup,
    /// Matrices of the generators of `H` on `P/U`.
    pub matrices: Vec<crate::fp::FpMatrix>,
}

/// `None` when the nilpotent residue is trivial or not a Sylow subgroup.
pub fn module_witness(g: &PermGroup, seed: u64) -> Result<Option<ModuleWitness>, ClassifyError> {
    let p_sub = g.nilpotent_residue();
    let Some(pp) = as_prime_power(p_sub.order() as u64) else {
        return Ok(None);
    };
    let p = pp.p;
    if ((g.order() / p_sub.order()) as u64).is_multiple_of(p) {
        return Ok(None);
    }
    let u = p_sub.frattini_of_pgroup(p)?;
    let n = as_prime_power((p_sub.order() / u.order()) as u64).map_or(0, |q| q.n);
    let h = find_complement(g, &p_sub, seed)?;
    let c = h.centralizer(&p_sub);
    let matrices = quotient_module_action(&p_sub, &u, h.generators(), p)?;
    Ok(Some(ModuleWitness {
        p,
        n,
        p_sub,
        u,
        h,
        c,
        matrices,
    }))
}

#[cfg(test)]
mod tests;

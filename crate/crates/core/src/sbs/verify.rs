//! Executable checks of the structural theorems and cardinality formulas,
//! evaluated per S-subgroup and collected into [`CardinalityReport`]s.

use std::collections::{BTreeSet, HashSet};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{
    bs_from_autotopisms, kernel_of, omega, sa_from_aum, sbs_via_isotopes, sbs_witnesses,
    ssym_members, theta_set, SpecialMapWitness,
};
use crate::error::Result;
use crate::group::{check_group, is_subset, GroupElement};
use crate::isotopy::{
    automorphism_group, autotopism_group, is_s_isomorphic, principal_isotope,
    smarandache_principal_isotope, Autotopism, SIsoSemantics,
};
use crate::loops::{LoopTable, SLoopContext, SubgroupSet};
use crate::perm::Perm;
use crate::search::SearchCap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckStatus {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "n/a")]
    NotApplicable,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::NotApplicable => "n/a",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub status: CheckStatus,
    pub detail: String,
}

impl CheckResult {
    fn from_bool(ok: bool, detail: String) -> CheckResult {
        CheckResult {
            status: if ok {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            detail,
        }
    }

    fn not_applicable(detail: impl Into<String>) -> CheckResult {
        CheckResult {
            status: CheckStatus::NotApplicable,
            detail: detail.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

/// Identifies one theorem check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    T10,
    C11,
    T12,
    T12_1,
    T8,
    T13,
    T14,
    T15,
    T16,
    T17,
    T18,
    T19,
    T20,
    C21,
    C23,
}

impl TheoremId {
    pub const ALL: [TheoremId; 15] = [
        TheoremId::T10,
        TheoremId::C11,
        TheoremId::T12,
        TheoremId::T12_1,
        TheoremId::T8,
        TheoremId::T13,
        TheoremId::T14,
        TheoremId::T15,
        TheoremId::T16,
        TheoremId::T17,
        TheoremId::T18,
        TheoremId::T19,
        TheoremId::T20,
        TheoremId::C21,
        TheoremId::C23,
    ];

    pub fn key(self) -> &'static str {
        match self {
            TheoremId::T10 => "t10",
            TheoremId::C11 => "c11",
            TheoremId::T12 => "t12",
            TheoremId::T12_1 => "t12_1",
            TheoremId::T8 => "t8",
            TheoremId::T13 => "t13",
            TheoremId::T14 => "t14",
            TheoremId::T15 => "t15",
            TheoremId::T16 => "t16",
            TheoremId::T17 => "t17",
            TheoremId::T18 => "t18",
            TheoremId::T19 => "t19",
            TheoremId::T20 => "t20",
            TheoremId::C21 => "c21",
            TheoremId::C23 => "c23",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim().to_ascii_lowercase();
        TheoremId::ALL
            .into_iter()
            .find(|t| t.key() == s)
            .ok_or_else(|| format!("unknown theorem {s:?}"))
    }
}

/// Results of every check, in a fixed key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub t10: CheckResult,
    pub c11: CheckResult,
    pub t12: CheckResult,
    pub t12_1: CheckResult,
    pub t8: CheckResult,
    pub t13: CheckResult,
    pub t14: CheckResult,
    pub t15: CheckResult,
    pub t16: CheckResult,
    pub t17: CheckResult,
    pub t18: CheckResult,
    pub t19: CheckResult,
    pub t20: CheckResult,
    pub c21: CheckResult,
    pub c23: CheckResult,
}

impl Checks {
    pub fn get(&self, id: TheoremId) -> &CheckResult {
        match id {
            TheoremId::T10 => &self.t10,
            TheoremId::C11 => &self.c11,
            TheoremId::T12 => &self.t12,
            TheoremId::T12_1 => &self.t12_1,
            TheoremId::T8 => &self.t8,
            TheoremId::T13 => &self.t13,
            TheoremId::T14 => &self.t14,
            TheoremId::T15 => &self.t15,
            TheoremId::T16 => &self.t16,
            TheoremId::T17 => &self.t17,
            TheoremId::T18 => &self.t18,
            TheoremId::T19 => &self.t19,
            TheoremId::T20 => &self.t20,
            TheoremId::C21 => &self.c21,
            TheoremId::C23 => &self.c23,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (TheoremId, &CheckResult)> + '_ {
        TheoremId::ALL.into_iter().map(move |id| (id, self.get(id)))
    }
}

/// Cardinalities and check outcomes for one loop and one S-subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CardinalityReport {
    pub order: usize,
    pub h: usize,
    pub bs: usize,
    pub sbs: usize,
    pub ssym: usize,
    pub aum: usize,
    pub sa: usize,
    pub aut: usize,
    pub omega: usize,
    pub theta: usize,
    pub n_mu: usize,
    pub n_mu_cap_h: usize,
    pub ker_phi: usize,
    pub checks: Checks,
    /// Elements of `H`; not part of the serialized schema.
    #[serde(skip)]
    pub subgroup: Vec<usize>,
}

impl CardinalityReport {
    /// Whether `|N_μ| = |ker Φ|` holds with the full middle nucleus.
    pub fn full_nucleus_kernel_reading_holds(&self) -> bool {
        self.n_mu == self.ker_phi
    }

    pub fn failures(&self) -> impl Iterator<Item = (TheoremId, &CheckResult)> + '_ {
        self.checks
            .iter()
            .filter(|(_, c)| c.status == CheckStatus::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Cross-subgroup summary: the averaged Lagrange formula for `BS`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AggregateReport {
    /// Number of distinct S-subgroups.
    pub k: usize,
    pub bs: usize,
    pub sbs: Vec<usize>,
    pub index: Vec<usize>,
    pub t14: CheckResult,
}

/// Everything [`verify_theorems`] learns about one loop.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopReport {
    pub order: usize,
    pub associative: bool,
    pub subgroups: Vec<Vec<usize>>,
    pub reports: Vec<CardinalityReport>,
    pub aggregate: AggregateReport,
}

impl LoopReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<LoopReport> {
        let mut report: LoopReport = serde_json::from_str(text)?;
        for (r, h) in report.reports.iter_mut().zip(&report.subgroups) {
            r.subgroup = h.clone();
        }
        Ok(report)
    }

    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(|r| r.failures().next().is_none()) && self.aggregate.t14.passed()
    }
}

/// Data shared by every S-subgroup of one loop.
struct LoopData {
    aut: Vec<Autotopism>,
    bs: Vec<Perm>,
    aum: Vec<Perm>,
    n_mu: SubgroupSet,
}

impl LoopData {
    fn compute(l: &LoopTable, cap: SearchCap) -> Result<LoopData> {
        let aut = autotopism_group(l, cap)?;
        let bs = bs_from_autotopisms(&aut);
        Ok(LoopData {
            aut,
            bs,
            aum: automorphism_group(l, cap)?,
            n_mu: l.middle_nucleus(),
        })
    }
}

/// Runs every check for every S-subgroup of `l`, plus the aggregate.
pub fn verify_theorems(l: &LoopTable, cap: SearchCap) -> Result<LoopReport> {
    cap.check(l.order())?;
    let contexts = SLoopContext::all_for(l)?;
    let data = LoopData::compute(l, cap)?;
    let (reports, indices): (Vec<_>, Vec<_>) = contexts
        .iter()
        .map(|ctx| report_for(ctx, &data, cap))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .unzip();
    let aggregate = aggregate(&data, &reports, &indices);
    Ok(LoopReport {
        order: l.order(),
        associative: l.is_associative(),
        subgroups: contexts
            .iter()
            .map(|c| c.subgroup().elements().to_vec())
            .collect(),
        reports,
        aggregate,
    })
}

/// Runs every check for one chosen S-subgroup.
pub fn verify_context(ctx: &SLoopContext, cap: SearchCap) -> Result<CardinalityReport> {
    cap.check(ctx.order())?;
    let data = LoopData::compute(ctx.table(), cap)?;
    Ok(report_for(ctx, &data, cap)?.0)
}

fn aggregate(
    data: &LoopData,
    reports: &[CardinalityReport],
    indices: &[Option<usize>],
) -> AggregateReport {
    let k = reports.len();
    let bs = data.bs.len();
    let sbs: Vec<usize> = reports.iter().map(|r| r.sbs).collect();
    let index: Vec<usize> = indices.iter().map(|i| i.unwrap_or(0)).collect();
    let total: usize = sbs.iter().zip(&index).map(|(s, i)| s * i).sum();
    let ok = k > 0 && total == k * bs && indices.iter().all(Option::is_some);
    let terms: Vec<String> = sbs
        .iter()
        .zip(&index)
        .map(|(s, i)| format!("{s}·{i}"))
        .collect();
    let detail = format!(
        "|BS|={bs}; (1/{k})·({}) = {}/{k}{}",
        terms.join(" + "),
        total,
        if ok {
            format!(" = {bs}")
        } else {
            " does not equal |BS|".to_string()
        }
    );
    AggregateReport {
        k,
        bs,
        sbs,
        index,
        t14: CheckResult::from_bool(ok, detail),
    }
}

/// Counts the distinct left cosets `θ·SBS` of `sub` in `group` and checks
/// they partition it. Returns the number of cosets when they do.
fn coset_count(group: &[Perm], sub: &[Perm]) -> Option<usize> {
    let mut seen: HashSet<&Perm> = HashSet::new();
    let mut cosets = 0;
    let group_set: HashSet<&Perm> = group.iter().collect();
    for theta in group {
        if seen.contains(theta) {
            continue;
        }
        cosets += 1;
        for s in sub {
            let c = theta.then(s);
            if !group_set.contains(&c) {
                return None;
            }
            let c = group_set.get(&c).copied()?;
            if !seen.insert(c) {
                return None;
            }
        }
    }
    (seen.len() == group.len()).then_some(cosets)
}

fn counterexample(l: &LoopTable, theta: Option<&Perm>, witnesses: &[SpecialMapWitness]) -> String {
    let mut s = String::from("\ncounterexample table:\n");
    s.push_str(&l.to_text());
    if let Some(t) = theta {
        let _ = writeln!(s, "theta: {t}");
    }
    for w in witnesses {
        let _ = writeln!(s, "witness: theta={} f={} g={}", w.theta, w.f, w.g);
    }
    s
}

fn group_note<T: GroupElement>(name: &str, members: &[T]) -> std::result::Result<(), String> {
    check_group(members).map_err(|v| format!("{name} is not a group: {v}"))
}

/// The report plus `[BS:SBS]` counted by cosets, when the cosets partition BS.
fn report_for(
    ctx: &SLoopContext,
    data: &LoopData,
    cap: SearchCap,
) -> Result<(CardinalityReport, Option<usize>)> {
    let l = ctx.table();
    let n = l.order();
    let h = ctx.subgroup();
    let hk = h.len();
    let pairs: Vec<(usize, usize)> = h
        .elements()
        .iter()
        .flat_map(|&f| h.elements().iter().map(move |&g| (f, g)))
        .collect();

    let ssym = ssym_members(n, h);
    let sbs_w = sbs_witnesses(ctx, cap)?;
    let sbs: Vec<Perm> = sbs_w.iter().map(|w| w.theta.clone()).collect();
    let omega = omega(ctx, cap)?;
    let ker = kernel_of(&omega);
    let sa = sa_from_aum(ctx, &data.aum);
    let theta = theta_set(ctx, cap)?;
    let n_mu_cap_h: Vec<usize> = data
        .n_mu
        .elements()
        .iter()
        .copied()
        .filter(|&g| h.contains(g))
        .collect();

    let (bs_len, sbs_len, om_len, th_len, sa_len) =
        (data.bs.len(), sbs.len(), omega.len(), theta.len(), sa.len());
    let nmu_len = data.n_mu.len();
    let nmh_len = n_mu_cap_h.len();

    // t10: SBS ≤ BS, with BS itself checked to be a group.
    let t10 = {
        let mut problems = Vec::new();
        if let Err(e) = group_note("BS", &data.bs) {
            problems.push(e);
        }
        if let Err(e) = group_note("SBS", &sbs) {
            problems.push(e);
        }
        if let Some(bad) = sbs.iter().find(|p| data.bs.binary_search(p).is_err()) {
            problems.push(format!(
                "{bad} in SBS but not in BS{}",
                counterexample(l, Some(bad), &[])
            ));
        }
        if problems.is_empty() {
            CheckResult::from_bool(
                true,
                format!("SBS ≤ BS: |SBS|={sbs_len}, |BS|={bs_len}, both closed"),
            )
        } else {
            CheckResult::from_bool(false, problems.join("; "))
        }
    };

    // c11: SBS ≤ SSYM ≤ SYM.
    let c11 = {
        let mut problems = Vec::new();
        if let Err(e) = group_note("SSYM", &ssym) {
            problems.push(e);
        }
        let expected = factorial(hk) * factorial(n - hk);
        if ssym.len() != expected {
            problems.push(format!(
                "|SSYM|={} but |H|!·(n-|H|)! = {expected}",
                ssym.len()
            ));
        }
        if let Some(bad) = sbs.iter().find(|p| !p.stabilizes(h.elements())) {
            problems.push(format!("{bad} in SBS does not stabilize H"));
        }
        if !is_subset(&sbs, &ssym) {
            problems.push("SBS is not contained in SSYM".into());
        }
        if problems.is_empty() {
            CheckResult::from_bool(
                true,
                format!(
                    "SBS ≤ SSYM ≤ SYM: {sbs_len} | {} | {}",
                    ssym.len(),
                    factorial(n)
                ),
            )
        } else {
            CheckResult::from_bool(false, problems.join("; "))
        }
    };

    // Isotopes for every pair of S-elements, reused by several checks.
    let isotopes = pairs
        .iter()
        .map(|&(f, g)| smarandache_principal_isotope(ctx, f, g).map(|(rec, img)| (f, g, rec, img)))
        .collect::<Vec<_>>();

    // t12: each Smarandache principal isotope is an S-loop with S-subgroup H.
    let t12 = {
        let mut problems = Vec::new();
        for (i, iso) in isotopes.iter().enumerate() {
            let (f, g) = pairs[i];
            match iso {
                Err(e) => problems.push(format!("f={f} g={g}: {e}")),
                Ok((_, _, rec, _)) if rec.result.identity() != l.mul(f, g) => {
                    problems.push(format!(
                        "f={f} g={g}: identity {} but f·g = {}",
                        rec.result.identity(),
                        l.mul(f, g)
                    ))
                }
                Ok(_) => {}
            }
        }
        let detail = if problems.is_empty() {
            format!(
                "{} Smarandache principal isotopes are S-loops with S-subgroup H",
                pairs.len()
            )
        } else {
            format!("{}{}", problems.join("; "), counterexample(l, None, &[]))
        };
        CheckResult::from_bool(problems.is_empty(), detail)
    };

    let good: Vec<_> = isotopes.iter().filter_map(|r| r.as_ref().ok()).collect();

    // t12_1: the g,f-construction on the isotope gives back the loop.
    let t12_1 = {
        let mut problems = Vec::new();
        for (f, g, rec, _) in &good {
            match principal_isotope(&rec.result, *g, *f) {
                Ok(back) if back.result == *l => {}
                Ok(back) => problems.push(format!(
                    "f={f} g={g}: reconstruction differs\n{}",
                    back.result.to_text()
                )),
                Err(e) => problems.push(format!("f={f} g={g}: {e}")),
            }
        }
        let ok = problems.is_empty() && good.len() == pairs.len();
        let detail = if ok {
            format!(
                "g,f-isotope of each of the {} isotopes reproduces the table",
                pairs.len()
            )
        } else {
            format!("{}{}", problems.join("; "), counterexample(l, None, &[]))
        };
        CheckResult::from_bool(ok, detail)
    };

    // t8: SBS by witnesses equals SBS by S-isomorphisms onto isotopes.
    let t8 = {
        let onto = sbs_via_isotopes(ctx, SIsoSemantics::Onto, cap)?;
        let into = sbs_via_isotopes(ctx, SIsoSemantics::Into, cap)?;
        let ok = onto == sbs;
        let mut detail = format!(
            "witness route |SBS|={sbs_len}; isotope route (onto) {}; (into) {}",
            onto.len(),
            if into == sbs { "agrees" } else { "differs" }
        );
        if !ok {
            let only_w: Vec<String> = sbs
                .iter()
                .filter(|p| onto.binary_search(p).is_err())
                .map(|p| p.to_string())
                .collect();
            let only_i: Vec<String> = onto
                .iter()
                .filter(|p| sbs.binary_search(p).is_err())
                .map(|p| p.to_string())
                .collect();
            let _ = write!(
                detail,
                "; only by witnesses: [{}]; only by isotopes: [{}]{}",
                only_w.join(" "),
                only_i.join(" "),
                counterexample(l, None, &sbs_w)
            );
        }
        CheckResult::from_bool(ok, detail)
    };

    // t13: SBS is the same on every Smarandache principal isotope.
    let t13 = {
        let mut problems = Vec::new();
        for (f, g, _, img) in &good {
            let other: Vec<Perm> = sbs_witnesses(img, cap)?
                .into_iter()
                .map(|w| w.theta)
                .collect();
            if other != sbs {
                problems.push(format!(
                    "f={f} g={g}: |SBS(G,∘)|={} vs |SBS(G,·)|={sbs_len}\n{}",
                    other.len(),
                    img.table().to_text()
                ));
            }
        }
        let detail = if problems.is_empty() {
            format!("SBS(G,·) = SBS(G,∘) on all {} isotopes", good.len())
        } else {
            format!("{}{}", problems.join("; "), counterexample(l, None, &[]))
        };
        CheckResult::from_bool(problems.is_empty(), detail)
    };

    // t14 (per subgroup): Lagrange for SBS inside BS, index by coset count.
    let sbs_index = coset_count(&data.bs, &sbs);
    let t14 = match sbs_index {
        Some(idx) if idx * sbs_len == bs_len => CheckResult::from_bool(
            true,
            format!("|BS| = |SBS|·[BS:SBS] = {sbs_len}·{idx} = {bs_len}"),
        ),
        Some(idx) => CheckResult::from_bool(
            false,
            format!("|SBS|·[BS:SBS] = {sbs_len}·{idx} ≠ |BS| = {bs_len}"),
        ),
        None => CheckResult::from_bool(false, "cosets of SBS do not partition BS".into()),
    };

    // t15: Ω ≤ AUT.
    let triples: Vec<Autotopism> = omega.iter().map(|x| x.autotopism.clone()).collect();
    let t15 = {
        let mut problems = Vec::new();
        if let Some(bad) = triples
            .iter()
            .find(|t| data.aut.binary_search(t).is_err() || !t.is_autotopism_of(l))
        {
            problems.push(format!("{bad} is in Ω but not an autotopism"));
        }
        if let Err(e) = group_note("Ω", &triples) {
            problems.push(e);
        }
        if let Some(bad) = omega.iter().find(|x| x.witness.triple(l) != x.autotopism) {
            problems.push(format!("{} does not match its witness", bad.autotopism));
        }
        let detail = if problems.is_empty() {
            format!("Ω ≤ AUT: |Ω|={om_len}, |AUT|={}", data.aut.len())
        } else {
            problems.join("; ")
        };
        CheckResult::from_bool(problems.is_empty(), detail)
    };

    // t16: Φ is a homomorphism Ω -> SBS.
    let t16 = {
        let index: HashSet<&Autotopism> = triples.iter().collect();
        let mut failure = None;
        'outer: for a in &omega {
            for b in &omega {
                let ab = a.autotopism.then(&b.autotopism);
                if !index.contains(&ab) {
                    failure = Some(format!("{} · {} leaves Ω", a.autotopism, b.autotopism));
                    break 'outer;
                }
                if ab.w != a.autotopism.w.then(&b.autotopism.w) {
                    failure = Some(format!(
                        "Φ(AB) ≠ Φ(A)Φ(B) for {} and {}",
                        a.autotopism, b.autotopism
                    ));
                    break 'outer;
                }
            }
        }
        if failure.is_none() {
            if let Some(bad) = omega
                .iter()
                .find(|x| sbs.binary_search(&x.autotopism.w).is_err())
            {
                failure = Some(format!("Φ sends {} outside SBS", bad.autotopism));
            }
        }
        match failure {
            None => CheckResult::from_bool(
                true,
                format!("Φ(AB) = Φ(A)Φ(B) on all {} pairs", om_len * om_len),
            ),
            Some(why) => {
                CheckResult::from_bool(false, format!("{why}{}", counterexample(l, None, &[])))
            }
        }
    };

    // t17: kernel elements are (R_g⁻¹, L_f⁻¹, I) with g·f = e and g ∈ N_μ.
    let t17 = {
        let e = l.identity();
        let mut problems = Vec::new();
        for x in &ker {
            let (f, g) = (x.witness.f, x.witness.g);
            if l.mul(g, f) != e {
                problems.push(format!("kernel element f={f} g={g} has g·f ≠ e"));
            }
            if !data.n_mu.contains(g) {
                problems.push(format!("kernel element f={f} g={g} has g ∉ N_μ"));
            }
        }
        // Conversely every g ∈ N_μ ∩ H with f = g \ e gives a kernel element.
        for &g in &n_mu_cap_h {
            let f = l.ldiv(g, e);
            let w = SpecialMapWitness {
                theta: Perm::identity(n),
                f,
                g,
            };
            let t = w.triple(l);
            if !t.is_autotopism_of(l) || !ker.iter().any(|x| x.autotopism == t) {
                problems.push(format!(
                    "g={g} ∈ N_μ∩H with f={f} does not give a kernel element"
                ));
            }
        }
        let detail = if problems.is_empty() {
            format!(
                "ker Φ = {{(R_g⁻¹, L_f⁻¹, I) : g ∈ N_μ∩H, g·f = e}}, {} elements",
                ker.len()
            )
        } else {
            format!("{}{}", problems.join("; "), counterexample(l, None, &[]))
        };
        CheckResult::from_bool(problems.is_empty(), detail)
    };

    // t18: |ker Φ| against both nucleus readings, and |Ω| = |SBS|·|ker Φ|.
    let t18 = {
        let image: BTreeSet<&Perm> = omega.iter().map(|x| &x.autotopism.w).collect();
        let onto = image.len() == sbs_len && sbs.iter().all(|p| image.contains(p));
        let cap_ok = ker.len() == nmh_len;
        let product_ok = om_len == sbs_len * ker.len();
        let literal = nmu_len == ker.len();
        let detail = format!(
            "|ker Φ|={} |N_μ∩H|={nmh_len} ({}); literal |N_μ|={nmu_len} reading {}; |Ω|={om_len} {} |SBS|·|ker Φ| = {sbs_len}·{}; Im Φ {} SBS",
            ker.len(),
            if cap_ok { "equal" } else { "differ" },
            if literal { "holds".to_string() } else { format!("fails ({nmu_len} ≠ {})", ker.len()) },
            if product_ok { "=" } else { "≠" },
            ker.len(),
            if onto { "=" } else { "≠" },
        );
        CheckResult::from_bool(cap_ok && product_ok && onto, detail)
    };

    // t19: |Ω| = |Θ|·|SA|, and the (f,g) labels occurring in Ω are exactly Θ.
    let t19 = {
        let labels: BTreeSet<(usize, usize)> =
            omega.iter().map(|x| (x.witness.f, x.witness.g)).collect();
        let labels_ok = labels.iter().copied().eq(theta.iter().copied());
        let count_ok = om_len == th_len * sa_len;
        let detail = format!(
            "|Ω|={om_len} {} |Θ|·|SA| = |Θ|={th_len} · |SA|={sa_len}; Ω labels {} Θ",
            if count_ok { "=" } else { "≠" },
            if labels_ok { "=" } else { "≠" }
        );
        CheckResult::from_bool(count_ok && labels_ok, detail)
    };

    let full = th_len == hk * hk;
    let lhs = hk * hk * sa_len;

    // t20: Θ = H×H iff |H|²|SA| = |SBS|·|N_μ∩H|.
    let t20 = {
        let rhs_cap = sbs_len * nmh_len;
        let rhs_lit = sbs_len * nmu_len;
        let ok = full == (lhs == rhs_cap);
        let literal = full == (lhs == rhs_lit);
        let detail = format!(
            "Θ=H×H: {full}; |H|²|SA|={lhs}, |SBS|·|N_μ∩H|={rhs_cap}; literal |SBS|·|N_μ|={rhs_lit} reading {}",
            if literal { "holds" } else { "fails" }
        );
        CheckResult::from_bool(ok, detail)
    };

    // c21: GS-loop via principal isotopes, tested loop -> isotope.
    let gs = {
        let mut all = good.len() == pairs.len();
        for (_, _, _, img) in &good {
            if !all {
                break;
            }
            all = is_s_isomorphic(ctx, img, SIsoSemantics::Into, cap)?;
        }
        all
    };
    let c21 = {
        let rhs_cap = sbs_len * nmh_len;
        let literal = gs == (lhs == sbs_len * nmu_len);
        let ok = gs == (lhs == rhs_cap) && gs == full;
        let detail = format!(
            "GS-loop: {gs}; |H|²|SA|={lhs}, |SBS|·|N_μ∩H|={rhs_cap}; literal |N_μ| reading {}",
            if literal { "holds" } else { "fails" }
        );
        CheckResult::from_bool(ok, detail)
    };

    // c23: for GS-loops, |H|=|N_μ∩H| iff |H|=|SBS|/|SA|, plus the divisibility bound when H = N_μ.
    let c23 = if !gs {
        CheckResult::not_applicable("not a GS-loop for this H")
    } else {
        let lemma_left = hk == nmh_len;
        let lemma_right = hk * sa_len == sbs_len;
        let mut ok = lemma_left == lemma_right;
        let mut detail = format!(
            "|H|=|N_μ∩H|: {lemma_left}; |H|=|SBS|/|SA|: {lemma_right} ({hk}·{sa_len} vs {sbs_len})"
        );
        let h_is_nucleus = h.elements() == data.n_mu.elements();
        if h_is_nucleus && nmu_len > 1 {
            let ratio = sbs_len.checked_div(sa_len).unwrap_or(0);
            let quotient_ok = sa_len > 0 && ratio * sa_len == sbs_len && ratio == hk;
            let cofactor = n.checked_div(ratio).unwrap_or(0);
            let divides = ratio > 0 && cofactor * ratio == n && cofactor >= 2;
            ok &= quotient_ok && divides;
            let _ = write!(
                detail,
                "; H = N_μ: |SBS|/|SA| = {ratio}, |G| = {cofactor} · {ratio}"
            );
        }
        CheckResult::from_bool(ok, detail)
    };

    let report = CardinalityReport {
        order: n,
        h: hk,
        bs: bs_len,
        sbs: sbs_len,
        ssym: ssym.len(),
        aum: data.aum.len(),
        sa: sa_len,
        aut: data.aut.len(),
        omega: om_len,
        theta: th_len,
        n_mu: nmu_len,
        n_mu_cap_h: nmh_len,
        ker_phi: ker.len(),
        checks: Checks {
            t10,
            c11,
            t12,
            t12_1,
            t8,
            t13,
            t14,
            t15,
            t16,
            t17,
            t18,
            t19,
            t20,
            c21,
            c23,
        },
        subgroup: h.elements().to_vec(),
    };
    Ok((report, sbs_index))
}

fn factorial(k: usize) -> usize {
    (1..=k).fold(1usize, |acc, x| acc.saturating_mul(x))
}

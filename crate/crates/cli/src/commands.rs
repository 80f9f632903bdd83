use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use loopforge_core::catalog::{
    self, content_id, generate_catalog, read_catalog, report_path, write_catalog,
};
use loopforge_core::sbs::{verify_context, verify_theorems, CheckResult, CheckStatus};
use loopforge_core::{
    principal_isotope, smarandache_principal_isotope, CardinalityReport, Error, GenerateOptions,
    LoopReport, LoopTable, SearchCap, TheoremId,
};
use rayon::prelude::*;
use serde_json::json;

use crate::input::{context, load_loop};
use crate::{Cli, Command, Config};

pub const CACHE_ENV: &str = "LOOPFORGE_CACHE";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    fn from_pass(ok: bool) -> Outcome {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

pub fn run(cli: &Cli, out: &mut String) -> Result<Outcome> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Validate { file } => validate(cfg, file, out),
        Command::Analyze { file, subgroup } => analyze(cfg, file, subgroup.as_deref(), out),
        Command::Isotope {
            file,
            f,
            g,
            subgroup,
            out: path,
        } => isotope(cfg, file, *f, *g, subgroup.as_deref(), path.as_deref(), out),
        Command::Verify {
            target,
            theorem,
            subgroup,
        } => {
            let selected = parse_selector(theorem)?;
            if Path::new(target).is_dir() {
                if subgroup.is_some() {
                    bail!("--subgroup cannot be combined with a catalog directory");
                }
                verify_catalog(cfg, Path::new(target), &selected, out)
            } else {
                verify_file(cfg, target, subgroup.as_deref(), &selected, out)
            }
        }
        Command::Generate {
            order,
            nonassociative,
            require_s_subgroup,
            limit,
            allow_order_six,
            out: dir,
        } => {
            let opts = GenerateOptions {
                nonassociative: *nonassociative,
                require_s_subgroup: *require_s_subgroup,
                limit: *limit,
                allow_order_six: *allow_order_six,
            };
            generate(cfg, *order, opts, dir.as_deref(), out)
        }
    }
}

fn cap(cfg: &Config) -> SearchCap {
    SearchCap(cfg.search_cap as usize)
}

fn set(elems: &[usize]) -> String {
    let inner: Vec<String> = elems.iter().map(usize::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

fn parse_selector(s: &str) -> Result<Vec<TheoremId>> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(TheoremId::ALL.to_vec());
    }
    let mut ids = s
        .split(',')
        .map(|t| t.parse::<TheoremId>().map_err(anyhow::Error::msg))
        .collect::<Result<Vec<_>>>()
        .context("--theorem")?;
    ids.sort_unstable_by_key(|id| TheoremId::ALL.iter().position(|x| x == id));
    ids.dedup();
    Ok(ids)
}

fn validate(cfg: &Config, file: &str, out: &mut String) -> Result<Outcome> {
    let l = load_loop(file)?;
    let subgroups: Vec<Vec<usize>> = l
        .subgroups()
        .iter()
        .map(|s| s.elements().to_vec())
        .collect();
    let s_subgroups: Vec<Vec<usize>> = l
        .s_subgroups()
        .iter()
        .map(|s| s.elements().to_vec())
        .collect();
    let nucleus = l.middle_nucleus().elements().to_vec();
    if cfg.json {
        let doc = json!({
            "order": l.order(),
            "identity": l.identity(),
            "associative": l.is_associative(),
            "id": format!("{:016x}", content_id(&l)),
            "subgroups": subgroups,
            "s_subgroups": s_subgroups,
            "middle_nucleus": nucleus,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        return Ok(Outcome::Pass);
    }
    writeln!(out, "valid loop of order {}", l.order())?;
    writeln!(out, "identity element: {}", l.identity())?;
    writeln!(
        out,
        "associative: {}",
        if l.is_associative() { "yes" } else { "no" }
    )?;
    let list = |v: &[Vec<usize>]| v.iter().map(|s| set(s)).collect::<Vec<_>>().join(" ");
    writeln!(out, "subgroups: {}", list(&subgroups))?;
    writeln!(
        out,
        "S-subgroups: {}",
        if s_subgroups.is_empty() {
            "none".to_string()
        } else {
            list(&s_subgroups)
        }
    )?;
    writeln!(out, "middle nucleus: {}", set(&nucleus))?;
    Ok(Outcome::Pass)
}

/// The full report for `l`, read from and written to the cache directory
/// named by `LOOPFORGE_CACHE` when it is set.
fn loop_report(l: &LoopTable, cap: SearchCap) -> Result<LoopReport> {
    cap.check(l.order())?;
    let Some(dir) = std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty()) else {
        return Ok(verify_theorems(l, cap)?);
    };
    let path = PathBuf::from(dir).join(format!("{:016x}.report.json", content_id(l)));
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(report) = LoopReport::from_json(&text) {
            return Ok(report);
        }
    }
    let report = verify_theorems(l, cap)?;
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).with_context(|| format!("{}", parent.display()))?;
    }
    fs::write(&path, report.to_json()).with_context(|| format!("{}", path.display()))?;
    Ok(report)
}

fn cardinalities(r: &CardinalityReport) -> String {
    format!(
        "|BS|={} |SBS|={} |SSYM|={} |AUT|={} |AUM|={} |SA|={} |Ω|={} |Θ|={} |N_μ|={} |N_μ∩H|={} |ker Φ|={}",
        r.bs, r.sbs, r.ssym, r.aut, r.aum, r.sa, r.omega, r.theta, r.n_mu, r.n_mu_cap_h, r.ker_phi
    )
}

fn check_line(out: &mut String, key: &str, c: &CheckResult) -> Result<()> {
    writeln!(out, "  {key} {}: {}", c.status, c.detail)?;
    Ok(())
}

fn analyze(cfg: &Config, file: &str, subgroup: Option<&str>, out: &mut String) -> Result<Outcome> {
    let l = load_loop(file)?;
    let reports: Vec<CardinalityReport>;
    let mut aggregate = None;
    if let Some(csv) = subgroup {
        let ctx = context(l.clone(), csv)?;
        let r = verify_context(&ctx, cap(cfg))?;
        if cfg.json {
            writeln!(out, "{}", r.to_json())?;
        }
        reports = vec![r];
    } else {
        let report = loop_report(&l, cap(cfg))?;
        if cfg.json {
            writeln!(out, "{}", report.to_json())?;
        }
        aggregate = Some(report.aggregate);
        reports = report.reports;
    }
    let failed: Vec<String> = reports
        .iter()
        .flat_map(|r| {
            r.failures()
                .map(move |(id, _)| format!("{id} for H={}", set(&r.subgroup)))
        })
        .chain(
            aggregate
                .iter()
                .filter(|a| !a.t14.passed())
                .map(|_| "t14 aggregate".to_string()),
        )
        .collect();
    if !cfg.json {
        writeln!(
            out,
            "order {}, {}, {} S-subgroup(s)",
            l.order(),
            if l.is_associative() {
                "associative"
            } else {
                "non-associative"
            },
            reports.len()
        )?;
        for r in &reports {
            writeln!(out, "H = {}", set(&r.subgroup))?;
            writeln!(out, "  {}", cardinalities(r))?;
        }
        if let Some(agg) = &aggregate {
            writeln!(
                out,
                "aggregate over {} S-subgroup(s): {}",
                agg.k, agg.t14.detail
            )?;
        }
        if !failed.is_empty() {
            writeln!(out, "failed checks: {}", failed.join(", "))?;
        }
    }
    Ok(Outcome::from_pass(failed.is_empty()))
}

fn isotope(
    cfg: &Config,
    file: &str,
    f: usize,
    g: usize,
    subgroup: Option<&str>,
    path: Option<&Path>,
    out: &mut String,
) -> Result<Outcome> {
    let l = load_loop(file)?;
    let record = match subgroup {
        Some(csv) => smarandache_principal_isotope(&context(l, csv)?, f, g)?.0,
        None => principal_isotope(&l, f, g)?,
    };
    if let Some(path) = path {
        catalog::write_table(&record.result, path)
            .with_context(|| format!("{}", path.display()))?;
    }
    if cfg.json {
        let doc = json!({
            "f": f,
            "g": g,
            "identity": record.result.identity(),
            "rows": record.result.rows(),
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    } else {
        out.push_str(&record.to_text());
    }
    Ok(Outcome::Pass)
}

fn selected_pass(r: &CardinalityReport, selected: &[TheoremId]) -> bool {
    selected.iter().all(|&id| r.checks.get(id).passed())
}

fn write_report_text(
    out: &mut String,
    reports: &[CardinalityReport],
    aggregate: Option<&CheckResult>,
    k: usize,
    selected: &[TheoremId],
) -> Result<()> {
    for r in reports {
        writeln!(out, "H = {}", set(&r.subgroup))?;
        writeln!(out, "  {}", cardinalities(r))?;
        for &id in selected {
            check_line(out, id.key(), r.checks.get(id))?;
        }
    }
    if let (Some(t14), true) = (aggregate, selected.contains(&TheoremId::T14)) {
        writeln!(out, "aggregate over {k} S-subgroup(s)")?;
        check_line(out, "t14", t14)?;
    }
    Ok(())
}

fn verify_file(
    cfg: &Config,
    target: &str,
    subgroup: Option<&str>,
    selected: &[TheoremId],
    out: &mut String,
) -> Result<Outcome> {
    let l = load_loop(target)?;
    let (reports, aggregate, k) = match subgroup {
        Some(csv) => {
            let r = verify_context(&context(l, csv)?, cap(cfg))?;
            if cfg.json {
                writeln!(out, "{}", r.to_json())?;
            }
            (vec![r], None, 1)
        }
        None => {
            let report = loop_report(&l, cap(cfg))?;
            if cfg.json {
                writeln!(out, "{}", report.to_json())?;
            }
            (
                report.reports,
                Some(report.aggregate.t14),
                report.aggregate.k,
            )
        }
    };
    let agg_ok = aggregate
        .as_ref()
        .is_none_or(|c| !selected.contains(&TheoremId::T14) || c.passed());
    let ok = agg_ok && reports.iter().all(|r| selected_pass(r, selected));
    if !cfg.json {
        write_report_text(out, &reports, aggregate.as_ref(), k, selected)?;
        writeln!(
            out,
            "{}",
            if ok {
                "all selected checks passed"
            } else {
                "some checks FAILED"
            }
        )?;
    }
    Ok(Outcome::from_pass(ok))
}

enum EntryResult {
    Report(LoopReport),
    /// The loop has no S-subgroup.
    Skipped,
}

fn verify_catalog(
    cfg: &Config,
    dir: &Path,
    selected: &[TheoremId],
    out: &mut String,
) -> Result<Outcome> {
    let entries = read_catalog(dir).with_context(|| format!("{}", dir.display()))?;
    let cap = cap(cfg);
    // Verification runs in parallel; writing and printing stay in index order.
    let results: Vec<Result<EntryResult>> = entries
        .par_iter()
        .map(|e| match loop_report(&e.table, cap) {
            Ok(r) => Ok(EntryResult::Report(r)),
            Err(err) if matches!(err.downcast_ref::<Error>(), Some(Error::NotSLoop)) => {
                Ok(EntryResult::Skipped)
            }
            Err(err) => Err(err),
        })
        .collect();

    let (mut passed, mut failed, mut skipped) = (0, 0, 0);
    let mut docs = Vec::new();
    for (entry, result) in entries.iter().zip(results) {
        let id = entry.id_hex();
        match result.with_context(|| format!("entry {id}"))? {
            EntryResult::Skipped => {
                skipped += 1;
                docs.push(json!({ "id": id, "status": "skipped", "report": null }));
                if !cfg.json {
                    writeln!(
                        out,
                        "{id} order {}: skipped, no S-subgroup",
                        entry.table.order()
                    )?;
                }
            }
            EntryResult::Report(report) => {
                let path = report_path(dir, entry);
                fs::write(&path, report.to_json())
                    .with_context(|| format!("{}", path.display()))?;
                let t14_ok = !selected.contains(&TheoremId::T14) || report.aggregate.t14.passed();
                let ok = t14_ok && report.reports.iter().all(|r| selected_pass(r, selected));
                if ok {
                    passed += 1;
                } else {
                    failed += 1;
                }
                if cfg.json {
                    docs.push(json!({ "id": id, "status": if ok { "pass" } else { "fail" }, "report": report }));
                } else {
                    writeln!(
                        out,
                        "{id} order {}: {} ({} S-subgroup(s))",
                        entry.table.order(),
                        if ok { "pass" } else { "FAIL" },
                        report.reports.len()
                    )?;
                    if !ok {
                        let agg = Some(&report.aggregate.t14);
                        let failing: Vec<TheoremId> = selected
                            .iter()
                            .copied()
                            .filter(|&id| {
                                report
                                    .reports
                                    .iter()
                                    .any(|r| r.checks.get(id).status == CheckStatus::Fail)
                                    || (id == TheoremId::T14 && !report.aggregate.t14.passed())
                            })
                            .collect();
                        out.push_str(&entry.table.to_text());
                        write_report_text(out, &report.reports, agg, report.aggregate.k, &failing)?;
                    }
                }
            }
        }
    }
    if cfg.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&docs)?)?;
    } else {
        writeln!(
            out,
            "verified {} entries: {passed} passed, {failed} failed, {skipped} skipped",
            entries.len()
        )?;
    }
    Ok(Outcome::from_pass(failed == 0))
}

fn generate(
    cfg: &Config,
    order: usize,
    opts: GenerateOptions,
    dir: Option<&Path>,
    out: &mut String,
) -> Result<Outcome> {
    if order == catalog::MAX_EXHAUSTIVE_ORDER && !opts.allow_order_six {
        bail!("order 6 yields 9408 tables; pass --allow-order-six to generate them");
    }
    let entries = generate_catalog(order, opts)?;
    if let Some(dir) = dir {
        write_catalog(dir, &entries).with_context(|| format!("{}", dir.display()))?;
    }
    if cfg.json {
        let docs: Vec<_> = entries
            .iter()
            .map(|e| {
                json!({
                    "id": e.id_hex(),
                    "order": e.table.order(),
                    "associative": e.associative,
                    "s_subgroup_count": e.s_subgroup_count,
                    "rows": e.table.rows(),
                })
            })
            .collect();
        writeln!(out, "{}", serde_json::to_string_pretty(&docs)?)?;
        return Ok(Outcome::Pass);
    }
    for e in &entries {
        writeln!(
            out,
            "{}\t{}\t{}\t{}",
            e.id_hex(),
            e.table.order(),
            if e.associative {
                "associative"
            } else {
                "non-associative"
            },
            e.s_subgroup_count
        )?;
    }
    match dir {
        Some(dir) => writeln!(
            out,
            "generated {} loops into {}",
            entries.len(),
            dir.display()
        )?,
        None => writeln!(out, "generated {} loops", entries.len())?,
    }
    Ok(Outcome::Pass)
}

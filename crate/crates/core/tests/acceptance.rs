//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runs without the libtest harness so the lines are always shown.

mod common;

use std::collections::{BTreeSet, HashSet};
use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use common::{perm_vecs, rows_of};
use loopforge_core::catalog::{generate_catalog, read_table, write_table};
use loopforge_core::isotopy::{
    autotopism_group, principal_isotope, smarandache_principal_isotope, PrincipalIsotope,
};
use loopforge_core::sbs::{self, verify_context, verify_theorems, CheckStatus};
use loopforge_core::{
    fixtures, generate_loops, GenerateOptions, LoopTable, SIsoSemantics, SLoopContext, SearchCap,
};

const CAP: SearchCap = SearchCap(6);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: loopforge_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Every normalized loop of order 2 to 5.
fn small_loops() -> &'static [LoopTable] {
    static LOOPS: OnceLock<Vec<LoopTable>> = OnceLock::new();
    LOOPS.get_or_init(|| {
        (2..=5)
            .flat_map(|n| generate_loops(n, GenerateOptions::default()).unwrap())
            .map(|e| e.table)
            .collect()
    })
}

fn small_contexts() -> &'static [SLoopContext] {
    static CTX: OnceLock<Vec<SLoopContext>> = OnceLock::new();
    CTX.get_or_init(|| {
        small_loops()
            .iter()
            .flat_map(|l| SLoopContext::all_for(l).unwrap_or_default())
            .collect()
    })
}

fn describe(ctx: &SLoopContext) -> String {
    format!(
        "H={:?} in\n{}",
        ctx.subgroup().elements(),
        ctx.table().to_text()
    )
}

fn sbs_routes_agree() -> Outcome {
    let start = Instant::now();
    let mut loops = HashSet::new();
    for ctx in small_contexts() {
        let witness = lib(sbs::sbs_group(ctx, CAP))?;
        let onto = lib(sbs::sbs_via_isotopes(ctx, SIsoSemantics::Onto, CAP))?;
        ensure(witness.members() == onto.as_slice(), || {
            format!("witness and isotope routes differ for {}", describe(ctx))
        })?;
        loops.insert(ctx.table().cells().to_vec());
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} loops, {} contexts, {:.2}s",
        loops.len(),
        small_contexts().len(),
        elapsed.as_secs_f64()
    ))
}

fn subgroup_relations() -> Outcome {
    for ctx in small_contexts() {
        let l = ctx.table();
        let n = l.order();
        let bs = perm_vecs(lib(sbs::bs_group(l, CAP))?.members());
        let sbs = perm_vecs(lib(sbs::sbs_group(ctx, CAP))?.members());
        let ssym = perm_vecs(lib(sbs::ssym(ctx, CAP))?.members());
        let aut: BTreeSet<_> = lib(autotopism_group(l, CAP))?
            .iter()
            .map(|a| {
                (
                    common::perm_vec(&a.u),
                    common::perm_vec(&a.v),
                    common::perm_vec(&a.w),
                )
            })
            .collect();
        let omega: BTreeSet<_> = lib(sbs::omega(ctx, CAP))?
            .iter()
            .map(|x| {
                let a = &x.autotopism;
                (
                    common::perm_vec(&a.u),
                    common::perm_vec(&a.v),
                    common::perm_vec(&a.w),
                )
            })
            .collect();
        let here = || describe(ctx);
        ensure(sbs.is_subset(&bs), || format!("SBS ⊄ BS for {}", here()))?;
        ensure(sbs.is_subset(&ssym), || {
            format!("SBS ⊄ SSYM for {}", here())
        })?;
        ensure(
            ssym.iter().all(common::is_permutation) && ssym.iter().all(|p| p.len() == n),
            || format!("SSYM ⊄ SYM for {}", here()),
        )?;
        ensure(omega.is_subset(&aut), || format!("Ω ⊄ AUT for {}", here()))?;
        for (name, set) in [("BS", &bs), ("SBS", &sbs), ("SSYM", &ssym)] {
            ensure(common::is_perm_group(set, n), || {
                format!("{name} is not a group for {}", here())
            })?;
        }
        ensure(common::is_triple_group(&omega, n), || {
            format!("Ω is not a group for {}", here())
        })?;
        ensure(common::is_triple_group(&aut, n), || {
            format!("AUT is not a group for {}", here())
        })?;
    }
    Ok(format!(
        "{} contexts, zero failures",
        small_contexts().len()
    ))
}

fn isotope_sbs_matches(ctx: &SLoopContext) -> Result<usize, String> {
    let base = lib(sbs::sbs_group(ctx, CAP))?;
    let mut checked = 0;
    for &f in ctx.subgroup().elements() {
        for &g in ctx.subgroup().elements() {
            let (_, img) = lib(smarandache_principal_isotope(ctx, f, g))?;
            let other = lib(sbs::sbs_group(&img, CAP))?;
            ensure(other.members() == base.members(), || {
                format!(
                    "SBS changes under the f={f}, g={g} isotope of {}",
                    describe(ctx)
                )
            })?;
            checked += 1;
        }
    }
    Ok(checked)
}

fn isotopy_invariance() -> Outcome {
    let mut pairs = 0;
    for ctx in small_contexts() {
        pairs += isotope_sbs_matches(ctx)?;
    }
    let six = lib(generate_catalog(
        6,
        GenerateOptions {
            require_s_subgroup: true,
            allow_order_six: true,
            ..Default::default()
        },
    ))?;
    let stride = (six.len() / 120).max(1);
    let sample: Vec<_> = six.iter().step_by(stride).collect();
    ensure(sample.len() >= 100, || {
        format!("order-6 sample has only {} entries", sample.len())
    })?;
    let mut six_pairs = 0;
    for entry in &sample {
        for ctx in lib(SLoopContext::all_for(&entry.table))? {
            six_pairs += isotope_sbs_matches(&ctx)?;
        }
    }
    Ok(format!(
        "order ≤ 5: {pairs} (context, f, g) cases; order 6: {} sampled entries, {six_pairs} cases",
        sample.len()
    ))
}

fn cardinality_identities() -> Outcome {
    let mut pair_checks = 0usize;
    for ctx in small_contexts() {
        let omega = lib(sbs::omega(ctx, CAP))?;
        let sbs = lib(sbs::sbs_group(ctx, CAP))?;
        let ker = lib(sbs::ker_phi(ctx, CAP))?;
        let theta = lib(sbs::theta_set(ctx, CAP))?;
        let sa = lib(sbs::sa_group(ctx, CAP))?;
        ensure(omega.len() == sbs.len() * ker.len(), || {
            format!(
                "|Ω|={} but |SBS|·|ker Φ|={}·{} for {}",
                omega.len(),
                sbs.len(),
                ker.len(),
                describe(ctx)
            )
        })?;
        ensure(omega.len() == theta.len() * sa.len(), || {
            format!(
                "|Ω|={} but |Θ|·|SA|={}·{} for {}",
                omega.len(),
                theta.len(),
                sa.len(),
                describe(ctx)
            )
        })?;
        let triples: HashSet<_> = omega.iter().map(|x| &x.autotopism).collect();
        for a in &omega {
            for b in &omega {
                let ab = a.autotopism.then(&b.autotopism);
                ensure(triples.contains(&ab), || {
                    format!("Ω not closed for {}", describe(ctx))
                })?;
                ensure(
                    sbs::phi_project(a).then(&sbs::phi_project(b)) == ab.w,
                    || format!("Φ is not a homomorphism for {}", describe(ctx)),
                )?;
                pair_checks += 1;
            }
        }
    }
    Ok(format!(
        "{} contexts, Φ checked on {pair_checks} pairs",
        small_contexts().len()
    ))
}

fn kernel_pin() -> Outcome {
    for ctx in small_contexts() {
        let ker = lib(sbs::ker_phi(ctx, CAP))?;
        let nucleus = ctx.table().middle_nucleus();
        let cap_h = nucleus
            .elements()
            .iter()
            .filter(|&&g| ctx.subgroup().contains(g))
            .count();
        ensure(ker.len() == cap_h, || {
            format!(
                "|ker Φ|={} but |N_μ∩H|={cap_h} for {}",
                ker.len(),
                describe(ctx)
            )
        })?;
    }

    let z4 = fixtures::cyclic(4);
    let h = [0, 2];
    let ctx = lib(SLoopContext::with_elements(z4.clone(), h.to_vec()))?;
    let r = lib(verify_context(&ctx, CAP))?;
    let got = [r.ker_phi, r.n_mu, r.sbs, r.omega, r.theta, r.sa, r.bs];
    let t = rows_of(&z4);
    let oracle = [
        common::omega(&t, &h)
            .iter()
            .filter(|x| x.2 == vec![0, 1, 2, 3])
            .count(),
        common::middle_nucleus(&t).len(),
        common::sbs(&t, &h).len(),
        common::omega(&t, &h).len(),
        common::theta(&t, &h).len(),
        common::sa(&t, &h).len(),
        common::bs(&t).len(),
    ];
    ensure(got == [2, 4, 4, 8, 4, 2, 8], || {
        format!("Z4 report values {got:?}")
    })?;
    ensure(oracle == got, || {
        format!("Z4 oracle {oracle:?} vs report {got:?}")
    })?;
    ensure(r.checks.t18.status == CheckStatus::Pass, || {
        r.checks.t18.detail.clone()
    })?;
    ensure(!r.full_nucleus_kernel_reading_holds(), || {
        "literal reading unexpectedly holds".into()
    })?;
    ensure(
        r.checks
            .t18
            .detail
            .contains("literal |N_μ|=4 reading fails"),
        || {
            format!(
                "report does not flag the literal reading: {}",
                r.checks.t18.detail
            )
        },
    )?;
    Ok(format!(
        "{} contexts; Z4 H={{0,2}}: |ker Φ|=2 |N_μ|=4 |SBS|=4 |Ω|=8 |Θ|=4 |SA|=2 |BS|=8, literal |N_μ| reading flagged",
        small_contexts().len()
    ))
}

fn aggregate_formula() -> Outcome {
    let mut tested = 0;
    for l in small_loops() {
        if l.s_subgroups().is_empty() {
            continue;
        }
        let report = lib(verify_theorems(l, CAP))?;
        let agg = &report.aggregate;
        ensure(agg.t14.status == CheckStatus::Pass, || {
            format!("{}\n{}", agg.t14.detail, l.to_text())
        })?;
        let bs = common::bs(&rows_of(l)).len();
        let mut total = 0;
        for (h, r) in report.subgroups.iter().zip(&report.reports) {
            ensure(r.checks.t14.status == CheckStatus::Pass, || {
                r.checks.t14.detail.clone()
            })?;
            let sbs = common::sbs(&rows_of(l), h).len();
            ensure(bs.is_multiple_of(sbs), || {
                format!("|SBS|={sbs} does not divide |BS|={bs}")
            })?;
            total += sbs * (bs / sbs);
        }
        ensure(total == report.subgroups.len() * bs, || {
            format!("Σ|SBS_i|·[BS:SBS_i]={total} ≠ k·|BS| for\n{}", l.to_text())
        })?;
        tested += 1;
    }
    Ok(format!("{tested} loops with at least one S-subgroup"))
}

fn generator_counts() -> Outcome {
    let mut parts = Vec::new();
    for (n, expected) in [(4, 4), (5, 56)] {
        let count = lib(generate_loops(n, GenerateOptions::default()))?.count();
        let recount = common::recount_reduced_squares(n);
        ensure(count == expected && recount == expected, || {
            format!("order {n}: generated {count}, recount {recount}, expected {expected}")
        })?;
        parts.push(format!("n={n}: {count}"));
    }
    ensure(
        generate_loops(6, GenerateOptions::default()).is_err(),
        || "order 6 generated without the flag".into(),
    )?;
    let start = Instant::now();
    let six = GenerateOptions {
        allow_order_six: true,
        ..Default::default()
    };
    let count = lib(generate_loops(6, six))?.count();
    let elapsed = start.elapsed();
    let parallel = lib(generate_catalog(6, six))?.len();
    let recount = common::recount_reduced_squares(6);
    ensure(count == 9408 && parallel == 9408 && recount == 9408, || {
        format!("order 6: generated {count} (parallel {parallel}), recount {recount}")
    })?;
    ensure(elapsed < Duration::from_secs(600), || {
        format!("order 6 took {elapsed:?}")
    })?;
    parts.push(format!("n=6: {count} in {:.2}s", elapsed.as_secs_f64()));
    Ok(parts.join(", "))
}

fn round_trips() -> Outcome {
    let mut pairs = 0;
    for ctx in small_contexts() {
        let l = ctx.table();
        for &f in ctx.subgroup().elements() {
            for &g in ctx.subgroup().elements() {
                let iso = lib(principal_isotope(l, f, g))?;
                let back = lib(principal_isotope(&iso.result, g, f))?;
                ensure(back.result.cells() == l.cells(), || {
                    format!(
                        "g,f-reconstruction differs for f={f}, g={g} on {}",
                        describe(ctx)
                    )
                })?;
                let record = iso.to_text();
                let parsed = lib(PrincipalIsotope::parse_text(&record))?;
                ensure(parsed == iso && parsed.to_text() == record, || {
                    "isotope record round trip".into()
                })?;
                pairs += 1;
            }
        }
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for (i, l) in small_loops().iter().enumerate() {
        let a = dir.path().join(format!("{i}.loop"));
        let b = dir.path().join(format!("{i}.copy.loop"));
        lib(write_table(l, &a))?;
        let back = lib(read_table(&a))?;
        lib(write_table(&back, &b))?;
        let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
        ensure(back == *l && x == y, || {
            format!("file round trip differs for\n{}", l.to_text())
        })?;
    }
    Ok(format!(
        "{pairs} reconstructions bit-exact, {} files byte-identical",
        small_loops().len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "SBS by witnesses equals SBS by S-isomorphisms onto isotopes",
            sbs_routes_agree,
        ),
        (
            "subgroup relations SBS ≤ BS, SBS ≤ SSYM ≤ SYM, Ω ≤ AUT",
            subgroup_relations,
        ),
        (
            "SBS invariant under Smarandache principal isotopes",
            isotopy_invariance,
        ),
        (
            "|Ω| = |SBS|·|ker Φ| = |Θ|·|SA|, Φ a homomorphism",
            cardinality_identities,
        ),
        ("|ker Φ| = |N_μ ∩ H| and the Z4 pins", kernel_pin),
        ("averaged Lagrange formula for BS", aggregate_formula),
        ("generator counts 4 / 56 / 9408", generator_counts),
        ("isotope reconstruction and file round trips", round_trips),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS [{secs:.2}s] {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL [{secs:.2}s] {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Special maps and the Bryant-Schneider group, together with their
//! Smarandache counterparts relative to an S-subgroup `H`.
//!
//! A map `θ` is special when `(θR_g⁻¹, θL_f⁻¹, θ)` is an autotopism for
//! some `f, g`. Restricting `f, g` to `H` and `θ` to maps that stabilize
//! `H` gives the S-special maps, which form the group `SBS`.

mod verify;

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::check_group;
use crate::isotopy::{
    automorphism_group, autotopism_group, is_s_isomorphic, s_isomorphisms,
    smarandache_principal_isotope, Autotopism, SIsoSemantics,
};
use crate::loops::{LoopTable, SLoopContext, SubgroupSet};
use crate::perm::Perm;
use crate::search::{self, SearchCap, SetConstraint};

pub use verify::{
    verify_context, verify_theorems, AggregateReport, CardinalityReport, CheckResult, CheckStatus,
    Checks, LoopReport, TheoremId,
};

/// `(f, g)` certifying `θ` as a special map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpecialMapWitness {
    pub theta: Perm,
    pub f: usize,
    pub g: usize,
}

impl SpecialMapWitness {
    /// The triple `(θR_g⁻¹, θL_f⁻¹, θ)` on `l`.
    pub fn triple(&self, l: &LoopTable) -> Autotopism {
        let n = l.order();
        let u = (0..n).map(|x| l.rdiv(self.theta.apply(x), self.g));
        let v = (0..n).map(|y| l.ldiv(self.f, self.theta.apply(y)));
        Autotopism {
            u: Perm::from_images(u).expect("right division is a bijection"),
            v: Perm::from_images(v).expect("left division is a bijection"),
            w: self.theta.clone(),
        }
    }
}

/// Fast form of `witness.triple(l).is_autotopism_of(l)`.
#[inline]
fn is_witness(l: &LoopTable, theta: &Perm, f: usize, g: usize) -> bool {
    let n = l.order();
    (0..n).all(|x| {
        let ux = l.rdiv(theta.apply(x), g);
        (0..n).all(|y| l.mul(ux, l.ldiv(f, theta.apply(y))) == theta.apply(l.mul(x, y)))
    })
}

/// An element of `Ω`: an autotopism `(θR_g⁻¹, θL_f⁻¹, θ)` with `f, g ∈ H`
/// and `θ` stabilizing `H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaElement {
    pub autotopism: Autotopism,
    pub witness: SpecialMapWitness,
}

/// Which group a [`GroupOfPerms`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupLabel {
    Sym,
    Ssym,
    Aum,
    Sa,
    Bs,
    Sbs,
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupLabel::Sym => "SYM",
            GroupLabel::Ssym => "SSYM",
            GroupLabel::Aum => "AUM",
            GroupLabel::Sa => "SA",
            GroupLabel::Bs => "BS",
            GroupLabel::Sbs => "SBS",
        })
    }
}

/// A verified permutation group, members in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupOfPerms {
    label: GroupLabel,
    members: Vec<Perm>,
}

impl GroupOfPerms {
    /// Sorts, dedups and checks the group axioms.
    pub fn new(label: GroupLabel, mut members: Vec<Perm>) -> Result<GroupOfPerms> {
        members.sort();
        members.dedup();
        check_group(&members).map_err(|v| Error::NotAGroup(format!("{label}: {v}")))?;
        Ok(GroupOfPerms { label, members })
    }

    pub fn label(&self) -> GroupLabel {
        self.label
    }

    pub fn members(&self) -> &[Perm] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.members.binary_search(p).is_ok()
    }

    /// Membership of every element; both sides are already groups.
    pub fn is_subgroup_of(&self, other: &GroupOfPerms) -> bool {
        self.members.iter().all(|p| other.contains(p))
    }
}

/// Every permutation that maps `H` onto itself, sorted.
pub(crate) fn ssym_members(n: usize, h: &SubgroupSet) -> Vec<Perm> {
    let inside: Vec<usize> = h.elements().to_vec();
    let outside: Vec<usize> = (0..n).filter(|&x| !h.contains(x)).collect();
    let mut out = Vec::new();
    for hp in inside.iter().copied().permutations(inside.len()) {
        for op in outside.iter().copied().permutations(outside.len()) {
            let mut images = vec![0u8; n];
            for (&src, &dst) in inside.iter().zip(&hp) {
                images[src] = dst as u8;
            }
            for (&src, &dst) in outside.iter().zip(&op) {
                images[src] = dst as u8;
            }
            out.push(Perm::from_bytes_unchecked(images));
        }
    }
    out.sort();
    out
}

/// `SSYM`: permutations `θ` with `hθ ∈ H` for all `h ∈ H`.
pub fn ssym(ctx: &SLoopContext, cap: SearchCap) -> Result<GroupOfPerms> {
    cap.check(ctx.order())?;
    GroupOfPerms::new(GroupLabel::Ssym, ssym_members(ctx.order(), ctx.subgroup()))
}

/// All `(f, g)` making `θ` special, scanned lexicographically; with
/// `restrict_to`, only pairs from `H × H`.
pub fn special_witnesses(
    l: &LoopTable,
    theta: &Perm,
    restrict_to: Option<&SubgroupSet>,
) -> Result<Vec<SpecialMapWitness>> {
    if theta.degree() != l.order() {
        return Err(Error::DegreeMismatch {
            left: theta.degree(),
            right: l.order(),
        });
    }
    let pool: Vec<usize> = match restrict_to {
        Some(h) => h.elements().to_vec(),
        None => (0..l.order()).collect(),
    };
    Ok(pool
        .iter()
        .flat_map(|&f| pool.iter().map(move |&g| (f, g)))
        .filter(|&(f, g)| is_witness(l, theta, f, g))
        .map(|(f, g)| SpecialMapWitness {
            theta: theta.clone(),
            f,
            g,
        })
        .collect())
}

/// `BS`: the third components of all autotopisms. Every autotopism
/// `(U, V, W)` equals `(WR_g⁻¹, WL_f⁻¹, W)` with `f = eU`, `g = eV`.
pub fn bs_group(l: &LoopTable, cap: SearchCap) -> Result<GroupOfPerms> {
    let aut = autotopism_group(l, cap)?;
    GroupOfPerms::new(GroupLabel::Bs, bs_from_autotopisms(&aut))
}

pub(crate) fn bs_from_autotopisms(aut: &[Autotopism]) -> Vec<Perm> {
    let set: BTreeSet<&Perm> = aut.iter().map(|t| &t.w).collect();
    set.into_iter().cloned().collect()
}

/// Members of `SSYM` that admit an `H`-witness, each with its first witness
/// in lexicographic `(f, g)` order.
pub fn sbs_witnesses(ctx: &SLoopContext, cap: SearchCap) -> Result<Vec<SpecialMapWitness>> {
    cap.check(ctx.order())?;
    let l = ctx.table();
    let h = ctx.subgroup().elements();
    let pairs: Vec<(usize, usize)> = h
        .iter()
        .flat_map(|&f| h.iter().map(move |&g| (f, g)))
        .collect();
    let candidates = ssym_members(ctx.order(), ctx.subgroup());
    Ok(candidates
        .into_par_iter()
        .filter_map(|theta| {
            let &(f, g) = pairs.iter().find(|&&(f, g)| is_witness(l, &theta, f, g))?;
            Some(SpecialMapWitness { theta, f, g })
        })
        .collect())
}

/// `SBS` by witness search over `SSYM`.
pub fn sbs_group(ctx: &SLoopContext, cap: SearchCap) -> Result<GroupOfPerms> {
    let members = sbs_witnesses(ctx, cap)?
        .into_iter()
        .map(|w| w.theta)
        .collect();
    GroupOfPerms::new(GroupLabel::Sbs, members)
}

/// `SBS` computed the other way round: the union, over `f, g ∈ H`, of the
/// S-isomorphisms from the loop onto its Smarandache `f,g`-principal
/// isotope.
pub fn sbs_via_isotopes(
    ctx: &SLoopContext,
    semantics: SIsoSemantics,
    cap: SearchCap,
) -> Result<Vec<Perm>> {
    cap.check(ctx.order())?;
    let h = ctx.subgroup().elements();
    let pairs: Vec<(usize, usize)> = h
        .iter()
        .flat_map(|&f| h.iter().map(move |&g| (f, g)))
        .collect();
    let parts = pairs
        .par_iter()
        .map(|&(f, g)| {
            let (_, image) = smarandache_principal_isotope(ctx, f, g)?;
            s_isomorphisms(ctx, &image, semantics, cap)
        })
        .collect::<Result<Vec<_>>>()?;
    let set: BTreeSet<Perm> = parts.into_iter().flatten().collect();
    Ok(set.into_iter().collect())
}

/// `AUM` as a verified group.
pub fn aum_group(l: &LoopTable, cap: SearchCap) -> Result<GroupOfPerms> {
    GroupOfPerms::new(GroupLabel::Aum, automorphism_group(l, cap)?)
}

/// `SA = SSYM ∩ AUM`.
pub fn sa_group(ctx: &SLoopContext, cap: SearchCap) -> Result<GroupOfPerms> {
    let aum = automorphism_group(ctx.table(), cap)?;
    GroupOfPerms::new(GroupLabel::Sa, sa_from_aum(ctx, &aum))
}

pub(crate) fn sa_from_aum(ctx: &SLoopContext, aum: &[Perm]) -> Vec<Perm> {
    aum.iter()
        .filter(|p| p.stabilizes(ctx.subgroup().elements()))
        .cloned()
        .collect()
}

/// `Ω`, sorted by triple. Found by an autotopism search seeded with
/// `eU, eV ∈ H` and `U` stabilizing `H`; since `W = U R_{eV}` and
/// `eV ∈ H`, that is the same as `W` stabilizing `H`.
pub fn omega(ctx: &SLoopContext, cap: SearchCap) -> Result<Vec<OmegaElement>> {
    cap.check(ctx.order())?;
    let l = ctx.table();
    let h = ctx.subgroup();
    let seeds: Vec<(usize, usize)> = h
        .elements()
        .iter()
        .flat_map(|&b| h.elements().iter().map(move |&a| (b, a)))
        .collect();
    let constraint = SetConstraint {
        domain: h.mask(),
        target: h.mask(),
        exact: true,
    };
    let e = l.identity();
    let mut out: Vec<OmegaElement> = search::autotopisms(l, &seeds, Some(constraint))
        .into_iter()
        .map(|(u, v, w)| {
            let witness = SpecialMapWitness {
                theta: w.clone(),
                f: u.apply(e),
                g: v.apply(e),
            };
            let autotopism = Autotopism { u, v, w };
            debug_assert_eq!(witness.triple(l), autotopism);
            OmegaElement {
                autotopism,
                witness,
            }
        })
        .collect();
    // Ω is a set of triples.
    out.sort();
    out.dedup_by(|a, b| a.autotopism == b.autotopism);
    Ok(out)
}

/// `Φ : Ω -> SBS`, the third component.
pub fn phi_project(x: &OmegaElement) -> Perm {
    x.autotopism.w.clone()
}

/// `ker Φ`: the elements of `Ω` with `θ = I`.
pub fn ker_phi(ctx: &SLoopContext, cap: SearchCap) -> Result<Vec<OmegaElement>> {
    Ok(kernel_of(&omega(ctx, cap)?))
}

pub(crate) fn kernel_of(omega: &[OmegaElement]) -> Vec<OmegaElement> {
    omega
        .iter()
        .filter(|x| x.autotopism.w.is_identity())
        .cloned()
        .collect()
}

/// `Θ`: pairs `(f, g) ∈ H × H` whose Smarandache `f,g`-principal isotope is
/// S-isomorphic to the loop, sorted.
pub fn theta_set(ctx: &SLoopContext, cap: SearchCap) -> Result<Vec<(usize, usize)>> {
    cap.check(ctx.order())?;
    let h = ctx.subgroup().elements();
    let pairs: Vec<(usize, usize)> = h
        .iter()
        .flat_map(|&f| h.iter().map(move |&g| (f, g)))
        .collect();
    let keep = pairs
        .par_iter()
        .map(|&(f, g)| {
            let (_, image) = smarandache_principal_isotope(ctx, f, g)?;
            is_s_isomorphic(&image, ctx, SIsoSemantics::Into, cap)
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(pairs
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(p, _)| p)
        .collect())
}

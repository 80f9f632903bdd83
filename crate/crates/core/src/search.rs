//! Backtracking searches for autotopisms and isomorphisms.
//!
//! Both searches assign a map one point at a time. Every new assignment is
//! pushed through the defining law against all points already assigned,
//! which fixes the image of each product for free. Branching therefore only
//! happens on points outside the closure of the assigned ones, so a loop
//! with `k` generators costs roughly `n^k` leaves instead of `n!`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::loops::LoopTable;
use crate::perm::Perm;

/// Largest order accepted by the exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchCap(pub usize);

impl Default for SearchCap {
    fn default() -> Self {
        SearchCap(10)
    }
}

impl SearchCap {
    pub fn check(self, order: usize) -> Result<()> {
        if order > self.0 {
            Err(Error::SearchCapExceeded { order, cap: self.0 })
        } else {
            Ok(())
        }
    }
}

const UNSET: u16 = u16::MAX;

/// Partial map with an inverse table for injectivity checks.
#[derive(Clone)]
struct PartialMap {
    fwd: Vec<u16>,
    bwd: Vec<u16>,
    order: Vec<usize>,
}

impl PartialMap {
    fn new(n: usize) -> Self {
        PartialMap {
            fwd: vec![UNSET; n],
            bwd: vec![UNSET; n],
            order: Vec::with_capacity(n),
        }
    }

    #[inline]
    fn get(&self, x: usize) -> Option<usize> {
        let v = self.fwd[x];
        (v != UNSET).then_some(v as usize)
    }

    /// Assigns `x -> y`. Returns `Some(true)` if new, `Some(false)` if
    /// already so assigned, `None` on conflict.
    #[inline]
    fn assign(&mut self, x: usize, y: usize) -> Option<bool> {
        match self.get(x) {
            Some(cur) => (cur == y).then_some(false),
            None => {
                if self.bwd[y] != UNSET {
                    return None;
                }
                self.fwd[x] = y as u16;
                self.bwd[y] = x as u16;
                self.order.push(x);
                Some(true)
            }
        }
    }

    fn first_unassigned(&self) -> Option<usize> {
        self.fwd.iter().position(|&v| v == UNSET)
    }

    fn is_free_image(&self, y: usize) -> bool {
        self.bwd[y] == UNSET
    }

    fn to_perm(&self) -> Perm {
        Perm::from_bytes_unchecked(self.fwd.iter().map(|&v| v as u8).collect())
    }
}

/// Optional setwise constraint: points in `domain` must land in `target`.
/// With `exact`, points outside `domain` must also land outside `target`.
#[derive(Clone, Copy)]
pub(crate) struct SetConstraint<'a> {
    pub domain: &'a [bool],
    pub target: &'a [bool],
    pub exact: bool,
}

impl SetConstraint<'_> {
    #[inline]
    fn allows(&self, x: usize, y: usize) -> bool {
        if self.domain[x] {
            self.target[y]
        } else {
            !self.exact || !self.target[y]
        }
    }
}

// ---------------------------------------------------------------------------
// Autotopisms
// ---------------------------------------------------------------------------

/// Raw autotopism triple found by the search, `(U, V, W)`.
pub(crate) type Triple = (Perm, Perm, Perm);

/// Search state for autotopisms `(U, V, W)` of one loop with `eU = b` and
/// `eV = a` fixed. From `x = e` and `y = e` in `xU·yV = (x·y)W` we get
/// `xW = xU·a` and `yV = b \ yW`, so `U` alone carries the state.
struct TopismSearch<'a> {
    l: &'a LoopTable,
    a: usize,
    b: usize,
    constraint: Option<SetConstraint<'a>>,
    out: Vec<Triple>,
    limit: Option<usize>,
}

impl TopismSearch<'_> {
    #[inline]
    fn w_of(&self, ux: usize) -> usize {
        self.l.mul(ux, self.a)
    }

    #[inline]
    fn v_of(&self, uy: usize) -> usize {
        self.l.ldiv(self.b, self.w_of(uy))
    }

    /// Assigns `x -> ux` and propagates through the law. `false` on conflict.
    fn push(&self, u: &mut PartialMap, x: usize, ux: usize) -> bool {
        let mut queue = vec![(x, ux)];
        while let Some((x, ux)) = queue.pop() {
            if let Some(c) = &self.constraint {
                if !c.allows(x, ux) {
                    return false;
                }
            }
            match u.assign(x, ux) {
                None => return false,
                Some(false) => continue,
                Some(true) => {}
            }
            let vx = self.v_of(ux);
            // (x·y)U = (xU·yV)/a and (y·x)U = (yU·xV)/a for assigned y.
            let snapshot = u.order.len();
            for i in 0..snapshot {
                let y = u.order[i];
                let uy = u.fwd[y] as usize;
                let vy = self.v_of(uy);
                let xy = self.l.mul(x, y);
                queue.push((xy, self.l.rdiv(self.l.mul(ux, vy), self.a)));
                let yx = self.l.mul(y, x);
                queue.push((yx, self.l.rdiv(self.l.mul(uy, vx), self.a)));
            }
        }
        true
    }

    fn done(&self) -> bool {
        self.limit.is_some_and(|k| self.out.len() >= k)
    }

    fn run(&mut self, u: PartialMap) {
        if self.done() {
            return;
        }
        let Some(x) = u.first_unassigned() else {
            let u_perm = u.to_perm();
            let n = self.l.order();
            let v_perm = Perm::from_bytes_unchecked(
                (0..n).map(|y| self.v_of(u_perm.apply(y)) as u8).collect(),
            );
            let w_perm = Perm::from_bytes_unchecked(
                (0..n).map(|y| self.w_of(u_perm.apply(y)) as u8).collect(),
            );
            debug_assert!(crate::isotopy::satisfies_autotopism_law(
                self.l, &u_perm, &v_perm, &w_perm
            ));
            self.out.push((u_perm, v_perm, w_perm));
            return;
        };
        for y in 0..self.l.order() {
            if !u.is_free_image(y) {
                continue;
            }
            let mut next = u.clone();
            if self.push(&mut next, x, y) {
                self.run(next);
                if self.done() {
                    return;
                }
            }
        }
    }
}

/// All autotopisms whose `(eU, eV)` pair is in `seeds`, optionally with
/// `U` respecting a setwise constraint. Sorted by `(U, V, W)`.
pub(crate) fn autotopisms(
    l: &LoopTable,
    seeds: &[(usize, usize)],
    constraint: Option<SetConstraint<'_>>,
) -> Vec<Triple> {
    let e = l.identity();
    let mut out: Vec<Triple> = seeds
        .par_iter()
        .flat_map_iter(|&(b, a)| {
            let mut search = TopismSearch {
                l,
                a,
                b,
                constraint,
                out: Vec::new(),
                limit: None,
            };
            let mut u = PartialMap::new(l.order());
            if search.push(&mut u, e, b) {
                search.run(u);
            }
            search.out
        })
        .collect();
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Isomorphisms
// ---------------------------------------------------------------------------

struct IsoSearch<'a> {
    src: &'a LoopTable,
    dst: &'a LoopTable,
    constraint: Option<SetConstraint<'a>>,
    out: Vec<Perm>,
    limit: Option<usize>,
}

impl IsoSearch<'_> {
    fn push(&self, a: &mut PartialMap, x: usize, ax: usize) -> bool {
        let mut queue = vec![(x, ax)];
        while let Some((x, ax)) = queue.pop() {
            if let Some(c) = &self.constraint {
                if !c.allows(x, ax) {
                    return false;
                }
            }
            match a.assign(x, ax) {
                None => return false,
                Some(false) => continue,
                Some(true) => {}
            }
            let snapshot = a.order.len();
            for i in 0..snapshot {
                let y = a.order[i];
                let ay = a.fwd[y] as usize;
                queue.push((self.src.mul(x, y), self.dst.mul(ax, ay)));
                queue.push((self.src.mul(y, x), self.dst.mul(ay, ax)));
            }
        }
        true
    }

    fn done(&self) -> bool {
        self.limit.is_some_and(|k| self.out.len() >= k)
    }

    fn run(&mut self, a: PartialMap) {
        if self.done() {
            return;
        }
        let Some(x) = a.first_unassigned() else {
            self.out.push(a.to_perm());
            return;
        };
        for y in 0..self.dst.order() {
            if !a.is_free_image(y) {
                continue;
            }
            let mut next = a.clone();
            if self.push(&mut next, x, y) {
                self.run(next);
                if self.done() {
                    return;
                }
            }
        }
    }
}

/// Isomorphisms `A` with `(x·y)A = xA ∘ yA`, sorted. Stops after `limit`
/// results when given. Orders must match.
pub(crate) fn isomorphisms(
    src: &LoopTable,
    dst: &LoopTable,
    constraint: Option<SetConstraint<'_>>,
    limit: Option<usize>,
) -> Vec<Perm> {
    debug_assert_eq!(src.order(), dst.order());
    let mut search = IsoSearch {
        src,
        dst,
        constraint,
        out: Vec::new(),
        limit,
    };
    let mut a = PartialMap::new(src.order());
    if search.push(&mut a, src.identity(), dst.identity()) {
        search.run(a);
    }
    search.out.sort();
    search.out
}

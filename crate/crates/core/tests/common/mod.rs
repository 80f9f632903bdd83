//! Brute-force oracles. Everything here works from plain `Vec<Vec<usize>>`
//! tables and scans all permutations, sharing no code with the library's
//! search or division tables.

#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use loopforge_core::{LoopTable, Perm};

pub type Rows = Vec<Vec<usize>>;
/// Right-acting permutation as an image vector.
pub type P = Vec<usize>;

pub fn rows_of(l: &LoopTable) -> Rows {
    l.rows()
}

pub fn perm_vec(p: &Perm) -> P {
    p.images().collect()
}

pub fn perm_vecs(ps: &[Perm]) -> BTreeSet<P> {
    ps.iter().map(perm_vec).collect()
}

pub fn identity_of(t: &Rows) -> usize {
    let n = t.len();
    (0..n)
        .find(|&e| (0..n).all(|x| t[e][x] == x && t[x][e] == x))
        .expect("loop has an identity")
}

/// `a \ b`: the `x` with `a·x = b`.
pub fn ldiv(t: &Rows, a: usize, b: usize) -> usize {
    (0..t.len()).find(|&x| t[a][x] == b).unwrap()
}

/// `b / a`: the `x` with `x·a = b`.
pub fn rdiv(t: &Rows, b: usize, a: usize) -> usize {
    (0..t.len()).find(|&x| t[x][a] == b).unwrap()
}

pub fn all_perms(n: usize) -> Vec<P> {
    (0..n).permutations(n).collect()
}

/// `p` then `q`.
pub fn then(p: &P, q: &P) -> P {
    p.iter().map(|&x| q[x]).collect()
}

pub fn inverse(p: &P) -> P {
    let mut inv = vec![0; p.len()];
    for (x, &y) in p.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

pub fn is_autotopism(t: &Rows, u: &P, v: &P, w: &P) -> bool {
    let n = t.len();
    (0..n).all(|x| (0..n).all(|y| t[u[x]][v[y]] == w[t[x][y]]))
}

pub fn stabilizes(p: &P, h: &[usize]) -> bool {
    h.iter().all(|&x| h.contains(&p[x]))
}

/// Every autotopism: for each `(U, V)`, `W` is forced by `y = e·y`.
pub fn autotopisms(t: &Rows) -> BTreeSet<(P, P, P)> {
    let n = t.len();
    let e = identity_of(t);
    let perms = all_perms(n);
    let mut out = BTreeSet::new();
    for u in &perms {
        for v in &perms {
            let w: P = (0..n).map(|y| t[u[e]][v[y]]).collect();
            if is_permutation(&w) && is_autotopism(t, u, v, &w) {
                out.insert((u.clone(), v.clone(), w));
            }
        }
    }
    out
}

pub fn is_permutation(p: &P) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&x| x < p.len() && !std::mem::replace(&mut seen[x], true))
}

pub fn isomorphisms(a: &Rows, b: &Rows) -> BTreeSet<P> {
    let n = a.len();
    all_perms(n)
        .into_iter()
        .filter(|p| (0..n).all(|x| (0..n).all(|y| b[p[x]][p[y]] == p[a[x][y]])))
        .collect()
}

/// `(θR_g⁻¹, θL_f⁻¹, θ)`.
pub fn special_triple(t: &Rows, theta: &P, f: usize, g: usize) -> (P, P, P) {
    let n = t.len();
    let u = (0..n).map(|x| rdiv(t, theta[x], g)).collect();
    let v = (0..n).map(|y| ldiv(t, f, theta[y])).collect();
    (u, v, theta.clone())
}

fn is_special(t: &Rows, theta: &P, fs: &[usize], gs: &[usize]) -> bool {
    fs.iter().any(|&f| {
        gs.iter().any(|&g| {
            let (u, v, w) = special_triple(t, theta, f, g);
            is_autotopism(t, &u, &v, &w)
        })
    })
}

pub fn bs(t: &Rows) -> BTreeSet<P> {
    let all: Vec<usize> = (0..t.len()).collect();
    all_perms(t.len())
        .into_iter()
        .filter(|p| is_special(t, p, &all, &all))
        .collect()
}

pub fn ssym(n: usize, h: &[usize]) -> BTreeSet<P> {
    all_perms(n)
        .into_iter()
        .filter(|p| stabilizes(p, h))
        .collect()
}

pub fn sbs(t: &Rows, h: &[usize]) -> BTreeSet<P> {
    ssym(t.len(), h)
        .into_iter()
        .filter(|p| is_special(t, p, h, h))
        .collect()
}

pub fn omega(t: &Rows, h: &[usize]) -> BTreeSet<(P, P, P)> {
    let mut out = BTreeSet::new();
    for theta in ssym(t.len(), h) {
        for &f in h {
            for &g in h {
                let (u, v, w) = special_triple(t, &theta, f, g);
                if is_autotopism(t, &u, &v, &w) {
                    out.insert((u, v, w));
                }
            }
        }
    }
    out
}

/// Labels `(f, g)` occurring in Ω.
pub fn omega_labels(t: &Rows, h: &[usize]) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for theta in ssym(t.len(), h) {
        for &f in h {
            for &g in h {
                let (u, v, w) = special_triple(t, &theta, f, g);
                if is_autotopism(t, &u, &v, &w) {
                    out.insert((f, g));
                }
            }
        }
    }
    out
}

pub fn sa(t: &Rows, h: &[usize]) -> BTreeSet<P> {
    isomorphisms(t, t)
        .into_iter()
        .filter(|p| stabilizes(p, h))
        .collect()
}

/// `x∘y = (x/g)·(f\y)`.
pub fn isotope(t: &Rows, f: usize, g: usize) -> Rows {
    let n = t.len();
    (0..n)
        .map(|x| (0..n).map(|y| t[rdiv(t, x, g)][ldiv(t, f, y)]).collect())
        .collect()
}

/// Pairs `(f, g)` whose isotope maps isomorphically into the loop with `H`
/// carried into `H`.
pub fn theta(t: &Rows, h: &[usize]) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for &f in h {
        for &g in h {
            let iso = isotope(t, f, g);
            if isomorphisms(&iso, t)
                .iter()
                .any(|p| h.iter().all(|x| h.contains(&p[*x])))
            {
                out.insert((f, g));
            }
        }
    }
    out
}

pub fn middle_nucleus(t: &Rows) -> Vec<usize> {
    let n = t.len();
    (0..n)
        .filter(|&g| (0..n).all(|x| (0..n).all(|y| t[t[x][g]][y] == t[x][t[g][y]])))
        .collect()
}

/// Subsets containing the identity that are closed and associative.
pub fn subgroups(t: &Rows) -> Vec<Vec<usize>> {
    let n = t.len();
    let e = identity_of(t);
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask & (1 << e) == 0 {
            continue;
        }
        let s: Vec<usize> = (0..n).filter(|x| mask & (1 << x) != 0).collect();
        let closed = s
            .iter()
            .all(|&x| s.iter().all(|&y| mask & (1 << t[x][y]) != 0));
        let assoc = s.iter().all(|&x| {
            s.iter()
                .all(|&y| s.iter().all(|&z| t[t[x][y]][z] == t[x][t[y][z]]))
        });
        if closed && assoc {
            out.push(s);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

pub fn s_subgroups(t: &Rows) -> Vec<Vec<usize>> {
    subgroups(t)
        .into_iter()
        .filter(|s| s.len() >= 2 && s.len() < t.len())
        .collect()
}

/// Identity, inverses and closure checked on every pair.
pub fn is_group<T: Ord + Clone>(members: &BTreeSet<T>, op: impl Fn(&T, &T) -> T, id: &T) -> bool {
    if !members.contains(id) {
        return false;
    }
    members
        .iter()
        .all(|a| members.iter().any(|b| op(a, b) == *id))
        && members
            .iter()
            .all(|a| members.iter().all(|b| members.contains(&op(a, b))))
}

pub fn is_perm_group(members: &BTreeSet<P>, n: usize) -> bool {
    let id: P = (0..n).collect();
    is_group(members, then, &id)
}

pub fn is_triple_group(members: &BTreeSet<(P, P, P)>, n: usize) -> bool {
    let id: P = (0..n).collect();
    is_group(
        members,
        |a, b| (then(&a.0, &b.0), then(&a.1, &b.1), then(&a.2, &b.2)),
        &(id.clone(), id.clone(), id),
    )
}

/// Reduced Latin squares counted by filling column by column, bottom-up
/// within each column, with a recursive search.
pub fn recount_reduced_squares(n: usize) -> usize {
    fn go(n: usize, grid: &mut Vec<Vec<usize>>, cells: &[(usize, usize)], k: usize) -> usize {
        if k == cells.len() {
            return 1;
        }
        let (r, c) = cells[k];
        let mut total = 0;
        for v in (0..n).rev() {
            if (0..n).any(|j| grid[r][j] == v) || (0..n).any(|i| grid[i][c] == v) {
                continue;
            }
            grid[r][c] = v;
            total += go(n, grid, cells, k + 1);
            grid[r][c] = usize::MAX;
        }
        total
    }
    let mut grid = vec![vec![usize::MAX; n]; n];
    for (i, row) in grid.iter_mut().enumerate() {
        row[0] = i;
    }
    grid[0] = (0..n).collect();
    let cells: Vec<(usize, usize)> = (1..n)
        .flat_map(|c| (1..n).rev().map(move |r| (r, c)))
        .collect();
    go(n, &mut grid, &cells, 0)
}

//! Principal isotopes and the autotopism, automorphism and isomorphism
//! searches built on them.

use std::fmt;

use crate::error::{Error, Result};
use crate::loops::{
    check_group_axioms, numbered_lines, parse_table_lines, LoopTable, SLoopContext,
};
use crate::perm::Perm;
use crate::search::{self, SearchCap, SetConstraint};

/// An autotopism `(U, V, W)`: `xU·yV = (x·y)W` for all `x, y`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Autotopism {
    pub u: Perm,
    pub v: Perm,
    pub w: Perm,
}

impl Autotopism {
    pub fn identity(n: usize) -> Autotopism {
        let i = Perm::identity(n);
        Autotopism {
            u: i.clone(),
            v: i.clone(),
            w: i,
        }
    }

    /// Componentwise product.
    pub fn then(&self, other: &Autotopism) -> Autotopism {
        Autotopism {
            u: self.u.then(&other.u),
            v: self.v.then(&other.v),
            w: self.w.then(&other.w),
        }
    }

    pub fn inverse(&self) -> Autotopism {
        Autotopism {
            u: self.u.inverse(),
            v: self.v.inverse(),
            w: self.w.inverse(),
        }
    }

    pub fn is_autotopism_of(&self, l: &LoopTable) -> bool {
        satisfies_autotopism_law(l, &self.u, &self.v, &self.w)
    }
}

impl fmt::Display for Autotopism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {}; {})", self.u, self.v, self.w)
    }
}

impl crate::group::GroupElement for Autotopism {
    fn identity_of(&self) -> Self {
        Autotopism::identity(self.w.degree())
    }
    fn product(&self, other: &Self) -> Self {
        self.then(other)
    }
    fn inverted(&self) -> Self {
        self.inverse()
    }
}

/// `xU·yV = (x·y)W` for all `x, y`; O(n²).
pub fn satisfies_autotopism_law(l: &LoopTable, u: &Perm, v: &Perm, w: &Perm) -> bool {
    let n = l.order();
    if u.degree() != n || v.degree() != n || w.degree() != n {
        return false;
    }
    (0..n).all(|x| {
        let ux = u.apply(x);
        (0..n).all(|y| l.mul(ux, v.apply(y)) == w.apply(l.mul(x, y)))
    })
}

/// The `f,g`-principal isotope `(G,∘)` of a loop, `x∘y = xR_g⁻¹ · yL_f⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalIsotope {
    pub source: LoopTable,
    pub f: usize,
    pub g: usize,
    pub result: LoopTable,
}

impl PrincipalIsotope {
    /// Source table, the `isotope f=.. g=..` line, then the result table.
    pub fn to_text(&self) -> String {
        format!(
            "{}isotope f={} g={}\n{}",
            self.source.to_text(),
            self.f,
            self.g,
            self.result.to_text()
        )
    }

    /// Parses [`PrincipalIsotope::to_text`] output and re-derives the
    /// result to confirm it matches the stored one.
    pub fn parse_text(text: &str) -> Result<PrincipalIsotope> {
        let mut lines = numbered_lines(text);
        let (source, next) = parse_table_lines(&mut lines)?;
        let (line_no, header) = next.ok_or(Error::Parse {
            line: text.lines().count() + 1,
            column: 1,
            message: "missing isotope line".into(),
        })?;
        let bad = |message: String| Error::Parse {
            line: line_no,
            column: 1,
            message,
        };
        let rest = header
            .trim()
            .strip_prefix("isotope ")
            .ok_or_else(|| bad(format!("expected `isotope f=<f> g=<g>`, found {header:?}")))?;
        let mut f = None;
        let mut g = None;
        for tok in rest.split_whitespace() {
            let parse = |v: &str| {
                v.parse::<usize>()
                    .map_err(|_| bad(format!("bad element {v:?}")))
            };
            if let Some(v) = tok.strip_prefix("f=") {
                f = Some(parse(v)?);
            } else if let Some(v) = tok.strip_prefix("g=") {
                g = Some(parse(v)?);
            } else {
                return Err(bad(format!("unexpected token {tok:?}")));
            }
        }
        let (f, g) = f
            .zip(g)
            .ok_or_else(|| bad("isotope line needs f= and g=".into()))?;
        let (result, rest) = parse_table_lines(&mut lines)?;
        if let Some((line, _)) = rest {
            return Err(Error::Parse {
                line,
                column: 1,
                message: "unexpected content after the result table".into(),
            });
        }
        let record = principal_isotope(&source, f, g)?;
        if record.result != result {
            return Err(bad(
                "stored result table does not match the f,g-principal isotope".into(),
            ));
        }
        Ok(record)
    }
}

/// Builds `x∘y = (x/g)·(f\y)`. The result is a loop with identity `f·g`.
pub fn principal_isotope(l: &LoopTable, f: usize, g: usize) -> Result<PrincipalIsotope> {
    let n = l.order();
    for x in [f, g] {
        if x >= n {
            return Err(Error::IndexOutOfRange { index: x, order: n });
        }
    }
    let mut cells = Vec::with_capacity(n * n);
    for x in 0..n {
        let xr = l.rdiv(x, g);
        for y in 0..n {
            cells.push(l.mul(xr, l.ldiv(f, y)) as u8);
        }
    }
    let result = LoopTable::from_cells(n, cells)?;
    debug_assert_eq!(result.identity(), l.mul(f, g));
    Ok(PrincipalIsotope {
        source: l.clone(),
        f,
        g,
        result,
    })
}

/// Smarandache `f,g`-principal isotope: `f, g ∈ H`, and `H` is certified
/// to be an S-subgroup of the isotope as well.
pub fn smarandache_principal_isotope(
    ctx: &SLoopContext,
    f: usize,
    g: usize,
) -> Result<(PrincipalIsotope, SLoopContext)> {
    let h = ctx.subgroup();
    if !h.contains(f) || !h.contains(g) {
        return Err(Error::NotSElements { f, g });
    }
    let record = principal_isotope(ctx.table(), f, g)?;
    check_group_axioms(&record.result, h.elements()).map_err(|why| {
        Error::InvalidSSubgroup(format!("H is not a subgroup of the isotope: {why}"))
    })?;
    let image = SLoopContext::with_elements(record.result.clone(), h.elements().to_vec())?;
    Ok((record, image))
}

/// The full autotopism group, sorted by `(U, V, W)`.
pub fn autotopism_group(l: &LoopTable, cap: SearchCap) -> Result<Vec<Autotopism>> {
    cap.check(l.order())?;
    let n = l.order();
    let seeds: Vec<(usize, usize)> = (0..n).flat_map(|b| (0..n).map(move |a| (b, a))).collect();
    Ok(search::autotopisms(l, &seeds, None)
        .into_iter()
        .map(|(u, v, w)| Autotopism { u, v, w })
        .collect())
}

/// All automorphisms, sorted.
pub fn automorphism_group(l: &LoopTable, cap: SearchCap) -> Result<Vec<Perm>> {
    isomorphisms(l, l, cap)
}

/// All isomorphisms `A : L1 -> L2`, `L2[xA][yA] = (L1[x][y])A`, sorted.
pub fn isomorphisms(l1: &LoopTable, l2: &LoopTable, cap: SearchCap) -> Result<Vec<Perm>> {
    check_pair(l1.order(), l2.order(), cap)?;
    Ok(search::isomorphisms(l1, l2, None, None))
}

/// Whether some isomorphism `L1 -> L2` exists.
pub fn is_isomorphic(l1: &LoopTable, l2: &LoopTable, cap: SearchCap) -> Result<bool> {
    check_pair(l1.order(), l2.order(), cap)?;
    Ok(!search::isomorphisms(l1, l2, None, Some(1)).is_empty())
}

fn check_pair(a: usize, b: usize, cap: SearchCap) -> Result<()> {
    if a != b {
        return Err(Error::OrderMismatch { left: a, right: b });
    }
    cap.check(a)
}

/// How an S-isomorphism must treat the S-subgroups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SIsoSemantics {
    /// `xA ∈ H2` for every `x ∈ H1`.
    #[default]
    Into,
    /// `H1 A = H2` exactly.
    Onto,
}

/// Isomorphisms `ctx1.loop -> ctx2.loop` that carry `H1` into (or onto) `H2`.
pub fn s_isomorphisms(
    ctx1: &SLoopContext,
    ctx2: &SLoopContext,
    semantics: SIsoSemantics,
    cap: SearchCap,
) -> Result<Vec<Perm>> {
    s_isomorphisms_limited(ctx1, ctx2, semantics, cap, None)
}

/// Whether some S-isomorphism `ctx1 -> ctx2` exists.
pub fn is_s_isomorphic(
    ctx1: &SLoopContext,
    ctx2: &SLoopContext,
    semantics: SIsoSemantics,
    cap: SearchCap,
) -> Result<bool> {
    Ok(!s_isomorphisms_limited(ctx1, ctx2, semantics, cap, Some(1))?.is_empty())
}

fn s_isomorphisms_limited(
    ctx1: &SLoopContext,
    ctx2: &SLoopContext,
    semantics: SIsoSemantics,
    cap: SearchCap,
    limit: Option<usize>,
) -> Result<Vec<Perm>> {
    check_pair(ctx1.order(), ctx2.order(), cap)?;
    let (h1, h2) = (ctx1.subgroup(), ctx2.subgroup());
    // An injective map cannot squeeze H1 into a smaller set.
    if h1.len() > h2.len() || (semantics == SIsoSemantics::Onto && h1.len() != h2.len()) {
        return Ok(Vec::new());
    }
    let constraint = SetConstraint {
        domain: h1.mask(),
        target: h2.mask(),
        exact: semantics == SIsoSemantics::Onto,
    };
    Ok(search::isomorphisms(
        ctx1.table(),
        ctx2.table(),
        Some(constraint),
        limit,
    ))
}

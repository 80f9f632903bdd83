//! Cayley-table loops, their translations, subgroups and middle nucleus.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{Perm, MAX_DEGREE};

/// A finite loop given by its Cayley table.
///
/// Besides the table itself the left and right division tables are kept,
/// so `a \ b` and `b / a` are single lookups.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LoopTable {
    n: usize,
    cells: Vec<u8>,
    ldiv: Vec<u8>,
    rdiv: Vec<u8>,
    identity: usize,
    associative: bool,
}

impl LoopTable {
    /// Validates a raw table: square, entries in range, Latin, with a
    /// two-sided identity.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<LoopTable> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotSquare {
                row: 0,
                len: 0,
                expected: 1,
            });
        }
        if n > MAX_DEGREE {
            return Err(Error::OrderTooLarge {
                order: n,
                max: MAX_DEGREE,
            });
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    row: r,
                    len: row.len(),
                    expected: n,
                });
            }
            if let Some(&v) = row.iter().find(|&&v| v >= n) {
                return Err(Error::IndexOutOfRange { index: v, order: n });
            }
        }
        let cells: Vec<u8> = rows.iter().flatten().map(|&v| v as u8).collect();
        Self::from_cells(n, cells)
    }

    pub(crate) fn from_cells(n: usize, cells: Vec<u8>) -> Result<LoopTable> {
        debug_assert_eq!(cells.len(), n * n);
        const UNSET: u16 = u16::MAX;
        let mut ldiv = vec![UNSET; n * n];
        let mut rdiv = vec![UNSET; n * n];
        for x in 0..n {
            for y in 0..n {
                let v = cells[x * n + y] as usize;
                // x·y = v  =>  x \ v = y  and  v / y = x
                let l = &mut ldiv[x * n + v];
                if *l != UNSET {
                    return Err(Error::NotLatin(format!("row {x} repeats entry {v}")));
                }
                *l = y as u16;
                let r = &mut rdiv[y * n + v];
                if *r != UNSET {
                    return Err(Error::NotLatin(format!("column {y} repeats entry {v}")));
                }
                *r = x as u16;
            }
        }
        let ldiv: Vec<u8> = ldiv.into_iter().map(|v| v as u8).collect();
        let rdiv: Vec<u8> = rdiv.into_iter().map(|v| v as u8).collect();
        let identity = (0..n)
            .find(|&e| {
                (0..n).all(|y| cells[e * n + y] as usize == y && cells[y * n + e] as usize == y)
            })
            .ok_or(Error::NoIdentity)?;
        let mut table = LoopTable {
            n,
            cells,
            ldiv,
            rdiv,
            identity,
            associative: false,
        };
        table.associative = table.is_associative_on(&(0..n).collect::<Vec<_>>());
        Ok(table)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    /// True when the loop is a group.
    pub fn is_associative(&self) -> bool {
        self.associative
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.n + y] as usize
    }

    /// `a \ b`: the unique `x` with `a·x = b`, i.e. `b L_a^{-1}`.
    #[inline]
    pub fn ldiv(&self, a: usize, b: usize) -> usize {
        self.ldiv[a * self.n + b] as usize
    }

    /// `b / a`: the unique `y` with `y·a = b`, i.e. `b R_a^{-1}`.
    #[inline]
    pub fn rdiv(&self, b: usize, a: usize) -> usize {
        self.rdiv[a * self.n + b] as usize
    }

    pub fn row(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.cells[x * self.n..(x + 1) * self.n]
            .iter()
            .map(|&b| b as usize)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|x| self.row(x).collect()).collect()
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    fn check_index(&self, x: usize) -> Result<()> {
        if x < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: x,
                order: self.n,
            })
        }
    }

    /// `L_x : y -> x·y`.
    pub fn left_translation(&self, x: usize) -> Perm {
        Perm::from_bytes_unchecked(self.cells[x * self.n..(x + 1) * self.n].to_vec())
    }

    /// `R_x : y -> y·x`.
    pub fn right_translation(&self, x: usize) -> Perm {
        Perm::from_bytes_unchecked((0..self.n).map(|y| self.cells[y * self.n + x]).collect())
    }

    /// Both translations by `x`, as `(L_x, R_x)`.
    pub fn translations(&self, x: usize) -> Result<(Perm, Perm)> {
        self.check_index(x)?;
        Ok((self.left_translation(x), self.right_translation(x)))
    }

    pub(crate) fn is_associative_on(&self, elems: &[usize]) -> bool {
        elems.iter().all(|&x| {
            elems.iter().all(|&y| {
                let xy = self.mul(x, y);
                elems
                    .iter()
                    .all(|&z| self.mul(xy, z) == self.mul(x, self.mul(y, z)))
            })
        })
    }

    /// Smallest subset containing `seed` and `e` that is closed under the
    /// product. In a finite loop such a subset is a subloop.
    pub fn closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.n];
        let mut members = vec![self.identity];
        inside[self.identity] = true;
        for &s in seed {
            if !inside[s] {
                inside[s] = true;
                members.push(s);
            }
        }
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            for j in 0..=i {
                let b = members[j];
                for c in [self.mul(a, b), self.mul(b, a)] {
                    if !inside[c] {
                        inside[c] = true;
                        members.push(c);
                    }
                }
            }
            i += 1;
        }
        members.sort_unstable();
        members
    }

    /// Every subset containing `e` that is a group under the loop product,
    /// ordered by size and then lexicographically.
    pub fn subgroups(&self) -> Vec<SubgroupSet> {
        // Every subgroup is reached from a smaller one by adjoining a single
        // element, so growing only through associative closures is complete.
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let trivial = vec![self.identity];
        found.insert(trivial.clone());
        let mut frontier = vec![trivial];
        while let Some(base) = frontier.pop() {
            for x in 0..self.n {
                if base.binary_search(&x).is_ok() {
                    continue;
                }
                let mut seed = base.clone();
                seed.push(x);
                let next = self.closure(&seed);
                if found.contains(&next) || !self.is_associative_on(&next) {
                    continue;
                }
                found.insert(next.clone());
                frontier.push(next);
            }
        }
        let mut out: Vec<SubgroupSet> = found
            .into_iter()
            .map(|elements| SubgroupSet::from_verified(self.n, elements))
            .collect();
        out.sort_by(|a, b| {
            a.len()
                .cmp(&b.len())
                .then_with(|| a.elements.cmp(&b.elements))
        });
        out
    }

    /// Subgroups `H` with `2 <= |H| < n`.
    pub fn s_subgroups(&self) -> Vec<SubgroupSet> {
        self.subgroups()
            .into_iter()
            .filter(|h| h.len() >= 2 && h.len() < self.n)
            .collect()
    }

    /// `N_μ = { g : (x·g)·y = x·(g·y) for all x, y }`.
    pub fn middle_nucleus(&self) -> SubgroupSet {
        let n = self.n;
        let elements: Vec<usize> = (0..n)
            .filter(|&g| {
                (0..n).all(|x| {
                    let xg = self.mul(x, g);
                    (0..n).all(|y| self.mul(xg, y) == self.mul(x, self.mul(g, y)))
                })
            })
            .collect();
        SubgroupSet::new(self, elements).expect("middle nucleus is always a subgroup")
    }

    /// Relabels the elements through `relabel`: the new table satisfies
    /// `new[xσ][yσ] = (x·y)σ`.
    pub fn relabeled(&self, relabel: &Perm) -> LoopTable {
        assert_eq!(relabel.degree(), self.n);
        let n = self.n;
        let mut cells = vec![0u8; n * n];
        for x in 0..n {
            for y in 0..n {
                cells[relabel.apply(x) * n + relabel.apply(y)] =
                    relabel.apply(self.mul(x, y)) as u8;
            }
        }
        LoopTable::from_cells(n, cells).expect("relabeling preserves the loop axioms")
    }

    /// Cayley table text: `n` on the first line, then `n` rows of
    /// space-separated entries, trailing newline, no comments.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for x in 0..self.n {
            let row: Vec<String> = self.row(x).map(|v| v.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the Cayley table text format. Lines starting with `#` are
    /// ignored wherever they appear.
    pub fn parse_text(text: &str) -> Result<LoopTable> {
        let (table, rest) = parse_table_lines(&mut numbered_lines(text))?;
        if let Some((line, _)) = rest {
            return Err(Error::Parse {
                line,
                column: 1,
                message: "unexpected content after the table".into(),
            });
        }
        Ok(table)
    }
}

pub(crate) type NumberedLines<'a> =
    std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>;

/// Non-comment, non-blank lines with 1-based line numbers.
pub(crate) fn numbered_lines(text: &str) -> NumberedLines<'_> {
    let it: Box<dyn Iterator<Item = (usize, &str)>> = Box::new(
        text.lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| !l.trim_start().starts_with('#') && !l.trim().is_empty()),
    );
    it.peekable()
}

/// Reads one table off `lines`, returning it with the next unread line.
pub(crate) fn parse_table_lines<'a>(
    lines: &mut NumberedLines<'a>,
) -> Result<(LoopTable, Option<(usize, &'a str)>)> {
    let (line_no, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "missing order line".into(),
    })?;
    let n: usize = header.trim().parse().map_err(|_| Error::Parse {
        line: line_no,
        column: 1,
        message: format!("expected the order, found {:?}", header.trim()),
    })?;
    if n == 0 {
        return Err(Error::Parse {
            line: line_no,
            column: 1,
            message: "order must be positive".into(),
        });
    }
    let mut rows = Vec::with_capacity(n);
    let mut last_line = line_no;
    for r in 0..n {
        let (ln, line) = lines.next().ok_or_else(|| Error::Parse {
            line: last_line + 1,
            column: 1,
            message: format!("expected {n} rows, found {r}"),
        })?;
        last_line = ln;
        let mut row = Vec::with_capacity(n);
        for tok in line.split_whitespace() {
            // 1-based character column of the token.
            let offset = tok.as_ptr() as usize - line.as_ptr() as usize;
            let column = line[..offset].chars().count() + 1;
            let v: usize = tok.parse().map_err(|_| Error::Parse {
                line: ln,
                column,
                message: format!("expected an integer, found {tok:?}"),
            })?;
            if v >= n {
                return Err(Error::Parse {
                    line: ln,
                    column,
                    message: format!("entry {v} out of range for order {n}"),
                });
            }
            row.push(v);
        }
        if row.len() != n {
            return Err(Error::Parse {
                line: ln,
                column: line.chars().count() + 1,
                message: format!("expected {n} entries, found {}", row.len()),
            });
        }
        rows.push(row);
    }
    let table = LoopTable::from_rows(&rows)?;
    Ok((table, lines.next()))
}

impl fmt::Debug for LoopTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LoopTable(e={}) ", self.identity)?;
        f.debug_list().entries(self.rows()).finish()
    }
}

/// A subset of a loop that forms a group under the loop product.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SubgroupSet {
    elements: Vec<usize>,
    mask: Vec<bool>,
}

impl SubgroupSet {
    /// Certifies `elements` as a subgroup of `table`.
    pub fn new(table: &LoopTable, elements: Vec<usize>) -> Result<SubgroupSet> {
        let mut elements = elements;
        elements.sort_unstable();
        elements.dedup();
        if let Some(&bad) = elements.iter().find(|&&x| x >= table.order()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                order: table.order(),
            });
        }
        check_group_axioms(table, &elements).map_err(Error::NotASubgroup)?;
        Ok(SubgroupSet::from_verified(table.order(), elements))
    }

    fn from_verified(n: usize, elements: Vec<usize>) -> SubgroupSet {
        let mut mask = vec![false; n];
        for &x in &elements {
            mask[x] = true;
        }
        SubgroupSet { elements, mask }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub(crate) fn mask(&self) -> &[bool] {
        &self.mask
    }

    /// Comma-separated element list, e.g. `0,2`.
    pub fn to_csv(&self) -> String {
        self.elements
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Checks closure, associativity, identity `e` and two-sided inverses of
/// `elems` inside `table`, reporting the first violated axiom.
pub fn check_group_axioms(table: &LoopTable, elems: &[usize]) -> std::result::Result<(), String> {
    let n = table.order();
    let mut inside = vec![false; n];
    for &x in elems {
        if x >= n {
            return Err(format!("element {x} out of range"));
        }
        inside[x] = true;
    }
    let e = table.identity();
    if !inside[e] {
        return Err(format!("identity {e} missing"));
    }
    for &x in elems {
        for &y in elems {
            let xy = table.mul(x, y);
            if !inside[xy] {
                return Err(format!("{x}·{y} = {xy} leaves the set"));
            }
        }
    }
    for &x in elems {
        if !elems
            .iter()
            .any(|&y| table.mul(x, y) == e && table.mul(y, x) == e)
        {
            return Err(format!("{x} has no two-sided inverse in the set"));
        }
    }
    for &x in elems {
        for &y in elems {
            for &z in elems {
                let lhs = table.mul(table.mul(x, y), z);
                let rhs = table.mul(x, table.mul(y, z));
                if lhs != rhs {
                    return Err(format!("({x}·{y})·{z} = {lhs} but {x}·({y}·{z}) = {rhs}"));
                }
            }
        }
    }
    Ok(())
}

/// A loop together with a chosen S-subgroup `H`, `2 <= |H| < n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SLoopContext {
    table: LoopTable,
    h: SubgroupSet,
}

impl SLoopContext {
    pub fn new(table: LoopTable, h: SubgroupSet) -> Result<SLoopContext> {
        let n = table.order();
        if h.len() < 2 || h.len() >= n {
            return Err(Error::InvalidSSubgroup(format!(
                "|H| = {} must satisfy 2 <= |H| < {n}",
                h.len()
            )));
        }
        if h.mask.len() != n {
            return Err(Error::InvalidSSubgroup(
                "subgroup belongs to a loop of another order".into(),
            ));
        }
        // Re-certify against this particular table.
        check_group_axioms(&table, &h.elements).map_err(Error::InvalidSSubgroup)?;
        Ok(SLoopContext { table, h })
    }

    /// Certifies `elements` and wraps them with `table`.
    pub fn with_elements(table: LoopTable, elements: Vec<usize>) -> Result<SLoopContext> {
        let h = SubgroupSet::new(&table, elements)?;
        SLoopContext::new(table, h)
    }

    /// One context per S-subgroup; `NotSLoop` when there is none.
    pub fn all_for(table: &LoopTable) -> Result<Vec<SLoopContext>> {
        let subs = table.s_subgroups();
        if subs.is_empty() {
            return Err(Error::NotSLoop);
        }
        Ok(subs
            .into_iter()
            .map(|h| SLoopContext {
                table: table.clone(),
                h,
            })
            .collect())
    }

    pub fn table(&self) -> &LoopTable {
        &self.table
    }

    pub fn subgroup(&self) -> &SubgroupSet {
        &self.h
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn validate_cyclic_group() {
        let z4 = fixtures::cyclic(4);
        assert_eq!(z4.identity(), 0);
        assert!(z4.is_associative());
    }

    #[test]
    fn validate_rejects_repeated_entry() {
        let err = LoopTable::from_rows(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(err, Error::NotLatin(_)), "{err:?}");
    }

    #[test]
    fn validate_rejects_missing_identity() {
        let err = LoopTable::from_rows(&[vec![0, 1, 2], vec![2, 0, 1], vec![1, 2, 0]]).unwrap_err();
        assert_eq!(err, Error::NoIdentity);
    }

    #[test]
    fn validate_rejects_ragged_and_out_of_range() {
        assert!(matches!(
            LoopTable::from_rows(&[vec![0, 1], vec![1]]),
            Err(Error::NotSquare { row: 1, .. })
        ));
        assert!(matches!(
            LoopTable::from_rows(&[vec![0, 2], vec![1, 0]]),
            Err(Error::IndexOutOfRange { index: 2, .. })
        ));
    }

    #[test]
    fn identity_need_not_be_zero() {
        let t = LoopTable::from_rows(&[vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]]).unwrap();
        assert_eq!(t.identity(), 2);
    }

    #[test]
    fn translations_read_rows_and_columns() {
        let z4 = fixtures::cyclic(4);
        let (l1, r1) = z4.translations(1).unwrap();
        assert_eq!(l1.to_string(), "1,2,3,0");
        assert_eq!(r1, l1);
        let (le, re) = z4.translations(0).unwrap();
        assert!(le.is_identity() && re.is_identity());
        assert!(z4.translations(4).is_err());

        let n5 = fixtures::n5();
        assert_eq!(n5.translations(3).unwrap().0.to_string(), "3,4,1,2,0");
    }

    #[test]
    fn divisions_invert_products() {
        let n5 = fixtures::n5();
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(n5.mul(a, n5.ldiv(a, b)), b);
                assert_eq!(n5.mul(n5.rdiv(b, a), a), b);
            }
        }
    }

    #[test]
    fn subgroups_of_z4() {
        let subs: Vec<Vec<usize>> = fixtures::cyclic(4)
            .subgroups()
            .iter()
            .map(|s| s.elements().to_vec())
            .collect();
        assert_eq!(subs, vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);
    }

    #[test]
    fn s_subgroups_examples() {
        let z4: Vec<_> = fixtures::cyclic(4).s_subgroups();
        assert_eq!(z4.len(), 1);
        assert_eq!(z4[0].elements(), &[0, 2]);
        assert!(fixtures::cyclic(5).s_subgroups().is_empty());
        let n5 = fixtures::n5().s_subgroups();
        assert_eq!(n5.len(), 1);
        assert_eq!(n5[0].elements(), &[0, 1]);
    }

    #[test]
    fn middle_nucleus_examples() {
        assert_eq!(
            fixtures::cyclic(4).middle_nucleus().elements(),
            &[0, 1, 2, 3]
        );
        assert_eq!(fixtures::n5().middle_nucleus().elements(), &[0]);
    }

    #[test]
    fn text_format_is_bit_exact() {
        let z4 = fixtures::cyclic(4);
        let text = z4.to_text();
        assert_eq!(text, "4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n");
        assert_eq!(LoopTable::parse_text(&text).unwrap(), z4);
    }

    #[test]
    fn parser_skips_comments_and_reports_positions() {
        let t = LoopTable::parse_text("# z2\n2\n# row 0\n0 1\n1 0\n").unwrap();
        assert_eq!(t.order(), 2);
        let err = LoopTable::parse_text("3\n0 1 2\n1 2 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err:?}");
        let err = LoopTable::parse_text("2\n0 1\n1 x\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                column: 3,
                message: "expected an integer, found \"x\"".into()
            }
        );
    }

    #[test]
    fn context_requires_proper_nontrivial_subgroup() {
        let z4 = fixtures::cyclic(4);
        assert!(SLoopContext::with_elements(z4.clone(), vec![0, 2]).is_ok());
        assert!(SLoopContext::with_elements(z4.clone(), vec![0]).is_err());
        assert!(SLoopContext::with_elements(z4.clone(), vec![0, 1, 2, 3]).is_err());
        assert!(matches!(
            SLoopContext::with_elements(z4, vec![0, 1]),
            Err(Error::NotASubgroup(_))
        ));
        assert_eq!(
            SLoopContext::all_for(&fixtures::cyclic(5)),
            Err(Error::NotSLoop)
        );
    }
}

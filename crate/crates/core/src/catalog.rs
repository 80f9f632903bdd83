//! Exhaustive generation of small loops and on-disk catalogs.
//!
//! A catalog directory holds one `<id>.loop` table file per entry and an
//! `index.tsv` listing `id`, order, associativity and S-subgroup count.
//! Theorem reports sit next to the tables as `<id>.report.json`.
//!
//! Entry ids are the 64-bit FNV-1a hash of the table's text serialization
//! (see [`LoopTable::to_text`]), printed as 16 lowercase hex digits.

use std::fs;
use std::path::{Path, PathBuf};

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::isotopy::is_isomorphic;
use crate::loops::LoopTable;
use crate::perm::Perm;
use crate::search::SearchCap;

/// Largest order generated exhaustively.
pub const MAX_EXHAUSTIVE_ORDER: usize = 6;

pub const INDEX_FILE: &str = "index.tsv";

/// 64-bit FNV-1a.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    bytes
        .iter()
        .fold(OFFSET, |h, &b| (h ^ b as u64).wrapping_mul(PRIME))
}

pub fn content_id(l: &LoopTable) -> u64 {
    fnv1a64(l.to_text().as_bytes())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub table: LoopTable,
    pub associative: bool,
    pub s_subgroup_count: usize,
    pub id: u64,
}

impl CatalogEntry {
    /// Normalizes `table` and computes its flags.
    pub fn new(table: LoopTable) -> CatalogEntry {
        let (table, _) = normalize(&table);
        CatalogEntry {
            associative: table.is_associative(),
            s_subgroup_count: table.s_subgroups().len(),
            id: content_id(&table),
            table,
        }
    }

    pub fn id_hex(&self) -> String {
        format!("{:016x}", self.id)
    }

    pub fn file_name(&self) -> String {
        format!("{}.loop", self.id_hex())
    }
}

/// Relabels so the identity becomes 0, by swapping `0` and `e`.
/// Returns the new table with the relabeling used.
pub fn normalize(l: &LoopTable) -> (LoopTable, Perm) {
    let n = l.order();
    let e = l.identity();
    let mut images: Vec<usize> = (0..n).collect();
    images.swap(0, e);
    let relabel = Perm::from_images(images).expect("transposition");
    if e == 0 {
        return (l.clone(), relabel);
    }
    (l.relabeled(&relabel), relabel)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GenerateOptions {
    /// Keep only non-associative loops.
    pub nonassociative: bool,
    /// Keep only loops with at least one S-subgroup.
    pub require_s_subgroup: bool,
    /// Stop after this many entries (counted after filtering).
    pub limit: Option<usize>,
    /// Order 6 has 9408 normalized tables and must be asked for explicitly.
    pub allow_order_six: bool,
}

/// Every normalized loop of order `n` (identity 0, natural first row and
/// column), each exactly once, in lexicographic order of the flattened table.
pub fn generate_loops(
    n: usize,
    opts: GenerateOptions,
) -> Result<impl Iterator<Item = CatalogEntry>> {
    check_order(n, opts)?;
    let entries = ReducedSquares::new(n)
        .map(CatalogEntry::new)
        .filter(move |e| keep(&opts, e));
    Ok(entries.take(opts.limit.unwrap_or(usize::MAX)))
}

fn check_order(n: usize, opts: GenerateOptions) -> Result<()> {
    if n > MAX_EXHAUSTIVE_ORDER || (n == MAX_EXHAUSTIVE_ORDER && !opts.allow_order_six) {
        return Err(Error::OrderTooLarge {
            order: n,
            max: if opts.allow_order_six {
                MAX_EXHAUSTIVE_ORDER
            } else {
                MAX_EXHAUSTIVE_ORDER - 1
            },
        });
    }
    if n == 0 {
        return Err(Error::IndexOutOfRange { index: 0, order: 0 });
    }
    Ok(())
}

/// Same entries and order as [`generate_loops`], built in parallel over the
/// possible second rows and merged back in order.
pub fn generate_catalog(n: usize, opts: GenerateOptions) -> Result<Vec<CatalogEntry>> {
    check_order(n, opts)?;
    let per_branch: Vec<Vec<CatalogEntry>> = ReducedSquares::branches(n)
        .into_par_iter()
        .map(|branch| {
            branch
                .map(CatalogEntry::new)
                .filter(|e| keep(&opts, e))
                .take(opts.limit.unwrap_or(usize::MAX))
                .collect()
        })
        .collect();
    Ok(per_branch
        .into_iter()
        .flatten()
        .take(opts.limit.unwrap_or(usize::MAX))
        .collect())
}

fn keep(opts: &GenerateOptions, e: &CatalogEntry) -> bool {
    (!opts.nonassociative || !e.associative) && (!opts.require_s_subgroup || e.s_subgroup_count > 0)
}

/// Lazily enumerates reduced Latin squares by filling the free cells
/// (row and column index both nonzero) in row-major order.
pub struct ReducedSquares {
    n: usize,
    cells: Vec<u8>,
    row_used: Vec<u32>,
    col_used: Vec<u32>,
    free: Vec<(usize, usize)>,
    value: Vec<Option<u8>>,
    pos: usize,
    /// Cells below this position are fixed and never revisited.
    floor: usize,
    started: bool,
    done: bool,
}

impl ReducedSquares {
    pub fn new(n: usize) -> ReducedSquares {
        assert!((1..=32).contains(&n));
        let mut cells = vec![0u8; n * n];
        let mut row_used = vec![0u32; n];
        let mut col_used = vec![0u32; n];
        for i in 0..n {
            cells[i] = i as u8;
            cells[i * n] = i as u8;
            row_used[0] |= 1 << i;
            col_used[i] |= 1 << i;
            row_used[i] |= 1 << i;
            col_used[0] |= 1 << i;
        }
        let free: Vec<(usize, usize)> = (1..n).flat_map(|r| (1..n).map(move |c| (r, c))).collect();
        ReducedSquares {
            n,
            cells,
            row_used,
            col_used,
            value: vec![None; free.len()],
            free,
            pos: 0,
            floor: 0,
            started: false,
            done: false,
        }
    }

    /// The squares whose row 1 is `row` (which must be a valid row 1).
    fn with_row_one(n: usize, row: &[u8]) -> ReducedSquares {
        let mut sq = ReducedSquares::new(n);
        for (c, &v) in row.iter().enumerate().skip(1) {
            let pos = c - 1;
            sq.row_used[1] |= 1 << v;
            sq.col_used[c] |= 1 << v;
            sq.cells[n + c] = v;
            sq.value[pos] = Some(v);
        }
        sq.floor = n - 1;
        sq.pos = sq.floor;
        sq
    }

    /// Splits the enumeration by row 1, in lexicographic order. Concatenating
    /// the branches yields exactly the sequence of [`ReducedSquares::new`].
    pub fn branches(n: usize) -> Vec<ReducedSquares> {
        if n < 2 {
            return vec![ReducedSquares::new(n)];
        }
        (0..n as u8)
            .permutations(n)
            .filter(|row| {
                row[0] == 1
                    && row
                        .iter()
                        .enumerate()
                        .skip(1)
                        .all(|(c, &v)| v as usize != c)
            })
            .map(|row| ReducedSquares::with_row_one(n, &row))
            .collect()
    }

    fn emit(&self) -> LoopTable {
        LoopTable::from_cells(self.n, self.cells.clone())
            .expect("completed reduced square is a loop")
    }
}

impl Iterator for ReducedSquares {
    type Item = LoopTable;

    fn next(&mut self) -> Option<LoopTable> {
        if self.done {
            return None;
        }
        let len = self.free.len();
        if !self.started {
            self.started = true;
            self.pos = self.floor;
            if len == self.floor {
                self.done = true;
                return Some(self.emit());
            }
        } else if len == self.floor {
            self.done = true;
            return None;
        } else {
            // Resume by advancing the last cell of the previous square.
            self.pos = len - 1;
        }
        loop {
            let (r, c) = self.free[self.pos];
            let start = match self.value[self.pos].take() {
                Some(v) => {
                    self.row_used[r] &= !(1 << v);
                    self.col_used[c] &= !(1 << v);
                    v as usize + 1
                }
                None => 0,
            };
            let blocked = self.row_used[r] | self.col_used[c];
            match (start..self.n).find(|&v| blocked & (1 << v) == 0) {
                Some(v) => {
                    self.row_used[r] |= 1 << v;
                    self.col_used[c] |= 1 << v;
                    self.cells[r * self.n + c] = v as u8;
                    self.value[self.pos] = Some(v as u8);
                    if self.pos + 1 == len {
                        return Some(self.emit());
                    }
                    self.pos += 1;
                }
                None => {
                    if self.pos == self.floor {
                        self.done = true;
                        return None;
                    }
                    self.pos -= 1;
                }
            }
        }
    }
}

/// Keeps the first entry of each isomorphism class, by pairwise search.
pub fn dedup_isomorphism_classes(entries: &[CatalogEntry]) -> Result<Vec<CatalogEntry>> {
    let cap = SearchCap(MAX_EXHAUSTIVE_ORDER);
    let mut reps: Vec<CatalogEntry> = Vec::new();
    for e in entries {
        let mut seen = false;
        for r in &reps {
            if r.table.order() == e.table.order() && is_isomorphic(&r.table, &e.table, cap)? {
                seen = true;
                break;
            }
        }
        if !seen {
            reps.push(e.clone());
        }
    }
    Ok(reps)
}

pub fn read_table(path: impl AsRef<Path>) -> Result<LoopTable> {
    let path = path.as_ref();
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    LoopTable::parse_text(&text)
}

pub fn write_table(l: &LoopTable, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, l.to_text()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Writes each entry as `<id>.loop` and the index file.
pub fn write_catalog<'a>(
    dir: impl AsRef<Path>,
    entries: impl IntoIterator<Item = &'a CatalogEntry>,
) -> Result<usize> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)?;
    let mut index = String::from("# id\torder\tassociative\ts_subgroups\n");
    let mut count = 0;
    for e in entries {
        write_table(&e.table, dir.join(e.file_name()))?;
        index.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            e.id_hex(),
            e.table.order(),
            e.associative,
            e.s_subgroup_count
        ));
        count += 1;
    }
    fs::write(dir.join(INDEX_FILE), index)?;
    Ok(count)
}

/// Loads the entries listed in a catalog's index, checking each id.
pub fn read_catalog(dir: impl AsRef<Path>) -> Result<Vec<CatalogEntry>> {
    let dir = dir.as_ref();
    let index_path = dir.join(INDEX_FILE);
    let text = fs::read_to_string(&index_path)
        .map_err(|e| Error::Io(format!("{}: {e}", index_path.display())))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let id = line.split('\t').next().unwrap_or_default();
        let table = read_table(dir.join(format!("{id}.loop")))?;
        let entry = CatalogEntry::new(table);
        if entry.id_hex() != id {
            return Err(Error::Parse {
                line: i + 1,
                column: 1,
                message: format!("id {id} does not match table content {}", entry.id_hex()),
            });
        }
        out.push(entry);
    }
    Ok(out)
}

pub fn report_path(dir: impl AsRef<Path>, entry: &CatalogEntry) -> PathBuf {
    dir.as_ref().join(format!("{}.report.json", entry.id_hex()))
}

//! Named example loops.

use crate::loops::LoopTable;

/// The cyclic group `Z_n` under addition mod `n`.
pub fn cyclic(n: usize) -> LoopTable {
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).map(|y| (x + y) % n).collect())
        .collect();
    LoopTable::from_rows(&rows).expect("cyclic table is a loop")
}

/// The Klein four-group `Z_2 × Z_2`, elements encoded as bit pairs.
pub fn klein() -> LoopTable {
    let rows: Vec<Vec<usize>> = (0..4).map(|x| (0..4).map(|y| x ^ y).collect()).collect();
    LoopTable::from_rows(&rows).expect("Klein table is a loop")
}

/// A non-associative loop of order 5 with S-subgroup `{0, 1}`.
pub fn n5() -> LoopTable {
    LoopTable::from_rows(&[
        vec![0, 1, 2, 3, 4],
        vec![1, 0, 3, 4, 2],
        vec![2, 3, 4, 0, 1],
        vec![3, 4, 1, 2, 0],
        vec![4, 2, 0, 1, 3],
    ])
    .expect("N5 is a loop")
}

/// Looks up a fixture by name: `z<n>`, `klein`, `n5`.
pub fn by_name(name: &str) -> Option<LoopTable> {
    match name {
        "klein" | "v4" => Some(klein()),
        "n5" => Some(n5()),
        _ => {
            let n: usize = name.strip_prefix('z')?.parse().ok()?;
            (1..=crate::perm::MAX_DEGREE)
                .contains(&n)
                .then(|| cyclic(n))
        }
    }
}

use std::path::Path;

use anyhow::{anyhow, Context, Result};
use loopforge_core::{fixtures, read_table, LoopTable, SLoopContext};

/// Reads a table file, falling back to a fixture name when no such file exists.
pub fn load_loop(arg: &str) -> Result<LoopTable> {
    let path = Path::new(arg);
    if path.exists() {
        return read_table(path).with_context(|| arg.to_string());
    }
    fixtures::by_name(arg).ok_or_else(|| anyhow!("{arg}: no such file or fixture"))
}

pub fn parse_elements(csv: &str) -> Result<Vec<usize>> {
    csv.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<usize>()
                .with_context(|| format!("--subgroup: {s:?} is not an element index"))
        })
        .collect()
}

pub fn context(table: LoopTable, csv: &str) -> Result<SLoopContext> {
    let elements = parse_elements(csv)?;
    Ok(SLoopContext::with_elements(table, elements)?)
}

//! Embedded reference data: the six generator seeds with their expected
//! parameters, and the known neighbour parameter lists per family.

use crate::construct::{BlockSeed, GeneratorFamily};
use crate::error::{Error, Result};
use crate::search::Registry;

const TABLE1: &str = include_str!("../data/table1.csv");

const NEIGHBOUR_LISTS: [&str; 6] = [
    include_str!("../data/g1_neighbours.csv"),
    include_str!("../data/g2_neighbours.csv"),
    include_str!("../data/g3_neighbours.csv"),
    include_str!("../data/g4_neighbours.csv"),
    include_str!("../data/g5_neighbours.csv"),
    include_str!("../data/g6_neighbours.csv"),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Row {
    pub family: GeneratorFamily,
    pub seed: BlockSeed,
    pub gamma: i64,
    pub beta: i64,
    /// Automorphism group order, carried as metadata only.
    pub aut: u64,
}

/// Parses `family,seed,gamma,beta,aut` lines.
pub fn parse_table1(text: &str) -> Result<Vec<Table1Row>> {
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').map(str::trim).collect();
        let [family, seed, gamma, beta, aut] = f[..] else {
            return Err(Error::Parse(format!("expected 5 fields, got {line:?}")));
        };
        let family: GeneratorFamily = family.parse()?;
        let int = |s: &str| s.parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {s:?}")));
        rows.push(Table1Row {
            family,
            seed: BlockSeed::from_hex(seed, family.block_kind())?,
            gamma: int(gamma)?,
            beta: int(beta)?,
            aut: int(aut)? as u64,
        });
    }
    Ok(rows)
}

pub fn table1_text() -> &'static str {
    TABLE1
}

pub fn table1() -> Vec<Table1Row> {
    parse_table1(TABLE1).expect("embedded table parses")
}

/// Known neighbour keys reached from one family's start code.
pub fn neighbour_list(family: GeneratorFamily) -> &'static str {
    NEIGHBOUR_LISTS[family.index() - 1]
}

/// All six lists as one baseline file.
pub fn baseline_text() -> String {
    NEIGHBOUR_LISTS.concat()
}

pub fn baseline_registry() -> Registry {
    Registry::from_baseline_str(&baseline_text()).expect("embedded baseline parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows() {
        let rows = table1();
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[0].seed.to_hex(), "041041041");
        assert_eq!((rows[4].gamma, rows[4].beta), (36, 537));
        assert!(parse_table1("G1,041041041,0,165").is_err());
    }

    #[test]
    fn neighbour_lists_parse() {
        for family in GeneratorFamily::ALL {
            Registry::from_baseline_str(neighbour_list(family)).unwrap();
        }
        assert!(baseline_registry().baseline_len() > 1000);
    }
}

//! Generator matrices `[I_36 | tau6(v)]` over the groups of order six.
//!
//! Each seed carries 36 bits: the first rows of six 6x6 blocks `A1..A6`, all
//! circulant or all reverse circulant. The blocks are assembled into one of
//! three 36x36 shapes, with `A = CIRC(A1, A2, A3)`:
//!
//! * cyclic: `(A B; B' A)`, `B = CIRC(A4, A5, A6)`, `B' = CIRC(A6, A4, A5)`
//! * transposed: `(A B; B^T A^T)`, `B = CIRC(A4, A5, A6)`
//! * swapped: `(A B; B A)`, `B = REVCIRC(A4, A5, A6)`

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::{screen, Screen};
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::record::{CodeRecord, CodeSource, Provenance};

pub const SEED_BITS: usize = 36;
const BLOCK: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    Circulant,
    ReverseCirculant,
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockKind::Circulant => "circ",
            BlockKind::ReverseCirculant => "revcirc",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Group {
    C6,
    D6,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TauShape {
    /// `(A B; B' A)`.
    Cyclic,
    /// `(A B; B^T A^T)`.
    Transposed,
    /// `(A B; B A)` with `B` block reverse circulant.
    Swapped,
}

/// The six generator families `[I_36 | tau6(v)]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorFamily {
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
}

impl GeneratorFamily {
    pub const ALL: [GeneratorFamily; 6] = [
        GeneratorFamily::G1,
        GeneratorFamily::G2,
        GeneratorFamily::G3,
        GeneratorFamily::G4,
        GeneratorFamily::G5,
        GeneratorFamily::G6,
    ];

    pub fn index(self) -> usize {
        self as usize + 1
    }

    pub fn group(self) -> Group {
        match self {
            GeneratorFamily::G1 | GeneratorFamily::G2 => Group::C6,
            _ => Group::D6,
        }
    }

    pub fn shape(self) -> TauShape {
        match self {
            GeneratorFamily::G1 | GeneratorFamily::G2 => TauShape::Cyclic,
            GeneratorFamily::G3 | GeneratorFamily::G4 => TauShape::Transposed,
            GeneratorFamily::G5 | GeneratorFamily::G6 => TauShape::Swapped,
        }
    }

    pub fn block_kind(self) -> BlockKind {
        if self.index() % 2 == 1 {
            BlockKind::Circulant
        } else {
            BlockKind::ReverseCirculant
        }
    }
}

impl fmt::Display for GeneratorFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G{}", self.index())
    }
}

impl FromStr for GeneratorFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let digit = t
            .strip_prefix('G')
            .or_else(|| t.strip_prefix('g'))
            .ok_or_else(|| Error::Parse(format!("unknown generator family {s:?}")))?;
        match digit {
            "1" => Ok(GeneratorFamily::G1),
            "2" => Ok(GeneratorFamily::G2),
            "3" => Ok(GeneratorFamily::G3),
            "4" => Ok(GeneratorFamily::G4),
            "5" => Ok(GeneratorFamily::G5),
            "6" => Ok(GeneratorFamily::G6),
            _ => Err(Error::Parse(format!("unknown generator family {s:?}"))),
        }
    }
}

/// Thirty-six block bits; `a1` is the most significant bit, and block `Ai`
/// has first row `a(6i-5) .. a(6i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockSeed {
    bits: u64,
    kind: BlockKind,
}

impl BlockSeed {
    pub fn new(bits: u64, kind: BlockKind) -> Result<Self> {
        if bits >> SEED_BITS != 0 {
            return Err(Error::Parse(format!("seed {bits:#x} exceeds 36 bits")));
        }
        Ok(Self { bits, kind })
    }

    /// From six first rows written left to right.
    pub fn from_rows(rows: [[u8; BLOCK]; BLOCK], kind: BlockKind) -> Result<Self> {
        let mut bits = 0u64;
        for row in rows {
            for b in row {
                if b > 1 {
                    return Err(Error::Parse(format!("seed entry {b} is not a bit")));
                }
                bits = (bits << 1) | u64::from(b);
            }
        }
        Self::new(bits, kind)
    }

    pub fn from_hex(hex: &str, kind: BlockKind) -> Result<Self> {
        let v = BitVector::from_hex(SEED_BITS, hex)?;
        let bits = v.iter_ones().fold(0u64, |acc, i| acc | 1 << (SEED_BITS - 1 - i));
        Self::new(bits, kind)
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn kind(&self) -> BlockKind {
        self.kind
    }

    pub fn to_hex(&self) -> String {
        format!("{:09x}", self.bits)
    }

    /// First row of block `A(i+1)` as six bits, coordinate 0 first.
    pub fn row_bits(&self, i: usize) -> [bool; BLOCK] {
        let mut out = [false; BLOCK];
        for (c, slot) in out.iter_mut().enumerate() {
            *slot = (self.bits >> (SEED_BITS - 1 - BLOCK * i - c)) & 1 == 1;
        }
        out
    }

    pub fn row_vector(&self, i: usize) -> BitVector {
        BitVector::from_bools(&self.row_bits(i))
    }

    pub fn blocks(&self) -> Vec<BitMatrix> {
        (0..BLOCK)
            .map(|i| {
                let row = self.row_vector(i);
                match self.kind {
                    BlockKind::Circulant => circ(&row),
                    BlockKind::ReverseCirculant => revcirc(&row),
                }
            })
            .collect()
    }
}

/// Row `i` is the first row shifted `i` places to the right.
pub fn circ(row: &BitVector) -> BitMatrix {
    let rows = (0..row.len()).map(|i| row.rotate_right(i)).collect();
    BitMatrix::from_rows(row.len(), rows).expect("rotations keep the length")
}

/// Row `i` is the first row shifted `i` places to the left.
pub fn revcirc(row: &BitVector) -> BitMatrix {
    let rows = (0..row.len()).map(|i| row.rotate_left(i)).collect();
    BitMatrix::from_rows(row.len(), rows).expect("rotations keep the length")
}

/// Block circulant (`reverse = false`) or block reverse circulant assembly.
pub fn block_circ(blocks: &[BitMatrix], reverse: bool) -> Result<BitMatrix> {
    let m = blocks.len();
    let Some(first) = blocks.first() else {
        return Ok(BitMatrix::empty(0));
    };
    let size = first.nrows();
    if blocks.iter().any(|b| b.nrows() != size || b.ncols() != size) {
        return Err(Error::NonUniformBlocks);
    }
    let index = |i: usize, j: usize| if reverse { (i + j) % m } else { (j + m - i) % m };
    let grid: Vec<Vec<&BitMatrix>> = (0..m)
        .map(|i| (0..m).map(|j| &blocks[index(i, j)]).collect())
        .collect();
    Ok(assemble(&grid))
}

fn assemble(grid: &[Vec<&BitMatrix>]) -> BitMatrix {
    let mut out: Option<BitMatrix> = None;
    for row in grid {
        let mut band = row[0].clone();
        for b in &row[1..] {
            band = band.hconcat(b).expect("grid rows share heights");
        }
        out = Some(match out {
            None => band,
            Some(acc) => acc.vconcat(&band).expect("grid bands share widths"),
        });
    }
    out.unwrap_or_else(|| BitMatrix::empty(0))
}

/// The 36x36 block matrix of the given shape, ignoring the family's kind rule.
pub fn tau6_with_shape(shape: TauShape, seed: &BlockSeed) -> BitMatrix {
    let a = seed.blocks();
    let top = block_circ(&a[0..3], false).expect("uniform 6x6 blocks");
    let (b, lower_left, lower_right) = match shape {
        TauShape::Cyclic => {
            let b = block_circ(&a[3..6], false).expect("uniform 6x6 blocks");
            let b_prime =
                block_circ(&[a[5].clone(), a[3].clone(), a[4].clone()], false).expect("uniform 6x6 blocks");
            (b, b_prime, top.clone())
        }
        TauShape::Transposed => {
            let b = block_circ(&a[3..6], false).expect("uniform 6x6 blocks");
            let bt = b.transpose();
            (b, bt, top.transpose())
        }
        TauShape::Swapped => {
            let b = block_circ(&a[3..6], true).expect("uniform 6x6 blocks");
            (b.clone(), b, top.clone())
        }
    };
    assemble(&[vec![&top, &b], vec![&lower_left, &lower_right]])
}

pub fn tau6(family: GeneratorFamily, seed: &BlockSeed) -> Result<BitMatrix> {
    check_kind(family, seed)?;
    Ok(tau6_with_shape(family.shape(), seed))
}

fn check_kind(family: GeneratorFamily, seed: &BlockSeed) -> Result<()> {
    if seed.kind() != family.block_kind() {
        return Err(Error::KindMismatch {
            family: family.to_string(),
            expected: family.block_kind().to_string(),
        });
    }
    Ok(())
}

/// The code generated by `[I_36 | tau6(v)]`; always of dimension 36.
pub fn build_generator(family: GeneratorFamily, seed: &BlockSeed) -> Result<LinearCode> {
    let tau = tau6(family, seed)?;
    let g = BitMatrix::identity(36).hconcat(&tau)?;
    LinearCode::from_generator(&g)
}

/// `tau6` as 36 packed rows (bit `c` of row `r` is entry `(r, c)`).
///
/// Same matrix as [`tau6_with_shape`], computed entrywise for bulk sampling.
pub fn tau6_words(shape: TauShape, kind: BlockKind, bits: u64) -> [u64; 36] {
    // rows[i][t][r]: row r of block Ai (t = 1: transposed), bit c = column c
    let mut rows = [[[0u64; BLOCK]; 2]; BLOCK];
    for (i, block) in rows.iter_mut().enumerate() {
        let first = (bits >> (SEED_BITS - BLOCK * (i + 1))) & 0x3f;
        for r in 0..BLOCK {
            for c in 0..BLOCK {
                let pos = match kind {
                    BlockKind::Circulant => (c + BLOCK - r) % BLOCK,
                    BlockKind::ReverseCirculant => (r + c) % BLOCK,
                };
                if (first >> (BLOCK - 1 - pos)) & 1 == 1 {
                    block[0][r] |= 1 << c;
                    block[1][c] |= 1 << r;
                }
            }
        }
    }
    // which Ai sits at block (R, C) of the 6x6 block grid, and whether transposed
    let slot = |br: usize, bc: usize| -> (usize, usize) {
        let (top, left) = (br < 3, bc < 3);
        let (r, c) = (br % 3, bc % 3);
        let circ3 = (c + 3 - r) % 3;
        let back3 = (r + 3 - c) % 3;
        match (shape, top, left) {
            (_, true, true) => (circ3, 0),
            (TauShape::Cyclic, false, false) | (TauShape::Swapped, false, false) => (circ3, 0),
            (TauShape::Cyclic, true, false) | (TauShape::Transposed, true, false) => (3 + circ3, 0),
            (TauShape::Cyclic, false, true) => ([5, 3, 4][circ3], 0),
            (TauShape::Swapped, _, _) => (3 + (r + c) % 3, 0),
            (TauShape::Transposed, false, true) => (3 + back3, 1),
            (TauShape::Transposed, false, false) => (back3, 1),
        }
    };
    let mut out = [0u64; 36];
    for br in 0..BLOCK {
        for bc in 0..BLOCK {
            let (i, t) = slot(br, bc);
            for r in 0..BLOCK {
                out[BLOCK * br + r] |= rows[i][t][r] << (BLOCK * bc);
            }
        }
    }
    out
}

/// `tau * tau^T = I` on packed rows, i.e. `[I | tau]` is self-dual.
pub fn rows_orthonormal(rows: &[u64; 36]) -> bool {
    for i in 0..36 {
        if rows[i].count_ones() % 2 != 1 {
            return false;
        }
        for j in i + 1..36 {
            if (rows[i] & rows[j]).count_ones() % 2 == 1 {
                return false;
            }
        }
    }
    true
}

fn generator_from_words(tau: &[u64; 36]) -> BitMatrix {
    let rows = tau
        .iter()
        .enumerate()
        .map(|(i, &t)| BitVector::from_words(72, vec![(1u64 << i) | (t << 36), t >> 28]))
        .collect();
    BitMatrix::from_rows(72, rows).expect("72-bit rows")
}

const SCAN_BATCH: usize = 4096;

fn batch_rng(rng_seed: u64, batch: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    rng.set_stream(batch as u64);
    rng
}

/// How many of `samples` uniformly drawn seeds give a self-dual code.
pub fn self_dual_hits(family: GeneratorFamily, samples: usize, rng_seed: u64) -> usize {
    let batches = samples.div_ceil(SCAN_BATCH);
    (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = batch_rng(rng_seed, b);
            let count = SCAN_BATCH.min(samples - b * SCAN_BATCH);
            (0..count)
                .filter(|_| {
                    let bits = rng.gen::<u64>() >> (64 - SEED_BITS);
                    rows_orthonormal(&tau6_words(family.shape(), family.block_kind(), bits))
                })
                .count()
        })
        .sum()
}

/// Samples seeds uniformly and keeps those giving self-dual codes of minimum
/// distance exactly 12, in sampling order.
pub fn scan_family(family: GeneratorFamily, sample_count: usize, rng_seed: u64) -> Vec<CodeRecord> {
    let batches = sample_count.div_ceil(SCAN_BATCH);
    let found: Vec<Vec<(usize, u64)>> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = batch_rng(rng_seed, b);
            let count = SCAN_BATCH.min(sample_count - b * SCAN_BATCH);
            (0..count)
                .filter_map(|i| {
                    let bits = rng.gen::<u64>() >> (64 - SEED_BITS);
                    let tau = tau6_words(family.shape(), family.block_kind(), bits);
                    rows_orthonormal(&tau).then_some((b * SCAN_BATCH + i, bits))
                })
                .collect()
        })
        .collect();
    let hits: Vec<(u64, u64)> = found
        .into_iter()
        .flatten()
        .map(|(i, bits)| (i as u64, bits))
        .collect();
    certify_seeds(family, &hits)
}

/// Records for the given seeds that give self-dual codes with `d = 12`;
/// each record's discovery ordinal is its position in `seeds`.
pub fn scan_seeds(family: GeneratorFamily, seeds: &[BlockSeed]) -> Result<Vec<CodeRecord>> {
    let mut indexed = Vec::with_capacity(seeds.len());
    for (i, s) in seeds.iter().enumerate() {
        check_kind(family, s)?;
        indexed.push((i as u64, s.bits()));
    }
    Ok(certify_seeds(family, &indexed))
}

fn certify_seeds(family: GeneratorFamily, seeds: &[(u64, u64)]) -> Vec<CodeRecord> {
    seeds
        .par_iter()
        .filter_map(|&(index, bits)| {
            let seed = BlockSeed::new(bits, family.block_kind()).ok()?;
            let tau = tau6_words(family.shape(), family.block_kind(), bits);
            if !rows_orthonormal(&tau) {
                return None;
            }
            let code = LinearCode::from_generator(&generator_from_words(&tau)).ok()?;
            match screen(&code, 12).ok()? {
                Screen::Passed(cert) if cert.min_distance.exact() == Some(12) => {
                    let provenance = Provenance::origin(CodeSource::Seed { family, seed });
                    CodeRecord::from_certificate(&code, &cert, provenance, index).ok()
                }
                _ => None,
            }
        })
        .collect()
}

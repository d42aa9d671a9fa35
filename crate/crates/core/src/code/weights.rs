//! Low-weight codeword counting over two disjoint information sets.
//!
//! For a code of length `2k` whose pivot columns `P` and their complement `Q`
//! are both information sets, every codeword of weight at most `2t` has at
//! most `t` ones on `P` or at most `t` ones on `Q`. Messages of weight `<= t`
//! over the generator that is the identity on `P` give the first kind; the
//! same over the generator that is the identity on `Q`, kept only when the
//! weight on `P` exceeds `t`, give the rest with no overlap.

use rayon::prelude::*;

use super::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::gray::RevolvingDoor;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinDistance {
    Exact(usize),
    /// No nonzero codeword of weight up to and including this value.
    Above(usize),
}

impl MinDistance {
    /// The exact distance, or `bound + 1` as a lower bound.
    pub fn lower_bound(self) -> usize {
        match self {
            MinDistance::Exact(d) => d,
            MinDistance::Above(b) => b + 1,
        }
    }

    pub fn exact(self) -> Option<usize> {
        match self {
            MinDistance::Exact(d) => Some(d),
            MinDistance::Above(_) => None,
        }
    }
}

/// Exact counts `A_w` for `0 < w <= max_weight`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightWindow {
    length: usize,
    max_weight: usize,
    counts: Vec<u64>,
    min_distance: MinDistance,
}

impl WeightWindow {
    pub(crate) fn from_counts(length: usize, max_weight: usize, mut counts: Vec<u64>) -> Self {
        counts.resize(max_weight + 1, 0);
        counts[0] = 0;
        let min_distance = counts
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &c)| c > 0)
            .map_or(MinDistance::Above(max_weight), |(w, _)| MinDistance::Exact(w));
        Self {
            length,
            max_weight,
            counts,
            min_distance,
        }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    /// `A_w`; panics when `w` lies outside the window.
    pub fn count(&self, w: usize) -> u64 {
        assert!(w <= self.max_weight, "weight {w} outside window {}", self.max_weight);
        self.counts[w]
    }

    pub fn min_distance(&self) -> MinDistance {
        self.min_distance
    }

    /// Nonzero `(w, A_w)` pairs in increasing weight order.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts.iter().copied().enumerate().filter(|&(w, c)| w > 0 && c > 0)
    }
}

struct Projection {
    words: usize,
    // k rows of `words` u64 each
    data: Vec<u64>,
}

impl Projection {
    fn new(m: &BitMatrix, columns: &[usize], words: usize) -> Self {
        let proj = m.select_columns(columns);
        let mut data = Vec::with_capacity(proj.nrows() * words);
        for row in proj.rows() {
            let w = row.words();
            data.extend_from_slice(w);
            data.extend(std::iter::repeat_n(0, words - w.len()));
        }
        Self { words, data }
    }
}

#[derive(Clone, Copy)]
struct Task {
    pass: usize,
    size: usize,
    top: usize,
}

/// Counts every codeword of weight `<= 2t` of a code of length `2k` whose
/// pivot complement is an information set (always true for self-dual codes).
pub fn weight_window(code: &LinearCode, t: usize) -> Result<WeightWindow> {
    let n = code.length();
    let k = code.dimension();
    if k == 0 || n != 2 * k {
        return Err(Error::MissingSystematicForm);
    }
    if t > k {
        return Err(Error::WindowTooLarge { t, k });
    }
    let pivots = code.pivots();
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let on_free = code
        .generator()
        .systematic_on(&free)
        .ok_or(Error::MissingSystematicForm)?;

    let words = match k.div_ceil(64) {
        1 => 1,
        2 => 2,
        3 | 4 => 4,
        5..=8 => 8,
        _ => return Err(Error::WindowTooLarge { t, k }),
    };
    let passes = [
        Projection::new(code.generator(), &free, words),
        Projection::new(&on_free, pivots, words),
    ];
    let max_weight = 2 * t;
    // message weight j on the identity part; pass 1 keeps only codewords with
    // more than t ones on the pivot part
    let tasks: Vec<Task> = (0..2)
        .flat_map(|pass| (1..=t).flat_map(move |size| (size - 1..k).map(move |top| Task { pass, size, top })))
        .collect();

    let counts = tasks
        .par_iter()
        .map(|task| {
            let proj = &passes[task.pass];
            let min_other = if task.pass == 0 { 0 } else { t + 1 };
            let mut local = vec![0u64; max_weight + 1];
            match words {
                1 => run_task::<1>(proj, *task, min_other, &mut local),
                2 => run_task::<2>(proj, *task, min_other, &mut local),
                4 => run_task::<4>(proj, *task, min_other, &mut local),
                _ => run_task::<8>(proj, *task, min_other, &mut local),
            }
            local
        })
        .reduce(
            || vec![0u64; max_weight + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(WeightWindow::from_counts(n, max_weight, counts))
}

/// The minimum distance when it is below `floor`, else `None`.
///
/// Same preconditions as [`weight_window`]. Message sizes are taken in
/// increasing order over both information sets; once every message of
/// weight `<= j` is done, every codeword of weight `<= 2j + 1` (and, in an
/// even code, `2j + 2`) has been seen, so the search stops as soon as the
/// lightest word found is certified.
pub fn distance_below(code: &LinearCode, floor: usize) -> Result<Option<usize>> {
    let n = code.length();
    let k = code.dimension();
    if k == 0 || n != 2 * k {
        return Err(Error::MissingSystematicForm);
    }
    let even = code.generator().rows().iter().all(|r| r.weight() % 2 == 0);
    let pivots = code.pivots();
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
    let on_free = code
        .generator()
        .systematic_on(&free)
        .ok_or(Error::MissingSystematicForm)?;
    let words = match k.div_ceil(64) {
        1 => 1,
        2 => 2,
        3 | 4 => 4,
        5..=8 => 8,
        _ => return Err(Error::WindowTooLarge { t: floor, k }),
    };
    let passes = [
        Projection::new(code.generator(), &free, words),
        Projection::new(&on_free, pivots, words),
    ];
    let mut best = usize::MAX;
    for size in 1..=k.min(floor.saturating_sub(1) / 2) {
        let found = (0..2)
            .flat_map(|pass| (size - 1..k).map(move |top| Task { pass, size, top }))
            .collect::<Vec<_>>()
            .par_iter()
            .map(|task| match words {
                1 => min_task::<1>(&passes[task.pass], *task),
                2 => min_task::<2>(&passes[task.pass], *task),
                4 => min_task::<4>(&passes[task.pass], *task),
                _ => min_task::<8>(&passes[task.pass], *task),
            })
            .min()
            .unwrap_or(usize::MAX);
        best = best.min(found);
        let certified = if even { 2 * size + 2 } else { 2 * size + 1 };
        if best <= certified {
            break;
        }
    }
    Ok((best < floor).then_some(best))
}

fn min_task<const W: usize>(proj: &Projection, task: Task) -> usize {
    let row = |i: usize| -> &[u64; W] {
        proj.data[i * W..(i + 1) * W].try_into().expect("row slice has W words")
    };
    let mut acc = *row(task.top);
    let mut door = RevolvingDoor::new(task.top, task.size - 1);
    for &i in door.current() {
        xor_into(&mut acc, row(i));
    }
    let weight = |acc: &[u64; W]| acc.iter().map(|w| w.count_ones() as usize).sum::<usize>();
    let mut best = weight(&acc);
    while let Some((out, inn)) = door.advance() {
        xor_into(&mut acc, row(out));
        xor_into(&mut acc, row(inn));
        best = best.min(weight(&acc));
    }
    task.size + best
}

/// Enumerates every message of weight `task.size` whose highest selected row
/// is `task.top`, tallying codeword weight `size + popcount(projection)`.
fn run_task<const W: usize>(proj: &Projection, task: Task, min_other: usize, counts: &mut [u64]) {
    debug_assert_eq!(proj.words, W);
    let row = |i: usize| -> &[u64; W] {
        proj.data[i * W..(i + 1) * W].try_into().expect("row slice has W words")
    };
    let max_weight = counts.len() - 1;
    let mut acc = *row(task.top);
    let rest = task.size - 1;
    let mut door = RevolvingDoor::new(task.top, rest);
    for &i in door.current() {
        xor_into(&mut acc, row(i));
    }
    let mut tally = |acc: &[u64; W]| {
        let other: usize = acc.iter().map(|w| w.count_ones() as usize).sum();
        if other >= min_other {
            let w = task.size + other;
            if w <= max_weight {
                counts[w] += 1;
            }
        }
    };
    tally(&acc);
    while let Some((out, inn)) = door.advance() {
        xor_into(&mut acc, row(out));
        xor_into(&mut acc, row(inn));
        tally(&acc);
    }
}

#[inline(always)]
fn xor_into<const W: usize>(acc: &mut [u64; W], row: &[u64; W]) {
    for (a, b) in acc.iter_mut().zip(row) {
        *a ^= b;
    }
}

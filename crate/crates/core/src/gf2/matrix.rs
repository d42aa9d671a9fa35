use std::fmt;

use super::BitVector;
use crate::error::{Error, Result};

/// A dense GF(2) matrix stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

/// Reduced row echelon form together with its rank and pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    /// Same shape as the input; the first `rank` rows are nonzero.
    pub matrix: BitMatrix,
    pub rank: usize,
    /// Strictly increasing; `pivots[i]` is the leading column of row `i`.
    pub pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    /// An empty (zero-row) matrix with the given width.
    pub fn empty(cols: usize) -> Self {
        Self { cols, rows: Vec::new() }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch {
                left: cols,
                right: bad.len(),
            });
        }
        Ok(Self { cols, rows })
    }

    /// Parse rows of `0`/`1` characters. Blank lines and `#` comments are skipped.
    pub fn from_binary_rows(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(BitVector::from_binary_str)
            .collect::<Result<Vec<_>>>()?;
        let cols = rows.first().map_or(0, BitVector::len);
        Self::from_rows(cols, rows)
    }

    pub fn from_hex_rows<S: AsRef<str>>(cols: usize, rows: &[S]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| BitVector::from_hex(cols, r.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(cols, rows)
    }

    pub fn to_hex_rows(&self) -> Vec<String> {
        self.rows.iter().map(BitVector::to_hex).collect()
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    pub fn push_row(&mut self, row: BitVector) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::LengthMismatch {
                left: self.cols,
                right: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.iter_ones() {
                out.rows[j].set(i, true);
            }
        }
        out
    }

    /// GF(2) product `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.nrows() {
            return Err(Error::DimensionMismatch {
                left_rows: self.nrows(),
                left_cols: self.cols,
                right_rows: other.nrows(),
                right_cols: other.cols,
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = BitVector::zeros(other.cols);
                for j in r.iter_ones() {
                    acc.xor_assign(&other.rows[j]);
                }
                acc
            })
            .collect();
        Ok(Self { cols: other.cols, rows })
    }

    /// `self * other^T`, i.e. the matrix of inner products of rows.
    pub fn mul_transpose(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::LengthMismatch {
                left: self.cols,
                right: other.cols,
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|a| {
                let mut out = BitVector::zeros(other.nrows());
                for (j, b) in other.rows.iter().enumerate() {
                    if a.dot_unchecked(b) {
                        out.set(j, true);
                    }
                }
                out
            })
            .collect();
        Ok(Self {
            cols: other.nrows(),
            rows,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.nrows() != other.nrows() || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                left_rows: self.nrows(),
                left_cols: self.cols,
                right_rows: other.nrows(),
                right_cols: other.cols,
            });
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut r = a.clone();
                r.xor_assign(b);
                r
            })
            .collect();
        Ok(Self { cols: self.cols, rows })
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &Self) -> Result<Self> {
        if self.nrows() != other.nrows() {
            return Err(Error::LengthMismatch {
                left: self.nrows(),
                right: other.nrows(),
            });
        }
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a.concat(b)).collect();
        Ok(Self {
            cols: self.cols + other.cols,
            rows,
        })
    }

    /// `self` stacked above `other`.
    pub fn vconcat(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::LengthMismatch {
                left: self.cols,
                right: other.cols,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Self { cols: self.cols, rows })
    }

    /// The submatrix on the given columns, in the given order.
    pub fn select_columns(&self, columns: &[usize]) -> Self {
        Self {
            cols: columns.len(),
            rows: self.rows.iter().map(|r| r.select(columns)).collect(),
        }
    }

    pub fn rref(&self) -> Rref {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == rows.len() {
                break;
            }
            let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, p);
            let (head, tail) = rows.split_at_mut(rank + 1);
            let (above, pivot) = head.split_at_mut(rank);
            let pivot = &pivot[0];
            for r in above.iter_mut() {
                if r.get(col) {
                    r.xor_assign(pivot);
                }
            }
            for r in tail.iter_mut() {
                if r.get(col) {
                    r.xor_assign(pivot);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        Rref {
            matrix: Self { cols: self.cols, rows },
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{x : self * x = 0}`, one row per free column, in increasing
    /// free-column order.
    pub fn nullspace(&self) -> Self {
        let Rref { matrix, rank, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let rows = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVector::unit(self.cols, f);
                for (i, &p) in pivots.iter().enumerate().take(rank) {
                    if matrix.get(i, f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        Self { cols: self.cols, rows }
    }

    /// Row operations that turn the given `columns` into an identity block,
    /// so row `i` has a one in `columns[i]` and zero in the other listed
    /// columns. `None` if those columns are not independent on the row space
    /// or the row count differs from `columns.len()`.
    pub fn systematic_on(&self, columns: &[usize]) -> Option<Self> {
        if columns.len() != self.nrows() {
            return None;
        }
        let mut rows = self.rows.clone();
        for (target, &col) in columns.iter().enumerate() {
            let p = (target..rows.len()).find(|&r| rows[r].get(col))?;
            rows.swap(target, p);
            let pivot = rows[target].clone();
            for (i, r) in rows.iter_mut().enumerate() {
                if i != target && r.get(col) {
                    r.xor_assign(&pivot);
                }
            }
        }
        Some(Self { cols: self.cols, rows })
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.nrows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[&str]) -> BitMatrix {
        BitMatrix::from_binary_rows(&rows.join("\n")).unwrap()
    }

    /// Unpacked Gaussian elimination used as an independent reference.
    fn naive_rref(a: &[Vec<bool>]) -> (Vec<Vec<bool>>, usize, Vec<usize>) {
        let mut a = a.to_vec();
        let cols = a.first().map_or(0, Vec::len);
        let mut r = 0;
        let mut pivots = vec![];
        for c in 0..cols {
            if r == a.len() {
                break;
            }
            if let Some(p) = (r..a.len()).find(|&i| a[i][c]) {
                a.swap(r, p);
                for i in 0..a.len() {
                    if i != r && a[i][c] {
                        for j in 0..cols {
                            let v = a[r][j];
                            a[i][j] ^= v;
                        }
                    }
                }
                pivots.push(c);
                r += 1;
            }
        }
        (a, r, pivots)
    }

    fn to_bools(mat: &BitMatrix) -> Vec<Vec<bool>> {
        (0..mat.nrows())
            .map(|i| (0..mat.ncols()).map(|j| mat.get(i, j)).collect())
            .collect()
    }

    fn from_bools(cols: usize, a: &[Vec<bool>]) -> BitMatrix {
        BitMatrix::from_rows(cols, a.iter().map(|r| BitVector::from_bools(r)).collect()).unwrap()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> BitMatrix {
        let data: Vec<Vec<bool>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen()).collect()).collect();
        from_bools(cols, &data)
    }

    #[test]
    fn rref_examples() {
        let i4 = BitMatrix::identity(4);
        let r = i4.rref();
        assert_eq!(r.matrix, i4);
        assert_eq!(r.rank, 4);
        assert_eq!(r.pivots, vec![0, 1, 2, 3]);

        let r = m(&["11", "11"]).rref();
        assert_eq!(r.matrix, m(&["11", "00"]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn rref_rank_matches_naive_on_36_by_72() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let a = random_matrix(&mut rng, 36, 72);
            let (_, rank, _) = naive_rref(&to_bools(&a));
            assert_eq!(a.rank(), rank);
        }
    }

    #[test]
    fn degenerate_shapes() {
        let e = BitMatrix::empty(5);
        assert_eq!(e.rank(), 0);
        assert_eq!(e.nullspace(), BitMatrix::identity(5));
        let z = BitMatrix::zeros(3, 0);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.nullspace().nrows(), 0);
        assert_eq!(z.transpose().nrows(), 0);
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(BitMatrix::identity(5).nullspace().nrows(), 0);
        assert_eq!(m(&["11"]).nullspace(), m(&["11"]));

        // [I | A] has nullspace row-equivalent to [A^T | I].
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let a = random_matrix(&mut rng, 6, 9);
            let g = BitMatrix::identity(6).hconcat(&a).unwrap();
            let ns = g.nullspace();
            assert!(g.mul_transpose(&ns).unwrap().is_zero());
            let expected = a.transpose().hconcat(&BitMatrix::identity(9)).unwrap();
            assert_eq!(ns.rref().matrix, expected.rref().matrix);
            let (_, r, _) = naive_rref(&to_bools(&ns));
            assert_eq!(r, 9);
        }
    }

    #[test]
    fn matmul_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random_matrix(&mut rng, 5, 7);
        assert_eq!(a.matmul(&BitMatrix::identity(7)).unwrap(), a);
        assert!(a.matmul(&a).is_err());

        // The cyclic shift by one has order 6.
        let mut p = BitMatrix::zeros(6, 6);
        for i in 0..6 {
            p.set(i, (i + 1) % 6, true);
        }
        let mut acc = BitMatrix::identity(6);
        for _ in 0..6 {
            acc = acc.matmul(&p).unwrap();
        }
        assert_eq!(acc, BitMatrix::identity(6));

        // [I|A][I|A]^T = I + A A^T
        let sq = random_matrix(&mut rng, 6, 6);
        let g = BitMatrix::identity(6).hconcat(&sq).unwrap();
        let lhs = g.mul_transpose(&g).unwrap();
        let rhs = BitMatrix::identity(6)
            .add(&sq.matmul(&sq.transpose()).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn systematic_on_columns() {
        let g = m(&["1100", "0011"]);
        let s = g.systematic_on(&[1, 3]).unwrap();
        assert_eq!(s.select_columns(&[1, 3]), BitMatrix::identity(2));
        assert!(g.systematic_on(&[0, 1]).is_none());
    }

    fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = (usize, Vec<Vec<bool>>)> {
        (0..=max_rows, 0..=max_cols).prop_flat_map(|(r, c)| {
            (
                Just(c),
                proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn rref_matches_naive((cols, a) in arb_matrix(12, 80)) {
            let mat = from_bools(cols, &a);
            let r = mat.rref();
            let (na, nrank, npiv) = naive_rref(&a);
            prop_assert_eq!(r.rank, nrank);
            prop_assert_eq!(&r.pivots, &npiv);
            prop_assert_eq!(to_bools(&r.matrix), na);
            prop_assert!(r.rank <= mat.nrows().min(mat.ncols()));
            prop_assert_eq!(r.matrix.rref().matrix, r.matrix.clone());
        }

        #[test]
        fn matmul_matches_naive(
            (k, a) in arb_matrix(10, 20),
            seed in any::<u64>(),
        ) {
            let left = from_bools(k, &a);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = rng.gen_range(0..12);
            let right = random_matrix(&mut rng, k, s);
            let prod = left.matmul(&right).unwrap();
            let rb = to_bools(&right);
            for (i, row) in a.iter().enumerate() {
                for j in 0..s {
                    let v = (0..k).filter(|&t| row[t] && rb[t][j]).count() % 2 == 1;
                    prop_assert_eq!(prod.get(i, j), v);
                }
            }
        }

        #[test]
        fn nullspace_dimension_theorem((cols, a) in arb_matrix(40, 72)) {
            let mat = from_bools(cols, &a);
            let ns = mat.nullspace();
            prop_assert_eq!(mat.rank() + ns.nrows(), cols);
            prop_assert!(mat.mul_transpose(&ns).unwrap().is_zero());
            prop_assert_eq!(ns.rank(), ns.nrows());
        }

        #[test]
        fn transpose_involution((cols, a) in arb_matrix(20, 70)) {
            let mat = from_bools(cols, &a);
            prop_assert_eq!(mat.transpose().transpose(), mat);
        }
    }
}

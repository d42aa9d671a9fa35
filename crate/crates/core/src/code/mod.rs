//! Linear codes over GF(2): duals, self-duality, partial weight
//! distributions and the length-72 weight-enumerator parameters.

mod enumerator;
mod weights;

pub use enumerator::{
    classify_type, enumerator_params, extremal_bound, CodeType, EnumeratorFamily, EnumeratorParams,
};
pub use weights::{distance_below, weight_window, MinDistance, WeightWindow};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// A binary linear code, stored by its RREF generator.
///
/// Two codes are equal exactly when their RREF generators agree, which makes
/// the hex fingerprint a canonical identity for the row space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearCode {
    n: usize,
    k: usize,
    generator: BitMatrix,
    pivots: Vec<usize>,
    systematic_left: Option<BitMatrix>,
    systematic_right: Option<BitMatrix>,
}

impl LinearCode {
    /// The row space of `generator`. Rejects generators of rank zero.
    pub fn from_generator(generator: &BitMatrix) -> Result<Self> {
        let code = Self::from_rows_allow_zero(generator);
        if code.k == 0 {
            return Err(Error::EmptyCode);
        }
        Ok(code)
    }

    /// The zero code `{0}` of length `n`.
    pub fn zero_code(n: usize) -> Self {
        Self::from_rows_allow_zero(&BitMatrix::empty(n))
    }

    fn from_rows_allow_zero(generator: &BitMatrix) -> Self {
        let n = generator.ncols();
        let rref = generator.rref();
        let k = rref.rank;
        let rows: Vec<BitVector> = rref.matrix.into_rows().into_iter().take(k).collect();
        let generator = BitMatrix::from_rows(n, rows).expect("rows share the width");
        let systematic_left = (k > 0 && rref.pivots.iter().copied().eq(0..k)).then(|| generator.clone());
        let systematic_right = if k > 0 && k <= n {
            let right: Vec<usize> = (n - k..n).collect();
            generator.systematic_on(&right)
        } else {
            None
        };
        Self {
            n,
            k,
            generator,
            pivots: rref.pivots,
            systematic_left,
            systematic_right,
        }
    }

    #[inline]
    pub fn length(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dimension(&self) -> usize {
        self.k
    }

    /// RREF generator, `k` rows.
    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `[I_k | A]` when the first `k` coordinates form an information set.
    pub fn systematic_left(&self) -> Option<&BitMatrix> {
        self.systematic_left.as_ref()
    }

    /// `[B | I_k]` when the last `k` coordinates form an information set.
    pub fn systematic_right(&self) -> Option<&BitMatrix> {
        self.systematic_right.as_ref()
    }

    /// Hex rows of the RREF generator joined by commas.
    pub fn fingerprint(&self) -> String {
        self.generator.to_hex_rows().join(",")
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        if v.len() != self.n {
            return false;
        }
        let mut r = v.clone();
        for (row, &p) in self.generator.rows().iter().zip(&self.pivots) {
            if r.get(p) {
                r.xor_assign(row);
            }
        }
        r.is_zero()
    }

    pub fn dual(&self) -> Self {
        let basis = self.generator.nullspace();
        Self::from_rows_allow_zero(&basis)
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.generator
            .mul_transpose(&self.generator)
            .map(|g| g.is_zero())
            .unwrap_or(false)
    }

    /// `n = 2k` and every pair of generator rows is orthogonal.
    pub fn is_self_dual(&self) -> bool {
        self.n == 2 * self.k && self.is_self_orthogonal()
    }

    /// Calls `f` on every codeword. Exponential in `k`; intended for small codes.
    pub fn for_each_codeword(&self, mut f: impl FnMut(&BitVector)) {
        assert!(self.k < 32, "exhaustive enumeration of 2^{} codewords", self.k);
        let mut acc = BitVector::zeros(self.n);
        f(&acc);
        // binary reflected Gray code over all messages
        for i in 1u64..(1u64 << self.k) {
            let bit = i.trailing_zeros() as usize;
            acc.xor_assign(self.generator.row(bit));
            f(&acc);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[&str]) -> BitMatrix {
        BitMatrix::from_binary_rows(&rows.join("\n")).unwrap()
    }

    #[test]
    fn from_generator_examples() {
        let rep = LinearCode::from_generator(&m(&["11"])).unwrap();
        assert_eq!((rep.length(), rep.dimension()), (2, 1));
        assert!(matches!(
            LinearCode::from_generator(&BitMatrix::zeros(3, 4)),
            Err(Error::EmptyCode)
        ));
        let dup = LinearCode::from_generator(&m(&["1010", "1010", "0110"])).unwrap();
        assert_eq!(dup.dimension(), 2);
    }

    #[test]
    fn systematic_forms() {
        let c = LinearCode::from_generator(&m(&["1100", "0011"])).unwrap();
        assert!(c.systematic_left().is_none());
        assert!(c.systematic_right().is_none());
        let c = LinearCode::from_generator(&m(&["1001", "0110"])).unwrap();
        assert_eq!(c.systematic_left().unwrap(), c.generator());
        let right = c.systematic_right().unwrap();
        assert_eq!(right.select_columns(&[2, 3]), BitMatrix::identity(2));
        assert_eq!(LinearCode::from_generator(right).unwrap(), c);
    }

    #[test]
    fn dual_examples() {
        let rep = LinearCode::from_generator(&m(&["11"])).unwrap();
        assert_eq!(rep.dual(), rep);
        let full = LinearCode::from_generator(&BitMatrix::identity(5)).unwrap();
        let zero = full.dual();
        assert_eq!(zero, LinearCode::zero_code(5));
        assert_eq!(zero.dual(), full);
    }

    #[test]
    fn dual_of_orthogonal_systematic_code() {
        // A = a permutation matrix satisfies A A^T = I.
        let mut a = BitMatrix::zeros(4, 4);
        for (i, j) in [(0, 2), (1, 0), (2, 3), (3, 1)] {
            a.set(i, j, true);
        }
        let g = BitMatrix::identity(4).hconcat(&a).unwrap();
        let c = LinearCode::from_generator(&g).unwrap();
        let d = c.dual();
        assert_eq!(d.dimension(), 4);
        assert!(c.generator().mul_transpose(d.generator()).unwrap().is_zero());
        let expected = a.transpose().hconcat(&BitMatrix::identity(4)).unwrap();
        assert_eq!(d, LinearCode::from_generator(&expected).unwrap());
        assert!(c.is_self_dual());
    }

    #[test]
    fn self_duality_examples() {
        assert!(LinearCode::from_generator(&m(&["11"])).unwrap().is_self_dual());
        assert!(!LinearCode::from_generator(&m(&["111"])).unwrap().is_self_dual());
        assert!(!LinearCode::from_generator(&m(&["1100"])).unwrap().is_self_dual());
    }

    #[test]
    fn dual_involution_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.gen_range(1..=40);
            let r = rng.gen_range(1..=n);
            let rows = (0..r)
                .map(|_| BitVector::from_words(n, vec![rng.gen(), rng.gen()]))
                .collect();
            let g = BitMatrix::from_rows(n, rows).unwrap();
            let Ok(c) = LinearCode::from_generator(&g) else {
                continue;
            };
            assert_eq!(c.dual().dual(), c);
            assert_eq!(c.dual().dimension(), n - c.dimension());
        }
    }

    #[test]
    fn membership() {
        let c = LinearCode::from_generator(&m(&["1100", "0011"])).unwrap();
        assert!(c.contains(&BitVector::from_binary_str("1111").unwrap()));
        assert!(!c.contains(&BitVector::from_binary_str("1010").unwrap()));
        let mut count = 0;
        c.for_each_codeword(|_| count += 1);
        assert_eq!(count, 4);
    }
}

//! Bit-packed GF(2) vectors and incremental Gaussian elimination.
//!
//! Vectors are stored as packed 64-bit words: coordinate `k` lives in word
//! `k / 64`, bit `k % 64`. [`EchelonBasis`] maintains a set of independent
//! vectors in reduced row-echelon form so that rank and span-membership
//! queries are a handful of XORs. Elimination always uses the lowest-index
//! pivot first, which makes every result deterministic.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum F2Error {
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Vector {
    len: usize,
    words: Vec<u64>,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    /// Unit vector with a single 1 at coordinate `k`.
    pub fn unit(len: usize, k: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(k);
        v
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut v = Self::zeros(len);
        for k in indices {
            v.toggle(k);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn get(&self, k: usize) -> bool {
        assert!(k < self.len, "coordinate {k} out of range 0..{}", self.len);
        (self.words[k / 64] >> (k % 64)) & 1 == 1
    }

    pub fn set(&mut self, k: usize) {
        assert!(k < self.len, "coordinate {k} out of range 0..{}", self.len);
        self.words[k / 64] |= 1 << (k % 64);
    }

    pub fn toggle(&mut self, k: usize) {
        assert!(k < self.len, "coordinate {k} out of range 0..{}", self.len);
        self.words[k / 64] ^= 1 << (k % 64);
    }

    /// In-place XOR. Panics on length mismatch; the fallible entry points are
    /// the [`EchelonBasis`] operations.
    pub fn xor_assign(&mut self, other: &F2Vector) {
        assert_eq!(self.len, other.len, "xor of vectors of different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Index of the lowest set coordinate, or `None` for the zero vector.
    pub fn lowest_set_bit(&self) -> Option<usize> {
        for (w, word) in self.words.iter().enumerate() {
            if *word != 0 {
                return Some(w * 64 + word.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Vector[")?;
        for k in 0..self.len {
            write!(f, "{}", u8::from(self.get(k)))?;
        }
        write!(f, "]")
    }
}

/// An independent set of GF(2) vectors kept in reduced row-echelon form.
///
/// `rows[k]` has its lowest set coordinate at `pivots[k]`, pivots are strictly
/// increasing, and no row has a set bit at another row's pivot.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    len: usize,
    rows: Vec<F2Vector>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[F2Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_len(&self, v: &F2Vector) -> Result<(), F2Error> {
        if v.len() != self.len {
            return Err(F2Error::DimensionMismatch {
                expected: self.len,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Residual of `v` after XOR-elimination against all rows. Zero iff
    /// `v` lies in the span of the basis.
    pub fn reduce(&self, v: &F2Vector) -> Result<F2Vector, F2Error> {
        self.check_len(v)?;
        let mut residual = v.clone();
        for (row, &pivot) in self.rows.iter().zip(&self.pivots) {
            if residual.get(pivot) {
                residual.xor_assign(row);
            }
        }
        Ok(residual)
    }

    pub fn contains(&self, v: &F2Vector) -> Result<bool, F2Error> {
        Ok(self.reduce(v)?.is_zero())
    }

    /// Inserts the residual of `v` if it is independent of the basis.
    /// Returns `true` iff the rank grew.
    pub fn insert(&mut self, v: &F2Vector) -> Result<bool, F2Error> {
        let residual = self.reduce(v)?;
        let Some(pivot) = residual.lowest_set_bit() else {
            return Ok(false);
        };
        // Keep the form reduced: clear the new pivot column in existing rows.
        for row in &mut self.rows {
            if row.get(pivot) {
                row.xor_assign(&residual);
            }
        }
        let pos = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(pos, pivot);
        self.rows.insert(pos, residual);
        Ok(true)
    }
}

/// Rank of the subspace spanned by `vectors`. Errors on mixed lengths.
pub fn rank(vectors: &[F2Vector]) -> Result<usize, F2Error> {
    let Some(first) = vectors.first() else {
        return Ok(0);
    };
    let mut basis = EchelonBasis::new(first.len());
    for v in vectors {
        basis.insert(v)?;
    }
    Ok(basis.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_against_empty_basis_is_identity() {
        let basis = EchelonBasis::new(10);
        let v = F2Vector::from_indices(10, [1, 4, 7]);
        assert_eq!(basis.reduce(&v).unwrap(), v);
    }

    #[test]
    fn reduce_of_member_is_zero() {
        let mut basis = EchelonBasis::new(6);
        let v = F2Vector::from_indices(6, [2, 5]);
        assert!(basis.insert(&v).unwrap());
        assert!(basis.reduce(&v).unwrap().is_zero());
    }

    #[test]
    fn span_membership_via_combination() {
        // basis {e1, e1 + e2} spans e2
        let mut basis = EchelonBasis::new(4);
        basis.insert(&F2Vector::unit(4, 0)).unwrap();
        basis.insert(&F2Vector::from_indices(4, [0, 1])).unwrap();
        assert!(basis.reduce(&F2Vector::unit(4, 1)).unwrap().is_zero());
        // oracle: the span of {e1, e1+e2} is exactly {0, e1, e2, e1+e2}
        let span = [
            F2Vector::zeros(4),
            F2Vector::unit(4, 0),
            F2Vector::unit(4, 1),
            F2Vector::from_indices(4, [0, 1]),
        ];
        for v in &span {
            assert!(basis.contains(v).unwrap(), "{v:?} should be in the span");
        }
        assert!(!basis.contains(&F2Vector::unit(4, 2)).unwrap());
    }

    #[test]
    fn zero_vector_never_inserted() {
        let mut basis = EchelonBasis::new(5);
        assert!(!basis.insert(&F2Vector::zeros(5)).unwrap());
        assert_eq!(basis.rank(), 0);
    }

    #[test]
    fn unit_vector_insert() {
        let mut basis = EchelonBasis::new(5);
        assert!(basis.insert(&F2Vector::unit(5, 3)).unwrap());
        assert_eq!(basis.rank(), 1);
        assert_eq!(basis.pivots(), &[3]);
    }

    #[test]
    fn all_unit_vectors_give_full_rank() {
        let n = 6;
        let dim = n * (n - 1) / 2; // C(n,2) coordinates
        let mut basis = EchelonBasis::new(dim);
        for k in 0..dim {
            assert!(basis.insert(&F2Vector::unit(dim, k)).unwrap());
        }
        assert_eq!(basis.rank(), dim);
    }

    #[test]
    fn rank_of_empty_and_duplicates() {
        assert_eq!(rank(&[]).unwrap(), 0);
        let v = F2Vector::from_indices(8, [1, 3]);
        assert_eq!(rank(&[v.clone(), v]).unwrap(), 1);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let mut basis = EchelonBasis::new(8);
        let v = F2Vector::zeros(9);
        assert_eq!(
            basis.reduce(&v),
            Err(F2Error::DimensionMismatch {
                expected: 8,
                got: 9
            })
        );
        assert!(basis.insert(&v).is_err());
        assert!(rank(&[F2Vector::zeros(3), F2Vector::zeros(4)]).is_err());
    }

    #[test]
    fn echelon_invariants_hold_after_inserts() {
        let mut basis = EchelonBasis::new(16);
        let vs = [
            F2Vector::from_indices(16, [3, 7, 11]),
            F2Vector::from_indices(16, [3, 5]),
            F2Vector::from_indices(16, [5, 7, 11]),
            F2Vector::from_indices(16, [0, 3, 5, 7]),
        ];
        for v in &vs {
            basis.insert(v).unwrap();
        }
        assert_eq!(basis.rank(), 3); // vs[2] = vs[0] + vs[1]
        for (k, row) in basis.rows().iter().enumerate() {
            assert_eq!(row.lowest_set_bit(), Some(basis.pivots()[k]));
            for (l, other) in basis.rows().iter().enumerate() {
                if k != l {
                    assert!(!other.get(basis.pivots()[k]));
                }
            }
        }
    }
}

//! The Bott matrix data model and its purely combinatorial invariants.
//!
//! A Bott matrix is a strictly upper-triangular n×n matrix over GF(2). Rows
//! are stored as bit masks (bit `j-1` of `rows[i-1]` is the entry a_ij), so
//! row parities, row scalar products and column comparisons are single
//! machine-word operations.
//!
//! Indices in the public API are 1-based, matching the usual notation
//! a_ij, A^(j) (column j), A_(i) (row i).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest supported dimension for matrix-level operations.
pub const MAX_DIM: usize = 64;
/// Smallest supported dimension.
pub const MIN_DIM: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty matrix")]
    Empty,
    #[error("line {line}: expected {expected} entries, found {found}")]
    Shape {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}, column {col}: invalid token {token:?}, expected 0 or 1")]
    Token {
        line: usize,
        col: usize,
        token: String,
    },
    #[error("line {line}, column {col}: nonzero entry on or below the diagonal")]
    Triangularity { line: usize, col: usize },
    #[error("dimension {n} outside supported range {MIN_DIM}..={MAX_DIM}")]
    Dimension { n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("indices ({i}, {j}) do not satisfy i < j")]
    BadIndexPair { i: usize, j: usize },
    #[error("matrix is not orientable")]
    NotOrientable,
    #[error("operation requires dimension 5, got {n}")]
    DimensionNot5 { n: usize },
    #[error("row {row} has a nonzero entry on or below the diagonal")]
    NotTriangular { row: usize },
    #[error("dimension {n} outside supported range {MIN_DIM}..={MAX_DIM}")]
    Dimension { n: usize },
}

/// A strictly upper-triangular matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BottMatrix {
    n: usize,
    rows: Vec<u64>,
}

impl BottMatrix {
    pub fn zero(n: usize) -> Result<Self, MatrixError> {
        if !(MIN_DIM..=MAX_DIM).contains(&n) {
            return Err(MatrixError::Dimension { n });
        }
        Ok(Self {
            n,
            rows: vec![0; n],
        })
    }

    /// Builds a matrix from row masks; bit `j-1` of `rows[i-1]` is a_ij.
    pub fn from_rows(n: usize, rows: &[u64]) -> Result<Self, MatrixError> {
        let mut m = Self::zero(n)?;
        if rows.len() != n {
            return Err(MatrixError::Dimension { n: rows.len() });
        }
        for (i, &row) in rows.iter().enumerate() {
            // bits at columns <= i+1 (positions 0..=i) or beyond n must be clear
            let allowed = if i + 1 < 64 {
                (mask_n(n)) & !((1u64 << (i + 1)) - 1)
            } else {
                0
            };
            if row & !allowed != 0 {
                return Err(MatrixError::NotTriangular { row: i + 1 });
            }
            m.rows[i] = row;
        }
        Ok(m)
    }

    /// Parses the matrix text format: n lines of n tokens from {0,1},
    /// whitespace separated; lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut rows: Vec<(usize, Vec<bool>)> = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut entries = Vec::new();
            for (col, token) in trimmed.split_whitespace().enumerate() {
                match token {
                    "0" => entries.push(false),
                    "1" => entries.push(true),
                    _ => {
                        return Err(ParseError::Token {
                            line: idx + 1,
                            col: col + 1,
                            token: token.to_string(),
                        })
                    }
                }
            }
            rows.push((idx + 1, entries));
        }
        let n = rows.len();
        if n == 0 {
            return Err(ParseError::Empty);
        }
        if !(MIN_DIM..=MAX_DIM).contains(&n) {
            return Err(ParseError::Dimension { n });
        }
        let mut m = Self {
            n,
            rows: vec![0; n],
        };
        for (i, (line, entries)) in rows.iter().enumerate() {
            if entries.len() != n {
                return Err(ParseError::Shape {
                    line: *line,
                    expected: n,
                    found: entries.len(),
                });
            }
            for (j, &one) in entries.iter().enumerate() {
                if one {
                    if j <= i {
                        return Err(ParseError::Triangularity {
                            line: *line,
                            col: j + 1,
                        });
                    }
                    m.rows[i] |= 1 << j;
                }
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry a_ij (1-based).
    pub fn entry(&self, i: usize, j: usize) -> bool {
        assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        (self.rows[i - 1] >> (j - 1)) & 1 == 1
    }

    /// Row A_(i) as a bit mask (bit `j-1` is a_ij).
    pub fn row_mask(&self, i: usize) -> Result<u64, MatrixError> {
        self.check_index(i)?;
        Ok(self.rows[i - 1])
    }

    /// Column A^(j) as a bit mask (bit `i-1` is a_ij).
    pub fn column(&self, j: usize) -> Result<u64, MatrixError> {
        self.check_index(j)?;
        let mut col = 0u64;
        for i in 0..j - 1 {
            col |= ((self.rows[i] >> (j - 1)) & 1) << i;
        }
        Ok(col)
    }

    /// All n column masks.
    pub fn columns(&self) -> Vec<u64> {
        let mut cols = vec![0u64; self.n];
        for (i, &row) in self.rows.iter().enumerate() {
            let mut r = row;
            while r != 0 {
                let j = r.trailing_zeros() as usize;
                cols[j] |= 1 << i;
                r &= r - 1;
            }
        }
        cols
    }

    fn check_index(&self, k: usize) -> Result<(), MatrixError> {
        if !(1..=self.n).contains(&k) {
            return Err(MatrixError::IndexOutOfRange {
                index: k,
                n: self.n,
            });
        }
        Ok(())
    }

    pub fn ensure_orientable(&self) -> Result<(), MatrixError> {
        if self.is_orientable() {
            Ok(())
        } else {
            Err(MatrixError::NotOrientable)
        }
    }

    /// True iff every row has an even number of 1's.
    pub fn is_orientable(&self) -> bool {
        self.rows.iter().all(|r| r.count_ones() % 2 == 0)
    }

    /// First Betti number: the number of zero columns.
    pub fn betti1(&self) -> usize {
        self.columns().iter().filter(|&&c| c == 0).count()
    }

    /// Second Betti number: the number of pairs of equal columns.
    pub fn betti2(&self) -> usize {
        let cols = self.columns();
        let mut count = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if cols[i] == cols[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Scalar product of rows k and l over GF(2).
    pub fn row_dot(&self, k: usize, l: usize) -> Result<bool, MatrixError> {
        self.check_index(k)?;
        self.check_index(l)?;
        Ok((self.rows[k - 1] & self.rows[l - 1]).count_ones() % 2 == 1)
    }

    /// The derived matrix A': for i < j, the entry is 0 when the columns
    /// A^(i) and A^(j) are equal, and the row scalar product otherwise.
    pub fn derived(&self) -> Result<BottMatrix, MatrixError> {
        self.ensure_orientable()?;
        let cols = self.columns();
        let mut out = vec![0u64; self.n];
        for i in 0..self.n {
            for j in i + 1..self.n {
                if cols[i] != cols[j] && (self.rows[i] & self.rows[j]).count_ones() % 2 == 1 {
                    out[i] |= 1 << j;
                }
            }
        }
        Ok(Self {
            n: self.n,
            rows: out,
        })
    }

    /// Column criterion for spin^c: every column j with 3 <= j <= n-2 of the
    /// derived matrix is zero or equals the corresponding column of A.
    /// Vacuously true when n <= 4.
    pub fn has_spinc_combinatorial(&self) -> Result<bool, MatrixError> {
        let derived = self.derived()?;
        if self.n <= 4 {
            return Ok(true);
        }
        let cols = self.columns();
        let dcols = derived.columns();
        for j in 3..=self.n - 2 {
            if dcols[j - 1] != 0 && dcols[j - 1] != cols[j - 1] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Closed-form spin^c test for n = 5: row 3 is zero, or a_12 = 0,
    /// or a_23 = 0.
    pub fn has_spinc_dim5_corollary(&self) -> Result<bool, MatrixError> {
        if self.n != 5 {
            return Err(MatrixError::DimensionNot5 { n: self.n });
        }
        self.ensure_orientable()?;
        Ok(self.rows[2] == 0 || !self.entry(1, 2) || !self.entry(2, 3))
    }

    /// Structure of H_1, H^2(·, Z) and the dimension of the reduction image.
    pub fn homology(&self) -> Homology {
        let b1 = self.betti1();
        let b2 = self.betti2();
        Homology {
            h1_torsion_rank: self.n - b1,
            h1_free_rank: b1,
            h2_torsion_rank: self.n - b1,
            h2_free_rank: b2,
            dim_img_rho2: self.n - b1 + b2,
        }
    }
}

/// H_1 = (Z/2)^(n-b1) ⊕ Z^b1, H^2(·,Z) = (Z/2)^(n-b1) ⊕ Z^b2, and
/// dim img ρ⁽²⁾ = n - b1 + b2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Homology {
    pub h1_torsion_rank: usize,
    pub h1_free_rank: usize,
    pub h2_torsion_rank: usize,
    pub h2_free_rank: usize,
    pub dim_img_rho2: usize,
}

fn mask_n(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl fmt::Display for BottMatrix {
    /// Canonical text form: n lines of n single-space separated 0/1 tokens.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.n {
            for j in 1..=self.n {
                if j > 1 {
                    write!(f, " ")?;
                }
                write!(f, "{}", u8::from(self.entry(i, j)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BottMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BottMatrix(n={})", self.n)?;
        write!(f, "{self}")
    }
}

impl FromStr for BottMatrix {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

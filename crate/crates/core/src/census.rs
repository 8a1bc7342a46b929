//! Exhaustive enumeration of orientable Bott matrices with fast spin and
//! spin^c classification.
//!
//! An orientable matrix has even parity in every row, so row i has
//! 2^(n-i-1) admissible masks (free bits in columns i+1..n-1, the bit in
//! column n derived) and rows n-1, n are zero. The total count per dimension
//! is 2^((n-1)(n-2)/2).
//!
//! The census classifies each matrix with bit operations only: row parities,
//! column extraction, popcount row dots. No polynomials are allocated in the
//! hot loop. A deterministic 1-in-1024 subsample is re-checked against the
//! full cohomology machinery; a mismatch is a bug and panics.
//!
//! Work is partitioned by the choice of the first two rows and chunks are
//! assigned round-robin to workers; per-worker counters are summed, so the
//! result does not depend on the worker count.

use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cohomology;
use crate::matrix::BottMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("dimension {n} outside supported census range {MIN_CENSUS_DIM}..={MAX_CENSUS_DIM}")]
    DimensionOutOfRange { n: usize },
    #[error("worker count must be at least 1")]
    NoWorkers,
}

pub const MIN_CENSUS_DIM: usize = 4;
pub const MAX_CENSUS_DIM: usize = 10;

/// Aggregate result of one census dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRow {
    pub n: usize,
    pub orientable_count: u64,
    pub spinc_count: u64,
    pub spin_count: u64,
    pub elapsed: Duration,
}

/// Number of orientable matrices in dimension n: 2^((n-1)(n-2)/2).
pub fn orientable_count(n: usize) -> u64 {
    1u64 << ((n - 1) * (n - 2) / 2)
}

/// Expands a free-bit index for row i (1-based) into an even-parity row
/// mask: free bits go to columns i+1..n-1, the parity bit to column n.
fn expand_row(n: usize, i: usize, free: u64) -> u64 {
    let mask = free << i;
    let parity = (free.count_ones() & 1) as u64;
    mask | (parity << (n - 1))
}

fn free_bits(n: usize, i: usize) -> usize {
    n - i - 1
}

/// Visits every orientable matrix of dimension n exactly once, in ascending
/// order of the compressed row encodings. Returns the number visited.
pub fn enumerate_orientable<F: FnMut(&BottMatrix)>(
    n: usize,
    mut visitor: F,
) -> Result<u64, CensusError> {
    check_dim(n)?;
    let mut rows = vec![0u64; n];
    let mut count = 0u64;
    visit_rows(n, 1, &mut rows, &mut count, &mut visitor);
    Ok(count)
}

fn visit_rows<F: FnMut(&BottMatrix)>(
    n: usize,
    i: usize,
    rows: &mut Vec<u64>,
    count: &mut u64,
    visitor: &mut F,
) {
    if i > n - 2 {
        let m = BottMatrix::from_rows(n, rows).expect("even-parity rows are valid");
        *count += 1;
        visitor(&m);
        return;
    }
    for free in 0..1u64 << free_bits(n, i) {
        rows[i - 1] = expand_row(n, i, free);
        visit_rows(n, i + 1, rows, count, visitor);
    }
}

fn check_dim(n: usize) -> Result<(), CensusError> {
    if !(MIN_CENSUS_DIM..=MAX_CENSUS_DIM).contains(&n) {
        return Err(CensusError::DimensionOutOfRange { n });
    }
    Ok(())
}

/// Bit-only classification of an orientable matrix.
///
/// spin^c: every column 3..n-2 of the derived matrix (row dots masked by
/// column equality) is zero or equals the matching column of the input.
///
/// spin: the square-free normal form of w₂ vanishes. For an orientable
/// matrix its coefficient at x_k x_l is ⟨row k, row l⟩ + c_l·a_kl, where
/// c_l = (weight of row l)/2 mod 2 is the coefficient the rewrite of x_l²
/// feeds back into degree 2.
pub(crate) fn classify_fast(rows: &[u64], n: usize) -> (bool, bool) {
    // columns as masks over rows
    let mut cols = [0u64; 64];
    for (i, &row) in rows.iter().enumerate() {
        let mut r = row;
        while r != 0 {
            let j = r.trailing_zeros() as usize;
            cols[j] |= 1 << i;
            r &= r - 1;
        }
    }

    let mut spin = true;
    'spin: for l in 1..n {
        // half-weight parity of row l (rows are 0-based here)
        let c_l = (rows[l].count_ones() >> 1) & 1;
        for k in 0..l {
            let dot = (rows[k] & rows[l]).count_ones() & 1;
            let a_kl = ((rows[k] >> l) & 1) as u32;
            if dot ^ (c_l & a_kl) != 0 {
                spin = false;
                break 'spin;
            }
        }
    }

    let mut spinc = true;
    if n > 4 {
        'spinc: for j in 2..n - 2 {
            // derived column j (0-based): bit i set iff cols differ and dot odd
            let mut dcol = 0u64;
            for i in 0..j {
                if cols[i] != cols[j] && (rows[i] & rows[j]).count_ones() & 1 == 1 {
                    dcol |= 1 << i;
                }
            }
            if dcol != 0 && dcol != cols[j] {
                spinc = false;
                break 'spinc;
            }
        }
    }
    (spinc, spin)
}

/// Runs the census for one dimension with the given number of workers.
///
/// The result is independent of `workers`: the matrix set is partitioned by
/// the first two rows into disjoint chunks and counters are plain sums.
pub fn census(n: usize, workers: usize) -> Result<CensusRow, CensusError> {
    check_dim(n)?;
    if workers == 0 {
        return Err(CensusError::NoWorkers);
    }
    let start = Instant::now();
    let f1 = free_bits(n, 1);
    let f2 = if n >= 3 { free_bits(n, 2) } else { 0 };
    let chunk_count = 1u64 << (f1 + f2);

    let totals: (u64, u64, u64) = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for w in 0..workers as u64 {
            handles.push(scope.spawn(move || {
                let mut acc = (0u64, 0u64, 0u64);
                let mut chunk = w;
                while chunk < chunk_count {
                    census_chunk(n, chunk, f2, &mut acc);
                    chunk += workers as u64;
                }
                acc
            }));
        }
        let mut totals = (0, 0, 0);
        for h in handles {
            let (o, c, s) = h.join().expect("census worker panicked");
            totals.0 += o;
            totals.1 += c;
            totals.2 += s;
        }
        totals
    });

    Ok(CensusRow {
        n,
        orientable_count: totals.0,
        spinc_count: totals.1,
        spin_count: totals.2,
        elapsed: start.elapsed(),
    })
}

/// Enumerates rows 3..n-2 for a fixed (row 1, row 2) chunk, accumulating
/// (orientable, spinc, spin) counts.
fn census_chunk(n: usize, chunk: u64, f2: usize, acc: &mut (u64, u64, u64)) {
    let mut rows = [0u64; 64];
    rows[0] = expand_row(n, 1, chunk >> f2);
    if n >= 3 {
        rows[1] = expand_row(n, 2, chunk & ((1 << f2) - 1));
    }
    census_inner(n, 3, &mut rows, acc);
}

fn census_inner(n: usize, i: usize, rows: &mut [u64; 64], acc: &mut (u64, u64, u64)) {
    if i > n - 2 {
        acc.0 += 1;
        let (spinc, spin) = classify_fast(&rows[..n], n);
        if acc.0 & 1023 == 0 {
            cross_check(&rows[..n], n, spinc, spin);
        }
        if spinc {
            acc.1 += 1;
        }
        if spin {
            acc.2 += 1;
        }
        return;
    }
    for free in 0..1u64 << free_bits(n, i) {
        rows[i - 1] = expand_row(n, i, free);
        census_inner(n, i + 1, rows, acc);
    }
}

/// Recomputes one matrix with the full cohomology machinery and panics on
/// disagreement with the fast path.
fn cross_check(rows: &[u64], n: usize, spinc: bool, spin: bool) {
    let m = BottMatrix::from_rows(n, rows).expect("enumerated rows are valid");
    let full_spinc = cohomology::has_spinc_linear(&m).expect("orientable by construction");
    let full_spin = cohomology::has_spin(&m).expect("orientable by construction");
    assert!(
        spinc == full_spinc && spin == full_spin,
        "fast-path classification disagrees with cohomology on:\n{m}"
    );
}

/// Outcome of the oracle cross-validation harness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub exhaustive_checked: u64,
    pub sampled_checked: u64,
}

/// A matrix on which two oracles disagreed, in the text format, plus the
/// check that failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("oracle disagreement ({check}) on matrix:\n{matrix}")]
pub struct VerifyFailure {
    pub check: String,
    pub matrix: String,
}

/// Cross-validates every decision route on orientable matrices: exhaustively
/// for dimensions up to `n_exhaustive_max` (capped at 7) and by seeded random
/// sampling for dimensions up to 10.
pub fn verify_oracles(
    n_exhaustive_max: usize,
    samples_per_dim: usize,
    seed: u64,
) -> Result<VerifyReport, Box<VerifyFailure>> {
    let mut exhaustive_checked = 0u64;
    let cap = n_exhaustive_max.min(7);
    for n in MIN_CENSUS_DIM..=cap {
        let mut failure: Option<Box<VerifyFailure>> = None;
        enumerate_orientable(n, |m| {
            if failure.is_none() {
                failure = check_one(m).err();
                exhaustive_checked += 1;
            }
        })
        .expect("dimension in range");
        if let Some(f) = failure {
            return Err(f);
        }
    }

    let mut sampled_checked = 0u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in MIN_CENSUS_DIM..=MAX_CENSUS_DIM {
        for _ in 0..samples_per_dim {
            let m = random_orientable(n, &mut rng);
            check_one(&m)?;
            sampled_checked += 1;
        }
    }
    Ok(VerifyReport {
        exhaustive_checked,
        sampled_checked,
    })
}

/// All per-matrix consistency checks on one orientable matrix.
pub fn check_one(m: &BottMatrix) -> Result<(), Box<VerifyFailure>> {
    let fail = |check: &str| {
        Err(Box::new(VerifyFailure {
            check: check.to_string(),
            matrix: m.to_string(),
        }))
    };
    let comb = m.has_spinc_combinatorial().expect("orientable");
    let sf = cohomology::has_spinc_square_free(m).expect("orientable");
    let lin = cohomology::has_spinc_linear(m).expect("orientable");
    let bock = cohomology::has_spinc_bockstein(m).expect("orientable");
    if !(comb == sf && sf == lin && lin == bock) {
        return fail("spinc oracle agreement");
    }
    let spin = cohomology::has_spin(m).expect("orientable");
    if spin && !comb {
        return fail("spin implies spinc");
    }
    if !cohomology::rank_invariants_hold(m) {
        return fail("rank(S1 u S2) = n - b1 + b2 = dim ker beta2");
    }
    if m.n() == 5 && m.has_spinc_dim5_corollary().expect("orientable n=5") != comb {
        return fail("dimension-5 corollary");
    }
    let (fast_spinc, fast_spin) = classify_fast(&rows_of(m), m.n());
    fast_path_check(m, fast_spinc, fast_spin, comb, spin)
}

fn fast_path_check(
    m: &BottMatrix,
    fast_spinc: bool,
    fast_spin: bool,
    oracle_spinc: bool,
    oracle_spin: bool,
) -> Result<(), Box<VerifyFailure>> {
    if fast_spinc != oracle_spinc || fast_spin != oracle_spin {
        return Err(Box::new(VerifyFailure {
            check: "fast path agrees with oracles".to_string(),
            matrix: m.to_string(),
        }));
    }
    Ok(())
}

fn rows_of(m: &BottMatrix) -> Vec<u64> {
    (1..=m.n()).map(|i| m.row_mask(i).unwrap()).collect()
}

/// Random orientable matrix: each row gets random free bits plus the derived
/// parity bit.
pub fn random_orientable<R: Rng>(n: usize, rng: &mut R) -> BottMatrix {
    let mut rows = vec![0u64; n];
    for i in 1..=n.saturating_sub(2) {
        let free = rng.gen_range(0..1u64 << free_bits(n, i));
        rows[i - 1] = expand_row(n, i, free);
    }
    BottMatrix::from_rows(n, &rows).expect("even-parity rows are valid")
}

/// Random strictly upper-triangular matrix, not necessarily orientable.
pub fn random_matrix<R: Rng>(n: usize, rng: &mut R) -> BottMatrix {
    let mut rows = vec![0u64; n];
    for (i, row) in rows.iter_mut().enumerate().take(n - 1) {
        let width = n - i - 1;
        *row = rng.gen_range(0..1u64 << width) << (i + 1);
    }
    BottMatrix::from_rows(n, &rows).expect("rows are triangular")
}

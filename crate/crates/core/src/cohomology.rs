//! The GF(2) cohomology ring of a Bott manifold and its characteristic
//! classes.
//!
//! The ring is a quotient of F₂[x₁..x_n] by the relations x_j² = α_j x_j,
//! where α_j = Σ_{i<j} a_ij x_i is read off column j of the matrix. Every
//! class has a unique square-free normal form, obtained by rewriting squares
//! until none remain; since α_j only involves variables of smaller index the
//! rewriting terminates. Polynomials cross the API boundary only in normal
//! form, so coordinates in the monomial bases of degree 2 and 3 are direct
//! to extract.
//!
//! On top of the ring this module computes w₁ and w₂ from the total
//! Stiefel-Whitney class Π(1+α_j), the explicit basis S₁ ∪ S₂ of the image
//! of the mod-2 reduction map in degree 2, the Bockstein β⁽²⁾ on the degree-2
//! basis, and three of the four spin^c decision procedures.

use std::collections::BTreeSet;
use std::fmt;

use crate::f2linalg::{rank, EchelonBasis, F2Vector};
use crate::matrix::{BottMatrix, MatrixError};

/// Largest dimension supported by the ring operations (the degree-3 basis
/// has C(n,3) elements and intermediate terms carry 4-bit exponents).
pub const MAX_RING_DIM: usize = 24;

/// A square-free multilinear polynomial over F₂.
///
/// Each term is a subset of the variables {x₁..x_n}, stored as a bit mask
/// (bit `v-1` is x_v). Presence of a term means coefficient 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Poly {
    n: usize,
    terms: BTreeSet<u64>,
}

impl F2Poly {
    pub fn zero(n: usize) -> Self {
        assert!(n <= crate::matrix::MAX_DIM);
        Self {
            n,
            terms: BTreeSet::new(),
        }
    }

    /// Single monomial given by a variable mask.
    pub fn monomial(n: usize, vars: u64) -> Self {
        let mut p = Self::zero(n);
        p.toggle(vars);
        p
    }

    /// The variable x_v (1-based).
    pub fn var(n: usize, v: usize) -> Self {
        assert!((1..=n).contains(&v));
        Self::monomial(n, 1 << (v - 1))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = u64> + '_ {
        self.terms.iter().copied()
    }

    pub fn contains_term(&self, vars: u64) -> bool {
        self.terms.contains(&vars)
    }

    /// Flips the coefficient of a monomial (addition of one term over F₂).
    pub fn toggle(&mut self, vars: u64) {
        debug_assert_eq!(vars & !mask_n(self.n), 0, "monomial out of range");
        if !self.terms.remove(&vars) {
            self.terms.insert(vars);
        }
    }

    /// Sum over F₂ (symmetric difference of term sets).
    pub fn add(&self, other: &F2Poly) -> F2Poly {
        assert_eq!(self.n, other.n, "polynomials over different variable sets");
        let mut out = self.clone();
        for &t in &other.terms {
            out.toggle(t);
        }
        out
    }

    /// True iff every term has exactly `d` variables.
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.iter().all(|t| t.count_ones() == d)
    }
}

impl fmt::Display for F2Poly {
    /// Renders terms as `x1*x3`, joined by ` + `, lexicographically by the
    /// sorted variable tuple; the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut rendered: Vec<Vec<usize>> = self
            .terms
            .iter()
            .map(|&t| (1..=self.n).filter(|v| (t >> (v - 1)) & 1 == 1).collect())
            .collect();
        rendered.sort();
        for (k, vars) in rendered.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if vars.is_empty() {
                write!(f, "1")?;
            } else {
                for (l, v) in vars.iter().enumerate() {
                    if l > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "x{v}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Poly({self})")
    }
}

fn mask_n(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Which squared variable to rewrite first when normalizing.
///
/// The two orders must produce the same normal form; the default everywhere
/// is [`ReductionOrder::HighestFirst`], and the agreement of the two is part
/// of the test suite rather than assumed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionOrder {
    HighestFirst,
    LowestFirst,
}

// Intermediate terms with exponents: 4 bits per variable in a u128.
const EXP_BITS: usize = 4;
const EXP_MAX: u128 = 15;

fn exp_of(term: u128, v: usize) -> u128 {
    (term >> (EXP_BITS * (v - 1))) & EXP_MAX
}

fn encode_mask(mask: u64) -> u128 {
    let mut t = 0u128;
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        t |= 1u128 << (EXP_BITS * v);
        m &= m - 1;
    }
    t
}

fn squared_var(term: u128, n: usize, order: ReductionOrder) -> Option<usize> {
    let mut range: Box<dyn Iterator<Item = usize>> = match order {
        ReductionOrder::HighestFirst => Box::new((1..=n).rev()),
        ReductionOrder::LowestFirst => Box::new(1..=n),
    };
    range.find(|&v| exp_of(term, v) >= 2)
}

fn toggle_term(set: &mut BTreeSet<u128>, term: u128) {
    if !set.remove(&term) {
        set.insert(term);
    }
}

/// Rewrites every squared variable via x_v² = α_v x_v until all terms are
/// square-free, then returns the normal form.
fn normalize(m: &BottMatrix, mut terms: BTreeSet<u128>, order: ReductionOrder) -> F2Poly {
    let n = m.n();
    assert!(
        n <= MAX_RING_DIM,
        "ring operations support n <= {MAX_RING_DIM}"
    );
    while let Some((&term, v)) = terms
        .iter()
        .find_map(|t| squared_var(*t, n, order).map(|v| (t, v)))
    {
        terms.remove(&term);
        // x_v^e -> alpha_v * x_v^(e-1); a zero column kills the term
        let base = term - (1u128 << (EXP_BITS * (v - 1)));
        let col = m.column(v).expect("v in range");
        let mut c = col;
        while c != 0 {
            let i = c.trailing_zeros() as usize + 1;
            assert!(
                exp_of(base, i) < EXP_MAX,
                "intermediate exponent overflow; input degree too large"
            );
            toggle_term(&mut terms, base + (1u128 << (EXP_BITS * (i - 1))));
            c &= c - 1;
        }
    }
    let mut out = F2Poly::zero(n);
    for term in terms {
        let mut mask = 0u64;
        for v in 1..=n {
            if exp_of(term, v) == 1 {
                mask |= 1 << (v - 1);
            }
        }
        out.toggle(mask);
    }
    out
}

/// The degree-≤1 class α_j = Σ_{i<j} a_ij x_i read off column j.
pub fn alpha(m: &BottMatrix, j: usize) -> Result<F2Poly, MatrixError> {
    let col = m.column(j)?;
    let mut p = F2Poly::zero(m.n());
    let mut c = col;
    while c != 0 {
        let i = c.trailing_zeros() as usize;
        p.toggle(1 << i);
        c &= c - 1;
    }
    Ok(p)
}

/// Product of two square-free polynomials, reduced to square-free normal
/// form with a chosen rewrite order.
pub fn mul_reduced_with_order(
    m: &BottMatrix,
    p: &F2Poly,
    q: &F2Poly,
    order: ReductionOrder,
) -> F2Poly {
    assert_eq!(p.n(), m.n());
    assert_eq!(q.n(), m.n());
    let mut terms = BTreeSet::new();
    for s in p.terms() {
        let es = encode_mask(s);
        for t in q.terms() {
            toggle_term(&mut terms, es + encode_mask(t));
        }
    }
    normalize(m, terms, order)
}

/// Product in the cohomology ring, in square-free normal form.
pub fn mul_reduced(m: &BottMatrix, p: &F2Poly, q: &F2Poly) -> F2Poly {
    mul_reduced_with_order(m, p, q, ReductionOrder::HighestFirst)
}

/// First Stiefel-Whitney class w₁ = Σ_j α_j; the coefficient of x_i is the
/// parity of row i, so w₁ = 0 iff the matrix is orientable.
pub fn w1(m: &BottMatrix) -> F2Poly {
    let mut p = F2Poly::zero(m.n());
    for i in 1..=m.n() {
        if m.row_mask(i).expect("i in range").count_ones() % 2 == 1 {
            p.toggle(1 << (i - 1));
        }
    }
    p
}

/// Second Stiefel-Whitney class w₂ = Σ_{i<j} α_i α_j in square-free normal
/// form (the degree-2 component of Π(1+α_j), reduced).
pub fn w2_reduced(m: &BottMatrix) -> F2Poly {
    let n = m.n();
    let mut terms = BTreeSet::new();
    let alphas: Vec<F2Poly> = (1..=n).map(|j| alpha(m, j).expect("j in range")).collect();
    for i in 0..n {
        for j in i + 1..n {
            for s in alphas[i].terms() {
                let es = encode_mask(s);
                for t in alphas[j].terms() {
                    toggle_term(&mut terms, es + encode_mask(t));
                }
            }
        }
    }
    normalize(m, terms, ReductionOrder::HighestFirst)
}

/// The square-free part of the degree-2 component of Π(1+α_j):
/// Σ_{k<l} ⟨A_(k), A_(l)⟩ x_k x_l. Requires orientability.
pub fn w2_square_free(m: &BottMatrix) -> Result<F2Poly, MatrixError> {
    m.ensure_orientable()?;
    let n = m.n();
    let mut p = F2Poly::zero(n);
    for k in 1..=n {
        for l in k + 1..=n {
            if m.row_dot(k, l)? {
                p.toggle((1 << (k - 1)) | (1 << (l - 1)));
            }
        }
    }
    Ok(p)
}

/// Spin structure exists iff w₂ vanishes.
pub fn has_spin(m: &BottMatrix) -> Result<bool, MatrixError> {
    m.ensure_orientable()?;
    Ok(w2_reduced(m).is_zero())
}

/// S₁ = {α_j x_j : column j nonzero}; each element is already square-free.
/// The list has n - b₁ entries.
pub fn s1_basis(m: &BottMatrix) -> Vec<F2Poly> {
    let n = m.n();
    let mut out = Vec::new();
    for j in 1..=n {
        let col = m.column(j).expect("j in range");
        if col != 0 {
            let mut p = F2Poly::zero(n);
            let mut c = col;
            while c != 0 {
                let i = c.trailing_zeros() as usize;
                p.toggle((1 << i) | (1 << (j - 1)));
                c &= c - 1;
            }
            out.push(p);
        }
    }
    out
}

/// S₂ = {x_k x_l : columns k and l equal}; the list has b₂ entries.
pub fn s2_basis(m: &BottMatrix) -> Vec<F2Poly> {
    let n = m.n();
    let cols = m.columns();
    let mut out = Vec::new();
    for k in 0..n {
        for l in k + 1..n {
            if cols[k] == cols[l] {
                out.push(F2Poly::monomial(n, (1 << k) | (1 << l)));
            }
        }
    }
    out
}

/// 0-based position of x_i x_j (1 <= i < j <= n) in the lexicographic
/// ordering of the degree-2 monomial basis.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    (i - 1) * (2 * n - i) / 2 + (j - i) - 1
}

/// 0-based position of x_i x_j x_k (i < j < k) in the lexicographic ordering
/// of the degree-3 monomial basis.
pub fn triple_index(n: usize, i: usize, j: usize, k: usize) -> usize {
    debug_assert!(1 <= i && i < j && j < k && k <= n);
    let mut idx = 0;
    for a in 1..i {
        let r = n - a; // pairs (j,k) above a
        idx += r * (r - 1) / 2;
    }
    idx + pair_index(n - i, j - i, k - i)
}

fn choose2(n: usize) -> usize {
    n * (n - 1) / 2
}

fn choose3(n: usize) -> usize {
    n * (n - 1) * (n - 2) / 6
}

/// Coordinates of a homogeneous degree-2 polynomial in the basis
/// {x_i x_j : i < j}, lexicographic order.
pub fn b2_coordinates(p: &F2Poly) -> F2Vector {
    assert!(
        p.is_homogeneous(2),
        "expected a homogeneous degree-2 polynomial"
    );
    let n = p.n();
    let mut v = F2Vector::zeros(choose2(n));
    for t in p.terms() {
        let i = t.trailing_zeros() as usize + 1;
        let j = 64 - t.leading_zeros() as usize;
        v.toggle(pair_index(n, i, j));
    }
    v
}

/// Coordinates of a homogeneous degree-3 polynomial in the basis
/// {x_i x_j x_k : i < j < k}, lexicographic order.
pub fn b3_coordinates(p: &F2Poly) -> F2Vector {
    assert!(
        p.is_homogeneous(3),
        "expected a homogeneous degree-3 polynomial"
    );
    let n = p.n();
    let mut v = F2Vector::zeros(choose3(n));
    for t in p.terms() {
        let i = t.trailing_zeros() as usize + 1;
        let k = 64 - t.leading_zeros() as usize;
        let j = (t & !(1 << (i - 1)) & !(1 << (k - 1))).trailing_zeros() as usize + 1;
        v.toggle(triple_index(n, i, j, k));
    }
    v
}

/// Spin^c via linear algebra: w₂ lies in the span of S₁ ∪ S₂.
pub fn has_spinc_linear(m: &BottMatrix) -> Result<bool, MatrixError> {
    m.ensure_orientable()?;
    let mut basis = EchelonBasis::new(choose2(m.n()));
    for p in s1_basis(m).iter().chain(s2_basis(m).iter()) {
        basis.insert(&b2_coordinates(p)).expect("lengths agree");
    }
    let w2 = w2_reduced(m);
    if w2.is_zero() {
        return Ok(true);
    }
    Ok(basis.contains(&b2_coordinates(&w2)).expect("lengths agree"))
}

/// β⁽²⁾(x_i x_j) = x_i²x_j + x_i x_j² = (α_i + α_j) x_i x_j, in the degree-3
/// basis.
pub fn beta2_image(m: &BottMatrix, i: usize, j: usize) -> Result<F2Poly, MatrixError> {
    if i >= j {
        return Err(MatrixError::BadIndexPair { i, j });
    }
    let sum = alpha(m, i)?.add(&alpha(m, j)?);
    let mono = F2Poly::monomial(m.n(), (1 << (i - 1)) | (1 << (j - 1)));
    Ok(mul_reduced(m, &sum, &mono))
}

/// β⁽²⁾ extended linearly over the degree-2 coordinates of a normal-form
/// polynomial.
pub fn beta2_of(m: &BottMatrix, p: &F2Poly) -> Result<F2Poly, MatrixError> {
    let mut out = F2Poly::zero(m.n());
    for t in p.terms() {
        let i = t.trailing_zeros() as usize + 1;
        let j = 64 - t.leading_zeros() as usize;
        out = out.add(&beta2_image(m, i, j)?);
    }
    Ok(out)
}

/// Dimension of ker β⁽²⁾ = C(n,2) minus the rank of the matrix of β⁽²⁾ from
/// the degree-2 to the degree-3 basis.
pub fn beta2_kernel_dim(m: &BottMatrix) -> usize {
    let n = m.n();
    let mut images = Vec::with_capacity(choose2(n));
    for i in 1..=n {
        for j in i + 1..=n {
            let img = beta2_image(m, i, j).expect("i < j");
            let mut v = F2Vector::zeros(choose3(n));
            if !img.is_zero() {
                v = b3_coordinates(&img);
            }
            images.push(v);
        }
    }
    choose2(n) - rank(&images).expect("uniform lengths")
}

/// Spin^c via the Bockstein: β⁽²⁾(w₂) = 0.
pub fn has_spinc_bockstein(m: &BottMatrix) -> Result<bool, MatrixError> {
    m.ensure_orientable()?;
    Ok(beta2_of(m, &w2_reduced(m))?.is_zero())
}

/// Checks the dimension identities tying the explicit basis to the
/// Bockstein kernel: S₁ ∪ S₂ is independent of rank n - b₁ + b₂, equal to
/// dim ker β⁽²⁾, and every element maps to zero under β⁽²⁾.
pub fn rank_invariants_hold(m: &BottMatrix) -> bool {
    let expected = m.n() - m.betti1() + m.betti2();
    let polys: Vec<F2Poly> = s1_basis(m).into_iter().chain(s2_basis(m)).collect();
    let vectors: Vec<F2Vector> = polys.iter().map(b2_coordinates).collect();
    if vectors.len() != expected {
        return false;
    }
    if rank(&vectors).expect("uniform lengths") != expected {
        return false;
    }
    if beta2_kernel_dim(m) != expected {
        return false;
    }
    polys
        .iter()
        .all(|p| beta2_of(m, p).expect("valid pairs").is_zero())
}

/// Spin^c via the square-free part of w₂: delete from it every monomial
/// x_k x_l with equal columns k and l, group the rest as Σ_j α_j' x_j, and
/// require each α_j' to be zero or equal to α_j.
pub fn has_spinc_square_free(m: &BottMatrix) -> Result<bool, MatrixError> {
    let w2sf = w2_square_free(m)?;
    let n = m.n();
    let cols = m.columns();
    // alpha'_j as a variable mask over {x_1..x_(j-1)}
    let mut alpha_prime = vec![0u64; n + 1];
    for t in w2sf.terms() {
        let k = t.trailing_zeros() as usize + 1;
        let l = 64 - t.leading_zeros() as usize;
        if cols[k - 1] != cols[l - 1] {
            alpha_prime[l] |= 1 << (k - 1);
        }
    }
    for (j, &ap) in alpha_prime.iter().enumerate().skip(1) {
        let aj = m.column(j).expect("j in range");
        if ap != 0 && ap != aj {
            return Ok(false);
        }
    }
    Ok(true)
}

//! Acceptance gate: one check per release criterion, one PASS/FAIL line each.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see every line.
//! The n = 9 census criterion enumerates 2^28 matrices and is `#[ignore]`d by
//! default; include it with `-- --ignored`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use realbott::census::{self, census, enumerate_orientable};
use realbott::cohomology::{
    self, alpha, b2_coordinates, beta2_of, mul_reduced_with_order, s1_basis, s2_basis, w2_reduced,
    w2_square_free, F2Poly, ReductionOrder,
};
use realbott::{BottMatrix, EchelonBasis};

/// Reference census counts this suite is required to match, per dimension:
/// (n, spinc, spin).
const REFERENCE_COUNTS: [(usize, u64, u64); 7] = [
    (4, 8, 6),
    (5, 52, 24),
    (6, 592, 72),
    (7, 7968, 672),
    (8, 165_712, 1536),
    (9, 4_669_464, 4416),
    (10, 191_557_024, 181_248),
];

fn reference(n: usize) -> (u64, u64) {
    let row = REFERENCE_COUNTS.iter().find(|r| r.0 == n).unwrap();
    (row.1, row.2)
}

fn workers() -> usize {
    std::thread::available_parallelism()
        .map(|p| p.get().min(8))
        .unwrap_or(1)
}

struct Gate {
    failed: Vec<String>,
}

impl Gate {
    fn new() -> Self {
        Gate { failed: Vec::new() }
    }

    fn check(&mut self, number: u32, name: &str, pass: bool, detail: String) {
        if pass {
            println!("criterion {number:2} {name}: PASS");
        } else {
            println!("criterion {number:2} {name}: FAIL ({detail})");
            self.failed.push(format!("{number} ({name}): {detail}"));
        }
    }

    fn finish(self) {
        assert!(
            self.failed.is_empty(),
            "failed acceptance criteria:\n  {}",
            self.failed.join("\n  ")
        );
    }
}

/// All spin^c decision routes, plus the spin flag, for one orientable matrix.
fn all_routes(m: &BottMatrix) -> (bool, [bool; 4]) {
    let spin = cohomology::has_spin(m).unwrap();
    let routes = [
        m.has_spinc_combinatorial().unwrap(),
        cohomology::has_spinc_square_free(m).unwrap(),
        cohomology::has_spinc_linear(m).unwrap(),
        cohomology::has_spinc_bockstein(m).unwrap(),
    ];
    (spin, routes)
}

#[test]
fn acceptance_criteria() {
    let mut gate = Gate::new();

    // 1. Census counts for n = 4..8 match the reference table exactly.
    {
        let mut detail = Vec::new();
        for n in 4..=8 {
            let row = census(n, workers()).unwrap();
            let (spinc, spin) = reference(n);
            if (row.spinc_count, row.spin_count) != (spinc, spin) {
                detail.push(format!(
                    "n={n}: got (spinc={}, spin={}), reference ({spinc}, {spin})",
                    row.spinc_count, row.spin_count
                ));
            }
        }
        gate.check(1, "census n=4..8", detail.is_empty(), detail.join("; "));
    }

    // 3. enumerate_orientable visits exactly 2^((n-1)(n-2)/2) matrices.
    {
        let mut ok = true;
        let mut detail = String::new();
        for n in 4..=8 {
            let visited = enumerate_orientable(n, |_| {}).unwrap();
            let expected = 1u64 << ((n - 1) * (n - 2) / 2);
            if visited != expected {
                ok = false;
                detail = format!("n={n}: visited {visited}, expected {expected}");
                break;
            }
        }
        gate.check(3, "orientable totals", ok, detail);
    }

    // 4. All four spin^c routes agree on every orientable matrix, n = 4..7.
    // 8. Spin implies spin^c; every orientable n=4 matrix admits spin^c.
    // 10. w2 - w2^sf lies in span(S1) on the same exhaustive set.
    {
        let mut disagreements = 0u64;
        let mut spin_without_spinc = 0u64;
        let mut n4_without_spinc = 0u64;
        let mut w2_outside_span = 0u64;
        for n in 4..=7 {
            enumerate_orientable(n, |m| {
                let (spin, routes) = all_routes(m);
                if routes.iter().any(|&r| r != routes[0]) {
                    disagreements += 1;
                }
                if spin && !routes[0] {
                    spin_without_spinc += 1;
                }
                if n == 4 && !routes[0] {
                    n4_without_spinc += 1;
                }
                let diff = w2_reduced(m).add(&w2_square_free(m).unwrap());
                let mut span = EchelonBasis::new(n * (n - 1) / 2);
                for p in s1_basis(m) {
                    span.insert(&b2_coordinates(&p)).unwrap();
                }
                if !span.contains(&b2_coordinates(&diff)).unwrap() {
                    w2_outside_span += 1;
                }
            })
            .unwrap();
        }
        gate.check(
            4,
            "route agreement, exhaustive n=4..7",
            disagreements == 0,
            format!("{disagreements} disagreements"),
        );
        gate.check(
            8,
            "spin implies spin^c; all n=4 spin^c",
            spin_without_spinc == 0 && n4_without_spinc == 0,
            format!("{spin_without_spinc} spin-only, {n4_without_spinc} n=4 without spin^c"),
        );
        gate.check(
            10,
            "w2 - w2^sf in span(S1), exhaustive n=4..7",
            w2_outside_span == 0,
            format!("{w2_outside_span} outside span"),
        );
    }

    // 5. Route agreement on 10^4 seeded samples per dimension n = 8, 9, 10.
    {
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE);
        let mut disagreements = 0u64;
        for n in [8, 9, 10] {
            for _ in 0..10_000 {
                let m = census::random_orientable(n, &mut rng);
                let (_, routes) = all_routes(&m);
                if routes.iter().any(|&r| r != routes[0]) {
                    disagreements += 1;
                }
            }
        }
        gate.check(
            5,
            "route agreement, 10^4 samples n=8..10",
            disagreements == 0,
            format!("{disagreements} disagreements"),
        );
    }

    // 6. The dimension-5 shortcut matches the general criterion on all 64
    //    orientable n=5 matrices.
    {
        let mut mismatches = 0u64;
        enumerate_orientable(5, |m| {
            if m.has_spinc_dim5_corollary().unwrap() != m.has_spinc_combinatorial().unwrap() {
                mismatches += 1;
            }
        })
        .unwrap();
        gate.check(
            6,
            "dimension-5 shortcut",
            mismatches == 0,
            format!("{mismatches} mismatches"),
        );
    }

    // 7. rank(S1 u S2) = n - b1 + b2 = dim ker beta2, and S1 u S2 lies in the
    //    Bockstein kernel: exhaustive n=4..7 plus 10^3 random n <= 10.
    {
        let mut violations = 0u64;
        let mut check = |m: &BottMatrix| {
            if !cohomology::rank_invariants_hold(m) {
                violations += 1;
                return;
            }
            for p in s1_basis(m).into_iter().chain(s2_basis(m)) {
                if !beta2_of(m, &p).unwrap().is_zero() {
                    violations += 1;
                    return;
                }
            }
        };
        for n in 4..=7 {
            enumerate_orientable(n, |m| check(m)).unwrap();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0xBA515);
        for i in 0..1000 {
            let n = 4 + i % 7; // 4..=10
            check(&census::random_matrix(n, &mut rng));
        }
        gate.check(
            7,
            "rank identities and Bockstein kernel",
            violations == 0,
            format!("{violations} violations"),
        );
    }

    // 9. The two square-rewrite orders produce identical normal forms on all
    //    products alpha_i alpha_j and (alpha_i + alpha_j) x_i x_j, for 10^3
    //    random matrices with n <= 10.
    {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0FF);
        let mut divergences = 0u64;
        for i in 0..1000 {
            let n = 4 + i % 7;
            let m = census::random_matrix(n, &mut rng);
            for i in 1..=n {
                for j in i + 1..=n {
                    let ai = alpha(&m, i).unwrap();
                    let aj = alpha(&m, j).unwrap();
                    let sum = ai.add(&aj);
                    let xij = F2Poly::monomial(n, (1 << (i - 1)) | (1 << (j - 1)));
                    for (p, q) in [(&ai, &aj), (&sum, &xij)] {
                        let hi = mul_reduced_with_order(&m, p, q, ReductionOrder::HighestFirst);
                        let lo = mul_reduced_with_order(&m, p, q, ReductionOrder::LowestFirst);
                        if hi != lo {
                            divergences += 1;
                        }
                    }
                }
            }
        }
        gate.check(
            9,
            "rewrite-order confluence",
            divergences == 0,
            format!("{divergences} divergences"),
        );
    }

    gate.finish();
}

/// Criterion 2: census at n = 9 (2^28 matrices; minutes of CPU).
#[test]
#[ignore = "enumerates 2^28 matrices; run with -- --ignored"]
fn acceptance_criterion_2_census_n9() {
    let mut gate = Gate::new();
    let row = census(9, workers()).unwrap();
    let (spinc, spin) = reference(9);
    gate.check(
        2,
        "census n=9",
        (row.spinc_count, row.spin_count) == (spinc, spin),
        format!(
            "got (spinc={}, spin={}), reference ({spinc}, {spin})",
            row.spinc_count, row.spin_count
        ),
    );
    gate.finish();
}

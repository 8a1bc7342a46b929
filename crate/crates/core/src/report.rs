//! One-stop analysis of a single Bott matrix.

use crate::cohomology::{self, F2Poly};
use crate::matrix::{BottMatrix, Homology};

/// Spin^c answers from the three independent decision routes; they must
/// always agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpincOracles {
    pub combinatorial: bool,
    pub linear: bool,
    pub bockstein: bool,
}

impl SpincOracles {
    pub fn all_agree(&self) -> bool {
        self.combinatorial == self.linear && self.linear == self.bockstein
    }
}

/// Every invariant of one matrix. The spin/spin^c fields are `None` for
/// non-orientable matrices, where the criteria do not apply.
#[derive(Debug, Clone)]
pub struct AnalysisReport {
    pub n: usize,
    pub orientable: bool,
    pub b1: usize,
    pub b2: usize,
    pub homology: Homology,
    pub w1: F2Poly,
    pub w2_square_free: Option<F2Poly>,
    pub derived: Option<BottMatrix>,
    pub spin: Option<bool>,
    pub spinc: Option<bool>,
    pub spinc_by_oracle: Option<SpincOracles>,
}

pub fn analyze(m: &BottMatrix) -> AnalysisReport {
    let orientable = m.is_orientable();
    let homology = m.homology();
    let (w2_square_free, derived, spin, spinc_by_oracle) = if orientable {
        let oracles = SpincOracles {
            combinatorial: m.has_spinc_combinatorial().expect("orientable"),
            linear: cohomology::has_spinc_linear(m).expect("orientable"),
            bockstein: cohomology::has_spinc_bockstein(m).expect("orientable"),
        };
        (
            Some(cohomology::w2_square_free(m).expect("orientable")),
            Some(m.derived().expect("orientable")),
            Some(cohomology::has_spin(m).expect("orientable")),
            Some(oracles),
        )
    } else {
        (None, None, None, None)
    };
    AnalysisReport {
        n: m.n(),
        orientable,
        b1: m.betti1(),
        b2: m.betti2(),
        homology,
        w1: cohomology::w1(m),
        w2_square_free,
        derived,
        spin,
        spinc: spinc_by_oracle.map(|o| o.combinatorial),
        spinc_by_oracle,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::tests::a5;

    #[test]
    fn report_on_torus() {
        let r = analyze(&BottMatrix::zero(4).unwrap());
        assert!(r.orientable);
        assert_eq!((r.b1, r.b2), (4, 6));
        assert_eq!(r.spin, Some(true));
        assert_eq!(r.spinc, Some(true));
        assert_eq!(r.homology.dim_img_rho2, 6);
        assert!(r.w1.is_zero());
    }

    #[test]
    fn report_on_a5() {
        let r = analyze(&a5());
        assert_eq!(r.spin, Some(false));
        assert_eq!(r.spinc, Some(false));
        let o = r.spinc_by_oracle.unwrap();
        assert!(o.all_agree());
        assert_eq!(r.homology.dim_img_rho2, r.n - r.b1 + r.b2);
    }

    #[test]
    fn report_on_non_orientable() {
        let m = BottMatrix::from_rows(3, &[0b010, 0, 0]).unwrap();
        let r = analyze(&m);
        assert!(!r.orientable);
        assert!(r.spin.is_none());
        assert!(r.spinc.is_none());
        assert!(r.derived.is_none());
        assert_eq!(r.w1.to_string(), "x1");
    }
}

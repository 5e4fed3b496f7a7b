//! The order threshold where the odd close-to-convexity certificate turns on.
//!
//! The head inequality a_1 >= 8 a_2 of [`certify_cc_odd`] has log-margin
//! ln(sqrt(pi)) + ln Gamma(nu + 3/2) - ln 8 - ln Gamma(nu + 1), a strictly
//! increasing function of nu with a single root nu_0 ~ 19.6203. Below the
//! root the certificate fails on its head inequality (the tail family holds
//! for every nu >= 1/2); above it the whole certificate passes. This module
//! exposes the objective, a bracketing bisection solver for its root, and an
//! order sweep that tabulates all three certificates alongside a starlike
//! grid margin.
//!
//! [`certify_cc_odd`]: crate::analysis::certify_cc_odd

use rayon::prelude::*;

use crate::analysis::{
    certify_acharya, certify_cc_odd, certify_ms_two_six, margin_scan, DiskGrid, Property, Subject,
};
use crate::error::{Error, Result};
use crate::kernel::coefficient_table;
use crate::special::{ln_gamma, Order, LN_SQRT_PI};

/// Bracket known to contain the threshold order.
pub const NU0_DEFAULT_BRACKET: (f64, f64) = (0.0, 30.0);

/// Objective whose unique root is the threshold order:
/// ln(sqrt(pi)) + ln Gamma(nu + 3/2) - ln 8 - ln Gamma(nu + 1).
///
/// Defined for nu > -1; strictly increasing there because its derivative is
/// the digamma difference psi(nu + 3/2) - psi(nu + 1) > 0.
pub fn nu0_objective(nu: f64) -> Result<f64> {
    if !(nu > -1.0) {
        return Err(Error::Domain(format!(
            "the threshold objective requires nu > -1, got {nu}"
        )));
    }
    Ok(LN_SQRT_PI + ln_gamma(nu + 1.5)? - 8.0_f64.ln() - ln_gamma(nu + 1.0)?)
}

/// A validated sign-changing bracket for a root of a scalar function.
#[derive(Debug, Clone, PartialEq)]
pub struct RootBracket {
    lo: f64,
    hi: f64,
    f_lo: f64,
    f_hi: f64,
    width_target: f64,
}

impl RootBracket {
    /// Checks that [lo, hi] actually brackets a sign change with endpoint
    /// values that are decisively nonzero (at least 1e-15 in magnitude):
    /// an endpoint this close to zero cannot have a trustworthy sign.
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64, width_target: f64) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::Bracket(format!(
                "bracket needs lo < hi, got [{lo}, {hi}]"
            )));
        }
        if !(f_lo.abs() >= 1e-15) || !(f_hi.abs() >= 1e-15) {
            return Err(Error::Bracket(format!(
                "endpoint values {f_lo} and {f_hi} are too close to zero to sign"
            )));
        }
        if f_lo.signum() == f_hi.signum() {
            return Err(Error::Bracket(format!(
                "no sign change over [{lo}, {hi}]: f = {f_lo} and {f_hi}"
            )));
        }
        if !(width_target > 0.0) {
            return Err(Error::Bracket(format!(
                "width target must be positive, got {width_target}"
            )));
        }
        Ok(RootBracket {
            lo,
            hi,
            f_lo,
            f_hi,
            width_target,
        })
    }

    /// Builds a bracket for [`nu0_objective`] by evaluating it at both ends.
    pub fn for_nu0(lo: f64, hi: f64, width_target: f64) -> Result<Self> {
        RootBracket::new(lo, hi, nu0_objective(lo)?, nu0_objective(hi)?, width_target)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn f_lo(&self) -> f64 {
        self.f_lo
    }

    pub fn f_hi(&self) -> f64 {
        self.f_hi
    }

    pub fn width_target(&self) -> f64 {
        self.width_target
    }
}

/// Smallest tolerance the solver accepts; below this the objective's own
/// rounding noise dominates and the answer would not improve.
pub const MIN_ROOT_TOLERANCE: f64 = 1e-12;

/// Bisects [`nu0_objective`] over the bracket down to width `tol` and
/// returns the midpoint of the final interval.
pub fn find_nu0(bracket: &RootBracket, tol: f64) -> Result<f64> {
    if !(tol >= MIN_ROOT_TOLERANCE) {
        return Err(Error::Input(format!(
            "root tolerance must be at least {MIN_ROOT_TOLERANCE:e}, got {tol:e}"
        )));
    }
    let (mut lo, mut hi, mut f_lo) = (bracket.lo, bracket.hi, bracket.f_lo);
    // 200 halvings shrink any f64 interval below resolvable width; the
    // guard only protects against a degenerate custom bracket.
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = nu0_objective(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Certificate verdicts and the starlike grid margin at one order.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanCells {
    pub acharya: bool,
    pub ms_two_six: bool,
    pub cc_odd: bool,
    /// Extremal margin of Re(zf'/f) > 0 for f = zB_nu over the scan grid.
    pub starlike_margin: f64,
}

/// One row of an order sweep. Evaluation failures are recorded in the row
/// rather than aborting the sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub nu: f64,
    pub cells: Result<ScanCells>,
}

/// Sweeps orders nu_min, nu_min + step, ... through nu_max (inclusive, with
/// a relative guard against step rounding) and evaluates every certificate
/// plus the starlike margin at each order. Rows are computed in parallel
/// and returned in order of increasing nu.
pub fn scan_nu(
    nu_min: f64,
    nu_max: f64,
    step: f64,
    n_max: usize,
    grid: &DiskGrid,
) -> Result<Vec<ScanRow>> {
    if !(nu_min > -0.5) {
        return Err(Error::Input(format!(
            "scan orders must exceed -1/2, got nu_min = {nu_min}"
        )));
    }
    if !(nu_max > nu_min) {
        return Err(Error::Input(format!(
            "scan needs nu_max > nu_min, got [{nu_min}, {nu_max}]"
        )));
    }
    if !(step > 0.0) {
        return Err(Error::Input(format!(
            "scan step must be positive, got {step}"
        )));
    }
    if n_max < 4 {
        return Err(Error::Input(format!(
            "scan needs n_max >= 4 so every certificate applies, got {n_max}"
        )));
    }
    let mut lattice = Vec::new();
    let mut k = 0usize;
    loop {
        let nu = nu_min + k as f64 * step;
        if nu > nu_max + step * 1e-9 {
            break;
        }
        lattice.push(nu);
        k += 1;
    }
    Ok(lattice
        .into_par_iter()
        .map(|nu| ScanRow {
            nu,
            cells: scan_cells(nu, n_max, grid),
        })
        .collect())
}

fn scan_cells(nu: f64, n_max: usize, grid: &DiskGrid) -> Result<ScanCells> {
    let order = Order(nu);
    let table = coefficient_table(order, n_max)?;
    let starlike = margin_scan(
        order,
        Property::StarlikeLambda,
        0.0,
        0.0,
        grid,
        Subject::FEqualsZb,
    )?;
    Ok(ScanCells {
        acharya: certify_acharya(&table)?.passed,
        ms_two_six: certify_ms_two_six(&table)?.passed,
        cc_odd: certify_cc_odd(&table)?.passed,
        starlike_margin: starlike.extremal_margin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    /// Root of the objective, frozen from a high-precision evaluation.
    const NU0: f64 = 19.620299138725796488;

    #[test]
    fn objective_reference_values() {
        // At nu = 0 the objective collapses to ln(pi/16).
        let at_zero = nu0_objective(0.0).unwrap();
        assert_abs_diff_eq!(at_zero, (std::f64::consts::PI / 16.0).ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(at_zero, -1.6278588363903810635, epsilon = 1e-12);
        assert_abs_diff_eq!(
            nu0_objective(19.61).unwrap(),
            -2.5282377689648175621e-4,
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(
            nu0_objective(19.63).unwrap(),
            2.3802039010463385957e-4,
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(
            nu0_objective(19.6203).unwrap(),
            2.1137258492897036261e-8,
            epsilon = 1e-13
        );
        assert!(nu0_objective(30.0).unwrap() > 0.0);
        assert!(matches!(nu0_objective(-1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn objective_is_strictly_increasing() {
        let mut prev = f64::NEG_INFINITY;
        let mut nu = 0.0;
        while nu <= 40.0 {
            let value = nu0_objective(nu).unwrap();
            assert!(value > prev, "objective not increasing at nu = {nu}");
            prev = value;
            nu += 0.1;
        }
    }

    #[test]
    fn bracket_validation() {
        assert!(RootBracket::new(0.0, 1.0, -1.0, 1.0, 1e-8).is_ok());
        assert!(matches!(
            RootBracket::new(1.0, 0.0, -1.0, 1.0, 1e-8),
            Err(Error::Bracket(_))
        ));
        assert!(matches!(
            RootBracket::new(0.0, 1.0, -1.0, -2.0, 1e-8),
            Err(Error::Bracket(_))
        ));
        assert!(matches!(
            RootBracket::new(0.0, 1.0, 1e-16, 1.0, 1e-8),
            Err(Error::Bracket(_))
        ));
        assert!(matches!(
            RootBracket::new(0.0, 1.0, -1.0, 1.0, 0.0),
            Err(Error::Bracket(_))
        ));
        // The objective is negative at both 0 and 1: no bracket there.
        assert!(matches!(
            RootBracket::for_nu0(0.0, 1.0, 1e-8),
            Err(Error::Bracket(_))
        ));
        let bracket = RootBracket::for_nu0(0.0, 30.0, 1e-8).unwrap();
        assert_eq!(bracket.lo(), 0.0);
        assert_eq!(bracket.hi(), 30.0);
        assert!(bracket.f_lo() < 0.0);
        assert!(bracket.f_hi() > 0.0);
        assert_eq!(bracket.width_target(), 1e-8);
    }

    #[test]
    fn bisection_finds_the_threshold_order() {
        let (lo, hi) = NU0_DEFAULT_BRACKET;
        let wide = RootBracket::for_nu0(lo, hi, 1e-8).unwrap();
        let root = find_nu0(&wide, 1e-8).unwrap();
        assert!((root - 19.6203).abs() <= 5e-4);
        assert!((root - NU0).abs() <= 1e-8);

        let narrow = RootBracket::for_nu0(19.0, 20.0, 1e-10).unwrap();
        let refined = find_nu0(&narrow, 1e-10).unwrap();
        assert!((refined - root).abs() <= 1e-8);
        assert!((refined - NU0).abs() <= 1e-10);
        assert!(nu0_objective(refined).unwrap().abs() <= 1e-9);
    }

    #[test]
    fn bisection_rejects_too_small_tolerances() {
        let bracket = RootBracket::for_nu0(19.0, 20.0, 1e-8).unwrap();
        assert!(matches!(find_nu0(&bracket, 0.0), Err(Error::Input(_))));
        assert!(matches!(find_nu0(&bracket, 1e-13), Err(Error::Input(_))));
        assert!(find_nu0(&bracket, 1e-12).is_ok());
    }

    fn test_grid() -> DiskGrid {
        DiskGrid::new(vec![0.3, 0.7, 0.999], 32).unwrap()
    }

    #[test]
    fn scan_below_the_threshold() {
        let rows = scan_nu(0.5, 1.0, 0.25, 60, &test_grid()).unwrap();
        assert_eq!(rows.len(), 3);
        let nus: Vec<f64> = rows.iter().map(|r| r.nu).collect();
        assert_eq!(nus, vec![0.5, 0.75, 1.0]);
        for row in &rows {
            let cells = row.cells.as_ref().unwrap();
            assert!(cells.acharya, "acharya failed at nu = {}", row.nu);
            assert!(cells.ms_two_six, "ms_two_six failed at nu = {}", row.nu);
            assert!(
                !cells.cc_odd,
                "cc_odd passed below threshold at nu = {}",
                row.nu
            );
            assert!(cells.starlike_margin > 0.0);
        }
    }

    #[test]
    fn scan_straddles_the_threshold() {
        let rows = scan_nu(19.5, 19.75, 0.05, 60, &test_grid()).unwrap();
        assert_eq!(rows.len(), 6);
        let verdicts: Vec<bool> = rows
            .iter()
            .map(|r| r.cells.as_ref().unwrap().cc_odd)
            .collect();
        assert_eq!(verdicts, vec![false, false, false, true, true, true]);
        // Consistency with the root: certain below nu0 - step, certain above
        // nu0 + step; within one step of the root either verdict is allowed.
        let step = 0.05;
        for row in &rows {
            let cc = row.cells.as_ref().unwrap().cc_odd;
            if row.nu >= NU0 + step {
                assert!(cc, "cc_odd false above threshold at nu = {}", row.nu);
            }
            if row.nu < NU0 - step {
                assert!(!cc, "cc_odd true below threshold at nu = {}", row.nu);
            }
        }
    }

    #[test]
    fn scan_is_deterministic() {
        let grid = test_grid();
        let a = scan_nu(1.0, 2.0, 0.5, 40, &grid).unwrap();
        let b = scan_nu(1.0, 2.0, 0.5, 40, &grid).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.nu.to_bits(), y.nu.to_bits());
            let (cx, cy) = (x.cells.as_ref().unwrap(), y.cells.as_ref().unwrap());
            assert_eq!(cx.acharya, cy.acharya);
            assert_eq!(cx.starlike_margin.to_bits(), cy.starlike_margin.to_bits());
        }
    }

    #[test]
    fn scan_validates_its_range() {
        let grid = test_grid();
        assert!(matches!(
            scan_nu(-0.5, 1.0, 0.1, 40, &grid),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            scan_nu(1.0, 1.0, 0.1, 40, &grid),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            scan_nu(1.0, 2.0, 0.0, 40, &grid),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            scan_nu(1.0, 2.0, 0.1, 3, &grid),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn scan_lattice_includes_the_endpoint_despite_rounding() {
        // 0.1 + 29 * 0.03 lands within rounding of 0.97; the guard keeps it.
        let rows = scan_nu(0.6, 0.69, 0.03, 40, &test_grid()).unwrap();
        assert_eq!(rows.len(), 4);
        assert_abs_diff_eq!(rows.last().unwrap().nu, 0.69, epsilon = 1e-12);
    }
}

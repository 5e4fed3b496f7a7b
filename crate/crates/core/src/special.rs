//! Real gamma-family functions and the prefactor-free series cores of the
//! modified Bessel function `I_nu` and modified Struve function `L_nu`.
//!
//! Both series are summed without their `(z/2)^nu` prefactor. Callers that
//! need the classical functions multiply it back; callers here never do, so
//! no complex power (and no branch cut) is ever formed.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Order parameter `nu` of the Bessel/Struve family.
///
/// Construction is unrestricted; range requirements (`nu > -1/2` for the
/// kernel, `nu > -1` for the series cores) are enforced at each operation
/// boundary, since the gamma functions themselves accept any non-pole input.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Order(pub f64);

impl Order {
    pub fn get(self) -> f64 {
        self.0
    }
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Truncation policy for the infinite sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub max_terms: usize,
    /// Absolute magnitude below which the next term stops the summation.
    pub tail_tolerance: f64,
}

impl Default for SeriesControl {
    fn default() -> Self {
        // Terms decay factorially on |z| <= 2; 200 terms is a generous ceiling.
        SeriesControl {
            max_terms: 200,
            tail_tolerance: 1e-16,
        }
    }
}

impl SeriesControl {
    pub fn validate(&self) -> Result<()> {
        if self.max_terms == 0 {
            return Err(Error::Input("max_terms must be >= 1".into()));
        }
        if !(self.tail_tolerance > 0.0) {
            return Err(Error::Input(format!(
                "tail_tolerance must be > 0, got {}",
                self.tail_tolerance
            )));
        }
        Ok(())
    }
}

pub const LN_SQRT_PI: f64 = 0.572364942924700087_f64;
const LN_SQRT_2PI: f64 = 0.918938533204672742_f64;

/// Arguments at or above this use the asymptotic series directly; smaller
/// ones are first shifted up by the recurrence ln Gamma(x) = ln Gamma(x+k) - ln prod.
const STIRLING_CUTOFF: f64 = 8.0;

/// B_{2k} / (2k (2k-1)) for k = 1..=8: the Stirling-series coefficients of
/// ln Gamma. Truncation error at x >= 8 is below 1e-16 absolute.
const LN_GAMMA_TAIL: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

/// B_{2k} / (2k) for k = 1..=8: the asymptotic-series coefficients of digamma.
const DIGAMMA_TAIL: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

/// Natural log of the gamma function for x > 0.
///
/// Stirling's series with upward recurrence below the cutoff; relative error
/// stays below 1e-13 across (0, 1e4). The integer zeros ln Gamma(1) and
/// ln Gamma(2) return exactly 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    if x == 1.0 || x == 2.0 {
        return Ok(0.0);
    }
    let mut y = x;
    let mut shift = 1.0;
    while y < STIRLING_CUTOFF {
        shift *= y;
        y += 1.0;
    }
    let mut value = stirling_ln_gamma(y);
    if shift != 1.0 {
        value -= shift.ln();
    }
    Ok(value)
}

fn stirling_ln_gamma(y: f64) -> f64 {
    let u = 1.0 / (y * y);
    let mut tail = 0.0;
    for &c in LN_GAMMA_TAIL.iter().rev() {
        tail = tail * u + c;
    }
    (y - 0.5) * y.ln() - y + LN_SQRT_2PI + tail / y
}

/// Gamma function for x > 0, as exp(ln_gamma). Overflow is reported, never
/// silently saturated to infinity.
pub fn gamma(x: f64) -> Result<f64> {
    let value = ln_gamma(x)?.exp();
    if !value.is_finite() {
        return Err(Error::Overflow { x });
    }
    Ok(value)
}

/// Digamma Psi(x) = d/dx ln Gamma(x) for x > 0, absolute error <= 1e-10 on
/// (0, 1e4). Strictly increasing on the positive axis.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("digamma requires x > 0, got {x}")));
    }
    let mut y = x;
    let mut shifted = 0.0;
    while y < 10.0 {
        shifted += 1.0 / y;
        y += 1.0;
    }
    let u = 1.0 / (y * y);
    let mut tail = 0.0;
    for &c in DIGAMMA_TAIL.iter().rev() {
        tail = tail * u + c;
    }
    Ok(y.ln() - 0.5 / y - tail * u - shifted)
}

/// Shared driver for the two series cores: starting term, then the ratio
/// recurrence `term_{n+1} = term_n * q / d(n)` with q = (z/2)^2. Returns the
/// sum and the number of terms taken.
pub(crate) fn sum_core(
    first: Complex64,
    q: Complex64,
    denom: impl Fn(usize) -> f64,
    ctl: SeriesControl,
) -> Result<(Complex64, usize)> {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut term = first;
    for n in 0..ctl.max_terms {
        sum += term;
        let next = term * q / denom(n);
        if next.norm() < ctl.tail_tolerance {
            return Ok((sum, n + 1));
        }
        term = next;
    }
    Err(Error::NonConvergence {
        max_terms: ctl.max_terms,
        last_term: term.norm(),
    })
}

/// Prefactor-free modified Bessel core:
/// sum over n >= 0 of (z/2)^{2n} / (n! Gamma(nu+n+1)).
///
/// Multiplying by (z/2)^nu recovers the classical I_nu; no caller in this
/// crate ever does, so the principal-branch question never arises.
pub fn modified_bessel_i(order: Order, z: Complex64, ctl: SeriesControl) -> Result<Complex64> {
    ctl.validate()?;
    let nu = order.get();
    if !(nu > -1.0) {
        return Err(Error::Domain(format!(
            "modified_bessel_i requires nu > -1, got {nu}"
        )));
    }
    if z.norm() > 2.0 {
        return Err(Error::Domain(format!(
            "modified_bessel_i is restricted to |z| <= 2, got |z| = {}",
            z.norm()
        )));
    }
    let half = z / 2.0;
    let q = half * half;
    let first = Complex64::new((-ln_gamma(nu + 1.0)?).exp(), 0.0);
    sum_core(first, q, |n| ((n + 1) as f64) * (nu + n as f64 + 1.0), ctl).map(|(s, _)| s)
}

/// Prefactor-free modified Struve core:
/// sum over n >= 0 of (z/2)^{2n+1} / (Gamma(n+nu+3/2) Gamma(n+3/2)).
pub fn modified_struve_l(order: Order, z: Complex64, ctl: SeriesControl) -> Result<Complex64> {
    ctl.validate()?;
    let nu = order.get();
    if !(nu > -1.0) {
        return Err(Error::Domain(format!(
            "modified_struve_l requires nu > -1, got {nu}"
        )));
    }
    if z.norm() > 2.0 {
        return Err(Error::Domain(format!(
            "modified_struve_l is restricted to |z| <= 2, got |z| = {}",
            z.norm()
        )));
    }
    let half = z / 2.0;
    let q = half * half;
    let first = half * (-(ln_gamma(nu + 1.5)? + ln_gamma(1.5)?)).exp();
    sum_core(first, q, |n| (n as f64 + nu + 1.5) * (n as f64 + 1.5), ctl).map(|(s, _)| s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Reference values computed independently at 50-digit precision.
    /// Comparison is relative against max(1, |reference|) so the zeros of
    /// ln Gamma at 1 and 2 do not inflate the quotient.
    #[test]
    fn ln_gamma_reference_points() {
        let cases: [(f64, f64); 15] = [
            (1e-8, 18.420680738180208905),
            (0.1, 2.2527126517342059599),
            (0.5, 0.57236494292470008707),
            (1.5, -0.12078223763524522235),
            (2.5, 0.28468287047291915963),
            (5.0, 3.1780538303479456196),
            (7.999, 8.5231457861589161612),
            (8.0, 8.5251613610654143002),
            (10.5, 13.940625219403763633),
            (20.0, 39.339884187199494036),
            (100.0, 359.13420536957539878),
            (171.5, 709.14316303092824227),
            (500.5, 2608.2229044109866551),
            (1000.0, 5905.2204232091812118),
            (9999.5, 82095.112363757639228),
        ];
        for (x, want) in cases {
            let got = ln_gamma(x).unwrap();
            let scale = want.abs().max(1.0);
            assert!(
                (got - want).abs() <= 1e-13 * scale,
                "ln_gamma({x}): got {got}, want {want}"
            );
        }
    }

    #[test]
    fn ln_gamma_integer_zeros_are_exact() {
        assert_eq!(ln_gamma(1.0).unwrap(), 0.0);
        assert_eq!(ln_gamma(2.0).unwrap(), 0.0);
        assert_relative_eq!(ln_gamma(5.0).unwrap(), 24.0_f64.ln(), max_relative = 1e-14);
    }

    #[test]
    fn ln_gamma_rejects_nonpositive() {
        assert!(matches!(ln_gamma(0.0), Err(Error::Domain(_))));
        assert!(matches!(ln_gamma(-3.5), Err(Error::Domain(_))));
        assert!(matches!(ln_gamma(f64::NAN), Err(Error::Domain(_))));
    }

    #[test]
    fn gamma_small_integers_and_halves() {
        assert_relative_eq!(
            gamma(1.5).unwrap(),
            0.886226925452758014,
            max_relative = 1e-14
        );
        assert_relative_eq!(gamma(4.0).unwrap(), 6.0, max_relative = 1e-14);
        assert_relative_eq!(
            gamma(2.5).unwrap(),
            1.329340388179137021,
            max_relative = 1e-14
        );
    }

    #[test]
    fn gamma_overflow_is_reported() {
        // Gamma overflows f64 a little past x = 171.6.
        assert!(matches!(gamma(200.0), Err(Error::Overflow { .. })));
        assert!(gamma(171.0).is_ok());
    }

    #[test]
    fn gamma_recurrence_relative_error() {
        // gamma(x+1) = x gamma(x) to 1e-12 across (0, 100].
        let mut x = 1e-3;
        while x <= 99.0 {
            let lhs = gamma(x + 1.0).unwrap();
            let rhs = x * gamma(x).unwrap();
            assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
            x *= 1.37;
        }
    }

    #[test]
    fn legendre_duplication_identity() {
        // Gamma(x) Gamma(x+1/2) = 2^{1-2x} sqrt(pi) Gamma(2x), in log form.
        let ln2 = std::f64::consts::LN_2;
        for i in 0..100 {
            let x = (1e-3_f64.ln() + (50.0_f64.ln() - 1e-3_f64.ln()) * i as f64 / 99.0).exp();
            let lhs = ln_gamma(x).unwrap() + ln_gamma(x + 0.5).unwrap();
            let rhs = (1.0 - 2.0 * x) * ln2 + LN_SQRT_PI + ln_gamma(2.0 * x).unwrap();
            assert!(
                (lhs - rhs).abs() <= 1e-11,
                "duplication residual {} at x = {x}",
                lhs - rhs
            );
        }
    }

    #[test]
    fn digamma_reference_points() {
        let cases = [
            (0.01, -100.5608854578686745),
            (0.5, -1.9635100260214234794),
            (1.0, -0.57721566490153286061),
            (2.0, 0.42278433509846713939),
            (6.25, 1.7504535268837360284),
            (10.25, 2.2777047906867239693),
            (100.0, 4.6001618527380874002),
            (1000.0, 6.9072551956488120521),
        ];
        for (x, want) in cases {
            assert_abs_diff_eq!(digamma(x).unwrap(), want, epsilon = 1e-10);
        }
        assert!(matches!(digamma(0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn digamma_is_strictly_increasing() {
        let mut prev = digamma(1e-3).unwrap();
        let mut x = 2e-3;
        while x <= 100.0 {
            let cur = digamma(x).unwrap();
            assert!(cur > prev, "digamma not increasing at x = {x}");
            prev = cur;
            x *= 1.19;
        }
    }

    #[test]
    fn bessel_core_at_zero_and_one() {
        let ctl = SeriesControl::default();
        let at0 = modified_bessel_i(Order(0.0), c(0.0, 0.0), ctl).unwrap();
        assert_abs_diff_eq!(at0.re, 1.0, epsilon = 1e-15);
        assert_eq!(at0.im, 0.0);

        // Independent oracle: 20 partial-sum terms of sum (1/4)^n / (n!)^2,
        // built from integer factorials only.
        let mut oracle = 0.0;
        let mut fact = 1.0;
        for n in 0..20 {
            if n > 0 {
                fact *= n as f64;
            }
            oracle += 0.25_f64.powi(n) / (fact * fact);
        }
        let at1 = modified_bessel_i(Order(0.0), c(1.0, 0.0), ctl).unwrap();
        assert_abs_diff_eq!(at1.re, oracle, epsilon = 1e-13);
        assert_abs_diff_eq!(at1.re, 1.2660658777520083356, epsilon = 1e-13);
    }

    #[test]
    fn bessel_core_matches_classical_order_one() {
        // Classical I_1(1) = 0.5651591039924850, divided by (z/2)^1 = 1/2.
        let got = modified_bessel_i(Order(1.0), c(1.0, 0.0), SeriesControl::default()).unwrap();
        assert_abs_diff_eq!(got.re, 1.1303182079849700, epsilon = 1e-13);
    }

    #[test]
    fn struve_core_values() {
        let ctl = SeriesControl::default();
        let at0 = modified_struve_l(Order(0.7), c(0.0, 0.0), ctl).unwrap();
        assert_eq!(at0, c(0.0, 0.0));

        // Independent oracle: 20 terms of sum (1/2)^{2n+1} / Gamma(n+3/2)^2,
        // with Gamma(n+3/2) advanced by the recurrence from Gamma(3/2).
        let mut oracle = 0.0;
        let mut g = 0.886226925452758014; // Gamma(3/2)
        for n in 0..20 {
            oracle += 0.5_f64.powi(2 * n + 1) / (g * g);
            g *= n as f64 + 1.5;
        }
        let at1 = modified_struve_l(Order(0.0), c(1.0, 0.0), ctl).unwrap();
        assert_abs_diff_eq!(at1.re, oracle, epsilon = 1e-13);
        assert_abs_diff_eq!(at1.re, 0.71024318593789088874, epsilon = 1e-13);

        // Odd symmetry of the nu = 0 core.
        let neg = modified_struve_l(Order(0.0), c(-1.0, 0.0), ctl).unwrap();
        assert_abs_diff_eq!(neg.re, -at1.re, epsilon = 1e-15);
    }

    #[test]
    fn cores_at_a_complex_point() {
        let ctl = SeriesControl::default();
        let z = c(0.7, -0.2);
        let i = modified_bessel_i(Order(0.3), z, ctl).unwrap();
        assert_abs_diff_eq!(i.re, 1.2121080143905412105, epsilon = 1e-13);
        assert_abs_diff_eq!(i.im, -0.062976177441565078026, epsilon = 1e-13);
        let l = modified_struve_l(Order(0.3), z, ctl).unwrap();
        assert_abs_diff_eq!(l.re, 0.43862631752193649505, epsilon = 1e-13);
        assert_abs_diff_eq!(l.im, -0.13759898083544351411, epsilon = 1e-13);
    }

    #[test]
    fn series_domain_and_budget_errors() {
        let ctl = SeriesControl::default();
        assert!(matches!(
            modified_bessel_i(Order(-1.0), c(0.5, 0.0), ctl),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            modified_struve_l(Order(0.5), c(2.5, 0.0), ctl),
            Err(Error::Domain(_))
        ));
        let starved = SeriesControl {
            max_terms: 3,
            tail_tolerance: 1e-16,
        };
        match modified_bessel_i(Order(0.5), c(1.9, 0.0), starved) {
            Err(Error::NonConvergence { last_term, .. }) => assert!(last_term > 0.0),
            other => panic!("expected non-convergence, got {other:?}"),
        }
        assert!(matches!(
            modified_bessel_i(
                Order(0.5),
                c(0.5, 0.0),
                SeriesControl {
                    max_terms: 0,
                    tail_tolerance: 1e-16
                }
            ),
            Err(Error::Input(_))
        ));
    }
}

//! Central tolerance record.
//!
//! All thresholds used by the kernels and the verification routines live here
//! so that tests, the CLI and the acceptance suite share one set of numbers.

/// Numerical tolerances. Values are for `f64`; generic code converts them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Pythagorean identities of the elliptic kernel.
    pub kernel: f64,
    /// Shift / periodicity identities.
    pub identity: f64,
    /// Relative Schrödinger residual of a closed-form eigenstate.
    pub residual: f64,
    /// Period-class check ψ(x+L) = ±ψ(x).
    pub period_class: f64,
    /// Relative tolerance of the adaptive integrator.
    pub ode_rtol: f64,
    /// Absolute tolerance of the adaptive integrator.
    pub ode_atol: f64,
    /// Allowed Wronskian drift over one period.
    pub wronskian: f64,
    /// Energy resolution of band-edge bisection.
    pub edge_energy: f64,
    /// |D ∓ 2| below which an extremum of D is a closed gap.
    pub tangency_value: f64,
    /// |dD/dE| below which a root is reported as tangent.
    pub tangency_slope: f64,
    /// Self-isospectral verdict thresholds.
    pub self_iso_pass: f64,
    pub self_iso_fail: f64,
    /// Second-derivative threshold for degenerate extrema.
    pub degenerate_extremum: f64,
    /// Parabola membership.
    pub parabola: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        kernel: 1e-12,
        identity: 1e-10,
        residual: 1e-6,
        period_class: 1e-8,
        ode_rtol: 1e-10,
        ode_atol: 1e-12,
        wronskian: 1e-9,
        edge_energy: 1e-9,
        tangency_value: 1e-8,
        tangency_slope: 1e-6,
        self_iso_pass: 1e-8,
        self_iso_fail: 1e-3,
        degenerate_extremum: 1e-8,
        parabola: 1e-9,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Default tolerances.
pub const TOL: Tolerances = Tolerances::DEFAULT;

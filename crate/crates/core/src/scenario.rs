//! Domain types and closed-form physics for the discrimination scenario.
//!
//! Everything here is elementary: state and measurement representations for
//! the two theories, the confidence definition, min-entropy, and the textbook
//! discrimination bounds. All types are immutable values and all operations
//! are pure functions.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Absolute tolerance for probability validation at API boundaries.
/// Interior-point solutions carry residuals around 1e-8, so inputs derived
/// from solver output are accepted up to this slack.
pub const PROB_TOL_API: f64 = 1e-9;

/// Tighter tolerance used for internally-constructed quantities.
pub const PROB_TOL_INTERNAL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScenarioError {
    #[error("probability out of range: {name} = {value}")]
    InvalidProbability { name: &'static str, value: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("confidence is undefined at zero outcome rate")]
    UndefinedConfidence,
    #[error("unsupported configuration: {0}")]
    UnsupportedConfiguration(String),
}

fn check_prob(name: &'static str, value: f64, tol: f64) -> Result<f64, ScenarioError> {
    if !value.is_finite() || value < -tol || value > 1.0 + tol {
        return Err(ScenarioError::InvalidProbability { name, value });
    }
    Ok(value.clamp(0.0, 1.0))
}

/// Which theory governs the device (and, for respective-eavesdropper
/// comparisons, the eavesdropper).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theory {
    Quantum,
    Noncontextual,
}

impl std::fmt::Display for Theory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Theory::Quantum => write!(f, "quantum"),
            Theory::Noncontextual => write!(f, "noncontextual"),
        }
    }
}

/// Prior probabilities of the two inputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Priors {
    p0: f64,
    p1: f64,
}

impl Priors {
    pub fn new(p0: f64, p1: f64) -> Result<Self, ScenarioError> {
        check_prob("p0", p0, PROB_TOL_API)?;
        check_prob("p1", p1, PROB_TOL_API)?;
        if (p0 + p1 - 1.0).abs() > PROB_TOL_INTERNAL {
            return Err(ScenarioError::InvalidParameter(format!(
                "priors must sum to 1, got {p0} + {p1}"
            )));
        }
        Ok(Self { p0, p1 })
    }

    pub fn unbiased() -> Self {
        Self { p0: 0.5, p1: 0.5 }
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn is_unbiased(&self) -> bool {
        (self.p0 - 0.5).abs() <= PROB_TOL_INTERNAL
    }
}

/// Distinguishability of the prepared states: the quantum overlap delta and
/// its noncontextual analogue, the confusability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Overlap {
    delta: f64,
    confusability: f64,
}

impl Overlap {
    /// Independent overlap and confusability values, each in [0, 1].
    pub fn new(delta: f64, confusability: f64) -> Result<Self, ScenarioError> {
        if !(0.0..=1.0).contains(&delta) || !delta.is_finite() {
            return Err(ScenarioError::InvalidParameter(format!(
                "overlap delta must be in [0,1], got {delta}"
            )));
        }
        if !(0.0..=1.0).contains(&confusability) || !confusability.is_finite() {
            return Err(ScenarioError::InvalidParameter(format!(
                "confusability must be in [0,1], got {confusability}"
            )));
        }
        Ok(Self {
            delta,
            confusability,
        })
    }

    /// The calibrated pairing used whenever quantum and noncontextual models
    /// are compared: confusability equal to the squared overlap.
    pub fn calibrated_from_confusability(confusability: f64) -> Result<Self, ScenarioError> {
        let ov = Self::new(confusability.sqrt(), confusability)?;
        Ok(ov)
    }

    pub fn calibrated_from_delta(delta: f64) -> Result<Self, ScenarioError> {
        Self::new(delta, delta * delta)
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn confusability(&self) -> f64 {
        self.confusability
    }

    pub fn is_calibrated(&self) -> bool {
        (self.confusability - self.delta * self.delta).abs() <= PROB_TOL_INTERNAL
    }
}

/// Observed statistics fixed by the certification protocol: the rate of
/// outcome b = 0 and the confidence for input 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObservedStats {
    eta0: f64,
    c0: f64,
}

impl ObservedStats {
    pub fn new(priors: &Priors, eta0: f64, c0: f64) -> Result<Self, ScenarioError> {
        let eta0 = check_prob("eta0", eta0, PROB_TOL_API)?;
        let c0 = check_prob("c0", c0, PROB_TOL_API)?;
        // eta0 * c0 = p0 * p(0|0) <= p0
        if eta0 * c0 > priors.p0() + PROB_TOL_API {
            return Err(ScenarioError::InvalidParameter(format!(
                "eta0 * c0 = {} exceeds the prior p0 = {}",
                eta0 * c0,
                priors.p0()
            )));
        }
        Ok(Self { eta0, c0 })
    }

    pub fn eta0(&self) -> f64 {
        self.eta0
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }
}

/// A qubit state as a Bloch vector. The problem family lives in the X-Z
/// plane; the y component is carried so that violations of that restriction
/// surface as validation errors instead of being silently dropped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitState {
    pub bloch_x: f64,
    pub bloch_y: f64,
    pub bloch_z: f64,
}

impl QubitState {
    pub fn new(bloch_x: f64, bloch_y: f64, bloch_z: f64) -> Result<Self, ScenarioError> {
        let norm = (bloch_x * bloch_x + bloch_y * bloch_y + bloch_z * bloch_z).sqrt();
        if !norm.is_finite() || norm > 1.0 + PROB_TOL_INTERNAL {
            return Err(ScenarioError::InvalidParameter(format!(
                "Bloch vector norm {norm} exceeds 1"
            )));
        }
        Ok(Self {
            bloch_x,
            bloch_y,
            bloch_z,
        })
    }

    /// Pure state in the X-Z plane at angle `phi` from the +Z axis, measured
    /// towards -X. This is the orientation of the first prepared state.
    pub fn pure_xz(phi_from_z: f64, towards_minus_x: bool) -> Self {
        let s = if towards_minus_x { -1.0 } else { 1.0 };
        Self {
            bloch_x: s * phi_from_z.sin(),
            bloch_y: 0.0,
            bloch_z: phi_from_z.cos(),
        }
    }

    pub fn norm(&self) -> f64 {
        (self.bloch_x * self.bloch_x + self.bloch_y * self.bloch_y + self.bloch_z * self.bloch_z)
            .sqrt()
    }
}

/// A POVM element in the X-Z plane, parametrized by weight R, Bloch radius r
/// and angle theta from +Z: (R/2) (1 + r sin(theta) sigma_x + r cos(theta) sigma_z).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PovmElement {
    pub weight: f64,
    pub radius: f64,
    pub angle: f64,
}

impl PovmElement {
    pub fn new(weight: f64, radius: f64, angle: f64) -> Result<Self, ScenarioError> {
        if !weight.is_finite() || weight < 0.0 {
            return Err(ScenarioError::InvalidParameter(format!(
                "POVM weight must be nonnegative, got {weight}"
            )));
        }
        if !radius.is_finite() || radius.abs() > 1.0 {
            return Err(ScenarioError::InvalidParameter(format!(
                "POVM radius must be in [-1,1], got {radius}"
            )));
        }
        Ok(Self {
            weight,
            radius,
            angle,
        })
    }
}

/// Born-rule probability Tr[rho Pi] for a Bloch-represented state and POVM
/// element: (R/2) (1 + r n_theta . n_state).
pub fn born_probability(state: &QubitState, povm: &PovmElement) -> Result<f64, ScenarioError> {
    if povm.weight < 0.0 || povm.radius.abs() > 1.0 {
        return Err(ScenarioError::InvalidParameter(
            "invalid POVM element".into(),
        ));
    }
    let dot = povm.angle.sin() * state.bloch_x + povm.angle.cos() * state.bloch_z;
    Ok(povm.weight / 2.0 * (1.0 + povm.radius * dot))
}

/// An epistemic state reduced to its four region integrals, stored in the
/// region layout [[T_0, T_10], [T_bar10, T_1]].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpistemicMatrix {
    pub m: [[f64; 2]; 2],
}

impl EpistemicMatrix {
    pub fn new(m: [[f64; 2]; 2]) -> Result<Self, ScenarioError> {
        for row in &m {
            for &v in row {
                if !v.is_finite() || v < -PROB_TOL_INTERNAL {
                    return Err(ScenarioError::InvalidParameter(format!(
                        "epistemic matrix entries must be nonnegative, got {v}"
                    )));
                }
            }
        }
        Ok(Self { m })
    }

    /// The four canonical states for confusability `delta_c`, in the order
    /// mu_0, mu_1, mu_bar0, mu_bar1.
    pub fn canonical(delta_c: f64) -> [Self; 4] {
        let d = delta_c;
        [
            Self {
                m: [[1.0 - d, d], [0.0, 0.0]],
            },
            Self {
                m: [[0.0, d], [0.0, 1.0 - d]],
            },
            Self {
                m: [[0.0, 0.0], [d, 1.0 - d]],
            },
            Self {
                m: [[1.0 - d, 0.0], [d, 0.0]],
            },
        ]
    }

    /// Maximally mixed epistemic state.
    pub fn maximally_mixed(delta_c: f64) -> Self {
        let d = delta_c;
        Self {
            m: [[(1.0 - d) / 2.0, d / 2.0], [d / 2.0, (1.0 - d) / 2.0]],
        }
    }

    #[allow(clippy::needless_range_loop)]
    pub fn hadamard(&self, other: &Self) -> [[f64; 2]; 2] {
        let mut out = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = self.m[i][j] * other.m[i][j];
            }
        }
        out
    }

    pub fn sum(&self) -> f64 {
        self.m[0][0] + self.m[0][1] + self.m[1][0] + self.m[1][1]
    }
}

/// A response function reduced to the same four region integrals:
/// [[alpha_0b, beta_b], [bar-beta_b, alpha_1b]].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResponseMatrix {
    pub m: [[f64; 2]; 2],
}

impl ResponseMatrix {
    pub fn new(m: [[f64; 2]; 2]) -> Result<Self, ScenarioError> {
        for row in &m {
            for &v in row {
                if !v.is_finite() || !(-PROB_TOL_INTERNAL..=1.0 + PROB_TOL_INTERNAL).contains(&v) {
                    return Err(ScenarioError::InvalidParameter(format!(
                        "response matrix entries must be in [0,1], got {v}"
                    )));
                }
            }
        }
        Ok(Self { m })
    }

    pub fn alpha0(&self) -> f64 {
        self.m[0][0]
    }

    pub fn beta(&self) -> f64 {
        self.m[0][1]
    }

    pub fn beta_bar(&self) -> f64 {
        self.m[1][0]
    }

    pub fn alpha1(&self) -> f64 {
        self.m[1][1]
    }
}

/// Outcome probability in the noncontextual model. Because both matrices are
/// stored in the same region layout, Tr[xi mu] reduces to the entrywise
/// (Hadamard) sum of the two.
pub fn nc_probability(mu: &EpistemicMatrix, xi: &ResponseMatrix) -> Result<f64, ScenarioError> {
    for row in &mu.m {
        for &v in row {
            if v < -PROB_TOL_INTERNAL {
                return Err(ScenarioError::InvalidParameter(
                    "negative epistemic entry".into(),
                ));
            }
        }
    }
    for row in &xi.m {
        for &v in row {
            if v < -PROB_TOL_INTERNAL {
                return Err(ScenarioError::InvalidParameter(
                    "negative response entry".into(),
                ));
            }
        }
    }
    let mut p = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            p += mu.m[i][j] * xi.m[i][j];
        }
    }
    Ok(p)
}

/// Same probability computed as an explicit matrix-product trace,
/// Tr[xi_hat mu_hat] with mu_hat the transpose of the region layout. Kept as
/// a second algebraic route for consistency tests.
#[allow(clippy::needless_range_loop)]
pub fn nc_probability_trace(mu: &EpistemicMatrix, xi: &ResponseMatrix) -> f64 {
    // mu_hat = region-layout transposed; (xi * mu_hat) trace.
    let mu_hat = [[mu.m[0][0], mu.m[1][0]], [mu.m[0][1], mu.m[1][1]]];
    let mut tr = 0.0;
    for i in 0..2 {
        for k in 0..2 {
            tr += xi.m[i][k] * mu_hat[k][i];
        }
    }
    tr
}

/// One of the nine eavesdropper strategies: the announced-optimal outcome for
/// each input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OutcomeLabel {
    Zero,
    One,
    Inconclusive,
}

impl OutcomeLabel {
    pub const ALL: [OutcomeLabel; 3] = [
        OutcomeLabel::Zero,
        OutcomeLabel::One,
        OutcomeLabel::Inconclusive,
    ];

    pub fn index(&self) -> usize {
        match self {
            OutcomeLabel::Zero => 0,
            OutcomeLabel::One => 1,
            OutcomeLabel::Inconclusive => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StrategyIndex {
    pub lambda0: OutcomeLabel,
    pub lambda1: OutcomeLabel,
}

impl StrategyIndex {
    pub fn all() -> impl Iterator<Item = StrategyIndex> {
        OutcomeLabel::ALL.into_iter().flat_map(|lambda0| {
            OutcomeLabel::ALL
                .into_iter()
                .map(move |lambda1| StrategyIndex { lambda0, lambda1 })
        })
    }

    pub fn index(&self) -> usize {
        self.lambda0.index() * 3 + self.lambda1.index()
    }

    /// Announced outcome for the given input.
    pub fn lambda(&self, x: usize) -> OutcomeLabel {
        if x == 0 {
            self.lambda0
        } else {
            self.lambda1
        }
    }
}

/// Bayesian confidence C_x = p_x p(x|x) / eta_x.
pub fn confidence_from_stats(
    priors: &Priors,
    x: usize,
    p_xx: f64,
    eta_x: f64,
) -> Result<f64, ScenarioError> {
    check_prob("p_xx", p_xx, PROB_TOL_API)?;
    check_prob("eta_x", eta_x, PROB_TOL_API)?;
    if eta_x <= 0.0 {
        return Err(ScenarioError::UndefinedConfidence);
    }
    let px = if x == 0 { priors.p0() } else { priors.p1() };
    let c = px * p_xx / eta_x;
    if c > 1.0 + PROB_TOL_API {
        return Err(ScenarioError::InvalidProbability {
            name: "confidence",
            value: c,
        });
    }
    Ok(c.min(1.0))
}

/// Min-entropy in bits, -log2(p_guess).
pub fn min_entropy(p_guess: f64) -> Result<f64, ScenarioError> {
    if !p_guess.is_finite() || p_guess <= 0.0 || p_guess > 1.0 + PROB_TOL_INTERNAL {
        return Err(ScenarioError::InvalidProbability {
            name: "p_guess",
            value: p_guess,
        });
    }
    // `+ 0.0` turns the -0.0 arising at p_guess = 1 into plain zero.
    Ok(-p_guess.min(1.0).log2() + 0.0)
}

/// Minimal average error rate for minimum-error discrimination of two pure
/// states with overlap `delta`.
pub fn helstrom_error(priors: &Priors, delta: f64) -> Result<f64, ScenarioError> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(ScenarioError::InvalidParameter(format!(
            "delta must be in [0,1], got {delta}"
        )));
    }
    let disc = 1.0 - 4.0 * priors.p0() * priors.p1() * delta * delta;
    Ok(0.5 * (1.0 - disc.max(0.0).sqrt()))
}

/// Optimal unambiguous-discrimination inconclusive rate for unbiased inputs.
pub fn usd_inconclusive_rate(priors: &Priors, delta: f64) -> Result<f64, ScenarioError> {
    if !priors.is_unbiased() {
        return Err(ScenarioError::UnsupportedConfiguration(
            "the closed-form USD rate holds for unbiased inputs only".into(),
        ));
    }
    if !(0.0..=1.0).contains(&delta) {
        return Err(ScenarioError::InvalidParameter(format!(
            "delta must be in [0,1], got {delta}"
        )));
    }
    Ok(delta)
}

/// Parameter region of the output rate: whether input 0 or input 1 is
/// unambiguously identified at maximal confidence, or neither.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    Ui0,
    Interior,
    Ui1,
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Region::Ui0 => write!(f, "UI-0"),
            Region::Interior => write!(f, "interior"),
            Region::Ui1 => write!(f, "UI-1"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionInfo {
    pub label: Region,
    pub lower: f64,
    pub upper: f64,
}

/// Classifies the output rate against the unambiguous-identification
/// boundaries, (1 +- delta^2)/2 in the quantum model and (1 +- Delta)/2 in
/// the noncontextual one. Boundaries are closed: a rate exactly on a
/// boundary is classified into the adjacent UI region.
pub fn classify_region(theory: Theory, overlap: &Overlap, eta0: f64) -> RegionInfo {
    let par = match theory {
        Theory::Quantum => overlap.delta() * overlap.delta(),
        Theory::Noncontextual => overlap.confusability(),
    };
    let lower = (1.0 - par) / 2.0;
    let upper = (1.0 + par) / 2.0;
    // Boundaries are closed; absorb roundoff from derived parameters so a
    // nominal boundary point never lands in the open interior.
    let tol = 1e-12;
    let label = if eta0 <= lower + tol {
        Region::Ui0
    } else if eta0 >= upper - tol {
        Region::Ui1
    } else {
        Region::Interior
    };
    RegionInfo {
        label,
        lower,
        upper,
    }
}

/// Shifts a rate sitting exactly on a regime boundary by 1e-9 into the
/// adjacent unambiguous region, so sweeps that hit boundaries do not stall
/// the solver on degenerate instances. The move is outward because the
/// unambiguous side keeps the maximal confidence exactly representable
/// (1 below the lower boundary, 1/(2 eta0) above the upper one), while a
/// rate just inside the interior pairs with a confidence that rounds to 1
/// and becomes numerically infeasible. Returns the adjusted rate and
/// whether it moved.
pub fn nudge_eta0(info: &RegionInfo, eta0: f64) -> (f64, bool) {
    let eps = 1e-9;
    let snap = 1e-12;
    if (eta0 - info.lower).abs() <= snap && info.lower - eps > 0.0 {
        return (info.lower - eps, true);
    }
    if (eta0 - info.upper).abs() <= snap && info.upper + eps <= 1.0 {
        return (info.upper + eps, true);
    }
    (eta0, false)
}

/// Which eavesdropper model produced a certification result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AdversaryModel {
    Quantum,
    Noncontextual,
    /// Quantum eavesdropper against statistics produced by a noncontextual
    /// device.
    QuantumVsNoncontextualDevice,
}

impl std::fmt::Display for AdversaryModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AdversaryModel::Quantum => write!(f, "quantum"),
            AdversaryModel::Noncontextual => write!(f, "noncontextual"),
            AdversaryModel::QuantumVsNoncontextualDevice => write!(f, "quantum-vs-nc-device"),
        }
    }
}

/// A certified guessing-probability bound with its entropy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificationResult {
    pub p_guess: f64,
    pub min_entropy_bits: f64,
    pub adversary: AdversaryModel,
    pub certificate_valid: bool,
    /// Duality gap reported by the solver.
    pub gap: f64,
    /// Solver status string ("optimal" on success).
    pub status: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn born_probability_projectors() {
        let plus_z = QubitState::new(0.0, 0.0, 1.0).unwrap();
        let same = PovmElement::new(1.0, 1.0, 0.0).unwrap();
        let orth = PovmElement::new(1.0, 1.0, std::f64::consts::PI).unwrap();
        assert_abs_diff_eq!(
            born_probability(&plus_z, &same).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            born_probability(&plus_z, &orth).unwrap(),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn born_probability_annihilates_partner_state() {
        // cos(phi) = 0.6; the unambiguous element at theta = pi + phi, r = 1
        // annihilates the partner of rho_1, which sits at angle -phi... the
        // state at angle phi (towards +x) is annihilated by theta = phi + pi.
        let phi = 0.6f64.acos();
        let state = QubitState::pure_xz(phi, false);
        let povm = PovmElement::new(1.0, 1.0, std::f64::consts::PI + phi).unwrap();
        assert_abs_diff_eq!(
            born_probability(&state, &povm).unwrap(),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn born_probability_rejects_invalid_element() {
        let s = QubitState::new(0.0, 0.0, 1.0).unwrap();
        assert!(PovmElement::new(-0.1, 0.5, 0.0).is_err());
        assert!(PovmElement::new(1.0, 1.5, 0.0).is_err());
        let bad = PovmElement {
            weight: -1.0,
            radius: 0.0,
            angle: 0.0,
        };
        assert!(born_probability(&s, &bad).is_err());
    }

    #[test]
    fn nc_probability_canonical_cases() {
        let [mu0, _, _, _] = EpistemicMatrix::canonical(0.5);
        let ones = ResponseMatrix::new([[1.0, 1.0], [1.0, 1.0]]).unwrap();
        assert_abs_diff_eq!(nc_probability(&mu0, &ones).unwrap(), 1.0, epsilon = 1e-15);

        let [mu0, _, _, _] = EpistemicMatrix::canonical(0.3);
        let cover = ResponseMatrix::new([[1.0, 1.0], [0.0, 0.0]]).unwrap();
        assert_abs_diff_eq!(nc_probability(&mu0, &cover).unwrap(), 1.0, epsilon = 1e-15);

        let beta_only = ResponseMatrix::new([[0.0, 1.0], [0.0, 0.0]]).unwrap();
        assert_abs_diff_eq!(
            nc_probability(&mu0, &beta_only).unwrap(),
            0.3,
            epsilon = 1e-15
        );
    }

    #[test]
    fn nc_probability_rejects_negative_entries() {
        let mu = EpistemicMatrix {
            m: [[-0.1, 0.0], [0.0, 0.0]],
        };
        let xi = ResponseMatrix::new([[1.0, 1.0], [1.0, 1.0]]).unwrap();
        assert!(nc_probability(&mu, &xi).is_err());
    }

    #[test]
    fn trace_and_hadamard_routes_agree() {
        let mu = EpistemicMatrix::new([[0.2, 0.3], [0.1, 0.4]]).unwrap();
        let xi = ResponseMatrix::new([[0.9, 0.1], [0.5, 0.7]]).unwrap();
        let a = nc_probability(&mu, &xi).unwrap();
        let b = nc_probability_trace(&mu, &xi);
        assert_abs_diff_eq!(a, b, epsilon = 1e-14);
    }

    #[test]
    fn confidence_examples() {
        let p = Priors::unbiased();
        assert_abs_diff_eq!(
            confidence_from_stats(&p, 0, 1.0, 0.5).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        for q in [0.1, 0.4, 0.9] {
            assert_abs_diff_eq!(
                confidence_from_stats(&p, 0, q, q).unwrap(),
                0.5,
                epsilon = 1e-15
            );
        }
        assert_abs_diff_eq!(
            confidence_from_stats(&p, 0, 0.8, 0.5).unwrap(),
            0.8,
            epsilon = 1e-15
        );
        assert_eq!(
            confidence_from_stats(&p, 0, 0.5, 0.0),
            Err(ScenarioError::UndefinedConfidence)
        );
    }

    #[test]
    fn min_entropy_examples() {
        assert_abs_diff_eq!(min_entropy(1.0).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(min_entropy(0.5).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            min_entropy(0.75).unwrap(),
            (4.0f64 / 3.0).log2(),
            epsilon = 1e-12
        );
        assert!(min_entropy(0.0).is_err());
        assert!(min_entropy(1.1).is_err());
    }

    #[test]
    fn helstrom_examples() {
        let p = Priors::unbiased();
        assert_abs_diff_eq!(helstrom_error(&p, 0.0).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(helstrom_error(&p, 1.0).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(helstrom_error(&p, 0.6).unwrap(), 0.1, epsilon = 1e-15);
    }

    #[test]
    fn usd_examples() {
        let p = Priors::unbiased();
        assert_abs_diff_eq!(
            usd_inconclusive_rate(&p, 0.0).unwrap(),
            0.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            usd_inconclusive_rate(&p, 1.0).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            usd_inconclusive_rate(&p, 0.4).unwrap(),
            0.4,
            epsilon = 1e-15
        );
        let biased = Priors::new(0.6, 0.4).unwrap();
        assert!(usd_inconclusive_rate(&biased, 0.4).is_err());
    }

    #[test]
    fn region_classification() {
        let ov = Overlap::calibrated_from_confusability(0.5).unwrap();
        let info = classify_region(Theory::Quantum, &ov, 0.2);
        assert_eq!(info.label, Region::Ui0);
        assert_abs_diff_eq!(info.lower, 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(info.upper, 0.75, epsilon = 1e-15);

        let ov = Overlap::calibrated_from_confusability(0.3).unwrap();
        let info = classify_region(Theory::Noncontextual, &ov, 0.5);
        assert_eq!(info.label, Region::Interior);
        assert_abs_diff_eq!(info.lower, 0.35, epsilon = 1e-15);
        assert_abs_diff_eq!(info.upper, 0.65, epsilon = 1e-15);

        // Boundary values land in the closed UI region.
        let ov = Overlap::calibrated_from_confusability(0.5).unwrap();
        let info = classify_region(Theory::Quantum, &ov, 0.25);
        assert_eq!(info.label, Region::Ui0);
    }

    #[test]
    fn canonical_states_invariants() {
        for i in 0..=50 {
            let d = i as f64 / 50.0;
            let [mu0, mu1, mu0b, mu1b] = EpistemicMatrix::canonical(d);
            for (a, b) in [(&mu0, &mu0b), (&mu1, &mu1b)] {
                for row in a.hadamard(b) {
                    for v in row {
                        assert_eq!(v, 0.0);
                    }
                }
            }
            let mix = EpistemicMatrix::maximally_mixed(d);
            for i in 0..2 {
                for j in 0..2 {
                    assert_abs_diff_eq!(
                        0.5 * mu0.m[i][j] + 0.5 * mu0b.m[i][j],
                        mix.m[i][j],
                        epsilon = 1e-15
                    );
                    assert_abs_diff_eq!(
                        0.5 * mu1.m[i][j] + 0.5 * mu1b.m[i][j],
                        mix.m[i][j],
                        epsilon = 1e-15
                    );
                }
            }
            assert_abs_diff_eq!(mu0.sum(), 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn helstrom_monotone_min_entropy_decreasing() {
        let p = Priors::unbiased();
        let mut prev = -1.0;
        for i in 0..=100 {
            let d = i as f64 / 100.0;
            let e = helstrom_error(&p, d).unwrap();
            assert!(e >= prev - 1e-15);
            prev = e;
        }
        let mut prev = f64::INFINITY;
        for i in 1..=100 {
            let pg = i as f64 / 100.0;
            let h = min_entropy(pg).unwrap();
            assert!(h < prev);
            prev = h;
        }
    }
}

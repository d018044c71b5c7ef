//! Self-contained solver for small block-diagonal conic programs.
//!
//! Handles maximization of a linear functional over a product of 2x2 PSD
//! blocks and nonnegative scalar blocks, subject to linear equality
//! constraints. All instances in this crate are tiny (at most 108 blocks and
//! 40 constraints), so the implementation favours robustness: a primal-dual
//! path-following method with closed-form 2x2 block kernels and a dense
//! Schur-complement solve.

mod ipm;
pub mod mat2;

use mat2::Herm2;
use thiserror::Error;

pub use ipm::{solve, solve_with_trace};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("invalid problem: {0}")]
    Invalid(String),
    #[error("constraint {0} has zero norm")]
    DegenerateConstraint(usize),
    #[error("dual solution is not feasible (residual {0:.3e})")]
    DualInfeasible(f64),
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    Psd2,
    NonnegScalar,
}

/// A per-block value: either a 2x2 Hermitian matrix (coefficient or PSD
/// variable) or a scalar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BlockMat {
    Psd2(Herm2),
    Scalar(f64),
}

impl BlockMat {
    pub fn kind(&self) -> BlockKind {
        match self {
            BlockMat::Psd2(_) => BlockKind::Psd2,
            BlockMat::Scalar(_) => BlockKind::NonnegScalar,
        }
    }

    pub fn zero_of(kind: BlockKind) -> BlockMat {
        match kind {
            BlockKind::Psd2 => BlockMat::Psd2(Herm2::ZERO),
            BlockKind::NonnegScalar => BlockMat::Scalar(0.0),
        }
    }

    pub fn identity_of(kind: BlockKind, scale: f64) -> BlockMat {
        match kind {
            BlockKind::Psd2 => BlockMat::Psd2(Herm2::identity(scale)),
            BlockKind::NonnegScalar => BlockMat::Scalar(scale),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            BlockMat::Psd2(_) => 2,
            BlockMat::Scalar(_) => 1,
        }
    }

    pub fn inner(&self, other: &BlockMat) -> f64 {
        match (self, other) {
            (BlockMat::Psd2(a), BlockMat::Psd2(b)) => a.inner(b),
            (BlockMat::Scalar(a), BlockMat::Scalar(b)) => a * b,
            _ => panic!("block kind mismatch"),
        }
    }

    pub fn axpy(&mut self, s: f64, other: &BlockMat) {
        match (self, other) {
            (BlockMat::Psd2(a), BlockMat::Psd2(b)) => a.axpy(s, b),
            (BlockMat::Scalar(a), BlockMat::Scalar(b)) => *a += s * b,
            _ => panic!("block kind mismatch"),
        }
    }

    /// Smallest eigenvalue (the scalar itself for scalar blocks).
    pub fn min_eig(&self) -> f64 {
        match self {
            BlockMat::Psd2(h) => h.min_eig(),
            BlockMat::Scalar(s) => *s,
        }
    }

    pub fn max_eig(&self) -> f64 {
        match self {
            BlockMat::Psd2(h) => h.max_eig(),
            BlockMat::Scalar(s) => *s,
        }
    }

    pub fn norm_inf(&self) -> f64 {
        match self {
            BlockMat::Psd2(h) => h.norm_inf(),
            BlockMat::Scalar(s) => s.abs(),
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            BlockMat::Psd2(h) => {
                h.a.is_finite() && h.d.is_finite() && h.cr.is_finite() && h.ci.is_finite()
            }
            BlockMat::Scalar(s) => s.is_finite(),
        }
    }
}

/// One linear equality constraint, stored sparsely over blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub label: String,
    pub coeffs: Vec<(usize, BlockMat)>,
    pub rhs: f64,
}

/// A block-diagonal conic program in maximization form:
/// maximize <C, X> subject to <A_i, X> = b_i and X in the cone product.
#[derive(Debug, Clone, PartialEq)]
pub struct ConicProblem {
    pub blocks: Vec<(BlockKind, String)>,
    pub objective: Vec<BlockMat>,
    pub constraints: Vec<Constraint>,
    /// Optional multiplier vector `h` with `A*(h)` strictly in the dual
    /// cone on every block; used for a dual-feasible interior start.
    pub dual_interior_hint: Option<Vec<f64>>,
}

impl ConicProblem {
    pub fn validate(&self) -> Result<(), SolverError> {
        if self.objective.len() != self.blocks.len() {
            return Err(SolverError::Invalid(format!(
                "objective has {} blocks, problem has {}",
                self.objective.len(),
                self.blocks.len()
            )));
        }
        for (k, (kind, label)) in self.blocks.iter().enumerate() {
            if self.objective[k].kind() != *kind {
                return Err(SolverError::Invalid(format!(
                    "objective block {label} kind mismatch"
                )));
            }
            if !self.objective[k].is_finite() {
                return Err(SolverError::Invalid(format!(
                    "objective block {label} has non-finite entries"
                )));
            }
        }
        for (ci, c) in self.constraints.iter().enumerate() {
            if !c.rhs.is_finite() {
                return Err(SolverError::Invalid(format!(
                    "constraint {ci} ({}) has non-finite rhs",
                    c.label
                )));
            }
            for (bi, m) in &c.coeffs {
                if *bi >= self.blocks.len() {
                    return Err(SolverError::Invalid(format!(
                        "constraint {ci} references block {bi} out of range"
                    )));
                }
                if m.kind() != self.blocks[*bi].0 {
                    return Err(SolverError::Invalid(format!(
                        "constraint {ci} coefficient kind mismatch on block {bi}"
                    )));
                }
                if !m.is_finite() {
                    return Err(SolverError::Invalid(format!(
                        "constraint {ci} has non-finite coefficients"
                    )));
                }
            }
        }
        if let Some(h) = &self.dual_interior_hint {
            if h.len() != self.constraints.len() {
                return Err(SolverError::Invalid(
                    "dual interior hint length mismatch".into(),
                ));
            }
        }
        Ok(())
    }

    /// Applies the adjoint operator: out = sum_i y_i A_i.
    pub fn adjoint(&self, y: &[f64]) -> Vec<BlockMat> {
        let mut out: Vec<BlockMat> = self
            .blocks
            .iter()
            .map(|(k, _)| BlockMat::zero_of(*k))
            .collect();
        for (ci, c) in self.constraints.iter().enumerate() {
            for (bi, m) in &c.coeffs {
                out[*bi].axpy(y[ci], m);
            }
        }
        out
    }

    /// Applies the forward operator: out_i = <A_i, X>.
    pub fn forward(&self, x: &[BlockMat]) -> Vec<f64> {
        self.constraints
            .iter()
            .map(|c| c.coeffs.iter().map(|(bi, m)| m.inner(&x[*bi])).sum())
            .collect()
    }

    pub fn total_dim(&self) -> usize {
        self.blocks
            .iter()
            .map(|(k, _)| match k {
                BlockKind::Psd2 => 2,
                BlockKind::NonnegScalar => 1,
            })
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    Unbounded,
    MaxIterations,
}

impl std::fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SolveStatus::Optimal => write!(f, "optimal"),
            SolveStatus::Infeasible => write!(f, "infeasible"),
            SolveStatus::Unbounded => write!(f, "unbounded"),
            SolveStatus::MaxIterations => write!(f, "max-iterations"),
        }
    }
}

/// Primal-dual solution pair. Multipliers are in the maximization
/// convention: Z = sum_i y_i A_i - C lies in the dual cone, and the dual
/// objective b.y upper-bounds the primal optimum.
#[derive(Debug, Clone, PartialEq)]
pub struct ConicSolution {
    pub status: SolveStatus,
    pub primal_value: f64,
    pub dual_value: f64,
    pub gap: f64,
    pub primal_blocks: Vec<BlockMat>,
    pub dual_multipliers: Vec<f64>,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub iterations: usize,
}

/// Solver tolerances and iteration limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverSettings {
    pub gap_tol: f64,
    pub feas_tol: f64,
    pub max_iterations: usize,
    /// Fraction-to-boundary step parameter.
    pub step_fraction: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings {
            gap_tol: 1e-9,
            // Instances nudged 1e-9 off a regime boundary floor their
            // primal residual just below 1e-8; tighter is unreachable there.
            feas_tol: 1e-8,
            max_iterations: 200,
            step_fraction: 0.99,
        }
    }
}

/// Result of re-verifying a dual certificate from problem data.
#[derive(Debug, Clone, PartialEq)]
pub struct CertificateReport {
    /// Worst violation of the dual cone across all blocks (0 when clean).
    pub max_cone_violation: f64,
    /// Dual objective recomputed from the multipliers.
    pub bound: f64,
    pub valid: bool,
}

/// Certificate acceptance threshold.
pub const CERT_TOL: f64 = 1e-7;

/// Recomputes the dual slack Z = A*(y) - C from first principles and scans
/// it against the dual cone. This path shares no state with the solver
/// iteration, so it independently validates the reported bound.
pub fn check_dual_certificate(
    problem: &ConicProblem,
    solution: &ConicSolution,
) -> CertificateReport {
    let mut z = problem.adjoint(&solution.dual_multipliers);
    for (k, zb) in z.iter_mut().enumerate() {
        zb.axpy(-1.0, &problem.objective[k]);
    }
    let mut worst: f64 = 0.0;
    for zb in &z {
        let v = match zb {
            BlockMat::Psd2(h) => -h.min_eig(),
            BlockMat::Scalar(s) => -s,
        };
        worst = worst.max(v);
    }
    let bound = problem
        .constraints
        .iter()
        .zip(&solution.dual_multipliers)
        .map(|(c, y)| c.rhs * y)
        .sum();
    CertificateReport {
        max_cone_violation: worst,
        bound,
        valid: worst <= CERT_TOL,
    }
}

/// Returns the certified upper bound carried by the dual solution,
/// rejecting solutions whose dual residual exceeds `tol`. Valid even for
/// early-terminated solves, as long as the dual iterate stayed feasible.
pub fn extract_bound(solution: &ConicSolution, tol: f64) -> Result<f64, SolverError> {
    if solution.dual_residual > tol {
        return Err(SolverError::DualInfeasible(solution.dual_residual));
    }
    Ok(solution.dual_value)
}

/// Removes variable blocks that a zero right-hand side pins to zero, along
/// with rows made vacuous by the removal. Block indices in the surviving
/// constraints and the dual interior hint are remapped accordingly.
pub fn reduce_problem(
    problem: &ConicProblem,
    remove_blocks: &[usize],
    remove_rows: &[usize],
) -> ConicProblem {
    let mut keep_map = vec![usize::MAX; problem.blocks.len()];
    let mut next = 0;
    for (k, slot) in keep_map.iter_mut().enumerate() {
        if !remove_blocks.contains(&k) {
            *slot = next;
            next += 1;
        }
    }
    let blocks = problem
        .blocks
        .iter()
        .enumerate()
        .filter(|(k, _)| keep_map[*k] != usize::MAX)
        .map(|(_, b)| b.clone())
        .collect();
    let objective = problem
        .objective
        .iter()
        .enumerate()
        .filter(|(k, _)| keep_map[*k] != usize::MAX)
        .map(|(_, m)| *m)
        .collect();
    let constraints: Vec<Constraint> = problem
        .constraints
        .iter()
        .enumerate()
        .filter(|(ci, _)| !remove_rows.contains(ci))
        .map(|(_, c)| Constraint {
            label: c.label.clone(),
            coeffs: c
                .coeffs
                .iter()
                .filter(|(bi, _)| keep_map[*bi] != usize::MAX)
                .map(|(bi, m)| (keep_map[*bi], *m))
                .collect(),
            rhs: c.rhs,
        })
        .collect();
    let dual_interior_hint = problem.dual_interior_hint.as_ref().map(|h| {
        h.iter()
            .enumerate()
            .filter(|(ci, _)| !remove_rows.contains(ci))
            .map(|(_, v)| *v)
            .collect()
    });
    ConicProblem {
        blocks,
        objective,
        constraints,
        dual_interior_hint,
    }
}

/// A problem with unit-norm constraint rows plus the transformation needed
/// to map multipliers back to the original scaling.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledProblem {
    pub problem: ConicProblem,
    row_scales: Vec<f64>,
}

impl ScaledProblem {
    /// Maps a solution of the scaled problem back to the original problem's
    /// multiplier convention. Objective values are unchanged.
    pub fn unscale_solution(&self, mut solution: ConicSolution) -> ConicSolution {
        // Row i was multiplied by row_scales[i], so its multiplier picks up
        // the same factor when expressed against the original row.
        for (y, s) in solution.dual_multipliers.iter_mut().zip(&self.row_scales) {
            *y *= s;
        }
        solution
    }
}

/// Normalizes every constraint row to unit Frobenius norm. The feasible set
/// and optimum are unchanged; the recorded scales map multipliers back.
pub fn scale_and_precondition(problem: &ConicProblem) -> Result<ScaledProblem, SolverError> {
    problem.validate()?;
    let mut scaled = problem.clone();
    let mut row_scales = Vec::with_capacity(problem.constraints.len());
    for (ci, c) in scaled.constraints.iter_mut().enumerate() {
        let norm_sq: f64 = c.coeffs.iter().map(|(_, m)| m.inner(m)).sum();
        let norm = norm_sq.sqrt();
        if norm < 1e-150 {
            return Err(SolverError::DegenerateConstraint(ci));
        }
        let inv = 1.0 / norm;
        for (_, m) in c.coeffs.iter_mut() {
            match m {
                BlockMat::Psd2(h) => *h = h.scaled(inv),
                BlockMat::Scalar(s) => *s *= inv,
            }
        }
        c.rhs *= inv;
        row_scales.push(inv);
    }
    if let Some(h) = scaled.dual_interior_hint.as_mut() {
        // A*(h) must stay the same matrix after row scaling.
        for (hy, s) in h.iter_mut().zip(&row_scales) {
            *hy /= s;
        }
    }
    Ok(ScaledProblem {
        problem: scaled,
        row_scales,
    })
}

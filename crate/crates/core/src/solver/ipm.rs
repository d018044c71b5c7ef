//! Primal-dual path-following iteration.
//!
//! The solver works on the internal minimization form `min <Cm, X>` with
//! `Cm = -C`, so the reported maximization objective is the negation of the
//! internal one. Directions use the dual (HKM) scaling with a Mehrotra
//! predictor-corrector; the Schur complement is assembled densely and
//! factored once per iteration.
//!
//! When the problem carries a dual interior hint the iteration starts
//! exactly dual-feasible. Dual feasibility is then preserved by the update
//! rule up to roundoff, which keeps the dual objective a valid bound even
//! for early-terminated solves.

use std::io::Write;

use nalgebra::{DMatrix, DVector};

use super::mat2::triple;
use super::{
    scale_and_precondition, BlockMat, ConicProblem, ConicSolution, SolveStatus, SolverError,
    SolverSettings,
};

/// Objective magnitude beyond which the dual is declared unbounded, which
/// certifies primal infeasibility (and vice versa).
const DIVERGENCE_LIMIT: f64 = 1e8;

/// Solves a block-diagonal conic maximization problem.
pub fn solve(
    problem: &ConicProblem,
    settings: &SolverSettings,
) -> Result<ConicSolution, SolverError> {
    solve_with_trace(problem, settings, None)
}

/// Like [`solve`], but optionally writes one JSON line per iteration with
/// the gap, residuals and step sizes to the given sink.
pub fn solve_with_trace(
    problem: &ConicProblem,
    settings: &SolverSettings,
    trace: Option<&mut dyn Write>,
) -> Result<ConicSolution, SolverError> {
    let scaled = scale_and_precondition(problem)?;
    let solution = run(&scaled.problem, settings, trace)?;
    Ok(scaled.unscale_solution(solution))
}

struct Workspace<'a> {
    problem: &'a ConicProblem,
    /// Internal minimization objective, Cm = -C.
    cm: Vec<BlockMat>,
    b: Vec<f64>,
    /// Per-block list of (constraint index, coefficient).
    adj: Vec<Vec<(usize, BlockMat)>>,
    n_dim: f64,
}

impl<'a> Workspace<'a> {
    fn new(problem: &'a ConicProblem) -> Self {
        let cm: Vec<BlockMat> = problem
            .objective
            .iter()
            .map(|m| match m {
                BlockMat::Psd2(h) => BlockMat::Psd2(h.scaled(-1.0)),
                BlockMat::Scalar(s) => BlockMat::Scalar(-s),
            })
            .collect();
        let b: Vec<f64> = problem.constraints.iter().map(|c| c.rhs).collect();
        let mut adj: Vec<Vec<(usize, BlockMat)>> = vec![Vec::new(); problem.blocks.len()];
        for (ci, c) in problem.constraints.iter().enumerate() {
            for (bi, m) in &c.coeffs {
                adj[*bi].push((ci, *m));
            }
        }
        let n_dim = problem.total_dim() as f64;
        Workspace {
            problem,
            cm,
            b,
            adj,
            n_dim,
        }
    }

    /// Internal dual residual blocks Rd = Cm - A*(y) - Z.
    fn dual_residual(&self, y: &[f64], z: &[BlockMat]) -> Vec<BlockMat> {
        let mut rd = self.cm.clone();
        let at = self.problem.adjoint(y);
        for ((r, a), zb) in rd.iter_mut().zip(&at).zip(z) {
            r.axpy(-1.0, a);
            r.axpy(-1.0, zb);
        }
        rd
    }

    fn primal_residual(&self, x: &[BlockMat]) -> Vec<f64> {
        let ax = self.problem.forward(x);
        self.b.iter().zip(&ax).map(|(b, a)| b - a).collect()
    }
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

fn block_inf_norm(v: &[BlockMat]) -> f64 {
    v.iter().fold(0.0_f64, |m, x| m.max(x.norm_inf()))
}

fn bv_inner(a: &[BlockMat], b: &[BlockMat]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.inner(y)).sum()
}

fn bv_axpy(dst: &mut [BlockMat], s: f64, src: &[BlockMat]) {
    for (d, m) in dst.iter_mut().zip(src) {
        d.axpy(s, m);
    }
}

/// Hermitian part of X*M*Zinv, blockwise.
fn herm_xmz(x: &BlockMat, m: &BlockMat, zinv: &BlockMat) -> BlockMat {
    match (x, m, zinv) {
        (BlockMat::Psd2(x), BlockMat::Psd2(m), BlockMat::Psd2(zi)) => {
            BlockMat::Psd2(triple(x, m, zi).herm_part())
        }
        (BlockMat::Scalar(x), BlockMat::Scalar(m), BlockMat::Scalar(zi)) => {
            BlockMat::Scalar(x * m * zi)
        }
        _ => panic!("block kind mismatch"),
    }
}

fn block_inverse(z: &BlockMat) -> BlockMat {
    match z {
        BlockMat::Psd2(h) => BlockMat::Psd2(h.inverse()),
        BlockMat::Scalar(s) => BlockMat::Scalar(1.0 / s),
    }
}

/// Largest t with X + t*D in the cone, over all blocks.
fn max_step(x: &[BlockMat], d: &[BlockMat]) -> f64 {
    let mut t = f64::INFINITY;
    for (xb, db) in x.iter().zip(d) {
        let s = match (xb, db) {
            (BlockMat::Psd2(x), BlockMat::Psd2(d)) => x.max_step(d),
            (BlockMat::Scalar(x), BlockMat::Scalar(d)) => {
                if *d < 0.0 {
                    -x / d
                } else {
                    f64::INFINITY
                }
            }
            _ => panic!("block kind mismatch"),
        };
        t = t.min(s);
    }
    t
}

/// Initial iterates. Uses the dual interior hint when it yields a strictly
/// feasible dual start; falls back to an infeasible start otherwise.
fn initial_point(ws: &Workspace) -> (Vec<BlockMat>, Vec<f64>, Vec<BlockMat>) {
    let problem = ws.problem;
    let x_scale = 1.0_f64.max(inf_norm(&ws.b));
    let x: Vec<BlockMat> = problem
        .blocks
        .iter()
        .map(|(k, _)| BlockMat::identity_of(*k, x_scale))
        .collect();

    if let Some(hint) = &problem.dual_interior_hint {
        let basis = problem.adjoint(hint);
        let basis_min = basis
            .iter()
            .map(|m| m.min_eig())
            .fold(f64::INFINITY, f64::min);
        if basis_min > 1e-9 {
            // Want Z = s*A*(h) - C with every block at least the margin;
            // s*lmin(B_k) - lmax(C_k) >= margin suffices per block.
            let margin = 1.0;
            let mut s = 1.0_f64;
            for (bm, cb) in basis.iter().zip(&problem.objective) {
                s = s.max((cb.max_eig() + margin) / bm.min_eig());
            }
            // Internal multipliers are the negated maximization ones.
            let y: Vec<f64> = hint.iter().map(|h| -s * h).collect();
            let mut z = ws.cm.clone();
            let at = problem.adjoint(&y);
            for (zb, a) in z.iter_mut().zip(&at) {
                zb.axpy(-1.0, a);
            }
            debug_assert!(z.iter().all(|m| m.min_eig() > 0.0));
            return (x, y, z);
        }
    }

    let z_scale = 1.0 + block_inf_norm(&ws.cm);
    let z: Vec<BlockMat> = problem
        .blocks
        .iter()
        .map(|(k, _)| BlockMat::identity_of(*k, z_scale))
        .collect();
    let y = vec![0.0; problem.constraints.len()];
    (x, y, z)
}

/// Assembles the Schur complement M_ij = Re Tr[A_i X A_j Z^-1] and the
/// partial right-hand side A(X) + A(herm(X Rd Z^-1)).
fn assemble_schur(
    ws: &Workspace,
    x: &[BlockMat],
    zinv: &[BlockMat],
    rd: &[BlockMat],
) -> (DMatrix<f64>, DVector<f64>) {
    let m = ws.problem.constraints.len();
    let mut schur = DMatrix::<f64>::zeros(m, m);
    let mut partial = DVector::<f64>::zeros(m);
    for (k, coeffs) in ws.adj.iter().enumerate() {
        match (&x[k], &zinv[k], &rd[k]) {
            (BlockMat::Psd2(xb), BlockMat::Psd2(zib), BlockMat::Psd2(rdb)) => {
                let xrz = triple(xb, rdb, zib);
                for (j, aj) in coeffs {
                    let (aj_h, j) = match aj {
                        BlockMat::Psd2(h) => (h, *j),
                        _ => unreachable!(),
                    };
                    let t = triple(xb, aj_h, zib);
                    for (i, ai) in coeffs {
                        let ai_h = match ai {
                            BlockMat::Psd2(h) => h,
                            _ => unreachable!(),
                        };
                        schur[(*i, j)] += t.inner_herm(ai_h);
                    }
                    partial[j] += aj_h.inner(xb) + xrz.inner_herm(aj_h);
                }
            }
            (BlockMat::Scalar(xs), BlockMat::Scalar(zis), BlockMat::Scalar(rds)) => {
                let factor = xs * zis;
                for (j, aj) in coeffs {
                    let aj_s = match aj {
                        BlockMat::Scalar(s) => *s,
                        _ => unreachable!(),
                    };
                    for (i, ai) in coeffs {
                        let ai_s = match ai {
                            BlockMat::Scalar(s) => *s,
                            _ => unreachable!(),
                        };
                        schur[(*i, *j)] += ai_s * aj_s * factor;
                    }
                    partial[*j] += aj_s * xs + aj_s * xs * rds * zis;
                }
            }
            _ => panic!("block kind mismatch"),
        }
    }
    // Exact symmetry holds analytically; restore it against roundoff.
    for i in 0..m {
        for j in (i + 1)..m {
            let avg = 0.5 * (schur[(i, j)] + schur[(j, i)]);
            schur[(i, j)] = avg;
            schur[(j, i)] = avg;
        }
    }
    (schur, partial)
}

struct Factorization {
    lu: nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
    /// Unregularized matrix, kept for iterative refinement residuals.
    mat: DMatrix<f64>,
}

impl Factorization {
    fn new(schur: DMatrix<f64>) -> Result<Self, SolverError> {
        let diag_max = (0..schur.nrows())
            .map(|i| schur[(i, i)].abs())
            .fold(0.0_f64, f64::max);
        for reg in [0.0, 1e-13, 1e-10] {
            let mut trial = schur.clone();
            if reg > 0.0 {
                for i in 0..trial.nrows() {
                    trial[(i, i)] += reg * (1.0 + diag_max);
                }
            }
            let lu = trial.lu();
            if lu.is_invertible() {
                return Ok(Factorization { lu, mat: schur });
            }
        }
        Err(SolverError::NumericalFailure(
            "Schur complement is singular".into(),
        ))
    }

    fn solve(&self, rhs: &DVector<f64>) -> Result<DVector<f64>, SolverError> {
        let mut out = self
            .lu
            .solve(rhs)
            .ok_or_else(|| SolverError::NumericalFailure("Schur solve failed".into()))?;
        // The Schur system is severely ill-conditioned near the central
        // path's end; a couple of refinement rounds against the
        // unregularized matrix recovers the digits the factorization loses.
        for _ in 0..2 {
            let residual = rhs - &self.mat * &out;
            if let Some(correction) = self.lu.solve(&residual) {
                if correction.iter().all(|v| v.is_finite()) {
                    out += correction;
                    continue;
                }
            }
            break;
        }
        if out.iter().any(|v| !v.is_finite()) {
            return Err(SolverError::NumericalFailure(
                "Schur solve produced non-finite values".into(),
            ));
        }
        Ok(out)
    }
}

/// Recovers (dX, dZ) from the multiplier direction dy.
///
/// dZ = Rd - A*(dy); dX = sigma*mu*Z^-1 - X - herm(X dZ Z^-1) - correction,
/// where the correction is herm(dXa dZa Z^-1) from the predictor step.
#[allow(clippy::too_many_arguments)]
fn recover_directions(
    ws: &Workspace,
    x: &[BlockMat],
    zinv: &[BlockMat],
    rd: &[BlockMat],
    dy: &[f64],
    sigma_mu: f64,
    corrector: Option<(&[BlockMat], &[BlockMat])>,
) -> (Vec<BlockMat>, Vec<BlockMat>) {
    let at_dy = ws.problem.adjoint(dy);
    let mut dz = rd.to_vec();
    bv_axpy(&mut dz, -1.0, &at_dy);

    let mut dx = Vec::with_capacity(x.len());
    for k in 0..x.len() {
        let mut d = zinv[k];
        match &mut d {
            BlockMat::Psd2(h) => *h = h.scaled(sigma_mu),
            BlockMat::Scalar(s) => *s *= sigma_mu,
        }
        d.axpy(-1.0, &x[k]);
        d.axpy(-1.0, &herm_xmz(&x[k], &dz[k], &zinv[k]));
        if let Some((dxa, dza)) = corrector {
            d.axpy(-1.0, &herm_xmz(&dxa[k], &dza[k], &zinv[k]));
        }
        dx.push(d);
    }
    (dx, dz)
}

/// Snapshot of the best iterate seen so far: merit, primal blocks, dual
/// multipliers, dual slack blocks.
type BestIterate = (f64, Vec<BlockMat>, Vec<f64>, Vec<BlockMat>);

fn run(
    problem: &ConicProblem,
    settings: &SolverSettings,
    mut trace: Option<&mut dyn Write>,
) -> Result<ConicSolution, SolverError> {
    let ws = Workspace::new(problem);
    let m = problem.constraints.len();
    let (mut x, mut y, mut z) = initial_point(&ws);

    if problem.blocks.is_empty() {
        return Ok(ConicSolution {
            status: SolveStatus::Optimal,
            primal_value: 0.0,
            dual_value: 0.0,
            gap: 0.0,
            primal_blocks: x,
            dual_multipliers: y.iter().map(|v| -v).collect(),
            primal_residual: inf_norm(&ws.primal_residual(&[])),
            dual_residual: 0.0,
            iterations: 0,
        });
    }

    let mut status = SolveStatus::MaxIterations;
    let mut iterations = 0;
    let mut tiny_steps = 0;
    // Residual tolerances are relative to the data norms, the standard
    // convergence measure; near-degenerate instances floor a few ulps
    // above the absolute tolerance otherwise.
    let bnorm = 1.0 + inf_norm(&ws.b);
    let cnorm = 1.0 + block_inf_norm(&ws.cm);
    // Best iterate by worst-of(residuals, relative gap); the endgame can
    // degrade numerically after passing very close to the optimum, and the
    // final answer should not pay for that.
    let mut best: Option<BestIterate> = None;
    let mut breakdown: Option<SolverError> = None;

    for iter in 0..settings.max_iterations {
        iterations = iter + 1;
        let rp = ws.primal_residual(&x);
        let rd = ws.dual_residual(&y, &z);
        let rp_inf = inf_norm(&rp);
        let rd_inf = block_inf_norm(&rd);
        let pobj_int = bv_inner(&ws.cm, &x);
        let dobj_int: f64 = ws.b.iter().zip(&y).map(|(b, y)| b * y).sum();
        // Two gap estimates: the objective difference is polluted by
        // O(|y| * rp) when the primal is only feasible to tolerance, while
        // the complementarity <X, Z> stays exact; take the sharper one.
        let comp = bv_inner(&x, &z).max(0.0);
        let gap = (pobj_int - dobj_int).abs().min(comp);
        let mu = comp / ws.n_dim;

        let merit = (rp_inf / bnorm)
            .max(rd_inf / cnorm)
            .max(gap / (1.0 + pobj_int.abs().max(dobj_int.abs())));
        if best.as_ref().is_none_or(|(m, ..)| merit < *m) {
            best = Some((merit, x.clone(), y.clone(), z.clone()));
        }

        if let Some(sink) = trace.as_deref_mut() {
            let _ = writeln!(
                sink,
                "{{\"iteration\":{iter},\"mu\":{mu:e},\"gap\":{gap:e},\"primal_residual\":{rp_inf:e},\"dual_residual\":{rd_inf:e}}}"
            );
        }

        let scale = 1.0 + pobj_int.abs().max(dobj_int.abs());
        if rp_inf <= settings.feas_tol * bnorm
            && rd_inf <= settings.feas_tol * cnorm
            && gap <= settings.gap_tol * scale
        {
            status = SolveStatus::Optimal;
            break;
        }
        if rd_inf <= 1e-6 && dobj_int > DIVERGENCE_LIMIT {
            // Dual objective diverges along a feasible ray: primal infeasible.
            status = SolveStatus::Infeasible;
            break;
        }
        if rp_inf <= 1e-6 && pobj_int < -DIVERGENCE_LIMIT {
            status = SolveStatus::Unbounded;
            break;
        }

        let zinv: Vec<BlockMat> = z.iter().map(block_inverse).collect();
        let (schur, partial) = assemble_schur(&ws, &x, &zinv, &rd);
        let fact = match Factorization::new(schur) {
            Ok(f) => f,
            Err(e) => {
                breakdown = Some(e);
                break;
            }
        };

        // Predictor: aim straight at the boundary (sigma = 0).
        let mut rhs_aff = DVector::<f64>::zeros(m);
        for i in 0..m {
            rhs_aff[i] = rp[i] + partial[i];
        }
        let dy_aff = match fact.solve(&rhs_aff) {
            Ok(d) => d,
            Err(e) => {
                breakdown = Some(e);
                break;
            }
        };
        let (dx_aff, dz_aff) =
            recover_directions(&ws, &x, &zinv, &rd, dy_aff.as_slice(), 0.0, None);

        let ap_aff = max_step(&x, &dx_aff).min(1.0);
        let ad_aff = max_step(&z, &dz_aff).min(1.0);
        let mut x_trial = x.clone();
        bv_axpy(&mut x_trial, ap_aff, &dx_aff);
        let mut z_trial = z.clone();
        bv_axpy(&mut z_trial, ad_aff, &dz_aff);
        let mu_aff = (bv_inner(&x_trial, &z_trial) / ws.n_dim).max(0.0);
        let sigma = (mu_aff / mu).powi(3).clamp(1e-12, 1.0 - 1e-6);

        // Corrector: recenter and absorb the second-order term.
        let sigma_mu = sigma * mu;
        let mut rhs = rhs_aff;
        let mut zinv_sum = DVector::<f64>::zeros(m);
        for (k, coeffs) in ws.adj.iter().enumerate() {
            let corr = herm_xmz(&dx_aff[k], &dz_aff[k], &zinv[k]);
            for (ci, a) in coeffs {
                rhs[*ci] += a.inner(&corr);
                zinv_sum[*ci] += a.inner(&zinv[k]);
            }
        }
        for i in 0..m {
            rhs[i] -= sigma_mu * zinv_sum[i];
        }
        let dy = match fact.solve(&rhs) {
            Ok(d) => d,
            Err(e) => {
                breakdown = Some(e);
                break;
            }
        };
        let (dx, dz) = recover_directions(
            &ws,
            &x,
            &zinv,
            &rd,
            dy.as_slice(),
            sigma_mu,
            Some((&dx_aff, &dz_aff)),
        );

        let tau = settings.step_fraction;
        let ap = (tau * max_step(&x, &dx)).min(1.0);
        let ad = (tau * max_step(&z, &dz)).min(1.0);

        bv_axpy(&mut x, ap, &dx);
        bv_axpy(&mut z, ad, &dz);
        for (yi, di) in y.iter_mut().zip(dy.iter()) {
            *yi += ad * di;
        }

        if ap.max(ad) < 1e-10 {
            tiny_steps += 1;
            if tiny_steps >= 3 {
                break;
            }
        } else {
            tiny_steps = 0;
        }
    }

    if status != SolveStatus::Optimal {
        // The endgame may have degraded past the best point on the path;
        // judge termination on the best iterate instead of the last one.
        if let Some((_, bx, by, bz)) = best {
            x = bx;
            y = by;
            z = bz;
        }
        let rp_inf = inf_norm(&ws.primal_residual(&x));
        let rd_inf = block_inf_norm(&ws.dual_residual(&y, &z));
        let pobj_int = bv_inner(&ws.cm, &x);
        let dobj_int: f64 = ws.b.iter().zip(&y).map(|(b, y)| b * y).sum();
        let comp = bv_inner(&x, &z).max(0.0);
        let gap = (pobj_int - dobj_int).abs().min(comp);
        let scale = 1.0 + pobj_int.abs().max(dobj_int.abs());
        if rp_inf <= settings.feas_tol * bnorm
            && rd_inf <= settings.feas_tol * cnorm
            && gap <= settings.gap_tol * scale
        {
            status = SolveStatus::Optimal;
        } else if let Some(e) = breakdown {
            return Err(e);
        }
    }

    let rp_inf = inf_norm(&ws.primal_residual(&x));
    let rd_inf = block_inf_norm(&ws.dual_residual(&y, &z));
    let pobj_int = bv_inner(&ws.cm, &x);
    let dobj_int: f64 = ws.b.iter().zip(&y).map(|(b, y)| b * y).sum();
    let comp = bv_inner(&x, &z).max(0.0);

    if status == SolveStatus::MaxIterations {
        if dobj_int > DIVERGENCE_LIMIT {
            status = SolveStatus::Infeasible;
        } else if pobj_int < -DIVERGENCE_LIMIT {
            status = SolveStatus::Unbounded;
        }
    }

    Ok(ConicSolution {
        status,
        primal_value: -pobj_int,
        dual_value: -dobj_int,
        gap: (pobj_int - dobj_int).abs().min(comp),
        primal_blocks: x,
        dual_multipliers: y.iter().map(|v| -v).collect(),
        primal_residual: rp_inf,
        dual_residual: rd_inf,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::mat2::Herm2;
    use crate::solver::{check_dual_certificate, extract_bound, BlockKind};
    use approx::assert_abs_diff_eq;

    /// max Tr[X] over one PSD block with Tr[X] = 1 is trivially 1.
    fn unit_trace_problem() -> ConicProblem {
        ConicProblem {
            blocks: vec![(BlockKind::Psd2, "X".into())],
            objective: vec![BlockMat::Psd2(Herm2 {
                a: 1.0,
                d: 0.0,
                cr: 0.3,
                ci: 0.1,
            })],
            constraints: vec![Constraint {
                label: "trace".into(),
                coeffs: vec![(0, BlockMat::Psd2(Herm2::identity(1.0)))],
                rhs: 1.0,
            }],
            dual_interior_hint: None,
        }
    }

    use crate::solver::Constraint;

    #[test]
    fn maximizes_top_eigenvalue() {
        // max <C, X> with Tr X = 1 equals the top eigenvalue of C.
        let problem = unit_trace_problem();
        let c = match problem.objective[0] {
            BlockMat::Psd2(h) => h,
            _ => unreachable!(),
        };
        let solution = solve(&problem, &SolverSettings::default()).unwrap();
        assert_eq!(solution.status, SolveStatus::Optimal);
        assert_abs_diff_eq!(solution.primal_value, c.max_eig(), epsilon = 1e-7);
        assert!(solution.gap < 1e-7);
        let report = check_dual_certificate(&problem, &solution);
        assert!(report.valid);
        assert_abs_diff_eq!(report.bound, solution.dual_value, epsilon = 1e-12);
        assert!(extract_bound(&solution, 1e-7).unwrap() >= c.max_eig() - 1e-7);
    }

    #[test]
    fn scalar_lp_with_hint() {
        // max 2a + b s.t. a + b = 1, a,b >= 0 has optimum 2 at a = 1.
        let problem = ConicProblem {
            blocks: vec![
                (BlockKind::NonnegScalar, "a".into()),
                (BlockKind::NonnegScalar, "b".into()),
            ],
            objective: vec![BlockMat::Scalar(2.0), BlockMat::Scalar(1.0)],
            constraints: vec![Constraint {
                label: "sum".into(),
                coeffs: vec![(0, BlockMat::Scalar(1.0)), (1, BlockMat::Scalar(1.0))],
                rhs: 1.0,
            }],
            dual_interior_hint: Some(vec![1.0]),
        };
        let solution = solve(&problem, &SolverSettings::default()).unwrap();
        assert_eq!(solution.status, SolveStatus::Optimal);
        assert_abs_diff_eq!(solution.primal_value, 2.0, epsilon = 1e-7);
        // The hint start keeps the dual feasible throughout.
        assert!(solution.dual_residual < 1e-9);
        assert!(check_dual_certificate(&problem, &solution).valid);
    }

    #[test]
    fn detects_infeasible() {
        // Tr X = 1 and Tr X = 2 cannot both hold.
        let mut problem = unit_trace_problem();
        problem.constraints.push(Constraint {
            label: "trace2".into(),
            coeffs: vec![(0, BlockMat::Psd2(Herm2::identity(1.0)))],
            rhs: 2.0,
        });
        let solution = solve(&problem, &SolverSettings::default()).unwrap();
        assert_eq!(solution.status, SolveStatus::Infeasible);
    }

    #[test]
    fn deterministic_across_runs() {
        let problem = unit_trace_problem();
        let a = solve(&problem, &SolverSettings::default()).unwrap();
        let b = solve(&problem, &SolverSettings::default()).unwrap();
        assert_eq!(a, b);
    }
}

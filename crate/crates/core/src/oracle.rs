//! Independent brute-force oracles for both certification pipelines.
//!
//! Nothing here shares solution machinery with the interior-point solver:
//! the noncontextual oracle enumerates basic solutions over extremal
//! response functions, the quantum oracle sandwiches the SDP value between
//! an explicit-strategy lower bound and a searched dual-feasible upper
//! bound, and the duality cross-check rebuilds the certificate matrices
//! from raw multipliers with its own arithmetic.

use std::collections::HashMap;

use nalgebra::{Matrix2, Matrix3, Vector2, Vector3};

use crate::noncontextual::{max_confidence_nc, NoncontextualProgram};
use crate::quantum::{max_confidence_quantum, QuantumProgram};
use crate::scenario::{StrategyIndex, Theory};
use crate::solver::mat2::Herm2;
use crate::CertError;

/// The 81 deterministic response-matrix triples: each of the four ontic
/// regions is assigned wholly to one of the three outcomes.
#[derive(Debug, Clone)]
pub struct ExtremalResponseSet {
    /// assignments[k] = outcome receiving region k, regions ordered as
    /// (first exclusive, confusion, complementary confusion, second
    /// exclusive).
    pub members: Vec<[usize; 4]>,
}

impl ExtremalResponseSet {
    pub fn enumerate() -> Self {
        let mut members = Vec::with_capacity(81);
        for a0 in 0..3 {
            for b in 0..3 {
                for bb in 0..3 {
                    for a1 in 0..3 {
                        members.push([a0, b, bb, a1]);
                    }
                }
            }
        }
        ExtremalResponseSet { members }
    }

    /// p(outcome|x) for one member under confusability `d`: the x=0 state
    /// weights its exclusive region by 1-d and the confusion region by d.
    pub fn outcome_probability(member: &[usize; 4], d: f64, x: usize, outcome: usize) -> f64 {
        let exclusive = if x == 0 { member[0] } else { member[3] };
        let mut p = 0.0;
        if exclusive == outcome {
            p += 1.0 - d;
        }
        if member[1] == outcome {
            p += d;
        }
        p
    }
}

/// Exact reference value for the noncontextual guessing probability.
///
/// Any eavesdropper strategy is a convex mixture of (guess pair, extremal
/// response) columns. Only three equality constraints are active
/// (normalization, and the two outcome-0 statistics), so an optimal basic
/// solution mixes at most three columns. Columns sharing statistics are
/// dominated by the best objective among them, which collapses the 729
/// columns to a handful before support enumeration.
#[allow(clippy::needless_range_loop)]
pub fn nc_vertex_oracle(np: &NoncontextualProgram) -> Option<f64> {
    let d = np.confusability();
    let p0 = np.priors().p0();
    let p1 = np.priors().p1();
    let set = ExtremalResponseSet::enumerate();

    let mut best_by_stats: HashMap<(u64, u64), [f64; 3]> = HashMap::new();
    for member in &set.members {
        let s0 = p0 * ExtremalResponseSet::outcome_probability(member, d, 0, 0);
        let s1 = p1 * ExtremalResponseSet::outcome_probability(member, d, 1, 0);
        let mut best_o: f64 = 0.0;
        for lam in StrategyIndex::all() {
            let o = p0
                * ExtremalResponseSet::outcome_probability(member, d, 0, lam.lambda0.index())
                + p1 * ExtremalResponseSet::outcome_probability(member, d, 1, lam.lambda1.index());
            best_o = best_o.max(o);
        }
        let key = (s0.to_bits(), s1.to_bits());
        let entry = best_by_stats.entry(key).or_insert([best_o, s0, s1]);
        if best_o > entry[0] {
            entry[0] = best_o;
        }
    }
    let mut columns: Vec<[f64; 3]> = best_by_stats.into_values().collect();
    columns.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let rhs = Vector3::new(1.0, np.eta0() * np.c0(), np.eta0() * (1.0 - np.c0()));
    let tol = 1e-10;
    let mut best: Option<f64> = None;
    let n = columns.len();
    let mut consider = |value: f64| {
        if best.is_none_or(|b| value > b) {
            best = Some(value);
        }
    };

    for i in 0..n {
        let ci = columns[i];
        // Single column: weight forced to 1 by normalization.
        if (ci[1] - rhs[1]).abs() <= tol && (ci[2] - rhs[2]).abs() <= tol {
            consider(ci[0]);
        }
        for j in (i + 1)..n {
            let cj = columns[j];
            // Two columns: solve the two statistics rows, check the rest.
            let m = Matrix2::new(ci[1], cj[1], ci[2], cj[2]);
            if let Some(inv) = m.try_inverse() {
                let w = inv * Vector2::new(rhs[1], rhs[2]);
                if w[0] >= -tol && w[1] >= -tol && (w[0] + w[1] - 1.0).abs() <= tol {
                    consider(w[0] * ci[0] + w[1] * cj[0]);
                }
            }
            for k in (j + 1)..n {
                let ck = columns[k];
                let m = Matrix3::new(1.0, 1.0, 1.0, ci[1], cj[1], ck[1], ci[2], cj[2], ck[2]);
                let Some(inv) = m.try_inverse() else {
                    continue;
                };
                let w = inv * rhs;
                if w[0] >= -tol && w[1] >= -tol && w[2] >= -tol {
                    consider(w[0] * ci[0] + w[1] * cj[0] + w[2] * ck[0]);
                }
            }
        }
    }
    best
}

/// Bracket on the quantum guessing probability from the grid oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumBracket {
    pub lower: f64,
    pub upper: f64,
    /// False when the grid found no feasible mixture; `lower` then falls
    /// back to the trivial prior bound and the bracket is widened, never
    /// wrong.
    pub lower_feasible: bool,
}

/// Sandwiches the quantum SDP value between an explicit-strategy lower
/// bound and a searched dual-feasible upper bound.
///
/// Lower bound: mixtures over a grid of measurement strategies. Each grid
/// column fixes the outcome-0 element (angle, radius, weight); the
/// remaining positive part is split between the other two outcomes in
/// closed form, optimally for the best guess pair. The three-row mixture
/// LP is solved by a small dense two-phase simplex.
///
/// Upper bound: weak duality at a dual-feasible point found by nested
/// pattern search (statistics multipliers outside, per-strategy traceless
/// matrices inside, normalization multiplier eliminated in closed form).
pub fn quantum_grid_oracle(qp: &QuantumProgram, grid_resolution: usize) -> QuantumBracket {
    let delta = qp.delta();
    let eta0 = qp.eta0();
    let c0 = qp.c0();
    let sin_phi = (1.0 - delta * delta).max(0.0).sqrt();
    let phi = delta.acos();
    let rho0 = Herm2::from_pauli(0.5, -0.5 * sin_phi, 0.0, 0.5 * delta);
    let rho1 = Herm2::from_pauli(0.5, 0.5 * sin_phi, 0.0, 0.5 * delta);

    // Angles, including the exact orientations needed by maximal-confidence
    // statistics (orthogonal and parallel to each prepared state).
    let mut angles: Vec<f64> = (0..grid_resolution)
        .map(|i| std::f64::consts::TAU * i as f64 / grid_resolution as f64)
        .collect();
    angles.extend_from_slice(&[
        phi,
        std::f64::consts::PI - phi,
        std::f64::consts::PI + phi,
        std::f64::consts::TAU - phi,
    ]);

    let mut columns: Vec<[f64; 3]> = Vec::new();
    for theta in &angles {
        let n = (theta.sin(), theta.cos());
        for ir in 0..=10 {
            let r = ir as f64 / 10.0;
            let r_cap = 2.0 / (1.0 + r);
            for iw in 0..=20 {
                let big_r = r_cap * iw as f64 / 20.0;
                let pi0 = Herm2::from_pauli(
                    big_r / 2.0,
                    big_r / 2.0 * r * n.0,
                    0.0,
                    big_r / 2.0 * r * n.1,
                );
                let s0 = 0.5 * pi0.inner(&rho0);
                let s1 = 0.5 * pi0.inner(&rho1);
                let rest = Herm2::identity(1.0).sub(&pi0);
                let o = best_guess_value(&pi0, &rest, &rho0, &rho1);
                columns.push([o, s0, s1]);
            }
        }
    }

    let rhs = [1.0, eta0 * c0, eta0 * (1.0 - c0)];
    let (lower, lower_feasible) = match simplex_max(&columns, &rhs) {
        Some(v) => (v, true),
        None => (0.5, false),
    };

    let upper = if delta >= 1.0 - 1e-12 {
        1.0
    } else {
        dual_search_upper_bound(&rho0, &rho1, delta, eta0, c0)
    };
    QuantumBracket {
        lower: lower.min(upper),
        upper,
        lower_feasible,
    }
}

/// Best guessing value over the 9 guess pairs for a strategy whose
/// outcome-0 element is `pi0` and whose remaining positive part `rest` is
/// split optimally between outcomes 1 and the inconclusive one.
fn best_guess_value(pi0: &Herm2, rest: &Herm2, rho0: &Herm2, rho1: &Herm2) -> f64 {
    let half = 0.5;
    let sqrt_rest = rest.sqrt_psd();
    let mut best: f64 = 0.0;
    for lam in StrategyIndex::all() {
        let l0 = lam.lambda0.index();
        let l1 = lam.lambda1.index();
        let mut value = 0.0;
        if l0 == 0 {
            value += half * pi0.inner(rho0);
        }
        if l1 == 0 {
            value += half * pi0.inner(rho1);
        }
        // Targets credited to outcome 1 and to the inconclusive outcome.
        let mut g1 = Herm2::ZERO;
        let mut gi = Herm2::ZERO;
        if l0 == 1 {
            g1.axpy(half, rho0);
        }
        if l1 == 1 {
            g1.axpy(half, rho1);
        }
        if l0 == 2 {
            gi.axpy(half, rho0);
        }
        if l1 == 2 {
            gi.axpy(half, rho1);
        }
        // Assign rest to the inconclusive outcome, then move the part that
        // prefers outcome 1: the positive eigenvalues of the compressed
        // difference.
        value += rest.inner(&gi);
        let diff = g1.sub(&gi);
        let compressed = crate::solver::mat2::triple(&sqrt_rest, &diff, &sqrt_rest).herm_part();
        let (lo, hi) = compressed.eigenvalues();
        value += hi.max(0.0) + lo.max(0.0);
        best = best.max(value);
    }
    best
}

/// Dense two-phase simplex for `max o.w` with three equality rows and
/// nonnegative weights. Returns None when infeasible. Bland's rule keeps
/// the iteration finite; the iteration cap returns the incumbent, which is
/// feasible and therefore still a valid lower bound.
fn simplex_max(columns: &[[f64; 3]], rhs: &[f64; 3]) -> Option<f64> {
    let n = columns.len();
    let art = n; // artificial columns art..art+3
    let a_col = |j: usize, i: usize| -> f64 {
        if j < n {
            if i == 0 {
                1.0
            } else {
                columns[j][i]
            }
        } else if j - art == i {
            1.0
        } else {
            0.0
        }
    };
    let cost = |j: usize, phase1: bool| -> f64 {
        if j < n {
            if phase1 {
                0.0
            } else {
                columns[j][0]
            }
        } else if phase1 {
            -1.0
        } else {
            0.0
        }
    };

    let mut basis = [art, art + 1, art + 2];
    let mut x_b = Vector3::new(rhs[0], rhs[1], rhs[2]);
    let mut b_inv = Matrix3::<f64>::identity();

    for phase1 in [true, false] {
        for _iter in 0..20_000 {
            let y = b_inv.transpose()
                * Vector3::new(
                    cost(basis[0], phase1),
                    cost(basis[1], phase1),
                    cost(basis[2], phase1),
                );
            // Bland: first improving column enters.
            let mut entering = None;
            for j in 0..n {
                if basis.contains(&j) {
                    continue;
                }
                let reduced = cost(j, phase1)
                    - (y[0] * a_col(j, 0) + y[1] * a_col(j, 1) + y[2] * a_col(j, 2));
                if reduced > 1e-9 {
                    entering = Some(j);
                    break;
                }
            }
            let Some(j) = entering else {
                break;
            };
            let dir = b_inv * Vector3::new(a_col(j, 0), a_col(j, 1), a_col(j, 2));
            // A zero-level artificial with any coupling to the entering
            // column is swapped out degenerately; otherwise standard ratio
            // test, with Bland's tie-break on the basis index.
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..3 {
                if basis[i] >= art && x_b[i].abs() <= 1e-11 && dir[i].abs() > 1e-8 {
                    leave = Some((i, 0.0));
                    break;
                }
            }
            if leave.is_none() {
                for i in 0..3 {
                    if dir[i] > 1e-12 {
                        let ratio = x_b[i] / dir[i];
                        let better = match leave {
                            None => true,
                            Some((li, lr)) => {
                                ratio < lr - 1e-15 || (ratio <= lr + 1e-15 && basis[i] < basis[li])
                            }
                        };
                        if better {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
            let Some((li, _ratio)) = leave else {
                // Unbounded ray; cannot occur with the normalization row,
                // treat as a stall.
                break;
            };
            basis[li] = j;
            // Refactor from scratch: 3x3 inversion is cheap and stable.
            let b_mat = Matrix3::from_fn(|r, c| a_col(basis[c], r));
            b_inv = b_mat.try_inverse()?;
            x_b = b_inv * Vector3::new(rhs[0], rhs[1], rhs[2]);
        }
        if phase1 {
            let infeas: f64 = (0..3)
                .filter(|i| basis[*i] >= art)
                .map(|i| x_b[i].max(0.0))
                .sum();
            if infeas > 1e-9 {
                return None;
            }
        }
    }
    // The incumbent must still satisfy the original rows: reject if an
    // artificial drifted away from zero or a weight went negative.
    for i in 0..3 {
        if basis[i] >= art && x_b[i].abs() > 1e-9 {
            return None;
        }
        if x_b[i] < -1e-9 {
            return None;
        }
    }
    let mut value = 0.0;
    for i in 0..3 {
        if basis[i] < n {
            value += columns[basis[i]][0] * x_b[i].max(0.0);
        }
    }
    Some(value)
}

/// Upper bound from weak duality. For statistics multipliers (w0, w1) and
/// per-strategy traceless H, the minimal normalization multiplier t makes
/// t*avg + H + w-terms - C psd on every block; t is a largest eigenvalue
/// of a congruence by avg^{-1/2}, available in closed form because the
/// average state is diagonal. Pattern search tunes (w0, w1) and H.
fn dual_search_upper_bound(rho0: &Herm2, rho1: &Herm2, delta: f64, eta0: f64, c0: f64) -> f64 {
    // avg = diag((1+delta)/2, (1-delta)/2); its inverse square root scales
    // the basis vectors independently.
    let ia = (2.0 / (1.0 + delta)).sqrt();
    let id = (2.0 / (1.0 - delta)).sqrt();
    let congr = |m: &Herm2| Herm2 {
        a: m.a * ia * ia,
        d: m.d * id * id,
        cr: m.cr * ia * id,
        ci: m.ci * ia * id,
    };

    // Minimal t for one strategy given (w0, w1), optimizing H by pattern
    // search over its two real traceless components.
    let strategy_t = |lam: StrategyIndex, w0: f64, w1: f64| -> f64 {
        let t_for = |hx: f64, hz: f64| -> f64 {
            let mut worst = f64::NEG_INFINITY;
            for b in 0..3 {
                // C block minus statistics terms minus H.
                let mut m = Herm2::ZERO;
                if lam.lambda0.index() == b {
                    m.axpy(0.5, rho0);
                }
                if lam.lambda1.index() == b {
                    m.axpy(0.5, rho1);
                }
                if b == 0 {
                    m.axpy(-0.5 * w0, rho0);
                    m.axpy(-0.5 * w1, rho1);
                }
                m.axpy(
                    -hx,
                    &Herm2 {
                        a: 0.0,
                        d: 0.0,
                        cr: 1.0,
                        ci: 0.0,
                    },
                );
                m.axpy(
                    -hz,
                    &Herm2 {
                        a: 1.0,
                        d: -1.0,
                        cr: 0.0,
                        ci: 0.0,
                    },
                );
                worst = worst.max(congr(&m).max_eig());
            }
            worst
        };
        let mut h = (0.0, 0.0);
        let mut best = t_for(h.0, h.1);
        let mut step = 0.5;
        while step > 1e-7 {
            let mut improved = false;
            // Diagonal moves included: the level sets are sharp-cornered
            // maxima of eigenvalues and axis moves alone can stall.
            for (dx, dz) in [
                (step, 0.0),
                (-step, 0.0),
                (0.0, step),
                (0.0, -step),
                (step, step),
                (step, -step),
                (-step, step),
                (-step, -step),
            ] {
                let cand = t_for(h.0 + dx, h.1 + dz);
                if cand < best - 1e-14 {
                    best = cand;
                    h = (h.0 + dx, h.1 + dz);
                    improved = true;
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        best
    };

    let bound_for = |w0: f64, w1: f64| -> f64 {
        let mut t = f64::NEG_INFINITY;
        for lam in StrategyIndex::all() {
            t = t.max(strategy_t(lam, w0, w1));
        }
        t + w0 * eta0 * c0 + w1 * eta0 * (1.0 - c0)
    };

    // The minimum sits in a narrow oblique valley of (w0, w1); a joint
    // pattern search stalls there. Nest the searches instead: for every
    // trial w0, minimize over w1 to the end, then walk w0.
    let minimize_w1 = |w0: f64, start: f64| -> (f64, f64) {
        let mut w1 = start;
        let mut best = bound_for(w0, w1);
        let mut step = 1.0;
        while step > 1e-6 {
            let mut improved = false;
            for d in [step, -step] {
                let cand = bound_for(w0, w1 + d);
                if cand < best - 1e-14 {
                    best = cand;
                    w1 += d;
                    improved = true;
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        (best, w1)
    };
    let mut w0 = 0.0;
    let (mut best, mut w1) = minimize_w1(w0, 0.0);
    let mut step = 1.0;
    while step > 1e-6 {
        let mut improved = false;
        for d in [step, -step] {
            let (cand, cand_w1) = minimize_w1(w0 + d, w1);
            if cand < best - 1e-14 {
                best = cand;
                w0 += d;
                w1 = cand_w1;
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    best.min(1.0)
}

/// An explicit feasible eavesdropper strategy built from the optimal
/// maximum-confidence measurement, and the guessing value it achieves: a
/// certified lower bound on the corresponding p_g.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HonestWitness {
    pub c0: f64,
    pub value: f64,
}

/// Builds the regime-appropriate maximal-confidence measurement, verifies
/// that it reproduces the rate and the closed-form confidence, and scores
/// it as a single-strategy eavesdropper guessing the likeliest outcome per
/// input.
pub fn honest_strategy_witness(
    theory: Theory,
    par: f64,
    eta0: f64,
) -> Result<HonestWitness, CertError> {
    match theory {
        Theory::Quantum => quantum_witness(par, eta0),
        Theory::Noncontextual => nc_witness(par, eta0),
    }
}

fn reproduction_check(label: &str, got: f64, want: f64) -> Result<(), CertError> {
    if (got - want).abs() > 1e-10 {
        return Err(CertError::InfeasibleStatistics(format!(
            "witness construction failed to reproduce {label}: got {got}, want {want}"
        )));
    }
    Ok(())
}

fn quantum_witness(delta: f64, eta0: f64) -> Result<HonestWitness, CertError> {
    let c0 = max_confidence_quantum(delta, eta0).map_err(CertError::from)?;
    let d2 = delta * delta;
    let sin_phi = (1.0 - d2).max(0.0).sqrt();
    let phi = delta.acos();
    let rho0 = Herm2::from_pauli(0.5, -0.5 * sin_phi, 0.0, 0.5 * delta);
    let rho1 = Herm2::from_pauli(0.5, 0.5 * sin_phi, 0.0, 0.5 * delta);

    // Outcome-0 element per regime: orthogonal to the other state while the
    // rate allows it, then rotating with the rate, then diluting towards
    // the identity.
    let (theta, r, big_r) = if delta >= 1.0 {
        (0.0, 0.0, 2.0 * eta0)
    } else if eta0 <= (1.0 - d2) / 2.0 {
        (std::f64::consts::PI + phi, 1.0, 2.0 * eta0 / (1.0 - d2))
    } else if eta0 < (1.0 + d2) / 2.0 {
        let u = (2.0 * eta0 - 1.0) / delta;
        (-(u.acos()), 1.0, 1.0)
    } else {
        let r = (1.0 - eta0) / (eta0 - d2);
        (std::f64::consts::TAU - phi, r, 2.0 / (1.0 + r))
    };
    let pi0 = Herm2::from_pauli(
        big_r / 2.0,
        big_r / 2.0 * r * theta.sin(),
        0.0,
        big_r / 2.0 * r * theta.cos(),
    );
    let p00 = pi0.inner(&rho0);
    let p01 = pi0.inner(&rho1);
    reproduction_check("rate", 0.5 * (p00 + p01), eta0)?;
    reproduction_check("confidence", 0.5 * p00 / eta0, c0)?;

    // Remaining outcomes split evenly; the best guess per input scores the
    // witness.
    let rest = Herm2::identity(1.0).sub(&pi0);
    let mut value = 0.0;
    for rho in [&rho0, &rho1] {
        let q0 = pi0.inner(rho);
        let q_other = 0.5 * rest.inner(rho);
        value += 0.5 * q0.max(q_other);
    }
    Ok(HonestWitness { c0, value })
}

fn nc_witness(confusability: f64, eta0: f64) -> Result<HonestWitness, CertError> {
    let d = confusability;
    let c0 = max_confidence_nc(d, eta0).map_err(CertError::from)?;
    // Outcome-0 response entries over (first exclusive, confusion,
    // complementary confusion, second exclusive).
    let (a00, b0, a10) = if eta0 <= (1.0 - d) / 2.0 {
        (2.0 * eta0 / (1.0 - d), 0.0, 0.0)
    } else if eta0 < (1.0 + d) / 2.0 {
        (1.0, (2.0 * eta0 - (1.0 - d)) / (2.0 * d), 0.0)
    } else if d < 1.0 {
        (1.0, 1.0, (2.0 * eta0 - 1.0 - d) / (1.0 - d))
    } else {
        (eta0, eta0, eta0)
    };
    let p = |a_own: f64, b: f64| a_own * (1.0 - d) + b * d;
    let p00 = p(a00, b0);
    let p01 = p(a10, b0);
    reproduction_check("rate", 0.5 * (p00 + p01), eta0)?;
    reproduction_check("confidence", 0.5 * p00 / eta0.max(1e-300), c0)?;

    let mut value = 0.0;
    for p0x in [p00, p01] {
        let other = 0.5 * (1.0 - p0x);
        value += 0.5 * p0x.max(other);
    }
    Ok(HonestWitness { c0, value })
}

/// Report from rebuilding a dual certificate with arithmetic independent
/// of the solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossCheckReport {
    pub max_cone_violation: f64,
    pub bound: f64,
    pub valid: bool,
}

/// Which program family a multiplier vector certifies.
pub enum CrossCheckTarget<'a> {
    Quantum(&'a QuantumProgram),
    Noncontextual(&'a NoncontextualProgram),
}

/// Rebuilds the certificate matrices entry by entry from the physical data
/// (states, priors, statistics) and the raw multipliers, then scans the
/// dual cone. The multiplier layout matches the corresponding builder:
/// per-strategy completeness rows first, then normalization, then the
/// surviving statistics rows.
pub fn duality_cross_check(target: &CrossCheckTarget, multipliers: &[f64]) -> CrossCheckReport {
    match target {
        CrossCheckTarget::Quantum(qp) => cross_check_quantum(qp, multipliers),
        CrossCheckTarget::Noncontextual(np) => cross_check_nc(np, multipliers),
    }
}

/// 2x2 Hermitian matrix as (a, d, re c, im c), with arithmetic written out
/// locally so this path shares nothing with the solver kernels.
type Raw2 = [f64; 4];

fn raw_axpy(dst: &mut Raw2, s: f64, src: &Raw2) {
    for (d, x) in dst.iter_mut().zip(src) {
        *d += s * x;
    }
}

fn raw_max_eig(m: &Raw2) -> f64 {
    let mean = 0.5 * (m[0] + m[1]);
    let rad = (0.25 * (m[0] - m[1]) * (m[0] - m[1]) + m[2] * m[2] + m[3] * m[3]).sqrt();
    mean + rad
}

fn cross_check_quantum(qp: &QuantumProgram, y: &[f64]) -> CrossCheckReport {
    let delta = qp.delta();
    let sin_phi = (1.0 - delta * delta).max(0.0).sqrt();
    let rho0: Raw2 = [0.5 + 0.5 * delta, 0.5 - 0.5 * delta, -0.5 * sin_phi, 0.0];
    let rho1: Raw2 = [0.5 + 0.5 * delta, 0.5 - 0.5 * delta, 0.5 * sin_phi, 0.0];
    let avg: Raw2 = [0.5 + 0.5 * delta, 0.5 - 0.5 * delta, 0.0, 0.0];
    let p0 = qp.priors().p0();
    let p1 = qp.priors().p1();
    // Mirror the builder's face selection and surviving-row layout. A
    // vanished statistics row pins the outcome-0 blocks onto the complement
    // of the other state; a saturated detection rate (p_x * p(0|x) = p_x)
    // pins the outcome != 0 blocks onto the complement of the detected
    // state and makes that statistics row redundant.
    let compl = |r: &Raw2| -> Raw2 { [1.0 - r[0], 1.0 - r[1], -r[2], -r[3]] };
    let (face, pins_outcome0, keep0, keep1): (Option<Raw2>, bool, bool, bool) =
        if qp.c0() == 1.0 && delta < 1.0 {
            (Some(compl(&rho1)), true, true, false)
        } else if qp.c0() == 0.0 && delta < 1.0 {
            (Some(compl(&rho0)), true, false, true)
        } else if qp.c0() * qp.eta0() >= p0 - 1e-12 {
            (Some(compl(&rho0)), false, false, true)
        } else if (1.0 - qp.c0()) * qp.eta0() >= p1 - 1e-12 {
            (Some(compl(&rho1)), false, true, false)
        } else {
            (None, true, true, true)
        };
    // Rotation-regime maximal confidence, reached only when no exposed
    // face applies, collapses the program to 27 scalars on rank-1 faces
    // with 11 rows; mirror that layout.
    if face.is_none() && delta > 0.0 && delta < 1.0 {
        let d2 = delta * delta;
        if qp.eta0() > (1.0 - d2) / 2.0 && qp.eta0() < (1.0 + d2) / 2.0 {
            let u = (2.0 * qp.eta0() - 1.0) / delta;
            let cmax = (2.0 * qp.eta0() + ((1.0 - u * u).max(0.0) * (1.0 - d2)).sqrt())
                / (4.0 * qp.eta0());
            if (qp.c0() - cmax).abs() <= 1e-12 {
                return cross_check_quantum_collapsed(qp, y, &rho0, &rho1, &avg, u);
            }
        }
    }
    let expected_rows = 28 + keep0 as usize + keep1 as usize;
    if y.len() != expected_rows {
        return CrossCheckReport {
            max_cone_violation: f64::INFINITY,
            bound: f64::NAN,
            valid: false,
        };
    }
    let chi = y[27];
    let nu0 = if keep0 { y[28] } else { 0.0 };
    let nu1 = if keep1 { y[28 + keep0 as usize] } else { 0.0 };

    let mut worst: f64 = 0.0;
    for lam in StrategyIndex::all() {
        let s = lam.index();
        // H = sum of sigma components weighted by the completeness rows.
        let h: Raw2 = [y[s * 3 + 2], -y[s * 3 + 2], y[s * 3], -y[s * 3 + 1]];
        for b in 0..3 {
            // K = C - A*(y) restricted to this block; dual feasibility is
            // K entirely nonpositive.
            let mut k: Raw2 = [0.0; 4];
            if lam.lambda0.index() == b {
                raw_axpy(&mut k, p0, &rho0);
            }
            if lam.lambda1.index() == b {
                raw_axpy(&mut k, p1, &rho1);
            }
            if b == 0 {
                raw_axpy(&mut k, -nu0 * p0, &rho0);
                raw_axpy(&mut k, -nu1 * p1, &rho1);
            }
            raw_axpy(&mut k, -chi, &avg);
            raw_axpy(&mut k, -1.0, &h);
            let violation = match (&face, pins_outcome0 == (b == 0)) {
                (Some(f), true) => {
                    // Scalar block along the face: contract entrywise.
                    k[0] * f[0] + k[1] * f[1] + 2.0 * (k[2] * f[2] + k[3] * f[3])
                }
                _ => raw_max_eig(&k),
            };
            worst = worst.max(violation);
        }
    }
    let bound = chi + nu0 * qp.eta0() * qp.c0() + nu1 * qp.eta0() * (1.0 - qp.c0());
    CrossCheckReport {
        max_cone_violation: worst,
        bound,
        valid: worst <= 1e-7,
    }
}

fn raw_inner(m: &Raw2, n: &Raw2) -> f64 {
    m[0] * n[0] + m[1] * n[1] + 2.0 * (m[2] * n[2] + m[3] * n[3])
}

/// Certificate scan for the collapsed rotation-regime layout: 27 scalar
/// blocks on the rank-1 projector faces, 9 balance rows, normalization,
/// one statistics row.
fn cross_check_quantum_collapsed(
    qp: &QuantumProgram,
    y: &[f64],
    rho0: &Raw2,
    rho1: &Raw2,
    avg: &Raw2,
    u: f64,
) -> CrossCheckReport {
    if y.len() != 11 {
        return CrossCheckReport {
            max_cone_violation: f64::INFINITY,
            bound: f64::NAN,
            valid: false,
        };
    }
    let p0 = qp.priors().p0();
    let p1 = qp.priors().p1();
    let sin_theta = -(1.0 - u * u).max(0.0).sqrt();
    let pi0: Raw2 = [0.5 + 0.5 * u, 0.5 - 0.5 * u, 0.5 * sin_theta, 0.0];
    let perp: Raw2 = [0.5 - 0.5 * u, 0.5 + 0.5 * u, -0.5 * sin_theta, 0.0];
    let sigma: Raw2 = if sin_theta.abs() >= u.abs() {
        [0.0, 0.0, 1.0, 0.0]
    } else {
        [1.0, -1.0, 0.0, 0.0]
    };
    let chi = y[9];
    let nu0 = y[10];
    let mut worst = f64::NEG_INFINITY;
    for lam in StrategyIndex::all() {
        let s = lam.index();
        for b in 0..3 {
            let f = if b == 0 { &pi0 } else { &perp };
            let mut c: Raw2 = [0.0; 4];
            if lam.lambda0.index() == b {
                raw_axpy(&mut c, p0, rho0);
            }
            if lam.lambda1.index() == b {
                raw_axpy(&mut c, p1, rho1);
            }
            let mut k = raw_inner(&c, f);
            k -= y[s] * raw_inner(&sigma, f);
            k -= chi * raw_inner(avg, f);
            if b == 0 {
                k -= nu0 * p0 * raw_inner(rho0, &pi0);
            }
            worst = worst.max(k);
        }
    }
    let bound = chi + nu0 * qp.eta0() * qp.c0();
    CrossCheckReport {
        max_cone_violation: worst,
        bound,
        valid: worst <= 1e-7,
    }
}

fn cross_check_nc(np: &NoncontextualProgram, y: &[f64]) -> CrossCheckReport {
    let d = np.confusability();
    let p0 = np.priors().p0();
    let p1 = np.priors().p1();
    let reduced = np.c0() == 1.0 || np.c0() == 0.0;
    let expected_rows = if reduced { 29 } else { 30 };
    if y.len() != expected_rows {
        return CrossCheckReport {
            max_cone_violation: f64::INFINITY,
            bound: f64::NAN,
            valid: false,
        };
    }
    let chi = y[27];
    let (nu0, nu1) = if expected_rows == 30 {
        (y[28], y[29])
    } else if np.c0() == 1.0 {
        (y[28], 0.0)
    } else {
        (0.0, y[28])
    };

    // Per-entry weights: objective and constraint contributions for the
    // four region entries (first exclusive, confusion, complementary,
    // second exclusive).
    let norm_w = [p0 * (1.0 - d), d, 0.0, p1 * (1.0 - d)];
    let stat0_w = [p0 * (1.0 - d), p0 * d, 0.0, 0.0];
    let stat1_w = [0.0, p1 * d, 0.0, p1 * (1.0 - d)];
    let removed_entry = |b: usize, j: usize| -> bool {
        if !reduced || b != 0 {
            return false;
        }
        (d > 0.0 && j == 1) || (d < 1.0 && j == if np.c0() == 1.0 { 3 } else { 0 })
    };

    let mut worst: f64 = 0.0;
    for lam in StrategyIndex::all() {
        let s = lam.index();
        // Difference-row multipliers act as +1 on the first-exclusive
        // entry and -1 on the compared entry (order: second exclusive,
        // confusion, complementary).
        let h = [
            y[s * 3] + y[s * 3 + 1] + y[s * 3 + 2],
            -y[s * 3 + 1],
            -y[s * 3 + 2],
            -y[s * 3],
        ];
        for b in 0..3 {
            for j in 0..4 {
                if removed_entry(b, j) {
                    continue;
                }
                let mut obj = 0.0;
                if lam.lambda0.index() == b {
                    obj += match j {
                        0 => p0 * (1.0 - d),
                        1 => p0 * d,
                        _ => 0.0,
                    };
                }
                if lam.lambda1.index() == b {
                    obj += match j {
                        3 => p1 * (1.0 - d),
                        1 => p1 * d,
                        _ => 0.0,
                    };
                }
                let mut k = obj - chi * norm_w[j] - h[j];
                if b == 0 {
                    k -= nu0 * stat0_w[j] + nu1 * stat1_w[j];
                }
                worst = worst.max(k);
            }
        }
    }
    let bound = chi + nu0 * np.eta0() * np.c0() + nu1 * np.eta0() * (1.0 - np.c0());
    CrossCheckReport {
        max_cone_violation: worst,
        bound,
        valid: worst <= 1e-7,
    }
}

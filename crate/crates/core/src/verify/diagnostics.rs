//! Traversal, entanglement, Fannes and projection-lemma diagnostics.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hamiltonian::LocalTerm;
use crate::linalg::{self, CMat};
use crate::verify::energy::{dense_matrix, qubits_of};
use crate::C64;

fn qubits_of_len(len: usize) -> Result<usize> {
    qubits_of(&[], len)
}

/// `sum |amp|^2` over basis states whose `qubits` read `pattern`.
pub fn weight_on(state: &[C64], qubits: &[usize], pattern: &[bool]) -> Result<f64> {
    let n = qubits_of_len(state.len())?;
    if qubits.len() != pattern.len() || qubits.iter().any(|&q| q >= n) {
        return Err(Error::Domain("pattern does not match the qubits".into()));
    }
    let mask = qubits.iter().fold(0usize, |a, &q| a | 1 << q);
    let want = qubits
        .iter()
        .zip(pattern)
        .filter(|(_, &b)| b)
        .fold(0usize, |a, (&q, _)| a | 1 << q);
    Ok(state
        .iter()
        .enumerate()
        .filter(|(i, _)| i & mask == want)
        .map(|(_, a)| a.norm_sqr())
        .sum())
}

#[derive(Clone, Debug, Serialize)]
pub struct TraversalReport {
    /// `max_i <v_i| P |v_i>` with `P = I - Pi_S - Pi_T`.
    pub max_overlap: f64,
    pub argmax: usize,
    /// `(1 - 2 eps)^2 / (2 m)^2`.
    pub bound: f64,
    /// Operators on fewer than `k + 1` qubits cannot connect `S` and `T`.
    pub k_orthogonality: usize,
    /// Distance of the final state from the span of `T`.
    pub end_distance: f64,
    /// `k >= 2` and the final state is within `eps` of `T`.
    pub precondition_met: bool,
    pub satisfied: bool,
}

/// Check that a path `states[0] = v_0, ..., states[m] = v_m` from `S` to
/// within `eps` of `T` leaves `S + T` with weight at least the lemma's bound.
/// `s_basis` and `t_basis` are computational basis indices.
pub fn traversal_check(
    states: &[Vec<C64>],
    s_basis: &[usize],
    t_basis: &[usize],
    eps: f64,
) -> Result<TraversalReport> {
    if states.len() < 2 {
        return Err(Error::Domain("need at least one unitary".into()));
    }
    let dim = states[0].len();
    qubits_of_len(dim)?;
    if states.iter().any(|s| s.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: states.iter().map(|s| s.len()).find(|&l| l != dim).unwrap(),
        });
    }
    let dmin = s_basis
        .iter()
        .flat_map(|&s| t_basis.iter().map(move |&t| (s ^ t).count_ones() as usize))
        .min()
        .unwrap_or(usize::MAX);
    let k = dmin.saturating_sub(1);
    let mut best = (f64::NEG_INFINITY, 0);
    for (i, v) in states.iter().enumerate() {
        let ws: f64 = s_basis.iter().map(|&s| v[s].norm_sqr()).sum();
        let wt: f64 = t_basis.iter().map(|&t| v[t].norm_sqr()).sum();
        let o = 1.0 - ws - wt;
        if o > best.0 {
            best = (o, i);
        }
    }
    let last = states.last().unwrap();
    let wt: f64 = t_basis.iter().map(|&t| last[t].norm_sqr()).sum();
    let end_distance = (1.0 - wt).max(0.0).sqrt();
    let m = (states.len() - 1) as f64;
    let bound = (1.0 - 2.0 * eps).powi(2) / (2.0 * m).powi(2);
    let precondition_met = k >= 2 && end_distance <= eps + 1e-12;
    Ok(TraversalReport {
        max_overlap: best.0,
        argmax: best.1,
        bound,
        k_orthogonality: k,
        end_distance,
        precondition_met,
        satisfied: best.0 >= bound,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Entanglement {
    /// Von Neumann entropy of the reduced state on the cut, in bits.
    pub entropy: f64,
    /// Schmidt coefficients above `1e-10`.
    pub schmidt_rank: usize,
    pub schmidt_coefficients: Vec<f64>,
    /// The cut was empty or covered every qubit.
    pub degenerate_cut: bool,
}

fn split_matrix(state: &[C64], cut: &[usize]) -> Result<(CMat, usize)> {
    let n = qubits_of_len(state.len())?;
    let mut a: Vec<usize> = cut.to_vec();
    a.sort_unstable();
    a.dedup();
    if a.iter().any(|&q| q >= n) {
        return Err(Error::Domain(format!("cut qubit outside 0..{n}")));
    }
    let rest: Vec<usize> = (0..n).filter(|q| !a.contains(q)).collect();
    let gather = |i: usize, qs: &[usize]| {
        qs.iter()
            .enumerate()
            .fold(0usize, |acc, (k, &q)| acc | ((i >> q) & 1) << k)
    };
    let mut m = CMat::zeros(1 << a.len(), 1 << rest.len());
    for (i, amp) in state.iter().enumerate() {
        if amp.norm_sqr() != 0.0 {
            m[(gather(i, &a), gather(i, &rest))] = *amp;
        }
    }
    Ok((m, n))
}

/// Entropy and Schmidt data of `state` across `cut | rest`.
pub fn entanglement_entropy(state: &[C64], cut: &[usize]) -> Result<Entanglement> {
    let (m, n) = split_matrix(state, cut)?;
    let k = m.nrows().trailing_zeros() as usize;
    if k == 0 || k == n {
        return Ok(Entanglement {
            entropy: 0.0,
            schmidt_rank: 1,
            schmidt_coefficients: vec![linalg::norm(state)],
            degenerate_cut: true,
        });
    }
    // tall orientation for the SVD
    let m = if m.nrows() < m.ncols() {
        m.adjoint()
    } else {
        m
    };
    let sv = m.svd(false, false).singular_values;
    let mut coeffs: Vec<f64> = sv.iter().copied().collect();
    coeffs.sort_by(|a, b| b.total_cmp(a));
    let entropy = coeffs
        .iter()
        .filter(|&&s| s > 1e-12)
        .map(|s| {
            let p = s * s;
            -p * p.log2()
        })
        .sum::<f64>()
        .max(0.0);
    let rank = coeffs.iter().filter(|&&s| s > 1e-10).count();
    Ok(Entanglement {
        entropy,
        schmidt_rank: rank,
        schmidt_coefficients: coeffs,
        degenerate_cut: false,
    })
}

/// `rho_A = Tr_rest |psi><psi|`, indexed by the cut qubits in ascending order.
pub fn reduced_density_matrix(state: &[C64], cut: &[usize]) -> Result<CMat> {
    let (m, _) = split_matrix(state, cut)?;
    Ok(&m * m.adjoint())
}

fn entropy_of_density(rho: &CMat) -> f64 {
    let (vals, _) = linalg::hermitian_eigen(rho);
    vals.iter()
        .filter(|&&p| p > 1e-15)
        .map(|p| -p * p.log2())
        .sum::<f64>()
        .max(0.0)
}

#[derive(Clone, Debug, Serialize)]
pub struct FannesReport {
    /// `||rho - sigma||_1`.
    pub trace_distance: f64,
    pub entropy_gap: f64,
    /// `T log2 d + eta(T)`, present when the inequality applies.
    pub bound: Option<f64>,
    /// `T <= 1/e`.
    pub applicable: bool,
    pub satisfied: Option<bool>,
}

/// Fannes continuity on the reduced states of two pure states across `cut`.
pub fn fannes_check(a: &[C64], b: &[C64], cut: &[usize]) -> Result<FannesReport> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    let rho = reduced_density_matrix(a, cut)?;
    let sigma = reduced_density_matrix(b, cut)?;
    let d = rho.nrows() as f64;
    let (diff, _) = linalg::hermitian_eigen(&(&rho - &sigma));
    let t: f64 = diff.iter().map(|x| x.abs()).sum();
    let gap = (entropy_of_density(&rho) - entropy_of_density(&sigma)).abs();
    let applicable = t <= (-1.0f64).exp();
    let bound = applicable.then(|| {
        let eta = if t > 0.0 { -t * t.log2() } else { 0.0 };
        t * d.log2() + eta
    });
    Ok(FannesReport {
        trace_distance: t,
        entropy_gap: gap,
        bound,
        applicable,
        satisfied: bound.map(|bd| gap <= bd + 1e-12),
    })
}

/// `||(|a><a| - |b><b|)||_1 = 2 sqrt(1 - |<a|b>|^2)` for unit vectors.
pub fn pure_trace_distance(a: &[C64], b: &[C64]) -> f64 {
    let o = linalg::inner(a, b).norm_sqr().min(1.0);
    2.0 * (1.0 - o).sqrt()
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

fn check(lhs: f64, rhs: f64, tol: f64) -> LemmaCheck {
    LemmaCheck {
        lhs,
        rhs,
        holds: lhs <= rhs + tol,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectionReport {
    pub j: f64,
    pub k: f64,
    pub delta: f64,
    pub lambda_h: f64,
    pub lambda_h2_on_s: f64,
    pub null_dim: usize,
    /// `lambda(H2|S) - K^2/(J-2K) <= lambda(H)`.
    pub ground_lower: LemmaCheck,
    /// `lambda(H) <= lambda(H2|S)`.
    pub ground_upper: LemmaCheck,
    /// `1 - ((K + sqrt(K^2 + delta (J-2K))) / (J-2K))^2 <= |<psi|psi'>|^2`.
    pub deviation: LemmaCheck,
    /// `<psi'|H|psi'> <= lambda(H) + delta + 2K (K + sqrt(K^2 + delta (J-2K))) / (J-2K)`.
    pub energy: LemmaCheck,
    pub holds: bool,
}

/// `J` (smallest nonzero eigenvalue of `H1`) and `K` (`||H2||`), densely.
pub fn projection_parameters(
    h1: &[LocalTerm],
    h2: &[LocalTerm],
    n: usize,
    zero_tol: f64,
) -> Result<(f64, f64)> {
    let m1 = dense_matrix(h1, n)?;
    let m2 = dense_matrix(h2, n)?;
    let (v1, _) = linalg::hermitian_eigen(&m1);
    let j = v1
        .into_iter()
        .find(|&v| v > zero_tol)
        .ok_or_else(|| Error::Degenerate("H1 has no nonzero eigenvalue".into()))?;
    Ok((j, linalg::hermitian_norm(&m2)))
}

/// Numerical audit of the extended projection lemma for `H = H1 + H2` with
/// `H1` PSD, null space `S`, gap `J > 2K`, and a state with energy within
/// `delta` of `lambda(H)`.
pub fn projection_diagnostics(
    state: &[C64],
    h1: &[LocalTerm],
    h2: &[LocalTerm],
    j: f64,
    delta: f64,
) -> Result<ProjectionReport> {
    let n = qubits_of_len(state.len())?;
    let m1 = dense_matrix(h1, n)?;
    let m2 = dense_matrix(h2, n)?;
    let k = linalg::hermitian_norm(&m2);
    if j <= 2.0 * k {
        return Err(Error::Precondition(format!(
            "need J > 2K, got J={j}, K={k}"
        )));
    }
    let scale = linalg::hermitian_norm(&m1).max(1.0);
    let tol = 1e-9 * scale;
    let full = &m1 + &m2;
    let lambda_h = linalg::hermitian_eigen(&full).0[0];
    let psi = DVector::from_column_slice(state);
    let e_psi = (psi.adjoint() * &full * &psi)[(0, 0)].re;
    if e_psi > lambda_h + delta + tol {
        return Err(Error::Precondition(format!(
            "state energy {e_psi} exceeds lambda(H) + delta = {}",
            lambda_h + delta
        )));
    }
    let (vals1, vecs1) = linalg::hermitian_eigen(&m1);
    let zero_tol = 0.5 * j;
    let null: Vec<usize> = (0..vals1.len())
        .filter(|&i| vals1[i].abs() <= zero_tol)
        .collect();
    if null.is_empty() {
        return Err(Error::Degenerate("H1 has trivial null space".into()));
    }
    let q = DMatrix::from_fn(m1.nrows(), null.len(), |r, c| vecs1[(r, null[c])]);
    let h2s = q.adjoint() * &m2 * &q;
    let lambda_s = linalg::hermitian_eigen(&h2s).0[0];
    let proj = &q * (q.adjoint() * &psi);
    let pnorm = proj.norm();
    if pnorm < 1e-12 {
        return Err(Error::Degenerate(
            "state is orthogonal to the null space".into(),
        ));
    }
    let psi_p = proj / C64::new(pnorm, 0.0);
    let e_s = (psi_p.adjoint() * &full * &psi_p)[(0, 0)].re;
    let gap = j - 2.0 * k;
    let r = (k + (k * k + delta * gap).sqrt()) / gap;
    let ground_lower = check(lambda_s - k * k / gap, lambda_h, tol);
    let ground_upper = check(lambda_h, lambda_s, tol);
    let overlap = (psi.adjoint() * &psi_p)[(0, 0)].norm_sqr();
    let deviation = check(1.0 - r * r, overlap, 1e-9);
    let energy = check(e_s, lambda_h + delta + 2.0 * k * r, tol);
    let holds = ground_lower.holds && ground_upper.holds && deviation.holds && energy.holds;
    Ok(ProjectionReport {
        j,
        k,
        delta,
        lambda_h,
        lambda_h2_on_s: lambda_s,
        null_dim: null.len(),
        ground_lower,
        ground_upper,
        deviation,
        energy,
        holds,
    })
}

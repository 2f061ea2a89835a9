//! Matrix-free energies, dense matrices and lowest-eigenpair solvers.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamiltonian::{self, LocalTerm};
use crate::linalg::{self, CMat, ZERO};
use crate::C64;

const CHUNK: usize = 1 << 12;

struct Prepared {
    sorted: Vec<usize>,
    support: Vec<usize>,
    offsets: Vec<usize>,
    nnz: Vec<(usize, usize, C64)>,
    rows: Vec<Vec<(usize, C64)>>,
}

fn prepare(t: &LocalTerm) -> Prepared {
    let offsets = linalg::local_offsets(&t.support);
    let d = t.block.nrows();
    let mut nnz = Vec::new();
    let mut rows = vec![Vec::new(); d];
    for r in 0..d {
        for c in 0..d {
            let v = t.block[(r, c)] * t.coeff;
            if v.norm() != 0.0 {
                nnz.push((offsets[r], offsets[c], v));
                rows[r].push((offsets[c], v));
            }
        }
    }
    let mut sorted = t.support.clone();
    sorted.sort_unstable();
    Prepared {
        sorted,
        support: t.support.clone(),
        offsets,
        nnz,
        rows,
    }
}

/// Number of qubits of a state vector, checking that it covers every term.
pub fn qubits_of(terms: &[LocalTerm], len: usize) -> Result<usize> {
    if !len.is_power_of_two() {
        return Err(Error::DimensionMismatch {
            expected: len.next_power_of_two(),
            got: len,
        });
    }
    let n = len.trailing_zeros() as usize;
    let need = hamiltonian::qubits_spanned(terms);
    if need > n {
        return Err(Error::DimensionMismatch {
            expected: 1 << need,
            got: len,
        });
    }
    Ok(n)
}

/// `<psi| sum_i coeff_i H_i |psi>` without building the full matrix.
pub fn expectation(terms: &[LocalTerm], state: &[C64]) -> Result<f64> {
    let n = qubits_of(terms, state.len())?;
    let mut total = 0.0;
    for t in terms {
        let p = prepare(t);
        let bases = 1usize << (n - p.sorted.len());
        let chunks = bases.div_ceil(CHUNK);
        let parts: Vec<f64> = (0..chunks)
            .into_par_iter()
            .map(|ch| {
                let mut acc = ZERO;
                for x in ch * CHUNK..((ch + 1) * CHUNK).min(bases) {
                    let base = linalg::spread(x, &p.sorted);
                    for &(r, c, v) in &p.nnz {
                        acc += state[base | r].conj() * v * state[base | c];
                    }
                }
                acc.re
            })
            .collect();
        total += parts.iter().sum::<f64>();
    }
    Ok(total)
}

/// `H |psi>`.
pub fn apply_hamiltonian(terms: &[LocalTerm], state: &[C64]) -> Result<Vec<C64>> {
    qubits_of(terms, state.len())?;
    let prepared: Vec<Prepared> = terms.iter().map(prepare).collect();
    let mut out = vec![ZERO; state.len()];
    out.par_chunks_mut(CHUNK)
        .enumerate()
        .for_each(|(ch, slice)| {
            for (k, o) in slice.iter_mut().enumerate() {
                let i = ch * CHUNK + k;
                let mut acc = ZERO;
                for p in &prepared {
                    let s = p.support.len();
                    let mut r = 0;
                    for (pos, &q) in p.support.iter().enumerate() {
                        r |= ((i >> q) & 1) << (s - 1 - pos);
                    }
                    let base = i & !p.offsets[p.offsets.len() - 1];
                    for &(off, v) in &p.rows[r] {
                        acc += v * state[base | off];
                    }
                }
                *o = acc;
            }
        });
    Ok(out)
}

/// Full `2^n x 2^n` matrix.
pub fn dense_matrix(terms: &[LocalTerm], n: usize) -> Result<CMat> {
    let need = hamiltonian::qubits_spanned(terms);
    if need > n {
        return Err(Error::DimensionMismatch {
            expected: need,
            got: n,
        });
    }
    let dim = 1usize << n;
    let mut m = CMat::zeros(dim, dim);
    for t in terms {
        let p = prepare(t);
        for x in 0..1usize << (n - p.sorted.len()) {
            let base = linalg::spread(x, &p.sorted);
            for &(r, c, v) in &p.nnz {
                m[(base | r, base | c)] += v;
            }
        }
    }
    Ok(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveMode {
    Dense,
    Iterative,
    Auto,
}

#[derive(Clone, Debug)]
pub struct EigenOptions {
    pub mode: SolveMode,
    /// Largest qubit count diagonalised densely.
    pub dense_limit: usize,
    /// Residual target relative to the summed term norms.
    pub tol: f64,
    pub krylov_dim: usize,
    pub max_restarts: usize,
    pub seed: u64,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions {
            mode: SolveMode::Auto,
            dense_limit: 12,
            tol: 1e-11,
            krylov_dim: 60,
            max_restarts: 400,
            seed: 7,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GroundState {
    pub value: f64,
    pub vector: Vec<C64>,
    /// `||H v - value v||`.
    pub residual: f64,
    pub mode: SolveMode,
}

fn norm_estimate(terms: &[LocalTerm]) -> f64 {
    terms
        .iter()
        .map(|t| {
            t.coeff.abs()
                * t.block.iter().map(|z| z.norm()).fold(0.0, f64::max)
                * t.block.nrows() as f64
        })
        .sum::<f64>()
        .max(1.0)
}

/// Lowest eigenpair of `sum_i H_i` on `n` qubits.
pub fn ground_energy(terms: &[LocalTerm], n: usize, opts: &EigenOptions) -> Result<GroundState> {
    let mode = match opts.mode {
        SolveMode::Auto if n <= opts.dense_limit => SolveMode::Dense,
        SolveMode::Auto => SolveMode::Iterative,
        m => m,
    };
    match mode {
        SolveMode::Dense => {
            if n > opts.dense_limit {
                return Err(Error::ResourceLimit {
                    what: "dense diagonalisation",
                    qubits: n,
                    limit: opts.dense_limit,
                });
            }
            let m = dense_matrix(terms, n)?;
            let (vals, vecs) = linalg::hermitian_eigen(&m);
            let vector: Vec<C64> = vecs.column(0).iter().copied().collect();
            let hv = &m * DVector::from_column_slice(&vector);
            let residual = hv
                .iter()
                .zip(&vector)
                .map(|(a, b)| (a - b * vals[0]).norm_sqr())
                .sum::<f64>()
                .sqrt();
            Ok(GroundState {
                value: vals[0],
                vector,
                residual,
                mode,
            })
        }
        _ => lanczos(terms, n, opts),
    }
}

fn lanczos(terms: &[LocalTerm], n: usize, opts: &EigenOptions) -> Result<GroundState> {
    let dim = 1usize << n;
    let scale = norm_estimate(terms);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut v: Vec<C64> = (0..dim)
        .map(|_| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    normalize(&mut v);
    let k = opts.krylov_dim.min(dim).max(2);
    let mut best = (f64::INFINITY, v.clone(), f64::INFINITY);
    for _ in 0..opts.max_restarts.max(1) {
        let mut basis: Vec<Vec<C64>> = vec![v.clone()];
        let mut alpha = Vec::new();
        let mut beta: Vec<f64> = Vec::new();
        for j in 0..k {
            let mut w = apply_hamiltonian(terms, &basis[j])?;
            let a = linalg::inner(&basis[j], &w).re;
            alpha.push(a);
            // full reorthogonalisation, twice
            for _ in 0..2 {
                for b in &basis {
                    let proj = linalg::inner(b, &w);
                    w.par_iter_mut()
                        .zip(b.par_iter())
                        .for_each(|(x, y)| *x -= proj * y);
                }
            }
            let nb = linalg::norm(&w);
            if j + 1 == k || nb < 1e-13 * scale {
                break;
            }
            beta.push(nb);
            w.par_iter_mut().for_each(|x| *x /= nb);
            basis.push(w);
        }
        let m = alpha.len();
        let tri = DMatrix::<f64>::from_fn(m, m, |r, c| {
            if r == c {
                alpha[r]
            } else if r + 1 == c {
                beta[r]
            } else if c + 1 == r {
                beta[c]
            } else {
                0.0
            }
        });
        let eig = tri.symmetric_eigen();
        let (imin, theta) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, &t)| (i, t))
            .unwrap();
        let y = eig.eigenvectors.column(imin);
        let mut x = vec![ZERO; dim];
        for (j, b) in basis.iter().take(m).enumerate() {
            let coef = y[j];
            x.par_iter_mut()
                .zip(b.par_iter())
                .for_each(|(xi, bi)| *xi += bi * coef);
        }
        normalize(&mut x);
        let hx = apply_hamiltonian(terms, &x)?;
        let value = linalg::inner(&x, &hx).re;
        let residual = hx
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - b * value).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if residual < best.2 {
            best = (value, x.clone(), residual);
        }
        if residual <= opts.tol * scale {
            return Ok(GroundState {
                value,
                vector: x,
                residual,
                mode: SolveMode::Iterative,
            });
        }
        let _ = theta;
        v = x;
    }
    Err(Error::NotConverged {
        value: best.0,
        residual: best.2,
        vector: Box::new(best.1),
    })
}

fn normalize(v: &mut [C64]) {
    let nv = linalg::norm(v);
    v.iter_mut().for_each(|x| *x /= nv);
}

/// Every eigenvalue, ascending (dense).
pub fn spectrum(terms: &[LocalTerm], n: usize, dense_limit: usize) -> Result<Vec<f64>> {
    if n > dense_limit {
        return Err(Error::ResourceLimit {
            what: "dense spectrum",
            qubits: n,
            limit: dense_limit,
        });
    }
    let m = dense_matrix(terms, n)?;
    Ok(linalg::hermitian_eigen(&m).0)
}

/// Smallest eigenvalue above `zero_tol` (dense).
pub fn smallest_nonzero_eigenvalue(
    terms: &[LocalTerm],
    n: usize,
    zero_tol: f64,
    dense_limit: usize,
) -> Result<f64> {
    spectrum(terms, n, dense_limit)?
        .into_iter()
        .find(|&v| v > zero_tol)
        .ok_or_else(|| Error::Degenerate("operator has no nonzero eigenvalue".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::TermTag;
    use proptest::prelude::*;
    use rand::Rng;

    fn random_hermitian(rng: &mut ChaCha8Rng, d: usize) -> CMat {
        let a = CMat::from_fn(d, d, |_, _| {
            C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
        });
        (&a + a.adjoint()) * C64::new(0.5, 0.0)
    }

    fn random_terms(seed: u64, n: usize, count: usize) -> Vec<LocalTerm> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let k = rng.gen_range(1..=3.min(n));
                let mut qs: Vec<usize> = (0..n).collect();
                for i in 0..k {
                    let j = rng.gen_range(i..n);
                    qs.swap(i, j);
                }
                qs.truncate(k);
                LocalTerm::new(qs, random_hermitian(&mut rng, 1 << k), TermTag::Amp)
                    .with_coeff(rng.gen_range(0.1..3.0))
            })
            .collect()
    }

    fn random_state(seed: u64, n: usize) -> Vec<C64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut v: Vec<C64> = (0..1 << n)
            .map(|_| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        normalize(&mut v);
        v
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn matrix_free_matches_dense(seed in 0u64..10_000, n in 1usize..7, count in 1usize..6) {
            let terms = random_terms(seed, n, count);
            let psi = random_state(seed ^ 0xabc, n);
            let m = dense_matrix(&terms, n).unwrap();
            let v = DVector::from_column_slice(&psi);
            let q = (v.adjoint() * &m * &v)[(0, 0)].re;
            let e = expectation(&terms, &psi).unwrap();
            prop_assert!((q - e).abs() < 1e-9);
            let hv = apply_hamiltonian(&terms, &psi).unwrap();
            let dv = &m * &v;
            for (a, b) in hv.iter().zip(dv.iter()) {
                prop_assert!((a - b).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn lanczos_agrees_with_dense() {
        let terms = random_terms(11, 8, 12);
        let d = ground_energy(
            &terms,
            8,
            &EigenOptions {
                mode: SolveMode::Dense,
                ..Default::default()
            },
        )
        .unwrap();
        let i = ground_energy(
            &terms,
            8,
            &EigenOptions {
                mode: SolveMode::Iterative,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(
            (d.value - i.value).abs() < 1e-8,
            "{} vs {}",
            d.value,
            i.value
        );
        assert!(d.residual < 1e-9);
    }

    #[test]
    fn wrong_length_is_rejected() {
        let terms = random_terms(1, 3, 2);
        assert!(matches!(
            expectation(&terms, &[ZERO; 4]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            expectation(&terms, &[ZERO; 6]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn dense_over_limit_errors() {
        let terms = random_terms(1, 3, 2);
        let opts = EigenOptions {
            mode: SolveMode::Dense,
            dense_limit: 2,
            ..Default::default()
        };
        assert!(matches!(
            ground_energy(&terms, 3, &opts),
            Err(Error::ResourceLimit { .. })
        ));
    }
}

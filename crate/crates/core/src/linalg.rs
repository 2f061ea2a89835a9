//! Small dense helpers over `DMatrix<Complex64>`.
//!
//! Block convention: inside a gate or term acting on `support`, `support[0]` is
//! the most significant bit of the local index. In a full state vector the bit
//! `1 << q` belongs to qubit `q`.

use nalgebra::DMatrix;
use rand::Rng;

use crate::C64;

pub type CMat = DMatrix<C64>;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn identity(dim: usize) -> CMat {
    CMat::identity(dim, dim)
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn pauli_x() -> CMat {
    CMat::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO])
}

pub fn hadamard() -> CMat {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CMat::from_row_slice(2, 2, &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)])
}

/// `Ry(theta) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]]`.
pub fn ry(theta: f64) -> CMat {
    let (s, co) = (theta / 2.0).sin_cos();
    CMat::from_row_slice(2, 2, &[c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0)])
}

/// Block-diagonal controlled gate on `[control, targets...]`; `u` fires when
/// the control equals `on`.
pub fn controlled(u: &CMat, on: bool) -> CMat {
    let d = u.nrows();
    let mut m = identity(2 * d);
    let off = if on { d } else { 0 };
    m.view_mut((off, off), (d, d)).copy_from(u);
    m
}

pub fn cnot() -> CMat {
    controlled(&pauli_x(), true)
}

/// `|bits><bits|`, `bits[0]` most significant.
pub fn projector(bits: &[bool]) -> CMat {
    let d = 1usize << bits.len();
    let mut m = CMat::zeros(d, d);
    let i = bits_to_index(bits);
    m[(i, i)] = ONE;
    m
}

/// Sum of the projectors onto each listed pattern.
pub fn projector_sum(patterns: &[&[bool]]) -> CMat {
    let k = patterns[0].len();
    let mut m = CMat::zeros(1 << k, 1 << k);
    for p in patterns {
        m += projector(p);
    }
    m
}

/// `I - sum_p |p><p|`.
pub fn complement(patterns: &[&[bool]]) -> CMat {
    let k = patterns[0].len();
    identity(1 << k) - projector_sum(patterns)
}

pub fn bits_to_index(bits: &[bool]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
}

pub fn index_to_bits(index: usize, len: usize) -> Vec<bool> {
    (0..len)
        .map(|k| (index >> (len - 1 - k)) & 1 == 1)
        .collect()
}

/// Largest entry of `|U^dag U - I|`.
pub fn unitarity_deviation(u: &CMat) -> f64 {
    if u.nrows() != u.ncols() {
        return f64::INFINITY;
    }
    let p = u.adjoint() * u - identity(u.nrows());
    p.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn hermiticity_deviation(h: &CMat) -> f64 {
    if h.nrows() != h.ncols() {
        return f64::INFINITY;
    }
    (h - h.adjoint())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

pub fn is_identity(u: &CMat, tol: f64) -> bool {
    u.nrows() == u.ncols() && (u - identity(u.nrows())).iter().all(|z| z.norm() <= tol)
}

/// A square root `V` of a 2x2 unitary `U` (`V * V = U`), itself unitary.
pub fn sqrt_unitary_2x2(u: &CMat) -> CMat {
    let det = u[(0, 0)] * u[(1, 1)] - u[(0, 1)] * u[(1, 0)];
    let tr = u[(0, 0)] + u[(1, 1)];
    let s1 = det.sqrt();
    let cands = [s1, -s1];
    let (s, denom) = cands
        .iter()
        .map(|&s| (s, (tr + 2.0 * s).sqrt()))
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .unwrap();
    if denom.norm() < 1e-12 {
        // U = -s I up to rounding; pick i*sqrt(s) scaled identity
        let r = (-s).sqrt();
        return identity(2) * r;
    }
    (u + identity(2) * s) / denom
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eigen(h: &CMat) -> (Vec<f64>, CMat) {
    let eig = h.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = CMat::zeros(h.nrows(), order.len());
    for (j, &i) in order.iter().enumerate() {
        vecs.set_column(j, &eig.eigenvectors.column(i));
    }
    (vals, vecs)
}

/// Spectral norm of a Hermitian matrix.
pub fn hermitian_norm(h: &CMat) -> f64 {
    let (vals, _) = hermitian_eigen(h);
    vals.iter().map(|v| v.abs()).fold(0.0, f64::max)
}

/// Global offsets of each local index for a block acting on `support`.
pub fn local_offsets(support: &[usize]) -> Vec<usize> {
    let s = support.len();
    (0..1usize << s)
        .map(|l| {
            (0..s)
                .filter(|&k| (l >> (s - 1 - k)) & 1 == 1)
                .fold(0, |acc, k| acc | (1 << support[k]))
        })
        .collect()
}

/// Deposit the bits of `x` into the positions not in `sorted_support`.
#[inline]
pub fn spread(mut x: usize, sorted_support: &[usize]) -> usize {
    for &p in sorted_support {
        let low = x & ((1 << p) - 1);
        x = ((x >> p) << (p + 1)) | low;
    }
    x
}

/// Apply `block` on `support` to a full `n`-qubit state in place.
pub fn apply_block(state: &mut [C64], n: usize, support: &[usize], block: &CMat) {
    let s = support.len();
    let dim = 1usize << s;
    let offsets = local_offsets(support);
    let mut sorted = support.to_vec();
    sorted.sort_unstable();
    let mut buf = vec![ZERO; dim];
    let mut out = vec![ZERO; dim];
    for x in 0..1usize << (n - s) {
        let base = spread(x, &sorted);
        for l in 0..dim {
            buf[l] = state[base | offsets[l]];
        }
        for r in 0..dim {
            let mut acc = ZERO;
            for l in 0..dim {
                acc += block[(r, l)] * buf[l];
            }
            out[r] = acc;
        }
        for r in 0..dim {
            state[base | offsets[r]] = out[r];
        }
    }
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn distance(a: &[C64], b: &[C64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Haar-random `d x d` unitary (QR of a Gaussian matrix with the phases of
/// `R`'s diagonal folded back in).
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMat {
    let g = CMat::from_fn(d, d, |_, _| C64::new(gauss(rng), gauss(rng)));
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..d {
        let z = r[(j, j)];
        let ph = if z.norm() > 0.0 { z / z.norm() } else { ONE };
        for i in 0..d {
            q[(i, j)] *= ph;
        }
    }
    q
}

/// Uniformly random unit vector on `n` qubits.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<C64> {
    let mut v: Vec<C64> = (0..1usize << n)
        .map(|_| C64::new(gauss(rng), gauss(rng)))
        .collect();
    let s = norm(&v);
    v.iter_mut().for_each(|a| *a /= s);
    v
}

fn gauss<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(rand_distr::StandardNormal)
}

//! Dense exact-diagonalization reference.
//!
//! Builds `H = -sum_k c_k T_k` as a real symmetric matrix via Kronecker
//! placement of single-site factors, computes its spectrum with cyclic Jacobi
//! rotations, and evaluates thermal mean energies — both for the full
//! partition function and for its order-L Taylor truncation
//! `Z_L = sum_{n<=L} (-beta)^n Tr[H^n] / n!`, which is the exact reference
//! for a Monte Carlo run with expansion cutoff L.
//!
//! Instead of differentiating a `Z_L` polynomial numerically, the truncated
//! mean energy is evaluated spectrally:
//!
//! ```text
//! <H>_L = sum_i E_i S_{L-1}(-beta E_i) / sum_i S_L(-beta E_i)
//! ```
//!
//! with `S_k` the truncated exponential series. The series is summed in
//! ascending order with compensated addition; for `E_i <= 0` the terms are
//! all positive, and the alternating contributions from positive eigenvalues
//! are exponentially negligible in the denominator. [`trace_powers`] provides
//! the moments `Tr[H^n]` for an independent cross-check through the moment
//! form of the same derivative.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::model::{HamiltonianCatalog, TermKind};
use crate::pauli::PauliString;

/// Full diagonalization is O(8^N); past this the dense path is hopeless.
pub const MAX_DENSE_QUBITS: usize = 14;
/// Repeated dense multiplication for `Tr[H^n]` is kept to N <= 10.
pub const MAX_MOMENT_QUBITS: usize = 10;

/// Off-diagonal Frobenius mass at which the Jacobi sweep stops, relative to
/// the Frobenius norm of the input.
const JACOBI_TOLERANCE: f64 = 1e-10;
const JACOBI_MAX_SWEEPS: usize = 60;

/// Dense real matrix, row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1.0;
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        self.data[row * self.dim + col] = value;
    }

    #[inline]
    pub fn add_to(&mut self, row: usize, col: usize, value: f64) {
        self.data[row * self.dim + col] += value;
    }

    pub fn trace(&self) -> f64 {
        let mut sum = KahanSum::new();
        for i in 0..self.dim {
            sum.add(self.data[i * self.dim + i]);
        }
        sum.value()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, &v| m.max(v.abs()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|v| v * v).sum())
    }

    /// Largest |a_ij - a_ji|.
    pub fn symmetry_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    pub fn matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = DenseMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == 0.0 {
                    continue;
                }
                let row_b = &other.data[k * d..(k + 1) * d];
                let row_o = &mut out.data[i * d..(i + 1) * d];
                for (o, b) in row_o.iter_mut().zip(row_b) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.dim);
        self.data
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }
}

/// Eigenvalues in ascending order.
#[derive(Clone, PartialEq, Debug)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn from_eigenvalues(mut eigenvalues: Vec<f64>) -> Self {
        eigenvalues.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
        Self { eigenvalues }
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }
}

const PAULI_X: [[f64; 2]; 2] = [[0.0, 1.0], [1.0, 0.0]];
const PAULI_Z: [[f64; 2]; 2] = [[1.0, 0.0], [0.0, -1.0]];
// X-then-Z product on one site.
const PAULI_XZ: [[f64; 2]; 2] = [[0.0, -1.0], [1.0, 0.0]];
const PROJ_UP: [[f64; 2]; 2] = [[1.0, 0.0], [0.0, 0.0]];
const PROJ_DOWN: [[f64; 2]; 2] = [[0.0, 0.0], [0.0, 1.0]];

/// `H = -sum_k c_k T_k` as a dense matrix.
pub fn build_dense(catalog: &HamiltonianCatalog) -> Result<DenseMatrix, Error> {
    let n = catalog.n_qubits();
    if n > MAX_DENSE_QUBITS {
        return Err(Error::TooManyQubits {
            what: "dense Hamiltonian",
            n,
            max: MAX_DENSE_QUBITS,
        });
    }
    let mut h = DenseMatrix::zeros(1 << n);
    for term in catalog.terms() {
        add_term_dense(&mut h, n, term.kind(), -term.coupling());
    }
    Ok(h)
}

/// Dense matrix of a single catalog term `T_k` (unit coupling).
pub fn term_dense(n: usize, kind: &TermKind) -> Result<DenseMatrix, Error> {
    if n > MAX_DENSE_QUBITS {
        return Err(Error::TooManyQubits {
            what: "dense term",
            n,
            max: MAX_DENSE_QUBITS,
        });
    }
    let mut m = DenseMatrix::zeros(1 << n);
    add_term_dense(&mut m, n, kind, 1.0);
    Ok(m)
}

fn add_term_dense(m: &mut DenseMatrix, n: usize, kind: &TermKind, coeff: f64) {
    match kind {
        TermKind::ControlledX { control, target } => {
            // CX = |0><0|_c + |1><1|_c X_t.
            add_kron_placed(m, coeff, n, &[(*control, PROJ_UP)]);
            add_kron_placed(m, coeff, n, &[(*control, PROJ_DOWN), (*target, PAULI_X)]);
        }
        TermKind::Projector(g) => {
            // (1 + g)/2.
            let dim = m.dim;
            for i in 0..dim {
                m.add_to(i, i, 0.5 * coeff);
            }
            let factors = pauli_factors(g);
            add_kron_placed(m, 0.5 * coeff * g.sign().as_f64(), n, &factors);
        }
    }
}

fn pauli_factors(g: &PauliString) -> Vec<(usize, [[f64; 2]; 2])> {
    (0..g.n_qubits())
        .filter_map(|site| match (g.x_mask().get(site), g.z_mask().get(site)) {
            (false, false) => None,
            (true, false) => Some((site, PAULI_X)),
            (false, true) => Some((site, PAULI_Z)),
            (true, true) => Some((site, PAULI_XZ)),
        })
        .collect()
}

/// Accumulate `coeff * prod_site F_site` where the listed sites carry the
/// given 2x2 factors and every other site carries the identity. Site 0 is
/// the most significant index bit.
fn add_kron_placed(m: &mut DenseMatrix, coeff: f64, n: usize, factors: &[(usize, [[f64; 2]; 2])]) {
    if coeff == 0.0 {
        return;
    }
    let dim = 1usize << n;
    debug_assert_eq!(m.dim, dim);
    for col in 0..dim {
        // Expand the at most 2^|factors| rows reachable from this column.
        let mut frontier: Vec<(usize, f64)> = vec![(col, coeff)];
        for &(site, f) in factors {
            let bit = 1usize << (n - 1 - site);
            let mut next = Vec::with_capacity(frontier.len() * 2);
            for &(row, amp) in &frontier {
                let col_bit = usize::from(col & bit != 0);
                for (row_bit, fv) in f.iter().enumerate() {
                    let v = fv[col_bit];
                    if v != 0.0 {
                        let r = (row & !bit) | if row_bit == 1 { bit } else { 0 };
                        next.push((r, amp * v));
                    }
                }
            }
            frontier = next;
        }
        for (row, amp) in frontier {
            m.add_to(row, col, amp);
        }
    }
}

/// Full real spectrum of a symmetric matrix by cyclic Jacobi rotations,
/// sweeping until the off-diagonal Frobenius mass falls below
/// `1e-10 * ||H||_F`.
pub fn symmetric_eigenvalues(h: &DenseMatrix) -> Result<Spectrum, Error> {
    Ok(Spectrum::from_eigenvalues(jacobi(h, None)?))
}

/// Eigenvalues paired with the orthogonal eigenvector matrix: `values[i]`
/// belongs to column `i`, unsorted. For residual checks; the plain
/// eigenvalue path skips the vector accumulation.
pub fn symmetric_eigenpairs(h: &DenseMatrix) -> Result<(Vec<f64>, DenseMatrix), Error> {
    let mut vectors = DenseMatrix::identity(h.dim());
    let values = jacobi(h, Some(&mut vectors))?;
    Ok((values, vectors))
}

fn jacobi(h: &DenseMatrix, mut vectors: Option<&mut DenseMatrix>) -> Result<Vec<f64>, Error> {
    let d = h.dim();
    if h.symmetry_error() > 1e-12 * (1.0 + h.max_abs()) {
        return Err(Error::NotSymmetric);
    }
    let mut a = h.clone();
    let norm = h.frobenius_norm();
    if d <= 1 || norm == 0.0 {
        return Ok((0..d).map(|i| a.get(i, i)).collect());
    }

    for sweep in 0..JACOBI_MAX_SWEEPS {
        let mut off_sq = 0.0;
        for p in 0..d {
            for q in (p + 1)..d {
                let v = a.get(p, q);
                off_sq += 2.0 * v * v;
            }
        }
        if libm::sqrt(off_sq) <= JACOBI_TOLERANCE * norm {
            return Ok((0..d).map(|i| a.get(i, i)).collect());
        }
        // During the first sweeps, rotate only reasonably large elements.
        let threshold = if sweep < 3 {
            0.2 * off_sq / ((d * d) as f64)
        } else {
            0.0
        };
        for p in 0..d {
            for q in (p + 1)..d {
                let apq = a.get(p, q);
                if apq == 0.0 || apq * apq <= threshold {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                let theta = 0.5 * (aqq - app) / apq;
                let t = if theta.abs() > 1e150 {
                    // Avoid overflow in theta^2; the rotation is tiny anyway.
                    0.5 / theta
                } else {
                    let s = if theta < 0.0 { -1.0 } else { 1.0 };
                    s / (theta.abs() + libm::sqrt(1.0 + theta * theta))
                };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = t * c;
                let tau = s / (1.0 + c);

                a.set(p, p, app - t * apq);
                a.set(q, q, aqq + t * apq);
                a.set(p, q, 0.0);
                a.set(q, p, 0.0);
                for j in 0..d {
                    if j == p || j == q {
                        continue;
                    }
                    let ajp = a.get(j, p);
                    let ajq = a.get(j, q);
                    let njp = ajp - s * (ajq + tau * ajp);
                    let njq = ajq + s * (ajp - tau * ajq);
                    a.set(j, p, njp);
                    a.set(p, j, njp);
                    a.set(j, q, njq);
                    a.set(q, j, njq);
                }
                if let Some(v) = vectors.as_deref_mut() {
                    for j in 0..d {
                        let vjp = v.get(j, p);
                        let vjq = v.get(j, q);
                        v.set(j, p, vjp - s * (vjq + tau * vjp));
                        v.set(j, q, vjq + s * (vjp - tau * vjq));
                    }
                }
            }
        }
    }
    Err(Error::JacobiNoConvergence)
}

/// Thermal mean energy from the full spectrum,
/// `sum E_i exp(-beta E_i) / sum exp(-beta E_i)`, max-shifted so the
/// exponentials cannot overflow.
pub fn mean_energy_full(spectrum: &Spectrum, beta: f64) -> Result<f64, Error> {
    if beta <= 0.0 || !beta.is_finite() {
        return Err(Error::InvalidBeta { value: beta });
    }
    let e0 = spectrum.min();
    let mut num = KahanSum::new();
    let mut den = KahanSum::new();
    for &e in spectrum.eigenvalues() {
        let w = libm::exp(-beta * (e - e0));
        num.add(e * w);
        den.add(w);
    }
    Ok(num.value() / den.value())
}

/// Mean energy of the order-`cutoff` truncated partition function,
/// `-d/d(beta) log Z_L` in spectral form.
pub fn mean_energy_truncated(spectrum: &Spectrum, beta: f64, cutoff: usize) -> Result<f64, Error> {
    if beta <= 0.0 || !beta.is_finite() {
        return Err(Error::InvalidBeta { value: beta });
    }
    if cutoff == 0 {
        return Err(Error::InvalidCutoff);
    }
    let mut num = KahanSum::new();
    let mut den = KahanSum::new();
    for &e in spectrum.eigenvalues() {
        let (s_prev, s_last) = truncated_exp_pair(-beta * e, cutoff);
        num.add(e * s_prev);
        den.add(s_last);
    }
    let partition = den.value();
    if partition <= 0.0 || partition.is_nan() {
        return Err(Error::TruncatedPartitionNonPositive { beta, cutoff });
    }
    Ok(num.value() / den.value())
}

/// `(S_{k-1}(x), S_k(x))` with `S_k(x) = sum_{m=0}^{k} x^m / m!`, summed in
/// ascending order with compensated addition.
fn truncated_exp_pair(x: f64, k: usize) -> (f64, f64) {
    let mut sum = KahanSum::new();
    sum.add(1.0);
    let mut term = 1.0;
    let mut prev = 0.0;
    for m in 1..=k {
        prev = sum.value();
        term *= x / m as f64;
        sum.add(term);
    }
    (prev, sum.value())
}

/// `Tr[H^n]` for `n = 0..=l_max` by repeated dense multiplication.
pub fn trace_powers(h: &DenseMatrix, l_max: usize) -> Result<Vec<f64>, Error> {
    let n_qubits = h.dim().trailing_zeros() as usize;
    if h.dim() > 1 << MAX_MOMENT_QUBITS {
        return Err(Error::TooManyQubits {
            what: "trace moments",
            n: n_qubits,
            max: MAX_MOMENT_QUBITS,
        });
    }
    let mut traces = Vec::with_capacity(l_max + 1);
    traces.push(h.dim() as f64);
    let mut power = DenseMatrix::identity(h.dim());
    for _ in 1..=l_max {
        power = power.matmul(h);
        traces.push(power.trace());
    }
    Ok(traces)
}

/// Mean energy of the truncated partition function evaluated from the trace
/// moments, `-Z_L'/Z_L` with `Z_L = sum_n (-beta)^n Tr[H^n]/n!`. Independent
/// route used to cross-check [`mean_energy_truncated`].
pub fn mean_energy_from_moments(traces: &[f64], beta: f64, cutoff: usize) -> Result<f64, Error> {
    if beta <= 0.0 || !beta.is_finite() {
        return Err(Error::InvalidBeta { value: beta });
    }
    if cutoff == 0 || cutoff >= traces.len() {
        return Err(Error::InvalidCutoff);
    }
    let mut z = KahanSum::new();
    let mut dz = KahanSum::new();
    let mut coeff = 1.0; // (-beta)^n / n!
    z.add(traces[0]);
    for (n, &t) in traces.iter().enumerate().skip(1).take(cutoff) {
        coeff *= -beta / n as f64;
        z.add(coeff * t);
        dz.add(n as f64 / beta * coeff * t);
    }
    let partition = z.value();
    if partition <= 0.0 || partition.is_nan() {
        return Err(Error::TruncatedPartitionNonPositive { beta, cutoff });
    }
    Ok(-dz.value() / partition)
}

/// Compensated (Kahan) accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let y = value - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::HamiltonianCatalog;
    use crate::model::OperatorTerm;
    use crate::pauli::PauliString;

    fn field_only_catalog(h: f64) -> HamiltonianCatalog {
        HamiltonianCatalog::new(
            1,
            vec![OperatorTerm::new(
                TermKind::Projector(PauliString::single_x(1, 0)),
                h,
                "PiX(0)".into(),
            )],
        )
        .unwrap()
    }

    #[test]
    fn single_site_field_spectrum() {
        // H = -h (1 + X)/2 has eigenvalues {-h, 0}.
        let h = build_dense(&field_only_catalog(2.5)).unwrap();
        let spec = symmetric_eigenvalues(&h).unwrap();
        assert!((spec.eigenvalues()[0] + 2.5).abs() < 1e-12);
        assert!(spec.eigenvalues()[1].abs() < 1e-12);
    }

    #[test]
    fn cnot_pair_is_symmetric() {
        let cat = HamiltonianCatalog::cnot_chain(2, 0.0, 1.0).unwrap();
        let h = build_dense(&cat).unwrap();
        assert_eq!(h.symmetry_error(), 0.0);
        // H = -CX(0,1) - CX(1,0); |00> is fixed by both.
        assert_eq!(h.get(0, 0), -2.0);
    }

    #[test]
    fn jacobi_on_diagonal_matrix() {
        let mut m = DenseMatrix::zeros(3);
        m.set(0, 0, 3.0);
        m.set(1, 1, -1.0);
        m.set(2, 2, 2.0);
        let spec = symmetric_eigenvalues(&m).unwrap();
        assert_eq!(spec.eigenvalues(), &[-1.0, 2.0, 3.0]);
    }

    #[test]
    fn jacobi_two_by_two_analytic() {
        // [[a, b], [b, a]] -> {a - b, a + b}.
        let (a, b) = (1.5, 0.75);
        let mut m = DenseMatrix::zeros(2);
        m.set(0, 0, a);
        m.set(1, 1, a);
        m.set(0, 1, b);
        m.set(1, 0, b);
        let spec = symmetric_eigenvalues(&m).unwrap();
        assert!((spec.eigenvalues()[0] - (a - b)).abs() < 1e-12);
        assert!((spec.eigenvalues()[1] - (a + b)).abs() < 1e-12);
    }

    #[test]
    fn jacobi_rejects_asymmetric_input() {
        let mut m = DenseMatrix::zeros(2);
        m.set(0, 1, 1.0);
        assert_eq!(symmetric_eigenvalues(&m), Err(Error::NotSymmetric));
    }

    #[test]
    fn eigenpair_residuals_are_small() {
        // Pseudo-random symmetric matrix; residual ||Hv - Ev|| <= 1e-8 ||H||.
        let d = 24;
        let mut m = DenseMatrix::zeros(d);
        let mut x = 0x2545f4914f6cdd1du64;
        for i in 0..d {
            for j in i..d {
                x ^= x << 13;
                x ^= x >> 7;
                x ^= x << 17;
                let v = (x >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
                m.set(i, j, v);
                m.set(j, i, v);
            }
        }
        let (values, vectors) = symmetric_eigenpairs(&m).unwrap();
        let scale = m.frobenius_norm();
        for (col, &e) in values.iter().enumerate() {
            let v: Vec<f64> = (0..d).map(|r| vectors.get(r, col)).collect();
            let hv = m.matvec(&v);
            let residual: f64 = libm::sqrt(
                hv.iter()
                    .zip(&v)
                    .map(|(h, vi)| (h - e * vi) * (h - e * vi))
                    .sum(),
            );
            assert!(residual <= 1e-8 * scale, "residual {residual}");
        }
    }

    #[test]
    fn mean_energy_full_limits() {
        let spec = Spectrum::from_eigenvalues(vec![-3.0]);
        assert_eq!(mean_energy_full(&spec, 0.7).unwrap(), -3.0);

        // Two-level {-h, 0}: <H> = -h e^{beta h} / (1 + e^{beta h}).
        let h = 1.0;
        let spec = Spectrum::from_eigenvalues(vec![-h, 0.0]);
        for beta in [0.1, 1.0, 5.0] {
            let expected = -h * libm::exp(beta * h) / (1.0 + libm::exp(beta * h));
            assert!((mean_energy_full(&spec, beta).unwrap() - expected).abs() < 1e-12);
        }
        // beta -> infinity: ground state dominates.
        assert!((mean_energy_full(&spec, 400.0).unwrap() + h).abs() < 1e-12);
    }

    #[test]
    fn truncated_converges_to_full() {
        let spec = Spectrum::from_eigenvalues(vec![-4.0, -1.5, 0.0, 2.0]);
        let beta = 1.0; // beta * ||H|| = 4
        let full = mean_energy_full(&spec, beta).unwrap();
        let truncated = mean_energy_truncated(&spec, beta, 80).unwrap();
        assert!((truncated - full).abs() < 1e-9);
    }

    #[test]
    fn truncated_order_one_closed_form() {
        let spec = Spectrum::from_eigenvalues(vec![-2.0, -1.0, 3.0]);
        let beta = 0.25;
        let trace: f64 = spec.eigenvalues().iter().sum();
        let d = spec.len() as f64;
        let expected = trace / (d - beta * trace);
        let got = mean_energy_truncated(&spec, beta, 1).unwrap();
        assert!((got - expected).abs() < 1e-14);
    }

    #[test]
    fn truncated_reports_nonpositive_partition() {
        // Single positive eigenvalue, L = 1: Z_1 = 1 - beta E < 0.
        let spec = Spectrum::from_eigenvalues(vec![10.0]);
        assert_eq!(
            mean_energy_truncated(&spec, 1.0, 1),
            Err(Error::TruncatedPartitionNonPositive {
                beta: 1.0,
                cutoff: 1
            })
        );
    }

    #[test]
    fn trace_power_basics() {
        let cat = field_only_catalog(1.25);
        let h = build_dense(&cat).unwrap();
        let traces = trace_powers(&h, 3).unwrap();
        assert_eq!(traces[0], 2.0); // Tr[1] on one qubit
        assert!((traces[1] + 1.25).abs() < 1e-12); // Tr[H] = -h
    }

    #[test]
    fn moments_route_matches_spectral_route() {
        let cat = HamiltonianCatalog::cnot_chain(4, 4.0, 1.0).unwrap();
        let h = build_dense(&cat).unwrap();
        let spec = symmetric_eigenvalues(&h).unwrap();
        let traces = trace_powers(&h, 12).unwrap();
        // beta ||H|| <= 3 keeps the alternating moment sum well conditioned.
        let beta = 3.0
            / spec
                .eigenvalues()
                .iter()
                .fold(0.0f64, |m, e| m.max(e.abs()));
        for cutoff in [1, 4, 8, 12] {
            let spectral = mean_energy_truncated(&spec, beta, cutoff).unwrap();
            let moments = mean_energy_from_moments(&traces, beta, cutoff).unwrap();
            assert!(
                (spectral - moments).abs() <= 1e-6 * spectral.abs(),
                "cutoff {cutoff}: {spectral} vs {moments}"
            );
        }
    }

    #[test]
    fn capability_bounds() {
        assert!(matches!(
            build_dense(&HamiltonianCatalog::cnot_chain(15, 1.0, 1.0).unwrap()),
            Err(Error::TooManyQubits { .. })
        ));
        let big = DenseMatrix::zeros(1 << 11);
        assert!(matches!(
            trace_powers(&big, 1),
            Err(Error::TooManyQubits { .. })
        ));
    }

    #[test]
    fn spectrum_trace_consistency() {
        let cat = HamiltonianCatalog::tfi_chain(5, 3.0, 1.0).unwrap();
        let h = build_dense(&cat).unwrap();
        let spec = symmetric_eigenvalues(&h).unwrap();
        let sum: f64 = spec.eigenvalues().iter().sum();
        let bound = 1e-9 * h.dim() as f64 * spec.max().abs().max(spec.min().abs());
        assert!((sum - h.trace()).abs() <= bound);
    }
}

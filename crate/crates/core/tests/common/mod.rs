//! Shared oracles for the integration tests: a brute-force dense statevector
//! simulator, independent of the stabilizer tableau code under test. Only
//! the conventions are shared: site 0 is the most significant index bit, and
//! slot L-1 of an operator string acts first on the ket.

#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_pcg::Pcg64Mcg;

use stabsse_core::model::{HamiltonianCatalog, TermKind};
use stabsse_core::sse::OperatorString;
use stabsse_core::stabilizer::BasisState;
use stabsse_core::{PauliString, Sign};

pub fn rng(seed: u64) -> Pcg64Mcg {
    Pcg64Mcg::seed_from_u64(seed)
}

/// Apply a signed Pauli `X^x Z^z` to a dense amplitude vector:
/// `g|b> = sign (-1)^(|z & b|) |b xor x>`.
pub fn apply_pauli_statevector(
    n: usize,
    x_sites: &[usize],
    z_sites: &[usize],
    negative: bool,
    v: &[f64],
) -> Vec<f64> {
    let dim = 1usize << n;
    assert_eq!(v.len(), dim);
    let x_mask = sites_to_index_mask(n, x_sites);
    let z_mask = sites_to_index_mask(n, z_sites);
    let mut out = vec![0.0; dim];
    for (b, &amp) in v.iter().enumerate() {
        let mut a = if negative { -amp } else { amp };
        if (b & z_mask).count_ones() % 2 == 1 {
            a = -a;
        }
        out[b ^ x_mask] += a;
    }
    out
}

/// Apply one catalog term to a dense amplitude vector.
pub fn apply_term_statevector(n: usize, kind: &TermKind, v: &[f64]) -> Vec<f64> {
    let dim = 1usize << n;
    assert_eq!(v.len(), dim);
    match kind {
        TermKind::ControlledX { control, target } => {
            let cbit = 1usize << (n - 1 - control);
            let tbit = 1usize << (n - 1 - target);
            let mut out = vec![0.0; dim];
            for (b, &amp) in v.iter().enumerate() {
                let dest = if b & cbit != 0 { b ^ tbit } else { b };
                out[dest] += amp;
            }
            out
        }
        TermKind::Projector(g) => {
            let gv = apply_pauli_statevector(
                n,
                &mask_sites(g, true),
                &mask_sites(g, false),
                g.sign().is_negative(),
                v,
            );
            v.iter().zip(&gv).map(|(a, b)| 0.5 * (a + b)).collect()
        }
    }
}

/// Dense matrix element `<s| O_1 ... O_L |s>`, slots applied from the back.
pub fn dense_matrix_element(
    catalog: &HamiltonianCatalog,
    basis: &BasisState,
    ops: &OperatorString,
) -> f64 {
    let n = catalog.n_qubits();
    let mut v = basis_vector(n, basis);
    for k in ops.slots().iter().rev().flatten() {
        v = apply_term_statevector(n, catalog.term(*k).kind(), &v);
    }
    v[basis.dense_index()]
}

/// Dense state reached by applying a raw term sequence (first element acts
/// first) to `|s>`.
pub fn dense_after_sequence(n: usize, seq: &[TermKind], basis: &BasisState) -> Vec<f64> {
    let mut v = basis_vector(n, basis);
    for kind in seq {
        v = apply_term_statevector(n, kind, &v);
    }
    v
}

pub fn basis_vector(n: usize, basis: &BasisState) -> Vec<f64> {
    let mut v = vec![0.0; 1usize << n];
    v[basis.dense_index()] = 1.0;
    v
}

/// Full dense matrix of a signed Pauli string, one non-zero per column.
pub fn pauli_matrix(n: usize, x_sites: &[usize], z_sites: &[usize], negative: bool) -> Vec<f64> {
    let dim = 1usize << n;
    let x_mask = sites_to_index_mask(n, x_sites);
    let z_mask = sites_to_index_mask(n, z_sites);
    let mut m = vec![0.0; dim * dim];
    for col in 0..dim {
        let mut a = if negative { -1.0 } else { 1.0 };
        if (col & z_mask).count_ones() % 2 == 1 {
            a = -a;
        }
        m[(col ^ x_mask) * dim + col] = a;
    }
    m
}

/// Accumulate `coeff * X^x Z^z` into a dense row-major matrix.
pub fn add_pauli_into(acc: &mut [f64], n: usize, coeff: f64, x_sites: &[usize], z_sites: &[usize]) {
    let dim = 1usize << n;
    assert_eq!(acc.len(), dim * dim);
    let x_mask = sites_to_index_mask(n, x_sites);
    let z_mask = sites_to_index_mask(n, z_sites);
    for col in 0..dim {
        let sign = if (col & z_mask).count_ones() % 2 == 1 {
            -1.0
        } else {
            1.0
        };
        acc[(col ^ x_mask) * dim + col] += coeff * sign;
    }
}

/// Dense matrix of one catalog term, built from scratch (no `ed` code).
pub fn term_matrix(n: usize, kind: &TermKind) -> Vec<f64> {
    let dim = 1usize << n;
    match kind {
        TermKind::ControlledX { control, target } => {
            let cbit = 1usize << (n - 1 - control);
            let tbit = 1usize << (n - 1 - target);
            let mut m = vec![0.0; dim * dim];
            for col in 0..dim {
                let row = if col & cbit != 0 { col ^ tbit } else { col };
                m[row * dim + col] = 1.0;
            }
            m
        }
        TermKind::Projector(g) => {
            let mut m = pauli_matrix(
                n,
                &mask_sites(g, true),
                &mask_sites(g, false),
                g.sign().is_negative(),
            );
            for v in m.iter_mut() {
                *v *= 0.5;
            }
            for i in 0..dim {
                m[i * dim + i] += 0.5;
            }
            m
        }
    }
}

pub fn matmul(n: usize, a: &[f64], b: &[f64]) -> Vec<f64> {
    let dim = 1usize << n;
    let mut out = vec![0.0; dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let av = a[i * dim + k];
            if av == 0.0 {
                continue;
            }
            for j in 0..dim {
                out[i * dim + j] += av * b[k * dim + j];
            }
        }
    }
    out
}

pub fn mask_sites(g: &PauliString, x_block: bool) -> Vec<usize> {
    let mask = if x_block { g.x_mask() } else { g.z_mask() };
    mask.iter_ones().collect()
}

fn sites_to_index_mask(n: usize, sites: &[usize]) -> usize {
    sites.iter().fold(0usize, |m, &s| m | 1 << (n - 1 - s))
}

/// Random sampling-legal term: CX, a pure-X projector, or a pure-Z
/// projector on one to three sites. Single-qubit systems only get
/// projectors.
pub fn random_term<R: Rng>(n: usize, rng: &mut R) -> TermKind {
    let pick = if n < 2 {
        rng.random_range(1..3u32)
    } else {
        rng.random_range(0..3u32)
    };
    match pick {
        0 => {
            let control = rng.random_range(0..n);
            let mut target = rng.random_range(0..n - 1);
            if target >= control {
                target += 1;
            }
            TermKind::ControlledX { control, target }
        }
        kind => {
            let support = random_support(n, rng);
            let g = if kind == 1 {
                PauliString::from_supports(n, &support, &[], Sign::Plus)
            } else {
                PauliString::from_supports(n, &[], &support, Sign::Plus)
            };
            TermKind::Projector(g)
        }
    }
}

fn random_support<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let size = rng.random_range(1..=3usize.min(n));
    let mut sites = Vec::with_capacity(size);
    while sites.len() < size {
        let s = rng.random_range(0..n);
        if !sites.contains(&s) {
            sites.push(s);
        }
    }
    sites
}

pub fn random_sequence<R: Rng>(n: usize, max_len: usize, rng: &mut R) -> Vec<TermKind> {
    let len = rng.random_range(0..=max_len);
    (0..len).map(|_| random_term(n, rng)).collect()
}

/// Run a raw term sequence through the stabilizer tableau (first element
/// acts first).
pub fn stabilizer_after_sequence(
    seq: &[TermKind],
    basis: &BasisState,
) -> stabsse_core::StabilizerState {
    let mut state = stabsse_core::StabilizerState::from_basis_state(basis);
    for kind in seq {
        match kind {
            TermKind::ControlledX { control, target } => {
                state.apply_cx(*control, *target).unwrap();
            }
            TermKind::Projector(g) => state.apply_projector(g).unwrap(),
        }
    }
    state
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
}

//! Stabilizer states as generator tableaus.
//!
//! A state is stored as `N` commuting, independent, signed Pauli strings
//! (each squaring to +1) plus a halving counter `F`: when the `zero` flag is
//! unset the represented unnormalized state is `2^(-F/2) |psi>`, where
//! `|psi>` is the unique normalized joint +1 eigenstate of the generators.
//!
//! Two operations evolve the tableau:
//!
//! * [`StabilizerState::apply_cx`] conjugates every generator by a
//!   controlled-not. In the real X-then-Z normal form this touches only the
//!   masks (`x[target] ^= x[control]`, `z[control] ^= z[target]`); signs and
//!   `F` are untouched.
//! * [`StabilizerState::apply_projector`] applies `(1 + g)/2` for a sign-+1
//!   Pauli string `g`. Generators anticommuting with `g` are merged pairwise
//!   and the first is replaced by `g` itself, costing one halving (`F += 1`).
//!   When every generator commutes, `g` is reduced against the group: if `+g`
//!   is a group element the state is untouched, and if `-g` is, the projector
//!   annihilates the state and the `zero` flag is set.
//!
//! [`StabilizerState::overlap_with_basis`] evaluates `<s|` state by row
//! reducing the X block of the tableau; the surviving pure-Z generators must
//! reproduce the spins of `|s>` or the overlap vanishes, and otherwise it is
//! `2^(-(F + r)/2)` with `r` the X-block rank. Overlaps of states reached from
//! a basis state through CX and the catalog's X-type/Z-type projectors are
//! therefore always non-negative; see `model` for why mixed X/Z projectors
//! are excluded there.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use rand::Rng;

use crate::error::Error;
use crate::gf2::{self, BitVec};
use crate::pauli::{PauliString, Sign};

/// Dense amplitude reconstruction is for test oracles only; the cost is
/// O(4^N) and grows out of hand quickly.
pub const TO_DENSE_MAX_QUBITS: usize = 12;

/// A computational (Z-) basis state. Bit set means spin -1, i.e. the qubit
/// is in `|1>`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasisState {
    down: BitVec,
}

impl BasisState {
    /// `|0...0>`, all spins +1.
    pub fn all_up(n: usize) -> Self {
        Self {
            down: BitVec::zeros(n),
        }
    }

    /// Build from spin values +1/-1.
    pub fn from_spins(spins: &[i8]) -> Result<Self, Error> {
        let mut down = BitVec::zeros(spins.len());
        for (i, &s) in spins.iter().enumerate() {
            match s {
                1 => {}
                -1 => down.set(i, true),
                _ => return Err(Error::InvalidSpin { site: i }),
            }
        }
        Ok(Self { down })
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.down.len()
    }

    #[inline]
    pub fn spin(&self, site: usize) -> i8 {
        if self.down.get(site) {
            -1
        } else {
            1
        }
    }

    #[inline]
    pub fn is_down(&self, site: usize) -> bool {
        self.down.get(site)
    }

    pub fn flip(&mut self, site: usize) {
        let cur = self.down.get(site);
        self.down.set(site, !cur);
    }

    /// Bit mask of spin-down sites.
    #[inline]
    pub fn down_mask(&self) -> &BitVec {
        &self.down
    }

    /// Overwrite with the contents of `other` (same width), reusing buffers.
    pub fn copy_from(&mut self, other: &BasisState) {
        self.down.copy_from(&other.down);
    }

    /// Redraw every spin uniformly, one boolean per site in site order.
    pub fn resample_uniform<R: Rng>(&mut self, rng: &mut R) {
        for i in 0..self.down.len() {
            let bit = rng.random::<bool>();
            self.down.set(i, bit);
        }
    }

    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let mut s = Self::all_up(n);
        s.resample_uniform(rng);
        s
    }

    /// Index of this state in a dense amplitude vector; site 0 is the most
    /// significant bit.
    pub fn dense_index(&self) -> usize {
        let n = self.down.len();
        debug_assert!(n <= usize::BITS as usize);
        let mut idx = 0usize;
        for i in 0..n {
            idx = (idx << 1) | usize::from(self.down.get(i));
        }
        idx
    }

    pub fn spins(&self) -> Vec<i8> {
        (0..self.n_qubits()).map(|i| self.spin(i)).collect()
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("|")?;
        for i in 0..self.n_qubits() {
            write!(f, "{}", u8::from(self.is_down(i)))?;
        }
        f.write_str(">")
    }
}

/// Exact value of a stabilizer matrix element: zero, or `2^(-k/2)` with a
/// non-negative integer `k`. No negative value is representable; the operator
/// strings sampled by the engine are entrywise non-negative in the Z basis,
/// so none is ever needed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MatrixElement {
    Zero,
    NonZero { half_exponent: u32 },
}

impl MatrixElement {
    pub const ONE: MatrixElement = MatrixElement::NonZero { half_exponent: 0 };

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self, MatrixElement::Zero)
    }

    #[inline]
    pub fn half_exponent(&self) -> Option<u32> {
        match self {
            MatrixElement::Zero => None,
            MatrixElement::NonZero { half_exponent } => Some(*half_exponent),
        }
    }

    /// Numeric value, `2^(-k/2)` or 0.
    pub fn value(&self) -> f64 {
        match self {
            MatrixElement::Zero => 0.0,
            MatrixElement::NonZero { half_exponent } => {
                libm::exp2(-0.5 * f64::from(*half_exponent))
            }
        }
    }

    /// `self / baseline`. The baseline must be non-zero; in the engine it is
    /// the weight of the current configuration, which never vanishes.
    pub fn ratio_over(&self, baseline: &MatrixElement) -> f64 {
        let b = baseline
            .half_exponent()
            .expect("ratio baseline must be non-zero");
        match self {
            MatrixElement::Zero => 0.0,
            MatrixElement::NonZero { half_exponent } => {
                libm::exp2(0.5 * (f64::from(b) - f64::from(*half_exponent)))
            }
        }
    }
}

impl PartialOrd for MatrixElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MatrixElement {
    fn cmp(&self, other: &Self) -> Ordering {
        use MatrixElement::*;
        match (self, other) {
            (Zero, Zero) => Ordering::Equal,
            (Zero, NonZero { .. }) => Ordering::Less,
            (NonZero { .. }, Zero) => Ordering::Greater,
            // Larger exponent means smaller value.
            (NonZero { half_exponent: a }, NonZero { half_exponent: b }) => b.cmp(a),
        }
    }
}

impl fmt::Display for MatrixElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixElement::Zero => f.write_str("0"),
            MatrixElement::NonZero { half_exponent } => write!(f, "2^(-{half_exponent}/2)"),
        }
    }
}

/// What a projector application did to the tableau.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum ProjectorAction {
    /// Some generator anticommuted: tableau rewritten, `F` incremented.
    Reduced,
    /// `+g` was already in the group: nothing changed.
    Identity,
    /// `-g` was in the group (or the state was already dead): zero state.
    Annihilated,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StabilizerState {
    n: usize,
    gens: Vec<PauliString>,
    halving: u32,
    zero: bool,
    // Some(x_rank) when the tableau is in Gauss-Jordan canonical form
    // (X columns eliminated left to right, then Z columns). Canonicalization
    // only multiplies generators together, so the represented state is
    // unchanged; the cache just avoids repeating the elimination.
    canonical: Option<usize>,
}

impl StabilizerState {
    /// Stabilizer tableau of the product state `|s>`: generator `m` is
    /// `sigma_m Z_m`, `F = 0`.
    pub fn from_basis_state(basis: &BasisState) -> Self {
        let n = basis.n_qubits();
        let gens = (0..n)
            .map(|i| PauliString::from_supports(n, &[], &[i], Sign::from_parity(basis.is_down(i))))
            .collect();
        Self {
            n,
            gens,
            halving: 0,
            zero: false,
            canonical: Some(0),
        }
    }

    /// Reset to `|s>` in place, reusing the generator buffers.
    pub fn reset_to_basis(&mut self, basis: &BasisState) {
        debug_assert_eq!(basis.n_qubits(), self.n);
        for (i, g) in self.gens.iter_mut().enumerate() {
            g.x_mask_mut().clear();
            g.z_mask_mut().clear();
            g.z_mask_mut().set(i, true);
            g.set_sign(Sign::from_parity(basis.is_down(i)));
        }
        self.halving = 0;
        self.zero = false;
        self.canonical = Some(0);
    }

    /// Overwrite with the contents of `other` (same width), reusing the
    /// generator buffers.
    pub fn copy_from(&mut self, other: &StabilizerState) {
        debug_assert_eq!(self.n, other.n);
        for (g, o) in self.gens.iter_mut().zip(&other.gens) {
            g.copy_from(o);
        }
        self.halving = other.halving;
        self.zero = other.zero;
        self.canonical = other.canonical;
    }

    /// Build from explicit generators, validating the stabilizer-state
    /// invariants (pairwise commutation, involutions, full GF(2) rank).
    pub fn from_generators(gens: Vec<PauliString>) -> Result<Self, Error> {
        let n = gens
            .first()
            .map(PauliString::n_qubits)
            .ok_or(Error::InvalidGenerators {
                reason: "no generators",
            })?;
        let state = Self {
            n,
            gens,
            halving: 0,
            zero: false,
            canonical: None,
        };
        state.validate()?;
        Ok(state)
    }

    /// Override the halving counter (for assembling known mid-string states
    /// in tests and examples).
    pub fn with_halving_count(mut self, halving: u32) -> Self {
        self.halving = halving;
        self
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn halving_count(&self) -> u32 {
        self.halving
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.zero
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.gens
    }

    /// Check every stored invariant; cheap enough for tests, not meant for
    /// hot loops.
    pub fn validate(&self) -> Result<(), Error> {
        if self.gens.len() != self.n {
            return Err(Error::InvalidGenerators {
                reason: "generator count differs from qubit count",
            });
        }
        for g in &self.gens {
            if g.n_qubits() != self.n {
                return Err(Error::InvalidGenerators {
                    reason: "generator width differs from qubit count",
                });
            }
            if !g.squares_to_plus_one() {
                return Err(Error::InvalidGenerators {
                    reason: "generator has odd X/Z overlap",
                });
            }
        }
        for i in 0..self.gens.len() {
            for j in (i + 1)..self.gens.len() {
                if self.gens[i].anticommutes_with(&self.gens[j]) {
                    return Err(Error::InvalidGenerators {
                        reason: "generators do not all commute",
                    });
                }
            }
        }
        let rows: Vec<BitVec> = self.gens.iter().map(symplectic_row).collect();
        if gf2::rank(&rows) != self.n {
            return Err(Error::InvalidGenerators {
                reason: "generators are not independent",
            });
        }
        Ok(())
    }

    /// Conjugate every generator by `CX(control, target)`. Signs and `F` are
    /// unchanged; an annihilated state passes through untouched.
    pub fn apply_cx(&mut self, control: usize, target: usize) -> Result<(), Error> {
        if control >= self.n {
            return Err(Error::SiteOutOfRange {
                site: control,
                n_qubits: self.n,
            });
        }
        if target >= self.n {
            return Err(Error::SiteOutOfRange {
                site: target,
                n_qubits: self.n,
            });
        }
        if control == target {
            return Err(Error::ControlEqualsTarget { site: control });
        }
        if self.zero {
            return Ok(());
        }
        for g in &mut self.gens {
            // X_c -> X_c X_t, Z_t -> Z_c Z_t; the other two are fixed.
            if g.x_mask().get(control) {
                let t = g.x_mask().get(target);
                g.x_mask_mut().set(target, !t);
            }
            if g.z_mask().get(target) {
                let c = g.z_mask().get(control);
                g.z_mask_mut().set(control, !c);
            }
        }
        self.canonical = None;
        Ok(())
    }

    /// Apply the projector `(1 + g)/2`.
    pub fn apply_projector(&mut self, g: &PauliString) -> Result<(), Error> {
        let mut scratch = PauliString::identity(self.n);
        self.apply_projector_with_scratch(g, &mut scratch)
            .map(|_| ())
    }

    /// Allocation-free variant for the sampling hot path; `scratch` must
    /// have the same width as the state. Reports what the projector did,
    /// which the sampler exploits: an `Identity` outcome leaves the tableau
    /// bit-for-bit unchanged.
    pub(crate) fn apply_projector_with_scratch(
        &mut self,
        g: &PauliString,
        scratch: &mut PauliString,
    ) -> Result<ProjectorAction, Error> {
        if g.n_qubits() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: g.n_qubits(),
            });
        }
        if g.sign().is_negative() {
            return Err(Error::ProjectorSignNegative);
        }
        if !g.squares_to_plus_one() {
            return Err(Error::ProjectorNotInvolution);
        }
        if self.zero {
            return Ok(ProjectorAction::Annihilated);
        }

        let mut first: Option<usize> = None;
        for m in 0..self.n {
            if self.gens[m].anticommutes_with(g) {
                match first {
                    None => first = Some(m),
                    Some(m1) => {
                        let (pivot, row) = gf2::split_two(&mut self.gens, m1, m);
                        row.premultiply(pivot);
                    }
                }
            }
        }

        match first {
            Some(m1) => {
                // g replaces the first anticommuting generator; the norm
                // halves once.
                self.gens[m1].copy_from(g);
                self.halving += 1;
                self.canonical = None;
                Ok(ProjectorAction::Reduced)
            }
            None => {
                // g commutes with the whole group, so +g or -g is a group
                // element. +g: the projector acts as identity. -g: it
                // annihilates the state.
                if self.sign_in_group(g, scratch).is_negative() {
                    self.zero = true;
                    Ok(ProjectorAction::Annihilated)
                } else {
                    Ok(ProjectorAction::Identity)
                }
            }
        }
    }

    /// Overlap `<s | state>` with a computational basis state.
    ///
    /// Row reduces the X block in place (the represented state is not
    /// changed by this); each surviving pure-Z generator `+-Z^Q` must satisfy
    /// `sign = prod_{Q_i = 1} sigma_i`, otherwise some `-g` stabilizes one
    /// state and `+g` the other and the overlap is zero. The non-zero value
    /// is `2^(-(F + r)/2)` with `r` the X-block rank.
    pub fn overlap_with_basis(&mut self, basis: &BasisState) -> Result<MatrixElement, Error> {
        if basis.n_qubits() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: basis.n_qubits(),
            });
        }
        if self.zero {
            return Ok(MatrixElement::Zero);
        }
        let x_rank = self.ensure_canonical();
        for m in x_rank..self.n {
            let gen = &self.gens[m];
            debug_assert!(!gen.x_mask().any());
            let required = Sign::from_parity(gen.z_mask().dot(basis.down_mask()));
            if gen.sign() != required {
                return Ok(MatrixElement::Zero);
            }
        }
        Ok(MatrixElement::NonZero {
            half_exponent: self.halving + x_rank as u32,
        })
    }

    /// Dense amplitudes of the represented (unnormalized) state, for the
    /// test oracles. The global phase is fixed by making the first non-zero
    /// amplitude positive.
    pub fn to_dense(&self) -> Result<Vec<f64>, Error> {
        if self.n > TO_DENSE_MAX_QUBITS {
            return Err(Error::TooManyQubits {
                what: "dense reconstruction",
                n: self.n,
                max: TO_DENSE_MAX_QUBITS,
            });
        }
        let dim = 1usize << self.n;
        if self.zero {
            return Ok(vec![0.0; dim]);
        }
        // Project a trial basis vector through prod_m (1 + G_m)/2, which is
        // |psi><psi|; the first trial with a non-zero image is proportional
        // to |psi|>.
        let mut image = vec![0.0f64; dim];
        for trial in 0..dim {
            image.fill(0.0);
            image[trial] = 1.0;
            for g in &self.gens {
                apply_projector_dense(self.n, g, &mut image);
            }
            let norm_sq: f64 = image.iter().map(|a| a * a).sum();
            if norm_sq > 1e-12 {
                let scale = libm::exp2(-0.5 * f64::from(self.halving)) / libm::sqrt(norm_sq);
                let flip = image.iter().find(|a| a.abs() > 1e-12).map_or(1.0, |a| {
                    if *a < 0.0 {
                        -1.0
                    } else {
                        1.0
                    }
                });
                for a in &mut image {
                    *a *= scale * flip;
                }
                return Ok(image);
            }
        }
        unreachable!("a stabilizer state overlaps at least one basis state");
    }

    /// Sign with which `g` (up to sign) occurs in the stabilizer group.
    /// Callers must ensure `g` commutes with every generator, which makes
    /// membership guaranteed: the generators span a maximal isotropic
    /// subspace of GF(2)^(2N).
    ///
    /// In echelon form, row m's pivot column is zero in every later row, so
    /// reducing the residual row by row in ascending order settles each
    /// pivot column for good.
    fn sign_in_group(&mut self, g: &PauliString, scratch: &mut PauliString) -> Sign {
        self.ensure_canonical();
        scratch.copy_from(g);
        for m in 0..self.n {
            let pivot_col = self.pivot_column(m);
            if col_bit(scratch, pivot_col) {
                scratch.premultiply(&self.gens[m]);
            }
        }
        debug_assert!(scratch.is_identity_up_to_sign());
        // g * (product of generators) = +-identity, and everything involved
        // squares to +1, so the residual sign is the group sign of g itself.
        scratch.sign()
    }

    /// Row-echelon form over the 2N columns (X block first, then Z block),
    /// multiplying generators together; returns the X-block rank. Pivots are
    /// chosen as the lowest-index generator carrying a 1 in the column.
    fn ensure_canonical(&mut self) -> usize {
        if let Some(r) = self.canonical {
            return r;
        }
        let n = self.n;
        let mut pivot = 0;
        let mut x_rank = 0;
        for col in 0..2 * n {
            let Some(row) = (pivot..n).find(|&m| col_bit(&self.gens[m], col)) else {
                continue;
            };
            self.gens.swap(pivot, row);
            for m in (pivot + 1)..n {
                if col_bit(&self.gens[m], col) {
                    let (p, t) = gf2::split_two(&mut self.gens, pivot, m);
                    t.premultiply(p);
                }
            }
            pivot += 1;
            if col < n {
                x_rank = pivot;
            }
            if pivot == n {
                break;
            }
        }
        self.canonical = Some(x_rank);
        x_rank
    }

    /// Column of the leading 1 of canonical row `m`.
    fn pivot_column(&self, m: usize) -> usize {
        debug_assert!(self.canonical.is_some());
        let g = &self.gens[m];
        for col in 0..2 * self.n {
            if col_bit(g, col) {
                return col;
            }
        }
        unreachable!("canonical generators are non-trivial");
    }
}

impl fmt::Display for StabilizerState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            return write!(f, "<annihilated, {} qubits>", self.n);
        }
        write!(f, "F={} <", self.halving)?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

#[inline]
fn col_bit(g: &PauliString, col: usize) -> bool {
    let n = g.n_qubits();
    if col < n {
        g.x_mask().get(col)
    } else {
        g.z_mask().get(col - n)
    }
}

fn symplectic_row(g: &PauliString) -> BitVec {
    let n = g.n_qubits();
    let mut row = BitVec::zeros(2 * n);
    for i in 0..n {
        row.set(i, g.x_mask().get(i));
        row.set(n + i, g.z_mask().get(i));
    }
    row
}

/// Dense action of `(1 + g)/2` on an amplitude vector; shared by `to_dense`.
/// `g|b> = sign * (-1)^(|z & b|) |b xor x>` with site 0 as the most
/// significant index bit.
fn apply_projector_dense(n: usize, g: &PauliString, v: &mut [f64]) {
    let dim = v.len();
    let x_idx = index_mask(g.x_mask(), n);
    let z_idx = index_mask(g.z_mask(), n);
    let sign = g.sign().as_f64();
    let mut out = vec![0.0f64; dim];
    for (b, &amp) in v.iter().enumerate() {
        if amp == 0.0 {
            continue;
        }
        out[b] += 0.5 * amp;
        let phase = if (b & z_idx).count_ones() % 2 == 1 {
            -1.0
        } else {
            1.0
        };
        out[b ^ x_idx] += 0.5 * sign * phase * amp;
    }
    v.copy_from_slice(&out);
}

/// Convert a per-site mask to a dense-index mask (site 0 = most significant
/// bit).
pub(crate) fn index_mask(mask: &BitVec, n: usize) -> usize {
    let mut idx = 0usize;
    for i in 0..n {
        idx = (idx << 1) | usize::from(mask.get(i));
    }
    idx
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state_of(spins: &[i8]) -> StabilizerState {
        StabilizerState::from_basis_state(&BasisState::from_spins(spins).unwrap())
    }

    #[test]
    fn basis_generators_are_signed_z() {
        let s = state_of(&[1, -1, 1]);
        assert_eq!(s.halving_count(), 0);
        assert!(!s.is_zero());
        let gens = s.generators();
        assert_eq!(gens[0], PauliString::single_z(3, 0));
        assert_eq!(
            gens[1],
            PauliString::from_supports(3, &[], &[1], Sign::Minus)
        );
        assert_eq!(gens[2], PauliString::single_z(3, 2));
    }

    #[test]
    fn from_spins_rejects_bad_entry() {
        assert_eq!(
            BasisState::from_spins(&[1, 0]),
            Err(Error::InvalidSpin { site: 1 })
        );
    }

    #[test]
    fn single_down_spin() {
        let s = state_of(&[-1]);
        assert_eq!(
            s.generators()[0],
            PauliString::from_supports(1, &[], &[0], Sign::Minus)
        );
    }

    #[test]
    fn cx_makes_bell_generators() {
        // <X0, Z1> --CX(0,1)--> <X0X1, Z0Z1>.
        let mut s = StabilizerState::from_generators(vec![
            PauliString::single_x(2, 0),
            PauliString::single_z(2, 1),
        ])
        .unwrap();
        s.apply_cx(0, 1).unwrap();
        assert_eq!(
            s.generators()[0],
            PauliString::from_supports(2, &[0, 1], &[], Sign::Plus)
        );
        assert_eq!(
            s.generators()[1],
            PauliString::from_supports(2, &[], &[0, 1], Sign::Plus)
        );
        assert_eq!(s.halving_count(), 0);
    }

    #[test]
    fn cx_is_an_involution_on_the_tableau() {
        let mut s = state_of(&[1, -1, 1, -1]);
        s.apply_cx(1, 2).unwrap();
        s.apply_projector(&PauliString::single_x(4, 0)).unwrap();
        let snapshot = s.clone();
        s.apply_cx(3, 0).unwrap();
        s.apply_cx(3, 0).unwrap();
        assert_eq!(s, snapshot);
    }

    #[test]
    fn cx_on_all_up_state_keeps_state() {
        // <Z0, Z1> -> <Z0, Z0Z1>, still |00>.
        let mut s = state_of(&[1, 1]);
        s.apply_cx(0, 1).unwrap();
        assert_eq!(s.generators()[0], PauliString::single_z(2, 0));
        assert_eq!(
            s.generators()[1],
            PauliString::from_supports(2, &[], &[0, 1], Sign::Plus)
        );
        assert_eq!(s.to_dense().unwrap(), vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn cx_rejects_bad_sites() {
        let mut s = state_of(&[1, 1]);
        assert_eq!(
            s.apply_cx(0, 0),
            Err(Error::ControlEqualsTarget { site: 0 })
        );
        assert_eq!(
            s.apply_cx(0, 2),
            Err(Error::SiteOutOfRange {
                site: 2,
                n_qubits: 2
            })
        );
    }

    #[test]
    fn projector_replaces_anticommuting_generator() {
        // (1 + X0)/2 on |00>: <Z0, Z1> -> <X0, Z1>, F 0 -> 1.
        let mut s = state_of(&[1, 1]);
        s.apply_projector(&PauliString::single_x(2, 0)).unwrap();
        assert_eq!(s.generators()[0], PauliString::single_x(2, 0));
        assert_eq!(s.generators()[1], PauliString::single_z(2, 1));
        assert_eq!(s.halving_count(), 1);
        assert!(!s.is_zero());
    }

    #[test]
    fn projector_annihilates_minus_eigenstate() {
        // (1 + X0)/2 on |->.
        let mut s = StabilizerState::from_generators(vec![PauliString::from_supports(
            1,
            &[0],
            &[],
            Sign::Minus,
        )])
        .unwrap();
        s.apply_projector(&PauliString::single_x(1, 0)).unwrap();
        assert!(s.is_zero());
        assert_eq!(s.to_dense().unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn projector_fixes_plus_eigenstate() {
        let mut s = StabilizerState::from_generators(vec![PauliString::single_x(1, 0)]).unwrap();
        let before = s.halving_count();
        s.apply_projector(&PauliString::single_x(1, 0)).unwrap();
        assert!(!s.is_zero());
        assert_eq!(s.halving_count(), before);
    }

    #[test]
    fn projector_identity_when_g_in_group() {
        // (1 + Z0Z1)/2 fixes |00>: Z0Z1 is the product of the generators.
        let mut s = state_of(&[1, 1]);
        let g = PauliString::from_supports(2, &[], &[0, 1], Sign::Plus);
        s.apply_projector(&g).unwrap();
        assert!(!s.is_zero());
        assert_eq!(s.halving_count(), 0);
        assert_eq!(s.to_dense().unwrap(), vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn projector_rejects_invalid_input() {
        let mut s = state_of(&[1]);
        let neg = PauliString::from_supports(1, &[0], &[], Sign::Minus);
        assert_eq!(s.apply_projector(&neg), Err(Error::ProjectorSignNegative));
        let odd = PauliString::from_supports(1, &[0], &[0], Sign::Plus);
        assert_eq!(s.apply_projector(&odd), Err(Error::ProjectorNotInvolution));
    }

    #[test]
    fn bell_overlap_is_one_half() {
        // CX(0,1) Pi_0 |00>: generators <X0X1, Z0Z1> with F = 1;
        // <00| picks up 2^(-(1 + 2 - 1)/2) = 1/2.
        let mut s = StabilizerState::from_generators(vec![
            PauliString::from_supports(2, &[0, 1], &[], Sign::Plus),
            PauliString::from_supports(2, &[], &[0, 1], Sign::Plus),
        ])
        .unwrap()
        .with_halving_count(1);
        let up = BasisState::all_up(2);
        assert_eq!(
            s.overlap_with_basis(&up).unwrap(),
            MatrixElement::NonZero { half_exponent: 2 }
        );
        assert_eq!(s.overlap_with_basis(&up).unwrap().value(), 0.5);
    }

    #[test]
    fn self_overlap_is_one() {
        let basis = BasisState::from_spins(&[1, -1, 1, -1, -1]).unwrap();
        let mut s = StabilizerState::from_basis_state(&basis);
        assert_eq!(s.overlap_with_basis(&basis).unwrap(), MatrixElement::ONE);
    }

    #[test]
    fn orthogonal_basis_states_overlap_zero() {
        let mut s = state_of(&[1]);
        let down = BasisState::from_spins(&[-1]).unwrap();
        assert_eq!(s.overlap_with_basis(&down).unwrap(), MatrixElement::Zero);
    }

    #[test]
    fn overlap_checks_dimensions() {
        let mut s = state_of(&[1, 1]);
        let basis = BasisState::all_up(3);
        assert!(matches!(
            s.overlap_with_basis(&basis),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn dense_of_basis_state() {
        let s = state_of(&[1]);
        assert_eq!(s.to_dense().unwrap(), vec![1.0, 0.0]);
    }

    #[test]
    fn dense_of_bell_pair_with_halving() {
        let s = StabilizerState::from_generators(vec![
            PauliString::from_supports(2, &[0, 1], &[], Sign::Plus),
            PauliString::from_supports(2, &[], &[0, 1], Sign::Plus),
        ])
        .unwrap()
        .with_halving_count(1);
        assert_eq!(s.to_dense().unwrap(), vec![0.5, 0.0, 0.0, 0.5]);
    }

    #[test]
    fn dense_of_projected_single_qubit() {
        // Pi_0 |0> = (|0> + |1>)/2.
        let mut s = state_of(&[1]);
        s.apply_projector(&PauliString::single_x(1, 0)).unwrap();
        assert_eq!(s.to_dense().unwrap(), vec![0.5, 0.5]);
    }

    #[test]
    fn dense_rejects_large_states() {
        let s = state_of(&[1; 13]);
        assert!(matches!(s.to_dense(), Err(Error::TooManyQubits { .. })));
    }

    #[test]
    fn from_generators_validates() {
        // X0 and Z0 anticommute.
        let err = StabilizerState::from_generators(vec![
            PauliString::single_x(1, 0),
            PauliString::single_z(1, 0),
        ])
        .unwrap_err();
        assert!(matches!(err, Error::InvalidGenerators { .. }));

        // Dependent generators.
        let err = StabilizerState::from_generators(vec![
            PauliString::single_z(2, 0),
            PauliString::single_z(2, 0),
        ])
        .unwrap_err();
        assert!(matches!(err, Error::InvalidGenerators { .. }));
    }

    #[test]
    fn annihilated_state_absorbs_everything() {
        let mut s = StabilizerState::from_generators(vec![PauliString::from_supports(
            1,
            &[0],
            &[],
            Sign::Minus,
        )])
        .unwrap();
        s.apply_projector(&PauliString::single_x(1, 0)).unwrap();
        assert!(s.is_zero());
        let snapshot = s.clone();
        s.apply_projector(&PauliString::single_x(1, 0)).unwrap();
        assert_eq!(s, snapshot);
        assert_eq!(
            s.overlap_with_basis(&BasisState::all_up(1)).unwrap(),
            MatrixElement::Zero
        );
    }

    #[test]
    fn matrix_element_ordering_and_value() {
        let one = MatrixElement::ONE;
        let half = MatrixElement::NonZero { half_exponent: 2 };
        let zero = MatrixElement::Zero;
        assert!(zero < half && half < one);
        assert_eq!(one.value(), 1.0);
        assert_eq!(half.value(), 0.25f64.sqrt());
        assert_eq!(half.ratio_over(&one), 0.5);
        assert_eq!(one.ratio_over(&half), 2.0);
        assert_eq!(zero.ratio_over(&half), 0.0);
    }

    #[test]
    fn dense_index_site_zero_is_most_significant() {
        let b = BasisState::from_spins(&[-1, 1, 1]).unwrap();
        assert_eq!(b.dense_index(), 4);
        let b = BasisState::from_spins(&[1, 1, -1]).unwrap();
        assert_eq!(b.dense_index(), 1);
    }
}

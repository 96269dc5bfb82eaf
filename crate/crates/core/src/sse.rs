//! The SSE Markov chain.
//!
//! A chain element is a [`Configuration`]: a basis state `|s>` together with
//! a length-L operator string whose slots hold either the identity or an
//! index into the term catalog. Its weight in the expansion of
//! `Z = Tr exp(-beta H)` is
//!
//! ```text
//! W = beta^n (L-n)!/L! * (prod over occupied slots of c_k) * <s| T ... T |s>
//! ```
//!
//! with `n` the number of occupied slots; the string matrix element is
//! evaluated through the stabilizer tableau and the couplings `c_k` enter the
//! acceptance ratios below. Slot `L-1` acts first on the ket.
//!
//! Updates satisfy detailed balance:
//!
//! * State update: draw `s'` uniformly over all 2^N basis states and accept
//!   with `min(1, W'/W)`; couplings and combinatorial factors cancel because
//!   the string is unchanged.
//! * Operator update at slot p: if the slot is the identity, draw a term
//!   with probability `c_k / C` (`C = sum c_k`) and accept the insertion
//!   with `min(1, beta C / (L - n) * W_new/W_old)`. If the slot holds a
//!   term, propose the identity and accept with
//!   `min(1, (L - n + 1) / (beta C) * W_new/W_old)`. `n` counts occupied
//!   slots before the move.
//!
//! One [`Sampler::cycle`] is an attempted state change followed by one
//! operator proposal per slot, in slot order. The energy estimator is
//! `<H> = -<n>/beta`.
//!
//! Random stream layout, for reproducible runs: the state proposal consumes
//! N boolean draws (site order; one `usize` site draw for the single-site
//! flip variant) plus one `f64`; an operator proposal consumes one `f64` for
//! the term choice when the slot is empty, plus one `f64` for the acceptance.
//! Acceptance draws are consumed even when the ratio exceeds one.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::Error;
use crate::model::{HamiltonianCatalog, TermKind};
use crate::pauli::PauliString;
use crate::stabilizer::{BasisState, MatrixElement, ProjectorAction, StabilizerState};

/// Bins used for the scheduled runs' standard errors (clamped for short
/// measurement stretches).
pub const DEFAULT_ERROR_BINS: usize = 32;

/// `<n>` above this fraction of the cutoff suggests the expansion order is
/// too small for the temperature.
pub const TRUNCATION_WARN_FRACTION: f64 = 0.9;

/// Length-L operator string; `None` slots are identities.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OperatorString {
    slots: Vec<Option<usize>>,
    occupied: usize,
}

impl OperatorString {
    pub fn identity(cutoff: usize) -> Self {
        Self {
            slots: vec![None; cutoff],
            occupied: 0,
        }
    }

    /// Expansion cutoff L.
    #[inline]
    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    #[inline]
    pub fn slot(&self, position: usize) -> Option<usize> {
        self.slots[position]
    }

    pub fn slots(&self) -> &[Option<usize>] {
        &self.slots
    }

    pub fn set_slot(&mut self, position: usize, entry: Option<usize>) {
        let old = self.slots[position];
        self.occupied = self.occupied - usize::from(old.is_some()) + usize::from(entry.is_some());
        self.slots[position] = entry;
    }

    /// Number n of non-identity slots.
    #[inline]
    pub fn non_identity_count(&self) -> usize {
        self.occupied
    }
}

/// One Markov chain element with its cached weight. The cache always equals
/// `evaluate_matrix_element(catalog, basis, ops)` and is never zero: the
/// initial all-identity configuration has weight one, and zero-weight
/// proposals are never accepted.
#[derive(Clone, PartialEq, Debug)]
pub struct Configuration {
    basis: BasisState,
    ops: OperatorString,
    weight: MatrixElement,
}

impl Configuration {
    /// `|0...0>` with the all-identity string: weight exactly one.
    pub fn initial(n_qubits: usize, cutoff: usize) -> Self {
        Self {
            basis: BasisState::all_up(n_qubits),
            ops: OperatorString::identity(cutoff),
            weight: MatrixElement::ONE,
        }
    }

    /// Assemble a configuration from explicit parts, computing its weight.
    /// Zero-weight combinations are rejected: they carry probability zero
    /// and the chain may never occupy them.
    pub fn assemble(
        catalog: &HamiltonianCatalog,
        basis: BasisState,
        ops: OperatorString,
    ) -> Result<Self, Error> {
        let weight = evaluate_matrix_element(catalog, &basis, &ops)?;
        if weight.is_zero() {
            return Err(Error::ZeroWeightConfiguration);
        }
        Ok(Self { basis, ops, weight })
    }

    pub fn basis(&self) -> &BasisState {
        &self.basis
    }

    pub fn operator_string(&self) -> &OperatorString {
        &self.ops
    }

    #[inline]
    pub fn weight(&self) -> MatrixElement {
        self.weight
    }

    #[inline]
    pub fn non_identity_count(&self) -> usize {
        self.ops.non_identity_count()
    }
}

/// `<s| O_{i_1} ... O_{i_L} |s>` for the given string: slots are applied to
/// the tableau from slot L-1 down to slot 0, short-circuiting once a
/// projector annihilates the state. Slot entries must be valid catalog
/// indices.
pub fn evaluate_matrix_element(
    catalog: &HamiltonianCatalog,
    basis: &BasisState,
    ops: &OperatorString,
) -> Result<MatrixElement, Error> {
    if basis.n_qubits() != catalog.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: catalog.n_qubits(),
            found: basis.n_qubits(),
        });
    }
    let mut ws = StabilizerState::from_basis_state(basis);
    let mut scratch = PauliString::identity(catalog.n_qubits());
    Ok(eval_with(&mut ws, &mut scratch, catalog, basis, ops))
}

fn eval_with(
    ws: &mut StabilizerState,
    scratch: &mut PauliString,
    catalog: &HamiltonianCatalog,
    basis: &BasisState,
    ops: &OperatorString,
) -> MatrixElement {
    ws.reset_to_basis(basis);
    for slot in ops.slots().iter().rev() {
        let Some(index) = slot else { continue };
        apply_term(ws, scratch, catalog, *index);
        if ws.is_zero() {
            return MatrixElement::Zero;
        }
    }
    ws.overlap_with_basis(basis)
        .expect("dimensions checked on entry")
}

#[inline]
fn apply_term(
    ws: &mut StabilizerState,
    scratch: &mut PauliString,
    catalog: &HamiltonianCatalog,
    index: usize,
) -> ProjectorAction {
    match catalog.term(index).kind() {
        TermKind::ControlledX { control, target } => {
            ws.apply_cx(*control, *target)
                .expect("catalog sites are validated");
            ProjectorAction::Reduced
        }
        TermKind::Projector(g) => ws
            .apply_projector_with_scratch(g, scratch)
            .expect("catalog projectors are validated"),
    }
}

/// How state proposals are drawn. The uniform resample mirrors the sampling
/// protocol as published; the symmetric single-site flip (same acceptance
/// formula) is available for larger systems where a full resample is
/// essentially always rejected.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum StateProposal {
    #[default]
    ResampleUniform,
    SingleSiteFlip,
}

/// Update machinery bound to one catalog: the term-selection table plus
/// reusable tableau workspaces, so a proposal allocates nothing.
///
/// By default [`Sampler::cycle`] keeps a cache of the stabilizer states
/// reached after each slot ("suffix" states, since slot L-1 acts first), so
/// the proposal at slot p re-applies only the p slots in front of it instead
/// of the whole string. The cache consumes the identical random stream and
/// makes the identical decisions as the baseline full recomputation
/// ([`Sampler::without_prefix_cache`]); the two produce the same chain.
pub struct Sampler<'a> {
    catalog: &'a HamiltonianCatalog,
    total_coupling: f64,
    // (cumulative coupling, term index); zero-coupling terms are absent and
    // therefore never proposed.
    cumulative: Vec<(f64, usize)>,
    state_proposal: StateProposal,
    prefix_cache: bool,
    ws: StabilizerState,
    scratch: PauliString,
    trial_basis: BasisState,
    // suffix[p] = slots p..L-1 applied to |sigma>; suffix[L] = |sigma>.
    suffix: Vec<StabilizerState>,
}

/// Outcome of one full Monte Carlo cycle.
#[derive(Clone, Copy, Debug)]
pub struct CycleOutcome {
    pub state_accepted: bool,
    pub operator_acceptances: usize,
}

impl<'a> Sampler<'a> {
    pub fn new(catalog: &'a HamiltonianCatalog) -> Self {
        let mut cumulative = Vec::with_capacity(catalog.len());
        let mut running = 0.0;
        for (index, term) in catalog.terms().iter().enumerate() {
            if term.coupling() > 0.0 {
                running += term.coupling();
                cumulative.push((running, index));
            }
        }
        let n = catalog.n_qubits();
        Self {
            catalog,
            total_coupling: running,
            cumulative,
            state_proposal: StateProposal::default(),
            prefix_cache: true,
            ws: StabilizerState::from_basis_state(&BasisState::all_up(n)),
            scratch: PauliString::identity(n),
            trial_basis: BasisState::all_up(n),
            suffix: Vec::new(),
        }
    }

    pub fn with_state_proposal(mut self, proposal: StateProposal) -> Self {
        self.state_proposal = proposal;
        self
    }

    /// Recompute the full string on every proposal instead of using the
    /// suffix cache.
    pub fn without_prefix_cache(mut self) -> Self {
        self.prefix_cache = false;
        self
    }

    pub fn catalog(&self) -> &HamiltonianCatalog {
        self.catalog
    }

    /// Term index drawn with probability `c_k / C`.
    fn draw_term_index<R: Rng>(&self, rng: &mut R) -> usize {
        let u = rng.random::<f64>() * self.total_coupling;
        let pos = self.cumulative.partition_point(|&(cum, _)| cum <= u);
        self.cumulative[pos.min(self.cumulative.len() - 1)].1
    }

    /// Propose a new basis state; returns whether it was accepted.
    pub fn propose_state_update<R: Rng>(
        &mut self,
        config: &mut Configuration,
        rng: &mut R,
    ) -> bool {
        match self.state_proposal {
            StateProposal::ResampleUniform => self.trial_basis.resample_uniform(rng),
            StateProposal::SingleSiteFlip => {
                self.trial_basis.copy_from(&config.basis);
                let site = rng.random_range(0..self.trial_basis.n_qubits());
                self.trial_basis.flip(site);
            }
        }
        let w_new = eval_with(
            &mut self.ws,
            &mut self.scratch,
            self.catalog,
            &self.trial_basis,
            &config.ops,
        );
        let ratio = w_new.ratio_over(&config.weight);
        let accept = rng.random::<f64>() < ratio;
        if accept {
            core::mem::swap(&mut config.basis, &mut self.trial_basis);
            config.weight = w_new;
        }
        accept
    }

    /// Propose an insertion or removal at the given slot; returns whether it
    /// was accepted.
    pub fn propose_operator_update<R: Rng>(
        &mut self,
        config: &mut Configuration,
        position: usize,
        beta: f64,
        rng: &mut R,
    ) -> Result<bool, Error> {
        let cutoff = config.ops.len();
        if position >= cutoff {
            return Err(Error::SlotOutOfRange {
                slot: position,
                cutoff,
            });
        }
        let n_before = config.ops.non_identity_count();
        let old = config.ops.slot(position);
        let factor = match old {
            // Insertion: the identity count L - n is positive here since
            // slot `position` itself is free.
            None => {
                let term = self.draw_term_index(rng);
                config.ops.set_slot(position, Some(term));
                beta * self.total_coupling / (cutoff - n_before) as f64
            }
            Some(_) => {
                config.ops.set_slot(position, None);
                (cutoff - n_before + 1) as f64 / (beta * self.total_coupling)
            }
        };
        let w_new = eval_with(
            &mut self.ws,
            &mut self.scratch,
            self.catalog,
            &config.basis,
            &config.ops,
        );
        let ratio = factor * w_new.ratio_over(&config.weight);
        let accept = rng.random::<f64>() < ratio;
        if accept {
            config.weight = w_new;
        } else {
            config.ops.set_slot(position, old);
        }
        Ok(accept)
    }

    /// One cycle: a state proposal followed by one operator proposal per
    /// slot, in slot order.
    pub fn cycle<R: Rng>(
        &mut self,
        config: &mut Configuration,
        beta: f64,
        rng: &mut R,
    ) -> CycleOutcome {
        let state_accepted = self.propose_state_update(config, rng);
        if self.prefix_cache {
            self.rebuild_suffixes(config);
        }
        let mut operator_acceptances = 0;
        for position in 0..config.ops.len() {
            let accepted = if self.prefix_cache {
                self.cached_operator_update(config, position, beta, rng)
            } else {
                self.propose_operator_update(config, position, beta, rng)
                    .expect("position is in range")
            };
            operator_acceptances += usize::from(accepted);
        }
        debug_assert_eq!(
            eval_with(
                &mut self.ws,
                &mut self.scratch,
                self.catalog,
                &config.basis,
                &config.ops
            ),
            config.weight,
            "cached weight out of sync"
        );
        CycleOutcome {
            state_accepted,
            operator_acceptances,
        }
    }

    /// Recompute the suffix states for the current basis state and string;
    /// proposals later in the sweep only read suffixes behind the slot they
    /// touch, which stay valid whatever the sweep decides.
    fn rebuild_suffixes(&mut self, config: &Configuration) {
        let cutoff = config.ops.len();
        if self.suffix.len() != cutoff + 1 {
            let template = StabilizerState::from_basis_state(&config.basis);
            self.suffix = vec![template; cutoff + 1];
        }
        self.suffix[cutoff].reset_to_basis(&config.basis);
        for position in (0..cutoff).rev() {
            let (front, back) = self.suffix.split_at_mut(position + 1);
            let target = &mut front[position];
            target.copy_from(&back[0]);
            if let Some(index) = config.ops.slot(position) {
                apply_term(target, &mut self.scratch, self.catalog, index);
            }
            debug_assert!(!target.is_zero(), "live configuration has a dead suffix");
        }
    }

    /// Operator proposal evaluated from the cached suffix: identical draws
    /// and decisions to `propose_operator_update`, but only slots
    /// `position..=0` are re-applied — and not even those when the touched
    /// projector acts as the identity, which pins the new weight to the old
    /// one without any tableau work.
    fn cached_operator_update<R: Rng>(
        &mut self,
        config: &mut Configuration,
        position: usize,
        beta: f64,
        rng: &mut R,
    ) -> bool {
        let cutoff = config.ops.len();
        let n_before = config.ops.non_identity_count();
        let old = config.ops.slot(position);
        let factor;
        // Some(w): the new matrix element is known without touching the
        // tableau. None: re-apply the tail and take the overlap.
        let mut shortcut: Option<MatrixElement> = None;
        match old {
            None => {
                let term = self.draw_term_index(rng);
                config.ops.set_slot(position, Some(term));
                factor = beta * self.total_coupling / (cutoff - n_before) as f64;
                self.ws.copy_from(&self.suffix[position + 1]);
                match apply_term(&mut self.ws, &mut self.scratch, self.catalog, term) {
                    // The new operator fixes the suffix state, so the whole
                    // chain is unchanged.
                    ProjectorAction::Identity => shortcut = Some(config.weight),
                    ProjectorAction::Annihilated => shortcut = Some(MatrixElement::Zero),
                    ProjectorAction::Reduced => {}
                }
            }
            Some(term) => {
                config.ops.set_slot(position, None);
                factor = (cutoff - n_before + 1) as f64 / (beta * self.total_coupling);
                // A projector that did not lower the norm between
                // suffix[p+1] and suffix[p] acted as the identity there;
                // removing it changes nothing.
                let was_identity = matches!(self.catalog.term(term).kind(), TermKind::Projector(_))
                    && self.suffix[position].halving_count()
                        == self.suffix[position + 1].halving_count();
                if was_identity {
                    shortcut = Some(config.weight);
                } else {
                    self.ws.copy_from(&self.suffix[position + 1]);
                }
            }
        }
        let w_new = shortcut.unwrap_or_else(|| {
            let mut alive = !self.ws.is_zero();
            let mut q = position;
            while alive && q > 0 {
                q -= 1;
                if let Some(index) = config.ops.slot(q) {
                    apply_term(&mut self.ws, &mut self.scratch, self.catalog, index);
                    alive = !self.ws.is_zero();
                }
            }
            if alive {
                self.ws
                    .overlap_with_basis(&config.basis)
                    .expect("workspace width matches")
            } else {
                MatrixElement::Zero
            }
        });
        let ratio = factor * w_new.ratio_over(&config.weight);
        let accept = rng.random::<f64>() < ratio;
        if accept {
            config.weight = w_new;
            // Suffixes at or below `position` are stale now, but the
            // remaining proposals in this sweep only read strictly higher
            // ones.
        } else {
            config.ops.set_slot(position, old);
        }
        accept
    }
}

/// Per-temperature record of a scheduled run.
#[derive(Clone, Debug, PartialEq)]
pub struct SchedulePoint {
    pub temperature: f64,
    pub beta: f64,
    /// Mean non-identity operator count over the measurement cycles.
    pub mean_n: f64,
    /// `-mean_n / beta`, by construction.
    pub energy: f64,
    pub energy_stderr: f64,
    pub state_accept_rate: f64,
    pub op_accept_rate: f64,
}

impl SchedulePoint {
    /// `<n>` is pressing against the cutoff; the expansion order is too
    /// small at this temperature.
    pub fn near_cutoff(&self, cutoff: usize) -> bool {
        self.mean_n >= TRUNCATION_WARN_FRACTION * cutoff as f64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    cutoff: usize,
    points: Vec<SchedulePoint>,
}

impl RunResult {
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn points(&self) -> &[SchedulePoint] {
        &self.points
    }

    /// Any temperature where `<n>` approaches the cutoff.
    pub fn truncation_suspect(&self) -> bool {
        self.points.iter().any(|p| p.near_cutoff(self.cutoff))
    }
}

/// Anneal through the temperature grid (descending), running
/// `cycles_therm` thermalization cycles and `cycles_meas` measurement cycles
/// at each temperature. The configuration carries over from one temperature
/// to the next; the chain starts from `|0...0>` with the all-identity
/// string. `n` is accumulated every measurement cycle and the standard error
/// comes from a binning analysis.
pub fn run_schedule<R: Rng>(
    catalog: &HamiltonianCatalog,
    cutoff: usize,
    temperatures: &[f64],
    cycles_therm: usize,
    cycles_meas: usize,
    rng: &mut R,
) -> Result<RunResult, Error> {
    if cutoff == 0 {
        return Err(Error::InvalidCutoff);
    }
    if cycles_meas == 0 {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    for &t in temperatures {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::InvalidTemperature { value: t });
        }
    }
    let mut sampler = Sampler::new(catalog);
    let mut config = Configuration::initial(catalog.n_qubits(), cutoff);
    let mut points = Vec::with_capacity(temperatures.len());
    let mut samples = vec![0.0f64; 0];
    for &temperature in temperatures {
        let beta = 1.0 / temperature;
        let mut state_accepted = 0usize;
        let mut op_accepted = 0usize;
        for _ in 0..cycles_therm {
            let outcome = sampler.cycle(&mut config, beta, rng);
            state_accepted += usize::from(outcome.state_accepted);
            op_accepted += outcome.operator_acceptances;
        }
        samples.clear();
        for _ in 0..cycles_meas {
            let outcome = sampler.cycle(&mut config, beta, rng);
            state_accepted += usize::from(outcome.state_accepted);
            op_accepted += outcome.operator_acceptances;
            samples.push(config.non_identity_count() as f64);
        }
        let mean_n = samples.iter().sum::<f64>() / samples.len() as f64;
        let bins = DEFAULT_ERROR_BINS.min(samples.len() / 2);
        let n_stderr = if bins >= 2 {
            estimate_error(&samples, bins)?
        } else {
            0.0
        };
        let total_cycles = cycles_therm + cycles_meas;
        points.push(SchedulePoint {
            temperature,
            beta,
            mean_n,
            energy: -mean_n / beta,
            energy_stderr: n_stderr / beta,
            state_accept_rate: state_accepted as f64 / total_cycles as f64,
            op_accept_rate: op_accepted as f64 / (total_cycles * cutoff) as f64,
        });
    }
    Ok(RunResult { cutoff, points })
}

/// Binning estimate of the standard error of the mean: split the series into
/// `bin_count` equal bins (a short tail is dropped) and return the sample
/// standard deviation of the bin means over `sqrt(bin_count)`.
pub fn estimate_error(samples: &[f64], bin_count: usize) -> Result<f64, Error> {
    if bin_count < 2 {
        return Err(Error::InvalidBinCount { bin_count });
    }
    if samples.len() < 2 * bin_count {
        return Err(Error::TooFewSamples {
            needed: 2 * bin_count,
            got: samples.len(),
        });
    }
    let per_bin = samples.len() / bin_count;
    let means: Vec<f64> = (0..bin_count)
        .map(|b| {
            let bin = &samples[b * per_bin..(b + 1) * per_bin];
            bin.iter().sum::<f64>() / per_bin as f64
        })
        .collect();
    let grand = means.iter().sum::<f64>() / bin_count as f64;
    let variance =
        means.iter().map(|m| (m - grand) * (m - grand)).sum::<f64>() / (bin_count - 1) as f64;
    Ok(libm::sqrt(variance / bin_count as f64))
}

/// Descending grid `start, start - step, ...` down to `end` (inclusive up to
/// a relative rounding slack). A step larger than the span yields the single
/// temperature `start`.
pub fn temperature_grid(start: f64, end: f64, step: f64) -> Result<Vec<f64>, Error> {
    if !(start.is_finite() && end.is_finite() && step.is_finite())
        || !(start >= end && end > 0.0 && step > 0.0)
    {
        return Err(Error::InvalidTemperatureGrid);
    }
    let mut grid = Vec::new();
    let slack = step * 1e-9;
    let mut k = 0u32;
    loop {
        let t = start - f64::from(k) * step;
        if t < end - slack || t <= 0.0 {
            break;
        }
        grid.push(t);
        k += 1;
    }
    Ok(grid)
}

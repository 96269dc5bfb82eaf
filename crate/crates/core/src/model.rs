//! Operator-term catalogs for Hamiltonians of the form `H = -sum_k c_k T_k`.
//!
//! Every term is either a controlled-not unitary or a projector `(1 + g)/2`
//! whose Pauli string `g` is pure-X or pure-Z. Both kinds are entrywise
//! non-negative in the Z basis, so every operator-string matrix element is
//! non-negative and the Monte Carlo weights never pick up a sign. Projectors
//! mixing X and Z factors can produce negative entries and are rejected at
//! construction; the sampling layer never has to re-check.
//!
//! The engine refers to terms by their index in the catalog, so term order is
//! part of the reproducible random stream. The builders lay terms out
//! site-by-site in the documented order below.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;
use crate::pauli::{PauliString, Sign};

#[derive(Clone, PartialEq, Debug)]
pub enum TermKind {
    /// Controlled-not with the given control and target sites; unitary and
    /// hermitian at the same time.
    ControlledX { control: usize, target: usize },
    /// `(1 + g)/2` for a sign-+1 Pauli string `g` that is pure-X or pure-Z.
    Projector(PauliString),
}

#[derive(Clone, PartialEq, Debug)]
pub struct OperatorTerm {
    kind: TermKind,
    coupling: f64,
    label: String,
}

impl OperatorTerm {
    pub fn new(kind: TermKind, coupling: f64, label: String) -> Self {
        Self {
            kind,
            coupling,
            label,
        }
    }

    #[inline]
    pub fn kind(&self) -> &TermKind {
        &self.kind
    }

    /// Coupling constant `c_k >= 0`. Zero-coupling terms stay in the catalog
    /// but are never proposed.
    #[inline]
    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct HamiltonianCatalog {
    n_qubits: usize,
    terms: Vec<OperatorTerm>,
}

impl HamiltonianCatalog {
    /// Assemble a catalog from explicit terms, validating site ranges,
    /// projector form, and coupling signs.
    pub fn new(n_qubits: usize, terms: Vec<OperatorTerm>) -> Result<Self, Error> {
        for term in &terms {
            if !(term.coupling >= 0.0 && term.coupling.is_finite()) {
                return Err(Error::InvalidCoupling {
                    name: "term coupling",
                    value: term.coupling,
                });
            }
            match &term.kind {
                TermKind::ControlledX { control, target } => {
                    for &site in &[*control, *target] {
                        if site >= n_qubits {
                            return Err(Error::SiteOutOfRange { site, n_qubits });
                        }
                    }
                    if control == target {
                        return Err(Error::ControlEqualsTarget { site: *control });
                    }
                }
                TermKind::Projector(g) => {
                    if g.n_qubits() != n_qubits {
                        return Err(Error::DimensionMismatch {
                            expected: n_qubits,
                            found: g.n_qubits(),
                        });
                    }
                    if g.sign().is_negative() {
                        return Err(Error::ProjectorSignNegative);
                    }
                    if g.x_mask().any() && g.z_mask().any() {
                        return Err(Error::ProjectorMixed);
                    }
                }
            }
        }
        let catalog = Self { n_qubits, terms };
        if catalog.total_coupling() <= 0.0 {
            return Err(Error::ZeroTotalCoupling);
        }
        Ok(catalog)
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[OperatorTerm] {
        &self.terms
    }

    #[inline]
    pub fn term(&self, index: usize) -> &OperatorTerm {
        &self.terms[index]
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total coupling `C = sum_k c_k`, recomputed on every call so it can
    /// never go stale.
    pub fn total_coupling(&self) -> f64 {
        self.terms.iter().map(|t| t.coupling).sum()
    }

    /// Periodic chain of CX bonds plus on-site `(1 + X_i)/2` projectors:
    /// `H = -J sum_i CX(i, i+1) - h sum_i Pi_i`, site N identified with
    /// site 0. Terms are laid out per site, bond first: CX(0,1), PiX(0),
    /// CX(1,2), PiX(1), ...
    pub fn cnot_chain(n: usize, field: f64, bond: f64) -> Result<Self, Error> {
        check_chain_couplings(n, field, bond)?;
        let mut terms = Vec::with_capacity(2 * n);
        for i in 0..n {
            let j = (i + 1) % n;
            terms.push(OperatorTerm::new(
                TermKind::ControlledX {
                    control: i,
                    target: j,
                },
                bond,
                format!("CX({i},{j})"),
            ));
            terms.push(OperatorTerm::new(
                TermKind::Projector(PauliString::single_x(n, i)),
                field,
                format!("PiX({i})"),
            ));
        }
        Self::new(n, terms)
    }

    /// Periodic transverse-field Ising chain in projector form:
    /// `H = -J sum_i (1 + Z_i Z_{i+1})/2 - h sum_i (1 + X_i)/2`. Terms per
    /// site, bond first, like `cnot_chain`. On two sites both bonds (0,1)
    /// and (1,0) are present.
    pub fn tfi_chain(n: usize, field: f64, bond: f64) -> Result<Self, Error> {
        check_chain_couplings(n, field, bond)?;
        let mut terms = Vec::with_capacity(2 * n);
        for i in 0..n {
            let j = (i + 1) % n;
            terms.push(OperatorTerm::new(
                TermKind::Projector(PauliString::from_supports(n, &[], &[i, j], Sign::Plus)),
                bond,
                format!("PiZZ({i},{j})"),
            ));
            terms.push(OperatorTerm::new(
                TermKind::Projector(PauliString::single_x(n, i)),
                field,
                format!("PiX({i})"),
            ));
        }
        Self::new(n, terms)
    }

    /// Star and plaquette projectors of a Z2 lattice gauge theory on the
    /// edges of a periodic `lx x ly` square lattice (2*lx*ly qubits).
    ///
    /// Edge indexing is row-major with horizontal edges first: the edge
    /// pointing right from vertex (x, y) has index `y*lx + x`, the edge
    /// pointing up has index `lx*ly + y*lx + x`. The star at vertex (x, y)
    /// applies `(1 + XXXX)/2` on its four incident edges, the plaquette with
    /// lower-left corner (x, y) applies `(1 + ZZZZ)/2` on its boundary.
    /// All stars come first, row-major, then all plaquettes.
    pub fn z2_plaquette(
        lx: usize,
        ly: usize,
        star_coupling: f64,
        plaquette_coupling: f64,
    ) -> Result<Self, Error> {
        if lx < 2 || ly < 2 {
            return Err(Error::LatticeTooSmall { lx, ly });
        }
        if !(star_coupling > 0.0 && star_coupling.is_finite()) {
            return Err(Error::InvalidCoupling {
                name: "star coupling",
                value: star_coupling,
            });
        }
        if !(plaquette_coupling > 0.0 && plaquette_coupling.is_finite()) {
            return Err(Error::InvalidCoupling {
                name: "plaquette coupling",
                value: plaquette_coupling,
            });
        }
        let n = 2 * lx * ly;
        let horizontal = |x: usize, y: usize| y * lx + x;
        let vertical = |x: usize, y: usize| lx * ly + y * lx + x;
        let mut terms = Vec::with_capacity(2 * lx * ly);
        for y in 0..ly {
            for x in 0..lx {
                let edges = [
                    horizontal(x, y),
                    horizontal((x + lx - 1) % lx, y),
                    vertical(x, y),
                    vertical(x, (y + ly - 1) % ly),
                ];
                terms.push(OperatorTerm::new(
                    TermKind::Projector(PauliString::from_supports(n, &edges, &[], Sign::Plus)),
                    star_coupling,
                    format!("Star({x},{y})"),
                ));
            }
        }
        for y in 0..ly {
            for x in 0..lx {
                let edges = [
                    horizontal(x, y),
                    horizontal(x, (y + 1) % ly),
                    vertical(x, y),
                    vertical((x + 1) % lx, y),
                ];
                terms.push(OperatorTerm::new(
                    TermKind::Projector(PauliString::from_supports(n, &[], &edges, Sign::Plus)),
                    plaquette_coupling,
                    format!("Plaq({x},{y})"),
                ));
            }
        }
        Self::new(n, terms)
    }
}

fn check_chain_couplings(n: usize, field: f64, bond: f64) -> Result<(), Error> {
    if n < 2 {
        return Err(Error::ChainTooShort { n });
    }
    // h >= 0 and J > 0 keep every weight non-negative.
    if !(field >= 0.0 && field.is_finite()) {
        return Err(Error::InvalidCoupling {
            name: "field h",
            value: field,
        });
    }
    if !(bond > 0.0 && bond.is_finite()) {
        return Err(Error::InvalidCoupling {
            name: "bond J",
            value: bond,
        });
    }
    Ok(())
}

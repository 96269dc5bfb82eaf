//! Signed Pauli strings in X-then-Z normal order.
//!
//! A `PauliString` represents `sign * prod_n X_n^{x[n]} Z_n^{z[n]}` with
//! `sign` in {+1, -1}. Keeping every operator in this real normal form is
//! enough for the gate set used here (CX conjugation and projectors
//! `(1 + g)/2` with `g` squaring to +1); no imaginary phases ever appear.

use core::fmt;
use core::ops::Mul;

use crate::error::Error;
use crate::gf2::BitVec;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `Minus` when the parity bit is set.
    #[inline]
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    #[inline]
    pub fn is_negative(self) -> bool {
        matches!(self, Sign::Minus)
    }

    #[inline]
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    #[inline]
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)] // sign product is a parity
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self.is_negative() ^ rhs.is_negative())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PauliString {
    x: BitVec,
    z: BitVec,
    sign: Sign,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        Self {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
            sign: Sign::Plus,
        }
    }

    /// `+X_site` on `n` qubits.
    pub fn single_x(n: usize, site: usize) -> Self {
        Self::from_supports(n, &[site], &[], Sign::Plus)
    }

    /// `+Z_site` on `n` qubits.
    pub fn single_z(n: usize, site: usize) -> Self {
        Self::from_supports(n, &[], &[site], Sign::Plus)
    }

    pub fn from_supports(n: usize, x_sites: &[usize], z_sites: &[usize], sign: Sign) -> Self {
        Self {
            x: BitVec::from_ones(n, x_sites),
            z: BitVec::from_ones(n, z_sites),
            sign,
        }
    }

    pub fn from_masks(x: BitVec, z: BitVec, sign: Sign) -> Result<Self, Error> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                found: z.len(),
            });
        }
        Ok(Self { x, z, sign })
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn x_mask(&self) -> &BitVec {
        &self.x
    }

    #[inline]
    pub fn z_mask(&self) -> &BitVec {
        &self.z
    }

    #[inline]
    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn is_identity_up_to_sign(&self) -> bool {
        !self.x.any() && !self.z.any()
    }

    /// The X and Z supports overlap on an even number of sites, i.e. the
    /// operator squares to +1.
    #[inline]
    pub fn squares_to_plus_one(&self) -> bool {
        !self.x.dot(&self.z)
    }

    /// Symplectic commutation test.
    #[inline]
    pub fn commutes_with(&self, other: &PauliString) -> bool {
        !(self.x.dot(&other.z) ^ self.z.dot(&other.x))
    }

    #[inline]
    pub fn anticommutes_with(&self, other: &PauliString) -> bool {
        !self.commutes_with(other)
    }

    /// Product `self * other`, renormalized to X-then-Z order.
    ///
    /// The sign picks up `(-1)^rho` with `rho = self.z . other.x`: one flip
    /// for every site where a Z from the left factor crosses an X from the
    /// right factor (ZX = -XZ).
    pub fn multiply(&self, other: &PauliString) -> PauliString {
        let mut out = other.clone();
        out.premultiply(self);
        out
    }

    /// In-place `self <- left * self`.
    #[inline]
    pub fn premultiply(&mut self, left: &PauliString) {
        let crossings = left.z.dot(&self.x);
        self.sign =
            Sign::from_parity(left.sign.is_negative() ^ self.sign.is_negative() ^ crossings);
        self.x.xor_assign(&left.x);
        self.z.xor_assign(&left.z);
    }

    /// Overwrite with the contents of `other` (same width), reusing buffers.
    pub fn copy_from(&mut self, other: &PauliString) {
        self.x.copy_from(&other.x);
        self.z.copy_from(&other.z);
        self.sign = other.sign;
    }

    pub(crate) fn set_sign(&mut self, sign: Sign) {
        self.sign = sign;
    }

    // Raw mask access for the tableau updates in `stabilizer`.
    #[inline]
    pub(crate) fn x_mask_mut(&mut self) -> &mut BitVec {
        &mut self.x
    }

    #[inline]
    pub(crate) fn z_mask_mut(&mut self) -> &mut BitVec {
        &mut self.z
    }
}

impl Mul for &PauliString {
    type Output = PauliString;
    fn mul(self, rhs: &PauliString) -> PauliString {
        self.multiply(rhs)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sign)?;
        let mut trivial = true;
        for i in 0..self.n_qubits() {
            match (self.x.get(i), self.z.get(i)) {
                (false, false) => {}
                (true, false) => {
                    write!(f, "X{i}")?;
                    trivial = false;
                }
                (false, true) => {
                    write!(f, "Z{i}")?;
                    trivial = false;
                }
                (true, true) => {
                    write!(f, "X{i}Z{i}")?;
                    trivial = false;
                }
            }
        }
        if trivial {
            write!(f, "1")?;
        }
        Ok(())
    }
}

//! Constant Dirac structures: maximal isotropic subspaces of R^n + R^n*.
//!
//! Coordinate convention: elements of R^n + R^n* are coordinate columns
//! (X; xi); a `DiracStructure` stores basis-vector transposes as rows of an
//! n x 2n matrix [A | B] in canonical RREF, with A the X-block and B the
//! xi-block. Under this convention the graph of a Poisson matrix Pi,
//! {(Pi xi, xi)}, has basis matrix [Pi^t | I] = [-Pi | I].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Rat, RationalMatrix, Subspace};
use num::Zero;

/// An n-dimensional maximal isotropic subspace of Q^n + Q^n*, canonically
/// represented by the RREF of its basis matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiracStructure {
    n: usize,
    basis: RationalMatrix,
}

/// Parity of the nullity: the connected-component label of the space of
/// Dirac structures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Characteristic subspace C(Gamma) = Gamma intersect (R^n + 0), its
/// dimension (the nullity) and the parity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacteristicData {
    pub characteristic: Subspace,
    pub nullity: usize,
    pub parity: Parity,
}

/// The symmetric pairing 1/2 (<xi1, X2> + <xi2, X1>) on R^n + R^n*.
pub fn pairing(v: &[Rat], w: &[Rat]) -> Result<Rat> {
    if v.len() != w.len() || !v.len().is_multiple_of(2) {
        return Err(Error::DimensionMismatch(
            "pairing needs two vectors of the same even length".into(),
        ));
    }
    let n = v.len() / 2;
    let mut acc = Rat::zero();
    for i in 0..n {
        acc += &v[n + i] * &w[i] + &w[n + i] * &v[i];
    }
    Ok(acc / crate::exact::rat_int(2))
}

impl DiracStructure {
    /// Validate an n x 2n spanning matrix and canonicalize it.
    ///
    /// Fails with `NotMaximal` when the rows are dependent and with
    /// `NotIsotropic` when A*B^t + B*A^t != 0 for the blocks [A | B].
    pub fn from_basis(rows: &RationalMatrix) -> Result<Self> {
        if !rows.cols().is_multiple_of(2) || rows.rows() * 2 != rows.cols() {
            return Err(Error::DimensionMismatch(format!(
                "expected an n x 2n basis matrix, got {}x{}",
                rows.rows(),
                rows.cols()
            )));
        }
        let n = rows.rows();
        let (canonical, pivots) = rows.rref();
        if pivots.len() < n {
            return Err(Error::NotMaximal);
        }
        let a = canonical.block(0, 0, n, n);
        let b = canonical.block(0, n, n, n);
        let sym = a.mul(&b.transpose()).add(&b.mul(&a.transpose()));
        if !sym.is_zero() {
            return Err(Error::NotIsotropic);
        }
        Ok(DiracStructure { n, basis: canonical })
    }

    /// Graph of a Poisson matrix: {(Pi xi, xi)}, basis [-Pi | I].
    pub fn graph_poisson(pi: &RationalMatrix) -> Result<Self> {
        if !pi.is_skew() {
            return Err(Error::NotSkew);
        }
        let n = pi.rows();
        let basis = pi.neg().hstack(&RationalMatrix::identity(n));
        Self::from_basis(&basis)
    }

    /// Graph of a 2-form: {(X, bX)}, basis [I | -b].
    pub fn graph_two_form(b: &RationalMatrix) -> Result<Self> {
        if !b.is_skew() {
            return Err(Error::NotSkew);
        }
        let n = b.rows();
        let basis = RationalMatrix::identity(n).hstack(&b.neg());
        Self::from_basis(&basis)
    }

    /// The foliation structure F + F°, where F° is the annihilator of F.
    pub fn foliation(f: &Subspace) -> Self {
        let n = f.ambient_dim();
        let k = f.dim();
        let ann = f.annihilator();
        let top = f.basis().hstack(&RationalMatrix::zeros(k, n));
        let bottom = RationalMatrix::zeros(n - k, n).hstack(ann.basis());
        Self::from_basis(&top.vstack(&bottom)).expect("F + F° is always maximal isotropic")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Canonical RREF basis matrix, n x 2n.
    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    /// X-block of the canonical basis (first n columns).
    pub fn x_block(&self) -> RationalMatrix {
        self.basis.block(0, 0, self.n, self.n)
    }

    /// xi-block of the canonical basis (last n columns).
    pub fn xi_block(&self) -> RationalMatrix {
        self.basis.block(0, self.n, self.n, self.n)
    }

    /// Characteristic data: C(Gamma) = {c·A : c·B = 0}, nullity, parity.
    pub fn characteristic(&self) -> CharacteristicData {
        // left kernel of the xi-block
        let left_kernel = self.xi_block().transpose().kernel();
        let c_rows = left_kernel.basis().mul(&self.x_block());
        let characteristic = Subspace::from_rows(self.n, c_rows);
        let nullity = characteristic.dim();
        CharacteristicData {
            characteristic,
            nullity,
            parity: if nullity.is_multiple_of(2) { Parity::Even } else { Parity::Odd },
        }
    }

    pub fn nullity(&self) -> usize {
        self.characteristic().nullity
    }

    pub fn parity(&self) -> Parity {
        self.characteristic().parity
    }

    /// Projection p_*(Gamma), the row span of the xi-block.
    pub fn p_star(&self) -> Subspace {
        Subspace::from_rows(self.n, self.xi_block())
    }

    /// Row spans coincide iff the canonical bases are identical.
    pub fn equals(&self, other: &DiracStructure) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "cannot compare structures with n={} and n={}",
                self.n, other.n
            )));
        }
        Ok(self.basis == other.basis)
    }
}

impl Serialize for DiracStructure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("DiracStructure", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("basis", &self.basis)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for DiracStructure {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            basis: RationalMatrix,
        }
        let raw = Raw::deserialize(d)?;
        if raw.basis.rows() != raw.n || raw.basis.cols() != 2 * raw.n {
            return Err(serde::de::Error::custom(format!(
                "basis must be {} x {}",
                raw.n,
                2 * raw.n
            )));
        }
        DiracStructure::from_basis(&raw.basis).map_err(serde::de::Error::custom)
    }
}

//! Elements of O(n,n) preserving the split pairing, their generators
//! sigma_I, rho(A), nu(N), the action on Dirac structures, and the
//! fractional-linear action on Poisson matrices.
//!
//! Orthogonality is tested against J = [[0, I], [I, 0]], the Gram matrix of
//! twice the pairing, so the test is integer-exact on integral elements.

use serde::{Deserialize, Serialize};

use crate::dirac::DiracStructure;
use crate::error::{Error, Result};
use crate::exact::{IntegerMatrix, Rat, RationalMatrix};
use num::One;

/// A 2n x 2n rational matrix with g^t J g = J, in block form [[A, B], [C, D]].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    n: usize,
    matrix: RationalMatrix,
    integral: bool,
}

fn form_gram(n: usize) -> RationalMatrix {
    let id = RationalMatrix::identity(n);
    let z = RationalMatrix::zeros(n, n);
    z.hstack(&id).vstack(&id.hstack(&z))
}

impl GroupElement {
    /// Validate a 2n x 2n matrix as an isometry of the split pairing.
    pub fn from_matrix(m: &RationalMatrix, n: usize) -> Result<Self> {
        if m.rows() != 2 * n || m.cols() != 2 * n {
            return Err(Error::DimensionMismatch(format!(
                "expected a {0}x{0} matrix, got {1}x{2}",
                2 * n,
                m.rows(),
                m.cols()
            )));
        }
        let j = form_gram(n);
        if m.transpose().mul(&j).mul(m) != j {
            return Err(Error::NotOrthogonal);
        }
        Ok(GroupElement {
            n,
            integral: m.is_integral(),
            matrix: m.clone(),
        })
    }

    pub fn identity(n: usize) -> Self {
        GroupElement {
            n,
            matrix: RationalMatrix::identity(2 * n),
            integral: true,
        }
    }

    /// The involution exchanging e_i with f_i for every i in `i_set`
    /// (1-based indices).
    pub fn sigma(i_set: &[usize], n: usize) -> Result<Self> {
        let mut m = RationalMatrix::identity(2 * n);
        for &i in i_set {
            if i < 1 || i > n {
                return Err(Error::IndexOutOfRange(format!(
                    "sigma index {i} not in 1..={n}"
                )));
            }
            let i = i - 1;
            m[(i, i)] = Rat::from_integer(0.into());
            m[(n + i, n + i)] = Rat::from_integer(0.into());
            m[(i, n + i)] = Rat::one();
            m[(n + i, i)] = Rat::one();
        }
        Self::from_matrix(&m, n)
    }

    /// Block-diagonal element diag(A, (A^t)^{-1}) for A in GL(n, Z).
    pub fn rho(a: &IntegerMatrix) -> Result<Self> {
        if !a.is_unimodular() {
            return Err(Error::NotUnimodular);
        }
        let n = a.rows();
        let ar = a.to_rational();
        let at_inv = ar.transpose().invert().expect("unimodular is invertible");
        let z = RationalMatrix::zeros(n, n);
        let m = ar.hstack(&z).vstack(&z.hstack(&at_inv));
        Self::from_matrix(&m, n)
    }

    /// Shear [[I, N], [0, I]] for integer skew N; adds N under the
    /// fractional-linear action.
    pub fn nu(n_mat: &IntegerMatrix) -> Result<Self> {
        if !n_mat.is_skew() {
            return Err(Error::NotSkew);
        }
        let n = n_mat.rows();
        let id = RationalMatrix::identity(n);
        let z = RationalMatrix::zeros(n, n);
        let m = id.hstack(&n_mat.to_rational()).vstack(&z.hstack(&id));
        Self::from_matrix(&m, n)
    }

    /// The elementary shear nu(N) with N_ji = +1, N_ij = -1 (1-based, i < j):
    /// maps f_i to e_j, f_j to -e_i, and fixes all e_k.
    pub fn nu_elementary(i: usize, j: usize, n: usize) -> Result<Self> {
        if i < 1 || j <= i || j > n {
            return Err(Error::IndexOutOfRange(format!(
                "need 1 <= i < j <= n, got i={i}, j={j}, n={n}"
            )));
        }
        let mut nm = IntegerMatrix::zeros(n, n);
        nm[(j - 1, i - 1)] = 1.into();
        nm[(i - 1, j - 1)] = (-1).into();
        Self::nu(&nm)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn is_integral(&self) -> bool {
        self.integral
    }

    pub fn block_a(&self) -> RationalMatrix {
        self.matrix.block(0, 0, self.n, self.n)
    }

    pub fn block_b(&self) -> RationalMatrix {
        self.matrix.block(0, self.n, self.n, self.n)
    }

    pub fn block_c(&self) -> RationalMatrix {
        self.matrix.block(self.n, 0, self.n, self.n)
    }

    pub fn block_d(&self) -> RationalMatrix {
        self.matrix.block(self.n, self.n, self.n, self.n)
    }

    pub fn det(&self) -> Rat {
        self.matrix.det()
    }

    /// det = +1, i.e. membership in SO(n,n).
    pub fn is_special(&self) -> bool {
        self.det() == Rat::one()
    }

    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose elements with n={} and n={}",
                self.n, other.n
            )));
        }
        Self::from_matrix(&self.matrix.mul(&other.matrix), self.n)
    }

    pub fn inverse(&self) -> GroupElement {
        let inv = self
            .matrix
            .invert()
            .expect("group elements are invertible");
        Self::from_matrix(&inv, self.n).expect("inverse preserves the form")
    }

    /// Transform a Dirac structure: basis rows are transposed column
    /// vectors, so the new basis is B * g^t, then canonicalized.
    pub fn act(&self, gamma: &DiracStructure) -> Result<DiracStructure> {
        if self.n != gamma.n() {
            return Err(Error::DimensionMismatch(format!(
                "group element has n={}, structure has n={}",
                self.n,
                gamma.n()
            )));
        }
        let rows = gamma.basis().mul(&self.matrix.transpose());
        DiracStructure::from_basis(&rows)
    }

    /// Fractional-linear action (A Pi + B)(C Pi + D)^{-1} on skew matrices;
    /// fails with `SingularDenominator` exactly when C Pi + D is singular.
    pub fn frac_linear(&self, pi: &RationalMatrix) -> Result<RationalMatrix> {
        if !pi.is_skew() {
            return Err(Error::NotSkew);
        }
        if pi.rows() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "Pi is {}x{}, expected {0}x{0} with n={}",
                pi.rows(),
                pi.cols(),
                self.n
            )));
        }
        let den = self.block_c().mul(pi).add(&self.block_d());
        let den_inv = den.invert().map_err(|_| Error::SingularDenominator)?;
        let out = self.block_a().mul(pi).add(&self.block_b()).mul(&den_inv);
        assert!(out.is_skew(), "fractional-linear image must be skew");
        Ok(out)
    }
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GroupElement", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("matrix", &self.matrix)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            matrix: RationalMatrix,
        }
        let raw = Raw::deserialize(d)?;
        GroupElement::from_matrix(&raw.matrix, raw.n).map_err(serde::de::Error::custom)
    }
}

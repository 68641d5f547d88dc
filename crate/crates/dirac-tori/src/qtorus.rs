//! Desk-scale quantization: the exact-phase star product on finite Fourier
//! polynomials, commutation data of the crossed-product generators, finite
//! clock-and-shift representations, and quantization descriptors.
//!
//! Phases are carried exactly as rationals mod 2 (units e^{pi i q}) and
//! converted to complex numbers only at output, so all algebraic identities
//! hold exactly for rational Poisson matrices; floating error enters only
//! in final coefficients.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num::complex::Complex64;
use num::{Integer as _, Zero};
use serde::{Deserialize, Serialize};

use crate::dirac::{DiracStructure, Parity};
use crate::error::{Error, Result};
use crate::exact::{Int, Rat, RationalMatrix};
use crate::poissonize::{find_transversal, matrix_mod1, to_poisson};

/// Coefficients smaller than this are dropped from star products.
const COEFF_DROP: f64 = 1e-15;

/// A skew-symmetric rational n x n matrix, the commutation data of a
/// quantum torus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PoissonMatrix {
    n: usize,
    entries: RationalMatrix,
}

impl PoissonMatrix {
    pub fn new(entries: RationalMatrix) -> Result<Self> {
        if !entries.is_skew() {
            return Err(Error::NotSkew);
        }
        Ok(PoissonMatrix {
            n: entries.rows(),
            entries,
        })
    }

    pub fn zero(n: usize) -> Self {
        PoissonMatrix {
            n,
            entries: RationalMatrix::zeros(n, n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.entries
    }

    /// The bilinear form Pi(r, s) = sum_jk Pi_jk r_j s_k, exactly.
    pub fn form(&self, r: &[i64], s: &[i64]) -> Rat {
        let mut acc = Rat::zero();
        for (j, &rj) in r.iter().enumerate().filter(|(_, &rj)| rj != 0) {
            let rj = Rat::from_integer(Int::from(rj));
            for (k, &sk) in s.iter().enumerate().filter(|(_, &sk)| sk != 0) {
                acc += &self.entries[(j, k)] * &rj * Rat::from_integer(Int::from(sk));
            }
        }
        acc
    }
}

/// A unit complex number e^{pi i q} with q an exact rational in [0, 2).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactPhase {
    value: Rat,
}

impl ExactPhase {
    /// Reduce q mod 2 into [0, 2).
    pub fn new(q: Rat) -> Self {
        let two = Rat::from_integer(Int::from(2));
        let k = (&q / &two).floor();
        ExactPhase {
            value: q - k * two,
        }
    }

    pub fn zero() -> Self {
        ExactPhase { value: Rat::zero() }
    }

    pub fn value(&self) -> &Rat {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn add(&self, other: &ExactPhase) -> ExactPhase {
        ExactPhase::new(&self.value + &other.value)
    }

    pub fn neg(&self) -> ExactPhase {
        ExactPhase::new(-self.value.clone())
    }

    pub fn to_complex(&self) -> Complex64 {
        use num::ToPrimitive;
        let angle = PI * self.value.to_f64().unwrap_or(f64::NAN);
        Complex64::new(angle.cos(), angle.sin())
    }
}

/// A finitely supported map from Z^n multi-indices to complex coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierPolynomial {
    n: usize,
    terms: BTreeMap<Vec<i64>, Complex64>,
}

impl FourierPolynomial {
    pub fn zero(n: usize) -> Self {
        FourierPolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The basis monomial e_r.
    pub fn monomial(r: Vec<i64>) -> Self {
        let n = r.len();
        let mut terms = BTreeMap::new();
        terms.insert(r, Complex64::new(1.0, 0.0));
        FourierPolynomial { n, terms }
    }

    /// The unit e_0.
    pub fn unit(n: usize) -> Self {
        Self::monomial(vec![0; n])
    }

    /// The generator epsilon_i = e_{f_i} (1-based).
    pub fn generator(i: usize, n: usize) -> Result<Self> {
        if i < 1 || i > n {
            return Err(Error::IndexOutOfRange(format!(
                "generator index {i} not in 1..={n}"
            )));
        }
        let mut r = vec![0i64; n];
        r[i - 1] = 1;
        Ok(Self::monomial(r))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Complex64> {
        &self.terms
    }

    pub fn insert(&mut self, r: Vec<i64>, coeff: Complex64) {
        assert_eq!(r.len(), self.n);
        if coeff.norm() >= COEFF_DROP {
            let entry = self.terms.entry(r).or_insert(Complex64::new(0.0, 0.0));
            *entry += coeff;
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(r, v)| (r.clone(), v * c))
            .collect();
        FourierPolynomial { n: self.n, terms }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (r, c) in &other.terms {
            *out.terms.entry(r.clone()).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        out.prune();
        out
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() >= COEFF_DROP);
    }

    /// Max coefficient-wise distance to another polynomial.
    pub fn distance(&self, other: &Self) -> f64 {
        let mut keys: std::collections::BTreeSet<&Vec<i64>> = self.terms.keys().collect();
        keys.extend(other.terms.keys());
        keys.into_iter()
            .map(|k| {
                let a = self.terms.get(k).copied().unwrap_or(Complex64::new(0.0, 0.0));
                let b = other.terms.get(k).copied().unwrap_or(Complex64::new(0.0, 0.0));
                (a - b).norm()
            })
            .fold(0.0, f64::max)
    }
}

impl Serialize for FourierPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct TermRepr<'a> {
            r: &'a [i64],
            re: f64,
            im: f64,
        }
        use serde::ser::SerializeStruct;
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(r, c)| TermRepr {
                r,
                re: c.re,
                im: c.im,
            })
            .collect();
        let mut st = s.serialize_struct("FourierPolynomial", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for FourierPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct TermRepr {
            r: Vec<i64>,
            re: f64,
            im: f64,
        }
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            terms: Vec<TermRepr>,
        }
        let raw = Raw::deserialize(d)?;
        let mut out = FourierPolynomial::zero(raw.n);
        for t in raw.terms {
            if t.r.len() != raw.n {
                return Err(serde::de::Error::custom("multi-index length must equal n"));
            }
            out.insert(t.r, Complex64::new(t.re, t.im));
        }
        Ok(out)
    }
}

/// The star product: bilinear extension of
/// e_r * e_s = e^{-pi i hbar Pi(r,s)} e_{r+s}, with the phase exponent
/// computed exactly in rationals.
pub fn star(
    f: &FourierPolynomial,
    g: &FourierPolynomial,
    pi: &PoissonMatrix,
    hbar: &Rat,
) -> Result<FourierPolynomial> {
    if f.n() != pi.n() || g.n() != pi.n() {
        return Err(Error::DimensionMismatch(format!(
            "operands have n={} and n={}, Pi has n={}",
            f.n(),
            g.n(),
            pi.n()
        )));
    }
    let mut out = FourierPolynomial::zero(pi.n());
    for (r, cr) in f.terms() {
        for (s, cs) in g.terms() {
            let exponent = -hbar * pi.form(r, s);
            let phase = ExactPhase::new(exponent);
            let sum: Vec<i64> = r.iter().zip(s).map(|(a, b)| a + b).collect();
            out.insert(sum, cr * cs * phase.to_complex());
        }
    }
    out.prune();
    Ok(out)
}

/// Exact phase rho with epsilon_j epsilon_i = e^{pi i rho} epsilon_i
/// epsilon_j, derived from the star product: rho = 2 hbar Pi_ij mod 2.
pub fn commutator_ratio(pi: &PoissonMatrix, i: usize, j: usize, hbar: &Rat) -> Result<ExactPhase> {
    if i < 1 || i > pi.n() || j < 1 || j > pi.n() {
        return Err(Error::IndexOutOfRange(format!(
            "indices ({i}, {j}) not in 1..={}",
            pi.n()
        )));
    }
    let two = Rat::from_integer(Int::from(2));
    Ok(ExactPhase::new(
        two * hbar * &pi.matrix()[(i - 1, j - 1)],
    ))
}

/// Commutation data of the n unitary generators of the crossed-product
/// presentation: exactly to_poisson(Gamma, I).
pub fn commutation_matrix(gamma: &DiracStructure, i_set: &[usize]) -> Result<PoissonMatrix> {
    PoissonMatrix::new(to_poisson(gamma, i_set)?)
}

/// Finite clock-and-shift pair: U = diag(omega^0, ..., omega^{q-1}),
/// V the cyclic shift, with V U = e^{-2 pi i p/q} U V.
#[derive(Debug, Clone, Serialize)]
pub struct ClockShiftRep {
    pub p: i64,
    pub q: i64,
    pub u: Vec<Vec<(f64, f64)>>,
    pub v: Vec<Vec<(f64, f64)>>,
}

fn to_complex_matrix(m: &[Vec<(f64, f64)>]) -> Vec<Vec<Complex64>> {
    m.iter()
        .map(|row| row.iter().map(|&(re, im)| Complex64::new(re, im)).collect())
        .collect()
}

fn mat_mul(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let n = a.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn max_abs_diff(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for (ra, rb) in a.iter().zip(b) {
        for (x, y) in ra.iter().zip(rb) {
            worst = worst.max((x - y).norm());
        }
    }
    worst
}

impl ClockShiftRep {
    pub fn u_matrix(&self) -> Vec<Vec<Complex64>> {
        to_complex_matrix(&self.u)
    }

    pub fn v_matrix(&self) -> Vec<Vec<Complex64>> {
        to_complex_matrix(&self.v)
    }

    /// Max-norm residual of V U - e^{-2 pi i p/q} U V.
    pub fn relation_residual(&self) -> f64 {
        let u = self.u_matrix();
        let v = self.v_matrix();
        let vu = mat_mul(&v, &u);
        let scalar = Complex64::from_polar(1.0, -2.0 * PI * self.p as f64 / self.q as f64);
        let uv = mat_mul(&u, &v);
        let scaled: Vec<Vec<Complex64>> = uv
            .iter()
            .map(|row| row.iter().map(|x| scalar * x).collect())
            .collect();
        max_abs_diff(&vu, &scaled)
    }

    /// Max-norm residual of M^* M - I for M in {U, V}.
    pub fn unitarity_residual(&self) -> f64 {
        let check = |m: &[Vec<Complex64>]| {
            let n = m.len();
            let adj: Vec<Vec<Complex64>> = (0..n)
                .map(|i| (0..n).map(|j| m[j][i].conj()).collect())
                .collect();
            let prod = mat_mul(&adj, m);
            let id: Vec<Vec<Complex64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                        .collect()
                })
                .collect();
            max_abs_diff(&prod, &id)
        };
        check(&self.u_matrix()).max(check(&self.v_matrix()))
    }
}

/// Build the q x q clock-and-shift pair for the rational angle p/q.
pub fn clock_shift(p: i64, q: i64) -> Result<ClockShiftRep> {
    if q < 1 {
        return Err(Error::BadInput("q must be >= 1".into()));
    }
    if p.abs().gcd(&q) != 1 {
        return Err(Error::NotCoprime);
    }
    let qq = q as usize;
    let mut u = vec![vec![(0.0, 0.0); qq]; qq];
    let mut v = vec![vec![(0.0, 0.0); qq]; qq];
    for k in 0..qq {
        let omega_k = Complex64::from_polar(1.0, 2.0 * PI * p as f64 * k as f64 / q as f64);
        u[k][k] = (omega_k.re, omega_k.im);
        v[(k + 1) % qq][k] = (1.0, 0.0);
    }
    Ok(ClockShiftRep { p, q, u, v })
}

/// A computable label for the quantization of Gamma: parity, nullity, and
/// the transverse Poisson matrix for the deterministic transversal, reduced
/// mod 1. This is a label, not a complete Morita invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuantizationDescriptor {
    pub parity: Parity,
    pub nullity: usize,
    pub theta_reduced: RationalMatrix,
}

pub fn descriptor(gamma: &DiracStructure) -> QuantizationDescriptor {
    let cd = gamma.characteristic();
    let choice = find_transversal(gamma);
    let theta = to_poisson(gamma, &choice.i_set)
        .expect("the pivot transversal always Poissonizes");
    QuantizationDescriptor {
        parity: cd.parity,
        nullity: cd.nullity,
        theta_reduced: matrix_mod1(&theta),
    }
}

//! Converting Dirac structures to Poisson matrices via sigma_I, and the
//! block data of the resulting crossed-product presentation: the transverse
//! Poisson structure on the coordinate transversal and the holonomy map.

use num::{Integer as _, One, Zero};
use serde::Serialize;

use crate::dirac::DiracStructure;
use crate::error::{Error, Result};
use crate::exact::{complete_to_unimodular, row_hnf, Int, IntegerMatrix, Rat, RationalMatrix, Subspace};
use crate::onn::GroupElement;

/// A coordinate transversal: I is the flipped index set (1-based),
/// I' its complement; `permutation` lists the 0-based coordinates with
/// I' first (ascending), then I (ascending), for block reads.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransversalChoice {
    pub i_set: Vec<usize>,
    pub i_prime: Vec<usize>,
    pub permutation: Vec<usize>,
}

impl TransversalChoice {
    pub fn new(i_set: Vec<usize>, n: usize) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        for &i in &i_set {
            if i < 1 || i > n {
                return Err(Error::IndexOutOfRange(format!(
                    "transversal index {i} not in 1..={n}"
                )));
            }
            if seen[i] {
                return Err(Error::BadInput(format!("duplicate index {i}")));
            }
            seen[i] = true;
        }
        let mut i_set = i_set;
        i_set.sort_unstable();
        let i_prime: Vec<usize> = (1..=n).filter(|i| !i_set.contains(i)).collect();
        let permutation: Vec<usize> = i_prime
            .iter()
            .chain(i_set.iter())
            .map(|&i| i - 1)
            .collect();
        Ok(TransversalChoice {
            i_set,
            i_prime,
            permutation,
        })
    }
}

/// Transverse Poisson block and holonomy data for a coordinate transversal.
///
/// With k = |I| and coordinates permuted so that I' comes first, the
/// Poisson matrix sigma_I(Gamma) takes the block form
/// [[pi_m, beta_block], [-beta_block^t, 0]] where beta_block equals the
/// holonomy matrix beta (the linear map R^I -> R^I' whose graph is
/// C(Gamma)).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitData {
    #[serde(rename = "I")]
    pub i_set: Vec<usize>,
    pub pi_m: RationalMatrix,
    pub beta: RationalMatrix,
    pub beta_mod1: RationalMatrix,
}

/// Deterministic transversal: I is the 1-based pivot-column set of the
/// canonical basis of C(Gamma), so |I| = N(Gamma) and R^I' is complementary
/// to C(Gamma).
pub fn find_transversal(gamma: &DiracStructure) -> TransversalChoice {
    let cd = gamma.characteristic();
    let i_set: Vec<usize> = cd
        .characteristic
        .pivot_columns()
        .into_iter()
        .map(|c| c + 1)
        .collect();
    TransversalChoice::new(i_set, gamma.n()).expect("pivot columns are valid indices")
}

/// Apply sigma_I and normalize to a Poisson matrix.
///
/// Fails with `NotPoisson` when sigma_I(Gamma) has positive nullity, which
/// certifies that R^I' is not complementary to C(Gamma).
pub fn to_poisson(gamma: &DiracStructure, i_set: &[usize]) -> Result<RationalMatrix> {
    let n = gamma.n();
    let sigma = GroupElement::sigma(i_set, n)?;
    let flipped = sigma.act(gamma)?;
    let b = flipped.xi_block();
    let b_inv = b.invert().map_err(|_| Error::NotPoisson)?;
    // basis [A | B] row-normalized to [B^-1 A | I] = [-Pi | I]
    let pi = b_inv.mul(&flipped.x_block()).neg();
    debug_assert!(pi.is_skew());
    debug_assert!(DiracStructure::graph_poisson(&pi)
        .unwrap()
        .equals(&flipped)
        .unwrap());
    Ok(pi)
}

/// Reduce every entry into the fundamental domain [0, 1).
pub fn matrix_mod1(m: &RationalMatrix) -> RationalMatrix {
    let mut out = m.clone();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let q = &m[(i, j)];
            let fl = q.numer().div_floor(q.denom());
            out[(i, j)] = q - Rat::from_integer(fl);
        }
    }
    out
}

/// Extract the transverse Poisson block and the holonomy map beta for the
/// coordinate transversal given by I.
pub fn split_blocks(gamma: &DiracStructure, i_set: &[usize]) -> Result<SplitData> {
    let n = gamma.n();
    let choice = TransversalChoice::new(i_set.to_vec(), n)?;
    let pi = to_poisson(gamma, &choice.i_set)?;
    let k = choice.i_set.len();
    let m = n - k;

    // beta directly from C(Gamma) as a graph over R^I
    let cd = gamma.characteristic();
    if cd.nullity != k {
        return Err(Error::NotPoisson);
    }
    let c_basis = cd.characteristic.basis();
    let i_cols: Vec<usize> = choice.i_set.iter().map(|&i| i - 1).collect();
    let ip_cols: Vec<usize> = choice.i_prime.iter().map(|&i| i - 1).collect();
    let rows: Vec<usize> = (0..k).collect();
    let c_i = c_basis.submatrix(&rows, &i_cols);
    let c_ip = c_basis.submatrix(&rows, &ip_cols);
    // each basis row c satisfies c_I' = beta * c_I, so beta = C_I'^t (C_I^t)^-1
    let beta = c_ip
        .transpose()
        .mul(&c_i.transpose().invert().map_err(|_| Error::NotPoisson)?);

    // blocks of Pi with I' coordinates first
    let perm = &choice.permutation;
    let pi_perm = pi.submatrix(perm, perm);
    let pi_m = pi_perm.block(0, 0, m, m);
    debug_assert!(pi_perm.block(m, m, k, k).is_zero());
    debug_assert_eq!(pi_perm.block(0, m, m, k), beta);

    Ok(SplitData {
        i_set: choice.i_set,
        pi_m,
        beta_mod1: matrix_mod1(&beta),
        beta,
    })
}

/// A change of coordinates in GL(n, Z) carrying the rational subspace `w`
/// onto the coordinate subspace spanned by the first dim(w) axes.
pub fn normalize_complement(w: &Subspace) -> Result<IntegerMatrix> {
    let n = w.ambient_dim();
    let k = w.dim();
    if k == 0 {
        return Ok(IntegerMatrix::identity(n));
    }
    // clear denominators to primitive integer rows
    let mut prim_rows: Vec<Vec<Int>> = Vec::with_capacity(k);
    for r in 0..k {
        let row = w.basis().row(r);
        let mut lcm = Int::one();
        for x in row {
            lcm = lcm.lcm(x.denom());
        }
        let mut ints: Vec<Int> = row
            .iter()
            .map(|x| x.numer() * (&lcm / x.denom()))
            .collect();
        let mut g = Int::zero();
        for v in &ints {
            g = g.gcd(v);
        }
        if !g.is_zero() && !g.is_one() {
            for v in &mut ints {
                *v = &*v / &g;
            }
        }
        prim_rows.push(ints);
    }
    let r = IntegerMatrix::new(k, n, prim_rows.into_iter().flatten().collect());

    // saturate: integer kernel of the rational orthogonal complement
    let kernel = r.to_rational().kernel();
    let mut v_rows: Vec<Vec<Int>> = Vec::new();
    for i in 0..kernel.dim() {
        let row = kernel.basis().row(i);
        let mut lcm = Int::one();
        for x in row {
            lcm = lcm.lcm(x.denom());
        }
        v_rows.push(row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect());
    }
    let v = IntegerMatrix::new(v_rows.len(), n, v_rows.into_iter().flatten().collect());
    let (h, u) = row_hnf(&v.transpose());
    let mut sat_rows: Vec<usize> = Vec::new();
    for i in 0..n {
        if (0..h.cols()).all(|j| h[(i, j)].is_zero()) {
            sat_rows.push(i);
        }
    }
    if sat_rows.len() != k {
        return Err(Error::NotSaturated);
    }
    let mut sat = IntegerMatrix::zeros(k, n);
    for (out_i, &i) in sat_rows.iter().enumerate() {
        for j in 0..n {
            sat[(out_i, j)] = u[(i, j)].clone();
        }
    }
    let completed = complete_to_unimodular(&sat)?;
    // A = (W^t)^-1 maps the row span of the first k rows of W onto span(e_1..e_k)
    let a = completed
        .transpose()
        .to_rational()
        .invert()
        .expect("unimodular completion is invertible")
        .to_integer()
        .expect("inverse of unimodular integer matrix is integral");
    Ok(a)
}

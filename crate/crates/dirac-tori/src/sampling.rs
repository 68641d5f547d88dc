//! Seeded random generators used by the test and verification batteries:
//! random skew rational matrices, random generator words, and random Dirac
//! structures obtained by pushing Poisson graphs around with short words.

use rand::Rng;

use crate::dirac::DiracStructure;
use crate::exact::{rat, IntegerMatrix, RationalMatrix};
use crate::onn::GroupElement;
use crate::word::{parse_word, Word};

/// Random skew rational n x n matrix with numerators and denominators
/// in [-9, 9].
pub fn random_skew(n: usize, rng: &mut impl Rng) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = rat(rng.gen_range(-9..=9), rng.gen_range(1..=9));
            m[(i, j)] = v.clone();
            m[(j, i)] = -v;
        }
    }
    m
}

/// Random integer skew matrix with entries in [-bound, bound].
pub fn random_integer_skew(n: usize, bound: i64, rng: &mut impl Rng) -> IntegerMatrix {
    let mut m = IntegerMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(-bound..=bound);
            m[(i, j)] = v.into();
            m[(j, i)] = (-v).into();
        }
    }
    m
}

fn random_term(n: usize, rng: &mut impl Rng) -> String {
    match rng.gen_range(0..5) {
        0 => {
            // sigma over a random index subset
            let idx: Vec<String> = (1..=n)
                .filter(|_| rng.gen_bool(0.5))
                .map(|i| i.to_string())
                .collect();
            format!("sigma{{{}}}", idx.join(","))
        }
        1 => {
            // transvection e_i -> e_i + e_j
            if n < 2 {
                return "rho[[-1]]".to_string();
            }
            let i = rng.gen_range(1..=n);
            let mut j = rng.gen_range(1..=n);
            while j == i {
                j = rng.gen_range(1..=n);
            }
            let mut a = IntegerMatrix::identity(n);
            a[(j - 1, i - 1)] = 1.into();
            int_label("rho", &a)
        }
        2 => {
            // permutation swap
            if n < 2 {
                return "rho[[1]]".to_string();
            }
            let i = rng.gen_range(1..n);
            let mut a = IntegerMatrix::identity(n);
            a[(i - 1, i - 1)] = 0.into();
            a[(i, i)] = 0.into();
            a[(i - 1, i)] = 1.into();
            a[(i, i - 1)] = 1.into();
            int_label("rho", &a)
        }
        3 => {
            // sign flip
            let i = rng.gen_range(1..=n);
            let mut a = IntegerMatrix::identity(n);
            a[(i - 1, i - 1)] = (-1).into();
            int_label("rho", &a)
        }
        _ => {
            // integer shear
            let nm = random_integer_skew(n, 2, rng);
            int_label("nu", &nm)
        }
    }
}

fn int_label(kind: &str, m: &IntegerMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let entries: Vec<String> = (0..m.cols()).map(|j| m[(i, j)].to_string()).collect();
            format!("[{}]", entries.join(","))
        })
        .collect();
    format!("{kind}[{}]", rows.join(","))
}

/// Random generator word of length up to `max_len`.
pub fn random_word(n: usize, max_len: usize, rng: &mut impl Rng) -> Word {
    let len = rng.gen_range(0..=max_len);
    let text: Vec<String> = (0..len).map(|_| random_term(n, rng)).collect();
    parse_word(&text.join(";")).expect("generated terms are well-formed")
}

/// Random integral group element, returned with the word producing it.
pub fn random_group_element(n: usize, max_len: usize, rng: &mut impl Rng) -> (Word, GroupElement) {
    let w = random_word(n, max_len, rng);
    let g = crate::word::eval_word(&w, n).expect("generated words evaluate");
    (w, g)
}

/// Random Dirac structure: a random word of length up to 6 applied to the
/// graph of a random skew matrix. The sigma terms reach both parities.
pub fn random_structure(n: usize, rng: &mut impl Rng) -> DiracStructure {
    let seed = DiracStructure::graph_poisson(&random_skew(n, rng))
        .expect("random skew matrices have valid graphs");
    let (_, g) = random_group_element(n, 6, rng);
    g.act(&seed).expect("group action preserves validity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirac::Parity;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_structures_are_valid_and_reach_both_parities() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut seen_even = false;
        let mut seen_odd = false;
        for _ in 0..60 {
            let n = rng.gen_range(1..=4);
            let g = random_structure(n, &mut rng);
            // re-validation through from_basis must succeed
            assert!(DiracStructure::from_basis(g.basis()).is_ok());
            match g.parity() {
                Parity::Even => seen_even = true,
                Parity::Odd => seen_odd = true,
            }
        }
        assert!(seen_even && seen_odd);
    }

    #[test]
    fn random_group_elements_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..40 {
            let n = rng.gen_range(1..=4);
            let (w, g) = random_group_element(n, 4, &mut rng);
            assert!(g.is_integral());
            assert_eq!(crate::word::eval_word(&w, n).unwrap(), g);
        }
    }
}

//! End-to-end acceptance battery. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails.

use std::process::Command;

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dirac_tori::dirac::{DiracStructure, Parity};
use dirac_tori::exact::{rat, rat_int, IntegerMatrix, Rat, RationalMatrix, Subspace};
use dirac_tori::onn::GroupElement;
use dirac_tori::orbit;
use dirac_tori::poissonize;
use dirac_tori::qtorus;
use dirac_tori::sampling;
use dirac_tori::word::{eval_word, parse_word};
use dirac_tori::Error;

type CheckResult = Result<(), String>;

fn check(cond: bool, msg: &str) -> CheckResult {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

/// Criterion 1: 500 random structures (n <= 5) are rank-n and exactly
/// isotropic; 100 perturbed bases fail validation.
fn c01_validation() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..500 {
        let n = rng.gen_range(1..=5);
        let g = sampling::random_structure(n, &mut rng);
        let basis = g.basis();
        check(basis.rank() == n, "basis rank below n")?;
        let a = basis.block(0, 0, n, n);
        let b = basis.block(0, n, n, n);
        let sym = a.mul(&b.transpose()).add(&b.mul(&a.transpose()));
        check(sym.is_zero(), "isotropy identity violated")?;
    }
    for t in 0..100 {
        let n = rng.gen_range(2..=5);
        let g = sampling::random_structure(n, &mut rng);
        // try random single-entry perturbations until one breaks validation
        let mut broke = false;
        for _ in 0..50 {
            let mut basis = g.basis().clone();
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..2 * n);
            basis[(i, j)] = &basis[(i, j)] + rat(rng.gen_range(1..=5), rng.gen_range(1..=3));
            if DiracStructure::from_basis(&basis).is_err() {
                broke = true;
                break;
            }
        }
        check(broke, &format!("perturbation case {t} never failed validation"))?;
    }
    Ok(())
}

/// Criterion 2: frac_linear and act agree through graph_poisson whenever the
/// denominator is invertible, 200 random cases.
fn c02_equivariance() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut invertible = 0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=4);
        let pi = sampling::random_skew(n, &mut rng);
        let (_, g) = sampling::random_group_element(n, 4, &mut rng);
        let graph = DiracStructure::graph_poisson(&pi).unwrap();
        match g.frac_linear(&pi) {
            Ok(image) => {
                invertible += 1;
                let via_graph = DiracStructure::graph_poisson(&image).unwrap();
                let via_act = g.act(&graph).unwrap();
                check(
                    via_graph.equals(&via_act).unwrap(),
                    "frac_linear and act disagree",
                )?;
            }
            Err(Error::SingularDenominator) => {}
            Err(e) => return Err(format!("unexpected error: {e}")),
        }
    }
    check(invertible >= 50, "too few invertible denominators sampled")
}

/// Criterion 3: p_*(Gamma) equals the annihilator of C(Gamma), 200 cases.
fn c03_projection() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for _ in 0..200 {
        let n = rng.gen_range(1..=5);
        let g = sampling::random_structure(n, &mut rng);
        let cd = g.characteristic();
        check(
            g.p_star() == cd.characteristic.annihilator(),
            "p_star differs from the annihilator of C",
        )?;
    }
    Ok(())
}

/// Criterion 4: parity preserved iff det g = +1; nullity-0 to nullity-0 maps
/// sampled here all have det +1.
fn c04_parity() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for _ in 0..200 {
        let n = rng.gen_range(1..=4);
        let gamma = sampling::random_structure(n, &mut rng);
        let (_, g) = sampling::random_group_element(n, 4, &mut rng);
        let image = g.act(&gamma).unwrap();
        check(
            (image.parity() == gamma.parity()) == g.is_special(),
            "parity preservation disagrees with det",
        )?;
        if gamma.nullity() == 0 && image.nullity() == 0 {
            check(g.is_special(), "Poisson-to-Poisson map with det -1")?;
        }
    }
    Ok(())
}

/// Criterion 5: sigma_i rho(A) sigma_i = nu_ij exactly, A the transvection
/// e_i -> e_i + e_j, for all 1 <= i < j <= n <= 5.
fn c05_conjugation() -> CheckResult {
    for n in 2..=5 {
        for i in 1..=n {
            for j in (i + 1)..=n {
                let mut a = IntegerMatrix::identity(n);
                a[(j - 1, i - 1)] = 1.into();
                let s = GroupElement::sigma(&[i], n).unwrap();
                let r = GroupElement::rho(&a).unwrap();
                let lhs = s.mul(&r).unwrap().mul(&s).unwrap();
                let rhs = GroupElement::nu_elementary(i, j, n).unwrap();
                check(
                    lhs == rhs,
                    &format!("sigma_{i} rho sigma_{i} != nu_{i}{j} at n={n}"),
                )?;
            }
        }
    }
    Ok(())
}

/// Criterion 6: sigma_I(Gamma) Poisson iff R^I' is complementary to C(Gamma)
/// when |I| = N(Gamma); Poisson-ness implies |I| >= N(Gamma). Exhaustive over
/// I subsets of {1,..,4} on 50 random structures.
fn c06_poissonization() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let n = 4;
    for _ in 0..50 {
        let gamma = sampling::random_structure(n, &mut rng);
        let c = gamma.characteristic().characteristic;
        let nullity = c.dim();
        for mask in 0u32..(1 << n) {
            let i_set: Vec<usize> = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            let i_prime: Vec<usize> = (0..n).filter(|c0| mask & (1 << c0) == 0).collect();
            let poisson = poissonize::to_poisson(&gamma, &i_set).is_ok();
            if poisson {
                check(i_set.len() >= nullity, "Poisson with |I| < N(Gamma)")?;
            }
            if i_set.len() == nullity {
                let complement = Subspace::coordinate(n, &i_prime);
                let complementary = c.intersects_trivially(&complement);
                check(
                    poisson == complementary,
                    "Poisson-ness disagrees with complementarity",
                )?;
            }
        }
    }
    Ok(())
}

/// Criterion 7: each sigma_i changes the nullity by exactly 1, 200 cases.
fn c07_nullity_step() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    for _ in 0..200 {
        let n = rng.gen_range(1..=4);
        let gamma = sampling::random_structure(n, &mut rng);
        let n0 = gamma.nullity() as i64;
        for i in 1..=n {
            let image = GroupElement::sigma(&[i], n).unwrap().act(&gamma).unwrap();
            check(
                (image.nullity() as i64 - n0).abs() == 1,
                "sigma_i nullity step != 1",
            )?;
        }
    }
    Ok(())
}

/// Criterion 8: graph of the commutation matrix equals sigma_I(Gamma); in
/// I'-first coordinates the I x I block vanishes and the I' x I block is the
/// holonomy beta. 100 random structures per parity.
fn c08_commutation_blocks() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let mut counts = [0usize; 2];
    while counts[0] < 100 || counts[1] < 100 {
        let n = rng.gen_range(1..=4);
        let gamma = sampling::random_structure(n, &mut rng);
        let slot = match gamma.parity() {
            Parity::Even => 0,
            Parity::Odd => 1,
        };
        if counts[slot] >= 100 {
            continue;
        }
        counts[slot] += 1;

        let choice = poissonize::find_transversal(&gamma);
        let pi = qtorus::commutation_matrix(&gamma, &choice.i_set)
            .map_err(|e| format!("commutation_matrix failed: {e}"))?;
        let graph = DiracStructure::graph_poisson(pi.matrix()).unwrap();
        let flipped = GroupElement::sigma(&choice.i_set, n)
            .unwrap()
            .act(&gamma)
            .unwrap();
        check(graph.equals(&flipped).unwrap(), "graph != sigma_I(Gamma)")?;

        let split = poissonize::split_blocks(&gamma, &choice.i_set)
            .map_err(|e| format!("split_blocks failed: {e}"))?;
        let k = choice.i_set.len();
        let m = n - k;
        let perm = &choice.permutation;
        let pi_perm = pi.matrix().submatrix(perm, perm);
        check(pi_perm.block(m, m, k, k).is_zero(), "I x I block nonzero")?;
        check(
            pi_perm.block(0, m, m, k) == split.beta,
            "I' x I block differs from beta",
        )?;
    }
    Ok(())
}

/// Criterion 9: sigma_1 composed with sigma_{I union 1} equals sigma_I for
/// every I not containing 1, n <= 5.
fn c09_sigma_cancellation() -> CheckResult {
    for n in 1..=5usize {
        let others: Vec<usize> = (2..=n).collect();
        for mask in 0u32..(1 << others.len()) {
            let i_set: Vec<usize> = others
                .iter()
                .enumerate()
                .filter(|(b, _)| mask & (1 << b) != 0)
                .map(|(_, &i)| i)
                .collect();
            let with_one: Vec<String> = std::iter::once(1)
                .chain(i_set.iter().copied())
                .map(|i| i.to_string())
                .collect();
            let plain: Vec<String> = i_set.iter().map(|i| i.to_string()).collect();
            let lhs_text = format!("sigma{{1}};sigma{{{}}}", with_one.join(","));
            let rhs_text = format!("sigma{{{}}}", plain.join(","));
            let lhs = eval_word(&parse_word(&lhs_text).unwrap(), n).unwrap();
            let rhs = eval_word(&parse_word(&rhs_text).unwrap(), n).unwrap();
            check(lhs == rhs, &format!("{lhs_text} != {rhs_text} at n={n}"))?;
        }
    }
    Ok(())
}

fn random_polynomial(n: usize, rng: &mut ChaCha8Rng) -> qtorus::FourierPolynomial {
    let mut f = qtorus::FourierPolynomial::zero(n);
    for _ in 0..rng.gen_range(1..=8) {
        let r: Vec<i64> = (0..n).map(|_| rng.gen_range(-4..=4)).collect();
        let coeff = num::Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        f.insert(r, coeff);
    }
    f
}

/// Criterion 10: star-product associativity to 1e-12 on 100 random triples;
/// exact unit; integer Pi gives zero commutator phase.
fn c10_star_product() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    for _ in 0..100 {
        let n = rng.gen_range(1..=3);
        let pi = qtorus::PoissonMatrix::new(sampling::random_skew(n, &mut rng)).unwrap();
        let hbar = rat(rng.gen_range(-6..=6), rng.gen_range(1..=6));
        let f = random_polynomial(n, &mut rng);
        let g = random_polynomial(n, &mut rng);
        let h = random_polynomial(n, &mut rng);
        let left = qtorus::star(&qtorus::star(&f, &g, &pi, &hbar).unwrap(), &h, &pi, &hbar).unwrap();
        let right =
            qtorus::star(&f, &qtorus::star(&g, &h, &pi, &hbar).unwrap(), &pi, &hbar).unwrap();
        check(
            left.distance(&right) < 1e-12,
            "associativity residual too large",
        )?;

        let unit = qtorus::FourierPolynomial::unit(n);
        let left_unit = qtorus::star(&unit, &f, &pi, &hbar).unwrap();
        let right_unit = qtorus::star(&f, &unit, &pi, &hbar).unwrap();
        check(
            left_unit.distance(&f) == 0.0 && right_unit.distance(&f) == 0.0,
            "e_0 is not an exact unit",
        )?;
    }
    for _ in 0..50 {
        let n = rng.gen_range(2..=4);
        let pi =
            qtorus::PoissonMatrix::new(sampling::random_integer_skew(n, 5, &mut rng).to_rational())
                .unwrap();
        let i = rng.gen_range(1..n);
        let j = rng.gen_range(i + 1..=n);
        let phase = qtorus::commutator_ratio(&pi, i, j, &rat_int(1)).unwrap();
        check(phase.is_zero(), "integer Pi commutator phase nonzero")?;
    }
    Ok(())
}

/// Criterion 11: the Rieffel n=2 desk checks.
fn c11_desk_check() -> CheckResult {
    let n = 2;
    let theta_graph = |t: Rat| {
        let mut m = RationalMatrix::zeros(n, n);
        m[(0, 1)] = t.clone();
        m[(1, 0)] = -t;
        DiracStructure::graph_poisson(&m).unwrap()
    };

    // theta = 1/2 -> theta = -2 via the full flip, depth 1
    let gens = orbit::default_generators(n);
    let w = orbit::connect(&theta_graph(rat(1, 2)), &theta_graph(rat_int(-2)), &gens, 1, 10_000)
        .map_err(|e| format!("connect(1/2 -> -2) failed: {e}"))?;
    check(w.to_string() == "sigma{1,2}", "expected witness sigma{1,2}")?;

    // graph(0) -> graph(N) at depth 3 through the conjugation identity
    let shift = GroupElement::nu_elementary(1, 2, n).unwrap();
    let target = shift.act(&theta_graph(Rat::zero())).unwrap();
    let gens = orbit::default_generators(n);
    let w = orbit::connect(&theta_graph(Rat::zero()), &target, &gens, 3, 10_000)
        .map_err(|e| format!("connect(0 -> N) failed: {e}"))?;
    check(
        w.to_string() == "sigma{1};rho[[1,0],[1,1]];sigma{1}",
        "expected the conjugated transvection witness",
    )?;

    // rho words fix 2x2 skew matrices: A Pi A^t = det(A) Pi
    let mut rng = ChaCha8Rng::seed_from_u64(111);
    for m in -3i64..=3 {
        for transpose in [false, true] {
            let mut a = IntegerMatrix::identity(n);
            if transpose {
                a[(0, 1)] = m.into();
            } else {
                a[(1, 0)] = m.into();
            }
            let r = GroupElement::rho(&a).unwrap();
            check(r.det().is_one(), "2x2 transvection should have det +1")?;
            for _ in 0..10 {
                let pi = sampling::random_skew(n, &mut rng);
                let image = r.frac_linear(&pi).unwrap();
                check(image == pi, "transvection moved a 2x2 Poisson matrix")?;
            }
        }
    }
    Ok(())
}

/// Criterion 12: clock-shift relation and unitarity to 1e-12 for all coprime
/// p, q with q <= 12.
fn c12_clock_shift() -> CheckResult {
    for q in 1..=12i64 {
        for p in 0..q.max(1) {
            if num::integer::gcd(p, q) != 1 {
                continue;
            }
            let rep = qtorus::clock_shift(p, q).unwrap();
            check(
                rep.relation_residual() < 1e-12,
                &format!("relation residual too large at p={p}, q={q}"),
            )?;
            check(
                rep.unitarity_residual() < 1e-12,
                &format!("unitarity residual too large at p={p}, q={q}"),
            )?;
        }
    }
    Ok(())
}

/// Criterion 13: the CLI exit-code table.
fn c13_cli_exit_codes() -> CheckResult {
    let bin = env!("CARGO_BIN_EXE_dirac-tori");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let write = |name: &str, contents: &str| {
        let path = dir.path().join(name);
        std::fs::write(&path, contents).unwrap();
        path.to_string_lossy().into_owned()
    };
    let kron = write("kron.json", r#"{"n": 2, "basis": [[3,1,0,0],[0,0,1,-3]]}"#);
    let zero_pi = write("zero.json", "[[0,0],[0,0]]");
    let not_dirac = write("notdirac.json", r#"{"n": 2, "basis": [[1,0,1,0],[0,1,0,1]]}"#);
    let bad_dim = write("baddim.json", r#"{"n": 2, "basis": [[1,0],[0,1]]}"#);
    let rn = write("rn.json", r#"{"n": 2, "basis": [[1,0,0,0],[0,1,0,0]]}"#);
    let garbage = write("garbage.json", "not json");

    let run = |args: &[&str]| -> i32 {
        Command::new(bin)
            .args(args)
            .output()
            .expect("binary runs")
            .status
            .code()
            .expect("exit code present")
    };

    let cases: Vec<(Vec<&str>, i32, &str)> = vec![
        (vec!["inspect", &kron], 0, "inspect ok"),
        (vec!["inspect", &garbage], 1, "malformed JSON"),
        (vec!["act", "--word", "bogus", &kron], 1, "word parse error"),
        (
            vec!["fraclin", "--word", "sigma{1,2}", "--pi", &zero_pi],
            2,
            "singular denominator on sigma{1,2} with Pi = 0",
        ),
        (vec!["inspect", &not_dirac], 3, "not isotropic"),
        (vec!["inspect", &bad_dim], 4, "dimension mismatch"),
        (vec!["poissonize", &rn, "--I", "{}"], 5, "not Poisson for I"),
        (
            vec![
                "orbit", &kron, "--target", &rn, "--depth", "1", "--max-nodes", "3",
            ],
            6,
            "orbit bound exhausted",
        ),
        (vec!["nosuchcmd"], 1, "unknown subcommand"),
    ];
    for (args, expected, label) in cases {
        let code = run(&args);
        check(
            code == expected,
            &format!("{label}: expected exit {expected}, got {code}"),
        )?;
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> CheckResult);

#[test]
fn acceptance() {
    let criteria: Vec<Criterion> = vec![
        ("01 basis validation, exact isotropy", c01_validation),
        ("02 fractional-linear equivariance", c02_equivariance),
        ("03 p_star equals annihilator of C", c03_projection),
        ("04 parity preserved iff det +1", c04_parity),
        ("05 sigma rho sigma = nu conjugation", c05_conjugation),
        ("06 Poissonization criterion", c06_poissonization),
        ("07 sigma_i nullity step is 1", c07_nullity_step),
        ("08 commutation matrix block form", c08_commutation_blocks),
        ("09 sigma cancellation identity", c09_sigma_cancellation),
        ("10 star product associativity/unit", c10_star_product),
        ("11 n=2 desk checks", c11_desk_check),
        ("12 clock-shift representations", c12_clock_shift),
        ("13 CLI exit codes", c13_cli_exit_codes),
    ];
    let mut failures = Vec::new();
    for (name, f) in criteria {
        match f() {
            Ok(()) => println!("PASS criterion {name}"),
            Err(msg) => {
                println!("FAIL criterion {name}: {msg}");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}

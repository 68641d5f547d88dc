//! Bounded breadth-first exploration of the integer generator action on
//! Dirac structures.
//!
//! Orbits are infinite in general, so exploration is strictly bounded by
//! depth and node cap; failure to find a target within bounds is never
//! evidence of non-equivalence. Canonical RREF bases make deduplication
//! exact, and a fixed generator order makes witnesses deterministic.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::dirac::DiracStructure;
use crate::error::{Error, Result};
use crate::exact::IntegerMatrix;
use crate::onn::GroupElement;
use crate::word::{parse_word, Word};

/// A named list of integral group elements, closed under inverses.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    gens: Vec<(String, GroupElement)>,
}

impl GeneratorSet {
    pub fn new(gens: Vec<(String, GroupElement)>) -> Result<Self> {
        for (label, g) in &gens {
            if !g.is_integral() {
                return Err(Error::BadInput(format!(
                    "generator {label} is not integral"
                )));
            }
            // label must be a valid word term so witnesses stay parseable
            let w = parse_word(label)?;
            if crate::word::eval_word(&w, g.n())? != *g {
                return Err(Error::BadInput(format!(
                    "label {label} does not evaluate to its generator"
                )));
            }
        }
        Ok(GeneratorSet { gens })
    }

    pub fn elements(&self) -> &[(String, GroupElement)] {
        &self.gens
    }

    pub fn push(&mut self, label: String, g: GroupElement) -> Result<()> {
        let w = parse_word(&label)?;
        if crate::word::eval_word(&w, g.n())? != g {
            return Err(Error::BadInput(format!(
                "label {label} does not evaluate to its generator"
            )));
        }
        self.gens.push((label, g));
        Ok(())
    }
}

fn transvection(i: usize, j: usize, n: usize) -> IntegerMatrix {
    // e_i -> e_i + e_j, all other basis vectors fixed (1-based)
    let mut m = IntegerMatrix::identity(n);
    m[(j - 1, i - 1)] = 1.into();
    m
}

fn matrix_label(kind: &str, m: &IntegerMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let entries: Vec<String> = (0..m.cols()).map(|j| m[(i, j)].to_string()).collect();
            format!("[{}]", entries.join(","))
        })
        .collect();
    format!("{kind}[{}]", rows.join(","))
}

/// The generating set from the sigma/rho presentation of the integer group:
/// all single-index flips sigma_i plus the full flip, the elementary
/// transvections of GL(n, Z) with their inverses, the adjacent swaps, and
/// the sign flip on e_1.
pub fn default_generators(n: usize) -> GeneratorSet {
    assert!(n >= 1);
    let mut gens = Vec::new();
    for i in 1..=n {
        gens.push((
            format!("sigma{{{i}}}"),
            GroupElement::sigma(&[i], n).unwrap(),
        ));
    }
    if n >= 2 {
        // the full flip, so depth-1 witnesses like sigma{1,2} exist
        let all: Vec<usize> = (1..=n).collect();
        let labels: Vec<String> = all.iter().map(|i| i.to_string()).collect();
        gens.push((
            format!("sigma{{{}}}", labels.join(",")),
            GroupElement::sigma(&all, n).unwrap(),
        ));
    }
    let mut rho_gens: Vec<(String, GroupElement)> = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let t = transvection(i, j, n);
            let label = matrix_label("rho", &t);
            let g = GroupElement::rho(&t).unwrap();
            rho_gens.push((format!("inv({label})"), g.inverse()));
            rho_gens.push((label, g));
        }
    }
    for i in 1..n {
        let mut m = IntegerMatrix::identity(n);
        m[(i - 1, i - 1)] = 0.into();
        m[(i, i)] = 0.into();
        m[(i - 1, i)] = 1.into();
        m[(i, i - 1)] = 1.into();
        rho_gens.push((matrix_label("rho", &m), GroupElement::rho(&m).unwrap()));
    }
    {
        let mut m = IntegerMatrix::identity(n);
        m[(0, 0)] = (-1).into();
        rho_gens.push((matrix_label("rho", &m), GroupElement::rho(&m).unwrap()));
    }
    // deterministic order: transvection before its inverse, pairs in index
    // order, then swaps, then the sign flip; realized by a stable sort on
    // the label with inv(...) ranked right after its base label
    rho_gens.sort_by(|(a, _), (b, _)| {
        let key = |s: &str| {
            let inv = s.starts_with("inv(");
            let base = if inv {
                s[4..s.len() - 1].to_string()
            } else {
                s.to_string()
            };
            (base, inv)
        };
        key(a).cmp(&key(b))
    });
    gens.extend(rho_gens);
    GeneratorSet::new(gens).expect("default generators are valid")
}

/// One discovered structure with a shortest witness word from the seed.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitNode {
    pub structure: DiracStructure,
    pub witness: String,
    pub depth: usize,
}

/// Which bound terminated the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    Depth,
    Nodes,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExploreResult {
    pub seed: DiracStructure,
    pub bound: Bound,
    pub nodes: Vec<OrbitNode>,
}

fn append_term(witness: &str, label: &str) -> String {
    if witness.is_empty() {
        label.to_string()
    } else {
        format!("{witness};{label}")
    }
}

/// Breadth-first search over canonical forms. Each structure appears once,
/// with the first (hence shortest, tie-broken by generator order) witness.
pub fn explore(
    seed: &DiracStructure,
    gens: &GeneratorSet,
    depth: usize,
    max_nodes: usize,
) -> ExploreResult {
    let mut nodes: Vec<OrbitNode> = Vec::new();
    let mut seen: HashMap<DiracStructure, usize> = HashMap::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    let mut bound = Bound::Depth;

    if max_nodes == 0 {
        return ExploreResult {
            seed: seed.clone(),
            bound: Bound::Nodes,
            nodes,
        };
    }
    seen.insert(seed.clone(), 0);
    nodes.push(OrbitNode {
        structure: seed.clone(),
        witness: String::new(),
        depth: 0,
    });
    queue.push_back(0);

    'outer: while let Some(idx) = queue.pop_front() {
        let (cur, cur_witness, cur_depth) = {
            let node = &nodes[idx];
            (node.structure.clone(), node.witness.clone(), node.depth)
        };
        if cur_depth == depth {
            continue;
        }
        for (label, g) in gens.elements() {
            let child = g.act(&cur).expect("generator dimensions match the seed");
            if seen.contains_key(&child) {
                continue;
            }
            if nodes.len() == max_nodes {
                bound = Bound::Nodes;
                break 'outer;
            }
            let witness = append_term(&cur_witness, label);
            seen.insert(child.clone(), nodes.len());
            nodes.push(OrbitNode {
                structure: child,
                witness,
                depth: cur_depth + 1,
            });
            queue.push_back(nodes.len() - 1);
        }
    }

    ExploreResult {
        seed: seed.clone(),
        bound,
        nodes,
    }
}

/// Find a witness word carrying g1 to g2 within the given bounds.
///
/// `NotFoundWithinBounds` is explicitly not a proof of non-equivalence.
pub fn connect(
    g1: &DiracStructure,
    g2: &DiracStructure,
    gens: &GeneratorSet,
    depth: usize,
    max_nodes: usize,
) -> Result<Word> {
    if g1.n() != g2.n() {
        return Err(Error::DimensionMismatch(format!(
            "structures have n={} and n={}",
            g1.n(),
            g2.n()
        )));
    }
    let result = explore(g1, gens, depth, max_nodes);
    for node in &result.nodes {
        if node.structure == *g2 {
            return parse_word(&node.witness);
        }
    }
    Err(Error::NotFoundWithinBounds)
}

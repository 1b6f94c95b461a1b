//! Uniform generatability of finite families of infinite regular languages.
//!
//! A family is `m`-generatable exactly when no nonempty subfamily has a
//! finite intersection with at least `m` words. [`analyze`] evaluates every
//! nonempty subfamily and reports the least such `m`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::automaton::{product_intersection, Automaton, Symbol, Word};
use crate::count::Count;
use crate::error::{Error, Result};

/// Largest family size accepted by the subset enumeration.
pub const MAX_FAMILY_SIZE: usize = 24;

/// An ordered, named family of automata over one alphabet, each accepting
/// an infinite language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    members: Vec<(String, Automaton)>,
}

impl Family {
    pub fn new(members: Vec<(String, Automaton)>) -> Result<Self> {
        let Some((_, first)) = members.first() else {
            return Err(Error::EmptyInput("a family needs at least one member"));
        };
        if members.len() > MAX_FAMILY_SIZE {
            return Err(Error::InvalidParams(format!(
                "family of {} members exceeds the supported {MAX_FAMILY_SIZE}",
                members.len()
            )));
        }
        for (name, a) in &members {
            if a.alphabet() != first.alphabet() {
                return Err(Error::AlphabetMismatch(format!(
                    "member `{name}` has alphabet {:?}, expected {:?}",
                    a.alphabet(),
                    first.alphabet()
                )));
            }
            if a.is_finite() {
                return Err(Error::InfiniteMemberViolation(name.clone()));
            }
        }
        Ok(Family { members })
    }

    pub fn members(&self) -> &[(String, Automaton)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn alphabet(&self) -> &[Symbol] {
        self.members[0].1.alphabet()
    }

    pub fn automaton(&self, i: usize) -> &Automaton {
        &self.members[i].1
    }

    fn subset(&self, mask: u64) -> Vec<Automaton> {
        (0..self.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.members[i].1.clone())
            .collect()
    }

    /// Member names selected by `mask`.
    pub fn names(&self, mask: u64) -> Vec<&str> {
        (0..self.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.members[i].0.as_str())
            .collect()
    }
}

/// Analysis of one nonempty subfamily's intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetReport {
    /// Bit `i` set when member `i` belongs to the subfamily.
    pub mask: u64,
    pub intersection_states: usize,
    pub empty: bool,
    pub finite: bool,
    pub cardinality: Count,
    pub longest: Option<Count>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratabilityReport {
    /// One entry per nonempty subfamily, in ascending mask order.
    pub subsets: Vec<SubsetReport>,
    pub minimal_m: BigUint,
}

impl GeneratabilityReport {
    /// The subfamily whose finite intersection is largest, if any is finite
    /// and nonempty. Ties resolve to the smallest mask.
    pub fn largest_finite(&self) -> Option<&SubsetReport> {
        self.subsets
            .iter()
            .filter(|s| s.finite && !s.empty)
            .fold(None, |best: Option<&SubsetReport>, s| match best {
                Some(b) if b.cardinality >= s.cardinality => Some(b),
                _ => Some(s),
            })
    }

    /// Renders the report table, ending with the `minimal_m` line.
    pub fn render(&self, family: &Family) -> String {
        let mut out = String::from("mask\tmembers\tstates\tfinite\tcardinality\tlongest\n");
        for s in &self.subsets {
            let longest = s.longest.as_ref().map_or("none".to_string(), Count::to_string);
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                s.mask,
                family.names(s.mask).join(","),
                s.intersection_states,
                if s.finite { "yes" } else { "no" },
                s.cardinality,
                longest
            ));
        }
        out.push_str(&format!("minimal_m {}\n", self.minimal_m));
        out
    }
}

/// Evaluates every nonempty subfamily and derives the least `m` for which
/// the family is `m`-generatable.
pub fn analyze(family: &Family) -> Result<GeneratabilityReport> {
    analyze_capped(family, usize::MAX)
}

/// [`analyze`] that refuses product automata above `max_states` states.
pub fn analyze_capped(family: &Family, max_states: usize) -> Result<GeneratabilityReport> {
    let k = family.len();
    let mut subsets = Vec::with_capacity((1usize << k) - 1);
    let mut largest = BigUint::zero();
    for mask in 1u64..(1u64 << k) {
        let product = product_intersection(&family.subset(mask))?;
        if product.state_count() > max_states {
            return Err(Error::BudgetExceeded(format!(
                "intersection of subset {mask} has {} states (cap {max_states})",
                product.state_count()
            )));
        }
        let cardinality = product.cardinality();
        let finite = cardinality.is_finite();
        if let Count::Finite(c) = &cardinality {
            if *c > largest {
                largest = c.clone();
            }
        }
        subsets.push(SubsetReport {
            mask,
            intersection_states: product.state_count(),
            empty: cardinality == Count::zero(),
            finite,
            longest: product.longest_word_length(),
            cardinality,
        });
    }
    Ok(GeneratabilityReport {
        subsets,
        minimal_m: largest + BigUint::one(),
    })
}

/// Whether the family is `m`-generatable (`m >= 1`).
pub fn is_m_generatable(family: &Family, m: &BigUint) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::InvalidParams("m must be at least 1".into()));
    }
    Ok(*m >= analyze(family)?.minimal_m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenStatus {
    /// The output language is infinite.
    Infinite,
    /// The examples sit inside a finite intersection; the output is finite.
    FiniteOutput,
}

impl fmt::Display for GenStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenStatus::Infinite => "infinite",
            GenStatus::FiniteOutput => "finite",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub automaton: Automaton,
    /// Indices of the members containing every example.
    pub support: Vec<usize>,
    pub status: GenStatus,
}

/// The canonical generator: intersect every member that contains all the
/// examples.
pub fn canonical_generate(family: &Family, examples: &[Word]) -> Result<Generated> {
    if examples.is_empty() {
        return Err(Error::EmptyInput("at least one example is required"));
    }
    let first = family.automaton(0);
    let mut seen = HashSet::with_capacity(examples.len());
    let mut encoded = Vec::with_capacity(examples.len());
    for w in examples {
        let e = first.encode_word(w)?;
        if !seen.insert(e.clone()) {
            return Err(Error::DuplicateExample(w.join(".")));
        }
        encoded.push(e);
    }
    let support: Vec<usize> = (0..family.len())
        .filter(|&i| {
            let runner = family.automaton(i).runner();
            encoded.iter().all(|w| runner.accepts(w))
        })
        .collect();
    if support.is_empty() {
        return Err(Error::InconsistentExamples);
    }
    let chosen: Vec<Automaton> = support.iter().map(|&i| family.automaton(i).clone()).collect();
    let automaton = product_intersection(&chosen)?;
    let status = if automaton.is_finite() {
        GenStatus::FiniteOutput
    } else {
        GenStatus::Infinite
    };
    Ok(Generated {
        automaton,
        support,
        status,
    })
}

/// Recomputes `minimal_m` by explicit word-set enumeration.
///
/// Each subfamily's intersection is explored by simulating every member on
/// state sets. With `B` the state count of the trimmed determinized product,
/// the intersection is finite iff it holds no word of length in `[B, 2B)`;
/// when finite its words (all shorter than `B`) are materialized and counted.
/// `word_budget` caps the number of prefixes visited.
pub fn minimal_m_oracle(family: &Family, word_budget: usize) -> Result<BigUint> {
    let k = family.len();
    let mut largest = 0usize;
    for mask in 1u64..(1u64 << k) {
        let members = family.subset(mask);
        let bound = product_intersection(&members)?.determinize().trim().state_count().max(1);
        let sim = JointSim::new(&members);
        if sim.has_word_in(bound, 2 * bound) {
            continue;
        }
        let words = sim.words_shorter_than(bound, word_budget)?;
        largest = largest.max(words.len());
    }
    Ok(BigUint::from(largest) + BigUint::one())
}

/// Simultaneous state-set simulation of several automata.
struct JointSim {
    alphabet: usize,
    deltas: Vec<Vec<Vec<Vec<usize>>>>,
    finals: Vec<Vec<bool>>,
    starts: Vec<Vec<usize>>,
}

type Config = Vec<Vec<usize>>;

impl JointSim {
    fn new(members: &[Automaton]) -> Self {
        JointSim {
            alphabet: members[0].alphabet().len(),
            deltas: members.iter().map(Automaton::delta).collect(),
            finals: members
                .iter()
                .map(|a| (0..a.state_count()).map(|q| a.is_final(q)).collect())
                .collect(),
            starts: members.iter().map(|a| a.initial().into_iter().collect()).collect(),
        }
    }

    fn step(&self, config: &Config, sym: usize) -> Option<Config> {
        let mut next = Vec::with_capacity(config.len());
        for (i, set) in config.iter().enumerate() {
            let mut s: Vec<usize> = set
                .iter()
                .flat_map(|&q| self.deltas[i][q][sym].iter().copied())
                .collect();
            if s.is_empty() {
                return None;
            }
            s.sort_unstable();
            s.dedup();
            next.push(s);
        }
        Some(next)
    }

    fn accepting(&self, config: &Config) -> bool {
        config
            .iter()
            .enumerate()
            .all(|(i, set)| set.iter().any(|&q| self.finals[i][q]))
    }

    fn start(&self) -> Option<Config> {
        self.starts.iter().all(|s| !s.is_empty()).then(|| self.starts.clone())
    }

    /// Whether some jointly accepted word has length in `[lo, hi)`.
    fn has_word_in(&self, lo: usize, hi: usize) -> bool {
        let Some(start) = self.start() else {
            return false;
        };
        let mut layer: HashSet<Config> = HashSet::from([start]);
        for depth in 0..hi {
            if depth >= lo && layer.iter().any(|c| self.accepting(c)) {
                return true;
            }
            let mut next = HashSet::new();
            for c in &layer {
                for sym in 0..self.alphabet {
                    if let Some(n) = self.step(c, sym) {
                        next.insert(n);
                    }
                }
            }
            if next.is_empty() {
                return false;
            }
            layer = next;
        }
        false
    }

    /// Every jointly accepted word shorter than `bound`.
    fn words_shorter_than(&self, bound: usize, budget: usize) -> Result<HashSet<Vec<usize>>> {
        let mut words = HashSet::new();
        let Some(start) = self.start() else {
            return Ok(words);
        };
        let mut live: HashMap<(Config, usize), bool> = HashMap::new();
        let mut visited = 0usize;
        let mut stack: Vec<(Config, Vec<usize>)> = vec![(start, Vec::new())];
        while let Some((config, prefix)) = stack.pop() {
            visited += 1;
            if visited > budget {
                return Err(Error::ResourceCap(format!(
                    "oracle enumeration visited more than {budget} prefixes"
                )));
            }
            if self.accepting(&config) {
                words.insert(prefix.clone());
            }
            if prefix.len() + 1 >= bound {
                continue;
            }
            let remaining = bound - 1 - prefix.len() - 1;
            for sym in 0..self.alphabet {
                if let Some(next) = self.step(&config, sym) {
                    if self.can_accept_within(&next, remaining, &mut live) {
                        let mut w = prefix.clone();
                        w.push(sym);
                        stack.push((next, w));
                    }
                }
            }
        }
        Ok(words)
    }

    fn can_accept_within(
        &self,
        config: &Config,
        steps: usize,
        memo: &mut HashMap<(Config, usize), bool>,
    ) -> bool {
        if self.accepting(config) {
            return true;
        }
        if steps == 0 {
            return false;
        }
        if let Some(&v) = memo.get(&(config.clone(), steps)) {
            return v;
        }
        let result = (0..self.alphabet).any(|sym| {
            self.step(config, sym)
                .is_some_and(|n| self.can_accept_within(&n, steps - 1, memo))
        });
        memo.insert((config.clone(), steps), result);
        result
    }
}

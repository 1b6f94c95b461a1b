//! Finite automata over opaque symbol alphabets.
//!
//! An [`Automaton`] is a nondeterministic acceptor without ε-moves. Missing
//! transitions reject, so hand-written DFAs may be partial. A zero-state
//! automaton is the canonical acceptor of the empty language.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::count::Count;
use crate::error::{Error, Result};

pub type Symbol = String;
pub type Word = Vec<Symbol>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    alphabet: Vec<Symbol>,
    state_count: usize,
    initial: usize,
    finals: BTreeSet<usize>,
    /// `(from, symbol index, to)`
    transitions: BTreeSet<(usize, usize, usize)>,
}

impl Automaton {
    /// Builds and validates an automaton; transition symbols are given by name.
    pub fn new<'a>(
        alphabet: Vec<Symbol>,
        state_count: usize,
        initial: usize,
        finals: impl IntoIterator<Item = usize>,
        transitions: impl IntoIterator<Item = (usize, &'a str, usize)>,
    ) -> Result<Self> {
        let index = symbol_index(&alphabet)?;
        let mut indexed = BTreeSet::new();
        for (from, sym, to) in transitions {
            let s = *index
                .get(sym)
                .ok_or_else(|| Error::InvalidAutomaton(format!("symbol `{sym}` not in alphabet")))?;
            indexed.insert((from, s, to));
        }
        Self::from_parts(alphabet, state_count, initial, finals.into_iter().collect(), indexed)
    }

    /// Builds an automaton whose transitions reference symbols by alphabet index.
    pub fn from_parts(
        alphabet: Vec<Symbol>,
        state_count: usize,
        initial: usize,
        finals: BTreeSet<usize>,
        transitions: BTreeSet<(usize, usize, usize)>,
    ) -> Result<Self> {
        symbol_index(&alphabet)?;
        if state_count == 0 {
            if !finals.is_empty() || !transitions.is_empty() || initial != 0 {
                return Err(Error::InvalidAutomaton(
                    "a zero-state automaton has no initial state, finals or transitions".into(),
                ));
            }
        } else if initial >= state_count {
            return Err(Error::InvalidAutomaton(format!(
                "initial state {initial} out of range (states {state_count})"
            )));
        }
        if let Some(&f) = finals.iter().find(|&&f| f >= state_count) {
            return Err(Error::InvalidAutomaton(format!("final state {f} out of range")));
        }
        for &(from, sym, to) in &transitions {
            if from >= state_count || to >= state_count {
                return Err(Error::InvalidAutomaton(format!(
                    "transition ({from}, {sym}, {to}) references a missing state"
                )));
            }
            if sym >= alphabet.len() {
                return Err(Error::InvalidAutomaton(format!("symbol index {sym} out of range")));
            }
        }
        Ok(Automaton {
            alphabet,
            state_count,
            initial,
            finals,
            transitions,
        })
    }

    /// The zero-state automaton accepting nothing.
    pub fn empty(alphabet: Vec<Symbol>) -> Self {
        Automaton {
            alphabet,
            state_count: 0,
            initial: 0,
            finals: BTreeSet::new(),
            transitions: BTreeSet::new(),
        }
    }

    pub fn alphabet(&self) -> &[Symbol] {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    /// `None` for the zero-state automaton.
    pub fn initial(&self) -> Option<usize> {
        (self.state_count > 0).then_some(self.initial)
    }

    pub fn finals(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals.contains(&q)
    }

    /// Transitions as `(from, symbol index, to)`, sorted.
    pub fn transitions(&self) -> &BTreeSet<(usize, usize, usize)> {
        &self.transitions
    }

    pub fn symbol_position(&self, sym: &str) -> Option<usize> {
        self.alphabet.iter().position(|s| s == sym)
    }

    /// Maps a word onto alphabet indices.
    pub fn encode_word(&self, word: &[Symbol]) -> Result<Vec<usize>> {
        word.iter()
            .map(|s| self.symbol_position(s).ok_or_else(|| Error::UnknownSymbol(s.clone())))
            .collect()
    }

    pub fn decode_word(&self, word: &[usize]) -> Word {
        word.iter().map(|&i| self.alphabet[i].clone()).collect()
    }

    /// `table[state][symbol]` lists successor states.
    pub(crate) fn delta(&self) -> Vec<Vec<Vec<usize>>> {
        let mut table = vec![vec![Vec::new(); self.alphabet.len()]; self.state_count];
        for &(from, sym, to) in &self.transitions {
            table[from][sym].push(to);
        }
        table
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.state_count];
        for &(from, _, to) in &self.transitions {
            adj[from].push(to);
        }
        adj
    }

    pub fn is_deterministic(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.transitions.iter().all(|&(from, sym, _)| seen.insert((from, sym)))
    }

    /// Subset construction. The result is deterministic and complete; states
    /// are numbered in breadth-first discovery order.
    pub fn determinize(&self) -> Automaton {
        let k = self.alphabet.len();
        let delta = self.delta();
        let start: Vec<usize> = if self.state_count == 0 {
            Vec::new()
        } else {
            vec![self.initial]
        };
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut subsets = vec![start.clone()];
        ids.insert(start, 0);
        let mut transitions = BTreeSet::new();
        let mut cursor = 0;
        while cursor < subsets.len() {
            let current = subsets[cursor].clone();
            for sym in 0..k {
                let mut next: Vec<usize> = current
                    .iter()
                    .flat_map(|&q| delta[q][sym].iter().copied())
                    .collect();
                next.sort_unstable();
                next.dedup();
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = subsets.len();
                        ids.insert(next.clone(), id);
                        subsets.push(next);
                        id
                    }
                };
                transitions.insert((cursor, sym, id));
            }
            cursor += 1;
        }
        let finals = subsets
            .iter()
            .enumerate()
            .filter(|(_, s)| s.iter().any(|q| self.finals.contains(q)))
            .map(|(i, _)| i)
            .collect();
        Automaton {
            alphabet: self.alphabet.clone(),
            state_count: subsets.len(),
            initial: 0,
            finals,
            transitions,
        }
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count];
        if self.state_count == 0 {
            return seen;
        }
        let adj = self.successors();
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(q) = stack.pop() {
            for &r in &adj[q] {
                if !seen[r] {
                    seen[r] = true;
                    stack.push(r);
                }
            }
        }
        seen
    }

    fn coreachable(&self) -> Vec<bool> {
        let mut rev = vec![Vec::new(); self.state_count];
        for &(from, _, to) in &self.transitions {
            rev[to].push(from);
        }
        let mut seen = vec![false; self.state_count];
        let mut stack: Vec<usize> = self.finals.iter().copied().collect();
        for &f in &stack {
            seen[f] = true;
        }
        while let Some(q) = stack.pop() {
            for &p in &rev[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Restricts to states on some initial-to-final path. States keep their
    /// relative order.
    pub fn trim(&self) -> Automaton {
        let reach = self.reachable();
        let coreach = self.coreachable();
        let useful: Vec<bool> = reach.iter().zip(&coreach).map(|(a, b)| *a && *b).collect();
        if self.state_count == 0 || !useful[self.initial] {
            return Automaton::empty(self.alphabet.clone());
        }
        let mut renum = vec![usize::MAX; self.state_count];
        let mut next = 0;
        for q in 0..self.state_count {
            if useful[q] {
                renum[q] = next;
                next += 1;
            }
        }
        let transitions = self
            .transitions
            .iter()
            .filter(|&&(f, _, t)| useful[f] && useful[t])
            .map(|&(f, s, t)| (renum[f], s, renum[t]))
            .collect();
        let finals = self
            .finals
            .iter()
            .filter(|&&f| useful[f])
            .map(|&f| renum[f])
            .collect();
        Automaton {
            alphabet: self.alphabet.clone(),
            state_count: next,
            initial: renum[self.initial],
            finals,
            transitions,
        }
    }

    pub fn is_empty(&self) -> bool {
        let reach = self.reachable();
        !self.finals.iter().any(|&f| reach[f])
    }

    /// Finite iff the trimmed transition graph is acyclic.
    pub fn is_finite(&self) -> bool {
        topological_order(&self.trim()).is_some()
    }

    /// Exact number of accepted words. Counting runs on the trimmed
    /// determinization so that paths and words correspond one to one.
    pub fn cardinality(&self) -> Count {
        let dfa = self.determinize().trim();
        if dfa.state_count == 0 {
            return Count::zero();
        }
        let Some(order) = topological_order(&dfa) else {
            return Count::Infinite;
        };
        let adj = dfa.successors();
        let mut paths = vec![BigUint::zero(); dfa.state_count];
        for &q in order.iter().rev() {
            let mut total = if dfa.is_final(q) {
                BigUint::from(1u32)
            } else {
                BigUint::zero()
            };
            for &r in &adj[q] {
                total += &paths[r];
            }
            paths[q] = total;
        }
        Count::Finite(paths[dfa.initial].clone())
    }

    /// Length of the longest accepted word: `None` when the language is
    /// empty, `Some(Infinite)` when it is infinite.
    pub fn longest_word_length(&self) -> Option<Count> {
        let t = self.trim();
        if t.state_count == 0 {
            return None;
        }
        let Some(order) = topological_order(&t) else {
            return Some(Count::Infinite);
        };
        let adj = t.successors();
        // Every state of a trimmed automaton reaches a final state.
        let mut longest = vec![0u64; t.state_count];
        for &q in order.iter().rev() {
            longest[q] = adj[q].iter().map(|&r| longest[r] + 1).max().unwrap_or(0);
        }
        Some(Count::from(longest[t.initial]))
    }

    pub fn member(&self, word: &[Symbol]) -> Result<bool> {
        let encoded = self.encode_word(word)?;
        Ok(self.member_indices(&encoded))
    }

    /// Membership for a word already mapped to alphabet indices.
    pub fn member_indices(&self, word: &[usize]) -> bool {
        self.runner().accepts(word)
    }

    /// Precomputes the transition table for repeated membership queries.
    pub fn runner(&self) -> Runner {
        Runner {
            delta: self.delta(),
            initial: self.initial(),
            finals: (0..self.state_count).map(|q| self.is_final(q)).collect(),
        }
    }

    /// Accepted words of length at most `max_len` in shortlex order,
    /// truncated after `max_count` words when given.
    pub fn enumerate(&self, max_len: usize, max_count: Option<usize>) -> Vec<Word> {
        self.enumerate_indices(max_len, max_count)
            .iter()
            .map(|w| self.decode_word(w))
            .collect()
    }

    /// [`enumerate`](Self::enumerate) over alphabet indices.
    pub fn enumerate_indices(&self, max_len: usize, max_count: Option<usize>) -> Vec<Vec<usize>> {
        let dfa = self.determinize().trim();
        let mut out = Vec::new();
        if dfa.state_count == 0 || max_count == Some(0) {
            return out;
        }
        let delta: Vec<Vec<Option<usize>>> = dfa
            .delta()
            .into_iter()
            .map(|row| row.into_iter().map(|t| t.first().copied()).collect())
            .collect();
        // feasible[r][q]: some word of length exactly r leads from q to a final state.
        let mut feasible = vec![vec![false; dfa.state_count]];
        for q in 0..dfa.state_count {
            feasible[0][q] = dfa.is_final(q);
        }
        for r in 1..=max_len {
            let prev = &feasible[r - 1];
            let row = (0..dfa.state_count)
                .map(|q| delta[q].iter().any(|t| t.is_some_and(|t| prev[t])))
                .collect();
            feasible.push(row);
        }
        let limit = max_count.unwrap_or(usize::MAX);
        for len in 0..=max_len {
            if !feasible[len][dfa.initial] {
                continue;
            }
            // Depth-first in alphabet order yields lexicographic order per length.
            let mut word = Vec::with_capacity(len);
            let mut states = vec![dfa.initial];
            let mut next_sym = vec![0usize];
            while let Some(&q) = states.last() {
                let depth = word.len();
                if depth == len {
                    out.push(word.clone());
                    if out.len() >= limit {
                        return out;
                    }
                    states.pop();
                    next_sym.pop();
                    word.pop();
                    continue;
                }
                let remaining = len - depth - 1;
                let start = next_sym[depth];
                let step = (start..dfa.alphabet.len()).find_map(|s| {
                    delta[q][s].filter(|&t| feasible[remaining][t]).map(|t| (s, t))
                });
                match step {
                    Some((s, t)) => {
                        next_sym[depth] = s + 1;
                        word.push(s);
                        states.push(t);
                        next_sym.push(0);
                    }
                    None => {
                        states.pop();
                        next_sym.pop();
                        word.pop();
                    }
                }
            }
        }
        out
    }
}

/// Set-of-states simulation with a cached transition table.
#[derive(Clone, Debug)]
pub struct Runner {
    delta: Vec<Vec<Vec<usize>>>,
    initial: Option<usize>,
    finals: Vec<bool>,
}

impl Runner {
    pub fn accepts(&self, word: &[usize]) -> bool {
        let Some(init) = self.initial else {
            return false;
        };
        let n = self.finals.len();
        let mut current = vec![false; n];
        current[init] = true;
        let mut next = vec![false; n];
        for &sym in word {
            next.iter_mut().for_each(|b| *b = false);
            let mut any = false;
            for q in (0..n).filter(|&q| current[q]) {
                for &r in &self.delta[q][sym] {
                    next[r] = true;
                    any = true;
                }
            }
            if !any {
                return false;
            }
            std::mem::swap(&mut current, &mut next);
        }
        (0..n).any(|q| current[q] && self.finals[q])
    }
}

/// Synchronous product of automata over a shared alphabet. Only tuples
/// reachable from the initial tuple become states.
pub fn product_intersection(automata: &[Automaton]) -> Result<Automaton> {
    let first = automata
        .first()
        .ok_or(Error::EmptyInput("product of an empty sequence of automata"))?;
    if let Some(other) = automata.iter().find(|a| a.alphabet != first.alphabet) {
        return Err(Error::AlphabetMismatch(format!(
            "{:?} vs {:?}",
            first.alphabet, other.alphabet
        )));
    }
    if automata.iter().any(|a| a.state_count == 0) {
        return Ok(Automaton::empty(first.alphabet.clone()));
    }
    let k = first.alphabet.len();
    let deltas: Vec<_> = automata.iter().map(Automaton::delta).collect();
    let start: Vec<usize> = automata.iter().map(|a| a.initial).collect();
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut tuples = vec![start.clone()];
    ids.insert(start, 0);
    let mut transitions = BTreeSet::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(id) = queue.pop_front() {
        let tuple = tuples[id].clone();
        for sym in 0..k {
            let choices: Vec<&Vec<usize>> = tuple
                .iter()
                .enumerate()
                .map(|(i, &q)| &deltas[i][q][sym])
                .collect();
            if choices.iter().any(|c| c.is_empty()) {
                continue;
            }
            let mut odometer = vec![0usize; choices.len()];
            loop {
                let next: Vec<usize> = odometer.iter().zip(&choices).map(|(&j, c)| c[j]).collect();
                let target = match ids.get(&next) {
                    Some(&t) => t,
                    None => {
                        let t = tuples.len();
                        ids.insert(next.clone(), t);
                        tuples.push(next);
                        queue.push_back(t);
                        t
                    }
                };
                transitions.insert((id, sym, target));
                let mut pos = 0;
                loop {
                    if pos == odometer.len() {
                        break;
                    }
                    odometer[pos] += 1;
                    if odometer[pos] < choices[pos].len() {
                        break;
                    }
                    odometer[pos] = 0;
                    pos += 1;
                }
                if pos == odometer.len() {
                    break;
                }
            }
        }
    }
    let finals = tuples
        .iter()
        .enumerate()
        .filter(|(_, t)| t.iter().zip(automata).all(|(&q, a)| a.is_final(q)))
        .map(|(i, _)| i)
        .collect();
    Ok(Automaton {
        alphabet: first.alphabet.clone(),
        state_count: tuples.len(),
        initial: 0,
        finals,
        transitions,
    })
}

fn symbol_index(alphabet: &[Symbol]) -> Result<HashMap<&str, usize>> {
    let mut index = HashMap::with_capacity(alphabet.len());
    for (i, s) in alphabet.iter().enumerate() {
        if s.is_empty() || s.chars().any(char::is_whitespace) {
            return Err(Error::InvalidAutomaton(format!("bad symbol {s:?}")));
        }
        if index.insert(s.as_str(), i).is_some() {
            return Err(Error::InvalidAutomaton(format!("duplicate symbol `{s}`")));
        }
    }
    Ok(index)
}

/// Kahn ordering of the transition graph, `None` if it has a cycle.
fn topological_order(a: &Automaton) -> Option<Vec<usize>> {
    let adj = a.successors();
    let mut indegree = vec![0usize; a.state_count];
    for targets in &adj {
        for &t in targets {
            indegree[t] += 1;
        }
    }
    let mut ready: Vec<usize> = (0..a.state_count).filter(|&q| indegree[q] == 0).collect();
    let mut order = Vec::with_capacity(a.state_count);
    while let Some(q) = ready.pop() {
        order.push(q);
        for &t in &adj[q] {
            indegree[t] -= 1;
            if indegree[t] == 0 {
                ready.push(t);
            }
        }
    }
    (order.len() == a.state_count).then_some(order)
}

/// Convenience for alphabets of single-character symbols: `"01"` → `["0","1"]`.
pub fn chars_alphabet(symbols: &str) -> Vec<Symbol> {
    symbols.chars().map(String::from).collect()
}

/// Splits a string of single-character symbols into a word.
pub fn chars_word(text: &str) -> Word {
    text.chars().map(String::from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bin() -> Vec<Symbol> {
        chars_alphabet("01")
    }

    /// At most one `0`.
    fn at_most_one_zero() -> Automaton {
        Automaton::new(bin(), 2, 0, [0, 1], [(0, "1", 0), (0, "0", 1), (1, "1", 1)]).unwrap()
    }

    /// No two `1`s without a `0` between them.
    fn no_double_one() -> Automaton {
        Automaton::new(
            bin(),
            2,
            0,
            [0, 1],
            [(0, "0", 0), (0, "1", 1), (1, "0", 0)],
        )
        .unwrap()
    }

    /// Third symbol from the end is `1` (state 0 loops, then 1 → 2 → 3).
    fn third_from_end() -> Automaton {
        Automaton::new(
            bin(),
            4,
            0,
            [3],
            [
                (0, "0", 0),
                (0, "1", 0),
                (0, "1", 1),
                (1, "0", 2),
                (1, "1", 2),
                (2, "0", 3),
                (2, "1", 3),
            ],
        )
        .unwrap()
    }

    fn all_words(alphabet: usize, max_len: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        let mut layer = vec![vec![]];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for s in 0..alphabet {
                    let mut v: Vec<usize> = w.clone();
                    v.push(s);
                    next.push(v);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    #[test]
    fn validation_rejects_bad_parts() {
        assert!(Automaton::new(bin(), 1, 1, [], []).is_err());
        assert!(Automaton::new(bin(), 1, 0, [2], []).is_err());
        assert!(Automaton::new(bin(), 1, 0, [], [(0, "2", 0)]).is_err());
        assert!(Automaton::new(vec!["a".into(), "a".into()], 1, 0, [], []).is_err());
        assert!(Automaton::new(bin(), 0, 0, [], []).is_ok());
    }

    #[test]
    fn determinism_predicate() {
        let single = Automaton::new(bin(), 1, 0, [], [(0, "0", 0)]).unwrap();
        assert!(single.is_deterministic());
        let dup = Automaton::new(bin(), 2, 0, [], [(0, "0", 0), (0, "0", 1)]).unwrap();
        assert!(!dup.is_deterministic());
        assert!(dup.determinize().is_deterministic());
    }

    #[test]
    fn third_from_end_has_eight_subset_states() {
        let nfa = third_from_end();
        let dfa = nfa.determinize();
        assert_eq!(dfa.state_count(), 8);
        assert!(dfa.is_deterministic());
        for w in all_words(2, 8) {
            assert_eq!(dfa.member_indices(&w), nfa.member_indices(&w), "{w:?}");
        }
    }

    #[test]
    fn determinize_is_complete() {
        let dfa = at_most_one_zero().determinize();
        assert_eq!(dfa.transitions().len(), dfa.state_count() * 2);
        let none = Automaton::new(bin(), 2, 0, [], [(0, "0", 1)]).unwrap();
        let d = none.determinize();
        assert!(d.is_empty());
        assert!(d.enumerate(4, None).is_empty());
    }

    #[test]
    fn product_membership_matches_brute_force() {
        let p = product_intersection(&[at_most_one_zero(), no_double_one()]).unwrap();
        assert!(p.member(&chars_word("101")).unwrap());
        assert!(!p.member(&chars_word("11")).unwrap());
        let (a, b) = (at_most_one_zero(), no_double_one());
        for w in all_words(2, 4) {
            assert_eq!(p.member_indices(&w), a.member_indices(&w) && b.member_indices(&w));
        }
    }

    #[test]
    fn product_errors_and_bounds() {
        assert!(matches!(product_intersection(&[]), Err(Error::EmptyInput(_))));
        let other = Automaton::new(chars_alphabet("ab"), 1, 0, [0], []).unwrap();
        assert!(matches!(
            product_intersection(&[at_most_one_zero(), other]),
            Err(Error::AlphabetMismatch(_))
        ));
        let three = [at_most_one_zero(), no_double_one(), at_most_one_zero()];
        assert!(product_intersection(&three).unwrap().state_count() <= 8);
        let single = product_intersection(&[no_double_one()]).unwrap();
        for w in all_words(2, 6) {
            assert_eq!(single.member_indices(&w), no_double_one().member_indices(&w));
        }
    }

    #[test]
    fn witness_pair_counts() {
        let p = product_intersection(&[at_most_one_zero(), no_double_one()]).unwrap();
        assert!(p.is_finite());
        assert_eq!(p.cardinality(), Count::from(6u64));
        assert_eq!(p.longest_word_length(), Some(Count::from(3u64)));
        let words: Vec<String> = p.enumerate(3, None).iter().map(|w| w.concat()).collect();
        assert_eq!(words, ["", "0", "1", "01", "10", "101"]);
    }

    #[test]
    fn trim_edge_cases() {
        let unreachable = Automaton::new(bin(), 2, 0, [1], [(1, "0", 1)]).unwrap();
        let t = unreachable.trim();
        assert_eq!(t.state_count(), 0);
        assert!(t.is_empty());
        let already = no_double_one().trim();
        assert_eq!(already.state_count(), 2);
    }

    #[test]
    fn emptiness() {
        assert!(Automaton::new(bin(), 1, 0, [], [(0, "0", 0)]).unwrap().is_empty());
        assert!(!Automaton::new(bin(), 1, 0, [0], []).unwrap().is_empty());
        let only0 = Automaton::new(bin(), 2, 0, [1], [(0, "0", 1)]).unwrap();
        let only1 = Automaton::new(bin(), 2, 0, [1], [(0, "1", 1)]).unwrap();
        assert!(product_intersection(&[only0, only1]).unwrap().is_empty());
    }

    #[test]
    fn finiteness_and_counting_corner_cases() {
        let loop0 = Automaton::new(bin(), 1, 0, [0], [(0, "0", 0)]).unwrap();
        assert!(!loop0.is_finite());
        assert_eq!(loop0.cardinality(), Count::Infinite);
        assert_eq!(loop0.longest_word_length(), Some(Count::Infinite));
        let eps = Automaton::new(bin(), 1, 0, [0], []).unwrap();
        assert!(eps.is_finite());
        assert_eq!(eps.cardinality(), Count::from(1u64));
        assert_eq!(eps.longest_word_length(), Some(Count::from(0u64)));
        let empty = Automaton::empty(bin());
        assert_eq!(empty.cardinality(), Count::zero());
        assert_eq!(empty.longest_word_length(), None);
        // A useless loop does not make the language infinite.
        let dead_loop = Automaton::new(bin(), 3, 0, [1], [(0, "0", 1), (0, "1", 2), (2, "1", 2)]).unwrap();
        assert!(dead_loop.is_finite());
        assert_eq!(dead_loop.cardinality(), Count::from(1u64));
    }

    #[test]
    fn ambiguous_nfa_counts_words_not_paths() {
        // Two paths for "0".
        let nfa = Automaton::new(bin(), 3, 0, [1, 2], [(0, "0", 1), (0, "0", 2)]).unwrap();
        assert_eq!(nfa.cardinality(), Count::from(1u64));
    }

    #[test]
    fn membership() {
        let eps = Automaton::new(bin(), 1, 0, [0], []).unwrap();
        assert!(eps.member(&[]).unwrap());
        assert!(!no_double_one().member(&chars_word("11")).unwrap());
        let none = Automaton::new(bin(), 1, 0, [], [(0, "0", 0)]).unwrap();
        assert!(!none.member(&chars_word("000")).unwrap());
        assert!(matches!(
            none.member(&chars_word("2")),
            Err(Error::UnknownSymbol(s)) if s == "2"
        ));
    }

    #[test]
    fn enumerate_universal_and_truncated() {
        let all = Automaton::new(bin(), 1, 0, [0], [(0, "0", 0), (0, "1", 0)]).unwrap();
        let words: Vec<String> = all.enumerate(1, None).iter().map(|w| w.concat()).collect();
        assert_eq!(words, ["", "0", "1"]);
        let first: Vec<String> = all.enumerate(5, Some(4)).iter().map(|w| w.concat()).collect();
        assert_eq!(first, ["", "0", "1", "00"]);
        assert_eq!(all.enumerate(3, None).len(), 15);
    }
}

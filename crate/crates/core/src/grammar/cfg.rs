use std::collections::{BTreeSet, HashMap, HashSet};

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::automaton::{Symbol, Word};
use crate::count::Count;
use crate::error::{Error, Result};

/// A grammar symbol: terminal or nonterminal, by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GSym {
    T(usize),
    N(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Production {
    pub head: usize,
    pub body: Vec<GSym>,
}

/// A context-free grammar. Productions are kept sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cfg {
    nonterminals: Vec<Symbol>,
    terminals: Vec<Symbol>,
    start: usize,
    productions: Vec<Production>,
}

impl Cfg {
    /// Builds a grammar from named rules. Body tokens resolve against the
    /// declared nonterminals first, then the terminals.
    pub fn new(
        nonterminals: Vec<Symbol>,
        terminals: Vec<Symbol>,
        start: &str,
        rules: &[(&str, Vec<&str>)],
    ) -> Result<Self> {
        let nt: HashMap<&str, usize> = nonterminals.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let t: HashMap<&str, usize> = terminals.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let resolve_head = |name: &str| {
            nt.get(name)
                .copied()
                .ok_or_else(|| Error::InvalidGrammar(format!("undeclared nonterminal `{name}`")))
        };
        let start_id = resolve_head(start)?;
        let mut productions = Vec::with_capacity(rules.len());
        for (head, body) in rules {
            let head = resolve_head(head)?;
            let body = body
                .iter()
                .map(|tok| {
                    nt.get(tok)
                        .map(|&i| GSym::N(i))
                        .or_else(|| t.get(tok).map(|&i| GSym::T(i)))
                        .ok_or_else(|| Error::InvalidGrammar(format!("undeclared symbol `{tok}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            productions.push(Production { head, body });
        }
        Self::from_parts(nonterminals, terminals, start_id, productions)
    }

    pub fn from_parts(
        nonterminals: Vec<Symbol>,
        terminals: Vec<Symbol>,
        start: usize,
        mut productions: Vec<Production>,
    ) -> Result<Self> {
        let mut names = HashSet::new();
        for s in nonterminals.iter().chain(&terminals) {
            if !names.insert(s.as_str()) {
                return Err(Error::InvalidGrammar(format!(
                    "symbol `{s}` declared twice or as both terminal and nonterminal"
                )));
            }
        }
        if start >= nonterminals.len() {
            return Err(Error::InvalidGrammar("start symbol is not a nonterminal".into()));
        }
        for p in &productions {
            let bad = p.head >= nonterminals.len()
                || p.body.iter().any(|s| match *s {
                    GSym::T(i) => i >= terminals.len(),
                    GSym::N(i) => i >= nonterminals.len(),
                });
            if bad {
                return Err(Error::InvalidGrammar("production references an undeclared symbol".into()));
            }
        }
        productions.sort();
        productions.dedup();
        Ok(Cfg {
            nonterminals,
            terminals,
            start,
            productions,
        })
    }

    pub fn nonterminals(&self) -> &[Symbol] {
        &self.nonterminals
    }

    pub fn terminals(&self) -> &[Symbol] {
        &self.terminals
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn start_name(&self) -> &str {
        &self.nonterminals[self.start]
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    pub fn name(&self, s: GSym) -> &str {
        match s {
            GSym::T(i) => &self.terminals[i],
            GSym::N(i) => &self.nonterminals[i],
        }
    }

    pub fn encode_word(&self, word: &[Symbol]) -> Result<Vec<usize>> {
        word.iter()
            .map(|s| {
                self.terminals
                    .iter()
                    .position(|t| t == s)
                    .ok_or_else(|| Error::UnknownSymbol(s.clone()))
            })
            .collect()
    }

    pub fn decode_word(&self, word: &[usize]) -> Word {
        word.iter().map(|&i| self.terminals[i].clone()).collect()
    }

    fn generating(&self) -> Vec<bool> {
        let mut gen = vec![false; self.nonterminals.len()];
        let mut changed = true;
        while changed {
            changed = false;
            for p in &self.productions {
                if !gen[p.head]
                    && p.body.iter().all(|s| match *s {
                        GSym::T(_) => true,
                        GSym::N(b) => gen[b],
                    })
                {
                    gen[p.head] = true;
                    changed = true;
                }
            }
        }
        gen
    }

    /// Removes non-generating then unreachable nonterminals. A grammar whose
    /// start symbol generates nothing becomes the canonical empty grammar:
    /// only the start symbol, no productions, terminals unchanged.
    pub fn reduce(&self) -> Cfg {
        let gen = self.generating();
        if !gen[self.start] {
            return Cfg {
                nonterminals: vec![self.start_name().to_string()],
                terminals: self.terminals.clone(),
                start: 0,
                productions: Vec::new(),
            };
        }
        let productive: Vec<&Production> = self
            .productions
            .iter()
            .filter(|p| gen[p.head] && p.body.iter().all(|s| !matches!(*s, GSym::N(b) if !gen[b])))
            .collect();
        let mut by_head: Vec<Vec<&Production>> = vec![Vec::new(); self.nonterminals.len()];
        for p in &productive {
            by_head[p.head].push(p);
        }
        let mut reach = vec![false; self.nonterminals.len()];
        reach[self.start] = true;
        let mut stack = vec![self.start];
        while let Some(a) = stack.pop() {
            for p in &by_head[a] {
                for s in &p.body {
                    if let GSym::N(b) = *s {
                        if !reach[b] {
                            reach[b] = true;
                            stack.push(b);
                        }
                    }
                }
            }
        }
        let mut renum = vec![usize::MAX; self.nonterminals.len()];
        let mut kept = Vec::new();
        for (i, name) in self.nonterminals.iter().enumerate() {
            if reach[i] {
                renum[i] = kept.len();
                kept.push(name.clone());
            }
        }
        let mut productions: Vec<Production> = productive
            .into_iter()
            .filter(|p| reach[p.head])
            .map(|p| Production {
                head: renum[p.head],
                body: p
                    .body
                    .iter()
                    .map(|s| match *s {
                        GSym::N(b) => GSym::N(renum[b]),
                        t => t,
                    })
                    .collect(),
            })
            .collect();
        productions.sort();
        productions.dedup();
        Cfg {
            nonterminals: kept,
            terminals: self.terminals.clone(),
            start: renum[self.start],
            productions,
        }
    }

    /// Exact size of the language, or `Infinite`.
    ///
    /// Infiniteness is decided on the reduced grammar: the language is
    /// infinite iff some production `A -> … B …` whose other body symbols can
    /// derive a nonempty word closes a cycle `B =>* … A …`. Finite languages
    /// are materialized bottom-up as deduplicated word sets, so ambiguous
    /// grammars are counted correctly. `word_budget` caps the total number of
    /// words held at once.
    pub fn cardinality(&self, word_budget: usize) -> Result<Count> {
        let g = self.reduce();
        if g.productions.is_empty() {
            return Ok(Count::zero());
        }
        let n = g.nonterminals.len();
        // Nonterminals deriving some nonempty word.
        let mut nonempty = vec![false; n];
        let mut changed = true;
        while changed {
            changed = false;
            for p in &g.productions {
                if !nonempty[p.head]
                    && p.body.iter().any(|s| match *s {
                        GSym::T(_) => true,
                        GSym::N(b) => nonempty[b],
                    })
                {
                    nonempty[p.head] = true;
                    changed = true;
                }
            }
        }
        let mut graph = DiGraph::<(), bool>::with_capacity(n, g.productions.len());
        let nodes: Vec<_> = (0..n).map(|_| graph.add_node(())).collect();
        for p in &g.productions {
            for (i, s) in p.body.iter().enumerate() {
                if let GSym::N(b) = *s {
                    let pumps = p.body.iter().enumerate().any(|(j, o)| {
                        j != i
                            && match *o {
                                GSym::T(_) => true,
                                GSym::N(c) => nonempty[c],
                            }
                    });
                    graph.add_edge(nodes[p.head], nodes[b], pumps);
                }
            }
        }
        let sccs = tarjan_scc(&graph);
        let mut component = vec![0usize; n];
        for (c, members) in sccs.iter().enumerate() {
            for node in members {
                component[node.index()] = c;
            }
        }
        let infinite = graph.edge_indices().any(|e| {
            let (a, b) = graph.edge_endpoints(e).expect("edge exists");
            graph[e] && component[a.index()] == component[b.index()]
        });
        if infinite {
            return Ok(Count::Infinite);
        }

        // Components arrive in reverse topological order: dependencies first.
        let mut words: Vec<HashSet<Vec<usize>>> = vec![HashSet::new(); n];
        let mut by_head: Vec<Vec<&Production>> = vec![Vec::new(); n];
        for p in &g.productions {
            by_head[p.head].push(p);
        }
        let mut held = 0usize;
        for members in &sccs {
            // Cycles inside a component add no symbols, so iterate to a fixpoint.
            loop {
                let mut grew = false;
                for node in members {
                    let a = node.index();
                    for p in &by_head[a] {
                        for w in concatenations(&p.body, &words, word_budget)? {
                            if words[a].insert(w) {
                                grew = true;
                                held += 1;
                                if held > word_budget {
                                    return Err(Error::ResourceCap(format!(
                                        "grammar language exceeds {word_budget} materialized words"
                                    )));
                                }
                            }
                        }
                    }
                }
                if !grew {
                    break;
                }
            }
        }
        Ok(Count::from(words[g.start].len()))
    }

    /// The finite language as a sorted word set; `ResourceCap` past the
    /// budget and `InvalidGrammar` when the language is infinite.
    pub fn finite_language(&self, word_budget: usize) -> Result<BTreeSet<Word>> {
        if self.cardinality(word_budget)? == Count::Infinite {
            return Err(Error::InvalidGrammar("language is infinite".into()));
        }
        let g = self.reduce();
        let mut words: Vec<HashSet<Vec<usize>>> = vec![HashSet::new(); g.nonterminals.len()];
        loop {
            let mut grew = false;
            for p in &g.productions {
                for w in concatenations(&p.body, &words, word_budget)? {
                    grew |= words[p.head].insert(w);
                }
            }
            if !grew {
                break;
            }
        }
        if g.productions.is_empty() {
            return Ok(BTreeSet::new());
        }
        Ok(words[g.start].iter().map(|w| g.decode_word(w)).collect())
    }

    pub fn member(&self, word: &[Symbol]) -> Result<bool> {
        let encoded = self.encode_word(word)?;
        Ok(self.parser().accepts(&encoded))
    }

    /// Chart parser over the binarized grammar, reusable across words.
    pub fn parser(&self) -> ChartParser {
        ChartParser::new(self)
    }
}

/// Every concatenation of one word from each body symbol's current set.
fn concatenations(
    body: &[GSym],
    words: &[HashSet<Vec<usize>>],
    budget: usize,
) -> Result<Vec<Vec<usize>>> {
    let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
    for s in body {
        acc = match *s {
            GSym::T(t) => acc
                .into_iter()
                .map(|mut w| {
                    w.push(t);
                    w
                })
                .collect(),
            GSym::N(b) => {
                if words[b].is_empty() {
                    return Ok(Vec::new());
                }
                if acc.len().saturating_mul(words[b].len()) > budget {
                    return Err(Error::ResourceCap(format!(
                        "grammar language exceeds {budget} materialized words"
                    )));
                }
                let mut next = Vec::with_capacity(acc.len() * words[b].len());
                for prefix in &acc {
                    for suffix in &words[b] {
                        let mut w = prefix.clone();
                        w.extend_from_slice(suffix);
                        next.push(w);
                    }
                }
                next
            }
        };
    }
    Ok(acc)
}

/// CYK-style recognizer over a grammar whose bodies have length at most two.
///
/// Chart cells hold every symbol (terminal or nonterminal) deriving the
/// span. Unit steps, including those through nullable partners, are closed
/// with a precomputed upward relation, so no ε-elimination is needed.
#[derive(Clone, Debug)]
pub struct ChartParser {
    terminals: usize,
    symbols: usize,
    start: usize,
    start_nullable: bool,
    /// For each left symbol: `(right symbol, head)` of binary productions.
    binary_by_left: Vec<Vec<(usize, usize)>>,
    /// Reflexive-transitive unit closure: symbols derivable upward from each symbol.
    up: Vec<Vec<usize>>,
}

impl ChartParser {
    fn new(g: &Cfg) -> Self {
        let t = g.terminals.len();
        let id = |s: GSym| match s {
            GSym::T(i) => i,
            GSym::N(i) => t + i,
        };
        let mut heads_count = t + g.nonterminals.len();
        // Bodies as symbol ids; heads are symbol ids too.
        let mut rules: Vec<(usize, Vec<usize>)> = Vec::new();
        for p in &g.productions {
            let head = t + p.head;
            let body: Vec<usize> = p.body.iter().map(|&s| id(s)).collect();
            if body.len() <= 2 {
                rules.push((head, body));
                continue;
            }
            let mut left = head;
            for (i, &sym) in body.iter().enumerate() {
                if i == body.len() - 2 {
                    rules.push((left, vec![sym, body[i + 1]]));
                    break;
                }
                let fresh = heads_count;
                heads_count += 1;
                rules.push((left, vec![sym, fresh]));
                left = fresh;
            }
        }
        let symbols = heads_count;
        let mut nullable = vec![false; symbols];
        let mut changed = true;
        while changed {
            changed = false;
            for (h, body) in &rules {
                if !nullable[*h] && body.iter().all(|&s| nullable[s]) {
                    nullable[*h] = true;
                    changed = true;
                }
            }
        }
        let mut unit_up: Vec<Vec<usize>> = vec![Vec::new(); symbols];
        let mut binary_by_left: Vec<Vec<(usize, usize)>> = vec![Vec::new(); symbols];
        for (h, body) in &rules {
            match body.as_slice() {
                [x] => unit_up[*x].push(*h),
                [x, y] => {
                    binary_by_left[*x].push((*y, *h));
                    if nullable[*y] {
                        unit_up[*x].push(*h);
                    }
                    if nullable[*x] {
                        unit_up[*y].push(*h);
                    }
                }
                _ => {}
            }
        }
        let up = (0..symbols)
            .map(|s| {
                let mut seen = vec![false; symbols];
                seen[s] = true;
                let mut stack = vec![s];
                let mut out = vec![s];
                while let Some(x) = stack.pop() {
                    for &h in &unit_up[x] {
                        if !seen[h] {
                            seen[h] = true;
                            out.push(h);
                            stack.push(h);
                        }
                    }
                }
                out
            })
            .collect();
        ChartParser {
            terminals: t,
            symbols,
            start: t + g.start,
            start_nullable: nullable[t + g.start] && !g.productions.is_empty(),
            binary_by_left,
            up,
        }
    }

    /// Membership of a word given as terminal indices.
    pub fn accepts(&self, word: &[usize]) -> bool {
        let n = word.len();
        if n == 0 {
            return self.start_nullable;
        }
        if word.iter().any(|&t| t >= self.terminals) {
            return false;
        }
        // chart[i][len - 1]: symbols deriving word[i..i + len].
        let mut chart: Vec<Vec<Vec<bool>>> = vec![Vec::with_capacity(n); n];
        let mut lists: Vec<Vec<Vec<usize>>> = vec![Vec::with_capacity(n); n];
        for i in 0..n {
            let mut cell = vec![false; self.symbols];
            let mut list = Vec::new();
            for &s in &self.up[word[i]] {
                if !cell[s] {
                    cell[s] = true;
                    list.push(s);
                }
            }
            chart[i].push(cell);
            lists[i].push(list);
        }
        for len in 2..=n {
            for i in 0..=n - len {
                let mut cell = vec![false; self.symbols];
                let mut list = Vec::new();
                for split in 1..len {
                    let right_cell = &chart[i + split][len - split - 1];
                    for &x in &lists[i][split - 1] {
                        for &(y, h) in &self.binary_by_left[x] {
                            if right_cell[y] && !cell[h] {
                                for &u in &self.up[h] {
                                    if !cell[u] {
                                        cell[u] = true;
                                        list.push(u);
                                    }
                                }
                            }
                        }
                    }
                }
                chart[i].push(cell);
                lists[i].push(list);
            }
        }
        chart[0][n - 1][self.start]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::chars_word;

    fn strs(v: &[&str]) -> Vec<Symbol> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn anbn() -> Cfg {
        Cfg::new(strs(&["S"]), strs(&["0", "1"]), "S", &[("S", vec!["0", "S", "1"]), ("S", vec![])]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(Cfg::new(strs(&["S"]), strs(&["a"]), "T", &[]).is_err());
        assert!(Cfg::new(strs(&["S"]), strs(&["a"]), "S", &[("S", vec!["b"])]).is_err());
        assert!(Cfg::new(strs(&["S"]), strs(&["S"]), "S", &[]).is_err());
    }

    #[test]
    fn reduce_non_generating_start() {
        let g = Cfg::new(strs(&["S", "A", "B"]), strs(&["a"]), "S", &[("S", vec!["A", "B"]), ("A", vec!["a"])])
            .unwrap();
        let r = g.reduce();
        assert!(r.productions().is_empty());
        assert_eq!(r.nonterminals(), ["S"]);
        assert_eq!(r.cardinality(100).unwrap(), Count::zero());
        assert!(!r.member(&chars_word("a")).unwrap());
        assert!(!r.member(&[]).unwrap());
    }

    #[test]
    fn reduce_keeps_useful_grammar() {
        let g = Cfg::new(strs(&["S"]), strs(&["a"]), "S", &[("S", vec!["a"])]).unwrap();
        assert_eq!(g.reduce(), g);
        let with_junk = Cfg::new(
            strs(&["S", "U", "D"]),
            strs(&["a"]),
            "S",
            &[("S", vec!["a"]), ("U", vec!["a"]), ("D", vec!["D"])],
        )
        .unwrap();
        let r = with_junk.reduce();
        assert_eq!(r.nonterminals(), ["S"]);
        assert_eq!(r.reduce(), r);
    }

    #[test]
    fn cardinality_cases() {
        let eps = Cfg::new(strs(&["S"]), vec![], "S", &[("S", vec![])]).unwrap();
        assert_eq!(eps.cardinality(10).unwrap(), Count::from(1u64));
        let inf = Cfg::new(strs(&["S"]), strs(&["a"]), "S", &[("S", vec!["a", "S"]), ("S", vec!["a"])]).unwrap();
        assert_eq!(inf.cardinality(10).unwrap(), Count::Infinite);
        let dup = Cfg::new(
            strs(&["S", "A", "B"]),
            strs(&["a", "b"]),
            "S",
            &[
                ("S", vec!["A", "B"]),
                ("S", vec!["a", "a"]),
                ("A", vec!["a"]),
                ("A", vec!["b"]),
                ("B", vec!["a"]),
                ("B", vec!["b"]),
            ],
        )
        .unwrap();
        assert_eq!(dup.cardinality(100).unwrap(), Count::from(4u64));
        let words: Vec<String> = dup.finite_language(100).unwrap().iter().map(|w| w.concat()).collect();
        assert_eq!(words, ["aa", "ab", "ba", "bb"]);
    }

    #[test]
    fn unit_and_epsilon_cycles_stay_finite() {
        // S -> A, A -> S | B B, B -> eps | a: cycles add no symbols.
        let g = Cfg::new(
            strs(&["S", "A", "B"]),
            strs(&["a"]),
            "S",
            &[
                ("S", vec!["A"]),
                ("A", vec!["S"]),
                ("A", vec!["B", "B"]),
                ("B", vec![]),
                ("B", vec!["a"]),
            ],
        )
        .unwrap();
        assert_eq!(g.cardinality(100).unwrap(), Count::from(3u64));
        // A -> A B with B nullable only: still finite.
        let h = Cfg::new(
            strs(&["S", "B"]),
            strs(&["a"]),
            "S",
            &[("S", vec!["S", "B"]), ("S", vec!["a"]), ("B", vec![])],
        )
        .unwrap();
        assert_eq!(h.cardinality(100).unwrap(), Count::from(1u64));
    }

    #[test]
    fn budget_is_enforced() {
        let g = Cfg::new(
            strs(&["S", "B"]),
            strs(&["0", "1"]),
            "S",
            &[("S", vec!["B", "B", "B", "B", "B"]), ("B", vec!["0"]), ("B", vec!["1"])],
        )
        .unwrap();
        assert_eq!(g.cardinality(1000).unwrap(), Count::from(32u64));
        assert!(matches!(g.cardinality(10), Err(Error::ResourceCap(_))));
    }

    #[test]
    fn chart_membership() {
        let g = anbn();
        assert!(g.member(&[]).unwrap());
        assert!(g.member(&chars_word("0011")).unwrap());
        assert!(!g.member(&chars_word("011")).unwrap());
        assert!(!g.member(&chars_word("10")).unwrap());
        assert!(matches!(g.member(&chars_word("2")), Err(Error::UnknownSymbol(_))));
        let eps = Cfg::new(strs(&["S"]), vec![], "S", &[("S", vec![])]).unwrap();
        assert!(eps.member(&[]).unwrap());
    }

    #[test]
    fn chart_handles_long_bodies_and_nullable_partners() {
        // S -> X a X b X with X -> eps | c.
        let g = Cfg::new(
            strs(&["S", "X"]),
            strs(&["a", "b", "c"]),
            "S",
            &[("S", vec!["X", "a", "X", "b", "X"]), ("X", vec![]), ("X", vec!["c"])],
        )
        .unwrap();
        for (w, ok) in [("ab", true), ("cab", true), ("acbc", true), ("cacbc", true), ("ba", false), ("accb", false)] {
            assert_eq!(g.member(&chars_word(w)).unwrap(), ok, "{w}");
        }
        assert_eq!(g.cardinality(100).unwrap(), Count::from(8u64));
    }
}

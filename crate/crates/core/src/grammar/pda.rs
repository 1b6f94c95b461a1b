use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::automaton::Symbol;
use crate::error::{Error, Result};
use crate::grammar::cfg::{Cfg, GSym, Production};

/// One transition `(from, input or ε, popped top) -> (to, pushed)`.
///
/// `push` lists the new stack contents top first: after the move the
/// stack reads `push[0] push[1] … rest`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PdaRule {
    pub from: usize,
    pub input: Option<usize>,
    pub pop: usize,
    pub to: usize,
    pub push: Vec<usize>,
}

/// A nondeterministic pushdown automaton accepting by final state with
/// any residual stack. Every move pops the top symbol, so an empty stack
/// blocks the run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pda {
    states: usize,
    input: Vec<Symbol>,
    stack: Vec<Symbol>,
    initial: usize,
    initial_stack: usize,
    finals: BTreeSet<usize>,
    rules: BTreeSet<PdaRule>,
}

/// Bounds for configuration search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PdaCaps {
    pub max_stack: usize,
    pub max_configs: usize,
}

impl PdaCaps {
    /// Caps adequate for the PDAs built in this crate, whose silent moves
    /// push at most a bounded amount per input symbol.
    pub fn for_input(pda: &Pda, len: usize) -> Self {
        PdaCaps {
            max_stack: 2 + (len + 2) * pda.max_push().max(1),
            max_configs: 2_000_000,
        }
    }
}

fn reserved(sym: &str) -> bool {
    sym.is_empty() || sym == "eps" || sym.chars().any(char::is_whitespace)
}

impl Pda {
    pub fn new(
        states: usize,
        input: Vec<Symbol>,
        stack: Vec<Symbol>,
        initial: usize,
        initial_stack: usize,
        finals: impl IntoIterator<Item = usize>,
        rules: impl IntoIterator<Item = PdaRule>,
    ) -> Result<Self> {
        for (kind, syms) in [("input", &input), ("stack", &stack)] {
            let mut seen = HashSet::new();
            for s in syms {
                if reserved(s) {
                    return Err(Error::InvalidPda(format!("{kind} symbol `{s}` is not allowed")));
                }
                if !seen.insert(s) {
                    return Err(Error::InvalidPda(format!("duplicate {kind} symbol `{s}`")));
                }
            }
        }
        if initial >= states {
            return Err(Error::InvalidPda("initial state out of range".into()));
        }
        if initial_stack >= stack.len() {
            return Err(Error::InvalidPda("initial stack symbol out of range".into()));
        }
        let finals: BTreeSet<usize> = finals.into_iter().collect();
        if finals.iter().any(|&f| f >= states) {
            return Err(Error::InvalidPda("final state out of range".into()));
        }
        let rules: BTreeSet<PdaRule> = rules.into_iter().collect();
        for r in &rules {
            if r.from >= states
                || r.to >= states
                || r.pop >= stack.len()
                || r.input.is_some_and(|a| a >= input.len())
                || r.push.iter().any(|&x| x >= stack.len())
            {
                return Err(Error::InvalidPda("transition references an undeclared state or symbol".into()));
            }
        }
        Ok(Pda {
            states,
            input,
            stack,
            initial,
            initial_stack,
            finals,
            rules,
        })
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn input_alphabet(&self) -> &[Symbol] {
        &self.input
    }

    pub fn stack_alphabet(&self) -> &[Symbol] {
        &self.stack
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn initial_stack(&self) -> usize {
        self.initial_stack
    }

    pub fn finals(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    pub fn rules(&self) -> &BTreeSet<PdaRule> {
        &self.rules
    }

    pub fn max_push(&self) -> usize {
        self.rules.iter().map(|r| r.push.len()).max().unwrap_or(0)
    }

    pub fn encode_word(&self, word: &[Symbol]) -> Result<Vec<usize>> {
        word.iter()
            .map(|s| {
                self.input
                    .iter()
                    .position(|t| t == s)
                    .ok_or_else(|| Error::UnknownSymbol(s.clone()))
            })
            .collect()
    }

    /// Rules indexed by `(state, top)`.
    pub(crate) fn rule_index(&self) -> HashMap<(usize, usize), Vec<&PdaRule>> {
        let mut index: HashMap<(usize, usize), Vec<&PdaRule>> = HashMap::new();
        for r in &self.rules {
            index.entry((r.from, r.pop)).or_default().push(r);
        }
        index
    }

    pub fn member(&self, word: &[Symbol], caps: PdaCaps) -> Result<bool> {
        let encoded = self.encode_word(word)?;
        self.member_indices(&encoded, caps)
    }

    /// Breadth-first search over `(state, position, stack)` configurations.
    /// Stacks are stored bottom first.
    pub fn member_indices(&self, word: &[usize], caps: PdaCaps) -> Result<bool> {
        let index = self.rule_index();
        let start = (self.initial, 0usize, vec![self.initial_stack]);
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start.clone());
        queue.push_back(start);
        let mut truncated = false;
        while let Some((q, pos, stack)) = queue.pop_front() {
            if pos == word.len() && self.finals.contains(&q) {
                return Ok(true);
            }
            let Some(&top) = stack.last() else { continue };
            let Some(rules) = index.get(&(q, top)) else { continue };
            for r in rules {
                let next_pos = match r.input {
                    None => pos,
                    Some(a) if pos < word.len() && word[pos] == a => pos + 1,
                    Some(_) => continue,
                };
                let mut next = stack.clone();
                next.pop();
                next.extend(r.push.iter().rev());
                if next.len() > caps.max_stack {
                    truncated = true;
                    continue;
                }
                let config = (r.to, next_pos, next);
                if seen.contains(&config) {
                    continue;
                }
                if seen.len() >= caps.max_configs {
                    truncated = true;
                    continue;
                }
                seen.insert(config.clone());
                queue.push_back(config);
            }
        }
        if truncated {
            Err(Error::CapExceeded(format!(
                "pda search hit caps (stack {}, configurations {})",
                caps.max_stack, caps.max_configs
            )))
        } else {
            Ok(false)
        }
    }

    /// Converts to an equivalent grammar.
    ///
    /// Final-state acceptance is first compiled to empty-stack acceptance:
    /// a fresh start state pushes the original start symbol over a fresh
    /// bottom marker, and every final state may enter a draining state that
    /// pops everything. Nonterminal `<p,X,r>` then derives exactly the
    /// inputs that take `p` with `X` on top to `r` with `X` consumed. Only
    /// triples realizable by some run are materialized.
    pub fn to_cfg(&self) -> Cfg {
        let s0 = self.states;
        let drain = self.states + 1;
        let bottom = self.stack.len();
        let stack_syms = bottom + 1;
        let mut rules: Vec<PdaRule> = self.rules.iter().cloned().collect();
        rules.push(PdaRule {
            from: s0,
            input: None,
            pop: bottom,
            to: self.initial,
            push: vec![self.initial_stack, bottom],
        });
        for from in self.finals.iter().copied().chain([drain]) {
            for x in 0..stack_syms {
                rules.push(PdaRule {
                    from,
                    input: None,
                    pop: x,
                    to: drain,
                    push: Vec::new(),
                });
            }
        }

        // Saturate realizable summaries (p, X) -> {r}.
        let mut summary: HashMap<(usize, usize), BTreeSet<usize>> = HashMap::new();
        loop {
            let mut grew = false;
            for r in &rules {
                for end in chain_ends(r.to, &r.push, &summary) {
                    if summary.entry((r.from, r.pop)).or_default().insert(end) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }

        let bottom_name = fresh_name("Z", &self.stack);
        let stack_name = |x: usize| if x == bottom { bottom_name.as_str() } else { self.stack[x].as_str() };
        let state_name = |q: usize| {
            if q == s0 {
                "s".to_string()
            } else if q == drain {
                "d".to_string()
            } else {
                q.to_string()
            }
        };

        let mut ids: HashMap<(usize, usize, usize), usize> = HashMap::new();
        let mut names: Vec<Symbol> = Vec::new();
        let start_name = fresh_name("S", &self.input);
        names.push(start_name);
        let mut id_of = |t: (usize, usize, usize), names: &mut Vec<Symbol>| {
            *ids.entry(t).or_insert_with(|| {
                names.push(format!("<{},{},{}>", state_name(t.0), stack_name(t.1), state_name(t.2)));
                names.len() - 1
            })
        };

        let mut productions = Vec::new();
        let root = id_of((s0, bottom, drain), &mut names);
        productions.push(Production {
            head: 0,
            body: vec![GSym::N(root)],
        });
        for r in &rules {
            let Some(ends) = summary.get(&(r.from, r.pop)) else { continue };
            if ends.is_empty() {
                continue;
            }
            // Every chain r.to -Y1-> s1 -Y2-> … -> end through realizable triples.
            let mut partial: Vec<(usize, Vec<(usize, usize, usize)>)> = vec![(r.to, Vec::new())];
            for &y in &r.push {
                let mut next = Vec::new();
                for (at, path) in &partial {
                    if let Some(targets) = summary.get(&(*at, y)) {
                        for &t in targets {
                            let mut p = path.clone();
                            p.push((*at, y, t));
                            next.push((t, p));
                        }
                    }
                }
                partial = next;
            }
            for (end, path) in partial {
                let head = id_of((r.from, r.pop, end), &mut names);
                let mut body = Vec::with_capacity(path.len() + 1);
                if let Some(a) = r.input {
                    body.push(GSym::T(a));
                }
                for t in path {
                    body.push(GSym::N(id_of(t, &mut names)));
                }
                productions.push(Production { head, body });
            }
        }
        let nonterminals = uniquify(names, &self.input);
        Cfg::from_parts(nonterminals, self.input.clone(), 0, productions)
            .expect("triple construction yields a well-formed grammar")
            .reduce()
    }
}

fn chain_ends(start: usize, push: &[usize], summary: &HashMap<(usize, usize), BTreeSet<usize>>) -> BTreeSet<usize> {
    let mut at: BTreeSet<usize> = BTreeSet::from([start]);
    for &y in push {
        let mut next = BTreeSet::new();
        for q in &at {
            if let Some(t) = summary.get(&(*q, y)) {
                next.extend(t.iter().copied());
            }
        }
        if next.is_empty() {
            return next;
        }
        at = next;
    }
    at
}

/// `base` with primes appended until it is not in `taken`.
pub(crate) fn fresh_name(base: &str, taken: &[Symbol]) -> Symbol {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

fn uniquify(names: Vec<Symbol>, terminals: &[Symbol]) -> Vec<Symbol> {
    let mut taken: HashSet<Symbol> = terminals.iter().cloned().collect();
    names
        .into_iter()
        .map(|mut n| {
            while taken.contains(&n) {
                n.push('\'');
            }
            taken.insert(n.clone());
            n
        })
        .collect()
}

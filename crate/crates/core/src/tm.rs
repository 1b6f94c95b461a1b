//! Single-tape Turing machines without input, their computation-history
//! encoding as a pair of pushdown automata, and the halting decision
//! procedure driven by a generatability bound.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::automaton::{Symbol, Word};
use crate::count::{ceil_log2, log2_above, pow2, Count};
use crate::error::{Error, Result};
use crate::grammar::pda::{fresh_name, Pda, PdaRule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Move {
    Left,
    Right,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Move::Left => "L",
            Move::Right => "R",
        })
    }
}

/// A deterministic machine on a right-infinite tape, started on a blank tape.
/// A missing transition stalls the machine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuringMachine {
    tape: Vec<Symbol>,
    blank: usize,
    states: usize,
    initial: usize,
    halting: BTreeSet<usize>,
    rules: BTreeMap<(usize, usize), (usize, usize, Move)>,
}

fn bad_tape_symbol(s: &str) -> bool {
    s.is_empty()
        || s == "eps"
        || s.starts_with('#')
        || s.chars().any(|c| c.is_whitespace() || "[],.@".contains(c))
}

impl TuringMachine {
    pub fn new(
        tape: Vec<Symbol>,
        blank: &str,
        states: usize,
        initial: usize,
        halting: impl IntoIterator<Item = usize>,
        rules: &[(usize, &str, usize, &str, Move)],
    ) -> Result<Self> {
        let pos = |s: &str| {
            tape.iter()
                .position(|t| t == s)
                .ok_or_else(|| Error::InvalidMachine(format!("undeclared tape symbol `{s}`")))
        };
        let blank = pos(blank)?;
        let mut map = BTreeMap::new();
        for &(q, a, p, b, m) in rules {
            if map.insert((q, pos(a)?), (p, pos(b)?, m)).is_some() {
                return Err(Error::InvalidMachine(format!("two transitions for state {q} on `{a}`")));
            }
        }
        Self::from_parts(tape, blank, states, initial, halting.into_iter().collect(), map)
    }

    pub fn from_parts(
        tape: Vec<Symbol>,
        blank: usize,
        states: usize,
        initial: usize,
        halting: BTreeSet<usize>,
        rules: BTreeMap<(usize, usize), (usize, usize, Move)>,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        for s in &tape {
            if bad_tape_symbol(s) {
                return Err(Error::InvalidMachine(format!("tape symbol `{s}` is not allowed")));
            }
            if !seen.insert(s) {
                return Err(Error::InvalidMachine(format!("duplicate tape symbol `{s}`")));
            }
        }
        if blank >= tape.len() {
            return Err(Error::InvalidMachine("blank is not a tape symbol".into()));
        }
        if initial >= states {
            return Err(Error::InvalidMachine("initial state out of range".into()));
        }
        if halting.iter().any(|&h| h >= states) {
            return Err(Error::InvalidMachine("halting state out of range".into()));
        }
        for (&(q, a), &(p, b, _)) in &rules {
            if q >= states || p >= states || a >= tape.len() || b >= tape.len() {
                return Err(Error::InvalidMachine("transition references an undeclared state or symbol".into()));
            }
            if halting.contains(&q) {
                return Err(Error::InvalidMachine(format!("halting state {q} has an outgoing transition")));
            }
        }
        Ok(TuringMachine {
            tape,
            blank,
            states,
            initial,
            halting,
            rules,
        })
    }

    pub fn tape_alphabet(&self) -> &[Symbol] {
        &self.tape
    }

    pub fn blank(&self) -> usize {
        self.blank
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn halting(&self) -> &BTreeSet<usize> {
        &self.halting
    }

    pub fn rules(&self) -> &BTreeMap<(usize, usize), (usize, usize, Move)> {
        &self.rules
    }

    pub fn composite_name(&self, q: usize, a: usize) -> Symbol {
        format!("[{q},{}]", self.tape[a])
    }

    pub fn initial_config(&self) -> Config {
        Config {
            cells: vec![self.blank],
            head: 0,
            state: self.initial,
        }
    }

    /// The successor configuration, or `None` when halted or stalled.
    pub fn step(&self, c: &Config) -> Option<Config> {
        let &(p, b, m) = self.rules.get(&(c.state, c.cells[c.head]))?;
        let mut cells = c.cells.clone();
        cells[c.head] = b;
        let head = match m {
            Move::Left => c.head.checked_sub(1)?,
            Move::Right => {
                if c.head + 1 == cells.len() {
                    cells.push(self.blank);
                }
                c.head + 1
            }
        };
        Some(Config { cells, head, state: p })
    }

    /// Runs for at most `max_configs` configurations.
    pub fn run(&self, max_configs: usize) -> RunOutcome {
        let mut configs = vec![self.initial_config()];
        loop {
            let current = configs.last().expect("nonempty history");
            if self.halting.contains(&current.state) {
                return RunOutcome { configs, end: RunEnd::Halted };
            }
            if configs.len() >= max_configs {
                return RunOutcome { configs, end: RunEnd::Timeout };
            }
            match self.step(current) {
                Some(next) => configs.push(next),
                None => return RunOutcome { configs, end: RunEnd::Stalled },
            }
        }
    }

    /// Like [`TuringMachine::run`] but keeps only the current configuration;
    /// returns how the run ended and the number of configurations visited.
    pub fn simulate(&self, max_configs: usize) -> (RunEnd, usize) {
        let mut c = self.initial_config();
        let mut seen = 1;
        loop {
            if self.halting.contains(&c.state) {
                return (RunEnd::Halted, seen);
            }
            if seen >= max_configs {
                return (RunEnd::Timeout, seen);
            }
            let Some(&(p, b, m)) = self.rules.get(&(c.state, c.cells[c.head])) else {
                return (RunEnd::Stalled, seen);
            };
            c.cells[c.head] = b;
            match m {
                Move::Left if c.head == 0 => return (RunEnd::Stalled, seen),
                Move::Left => c.head -= 1,
                Move::Right => {
                    c.head += 1;
                    if c.head == c.cells.len() {
                        c.cells.push(self.blank);
                    }
                }
            }
            c.state = p;
            seen += 1;
        }
    }
}

/// Tape contents from cell 0 to the rightmost visited cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Config {
    pub cells: Vec<usize>,
    pub head: usize,
    pub state: usize,
}

impl Config {
    /// The configuration as tokens, the head cell written `[q,a]`.
    pub fn tokens(&self, m: &TuringMachine) -> Word {
        self.cells
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                if i == self.head {
                    m.composite_name(self.state, a)
                } else {
                    m.tape[a].clone()
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunEnd {
    Halted,
    Timeout,
    /// No applicable transition, or a left move at cell 0.
    Stalled,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub configs: Vec<Config>,
    pub end: RunEnd,
}

impl RunOutcome {
    pub fn halted(&self) -> Option<usize> {
        (self.end == RunEnd::Halted).then_some(self.configs.len())
    }
}

/// Index layout shared by both encoded PDAs. Tape symbols and composites
/// use the same index in the input and stack alphabets.
struct Layout<'a> {
    m: &'a TuringMachine,
    t: usize,
}

impl<'a> Layout<'a> {
    fn new(m: &'a TuringMachine) -> Self {
        Layout { m, t: m.tape.len() }
    }

    fn comp(&self, q: usize, a: usize) -> usize {
        self.t + q * self.t + a
    }

    fn delims(&self) -> [usize; 2] {
        let base = self.t + self.m.states * self.t;
        [base, base + 1]
    }

    fn bottom(&self) -> usize {
        self.t + self.m.states * self.t
    }

    fn stack_len(&self) -> usize {
        self.bottom() + 1
    }

    fn plains(&self) -> std::ops::Range<usize> {
        0..self.t
    }

    fn comps(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.m.states).flat_map(move |q| (0..self.t).map(move |a| (q, a)))
    }

    fn input(&self) -> Vec<Symbol> {
        let mut v = self.m.tape.clone();
        v.extend(self.comps().map(|(q, a)| self.m.composite_name(q, a)));
        v.push("#0".into());
        v.push("#1".into());
        v
    }

    fn stack(&self) -> Vec<Symbol> {
        let mut v = self.m.tape.clone();
        v.extend(self.comps().map(|(q, a)| self.m.composite_name(q, a)));
        let z = fresh_name("Z", &v);
        v.push(z);
        v
    }

    /// Transitions with the given direction, as `(q, a, p, b)`.
    fn moves(&self, dir: Move) -> impl Iterator<Item = (usize, usize, usize, usize)> + '_ {
        self.m
            .rules
            .iter()
            .filter(move |(_, &(_, _, d))| d == dir)
            .map(|(&(q, a), &(p, b, _))| (q, a, p, b))
    }
}

#[derive(Default)]
struct RuleSet(Vec<PdaRule>);

impl RuleSet {
    fn add(&mut self, from: usize, input: usize, pop: usize, to: usize, push: Vec<usize>) {
        self.0.push(PdaRule {
            from,
            input: Some(input),
            pop,
            to,
            push,
        });
    }

    /// Reads `input` and leaves the stack unchanged, whatever its top.
    fn keep(&mut self, from: usize, input: usize, to: usize, stack_len: usize) {
        for x in 0..stack_len {
            self.add(from, input, x, to, vec![x]);
        }
    }

    /// Reads `input` and pushes it.
    fn push(&mut self, from: usize, input: usize, to: usize, stack_len: usize) {
        for x in 0..stack_len {
            self.add(from, input, x, to, vec![input, x]);
        }
    }
}

/// Encodes the machine as two PDAs whose languages intersect exactly in
/// the halting history words `C1 #d C2^R #d C3 #d …` with free delimiter
/// bits `#0`/`#1`.
///
/// The first PDA fixes `C1` and checks the steps `(C1,C2), (C3,C4), …` by
/// pushing the odd configuration and popping it against the reversed
/// successor. The second checks `(C2,C3), (C4,C5), …` the same way from the
/// other side, and requires that exactly the last configuration carries a
/// halting state. Every block must hold exactly one composite symbol.
pub fn encode(m: &TuringMachine) -> (Pda, Pda) {
    (encode_first(m), encode_second(m))
}

fn encode_first(m: &TuringMachine) -> Pda {
    let l = Layout::new(m);
    let n = m.states;
    let sl = l.stack_len();
    let z = l.bottom();
    const INIT: usize = 0;
    const C1: usize = 1;
    const ACC_PUSH: usize = 2;
    const SAME: usize = 3;
    const DONE: usize = 4;
    const ACC_CMP: usize = 5;
    const PA: usize = 6;
    const PB: usize = 7;
    let rpend = |p: usize| 8 + p;
    let lnew = |p: usize| 8 + n + p;

    let mut r = RuleSet::default();
    let start = l.comp(m.initial, m.blank);
    r.add(INIT, start, z, C1, vec![start, z]);
    for d in l.delims() {
        r.add(C1, d, start, ACC_PUSH, vec![start]);
    }
    // Compare the reversed successor, right to left, against the pushed block.
    for from in [ACC_PUSH, SAME] {
        for s in l.plains() {
            r.add(from, s, s, SAME, vec![]);
            for p in 0..n {
                r.add(from, l.comp(p, s), s, rpend(p), vec![]);
            }
        }
        for (q, a, p, b) in l.moves(Move::Left) {
            r.add(from, b, l.comp(q, a), lnew(p), vec![]);
        }
    }
    for (q, a, p, b) in l.moves(Move::Right) {
        // The head stepped onto a fresh blank cell at the right end.
        let c = l.comp(q, a);
        r.add(ACC_PUSH, l.comp(p, m.blank), c, rpend(p), vec![c]);
        r.add(rpend(p), b, c, DONE, vec![]);
    }
    for p in 0..n {
        for s in l.plains() {
            r.add(lnew(p), l.comp(p, s), s, DONE, vec![]);
        }
    }
    for s in l.plains() {
        r.add(DONE, s, s, DONE, vec![]);
    }
    for d in l.delims() {
        r.add(DONE, d, z, ACC_CMP, vec![z]);
    }
    // Push the next odd block.
    for from in [ACC_CMP, PA] {
        for s in l.plains() {
            r.push(from, s, PA, sl);
        }
        for (q, a) in l.comps() {
            r.push(from, l.comp(q, a), PB, sl);
        }
    }
    for s in l.plains() {
        r.push(PB, s, PB, sl);
    }
    for d in l.delims() {
        r.keep(PB, d, ACC_PUSH, sl);
    }
    Pda::new(8 + 2 * n, l.input(), l.stack(), INIT, z, [ACC_PUSH, ACC_CMP], r.0)
        .expect("encoded pda is well-formed")
}

fn encode_second(m: &TuringMachine) -> Pda {
    let l = Layout::new(m);
    let n = m.states;
    let sl = l.stack_len();
    let z = l.bottom();
    const FIRST: usize = 0;
    const FIRST_N: usize = 1;
    const FIRST_H: usize = 2;
    const PUSH: usize = 3;
    const PUSH_N: usize = 4;
    const PUSH_H: usize = 5;
    const CMP: usize = 6;
    const DONE_H: usize = 7;
    const DONE_N: usize = 8;
    const FIN: usize = 9;
    let rnew = |p: usize| 10 + p;
    let lpend = |p: usize| 10 + n + p;
    let halts = |q: usize| m.halting.contains(&q);
    let done = |p: usize| if halts(p) { DONE_H } else { DONE_N };

    let mut r = RuleSet::default();
    // First block: format and halting check only.
    for s in l.plains() {
        for from in [FIRST, FIRST_N, FIRST_H] {
            r.add(from, s, z, from, vec![z]);
        }
    }
    for (q, a) in l.comps() {
        r.add(FIRST, l.comp(q, a), z, if halts(q) { FIRST_H } else { FIRST_N }, vec![z]);
    }
    for d in l.delims() {
        r.add(FIRST_N, d, z, PUSH, vec![z]);
        r.add(FIRST_H, d, z, FIN, vec![z]);
    }
    // Push a reversed even block.
    for s in l.plains() {
        for from in [PUSH, PUSH_N, PUSH_H] {
            r.push(from, s, from, sl);
        }
    }
    for (q, a) in l.comps() {
        r.push(PUSH, l.comp(q, a), if halts(q) { PUSH_H } else { PUSH_N }, sl);
    }
    for d in l.delims() {
        r.keep(PUSH_N, d, CMP, sl);
        r.keep(PUSH_H, d, FIN, sl);
    }
    // Compare the next block left to right against the popped one.
    for s in l.plains() {
        r.add(CMP, s, s, CMP, vec![]);
        for p in 0..n {
            r.add(CMP, l.comp(p, s), s, lpend(p), vec![]);
            r.add(rnew(p), l.comp(p, s), s, done(p), vec![]);
        }
    }
    for (q, a, p, b) in l.moves(Move::Right) {
        r.add(CMP, b, l.comp(q, a), rnew(p), vec![]);
    }
    for p in 0..n {
        // The head stepped onto a fresh blank cell at the right end.
        r.add(rnew(p), l.comp(p, m.blank), z, done(p), vec![z]);
    }
    for (q, a, p, b) in l.moves(Move::Left) {
        r.add(lpend(p), b, l.comp(q, a), done(p), vec![]);
    }
    for s in l.plains() {
        r.add(DONE_H, s, s, DONE_H, vec![]);
        r.add(DONE_N, s, s, DONE_N, vec![]);
    }
    for d in l.delims() {
        r.add(DONE_H, d, z, FIN, vec![z]);
        r.add(DONE_N, d, z, PUSH, vec![z]);
    }
    Pda::new(10 + 2 * n, l.input(), l.stack(), FIRST, z, [FIN], r.0).expect("encoded pda is well-formed")
}

/// Largest history length for which all delimiter assignments are listed.
pub const MAX_HISTORY_CONFIGS: usize = 24;

/// The halting history words, built directly from a run: configurations
/// alternately forward and reversed, each followed by `#0` or `#1`. Empty
/// when the machine stalls.
pub fn history_words(m: &TuringMachine, max_configs: usize) -> Result<BTreeSet<Word>> {
    let run = m.run(max_configs);
    match run.end {
        RunEnd::Stalled => return Ok(BTreeSet::new()),
        RunEnd::Timeout => return Err(Error::Timeout(max_configs)),
        RunEnd::Halted => {}
    }
    let t = run.configs.len();
    if t > MAX_HISTORY_CONFIGS {
        return Err(Error::ResourceCap(format!(
            "history of {t} configurations has 2^{t} words"
        )));
    }
    let blocks: Vec<Word> = run
        .configs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut tokens = c.tokens(m);
            if i % 2 == 1 {
                tokens.reverse();
            }
            tokens
        })
        .collect();
    let mut out = BTreeSet::new();
    for bits in 0u64..(1 << t) {
        let mut w = Vec::new();
        for (i, b) in blocks.iter().enumerate() {
            w.extend(b.iter().cloned());
            w.push(if bits >> i & 1 == 1 { "#1" } else { "#0" }.to_string());
        }
        out.insert(w);
    }
    Ok(out)
}

/// Length of each history word, or `None` unless the machine halts.
pub fn history_length(m: &TuringMachine, max_configs: usize) -> Option<usize> {
    let run = m.run(max_configs);
    run.halted()?;
    Some(run.configs.iter().map(|c| c.cells.len() + 1).sum())
}

type PdaConfig = (usize, Vec<usize>);

/// All configurations reachable by silent moves, stacks capped at `cap`.
fn silent_closure(
    index: &HashMap<(usize, usize), Vec<&PdaRule>>,
    start: HashSet<PdaConfig>,
    cap: usize,
) -> HashSet<PdaConfig> {
    let mut out = start.clone();
    let mut stack: Vec<PdaConfig> = start.into_iter().collect();
    while let Some((q, st)) = stack.pop() {
        let Some(&top) = st.last() else { continue };
        for r in index.get(&(q, top)).into_iter().flatten() {
            if r.input.is_some() {
                continue;
            }
            let mut next = st.clone();
            next.pop();
            next.extend(r.push.iter().rev());
            if next.len() > cap {
                continue;
            }
            let c = (r.to, next);
            if out.insert(c.clone()) {
                stack.push(c);
            }
        }
    }
    out
}

fn read_symbol(
    index: &HashMap<(usize, usize), Vec<&PdaRule>>,
    configs: &HashSet<PdaConfig>,
    a: usize,
    cap: usize,
) -> HashSet<PdaConfig> {
    let mut next = HashSet::new();
    for (q, st) in configs {
        let Some(&top) = st.last() else { continue };
        for r in index.get(&(*q, top)).into_iter().flatten() {
            if r.input != Some(a) {
                continue;
            }
            let mut s = st.clone();
            s.pop();
            s.extend(r.push.iter().rev());
            if s.len() <= cap {
                next.insert((r.to, s));
            }
        }
    }
    silent_closure(index, next, cap)
}

/// Every word of length at most `max_len` accepted by both PDAs.
///
/// Simulates both machines in lockstep over a growing set of live
/// prefixes, each carrying the configuration sets of the two PDAs. Stacks
/// are capped at `max_len * max_push + 1`; `budget` bounds the total number
/// of configurations held per layer.
pub fn joint_intersection(p1: &Pda, p2: &Pda, max_len: usize, budget: usize) -> Result<BTreeSet<Word>> {
    if p1.input_alphabet() != p2.input_alphabet() {
        return Err(Error::AlphabetMismatch("the two PDAs read different alphabets".into()));
    }
    let cap1 = max_len * p1.max_push().max(1) + 1;
    let cap2 = max_len * p2.max_push().max(1) + 1;
    let idx1 = p1.rule_index();
    let idx2 = p2.rule_index();
    let start1 = silent_closure(&idx1, HashSet::from([(p1.initial(), vec![p1.initial_stack()])]), cap1);
    let start2 = silent_closure(&idx2, HashSet::from([(p2.initial(), vec![p2.initial_stack()])]), cap2);
    let accepts = |p: &Pda, cs: &HashSet<PdaConfig>| cs.iter().any(|(q, _)| p.finals().contains(q));

    let mut out = BTreeSet::new();
    let mut layer: Vec<(Vec<usize>, HashSet<PdaConfig>, HashSet<PdaConfig>)> = vec![(Vec::new(), start1, start2)];
    for len in 0..=max_len {
        let mut next = Vec::new();
        let mut held = 0usize;
        for (w, c1, c2) in &layer {
            if accepts(p1, c1) && accepts(p2, c2) {
                out.insert(w.iter().map(|&a| p1.input_alphabet()[a].clone()).collect());
            }
            if len == max_len {
                continue;
            }
            for a in 0..p1.input_alphabet().len() {
                let n1 = read_symbol(&idx1, c1, a, cap1);
                if n1.is_empty() {
                    continue;
                }
                let n2 = read_symbol(&idx2, c2, a, cap2);
                if n2.is_empty() {
                    continue;
                }
                held += n1.len() + n2.len();
                if held > budget {
                    return Err(Error::CapExceeded(format!(
                        "joint simulation exceeded {budget} configurations at length {}",
                        len + 1
                    )));
                }
                let mut v = w.clone();
                v.push(a);
                next.push((v, n1, n2));
            }
        }
        layer = next;
        if layer.is_empty() {
            break;
        }
    }
    Ok(out)
}

/// Source of the generatability bound for the infinite case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Oracle {
    /// A caller-supplied bound, assumed truthful.
    Value(BigUint),
    /// Computed by running the machine for up to this many configurations:
    /// `2^t + 1` if it halts with `t` configurations, else `1`. Only as
    /// truthful as that cap is large.
    Auto(usize),
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Halts(usize),
    DoesNotHalt,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Halts(t) => write!(f, "halts {t}"),
            Verdict::DoesNotHalt => f.write_str("does-not-halt"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    /// 1 or 2 when that language was finite, 3 when the oracle was used.
    pub case: u8,
    /// Cardinalities of the two encoded languages, as far as computed.
    pub first: Count,
    pub second: Option<Count>,
    pub oracle_m: Option<BigUint>,
    pub bound: u64,
    pub configs_run: usize,
}

/// Longest run the driver will perform.
pub const MAX_DRIVER_CONFIGS: u64 = 10_000_000;

/// Decides whether `m` halts from a bound under which the two encoded
/// languages form a generatable family.
///
/// If one encoded language is finite with `N` words, any halting history
/// has `2^t <= N` words, so running for the smallest `T` with `2^T > N`
/// configurations settles the question. Otherwise the bound `m` from the
/// oracle satisfies `2^t < m <= 2^T` for the smallest such `T`.
pub fn decide_halting(m: &TuringMachine, oracle: &Oracle, grammar_budget: usize) -> Result<Decision> {
    let (p1, p2) = encode(m);
    let first = p1.to_cfg().cardinality(grammar_budget)?;
    let mut second = None;
    let mut oracle_m = None;
    let (case, bound) = if let Count::Finite(size) = &first {
        (1, log2_above(size))
    } else {
        let c2 = p2.to_cfg().cardinality(grammar_budget)?;
        second = Some(c2.clone());
        if let Count::Finite(size) = &c2 {
            (2, log2_above(size))
        } else {
            let value = match oracle {
                Oracle::Value(v) => v.clone(),
                Oracle::Auto(cap) => match m.simulate(*cap) {
                    (RunEnd::Halted, t) => pow2(t as u64) + BigUint::one(),
                    _ => BigUint::one(),
                },
                Oracle::None => return Err(Error::OracleRequired),
            };
            if value == BigUint::from(0u8) {
                return Err(Error::InvalidParams("oracle bound must be at least 1".into()));
            }
            let t = ceil_log2(&value);
            oracle_m = Some(value);
            (3, t)
        }
    };
    let configs = bound.max(1);
    if configs > MAX_DRIVER_CONFIGS {
        return Err(Error::ResourceCap(format!("bound of {configs} configurations exceeds the run cap")));
    }
    let (end, seen) = m.simulate(configs as usize);
    let verdict = match end {
        RunEnd::Halted => Verdict::Halts(seen),
        _ => Verdict::DoesNotHalt,
    };
    Ok(Decision {
        verdict,
        case,
        first,
        second,
        oracle_m,
        bound,
        configs_run: seen,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::pda::PdaCaps;
    use Move::{Left, Right};

    fn tape() -> Vec<Symbol> {
        vec!["_".into(), "1".into()]
    }

    /// Halts after `t` configurations by writing ones to the right.
    fn counter(t: usize) -> TuringMachine {
        let rules: Vec<(usize, &str, usize, &str, Move)> = (0..t - 1).map(|q| (q, "_", q + 1, "1", Right)).collect();
        TuringMachine::new(tape(), "_", t, 0, [t - 1], &rules).unwrap()
    }

    fn looping() -> TuringMachine {
        TuringMachine::new(tape(), "_", 2, 0, [1], &[(0, "_", 0, "_", Right)]).unwrap()
    }

    /// Moves right then left twice, halting on the way back.
    fn bouncer() -> TuringMachine {
        TuringMachine::new(
            tape(),
            "_",
            4,
            0,
            [3],
            &[(0, "_", 1, "1", Right), (1, "_", 2, "1", Left), (2, "1", 3, "_", Right)],
        )
        .unwrap()
    }

    fn words(set: &BTreeSet<Word>) -> Vec<String> {
        set.iter().map(|w| w.join(".")).collect()
    }

    #[test]
    fn run_examples() {
        let h = counter(1);
        let r = h.run(10);
        assert_eq!(r.halted(), Some(1));
        assert_eq!(r.configs[0].tokens(&h), ["[0,_]"]);
        let one = counter(2);
        let r = one.run(10);
        assert_eq!(r.halted(), Some(2));
        assert_eq!(r.configs[1].tokens(&one), ["1", "[1,_]"]);
        assert_eq!(looping().run(50).end, RunEnd::Timeout);
        assert_eq!(looping().run(50).configs.len(), 50);
        let stall = TuringMachine::new(tape(), "_", 2, 0, [1], &[(0, "_", 1, "1", Left)]).unwrap();
        assert_eq!(stall.run(10).end, RunEnd::Stalled);
    }

    #[test]
    fn simulate_agrees_with_run() {
        for m in [counter(1), counter(3), looping(), bouncer()] {
            for cap in 1..8 {
                let r = m.run(cap);
                assert_eq!(m.simulate(cap), (r.end, r.configs.len()));
            }
        }
        assert_eq!(looping().simulate(1_000_000), (RunEnd::Timeout, 1_000_000));
    }

    #[test]
    fn validation() {
        assert!(TuringMachine::new(tape(), "x", 1, 0, [], &[]).is_err());
        assert!(TuringMachine::new(tape(), "_", 1, 0, [0], &[(0, "_", 0, "_", Right)]).is_err());
        assert!(TuringMachine::new(vec!["[".into()], "[", 1, 0, [], &[]).is_err());
        assert!(TuringMachine::new(vec!["#0".into()], "#0", 1, 0, [], &[]).is_err());
        assert!(TuringMachine::new(tape(), "_", 1, 0, [], &[(0, "_", 0, "_", Right), (0, "_", 0, "1", Left)]).is_err());
    }

    #[test]
    fn history_words_shape() {
        let w = history_words(&counter(1), 10).unwrap();
        assert_eq!(words(&w), ["[0,_].#0", "[0,_].#1"]);
        let w = history_words(&counter(3), 10).unwrap();
        assert_eq!(w.len(), 8);
        assert!(w.iter().all(|x| x.len() == history_length(&counter(3), 10).unwrap()));
        assert!(w.contains(&["[0,_]", "#0", "[1,_]", "1", "#1", "1", "1", "[2,_]", "#0"].map(String::from)[..]));
        assert!(matches!(history_words(&looping(), 20), Err(Error::Timeout(20))));
    }

    #[test]
    fn joint_intersection_matches_history() {
        for m in [counter(1), counter(2), counter(3), bouncer()] {
            let (p1, p2) = encode(&m);
            let len = history_length(&m, 100).unwrap();
            let expected = history_words(&m, 100).unwrap();
            assert_eq!(joint_intersection(&p1, &p2, len + 2, 1_000_000).unwrap(), expected);
            assert!(joint_intersection(&p1, &p2, len - 1, 1_000_000).unwrap().is_empty());
        }
        let (p1, p2) = encode(&looping());
        assert!(joint_intersection(&p1, &p2, 20, 1_000_000).unwrap().is_empty());
    }

    #[test]
    fn encoded_members_accept_history_words() {
        let m = bouncer();
        let (p1, p2) = encode(&m);
        for w in history_words(&m, 100).unwrap() {
            let caps = PdaCaps::for_input(&p1, w.len());
            assert!(p1.member(&w, caps).unwrap());
            assert!(p2.member(&w, caps).unwrap());
        }
    }

    #[test]
    fn encoded_languages_are_infinite_past_one_config() {
        for m in [counter(2), counter(3), bouncer()] {
            let (p1, p2) = encode(&m);
            assert_eq!(p1.to_cfg().cardinality(10_000).unwrap(), Count::Infinite);
            assert_eq!(p2.to_cfg().cardinality(10_000).unwrap(), Count::Infinite);
        }
        let (p1, _) = encode(&counter(1));
        assert_eq!(p1.to_cfg().cardinality(10_000).unwrap(), Count::from(2u64));
    }

    #[test]
    fn driver_cases() {
        let d = decide_halting(&counter(1), &Oracle::None, 10_000).unwrap();
        assert_eq!((d.verdict.clone(), d.case, d.bound), (Verdict::Halts(1), 1, 2));
        let d = decide_halting(&counter(2), &Oracle::Value(BigUint::from(5u8)), 10_000).unwrap();
        assert_eq!((d.verdict.clone(), d.case, d.bound), (Verdict::Halts(2), 3, 3));
        let d = decide_halting(&looping(), &Oracle::Value(BigUint::one()), 10_000).unwrap();
        assert_eq!((d.verdict.clone(), d.case, d.bound, d.configs_run), (Verdict::DoesNotHalt, 3, 0, 1));
        let silent = TuringMachine::new(tape(), "_", 1, 0, [], &[(0, "_", 0, "_", Right)]).unwrap();
        let d = decide_halting(&silent, &Oracle::None, 10_000).unwrap();
        assert_eq!((d.verdict.clone(), d.case), (Verdict::DoesNotHalt, 2));
        assert!(matches!(decide_halting(&looping(), &Oracle::None, 10_000), Err(Error::OracleRequired)));
        let d = decide_halting(&bouncer(), &Oracle::Auto(1000), 10_000).unwrap();
        assert_eq!(d.verdict, Verdict::Halts(4));
    }
}

//! Block-structured DFA families whose full intersection is finite but
//! doubly exponentially large.
//!
//! Words are read as sequences of `n`-bit blocks. Let `w_1 < … < w_{2^n}` be
//! the binary words of length `n` in lexicographic order. Member `L_i`
//! forbids two occurrences of block `w_i` unless some block smaller than
//! `w_i` occurs between them, and every member rejects blocks above `w_k`.
//! In the padded variant these constraints apply to odd-position blocks
//! only, even-position blocks are free, and the block count must be even.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::automaton::{Automaton, Word};
use crate::count::{pow2, Count};
use crate::error::{Error, Result};
use crate::generatability::{analyze_capped, Family};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessParams {
    /// Block length.
    pub n: usize,
    /// Family size, `1 <= k <= 2^n`.
    pub k: usize,
    pub padded: bool,
}

impl WitnessParams {
    pub fn basic(n: usize, k: usize) -> Self {
        WitnessParams { n, k, padded: false }
    }

    pub fn padded(n: usize, k: usize) -> Self {
        WitnessParams { n, k, padded: true }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParams("block length n must be at least 1".into()));
        }
        if self.k == 0 {
            return Err(Error::InvalidParams("family size k must be at least 1".into()));
        }
        if self.n < 64 && self.k as u128 > 1u128 << self.n {
            return Err(Error::InvalidParams(format!(
                "k = {} exceeds 2^n = {} available blocks",
                self.k,
                1u128 << self.n
            )));
        }
        Ok(())
    }

    /// Declared per-member DFA state bound.
    pub fn state_bound(&self) -> usize {
        if self.padded {
            128 * self.n + 32
        } else {
            64 * self.n + 16
        }
    }

    /// Exact length of the longest word in the full intersection.
    pub fn expected_longest(&self) -> BigUint {
        let blocks = max_blocks(self.k) * BigUint::from(self.n);
        if self.padded {
            blocks * 2u32
        } else {
            blocks
        }
    }

    /// `2^{n(2^k - 1)}`: words contributed by the free blocks alone.
    pub fn padded_floor(&self) -> Result<BigUint> {
        let exp = (max_blocks(self.k) * BigUint::from(self.n))
            .to_u64_digits()
            .first()
            .copied()
            .unwrap_or(0);
        if exp > 1 << 24 {
            return Err(Error::BudgetExceeded(format!("2^{exp} is too large to materialize")));
        }
        Ok(pow2(exp))
    }
}

/// The `i`-th (1-based) binary word of length `n` in lexicographic order.
pub fn lex_block(n: usize, i: u64) -> Result<Word> {
    let max = if n >= 64 { u64::MAX } else { 1u64 << n };
    if i == 0 || i > max || n == 0 {
        return Err(Error::IndexOutOfRange { index: i, max });
    }
    Ok(block_bits(n, i - 1)
        .into_iter()
        .map(|b| if b == 1 { "1" } else { "0" }.to_string())
        .collect())
}

/// Bits of `value` as an `n`-bit big-endian block.
fn block_bits(n: usize, value: u64) -> Vec<u8> {
    (0..n)
        .map(|j| {
            let shift = n - 1 - j;
            if shift >= 64 {
                0
            } else {
                (value >> shift & 1) as u8
            }
        })
        .collect()
}

/// `2^k - 1`, the longest sequence over `{1..k}` in which any two equal
/// values have a smaller value between them.
pub fn max_blocks(k: usize) -> BigUint {
    pow2(k as u64) - BigUint::one()
}

pub fn build_basic(n: usize, k: usize) -> Result<Family> {
    build(WitnessParams::basic(n, k))
}

pub fn build_padded(n: usize, k: usize) -> Result<Family> {
    build(WitnessParams::padded(n, k))
}

/// Builds the family `L1 … Lk`.
pub fn build(p: WitnessParams) -> Result<Family> {
    Ok(build_members(p)?.0)
}

/// Builds the family and reports whether the `<= w_k` block restriction had
/// to be dropped to keep members infinite.
pub fn build_members(p: WitnessParams) -> Result<(Family, bool)> {
    p.validate()?;
    let cap = p.k as u64 - 1;
    let mut members = Vec::with_capacity(p.k);
    let mut relaxed = false;
    for i in 0..p.k as u64 {
        let mut dfa = member_dfa(p, i, Some(cap));
        if dfa.is_finite() {
            dfa = member_dfa(p, i, None);
            relaxed = true;
        }
        members.push((format!("L{}", i + 1), dfa));
    }
    Ok((Family::new(members)?, relaxed))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct BlockState {
    /// A block equal to the member's own block occurred with no smaller block since.
    armed: bool,
    pos: usize,
    /// Reading a free (even-position) block of the padded variant.
    free: bool,
    vs_own: Ordering,
    vs_cap: Ordering,
}

/// DFA for member `own` (0-based block index), optionally rejecting blocks
/// above block index `cap`.
fn member_dfa(p: WitnessParams, own: u64, cap: Option<u64>) -> Automaton {
    let own_bits = block_bits(p.n, own);
    let cap_bits = cap.map(|c| block_bits(p.n, c));
    let start = BlockState {
        armed: false,
        pos: 0,
        free: false,
        vs_own: Ordering::Equal,
        vs_cap: Ordering::Equal,
    };
    let step = |s: BlockState, bit: u8| -> Option<BlockState> {
        let last = s.pos + 1 == p.n;
        if s.free {
            return Some(if last {
                BlockState { pos: 0, free: false, ..s }
            } else {
                BlockState { pos: s.pos + 1, ..s }
            });
        }
        let vs_own = s.vs_own.then(bit.cmp(&own_bits[s.pos]));
        let vs_cap = match &cap_bits {
            Some(c) => s.vs_cap.then(bit.cmp(&c[s.pos])),
            None => Ordering::Less,
        };
        if vs_cap == Ordering::Greater {
            return None;
        }
        if !last {
            return Some(BlockState {
                pos: s.pos + 1,
                vs_own,
                vs_cap,
                ..s
            });
        }
        let armed = match vs_own {
            Ordering::Less => false,
            Ordering::Equal if s.armed => return None,
            Ordering::Equal => true,
            Ordering::Greater => s.armed,
        };
        Some(BlockState {
            armed,
            pos: 0,
            free: p.padded,
            vs_own: Ordering::Equal,
            vs_cap: Ordering::Equal,
        })
    };

    let mut ids: HashMap<BlockState, usize> = HashMap::from([(start, 0)]);
    let mut states = vec![start];
    let mut queue = VecDeque::from([0usize]);
    let mut transitions = Vec::new();
    while let Some(id) = queue.pop_front() {
        let s = states[id];
        for bit in 0..2u8 {
            if let Some(t) = step(s, bit) {
                let tid = *ids.entry(t).or_insert_with(|| {
                    states.push(t);
                    queue.push_back(states.len() - 1);
                    states.len() - 1
                });
                transitions.push((id, if bit == 1 { "1" } else { "0" }, tid));
            }
        }
    }
    let finals = states
        .iter()
        .enumerate()
        .filter(|(_, s)| s.pos == 0 && !s.free)
        .map(|(i, _)| i);
    Automaton::new(
        vec!["0".into(), "1".into()],
        states.len(),
        0,
        finals,
        transitions,
    )
    .expect("witness construction yields a valid automaton")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Not applicable at this parameter point.
    Skipped,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub params: WitnessParams,
    /// The `<= w_k` restriction was dropped for some member.
    pub relaxed: bool,
    pub member_states: Vec<usize>,
    pub intersection_cardinality: Count,
    pub longest: Option<Count>,
    pub minimal_m: BigUint,
    pub checks: Vec<Check>,
}

impl WitnessReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }
}

impl fmt::Display for WitnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.params;
        writeln!(
            f,
            "witness n={} k={} {}",
            p.n,
            p.k,
            if p.padded { "padded" } else { "basic" }
        )?;
        for c in &self.checks {
            let tag = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "skip",
            };
            writeln!(f, "{tag} {}: {}", c.name, c.detail)?;
        }
        writeln!(f, "minimal_m {}", self.minimal_m)?;
        f.write_str(if self.ok() { "OK\n" } else { "FAIL\n" })
    }
}

/// Default cap on product states during verification.
pub const DEFAULT_VERIFY_BUDGET: usize = 2_000_000;

/// Builds the family and checks its extremal claims.
pub fn verify_witness(p: WitnessParams, max_product_states: usize) -> Result<WitnessReport> {
    let (family, relaxed) = build_members(p)?;
    let mut checks = Vec::new();
    let mut record = |name, ok: bool, detail: String| {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail };
        checks.push(Check { name, status, detail });
    };

    let member_states: Vec<usize> = family.members().iter().map(|(_, a)| a.state_count()).collect();
    let all_infinite = family.members().iter().all(|(_, a)| !a.is_finite());
    record("members-infinite", all_infinite, format!("{} members", family.len()));
    let bound = p.state_bound();
    let det_ok = family
        .members()
        .iter()
        .all(|(_, a)| a.is_deterministic() && a.state_count() <= bound);
    record(
        "members-deterministic-within-bound",
        det_ok,
        format!("states {member_states:?} <= {bound}"),
    );

    let report = analyze_capped(&family, max_product_states)?;
    let full_mask = (1u64 << family.len()) - 1;
    let full = report
        .subsets
        .iter()
        .find(|s| s.mask == full_mask)
        .expect("analysis covers the full family");

    let floor = if p.padded && !relaxed {
        Some(p.padded_floor()?)
    } else {
        None
    };
    if !relaxed {
        record(
            "intersection-finite",
            full.finite,
            format!("cardinality {}", full.cardinality),
        );
        let expected = Count::Finite(p.expected_longest());
        record(
            "longest-word",
            full.longest.as_ref() == Some(&expected),
            format!(
                "longest {} expected {}",
                full.longest.as_ref().map_or("none".into(), Count::to_string),
                expected
            ),
        );
    }
    if let Some(floor) = &floor {
        record(
            "padded-cardinality",
            full.cardinality >= Count::Finite(floor.clone()),
            format!("{} >= {floor}", full.cardinality),
        );
    }
    let consistent = match &full.cardinality {
        Count::Finite(c) => report.minimal_m > *c,
        Count::Infinite => true,
    };
    record(
        "minimal-m-consistent",
        consistent,
        format!("minimal_m {} exceeds the full intersection size", report.minimal_m),
    );
    if let Some(floor) = &floor {
        record(
            "not-floor-generatable",
            report.minimal_m > *floor,
            format!("minimal_m {} > {floor}", report.minimal_m),
        );
    }
    if relaxed {
        for name in ["intersection-finite", "longest-word"] {
            checks.push(Check {
                name,
                status: CheckStatus::Skipped,
                detail: "block restriction dropped to keep members infinite".into(),
            });
        }
    }

    Ok(WitnessReport {
        params: p,
        relaxed,
        member_states,
        intersection_cardinality: full.cardinality.clone(),
        longest: full.longest.clone(),
        minimal_m: report.minimal_m,
        checks,
    })
}

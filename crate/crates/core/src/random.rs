//! Seeded random automata for property and acceptance suites.

use rand::Rng;

use crate::automaton::{chars_alphabet, Automaton};
use crate::generatability::Family;

/// A random NFA over `{0,1}` with `1..=max_states` states; each possible
/// transition is present with probability `density`.
pub fn random_nfa<R: Rng>(rng: &mut R, max_states: usize, density: f64) -> Automaton {
    let n = rng.gen_range(1..=max_states.max(1));
    let mut finals = Vec::new();
    for q in 0..n {
        if rng.gen_bool(0.4) {
            finals.push(q);
        }
    }
    let mut trans = Vec::new();
    for from in 0..n {
        for sym in ["0", "1"] {
            for to in 0..n {
                if rng.gen_bool(density) {
                    trans.push((from, sym, to));
                }
            }
        }
    }
    Automaton::new(chars_alphabet("01"), n, 0, finals, trans).expect("valid random automaton")
}

/// A random partial DFA over `{0,1}` with `1..=max_states` states.
pub fn random_dfa<R: Rng>(rng: &mut R, max_states: usize) -> Automaton {
    let n = rng.gen_range(1..=max_states.max(1));
    let finals: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    let mut trans = Vec::new();
    for from in 0..n {
        for sym in ["0", "1"] {
            if rng.gen_bool(0.85) {
                trans.push((from, sym, rng.gen_range(0..n)));
            }
        }
    }
    Automaton::new(chars_alphabet("01"), n, 0, finals, trans).expect("valid random automaton")
}

/// A random automaton with an infinite language, drawn by rejection.
pub fn random_infinite<R: Rng>(rng: &mut R, max_states: usize) -> Automaton {
    loop {
        let a = if rng.gen_bool(0.5) {
            random_dfa(rng, max_states)
        } else {
            random_nfa(rng, max_states, 0.3)
        };
        if !a.is_finite() {
            return a;
        }
    }
}

/// A family of `1..=max_members` random infinite languages named `L1…`.
pub fn random_family<R: Rng>(rng: &mut R, max_members: usize, max_states: usize) -> Family {
    let k = rng.gen_range(1..=max_members.max(1));
    let members = (1..=k)
        .map(|i| (format!("L{i}"), random_infinite(rng, max_states)))
        .collect();
    Family::new(members).expect("members are infinite and share an alphabet")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = random_family(&mut ChaCha8Rng::seed_from_u64(7), 3, 4);
        let b = random_family(&mut ChaCha8Rng::seed_from_u64(7), 3, 4);
        assert_eq!(a.members(), b.members());
        assert!(a.members().iter().all(|(_, m)| !m.is_finite() && m.state_count() <= 4));
    }
}

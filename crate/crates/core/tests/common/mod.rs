#![allow(dead_code)]

use genlimit::tm::Move::{self, Left, Right};
use genlimit::{Symbol, TuringMachine};

pub fn tape() -> Vec<Symbol> {
    vec!["_".into(), "1".into()]
}

/// Halts after exactly `t` configurations, writing ones to the right.
pub fn counter(t: usize) -> TuringMachine {
    let rules: Vec<(usize, &str, usize, &str, Move)> = (0..t - 1).map(|q| (q, "_", q + 1, "1", Right)).collect();
    TuringMachine::new(tape(), "_", t, 0, [t - 1], &rules).unwrap()
}

/// Right, left, right again: halts after 4 configurations.
pub fn bouncer() -> TuringMachine {
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

/// Runs right forever; the halting state is unreachable.
pub fn runner() -> TuringMachine {
    TuringMachine::new(tape(), "_", 2, 0, [1], &[(0, "_", 0, "_", Right)]).unwrap()
}

/// Shuttles between the first two cells forever.
pub fn shuttle() -> TuringMachine {
    TuringMachine::new(
        tape(),
        "_",
        3,
        0,
        [2],
        &[(0, "_", 1, "1", Right), (0, "1", 1, "1", Right), (1, "_", 0, "_", Left)],
    )
    .unwrap()
}

/// Runs right forever and has no halting state at all.
pub fn haltless() -> TuringMachine {
    TuringMachine::new(tape(), "_", 1, 0, Vec::new(), &[(0, "_", 0, "1", Right)]).unwrap()
}

//! Exact uniform-generatability bounds for finite families of regular
//! languages, plus the context-free and Turing-machine machinery showing
//! that no such bound is computable once the family is context-free.

pub mod automaton;
pub mod cli;
pub mod count;
pub mod error;
pub mod generatability;
pub mod grammar;
pub mod random;
pub mod text;
pub mod tm;
pub mod witness;

pub use automaton::{product_intersection, Automaton, Symbol, Word};
pub use count::Count;
pub use error::{Error, Result};
pub use generatability::{analyze, canonical_generate, is_m_generatable, minimal_m_oracle, Family};
pub use grammar::{Cfg, Pda};
pub use tm::{decide_halting, encode, Oracle, TuringMachine, Verdict};
pub use witness::{verify_witness, WitnessParams};

pub use num_bigint::BigUint;

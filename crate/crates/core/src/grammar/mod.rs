//! Context-free grammars and pushdown automata.

pub mod cfg;
pub mod pda;

pub use cfg::{ChartParser, Cfg, GSym, Production};
pub use pda::{Pda, PdaCaps, PdaRule};

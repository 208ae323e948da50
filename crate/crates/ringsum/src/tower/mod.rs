//! The difference-ring data model.

mod core;
pub mod elem;
pub mod eval;
mod stats;

pub use self::core::{BaseField, GenKind, Generator, Stats, Tower};
pub use elem::{Exps, PGElem, TowerElem};
pub use eval::{eval_sequence, Evaluator, SeqContext};

//! Psyquandle counting invariants and psyquandle bracket multisets for
//! singular knots and pseudoknots given as closed singular/pseudo braids.
//!
//! ```
//! use psyq::{bracket_multiset, fixtures, BraidWord, Mode};
//!
//! let word = BraidWord::parse("s1 t1 t1", 2, Mode::Pseudo).unwrap();
//! let m = bracket_multiset(&word.close(), &fixtures::z9_bracket()).unwrap();
//! assert_eq!(m.to_string(), "2u^4");
//! ```

pub mod bracket;
pub mod coloring;
pub mod diagram;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod moves;
pub mod psyquandle;
pub mod report;
pub mod ring;
pub mod search;
pub mod statesum;

pub use bracket::{Coef, PsyBracket};
pub use coloring::{brute_force_colorings, counting_invariant, enumerate_colorings, Coloring, HomsetResult};
pub use diagram::{BraidWord, CrossingKind, Diagram, Letter, Mode};
pub use error::{Error, Result};
pub use psyquandle::{check_axioms, constant_action, jablan, Op, OpTable, Psyquandle};
pub use report::{AxiomFailure, AxiomReport};
pub use ring::{FiniteRing, Ring, RingElement};
pub use search::{brute_force_brackets, search_brackets, SearchSpec, SearchStats};
pub use statesum::{bracket_multiset, bracket_value, bracket_value_precolored, InvariantMultiset};

//! Abstract model structures `(M, ⊨, P(L))`, their induced consequence
//! relations, and executable checkers for semantic principles of explosion.
//!
//! Finite carriers are decided exactly over bitmask tables. Countable
//! carriers use rule-based relations over the finite-or-cofinite subsets of
//! `N`, searched inside windows sized from the rule's shape.

pub mod amst;
pub mod carrier;
pub mod characterizations;
pub mod consequence;
pub mod error;
pub mod logstr;
pub mod principles;
pub mod rule;
pub mod semantics;
pub mod set;
pub mod space;
pub mod verdict;
pub mod view;

pub use amst::{Amst, ExplicitMatrix, Relation};
pub use carrier::{Carrier, ModelCount};
pub use error::AmstError;
pub use rule::RuleExpr;
pub use semantics::Reading;
pub use set::{ModelSet, SentenceSet};
pub use space::{CountableSpace, Domain, FiniteDomain, FiniteSpace, Semantics, Space, DEFAULT_BOUND};
pub use verdict::{BoundedVerdict, Checked, Exactness, Unmet, Witness};
pub use view::FiniteView;

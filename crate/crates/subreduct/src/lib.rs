//! Budget-constrained feature selection on nominal decision tables.
//!
//! A decision table assigns each object a class along with the values of
//! some nominal features, and acquiring a feature's value costs something:
//! a fee, a delay, a measurement. Given per-feature costs and a spending
//! limit, this crate finds feature subsets that classify as many objects
//! as possible — measured by the rough-set positive region — and, among
//! equally good subsets, cost as little as possible.
//!
//! Two solver families cover the tractable and the large:
//!
//! - [`exact`]: depth-first search over the subset lattice with cost
//!   pruning ([`exact::backtracking`]), a full-enumeration cross-check
//!   ([`exact::brute_force`]), and the unconstrained special case
//!   ([`exact::minimal_cost_reduct`]).
//! - [`heuristic`]: greedy addition by cost-weighted information gain
//!   ([`heuristic::lambda_greedy`]) and a competition over a grid of
//!   weight exponents ([`heuristic::competition`]).
//!
//! Supporting modules handle the data model ([`data`]), partitions and
//! positive regions ([`partition`]), entropy ([`entropy`]), reduct
//! predicates ([`reduct`]), costs and budgets ([`cost`]), benchmark
//! tables ([`datasets`]), and a seeded evaluation harness ([`bench`]).
//!
//! # Example
//!
//! Two cheap features are useless alone but decisive together, while one
//! expensive feature almost works by itself. Under a budget of 6 the
//! search finds the cheap pair:
//!
//! ```
//! use subreduct::{Budget, CostSchedule, DecisionSystem};
//!
//! let table = DecisionSystem::from_rows(
//!     &["a1", "a2", "a3"],
//!     "d",
//!     &[
//!         (&["Y", "Y", "Y"], "A"),
//!         (&["N", "Y", "N"], "B"),
//!         (&["Y", "N", "N"], "B"),
//!         (&["N", "N", "Y"], "A"),
//!         (&["Y", "Y", "Y"], "B"),
//!     ],
//! )?;
//! let costs = CostSchedule::new(vec![2.0, 3.0, 10.0])?;
//!
//! let exact = subreduct::exact::backtracking(&table, &costs, Budget::new(6.0)?)?;
//! assert_eq!(exact.subset.names(&table), vec!["a1", "a2"]);
//! assert_eq!(exact.pos_size, 3);
//! assert_eq!(exact.cost, 5.0);
//!
//! let greedy = subreduct::heuristic::lambda_greedy(&table, &costs, Budget::new(6.0)?, -1.0)?;
//! assert_eq!(greedy.subset, exact.subset);
//! # Ok::<(), subreduct::Error>(())
//! ```

pub mod bench;
pub mod cost;
pub mod data;
pub mod datasets;
pub mod entropy;
pub mod error;
pub mod exact;
pub mod heuristic;
mod kernel;
pub mod outcome;
pub mod partition;
pub mod reduct;

pub use cost::{Budget, CostSchedule};
pub use data::{DecisionColumn, DecisionSystem, FeatureInfo, FeatureSubset, LoadOptions};
pub use error::{Error, Result};
pub use heuristic::{CompetitionOutcome, LambdaGrid};
pub use outcome::SearchOutcome;
pub use partition::{Block, Partition};

// mdbook cannot run a book's code blocks against the crate, so the
// guide chapters are attached here as doc comments and `cargo test
// --doc` keeps them honest, one module per chapter to make failures
// traceable.
#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/decision-tables.md")]
    mod decision_tables {}
    #[doc = include_str!("../../../book/src/costs-and-budgets.md")]
    mod costs_and_budgets {}
    #[doc = include_str!("../../../book/src/exact-search.md")]
    mod exact_search {}
    #[doc = include_str!("../../../book/src/heuristic-search.md")]
    mod heuristic_search {}
    #[doc = include_str!("../../../book/src/benchmarking.md")]
    mod benchmarking {}
}

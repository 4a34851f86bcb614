//! Solvers for two-player zero-sum imperfect-information extensive-form
//! games, built around regret matching and its predictive variants with
//! asymmetric step sizes, plus exact exploitability evaluation and the
//! standard benchmark game suite.
//!
//! The pieces compose bottom-up:
//!
//! * [`efg`]: immutable game trees with infoset partitions, validation, and
//!   reach probabilities;
//! * [`games`]: deterministic generators for Kuhn poker, Leduc hold'em,
//!   Goofspiel, liar's dice, and Battleship, size-checked against the
//!   published benchmark table;
//! * [`regret`]: the per-infoset minimizers (regret matching, RM+, the
//!   discounted rule, and the predictive family with fixed or learned
//!   asymmetric step sizes);
//! * [`engine`]: the solve loop with alternating or simultaneous updates and
//!   linear/quadratic/decayed strategy averaging;
//! * [`exploitability`](mod@exploitability): exact best response and
//!   exploitability;
//! * [`diagnostics`]: realized counterfactual regrets and the regret-bound
//!   accumulators;
//! * [`bench`](mod@bench): the CLI plumbing behind the `cfr-forge` binary.
//!
//! The `examples/` directory has one runnable program per capability; start
//! with `solve_kuhn`.
//!
//! ```
//! use cfr_forge::engine::{Averaging, Solver, UpdateMode};
//! use cfr_forge::exploitability::exploitability;
//! use cfr_forge::games::build_kuhn;
//! use cfr_forge::regret::{Variant, VariantTag};
//!
//! let game = build_kuhn();
//! let mut solver = Solver::new(
//!     &game,
//!     Variant::new(VariantTag::SapcfrPlus),
//!     UpdateMode::Alternating,
//!     Averaging::Quadratic,
//!     false,
//! );
//! for _ in 0..200 {
//!     solver.iterate();
//! }
//! assert!(exploitability(&game, &solver.average()) < 1e-4);
//! ```

pub mod bench;
pub mod diagnostics;
pub mod efg;
pub mod engine;
pub mod exploitability;
pub mod games;
pub mod regret;

pub use efg::{GameTree, Infoset, InfosetId, NodeId, NodeKind, PlayerId, TreeStats};
pub use engine::{Averaging, ConvergenceRecord, RunConfig, Solver, StrategyProfile, UpdateMode};
pub use exploitability::{best_response_value, exploitability};
pub use games::GameSpec;
pub use regret::{LocalRegretState, Variant, VariantTag};

//! Mechanisms that bound the state of proportional provenance: selective and
//! grouped origin scopes, windowed double lists, and per-vertex budgets.

pub mod budget;
pub mod scope;
pub mod window;

pub use budget::{budget_shrink, Budget, BudgetMerge, KeepCriterion};
pub use scope::{apply_scope, ScopeMap, ScopedInteraction};
pub use window::{Side, WindowEngine};

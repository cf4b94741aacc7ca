//! Finite group computations centered on covering numbers: the minimum
//! number of proper normalizers (sigma_n), proper subgroups (sigma), or
//! proper element-centralizers (sigma_c) whose union is the whole group.
//!
//! Groups are concrete multiplication tables at desk scale (default
//! order budget 2048); subgroup lattices are enumerated exhaustively and
//! the covering numbers are exact, via branch and bound with a
//! deterministic tie-break. Nothing here is randomized.

pub mod construct;
pub mod covering;
pub mod error;
pub mod field;
pub mod group;
pub mod invariants;
pub mod lattice;
pub mod set;

pub use construct::{build, parse_group_expr, ActionSpec, GroupExpr};
pub use covering::{
    covering_existence, exact_min_cover, exhaustive_min_cover, fit_criterion,
    maximal_normalizer_family, proper_normalizers, sigma, sigma_c, sigma_n, CoverOutcome,
    NormalizerFamily,
};
pub use error::{Error, Result};
pub use field::{gf_field, FieldGF};
pub use group::{
    center, centralizer, commutator_subgroup, direct_product, group_from_cayley,
    group_from_generators, quotient_group, ElementId, GroupTable, Permutation,
};
pub use invariants::{structure_profile, structure_report, StructureProfile, StructureReport};
pub use lattice::{
    conjugate_subgroup, enumerate_subgroups, generated_subgroup, normalizer, subgroup_table,
    Subgroup, SubgroupLattice,
};
pub use set::ElementSet;

/// Resource limits. Exceeding one is always an explicit error, never an
/// approximation.
#[derive(Clone, Debug)]
pub struct Budgets {
    /// Largest group order any constructor or closure will produce.
    pub max_order: usize,
    /// Full O(n^3) associativity verification up to this order; sampled
    /// (10 n^2 fixed-seed triples) above.
    pub assoc_full_check_limit: usize,
    /// Cap on the number of subgroups in one lattice.
    pub lattice_cap: usize,
    /// Cap on branch-and-bound nodes per cover computation.
    pub node_cap: u64,
    /// sigma (cover by arbitrary proper subgroups) is only computed up
    /// to this order.
    pub sigma_order_budget: usize,
    /// Exhaustive minimal-generating-tuple search bound for groups that
    /// are neither p-groups nor abelian.
    pub min_gen_search_limit: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_order: 2048,
            assoc_full_check_limit: 256,
            lattice_cap: 200_000,
            node_cap: 10_000_000,
            sigma_order_budget: 64,
            min_gen_search_limit: 64,
        }
    }
}

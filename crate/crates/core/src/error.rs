use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a group: {reason}{}", counterexample_suffix(.counterexample))]
    NotAGroup {
        reason: String,
        /// Triple (a, b, c) with (ab)c != a(bc), when the failure is associativity.
        counterexample: Option<(u16, u16, u16)>,
    },

    #[error("element index {index} out of range for group of order {order}")]
    BadIndex { index: usize, order: usize },

    #[error("order budget exceeded: needs {required}, budget {budget}")]
    OrderBudgetExceeded { required: usize, budget: usize },

    #[error("permutation degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("the given element set is not a subgroup")]
    NotASubgroup,

    #[error("the given subgroup is not normal")]
    NotNormal,

    #[error("subgroup lattice budget exceeded: more than {cap} subgroups")]
    LatticeBudgetExceeded { cap: usize },

    #[error("cover solver budget exceeded: more than {cap} branch nodes")]
    SolverBudgetExceeded { cap: u64 },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("syntax error at byte {offset}: {message}")]
    SyntaxError { offset: usize, message: String },

    #[error("duplicate name: {0}")]
    DuplicateName(String),
}

fn counterexample_suffix(c: &Option<(u16, u16, u16)>) -> String {
    match c {
        Some((a, b, x)) => format!(" (counterexample triple {a}, {b}, {x})"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;

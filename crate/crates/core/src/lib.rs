//! Toolkit for the topology of p-subgroup posets of concrete finite groups.
//!
//! The crate is organized bottom-up:
//!
//! - [`perm`] / [`group`]: a brute-force permutation group kernel. Groups are
//!   fully enumerated (no stabilizer chains); every downstream operation is a
//!   transparent element-wise computation.
//! - [`local`]: p-local structure — Sylow subgroups, `O_p`, `O_{p'}`, `Ω₁`,
//!   elementary abelian subgroups, p-rank, components and the generalized
//!   Fitting subgroup.
//! - [`poset`]: finite posets and order-preserving maps; the poset of
//!   nontrivial elementary abelian p-subgroups and its relatives (inflated
//!   neighbourhoods, links, joins, chain posets), together with replayable
//!   contractibility certificates.
//! - [`snf`] / [`homology`]: exact integer linear algebra (Smith normal form,
//!   fraction-free rank) and reduced simplicial homology of order complexes
//!   over `Z` and `Q`.
//! - [`chains`]: formal chains, boundaries, the shuffle product, initial-chain
//!   decompositions and top-dimension homology certificates.
//! - [`reduction`]: the lemma lab — retract reductions, point extraction with
//!   certificates, homology propagation, the `O_{p'}` pipeline, strongly
//!   p-embedded detection, central quotient checks.
//! - [`corpus`] / [`report`]: built-in test groups with literature metadata,
//!   batch analysis records, JSON/CSV emission.

pub mod chains;
pub mod corpus;
pub mod group;
pub mod homology;
pub mod local;
pub mod perm;
pub mod poset;
pub mod reduction;
pub mod report;
pub mod snf;

pub use num_bigint;
pub use num_rational;

use thiserror::Error;

/// Default cap on the number of elements enumerated per group.
pub const DEFAULT_ELEMENT_CAP: usize = 50_000;
/// Default cap on the number of nodes of a constructed poset (and on the
/// total simplex count of an order complex).
pub const DEFAULT_POSET_CAP: usize = 20_000;
/// Default coefficient box for the unit-coefficient search in top-homology
/// certificates.
pub const DEFAULT_COEFF_BOX: i64 = 2;

/// Caps threaded through the constructors that can blow up.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub element_cap: usize,
    pub poset_cap: usize,
    pub coeff_box: i64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            element_cap: DEFAULT_ELEMENT_CAP,
            poset_cap: DEFAULT_POSET_CAP,
            coeff_box: DEFAULT_COEFF_BOX,
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a permutation: images are not a bijection")]
    NotAPermutation,
    #[error("enumeration cap {0} exceeded")]
    CapExceeded(usize),
    #[error("element not in parent group")]
    ElementNotInParent,
    #[error("subgroups have different parent groups")]
    ParentMismatch,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup does not normalize the target")]
    NotNormalizing,
    #[error("node {0} not found in poset")]
    NodeNotFound(usize),
    #[error("not a chain of the poset")]
    NotAChain,
    #[error("not a subchain")]
    NotSubchain,
    #[error("chain term is not initial along the prescribed chain")]
    NotAInitial,
    #[error("central product hypothesis violated: {0}")]
    HypothesisCpViolated(String),
    #[error("hypothesis {0} violated: {1}")]
    HypothesisViolated(&'static str, String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

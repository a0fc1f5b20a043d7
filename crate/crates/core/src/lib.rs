//! Dedekind–MacNeille completions of finite posets, extensions of maps to
//! completions, and equations `T(A) = F` solved by order completion.
//!
//! The pieces, bottom up:
//!
//! * [`poset`]: finite posets, subsets, and the bound operators `A^u`, `A^l`.
//! * [`completion`]: cuts `A = A^ul` and the completion `X^#` of all cuts.
//! * [`mapext`]: maps `φ : X → Y` and their extensions `φ^# : P(X) → Y^#`.
//! * [`solver`]: the quotient of a map by its fibers with the pulled-back
//!   order, and the decision procedure for `T^#(A) = F`.
//! * [`oracle`]: brute-force references used by tests and [`checks`].
//! * [`generators`]: reproducible instance families.
//!
//! Finite posets frequently have a least or greatest element. Nothing here
//! assumes otherwise: `∅` is a cut exactly when the poset has no minimum, and
//! the solver reports when that changes which families are empty.

pub mod bitset;
pub mod checks;
pub mod completion;
pub mod dot;
pub mod error;
pub mod format;
pub mod generators;
pub mod mapext;
pub mod oracle;
pub mod poset;
pub mod solver;

pub use bitset::BitSet;
pub use completion::{
    cut_closure, embed, inf_cuts, is_cut, macneille_completion, sup_cuts, verify_macneille, CompletedPoset, Cut,
    MacNeilleReport,
};
pub use error::{Error, Result};
pub use mapext::{
    apply_extension, check_lemma_a1, check_prop_a1, is_increasing, is_oie, CutMap, ExtendedMap, PosetMap, Source,
};
pub use poset::{Carrier, CarrierSet, Poset, RelationKind, Subset};
pub use solver::{build_equation, global_character, solve, t_sharp, EquationInstance, GlobalReport, SolveReport};

/// Caps applied before exponential work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_arity: usize,
    pub max_cuts: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_arity: 20,
            max_cuts: 4096,
        }
    }
}

//! Maximal subgroups of the free idempotent generated semigroup over the
//! biordered set of the full transformation monoid `T_n`.
//!
//! The crate enumerates transversal pairs and singular squares, builds the
//! group presentation with generators `f_{P,A}`, reduces it to the Coxeter
//! presentation of `S_r` through an auditable derivation log, and checks the
//! outcome with independent oracles.

pub mod combinatorics;
pub mod error;
pub mod label;
pub mod permutation;
pub mod pipeline;
pub mod presentation;
pub mod schreier;
pub mod square;
pub mod transformation;
pub mod verify;

pub use combinatorics::{
    binomial, count_transversal_pairs, enumerate_partitions, enumerate_subsets, is_transversal,
    min_transversal, stirling2, transversals, Partition, Subset, MAX_N,
};
pub use error::{Error, Result};
pub use label::{label, label_by_subscripts, label_spectrum, LabelContext};
pub use pipeline::{
    coxeter_word, evaluate_word, replay, run_pipeline, DerivationLog, DerivationStep, ReplayReport, Rule,
};
pub use permutation::{contiguous_cycle, DescentLocator, Permutation};
pub use presentation::{
    build_presentation, coxeter_presentation, generic_tietze_simplify, GeneratorId, GroupPresentation,
    PresentationCounts, Provenance, Relation, Symbol, TietzeLimits, Word,
};
pub use schreier::{build_schreier, eval_word, EWord, IdempotentLetter, SchreierSystem};
pub use square::{
    enumerate_singular_squares, enumerate_squares, find_singularizing_idempotent,
    is_rectangular_band, is_singular_sq2, is_singular_sq3, label_graph, EvidenceKind, LabelGraph,
    SingularityEvidence, Square, SquareLabels,
};
pub use transformation::{act, compose, idempotent, ActionResult, Transformation};
pub use verify::{
    coset_enumerate, label_homomorphism_check, verify_theorem, CosetOutcome, HomomorphismReport, Verdict,
    VerifyBudget,
};

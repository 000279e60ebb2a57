//! Computations with k-graphs (higher-rank graphs).
//!
//! A k-graph is given by its 1-skeleton ([`Skeleton`]) and its commuting
//! squares ([`Square`]). From that data this crate validates the unique
//! factorization property, computes canonical normal forms, and works in the
//! fundamental groupoid `P(E⁺)/(C ∪ S)`: reduced words, a bounded word
//! problem search with checkable derivations, fundamental group
//! presentations and their abelian invariants.
//!
//! Words and paths are always written in composition order: `e f` means
//! "first `f`, then `e`", so `s(e) = r(f)`.

pub mod error;
pub mod fixtures;
pub mod groupoid;
pub mod kgraph;
pub mod pi1;
pub mod skeleton;

pub use error::{Error, Result};
pub use groupoid::{
    canonical_functor, equal_in_g, gword_degree, injectivity_report, lambda_bar_check, Budget, DegreeZ, Derivation,
    EqualityVerdict, FactorSide, GWord, Injectivity, InjectivityReport, LambdaBarOutcome, LambdaBarReport, SignedEdge,
    Witness, WordSolver,
};
pub use kgraph::{
    validate, EdgePair, Finding, FindingKind, KGraph, NormalForm, Square, SquareSystem, ValidationReport,
};
pub use pi1::{
    abelian_image, abelianization, group_presentation, smith_normal_form, spanning_tree, tietze_simplify,
    AbelianInvariants, GroupPresentation, IntMatrix, SpanningTree,
};
pub use skeleton::{Color, Degree, Edge, EdgeId, EdgePath, Skeleton, VertexId};

//! Exact computation of Kazhdan–Lusztig cells for finite Coxeter groups with
//! unequal parameters, Calogero–Moser cells and families for the cyclic
//! groups `μ_d`, and a comparison of the two where both are available.

pub mod analysis;
pub mod cache;
pub mod cells;
pub mod characters;
pub mod cherednik;
pub mod conjecture;
pub mod coxeter;
pub mod cyclotomic;
pub mod dsl;
pub mod group;
pub mod hecke;
pub mod ordered;

pub use coxeter::{CoxeterError, CoxeterGroup, CoxeterMatrix, CoxeterType, Elem, Side, WeightFunction};
pub use cyclotomic::{Cyclotomic, CyclotomicField};
pub use group::{ConjugacyClasses, CyclicGroup, FiniteGroup};
pub use ordered::{CoeffError, Exponent, GammaMode, Laurent};
pub use hecke::{Hecke, HeckeElt, KlTable};
pub use characters::{CharacterTable, ClassFunction, Decomposition};
pub use cells::{CellCharacter, CellKind, CellPartition, PreorderGraph};
pub use cherednik::{AlgebraElt, CherednikError, CmCellData, Letter, Rank1Algebra, Rank1Params};
pub use analysis::{analyze, AnalysisError, CellAnalysis};
pub use cache::{cache_key, CacheError, CacheStatus, KlCache};
pub use dsl::{parse_spec, render_spec, DslError, ParsedSpec, Spec};
pub use conjecture::{b2_regime_report, check_rank1_vs_a1, emit_report, Regime, Verdict};
pub use num_rational::BigRational;

//! Exact computation in finite commutative rings, discrete valuation rings
//! and their trivial extensions: ideal lattices, annihilators, free
//! resolutions and decompositions over chain rings.

pub mod bitset;
pub mod catalog;
pub mod dvr;
pub mod elem;
pub mod error;
pub mod expr;
pub mod finite;
pub mod fp_poly;
pub mod homology;
pub mod ideal;
pub mod module;
pub mod report;
pub mod ring;
pub mod trivext;
pub mod verify;

pub use bitset::BitSet;
pub use dvr::{Dvr, DvrKind, SampleBounds, ValuationValue};
pub use elem::Elem;
pub use error::{Error, Result, Span};
pub use finite::{FiniteRing, LocalDecomposition, LocalFactor, DEFAULT_MAX_ELEMENTS};
pub use ideal::{all_ideals, annihilator_ideal, is_arithmetical, is_valuation_ring, Ideal, DEFAULT_MAX_ORDER};
pub use module::{
    annihilator_of_element, warfield_decompose, ChainRing, DvrIdeal, DvrModule, ElementAnnihilator, FiniteModule,
    Module, ModuleDescriptor, Summand, TorsionClass, UniserialVerdict, WarfieldDecomposition,
};
pub use ring::{DivisibilityVerdict, LocalVerdict, Order, Ring, RingDescriptor};
pub use trivext::{annihilator_in_triv_ext, predict_valuation, DvrTrivExt, ValuationPrediction, ValuationReason};
pub use homology::{
    classify_2d, is_free_principal_ideal, minimal_free_resolution, projective_dimension_cyclic, syzygy_generators,
    CyclicPd, FreeResolution, PdVerdict, TwoDClass, DEFAULT_MAX_STEPS,
};
pub use catalog::{ring_catalog, CatalogModule, CatalogRing};
pub use expr::{parse_elem, parse_matrix, parse_module, parse_ring, ElemExpr, ModuleExpr, RingExpr};
pub use report::{property_report, PropertyReport, SCHEMA};
pub use verify::{derive_seed, verify, TheoremReport, VerifyConfig, SUITE};

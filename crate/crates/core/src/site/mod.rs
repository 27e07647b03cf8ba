//! Formal cubical products and the sites `Q` and `QΣ`.

mod ez;
mod factor;
mod hom;
mod morphism;
mod relations;
mod syntax;

pub use ez::{
    epi_generators, epi_mono_factorizations, mediating_maps, split_pushout, verify_ez1, verify_ez2, verify_ez3,
    verify_thickening, EzCheck, EzReport, SplitPushout, WitnessSource,
};
pub use factor::{enumerate_factorizations, factor, Factorization};
pub use hom::{
    automorphisms, classify, enumerate_hom, enumerate_minus, enumerate_plus, ez_factor, hom_count, in_q, inverse_iso,
    is_minus, is_plus, resource_limit, set_resource_limit, vertices_action, Classification, Site, DEFAULT_LIMIT,
};
pub use morphism::{compose_word, delta, gamma, generator, sigma, swap, Entry, GeneratorKind, Morphism};
pub use relations::{verify_relations, RelationInstance, RelationReport};
pub use syntax::parse_morphism;

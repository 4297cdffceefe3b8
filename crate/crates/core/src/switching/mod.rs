//! The switching calculus: respecting vectors, switching graphs, their
//! automorphism data, and applying or detecting switchings in larger graphs.

mod graphs;
mod instance;
mod method;
mod respecting;

pub use graphs::{labelled_switching_graphs, switched_form};
pub use instance::{
    apply_switching, build_appendix_graph, find_switching_instances, switch_with_matrix,
    validate_gm_conditions, validate_wqh_conditions, verify_appendix_claims, wqh_rule_switch,
    wqh_two_cell_matrix, AppendixClaims, SwitchingInstance,
};
pub use method::{
    autq_group, generating_set, irreducible_gammas, is_distinguishing, is_equivariant,
    is_switching_distinguishing, preserves_vectors, switching_distinguishing_with,
    switching_graphs, vector_stabilizer, GammaClass, SwitchingGraphSet, SwitchingMethod,
};
pub use respecting::{
    bit_string, lex_key, respecting_image, respecting_vectors, RespectingVectorSet,
};

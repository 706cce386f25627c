//! The two GHJ constructions: braid elements and the conjugated towers
//! `P_n`, `Q_n`, and principal graphs of GHJ subfactors.

mod braid;
mod principal;

pub use braid::{
    braid_generator, braid_word, conjugated_towers, is_commuting_square, shift_element,
    BraidElement, ConjugatedTowers,
};
pub use principal::{
    ghj_index, ghj_principal_graph, ghj_principal_graph_at, inclusion_levels, tl_block_sizes,
    GhjPolicy, InclusionLevel, Node, Parity, PrincipalGraphResult, DEFAULT_GHJ_LEVEL_CAP,
};

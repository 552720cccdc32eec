//! Truncated symmetric functions in the monomial, augmented and K-augmented
//! bases, and the graph expansions that produce them.

pub mod partition;
pub mod series;
pub mod ssc;

pub use partition::Partition;
pub use series::{convert, odot_all, odot_product, ordinary_product, Basis, Rational, SymSeries};
pub use ssc::{
    clan_expansion_monomial, csf_mtilde, f_series, f_series_closed_form, ksf_mbar_truncated,
    ksf_monomial_truncated, odot_geometric_inverse, odot_geometric_inverse_one_plus_m1,
    stable_set_covers, stable_sets, vertex_recursion_rhs, StableSetCover,
};

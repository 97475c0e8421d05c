//! Instance-level ground truth over `F_p`: graded pieces of explicit ideals,
//! Koszul homology and the saturation with respect to `B`.

pub mod ideal;
pub mod instance;
pub mod monomial;
pub mod saturation;

pub use ideal::{hf_si_oracle, ideal_piece, koszul_homology_dim, Oracle};
pub use instance::{
    paper_example, parse_instance, random_instance, random_instance_with_degrees, serialize_instance,
    stream_instance, Form, Instance,
};
pub use monomial::{monomial_basis, Monomial, MonomialSpace};
pub use saturation::{
    default_padding, hf_v_oracle, saturate_window, stabilization_staircase, validated_hf_v, DegreewiseIdeal,
    Grid, MAX_PADDING,
};

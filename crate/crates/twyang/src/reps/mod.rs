//! Concrete finite-dimensional modules and exact verification of the
//! defining relations on them.

pub mod build;
pub mod engine;
pub mod lie;
pub mod module;
pub mod opmat;
pub mod weights;

pub use build::{
    bridge_so3, bridge_so4, bridge_sp2, catalog, eval_so3, eval_so4, eval_sp2, has_standard_limit, olshanskii_eval, onedim_module,
    tensor_twisted, vector_eval_x, OlshanskiiLie, So4Variant, Sp2Variant,
};
pub use lie::{lie_module, LieAlgebra, LieModule};
pub use module::{
    olshanskii_sdet2, verify_olshanskii, verify_twisted, verify_x, ModuleReport, OlshanskiiModule, TwistedModule, XModule,
};
pub use opmat::OpMat;
pub use weights::{
    check_neg_weights, highest_weight_extract, weight_of_vector, x_highest_weight, rank_reduction_h, reduced_pair, restrict_vj, restrict_vplus, BModule,
    HighestWeight,
};

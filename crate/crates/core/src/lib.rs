//! Normal factor graphs over prime fields, exact partition functions, the NFG duality
//! theorem, and MacWilliams identities for weight generating functions and weight
//! adjacency matrices of block and convolutional codes.

pub mod algebra;
pub mod convcode;
pub mod error;
pub mod io;
pub mod lincode;
pub mod nfg;
pub mod tensor;
pub mod transform;
pub mod wgf;

pub use algebra::{
    inner_product, omega_pow, poly_scale_equal, Alphabet, CycloRational, Monomial, Polynomial,
    PrimeField, Symbol,
};
pub use error::{Error, Result};
pub use lincode::{LinearCode, WeightMode, DEFAULT_ENUMERATION_CAP};
pub use convcode::{Spectrum, TerminationMode, TrellisSection};
pub use nfg::{NormalFactorGraph, PartitionFunction, Realization};
pub use tensor::Tensor;
pub use wgf::{MacWilliams, WeightAdjacencyMatrix, WgfKind};

//! Double covers `y^2 = g_{2d}` of projective space, hypersurfaces that are
//! doubled along a codimension-two complete intersection, and the lift that
//! recovers a branch locus from such a hypersurface.
//!
//! Arithmetic is exact, over `Q` or a prime field.
//!
//! ## Examples
//!
//! - `cargo run --example lift_quadric`: a quadric surface over a conic
//! - `cargo run --example roundtrip -- 2 3 6 0`: random cover, image, lift, recovery
//! - `cargo run --example hilbert_square -- 2 1 4`: graded dimensions of `I_Z^2`
//! - `cargo run --example weighted_cover`: isotypic sections and the involution
//! - `cargo run --example census_tables`: integer invariants
//! - `cargo run --example canned_bundles`: shipped example data
//! - `cargo run --example smoothness`: point counts over `F_p`
//! - `cargo run --example exact_linear_algebra`: rref, rank and kernels

pub mod census;
pub mod cli;
pub mod ci;
pub mod cover;
pub mod error;
pub mod field;
pub mod gen;
pub mod lift;
pub mod linalg;
pub mod poly;

pub use error::{Error, Result};

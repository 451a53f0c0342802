//! Exact intersection theory for Calabi-Yau threefolds `X` in `|-K_Z|`,
//! `Z = P(E)`, with `E` a rank-2 bundle over `P^3` or a rank-4 bundle over `P^1`.
//!
//! - [`exact`]: rationals and polynomials.
//! - [`chow`]: normal-form arithmetic in the Chow ring of `Z`.
//! - [`cohomology`]: cohomology of split bundles on `P^1` and `P^3`.
//! - [`invariants`]: Chern and intersection numbers of `X`, each checked
//!   against a Chow-ring oracle.
//! - [`kahler`]: the cubic form on `N^1(X)`, Kahler cone data and the
//!   second contraction over `P^1`.
//! - [`discriminant`]: the discriminant octic of the conic bundle `X -> P^3`.

pub mod chow;
pub mod cohomology;
pub mod discriminant;
pub mod error;
pub mod exact;
pub mod invariants;
pub mod kahler;

pub use chow::{Base, BundleSpec, ChowClass};
pub use error::{Error, Result};

//! Exact calculator for closed oriented 4-manifolds assembled from K3
//! surfaces, products of surfaces, `CP²`, `CP²`-bar, `S¹×S³` and `S⁴`.
//!
//! It decides the spin^c parity condition (*) (even Dirac index and even
//! `c_ij` coefficients of `c1(Ind D)` over the Jacobian torus), reports the
//! spin-bordism invariant σ⁰ on the family where it is known, and applies the
//! resulting adjunction, Yamabe and Einstein non-existence statements next to
//! the Hitchin–Thorpe inequality. All verdicts use exact integer or rational
//! arithmetic.
//!
//! ```
//! use spinc4::{atlas, spinc};
//!
//! let m = atlas::k3().connected_sum(&atlas::k3());
//! let s = spinc::SpinCStructure::canonical(&m).unwrap();
//! assert_eq!(spinc::dirac_index(&m, &s).unwrap(), 4);
//! assert!(spinc::condition_star(&m, &s).unwrap().holds);
//! ```

pub mod atlas;
pub mod bordism;
pub mod cli;
pub mod descriptor;
pub mod error;
pub mod exec;
pub mod expr;
pub mod lattice;
pub mod obstruction;
pub mod report;
pub mod spinc;

pub use error::{Error, Result};

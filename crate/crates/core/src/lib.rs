//! Exact solutions of generalized cluster-XY spin chains.
//!
//! A chain is a periodic ring of spins with a transverse field and any
//! number of `X Z...Z X` / `Y Z...Z Y` interaction blocks. After a
//! Jordan-Wigner transformation every member is a free-fermion model, so
//! spectra, gaps and the ground-state wavefunction follow from one
//! Bogoliubov angle per momentum. From the angles the crate evaluates the
//! geometric entanglement of the ground state in closed form.
//!
//! * [`model`] and [`preset`] declare chains.
//! * [`freefermion`] gives sector spectra, ground state and gap.
//! * [`entanglement`] maximizes overlaps with product states.
//! * [`oracle`] diagonalizes small chains densely and checks all of the above;
//!   [`validate`] runs that comparison as a suite.
//!
//! ```
//! use clusterxy::freefermion::ground_and_gap;
//! use clusterxy::preset::preset_ghz_cluster;
//!
//! // the GHZ-cluster gap is 8 g^2 inside |g| < 1, at any size
//! let report = ground_and_gap(&preset_ghz_cluster(0.5, 64).unwrap());
//! assert!((report.gap - 2.0).abs() < 1e-9);
//! ```

pub mod entanglement;
pub mod error;
pub mod freefermion;
pub mod model;
pub mod optimize;
pub mod oracle;
pub mod preset;
pub mod quadrature;
pub mod scan;
pub mod validate;

pub use error::{Error, Result};
pub use model::{make_model, BlockKind, BlockSpec, ModelSpec};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/model.md")]
    mod model {}
    #[doc = include_str!("../../../book/src/free-fermions.md")]
    mod free_fermions {}
    #[doc = include_str!("../../../book/src/entanglement.md")]
    mod entanglement {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

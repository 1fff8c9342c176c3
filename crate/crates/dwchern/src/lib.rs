//! Exact-arithmetic Dijkgraaf-Witten invariants of closed oriented 3-manifolds
//! for finite gauge groups, with 3-cocycles assembled from second Chern classes
//! of induced representations via transfer and Bockstein maps.
//!
//! Everything is computed in the non-homogeneous bar complex with exact
//! rational / integer arithmetic; "cohomologous" claims are decided by sparse
//! Smith-normal-form solvers, and the main pipelines are cross-validated
//! against each other (Riemann-Roch route vs. Evens-norm route vs.
//! covering-space route).
//!
//! See the `examples/` directory for one runnable program per capability:
//!
//! ```text
//! cargo run --example lens_invariants          # DW values of lens spaces
//! cargo run --example quaternionic_space_forms # S^3/Q_4n via Chern cocycles
//! cargo run --example covering_identity        # transfer/covering cross-check
//! cargo run --example chern_routes             # Riemann-Roch vs Evens norm
//! cargo run --example homology_tables          # H_n(G;Z) by Smith normal form
//! cargo run --example type_c_certificates      # C_m certificates
//! cargo run --example transfer_laws            # class-level transfer identities
//! ```
//!
//! The thin `dwchern` binary exposes the same functionality as subcommands
//! (`dw`, `pair`, `cocycle`, `homology`, `cmcheck`, `transfer`, `selftest`).

pub mod bockstein;
pub mod chains;
pub mod chern;
pub mod error;
pub mod frac;
pub mod group;
pub mod homology;
pub mod snf;
pub mod transfer;

pub use error::{Error, Result};
pub use frac::Frac;

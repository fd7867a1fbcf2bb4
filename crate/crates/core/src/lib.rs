//! Endo-permutation sources of blocks with cyclic defect groups.
//!
//! The crate works entirely up to isomorphism: a module over the group
//! algebra of a cyclic `p`-group `D = C_{p^ell}` in characteristic `p` is a
//! multiset of Jordan block sizes ([`cyclic_kd::ModuleSum`]). Every closed
//! form is backed by an explicit matrix realization over `F_p` in
//! [`oracle`], which is what the verification sweeps in [`verify`] compare
//! against.
//!
//! Layout:
//!
//! * [`cyclic_kd`]: restriction, induction, Heller and relative Heller
//!   translates, vertices, permutation and endo-permutation tests.
//! * [`dade`]: the Dade group of `D` as bit vectors, the modules
//!   `W_D(alpha)`, determinant-one lift characters and the sign map.
//! * [`block_analysis`]: reading `W(B)` off non-exceptional character values,
//!   triviality criteria, restriction and shift bookkeeping.
//! * [`brauer_tree`]: planar embedded Brauer trees, type functions and
//!   similarity.
//! * [`descriptor`], [`report`], [`verify`]: the file format, report
//!   rendering and oracle sweeps used by the command-line tool.

pub mod block_analysis;
pub mod brauer_tree;
pub mod cyclic_kd;
pub mod dade;
pub mod descriptor;
mod error;
mod group;
pub mod oracle;
pub mod par;
pub mod report;
mod sign;
pub mod verify;

pub use error::{Error, Result};
pub use group::{is_prime, GroupSpec};
pub use oracle::OracleConfig;
pub use sign::Sign;

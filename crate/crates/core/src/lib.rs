//! Placement delivery arrays (PDAs) for centralized coded caching.
//!
//! A `(K, F, Z, S)` PDA describes an `F`-division caching scheme for `K`
//! users: user `k` caches packet `j` of every file when cell `(j, k)` is a
//! star, and the server broadcasts one XOR per integer symbol. The memory
//! ratio is `M/N = Z/F` and the rate is `R = S/F`.
//!
//! - [`pda`]: the array type, the C1–C3 verifier, canonical relabeling,
//!   equivalence and the text format.
//! - [`constructions`]: four `(q, z, m, t)` families with flexible memory
//!   ratio plus the MN baseline, and their closed-form parameters.
//! - [`sim`]: placement, XOR delivery and decoding on synthetic files.
//! - [`analysis`]: memory sharing, comparison bounds, scheme enumeration
//!   and the subpacketization growth estimate.
//! - [`cli`]: the `pda` command-line front end.

pub mod analysis;
pub mod cli;
pub mod constructions;
pub mod pda;
pub mod sim;

pub use constructions::{
    construct, construct_ext_general, construct_ext_special, construct_general, construct_mn,
    construct_special, theorem_params, ConstructionError, ConstructionParams, Family,
};
pub use pda::{
    canonicalize, emit, equivalent, params_of, parse, verify_pda, PdaArray, PdaCell, PdaParams,
    VerificationReport,
};

//! Non-zero sum Heffter arrays `NH_t(n;n)` over `Z_{2n^2+t}` and the objects
//! they generate.
//!
//! The crate is organised around a pipeline:
//!
//! 1. [`modular`] — exact arithmetic in `Z_v`, anchored partial sums, and the
//!    closed-form zig-zag partial-sum lists used by the direct constructions.
//! 2. [`construct`] — the direct constructions of tight globally simple
//!    `NH_t(n;n)` (t = 2, 2n, n², 2n², and every odd divisor of odd n), the
//!    2×2 lookup table, a parameter dispatcher, and closed-form row/column
//!    sum oracles.
//! 3. [`verify`] — exact certification of the defining axioms, global
//!    simplicity, simple-ordering search, and compatible-ordering search.
//! 4. [`decompose`] — cyclic path decompositions of the complete multipartite
//!    graph `K_{v/t × t}`, partition and orthogonality checks, and circuit
//!    closures.
//! 5. [`embed`] — face-2-colorable embeddings on orientable surfaces built
//!    from compatible orderings: rotation construction, face tracing, face
//!    spectra and genus.
//! 6. [`oracle`] — independent brute-force references used to validate the
//!    fast paths.
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod construct;
pub mod decompose;
pub mod embed;
pub mod modular;
pub mod oracle;
pub mod verify;

pub use construct::{construct, Axis, NzsArray, Provenance};
pub use modular::{AnchoredSequence, ModulusContext, ParamError, Residue};
pub use verify::{check_axioms, check_globally_simple, VerificationReport};

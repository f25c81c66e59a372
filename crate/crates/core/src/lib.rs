//! Cyclic and abelian codes over the chain ring F_{p^k} + uF_{p^k}, u^2 = 0.
//!
//! The crate works with repeated-root cyclic codes of length p^s, i.e. ideals of
//! R[x]/<x^{p^s} - 1>, through their canonical generator triples (T0, T1, h):
//! enumeration, duals, self-dual classification, mass formulas for abelian
//! codes over groups of the form Z_{p^s} x A, and a brute-force oracle that
//! checks all of it on small rings.

pub mod abelian;
pub mod bigcount;
pub mod chain_ring;
pub mod cli;
pub mod error;
pub mod gf;
pub mod ideal_canon;
pub mod limits;
pub mod linalg;
pub mod oracle;
pub mod selfdual;
pub mod verify;

pub use bigcount::BigCount;
pub use chain_ring::{Basis, ChainRing, PolyRing, QuotientPoly, RingElement, RingOp};
pub use error::{Error, Result};
pub use gf::{FieldCtx, FieldElement, FieldOp};
pub use ideal_canon::{canonicalize, CanonicalIdeal, CodeParams};
pub use linalg::FqMatrix;
pub use abelian::{count_euclidean_abelian, count_hermitian_abelian, cyclotomic_classes, AbelianGroup};
pub use selfdual::{count_euclidean, count_hermitian, count_selfdual, InnerProduct, SelfDualCount};

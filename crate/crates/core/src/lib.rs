//! Exact formal geometric quantisation for compact group actions and its
//! generator-level extension to noncompact groups.
//!
//! The crate is organised bottom-up:
//!
//! - [`rootdata`]: root data, weights, Weyl group actions.
//! - [`repring`]: characters, the representation ring and tensor products.
//! - [`formalseries`]: `Hom(R(K), ℤ)` as coefficient oracles with truncation.
//! - [`branching`]: restriction to subgroups with certified finiteness.
//! - [`khom`]: Dirac induction, external products, Dirac restriction and the
//!   module structure on K-homology generators.
//! - [`hamiltonian`]: combinatorial Hamiltonian models and their quantisations.

pub mod branching;
pub mod cone;
pub mod error;
pub mod formalseries;
pub mod hamiltonian;
pub mod khom;
pub mod linalg;
pub mod repring;
pub mod rootdata;

pub use branching::{Embedding, EmbeddingKind};
pub use error::{Error, Result};
pub use formalseries::{FormalSeries, Truncation};
pub use hamiltonian::{CoadjointOrbitModel, HamiltonianModel, InducedModel, InnerModel, LinearModel, Sign};
pub use khom::{EllipticRule, GroupModel, KHomologyClass, KTheoryClass};
pub use num_rational::Rational64;
pub use repring::{Character, RKElement};
pub use rootdata::{RootDatum, Weight};

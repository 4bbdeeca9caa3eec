//! A finite-model engine for presheaves over finite categories, the
//! distributors between them, and the quantifiers, monoidal structure and
//! identity predicates they carry.

pub mod category;
pub mod chirality;
pub mod corpus;
pub mod diagrams;
pub mod distributor;
pub mod equality;
pub mod error;
pub mod expr;
pub mod finset;
pub mod format;
pub mod functor;
pub mod hyperdoctrine;
pub mod laws;
pub mod lexer;
pub mod matll;
pub mod monoidal;
pub mod nat;
pub mod presheaf;
pub mod quantifiers;

pub use category::{Category, Morphism};
pub use error::{Error, Limits, Result};
pub use finset::{FinSet, SetMap};
pub use functor::Functor;
pub use distributor::Distributor;
pub use nat::{check_iso, BijectionReport, IsoReport, NatTrans};
pub use presheaf::{Presheaf, Variance};

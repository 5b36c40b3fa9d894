//! Exact arithmetic for modular forms on Gamma0(N): truncated q-expansions
//! over Z, Z[1/M] and Q, integer linear algebra (HNF/SNF, saturation, span
//! membership), modular curve invariants, eta quotients and T-forms, graded
//! bases, and the generator search for the graded ring of modular forms.

pub mod arith;
pub mod bases;
pub mod etaforms;
pub mod exactlinalg;
pub mod genring;
pub mod modcurve;
pub mod qseries;

pub use bases::{BasisProvider, GradedBasis, Provenance};
pub use etaforms::{EtaQuotient, TForm};
pub use exactlinalg::ExactMatrix;
pub use genring::{GeneratorSet, HaltReason};
pub use modcurve::{CurveInvariants, CuspData};
pub use qseries::{CoeffRing, QExpansion};

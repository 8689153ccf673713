//! Exact enumeration of fully packed loop configurations on random planar
//! maps, with series analysis and KPZ predictions.

pub mod analysis;
pub mod arch_state;
pub mod cli;
pub mod error;
pub mod exact;
pub mod family;
pub mod kpz;
pub mod transfer;

pub use arch_state::{EncodedState, ProductState};
pub use error::{AnalysisError, DomainError, FamilyError, TransferError};
pub use family::{Color, FamilySpec};

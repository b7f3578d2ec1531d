pub mod cones;
pub mod cross_connection;
pub mod error;
pub mod foundation;
pub mod ideals;
pub mod normal_dual;
pub mod partition_category;
pub mod powerset;
pub mod report;
pub mod semigroup;
pub mod suite;

pub use error::{Error, Result};

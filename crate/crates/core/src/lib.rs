//! Countable linear orders, their order topologies, and compactness
//! witnesses computed from cover streams and cuts.
//!
//! * [`order`]: linear orders presented by oracles, cuts and gap certificates.
//! * [`csc`]: countable second-countable spaces with a strong base, honest
//!   open-set codes and the injection space.
//! * [`topology`]: ordered spaces, linkages, finite-subcover search and the
//!   staged gap finder.
//! * [`kb`]: trees under the Kleene–Brouwer order and path extraction.
//! * [`formats`] and [`cli`]: text formats and the command-line driver.

pub mod cli;
pub mod coding;
pub mod csc;
pub mod error;
pub mod formats;
pub mod kb;
pub mod order;
pub mod topology;

pub use error::{Error, Result};

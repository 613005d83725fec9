//! File formats, on-disk store and command execution for the TimeML
//! workbench. Analysis lives in `tmlwb-core`.

pub mod fixtures;
pub mod ingest;
pub mod session;
pub mod store;

pub use session::{FindingsFormat, Outcome, Session, Status};
pub use store::Store;

//! Documents, the object store and run reports.

mod doc;
mod report;
mod store;

pub use doc::{BialgebraParts, Document, Object, KINDS, SCHEMA_VERSION};
pub use report::{CertificateSummary, DocRef, RunReport};
pub use store::{digest, Store, StoreEntry, STORE_ENV};

//! Batch front end for the permotive calculator: parses a JSON session
//! document, runs the requested computations, and emits deterministic
//! tabular or machine-readable output.

pub mod convert;
pub mod run;
pub mod session;

pub use convert::{resolve, ResolvedSession};
pub use run::{run_session, run_session_text, OutputFormat, RunError, RunOptions};
pub use session::{parse_session, SchemaError, SessionDocument, SCHEMA_JSON, SCHEMA_VERSION};

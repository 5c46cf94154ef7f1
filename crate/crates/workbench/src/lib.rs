//! File formats, a seeded instance corpus and the check suites behind the
//! `hofib` command.

pub mod corpus;
pub mod json;
pub mod report;
pub mod schema;
pub mod suites;

pub use corpus::{generate_corpus, Bounds, Corpus, CorpusSpec, Fault, Generator};
pub use report::{Check, Outcome, Report};
pub use schema::{load, parse, save, Document};
pub use suites::{run_suite, Options, Suite};

//! Core of the TimeML workbench.
//!
//! Everything here is pure and allocation-only: the annotation model, relation
//! folding, the point-algebra consistency checker, temporal graph checks, the
//! report engine and the command grammar. File IO, persistence and the
//! interactive front end live in the `tmlwb` crate.
#![no_std]

extern crate alloc;

pub mod browse;
pub mod check;
pub mod command;
pub mod finding;
pub mod fold;
pub mod graph;
pub mod model;
#[cfg(any(test, feature = "oracle"))]
pub mod oracle;
pub mod point_algebra;
pub mod query;
pub mod report;
pub mod text;

pub use check::{Check, CheckContext, CheckDescriptor, CheckError, CheckRun, Registry, Targets};
pub use finding::{CheckFinding, Severity};
pub use fold::{FoldError, FoldName, FoldRule, FoldScheme};
pub use model::{
    Corpus, DocKey, Document, Event, EventInstance, IntervalKind, IntervalRef, Link, LinkKind, RelType, RelationType,
    Signal, Span, Timex3, Token,
};
pub use point_algebra::{check_consistency, AgendaOrder, ConsistencyResult, PointAssertion};

//! Free-group words, finite presentations and coset enumeration.

mod coset;
mod presentation;
mod word;

pub use coset::{
    tc_enumerate, CosetTable, EnumerationLimits, LimitExceeded, Strategy, TableStatus,
};
pub use presentation::{
    cayley_presentation, multiplication_table_presentation, MultiplicationTable, Presentation,
};
pub use word::{Letter, Word};

//! Exact structure theory for linear Lie color algebras.

pub mod grading;
pub mod linalg;
pub mod graded;
pub mod algebra;
pub mod random;
pub mod structure;
pub mod problem;
pub mod report;

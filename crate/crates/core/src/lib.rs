pub mod error;
pub mod f2;
pub mod lattice;
pub mod weave;
pub mod schedule;
pub mod engine;
pub mod ssg;
pub mod phases;
pub mod decoder;
pub mod polyring;
pub mod cli;

pub mod error;
pub mod num;
pub mod series;
pub mod partitions;
pub mod report;
pub mod symfunc;
pub mod fock;
pub mod trace;
pub mod vertex;
pub mod cli;

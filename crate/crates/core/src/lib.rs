pub mod classify;
pub mod cluster;
pub mod error;
pub mod flagmodels;
pub mod liealg;
pub mod poly;
pub mod seedgen;
pub mod cli;

pub mod catalog;
pub mod cli;
pub mod error;
pub mod exactnum;
pub mod regions;
pub mod thompson;
pub mod finperm;
pub mod words;
pub mod oscillation;
pub mod solver;

pub mod algebra;
pub mod error;
pub mod field;
pub mod fp;
pub mod laurent;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod value;
pub mod linkage;
pub mod report;
pub mod sample;
pub mod valuation;
pub mod cli;

//! Front end for polarpoints-core: the input grammar, the JSON result
//! format, and the runner that fans levels out over threads.

pub mod exec;
pub mod parse;
pub mod report;

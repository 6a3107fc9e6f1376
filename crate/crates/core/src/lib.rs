pub mod catalog;
pub mod corpus;
pub mod exec;
pub mod explain;
pub mod fuzz;
pub mod hypothesis;
pub mod pipeline;
pub mod sql;
pub mod transition;
pub mod values;

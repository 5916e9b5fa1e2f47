pub mod cli;
pub mod compact;
pub mod dual;
pub mod error;
pub mod gamma;
pub mod hardy;
pub mod matrix;
pub mod operator;
pub mod partition;
pub mod report;
pub mod scalar;
pub mod symbol;

pub mod cli;
pub mod envy;
pub mod error;
pub mod game;
pub mod generate;
pub mod io;
pub mod oracle;
pub mod outcome;
pub mod reductions;
pub mod search;
pub mod solver_ef;
pub mod solver_jef;
pub mod solver_wjef;
pub mod structure;

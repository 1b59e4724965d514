//! Front end for the cascade toolkit: golden-table fixtures, the
//! verification suites, and the command-line driver.

pub mod app;
pub mod fixtures;
pub mod suites;

pub use app::run;

pub mod category;
pub mod cli;
pub mod corpus;
pub mod delta;
pub mod diagram;
pub mod error;
pub mod generate;
pub mod groupoid;
pub mod io;
pub mod iso;
pub mod monoid;
pub mod segal;
pub mod sgpd;
pub mod sset;
pub mod theorem;

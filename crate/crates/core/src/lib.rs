pub mod algebra;
pub mod bits;
pub mod cli;
pub mod error;
pub mod gf;
pub mod groups;
pub mod hall;
pub mod instances;
pub mod rat;
pub mod rep;
pub mod scalarext;
pub mod stability;
pub mod tau;
pub mod tors;
pub mod wcat;

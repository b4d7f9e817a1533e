pub mod cone;
pub mod fh;
pub mod lattice;
mod placing;
pub mod polytope;
pub mod screening;
pub mod triangulation;

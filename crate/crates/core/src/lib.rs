//! Exact computations with Soergel-type bimodules for the cyclic complex
//! reflection group of order `d`: indecomposables, tensor decompositions,
//! Hom spaces, the split Grothendieck ring and its spectral theory.

pub mod bimodule;
pub mod cyclotomic;
pub mod grothendieck;
pub mod laurent;
pub mod linalg;
pub mod poly;
pub mod polyring;
pub mod semisimple;

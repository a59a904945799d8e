//! Rank-two lattices in Z^N, their secondary fans, square-tiled periodic
//! surfaces, dessins and Kasteleyn determinants, compared against principal
//! A-determinants.

pub mod adet;
pub mod cli;
pub mod dessin;
pub mod error;
pub mod gkz;
pub mod intmat;
pub mod kasteleyn;
pub mod lattice;
pub mod polyring;
pub mod secondary;
pub mod surface;
pub mod svg;

pub use error::{Error, Result};

//! Polynomial solutions of the open-boundary qKZ system, link patterns, and
//! τ-weighted enumeration of symmetric plane partitions through
//! non-intersecting lattice paths.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod conjectures;
pub mod exactalg;
pub mod linkpattern;
pub mod nilp;
pub mod qkz;

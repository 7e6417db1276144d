//! Permutation-group models of planar twisty puzzles built from polygons
//! glued along edges.

pub mod cli;
pub mod group;
pub mod ledger;
pub mod movelang;
pub mod perm;
pub mod shape;
pub mod square;
pub mod theorem;

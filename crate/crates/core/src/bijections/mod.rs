//! Bijections: factorizations to parking functions, noncrossing elements to
//! pairs of trees, and trees to nonnesting order ideals.

pub mod determinant;
pub mod parking;
pub mod paths;
pub mod trees;

pub use determinant::{alternating_recurrence, bareiss_determinant, determinant_count, path_matrix};
pub use parking::{enumerate_parking, is_parking, phi, phi_inverse, ParkingFunction};
pub use paths::{
    dyck_to_tree, enumerate_dyck, enumerate_ideals, ideal_to_path, nc_to_nn, nn_to_nc, path_decompose, path_recombine,
    path_to_ideal, tree_to_dyck, DyckPath, LatticePath, OrderIdeal, Step,
};
pub use trees::{contract, expand, expand_and_join, gj_tree, split_and_contract, BicoloredTree, Color, PlaneTree, TreeFlavor};

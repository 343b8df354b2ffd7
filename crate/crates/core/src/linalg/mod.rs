//! Dense matrices and the normal forms built on them.

mod matrix;
mod novikov;
mod rank;
mod snf;

pub use matrix::{int_matrix, to_laurent, Matrix, Ring};
pub use novikov::{
    novikov_associated, novikov_diagonalize, novikov_diagonalize_partial, Diagonalization, OPERATION_CAP,
};
pub use rank::{adjugate, determinant, rank_over_function_field};
pub use snf::{inverse_unimodular, smith_normal_form_int, SnfResult};

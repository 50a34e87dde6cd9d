//! Reduction of the Gray–Ruškuc presentation: connectivity of matrix
//! positions, the local moves D/U/U′, simple forms, rising points and the
//! simple-form decomposition, and the resulting presentation simplification.

mod connectivity;
mod rising;
mod simplify;
mod steps;

pub use connectivity::{connectivity, ConnectivityLine, PositionGraph};
pub use rising::{decompose, is_simple_form, rising_point, Case, Decomposition, SimpleForm};
pub use simplify::{find_singular_witness, find_split_witness, simplify_presentation, Merge, Simplified, Witness};
pub use steps::{step_d, step_u, step_u_prime, support};

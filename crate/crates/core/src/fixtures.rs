//! Reference matrices with known efficient-set structure.

use crate::matrix::ReciprocalMatrix;
use crate::rational::{int, ratio};

/// Inconsistent 4x4 matrix whose efficient set is a single cone, cut out by
/// the cycle `1->4->3->2->1` with product 1/16. Two other cycles (and their
/// reverses) have product exactly 1.
pub fn single_cone_4x4() -> ReciprocalMatrix {
    // a12 a13 a14 a23 a24 a34
    ReciprocalMatrix::from_upper_triangle(
        4,
        &[int(2), int(1), ratio(1, 2), int(2), int(1), int(2)],
    )
    .expect("valid fixture")
}

/// Column perturbed 5x5 matrix already in canonical form (trailing block of
/// ones) with pairwise distinct first-row entries 1/5, 1/4, 2, 3.
pub fn column_perturbed_5x5() -> ReciprocalMatrix {
    let mut upper = vec![ratio(1, 5), ratio(1, 4), int(2), int(3)];
    upper.extend(std::iter::repeat_n(int(1), 6));
    ReciprocalMatrix::from_upper_triangle(5, &upper).expect("valid fixture")
}

/// Double perturbed 4x4 matrix (two modified entries in the first row) with
/// a non-convex efficient set.
pub fn double_perturbed_4x4() -> ReciprocalMatrix {
    ReciprocalMatrix::from_upper_triangle(
        4,
        &[ratio(1, 3), ratio(1, 2), int(1), int(1), int(1), int(1)],
    )
    .expect("valid fixture")
}

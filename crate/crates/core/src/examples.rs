//! The 20-point, nine-factor running example and its known images under
//! every map, used by golden checks.

use crate::factorization::Factorization;
use crate::mnr::MultiNodedRootedTree;
use crate::perm::Cycle;

const SIGMAS: [&[usize]; 9] = [
    &[10, 11],
    &[14, 15, 19],
    &[1, 19],
    &[3, 4, 5],
    &[1, 2, 13],
    &[15, 16, 17, 18],
    &[7, 8, 9, 11],
    &[19, 20],
    &[2, 5, 6, 11, 12],
];

/// S-vertices `s_j = 20 + j`.
pub const S: [i64; 9] = [21, 22, 23, 24, 25, 26, 27, 28, 29];

/// A factorization of `(1 2 ⋯ 20)` of type `(2,3,2,3,3,4,4,2,5)`.
pub fn running_example() -> Factorization {
    let sigmas = SIGMAS
        .iter()
        .map(|s| Cycle::new(20, s.to_vec()).expect("valid cycle"))
        .collect();
    Factorization::new(Cycle::standard(20), sigmas).expect("valid shape")
}

pub fn running_graph_edges() -> Vec<(i64, usize)> {
    SIGMAS
        .iter()
        .zip(S)
        .flat_map(|(sig, s)| {
            let mut pts = sig.to_vec();
            pts.sort_unstable();
            pts.into_iter().map(move |v| (s, v))
        })
        .collect()
}

/// Node labels per vertex index (root first).
pub fn running_labels() -> Vec<Vec<usize>> {
    vec![
        vec![1],
        vec![10],
        vec![14, 15],
        vec![19],
        vec![3, 4],
        vec![2, 13],
        vec![16, 17, 18],
        vec![7, 8, 9],
        vec![20],
        vec![5, 6, 11, 12],
    ]
}

pub fn running_mnr() -> MultiNodedRootedTree {
    MultiNodedRootedTree::from_edges(
        S.to_vec(),
        vec![1, 1, 2, 1, 2, 2, 3, 3, 1, 4],
        &[
            (29, 21, 3),
            (23, 22, 1),
            (0, 23, 1),
            (29, 24, 1),
            (0, 25, 1),
            (22, 26, 2),
            (29, 27, 3),
            (23, 28, 1),
            (25, 29, 1),
        ],
    )
    .expect("valid tree")
}

/// Top and bottom rows of the generalized Prüfer matrix.
pub fn running_matrix() -> (Vec<i64>, Vec<usize>) {
    (vec![23, 29, 22, 29, 23, 0, 29, 25, 0], vec![1, 3, 2, 1, 1, 1, 3, 1, 1])
}

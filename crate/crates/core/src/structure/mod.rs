//! Walls and cubic meshes, the sparse twin-width-3 family, biclique
//! detection, disjoint paths, and tree-width.

pub mod biclique;
pub mod family;
pub mod flow;
pub mod treewidth;
pub mod wall;

pub use biclique::has_ktt;
pub use family::{gen_tww3_family, tww3_family_sequence, Tww3Family};
pub use flow::{disjoint_paths_within, max_disjoint_paths, min_vertex_cut, DisjointPaths};
pub use treewidth::{
    elimination_width, from_elimination_order, min_fill_order, minor_min_width, treewidth_decide, treewidth_dp,
    treewidth_exact, verify_tree_decomposition, TdViolation, TreeDecomposition, Treewidth, TwDecision,
};
pub use wall::{
    gen_subdivided_wall, gen_wall, verify_mesh, wall_edges, wall_to_mesh, MeshEmbedding, MeshError, WallError,
    WallLabeling,
};

//! Trajectories, canonical walks and their combinatorial classification.

mod cells;
mod census;
mod dyck;
mod enumerate;
mod graph;
mod reduce;
mod walk;

pub use cells::{bts_and_cells, CellReport, LocalBts, ProperCell, RemoteBts};
pub use census::{
    census, classify_arrival, diagram_params, ArrivalClass, ArrivalKind, Census, DiagramParams,
    VertexClass,
};
pub use dyck::{dyck_from_tree, tree_from_dyck, DyckPath, PlaneTree};
pub use enumerate::{enumerate_even_walks, EvenWalks, DEFAULT_WALK_CAP};
pub use graph::{label_steps, max_exit_degree, walk_graph, MarkedEdge, StepLabeling, WalkGraph};
pub use reduce::{strong_reduce, weak_reduce, ReducedWalk};
pub use walk::{class_size, walk_from_trajectory, Trajectory, Walk};

//! Vertex criteria for dipoles, roses and glued scenarios.

mod construct;
mod enumerate;
mod fiber;
mod product_simplex;
mod support_graph;
mod vertex;

pub use construct::*;
pub use enumerate::{
    count_vertices_by_criterion, enumerate_dipole_vertices, enumerate_rose_vertices,
    enumerate_vertices_by_criterion, Family, VertexCensus, DEFAULT_SEARCH_BUDGET,
};
pub use fiber::*;
pub use product_simplex::ProductSimplexVertex;
pub use support_graph::{
    component_row, q_matrix, q_matrix_present_only, Component, QMatrix, QVariant, RowOrigin,
    SupportBipartiteGraph,
};
pub use vertex::{a_sets, dipole_is_vertex, rose_is_vertex, CriterionReport, Shape};

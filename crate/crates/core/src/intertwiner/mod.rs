//! 1- and 2-intertwiners: bridges, the cocycle condition on elementary
//! self-intertwiners, dimension tables on discretized fiber products, and
//! scalar fields with their compositions.

mod bridge;
mod cocycle;
mod interchange;
mod one;
mod two;

pub use bridge::{bridge, bridge_tangent_rank, intersect_same_axis, Bridge};
pub use cocycle::{
    cocycle_check, elementary_self_intertwiners, invariant_field_dimension, quadratic_basis, CocycleField,
    CocycleReport, CocycleSampling, ElementarySelfIntertwiners,
};
pub use interchange::{check_interchange_conditions, InterchangeGrid, InterchangeReport};
pub use one::{
    compose_1, fiber_nodes, tensor_1, whiskering_orders, HilbertDims, InterchangeChoice, IsotropyLabel,
    OneIntertwiner, RepObject, SupportComponent, WhiskeringReport,
};
pub use two::{compose_2_horizontal, compose_2_vertical, tensor_2, TwoIntertwiner};

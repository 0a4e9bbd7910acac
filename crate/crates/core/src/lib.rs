//! Exact geometry of thermal processes and of the states they can reach.
//!
//! All arithmetic is over arbitrary-precision rationals. Floats only enter
//! through [`GibbsContext::from_energies`], which rounds each Gibbs weight
//! once and works exactly from then on.

pub mod curve;
pub mod error;
pub mod gibbs;
pub mod matrix;
pub mod polytope;
pub mod process;
pub mod rational;
pub mod registry;
pub mod state;
pub mod transport;

pub use curve::{
    build_curve, eval_at, face_signature, thermomajorizes, tightly_thermomajorizes, FaceSignature,
    Point, ThermoCurve,
};
pub use error::{Error, Result};
pub use gibbs::{gibbs_state, make_context, make_context_exact, GibbsContext};
pub use matrix::Matrix;
pub use polytope::{
    are_adjacent_extremals, decompose, extremal_states, hull_membership_oracle, is_achievable,
    is_interior, Decomposition, ExtremalState, Term,
};
pub use process::{
    apply, from_transportation, is_thermal_process, slope_transformer, slope_vector,
    to_transportation, tp_from_pair, ThermalProcess,
};
pub use rational::{format_rational, parse_rational, Rational};
pub use registry::{Registry, Strategy};
pub use state::State;
pub use transport::{
    enumerate_extremal_tps, enumerate_vertices, is_biplanar, is_extremal, plane_orders,
    EnumerationOptions, ExtremalProcess, TransportationMatrix,
};

//! Rotationally symmetric Willmore geometry in the hyperbolic half-plane.
//!
//! Profile curves `γ = (x, y)` in the upper half-plane generate surfaces of
//! revolution about the x-axis. The crate provides
//!
//! * [`hyper`]: points, unit tangents, Möbius maps, frames, inversions,
//!   geodesic curvature and hyperbolic length;
//! * [`revsurf`]: Willmore and elastic energies of sampled profiles, caps,
//!   boundary data and the closed Willmore energy;
//! * [`elastica`]: exact asymptotic geodesics (Möbius images of the catenoid)
//!   and the boundary value solver reaching a prescribed axis point;
//! * [`threshold`]: the energy threshold `inf_x W_closed(c^x)` and admissibility checks;
//! * [`flow`]: a clamped discrete gradient flow of the elastic energy with monitors;
//! * [`io`], [`plot`], [`cli`]: CSV/JSON files, SVG line plots and the command line.

pub mod cli;
pub mod curve;
pub mod diff;
pub mod elastica;
pub mod error;
pub mod flow;
pub mod hyper;
pub mod io;
pub mod plot;
pub mod revsurf;
pub mod threshold;

pub use curve::SampledCurve;
pub use error::{End, Error, Result};
pub use hyper::{BoundaryPoint, HPoint, MoebiusMap, UnitTangent};
pub use revsurf::BoundaryData;

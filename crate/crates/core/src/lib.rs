//! Quaternion and biquaternion numerics.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: Hamilton quaternions, biquaternions and the Kronecker/Levi-Civita symbols.
//! * [`matrix`] and [`rep`]: square complex matrices and matrix representations of the
//!   three vector units (`q1`, `q2`, `q3`), including rank doubling to real matrices.
//! * [`transform`]: spinor-type (`q -> U q U^-1`) and vector-type (`q -> O q`) maps of unit
//!   triads, complex Euler angles and hyperbolic rotations.
//! * [`eigen`]: eigenfunctions of the units, projectors and the scalar invariants built
//!   from them.
//! * [`grid`] and [`geom`]: the connection of a moving triad on a parameter grid, its
//!   transformation law, Frenet frames and curvature.
//! * [`ode`] and [`mech`]: Newtonian dynamics in rotating frames.
//! * [`rel`]: interval, boosts, circular motion and Thomas precession.
//! * [`field`]: Fueter/Maxwell, Pauli Hamiltonian and Yang-Mills strength checks.
//! * [`io`]: CSV tables for trajectories and fields; [`ephemeris`]: shipped orbital
//!   constants.

pub mod algebra;
pub mod eigen;
pub mod ephemeris;
pub mod error;
pub mod field;
pub mod geom;
pub mod grid;
pub mod io;
pub mod matrix;
pub mod mech;
pub mod ode;
pub mod random;
pub mod rel;
pub mod rep;
pub mod tol;
pub mod transform;

pub use algebra::{Biquaternion, Quaternion};
pub use error::{Error, Result};
pub use matrix::CMatrix;
pub use num_complex::Complex64;
pub use rep::UnitTriad;
pub use transform::{Rotor, RotorKind, SpinorMap};

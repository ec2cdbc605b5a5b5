//! Exact computations with even Clifford algebras of conic fibrations over
//! the projective plane.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactfield`]: finite fields `F_{p^n}`, Gaussian rationals, univariate
//!   polynomials, root finding and resultants.
//! * [`clifford`]: the four-dimensional even Clifford algebra of a ternary
//!   quadratic form, its quiver presentation in the corank-one case and the
//!   classification of its two-dimensional representations.
//! * [`fibration`]: conic fibrations given by symmetric matrices of forms,
//!   their discriminant curves, intersections with lines and conics, and the
//!   splitting of degenerate fibres into pairs of lines.
//! * [`prymcomb`]: the even-subset torsor acting on module data over a
//!   rational curve, the lift to the double cover, and half parity.
//! * [`spectral`]: the affine spectral correspondence for `t^2 = s`.
//! * [`verify`]: self-check suites used by the command line `verify` command.

pub mod clifford;
pub mod error;
pub mod exactfield;
pub mod fibration;
pub mod prymcomb;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};

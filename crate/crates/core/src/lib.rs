//! Knot colouring polynomials over finite pointed groups.
//!
//! Given a knot diagram and a finite group G with basepoint x whose
//! conjugacy class generates G, the colouring polynomial is the formal
//! sum, over all arc colourings fixing the first arc's colour to x, of
//! the longitude word's value — an element of the group ring ℤG
//! supported in Λ = C(x) ∩ G′. The crate also computes the two
//! equivalent presentations of this invariant: quandle 2-cocycle
//! state sums and traces of monomial Yang-Baxter braid representations,
//! and cross-checks all three numerically.

pub mod colouring;
pub mod diagram;
pub mod error;
pub mod group;
pub mod perm;
pub mod quandle;
pub mod ring;
pub mod state_sum;
pub mod yang_baxter;

pub mod cli;
pub mod verify;

pub use error::Error;
pub use group::{BasepointSpec, GroupKind, PointedGroup, Subgroup};
pub use perm::Perm;
pub use ring::RingElement;

//! Construction and analysis of normal bases of `F_{q^n}/F_q` built from
//! elliptic periods.
//!
//! The pipeline goes: pick an elliptic curve `E/F_q` with a rational point `t`
//! of order `n`, form the quotient isogeny `E -> E/<t>`, pull the extension
//! field `F_{q^n}` back through the isogeny, lift a point `b` with
//! `phi(b) = b + t`, and evaluate a family of slope functions at `b` to obtain
//! a normal basis. The multiplication table of that basis is governed by a
//! handful of special vectors in the cyclic convolution algebra `F_q[Z/nZ]`,
//! which give lower and upper bounds on its weight as well as the exact count.
//!
//! The crate is `no_std` (plus `alloc`); IO, serialization and the CLI live in
//! the companion `enb-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod curve;
pub mod enb;
pub mod error;
pub mod field;
pub mod isogeny;
pub mod poly;
pub mod tensor;

pub use curve::{Curve, Point};
pub use enb::{EnbParams, Overrides, SearchBudget};
pub use error::{Error, Result};
pub use field::{Element, Field};
pub use isogeny::Isogeny;
pub use tensor::{ComplexityReport, CyclicVector, SpecialVectors};

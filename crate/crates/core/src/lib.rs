//! Exact arithmetic for the mirror-modularity of G-Fano threefolds.
//!
//! The crate is layered bottom-up:
//!
//! - [`series`]: dense truncated power series over big rationals, with
//!   composition, reversion, fractional powers and Laplace-type shifts;
//! - [`qexp`] and [`eta`]: q-expansions with fractional leading exponent,
//!   Dedekind eta-products, `E4`, `Delta` and Klein's `j`;
//! - [`hauptmodul`]: the moonshine Hauptmoduln and their mirror maps;
//! - [`d3`]: the normalized third-order operators and their analytic solutions;
//! - [`families`]: closed-form I-series of the G-Fano families;
//! - [`verify`]: coefficient-exact checks of the eta-product identities;
//! - [`mathieu`]: frame shapes, the arithmetic functions attached to a level,
//!   Mason's eta-products and the Fano/M24 correspondence table.

pub mod d3;
pub mod error;
pub mod eta;
pub mod families;
pub mod hauptmodul;
pub mod mathieu;
pub mod qexp;
pub mod rational;
pub mod report;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use qexp::QExpansion;
pub use rational::Rational;
pub use series::{ShiftConstant, TruncatedSeries};

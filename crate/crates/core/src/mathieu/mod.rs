//! Frame shapes of M23, M24 and S24, the functions `phi`, `psi`, `epsilon`,
//! `iota`, Mason's eta-products and the correspondence with G-Fano families.

pub mod arithmetic;
pub mod correspondence;
pub mod frame;
pub mod mason;

pub use arithmetic::{epsilon, iota, phi, psi, rational_type};
pub use correspondence::{correspondence_report, frobenius_mukai_check};
pub use frame::{parse_frame_shape, FrameShape};
pub use mason::{hecke_eigenform_check, mason_eta};

//! The construction pipeline: comparison maps, the Tate-like complex, the
//! morphism into the shifted Koszul complex, the constrained nullhomotopy,
//! the induced bilinear maps, and the assembled five-term complex with its
//! multiplication.
//!
//! Stages are sequential; each consumes the verified output of the previous
//! one and re-checks its own postconditions exactly.

pub mod comparison;
pub mod tate;
pub mod cmorph;
pub mod homotopy;
pub mod xmaps;
pub mod skeleton;
pub mod calibrate;
pub mod complex_f;

pub use calibrate::{calibrate_structure, Calibration, CalibrationMode};
pub use comparison::{build_alpha, build_beta, ComparisonData};
pub use complex_f::{build_f, compute_h0_ideal, verify_f, BfsComplex};
pub use cmorph::{build_c, CMorphism};
pub use homotopy::{solve_homotopy, HomotopyData};
pub use tate::{build_tate_b, TateComplexB};
pub use xmaps::{extract_x, XMaps};

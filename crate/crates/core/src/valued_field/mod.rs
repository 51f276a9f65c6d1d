//! Exact valuation theory over `Q_p` and its Eisenstein and unramified
//! extensions: absolute values, field elements, residues and Newton polygons.

mod absvalue;
mod field;
mod newton;

pub use absvalue::AbsValue;
pub use field::{eisenstein_criterion, make_extension, ExtField, Field, FieldElt, FieldKind};
pub use newton::{
    conjugate_distances, newton_polygon, orbit_diameter, ExtPoly, NewtonPolygon, NewtonSlope,
};

use crate::arith::{vp as vp_rational, Exp, Q};

/// p-adic valuation of a rational, `None` for zero.
pub fn vp(p: u64, x: &Q) -> Option<Exp> {
    vp_rational(p, x).map(Exp::from_integer)
}

use core::f64::consts::FRAC_PI_2;

#[allow(unused_imports)] // inherent float methods exist once std is linked
use num_traits::Float;

use crate::error::{FrftError, Result};

/// Orders within this distance of an integer take the exact integer path.
pub const ORDER_EPSILON: f64 = 1e-6;

/// A transform order `a`, together with its representative in `(-2, 2]`
/// and the rotation angle `a * pi / 2` of that representative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrftOrder {
    raw: f64,
    reduced: f64,
    angle: f64,
}

/// Exact integer transforms of the centered grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegerOrder {
    Identity,
    Dft,
    InverseDft,
    Reversal,
}

pub fn reduce_order(raw: f64) -> Result<FrftOrder> {
    if !raw.is_finite() {
        return Err(FrftError::InvalidArgument("transform order must be finite"));
    }
    // `%` is exact on floats; shift into [0, 4) then onto (-2, 2]
    let mut reduced = raw % 4.0;
    if reduced < 0.0 {
        reduced += 4.0;
    }
    if reduced > 2.0 {
        reduced -= 4.0;
    }
    Ok(FrftOrder { raw, reduced, angle: reduced * FRAC_PI_2 })
}

impl FrftOrder {
    pub fn new(raw: f64) -> Result<Self> {
        reduce_order(raw)
    }

    pub fn raw(&self) -> f64 {
        self.raw
    }

    /// Representative in `(-2, 2]`.
    pub fn reduced(&self) -> f64 {
        self.reduced
    }

    /// Rotation angle in radians.
    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn negated(&self) -> Self {
        // raw is finite, so this cannot fail
        reduce_order(-self.raw).expect("negated finite order")
    }

    /// The exact integer transform this order snaps to, if any.
    pub fn as_integer(&self) -> Option<IntegerOrder> {
        let nearest = self.reduced.round();
        if (self.reduced - nearest).abs() > ORDER_EPSILON {
            return None;
        }
        Some(match nearest as i64 {
            0 => IntegerOrder::Identity,
            1 => IntegerOrder::Dft,
            -1 => IntegerOrder::InverseDft,
            // -2 only arises as the limit of reduced orders just above -2
            _ => IntegerOrder::Reversal,
        })
    }
}

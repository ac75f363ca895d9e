//! A validated fractional differentiation order.

use std::fmt;

/// Error returned when constructing a [`FractionalOrder`] from a value
/// outside `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
#[error("fractional order must be a finite value in (0, 1], got {0}")]
pub struct InvalidOrder(pub f64);

/// The order of a Caputo fractional derivative, restricted to `(0, 1]`.
///
/// The restriction matches the solver's discretization, which is derived for
/// a single initial value; `1.0` is allowed and recovers the classical
/// first-order derivative. The constructor rejects NaN, so total ordering and
/// use as a map key are well defined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    /// Validates `value` and wraps it. Accepts finite values in `(0, 1]`.
    pub fn new(value: f64) -> Result<Self, InvalidOrder> {
        if value.is_finite() && value > 0.0 && value <= 1.0 {
            Ok(Self(value))
        } else {
            Err(InvalidOrder(value))
        }
    }

    /// The wrapped order value.
    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// Whether this is the classical (integer) order `1`.
    #[inline]
    pub fn is_classical(self) -> bool {
        self.0 == 1.0
    }
}

impl TryFrom<f64> for FractionalOrder {
    type Error = InvalidOrder;

    fn try_from(value: f64) -> Result<Self, InvalidOrder> {
        Self::new(value)
    }
}

impl Eq for FractionalOrder {}

impl PartialOrd for FractionalOrder {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FractionalOrder {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // NaN is unrepresentable, so total_cmp agrees with the usual order.
        self.0.total_cmp(&other.0)
    }
}

impl fmt::Display for FractionalOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // The shortest round-trip representation: "0.7", "1.0", ...
        write!(f, "{:?}", self.0)
    }
}

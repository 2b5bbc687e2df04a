//! Scalar abstraction for edge labels, durations and interval endpoints.
//!
//! Everything in this crate is computed over an exact ordered field. The
//! kernel is generic over the scalar so that the whole tower (trees, paths,
//! bar elements, interval configurations) can be instantiated with any exact
//! rational representation; the crate root exports [`crate::Q`] (arbitrary
//! precision) as the default. Floating point types do not satisfy the `Ord +
//! Eq + Hash` bounds and are therefore rejected at compile time, which is
//! intentional: every identity checked here is exact.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::{FromPrimitive, Num, Signed};

/// An exact ordered field scalar.
///
/// Blanket-implemented; `Ratio<i64>` and `Ratio<BigInt>` both qualify.
pub trait Scalar:
    Num + Signed + FromPrimitive + Clone + Ord + Eq + Hash + Debug + Display + 'static
{
}

impl<T> Scalar for T where
    T: Num + Signed + FromPrimitive + Clone + Ord + Eq + Hash + Debug + Display + 'static
{
}

/// The scalar value of a small integer.
pub fn int<R: Scalar>(n: i64) -> R {
    R::from_i64(n).expect("small integer must be representable")
}

/// The scalar `p/q`, exact.
pub fn frac<R: Scalar>(p: i64, q: i64) -> R {
    assert!(q != 0, "zero denominator");
    int::<R>(p) / int::<R>(q)
}

/// Midpoint of two scalars.
pub fn midpoint<R: Scalar>(a: &R, b: &R) -> R {
    (a.clone() + b.clone()) / int::<R>(2)
}

/// `max` by the total order.
pub fn max<R: Scalar>(a: R, b: R) -> R {
    if a >= b {
        a
    } else {
        b
    }
}

/// True iff `0 <= x <= 1`.
pub fn in_unit_interval<R: Scalar>(x: &R) -> bool {
    !x.is_negative() && *x <= R::one()
}

use crate::rational::Q;
use num_traits::{One, Zero};

/// Ring operations the contraction engine needs. Implemented for exact
/// rationals and for truncated power series in the chord parameter.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug + Send + Sync + 'static {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn vanishes(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn from_q(q: &Q) -> Self;

    fn accumulate(&mut self, other: &Self) {
        *self = self.plus(other);
    }
}

impl Scalar for Q {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_q(q: &Q) -> Self {
        q.clone()
    }
    fn accumulate(&mut self, other: &Self) {
        *self += other;
    }
}

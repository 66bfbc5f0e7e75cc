use crate::Scalar;

/// Neumaier-compensated accumulator.
///
/// Norms and series sums run through this so results are deterministic for a
/// fixed iteration order and accurate to a few ulps regardless of length.
pub struct Kahan<T> {
    sum: T,
    comp: T,
}

impl<T: Scalar> Kahan<T> {
    pub fn new() -> Self {
        Kahan {
            sum: T::zero(),
            comp: T::zero(),
        }
    }

    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp = self.comp + ((self.sum - t) + x);
        } else {
            self.comp = self.comp + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn total(&self) -> T {
        self.sum + self.comp
    }
}

/// Compensated sum of an iterator, in iteration order.
pub fn sum<T: Scalar>(it: impl IntoIterator<Item = T>) -> T {
    let mut acc = Kahan::new();
    for x in it {
        acc.add(x);
    }
    acc.total()
}

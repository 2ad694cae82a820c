//! Exact arithmetic: rationals, 2×2 rational matrices, and the formal
//! quadratic extension that houses the characteristic roots.

mod mat2;
mod quad;
mod rational;

pub use mat2::Mat2;
pub use quad::QuadNum;
pub use rational::Rational;

/// Parity of an index: 0 for even, 1 for odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn value(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// The complementary parity, i.e. `1 − ε`.
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

pub fn parity(n: u64) -> Parity {
    if n.is_multiple_of(2) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// `base^ε`: `base` when odd, one when even.
pub(crate) fn pow_parity(base: &Rational, p: Parity) -> Rational {
    match p {
        Parity::Even => Rational::one(),
        Parity::Odd => base.clone(),
    }
}

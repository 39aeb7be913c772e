use super::rational::Rational;
use std::fmt::Debug;

/// A commutative semiring with the usual nonnegativity notion.
///
/// The boolean semiring uses `∨` as addition and `∧` as multiplication.
pub trait Semiring: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool {
        false
    }
    /// The support map `χ`.
    fn support(&self) -> bool {
        !self.is_zero()
    }
    fn render(&self) -> String;
    fn to_rational(&self) -> Rational;
}

impl Semiring for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Rational::is_negative(self)
    }
    fn render(&self) -> String {
        self.to_ratio_string()
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
}

impl Semiring for bool {
    fn zero() -> Self {
        false
    }
    fn one() -> Self {
        true
    }
    fn add(&self, other: &Self) -> Self {
        *self || *other
    }
    fn mul(&self, other: &Self) -> Self {
        *self && *other
    }
    fn is_zero(&self) -> bool {
        !*self
    }
    fn render(&self) -> String {
        if *self { "1" } else { "0" }.to_string()
    }
    fn to_rational(&self) -> Rational {
        if *self { Rational::one() } else { Rational::zero() }
    }
}

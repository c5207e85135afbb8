//! Exact arithmetic: prime fields, vector alphabets, `Q(ω)`, and polynomials over it.

pub mod cyclo;
pub mod field;
pub mod linalg;
pub mod poly;

pub use cyclo::{omega_pow, CycloRational};
pub use field::{inner_product, Alphabet, PrimeField, Symbol};
pub use poly::{poly_scale_equal, Monomial, Polynomial};

use num_rational::BigRational;

/// Coefficient ring of factor tables: either plain elements of `Q(ω)` or polynomials over it.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn zero(p: u32) -> Self;
    fn one(p: u32) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn add_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &CycloRational) -> Self;

    fn scale_rational(&self, q: &BigRational) -> Self
    where
        Self: Sized,
    {
        self.scale(&CycloRational::from_rational(self.prime(), q.clone()))
    }

    fn prime(&self) -> u32;

    /// `α > 0` rational with `self = α·other`, if the witness is determined by a
    /// single entry; callers confirm it over the whole table.
    fn ratio_hint(&self, other: &Self) -> Option<BigRational>;
}

impl Coeff for CycloRational {
    fn zero(p: u32) -> Self {
        CycloRational::zero(p)
    }
    fn one(p: u32) -> Self {
        CycloRational::one(p)
    }
    fn is_zero(&self) -> bool {
        CycloRational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &CycloRational) -> Self {
        self * c
    }
    fn prime(&self) -> u32 {
        self.p()
    }
    fn ratio_hint(&self, other: &Self) -> Option<BigRational> {
        let slot = other.coeffs().iter().position(|c| !num_traits::Zero::is_zero(c))?;
        Some(&self.coeffs()[slot] / &other.coeffs()[slot])
    }
}

impl Coeff for Polynomial {
    fn zero(p: u32) -> Self {
        Polynomial::zero(p)
    }
    fn one(p: u32) -> Self {
        Polynomial::one(p)
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn add_assign(&mut self, other: &Self) {
        Polynomial::add_assign(self, other);
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &CycloRational) -> Self {
        Polynomial::scale(self, c)
    }
    fn prime(&self) -> u32 {
        self.p()
    }
    fn ratio_hint(&self, other: &Self) -> Option<BigRational> {
        let (m, c) = other.terms().next()?;
        self.coeff(m).ratio_hint(c)
    }
}

/// Returns `α > 0` rational with `a[i] = α·b[i]` for every `i`. Two all-zero tables give 1.
pub fn table_scale_equal<T: Coeff>(a: &[T], b: &[T]) -> Option<BigRational> {
    use num_traits::{One, Signed};
    if a.len() != b.len() {
        return None;
    }
    let Some(i) = b.iter().position(|v| !v.is_zero()) else {
        return a.iter().all(Coeff::is_zero).then(BigRational::one);
    };
    let alpha = a[i].ratio_hint(&b[i])?;
    if !alpha.is_positive() {
        return None;
    }
    a.iter()
        .zip(b)
        .all(|(x, y)| *x == y.scale_rational(&alpha))
        .then_some(alpha)
}

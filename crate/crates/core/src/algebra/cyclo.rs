//! Exact arithmetic in the cyclotomic field `Q(ω)`, `ω` a primitive `p`-th root of unity.
//!
//! Elements are stored in the power basis `{1, ω, …, ω^{p-2}}`, reduced with
//! `1 + ω + … + ω^{p-1} = 0`. For `p = 2` this is a single rational and `ω = -1`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycloRational {
    p: u32,
    coeffs: Vec<BigRational>,
}

fn slots(p: u32) -> usize {
    (p - 1) as usize
}

impl CycloRational {
    pub fn zero(p: u32) -> Self {
        Self {
            p,
            coeffs: vec![BigRational::zero(); slots(p)],
        }
    }

    pub fn one(p: u32) -> Self {
        Self::from_rational(p, BigRational::one())
    }

    pub fn from_rational(p: u32, q: BigRational) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = q;
        z
    }

    pub fn from_int(p: u32, n: i64) -> Self {
        Self::from_rational(p, BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds an element from explicit basis coefficients; length must be `p - 1`.
    pub fn from_coeffs(p: u32, coeffs: Vec<BigRational>) -> Option<Self> {
        (coeffs.len() == slots(p)).then_some(Self { p, coeffs })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Complex conjugation, `ω ↦ ω^{-1}`.
    pub fn conj(&self) -> Self {
        let p = self.p as usize;
        let mut full = vec![BigRational::zero(); p];
        for (i, c) in self.coeffs.iter().enumerate() {
            full[(p - i) % p] += c;
        }
        Self::reduce(self.p, full)
    }

    fn reduce(p: u32, mut full: Vec<BigRational>) -> Self {
        // full has length p; eliminate ω^{p-1} = -(1 + ω + … + ω^{p-2}).
        let top = full.pop().expect("length p");
        if !top.is_zero() {
            for c in full.iter_mut() {
                *c -= &top;
            }
        }
        Self { p, coeffs: full }
    }

    fn assert_same(&self, other: &Self) {
        assert_eq!(self.p, other.p, "cyclotomic elements over different primes");
    }
}

/// Canonical representation of `ω^k`, `k` taken mod `p`.
pub fn omega_pow(p: u32, k: i64) -> CycloRational {
    let r = k.rem_euclid(p as i64) as usize;
    let mut z = CycloRational::zero(p);
    if r + 1 < p as usize {
        z.coeffs[r] = BigRational::one();
    } else {
        for c in z.coeffs.iter_mut() {
            *c = -BigRational::one();
        }
    }
    z
}

impl Add for &CycloRational {
    type Output = CycloRational;
    fn add(self, rhs: &CycloRational) -> CycloRational {
        self.assert_same(rhs);
        CycloRational {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl AddAssign<&CycloRational> for CycloRational {
    fn add_assign(&mut self, rhs: &CycloRational) {
        self.assert_same(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for &CycloRational {
    type Output = CycloRational;
    fn sub(self, rhs: &CycloRational) -> CycloRational {
        self.assert_same(rhs);
        CycloRational {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &CycloRational {
    type Output = CycloRational;
    fn neg(self) -> CycloRational {
        CycloRational {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CycloRational {
    type Output = CycloRational;
    fn mul(self, rhs: &CycloRational) -> CycloRational {
        self.assert_same(rhs);
        let p = self.p as usize;
        if let Some(q) = rhs.as_rational() {
            return self.scale(q);
        }
        if let Some(q) = self.as_rational() {
            return rhs.scale(q);
        }
        // Cyclic convolution in Q[ω]/(ω^p - 1), then reduce.
        let mut full = vec![BigRational::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                full[(i + j) % p] += a * b;
            }
        }
        CycloRational::reduce(self.p, full)
    }
}

impl fmt::Display for CycloRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        f.write_str("(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, "{sign}")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("w")?,
                (1, false) => write!(f, "{mag}*w")?,
                (_, true) => write!(f, "w^{i}")?,
                (_, false) => write!(f, "{mag}*w^{i}")?,
            }
        }
        f.write_str(")")
    }
}

//! Prime fields and vector alphabets over them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The prime field `Z_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..1 << 16).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        (self.p - a) % self.p
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }
}

impl TryFrom<u32> for PrimeField {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        Self::new(p)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The vector space `(Z_p)^dim`, used as a symbol or state alphabet.
///
/// Elements are enumerated lexicographically with the first coordinate
/// varying fastest, so for `(Z_2)^2` the order is `00, 10, 01, 11`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet {
    field: PrimeField,
    dim: usize,
}

impl Alphabet {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        Self { field, dim }
    }

    pub fn over(p: u32, dim: usize) -> Result<Self> {
        Ok(Self::new(PrimeField::new(p)?, dim))
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.field.p
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `p^dim`, or `None` on overflow.
    pub fn checked_cardinality(&self) -> Option<usize> {
        (self.p() as usize).checked_pow(self.dim as u32)
    }

    /// `p^dim`. Panics on overflow; alphabets are meant to be small.
    pub fn cardinality(&self) -> usize {
        self.checked_cardinality()
            .expect("alphabet cardinality overflows usize")
    }

    pub fn zero(&self) -> Symbol {
        Symbol {
            p: self.p(),
            coords: vec![0; self.dim],
        }
    }

    pub fn symbol(&self, coords: Vec<u32>) -> Result<Symbol> {
        Symbol::new(self.p(), coords).and_then(|s| {
            if s.dim() == self.dim {
                Ok(s)
            } else {
                Err(Error::AlphabetMismatch(format!(
                    "symbol has {} coordinates, alphabet dimension is {}",
                    s.dim(),
                    self.dim
                )))
            }
        })
    }

    pub fn symbol_at(&self, mut index: usize) -> Symbol {
        let p = self.p() as usize;
        let coords = (0..self.dim)
            .map(|_| {
                let c = (index % p) as u32;
                index /= p;
                c
            })
            .collect();
        Symbol { p: self.p(), coords }
    }

    pub fn index_of(&self, s: &Symbol) -> Result<usize> {
        self.check(s)?;
        Ok(index_of_coords(&s.coords, self.p()))
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.cardinality()).map(move |i| self.symbol_at(i))
    }

    pub fn check(&self, s: &Symbol) -> Result<()> {
        if s.p != self.p() || s.coords.len() != self.dim {
            return Err(Error::AlphabetMismatch(format!(
                "symbol {} does not belong to (Z_{})^{}",
                s,
                self.p(),
                self.dim
            )));
        }
        Ok(())
    }

    /// Parses a label such as `"10"` (p ≤ 10) or `"1,0"`.
    pub fn parse_symbol(&self, label: &str) -> Result<Symbol> {
        let coords: Vec<u32> = if label.contains(',') {
            label
                .split(',')
                .map(|t| t.trim().parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse(format!("bad symbol label {label:?}: {e}")))?
        } else {
            label
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::Parse(format!("bad symbol label {label:?}")))
                })
                .collect::<Result<_>>()?
        };
        self.symbol(coords)
    }
}

pub(crate) fn index_of_coords(coords: &[u32], p: u32) -> usize {
    coords
        .iter()
        .rev()
        .fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

/// An element of `(Z_p)^m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    p: u32,
    coords: Vec<u32>,
}

impl Symbol {
    pub fn new(p: u32, coords: Vec<u32>) -> Result<Self> {
        if let Some(c) = coords.iter().find(|&&c| c >= p) {
            return Err(Error::NonConforming(format!(
                "coordinate {c} is not a residue mod {p}"
            )));
        }
        Ok(Self { p, coords })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Number of nonzero coordinates.
    pub fn weight(&self) -> usize {
        self.coords.iter().filter(|&&c| c != 0).count()
    }

    pub fn neg(&self) -> Symbol {
        Symbol {
            p: self.p,
            coords: self.coords.iter().map(|&c| (self.p - c) % self.p).collect(),
        }
    }

    /// Compact label: digits concatenated when `p <= 10`, otherwise comma separated.
    pub fn label(&self) -> String {
        coords_label(&self.coords, self.p)
    }
}

pub(crate) fn coords_label(coords: &[u32], p: u32) -> String {
    if p <= 10 {
        coords.iter().map(|c| char::from(b'0' + *c as u8)).collect()
    } else {
        coords
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// `Σ_i â_i a_i mod p`.
pub fn inner_product(a: &Symbol, ahat: &Symbol) -> Result<u32> {
    if a.p != ahat.p || a.dim() != ahat.dim() {
        return Err(Error::AlphabetMismatch(format!(
            "cannot pair {a} with {ahat}: different alphabets"
        )));
    }
    Ok(dot(&a.coords, &ahat.coords, a.p))
}

#[inline]
pub(crate) fn dot(a: &[u32], b: &[u32], p: u32) -> u32 {
    let s: u64 = a.iter().zip(b).map(|(&x, &y)| x as u64 * y as u64).sum();
    (s % p as u64) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(65537).is_err());
        assert!(PrimeField::new(65521).is_ok());
    }

    #[test]
    fn inner_product_examples() {
        let s = |p, c: &[u32]| Symbol::new(p, c.to_vec()).unwrap();
        assert_eq!(inner_product(&s(2, &[1, 1]), &s(2, &[1, 0])).unwrap(), 1);
        assert_eq!(inner_product(&s(3, &[1, 2]), &s(3, &[2, 2])).unwrap(), 0);
        assert_eq!(inner_product(&s(3, &[1, 2]), &s(3, &[0, 0])).unwrap(), 0);
        assert!(inner_product(&s(3, &[1, 2]), &s(2, &[1, 1])).is_err());
        assert!(inner_product(&s(3, &[1, 2]), &s(3, &[1])).is_err());
    }

    #[test]
    fn enumeration_order_is_first_coordinate_fastest() {
        let a = Alphabet::over(2, 2).unwrap();
        let labels: Vec<_> = a.symbols().map(|s| s.label()).collect();
        assert_eq!(labels, ["00", "10", "01", "11"]);
        for (i, s) in a.symbols().enumerate() {
            assert_eq!(a.index_of(&s).unwrap(), i);
        }
        assert_eq!(a.parse_symbol("01").unwrap().coords(), &[0, 1]);
    }

    #[test]
    fn inverse_via_fermat() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        assert_eq!(f.inv(0), None);
    }
}

//! Linear block codes over products of prime-field vector alphabets.

use std::fmt;

use crate::algebra::field::dot;
use crate::algebra::linalg::{in_row_space, null_space, rref};
use crate::algebra::{Alphabet, PrimeField, Symbol};
use crate::error::{cap_check, Error, Result};

/// Default limit on the number of codewords an enumeration may visit.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 24;

/// How Hamming weight is counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightMode {
    /// Nonzero scalar coordinates after flattening every symbol.
    #[default]
    Scalar,
    /// Nonzero symbols.
    Symbol,
}

/// A subspace of `A_0 × … × A_{n-1}`, stored as a reduced row-echelon basis over the
/// flattened scalar coordinates. Two codes are equal iff profile and reduced basis agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    field: PrimeField,
    profile: Vec<Alphabet>,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl LinearCode {
    /// Span of `rows`, each a sequence of symbols conforming to `profile`.
    pub fn from_generators(profile: Vec<Alphabet>, rows: &[Vec<Symbol>]) -> Result<Self> {
        let field = field_of(&profile)?;
        let flat = rows
            .iter()
            .enumerate()
            .map(|(r, row)| {
                if row.len() != profile.len() {
                    return Err(Error::NonConforming(format!(
                        "generator {r} has {} symbols, profile has {}",
                        row.len(),
                        profile.len()
                    )));
                }
                let mut v = Vec::new();
                for (s, a) in row.iter().zip(&profile) {
                    a.check(s)
                        .map_err(|e| Error::NonConforming(format!("generator {r}: {e}")))?;
                    v.extend_from_slice(s.coords());
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_flat(field, profile, &flat))
    }

    /// Span of rows given as flattened coordinate vectors.
    pub fn from_flat_rows(profile: Vec<Alphabet>, rows: &[Vec<u32>]) -> Result<Self> {
        let field = field_of(&profile)?;
        let n: usize = profile.iter().map(Alphabet::dim).sum();
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n || row.iter().any(|&c| c >= field.p()) {
                return Err(Error::NonConforming(format!(
                    "generator {r} is not a vector of {n} residues mod {}",
                    field.p()
                )));
            }
        }
        Ok(Self::from_flat(field, profile, rows))
    }

    fn from_flat(field: PrimeField, profile: Vec<Alphabet>, rows: &[Vec<u32>]) -> Self {
        let n = profile.iter().map(Alphabet::dim).sum();
        let (basis, pivots) = rref(field, rows, n);
        Self {
            field,
            profile,
            basis,
            pivots,
        }
    }

    pub fn zero(profile: Vec<Alphabet>) -> Result<Self> {
        Self::from_flat_rows(profile, &[])
    }

    pub fn universe(profile: Vec<Alphabet>) -> Result<Self> {
        let n: usize = profile.iter().map(Alphabet::dim).sum();
        let rows: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        Self::from_flat_rows(profile, &rows)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn profile(&self) -> &[Alphabet] {
        &self.profile
    }

    /// Number of flattened scalar coordinates.
    pub fn scalar_length(&self) -> usize {
        self.profile.iter().map(Alphabet::dim).sum()
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Reduced row-echelon basis over flattened coordinates.
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    /// `p^k`, or `None` if it does not fit in `u128`.
    pub fn cardinality(&self) -> Option<u128> {
        (self.p() as u128).checked_pow(self.dimension() as u32)
    }

    /// Offsets of each symbol within a flattened word.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.profile
            .iter()
            .map(|a| {
                let o = acc;
                acc += a.dim();
                o
            })
            .collect()
    }

    /// Splits a flattened word into symbols.
    pub fn symbols_of(&self, word: &[u32]) -> Vec<Symbol> {
        let mut out = Vec::with_capacity(self.profile.len());
        let mut i = 0;
        for a in &self.profile {
            out.push(
                Symbol::new(self.p(), word[i..i + a.dim()].to_vec()).expect("residues in range"),
            );
            i += a.dim();
        }
        out
    }

    pub fn contains(&self, word: &[u32]) -> bool {
        word.len() == self.scalar_length()
            && in_row_space(self.field, &self.basis, &self.pivots, word)
    }

    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.profile == other.profile && self.basis.iter().all(|b| other.contains(b))
    }

    /// The orthogonal code under `⟨â, a⟩ = Σ_k ⟨â_k, a_k⟩`.
    pub fn dual(&self) -> LinearCode {
        let n = self.scalar_length();
        let ker = null_space(self.field, &self.basis, n);
        Self::from_flat(self.field, self.profile.clone(), &ker)
    }

    /// Every codeword exactly once, in message order with the first message
    /// coordinate varying fastest.
    pub fn enumerate(&self, cap: u128) -> Result<Codewords<'_>> {
        let size = self.cardinality().unwrap_or(u128::MAX);
        cap_check("code enumeration", size, cap)?;
        Ok(Codewords {
            code: self,
            message: vec![0; self.dimension()],
            word: vec![0; self.scalar_length()],
            done: false,
        })
    }

    /// Number of codewords of each weight, indexed by weight.
    pub fn weight_distribution(&self, cap: u128, mode: WeightMode) -> Result<Vec<u128>> {
        let max_w = match mode {
            WeightMode::Scalar => self.scalar_length(),
            WeightMode::Symbol => self.profile.len(),
        };
        let mut counts = vec![0u128; max_w + 1];
        let offsets = self.offsets();
        for w in self.enumerate(cap)? {
            let wt = match mode {
                WeightMode::Scalar => w.iter().filter(|&&c| c != 0).count(),
                WeightMode::Symbol => self
                    .profile
                    .iter()
                    .zip(&offsets)
                    .filter(|(a, &o)| w[o..o + a.dim()].iter().any(|&c| c != 0))
                    .count(),
            };
            counts[wt] += 1;
        }
        while counts.len() > 1 && *counts.last().unwrap() == 0 {
            counts.pop();
        }
        Ok(counts)
    }

    /// Least scalar weight of a nonzero codeword; `None` for the zero code.
    pub fn minimum_distance(&self, cap: u128) -> Result<Option<usize>> {
        let wd = self.weight_distribution(cap, WeightMode::Scalar)?;
        Ok(wd.iter().enumerate().skip(1).find(|(_, &c)| c > 0).map(|(w, _)| w))
    }

    /// Whether every codeword of `self` is orthogonal to every codeword of `other`.
    pub fn is_orthogonal_to(&self, other: &LinearCode) -> bool {
        self.profile == other.profile
            && self
                .basis
                .iter()
                .all(|a| other.basis.iter().all(|b| dot(a, b, self.p()) == 0))
    }
}

fn field_of(profile: &[Alphabet]) -> Result<PrimeField> {
    let Some(first) = profile.first() else {
        // An empty profile has a single (empty) codeword; any prime works.
        return PrimeField::new(2);
    };
    if let Some(a) = profile.iter().find(|a| a.p() != first.p()) {
        return Err(Error::AlphabetMismatch(format!(
            "profile mixes characteristics {} and {}",
            first.p(),
            a.p()
        )));
    }
    Ok(first.field())
}

/// Iterator over codewords (flattened coordinates).
pub struct Codewords<'a> {
    code: &'a LinearCode,
    message: Vec<u32>,
    word: Vec<u32>,
    done: bool,
}

impl Iterator for Codewords<'_> {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.word.clone();
        // Odometer step: adding basis row i advances digit i; p additions return the
        // word to its previous value, so a carry needs no correction.
        let f = self.code.field;
        let mut i = 0;
        loop {
            if i == self.message.len() {
                self.done = true;
                break;
            }
            for (w, &b) in self.word.iter_mut().zip(&self.code.basis[i]) {
                *w = f.add(*w, b);
            }
            self.message[i] += 1;
            if self.message[i] < f.p() {
                break;
            }
            self.message[i] = 0;
            i += 1;
        }
        Some(out)
    }
}

impl fmt::Display for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "({}, {}) code over Z_{}",
            self.scalar_length(),
            self.dimension(),
            self.p()
        )?;
        for row in &self.basis {
            let syms: Vec<String> = self.symbols_of(row).iter().map(Symbol::label).collect();
            writeln!(f, "  {}", syms.join(" "))?;
        }
        Ok(())
    }
}

//! Dense tables over products of alphabets.

use crate::algebra::field::index_of_coords;
use crate::algebra::{table_scale_equal, Alphabet, Coeff, Symbol};
use crate::error::{cap_check, Error, Result};

use num_rational::BigRational;

/// Default limit on the number of entries in any dense table.
pub const DEFAULT_TENSOR_CAP: u128 = 1 << 20;

/// A function on `A_0 × … × A_{r-1}` stored densely. The first axis varies fastest,
/// and within an axis symbols follow [`Alphabet`] enumeration order.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor<T> {
    p: u32,
    axes: Vec<Alphabet>,
    data: Vec<T>,
}

pub(crate) fn table_len(axes: &[Alphabet]) -> Option<u128> {
    axes.iter()
        .try_fold(1u128, |acc, a| acc.checked_mul(a.checked_cardinality()? as u128))
}

impl<T: Coeff> Tensor<T> {
    pub fn new(p: u32, axes: Vec<Alphabet>, data: Vec<T>) -> Result<Self> {
        if let Some(a) = axes.iter().find(|a| a.p() != p) {
            return Err(Error::AlphabetMismatch(format!(
                "axis over Z_{} in a tensor over Z_{p}",
                a.p()
            )));
        }
        let len = table_len(&axes).unwrap_or(u128::MAX);
        if len != data.len() as u128 {
            return Err(Error::NonConforming(format!(
                "table has {} entries, axes require {len}",
                data.len()
            )));
        }
        Ok(Self { p, axes, data })
    }

    /// Builds a table by evaluating `f` on every configuration (one symbol per axis).
    pub fn from_fn(
        p: u32,
        axes: Vec<Alphabet>,
        cap: u128,
        mut f: impl FnMut(&[Symbol]) -> T,
    ) -> Result<Self> {
        let len = table_len(&axes).unwrap_or(u128::MAX);
        cap_check("tensor", len, cap)?;
        let mut data = Vec::with_capacity(len as usize);
        let mut idx = vec![0usize; axes.len()];
        let mut syms: Vec<Symbol> = axes.iter().map(Alphabet::zero).collect();
        for _ in 0..len {
            data.push(f(&syms));
            for (k, a) in axes.iter().enumerate() {
                idx[k] += 1;
                if idx[k] < a.cardinality() {
                    syms[k] = a.symbol_at(idx[k]);
                    break;
                }
                idx[k] = 0;
                syms[k] = a.zero();
            }
        }
        Self::new(p, axes, data)
    }

    pub fn filled(p: u32, axes: Vec<Alphabet>, value: T, cap: u128) -> Result<Self> {
        Self::from_fn(p, axes, cap, |_| value.clone())
    }

    /// The (0,1)-valued indicator of `pred`.
    pub fn indicator(
        p: u32,
        axes: Vec<Alphabet>,
        cap: u128,
        mut pred: impl FnMut(&[Symbol]) -> bool,
    ) -> Result<Self> {
        Self::from_fn(p, axes, cap, |s| if pred(s) { T::one(p) } else { T::zero(p) })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn axes(&self) -> &[Alphabet] {
        &self.axes
    }

    pub fn arity(&self) -> usize {
        self.axes.len()
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Offset of one step along each axis.
    pub fn strides(&self) -> Vec<usize> {
        strides_of(&self.axes)
    }

    /// Flat index of a configuration given as per-axis symbol indices.
    pub fn offset(&self, index: &[usize]) -> usize {
        index
            .iter()
            .zip(self.strides())
            .map(|(i, s)| i * s)
            .sum()
    }

    pub fn get(&self, index: &[usize]) -> &T {
        &self.data[self.offset(index)]
    }

    /// Value at a configuration of symbols.
    pub fn at(&self, symbols: &[Symbol]) -> Result<&T> {
        if symbols.len() != self.axes.len() {
            return Err(Error::ArityMismatch {
                expected: self.axes.len(),
                found: symbols.len(),
            });
        }
        let mut off = 0;
        for ((s, a), st) in symbols.iter().zip(&self.axes).zip(self.strides()) {
            a.check(s)?;
            off += index_of_coords(s.coords(), self.p) * st;
        }
        Ok(&self.data[off])
    }

    pub fn map<U: Coeff>(&self, f: impl FnMut(&T) -> U) -> Tensor<U> {
        Tensor {
            p: self.p,
            axes: self.axes.clone(),
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        self.map(|v| v.scale_rational(q))
    }

    /// Reorders axes so that new axis `k` is old axis `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        let r = self.axes.len();
        let mut seen = vec![false; r];
        if perm.len() != r || perm.iter().any(|&i| i >= r || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation of {r} axes")));
        }
        let axes: Vec<Alphabet> = perm.iter().map(|&i| self.axes[i]).collect();
        let old = self.strides();
        let moved: Vec<usize> = perm.iter().map(|&i| old[i]).collect();
        let mut data = Vec::with_capacity(self.data.len());
        for_each_offset(&axes, &[&moved], |offs| data.push(self.data[offs[0]].clone()));
        Ok(Self { p: self.p, axes, data })
    }

    /// `α > 0` with `self = α·other`.
    pub fn scale_equal(&self, other: &Self) -> Option<BigRational> {
        if self.axes != other.axes {
            return None;
        }
        table_scale_equal(&self.data, &other.data)
    }
}

pub(crate) fn strides_of(axes: &[Alphabet]) -> Vec<usize> {
    let mut acc = 1;
    axes.iter()
        .map(|a| {
            let s = acc;
            acc *= a.cardinality();
            s
        })
        .collect()
}

/// Walks every configuration of `axes` (first axis fastest) and reports, for each
/// stride set, the matching flat offset.
pub(crate) fn for_each_offset(axes: &[Alphabet], strides: &[&[usize]], mut f: impl FnMut(&[usize])) {
    let cards: Vec<usize> = axes.iter().map(Alphabet::cardinality).collect();
    if cards.contains(&0) {
        return;
    }
    let mut idx = vec![0usize; axes.len()];
    let mut offs = vec![0usize; strides.len()];
    loop {
        f(&offs);
        let mut k = 0;
        loop {
            if k == axes.len() {
                return;
            }
            idx[k] += 1;
            for (o, s) in offs.iter_mut().zip(strides) {
                *o += s[k];
            }
            if idx[k] < cards[k] {
                break;
            }
            for (o, s) in offs.iter_mut().zip(strides) {
                *o -= s[k] * cards[k];
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::CycloRational;

    fn q(n: i64) -> CycloRational {
        CycloRational::from_int(3, n)
    }

    #[test]
    fn first_axis_fastest() {
        let a = Alphabet::over(3, 1).unwrap();
        let t: Tensor<CycloRational> = Tensor::from_fn(3, vec![a, a], 100, |s| {
            q((s[0].coords()[0] + 10 * s[1].coords()[0]) as i64)
        })
        .unwrap();
        assert_eq!(t.data()[1], q(1));
        assert_eq!(t.data()[3], q(10));
        assert_eq!(*t.get(&[2, 1]), q(12));
        let tt = t.permute(&[1, 0]).unwrap();
        assert_eq!(*tt.get(&[1, 2]), q(12));
        assert_eq!(tt.permute(&[1, 0]).unwrap(), t);
    }

    #[test]
    fn rejects_wrong_length_and_cap() {
        let a = Alphabet::over(2, 3).unwrap();
        assert!(Tensor::new(2, vec![a], vec![CycloRational::one(2); 7]).is_err());
        let err = Tensor::<CycloRational>::filled(2, vec![a, a], CycloRational::one(2), 32).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { cap: 32, .. }));
    }
}

//! Fourier transforms over vector alphabets, sign inverters, and the transform identities.

use num_rational::BigRational;

use crate::algebra::field::{dot, index_of_coords};
use crate::algebra::{omega_pow, table_scale_equal, Alphabet, Coeff, CycloRational};
use crate::error::{cap_check, Error, Result};
use crate::lincode::{LinearCode, DEFAULT_ENUMERATION_CAP};
use crate::tensor::{for_each_offset, Tensor, DEFAULT_TENSOR_CAP};

/// Kernel sign: forward `ω^{+⟨â,a⟩}` or conjugate `ω^{-⟨â,a⟩}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Forward,
    Conjugate,
}

impl Flavor {
    fn sign(self) -> i64 {
        match self {
            Flavor::Forward => 1,
            Flavor::Conjugate => -1,
        }
    }
}

/// Dense square matrix over `Q(ω)`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    p: u32,
    n: usize,
    data: Vec<CycloRational>,
}

impl Matrix {
    pub fn from_fn(p: u32, n: usize, mut f: impl FnMut(usize, usize) -> CycloRational) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                data.push(f(r, c));
            }
        }
        Self { p, n, data }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        Self::from_fn(p, n, |r, c| {
            if r == c {
                CycloRational::one(p)
            } else {
                CycloRational::zero(p)
            }
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &CycloRational {
        &self.data[r * self.n + c]
    }

    pub fn rows(&self) -> Vec<Vec<CycloRational>> {
        self.data.chunks(self.n.max(1)).map(<[_]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.p, self.n, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        let n = self.n;
        let mut data = vec![CycloRational::zero(self.p); n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        data[r * n + c] += &(a * b);
                    }
                }
            }
        }
        Matrix { p: self.p, n, data }
    }
}

/// `α > 0` rational with `a = α·b`.
pub fn matrix_scale_equal(a: &Matrix, b: &Matrix) -> Option<BigRational> {
    if a.n != b.n {
        return None;
    }
    table_scale_equal(&a.data, &b.data)
}

/// The Fourier transform matrix of an alphabet: entry `[â][a] = ω^{±⟨â,a⟩}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformMatrix {
    alphabet: Alphabet,
    flavor: Flavor,
    matrix: Matrix,
}

impl TransformMatrix {
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }
}

/// Builds `F_A` or `F_A*`. The cap bounds the number of matrix entries, `|A|²`.
pub fn fourier_matrix(alphabet: Alphabet, flavor: Flavor, cap: u128) -> Result<TransformMatrix> {
    let n = alphabet.checked_cardinality().ok_or(Error::CapExceeded {
        what: "Fourier matrix",
        size: "overflow".into(),
        cap,
    })?;
    cap_check("Fourier matrix", (n as u128) * (n as u128), cap)?;
    let p = alphabet.p();
    let syms: Vec<_> = alphabet.symbols().collect();
    let matrix = Matrix::from_fn(p, n, |r, c| {
        omega_pow(p, flavor.sign() * dot(syms[r].coords(), syms[c].coords(), p) as i64)
    });
    Ok(TransformMatrix {
        alphabet,
        flavor,
        matrix,
    })
}

/// Indicator of `a' = -a` on `A × A`.
pub fn sign_inverter<T: Coeff>(alphabet: Alphabet) -> Result<Tensor<T>> {
    let p = alphabet.p();
    Tensor::indicator(p, vec![alphabet, alphabet], DEFAULT_TENSOR_CAP, |s| s[1] == s[0].neg())
}

/// Transform along a single axis; all other axes are carried along.
pub fn transform_axis<T: Coeff>(f: &Tensor<T>, axis: usize, flavor: Flavor) -> Result<Tensor<T>> {
    let axes = f.axes();
    if axis >= axes.len() {
        return Err(Error::ArityMismatch {
            expected: axis + 1,
            found: axes.len(),
        });
    }
    let p = f.p();
    let a = axes[axis];
    let syms: Vec<_> = a.symbols().collect();
    // Exponent table, already signed and reduced mod p.
    let sign = flavor.sign();
    let expo: Vec<Vec<usize>> = syms
        .iter()
        .map(|ah| {
            syms.iter()
                .map(|s| (sign * dot(ah.coords(), s.coords(), p) as i64).rem_euclid(p as i64) as usize)
                .collect()
        })
        .collect();
    let roots: Vec<CycloRational> = (0..p as i64).map(|k| omega_pow(p, k)).collect();

    let strides = f.strides();
    let st = strides[axis];
    let mut rest_axes = axes.to_vec();
    rest_axes.remove(axis);
    let mut rest_strides = strides.clone();
    rest_strides.remove(axis);

    let data = f.data();
    let mut out = vec![T::zero(p); data.len()];
    for_each_offset(&rest_axes, &[&rest_strides], |offs| {
        let base = offs[0];
        for (ih, row) in expo.iter().enumerate() {
            let mut buckets: Vec<Option<T>> = vec![None; p as usize];
            for (i, &k) in row.iter().enumerate() {
                let v = &data[base + i * st];
                if v.is_zero() {
                    continue;
                }
                match &mut buckets[k] {
                    Some(b) => b.add_assign(v),
                    slot @ None => *slot = Some(v.clone()),
                }
            }
            let mut acc = T::zero(p);
            for (k, b) in buckets.into_iter().enumerate() {
                if let Some(b) = b {
                    if k == 0 {
                        acc.add_assign(&b);
                    } else {
                        acc.add_assign(&b.scale(&roots[k]));
                    }
                }
            }
            out[base + ih * st] = acc;
        }
    });
    Tensor::new(p, axes.to_vec(), out)
}

/// Multidimensional transform: the one-dimensional transform applied on every axis.
pub fn transform_tensor<T: Coeff>(f: &Tensor<T>, flavor: Flavor) -> Result<Tensor<T>> {
    let mut cur = f.clone();
    for axis in 0..f.arity() {
        cur = transform_axis(&cur, axis, flavor)?;
    }
    Ok(cur)
}

/// Transform of a function of a single variable.
pub fn transform_function<T: Coeff>(f: &Tensor<T>, flavor: Flavor) -> Result<Tensor<T>> {
    if f.arity() != 1 {
        return Err(Error::ArityMismatch {
            expected: 1,
            found: f.arity(),
        });
    }
    transform_axis(f, 0, flavor)
}

/// Inverse of the forward transform: `F_A^* F / |A|`.
pub fn inverse_transform<T: Coeff>(big_f: &Tensor<T>) -> Result<Tensor<T>> {
    let g = transform_tensor(big_f, Flavor::Conjugate)?;
    let n: usize = big_f.axes().iter().map(Alphabet::cardinality).product();
    Ok(g.scale_rational(&BigRational::new(1.into(), n.into())))
}

/// One line of the identity suite.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
    pub witness: Option<BigRational>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub alphabet: Alphabet,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Checks `F*F ∝ I`, `F² ∝ Φ_~`, `F³ ∝ F*` and `F⁴ ∝ I`, reporting each witness.
pub fn verify_identity_suite(alphabet: Alphabet, cap: u128) -> Result<IdentityReport> {
    let p = alphabet.p();
    let n = alphabet.cardinality();
    let f = fourier_matrix(alphabet, Flavor::Forward, cap)?.matrix;
    let fc = fourier_matrix(alphabet, Flavor::Conjugate, cap)?.matrix;
    let id = Matrix::identity(p, n);
    let syms: Vec<_> = alphabet.symbols().collect();
    let sign = Matrix::from_fn(p, n, |r, c| {
        if syms[r] == syms[c].neg() {
            CycloRational::one(p)
        } else {
            CycloRational::zero(p)
        }
    });
    let f2 = f.mul(&f);
    let f3 = f2.mul(&f);
    let f4 = f3.mul(&f);
    let check = |name, a: &Matrix, b: &Matrix| {
        let witness = matrix_scale_equal(a, b);
        IdentityCheck {
            name,
            holds: witness.is_some(),
            witness,
        }
    };
    Ok(IdentityReport {
        alphabet,
        checks: vec![
            check("conj(F)*F = |A| I", &fc.mul(&f), &id),
            check("F^2 ~ sign inverter", &f2, &sign),
            check("F^3 ~ conj(F)", &f3, &fc),
            check("F^4 ~ I", &f4, &id),
        ],
    })
}

/// Both sides of the Poisson summation formula with the unnormalized forward transform:
/// `|B⊥| · Σ_{a∈B} f(a) = Σ_{â∈B⊥} F(â)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PoissonReport {
    pub code_sum: CycloRational,
    pub dual_sum: CycloRational,
    pub dual_size: u128,
    pub holds: bool,
}

pub fn poisson_check(code: &LinearCode, f: &Tensor<CycloRational>) -> Result<PoissonReport> {
    if f.axes() != code.profile() {
        return Err(Error::AlphabetMismatch(
            "function axes must match the code profile".into(),
        ));
    }
    let big_f = transform_tensor(f, Flavor::Forward)?;
    let dual = code.dual();
    let sum_over = |c: &LinearCode, t: &Tensor<CycloRational>| -> Result<CycloRational> {
        let offsets = c.offsets();
        let strides = t.strides();
        let mut s = CycloRational::zero(c.p());
        for w in c.enumerate(DEFAULT_ENUMERATION_CAP)? {
            let off: usize = c
                .profile()
                .iter()
                .zip(&offsets)
                .zip(&strides)
                .map(|((a, &o), &st)| index_of_coords(&w[o..o + a.dim()], c.p()) * st)
                .sum();
            s += &t.data()[off];
        }
        Ok(s)
    };
    let code_sum = sum_over(code, f)?;
    let dual_sum = sum_over(&dual, &big_f)?;
    let dual_size = dual.cardinality().unwrap_or(u128::MAX);
    let holds = code_sum.scale(&BigRational::from_integer(dual_size.into())) == dual_sum;
    Ok(PoissonReport {
        code_sum,
        dual_sum,
        dual_size,
        holds,
    })
}

/// `Σ_{a∈B} ω^{⟨â,a⟩}` for every `â` in the ambient alphabet of `code`.
pub fn character_sums(code: &LinearCode) -> Result<Vec<(Vec<u32>, CycloRational)>> {
    let p = code.p();
    let words: Vec<Vec<u32>> = code.enumerate(DEFAULT_ENUMERATION_CAP)?.collect();
    let universe = LinearCode::universe(code.profile().to_vec())?;
    let mut out = Vec::new();
    for ah in universe.enumerate(DEFAULT_ENUMERATION_CAP)? {
        let mut s = CycloRational::zero(p);
        for w in &words {
            s += &omega_pow(p, dot(&ah, w, p) as i64);
        }
        out.push((ah, s));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn binary_fourier_matrix() {
        let f = fourier_matrix(Alphabet::over(2, 1).unwrap(), Flavor::Forward, 1 << 20).unwrap();
        let m: Vec<Vec<CycloRational>> = f.matrix().rows();
        let c = |n| CycloRational::from_int(2, n);
        assert_eq!(m, vec![vec![c(1), c(1)], vec![c(1), c(-1)]]);
    }

    #[test]
    fn two_bit_fourier_matrix_matches_hadamard_relations() {
        // X(00)=x00+x10+x01+x11, X(10)=x00-x10+x01-x11, X(01)=x00+x10-x01-x11, X(11)=x00-x10-x01+x11
        let f = fourier_matrix(Alphabet::over(2, 2).unwrap(), Flavor::Forward, 1 << 20).unwrap();
        let signs = [[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]];
        for (i, row) in signs.iter().enumerate() {
            for (j, &s) in row.iter().enumerate() {
                assert_eq!(*f.matrix().get(i, j), CycloRational::from_int(2, s));
            }
        }
    }

    #[test]
    fn ternary_orthogonality() {
        let a = Alphabet::over(3, 1).unwrap();
        let f = fourier_matrix(a, Flavor::Forward, 1 << 20).unwrap();
        let fc = fourier_matrix(a, Flavor::Conjugate, 1 << 20).unwrap();
        let prod = f.matrix().mul(fc.matrix());
        assert_eq!(matrix_scale_equal(&prod, &Matrix::identity(3, 3)), Some(r(3)));
    }

    #[test]
    fn identity_suite_witnesses() {
        let rep = verify_identity_suite(Alphabet::over(2, 1).unwrap(), 1 << 20).unwrap();
        assert!(rep.all_hold());
        let w: Vec<_> = rep.checks.iter().map(|c| c.witness.clone().unwrap()).collect();
        assert_eq!(w, vec![r(2), r(2), r(2), r(4)]);
        for (p, d) in [(3, 1), (2, 2), (5, 1), (3, 2)] {
            let rep = verify_identity_suite(Alphabet::over(p, d).unwrap(), 1 << 20).unwrap();
            assert!(rep.all_hold(), "p={p} d={d}");
            let n = r((p as i64).pow(d as u32));
            assert_eq!(rep.checks[3].witness, Some(&n * &n));
        }
    }

    #[test]
    fn sign_inverter_cases() {
        let s: Tensor<CycloRational> = sign_inverter(Alphabet::over(2, 2).unwrap()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(s.get(&[i, j]).is_one(), i == j);
            }
        }
        let s3: Tensor<CycloRational> = sign_inverter(Alphabet::over(3, 1).unwrap()).unwrap();
        assert!(s3.get(&[1, 2]).is_one());
        assert!(s3.get(&[0, 0]).is_one());
        assert!(s3.get(&[1, 1]).is_zero());
    }

    #[test]
    fn delta_transforms_to_ones_and_round_trips() {
        let a = Alphabet::over(3, 1).unwrap();
        let delta: Tensor<CycloRational> = Tensor::indicator(3, vec![a], 100, |s| s[0].is_zero()).unwrap();
        let big = transform_function(&delta, Flavor::Forward).unwrap();
        assert!(big.data().iter().all(CycloRational::is_one));
        assert_eq!(inverse_transform(&big).unwrap(), delta);
        let two = Tensor::new(3, vec![a, a], vec![CycloRational::one(3); 9]).unwrap();
        assert!(matches!(
            transform_function(&two, Flavor::Forward),
            Err(Error::ArityMismatch { expected: 1, found: 2 })
        ));
    }
}

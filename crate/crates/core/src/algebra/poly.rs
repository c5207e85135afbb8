//! Sparse multivariate polynomials with cyclotomic-rational coefficients.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cyclo::CycloRational;

/// A power product of named indeterminates, kept sorted by name with positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(String, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn var(name: impl Into<String>) -> Self {
        Self(vec![(name.into(), 1)])
    }

    /// Builds a monomial from arbitrary `(name, exponent)` pairs, merging repeats.
    pub fn from_pairs<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, u32)>,
        S: Into<String>,
    {
        let mut m: BTreeMap<String, u32> = BTreeMap::new();
        for (n, e) in pairs {
            if e > 0 {
                *m.entry(n.into()).or_default() += e;
            }
        }
        Self(m.into_iter().collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(String, u32)] {
        &self.0
    }

    pub fn exponent(&self, name: &str) -> u32 {
        self.0
            .binary_search_by(|(n, _)| n.as_str().cmp(name))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Removes `name` and returns its exponent with the remaining monomial.
    fn split_off(&self, name: &str) -> (u32, Monomial) {
        match self.0.binary_search_by(|(n, _)| n.as_str().cmp(name)) {
            Ok(i) => {
                let mut rest = self.0.clone();
                let (_, e) = rest.remove(i);
                (e, Monomial(rest))
            }
            Err(_) => (0, self.clone()),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (n, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{n}")?;
            } else {
                write!(f, "{n}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial over `Q(ω_p)`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    p: u32,
    terms: BTreeMap<Monomial, CycloRational>,
}

impl Polynomial {
    pub fn zero(p: u32) -> Self {
        Self {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(p: u32) -> Self {
        Self::constant(CycloRational::one(p))
    }

    pub fn constant(c: CycloRational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn from_int(p: u32, n: i64) -> Self {
        Self::constant(CycloRational::from_int(p, n))
    }

    pub fn var(p: u32, name: impl Into<String>) -> Self {
        Self::term(Monomial::var(name), CycloRational::one(p))
    }

    pub fn term(m: Monomial, c: CycloRational) -> Self {
        let mut out = Self::zero(c.p());
        if !c.is_zero() {
            out.terms.insert(m, c);
        }
        out
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CycloRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> CycloRational {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| CycloRational::zero(self.p))
    }

    pub fn as_constant(&self) -> Option<CycloRational> {
        match self.terms.len() {
            0 => Some(CycloRational::zero(self.p)),
            1 => self
                .terms
                .get(&Monomial::one())
                .cloned(),
            _ => None,
        }
    }

    pub fn indeterminates(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(n, _)| n.clone()))
            .collect()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Adds `c·m` in place.
    pub fn add_term(&mut self, m: Monomial, c: &CycloRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Polynomial) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn scale(&self, c: &CycloRational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.p);
        }
        let mut out = Self::zero(self.p);
        for (m, k) in &self.terms {
            let v = k * c;
            if !v.is_zero() {
                out.terms.insert(m.clone(), v);
            }
        }
        out
    }

    pub fn scale_rational(&self, q: &BigRational) -> Polynomial {
        self.scale(&CycloRational::from_rational(self.p, q.clone()))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            p: self.p,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.p);
        let mut base = self.clone();
        let mut e = e;
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

    /// Drops every term whose total degree exceeds `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Polynomial {
        Polynomial {
            p: self.p,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() <= max_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Product with every term of total degree above `max_degree` discarded.
    pub fn mul_truncated(&self, other: &Polynomial, max_degree: u32) -> Polynomial {
        let mut out = Polynomial::zero(self.p);
        for (ma, ca) in &self.terms {
            let da = ma.total_degree();
            if da > max_degree {
                continue;
            }
            for (mb, cb) in &other.terms {
                if da + mb.total_degree() > max_degree {
                    continue;
                }
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }

    /// Sum of coefficients: the value at every indeterminate equal to 1.
    pub fn eval_ones(&self) -> CycloRational {
        let mut s = CycloRational::zero(self.p);
        for c in self.terms.values() {
            s += c;
        }
        s
    }

    /// Renames indeterminates; colliding images are merged.
    pub fn rename(&self, f: impl Fn(&str) -> String) -> Polynomial {
        let mut out = Polynomial::zero(self.p);
        for (m, c) in &self.terms {
            let nm = Monomial::from_pairs(m.0.iter().map(|(n, e)| (f(n), *e)));
            out.add_term(nm, c);
        }
        out
    }

    /// Simultaneous substitution of indeterminates by polynomials. Indeterminates
    /// missing from `subst` are left in place.
    pub fn substitute(&self, subst: &BTreeMap<String, Polynomial>) -> Polynomial {
        let image_vars: BTreeSet<String> = subst.values().flat_map(|g| g.indeterminates()).collect();
        let touched: Vec<&String> = self
            .indeterminates()
            .into_iter()
            .filter_map(|n| subst.get_key_value(&n).map(|(k, _)| k))
            .collect();
        if touched.iter().all(|k| !image_vars.contains(*k)) {
            // Images never mention a substituted name, so one variable at a time is
            // equivalent to simultaneous substitution and keeps intermediates merged.
            let mut cur = self.clone();
            for k in touched {
                cur = cur.substitute_one(k, &subst[k]);
            }
            return cur;
        }
        let mut out = Polynomial::zero(self.p);
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(c.clone());
            let mut rest = Vec::new();
            for (n, e) in &m.0 {
                match subst.get(n) {
                    Some(g) => acc = &acc * &g.pow(*e),
                    None => rest.push((n.clone(), *e)),
                }
            }
            out.add_assign(&acc.mul_monomial(&Monomial(rest)));
        }
        out
    }

    fn substitute_one(&self, name: &str, image: &Polynomial) -> Polynomial {
        let mut powers: Vec<Polynomial> = vec![Polynomial::one(self.p)];
        let mut out = Polynomial::zero(self.p);
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(name);
            if e == 0 {
                out.add_term(m.clone(), c);
                continue;
            }
            while powers.len() <= e as usize {
                let next = &powers[powers.len() - 1] * image;
                powers.push(next);
            }
            for (pm, pc) in &powers[e as usize].terms {
                out.add_term(pm.mul(&rest), &(pc * c));
            }
        }
        out
    }

    /// Coefficients of a polynomial in at most the single indeterminate `name`,
    /// indexed by exponent. `None` if other indeterminates occur.
    pub fn univariate_coeffs(&self, name: &str) -> Option<Vec<CycloRational>> {
        let mut out: Vec<CycloRational> = Vec::new();
        for (m, c) in &self.terms {
            let e = match m.0.as_slice() {
                [] => 0,
                [(n, e)] if n == name => *e,
                _ => return None,
            };
            while out.len() <= e as usize {
                out.push(CycloRational::zero(self.p));
            }
            out[e as usize] = c.clone();
        }
        Some(out)
    }

    /// Multiplies each term by `partner^(degree - total degree)`; `None` if some term
    /// already exceeds `degree`.
    pub fn homogenize(&self, degree: u32, partner: &str) -> Option<Polynomial> {
        let mut out = Polynomial::zero(self.p);
        for (m, c) in &self.terms {
            let d = m.total_degree();
            if d > degree {
                return None;
            }
            out.add_term(m.mul(&Monomial::from_pairs([(partner, degree - d)])), c);
        }
        Some(out)
    }

    /// Sets `partner = 1`.
    pub fn dehomogenize(&self, partner: &str) -> Polynomial {
        let mut out = Polynomial::zero(self.p);
        for (m, c) in &self.terms {
            out.add_term(m.split_off(partner).1, c);
        }
        out
    }
}

/// Returns `α > 0` rational with `f = α·g`, or `None`. Two zero polynomials give `α = 1`.
pub fn poly_scale_equal(f: &Polynomial, g: &Polynomial) -> Option<BigRational> {
    if f.is_zero() && g.is_zero() {
        return Some(BigRational::one());
    }
    let (m, gc) = g.terms.iter().next()?;
    let fc = f.terms.get(m)?;
    let slot = gc.coeffs().iter().position(|c| !c.is_zero())?;
    let alpha = &fc.coeffs()[slot] / &gc.coeffs()[slot];
    if !alpha.is_positive() {
        return None;
    }
    (g.scale_rational(&alpha) == *f).then_some(alpha)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            p: self.p,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.p, rhs.p, "polynomials over different primes");
        let mut out = Polynomial::zero(self.p);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let rat = c.as_rational();
            let negative = rat.map(|q| q.is_negative()).unwrap_or(false);
            if i > 0 {
                f.write_str(if negative { " - " } else { " + " })?;
            } else if negative {
                f.write_str("-")?;
            }
            let mag = match rat {
                Some(q) if negative => (-q).to_string(),
                Some(q) => q.to_string(),
                None => c.to_string(),
            };
            if m.is_one() {
                f.write_str(&mag)?;
            } else if mag == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

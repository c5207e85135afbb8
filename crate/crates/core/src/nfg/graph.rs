use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{Alphabet, Coeff};
use crate::error::{Error, Result};
use crate::tensor::{Tensor, DEFAULT_TENSOR_CAP};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub id: String,
    pub alphabet: Alphabet,
}

impl Variable {
    pub fn new(id: impl Into<String>, alphabet: Alphabet) -> Self {
        Self {
            id: id.into(),
            alphabet,
        }
    }
}

/// A factor: a table whose axes are the listed variables, in order. A variable may be
/// listed twice, in which case the factor is read on the diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct Factor<T> {
    pub id: String,
    pub vars: Vec<String>,
    pub table: Tensor<T>,
}

impl<T: Coeff> Factor<T> {
    pub fn new(id: impl Into<String>, vars: Vec<String>, table: Tensor<T>) -> Self {
        Self {
            id: id.into(),
            vars,
            table,
        }
    }
}

/// A sum-of-products form with no degree restrictions.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization<T> {
    p: u32,
    externals: Vec<Variable>,
    internals: Vec<Variable>,
    factors: Vec<Factor<T>>,
}

impl<T: Coeff> Realization<T> {
    pub fn new(
        p: u32,
        externals: Vec<Variable>,
        internals: Vec<Variable>,
        factors: Vec<Factor<T>>,
    ) -> Result<Self> {
        let mut alph: BTreeMap<&str, Alphabet> = BTreeMap::new();
        for v in externals.iter().chain(&internals) {
            if v.alphabet.p() != p {
                return Err(Error::AlphabetMismatch(format!(
                    "variable {} is over Z_{}, graph is over Z_{p}",
                    v.id,
                    v.alphabet.p()
                )));
            }
            if alph.insert(&v.id, v.alphabet).is_some() {
                return Err(Error::InvalidGraph(format!("variable {} declared twice", v.id)));
            }
        }
        let mut fids = BTreeSet::new();
        for f in &factors {
            if !fids.insert(&f.id) {
                return Err(Error::InvalidGraph(format!("factor {} declared twice", f.id)));
            }
            if f.table.p() != p {
                return Err(Error::AlphabetMismatch(format!(
                    "factor {} is over Z_{}",
                    f.id,
                    f.table.p()
                )));
            }
            if f.vars.len() != f.table.arity() {
                return Err(Error::ArityMismatch {
                    expected: f.table.arity(),
                    found: f.vars.len(),
                });
            }
            for (v, ax) in f.vars.iter().zip(f.table.axes()) {
                match alph.get(v.as_str()) {
                    None => {
                        return Err(Error::InvalidGraph(format!(
                            "factor {} refers to undeclared variable {v}",
                            f.id
                        )))
                    }
                    Some(a) if a != ax => {
                        return Err(Error::AlphabetMismatch(format!(
                            "factor {} axis for {v} does not match the variable's alphabet",
                            f.id
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(Self {
            p,
            externals,
            internals,
            factors,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn externals(&self) -> &[Variable] {
        &self.externals
    }

    pub fn internals(&self) -> &[Variable] {
        &self.internals
    }

    pub fn factors(&self) -> &[Factor<T>] {
        &self.factors
    }

    /// Number of factor axes attached to each variable.
    pub fn degrees(&self) -> BTreeMap<String, usize> {
        let mut d: BTreeMap<String, usize> = self
            .externals
            .iter()
            .chain(&self.internals)
            .map(|v| (v.id.clone(), 0))
            .collect();
        for f in &self.factors {
            for v in &f.vars {
                *d.get_mut(v).expect("validated") += 1;
            }
        }
        d
    }

    /// Rewrites the realization as a normal graph with the same partition function.
    ///
    /// An external variable used by `k ≠ 1` factor axes is replaced inside those factors by
    /// replicas `<id>.r<i>`, tied to it by an equality factor `<id>.eq`. An internal variable
    /// used `k > 2` times gets `k` replicas and an equality factor on the replicas alone.
    /// Internal variables of degree 1 or 0 receive all-ones factors `<id>.one`, `<id>.one2`.
    /// Fails only if a generated name collides with an existing one.
    pub fn normalize(&self) -> Result<NormalFactorGraph<T>> {
        let p = self.p;
        let deg = self.degrees();
        let mut factors = self.factors.clone();
        let mut internals = self.internals.clone();
        let mut extra: Vec<Factor<T>> = Vec::new();

        for v in &self.externals {
            match deg[&v.id] {
                1 => {}
                0 => extra.push(Factor::new(format!("{}.one", v.id), vec![v.id.clone()], ones(p, v.alphabet))),
                _ => extra.push(replicate(p, v, true, &mut internals, &mut factors)),
            }
        }
        let originals = self.internals.clone();
        let mut drop = BTreeSet::new();
        for v in &originals {
            match deg[&v.id] {
                2 => {}
                1 => extra.push(Factor::new(format!("{}.one", v.id), vec![v.id.clone()], ones(p, v.alphabet))),
                0 => {
                    extra.push(Factor::new(format!("{}.one", v.id), vec![v.id.clone()], ones(p, v.alphabet)));
                    extra.push(Factor::new(format!("{}.one2", v.id), vec![v.id.clone()], ones(p, v.alphabet)));
                }
                _ => {
                    extra.push(replicate(p, v, false, &mut internals, &mut factors));
                    drop.insert(v.id.clone());
                }
            }
        }
        internals.retain(|v| !drop.contains(&v.id));
        factors.extend(extra);
        NormalFactorGraph::new(p, self.externals.clone(), internals, factors)
    }
}

/// Renames every occurrence of `v` to a fresh replica, declares the replicas internal,
/// and returns the equality factor tying them together.
fn replicate<T: Coeff>(
    p: u32,
    v: &Variable,
    keep_original: bool,
    internals: &mut Vec<Variable>,
    factors: &mut [Factor<T>],
) -> Factor<T> {
    let mut reps = Vec::new();
    for f in factors.iter_mut() {
        for slot in f.vars.iter_mut() {
            if *slot == v.id {
                let r = format!("{}.r{}", v.id, reps.len());
                *slot = r.clone();
                reps.push(r);
            }
        }
    }
    let mut eq_vars = Vec::new();
    if keep_original {
        eq_vars.push(v.id.clone());
    }
    for r in &reps {
        internals.push(Variable::new(r.clone(), v.alphabet));
        eq_vars.push(r.clone());
    }
    let table = equality(p, v.alphabet, eq_vars.len());
    Factor::new(format!("{}.eq", v.id), eq_vars, table)
}

fn ones<T: Coeff>(p: u32, a: Alphabet) -> Tensor<T> {
    Tensor::filled(p, vec![a], T::one(p), DEFAULT_TENSOR_CAP).expect("small table")
}

/// Indicator of all arguments being equal.
pub fn equality<T: Coeff>(p: u32, a: Alphabet, arity: usize) -> Tensor<T> {
    Tensor::indicator(p, vec![a; arity], DEFAULT_TENSOR_CAP, |s| s.windows(2).all(|w| w[0] == w[1]))
        .expect("equality table within cap")
}

/// A realization in which every external variable meets exactly one factor axis and
/// every internal variable exactly two.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalFactorGraph<T> {
    inner: Realization<T>,
}

impl<T: Coeff> NormalFactorGraph<T> {
    pub fn new(
        p: u32,
        externals: Vec<Variable>,
        internals: Vec<Variable>,
        factors: Vec<Factor<T>>,
    ) -> Result<Self> {
        let inner = Realization::new(p, externals, internals, factors)?;
        let deg = inner.degrees();
        for v in &inner.externals {
            if deg[&v.id] != 1 {
                return Err(Error::InvalidGraph(format!(
                    "external variable {} meets {} factor axes, expected 1",
                    v.id, deg[&v.id]
                )));
            }
        }
        for v in &inner.internals {
            if deg[&v.id] != 2 {
                return Err(Error::InvalidGraph(format!(
                    "internal variable {} meets {} factor axes, expected 2",
                    v.id, deg[&v.id]
                )));
            }
        }
        Ok(Self { inner })
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn externals(&self) -> &[Variable] {
        &self.inner.externals
    }

    pub fn internals(&self) -> &[Variable] {
        &self.inner.internals
    }

    pub fn factors(&self) -> &[Factor<T>] {
        &self.inner.factors
    }

    pub fn as_realization(&self) -> &Realization<T> {
        &self.inner
    }

    pub fn factor(&self, id: &str) -> Option<&Factor<T>> {
        self.inner.factors.iter().find(|f| f.id == id)
    }
}

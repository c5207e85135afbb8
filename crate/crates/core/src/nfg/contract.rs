use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;

use crate::algebra::{Alphabet, Coeff};
use crate::error::{cap_check, Error, Result};
use crate::tensor::{for_each_offset, strides_of, table_len, Tensor};

use super::graph::{Factor, NormalFactorGraph, Realization, Variable};

/// Default limit on the number of configurations a single contraction may visit.
pub const DEFAULT_EVAL_CAP: u128 = 1 << 24;

/// A partition function: a table over the external variables, in declaration order.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionFunction<T> {
    pub externals: Vec<Variable>,
    pub table: Tensor<T>,
    /// Set when the table is known to equal `witness` times some reference function.
    pub witness: Option<BigRational>,
}

/// Labelled dense table whose variables are distinct.
#[derive(Debug, Clone)]
struct Labeled<T> {
    vars: Vec<String>,
    axes: Vec<Alphabet>,
    data: Vec<T>,
}

struct Operand<'a, T> {
    vars: &'a [String],
    strides: Vec<usize>,
    data: &'a [T],
}

impl<'a, T> Operand<'a, T> {
    fn from_factor(vars: &'a [String], table: &'a Tensor<T>) -> Self
    where
        T: Coeff,
    {
        Self {
            vars,
            strides: table.strides(),
            data: table.data(),
        }
    }

    fn from_labeled(l: &'a Labeled<T>) -> Self {
        Self {
            vars: &l.vars,
            strides: strides_of(&l.axes),
            data: &l.data,
        }
    }

    /// Stride of each listed variable; repeated axes add up, which reads the diagonal.
    fn strides_for(&self, order: &[String]) -> Vec<usize> {
        order
            .iter()
            .map(|v| {
                self.vars
                    .iter()
                    .zip(&self.strides)
                    .filter(|(u, _)| *u == v)
                    .map(|(_, s)| s)
                    .sum()
            })
            .collect()
    }
}

/// `Σ_{sum vars} Π operands`, as a table over `keep` (first variable fastest).
fn contract<T: Coeff>(
    p: u32,
    operands: &[Operand<'_, T>],
    keep: &[(String, Alphabet)],
    sum: &[(String, Alphabet)],
    cap: u128,
) -> Result<Labeled<T>> {
    let all: Vec<(String, Alphabet)> = keep.iter().chain(sum).cloned().collect();
    let names: Vec<String> = all.iter().map(|(n, _)| n.clone()).collect();
    let axes: Vec<Alphabet> = all.iter().map(|(_, a)| *a).collect();
    for op in operands {
        if let Some(v) = op.vars.iter().find(|v| !names.contains(v)) {
            return Err(Error::InvalidGraph(format!("variable {v} is neither kept nor summed")));
        }
    }
    let work = table_len(&axes).unwrap_or(u128::MAX);
    cap_check("contraction", work, cap)?;

    let keep_axes: Vec<Alphabet> = keep.iter().map(|(_, a)| *a).collect();
    let mut out_strides = strides_of(&keep_axes);
    out_strides.resize(all.len(), 0);
    let mut strides: Vec<Vec<usize>> = vec![out_strides];
    strides.extend(operands.iter().map(|op| op.strides_for(&names)));
    let refs: Vec<&[usize]> = strides.iter().map(Vec::as_slice).collect();

    let out_len = table_len(&keep_axes).expect("bounded by cap") as usize;
    let mut out = vec![T::zero(p); out_len];
    let one = T::one(p);
    for_each_offset(&axes, &refs, |offs| {
        let mut acc: Option<T> = None;
        for (op, &o) in operands.iter().zip(&offs[1..]) {
            let v = &op.data[o];
            if v.is_zero() {
                return;
            }
            acc = Some(match acc {
                None => v.clone(),
                Some(a) => a.mul(v),
            });
        }
        out[offs[0]].add_assign(acc.as_ref().unwrap_or(&one));
    });
    Ok(Labeled {
        vars: keep.iter().map(|(n, _)| n.clone()).collect(),
        axes: keep_axes,
        data: out,
    })
}

fn variable_map(vars: &[Variable]) -> BTreeMap<&str, Alphabet> {
    vars.iter().map(|v| (v.id.as_str(), v.alphabet)).collect()
}

fn pairs(vars: &[Variable]) -> Vec<(String, Alphabet)> {
    vars.iter().map(|v| (v.id.clone(), v.alphabet)).collect()
}

/// Sums out `order` one variable at a time, then multiplies what is left into a table over
/// `keep`. `None` picks, at each step, the variable whose elimination builds the smallest table.
fn eliminate<T: Coeff>(
    p: u32,
    mut pool: Vec<Labeled<T>>,
    mut remaining: Vec<(String, Alphabet)>,
    order: Option<&[String]>,
    keep: &[(String, Alphabet)],
    cap: u128,
) -> Result<Labeled<T>> {
    let scope = |pool: &[Labeled<T>], v: &str| -> Vec<(String, Alphabet)> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for l in pool.iter().filter(|l| l.vars.iter().any(|u| u == v)) {
            for (u, a) in l.vars.iter().zip(&l.axes) {
                if u != v && seen.insert(u.clone()) {
                    out.push((u.clone(), *a));
                }
            }
        }
        out
    };
    let mut steps: Vec<String> = match order {
        Some(o) => {
            let want: BTreeSet<&String> = remaining.iter().map(|(n, _)| n).collect();
            let got: BTreeSet<&String> = o.iter().collect();
            if want != got || o.len() != remaining.len() {
                return Err(Error::InvalidArgument(
                    "elimination order must list every summed variable exactly once".into(),
                ));
            }
            o.iter().rev().cloned().collect()
        }
        None => Vec::new(),
    };
    while !remaining.is_empty() {
        let v = if order.is_some() {
            steps.pop().expect("validated order")
        } else {
            remaining
                .iter()
                .map(|(n, a)| {
                    let size = table_len(&scope(&pool, n).iter().map(|(_, a)| *a).collect::<Vec<_>>())
                        .unwrap_or(u128::MAX)
                        .saturating_mul(a.cardinality() as u128);
                    (size, n.clone())
                })
                .min()
                .map(|(_, n)| n)
                .expect("nonempty")
        };
        let pos = remaining.iter().position(|(n, _)| *n == v).expect("listed");
        let summed = remaining.remove(pos);
        let keep_here = scope(&pool, &v);
        let (inside, outside): (Vec<_>, Vec<_>) =
            pool.into_iter().partition(|l| l.vars.contains(&v));
        let ops: Vec<Operand<'_, T>> = inside.iter().map(Operand::from_labeled).collect();
        let merged = contract(p, &ops, &keep_here, &[summed], cap)?;
        pool = outside;
        pool.push(merged);
    }
    let ops: Vec<Operand<'_, T>> = pool.iter().map(Operand::from_labeled).collect();
    contract(p, &ops, keep, &[], cap)
}

fn labeled_factor<T: Coeff>(f: &Factor<T>) -> Labeled<T> {
    // Collapse repeated variables onto their diagonal so that labels are distinct.
    let mut vars = Vec::new();
    let mut axes = Vec::new();
    for (v, a) in f.vars.iter().zip(f.table.axes()) {
        if !vars.contains(v) {
            vars.push(v.clone());
            axes.push(*a);
        }
    }
    if vars.len() == f.vars.len() {
        return Labeled {
            vars,
            axes,
            data: f.table.data().to_vec(),
        };
    }
    let keep: Vec<(String, Alphabet)> = vars.iter().cloned().zip(axes.iter().copied()).collect();
    let op = Operand::from_factor(&f.vars, &f.table);
    contract(f.table.p(), &[op], &keep, &[], u128::MAX).expect("diagonal of an existing table")
}

impl<T: Coeff> Realization<T> {
    /// Reference evaluator: visits every configuration of every variable.
    pub fn partition_function_brute(&self, cap: u128) -> Result<PartitionFunction<T>> {
        let ops: Vec<Operand<'_, T>> = self
            .factors()
            .iter()
            .map(|f| Operand::from_factor(&f.vars, &f.table))
            .collect();
        let out = contract(self.p(), &ops, &pairs(self.externals()), &pairs(self.internals()), cap)?;
        self.finish(out)
    }

    /// Variable elimination with the given order, or a greedy order when `None`.
    pub fn partition_function_elimination(
        &self,
        order: Option<&[String]>,
        cap: u128,
    ) -> Result<PartitionFunction<T>> {
        let pool = self.factors().iter().map(labeled_factor).collect();
        let out = eliminate(
            self.p(),
            pool,
            pairs(self.internals()),
            order,
            &pairs(self.externals()),
            cap,
        )?;
        self.finish(out)
    }

    fn finish(&self, out: Labeled<T>) -> Result<PartitionFunction<T>> {
        Ok(PartitionFunction {
            externals: self.externals().to_vec(),
            table: Tensor::new(self.p(), out.axes, out.data)?,
            witness: None,
        })
    }
}

impl<T: Coeff> NormalFactorGraph<T> {
    pub fn partition_function_brute(&self, cap: u128) -> Result<PartitionFunction<T>> {
        self.as_realization().partition_function_brute(cap)
    }

    pub fn partition_function_elimination(
        &self,
        order: Option<&[String]>,
        cap: u128,
    ) -> Result<PartitionFunction<T>> {
        self.as_realization().partition_function_elimination(order, cap)
    }

    /// Brute force when the configuration space fits under `cap`, greedy elimination otherwise.
    pub fn partition_function(&self, cap: u128) -> Result<PartitionFunction<T>> {
        let axes: Vec<Alphabet> = self
            .externals()
            .iter()
            .chain(self.internals())
            .map(|v| v.alphabet)
            .collect();
        if table_len(&axes).is_some_and(|n| n <= cap) {
            self.partition_function_brute(cap)
        } else {
            self.partition_function_elimination(None, cap)
        }
    }

    /// Partition function of the sub-graph formed by the named factors. Internal variables
    /// with both ends inside are summed; every other variable the fragment touches becomes
    /// an axis of the result, in order of first appearance.
    pub fn contract_fragment(&self, factor_ids: &[&str], cap: u128) -> Result<Factor<T>> {
        if factor_ids.is_empty() {
            return Err(Error::InvalidArgument("fragment must contain a factor".into()));
        }
        let mut chosen = Vec::new();
        for id in factor_ids {
            let f = self
                .factor(id)
                .ok_or_else(|| Error::InvalidArgument(format!("no factor named {id}")))?;
            if chosen.iter().any(|g: &&Factor<T>| g.id == f.id) {
                return Err(Error::InvalidArgument(format!("factor {id} listed twice")));
            }
            chosen.push(f);
        }
        if let [f] = chosen.as_slice() {
            if f.vars.iter().collect::<BTreeSet<_>>().len() == f.vars.len() {
                return Ok((*f).clone());
            }
        }
        let internal = variable_map(self.internals());
        let mut count: BTreeMap<&str, usize> = BTreeMap::new();
        let mut order: Vec<&str> = Vec::new();
        for f in &chosen {
            for v in &f.vars {
                let c = count.entry(v).or_insert(0);
                if *c == 0 {
                    order.push(v);
                }
                *c += 1;
            }
        }
        let all = variable_map(self.externals())
            .into_iter()
            .chain(internal.clone())
            .collect::<BTreeMap<_, _>>();
        let (sum, keep): (Vec<&str>, Vec<&str>) = order
            .iter()
            .partition(|v| internal.contains_key(*v) && count[*v] == 2);
        let with_alph = |vs: Vec<&str>| -> Vec<(String, Alphabet)> {
            vs.into_iter().map(|v| (v.to_string(), all[v])).collect()
        };
        let keep = with_alph(keep);
        let pool = chosen.iter().map(|f| labeled_factor(f)).collect();
        let out = eliminate(self.p(), pool, with_alph(sum), None, &keep, cap)?;
        let name = factor_ids.join("+");
        Ok(Factor::new(name, out.vars, Tensor::new(self.p(), out.axes, out.data)?))
    }
}

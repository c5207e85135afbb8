use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;

use crate::algebra::Coeff;
use crate::error::Result;
use crate::tensor::Tensor;
use crate::transform::{sign_inverter, transform_tensor, Flavor};

use super::contract::PartitionFunction;
use super::graph::{Factor, NormalFactorGraph, Variable};

impl<T: Coeff> NormalFactorGraph<T> {
    /// The dual graph: every factor replaced by its forward Fourier transform along all of its
    /// axes, and a sign inverter `<id>.sign` placed in the middle of every internal edge.
    ///
    /// The first occurrence of an internal variable keeps its id and the second becomes
    /// `<id>.neg`. The sign inverter is symmetric, so the choice only affects naming.
    /// Names already in use get a numeric suffix, as happens when dualizing twice.
    pub fn dualize(&self) -> Result<NormalFactorGraph<T>> {
        self.dualize_oriented(&BTreeSet::new())
    }

    /// Like [`dualize`](Self::dualize), but for the edges named in `flipped` the second
    /// occurrence keeps the plain id and the first becomes `<id>.neg`.
    pub fn dualize_oriented(&self, flipped: &BTreeSet<String>) -> Result<NormalFactorGraph<T>> {
        let p = self.p();
        let internal: BTreeMap<&str, &Variable> =
            self.internals().iter().map(|v| (v.id.as_str(), v)).collect();
        let mut taken: BTreeSet<String> = self
            .externals()
            .iter()
            .chain(self.internals())
            .map(|v| v.id.clone())
            .chain(self.factors().iter().map(|f| f.id.clone()))
            .collect();
        let neg_name: BTreeMap<&str, String> = self
            .internals()
            .iter()
            .map(|v| (v.id.as_str(), fresh(&format!("{}.neg", v.id), &mut taken)))
            .collect();
        let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
        let mut factors = Vec::with_capacity(self.factors().len() + internal.len());
        for f in self.factors() {
            let vars = f
                .vars
                .iter()
                .map(|v| {
                    if !internal.contains_key(v.as_str()) {
                        return v.clone();
                    }
                    let k = seen.entry(v.as_str()).or_insert(0);
                    let second = *k == 1;
                    *k += 1;
                    if second != flipped.contains(v) {
                        neg_name[v.as_str()].clone()
                    } else {
                        v.clone()
                    }
                })
                .collect();
            factors.push(Factor::new(f.id.clone(), vars, transform_tensor(&f.table, Flavor::Forward)?));
        }
        let mut internals = Vec::with_capacity(2 * internal.len());
        for v in self.internals() {
            let neg = neg_name[v.id.as_str()].clone();
            internals.push(v.clone());
            internals.push(Variable::new(neg.clone(), v.alphabet));
            factors.push(Factor::new(
                fresh(&format!("{}.sign", v.id), &mut taken),
                vec![v.id.clone(), neg],
                sign_inverter(v.alphabet)?,
            ));
        }
        NormalFactorGraph::new(p, self.externals().to_vec(), internals, factors)
    }

    /// Checks the duality theorem on this graph by brute force: the dual graph's partition
    /// function must equal `Π_j |S_j|` times the Fourier transform of the primal one.
    pub fn verify_duality(&self, cap: u128) -> Result<DualityReport<T>> {
        let primal = self.partition_function_brute(cap)?;
        let transformed = transform_tensor(&primal.table, Flavor::Forward)?;
        let dual = self.dualize()?.partition_function_brute(cap)?;
        let expected: usize = self.internals().iter().map(|v| v.alphabet.cardinality()).product();
        let expected_witness = BigRational::from_integer(expected.into());
        // A zero partition function fixes no scale.
        let observed_witness = if transformed.data().iter().all(Coeff::is_zero) {
            None
        } else {
            dual.table.scale_equal(&transformed)
        };
        let holds = dual.table == transformed.scale_rational(&expected_witness);
        Ok(DualityReport {
            primal,
            transformed,
            dual,
            expected_witness,
            observed_witness,
            holds,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualityReport<T> {
    /// `Z`.
    pub primal: PartitionFunction<T>,
    /// `Ẑ`, the forward transform of `Z`.
    pub transformed: Tensor<T>,
    /// `Z'`, the partition function of the dual graph.
    pub dual: PartitionFunction<T>,
    pub expected_witness: BigRational,
    /// The scale relating `Z'` to `Ẑ`; `None` when `Ẑ` vanishes or no scale fits.
    pub observed_witness: Option<BigRational>,
    pub holds: bool,
}

fn fresh(base: &str, taken: &mut BTreeSet<String>) -> String {
    let mut name = base.to_string();
    let mut i = 2;
    while taken.contains(&name) {
        name = format!("{base}{i}");
        i += 1;
    }
    taken.insert(name.clone());
    name
}

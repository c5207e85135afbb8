//! JSON forms of polynomials, codes, graphs, weight adjacency matrices, encoders and spectra.
//!
//! Rationals are written as strings (`"3"`, `"-1/2"`); on input plain JSON integers are
//! accepted as well. Elements of `Q(ω)` are arrays of `p - 1` rationals in the basis
//! `1, ω, …, ω^{p-2}`; a single rational may stand for itself.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::algebra::{Alphabet, Coeff, CycloRational, Monomial, Polynomial, Symbol};
use crate::convcode::{section_from_generators, Spectrum, TrellisSection};
use crate::error::{Error, Result};
use crate::lincode::LinearCode;
use crate::nfg::{Factor, NormalFactorGraph, PartitionFunction, Realization, Variable};
use crate::tensor::Tensor;
use crate::wgf::{WeightAdjacencyMatrix, WgfKind};

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| err(format!("missing field {key:?}")))
}

fn as_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| err(format!("{what} must be a nonnegative integer")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(format!("{what} must be an array")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| err(format!("{what} must be a string")))
}

fn prime_of(v: &Value) -> Result<u32> {
    let p = as_u64(field(v, "p")?, "p")?;
    u32::try_from(p).map_err(|_| Error::InvalidPrime(u32::MAX))
}

pub fn rational_to_json(q: &BigRational) -> Value {
    Value::String(q.to_string())
}

pub fn rational_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(i.into()))
            .ok_or_else(|| err(format!("{n} is not an integer; write fractions as strings"))),
        Value::String(s) => parse_rational(s),
        _ => Err(err("rational must be a string or an integer")),
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || err(format!("cannot read rational {s:?}"));
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
        Some((a, b)) => {
            let den = BigInt::from_str(b.trim()).map_err(|_| bad())?;
            if den == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(BigInt::from_str(a.trim()).map_err(|_| bad())?, den))
        }
    }
}

pub fn cyclo_to_json(c: &CycloRational) -> Value {
    Value::Array(c.coeffs().iter().map(rational_to_json).collect())
}

pub fn cyclo_from_json(p: u32, v: &Value) -> Result<CycloRational> {
    match v {
        Value::Array(items) => {
            let cs = items.iter().map(rational_from_json).collect::<Result<Vec<_>>>()?;
            CycloRational::from_coeffs(p, cs)
                .ok_or_else(|| err(format!("element of Q(ω) over p={p} needs {} coefficients", p - 1)))
        }
        _ => Ok(CycloRational::from_rational(p, rational_from_json(v)?)),
    }
}

pub fn poly_to_json(g: &Polynomial) -> Value {
    let terms: Vec<Value> = g
        .terms()
        .map(|(m, c)| {
            let mono: Map<String, Value> = m.factors().iter().map(|(n, e)| (n.clone(), json!(e))).collect();
            json!({"coeff": cyclo_to_json(c), "monomial": mono})
        })
        .collect();
    json!({"p": g.p(), "terms": terms})
}

/// Reads a polynomial; `p` may be omitted when the caller supplies it.
pub fn poly_from_json(v: &Value, p: Option<u32>) -> Result<Polynomial> {
    let p = match (v.get("p"), p) {
        (Some(_), _) => prime_of(v)?,
        (None, Some(p)) => p,
        (None, None) => return Err(err("missing field \"p\"")),
    };
    crate::algebra::PrimeField::new(p)?;
    let mut out = Polynomial::zero(p);
    for t in as_array(field(v, "terms")?, "terms")? {
        let c = cyclo_from_json(p, field(t, "coeff")?)?;
        let mono = match t.get("monomial") {
            None | Some(Value::Null) => Monomial::one(),
            Some(Value::Object(m)) => Monomial::from_pairs(
                m.iter()
                    .map(|(n, e)| Ok((n.clone(), u32::try_from(as_u64(e, "exponent")?).map_err(|_| err("exponent too large"))?)))
                    .collect::<Result<Vec<_>>>()?,
            ),
            Some(_) => return Err(err("monomial must be an object")),
        };
        out.add_term(mono, &c);
    }
    Ok(out)
}

/// A table entry: either a scalar or a polynomial (an object with `terms`).
fn entry_is_poly(v: &Value) -> bool {
    v.get("terms").is_some()
}

pub fn code_to_json(c: &LinearCode) -> Value {
    let gens: Vec<Value> = c
        .basis()
        .iter()
        .map(|r| Value::Array(c.symbols_of(r).iter().map(|s| json!(s.coords())).collect()))
        .collect();
    json!({
        "p": c.p(),
        "profile": c.profile().iter().map(Alphabet::dim).collect::<Vec<_>>(),
        "generators": gens,
    })
}

fn symbol_from_json(a: Alphabet, v: &Value) -> Result<Symbol> {
    match v {
        Value::String(s) => a.parse_symbol(s),
        Value::Array(items) => {
            let coords = items
                .iter()
                .map(|x| Ok(as_u64(x, "coordinate")? as u32))
                .collect::<Result<Vec<_>>>()?;
            a.symbol(coords)
        }
        Value::Number(_) if a.dim() == 1 => a.symbol(vec![as_u64(v, "coordinate")? as u32]),
        _ => Err(err("symbol must be a coordinate array or a label string")),
    }
}

pub fn code_from_json(v: &Value) -> Result<LinearCode> {
    let p = prime_of(v)?;
    let profile = as_array(field(v, "profile")?, "profile")?
        .iter()
        .map(|d| Alphabet::over(p, as_u64(d, "profile entry")? as usize))
        .collect::<Result<Vec<_>>>()?;
    let rows = as_array(field(v, "generators")?, "generators")?
        .iter()
        .map(|g| {
            let syms = as_array(g, "generator")?;
            if syms.len() != profile.len() {
                return Err(Error::NonConforming(format!(
                    "generator has {} symbols, profile has {}",
                    syms.len(),
                    profile.len()
                )));
            }
            syms.iter().zip(&profile).map(|(s, a)| symbol_from_json(*a, s)).collect()
        })
        .collect::<Result<Vec<Vec<Symbol>>>>()?;
    LinearCode::from_generators(profile, &rows)
}

fn variables_from_json(p: u32, v: Option<&Value>, what: &str) -> Result<Vec<Variable>> {
    let Some(v) = v else { return Ok(Vec::new()) };
    as_array(v, what)?
        .iter()
        .map(|x| {
            let id = as_str(field(x, "id")?, "variable id")?.to_string();
            Ok(Variable::new(id, Alphabet::over(p, as_u64(field(x, "dim")?, "dim")? as usize)?))
        })
        .collect()
}

fn variables_to_json(vs: &[Variable]) -> Value {
    Value::Array(vs.iter().map(|v| json!({"id": v.id, "dim": v.alphabet.dim()})).collect())
}

/// A graph read from JSON, with scalar or polynomial tables.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphJson {
    Scalar(Realization<CycloRational>),
    Poly(Realization<Polynomial>),
}

/// Reads the graph without degree checks; callers normalize or validate as needed.
pub fn realization_from_json(v: &Value) -> Result<GraphJson> {
    let p = prime_of(v)?;
    crate::algebra::PrimeField::new(p)?;
    let externals = variables_from_json(p, v.get("externals"), "externals")?;
    let internals = variables_from_json(p, v.get("internals"), "internals")?;
    let alph: BTreeMap<&str, Alphabet> = externals
        .iter()
        .chain(&internals)
        .map(|v| (v.id.as_str(), v.alphabet))
        .collect();
    let factors = as_array(field(v, "factors")?, "factors")?;
    let poly = factors.iter().any(|f| {
        f.get("table")
            .and_then(Value::as_array)
            .is_some_and(|t| t.iter().any(entry_is_poly))
    });
    let mut raw = Vec::new();
    for f in factors {
        let id = as_str(field(f, "id")?, "factor id")?.to_string();
        let vars = as_array(field(f, "vars")?, "vars")?
            .iter()
            .map(|x| Ok(as_str(x, "variable id")?.to_string()))
            .collect::<Result<Vec<_>>>()?;
        let axes = vars
            .iter()
            .map(|x| {
                alph.get(x.as_str())
                    .copied()
                    .ok_or_else(|| Error::InvalidGraph(format!("factor {id} refers to undeclared variable {x}")))
            })
            .collect::<Result<Vec<_>>>()?;
        raw.push((id, vars, axes, as_array(field(f, "table")?, "table")?));
    }
    type RawFactor<'a> = (String, Vec<String>, Vec<Alphabet>, &'a Vec<Value>);
    fn build<T: Coeff>(
        p: u32,
        raw: &[RawFactor<'_>],
        read: impl Fn(&Value) -> Result<T>,
    ) -> Result<Vec<Factor<T>>> {
        raw.iter()
            .map(|(id, vars, axes, table)| {
                let data = table.iter().map(&read).collect::<Result<Vec<T>>>()?;
                Ok(Factor::new(id.clone(), vars.clone(), Tensor::new(p, axes.clone(), data)?))
            })
            .collect()
    }
    if poly {
        let fs = build(p, &raw, |e| {
            if entry_is_poly(e) {
                poly_from_json(e, Some(p))
            } else {
                Ok(Polynomial::constant(cyclo_from_json(p, e)?))
            }
        })?;
        Ok(GraphJson::Poly(Realization::new(p, externals, internals, fs)?))
    } else {
        let fs = build(p, &raw, |e| cyclo_from_json(p, e))?;
        Ok(GraphJson::Scalar(Realization::new(p, externals, internals, fs)?))
    }
}

/// JSON form of a table entry.
pub trait EntryJson: Coeff {
    fn entry_to_json(&self) -> Value;
}

impl EntryJson for CycloRational {
    fn entry_to_json(&self) -> Value {
        cyclo_to_json(self)
    }
}

impl EntryJson for Polynomial {
    fn entry_to_json(&self) -> Value {
        poly_to_json(self)
    }
}

pub fn realization_to_json<T: EntryJson>(r: &Realization<T>) -> Value {
    let factors: Vec<Value> = r
        .factors()
        .iter()
        .map(|f| {
            json!({
                "id": f.id,
                "vars": f.vars,
                "table": f.table.data().iter().map(EntryJson::entry_to_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "p": r.p(),
        "externals": variables_to_json(r.externals()),
        "internals": variables_to_json(r.internals()),
        "factors": factors,
    })
}

pub fn nfg_to_json<T: EntryJson>(g: &NormalFactorGraph<T>) -> Value {
    realization_to_json(g.as_realization())
}

pub fn tensor_to_json<T: EntryJson>(t: &Tensor<T>) -> Value {
    json!({
        "p": t.p(),
        "dims": t.axes().iter().map(Alphabet::dim).collect::<Vec<_>>(),
        "table": t.data().iter().map(EntryJson::entry_to_json).collect::<Vec<_>>(),
    })
}

pub fn partition_function_to_json<T: EntryJson>(z: &PartitionFunction<T>) -> Value {
    json!({
        "externals": variables_to_json(&z.externals),
        "table": z.table.data().iter().map(EntryJson::entry_to_json).collect::<Vec<_>>(),
        "witness": z.witness.as_ref().map(rational_to_json),
    })
}

pub fn wam_to_json(w: &WeightAdjacencyMatrix) -> Value {
    json!({
        "kind": w.kind.name(),
        "p": w.p(),
        "state_dim": w.state.dim(),
        "symbol_dim": w.symbol.dim(),
        "rows": w.rows.iter().map(Symbol::label).collect::<Vec<_>>(),
        "cols": w.cols.iter().map(Symbol::label).collect::<Vec<_>>(),
        "entries": w.entries.iter().map(|r| r.iter().map(poly_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn wam_from_json(v: &Value) -> Result<WeightAdjacencyMatrix> {
    let p = prime_of(v)?;
    crate::algebra::PrimeField::new(p)?;
    let kind = WgfKind::from_str(as_str(field(v, "kind")?, "kind")?)?;
    let symbol = Alphabet::over(p, as_u64(field(v, "symbol_dim")?, "symbol_dim")? as usize)?;
    let rows_v = as_array(field(v, "rows")?, "rows")?;
    let state_dim = match v.get("state_dim") {
        Some(d) => as_u64(d, "state_dim")? as usize,
        None => {
            // Infer from the first label: digits when p ≤ 10, comma separated otherwise.
            let l = rows_v.first().map(|x| as_str(x, "state label")).transpose()?.unwrap_or("");
            if p <= 10 { l.len() } else if l.is_empty() { 0 } else { l.split(',').count() }
        }
    };
    let state = Alphabet::over(p, state_dim)?;
    let labels = |arr: &Vec<Value>| -> Result<Vec<Symbol>> {
        arr.iter().map(|x| symbol_from_json(state, x)).collect()
    };
    let rows = labels(rows_v)?;
    let cols = labels(as_array(field(v, "cols")?, "cols")?)?;
    let entries = as_array(field(v, "entries")?, "entries")?
        .iter()
        .map(|r| {
            as_array(r, "entries row")?
                .iter()
                .map(|e| {
                    if entry_is_poly(e) {
                        poly_from_json(e, Some(p))
                    } else {
                        Ok(Polynomial::constant(cyclo_from_json(p, e)?))
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    WeightAdjacencyMatrix::new(kind, state, symbol, rows, cols, entries)
}

/// Reads either an encoder `{"p", "n", "inputs": [{"response": [...]}]}` or a section given
/// as a code on `S × A × S` with an optional `"state_order"` of labels.
pub fn section_from_json(v: &Value) -> Result<TrellisSection> {
    if let Some(inputs) = v.get("inputs") {
        let p = prime_of(v)?;
        let n = as_u64(field(v, "n")?, "n")? as usize;
        let symbol = Alphabet::over(p, n)?;
        let responses = as_array(inputs, "inputs")?
            .iter()
            .map(|i| {
                as_array(field(i, "response")?, "response")?
                    .iter()
                    .map(|b| Ok(symbol_from_json(symbol, b)?.into_coords()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        return section_from_generators(p, n, &responses);
    }
    let code = code_from_json(v)?;
    let order = match v.get("state_order") {
        None | Some(Value::Null) => None,
        Some(o) => {
            let state = *code
                .profile()
                .first()
                .ok_or_else(|| Error::NonConforming("section code needs three coordinates".into()))?;
            Some(as_array(o, "state_order")?.iter().map(|x| symbol_from_json(state, x)).collect::<Result<Vec<_>>>()?)
        }
    };
    TrellisSection::new(code, order)
}

pub fn section_to_json(s: &TrellisSection) -> Value {
    let mut v = code_to_json(s.code());
    v["state_order"] = json!(s.state_order().iter().map(Symbol::label).collect::<Vec<_>>());
    v
}

pub fn spectrum_to_json(s: &Spectrum) -> Value {
    let coeffs: Map<String, Value> = s.coeffs.iter().map(|(d, c)| (d.to_string(), rational_to_json(c))).collect();
    json!({"coeffs": coeffs, "divisor": s.divisor, "dmax": s.max_degree})
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/6").unwrap(), BigRational::new((-1).into(), 2.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1.5").is_err());
        assert_eq!(rational_from_json(&json!(4)).unwrap(), BigRational::from_integer(4.into()));
    }

    #[test]
    fn poly_round_trip() {
        let g = &(&Polynomial::var(3, "x[0][12]") * &Polynomial::var(3, "y")) + &Polynomial::constant(crate::omega_pow(3, 2));
        let v = poly_to_json(&g);
        assert_eq!(poly_from_json(&v, None).unwrap(), g);
    }

    #[test]
    fn code_round_trip() {
        let a = Alphabet::over(3, 2).unwrap();
        let c = LinearCode::from_flat_rows(vec![a, a], &[vec![1, 2, 0, 1]]).unwrap();
        assert_eq!(code_from_json(&code_to_json(&c)).unwrap(), c);
        let v = json!({"p": 3, "profile": [2, 2], "generators": [["12", "01"]]});
        assert_eq!(code_from_json(&v).unwrap(), c);
    }
}

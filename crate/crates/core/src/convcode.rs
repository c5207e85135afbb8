//! Time-invariant convolutional codes as trellis sections: terminations, weight adjacency
//! matrix powers, distance spectra, and section duality.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::linalg::null_space;
use crate::algebra::{Alphabet, CycloRational, Polynomial, Symbol};
use crate::error::{cap_check, Error, Result};
use crate::lincode::LinearCode;
use crate::nfg::{equality, Factor, NormalFactorGraph, Variable};
use crate::tensor::{Tensor, DEFAULT_TENSOR_CAP};
use crate::wgf::{WeightAdjacencyMatrix, WgfKind};

/// Limit on the number of states for which state-graph computations are attempted.
pub const DEFAULT_STATE_CAP: u128 = 1 << 12;

/// One trellis section: a constraint code on `S × A × S` and an order on the states used
/// to index weight adjacency matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct TrellisSection {
    state: Alphabet,
    symbol: Alphabet,
    code: LinearCode,
    state_order: Vec<Symbol>,
}

impl TrellisSection {
    /// `code` must have profile `[S, A, S]`. Without an order the states are listed in
    /// alphabet enumeration order.
    pub fn new(code: LinearCode, state_order: Option<Vec<Symbol>>) -> Result<Self> {
        let prof = code.profile();
        if prof.len() != 3 || prof[0] != prof[2] {
            return Err(Error::NonConforming(
                "constraint code must have coordinate partition S × A × S".into(),
            ));
        }
        let (state, symbol) = (prof[0], prof[1]);
        cap_check("state space", state.checked_cardinality().unwrap_or(usize::MAX) as u128, DEFAULT_STATE_CAP)?;
        let order = match state_order {
            Some(o) => {
                let mut seen = vec![false; state.cardinality()];
                for s in &o {
                    if std::mem::replace(&mut seen[state.index_of(s)?], true) {
                        return Err(Error::InvalidArgument(format!("state {s} listed twice")));
                    }
                }
                if seen.contains(&false) {
                    return Err(Error::InvalidArgument("state order must list every state".into()));
                }
                o
            }
            None => state.symbols().collect(),
        };
        Ok(Self {
            state,
            symbol,
            code,
            state_order: order,
        })
    }

    pub fn p(&self) -> u32 {
        self.state.p()
    }

    pub fn state(&self) -> Alphabet {
        self.state
    }

    pub fn symbol(&self) -> Alphabet {
        self.symbol
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn state_order(&self) -> &[Symbol] {
        &self.state_order
    }

    pub fn with_state_order(&self, order: Vec<Symbol>) -> Result<Self> {
        Self::new(self.code.clone(), Some(order))
    }

    /// Weight adjacency matrix, rows and columns in the section's state order.
    pub fn wam(&self, kind: WgfKind) -> Result<WeightAdjacencyMatrix> {
        WeightAdjacencyMatrix::from_constraint_code(
            &self.code,
            kind,
            self.state_order.clone(),
            self.state_order.clone(),
            crate::lincode::DEFAULT_ENUMERATION_CAP,
        )
    }

    /// Transitions `(s, a, s')` with `a = 0`, as state index pairs.
    fn zero_symbol_edges(&self) -> Vec<(usize, usize)> {
        let (m, n) = (self.state.dim(), self.symbol.dim());
        let p = self.p();
        // The subcode with zero symbol: intersect with the coordinate subspace.
        let mut rows: Vec<Vec<u32>> = self.code.dual().basis().to_vec();
        for i in 0..n {
            let mut e = vec![0; 2 * m + n];
            e[m + i] = 1;
            rows.push(e);
        }
        let kernel = null_space(self.code.field(), &rows, 2 * m + n);
        let k = LinearCode::from_flat_rows(vec![self.state, self.symbol, self.state], &kernel)
            .expect("subcode of a conforming code");
        k.enumerate(u128::MAX)
            .expect("bounded by the state cap")
            .map(|w| {
                (
                    crate::algebra::field::index_of_coords(&w[..m], p),
                    crate::algebra::field::index_of_coords(&w[m + n..], p),
                )
            })
            .collect()
    }

    /// Checks that the all-zero symbol sequence has only the all-zero state sequence: the
    /// zero-symbol transition graph has no cycle apart from the zero self-loop.
    pub fn check_zero_state(&self) -> Result<()> {
        let size = self.state.cardinality();
        let mut adj = vec![Vec::new(); size];
        for (a, b) in self.zero_symbol_edges() {
            if a == 0 && b == 0 {
                continue;
            }
            adj[a].push(b);
        }
        // Iterative three-colour depth-first search.
        let mut colour = vec![0u8; size];
        for start in 0..size {
            if colour[start] != 0 {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            colour[start] = 1;
            while let Some((v, i)) = stack.pop() {
                if i < adj[v].len() {
                    stack.push((v, i + 1));
                    let w = adj[v][i];
                    match colour[w] {
                        0 => {
                            colour[w] = 1;
                            stack.push((w, 0));
                        }
                        1 => return Err(Error::ZeroStateNotUnique),
                        _ => {}
                    }
                } else {
                    colour[v] = 2;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for TrellisSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

/// Builds the shift-register section of an encoder given by impulse responses.
///
/// `responses[j] = (b_0, …, b_ν)` is the output of input `j`, one symbol of `n` scalars
/// per time step. The state holds, input by input, registers of ages `1..ν_j`; input `j`
/// contributes the transitions (age `t`, `b_t`, age `t+1`) where ages `0` and `ν_j + 1`
/// stand for the zero state.
pub fn section_from_generators(p: u32, n: usize, responses: &[Vec<Vec<u32>>]) -> Result<TrellisSection> {
    if responses.is_empty() {
        return Err(Error::InvalidArgument("at least one impulse response is required".into()));
    }
    let symbol = Alphabet::over(p, n)?;
    let mut memory = Vec::with_capacity(responses.len());
    for r in responses {
        if r.is_empty() {
            return Err(Error::InvalidArgument("impulse response must have at least one term".into()));
        }
        for b in r {
            symbol.symbol(b.clone())?;
        }
        memory.push(r.len() - 1);
    }
    let m: usize = memory.iter().sum();
    let state = Alphabet::over(p, m)?;
    let mut rows = Vec::new();
    let mut base = 0;
    for (r, &nu) in responses.iter().zip(&memory) {
        for (t, b) in r.iter().enumerate() {
            let mut row = vec![0u32; 2 * m + n];
            if t >= 1 {
                row[base + t - 1] = 1;
            }
            row[m..m + n].copy_from_slice(b);
            if t < nu {
                row[m + n + base + t] = 1;
            }
            rows.push(row);
        }
        base += nu;
    }
    let code = LinearCode::from_flat_rows(vec![state, symbol, state], &rows)?;
    TrellisSection::new(code, None)
}

/// Parses an encoder written as D-transforms: inputs separated by `;`, the `n` output
/// polynomials of each input separated by `,`, e.g. `"1+D^2, 1+D+D^2"` or
/// `"1+D^2, 2+D, 0; 1, 0, 2"`. Returns the impulse responses.
pub fn parse_d_transforms(p: u32, text: &str) -> Result<Vec<Vec<Vec<u32>>>> {
    let mut out = Vec::new();
    for input in text.split(';') {
        let polys: Vec<Vec<u32>> = input
            .split(',')
            .map(|s| parse_d_poly(p, s))
            .collect::<Result<_>>()?;
        let len = polys.iter().map(Vec::len).max().unwrap_or(0).max(1);
        let response: Vec<Vec<u32>> = (0..len)
            .map(|t| polys.iter().map(|c| c.get(t).copied().unwrap_or(0)).collect())
            .collect();
        out.push(response);
    }
    let n = out[0][0].len();
    if out.iter().any(|r: &Vec<Vec<u32>>| r[0].len() != n) {
        return Err(Error::Parse("every input needs the same number of outputs".into()));
    }
    Ok(out)
}

/// Coefficients (lowest degree first) of a polynomial in `D` over `Z_p`.
fn parse_d_poly(p: u32, s: &str) -> Result<Vec<u32>> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut coeffs: Vec<u32> = Vec::new();
    for term in s.split('+') {
        let bad = || Error::Parse(format!("cannot read term {term:?} of {s:?}"));
        let (c, e) = match term.find('D') {
            None => (term.parse::<u64>().map_err(|_| bad())?, 0),
            Some(i) => {
                let c = match term[..i].trim_end_matches('*') {
                    "" => 1,
                    t => t.parse::<u64>().map_err(|_| bad())?,
                };
                let e = match &term[i + 1..] {
                    "" => 1,
                    t => t.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?,
                };
                (c, e)
            }
        };
        if coeffs.len() <= e {
            coeffs.resize(e + 1, 0);
        }
        coeffs[e] = ((coeffs[e] as u64 + c) % p as u64) as u32;
    }
    while coeffs.len() > 1 && coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// `Λ^N`, with every entry reduced mod `x^{max_degree+1}` when a degree bound is given.
pub fn wam_power(lam: &WeightAdjacencyMatrix, n: u32, max_degree: Option<u32>) -> Result<WeightAdjacencyMatrix> {
    if !lam.is_square() {
        return Err(Error::NotSquare {
            rows: lam.rows.len(),
            cols: lam.cols.len(),
        });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    let mut base = match max_degree {
        Some(d) => lam.map_entries(|e| e.truncate(d)),
        None => lam.clone(),
    };
    let mut acc: Option<WeightAdjacencyMatrix> = None;
    let mut e = n;
    loop {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => a.mul(&base, max_degree)?,
            });
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        base = base.mul(&base, max_degree)?;
    }
    Ok(acc.expect("n >= 1"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TerminationMode {
    /// `s_0 = s_N = 0`.
    Subcode,
    /// No boundary constraint.
    Projection,
    /// `s_0 = 0`.
    Truncated,
    /// `s_N = 0`.
    ReverseTruncated,
    /// `s_N = s_0`.
    Tailbiting,
}

impl TerminationMode {
    pub const ALL: [TerminationMode; 5] = [
        TerminationMode::Subcode,
        TerminationMode::Projection,
        TerminationMode::Truncated,
        TerminationMode::ReverseTruncated,
        TerminationMode::Tailbiting,
    ];

    /// The mode whose terminated dual section gives the dual of this termination.
    pub fn dual(self) -> TerminationMode {
        match self {
            TerminationMode::Subcode => TerminationMode::Projection,
            TerminationMode::Projection => TerminationMode::Subcode,
            TerminationMode::Truncated => TerminationMode::ReverseTruncated,
            TerminationMode::ReverseTruncated => TerminationMode::Truncated,
            TerminationMode::Tailbiting => TerminationMode::Tailbiting,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TerminationMode::Subcode => "subcode",
            TerminationMode::Projection => "projection",
            TerminationMode::Truncated => "truncated",
            TerminationMode::ReverseTruncated => "rtruncated",
            TerminationMode::Tailbiting => "tailbiting",
        }
    }
}

impl std::str::FromStr for TerminationMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "subcode" => TerminationMode::Subcode,
            "projection" => TerminationMode::Projection,
            "truncated" => TerminationMode::Truncated,
            "rtruncated" | "reversetruncated" => TerminationMode::ReverseTruncated,
            "tailbiting" => TerminationMode::Tailbiting,
            _ => return Err(Error::Parse(format!("unknown termination mode {s:?}"))),
        })
    }
}

impl fmt::Display for TerminationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Basis of the behavior over `N` sections: vectors `(s_0, …, s_N, a_0, …, a_{N-1})`.
fn behavior(section: &TrellisSection, n: usize, mode: TerminationMode) -> (Vec<Vec<u32>>, usize, usize) {
    let (m, k) = (section.state.dim(), section.symbol.dim());
    let field = section.code.field();
    let checks = section.code.dual();
    let ncols = (n + 1) * m + n * k;
    let s_at = |t: usize, i: usize| t * m + i;
    let a_at = |t: usize, i: usize| (n + 1) * m + t * k + i;
    let mut rows = Vec::new();
    for t in 0..n {
        for h in checks.basis() {
            let mut r = vec![0u32; ncols];
            for i in 0..m {
                r[s_at(t, i)] = h[i];
                r[s_at(t + 1, i)] = h[m + k + i];
            }
            for i in 0..k {
                r[a_at(t, i)] = h[m + i];
            }
            rows.push(r);
        }
    }
    let unit = |c: usize| {
        let mut r = vec![0u32; ncols];
        r[c] = 1;
        r
    };
    for i in 0..m {
        match mode {
            TerminationMode::Subcode => {
                rows.push(unit(s_at(0, i)));
                rows.push(unit(s_at(n, i)));
            }
            TerminationMode::Truncated => rows.push(unit(s_at(0, i))),
            TerminationMode::ReverseTruncated => rows.push(unit(s_at(n, i))),
            TerminationMode::Tailbiting => {
                let mut r = unit(s_at(n, i));
                r[s_at(0, i)] = field.neg(1);
                rows.push(r);
            }
            TerminationMode::Projection => {}
        }
    }
    (null_space(field, &rows, ncols), (n + 1) * m, ncols)
}

/// Block code of length `N` over `A` cut out of the trellis by the mode's boundary rule.
pub fn terminate(section: &TrellisSection, n: usize, mode: TerminationMode) -> Result<LinearCode> {
    if n == 0 {
        return Err(Error::InvalidArgument("termination length must be at least 1".into()));
    }
    let (basis, start, _) = behavior(section, n, mode);
    let rows: Vec<Vec<u32>> = basis.iter().map(|v| v[start..].to_vec()).collect();
    LinearCode::from_flat_rows(vec![section.symbol; n], &rows)
}

/// Number of state sequences compatible with each codeword of the termination:
/// `|behavior| / |code|`, a power of `p`.
pub fn termination_multiplicity(section: &TrellisSection, n: usize, mode: TerminationMode) -> Result<BigRational> {
    let code = terminate(section, n, mode)?;
    let (basis, _, _) = behavior(section, n, mode);
    let extra = basis.len() - code.dimension();
    Ok(BigRational::from_integer(num_bigint::BigInt::from(section.p()).pow(extra as u32)))
}

/// The boundary-selected part of `Λ^N` that enumerates the mode's termination: the zero
/// state entry, the sum of all entries, the zero row, the zero column, or the trace.
pub fn terminated_hwgf(lam_n: &WeightAdjacencyMatrix, mode: TerminationMode) -> Result<Polynomial> {
    if !lam_n.is_square() {
        return Err(Error::NotSquare {
            rows: lam_n.rows.len(),
            cols: lam_n.cols.len(),
        });
    }
    let (z, zc) = (lam_n.zero_row(), lam_n.zero_col());
    Ok(match mode {
        TerminationMode::Subcode => lam_n.get(z, zc).clone(),
        TerminationMode::Projection => lam_n.total(),
        TerminationMode::Truncated => lam_n.row_sum(z),
        TerminationMode::ReverseTruncated => lam_n.col_sum(zc),
        TerminationMode::Tailbiting => lam_n.trace()?,
    })
}

/// Constraint code of a section in the dual graph: `C⊥` on `S × A × S`, before the sign
/// inverter on the outgoing state edge is taken into account.
pub fn dual_constraint_code(section: &TrellisSection) -> LinearCode {
    section.code.dual()
}

/// `{(s, a, -s') : (s, a, s') ∈ code}` for a code on `S × A × S`. Folds a sign inverter on the
/// next-state edge into the constraint code; applying it twice is the identity.
pub fn negate_next_state(code: &LinearCode) -> Result<LinearCode> {
    let prof = code.profile();
    if prof.len() != 3 || prof[0] != prof[2] {
        return Err(Error::InvalidArgument("expected a code on S × A × S".into()));
    }
    let (m, p) = (prof[0].dim(), code.p());
    let start = m + prof[1].dim();
    let rows: Vec<Vec<u32>> = code
        .basis()
        .iter()
        .map(|r| {
            let mut r = r.clone();
            for v in &mut r[start..start + m] {
                *v = (p - *v) % p;
            }
            r
        })
        .collect();
    LinearCode::from_flat_rows(prof.to_vec(), &rows)
}

/// Dual section `{(ŝ, â, ŝ') : (ŝ, â, -ŝ') ∈ C⊥}`: the dual state enters the next section
/// through a sign inverter. The state order carries over.
pub fn dual_section(section: &TrellisSection) -> Result<TrellisSection> {
    let code = negate_next_state(&dual_constraint_code(section))?;
    TrellisSection::new(code, Some(section.state_order.clone()))
}

/// Exchanges the roles of state and next state.
pub fn time_reverse(section: &TrellisSection) -> Result<TrellisSection> {
    let (m, k) = (section.state.dim(), section.symbol.dim());
    let rows: Vec<Vec<u32>> = section
        .code
        .basis()
        .iter()
        .map(|r| [&r[m + k..], &r[m..m + k], &r[..m]].concat())
        .collect();
    let code = LinearCode::from_flat_rows(section.code.profile().to_vec(), &rows)?;
    TrellisSection::new(code, Some(section.state_order.clone()))
}

/// Counts indexed by Hamming weight, up to `max_degree`, optionally divided by `divisor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    pub coeffs: BTreeMap<u32, BigRational>,
    pub divisor: Option<u32>,
    pub max_degree: u32,
}

impl Spectrum {
    fn from_univariate(g: &Polynomial, divisor: Option<u32>, max_degree: u32) -> Result<Self> {
        let cs = g
            .univariate_coeffs("x")
            .ok_or_else(|| Error::NonConforming("expected a polynomial in x alone".into()))?;
        let scale = BigRational::from_integer(divisor.unwrap_or(1).into());
        let mut coeffs = BTreeMap::new();
        for (d, c) in cs.iter().enumerate() {
            if d as u32 > max_degree || c.is_zero() {
                continue;
            }
            let q = c
                .as_rational()
                .ok_or_else(|| Error::NonConforming("irrational count".into()))?;
            coeffs.insert(d as u32, q / &scale);
        }
        Ok(Self {
            coeffs,
            divisor,
            max_degree,
        })
    }

    /// Least positive weight with a nonzero count.
    pub fn free_distance(&self) -> Option<u32> {
        self.coeffs
            .iter()
            .find(|(d, c)| **d > 0 && !c.is_zero())
            .map(|(d, _)| *d)
    }

    pub fn get(&self, d: u32) -> BigRational {
        self.coeffs.get(&d).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Same counts, ignoring the divisor and degree bound.
    pub fn same_counts(&self, other: &Spectrum) -> bool {
        self.coeffs == other.coeffs
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(d, c)| match (*d, c.is_one()) {
                (0, _) => c.to_string(),
                (1, true) => "x".into(),
                (1, false) => format!("{c}x"),
                (_, true) => format!("x^{d}"),
                (_, false) => format!("{c}x^{d}"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Counts of paths that leave the zero state and first return to it, by symbol weight,
/// for weights up to `max_degree`.
pub fn free_distance_spectrum(section: &TrellisSection, max_degree: u32) -> Result<Spectrum> {
    if max_degree < 1 {
        return Err(Error::InvalidArgument("degree bound must be at least 1".into()));
    }
    section.check_zero_state()?;
    let lam = section.wam(WgfKind::Hamming)?.map_entries(|e| e.truncate(max_degree));
    let (z, zc) = (lam.zero_row(), lam.zero_col());
    let p = section.p();
    let size = lam.rows.len();
    // Entries are indexed by the same state order on both sides.
    let col_of_row: Vec<usize> = lam
        .rows
        .iter()
        .map(|s| lam.cols.iter().position(|c| c == s).expect("same states"))
        .collect();
    let mut total = lam.get(z, zc) - &Polynomial::one(p);
    let mut v: Vec<Polynomial> = (0..size)
        .map(|c| if c == zc { Polynomial::zero(p) } else { lam.get(z, c).clone() })
        .collect();
    let limit = size * (max_degree as usize + 1) + 2;
    for _ in 0..limit {
        if v.iter().all(Polynomial::is_zero) {
            return Spectrum::from_univariate(&total, None, max_degree);
        }
        let mut next = vec![Polynomial::zero(p); size];
        for (r, row) in lam.entries.iter().enumerate() {
            let vr = &v[col_of_row[r]];
            if vr.is_zero() {
                continue;
            }
            for (c, e) in row.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let prod = vr.mul_truncated(e, max_degree);
                if c == zc {
                    total.add_assign(&prod);
                } else {
                    next[c].add_assign(&prod);
                }
            }
        }
        v = next;
    }
    Err(Error::ZeroStateNotUnique)
}

/// `Tr(Λ^N)` without its constant term, divided by `N`, up to weight `max_degree`.
pub fn normalized_tailbiting_spectrum(section: &TrellisSection, n: u32, max_degree: u32) -> Result<Spectrum> {
    let lam = section.wam(WgfKind::Hamming)?;
    let tr = wam_power(&lam, n, Some(max_degree))?.trace()?;
    let constant = Polynomial::constant(tr.coeff(&crate::algebra::Monomial::one()));
    Spectrum::from_univariate(&(&tr - &constant), Some(n), max_degree)
}

/// Normal graph of the termination: constraint-code indicators on `(s_t, a_t, s_{t+1})`,
/// externals `a0 … a{N-1}`, and for the boundary a zero-state indicator `s0.zero` / `sN.zero`,
/// an all-ones factor, or (tail-biting) the last section closing on `s0`.
pub fn termination_nfg(
    section: &TrellisSection,
    n: usize,
    mode: TerminationMode,
) -> Result<NormalFactorGraph<CycloRational>> {
    if n == 0 {
        return Err(Error::InvalidArgument("termination length must be at least 1".into()));
    }
    let p = section.p();
    let (sa, aa) = (section.state, section.symbol);
    let (m, k) = (sa.dim(), aa.dim());
    let table: Tensor<CycloRational> = Tensor::indicator(p, vec![sa, aa, sa], DEFAULT_TENSOR_CAP, |s| {
        let w: Vec<u32> = s.iter().flat_map(|x| x.coords().iter().copied()).collect();
        debug_assert_eq!(w.len(), 2 * m + k);
        section.code.contains(&w)
    })?;
    let externals: Vec<Variable> = (0..n).map(|t| Variable::new(format!("a{t}"), aa)).collect();
    let tail = mode == TerminationMode::Tailbiting;
    let last = if tail { n } else { n + 1 };
    let internals: Vec<Variable> = (0..last).map(|t| Variable::new(format!("s{t}"), sa)).collect();
    let state_name = |t: usize| if tail && t == n { "s0".to_string() } else { format!("s{t}") };
    let mut factors: Vec<Factor<CycloRational>> = (0..n)
        .map(|t| {
            Factor::new(
                format!("C{t}"),
                vec![state_name(t), format!("a{t}"), state_name(t + 1)],
                table.clone(),
            )
        })
        .collect();
    let zero: Tensor<CycloRational> = Tensor::indicator(p, vec![sa], DEFAULT_TENSOR_CAP, |s| s[0].is_zero())?;
    let ones: Tensor<CycloRational> = equality(p, sa, 1);
    let ends = [(0, "s0".to_string()), (n, format!("s{n}"))];
    for (i, (t, v)) in ends.into_iter().enumerate() {
        let pinned = match mode {
            TerminationMode::Tailbiting => continue,
            TerminationMode::Subcode => true,
            TerminationMode::Projection => false,
            TerminationMode::Truncated => i == 0,
            TerminationMode::ReverseTruncated => i == 1,
        };
        let (name, tab) = if pinned {
            (format!("s{t}.zero"), zero.clone())
        } else {
            (format!("s{t}.free"), ones.clone())
        };
        factors.push(Factor::new(name, vec![v], tab));
    }
    NormalFactorGraph::new(p, externals, internals, factors)
}

/// Chain of `N` copies of `Λ` as a normal graph with polynomial factors on `(s_t, s_{t+1})`;
/// its partition function over `(s0, sN)` is `Λ^N`.
pub fn wam_chain_nfg(lam: &WeightAdjacencyMatrix, n: usize) -> Result<NormalFactorGraph<Polynomial>> {
    if n == 0 {
        return Err(Error::InvalidArgument("chain length must be at least 1".into()));
    }
    let p = lam.p();
    let sa = lam.state;
    let ri: Vec<usize> = sa.symbols().map(|s| lam.rows.iter().position(|r| *r == s).expect("full order")).collect();
    let ci: Vec<usize> = sa.symbols().map(|s| lam.cols.iter().position(|c| *c == s).expect("full order")).collect();
    let table = Tensor::from_fn(p, vec![sa, sa], DEFAULT_TENSOR_CAP, |s| {
        let (a, b) = (sa.index_of(&s[0]).expect("axis"), sa.index_of(&s[1]).expect("axis"));
        lam.get(ri[a], ci[b]).clone()
    })?;
    let externals = vec![Variable::new("s0", sa), Variable::new(format!("s{n}"), sa)];
    let internals = (1..n).map(|t| Variable::new(format!("s{t}"), sa)).collect();
    let factors = (0..n)
        .map(|t| Factor::new(format!("L{t}"), vec![format!("s{t}"), format!("s{}", t + 1)], table.clone()))
        .collect();
    NormalFactorGraph::new(p, externals, internals, factors)
}

//! Weight generating functions, weight adjacency matrices, and MacWilliams identities.
//!
//! Indeterminates: `x[k][a]` (exact: position `k`, symbol label `a`), `x[c]` (complete:
//! field element `c`), `x` with homogenizing partner `y` (Hamming). Dual objects use the
//! same names with `X` and `Y`; a second transform switches back.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::algebra::field::dot;
use crate::algebra::{omega_pow, Alphabet, CycloRational, Monomial, Polynomial, Symbol};
use crate::error::{Error, Result};
use crate::lincode::LinearCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WgfKind {
    Exact,
    Complete,
    Hamming,
}

impl WgfKind {
    pub fn name(self) -> &'static str {
        match self {
            WgfKind::Exact => "exact",
            WgfKind::Complete => "complete",
            WgfKind::Hamming => "hamming",
        }
    }
}

impl std::str::FromStr for WgfKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Ok(WgfKind::Exact),
            "complete" => Ok(WgfKind::Complete),
            "hamming" => Ok(WgfKind::Hamming),
            _ => Err(Error::Parse(format!("unknown weight generating function kind {s:?}"))),
        }
    }
}

impl fmt::Display for WgfKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which set of indeterminates a polynomial is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Namespace {
    Primal,
    Dual,
}

impl Namespace {
    fn weight(self) -> &'static str {
        match self {
            Namespace::Primal => "x",
            Namespace::Dual => "X",
        }
    }

    /// Name of the homogenizing partner in Hamming enumerators.
    fn partner(self) -> &'static str {
        match self {
            Namespace::Primal => "y",
            Namespace::Dual => "Y",
        }
    }

    pub fn other(self) -> Namespace {
        match self {
            Namespace::Primal => Namespace::Dual,
            Namespace::Dual => Namespace::Primal,
        }
    }
}

pub fn exact_var(ns: Namespace, k: usize, a: &Symbol) -> String {
    format!("{}[{k}][{}]", ns.weight(), a.label())
}

pub fn complete_var(ns: Namespace, c: u32) -> String {
    format!("{}[{c}]", ns.weight())
}

pub fn hamming_var(ns: Namespace) -> &'static str {
    ns.weight()
}

pub fn hamming_partner(ns: Namespace) -> &'static str {
    ns.partner()
}

/// Namespace of a family of polynomials; constants count as primal.
pub fn namespace_of<'a>(polys: impl IntoIterator<Item = &'a Polynomial>) -> Result<Namespace> {
    let mut found: Option<Namespace> = None;
    for g in polys {
        for name in g.indeterminates() {
            let ns = match name.chars().next() {
                Some('x' | 'y') => Namespace::Primal,
                Some('X' | 'Y') => Namespace::Dual,
                _ => {
                    return Err(Error::NonConforming(format!("unexpected indeterminate {name}")));
                }
            };
            if found.is_some_and(|f| f != ns) {
                return Err(Error::NonConforming(
                    "polynomial mixes primal and dual indeterminates".into(),
                ));
            }
            found = Some(ns);
        }
    }
    Ok(found.unwrap_or(Namespace::Primal))
}

/// Monomial of one codeword, given as flattened coordinates over `profile`.
pub fn codeword_monomial(kind: WgfKind, ns: Namespace, profile: &[Alphabet], word: &[u32]) -> Monomial {
    match kind {
        WgfKind::Exact => {
            let mut i = 0;
            let mut pairs = Vec::with_capacity(profile.len());
            for (k, a) in profile.iter().enumerate() {
                let s = Symbol::new(a.p(), word[i..i + a.dim()].to_vec()).expect("residues");
                pairs.push((exact_var(ns, k, &s), 1));
                i += a.dim();
            }
            Monomial::from_pairs(pairs)
        }
        WgfKind::Complete => Monomial::from_pairs(word.iter().map(|&c| (complete_var(ns, c), 1))),
        WgfKind::Hamming => {
            let w = word.iter().filter(|&&c| c != 0).count() as u32;
            Monomial::from_pairs([(hamming_var(ns), w)])
        }
    }
}

/// Weight generating function of a block code, by enumeration.
pub fn wgf(code: &LinearCode, kind: WgfKind, cap: u128) -> Result<Polynomial> {
    let p = code.p();
    let one = CycloRational::one(p);
    let mut out = Polynomial::zero(p);
    for w in code.enumerate(cap)? {
        out.add_term(codeword_monomial(kind, Namespace::Primal, code.profile(), &w), &one);
    }
    Ok(out)
}

/// Substitutes `Π_ℓ x[a_ℓ]` for every `x[k][a]`.
pub fn exact_to_complete(g: &Polynomial, profile: &[Alphabet]) -> Result<Polynomial> {
    let ns = namespace_of([g])?;
    let p = g.p();
    let mut subst = BTreeMap::new();
    for (k, a) in profile.iter().enumerate() {
        for s in a.symbols() {
            let m = Monomial::from_pairs(s.coords().iter().map(|&c| (complete_var(ns, c), 1)));
            subst.insert(exact_var(ns, k, &s), Polynomial::term(m, CycloRational::one(p)));
        }
    }
    check_vars(g, &subst)?;
    Ok(g.substitute(&subst))
}

/// Substitutes `1` for `x[0]` and `x` for every other `x[c]`.
pub fn complete_to_hamming(g: &Polynomial) -> Result<Polynomial> {
    let ns = namespace_of([g])?;
    let p = g.p();
    let mut subst = BTreeMap::new();
    subst.insert(complete_var(ns, 0), Polynomial::one(p));
    for c in 1..p {
        subst.insert(complete_var(ns, c), Polynomial::var(p, hamming_var(ns)));
    }
    check_vars(g, &subst)?;
    Ok(g.substitute(&subst))
}

fn check_vars(g: &Polynomial, subst: &BTreeMap<String, Polynomial>) -> Result<()> {
    match g.indeterminates().into_iter().find(|n| !subst.contains_key(n)) {
        Some(n) => Err(Error::NonConforming(format!(
            "indeterminate {n} does not belong to the declared kind and profile"
        ))),
        None => Ok(()),
    }
}

/// A transformed object together with the scale witness `α`: the raw transform equals
/// `α·result`.
#[derive(Debug, Clone, PartialEq)]
pub struct MacWilliams<T> {
    pub result: T,
    pub witness: BigRational,
}

/// `x(a) ← Σ_b ω^{-⟨b,a⟩} X(b)` for every symbol of `alphabet`, with names from `name`.
fn conjugate_transform_subst(
    alphabet: Alphabet,
    from: impl Fn(&Symbol) -> String,
    to: impl Fn(&Symbol) -> String,
    out: &mut BTreeMap<String, Polynomial>,
) {
    let p = alphabet.p();
    let syms: Vec<Symbol> = alphabet.symbols().collect();
    for a in &syms {
        let mut img = Polynomial::zero(p);
        for b in &syms {
            img.add_term(Monomial::var(to(b)), &omega_pow(p, -(dot(a.coords(), b.coords(), p) as i64)));
        }
        out.insert(from(a), img);
    }
}

/// The change of indeterminates `x ← F* X` appropriate to `kind`, from namespace `ns`.
fn change_of_indeterminates(
    kind: WgfKind,
    ns: Namespace,
    profile: &[Alphabet],
    p: u32,
) -> BTreeMap<String, Polynomial> {
    let to = ns.other();
    let mut subst = BTreeMap::new();
    match kind {
        WgfKind::Exact => {
            for (k, a) in profile.iter().enumerate() {
                conjugate_transform_subst(*a, |s| exact_var(ns, k, s), |s| exact_var(to, k, s), &mut subst);
            }
        }
        WgfKind::Complete => {
            let f = Alphabet::over(p, 1).expect("prime");
            conjugate_transform_subst(
                f,
                |s| complete_var(ns, s.coords()[0]),
                |s| complete_var(to, s.coords()[0]),
                &mut subst,
            );
        }
        WgfKind::Hamming => {
            // Homogeneous form: zero coordinates carry the partner, nonzero ones the weight.
            let (w, y) = (Polynomial::var(p, hamming_var(to)), Polynomial::var(p, hamming_partner(to)));
            let q1 = CycloRational::from_int(p, p as i64 - 1);
            subst.insert(hamming_partner(ns).to_string(), &y + &w.scale(&q1));
            subst.insert(hamming_var(ns).to_string(), &y - &w);
        }
    }
    subst
}

/// Applies the substitution to one Hamming enumerator of scalar length `n`, going through
/// the homogeneous form when the input is univariate.
fn hamming_substitute(
    g: &Polynomial,
    ns: Namespace,
    n: usize,
    subst: &BTreeMap<String, Polynomial>,
) -> Result<Polynomial> {
    let partner = hamming_partner(ns);
    let has_partner = g.indeterminates().contains(partner);
    let h = if has_partner {
        if g.terms().any(|(m, _)| m.total_degree() != n as u32) {
            return Err(Error::NonConforming(format!(
                "bivariate Hamming enumerator is not homogeneous of degree {n}"
            )));
        }
        g.clone()
    } else {
        g.homogenize(n as u32, partner).ok_or_else(|| {
            Error::NonConforming(format!("Hamming enumerator has degree above the length {n}"))
        })?
    };
    let out = h.substitute(subst);
    Ok(if has_partner {
        out
    } else {
        out.dehomogenize(hamming_partner(ns.other()))
    })
}

fn positive_size(total: &CycloRational) -> Result<BigRational> {
    match total.as_rational() {
        Some(q) if q.is_positive() => Ok(q.clone()),
        _ => Err(Error::NonConforming(
            "value at all-ones is not a positive rational; not the enumerator of a code".into(),
        )),
    }
}

/// MacWilliams transform of a weight generating function of a code over `profile`.
///
/// The result is the enumerator of the dual code in the other namespace; the witness is
/// the value of `g` at all ones, which for a code is `|C|`.
pub fn macwilliams_wgf(g: &Polynomial, kind: WgfKind, profile: &[Alphabet]) -> Result<MacWilliams<Polynomial>> {
    let p = g.p();
    if let Some(a) = profile.iter().find(|a| a.p() != p) {
        return Err(Error::AlphabetMismatch(format!("profile alphabet over Z_{}", a.p())));
    }
    let ns = namespace_of([g])?;
    let subst = change_of_indeterminates(kind, ns, profile, p);
    let raw = match kind {
        WgfKind::Hamming => {
            let allowed = [hamming_var(ns), hamming_partner(ns)];
            if let Some(n) = g.indeterminates().iter().find(|n| !allowed.contains(&n.as_str())) {
                return Err(Error::NonConforming(format!("{n} is not a Hamming indeterminate")));
            }
            let n: usize = profile.iter().map(Alphabet::dim).sum();
            hamming_substitute(g, ns, n, &subst)?
        }
        _ => {
            check_vars(g, &subst)?;
            g.substitute(&subst)
        }
    };
    let witness = positive_size(&g.eval_ones())?;
    let result = raw.scale_rational(&(BigRational::one() / &witness));
    Ok(MacWilliams { result, witness })
}

/// A state-indexed matrix of local weight generating functions.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightAdjacencyMatrix {
    pub kind: WgfKind,
    pub state: Alphabet,
    pub symbol: Alphabet,
    pub rows: Vec<Symbol>,
    pub cols: Vec<Symbol>,
    pub entries: Vec<Vec<Polynomial>>,
}

fn check_order(state: Alphabet, order: &[Symbol]) -> Result<()> {
    let mut seen = vec![false; state.cardinality()];
    for s in order {
        let i = state.index_of(s)?;
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidArgument(format!("state {s} listed twice")));
        }
    }
    if seen.iter().any(|b| !b) {
        return Err(Error::InvalidArgument("state order must list every state".into()));
    }
    Ok(())
}

impl WeightAdjacencyMatrix {
    pub fn new(
        kind: WgfKind,
        state: Alphabet,
        symbol: Alphabet,
        rows: Vec<Symbol>,
        cols: Vec<Symbol>,
        entries: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if state.p() != symbol.p() {
            return Err(Error::AlphabetMismatch("state and symbol alphabets differ in p".into()));
        }
        check_order(state, &rows)?;
        check_order(state, &cols)?;
        if entries.len() != rows.len() || entries.iter().any(|r| r.len() != cols.len()) {
            return Err(Error::NonConforming(format!(
                "entries must form a {}x{} matrix",
                rows.len(),
                cols.len()
            )));
        }
        if entries.iter().flatten().any(|e| e.p() != state.p()) {
            return Err(Error::AlphabetMismatch("entry over a different prime".into()));
        }
        Ok(Self {
            kind,
            state,
            symbol,
            rows,
            cols,
            entries,
        })
    }

    /// Builds the matrix of a constraint code on `S × A × S` with the given state orders.
    pub fn from_constraint_code(
        code: &LinearCode,
        kind: WgfKind,
        rows: Vec<Symbol>,
        cols: Vec<Symbol>,
        cap: u128,
    ) -> Result<Self> {
        let prof = code.profile();
        if prof.len() != 3 || prof[0] != prof[2] {
            return Err(Error::NonConforming(
                "constraint code must live on S × A × S".into(),
            ));
        }
        let (state, symbol) = (prof[0], prof[1]);
        check_order(state, &rows)?;
        check_order(state, &cols)?;
        let p = code.p();
        let pos = |order: &[Symbol]| -> Vec<usize> {
            let mut v = vec![0; order.len()];
            for (i, s) in order.iter().enumerate() {
                v[state.index_of(s).expect("checked")] = i;
            }
            v
        };
        let (rpos, cpos) = (pos(&rows), pos(&cols));
        let mut entries = vec![vec![Polynomial::zero(p); cols.len()]; rows.len()];
        let (m, n) = (state.dim(), symbol.dim());
        let one = CycloRational::one(p);
        for w in code.enumerate(cap)? {
            let r = rpos[crate::algebra::field::index_of_coords(&w[..m], p)];
            let c = cpos[crate::algebra::field::index_of_coords(&w[m + n..], p)];
            let mono = codeword_monomial(kind, Namespace::Primal, &[symbol], &w[m..m + n]);
            entries[r][c].add_term(mono, &one);
        }
        Self::new(kind, state, symbol, rows, cols, entries)
    }

    pub fn p(&self) -> u32 {
        self.state.p()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r][c]
    }

    /// Position of the zero state among the rows.
    pub fn zero_row(&self) -> usize {
        self.rows.iter().position(Symbol::is_zero).expect("rows list every state")
    }

    pub fn zero_col(&self) -> usize {
        self.cols.iter().position(Symbol::is_zero).expect("cols list every state")
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.cols.len())
            .map(|c| (0..self.rows.len()).map(|r| self.entries[r][c].clone()).collect())
            .collect();
        Self {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            entries,
            ..self.clone()
        }
    }

    /// Applies `f` to every entry.
    pub fn map_entries(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        Self {
            entries: self.entries.iter().map(|r| r.iter().map(&f).collect()).collect(),
            ..self.clone()
        }
    }

    /// Matrix product; with `max_degree`, every entry is reduced mod `x^{max_degree+1}`.
    ///
    /// Hamming and complete products label the branch with the concatenated symbol, so the
    /// result can still be transformed. Exact names carry their own labels and keep the
    /// per-section alphabet. A truncated product is not an enumerator and should not be fed
    /// to [`macwilliams_wam`].
    pub fn mul(&self, other: &Self, max_degree: Option<u32>) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::NonConforming(
                "column states of the left factor must match row states of the right".into(),
            ));
        }
        let p = self.p();
        let mut entries = vec![vec![Polynomial::zero(p); other.cols.len()]; self.rows.len()];
        for (r, row) in self.entries.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (c, b) in other.entries[k].iter().enumerate() {
                    if b.is_zero() {
                        continue;
                    }
                    let prod = match max_degree {
                        Some(d) => a.mul_truncated(b, d),
                        None => a * b,
                    };
                    entries[r][c].add_assign(&prod);
                }
            }
        }
        let symbol = match self.kind {
            WgfKind::Exact => self.symbol,
            _ => Alphabet::over(p, self.symbol.dim() + other.symbol.dim())?,
        };
        Ok(Self {
            entries,
            cols: other.cols.clone(),
            symbol,
            ..self.clone()
        })
    }

    pub fn trace(&self) -> Result<Polynomial> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows.len(),
                cols: self.cols.len(),
            });
        }
        let mut t = Polynomial::zero(self.p());
        for i in 0..self.rows.len() {
            t.add_assign(&self.entries[i][i]);
        }
        Ok(t)
    }

    /// Sum of all entries.
    pub fn total(&self) -> Polynomial {
        let mut t = Polynomial::zero(self.p());
        for e in self.entries.iter().flatten() {
            t.add_assign(e);
        }
        t
    }

    pub fn row_sum(&self, r: usize) -> Polynomial {
        let mut t = Polynomial::zero(self.p());
        for e in &self.entries[r] {
            t.add_assign(e);
        }
        t
    }

    pub fn col_sum(&self, c: usize) -> Polynomial {
        let mut t = Polynomial::zero(self.p());
        for row in &self.entries {
            t.add_assign(&row[c]);
        }
        t
    }

    /// Renames indeterminates in every entry.
    pub fn rename(&self, f: impl Fn(&str) -> String) -> Self {
        self.map_entries(|e| e.rename(&f))
    }
}

/// `Σ_i ω^{sign·⟨ŝ_i, s_j⟩} v_j`, grouping terms by exponent to limit multiplications.
fn character_combine(p: u32, states: &[Symbol], hat: &Symbol, sign: i64, v: &[&Polynomial]) -> Polynomial {
    let mut buckets: Vec<Polynomial> = vec![Polynomial::zero(p); p as usize];
    for (s, e) in states.iter().zip(v) {
        if e.is_zero() {
            continue;
        }
        let k = (sign * dot(hat.coords(), s.coords(), p) as i64).rem_euclid(p as i64) as usize;
        buckets[k].add_assign(e);
    }
    let mut out = Polynomial::zero(p);
    for (k, b) in buckets.iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        if k == 0 {
            out.add_assign(b);
        } else {
            out.add_assign(&b.scale(&omega_pow(p, k as i64)));
        }
    }
    out
}

/// MacWilliams transform of a weight adjacency matrix:
/// `Λ̂(ŝ,ŝ') ∝ Σ_{s,s'} ω^{-⟨ŝ,s⟩} Λ(s,s')(x ← F*X) ω^{⟨ŝ',s'⟩}`.
///
/// Dual states are indexed like the primal ones. With the dual constraint code taken as
/// `{(ŝ, â, ŝ') : (ŝ, â, -ŝ') ∈ C⊥}` the result is exactly its weight adjacency matrix;
/// the witness is `|C|`, the sum of all entries at all ones.
pub fn macwilliams_wam(lam: &WeightAdjacencyMatrix) -> Result<MacWilliams<WeightAdjacencyMatrix>> {
    let p = lam.p();
    let ns = namespace_of(lam.entries.iter().flatten())?;
    let subst = change_of_indeterminates(lam.kind, ns, &[lam.symbol], p);
    let substituted: Vec<Vec<Polynomial>> = lam
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| match lam.kind {
                    WgfKind::Hamming => hamming_substitute(e, ns, lam.symbol.dim(), &subst),
                    WgfKind::Exact => {
                        let renamed = e.rename(rebase_exact);
                        check_vars(&renamed, &subst)?;
                        Ok(renamed.substitute(&subst))
                    }
                    WgfKind::Complete => {
                        check_vars(e, &subst)?;
                        Ok(e.substitute(&subst))
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let witness = positive_size(&lam.total().eval_ones())?;
    // Row transform with the conjugate kernel, then column transform with the forward one.
    let half: Vec<Vec<Polynomial>> = lam
        .rows
        .iter()
        .map(|sh| {
            (0..lam.cols.len())
                .map(|c| {
                    let col: Vec<&Polynomial> = substituted.iter().map(|r| &r[c]).collect();
                    character_combine(p, &lam.rows, sh, -1, &col)
                })
                .collect()
        })
        .collect();
    let inv = BigRational::one() / &witness;
    let entries: Vec<Vec<Polynomial>> = half
        .iter()
        .map(|row| {
            let refs: Vec<&Polynomial> = row.iter().collect();
            lam.cols
                .iter()
                .map(|sh2| character_combine(p, &lam.cols, sh2, 1, &refs).scale_rational(&inv))
                .collect()
        })
        .collect();
    let result = WeightAdjacencyMatrix::new(
        lam.kind,
        lam.state,
        lam.symbol,
        lam.rows.clone(),
        lam.cols.clone(),
        entries,
    )?;
    Ok(MacWilliams { result, witness })
}

/// Exact weight adjacency matrices describe a single section, so every position index is
/// read as position 0.
fn rebase_exact(name: &str) -> String {
    match (name.find('['), name.find("][")) {
        (Some(i), Some(j)) if i < j => format!("{}[0]{}", &name[..i], &name[j + 1..]),
        _ => name.to_string(),
    }
}

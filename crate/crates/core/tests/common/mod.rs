#![allow(dead_code)]

use nfgdual::algebra::{omega_pow, Alphabet, CycloRational, Polynomial, Symbol};
use nfgdual::convcode::{parse_d_transforms, section_from_generators, TrellisSection};
use nfgdual::nfg::{Factor, NormalFactorGraph, Realization, Variable};
use nfgdual::tensor::Tensor;
use nfgdual::LinearCode;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn code_from_labels(p: u32, dims: &[usize], rows: &[&str]) -> LinearCode {
    let profile: Vec<Alphabet> = dims.iter().map(|&d| Alphabet::over(p, d).unwrap()).collect();
    let rows: Vec<Vec<Symbol>> = rows
        .iter()
        .map(|r| {
            let toks: Vec<&str> = r.split_whitespace().collect();
            assert_eq!(toks.len(), profile.len(), "row {r:?}");
            toks.iter().zip(&profile).map(|(t, a)| a.parse_symbol(t).unwrap()).collect()
        })
        .collect();
    LinearCode::from_generators(profile, &rows).unwrap()
}

/// Parses "1 + 2x^3 + x" into a univariate polynomial in `x`.
pub fn upoly(p: u32, s: &str) -> Polynomial {
    let mut out = Polynomial::zero(p);
    for tok in s.split('+').map(str::trim).filter(|t| !t.is_empty()) {
        let (coef, rest) = match tok.find('x') {
            Some(i) => (&tok[..i], &tok[i..]),
            None => (tok, ""),
        };
        let c: i64 = if coef.is_empty() { 1 } else { coef.parse().unwrap() };
        let e: u32 = if rest.is_empty() {
            0
        } else if let Some(e) = rest.strip_prefix("x^") {
            e.parse().unwrap()
        } else {
            1
        };
        let m = nfgdual::Monomial::from_pairs([("x", e)]);
        out.add_term(m, &CycloRational::from_int(p, c));
    }
    out
}

pub fn random_coeff(rng: &mut ChaCha8Rng, p: u32) -> CycloRational {
    match rng.gen_range(0..6) {
        0 | 1 => CycloRational::zero(p),
        2 => omega_pow(p, rng.gen_range(0..p as i64)),
        _ => CycloRational::from_int(p, rng.gen_range(-2..=3)),
    }
}

fn random_alphabet(rng: &mut ChaCha8Rng, p: u32) -> Alphabet {
    let dim = match p {
        2 => rng.gen_range(1..=3),
        _ => rng.gen_range(1..=2),
    };
    Alphabet::over(p, dim).unwrap()
}

/// Random normal graph over Z_2 or Z_3 with at most four factors, three internal variables
/// and alphabets of size at most 9. Table sizes are kept small enough for brute force on
/// both the graph and its dual.
pub fn random_nfg(rng: &mut ChaCha8Rng) -> NormalFactorGraph<CycloRational> {
    loop {
        let p = *[2u32, 3].choose(rng).unwrap();
        let nf = rng.gen_range(1..=4);
        let ni = rng.gen_range(0..=3);
        let ne = rng.gen_range(0..=3);
        let mut slots: Vec<Vec<(String, Alphabet)>> = vec![Vec::new(); nf];
        let mut internals = Vec::new();
        let mut externals = Vec::new();
        for j in 0..ni {
            let a = random_alphabet(rng, p);
            let id = format!("s{j}");
            for _ in 0..2 {
                let f = rng.gen_range(0..nf);
                let pos = rng.gen_range(0..=slots[f].len());
                slots[f].insert(pos, (id.clone(), a));
            }
            internals.push(Variable::new(id, a));
        }
        for k in 0..ne {
            let a = random_alphabet(rng, p);
            let id = format!("a{k}");
            let f = rng.gen_range(0..nf);
            let pos = rng.gen_range(0..=slots[f].len());
            slots[f].insert(pos, (id.clone(), a));
            externals.push(Variable::new(id, a));
        }
        let card = |a: &Alphabet| a.cardinality() as u128;
        let ext: u128 = externals.iter().map(|v| card(&v.alphabet)).product();
        let int: u128 = internals.iter().map(|v| card(&v.alphabet)).product();
        let biggest: u128 = slots
            .iter()
            .map(|s| s.iter().map(|(_, a)| card(a)).product::<u128>())
            .max()
            .unwrap();
        if ext * int * int > 1 << 15 || biggest > 1 << 12 {
            continue;
        }
        let factors = slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                let axes: Vec<Alphabet> = s.iter().map(|(_, a)| *a).collect();
                let t = Tensor::from_fn(p, axes, 1 << 20, |_| random_coeff(rng, p)).unwrap();
                Factor::new(format!("f{i}"), s.into_iter().map(|(v, _)| v).collect(), t)
            })
            .collect();
        return NormalFactorGraph::new(p, externals, internals, factors).unwrap();
    }
}

/// Random realization without degree restrictions.
pub fn random_realization(rng: &mut ChaCha8Rng) -> Realization<CycloRational> {
    loop {
        let p = *[2u32, 3].choose(rng).unwrap();
        let nf = rng.gen_range(1..=4);
        let nv = rng.gen_range(1..=4);
        let vars: Vec<Variable> = (0..nv)
            .map(|j| {
                let a = Alphabet::over(p, rng.gen_range(1..=2)).unwrap();
                Variable::new(format!("v{j}"), a)
            })
            .collect();
        let n_ext = rng.gen_range(0..=nv.min(2));
        let mut slots: Vec<Vec<usize>> = vec![Vec::new(); nf];
        for j in 0..nv {
            for _ in 0..rng.gen_range(0..=3) {
                slots[rng.gen_range(0..nf)].push(j);
            }
        }
        let total: u128 = vars.iter().map(|v| v.alphabet.cardinality() as u128).product();
        let biggest: u128 = slots
            .iter()
            .map(|s| s.iter().map(|&j| vars[j].alphabet.cardinality() as u128).product::<u128>())
            .max()
            .unwrap();
        if total > 1 << 12 || biggest > 1 << 10 {
            continue;
        }
        let factors = slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                let axes: Vec<Alphabet> = s.iter().map(|&j| vars[j].alphabet).collect();
                let t = Tensor::from_fn(p, axes, 1 << 20, |_| random_coeff(rng, p)).unwrap();
                Factor::new(format!("f{i}"), s.iter().map(|&j| vars[j].id.clone()).collect(), t)
            })
            .collect();
        let (ext, int) = vars.split_at(n_ext);
        return Realization::new(p, ext.to_vec(), int.to_vec(), factors).unwrap();
    }
}

/// Random linear code over Z_2 or Z_3 with at most `max_scalars` flattened coordinates.
pub fn random_code(rng: &mut ChaCha8Rng, max_scalars: usize) -> LinearCode {
    let p = *[2u32, 3].choose(rng).unwrap();
    let mut profile = Vec::new();
    let mut n = 0;
    let target = rng.gen_range(1..=max_scalars);
    while n < target {
        let d = rng.gen_range(1..=(target - n).min(2));
        profile.push(Alphabet::over(p, d).unwrap());
        n += d;
    }
    let k = rng.gen_range(0..=n);
    let rows: Vec<Vec<u32>> = (0..k)
        .map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect())
        .collect();
    LinearCode::from_flat_rows(profile, &rows).unwrap()
}

pub fn upoly_matrix(p: u32, rows: &[&[&str]]) -> Vec<Vec<Polynomial>> {
    rows.iter()
        .map(|r| r.iter().map(|s| upoly(p, s)).collect())
        .collect()
}

/// The rate-1/2 binary code generated by (1 + D², 1 + D + D²).
pub fn rate_half_section() -> TrellisSection {
    let r = parse_d_transforms(2, "1+D^2, 1+D+D^2").unwrap();
    section_from_generators(2, 2, &r).unwrap()
}

/// The rate-2/3 ternary code generated by (1 + D², 2 + D, 0) and (1, 0, 2).
pub fn ternary_section() -> TrellisSection {
    let r = parse_d_transforms(3, "1+D^2, 2+D, 0; 1, 0, 2").unwrap();
    section_from_generators(3, 3, &r).unwrap()
}

pub fn section_from_text(p: u32, text: &str) -> TrellisSection {
    let r = parse_d_transforms(p, text).unwrap();
    section_from_generators(p, r[0][0].len(), &r).unwrap()
}

/// Random small trellis section: either a shift-register encoder or an arbitrary
/// constraint code on S × A × S.
pub fn random_section(rng: &mut ChaCha8Rng) -> TrellisSection {
    let p = *[2u32, 3].choose(rng).unwrap();
    let max_m = if p == 2 { 3 } else { 2 };
    if rng.gen_bool(0.5) {
        loop {
            let n = rng.gen_range(1..=if p == 2 { 3 } else { 2 });
            let k = rng.gen_range(1..=2);
            let responses: Vec<Vec<Vec<u32>>> = (0..k)
                .map(|_| {
                    let nu = rng.gen_range(0..=2);
                    (0..=nu).map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect()).collect()
                })
                .collect();
            let m: usize = responses.iter().map(|r| r.len() - 1).sum();
            if m <= max_m {
                return section_from_generators(p, n, &responses).unwrap();
            }
        }
    }
    let m = rng.gen_range(0..=max_m.min(2));
    let n = rng.gen_range(1..=2);
    let s = Alphabet::over(p, m).unwrap();
    let a = Alphabet::over(p, n).unwrap();
    let len = 2 * m + n;
    let rows: Vec<Vec<u32>> = (0..rng.gen_range(0..=len))
        .map(|_| (0..len).map(|_| rng.gen_range(0..p)).collect())
        .collect();
    TrellisSection::new(LinearCode::from_flat_rows(vec![s, a, s], &rows).unwrap(), None).unwrap()
}

/// Hamming weight enumerator of `code` counted by lincode enumeration, as a polynomial in x.
pub fn hwgf_by_enumeration(code: &LinearCode) -> Polynomial {
    let p = code.p();
    let dist = code.weight_distribution(1 << 24, nfgdual::WeightMode::Scalar).unwrap();
    let mut out = Polynomial::zero(p);
    for (d, c) in dist.iter().enumerate() {
        out.add_term(
            nfgdual::Monomial::from_pairs([("x", d as u32)]),
            &CycloRational::from_int(p, *c as i64),
        );
    }
    out
}

/// `[1,1,1,1; 1,-1,1,-1; 1,1,-1,-1; 1,-1,-1,1]`: the character matrix in state order
/// 00, 10, 01, 11.
pub fn h4() -> Vec<Vec<i64>> {
    vec![vec![1, 1, 1, 1], vec![1, -1, 1, -1], vec![1, 1, -1, -1], vec![1, -1, -1, 1]]
}

/// `c · H M H` entrywise.
pub fn sandwich(m: &[Vec<Polynomial>], c: num_rational::BigRational) -> Vec<Vec<Polynomial>> {
    let h = h4();
    (0..4)
        .map(|i| {
            (0..4)
                .map(|j| {
                    let mut acc = Polynomial::zero(2);
                    for k in 0..4 {
                        for l in 0..4 {
                            let s = h[i][k] * h[l][j];
                            acc.add_assign(&m[k][l].scale(&CycloRational::from_int(2, s)));
                        }
                    }
                    acc.scale_rational(&c)
                })
                .collect()
        })
        .collect()
}

pub fn substitute_all(m: &[Vec<Polynomial>], subst: &std::collections::BTreeMap<String, Polynomial>) -> Vec<Vec<Polynomial>> {
    m.iter().map(|r| r.iter().map(|e| e.substitute(subst)).collect()).collect()
}

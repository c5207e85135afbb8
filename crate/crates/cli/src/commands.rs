use std::io::Read;
use std::time::Instant;

use nfgdual::algebra::Coeff;
use nfgdual::convcode::{
    dual_section, free_distance_spectrum, normalized_tailbiting_spectrum, terminate, terminated_hwgf,
    termination_multiplicity, time_reverse, wam_power,
};
use nfgdual::io::{self, EntryJson, GraphJson};
use nfgdual::transform::verify_identity_suite;
use nfgdual::wgf::{macwilliams_wam, macwilliams_wgf, wgf};
use nfgdual::{
    Alphabet, Error, NormalFactorGraph, Realization, Spectrum, TerminationMode, TrellisSection,
    WeightAdjacencyMatrix, WeightMode, WgfKind,
};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::report::Report;
use crate::{Cli, CodeCmd, ConvCmd, Global, Group, Input, KindArg, ModeArg, NfgCmd, WamCmd, XformCmd};

type Res<T> = std::result::Result<T, Error>;

#[derive(Default)]
struct Outcome {
    result: Value,
    witnesses: Map<String, Value>,
    verified: Option<bool>,
    summary: Option<String>,
    table: Option<String>,
}

impl Outcome {
    fn new(result: Value) -> Self {
        Self {
            result,
            ..Self::default()
        }
    }

    fn witness(mut self, name: &str, v: Value) -> Self {
        self.witnesses.insert(name.to_string(), v);
        self
    }

    fn verified(mut self, ok: bool) -> Self {
        self.verified = Some(ok);
        self
    }

    fn summary(mut self, s: String) -> Self {
        self.summary = Some(s);
        self
    }
}

fn kind(k: KindArg) -> WgfKind {
    match k {
        KindArg::Exact => WgfKind::Exact,
        KindArg::Complete => WgfKind::Complete,
        KindArg::Hamming => WgfKind::Hamming,
    }
}

fn mode(m: ModeArg) -> TerminationMode {
    match m {
        ModeArg::Subcode => TerminationMode::Subcode,
        ModeArg::Projection => TerminationMode::Projection,
        ModeArg::Truncated => TerminationMode::Truncated,
        ModeArg::Rtruncated => TerminationMode::ReverseTruncated,
        ModeArg::Tailbiting => TerminationMode::Tailbiting,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidPrime(_) => "invalid_prime",
        Error::AlphabetMismatch(_) => "alphabet_mismatch",
        Error::CapExceeded { .. } => "cap_exceeded",
        Error::NonConforming(_) => "nonconforming",
        Error::InvalidGraph(_) => "invalid_graph",
        Error::ArityMismatch { .. } => "arity_mismatch",
        Error::NotSquare { .. } => "not_square",
        Error::ZeroStateNotUnique => "zero_state_not_unique",
        Error::InvalidArgument(_) => "invalid_argument",
        Error::Parse(_) => "parse",
    }
}

fn read_input(input: &Input) -> Res<Vec<u8>> {
    let mut buf = Vec::new();
    match input.input.as_deref() {
        None | Some("-") => std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| Error::Parse(format!("reading standard input: {e}")))?,
        Some(path) => {
            buf = std::fs::read(path).map_err(|e| Error::Parse(format!("reading {path}: {e}")))?;
            buf.len()
        }
    };
    Ok(buf)
}

fn parse_json(bytes: &[u8]) -> Res<Value> {
    serde_json::from_slice(bytes).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

fn apply_state_order(section: TrellisSection, g: &Global) -> Res<TrellisSection> {
    match &g.state_order {
        None => Ok(section),
        Some(labels) => {
            let state: Alphabet = section.state();
            let order = labels.iter().map(|l| state.parse_symbol(l.trim())).collect::<Res<Vec<_>>>()?;
            section.with_state_order(order)
        }
    }
}

fn section_of(v: &Value, g: &Global) -> Res<TrellisSection> {
    apply_state_order(io::section_from_json(v)?, g)
}

fn reorder_wam(w: WeightAdjacencyMatrix, g: &Global) -> Res<WeightAdjacencyMatrix> {
    let Some(labels) = &g.state_order else { return Ok(w) };
    let order = labels.iter().map(|l| w.state.parse_symbol(l.trim())).collect::<Res<Vec<_>>>()?;
    let pos = |list: &[nfgdual::Symbol], s: &nfgdual::Symbol| list.iter().position(|x| x == s);
    let mut entries = Vec::with_capacity(order.len());
    for r in &order {
        let ri = pos(&w.rows, r).ok_or_else(|| Error::InvalidArgument(format!("unknown state {r}")))?;
        let mut row = Vec::with_capacity(order.len());
        for c in &order {
            let ci = pos(&w.cols, c).ok_or_else(|| Error::InvalidArgument(format!("unknown state {c}")))?;
            row.push(w.entries[ri][ci].clone());
        }
        entries.push(row);
    }
    WeightAdjacencyMatrix::new(w.kind, w.state, w.symbol, order.clone(), order, entries)
}

fn wam_summary(w: &WeightAdjacencyMatrix) -> String {
    let cells: Vec<Vec<String>> = w.entries.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1).max(1);
    let lw = w.rows.iter().map(|s| s.label().len()).max().unwrap_or(0);
    let mut out = format!("{:lw$}  ", "");
    for c in &w.cols {
        out.push_str(&format!("{:>width$}  ", c.label()));
    }
    out.push('\n');
    for (r, row) in w.rows.iter().zip(&cells) {
        out.push_str(&format!("{:lw$}  ", r.label()));
        for c in row {
            out.push_str(&format!("{c:>width$}  "));
        }
        out.push('\n');
    }
    out.lines().map(str::trim_end).collect::<Vec<_>>().join("\n")
}

fn spectrum_table(s: &Spectrum) -> String {
    let mut out = String::from("weight,count\n");
    for (d, c) in &s.coeffs {
        out.push_str(&format!("{d},{c}\n"));
    }
    out
}

fn normal<T: Coeff>(r: Realization<T>, normalize: bool) -> Res<NormalFactorGraph<T>> {
    if normalize {
        r.normalize()
    } else {
        NormalFactorGraph::new(r.p(), r.externals().to_vec(), r.internals().to_vec(), r.factors().to_vec())
    }
}

fn nfg_eval<T: EntryJson>(r: Realization<T>, normalize: bool, cap: u128) -> Res<Outcome> {
    let z = normal(r, normalize)?.partition_function(cap)?;
    Ok(Outcome::new(io::partition_function_to_json(&z)))
}

fn nfg_dualize<T: EntryJson>(r: Realization<T>, normalize: bool) -> Res<Outcome> {
    let d = normal(r, normalize)?.dualize()?;
    Ok(Outcome::new(io::nfg_to_json(&d)))
}

fn nfg_verify<T: EntryJson>(r: Realization<T>, normalize: bool, cap: u128) -> Res<Outcome> {
    let rep = normal(r, normalize)?.verify_duality(cap)?;
    let result = json!({
        "primal": io::partition_function_to_json(&rep.primal),
        "transformed": io::tensor_to_json(&rep.transformed),
        "dual": io::partition_function_to_json(&rep.dual),
    });
    Ok(Outcome::new(result)
        .witness("expected", io::rational_to_json(&rep.expected_witness))
        .witness("observed", rep.observed_witness.as_ref().map_or(Value::Null, io::rational_to_json))
        .verified(rep.holds))
}

fn code_cmd(cmd: &CodeCmd, g: &Global) -> Res<(Vec<u8>, Outcome)> {
    let input = match cmd {
        CodeCmd::Dual(i) | CodeCmd::Weights(i) => i,
        CodeCmd::Wgf { input, .. } | CodeCmd::Macwilliams { input, .. } => input,
    };
    let bytes = read_input(input)?;
    let code = io::code_from_json(&parse_json(&bytes)?)?;
    let out = match cmd {
        CodeCmd::Dual(_) => {
            let d = code.dual();
            Outcome::new(io::code_to_json(&d)).summary(d.to_string())
        }
        CodeCmd::Wgf { kind: k, .. } => {
            let w = wgf(&code, kind(*k), g.cap)?;
            Outcome::new(io::poly_to_json(&w)).summary(w.to_string())
        }
        CodeCmd::Weights(_) => {
            let dist = code.weight_distribution(g.cap, WeightMode::Scalar)?;
            let table = std::iter::once("weight,count".to_string())
                .chain(dist.iter().enumerate().map(|(d, c)| format!("{d},{c}")))
                .collect::<Vec<_>>()
                .join("\n")
                + "\n";
            let mut o = Outcome::new(json!(dist.iter().map(|c| c.to_string()).collect::<Vec<_>>()));
            o.table = Some(table);
            o
        }
        CodeCmd::Macwilliams { kind: k, .. } => {
            let k = kind(*k);
            let w = wgf(&code, k, g.cap)?;
            let mw = macwilliams_wgf(&w, k, code.profile())?;
            let expect = wgf(&code.dual(), k, g.cap)?;
            let ok = mw.result.rename(|n| n.replacen('X', "x", 1).replacen('Y', "y", 1)) == expect;
            Outcome::new(io::poly_to_json(&mw.result))
                .summary(mw.result.to_string())
                .witness("alpha", io::rational_to_json(&mw.witness))
                .verified(ok)
        }
    };
    Ok((bytes, out))
}

fn nfg_cmd(cmd: &NfgCmd, g: &Global) -> Res<(Vec<u8>, Outcome)> {
    let (input, normalize) = match cmd {
        NfgCmd::Eval { input, normalize } | NfgCmd::Dualize { input, normalize } | NfgCmd::VerifyDuality { input, normalize } => {
            (input, *normalize)
        }
    };
    let bytes = read_input(input)?;
    let graph = io::realization_from_json(&parse_json(&bytes)?)?;
    let out = match (cmd, graph) {
        (NfgCmd::Eval { .. }, GraphJson::Scalar(r)) => nfg_eval(r, normalize, g.cap)?,
        (NfgCmd::Eval { .. }, GraphJson::Poly(r)) => nfg_eval(r, normalize, g.cap)?,
        (NfgCmd::Dualize { .. }, GraphJson::Scalar(r)) => nfg_dualize(r, normalize)?,
        (NfgCmd::Dualize { .. }, GraphJson::Poly(r)) => nfg_dualize(r, normalize)?,
        (NfgCmd::VerifyDuality { .. }, GraphJson::Scalar(r)) => nfg_verify(r, normalize, g.cap)?,
        (NfgCmd::VerifyDuality { .. }, GraphJson::Poly(r)) => nfg_verify(r, normalize, g.cap)?,
    };
    Ok((bytes, out))
}

fn wam_outcome(w: &WeightAdjacencyMatrix) -> Outcome {
    Outcome::new(io::wam_to_json(w)).summary(wam_summary(w))
}

fn wam_cmd(cmd: &WamCmd, g: &Global) -> Res<(Vec<u8>, Outcome)> {
    let input = match cmd {
        WamCmd::Compute { input, .. } | WamCmd::Power { input, .. } | WamCmd::Macwilliams { input, .. } => input,
    };
    let bytes = read_input(input)?;
    let v = parse_json(&bytes)?;
    let out = match cmd {
        WamCmd::Compute { kind: k, .. } => wam_outcome(&section_of(&v, g)?.wam(kind(*k))?),
        WamCmd::Power { n, dmax, .. } => {
            let w = reorder_wam(io::wam_from_json(&v)?, g)?;
            wam_outcome(&wam_power(&w, *n, *dmax)?)
        }
        WamCmd::Macwilliams { kind: k, .. } => {
            let w = reorder_wam(io::wam_from_json(&v)?, g)?;
            if let Some(k) = k {
                if kind(*k) != w.kind {
                    return Err(Error::InvalidArgument(format!(
                        "--kind {} does not match the matrix kind {}",
                        kind(*k),
                        w.kind
                    )));
                }
            }
            let mw = macwilliams_wam(&w)?;
            wam_outcome(&mw.result).witness("alpha", io::rational_to_json(&mw.witness))
        }
    };
    Ok((bytes, out))
}

fn conv_cmd(cmd: &ConvCmd, g: &Global) -> Res<(Vec<u8>, Outcome)> {
    let input = match cmd {
        ConvCmd::Section(i) | ConvCmd::Dual(i) | ConvCmd::Reverse(i) => i,
        ConvCmd::Terminate { input, .. } | ConvCmd::Spectrum { input, .. } | ConvCmd::Normalized { input, .. } => input,
    };
    let bytes = read_input(input)?;
    let sec = section_of(&parse_json(&bytes)?, g)?;
    let out = match cmd {
        ConvCmd::Section(_) => Outcome::new(io::section_to_json(&sec)).summary(sec.to_string()),
        ConvCmd::Dual(_) => {
            let d = dual_section(&sec)?;
            Outcome::new(io::section_to_json(&d)).summary(d.to_string())
        }
        ConvCmd::Reverse(_) => {
            let d = time_reverse(&sec)?;
            Outcome::new(io::section_to_json(&d)).summary(d.to_string())
        }
        ConvCmd::Terminate { mode: m, n, verify, .. } => {
            let m = mode(*m);
            let code = terminate(&sec, *n, m)?;
            let lam = sec.wam(WgfKind::Hamming)?;
            let hw = terminated_hwgf(&wam_power(&lam, *n as u32, None)?, m)?;
            let mult = termination_multiplicity(&sec, *n, m)?;
            let mut o = Outcome::new(json!({"code": io::code_to_json(&code), "hwgf": io::poly_to_json(&hw)}))
                .summary(format!("{code}\nenumerator: {hw}"))
                .witness("state_sequences_per_codeword", io::rational_to_json(&mult));
            if *verify {
                let direct = wgf(&code, WgfKind::Hamming, g.cap)?;
                o = o.verified(direct.scale_rational(&mult) == hw);
            }
            o
        }
        ConvCmd::Spectrum { dmax, .. } => {
            let s = free_distance_spectrum(&sec, *dmax)?;
            let mut result = io::spectrum_to_json(&s);
            result["free_distance"] = json!(s.free_distance());
            let mut o = Outcome::new(result).summary(s.to_string());
            o.table = Some(spectrum_table(&s));
            o
        }
        ConvCmd::Normalized { n, dmax, .. } => {
            let s = normalized_tailbiting_spectrum(&sec, *n, *dmax)?;
            let mut o = Outcome::new(io::spectrum_to_json(&s)).summary(s.to_string());
            o.table = Some(spectrum_table(&s));
            o
        }
    };
    Ok((bytes, out))
}

fn xform_cmd(cmd: &XformCmd, g: &Global) -> Res<(Vec<u8>, Outcome)> {
    let XformCmd::VerifyIdentities { p, dim } = cmd;
    let a = Alphabet::over(*p, *dim)?;
    let rep = verify_identity_suite(a, g.cap)?;
    let checks: Vec<Value> = rep
        .checks
        .iter()
        .map(|c| json!({"name": c.name, "holds": c.holds, "witness": c.witness.as_ref().map(io::rational_to_json)}))
        .collect();
    let summary = rep
        .checks
        .iter()
        .map(|c| {
            let w = c.witness.as_ref().map(|w| format!(" (scale {w})")).unwrap_or_default();
            format!("{:<40} {}{w}", c.name, if c.holds { "holds" } else { "FAILS" })
        })
        .collect::<Vec<_>>()
        .join("\n");
    let mut o = Outcome::new(json!({"p": p, "dim": dim, "checks": checks})).summary(summary);
    for c in &rep.checks {
        if let Some(w) = &c.witness {
            o = o.witness(c.name, io::rational_to_json(w));
        }
    }
    let args = format!("xform verify-identities p={p} dim={dim}");
    Ok((args.into_bytes(), o.verified(rep.all_hold())))
}

fn command_name(g: &Group) -> String {
    let s = match g {
        Group::Code(c) => match c {
            CodeCmd::Dual(_) => "code dual",
            CodeCmd::Wgf { .. } => "code wgf",
            CodeCmd::Weights(_) => "code weights",
            CodeCmd::Macwilliams { .. } => "code macwilliams",
        },
        Group::Nfg(c) => match c {
            NfgCmd::Eval { .. } => "nfg eval",
            NfgCmd::Dualize { .. } => "nfg dualize",
            NfgCmd::VerifyDuality { .. } => "nfg verify-duality",
        },
        Group::Wam(c) => match c {
            WamCmd::Compute { .. } => "wam compute",
            WamCmd::Power { .. } => "wam power",
            WamCmd::Macwilliams { .. } => "wam macwilliams",
        },
        Group::Conv(c) => match c {
            ConvCmd::Section(_) => "conv section",
            ConvCmd::Dual(_) => "conv dual",
            ConvCmd::Reverse(_) => "conv reverse",
            ConvCmd::Terminate { .. } => "conv terminate",
            ConvCmd::Spectrum { .. } => "conv spectrum",
            ConvCmd::Normalized { .. } => "conv normalized",
        },
        Group::Xform(XformCmd::VerifyIdentities { .. }) => "xform verify-identities",
    };
    s.to_string()
}

/// Runs one command, writes its report to standard output, and returns the exit code.
pub fn run(cli: Cli) -> u8 {
    let start = Instant::now();
    let name = command_name(&cli.group);
    let g = &cli.global;
    let res = match &cli.group {
        Group::Code(c) => code_cmd(c, g),
        Group::Nfg(c) => nfg_cmd(c, g),
        Group::Wam(c) => wam_cmd(c, g),
        Group::Conv(c) => conv_cmd(c, g),
        Group::Xform(c) => xform_cmd(c, g),
    };
    match res {
        Ok((bytes, out)) => {
            let report = Report {
                command: name,
                inputs_digest: hex::encode(Sha256::digest(&bytes)),
                result: out.result,
                witnesses: out.witnesses,
                verified: out.verified,
                wall_time_ms: start.elapsed().as_millis(),
                summary: out.summary,
                table: out.table,
            };
            println!("{}", report.render(g.format));
            match report.verified {
                Some(false) => 2,
                _ => 0,
            }
        }
        Err(e) => {
            let v = json!({"command": name, "error": {"kind": error_kind(&e), "message": e.to_string()}});
            println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            eprintln!("error: {e}");
            1
        }
    }
}


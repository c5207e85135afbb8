mod common;

use common::*;
use nfgdual::convcode::*;
use nfgdual::wgf::{WeightAdjacencyMatrix, WgfKind};
use nfgdual::{LinearCode, Polynomial};
use proptest::prelude::*;

fn rate_half_hwam() -> WeightAdjacencyMatrix {
    rate_half_section().wam(WgfKind::Hamming).unwrap()
}

#[test]
fn rate_half_section_rows() {
    let sec = rate_half_section();
    let expect = code_from_labels(2, &[2, 2, 2], &["00 11 10", "10 01 01", "01 11 00"]);
    assert_eq!(sec.code(), &expect);
    let labels: Vec<String> = sec.state_order().iter().map(|s| s.label()).collect();
    assert_eq!(labels, ["00", "10", "01", "11"]);
}

#[test]
fn ternary_section_rows() {
    let sec = ternary_section();
    let expect = code_from_labels(
        3,
        &[2, 3, 2],
        &["00 120 10", "10 010 01", "01 100 00", "00 102 00"],
    );
    assert_eq!(sec.code(), &expect);
}

#[test]
fn shearer_mceliece_generators() {
    let c1 = section_from_text(2, "1, 1+D, D");
    assert_eq!(c1.code(), &code_from_labels(2, &[1, 3, 1], &["0 110 1", "1 011 0"]));
    let lam = c1.wam(WgfKind::Hamming).unwrap();
    assert_eq!(lam.entries, upoly_matrix(2, &[&["1", "x^2"], &["x^2", "x^2"]]));
    let c2 = section_from_text(2, "D, D, 1+D");
    let lam = c2.wam(WgfKind::Hamming).unwrap();
    assert_eq!(lam.entries, upoly_matrix(2, &[&["1", "x"], &["x^3", "x^2"]]));
}

#[test]
fn powers_match_reference_tables() {
    let lam = rate_half_hwam();
    assert_eq!(wam_power(&lam, 1, None).unwrap(), lam);
    let l2 = wam_power(&lam, 2, None).unwrap();
    assert_eq!(
        l2.entries,
        upoly_matrix(
            2,
            &[
                &["1", "x^2", "x^3", "x^3"],
                &["x^3", "x", "x^2", "x^2"],
                &["x^2", "x^4", "x", "x"],
                &["x^3", "x", "x^2", "x^2"],
            ]
        )
    );
    let l4 = wam_power(&lam, 4, None).unwrap();
    assert_eq!(
        l4.entries,
        upoly_matrix(
            2,
            &[
                &["1 + 2x^5 + x^6", "x^2 + x^3 + x^4 + x^7", "x^3 + 2x^4 + x^5", "x^3 + 2x^4 + x^5"],
                &["x^3 + 2x^4 + x^5", "x^2 + x^3 + x^5 + x^6", "2x^3 + x^4 + x^6", "2x^3 + x^4 + x^6"],
                &["x^2 + x^3 + x^4 + x^7", "x^2 + x^4 + 2x^5", "x^2 + x^3 + x^5 + x^6", "x^2 + x^3 + x^5 + x^6"],
                &["x^3 + 2x^4 + x^5", "x^2 + x^3 + x^5 + x^6", "2x^3 + x^4 + x^6", "2x^3 + x^4 + x^6"],
            ]
        )
    );
    assert_eq!(
        terminated_hwgf(&l4, TerminationMode::Tailbiting).unwrap(),
        upoly(2, "1 + 2x^2 + 4x^3 + x^4 + 4x^5 + 4x^6")
    );
}

#[test]
fn sixteen_sections_mod_x8() {
    let l16 = wam_power(&rate_half_hwam(), 16, Some(7)).unwrap();
    let row0 = upoly(2, "1 + 14x^5 + 25x^6 + 44x^7");
    let a = upoly(2, "x^2 + x^3 + 2x^4 + 4x^5 + 8x^6 + 29x^7");
    let b = upoly(2, "x^3 + 2x^4 + 4x^5 + 8x^6 + 16x^7");
    assert_eq!(l16.entries[0][0], row0);
    assert_eq!(l16.entries[0][1], a);
    assert_eq!(l16.entries[0][2], b);
    assert_eq!(l16.entries[2][0], a);
    assert_eq!(
        l16.trace().unwrap(),
        upoly(2, "1 + 16x^5 + 32x^6 + 64x^7")
    );
    // Full product, then truncation, agrees with truncated arithmetic.
    let full = wam_power(&rate_half_hwam(), 16, None).unwrap();
    assert_eq!(full.map_entries(|e| e.truncate(7)), l16);
}

#[test]
fn free_and_normalized_spectra() {
    let sec = rate_half_section();
    let free = free_distance_spectrum(&sec, 7).unwrap();
    assert_eq!(free.to_string(), "x^5 + 2x^6 + 4x^7");
    assert_eq!(free.free_distance(), Some(5));
    let norm = normalized_tailbiting_spectrum(&sec, 16, 7).unwrap();
    assert!(norm.same_counts(&free));
    let short = normalized_tailbiting_spectrum(&sec, 4, 7).unwrap();
    assert!(!short.same_counts(&free));
    assert_eq!(short.free_distance(), Some(2));
    assert!(free_distance_spectrum(&sec, 0).is_err());
}

#[test]
fn free_spectrum_by_path_enumeration() {
    // Depth-first enumeration of first-return paths, pruned at the weight bound.
    let sec = rate_half_section();
    let lam = sec.wam(WgfKind::Hamming).unwrap();
    let dmax = 9u32;
    let mut counts = vec![0i64; dmax as usize + 1];
    fn walk(lam: &WeightAdjacencyMatrix, s: usize, w: u32, dmax: u32, counts: &mut [i64]) {
        for (c, e) in lam.entries[s].iter().enumerate() {
            for (m, coef) in e.terms() {
                let d = w + m.total_degree();
                if d > dmax {
                    continue;
                }
                let k: i64 = coef.to_string().parse().unwrap();
                for _ in 0..k {
                    if c == 0 {
                        counts[d as usize] += 1;
                    } else {
                        walk(lam, c, d, dmax, counts);
                    }
                }
            }
        }
    }
    for (c, e) in lam.entries[0].iter().enumerate().skip(1) {
        for (m, _) in e.terms() {
            walk(&lam, c, m.total_degree(), dmax, &mut counts);
        }
    }
    let spec = free_distance_spectrum(&sec, dmax).unwrap();
    for d in 1..=dmax {
        assert_eq!(spec.get(d), num_rational::BigRational::from_integer(counts[d as usize].into()), "d={d}");
    }
}

#[test]
fn termination_catalog() {
    let sec = rate_half_section();
    let dual = dual_section(&sec).unwrap();
    let d = [2, 2, 2, 2];
    let check = |code: LinearCode, rows: &[&str]| assert_eq!(code, code_from_labels(2, &d, rows));
    check(terminate(&sec, 4, TerminationMode::Subcode).unwrap(), &["11 01 11 00", "00 11 01 11"]);
    check(
        terminate(&dual, 4, TerminationMode::Projection).unwrap(),
        &["11 00 00 00", "10 11 00 00", "11 10 11 00", "00 11 10 11", "00 00 11 10", "00 00 00 11"],
    );
    check(
        terminate(&sec, 4, TerminationMode::Truncated).unwrap(),
        &["11 01 11 00", "00 11 01 11", "00 00 11 01", "00 00 00 11"],
    );
    check(
        terminate(&dual, 4, TerminationMode::ReverseTruncated).unwrap(),
        &["11 00 00 00", "10 11 00 00", "11 10 11 00", "00 11 10 11"],
    );
    check(
        terminate(&sec, 4, TerminationMode::Tailbiting).unwrap(),
        &["11 01 11 00", "00 11 01 11", "11 00 11 01", "01 11 00 11"],
    );
    check(
        terminate(&dual, 4, TerminationMode::Tailbiting).unwrap(),
        &["11 10 11 00", "00 11 10 11", "11 00 11 10", "10 11 00 11"],
    );
}

#[test]
fn rate_half_dual_section_and_reversal() {
    let sec = rate_half_section();
    let dual = dual_section(&sec).unwrap();
    assert_eq!(dual.code(), &code_from_labels(2, &[2, 2, 2], &["00 11 01", "01 10 10", "10 11 00"]));
    // The dual is generated by (1 + D + D², 1 + D²), and so is its time reversal.
    let target = section_from_text(2, "1+D+D^2, 1+D^2");
    let rev = time_reverse(&dual).unwrap();
    for n in 1..=6 {
        for mode in TerminationMode::ALL {
            assert_eq!(terminate(&dual, n, mode).unwrap(), terminate(&target, n, mode).unwrap(), "N={n} {mode}");
            assert_eq!(terminate(&rev, n, mode).unwrap(), terminate(&target, n, mode).unwrap(), "N={n} {mode}");
        }
    }
    assert_eq!(time_reverse(&rev).unwrap(), dual);
}

#[test]
fn ternary_dual_section_and_reversal() {
    let sec = ternary_section();
    let dual = dual_section(&sec).unwrap();
    let reference = code_from_labels(3, &[2, 3, 2], &["00 010 12", "21 202 11", "22 111 00"]);
    // These generators span C⊥ itself; the dual section negates the next state.
    assert_eq!(sec.code().dual(), reference);
    let negated = LinearCode::from_flat_rows(
        reference.profile().to_vec(),
        &reference
            .basis()
            .iter()
            .map(|r| {
                let mut r = r.clone();
                for v in &mut r[5..] {
                    *v = (3 - *v) % 3;
                }
                r
            })
            .collect::<Vec<_>>(),
    )
    .unwrap();
    assert_eq!(dual.code(), &negated);
    let rev = time_reverse(&dual).unwrap();
    let target = section_from_text(3, "1+2D, 1+D^2, 1+2D");
    for n in 1..=5 {
        for mode in TerminationMode::ALL {
            assert_eq!(terminate(&rev, n, mode).unwrap(), terminate(&target, n, mode).unwrap(), "N={n} {mode}");
        }
    }
}

#[test]
fn tailbiting_minimum_distance() {
    let sec = rate_half_section();
    let dual = dual_section(&sec).unwrap();
    for (n, d) in [(4, 2), (10, 5)] {
        for s in [&sec, &dual] {
            let code = terminate(s, n, TerminationMode::Tailbiting).unwrap();
            assert_eq!(code.minimum_distance(1 << 24).unwrap(), Some(d), "N={n}");
        }
    }
}

#[test]
fn tailbiting_self_dual_enumerator() {
    let sec = rate_half_section();
    let g = terminated_hwgf(&wam_power(&rate_half_hwam(), 4, None).unwrap(), TerminationMode::Tailbiting).unwrap();
    let prof = vec![sec.symbol(); 4];
    let mw = nfgdual::wgf::macwilliams_wgf(&g, WgfKind::Hamming, &prof).unwrap();
    assert_eq!(mw.result.rename(|_| "x".into()), g);
    assert_eq!(mw.witness, num_rational::BigRational::from_integer(16.into()));
    let dual_lam = dual_section(&sec).unwrap().wam(WgfKind::Hamming).unwrap();
    let dual_g = terminated_hwgf(&wam_power(&dual_lam, 4, None).unwrap(), TerminationMode::Tailbiting).unwrap();
    assert_eq!(dual_g, g);
}

#[test]
fn shearer_mceliece_pair() {
    let c1 = section_from_text(2, "1, 1+D, D");
    let c2 = section_from_text(2, "D, D, 1+D");
    let (l1, l2) = (c1.wam(WgfKind::Hamming).unwrap(), c2.wam(WgfKind::Hamming).unwrap());
    let d1 = dual_section(&c1).unwrap().wam(WgfKind::Hamming).unwrap();
    let d2 = dual_section(&c2).unwrap().wam(WgfKind::Hamming).unwrap();
    for n in 1..=12 {
        let (p1, p2) = (wam_power(&l1, n, None).unwrap(), wam_power(&l2, n, None).unwrap());
        for mode in [TerminationMode::Subcode, TerminationMode::Tailbiting] {
            assert_eq!(terminated_hwgf(&p1, mode).unwrap(), terminated_hwgf(&p2, mode).unwrap());
        }
        let (q1, q2) = (wam_power(&d1, n, None).unwrap(), wam_power(&d2, n, None).unwrap());
        assert_eq!(
            terminated_hwgf(&q1, TerminationMode::Tailbiting).unwrap(),
            terminated_hwgf(&q2, TerminationMode::Tailbiting).unwrap()
        );
        assert_eq!(
            normalized_tailbiting_spectrum(&c1, n, 3 * n).unwrap(),
            normalized_tailbiting_spectrum(&c2, n, 3 * n).unwrap()
        );
    }
    assert_eq!(terminated_hwgf(&l1, TerminationMode::Projection).unwrap(), upoly(2, "1 + 3x^2"));
    assert_eq!(terminated_hwgf(&l2, TerminationMode::Projection).unwrap(), upoly(2, "1 + x + x^2 + x^3"));
    assert_eq!(free_distance_spectrum(&c1, 12).unwrap(), free_distance_spectrum(&c2, 12).unwrap());
    let f1 = free_distance_spectrum(&dual_section(&c1).unwrap(), 12).unwrap();
    let f2 = free_distance_spectrum(&dual_section(&c2).unwrap(), 12).unwrap();
    assert_ne!(f1, f2);
}

#[test]
fn wam_chain_graph_is_the_power() {
    let lam = rate_half_hwam();
    for n in 1..=4 {
        let g = wam_chain_nfg(&lam, n).unwrap();
        let z = g.partition_function_elimination(None, 1 << 20).unwrap();
        let pw = wam_power(&lam, n as u32, None).unwrap();
        // Axes are (s0, sN) in alphabet order, which is also the section's state order.
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(z.table.get(&[r, c]), pw.get(r, c));
            }
        }
        let frag = g
            .contract_fragment(&(0..n).map(|t| format!("L{t}")).collect::<Vec<_>>().iter().map(String::as_str).collect::<Vec<_>>(), 1 << 20)
            .unwrap();
        assert_eq!(frag.table, z.table);
    }
}

#[test]
fn termination_graph_is_the_code_indicator() {
    let sec = rate_half_section();
    for mode in TerminationMode::ALL {
        for n in 1..=3 {
            let g = termination_nfg(&sec, n, mode).unwrap();
            let z = g.partition_function(1 << 20).unwrap();
            let code = terminate(&sec, n, mode).unwrap();
            let mult = termination_multiplicity(&sec, n, mode).unwrap();
            let one = nfgdual::CycloRational::one(2);
            let mult = nfgdual::CycloRational::from_rational(2, mult);
            let alph = sec.symbol();
            let axes = vec![alph; n];
            let expect = nfgdual::tensor::Tensor::from_fn(2, axes, 1 << 20, |s| {
                let w: Vec<u32> = s.iter().flat_map(|x| x.coords().to_vec()).collect();
                if code.contains(&w) {
                    &mult * &one
                } else {
                    nfgdual::CycloRational::zero(2)
                }
            })
            .unwrap();
            assert_eq!(z.table, expect, "{mode} N={n}");
        }
    }
}

fn hwgf_of(code: &LinearCode) -> Polynomial {
    hwgf_by_enumeration(code)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn extraction_rules_match_enumeration(seed in any::<u64>(), n in 1usize..=5) {
        let mut r = rng(seed);
        let sec = random_section(&mut r);
        let lam = sec.wam(WgfKind::Hamming).unwrap();
        let pw = wam_power(&lam, n as u32, None).unwrap();
        for mode in TerminationMode::ALL {
            let code = terminate(&sec, n, mode).unwrap();
            let mult = termination_multiplicity(&sec, n, mode).unwrap();
            prop_assert_eq!(
                terminated_hwgf(&pw, mode).unwrap(),
                hwgf_of(&code).scale_rational(&mult)
            );
        }
    }

    #[test]
    fn termination_duality(seed in any::<u64>(), n in 1usize..=5) {
        let mut r = rng(seed);
        let sec = random_section(&mut r);
        let dual = dual_section(&sec).unwrap();
        for mode in TerminationMode::ALL {
            prop_assert_eq!(
                terminate(&sec, n, mode).unwrap().dual(),
                terminate(&dual, n, mode.dual()).unwrap(),
                "{}", mode
            );
        }
    }

    #[test]
    fn reversal_and_dual_are_involutions(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sec = random_section(&mut r);
        prop_assert_eq!(time_reverse(&time_reverse(&sec).unwrap()).unwrap(), sec.clone());
        prop_assert_eq!(dual_section(&dual_section(&sec).unwrap()).unwrap(), sec);
    }

    #[test]
    fn truncated_and_exact_powers_agree(seed in any::<u64>(), n in 1u32..=6, d in 1u32..=6) {
        let mut r = rng(seed);
        let lam = random_section(&mut r).wam(WgfKind::Hamming).unwrap();
        let full = wam_power(&lam, n, None).unwrap();
        prop_assert_eq!(full.map_entries(|e| e.truncate(d)), wam_power(&lam, n, Some(d)).unwrap());
    }
}

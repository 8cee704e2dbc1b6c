use bcolor::cocluster::{
    cocluster_decomposition, enumerate_signatures, is_signature, solve_cocluster, CoclusterCaps, SetType, Signature,
    SignatureMode,
};
use bcolor::gen::{random_cocluster, rng};
use bcolor::reference::brute_force_b_coloring;
use bcolor::{verify_b_coloring, Graph};
use rand::Rng;

#[test]
fn cocluster_matches_brute_force() {
    let mut r = rng(2024);
    let mut yes = 0;
    for _ in 0..150 {
        let parts = r.gen_range(1..=4);
        let s = r.gen_range(0..=2);
        let g = random_cocluster(parts, 3, s, &mut r);
        if g.n() > 11 {
            continue;
        }
        for k in 1..=g.n() {
            let want = brute_force_b_coloring(&g, k, 16).unwrap();
            let got = solve_cocluster(&g, k, CoclusterCaps::default()).unwrap();
            assert_eq!(want.is_some(), got.is_some(), "k={k}\n{}", g.to_text());
            if let Some(c) = got {
                assert!(verify_b_coloring(&g, &c, k).is_b_coloring);
                yes += 1;
            }
        }
    }
    assert!(yes > 100);
}

/// Raw tuples for `|S| = 1`, filtered by the signature definition.
fn raw_signatures(g: &Graph, k: usize) -> Vec<Signature> {
    let dec = cocluster_decomposition(g, k, 4).unwrap();
    assert_eq!(dec.s.len(), 1);
    let p = dec.p;
    let cap = p + 1;
    // every map from the two vertex-types {0, 1} to counts in 0..=cap
    let mut all_types = Vec::new();
    for a in 0..=cap {
        for b in 0..=cap {
            let t: Vec<(u32, usize)> = [(0u32, a), (1u32, b)].into_iter().filter(|e| e.1 > 0).collect();
            all_types.push(SetType(t));
        }
    }
    let families: Vec<Vec<u32>> = vec![vec![], vec![0], vec![1], vec![0, 1]];
    let mut out = Vec::new();
    for q in 0..=p {
        let taus: Vec<Vec<SetType>> = if q == 0 { vec![vec![]] } else { all_types.iter().map(|t| vec![t.clone()]).collect() };
        for tau in taus {
            for lambda in 0..=q {
                for fam in &families {
                    let sig = Signature { chi: vec![1], q, tau: tau.clone(), lambda: vec![lambda], xi: vec![fam.clone()] };
                    if is_signature(g, &dec, &sig) {
                        out.push(sig);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn signature_enumeration_matches_definition() {
    let mut r = rng(5);
    for _ in 0..30 {
        let g = random_cocluster(r.gen_range(1..=3), 3, 1, &mut r);
        let dec = cocluster_decomposition(&g, 2, 4).unwrap();
        if dec.s.len() != 1 {
            continue;
        }
        let mut want = raw_signatures(&g, 2);
        let mut got = enumerate_signatures(&g, &dec, SignatureMode::All);
        want.sort_by_key(|s| format!("{s:?}"));
        got.sort_by_key(|s| format!("{s:?}"));
        assert_eq!(want, got);
        for s in enumerate_signatures(&g, &dec, SignatureMode::Canonical) {
            assert!(is_signature(&g, &dec, &s));
        }
    }
}

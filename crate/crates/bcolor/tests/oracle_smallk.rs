use bcolor::gen::{random_graph, rng};
use bcolor::reference::brute_force_b_coloring;
use bcolor::smallk::{solve_twdp, td_forest, DEFAULT_STATE_BUDGET};
use bcolor::verify_b_coloring;
use rand::Rng;

#[test]
fn twdp_matches_brute_force_on_random_graphs() {
    let mut r = rng(0x5eed);
    for _ in 0..150 {
        let n = r.gen_range(1..=9);
        let p = r.gen_range(0.1..0.7);
        let g = random_graph(n, p, &mut r);
        let td = td_forest(&g);
        td.validate(&g).unwrap();
        for k in 1..=n {
            let a = brute_force_b_coloring(&g, k, 16).unwrap();
            let b = solve_twdp(&g, k, &td, DEFAULT_STATE_BUDGET).unwrap();
            assert_eq!(a.is_some(), b.is_some(), "n={n} k={k} graph:\n{}", g.to_text());
            if let Some(w) = b {
                assert!(verify_b_coloring(&g, &w, k).is_b_coloring);
            }
        }
    }
}

mod common;

use common::random_small_env;
use roadmap_core::metrics::evaluate;
use roadmap_core::pipeline::{check_invariants, generate, GenerateConfig, InvariantSet};
use roadmap_core::smooth::{distance_to_polyline, smooth_roadmap, Smoothing};
use roadmap_core::Error;

#[test]
fn generated_roadmaps_satisfy_all_constraints() {
    let mut built = 0;
    for seed in 0..20 {
        let (env, demand) = random_small_env(seed);
        let cfg = GenerateConfig::for_environment(&env);
        let g = match generate(&env, &demand, &cfg) {
            Ok(g) => g,
            Err(Error::Unreachable { .. }) => continue,
            Err(e) => panic!("seed {seed}: {e}"),
        };
        built += 1;
        let problems = check_invariants(&g.optimized, &env, InvariantSet::ALL);
        assert!(problems.is_empty(), "seed {seed}: {problems:?}");
        assert!(g.optimized.graph().is_connected(), "seed {seed}");
        let report = evaluate(&g.optimized, &env, &demand).unwrap();
        assert!(report.disconnected.is_empty());
        assert!(report.norm_mean_spl >= 1.0 - 1e-9, "seed {seed}: {}", report.norm_mean_spl);

        let s = Smoothing::for_robot(env.robot());
        for b in smooth_roadmap(&g.optimized, &s) {
            let v = g.optimized.pos(b.node);
            let (p, q) = (g.optimized.pos(b.ends.0), g.optimized.pos(b.ends.1));
            for &x in &b.samples {
                assert!(distance_to_polyline(&[p, v, q], x) <= s.d_ad() + 1e-6, "seed {seed}");
            }
        }
    }
    assert!(built >= 18, "only {built} of 20 environments produced a roadmap");
}

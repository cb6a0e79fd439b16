use std::path::Path;

use roadmap::io::{self, EnvironmentFile, RoadmapFile, TransportFile};
use roadmap_core::pipeline::{generate, GenerateConfig};

fn data(name: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

#[test]
fn roadmap_json_round_trips_bit_exact() {
    let env = io::load_environment(&data("env1.json")).unwrap();
    let demand = io::load_transport(&data("env1_demand.json"), &env).unwrap();
    let g = generate(&env, &demand, &GenerateConfig::for_environment(&env)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("rm.json");
    io::save_roadmap(&p, &g.optimized).unwrap();
    let back = io::load_roadmap(&p).unwrap();
    assert_eq!(back.node_count(), g.optimized.node_count());
    for (a, b) in back.nodes().iter().zip(g.optimized.nodes()) {
        assert_eq!(a.pos.x.to_bits(), b.pos.x.to_bits());
        assert_eq!(a.pos.y.to_bits(), b.pos.y.to_bits());
        assert_eq!(a.kind, b.kind);
    }
    assert_eq!(RoadmapFile::from_roadmap(&back), RoadmapFile::from_roadmap(&g.optimized));
}

#[test]
fn environment_and_demand_round_trip() {
    for (e, d) in [("env1.json", "env1_demand.json"), ("env2.json", "env2_demand.json"), ("abstract.json", "abstract_demand.json")] {
        let env = io::load_environment(&data(e)).unwrap();
        let demand = io::load_transport(&data(d), &env).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let pe = dir.path().join("env.json");
        let pd = dir.path().join("demand.json");
        io::write_text(&pe, &io::to_json(&EnvironmentFile::from_environment(&env))).unwrap();
        io::write_text(&pd, &io::to_json(&TransportFile::from_matrix(&env, &demand))).unwrap();
        let env2 = io::load_environment(&pe).unwrap();
        assert_eq!(env2.interaction_point_count(), env.interaction_point_count());
        assert_eq!(io::load_transport(&pd, &env2).unwrap(), demand);
    }
}

#[test]
fn transport_order_is_respected() {
    let dir = tempfile::tempdir().unwrap();
    let pe = dir.path().join("env.json");
    std::fs::write(
        &pe,
        r#"{"boundary": [[0,0],[10,0],[10,10],[0,10]],
            "stations": [{"id": "a", "interaction_points": [[2,2]]},
                         {"id": "b", "interaction_points": [[8,8]]}]}"#,
    )
    .unwrap();
    let pd = dir.path().join("t.json");
    std::fs::write(&pd, r#"{"order": ["b", "a"], "T": [[0, 3], [1, 0]]}"#).unwrap();
    let env = io::load_environment(&pe).unwrap();
    let t = io::load_transport(&pd, &env).unwrap();
    assert_eq!(t.get(1, 0), 3);
    assert_eq!(t.get(0, 1), 1);
}

#[test]
fn malformed_roadmaps_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("rm.json");
    for text in [
        r#"{"nodes": [{"id": 0, "x": 0, "y": 0, "kind": "grid"}, {"id": 0, "x": 1, "y": 0, "kind": "grid"}], "edges": []}"#,
        r#"{"nodes": [{"id": 0, "x": 0, "y": 0, "kind": "hub"}], "edges": []}"#,
        r#"{"nodes": [{"id": 0, "x": 0, "y": 0, "kind": "grid"}], "edges": [{"a": 0, "b": 4}]}"#,
        r#"{"nodes": [], "edges": [], "extra": 1}"#,
        "not json",
    ] {
        std::fs::write(&p, text).unwrap();
        assert!(io::load_roadmap(&p).is_err(), "{text}");
    }
}

use super::*;

fn scenario(text: &str) -> Scenario {
    let mut v = parse_scenarios(text, "t", None);
    v.remove(0).1.unwrap()
}

fn statuses(r: &ScenarioReport) -> Vec<(String, Option<usize>, Status)> {
    r.checks.iter().map(|c| (c.name.clone(), c.c, c.status)).collect()
}

#[test]
fn trivial_group_passes_everything() {
    let r = run_scenario(&scenario("group: trivial\ncheck: all\nc: 1..2"));
    assert!(r.error.is_none());
    for c in &r.checks {
        assert_eq!(c.status, Status::Pass, "{c:?}");
    }
    assert_eq!(r.checks.len(), 3 + 9 * 2);
}

#[test]
fn dihedral_scenario() {
    let s = scenario("id: d4\ngroup: semidirect:Z4,Z2,inv\ncheck: direct_factor_32, cyclicB_37, cyclicAB_311, oracle_agreement\nc: 1");
    let r = run_scenario(&s);
    for c in &r.checks {
        assert_eq!(c.status, Status::Pass, "{c:?}");
    }
    let oracle = r.checks.iter().find(|c| c.name == "oracle_agreement").unwrap();
    assert!(oracle.witness.contains("M(G) = Z/2"), "{}", oracle.witness);
}

#[test]
fn s3_scenario() {
    let r = run_scenario(&scenario("group: semidirect:Z3,Z2,inv\ncheck: cyclicB_37, oracle_agreement\nc: 2"));
    assert_eq!(
        statuses(&r),
        vec![("cyclicB_37".into(), Some(2), Status::Inconclusive), ("oracle_agreement".into(), Some(1), Status::Pass)]
    );
    assert!(r.checks[1].witness.starts_with("M(G) = 0"), "{}", r.checks[1].witness);
}

#[test]
fn action_overrides() {
    // Z4 ⋊ Z2 with the inversion given explicitly equals the built-in one
    let a = run_scenario(&scenario("group: semidirect:Z4,Z2\naction: b : a -> a^-1\ncheck: direct_factor_32, oracle_agreement"));
    let b = run_scenario(&scenario("group: dihedral:4\ncheck: direct_factor_32, oracle_agreement"));
    assert_eq!(statuses(&a), statuses(&b));
    assert_eq!(a.checks[0].witness, b.checks[0].witness);
    let bad = run_scenario(&scenario("group: wreath:Z2,Z2\naction: b : a -> a"));
    assert!(bad.error.is_some());
    let bad = run_scenario(&scenario("group: semidirect:Z4,Z3\naction: b : a -> a^-1"));
    assert!(bad.error.is_some(), "inversion has order 2, not dividing 3");
}

#[test]
fn reports_are_deterministic() {
    let s = scenario("group: wreath:Z2,Z2\ncheck: all\nc: 1");
    let mut a = run_scenario(&s);
    let mut b = run_scenario(&s);
    a.elapsed_ms = 0;
    b.elapsed_ms = 0;
    assert_eq!(reports_to_json(&[a]), reports_to_json(&[b]));
}

#[test]
fn batch_isolation() {
    let items = parse_scenarios("id: a\ngroup: Z4\ncheck: direct_factor_32\nid: b\ngroup: nonsense\nid: c\ngroup: Z2\ncheck: bogus\nid: d\ngroup: Z3\ncheck: direct_factor_32", "f", None);
    let reports = run_batch(&items, 3);
    let ids: Vec<_> = reports.iter().map(|r| r.scenario_id.as_str()).collect();
    assert_eq!(ids, ["a", "b", "c", "d"]);
    assert!(reports[0].ok() && reports[3].ok());
    assert!(reports[1].error.is_some() && reports[2].error.is_some());
    let alone = run_batch(&items[3..], 1);
    assert_eq!(alone[0].checks, reports[3].checks);
}

#[test]
fn free_wreath_truncations() {
    let r = run_scenario(&scenario("group: freewreath:Z2,Z3\ncheck: trunc_41, trunc_51, normalform_24\nc: 1..2\ntrunc: +1, +2"));
    assert_eq!(r.checks.len(), 2 * 2 * 2 + 1);
    for c in &r.checks {
        assert_eq!(c.status, Status::Pass, "{c:?}");
    }
    let r = run_scenario(&scenario("group: semidirect:Z,Z2,inv\ncheck: normalform_24"));
    assert_eq!(r.checks[0].status, Status::Inconclusive);
}

#[test]
fn json_shape() {
    let r = run_scenario(&scenario("id: z\ngroup: Z2\ncheck: direct_factor_32, oracle_agreement"));
    let v: serde_json::Value = serde_json::from_str(&reports_to_json(&[r])).unwrap();
    assert_eq!(v["scenario_id"], "z");
    assert_eq!(v["checks"][0]["name"], "direct_factor_32");
    assert_eq!(v["checks"][0]["status"], "pass");
    assert!(v["versions"]["nilmult"].is_string());
    assert!(v["elapsed_ms"].is_u64());
}

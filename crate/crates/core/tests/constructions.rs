use packcolor::constructions::{assemble, plan_layout, Theorem};
use packcolor::graph::{coordinates, GraphSpec};
use packcolor::verify::verify;
use packcolor::Error;

fn build(k: u64, t: u64) -> (GraphSpec, Theorem, packcolor::PeriodicColoring) {
    let spec = GraphSpec::new(k, t).unwrap();
    let plan = plan_layout(&spec).unwrap();
    let coloring = assemble(&plan).unwrap();
    (spec, plan.theorem, coloring)
}

fn assert_valid(k: u64, t: u64) {
    let (spec, theorem, coloring) = build(k, t);
    let verdict = verify(&spec, &coloring).unwrap();
    assert!(verdict.is_valid(), "D({k},{t}): {verdict:?}");
    assert!(coloring.max_color() <= theorem.palette(), "D({k},{t})");
}

#[test]
fn smallest_odd_cases() {
    assert_valid(1, 25);
    assert_valid(23, 25);
}

#[test]
fn smallest_mixed_cases() {
    assert_valid(1, 98);
    assert_valid(24, 25);
    assert_valid(24, 49);
    assert_valid(48, 73);
}

#[test]
fn every_admissible_k_for_some_t() {
    let mut built = 0;
    for t in [25, 49, 73, 75, 98, 123, 125, 148] {
        for k in 1..t {
            let spec = GraphSpec::new(k, t).unwrap();
            if plan_layout(&spec).is_ok() {
                assert_valid(k, t);
                built += 1;
            }
        }
    }
    assert!(built > 40, "only {built} layouts applied");
}

#[test]
fn sampled_larger_cases() {
    for (k, t) in [
        (13, 275),
        (7, 223),
        (5, 198),
        (22, 123),
        (26, 123),
        (4, 173),
        (11, 448),
    ] {
        assert_valid(k, t);
    }
}

#[test]
fn strips_and_bands_keep_their_palettes() {
    let (spec, _, coloring) = build(1, 98);
    let plan = plan_layout(&spec).unwrap();
    let band_rows: Vec<u64> = plan.bands.iter().map(|b| b.band).collect();
    for v in 0..coloring.period() as i64 {
        let c = coloring.color_at(v);
        let m = coordinates(&spec, v).unwrap().band;
        if band_rows.contains(&m) {
            assert!(c == 1 || (16..=21).contains(&c) || c >= 24, "v={v} c={c}");
        } else {
            assert!(c <= 15 || c == 22 || c == 23, "v={v} c={c}");
        }
        if c == 1 {
            for d in [spec.k() as i64, spec.t() as i64] {
                assert_ne!(coloring.color_at(v + d), 1);
            }
        }
        if c > 48 {
            assert_eq!(m, spec.t() - 1);
        }
    }
}

#[test]
fn translation_by_the_period() {
    let (_, _, coloring) = build(24, 25);
    let l = coloring.period() as i64;
    assert_eq!(l, 432 * 25);
    for v in (-2000..2000).step_by(7) {
        assert_eq!(coloring.color_at(v), coloring.color_at(v + l));
    }
}

#[test]
fn below_threshold() {
    let spec = GraphSpec::new(3, 25).unwrap();
    assert!(matches!(plan_layout(&spec), Err(Error::NotApplicable(_))));
}

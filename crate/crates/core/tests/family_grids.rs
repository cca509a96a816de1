use nrh_core::constructions::{build_family, grid, FAMILIES};
use nrh_core::models::validate;
use std::time::Instant;

#[test]
fn every_grid_point_validates() {
    for f in FAMILIES {
        let start = Instant::now();
        let points = grid(f.id).unwrap();
        for p in &points {
            let m = build_family(f.id, p).unwrap_or_else(|e| panic!("{} {p:?}: {e}", f.id));
            let report = validate(&m);
            assert!(report.passed(), "{} {:?}: {:?}", f.id, p, report.first_failure());
            if let Some(d) = f.dim {
                assert_eq!(m.space().dim(), d);
            }
        }
        eprintln!("{:<18} {:>4} points {:?}", f.id, points.len(), start.elapsed());
    }
}

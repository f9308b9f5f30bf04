use fanoclass::bounds::{extremal_mahler_weights, verify_bounds, BoundKind};
use fanoclass::classify::{classify_all, Mode};

fn check(d: usize, g: u64, mode: Mode) {
    let recs = classify_all(d, g, mode).unwrap();
    let reps = verify_bounds(&recs, d, g, mode, true).unwrap();
    for rep in &reps {
        assert!(rep.passes(), "({d},{g}) {:?}: {rep:?}", rep.kind);
        if rep.kind == BoundKind::Volume {
            assert!(rep.attained, "({d},{g}) volume not attained");
        }
        if rep.kind == BoundKind::Multiplicity {
            assert_eq!(rep.predicted.is_some(), g % 2 == 1 || (d, g) == (3, 2), "({d},{g})");
            if rep.predicted.is_some() {
                assert!(rep.attained, "({d},{g}) multiplicity not attained");
            } else {
                assert!(rep.conjectured_bound.is_some());
            }
        }
    }
}

#[test]
fn fano_suite() {
    for (d, g) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (4, 1)] {
        check(d, g, Mode::Fano);
    }
}

#[test]
fn ip_suite() {
    for (d, g) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
        check(d, g, Mode::AllIp);
        let recs = classify_all(d, g, Mode::AllIp).unwrap();
        let reps = verify_bounds(&recs, d, g, Mode::AllIp, true).unwrap();
        let ew = extremal_mahler_weights(d, g).unwrap().sorted_desc();
        assert!(reps[2].attained && reps[2].authoritative);
        assert!(recs.iter().filter(|r| reps[2].attainers.contains(&r.matrix)).all(|r| r.weights == ew));
    }
}

#[test]
fn multiplicity_special_counts() {
    // One maximizing class at (3,1).
    let recs = classify_all(3, 1, Mode::Fano).unwrap();
    let reps = verify_bounds(&recs, 3, 1, Mode::Fano, true).unwrap();
    assert_eq!(reps[1].attainers.len(), 1);
    assert_eq!(reps[0].attainers.len(), 2);
}

use std::fs;
use std::io::Write;

use sponge_core::generators::{gen_trivalent_sponges, graph_sponge};
use sponge_core::search::{read_checkpoint, scan, scan_fvector_space, FspaceConstraint, ScanItem};
use sponge_core::Strategy;

fn family(max: usize) -> Vec<ScanItem> {
    gen_trivalent_sponges(max)
        .unwrap()
        .into_iter()
        .map(|(g, sponge)| ScanItem {
            id: g.code(),
            sponge,
        })
        .collect()
}

#[test]
fn interrupted_scan_resumes() {
    let items = family(10);
    let full = scan(&items, Strategy::Sequential, None).unwrap();

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.jsonl");
    // Pretend the first run died after five records and half a line.
    scan(&items[..5], Strategy::Sequential, Some(&path)).unwrap();
    let mut f = fs::OpenOptions::new().append(true).open(&path).unwrap();
    f.write_all(b"{\"id\":\"cubic").unwrap();
    drop(f);
    assert_eq!(read_checkpoint(&path).unwrap().len(), 5);

    let resumed = scan(&items, Strategy::Parallel, Some(&path)).unwrap();
    assert_eq!(resumed, full);
}

#[test]
fn disconnected_graph_gets_no_verdict() {
    let mut items = family(6);
    let two_k4 = graph_sponge(
        8,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 2),
            (1, 3),
            (2, 3),
            (4, 5),
            (4, 6),
            (4, 7),
            (5, 6),
            (5, 7),
            (6, 7),
        ],
    )
    .unwrap();
    items.push(ScanItem {
        id: "two-k4".into(),
        sponge: two_k4,
    });
    let s = scan(&items, Strategy::Parallel, None).unwrap();
    assert_eq!(s.total, 4);
    assert_eq!(s.acyclic_count, 3);
    let r = s.records.iter().find(|r| r.id == "two-k4").unwrap();
    assert!(!r.acyclic);
    assert_eq!(
        (r.h.as_ref(), r.symmetric, r.nonnegative),
        (None, None, None)
    );
}

#[test]
fn fvector_space_matches_family() {
    // Shapes of cubic graphs up to 10 vertices give the same h-vectors as the
    // sponges themselves.
    let grid = scan_fvector_space(3, 15, FspaceConstraint::Trivalent).unwrap();
    let s = scan(&family(10), Strategy::Parallel, None).unwrap();
    let mut shapes: Vec<Vec<i64>> = s.records.iter().map(|r| r.h.clone().unwrap()).collect();
    shapes.sort();
    shapes.dedup();
    assert_eq!(grid.points, shapes.len());
    assert!(grid.asymmetric.is_empty() && grid.negative.is_empty());

    // The G(4,2) f-vector is symmetric; grid points with negative b are skipped.
    let grid = scan_fvector_space(4, 12, FspaceConstraint::None).unwrap();
    assert!(!grid
        .asymmetric
        .iter()
        .any(|p| p.fvector.f == vec![6, 12, 11]));
    assert!(grid.skipped_negative_b > 0);
}

mod common;

use common::{oracle_grid, Instance, Oracle};
use hjlab::witness::find_witness;
use hjlab::{verify_witness, Certificate, Coloring, SearchStats};
use proptest::prelude::*;

fn small_grid() -> Vec<Instance> {
    // keep each case cheap: at most 64 points
    oracle_grid()
        .into_iter()
        .filter(|i| i.spec.ground(i.size).size().unwrap() <= 64)
        .collect()
}

fn instance_and_table() -> impl Strategy<Value = (Instance, Vec<u8>)> {
    let grid = small_grid();
    (0..grid.len()).prop_flat_map(move |i| {
        let inst = grid[i];
        let points = inst.spec.ground(inst.size).size().unwrap();
        (Just(inst), prop::collection::vec(0..inst.spec.c as u8, points))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn witness_finder_matches_oracle((inst, table) in instance_and_table()) {
        let d = Coloring::new(inst.spec.ground(inst.size), inst.spec.c, table).unwrap();
        let oracle = Oracle::new(&inst.spec, inst.size);
        let found = find_witness(&inst.spec, &d).unwrap();
        prop_assert_eq!(found.is_some(), oracle.admits(&d), "{} at {}", inst.spec, inst.size);
        if let Some(w) = found {
            prop_assert!(verify_witness(&inst.spec, inst.size, &d, &w).unwrap());
        }
    }

    #[test]
    fn coloring_encoding_round_trips((inst, table) in instance_and_table()) {
        let d = Coloring::new(inst.spec.ground(inst.size), inst.spec.c, table).unwrap();
        let back = Coloring::decode(d.ground(), d.colors(), &d.encode()).unwrap();
        prop_assert_eq!(&back, &d);
    }

    #[test]
    fn certificates_accept_exactly_bad_colorings((inst, table) in instance_and_table()) {
        let d = Coloring::new(inst.spec.ground(inst.size), inst.spec.c, table).unwrap();
        let cert = Certificate::bad(&inst.spec, inst.size, &d, SearchStats::default());
        let back = Certificate::from_json(&cert.to_json().unwrap()).unwrap();
        prop_assert_eq!(&back, &cert);
        let bad = !Oracle::new(&inst.spec, inst.size).admits(&d);
        prop_assert_eq!(back.verify(false).is_ok(), bad);
    }
}

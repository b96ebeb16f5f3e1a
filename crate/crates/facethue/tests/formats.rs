use facethue::document;
use facethue::sources::random_lists;
use facethue::trace::{replay_trace, traced_run, Trace};
use facethue_core::{generate, Family, ListAssignment, PlaneGraph};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![
        (2u32..40).prop_map(Family::Path),
        (3u32..30).prop_map(Family::Cycle),
        (3u32..15).prop_map(Family::Wheel),
        (2u32..6, 2u32..6).prop_map(|(a, b)| Family::Grid(a, b)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn documents_round_trip(f in family(), k in 1usize..8, seed in any::<u64>(), with_lists in any::<bool>()) {
        let rs = generate(f).unwrap();
        let lists = random_lists(rs.edge_count(), k, seed, 2 * k as u32).unwrap();
        let text = document::serialize(&rs, with_lists.then_some(&lists));
        let doc = document::parse(&text).unwrap();
        prop_assert_eq!(&doc.rotation, &rs);
        prop_assert_eq!(doc.lists.is_some(), with_lists);
        let again = document::serialize(&doc.rotation, doc.lists.map(|l| ListAssignment::new(l).unwrap()).as_ref());
        prop_assert_eq!(again, text);
    }

    #[test]
    fn traces_round_trip(f in family(), k in 2usize..13, seed in any::<u64>(), budget in 1usize..300) {
        let g = PlaneGraph::build(generate(f).unwrap()).unwrap();
        let lists = ListAssignment::uniform(g.edge_count(), k).unwrap();
        let run = traced_run(&g, &lists, seed, Some(budget), vec![format!("graph {f}")]).unwrap();
        let text = run.trace.render();
        let back = Trace::parse(&text).unwrap();
        prop_assert_eq!(&back, &run.trace);
        prop_assert_eq!(back.render(), text);
        prop_assert_eq!(replay_trace(&g, &lists, &back).unwrap(), run.input);
    }
}

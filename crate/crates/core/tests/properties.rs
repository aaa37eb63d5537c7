mod common;

use ndsolve_core::generate::{random_instance, AnnotationParams, ProblemKind, TemplateParams};
use ndsolve_core::{
    build_type_graph, compute_type_partition, parse_instance, serialize_instance, verify_partition, Instance,
};
use proptest::prelude::*;

use common::*;

fn problem() -> impl Strategy<Value = ProblemKind> {
    prop_oneof![Just(ProblemKind::Motif), Just(ProblemKind::Paths), Just(ProblemKind::Precolor)]
}

fn instance() -> impl Strategy<Value = (Instance, usize)> {
    (problem(), 1usize..=6, 0usize..=30, 0.0f64..1.0, any::<u64>(), 1u32..=6, 0.0f64..0.8).prop_filter_map(
        "annotation does not fit",
        |(kind, k, extra, p, seed, budget, fraction)| {
            let n = k + extra;
            let annotation = AnnotationParams {
                palette: budget,
                motif_size: 1 + extra % n.min(5),
                pairs: 1 + extra % 3,
                num_colors: budget,
                precolor_fraction: fraction,
            };
            random_instance(kind, TemplateParams { k, n, edge_probability: p }, annotation, seed).ok().map(|i| (i, k))
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn serialize_then_parse_is_identity((inst, _) in instance()) {
        let text = serialize_instance(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(back, inst);
    }

    #[test]
    fn generated_graph_respects_template_type_count((inst, k) in instance()) {
        let g = inst.graph();
        let p = compute_type_partition(g);
        prop_assert!(p.k() <= k);
        prop_assert!(verify_partition(g, &p));
        prop_assert!(build_type_graph(g, &p).is_ok());
    }

    #[test]
    fn parser_never_panics(lines in proptest::collection::vec("[a-z]{0,8}( [0-9]{1,2}){0,3}", 0..12)) {
        let text = format!("p graph 5\n{}", lines.join("\n"));
        let _ = parse_instance(&text);
    }

    #[test]
    fn partition_of_random_graph_is_minimum(seed in any::<u64>(), n in 1usize..=9, p in 0.0f64..1.0) {
        let g = gnp(&mut rng(seed), n, p);
        let part = compute_type_partition(&g);
        prop_assert!(verify_partition(&g, &part));
        prop_assert_eq!(part.k(), brute_force_nd(&g));
    }
}

#[test]
fn five_hundred_seeds_validate_for_every_problem() {
    let mut failures = Vec::new();
    for kind in [ProblemKind::Motif, ProblemKind::Paths, ProblemKind::Precolor] {
        for seed in 0..500u64 {
            let template = TemplateParams::new(1 + (seed % 6) as usize, 8 + (seed % 25) as usize);
            match random_instance(kind, template, AnnotationParams::default(), seed) {
                Ok(inst) => {
                    if let Err(e) = parse_instance(&serialize_instance(&inst)) {
                        failures.push(format!("{kind:?} seed {seed}: {e}"));
                    }
                }
                Err(e) => failures.push(format!("{kind:?} seed {seed}: {e}")),
            }
        }
    }
    assert!(failures.is_empty(), "{failures:?}");
}

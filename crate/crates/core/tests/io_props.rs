use leafkernel::io::{self, Family, IoError};
use leafkernel::kernel::Pipeline;
use leafkernel::{Instance, NsisVariant, Problem};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = Family> {
    prop::sample::select(Family::ALL.to_vec())
}

proptest! {
    #[test]
    fn instance_roundtrip(f in family(), size in 1usize..30, seed in any::<u64>(), problem in 0u8..3) {
        let problem = [Problem::Nsis, Problem::Cvc, Problem::MaxLeaf][problem as usize];
        let inst = io::generate_instance(f, size, seed, problem).unwrap();
        let text = io::serialize_instance(&inst);
        prop_assert_eq!(io::parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn sparse_ids_roundtrip(n in 3usize..40, seed in any::<u64>(), drop in any::<u64>()) {
        let mut g = io::planar_random(n, seed);
        for v in 0..n {
            if drop >> (v % 64) & 1 == 1 && g.vertex_count() > 1 {
                g.remove_vertex(v).unwrap();
            }
        }
        let inst = Instance::new(g, Problem::Nsis, 3);
        prop_assert_eq!(io::parse_instance(&io::serialize_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn outcome_roundtrip(f in family(), size in 1usize..12, seed in any::<u64>(), which in 0usize..3) {
        let pipeline = [Pipeline::Nsis(NsisVariant::Nine), Pipeline::Nsis(NsisVariant::Twelve), Pipeline::MaxLeaf][which];
        let inst = io::generate_instance(f, size, seed, pipeline.problem()).unwrap();
        if let Ok(out) = pipeline.run(&inst) {
            let text = io::serialize_outcome(&out);
            prop_assert_eq!(io::parse_outcome(&text).unwrap(), out);
        }
    }

    #[test]
    fn generation_is_deterministic(f in family(), size in 1usize..40, seed in any::<u64>()) {
        prop_assert_eq!(io::generate(f, size, seed).unwrap(), io::generate(f, size, seed).unwrap());
    }
}

#[test]
fn malformed_instances_are_rejected() {
    assert!(matches!(io::parse_instance(""), Err(IoError::MissingHeader)));
    assert!(matches!(
        io::parse_instance("p nsis 2 1 1\ne 0 0\n"),
        Err(IoError::Loop { .. })
    ));
    assert!(matches!(
        io::parse_instance("p nsis 2 2 1\ne 0 1\ne 1 0\n"),
        Err(IoError::DuplicateEdge { .. })
    ));
    assert!(matches!(
        io::parse_instance("p nsis 2 1 1\ne 0 5\n"),
        Err(IoError::OutOfRange { .. })
    ));
    assert!(matches!(
        io::parse_instance("p nsis 3 2 1\ne 0 1\n"),
        Err(IoError::EdgeCount { .. })
    ));
}

#[test]
fn corpus_entries_expand_in_order() {
    let items = io::parse_corpus("grid:2..4@0,1; # comment\nhub3:1").unwrap();
    let ids: Vec<_> = items.iter().map(|i| i.id.as_str()).collect();
    assert_eq!(ids, ["grid-2-s0", "grid-2-s1", "grid-3-s0", "grid-3-s1", "hub3-1-s0"]);
    assert!(io::parse_corpus("nope:3").is_err());
    assert!(io::parse_corpus("").unwrap().is_empty());
}

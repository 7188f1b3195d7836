use proptest::prelude::*;

use semiprime::catalog::{non_semiprime_family, semiprime_family, Catalog};
use semiprime::monoid::{classify, compose_tables, Classified};
use semiprime::report::{Record, Report, Status};
use semiprime::{syntax, ClosureOp, CuspIdeal, Ideal, Lattice, RawMap, Ring, Window};

fn cusp_ideal(p: u32, max: u32) -> impl Strategy<Value = CuspIdeal> {
    prop_oneof![
        Just(CuspIdeal::Unit),
        Just(CuspIdeal::Zero),
        (2..=max).prop_map(CuspIdeal::M),
        (2..=max, 0..p).prop_map(|(d, a)| CuspIdeal::P(d, a)),
    ]
}

fn rings() -> impl Strategy<Value = (Ring, u32)> {
    prop_oneof![
        (1u32..=8).prop_map(|d| (Ring::Dvr, d)),
        (1usize..=3, 1u32..=3).prop_map(|(l, d)| (Ring::Dedekind { primes: l }, d)),
        (prop_oneof![Just(2u32), Just(3), Just(5)], 4u32..=7).prop_map(|(p, d)| (Ring::Cusp { p }, d)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cusp_arithmetic_is_a_lattice(
        (p, a, b) in prop_oneof![Just(2u32), Just(3), Just(5)]
            .prop_flat_map(|p| (Just(p), cusp_ideal(p, 6), cusp_ideal(p, 6)))
    ) {
        let ring = Ring::Cusp { p };
        let (i, j) = (Ideal::Cusp(a), Ideal::Cusp(b));
        let ij = ring.product(&i, &j).unwrap();
        prop_assert_eq!(&ij, &ring.product(&j, &i).unwrap());
        prop_assert!(ring.contains(&i, &ij).unwrap() && ring.contains(&j, &ij).unwrap());
        let meet = ring.intersect(&i, &j).unwrap();
        prop_assert!(ring.contains(&i, &meet).unwrap() && ring.contains(&j, &meet).unwrap());
        prop_assert_eq!(&meet, &ring.intersect(&j, &i).unwrap());
        prop_assert!(ring.contains(&meet, &ij).unwrap());
        prop_assert_eq!(ring.contains(&i, &j).unwrap(), meet == j);
    }

    #[test]
    fn family_members_round_trip((ring, max) in rings(), k in any::<prop::sample::Index>()) {
        let mut ops = semiprime_family(ring, max);
        ops.extend(non_semiprime_family(ring, max));
        let op = k.get(&ops);
        let text = op.to_string();
        prop_assert_eq!(&syntax::parse(&text, ring).unwrap(), op);
        prop_assert_eq!(syntax::parse(&text, ring).unwrap().to_string(), text);
    }

    #[test]
    fn composition_is_associative(
        (ring, max) in rings(),
        a in any::<prop::sample::Index>(),
        b in any::<prop::sample::Index>(),
        c in any::<prop::sample::Index>(),
    ) {
        let lat = Lattice::new(Window::new(ring, max).unwrap());
        let tables: Vec<Vec<usize>> = semiprime_family(ring, max)
            .iter()
            .filter_map(|o| o.to_raw(&lat).ok()?.index_table(&lat))
            .collect();
        let (f, g, h) = (a.get(&tables), b.get(&tables), c.get(&tables));
        prop_assert_eq!(
            compose_tables(&compose_tables(f, g), h),
            compose_tables(f, &compose_tables(g, h))
        );
    }

    #[test]
    fn structured_report_round_trips(
        checks in prop::collection::vec(("[a-zA-Z0-9 .()=,\\\\\t\n-]{0,20}", 0usize..5, 0usize..100), 0..8)
    ) {
        let mut r = Report::new(vec![("ring".into(), "cusp".into())]);
        for (text, st, skipped) in checks {
            r.push(
                Record::new("axioms", text.clone(), Status::ALL[st])
                    .got(text.clone())
                    .skipped(skipped)
                    .witness(Some(text).filter(|t| !t.is_empty())),
            );
        }
        prop_assert_eq!(Report::parse_structured(&r.to_structured()).unwrap(), r);
    }
}

#[test]
fn classify_inverts_to_raw() {
    for w in [Window::dvr(8), Window::dedekind(2, 4), Window::cusp(2, 6)] {
        let lat = Lattice::new(w.unwrap());
        let cat = Catalog::new(&lat);
        for op in semiprime_family(lat.ring(), lat.window().max()) {
            let map = op.to_raw(&lat).unwrap();
            match classify(&lat, &cat, &map) {
                Classified::Op { op: got, aliases } => {
                    assert_eq!(got.to_raw(&lat).unwrap(), map, "{op}");
                    assert!(got == op || aliases.contains(&op), "{op} classified as {got}");
                }
                other => panic!("{op}: {}", other.describe()),
            }
        }
    }
}

#[test]
fn classified_compositions_are_exact() {
    // Whenever a composite of family members classifies as an operation,
    // that operation's table is the composite itself.
    let lat = Lattice::new(Window::cusp(2, 5).unwrap());
    let cat = Catalog::new(&lat);
    let ops: Vec<(ClosureOp, Vec<usize>)> = semiprime_family(lat.ring(), 5)
        .into_iter()
        .filter_map(|o| {
            let t = o.to_raw(&lat).ok()?.index_table(&lat)?;
            Some((o, t))
        })
        .collect();
    for (_, f) in ops.iter().step_by(3) {
        for (_, g) in ops.iter().step_by(5) {
            let t = compose_tables(f, g);
            let map = RawMap::from_indices(&lat, &t);
            if let Classified::Op { op, .. } = classify(&lat, &cat, &map) {
                assert_eq!(op.to_raw(&lat).unwrap().index_table(&lat).unwrap(), t);
            }
        }
    }
}

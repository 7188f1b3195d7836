use std::collections::BTreeSet;

use semiprime::catalog::{semiprime_family, Catalog};
use semiprime::enumerate::{
    brute_force, check_lemmas, documented_findings, enumerate, match_classification, Options,
};
use semiprime::monoid::{classify, is_exceptional, noncommutativity_witnesses, Classified};
use semiprime::suites::{int_as_displayed, run, Config, Suite};
use semiprime::{
    compose, is_semiprime, syntax, ClosureOp, CuspIdeal, DvrOp, FieldSet, Ideal, Lattice, RawMap, Ring, Window,
};

fn op(text: &str, ring: Ring) -> ClosureOp {
    syntax::parse(text, ring).unwrap()
}

#[test]
fn dvr_two_closure_maps() {
    let lat = Lattice::new(Window::dvr(2).unwrap());
    let closures = enumerate(&lat, Options::CLOSURE).unwrap();
    assert_eq!(closures, brute_force(&lat, false).unwrap());
    let mut family = vec![ClosureOp::identity(Ring::Dvr)];
    for m in 0..=2 {
        family.push(ClosureOp::Dvr(DvrOp::F(m)));
        family.push(ClosureOp::Dvr(DvrOp::G(m)));
    }
    let family: BTreeSet<Vec<usize>> =
        family.iter().map(|o| o.to_raw(&lat).unwrap().index_table(&lat).unwrap()).collect();
    let jump = ClosureOp::Dvr(DvrOp::JumpG(2)).to_raw(&lat).unwrap().index_table(&lat).unwrap();
    assert!(closures.contains(&jump));
    for t in &closures {
        let semi = is_semiprime(&lat, &RawMap::from_indices(&lat, t));
        assert_eq!(semi, family.contains(t), "{}", RawMap::from_indices(&lat, t).describe(&lat));
    }
    assert!(family.iter().all(|t| closures.contains(t)));
}

#[test]
fn dedekind_diff_is_empty() {
    let lat = Lattice::new(Window::dedekind(2, 4).unwrap());
    let found = enumerate(&lat, Options::SEMIPRIME).unwrap();
    let diff = match_classification(&lat, &found);
    assert!(diff.is_empty() && diff.boundary_ambiguous.is_empty());
}

#[test]
fn cusp_findings_are_the_documented_ones() {
    for (p, max, found_count) in [(2, 6, 175), (3, 5, 329)] {
        let lat = Lattice::new(Window::cusp(p, max).unwrap());
        let found = enumerate(&lat, Options::SEMIPRIME).unwrap();
        assert_eq!(found.len(), found_count);
        let diff = match_classification(&lat, &found);
        assert!(diff.missing.is_empty());
        let unexpected: BTreeSet<Vec<usize>> = diff.unexpected.iter().map(|u| u.table.clone()).collect();
        let documented: BTreeSet<Vec<usize>> = documented_findings(&lat).into_iter().map(|(_, t)| t).collect();
        assert_eq!(unexpected, documented, "p={p} D={max}");
    }
}

#[test]
fn lemma_violations_at_five_are_boundary_artifacts() {
    for (p, expected) in [(2, 5), (3, 10)] {
        let lat = Lattice::new(Window::cusp(p, 5).unwrap());
        let found = enumerate(&lat, Options::SEMIPRIME).unwrap();
        let diff = match_classification(&lat, &found);
        let (_, violations) = check_lemmas(&lat, &found);
        let ambiguous: BTreeSet<&str> = diff.boundary_ambiguous.iter().map(|u| u.description.as_str()).collect();
        let violators: BTreeSet<&str> = violations.iter().map(|v| v.map.as_str()).collect();
        assert_eq!(violators.len(), expected);
        assert!(violators.is_subset(&ambiguous));
    }
}

#[test]
fn pruning_is_neutral_on_cusp_windows() {
    for (p, max) in [(2, 5), (2, 6), (3, 5)] {
        let lat = Lattice::new(Window::cusp(p, max).unwrap());
        assert_eq!(enumerate(&lat, Options::SEMIPRIME).unwrap(), enumerate(&lat, Options::PRUNED).unwrap());
    }
}

#[test]
fn table_examples() {
    let cusp = Ring::Cusp { p: 2 };
    let lat = Lattice::new(Window::cusp(2, 8).unwrap());
    let cat = Catalog::new(&lat);
    let classify_pair = |f: &str, g: &str| {
        classify(&lat, &cat, &compose(&op(f, cusp), &op(g, cusp), &lat).unwrap())
    };

    let m6 = classify_pair("cusp:fpoint(m=2,a=0,zero=closed)", "cusp:fpoint(m=5,a=1,zero=closed)");
    assert_eq!(m6.op(), Some(&op("cusp:fpoint(m=2,a=0,zero=closed)", cusp)));

    // g_{3,a} after f_{3,b}, a != b: not a semiprime operation.
    let l4 = classify_pair("cusp:fpoint(m=3,a=0,zero=target)", "cusp:fpoint(m=3,a=1,zero=closed)");
    assert!(l4.is_failure(), "{}", l4.describe());
    // With a = b the composite is g itself.
    let same = classify_pair("cusp:fpoint(m=3,a=0,zero=target)", "cusp:fpoint(m=3,a=0,zero=closed)");
    assert_eq!(same.op(), Some(&op("cusp:fpoint(m=3,a=0,zero=target)", cusp)));

    let ded = Ring::Dedekind { primes: 2 };
    let dl = Lattice::new(Window::dedekind(2, 4).unwrap());
    let dc = Catalog::new(&dl);
    let f = op("ded:box(P=2,Q=inf;zero=closed)", ded);
    let g = op("ded:box(P=3,Q=1;zero=closed)", ded);
    let got = classify(&dl, &dc, &compose(&f, &g, &dl).unwrap());
    assert_eq!(got.op().unwrap().to_raw(&dl).unwrap(), op("ded:box(P=2,Q=1;zero=closed)", ded).to_raw(&dl).unwrap());
}

#[test]
fn dvr_counterexample_witnesses() {
    let lat = Lattice::new(Window::dvr(6).unwrap());
    let cat = Catalog::new(&lat);
    let p = |k| Ideal::Dvr(semiprime::DvrIdeal::Power(k));
    let h = compose(&ClosureOp::Dvr(DvrOp::F(2)), &ClosureOp::Dvr(DvrOp::JumpG(5)), &lat).unwrap();
    let Classified::NotClosure(r) = classify(&lat, &cat, &h) else { panic!() };
    let w = r.witness.unwrap();
    assert_eq!((w.inputs, w.values), (vec![p(5)], vec![p(2), p(0)]));

    let h = compose(&ClosureOp::Dvr(DvrOp::G(5)), &ClosureOp::Dvr(DvrOp::F(2)), &lat).unwrap();
    let Classified::NotClosure(r) = classify(&lat, &cat, &h) else { panic!() };
    let w = r.witness.unwrap();
    assert_eq!((w.inputs, w.values), (vec![Ideal::Dvr(semiprime::DvrIdeal::Zero)], vec![p(5), p(2)]));
}

#[test]
fn exceptional_examples() {
    let cusp = Ring::Cusp { p: 2 };
    let lat = Lattice::new(Window::cusp(2, 8).unwrap());
    let exc = op("cusp:fbox(n=2,S={0},T={0,1},m=6,zero=closed,exc=true)", cusp);
    let chain = is_exceptional(&lat, &exc).unwrap().chain.unwrap();
    assert_eq!(
        chain,
        vec![Ideal::Cusp(CuspIdeal::P(5, 0)), Ideal::Cusp(CuspIdeal::M(5)), Ideal::Cusp(CuspIdeal::M(4))]
    );
    for text in ["cusp:fpoint(m=4,a=0,zero=closed)", "cusp:fbox(n=2,S={0},T={1},m=5,zero=target,exc=false)"] {
        assert!(is_exceptional(&lat, &op(text, cusp)).unwrap().chain.is_none(), "{text}");
    }
    let pairs = noncommutativity_witnesses(&lat, 2, FieldSet::single(0), FieldSet::EMPTY, 6, 0).unwrap();
    for w in pairs {
        assert_eq!(w.values, (Ideal::Cusp(CuspIdeal::M(4)), Ideal::Cusp(CuspIdeal::M(5))));
    }
}

#[test]
fn int_readings_agree() {
    for p in [2, 3] {
        let lat = Lattice::new(Window::cusp(p, 7).unwrap());
        for o in semiprime::catalog::int_ops(p, 7) {
            let ClosureOp::Cusp(semiprime::CuspOp::IntUnbounded(x)) = &o else { unreachable!() };
            let (i, s, t) = x.params();
            assert_eq!(int_as_displayed(&lat, i, s, t), o.to_raw(&lat).unwrap(), "{o}");
        }
    }
}

#[test]
fn reports_are_deterministic() {
    let cfg = Config::new(Ring::Cusp { p: 2 }, 5, Suite::ALL.to_vec()).unwrap();
    let a = run(&cfg).unwrap().to_structured();
    let b = run(&cfg).unwrap().to_structured();
    assert_eq!(a, b);
}

#[test]
fn dvr_suite_passes() {
    let cfg = Config::new(Ring::Dvr, 8, Suite::ALL.to_vec()).unwrap();
    let r = run(&cfg).unwrap();
    assert!(r.passed(), "{}", r.to_human());
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn every_family_member_is_semiprime_at_default_windows() {
    for w in [Window::dvr(8), Window::dedekind(2, 4), Window::cusp(2, 6), Window::cusp(3, 6)] {
        let lat = Lattice::new(w.unwrap());
        for o in semiprime_family(lat.ring(), lat.window().max()) {
            assert!(is_semiprime(&lat, &o.to_raw(&lat).unwrap()), "{o}");
        }
    }
}

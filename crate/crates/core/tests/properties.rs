mod common;

use std::sync::OnceLock;

use loopforge_core::catalog::{content_id, normalize};
use loopforge_core::isotopy::{autotopism_group, isomorphisms, principal_isotope};
use loopforge_core::loops::check_group_axioms;
use loopforge_core::{generate_loops, GenerateOptions, LoopTable, Perm, SearchCap};
use proptest::prelude::*;

fn catalog() -> &'static [LoopTable] {
    static CATALOG: OnceLock<Vec<LoopTable>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        (2..=5)
            .flat_map(|n| generate_loops(n, GenerateOptions::default()).unwrap())
            .map(|e| e.table)
            .collect()
    })
}

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

/// A catalog loop under a random relabeling, so the identity is arbitrary.
fn any_loop() -> impl Strategy<Value = LoopTable> {
    (0..catalog().len())
        .prop_flat_map(|i| {
            let l = &catalog()[i];
            (Just(l.clone()), perm(l.order()))
        })
        .prop_map(|(l, p)| l.relabeled(&p))
}

fn perm_triple() -> impl Strategy<Value = (Perm, Perm, Perm)> {
    (1usize..9).prop_flat_map(|n| (perm(n), perm(n), perm(n)))
}

proptest! {
    #[test]
    fn composition_is_associative((p, q, r) in perm_triple()) {
        prop_assert_eq!(p.then(&q).then(&r), p.then(&q.then(&r)));
        for x in 0..p.degree() {
            prop_assert_eq!(p.then(&q).apply(x), q.apply(p.apply(x)));
        }
    }

    #[test]
    fn inverse_cancels((p, _, _) in perm_triple()) {
        prop_assert!(p.then(&p.inverse()).is_identity());
        prop_assert!(p.inverse().then(&p).is_identity());
        prop_assert_eq!(p.to_string().parse::<Perm>().unwrap(), p);
    }

    #[test]
    fn translations_are_bijections(l in any_loop()) {
        for x in 0..l.order() {
            let (lx, rx) = l.translations(x).unwrap();
            for y in 0..l.order() {
                prop_assert_eq!(lx.apply(y), l.mul(x, y));
                prop_assert_eq!(rx.apply(y), l.mul(y, x));
                prop_assert_eq!(l.mul(x, l.ldiv(x, y)), y);
                prop_assert_eq!(l.mul(l.rdiv(y, x), x), y);
            }
        }
    }

    #[test]
    fn subgroups_are_groups(l in any_loop()) {
        let t = common::rows_of(&l);
        let subs = l.subgroups();
        let lib: Vec<Vec<usize>> = subs.iter().map(|s| s.elements().to_vec()).collect();
        prop_assert_eq!(&lib, &common::subgroups(&t));
        for s in &subs {
            prop_assert!(check_group_axioms(&l, s.elements()).is_ok());
        }
        let nucleus = l.middle_nucleus();
        prop_assert!(subs.iter().any(|s| s.elements() == nucleus.elements()));
    }

    #[test]
    fn text_round_trip_is_exact(l in any_loop()) {
        let text = l.to_text();
        let back = LoopTable::parse_text(&text).unwrap();
        prop_assert_eq!(&back, &l);
        prop_assert_eq!(back.to_text(), text.clone());
        prop_assert_eq!(content_id(&back), content_id(&l));
        let commented = format!("# header\n{}", text.replace('\n', "\n# note\n"));
        prop_assert_eq!(LoopTable::parse_text(&commented).unwrap(), l);
    }

    #[test]
    fn isotope_round_trip(l in any_loop(), f in 0usize..5, g in 0usize..5) {
        let (f, g) = (f % l.order(), g % l.order());
        let iso = principal_isotope(&l, f, g).unwrap();
        prop_assert_eq!(iso.result.identity(), l.mul(f, g));
        let back = principal_isotope(&iso.result, g, f).unwrap();
        prop_assert_eq!(back.result.cells(), l.cells());
    }

    #[test]
    fn relabeling_is_an_isomorphism(l in any_loop()) {
        let (norm, relabel) = normalize(&l);
        prop_assert_eq!(norm.identity(), 0);
        prop_assert_eq!(norm.row(0).collect::<Vec<_>>(), (0..l.order()).collect::<Vec<_>>());
        let isos = isomorphisms(&l, &norm, SearchCap::default()).unwrap();
        prop_assert!(isos.contains(&relabel));
    }

    #[test]
    fn autotopisms_close_under_products(l in any_loop(), i in any::<usize>(), j in any::<usize>()) {
        let aut = autotopism_group(&l, SearchCap::default()).unwrap();
        let a = &aut[i % aut.len()];
        let b = &aut[j % aut.len()];
        let ab = a.then(b);
        prop_assert!(ab.is_autotopism_of(&l));
        prop_assert!(aut.binary_search(&ab).is_ok());
        prop_assert!(aut.binary_search(&a.inverse()).is_ok());
    }
}

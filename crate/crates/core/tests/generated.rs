use std::sync::Arc;

use tvspace::enumerate::structures_up_to_iso;
use tvspace::generation::{
    c_generated_structure, cmap_space, enumerate_probes, is_c_continuous, is_c_continuous_by_probes, is_c_generated,
};
use tvspace::quasi::{
    associated_quasi, discrete_quasi, indiscrete_quasi, initial_quasi, is_quasi_continuous, product2_quasi,
    reflect_to_cgenerated, validate_quasi,
};
use tvspace::space::{discrete_space, exponential, is_continuous, product};
use tvspace::{AllMaps, Budget, Carrier, MapArrow, Monad, ProbeClass, Quantale, QuasiClass, Space};

fn battery(q: &Quantale, max: usize) -> Vec<Space> {
    (0..=max).flat_map(|n| structures_up_to_iso(n, Monad::Identity, q, &Budget::default()).unwrap()).collect()
}

fn chain2(q: &Quantale) -> Space {
    let (t, b) = (q.top(), q.bottom());
    Space::from_matrix(Carrier::range(2), Monad::Identity, q.clone(), vec![t, t, b, t]).unwrap()
}

/// Classes over `q` exercising a discrete, a generating and a partial case.
fn classes(q: &Quantale) -> Vec<ProbeClass> {
    let mut v = vec![
        ProbeClass::compact_hausdorff_upto(Monad::Identity, q, 2, &Budget::default()).unwrap(),
        ProbeClass::sierpinski(q, Monad::Identity, None).unwrap(),
        ProbeClass::explicit(vec![chain2(q)]).unwrap(),
    ];
    let d2 = discrete_space(&Carrier::range(2), Monad::Identity, q);
    v.push(ProbeClass::explicit(vec![d2, chain2(q)]).unwrap());
    v
}

fn settings() -> Vec<(Quantale, Vec<Space>)> {
    vec![
        (Quantale::bool2(), battery(&Quantale::bool2(), 3)),
        (Quantale::chain(3).unwrap(), battery(&Quantale::chain(3).unwrap(), 2)),
    ]
}

#[test]
fn coreflection_laws() {
    for (q, bat) in settings() {
        for class in classes(&q) {
            for x in &bat {
                let xc = c_generated_structure(x, &class).unwrap();
                assert!(xc.structure().leq(x.structure()).unwrap());
                assert_eq!(c_generated_structure(&xc, &class).unwrap(), xc);
                assert!(is_c_generated(&xc, &class).unwrap());
                assert!(is_continuous(&MapArrow::identity(x.carrier()), &xc, x).unwrap());
                // class objects see the same probes before and after
                assert_eq!(enumerate_probes(&class, x).unwrap(), enumerate_probes(&class, &xc).unwrap());
            }
            for c in class.objects() {
                assert!(is_c_generated(c, &class).unwrap());
            }
        }
    }
}

#[test]
fn coreflection_is_functorial_and_c_continuity_agrees() {
    for (q, bat) in settings() {
        for class in classes(&q) {
            for x in bat.iter().filter(|s| s.len() <= 2) {
                let xc = c_generated_structure(x, &class).unwrap();
                for y in &bat {
                    let yc = c_generated_structure(y, &class).unwrap();
                    for f in AllMaps::new(x.carrier(), y.carrier()) {
                        if is_continuous(&f, x, y).unwrap() {
                            assert!(is_continuous(&f, &xc, &yc).unwrap());
                        }
                        // cross-check inside is_c_continuous errors on disagreement
                        let cc = is_c_continuous(&f, x, y, &class).unwrap();
                        assert_eq!(cc, is_c_continuous_by_probes(&f, x, y, &class).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn sierpinski_class_generates_everything_in_ord() {
    let q = Quantale::bool2();
    let class = ProbeClass::sierpinski(&q, Monad::Identity, None).unwrap();
    for x in battery(&q, 4) {
        assert!(is_c_generated(&x, &class).unwrap());
    }
}

#[test]
fn cmap_agrees_with_exponential_when_everything_is_generated() {
    let q = Quantale::bool2();
    let class = ProbeClass::sierpinski(&q, Monad::Identity, None).unwrap();
    let bat = battery(&q, 2);
    for y in &bat {
        for z in &bat {
            let cm = cmap_space(y, z, &class).unwrap();
            let ex = exponential(y, z).unwrap();
            assert_eq!(cm.maps(), ex.maps());
            assert_eq!(cm.space.structure().entries(), ex.space.structure().entries());
            let ev = cm.ev(y.carrier(), z.carrier());
            assert!(is_continuous(&ev, &product(&cm.space, y).unwrap(), z).unwrap());
        }
    }
}

/// Classes whose objects are compact Hausdorff, as quasi-spaces require.
fn quasi_classes(q: &Quantale) -> Vec<Arc<QuasiClass>> {
    let d2 = discrete_space(&Carrier::range(2), Monad::Identity, q);
    vec![
        QuasiClass::new(ProbeClass::compact_hausdorff_upto(Monad::Identity, q, 2, &Budget::default()).unwrap())
            .unwrap(),
        QuasiClass::new(ProbeClass::explicit(vec![d2]).unwrap()).unwrap(),
    ]
}

fn ch_class(q: &Quantale) -> Arc<QuasiClass> {
    quasi_classes(q).remove(0)
}

#[test]
fn non_compact_hausdorff_class_breaks_cover_closure() {
    let q = Quantale::bool2();
    let qc = QuasiClass::new(ProbeClass::explicit(vec![chain2(&q)]).unwrap()).unwrap();
    assert!(!qc.report().passed());
    // constants from the class object cover every map, so QS3 forces the indiscrete structure
    let qx = associated_quasi(&chain2(&q), &qc).unwrap();
    let rep = validate_quasi(&qx).unwrap();
    assert!(rep.violations.iter().any(|v| v.law.contains("QS3")), "{rep}");
}

#[test]
fn associated_quasi_structures_are_valid_and_hom_sets_match() {
    for (q, bat) in settings() {
        for qc in quasi_classes(&q) {
            let small: Vec<&Space> = bat.iter().filter(|s| s.len() <= 2).collect();
            for x in &small {
                let qx = associated_quasi(x, &qc).unwrap();
                assert!(validate_quasi(&qx).unwrap().passed());
                for y in &small {
                    let qy = associated_quasi(y, &qc).unwrap();
                    for f in AllMaps::new(x.carrier(), y.carrier()) {
                        assert_eq!(
                            is_quasi_continuous(&f, &qx, &qy).unwrap(),
                            is_c_continuous(&f, x, y, qc.class()).unwrap()
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn reflection_after_association_is_the_coreflection() {
    for (q, bat) in settings() {
        for qc in quasi_classes(&q) {
            for x in &bat {
                let qx = associated_quasi(x, &qc).unwrap();
                assert_eq!(reflect_to_cgenerated(&qx).unwrap(), c_generated_structure(x, qc.class()).unwrap());
            }
        }
    }
}

#[test]
fn unit_of_the_reflection_is_quasi_continuous() {
    let q = Quantale::bool2();
    for qc in quasi_classes(&q) {
        for n in 0..=2 {
            let xc = Carrier::range(n);
            for qx in [discrete_quasi(&xc, &qc).unwrap(), indiscrete_quasi(&xc, &qc).unwrap()] {
                let r = reflect_to_cgenerated(&qx).unwrap();
                let back = associated_quasi(&r, &qc).unwrap();
                assert!(is_quasi_continuous(&MapArrow::identity(&xc), &qx, &back).unwrap());
            }
        }
    }
}

#[test]
fn initial_quasi_universal_property() {
    let q = Quantale::bool2();
    let qc = ch_class(&q);
    let bat = battery(&q, 2);
    let qs: Vec<_> = bat.iter().map(|s| associated_quasi(s, &qc).unwrap()).collect();
    let xc = Carrier::range(2);
    for qy in &qs {
        for qz in &qs {
            for f in AllMaps::new(&xc, qy.carrier()) {
                for g in AllMaps::new(&xc, qz.carrier()) {
                    let ini = initial_quasi(&xc, &[(f.clone(), qy), (g.clone(), qz)]).unwrap();
                    assert!(validate_quasi(&ini).unwrap().passed());
                    for qw in &qs {
                        for h in AllMaps::new(qw.carrier(), &xc) {
                            let lhs = is_quasi_continuous(&h, qw, &ini).unwrap();
                            let rhs = is_quasi_continuous(&h.then(&f).unwrap(), qw, qy).unwrap()
                                && is_quasi_continuous(&h.then(&g).unwrap(), qw, qz).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn product_quasi_projections_are_continuous() {
    let q = Quantale::bool2();
    let qc = ch_class(&q);
    let bat = battery(&q, 2);
    for x in &bat {
        for y in &bat {
            let (qx, qy) = (associated_quasi(x, &qc).unwrap(), associated_quasi(y, &qc).unwrap());
            let p = product2_quasi(&qx, &qy).unwrap();
            assert!(validate_quasi(&p).unwrap().passed());
            let (p1, p2) = tvspace::carrier::projections(x.carrier(), y.carrier());
            assert!(is_quasi_continuous(&p1, &p, &qx).unwrap() && is_quasi_continuous(&p2, &p, &qy).unwrap());
        }
    }
}

use basechange::grpcore::Carrier;
use basechange::heis::{
    build_extraspecial, closed_form, extend, fixed_space_consequences, lemma_h_report,
    lemma_h_verify, multiplicities, sign_law, HeisRep, Realization, SymplecticSpace, TorusAction,
};
use basechange::{Cyclotomic, Error};
use proptest::prelude::*;

#[test]
fn group_law_exhaustive_p3() {
    let e = build_extraspecial(3, 1).unwrap();
    let n = e.order() as u64;
    assert_eq!(n, 27);
    let id = e.identity();
    for x in 0..n {
        assert_eq!(e.mul(x, id), x);
        assert_eq!(e.mul(x, e.inv(x)), id);
        for y in 0..n {
            let xy = e.mul(x, y);
            for z in 0..n {
                assert_eq!(e.mul(xy, z), e.mul(x, e.mul(y, z)));
            }
            // commutator lands in the center with value ⟨v, w⟩
            let comm = e.mul(e.mul(x, y), e.inv(e.mul(y, x)));
            let (cv, cz) = e.decode(comm);
            let ((v, _), (w, _)) = (e.decode(x), e.decode(y));
            assert!(cv.iter().all(|&c| c == 0));
            assert_eq!(cz, e.space().pair(&v, &w));
        }
    }
    let g = e.group(1000).unwrap();
    assert_eq!(g.num_classes(), 9 + 2);
}

proptest! {
    #[test]
    fn group_law_sampled(idx in 0usize..3, x in 0u64..1 << 20, y in 0u64..1 << 20, z in 0u64..1 << 20) {
        let (p, a) = [(5, 1), (7, 1), (3, 2)][idx];
        let e = build_extraspecial(p, a).unwrap();
        let n = e.order() as u64;
        let (x, y, z) = (x % n, y % n, z % n);
        prop_assert_eq!(e.mul(e.mul(x, y), z), e.mul(x, e.mul(y, z)));
        prop_assert_eq!(e.mul(x, e.inv(x)), e.identity());
    }
}

#[test]
fn heisenberg_rep_character() {
    for p in [3u32, 5] {
        let e = build_extraspecial(p, 1).unwrap();
        let rep = HeisRep::new(&e, 1).unwrap();
        assert_eq!(rep.dim(), p as usize);
        assert!(rep.is_homomorphism());
        for z in 0..p {
            assert_eq!(
                rep.trace(&[0, 0], z),
                rep.theta(z).scale(p as i128, 1).unwrap()
            );
            assert!(rep.trace(&[1, 0], z).is_zero());
            assert!(rep.trace(&[2, 1], z).is_zero());
        }
    }
    let e = build_extraspecial(3, 1).unwrap();
    assert_eq!(
        HeisRep::new(&e, 3).unwrap_err(),
        Error::TrivialCentralCharacter
    );
}

#[test]
fn extension_invariants() {
    let cases = [
        (3, 4, Realization::Nonsplit),
        (3, 2, Realization::Split),
        (5, 4, Realization::Split),
        (5, 3, Realization::Nonsplit),
        (7, 3, Realization::Split),
        (7, 8, Realization::Nonsplit),
    ];
    for (p, d, how) in cases {
        let action = TorusAction::realize(p, d, how).unwrap();
        let rep = HeisRep::new(&build_extraspecial(p, 1).unwrap(), 1).unwrap();
        let exts = extend(&rep, &action).unwrap();
        assert_eq!(exts.len(), d as usize);
        let (eps, _, multiset) = closed_form(p as u64, d as u64).unwrap();
        let mut labels = Vec::new();
        for ext in &exts {
            labels.push(ext.label());
            assert_eq!(ext.torus_trace(0), Cyclotomic::from_int(p as i128));
            for j in 1..d as usize {
                assert_eq!(
                    ext.torus_trace(j).abs_square(),
                    Cyclotomic::one(),
                    "p={p} d={d} j={j}"
                );
            }
            let mut m = multiplicities(ext).unwrap();
            assert_eq!(m.iter().sum::<u64>(), p as u64);
            m.sort_unstable();
            assert_eq!(m, multiset, "p={p} d={d}");
            let law = sign_law(ext);
            if d > 2 {
                assert_eq!(law.len(), 1, "p={p} d={d}");
                assert_eq!(law[0].0, eps);
            } else {
                assert!(law.iter().any(|&(e, _)| e == eps));
            }
        }
        labels.dedup();
        assert_eq!(labels.len(), d as usize);
    }
}

#[test]
fn sign_examples() {
    assert_eq!(closed_form(3, 4), Some((-1, 0, vec![0, 1, 1, 1])));
    assert_eq!(closed_form(7, 3), Some((1, 3, vec![2, 2, 3])));
    assert_eq!(closed_form(7, 5), None);
    let r = lemma_h_verify(3, 1, 4, Realization::Nonsplit).unwrap();
    assert!(r.passed(), "{}", r.to_json());
    assert!(r.to_json().contains("ε = -1"));
}

#[test]
fn realization_errors() {
    assert!(matches!(
        TorusAction::realize(3, 5, Realization::Split),
        Err(Error::Realization(_))
    ));
    assert!(matches!(
        TorusAction::realize(5, 3, Realization::Split),
        Err(Error::Realization(_))
    ));
    assert!(matches!(
        TorusAction::realize(5, 5, Realization::Nonsplit),
        Err(Error::Realization(_))
    ));
    assert_eq!(
        "nonsplit".parse::<Realization>().unwrap(),
        Realization::Nonsplit
    );
    assert!("both".parse::<Realization>().is_err());
}

#[test]
fn rank_two_space() {
    let sp = SymplecticSpace::new(3, 2).unwrap();
    let minus: Vec<Vec<u32>> = (0..4)
        .map(|i| (0..4).map(|j| if i == j { 2 } else { 0 }).collect())
        .collect();
    let action = TorusAction::new(&sp, minus, 2).unwrap();
    let e = build_extraspecial(3, 2).unwrap();
    let rep = HeisRep::new(&e, 2).unwrap();
    assert_eq!(rep.dim(), 9);
    let r = lemma_h_report(&rep, &action, None).unwrap();
    assert!(r.passed(), "{}", r.to_json());
    let c = fixed_space_consequences(&e, &action).unwrap();
    assert!(c.passed(), "{}", c.to_json());

    // −1 on the first plane, 1 on the second: fixes a plane.
    let half: Vec<Vec<u32>> = (0..4)
        .map(|i| {
            (0..4)
                .map(|j| {
                    if i != j {
                        0
                    } else if i < 2 {
                        2
                    } else {
                        1
                    }
                })
                .collect()
        })
        .collect();
    assert!(matches!(
        TorusAction::new(&sp, half, 2),
        Err(Error::HypothesisH(_))
    ));
}

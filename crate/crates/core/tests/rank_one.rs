use std::collections::BTreeSet;

use basechange::cuspchar::{oracle_cuspidal, oracle_matches, Level0, Unitary};
use basechange::ffield::{make_field, MultChar, NormOneChar, QuadExt};
use basechange::grpcore::{character_table, inner_product, ClassFunction};
use basechange::rankone::{
    build_gl2, build_u2, norm_class_map, tau_classes, Mat2Carrier, UnitarySpec,
};
use basechange::Error;

fn degrees(chars: &[ClassFunction]) -> Vec<i128> {
    let mut d: Vec<i128> = chars.iter().map(|c| c.degree().unwrap()).collect();
    d.sort_unstable();
    d
}

fn level(q: u32) -> Level0 {
    Level0::new(&QuadExt::new(q, 1).unwrap(), 10_000).unwrap()
}

#[test]
fn small_tables() {
    let lv = level(3);
    assert_eq!(lv.sl2().order(), 24);
    assert_eq!(
        degrees(&character_table(lv.sl2()).unwrap()),
        vec![1, 1, 1, 2, 2, 2, 3]
    );
    assert_eq!(lv.gl2().order(), 48);
    assert_eq!(
        degrees(&character_table(lv.gl2()).unwrap()),
        vec![1, 1, 2, 2, 2, 3, 3, 4]
    );
    let lv5 = level(5);
    assert_eq!(lv5.sl2().num_classes(), 9);
    assert_eq!(lv5.gl2().num_classes(), 24);
}

#[test]
fn frobenius_reciprocity() {
    let lv = level(5);
    let g = lv.sl2();
    let u = lv.unipotent();
    assert!(u.is_subgroup_of(g));
    let one = ClassFunction::trivial(u);
    let induced = one.induce(g).unwrap();
    assert_eq!(induced.degree(), Some((g.order() / u.order()) as i128));
    for chi in character_table(g).unwrap() {
        let lhs = inner_product(&induced, &chi).unwrap();
        let rhs = inner_product(&one, &chi.restrict(u).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn gl2_over_nine() {
    let mats = Mat2Carrier::new(&make_field(3, 2).unwrap());
    let g = build_gl2(&mats, 10_000).unwrap();
    assert_eq!(g.order(), 5760);
    assert_eq!(g.num_classes(), 80);
    assert!(matches!(
        build_gl2(&mats, 5000),
        Err(Error::SizeBound { .. })
    ));
}

#[test]
fn tau_fixed_points_are_the_unitary_group() {
    let quad = QuadExt::new(3, 1).unwrap();
    let spec = UnitarySpec::new(&quad);
    let gt = build_gl2(spec.mats(), 10_000).unwrap();
    let u2 = build_u2(&spec, 10_000).unwrap();
    assert_eq!(u2.order(), 96);
    let m = spec.mats();
    let fixed: BTreeSet<u64> = gt
        .table()
        .codes()
        .iter()
        .copied()
        .filter(|&c| spec.tau(&m.decode(c)) == m.decode(c))
        .collect();
    let unitary: BTreeSet<u64> = u2.table().codes().iter().copied().collect();
    assert_eq!(fixed, unitary);
    for &c in gt.table().codes().iter().step_by(37) {
        let g = m.decode(c);
        assert_eq!(spec.tau(&spec.tau(&g)), g);
    }
}

#[test]
fn norm_map_is_a_class_bijection() {
    let quad = QuadExt::new(3, 1).unwrap();
    let spec = UnitarySpec::new(&quad);
    let gt = build_gl2(spec.mats(), 10_000).unwrap();
    let u2 = build_u2(&spec, 10_000).unwrap();
    let tc = tau_classes(&gt, &spec).unwrap();
    let map = norm_class_map(&gt, &u2, &spec, &tc).unwrap();
    assert!(map.is_bijection(), "{map:?}");
    assert_eq!(tc.len(), map.meeting_u2.len());
    assert_eq!(tc.len(), u2.num_classes());
}

#[test]
fn gl2_parameters_separate() {
    for q in [3u32, 5] {
        let lv = level(q);
        let regular: Vec<MultChar> = MultChar::all(lv.quad().l())
            .into_iter()
            .filter(|t| t.is_regular(q))
            .collect();
        let chars: Vec<ClassFunction> = regular
            .iter()
            .map(|t| lv.gl2_cuspidal(t).unwrap().chi)
            .collect();
        for (i, a) in regular.iter().enumerate() {
            for (j, b) in regular.iter().enumerate() {
                let same =
                    b.exponent() == a.exponent() || b.exponent() == a.compose_gamma(q).exponent();
                assert_eq!(
                    chars[i] == chars[j],
                    same,
                    "q={q} {} {}",
                    a.label(),
                    b.label()
                );
            }
        }
        let mut hits: Vec<usize> = chars
            .iter()
            .map(|c| oracle_matches(c).unwrap()[0])
            .collect();
        hits.sort_unstable();
        hits.dedup();
        assert_eq!(
            hits,
            oracle_cuspidal(lv.gl2(), lv.unipotent(), q as i128 - 1).unwrap()
        );
    }
}

#[test]
fn sl2_parameters_separate() {
    for q in [3u32, 5] {
        let lv = level(q);
        let thetas: Vec<NormOneChar> = NormOneChar::all(lv.quad())
            .into_iter()
            .filter(|t| t.order() > 2)
            .collect();
        let chars: Vec<ClassFunction> = thetas
            .iter()
            .map(|t| lv.sl2_cuspidal(t).unwrap().chi)
            .collect();
        for (i, a) in thetas.iter().enumerate() {
            for (j, b) in thetas.iter().enumerate() {
                let same = b == a || *b == a.inverse();
                assert_eq!(
                    chars[i] == chars[j],
                    same,
                    "q={q} {} {}",
                    a.label(),
                    b.label()
                );
            }
            assert_eq!(oracle_matches(&chars[i]).unwrap().len(), 1);
        }
    }
}

#[test]
fn u2_parameters_separate() {
    for q in [3u32, 5] {
        let quad = QuadExt::new(q, 1).unwrap();
        let un = Unitary::new(&quad, 10_000).unwrap();
        let all = NormOneChar::all(&quad);
        let mut pairs = Vec::new();
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                pairs.push((a.clone(), b.clone()));
            }
        }
        let chars: Vec<ClassFunction> = pairs
            .iter()
            .map(|(a, b)| un.u2_cuspidal(a, b).unwrap().chi)
            .collect();
        for i in 0..chars.len() {
            for j in 0..chars.len() {
                assert_eq!(chars[i] == chars[j], i == j, "q={q} pairs {i} {j}");
            }
        }
        let mut hits: Vec<usize> = chars
            .iter()
            .map(|c| oracle_matches(c).unwrap()[0])
            .collect();
        hits.sort_unstable();
        assert_eq!(
            hits,
            oracle_cuspidal(un.group(), un.unipotent(), q as i128 - 1).unwrap()
        );
        let a = &all[0];
        assert!(matches!(un.u2_cuspidal(a, a), Err(Error::NotRegular(_))));
    }
}

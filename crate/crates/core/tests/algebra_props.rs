use basechange::cyclo::gcd;
use basechange::ffield::{make_field, Embedding, Fe, MultChar, NormOneChar, QuadExt};
use basechange::{Cyclotomic, Error};
use proptest::prelude::*;

fn orders() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 7, 8, 9, 12, 15, 24])
}

fn unit_mod(n: i64) -> impl Strategy<Value = i64> {
    prop::sample::select(
        (1..n)
            .filter(|&k| gcd(k as i128, n as i128) == 1)
            .collect::<Vec<_>>(),
    )
}

fn cyc() -> impl Strategy<Value = Cyclotomic> {
    (
        orders(),
        prop::collection::vec((0i64..48, -4i128..5), 0..5),
        1i128..4,
    )
        .prop_map(|(n, terms, den)| Cyclotomic::from_exponents(n, terms).scale(1, den).unwrap())
}

#[test]
fn root_of_unity_examples() {
    assert_eq!(Cyclotomic::root_of_unity(1, 0), Cyclotomic::one());
    let z = Cyclotomic::root_of_unity(8, 2);
    assert_eq!(&z * &z, Cyclotomic::from_int(-1));
    let s = Cyclotomic::sum(&[
        Cyclotomic::root_of_unity(3, 0),
        Cyclotomic::root_of_unity(3, 1),
        Cyclotomic::root_of_unity(3, 2),
    ]);
    assert!(s.is_zero());
    assert_eq!(
        Cyclotomic::root_of_unity(5, 1).conj(),
        Cyclotomic::root_of_unity(5, 4)
    );
    assert_eq!(
        Cyclotomic::root_of_unity(7, 1).galois(2).unwrap(),
        Cyclotomic::root_of_unity(7, 2)
    );
    assert_eq!(
        Cyclotomic::root_of_unity(4, 1).inv().unwrap(),
        -&Cyclotomic::root_of_unity(4, 1)
    );
    assert_eq!(
        Cyclotomic::from_int(0).inv().unwrap_err(),
        Error::DivisionByZero
    );
    assert!(Cyclotomic::from_int(0).abs_square().is_zero());
    assert_eq!(
        Cyclotomic::root_of_unity(8, 1).abs_square(),
        Cyclotomic::one()
    );
    let one_plus_i = &Cyclotomic::one() + &Cyclotomic::root_of_unity(4, 1);
    assert_eq!(one_plus_i.abs_square(), Cyclotomic::from_int(2));
}

proptest! {
    #[test]
    fn ring_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn inverse_and_abs_square(a in cyc()) {
        if a.is_zero() {
            prop_assert!(a.abs_square().is_zero());
        } else {
            prop_assert_eq!(&a * &a.inv().unwrap(), Cyclotomic::one());
            prop_assert!(!a.abs_square().is_zero());
            prop_assert_eq!(a.abs_square().conj(), a.abs_square());
        }
    }

    #[test]
    fn galois_is_automorphism(a in cyc(), b in cyc(), k in unit_mod(2520), k2 in unit_mod(2520)) {
        let (a, b) = (a.promote(2520), b.promote(2520));
        prop_assert_eq!((&a * &b).galois(k).unwrap(), &a.galois(k).unwrap() * &b.galois(k).unwrap());
        prop_assert_eq!((&a + &b).galois(k).unwrap(), &a.galois(k).unwrap() + &b.galois(k).unwrap());
        prop_assert_eq!(a.galois(k).unwrap().galois(k2).unwrap(), a.galois((k * k2) % 2520).unwrap());
    }

    #[test]
    fn serialization_round_trips(a in cyc()) {
        let s = a.to_string();
        let back: Cyclotomic = s.parse().unwrap();
        prop_assert_eq!(back.to_string(), s);
        let json = serde_json::to_string(&a).unwrap();
        let back: Cyclotomic = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn field_axioms(idx in 0usize..6, x in 0u32..1024, y in 0u32..1024, z in 0u32..1024) {
        let (p, k) = [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 4)][idx];
        let f = make_field(p, k).unwrap();
        let n = f.size();
        let (x, y, z) = (Fe(x % n), Fe(y % n), Fe(z % n));
        prop_assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
        prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        prop_assert_eq!(f.sub(f.add(x, y), y), x);
        if x != f.zero() {
            prop_assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
            prop_assert_eq!(f.exp(f.log(x).unwrap() as i64), x);
        }
        prop_assert_eq!(f.parse(&f.format(x)).unwrap(), x);
        prop_assert_eq!(f.frobenius(f.add(x, y), 1), f.add(f.frobenius(x, 1), f.frobenius(y, 1)));
    }

    #[test]
    fn norm_and_trace_homomorphisms(idx in 0usize..3, x in 1u32..625, y in 1u32..625) {
        let (p, k, j) = [(3, 2, 1), (5, 2, 1), (3, 4, 2)][idx];
        let big = make_field(p, k).unwrap();
        let sub = make_field(p, j).unwrap();
        let e = Embedding::new(&big, &sub).unwrap();
        let n = big.size();
        let (x, y) = (Fe(x % n), Fe(y % n));
        prop_assume!(x != big.zero() && y != big.zero());
        prop_assert_eq!(e.norm(big.mul(x, y)), sub.mul(e.norm(x), e.norm(y)));
        prop_assert_eq!(e.trace(big.add(x, y)), sub.add(e.trace(x), e.trace(y)));
        prop_assert_eq!(e.down(e.up(e.norm(x))), Some(e.norm(x)));
    }

    #[test]
    fn characters_multiply(idx in 0usize..3, t in 0i64..48, u in 0i64..48, x in 1u32..49, y in 1u32..49) {
        let q = [3u32, 5, 7][idx];
        let quad = QuadExt::new(q, 1).unwrap();
        let l = quad.l();
        let n = l.size();
        let (x, y) = (Fe(x % n), Fe(y % n));
        prop_assume!(x != l.zero() && y != l.zero());
        let (a, b) = (MultChar::new(l, t), MultChar::new(l, u));
        prop_assert_eq!(a.value(l.mul(x, y)), &a.value(x) * &a.value(y));
        prop_assert_eq!(a.mul(&b).value(x), &a.value(x) * &b.value(x));
        prop_assert_eq!(a.compose_gamma(q).value(x), a.value(quad.gamma(x)));
        let theta = NormOneChar::new(&quad, t);
        let u1 = l.pow(x, 1 - q as i64);
        prop_assert_eq!(theta.tilde().value(x), theta.value(u1).unwrap());
        for ext in theta.extensions() {
            prop_assert_eq!(ext.restrict_norm_one(&quad), theta.clone());
        }
        let (a0, b0) = quad.split(x);
        prop_assert_eq!(quad.from_split(a0, b0), x);
    }
}

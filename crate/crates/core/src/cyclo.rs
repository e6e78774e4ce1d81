//! Exact arithmetic in cyclotomic fields Q(ζ_n).
//!
//! An element is stored as an integer coefficient vector in the power basis
//! `1, ζ, …, ζ^{φ(n)−1}` together with a positive common denominator, both
//! reduced so that equal field elements of equal order have identical data.

use std::borrow::Cow;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const OVERFLOW: &str = "cyclotomic coefficient overflow";
const TABLE_LIMIT: usize = 1 << 22;

fn cadd(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect(OVERFLOW)
}

fn cmul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect(OVERFLOW)
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u32, b: u32) -> u32 {
    let g = gcd(a as i128, b as i128) as u32;
    a / g * b
}

pub fn euler_phi(n: u32) -> u32 {
    let (mut m, mut r, mut p) = (n, n, 2u32);
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if m > 1 {
        r -= r / m;
    }
    r
}

fn mobius(n: u32) -> i32 {
    let (mut m, mut s, mut p) = (n, 1, 2u32);
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            s = -s;
        }
        p += 1;
    }
    if m > 1 {
        s = -s;
    }
    s
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut r = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = cadd(r[i + j], cmul(x, y));
        }
    }
    r
}

/// Exact division by a monic polynomial; the remainder must vanish.
fn poly_div_exact(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i128; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db];
        q[i] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] -= cmul(c, bj);
            }
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

fn cyclotomic_poly(n: u32) -> Vec<i128> {
    let mut num = vec![1i128];
    let mut den = vec![1i128];
    for d in 1..=n {
        if !n.is_multiple_of(d) {
            continue;
        }
        let mut f = vec![0i128; d as usize + 1];
        f[0] = -1;
        f[d as usize] = 1;
        match mobius(n / d) {
            1 => num = poly_mul(&num, &f),
            -1 => den = poly_mul(&den, &f),
            _ => {}
        }
    }
    poly_div_exact(&num, &den)
}

/// Per-order data: Φ_n and the reduced monomials x^k for 0 ≤ k < n.
pub(crate) struct Ctx {
    n: u32,
    phi: usize,
    poly: Vec<i128>,
    powers: Option<Vec<Vec<i128>>>,
}

impl Ctx {
    fn build(n: u32) -> Ctx {
        let poly = cyclotomic_poly(n);
        let phi = poly.len() - 1;
        let mut ctx = Ctx {
            n,
            phi,
            poly,
            powers: None,
        };
        if (n as usize) * phi <= TABLE_LIMIT {
            let mut cur = vec![0i128; phi];
            cur[0] = 1;
            let mut table = Vec::with_capacity(n as usize);
            for _ in 0..n {
                table.push(cur.clone());
                cur = ctx.shift(&cur);
            }
            ctx.powers = Some(table);
        }
        ctx
    }

    fn shift(&self, v: &[i128]) -> Vec<i128> {
        let carry = v[self.phi - 1];
        let mut out = vec![0i128; self.phi];
        for j in (1..self.phi).rev() {
            out[j] = v[j - 1];
        }
        if carry != 0 {
            for j in 0..self.phi {
                out[j] -= cmul(carry, self.poly[j]);
            }
        }
        out
    }

    fn monomial(&self, k: u64) -> Cow<'_, [i128]> {
        let k = (k % self.n as u64) as usize;
        if let Some(t) = &self.powers {
            return Cow::Borrowed(&t[k]);
        }
        let mut cur = vec![0i128; self.phi];
        if k < self.phi {
            cur[k] = 1;
            return Cow::Owned(cur);
        }
        cur[self.phi - 1] = 1;
        for _ in self.phi - 1..k {
            cur = self.shift(&cur);
        }
        Cow::Owned(cur)
    }

    /// Reduce a coefficient vector of arbitrary length modulo Φ_n.
    fn reduce(&self, mut r: Vec<i128>) -> Vec<i128> {
        let phi = self.phi;
        if r.len() > phi {
            for deg in (phi..r.len()).rev() {
                let c = r[deg];
                if c == 0 {
                    continue;
                }
                r[deg] = 0;
                for j in 0..phi {
                    let idx = deg - phi + j;
                    r[idx] = cadd(r[idx], -cmul(c, self.poly[j]));
                }
            }
            r.truncate(phi);
        } else {
            r.resize(phi, 0);
        }
        r
    }
}

fn ctx(n: u32) -> Arc<Ctx> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Ctx>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(c) = cache.read().expect("cyclotomic cache poisoned").get(&n) {
        return Arc::clone(c);
    }
    let built = Arc::new(Ctx::build(n));
    let mut w = cache.write().expect("cyclotomic cache poisoned");
    Arc::clone(w.entry(n).or_insert(built))
}

/// An exact element of Q(ζ_n).
#[derive(Clone)]
pub struct Cyclotomic {
    ctx: Arc<Ctx>,
    num: Vec<i128>,
    den: i128,
}

impl Cyclotomic {
    fn from_parts(ctx: Arc<Ctx>, num: Vec<i128>, den: i128) -> Cyclotomic {
        let mut c = Cyclotomic { ctx, num, den };
        c.normalize();
        c
    }

    fn normalize(&mut self) {
        assert!(self.den != 0, "zero denominator");
        if self.num.iter().all(|&x| x == 0) {
            self.den = 1;
            return;
        }
        let mut g = self.den;
        for &x in &self.num {
            g = gcd(g, x);
            if g == 1 {
                break;
            }
        }
        if self.den < 0 {
            g = -g;
        }
        if g != 1 {
            for x in &mut self.num {
                *x /= g;
            }
            self.den /= g;
        }
    }

    pub fn zero(n: u32) -> Cyclotomic {
        let c = ctx(n);
        let phi = c.phi;
        Cyclotomic {
            ctx: c,
            num: vec![0; phi],
            den: 1,
        }
    }

    pub fn one() -> Cyclotomic {
        Cyclotomic::from_int(1)
    }

    pub fn from_int(v: i128) -> Cyclotomic {
        Cyclotomic {
            ctx: ctx(1),
            num: vec![v],
            den: 1,
        }
    }

    pub fn from_ratio(p: i128, q: i128) -> Result<Cyclotomic> {
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Cyclotomic::from_parts(ctx(1), vec![p], q))
    }

    /// ζ_n^k.
    pub fn root_of_unity(n: u32, k: i64) -> Cyclotomic {
        assert!(n >= 1, "order must be positive");
        let c = ctx(n);
        let e = k.rem_euclid(n as i64) as u64;
        let num = c.monomial(e).into_owned();
        Cyclotomic {
            ctx: c,
            num,
            den: 1,
        }
    }

    /// Σ mult·ζ_n^k over the given (k, mult) pairs.
    pub fn from_exponents<I>(n: u32, terms: I) -> Cyclotomic
    where
        I: IntoIterator<Item = (i64, i128)>,
    {
        let c = ctx(n);
        let mut acc = vec![0i128; n as usize];
        for (k, m) in terms {
            let e = k.rem_euclid(n as i64) as usize;
            acc[e] = cadd(acc[e], m);
        }
        let mut num = vec![0i128; c.phi];
        for (e, &m) in acc.iter().enumerate() {
            if m == 0 {
                continue;
            }
            for (dst, &src) in num.iter_mut().zip(c.monomial(e as u64).iter()) {
                *dst = cadd(*dst, cmul(m, src));
            }
        }
        Cyclotomic::from_parts(c, num, 1)
    }

    pub fn order(&self) -> u32 {
        self.ctx.n
    }

    /// Numerators over the common denominator, in the power basis.
    pub fn coeffs(&self) -> Vec<(i128, i128)> {
        self.num
            .iter()
            .map(|&x| {
                let g = gcd(x, self.den).max(1);
                (x / g, self.den / g)
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&x| x == 0)
    }

    pub fn is_one(&self) -> bool {
        self.den == 1 && self.num[0] == 1 && self.num[1..].iter().all(|&x| x == 0)
    }

    /// The value as a reduced fraction when it is rational.
    pub fn to_rational(&self) -> Option<(i128, i128)> {
        if self.num[1..].iter().any(|&x| x != 0) {
            return None;
        }
        let g = gcd(self.num[0], self.den).max(1);
        Some((self.num[0] / g, self.den / g))
    }

    pub fn to_integer(&self) -> Option<i128> {
        match self.to_rational() {
            Some((p, 1)) => Some(p),
            _ => None,
        }
    }

    /// Re-express in Q(ζ_m) for a multiple m of the current order.
    pub fn promote(&self, m: u32) -> Cyclotomic {
        let n = self.ctx.n;
        if m == n {
            return self.clone();
        }
        assert!(m.is_multiple_of(n), "promotion target {m} is not a multiple of {n}");
        let c = ctx(m);
        let step = (m / n) as u64;
        let mut num = vec![0i128; c.phi];
        for (i, &a) in self.num.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (dst, &src) in num.iter_mut().zip(c.monomial(i as u64 * step).iter()) {
                *dst = cadd(*dst, cmul(a, src));
            }
        }
        Cyclotomic {
            ctx: c,
            num,
            den: self.den,
        }
    }

    fn aligned<'a>(
        a: &'a Cyclotomic,
        b: &'a Cyclotomic,
    ) -> (Cow<'a, Cyclotomic>, Cow<'a, Cyclotomic>) {
        if a.ctx.n == b.ctx.n {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let m = lcm(a.ctx.n, b.ctx.n);
        let pa = if a.ctx.n == m {
            Cow::Borrowed(a)
        } else {
            Cow::Owned(a.promote(m))
        };
        let pb = if b.ctx.n == m {
            Cow::Borrowed(b)
        } else {
            Cow::Owned(b.promote(m))
        };
        (pa, pb)
    }

    fn add_ref(&self, other: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::aligned(self, other);
        let (num, den) = if a.den == b.den {
            (
                a.num
                    .iter()
                    .zip(&b.num)
                    .map(|(&x, &y)| cadd(x, y))
                    .collect(),
                a.den,
            )
        } else {
            let num = a
                .num
                .iter()
                .zip(&b.num)
                .map(|(&x, &y)| cadd(cmul(x, b.den), cmul(y, a.den)))
                .collect();
            (num, cmul(a.den, b.den))
        };
        Cyclotomic::from_parts(Arc::clone(&a.ctx), num, den)
    }

    fn mul_ref(&self, other: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::aligned(self, other);
        if a.is_zero() || b.is_zero() {
            return Cyclotomic::zero(a.ctx.n);
        }
        let raw = poly_mul(&a.num, &b.num);
        let num = a.ctx.reduce(raw);
        Cyclotomic::from_parts(Arc::clone(&a.ctx), num, cmul(a.den, b.den))
    }

    pub fn scale(&self, p: i128, q: i128) -> Result<Cyclotomic> {
        if q == 0 {
            return Err(Error::DivisionByZero);
        }
        let num = self.num.iter().map(|&x| cmul(x, p)).collect();
        Ok(Cyclotomic::from_parts(
            Arc::clone(&self.ctx),
            num,
            cmul(self.den, q),
        ))
    }

    /// The automorphism ζ ↦ ζ^k; requires gcd(k, n) = 1.
    pub fn galois(&self, k: i64) -> Result<Cyclotomic> {
        let n = self.ctx.n as i64;
        let k = k.rem_euclid(n);
        if gcd(k as i128, n as i128) != 1 && n != 1 {
            return Err(Error::InvalidParameter(format!(
                "galois exponent {k} not coprime to {n}"
            )));
        }
        let mut num = vec![0i128; self.ctx.phi];
        for (i, &a) in self.num.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let e = (i as u64 * k as u64) % n as u64;
            for (dst, &src) in num.iter_mut().zip(self.ctx.monomial(e).iter()) {
                *dst = cadd(*dst, cmul(a, src));
            }
        }
        Ok(Cyclotomic::from_parts(Arc::clone(&self.ctx), num, self.den))
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Cyclotomic {
        self.galois(-1).expect("−1 is a unit")
    }

    pub fn abs_square(&self) -> Cyclotomic {
        self * &self.conj()
    }

    /// Multiplicative inverse through the product of the nontrivial conjugates.
    pub fn inv(&self) -> Result<Cyclotomic> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.ctx.n as i64;
        let mut others = Cyclotomic::one();
        for k in 2..n {
            if gcd(k as i128, n as i128) == 1 {
                others = &others * &self.galois(k)?;
            }
        }
        let norm = self * &others;
        let (p, q) = norm.to_rational().expect("field norm is rational");
        others.scale(q, p)
    }

    pub fn pow(&self, e: i64) -> Result<Cyclotomic> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Cyclotomic::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn div(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        Ok(self * &other.inv()?)
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a Cyclotomic>>(items: I) -> Cyclotomic {
        items
            .into_iter()
            .fold(Cyclotomic::from_int(0), |acc, x| &acc + x)
    }

    /// Floating-point shadow (re, im) for debugging output only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.ctx.n as f64;
        let (mut re, mut im) = (0.0, 0.0);
        for (i, &a) in self.num.iter().enumerate() {
            let ang = 2.0 * std::f64::consts::PI * i as f64 / n;
            let c = a as f64 / self.den as f64;
            re += c * ang.cos();
            im += c * ang.sin();
        }
        (re, im)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Cyclotomic) -> bool {
        let (a, b) = Cyclotomic::aligned(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cyc({})[", self.ctx.n)?;
        for (i, (p, q)) in self.coeffs().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if q == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}/{q}")?;
            }
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str) -> Result<(i128, i128)> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i128 = p.trim().parse().map_err(|_| bad())?;
            let q: i128 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(Error::DivisionByZero);
            }
            Ok((p, q))
        }
        None => Ok((s.trim().parse().map_err(|_| bad())?, 1)),
    }
}

impl FromStr for Cyclotomic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Cyclotomic> {
        let bad = |m: &str| Error::Parse(format!("{m}: {s:?}"));
        let rest = s
            .trim()
            .strip_prefix("cyc(")
            .ok_or_else(|| bad("missing cyc("))?;
        let (n, rest) = rest.split_once(')').ok_or_else(|| bad("missing )"))?;
        let n: u32 = n.trim().parse().map_err(|_| bad("bad order"))?;
        if n == 0 {
            return Err(bad("order must be positive"));
        }
        let body = rest
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| bad("missing brackets"))?;
        let c = ctx(n);
        let parts: Vec<&str> = if body.trim().is_empty() {
            vec![]
        } else {
            body.split(',').collect()
        };
        if parts.len() != c.phi {
            return Err(bad(&format!("expected {} coefficients", c.phi)));
        }
        let fracs = parts
            .iter()
            .map(|p| parse_rational(p))
            .collect::<Result<Vec<_>>>()?;
        let mut den = 1i128;
        for &(_, q) in &fracs {
            den = cmul(den / gcd(den, q), q.abs());
        }
        let num = fracs.iter().map(|&(p, q)| cmul(p, den / q)).collect();
        Ok(Cyclotomic::from_parts(c, num, den))
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Cyclotomic, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.add_ref(rhs)
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.add_ref(&-rhs)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.mul_ref(rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            ctx: Arc::clone(&self.ctx),
            num: self.num.iter().map(|&x| -x).collect(),
            den: self.den,
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(105).len() - 1, 48);
        assert!(cyclotomic_poly(105).contains(&-2));
    }

    #[test]
    fn identity_and_vanishing_sums() {
        assert!(z(1, 0).is_one());
        assert_eq!(&z(8, 2) * &z(8, 2), Cyclotomic::from_int(-1));
        assert!((z(3, 0) + z(3, 1) + z(3, 2)).is_zero());
        assert!(Cyclotomic::from_exponents(12, (0..12).map(|k| (k, 1))).is_zero());
    }

    #[test]
    fn conj_galois_inverse() {
        assert_eq!(z(5, 1).conj(), z(5, 4));
        assert_eq!(z(7, 1).galois(2).unwrap(), z(7, 2));
        assert_eq!(z(4, 1).inv().unwrap(), -z(4, 1));
        assert!(z(6, 1).galois(3).is_err());
        assert_eq!(Cyclotomic::zero(5).inv(), Err(Error::DivisionByZero));
        let x = z(7, 1) + z(7, 3) + Cyclotomic::from_int(2);
        assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn abs_square_examples() {
        assert!(Cyclotomic::zero(3).abs_square().is_zero());
        assert!(z(8, 1).abs_square().is_one());
        assert_eq!((z(4, 0) + z(4, 1)).abs_square(), Cyclotomic::from_int(2));
    }

    #[test]
    fn mixed_orders_promote() {
        let s = &z(3, 1) + &z(4, 1);
        assert_eq!(s.order(), 12);
        assert_eq!(z(6, 2), z(3, 1));
        assert_eq!(z(2, 1), Cyclotomic::from_int(-1));
    }

    #[test]
    fn serialization_round_trip() {
        let x = (z(8, 1) + z(8, 3).scale(3, 4).unwrap())
            .scale(-1, 6)
            .unwrap();
        let s = x.to_string();
        assert_eq!(s, "cyc(8)[0,-1/6,0,-1/8]");
        let y: Cyclotomic = s.parse().unwrap();
        assert_eq!(x, y);
        assert_eq!(y.to_string(), s);
        assert_eq!(Cyclotomic::from_int(0).to_string(), "cyc(1)[0]");
        assert!("cyc(8)[1,2]".parse::<Cyclotomic>().is_err());
        assert!("cyc(0)[]".parse::<Cyclotomic>().is_err());
    }

    #[test]
    fn float_shadow() {
        let (re, im) = z(4, 1).to_complex();
        assert!(re.abs() < 1e-12 && (im - 1.0).abs() < 1e-12);
    }
}

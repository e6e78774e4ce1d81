//! Finite fields GF(p^k) with table arithmetic, subfield embeddings,
//! quadratic pairs ℓ/k0 and their character groups.
//!
//! Elements are `Fe` ranks: the coefficient tuple `[c0, …, c_{k−1}]` read as
//! a base-p numeral with `c0` most significant, so rank order is the
//! lexicographic order of coefficient tuples.

use std::fmt;
use std::sync::Arc;

use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};

const MAX_FIELD: u32 = 1024;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Fe(pub u32);

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomials over GF(p), coefficients low to high, trimmed.
mod poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let (mut b, mut e) = (a as u64 % p as u64, p as u64 - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
                .collect(),
        )
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while r.len() > dm {
            let d = r.len() - 1;
            let c = (r[d] as u64 * lead_inv as u64 % p as u64) as u32;
            for (j, &mj) in m.iter().enumerate() {
                let idx = d - dm + j;
                r[idx] = ((r[idx] as u64 + (p - c) as u64 * mj as u64) % p as u64) as u32;
            }
            r = trim(r);
        }
        r
    }

    pub fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        rem(&r.into_iter().map(|x| x as u32).collect::<Vec<_>>(), m, p)
    }

    pub fn pow_mod(a: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut acc = rem(&[1], m, p);
        let mut base = rem(a, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &base, m, p);
            }
            base = mul_mod(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }
}

/// A finite field GF(p^k) with precomputed addition, log and exp tables.
pub struct Field {
    p: u32,
    k: u32,
    size: u32,
    modulus: Vec<u32>,
    add: Vec<u16>,
    neg: Vec<u16>,
    exp: Vec<u16>,
    log: Vec<u32>,
    gen: Fe,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.k)
    }
}

fn rank_to_coeffs(rank: u32, p: u32, k: u32) -> Vec<u32> {
    let mut out = vec![0; k as usize];
    let mut r = rank;
    for i in (0..k as usize).rev() {
        out[i] = r % p;
        r /= p;
    }
    out
}

fn coeffs_to_rank(c: &[u32], p: u32) -> u32 {
    c.iter().fold(0, |acc, &x| acc * p + x)
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    if k <= 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut h = x.clone();
    for _ in 1..=k / 2 {
        h = poly::pow_mod(&h, p as u64, f, p);
        let g = poly::gcd(f, &poly::sub(&h, &x, p), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// GF(p^k) with the lexicographically least monic irreducible modulus and
/// the least generator of the multiplicative group.
pub fn make_field(p: u32, k: u32) -> Result<Arc<Field>> {
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("degree must be positive".into()));
    }
    let size = (p as u64)
        .checked_pow(k)
        .filter(|&s| s <= MAX_FIELD as u64)
        .ok_or_else(|| {
            Error::InvalidParameter(format!("GF({p}^{k}) exceeds table limit {MAX_FIELD}"))
        })? as u32;
    let modulus = (0..size)
        .map(|r| rank_to_coeffs(r, p, k))
        .find(|c| {
            let mut f = c.clone();
            f.push(1);
            is_irreducible(&f, p)
        })
        .expect("an irreducible polynomial exists in every degree");
    let mut full = modulus.clone();
    full.push(1);

    let as_poly = |r: u32| poly::trim(rank_to_coeffs(r, p, k));
    let from_poly = |v: &[u32]| {
        let mut c = v.to_vec();
        c.resize(k as usize, 0);
        coeffs_to_rank(&c, p)
    };

    let n = size as usize;
    let mut add = vec![0u16; n * n];
    for a in 0..size {
        let ca = rank_to_coeffs(a, p, k);
        for b in 0..size {
            let cb = rank_to_coeffs(b, p, k);
            let s: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
            add[a as usize * n + b as usize] = coeffs_to_rank(&s, p) as u16;
        }
    }
    let neg = (0..size)
        .map(|a| {
            let c: Vec<u32> = rank_to_coeffs(a, p, k)
                .iter()
                .map(|&x| (p - x) % p)
                .collect();
            coeffs_to_rank(&c, p) as u16
        })
        .collect();

    let order = (size - 1) as u64;
    let factors = prime_factors(order);
    let one = poly::rem(&[1], &full, p);
    let gen = (1..size)
        .find(|&r| {
            let g = as_poly(r);
            factors
                .iter()
                .all(|&f| poly::pow_mod(&g, order / f, &full, p) != one)
        })
        .expect("multiplicative group is cyclic");

    let mut exp = Vec::with_capacity(order as usize);
    let mut log = vec![u32::MAX; n];
    let g = as_poly(gen);
    let mut cur = one.clone();
    for j in 0..order as u32 {
        let r = from_poly(&cur);
        exp.push(r as u16);
        log[r as usize] = j;
        cur = poly::mul_mod(&cur, &g, &full, p);
    }
    Ok(Arc::new(Field {
        p,
        k,
        size,
        modulus,
        add,
        neg,
        exp,
        log,
        gen: Fe(gen),
    }))
}

impl Field {
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn size(&self) -> u32 {
        self.size
    }
    /// Modulus coefficients c0..c_{k−1}; the leading 1 is implicit.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn zero(&self) -> Fe {
        Fe(0)
    }
    pub fn one(&self) -> Fe {
        self.exp[0].into()
    }
    pub fn gen(&self) -> Fe {
        self.gen
    }
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.size).map(Fe)
    }
    pub fn units(&self) -> impl Iterator<Item = Fe> {
        (1..self.size).map(Fe)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        self.add[a.0 as usize * self.size as usize + b.0 as usize].into()
    }
    pub fn neg(&self, a: Fe) -> Fe {
        self.neg[a.0 as usize].into()
    }
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe(0);
        }
        let m = self.size - 1;
        let e = (self.log[a.0 as usize] + self.log[b.0 as usize]) % m;
        self.exp[e as usize].into()
    }
    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let m = self.size - 1;
        Ok(self.exp[((m - self.log[a.0 as usize]) % m) as usize].into())
    }
    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }
    pub fn pow(&self, a: Fe, e: i64) -> Fe {
        if a.0 == 0 {
            assert!(e > 0, "zero to a non-positive power");
            return Fe(0);
        }
        let m = (self.size - 1) as i64;
        let le = (self.log[a.0 as usize] as i64 * e.rem_euclid(m)).rem_euclid(m);
        self.exp[le as usize].into()
    }
    /// Discrete logarithm to the fixed generator.
    pub fn log(&self, a: Fe) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }
    pub fn exp(&self, j: i64) -> Fe {
        let m = (self.size - 1) as i64;
        self.exp[j.rem_euclid(m) as usize].into()
    }
    /// Image of an integer under Z → GF(p) ⊂ GF(p^k).
    pub fn from_int(&self, v: i64) -> Fe {
        let mut c = vec![0; self.k as usize];
        c[0] = v.rem_euclid(self.p as i64) as u32;
        Fe(coeffs_to_rank(&c, self.p))
    }
    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        rank_to_coeffs(a.0, self.p, self.k)
    }
    pub fn from_coeffs(&self, c: &[u32]) -> Result<Fe> {
        if c.len() != self.k as usize || c.iter().any(|&x| x >= self.p) {
            return Err(Error::InvalidParameter(format!(
                "bad coefficient tuple {c:?}"
            )));
        }
        Ok(Fe(coeffs_to_rank(c, self.p)))
    }
    /// `[c0,...,c_{k-1}]`.
    pub fn format(&self, a: Fe) -> String {
        let parts: Vec<String> = self.coeffs(a).iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
    pub fn parse(&self, s: &str) -> Result<Fe> {
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("field element {s:?}")))?;
        let c = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("field element {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.from_coeffs(&c)
    }
    pub fn frobenius(&self, a: Fe, times: u32) -> Fe {
        let mut r = a;
        for _ in 0..times {
            r = self.pow(r, self.p as i64);
        }
        r
    }
    pub fn mult_order(&self, a: Fe) -> Option<u32> {
        let l = self.log(a)?;
        let m = self.size - 1;
        Some(m / crate::cyclo::gcd(l as i128, m as i128) as u32)
    }
    pub fn is_square(&self, a: Fe) -> bool {
        self.log(a).is_none_or(|l| l % 2 == 0)
    }
}

impl From<u16> for Fe {
    fn from(v: u16) -> Fe {
        Fe(v as u32)
    }
}

/// A fixed embedding GF(p^j) → GF(p^k), sending the subfield's defining
/// variable to the least root of its modulus.
#[derive(Debug)]
pub struct Embedding {
    sub: Arc<Field>,
    big: Arc<Field>,
    up: Vec<Fe>,
    down: Vec<Option<Fe>>,
}

impl Embedding {
    pub fn new(big: &Arc<Field>, sub: &Arc<Field>) -> Result<Embedding> {
        if big.p != sub.p || !big.k.is_multiple_of(sub.k) {
            return Err(Error::NotSubfield(format!("{sub:?} in {big:?}")));
        }
        let eval = |x: Fe| {
            let mut acc = big.one();
            for &c in sub.modulus.iter().rev() {
                acc = big.add(big.mul(acc, x), big.from_int(c as i64));
            }
            acc
        };
        let root = big
            .elements()
            .find(|&x| eval(x) == big.zero())
            .expect("subfield modulus splits");
        let mut up = Vec::with_capacity(sub.size as usize);
        let mut down = vec![None; big.size as usize];
        for s in sub.elements() {
            let mut acc = big.zero();
            let mut pw = big.one();
            for &c in &sub.coeffs(s) {
                acc = big.add(acc, big.mul(big.from_int(c as i64), pw));
                pw = big.mul(pw, root);
            }
            up.push(acc);
            down[acc.0 as usize] = Some(s);
        }
        Ok(Embedding {
            sub: Arc::clone(sub),
            big: Arc::clone(big),
            up,
            down,
        })
    }

    pub fn sub(&self) -> &Arc<Field> {
        &self.sub
    }
    pub fn big(&self) -> &Arc<Field> {
        &self.big
    }
    pub fn up(&self, s: Fe) -> Fe {
        self.up[s.0 as usize]
    }
    pub fn down(&self, x: Fe) -> Option<Fe> {
        self.down[x.0 as usize]
    }
    pub fn contains(&self, x: Fe) -> bool {
        self.down(x).is_some()
    }

    /// Product of the Frobenius orbit of x over the subfield.
    pub fn norm(&self, x: Fe) -> Fe {
        if x.0 == 0 {
            return self.sub.zero();
        }
        let e = (self.big.size - 1) / (self.sub.size - 1);
        self.down(self.big.pow(x, e as i64))
            .expect("norm lies in the subfield")
    }

    /// Sum of the Frobenius orbit of x over the subfield.
    pub fn trace(&self, x: Fe) -> Fe {
        let m = self.big.k / self.sub.k;
        let mut acc = self.big.zero();
        let mut cur = x;
        for _ in 0..m {
            acc = self.big.add(acc, cur);
            cur = self.big.frobenius(cur, self.sub.k);
        }
        self.down(acc).expect("trace lies in the subfield")
    }
}

/// A quadratic pair ℓ = GF(q²) over k0 = GF(q).
#[derive(Debug)]
pub struct QuadExt {
    q: u32,
    k0: Arc<Field>,
    l: Arc<Field>,
    emb: Embedding,
    nu: Fe,
    sqrt_nu: Fe,
    half_inv_sqrt_nu: Fe,
    one_gen: Fe,
}

impl QuadExt {
    pub fn new(p: u32, j: u32) -> Result<Arc<QuadExt>> {
        let k0 = make_field(p, j)?;
        let l = make_field(p, 2 * j)?;
        let emb = Embedding::new(&l, &k0)?;
        let nu = k0
            .units()
            .find(|&x| !k0.is_square(x))
            .expect("odd q has non-squares");
        let nu_l = emb.up(nu);
        let sqrt_nu = l
            .elements()
            .find(|&x| l.mul(x, x) == nu_l)
            .expect("ν is a square in ℓ");
        let two = l.from_int(2);
        let half_inv_sqrt_nu = l.inv(l.mul(two, sqrt_nu))?;
        let q = k0.size();
        let one_gen = l.pow(l.gen(), q as i64 - 1);
        Ok(Arc::new(QuadExt {
            q,
            k0,
            l,
            emb,
            nu,
            sqrt_nu,
            half_inv_sqrt_nu,
            one_gen,
        }))
    }

    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn k0(&self) -> &Arc<Field> {
        &self.k0
    }
    pub fn l(&self) -> &Arc<Field> {
        &self.l
    }
    pub fn embedding(&self) -> &Embedding {
        &self.emb
    }
    /// The least non-square of k0.
    pub fn nu(&self) -> Fe {
        self.nu
    }
    pub fn sqrt_nu(&self) -> Fe {
        self.sqrt_nu
    }
    /// γ(x) = x^q.
    pub fn gamma(&self, x: Fe) -> Fe {
        self.l.pow(x, self.q as i64)
    }
    pub fn norm(&self, x: Fe) -> Fe {
        self.emb.norm(x)
    }
    pub fn trace(&self, x: Fe) -> Fe {
        self.emb.trace(x)
    }
    pub fn up(&self, a: Fe) -> Fe {
        self.emb.up(a)
    }
    pub fn in_k0(&self, x: Fe) -> bool {
        self.emb.contains(x)
    }
    /// The fixed generator g^{q−1} of ℓ¹.
    pub fn norm_one_gen(&self) -> Fe {
        self.one_gen
    }
    /// ℓ¹ as h^0, h^1, …, h^q.
    pub fn norm_one_subgroup(&self) -> Vec<Fe> {
        (0..=self.q as i64)
            .map(|j| self.l.pow(self.one_gen, j))
            .collect()
    }
    /// j with x = h^j, for x ∈ ℓ¹.
    pub fn norm_one_log(&self, x: Fe) -> Option<u32> {
        let lg = self.l.log(x)?;
        (lg % (self.q - 1) == 0).then(|| lg / (self.q - 1))
    }
    /// (a, b) ∈ k0² with x = a + b√ν.
    pub fn split(&self, x: Fe) -> (Fe, Fe) {
        let l = &self.l;
        let xq = self.gamma(x);
        let half = l.inv(l.from_int(2)).expect("odd characteristic");
        let a = l.mul(l.add(x, xq), half);
        let b = l.mul(l.sub(x, xq), self.half_inv_sqrt_nu);
        (
            self.emb.down(a).expect("a ∈ k0"),
            self.emb.down(b).expect("b ∈ k0"),
        )
    }
    pub fn from_split(&self, a: Fe, b: Fe) -> Fe {
        self.l.add(self.up(a), self.l.mul(self.up(b), self.sqrt_nu))
    }
}

/// A character of ℓˣ (or any GF(p^k)ˣ): g^j ↦ ζ_{m}^{t j} with m = |Fˣ|.
#[derive(Clone)]
pub struct MultChar {
    field: Arc<Field>,
    t: u32,
}

impl MultChar {
    pub fn new(field: &Arc<Field>, t: i64) -> MultChar {
        let m = (field.size() - 1) as i64;
        MultChar {
            field: Arc::clone(field),
            t: t.rem_euclid(m) as u32,
        }
    }
    pub fn all(field: &Arc<Field>) -> Vec<MultChar> {
        (0..field.size() as i64 - 1)
            .map(|t| MultChar::new(field, t))
            .collect()
    }
    pub fn exponent(&self) -> u32 {
        self.t
    }
    pub fn group_order(&self) -> u32 {
        self.field.size() - 1
    }
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn value(&self, x: Fe) -> Cyclotomic {
        let j = self.field.log(x).expect("character evaluated at zero");
        Cyclotomic::root_of_unity(self.group_order(), self.t as i64 * j as i64)
    }
    pub fn mul(&self, other: &MultChar) -> MultChar {
        MultChar::new(&self.field, self.t as i64 + other.t as i64)
    }
    pub fn pow(&self, e: i64) -> MultChar {
        MultChar::new(&self.field, self.t as i64 * e)
    }
    pub fn order(&self) -> u32 {
        let m = self.group_order();
        m / crate::cyclo::gcd(self.t as i128, m as i128) as u32
    }
    /// χ ∘ γ for γ(x) = x^{q}, q = |k0|.
    pub fn compose_gamma(&self, q: u32) -> MultChar {
        self.pow(q as i64)
    }
    /// Regular means χ ≠ χ∘γ.
    pub fn is_regular(&self, q: u32) -> bool {
        self.compose_gamma(q).t != self.t
    }
    /// Restriction to ℓ¹ as a norm-one character.
    pub fn restrict_norm_one(&self, quad: &Arc<QuadExt>) -> NormOneChar {
        NormOneChar::new(quad, self.t as i64)
    }
    /// `(generator, exponent)`.
    pub fn label(&self) -> String {
        format!("({}, {})", self.field.format(self.field.gen()), self.t)
    }
}

impl PartialEq for MultChar {
    fn eq(&self, other: &MultChar) -> bool {
        Arc::ptr_eq(&self.field, &other.field) && self.t == other.t
    }
}

impl fmt::Debug for MultChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultChar{}", self.label())
    }
}

/// A character of ℓ¹: h^j ↦ ζ_{q+1}^{s j} for the fixed generator h.
#[derive(Clone)]
pub struct NormOneChar {
    quad: Arc<QuadExt>,
    s: u32,
}

impl NormOneChar {
    pub fn new(quad: &Arc<QuadExt>, s: i64) -> NormOneChar {
        NormOneChar {
            quad: Arc::clone(quad),
            s: s.rem_euclid(quad.q() as i64 + 1) as u32,
        }
    }
    pub fn all(quad: &Arc<QuadExt>) -> Vec<NormOneChar> {
        (0..=quad.q() as i64)
            .map(|s| NormOneChar::new(quad, s))
            .collect()
    }
    pub fn exponent(&self) -> u32 {
        self.s
    }
    pub fn quad(&self) -> &Arc<QuadExt> {
        &self.quad
    }
    pub fn value(&self, x: Fe) -> Result<Cyclotomic> {
        let j = self.quad.norm_one_log(x).ok_or_else(|| {
            Error::InvalidParameter(format!("{} is not in ℓ¹", self.quad.l().format(x)))
        })?;
        Ok(Cyclotomic::root_of_unity(
            self.quad.q() + 1,
            self.s as i64 * j as i64,
        ))
    }
    pub fn mul(&self, other: &NormOneChar) -> NormOneChar {
        NormOneChar::new(&self.quad, self.s as i64 + other.s as i64)
    }
    pub fn inverse(&self) -> NormOneChar {
        NormOneChar::new(&self.quad, -(self.s as i64))
    }
    /// On ℓ¹, θ∘γ = θ⁻¹, so regular ⇔ θ² ≠ 1.
    pub fn is_regular(&self) -> bool {
        !(2 * self.s).is_multiple_of(self.quad.q() + 1)
    }
    pub fn order(&self) -> u32 {
        let m = self.quad.q() + 1;
        m / crate::cyclo::gcd(self.s as i128, m as i128) as u32
    }
    /// θ̃(x) = θ(x·γ(x)⁻¹) = θ(x^{1−q}) as a character of ℓˣ.
    pub fn tilde(&self) -> MultChar {
        let q = self.quad.q() as i64;
        MultChar::new(self.quad.l(), -(self.s as i64) * (q - 1))
    }
    /// The q−1 characters of ℓˣ restricting to θ on ℓ¹.
    pub fn extensions(&self) -> Vec<MultChar> {
        let q = self.quad.q() as i64;
        (0..q - 1)
            .map(|i| MultChar::new(self.quad.l(), self.s as i64 + (q + 1) * i))
            .collect()
    }
    pub fn label(&self) -> String {
        let l = self.quad.l();
        format!("({}, {})", l.format(self.quad.norm_one_gen()), self.s)
    }
}

impl PartialEq for NormOneChar {
    fn eq(&self, other: &NormOneChar) -> bool {
        Arc::ptr_eq(&self.quad, &other.quad) && self.s == other.s
    }
}

impl fmt::Debug for NormOneChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormOneChar{}", self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields() {
        let f = make_field(3, 1).unwrap();
        assert_eq!(f.size(), 3);
        assert_eq!(f.gen(), Fe(2));
        assert_eq!(make_field(5, 1).unwrap().gen(), Fe(2));
        assert_eq!(make_field(7, 1).unwrap().gen(), Fe(3));
        assert_eq!(make_field(2, 1).unwrap_err(), Error::EvenCharacteristic);
        assert!(make_field(9, 1).is_err());
    }

    #[test]
    fn gf9_structure() {
        let f = make_field(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0]);
        assert_eq!(f.format(f.gen()), "[1,1]");
        assert_eq!(f.mult_order(f.gen()), Some(8));
        assert_eq!(f.format(f.one()), "[1,0]");
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), f.zero());
            if a != f.zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
        }
    }

    #[test]
    fn norm_and_trace_examples() {
        let quad = QuadExt::new(3, 1).unwrap();
        let l = quad.l();
        assert_eq!(quad.norm(l.gen()), Fe(2));
        assert_eq!(quad.norm(l.one()), quad.k0().one());
        assert_eq!(quad.trace(l.one()), Fe(2));
    }

    #[test]
    fn norm_one_groups() {
        for (p, n) in [(3, 4), (5, 6), (7, 8)] {
            let quad = QuadExt::new(p, 1).unwrap();
            let u = quad.norm_one_subgroup();
            assert_eq!(u.len(), n);
            let l = quad.l();
            assert!(u.contains(&l.one()) && u.contains(&l.neg(l.one())));
            for &x in &u {
                assert_eq!(quad.norm(x), quad.k0().one());
            }
        }
    }

    #[test]
    fn regular_character_counts() {
        let quad = QuadExt::new(3, 1).unwrap();
        let chars = NormOneChar::all(&quad);
        assert_eq!(chars.len(), 4);
        assert_eq!(chars.iter().filter(|c| c.is_regular()).count(), 2);
        assert!(!chars[0].is_regular());
        let mult = MultChar::all(quad.l());
        assert_eq!(
            mult.iter().filter(|c| c.is_regular(3)).count(),
            (9 - 1) - (3 - 1)
        );
    }

    #[test]
    fn split_round_trip() {
        let quad = QuadExt::new(5, 1).unwrap();
        for x in quad.l().elements() {
            let (a, b) = quad.split(x);
            assert_eq!(quad.from_split(a, b), x);
        }
        assert_eq!(quad.nu(), Fe(2));
    }

    #[test]
    fn tilde_and_extensions() {
        let quad = QuadExt::new(5, 1).unwrap();
        let l = quad.l();
        for th in NormOneChar::all(&quad) {
            let tt = th.tilde();
            for x in l.units() {
                let y = l.pow(x, 1 - 5);
                assert_eq!(tt.value(x), th.value(y).unwrap());
            }
            for ext in th.extensions() {
                for &h in &quad.norm_one_subgroup() {
                    assert_eq!(ext.value(h), th.value(h).unwrap());
                }
            }
        }
    }

    #[test]
    fn subfield_embedding_gf81() {
        let big = make_field(3, 4).unwrap();
        let sub = make_field(3, 2).unwrap();
        let emb = Embedding::new(&big, &sub).unwrap();
        for a in sub.elements() {
            for b in sub.elements() {
                assert_eq!(emb.up(sub.mul(a, b)), big.mul(emb.up(a), emb.up(b)));
                assert_eq!(emb.up(sub.add(a, b)), big.add(emb.up(a), emb.up(b)));
            }
        }
        assert!(Embedding::new(&sub, &big).is_err());
    }
}

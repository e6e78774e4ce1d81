//! Extraspecial p-groups, Heisenberg representations in the Schrödinger
//! model, and their extensions to a cyclic torus acting symplectically.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::cyclo::{gcd, Cyclotomic};
use crate::error::{Error, Result};
use crate::ffield::{make_field, QuadExt};
use crate::grpcore::modp::{nullspace, rref};
use crate::grpcore::{Carrier, Group, GroupTable};
use crate::rankone::{embed_quadratic_torus, Mat2Carrier};
use crate::verify::{Check, Report};

/// Square matrix over GF(p).
pub type FpMat = Vec<Vec<u32>>;

/// V = GF(p)^{2a} with coordinates (x₁, y₁, …, x_a, y_a) and
/// ⟨v, w⟩ = Σ xᵢ·w_{yᵢ} − yᵢ·w_{xᵢ}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticSpace {
    p: u32,
    a: u32,
}

impl SymplecticSpace {
    pub fn new(p: u32, a: u32) -> Result<SymplecticSpace> {
        make_field(p, 1)?;
        if a == 0 {
            return Err(Error::InvalidParameter("a must be positive".into()));
        }
        Ok(SymplecticSpace { p, a })
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn a(&self) -> u32 {
        self.a
    }
    pub fn dim(&self) -> usize {
        2 * self.a as usize
    }
    /// |V|.
    pub fn size(&self) -> usize {
        (self.p as usize).pow(2 * self.a)
    }
    /// p^a, the size of the Lagrangian L = span(x₁, …, x_a).
    pub fn lagrangian_size(&self) -> usize {
        (self.p as usize).pow(self.a)
    }
    pub fn half(&self) -> u32 {
        self.p.div_ceil(2)
    }
    pub fn vector(&self, idx: usize) -> Vec<u32> {
        let p = self.p as usize;
        let n = self.dim();
        (0..n)
            .map(|i| ((idx / p.pow((n - 1 - i) as u32)) % p) as u32)
            .collect()
    }
    pub fn index(&self, v: &[u32]) -> usize {
        v.iter()
            .fold(0, |acc, &x| acc * self.p as usize + x as usize)
    }
    pub fn add(&self, v: &[u32], w: &[u32]) -> Vec<u32> {
        v.iter().zip(w).map(|(x, y)| (x + y) % self.p).collect()
    }
    pub fn neg(&self, v: &[u32]) -> Vec<u32> {
        v.iter().map(|x| (self.p - x) % self.p).collect()
    }
    pub fn pair(&self, v: &[u32], w: &[u32]) -> u32 {
        let p = self.p as u64;
        let mut s = 0u64;
        for i in 0..self.a as usize {
            s +=
                v[2 * i] as u64 * w[2 * i + 1] as u64 + (p - v[2 * i + 1] as u64) * w[2 * i] as u64;
        }
        (s % p) as u32
    }
    pub fn gram(&self) -> FpMat {
        let n = self.dim();
        let mut g = vec![vec![0; n]; n];
        for i in 0..self.a as usize {
            g[2 * i][2 * i + 1] = 1;
            g[2 * i + 1][2 * i] = self.p - 1;
        }
        g
    }
    fn lagrangian_vector(&self, idx: usize) -> Vec<u32> {
        let p = self.p as usize;
        let a = self.a as usize;
        (0..a)
            .map(|i| ((idx / p.pow((a - 1 - i) as u32)) % p) as u32)
            .collect()
    }
    fn dot_y(&self, v: &[u32], u: &[u32]) -> u32 {
        (0..self.a as usize)
            .map(|i| v[2 * i + 1] as u64 * u[i] as u64)
            .sum::<u64>() as u32
            % self.p
    }
    fn dot_xy(&self, v: &[u32]) -> u32 {
        (0..self.a as usize)
            .map(|i| v[2 * i] as u64 * v[2 * i + 1] as u64)
            .sum::<u64>() as u32
            % self.p
    }
    pub fn apply(&self, m: &FpMat, v: &[u32]) -> Vec<u32> {
        m.iter()
            .map(|row| {
                (row.iter()
                    .zip(v)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum::<u64>()
                    % self.p as u64) as u32
            })
            .collect()
    }
    pub fn mat_mul(&self, x: &FpMat, y: &FpMat) -> FpMat {
        let n = x.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        ((0..n).map(|k| x[i][k] as u64 * y[k][j] as u64).sum::<u64>()
                            % self.p as u64) as u32
                    })
                    .collect()
            })
            .collect()
    }
    pub fn identity(&self) -> FpMat {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
            .collect()
    }
    pub fn preserves_form(&self, m: &FpMat) -> bool {
        let n = self.dim();
        let basis: Vec<Vec<u32>> = (0..n)
            .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
            .collect();
        basis.iter().all(|v| {
            basis
                .iter()
                .all(|w| self.pair(&self.apply(m, v), &self.apply(m, w)) == self.pair(v, w))
        })
    }
    /// Basis of {v : m·v = v}.
    pub fn fixed_space(&self, m: &FpMat) -> Vec<Vec<u32>> {
        let p = self.p as u64;
        let shifted: Vec<Vec<u64>> = m
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, &x)| (x as u64 + p - u64::from(i == j)) % p)
                    .collect()
            })
            .collect();
        nullspace(&shifted, p)
            .into_iter()
            .map(|v| v.into_iter().map(|x| x as u32).collect())
            .collect()
    }
    /// Rank of the form restricted to span(basis).
    pub fn restricted_rank(&self, basis: &[Vec<u32>]) -> usize {
        if basis.is_empty() {
            return 0;
        }
        let mut g: Vec<Vec<u64>> = basis
            .iter()
            .map(|v| basis.iter().map(|w| self.pair(v, w) as u64).collect())
            .collect();
        rref(&mut g, self.p as u64).len()
    }
}

/// Elements (v, z) with (v, z)(v′, z′) = (v + v′, z + z′ + ½⟨v, v′⟩), coded as
/// index(v)·p + z.
#[derive(Debug, Clone)]
pub struct ExtraspecialGroup {
    space: SymplecticSpace,
}

impl ExtraspecialGroup {
    pub fn space(&self) -> &SymplecticSpace {
        &self.space
    }
    pub fn order(&self) -> usize {
        self.space.size() * self.space.p as usize
    }
    pub fn encode(&self, v: &[u32], z: u32) -> u64 {
        (self.space.index(v) * self.space.p as usize + z as usize) as u64
    }
    pub fn decode(&self, c: u64) -> (Vec<u32>, u32) {
        let p = self.space.p as u64;
        (self.space.vector((c / p) as usize), (c % p) as u32)
    }
    /// The enumerated group table.
    pub fn group(self: &Arc<Self>, bound: usize) -> Result<Arc<Group>> {
        let codes = (0..self.order() as u64).collect();
        let name = format!("E({}^{})", self.space.p, 2 * self.space.a + 1);
        Ok(Group::new(
            name,
            GroupTable::from_codes(Arc::clone(self) as Arc<dyn Carrier>, codes, bound)?,
        ))
    }
}

impl Carrier for ExtraspecialGroup {
    fn mul(&self, a: u64, b: u64) -> u64 {
        let s = &self.space;
        let (v, z) = self.decode(a);
        let (w, y) = self.decode(b);
        let c = (z + y + s.half() * s.pair(&v, &w)) % s.p;
        self.encode(&s.add(&v, &w), c)
    }
    fn inv(&self, a: u64) -> u64 {
        let (v, z) = self.decode(a);
        self.encode(&self.space.neg(&v), (self.space.p - z) % self.space.p)
    }
    fn identity(&self) -> u64 {
        0
    }
    fn key(&self, a: u64) -> String {
        let (v, z) = self.decode(a);
        format!("({v:?},{z})")
    }
}

/// Rejects even p and checks nondegeneracy of the pairing exhaustively.
pub fn build_extraspecial(p: u32, a: u32) -> Result<Arc<ExtraspecialGroup>> {
    let space = SymplecticSpace::new(p, a)?;
    for i in 1..space.size() {
        let v = space.vector(i);
        if (0..space.size()).all(|j| space.pair(&v, &space.vector(j)) == 0) {
            return Err(Error::InvalidParameter(format!(
                "pairing degenerate at {v:?}"
            )));
        }
    }
    Ok(Arc::new(ExtraspecialGroup { space }))
}

/// How the torus generator is realized when a = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Realization {
    Split,
    Nonsplit,
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Realization::Split => "split",
            Realization::Nonsplit => "nonsplit",
        })
    }
}

impl FromStr for Realization {
    type Err = Error;
    fn from_str(s: &str) -> Result<Realization> {
        match s {
            "split" => Ok(Realization::Split),
            "nonsplit" => Ok(Realization::Nonsplit),
            _ => Err(Error::Parse(format!("realization {s:?}"))),
        }
    }
}

/// A symplectic automorphism t of order d satisfying (H).
#[derive(Debug, Clone)]
pub struct TorusAction {
    space: SymplecticSpace,
    d: u32,
    powers: Vec<FpMat>,
}

impl TorusAction {
    pub fn new(space: &SymplecticSpace, t: FpMat, d: u32) -> Result<TorusAction> {
        let n = space.dim();
        if t.len() != n
            || t.iter()
                .any(|r| r.len() != n || r.iter().any(|&x| x >= space.p))
        {
            return Err(Error::InvalidParameter(format!(
                "torus generator must be {n}×{n} over GF({})",
                space.p
            )));
        }
        if d == 0 || gcd(d as i128, space.p as i128) != 1 {
            return Err(Error::InvalidParameter(format!(
                "d = {d} must be positive and prime to p = {}",
                space.p
            )));
        }
        if !space.preserves_form(&t) {
            return Err(Error::InvalidParameter(
                "torus generator is not symplectic".into(),
            ));
        }
        let mut powers = vec![space.identity()];
        for _ in 1..=d {
            let next = space.mat_mul(powers.last().expect("nonempty"), &t);
            powers.push(next);
        }
        if powers[d as usize] != space.identity() {
            return Err(Error::InvalidParameter(format!("t^{d} ≠ 1")));
        }
        powers.truncate(d as usize);
        for (j, m) in powers.iter().enumerate().skip(1) {
            let fixed = space.fixed_space(m);
            if !fixed.is_empty() {
                return Err(Error::HypothesisH(format!(
                    "t^{j} fixes a {}-dimensional subspace",
                    fixed.len()
                )));
            }
        }
        Ok(TorusAction {
            space: space.clone(),
            d,
            powers,
        })
    }

    /// a = 1 realizations: diag(c, c⁻¹) with c of order d | p−1, or i(y) with
    /// y ∈ ℓ¹ of order d | p+1.
    pub fn realize(p: u32, d: u32, how: Realization) -> Result<TorusAction> {
        let space = SymplecticSpace::new(p, 1)?;
        let options = || {
            format!(
                "d = {d}: split needs d | {}, nonsplit needs d | {}",
                p - 1,
                p + 1
            )
        };
        let t = match how {
            Realization::Split => {
                if d == 0 || !(p - 1).is_multiple_of(d) {
                    return Err(Error::Realization(options()));
                }
                let f = make_field(p, 1)?;
                let c = f.pow(f.gen(), ((p - 1) / d) as i64);
                let ci = f.inv(c)?;
                vec![vec![c.0, 0], vec![0, ci.0]]
            }
            Realization::Nonsplit => {
                if d == 0 || !(p + 1).is_multiple_of(d) {
                    return Err(Error::Realization(options()));
                }
                let quad = QuadExt::new(p, 1)?;
                let y = quad.l().pow(quad.norm_one_gen(), ((p + 1) / d) as i64);
                let mats = Mat2Carrier::new(quad.k0());
                let m = embed_quadratic_torus(&quad, &mats, y);
                vec![vec![m.a.0, m.b.0], vec![m.c.0, m.d.0]]
            }
        };
        TorusAction::new(&space, t, d)
    }

    pub fn d(&self) -> u32 {
        self.d
    }
    pub fn space(&self) -> &SymplecticSpace {
        &self.space
    }
    /// t^j for 0 ≤ j < d (indices taken mod d).
    pub fn power(&self, j: usize) -> &FpMat {
        &self.powers[j % self.d as usize]
    }
}

/// A monomial matrix: row i holds ζ_p^{exp[i]} in column col[i].
#[derive(Clone, Debug)]
struct Mono {
    col: Vec<usize>,
    exp: Vec<u32>,
}

/// Dense square matrix over the cyclotomics.
pub type CycMat = Vec<Vec<Cyclotomic>>;

fn cyc_identity(n: usize) -> CycMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Cyclotomic::from_int((i == j) as i128))
                .collect()
        })
        .collect()
}

fn cyc_mul(x: &CycMat, y: &CycMat) -> CycMat {
    let n = x.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = Cyclotomic::from_int(0);
                    for k in 0..n {
                        if !x[i][k].is_zero() && !y[k][j].is_zero() {
                            acc = &acc + &(&x[i][k] * &y[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn cyc_scale(c: &Cyclotomic, x: &CycMat) -> CycMat {
    x.iter()
        .map(|r| r.iter().map(|v| c * v).collect())
        .collect()
}

fn cyc_det(x: &CycMat) -> Result<Cyclotomic> {
    let n = x.len();
    let mut m = x.clone();
    let mut det = Cyclotomic::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return Ok(Cyclotomic::from_int(0));
        };
        if piv != col {
            m.swap(piv, col);
            det = -&det;
        }
        det = &det * &m[col][col];
        let inv = m[col][col].inv()?;
        for i in col + 1..n {
            if m[i][col].is_zero() {
                continue;
            }
            let f = &m[i][col] * &inv;
            for j in col..n {
                let sub = &f * &m[col][j];
                m[i][j] = &m[i][j] - &sub;
            }
        }
    }
    Ok(det)
}

/// (Aη)[i][k] for monomial η.
fn mul_dense_mono(a: &CycMat, m: &Mono, p: u32) -> CycMat {
    let n = a.len();
    let mut out = vec![vec![Cyclotomic::from_int(0); n]; n];
    for (r, (&c, &e)) in m.col.iter().zip(&m.exp).enumerate() {
        let z = Cyclotomic::root_of_unity(p, e as i64);
        for i in 0..n {
            if !a[i][r].is_zero() {
                out[i][c] = &a[i][r] * &z;
            }
        }
    }
    out
}

fn mul_mono_dense(m: &Mono, a: &CycMat, p: u32) -> CycMat {
    m.col
        .iter()
        .zip(&m.exp)
        .map(|(&c, &e)| {
            let z = Cyclotomic::root_of_unity(p, e as i64);
            a[c].iter().map(|v| v * &z).collect()
        })
        .collect()
}

/// The Heisenberg representation with central character θ(z) = ζ_p^{s·z}.
#[derive(Debug, Clone)]
pub struct HeisRep {
    group: Arc<ExtraspecialGroup>,
    s: u32,
}

impl HeisRep {
    pub fn new(group: &Arc<ExtraspecialGroup>, s: u32) -> Result<HeisRep> {
        let p = group.space.p;
        if s.is_multiple_of(p) {
            return Err(Error::TrivialCentralCharacter);
        }
        Ok(HeisRep {
            group: Arc::clone(group),
            s: s % p,
        })
    }
    pub fn group(&self) -> &Arc<ExtraspecialGroup> {
        &self.group
    }
    pub fn dim(&self) -> usize {
        self.group.space.lagrangian_size()
    }
    pub fn central_exponent(&self) -> u32 {
        self.s
    }
    pub fn theta(&self, z: u32) -> Cyclotomic {
        let p = self.group.space.p;
        Cyclotomic::root_of_unity(p, (self.s as u64 * z as u64 % p as u64) as i64)
    }

    /// (η(v, z)φ)(u) = θ(z + y·u + x·y/2)·φ(u + x).
    fn eta(&self, v: &[u32], z: u32) -> Mono {
        let sp = &self.group.space;
        let p = sp.p;
        let n = self.dim();
        let xv: Vec<u32> = (0..sp.a as usize).map(|i| v[2 * i]).collect();
        let base = (z + sp.half() * sp.dot_xy(v)) % p;
        let mut col = Vec::with_capacity(n);
        let mut exp = Vec::with_capacity(n);
        for u in 0..n {
            let uv = sp.lagrangian_vector(u);
            let target: Vec<u32> = uv.iter().zip(&xv).map(|(a, b)| (a + b) % p).collect();
            col.push(sp.index_lagrangian(&target));
            exp.push(((base + sp.dot_y(v, &uv)) as u64 * self.s as u64 % p as u64) as u32);
        }
        Mono { col, exp }
    }

    /// η(v, z) as a dense matrix.
    pub fn matrix(&self, v: &[u32], z: u32) -> CycMat {
        let m = self.eta(v, z);
        let n = self.dim();
        let mut out = vec![vec![Cyclotomic::from_int(0); n]; n];
        for (r, (&c, &e)) in m.col.iter().zip(&m.exp).enumerate() {
            out[r][c] = Cyclotomic::root_of_unity(self.group.space.p, e as i64);
        }
        out
    }

    pub fn trace(&self, v: &[u32], z: u32) -> Cyclotomic {
        let m = self.eta(v, z);
        let p = self.group.space.p;
        Cyclotomic::from_exponents(
            p,
            m.col
                .iter()
                .zip(&m.exp)
                .enumerate()
                .filter(|(r, (&c, _))| *r == c)
                .map(|(_, (_, &e))| (e as i64, 1)),
        )
    }

    /// tr(A·η(v, z)).
    pub fn trace_with(&self, a: &CycMat, v: &[u32], z: u32) -> Cyclotomic {
        let m = self.eta(v, z);
        let p = self.group.space.p;
        let mut acc = Cyclotomic::from_int(0);
        for (r, (&c, &e)) in m.col.iter().zip(&m.exp).enumerate() {
            if !a[c][r].is_zero() {
                acc = &acc + &(&a[c][r] * &Cyclotomic::root_of_unity(p, e as i64));
            }
        }
        acc
    }

    /// Whether η(g)η(h) = η(gh) for every pair.
    pub fn is_homomorphism(&self) -> bool {
        let g = &self.group;
        let n = g.order() as u64;
        (0..n).all(|a| {
            (0..n).all(|b| {
                let (v, z) = g.decode(a);
                let (w, y) = g.decode(b);
                let (u, x) = g.decode(Carrier::mul(g.as_ref(), a, b));
                let lhs = self.eta(&v, z);
                let rhs = self.eta(&w, y);
                let prod = self.eta(&u, x);
                (0..self.dim()).all(|r| {
                    let mid = lhs.col[r];
                    rhs.col[mid] == prod.col[r]
                        && (lhs.exp[r] + rhs.exp[mid]) % g.space.p == prod.exp[r]
                })
            })
        })
    }

    /// Σ_v η(t·v) E_{ab} η(v)⁻¹; the center cancels.
    fn average(&self, action: &TorusAction, a: usize, b: usize) -> CycMat {
        let sp = &self.group.space;
        let p = sp.p;
        let n = self.dim();
        let mut counts = vec![vec![vec![0i128; p as usize]; n]; n];
        let t = action.power(1);
        for idx in 0..sp.size() {
            let v = sp.vector(idx);
            let m1 = self.eta(&sp.apply(t, &v), 0);
            let m2 = self.eta(&sp.neg(&v), 0);
            let i = m1.col.iter().position(|&c| c == a).expect("monomial");
            let j = m2.col[b];
            let e = (m1.exp[i] + m2.exp[b]) % p;
            counts[i][j][e as usize] += 1;
        }
        counts
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|c| {
                        Cyclotomic::from_exponents(
                            p,
                            c.into_iter().enumerate().map(|(e, m)| (e as i64, m)),
                        )
                    })
                    .collect()
            })
            .collect()
    }

    /// Nonzero averaged intertwiners from the first `count` productive seeds
    /// E_{ab}, in row-major seed order.
    pub fn intertwiners(&self, action: &TorusAction, count: usize) -> Result<Vec<CycMat>> {
        if action.space != self.group.space {
            return Err(Error::InvalidParameter(
                "torus acts on a different space".into(),
            ));
        }
        let n = self.dim();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let m = self.average(action, a, b);
                if m.iter().any(|r| r.iter().any(|x| !x.is_zero())) {
                    out.push(m);
                    if out.len() == count {
                        return Ok(out);
                    }
                }
            }
        }
        if out.is_empty() {
            return Err(Error::ZeroIntertwiner);
        }
        Ok(out)
    }
}

impl SymplecticSpace {
    fn index_lagrangian(&self, u: &[u32]) -> usize {
        u.iter()
            .fold(0, |acc, &x| acc * self.p as usize + x as usize)
    }
}

/// λ_c(t^j) = ζ_d^{c·j}·N^j with N^d = 1.
#[derive(Debug, Clone)]
pub struct Extension {
    rep: HeisRep,
    action: TorusAction,
    c: u32,
    ops: Vec<CycMat>,
}

impl Extension {
    pub fn rep(&self) -> &HeisRep {
        &self.rep
    }
    pub fn action(&self) -> &TorusAction {
        &self.action
    }
    /// ξ_c(t) = ζ_d^c distinguishes the extension.
    pub fn label(&self) -> u32 {
        self.c
    }
    pub fn op(&self, j: usize) -> &CycMat {
        &self.ops[j % self.action.d as usize]
    }
    /// tr λ(t^j·(v, z)).
    pub fn trace(&self, j: usize, v: &[u32], z: u32) -> Cyclotomic {
        self.rep.trace_with(self.op(j), v, z)
    }
    pub fn torus_trace(&self, j: usize) -> Cyclotomic {
        let zero = vec![0; self.action.space.dim()];
        self.trace(j, &zero, 0)
    }
}

/// A/s with s = det(A)^u·c^v, where A^d = c·1 and u·p^a + v·d = 1, so that
/// (A/s)^d = 1.
fn normalize(a: &CycMat, d: u32, n: usize) -> Result<CycMat> {
    let mut ad = cyc_identity(n);
    for _ in 0..d {
        ad = cyc_mul(&ad, a);
    }
    let c = ad[0][0].clone();
    if c.is_zero() || ad != cyc_scale(&c, &cyc_identity(n)) {
        return Err(Error::InvalidParameter(
            "A^d is not a nonzero scalar".into(),
        ));
    }
    let (u, v) = bezout(n as i64, d as i64);
    let s = &cyc_det(a)?.pow(u)? * &c.pow(v)?;
    Ok(cyc_scale(&s.inv()?, a))
}

/// (u, v) with u·m + v·n = 1.
fn bezout(m: i64, n: i64) -> (i64, i64) {
    let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (m, n, 1i64, 0i64, 0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    (s0, t0)
}

/// All d extensions of η to T ⋉ J.
pub fn extend(rep: &HeisRep, action: &TorusAction) -> Result<Vec<Extension>> {
    let n = rep.dim();
    let d = action.d;
    let a = rep.intertwiners(action, 1)?.remove(0);
    let base = normalize(&a, d, n)?;
    let mut pw = vec![cyc_identity(n)];
    for _ in 1..d {
        let next = cyc_mul(pw.last().expect("nonempty"), &base);
        pw.push(next);
    }
    Ok((0..d)
        .map(|c| Extension {
            rep: rep.clone(),
            action: action.clone(),
            c,
            ops: pw
                .iter()
                .enumerate()
                .map(|(j, m)| cyc_scale(&Cyclotomic::root_of_unity(d, (c as usize * j) as i64), m))
                .collect(),
        })
        .collect())
}

/// m_k = ⟨tr λ|_{T×Z}, ξ_k·θ⟩ with ξ_k(t) = ζ_d^k.
pub fn multiplicities(ext: &Extension) -> Result<Vec<u64>> {
    let d = ext.action.d;
    let traces: Vec<Cyclotomic> = (0..d as usize).map(|j| ext.torus_trace(j)).collect();
    (0..d)
        .map(|k| {
            let mut acc = Cyclotomic::from_int(0);
            for (j, tr) in traces.iter().enumerate() {
                acc = &acc + &(tr * &Cyclotomic::root_of_unity(d, -((k as usize * j) as i64)));
            }
            let m = acc.scale(1, d as i128)?;
            match m.to_integer() {
                Some(x) if x >= 0 => Ok(x as u64),
                _ => Err(Error::NonIntegral(format!("multiplicity {m}"))),
            }
        })
        .collect()
}

/// The predicted sign and sorted multiplicity multiset for (p^a, d).
pub fn closed_form(pa: u64, d: u64) -> Option<(i32, u64, Vec<u64>)> {
    let (eps, special, rest) = if (pa + 1).is_multiple_of(d) {
        let e = (pa + 1) / d;
        (-1, e - 1, e)
    } else if (pa - 1).is_multiple_of(d) {
        let e = (pa - 1) / d;
        (1, e + 1, e)
    } else {
        return None;
    };
    let mut all = vec![rest; d as usize - 1];
    all.push(special);
    all.sort_unstable();
    Some((eps, special, all))
}

/// Signs ε and characters k with tr λ(t^j) = ε·ζ_d^{kj} for 1 ≤ j < d.
pub fn sign_law(ext: &Extension) -> Vec<(i32, u32)> {
    let d = ext.action.d;
    let traces: Vec<Cyclotomic> = (1..d as usize).map(|j| ext.torus_trace(j)).collect();
    let mut out = Vec::new();
    for eps in [-1i32, 1] {
        for k in 0..d {
            let ok = traces.iter().enumerate().all(|(i, tr)| {
                let j = i + 1;
                *tr == Cyclotomic::root_of_unity(d, (k as usize * j) as i64)
                    .scale(eps as i128, 1)
                    .expect("nonzero")
            });
            if ok {
                out.push((eps, k));
            }
        }
    }
    out
}

fn sign_str(e: i32) -> &'static str {
    if e < 0 {
        "-1"
    } else {
        "+1"
    }
}

/// Whether t^j·(v, z) is conjugate under J into t^j·Z.
fn conjugate_into_tz(action: &TorusAction, j: usize, v: &[u32]) -> bool {
    let sp = &action.space;
    let ti = action.power(action.d as usize - j % action.d as usize);
    (0..sp.size()).any(|idx| {
        let w = sp.vector(idx);
        let moved = sp.add(&sp.add(&sp.apply(ti, &w), &sp.neg(&w)), v);
        moved.iter().all(|&x| x == 0)
    })
}

fn base_params(p: u32, a: u32, d: u32) -> BTreeMap<String, serde_json::Value> {
    let mut m = BTreeMap::new();
    m.insert("p".into(), p.into());
    m.insert("a".into(), a.into());
    m.insert("d".into(), d.into());
    m
}

/// Hypothesis (H), the multiplicity system and trace support for one realized torus.
pub fn lemma_h_verify(p: u32, a: u32, d: u32, how: Realization) -> Result<Report> {
    if a != 1 {
        return Err(Error::Realization(format!(
            "a = {a}: only a = 1 realizations are built in"
        )));
    }
    let action = TorusAction::realize(p, d, how)?;
    let group = build_extraspecial(p, a)?;
    let rep = HeisRep::new(&group, 1)?;
    lemma_h_report(&rep, &action, Some(how))
}

/// The same checks for an arbitrary torus action.
pub fn lemma_h_report(
    rep: &HeisRep,
    action: &TorusAction,
    how: Option<Realization>,
) -> Result<Report> {
    let sp = action.space.clone();
    let (p, a, d) = (sp.p, sp.a, action.d);
    let pa = sp.lagrangian_size() as u64;
    let mut params = base_params(p, a, d);
    if let Some(h) = how {
        params.insert("realization".into(), h.to_string().into());
    }
    let predicted = closed_form(pa, d as u64);
    if let Some((eps, _, _)) = &predicted {
        params.insert("epsilon".into(), (*eps).into());
    }
    let mut report = Report::new("heisenberg", params);

    let exts = extend(rep, action)?;
    report.push(Check::from_bool(
        "extension count",
        exts.len() == d as usize,
        format!("{} extensions", exts.len()),
    ));

    let n = rep.dim();
    let id_ok = exts.iter().all(|e| *e.op(0) == cyc_identity(n));
    report.push(Check::from_bool(
        "identity at t^0",
        id_ok,
        "λ(1) = 1".into(),
    ));

    let base = exts[0].op(1).clone();
    let mut pw = cyc_identity(n);
    for _ in 0..d {
        pw = cyc_mul(&pw, &base);
    }
    report.push(Check::from_bool(
        "order d",
        pw == cyc_identity(n),
        format!("λ(t)^{d} = 1"),
    ));

    let mut bad = None;
    'outer: for j in 1..d as usize {
        let nj = exts[0].op(j);
        for idx in 0..sp.size() {
            let v = sp.vector(idx);
            let lhs = mul_dense_mono(nj, &rep.eta(&v, 0), p);
            let rhs = mul_mono_dense(&rep.eta(&sp.apply(action.power(j), &v), 0), nj, p);
            if lhs != rhs {
                bad = Some(format!("j={j} v={v:?}"));
                break 'outer;
            }
        }
    }
    report.push(Check::from_option(
        "intertwining",
        bad,
        "λ(t^j)η(g) = η(t^j·g)λ(t^j) for all j, g".into(),
    ));

    let seeds = rep.intertwiners(action, 2)?;
    let prop = if seeds.len() < 2 {
        Check::skipped("seed independence", "only one productive seed".into())
    } else {
        let (x, y) = (&seeds[0], &seeds[1]);
        let (i, j) = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| !x[i][j].is_zero())
            .expect("nonzero intertwiner");
        let ratio = y[i][j].div(&x[i][j])?;
        Check::from_bool(
            "seed independence",
            cyc_scale(&ratio, x) == *y,
            "two seeds give proportional operators".into(),
        )
    };
    report.push(prop);

    let mut bad = None;
    for e in &exts {
        for j in 1..d as usize {
            let tr = e.torus_trace(j);
            if !tr.abs_square().is_one() {
                bad = Some(format!("extension {} j={j} tr={tr}", e.c));
            }
        }
    }
    report.push(Check::from_option(
        "trace modulus",
        bad,
        "|tr λ(t^j)| = 1 for 1 ≤ j < d".into(),
    ));

    let Some((eps, special, expected)) = predicted else {
        report.push(Check::fail(
            "closed form",
            format!("neither p^a+1 nor p^a-1 is divisible by d = {d}"),
            None,
        ));
        return Ok(report);
    };
    let mut sign_fail = None;
    let mut measured = Vec::new();
    for e in &exts {
        let law = sign_law(e);
        let with_pred: Vec<u32> = law
            .iter()
            .filter(|(s, _)| *s == eps)
            .map(|(_, k)| *k)
            .collect();
        let opposite = law.iter().any(|(s, _)| *s != eps);
        let mut signs: Vec<i32> = law.iter().map(|(s, _)| *s).collect();
        signs.dedup();
        measured.push(signs.clone());
        if with_pred.len() != 1 || (opposite && d > 2) {
            sign_fail = Some(format!("extension {}: consistent (ε, ξ) = {law:?}", e.c));
            continue;
        }
        let xi = with_pred[0];
        let m = multiplicities(e)?;
        let mut sorted = m.clone();
        sorted.sort_unstable();
        if sorted != expected || m[xi as usize] != special {
            report.push(Check::fail(
                &format!("multiplicities ξ^{}", e.c),
                format!("m = {m:?}, expected multiset {expected:?} with m(ξ^{xi}) = {special}"),
                Some(format!("extension {}", e.c)),
            ));
        } else {
            report.push(Check::pass(
                &format!("multiplicities ξ^{}", e.c),
                format!(
                    "m = {m:?}, multiset {sorted:?}, Σ = {}",
                    m.iter().sum::<u64>()
                ),
            ));
        }
    }
    let measured_str = if measured.iter().all(|s| s == &vec![eps]) {
        format!("ε = {}", sign_str(eps))
    } else {
        format!("ε = {} (consistent signs {:?})", sign_str(eps), measured[0])
    };
    report.push(match sign_fail {
        None => Check::pass("sign law", measured_str),
        Some(ce) => Check::fail(
            "sign law",
            format!("expected ε = {}", sign_str(eps)),
            Some(ce),
        ),
    });

    let mut bad = None;
    'support: for e in exts.iter().take(1) {
        for j in 0..d as usize {
            for idx in 0..sp.size() {
                let v = sp.vector(idx);
                for z in 0..p {
                    let nonzero = !e.trace(j, &v, z).is_zero();
                    if nonzero != conjugate_into_tz(action, j, &v) {
                        bad = Some(format!("j={j} v={v:?} z={z}"));
                        break 'support;
                    }
                }
            }
        }
    }
    report.push(Check::from_option(
        "trace support",
        bad,
        "tr λ(ty) ≠ 0 iff ty is J-conjugate into tZ".into(),
    ));
    Ok(report)
}

/// (j, v, z) ∈ T ⋉ J coded as (j·|V| + index(v))·p + z.
struct Semidirect {
    action: TorusAction,
}

impl Semidirect {
    fn decode(&self, c: u64) -> (usize, Vec<u32>, u32) {
        let sp = &self.action.space;
        let p = sp.p as u64;
        let vs = sp.size() as u64;
        (
            (c / p / vs) as usize,
            sp.vector((c / p % vs) as usize),
            (c % p) as u32,
        )
    }
    fn encode(&self, j: usize, v: &[u32], z: u32) -> u64 {
        let sp = &self.action.space;
        ((j as u64 % self.action.d as u64 * sp.size() as u64 + sp.index(v) as u64) * sp.p as u64)
            + z as u64
    }
    fn order(&self) -> u64 {
        self.action.d as u64 * self.action.space.size() as u64 * self.action.space.p as u64
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        let sp = &self.action.space;
        let (j, v, z) = self.decode(a);
        let (k, w, y) = self.decode(b);
        let tw = sp.apply(self.action.power(j), &w);
        self.encode(
            j + k,
            &sp.add(&v, &tw),
            (z + y + sp.half() * sp.pair(&v, &tw)) % sp.p,
        )
    }
    fn inv(&self, a: u64) -> u64 {
        let sp = &self.action.space;
        let d = self.action.d as usize;
        let (j, v, z) = self.decode(a);
        let ji = (d - j) % d;
        let w = sp.neg(&sp.apply(self.action.power(ji), &v));
        self.encode(ji, &w, (sp.p - z) % sp.p)
    }
    fn element_order(&self, a: u64) -> u64 {
        let mut cur = a;
        let mut k = 1;
        while cur != 0 {
            cur = self.mul(cur, a);
            k += 1;
        }
        k
    }
}

/// Fixed-space character, nondegeneracy of V^t, and fusion of T·Z inside T ⋉ J.
pub fn fixed_space_consequences(
    group: &Arc<ExtraspecialGroup>,
    action: &TorusAction,
) -> Result<Report> {
    let sp = &action.space;
    if group.space != *sp {
        return Err(Error::InvalidParameter(
            "torus acts on a different space".into(),
        ));
    }
    let (p, a, d) = (sp.p, sp.a, action.d);
    let mut report = Report::new("heisenberg-consequences", base_params(p, a, d));
    let sd = Semidirect {
        action: action.clone(),
    };

    let mut bad = None;
    let mut tested = 0usize;
    for x in 0..sd.order() {
        if sd.element_order(x).is_multiple_of(p as u64) {
            continue;
        }
        tested += 1;
        let (j, _, _) = sd.decode(x);
        let tj = action.power(j);
        for idx in 0..sp.size() {
            let v = sp.vector(idx);
            if sp.apply(tj, &v) != v {
                continue;
            }
            let g = sd.encode(0, &v, 0);
            let comm = sd.mul(sd.mul(x, g), sd.mul(sd.inv(x), sd.inv(g)));
            let (cj, cv, cz) = sd.decode(comm);
            if cj != 0 || cv.iter().any(|&c| c != 0) || cz != 0 {
                bad = Some(format!(
                    "x={:?} v={v:?} [x,v]={:?}",
                    sd.decode(x),
                    (cj, cv, cz)
                ));
            }
        }
    }
    report.push(Check::from_option(
        "fixed-space character trivial",
        bad,
        format!("χ_x = 1 on V^x for {tested} elements of order prime to p"),
    ));

    let mut bad = None;
    let mut dims = Vec::new();
    for j in 0..d as usize {
        let fixed = sp.fixed_space(action.power(j));
        let rank = sp.restricted_rank(&fixed);
        dims.push(fixed.len());
        if rank != fixed.len() || !fixed.len().is_multiple_of(2) {
            bad = Some(format!("t^{j}: dim V^t = {}, rank {rank}", fixed.len()));
        }
    }
    report.push(Check::from_option(
        "fixed space nondegenerate",
        bad,
        format!("dim V^(t^j) = {dims:?}"),
    ));

    let tz: Vec<u64> = (0..d as usize)
        .flat_map(|j| (0..p).map(move |z| (j, z)))
        .map(|(j, z)| sd.encode(j, &vec![0; sp.dim()], z))
        .collect();
    let mut bad = None;
    'fusion: for &x in &tz {
        for g in 0..sd.order() {
            let y = sd.mul(sd.mul(g, x), sd.inv(g));
            if y != x && tz.contains(&y) {
                bad = Some(format!("{:?} ~ {:?}", sd.decode(x), sd.decode(y)));
                break 'fusion;
            }
        }
    }
    report.push(Check::from_option(
        "no fusion in T·Z",
        bad,
        "elements of T·Z conjugate in T⋉J are equal".into(),
    ));
    Ok(report)
}

/// For every cyclic order n ≤ max and all ξ, x: not both ξ(x)+ξ(x⁻¹) and
/// ξ(x²)+ξ(x⁻²) vanish. Returns the first failure.
pub fn nonvanishing(max: u32) -> Option<(u32, u32, u32)> {
    for n in 1..=max {
        for k in 0..n {
            for j in 0..n {
                let e = (k as i64) * (j as i64);
                let s1 = &Cyclotomic::root_of_unity(n, e) + &Cyclotomic::root_of_unity(n, -e);
                let s2 =
                    &Cyclotomic::root_of_unity(n, 2 * e) + &Cyclotomic::root_of_unity(n, -2 * e);
                if s1.is_zero() && s2.is_zero() {
                    return Some((n, k, j));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extraspecial_basics() {
        let g = build_extraspecial(3, 1).unwrap();
        assert_eq!(g.order(), 27);
        let e = g.encode(&[1, 0], 0);
        let f = g.encode(&[0, 1], 0);
        let comm = g.mul(
            g.mul(e, f),
            g.mul(Carrier::inv(g.as_ref(), e), Carrier::inv(g.as_ref(), f)),
        );
        assert_eq!(g.decode(comm), (vec![0, 0], 1));
        assert_eq!(build_extraspecial(5, 1).unwrap().order(), 125);
        assert_eq!(
            build_extraspecial(2, 1).unwrap_err(),
            Error::EvenCharacteristic
        );
        let grp = g.group(10_000).unwrap();
        let center = (0..grp.num_classes())
            .filter(|&c| grp.classes().size(c) == 1)
            .count();
        assert_eq!(center, 3);
    }

    #[test]
    fn heisenberg_traces() {
        let g = build_extraspecial(3, 1).unwrap();
        let rep = HeisRep::new(&g, 1).unwrap();
        assert!(rep.is_homomorphism());
        assert_eq!(rep.trace(&[0, 0], 0), Cyclotomic::from_int(3));
        assert!(rep.trace(&[1, 2], 0).is_zero());
        assert_eq!(
            HeisRep::new(&g, 0).unwrap_err(),
            Error::TrivialCentralCharacter
        );
    }

    #[test]
    fn bezout_identity() {
        for (m, n) in [(3, 4), (5, 4), (7, 8), (5, 6), (3, 2)] {
            let (u, v) = bezout(m, n);
            assert_eq!(u * m + v * n, 1);
        }
    }

    #[test]
    fn multiplicity_examples() {
        let g3 = build_extraspecial(3, 1).unwrap();
        let rep = HeisRep::new(&g3, 1).unwrap();
        let act = TorusAction::realize(3, 4, Realization::Nonsplit).unwrap();
        let exts = extend(&rep, &act).unwrap();
        assert_eq!(exts.len(), 4);
        let mut m = multiplicities(&exts[0]).unwrap();
        m.sort_unstable();
        assert_eq!(m, vec![0, 1, 1, 1]);

        let g5 = build_extraspecial(5, 1).unwrap();
        let rep = HeisRep::new(&g5, 1).unwrap();
        let act = TorusAction::realize(5, 4, Realization::Split).unwrap();
        let mut m = multiplicities(&extend(&rep, &act).unwrap()[2]).unwrap();
        m.sort_unstable();
        assert_eq!(m, vec![1, 1, 1, 2]);
    }

    #[test]
    fn realization_errors() {
        assert!(matches!(
            TorusAction::realize(5, 3, Realization::Split),
            Err(Error::Realization(_))
        ));
        let sp = SymplecticSpace::new(3, 1).unwrap();
        assert!(TorusAction::new(&sp, sp.identity(), 1).is_ok());
        assert!(matches!(
            TorusAction::new(&sp, vec![vec![1, 1], vec![0, 1]], 3),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn nonvanishing_small() {
        assert_eq!(nonvanishing(12), None);
    }
}

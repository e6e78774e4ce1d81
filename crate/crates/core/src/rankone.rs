//! GL2, SL2 and U(1,1) over finite fields, the involution τ, the cyclic
//! norm N_τ(g) = g·τ(g), twisted conjugacy and quadratic torus embeddings.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ffield::{Fe, Field, QuadExt};
use crate::grpcore::{Carrier, Group, GroupTable};

/// The 2×2 matrix (a, b; c, d).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mat2 {
    pub a: Fe,
    pub b: Fe,
    pub c: Fe,
    pub d: Fe,
}

/// Matrix arithmetic over a fixed field; codes are base-|F| numerals of the
/// row-major entries, so code order is lexicographic on entries.
#[derive(Debug)]
pub struct Mat2Carrier {
    field: Arc<Field>,
    q: u64,
}

impl Mat2Carrier {
    pub fn new(field: &Arc<Field>) -> Arc<Mat2Carrier> {
        Arc::new(Mat2Carrier {
            field: Arc::clone(field),
            q: field.size() as u64,
        })
    }
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn as_carrier(self: &Arc<Self>) -> Arc<dyn Carrier> {
        Arc::clone(self) as Arc<dyn Carrier>
    }
    pub fn encode(&self, m: &Mat2) -> u64 {
        let q = self.q;
        ((m.a.0 as u64 * q + m.b.0 as u64) * q + m.c.0 as u64) * q + m.d.0 as u64
    }
    pub fn decode(&self, code: u64) -> Mat2 {
        let q = self.q;
        Mat2 {
            a: Fe((code / (q * q * q)) as u32),
            b: Fe((code / (q * q) % q) as u32),
            c: Fe((code / q % q) as u32),
            d: Fe((code % q) as u32),
        }
    }
    pub fn new_mat(&self, a: Fe, b: Fe, c: Fe, d: Fe) -> Mat2 {
        Mat2 { a, b, c, d }
    }
    pub fn identity(&self) -> Mat2 {
        self.scalar(self.field.one())
    }
    pub fn scalar(&self, x: Fe) -> Mat2 {
        Mat2 {
            a: x,
            b: Fe(0),
            c: Fe(0),
            d: x,
        }
    }
    pub fn diag(&self, x: Fe, y: Fe) -> Mat2 {
        Mat2 {
            a: x,
            b: Fe(0),
            c: Fe(0),
            d: y,
        }
    }
    pub fn mul(&self, x: &Mat2, y: &Mat2) -> Mat2 {
        let f = &self.field;
        Mat2 {
            a: f.add(f.mul(x.a, y.a), f.mul(x.b, y.c)),
            b: f.add(f.mul(x.a, y.b), f.mul(x.b, y.d)),
            c: f.add(f.mul(x.c, y.a), f.mul(x.d, y.c)),
            d: f.add(f.mul(x.c, y.b), f.mul(x.d, y.d)),
        }
    }
    pub fn det(&self, m: &Mat2) -> Fe {
        let f = &self.field;
        f.sub(f.mul(m.a, m.d), f.mul(m.b, m.c))
    }
    pub fn trace(&self, m: &Mat2) -> Fe {
        self.field.add(m.a, m.d)
    }
    pub fn inv(&self, m: &Mat2) -> Result<Mat2> {
        let f = &self.field;
        let di = f.inv(self.det(m))?;
        Ok(Mat2 {
            a: f.mul(m.d, di),
            b: f.neg(f.mul(m.b, di)),
            c: f.neg(f.mul(m.c, di)),
            d: f.mul(m.a, di),
        })
    }
    pub fn scale(&self, x: Fe, m: &Mat2) -> Mat2 {
        let f = &self.field;
        Mat2 {
            a: f.mul(x, m.a),
            b: f.mul(x, m.b),
            c: f.mul(x, m.c),
            d: f.mul(x, m.d),
        }
    }
    pub fn transpose(&self, m: &Mat2) -> Mat2 {
        Mat2 {
            a: m.a,
            b: m.c,
            c: m.b,
            d: m.d,
        }
    }
    pub fn map_entries(&self, m: &Mat2, g: impl Fn(Fe) -> Fe) -> Mat2 {
        Mat2 {
            a: g(m.a),
            b: g(m.b),
            c: g(m.c),
            d: g(m.d),
        }
    }
    pub fn is_scalar(&self, m: &Mat2) -> bool {
        m.b.0 == 0 && m.c.0 == 0 && m.a == m.d
    }
    pub fn format(&self, m: &Mat2) -> String {
        let f = &self.field;
        format!(
            "[[{},{}],[{},{}]]",
            f.format(m.a),
            f.format(m.b),
            f.format(m.c),
            f.format(m.d)
        )
    }
    /// Every matrix satisfying `pred`, as codes.
    pub fn enumerate(&self, pred: impl Fn(&Mat2) -> bool) -> Vec<u64> {
        let q = self.q;
        (0..q * q * q * q)
            .filter(|&c| pred(&self.decode(c)))
            .collect()
    }
}

impl Carrier for Mat2Carrier {
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.encode(&Mat2Carrier::mul(self, &self.decode(a), &self.decode(b)))
    }
    fn inv(&self, a: u64) -> u64 {
        self.encode(
            &Mat2Carrier::inv(self, &self.decode(a)).expect("group elements are invertible"),
        )
    }
    fn identity(&self) -> u64 {
        self.encode(&Mat2Carrier::identity(self))
    }
    fn key(&self, a: u64) -> String {
        self.format(&self.decode(a))
    }
}

fn field_name(f: &Field) -> String {
    if f.k() == 1 {
        format!("GF({})", f.p())
    } else {
        format!("GF({})", f.size())
    }
}

fn check_bound(order: usize, bound: usize) -> Result<()> {
    if order > bound {
        return Err(Error::SizeBound { order, bound });
    }
    Ok(())
}

pub fn build_gl2(mats: &Arc<Mat2Carrier>, bound: usize) -> Result<Arc<Group>> {
    let q = mats.q as usize;
    check_bound((q * q - 1) * (q * q - q), bound)?;
    let zero = mats.field().zero();
    let codes = mats.enumerate(|m| mats.det(m) != zero);
    let name = format!("GL2({})", field_name(mats.field()));
    Ok(Group::new(
        name,
        GroupTable::from_codes(mats.as_carrier(), codes, bound)?,
    ))
}

pub fn build_sl2(mats: &Arc<Mat2Carrier>, bound: usize) -> Result<Arc<Group>> {
    let q = mats.q as usize;
    check_bound(q * (q * q - 1), bound)?;
    let one = mats.field().one();
    let codes = mats.enumerate(|m| mats.det(m) == one);
    let name = format!("SL2({})", field_name(mats.field()));
    Ok(Group::new(
        name,
        GroupTable::from_codes(mats.as_carrier(), codes, bound)?,
    ))
}

/// The upper unipotent group {(1, b; 0, 1)}, optionally restricted by `allow(b)`.
pub fn build_upper_unipotent(
    mats: &Arc<Mat2Carrier>,
    allow: impl Fn(Fe) -> bool,
    bound: usize,
) -> Result<Arc<Group>> {
    let f = mats.field();
    let codes: Vec<u64> = f
        .elements()
        .filter(|&b| allow(b))
        .map(|b| mats.encode(&mats.new_mat(f.one(), b, f.zero(), f.one())))
        .collect();
    let name = format!("U({})", field_name(f));
    Ok(Group::new(
        name,
        GroupTable::from_codes(mats.as_carrier(), codes, bound)?,
    ))
}

/// (det g)⁻¹·g.
pub fn residue_tau_ramified(mats: &Mat2Carrier, g: &Mat2) -> Result<Mat2> {
    let di = mats.field().inv(mats.det(g))?;
    Ok(mats.scale(di, g))
}

/// i(a + b√ν) = (a, bν; b, a) in GL2(k0).
pub fn embed_quadratic_torus(quad: &QuadExt, mats: &Mat2Carrier, x: Fe) -> Mat2 {
    let k0 = quad.k0();
    let (a, b) = quad.split(x);
    mats.new_mat(a, k0.mul(b, quad.nu()), b, a)
}

/// U(1,1) data: ℓ/k0 and matrices over ℓ with hermitian Gram antidiag(1,1).
#[derive(Debug)]
pub struct UnitarySpec {
    quad: Arc<QuadExt>,
    mats: Arc<Mat2Carrier>,
    gram: Mat2,
}

impl UnitarySpec {
    pub fn new(quad: &Arc<QuadExt>) -> Arc<UnitarySpec> {
        let mats = Mat2Carrier::new(quad.l());
        let l = quad.l();
        let gram = mats.new_mat(l.zero(), l.one(), l.one(), l.zero());
        Arc::new(UnitarySpec {
            quad: Arc::clone(quad),
            mats,
            gram,
        })
    }
    pub fn quad(&self) -> &Arc<QuadExt> {
        &self.quad
    }
    pub fn q(&self) -> u32 {
        self.quad.q()
    }
    /// Matrices over ℓ.
    pub fn mats(&self) -> &Arc<Mat2Carrier> {
        &self.mats
    }
    pub fn gram(&self) -> Mat2 {
        self.gram
    }
    /// Entrywise x ↦ x^q.
    pub fn bar(&self, g: &Mat2) -> Mat2 {
        self.mats.map_entries(g, |x| self.quad.gamma(x))
    }
    pub fn is_unitary(&self, g: &Mat2) -> bool {
        let m = &self.mats;
        m.mul(&m.mul(&m.transpose(&self.bar(g)), &self.gram), g) == self.gram
    }
    /// τ(g) = Gram⁻¹·(ḡᵀ)⁻¹·Gram.
    pub fn tau(&self, g: &Mat2) -> Mat2 {
        let m = &self.mats;
        let gi = m.inv(&m.transpose(&self.bar(g))).expect("invertible");
        let ji = m.inv(&self.gram).expect("Gram is invertible");
        m.mul(&m.mul(&ji, &gi), &self.gram)
    }
    /// N_τ(g) = g·τ(g).
    pub fn norm_tau(&self, g: &Mat2) -> Mat2 {
        self.mats.mul(g, &self.tau(g))
    }
    /// The element of H(k0) ≅ ℓ¹×ℓ¹ acting as diag(h1, h2) in the basis
    /// (e₋₁ + ½e₁, e₋₁ − ½e₁).
    pub fn torus_element(&self, h1: Fe, h2: Fe) -> Mat2 {
        let l = self.quad.l();
        let m = &self.mats;
        let half = l.inv(l.from_int(2)).expect("odd characteristic");
        let p = m.new_mat(l.one(), l.one(), half, l.neg(half));
        let pi = m.inv(&p).expect("basis change is invertible");
        m.mul(&m.mul(&p, &m.diag(h1, h2)), &pi)
    }
}

pub fn build_u2(spec: &UnitarySpec, bound: usize) -> Result<Arc<Group>> {
    let q = spec.q() as usize;
    check_bound(q * (q + 1) * (q * q - 1), bound)?;
    let codes = spec.mats.enumerate(|g| spec.is_unitary(g));
    let name = format!("U2({})", field_name(spec.quad.k0()));
    Ok(Group::new(
        name,
        GroupTable::from_codes(spec.mats.as_carrier(), codes, bound)?,
    ))
}

/// The unipotent radical {(1, b; 0, 1) : b + b̄ = 0} of the upper Borel of U(1,1).
pub fn build_u2_unipotent(spec: &UnitarySpec, bound: usize) -> Result<Arc<Group>> {
    let l = spec.quad.l();
    build_upper_unipotent(
        &spec.mats,
        |b| l.add(b, spec.quad.gamma(b)) == l.zero(),
        bound,
    )
}

/// Orbits of g ↦ h⁻¹·g·τ(h) on G̃.
#[derive(Debug, Clone)]
pub struct TauClasses {
    class_of: Vec<u32>,
    reps: Vec<u32>,
}

impl TauClasses {
    pub fn len(&self) -> usize {
        self.reps.len()
    }
    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
    pub fn class_of(&self, g: u32) -> usize {
        self.class_of[g as usize] as usize
    }
    pub fn rep(&self, c: usize) -> u32 {
        self.reps[c]
    }
}

fn tau_table(gt: &Group, spec: &UnitarySpec) -> Result<Vec<u32>> {
    let t = gt.table();
    let m = &spec.mats;
    t.codes()
        .iter()
        .map(|&c| {
            t.index_of(m.encode(&spec.tau(&m.decode(c))))
                .ok_or_else(|| Error::NotClosed("τ leaves G̃".into()))
        })
        .collect()
}

pub fn tau_classes(gt: &Group, spec: &UnitarySpec) -> Result<TauClasses> {
    let t = gt.table();
    let n = t.order();
    let tau = tau_table(gt, spec)?;
    let mut class_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    for g in 0..n as u32 {
        if class_of[g as usize] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(g);
        for h in 0..n as u32 {
            let y = t.mul(t.mul(t.inv(h), g), tau[h as usize]);
            class_of[y as usize] = c;
        }
    }
    Ok(TauClasses { class_of, reps })
}

/// Outcome of the τ-class → conjugacy-class comparison.
#[derive(Debug, Clone)]
pub struct NormClassMap {
    /// G̃-class of N_τ(rep) for each τ-class.
    pub map: Vec<usize>,
    /// G̃-classes containing an element of U(1,1).
    pub meeting_u2: Vec<usize>,
    pub well_defined: std::result::Result<(), String>,
    pub injective: std::result::Result<(), String>,
    pub onto_meeting: std::result::Result<(), String>,
    pub image_in_meeting: std::result::Result<(), String>,
}

impl NormClassMap {
    pub fn is_bijection(&self) -> bool {
        self.well_defined.is_ok()
            && self.injective.is_ok()
            && self.onto_meeting.is_ok()
            && self.image_in_meeting.is_ok()
    }
}

pub fn norm_class_map(
    gt: &Group,
    u2: &Group,
    spec: &UnitarySpec,
    tc: &TauClasses,
) -> Result<NormClassMap> {
    let t = gt.table();
    let m = &spec.mats;
    let class_of_norm = |g: u32| -> Result<usize> {
        let n = m.encode(&spec.norm_tau(&m.decode(t.code(g))));
        gt.class_of_code(n)
            .ok_or_else(|| Error::NotClosed("N_τ leaves G̃".into()))
    };
    let map = (0..tc.len())
        .map(|c| class_of_norm(tc.rep(c)))
        .collect::<Result<Vec<_>>>()?;

    let mut well_defined = Ok(());
    for g in 0..t.order() as u32 {
        let c = tc.class_of(g);
        if class_of_norm(g)? != map[c] {
            well_defined = Err(format!("g={} rep={}", t.key(g), t.key(tc.rep(c))));
            break;
        }
    }

    let mut meeting_u2: Vec<usize> = u2
        .table()
        .codes()
        .iter()
        .map(|&c| {
            gt.class_of_code(c)
                .ok_or_else(|| Error::NotSubgroup("U2 in G̃".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    meeting_u2.sort_unstable();
    meeting_u2.dedup();

    let mut seen = std::collections::BTreeMap::new();
    let mut injective = Ok(());
    for (c, &img) in map.iter().enumerate() {
        if let Some(prev) = seen.insert(img, c) {
            injective = Err(format!(
                "τ-classes of {} and {} share a norm class",
                t.key(tc.rep(prev)),
                t.key(tc.rep(c))
            ));
            break;
        }
    }
    let image_in_meeting = match map.iter().find(|c| meeting_u2.binary_search(c).is_err()) {
        Some(&c) => Err(format!("norm class of {} misses U2", gt.rep_key(c))),
        None => Ok(()),
    };
    let onto_meeting = match meeting_u2.iter().find(|c| !seen.contains_key(c)) {
        Some(&c) => Err(format!("class of {} not a norm", gt.rep_key(c))),
        None => Ok(()),
    };
    Ok(NormClassMap {
        map,
        meeting_u2,
        well_defined,
        injective,
        onto_meeting,
        image_in_meeting,
    })
}

/// Checks N_τ(h⁻¹gτ(h)) = h⁻¹·N_τ(g)·h on seeded random pairs; returns the
/// first failing pair.
pub fn check_norm_equivariance(gt: &Group, spec: &UnitarySpec, samples: usize) -> Option<String> {
    let t = gt.table();
    let m = &spec.mats;
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e6f_726d);
    for _ in 0..samples {
        let g = m.decode(t.code(rng.gen_range(0..t.order()) as u32));
        let h = m.decode(t.code(rng.gen_range(0..t.order()) as u32));
        let hi = m.inv(&h).expect("invertible");
        let lhs = spec.norm_tau(&m.mul(&m.mul(&hi, &g), &spec.tau(&h)));
        let rhs = m.mul(&m.mul(&hi, &spec.norm_tau(&g)), &h);
        if lhs != rhs {
            return Some(format!("g={} h={}", m.format(&g), m.format(&h)));
        }
    }
    None
}

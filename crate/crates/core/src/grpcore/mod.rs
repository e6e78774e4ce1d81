//! Enumerated finite groups, conjugacy classes and class functions.

mod classfn;
pub mod export;
pub(crate) mod modp;
mod oracle;

use std::collections::HashSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};

pub use classfn::{inner_product, ClassFunction};

/// Groups at most this large get a dense multiplication table.
const DENSE_LIMIT: usize = 1500;
const CLOSURE_SAMPLES: usize = 4096;
const ASSOC_SAMPLES: usize = 256;

pub const DEFAULT_MAX_GROUP: usize = 10_000;

/// Size bound for enumerated groups: `BASECHANGE_MAX_GROUP` or 10⁴.
pub fn max_group() -> usize {
    std::env::var("BASECHANGE_MAX_GROUP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_GROUP)
}

/// Element arithmetic on integer codes. Codes sort in the canonical order of
/// their serialized keys.
pub trait Carrier: Send + Sync {
    fn mul(&self, a: u64, b: u64) -> u64;
    fn inv(&self, a: u64) -> u64;
    fn identity(&self) -> u64;
    fn key(&self, a: u64) -> String;
}

pub(crate) fn same_carrier(a: &Arc<dyn Carrier>, b: &Arc<dyn Carrier>) -> bool {
    Arc::as_ptr(a) as *const () == Arc::as_ptr(b) as *const ()
}

/// A fully enumerated group with multiplication by index.
pub struct GroupTable {
    carrier: Arc<dyn Carrier>,
    codes: Vec<u64>,
    inv: Vec<u32>,
    id: u32,
    dense: Option<Vec<u32>>,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupTable(order {})", self.codes.len())
    }
}

impl GroupTable {
    /// The group whose elements are exactly `codes`; closure is verified
    /// exhaustively for small groups and by sampling otherwise.
    pub fn from_codes(
        carrier: Arc<dyn Carrier>,
        mut codes: Vec<u64>,
        bound: usize,
    ) -> Result<GroupTable> {
        codes.sort_unstable();
        codes.dedup();
        let n = codes.len();
        if n > bound {
            return Err(Error::SizeBound { order: n, bound });
        }
        let find = |c: u64| codes.binary_search(&c).ok().map(|i| i as u32);
        let id =
            find(carrier.identity()).ok_or_else(|| Error::NotClosed("identity missing".into()))?;
        let inv = codes
            .iter()
            .map(|&c| {
                find(carrier.inv(c)).ok_or_else(|| {
                    Error::NotClosed(format!("inverse of {} missing", carrier.key(c)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let missing = |a: u64, b: u64| {
            Error::NotClosed(format!("{} * {} missing", carrier.key(a), carrier.key(b)))
        };
        let dense = if n <= DENSE_LIMIT {
            let mut t = Vec::with_capacity(n * n);
            for &a in &codes {
                for &b in &codes {
                    t.push(find(carrier.mul(a, b)).ok_or_else(|| missing(a, b))?);
                }
            }
            Some(t)
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x6772_7063);
            for _ in 0..CLOSURE_SAMPLES {
                let (a, b) = (codes[rng.gen_range(0..n)], codes[rng.gen_range(0..n)]);
                find(carrier.mul(a, b)).ok_or_else(|| missing(a, b))?;
            }
            None
        };
        let table = GroupTable {
            carrier,
            codes,
            inv,
            id,
            dense,
        };
        table.check_axioms()?;
        Ok(table)
    }

    /// The subgroup generated by `gens`.
    pub fn from_generators(
        carrier: Arc<dyn Carrier>,
        gens: &[u64],
        bound: usize,
    ) -> Result<GroupTable> {
        let id = carrier.identity();
        let mut seen: HashSet<u64> = HashSet::from([id]);
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for &s in gens {
                let y = carrier.mul(x, s);
                if seen.insert(y) {
                    if seen.len() > bound {
                        return Err(Error::SizeBound {
                            order: seen.len(),
                            bound,
                        });
                    }
                    queue.push(y);
                }
            }
        }
        GroupTable::from_codes(carrier, seen.into_iter().collect(), bound)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.order();
        for i in 0..n as u32 {
            if self.mul(i, self.id) != i
                || self.mul(self.id, i) != i
                || self.mul(i, self.inv[i as usize]) != self.id
            {
                return Err(Error::NotClosed(format!(
                    "group axioms fail at {}",
                    self.key(i)
                )));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x6173_736f);
        for _ in 0..ASSOC_SAMPLES {
            let [a, b, c] = [0; 3].map(|_| rng.gen_range(0..n) as u32);
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::NotClosed("associativity fails".into()));
            }
        }
        Ok(())
    }

    pub fn carrier(&self) -> &Arc<dyn Carrier> {
        &self.carrier
    }
    pub fn order(&self) -> usize {
        self.codes.len()
    }
    pub fn id(&self) -> u32 {
        self.id
    }
    pub fn code(&self, i: u32) -> u64 {
        self.codes[i as usize]
    }
    pub fn codes(&self) -> &[u64] {
        &self.codes
    }
    pub fn index_of(&self, code: u64) -> Option<u32> {
        self.codes.binary_search(&code).ok().map(|i| i as u32)
    }
    pub fn key(&self, i: u32) -> String {
        self.carrier.key(self.code(i))
    }
    pub fn inv(&self, i: u32) -> u32 {
        self.inv[i as usize]
    }
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.dense {
            Some(t) => t[a as usize * self.codes.len() + b as usize],
            None => self
                .index_of(self.carrier.mul(self.code(a), self.code(b)))
                .expect("closure verified at construction"),
        }
    }
    /// h·g·h⁻¹.
    pub fn conjugate(&self, h: u32, g: u32) -> u32 {
        self.mul(self.mul(h, g), self.inv(h))
    }
    pub fn pow(&self, g: u32, e: u64) -> u32 {
        let (mut acc, mut base, mut e) = (self.id, g, e);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
    pub fn element_order(&self, g: u32) -> u32 {
        let mut x = g;
        let mut k = 1;
        while x != self.id {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }
}

/// The partition of a group into conjugacy classes, ordered by
/// (element order, class size, representative index).
#[derive(Debug, Clone)]
pub struct ConjClasses {
    class_of: Vec<u32>,
    reps: Vec<u32>,
    sizes: Vec<usize>,
    orders: Vec<u32>,
    members: Vec<Vec<u32>>,
    group_order: usize,
}

impl ConjClasses {
    pub fn compute(g: &GroupTable) -> ConjClasses {
        let n = g.order();
        let mut seen = vec![false; n];
        let mut raw: Vec<(u32, u32, Vec<u32>)> = Vec::new();
        for x in 0..n as u32 {
            if seen[x as usize] {
                continue;
            }
            let mut orbit = Vec::new();
            for h in 0..n as u32 {
                let y = g.conjugate(h, x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    orbit.push(y);
                }
            }
            orbit.sort_unstable();
            raw.push((g.element_order(x), x, orbit));
        }
        raw.sort_by_key(|(o, rep, m)| (*o, m.len(), *rep));
        let mut class_of = vec![0u32; n];
        for (c, (_, _, m)) in raw.iter().enumerate() {
            for &x in m {
                class_of[x as usize] = c as u32;
            }
        }
        ConjClasses {
            class_of,
            reps: raw.iter().map(|r| r.1).collect(),
            sizes: raw.iter().map(|r| r.2.len()).collect(),
            orders: raw.iter().map(|r| r.0).collect(),
            members: raw.into_iter().map(|r| r.2).collect(),
            group_order: n,
        }
    }

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
    pub fn size(&self, c: usize) -> usize {
        self.sizes[c]
    }
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }
    pub fn element_order(&self, c: usize) -> u32 {
        self.orders[c]
    }
    pub fn members(&self, c: usize) -> &[u32] {
        &self.members[c]
    }
    pub fn centralizer_order(&self, c: usize) -> usize {
        self.group_order / self.sizes[c]
    }
}

/// A group together with its classes and a lazily computed character table.
pub struct Group {
    name: String,
    table: GroupTable,
    classes: ConjClasses,
    oracle: OnceLock<Result<Vec<Vec<Cyclotomic>>>>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (order {}, {} classes)",
            self.name,
            self.order(),
            self.classes.len()
        )
    }
}

impl Group {
    pub fn new(name: impl Into<String>, table: GroupTable) -> Arc<Group> {
        let classes = ConjClasses::compute(&table);
        Arc::new(Group {
            name: name.into(),
            table,
            classes,
            oracle: OnceLock::new(),
        })
    }
    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn table(&self) -> &GroupTable {
        &self.table
    }
    pub fn classes(&self) -> &ConjClasses {
        &self.classes
    }
    pub fn order(&self) -> usize {
        self.table.order()
    }
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }
    /// Class of the element with the given code, if it belongs to the group.
    pub fn class_of_code(&self, code: u64) -> Option<usize> {
        self.table.index_of(code).map(|i| self.classes.class_of(i))
    }
    pub fn rep_code(&self, c: usize) -> u64 {
        self.table.code(self.classes.rep(c))
    }
    pub fn rep_key(&self, c: usize) -> String {
        self.table.key(self.classes.rep(c))
    }
    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u32 {
        (0..self.classes.len())
            .map(|c| self.classes.element_order(c))
            .fold(1, crate::cyclo::lcm)
    }
    /// Whether `self` is a subgroup of `g` over the same carrier.
    pub fn is_subgroup_of(&self, g: &Group) -> bool {
        same_carrier(self.table.carrier(), g.table.carrier())
            && self
                .table
                .codes()
                .iter()
                .all(|&c| g.table.index_of(c).is_some())
    }
}

/// The complete list of irreducible characters, sorted by degree and then
/// by serialized values.
pub fn character_table(g: &Arc<Group>) -> Result<Vec<ClassFunction>> {
    let bound = max_group();
    if g.order() > bound {
        return Err(Error::SizeBound {
            order: g.order(),
            bound,
        });
    }
    let values = g.oracle.get_or_init(|| oracle::compute(g)).clone()?;
    Ok(values
        .into_iter()
        .map(|v| ClassFunction::from_values_unchecked(g, v))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Z/n as integers mod n.
    pub(crate) struct Cyclic(pub u64);

    impl Carrier for Cyclic {
        fn mul(&self, a: u64, b: u64) -> u64 {
            (a + b) % self.0
        }
        fn inv(&self, a: u64) -> u64 {
            (self.0 - a) % self.0
        }
        fn identity(&self) -> u64 {
            0
        }
        fn key(&self, a: u64) -> String {
            a.to_string()
        }
    }

    /// S_n as permutations packed 4 bits per point.
    pub(crate) struct Sym(pub usize);

    impl Sym {
        fn unpack(&self, a: u64) -> Vec<usize> {
            (0..self.0)
                .map(|i| ((a >> (4 * i)) & 15) as usize)
                .collect()
        }
        fn pack(&self, v: &[usize]) -> u64 {
            v.iter()
                .enumerate()
                .map(|(i, &x)| (x as u64) << (4 * i))
                .sum()
        }
        pub fn perm(&self, v: &[usize]) -> u64 {
            self.pack(v)
        }
    }

    impl Carrier for Sym {
        fn mul(&self, a: u64, b: u64) -> u64 {
            let (pa, pb) = (self.unpack(a), self.unpack(b));
            self.pack(&(0..self.0).map(|i| pa[pb[i]]).collect::<Vec<_>>())
        }
        fn inv(&self, a: u64) -> u64 {
            let pa = self.unpack(a);
            let mut r = vec![0; self.0];
            for (i, &x) in pa.iter().enumerate() {
                r[x] = i;
            }
            self.pack(&r)
        }
        fn identity(&self) -> u64 {
            self.pack(&(0..self.0).collect::<Vec<_>>())
        }
        fn key(&self, a: u64) -> String {
            format!("{:?}", self.unpack(a))
        }
    }

    pub(crate) fn cyclic(n: u64) -> Arc<Group> {
        let c: Arc<dyn Carrier> = Arc::new(Cyclic(n));
        Group::new(
            format!("Z/{n}"),
            GroupTable::from_codes(c, (0..n).collect(), 100_000).unwrap(),
        )
    }

    pub(crate) fn symmetric(n: usize) -> Arc<Group> {
        let s = Sym(n);
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(0, 1);
        let mut c: Vec<usize> = (1..n).collect();
        c.push(0);
        let gens = [s.perm(&t), s.perm(&c)];
        let carrier: Arc<dyn Carrier> = Arc::new(s);
        Group::new(
            format!("S{n}"),
            GroupTable::from_generators(carrier, &gens, 100_000).unwrap(),
        )
    }

    #[test]
    fn trivial_and_cyclic() {
        let g = cyclic(1);
        assert_eq!(g.order(), 1);
        let g = cyclic(12);
        assert_eq!(g.num_classes(), 12);
        assert_eq!(g.exponent(), 12);
    }

    #[test]
    fn non_closure_is_detected() {
        let c: Arc<dyn Carrier> = Arc::new(Cyclic(6));
        assert!(matches!(
            GroupTable::from_codes(c, vec![0, 1, 5], 100),
            Err(Error::NotClosed(_))
        ));
        let c: Arc<dyn Carrier> = Arc::new(Cyclic(6));
        assert!(matches!(
            GroupTable::from_codes(c, (0..6).collect(), 5),
            Err(Error::SizeBound { .. })
        ));
    }

    #[test]
    fn symmetric_group_classes() {
        let g = symmetric(4);
        assert_eq!(g.order(), 24);
        let cl = g.classes();
        assert_eq!(cl.len(), 5);
        assert_eq!(cl.sizes().iter().sum::<usize>(), 24);
        for c in 0..cl.len() {
            assert_eq!(cl.size(c) * cl.centralizer_order(c), 24);
            assert_eq!(cl.rep(c), *cl.members(c).iter().min().unwrap());
        }
        assert_eq!(cl.rep(0), g.table().id());
    }
}

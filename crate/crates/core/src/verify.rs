//! Verification suites and their JSON reports.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::cuspchar::{decompose, oracle_cuspidal, oracle_matches, Level0, Unitary};
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::ffield::{MultChar, NormOneChar, QuadExt};
use crate::grpcore::{character_table, inner_product, max_group, ClassFunction, Group, GroupTable};
use crate::heis::{
    build_extraspecial, fixed_space_consequences, lemma_h_verify, nonvanishing, Realization,
    TorusAction,
};
use crate::rankone::{
    build_gl2, build_u2, check_norm_equivariance, embed_quadratic_torus, norm_class_map,
    tau_classes, UnitarySpec,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: String,
    pub counterexample: Option<String>,
}

impl Check {
    pub fn pass(name: &str, details: String) -> Check {
        Check {
            name: name.into(),
            status: Status::Pass,
            details,
            counterexample: None,
        }
    }
    pub fn fail(name: &str, details: String, counterexample: Option<String>) -> Check {
        Check {
            name: name.into(),
            status: Status::Fail,
            details,
            counterexample,
        }
    }
    pub fn skipped(name: &str, details: String) -> Check {
        Check {
            name: name.into(),
            status: Status::Skipped,
            details,
            counterexample: None,
        }
    }
    pub fn from_bool(name: &str, ok: bool, details: String) -> Check {
        if ok {
            Check::pass(name, details)
        } else {
            Check::fail(name, details, None)
        }
    }
    /// Fails with the given counterexample when one is present.
    pub fn from_option(name: &str, counterexample: Option<String>, details: String) -> Check {
        match counterexample {
            None => Check::pass(name, details),
            Some(c) => Check::fail(name, details, Some(c)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str, params: BTreeMap<String, serde_json::Value>) -> Report {
        Report {
            suite: suite.into(),
            params,
            checks: Vec::new(),
        }
    }
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }
    /// All non-skipped checks pass.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

fn q_params(q: u32) -> BTreeMap<String, serde_json::Value> {
    BTreeMap::from([("q".to_string(), q.into())])
}

/// Turns construction errors into a failed or skipped check.
fn guard(report: &mut Report, name: &str, r: Result<()>) {
    match r {
        Ok(()) => {}
        Err(e @ Error::SizeBound { .. }) => report.push(Check::skipped(name, e.to_string())),
        Err(e) => report.push(Check::fail(name, e.to_string(), None)),
    }
}

fn quad(q: u32) -> Result<std::sync::Arc<QuadExt>> {
    QuadExt::new(q, 1)
}

/// λ̃(i(x)) = λ(x^{1−q}) for regular θ and x with regular elliptic cyclic norm.
pub fn suite_level0_basechange(q: u32) -> Report {
    let mut r = Report::new("level0", q_params(q));
    let res = (|| -> Result<()> {
        let qd = quad(q)?;
        let lv = Level0::new(&qd, max_group())?;
        let l = qd.l();
        let m = lv.mats();
        let minus_one = l.neg(l.one());
        for theta in NormOneChar::all(&qd).into_iter().filter(|t| t.is_regular()) {
            let lam = lv.sl2_cuspidal(&theta)?.chi;
            let lam_t = lv.gl2_cuspidal(&theta.tilde())?.chi;
            let mut compared = 0usize;
            let mut failure = None;
            let mut boundary = BTreeSet::new();
            for x in l.units().filter(|&x| !qd.in_k0(x)) {
                let u = l.pow(x, 1 - q as i64);
                let left = lam_t
                    .at_code(m.encode(&embed_quadratic_torus(&qd, m, x)))
                    .expect("in GL2")
                    .clone();
                if u == l.one() || u == minus_one {
                    let z = qd.embedding().down(u).expect("±1 ∈ k0");
                    let right = lam
                        .at_code(m.encode(&m.scalar(z)))
                        .expect("central")
                        .clone();
                    boundary.insert(format!("x^(1-q)={}: λ̃={left}, λ={right}", l.format(u)));
                    continue;
                }
                let right = lam
                    .at_code(m.encode(&embed_quadratic_torus(&qd, m, u)))
                    .expect("in SL2")
                    .clone();
                compared += 1;
                if left != right && failure.is_none() {
                    failure = Some(format!("x={} λ̃={left} λ={right}", l.format(x)));
                }
            }
            let at_gen = lam_t
                .at_code(m.encode(&embed_quadratic_torus(&qd, m, l.gen())))
                .expect("in GL2");
            r.push(Check::from_option(
                &format!("identity θ={}", theta.label()),
                failure,
                format!("{compared} elements compared; λ̃(i(ζ)) = {at_gen}"),
            ));
            r.push(Check::skipped(
                &format!("boundary θ={}", theta.label()),
                boundary.into_iter().collect::<Vec<_>>().join("; "),
            ));
        }
        Ok(())
    })();
    guard(&mut r, "construction", res);
    r
}

/// τ-classes of GL2(ℓ) against GL2(ℓ)-classes meeting U(1,1)(k0).
pub fn suite_norm_bijection(q: u32) -> Report {
    let mut r = Report::new("norm-bijection", q_params(q));
    let res = (|| -> Result<()> {
        let spec = UnitarySpec::new(&quad(q)?);
        let bound = max_group();
        let gt = build_gl2(spec.mats(), bound)?;
        let u2 = build_u2(&spec, bound)?;
        let t = gt.table();
        let m = spec.mats();

        let mut inv_fail = None;
        let mut fixed = 0usize;
        for &c in t.codes() {
            let g = m.decode(c);
            let tg = spec.tau(&g);
            if spec.tau(&tg) != g && inv_fail.is_none() {
                inv_fail = Some(m.format(&g));
            }
            if tg == g {
                fixed += 1;
                if u2.table().index_of(c).is_none() && inv_fail.is_none() {
                    inv_fail = Some(format!("τ-fixed {} not unitary", m.format(&g)));
                }
            }
        }
        r.push(Check::from_option(
            "tau involution",
            inv_fail,
            "τ² = 1 on G̃".into(),
        ));
        r.push(Check::from_bool(
            "tau fixed points",
            fixed == u2.order(),
            format!("{fixed} fixed points, |U2| = {}", u2.order()),
        ));

        let l = spec.quad().l();
        let gens = [
            m.diag(l.gen(), l.one()),
            m.new_mat(l.one(), l.one(), l.zero(), l.one()),
            m.new_mat(l.zero(), l.one(), l.one(), l.zero()),
        ];
        let gen_codes: Vec<u64> = gens.iter().map(|g| m.encode(g)).collect();
        let span = GroupTable::from_generators(m.as_carrier(), &gen_codes, bound)?;
        let mut hom_fail = None;
        'hom: for &c in t.codes() {
            let g = m.decode(c);
            for s in &gens {
                if spec.tau(&m.mul(&g, s)) != m.mul(&spec.tau(&g), &spec.tau(s)) {
                    hom_fail = Some(format!("g={} s={}", m.format(&g), m.format(s)));
                    break 'hom;
                }
            }
        }
        r.push(Check::from_option(
            "tau homomorphism",
            hom_fail.or_else(|| {
                (span.order() != gt.order()).then(|| "generators do not generate".to_string())
            }),
            format!(
                "τ(gs) = τ(g)τ(s) for all g and {} generators of G̃",
                gens.len()
            ),
        ));

        let tc = tau_classes(&gt, &spec)?;
        let nm = norm_class_map(&gt, &u2, &spec, &tc)?;
        let id_class = gt.classes().class_of(t.id());
        r.push(Check::from_bool(
            "identity class",
            nm.map[tc.class_of(t.id())] == id_class,
            "N_τ sends the τ-class of 1 to the class of 1".into(),
        ));
        r.push(Check::from_option(
            "well-defined",
            nm.well_defined.clone().err(),
            "N_τ constant on τ-classes".into(),
        ));
        r.push(Check::from_option(
            "injective",
            nm.injective.clone().err(),
            "distinct τ-classes, distinct norms".into(),
        ));
        r.push(Check::from_option(
            "image meets U2",
            nm.image_in_meeting.clone().err(),
            "every norm class meets U2".into(),
        ));
        r.push(Check::from_option(
            "surjective",
            nm.onto_meeting.clone().err(),
            "every class meeting U2 is a norm class".into(),
        ));
        r.push(Check::from_bool(
            "counts",
            tc.len() == nm.meeting_u2.len(),
            format!(
                "{} τ-classes, {} classes meeting U2",
                tc.len(),
                nm.meeting_u2.len()
            ),
        ));
        r.push(Check::from_option(
            "equivariance",
            check_norm_equivariance(&gt, &spec, 1000),
            "N_τ(h⁻¹gτ(h)) = h⁻¹N_τ(g)h on 1000 seeded samples".into(),
        ));
        Ok(())
    })();
    guard(&mut r, "construction", res);
    r
}

/// Restriction of GL2 cuspidals to SL2 and the order-2 packet.
pub fn suite_restriction_sl2(q: u32) -> Report {
    let mut r = Report::new("restriction", q_params(q));
    let res = (|| -> Result<()> {
        let qd = quad(q)?;
        let lv = Level0::new(&qd, max_group())?;
        let (gl, sl) = (lv.gl2(), lv.sl2());
        let m = lv.mats();
        let f = qd.k0();

        let triv = ClassFunction::trivial(gl).restrict(sl)?;
        r.push(Check::from_bool(
            "trivial restricts to trivial",
            triv == ClassFunction::trivial(sl) && triv.norm().is_one(),
            "⟨1, 1⟩ = 1".into(),
        ));

        let h = m.diag(f.one(), qd.nu());
        let hi = m.inv(&h)?;
        let conj = |c: u64| m.encode(&m.mul(&m.mul(&h, &m.decode(c)), &hi));
        let gl_table = character_table(gl)?;
        let sl_table = character_table(sl)?;
        let cusp = oracle_cuspidal(gl, lv.unipotent(), q as i128 - 1)?;
        let (mut ones, mut twos) = (0, 0);
        for &i in &cusp {
            let res = gl_table[i].restrict(sl)?;
            let n = res.norm().to_integer();
            let name = format!("restriction χ{i}");
            match n {
                Some(1) => {
                    ones += 1;
                    r.push(Check::pass(&name, "⟨res χ, res χ⟩ = 1".into()));
                }
                Some(2) => {
                    twos += 1;
                    let coeffs = decompose(&res)?;
                    let comps: Vec<usize> = (0..coeffs.len()).filter(|&k| coeffs[k] != 0).collect();
                    let ok = comps.len() == 2 && comps.iter().all(|&k| coeffs[k] == 1);
                    let swapped = ok && sl_table[comps[0]].twist(conj)? == sl_table[comps[1]];
                    r.push(Check::from_bool(
                        &name,
                        ok && swapped,
                        format!("⟨res χ, res χ⟩ = 2; components {comps:?} swapped by diag(1,ν): {swapped}"),
                    ));
                }
                _ => r.push(Check::fail(
                    &name,
                    format!("⟨res χ, res χ⟩ = {}", res.norm()),
                    None,
                )),
            }
        }
        r.push(Check::pass(
            "cuspidal count",
            format!(
                "{} cuspidals: {ones} with norm 1, {twos} with norm 2",
                cusp.len()
            ),
        ));

        let theta = NormOneChar::new(&qd, (q as i64 + 1) / 2);
        let packet = lv.sl2_formula(&theta)?;
        let coeffs = decompose(&packet)?;
        let comps: Vec<usize> = (0..coeffs.len()).filter(|&k| coeffs[k] != 0).collect();
        let degs: Vec<Option<i128>> = comps.iter().map(|&k| sl_table[k].degree()).collect();
        let sum = comps
            .iter()
            .try_fold(ClassFunction::zero(sl), |acc, &k| acc.add(&sl_table[k]))?;
        let half = (q as i128 - 1) / 2;
        r.push(Check::from_bool(
            "order-2 packet",
            packet.norm() == Cyclotomic::from_int(2)
                && comps.len() == 2
                && degs.iter().all(|d| *d == Some(half))
                && comps.iter().all(|&k| coeffs[k] == 1)
                && sum == packet,
            format!(
                "norm {}; components {comps:?} of degrees {degs:?}",
                packet.norm()
            ),
        ));
        Ok(())
    })();
    guard(&mut r, "construction", res);
    r
}

/// U(1,1) cuspidals from torus values and σ0 identification.
pub fn suite_endoscopic_finite(q: u32) -> Report {
    let mut r = Report::new("endoscopic", q_params(q));
    let res = (|| -> Result<()> {
        let qd = quad(q)?;
        let bound = max_group();
        let lv = Level0::new(&qd, bound)?;
        let un = Unitary::new(&qd, bound)?;
        let thetas = NormOneChar::all(&qd);
        let qi = q as i128;

        let mut u2_fail = None;
        let mut seen = BTreeSet::new();
        for (i, t1) in thetas.iter().enumerate() {
            for t2 in &thetas[i + 1..] {
                let res = (|| -> Result<()> {
                    let x = un.u2_cuspidal(t1, t2)?;
                    let y = un.u2_cuspidal(t2, t1)?;
                    if x.chi != y.chi {
                        return Err(Error::Oracle("w-asymmetric".into()));
                    }
                    if x.chi.degree() != Some(qi - 1) {
                        return Err(Error::Oracle(format!("degree {:?}", x.chi.degree())));
                    }
                    seen.insert(x.chi.value_strings());
                    Ok(())
                })();
                if let Err(e) = res {
                    u2_fail.get_or_insert(format!("({}, {}): {e}", t1.label(), t2.label()));
                }
            }
        }
        let oracle = oracle_cuspidal(un.group(), un.unipotent(), qi - 1)?;
        r.push(Check::from_option(
            "u2 unique match",
            u2_fail,
            "unique oracle match of degree q−1, symmetric in (θ1, θ2)".into(),
        ));
        r.push(Check::from_bool(
            "u2 count",
            seen.len() == oracle.len() && seen.len() == (q * (q + 1) / 2) as usize,
            format!(
                "{} from formulas, {} cuspidal in oracle",
                seen.len(),
                oracle.len()
            ),
        ));

        let mut irr_fail = None;
        let mut central_fail = None;
        let mut ident_fail = None;
        let mut stable_fail = None;
        let mut n = 0usize;
        let id_code = lv.mats().encode(&lv.mats().identity());
        for t1 in &thetas {
            for t2 in thetas.iter().filter(|t| *t != t1) {
                let allowed = [t1.mul(&t2.inverse()), t2.mul(&t1.inverse())];
                for e1 in t1.extensions() {
                    for e2 in t2.extensions() {
                        n += 1;
                        let tag = format!(
                            "({}, {}; {}, {})",
                            t1.label(),
                            t2.label(),
                            e1.label(),
                            e2.label()
                        );
                        let (s0, found) = lv.sigma0(t1, t2, &e1, &e2)?;
                        if !(s0.chi.norm().is_one() && oracle_matches(&s0.chi)?.len() == 1) {
                            irr_fail.get_or_insert(tag.clone());
                        }
                        if s0.chi.at_code(id_code) != Some(&Cyclotomic::from_int(qi - 1)) {
                            central_fail.get_or_insert(tag.clone());
                        }
                        let expected = e1.mul(&e2.compose_gamma(q));
                        if !found.contains(&expected) {
                            ident_fail.get_or_insert(format!("{tag}: found {found:?}"));
                        }
                        if found
                            .iter()
                            .any(|th| !allowed.contains(&th.restrict_norm_one(&qd)))
                        {
                            stable_fail.get_or_insert(tag);
                        }
                    }
                }
            }
        }
        r.push(Check::from_option(
            "sigma0 irreducible",
            irr_fail,
            format!("{n} inputs, one oracle match each"),
        ));
        r.push(Check::from_option(
            "sigma0 central value",
            central_fail,
            "σ0(1) = q−1".into(),
        ));
        r.push(Check::from_option(
            "sigma0 identification",
            ident_fail,
            "Θ1·(Θ2∘γ) is an identified parameter".into(),
        ));
        r.push(Check::from_option(
            "sigma0 stability",
            stable_fail,
            "identified Θ restricts to θ1/θ2 or θ2/θ1 on ℓ¹ for every extension choice".into(),
        ));
        Ok(())
    })();
    guard(&mut r, "construction", res);
    r
}

/// One (p, a, d, realization) point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HeisParams {
    pub p: u32,
    pub a: u32,
    pub d: u32,
    pub realization: Realization,
}

impl fmt::Display for HeisParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.p, self.a, self.d, self.realization)
    }
}

impl FromStr for HeisParams {
    type Err = Error;
    fn from_str(s: &str) -> Result<HeisParams> {
        let parts: Vec<&str> = s
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(str::trim)
            .collect();
        let [p, a, d, real] = parts.as_slice() else {
            return Err(Error::Parse(format!("expected p,a,d,realization: {s:?}")));
        };
        let num = |x: &str| {
            x.parse::<u32>()
                .map_err(|_| Error::Parse(format!("integer {x:?}")))
        };
        Ok(HeisParams {
            p: num(p)?,
            a: num(a)?,
            d: num(d)?,
            realization: real.parse()?,
        })
    }
}

pub fn default_heis_params() -> Vec<HeisParams> {
    use Realization::*;
    [
        (3, 2, Split),
        (3, 4, Nonsplit),
        (5, 4, Split),
        (5, 6, Nonsplit),
        (7, 8, Nonsplit),
    ]
    .into_iter()
    .map(|(p, d, realization)| HeisParams {
        p,
        a: 1,
        d,
        realization,
    })
    .collect()
}

/// Hypothesis (H), multiplicities and fixed-space consequences for each tuple.
pub fn suite_heisenberg(params: &[HeisParams]) -> Report {
    let list: Vec<serde_json::Value> = params.iter().map(|h| h.to_string().into()).collect();
    let mut r = Report::new(
        "heisenberg",
        BTreeMap::from([("tuples".to_string(), list.into())]),
    );
    for h in params {
        let prefix = h.to_string();
        let sub = (|| -> Result<Vec<Check>> {
            let mut checks = lemma_h_verify(h.p, h.a, h.d, h.realization)?.checks;
            let action = TorusAction::realize(h.p, h.d, h.realization)?;
            checks
                .extend(fixed_space_consequences(&build_extraspecial(h.p, h.a)?, &action)?.checks);
            Ok(checks)
        })();
        match sub {
            Ok(checks) => r.checks.extend(checks.into_iter().map(|mut c| {
                c.name = format!("{prefix} {}", c.name);
                c
            })),
            Err(e @ (Error::Realization(_) | Error::HypothesisH(_))) => r.push(Check::skipped(
                &format!("{prefix} feasibility"),
                e.to_string(),
            )),
            Err(e) => r.push(Check::fail(
                &format!("{prefix} construction"),
                e.to_string(),
                None,
            )),
        }
    }
    r.push(Check::from_option(
        "nonvanishing",
        nonvanishing(50).map(|(n, k, j)| format!("n={n} ξ=ζ^{k} x=ζ^{j}")),
        "ξ(x)+ξ(x⁻¹) and ξ(x²)+ξ(x⁻²) never both vanish for cyclic orders ≤ 50".into(),
    ));
    r
}

/// Formula characters against the oracle for SL2, GL2 and U(1,1).
pub fn suite_formula_oracle(q: u32) -> Report {
    let mut r = Report::new("formula-oracle", q_params(q));
    let res = (|| -> Result<()> {
        let qd = quad(q)?;
        let bound = max_group();
        let lv = Level0::new(&qd, bound)?;
        let un = Unitary::new(&qd, bound)?;
        let qi = q as i128;

        let mut fams: Vec<(&str, Vec<ClassFunction>, Vec<usize>, usize)> = Vec::new();
        let sl: Vec<ClassFunction> = NormOneChar::all(&qd)
            .iter()
            .filter(|t| t.is_regular())
            .map(|t| lv.sl2_cuspidal(t).map(|c| c.chi))
            .collect::<Result<_>>()?;
        fams.push((
            "sl2",
            sl,
            oracle_cuspidal(lv.sl2(), lv.unipotent(), qi - 1)?,
            ((q - 1) / 2) as usize,
        ));
        let gl: Vec<ClassFunction> = MultChar::all(qd.l())
            .iter()
            .filter(|t| t.is_regular(q))
            .map(|t| lv.gl2_cuspidal(t).map(|c| c.chi))
            .collect::<Result<_>>()?;
        fams.push((
            "gl2",
            gl,
            oracle_cuspidal(lv.gl2(), lv.unipotent(), qi - 1)?,
            (q * (q - 1) / 2) as usize,
        ));
        let thetas = NormOneChar::all(&qd);
        let mut u2 = Vec::new();
        for (i, a) in thetas.iter().enumerate() {
            for b in &thetas[i + 1..] {
                u2.push(un.u2_cuspidal(a, b)?.chi);
            }
        }
        fams.push((
            "u2",
            u2,
            oracle_cuspidal(un.group(), un.unipotent(), qi - 1)?,
            (q * (q + 1) / 2) as usize,
        ));

        for (name, chars, oracle, expected) in fams {
            let mut hits = BTreeSet::new();
            let mut bad = None;
            for chi in &chars {
                let m = oracle_matches(chi)?;
                if m.len() != 1 || !chi.norm().is_one() {
                    bad.get_or_insert(format!("{:?}", chi.value_strings()));
                } else {
                    hits.insert(m[0]);
                }
            }
            let oracle_set: BTreeSet<usize> = oracle.iter().copied().collect();
            r.push(Check::from_option(
                &format!("{name} formulas irreducible"),
                bad,
                format!(
                    "{} parameters, each equal to one oracle irreducible",
                    chars.len()
                ),
            ));
            r.push(Check::from_bool(
                &format!("{name} count"),
                hits == oracle_set && hits.len() == expected,
                format!(
                    "{} distinct from formulas, {} cuspidal in oracle, expected {expected}",
                    hits.len(),
                    oracle.len()
                ),
            ));
        }
        Ok(())
    })();
    guard(&mut r, "construction", res);
    r
}

/// Orthogonality and Σ deg² = |G| for the oracle tables at q.
pub fn suite_engine(q: u32) -> Report {
    let mut r = Report::new("engine", q_params(q));
    let res = (|| -> Result<()> {
        let qd = quad(q)?;
        let lv = Level0::new(&qd, max_group())?;
        let un = Unitary::new(&qd, max_group())?;
        for g in [lv.sl2(), lv.gl2(), un.group()] {
            r.push(table_check(g)?);
        }
        Ok(())
    })();
    guard(&mut r, "construction", res);
    r
}

/// Row and column orthogonality of the oracle table of g.
pub fn table_check(g: &std::sync::Arc<Group>) -> Result<Check> {
    let t = character_table(g)?;
    let k = g.num_classes();
    let name = format!("{} table", g.name());
    if t.len() != k {
        return Ok(Check::fail(
            &name,
            format!("{} characters for {k} classes", t.len()),
            None,
        ));
    }
    let sq: i128 = t.iter().map(|c| c.degree().map_or(0, |d| d * d)).sum();
    if sq != g.order() as i128 {
        return Ok(Check::fail(
            &name,
            format!("Σ deg² = {sq} ≠ {}", g.order()),
            None,
        ));
    }
    for (i, a) in t.iter().enumerate() {
        for (j, b) in t.iter().enumerate().skip(i) {
            if inner_product(a, b)? != Cyclotomic::from_int((i == j) as i128) {
                return Ok(Check::fail(
                    &name,
                    "row orthogonality".into(),
                    Some(format!("χ{i}, χ{j}")),
                ));
            }
        }
    }
    for c1 in 0..k {
        for c2 in c1..k {
            let s = Cyclotomic::sum(
                t.iter()
                    .map(|chi| chi.value(c1) * &chi.value(c2).conj())
                    .collect::<Vec<_>>()
                    .iter(),
            );
            let expected = if c1 == c2 {
                g.classes().centralizer_order(c1) as i128
            } else {
                0
            };
            if s != Cyclotomic::from_int(expected) {
                return Ok(Check::fail(
                    &name,
                    "column orthogonality".into(),
                    Some(format!("classes {c1}, {c2}")),
                ));
            }
        }
    }
    Ok(Check::pass(&name, format!("{k} characters, Σ deg² = {sq}")))
}

/// A suite and its parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SuiteRequest {
    Level0(u32),
    NormBijection(u32),
    Restriction(u32),
    Endoscopic(u32),
    FormulaOracle(u32),
    Engine(u32),
    Heisenberg(Vec<HeisParams>),
}

impl SuiteRequest {
    pub fn run(&self) -> Report {
        match self {
            SuiteRequest::Level0(q) => suite_level0_basechange(*q),
            SuiteRequest::NormBijection(q) => suite_norm_bijection(*q),
            SuiteRequest::Restriction(q) => suite_restriction_sl2(*q),
            SuiteRequest::Endoscopic(q) => suite_endoscopic_finite(*q),
            SuiteRequest::FormulaOracle(q) => suite_formula_oracle(*q),
            SuiteRequest::Engine(q) => suite_engine(*q),
            SuiteRequest::Heisenberg(ps) => suite_heisenberg(ps),
        }
    }
}

/// Runs the requests in parallel; reports keep request order.
pub fn run_all(requests: &[SuiteRequest]) -> Vec<Report> {
    requests.par_iter().map(SuiteRequest::run).collect()
}

//! Cuspidal characters of SL2, GL2 and U(1,1) over finite fields from
//! explicit formulas, checked against the oracle table.

use std::sync::Arc;

use serde::Serialize;

use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};
use crate::ffield::{Fe, MultChar, NormOneChar, QuadExt};
use crate::grpcore::{character_table, inner_product, ClassFunction, Group};
use crate::rankone::{
    build_gl2, build_sl2, build_u2, build_u2_unipotent, build_upper_unipotent,
    embed_quadratic_torus, Mat2, Mat2Carrier, UnitarySpec,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Family {
    Sl2,
    Gl2,
    U2,
    Sigma0,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuspidalTag {
    pub family: Family,
    pub params: Vec<String>,
    pub q: u32,
}

#[derive(Clone, Debug)]
pub struct Cuspidal {
    pub tag: CuspidalTag,
    pub chi: ClassFunction,
}

/// GL2(k0) ⊃ SL2(k0) ⊃ U over one carrier.
#[derive(Debug)]
pub struct Level0 {
    quad: Arc<QuadExt>,
    mats: Arc<Mat2Carrier>,
    gl2: Arc<Group>,
    sl2: Arc<Group>,
    unip: Arc<Group>,
}

impl Level0 {
    pub fn new(quad: &Arc<QuadExt>, bound: usize) -> Result<Level0> {
        let mats = Mat2Carrier::new(quad.k0());
        let gl2 = build_gl2(&mats, bound)?;
        let sl2 = build_sl2(&mats, bound)?;
        let unip = build_upper_unipotent(&mats, |_| true, bound)?;
        Ok(Level0 {
            quad: Arc::clone(quad),
            mats,
            gl2,
            sl2,
            unip,
        })
    }
    pub fn quad(&self) -> &Arc<QuadExt> {
        &self.quad
    }
    pub fn q(&self) -> u32 {
        self.quad.q()
    }
    pub fn mats(&self) -> &Arc<Mat2Carrier> {
        &self.mats
    }
    pub fn gl2(&self) -> &Arc<Group> {
        &self.gl2
    }
    pub fn sl2(&self) -> &Arc<Group> {
        &self.sl2
    }
    pub fn unipotent(&self) -> &Arc<Group> {
        &self.unip
    }

    /// Whether m is semisimple with distinct eigenvalues in k0.
    pub fn is_split_regular(&self, m: &Mat2) -> bool {
        let f = self.quad.k0();
        let tr = self.mats.trace(m);
        let disc = f.sub(f.mul(tr, tr), f.mul(f.from_int(4), self.mats.det(m)));
        disc != f.zero() && f.is_square(disc)
    }

    fn unipotents(&self) -> [Mat2; 2] {
        let f = self.quad.k0();
        let m = &self.mats;
        [
            m.new_mat(f.one(), f.one(), f.zero(), f.one()),
            m.new_mat(f.one(), self.quad.nu(), f.zero(), f.one()),
        ]
    }

    fn finish(&self, group: &Arc<Group>, t: Transport) -> Result<ClassFunction> {
        let values = t
            .values
            .into_iter()
            .enumerate()
            .map(|(c, v)| match v {
                Some(v) => Ok(v),
                None => {
                    let rep = self.mats.decode(group.rep_code(c));
                    if self.is_split_regular(&rep) {
                        Ok(Cyclotomic::from_int(0))
                    } else {
                        Err(Error::Oracle(format!(
                            "class {} left unassigned",
                            group.rep_key(c)
                        )))
                    }
                }
            })
            .collect::<Result<Vec<_>>>()?;
        ClassFunction::new(group, values)
    }

    /// The SL2 formula for any θ; order-2 θ gives the sum of a packet.
    pub fn sl2_formula(&self, theta: &NormOneChar) -> Result<ClassFunction> {
        let f = self.quad.k0();
        let m = &self.mats;
        let q = self.q() as i128;
        let mut t = Transport::new(&self.sl2);
        for x in [f.one(), f.neg(f.one())] {
            let th = theta.value(self.quad.up(x))?;
            t.set(m.encode(&m.scalar(x)), th.scale(q - 1, 1)?)?;
            for n in self.unipotents() {
                t.set(m.encode(&m.scale(x, &n)), -&th)?;
            }
        }
        for y in self.quad.norm_one_subgroup() {
            if self.quad.in_k0(y) {
                continue;
            }
            let v = -&(&theta.value(y)? + &theta.value(self.quad.gamma(y))?);
            t.set(m.encode(&embed_quadratic_torus(&self.quad, m, y)), v)?;
        }
        self.finish(&self.sl2, t)
    }

    pub fn sl2_cuspidal(&self, theta: &NormOneChar) -> Result<Cuspidal> {
        match theta.order() {
            1 => return Err(Error::NotRegular(format!("θ = {}", theta.label()))),
            2 => return Err(Error::ReducibleParameter),
            _ => {}
        }
        Ok(Cuspidal {
            tag: CuspidalTag {
                family: Family::Sl2,
                params: vec![theta.label()],
                q: self.q(),
            },
            chi: self.sl2_formula(theta)?,
        })
    }

    /// Values on central, central·unipotent and elliptic classes of GL2(k0).
    fn gl2_transport(
        &self,
        central: impl Fn(Fe) -> Result<Cyclotomic>,
        elliptic: impl Fn(Fe) -> Result<Cyclotomic>,
    ) -> Result<ClassFunction> {
        let f = self.quad.k0();
        let l = self.quad.l();
        let m = &self.mats;
        let q = self.q() as i128;
        let mut t = Transport::new(&self.gl2);
        for x in f.units() {
            let c = central(x)?;
            t.set(m.encode(&m.scalar(x)), c.scale(q - 1, 1)?)?;
            t.set(m.encode(&m.scale(x, &self.unipotents()[0])), -&c)?;
        }
        for y in l.units().filter(|&y| !self.quad.in_k0(y)) {
            t.set(
                m.encode(&embed_quadratic_torus(&self.quad, m, y)),
                elliptic(y)?,
            )?;
        }
        self.finish(&self.gl2, t)
    }

    pub fn gl2_cuspidal(&self, theta: &MultChar) -> Result<Cuspidal> {
        if !theta.is_regular(self.q()) {
            return Err(Error::NotRegular(format!("θ̃ = {}", theta.label())));
        }
        let chi = self.gl2_transport(
            |x| Ok(theta.value(self.quad.up(x))),
            |y| Ok(-&(&theta.value(y) + &theta.value(self.quad.gamma(y)))),
        )?;
        Ok(Cuspidal {
            tag: CuspidalTag {
                family: Family::Gl2,
                params: vec![theta.label()],
                q: self.q(),
            },
            chi,
        })
    }

    /// The σ0 class function of a regular pair with chosen extensions Θ1, Θ2,
    /// and every regular Θ whose cuspidal character equals it.
    pub fn sigma0(
        &self,
        theta1: &NormOneChar,
        theta2: &NormOneChar,
        ext1: &MultChar,
        ext2: &MultChar,
    ) -> Result<(Cuspidal, Vec<MultChar>)> {
        if theta1 == theta2 {
            return Err(Error::NotRegular(format!("θ1 = θ2 = {}", theta1.label())));
        }
        for (th, ex) in [(theta1, ext1), (theta2, ext2)] {
            if ex.restrict_norm_one(&self.quad) != *th {
                return Err(Error::InvalidParameter(format!(
                    "{} does not extend {}",
                    ex.label(),
                    th.label()
                )));
            }
        }
        let omega = ext1.mul(ext2);
        let (t1, t2) = (theta1.tilde(), theta2.tilde());
        let chi = self.gl2_transport(
            |z| Ok(omega.value(self.quad.up(z))),
            |x| Ok(-&(&omega.value(self.quad.gamma(x)) * &(&t1.value(x) + &t2.value(x)))),
        )?;
        let mut found = Vec::new();
        for cand in MultChar::all(self.quad.l()) {
            if cand.is_regular(self.q()) && self.gl2_cuspidal(&cand)?.chi == chi {
                found.push(cand);
            }
        }
        if found.is_empty() {
            return Err(Error::NoIdentification(format!(
                "σ0({}, {})",
                ext1.label(),
                ext2.label()
            )));
        }
        let tag = CuspidalTag {
            family: Family::Sigma0,
            params: vec![theta1.label(), theta2.label(), ext1.label(), ext2.label()],
            q: self.q(),
        };
        Ok((Cuspidal { tag, chi }, found))
    }
}

/// Class values collected from explicit elements.
struct Transport {
    group: Arc<Group>,
    values: Vec<Option<Cyclotomic>>,
}

impl Transport {
    fn new(group: &Arc<Group>) -> Transport {
        Transport {
            group: Arc::clone(group),
            values: vec![None; group.num_classes()],
        }
    }
    fn set(&mut self, code: u64, v: Cyclotomic) -> Result<()> {
        let c = self
            .group
            .class_of_code(code)
            .ok_or_else(|| Error::NotSubgroup(format!("element outside {}", self.group.name())))?;
        match &self.values[c] {
            Some(old) if *old != v => Err(Error::Oracle(format!(
                "conflicting values {old} and {v} at {}",
                self.group.rep_key(c)
            ))),
            _ => {
                self.values[c] = Some(v);
                Ok(())
            }
        }
    }
}

/// U(1,1)(k0) with its unipotent radical.
#[derive(Debug)]
pub struct Unitary {
    spec: Arc<UnitarySpec>,
    group: Arc<Group>,
    unip: Arc<Group>,
}

impl Unitary {
    pub fn new(quad: &Arc<QuadExt>, bound: usize) -> Result<Unitary> {
        let spec = UnitarySpec::new(quad);
        let group = build_u2(&spec, bound)?;
        let unip = build_u2_unipotent(&spec, bound)?;
        Ok(Unitary { spec, group, unip })
    }
    pub fn spec(&self) -> &Arc<UnitarySpec> {
        &self.spec
    }
    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }
    pub fn unipotent(&self) -> &Arc<Group> {
        &self.unip
    }
    pub fn q(&self) -> u32 {
        self.spec.q()
    }

    /// Formula values on the classes meeting H(k0) ≅ ℓ¹×ℓ¹.
    pub fn torus_values(
        &self,
        theta1: &NormOneChar,
        theta2: &NormOneChar,
    ) -> Result<Vec<Option<Cyclotomic>>> {
        let ones = self.spec.quad().norm_one_subgroup();
        let q = self.q() as i128;
        let m = self.spec.mats();
        let mut t = Transport::new(&self.group);
        for &h1 in &ones {
            for &h2 in &ones {
                let chi = |a: Fe, b: Fe| -> Result<Cyclotomic> {
                    Ok(&theta1.value(a)? * &theta2.value(b)?)
                };
                let v = if h1 == h2 {
                    chi(h1, h2)?.scale(q - 1, 1)?
                } else {
                    -&(&chi(h1, h2)? + &chi(h2, h1)?)
                };
                t.set(m.encode(&self.spec.torus_element(h1, h2)), v)?;
            }
        }
        Ok(t.values)
    }

    pub fn u2_cuspidal(&self, theta1: &NormOneChar, theta2: &NormOneChar) -> Result<Cuspidal> {
        if theta1 == theta2 {
            return Err(Error::NotRegular(format!("θ1 = θ2 = {}", theta1.label())));
        }
        let target = self.torus_values(theta1, theta2)?;
        let table = character_table(&self.group)?;
        let hits: Vec<&ClassFunction> = table
            .iter()
            .filter(|chi| {
                target
                    .iter()
                    .zip(chi.values())
                    .all(|(t, v)| t.as_ref().is_none_or(|t| t == v))
            })
            .collect();
        let chi = match hits.as_slice() {
            [] => return Err(Error::EnnolaMismatch),
            [one] => (*one).clone(),
            _ => return Err(Error::Ambiguous(format!("{} oracle matches", hits.len()))),
        };
        let mut params = vec![theta1.label(), theta2.label()];
        params.sort();
        Ok(Cuspidal {
            tag: CuspidalTag {
                family: Family::U2,
                params,
                q: self.q(),
            },
            chi,
        })
    }
}

/// Indices of oracle irreducibles equal to `chi`.
pub fn oracle_matches(chi: &ClassFunction) -> Result<Vec<usize>> {
    let table = character_table(chi.group())?;
    Ok(table
        .iter()
        .enumerate()
        .filter(|(_, psi)| *psi == chi)
        .map(|(i, _)| i)
        .collect())
}

/// Oracle irreducibles of the given degree without vectors fixed by `unip`.
pub fn oracle_cuspidal(group: &Arc<Group>, unip: &Arc<Group>, degree: i128) -> Result<Vec<usize>> {
    let table = character_table(group)?;
    let one = ClassFunction::trivial(unip);
    let mut out = Vec::new();
    for (i, chi) in table.iter().enumerate() {
        if chi.degree() == Some(degree) && inner_product(&chi.restrict(unip)?, &one)?.is_zero() {
            out.push(i);
        }
    }
    Ok(out)
}

/// ⟨φ, ψ⟩ for each oracle irreducible ψ, as integers.
pub fn decompose(phi: &ClassFunction) -> Result<Vec<i128>> {
    character_table(phi.group())?
        .iter()
        .map(|psi| {
            let ip = inner_product(phi, psi)?;
            ip.to_integer()
                .ok_or_else(|| Error::NonIntegral(ip.to_string()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn level(q: u32) -> Level0 {
        Level0::new(&QuadExt::new(q, 1).unwrap(), 10_000).unwrap()
    }

    #[test]
    fn sl2_order_four_theta_at_q3() {
        let lv = level(3);
        let theta = NormOneChar::new(lv.quad(), 1);
        let c = lv.sl2_cuspidal(&theta).unwrap();
        assert_eq!(c.chi.degree(), Some(2));
        assert_eq!(c.chi.norm(), Cyclotomic::one());
        assert_eq!(oracle_matches(&c.chi).unwrap().len(), 1);
        let n = lv.mats().encode(&lv.unipotents()[0]);
        assert_eq!(c.chi.at_code(n), Some(&Cyclotomic::from_int(-1)));
        assert_eq!(
            lv.sl2_cuspidal(&NormOneChar::new(lv.quad(), 2))
                .unwrap_err(),
            Error::ReducibleParameter
        );
    }

    #[test]
    fn gl2_cuspidals_at_q3() {
        let lv = level(3);
        let mut seen = Vec::new();
        for theta in MultChar::all(lv.quad().l())
            .into_iter()
            .filter(|t| t.is_regular(3))
        {
            let c = lv.gl2_cuspidal(&theta).unwrap();
            assert_eq!(c.chi.norm(), Cyclotomic::one());
            assert_eq!(c.chi, lv.gl2_cuspidal(&theta.compose_gamma(3)).unwrap().chi);
            let m = oracle_matches(&c.chi).unwrap();
            assert_eq!(m.len(), 1);
            seen.push(m[0]);
        }
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), 3);
        assert_eq!(oracle_cuspidal(lv.gl2(), lv.unipotent(), 2).unwrap(), seen);
    }

    #[test]
    fn u2_cuspidal_symmetric_at_q3() {
        let u = Unitary::new(&QuadExt::new(3, 1).unwrap(), 10_000).unwrap();
        let quad = u.spec().quad().clone();
        let (a, b) = (NormOneChar::new(&quad, 0), NormOneChar::new(&quad, 1));
        let x = u.u2_cuspidal(&a, &b).unwrap();
        assert_eq!(x.chi.degree(), Some(2));
        assert_eq!(x.chi, u.u2_cuspidal(&b, &a).unwrap().chi);
    }
}

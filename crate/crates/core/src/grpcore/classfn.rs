use std::fmt;
use std::sync::Arc;

use super::Group;
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};

/// One cyclotomic value per conjugacy class of a group.
#[derive(Clone)]
pub struct ClassFunction {
    group: Arc<Group>,
    values: Vec<Cyclotomic>,
}

impl fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClassFunction")
            .field("group", &self.group.name())
            .field("values", &self.values)
            .finish()
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &ClassFunction) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.values == other.values
    }
}

impl ClassFunction {
    pub fn new(group: &Arc<Group>, values: Vec<Cyclotomic>) -> Result<ClassFunction> {
        if values.len() != group.num_classes() {
            return Err(Error::InvalidParameter(format!(
                "{} values for {} classes",
                values.len(),
                group.num_classes()
            )));
        }
        Ok(ClassFunction {
            group: Arc::clone(group),
            values,
        })
    }

    pub(crate) fn from_values_unchecked(
        group: &Arc<Group>,
        values: Vec<Cyclotomic>,
    ) -> ClassFunction {
        ClassFunction {
            group: Arc::clone(group),
            values,
        }
    }

    pub fn from_fn(group: &Arc<Group>, f: impl FnMut(usize) -> Cyclotomic) -> ClassFunction {
        let values = (0..group.num_classes()).map(f).collect();
        ClassFunction {
            group: Arc::clone(group),
            values,
        }
    }

    pub fn zero(group: &Arc<Group>) -> ClassFunction {
        ClassFunction::from_fn(group, |_| Cyclotomic::from_int(0))
    }

    pub fn trivial(group: &Arc<Group>) -> ClassFunction {
        ClassFunction::from_fn(group, |_| Cyclotomic::one())
    }

    pub fn regular(group: &Arc<Group>) -> ClassFunction {
        let n = group.order() as i128;
        ClassFunction::from_fn(group, |c| Cyclotomic::from_int(if c == 0 { n } else { 0 }))
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }
    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }
    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }
    /// Value at the element with the given code, if it lies in the group.
    pub fn at_code(&self, code: u64) -> Option<&Cyclotomic> {
        self.group.class_of_code(code).map(|c| &self.values[c])
    }
    /// Value at the identity as an integer, when it is one.
    pub fn degree(&self) -> Option<i128> {
        let id_class = self.group.classes().class_of(self.group.table().id());
        self.values[id_class].to_integer()
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.zip(other, |a, b| a + b)
    }
    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.zip(other, |a, b| a - b)
    }
    pub fn mul(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.zip(other, |a, b| a * b)
    }
    pub fn scale(&self, c: &Cyclotomic) -> ClassFunction {
        ClassFunction {
            group: Arc::clone(&self.group),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }
    pub fn conj(&self) -> ClassFunction {
        ClassFunction {
            group: Arc::clone(&self.group),
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    fn zip(
        &self,
        other: &ClassFunction,
        f: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic,
    ) -> Result<ClassFunction> {
        if !Arc::ptr_eq(&self.group, &other.group) {
            return Err(Error::GroupMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(ClassFunction {
            group: Arc::clone(&self.group),
            values,
        })
    }

    pub fn norm(&self) -> Cyclotomic {
        inner_product(self, self).expect("same group")
    }

    /// Value transport to a subgroup over the same carrier.
    pub fn restrict(&self, h: &Arc<Group>) -> Result<ClassFunction> {
        if !h.is_subgroup_of(&self.group) {
            return Err(Error::NotSubgroup(format!(
                "{} in {}",
                h.name(),
                self.group.name()
            )));
        }
        Ok(ClassFunction::from_fn(h, |c| {
            let g_class = self
                .group
                .class_of_code(h.rep_code(c))
                .expect("subgroup membership checked");
            self.values[g_class].clone()
        }))
    }

    /// Induction to an overgroup: (Ind ψ)(g) = (|C_G(g)|/|H|)·Σ_{h ∈ H ∩ Cl_G(g)} ψ(h).
    pub fn induce(&self, g: &Arc<Group>) -> Result<ClassFunction> {
        let h = &self.group;
        if !h.is_subgroup_of(g) {
            return Err(Error::NotSubgroup(format!("{} in {}", h.name(), g.name())));
        }
        let mut acc = vec![Cyclotomic::from_int(0); g.num_classes()];
        for c in 0..h.num_classes() {
            let gc = g
                .class_of_code(h.rep_code(c))
                .expect("subgroup membership checked");
            let term = self.values[c].scale(h.classes().size(c) as i128, 1)?;
            acc[gc] = &acc[gc] + &term;
        }
        let values = acc
            .into_iter()
            .enumerate()
            .map(|(c, v)| v.scale(g.classes().centralizer_order(c) as i128, h.order() as i128))
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassFunction {
            group: Arc::clone(g),
            values,
        })
    }

    /// x ↦ φ(σ(x)) for a map σ on element codes that permutes classes.
    pub fn twist(&self, sigma: impl Fn(u64) -> u64) -> Result<ClassFunction> {
        let g = &self.group;
        let values = (0..g.num_classes())
            .map(|c| {
                let image = sigma(g.rep_code(c));
                g.class_of_code(image)
                    .map(|d| self.values[d].clone())
                    .ok_or_else(|| Error::InvalidParameter(format!("twist leaves {}", g.name())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassFunction {
            group: Arc::clone(g),
            values,
        })
    }

    pub fn value_strings(&self) -> Vec<String> {
        self.values.iter().map(|v| v.to_string()).collect()
    }
}

/// ⟨φ, ψ⟩ = (1/|G|) Σ_g φ(g)·conj(ψ(g)).
pub fn inner_product(phi: &ClassFunction, psi: &ClassFunction) -> Result<Cyclotomic> {
    if !Arc::ptr_eq(&phi.group, &psi.group) {
        return Err(Error::GroupMismatch);
    }
    let g = &phi.group;
    let mut acc = Cyclotomic::from_int(0);
    for c in 0..g.num_classes() {
        let term =
            (&phi.values[c] * &psi.values[c].conj()).scale(g.classes().size(c) as i128, 1)?;
        acc = &acc + &term;
    }
    acc.scale(1, g.order() as i128)
}

//! Character tables by simultaneous diagonalization of the class
//! multiplication matrices over F_r, lifted through power-map Fourier sums.

use super::modp::{
    charpoly, invm, mulm, nullspace, powm, prime_above, primitive_root, roots, rref,
};
use super::Group;
use crate::cyclo::Cyclotomic;
use crate::error::{Error, Result};

struct Space {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

fn split_space(space: Space, m: &[Vec<u64>], r: u64) -> Result<Vec<Space>> {
    let dim = space.rows.len();
    if dim == 1 {
        return Ok(vec![space]);
    }
    let k = m.len();
    let images: Vec<Vec<u64>> = space
        .rows
        .iter()
        .map(|b| {
            (0..k)
                .map(|s| {
                    m[s].iter()
                        .zip(b)
                        .fold(0, |acc, (&x, &y)| (acc + mulm(x, y, r)) % r)
                })
                .collect()
        })
        .collect();
    let a: Vec<Vec<u64>> = (0..dim)
        .map(|j| (0..dim).map(|i| images[i][space.pivots[j]]).collect())
        .collect();
    let eig = roots(&charpoly(&a, r), r);
    if eig.len() == 1 {
        let scalar = (0..dim).all(|i| (0..dim).all(|j| a[i][j] == if i == j { eig[0] } else { 0 }));
        return if scalar {
            Ok(vec![space])
        } else {
            Err(Error::Oracle("class matrix not diagonalizable".into()))
        };
    }
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in eig {
        let shifted: Vec<Vec<u64>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        if i == j {
                            (a[i][j] + r - lambda) % r
                        } else {
                            a[i][j]
                        }
                    })
                    .collect()
            })
            .collect();
        let mut rows: Vec<Vec<u64>> = nullspace(&shifted, r)
            .into_iter()
            .map(|coords| {
                let mut v = vec![0u64; k];
                for (ci, b) in coords.iter().zip(&space.rows) {
                    for (vj, &bj) in v.iter_mut().zip(b) {
                        *vj = (*vj + mulm(*ci, bj, r)) % r;
                    }
                }
                v
            })
            .collect();
        let pivots = rref(&mut rows, r);
        total += rows.len();
        out.push(Space { rows, pivots });
    }
    if total != dim {
        return Err(Error::Oracle("eigenspaces do not span".into()));
    }
    Ok(out)
}

pub(super) fn compute(g: &Group) -> Result<Vec<Vec<Cyclotomic>>> {
    let n = g.order();
    let k = g.num_classes();
    let cl = g.classes();
    let t = g.table();
    let e = g.exponent() as u64;
    let min = (2.0 * (n as f64).sqrt() * e as f64).floor() as u64 + 1;
    let r = prime_above(e, min);

    let mut coef = vec![0u64; k * k * k];
    for tt in 0..k {
        let z = cl.rep(tt);
        for x in 0..n as u32 {
            let y = t.mul(t.inv(x), z);
            coef[(cl.class_of(x) * k + cl.class_of(y)) * k + tt] += 1;
        }
    }

    let id_class = cl.class_of(t.id());
    let mut spaces = vec![Space {
        rows: (0..k)
            .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
            .collect(),
        pivots: (0..k).collect(),
    }];
    for rr in (0..k).filter(|&c| c != id_class) {
        if spaces.iter().all(|s| s.rows.len() == 1) {
            break;
        }
        let m: Vec<Vec<u64>> = (0..k)
            .map(|s| (0..k).map(|tt| coef[(rr * k + s) * k + tt] % r).collect())
            .collect();
        let mut next = Vec::new();
        for s in spaces {
            next.extend(split_space(s, &m, r)?);
        }
        spaces = next;
    }
    if spaces.len() != k {
        return Err(Error::Oracle(format!(
            "{} eigenspaces for {} classes",
            spaces.len(),
            k
        )));
    }

    let inv_class: Vec<usize> = (0..k).map(|c| cl.class_of(t.inv(cl.rep(c)))).collect();
    let zeta = powm(primitive_root(r), (r - 1) / e, r);
    let power_classes: Vec<Vec<usize>> = (0..k)
        .map(|c| {
            let x = cl.rep(c);
            let mut cur = t.id();
            (0..cl.element_order(c))
                .map(|_| {
                    let cls = cl.class_of(cur);
                    cur = t.mul(cur, x);
                    cls
                })
                .collect()
        })
        .collect();

    let mut table = Vec::with_capacity(k);
    for space in spaces {
        let w0 = space.rows[0][id_class];
        if w0 == 0 {
            return Err(Error::Oracle("eigenvector vanishes at the identity".into()));
        }
        let inv_w0 = invm(w0, r);
        let w: Vec<u64> = space.rows[0].iter().map(|&x| mulm(x, inv_w0, r)).collect();
        let s = (0..k).fold(0, |acc, c| {
            let term = mulm(
                mulm(w[c], w[inv_class[c]], r),
                invm(cl.size(c) as u64 % r, r),
                r,
            );
            (acc + term) % r
        });
        let d2 = mulm(n as u64 % r, invm(s, r), r);
        let degree = (1..=(n as f64).sqrt() as u64 + 1)
            .find(|&d| d * d % r == d2)
            .ok_or_else(|| Error::Oracle("no integral degree".into()))?;
        let chi: Vec<u64> = (0..k)
            .map(|c| mulm(mulm(w[c], degree, r), invm(cl.size(c) as u64 % r, r), r))
            .collect();

        let mut values = Vec::with_capacity(k);
        for c in 0..k {
            let o = cl.element_order(c) as u64;
            let step = e / o;
            let z_o = powm(zeta, step, r);
            let pw: Vec<u64> = (0..o)
                .scan(1u64, |acc, _| {
                    let cur = *acc;
                    *acc = mulm(*acc, z_o, r);
                    Some(cur)
                })
                .collect();
            let inv_o = invm(o % r, r);
            let mut terms = Vec::new();
            for kk in 0..o {
                let mut acc = 0u64;
                for (j, &pc) in power_classes[c].iter().enumerate() {
                    let root = pw[((o - (j as u64 * kk) % o) % o) as usize];
                    acc = (acc + mulm(chi[pc], root, r)) % r;
                }
                let a = mulm(acc, inv_o, r);
                if a > degree {
                    return Err(Error::Oracle(
                        "eigenvalue multiplicity exceeds degree".into(),
                    ));
                }
                if a > 0 {
                    terms.push(((kk * step) as i64, a as i128));
                }
            }
            values.push(Cyclotomic::from_exponents(e as u32, terms));
        }
        table.push((degree, values));
    }
    table.sort_by_cached_key(|(d, v)| (*d, v.iter().map(|x| x.to_string()).collect::<Vec<_>>()));
    Ok(table.into_iter().map(|(_, v)| v).collect())
}

#[cfg(test)]
mod tests {
    use super::super::tests::{cyclic, symmetric};
    use super::super::{character_table, inner_product, ClassFunction};
    use crate::cyclo::Cyclotomic;

    #[test]
    fn cyclic_group_table() {
        let g = cyclic(6);
        let t = character_table(&g).unwrap();
        assert_eq!(t.len(), 6);
        assert!(t.iter().all(|c| c.degree() == Some(1)));
    }

    #[test]
    fn symmetric_group_tables() {
        for (n, degs) in [(3, vec![1, 1, 2]), (4, vec![1, 1, 2, 3, 3])] {
            let g = symmetric(n);
            let t = character_table(&g).unwrap();
            let d: Vec<i128> = t.iter().map(|c| c.degree().unwrap()).collect();
            assert_eq!(d, degs);
            for (i, a) in t.iter().enumerate() {
                for (j, b) in t.iter().enumerate() {
                    let ip = inner_product(a, b).unwrap();
                    assert_eq!(ip, Cyclotomic::from_int((i == j) as i128));
                }
            }
            let reg = ClassFunction::regular(&g);
            assert_eq!(
                inner_product(&reg, &ClassFunction::trivial(&g)).unwrap(),
                Cyclotomic::one()
            );
        }
    }
}

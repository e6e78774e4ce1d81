//! Linear algebra over a prime field F_r with r < 2³².

pub fn mulm(a: u64, b: u64, r: u64) -> u64 {
    a * b % r
}

pub fn powm(mut b: u64, mut e: u64, r: u64) -> u64 {
    let mut acc = 1 % r;
    b %= r;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, b, r);
        }
        b = mulm(b, b, r);
        e >>= 1;
    }
    acc
}

pub fn invm(a: u64, r: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(r));
    powm(a, r - 2, r)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Least prime r ≡ 1 (mod e) with r > min.
pub fn prime_above(e: u64, min: u64) -> u64 {
    let mut r = (min / e + 1) * e + 1;
    while !is_prime(r) {
        r += e;
    }
    r
}

pub fn primitive_root(r: u64) -> u64 {
    let factors = crate::ffield::prime_factors(r - 1);
    (2..r)
        .find(|&g| factors.iter().all(|&f| powm(g, (r - 1) / f, r) != 1))
        .expect("prime fields have primitive roots")
}

/// Row-reduce in place; returns pivot columns. Zero rows are dropped.
pub fn rref(rows: &mut Vec<Vec<u64>>, r: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |v| v.len());
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        let Some(p) = (top..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(top, p);
        let inv = invm(rows[top][col], r);
        for x in rows[top].iter_mut() {
            *x = mulm(*x, inv, r);
        }
        for i in 0..rows.len() {
            if i != top && rows[i][col] != 0 {
                let f = rows[i][col];
                for j in 0..ncols {
                    let sub = mulm(f, rows[top][j], r);
                    rows[i][j] = (rows[i][j] + r - sub) % r;
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    pivots
}

/// Basis of {x : A x = 0}.
pub fn nullspace(a: &[Vec<u64>], r: u64) -> Vec<Vec<u64>> {
    let n = a.first().map_or(0, |v| v.len());
    let mut rows = a.to_vec();
    let pivots = rref(&mut rows, r);
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = (r - rows[i][free]) % r;
        }
        basis.push(v);
    }
    basis
}

/// Characteristic polynomial det(xI − A), coefficients low to high.
pub fn charpoly(a: &[Vec<u64>], r: u64) -> Vec<u64> {
    let n = a.len();
    let mut h = a.to_vec();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = invm(h[m][m - 1], r);
        for k in m + 1..n {
            let u = mulm(h[k][m - 1], inv, r);
            if u == 0 {
                continue;
            }
            for j in 0..n {
                let s = mulm(u, h[m][j], r);
                h[k][j] = (h[k][j] + r - s) % r;
            }
            for row in h.iter_mut() {
                let s = mulm(u, row[k], r);
                row[m] = (row[m] + s) % r;
            }
        }
    }
    let mut p: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let prev = &p[k - 1];
        let mut pk = vec![0u64; k + 1];
        for (i, &c) in prev.iter().enumerate() {
            pk[i + 1] = (pk[i + 1] + c) % r;
            pk[i] = (pk[i] + r - mulm(h[k - 1][k - 1], c, r)) % r;
        }
        let mut t = 1u64;
        for i in (1..k).rev() {
            t = mulm(t, h[i][i - 1], r);
            let f = mulm(t, h[i - 1][k - 1], r);
            if f == 0 {
                continue;
            }
            for (j, &c) in p[i - 1].iter().enumerate() {
                pk[j] = (pk[j] + r - mulm(f, c, r)) % r;
            }
        }
        p.push(pk);
    }
    p.pop().expect("nonempty")
}

pub fn roots(poly: &[u64], r: u64) -> Vec<u64> {
    (0..r)
        .filter(|&x| {
            poly.iter()
                .rev()
                .fold(0u64, |acc, &c| (mulm(acc, x, r) + c) % r)
                == 0
        })
        .collect()
}

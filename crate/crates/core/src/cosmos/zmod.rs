//! Integer Smith normal form and the finitely generated abelian group
//! computations built on it.
//!
//! A group is given by a list of cyclic orders `a_1, …, a_n` (0 for Z), i.e.
//! the presentation `Z^n / diag(a)`. Morphisms are integer matrices acting on
//! generators.

pub type IMat = Vec<Vec<i128>>;

pub fn zeros(rows: usize, cols: usize) -> IMat {
    vec![vec![0; cols]; rows]
}

pub fn identity(n: usize) -> IMat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

pub fn mat_mul(a: &IMat, b: &IMat, inner: usize, cols: usize) -> IMat {
    let mut out = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for k in 0..inner {
            let x = row[k];
            if x == 0 {
                continue;
            }
            for j in 0..cols {
                out[i][j] += x * b[k][j];
            }
        }
    }
    out
}

/// `u · a · v = diag` with `u` and `v` unimodular.
#[derive(Debug, Clone)]
pub struct Snf {
    pub u: IMat,
    pub uinv: IMat,
    pub v: IMat,
    pub diag: Vec<i128>,
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
}

struct Work {
    a: IMat,
    u: IMat,
    uinv: IMat,
    v: IMat,
    m: usize,
    n: usize,
}

impl Work {
    fn row_add(&mut self, i: usize, j: usize, c: i128) {
        if c == 0 {
            return;
        }
        for k in 0..self.n {
            let x = self.a[j][k];
            self.a[i][k] += c * x;
        }
        for k in 0..self.m {
            let x = self.u[j][k];
            self.u[i][k] += c * x;
        }
        for k in 0..self.m {
            let x = self.uinv[k][i];
            self.uinv[k][j] -= c * x;
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in self.uinv.iter_mut() {
            row.swap(i, j);
        }
    }

    fn row_neg(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -*x;
        }
        for x in self.u[i].iter_mut() {
            *x = -*x;
        }
        for row in self.uinv.iter_mut() {
            row[i] = -row[i];
        }
    }

    fn col_add(&mut self, i: usize, j: usize, c: i128) {
        if c == 0 {
            return;
        }
        for row in self.a.iter_mut() {
            row[i] += c * row[j];
        }
        for row in self.v.iter_mut() {
            row[i] += c * row[j];
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        for row in self.v.iter_mut() {
            row.swap(i, j);
        }
    }
}

pub fn snf(a: &IMat, rows: usize, cols: usize) -> Snf {
    let mut w = Work {
        a: a.clone(),
        u: identity(rows),
        uinv: identity(rows),
        v: identity(cols),
        m: rows,
        n: cols,
    };
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = w.a[i][j];
                if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < w.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if w.a[i][t] != 0 {
                    let q = w.a[i][t] / w.a[t][t];
                    w.row_add(i, t, -q);
                    if w.a[i][t] != 0 {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if w.a[t][j] != 0 {
                    let q = w.a[t][j] / w.a[t][t];
                    w.col_add(j, t, -q);
                    if w.a[t][j] != 0 {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // move the smallest remaining entry of row/column t to the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    let x = w.a[i][t];
                    if x != 0 && x.abs() < w.a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    let x = w.a[t][j];
                    if x != 0 && x.abs() < w.a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                w.row_swap(t, best.0);
                w.col_swap(t, best.1);
                continue;
            }
            let pivot = w.a[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| w.a[i][j] % pivot != 0));
            match bad {
                Some(i) => w.row_add(t, i, 1),
                None => break,
            }
        }
        if w.a[t][t] < 0 {
            w.row_neg(t);
        }
        t += 1;
    }
    let diag = (0..rows.min(cols)).map(|i| w.a[i][i]).collect();
    Snf {
        u: w.u,
        uinv: w.uinv,
        v: w.v,
        diag,
        rank: t,
        rows,
        cols,
    }
}

fn reduce(x: i128, order: u64) -> i128 {
    if order == 0 {
        x
    } else {
        x.rem_euclid(order as i128)
    }
}

/// `[m | diag(b)]`, the relation-augmented matrix of a map into `Z^m / diag(b)`.
fn augmented(m: &IMat, src_len: usize, dst: &[u64]) -> IMat {
    let rows = dst.len();
    let mut g = zeros(rows, src_len + rows);
    for i in 0..rows {
        g[i][..src_len].copy_from_slice(&m[i][..src_len]);
        g[i][src_len + i] = dst[i] as i128;
    }
    g
}

/// Solves `m · x ≡ t (mod relations of dst)` for many right-hand sides.
#[derive(Debug, Clone)]
pub struct ZSolver {
    snf: Snf,
    src_len: usize,
    src: Vec<u64>,
}

impl ZSolver {
    pub fn new(m: &IMat, src: &[u64], dst: &[u64]) -> Self {
        let g = augmented(m, src.len(), dst);
        ZSolver {
            snf: snf(&g, dst.len(), src.len() + dst.len()),
            src_len: src.len(),
            src: src.to_vec(),
        }
    }

    pub fn solve(&self, t: &[i128]) -> Option<Vec<i128>> {
        let s = &self.snf;
        let w: Vec<i128> = s
            .u
            .iter()
            .map(|row| row.iter().zip(t).map(|(a, b)| a * b).sum())
            .collect();
        let mut z = vec![0i128; s.cols];
        for i in 0..s.rows {
            if i < s.rank {
                if w[i] % s.diag[i] != 0 {
                    return None;
                }
                z[i] = w[i] / s.diag[i];
            } else if w[i] != 0 {
                return None;
            }
        }
        let x = (0..self.src_len)
            .map(|r| {
                let v: i128 = s.v[r].iter().zip(&z).map(|(a, b)| a * b).sum();
                reduce(v, self.src[r])
            })
            .collect();
        Some(x)
    }
}

/// Kernel of `m: src → dst` as `(orders, inclusion matrix src_len × k)`.
pub fn kernel(m: &IMat, src: &[u64], dst: &[u64]) -> (Vec<u64>, IMat) {
    let n = src.len();
    let g = augmented(m, n, dst);
    let s = snf(&g, dst.len(), n + dst.len());
    let kcols: Vec<usize> = (s.rank..n + dst.len()).collect();
    // projections of the kernel lattice basis onto the source coordinates
    let e: IMat = (0..n)
        .map(|r| kcols.iter().map(|&c| s.v[r][c]).collect())
        .collect();
    let ec = kcols.len();
    let se = snf(&e, n, ec);
    let re = se.rank;
    // basis of the lattice K spanned by e
    let basis: IMat = (0..n)
        .map(|r| (0..re).map(|i| se.uinv[r][i] * se.diag[i]).collect())
        .collect();
    // relations of src expressed in that basis
    let rel_cols: Vec<usize> = (0..n).filter(|&j| src[j] > 0).collect();
    let mut rmat = zeros(re, rel_cols.len());
    for (k, &j) in rel_cols.iter().enumerate() {
        for i in 0..n.min(se.rows) {
            let uc = se.u[i][j] * src[j] as i128;
            if i < re {
                debug_assert_eq!(uc % se.diag[i], 0);
                rmat[i][k] = uc / se.diag[i];
            } else {
                debug_assert_eq!(uc, 0);
            }
        }
    }
    let sr = snf(&rmat, re, rel_cols.len());
    let orders: Vec<u64> = (0..re)
        .map(|i| if i < sr.rank { sr.diag[i] as u64 } else { 0 })
        .collect();
    let incl = mat_mul(&basis, &sr.uinv, re, re);
    let keep: Vec<usize> = (0..re).filter(|&i| orders[i] != 1).collect();
    let out_orders = keep.iter().map(|&i| orders[i]).collect();
    let out: IMat = (0..n)
        .map(|r| keep.iter().map(|&c| reduce(incl[r][c], src[r])).collect())
        .collect();
    (out_orders, out)
}

/// Cokernel of `m: src → dst` as `(orders, quotient matrix k × dst_len, lifts dst_len × k)`.
pub fn cokernel(m: &IMat, src_len: usize, dst: &[u64]) -> (Vec<u64>, IMat, IMat) {
    let rows = dst.len();
    let g = augmented(m, src_len, dst);
    let s = snf(&g, rows, src_len + rows);
    let orders: Vec<u64> = (0..rows)
        .map(|i| if i < s.rank { s.diag[i] as u64 } else { 0 })
        .collect();
    let keep: Vec<usize> = (0..rows).filter(|&i| orders[i] != 1).collect();
    let q: IMat = keep
        .iter()
        .map(|&i| s.u[i].iter().map(|&x| reduce(x, orders[i])).collect())
        .collect();
    let lifts: IMat = (0..rows)
        .map(|r| keep.iter().map(|&i| reduce(s.uinv[r][i], dst[r])).collect())
        .collect();
    (keep.iter().map(|&i| orders[i]).collect(), q, lifts)
}

/// Invariant factor form `(free rank, torsion d_1 | d_2 | …)` of a cyclic list.
pub fn invariants(orders: &[u64]) -> (usize, Vec<u64>) {
    let n = orders.len();
    let mut d = zeros(n, n);
    for (i, &o) in orders.iter().enumerate() {
        d[i][i] = o as i128;
    }
    let s = snf(&d, n, n);
    let mut torsion = Vec::new();
    for i in 0..s.rank {
        if s.diag[i] != 1 {
            torsion.push(s.diag[i] as u64);
        }
    }
    (n - s.rank, torsion)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(a: &IMat, rows: usize, cols: usize) {
        let s = snf(a, rows, cols);
        let uav = mat_mul(&mat_mul(&s.u, a, rows, cols), &s.v, cols, cols);
        for i in 0..rows {
            for j in 0..cols {
                let expect = if i == j && i < s.rank { s.diag[i] } else { 0 };
                assert_eq!(uav[i][j], expect);
            }
        }
        for i in 1..s.rank {
            assert_eq!(s.diag[i] % s.diag[i - 1], 0);
        }
        let uu = mat_mul(&s.u, &s.uinv, rows, rows);
        assert_eq!(uu, identity(rows));
    }

    #[test]
    fn snf_small() {
        check_snf(&vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3, 3);
        check_snf(&vec![vec![0, 3], vec![2, 0]], 2, 2);
        check_snf(&vec![vec![6, 0, 0, 9]], 1, 4);
    }

    #[test]
    fn invariant_factors() {
        assert_eq!(invariants(&[2, 3]), (0, vec![6]));
        assert_eq!(invariants(&[0, 4, 6]), (1, vec![2, 12]));
        assert_eq!(invariants(&[1, 1]), (0, vec![]));
    }

    #[test]
    fn cokernel_of_two() {
        let (orders, q, _) = cokernel(&vec![vec![2]], 1, &[0]);
        assert_eq!(orders, vec![2]);
        assert_eq!(q, vec![vec![1]]);
    }

    #[test]
    fn kernel_of_projection() {
        // Z --(1)--> Z/2 has kernel 2Z
        let (orders, incl) = kernel(&vec![vec![1]], &[0], &[2]);
        assert_eq!(orders, vec![0]);
        assert_eq!(incl[0][0].abs(), 2);
        // Z/4 --(2)--> Z/4 has kernel {0,2} ≅ Z/2
        let (orders, incl) = kernel(&vec![vec![2]], &[4], &[4]);
        assert_eq!(orders, vec![2]);
        assert_eq!(incl[0][0].rem_euclid(4), 2);
    }
}

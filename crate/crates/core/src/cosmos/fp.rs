//! Dense linear algebra over the prime field F_p.

pub type Mat = Vec<Vec<u64>>;

pub fn inv(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2)
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

pub fn zeros(rows: usize, cols: usize) -> Mat {
    vec![vec![0; cols]; rows]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

/// Row reduction of `a` (rows × cols) together with an invertible `t` such
/// that `t · a = r` is in reduced row echelon form. Returns `(r, t, pivots)`.
pub fn rref_with_transform(a: &Mat, cols: usize, p: u64) -> (Mat, Mat, Vec<usize>) {
    let rows = a.len();
    let mut r = a.clone();
    let mut t = identity(rows);
    let mut pivots = Vec::new();
    let mut prow = 0;
    for c in 0..cols {
        if prow == rows {
            break;
        }
        let Some(sel) = (prow..rows).find(|&i| r[i][c] != 0) else {
            continue;
        };
        r.swap(prow, sel);
        t.swap(prow, sel);
        let s = inv(r[prow][c], p);
        for x in r[prow].iter_mut() {
            *x = *x * s % p;
        }
        for x in t[prow].iter_mut() {
            *x = *x * s % p;
        }
        for i in 0..rows {
            if i != prow && r[i][c] != 0 {
                let factor = r[i][c];
                for k in 0..cols {
                    let v = r[prow][k];
                    if v != 0 {
                        r[i][k] = (r[i][k] + p - factor * v % p) % p;
                    }
                }
                for k in 0..rows {
                    let v = t[prow][k];
                    if v != 0 {
                        t[i][k] = (t[i][k] + p - factor * v % p) % p;
                    }
                }
            }
        }
        pivots.push(c);
        prow += 1;
    }
    (r, t, pivots)
}

pub fn rank(a: &Mat, cols: usize, p: u64) -> usize {
    rref_with_transform(a, cols, p).2.len()
}

/// Basis of the null space of `a`, as columns of a `cols × k` matrix.
pub fn kernel(a: &Mat, cols: usize, p: u64) -> Mat {
    let (r, _, pivots) = rref_with_transform(a, cols, p);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = zeros(cols, free.len());
    for (k, &fc) in free.iter().enumerate() {
        basis[fc][k] = 1;
        for (prow, &pc) in pivots.iter().enumerate() {
            basis[pc][k] = (p - r[prow][fc]) % p;
        }
    }
    basis
}

/// Precomputed solver for `a · x = b`.
#[derive(Debug, Clone)]
pub struct Solver {
    r: Mat,
    t: Mat,
    pivots: Vec<usize>,
    cols: usize,
    p: u64,
}

impl Solver {
    pub fn new(a: &Mat, cols: usize, p: u64) -> Self {
        let (r, t, pivots) = rref_with_transform(a, cols, p);
        Solver { r, t, pivots, cols, p }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Rows of `t` beyond the rank span the annihilator of the column space.
    pub fn cokernel_rows(&self) -> Mat {
        self.t[self.pivots.len()..].to_vec()
    }

    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        let p = self.p;
        let tb: Vec<u64> = self
            .t
            .iter()
            .map(|row| row.iter().zip(b).fold(0, |acc, (x, y)| (acc + x * y) % p))
            .collect();
        if tb[self.pivots.len()..].iter().any(|&v| v != 0) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (prow, &pc) in self.pivots.iter().enumerate() {
            x[pc] = tb[prow];
        }
        debug_assert!(self.r.len() >= self.pivots.len());
        Some(x)
    }
}

/// Standard basis vectors extending the column space of `a` to all of F_p^rows.
pub fn complement_basis(a: &Mat, cols: usize, p: u64) -> Vec<usize> {
    let rows = a.len();
    // Work with the transpose: row space of aᵀ is the column space of a.
    let mut span: Mat = (0..cols).map(|c| (0..rows).map(|r| a[r][c]).collect()).collect();
    let mut chosen = Vec::new();
    let mut current = rank(&span, rows, p);
    for i in 0..rows {
        let mut e = vec![0; rows];
        e[i] = 1;
        span.push(e);
        let r = rank(&span, rows, p);
        if r > current {
            chosen.push(i);
            current = r;
        } else {
            span.pop();
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_rank() {
        let a = vec![vec![1, 1, 0], vec![0, 1, 1]];
        assert_eq!(rank(&a, 3, 2), 2);
        let k = kernel(&a, 3, 2);
        assert_eq!(k, vec![vec![1], vec![1], vec![1]]);
    }

    #[test]
    fn solver_consistency() {
        let a = vec![vec![1, 2], vec![2, 4]];
        let s = Solver::new(&a, 2, 5);
        assert_eq!(s.rank(), 1);
        assert!(s.solve(&[1, 1]).is_none());
        let x = s.solve(&[3, 1]).unwrap();
        assert_eq!((x[0] + 2 * x[1]) % 5, 3);
        assert_eq!(s.cokernel_rows().len(), 1);
    }

    #[test]
    fn complement_of_line() {
        let a = vec![vec![1], vec![1]];
        assert_eq!(complement_basis(&a, 1, 2), vec![0]);
    }
}

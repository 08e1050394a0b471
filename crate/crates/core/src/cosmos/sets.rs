//! Finite-set algorithms: joins for limits and union-find for coequalizers.

use std::collections::HashMap;

/// One equation `f(x_left) = g(x_right)` between factor elements; tables map
/// factor elements into a common target set.
pub struct SetEq<'a> {
    pub left: usize,
    pub f: &'a [usize],
    pub right: usize,
    pub g: &'a [usize],
}

/// All tuples `(x_0, …, x_{r−1})` with `x_i < sizes[i]` satisfying every
/// equation, in lexicographic order.
pub fn join(sizes: &[usize], eqs: &[SetEq<'_>]) -> Vec<Vec<u32>> {
    let r = sizes.len();
    if sizes.contains(&0) {
        return Vec::new();
    }
    // preimage indices for each equation side
    let index = |table: &[usize]| -> HashMap<usize, Vec<u32>> {
        let mut h: HashMap<usize, Vec<u32>> = HashMap::new();
        for (x, &y) in table.iter().enumerate() {
            h.entry(y).or_default().push(x as u32);
        }
        h
    };
    let left_idx: Vec<HashMap<usize, Vec<u32>>> = eqs.iter().map(|e| index(e.f)).collect();
    let right_idx: Vec<HashMap<usize, Vec<u32>>> = eqs.iter().map(|e| index(e.g)).collect();

    // greedy order: most constrained first
    let mut order = Vec::with_capacity(r);
    let mut placed = vec![false; r];
    for _ in 0..r {
        let mut best: Option<(usize, (usize, std::cmp::Reverse<usize>))> = None;
        for i in (0..r).filter(|&i| !placed[i]) {
            let links = eqs
                .iter()
                .filter(|e| {
                    (e.left == i && (placed[e.right] || e.right == i))
                        || (e.right == i && placed[e.left])
                })
                .count();
            let key = (links, std::cmp::Reverse(sizes[i]));
            if best.is_none_or(|(_, k)| key > k) {
                best = Some((i, key));
            }
        }
        let (i, _) = best.unwrap();
        placed[i] = true;
        order.push(i);
    }
    let mut position = vec![0; r];
    for (pos, &i) in order.iter().enumerate() {
        position[i] = pos;
    }

    let mut out = Vec::new();
    let mut cur = vec![0u32; r];
    fn rec(
        depth: usize,
        order: &[usize],
        position: &[usize],
        sizes: &[usize],
        eqs: &[SetEq<'_>],
        left_idx: &[HashMap<usize, Vec<u32>>],
        right_idx: &[HashMap<usize, Vec<u32>>],
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if depth == order.len() {
            out.push(cur.clone());
            return;
        }
        let i = order[depth];
        // candidate lists from equations linking i to earlier factors
        let mut lists: Vec<&[u32]> = Vec::new();
        let mut empty = false;
        for (k, e) in eqs.iter().enumerate() {
            if e.left == i && e.right != i && position[e.right] < depth {
                let v = e.g[cur[e.right] as usize];
                match left_idx[k].get(&v) {
                    Some(l) => lists.push(l),
                    None => empty = true,
                }
            } else if e.right == i && e.left != i && position[e.left] < depth {
                let v = e.f[cur[e.left] as usize];
                match right_idx[k].get(&v) {
                    Some(l) => lists.push(l),
                    None => empty = true,
                }
            }
        }
        if empty {
            return;
        }
        let check = |x: u32, cur: &Vec<u32>| -> bool {
            eqs.iter().all(|e| {
                let xl = if e.left == i {
                    Some(x)
                } else if position[e.left] < depth {
                    Some(cur[e.left])
                } else {
                    None
                };
                let xr = if e.right == i {
                    Some(x)
                } else if position[e.right] < depth {
                    Some(cur[e.right])
                } else {
                    None
                };
                match (xl, xr) {
                    (Some(a), Some(b)) if e.left == i || e.right == i => {
                        e.f[a as usize] == e.g[b as usize]
                    }
                    _ => true,
                }
            })
        };
        let try_x = |x: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>| {
            if check(x, cur) {
                cur[i] = x;
                rec(depth + 1, order, position, sizes, eqs, left_idx, right_idx, cur, out);
            }
        };
        if let Some(shortest) = lists.iter().min_by_key(|l| l.len()) {
            for &x in shortest.iter() {
                try_x(x, cur, out);
            }
        } else {
            for x in 0..sizes[i] as u32 {
                try_x(x, cur, out);
            }
        }
    }
    rec(
        0, &order, &position, sizes, eqs, &left_idx, &right_idx, &mut cur, &mut out,
    );
    out.sort();
    out
}

/// Union-find quotient of `0..n` by the given identifications. Classes are
/// numbered by their least element; returns `(class of each element, least
/// element of each class)`.
pub fn quotient(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> (Vec<usize>, Vec<usize>) {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (a, b) in pairs {
        let ra = find(&mut parent, a);
        let rb = find(&mut parent, b);
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent[hi] = lo;
        }
    }
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    let mut root_class: HashMap<usize, usize> = HashMap::new();
    for x in 0..n {
        let r = find(&mut parent, x);
        let c = *root_class.entry(r).or_insert_with(|| {
            reps.push(x);
            reps.len() - 1
        });
        class[x] = c;
    }
    (class, reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pullback_of_injections() {
        // subsets {0,1} and {1,2} of a 3-set
        let f = [0usize, 1];
        let g = [1usize, 2];
        let t = join(&[2, 2], &[SetEq { left: 0, f: &f, right: 1, g: &g }]);
        assert_eq!(t, vec![vec![1, 0]]);
    }

    #[test]
    fn product_without_equations() {
        assert_eq!(join(&[2, 3], &[]).len(), 6);
        assert!(join(&[2, 0], &[]).is_empty());
    }

    #[test]
    fn quotient_classes() {
        let (c, reps) = quotient(4, [(3, 1), (2, 2)]);
        assert_eq!(c, vec![0, 1, 2, 1]);
        assert_eq!(reps, vec![0, 1, 2]);
    }
}

//! Sparse linear algebra over F_p: ranks by incremental echelon reduction.

use std::collections::BinaryHeap;

use rustc_hash::FxHashMap as HashMap;

use crate::field::Fp;

/// Sparse vector: `(index, value)` pairs, indices strictly increasing, values nonzero.
pub type SparseVec = Vec<(u32, u32)>;

/// Echelon basis of a growing subspace, keyed by each vector's last index.
/// Reduction runs in a dense scratch row, visiting live indices from the
/// top through a max-heap.
#[derive(Debug, Clone)]
pub struct Echelon {
    f: Fp,
    pivots: HashMap<u32, SparseVec>,
    dense: Vec<u32>,
    heap: BinaryHeap<u32>,
}

impl Echelon {
    pub fn new(f: Fp) -> Self {
        Echelon { f, pivots: HashMap::default(), dense: Vec::new(), heap: BinaryHeap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the current pivots until its last index is free.
    /// Pivoting on the last entry keeps fill-in low for Čech differentials.
    pub fn reduce(&mut self, v: SparseVec) -> SparseVec {
        match v.last() {
            Some((lead, _)) if self.pivots.contains_key(lead) => {}
            _ => return v,
        }
        let Echelon { f, pivots, dense, heap } = self;
        let p = f.modulus() as u64;
        if let Some(&(last, _)) = v.last() {
            if dense.len() <= last as usize {
                dense.resize(last as usize + 1, 0);
            }
        }
        for &(i, x) in &v {
            dense[i as usize] = x;
            heap.push(i);
        }
        let mut out: SparseVec = Vec::new();
        while let Some(i) = heap.pop() {
            while heap.peek() == Some(&i) {
                heap.pop();
            }
            let c = dense[i as usize];
            if c == 0 {
                continue;
            }
            if out.is_empty() {
                if let Some(piv) = pivots.get(&i) {
                    // pivots are monic in their last entry, which is `i`
                    let neg = p - c as u64;
                    for &(j, x) in piv {
                        let old = dense[j as usize];
                        let new = ((old as u64 + neg * x as u64) % p) as u32;
                        if old == 0 && new != 0 {
                            heap.push(j);
                        }
                        dense[j as usize] = new;
                    }
                    continue;
                }
            }
            out.push((i, c));
            dense[i as usize] = 0;
        }
        out.reverse();
        out
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        match v.last() {
            None => false,
            Some(&(lead, c)) => {
                let inv = self.f.inv(c);
                let v: SparseVec = v.into_iter().map(|(i, x)| (i, self.f.mul(x, inv))).collect();
                self.pivots.insert(lead, v);
                true
            }
        }
    }

    pub fn contains(&mut self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Rank of the span of `vecs`. Sparsest vectors are inserted first to limit fill-in.
pub fn rank(f: &Fp, vecs: Vec<SparseVec>) -> usize {
    let mut vecs = vecs;
    vecs.retain(|v| !v.is_empty());
    vecs.sort_by_key(|v| (v.len(), v.first().map(|x| x.0)));
    let mut e = Echelon::new(*f);
    for v in vecs {
        e.insert(v);
    }
    e.rank()
}

/// Builds a sparse vector from unsorted, possibly repeated entries.
pub fn collect_sparse(f: &Fp, mut entries: Vec<(u32, u32)>) -> SparseVec {
    entries.sort_unstable_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(entries.len());
    for (i, v) in entries {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 = f.add(last.1, v),
            _ => out.push((i, v)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Prime;

    fn dense_rank(f: &Fp, rows: &[Vec<u32>]) -> usize {
        let mut m: Vec<Vec<u32>> = rows.to_vec();
        let ncols = m.first().map_or(0, |r| r.len());
        let mut r = 0;
        for c in 0..ncols {
            let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
            m.swap(r, piv);
            let inv = f.inv(m[r][c]);
            for i in 0..m.len() {
                if i != r && m[i][c] != 0 {
                    let k = f.mul(m[i][c], inv);
                    for j in 0..ncols {
                        let s = f.mul(k, m[r][j]);
                        m[i][j] = f.sub(m[i][j], s);
                    }
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn agrees_with_dense_elimination() {
        use rand::{Rng, SeedableRng};
        let f = Fp::new(Prime::new(5).unwrap());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let (n, m) = (rng.gen_range(1..12), rng.gen_range(1..12));
            let rows: Vec<Vec<u32>> = (0..n)
                .map(|_| (0..m).map(|_| if rng.gen_bool(0.4) { rng.gen_range(0..5) } else { 0 }).collect())
                .collect();
            let sparse: Vec<SparseVec> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|e| *e.1 != 0).map(|(i, &v)| (i as u32, v)).collect())
                .collect();
            assert_eq!(rank(&f, sparse), dense_rank(&f, &rows));
        }
    }

    #[test]
    fn dependent_vectors() {
        let f = Fp::new(Prime::new(3).unwrap());
        let v1 = vec![(0, 1), (2, 2)];
        let v2 = vec![(0, 2), (2, 1)]; // 2·v1
        assert_eq!(rank(&f, vec![v1, v2, vec![(1, 1)]]), 2);
    }
}

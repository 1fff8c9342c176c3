//! Sparse Smith normal form over Z with optional transform tracking, plus
//! linear solvers over Z and Z/N built on it.
//!
//! Entries are arbitrary-precision integers. Pivoting prefers unit entries in
//! sparse columns (Markowitz-style); non-unit pivots fall back to the
//! classical division dance. Row and column operations are kept as logs so
//! that U v, V y and U^{-1} e_i can be replayed without dense transforms.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::{BinaryHeap, HashMap, HashSet};

#[derive(Clone, Debug)]
pub enum Op {
    Swap(u32, u32),
    Neg(u32),
    /// dst += c * src
    AddMul(u32, u32, BigInt),
}

#[derive(Clone, Debug, Default)]
pub struct SparseMat {
    pub nrows: usize,
    pub ncols: usize,
    entries: Vec<(u32, u32, i64)>,
}

impl SparseMat {
    pub fn new(nrows: usize, ncols: usize) -> SparseMat {
        SparseMat {
            nrows,
            ncols,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, r: usize, c: usize, v: i64) {
        if v != 0 {
            self.entries.push((r as u32, c as u32, v));
        }
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries_iter(&self) -> impl Iterator<Item = &(u32, u32, i64)> {
        self.entries.iter()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut m = vec![vec![BigInt::zero(); self.ncols]; self.nrows];
        for &(r, c, v) in &self.entries {
            m[r as usize][c as usize] += v;
        }
        m
    }

    /// Drops zero columns and duplicate (up to sign) columns; the column span
    /// is unchanged. Only sound when column transforms are not needed.
    pub fn dedup_columns(&self) -> SparseMat {
        let mut cols: Vec<Vec<(u32, i64)>> = vec![Vec::new(); self.ncols];
        for &(r, c, v) in &self.entries {
            cols[c as usize].push((r, v));
        }
        let mut seen: HashSet<Vec<(u32, i64)>> = HashSet::new();
        let mut out = SparseMat::new(self.nrows, 0);
        for col in cols.iter_mut() {
            col.sort_unstable();
            let mut merged: Vec<(u32, i64)> = Vec::with_capacity(col.len());
            for &(r, v) in col.iter() {
                if let Some(last) = merged.last_mut() {
                    if last.0 == r {
                        last.1 += v;
                        continue;
                    }
                }
                merged.push((r, v));
            }
            merged.retain(|&(_, v)| v != 0);
            if merged.is_empty() {
                continue;
            }
            let sign = merged[0].1.signum();
            let canon: Vec<(u32, i64)> = merged.iter().map(|&(r, v)| (r, v * sign)).collect();
            if seen.insert(canon.clone()) {
                let c = out.ncols;
                out.ncols += 1;
                for (r, v) in canon {
                    out.push(r as usize, c, v);
                }
            }
        }
        out
    }
}

pub struct SmithDecomposition {
    pub nrows: usize,
    pub ncols: usize,
    /// Nonzero invariant factors d_1 | d_2 | ..., all positive.
    pub diagonal: Vec<BigInt>,
    row_ops: Option<Vec<Op>>,
    col_ops: Option<Vec<Op>>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Track {
    pub rows: bool,
    pub cols: bool,
}

impl Track {
    pub const NONE: Track = Track {
        rows: false,
        cols: false,
    };
    pub const ROWS: Track = Track {
        rows: true,
        cols: false,
    };
    pub const BOTH: Track = Track {
        rows: true,
        cols: true,
    };
}

/// Euclidean division with remainder in [0, |b|).
fn div_euclid_big(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    let (q, r) = a.div_rem(b);
    if r.is_negative() {
        if b.is_positive() {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

struct Work {
    row: Vec<HashMap<u32, BigInt>>,
    col: Vec<HashSet<u32>>,
    row_ops: Option<Vec<Op>>,
    col_ops: Option<Vec<Op>>,
}

impl Work {
    fn get(&self, r: u32, c: u32) -> BigInt {
        self.row[r as usize].get(&c).cloned().unwrap_or_else(BigInt::zero)
    }

    fn is_set(&self, r: u32, c: u32) -> bool {
        self.row[r as usize].contains_key(&c)
    }

    fn set(&mut self, r: u32, c: u32, v: BigInt) {
        if v.is_zero() {
            if self.row[r as usize].remove(&c).is_some() {
                self.col[c as usize].remove(&r);
            }
        } else {
            self.row[r as usize].insert(c, v);
            self.col[c as usize].insert(r);
        }
    }

    fn add_mul_row(&mut self, src: u32, dst: u32, k: &BigInt) {
        debug_assert!(src != dst && !k.is_zero());
        let items: Vec<(u32, BigInt)> = self.row[src as usize]
            .iter()
            .map(|(&c, v)| (c, v.clone()))
            .collect();
        for (c, v) in items {
            let nv = self.get(dst, c) + k * v;
            self.set(dst, c, nv);
        }
        if let Some(ops) = &mut self.row_ops {
            ops.push(Op::AddMul(src, dst, k.clone()));
        }
    }

    fn add_mul_col(&mut self, src: u32, dst: u32, k: &BigInt) {
        debug_assert!(src != dst && !k.is_zero());
        let rows: Vec<u32> = self.col[src as usize].iter().copied().collect();
        for r in rows {
            let v = self.get(r, src);
            let nv = self.get(r, dst) + k * v;
            self.set(r, dst, nv);
        }
        if let Some(ops) = &mut self.col_ops {
            ops.push(Op::AddMul(src, dst, k.clone()));
        }
    }

    fn swap_rows(&mut self, a: u32, b: u32) {
        if a == b {
            return;
        }
        let cols_a: Vec<u32> = self.row[a as usize].keys().copied().collect();
        let cols_b: Vec<u32> = self.row[b as usize].keys().copied().collect();
        for &c in &cols_a {
            self.col[c as usize].remove(&a);
        }
        for &c in &cols_b {
            self.col[c as usize].remove(&b);
        }
        self.row.swap(a as usize, b as usize);
        for &c in &cols_b {
            self.col[c as usize].insert(a);
        }
        for &c in &cols_a {
            self.col[c as usize].insert(b);
        }
        if let Some(ops) = &mut self.row_ops {
            ops.push(Op::Swap(a, b));
        }
    }

    fn swap_cols(&mut self, a: u32, b: u32) {
        if a == b {
            return;
        }
        let rows_a: Vec<u32> = self.col[a as usize].iter().copied().collect();
        let rows_b: Vec<u32> = self.col[b as usize].iter().copied().collect();
        let mut vals_a: Vec<(u32, BigInt)> = Vec::with_capacity(rows_a.len());
        for r in rows_a {
            let v = self.row[r as usize].remove(&a).unwrap();
            vals_a.push((r, v));
        }
        let mut vals_b: Vec<(u32, BigInt)> = Vec::with_capacity(rows_b.len());
        for r in rows_b {
            let v = self.row[r as usize].remove(&b).unwrap();
            vals_b.push((r, v));
        }
        self.col[a as usize].clear();
        self.col[b as usize].clear();
        for (r, v) in vals_b {
            self.row[r as usize].insert(a, v);
            self.col[a as usize].insert(r);
        }
        for (r, v) in vals_a {
            self.row[r as usize].insert(b, v);
            self.col[b as usize].insert(r);
        }
        if let Some(ops) = &mut self.col_ops {
            ops.push(Op::Swap(a, b));
        }
    }

    fn neg_row(&mut self, r: u32) {
        let cols: Vec<u32> = self.row[r as usize].keys().copied().collect();
        for c in cols {
            let v = self.get(r, c);
            self.row[r as usize].insert(c, -v);
        }
        if let Some(ops) = &mut self.row_ops {
            ops.push(Op::Neg(r));
        }
    }
}

/// Exact Smith normal form. Column dedup is the caller's concern.
pub fn smith_normal_form(mat: &SparseMat, track: Track) -> SmithDecomposition {
    let mut w = Work {
        row: vec![HashMap::new(); mat.nrows],
        col: vec![HashSet::new(); mat.ncols],
        row_ops: if track.rows { Some(Vec::new()) } else { None },
        col_ops: if track.cols { Some(Vec::new()) } else { None },
    };
    for &(r, c, v) in &mat.entries {
        let nv = w.get(r, c) + v;
        w.set(r, c, nv);
    }

    let mut done_rows: HashSet<u32> = HashSet::new();
    let mut done_cols: HashSet<u32> = HashSet::new();
    let mut pivots: Vec<(u32, u32)> = Vec::new();

    // Phase 1: unit pivots only, cheapest fill first. Quotients are exact and
    // the classical dance never loops, so entries grow only by additions.
    #[derive(PartialEq, Eq, PartialOrd, Ord)]
    struct Key(std::cmp::Reverse<(usize, usize)>, u32, u32);
    let unit_key = |w: &Work, c: u32| -> Option<(usize, usize, u32)> {
        let mut best: Option<(usize, usize, u32)> = None;
        for &r in &w.col[c as usize] {
            if w.get(r, c).magnitude().to_u8() == Some(1) {
                let cand = (w.col[c as usize].len(), w.row[r as usize].len(), r);
                if best.map_or(true, |b| cand < b) {
                    best = Some(cand);
                }
            }
        }
        best
    };
    let mut heap: BinaryHeap<Key> = BinaryHeap::new();
    for c in 0..mat.ncols as u32 {
        if let Some((cn, rn, r)) = unit_key(&w, c) {
            heap.push(Key(std::cmp::Reverse((cn, rn)), c, r));
        }
    }
    while let Some(Key(std::cmp::Reverse(key), c, r)) = heap.pop() {
        if done_cols.contains(&c) {
            continue;
        }
        let Some((cn, rn, br)) = unit_key(&w, c) else { continue };
        if (cn, rn) != key || br != r {
            heap.push(Key(std::cmp::Reverse((cn, rn)), c, br));
            continue;
        }
        // clear column then row with exact quotients
        let a = w.get(r, c);
        let col_entries: Vec<u32> = w.col[c as usize]
            .iter()
            .copied()
            .filter(|&r2| r2 != r)
            .collect();
        for r2 in col_entries {
            let q = w.get(r2, c) / &a;
            w.add_mul_row(r, r2, &-q);
        }
        let row_entries: Vec<(u32, BigInt)> = w.row[r as usize]
            .iter()
            .map(|(&c2, v)| (c2, v.clone()))
            .filter(|&(c2, _)| c2 != c)
            .collect();
        let mut touched_cols: Vec<u32> = Vec::new();
        for (c2, v) in row_entries {
            let q = v / &a;
            w.add_mul_col(c, c2, &-q);
            touched_cols.push(c2);
        }
        done_rows.insert(r);
        done_cols.insert(c);
        pivots.push((r, c));
        for c2 in touched_cols {
            if !done_cols.contains(&c2) {
                if let Some((cn, rn, r2)) = unit_key(&w, c2) {
                    heap.push(Key(std::cmp::Reverse((cn, rn)), c2, r2));
                }
            }
        }
    }

    // Phase 2: classical dance on the (small) non-unit residual, pivoting on
    // the globally smallest |entry|.
    loop {
        let mut best: Option<(BigInt, u32, u32)> = None;
        for c in 0..mat.ncols as u32 {
            if done_cols.contains(&c) {
                continue;
            }
            for &r in &w.col[c as usize] {
                debug_assert!(!done_rows.contains(&r));
                let v = w.get(r, c).abs();
                if best.as_ref().map_or(true, |(b, _, _)| v < *b) {
                    best = Some((v, r, c));
                }
            }
        }
        let Some((_, r, c)) = best else { break };
        loop {
            let a = w.get(r, c);
            debug_assert!(!a.is_zero());
            let bad = w.col[c as usize]
                .iter()
                .copied()
                .find(|&r2| r2 != r && !(w.get(r2, c) % &a).is_zero());
            if let Some(r2) = bad {
                let q = div_euclid_big(&w.get(r2, c), &a);
                if !q.is_zero() {
                    w.add_mul_row(r, r2, &-q);
                }
                w.swap_rows(r, r2);
                continue;
            }
            let col_entries: Vec<u32> = w.col[c as usize]
                .iter()
                .copied()
                .filter(|&r2| r2 != r)
                .collect();
            for r2 in col_entries {
                let q = w.get(r2, c) / &a;
                w.add_mul_row(r, r2, &-q);
            }
            let a = w.get(r, c);
            let bad = w.row[r as usize]
                .iter()
                .map(|(&c2, v)| (c2, v.clone()))
                .find(|(c2, v)| *c2 != c && !(v % &a).is_zero());
            if let Some((c2, v)) = bad {
                let q = div_euclid_big(&v, &a);
                if !q.is_zero() {
                    w.add_mul_col(c, c2, &-q);
                }
                w.swap_cols(c, c2);
                continue;
            }
            let row_entries: Vec<(u32, BigInt)> = w.row[r as usize]
                .iter()
                .map(|(&c2, v)| (c2, v.clone()))
                .filter(|&(c2, _)| c2 != c)
                .collect();
            for (c2, v) in row_entries {
                let q = v / &a;
                w.add_mul_col(c, c2, &-q);
            }
            if w.col[c as usize].len() == 1 && w.row[r as usize].len() == 1 {
                break;
            }
        }
        done_rows.insert(r);
        done_cols.insert(c);
        pivots.push((r, c));
    }

    // move pivots to canonical diagonal positions
    let npiv = pivots.len();
    for i in 0..npiv {
        let (r, c) = pivots[i];
        let ti = i as u32;
        if r != ti {
            w.swap_rows(r, ti);
            for p in pivots.iter_mut().skip(i) {
                if p.0 == ti {
                    p.0 = r;
                } else if p.0 == r {
                    p.0 = ti;
                }
            }
        }
        let c = pivots[i].1;
        if c != ti {
            w.swap_cols(c, ti);
            for p in pivots.iter_mut().skip(i) {
                if p.1 == ti {
                    p.1 = c;
                } else if p.1 == c {
                    p.1 = ti;
                }
            }
        }
        pivots[i] = (ti, ti);
    }
    for i in 0..npiv as u32 {
        if w.get(i, i).is_negative() {
            w.neg_row(i);
        }
    }

    // enforce the divisor chain d_i | d_j for i < j
    loop {
        let mut fixed = true;
        for i in 0..npiv {
            for j in i + 1..npiv {
                let a = w.get(i as u32, i as u32);
                let b = w.get(j as u32, j as u32);
                if !(b % &a).is_zero() {
                    fixed = false;
                    w.add_mul_col(j as u32, i as u32, &BigInt::from(1));
                    dance_2x2(&mut w, i as u32, j as u32);
                }
            }
        }
        if fixed {
            break;
        }
    }

    let diagonal: Vec<BigInt> = (0..npiv as u32).map(|i| w.get(i, i)).collect();
    debug_assert!(diagonal.iter().all(|d| d.is_positive()));
    for k in 1..diagonal.len() {
        debug_assert!((&diagonal[k] % &diagonal[k - 1]).is_zero());
    }
    SmithDecomposition {
        nrows: mat.nrows,
        ncols: mat.ncols,
        diagonal,
        row_ops: w.row_ops.take(),
        col_ops: w.col_ops.take(),
    }
}

/// Re-diagonalizes the block on rows/cols {i, j} after a chain-breaking
/// column mix; afterwards (i,i) holds the gcd and (j,j) the lcm.
fn dance_2x2(w: &mut Work, i: u32, j: u32) {
    loop {
        let a = w.get(i, i);
        debug_assert!(!a.is_zero());
        let vji = w.get(j, i);
        if !(&vji % &a).is_zero() {
            let q = div_euclid_big(&vji, &a);
            if !q.is_zero() {
                w.add_mul_row(i, j, &-q);
            }
            w.swap_rows(i, j);
            continue;
        }
        if !vji.is_zero() {
            let q = vji / &a;
            w.add_mul_row(i, j, &-q);
        }
        let vij = w.get(i, j);
        if !(&vij % &a).is_zero() {
            let q = div_euclid_big(&vij, &a);
            if !q.is_zero() {
                w.add_mul_col(i, j, &-q);
            }
            w.swap_cols(i, j);
            continue;
        }
        if !vij.is_zero() {
            let q = vij / &a;
            w.add_mul_col(i, j, &-q);
        }
        if !w.is_set(j, i) && !w.is_set(i, j) {
            break;
        }
    }
    if w.get(i, i).is_negative() {
        w.neg_row(i);
    }
    if w.get(j, j).is_negative() {
        w.neg_row(j);
    }
}

fn modreduce(v: BigInt, modulus: Option<&BigInt>) -> BigInt {
    match modulus {
        Some(n) => v.rem_euclid(n),
        None => v,
    }
}

trait RemEuclid {
    fn rem_euclid(self, n: &BigInt) -> BigInt;
}
impl RemEuclid for BigInt {
    fn rem_euclid(self, n: &BigInt) -> BigInt {
        let r = self % n;
        if r.is_negative() {
            r + n.abs()
        } else {
            r
        }
    }
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal_i64(&self) -> Vec<i64> {
        self.diagonal
            .iter()
            .map(|d| d.to_i64().expect("divisor exceeds i64"))
            .collect()
    }

    pub fn op_counts(&self) -> (usize, usize) {
        (
            self.row_ops.as_ref().map_or(0, |o| o.len()),
            self.col_ops.as_ref().map_or(0, |o| o.len()),
        )
    }

    pub fn max_op_bits(&self) -> u64 {
        let mut bits = 0u64;
        for ops in [self.row_ops.as_ref(), self.col_ops.as_ref()].into_iter().flatten() {
            for op in ops {
                if let Op::AddMul(_, _, k) = op {
                    bits = bits.max(k.bits());
                }
            }
        }
        bits
    }

    /// U v, optionally reducing mod N at every step.
    pub fn transform_rhs(&self, v: &[BigInt], modulus: Option<&BigInt>) -> Vec<BigInt> {
        let ops = self.row_ops.as_ref().expect("row ops were not tracked");
        let mut v: Vec<BigInt> = v.iter().map(|x| modreduce(x.clone(), modulus)).collect();
        for op in ops {
            match op {
                Op::Swap(a, b) => v.swap(*a as usize, *b as usize),
                Op::Neg(a) => {
                    let nv = modreduce(-v[*a as usize].clone(), modulus);
                    v[*a as usize] = nv;
                }
                Op::AddMul(src, dst, k) => {
                    let nv = modreduce(&v[*dst as usize] + k * &v[*src as usize], modulus);
                    v[*dst as usize] = nv;
                }
            }
        }
        v
    }

    /// V y, optionally reducing mod N.
    pub fn transform_solution(&self, y: &[BigInt], modulus: Option<&BigInt>) -> Vec<BigInt> {
        let ops = self.col_ops.as_ref().expect("column ops were not tracked");
        let mut y: Vec<BigInt> = y.iter().map(|x| modreduce(x.clone(), modulus)).collect();
        for op in ops.iter().rev() {
            match op {
                Op::Swap(a, b) => y.swap(*a as usize, *b as usize),
                Op::Neg(a) => {
                    let nv = modreduce(-y[*a as usize].clone(), modulus);
                    y[*a as usize] = nv;
                }
                Op::AddMul(src, dst, k) => {
                    let nv = modreduce(&y[*src as usize] + k * &y[*dst as usize], modulus);
                    y[*src as usize] = nv;
                }
            }
        }
        y
    }

    /// U^{-1} e_i: the source-basis vector whose image is the i-th diagonal slot.
    pub fn inv_row_basis(&self, i: usize) -> Vec<BigInt> {
        let ops = self.row_ops.as_ref().expect("row ops were not tracked");
        let mut v = vec![BigInt::zero(); self.nrows];
        v[i] = BigInt::from(1);
        for op in ops.iter().rev() {
            match op {
                Op::Swap(a, b) => v.swap(*a as usize, *b as usize),
                Op::Neg(a) => {
                    let nv = -v[*a as usize].clone();
                    v[*a as usize] = nv;
                }
                Op::AddMul(src, dst, k) => {
                    if !v[*dst as usize].is_zero() {
                        let nv = &v[*dst as usize] - k * &v[*src as usize];
                        v[*dst as usize] = nv;
                    } else if !v[*src as usize].is_zero() {
                        // nothing: dst stays zero only if k*src is zero
                        let nv = -(k * &v[*src as usize]);
                        v[*dst as usize] = nv;
                    }
                }
            }
        }
        v
    }
}

fn modinv(a: &BigInt, n: &BigInt) -> Option<BigInt> {
    use num_integer::Integer;
    let e = a.extended_gcd(n);
    if e.gcd != BigInt::from(1) {
        return None;
    }
    Some(e.x.rem_euclid(n))
}

/// Solves A x = rhs over Z (modulus None) or Z/N, given a decomposition with
/// both transforms tracked. Returns one solution if any exists.
pub fn solve_linear(
    snf: &SmithDecomposition,
    rhs: &[BigInt],
    modulus: Option<&BigInt>,
) -> Result<Option<Vec<BigInt>>> {
    use num_integer::Integer;
    if rhs.len() != snf.nrows {
        return Err(Error::BadInput("rhs length mismatch".into()));
    }
    let w = snf.transform_rhs(rhs, modulus);
    let mut y = vec![BigInt::zero(); snf.ncols];
    for (i, wi) in w.iter().enumerate() {
        if i < snf.diagonal.len() {
            let d = &snf.diagonal[i];
            match modulus {
                None => {
                    if !(wi % d).is_zero() {
                        return Ok(None);
                    }
                    y[i] = wi / d;
                }
                Some(n) => {
                    let g = d.gcd(n);
                    if !(wi % &g).is_zero() {
                        return Ok(None);
                    }
                    let n2 = n / &g;
                    if n2 == BigInt::from(1) {
                        continue;
                    }
                    let inv = modinv(&(d / &g), &n2).expect("d/g and n/g are coprime");
                    y[i] = ((wi / &g) * inv).rem_euclid(&n2);
                }
            }
        } else if !modreduce(wi.clone(), modulus).is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(snf.transform_solution(&y, modulus)))
}

/// Checks U (A (V e_j)) == D e_j on every source basis vector, which verifies
/// U A V = D column by column without materializing dense transforms.
#[cfg(test)]
pub fn verify_uav(mat: &SparseMat, snf: &SmithDecomposition) -> bool {
    let dense = mat.to_dense();
    for j in 0..snf.ncols {
        let mut e = vec![BigInt::zero(); snf.ncols];
        e[j] = BigInt::from(1);
        let vj = snf.transform_solution(&e, None);
        let avj: Vec<BigInt> = dense
            .iter()
            .map(|row| row.iter().zip(&vj).map(|(a, b)| a * b).sum())
            .collect();
        let uavj = snf.transform_rhs(&avj, None);
        for (i, v) in uavj.iter().enumerate() {
            let want = if i == j && i < snf.diagonal.len() {
                snf.diagonal[i].clone()
            } else {
                BigInt::zero()
            };
            if *v != want {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn zero_matrix_has_no_divisors() {
        let m = SparseMat::new(3, 4);
        let snf = smith_normal_form(&m, Track::BOTH);
        assert!(snf.diagonal.is_empty());
    }

    #[test]
    fn diag_2_3_gives_1_6() {
        let mut m = SparseMat::new(2, 2);
        m.push(0, 0, 2);
        m.push(1, 1, 3);
        let snf = smith_normal_form(&m, Track::BOTH);
        assert_eq!(snf.diagonal_i64(), vec![1, 6]);
        assert!(verify_uav(&m, &snf));
    }

    #[test]
    fn random_sparse_uav() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for trial in 0..20 {
            let (nr, nc) = (30, 40);
            let mut m = SparseMat::new(nr, nc);
            for _ in 0..120 {
                m.push(
                    rng.gen_range(0..nr),
                    rng.gen_range(0..nc),
                    rng.gen_range(-4i64..=4),
                );
            }
            let snf = smith_normal_form(&m, Track::BOTH);
            assert!(verify_uav(&m, &snf), "UAV=D fails at trial {trial}");
            for k in 1..snf.diagonal.len() {
                assert!((&snf.diagonal[k] % &snf.diagonal[k - 1]).is_zero());
            }
        }
    }

    #[test]
    fn inv_row_basis_matches_u_inverse() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut m = SparseMat::new(8, 9);
        for _ in 0..30 {
            m.push(rng.gen_range(0..8), rng.gen_range(0..9), rng.gen_range(-3i64..=3));
        }
        let snf = smith_normal_form(&m, Track::BOTH);
        for i in 0..8 {
            let v = snf.inv_row_basis(i);
            let uv = snf.transform_rhs(&v, None);
            for (j, x) in uv.iter().enumerate() {
                assert_eq!(*x, if j == i { big(1) } else { big(0) });
            }
        }
    }

    #[test]
    fn solve_over_z_and_mod_n() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let (nr, nc) = (10, 7);
            let mut m = SparseMat::new(nr, nc);
            for _ in 0..25 {
                m.push(rng.gen_range(0..nr), rng.gen_range(0..nc), rng.gen_range(-3i64..=3));
            }
            let dense = m.to_dense();
            let x: Vec<BigInt> = (0..nc).map(|_| big(rng.gen_range(-3i64..=3))).collect();
            let rhs: Vec<BigInt> = dense
                .iter()
                .map(|row| row.iter().zip(&x).map(|(a, b)| a * b).sum())
                .collect();
            let snf = smith_normal_form(&m, Track::BOTH);
            let sol = solve_linear(&snf, &rhs, None).unwrap().expect("solvable");
            let back: Vec<BigInt> = dense
                .iter()
                .map(|row| row.iter().zip(&sol).map(|(a, b)| a * b).sum())
                .collect();
            assert_eq!(back, rhs);

            let n = big(12);
            let sol = solve_linear(&snf, &rhs, Some(&n)).unwrap().expect("solvable mod n");
            for (row, want) in dense.iter().zip(&rhs) {
                let got: BigInt = row.iter().zip(&sol).map(|(a, b)| a * b).sum();
                assert!(((got - want) % &n).is_zero());
            }
        }
    }

    #[test]
    fn dedup_columns_preserves_divisors() {
        let mut m = SparseMat::new(4, 6);
        m.push(0, 0, 1);
        m.push(1, 0, 2);
        m.push(0, 1, -1);
        m.push(1, 1, -2);
        m.push(2, 2, 3);
        m.push(0, 3, 1);
        m.push(1, 3, 2);
        let d = m.dedup_columns();
        assert_eq!(d.ncols, 2);
        let s1 = smith_normal_form(&m, Track::NONE);
        let s2 = smith_normal_form(&d, Track::NONE);
        assert_eq!(s1.diagonal_i64(), s2.diagonal_i64());
    }
}

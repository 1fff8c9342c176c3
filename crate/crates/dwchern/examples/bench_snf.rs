// temporary timing probe
use dwchern::group::make_cyclic;
use dwchern::snf::*;

fn boundary_matrix(g: &dwchern::group::FiniteGroup, n: usize) -> SparseMat {
    // rows = (n-1)-tuples, cols = n-tuples
    let ord = g.order();
    let rows = ord.pow(n as u32 - 1);
    let cols = ord.pow(n as u32);
    let mut m = SparseMat::new(rows, cols);
    let idx = |t: &[u16]| -> usize {
        let mut v = 0usize;
        for &x in t.iter().rev() {
            v = v * ord + x as usize;
        }
        v
    };
    for col in 0..cols {
        let mut t = Vec::with_capacity(n);
        let mut c = col;
        for _ in 0..n {
            t.push((c % ord) as u16);
            c /= ord;
        }
        if n == 1 {
            continue;
        }
        m.push(idx(&t[1..]), col, 1);
        for i in 1..n {
            let mut face: Vec<u16> = Vec::with_capacity(n - 1);
            face.extend_from_slice(&t[..i - 1]);
            face.push(g.mul(t[i - 1], t[i]));
            face.extend_from_slice(&t[i + 1..]);
            m.push(idx(&face), col, if i % 2 == 1 { -1 } else { 1 });
        }
        m.push(idx(&t[..n - 1]), col, if n % 2 == 1 { -1 } else { 1 });
    }
    m
}

fn main() {
    for n in [6usize, 10, 12] {
        let g = make_cyclic(n);
        let t = std::time::Instant::now();
        let m = boundary_matrix(&g, 4);
        let build = t.elapsed();
        let t = std::time::Instant::now();
        let d = m.dedup_columns();
        let dd = t.elapsed();
        let t = std::time::Instant::now();
        let snf = smith_normal_form(&d, Track::ROWS);
        let nontrivial: Vec<i64> = snf.diagonal_i64().into_iter().filter(|&x| x != 1).collect();
        println!(
            "Z/{n}: d4 {}x{} nnz {} (dedup {}), build {:?} dedup {:?} snf {:?}, rank {}, nontrivial divisors {:?}, ops {:?}, max op bits {}",
            m.nrows, m.ncols, m.nnz(), d.ncols, build, dd, t.elapsed(), snf.rank(), nontrivial, snf.op_counts(), snf.max_op_bits()
        );
    }
}

//! Integer linear algebra: sparse elimination for invariant factors and a
//! dense Smith normal form with transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Column-sparse integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub columns: Vec<Vec<(usize, BigInt)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, columns: Vec<Vec<(usize, BigInt)>>) -> Self {
        SparseMatrix { rows, columns }
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn to_dense(&self) -> Mat {
        let mut m = Mat::zeros(self.rows, self.cols());
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                m[(*i, j)] += v;
            }
        }
        m
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (k, v) in col {
                    for (i, w) in &self.columns[*k] {
                        *acc.entry(*i).or_default() += v * w;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseMatrix::new(self.rows, columns)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.iter().all(|(_, v)| v.is_zero()))
    }
}

/// Rank and the invariant factors (> 1) of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagonal {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

/// Invariant factors by sparse elimination: unit pivots first (columns in
/// basis order, sparsest row), then a dense Smith form on the remainder.
pub fn invariant_factors(m: &SparseMatrix) -> Diagonal {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); m.rows];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols()];
    for (j, col) in m.columns.iter().enumerate() {
        for (i, v) in col {
            if !v.is_zero() {
                *rows[*i].entry(j).or_default() += v;
                col_rows[j].insert(*i);
            }
        }
    }
    for (i, r) in rows.iter_mut().enumerate() {
        r.retain(|j, v| {
            let keep = !v.is_zero();
            if !keep {
                col_rows[*j].remove(&i);
            }
            keep
        });
    }
    let mut rank = 0usize;
    let mut row_alive = vec![true; m.rows];
    let mut progress = true;
    while progress {
        progress = false;
        for c in 0..m.cols() {
            let pivot_row = col_rows[c]
                .iter()
                .filter(|&&r| rows[r].get(&c).map(|v| v.abs().is_one()).unwrap_or(false))
                .min_by_key(|&&r| (rows[r].len(), r))
                .copied();
            let Some(pr) = pivot_row else { continue };
            progress = true;
            rank += 1;
            let prow = std::mem::take(&mut rows[pr]);
            row_alive[pr] = false;
            for j in prow.keys() {
                col_rows[*j].remove(&pr);
            }
            let u = prow[&c].clone();
            let others: Vec<usize> = col_rows[c].iter().copied().collect();
            for r in others {
                let f = &rows[r][&c] * &u; // u = ±1 so a/u = a*u
                for (j, v) in &prow {
                    let e = rows[r].entry(*j).or_default();
                    *e -= &f * v;
                    if e.is_zero() {
                        rows[r].remove(j);
                        col_rows[*j].remove(&r);
                    } else {
                        col_rows[*j].insert(r);
                    }
                }
            }
            debug_assert!(col_rows[c].is_empty());
        }
    }
    // Remaining entries: dense SNF.
    let live_rows: Vec<usize> = (0..m.rows).filter(|&r| row_alive[r] && !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..m.cols()).filter(|&c| !col_rows[c].is_empty()).collect();
    let mut torsion = Vec::new();
    if !live_rows.is_empty() {
        let cpos: HashMap<usize, usize> = live_cols.iter().enumerate().map(|(p, &c)| (c, p)).collect();
        let mut d = Mat::zeros(live_rows.len(), live_cols.len());
        for (p, &r) in live_rows.iter().enumerate() {
            for (c, v) in &rows[r] {
                d[(p, cpos[c])] = v.clone();
            }
        }
        let s = smith(&d);
        for x in s {
            rank += 1;
            if !x.is_one() {
                torsion.push(x);
            }
        }
    }
    Diagonal { rank, torsion }
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut m = Mat::zeros(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
            }
        }
        m
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| !v[j].is_zero())
                    .map(|j| &self[(i, j)] * &v[j])
                    .fold(BigInt::zero(), |a, b| a + b)
            })
            .collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn select_rows(&self, idx: impl IntoIterator<Item = usize>) -> Mat {
        let rows: Vec<Vec<BigInt>> = idx.into_iter().map(|i| self.row(i)).collect();
        let mut m = Mat::zeros(rows.len(), self.cols);
        for (i, r) in rows.into_iter().enumerate() {
            for (j, v) in r.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn select_cols(&self, idx: impl IntoIterator<Item = usize>) -> Mat {
        self.transpose().select_rows(idx).transpose()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_a += q * row_b
    fn add_row(&mut self, a: usize, b: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(b, j)] * q;
            if !v.is_zero() {
                self[(a, j)] += v;
            }
        }
    }

    /// col_a += q * col_b
    fn add_col(&mut self, a: usize, b: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, b)] * q;
            if !v.is_zero() {
                self[(i, a)] += v;
            }
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -&self[(a, j)];
            self[(a, j)] = v;
        }
    }

    fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            let v = -&self[(i, a)];
            self[(i, a)] = v;
        }
    }
}

/// Smith form `U·A·V = D` with inverses of both transforms.
#[derive(Clone, Debug)]
pub struct Smith {
    pub d: Vec<BigInt>,
    pub u: Mat,
    pub u_inv: Mat,
    pub v: Mat,
    pub v_inv: Mat,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.d.len()
    }
}

/// Nonzero diagonal entries of the Smith form (divisibility chain).
pub fn smith(a: &Mat) -> Vec<BigInt> {
    smith_core(a, false).d
}

pub fn smith_with_transforms(a: &Mat) -> Smith {
    smith_core(a, true)
}

fn smith_core(a: &Mat, track: bool) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut a = a.clone();
    let (mut u, mut u_inv, mut v, mut v_inv) = if track {
        (Mat::identity(m), Mat::identity(m), Mat::identity(n), Mat::identity(n))
    } else {
        (Mat::zeros(0, 0), Mat::zeros(0, 0), Mat::zeros(0, 0), Mat::zeros(0, 0))
    };
    // Row operation R_a += q R_b, mirrored into the transforms.
    macro_rules! row_op {
        ($x:expr, $y:expr, $q:expr) => {{
            let q: BigInt = $q;
            a.add_row($x, $y, &q);
            if track {
                u.add_row($x, $y, &q);
                u_inv.add_col($y, $x, &-&q);
            }
        }};
    }
    macro_rules! col_op {
        ($x:expr, $y:expr, $q:expr) => {{
            let q: BigInt = $q;
            a.add_col($x, $y, &q);
            if track {
                v.add_col($x, $y, &q);
                v_inv.add_row($y, $x, &-&q);
            }
        }};
    }
    let mut d = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero magnitude in the trailing block; ties by (col, row)
        let mut best: Option<(BigInt, usize, usize)> = None;
        for j in t..n {
            for i in t..m {
                let x = &a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let mag = x.abs();
                if best.as_ref().map(|(b, _, _)| &mag < b).unwrap_or(true) {
                    best = Some((mag, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        if track {
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                row_op!(i, t, -q);
                if !a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                col_op!(j, t, -q);
                if !a[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // move the smallest remainder in row/column t to the pivot
                let mut best = (a[(t, t)].abs(), t, t);
                for i in t + 1..m {
                    let x = a[(i, t)].abs();
                    if !x.is_zero() && x < best.0 {
                        best = (x, i, t);
                    }
                }
                for j in t + 1..n {
                    let x = a[(t, j)].abs();
                    if !x.is_zero() && x < best.0 {
                        best = (x, t, j);
                    }
                }
                let (_, bi, bj) = best;
                if bi != t {
                    a.swap_rows(t, bi);
                    if track {
                        u.swap_rows(t, bi);
                        u_inv.swap_cols(t, bi);
                    }
                }
                if bj != t {
                    a.swap_cols(t, bj);
                    if track {
                        v.swap_cols(t, bj);
                        v_inv.swap_rows(t, bj);
                    }
                }
                continue;
            }
            // enforce divisibility of the trailing block
            let p = a[(t, t)].clone();
            let mut bad = None;
            'outer: for i in t + 1..m {
                for j in t + 1..n {
                    if !(&a[(i, j)] % &p).is_zero() {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad {
                Some(i) => row_op!(t, i, BigInt::one()),
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            if track {
                u.negate_row(t);
                u_inv.negate_col(t);
            }
        }
        d.push(a[(t, t)].clone());
        t += 1;
    }
    Smith {
        d,
        u,
        u_inv,
        v,
        v_inv,
    }
}

/// Basis `K` (columns) of `ker A` with a left inverse `L` (`L·K = I`) defined on
/// the whole source, so `L·x` are the coordinates of any cycle `x`.
pub fn kernel(a: &Mat) -> (Mat, Mat) {
    let s = smith_with_transforms(a);
    let r = s.rank();
    let n = a.cols;
    (s.v.select_cols(r..n), s.v_inv.select_rows(r..n))
}

/// Solve `A·x ≡ b (mod m)`; `m = 0` means over ℤ.
pub fn solve_mod(a: &Mat, b: &[BigInt], m: &BigInt) -> Option<Vec<BigInt>> {
    let s = smith_with_transforms(a);
    let ub = s.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols];
    let reduce = |x: &BigInt| if m.is_zero() { x.clone() } else { x.mod_floor(m) };
    for (i, ubi) in ub.iter().enumerate() {
        if i < s.rank() {
            let di = &s.d[i];
            if m.is_zero() {
                if !(ubi % di).is_zero() {
                    return None;
                }
                y[i] = ubi / di;
            } else {
                let g = di.gcd(m);
                if !(ubi.mod_floor(&g)).is_zero() {
                    return None;
                }
                let mg = m / &g;
                let inv = mod_inverse(&(di / &g).mod_floor(&mg), &mg);
                y[i] = ((ubi / &g) * inv).mod_floor(&mg);
            }
        } else if !reduce(ubi).is_zero() {
            return None;
        }
    }
    let x = s.v.mul_vec(&y);
    Some(x.iter().map(reduce).collect())
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    if m.is_one() {
        return BigInt::zero();
    }
    let e = a.extended_gcd(m);
    e.x.mod_floor(m)
}

/// Normalize a multiset of positive diagonal entries to invariant factors
/// (each dividing the next), dropping units.
pub fn normalize_torsion(entries: &[BigInt]) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = entries.iter().map(|x| x.abs()).filter(|x| !x.is_zero()).collect();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let g = v[i].gcd(&v[j]);
            let l = v[i].lcm(&v[j]);
            v[i] = g;
            v[j] = l;
        }
    }
    v.retain(|x| !x.is_one());
    v.sort();
    v
}

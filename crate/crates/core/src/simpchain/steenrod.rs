use crate::error::{Error, Result};
use crate::mcoalg::MCoalgebra;
use crate::symbar::BarWord;
use crate::zmod::FreeComplex;
use num_integer::Integer;
use std::collections::BTreeSet;

/// Mod-2 cochain given by its support.
pub type Cochain = BTreeSet<String>;

fn parity(c: &num_bigint::BigInt) -> bool {
    c.is_odd()
}

/// `δu(c) = u(∂c)` mod 2.
pub fn coboundary(cx: &FreeComplex, u: &Cochain) -> Result<Cochain> {
    let mut out = Cochain::new();
    let Some(d) = u.iter().next().map(|l| cx.degree_of(l)).transpose()? else {
        return Ok(out);
    };
    for l in cx.basis(d + 1) {
        let b = cx.boundary_of(l)?;
        let hits = b.terms.iter().filter(|(t, c)| parity(c) && u.contains(t.as_str())).count();
        if hits % 2 == 1 {
            out.insert(l.to_string());
        }
    }
    Ok(out)
}

fn to_bits(cells: &[String], u: &Cochain) -> Vec<bool> {
    cells.iter().map(|c| u.contains(c)).collect()
}

/// Row-reduce `rows` in place; returns pivot columns.
fn echelon(rows: &mut Vec<Vec<bool>>) -> Vec<usize> {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c]) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] {
                let pivot = rows[r].clone();
                rows[i].iter_mut().zip(pivot).for_each(|(x, y)| *x ^= y);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// `H^n(C; ℤ/2)` with chosen representatives.
#[derive(Clone, Debug)]
pub struct Mod2Cohomology {
    pub degree: i64,
    pub cells: Vec<String>,
    pub representatives: Vec<Cochain>,
    // reduced rows spanning B^n followed by the representatives
    span: Vec<Vec<bool>>,
    pivots: Vec<usize>,
}

impl Mod2Cohomology {
    pub fn new(cx: &FreeComplex, n: i64) -> Result<Self> {
        let cells: Vec<String> = cx.basis(n).iter().map(|s| s.to_string()).collect();
        // δ: C^n → C^{n+1} as rows indexed by (n+1)-cells; a cocycle kills every row
        let mut rows: Vec<Vec<bool>> = Vec::new();
        for l in cx.basis(n + 1) {
            let b = cx.boundary_of(l)?;
            rows.push(cells.iter().map(|c| parity(&b.coeff(c))).collect());
        }
        let piv = echelon(&mut rows);
        let free: Vec<usize> = (0..cells.len()).filter(|c| !piv.contains(c)).collect();
        let mut cocycles: Vec<Vec<bool>> = Vec::new();
        for &f in &free {
            let mut v = vec![false; cells.len()];
            v[f] = true;
            for (r, &p) in rows.iter().zip(&piv) {
                v[p] = r[f];
            }
            cocycles.push(v);
        }
        let mut bounds: Vec<Vec<bool>> = Vec::new();
        for l in cx.basis(n - 1) {
            let u: Cochain = [l.to_string()].into_iter().collect();
            bounds.push(to_bits(&cells, &coboundary(cx, &u)?));
        }
        let mut span = bounds.clone();
        echelon(&mut span);
        let mut representatives = Vec::new();
        for z in cocycles {
            let mut trial = span.clone();
            trial.push(z.clone());
            echelon(&mut trial);
            if trial.len() > span.len() {
                span.push(z.clone());
                echelon(&mut span);
                representatives.push(cells.iter().zip(&z).filter(|(_, &b)| b).map(|(c, _)| c.clone()).collect());
            }
        }
        // rows of B and of the representatives, tagged by representative
        let mut tagged: Vec<Vec<bool>> = bounds;
        for r in &representatives {
            tagged.push(to_bits(&cells, r));
        }
        let nb = tagged.len() - representatives.len();
        let width = cells.len();
        let mut aug: Vec<Vec<bool>> = tagged
            .into_iter()
            .enumerate()
            .map(|(i, mut v)| {
                let mut tag = vec![false; representatives.len()];
                if i >= nb {
                    tag[i - nb] = true;
                }
                v.extend(tag);
                v
            })
            .collect();
        let pivots_all = echelon(&mut aug);
        let mut pivots = Vec::new();
        let mut kept = Vec::new();
        for (row, &p) in aug.into_iter().zip(&pivots_all) {
            if p < width {
                pivots.push(p);
                kept.push(row);
            }
        }
        Ok(Mod2Cohomology {
            degree: n,
            cells,
            representatives,
            span: kept,
            pivots,
        })
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of a cocycle in the chosen basis.
    pub fn class_of(&self, u: &Cochain) -> Result<Vec<bool>> {
        let mut v = to_bits(&self.cells, u);
        let mut tag = vec![false; self.dim()];
        for (row, &p) in self.span.iter().zip(&self.pivots) {
            if v[p] {
                v.iter_mut().zip(row.iter()).for_each(|(x, y)| *x ^= *y);
                tag.iter_mut().zip(row[self.cells.len()..].iter()).for_each(|(x, y)| *x ^= *y);
            }
        }
        if v.iter().take(self.cells.len()).any(|&b| b) {
            return Err(Error::Precondition("cochain is not a cocycle".into()));
        }
        Ok(tag)
    }
}

/// `(u ∪_i v)(c) = (u⊗v)(Δ_{e_i} c)` mod 2, for cochains of degrees `p` and `q`.
pub fn cup_i(m: &MCoalgebra, i: usize, u: &Cochain, p: i64, v: &Cochain, q: i64) -> Result<Cochain> {
    let mut out = Cochain::new();
    if m.rank_bound < 2 || m.degree_bound < i {
        return Err(Error::BoundExhausted(format!("∪_{i} needs e_{i} at rank 2")));
    }
    let w = BarWord::e(i);
    let d = p + q - i as i64;
    for c in m.complex.basis(d) {
        let x = m.adjoint(&w, c)?;
        let hits = x
            .iter()
            .filter(|(t, c)| parity(c) && m.degree_of(&t[0]) == p && u.contains(&t[0]) && v.contains(&t[1]))
            .count();
        if hits % 2 == 1 {
            out.insert(c.to_string());
        }
    }
    Ok(out)
}

/// `Sq^k u = u ∪_{n−k} u` for a cocycle `u` of degree `n`; zero for `k > n`.
pub fn steenrod_square(m: &MCoalgebra, n: i64, k: i64, u: &Cochain) -> Result<Cochain> {
    if k > n || k < 0 {
        return Ok(Cochain::new());
    }
    cup_i(m, (n - k) as usize, u, n, u, n)
}

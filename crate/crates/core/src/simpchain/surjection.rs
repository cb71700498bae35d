//! Table reduction from bar words to surjections and the interval cut action
//! of surjections on simplicial chains.

use super::sset::SimplicialSet;
use crate::symbar::BarWord;
use crate::zmod::{sign, Chain};

/// A surjection `{1,…,L} → {1,…,r}` written as its value sequence (1-based).
pub type Surjection = Vec<u8>;

/// Table reduction of a sequence of permutations, each given by its value
/// sequence. Rows of lengths summing to `r + d`; the last entry of a non-final
/// row is its caesura, all other entries of a row are retired.
pub fn table_reduction(seqs: &[Vec<u8>]) -> Chain<Surjection> {
    let mut out = Chain::zero();
    if seqs.is_empty() {
        return out;
    }
    let r = seqs[0].len();
    let d = seqs.len() - 1;
    fn rec(
        seqs: &[Vec<u8>],
        i: usize,
        remaining: usize,
        retired: &mut Vec<bool>,
        seq: &mut Vec<u8>,
        out: &mut Chain<Surjection>,
    ) {
        let d = seqs.len() - 1;
        let avail: Vec<u8> = seqs[i].iter().copied().filter(|v| !retired[*v as usize]).collect();
        if i == d {
            if avail.len() != remaining {
                return;
            }
            let start = seq.len();
            seq.extend(&avail);
            if !seq.windows(2).any(|w| w[0] == w[1]) {
                out.add_term(seq.clone(), 1.into());
            }
            seq.truncate(start);
            return;
        }
        let rows_left = d - i;
        for len in 1..=avail.len() {
            if remaining < len + rows_left {
                break;
            }
            let row = &avail[..len];
            let start = seq.len();
            seq.extend(row);
            if start > 0 && seq[start - 1] == seq[start] {
                seq.truncate(start);
                continue;
            }
            for v in &row[..len - 1] {
                retired[*v as usize] = true;
            }
            rec(seqs, i + 1, remaining - len, retired, seq, out);
            for v in &row[..len - 1] {
                retired[*v as usize] = false;
            }
            seq.truncate(start);
        }
    }
    let mut retired = vec![false; r + 1];
    let mut seq = Vec::with_capacity(r + d);
    rec(seqs, 0, r + d, &mut retired, &mut seq, &mut out);
    out
}

/// Surjections attached to a bar word: table reduction of its vertices read
/// from last to first.
pub fn word_surjections(w: &BarWord) -> Chain<Surjection> {
    let seqs: Vec<Vec<u8>> = w
        .vertices()
        .iter()
        .rev()
        .map(|h| h.images().iter().map(|v| v + 1).collect())
        .collect();
    table_reduction(&seqs)
}

/// Interval cut of the nondegenerate simplex `base` by the surjection `u`.
/// Factor `k` is the face on the union of the intervals labelled `k`; terms
/// with a repeated vertex or a degenerate face vanish.
pub fn interval_cut(x: &SimplicialSet, u: &[u8], base: usize) -> Chain<Vec<String>> {
    let mut out = Chain::zero();
    let q = x.simplex(base).dim;
    let l = u.len();
    let r = *u.iter().max().unwrap_or(&0) as usize;
    let mut last = vec![0usize; r + 1];
    for (p, &v) in u.iter().enumerate() {
        last[v as usize] = p;
    }
    // positions grouped by label, in increasing order
    let mut order: Vec<usize> = (0..l).collect();
    order.sort_by_key(|&p| (u[p], p));
    let mut js = vec![0usize; l + 1];
    js[l] = q;
    fn cuts(pos: usize, l: usize, q: usize, js: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if pos == l {
            f(js);
            return;
        }
        let lo = js[pos - 1];
        for v in lo..=q {
            js[pos] = v;
            cuts(pos + 1, l, q, js, f);
        }
    }
    let mut visit = |js: &[usize]| {
        let mut factors = Vec::with_capacity(r);
        for k in 1..=r as u8 {
            let mut verts: Vec<usize> = Vec::new();
            for p in 0..l {
                if u[p] == k {
                    for v in js[p]..=js[p + 1] {
                        if verts.last() == Some(&v) {
                            return;
                        }
                        verts.push(v);
                    }
                }
            }
            let f = x.face_on(base, &verts);
            if f.is_degenerate() {
                return;
            }
            factors.push(x.simplex(f.base).id.clone());
        }
        let mut degs = vec![0usize; l];
        let mut odd = 0usize;
        for p in 0..l {
            let inner = last[u[p] as usize] != p;
            degs[p] = js[p + 1] - js[p] + inner as usize;
            if inner {
                odd += js[p + 1];
            }
        }
        for a in 0..l {
            for b in a + 1..l {
                if order[a] > order[b] {
                    odd += degs[order[a]] * degs[order[b]];
                }
            }
        }
        out.add_term(factors, sign(odd % 2 == 1));
    };
    if l == 1 {
        visit(&js);
    } else {
        cuts(1, l, q, &mut js, &mut visit);
    }
    out
}

use crate::error::{Error, Result};
use crate::zmod::sign;
use num_bigint::BigInt;
use std::fmt;

/// Permutation of `{1..n}` in one-line notation (stored 0-based).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u8).collect(),
        }
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(v: &[usize]) -> Result<Self> {
        let n = v.len();
        let mut seen = vec![false; n];
        for &x in v {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::Parse(format!("{v:?} is not a permutation")));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation {
            images: v.iter().map(|&x| (x - 1) as u8).collect(),
        })
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    /// 0-based image.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self * q`: apply `self` first, then `q`.
    pub fn multiply(&self, q: &Permutation) -> Result<Permutation> {
        if self.rank() != q.rank() {
            return Err(Error::RankMismatch(format!("S_{} * S_{}", self.rank(), q.rank())));
        }
        Ok(self.mul(q))
    }

    pub(crate) fn mul(&self, q: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&i| q.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.rank()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// Sign (+1 even, −1 odd).
    pub fn sign(&self) -> BigInt {
        let n = self.rank();
        let mut inv = 0usize;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    inv += 1;
                }
            }
        }
        sign(inv % 2 == 1)
    }

    /// The transposition of `i` and `j` (1-based).
    pub fn transposition(n: usize, i: usize, j: usize) -> Permutation {
        let mut p = Permutation::identity(n);
        p.images.swap(i - 1, j - 1);
        p
    }

    /// All of `S_n` in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Permutation> {
        use itertools::Itertools;
        (0..n as u8)
            .permutations(n)
            .map(|images| Permutation { images })
            .collect()
    }

    /// Value substitution: replace value `i` (1-based) of `self` by the block
    /// `other + (i−1)`, shifting larger values by `rank(other) − 1`.
    pub fn substitute(&self, i: usize, other: &Permutation) -> Permutation {
        let n = other.rank();
        let i0 = (i - 1) as u8;
        let mut out = Vec::with_capacity(self.rank() + n - 1);
        for &v in &self.images {
            if v < i0 {
                out.push(v);
            } else if v == i0 {
                out.extend(other.images.iter().map(|&w| w + i0));
            } else {
                out.push(v + n as u8 - 1);
            }
        }
        Permutation { images: out }
    }

    /// Parse cycle notation `(1,3,2)(4,5)`, `()` or one-line `[2,3,1]`.
    pub fn parse(s: &str, n: usize) -> Result<Permutation> {
        let s = s.trim();
        if let Some(body) = s.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
            let v: std::result::Result<Vec<usize>, _> =
                body.split(',').map(|x| x.trim().parse::<usize>()).collect();
            let v = v.map_err(|_| Error::Parse(format!("bad one-line permutation `{s}`")))?;
            let p = Permutation::from_one_line(&v)?;
            if p.rank() != n {
                return Err(Error::RankMismatch(format!("`{s}` is not in S_{n}")));
            }
            return Ok(p);
        }
        let mut images: Vec<u8> = (0..n as u8).collect();
        let mut rest = s;
        let mut used = vec![false; n];
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected `(` in `{s}`")))?;
            let close = open.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in `{s}`")))?;
            let body = &open[..close];
            rest = open[close + 1..].trim_start();
            if body.trim().is_empty() {
                continue;
            }
            let cyc: std::result::Result<Vec<usize>, _> =
                body.split(',').map(|x| x.trim().parse::<usize>()).collect();
            let cyc = cyc.map_err(|_| Error::Parse(format!("bad cycle `({body})`")))?;
            for &x in &cyc {
                if x == 0 || x > n || used[x - 1] {
                    return Err(Error::Parse(format!("bad or repeated entry {x} in `{s}` for S_{n}")));
                }
                used[x - 1] = true;
            }
            for k in 0..cyc.len() {
                images[cyc[k] - 1] = (cyc[(k + 1) % cyc.len()] - 1) as u8;
            }
        }
        Ok(Permutation { images })
    }

    /// Cycle notation, fixed points omitted; identity is `()`.
    pub fn cycles(&self) -> String {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push((i + 1).to_string());
                i = self.images[i] as usize;
            }
            out.push_str(&format!("({})", cyc.join(",")));
        }
        if out.is_empty() {
            "()".into()
        } else {
            out
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycles())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.one_line())
    }
}

/// Koszul-signed permutation of graded factors: the factor at position `i`
/// moves to position `p(i)`. Returns the sign and the rearranged factors.
pub fn permute_factors<T: Clone>(p: &Permutation, items: &[T], odd: impl Fn(&T) -> bool) -> Result<(bool, Vec<T>)> {
    if p.rank() != items.len() {
        return Err(Error::RankMismatch(format!(
            "permutation of rank {} on {} factors",
            p.rank(),
            items.len()
        )));
    }
    let n = items.len();
    let mut neg = false;
    for i in 0..n {
        for j in i + 1..n {
            if p.apply(i) > p.apply(j) && odd(&items[i]) && odd(&items[j]) {
                neg = !neg;
            }
        }
    }
    let mut out: Vec<Option<T>> = vec![None; n];
    for (i, x) in items.iter().enumerate() {
        out[p.apply(i)] = Some(x.clone());
    }
    Ok((neg, out.into_iter().map(|x| x.expect("bijection")).collect()))
}

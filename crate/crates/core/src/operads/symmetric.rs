use super::Operad;
use crate::symbar::{words, BarWord, Permutation};
use crate::zmod::{sign, Chain};

/// The symmetric construct `𝔖`: rank-`n` component `RS_n`, composition by the
/// Eilenberg–Zilber shuffle of homogeneous words with vertexwise value
/// substitution of permutations.
#[derive(Clone, Debug)]
pub struct SymmetricConstruct {
    pub rank_bound: usize,
    pub degree_bound: usize,
}

pub fn symmetric_construct(rank_bound: usize, degree_bound: usize) -> SymmetricConstruct {
    SymmetricConstruct {
        rank_bound,
        degree_bound,
    }
}

/// Outer word `x` with `y` substituted into slot `i`: shuffle paths with the
/// sign `(−1)^{#(inner step, outer step) inversions}`.
pub fn substitute(y: &BarWord, i: usize, x: &BarWord) -> Chain<BarWord> {
    let mut out = Chain::zero();
    if i == 0 || i > x.rank() {
        return out;
    }
    let (p, q) = (x.degree(), y.degree());
    let xs = x.vertices();
    let ys = y.vertices();
    // enumerate positions of the q inner steps among p+q steps
    let total = p + q;
    let mut stack: Vec<(Vec<bool>, usize, usize)> = vec![(Vec::with_capacity(total), 0, 0)];
    while let Some((path, a, b)) = stack.pop() {
        if a == p && b == q {
            let mut verts = Vec::with_capacity(total + 1);
            let (mut ca, mut cb) = (0, 0);
            verts.push(xs[0].substitute(i, &ys[0]));
            let mut inversions = 0usize;
            let mut inner_seen = 0usize;
            for &inner in &path {
                if inner {
                    cb += 1;
                    inner_seen += 1;
                } else {
                    ca += 1;
                    inversions += inner_seen;
                }
                verts.push(xs[ca].substitute(i, &ys[cb]));
            }
            if let Some(w) = BarWord::from_vertices(verts) {
                out.add_term(w, sign(inversions % 2 == 1));
            }
            continue;
        }
        if b < q {
            let mut v = path.clone();
            v.push(true);
            stack.push((v, a, b + 1));
        }
        if a < p {
            let mut v = path;
            v.push(false);
            stack.push((v, a + 1, b));
        }
    }
    out
}

impl Operad for SymmetricConstruct {
    type Basis = BarWord;

    fn name(&self) -> String {
        "symmetric construct".into()
    }

    fn rank(&self, b: &BarWord) -> usize {
        b.rank()
    }

    fn degree(&self, b: &BarWord) -> i64 {
        b.degree() as i64
    }

    fn differential(&self, b: &BarWord) -> Chain<BarWord> {
        b.boundary()
    }

    fn compose(&self, inner: &BarWord, i: usize, outer: &BarWord) -> Chain<BarWord> {
        substitute(inner, i, outer)
    }

    fn unit(&self) -> Option<Chain<BarWord>> {
        Some(Chain::basis(BarWord::unit(1)))
    }

    fn basis(&self, rank: usize, degree: i64) -> Vec<BarWord> {
        if rank > self.rank_bound || degree < 0 || degree as usize > self.degree_bound {
            return Vec::new();
        }
        words(rank, degree as usize)
    }

    fn degrees(&self, rank: usize) -> Vec<i64> {
        if rank <= 1 {
            vec![0]
        } else {
            (0..=self.degree_bound as i64).collect()
        }
    }

    fn max_rank(&self) -> usize {
        self.rank_bound
    }
}

/// Block permutation of `S_{m+n−1}` induced on the inner slot `i` by `a ∈ S_n`.
pub fn inner_block(a: &Permutation, i: usize, m: usize) -> Permutation {
    Permutation::identity(m).substitute(i, a)
}

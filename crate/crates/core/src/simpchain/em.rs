use super::fixtures::minimal_sphere;
use super::sset::{product, FaceSpec, SimplicialSet};
use crate::error::{Error, Result};
use crate::zmod::AbelianGroup;
use itertools::Itertools;
use num_traits::ToPrimitive;
use std::collections::HashMap;

const MAX_COCHAINS: u64 = 1 << 20;

/// Finite abelian group `⊕ ℤ/dᵢ` with elements as residue vectors.
struct Finite {
    moduli: Vec<u64>,
}

impl Finite {
    fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    fn elements(&self) -> Vec<Vec<u64>> {
        self.moduli.iter().map(|&d| 0..d).multi_cartesian_product().collect()
    }

    fn add(&self, a: &mut [u64], b: &[u64], sign: bool) {
        for ((x, &y), &d) in a.iter_mut().zip(b).zip(&self.moduli) {
            *x = if sign { (*x + d - y) % d } else { (*x + y) % d };
        }
    }

    fn show(&self, a: &[u64]) -> String {
        match a {
            [x] => x.to_string(),
            _ => format!("({})", a.iter().join(";")),
        }
    }
}

/// `k`-cochain on `Δⁿ`, one value per `k`-face in lexicographic order.
type Cocycle = Vec<Vec<u64>>;

fn faces(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..=n).combinations(k + 1).collect()
}

/// Cocycle on `Δⁿ` with prescribed values on the faces through vertex 0.
fn extend_from_cone(g: &Finite, n: usize, k: usize, cone: &[Vec<u64>]) -> Cocycle {
    let fs = faces(n, k);
    let pos: HashMap<Vec<usize>, usize> = fs.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
    let zero = vec![0; g.moduli.len()];
    let mut a = vec![zero.clone(); fs.len()];
    let mut it = cone.iter();
    for (i, f) in fs.iter().enumerate() {
        if f[0] == 0 {
            a[i] = it.next().expect("cone values").clone();
        }
    }
    for (i, f) in fs.iter().enumerate() {
        if f[0] != 0 {
            // δa on {0} ∪ f vanishes
            let mut v = zero.clone();
            for j in 0..f.len() {
                let mut h = vec![0];
                h.extend(f.iter().enumerate().filter(|&(r, _)| r != j).map(|(_, &x)| x));
                g.add(&mut v, &a[pos[&h]], j % 2 == 1);
            }
            a[i] = v;
        }
    }
    a
}

fn restrict(n: usize, k: usize, a: &Cocycle, i: usize) -> Cocycle {
    let pos: HashMap<Vec<usize>, usize> = faces(n, k).into_iter().enumerate().map(|(j, f)| (f, j)).collect();
    faces(n - 1, k)
        .into_iter()
        .map(|f| {
            let lifted: Vec<usize> = f.iter().map(|&v| if v >= i { v + 1 } else { v }).collect();
            a[pos[&lifted]].clone()
        })
        .collect()
}

fn degenerate(g: &Finite, n: usize, k: usize, b: &Cocycle, j: usize) -> Cocycle {
    let pos: HashMap<Vec<usize>, usize> = faces(n - 1, k).into_iter().enumerate().map(|(i, f)| (f, i)).collect();
    faces(n, k)
        .into_iter()
        .map(|f| {
            let image: Vec<usize> = f.iter().map(|&v| if v > j { v - 1 } else { v }).collect();
            if image.iter().tuple_windows().any(|(x, y)| x == y) {
                vec![0; g.moduli.len()]
            } else {
                b[pos[&image]].clone()
            }
        })
        .collect()
}

/// `K(M, k)` through dimension `bound`, with homology correct through `bound`.
///
/// Finite `M` uses normalized `M`-valued `k`-cocycles on `Δⁿ`, kept through
/// dimension `bound + 1`. A free summand uses the minimal `k`-sphere, which is
/// exact for `k = 1` and agrees with `K(ℤ, k)` in homology through `k + 1`.
pub fn em_space(m: &AbelianGroup, k: usize, bound: usize) -> Result<SimplicialSet> {
    if k < 1 {
        return Err(Error::Precondition("K(M, k) needs k ≥ 1".into()));
    }
    if bound < k {
        return Err(Error::Precondition(format!("bound {bound} is below k = {k}")));
    }
    if m.rank > 0 && k > 1 && bound > k + 1 {
        return Err(Error::BoundExhausted(format!(
            "no finite model of K(ℤ, {k}) with correct homology through {bound}"
        )));
    }
    let mut pieces = Vec::new();
    for _ in 0..m.rank {
        pieces.push(minimal_sphere(k));
    }
    if !m.torsion.is_empty() {
        let moduli = m
            .torsion
            .iter()
            .map(|d| d.to_u64().ok_or_else(|| Error::BoundExhausted(format!("ℤ/{d} is too large"))))
            .collect::<Result<Vec<_>>>()?;
        pieces.push(finite_model(&Finite { moduli }, k, bound + 1)?);
    }
    let name = format!("K({m},{k})");
    let mut x = match pieces.len() {
        0 => super::fixtures::standard_simplex(0),
        _ => pieces.into_iter().reduce(|a, b| product(&a, &b)).expect("nonempty"),
    };
    x.name = name;
    Ok(x)
}

fn finite_model(g: &Finite, k: usize, top: usize) -> Result<SimplicialSet> {
    let elements = g.elements();
    // nondegenerate simplices by dimension: cocycle -> label
    let mut known: Vec<HashMap<Cocycle, String>> = Vec::new();
    let mut b = SimplicialSet::builder("K");
    for n in 0..=top {
        let free = faces(n, k).iter().filter(|f| f[0] == 0).count();
        let count = (g.order() as f64).powi(free as i32);
        if count > MAX_COCHAINS as f64 {
            return Err(Error::BoundExhausted(format!("{count} cochains in dimension {n}")));
        }
        let mut level = HashMap::new();
        let cones: Vec<Vec<Vec<u64>>> = if free == 0 {
            vec![vec![]]
        } else {
            (0..free).map(|_| elements.iter().cloned()).multi_cartesian_product().collect()
        };
        for cone in cones {
            let a = extend_from_cone(g, n, k, &cone);
            if n > 0 && (0..n).any(|j| degenerate(g, n, k, &restrict(n, k, &a, j), j) == a) {
                continue;
            }
            let label = if n == 0 {
                "*".to_string()
            } else {
                format!("{n}[{}]", cone.iter().map(|v| g.show(v)).join(","))
            };
            let faces = (0..=n)
                .filter(|_| n > 0)
                .map(|i| decompose(g, &known, n - 1, k, restrict(n, k, &a, i)))
                .collect();
            b.push(label.clone(), n, faces);
            level.insert(a, label);
        }
        known.push(level);
    }
    b.basepoint("*").simply_connected(k >= 2).build()
}

fn decompose(g: &Finite, known: &[HashMap<Cocycle, String>], n: usize, k: usize, a: Cocycle) -> FaceSpec {
    if let Some(id) = known[n].get(&a) {
        return FaceSpec::from(id.as_str());
    }
    let j = (0..n)
        .find(|&j| degenerate(g, n, k, &restrict(n, k, &a, j), j) == a)
        .expect("degenerate cocycle");
    let mut inner = decompose(g, known, n - 1, k, restrict(n, k, &a, j));
    inner.degeneracies.insert(0, j);
    inner
}

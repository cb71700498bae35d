use super::sset::{product, FaceSpec, SimplicialSet};
use super::canonical::canonical_mstructure;
use crate::mcoalg::{mcoalgebra_from_json, MCoalgebra};
use crate::error::{Error, Result};
use crate::zmod::FreeComplex;
use std::sync::Arc;

pub const SIMPLICIAL_FIXTURES: [&str; 8] = ["point", "delta1", "delta2", "delta3", "s2-min", "s3-min", "rp2", "torus"];

fn degenerate_point(dim: usize) -> FaceSpec {
    FaceSpec {
        id: "pt".into(),
        degeneracies: (0..dim).rev().collect(),
    }
}

/// Standard `n`-simplex with vertices `0..=n`; faces are labelled by their
/// vertex strings.
pub fn standard_simplex(n: usize) -> SimplicialSet {
    let mut b = SimplicialSet::builder(format!("delta{n}"));
    for mask in 1u32..(1 << (n + 1)) {
        let verts: Vec<usize> = (0..=n).filter(|v| mask & (1 << v) != 0).collect();
        let id: String = verts.iter().map(|v| v.to_string()).collect();
        let faces = if verts.len() == 1 {
            Vec::new()
        } else {
            (0..verts.len())
                .map(|i| {
                    let f: String = verts.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, v)| v.to_string()).collect();
                    FaceSpec::from(f.as_str())
                })
                .collect()
        };
        b.push(id, verts.len() - 1, faces);
    }
    b.basepoint("0").simply_connected(true).build().expect("standard simplex")
}

/// `Sⁿ` with one vertex and one `n`-simplex.
pub fn minimal_sphere(n: usize) -> SimplicialSet {
    assert!(n >= 1);
    let b = SimplicialSet::builder(format!("s{n}-min"))
        .simplex("pt", 0, vec![])
        .simplex("x", n, (0..=n).map(|_| degenerate_point(n - 1)).collect());
    b.basepoint("pt").simply_connected(n >= 2).build().expect("minimal sphere")
}

/// Moore space `Sⁿ ∪_m e^{n+1}`: the top simplex has `x` on its first `m` even
/// faces, so `∂y = m·x`. Requires `m ≤ ⌈(n+2)/2⌉`.
pub fn moore(m: usize, n: usize) -> Result<SimplicialSet> {
    let even = (n + 2).div_ceil(2);
    if n < 1 || m > even {
        return Err(Error::Precondition(format!(
            "moore({m},{n}) needs n ≥ 1 and m ≤ {even} in the one-simplex model"
        )));
    }
    let mut faces = Vec::new();
    let mut used = 0;
    for i in 0..=n + 1 {
        if i % 2 == 0 && used < m {
            faces.push(FaceSpec::from("x"));
            used += 1;
        } else {
            faces.push(degenerate_point(n));
        }
    }
    SimplicialSet::builder(format!("moore({m},{n})"))
        .simplex("pt", 0, vec![])
        .simplex("x", n, (0..=n).map(|_| degenerate_point(n - 1)).collect())
        .simplex("y", n + 1, faces)
        .basepoint("pt")
        .simply_connected(n >= 2)
        .build()
}

pub const RP2_TRIANGLES: [&str; 10] = ["124", "126", "135", "136", "145", "234", "235", "256", "346", "456"];

/// Six-vertex triangulation of the real projective plane.
pub fn rp2() -> SimplicialSet {
    let mut b = SimplicialSet::builder("rp2");
    for v in 1..=6 {
        b.push(v.to_string(), 0, vec![]);
    }
    let mut edges = std::collections::BTreeSet::new();
    for t in RP2_TRIANGLES {
        let c: Vec<char> = t.chars().collect();
        edges.insert(format!("{}{}", c[0], c[1]));
        edges.insert(format!("{}{}", c[0], c[2]));
        edges.insert(format!("{}{}", c[1], c[2]));
    }
    for e in &edges {
        let c: Vec<char> = e.chars().collect();
        b.push(e.clone(), 1, vec![FaceSpec::from(c[1].to_string().as_str()), FaceSpec::from(c[0].to_string().as_str())]);
    }
    for t in RP2_TRIANGLES {
        let c: Vec<char> = t.chars().collect();
        let f = |a: char, b: char| FaceSpec::from(format!("{a}{b}").as_str());
        b.push(t, 2, vec![f(c[1], c[2]), f(c[0], c[2]), f(c[0], c[1])]);
    }
    b.basepoint("1").build().expect("rp2")
}

pub fn circle() -> SimplicialSet {
    minimal_sphere(1)
}

pub fn torus() -> SimplicialSet {
    let mut t = product(&circle(), &circle());
    t.name = "torus".into();
    t
}

pub fn simplicial_fixture(name: &str) -> Result<SimplicialSet> {
    Ok(match name {
        "point" => standard_simplex(0),
        "delta1" => standard_simplex(1),
        "delta2" => standard_simplex(2),
        "delta3" => standard_simplex(3),
        "s1-min" => minimal_sphere(1),
        "s2-min" => minimal_sphere(2),
        "s3-min" => minimal_sphere(3),
        "rp2" => rp2(),
        "torus" => torus(),
        other => {
            if let Some(args) = other.strip_prefix("moore(").and_then(|s| s.strip_suffix(')')) {
                let parts: Vec<&str> = args.split(',').map(str::trim).collect();
                if parts.len() == 2 {
                    if let (Ok(m), Ok(n)) = (parts[0].parse(), parts[1].parse()) {
                        return moore(m, n);
                    }
                }
                return Err(Error::Parse(format!("bad moore fixture `{other}`")));
            }
            return Err(Error::UnknownLabel(format!("no simplicial fixture `{other}`")));
        }
    })
}

/// `CP²` as a cellular chain complex: `ℤ` in degrees 0, 2, 4.
pub fn cp2_chains() -> Arc<FreeComplex> {
    Arc::new(
        FreeComplex::builder()
            .skeletal_cell("pt", 0, 0)
            .skeletal_cell("u", 2, 2)
            .skeletal_cell("u2", 4, 4)
            .default_augmentation()
            .build()
            .expect("cp2"),
    )
}

const EXAMPLE_B: &str = include_str!("../../fixtures/example_b.json");

pub const MCOALGEBRA_FIXTURES: [&str; 1] = ["example-B"];

/// `ℤ` in degree 0 and `x` in degree 3 with `Δ_{e_0}(x) = 1⊗x + x⊗1`, `Δ_{e_3}(x) = x⊗x`
/// and rank-3 values up to degree 4.
pub fn example_b() -> Result<MCoalgebra> {
    let v: serde_json::Value = serde_json::from_str(EXAMPLE_B).map_err(|e| Error::Parse(e.to_string()))?;
    mcoalgebra_from_json(&v)
}

/// A named m-coalgebra: `example-B`, or the canonical structure on any simplicial fixture.
pub fn mcoalgebra_fixture(name: &str, rank_bound: usize, degree_bound: usize) -> Result<MCoalgebra> {
    if name == "example-B" {
        let mut m = example_b()?;
        m.rank_bound = m.rank_bound.min(rank_bound);
        m.degree_bound = m.degree_bound.min(degree_bound);
        return Ok(m);
    }
    let x = simplicial_fixture(name)?;
    Ok(canonical_mstructure(Arc::new(x), rank_bound, degree_bound))
}

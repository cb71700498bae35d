use mstruct_core::mcoalg::MCoalgebra;
use mstruct_core::simpchain::{
    canonical_mstructure, coboundary, cup_i, simplicial_fixture, steenrod_square, Cochain, Mod2Cohomology, SimplicialSet,
};
use proptest::prelude::*;
use std::sync::Arc;

fn canonical(name: &str) -> (Arc<SimplicialSet>, MCoalgebra) {
    let x = Arc::new(simplicial_fixture(name).unwrap());
    let m = canonical_mstructure(x.clone(), 2, 4);
    (x, m)
}

fn plus(a: &Cochain, b: &Cochain) -> Cochain {
    a.symmetric_difference(b).cloned().collect()
}

fn eval(x: &SimplicialSet, u: &Cochain, base: usize, verts: &[usize]) -> bool {
    let f = x.face_on(base, verts);
    !f.is_degenerate() && u.contains(&x.label(&f))
}

// u ∪ u from front and back faces
fn cup_square(x: &SimplicialSet, u: &Cochain, p: usize) -> Cochain {
    let mut out = Cochain::new();
    for &s in x.of_dim(2 * p) {
        let front: Vec<usize> = (0..=p).collect();
        let back: Vec<usize> = (p..=2 * p).collect();
        if eval(x, u, s, &front) && eval(x, u, s, &back) {
            out.insert(x.simplex(s).id.clone());
        }
    }
    out
}

// u ∪₁ u: u on [0,i]∪[j,m], u on [i,j]
fn cup_one_square(x: &SimplicialSet, u: &Cochain, p: usize) -> Cochain {
    let mut out = Cochain::new();
    if p == 0 {
        return out;
    }
    let m = 2 * p - 1;
    for &s in x.of_dim(m) {
        let mut hits = 0;
        for i in 0..=m {
            for j in i + 1..=m {
                let outer: Vec<usize> = (0..=i).chain(j..=m).collect();
                let inner: Vec<usize> = (i..=j).collect();
                if outer.len() == p + 1 && inner.len() == p + 1 && eval(x, u, s, &outer) && eval(x, u, s, &inner) {
                    hits += 1;
                }
            }
        }
        if hits % 2 == 1 {
            out.insert(x.simplex(s).id.clone());
        }
    }
    out
}

#[test]
fn sq1_is_nonzero_on_rp2() {
    let (x, m) = canonical("rp2");
    let h1 = Mod2Cohomology::new(&m.complex, 1).unwrap();
    let h2 = Mod2Cohomology::new(&m.complex, 2).unwrap();
    assert_eq!((h1.dim(), h2.dim()), (1, 1));
    let a = &h1.representatives[0];
    let sq = steenrod_square(&m, 1, 1, a).unwrap();
    assert_eq!(sq, cup_square(&x, a, 1));
    assert_eq!(h2.class_of(&sq).unwrap(), vec![true]);
}

#[test]
fn sq0_is_identity() {
    for name in ["rp2", "torus", "s2-min", "delta2"] {
        let (_, m) = canonical(name);
        for n in 0..=2 {
            let h = Mod2Cohomology::new(&m.complex, n).unwrap();
            for (i, u) in h.representatives.iter().enumerate() {
                let sq = steenrod_square(&m, n, 0, u).unwrap();
                let mut e = vec![false; h.dim()];
                e[i] = true;
                assert_eq!(h.class_of(&sq).unwrap(), e, "{name} degree {n}");
            }
        }
    }
}

#[test]
fn squares_above_degree_vanish_on_torus() {
    let (_, m) = canonical("torus");
    for n in 0..=2 {
        let h = Mod2Cohomology::new(&m.complex, n).unwrap();
        for u in &h.representatives {
            for k in n + 1..=3 {
                assert!(steenrod_square(&m, n, k, u).unwrap().is_empty());
            }
        }
    }
    let h1 = Mod2Cohomology::new(&m.complex, 1).unwrap();
    let h2 = Mod2Cohomology::new(&m.complex, 2).unwrap();
    assert_eq!((h1.dim(), h2.dim()), (2, 1));
    for u in &h1.representatives {
        let sq = steenrod_square(&m, 1, 1, u).unwrap();
        assert_eq!(h2.class_of(&sq).unwrap(), vec![false]);
    }
}

#[test]
fn top_and_next_squares_match_cup_formulas() {
    for name in ["rp2", "torus", "s2-min", "delta3"] {
        let (x, m) = canonical(name);
        for n in 1..=2 {
            let h = Mod2Cohomology::new(&m.complex, n).unwrap();
            for u in &h.representatives {
                let p = n as usize;
                assert_eq!(steenrod_square(&m, n, n, u).unwrap(), cup_square(&x, u, p), "{name}");
                assert_eq!(steenrod_square(&m, n, n - 1, u).unwrap(), cup_one_square(&x, u, p), "{name}");
            }
        }
    }
}

#[test]
fn cup_i_coboundary_relation() {
    for name in ["rp2", "delta3"] {
        let (_, m) = canonical(name);
        let cx = &m.complex;
        for p in 0..=3i64 {
            for q in 0..=3i64 {
                for i in 0..=2usize {
                    if p + q < i as i64 + 1 {
                        continue;
                    }
                    for a in cx.basis(p) {
                        for b in cx.basis(q) {
                            let u: Cochain = [a.to_string()].into();
                            let v: Cochain = [b.to_string()].into();
                            let lhs = coboundary(cx, &cup_i(&m, i + 1, &u, p, &v, q).unwrap()).unwrap();
                            let mut rhs = plus(&cup_i(&m, i, &u, p, &v, q).unwrap(), &cup_i(&m, i, &v, q, &u, p).unwrap());
                            rhs = plus(&rhs, &cup_i(&m, i + 1, &coboundary(cx, &u).unwrap(), p + 1, &v, q).unwrap());
                            rhs = plus(&rhs, &cup_i(&m, i + 1, &u, p, &coboundary(cx, &v).unwrap(), q + 1).unwrap());
                            assert_eq!(lhs, rhs, "{name} ∪_{} on {a}, {b}", i + 1);
                        }
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn squares_are_defined_on_classes(mask in proptest::collection::vec(any::<bool>(), 16), k in 0i64..=2) {
        let (_, m) = canonical("rp2");
        let h1 = Mod2Cohomology::new(&m.complex, 1).unwrap();
        let target = Mod2Cohomology::new(&m.complex, 1 + k).unwrap();
        let b: Cochain = m.complex.basis(0).iter().zip(&mask).filter(|(_, &on)| on).map(|(l, _)| l.to_string()).collect();
        let u = &h1.representatives[0];
        let shifted = plus(u, &coboundary(&m.complex, &b).unwrap());
        let s1 = steenrod_square(&m, 1, k, u).unwrap();
        let s2 = steenrod_square(&m, 1, k, &shifted).unwrap();
        prop_assert!(coboundary(&m.complex, &s2).unwrap().is_empty());
        prop_assert_eq!(target.class_of(&s1).unwrap(), target.class_of(&s2).unwrap());
    }
}

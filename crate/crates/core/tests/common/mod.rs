#![allow(dead_code)]

use mstruct_core::mcoalg::{zigzag_lift, ZigZagLift};
use mstruct_core::simpchain::{build_simplicial_zigzag, BaseMap, Move, SimplicialComplex, SimplicialZigZag};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

pub const MAX_CELLS: usize = 12;

fn random_start(rng: &mut ChaCha8Rng) -> SimplicialComplex {
    let facets: Vec<Vec<usize>> = match rng.gen_range(0..5) {
        0 => vec![vec![0]],
        1 => vec![vec![0, 1]],
        2 => vec![vec![0, 1], vec![1, 2]],
        3 => vec![vec![0, 1, 2]],
        _ => vec![vec![0, 1, 2], vec![2, 3]],
    };
    SimplicialComplex::from_facets(&facets)
}

fn random_base(rng: &mut ChaCha8Rng, all: &BTreeSet<Vec<usize>>, verts: usize) -> BaseMap {
    match rng.gen_range(0..3) {
        0 => BaseMap::Simplex {
            dim: 0,
            colour: (0..verts).map(|v| (v, 0)).collect(),
        },
        1 => {
            let cut = rng.gen_range(0..=verts);
            BaseMap::Simplex {
                dim: 1,
                colour: (0..verts).map(|v| (v, usize::from(v >= cut))).collect(),
            }
        }
        _ => BaseMap::Sphere {
            dim: 2,
            wrap: all.iter().filter(|s| s.len() == 3 && rng.gen_bool(0.5)).cloned().collect(),
        },
    }
}

/// A random zig-zag of expansions and collapses over a random base whose outer
/// square commutes; candidates whose square fails are redrawn.
pub fn random_zigzag(seed: u64, rank_bound: usize, degree_bound: usize) -> (SimplicialZigZag, ZigZagLift) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let start = random_start(&mut rng);
        let mut cur = start.clone();
        let mut fresh = cur.vertices().len();
        let mut moves = Vec::new();
        let mut all: BTreeSet<Vec<usize>> = cur.simplices().cloned().collect();
        for _ in 0..rng.gen_range(1..=4) {
            let right = rng.gen_bool(0.6);
            let mut options: Vec<Move> = if right {
                cur.expansions(fresh)
                    .into_iter()
                    .filter(|_| cur.len() + 2 <= MAX_CELLS)
                    .map(|(tau, sigma)| Move::Expand { tau, sigma })
                    .collect()
            } else {
                cur.free_pairs().into_iter().map(|(tau, sigma)| Move::Collapse { tau, sigma }).collect()
            };
            if options.is_empty() {
                continue;
            }
            options.shuffle(&mut rng);
            let mv = options.swap_remove(0);
            cur = match &mv {
                Move::Expand { tau, sigma } => {
                    if sigma.contains(&fresh) {
                        fresh += 1;
                    }
                    cur.with(tau, sigma)
                }
                Move::Collapse { tau, sigma } => cur.without(tau, sigma),
            };
            all.extend(cur.simplices().cloned());
            moves.push(mv);
        }
        let base = random_base(&mut rng, &all, fresh);
        let Ok(z) = build_simplicial_zigzag(&start, &moves, &base, rank_bound, degree_bound) else {
            continue;
        };
        if let Ok(lift) = zigzag_lift(&z.zigzag, &z.a, &z.b) {
            return (z, lift);
        }
    }
}


use super::sset::SimplicialSet;
use super::surjection::{interval_cut, word_surjections, Surjection};
use crate::error::Result;
use crate::mcoalg::{MCoalgebra, StructureMaps, Tensor};
use crate::symbar::BarWord;
use crate::zmod::Chain;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// `f̃ₙ(w ⊗ σ)`: table reduction of `w` followed by the interval cut of `σ`.
pub struct SimplicialStructure {
    pub space: Arc<SimplicialSet>,
    surjections: Mutex<HashMap<BarWord, Arc<Chain<Surjection>>>>,
}

impl SimplicialStructure {
    pub fn new(space: Arc<SimplicialSet>) -> Self {
        SimplicialStructure {
            space,
            surjections: Mutex::new(HashMap::new()),
        }
    }

    pub fn surjections(&self, w: &BarWord) -> Arc<Chain<Surjection>> {
        if let Some(s) = self.surjections.lock().expect("cache").get(w) {
            return s.clone();
        }
        let s = Arc::new(word_surjections(w));
        self.surjections.lock().expect("cache").insert(w.clone(), s.clone());
        s
    }
}

impl StructureMaps for SimplicialStructure {
    fn kind(&self) -> String {
        format!("canonical on {}", self.space.name)
    }

    fn adjoint(&self, w: &BarWord, label: &str) -> Result<Chain<Tensor>> {
        let base = self.space.index_of(label)?;
        let mut out = Chain::zero();
        for (u, c) in self.surjections(w).iter() {
            out.add_scaled(&interval_cut(&self.space, u, base), c);
        }
        Ok(out)
    }

    fn max_rank(&self) -> usize {
        usize::MAX
    }
}

/// The canonical m-structure `𝒞(X)` on normalized chains.
pub fn canonical_mstructure(x: Arc<SimplicialSet>, rank_bound: usize, degree_bound: usize) -> MCoalgebra {
    let c = x.chains();
    MCoalgebra::new(
        format!("C({})", x.name),
        c,
        Arc::new(SimplicialStructure::new(x)),
        rank_bound,
        degree_bound,
    )
}

use super::Operad;
use crate::zmod::Chain;

/// The operad `I`: one degree-0 generator `b_i` per rank, `b_i ∘ b_j = b_{i+j−1}`.
#[derive(Clone, Debug)]
pub struct TrivialOperad {
    pub rank_bound: usize,
}

pub fn trivial_operad(rank_bound: usize) -> TrivialOperad {
    TrivialOperad { rank_bound }
}

impl Operad for TrivialOperad {
    type Basis = usize;

    fn name(&self) -> String {
        "trivial".into()
    }

    fn rank(&self, b: &usize) -> usize {
        *b
    }

    fn degree(&self, _: &usize) -> i64 {
        0
    }

    fn differential(&self, _: &usize) -> Chain<usize> {
        Chain::zero()
    }

    fn compose(&self, inner: &usize, i: usize, outer: &usize) -> Chain<usize> {
        if i == 0 || i > *outer {
            return Chain::zero();
        }
        Chain::basis(inner + outer - 1)
    }

    fn unit(&self) -> Option<Chain<usize>> {
        Some(Chain::basis(1))
    }

    fn basis(&self, rank: usize, degree: i64) -> Vec<usize> {
        if degree == 0 && rank <= self.rank_bound {
            vec![rank]
        } else {
            Vec::new()
        }
    }

    fn degrees(&self, _: usize) -> Vec<i64> {
        vec![0]
    }

    fn max_rank(&self) -> usize {
        self.rank_bound
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_law() {
        let o = trivial_operad(4);
        assert_eq!(o.compose(&2, 1, &3), Chain::basis(4));
        assert_eq!(o.compose(&1, 2, &3), Chain::basis(3));
        assert_eq!(o.compose(&0, 1, &2), Chain::basis(1));
    }
}

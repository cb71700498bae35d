use super::chain::{sign_pow, Chain};
use super::complex::{Element, FreeComplex};
use super::snf::Mat;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::One;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Homogeneous map of graded modules, stored by source column.
#[derive(Clone, Debug)]
pub struct GradedMap {
    source: Arc<FreeComplex>,
    target: Arc<FreeComplex>,
    degree: i64,
    columns: BTreeMap<String, Chain<String>>,
}

impl GradedMap {
    pub fn zero(source: Arc<FreeComplex>, target: Arc<FreeComplex>, degree: i64) -> Self {
        GradedMap {
            source,
            target,
            degree,
            columns: BTreeMap::new(),
        }
    }

    pub fn identity(c: Arc<FreeComplex>) -> Self {
        let mut m = GradedMap::zero(c.clone(), c.clone(), 0);
        for cell in c.cells() {
            m.columns.insert(cell.label.clone(), Chain::basis(cell.label.clone()));
        }
        m
    }

    /// Build from a closure on source labels; validates degrees.
    pub fn from_fn(
        source: Arc<FreeComplex>,
        target: Arc<FreeComplex>,
        degree: i64,
        mut f: impl FnMut(&str) -> Result<Chain<String>>,
    ) -> Result<Self> {
        let mut m = GradedMap::zero(source.clone(), target, degree);
        for cell in source.cells() {
            let v = f(&cell.label)?;
            m.set(&cell.label, v)?;
        }
        Ok(m)
    }

    pub fn set(&mut self, label: &str, value: Chain<String>) -> Result<()> {
        let d = self.source.degree_of(label)?;
        for (t, _) in value.iter() {
            let e = self.target.degree_of(t)?;
            if e != d + self.degree {
                return Err(Error::DegreeMismatch(format!(
                    "map of degree {} sends `{}` (degree {}) to `{}` (degree {})",
                    self.degree, label, d, t, e
                )));
            }
        }
        if value.is_zero() {
            self.columns.remove(label);
        } else {
            self.columns.insert(label.to_string(), value);
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<FreeComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FreeComplex> {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn on_label(&self, label: &str) -> Chain<String> {
        self.columns.get(label).cloned().unwrap_or_default()
    }

    pub fn apply_chain(&self, x: &Chain<String>) -> Chain<String> {
        x.flat_map(|l| self.on_label(l))
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        self.source.check_element(x)?;
        Ok(Element {
            degree: x.degree + self.degree,
            terms: self.apply_chain(&x.terms),
        })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap> {
        if other.target.signature() != self.source.signature() {
            return Err(Error::ComplexMismatch("composition of incompatible maps".into()));
        }
        let mut m = GradedMap::zero(other.source.clone(), self.target.clone(), self.degree + other.degree);
        for (l, v) in &other.columns {
            let w = self.apply_chain(v);
            if !w.is_zero() {
                m.columns.insert(l.clone(), w);
            }
        }
        Ok(m)
    }

    fn same_shape(&self, o: &GradedMap) -> Result<()> {
        if self.degree != o.degree
            || self.source.signature() != o.source.signature()
            || self.target.signature() != o.target.signature()
        {
            return Err(Error::ComplexMismatch("maps differ in source, target or degree".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &GradedMap) -> Result<GradedMap> {
        self.same_shape(o)?;
        let mut m = self.clone();
        for (l, v) in &o.columns {
            let mut w = m.on_label(l);
            w.add_chain(v);
            if w.is_zero() {
                m.columns.remove(l);
            } else {
                m.columns.insert(l.clone(), w);
            }
        }
        Ok(m)
    }

    pub fn scaled(&self, c: &BigInt) -> GradedMap {
        let mut m = GradedMap::zero(self.source.clone(), self.target.clone(), self.degree);
        for (l, v) in &self.columns {
            let w = v.scaled(c);
            if !w.is_zero() {
                m.columns.insert(l.clone(), w);
            }
        }
        m
    }

    pub fn sub(&self, o: &GradedMap) -> Result<GradedMap> {
        self.add(&o.scaled(&-BigInt::one()))
    }

    /// `∂f = ∂∘f − (−1)^{deg f} f∘∂`.
    pub fn boundary(&self) -> GradedMap {
        let s = sign_pow(self.degree);
        let mut m = GradedMap::zero(self.source.clone(), self.target.clone(), self.degree - 1);
        for cell in self.source.cells() {
            let l = &cell.label;
            let mut v = self
                .target
                .boundary_chain(&self.on_label(l))
                .expect("labels validated");
            let db = self.source.boundary_chain(&Chain::basis(l.clone())).expect("own label");
            v.add_scaled(&self.apply_chain(&db), &-&s);
            if !v.is_zero() {
                m.columns.insert(l.clone(), v);
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.columns.values().all(|v| v.is_zero())
    }

    pub fn is_chain_map(&self) -> bool {
        self.boundary().is_zero()
    }

    /// First source label where `∂f ≠ 0`.
    pub fn chain_map_witness(&self) -> Option<String> {
        self.boundary().columns.keys().next().cloned()
    }

    /// First source label where the maps differ.
    pub fn difference_witness(&self, o: &GradedMap) -> Option<String> {
        for cell in self.source.cells() {
            if self.on_label(&cell.label) != o.on_label(&cell.label) {
                return Some(cell.label.clone());
            }
        }
        None
    }

    /// Matrix of the component `C_d → D_{d+deg}` on basis order.
    pub fn matrix(&self, d: i64) -> Mat {
        let rows = self.target.basis(d + self.degree);
        let cols = self.source.basis(d);
        let mut m = Mat::zeros(rows.len(), cols.len());
        let rpos: std::collections::HashMap<&str, usize> =
            rows.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        for (j, l) in cols.iter().enumerate() {
            for (t, c) in self.on_label(l).iter() {
                m[(rpos[t.as_str()], j)] = c.clone();
            }
        }
        m
    }

    /// Overwrite the component on degree `d` from a matrix on basis order.
    pub fn set_matrix(&mut self, d: i64, m: &Mat) -> Result<()> {
        let rows: Vec<String> = self.target.basis(d + self.degree).iter().map(|s| s.to_string()).collect();
        let cols: Vec<String> = self.source.basis(d).iter().map(|s| s.to_string()).collect();
        for (j, l) in cols.iter().enumerate() {
            let v: Chain<String> = (0..rows.len()).map(|i| (rows[i].clone(), m[(i, j)].clone())).collect();
            self.set(l, v)?;
        }
        Ok(())
    }

    pub fn columns(&self) -> &BTreeMap<String, Chain<String>> {
        &self.columns
    }
}

impl PartialEq for GradedMap {
    fn eq(&self, o: &Self) -> bool {
        self.degree == o.degree && self.columns == o.columns
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval() -> Arc<FreeComplex> {
        Arc::new(
            FreeComplex::builder()
                .cell("0", 0)
                .cell("1", 0)
                .cell("01", 1)
                .boundary("01", [("1", 1), ("0", -1)])
                .build()
                .unwrap(),
        )
    }

    #[test]
    fn boundary_operator_is_not_a_chain_map_but_has_zero_boundary() {
        let c = interval();
        let d = GradedMap::from_fn(c.clone(), c.clone(), -1, |l| Ok(c.boundary_of(l)?.terms)).unwrap();
        // ∂(∂) = ∂∂ + ∂∂ = 0
        assert!(d.is_chain_map());
        assert!(GradedMap::identity(c).is_chain_map());
    }

    #[test]
    fn contraction_to_vertex_homotopy() {
        let c = interval();
        let pr = GradedMap::from_fn(c.clone(), c.clone(), 0, |l| {
            Ok(if l == "01" { Chain::zero() } else { Chain::basis("0".to_string()) })
        })
        .unwrap();
        let h = GradedMap::from_fn(c.clone(), c.clone(), 1, |l| {
            Ok(if l == "1" { Chain::basis("01".to_string()) } else { Chain::zero() })
        })
        .unwrap();
        // ∂h = id − pr
        let lhs = h.boundary();
        let rhs = GradedMap::identity(c).sub(&pr).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rejects_wrong_degree() {
        let c = interval();
        let mut m = GradedMap::zero(c.clone(), c, 0);
        assert!(m.set("01", Chain::basis("0".to_string())).is_err());
    }
}

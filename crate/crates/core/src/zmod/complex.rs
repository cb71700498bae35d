use super::chain::{sign_pow, Chain};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// A basis element of a free complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub label: String,
    pub degree: i64,
    pub skeleton: Option<usize>,
}

/// Homogeneous element: integer combination of basis labels of one degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    pub degree: i64,
    pub terms: Chain<String>,
}

impl Element {
    pub fn zero(degree: i64) -> Self {
        Element {
            degree,
            terms: Chain::zero(),
        }
    }

    pub fn basis(label: impl Into<String>, degree: i64) -> Self {
        Element {
            degree,
            terms: Chain::basis(label.into()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        Element {
            degree: self.degree,
            terms: self.terms.scaled(c),
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::DegreeMismatch(format!(
                "adding elements of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let degree = if self.is_zero() { other.degree } else { self.degree };
        let mut terms = self.terms.clone();
        terms.add_chain(&other.terms);
        Ok(Element { degree, terms })
    }

    pub fn coeff(&self, label: &str) -> BigInt {
        self.terms.coeff(&label.to_string())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.degree, self.terms)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.terms)
    }
}

/// Graded free ℤ-module with named basis and a column-sparse boundary.
#[derive(Clone, Debug)]
pub struct FreeComplex {
    cells: Vec<Cell>,
    index: HashMap<String, usize>,
    by_degree: BTreeMap<i64, Vec<usize>>,
    boundary: Vec<Vec<(usize, BigInt)>>,
    augmentation: Option<BTreeMap<usize, BigInt>>,
}

#[derive(Default)]
pub struct ComplexBuilder {
    cells: Vec<Cell>,
    boundary: HashMap<String, Vec<(String, BigInt)>>,
    augmentation: Option<BTreeMap<String, BigInt>>,
    default_augmentation: bool,
}

impl ComplexBuilder {
    pub fn cell(mut self, label: impl Into<String>, degree: i64) -> Self {
        self.push_cell(label, degree, None);
        self
    }

    pub fn push_cell(&mut self, label: impl Into<String>, degree: i64, skeleton: Option<usize>) {
        self.cells.push(Cell {
            label: label.into(),
            degree,
            skeleton,
        });
    }

    pub fn skeletal_cell(mut self, label: impl Into<String>, degree: i64, skeleton: usize) -> Self {
        self.push_cell(label, degree, Some(skeleton));
        self
    }

    pub fn boundary<S: Into<String>>(
        mut self,
        label: impl Into<String>,
        terms: impl IntoIterator<Item = (S, i64)>,
    ) -> Self {
        let t = terms
            .into_iter()
            .map(|(s, c)| (s.into(), BigInt::from(c)))
            .collect();
        self.boundary.insert(label.into(), t);
        self
    }

    pub fn set_boundary(&mut self, label: impl Into<String>, terms: Vec<(String, BigInt)>) {
        self.boundary.insert(label.into(), terms);
    }

    /// Explicit augmentation on degree-0 labels.
    pub fn augmentation(mut self, aug: BTreeMap<String, BigInt>) -> Self {
        self.augmentation = Some(aug);
        self
    }

    pub fn set_augmentation(&mut self, aug: BTreeMap<String, BigInt>) {
        self.augmentation = Some(aug);
    }

    /// Augment every degree-0 cell by 1 when that is a chain map.
    pub fn default_augmentation(mut self) -> Self {
        self.default_augmentation = true;
        self
    }

    pub fn build(self) -> Result<FreeComplex> {
        let mut index = HashMap::new();
        let mut by_degree: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, c) in self.cells.iter().enumerate() {
            if index.insert(c.label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(c.label.clone()));
            }
            by_degree.entry(c.degree).or_default().push(i);
        }
        let mut boundary = vec![Vec::new(); self.cells.len()];
        for (label, terms) in self.boundary {
            let &col = index.get(&label).ok_or_else(|| Error::UnknownLabel(label.clone()))?;
            let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (t, c) in terms {
                let &row = index.get(&t).ok_or_else(|| Error::UnknownLabel(t.clone()))?;
                if self.cells[row].degree != self.cells[col].degree - 1 {
                    return Err(Error::DegreeMismatch(format!(
                        "boundary of `{}` (degree {}) contains `{}` (degree {})",
                        label, self.cells[col].degree, t, self.cells[row].degree
                    )));
                }
                *acc.entry(row).or_default() += c;
            }
            boundary[col] = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        }
        let mut cx = FreeComplex {
            cells: self.cells,
            index,
            by_degree,
            boundary,
            augmentation: None,
        };
        if let Some(col) = cx.square_witness() {
            return Err(Error::BoundaryNotNilpotent(cx.cells[col].label.clone()));
        }
        if let Some(aug) = self.augmentation {
            let mut a = BTreeMap::new();
            for (l, c) in aug {
                let &i = cx.index.get(&l).ok_or_else(|| Error::UnknownLabel(l.clone()))?;
                if cx.cells[i].degree != 0 {
                    return Err(Error::DegreeMismatch(format!("augmentation on `{l}`")));
                }
                if !c.is_zero() {
                    a.insert(i, c);
                }
            }
            cx.augmentation = Some(a);
            if !cx.augmentation_is_chain_map() {
                return Err(Error::NotChainMap("augmentation ∘ ∂ ≠ 0".into()));
            }
        } else if self.default_augmentation {
            let a: BTreeMap<usize, BigInt> = cx
                .by_degree
                .get(&0)
                .map(|v| v.iter().map(|&i| (i, BigInt::one())).collect())
                .unwrap_or_default();
            cx.augmentation = Some(a);
            if !cx.augmentation_is_chain_map() {
                cx.augmentation = None;
            }
        }
        Ok(cx)
    }
}

impl FreeComplex {
    pub fn builder() -> ComplexBuilder {
        ComplexBuilder::default()
    }

    pub fn zero() -> Self {
        FreeComplex::builder().build().expect("empty complex")
    }

    /// ℤ in degree 0 on the label `pt`, augmented.
    pub fn point() -> Self {
        FreeComplex::builder()
            .skeletal_cell("pt", 0, 0)
            .default_augmentation()
            .build()
            .expect("point")
    }

    fn square_witness(&self) -> Option<usize> {
        for col in 0..self.cells.len() {
            let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (mid, c) in &self.boundary[col] {
                for (row, d) in &self.boundary[*mid] {
                    *acc.entry(*row).or_default() += c * d;
                }
            }
            if acc.values().any(|v| !v.is_zero()) {
                return Some(col);
            }
        }
        None
    }

    fn augmentation_is_chain_map(&self) -> bool {
        let Some(a) = &self.augmentation else {
            return true;
        };
        for &col in self.by_degree.get(&1).map(|v| v.as_slice()).unwrap_or(&[]) {
            let mut s = BigInt::zero();
            for (row, c) in &self.boundary[col] {
                if let Some(e) = a.get(row) {
                    s += c * e;
                }
            }
            if !s.is_zero() {
                return false;
            }
        }
        true
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn cell(&self, label: &str) -> Result<&Cell> {
        self.index
            .get(label)
            .map(|&i| &self.cells[i])
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub fn degree_of(&self, label: &str) -> Result<i64> {
        Ok(self.cell(label)?.degree)
    }

    pub fn skeleton_of(&self, label: &str) -> Result<Option<usize>> {
        Ok(self.cell(label)?.skeleton)
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.by_degree.keys().copied().collect()
    }

    pub fn degree_range(&self) -> Option<(i64, i64)> {
        Some((*self.by_degree.keys().next()?, *self.by_degree.keys().next_back()?))
    }

    /// Indices of basis cells of degree `d`, in basis order.
    pub fn indices(&self, d: i64) -> &[usize] {
        self.by_degree.get(&d).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn basis(&self, d: i64) -> Vec<&str> {
        self.indices(d)
            .iter()
            .map(|&i| self.cells[i].label.as_str())
            .collect()
    }

    pub fn dim(&self, d: i64) -> usize {
        self.indices(d).len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.cells[i].label
    }

    pub fn boundary_column(&self, i: usize) -> &[(usize, BigInt)] {
        &self.boundary[i]
    }

    pub fn boundary_of(&self, label: &str) -> Result<Element> {
        let &i = self
            .index
            .get(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
        Ok(Element {
            degree: self.cells[i].degree - 1,
            terms: self.boundary[i]
                .iter()
                .map(|(r, c)| (self.cells[*r].label.clone(), c.clone()))
                .collect(),
        })
    }

    pub fn boundary_chain(&self, x: &Chain<String>) -> Result<Chain<String>> {
        let mut out = Chain::zero();
        for (l, c) in x.iter() {
            let &i = self.index.get(l).ok_or_else(|| Error::UnknownLabel(l.clone()))?;
            for (r, d) in &self.boundary[i] {
                out.add_term(self.cells[*r].label.clone(), c * d);
            }
        }
        Ok(out)
    }

    pub fn boundary(&self, x: &Element) -> Result<Element> {
        self.check_element(x)?;
        Ok(Element {
            degree: x.degree - 1,
            terms: self.boundary_chain(&x.terms)?,
        })
    }

    pub fn check_element(&self, x: &Element) -> Result<()> {
        for (l, _) in x.terms.iter() {
            let d = self.degree_of(l)?;
            if d != x.degree {
                return Err(Error::DegreeMismatch(format!(
                    "`{}` has degree {} in an element of degree {}",
                    l, d, x.degree
                )));
            }
        }
        Ok(())
    }

    pub fn has_augmentation(&self) -> bool {
        self.augmentation.is_some()
    }

    pub fn augmentation_of(&self, label: &str) -> BigInt {
        match (&self.augmentation, self.index.get(label)) {
            (Some(a), Some(i)) => a.get(i).cloned().unwrap_or_default(),
            _ => BigInt::zero(),
        }
    }

    pub fn augmentation_map(&self) -> Option<BTreeMap<String, BigInt>> {
        self.augmentation.as_ref().map(|a| {
            a.iter()
                .map(|(i, c)| (self.cells[*i].label.clone(), c.clone()))
                .collect()
        })
    }

    pub fn augment(&self, x: &Chain<String>) -> BigInt {
        x.iter()
            .map(|(l, c)| c * self.augmentation_of(l))
            .fold(BigInt::zero(), |a, b| a + b)
    }

    /// Boundary `C_d → C_{d-1}` as a column-sparse matrix on basis order.
    pub fn boundary_matrix(&self, d: i64) -> super::snf::SparseMatrix {
        let rows = self.indices(d - 1);
        let cols = self.indices(d);
        let row_pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let columns = cols
            .iter()
            .map(|&c| {
                self.boundary[c]
                    .iter()
                    .map(|(r, v)| (row_pos[r], v.clone()))
                    .collect()
            })
            .collect();
        super::snf::SparseMatrix::new(rows.len(), columns)
    }

    /// Same complex with degrees shifted by `k`; boundary scaled by `(-1)^k`.
    pub fn shifted(&self, k: i64) -> FreeComplex {
        let s = sign_pow(k);
        let mut b = FreeComplex::builder();
        for c in &self.cells {
            b.push_cell(c.label.clone(), c.degree + k, c.skeleton);
        }
        for (i, col) in self.boundary.iter().enumerate() {
            b.set_boundary(
                self.cells[i].label.clone(),
                col.iter()
                    .map(|(r, v)| (self.cells[*r].label.clone(), v * &s))
                    .collect(),
            );
        }
        b.build().expect("shift preserves ∂² = 0")
    }

    /// Sum of all cells `(label, degree)` pairs, for structural comparison.
    pub fn signature(&self) -> Vec<(String, i64)> {
        self.cells.iter().map(|c| (c.label.clone(), c.degree)).collect()
    }
}

impl PartialEq for FreeComplex {
    fn eq(&self, other: &Self) -> bool {
        if self.cells.len() != other.cells.len() {
            return false;
        }
        for c in &self.cells {
            let Some(j) = other.index_of(&c.label) else {
                return false;
            };
            if other.cells[j].degree != c.degree {
                return false;
            }
            let a = self.boundary_of(&c.label).unwrap();
            let b = other.boundary_of(&c.label).unwrap();
            if a != b {
                return false;
            }
        }
        true
    }
}

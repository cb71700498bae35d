use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Finitely supported integer combination of keys.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain<K: Ord> {
    terms: BTreeMap<K, BigInt>,
}

/// `(-1)^odd` as an integer.
pub fn sign(odd: bool) -> BigInt {
    if odd {
        -BigInt::one()
    } else {
        BigInt::one()
    }
}

/// `(-1)^n` for any integer exponent.
pub fn sign_pow(n: i64) -> BigInt {
    sign(n.rem_euclid(2) == 1)
}

impl<K: Ord> Default for Chain<K> {
    fn default() -> Self {
        Chain {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Chain<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, BigInt::one())
    }

    pub fn term(k: K, c: impl Into<BigInt>) -> Self {
        let mut ch = Self::zero();
        ch.add_term(k, c.into());
        ch
    }

    pub fn add_term(&mut self, k: K, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Chain<K>, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn add_chain(&mut self, other: &Chain<K>) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone());
        }
    }

    pub fn sub_chain(&mut self, other: &Chain<K>) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), -v);
        }
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn negated(&self) -> Self {
        self.scaled(&-BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> BigInt {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &BigInt)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Linear extension of `f` over the support.
    pub fn flat_map<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Chain<K2>) -> Chain<K2> {
        let mut out = Chain::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Reduce every coefficient modulo `m` (representatives in `0..m`).
    pub fn reduce_mod(&self, m: &BigInt) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            let r = ((c % m) + m) % m;
            out.add_term(k.clone(), r);
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, BigInt)> for Chain<K> {
    fn from_iter<I: IntoIterator<Item = (K, BigInt)>>(iter: I) -> Self {
        let mut ch = Chain::zero();
        for (k, c) in iter {
            ch.add_term(k, c);
        }
        ch
    }
}

impl<K: Ord + Clone> IntoIterator for Chain<K> {
    type Item = (K, BigInt);
    type IntoIter = std::collections::btree_map::IntoIter<K, BigInt>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<K: Ord + Clone> std::ops::Add for Chain<K> {
    type Output = Chain<K>;
    fn add(mut self, rhs: Chain<K>) -> Chain<K> {
        self.add_chain(&rhs);
        self
    }
}

impl<K: Ord + Clone> std::ops::Sub for Chain<K> {
    type Output = Chain<K>;
    fn sub(mut self, rhs: Chain<K>) -> Chain<K> {
        self.sub_chain(&rhs);
        self
    }
}

impl<K: Ord + Clone> std::ops::Neg for Chain<K> {
    type Output = Chain<K>;
    fn neg(self) -> Chain<K> {
        self.negated()
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for Chain<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}·{:?}", c, k)?;
        }
        Ok(())
    }
}

impl<K: Ord + fmt::Display> fmt::Display for Chain<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if mag.is_one() {
                write!(f, "{}", k)?;
            } else {
                write!(f, "{}·{}", mag, k)?;
            }
        }
        Ok(())
    }
}

use super::Operad;
use crate::zmod::{sign, Chain};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariantReport {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

impl VariantReport {
    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "witness": self.witness,
        })
    }
}

#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub operad: String,
    pub variants: Vec<VariantReport>,
    pub leibniz: VariantReport,
    pub unit: VariantReport,
}

impl IdentityReport {
    pub fn variant(&self, name: &str) -> Option<&VariantReport> {
        self.variants.iter().find(|v| v.name == name)
    }

    /// Names of the passing identity variants, in report order.
    pub fn outcome(&self) -> Vec<(String, bool)> {
        self.variants.iter().map(|v| (v.name.clone(), v.passed)).collect()
    }

    /// First orientation under which both identities hold.
    pub fn orientation(&self) -> Option<String> {
        let pass = |n: &str| self.variant(n).map(|v| v.passed).unwrap_or(false);
        for (o, a, b, c) in [
            ("standard", ID1, ID2, ID2_SIGNED),
            ("reversed", ID1_REV, ID2_REV, ID2_REV_SIGNED),
        ] {
            if pass(a) && pass(c) {
                return Some(format!("{o}, identity (2) with sign (-1)^(|S1||S2|)"));
            }
            if pass(a) && pass(b) {
                return Some(format!("{o}, identity (2) unsigned"));
            }
        }
        None
    }

    pub fn to_json(&self) -> Value {
        json!({
            "operad": self.operad,
            "identities": self.variants.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
            "leibniz": self.leibniz.to_json(),
            "unit": self.unit.to_json(),
            "orientation": self.orientation(),
        })
    }
}

pub const ID1: &str = "(1) as printed";
pub const ID2: &str = "(2) as printed";
pub const ID2_SIGNED: &str = "(2) with Koszul sign";
pub const ID1_REV: &str = "(1) reversed orientation";
pub const ID2_REV: &str = "(2) reversed orientation";
pub const ID2_REV_SIGNED: &str = "(2) reversed orientation with Koszul sign";

fn elements<O: Operad>(o: &O, rank_bound: usize, degree_bound: i64) -> Vec<O::Basis> {
    let mut out = Vec::new();
    for r in 0..=rank_bound.min(o.max_rank()) {
        for d in o.degrees(r) {
            if d.abs() <= degree_bound {
                out.extend(o.basis(r, d));
            }
        }
    }
    out
}

/// `x ∘ᵢ y` in the chosen orientation, `None` when the slot does not exist.
fn op<O: Operad>(o: &O, rev: bool, x: &Chain<O::Basis>, rx: usize, i: usize, y: &Chain<O::Basis>, ry: usize) -> Option<Chain<O::Basis>> {
    let (inner, outer, ro) = if rev { (y, x, rx) } else { (x, y, ry) };
    if i == 0 || i > ro {
        return None;
    }
    Some(o.compose_chains(inner, i, outer))
}

struct Tally {
    checked: usize,
    witness: Option<String>,
}

fn run<O: Operad>(
    o: &O,
    elems: &[O::Basis],
    rank_bound: usize,
    degree_bound: i64,
    check: impl Fn(&O::Basis, &O::Basis, &O::Basis, &mut Tally) + Sync,
) -> (usize, Option<String>) {
    let mut buckets: BTreeMap<(usize, i64), Vec<&O::Basis>> = BTreeMap::new();
    for x in elems {
        buckets.entry((o.rank(x), o.degree(x).abs())).or_default().push(x);
    }
    let mut jobs = Vec::new();
    for (ka, va) in &buckets {
        for (kb, vb) in &buckets {
            for (kc, vc) in &buckets {
                if ka.0 + kb.0 + kc.0 <= rank_bound + 2 && ka.1 + kb.1 + kc.1 <= degree_bound {
                    jobs.extend(va.iter().map(|a| (*a, vb, vc)));
                }
            }
        }
    }
    let results: Vec<Tally> = jobs
        .par_iter()
        .map(|(a, vb, vc)| {
            let mut t = Tally {
                checked: 0,
                witness: None,
            };
            for b in vb.iter() {
                for c in vc.iter() {
                    check(a, b, c, &mut t);
                }
            }
            t
        })
        .collect();
    let checked = results.iter().map(|t| t.checked).sum();
    let witness = results.into_iter().find_map(|t| t.witness);
    (checked, witness)
}

fn identity_one<O: Operad>(o: &O, elems: &[O::Basis], rb: usize, db: i64, rev: bool, name: &str) -> VariantReport {
    let (checked, witness) = run(o, elems, rb, db, |s1, s2, s3, t| {
        let (r1, r2, r3) = (o.rank(s1), o.rank(s2), o.rank(s3));
        let (c1, c2, c3) = (Chain::basis(s1.clone()), Chain::basis(s2.clone()), Chain::basis(s3.clone()));
        for i in 1..=r1.max(r2).max(r3) {
            for j in 1..=(r1 + r2 + r3) {
                let lhs = op(o, rev, &c1, r1, i, &c2, r2).and_then(|x| op(o, rev, &x, r1 + r2 - 1, j, &c3, r3));
                let rhs = op(o, rev, &c2, r2, j, &c3, r3).and_then(|y| op(o, rev, &c1, r1, i + j - 1, &y, r2 + r3 - 1));
                let (Some(l), Some(r)) = (lhs, rhs) else { continue };
                t.checked += 1;
                if l != r && t.witness.is_none() {
                    t.witness = Some(format!("S1 = {s1}, S2 = {s2}, S3 = {s3}, i = {i}, j = {j}"));
                }
            }
        }
    });
    VariantReport {
        name: name.to_string(),
        passed: witness.is_none(),
        checked,
        witness,
    }
}

fn identity_two<O: Operad>(o: &O, elems: &[O::Basis], rb: usize, db: i64, rev: bool, signed: bool, name: &str) -> VariantReport {
    let (checked, witness) = run(o, elems, rb, db, |s1, s2, s3, t| {
        let (r1, r2, r3) = (o.rank(s1), o.rank(s2), o.rank(s3));
        let (c1, c2, c3) = (Chain::basis(s1.clone()), Chain::basis(s2.clone()), Chain::basis(s3.clone()));
        let s = signed && (o.degree(s1) * o.degree(s2)) % 2 != 0;
        for i in 1..=(r1 + r2 + r3) {
            for j in 1..i {
                let lhs = op(o, rev, &c2, r2, j, &c3, r3).and_then(|y| op(o, rev, &c1, r1, i + r2 - 1, &y, r2 + r3 - 1));
                let rhs = op(o, rev, &c1, r1, i, &c3, r3).and_then(|y| op(o, rev, &c2, r2, j, &y, r1 + r3 - 1));
                let (Some(l), Some(r)) = (lhs, rhs) else { continue };
                t.checked += 1;
                let r = if s { r.negated() } else { r };
                if l != r && t.witness.is_none() {
                    t.witness = Some(format!("S1 = {s1}, S2 = {s2}, S3 = {s3}, i = {i}, j = {j}"));
                }
            }
        }
    });
    VariantReport {
        name: name.to_string(),
        passed: witness.is_none(),
        checked,
        witness,
    }
}

/// `∂(S₁∘ᵢS₂) = ∂S₁∘ᵢS₂ + (−1)^{|S₁|} S₁∘ᵢ∂S₂` on all basis pairs within bounds.
pub fn check_leibniz<O: Operad>(o: &O, rank_bound: usize, degree_bound: i64) -> VariantReport {
    let elems = elements(o, rank_bound, degree_bound);
    let results: Vec<(usize, Option<String>)> = elems
        .par_iter()
        .map(|a| {
            let mut checked = 0;
            let mut witness = None;
            for b in &elems {
                if o.rank(a) + o.rank(b) > rank_bound + 1 || o.degree(a).abs() + o.degree(b).abs() > degree_bound {
                    continue;
                }
                let (ca, cb) = (Chain::basis(a.clone()), Chain::basis(b.clone()));
                for i in 1..=o.rank(b) {
                    checked += 1;
                    let lhs = o.differential_chain(&o.compose(a, i, b));
                    let mut rhs = o.compose_chains(&o.differential(a), i, &cb);
                    rhs.add_scaled(&o.compose_chains(&ca, i, &o.differential(b)), &sign(o.degree(a) % 2 != 0));
                    if lhs != rhs && witness.is_none() {
                        witness = Some(format!("S1 = {a}, S2 = {b}, i = {i}"));
                    }
                }
            }
            (checked, witness)
        })
        .collect();
    let checked = results.iter().map(|r| r.0).sum();
    let witness = results.into_iter().find_map(|r| r.1);
    VariantReport {
        name: "Leibniz".into(),
        passed: witness.is_none(),
        checked,
        witness,
    }
}

fn check_unit<O: Operad>(o: &O, elems: &[O::Basis]) -> VariantReport {
    let Some(u) = o.unit() else {
        return VariantReport {
            name: "unit".into(),
            passed: true,
            checked: 0,
            witness: None,
        };
    };
    let mut checked = 0;
    let mut witness = None;
    for x in elems {
        let cx = Chain::basis(x.clone());
        for i in 1..=o.rank(x) {
            checked += 1;
            if o.compose_chains(&u, i, &cx) != cx && witness.is_none() {
                witness = Some(format!("unit ∘{i} {x}"));
            }
        }
        checked += 1;
        if o.compose_chains(&cx, 1, &u) != cx && witness.is_none() {
            witness = Some(format!("{x} ∘1 unit"));
        }
    }
    VariantReport {
        name: "unit".into(),
        passed: witness.is_none(),
        checked,
        witness,
    }
}

/// Exhaustively evaluate both composition identities in each orientation.
pub fn check_operad_identities<O: Operad>(o: &O, rank_bound: usize, degree_bound: i64) -> IdentityReport {
    let e = elements(o, rank_bound, degree_bound);
    let (rb, db) = (rank_bound, degree_bound);
    IdentityReport {
        operad: o.name(),
        variants: vec![
            identity_one(o, &e, rb, db, false, ID1),
            identity_two(o, &e, rb, db, false, false, ID2),
            identity_two(o, &e, rb, db, false, true, ID2_SIGNED),
            identity_one(o, &e, rb, db, true, ID1_REV),
            identity_two(o, &e, rb, db, true, false, ID2_REV),
            identity_two(o, &e, rb, db, true, true, ID2_REV_SIGNED),
        ],
        leibniz: check_leibniz(o, rank_bound, degree_bound),
        unit: check_unit(o, &e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operads::trivial_operad;

    #[test]
    fn trivial_passes_everything() {
        let r = check_operad_identities(&trivial_operad(4), 4, 0);
        for v in &r.variants {
            assert!(v.checked > 0, "{}", v.name);
        }
        assert!(r.variant(ID1).unwrap().passed);
        assert!(r.variant(ID2).unwrap().passed);
        assert!(r.leibniz.passed && r.unit.passed);
    }
}

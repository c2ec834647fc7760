//! Type D structures over the torus algebra.
//!
//! A module is a directed graph whose nodes carry an idempotent and whose
//! arrows carry an algebra element. Arrows form a set: adding an existing
//! arrow removes it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, Idempotent};
use crate::error::{Error, Result};
use crate::iso::{find_isomorphism, LabeledGraph};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DArrow {
    pub from: String,
    pub to: String,
    pub label: AlgebraElement,
}

impl DArrow {
    pub fn new(from: impl Into<String>, to: impl Into<String>, label: AlgebraElement) -> Self {
        DArrow {
            from: from.into(),
            to: to.into(),
            label,
        }
    }
}

/// Which half of a module built from a knot complex a generator lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    V0,
    V1,
}

/// Column metadata attached by the knot-complex constructions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColumnTag {
    pub part: Part,
    /// Twice the column index, so half-integer columns stay integral.
    pub column2: i64,
    /// Generator of the knot complex this copy comes from; absent in the F₂ columns.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbol: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypeDModule {
    generators: BTreeMap<String, Idempotent>,
    arrows: BTreeSet<DArrow>,
    tags: BTreeMap<String, ColumnTag>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DViolationKind {
    UnknownEndpoint,
    ZeroLabel,
    IdempotentMismatch,
    DSquared,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DViolation {
    pub kind: DViolationKind,
    pub detail: String,
}

impl fmt::Display for DViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            DViolationKind::UnknownEndpoint => "unknown endpoint",
            DViolationKind::ZeroLabel => "zero label",
            DViolationKind::IdempotentMismatch => "idempotent mismatch",
            DViolationKind::DSquared => "d^2 != 0",
        };
        write!(f, "{kind}: {}", self.detail)
    }
}

/// Cancelled pairs, in order.
pub type ReductionTrace = Vec<(String, String)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionOrder {
    /// Smallest `(from, to)` first.
    Lexicographic,
    Seeded(u64),
    /// Exactly these cancellations, in order.
    Script(Vec<(String, String)>),
}

impl TypeDModule {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_generator(&mut self, name: impl Into<String>, idem: Idempotent) -> Result<()> {
        let name = name.into();
        if self.generators.contains_key(&name) {
            return Err(Error::DuplicateGenerator(name));
        }
        self.generators.insert(name, idem);
        Ok(())
    }

    pub fn toggle_arrow(&mut self, from: impl Into<String>, to: impl Into<String>, label: AlgebraElement) {
        let a = DArrow::new(from, to, label);
        if !self.arrows.remove(&a) {
            self.arrows.insert(a);
        }
    }

    pub fn set_tag(&mut self, name: impl Into<String>, tag: ColumnTag) {
        self.tags.insert(name.into(), tag);
    }

    pub fn tag(&self, name: &str) -> Option<&ColumnTag> {
        self.tags.get(name)
    }

    pub fn tags(&self) -> &BTreeMap<String, ColumnTag> {
        &self.tags
    }

    pub fn generators(&self) -> &BTreeMap<String, Idempotent> {
        &self.generators
    }

    pub fn idem(&self, name: &str) -> Option<Idempotent> {
        self.generators.get(name).copied()
    }

    pub fn arrows(&self) -> impl Iterator<Item = &DArrow> {
        self.arrows.iter()
    }

    pub fn has_arrow(&self, from: &str, to: &str, label: AlgebraElement) -> bool {
        self.arrows.contains(&DArrow::new(from, to, label))
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn count_idem(&self, idem: Idempotent) -> usize {
        self.generators.values().filter(|i| **i == idem).count()
    }

    /// Number of arrows carrying each label.
    pub fn label_counts(&self) -> BTreeMap<AlgebraElement, usize> {
        let mut m = BTreeMap::new();
        for a in &self.arrows {
            *m.entry(a.label).or_insert(0) += 1;
        }
        m
    }

    /// Renames generators (tags follow); names missing from `f` are kept.
    pub fn rename(&self, f: impl Fn(&str) -> String) -> Result<TypeDModule> {
        let mut out = TypeDModule::new();
        for (n, i) in &self.generators {
            out.add_generator(f(n), *i)?;
        }
        for a in &self.arrows {
            out.toggle_arrow(f(&a.from), f(&a.to), a.label);
        }
        for (n, t) in &self.tags {
            out.tags.insert(f(n), t.clone());
        }
        Ok(out)
    }

    pub fn validate(&self) -> Vec<DViolation> {
        let mut out = Vec::new();
        for a in &self.arrows {
            let (Some(fi), Some(ti)) = (self.idem(&a.from), self.idem(&a.to)) else {
                out.push(DViolation {
                    kind: DViolationKind::UnknownEndpoint,
                    detail: format!("{} -> {}", a.from, a.to),
                });
                continue;
            };
            if a.label.is_zero() {
                out.push(DViolation {
                    kind: DViolationKind::ZeroLabel,
                    detail: format!("{} -> {}", a.from, a.to),
                });
                continue;
            }
            let (l, r) = (a.label.left_idem().expect("nonzero"), a.label.right_idem().expect("nonzero"));
            if l != fi || r != ti {
                out.push(DViolation {
                    kind: DViolationKind::IdempotentMismatch,
                    detail: format!("{} ({fi}) -> {} ({ti}) labeled {}", a.from, a.to, a.label),
                });
            }
        }
        if !out.is_empty() {
            return out;
        }
        let outgoing = self.out_map();
        let mut counts: BTreeMap<(&str, &str, AlgebraElement), usize> = BTreeMap::new();
        for a in &self.arrows {
            for b in outgoing.get(a.to.as_str()).into_iter().flatten() {
                let c = a.label.multiply(b.label);
                if !c.is_zero() {
                    *counts.entry((a.from.as_str(), b.to.as_str(), c)).or_default() += 1;
                }
            }
        }
        for ((x, z, c), n) in counts {
            if n % 2 == 1 {
                out.push(DViolation {
                    kind: DViolationKind::DSquared,
                    detail: format!("{n} paths {x} -> {z} composing to {c}"),
                });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    fn out_map(&self) -> BTreeMap<&str, Vec<&DArrow>> {
        let mut m: BTreeMap<&str, Vec<&DArrow>> = BTreeMap::new();
        for a in &self.arrows {
            m.entry(a.from.as_str()).or_default().push(a);
        }
        m
    }

    pub fn is_reduced(&self) -> bool {
        !self.arrows.iter().any(|a| a.label.is_idempotent())
    }

    fn cancellable(&self, from: &str, to: &str) -> Result<()> {
        let err = |reason: &str| Error::NotCancellable {
            from: from.to_string(),
            to: to.to_string(),
            reason: reason.to_string(),
        };
        if from == to {
            return Err(err("self-loop"));
        }
        let idem = self.idem(from).ok_or_else(|| err("unknown generator"))?;
        if !self.has_arrow(from, to, AlgebraElement::Idem(idem)) {
            return Err(err("no idempotent-labeled arrow"));
        }
        Ok(())
    }

    /// Cancels the idempotent arrow `x -> y`, splicing every zig-zag
    /// `a -> y <- x -> y <- ... <- x -> b` into a single arrow `a -> b`.
    pub fn cancel(&self, x: &str, y: &str) -> Result<TypeDModule> {
        self.cancellable(x, y)?;
        let mut out = self.clone();
        let killed = DArrow::new(x, y, AlgebraElement::Idem(self.generators[x]));
        let keep = |n: &str| n != x && n != y;
        let x_to_y: Vec<AlgebraElement> = self
            .arrows
            .iter()
            .filter(|a| a.from == x && a.to == y && **a != killed)
            .map(|a| a.label)
            .collect();
        let x_out: Vec<&DArrow> = self.arrows.iter().filter(|a| a.from == x && keep(&a.to)).collect();
        for a in self.arrows.iter().filter(|a| a.to == y && keep(&a.from)) {
            // Products of the zig-zags reaching x, with multiplicity.
            let mut frontier = vec![a.label];
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for p in &frontier {
                    for b in &x_out {
                        let c = p.multiply(b.label);
                        if !c.is_zero() {
                            out.toggle_arrow(a.from.clone(), b.to.clone(), c);
                        }
                    }
                    for l in &x_to_y {
                        let c = p.multiply(*l);
                        if !c.is_zero() {
                            next.push(c);
                        }
                    }
                }
                frontier = next;
            }
        }
        out.arrows.retain(|a| keep(&a.from) && keep(&a.to));
        out.generators.remove(x);
        out.generators.remove(y);
        out.tags.remove(x);
        out.tags.remove(y);
        Ok(out)
    }

    fn idempotent_arrows(&self) -> Vec<(String, String)> {
        self.arrows
            .iter()
            .filter(|a| a.label.is_idempotent() && a.from != a.to)
            .map(|a| (a.from.clone(), a.to.clone()))
            .collect()
    }

    pub fn reduce(&self, order: &ReductionOrder) -> Result<(TypeDModule, ReductionTrace)> {
        let mut m = self.clone();
        let mut trace = Vec::new();
        match order {
            ReductionOrder::Script(steps) => {
                for (x, y) in steps {
                    m = m.cancel(x, y)?;
                    trace.push((x.clone(), y.clone()));
                }
            }
            ReductionOrder::Lexicographic | ReductionOrder::Seeded(_) => {
                let mut rng = match order {
                    ReductionOrder::Seeded(s) => Some(ChaCha8Rng::seed_from_u64(*s)),
                    _ => None,
                };
                loop {
                    let eligible = m.idempotent_arrows();
                    let pick = match rng.as_mut() {
                        Some(rng) => eligible.choose(rng).cloned(),
                        None => eligible.first().cloned(),
                    };
                    let Some((x, y)) = pick else { break };
                    m = m.cancel(&x, &y)?;
                    trace.push((x, y));
                }
            }
        }
        Ok((m, trace))
    }

    /// Lexicographic reduction without the trace.
    pub fn reduced(&self) -> TypeDModule {
        self.reduce(&ReductionOrder::Lexicographic)
            .expect("unscripted reduction cannot fail")
            .0
    }

    /// Replaces generator `y` by `y + c·z`, where `c` is a chord or the
    /// common idempotent of `y` and `z`. The result is isomorphic to `self`.
    pub fn base_change(&self, y: &str, z: &str, c: AlgebraElement) -> Result<TypeDModule> {
        let (iy, iz) = match (self.idem(y), self.idem(z)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::UnknownGenerator(if self.idem(y).is_none() { y } else { z }.to_string())),
        };
        if y == z || c.is_zero() || c.left_idem()? != iy || c.right_idem()? != iz {
            return Err(Error::IdempotentMismatch(format!("{c} from `{y}` to `{z}`")));
        }
        let mut out = self.clone();
        for a in self.arrows.iter().filter(|a| a.from == z) {
            let p = c.multiply(a.label);
            if !p.is_zero() {
                out.toggle_arrow(y, a.to.clone(), p);
            }
        }
        let into_y: Vec<DArrow> = out.arrows.iter().filter(|a| a.to == y).cloned().collect();
        for a in into_y {
            let p = a.label.multiply(c);
            if !p.is_zero() {
                out.toggle_arrow(a.from, z, p);
            }
        }
        Ok(out)
    }

    /// Applies elementary base changes `y -> y + c·z` while each one strictly
    /// lowers the number of arrows, scanning in name order.
    pub fn minimize_arrows(&self) -> TypeDModule {
        let mut m = self.clone();
        let names: Vec<String> = m.generators.keys().cloned().collect();
        loop {
            let mut improved = false;
            for y in &names {
                for z in &names {
                    if y == z {
                        continue;
                    }
                    for c in AlgebraElement::CHORDS {
                        if c.left_idem().ok() != Some(m.generators[y]) || c.right_idem().ok() != Some(m.generators[z]) {
                            continue;
                        }
                        let next = m.base_change(y, z, c).expect("checked idempotents");
                        if next.arrows.len() < m.arrows.len() {
                            m = next;
                            improved = true;
                        }
                    }
                }
            }
            if !improved {
                return m;
            }
        }
    }

    fn labeled_graph(&self) -> (Vec<&String>, LabeledGraph<Idempotent, AlgebraElement>) {
        let names: Vec<&String> = self.generators.keys().collect();
        let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let graph = LabeledGraph {
            nodes: self.generators.values().copied().collect(),
            edges: self
                .arrows
                .iter()
                .map(|a| (index[a.from.as_str()], index[a.to.as_str()], a.label))
                .collect(),
        };
        (names, graph)
    }

    /// An idempotent-preserving bijection of generators carrying the arrows
    /// of `self` exactly onto those of `other`.
    pub fn isomorphism(&self, other: &TypeDModule) -> Option<BTreeMap<String, String>> {
        let (na, ga) = self.labeled_graph();
        let (nb, gb) = other.labeled_graph();
        let f = find_isomorphism(&ga, &gb)?;
        Some(
            f.into_iter()
                .enumerate()
                .map(|(i, j)| (na[i].clone(), nb[j].clone()))
                .collect(),
        )
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph {\n");
        for (n, i) in &self.generators {
            writeln!(s, "  \"{}\" [label=\"{} ({i})\"];", escape(n), escape(n)).unwrap();
        }
        for a in &self.arrows {
            writeln!(s, "  \"{}\" -> \"{}\" [label=\"{}\"];", escape(&a.from), escape(&a.to), a.label).unwrap();
        }
        s.push_str("}\n");
        s
    }
}

pub(crate) fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// A chain of `len` ι₁ generators `s0 -> s1 -> ...` joined by ρ₂₃ arrows.
pub fn rho23_string(len: usize, prefix: &str) -> TypeDModule {
    let mut m = TypeDModule::new();
    for i in 0..len {
        m.add_generator(format!("{prefix}{i}"), Idempotent::Iota1)
            .expect("fresh names");
        if i > 0 {
            m.toggle_arrow(format!("{prefix}{}", i - 1), format!("{prefix}{i}"), AlgebraElement::Rho23);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use AlgebraElement::*;
    use Idempotent::*;

    const IOTA0: AlgebraElement = AlgebraElement::IOTA0;
    const IOTA1: AlgebraElement = AlgebraElement::IOTA1;

    fn module(gens: &[(&str, Idempotent)], arrows: &[(&str, &str, AlgebraElement)]) -> TypeDModule {
        let mut m = TypeDModule::new();
        for (n, i) in gens {
            m.add_generator(*n, *i).unwrap();
        }
        for (f, t, l) in arrows {
            m.toggle_arrow(*f, *t, *l);
        }
        m
    }

    #[test]
    fn idempotent_mismatch_is_reported() {
        let m = module(&[("x", Iota0), ("y", Iota0)], &[("x", "y", Rho2)]);
        let v = m.validate();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, DViolationKind::IdempotentMismatch);
    }

    #[test]
    fn d_squared_is_reported() {
        let m = module(&[("x", Iota0), ("y", Iota1), ("z", Iota0)], &[("x", "y", Rho1), ("y", "z", Rho2)]);
        assert_eq!(m.validate()[0].kind, DViolationKind::DSquared);
        let ok = module(&[("x", Iota0), ("y", Iota1), ("z", Iota1)], &[("x", "y", Rho1), ("x", "z", Rho3)]);
        assert!(ok.is_valid());
    }

    #[test]
    fn cancel_two_generators() {
        let m = module(&[("x", Iota1), ("y", Iota1)], &[("x", "y", IOTA1)]);
        assert!(m.cancel("x", "y").unwrap().is_empty());
        assert!(matches!(m.cancel("y", "x"), Err(Error::NotCancellable { .. })));
    }

    #[test]
    fn cancel_splices_product() {
        let m = module(
            &[("a", Iota0), ("y", Iota1), ("x", Iota1), ("b", Iota1)],
            &[("a", "y", Rho1), ("x", "y", IOTA1), ("x", "b", Rho23)],
        );
        assert!(m.is_valid());
        let c = m.cancel("x", "y").unwrap();
        assert!(c.is_valid());
        let arrows: Vec<DArrow> = c.arrows().cloned().collect();
        assert_eq!(arrows, vec![DArrow::new("a", "b", Rho123)]);
    }

    #[test]
    fn zigzag_through_a_second_arrow() {
        let m = module(
            &[("a", Iota0), ("y", Iota1), ("x", Iota1), ("b", Iota0)],
            &[("a", "y", Rho1), ("x", "y", IOTA1), ("x", "y", Rho23), ("x", "b", Rho2)],
        );
        let c = m.cancel("x", "y").unwrap();
        // The longer zig-zag through x -> y (rho23) composes to zero.
        assert_eq!(c.arrows().cloned().collect::<Vec<_>>(), vec![DArrow::new("a", "b", Rho12)]);
    }

    #[test]
    fn reduce_reports_trace() {
        let m = module(&[("x", Iota0), ("y", Iota0), ("z", Iota1)], &[("x", "y", IOTA0), ("y", "z", Rho1)]);
        let (r, trace) = m.reduce(&ReductionOrder::Lexicographic).unwrap();
        assert_eq!(trace, vec![("x".to_string(), "y".to_string())]);
        assert_eq!(r.len(), 1);
        let (same, empty) = r.reduce(&ReductionOrder::Seeded(3)).unwrap();
        assert_eq!(same, r);
        assert!(empty.is_empty());
    }

    #[test]
    fn isomorphism_of_strings() {
        let a = rho23_string(3, "s");
        assert!(a.isomorphism(&a).is_some());
        let b = a.rename(|n| format!("t{}", 2 - n[1..].parse::<i32>().unwrap())).unwrap();
        let f = a.isomorphism(&b).unwrap();
        assert_eq!(f["s0"], "t2");
        let reversed = module(
            &[("a", Iota1), ("b", Iota1), ("c", Iota1)],
            &[("b", "a", Rho23), ("b", "c", Rho23)],
        );
        assert!(a.isomorphism(&reversed).is_none());
    }

    #[test]
    fn dot_output() {
        assert_eq!(TypeDModule::new().to_dot(), "digraph {\n}\n");
        let m = module(&[("x", Iota1), ("y", Iota0)], &[("x", "y", Rho2)]);
        let dot = m.to_dot();
        assert_eq!(dot.matches("->").count(), 1);
        assert!(dot.contains("label=\"rho2\""));
    }

    #[test]
    fn base_change_removes_factored_arrow() {
        let m = module(
            &[("x", Iota0), ("p", Iota1), ("q", Iota1)],
            &[("x", "p", Rho1), ("x", "q", Rho123)],
        );
        let n = m.base_change("p", "q", Rho23).unwrap();
        assert_eq!(n.arrow_count(), 1);
        assert!(n.has_arrow("x", "p", Rho1));
        assert_eq!(m.minimize_arrows(), n);
        assert!(m.base_change("p", "q", Rho1).is_err());
    }

    #[test]
    fn idempotent_base_change() {
        let m = module(
            &[("x", Iota0), ("y", Iota0), ("p", Iota1)],
            &[("x", "p", Rho3), ("p", "y", Rho2)],
        );
        let n = m.base_change("y", "x", IOTA0).unwrap();
        assert!(n.is_valid());
        assert_eq!(n.arrow_count(), 4);
        assert!(n.has_arrow("y", "p", Rho3));
        assert!(n.has_arrow("p", "x", Rho2));
        assert_eq!(n.base_change("y", "x", IOTA0).unwrap(), m);
        assert!(m.base_change("y", "p", IOTA0).is_err());
    }
}

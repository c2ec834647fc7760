//! Knot Floer complexes CFK⁻ as finite U-weighted, bigraded complexes over F₂.
//!
//! A complex is stored as a set of generators, each with an Alexander level
//! `A` and a Maslov grading `M`, and a set of arrows `x -> U^r y`. The ring
//! F₂[U] is never materialized: every algorithm here only reads the U-power
//! `r` and the Alexander drop `s = A(x) - A(y)` of an arrow. For an arrow,
//! `n_w = r` and `n_z = r + s`.
//!
//! An arrow is *vertical* when `n_w = 0` and *horizontal* when `n_z = 0`.
//! Vertical arrows make up `∂_z`, horizontal arrows make up `∂_w`.
//!
//! τ is read off as the Alexander level of the generator that survives in
//! vertical homology, i.e. `τ = +A(ξ_v)`. With this convention the
//! right-handed trefoil has τ = 1.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnotGenerator {
    pub name: String,
    pub alexander: i64,
    pub maslov: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnotArrow {
    pub from: String,
    pub to: String,
    pub u_power: u32,
}

impl KnotArrow {
    pub fn new(from: impl Into<String>, to: impl Into<String>, u_power: u32) -> Self {
        KnotArrow {
            from: from.into(),
            to: to.into(),
            u_power,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KnotComplex {
    generators: BTreeMap<String, KnotGenerator>,
    arrows: BTreeSet<KnotArrow>,
    shift: Option<(i64, i64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationKind {
    UnknownEndpoint,
    NegativeNz,
    MaslovDrop,
    DSquared,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ViolationKind::UnknownEndpoint => "unknown endpoint",
            ViolationKind::NegativeNz => "negative n_z",
            ViolationKind::MaslovDrop => "maslov drop",
            ViolationKind::DSquared => "d^2 != 0",
        };
        write!(f, "{kind}: {}", self.detail)
    }
}

/// Which differential a subquotient keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Differential {
    /// Horizontal arrows (`n_z = 0`).
    W,
    /// Vertical arrows (`n_w = 0`).
    Z,
}

/// Alexander range of a subquotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlexanderRange {
    At(i64),
    AtMost(i64),
    AtLeast(i64),
}

impl AlexanderRange {
    pub fn contains(self, a: i64) -> bool {
        match self {
            AlexanderRange::At(s) => a == s,
            AlexanderRange::AtMost(s) => a <= s,
            AlexanderRange::AtLeast(s) => a >= s,
        }
    }
}

/// Order in which eligible arrows are cancelled by [`KnotComplex::reduce_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CancelOrder {
    Lexicographic,
    Seeded(u64),
}

impl KnotComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_generator(&mut self, name: impl Into<String>, alexander: i64, maslov: i64) -> Result<()> {
        let name = name.into();
        if self.generators.contains_key(&name) {
            return Err(Error::DuplicateGenerator(name));
        }
        self.generators.insert(
            name.clone(),
            KnotGenerator {
                name,
                alexander,
                maslov,
            },
        );
        Ok(())
    }

    /// Adds the arrow mod 2: adding an existing arrow removes it.
    pub fn toggle_arrow(&mut self, from: impl Into<String>, to: impl Into<String>, u_power: u32) {
        let arrow = KnotArrow::new(from, to, u_power);
        if !self.arrows.remove(&arrow) {
            self.arrows.insert(arrow);
        }
    }

    pub fn generators(&self) -> impl Iterator<Item = &KnotGenerator> {
        self.generators.values()
    }

    pub fn generator(&self, name: &str) -> Option<&KnotGenerator> {
        self.generators.get(name)
    }

    pub fn arrows(&self) -> impl Iterator<Item = &KnotArrow> {
        self.arrows.iter()
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

    pub fn shift(&self) -> Option<(i64, i64)> {
        self.shift
    }

    pub fn set_shift(&mut self, shift: Option<(i64, i64)>) {
        self.shift = shift;
    }

    pub fn alexander(&self, name: &str) -> i64 {
        self.generators[name].alexander
    }

    /// `A(from) - A(to)`.
    pub fn alexander_drop(&self, arrow: &KnotArrow) -> i64 {
        self.alexander(&arrow.from) - self.alexander(&arrow.to)
    }

    pub fn n_z(&self, arrow: &KnotArrow) -> i64 {
        arrow.u_power as i64 + self.alexander_drop(arrow)
    }

    pub fn is_vertical(&self, arrow: &KnotArrow) -> bool {
        arrow.u_power == 0
    }

    pub fn is_horizontal(&self, arrow: &KnotArrow) -> bool {
        self.n_z(arrow) == 0
    }

    /// Length of a vertical arrow (its Alexander drop) or of a horizontal one (its U-power).
    pub fn vertical_arrows(&self) -> impl Iterator<Item = &KnotArrow> {
        self.arrows.iter().filter(|a| self.is_vertical(a))
    }

    pub fn horizontal_arrows(&self) -> impl Iterator<Item = &KnotArrow> {
        self.arrows.iter().filter(|a| self.is_horizontal(a))
    }

    pub fn max_alexander(&self) -> Option<i64> {
        self.generators.values().map(|g| g.alexander).max()
    }

    pub fn min_alexander(&self) -> Option<i64> {
        self.generators.values().map(|g| g.alexander).min()
    }

    /// `max(max A, -min A)`, zero for the empty complex.
    pub fn alexander_span(&self) -> i64 {
        let hi = self.max_alexander().unwrap_or(0);
        let lo = self.min_alexander().unwrap_or(0);
        hi.max(-lo).max(0)
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut known = true;
        for a in &self.arrows {
            for end in [&a.from, &a.to] {
                if !self.generators.contains_key(end) {
                    known = false;
                    out.push(Violation {
                        kind: ViolationKind::UnknownEndpoint,
                        detail: format!("{} -> {}: `{end}`", a.from, a.to),
                    });
                }
            }
        }
        if !known {
            return out;
        }
        for a in &self.arrows {
            if self.n_z(a) < 0 {
                out.push(Violation {
                    kind: ViolationKind::NegativeNz,
                    detail: format!("{} -> U^{} {}", a.from, a.u_power, a.to),
                });
            }
            let m_from = self.generators[&a.from].maslov;
            let m_to = self.generators[&a.to].maslov - 2 * a.u_power as i64;
            if m_from - m_to != 1 {
                out.push(Violation {
                    kind: ViolationKind::MaslovDrop,
                    detail: format!(
                        "{} -> U^{} {} drops Maslov grading by {}",
                        a.from,
                        a.u_power,
                        a.to,
                        m_from - m_to
                    ),
                });
            }
        }
        let out_arrows = self.out_map();
        let mut counts: BTreeMap<(&str, &str, u32), usize> = BTreeMap::new();
        for a in &self.arrows {
            for b in out_arrows.get(a.to.as_str()).into_iter().flatten() {
                *counts
                    .entry((a.from.as_str(), b.to.as_str(), a.u_power + b.u_power))
                    .or_default() += 1;
            }
        }
        for ((x, z, r), c) in counts {
            if c % 2 == 1 {
                out.push(Violation {
                    kind: ViolationKind::DSquared,
                    detail: format!("{c} paths {x} -> U^{r} {z}"),
                });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    fn ensure_valid(&self) -> Result<()> {
        match self.validate().first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidComplex(v.to_string())),
        }
    }

    fn out_map(&self) -> BTreeMap<&str, Vec<&KnotArrow>> {
        let mut m: BTreeMap<&str, Vec<&KnotArrow>> = BTreeMap::new();
        for a in &self.arrows {
            m.entry(a.from.as_str()).or_default().push(a);
        }
        m
    }

    /// The flipped complex: `A ↦ -A`, `M ↦ M - 2A`, and `x -> U^r y` becomes
    /// `x -> U^(r+s) y` with `s = A(x) - A(y)`.
    pub fn flip(&self) -> Result<KnotComplex> {
        self.ensure_valid()?;
        Ok(self.flip_unchecked())
    }

    fn flip_unchecked(&self) -> KnotComplex {
        let generators = self
            .generators
            .values()
            .map(|g| {
                (
                    g.name.clone(),
                    KnotGenerator {
                        name: g.name.clone(),
                        alexander: -g.alexander,
                        maslov: g.maslov - 2 * g.alexander,
                    },
                )
            })
            .collect();
        let arrows = self
            .arrows
            .iter()
            .map(|a| KnotArrow::new(a.from.clone(), a.to.clone(), self.n_z(a) as u32))
            .collect();
        KnotComplex {
            generators,
            arrows,
            shift: self.shift.map(|(da, dm)| (-da, dm - 2 * da)),
        }
    }

    fn is_reducible_arrow(&self, a: &KnotArrow) -> bool {
        a.u_power == 0 && self.alexander_drop(a) == 0
    }

    pub fn is_reduced(&self) -> bool {
        !self.arrows.iter().any(|a| self.is_reducible_arrow(a))
    }

    fn ensure_reduced(&self) -> Result<()> {
        match self.arrows.iter().find(|a| self.is_reducible_arrow(a)) {
            None => Ok(()),
            Some(a) => Err(Error::NotReduced {
                from: a.from.clone(),
                to: a.to.clone(),
            }),
        }
    }

    /// Cancels every arrow that preserves both filtrations, smallest
    /// `(from, to)` first.
    pub fn reduce(&self) -> KnotComplex {
        self.reduce_with(CancelOrder::Lexicographic)
    }

    pub fn reduce_with(&self, order: CancelOrder) -> KnotComplex {
        let mut c = self.clone();
        let mut rng = match order {
            CancelOrder::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            CancelOrder::Lexicographic => None,
        };
        loop {
            let eligible: Vec<KnotArrow> = c
                .arrows
                .iter()
                .filter(|a| c.is_reducible_arrow(a) && a.from != a.to)
                .cloned()
                .collect();
            let pick = match rng.as_mut() {
                Some(rng) => eligible.choose(rng).cloned(),
                None => eligible.first().cloned(),
            };
            match pick {
                Some(a) => c.cancel_unchecked(&a.from, &a.to),
                None => return c,
            }
        }
    }

    fn cancel_unchecked(&mut self, x: &str, y: &str) {
        let into_y: Vec<KnotArrow> = self
            .arrows
            .iter()
            .filter(|a| a.to == y && a.from != x && a.from != y)
            .cloned()
            .collect();
        let out_of_x: Vec<KnotArrow> = self
            .arrows
            .iter()
            .filter(|a| a.from == x && a.to != y && a.to != x)
            .cloned()
            .collect();
        for a in &into_y {
            for b in &out_of_x {
                self.toggle_arrow(a.from.clone(), b.to.clone(), a.u_power + b.u_power);
            }
        }
        self.arrows
            .retain(|a| a.from != x && a.to != x && a.from != y && a.to != y);
        self.generators.remove(x);
        self.generators.remove(y);
    }

    /// Change of basis `target ↦ target + U^k source`; the new basis element
    /// keeps the name `target`.
    fn add_to_generator(&mut self, target: &str, source: &str, k: u32) {
        debug_assert_ne!(target, source);
        // Differential in the old basis, as sets of (generator, U-power).
        let mut diff: BTreeMap<String, BTreeSet<(String, u32)>> = self
            .generators
            .keys()
            .map(|g| (g.clone(), BTreeSet::new()))
            .collect();
        for a in &self.arrows {
            diff.get_mut(&a.from)
                .expect("endpoint")
                .insert((a.to.clone(), a.u_power));
        }
        let source_diff = diff[source].clone();
        let target_diff = diff.get_mut(target).expect("target");
        for (g, r) in source_diff {
            let term = (g, r + k);
            if !target_diff.remove(&term) {
                target_diff.insert(term);
            }
        }
        // Old `target` equals new `target` + U^k `source`.
        let mut arrows = BTreeSet::new();
        let mut toggle = |a: KnotArrow| {
            if !arrows.remove(&a) {
                arrows.insert(a);
            }
        };
        for (from, terms) in diff {
            for (to, r) in terms {
                if to == target {
                    toggle(KnotArrow::new(from.clone(), source, r + k));
                }
                toggle(KnotArrow::new(from.clone(), to, r));
            }
        }
        self.arrows = arrows;
    }

    fn is_simplified_by(&self, pred: impl Fn(&KnotArrow) -> bool) -> bool {
        let mut degree: BTreeMap<&str, usize> = BTreeMap::new();
        for a in self.arrows.iter().filter(|a| pred(a)) {
            if a.from == a.to {
                return false;
            }
            *degree.entry(a.from.as_str()).or_default() += 1;
            *degree.entry(a.to.as_str()).or_default() += 1;
        }
        degree.values().all(|d| *d <= 1)
    }

    /// Every generator meets at most one vertical arrow.
    pub fn is_vertically_simplified(&self) -> bool {
        self.is_simplified_by(|a| self.is_vertical(a))
    }

    /// Every generator meets at most one horizontal arrow.
    pub fn is_horizontally_simplified(&self) -> bool {
        self.is_simplified_by(|a| self.is_horizontal(a))
    }

    /// Filtered change of basis after which the vertical arrows pair up
    /// generators.
    pub fn vertical_simplify(&self) -> Result<KnotComplex> {
        self.ensure_valid()?;
        self.ensure_reduced()?;
        let mut c = self.clone();
        let mut paired: BTreeSet<String> = BTreeSet::new();
        loop {
            // Shortest vertical arrow between unpaired generators.
            let next = c
                .arrows
                .iter()
                .filter(|a| {
                    c.is_vertical(a) && !paired.contains(&a.from) && !paired.contains(&a.to)
                })
                .min_by_key(|a| (c.alexander_drop(a), a.from.clone(), a.to.clone()))
                .cloned();
            let Some(arrow) = next else { break };
            let (x, y) = (arrow.from, arrow.to);
            let others_into_y: Vec<String> = c
                .arrows
                .iter()
                .filter(|a| c.is_vertical(a) && a.to == y && a.from != x)
                .map(|a| a.from.clone())
                .collect();
            for z in others_into_y {
                c.add_to_generator(&z, &x, 0);
            }
            let others_out_of_x: Vec<String> = c
                .arrows
                .iter()
                .filter(|a| c.is_vertical(a) && a.from == x && a.to != y)
                .map(|a| a.to.clone())
                .collect();
            for w in others_out_of_x {
                c.add_to_generator(&y, &w, 0);
            }
            paired.insert(x);
            paired.insert(y);
        }
        debug_assert!(c.is_vertically_simplified());
        Ok(c)
    }

    pub fn horizontal_simplify(&self) -> Result<KnotComplex> {
        self.ensure_valid()?;
        self.ensure_reduced()?;
        Ok(self.flip_unchecked().vertical_simplify()?.flip_unchecked())
    }

    /// Alternates vertical and horizontal passes until both properties hold;
    /// `None` if that does not happen within `max_passes` passes.
    pub fn simultaneous_simplify(&self, max_passes: usize) -> Result<Option<KnotComplex>> {
        self.ensure_valid()?;
        self.ensure_reduced()?;
        let mut c = self.clone();
        for pass in 0..max_passes {
            if c.is_vertically_simplified() && c.is_horizontally_simplified() {
                return Ok(Some(c));
            }
            c = if pass % 2 == 0 {
                c.vertical_simplify()?
            } else {
                c.horizontal_simplify()?
            };
        }
        if c.is_vertically_simplified() && c.is_horizontally_simplified() {
            Ok(Some(c))
        } else {
            Ok(None)
        }
    }

    /// Generators with no vertical (resp. horizontal) arrow, in a simplified basis.
    fn isolated_by(&self, pred: impl Fn(&KnotArrow) -> bool) -> Vec<String> {
        let touched: BTreeSet<&str> = self
            .arrows
            .iter()
            .filter(|a| pred(a))
            .flat_map(|a| [a.from.as_str(), a.to.as_str()])
            .collect();
        self.generators
            .keys()
            .filter(|g| !touched.contains(g.as_str()))
            .cloned()
            .collect()
    }

    /// In a vertically simplified complex, the generator ξ_v with no vertical arrows.
    pub fn vertical_survivor(&self) -> Result<String> {
        let iso = self.isolated_by(|a| self.is_vertical(a));
        match iso.as_slice() {
            [one] => Ok(one.clone()),
            _ => Err(Error::NotKnotComplex(format!(
                "vertical homology has rank {}",
                iso.len()
            ))),
        }
    }

    /// In a horizontally simplified complex, the generator ξ_h with no horizontal arrows.
    pub fn horizontal_survivor(&self) -> Result<String> {
        let iso = self.isolated_by(|a| self.is_horizontal(a));
        match iso.as_slice() {
            [one] => Ok(one.clone()),
            _ => Err(Error::NotKnotComplex(format!(
                "horizontal homology has rank {}",
                iso.len()
            ))),
        }
    }

    pub fn tau(&self) -> Result<i64> {
        let v = self.vertical_simplify()?;
        let survivor = v.vertical_survivor()?;
        Ok(v.alexander(&survivor))
    }

    pub fn subquotient(&self, range: AlexanderRange, diff: Differential) -> KnotComplex {
        let generators: BTreeMap<String, KnotGenerator> = self
            .generators
            .iter()
            .filter(|(_, g)| range.contains(g.alexander))
            .map(|(k, g)| (k.clone(), g.clone()))
            .collect();
        let arrows = self
            .arrows
            .iter()
            .filter(|a| generators.contains_key(&a.from) && generators.contains_key(&a.to))
            .filter(|a| match diff {
                Differential::W => self.is_horizontal(a),
                Differential::Z => self.is_vertical(a),
            })
            .cloned()
            .collect();
        KnotComplex {
            generators,
            arrows,
            shift: None,
        }
    }

    /// Homology of the complex with U-powers forgotten, i.e. as a complex
    /// over F₂ on the generator names (sorted). Meant for `∂_w` and `∂_z`
    /// subquotients.
    pub fn f2_homology(&self) -> (Vec<String>, f2::Homology) {
        let names: Vec<String> = self.generators.keys().cloned().collect();
        let index: BTreeMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let edges: Vec<(usize, usize)> = self
            .arrows
            .iter()
            .map(|a| (index[a.from.as_str()], index[a.to.as_str()]))
            .collect();
        let h = f2::homology(names.len(), &edges);
        (names, h)
    }
}

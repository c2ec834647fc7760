//! From knot Floer complexes to type D structures of knot complements.
//!
//! Two constructions are provided. [`ktd_basis`] reads the module off a
//! simultaneously vertically and horizontally simplified basis, for any
//! integral framing `n`. [`ktd_basefree`] works for any reduced complex and
//! produces the module for framing `-n` with `n` large; its generators live in
//! columns `V⁰_s` (one per Alexander level) and `V¹_s`, and every generator
//! carries a [`ColumnTag`].
//!
//! Column indices of `V¹` lie in `ℤ + (n+1)/2` and are stored doubled.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{AlgebraElement, Idempotent};
use crate::cfk::{KnotArrow, KnotComplex};
use crate::error::{Error, Result};
use crate::f2;
use crate::morphism::{self, Morphism};
use crate::type_d::{ColumnTag, Part, ReductionOrder, TypeDModule};
use crate::type_da::{box_da_d, elliptic, tau_mu};

use AlgebraElement::*;
use Idempotent::{Iota0, Iota1};

/// Smallest framing parameter the base-free construction accepts.
pub fn min_basefree_framing(c: &KnotComplex) -> i64 {
    4 * c.alexander_span() + 3
}

fn half(s2: i64) -> String {
    if s2 % 2 == 0 {
        (s2 / 2).to_string()
    } else {
        format!("{s2}/2")
    }
}

fn v0_name(sym: &str) -> String {
    format!("v0:{sym}")
}

fn v1_name(s2: i64, sym: Option<&str>) -> String {
    format!("v1[{}]:{}", half(s2), sym.unwrap_or("*"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Column {
    /// `C(≤ bound)` with the horizontal differential.
    Left(i64),
    F2,
    /// `C(≥ bound)` with the vertical differential.
    Right(i64),
}

fn column(s2: i64, n: i64) -> Column {
    if 2 * s2 <= -n {
        Column::Left((s2 + n - 1) / 2)
    } else if 2 * s2 < n {
        Column::F2
    } else {
        Column::Right((s2 - n + 1) / 2)
    }
}

/// Sorted names and edge list of a set of arrows, for F₂ homology.
fn f2_graph<'a>(names: &[&'a str], arrows: impl Iterator<Item = (&'a str, &'a str)>) -> Vec<(usize, usize)> {
    let pos: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    arrows.map(|(a, b)| (pos[a], pos[b])).collect()
}

/// Support of the distinguished cocycle of the differential given by `arrows`.
fn canonical_cocycle<'a>(names: &[&'a str], arrows: impl Iterator<Item = (&'a str, &'a str)>) -> Result<Vec<&'a str>> {
    let h = f2::homology(names.len(), &f2_graph(names, arrows));
    if h.rank() != 1 {
        return Err(Error::NotKnotComplex(format!("homology of rank {}", h.rank())));
    }
    Ok(h.cocycles[0].ones().map(|i| names[i]).collect())
}

fn canonical_cycle<'a>(names: &[&'a str], arrows: impl Iterator<Item = (&'a str, &'a str)>) -> Result<Vec<&'a str>> {
    let h = f2::homology(names.len(), &f2_graph(names, arrows));
    if h.rank() != 1 {
        return Err(Error::NotKnotComplex(format!("homology of rank {}", h.rank())));
    }
    Ok(h.cycles[0].ones().map(|i| names[i]).collect())
}

fn ensure_valid_reduced(c: &KnotComplex) -> Result<()> {
    if let Some(v) = c.validate().first() {
        return Err(Error::InvalidComplex(v.to_string()));
    }
    if let Some(a) = c.arrows().find(|a| a.u_power == 0 && c.alexander_drop(a) == 0) {
        return Err(Error::NotReduced {
            from: a.from.clone(),
            to: a.to.clone(),
        });
    }
    Ok(())
}

/// The base-free construction, for framing `-n`.
pub fn ktd_basefree(c: &KnotComplex, n: i64) -> Result<TypeDModule> {
    ensure_valid_reduced(c)?;
    let min = min_basefree_framing(c);
    if n < min {
        return Err(Error::FramingTooSmall { n, min });
    }
    let t = c.alexander_span();
    let names: Vec<&str> = c.generators().map(|g| g.name.as_str()).collect();
    let level = |x: &str| c.alexander(x);
    let vertical: Vec<&KnotArrow> = c.vertical_arrows().collect();
    let horizontal: Vec<&KnotArrow> = c.horizontal_arrows().collect();
    let cocycle = canonical_cocycle(&names, horizontal.iter().map(|a| (a.from.as_str(), a.to.as_str())))?;
    let cycle = canonical_cycle(&names, vertical.iter().map(|a| (a.from.as_str(), a.to.as_str())))?;

    // Columns of V¹ that can be non-empty, in increasing order.
    let parity = (n + 1).rem_euclid(2);
    let lo = -(2 * t + n + 3);
    let hi = 2 * t + n + 3;
    let columns: Vec<(i64, Column)> = (lo..=hi)
        .filter(|s2| s2.rem_euclid(2) == parity)
        .map(|s2| (s2, column(s2, n)))
        .filter(|(_, col)| match col {
            Column::Left(b) => *b >= -t,
            Column::F2 => true,
            Column::Right(b) => *b <= t,
        })
        .collect();
    let members = |col: Column| -> Vec<&str> {
        match col {
            Column::Left(b) => names.iter().copied().filter(|x| level(x) <= b).collect(),
            Column::Right(b) => names.iter().copied().filter(|x| level(x) >= b).collect(),
            Column::F2 => vec![],
        }
    };

    let mut d = TypeDModule::new();
    for x in &names {
        d.add_generator(v0_name(x), Iota0)?;
        d.set_tag(
            v0_name(x),
            ColumnTag {
                part: Part::V0,
                column2: 2 * level(x),
                symbol: Some(x.to_string()),
            },
        );
    }
    for (s2, col) in &columns {
        let syms: Vec<Option<&str>> = match col {
            Column::F2 => vec![None],
            _ => members(*col).into_iter().map(Some).collect(),
        };
        for sym in syms {
            d.add_generator(v1_name(*s2, sym), Iota1)?;
            d.set_tag(
                v1_name(*s2, sym),
                ColumnTag {
                    part: Part::V1,
                    column2: *s2,
                    symbol: sym.map(str::to_string),
                },
            );
        }
    }
    let has = |d: &TypeDModule, name: &str| d.idem(name).is_some();

    // Idempotent arrows.
    for a in c.arrows().filter(|a| a.u_power == 0 && c.alexander_drop(a) == 0) {
        d.toggle_arrow(v0_name(&a.from), v0_name(&a.to), AlgebraElement::IOTA0);
    }
    for (s2, col) in &columns {
        let inside = match col {
            Column::Left(_) => &horizontal,
            Column::Right(_) => &vertical,
            Column::F2 => continue,
        };
        for a in inside.iter() {
            let (x, y) = (v1_name(*s2, Some(&a.from)), v1_name(*s2, Some(&a.to)));
            if has(&d, &x) && has(&d, &y) {
                d.toggle_arrow(x, y, AlgebraElement::IOTA1);
            }
        }
    }

    for x in &names {
        let s = level(x);
        d.toggle_arrow(v0_name(x), v1_name(2 * s + n - 1, Some(x)), Rho1);
        d.toggle_arrow(v0_name(x), v1_name(2 * s - n + 1, Some(x)), Rho3);
    }

    for (s2, col) in &columns {
        if let Column::Left(b) = col {
            for a in &horizontal {
                if level(&a.from) <= *b && level(&a.to) == b + 1 {
                    d.toggle_arrow(v1_name(*s2, Some(&a.from)), v0_name(&a.to), Rho2);
                }
            }
        }
    }

    for a in &horizontal {
        if a.u_power == 1 {
            let s = level(&a.from);
            d.toggle_arrow(v0_name(&a.from), v1_name(2 * s + n + 1, Some(&a.to)), Rho123);
        }
    }

    for pair in columns.windows(2) {
        let ((s2, col), (t2, next)) = (pair[0], pair[1]);
        match (col, next) {
            (Column::Left(_), Column::Left(_)) | (Column::Right(_), Column::Right(_)) => {
                for x in members(col) {
                    if has(&d, &v1_name(t2, Some(x))) {
                        d.toggle_arrow(v1_name(s2, Some(x)), v1_name(t2, Some(x)), Rho23);
                    }
                }
            }
            (Column::Left(_), Column::F2) => {
                for x in &cocycle {
                    d.toggle_arrow(v1_name(s2, Some(x)), v1_name(t2, None), Rho23);
                }
            }
            (Column::F2, Column::F2) => d.toggle_arrow(v1_name(s2, None), v1_name(t2, None), Rho23),
            (Column::F2, Column::Right(_)) => {
                for x in &cycle {
                    d.toggle_arrow(v1_name(s2, None), v1_name(t2, Some(x)), Rho23);
                }
            }
            _ => unreachable!("columns are ordered left, F2, right"),
        }
    }
    Ok(d)
}

/// Builds the base-free module of the flipped complex directly from the
/// base-free module of a complex (with `n = 4t + 3`), using only the module
/// and its column tags.
pub fn flip_ktd_direct(d: &TypeDModule) -> Result<TypeDModule> {
    let mut level: BTreeMap<&str, i64> = BTreeMap::new();
    for name in d.generators().keys() {
        let tag = d.tag(name).ok_or_else(|| Error::MissingTag(name.clone()))?;
        if tag.part == Part::V0 {
            let sym = tag.symbol.as_deref().ok_or_else(|| Error::MissingTag(name.clone()))?;
            level.insert(sym, tag.column2 / 2);
        }
    }
    let t = level.values().map(|a| a.abs()).max().unwrap_or(0);
    let n = 4 * t + 3;
    let tag_of = |name: &str| d.tag(name).expect("checked");
    // Renamed copy of a generator: column negated, symbol kept.
    let image = |name: &str| {
        let tag = tag_of(name);
        match tag.part {
            Part::V0 => v0_name(tag.symbol.as_deref().expect("checked")),
            Part::V1 => v1_name(-tag.column2, tag.symbol.as_deref()),
        }
    };
    for name in d.generators().keys() {
        let tag = tag_of(name);
        if tag.part == Part::V1 && (column(tag.column2, n) == Column::F2) != tag.symbol.is_none() {
            return Err(Error::InvalidModule(format!(
                "`{name}` does not fit a base-free module with n = {n}"
            )));
        }
    }

    let mut out = TypeDModule::new();
    for (name, idem) in d.generators() {
        let tag = tag_of(name);
        out.add_generator(image(name), *idem)?;
        out.set_tag(
            image(name),
            ColumnTag {
                column2: -tag.column2,
                ..tag.clone()
            },
        );
    }

    // The differentials of the complex, read off the two outermost full columns.
    let full = |s2: i64| -> Vec<(&str, &str)> {
        d.arrows()
            .filter(|a| a.label.is_idempotent() && tag_of(&a.from).column2 == s2 && tag_of(&a.from).part == Part::V1)
            .map(|a| {
                (
                    tag_of(&a.from).symbol.as_deref().expect("full column"),
                    tag_of(&a.to).symbol.as_deref().expect("full column"),
                )
            })
            .collect()
    };
    let vertical = full(2 * t + 2);
    let horizontal = full(-2 * t - 2);
    let syms: Vec<&str> = level.keys().copied().collect();

    let chain_map = |a: &crate::type_d::DArrow| {
        let (f, g) = (tag_of(&a.from), tag_of(&a.to));
        f.part == Part::V1 && g.part == Part::V1 && (f.symbol.is_none() != g.symbol.is_none())
    };
    for a in d.arrows() {
        let from_v0 = tag_of(&a.from).part == Part::V0;
        match a.label {
            Idem(_) => out.toggle_arrow(image(&a.from), image(&a.to), a.label),
            Rho23 if chain_map(a) => {}
            Rho23 => out.toggle_arrow(image(&a.to), image(&a.from), Rho23),
            Rho1 if from_v0 => out.toggle_arrow(image(&a.from), image(&a.to), Rho3),
            Rho3 if from_v0 => out.toggle_arrow(image(&a.from), image(&a.to), Rho1),
            Rho2 | Rho123 => {}
            other => {
                return Err(Error::InvalidModule(format!(
                    "unexpected {other} arrow {} -> {}",
                    a.from, a.to
                )))
            }
        }
    }

    // New chain maps next to the F₂ block.
    for x in canonical_cocycle(&syms, vertical.iter().copied())? {
        out.toggle_arrow(v1_name(-2 * t - 2, Some(x)), v1_name(-2 * t, None), Rho23);
    }
    for x in canonical_cycle(&syms, horizontal.iter().copied())? {
        out.toggle_arrow(v1_name(2 * t, None), v1_name(2 * t + 2, Some(x)), Rho23);
    }

    // ρ₂ out of the new left columns, one per vertical arrow leaving the column.
    let old_columns: Vec<i64> = d
        .tags()
        .values()
        .filter(|g| g.part == Part::V1 && g.symbol.is_some() && g.column2 >= 2 * t + 2)
        .map(|g| g.column2 / 2)
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    for c in old_columns {
        for (x, y) in &vertical {
            if level[y] == c - 2 * t - 2 && level[x] >= c - 2 * t - 1 {
                out.toggle_arrow(v1_name(-2 * c, Some(x)), v0_name(y), Rho2);
            }
        }
    }
    // ρ₁₂₃ along vertical arrows of length one.
    for (x, y) in &vertical {
        if level[x] - level[y] == 1 {
            let old = 2 * (level[x] - 2 * t - 2);
            out.toggle_arrow(v0_name(x), v1_name(-old, Some(y)), Rho123);
        }
    }
    Ok(out)
}

fn chain_name(kind: &str, from: &str, to: &str, i: i64) -> String {
    format!("{kind}[{from}>{to}]:{i}")
}

/// The construction from a simultaneously simplified basis, framing `n`.
/// The horizontal homology must sit at Alexander level `-τ`, as it does for
/// complexes of knots.
pub fn ktd_basis(c: &KnotComplex, n: i64) -> Result<TypeDModule> {
    ensure_valid_reduced(c)?;
    if !(c.is_vertically_simplified() && c.is_horizontally_simplified()) {
        return Err(Error::NotSimplified);
    }
    let xi_v = c.vertical_survivor()?;
    let xi_h = c.horizontal_survivor()?;
    let tau = c.alexander(&xi_v);
    if c.alexander(&xi_h) != -tau {
        return Err(Error::Asymmetric {
            horizontal: c.alexander(&xi_h),
            expected: -tau,
        });
    }

    let mut d = TypeDModule::new();
    for g in c.generators() {
        d.add_generator(g.name.clone(), Iota0)?;
    }
    let chain = |d: &mut TypeDModule, names: Vec<String>| -> Result<()> {
        for name in names {
            d.add_generator(name, Iota1)?;
        }
        Ok(())
    };
    for a in c.vertical_arrows() {
        let len = c.alexander_drop(a);
        let k: Vec<String> = (1..=len).map(|i| chain_name("k", &a.from, &a.to, i)).collect();
        chain(&mut d, k.clone())?;
        d.toggle_arrow(a.from.clone(), k[0].clone(), Rho1);
        for w in k.windows(2) {
            d.toggle_arrow(w[1].clone(), w[0].clone(), Rho23);
        }
        d.toggle_arrow(a.to.clone(), k[k.len() - 1].clone(), Rho123);
    }
    for a in c.horizontal_arrows() {
        let len = a.u_power as i64;
        let l: Vec<String> = (1..=len).map(|i| chain_name("l", &a.from, &a.to, i)).collect();
        chain(&mut d, l.clone())?;
        d.toggle_arrow(a.from.clone(), l[0].clone(), Rho3);
        for w in l.windows(2) {
            d.toggle_arrow(w[0].clone(), w[1].clone(), Rho23);
        }
        d.toggle_arrow(l[l.len() - 1].clone(), a.to.clone(), Rho2);
    }
    let m = (2 * tau - n).abs();
    let mu: Vec<String> = (1..=m).map(|i| format!("mu:{i}")).collect();
    chain(&mut d, mu.clone())?;
    match n.cmp(&(2 * tau)) {
        std::cmp::Ordering::Less => {
            d.toggle_arrow(xi_v.clone(), mu[0].clone(), Rho1);
            for w in mu.windows(2) {
                d.toggle_arrow(w[1].clone(), w[0].clone(), Rho23);
            }
            d.toggle_arrow(xi_h.clone(), mu[mu.len() - 1].clone(), Rho3);
        }
        std::cmp::Ordering::Equal => d.toggle_arrow(xi_v.clone(), xi_h.clone(), Rho12),
        std::cmp::Ordering::Greater => {
            d.toggle_arrow(xi_v.clone(), mu[0].clone(), Rho123);
            for w in mu.windows(2) {
                d.toggle_arrow(w[0].clone(), w[1].clone(), Rho23);
            }
            d.toggle_arrow(mu[mu.len() - 1].clone(), xi_h.clone(), Rho2);
        }
    }
    Ok(d)
}

/// `τ_μ ⊠ (… ⊠ (τ_μ ⊠ D))` with `k` factors, reduced after each step.
/// Each factor raises the framing by one.
pub fn adjust_framing(d: &TypeDModule, k: usize) -> Result<TypeDModule> {
    let mu = tau_mu();
    let mut out = d.clone();
    for _ in 0..k {
        out = box_da_d(&mu, &out)?.reduced();
    }
    Ok(out)
}

/// Which construction the verifier runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    /// Framing `n`, from a simultaneously simplified basis.
    Basis(i64),
    /// Framing `n + k`, built at framing `n` and then twisted `k` times.
    BasisTwisted(i64, usize),
    /// Framing `-n`; `None` picks `n = 4t + 3`.
    Basefree(Option<i64>),
}

/// Evidence that two modules are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A generator bijection carrying arrows onto arrows.
    Permutation(BTreeMap<String, String>),
    /// A cycle with invertible idempotent part.
    BaseChange(Morphism),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified(Witness),
    Inconclusive(String),
    Failed(String),
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Verified(Witness::Permutation(_)) => f.write_str("verified (generator bijection)"),
            Verdict::Verified(Witness::BaseChange(_)) => f.write_str("verified (change of basis)"),
            Verdict::Inconclusive(why) => write!(f, "inconclusive: {why}"),
            Verdict::Failed(why) => write!(f, "failed: {why}"),
        }
    }
}

/// Both sides of the comparison, reduced.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub twisted: TypeDModule,
    pub flipped: TypeDModule,
    pub verdict: Verdict,
}

fn simplified_pair(c: &KnotComplex) -> Result<(KnotComplex, KnotComplex)> {
    let s = c.simultaneous_simplify(64)?.ok_or(Error::NotSimplified)?;
    let f = s.flip()?;
    Ok((s, f))
}

/// Compares `H ⊠ KtD(C)` with `KtD(C^flip)` after reduction. `seed` drives
/// the change-of-basis search used when no generator bijection exists.
pub fn verify_elliptic_invariance(c: &KnotComplex, algo: Algorithm, seed: u64) -> Result<Comparison> {
    ensure_valid_reduced(c)?;
    let (left, right) = match algo {
        Algorithm::Basis(n) => {
            let (s, f) = simplified_pair(c)?;
            (ktd_basis(&s, n)?, ktd_basis(&f, n)?)
        }
        Algorithm::BasisTwisted(n, k) => {
            let (s, f) = simplified_pair(c)?;
            (adjust_framing(&ktd_basis(&s, n)?, k)?, adjust_framing(&ktd_basis(&f, n)?, k)?)
        }
        Algorithm::Basefree(n) => {
            let n = n.unwrap_or_else(|| min_basefree_framing(c));
            (ktd_basefree(c, n)?, ktd_basefree(&c.flip()?, n)?)
        }
    };
    let twisted = box_da_d(&elliptic(), &left)?.reduced().minimize_arrows();
    let flipped = right.reduce(&ReductionOrder::Lexicographic)?.0.minimize_arrows();
    let verdict = compare(&twisted, &flipped, seed);
    Ok(Comparison {
        twisted,
        flipped,
        verdict,
    })
}

/// Compares two reduced modules: first up to renaming, then up to change of basis.
pub fn compare(a: &TypeDModule, b: &TypeDModule, seed: u64) -> Verdict {
    if let Some(f) = a.isomorphism(b) {
        return Verdict::Verified(Witness::Permutation(f));
    }
    for i in Idempotent::ALL {
        if a.count_idem(i) != b.count_idem(i) {
            return Verdict::Failed(format!(
                "{} vs {} generators with idempotent {i}",
                a.count_idem(i),
                b.count_idem(i)
            ));
        }
    }
    if let Some(f) = morphism::find_isomorphism(a, b, seed, morphism::DEFAULT_ATTEMPTS) {
        return Verdict::Verified(Witness::BaseChange(f));
    }
    Verdict::Inconclusive("no isomorphism found".to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex(gens: &[(&str, i64, i64)], arrows: &[(&str, &str, u32)]) -> KnotComplex {
        let mut c = KnotComplex::new();
        for (name, a, m) in gens {
            c.add_generator(*name, *a, *m).unwrap();
        }
        for (from, to, r) in arrows {
            c.toggle_arrow(*from, *to, *r);
        }
        c
    }

    fn unknot() -> KnotComplex {
        complex(&[("x", 0, 0)], &[])
    }

    fn trefoil() -> KnotComplex {
        complex(&[("a", 1, 0), ("b", 0, -1), ("c", -1, -2)], &[("b", "a", 1), ("b", "c", 0)])
    }

    fn fig13a() -> KnotComplex {
        complex(
            &[("a", 1, 1), ("b", 1, 1), ("c", 0, 0), ("d", -1, -1), ("e", 0, 0)],
            &[("a", "c", 0), ("b", "c", 0), ("d", "c", 1), ("e", "d", 0), ("e", "a", 1)],
        )
    }

    fn column_sizes(d: &TypeDModule) -> BTreeMap<i64, usize> {
        let mut sizes = BTreeMap::new();
        for tag in d.tags().values().filter(|t| t.part == Part::V1) {
            *sizes.entry(tag.column2).or_insert(0) += 1;
        }
        sizes
    }

    #[test]
    fn unknot_basefree_is_a_string() {
        let d = ktd_basefree(&unknot(), 3).unwrap();
        assert!(d.is_valid());
        assert_eq!(column_sizes(&d), BTreeMap::from([(-2, 1), (0, 1), (2, 1)]));
        assert!(d.has_arrow("v0:x", "v1[1]:x", Rho1));
        assert!(d.has_arrow("v0:x", "v1[-1]:x", Rho3));
        assert!(d.has_arrow("v1[-1]:x", "v1[0]:*", Rho23));
        assert!(d.has_arrow("v1[0]:*", "v1[1]:x", Rho23));
        assert_eq!(d.arrow_count(), 4);
    }

    #[test]
    fn fig13a_columns() {
        let d = ktd_basefree(&fig13a(), 7).unwrap();
        assert!(d.is_valid());
        let sizes: Vec<usize> = column_sizes(&d).into_values().collect();
        assert_eq!(sizes, [1, 3, 5, 1, 1, 1, 5, 4, 2]);
        assert_eq!(d.count_idem(Iota0), 5);
        assert_eq!(d.label_counts().get(&Rho12), None);
    }

    #[test]
    fn half_integer_columns() {
        let d = ktd_basefree(&unknot(), 4).unwrap();
        assert!(d.is_valid());
        assert!(d.tags().values().all(|t| t.part == Part::V0 || t.column2 % 2 != 0));
        assert!(d.generators().contains_key("v1[-3/2]:x"));
    }

    #[test]
    fn framing_bound() {
        assert!(matches!(
            ktd_basefree(&trefoil(), 6),
            Err(Error::FramingTooSmall { n: 6, min: 7 })
        ));
        for n in 7..11 {
            assert!(ktd_basefree(&trefoil(), n).unwrap().is_valid());
        }
    }

    #[test]
    fn direct_flip_matches() {
        for c in [unknot(), trefoil(), fig13a()] {
            let n = min_basefree_framing(&c);
            let direct = flip_ktd_direct(&ktd_basefree(&c, n).unwrap()).unwrap();
            assert_eq!(direct, ktd_basefree(&c.flip().unwrap(), n).unwrap());
        }
    }

    #[test]
    fn direct_flip_needs_tags() {
        let mut d = TypeDModule::new();
        d.add_generator("x", Iota0).unwrap();
        assert!(matches!(flip_ktd_direct(&d), Err(Error::MissingTag(_))));
    }

    #[test]
    fn unstable_chain() {
        let u = unknot();
        let d = ktd_basis(&u, 0).unwrap();
        assert_eq!(d.arrows().collect::<Vec<_>>(), [&crate::type_d::DArrow::new("x", "x", Rho12)]);
        let d = ktd_basis(&u, -1).unwrap();
        assert!(d.has_arrow("x", "mu:1", Rho1) && d.has_arrow("x", "mu:1", Rho3));
        let d = ktd_basis(&u, 2).unwrap();
        assert!(d.has_arrow("x", "mu:1", Rho123) && d.has_arrow("mu:1", "mu:2", Rho23) && d.has_arrow("mu:2", "x", Rho2));
    }

    #[test]
    fn basis_counts() {
        let d = ktd_basis(&trefoil(), -1).unwrap();
        assert!(d.is_valid());
        assert_eq!(d.count_idem(Iota0), 3);
        assert_eq!(d.count_idem(Iota1), 5);
    }

    #[test]
    fn basis_preconditions() {
        let c = complex(&[("a", 1, 1), ("b", 1, 1), ("c", 0, 0)], &[("a", "c", 0), ("b", "c", 0)]);
        assert!(matches!(ktd_basis(&c, 0), Err(Error::NotSimplified)));
        let s = fig13a().simultaneous_simplify(8).unwrap().unwrap();
        assert!(matches!(ktd_basis(&s, 0), Err(Error::Asymmetric { .. })));
    }

    #[test]
    fn twisting_raises_framing() {
        let u = unknot();
        for f in -2..3 {
            let twisted = adjust_framing(&ktd_basis(&u, f).unwrap(), 1).unwrap();
            assert!(twisted.isomorphism(&ktd_basis(&u, f + 1).unwrap().reduced()).is_some());
        }
        let d = ktd_basis(&u, 1).unwrap();
        assert_eq!(adjust_framing(&d, 0).unwrap(), d);
    }

    #[test]
    fn verifier_on_trefoil() {
        for algo in [Algorithm::Basefree(None), Algorithm::Basis(-1), Algorithm::BasisTwisted(-1, 3)] {
            let r = verify_elliptic_invariance(&trefoil(), algo, 0).unwrap();
            assert!(r.verdict.is_verified(), "{algo:?}: {}", r.verdict);
        }
    }
}

//! Morphisms of type D structures and isomorphisms up to change of basis.
//!
//! A morphism `f: M -> N` is a set of labeled arrows from generators of `M`
//! to generators of `N`. It is a cycle when every two-step path made of one
//! differential arrow and one arrow of `f`, in either order, cancels in pairs.
//! Between reduced modules a cycle is an isomorphism exactly when its
//! idempotent part is invertible, so an isomorphism can be found by linear
//! algebra over F₂ followed by a search for an invertible element.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraElement, Idempotent};
use crate::f2::{self, BitVec};
use crate::type_d::{DArrow, TypeDModule};

pub type Morphism = BTreeSet<DArrow>;

/// Number of random elements of the cycle space tried before giving up.
pub const DEFAULT_ATTEMPTS: usize = 256;

fn fits(m: &TypeDModule, n: &TypeDModule, a: &DArrow) -> bool {
    match (m.idem(&a.from), n.idem(&a.to), a.label.left_idem(), a.label.right_idem()) {
        (Some(x), Some(y), Ok(l), Ok(r)) => x == l && y == r,
        _ => false,
    }
}

/// Terms of `d(f)` with odd multiplicity.
pub fn differential(m: &TypeDModule, n: &TypeDModule, f: &Morphism) -> BTreeSet<DArrow> {
    let mut out = BTreeSet::new();
    let mut toggle = |from: &str, to: &str, label: AlgebraElement| {
        if !label.is_zero() {
            let a = DArrow::new(from, to, label);
            if !out.remove(&a) {
                out.insert(a);
            }
        }
    };
    for a in f {
        for b in n.arrows().filter(|b| b.from == a.to) {
            toggle(&a.from, &b.to, a.label.multiply(b.label));
        }
        for b in m.arrows().filter(|b| b.to == a.from) {
            toggle(&b.from, &a.to, b.label.multiply(a.label));
        }
    }
    out
}

fn invertible_idempotent_part(m: &TypeDModule, n: &TypeDModule, f: &Morphism) -> bool {
    Idempotent::ALL.into_iter().all(|i| {
        let rows: Vec<&String> = m.generators().iter().filter(|(_, j)| **j == i).map(|(x, _)| x).collect();
        let cols: BTreeMap<&str, usize> = n
            .generators()
            .iter()
            .filter(|(_, j)| **j == i)
            .enumerate()
            .map(|(k, (y, _))| (y.as_str(), k))
            .collect();
        if rows.len() != cols.len() {
            return false;
        }
        let vectors: Vec<BitVec> = rows
            .iter()
            .map(|x| {
                let mut v = BitVec::zeros(cols.len());
                for a in f.iter().filter(|a| &&a.from == x && a.label == AlgebraElement::Idem(i)) {
                    v.flip(cols[a.to.as_str()]);
                }
                v
            })
            .collect();
        f2::rank(&vectors) == rows.len()
    })
}

/// Whether `f` is an isomorphism of type D structures from `m` to `n`.
/// Both modules must be reduced.
pub fn is_isomorphism(m: &TypeDModule, n: &TypeDModule, f: &Morphism) -> bool {
    f.iter().all(|a| fits(m, n, a))
        && differential(m, n, f).is_empty()
        && invertible_idempotent_part(m, n, f)
}

/// Basis of the space of cycles `M -> N`.
pub fn cycles(m: &TypeDModule, n: &TypeDModule) -> (Vec<DArrow>, Vec<BitVec>) {
    let mut vars = Vec::new();
    for x in m.generators().keys() {
        for y in n.generators().keys() {
            for label in AlgebraElement::BASIS {
                let a = DArrow::new(x.as_str(), y.as_str(), label);
                if fits(m, n, &a) {
                    vars.push(a);
                }
            }
        }
    }
    let mut equations: BTreeMap<DArrow, usize> = BTreeMap::new();
    let images: Vec<Vec<usize>> = vars
        .iter()
        .map(|a| {
            differential(m, n, &BTreeSet::from([a.clone()]))
                .into_iter()
                .map(|e| {
                    let next = equations.len();
                    *equations.entry(e).or_insert(next)
                })
                .collect()
        })
        .collect();
    let columns: Vec<BitVec> = images
        .iter()
        .map(|rows| {
            let mut v = BitVec::zeros(equations.len());
            for r in rows {
                v.flip(*r);
            }
            v
        })
        .collect();
    (vars, f2::kernel(&columns))
}

/// Searches for an isomorphism `m -> n` of reduced modules among random
/// elements of the cycle space. `None` means none was found, not that none exists.
pub fn find_isomorphism(m: &TypeDModule, n: &TypeDModule, seed: u64, attempts: usize) -> Option<Morphism> {
    for i in Idempotent::ALL {
        if m.count_idem(i) != n.count_idem(i) {
            return None;
        }
    }
    let (vars, basis) = cycles(m, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let mut combo = BitVec::zeros(vars.len());
        for z in &basis {
            if rng.gen::<bool>() {
                combo.xor_assign(z);
            }
        }
        let to_morphism = |v: &BitVec| -> Morphism { v.ones().map(|k| vars[k].clone()).collect() };
        if !invertible_idempotent_part(m, n, &to_morphism(&combo)) {
            continue;
        }
        // Shrink the witness: add basis cycles while that removes terms.
        let weight = |v: &BitVec| v.ones().count();
        let mut improved = true;
        while improved {
            improved = false;
            for z in &basis {
                let mut next = combo.clone();
                next.xor_assign(z);
                if weight(&next) < weight(&combo) && invertible_idempotent_part(m, n, &to_morphism(&next)) {
                    combo = next;
                    improved = true;
                }
            }
        }
        let f = to_morphism(&combo);
        debug_assert!(is_isomorphism(m, n, &f));
        return Some(f);
    }
    None
}

#![allow(dead_code)]

use bhf_core::ktd::{ktd_basefree, ktd_basis};
use bhf_core::type_d::rho23_string;
use bhf_core::{AlgebraElement, Idempotent, KnotComplex, TypeDModule};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn complex(gens: &[(&str, i64, i64)], arrows: &[(&str, &str, u32)]) -> KnotComplex {
    let mut c = KnotComplex::new();
    for (name, a, m) in gens {
        c.add_generator(*name, *a, *m).unwrap();
    }
    for (from, to, r) in arrows {
        c.toggle_arrow(*from, *to, *r);
    }
    c
}

pub fn unknot() -> KnotComplex {
    complex(&[("x", 0, 0)], &[])
}

pub fn rh_trefoil() -> KnotComplex {
    complex(&[("a", 1, 0), ("b", 0, -1), ("c", -1, -2)], &[("b", "a", 1), ("b", "c", 0)])
}

pub fn lh_trefoil() -> KnotComplex {
    complex(&[("a", 1, 2), ("b", 0, 1), ("c", -1, 0)], &[("a", "b", 0), ("c", "b", 1)])
}

pub fn figure_eight() -> KnotComplex {
    complex(
        &[("a", 0, 0), ("b", -1, -1), ("c", 1, 1), ("d", 0, 0), ("e", 0, 0)],
        &[("a", "b", 0), ("a", "c", 1), ("b", "d", 1), ("c", "d", 0)],
    )
}

pub fn fig13a() -> KnotComplex {
    complex(
        &[("a", 1, 1), ("b", 1, 1), ("c", 0, 0), ("d", -1, -1), ("e", 0, 0)],
        &[("a", "c", 0), ("b", "c", 0), ("d", "c", 1), ("e", "d", 0), ("e", "a", 1)],
    )
}

pub fn all() -> Vec<(&'static str, KnotComplex)> {
    vec![
        ("unknot", unknot()),
        ("rh_trefoil", rh_trefoil()),
        ("lh_trefoil", lh_trefoil()),
        ("figure_eight", figure_eight()),
        ("fig13a", fig13a()),
    ]
}

/// The published drawing of the module of `fig13a` at framing `-7`, transcribed
/// node for node. A node `x_k` (`x_nk` for negative `k`) sits in column `-k`;
/// `dot_k` are the columns built on F₂.
pub fn fig13a_drawing() -> TypeDModule {
    use AlgebraElement::*;
    let arrows = [
        ("a_n1", "a_2", Rho3),
        ("a_n1", "a_n4", Rho1),
        ("a_n2", "c_n2", AlgebraElement::IOTA1),
        ("a_n2", "a_n3", Rho23),
        ("a_n3", "c_n3", AlgebraElement::IOTA1),
        ("a_n3", "a_n4", Rho23),
        ("b_2", "dot_1", Rho23),
        ("b_n1", "b_2", Rho3),
        ("b_n1", "b_n4", Rho1),
        ("b_n2", "c_n2", AlgebraElement::IOTA1),
        ("b_n2", "b_n3", Rho23),
        ("b_n3", "c_n3", AlgebraElement::IOTA1),
        ("b_n3", "b_n4", Rho23),
        ("c_0", "c_3", Rho3),
        ("c_0", "c_n3", Rho1),
        ("c_3", "c_2", Rho23),
        ("c_n2", "c_n3", Rho23),
        ("d_1", "d_4", Rho3),
        ("d_1", "d_n2", Rho1),
        ("d_1", "c_n3", Rho123),
        ("d_2", "c_2", AlgebraElement::IOTA1),
        ("d_3", "c_3", AlgebraElement::IOTA1),
        ("d_3", "d_2", Rho23),
        ("d_4", "d_3", Rho23),
        ("d_4", "c_0", Rho2),
        ("dot_0", "dot_n1", Rho23),
        ("dot_1", "dot_0", Rho23),
        ("dot_n1", "b_n2", Rho23),
        ("dot_n1", "a_n2", Rho23),
        ("e_0", "e_3", Rho3),
        ("e_0", "e_n3", Rho1),
        ("e_0", "a_n4", Rho123),
        ("e_2", "a_2", AlgebraElement::IOTA1),
        ("e_3", "e_2", Rho23),
        ("e_3", "a_n1", Rho2),
        ("e_n2", "d_n2", AlgebraElement::IOTA1),
        ("e_n2", "e_n3", Rho23),
    ];
    let v0 = ["a_n1", "b_n1", "c_0", "d_1", "e_0"];
    let mut m = TypeDModule::new();
    for (x, y, _) in arrows {
        for g in [x, y] {
            if m.idem(g).is_none() {
                let i = if v0.contains(&g) { Idempotent::Iota0 } else { Idempotent::Iota1 };
                m.add_generator(g, i).unwrap();
            }
        }
    }
    for (x, y, l) in arrows {
        m.toggle_arrow(x, y, l);
    }
    m
}

/// Column of a node of [`fig13a_drawing`].
pub fn drawing_column(name: &str) -> i64 {
    let k = name.rsplit('_').next().unwrap();
    let k: i64 = match k.strip_prefix('n') {
        Some(rest) => -rest.parse::<i64>().unwrap(),
        None => k.parse().unwrap(),
    };
    -k
}

/// Disjoint union, with `prefix` prepended to the names of `b`.
pub fn disjoint_union(a: &TypeDModule, b: &TypeDModule, prefix: &str) -> TypeDModule {
    let mut m = a.clone();
    for (g, i) in b.generators() {
        m.add_generator(format!("{prefix}{g}"), *i).unwrap();
    }
    for x in b.arrows() {
        m.toggle_arrow(format!("{prefix}{}", x.from), format!("{prefix}{}", x.to), x.label);
    }
    m
}

/// A random valid module of at most a few dozen generators: a sum of known
/// modules and contractible pairs, scrambled by random changes of basis.
pub fn random_module(seed: u64) -> TypeDModule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = TypeDModule::new();
    for p in 0..rng.gen_range(1..=3) {
        let piece = match rng.gen_range(0..6) {
            0 => rho23_string(rng.gen_range(1..5), "s"),
            1 => {
                let mut s = rho23_string(rng.gen_range(1..5), "s");
                let last = format!("s{}", s.len() - 1);
                s.toggle_arrow(last, "s0", AlgebraElement::Rho23);
                s
            }
            2 => ktd_basis(&unknot(), rng.gen_range(-3..=3)).unwrap(),
            3 => {
                let c = [rh_trefoil(), lh_trefoil()].choose(&mut rng).unwrap().clone();
                ktd_basefree(&c, 11).unwrap()
            }
            4 => ktd_basis([rh_trefoil(), lh_trefoil()].choose(&mut rng).unwrap(), rng.gen_range(-3..=3)).unwrap(),
            _ => {
                let i = *Idempotent::ALL.choose(&mut rng).unwrap();
                let mut pair = TypeDModule::new();
                pair.add_generator("x", i).unwrap();
                pair.add_generator("y", i).unwrap();
                pair.toggle_arrow("x", "y", AlgebraElement::Idem(i));
                pair
            }
        };
        m = disjoint_union(&m, &piece, &format!("{p}."));
    }
    for _ in 0..rng.gen_range(0..=12) {
        let names: Vec<String> = m.generators().keys().cloned().collect();
        let y = names.choose(&mut rng).unwrap();
        let z = names.choose(&mut rng).unwrap();
        let fitting: Vec<AlgebraElement> = AlgebraElement::BASIS
            .into_iter()
            .filter(|c| c.left_idem().ok() == m.idem(y) && c.right_idem().ok() == m.idem(z))
            .collect();
        if let (false, Some(c)) = (y == z, fitting.choose(&mut rng)) {
            m = m.base_change(y, z, *c).unwrap();
        }
    }
    m
}

/// A square `x -> y`, `x -> U^q z`, `y -> U^q w`, `z -> w` with vertical sides of length `p`.
pub fn square(p: i64, q: u32) -> KnotComplex {
    let q64 = q as i64;
    complex(
        &[("x", 0, 0), ("y", -p, -1), ("z", q64, 2 * q64 - 1), ("w", q64 - p, 2 * q64 - 2)],
        &[("x", "y", 0), ("x", "z", q), ("y", "w", q), ("z", "w", 0)],
    )
}

/// A random reduced complex with homology of rank one: a fixture plus up to
/// two squares, each shifted in Alexander grading.
pub fn random_complex(seed: u64) -> KnotComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = KnotComplex::new();
    for p in 0..rng.gen_range(1..=3) {
        let piece = match p {
            0 => all().choose(&mut rng).unwrap().1.clone(),
            _ => square(rng.gen_range(1..=2), rng.gen_range(1..=2)),
        };
        let shift = rng.gen_range(-1..=1);
        for g in piece.generators() {
            c.add_generator(format!("{p}.{}", g.name), g.alexander + shift, g.maslov).unwrap();
        }
        for a in piece.arrows() {
            c.toggle_arrow(format!("{p}.{}", a.from), format!("{p}.{}", a.to), a.u_power);
        }
    }
    c
}

//! Isomorphism search for node- and edge-labeled directed multigraphs.
//!
//! Colors are refined jointly on both graphs (1-dimensional Weisfeiler-Leman),
//! then a backtracking search extends a partial bijection one node at a time,
//! always picking the unmapped node with the fewest candidates among those
//! adjacent to the mapped part.

use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug)]
pub struct LabeledGraph<N, E> {
    pub nodes: Vec<N>,
    /// Parallel edges with equal labels are allowed; they are compared as multisets.
    pub edges: Vec<(usize, usize, E)>,
}

struct Prepared<E> {
    out: Vec<Vec<(usize, E)>>,
    inc: Vec<Vec<(usize, E)>>,
    between: BTreeMap<(usize, usize), Vec<E>>,
}

fn prepare<N, E: Ord + Clone>(g: &LabeledGraph<N, E>) -> Prepared<E> {
    let n = g.nodes.len();
    let mut out = vec![Vec::new(); n];
    let mut inc = vec![Vec::new(); n];
    let mut between: BTreeMap<(usize, usize), Vec<E>> = BTreeMap::new();
    for (u, v, e) in &g.edges {
        out[*u].push((*v, e.clone()));
        inc[*v].push((*u, e.clone()));
        between.entry((*u, *v)).or_default().push(e.clone());
    }
    for labels in between.values_mut() {
        labels.sort();
    }
    Prepared { out, inc, between }
}

/// Refines colors of both graphs with a shared palette; returns one color per node.
fn refine<E: Ord + Clone>(init: (Vec<usize>, Vec<usize>), g: &Prepared<E>, h: &Prepared<E>) -> (Vec<usize>, Vec<usize>) {
    let (mut cg, mut ch) = init;
    let count = |c: &[usize], d: &[usize]| c.iter().chain(d).collect::<BTreeSet<_>>().len();
    let mut classes = count(&cg, &ch);
    loop {
        type Sig<E> = (usize, Vec<(E, usize)>, Vec<(E, usize)>);
        let mut palette: BTreeMap<Sig<E>, usize> = BTreeMap::new();
        let sig = |p: &Prepared<E>, c: &[usize], v: usize| -> Sig<E> {
            let mut o: Vec<(E, usize)> = p.out[v].iter().map(|(w, e)| (e.clone(), c[*w])).collect();
            let mut i: Vec<(E, usize)> = p.inc[v].iter().map(|(w, e)| (e.clone(), c[*w])).collect();
            o.sort();
            i.sort();
            (c[v], o, i)
        };
        let sg: Vec<Sig<E>> = (0..cg.len()).map(|v| sig(g, &cg, v)).collect();
        let sh: Vec<Sig<E>> = (0..ch.len()).map(|v| sig(h, &ch, v)).collect();
        for s in sg.iter().chain(&sh) {
            let next = palette.len();
            palette.entry(s.clone()).or_insert(next);
        }
        cg = sg.iter().map(|s| palette[s]).collect();
        ch = sh.iter().map(|s| palette[s]).collect();
        let now = count(&cg, &ch);
        if now == classes {
            return (cg, ch);
        }
        classes = now;
    }
}

fn histogram(colors: &[usize]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for c in colors {
        *h.entry(*c).or_insert(0) += 1;
    }
    h
}

/// A bijection `f` with `f[g-node] = h-node` preserving node labels and the
/// edge multiset, if one exists.
pub fn find_isomorphism<N: Ord + Clone, E: Ord + Clone>(
    g: &LabeledGraph<N, E>,
    h: &LabeledGraph<N, E>,
) -> Option<Vec<usize>> {
    let n = g.nodes.len();
    if n != h.nodes.len() || g.edges.len() != h.edges.len() {
        return None;
    }
    let pg = prepare(g);
    let ph = prepare(h);
    let mut labels: BTreeMap<&N, usize> = BTreeMap::new();
    for l in g.nodes.iter().chain(&h.nodes) {
        let next = labels.len();
        labels.entry(l).or_insert(next);
    }
    let init = (
        g.nodes.iter().map(|l| labels[l]).collect(),
        h.nodes.iter().map(|l| labels[l]).collect(),
    );
    let (cg, ch) = refine(init, &pg, &ph);
    if histogram(&cg) != histogram(&ch) {
        return None;
    }
    let mut search = Search {
        g: &pg,
        h: &ph,
        cg: &cg,
        ch: &ch,
        map: vec![None; n],
        inv: vec![None; n],
    };
    if search.extend(0) {
        Some(search.map.into_iter().map(|m| m.expect("complete")).collect())
    } else {
        None
    }
}

struct Search<'a, E> {
    g: &'a Prepared<E>,
    h: &'a Prepared<E>,
    cg: &'a [usize],
    ch: &'a [usize],
    map: Vec<Option<usize>>,
    inv: Vec<Option<usize>>,
}

impl<E: Ord + Clone> Search<'_, E> {
    fn candidates(&self, v: usize) -> Vec<usize> {
        (0..self.ch.len())
            .filter(|w| self.inv[*w].is_none() && self.ch[*w] == self.cg[v] && self.consistent(v, *w))
            .collect()
    }

    fn labels(p: &Prepared<E>, u: usize, v: usize) -> Option<&Vec<E>> {
        p.between.get(&(u, v))
    }

    fn consistent(&self, v: usize, w: usize) -> bool {
        if Self::labels(self.g, v, v) != Self::labels(self.h, w, w) {
            return false;
        }
        let mut seen = BTreeSet::new();
        for &(u, _) in self.g.out[v].iter().chain(&self.g.inc[v]) {
            if !seen.insert(u) || u == v {
                continue;
            }
            if let Some(x) = self.map[u] {
                if Self::labels(self.g, v, u) != Self::labels(self.h, w, x)
                    || Self::labels(self.g, u, v) != Self::labels(self.h, x, w)
                {
                    return false;
                }
            }
        }
        // Edges in h towards mapped nodes must have preimages too.
        for &(x, _) in self.h.out[w].iter().chain(&self.h.inc[w]) {
            if x == w {
                continue;
            }
            if let Some(u) = self.inv[x] {
                if Self::labels(self.g, v, u) != Self::labels(self.h, w, x)
                    || Self::labels(self.g, u, v) != Self::labels(self.h, x, w)
                {
                    return false;
                }
            }
        }
        true
    }

    fn next_node(&self) -> Option<(usize, Vec<usize>)> {
        let unmapped = (0..self.cg.len()).filter(|v| self.map[*v].is_none());
        let adjacent = |v: &usize| {
            self.g.out[*v]
                .iter()
                .chain(&self.g.inc[*v])
                .any(|(u, _)| self.map[*u].is_some())
        };
        let frontier: Vec<usize> = unmapped.clone().filter(adjacent).collect();
        let pool: Vec<usize> = if frontier.is_empty() { unmapped.collect() } else { frontier };
        pool.into_iter()
            .map(|v| (v, self.candidates(v)))
            .min_by_key(|(v, c)| (c.len(), *v))
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.cg.len() {
            return true;
        }
        let Some((v, candidates)) = self.next_node() else {
            return true;
        };
        for w in candidates {
            self.map[v] = Some(w);
            self.inv[w] = Some(v);
            if self.extend(depth + 1) {
                return true;
            }
            self.map[v] = None;
            self.inv[w] = None;
        }
        false
    }
}

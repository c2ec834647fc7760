//! Type DA bimodules over (A(T²), A(T²)) and box tensor products.
//!
//! An action `m(x, a₁, …, a_k) = c ⊗ y` takes a generator and a sequence of
//! Reeb chords on the right (the A side) and emits an algebra element on the
//! left (the D side). Idempotents are never arguments: feeding an idempotent
//! is the same as feeding nothing, and the only action with an idempotent
//! argument is the unit one, which is implicit.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, Idempotent};
use crate::error::{Error, Result};
use crate::iso::{find_isomorphism, LabeledGraph};
use crate::type_d::{escape, ReductionOrder, ReductionTrace, TypeDModule};

use AlgebraElement::*;
use Idempotent::{Iota0, Iota1};

/// Edge label of an action: its arguments and coefficient.
type ActionLabel = (Vec<AlgebraElement>, AlgebraElement);

/// Default bound on the arity of actions created by cancellation.
pub const DEFAULT_ARITY_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DAIdempotents {
    pub left: Idempotent,
    pub right: Idempotent,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DAAction {
    pub input: String,
    pub args: Vec<AlgebraElement>,
    pub coeff: AlgebraElement,
    pub output: String,
}

impl DAAction {
    pub fn new(
        input: impl Into<String>,
        args: &[AlgebraElement],
        coeff: AlgebraElement,
        output: impl Into<String>,
    ) -> Self {
        DAAction {
            input: input.into(),
            args: args.to_vec(),
            coeff,
            output: output.into(),
        }
    }

    /// A differential term: no inputs, idempotent coefficient.
    pub fn is_idempotent_differential(&self) -> bool {
        self.args.is_empty() && self.coeff.is_idempotent()
    }
}

impl fmt::Display for DAAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m({}", self.input)?;
        for a in &self.args {
            write!(f, ", {a}")?;
        }
        write!(f, ") = {} ⊗ {}", self.coeff, self.output)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypeDAModule {
    generators: BTreeMap<String, DAIdempotents>,
    actions: BTreeSet<DAAction>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DAViolationKind {
    UnknownGenerator,
    BadArgument,
    IdempotentMismatch,
    StructureEquation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DAViolation {
    pub kind: DAViolationKind,
    pub detail: String,
}

impl fmt::Display for DAViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            DAViolationKind::UnknownGenerator => "unknown generator",
            DAViolationKind::BadArgument => "bad argument",
            DAViolationKind::IdempotentMismatch => "idempotent mismatch",
            DAViolationKind::StructureEquation => "structure equation",
        };
        write!(f, "{kind}: {}", self.detail)
    }
}

type ActionIndex<'a> = BTreeMap<(&'a str, &'a [AlgebraElement]), Vec<(AlgebraElement, &'a str)>>;

impl TypeDAModule {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_generator(&mut self, name: impl Into<String>, left: Idempotent, right: Idempotent) -> Result<()> {
        let name = name.into();
        if self.generators.contains_key(&name) {
            return Err(Error::DuplicateGenerator(name));
        }
        self.generators.insert(name, DAIdempotents { left, right });
        Ok(())
    }

    pub fn toggle_action(&mut self, action: DAAction) {
        if !self.actions.remove(&action) {
            self.actions.insert(action);
        }
    }

    pub fn generators(&self) -> &BTreeMap<String, DAIdempotents> {
        &self.generators
    }

    pub fn idempotents(&self, name: &str) -> Option<DAIdempotents> {
        self.generators.get(name).copied()
    }

    pub fn actions(&self) -> impl Iterator<Item = &DAAction> {
        self.actions.iter()
    }

    pub fn contains(&self, action: &DAAction) -> bool {
        self.actions.contains(action)
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn action_count(&self) -> usize {
        self.actions.len()
    }

    pub fn max_arity(&self) -> usize {
        self.actions.iter().map(|a| a.args.len()).max().unwrap_or(0)
    }

    /// Graphviz rendering; each edge is labeled `args ; coefficient`.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph {\n");
        for (n, i) in &self.generators {
            writeln!(s, "  \"{}\" [label=\"{} ({}/{})\"];", escape(n), escape(n), i.left, i.right).unwrap();
        }
        for a in &self.actions {
            let args: Vec<&str> = a.args.iter().map(|x| x.as_str()).collect();
            writeln!(
                s,
                "  \"{}\" -> \"{}\" [label=\"{} ; {}\"];",
                escape(&a.input),
                escape(&a.output),
                args.join(","),
                a.coeff
            )
            .unwrap();
        }
        s.push_str("}\n");
        s
    }

    pub fn rename(&self, f: impl Fn(&str) -> String) -> Result<TypeDAModule> {
        let mut out = TypeDAModule::new();
        for (n, i) in &self.generators {
            out.add_generator(f(n), i.left, i.right)?;
        }
        for a in &self.actions {
            out.toggle_action(DAAction {
                input: f(&a.input),
                args: a.args.clone(),
                coeff: a.coeff,
                output: f(&a.output),
            });
        }
        Ok(out)
    }

    fn index(&self) -> ActionIndex<'_> {
        let mut m: ActionIndex<'_> = BTreeMap::new();
        for a in &self.actions {
            m.entry((a.input.as_str(), a.args.as_slice()))
                .or_default()
                .push((a.coeff, a.output.as_str()));
        }
        m
    }

    fn check_action(&self, a: &DAAction) -> Option<DAViolation> {
        let bad = |kind, why: &str| {
            Some(DAViolation {
                kind,
                detail: format!("{a}: {why}"),
            })
        };
        let (Some(x), Some(y)) = (self.idempotents(&a.input), self.idempotents(&a.output)) else {
            return bad(DAViolationKind::UnknownGenerator, "endpoint missing");
        };
        if a.args.iter().any(|e| !e.is_chord()) {
            return bad(DAViolationKind::BadArgument, "arguments must be chords");
        }
        if a.coeff.is_zero() {
            return bad(DAViolationKind::BadArgument, "zero coefficient");
        }
        let c = (a.coeff.left_idem().expect("nonzero"), a.coeff.right_idem().expect("nonzero"));
        if c != (x.left, y.left) {
            return bad(DAViolationKind::IdempotentMismatch, "coefficient does not match left idempotents");
        }
        let mut at = x.right;
        for e in &a.args {
            if e.left_idem().expect("chord") != at {
                return bad(DAViolationKind::IdempotentMismatch, "arguments do not chain");
            }
            at = e.right_idem().expect("chord");
        }
        if at != y.right {
            return bad(DAViolationKind::IdempotentMismatch, "arguments do not end at the output");
        }
        None
    }

    /// Checks idempotents of every action and the structure equations for
    /// every input sequence of length at most `bound`.
    pub fn validate(&self, bound: usize) -> Vec<DAViolation> {
        let out: Vec<DAViolation> = self.actions.iter().filter_map(|a| self.check_action(a)).collect();
        if !out.is_empty() {
            return out;
        }
        let index = self.index();
        let mut out = Vec::new();
        for (x, idem) in &self.generators {
            let mut seq = Vec::new();
            self.check_sequences(x, idem.right, bound, &mut seq, &index, &mut out);
        }
        out
    }

    /// `2 * max_arity + 1`.
    pub fn default_check_bound(&self) -> usize {
        2 * self.max_arity() + 1
    }

    pub fn is_valid(&self) -> bool {
        self.validate(self.default_check_bound()).is_empty()
    }

    fn check_sequences(
        &self,
        x: &str,
        at: Idempotent,
        bound: usize,
        seq: &mut Vec<AlgebraElement>,
        index: &ActionIndex<'_>,
        out: &mut Vec<DAViolation>,
    ) {
        let terms = structure_terms(x, seq, index);
        for ((c, z), n) in terms {
            if n % 2 == 1 {
                out.push(DAViolation {
                    kind: DAViolationKind::StructureEquation,
                    detail: format!("input {x} {seq:?}: {c} ⊗ {z} appears {n} times"),
                });
            }
        }
        if seq.len() == bound {
            return;
        }
        for e in AlgebraElement::CHORDS {
            if e.left_idem().expect("chord") == at {
                seq.push(e);
                self.check_sequences(x, e.right_idem().expect("chord"), bound, seq, index, out);
                seq.pop();
            }
        }
    }

    fn labeled_graph(&self) -> (Vec<&String>, LabeledGraph<DAIdempotents, ActionLabel>) {
        let names: Vec<&String> = self.generators.keys().collect();
        let pos: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let g = LabeledGraph {
            nodes: self.generators.values().copied().collect(),
            edges: self
                .actions
                .iter()
                .map(|a| (pos[a.input.as_str()], pos[a.output.as_str()], (a.args.clone(), a.coeff)))
                .collect(),
        };
        (names, g)
    }

    /// A generator bijection preserving both idempotents and carrying the
    /// action set exactly onto that of `other`.
    pub fn isomorphism(&self, other: &TypeDAModule) -> Option<BTreeMap<String, String>> {
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

    pub fn is_reduced(&self) -> bool {
        !self.actions.iter().any(DAAction::is_idempotent_differential)
    }

    /// Cancels the differential term `x -> ι ⊗ y`. Every zig-zag
    /// `a -> y <- x -> y <- … <- x -> b` becomes one action from `a` to `b`
    /// whose inputs are the concatenated inputs and whose coefficient is the
    /// product of the coefficients.
    pub fn cancel(&self, x: &str, y: &str, arity_cap: usize) -> Result<TypeDAModule> {
        let err = |reason: &str| Error::NotCancellable {
            from: x.to_string(),
            to: y.to_string(),
            reason: reason.to_string(),
        };
        if x == y {
            return Err(err("self-loop"));
        }
        let xi = self.idempotents(x).ok_or_else(|| err("unknown generator"))?;
        let killed = DAAction::new(x, &[], Idem(xi.left), y);
        if !self.actions.contains(&killed) {
            return Err(err("no idempotent differential term"));
        }
        let keep = |n: &str| n != x && n != y;
        let x_to_y: Vec<&DAAction> = self
            .actions
            .iter()
            .filter(|a| a.input == x && a.output == y && **a != killed)
            .collect();
        let x_out: Vec<&DAAction> = self.actions.iter().filter(|a| a.input == x && keep(&a.output)).collect();
        let mut out = self.clone();
        for a in self.actions.iter().filter(|a| a.output == y && keep(&a.input)) {
            let mut frontier = vec![(a.args.clone(), a.coeff)];
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for (args, c) in &frontier {
                    for b in &x_out {
                        let coeff = c.multiply(b.coeff);
                        if coeff.is_zero() {
                            continue;
                        }
                        let joined = [args.as_slice(), b.args.as_slice()].concat();
                        if joined.len() > arity_cap {
                            return Err(Error::ArityExceeded {
                                arity: joined.len(),
                                bound: arity_cap,
                            });
                        }
                        out.toggle_action(DAAction {
                            input: a.input.clone(),
                            args: joined,
                            coeff,
                            output: b.output.clone(),
                        });
                    }
                    for b in &x_to_y {
                        let coeff = c.multiply(b.coeff);
                        let joined = [args.as_slice(), b.args.as_slice()].concat();
                        if coeff.is_zero() {
                            continue;
                        }
                        if joined.len() > arity_cap {
                            return Err(Error::ArityExceeded {
                                arity: joined.len(),
                                bound: arity_cap,
                            });
                        }
                        next.push((joined, coeff));
                    }
                }
                frontier = next;
            }
        }
        out.actions.retain(|a| keep(&a.input) && keep(&a.output));
        out.generators.remove(x);
        out.generators.remove(y);
        Ok(out)
    }

    fn cancellable_terms(&self) -> Vec<(String, String)> {
        self.actions
            .iter()
            .filter(|a| a.is_idempotent_differential() && a.input != a.output)
            .map(|a| (a.input.clone(), a.output.clone()))
            .collect()
    }

    /// Cancels scripted pairs in order, or every idempotent differential term
    /// until none is left.
    pub fn reduce(&self, order: &ReductionOrder, arity_cap: usize) -> Result<(TypeDAModule, ReductionTrace)> {
        let mut m = self.clone();
        let mut trace = Vec::new();
        match order {
            ReductionOrder::Script(steps) => {
                for (x, y) in steps {
                    m = m.cancel(x, y, arity_cap)?;
                    trace.push((x.clone(), y.clone()));
                }
            }
            ReductionOrder::Lexicographic | ReductionOrder::Seeded(_) => {
                let mut rng = match order {
                    ReductionOrder::Seeded(s) => Some(ChaCha8Rng::seed_from_u64(*s)),
                    _ => None,
                };
                loop {
                    let eligible = m.cancellable_terms();
                    let pick = match rng.as_mut() {
                        Some(rng) => eligible.choose(rng).cloned(),
                        None => eligible.first().cloned(),
                    };
                    let Some((x, y)) = pick else { break };
                    m = m.cancel(&x, &y, arity_cap)?;
                    trace.push((x, y));
                }
            }
        }
        Ok((m, trace))
    }
}

/// Terms of the structure relation for input `x` and chords `seq`, with multiplicity.
fn structure_terms<'a>(
    x: &'a str,
    seq: &[AlgebraElement],
    index: &ActionIndex<'a>,
) -> BTreeMap<(AlgebraElement, &'a str), usize> {
    let mut terms: BTreeMap<(AlgebraElement, &'a str), usize> = BTreeMap::new();
    for l in 0..seq.len().saturating_sub(1) {
        let merged = seq[l].multiply(seq[l + 1]);
        if merged.is_zero() {
            continue;
        }
        let mut s = seq.to_vec();
        s.splice(l..l + 2, [merged]);
        for (c, z) in index.get(&(x, s.as_slice())).into_iter().flatten() {
            *terms.entry((*c, z)).or_default() += 1;
        }
    }
    for i in 0..=seq.len() {
        for (c1, y) in index.get(&(x, &seq[..i])).into_iter().flatten() {
            for (c2, z) in index.get(&(*y, &seq[i..])).into_iter().flatten() {
                let c = c1.multiply(*c2);
                if !c.is_zero() {
                    *terms.entry((c, z)).or_default() += 1;
                }
            }
        }
    }
    terms
}

fn tensor_name(a: &str, b: &str) -> String {
    format!("{a}⊗{b}")
}

/// `B ⊠ M`: generators `b⊗m` with `right(b) = idem(m)`, arrows from each
/// action of `B` fed with a path in `M` carrying exactly its arguments.
pub fn box_da_d(b: &TypeDAModule, m: &TypeDModule) -> Result<TypeDModule> {
    let mut out = TypeDModule::new();
    for (bn, bi) in &b.generators {
        for (mn, mi) in m.generators() {
            if bi.right == *mi {
                out.add_generator(tensor_name(bn, mn), bi.left)?;
            }
        }
    }
    let mut steps: BTreeMap<(&str, AlgebraElement), Vec<&str>> = BTreeMap::new();
    for a in m.arrows() {
        if m.idem(&a.from).is_none() || m.idem(&a.to).is_none() {
            return Err(Error::UnknownGenerator(format!("{} -> {}", a.from, a.to)));
        }
        if a.label.is_idempotent() {
            // Strict unitality: only the unit action sees an idempotent.
            for (bn, bi) in &b.generators {
                if bi.right == m.idem(&a.from).expect("checked") {
                    out.toggle_arrow(tensor_name(bn, &a.from), tensor_name(bn, &a.to), Idem(bi.left));
                }
            }
        } else {
            steps.entry((a.from.as_str(), a.label)).or_default().push(a.to.as_str());
        }
    }
    for action in &b.actions {
        let bi = b.generators.get(&action.input).ok_or_else(|| Error::UnknownGenerator(action.input.clone()))?;
        for (mn, mi) in m.generators() {
            if *mi != bi.right {
                continue;
            }
            let mut ends = vec![mn.as_str()];
            for arg in &action.args {
                ends = ends
                    .iter()
                    .flat_map(|e| steps.get(&(*e, *arg)).into_iter().flatten().copied())
                    .collect();
            }
            for e in ends {
                out.toggle_arrow(tensor_name(&action.input, mn), tensor_name(&action.output, e), action.coeff);
            }
        }
    }
    Ok(out)
}

/// `B ⊠ C` for two DA bimodules; `C` receives the inputs and feeds its
/// outputs to `B`.
pub fn box_da_da(b: &TypeDAModule, c: &TypeDAModule) -> Result<TypeDAModule> {
    let mut out = TypeDAModule::new();
    for (bn, bi) in &b.generators {
        for (cn, ci) in &c.generators {
            if bi.right == ci.left {
                out.add_generator(tensor_name(bn, cn), bi.left, ci.right)?;
            }
        }
    }
    let b_index = b.index();
    let mut c_out: BTreeMap<&str, Vec<&DAAction>> = BTreeMap::new();
    for a in &c.actions {
        c_out.entry(a.input.as_str()).or_default().push(a);
    }
    let depth = b.max_arity();
    for (bn, bi) in &b.generators {
        for (cn, ci) in &c.generators {
            if bi.right != ci.left {
                continue;
            }
            let source = tensor_name(bn, cn);
            // C-actions with an idempotent output pass straight through.
            for a in c_out.get(cn.as_str()).into_iter().flatten() {
                if a.coeff.is_idempotent() {
                    out.toggle_action(DAAction {
                        input: source.clone(),
                        args: a.args.clone(),
                        coeff: Idem(bi.left),
                        output: tensor_name(bn, &a.output),
                    });
                }
            }
            // Chains of C-actions with chord outputs, fed to one B-action.
            let mut chains: Vec<(Vec<AlgebraElement>, Vec<AlgebraElement>, &str)> = vec![(vec![], vec![], cn)];
            let mut all = chains.clone();
            for _ in 0..depth {
                let mut next = Vec::new();
                for (args, outs, end) in &chains {
                    for a in c_out.get(end).into_iter().flatten() {
                        if a.coeff.is_chord() {
                            let mut outs = outs.clone();
                            outs.push(a.coeff);
                            next.push(([args.as_slice(), a.args.as_slice()].concat(), outs, a.output.as_str()));
                        }
                    }
                }
                all.extend(next.iter().cloned());
                chains = next;
            }
            for (args, outs, end) in all {
                for (e, b2) in b_index.get(&(bn.as_str(), outs.as_slice())).into_iter().flatten() {
                    out.toggle_action(DAAction {
                        input: source.clone(),
                        args: args.clone(),
                        coeff: *e,
                        output: tensor_name(b2, end),
                    });
                }
            }
        }
    }
    Ok(out)
}

fn build(gens: &[(&str, Idempotent, Idempotent)], actions: &[(&str, &[AlgebraElement], AlgebraElement, &str)]) -> TypeDAModule {
    let mut m = TypeDAModule::new();
    for (n, l, r) in gens {
        m.add_generator(*n, *l, *r).expect("distinct names");
    }
    for (x, args, c, y) in actions {
        m.toggle_action(DAAction::new(*x, args, *c, *y));
    }
    m
}

const I0: AlgebraElement = AlgebraElement::IOTA0;
const I1: AlgebraElement = AlgebraElement::IOTA1;

/// The bimodule of the meridional Dehn twist.
pub fn tau_mu() -> TypeDAModule {
    build(
        &[("p", Iota0, Iota0), ("q", Iota1, Iota1), ("r", Iota1, Iota0)],
        &[
            ("p", &[Rho1], Rho1, "q"),
            ("p", &[Rho123], Rho123, "q"),
            ("p", &[Rho3, Rho23], Rho3, "q"),
            ("q", &[Rho23], Rho23, "q"),
            ("r", &[Rho3], I1, "q"),
            ("p", &[Rho12], Rho123, "r"),
            ("p", &[Rho3, Rho2], Rho3, "r"),
            ("q", &[Rho2], Rho23, "r"),
            ("r", &[], Rho2, "p"),
        ],
    )
}

/// The bimodule of the longitudinal Dehn twist.
pub fn tau_lambda() -> TypeDAModule {
    build(
        &[("p", Iota0, Iota0), ("q", Iota1, Iota1), ("s", Iota0, Iota1)],
        &[
            ("q", &[Rho2, Rho1], Rho2, "s"),
            ("q", &[Rho2, Rho123], Rho23, "q"),
            ("p", &[Rho12], Rho12, "p"),
            ("p", &[Rho3], Rho3, "q"),
            ("s", &[Rho2], I0, "p"),
            ("q", &[Rho2, Rho12], Rho2, "p"),
            ("p", &[Rho1], Rho12, "s"),
            ("p", &[Rho123], Rho123, "q"),
            ("s", &[], Rho1, "q"),
            ("s", &[Rho23], Rho3, "q"),
        ],
    )
}

/// The identity bimodule: `m(ι, a) = a ⊗ ι'` for every chord `a`.
pub fn identity() -> TypeDAModule {
    let name = |i: Idempotent| match i {
        Iota0 => "i0",
        Iota1 => "i1",
    };
    let mut m = TypeDAModule::new();
    for i in Idempotent::ALL {
        m.add_generator(name(i), i, i).expect("distinct names");
    }
    for a in AlgebraElement::CHORDS {
        let (l, r) = (a.left_idem().expect("chord"), a.right_idem().expect("chord"));
        m.toggle_action(DAAction::new(name(l), &[a], a, name(r)));
    }
    m
}

/// The bimodule of the elliptic involution, in its reduced eight-generator form.
pub fn elliptic() -> TypeDAModule {
    build(
        &[
            ("x1", Iota1, Iota0),
            ("x2", Iota0, Iota0),
            ("x3", Iota1, Iota0),
            ("u", Iota0, Iota1),
            ("v", Iota1, Iota1),
            ("y1", Iota1, Iota1),
            ("y2", Iota1, Iota1),
            ("y3", Iota0, Iota1),
        ],
        &[
            ("x3", &[], Rho2, "x2"),
            ("x2", &[], Rho1, "x1"),
            ("u", &[], Rho1, "y1"),
            ("u", &[], Rho3, "y2"),
            ("y2", &[], Rho2, "y3"),
            ("y3", &[], Rho1, "v"),
            ("x3", &[Rho12], I1, "x1"),
            ("y1", &[Rho23], I1, "v"),
            ("u", &[Rho23], I0, "y3"),
            ("x3", &[Rho1], I1, "y1"),
            ("y1", &[Rho2], I1, "x1"),
            ("u", &[Rho2], I0, "x2"),
            ("x3", &[Rho3], I1, "y2"),
            ("x2", &[Rho3], I0, "y3"),
            ("x1", &[Rho3], I1, "v"),
            ("x3", &[Rho123], I1, "v"),
        ],
    )
}

/// `((((τ_μ⊠τ_λ)⊠τ_μ)⊠τ_λ)⊠τ_μ)⊠τ_λ`, unreduced.
pub fn sixfold_twist_product() -> Result<TypeDAModule> {
    let (mu, lambda) = (tau_mu(), tau_lambda());
    let mut m = box_da_da(&mu, &lambda)?;
    for i in 0..4 {
        m = box_da_da(&m, if i % 2 == 0 { &mu } else { &lambda })?;
    }
    Ok(m)
}

/// The thirteen cancellations that take the sixfold product to eight generators.
pub fn elliptic_script() -> Vec<(String, String)> {
    [
        ("p⊗p⊗p⊗s⊗r⊗p", "p⊗p⊗p⊗p⊗p⊗p"),
        ("p⊗p⊗p⊗s⊗r⊗s", "p⊗p⊗p⊗p⊗p⊗s"),
        ("p⊗s⊗r⊗s⊗q⊗q", "p⊗p⊗p⊗s⊗q⊗q"),
        ("p⊗s⊗r⊗s⊗r⊗p", "p⊗s⊗r⊗p⊗p⊗p"),
        ("p⊗s⊗r⊗s⊗r⊗s", "p⊗s⊗r⊗p⊗p⊗s"),
        ("q⊗q⊗r⊗s⊗r⊗p", "q⊗q⊗r⊗p⊗p⊗p"),
        ("q⊗q⊗r⊗s⊗r⊗s", "q⊗q⊗r⊗p⊗p⊗s"),
        ("r⊗p⊗p⊗s⊗r⊗p", "r⊗p⊗p⊗p⊗p⊗p"),
        ("r⊗p⊗p⊗s⊗r⊗s", "r⊗p⊗p⊗p⊗p⊗s"),
        ("r⊗s⊗q⊗q⊗r⊗s", "q⊗q⊗r⊗s⊗q⊗q"),
        ("r⊗s⊗r⊗s⊗q⊗q", "r⊗p⊗p⊗s⊗q⊗q"),
        ("r⊗s⊗r⊗s⊗r⊗p", "r⊗s⊗r⊗p⊗p⊗p"),
        ("r⊗s⊗r⊗s⊗r⊗s", "r⊗s⊗r⊗p⊗p⊗s"),
    ]
    .iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect()
}

/// Names of the eight surviving generators of the scripted reduction.
pub fn elliptic_renaming() -> BTreeMap<String, String> {
    [
        ("r⊗s⊗q⊗q⊗r⊗p", "x3"),
        ("q⊗q⊗q⊗q⊗r⊗p", "x1"),
        ("p⊗s⊗q⊗q⊗r⊗p", "x2"),
        ("q⊗q⊗q⊗q⊗q⊗q", "v"),
        ("p⊗s⊗q⊗q⊗r⊗s", "u"),
        ("p⊗s⊗q⊗q⊗q⊗q", "y3"),
        ("r⊗s⊗q⊗q⊗q⊗q", "y2"),
        ("q⊗q⊗q⊗q⊗r⊗s", "y1"),
    ]
    .iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect()
}

/// The sixfold product reduced by the scripted cancellations and renamed.
pub fn build_elliptic(script: Option<&[(String, String)]>) -> Result<TypeDAModule> {
    let six = sixfold_twist_product()?;
    let order = match script {
        Some(s) => ReductionOrder::Script(s.to_vec()),
        None => ReductionOrder::Lexicographic,
    };
    let (reduced, _) = six.reduce(&order, DEFAULT_ARITY_CAP)?;
    if script.is_none() {
        return Ok(reduced);
    }
    let names = elliptic_renaming();
    reduced.rename(|n| names.get(n).cloned().unwrap_or_else(|| n.to_string()))
}

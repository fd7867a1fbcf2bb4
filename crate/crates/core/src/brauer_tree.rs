//! Planar embedded Brauer trees.
//!
//! A tree has `e` edges and `e + 1` vertices, an optional exceptional vertex
//! of multiplicity `m > 1`, and at every vertex a cyclic ordering of its
//! neighbours. The numerical constraints are `e * m = p^ell - 1` and
//! `e | p - 1`.
//!
//! "Similar" is implemented as isomorphism of the underlying abstract trees
//! sending exceptional vertex to exceptional vertex, with equal
//! multiplicities. This is a stand-in for Feit's notion, which may carry
//! more structure. Planar isomorphism additionally preserves the cyclic
//! orderings; embeddings are oriented, so mirror images are not identified.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::block_analysis::WResult;
use crate::{Error, GroupSpec, Result, Sign};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrauerTree {
    pub label: Option<String>,
    pub group: GroupSpec,
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
    /// Neighbours of each vertex in cyclic order.
    pub orders: BTreeMap<String, Vec<String>>,
    pub exceptional: Option<String>,
    pub multiplicity: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateVertex(String),
    UnknownVertex {
        edge: usize,
        vertex: String,
    },
    SelfLoop(String),
    DuplicateEdge(String, String),
    NoEdges,
    Cycle,
    Disconnected,
    Numerology {
        e: usize,
        m: BigUint,
        order_minus_one: BigUint,
    },
    InertialIndex {
        e: usize,
        p: u64,
    },
    ZeroMultiplicity,
    MultiplicityWithoutExceptional(BigUint),
    ExceptionalWithoutMultiplicity(String),
    UnknownExceptional(String),
    CyclicOrder {
        vertex: String,
        reason: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateVertex(v) => write!(f, "duplicate vertex {v:?}"),
            Violation::UnknownVertex { edge, vertex } => {
                write!(f, "edge {edge} names unknown vertex {vertex:?}")
            }
            Violation::SelfLoop(v) => write!(f, "not a tree: self-loop at {v:?}"),
            Violation::DuplicateEdge(a, b) => write!(f, "not a tree: repeated edge {a:?}-{b:?}"),
            Violation::NoEdges => f.write_str("a Brauer tree needs at least one edge"),
            Violation::Cycle => f.write_str("not a tree: contains a cycle"),
            Violation::Disconnected => f.write_str("not a tree: disconnected"),
            Violation::Numerology {
                e,
                m,
                order_minus_one,
            } => {
                write!(
                    f,
                    "e*m != p^ell-1 ({e}*{m} = {} != {order_minus_one})",
                    m * *e
                )
            }
            Violation::InertialIndex { e, p } => {
                write!(f, "e does not divide p-1 ({e} does not divide {})", p - 1)
            }
            Violation::ZeroMultiplicity => f.write_str("multiplicity must be positive"),
            Violation::MultiplicityWithoutExceptional(m) => {
                write!(f, "multiplicity {m} > 1 requires an exceptional vertex")
            }
            Violation::ExceptionalWithoutMultiplicity(v) => {
                write!(f, "exceptional vertex {v:?} requires multiplicity > 1")
            }
            Violation::UnknownExceptional(v) => {
                write!(f, "exceptional vertex {v:?} is not a vertex")
            }
            Violation::CyclicOrder { vertex, reason } => {
                write!(f, "cyclic order at {vertex:?}: {reason}")
            }
        }
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl BrauerTree {
    /// Every failed invariant; empty iff the tree is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut index = BTreeMap::new();
        for v in &self.vertices {
            if index.insert(v.as_str(), index.len()).is_some() {
                out.push(Violation::DuplicateVertex(v.clone()));
            }
        }
        let n = index.len();

        let mut adjacency: Vec<BTreeSet<&str>> = vec![BTreeSet::new(); n];
        let mut uf: Vec<usize> = (0..n).collect();
        let mut cycle = false;
        let mut seen = BTreeSet::new();
        for (k, (a, b)) in self.edges.iter().enumerate() {
            let (Some(&ia), Some(&ib)) = (index.get(a.as_str()), index.get(b.as_str())) else {
                for v in [a, b] {
                    if !index.contains_key(v.as_str()) {
                        out.push(Violation::UnknownVertex {
                            edge: k,
                            vertex: v.clone(),
                        });
                    }
                }
                continue;
            };
            if ia == ib {
                out.push(Violation::SelfLoop(a.clone()));
                continue;
            }
            if !seen.insert((ia.min(ib), ia.max(ib))) {
                out.push(Violation::DuplicateEdge(a.clone(), b.clone()));
                continue;
            }
            adjacency[ia].insert(b);
            adjacency[ib].insert(a);
            let (ra, rb) = (find(&mut uf, ia), find(&mut uf, ib));
            if ra == rb {
                cycle = true;
            } else {
                uf[ra] = rb;
            }
        }
        let e = self.edges.len();
        if e == 0 {
            out.push(Violation::NoEdges);
        }
        if cycle {
            out.push(Violation::Cycle);
        }
        if n > 0 {
            let root = find(&mut uf, 0);
            if (1..n).any(|v| find(&mut uf, v) != root) {
                out.push(Violation::Disconnected);
            }
        }

        let p = self.group.p();
        let order_minus_one = self.group.order() - 1u32;
        if &self.multiplicity * e != order_minus_one {
            out.push(Violation::Numerology {
                e,
                m: self.multiplicity.clone(),
                order_minus_one,
            });
        }
        if e == 0 || !(p - 1).is_multiple_of(e as u64) {
            out.push(Violation::InertialIndex { e, p });
        }
        if self.multiplicity.is_zero() {
            out.push(Violation::ZeroMultiplicity);
        }
        match &self.exceptional {
            None if self.multiplicity > BigUint::one() => out.push(
                Violation::MultiplicityWithoutExceptional(self.multiplicity.clone()),
            ),
            Some(x) if !index.contains_key(x.as_str()) => {
                out.push(Violation::UnknownExceptional(x.clone()))
            }
            Some(x) if self.multiplicity <= BigUint::one() => {
                out.push(Violation::ExceptionalWithoutMultiplicity(x.clone()))
            }
            _ => {}
        }

        for (v, &iv) in &index {
            let reason = match self.orders.get(*v) {
                None => Some("missing".to_string()),
                Some(order) => {
                    let listed: BTreeSet<&str> = order.iter().map(String::as_str).collect();
                    if listed.len() != order.len() {
                        Some("repeats a neighbour".to_string())
                    } else if listed != adjacency[iv] {
                        Some(format!(
                            "lists {:?} but the incident edges go to {:?}",
                            order,
                            adjacency[iv].iter().collect::<Vec<_>>()
                        ))
                    } else {
                        None
                    }
                }
            };
            if let Some(reason) = reason {
                out.push(Violation::CyclicOrder {
                    vertex: v.to_string(),
                    reason,
                });
            }
        }
        for v in self.orders.keys() {
            if !index.contains_key(v.as_str()) {
                out.push(Violation::CyclicOrder {
                    vertex: v.clone(),
                    reason: "not a vertex".into(),
                });
            }
        }
        out
    }

    pub fn into_valid(self) -> std::result::Result<ValidTree, Vec<Violation>> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(violations);
        }
        let index: BTreeMap<String, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(k, v)| (v.clone(), k))
            .collect();
        let adj = self
            .vertices
            .iter()
            .map(|v| self.orders[v].iter().map(|w| index[w]).collect())
            .collect();
        let exceptional = self.exceptional.as_ref().map(|x| index[x]);
        Ok(ValidTree {
            tree: self,
            adj,
            exceptional,
        })
    }
}

/// A tree that passed [`BrauerTree::validate`], with indexed adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidTree {
    tree: BrauerTree,
    adj: Vec<Vec<usize>>,
    exceptional: Option<usize>,
}

impl ValidTree {
    pub fn tree(&self) -> &BrauerTree {
        &self.tree
    }

    pub fn into_tree(self) -> BrauerTree {
        self.tree
    }

    pub fn edge_count(&self) -> usize {
        self.tree.edges.len()
    }

    fn centers(&self) -> Vec<usize> {
        let n = self.adj.len();
        let mut degree: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
        let mut remaining = n;
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &v in &layer {
                for &w in &self.adj[v] {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
            layer = next;
        }
        layer
    }

    fn rooted_code(&self, root: usize, planar: bool) -> Vec<u8> {
        let n = self.adj.len();
        let mut parent = vec![usize::MAX; n];
        parent[root] = root;
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &self.adj[v] {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        let mut codes: Vec<Vec<u8>> = vec![Vec::new(); n];
        for &v in order.iter().rev() {
            let around = &self.adj[v];
            let children: Vec<usize> = if v == root {
                around.clone()
            } else {
                // Read the rotation starting just after the parent edge.
                let at = around
                    .iter()
                    .position(|&w| w == parent[v])
                    .expect("parent is adjacent");
                around[at + 1..]
                    .iter()
                    .chain(&around[..at])
                    .copied()
                    .collect()
            };
            let mut kids: Vec<Vec<u8>> = children
                .iter()
                .map(|&c| std::mem::take(&mut codes[c]))
                .collect();
            if !planar {
                kids.sort();
            } else if v == root && !kids.is_empty() {
                let best = (0..kids.len())
                    .min_by(|&a, &b| {
                        let ra = kids[a..].iter().chain(&kids[..a]);
                        let rb = kids[b..].iter().chain(&kids[..b]);
                        ra.cmp(rb)
                    })
                    .unwrap_or(0);
                kids.rotate_left(best);
            }
            let mut code = Vec::with_capacity(2 + kids.iter().map(Vec::len).sum::<usize>());
            code.push(b'(');
            kids.iter().for_each(|k| code.extend_from_slice(k));
            code.push(b')');
            codes[v] = code;
        }
        std::mem::take(&mut codes[root])
    }

    /// Canonical encoding, rooted at the exceptional vertex or else at the
    /// smaller of the center codes.
    pub fn canonical_code(&self, planar: bool) -> Vec<u8> {
        match self.exceptional {
            Some(x) => self.rooted_code(x, planar),
            None => self
                .centers()
                .into_iter()
                .map(|c| self.rooted_code(c, planar))
                .min()
                .expect("a tree has a center"),
        }
    }

    fn invariants_match(&self, other: &ValidTree) -> bool {
        self.edge_count() == other.edge_count()
            && self.exceptional.is_some() == other.exceptional.is_some()
            && self.tree.multiplicity == other.tree.multiplicity
    }
}

/// Isomorphism of the unembedded trees respecting the exceptional vertex
/// and its multiplicity.
pub fn similar(a: &ValidTree, b: &ValidTree) -> bool {
    a.invariants_match(b) && a.canonical_code(false) == b.canonical_code(false)
}

/// Isomorphism preserving the cyclic orderings (rotations only).
pub fn planar_isomorphic(a: &ValidTree, b: &ValidTree) -> bool {
    a.invariants_match(b) && a.canonical_code(true) == b.canonical_code(true)
}

/// Same defect group, similar trees and isomorphic `W`.
pub fn strongly_similar(a: (&ValidTree, &WResult), b: (&ValidTree, &WResult)) -> bool {
    a.0.tree.group == b.0.tree.group
        && a.1.group() == b.1.group()
        && similar(a.0, b.0)
        && a.1.jordan == b.1.jordan
}

/// A sign on each vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeFunction {
    pub signs: BTreeMap<String, Sign>,
}

impl TypeFunction {
    /// Adjacent vertices carry opposite signs.
    pub fn is_admissible(&self, tree: &BrauerTree) -> bool {
        tree.vertices.iter().all(|v| self.signs.contains_key(v))
            && tree
                .edges
                .iter()
                .all(|(a, b)| match (self.signs.get(a), self.signs.get(b)) {
                    (Some(x), Some(y)) => x != y,
                    _ => false,
                })
    }
}

/// The two proper 2-colourings, the first one putting `+` on the first
/// listed vertex.
pub fn type_functions(t: &ValidTree) -> [TypeFunction; 2] {
    let n = t.adj.len();
    let mut colour: Vec<Option<Sign>> = vec![None; n];
    let mut stack = vec![0];
    colour[0] = Some(Sign::Plus);
    while let Some(v) = stack.pop() {
        let c = colour[v].expect("coloured before push");
        for &w in &t.adj[v] {
            if colour[w].is_none() {
                colour[w] = Some(-c);
                stack.push(w);
            }
        }
    }
    let first: BTreeMap<String, Sign> = t
        .tree
        .vertices
        .iter()
        .zip(&colour)
        .map(|(v, c)| (v.clone(), c.expect("tree is connected")))
        .collect();
    let second = first.iter().map(|(v, &s)| (v.clone(), -s)).collect();
    [
        TypeFunction { signs: first },
        TypeFunction { signs: second },
    ]
}

/// The star with `e` edges, centre `"0"` and leaves `"1"..="e"` in cyclic
/// order; the centre is exceptional when `m > 1`.
pub fn star(e: usize, m: BigUint, group: GroupSpec) -> Result<ValidTree> {
    if e == 0 || !(group.p() - 1).is_multiple_of(e as u64) {
        return Err(Error::StarConstraint(format!(
            "e = {e} must divide p - 1 = {}",
            group.p() - 1
        )));
    }
    if &m * e != group.order() - 1u32 {
        return Err(Error::StarConstraint(format!(
            "e * m = {} != p^ell - 1",
            &m * e
        )));
    }
    let centre = "0".to_string();
    let leaves: Vec<String> = (1..=e).map(|k| k.to_string()).collect();
    let mut orders = BTreeMap::new();
    orders.insert(centre.clone(), leaves.clone());
    for l in &leaves {
        orders.insert(l.clone(), vec![centre.clone()]);
    }
    let tree = BrauerTree {
        label: None,
        vertices: std::iter::once(centre.clone())
            .chain(leaves.iter().cloned())
            .collect(),
        edges: leaves.iter().map(|l| (centre.clone(), l.clone())).collect(),
        orders,
        exceptional: (m > BigUint::one()).then(|| centre.clone()),
        multiplicity: m,
        group,
    };
    tree.into_valid().map_err(|v| {
        Error::InvalidTree(
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("; "),
        )
    })
}

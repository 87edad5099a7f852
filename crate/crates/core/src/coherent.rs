//! Iterated 2-WL refinement of all ordered vertex pairs.
//!
//! Layer 0 colours a pair `(u, v)` by whether it is diagonal, whether it
//! crosses the two sides of a union, and the full atomic type of `(u, v)`:
//! the relations holding on `(u,v)`, `(v,u)`, `(u,u)` and `(v,v)`. Layer
//! `i + 1` colours `(u, v)` by its layer-`i` colour together with the multiset
//! of `(c(u,x), c(x,v))` over all middle vertices `x`. Colour ids in every
//! layer are assigned in sorted key order, so they are canonical. Refinement
//! stops at the first layer that splits nothing; that layer is the coarsest
//! coherent configuration refining the input.

use std::collections::BTreeMap;
use std::collections::HashMap;

use petgraph::graph::{Graph, NodeIndex};

use crate::structures::{Side, Structure, UnionStructure};

pub type ColorId = u32;

/// `(c(u,x), c(x,v))` with its multiplicity.
type Signature = Vec<(ColorId, ColorId, u32)>;

#[derive(Clone, Debug)]
pub struct ColorHistory {
    n: usize,
    left_size: Option<usize>,
    layers: Vec<Vec<ColorId>>,
    counts: Vec<usize>,
    parent: Vec<Vec<ColorId>>,
    converse: Vec<ColorId>,
    diagonal: Vec<bool>,
    crossing: Vec<bool>,
    rep: Vec<(u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationWitness {
    /// First layer where the two pairs differ.
    pub iteration: usize,
    /// Witness colours of layer `iteration - 1`, absent for layer-0 splits.
    pub witness: Option<(ColorId, ColorId)>,
    pub counts: (u32, u32),
}

pub fn refine(s: &Structure) -> ColorHistory {
    build(s, None)
}

pub fn refine_union(u: &UnionStructure) -> ColorHistory {
    build(&u.structure, Some(u.left_size))
}

fn build(s: &Structure, left_size: Option<usize>) -> ColorHistory {
    let n = s.len();
    let (types, _) = s.membership_table();
    let t = |a: usize, b: usize| types[a * n + b];
    let crosses = |a: usize, b: usize| left_size.is_some_and(|l| (a < l) != (b < l));
    let keys0: Vec<(bool, bool, u32, u32, u32, u32)> = (0..n * n)
        .map(|i| {
            let (a, b) = (i / n, i % n);
            (a == b, crosses(a, b), t(a, b), t(b, a), t(a, a), t(b, b))
        })
        .collect();
    let mut layers = vec![canonical_ids(&keys0)];
    let mut counts = vec![count_colors(&layers[0])];
    let mut parent = vec![Vec::new()];
    loop {
        let cur = layers.last().unwrap();
        let sigs = signatures(cur, n);
        let keyed: Vec<(ColorId, &Signature)> = cur.iter().copied().zip(sigs.iter()).collect();
        let next = canonical_ids(&keyed);
        let k = count_colors(&next);
        if k == *counts.last().unwrap() {
            break;
        }
        let mut par = vec![0; k];
        for (i, &c) in next.iter().enumerate() {
            par[c as usize] = cur[i];
        }
        layers.push(next);
        counts.push(k);
        parent.push(par);
    }
    let stable = layers.last().unwrap();
    let k = *counts.last().unwrap();
    let mut rep = vec![(u32::MAX, u32::MAX); k];
    for i in (0..n * n).rev() {
        rep[stable[i] as usize] = ((i / n) as u32, (i % n) as u32);
    }
    let converse = rep.iter().map(|&(a, b)| stable[b as usize * n + a as usize]).collect();
    let diagonal = rep.iter().map(|&(a, b)| a == b).collect();
    let crossing = rep.iter().map(|&(a, b)| crosses(a as usize, b as usize)).collect();
    ColorHistory {
        n,
        left_size,
        layers,
        counts,
        parent,
        converse,
        diagonal,
        crossing,
        rep,
    }
}

fn count_colors(layer: &[ColorId]) -> usize {
    layer.iter().max().map_or(0, |&m| m as usize + 1)
}

/// Dense ids in sorted key order.
fn canonical_ids<K: Ord + Clone>(keys: &[K]) -> Vec<ColorId> {
    let distinct: BTreeMap<&K, ColorId> = keys.iter().map(|k| (k, 0)).collect();
    let ids: BTreeMap<&K, ColorId> = distinct.into_keys().enumerate().map(|(i, k)| (k, i as ColorId)).collect();
    keys.iter().map(|k| ids[k]).collect()
}

fn signature_row(cur: &[ColorId], n: usize, u: usize) -> Vec<Signature> {
    let mut buf: Vec<(ColorId, ColorId)> = Vec::with_capacity(n);
    (0..n)
        .map(|v| {
            buf.clear();
            buf.extend((0..n).map(|x| (cur[u * n + x], cur[x * n + v])));
            buf.sort_unstable();
            let mut sig: Signature = Vec::new();
            for &(a, b) in &buf {
                match sig.last_mut() {
                    Some(last) if last.0 == a && last.1 == b => last.2 += 1,
                    _ => sig.push((a, b, 1)),
                }
            }
            sig
        })
        .collect()
}

#[cfg(feature = "parallel")]
fn signatures(cur: &[ColorId], n: usize) -> Vec<Signature> {
    use rayon::prelude::*;
    (0..n).into_par_iter().flat_map_iter(|u| signature_row(cur, n, u)).collect()
}

#[cfg(not(feature = "parallel"))]
fn signatures(cur: &[ColorId], n: usize) -> Vec<Signature> {
    (0..n).flat_map(|u| signature_row(cur, n, u)).collect()
}

impl ColorHistory {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn left_size(&self) -> Option<usize> {
        self.left_size
    }

    pub fn num_layers(&self) -> usize {
        self.layers.len()
    }

    pub fn stable_index(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn num_colors(&self) -> usize {
        *self.counts.last().unwrap()
    }

    pub fn layer_colors(&self, layer: usize) -> usize {
        self.counts[layer]
    }

    pub fn layer(&self, layer: usize) -> &[ColorId] {
        &self.layers[layer]
    }

    pub fn color_at(&self, layer: usize, u: u32, v: u32) -> ColorId {
        self.layers[layer][u as usize * self.n + v as usize]
    }

    /// Stable colour of `(u, v)`.
    pub fn color(&self, u: u32, v: u32) -> ColorId {
        self.color_at(self.stable_index(), u, v)
    }

    /// Colour of `c` (a colour of `layer`) in layer `layer - 1`.
    pub fn parent(&self, layer: usize, c: ColorId) -> Option<ColorId> {
        (layer > 0).then(|| self.parent[layer][c as usize])
    }

    /// Deterministic name of a colour of some layer.
    pub fn canonical_key(&self, layer: usize, c: ColorId) -> String {
        if layer == self.stable_index() {
            format!("c{c}")
        } else {
            format!("L{layer}.c{c}")
        }
    }

    /// Parses `c<id>` or a bare id naming a stable colour.
    pub fn resolve_key(&self, key: &str) -> Option<ColorId> {
        let id: ColorId = key.strip_prefix('c').unwrap_or(key).parse().ok()?;
        ((id as usize) < self.num_colors()).then_some(id)
    }

    pub fn converse(&self, c: ColorId) -> ColorId {
        self.converse[c as usize]
    }

    pub fn is_diagonal(&self, c: ColorId) -> bool {
        self.diagonal[c as usize]
    }

    pub fn is_crossing(&self, c: ColorId) -> bool {
        self.crossing[c as usize]
    }

    /// Least pair (row-major) of a stable colour.
    pub fn representative(&self, c: ColorId) -> (u32, u32) {
        self.rep[c as usize]
    }

    pub fn pairs_of(&self, c: ColorId) -> Vec<(u32, u32)> {
        let stable = self.layers.last().unwrap();
        (0..self.n * self.n)
            .filter(|&i| stable[i] == c)
            .map(|i| ((i / self.n) as u32, (i % self.n) as u32))
            .collect()
    }

    /// Number of pairs of stable colour `c` inside each side (left, right).
    pub fn side_counts(&self, c: ColorId) -> (usize, usize) {
        let l = self.left_size.unwrap_or(self.n);
        let mut out = (0, 0);
        for (u, v) in self.pairs_of(c) {
            match ((u as usize) < l, (v as usize) < l) {
                (true, true) => out.0 += 1,
                (false, false) => out.1 += 1,
                _ => {}
            }
        }
        out
    }

    /// First layer where `a` and `b` have different colours.
    pub fn separation_layer(&self, a: (u32, u32), b: (u32, u32)) -> Option<usize> {
        let differ = |i: usize| self.color_at(i, a.0, a.1) != self.color_at(i, b.0, b.1);
        if !differ(self.stable_index()) {
            return None;
        }
        // Refinement is monotone, so "differ" is upward closed.
        let (mut lo, mut hi) = (0, self.stable_index());
        while lo < hi {
            let mid = (lo + hi) / 2;
            if differ(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Some(lo)
    }

    /// `#{x in xs : c(u,x) = s1, c(x,v) = s2}` per `(s1, s2)` at `layer`.
    pub fn path_counts(
        &self,
        layer: usize,
        (u, v): (u32, u32),
        xs: impl Iterator<Item = u32>,
    ) -> BTreeMap<(ColorId, ColorId), u32> {
        let mut out = BTreeMap::new();
        for x in xs {
            *out.entry((self.color_at(layer, u, x), self.color_at(layer, x, v))).or_insert(0) += 1;
        }
        out
    }

    pub fn first_separation(&self, a: (u32, u32), b: (u32, u32)) -> Option<SeparationWitness> {
        let iteration = self.separation_layer(a, b)?;
        if iteration == 0 {
            return Some(SeparationWitness {
                iteration,
                witness: None,
                counts: (0, 0),
            });
        }
        let all = || 0..self.n as u32;
        let ca = self.path_counts(iteration - 1, a, all());
        let cb = self.path_counts(iteration - 1, b, all());
        let (key, counts) = first_difference(&ca, &cb).expect("a split layer has a differing count");
        Some(SeparationWitness {
            iteration,
            witness: Some(key),
            counts,
        })
    }

    /// SCCs of the digraph formed by the stable colour `c`; a single vertex
    /// counts only if it carries a loop. Members ascending, components by
    /// least member.
    pub fn sccs_of_color(&self, c: ColorId) -> Vec<Vec<u32>> {
        let mut g: Graph<(), ()> = Graph::with_capacity(self.n, 0);
        let nodes: Vec<NodeIndex> = (0..self.n).map(|_| g.add_node(())).collect();
        for (u, v) in self.pairs_of(c) {
            g.add_edge(nodes[u as usize], nodes[v as usize], ());
        }
        let mut out: Vec<Vec<u32>> = petgraph::algo::tarjan_scc(&g)
            .into_iter()
            .map(|comp| {
                let mut m: Vec<u32> = comp.into_iter().map(|x| x.index() as u32).collect();
                m.sort_unstable();
                m
            })
            .filter(|m| m.len() > 1 || self.color(m[0], m[0]) == c)
            .collect();
        out.sort();
        out
    }

    /// Vertices of `side` (all vertices for a single structure).
    pub fn side_vertices(&self, side: Side) -> std::ops::Range<u32> {
        let l = self.left_size.unwrap_or(self.n) as u32;
        match side {
            Side::Left => 0..l,
            Side::Right => l..self.n as u32,
        }
    }
}

/// Least key whose counts differ, with both counts.
pub fn first_difference(
    a: &BTreeMap<(ColorId, ColorId), u32>,
    b: &BTreeMap<(ColorId, ColorId), u32>,
) -> Option<((ColorId, ColorId), (u32, u32))> {
    let mut keys: Vec<&(ColorId, ColorId)> = a.keys().chain(b.keys()).collect();
    keys.sort_unstable();
    keys.dedup();
    keys.into_iter().find_map(|k| {
        let (x, y) = (a.get(k).copied().unwrap_or(0), b.get(k).copied().unwrap_or(0));
        (x != y).then_some((*k, (x, y)))
    })
}

/// Intersection numbers of the stable layer over middle vertices `xs`, one
/// row per colour (computed at the colour's representative pair).
pub fn intersection_rows(h: &ColorHistory, colors: &[ColorId], reps: &[(u32, u32)], xs: std::ops::Range<u32>) -> HashMap<ColorId, BTreeMap<(ColorId, ColorId), u32>> {
    colors
        .iter()
        .zip(reps)
        .map(|(&c, &r)| (c, h.path_counts(h.stable_index(), r, xs.clone())))
        .collect()
}

//! Brute-force validation of a colouring of `V²` as a coherent configuration
//! refining a structure, together with the structural facts about SCCs of a
//! colour that the lifting step relies on.
//!
//! Everything here recounts from scratch; nothing is taken from the
//! refinement beyond the colour of each pair.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use petgraph::graph::{Graph, NodeIndex};

use crate::coherent::{ColorHistory, ColorId};
use crate::structures::Structure;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    /// First offending tuple, for failed checks.
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        self.checks
            .iter()
            .map(|c| match &c.counterexample {
                Some(w) => format!("FAIL {} {w}\n", c.name),
                None => format!("{} {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name),
            })
            .collect()
    }
}

fn verdict(name: &str, failure: Option<String>) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        pass: failure.is_none(),
        counterexample: failure,
    }
}

/// A colouring of all ordered pairs, `colour[u * n + v]`.
struct Colouring<'a> {
    n: usize,
    colour: &'a [ColorId],
}

impl Colouring<'_> {
    fn at(&self, u: u32, v: u32) -> ColorId {
        self.colour[u as usize * self.n + v as usize]
    }

    fn classes(&self) -> BTreeMap<ColorId, Vec<(u32, u32)>> {
        let mut out: BTreeMap<ColorId, Vec<(u32, u32)>> = BTreeMap::new();
        for i in 0..self.n * self.n {
            out.entry(self.colour[i]).or_default().push(((i / self.n) as u32, (i % self.n) as u32));
        }
        out
    }

    fn profile(&self, u: u32, v: u32) -> BTreeMap<(ColorId, ColorId), u32> {
        let mut out = BTreeMap::new();
        for x in 0..self.n as u32 {
            *out.entry((self.at(u, x), self.at(x, v))).or_insert(0) += 1;
        }
        out
    }
}

/// Checks that `colour` is a coherent configuration refining `s` and that
/// the SCC facts hold for every colour.
pub fn validate_colouring(s: &Structure, colour: &[ColorId]) -> ValidationReport {
    let n = s.len();
    let mut checks = vec![verdict(
        "partition",
        (colour.len() != n * n).then(|| format!("expected {} pairs, got {}", n * n, colour.len())),
    )];
    if colour.len() != n * n {
        return ValidationReport { checks };
    }
    let col = Colouring { n, colour };
    let classes = col.classes();

    checks.push(verdict(
        "diagonal",
        classes.iter().find_map(|(c, ps)| {
            let d = ps.iter().filter(|(a, b)| a == b).count();
            (d != 0 && d != ps.len()).then(|| format!("colour {c} mixes diagonal and off-diagonal pairs"))
        }),
    ));
    checks.push(verdict(
        "converse",
        classes.iter().find_map(|(c, ps)| {
            let conv = col.at(ps[0].1, ps[0].0);
            ps.iter()
                .find(|&&(a, b)| col.at(b, a) != conv)
                .map(|&(a, b)| format!("colour {c}: ({},{}) vs ({a},{b})", ps[0].0, ps[0].1))
        }),
    ));
    checks.push(verdict(
        "intersection-numbers",
        classes.iter().find_map(|(c, ps)| {
            let first = col.profile(ps[0].0, ps[0].1);
            ps.iter().skip(1).find_map(|&(a, b)| {
                let p = col.profile(a, b);
                (p != first).then(|| {
                    let key = crate::coherent::first_difference(&first, &p).map(|(k, _)| k);
                    format!("colour {c}: ({},{}) vs ({a},{b}) at {key:?}", ps[0].0, ps[0].1)
                })
            })
        }),
    ));
    checks.push(verdict(
        "refines-relations",
        s.relations().iter().find_map(|r| {
            classes.iter().find_map(|(c, ps)| {
                let inside = ps.iter().filter(|p| r.pairs.contains(p)).count();
                (inside != 0 && inside != ps.len()).then(|| format!("colour {c} straddles relation {}", r.name))
            })
        }),
    ));
    checks.push(verdict(
        "endpoint-colours",
        classes.iter().find_map(|(c, ps)| endpoint_failure(&col, *c, ps)),
    ));
    checks.extend(scc_checks(s, &col, &classes));
    ValidationReport { checks }
}

fn endpoint_failure(col: &Colouring<'_>, c: ColorId, ps: &[(u32, u32)]) -> Option<String> {
    let ends = |&(a, b): &(u32, u32)| (col.at(a, a), col.at(b, b));
    let first = ends(&ps[0]);
    ps.iter()
        .find(|p| ends(p) != first)
        .map(|&(a, b)| format!("colour {c}: ({},{}) vs ({a},{b})", ps[0].0, ps[0].1))
}

/// SCCs of the digraph of one colour; loopless singletons excluded.
fn sccs(n: usize, pairs: &[(u32, u32)]) -> Vec<Vec<u32>> {
    let mut g: Graph<(), ()> = Graph::with_capacity(n, pairs.len());
    let nodes: Vec<NodeIndex> = (0..n).map(|_| g.add_node(())).collect();
    for &(u, v) in pairs {
        g.add_edge(nodes[u as usize], nodes[v as usize], ());
    }
    let mut out: Vec<Vec<u32>> = petgraph::algo::tarjan_scc(&g)
        .into_iter()
        .map(|comp| {
            let mut m: Vec<u32> = comp.into_iter().map(|x| x.index() as u32).collect();
            m.sort_unstable();
            m
        })
        .filter(|m| m.len() > 1 || pairs.contains(&(m[0], m[0])))
        .collect();
    out.sort();
    out
}

fn scc_checks(s: &Structure, col: &Colouring<'_>, classes: &BTreeMap<ColorId, Vec<(u32, u32)>>) -> Vec<CheckResult> {
    let n = col.n;
    let mut single = None;
    let mut equal = None;
    let mut union = None;
    let mut vertex_edges = None;
    let mut pair_edges = None;
    for (&r, ps) in classes {
        let comps = sccs(n, ps);
        if comps.is_empty() {
            continue;
        }
        let mut which = vec![usize::MAX; n];
        for (i, m) in comps.iter().enumerate() {
            for &v in m {
                which[v as usize] = i;
            }
        }
        let inside = |v: u32| which[v as usize] != usize::MAX;

        if single.is_none() {
            let diag: BTreeSet<ColorId> = comps.iter().flatten().map(|&v| col.at(v, v)).collect();
            single = if diag.len() != 1 {
                Some(format!("colour {r}: SCC vertices carry diagonal colours {diag:?}"))
            } else {
                let p = *diag.first().unwrap();
                (0..n as u32)
                    .find(|&v| col.at(v, v) == p && !inside(v))
                    .map(|v| format!("colour {r}: vertex {v} has the SCC diagonal colour but lies in no SCC"))
            };
        }
        if equal.is_none() && comps.iter().any(|m| m.len() != comps[0].len()) {
            equal = Some(format!("colour {r}: SCC sizes {:?}", comps.iter().map(Vec::len).collect::<Vec<_>>()));
        }
        if union.is_none() {
            // Every colour lies entirely inside or entirely outside R^scc.
            union = classes.iter().find_map(|(&t, tps)| {
                let same = |&(a, b): &(u32, u32)| inside(a) && which[a as usize] == which[b as usize];
                let k = tps.iter().filter(|p| same(p)).count();
                (k != 0 && k != tps.len()).then(|| format!("colour {r}: colour {t} straddles the SCC pairs"))
            });
        }
        for rel in s.relations() {
            let e = &rel.pairs;
            if vertex_edges.is_none() {
                // Colour of (x, z) determines whether x has an edge into, or
                // out of, the SCC of z.
                let into = |x: u32, z: u32| comps[which[z as usize]].iter().any(|&y| e.contains(&(x, y)));
                let from = |x: u32, z: u32| comps[which[z as usize]].iter().any(|&y| e.contains(&(y, x)));
                vertex_edges = constant_per_colour(col, |x, z| inside(z).then(|| (into(x, z), from(x, z))))
                    .map(|w| format!("colour {r}, relation {}: {w}", rel.name));
            }
            if pair_edges.is_none() {
                let between = |a: u32, b: u32| {
                    comps[which[a as usize]]
                        .iter()
                        .any(|&x| comps[which[b as usize]].iter().any(|&y| e.contains(&(x, y))))
                };
                pair_edges = constant_per_colour(col, |a, b| (inside(a) && inside(b)).then(|| between(a, b)))
                    .map(|w| format!("colour {r}, relation {}: {w}", rel.name));
            }
        }
    }
    vec![
        verdict("scc-single-diagonal-colour", single),
        verdict("scc-equal-size", equal),
        verdict("scc-colour-union", union),
        verdict("scc-vertex-edges", vertex_edges),
        verdict("scc-pair-edges", pair_edges),
    ]
}

/// First colour on which `f` takes two different defined values.
fn constant_per_colour<T: PartialEq + Copy>(col: &Colouring<'_>, f: impl Fn(u32, u32) -> Option<T>) -> Option<String> {
    let mut seen: HashMap<ColorId, ((u32, u32), T)> = HashMap::new();
    for a in 0..col.n as u32 {
        for b in 0..col.n as u32 {
            let Some(val) = f(a, b) else { continue };
            let c = col.at(a, b);
            match seen.get(&c) {
                Some(&(p, old)) if old != val => return Some(format!("pairs {p:?} and ({a},{b}) share colour {c}")),
                Some(_) => {}
                None => {
                    seen.insert(c, ((a, b), val));
                }
            }
        }
    }
    None
}

/// Validates the stable layer of `h` against `s`, and for unions also the
/// per-layer invariants: crossing and non-crossing pairs never share a
/// colour, every colour has fixed endpoint diagonal colours, and a crossing
/// colour is determined by its endpoint diagonal colours.
pub fn validate_configuration(s: &Structure, h: &ColorHistory) -> ValidationReport {
    let mut report = validate_colouring(s, h.layer(h.stable_index()));
    let Some(left) = h.left_size() else {
        return report;
    };
    let n = s.len();
    let mut crossing = None;
    let mut endpoints = None;
    let mut determined = None;
    for layer in 0..h.num_layers() {
        let col = Colouring {
            n,
            colour: h.layer(layer),
        };
        let crosses = |a: u32, b: u32| ((a as usize) < left) != ((b as usize) < left);
        if crossing.is_none() {
            crossing = constant_per_colour(&col, |a, b| Some(crosses(a, b))).map(|w| format!("layer {layer}: {w}"));
        }
        if endpoints.is_none() {
            endpoints = col
                .classes()
                .iter()
                .find_map(|(c, ps)| endpoint_failure(&col, *c, ps))
                .map(|w| format!("layer {layer}: {w}"));
        }
        if determined.is_none() {
            let mut by_ends: HashMap<(ColorId, ColorId), ((u32, u32), ColorId)> = HashMap::new();
            'outer: for a in 0..n as u32 {
                for b in 0..n as u32 {
                    if !crosses(a, b) {
                        continue;
                    }
                    let key = (col.at(a, a), col.at(b, b));
                    let c = col.at(a, b);
                    match by_ends.get(&key) {
                        Some(&(p, old)) if old != c => {
                            determined = Some(format!("layer {layer}: crossing pairs {p:?} and ({a},{b})"));
                            break 'outer;
                        }
                        Some(_) => {}
                        None => {
                            by_ends.insert(key, ((a, b), c));
                        }
                    }
                }
            }
        }
    }
    report.checks.push(verdict("layers-crossing-separated", crossing));
    report.checks.push(verdict("layers-endpoint-colours", endpoints));
    report.checks.push(verdict("layers-crossing-by-endpoints", determined));
    report
}

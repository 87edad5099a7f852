//! The Deep Weisfeiler Leman cloud: a union of two connected structures,
//! its stable colouring and side sketches, rewritten by `pair` and `scc`
//! operations on stable colours.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::coherent::{refine_union, ColorHistory, ColorId};
use crate::sketch::{restrict_sketch, AlgebraicSketch, SketchError};
use crate::structures::{RelName, Relation, Side, Structure, StructureError, UnionStructure};

pub const E_LEFT: &str = "E_left";
pub const E_RIGHT: &str = "E_right";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Pair,
    Scc,
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Op::Pair => "pair",
            Op::Scc => "scc",
        })
    }
}

/// Where a vertex of a state comes from, in terms of the previous state's
/// union indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Original(u32),
    Pair { color: ColorId, parents: (u32, u32) },
    Scc { color: ColorId, members: Vec<u32> },
}

#[derive(Clone, Debug)]
pub struct CloudState {
    pub union: UnionStructure,
    pub history: ColorHistory,
    pub sketch_left: AlgebraicSketch,
    pub sketch_right: AlgebraicSketch,
    /// Per union vertex; `Original(i)` is vertex `i` itself in the first state.
    pub provenance: Vec<Provenance>,
    /// Operation and colour (of the previous state) that produced this state.
    pub origin: Option<(Op, ColorId)>,
    pub step_count: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DwlError {
    #[error("unknown colour {0:?}")]
    UnknownColor(String),
    #[error("colour {0:?} has crossing pairs; the run would not stay normalised")]
    NotNormalised(String),
    #[error("colour {0:?} has no strongly connected components")]
    NoSccs(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Sketch(#[from] SketchError),
    #[error("trace line {line}: {message}")]
    TraceParse { line: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceOp {
    pub op: Op,
    pub color: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DwlTrace {
    pub budget_vertices: usize,
    pub budget_steps: usize,
    pub ops: Vec<TraceOp>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Distinguished,
    NotDistinguished,
}

#[derive(Clone, Debug)]
pub struct TraceRun {
    /// Initial state, then one state per executed operation.
    pub states: Vec<CloudState>,
    pub outcome: Outcome,
}

impl CloudState {
    pub fn initial(g: &Structure, h: &Structure) -> Result<CloudState, DwlError> {
        let union = UnionStructure::new(g, h)?;
        let provenance = (0..union.len() as u32).map(Provenance::Original).collect();
        CloudState::build(union, provenance, None, 0)
    }

    fn build(
        union: UnionStructure,
        provenance: Vec<Provenance>,
        origin: Option<(Op, ColorId)>,
        step_count: usize,
    ) -> Result<CloudState, DwlError> {
        let history = refine_union(&union);
        let sketch_left = restrict_sketch(&union, &history, Side::Left)?;
        let sketch_right = restrict_sketch(&union, &history, Side::Right)?;
        Ok(CloudState {
            union,
            history,
            sketch_left,
            sketch_right,
            provenance,
            origin,
            step_count,
        })
    }

    pub fn distinguished(&self) -> bool {
        self.sketch_left != self.sketch_right
    }

    fn resolve(&self, key: &str) -> Result<ColorId, DwlError> {
        let c = self.history.resolve_key(key).ok_or_else(|| DwlError::UnknownColor(key.to_string()))?;
        if self.history.is_crossing(c) {
            return Err(DwlError::NotNormalised(key.to_string()));
        }
        Ok(c)
    }

    /// Colours a trace may name: the stable non-crossing colours.
    pub fn operable_colors(&self) -> Vec<ColorId> {
        (0..self.history.num_colors() as ColorId).filter(|&c| !self.history.is_crossing(c)).collect()
    }
}

/// Shortlex-least binary string not used as a relation name.
fn fresh_binary_name(vocab: &[RelName]) -> RelName {
    let used: BTreeSet<&[u8]> = vocab.iter().map(|r| r.0.as_slice()).collect();
    (1..)
        .flat_map(|len: u32| (0u64..1 << len).map(move |bits| (len, bits)))
        .map(|(len, bits)| {
            RelName((0..len).rev().map(|i| if bits >> i & 1 == 1 { b'1' } else { b'0' }).collect())
        })
        .find(|name| !used.contains(name.0.as_slice()))
        .unwrap()
}

fn add_pairs(
    rels: &mut BTreeMap<RelName, Relation>,
    name: RelName,
    color: bool,
    pairs: impl IntoIterator<Item = (u32, u32)>,
) {
    rels.entry(name.clone())
        .or_insert_with(|| Relation {
            name,
            color,
            pairs: BTreeSet::new(),
        })
        .pairs
        .extend(pairs);
}

fn check_budget(budget: Option<usize>, size: usize) -> Result<(), DwlError> {
    match budget {
        Some(b) if size > b => Err(DwlError::BudgetExceeded(format!("{size} vertices, budget {b}"))),
        _ => Ok(()),
    }
}

/// Adds a vertex per pair of colour `key`, linked to the pair's entries by
/// `E_left`/`E_right` and marked by a fresh diagonal relation. When the
/// structure has colour relations the marker is one too, so the new
/// vertices get exactly one colour.
pub fn exec_pair(state: &CloudState, key: &str, budget_vertices: Option<usize>) -> Result<CloudState, DwlError> {
    let c = state.resolve(key)?;
    let u = &state.union;
    let pairs = state.history.pairs_of(c);
    check_budget(budget_vertices, u.len() + pairs.len())?;
    let d_r = fresh_binary_name(&u.structure.vocabulary());
    let marker_is_colour = u.structure.relations().iter().any(|r| r.color);
    let mut sides = Vec::new();
    let mut provenance = Vec::new();
    for side in [Side::Left, Side::Right] {
        let s = u.side(side);
        let mine: Vec<(u32, u32)> = pairs.iter().copied().filter(|&(a, _)| u.side_of(a) == side).collect();
        let n = s.len() as u32;
        let mut rels: BTreeMap<RelName, Relation> = s.relations().iter().map(|r| (r.name.clone(), r.clone())).collect();
        let fresh = |i: usize| n + i as u32;
        add_pairs(&mut rels, RelName::new(E_LEFT), false, mine.iter().enumerate().map(|(i, &(a, _))| (u.local(a), fresh(i))));
        add_pairs(&mut rels, RelName::new(E_RIGHT), false, mine.iter().enumerate().map(|(i, &(_, b))| (u.local(b), fresh(i))));
        add_pairs(&mut rels, d_r.clone(), marker_is_colour, (0..mine.len()).map(|i| (fresh(i), fresh(i))));
        sides.push(Structure::new(s.len() + mine.len(), rels.into_values().collect())?);
        provenance.extend(u.side_range(side).map(Provenance::Original));
        provenance.extend(mine.iter().map(|&parents| Provenance::Pair { color: c, parents }));
    }
    let next = UnionStructure::new(&sides[0], &sides[1])?;
    CloudState::build(next, provenance, Some((Op::Pair, c)), state.step_count + 1)
}

/// Contracts every SCC of colour `key` to a single vertex; relations follow
/// the vertex image, and a fresh diagonal relation marks the new vertices.
pub fn exec_scc(state: &CloudState, key: &str, budget_vertices: Option<usize>) -> Result<CloudState, DwlError> {
    let c = state.resolve(key)?;
    let u = &state.union;
    let comps = state.history.sccs_of_color(c);
    if comps.is_empty() {
        return Err(DwlError::NoSccs(key.to_string()));
    }
    let d_r = fresh_binary_name(&u.structure.vocabulary());
    let mut sides = Vec::new();
    let mut provenance = Vec::new();
    for side in [Side::Left, Side::Right] {
        let mine: Vec<&Vec<u32>> = comps.iter().filter(|m| u.side_of(m[0]) == side).collect();
        let mut image: BTreeMap<u32, u32> = BTreeMap::new();
        let kept: Vec<u32> = u.side_range(side).filter(|v| !mine.iter().any(|m| m.contains(v))).collect();
        for (i, &v) in kept.iter().enumerate() {
            image.insert(v, i as u32);
        }
        for (j, m) in mine.iter().enumerate() {
            for &v in m.iter() {
                image.insert(v, (kept.len() + j) as u32);
            }
        }
        let mut rels: BTreeMap<RelName, Relation> = BTreeMap::new();
        for r in u.structure.relations() {
            let pairs: BTreeSet<(u32, u32)> = r
                .pairs
                .iter()
                .filter(|&&(a, b)| u.side_of(a) == side && u.side_of(b) == side)
                .map(|&(a, b)| (image[&a], image[&b]))
                .collect();
            rels.insert(
                r.name.clone(),
                Relation {
                    name: r.name.clone(),
                    color: r.color,
                    pairs,
                },
            );
        }
        let base = kept.len() as u32;
        add_pairs(&mut rels, d_r.clone(), false, (0..mine.len() as u32).map(|j| (base + j, base + j)));
        sides.push(Structure::new(kept.len() + mine.len(), rels.into_values().collect())?);
        provenance.extend(kept.iter().map(|&v| Provenance::Original(v)));
        provenance.extend(mine.iter().map(|m| Provenance::Scc {
            color: c,
            members: m.to_vec(),
        }));
    }
    check_budget(budget_vertices, sides[0].len() + sides[1].len())?;
    let next = UnionStructure::new(&sides[0], &sides[1])?;
    CloudState::build(next, provenance, Some((Op::Scc, c)), state.step_count + 1)
}

pub fn exec(state: &CloudState, op: Op, key: &str, budget_vertices: Option<usize>) -> Result<CloudState, DwlError> {
    match op {
        Op::Pair => exec_pair(state, key, budget_vertices),
        Op::Scc => exec_scc(state, key, budget_vertices),
    }
}

/// Runs `trace`, stopping at the first state whose side sketches differ.
pub fn run_trace(g: &Structure, h: &Structure, trace: &DwlTrace) -> Result<TraceRun, DwlError> {
    let first = CloudState::initial(g, h)?;
    check_budget(Some(trace.budget_vertices), first.union.len())?;
    let mut states = vec![first];
    for (i, t) in trace.ops.iter().enumerate() {
        if states.last().unwrap().distinguished() {
            break;
        }
        if i >= trace.budget_steps {
            return Err(DwlError::BudgetExceeded(format!("more than {} steps", trace.budget_steps)));
        }
        let next = exec(states.last().unwrap(), t.op, &t.color, Some(trace.budget_vertices))?;
        debug_assert!(!next.union.has_crossing_pairs());
        states.push(next);
    }
    let outcome = if states.last().unwrap().distinguished() {
        Outcome::Distinguished
    } else {
        Outcome::NotDistinguished
    };
    Ok(TraceRun { states, outcome })
}

impl DwlTrace {
    pub fn new(ops: Vec<TraceOp>, budget_vertices: usize, budget_steps: usize) -> Self {
        DwlTrace {
            budget_vertices,
            budget_steps,
            ops,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("dwltrace v1 budget_vertices={} budget_steps={}\n", self.budget_vertices, self.budget_steps);
        for t in &self.ops {
            out.push_str(&format!("{} {}\n", t.op, t.color));
        }
        out
    }

    pub fn parse(text: &str) -> Result<DwlTrace, DwlError> {
        let err = |line: usize, message: String| DwlError::TraceParse { line: line + 1, message };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or_else(|| err(0, "empty trace".into()))?;
        let words: Vec<&str> = header.split_whitespace().collect();
        let field = |w: &str, name: &str| -> Result<usize, DwlError> {
            w.strip_prefix(name)
                .and_then(|v| v.parse().ok())
                .filter(|&v: &usize| v > 0)
                .ok_or_else(|| err(hl, format!("expected {name}<positive int>, got {w:?}")))
        };
        let (budget_vertices, budget_steps) = match words.as_slice() {
            ["dwltrace", "v1", bv, bs] => (field(bv, "budget_vertices=")?, field(bs, "budget_steps=")?),
            _ => return Err(err(hl, "expected `dwltrace v1 budget_vertices=<n> budget_steps=<n>`".into())),
        };
        let ops = lines
            .map(|(ln, line)| match line.split_whitespace().collect::<Vec<_>>().as_slice() {
                ["pair", c] => Ok(TraceOp {
                    op: Op::Pair,
                    color: c.to_string(),
                }),
                ["scc", c] => Ok(TraceOp {
                    op: Op::Scc,
                    color: c.to_string(),
                }),
                _ => Err(err(ln, format!("expected `pair <colour>` or `scc <colour>`, got {line:?}"))),
            })
            .collect::<Result<_, _>>()?;
        Ok(DwlTrace {
            budget_vertices,
            budget_steps,
            ops,
        })
    }
}

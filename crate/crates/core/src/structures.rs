//! Finite binary relational structures and the text format they travel in.
//!
//! Vertices are dense indices `0..n`. Unary information (vertex colours) is
//! carried by diagonal relations; the `color` flag on a relation only marks it
//! as an intended vertex colouring and is validated, nothing else reads it.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Relation name, compared bytewise.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RelName(pub Vec<u8>);

impl RelName {
    pub fn new(s: &str) -> Self {
        RelName(s.as_bytes().to_vec())
    }
}

impl fmt::Display for RelName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&String::from_utf8_lossy(&self.0))
    }
}

impl fmt::Debug for RelName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", String::from_utf8_lossy(&self.0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: RelName,
    pub color: bool,
    pub pairs: BTreeSet<(u32, u32)>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid structure: {0}")]
    Validation(String),
    #[error("vocabularies differ: {0}")]
    VocabMismatch(String),
    #[error("the {0} side is not connected")]
    NotConnected(Side),
    #[error("base graph is not connected")]
    BaseNotConnected,
    #[error("base graph must be a simple undirected graph: {0}")]
    BadBase(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// A structure with relations kept sorted by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    n: usize,
    relations: Vec<Relation>,
}

impl Structure {
    /// Builds and validates a structure; relations are re-sorted by name.
    pub fn new(n: usize, mut relations: Vec<Relation>) -> Result<Self, StructureError> {
        relations.sort_by(|a, b| a.name.cmp(&b.name));
        for w in relations.windows(2) {
            if w[0].name == w[1].name {
                return Err(StructureError::Validation(format!(
                    "duplicate relation name {}",
                    w[0].name
                )));
            }
        }
        for r in &relations {
            if r.name.0.is_empty() || r.name.0.iter().any(|b| b.is_ascii_whitespace()) {
                return Err(StructureError::Validation(format!(
                    "relation name {:?} is empty or contains whitespace",
                    r.name
                )));
            }
            if let Some(&(u, v)) = r.pairs.iter().find(|&&(u, v)| u as usize >= n || v as usize >= n) {
                return Err(StructureError::Validation(format!(
                    "pair ({u},{v}) of {} lies outside the universe of size {n}",
                    r.name
                )));
            }
            if r.color {
                if let Some(&(u, v)) = r.pairs.iter().find(|&&(u, v)| u != v) {
                    return Err(StructureError::Validation(format!(
                        "colour relation {} contains the non-diagonal pair ({u},{v})",
                        r.name
                    )));
                }
            }
        }
        if relations.iter().any(|r| r.color) {
            let mut seen = vec![0usize; n];
            for r in relations.iter().filter(|r| r.color) {
                for &(u, _) in &r.pairs {
                    seen[u as usize] += 1;
                }
            }
            if let Some(v) = seen.iter().position(|&c| c != 1) {
                return Err(StructureError::Validation(format!(
                    "colour relations do not partition the diagonal: vertex {v} has {} colours",
                    seen[v]
                )));
            }
        }
        Ok(Structure { n, relations })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation(&self, name: &RelName) -> Option<&Relation> {
        self.relations
            .binary_search_by(|r| r.name.cmp(name))
            .ok()
            .map(|i| &self.relations[i])
    }

    pub fn vocabulary(&self) -> Vec<RelName> {
        self.relations.iter().map(|r| r.name.clone()).collect()
    }

    /// Connectivity over all relations, read as undirected edges.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let adj = self.undirected_adjacency();
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn undirected_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for r in &self.relations {
            for &(u, v) in &r.pairs {
                if u != v {
                    adj[u as usize].push(v as usize);
                    adj[v as usize].push(u as usize);
                }
            }
        }
        adj
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[u32]) -> Structure {
        assert_eq!(perm.len(), self.n);
        let relations = self
            .relations
            .iter()
            .map(|r| Relation {
                name: r.name.clone(),
                color: r.color,
                pairs: r
                    .pairs
                    .iter()
                    .map(|&(u, v)| (perm[u as usize], perm[v as usize]))
                    .collect(),
            })
            .collect();
        Structure {
            n: self.n,
            relations,
        }
    }

    /// Dense table of atomic types: `table[u * n + v]` is an id shared exactly
    /// by ordered pairs with the same relation memberships.
    pub fn membership_table(&self) -> (Vec<u32>, Vec<Vec<u16>>) {
        let n = self.n;
        let mut member: Vec<Vec<u16>> = vec![Vec::new(); n * n];
        for (i, r) in self.relations.iter().enumerate() {
            for &(u, v) in &r.pairs {
                member[u as usize * n + v as usize].push(i as u16);
            }
        }
        // Ids follow the sorted order of membership lists, so they are
        // invariant under relabeling.
        let types: Vec<Vec<u16>> = member.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let ids: BTreeMap<&Vec<u16>, u32> = types.iter().enumerate().map(|(i, t)| (t, i as u32)).collect();
        (member.iter().map(|m| ids[m]).collect(), types)
    }

    /// Canonical text form: relations sorted by name, pairs sorted.
    pub fn to_text(&self) -> String {
        let mut out = format!("structure n={}\n", self.n);
        for r in &self.relations {
            out.push_str("rel ");
            out.push_str(&r.name.to_string());
            if r.color {
                out.push_str(" color");
            }
            out.push('\n');
            for &(u, v) in &r.pairs {
                out.push_str(&format!("{u} {v}\n"));
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, StructureError> {
        let err = |line: usize, column: usize, message: String| StructureError::Parse {
            line: line + 1,
            column: column + 1,
            message,
        };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim_start().starts_with('#'));
        let n = loop {
            match lines.next() {
                None => return Err(err(0, 0, "missing `structure n=<int>` header".into())),
                Some((_, l)) if l.trim().is_empty() => continue,
                Some((i, l)) => {
                    let t = l.trim();
                    let rest = t
                        .strip_prefix("structure")
                        .map(str::trim_start)
                        .and_then(|r| r.strip_prefix("n="))
                        .ok_or_else(|| err(i, 0, "expected `structure n=<int>`".into()))?;
                    break rest
                        .trim()
                        .parse::<usize>()
                        .map_err(|e| err(i, l.find("n=").unwrap_or(0) + 2, format!("bad vertex count: {e}")))?;
                }
            }
        };
        let mut relations: Vec<Relation> = Vec::new();
        let mut current: Option<Relation> = None;
        for (i, l) in lines {
            let t = l.trim();
            if t.is_empty() {
                if let Some(r) = current.take() {
                    relations.push(r);
                }
                continue;
            }
            let mut toks = t.split_whitespace();
            let first = toks.next().unwrap_or("");
            if first == "rel" {
                if let Some(r) = current.take() {
                    relations.push(r);
                }
                let name = toks
                    .next()
                    .ok_or_else(|| err(i, l.len(), "missing relation name".into()))?;
                let color = match toks.next() {
                    None => false,
                    Some("color") => true,
                    Some(other) => {
                        return Err(err(i, l.find(other).unwrap_or(0), format!("unexpected token {other:?}")))
                    }
                };
                if let Some(extra) = toks.next() {
                    return Err(err(i, l.find(extra).unwrap_or(0), format!("unexpected token {extra:?}")));
                }
                current = Some(Relation {
                    name: RelName::new(name),
                    color,
                    pairs: BTreeSet::new(),
                });
                continue;
            }
            let rel = current
                .as_mut()
                .ok_or_else(|| err(i, 0, "pair line outside a relation block".into()))?;
            let parse_vertex = |tok: Option<&str>, col: usize| -> Result<u32, StructureError> {
                let tok = tok.ok_or_else(|| err(i, col, "expected two vertices".into()))?;
                let v: u32 = tok
                    .parse()
                    .map_err(|_| err(i, l.find(tok).unwrap_or(col), format!("bad vertex {tok:?}")))?;
                if v as usize >= n {
                    return Err(err(i, l.find(tok).unwrap_or(col), format!("vertex {v} out of range (n={n})")));
                }
                Ok(v)
            };
            let u = parse_vertex(Some(first), 0)?;
            let v = parse_vertex(toks.next(), l.len())?;
            if let Some(extra) = toks.next() {
                return Err(err(i, l.find(extra).unwrap_or(0), format!("unexpected token {extra:?}")));
            }
            rel.pairs.insert((u, v));
        }
        if let Some(r) = current.take() {
            relations.push(r);
        }
        Structure::new(n, relations)
    }
}

/// Disjoint union `G ⊎ H` with the left side occupying `0..left_size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnionStructure {
    pub structure: Structure,
    pub left_size: usize,
}

impl UnionStructure {
    pub fn new(left: &Structure, right: &Structure) -> Result<Self, StructureError> {
        let (lv, rv) = (left.vocabulary(), right.vocabulary());
        if lv != rv {
            return Err(StructureError::VocabMismatch(format!(
                "left has {lv:?}, right has {rv:?}"
            )));
        }
        for (a, b) in left.relations.iter().zip(&right.relations) {
            if a.color != b.color {
                return Err(StructureError::VocabMismatch(format!(
                    "relation {} is a colour on one side only",
                    a.name
                )));
            }
        }
        if !left.is_connected() {
            return Err(StructureError::NotConnected(Side::Left));
        }
        if !right.is_connected() {
            return Err(StructureError::NotConnected(Side::Right));
        }
        Ok(Self::join_unchecked(left, right))
    }

    /// Union without vocabulary or connectivity checks.
    pub fn join_unchecked(left: &Structure, right: &Structure) -> Self {
        let shift = left.n as u32;
        let mut relations: BTreeMap<RelName, Relation> = BTreeMap::new();
        for r in &left.relations {
            relations.insert(r.name.clone(), r.clone());
        }
        for r in &right.relations {
            let e = relations.entry(r.name.clone()).or_insert_with(|| Relation {
                name: r.name.clone(),
                color: r.color,
                pairs: BTreeSet::new(),
            });
            e.pairs.extend(r.pairs.iter().map(|&(u, v)| (u + shift, v + shift)));
        }
        UnionStructure {
            structure: Structure {
                n: left.n + right.n,
                relations: relations.into_values().collect(),
            },
            left_size: left.n,
        }
    }

    pub fn len(&self) -> usize {
        self.structure.n
    }

    pub fn is_empty(&self) -> bool {
        self.structure.n == 0
    }

    pub fn right_size(&self) -> usize {
        self.structure.n - self.left_size
    }

    pub fn side_of(&self, v: u32) -> Side {
        if (v as usize) < self.left_size {
            Side::Left
        } else {
            Side::Right
        }
    }

    pub fn side_size(&self, side: Side) -> usize {
        match side {
            Side::Left => self.left_size,
            Side::Right => self.right_size(),
        }
    }

    pub fn side_range(&self, side: Side) -> std::ops::Range<u32> {
        match side {
            Side::Left => 0..self.left_size as u32,
            Side::Right => self.left_size as u32..self.structure.n as u32,
        }
    }

    /// Union index of the side-local vertex `v`.
    pub fn global(&self, side: Side, v: u32) -> u32 {
        match side {
            Side::Left => v,
            Side::Right => v + self.left_size as u32,
        }
    }

    /// Side-local index of the union vertex `v`.
    pub fn local(&self, v: u32) -> u32 {
        match self.side_of(v) {
            Side::Left => v,
            Side::Right => v - self.left_size as u32,
        }
    }

    pub fn is_crossing(&self, u: u32, v: u32) -> bool {
        self.side_of(u) != self.side_of(v)
    }

    /// The structure induced on one side, reindexed from 0.
    pub fn side(&self, side: Side) -> Structure {
        let range = self.side_range(side);
        let shift = range.start;
        let relations = self
            .structure
            .relations
            .iter()
            .map(|r| Relation {
                name: r.name.clone(),
                color: r.color,
                pairs: r
                    .pairs
                    .iter()
                    .filter(|&&(u, v)| range.contains(&u) && range.contains(&v))
                    .map(|&(u, v)| (u - shift, v - shift))
                    .collect(),
            })
            .collect();
        Structure {
            n: range.len(),
            relations,
        }
    }

    pub fn has_crossing_pairs(&self) -> bool {
        self.structure
            .relations
            .iter()
            .any(|r| r.pairs.iter().any(|&(u, v)| self.is_crossing(u, v)))
    }
}

/// Brute-force search for an isomorphism `a → b` preserving every relation.
pub fn find_isomorphism(a: &Structure, b: &Structure) -> Option<Vec<u32>> {
    if a.n != b.n || a.vocabulary() != b.vocabulary() {
        return None;
    }
    let n = a.n;
    let (ta, types_a) = a.membership_table();
    let (tb, types_b) = b.membership_table();
    // Translate b's type ids into a's numbering; unmatched types can never be hit.
    let index_a: BTreeMap<&Vec<u16>, u32> = types_a.iter().enumerate().map(|(i, t)| (t, i as u32)).collect();
    let tb: Vec<u32> = tb
        .iter()
        .map(|&t| index_a.get(&types_b[t as usize]).copied().unwrap_or(u32::MAX))
        .collect();
    let profile = |t: &Vec<u32>, v: usize| {
        let mut p: Vec<(u32, u32)> = (0..n).map(|x| (t[v * n + x], t[x * n + v])).collect();
        p.sort_unstable();
        p
    };
    let pa: Vec<_> = (0..n).map(|v| profile(&ta, v)).collect();
    let pb: Vec<_> = (0..n).map(|v| profile(&tb, v)).collect();
    // Visit vertices of `a` in BFS order so constraints bite early.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let adj = a.undirected_adjacency();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            order.push(u);
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    q.push_back(v);
                }
            }
        }
    }
    let mut search = IsoSearch {
        order: &order,
        n,
        ta: &ta,
        tb: &tb,
        pa: &pa,
        pb: &pb,
        map: vec![u32::MAX; n],
        used: vec![false; n],
    };
    search.extend(0).then_some(search.map)
}

/// Backtracking state of `find_isomorphism`: `map` is defined on `order[..k]`.
struct IsoSearch<'a> {
    order: &'a [usize],
    n: usize,
    ta: &'a [u32],
    tb: &'a [u32],
    pa: &'a [Vec<(u32, u32)>],
    pb: &'a [Vec<(u32, u32)>],
    map: Vec<u32>,
    used: Vec<bool>,
}

impl IsoSearch<'_> {
    fn extend(&mut self, k: usize) -> bool {
        if k == self.order.len() {
            return true;
        }
        let (n, u) = (self.n, self.order[k]);
        for c in 0..n {
            if self.used[c] || self.pa[u] != self.pb[c] {
                continue;
            }
            let ok = self.order[..k].iter().all(|&x| {
                let y = self.map[x] as usize;
                self.ta[u * n + x] == self.tb[c * n + y] && self.ta[x * n + u] == self.tb[y * n + c]
            }) && self.ta[u * n + u] == self.tb[c * n + c];
            if !ok {
                continue;
            }
            self.map[u] = c as u32;
            self.used[c] = true;
            if self.extend(k + 1) {
                return true;
            }
            self.used[c] = false;
        }
        self.map[u] = u32::MAX;
        false
    }
}

/// CFI companions over `base`. The first result is untwisted; the second is
/// twisted on the least base edge when `twisted` is set, else a second
/// untwisted copy.
///
/// Layout: vertex gadget `v` holds one vertex per even subset of the edges at
/// `v` (in increasing subset-bitmask order); edge gadget `e` holds the two
/// vertices `e.0`, `e.1`. Vertex gadgets come first, then edge gadgets in
/// lexicographic edge order. Every gadget is its own colour relation. With
/// `ordered`, relation `le` holds `(x, y)` whenever the gadget of `x` is not
/// after the gadget of `y`.
pub fn cfi_pair(base: &Structure, twisted: bool, ordered: bool) -> Result<(Structure, Structure), StructureError> {
    let edges = base_edges(base)?;
    let n = base.n;
    if !base.is_connected() {
        return Err(StructureError::BaseNotConnected);
    }
    let build = |twist: bool| -> Structure {
        let incident: Vec<Vec<usize>> = (0..n)
            .map(|v| (0..edges.len()).filter(|&e| edges[e].0 == v || edges[e].1 == v).collect())
            .collect();
        let mut gadget_of: Vec<usize> = Vec::new();
        let mut middles: Vec<Vec<(u32, u32)>> = Vec::new(); // (vertex id, subset mask)
        for (v, inc) in incident.iter().enumerate() {
            let mut ms = Vec::new();
            for mask in 0u32..(1u32 << inc.len()) {
                if mask.count_ones() % 2 == 0 {
                    ms.push((gadget_of.len() as u32, mask));
                    gadget_of.push(v);
                }
            }
            middles.push(ms);
        }
        let mut edge_vertex = Vec::new();
        for e in 0..edges.len() {
            let a = gadget_of.len() as u32;
            gadget_of.push(n + e);
            gadget_of.push(n + e);
            edge_vertex.push((a, a + 1));
        }
        let mut pairs = BTreeSet::new();
        for (v, inc) in incident.iter().enumerate() {
            for &(m, mask) in &middles[v] {
                for (bit, &e) in inc.iter().enumerate() {
                    let mut on = mask >> bit & 1 == 1;
                    if twist && e == 0 && edges[0].1 == v {
                        on = !on;
                    }
                    let target = if on { edge_vertex[e].1 } else { edge_vertex[e].0 };
                    pairs.insert((m, target));
                    pairs.insert((target, m));
                }
            }
        }
        let total = gadget_of.len();
        let mut relations = vec![Relation {
            name: RelName::new("E"),
            color: false,
            pairs,
        }];
        let gadgets = n + edges.len();
        for g in 0..gadgets {
            let name = if g < n {
                format!("gv{g}")
            } else {
                let (a, b) = edges[g - n];
                format!("ge{a}_{b}")
            };
            relations.push(Relation {
                name: RelName::new(&name),
                color: true,
                pairs: (0..total as u32)
                    .filter(|&x| gadget_of[x as usize] == g)
                    .map(|x| (x, x))
                    .collect(),
            });
        }
        if ordered {
            let mut le = BTreeSet::new();
            for x in 0..total {
                for y in 0..total {
                    if gadget_of[x] <= gadget_of[y] {
                        le.insert((x as u32, y as u32));
                    }
                }
            }
            relations.push(Relation {
                name: RelName::new("le"),
                color: false,
                pairs: le,
            });
        }
        Structure::new(total, relations).expect("CFI construction is well-formed")
    };
    Ok((build(false), build(twisted)))
}

/// Undirected edges `(u, v)`, `u < v`, in lexicographic order.
fn base_edges(base: &Structure) -> Result<Vec<(usize, usize)>, StructureError> {
    let rels: Vec<&Relation> = base.relations.iter().filter(|r| !r.color).collect();
    if rels.len() != 1 {
        return Err(StructureError::BadBase(format!(
            "expected exactly one non-colour relation, found {}",
            rels.len()
        )));
    }
    let e = &rels[0].pairs;
    let mut edges = Vec::new();
    for &(u, v) in e {
        if u == v {
            return Err(StructureError::BadBase(format!("self-loop at {u}")));
        }
        if !e.contains(&(v, u)) {
            return Err(StructureError::BadBase(format!("edge ({u},{v}) has no reverse")));
        }
        if u < v {
            edges.push((u as usize, v as usize));
        }
    }
    Ok(edges)
}

/// Convenience constructor for simple undirected graphs with relation `E`.
pub fn graph(n: usize, edges: &[(u32, u32)]) -> Structure {
    let pairs = edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
    Structure::new(
        n,
        vec![Relation {
            name: RelName::new("E"),
            color: false,
            pairs,
        }],
    )
    .expect("graph edges in range")
}

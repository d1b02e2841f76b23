//! Finite posets given by their Hasse diagrams, and the path poset of a
//! digraph: all multipaths ordered by inclusion of edge sets.

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// A finite poset on `0..len` whose index order is a linear extension
/// (`x < y` implies `x` has the smaller index).
#[derive(Clone, Debug)]
pub struct Poset {
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    above: OnceLock<Vec<Vec<usize>>>,
}

impl Poset {
    /// Builds a poset from its cover pairs `(x, y)` meaning `x ≺ y`.
    pub fn from_covers(len: usize, covers: impl IntoIterator<Item = (usize, usize)>) -> Result<Poset> {
        let mut upper = vec![Vec::new(); len];
        let mut lower = vec![Vec::new(); len];
        for (x, y) in covers {
            if x >= y || y >= len {
                return Err(Error::domain(format!("cover {x} < {y} violates the index order")));
            }
            upper[x].push(y);
            lower[y].push(x);
        }
        for v in upper.iter_mut().chain(lower.iter_mut()) {
            v.sort_unstable();
            v.dedup();
        }
        Ok(Poset { upper, lower, above: OnceLock::new() })
    }

    /// Builds a poset from a strict order relation; covers are derived.
    pub fn from_relation(len: usize, less: impl Fn(usize, usize) -> bool) -> Result<Poset> {
        let mut covers = Vec::new();
        for x in 0..len {
            for y in 0..len {
                if x == y || !less(x, y) {
                    continue;
                }
                if x > y {
                    return Err(Error::domain("relation is not compatible with the index order"));
                }
                if !(x + 1..y).any(|z| less(x, z) && less(z, y)) {
                    covers.push((x, y));
                }
            }
        }
        Poset::from_covers(len, covers)
    }

    pub fn len(&self) -> usize {
        self.upper.len()
    }

    pub fn is_empty(&self) -> bool {
        self.upper.is_empty()
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    pub fn is_cover(&self, x: usize, y: usize) -> bool {
        self.upper[x].binary_search(&y).is_ok()
    }

    pub fn cover_count(&self) -> usize {
        self.upper.iter().map(Vec::len).sum()
    }

    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.upper.iter().enumerate().flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y)))
    }

    /// All `y > x`, sorted.
    pub fn strictly_above(&self, x: usize) -> &[usize] {
        &self.above.get_or_init(|| {
            let n = self.len();
            let mut above: Vec<Vec<usize>> = vec![Vec::new(); n];
            for x in (0..n).rev() {
                let mut set = BTreeSet::new();
                for &y in &self.upper[x] {
                    set.insert(y);
                    set.extend(above[y].iter().copied());
                }
                above[x] = set.into_iter().collect();
            }
            above
        })[x]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        x == y || self.strictly_above(x).binary_search(&y).is_ok()
    }

    /// All elements of the closed interval `[x, y]`, sorted.
    pub fn interval(&self, x: usize, y: usize) -> Vec<usize> {
        if !self.leq(x, y) {
            return Vec::new();
        }
        let mut out = vec![x];
        out.extend(self.strictly_above(x).iter().copied().filter(|&z| self.leq(z, y)));
        out
    }

    /// Number of elements in the longest strict chain, minus one.
    pub fn height(&self) -> usize {
        let mut h = vec![0usize; self.len()];
        for x in (0..self.len()).rev() {
            h[x] = self.upper[x].iter().map(|&y| h[y] + 1).max().unwrap_or(0);
        }
        h.into_iter().max().unwrap_or(0)
    }
}

/// A set of edge ids, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Multipath(Vec<usize>);

impl Multipath {
    pub fn empty() -> Multipath {
        Multipath(Vec::new())
    }

    pub fn new(mut edges: Vec<usize>) -> Multipath {
        edges.sort_unstable();
        edges.dedup();
        Multipath(edges)
    }

    pub fn edges(&self) -> &[usize] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    pub fn is_subset(&self, other: &Multipath) -> bool {
        self.0.iter().all(|e| other.contains(*e))
    }

    pub fn with(&self, e: usize) -> Multipath {
        let mut v = self.0.clone();
        if let Err(pos) = v.binary_search(&e) {
            v.insert(pos, e);
        }
        Multipath(v)
    }
}

/// Degree bounds plus acyclicity: every vertex has in- and out-degree at
/// most one and no directed cycle exists. Self-loops are never multipaths.
pub fn is_multipath(g: &Digraph, edge_ids: &[usize]) -> Result<bool> {
    let n = g.vertex_count();
    let mut next = vec![usize::MAX; n];
    let mut has_pred = vec![false; n];
    let mut ids = edge_ids.to_vec();
    ids.sort_unstable();
    ids.dedup();
    for &id in &ids {
        if id >= g.edge_count() {
            return Err(Error::domain(format!("unknown edge id {id}")));
        }
        let e = g.edge(id);
        if e.tail == e.head || next[e.tail] != usize::MAX || has_pred[e.head] {
            return Ok(false);
        }
        next[e.tail] = e.head;
        has_pred[e.head] = true;
    }
    // Walk each path from its source; edges missed by every walk lie on cycles.
    let mut covered = 0;
    for start in 0..n {
        if has_pred[start] {
            continue;
        }
        let mut v = start;
        while next[v] != usize::MAX {
            covered += 1;
            v = next[v];
        }
    }
    Ok(covered == ids.len())
}

#[derive(Clone, Copy, Debug)]
pub struct PosetConfig {
    pub max_edges: usize,
}

impl Default for PosetConfig {
    fn default() -> Self {
        PosetConfig { max_edges: 20 }
    }
}

/// The path poset of a digraph. Element 0 is the empty multipath; elements
/// are sorted by rank, then lexicographically by edge set.
#[derive(Clone, Debug)]
pub struct PathPoset {
    graph: Digraph,
    elements: Vec<Multipath>,
    index: HashMap<Multipath, usize>,
    poset: Poset,
}

pub fn enumerate_path_poset(g: &Digraph, config: PosetConfig) -> Result<PathPoset> {
    if g.edge_count() > config.max_edges {
        return Err(Error::Resource(format!(
            "digraph has {} edges, above the cap of {} (the path poset may be exponential; raise --max-edges)",
            g.edge_count(),
            config.max_edges
        )));
    }
    let mut elements = vec![Multipath::empty()];
    let mut level = vec![Multipath::empty()];
    while !level.is_empty() {
        let mut next = BTreeSet::new();
        for x in &level {
            for e in 0..g.edge_count() {
                if x.contains(e) {
                    continue;
                }
                let y = x.with(e);
                if is_multipath(g, y.edges())? {
                    next.insert(y);
                }
            }
        }
        level = next.into_iter().collect();
        elements.extend(level.iter().cloned());
    }
    let index: HashMap<_, _> = elements.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut covers = Vec::new();
    for (i, x) in elements.iter().enumerate() {
        for e in 0..g.edge_count() {
            if !x.contains(e) {
                if let Some(&j) = index.get(&x.with(e)) {
                    covers.push((i, j));
                }
            }
        }
    }
    let poset = Poset::from_covers(elements.len(), covers)?;
    Ok(PathPoset { graph: g.clone(), elements, index, poset })
}

impl PathPoset {
    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Multipath] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Multipath {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &Multipath) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn rank(&self, i: usize) -> usize {
        self.elements[i].rank()
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        self.poset.upper_covers(x)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.elements[x].is_subset(&self.elements[y])
    }

    pub fn rank_histogram(&self) -> Vec<usize> {
        let top = self.elements.last().map_or(0, Multipath::rank);
        let mut h = vec![0; top + 1];
        for m in &self.elements {
            h[m.rank()] += 1;
        }
        h
    }

    /// The unique edge of `y` not in `x`, if `y` covers `x`.
    pub fn added_edge(&self, x: usize, y: usize) -> Option<usize> {
        let (a, b) = (&self.elements[x], &self.elements[y]);
        if b.rank() != a.rank() + 1 || !a.is_subset(b) {
            return None;
        }
        b.edges().iter().copied().find(|e| !a.contains(*e))
    }
}

/// Connected components of the graph with all vertices of `g` and the edges of `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentLabeling {
    pub component_of: Vec<usize>,
    /// Members of each component, sorted; components ordered by least vertex.
    pub components: Vec<Vec<usize>>,
    pub base_component: Option<usize>,
}

impl ComponentLabeling {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

pub fn components(g: &Digraph, x: &Multipath) -> Result<ComponentLabeling> {
    if !is_multipath(g, x.edges())? {
        return Err(Error::domain(format!("edge set {:?} is not a multipath", x.edges())));
    }
    Ok(components_unchecked(g, x.edges()))
}

pub(crate) fn components_unchecked(g: &Digraph, edges: &[usize]) -> ComponentLabeling {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    for &id in edges {
        let e = g.edge(id);
        let (a, b) = (find(&mut parent, e.tail), find(&mut parent, e.head));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut component_of = vec![usize::MAX; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut root_label = HashMap::new();
    for v in 0..n {
        let r = find(&mut parent, v);
        let label = *root_label.entry(r).or_insert_with(|| {
            components.push(Vec::new());
            components.len() - 1
        });
        component_of[v] = label;
        components[label].push(v);
    }
    let base_component = g.base().map(|b| component_of[b]);
    ComponentLabeling { component_of, components, base_component }
}

/// The data of a cover `x ≺ y`: the added edge, the components of its tail
/// and head in the labeling of `x`, and the merged component in `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FusedPair {
    pub edge: usize,
    pub tail_component: usize,
    pub head_component: usize,
    pub merged_component: usize,
}

pub fn fused_pair(g: &Digraph, x: &Multipath, y: &Multipath) -> Result<FusedPair> {
    if y.rank() != x.rank() + 1 || !x.is_subset(y) {
        return Err(Error::domain("y does not cover x"));
    }
    let edge = y.edges().iter().copied().find(|e| !x.contains(*e)).expect("one added edge");
    if !is_multipath(g, y.edges())? {
        return Err(Error::domain("y does not cover x: y is not a multipath"));
    }
    let lx = components_unchecked(g, x.edges());
    let ly = components_unchecked(g, y.edges());
    let e = g.edge(edge);
    Ok(FusedPair {
        edge,
        tail_component: lx.component_of[e.tail],
        head_component: lx.component_of[e.head],
        merged_component: ly.component_of[e.tail],
    })
}

#[derive(Serialize)]
pub struct PosetDump {
    pub elements: usize,
    pub multipaths: Vec<Vec<usize>>,
    pub covers: Vec<[usize; 2]>,
    pub rank_histogram: Vec<usize>,
}

impl PathPoset {
    pub fn dump(&self) -> PosetDump {
        PosetDump {
            elements: self.len(),
            multipaths: self.elements.iter().map(|m| m.edges().to_vec()).collect(),
            covers: self.poset.covers().map(|(x, y)| [x, y]).collect(),
            rank_histogram: self.rank_histogram(),
        }
    }
}

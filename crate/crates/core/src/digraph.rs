//! Finite directed graphs with identified edges, the standard polygon and
//! line families, the line-oriented text format, and digraph inclusions.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: usize,
    pub tail: usize,
    pub head: usize,
}

/// A directed multigraph on vertices `0..vertex_count`. Edge ids equal their
/// positions in [`Digraph::edges`]. Parallel edges and self-loops are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    base: Option<usize>,
}

impl Digraph {
    /// Builds a digraph from `(tail, head)` pairs; edge ids are assigned in order.
    pub fn new(vertex_count: usize, arcs: &[(usize, usize)], base: Option<usize>) -> Result<Digraph> {
        if vertex_count == 0 {
            return Err(Error::domain("a digraph needs at least one vertex"));
        }
        let mut edges = Vec::with_capacity(arcs.len());
        for (id, &(tail, head)) in arcs.iter().enumerate() {
            for v in [tail, head] {
                if v >= vertex_count {
                    return Err(Error::domain(format!("vertex index {v} out of range")));
                }
            }
            edges.push(Edge { id, tail, head });
        }
        if let Some(b) = base {
            if b >= vertex_count {
                return Err(Error::domain(format!("vertex index {b} out of range")));
            }
        }
        Ok(Digraph { vertex_count, edges, base })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    pub fn base(&self) -> Option<usize> {
        self.base
    }

    pub fn is_based(&self) -> bool {
        self.base.is_some()
    }

    pub fn with_base(&self, base: Option<usize>) -> Result<Digraph> {
        if let Some(b) = base {
            if b >= self.vertex_count {
                return Err(Error::domain(format!("vertex index {b} out of range")));
            }
        }
        Ok(Digraph { base, ..self.clone() })
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.head == v).count()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.tail == v).count()
    }

    /// Relabels vertices by `perm` (old index ↦ new index), keeping edge ids.
    pub fn relabel(&self, perm: &[usize]) -> Result<Digraph> {
        if perm.len() != self.vertex_count || !is_permutation(perm) {
            return Err(Error::domain("relabeling is not a permutation of the vertices"));
        }
        let arcs: Vec<_> = self.edges.iter().map(|e| (perm[e.tail], perm[e.head])).collect();
        Digraph::new(self.vertex_count, &arcs, self.base.map(|b| perm[b]))
    }

    /// True when the graph is a single consistently directed cycle through
    /// every vertex: each vertex has in- and out-degree one and the edges
    /// form one orbit.
    pub fn is_consistent_polygon(&self) -> bool {
        let n = self.vertex_count;
        if n < 2 || self.edges.len() != n {
            return false;
        }
        let mut next = vec![usize::MAX; n];
        let mut indeg = vec![0usize; n];
        for e in &self.edges {
            if next[e.tail] != usize::MAX {
                return false;
            }
            next[e.tail] = e.head;
            indeg[e.head] += 1;
        }
        if indeg.iter().any(|&d| d != 1) {
            return false;
        }
        let (mut v, mut steps) = (0, 0);
        loop {
            v = next[v];
            steps += 1;
            if v == 0 {
                break;
            }
        }
        steps == n
    }
}

fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    perm.iter().all(|&p| p < perm.len() && !std::mem::replace(&mut seen[p], true))
}

/// Consistently directed `n`-gon: edge `i` runs `i → i+1 mod n`.
pub fn make_polygon(n: usize, based: bool) -> Result<Digraph> {
    if n < 2 {
        return Err(Error::domain(format!("a polygon needs at least 2 vertices, got {n}")));
    }
    let arcs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Digraph::new(n, &arcs, based.then_some(0))
}

/// Based line graph `0 → 1 → ⋯ → n` with `n` edges.
pub fn make_line(n: usize) -> Result<Digraph> {
    if n < 1 {
        return Err(Error::domain("a line graph needs at least 1 edge"));
    }
    let arcs: Vec<_> = (0..n).map(|i| (i, i + 1)).collect();
    Digraph::new(n + 1, &arcs, Some(0))
}

fn parse_fields<const N: usize>(line_no: usize, rest: &[&str], what: &str) -> Result<[usize; N]> {
    if rest.len() != N {
        return Err(Error::parse(line_no, format!("`{what}` expects {N} integer field(s)")));
    }
    let mut out = [0usize; N];
    for (slot, tok) in out.iter_mut().zip(rest) {
        *slot = tok
            .parse()
            .map_err(|_| Error::parse(line_no, format!("`{tok}` is not a nonnegative integer")))?;
    }
    Ok(out)
}

/// Parses the line-oriented digraph format: `v N` first, an optional `b K`,
/// then `e ID TAIL HEAD` lines with ids `0, 1, 2, …`. `#` starts a comment.
pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let mut vertex_count: Option<usize> = None;
    let mut base = None;
    let mut arcs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let (tag, rest) = (tokens[0], &tokens[1..]);
        if vertex_count.is_none() && tag != "v" {
            return Err(Error::parse(line_no, "missing header: the first line must be `v N`"));
        }
        match tag {
            "v" => {
                if vertex_count.is_some() {
                    return Err(Error::parse(line_no, "duplicate `v` header"));
                }
                let [n] = parse_fields::<1>(line_no, rest, "v")?;
                if n == 0 {
                    return Err(Error::parse(line_no, "vertex count must be positive"));
                }
                vertex_count = Some(n);
            }
            "b" => {
                if base.is_some() || !arcs.is_empty() {
                    return Err(Error::parse(line_no, "`b` must appear once, before any edge"));
                }
                let [b] = parse_fields::<1>(line_no, rest, "b")?;
                let n = vertex_count.unwrap_or(0);
                if b >= n {
                    return Err(Error::parse(line_no, format!("vertex index {b} out of range")));
                }
                base = Some(b);
            }
            "e" => {
                let [id, tail, head] = parse_fields::<3>(line_no, rest, "e")?;
                if id < arcs.len() {
                    return Err(Error::parse(line_no, format!("duplicate edge id {id}")));
                }
                if id != arcs.len() {
                    return Err(Error::parse(line_no, format!("edge id {id} out of order (expected {})", arcs.len())));
                }
                let n = vertex_count.unwrap_or(0);
                for v in [tail, head] {
                    if v >= n {
                        return Err(Error::parse(line_no, format!("vertex index {v} out of range")));
                    }
                }
                arcs.push((tail, head));
            }
            other => return Err(Error::parse(line_no, format!("unknown record `{other}`"))),
        }
    }
    let n = vertex_count.ok_or_else(|| Error::parse(0, "missing header: no `v N` line"))?;
    Digraph::new(n, &arcs, base)
}

impl fmt::Display for Digraph {
    /// Serializes in the format accepted by [`parse_digraph`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "v {}", self.vertex_count)?;
        if let Some(b) = self.base {
            writeln!(f, "b {b}")?;
        }
        for e in &self.edges {
            writeln!(f, "e {} {} {}", e.id, e.tail, e.head)?;
        }
        Ok(())
    }
}

/// An injective, incidence-preserving (and, between based graphs,
/// base-preserving) pair of vertex and edge maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigraphInclusion {
    source: Digraph,
    target: Digraph,
    vertex_map: Vec<usize>,
    edge_map: Vec<usize>,
}

fn check_injective(map: &[usize], bound: usize, what: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for (i, &m) in map.iter().enumerate() {
        if m >= bound {
            return Err(Error::validation(format!("{what} map sends {i} to {m}, out of range")));
        }
        if !seen.insert(m) {
            return Err(Error::validation(format!("{what} map is not injective ({m} hit twice)")));
        }
    }
    Ok(())
}

pub fn validate_inclusion(source: &Digraph, target: &Digraph, vertex_map: &[usize], edge_map: &[usize]) -> Result<DigraphInclusion> {
    if vertex_map.len() != source.vertex_count() {
        return Err(Error::validation("vertex map is not total on the source vertices"));
    }
    if edge_map.len() != source.edge_count() {
        return Err(Error::validation("edge map is not total on the source edges"));
    }
    check_injective(vertex_map, target.vertex_count(), "vertex")?;
    check_injective(edge_map, target.edge_count(), "edge")?;
    for e in source.edges() {
        let t = target.edge(edge_map[e.id]);
        if vertex_map[e.tail] != t.tail || vertex_map[e.head] != t.head {
            return Err(Error::validation(format!("tail/head mismatch for edge {}", e.id)));
        }
    }
    if let (Some(sb), Some(tb)) = (source.base(), target.base()) {
        if vertex_map[sb] != tb {
            return Err(Error::validation("base vertex not preserved"));
        }
    }
    Ok(DigraphInclusion {
        source: source.clone(),
        target: target.clone(),
        vertex_map: vertex_map.to_vec(),
        edge_map: edge_map.to_vec(),
    })
}

impl DigraphInclusion {
    pub fn identity(g: &Digraph) -> DigraphInclusion {
        let vm: Vec<_> = (0..g.vertex_count()).collect();
        let em: Vec<_> = (0..g.edge_count()).collect();
        validate_inclusion(g, g, &vm, &em).expect("identity is an inclusion")
    }

    pub fn source(&self) -> &Digraph {
        &self.source
    }

    pub fn target(&self) -> &Digraph {
        &self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn edge_map(&self) -> &[usize] {
        &self.edge_map
    }

    /// `self ∘ inner`, where `inner: A → B` and `self: B → C`.
    pub fn compose(&self, inner: &DigraphInclusion) -> Result<DigraphInclusion> {
        if inner.target != self.source {
            return Err(Error::validation("inclusions are not composable"));
        }
        let vm: Vec<_> = inner.vertex_map.iter().map(|&v| self.vertex_map[v]).collect();
        let em: Vec<_> = inner.edge_map.iter().map(|&e| self.edge_map[e]).collect();
        validate_inclusion(&inner.source, &self.target, &vm, &em)
    }
}

/// Parses an inclusion mapping file: `v SRC DST` and `e SRC DST` lines.
pub fn parse_mapping(text: &str, source: &Digraph, target: &Digraph) -> Result<DigraphInclusion> {
    let mut vm = vec![None; source.vertex_count()];
    let mut em = vec![None; source.edge_count()];
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let [src, dst] = parse_fields::<2>(line_no, &tokens[1..], tokens[0])?;
        let slot = match tokens[0] {
            "v" => vm.get_mut(src),
            "e" => em.get_mut(src),
            other => return Err(Error::parse(line_no, format!("unknown record `{other}`"))),
        }
        .ok_or_else(|| Error::parse(line_no, format!("source index {src} out of range")))?;
        if slot.replace(dst).is_some() {
            return Err(Error::parse(line_no, format!("index {src} mapped twice")));
        }
    }
    let total = |m: Vec<Option<usize>>, what: &str| -> Result<Vec<usize>> {
        m.into_iter()
            .enumerate()
            .map(|(i, d)| d.ok_or_else(|| Error::validation(format!("{what} {i} is not mapped"))))
            .collect()
    };
    let vm = total(vm, "vertex")?;
    let em = total(em, "edge")?;
    validate_inclusion(source, target, &vm, &em)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let g = parse_digraph("v 2\nb 0\ne 0 0 1").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges(), &[Edge { id: 0, tail: 0, head: 1 }]);
        assert_eq!(g.base(), Some(0));

        let tri = parse_digraph("v 3\ne 0 0 1\ne 1 1 2\ne 2 2 0").unwrap();
        assert_eq!(tri, make_polygon(3, false).unwrap());
        assert!(tri.is_consistent_polygon());

        let err = parse_digraph("v 2\ne 0 0 5").unwrap_err();
        assert!(err.to_string().contains("vertex index 5 out of range"), "{err}");
        assert!(err.to_string().contains("line 2"));
    }

    #[test]
    fn parse_errors_name_the_line() {
        let cases = [
            ("e 0 0 1", "missing header"),
            ("v 2\ne 0 0 1\ne 0 1 0", "duplicate edge id 0"),
            ("v 2\ne 1 0 1", "out of order"),
            ("v 2\nx 1", "unknown record"),
            ("v 2\ne 0 0", "expects 3"),
            ("# nothing", "missing header"),
        ];
        for (text, needle) in cases {
            let err = parse_digraph(text).unwrap_err();
            assert!(err.to_string().contains(needle), "{text:?}: {err}");
        }
        let ok = parse_digraph("# comment\nv 3 # three\n\ne 0 2 2 # loop\n").unwrap();
        assert_eq!(ok.edge(0).tail, 2);
    }

    #[test]
    fn families() {
        let p3 = make_polygon(3, false).unwrap();
        let arcs: Vec<_> = p3.edges().iter().map(|e| (e.tail, e.head)).collect();
        assert_eq!(arcs, vec![(0, 1), (1, 2), (2, 0)]);
        let p2 = make_polygon(2, true).unwrap();
        assert_eq!(p2.edges().len(), 2);
        assert_eq!(p2.base(), Some(0));
        assert!(make_polygon(1, false).is_err());
        let l3 = make_line(3).unwrap();
        assert_eq!(l3.vertex_count(), 4);
        assert_eq!(l3.edge(2).head, 3);
        assert!(make_line(0).is_err());
        assert!(!l3.is_consistent_polygon());
    }

    #[test]
    fn inclusion_examples() {
        let edge = make_line(1).unwrap().with_base(None).unwrap();
        let tri = make_polygon(3, false).unwrap();
        assert!(validate_inclusion(&edge, &tri, &[0, 1], &[0]).is_ok());
        let err = validate_inclusion(&edge, &tri, &[0, 1], &[1]).unwrap_err();
        assert_eq!(err.to_string(), "tail/head mismatch for edge 0");

        let based_edge = make_line(1).unwrap();
        let based_tri = make_polygon(3, true).unwrap();
        let err = validate_inclusion(&based_edge, &based_tri, &[1, 2], &[1]).unwrap_err();
        assert_eq!(err.to_string(), "base vertex not preserved");
        let err = validate_inclusion(&edge, &tri, &[0, 0], &[0]).unwrap_err();
        assert!(err.to_string().contains("not injective"));
    }

    #[test]
    fn composition_validates() {
        let edge = make_line(1).unwrap();
        let line2 = make_line(2).unwrap();
        let tri = make_polygon(3, true).unwrap();
        let g = validate_inclusion(&edge, &line2, &[0, 1], &[0]).unwrap();
        let f = validate_inclusion(&line2, &tri, &[0, 1, 2], &[0, 1]).unwrap();
        let fg = f.compose(&g).unwrap();
        assert_eq!(fg.vertex_map(), &[0, 1]);
        assert_eq!(fg.edge_map(), &[0]);
        assert!(g.compose(&f).is_err());
    }

    #[test]
    fn mapping_file() {
        let edge = make_line(1).unwrap();
        let tri = make_polygon(3, true).unwrap();
        let inc = parse_mapping("v 0 0\nv 1 1\ne 0 0\n", &edge, &tri).unwrap();
        assert_eq!(inc.edge_map(), &[0]);
        assert!(parse_mapping("v 0 0\ne 0 0\n", &edge, &tri).is_err());
        let err = parse_mapping("v 0 0\nv 1 1\ne 0 1\n", &edge, &tri).unwrap_err();
        assert!(err.to_string().contains("tail/head mismatch"));
    }

    fn arb_digraph() -> impl Strategy<Value = Digraph> {
        (1usize..6).prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec((0..n, 0..n), 0..8),
                proptest::option::of(0..n),
            )
                .prop_map(|(n, arcs, base)| Digraph::new(n, &arcs, base).unwrap())
        })
    }

    proptest! {
        #[test]
        fn serialize_round_trip(g in arb_digraph()) {
            let text = g.to_string();
            prop_assert_eq!(parse_digraph(&text).unwrap(), g);
        }

        #[test]
        fn polygon_degrees(n in 2usize..12) {
            let p = make_polygon(n, false).unwrap();
            prop_assert_eq!(p.edge_count(), n);
            for v in 0..n {
                prop_assert_eq!(p.in_degree(v), 1);
                prop_assert_eq!(p.out_degree(v), 1);
            }
            prop_assert!(p.is_consistent_polygon());
        }
    }
}

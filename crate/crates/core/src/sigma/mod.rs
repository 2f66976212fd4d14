//! Finite-radius evidence for membership in the BNS invariant `Σ(G)`.
//!
//! `[φ] ∈ Σ(G)` when the full subgraph of the Cayley graph on the vertices
//! with `φ ≤ 0` is connected. Only balls of finite radius are built here, so
//! every verdict is heuristic: the certificate for membership comes from an
//! ascending fake HNN form in [`crate::magnus`].

mod oracle;

use std::collections::HashMap;

use serde::Serialize;

use crate::abelianize::{character_lattice, Character, CharacterError};
use crate::presentations::{Presentation, Word};

pub use oracle::{symmetrized_relators, verify_small_cancellation, Oracle, OracleKind, DEHN_SEARCH_CAP};

pub const DEFAULT_RADIUS: usize = 5;
pub const DEFAULT_VERTEX_CAP: usize = 200_000;
/// Number of witnesses listed in a report.
pub const WITNESS_LIMIT: usize = 10;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum SigmaError {
    #[error("no applicable oracle: {oracle} oracle rejected the presentation ({reason})")]
    NoApplicableOracle { oracle: &'static str, reason: String },
    #[error("oracle was built for a different presentation")]
    OracleMismatch,
    #[error("Cayley ball exceeds the vertex cap of {cap}")]
    VertexCapExceeded { cap: usize },
    #[error("Dehn normal form search exceeded {cap} states")]
    SearchCapExceeded { cap: usize },
    #[error(transparent)]
    Character(#[from] CharacterError),
}

impl SigmaError {
    /// True for errors caused by resource limits rather than bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, SigmaError::VertexCapExceeded { .. } | SigmaError::SearchCapExceeded { .. })
    }
}

/// A ball in the Cayley graph around the identity, with edges `(g, x, gx)`
/// for generators `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyBall {
    generators: usize,
    vertices: Vec<Word>,
    distances: Vec<usize>,
    edges: Vec<(usize, usize, usize)>,
}

impl CayleyBall {
    /// Canonical words; index 0 is the identity.
    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn distances(&self) -> &[usize] {
        &self.distances
    }

    /// `(from, generator, to)` with `to = from · generator`.
    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    /// Index of the vertex with canonical form `w`.
    pub fn position(&self, w: &Word) -> Option<usize> {
        self.vertices.iter().position(|v| v == w)
    }

    /// Connected component label of every vertex, numbered in order of
    /// first appearance.
    pub fn components(&self) -> Vec<usize> {
        let mut adjacency = vec![Vec::new(); self.len()];
        for &(a, _, b) in &self.edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        let mut label = vec![usize::MAX; self.len()];
        let mut next = 0;
        for start in 0..self.len() {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &u in &adjacency[v] {
                    if label[u] == usize::MAX {
                        label[u] = next;
                        stack.push(u);
                    }
                }
            }
            next += 1;
        }
        label
    }
}

/// Vertex lookup that merges words the oracle proves equal.
struct VertexIndex<'a> {
    oracle: &'a Oracle,
    exact: HashMap<Word, usize>,
    lattice: Vec<Character>,
    buckets: HashMap<Vec<i64>, Vec<usize>>,
}

impl<'a> VertexIndex<'a> {
    fn new(oracle: &'a Oracle) -> Result<Self, SigmaError> {
        let lattice = match oracle.kind() {
            OracleKind::Dehn => character_lattice(oracle.presentation())?,
            _ => Vec::new(),
        };
        Ok(VertexIndex { oracle, exact: HashMap::new(), lattice, buckets: HashMap::new() })
    }

    fn key(&self, w: &Word) -> Result<Vec<i64>, SigmaError> {
        Ok(self.lattice.iter().map(|c| c.evaluate(w)).collect::<Result<_, _>>()?)
    }

    fn find(&self, vertices: &[Word], w: &Word) -> Result<Option<usize>, SigmaError> {
        if let Some(&i) = self.exact.get(w) {
            return Ok(Some(i));
        }
        if self.oracle.kind() != OracleKind::Dehn {
            return Ok(None);
        }
        for &i in self.buckets.get(&self.key(w)?).into_iter().flatten() {
            if self.oracle.equal(&vertices[i], w)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    fn insert(&mut self, w: Word, i: usize) -> Result<(), SigmaError> {
        if self.oracle.kind() == OracleKind::Dehn {
            self.buckets.entry(self.key(&w)?).or_default().push(i);
        }
        self.exact.insert(w, i);
        Ok(())
    }
}

/// Breadth-first ball of the given radius. Each new layer is sorted in
/// shortlex order before it is numbered, so the result is deterministic.
pub fn cayley_ball(p: &Presentation, o: &Oracle, radius: usize, vertex_cap: usize) -> Result<CayleyBall, SigmaError> {
    if o.presentation() != p {
        return Err(SigmaError::OracleMismatch);
    }
    let n = p.rank();
    let letters: Vec<Word> = (0..n).flat_map(|g| [Word::power_of(g, 1), Word::power_of(g, -1)]).collect();
    let mut index = VertexIndex::new(o)?;
    let mut vertices = vec![Word::identity()];
    let mut distances = vec![0];
    index.insert(Word::identity(), 0)?;
    let mut frontier = 0..1;

    for d in 1..=radius {
        let mut candidates = Vec::new();
        for v in frontier.clone() {
            for x in &letters {
                let w = o.normalize(&vertices[v].multiply(x))?;
                if index.find(&vertices, &w)?.is_none() {
                    candidates.push(w);
                }
            }
        }
        candidates.sort_by(|a, b| a.shortlex_cmp(b));
        candidates.dedup();
        let start = vertices.len();
        for w in candidates {
            if index.find(&vertices, &w)?.is_some() {
                continue;
            }
            if vertices.len() >= vertex_cap {
                return Err(SigmaError::VertexCapExceeded { cap: vertex_cap });
            }
            index.insert(w.clone(), vertices.len())?;
            vertices.push(w);
            distances.push(d);
        }
        frontier = start..vertices.len();
    }

    let mut edges = Vec::new();
    for v in 0..vertices.len() {
        for g in 0..n {
            let w = o.normalize(&vertices[v].multiply(&Word::generator(g)))?;
            if let Some(u) = index.find(&vertices, &w)? {
                edges.push((v, g, u));
            }
        }
    }
    Ok(CayleyBall { generators: n, vertices, distances, edges })
}

/// The full subgraph on the vertices with `φ ≤ 0`.
pub fn sigma_subgraph(b: &CayleyBall, c: &Character) -> Result<CayleyBall, CharacterError> {
    let mut new_index = vec![None; b.len()];
    let mut out = CayleyBall { generators: b.generators, vertices: Vec::new(), distances: Vec::new(), edges: Vec::new() };
    for (i, v) in b.vertices.iter().enumerate() {
        if c.evaluate(v)? <= 0 {
            new_index[i] = Some(out.vertices.len());
            out.vertices.push(v.clone());
            out.distances.push(b.distances[i]);
        }
    }
    out.edges = b
        .edges
        .iter()
        .filter_map(|&(a, g, z)| Some((new_index[a]?, g, new_index[z]?)))
        .collect();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SigmaVerdict {
    EvidenceConnected,
    DisconnectedAtRadius,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaBallReport {
    pub radius: usize,
    pub vertices: usize,
    pub sublevel: usize,
    pub components: usize,
    pub identity_component: usize,
    pub witnesses: Vec<String>,
    pub verdict: SigmaVerdict,
    pub heuristic: bool,
}

/// A ball, its sub-level subgraph and the components of the latter.
#[derive(Clone, Debug)]
pub struct SigmaAnalysis {
    pub radius: usize,
    pub ball: CayleyBall,
    pub sublevel: CayleyBall,
    /// Component label of each sub-level vertex; the identity has label 0.
    pub labels: Vec<usize>,
}

impl SigmaAnalysis {
    pub fn component_count(&self) -> usize {
        self.labels.iter().max().map_or(0, |m| m + 1)
    }

    pub fn identity_component_size(&self) -> usize {
        self.labels.iter().filter(|&&l| l == 0).count()
    }

    /// Component label of the sub-level vertex `w` (a canonical word).
    pub fn component_of(&self, w: &Word) -> Option<usize> {
        self.sublevel.position(w).map(|i| self.labels[i])
    }

    pub fn report(&self, p: &Presentation) -> SigmaBallReport {
        let mut outside: Vec<&Word> =
            self.sublevel.vertices.iter().zip(&self.labels).filter(|(_, &l)| l != 0).map(|(w, _)| w).collect();
        outside.sort_by(|a, b| a.shortlex_cmp(b));
        let components = self.component_count();
        SigmaBallReport {
            radius: self.radius,
            vertices: self.ball.len(),
            sublevel: self.sublevel.len(),
            components,
            identity_component: self.identity_component_size(),
            witnesses: outside.into_iter().take(WITNESS_LIMIT).map(|w| p.word_to_string(w)).collect(),
            verdict: if components > 1 { SigmaVerdict::DisconnectedAtRadius } else { SigmaVerdict::EvidenceConnected },
            heuristic: true,
        }
    }
}

pub fn sigma_analysis(
    p: &Presentation,
    c: &Character,
    radius: usize,
    o: &Oracle,
    vertex_cap: usize,
) -> Result<SigmaAnalysis, SigmaError> {
    c.check_against(p)?;
    if c.is_zero() {
        return Err(CharacterError::ZeroCharacter.into());
    }
    let ball = cayley_ball(p, o, radius, vertex_cap)?;
    let sublevel = sigma_subgraph(&ball, c)?;
    let labels = sublevel.components();
    Ok(SigmaAnalysis { radius, ball, sublevel, labels })
}

pub fn sigma_report(
    p: &Presentation,
    c: &Character,
    radius: usize,
    o: &Oracle,
    vertex_cap: usize,
) -> Result<SigmaBallReport, SigmaError> {
    Ok(sigma_analysis(p, c, radius, o, vertex_cap)?.report(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn ball(p: &Presentation, kind: OracleKind, radius: usize) -> CayleyBall {
        cayley_ball(p, &Oracle::new(kind, p).unwrap(), radius, DEFAULT_VERTEX_CAP).unwrap()
    }

    #[test]
    fn free_ball_sizes() {
        let p = corpus::p1();
        assert_eq!(ball(&p, OracleKind::Free, 0).len(), 1);
        assert_eq!(ball(&p, OracleKind::Free, 1).len(), 5);
        assert_eq!(ball(&p, OracleKind::Free, 2).len(), 17);
    }

    #[test]
    fn abelian_ball_is_a_diamond() {
        let p = corpus::p2();
        let b = ball(&p, OracleKind::FreeAbelian, 2);
        assert_eq!(b.len(), 13);
        let sub = sigma_subgraph(&b, &Character::new(vec![1, 0])).unwrap();
        assert_eq!(sub.len(), 9);
    }

    #[test]
    fn free_sublevel_radius_one() {
        let p = corpus::p1();
        let b = ball(&p, OracleKind::Free, 1);
        let sub = sigma_subgraph(&b, &Character::new(vec![1, 0])).unwrap();
        let names: Vec<String> = sub.vertices().iter().map(|w| p.word_to_string(w)).collect();
        assert_eq!(names, ["1", "a^-1", "b", "b^-1"]);
        assert_eq!(sub.edges().len(), 3);
        assert!(sub.edges().iter().all(|&(a, _, z)| a == 0 || z == 0));
    }

    #[test]
    fn free_group_is_disconnected() {
        let p = corpus::p1();
        let o = Oracle::new(OracleKind::Free, &p).unwrap();
        let c = Character::new(vec![1, 0]);
        let a = sigma_analysis(&p, &c, 4, &o, DEFAULT_VERTEX_CAP).unwrap();
        let r = a.report(&p);
        assert!(r.components >= 2);
        assert_eq!(r.verdict, SigmaVerdict::DisconnectedAtRadius);
        let w = p.parse_word("a b a^-2").unwrap();
        assert!(matches!(a.component_of(&w), Some(l) if l != 0));
        assert!(r.witnesses.contains(&"a b a^-2".to_string()));
    }

    #[test]
    fn torus_is_connected() {
        let p = corpus::p2();
        let o = Oracle::new(OracleKind::FreeAbelian, &p).unwrap();
        let r = sigma_report(&p, &Character::new(vec![1, 0]), 6, &o, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(r.components, 1);
        assert_eq!(r.verdict, SigmaVerdict::EvidenceConnected);
        assert!(r.witnesses.is_empty());
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["verdict"], "evidence-connected");
        assert_eq!(json["heuristic"], true);
    }

    #[test]
    fn vertex_cap_is_reported() {
        let p = corpus::p1();
        let o = Oracle::new(OracleKind::Free, &p).unwrap();
        let err = cayley_ball(&p, &o, 5, 100).unwrap_err();
        assert_eq!(err, SigmaError::VertexCapExceeded { cap: 100 });
        assert!(err.is_resource_cap());
    }

    #[test]
    fn surface_group_report() {
        let p = corpus::p5();
        let o = Oracle::new(OracleKind::Dehn, &p).unwrap();
        let r = sigma_report(&p, &Character::new(vec![1, 0, 0, 0]), 3, &o, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(r.vertices, 1 + 8 + 56 + 392);
        assert!(r.components >= 1);
        assert!(r.identity_component >= 1);
    }
}

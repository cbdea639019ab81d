//! Factorization graphs: bipartite trees on `S ∪ supp(τ)` recording which
//! points each factor moves.
//!
//! A graph comes from a genus-zero factorization exactly when it is a tree
//! and every point vertex has CICPP on the circle of `τ`; see
//! [`FactorizationGraph::check_characterization`].

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::factorization::Factorization;
use crate::perm::{CircleOrder, Cycle, Permutation};

/// `s₁ < s₂ < ⋯ < s_{r−1}`, integers disjoint from `{0, 1, …, d}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SVertexSet(Vec<i64>);

impl SVertexSet {
    pub fn new(values: Vec<i64>, d: usize) -> Result<Self> {
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGraph("S-vertices must be strictly increasing".into()));
        }
        if let Some(v) = values.iter().find(|&&v| (0..=d as i64).contains(&v)) {
            return Err(Error::InvalidGraph(format!("S-vertex {v} collides with [0, {d}]")));
        }
        Ok(SVertexSet(values))
    }

    /// `s_j = d + j`.
    pub fn default_for(d: usize, n: usize) -> Self {
        SVertexSet((1..=n).map(|j| (d + j) as i64).collect())
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Zero-based position of `value`.
    pub fn index_of(&self, value: i64) -> Option<usize> {
        self.0.binary_search(&value).ok()
    }
}

/// The first condition of the characterization a graph fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// An S-vertex of degree below two.
    SmallDegree { s: i64, degree: usize },
    NotATree { vertices: usize, edges: usize, connected: bool },
    Cicpp { vertex: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SmallDegree { s, degree } => {
                write!(f, "S-vertex {s} has degree {degree} < 2")
            }
            Violation::NotATree { vertices, edges, connected } => write!(
                f,
                "not a tree ({vertices} vertices, {edges} edges, {})",
                if *connected { "connected" } else { "disconnected" }
            ),
            Violation::Cicpp { vertex } => write!(f, "vertex {vertex} lacks CICPP"),
        }
    }
}

/// An `S`-`supp(τ)` bipartite graph together with its reference cycle `τ`.
///
/// Vertices are the S-values and the points of `supp(τ)`; `τ` may be a
/// proper cycle of `S_degree`, which is how subtrees carry their own circles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactorizationGraph {
    svertices: SVertexSet,
    tau: Cycle,
    // sorted point neighbors of each S-vertex, by S index
    neighbors: Vec<Vec<usize>>,
}

impl FactorizationGraph {
    pub fn new(svertices: SVertexSet, tau: Cycle, neighbors: Vec<Vec<usize>>) -> Result<Self> {
        if neighbors.len() != svertices.len() {
            return Err(Error::SizeMismatch {
                expected: svertices.len(),
                found: neighbors.len(),
            });
        }
        if let Some(v) = svertices.values().iter().find(|&&v| (0..=tau.degree() as i64).contains(&v)) {
            return Err(Error::InvalidGraph(format!(
                "S-vertex {v} collides with [0, {}]",
                tau.degree()
            )));
        }
        let mut neighbors = neighbors;
        for list in &mut neighbors {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph("repeated edge".into()));
            }
            if let Some(&point) = list.iter().find(|&&v| !tau.contains(v)) {
                return Err(Error::SupportViolation { point });
            }
        }
        Ok(FactorizationGraph {
            svertices,
            tau,
            neighbors,
        })
    }

    /// Builds a graph from `{s, ν}` edge pairs.
    pub fn from_edges(svertices: SVertexSet, tau: Cycle, edges: &[(i64, usize)]) -> Result<Self> {
        let mut neighbors = vec![Vec::new(); svertices.len()];
        for &(s, v) in edges {
            let j = svertices
                .index_of(s)
                .ok_or_else(|| Error::UnknownVertex(format!("s = {s}")))?;
            neighbors[j].push(v);
        }
        FactorizationGraph::new(svertices, tau, neighbors)
    }

    pub fn svertices(&self) -> &SVertexSet {
        &self.svertices
    }

    pub fn tau(&self) -> &Cycle {
        &self.tau
    }

    pub fn degree(&self) -> usize {
        self.tau.degree()
    }

    /// Number of point vertices, `|supp(τ)|`.
    pub fn d(&self) -> usize {
        self.tau.len()
    }

    pub fn circle(&self) -> CircleOrder {
        CircleOrder::new(&self.tau)
    }

    /// Point neighbors of the `j`-th S-vertex (zero-based), increasing.
    pub fn neighbors(&self, j: usize) -> &[usize] {
        &self.neighbors[j]
    }

    pub fn neighbors_of(&self, s: i64) -> Option<&[usize]> {
        self.svertices.index_of(s).map(|j| self.neighbors[j].as_slice())
    }

    /// Degrees `(e₁, …, e_{r−1})` of the S-vertices.
    pub fn e(&self) -> Vec<usize> {
        self.neighbors.iter().map(Vec::len).collect()
    }

    /// S-vertices adjacent to point `v`, increasing.
    pub fn s_neighbors(&self, v: usize) -> Vec<i64> {
        self.neighbors
            .iter()
            .enumerate()
            .filter(|(_, list)| list.binary_search(&v).is_ok())
            .map(|(j, _)| self.svertices.values()[j])
            .collect()
    }

    /// All edges as `(s, ν)`, sorted.
    pub fn edges(&self) -> Vec<(i64, usize)> {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(j, list)| list.iter().map(move |&v| (self.svertices.values()[j], v)))
            .collect()
    }

    pub fn num_edges(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum()
    }

    // Unified vertex ids: circle position p for points, d + j for S-vertices.
    fn adjacency(&self) -> Vec<Vec<usize>> {
        let circle = self.circle();
        let d = self.d();
        let mut adj = vec![Vec::new(); d + self.svertices.len()];
        for (j, list) in self.neighbors.iter().enumerate() {
            for &v in list {
                let p = circle.position(v).expect("neighbors lie on the circle");
                adj[d + j].push(p);
                adj[p].push(d + j);
            }
        }
        adj
    }

    // Component label of every vertex once `removed` is deleted (removed gets usize::MAX).
    fn components_without(adj: &[Vec<usize>], removed: Option<usize>) -> (Vec<usize>, usize) {
        let mut comp = vec![usize::MAX; adj.len()];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..adj.len() {
            if Some(start) == removed || comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            stack.push(start);
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if Some(y) != removed && comp[y] == usize::MAX {
                        comp[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        let adj = self.adjacency();
        adj.is_empty() || Self::components_without(&adj, None).1 == 1
    }

    pub fn is_tree(&self) -> bool {
        self.num_edges() + 1 == self.d() + self.svertices.len() && self.is_connected()
    }

    fn check_circle(&self, gamma: &Cycle) -> Result<CircleOrder> {
        if gamma.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: gamma.degree(),
            });
        }
        if gamma.support() != self.tau.support() {
            let point = gamma
                .elements()
                .iter()
                .chain(self.tau.elements())
                .copied()
                .find(|&x| gamma.contains(x) != self.tau.contains(x))
                .unwrap_or(0);
            return Err(Error::SupportViolation { point });
        }
        Ok(CircleOrder::new(gamma))
    }

    /// CPP of `s` on `(G, γ)`: deleting `s` leaves subtrees whose point sets
    /// are consecutive pieces of `𝒞_γ`.
    pub fn has_cpp(&self, s: i64, gamma: &Cycle) -> Result<bool> {
        let circle = self.check_circle(gamma)?;
        let j = self
            .svertices
            .index_of(s)
            .ok_or_else(|| Error::UnknownVertex(format!("s = {s}")))?;
        let d = self.d();
        let adj = self.adjacency();
        let (comp, count) = Self::components_without(&adj, Some(d + j));
        let own = self.circle();
        let mut pieces: Vec<Vec<usize>> = vec![Vec::new(); count];
        for p in 0..d {
            pieces[comp[p]].push(own.at(p));
        }
        Ok(pieces.iter().all(|piece| circle.arc_of(piece).is_some()))
    }

    /// CICPP of point `v` on `(G, γ)`: deleting `v` leaves one subtree per
    /// S-neighbor `s_{j₁} < ⋯ < s_{j_t}`, and walking `𝒞_γ` counterclockwise
    /// from `v` meets their point sets as consecutive blocks in that order.
    pub fn has_cicpp(&self, v: usize, gamma: &Cycle) -> Result<bool> {
        let circle = self.check_circle(gamma)?;
        let own = self.circle();
        let pv = own
            .position(v)
            .ok_or(Error::SupportViolation { point: v })?;
        let d = self.d();
        let adj = self.adjacency();
        let (comp, _) = Self::components_without(&adj, Some(pv));
        // rank of each component by the S-neighbor it contains
        let s_nbrs: Vec<usize> = {
            let mut js: Vec<usize> = adj[pv].iter().map(|&x| x - d).collect();
            js.sort_unstable();
            js
        };
        let rank_of_comp = |c: usize| s_nbrs.iter().position(|&j| comp[d + j] == c);
        let mut expected = 0usize;
        let mut x = v;
        for _ in 1..circle.len() {
            x = circle.prev(x);
            let Some(rank) = rank_of_comp(comp[own.position(x).unwrap()]) else {
                return Ok(false);
            };
            if rank == expected + 1 {
                expected = rank;
            } else if rank != expected {
                return Ok(false);
            }
        }
        // every S-neighbor's block must be nonempty
        Ok(s_nbrs.is_empty() && circle.len() == 1 || expected + 1 == s_nbrs.len() && {
            let mut seen = vec![false; s_nbrs.len()];
            for p in 0..d {
                if p != pv {
                    if let Some(rank) = rank_of_comp(comp[p]) {
                        seen[rank] = true;
                    }
                }
            }
            seen.iter().all(|&b| b)
        })
    }

    /// First failing condition of: S-degrees at least two, tree, and every
    /// point vertex (increasing order) having CICPP on `(G, τ)`.
    pub fn check_characterization(&self) -> std::result::Result<(), Violation> {
        for (j, list) in self.neighbors.iter().enumerate() {
            if list.len() < 2 {
                return Err(Violation::SmallDegree {
                    s: self.svertices.values()[j],
                    degree: list.len(),
                });
            }
        }
        if !self.is_tree() {
            return Err(Violation::NotATree {
                vertices: self.d() + self.svertices.len(),
                edges: self.num_edges(),
                connected: self.is_connected(),
            });
        }
        for v in self.tau.support() {
            if !self.has_cicpp(v, &self.tau).expect("v lies on the circle") {
                return Err(Violation::Cicpp { vertex: v });
            }
        }
        Ok(())
    }

    pub fn is_factorization_graph(&self) -> bool {
        self.check_characterization().is_ok()
    }

    /// Reads each S-vertex's neighbors clockwise on `𝒞_τ` to recover `σ_j`.
    pub fn factorization_of(&self) -> Result<Factorization> {
        self.check_characterization().map_err(Error::Characterization)?;
        let circle = self.circle();
        let sigmas = self
            .neighbors
            .iter()
            .map(|list| {
                let mut clockwise = list.clone();
                clockwise.sort_by_key(|&x| circle.position(x));
                Cycle::new(self.degree(), clockwise)
            })
            .collect::<Result<Vec<_>>>()?;
        let f = Factorization::new(self.tau.clone(), sigmas)?;
        if !f.validate() {
            return Err(Error::Invariant(
                "characterized graph read back to a non-factorization".into(),
            ));
        }
        Ok(f)
    }

    /// Splits the graph at its largest S-vertex `s_{r−1}`.
    pub fn decompose_at_last(&self) -> Result<LastDecomposition> {
        let f = self.factorization_of()?;
        let n = self.svertices.len();
        let d = self.d();
        let last_j = n - 1;
        let adj = self.adjacency();
        let (comp, count) = Self::components_without(&adj, Some(d + last_j));
        let circle = self.circle();

        let mut pieces = Vec::with_capacity(count);
        for c in 0..count {
            let points: Vec<usize> = (0..d).filter(|&p| comp[p] == c).map(|p| circle.at(p)).collect();
            let arc = circle.arc_of(&points).ok_or_else(|| {
                Error::Invariant(format!("subtree points {points:?} are not consecutive"))
            })?;
            let clockwise = circle.arc_elements(arc);
            let blocks: Vec<usize> = (0..last_j).filter(|&j| comp[d + j] == c).collect();
            let gamma = Cycle::new(self.degree(), clockwise)?;
            let subgraph = if blocks.is_empty() {
                None
            } else {
                let sv = SVertexSet(blocks.iter().map(|&j| self.svertices.values()[j]).collect());
                let nb = blocks.iter().map(|&j| self.neighbors[j].clone()).collect();
                Some(FactorizationGraph::new(sv, gamma.clone(), nb)?)
            };
            pieces.push(SubtreePiece {
                gamma,
                start_position: arc.start,
                blocks: blocks.iter().map(|j| j + 1).collect(),
                subgraph,
            });
        }
        // nontrivial pieces first, each group clockwise by arc start
        pieces.sort_by_key(|p| (p.gamma.len() == 1, p.start_position));
        let k = pieces.iter().filter(|p| p.gamma.len() > 1).count();

        let decomposition = LastDecomposition {
            last: self.svertices.values()[last_j],
            k,
            pieces,
        };
        decomposition.check_identities(&f)?;
        Ok(decomposition)
    }

    /// Replaces every degree-2 S-vertex by an edge between its two neighbors.
    pub fn collapse_transposition_graph(&self) -> Result<Vec<(usize, usize)>> {
        if let Some((j, list)) = self.neighbors.iter().enumerate().find(|(_, l)| l.len() != 2) {
            return Err(Error::InvalidGraph(format!(
                "S-vertex {} has degree {} (all must be 2)",
                self.svertices.values()[j],
                list.len()
            )));
        }
        let mut edges: Vec<(usize, usize)> = self.neighbors.iter().map(|l| (l[0], l[1])).collect();
        edges.sort_unstable();
        Ok(edges)
    }
}

/// One subtree `Q_i` left after deleting `s_{r−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubtreePiece {
    /// Points of `Q_i` read clockwise on `𝒞_τ`, as a cycle `γ_i`.
    pub gamma: Cycle,
    start_position: usize,
    /// `B_i`: one-based indices `j` with `s_j ∈ Q_i`.
    pub blocks: Vec<usize>,
    /// `Q_i` with reference cycle `γ_i`; `None` for single-point pieces.
    pub subgraph: Option<FactorizationGraph>,
}

impl SubtreePiece {
    /// `m_i`.
    pub fn size(&self) -> usize {
        self.gamma.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LastDecomposition {
    pub last: i64,
    /// Number of pieces with at least two points; they come first.
    pub k: usize,
    pub pieces: Vec<SubtreePiece>,
}

impl LastDecomposition {
    pub fn sizes(&self) -> Vec<usize> {
        self.pieces.iter().map(SubtreePiece::size).collect()
    }

    fn check_identities(&self, f: &Factorization) -> Result<()> {
        let degree = f.degree();
        let sigmas = f.sigmas();
        let (last, rest) = sigmas.split_last().unwrap();
        let prefix = rest.iter().fold(Permutation::identity(degree), |acc, s| {
            acc.compose(&s.to_permutation()).expect("same degree")
        });
        let target = f.tau().to_permutation().compose(&last.inverse().to_permutation())?;
        if prefix != target {
            return Err(Error::Invariant("σ₁⋯σ_{r−2} differs from τσ_{r−1}⁻¹".into()));
        }
        // cycles of τσ_{r−1}⁻¹ on supp(τ) are exactly the γ_i
        let expected: BTreeSet<Cycle> = target
            .cycles()
            .into_iter()
            .filter(|c| f.tau().contains(c.elements()[0]))
            .collect();
        let gammas: BTreeSet<Cycle> = self.pieces.iter().map(|p| p.gamma.clone()).collect();
        if expected != gammas || gammas.len() != last.len() {
            return Err(Error::Invariant("γ_i are not the cycles of τσ_{r−1}⁻¹".into()));
        }
        for piece in &self.pieces {
            let excess: usize = piece.blocks.iter().map(|&j| sigmas[j - 1].len() - 1).sum();
            if piece.subgraph.is_some() && excess + 1 != piece.size() {
                return Err(Error::Invariant(format!(
                    "block {:?} has excess {excess} but m_i = {}",
                    piece.blocks,
                    piece.size()
                )));
            }
            if let Some(sub) = &piece.subgraph {
                let sub_sigmas: Vec<Cycle> = piece.blocks.iter().map(|&j| sigmas[j - 1].clone()).collect();
                let sub_f = Factorization::new(piece.gamma.clone(), sub_sigmas)?;
                if !sub_f.validate() {
                    return Err(Error::Invariant(format!(
                        "factors {:?} do not multiply to {}",
                        piece.blocks, piece.gamma
                    )));
                }
                if &graph_of(&sub_f, sub.svertices())? != sub {
                    return Err(Error::Invariant("Q_i is not the graph of its block".into()));
                }
            }
        }
        Ok(())
    }
}

/// The factorization graph of `f` with S-vertices `svertices`.
pub fn graph_of(f: &Factorization, svertices: &SVertexSet) -> Result<FactorizationGraph> {
    if svertices.len() != f.sigmas().len() {
        return Err(Error::SizeMismatch {
            expected: f.sigmas().len(),
            found: svertices.len(),
        });
    }
    if !f.validate() {
        return Err(Error::NotAFactorization);
    }
    let neighbors = f.sigmas().iter().map(Cycle::support).collect();
    FactorizationGraph::new(svertices.clone(), f.tau().clone(), neighbors)
}

/// [`graph_of`] with the default S-vertices `s_j = degree + j`.
pub fn graph_of_default(f: &Factorization) -> Result<FactorizationGraph> {
    graph_of(f, &SVertexSet::default_for(f.degree(), f.sigmas().len()))
}

/// Every bipartite graph over `supp(τ)` with S-vertex degrees `e`: each `s_j` joined to an
/// `e_j`-subset of the points, in lexicographic order of the subsets.
pub fn enumerate_degree_graphs<'a>(
    tau: &'a Cycle,
    svertices: &'a SVertexSet,
    e: &'a [usize],
) -> impl Iterator<Item = FactorizationGraph> + 'a {
    let points = tau.support();
    e.iter()
        .map(move |&k| points.clone().into_iter().combinations(k))
        .multi_cartesian_product()
        .map(move |neighbors| {
            FactorizationGraph::new(svertices.clone(), tau.clone(), neighbors).expect("valid by construction")
        })
}

//! Graph ↔ labeled multi-noded rooted tree bijections and the level-order
//! labeling that inverts the label-forgetting map.
//!
//! Node labels are always positions `1..=d` on the circle of `τ`, counted
//! from its smallest element. For `τ = (1 2 ⋯ d)` they are the points
//! themselves; otherwise [`relabel_to_standard`] and [`psi_on`] translate.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::factorization::{Factorization, FactorizationType};
use crate::graph::{FactorizationGraph, SVertexSet};
use crate::mnr::{enumerate_mnr, LabeledMnr, MultiNodedRootedTree, RootedTree};
use crate::perm::Cycle;

/// Interval witnesses for a valid labeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelRanges {
    /// `nodes[i][p]`: labels of the subtree below node `p + 1` of vertex `i`.
    pub nodes: Vec<Vec<(usize, usize)>>,
    /// `vertices[i]`: labels of the subtree rooted at vertex `i`.
    pub vertices: Vec<(usize, usize)>,
}

/// Maps each point of `τ`'s support to its circle position `1..=d`.
pub fn relabel_to_standard(tau: &Cycle) -> impl Fn(usize) -> usize + '_ {
    move |x| {
        tau.elements()
            .iter()
            .position(|&y| y == x)
            .map(|p| p + 1)
            .expect("point lies on τ")
    }
}

/// `Φ^L`: roots the graph at the first point of `τ`, turns each `s_j` into a
/// vertex whose nodes are its children (increasing), hung from its parent.
pub fn phi_labeled(g: &FactorizationGraph) -> Result<LabeledMnr> {
    g.check_characterization().map_err(Error::Characterization)?;
    let d = g.d();
    let n = g.svertices().len();
    let pos = relabel_to_standard(g.tau());
    let nbrs: Vec<Vec<usize>> = (0..n)
        .map(|j| {
            let mut ls: Vec<usize> = g.neighbors(j).iter().map(|&v| pos(v)).collect();
            ls.sort_unstable();
            ls
        })
        .collect();
    let mut point_s = vec![Vec::new(); d + 1];
    for (j, ls) in nbrs.iter().enumerate() {
        for &l in ls {
            point_s[l].push(j);
        }
    }

    // breadth-first from label 1; parent_point[j] is the node s_j hangs from
    let mut parent_point = vec![0usize; n];
    let mut owner = vec![usize::MAX; d + 1]; // S index whose child a label is
    let mut seen_s = vec![false; n];
    let mut queue = vec![1usize];
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        for &j in &point_s[v] {
            if seen_s[j] {
                continue;
            }
            seen_s[j] = true;
            parent_point[j] = v;
            for &c in &nbrs[j] {
                if c != v {
                    owner[c] = j;
                    queue.push(c);
                }
            }
        }
    }

    let mut labels = vec![vec![1]];
    let mut parents = Vec::with_capacity(n);
    let mut betas = Vec::with_capacity(n);
    for j in 0..n {
        let children: Vec<usize> = nbrs[j].iter().copied().filter(|&c| c != parent_point[j]).collect();
        labels.push(children);
        let v = parent_point[j];
        if v == 1 {
            parents.push(0);
            betas.push(1);
        } else {
            let m = owner[v];
            parents.push(m + 1);
            betas.push(nbrs[m].iter().filter(|&&c| c != parent_point[m]).position(|&c| c == v).unwrap() + 1);
        }
    }
    let vertex_data = labels.iter().map(Vec::len).collect();
    let tree = RootedTree::new(g.svertices().values().to_vec(), parents)?;
    LabeledMnr::new(MultiNodedRootedTree::new(tree, vertex_data, betas)?, labels)
}

/// `Φ`: [`phi_labeled`] with the labels forgotten.
pub fn phi(g: &FactorizationGraph) -> Result<MultiNodedRootedTree> {
    Ok(phi_labeled(g)?.into_mnr())
}

/// `Ψ` over `τ = (1 2 ⋯ d)`: joins each `s_j` to the labels of its own nodes
/// and of the node it hangs from.
pub fn psi(lm: &LabeledMnr) -> Result<FactorizationGraph> {
    psi_on(lm, &Cycle::standard(lm.d()))
}

/// `Ψ` with label `p` read as the `p`-th point of `τ`.
pub fn psi_on(lm: &LabeledMnr, tau: &Cycle) -> Result<FactorizationGraph> {
    if tau.len() != lm.d() {
        return Err(Error::SizeMismatch {
            expected: lm.d(),
            found: tau.len(),
        });
    }
    let m = lm.mnr();
    let s = SVertexSet::new(m.s().to_vec(), tau.degree())?;
    let neighbors = (1..=m.n())
        .map(|i| {
            lm.labels_of(i)
                .iter()
                .copied()
                .chain(lm.parent_label(i))
                .map(|l| tau.elements()[l - 1])
                .collect()
        })
        .collect();
    FactorizationGraph::new(s, tau.clone(), neighbors)
}

// n(ν) for every node and n(M_s) for every vertex.
fn subtree_sizes(m: &MultiNodedRootedTree) -> (Vec<Vec<usize>>, Vec<usize>) {
    let node_children = m.node_children();
    let mut node = node_children.iter().map(|ns| vec![0; ns.len()]).collect::<Vec<_>>();
    let mut vertex = vec![0; m.n() + 1];
    for &i in m.tree().bfs_order().iter().rev() {
        for (p, kids) in node_children[i].iter().enumerate() {
            node[i][p] = 1 + kids.iter().map(|&c| vertex[c]).sum::<usize>();
        }
        vertex[i] = node[i].iter().sum();
    }
    (node, vertex)
}

/// The unique labeling making `m` the image of a factorization graph, with
/// its interval witnesses. Levels are processed breadth-first.
pub fn unique_labeling(m: &MultiNodedRootedTree) -> Result<(LabeledMnr, LabelRanges)> {
    if m.vertex_data()[0] != 1 {
        return Err(Error::InvalidVertexData(format!(
            "the root must hold one node, found {}",
            m.vertex_data()[0]
        )));
    }
    let d = m.node_count();
    let node_children = m.node_children();
    let (node_size, vertex_size) = subtree_sizes(m);
    let mut labels: Vec<Vec<usize>> = m.vertex_data().iter().map(|&f| vec![0; f]).collect();
    let mut ranges = LabelRanges {
        nodes: m.vertex_data().iter().map(|&f| vec![(0, 0); f]).collect(),
        vertices: vec![(0, 0); m.n() + 1],
    };
    ranges.vertices[0] = (1, d);
    for i in m.tree().bfs_order() {
        // split the vertex range across its nodes, left to right
        let mut start = ranges.vertices[i].0;
        for p in 0..node_size[i].len() {
            let alpha = start;
            start += node_size[i][p];
            ranges.nodes[i][p] = (alpha, start - 1);

            // children below the node's label are the k with smaller index,
            // placed in decreasing index order; the rest follow above it
            let kids = &node_children[i][p];
            let k = kids.iter().filter(|&&c| c < i).count();
            let mut cursor = alpha;
            for &c in kids[..k].iter().rev() {
                ranges.vertices[c] = (cursor, cursor + vertex_size[c] - 1);
                cursor += vertex_size[c];
            }
            labels[i][p] = cursor;
            cursor += 1;
            for &c in kids[k..].iter().rev() {
                ranges.vertices[c] = (cursor, cursor + vertex_size[c] - 1);
                cursor += vertex_size[c];
            }
        }
    }
    Ok((LabeledMnr::new(m.clone(), labels)?, ranges))
}

/// Tests the interval conditions directly on subtree label sets. Returns the
/// witness when the labeling is the image of a factorization graph.
pub fn check_label_ranges(lm: &LabeledMnr) -> Option<LabelRanges> {
    let m = lm.mnr();
    if m.vertex_data()[0] != 1 {
        return None;
    }
    let node_children = m.node_children();
    // (min, max, count) of each node / vertex subtree
    let mut node_span: Vec<Vec<(usize, usize, usize)>> = Vec::with_capacity(m.n() + 1);
    for ls in lm.labels() {
        node_span.push(ls.iter().map(|&l| (l, l, 1)).collect());
    }
    let mut vertex_span = vec![(usize::MAX, 0, 0); m.n() + 1];
    let merge = |a: (usize, usize, usize), b: (usize, usize, usize)| (a.0.min(b.0), a.1.max(b.1), a.2 + b.2);
    for &i in m.tree().bfs_order().iter().rev() {
        for p in 0..node_span[i].len() {
            for &c in &node_children[i][p] {
                node_span[i][p] = merge(node_span[i][p], vertex_span[c]);
            }
            vertex_span[i] = merge(vertex_span[i], node_span[i][p]);
        }
    }
    let interval = |(lo, hi, count): (usize, usize, usize)| (hi + 1 - lo == count).then_some((lo, hi));
    let ranges = LabelRanges {
        nodes: node_span
            .iter()
            .map(|spans| spans.iter().map(|&sp| interval(sp)).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?,
        vertices: vertex_span.iter().map(|&sp| interval(sp)).collect::<Option<Vec<_>>>()?,
    };

    for i in 0..=m.n() {
        // nodes partition the vertex range left to right
        let mut next = ranges.vertices[i].0;
        for &(lo, hi) in &ranges.nodes[i] {
            if lo != next {
                return None;
            }
            next = hi + 1;
        }
        // children and the node label partition each node range in order
        for (p, kids) in node_children[i].iter().enumerate() {
            let k = kids.iter().filter(|&&c| c < i).count();
            let mut next = ranges.nodes[i][p].0;
            for &c in kids[..k].iter().rev() {
                if ranges.vertices[c].0 != next {
                    return None;
                }
                next = ranges.vertices[c].1 + 1;
            }
            if lm.labels_of(i)[p] != next {
                return None;
            }
            next += 1;
            for &c in kids[k..].iter().rev() {
                if ranges.vertices[c].0 != next {
                    return None;
                }
                next = ranges.vertices[c].1 + 1;
            }
        }
    }
    Some(ranges)
}

/// Membership in the image of `Φ^L`, decided through the graph side: `Ψ`
/// must give a factorization graph whose `Φ^L` returns the same labeling.
pub fn is_phi_image(lm: &LabeledMnr) -> bool {
    let Ok(g) = psi(lm) else {
        return false;
    };
    g.is_factorization_graph() && phi_labeled(&g).is_ok_and(|back| &back == lm)
}

/// Factorization read off a multi-noded rooted tree over `τ`.
pub fn factorization_of_tree(m: &MultiNodedRootedTree, tau: &Cycle) -> Result<Factorization> {
    let (lm, _) = unique_labeling(m)?;
    psi_on(&lm, tau)?.factorization_of()
}

/// Counts `Fac(d, r, τ; e)` by walking every tree with vertex data
/// `(1, e₁ − 1, …)`, labeling it, and reading back a verified factorization.
pub fn count_via_trees(d: usize, e: &[usize]) -> Result<u64> {
    let ty = FactorizationType::new(d, e.to_vec())?;
    if ty.genus() != 0 {
        return Err(Error::FormulaHypothesis(format!(
            "trees encode genus-zero types only; genus is {}",
            ty.genus()
        )));
    }
    let tau = Cycle::standard(d);
    let s: Vec<i64> = (1..=e.len()).map(|j| (d + j) as i64).collect();
    let vertex_data: Vec<usize> = std::iter::once(1).chain(e.iter().map(|&x| x - 1)).collect();
    let mut seen = BTreeSet::new();
    for m in enumerate_mnr(&s, &vertex_data)? {
        let f = factorization_of_tree(&m, &tau)?;
        if f.type_e() != e {
            return Err(Error::Invariant(format!("tree produced type {:?}", f.type_e())));
        }
        if !seen.insert(f) {
            return Err(Error::Invariant("two trees gave the same factorization".into()));
        }
    }
    Ok(seen.len() as u64)
}

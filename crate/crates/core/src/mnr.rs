//! Rooted trees on `S ∪ {0}`, multi-noded rooted trees, and their Prüfer codecs.
//!
//! Vertices are addressed by index: `0` is the root and `j ≥ 1` is the
//! `j`-th smallest element of `S`. Index order agrees with value order, so
//! "largest leaf" can be decided on indices.

use std::collections::{BTreeMap, BinaryHeap};

use num_bigint::BigUint;

use crate::error::{Error, Result};

fn check_s(values: &[i64]) -> Result<()> {
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidTree("S must be strictly increasing".into()));
    }
    if values.contains(&0) {
        return Err(Error::InvalidTree("0 is reserved for the root".into()));
    }
    Ok(())
}

/// A rooted tree on `S ∪ {0}` with root `0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootedTree {
    s: Vec<i64>,
    // parent index of vertex j + 1
    parents: Vec<usize>,
}

impl RootedTree {
    /// `parents[j − 1]` is the parent index of vertex `j`.
    pub fn new(s: Vec<i64>, parents: Vec<usize>) -> Result<Self> {
        check_s(&s)?;
        if parents.len() != s.len() {
            return Err(Error::SizeMismatch {
                expected: s.len(),
                found: parents.len(),
            });
        }
        let n = s.len();
        if let Some(&p) = parents.iter().find(|&&p| p > n) {
            return Err(Error::InvalidTree(format!("parent index {p} out of range")));
        }
        // every vertex must reach the root within n steps
        for start in 1..=n {
            let mut v = start;
            let mut steps = 0;
            while v != 0 {
                v = parents[v - 1];
                steps += 1;
                if steps > n {
                    return Err(Error::InvalidTree(format!("cycle through {}", s[start - 1])));
                }
            }
        }
        Ok(RootedTree { s, parents })
    }

    pub fn trivial() -> Self {
        RootedTree {
            s: Vec::new(),
            parents: Vec::new(),
        }
    }

    /// Builds from `(parent value, child value)` pairs.
    pub fn from_edges(s: Vec<i64>, edges: &[(i64, i64)]) -> Result<Self> {
        check_s(&s)?;
        let mut parents = vec![usize::MAX; s.len()];
        for &(p, c) in edges {
            let pi = value_index(&s, p)?;
            let ci = value_index(&s, c)?;
            if ci == 0 {
                return Err(Error::InvalidTree("the root has no parent".into()));
            }
            if parents[ci - 1] != usize::MAX {
                return Err(Error::InvalidTree(format!("{c} has two parents")));
            }
            parents[ci - 1] = pi;
        }
        if let Some(j) = parents.iter().position(|&p| p == usize::MAX) {
            return Err(Error::InvalidTree(format!("{} has no parent", s[j])));
        }
        RootedTree::new(s, parents)
    }

    pub fn s(&self) -> &[i64] {
        &self.s
    }

    /// `n = |S|`.
    pub fn n(&self) -> usize {
        self.s.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.s.is_empty()
    }

    /// Value of vertex index `i` (`0` for the root).
    pub fn value(&self, i: usize) -> i64 {
        if i == 0 {
            0
        } else {
            self.s[i - 1]
        }
    }

    pub fn index_of(&self, value: i64) -> Option<usize> {
        value_index(&self.s, value).ok()
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        (i > 0).then(|| self.parents[i - 1])
    }

    /// Children of every vertex, increasing.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n() + 1];
        for (j, &p) in self.parents.iter().enumerate() {
            out[p].push(j + 1);
        }
        out
    }

    /// Vertices in breadth-first order from the root, children increasing.
    pub fn bfs_order(&self) -> Vec<usize> {
        let children = self.children();
        let mut order = vec![0];
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            order.extend(&children[v]);
        }
        order
    }

    /// Depth of each vertex.
    pub fn levels(&self) -> Vec<usize> {
        let mut level = vec![0; self.n() + 1];
        for v in self.bfs_order().into_iter().skip(1) {
            level[v] = level[self.parents[v - 1]] + 1;
        }
        level
    }

    /// Non-root vertex indices in the order the Prüfer code deletes them.
    pub fn deletion_order(&self) -> Result<Vec<usize>> {
        if self.is_trivial() {
            return Err(Error::TrivialTree);
        }
        let n = self.n();
        let mut remaining = vec![0usize; n + 1];
        for &p in &self.parents {
            remaining[p] += 1;
        }
        let mut leaves: BinaryHeap<usize> = (1..=n).filter(|&v| remaining[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = leaves.pop() {
            order.push(v);
            let p = self.parents[v - 1];
            remaining[p] -= 1;
            if p != 0 && remaining[p] == 0 {
                leaves.push(p);
            }
        }
        Ok(order)
    }
}

fn value_index(s: &[i64], value: i64) -> Result<usize> {
    if value == 0 {
        return Ok(0);
    }
    s.binary_search(&value)
        .map(|j| j + 1)
        .map_err(|_| Error::UnknownVertex(value.to_string()))
}

/// Prüfer code: delete the largest leaf `n` times, recording its parent.
/// Entries are vertex indices; the last is always `0`.
pub fn prufer_encode(t: &RootedTree) -> Result<Vec<usize>> {
    Ok(t.deletion_order()?
        .into_iter()
        .map(|v| t.parents[v - 1])
        .collect())
}

/// Same as [`prufer_encode`] but with vertex values.
pub fn prufer_encode_values(t: &RootedTree) -> Result<Vec<i64>> {
    Ok(prufer_encode(t)?.into_iter().map(|i| t.value(i)).collect())
}

// Shared decoder: returns parents (by index) and the deleted vertex of each step.
fn decode_indices(n: usize, seq: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    if n == 0 {
        return Err(Error::TrivialTree);
    }
    if seq.len() != n {
        return Err(Error::InvalidPrufer(format!("length {} for |S| = {n}", seq.len())));
    }
    if seq[n - 1] != 0 {
        return Err(Error::InvalidPrufer("last entry must be the root 0".into()));
    }
    if let Some(&w) = seq.iter().find(|&&w| w > n) {
        return Err(Error::InvalidPrufer(format!("index {w} out of range")));
    }
    let mut remaining = vec![0usize; n + 1];
    for &w in seq {
        remaining[w] += 1;
    }
    let mut leaves: BinaryHeap<usize> = (1..=n).filter(|&v| remaining[v] == 0).collect();
    let mut parents = vec![0; n];
    let mut deleted = Vec::with_capacity(n);
    for &w in seq {
        let v = leaves
            .pop()
            .ok_or_else(|| Error::InvalidPrufer("ran out of leaves".into()))?;
        parents[v - 1] = w;
        deleted.push(v);
        remaining[w] -= 1;
        if w != 0 && remaining[w] == 0 {
            leaves.push(w);
        }
    }
    Ok((parents, deleted))
}

/// Inverse of [`prufer_encode_values`].
pub fn prufer_decode(seq: &[i64], s: &[i64]) -> Result<RootedTree> {
    check_s(s)?;
    let idx = seq
        .iter()
        .map(|&w| value_index(s, w).map_err(|_| Error::InvalidPrufer(format!("{w} is not in S ∪ {{0}}"))))
        .collect::<Result<Vec<_>>>()?;
    let (parents, _) = decode_indices(s.len(), &idx)?;
    RootedTree::new(s.to_vec(), parents)
}

/// Every rooted tree on `S ∪ {0}`, in lexicographic order of Prüfer codes.
pub fn enumerate_rooted_trees(s: &[i64]) -> Result<impl Iterator<Item = RootedTree>> {
    let vertex_data = vec![1; s.len() + 1];
    Ok(enumerate_mnr(s, &vertex_data)?.map(|m| m.tree))
}

/// A rooted tree whose vertex `i` holds `f_i` ordered nodes, each non-root
/// vertex hanging from node `β ∈ [1, f_parent]` of its parent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiNodedRootedTree {
    tree: RootedTree,
    vertex_data: Vec<usize>,
    // β of the edge above vertex j + 1
    betas: Vec<usize>,
}

impl MultiNodedRootedTree {
    pub fn new(tree: RootedTree, vertex_data: Vec<usize>, betas: Vec<usize>) -> Result<Self> {
        check_vertex_data(&vertex_data, tree.n())?;
        if betas.len() != tree.n() {
            return Err(Error::SizeMismatch {
                expected: tree.n(),
                found: betas.len(),
            });
        }
        for (j, &b) in betas.iter().enumerate() {
            let bound = vertex_data[tree.parents[j]];
            if b == 0 || b > bound {
                return Err(Error::BetaOutOfRange {
                    column: j + 1,
                    beta: b,
                    bound,
                });
            }
        }
        Ok(MultiNodedRootedTree {
            tree,
            vertex_data,
            betas,
        })
    }

    /// Builds from `(parent value, child value, β)` triples.
    pub fn from_edges(s: Vec<i64>, vertex_data: Vec<usize>, edges: &[(i64, i64, usize)]) -> Result<Self> {
        let pairs: Vec<(i64, i64)> = edges.iter().map(|&(p, c, _)| (p, c)).collect();
        let tree = RootedTree::from_edges(s, &pairs)?;
        let mut betas = vec![0; tree.n()];
        for &(_, c, b) in edges {
            betas[tree.index_of(c).unwrap() - 1] = b;
        }
        MultiNodedRootedTree::new(tree, vertex_data, betas)
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn s(&self) -> &[i64] {
        self.tree.s()
    }

    pub fn n(&self) -> usize {
        self.tree.n()
    }

    /// `(f₀, f₁, …, f_n)`.
    pub fn vertex_data(&self) -> &[usize] {
        &self.vertex_data
    }

    /// Total node count `Σ f_i`.
    pub fn node_count(&self) -> usize {
        self.vertex_data.iter().sum()
    }

    /// Parent index and β of vertex `i ≥ 1`.
    pub fn attachment(&self, i: usize) -> Option<(usize, usize)> {
        (i > 0).then(|| (self.tree.parents[i - 1], self.betas[i - 1]))
    }

    pub fn betas(&self) -> &[usize] {
        &self.betas
    }

    /// Child vertex indices attached to each node, increasing:
    /// `result[i][p]` lists the children hanging from node `p + 1` of vertex `i`.
    pub fn node_children(&self) -> Vec<Vec<Vec<usize>>> {
        let mut out: Vec<Vec<Vec<usize>>> = self.vertex_data.iter().map(|&f| vec![Vec::new(); f]).collect();
        for j in 1..=self.n() {
            let (p, b) = self.attachment(j).unwrap();
            out[p][b - 1].push(j);
        }
        out
    }

    /// `(parent value, child value, β)` triples ordered by child.
    pub fn edges(&self) -> Vec<(i64, i64, usize)> {
        (1..=self.n())
            .map(|j| {
                let (p, b) = self.attachment(j).unwrap();
                (self.tree.value(p), self.tree.value(j), b)
            })
            .collect()
    }
}

fn check_vertex_data(vertex_data: &[usize], n: usize) -> Result<()> {
    if vertex_data.len() != n + 1 {
        return Err(Error::InvalidVertexData(format!(
            "expected {} entries (f₀..f_n), found {}",
            n + 1,
            vertex_data.len()
        )));
    }
    if vertex_data.contains(&0) {
        return Err(Error::InvalidVertexData("every f_i must be positive".into()));
    }
    Ok(())
}

/// The generalized Prüfer matrix: column `i` is `(w_i, b_i)`, the parent of
/// the `i`-th deleted leaf and the β of the deleted edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PruferMatrix {
    s: Vec<i64>,
    vertex_data: Vec<usize>,
    // parent indices
    top: Vec<usize>,
    bottom: Vec<usize>,
}

impl PruferMatrix {
    /// Validates membership in `H` for the given vertex data.
    pub fn new(s: Vec<i64>, vertex_data: Vec<usize>, top: Vec<i64>, bottom: Vec<usize>) -> Result<Self> {
        check_s(&s)?;
        check_vertex_data(&vertex_data, s.len())?;
        let n = s.len();
        if n == 0 {
            return Err(Error::TrivialTree);
        }
        if top.len() != n || bottom.len() != n {
            return Err(Error::InvalidPrufer(format!("rows must have length {n}")));
        }
        let top = top
            .iter()
            .map(|&w| value_index(&s, w).map_err(|_| Error::InvalidPrufer(format!("{w} is not in S ∪ {{0}}"))))
            .collect::<Result<Vec<_>>>()?;
        if top[n - 1] != 0 {
            return Err(Error::InvalidPrufer("last column must have top entry 0".into()));
        }
        for (i, (&w, &b)) in top.iter().zip(&bottom).enumerate() {
            if b == 0 || b > vertex_data[w] {
                return Err(Error::BetaOutOfRange {
                    column: i + 1,
                    beta: b,
                    bound: vertex_data[w],
                });
            }
        }
        Ok(PruferMatrix {
            s,
            vertex_data,
            top,
            bottom,
        })
    }

    pub fn s(&self) -> &[i64] {
        &self.s
    }

    pub fn vertex_data(&self) -> &[usize] {
        &self.vertex_data
    }

    /// Top row as values (`0` for the root).
    pub fn top(&self) -> Vec<i64> {
        self.top
            .iter()
            .map(|&i| if i == 0 { 0 } else { self.s[i - 1] })
            .collect()
    }

    pub fn top_indices(&self) -> &[usize] {
        &self.top
    }

    pub fn bottom(&self) -> &[usize] {
        &self.bottom
    }
}

pub fn mnr_encode(m: &MultiNodedRootedTree) -> Result<PruferMatrix> {
    let order = m.tree.deletion_order()?;
    let top = order.iter().map(|&v| m.tree.parents[v - 1]).collect();
    let bottom = order.iter().map(|&v| m.betas[v - 1]).collect();
    Ok(PruferMatrix {
        s: m.s().to_vec(),
        vertex_data: m.vertex_data.clone(),
        top,
        bottom,
    })
}

pub fn mnr_decode(h: &PruferMatrix) -> Result<MultiNodedRootedTree> {
    let n = h.s.len();
    let (parents, deleted) = decode_indices(n, &h.top)?;
    let mut betas = vec![0; n];
    for (v, &b) in deleted.iter().zip(&h.bottom) {
        betas[v - 1] = b;
    }
    MultiNodedRootedTree::new(RootedTree::new(h.s.clone(), parents)?, h.vertex_data.clone(), betas)
}

/// `(Σ f_j)^{n−1} · f₀`.
pub fn mnr_cardinality(vertex_data: &[usize]) -> Result<BigUint> {
    if vertex_data.len() < 2 {
        return Err(Error::InvalidVertexData("need n ≥ 1".into()));
    }
    check_vertex_data(vertex_data, vertex_data.len() - 1)?;
    let total: usize = vertex_data.iter().sum();
    let n = vertex_data.len() - 1;
    Ok(BigUint::from(total).pow((n - 1) as u32) * BigUint::from(vertex_data[0]))
}

/// Streams every multi-noded rooted tree with the given vertex data by
/// decoding `H` in lexicographic column order.
pub fn enumerate_mnr(s: &[i64], vertex_data: &[usize]) -> Result<MnrStream> {
    check_s(s)?;
    check_vertex_data(vertex_data, s.len())?;
    if s.is_empty() {
        return Err(Error::TrivialTree);
    }
    let columns: Vec<(usize, usize)> = vertex_data
        .iter()
        .enumerate()
        .flat_map(|(w, &f)| (1..=f).map(move |b| (w, b)))
        .collect();
    Ok(MnrStream {
        s: s.to_vec(),
        vertex_data: vertex_data.to_vec(),
        columns,
        digits: vec![0; s.len()],
        done: false,
    })
}

pub struct MnrStream {
    s: Vec<i64>,
    vertex_data: Vec<usize>,
    columns: Vec<(usize, usize)>,
    // indices into `columns`; the last digit ranges over root columns only
    digits: Vec<usize>,
    done: bool,
}

impl MnrStream {
    fn advance(&mut self) {
        let n = self.digits.len();
        let last = n - 1;
        self.digits[last] += 1;
        if self.digits[last] < self.vertex_data[0] {
            return;
        }
        self.digits[last] = 0;
        for i in (0..last).rev() {
            self.digits[i] += 1;
            if self.digits[i] < self.columns.len() {
                return;
            }
            self.digits[i] = 0;
        }
        self.done = true;
    }
}

impl Iterator for MnrStream {
    type Item = MultiNodedRootedTree;

    fn next(&mut self) -> Option<MultiNodedRootedTree> {
        if self.done {
            return None;
        }
        let (top, bottom): (Vec<usize>, Vec<usize>) = self.digits.iter().map(|&c| self.columns[c]).unzip();
        let h = PruferMatrix {
            s: self.s.clone(),
            vertex_data: self.vertex_data.clone(),
            top,
            bottom,
        };
        self.advance();
        Some(mnr_decode(&h).expect("every column sequence lies in H"))
    }
}

/// A multi-noded rooted tree with its nodes bijectively labeled by `[d]`,
/// `d = Σ f_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledMnr {
    mnr: MultiNodedRootedTree,
    // labels[i][p]: label of node p + 1 in vertex i
    labels: Vec<Vec<usize>>,
}

impl LabeledMnr {
    pub fn new(mnr: MultiNodedRootedTree, labels: Vec<Vec<usize>>) -> Result<Self> {
        let d = mnr.node_count();
        let shape: Vec<usize> = labels.iter().map(Vec::len).collect();
        if shape != mnr.vertex_data {
            return Err(Error::InvalidLabeling(format!(
                "label shape {shape:?} does not match vertex data {:?}",
                mnr.vertex_data
            )));
        }
        let mut seen = vec![false; d + 1];
        for &l in labels.iter().flatten() {
            if l == 0 || l > d || seen[l] {
                return Err(Error::InvalidLabeling(format!("label {l} is out of range or repeated")));
            }
            seen[l] = true;
        }
        Ok(LabeledMnr { mnr, labels })
    }

    /// Builds from a `(vertex value, position) → label` map.
    pub fn from_map(mnr: MultiNodedRootedTree, map: &BTreeMap<(i64, usize), usize>) -> Result<Self> {
        let mut labels: Vec<Vec<usize>> = mnr.vertex_data.iter().map(|&f| vec![0; f]).collect();
        if map.len() != mnr.node_count() {
            return Err(Error::InvalidLabeling(format!(
                "{} labels for {} nodes",
                map.len(),
                mnr.node_count()
            )));
        }
        for (&(v, p), &l) in map {
            let i = mnr
                .tree
                .index_of(v)
                .ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
            if p == 0 || p > mnr.vertex_data[i] {
                return Err(Error::InvalidLabeling(format!("vertex {v} has no node {p}")));
            }
            labels[i][p - 1] = l;
        }
        LabeledMnr::new(mnr, labels)
    }

    pub fn mnr(&self) -> &MultiNodedRootedTree {
        &self.mnr
    }

    pub fn into_mnr(self) -> MultiNodedRootedTree {
        self.mnr
    }

    pub fn d(&self) -> usize {
        self.mnr.node_count()
    }

    /// Labels of vertex `i`'s nodes, left to right.
    pub fn labels_of(&self, i: usize) -> &[usize] {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[Vec<usize>] {
        &self.labels
    }

    /// `(vertex value, position) → label`.
    pub fn label_map(&self) -> BTreeMap<(i64, usize), usize> {
        self.labels
            .iter()
            .enumerate()
            .flat_map(|(i, ls)| {
                let v = self.mnr.tree.value(i);
                ls.iter().enumerate().map(move |(p, &l)| ((v, p + 1), l))
            })
            .collect()
    }

    /// Label of the node a non-root vertex hangs from.
    pub fn parent_label(&self, i: usize) -> Option<usize> {
        self.mnr.attachment(i).map(|(p, b)| self.labels[p][b - 1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const S: [i64; 9] = [21, 22, 23, 24, 25, 26, 27, 28, 29];

    // (parent, child, β) of the running example, by child
    fn running_edges() -> Vec<(i64, i64, usize)> {
        vec![
            (29, 21, 3),
            (23, 22, 1),
            (0, 23, 1),
            (29, 24, 1),
            (0, 25, 1),
            (22, 26, 2),
            (29, 27, 3),
            (23, 28, 1),
            (25, 29, 1),
        ]
    }

    fn running_mnr() -> MultiNodedRootedTree {
        MultiNodedRootedTree::from_edges(S.to_vec(), vec![1, 1, 2, 1, 2, 2, 3, 3, 1, 4], &running_edges()).unwrap()
    }

    #[test]
    fn prufer_of_running_tree() {
        let t = running_mnr().tree().clone();
        assert_eq!(
            prufer_encode_values(&t).unwrap(),
            vec![23, 29, 22, 29, 23, 0, 29, 25, 0]
        );
        assert_eq!(prufer_decode(&[23, 29, 22, 29, 23, 0, 29, 25, 0], &S).unwrap(), t);
    }

    #[test]
    fn prufer_small_trees() {
        let edge = RootedTree::new(vec![5], vec![0]).unwrap();
        assert_eq!(prufer_encode_values(&edge).unwrap(), vec![0]);
        assert_eq!(prufer_decode(&[0], &[5]).unwrap(), edge);
        let star = RootedTree::new(vec![1, 2, 3], vec![0, 0, 0]).unwrap();
        assert_eq!(prufer_encode_values(&star).unwrap(), vec![0, 0, 0]);
        assert!(matches!(prufer_encode(&RootedTree::trivial()), Err(Error::TrivialTree)));
    }

    #[test]
    fn prufer_rejects_malformed() {
        assert!(prufer_decode(&[1, 2], &[1, 2]).is_err());
        assert!(prufer_decode(&[7, 0], &[1, 2]).is_err());
        assert!(prufer_decode(&[0], &[1, 2]).is_err());
        assert!(RootedTree::new(vec![1, 2], vec![2, 1]).is_err());
        assert!(RootedTree::new(vec![0, 2], vec![0, 0]).is_err());
    }

    #[test]
    fn matrix_of_running_example() {
        let h = mnr_encode(&running_mnr()).unwrap();
        assert_eq!(h.top(), vec![23, 29, 22, 29, 23, 0, 29, 25, 0]);
        assert_eq!(h.bottom(), &[1, 3, 2, 1, 1, 1, 3, 1, 1]);
        assert_eq!(mnr_decode(&h).unwrap(), running_mnr());
    }

    #[test]
    fn matrix_validation() {
        let vd = vec![1, 1, 2, 1, 2, 2, 3, 3, 1, 4];
        let top = vec![23, 29, 22, 29, 23, 0, 29, 25, 0];
        let mut bottom = vec![1, 3, 2, 1, 1, 1, 3, 1, 1];
        assert!(PruferMatrix::new(S.to_vec(), vd.clone(), top.clone(), bottom.clone()).is_ok());
        bottom[0] = 2; // s₃ has a single node
        assert!(matches!(
            PruferMatrix::new(S.to_vec(), vd, top, bottom),
            Err(Error::BetaOutOfRange { column: 1, beta: 2, bound: 1 })
        ));
    }

    #[test]
    fn all_ones_bottom_row() {
        let t = RootedTree::new(vec![1, 2, 3], vec![2, 0, 2]).unwrap();
        let m = MultiNodedRootedTree::new(t.clone(), vec![1; 4], vec![1; 3]).unwrap();
        let h = mnr_encode(&m).unwrap();
        assert_eq!(h.bottom(), &[1, 1, 1]);
        assert_eq!(h.top(), prufer_encode_values(&t).unwrap());
    }

    #[test]
    fn cardinalities() {
        assert_eq!(mnr_cardinality(&[1, 1, 1]).unwrap(), BigUint::from(3u32));
        assert_eq!(mnr_cardinality(&[1, 1, 2]).unwrap(), BigUint::from(4u32));
        assert_eq!(mnr_cardinality(&[3, 5]).unwrap(), BigUint::from(3u32));
        assert_eq!(
            mnr_cardinality(&[1, 1, 2, 1, 2, 2, 3, 3, 1, 4]).unwrap(),
            BigUint::from(20u32).pow(8)
        );
        assert!(mnr_cardinality(&[1]).is_err());
        assert!(mnr_cardinality(&[1, 0]).is_err());
    }

    #[test]
    fn enumeration_matches_cardinality() {
        for vd in [vec![1, 1, 1], vec![1, 1, 2], vec![3, 5], vec![1, 2, 1, 2], vec![2, 1, 1, 1]] {
            let s: Vec<i64> = (1..vd.len() as i64).collect();
            let all: Vec<_> = enumerate_mnr(&s, &vd).unwrap().collect();
            let expected = mnr_cardinality(&vd).unwrap();
            assert_eq!(BigUint::from(all.len()), expected, "{vd:?}");
            let mut dedup = all.clone();
            dedup.sort_by_key(|m| (m.tree().parents.clone(), m.betas.clone()));
            dedup.dedup();
            assert_eq!(dedup.len(), all.len());
        }
    }

    #[test]
    fn enumeration_order_is_lexicographic() {
        let s = [1, 2];
        let codes: Vec<(Vec<usize>, Vec<usize>)> = enumerate_mnr(&s, &[1, 1, 2])
            .unwrap()
            .map(|m| {
                let h = mnr_encode(&m).unwrap();
                (h.top_indices().to_vec(), h.bottom().to_vec())
            })
            .collect();
        let columns: Vec<(usize, usize)> = codes.iter().map(|(t, b)| (t[0], b[0])).collect();
        assert_eq!(columns, vec![(0, 1), (1, 1), (2, 1), (2, 2)]);
    }

    #[test]
    fn rooted_tree_enumeration() {
        let trees: Vec<_> = enumerate_rooted_trees(&[1, 2, 3]).unwrap().collect();
        assert_eq!(trees.len(), 16);
    }

    #[test]
    fn labeled_validation() {
        let m = MultiNodedRootedTree::from_edges(vec![4], vec![1, 2], &[(0, 4, 1)]).unwrap();
        assert!(LabeledMnr::new(m.clone(), vec![vec![1], vec![2, 3]]).is_ok());
        assert!(LabeledMnr::new(m.clone(), vec![vec![1], vec![2, 2]]).is_err());
        assert!(LabeledMnr::new(m.clone(), vec![vec![1], vec![2, 4]]).is_err());
        assert!(LabeledMnr::new(m, vec![vec![1, 2], vec![3]]).is_err());
    }
}

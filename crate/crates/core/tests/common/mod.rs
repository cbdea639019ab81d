//! Naive reference implementations shared by the integration suites. Nothing
//! here calls into the library, so agreement with it is meaningful.

#![allow(dead_code)]

/// Permutation of `0..d` as an image table.
pub type P = Vec<usize>;

pub fn identity(d: usize) -> P {
    (0..d).collect()
}

/// `(ab)(x) = a(b(x))`.
pub fn mul(a: &P, b: &P) -> P {
    b.iter().map(|&x| a[x]).collect()
}

pub fn inv(a: &P) -> P {
    let mut out = vec![0; a.len()];
    for (x, &y) in a.iter().enumerate() {
        out[y] = x;
    }
    out
}

/// Cycles including fixed points, each started at its minimum, sorted.
pub fn cycles_of(p: &P) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut c = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            c.push(x);
            x = p[x];
        }
        out.push(c);
    }
    out
}

/// Sorted cycle lengths.
pub fn cycle_type(p: &P) -> Vec<usize> {
    let mut t: Vec<usize> = cycles_of(p).iter().map(Vec::len).collect();
    t.sort_unstable();
    t
}

pub fn is_pure_cycle(p: &P, e: usize) -> bool {
    let moved = cycles_of(p).into_iter().filter(|c| c.len() > 1).collect::<Vec<_>>();
    moved.len() == 1 && moved[0].len() == e
}

/// Permutation from one cycle written on 0-based points.
pub fn from_cycle(d: usize, c: &[usize]) -> P {
    let mut p = identity(d);
    for i in 0..c.len() {
        p[c[i]] = c[(i + 1) % c.len()];
    }
    p
}

/// The standard long cycle `x ↦ x + 1 mod d`.
pub fn long_cycle(d: usize) -> P {
    (0..d).map(|x| (x + 1) % d).collect()
}

fn subsets(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..d {
            cur.push(x);
            go(x + 1, d, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, d, k, &mut Vec::new(), &mut out);
    out
}

pub fn k_subsets(d: usize, k: usize) -> Vec<Vec<usize>> {
    subsets(d, k)
}

fn arrangements(rest: &[usize]) -> Vec<Vec<usize>> {
    if rest.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..rest.len() {
        let mut r = rest.to_vec();
        let x = r.remove(i);
        for mut tail in arrangements(&r) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// All `k`-cycles on `0..d`; `k = 1` gives the identity once.
pub fn k_cycles(d: usize, k: usize) -> Vec<P> {
    if k == 1 {
        return vec![identity(d)];
    }
    let mut out = Vec::new();
    for set in subsets(d, k) {
        for tail in arrangements(&set[1..]) {
            let mut c = vec![set[0]];
            c.extend(tail);
            out.push(from_cycle(d, &c));
        }
    }
    out
}

/// All permutations of `0..d`.
pub fn all_perms(d: usize) -> Vec<P> {
    arrangements(&identity(d))
}

/// Calls `visit` on every tuple of pure cycles of lengths `e` multiplying to
/// `target`; the last factor is solved for rather than searched.
pub fn for_each_factorization(target: &P, e: &[usize], visit: &mut dyn FnMut(&[P])) {
    let d = target.len();
    let pools: Vec<Vec<P>> = e[..e.len() - 1].iter().map(|&k| k_cycles(d, k)).collect();
    let last_len = *e.last().unwrap();
    let mut chosen: Vec<P> = Vec::new();
    fn go(
        i: usize,
        prefix: &P,
        pools: &[Vec<P>],
        target: &P,
        last_len: usize,
        chosen: &mut Vec<P>,
        visit: &mut dyn FnMut(&[P]),
    ) {
        if i == pools.len() {
            let last = mul(&inv(prefix), target);
            if is_pure_cycle(&last, last_len) {
                chosen.push(last);
                visit(chosen);
                chosen.pop();
            }
            return;
        }
        for s in &pools[i] {
            chosen.push(s.clone());
            go(i + 1, &mul(prefix, s), pools, target, last_len, chosen, visit);
            chosen.pop();
        }
    }
    go(0, &identity(d), &pools, target, last_len, &mut chosen, visit);
}

pub fn count_factorizations(d: usize, e: &[usize]) -> u64 {
    let mut n = 0;
    for_each_factorization(&long_cycle(d), e, &mut |_| n += 1);
    n
}

/// Do the permutations generate a transitive group on `0..d`?
pub fn transitive(d: usize, perms: &[P]) -> bool {
    let mut parent: Vec<usize> = (0..d).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for p in perms {
        for (x, &y) in p.iter().enumerate() {
            let (a, b) = (find(&mut parent, x), find(&mut parent, y));
            parent[a] = b;
        }
    }
    let root = find(&mut parent, 0);
    (0..d).all(|x| find(&mut parent, x) == root)
}

/// Transitive tuples with product one whose factors have the given cycle
/// types (sorted lengths, fixed points included), divided by `d!`. The last
/// factor is solved for.
pub fn hurwitz(d: usize, types: &[Vec<usize>]) -> (u64, u64) {
    let all = all_perms(d);
    let pools: Vec<Vec<P>> = types[..types.len() - 1]
        .iter()
        .map(|t| all.iter().filter(|p| &cycle_type(p) == t).cloned().collect())
        .collect();
    let last_type = types.last().unwrap().clone();
    let mut count = 0u64;
    let mut chosen = Vec::new();
    fn go(i: usize, prefix: &P, pools: &[Vec<P>], last_type: &[usize], chosen: &mut Vec<P>, count: &mut u64) {
        if i == pools.len() {
            let last = inv(prefix);
            if cycle_type(&last) == last_type {
                chosen.push(last);
                if transitive(prefix.len(), chosen) {
                    *count += 1;
                }
                chosen.pop();
            }
            return;
        }
        for s in &pools[i] {
            chosen.push(s.clone());
            go(i + 1, &mul(prefix, s), pools, last_type, chosen, count);
            chosen.pop();
        }
    }
    go(0, &identity(d), &pools, &last_type, &mut chosen, &mut count);
    let fact: u64 = (1..=d as u64).product();
    (count, fact)
}

/// Cycle type `(e, 1, …, 1)` of degree `d`.
pub fn pure_type(d: usize, e: usize) -> Vec<usize> {
    let mut t = vec![1; d - e];
    t.push(e);
    t.sort_unstable();
    t
}

/// Compositions of `n` into positive parts.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Factor-length tuples `e` with `Σ(eᵢ − 1) = d − 1`.
pub fn genus_zero(d: usize) -> Vec<Vec<usize>> {
    compositions(d - 1)
        .into_iter()
        .map(|c| c.into_iter().map(|x| x + 1).collect())
        .collect()
}

/// Connected components of a graph on `0..n` given by an edge list.
pub fn components(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = next;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if comp[y] == usize::MAX {
                    comp[y] = next;
                    stack.push(y);
                }
            }
        }
        next += 1;
    }
    comp
}

/// A bipartite graph on points `0..d` and S-vertices `d..d+n`, from the
/// supports of `n` factors.
pub struct Bigraph {
    pub d: usize,
    pub supports: Vec<Vec<usize>>,
}

impl Bigraph {
    fn edges_without(&self, skip: Option<usize>) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (j, sup) in self.supports.iter().enumerate() {
            for &v in sup {
                if skip != Some(v) && skip != Some(self.d + j) {
                    out.push((v, self.d + j));
                }
            }
        }
        out
    }

    fn size(&self) -> usize {
        self.d + self.supports.len()
    }

    pub fn is_tree(&self) -> bool {
        let edges = self.edges_without(None);
        edges.len() + 1 == self.size() && components(self.size(), &edges).iter().all(|&c| c == 0)
    }

    /// Removing S-vertex `j` leaves components whose points are arcs of the
    /// standard circle.
    pub fn has_cpp(&self, j: usize) -> bool {
        let comp = components(self.size(), &self.edges_without(Some(self.d + j)));
        let mut labels: Vec<usize> = (0..self.d).map(|v| comp[v]).collect();
        labels.dedup();
        if labels.len() > 1 && labels.first() == labels.last() {
            labels.pop();
        }
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == labels.len()
    }

    /// Walking counterclockwise from `v`, the pieces are consecutive and
    /// belong to the S-neighbors of `v` in increasing order.
    pub fn has_cicpp(&self, v: usize) -> bool {
        let comp = components(self.size(), &self.edges_without(Some(v)));
        let want: Vec<usize> = (0..self.supports.len())
            .filter(|&j| self.supports[j].contains(&v))
            .map(|j| comp[self.d + j])
            .collect();
        let mut seen: Vec<usize> = (1..self.d).map(|k| comp[(v + self.d - k) % self.d]).collect();
        seen.dedup();
        seen == want
    }
}

//! Permutations and cycles of `[d] = {1, ..., d}`.
//!
//! Composition is right-to-left: `p.compose(q)` maps `x` to `p(q(x))`, so in a
//! product `σ₁ σ₂ ⋯ σₖ` the rightmost factor acts first.
//!
//! Also home to the circle `𝒞_γ` of a cycle, i.e. its support laid out
//! clockwise in cycle order, and the two facts about products `μη` read off
//! that circle: `η` reads counterclockwise iff `μη` has the maximal number of
//! cycles, and then the cycles of `μη` are consecutive arcs.

use std::fmt;

use crate::error::{Error, Result};

/// An element of `S_d`, stored as its one-line image table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // images[x - 1] = p(x)
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (1..=degree).collect(),
        }
    }

    /// Builds a permutation from its one-line notation `(p(1), ..., p(d))`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        if d == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        let mut seen = vec![false; d];
        for &y in &images {
            if y == 0 || y > d {
                return Err(Error::InvalidPermutation(format!(
                    "image {y} outside [1, {d}]"
                )));
            }
            if std::mem::replace(&mut seen[y - 1], true) {
                return Err(Error::InvalidPermutation(format!("image {y} repeated")));
            }
        }
        Ok(Permutation { images })
    }

    /// The ordered product `c₁ c₂ ⋯ cₖ` of the given cycles.
    pub fn from_cycles(degree: usize, cycles: &[Cycle]) -> Result<Self> {
        let mut acc = Permutation::identity(degree);
        for c in cycles {
            acc = acc.compose(&c.to_permutation())?;
        }
        Ok(acc)
    }

    /// Parses `()` or a product of cycles such as `(1 3)(2 4 5)`.
    pub fn parse(degree: usize, text: &str) -> Result<Self> {
        let cycles = parse_cycle_list(degree, text)?;
        Permutation::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `p(x)` for `x ∈ [d]`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &y) in self.images.iter().enumerate() {
            inv[y - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&x| self.images[x - 1]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| y == i + 1)
    }

    /// Disjoint cycle decomposition including 1-cycles, sorted by minimum element.
    pub fn cycles(&self) -> Vec<Cycle> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 1..=d {
            if seen[start - 1] {
                continue;
            }
            let mut elements = Vec::new();
            let mut x = start;
            while !seen[x - 1] {
                seen[x - 1] = true;
                elements.push(x);
                x = self.apply(x);
            }
            // start is the smallest unseen point, so the cycle is already canonical
            out.push(Cycle { degree: d, elements });
        }
        out
    }

    pub fn num_cycles(&self) -> usize {
        count_cycles(&self.images)
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_parts_unchecked(self.cycles().iter().map(Cycle::len).collect())
    }

    /// The unique nontrivial cycle, if this permutation is an `e`-cycle.
    pub fn as_single_cycle(&self) -> Option<Cycle> {
        let mut nontrivial = self.cycles().into_iter().filter(|c| c.len() > 1);
        let c = nontrivial.next()?;
        nontrivial.next().is_none().then_some(c)
    }

    pub fn index(&self) -> usize {
        self.degree() - self.num_cycles()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles().iter().filter(|c| c.len() > 1) {
            write!(f, "{c}")?;
            any = true;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

/// `p ∘ q`, right factor first.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    p.compose(q)
}

pub fn cycle_decomposition(p: &Permutation) -> Vec<Cycle> {
    p.cycles()
}

/// A cycle `(a₁ a₂ ⋯ aₑ)` of `S_d`, rotated so that its minimum leads.
///
/// Length-1 cycles are allowed; their support is the single fixed point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    degree: usize,
    elements: Vec<usize>,
}

impl Cycle {
    pub fn new(degree: usize, elements: Vec<usize>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidCycle("empty cycle".into()));
        }
        let mut seen = vec![false; degree];
        for &x in &elements {
            if x == 0 || x > degree {
                return Err(Error::InvalidCycle(format!(
                    "element {x} outside [1, {degree}]"
                )));
            }
            if std::mem::replace(&mut seen[x - 1], true) {
                return Err(Error::InvalidCycle(format!("element {x} repeated")));
            }
        }
        let mut elements = elements;
        let min_at = elements
            .iter()
            .enumerate()
            .min_by_key(|&(_, &x)| x)
            .map(|(i, _)| i)
            .unwrap_or(0);
        elements.rotate_left(min_at);
        Ok(Cycle { degree, elements })
    }

    /// The long cycle `(1 2 ⋯ d)`.
    pub fn standard(degree: usize) -> Self {
        Cycle {
            degree,
            elements: (1..=degree).collect(),
        }
    }

    /// Parses `(a b c)`.
    pub fn parse(degree: usize, text: &str) -> Result<Self> {
        let mut cycles = parse_cycle_list(degree, text)?;
        match cycles.len() {
            1 => Ok(cycles.remove(0)),
            n => Err(Error::Parse(format!("expected one cycle, found {n}"))),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_nontrivial(&self) -> bool {
        self.elements.len() > 1
    }

    /// Canonical element sequence, minimum first.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.contains(&x)
    }

    /// Support in increasing order.
    pub fn support(&self) -> Vec<usize> {
        let mut s = self.elements.clone();
        s.sort_unstable();
        s
    }

    pub fn inverse(&self) -> Self {
        let mut rev = self.elements.clone();
        rev.reverse();
        Cycle::new(self.degree, rev).expect("reversal of a cycle is a cycle")
    }

    pub fn to_permutation(&self) -> Permutation {
        let mut images: Vec<usize> = (1..=self.degree).collect();
        let n = self.elements.len();
        for i in 0..n {
            images[self.elements[i] - 1] = self.elements[(i + 1) % n];
        }
        Permutation { images }
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

fn parse_cycle_list(degree: usize, text: &str) -> Result<Vec<Cycle>> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' at {rest:?}")))?;
        let close = body
            .find(')')
            .ok_or_else(|| Error::Parse("unbalanced parenthesis".into()))?;
        let inner = body[..close].trim();
        if !inner.is_empty() {
            let elements = inner
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad integer {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            out.push(Cycle::new(degree, elements)?);
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(out)
}

/// A partition `λ₁ ≥ λ₂ ≥ ⋯ ≥ λ_ℓ > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidType(
                "partition parts must be positive and nonempty".into(),
            ));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType(parts))
    }

    fn from_parts_unchecked(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(parts)
    }

    /// The type `(e, 1, ..., 1)` of an `e`-cycle in `S_d`.
    pub fn pure_cycle(d: usize, e: usize) -> Result<Self> {
        if e == 0 || e > d {
            return Err(Error::InvalidType(format!("cycle length {e} not in [1, {d}]")));
        }
        let mut parts = vec![e];
        parts.extend(std::iter::repeat_n(1, d - e));
        Ok(CycleType(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// `ι(λ) = Σ (λᵢ − 1)`.
    pub fn index(&self) -> usize {
        self.0.iter().map(|p| p - 1).sum()
    }

    /// `m_i`, the number of parts equal to `i`, for `i = 1..=total`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.total() + 1];
        for &p in &self.0 {
            m[p] += 1;
        }
        m
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn index(t: &CycleType) -> usize {
    t.index()
}

/// A consecutive piece of a circle: `len` points read clockwise from the
/// point at circle position `start`. The whole circle is a valid arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircleArc {
    pub start: usize,
    pub len: usize,
}

/// The circle `𝒞_γ`: the support of a cycle placed clockwise in cycle order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleOrder {
    base: Cycle,
    // position[x] = index of x in base.elements, or None if x ∉ supp(base)
    position: Vec<Option<usize>>,
}

impl CircleOrder {
    pub fn new(base: &Cycle) -> Self {
        let mut position = vec![None; base.degree + 1];
        for (i, &x) in base.elements.iter().enumerate() {
            position[x] = Some(i);
        }
        CircleOrder {
            base: base.clone(),
            position,
        }
    }

    pub fn base(&self) -> &Cycle {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.position.get(x).copied().flatten().is_some()
    }

    pub fn position(&self, x: usize) -> Option<usize> {
        self.position.get(x).copied().flatten()
    }

    pub fn at(&self, pos: usize) -> usize {
        self.base.elements[pos % self.len()]
    }

    /// Next point clockwise.
    pub fn next(&self, x: usize) -> usize {
        let p = self.position(x).expect("point on circle");
        self.at(p + 1)
    }

    /// Next point counterclockwise.
    pub fn prev(&self, x: usize) -> usize {
        let p = self.position(x).expect("point on circle");
        self.at(p + self.len() - 1)
    }

    /// Points of an arc in clockwise order.
    pub fn arc_elements(&self, arc: CircleArc) -> Vec<usize> {
        (0..arc.len).map(|i| self.at(arc.start + i)).collect()
    }

    /// The arc whose point set is `points`, if that set is a consecutive piece.
    pub fn arc_of(&self, points: &[usize]) -> Option<CircleArc> {
        if points.is_empty() {
            return None;
        }
        let mut member = vec![false; self.len()];
        for &x in points {
            let p = self.position(x)?;
            if std::mem::replace(&mut member[p], true) {
                return None;
            }
        }
        let n = self.len();
        if points.len() == n {
            return Some(CircleArc { start: 0, len: n });
        }
        let mut starts = (0..n).filter(|&p| member[p] && !member[(p + n - 1) % n]);
        let start = starts.next()?;
        starts.next().is_none().then_some(CircleArc {
            start,
            len: points.len(),
        })
    }

    /// Reads `points` clockwise starting right after the position of `from`.
    pub fn clockwise_from(&self, from: usize, points: &[usize]) -> Vec<usize> {
        let n = self.len();
        let origin = self.position(from).unwrap_or(0);
        let mut v: Vec<usize> = points.to_vec();
        v.sort_by_key(|&x| (self.position(x).unwrap_or(0) + n - origin) % n);
        v
    }
}

/// Whether reading `eta` in cycle order walks once around `𝒞_base`
/// counterclockwise. Cycles of length at most two are counted as such.
pub fn is_counterclockwise_on(eta: &Cycle, circle: &CircleOrder) -> Result<bool> {
    check_support(eta, circle)?;
    let p = eta.len();
    if p <= 2 {
        return Ok(true);
    }
    let q = circle.len();
    let winding: usize = (0..p)
        .map(|i| {
            let a = circle.position(eta.elements[i]).unwrap();
            let b = circle.position(eta.elements[(i + 1) % p]).unwrap();
            (a + q - b) % q
        })
        .sum();
    Ok(winding == q)
}

fn check_support(eta: &Cycle, circle: &CircleOrder) -> Result<()> {
    if eta.degree != circle.base.degree {
        return Err(Error::DegreeMismatch {
            expected: circle.base.degree,
            found: eta.degree,
        });
    }
    match eta.elements.iter().find(|&&x| !circle.contains(x)) {
        Some(&point) => Err(Error::SupportViolation { point }),
        None => Ok(()),
    }
}

/// Outcome of reading the product `μη` off the circle of `μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CircleSplit {
    /// `μη` has `|supp(η)|` cycles on `supp(μ)`; each is a consecutive
    /// arc, listed here clockwise and ordered by circle position of the
    /// arc start.
    Pieces(Vec<Vec<usize>>),
    /// Fewer cycles than `|supp(η)|`.
    NotMaximal { cycles: usize },
}

pub fn split_circle_product(mu: &Cycle, eta: &Cycle) -> Result<CircleSplit> {
    let circle = CircleOrder::new(mu);
    check_support(eta, &circle)?;
    let product = mu.to_permutation().compose(&eta.to_permutation())?;
    // points off supp(μ) are fixed by both factors
    let cycles: Vec<Cycle> = product
        .cycles()
        .into_iter()
        .filter(|c| circle.contains(c.elements[0]))
        .collect();
    if cycles.len() != eta.len() {
        return Ok(CircleSplit::NotMaximal {
            cycles: cycles.len(),
        });
    }
    let mut pieces: Vec<Vec<usize>> = cycles
        .iter()
        .map(|c| {
            let arc = circle
                .arc_of(&c.elements)
                .expect("cycles of a maximal product are arcs");
            circle.arc_elements(arc)
        })
        .collect();
    pieces.sort_by_key(|piece| circle.position(piece[0]));
    Ok(CircleSplit::Pieces(pieces))
}

/// Number of cycles (fixed points included) of a raw 1-based image table.
pub(crate) fn count_cycles(images: &[usize]) -> usize {
    let mut seen = vec![false; images.len()];
    let mut count = 0;
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = images[x] - 1;
        }
    }
    count
}

/// If `images` is a single `len`-cycle with every other point fixed, returns `true`.
pub(crate) fn is_single_cycle_of_len(images: &[usize], len: usize) -> bool {
    let moved = images
        .iter()
        .enumerate()
        .filter(|&(i, &y)| y != i + 1)
        .count();
    if moved != len {
        return false;
    }
    let Some(start) = images.iter().enumerate().position(|(i, &y)| y != i + 1) else {
        return len <= 1;
    };
    let mut steps = 1;
    let mut x = images[start] - 1;
    while x != start {
        steps += 1;
        x = images[x] - 1;
    }
    steps == len
}

/// `out = a ∘ b` on raw image tables.
pub(crate) fn compose_raw(a: &[usize], b: &[usize], out: &mut [usize]) {
    for (o, &x) in out.iter_mut().zip(b) {
        *o = a[x - 1];
    }
}

/// `out = a⁻¹ ∘ b` on raw image tables.
pub(crate) fn inverse_compose_raw(a: &[usize], b: &[usize], inv: &mut [usize], out: &mut [usize]) {
    for (i, &y) in a.iter().enumerate() {
        inv[y - 1] = i + 1;
    }
    compose_raw(inv, b, out);
}

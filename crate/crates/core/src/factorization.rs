//! Factorizations of a long cycle into cycles, Hurwitz tuples, and the
//! closed-form counts that apply to them.
//!
//! A factorization of `τ` of type `(e₁, …, e_{r−1})` is a tuple of cycles
//! with `σ₁ σ₂ ⋯ σ_{r−1} = τ` and `σᵢ` an `eᵢ`-cycle. Every such type has
//! `Σ(eᵢ − 1) = d − 1 + 2g` for a genus `g ≥ 0`; when `g = 0` there are
//! exactly `d^{r−2}` of them.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{compose_raw, inverse_compose_raw, is_single_cycle_of_len, Cycle, CycleType, Permutation};

/// Default brute-force cap for factorization counts.
pub const DEFAULT_FACTORIZATION_CAP: usize = 7;
/// Default brute-force cap for Hurwitz tuple enumeration.
pub const DEFAULT_HURWITZ_CAP: usize = 6;

/// `(d; e₁, …, e_{r−1})` with every `eᵢ ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactorizationType {
    d: usize,
    e: Vec<usize>,
}

impl FactorizationType {
    pub fn new(d: usize, e: Vec<usize>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidType("d must be positive".into()));
        }
        if e.is_empty() {
            return Err(Error::InvalidType("at least one factor is required (r >= 2)".into()));
        }
        if let Some(&bad) = e.iter().find(|&&x| x < 2 || x > d) {
            return Err(Error::InvalidType(format!(
                "cycle length {bad} not in [2, {d}]"
            )));
        }
        let excess = total_excess(&e);
        if excess < d - 1 || (excess - (d - 1)) % 2 == 1 {
            return Err(Error::InvalidType(format!(
                "sum of (e_i - 1) = {excess} is not d - 1 + 2g for an integer g >= 0 (d = {d})"
            )));
        }
        Ok(FactorizationType { d, e })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn e(&self) -> &[usize] {
        &self.e
    }

    /// Number of branch points `r`, i.e. one more than the number of factors.
    pub fn r(&self) -> usize {
        self.e.len() + 1
    }

    pub fn genus(&self) -> usize {
        (total_excess(&self.e) + 1 - self.d) / 2
    }
}

fn total_excess(e: &[usize]) -> usize {
    e.iter().map(|x| x.saturating_sub(1)).sum()
}

/// A tuple `(σ₁, …, σ_{r−1})` of cycles together with the target cycle `τ`.
///
/// Construction checks only shape; use [`Factorization::validate`] for the
/// product condition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization {
    tau: Cycle,
    sigmas: Vec<Cycle>,
}

impl Factorization {
    pub fn new(tau: Cycle, sigmas: Vec<Cycle>) -> Result<Self> {
        if sigmas.is_empty() {
            return Err(Error::InvalidType("at least one factor is required".into()));
        }
        for s in &sigmas {
            if s.degree() != tau.degree() {
                return Err(Error::DegreeMismatch {
                    expected: tau.degree(),
                    found: s.degree(),
                });
            }
            if !s.is_nontrivial() {
                return Err(Error::InvalidCycle(format!("factor {s} has length 1")));
            }
            if let Some(&point) = s.elements().iter().find(|&&x| !tau.contains(x)) {
                return Err(Error::SupportViolation { point });
            }
        }
        Ok(Factorization { tau, sigmas })
    }

    pub fn tau(&self) -> &Cycle {
        &self.tau
    }

    pub fn sigmas(&self) -> &[Cycle] {
        &self.sigmas
    }

    /// Ambient degree: the factors live in `S_degree`.
    pub fn degree(&self) -> usize {
        self.tau.degree()
    }

    /// Length of `τ`, the `d` of the factorization type.
    pub fn d(&self) -> usize {
        self.tau.len()
    }

    pub fn r(&self) -> usize {
        self.sigmas.len() + 1
    }

    /// Cycle lengths `(e₁, …, e_{r−1})`.
    pub fn type_e(&self) -> Vec<usize> {
        self.sigmas.iter().map(Cycle::len).collect()
    }

    pub fn product(&self) -> Permutation {
        self.sigmas
            .iter()
            .fold(Permutation::identity(self.degree()), |acc, s| {
                acc.compose(&s.to_permutation()).expect("degrees agree")
            })
    }

    /// Whether `σ₁ ⋯ σ_{r−1} = τ`.
    pub fn validate(&self) -> bool {
        self.product() == self.tau.to_permutation()
    }

    /// Whether the factor lengths are `e` and the product condition holds.
    pub fn validate_type(&self, e: &[usize]) -> bool {
        self.type_e() == e && self.validate()
    }
}

pub fn validate(f: &Factorization) -> bool {
    f.validate()
}

/// All `e`-cycles supported in `points`, in lexicographic order of their
/// canonical element sequences.
pub fn cycles_on(degree: usize, points: &[usize], e: usize) -> Vec<Cycle> {
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    if e == 0 || e > sorted.len() {
        return out;
    }
    for subset in itertools::Itertools::combinations(sorted.iter().copied(), e) {
        let (min, rest) = subset.split_first().unwrap();
        for tail in itertools::Itertools::permutations(rest.iter().copied(), e - 1) {
            let mut elements = Vec::with_capacity(e);
            elements.push(*min);
            elements.extend(tail);
            out.push(Cycle::new(degree, elements).expect("distinct points"));
        }
    }
    out.sort();
    out
}

/// Lexicographic stream over `Fac(d, r, τ; e₁, …, e_{r−1})`.
///
/// The first `r − 2` factors range over all cycles of their lengths; the last
/// is solved as `(σ₁ ⋯ σ_{r−2})⁻¹ τ` and kept when it is an `e_{r−1}`-cycle.
pub struct Factorizations {
    tau: Cycle,
    tau_images: Vec<usize>,
    e_last: usize,
    candidates: Vec<Arc<Vec<Cycle>>>,
    candidate_images: Vec<Arc<Vec<Vec<usize>>>>,
    // level 0 iterates over first_range only
    first_range: (usize, usize),
    idx: Vec<usize>,
    prods: Vec<Vec<usize>>,
    scratch_inv: Vec<usize>,
    scratch_last: Vec<usize>,
    state: StreamState,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum StreamState {
    Fresh,
    Running,
    Done,
}

/// Streams every factorization of `tau` of type `e`.
///
/// `tau` may be any cycle of `S_degree`; the factors are supported in `supp(τ)`.
pub fn enumerate_factorizations(tau: &Cycle, e: &[usize]) -> Result<Factorizations> {
    FactorizationType::new(tau.len(), e.to_vec())?;
    Ok(Factorizations::new(tau, e))
}

/// Cycles of one length with their image tables.
type CyclePool = (Arc<Vec<Cycle>>, Arc<Vec<Vec<usize>>>);

impl Factorizations {
    fn new(tau: &Cycle, e: &[usize]) -> Self {
        let degree = tau.degree();
        let mut cache: HashMap<usize, CyclePool> = HashMap::new();
        let prefix = &e[..e.len() - 1];
        let mut candidates = Vec::new();
        let mut candidate_images = Vec::new();
        for &len in prefix {
            let (c, i) = cache
                .entry(len)
                .or_insert_with(|| {
                    let cycles = cycles_on(degree, tau.elements(), len);
                    let images = cycles.iter().map(|c| c.to_permutation().images().to_vec()).collect();
                    (Arc::new(cycles), Arc::new(images))
                })
                .clone();
            candidates.push(c);
            candidate_images.push(i);
        }
        let first_len = candidates.first().map_or(0, |c| c.len());
        Factorizations {
            tau: tau.clone(),
            tau_images: tau.to_permutation().images().to_vec(),
            e_last: *e.last().unwrap(),
            first_range: (0, first_len),
            idx: vec![0; prefix.len()],
            prods: vec![vec![0; degree]; prefix.len()],
            scratch_inv: vec![0; degree],
            scratch_last: vec![0; degree],
            candidates,
            candidate_images,
            state: StreamState::Fresh,
        }
    }

    /// Number of choices for the first factor; partitions the search space.
    pub fn first_factor_choices(&self) -> usize {
        self.first_range.1
    }

    /// Restricts the stream to tuples whose first factor is choice `i`.
    pub fn restrict_first(mut self, i: usize) -> Self {
        if !self.candidates.is_empty() {
            let end = self.first_range.1;
            self.first_range = (i.min(end), (i + 1).min(end));
        }
        self
    }

    fn recompute_from(&mut self, level: usize) {
        for l in level..self.idx.len() {
            let img = &self.candidate_images[l][self.idx[l]];
            if l == 0 {
                self.prods[0].copy_from_slice(img);
            } else {
                let (done, rest) = self.prods.split_at_mut(l);
                compose_raw(&done[l - 1], img, &mut rest[0]);
            }
        }
    }

    fn level_end(&self, level: usize) -> usize {
        if level == 0 {
            self.first_range.1
        } else {
            self.candidates[level].len()
        }
    }

    // Moves to the next leaf; false when exhausted.
    fn advance(&mut self) -> bool {
        match self.state {
            StreamState::Done => false,
            StreamState::Fresh => {
                self.state = StreamState::Running;
                if self.idx.is_empty() {
                    return true;
                }
                self.idx[0] = self.first_range.0;
                if (0..self.idx.len()).any(|l| self.idx[l] >= self.level_end(l)) {
                    self.state = StreamState::Done;
                    return false;
                }
                self.recompute_from(0);
                true
            }
            StreamState::Running => {
                let mut level = self.idx.len();
                loop {
                    if level == 0 {
                        self.state = StreamState::Done;
                        return false;
                    }
                    level -= 1;
                    self.idx[level] += 1;
                    if self.idx[level] < self.level_end(level) {
                        break;
                    }
                    self.idx[level] = 0;
                }
                self.recompute_from(level);
                true
            }
        }
    }

    // Solves the last factor into scratch_last; true if it has the right shape.
    fn solve_last(&mut self) -> bool {
        match self.prods.last() {
            None => self.scratch_last.copy_from_slice(&self.tau_images),
            Some(prefix) => inverse_compose_raw(
                prefix,
                &self.tau_images,
                &mut self.scratch_inv,
                &mut self.scratch_last,
            ),
        }
        is_single_cycle_of_len(&self.scratch_last, self.e_last)
    }

    fn current(&self) -> Factorization {
        let mut sigmas: Vec<Cycle> = self
            .idx
            .iter()
            .enumerate()
            .map(|(l, &i)| self.candidates[l][i].clone())
            .collect();
        let last = Permutation::from_images(self.scratch_last.clone())
            .expect("solved factor is a permutation")
            .as_single_cycle()
            .expect("checked single cycle");
        sigmas.push(last);
        Factorization {
            tau: self.tau.clone(),
            sigmas,
        }
    }

    /// Counts the remaining stream without materializing factorizations.
    pub fn count_remaining(mut self) -> u64 {
        let mut n = 0;
        while self.advance() {
            if self.solve_last() {
                n += 1;
            }
        }
        n
    }
}

impl Iterator for Factorizations {
    type Item = Factorization;

    fn next(&mut self) -> Option<Factorization> {
        while self.advance() {
            if self.solve_last() {
                return Some(self.current());
            }
        }
        None
    }
}

/// Counts `Fac(d, r, τ; e)` by exhaustive search, split by first factor
/// across the rayon pool.
pub fn count_bruteforce(tau: &Cycle, e: &[usize]) -> Result<u64> {
    let stream = enumerate_factorizations(tau, e)?;
    if e.len() < 2 {
        return Ok(stream.count_remaining());
    }
    let choices = stream.first_factor_choices();
    Ok((0..choices)
        .into_par_iter()
        .map(|i| Factorizations::new(tau, e).restrict_first(i).count_remaining())
        .sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CountMethod {
    /// Exhaustive enumeration of the factorization stream.
    BruteForce,
    /// `d^{r−2}`, genus zero only.
    Formula,
    /// Pulls every multi-noded rooted tree of vertex data `(1, e₁−1, …)`
    /// back through the bijection and counts the distinct valid factorizations.
    Bijection,
}

impl CountMethod {
    pub const ALL: [CountMethod; 3] = [CountMethod::BruteForce, CountMethod::Formula, CountMethod::Bijection];

    pub fn name(self) -> &'static str {
        match self {
            CountMethod::BruteForce => "bruteforce",
            CountMethod::Formula => "formula",
            CountMethod::Bijection => "bijection",
        }
    }
}

impl std::str::FromStr for CountMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bruteforce" | "brute-force" => Ok(CountMethod::BruteForce),
            "formula" => Ok(CountMethod::Formula),
            "bijection" => Ok(CountMethod::Bijection),
            other => Err(Error::Parse(format!("unknown count method {other:?}"))),
        }
    }
}

/// `fac(d, r; e₁, …, e_{r−1})` for `τ = (1 2 ⋯ d)`.
///
/// `cap` bounds `d` for the enumerating methods.
pub fn count_factorizations(d: usize, e: &[usize], method: CountMethod, cap: usize) -> Result<BigUint> {
    let ftype = FactorizationType::new(d, e.to_vec())?;
    match method {
        CountMethod::Formula => {
            if ftype.genus() != 0 {
                return Err(Error::FormulaHypothesis(format!(
                    "d^(r-2) needs sum of (e_i - 1) = d - 1, got genus {}",
                    ftype.genus()
                )));
            }
            Ok(BigUint::from(d).pow((ftype.r() - 2) as u32))
        }
        CountMethod::BruteForce => {
            if d > cap {
                return Err(Error::CapExceeded { d, cap });
            }
            count_bruteforce(&Cycle::standard(d), e).map(BigUint::from)
        }
        CountMethod::Bijection => {
            if d > cap {
                return Err(Error::CapExceeded { d, cap });
            }
            crate::bijection::count_via_trees(d, e).map(BigUint::from)
        }
    }
}

/// Every genus-zero type for `d`: compositions `(e₁, …, e_{r−1})` with
/// `eᵢ ≥ 2` and `Σ(eᵢ − 1) = d − 1`, in lexicographic order.
pub fn genus_zero_types(d: usize) -> Vec<Vec<usize>> {
    fn go(remaining: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in 1..=remaining {
            prefix.push(part + 1);
            go(remaining - part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d >= 2 {
        go(d - 1, &mut Vec::new(), &mut out);
    }
    out
}

/// Count `d^{r−2} (r−1)! / ∏ n_m!` of factorizations with
/// `n_m` factors of length `m`.
pub fn count_by_cycle_index(d: usize, n: &BTreeMap<usize, usize>) -> Result<BigUint> {
    if let Some((&m, _)) = n.iter().find(|(&m, &c)| c > 0 && (m < 2 || m > d)) {
        return Err(Error::InvalidType(format!("cycle length {m} not in [2, {d}]")));
    }
    let weighted: usize = n.iter().map(|(&m, &c)| (m - 1) * c).sum();
    if d == 0 || weighted != d - 1 {
        return Err(Error::FormulaHypothesis(format!(
            "sum of (m - 1) n_m = {weighted} but d - 1 = {}",
            d.saturating_sub(1)
        )));
    }
    let factors: usize = n.values().sum();
    if factors == 0 {
        return Err(Error::FormulaHypothesis("cycle index has no factors".into()));
    }
    let r = factors + 1;
    let mut num = BigUint::from(d).pow((r - 2) as u32) * factorial(r - 1);
    for &c in n.values() {
        num /= factorial(c);
    }
    Ok(num)
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Hurwitz data `(d, r, g; λ¹, …, λʳ)`, the genus derived from the
/// Riemann–Hurwitz count `Σ ι(λⁱ) = 2d − 2 + 2g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzDatum {
    d: usize,
    lambdas: Vec<CycleType>,
}

impl HurwitzDatum {
    pub fn new(d: usize, lambdas: Vec<CycleType>) -> Result<Self> {
        if d == 0 || lambdas.is_empty() {
            return Err(Error::InvalidType("need d >= 1 and at least one branch point".into()));
        }
        if let Some(l) = lambdas.iter().find(|l| l.total() != d) {
            return Err(Error::InvalidType(format!("{l} is not a partition of {d}")));
        }
        let total: usize = lambdas.iter().map(CycleType::index).sum();
        if total + 2 < 2 * d || (total + 2 - 2 * d) % 2 == 1 {
            return Err(Error::InvalidType(format!(
                "total index {total} is not 2d - 2 + 2g for d = {d}"
            )));
        }
        Ok(HurwitzDatum { d, lambdas })
    }

    /// Pure-cycle data `(e₁, …, e_r)`.
    pub fn pure(d: usize, e: &[usize]) -> Result<Self> {
        let lambdas = e
            .iter()
            .map(|&x| CycleType::pure_cycle(d, x))
            .collect::<Result<Vec<_>>>()?;
        HurwitzDatum::new(d, lambdas)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn r(&self) -> usize {
        self.lambdas.len()
    }

    pub fn genus(&self) -> usize {
        let total: usize = self.lambdas.iter().map(CycleType::index).sum();
        (total + 2 - 2 * self.d) / 2
    }

    pub fn lambdas(&self) -> &[CycleType] {
        &self.lambdas
    }
}

/// All permutations of `S_d` grouped by cycle type, each group in
/// lexicographic order of one-line notation.
fn permutations_by_type(d: usize) -> HashMap<CycleType, Vec<Vec<usize>>> {
    let mut map: HashMap<CycleType, Vec<Vec<usize>>> = HashMap::new();
    for images in itertools::Itertools::permutations(1..=d, d) {
        let p = Permutation::from_images(images).expect("permutation");
        map.entry(p.cycle_type()).or_default().push(p.images().to_vec());
    }
    map
}

/// Union-find transitivity test over the cycles of every tuple member.
fn generates_transitive(d: usize, perms: &[&[usize]]) -> bool {
    let mut parent: Vec<usize> = (0..d).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = d;
    for p in perms {
        for (x, &y) in p.iter().enumerate() {
            let (a, b) = (find(&mut parent, x), find(&mut parent, y - 1));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
    }
    components == 1
}

/// Counts tuples `(σ₁, …, σ_r)` with the prescribed cycle types, product one,
/// and transitive generated group; returns that count divided by `d!`.
pub fn hurwitz_count_bruteforce(h: &HurwitzDatum, cap: usize) -> Result<BigRational> {
    let d = h.d;
    if d > cap {
        return Err(Error::CapExceeded { d, cap });
    }
    let classes = permutations_by_type(d);
    let empty = Vec::new();
    let lists: Vec<&Vec<Vec<usize>>> = h
        .lambdas
        .iter()
        .map(|l| classes.get(l).unwrap_or(&empty))
        .collect();
    let (last_type, prefix) = h.lambdas.split_last().unwrap();
    let prefix_lists = &lists[..prefix.len()];

    let count_from = |first: Option<usize>| -> u64 {
        let mut tuple: Vec<&[usize]> = Vec::with_capacity(h.r());
        let mut count = 0u64;
        count_tuples(d, prefix_lists, first, last_type, &mut tuple, &Permutation::identity(d), &mut count);
        count
    };
    let count: u64 = if prefix_lists.is_empty() {
        count_from(None)
    } else {
        (0..prefix_lists[0].len())
            .into_par_iter()
            .map(|i| count_from(Some(i)))
            .sum()
    };
    Ok(BigRational::new(BigInt::from(count), BigInt::from(factorial(d))))
}

fn count_tuples<'a>(
    d: usize,
    lists: &'a [&'a Vec<Vec<usize>>],
    first: Option<usize>,
    last_type: &CycleType,
    tuple: &mut Vec<&'a [usize]>,
    prefix: &Permutation,
    count: &mut u64,
) {
    let level = tuple.len();
    if level == lists.len() {
        let last = prefix.inverse();
        if &last.cycle_type() == last_type {
            let mut all: Vec<&[usize]> = tuple.clone();
            all.push(last.images());
            if generates_transitive(d, &all) {
                *count += 1;
            }
        }
        return;
    }
    let range: Box<dyn Iterator<Item = usize>> = match (level, first) {
        (0, Some(i)) => Box::new(std::iter::once(i)),
        _ => Box::new(0..lists[level].len()),
    };
    for i in range {
        let images = &lists[level][i];
        let next = prefix
            .compose(&Permutation::from_images(images.clone()).expect("permutation"))
            .expect("same degree");
        tuple.push(images);
        count_tuples(d, lists, first, last_type, tuple, &next, count);
        tuple.pop();
    }
}

/// Hurwitz number for `r − 1` simple branch points and one
/// arbitrary partition `(τ₁, …, τ_n)` at genus zero:
/// `(r−1)! d^{n−3} ∏ τᵢ^{τᵢ}/τᵢ! / ∏ m_i!`.
pub fn formula_hurwitz_simple(d: usize, r: usize, tau_partition: &CycleType) -> Result<BigRational> {
    if tau_partition.total() != d {
        return Err(Error::FormulaHypothesis(format!("{tau_partition} is not a partition of {d}")));
    }
    if r < 1 || (r - 1) + tau_partition.index() != 2 * d - 2 {
        return Err(Error::FormulaHypothesis(format!(
            "Riemann-Hurwitz fails: {} simple points plus index {} != 2d - 2 = {}",
            r.saturating_sub(1),
            tau_partition.index(),
            2 * d - 2
        )));
    }
    let n = tau_partition.parts().len() as i32;
    let mut value = BigRational::from_integer(BigInt::from(factorial(r - 1)));
    let d_big = BigRational::from_integer(BigInt::from(d));
    value *= pow_signed(&d_big, n - 3);
    for &t in tau_partition.parts() {
        let t_pow = BigInt::from(t).pow(t as u32);
        value *= BigRational::new(t_pow, BigInt::from(factorial(t)));
    }
    for m in tau_partition.multiplicities() {
        value /= BigRational::from_integer(BigInt::from(factorial(m)));
    }
    Ok(value)
}

fn pow_signed(base: &BigRational, exp: i32) -> BigRational {
    let p = num_traits::pow(base.clone(), exp.unsigned_abs() as usize);
    if exp >= 0 {
        p
    } else {
        p.recip()
    }
}

/// Four-point pure-cycle Hurwitz number `min{eᵢ(d + 1 − eᵢ)}` at genus zero.
pub fn formula_hurwitz_4point(d: usize, e: [usize; 4]) -> Result<u64> {
    if let Some(&bad) = e.iter().find(|&&x| x < 2 || x > d) {
        return Err(Error::FormulaHypothesis(format!("cycle length {bad} not in [2, {d}]")));
    }
    let excess = total_excess(&e);
    if excess != 2 * d - 2 {
        return Err(Error::FormulaHypothesis(format!(
            "sum of (e_i - 1) = {excess} but 2d - 2 = {}",
            2 * d - 2
        )));
    }
    Ok(e.iter().map(|&x| (x * (d + 1 - x)) as u64).min().unwrap())
}

/// `d^{r−3}`, the pure-cycle Hurwitz number with one branch point of full
/// ramification at genus zero.
pub fn formula_hurwitz_full_cycle(d: usize, e: &[usize]) -> Result<BigRational> {
    let fac = count_factorizations(d, e, CountMethod::Formula, usize::MAX)?;
    Ok(BigRational::new(BigInt::from(fac), BigInt::from(d)))
}

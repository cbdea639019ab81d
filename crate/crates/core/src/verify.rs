//! Exhaustive small-degree checks of every count and bijection, bounded by a
//! maximum degree. Each check reports pass/fail with a one-line detail.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bijection::{phi, phi_labeled, psi, unique_labeling};
use crate::error::{Error, Result};
use crate::factorization::{
    count_bruteforce, count_by_cycle_index, enumerate_factorizations, formula_hurwitz_4point,
    formula_hurwitz_simple, genus_zero_types, hurwitz_count_bruteforce, Factorization, HurwitzDatum,
};
use crate::graph::{enumerate_degree_graphs, graph_of, FactorizationGraph, SVertexSet};
use crate::mnr::{
    enumerate_mnr, mnr_cardinality, mnr_decode, mnr_encode, prufer_decode, prufer_encode_values, RootedTree,
};
use crate::perm::{split_circle_product, CircleOrder, CircleSplit, Cycle, CycleType, Permutation};

/// Names accepted by [`VerifyOptions::only`], in run order.
pub const CHECKS: &[(&str, &str)] = &[
    ("main-count", "brute-force count equals d^(r-2), d <= 6"),
    ("transpositions", "all-transposition count equals d^(d-2), up to max-d"),
    ("hurwitz-identity", "d * h(d, r, 0; e, d) equals the factorization count, d <= 5"),
    ("four-point", "four-point formula equals brute force, d <= 5"),
    ("simple-branch", "simple-branch formula equals brute force, d <= 4"),
    ("cycle-index", "cycle-index formula equals the sum over orderings, d <= 6"),
    ("prufer", "Prüfer codecs are bijective, sum f <= max-d + 1 (at most 7)"),
    ("pipeline", "graph -> tree map is a bijection inverted by the labeling, d <= 6"),
    ("characterization", "predicate-passing graphs are exactly the factorization graphs, d <= 5"),
    ("golden", "the 20-point running example converts to its known images"),
    ("circle-product", "three-way circle-product equivalence, q <= max-d + 1 (at most 7)"),
    ("last-split", "splitting at the last S-vertex gives consistent pieces, d <= 5"),
    ("clockwise", "every factor reads clockwise on the circle, d <= 6"),
    ("ci-cpp", "CICPP at all neighbors implies CPP, d <= 5"),
];

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub max_d: usize,
    pub seed: u64,
    pub only: Option<Vec<String>>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_d: 6,
            seed: 0,
            only: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

type CheckResult = std::result::Result<String, String>;

pub fn run(opts: &VerifyOptions) -> Result<Vec<CheckOutcome>> {
    if let Some(only) = &opts.only {
        if let Some(bad) = only.iter().find(|n| !CHECKS.iter().any(|(c, _)| c == n)) {
            return Err(Error::Parse(format!("unknown check {bad:?}")));
        }
    }
    let mut outcomes = Vec::new();
    for &(name, _) in CHECKS {
        if opts.only.as_ref().is_some_and(|o| !o.iter().any(|n| n == name)) {
            continue;
        }
        let start = Instant::now();
        let result = run_check(name, opts);
        outcomes.push(CheckOutcome {
            name,
            passed: result.is_ok(),
            detail: result.unwrap_or_else(|e| e),
            elapsed: start.elapsed(),
        });
    }
    Ok(outcomes)
}

fn run_check(name: &str, opts: &VerifyOptions) -> CheckResult {
    let m = opts.max_d;
    match name {
        "main-count" => main_count(m.min(6)),
        "transpositions" => transpositions(m),
        "hurwitz-identity" => hurwitz_identity(m.min(5)),
        "four-point" => four_point(m.min(5)),
        "simple-branch" => simple_branch(m.min(4)),
        "cycle-index" => cycle_index(m.min(6)),
        "prufer" => prufer((m + 1).min(7), opts.seed),
        "pipeline" => pipeline(m.min(6)),
        "characterization" => characterization(m.min(5)),
        "golden" => golden(),
        "circle-product" => circle_product((m + 1).min(7)),
        "last-split" => last_split(m.min(5)),
        "clockwise" => clockwise(m.min(6)),
        "ci-cpp" => ci_cpp(m.min(5)),
        _ => unreachable!("names validated in run"),
    }
}

pub fn all_passed(outcomes: &[CheckOutcome]) -> bool {
    outcomes.iter().all(|o| o.passed)
}

/// Fixed-width pass/fail table.
pub fn report(outcomes: &[CheckOutcome]) -> String {
    let mut out = String::new();
    for o in outcomes {
        let _ = writeln!(
            out,
            "{:<18} {:<4} {:>8.2}s  {}",
            o.name,
            if o.passed { "PASS" } else { "FAIL" },
            o.elapsed.as_secs_f64(),
            o.detail
        );
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let _ = writeln!(out, "{} checks, {} failed", outcomes.len(), failed);
    out
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn s_default(d: usize, n: usize) -> SVertexSet {
    SVertexSet::default_for(d, n)
}

fn main_count(max_d: usize) -> CheckResult {
    let mut types = 0;
    for d in 2..=max_d {
        for e in genus_zero_types(d) {
            let got = count_bruteforce(&Cycle::standard(d), &e).map_err(err)?;
            let want = (d as u64).pow(e.len() as u32 - 1);
            ensure(got == want, || format!("d={d} e={e:?}: {got} != {want}"))?;
            types += 1;
        }
    }
    Ok(format!("{types} types, d <= {max_d}"))
}

fn transpositions(max_d: usize) -> CheckResult {
    let mut last = 0;
    for d in 2..=max_d {
        let got = count_bruteforce(&Cycle::standard(d), &vec![2; d - 1]).map_err(err)?;
        let want = (d as u64).pow(d as u32 - 2);
        ensure(got == want, || format!("d={d}: {got} != {want}"))?;
        last = got;
    }
    Ok(format!("d <= {max_d}, largest count {last}"))
}

fn hurwitz_identity(max_d: usize) -> CheckResult {
    let mut n = 0;
    for d in 2..=max_d {
        for e in genus_zero_types(d) {
            let mut full = e.clone();
            full.push(d);
            let h = hurwitz_count_bruteforce(&HurwitzDatum::pure(d, &full).map_err(err)?, max_d).map_err(err)?;
            let fac = count_bruteforce(&Cycle::standard(d), &e).map_err(err)?;
            ensure(h * BigRational::from_integer(d.into()) == BigRational::from_integer(fac.into()), || {
                format!("d={d} e={e:?}: d*h != {fac}")
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} types, d <= {max_d}"))
}

fn four_point(max_d: usize) -> CheckResult {
    let mut n = 0;
    for d in 2..=max_d {
        for e in itertools::Itertools::multi_cartesian_product((0..4).map(|_| 2..=d)) {
            if e.iter().map(|x| x - 1).sum::<usize>() != 2 * d - 2 {
                continue;
            }
            let want = formula_hurwitz_4point(d, [e[0], e[1], e[2], e[3]]).map_err(err)?;
            let h = hurwitz_count_bruteforce(&HurwitzDatum::pure(d, &e).map_err(err)?, max_d).map_err(err)?;
            ensure(h == BigRational::from_integer(want.into()), || {
                format!("d={d} e={e:?}: brute force {h} != {want}")
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} ordered types, d <= {max_d}"))
}

/// Partitions of `d`, parts non-increasing.
pub(crate) fn partitions(d: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, &mut Vec::new(), &mut out);
    out
}

fn simple_branch(max_d: usize) -> CheckResult {
    let mut n = 0;
    for d in 2..=max_d {
        for parts in partitions(d) {
            let lambda = CycleType::new(parts).map_err(err)?;
            let simple = 2 * d - 2 - lambda.index();
            let r = simple + 1;
            let want = formula_hurwitz_simple(d, r, &lambda).map_err(err)?;
            let mut lambdas = vec![CycleType::pure_cycle(d, 2).map_err(err)?; simple];
            lambdas.push(lambda.clone());
            let h = hurwitz_count_bruteforce(&HurwitzDatum::new(d, lambdas).map_err(err)?, max_d).map_err(err)?;
            ensure(h == want, || format!("d={d} lambda={lambda}: {h} != {want}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} partitions, d <= {max_d}"))
}

fn cycle_index(max_d: usize) -> CheckResult {
    let mut n = 0;
    for d in 2..=max_d {
        let mut by_index: BTreeMap<BTreeMap<usize, usize>, Vec<Vec<usize>>> = BTreeMap::new();
        for e in genus_zero_types(d) {
            let mut ci = BTreeMap::new();
            for &x in &e {
                *ci.entry(x).or_insert(0) += 1;
            }
            by_index.entry(ci).or_default().push(e);
        }
        for (ci, orderings) in by_index {
            let want = count_by_cycle_index(d, &ci).map_err(err)?;
            let mut sum = BigUint::from(0u32);
            for e in &orderings {
                sum += count_bruteforce(&Cycle::standard(d), e).map_err(err)?;
            }
            ensure(sum == want, || format!("d={d} index {ci:?}: {sum} != {want}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} cycle indices, d <= {max_d}"))
}

/// Compositions of `total` into at least two positive parts.
fn vertex_data_up_to(max_total: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() >= 2 {
            out.push(cur.clone());
        }
        for p in 1..=rest {
            cur.push(p);
            go(rest - p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(max_total, &mut Vec::new(), &mut out);
    out
}

fn prufer(max_total: usize, seed: u64) -> CheckResult {
    let all = vertex_data_up_to(max_total);
    for vd in &all {
        let s: Vec<i64> = (1..vd.len() as i64).collect();
        let mut seen = BTreeSet::new();
        for m in enumerate_mnr(&s, vd).map_err(err)? {
            let h = mnr_encode(&m).map_err(err)?;
            ensure(mnr_decode(&h).map_err(err)? == m, || format!("{vd:?}: decode(encode(m)) != m"))?;
            ensure(seen.insert((h.top_indices().to_vec(), h.bottom().to_vec())), || {
                format!("{vd:?}: repeated matrix")
            })?;
        }
        let want = mnr_cardinality(vd).map_err(err)?;
        ensure(BigUint::from(seen.len()) == want, || {
            format!("{vd:?}: {} trees, formula {want}", seen.len())
        })?;
    }
    // randomized classic codes above the exhaustive range
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..200 {
        let n = rng.gen_range(1..=12usize);
        let s: Vec<i64> = (1..=n as i64).map(|x| 3 * x).collect();
        let mut seq: Vec<i64> = (0..n - 1)
            .map(|_| {
                let i = rng.gen_range(0..=n);
                if i == 0 {
                    0
                } else {
                    s[i - 1]
                }
            })
            .collect();
        seq.push(0);
        let t: RootedTree = prufer_decode(&seq, &s).map_err(err)?;
        ensure(prufer_encode_values(&t).map_err(err)? == seq, || format!("random code {seq:?} failed"))?;
    }
    Ok(format!("{} vertex-data vectors, sum f <= {max_total}; 200 random codes", all.len()))
}

fn factorizations_of_degree(d: usize) -> Result<Vec<(Vec<usize>, Vec<Factorization>)>> {
    genus_zero_types(d)
        .into_iter()
        .map(|e| Ok((e.clone(), enumerate_factorizations(&Cycle::standard(d), &e)?.collect())))
        .collect()
}

fn pipeline(max_d: usize) -> CheckResult {
    let mut n = 0;
    for d in 2..=max_d {
        for (e, facs) in factorizations_of_degree(d).map_err(err)? {
            let s = s_default(d, e.len());
            let vd: Vec<usize> = std::iter::once(1).chain(e.iter().map(|x| x - 1)).collect();
            let mut image = HashSet::new();
            for f in &facs {
                let g = graph_of(f, &s).map_err(err)?;
                let lm = phi_labeled(&g).map_err(err)?;
                let (relabeled, _) = unique_labeling(lm.mnr()).map_err(err)?;
                ensure(relabeled == lm, || format!("d={d} {f:?}: level labeling differs from phi"))?;
                ensure(psi(&relabeled).map_err(err)? == g, || format!("d={d}: psi does not invert"))?;
                ensure(image.insert(lm.into_mnr()), || format!("d={d} e={e:?}: phi not injective"))?;
                n += 1;
            }
            let trees: HashSet<_> = enumerate_mnr(s.values(), &vd).map_err(err)?.collect();
            ensure(trees == image, || format!("d={d} e={e:?}: image differs from the tree set"))?;
        }
    }
    Ok(format!("{n} factorizations, d <= {max_d}"))
}

fn characterization(max_d: usize) -> CheckResult {
    let mut n = 0;
    for d in 2..=max_d {
        let tau = Cycle::standard(d);
        for (e, facs) in factorizations_of_degree(d).map_err(err)? {
            let s = s_default(d, e.len());
            let from_facs: BTreeSet<Vec<(i64, usize)>> = facs
                .iter()
                .map(|f| graph_of(f, &s).map(|g| g.edges()))
                .collect::<Result<_>>()
                .map_err(err)?;
            let passing: BTreeSet<Vec<(i64, usize)>> = enumerate_degree_graphs(&tau, &s, &e)
                .filter(FactorizationGraph::is_factorization_graph)
                .map(|g| g.edges())
                .collect();
            ensure(passing == from_facs, || format!("d={d} e={e:?}: sets differ"))?;
            n += 1;
        }
    }
    Ok(format!("{n} types, d <= {max_d}"))
}

fn golden() -> CheckResult {
    let f = crate::examples::running_example();
    let g = crate::graph::graph_of_default(&f).map_err(err)?;
    ensure(g.edges() == crate::examples::running_graph_edges(), || "graph edges differ".into())?;
    let lm = phi_labeled(&g).map_err(err)?;
    ensure(lm.labels() == crate::examples::running_labels().as_slice(), || "labels differ".into())?;
    ensure(lm.mnr() == &crate::examples::running_mnr(), || "tree differs".into())?;
    let h = mnr_encode(lm.mnr()).map_err(err)?;
    let (top, bottom) = crate::examples::running_matrix();
    ensure(h.top() == top && h.bottom() == bottom, || "matrix differs".into())?;
    ensure(phi(&g).map_err(err)? == crate::examples::running_mnr(), || "phi differs".into())?;
    Ok("graph, labels, tree and matrix match".into())
}

/// Cycles of `μη` predicted by cutting the circle after each point of `η`.
fn predicted_pieces(q: usize, support_desc: &[usize]) -> BTreeSet<Vec<usize>> {
    // support_desc = (j₁ > ⋯ > j_p); piece after j_{i+1} runs to j_i
    let p = support_desc.len();
    let mut out = BTreeSet::new();
    for i in 0..p {
        let end = support_desc[i];
        let start_after = support_desc[(i + 1) % p];
        let mut piece = Vec::new();
        let mut x = start_after % q + 1;
        loop {
            piece.push(x);
            if x == end {
                break;
            }
            x = x % q + 1;
        }
        let min_pos = piece.iter().enumerate().min_by_key(|(_, &v)| v).unwrap().0;
        piece.rotate_left(min_pos);
        out.insert(piece);
    }
    out
}

fn circle_product(max_q: usize) -> CheckResult {
    let mut n = 0;
    for q in 2..=max_q {
        let mu = Cycle::standard(q);
        let mu_p = mu.to_permutation();
        for images in itertools::Itertools::permutations(1..=q, q) {
            let eta = Permutation::from_images(images).map_err(err)?;
            let supp: Vec<usize> = (1..=q).filter(|&x| eta.apply(x) != x).collect();
            if supp.is_empty() {
                continue;
            }
            let product = mu_p.compose(&eta).map_err(err)?;
            let s = product.num_cycles();
            let p = supp.len();
            ensure(s <= p, || format!("q={q} eta={eta}: s={s} > p={p}"))?;
            let desc: Vec<usize> = supp.iter().rev().copied().collect();
            let reads_ccw = Cycle::new(q, desc.clone()).map_err(err)?.to_permutation() == eta;
            let cycles: BTreeSet<Vec<usize>> = product.cycles().into_iter().map(|c| c.elements().to_vec()).collect();
            let pieces_match = cycles == predicted_pieces(q, &desc);
            ensure(
                (s == p) == reads_ccw && reads_ccw == pieces_match,
                || format!("q={q} eta={eta}: s=p {} / ccw {reads_ccw} / pieces {pieces_match}", s == p),
            )?;
            if let Some(c) = eta.as_single_cycle() {
                let split = split_circle_product(&mu, &c).map_err(err)?;
                ensure(matches!(split, CircleSplit::Pieces(_)) == reads_ccw, || {
                    format!("q={q} eta={eta}: split disagrees")
                })?;
                let ccw = crate::perm::is_counterclockwise_on(&c, &CircleOrder::new(&mu)).map_err(err)?;
                ensure(ccw == reads_ccw, || format!("q={q} eta={eta}: orientation test disagrees"))?;
            }
            n += 1;
        }
    }
    Ok(format!("{n} pairs, q <= {max_q}"))
}

fn last_split(max_d: usize) -> CheckResult {
    let mut n = 0;
    for d in 2..=max_d {
        for (e, facs) in factorizations_of_degree(d).map_err(err)? {
            for f in &facs {
                let g = graph_of(f, &s_default(d, e.len())).map_err(err)?;
                let dec = g.decompose_at_last().map_err(err)?;
                let mut blocks: Vec<usize> = dec.pieces.iter().flat_map(|p| p.blocks.clone()).collect();
                blocks.sort_unstable();
                ensure(blocks == (1..e.len()).collect::<Vec<_>>(), || {
                    format!("d={d} {f:?}: blocks do not partition [r-2]")
                })?;
                ensure(dec.pieces.len() == *e.last().unwrap(), || format!("d={d}: wrong piece count"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} graphs, d <= {max_d}"))
}

fn clockwise(max_d: usize) -> CheckResult {
    let mut n = 0;
    for d in 2..=max_d {
        let tau = Cycle::standard(d);
        let circle = CircleOrder::new(&tau);
        for (_, facs) in factorizations_of_degree(d).map_err(err)? {
            for f in &facs {
                for s in f.sigmas() {
                    ensure(
                        crate::perm::is_counterclockwise_on(&s.inverse(), &circle).map_err(err)?,
                        || format!("d={d}: {s} is not clockwise"),
                    )?;
                }
                let last = f.sigmas().last().unwrap();
                match split_circle_product(&tau, &last.inverse()).map_err(err)? {
                    CircleSplit::Pieces(pieces) => {
                        for piece in pieces {
                            let hits = piece.iter().filter(|&&x| last.contains(x)).count();
                            ensure(hits == 1 && last.contains(*piece.last().unwrap()), || {
                                format!("d={d}: piece {piece:?} does not end at its factor point")
                            })?;
                        }
                    }
                    CircleSplit::NotMaximal { .. } => return Err(format!("d={d}: last factor not maximal")),
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} factorizations, d <= {max_d}"))
}

fn ci_cpp(max_d: usize) -> CheckResult {
    let mut trees = 0;
    for d in 2..=max_d {
        let tau = Cycle::standard(d);
        for e in genus_zero_types(d) {
            let s = s_default(d, e.len());
            for g in enumerate_degree_graphs(&tau, &s, &e).filter(FactorizationGraph::is_tree) {
                for (j, &sv) in s.values().iter().enumerate() {
                    let all_ci = g
                        .neighbors(j)
                        .iter()
                        .all(|&v| g.has_cicpp(v, &tau).expect("point on circle"));
                    if all_ci {
                        ensure(g.has_cpp(sv, &tau).map_err(err)?, || {
                            format!("d={d}: s={sv} has CICPP neighbors but no CPP")
                        })?;
                    }
                }
                trees += 1;
            }
        }
    }
    Ok(format!("{trees} trees, d <= {max_d}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_counts() {
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(6).len(), 11);
    }

    #[test]
    fn vertex_data_enumeration() {
        // compositions of 2..=3 with at least two parts: (1,1), (1,2), (2,1), (1,1,1)
        assert_eq!(vertex_data_up_to(3).len(), 4);
    }

    #[test]
    fn predicted_pieces_running_example() {
        let pieces = predicted_pieces(20, &[12, 11, 6, 5, 2]);
        let want: BTreeSet<Vec<usize>> = [
            vec![3, 4, 5],
            vec![6],
            vec![7, 8, 9, 10, 11],
            vec![12],
            vec![1, 2, 13, 14, 15, 16, 17, 18, 19, 20],
        ]
        .into_iter()
        .collect();
        assert_eq!(pieces, want);
    }

    #[test]
    fn small_run_passes() {
        let opts = VerifyOptions {
            max_d: 3,
            seed: 7,
            only: None,
        };
        let outcomes = run(&opts).unwrap();
        assert_eq!(outcomes.len(), CHECKS.len());
        assert!(all_passed(&outcomes), "{}", report(&outcomes));
    }

    #[test]
    fn unknown_check_is_rejected() {
        let opts = VerifyOptions {
            only: Some(vec!["nope".into()]),
            ..VerifyOptions::default()
        };
        assert!(run(&opts).is_err());
    }
}

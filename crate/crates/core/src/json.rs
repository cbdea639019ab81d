//! JSON wire formats. Output is compact, one object per line.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factorization::Factorization;
use crate::graph::{FactorizationGraph, SVertexSet};
use crate::mnr::{LabeledMnr, MultiNodedRootedTree, PruferMatrix};
use crate::perm::Cycle;

#[derive(Serialize, Deserialize)]
struct FactorizationDto {
    d: usize,
    tau: Vec<usize>,
    sigmas: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GraphDto {
    d: usize,
    #[serde(rename = "S")]
    s: Vec<i64>,
    edges: Vec<(i64, usize)>,
    tau: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct EdgeDto {
    parent: i64,
    child: i64,
    beta: usize,
}

#[derive(Serialize, Deserialize)]
struct MnrDto {
    #[serde(rename = "S")]
    s: Vec<i64>,
    vertex_data: Vec<usize>,
    edges: Vec<EdgeDto>,
}

#[derive(Serialize, Deserialize)]
struct LabeledDto {
    #[serde(rename = "S")]
    s: Vec<i64>,
    vertex_data: Vec<usize>,
    edges: Vec<EdgeDto>,
    labels: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tau: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct PruferDto {
    #[serde(rename = "S")]
    s: Vec<i64>,
    vertex_data: Vec<usize>,
    matrix: (Vec<i64>, Vec<usize>),
}

fn line<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string(value).expect("wire types serialize");
    out.push('\n');
    out
}

pub fn factorization_to_json(f: &Factorization) -> String {
    line(&FactorizationDto {
        d: f.degree(),
        tau: f.tau().elements().to_vec(),
        sigmas: f.sigmas().iter().map(|s| s.elements().to_vec()).collect(),
    })
}

pub fn factorization_from_json(text: &str) -> Result<Factorization> {
    let dto: FactorizationDto = serde_json::from_str(text)?;
    let tau = Cycle::new(dto.d, dto.tau)?;
    let sigmas = dto
        .sigmas
        .into_iter()
        .map(|s| Cycle::new(dto.d, s))
        .collect::<Result<Vec<_>>>()?;
    Factorization::new(tau, sigmas)
}

pub fn graph_to_json(g: &FactorizationGraph) -> String {
    line(&GraphDto {
        d: g.degree(),
        s: g.svertices().values().to_vec(),
        edges: g.edges(),
        tau: g.tau().elements().to_vec(),
    })
}

pub fn graph_from_json(text: &str) -> Result<FactorizationGraph> {
    let dto: GraphDto = serde_json::from_str(text)?;
    let tau = Cycle::new(dto.d, dto.tau)?;
    let s = SVertexSet::new(dto.s, dto.d)?;
    FactorizationGraph::from_edges(s, tau, &dto.edges)
}

fn edges_dto(m: &MultiNodedRootedTree) -> Vec<EdgeDto> {
    m.edges()
        .into_iter()
        .map(|(parent, child, beta)| EdgeDto { parent, child, beta })
        .collect()
}

fn mnr_from_parts(s: Vec<i64>, vertex_data: Vec<usize>, edges: &[EdgeDto]) -> Result<MultiNodedRootedTree> {
    let triples: Vec<(i64, i64, usize)> = edges.iter().map(|e| (e.parent, e.child, e.beta)).collect();
    MultiNodedRootedTree::from_edges(s, vertex_data, &triples)
}

pub fn mnr_to_json(m: &MultiNodedRootedTree) -> String {
    line(&MnrDto {
        s: m.s().to_vec(),
        vertex_data: m.vertex_data().to_vec(),
        edges: edges_dto(m),
    })
}

pub fn mnr_from_json(text: &str) -> Result<MultiNodedRootedTree> {
    let dto: MnrDto = serde_json::from_str(text)?;
    mnr_from_parts(dto.s, dto.vertex_data, &dto.edges)
}

/// Labeled tree with the node labels keyed `"(vertex,position)"`; `tau`,
/// when given, records which cycle the labels are positions on.
pub fn labeled_to_json(lm: &LabeledMnr, tau: Option<&Cycle>) -> String {
    let m = lm.mnr();
    line(&LabeledDto {
        s: m.s().to_vec(),
        vertex_data: m.vertex_data().to_vec(),
        edges: edges_dto(m),
        labels: lm
            .label_map()
            .into_iter()
            .map(|((v, p), l)| (format!("({v},{p})"), l))
            .collect(),
        d: tau.map(Cycle::degree),
        tau: tau.map(|t| t.elements().to_vec()),
    })
}

fn parse_node_key(key: &str) -> Result<(i64, usize)> {
    let bad = || Error::Parse(format!("node key {key:?} is not of the form (vertex,position)"));
    let inner = key.trim().strip_prefix('(').and_then(|k| k.strip_suffix(')')).ok_or_else(bad)?;
    let (v, p) = inner.split_once(',').ok_or_else(bad)?;
    Ok((
        v.trim().parse().map_err(|_| bad())?,
        p.trim().parse().map_err(|_| bad())?,
    ))
}

pub fn labeled_from_json(text: &str) -> Result<(LabeledMnr, Option<Cycle>)> {
    let dto: LabeledDto = serde_json::from_str(text)?;
    let m = mnr_from_parts(dto.s, dto.vertex_data, &dto.edges)?;
    let map = dto
        .labels
        .iter()
        .map(|(k, &l)| parse_node_key(k).map(|key| (key, l)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let tau = match (dto.d, dto.tau) {
        (Some(d), Some(t)) => Some(Cycle::new(d, t)?),
        (None, Some(t)) => Some(Cycle::new(t.iter().copied().max().unwrap_or(0), t)?),
        _ => None,
    };
    Ok((LabeledMnr::from_map(m, &map)?, tau))
}

pub fn prufer_to_json(h: &PruferMatrix) -> String {
    line(&PruferDto {
        s: h.s().to_vec(),
        vertex_data: h.vertex_data().to_vec(),
        matrix: (h.top(), h.bottom().to_vec()),
    })
}

pub fn prufer_from_json(text: &str) -> Result<PruferMatrix> {
    let dto: PruferDto = serde_json::from_str(text)?;
    PruferMatrix::new(dto.s, dto.vertex_data, dto.matrix.0, dto.matrix.1)
}

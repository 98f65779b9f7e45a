//! Named preset graphs, loaded from the versioned `data/catalog.json`.

use serde::Deserialize;

use super::FeynmanGraph;
use crate::error::{Error, Result};

const CATALOG_JSON: &str = include_str!("../../data/catalog.json");

#[derive(Deserialize)]
struct CatalogFile {
    version: u32,
    graphs: Vec<RawEntry>,
}

#[derive(Deserialize)]
struct RawEntry {
    name: String,
    description: String,
    vertices: usize,
    edges: Vec<[usize; 2]>,
    automorphisms: u64,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub graph: FeynmanGraph,
    /// Recorded `|Aut|`; checked against brute force in tests.
    pub automorphisms: u64,
}

pub fn version() -> u32 {
    parse().0
}

fn parse() -> (u32, Vec<CatalogEntry>) {
    let file: CatalogFile = serde_json::from_str(CATALOG_JSON).expect("embedded catalog is valid JSON");
    let entries = file
        .graphs
        .into_iter()
        .map(|e| {
            let edges: Vec<_> = e.edges.iter().map(|p| (p[0], p[1])).collect();
            CatalogEntry {
                graph: FeynmanGraph::new(e.vertices, &edges).expect("embedded catalog graphs are valid"),
                name: e.name,
                description: e.description,
                automorphisms: e.automorphisms,
            }
        })
        .collect();
    (file.version, entries)
}

pub fn all() -> Vec<CatalogEntry> {
    parse().1
}

pub fn names() -> Vec<String> {
    all().into_iter().map(|e| e.name).collect()
}

pub fn entry(name: &str) -> Result<CatalogEntry> {
    all()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownCatalog(name.to_string()))
}

pub fn get(name: &str) -> Result<FeynmanGraph> {
    entry(name).map(|e| e.graph)
}

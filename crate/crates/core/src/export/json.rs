use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::calculus::Term;
use crate::graph::{BuildOptions, Edge, GraphMeta, Node, NodeId, NodeKind, PsmGraph};

#[derive(Debug, Error)]
pub enum ImportError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> ImportError {
    ImportError::Schema {
        path: path.into(),
        message: message.into(),
    }
}

/// Canonical JSON: sorted keys, nodes by id, edges in graph order.
pub fn export_json(g: &PsmGraph) -> String {
    let nodes: Vec<Value> = g
        .nodes()
        .iter()
        .map(|(id, n)| json!({ "id": id.as_str(), "term": n.term.to_string(), "kind": n.kind.name() }))
        .collect();
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| {
            json!({
                "from": e.from.as_str(),
                "to": e.to.as_str(),
                "rule": e.rule,
                "application": e.application,
            })
        })
        .collect();
    let o = &g.meta.options;
    let doc = json!({
        "meta": {
            "scenario": g.meta.scenario,
            "iterations": g.meta.iterations,
            "options": {
                "prune": o.prune,
                "max_iterations": o.max_iterations,
                "max_term_len": o.max_term_len,
            },
            "seeds": g.meta.seeds.iter().map(NodeId::as_str).collect::<Vec<_>>(),
        },
        "nodes": nodes,
        "edges": edges,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
    s.push('\n');
    s
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, ImportError> {
    obj.get(key)
        .ok_or_else(|| schema(path, format!("missing field `{key}`")))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, ImportError> {
    v.as_object().ok_or_else(|| schema(path, "expected an object"))
}

fn string<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a str, ImportError> {
    field(obj, key, path)?
        .as_str()
        .ok_or_else(|| schema(format!("{path}.{key}"), "expected a string"))
}

fn uint(obj: &Map<String, Value>, key: &str, path: &str) -> Result<u64, ImportError> {
    field(obj, key, path)?
        .as_u64()
        .ok_or_else(|| schema(format!("{path}.{key}"), "expected a non-negative integer"))
}

fn array<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Vec<Value>, ImportError> {
    field(obj, key, path)?
        .as_array()
        .ok_or_else(|| schema(format!("{path}.{key}"), "expected an array"))
}

fn node_id(s: &str, path: &str) -> Result<NodeId, ImportError> {
    NodeId::parse(s).ok_or_else(|| schema(path, format!("`{s}` is not a node id")))
}

/// Reads a graph written by [`export_json`]. Node ids are checked against
/// their terms and kinds.
pub fn import_json(text: &str) -> Result<PsmGraph, ImportError> {
    let doc: Value = serde_json::from_str(text)?;
    let root = object(&doc, "$")?;

    let meta_obj = object(field(root, "meta", "$")?, "$.meta")?;
    let opts = object(field(meta_obj, "options", "$.meta")?, "$.meta.options")?;
    let options = BuildOptions {
        prune: field(opts, "prune", "$.meta.options")?
            .as_bool()
            .ok_or_else(|| schema("$.meta.options.prune", "expected a boolean"))?,
        max_iterations: uint(opts, "max_iterations", "$.meta.options")? as usize,
        max_term_len: uint(opts, "max_term_len", "$.meta.options")? as usize,
    };
    let seeds = array(meta_obj, "seeds", "$.meta")?
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let path = format!("$.meta.seeds[{i}]");
            node_id(v.as_str().ok_or_else(|| schema(&path, "expected a string"))?, &path)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let meta = GraphMeta {
        scenario: string(meta_obj, "scenario", "$.meta")?.to_string(),
        iterations: uint(meta_obj, "iterations", "$.meta")? as usize,
        options,
        seeds,
    };

    let mut nodes = Vec::new();
    for (i, v) in array(root, "nodes", "$")?.iter().enumerate() {
        let path = format!("$.nodes[{i}]");
        let obj = object(v, &path)?;
        let id = node_id(string(obj, "id", &path)?, &path)?;
        let term: Term = string(obj, "term", &path)?
            .parse()
            .map_err(|e| schema(format!("{path}.term"), format!("{e}")))?;
        let kind_name = string(obj, "kind", &path)?;
        let kind = NodeKind::from_name(kind_name)
            .ok_or_else(|| schema(format!("{path}.kind"), format!("unknown kind `{kind_name}`")))?;
        if NodeId::of(&term, kind) != id {
            return Err(schema(&path, format!("id {id} does not match term and kind")));
        }
        nodes.push(Node { term, kind });
    }

    let mut edges = Vec::new();
    for (i, v) in array(root, "edges", "$")?.iter().enumerate() {
        let path = format!("$.edges[{i}]");
        let obj = object(v, &path)?;
        edges.push(Edge {
            from: node_id(string(obj, "from", &path)?, &path)?,
            to: node_id(string(obj, "to", &path)?, &path)?,
            rule: string(obj, "rule", &path)?.to_string(),
            application: uint(obj, "application", &path)?,
        });
    }

    let g = PsmGraph::from_parts(nodes, edges, meta).map_err(|m| schema("$", m))?;
    if let Some(s) = g.meta.seeds.iter().find(|s| g.node(s).is_none()) {
        return Err(schema("$.meta.seeds", format!("unknown node {s}")));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build;
    use crate::scenario::paper_scenario;

    #[test]
    fn round_trip() {
        let g = build(&paper_scenario(), &BuildOptions::default()).unwrap();
        let text = export_json(&g);
        let back = import_json(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(export_json(&back), text);
    }

    #[test]
    fn kinds_are_the_five_names() {
        let g = build(&paper_scenario(), &BuildOptions::default()).unwrap();
        let doc: Value = serde_json::from_str(&export_json(&g)).unwrap();
        for n in doc["nodes"].as_array().unwrap() {
            assert!(NodeKind::from_name(n["kind"].as_str().unwrap()).is_some());
        }
    }

    #[test]
    fn tampered_id_rejected() {
        let g = build(&paper_scenario(), &BuildOptions::default()).unwrap();
        let text = export_json(&g).replace("\"term\": \"+:B b2:P\"", "\"term\": \"+:B b1:P\"");
        assert!(import_json(&text).is_err());
    }

    #[test]
    fn missing_field_reported_with_path() {
        let err = import_json("{\"meta\": {}}").unwrap_err();
        assert!(err.to_string().starts_with("$.meta"), "{err}");
    }
}

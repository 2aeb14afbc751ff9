//! Graph exporters: Graphviz DOT and a canonical JSON form that can be read
//! back.

mod dot;
mod json;

pub use dot::{export_dot, kind_color};
pub use json::{export_json, import_json, ImportError};

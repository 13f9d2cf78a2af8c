//! Graphviz output: Hasse diagrams of posets and specialization orders.

use std::fmt::Write;

use super::LabError;
use crate::order::FinPoset;
use crate::topo::{FinSpace, HyperSpace};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn hasse(name: &str, p: &FinPoset, node_label: impl Fn(usize) -> String) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=plaintext];").unwrap();
    for i in 0..p.len() {
        writeln!(out, "  n{i} [label={}];", quote(&node_label(i))).unwrap();
    }
    for (a, b) in p.hasse_edges() {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn poset_dot(name: &str, p: &FinPoset) -> String {
    hasse(name, p, |i| p.label(i).to_string())
}

/// The specialization order of a T0 space.
pub fn space_dot(name: &str, x: &FinSpace) -> Result<String, LabError> {
    let p = x.specialization_order()?;
    Ok(hasse(name, &p, |i| x.label(i).to_string()))
}

/// Points are labelled by the closed sets they stand for.
pub fn hyperspace_dot(name: &str, hs: &HyperSpace) -> Result<String, LabError> {
    let p = hs.space().specialization_order()?;
    Ok(hasse(name, &p, |i| hs.base().show(hs.member(i))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::reflections::sobrification;

    #[test]
    fn vee_hasse() {
        let d = poset_dot("VEE", &fixtures::vee());
        assert!(d.contains("n0 -> n1;") && d.contains("n0 -> n2;"));
        assert_eq!(d.matches("->").count(), 2);
    }

    #[test]
    fn hyperspace_labels_are_closed_sets() {
        let hs = sobrification(&fixtures::sierpinski()).unwrap();
        let d = hyperspace_dot("SIERP_s", &hs).unwrap();
        assert!(d.contains("label=\"{0}\"") && d.contains("label=\"{0,1}\""));
        assert!(space_dot("I", &fixtures::indiscrete(&["a", "b"])).is_err());
    }
}

//! Hasse diagrams of a window in DOT syntax, optionally with the arrows
//! of one operation.

use crate::error::Result;
use crate::ops::ClosureOp;
use crate::ring::Lattice;

/// Pairs `(i, j)` with `j ⊊ i` and nothing strictly between, computed from
/// the containment relation.
pub fn covers(lat: &Lattice) -> Vec<(usize, usize)> {
    let n = lat.len();
    let below = |a: usize, b: usize| a != b && lat.le(b, a);
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if below(i, j) && !(0..n).any(|k| below(i, k) && below(k, j)) {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn to_dot(lat: &Lattice, op: Option<&ClosureOp>) -> Result<String> {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for (k, i) in lat.ideals().iter().enumerate() {
        out.push_str(&format!("  n{k} [label=\"{i}\"];\n"));
    }
    for (i, j) in covers(lat) {
        out.push_str(&format!("  n{j} -> n{i} [dir=none];\n"));
    }
    if let Some(op) = op {
        let map = op.to_raw(lat)?;
        let unit = lat.unit();
        for k in 0..lat.len() {
            let img = map.image(k);
            match lat.index_of(img) {
                Some(t) if t == k => {
                    if k != unit {
                        out.push_str(&format!("  n{k} -> n{k} [color=blue, style=dotted];\n"));
                    }
                }
                Some(t) => out.push_str(&format!("  n{k} -> n{t} [color=red, constraint=false];\n")),
                None => {
                    out.push_str(&format!("  x{k} [label=\"{img}\", style=dashed, shape=box];\n"));
                    out.push_str(&format!("  n{k} -> x{k} [color=red, style=dashed, constraint=false];\n"));
                }
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Window;

    #[test]
    fn dvr_covers_form_a_chain() {
        let lat = Lattice::new(Window::dvr(4).unwrap());
        let c = covers(&lat);
        assert_eq!(c, (0..lat.len() - 1).map(|k| (k, k + 1)).collect::<Vec<_>>());
    }

    #[test]
    fn cusp_covers() {
        // M(3) sits directly under M(2) only; each P(2,a) sits over M(4).
        let lat = Lattice::new(Window::cusp(2, 4).unwrap());
        let c = covers(&lat);
        let name = |k: usize| lat.ideal(k).to_string();
        let edges: Vec<(String, String)> = c.iter().map(|&(i, j)| (name(i), name(j))).collect();
        let has = |a: &str, b: &str| edges.contains(&(a.to_string(), b.to_string()));
        assert!(has("M(2)", "M(3)") && has("P(2,0)", "M(4)") && has("P(2,1)", "M(4)"));
        assert_eq!(edges.iter().filter(|(_, b)| b == "M(3)").count(), 1);
        assert!(!has("R", "M(3)") && !has("M(2)", "M(4)"));
        assert_eq!(edges.len(), 15);
    }
}

use std::fmt::Write;

use super::basis::CrystalBasis;
use super::CrystalError;

/// Crystal graph of the explicit region in DOT syntax.
pub fn to_dot(cb: &CrystalBasis) -> Result<String, CrystalError> {
    let shape = cb.shape();
    let mut out = String::from("digraph crystal {\n  rankdir=TB;\n");
    for (i, r) in cb.reps.iter().enumerate() {
        let w = r.weight(shape).unwrap();
        let label = if r.len() == 1 {
            let s = r.slots().next().unwrap();
            format!("({}, {}, {}, {})", s.component, s.tag, s.k, w)
        } else {
            format!("(b{i}, {w})")
        };
        writeln!(out, "  n{i} [label=\"{label}\"];").unwrap();
    }
    for (a, b) in cb.edges()? {
        writeln!(out, "  n{a} -> n{b} [label=\"f̃\"];").unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}

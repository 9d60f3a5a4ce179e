use std::fmt::Write;

use serde_json::{json, Value};

use super::{GeometricComplex, PLCurve};

/// OFF text for the flattened complex (`4OFF` in dimension 4). Exact
/// coordinates go into a comment block before the float body.
pub fn to_off(g: &GeometricComplex) -> String {
    let flat = g.complex.flatten();
    let dim = g.placement.first().map_or(3, |p| p.dim());
    let mut out = String::new();
    out.push_str(if dim == 4 { "4OFF\n" } else { "OFF\n" });
    out.push_str("# exact coordinates\n");
    for (name, p) in flat.vertices.iter().zip(&g.placement) {
        let _ = writeln!(out, "# {name} {}", p.to_strings().join(" "));
    }
    let _ = writeln!(out, "{} {} {}", flat.vertices.len(), flat.triangles.len(), flat.edges.len());
    for p in &g.placement {
        let coords: Vec<String> = p.to_f64().iter().map(|x| format!("{x}")).collect();
        let _ = writeln!(out, "{}", coords.join(" "));
    }
    for t in &flat.triangles {
        let _ = writeln!(out, "3 {} {} {}", t[0], t[1], t[2]);
    }
    out
}

pub fn curve_to_json(c: &PLCurve) -> Value {
    json!({
        "exact": c.points,
        "approx": c.points.iter().map(|p| p.to_f64()).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::join_sphere;
    use super::*;

    #[test]
    fn off_header_and_counts() {
        let g = join_sphere().two_skeleton();
        let off = to_off(&g);
        let mut body = off.lines().filter(|l| !l.starts_with('#'));
        assert_eq!(body.next(), Some("4OFF"));
        assert_eq!(body.next(), Some("6 18 15"));
        assert_eq!(body.count(), 6 + 18);
    }
}

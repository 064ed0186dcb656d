//! Macaulay2 and Singular scripts that compute the invariants of a binomial
//! edge ideal, for checking closed-form values out of band.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::Serialize;

use crate::graph::Graph;
use crate::invariants::InvariantReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Dialect {
    M2,
    Singular,
}

impl Dialect {
    /// Conventional file extension.
    pub fn extension(self) -> &'static str {
        match self {
            Dialect::M2 => "m2",
            Dialect::Singular => "sing",
        }
    }

    fn comment(self) -> &'static str {
        match self {
            Dialect::M2 => "--",
            Dialect::Singular => "//",
        }
    }
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dialect::M2 => "m2",
            Dialect::Singular => "singular",
        })
    }
}

impl FromStr for Dialect {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "m2" | "macaulay2" => Ok(Dialect::M2),
            "singular" => Ok(Dialect::Singular),
            other => Err(format!("unknown dialect {other:?} (expected m2 or singular)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CasScript {
    pub dialect: Dialect,
    pub text: String,
}

/// `x{i}*y{j}-x{j}*y{i}` for every edge `i < j`, 1-based, ascending.
pub fn generators(g: &Graph) -> Vec<String> {
    g.edges()
        .map(|(i, j)| format!("x{a}*y{b}-x{b}*y{a}", a = i + 1, b = j + 1))
        .collect()
}

fn variables(n: usize) -> String {
    let xs = (1..=n).map(|i| format!("x{i}"));
    let ys = (1..=n).map(|i| format!("y{i}"));
    xs.chain(ys).collect::<Vec<_>>().join(",")
}

/// Script declaring the `2n`-variable ring and `J_G`, then asking for
/// dimension, depth, regularity, projective dimension and the Betti table.
/// Expected values from `expected` are recorded as comments.
pub fn emit_cas_script(g: &Graph, dialect: Dialect, expected: Option<&InvariantReport>) -> CasScript {
    let c = dialect.comment();
    let n = g.n();
    let gens = generators(g);
    let mut out = String::new();
    let _ = writeln!(out, "{c} binomial edge ideal: {n} vertices, {} edges", gens.len());
    if g.labels().is_some() {
        for v in 0..n {
            let _ = writeln!(out, "{c} vertex {}: {}", v + 1, g.label(v));
        }
    }
    if let Some(r) = expected {
        let _ = writeln!(
            out,
            "{c} family: {}",
            serde_json::to_string(&r.family).unwrap().trim_matches('"')
        );
        if let Some(d) = r.dim {
            let _ = writeln!(out, "{c} expected dim: {} [{}]", d.value, d.provenance);
        }
        for (name, v) in [("depth", r.depth), ("reg", r.reg), ("pd", r.pd)] {
            let _ = writeln!(out, "{c} expected {name}: {} [{}]", v.value, v.provenance);
        }
        if let Some((p, pj)) = r.extremal_position {
            let _ = writeln!(out, "{c} expected extremal Betti position: ({p}, {pj})");
        }
    }
    let vars = variables(n);
    match dialect {
        Dialect::M2 => {
            let _ = writeln!(out, "R = QQ[{vars}];");
            if gens.is_empty() {
                let _ = writeln!(out, "J = ideal(0_R);");
            } else {
                let _ = writeln!(out, "J = ideal({});", gens.join(", "));
            }
            out.push_str("M = R^1/J;\n");
            out.push_str("print(\"dim \" | toString dim M);\n");
            out.push_str("print(\"depth \" | toString depth M);\n");
            out.push_str("print(\"reg \" | toString regularity M);\n");
            out.push_str("print(\"pd \" | toString pdim M);\n");
            out.push_str("print betti res M;\n");
        }
        Dialect::Singular => {
            out.push_str("LIB \"homolog.lib\";\n");
            let _ = writeln!(out, "ring R = 0, ({vars}), dp;");
            if gens.is_empty() {
                out.push_str("ideal J = 0;\n");
            } else {
                let _ = writeln!(out, "ideal J = {};", gens.join(", "));
            }
            out.push_str("ideal G = std(J);\n");
            out.push_str("print(\"dim \" + string(dim(G)));\n");
            out.push_str("print(\"depth \" + string(depth(module(G))));\n");
            out.push_str("resolution F = mres(G, 0);\n");
            let _ = writeln!(out, "{c} regularity(F) is reg(J) = reg(R/J) + 1");
            out.push_str("print(\"reg \" + string(regularity(F) - 1));\n");
            out.push_str("print(betti(F), \"betti\");\n");
        }
    }
    CasScript { dialect, text: out }
}

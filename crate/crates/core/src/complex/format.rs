//! Text, JSON and DOT formats for square complexes.
//!
//! ```text
//! vertex v
//! edge a v v color red
//! square +a +b -a -b
//! ```

use super::{ComplexBuilder, ComplexError, Dart, SquareComplex};
use crate::parse::{json_error, looks_like_json, Line, ParseError, Tok};
use serde::{Deserialize, Serialize};
use std::fmt::Write;

#[derive(Serialize, Deserialize)]
struct JsonComplex {
    vertices: Vec<String>,
    edges: Vec<JsonEdge>,
    squares: Vec<[String; 4]>,
}

#[derive(Serialize, Deserialize)]
struct JsonEdge {
    name: String,
    src: String,
    dst: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    color: Option<String>,
}

fn dart_name(c: &SquareComplex, d: Dart) -> String {
    format!("{}{}", if d.forward { '+' } else { '-' }, c.edge(d.edge).name)
}

pub fn parse_complex(text: &str) -> Result<SquareComplex, ComplexError> {
    let mut b = ComplexBuilder::new();
    if looks_like_json(text) {
        let j: JsonComplex = serde_json::from_str(text).map_err(json_error)?;
        for v in &j.vertices {
            b.vertex(v)?;
        }
        for e in &j.edges {
            let (s, d) = (b.vertex_id(&e.src)?, b.vertex_id(&e.dst)?);
            b.edge(&e.name, s, d, e.color.clone())?;
        }
        for sq in &j.squares {
            b.square_named([&sq[0], &sq[1], &sq[2], &sq[3]])?;
        }
        return Ok(b.build());
    }
    for (i, raw) in text.lines().enumerate() {
        let mut line = Line::new(i + 1, raw)?;
        if line.is_blank() {
            continue;
        }
        let col = line.col();
        match line.ident("a declaration")?.as_str() {
            "vertex" => {
                let c = line.col();
                let v = line.ident("vertex name")?;
                b.vertex(&v).map_err(|e| ParseError::new(i + 1, c, e.to_string()))?;
            }
            "edge" => {
                let name = line.ident("edge name")?;
                let mut ends = [super::VertexId(0); 2];
                for slot in &mut ends {
                    let c = line.col();
                    let v = line.ident("vertex name")?;
                    *slot = b.vertex_id(&v).map_err(|e| ParseError::new(i + 1, c, e.to_string()))?;
                }
                let color = if line.peek().is_some() {
                    line.keyword("color")?;
                    Some(line.ident("color")?)
                } else {
                    None
                };
                b.edge(&name, ends[0], ends[1], color)?;
            }
            "square" => {
                let mut darts = [Dart::fwd(super::EdgeId(0)); 4];
                for slot in &mut darts {
                    let forward = match line.peek() {
                        Some(Tok::Sign(f)) => {
                            let f = *f;
                            line.next();
                            f
                        }
                        _ => true,
                    };
                    let c = line.col();
                    let name = line.ident("edge name")?;
                    let edge = b.edge_id(&name).map_err(|e| ParseError::new(i + 1, c, e.to_string()))?;
                    *slot = Dart { edge, forward };
                }
                line.finish()?;
                b.square(darts)?;
                continue;
            }
            other => {
                return Err(ParseError::new(i + 1, col, format!("unknown declaration `{other}`")).into())
            }
        }
        line.finish()?;
    }
    Ok(b.build())
}

pub fn write_complex(c: &SquareComplex) -> String {
    let mut s = String::new();
    for v in c.vertex_ids() {
        writeln!(s, "vertex {}", c.vertex_name(v)).unwrap();
    }
    for e in c.edges() {
        write!(s, "edge {} {} {}", e.name, c.vertex_name(e.src), c.vertex_name(e.dst)).unwrap();
        if let Some(col) = &e.color {
            write!(s, " color {col}").unwrap();
        }
        s.push('\n');
    }
    for sq in c.squares() {
        let ds: Vec<String> = sq.darts.iter().map(|&d| dart_name(c, d)).collect();
        writeln!(s, "square {}", ds.join(" ")).unwrap();
    }
    s
}

pub fn complex_to_json(c: &SquareComplex) -> serde_json::Value {
    let j = JsonComplex {
        vertices: c.vertex_ids().map(|v| c.vertex_name(v).to_string()).collect(),
        edges: c
            .edges()
            .iter()
            .map(|e| JsonEdge {
                name: e.name.clone(),
                src: c.vertex_name(e.src).to_string(),
                dst: c.vertex_name(e.dst).to_string(),
                color: e.color.clone(),
            })
            .collect(),
        squares: c.squares().iter().map(|sq| sq.darts.map(|d| dart_name(c, d))).collect(),
    };
    serde_json::to_value(j).expect("complex serializes")
}

/// The 1-skeleton as a DOT digraph; squares are listed as comments.
pub fn to_dot(c: &SquareComplex) -> String {
    let mut s = String::from("digraph complex {\n");
    for v in c.vertex_ids() {
        writeln!(s, "  \"{}\";", c.vertex_name(v)).unwrap();
    }
    for e in c.edges() {
        writeln!(
            s,
            "  \"{}\" -> \"{}\" [label=\"{}\"];",
            c.vertex_name(e.src),
            c.vertex_name(e.dst),
            e.color.as_deref().unwrap_or(&e.name)
        )
        .unwrap();
    }
    for sq in c.squares() {
        let ds: Vec<String> = sq.darts.iter().map(|&d| dart_name(c, d)).collect();
        writeln!(s, "  // square {}", ds.join(" ")).unwrap();
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const TORUS: &str = "vertex v\nedge a v v color x\nedge b v v\nsquare +a +b -a -b\n";

    #[test]
    fn round_trip() {
        let c = parse_complex(TORUS).unwrap();
        assert_eq!((c.num_vertices(), c.num_edges(), c.num_squares()), (1, 2, 1));
        assert_eq!(parse_complex(&write_complex(&c)).unwrap(), c);
        let j = complex_to_json(&c).to_string();
        assert_eq!(parse_complex(&j).unwrap(), c);
        assert!(to_dot(&c).contains("label=\"x\""));
    }

    #[test]
    fn errors() {
        let e = parse_complex("vertex v\nvertex w\nedge a v w\nsquare +a +a -a -a\n").unwrap_err();
        assert!(matches!(e, ComplexError::OpenSquare { .. }));
        let e = parse_complex("vertex v\nedge a v u\n").unwrap_err();
        let ComplexError::Parse(p) = e else { panic!() };
        assert_eq!((p.line, p.col), (2, 10));
    }
}

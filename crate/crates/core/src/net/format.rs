//! Text and JSON formats for nets.
//!
//! ```text
//! # comment
//! place p
//! transition a pre {p} post {q}
//! initial {p}
//! ```

use super::{NetError, NetSystem};
pub use crate::parse::ParseError;
use crate::parse::{json_error, looks_like_json, Line};
use serde::{Deserialize, Serialize};
use std::fmt::Write;

#[derive(Serialize, Deserialize)]
struct JsonNet {
    places: Vec<String>,
    transitions: Vec<JsonTransition>,
    initial: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct JsonTransition {
    name: String,
    pre: Vec<String>,
    post: Vec<String>,
}

/// Parses either format; JSON is recognized by a leading `{`.
pub fn parse_net(text: &str) -> Result<NetSystem, NetError> {
    if looks_like_json(text) {
        let j: JsonNet = serde_json::from_str(text).map_err(json_error)?;
        let ts = j.transitions.into_iter().map(|t| (t.name, t.pre, t.post)).collect();
        return NetSystem::from_names(j.places, ts, j.initial);
    }
    let mut places = Vec::new();
    let mut transitions = Vec::new();
    let mut initial: Option<Vec<String>> = None;
    for (i, raw) in text.lines().enumerate() {
        let mut line = Line::new(i + 1, raw)?;
        if line.is_blank() {
            continue;
        }
        let col = line.col();
        match line.ident("a declaration")?.as_str() {
            "place" => places.push(line.ident("place name")?),
            "transition" => {
                let name = line.ident("transition name")?;
                line.keyword("pre")?;
                let pre = line.set()?;
                line.keyword("post")?;
                let post = line.set()?;
                transitions.push((name, pre, post));
            }
            "initial" => {
                if initial.is_some() {
                    return Err(ParseError::new(i + 1, col, "second `initial` line").into());
                }
                initial = Some(line.set()?);
            }
            other => {
                return Err(ParseError::new(i + 1, col, format!("unknown declaration `{other}`")).into())
            }
        }
        line.finish()?;
    }
    NetSystem::from_names(places, transitions, initial.unwrap_or_default())
}

pub fn write_net(net: &NetSystem) -> String {
    let mut s = String::new();
    for p in net.places() {
        writeln!(s, "place {p}").unwrap();
    }
    let set = |ps: &std::collections::BTreeSet<super::PlaceId>| {
        ps.iter().map(|&p| net.place_name(p)).collect::<Vec<_>>().join(", ")
    };
    for t in net.transitions() {
        writeln!(s, "transition {} pre {{{}}} post {{{}}}", t.name, set(&t.pre), set(&t.post)).unwrap();
    }
    writeln!(s, "initial {{{}}}", set(net.initial())).unwrap();
    s
}

pub fn net_to_json(net: &NetSystem) -> serde_json::Value {
    let names = |ps: &std::collections::BTreeSet<super::PlaceId>| {
        ps.iter().map(|&p| net.place_name(p).to_string()).collect()
    };
    let j = JsonNet {
        places: net.places().to_vec(),
        transitions: net
            .transitions()
            .iter()
            .map(|t| JsonTransition { name: t.name.clone(), pre: names(&t.pre), post: names(&t.post) })
            .collect(),
        initial: names(net.initial()),
    };
    serde_json::to_value(j).expect("net serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    const SRC: &str = "# two places\nplace p\nplace q  # trailing\ntransition a pre {p} post {q}\ninitial {p}\n";

    #[test]
    fn round_trip() {
        let n = parse_net(SRC).unwrap();
        assert_eq!(parse_net(&write_net(&n)).unwrap(), n);
        let j = serde_json::to_string(&net_to_json(&n)).unwrap();
        assert_eq!(parse_net(&j).unwrap(), n);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_net("place p\ntransition a pre p post {}\n").unwrap_err();
        let NetError::Parse(e) = e else { panic!("{e:?}") };
        assert_eq!(e.line, 2);
        assert_eq!(e.col, 18);
        let e = parse_net("place p\ntransition a pre {x} post {}\n").unwrap_err();
        assert_eq!(e, NetError::UnknownPlace("x".into()));
        assert!(matches!(parse_net("place p$"), Err(NetError::Parse(_))));
    }
}

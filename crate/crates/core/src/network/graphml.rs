use std::collections::HashMap;
use std::io::Cursor;

use quick_xml::events::{BytesDecl, BytesEnd, BytesStart, BytesText, Event};
use quick_xml::{Reader, Writer};

use crate::error::{Error, Result};
use crate::lexicons::{EmotionSet, ValenceLabel};
use crate::network::{Concept, EdgeClass, MultiplexNetwork};

const NODE_KEYS: [(&str, &str); 4] = [
    ("valence_label", "string"),
    ("valence_score", "double"),
    ("emotions", "string"),
    ("is_negation_marker", "boolean"),
];
const EDGE_KEYS: [(&str, &str); 3] = [("layer", "string"), ("count", "int"), ("edge_class", "string")];
const GRAPH_KEYS: [(&str, &str); 5] = [
    ("corpus_id", "string"),
    ("config_hash", "string"),
    ("seed", "long"),
    ("sentences", "int"),
    ("edge_direction", "string"),
];

fn xml_err(e: impl std::fmt::Display) -> Error {
    Error::CorruptNetwork(format!("GraphML: {e}"))
}

type XmlWriter = Writer<Cursor<Vec<u8>>>;

fn data(w: &mut XmlWriter, key: &str, value: &str) -> Result<()> {
    w.create_element("data")
        .with_attribute(("key", key))
        .write_text_content(BytesText::new(value))
        .map_err(xml_err)?;
    Ok(())
}

/// Writes the network as undirected GraphML with one edge element per
/// layer link, tagged with its layer and valence class.
pub fn write_graphml(net: &MultiplexNetwork) -> Result<String> {
    let mut w = Writer::new_with_indent(Cursor::new(Vec::new()), b' ', 2);
    w.write_event(Event::Decl(BytesDecl::new("1.0", Some("UTF-8"), None)))
        .map_err(xml_err)?;
    let mut root = BytesStart::new("graphml");
    root.push_attribute(("xmlns", "http://graphml.graphdrawing.org/xmlns"));
    w.write_event(Event::Start(root)).map_err(xml_err)?;
    let keys = GRAPH_KEYS
        .iter()
        .map(|k| ("graph", k))
        .chain(NODE_KEYS.iter().map(|k| ("node", k)))
        .chain(EDGE_KEYS.iter().map(|k| ("edge", k)));
    for (domain, (name, ty)) in keys {
        w.create_element("key")
            .with_attributes([
                ("id", *name),
                ("for", domain),
                ("attr.name", *name),
                ("attr.type", *ty),
            ])
            .write_empty()
            .map_err(xml_err)?;
    }
    let mut graph = BytesStart::new("graph");
    graph.push_attribute(("id", "G"));
    graph.push_attribute(("edgedefault", "undirected"));
    w.write_event(Event::Start(graph)).map_err(xml_err)?;
    let p = &net.provenance;
    data(&mut w, "corpus_id", &p.corpus_id)?;
    data(&mut w, "config_hash", &p.config_hash)?;
    data(&mut w, "seed", &p.seed.to_string())?;
    data(&mut w, "sentences", &p.sentences.to_string())?;
    data(&mut w, "edge_direction", &p.edge_direction)?;

    for c in net.nodes.values() {
        let mut node = BytesStart::new("node");
        node.push_attribute(("id", c.stem.as_str()));
        w.write_event(Event::Start(node)).map_err(xml_err)?;
        data(&mut w, "valence_label", c.valence_label.as_str())?;
        if let Some(s) = c.valence_score {
            data(&mut w, "valence_score", &s.to_string())?;
        }
        let emotions: Vec<&str> = c.emotions.iter().map(|e| e.name()).collect();
        data(&mut w, "emotions", &emotions.join(","))?;
        data(&mut w, "is_negation_marker", if c.is_negation_marker { "true" } else { "false" })?;
        w.write_event(Event::End(BytesEnd::new("node"))).map_err(xml_err)?;
    }
    let edges = net
        .syntactic
        .iter()
        .map(|(e, c)| ("syntactic", e, Some(*c)))
        .chain(net.synonym.iter().map(|e| ("synonym", e, None)));
    for (layer, (a, b), count) in edges {
        let mut edge = BytesStart::new("edge");
        edge.push_attribute(("source", a.as_str()));
        edge.push_attribute(("target", b.as_str()));
        w.write_event(Event::Start(edge)).map_err(xml_err)?;
        data(&mut w, "layer", layer)?;
        if let Some(c) = count {
            data(&mut w, "count", &c.to_string())?;
        }
        let class = if layer == "synonym" {
            EdgeClass::Synonym
        } else {
            EdgeClass::syntactic(net, a, b)
        };
        data(&mut w, "edge_class", class.as_str())?;
        w.write_event(Event::End(BytesEnd::new("edge"))).map_err(xml_err)?;
    }
    w.write_event(Event::End(BytesEnd::new("graph"))).map_err(xml_err)?;
    w.write_event(Event::End(BytesEnd::new("graphml"))).map_err(xml_err)?;
    let mut out = String::from_utf8(w.into_inner().into_inner()).map_err(xml_err)?;
    out.push('\n');
    Ok(out)
}

#[derive(Default)]
struct Element {
    attrs: HashMap<String, String>,
    data: HashMap<String, String>,
}

/// Reads GraphML written by [`write_graphml`] and validates the result.
pub fn read_graphml(text: &str) -> Result<MultiplexNetwork> {
    let mut reader = Reader::from_str(text);
    reader.config_mut().trim_text(true);
    let mut key_names: HashMap<String, String> = HashMap::new();
    let mut graph_data: HashMap<String, String> = HashMap::new();
    let mut nodes: Vec<Element> = Vec::new();
    let mut edges: Vec<Element> = Vec::new();
    let mut current: Option<(String, Element)> = None;
    let mut data_key: Option<String> = None;
    let mut data_text = String::new();

    let attrs_of = |e: &BytesStart| -> Result<HashMap<String, String>> {
        let mut out = HashMap::new();
        for a in e.attributes() {
            let a = a.map_err(xml_err)?;
            let key = String::from_utf8_lossy(a.key.as_ref()).into_owned();
            out.insert(key, a.unescape_value().map_err(xml_err)?.into_owned());
        }
        Ok(out)
    };

    loop {
        let event = reader.read_event().map_err(xml_err)?;
        match event {
            Event::Eof => break,
            Event::Start(e) | Event::Empty(e) if e.name().as_ref() == b"key" => {
                let a = attrs_of(&e)?;
                if let (Some(id), Some(name)) = (a.get("id"), a.get("attr.name")) {
                    key_names.insert(id.clone(), name.clone());
                }
            }
            Event::Start(e) if matches!(e.name().as_ref(), b"node" | b"edge") => {
                let kind = String::from_utf8_lossy(e.name().as_ref()).into_owned();
                current = Some((
                    kind,
                    Element {
                        attrs: attrs_of(&e)?,
                        ..Default::default()
                    },
                ));
            }
            Event::Empty(e) if matches!(e.name().as_ref(), b"node" | b"edge") => {
                let el = Element {
                    attrs: attrs_of(&e)?,
                    ..Default::default()
                };
                if e.name().as_ref() == b"node" {
                    nodes.push(el);
                } else {
                    edges.push(el);
                }
            }
            Event::Start(e) if e.name().as_ref() == b"data" => {
                let a = attrs_of(&e)?;
                let key = a.get("key").cloned().ok_or_else(|| xml_err("data element without key"))?;
                data_key = Some(key_names.get(&key).cloned().unwrap_or(key));
                data_text.clear();
            }
            Event::Empty(e) if e.name().as_ref() == b"data" => {
                let a = attrs_of(&e)?;
                let key = a.get("key").cloned().ok_or_else(|| xml_err("data element without key"))?;
                let name = key_names.get(&key).cloned().unwrap_or(key);
                match current.as_mut() {
                    Some((_, el)) => el.data.insert(name, String::new()),
                    None => graph_data.insert(name, String::new()),
                };
            }
            Event::Text(t) if data_key.is_some() => {
                data_text.push_str(&t.unescape().map_err(xml_err)?);
            }
            Event::End(e) if e.name().as_ref() == b"data" => {
                if let Some(k) = data_key.take() {
                    match current.as_mut() {
                        Some((_, el)) => el.data.insert(k, data_text.clone()),
                        None => graph_data.insert(k, data_text.clone()),
                    };
                }
            }
            Event::End(e) if matches!(e.name().as_ref(), b"node" | b"edge") => {
                if let Some((kind, el)) = current.take() {
                    if kind == "node" {
                        nodes.push(el);
                    } else {
                        edges.push(el);
                    }
                }
            }
            _ => {}
        }
    }

    let mut net = MultiplexNetwork::default();
    net.provenance.corpus_id = graph_data.remove("corpus_id").unwrap_or_default();
    net.provenance.config_hash = graph_data.remove("config_hash").unwrap_or_default();
    net.provenance.edge_direction = graph_data.remove("edge_direction").unwrap_or_default();
    net.provenance.seed = match graph_data.get("seed") {
        Some(s) => s.parse().map_err(|_| xml_err(format!("bad seed {s:?}")))?,
        None => 0,
    };
    net.provenance.sentences = match graph_data.get("sentences") {
        Some(s) => s.parse().map_err(|_| xml_err(format!("bad sentence count {s:?}")))?,
        None => 0,
    };

    for el in nodes {
        let stem = el.attrs.get("id").cloned().ok_or_else(|| xml_err("node without id"))?;
        let label: ValenceLabel = match el.data.get("valence_label") {
            Some(s) => s.parse().map_err(|_| xml_err(format!("bad valence label {s:?} on {stem:?}")))?,
            None => ValenceLabel::Unrated,
        };
        let score = match el.data.get("valence_score") {
            Some(s) => Some(
                s.parse::<f64>()
                    .map_err(|_| xml_err(format!("bad valence score {s:?} on {stem:?}")))?,
            ),
            None => None,
        };
        let mut emotions = EmotionSet::EMPTY;
        for name in el.data.get("emotions").map(String::as_str).unwrap_or("").split(',') {
            if !name.is_empty() {
                emotions.insert(name.parse().map_err(|_| xml_err(format!("bad emotion {name:?} on {stem:?}")))?);
            }
        }
        let is_negation_marker = el.data.get("is_negation_marker").is_some_and(|s| s == "true");
        let concept = Concept {
            stem: stem.clone(),
            valence_label: label,
            valence_score: score,
            emotions,
            is_negation_marker,
        };
        if net.nodes.insert(stem.clone(), concept).is_some() {
            return Err(Error::CorruptNetwork(format!("duplicate node {stem:?}")));
        }
    }
    for el in edges {
        let (Some(a), Some(b)) = (el.attrs.get("source"), el.attrs.get("target")) else {
            return Err(xml_err("edge without source/target"));
        };
        let key = (a.clone(), b.clone());
        match el.data.get("layer").map(String::as_str) {
            Some("syntactic") => {
                let count: u32 = match el.data.get("count") {
                    Some(c) => c.parse().map_err(|_| xml_err(format!("bad count {c:?}")))?,
                    None => 1,
                };
                if net.syntactic.insert(key, count).is_some() {
                    return Err(Error::CorruptNetwork(format!("duplicate syntactic edge ({a:?}, {b:?})")));
                }
            }
            Some("synonym") => {
                if !net.synonym.insert(key) {
                    return Err(Error::CorruptNetwork(format!("duplicate synonym edge ({a:?}, {b:?})")));
                }
            }
            other => return Err(xml_err(format!("edge ({a:?}, {b:?}) has unknown layer {other:?}"))),
        }
    }
    net.validate()?;
    Ok(net)
}

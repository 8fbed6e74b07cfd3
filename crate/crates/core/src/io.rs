//! JSON interchange format for matroids.
//!
//! ```json
//! {"n": 7, "rank": 3, "kind": "rank2flats", "data": [[0,1,2], [0,3,4]], "name": "..."}
//! ```
//!
//! `kind` is one of `rank2flats` (lines with at least three points of a simple
//! rank-3 matroid), `bases`, `uniform` (no data needed) or `pg2` (`data` is
//! the order `q`). An optional `labels` array names the elements; when it is
//! present, `data` refers to elements by label.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::{Subset, MAX_ELEMENTS};

/// A parsed matroid together with the element names from the file.
#[derive(Debug, Clone)]
pub struct LoadedMatroid {
    pub matroid: Matroid,
    pub labels: Option<Vec<String>>,
}

fn field_error(field: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        location: format!("field '{field}'"),
        message: message.into(),
    }
}

fn label_text(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

struct Elements<'a> {
    n: usize,
    labels: Option<&'a [String]>,
}

impl Elements<'_> {
    fn element(&self, v: &Value, field: &str) -> Result<usize> {
        if let Some(labels) = self.labels {
            let text = label_text(v).ok_or_else(|| field_error(field, "expected a label"))?;
            return labels
                .iter()
                .position(|l| *l == text)
                .ok_or_else(|| field_error(field, format!("unknown label '{text}'")));
        }
        let i = v
            .as_u64()
            .ok_or_else(|| field_error(field, "expected a nonnegative integer"))? as usize;
        if i >= self.n {
            return Err(field_error(field, format!("element {i} is outside 0..{}", self.n)));
        }
        Ok(i)
    }

    fn subsets(&self, data: &Value) -> Result<Vec<Subset>> {
        let list = data
            .as_array()
            .ok_or_else(|| field_error("data", "expected a list of element lists"))?;
        list.iter()
            .enumerate()
            .map(|(i, set)| {
                let field = format!("data[{i}]");
                let items = set
                    .as_array()
                    .ok_or_else(|| field_error(&field, "expected a list of elements"))?;
                let mut s = Subset::EMPTY;
                for (j, e) in items.iter().enumerate() {
                    let x = self.element(e, &format!("{field}[{j}]"))?;
                    if s.contains(x) {
                        return Err(field_error(&format!("{field}[{j}]"), "repeated element"));
                    }
                    s.insert(x);
                }
                Ok(s)
            })
            .collect()
    }
}

fn usize_field(obj: &Map<String, Value>, key: &str) -> Result<usize> {
    obj.get(key)
        .ok_or_else(|| field_error(key, "missing"))?
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| field_error(key, "expected a nonnegative integer"))
}

/// Parses the JSON format described in the module documentation.
pub fn parse_matroid(text: &str) -> Result<LoadedMatroid> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    let obj = value
        .as_object()
        .ok_or_else(|| field_error("(root)", "expected a JSON object"))?;
    let n = usize_field(obj, "n")?;
    if n > MAX_ELEMENTS {
        return Err(field_error("n", format!("at most {MAX_ELEMENTS} elements are supported")));
    }
    let rank = usize_field(obj, "rank")?;
    let kind = obj
        .get("kind")
        .ok_or_else(|| field_error("kind", "missing"))?
        .as_str()
        .ok_or_else(|| field_error("kind", "expected a string"))?;
    let labels = match obj.get("labels") {
        None | Some(Value::Null) => None,
        Some(Value::Array(items)) => {
            let labels: Vec<String> = items
                .iter()
                .enumerate()
                .map(|(i, v)| label_text(v).ok_or_else(|| field_error(&format!("labels[{i}]"), "expected a string or number")))
                .collect::<Result<_>>()?;
            if labels.len() != n {
                return Err(field_error("labels", format!("expected {n} labels, found {}", labels.len())));
            }
            for (i, l) in labels.iter().enumerate() {
                if labels[..i].contains(l) {
                    return Err(field_error(&format!("labels[{i}]"), format!("duplicate label '{l}'")));
                }
            }
            Some(labels)
        }
        Some(_) => return Err(field_error("labels", "expected a list")),
    };
    let elements = Elements {
        n,
        labels: labels.as_deref(),
    };
    let data = obj.get("data").unwrap_or(&Value::Null);
    let matroid = match kind {
        "rank2flats" => {
            if rank != 3 {
                return Err(field_error("rank", "rank2flats describes rank-3 matroids only"));
            }
            Matroid::from_rank2_flats(n, &elements.subsets(data)?)?
        }
        "bases" => Matroid::from_bases(n, &elements.subsets(data)?)?,
        "uniform" => Matroid::uniform(rank, n)?,
        "pg2" => {
            let q = data
                .as_u64()
                .or_else(|| data.get("q").and_then(Value::as_u64))
                .ok_or_else(|| field_error("data", "expected the order q"))? as usize;
            let m = Matroid::pg2(q)?;
            if m.n() != n {
                return Err(field_error("n", format!("PG(2,{q}) has {} points", m.n())));
            }
            m
        }
        other => return Err(field_error("kind", format!("unknown kind '{other}'"))),
    };
    if matroid.rank() != rank {
        return Err(field_error(
            "rank",
            format!("declared rank {rank}, but the data has rank {}", matroid.rank()),
        ));
    }
    let matroid = match obj.get("name").and_then(Value::as_str) {
        Some(name) => matroid.with_name(name),
        None => matroid,
    };
    Ok(LoadedMatroid { matroid, labels })
}

/// Writes a matroid as JSON: simple rank-3 matroids by their lines, anything
/// else by its bases.
pub fn matroid_to_json(m: &Matroid) -> Value {
    let sets = |v: Vec<Subset>| -> Vec<Vec<usize>> { v.into_iter().map(|s| s.to_vec()).collect() };
    let (kind, data) = if m.rank() == 3 && m.is_simple() {
        ("rank2flats", sets(m.big_rank2_flats()))
    } else {
        ("bases", sets(m.bases()))
    };
    let mut obj = json!({
        "n": m.n(),
        "rank": m.rank(),
        "kind": kind,
        "data": data,
    });
    if let Some(name) = m.name() {
        obj["name"] = json!(name);
    }
    obj
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::canonical_form;
    use crate::corpus;

    fn parse_err(text: &str) -> (String, String) {
        match parse_matroid(text) {
            Err(Error::Parse { location, message }) => (location, message),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn round_trip_builtins() {
        let mut all = corpus::rank3_corpus();
        all.extend([Matroid::uniform(2, 4).unwrap(), Matroid::uniform(4, 6).unwrap()]);
        for m in all {
            let text = matroid_to_json(&m).to_string();
            let back = parse_matroid(&text).unwrap().matroid;
            assert_eq!(back, m);
            assert_eq!(back.name(), m.name());
            assert_eq!(canonical_form(&back).unwrap(), canonical_form(&m).unwrap());
        }
    }

    #[test]
    fn kinds() {
        let u = parse_matroid(r#"{"n": 5, "rank": 2, "kind": "uniform"}"#).unwrap();
        assert_eq!(u.matroid, Matroid::uniform(2, 5).unwrap());
        let pg = parse_matroid(r#"{"n": 13, "rank": 3, "kind": "pg2", "data": 3}"#).unwrap();
        assert_eq!(pg.matroid, Matroid::pg2(3).unwrap());
        let braid = parse_matroid(
            r#"{"n": 6, "rank": 3, "kind": "rank2flats", "labels": ["12","13","14","23","24","34"],
                "data": [["12","13","23"], ["12","14","24"], ["13","14","34"], ["23","24","34"]]}"#,
        )
        .unwrap();
        assert_eq!(canonical_form(&braid.matroid).unwrap(), canonical_form(&corpus::braid()).unwrap());
        assert_eq!(braid.labels.unwrap()[5], "34");
    }

    #[test]
    fn diagnostics() {
        let (loc, _) = parse_err("{\"n\": 4,\n \"rank\": }");
        assert_eq!(loc, "line 2, column 10");
        let (loc, _) = parse_err(r#"{"rank": 3, "kind": "uniform"}"#);
        assert_eq!(loc, "field 'n'");
        let (loc, msg) = parse_err(r#"{"n": 4, "rank": 3, "kind": "rank2flats", "data": [[0, 1, 7]]}"#);
        assert_eq!(loc, "field 'data[0][2]'");
        assert!(msg.contains("outside"));
        let (loc, _) = parse_err(r#"{"n": 4, "rank": 3, "kind": "lines", "data": []}"#);
        assert_eq!(loc, "field 'kind'");
        let (loc, _) = parse_err(r#"{"n": 4, "rank": 2, "kind": "bases", "data": [[0], [1]]}"#);
        assert_eq!(loc, "field 'rank'");
        let (loc, _) = parse_err(r#"{"n": 7, "rank": 3, "kind": "pg2", "data": 3}"#);
        assert_eq!(loc, "field 'n'");
        assert!(matches!(
            parse_matroid(r#"{"n": 5, "rank": 3, "kind": "rank2flats", "data": [[0,1,2],[0,1,3]]}"#),
            Err(Error::InvalidLinearSpace { .. })
        ));
        assert!(matches!(
            parse_matroid(r#"{"n": 4, "rank": 2, "kind": "bases", "data": [[0,1],[2,3]]}"#),
            Err(Error::NotAMatroid(_))
        ));
    }
}

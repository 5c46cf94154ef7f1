//! Pointer-tracking access to parsed JSON, and the canonical text form.

use std::collections::BTreeMap;

use hofib_core::{Error, Result};
use serde_json::{Map, Value};

/// Escapes one reference token of a JSON pointer.
pub fn escape(token: &str) -> String {
    token.replace('~', "~0").replace('/', "~1")
}

/// A value together with the JSON pointer it was reached by.
#[derive(Clone)]
pub struct Node<'a> {
    pub value: &'a Value,
    ptr: String,
}

impl<'a> Node<'a> {
    pub fn root(value: &'a Value) -> Self {
        Node { value, ptr: String::new() }
    }

    fn child(&self, token: &str, value: &'a Value) -> Node<'a> {
        Node { value, ptr: format!("{}/{}", self.ptr, escape(token)) }
    }

    pub fn pointer(&self) -> &str {
        if self.ptr.is_empty() {
            "/"
        } else {
            &self.ptr
        }
    }

    pub fn err(&self, message: impl Into<String>) -> Error {
        Error::schema(self.pointer(), message)
    }

    pub fn field(&self, key: &str) -> Result<Node<'a>> {
        match self.as_object()?.get(key) {
            Some(v) => Ok(self.child(key, v)),
            None => Err(self.err(format!("missing field `{key}`"))),
        }
    }

    pub fn opt_field(&self, key: &str) -> Result<Option<Node<'a>>> {
        Ok(self.as_object()?.get(key).filter(|v| !v.is_null()).map(|v| self.child(key, v)))
    }

    fn as_object(&self) -> Result<&'a Map<String, Value>> {
        self.value.as_object().ok_or_else(|| self.err("expected an object"))
    }

    pub fn str(&self) -> Result<&'a str> {
        self.value.as_str().ok_or_else(|| self.err("expected a string"))
    }

    pub fn u64(&self) -> Result<u64> {
        self.value.as_u64().ok_or_else(|| self.err("expected a non-negative integer"))
    }

    pub fn bool(&self) -> Result<bool> {
        self.value.as_bool().ok_or_else(|| self.err("expected a boolean"))
    }

    pub fn items(&self) -> Result<Vec<Node<'a>>> {
        let arr = self.value.as_array().ok_or_else(|| self.err("expected an array"))?;
        Ok(arr.iter().enumerate().map(|(i, v)| self.child(&i.to_string(), v)).collect())
    }

    pub fn entries(&self) -> Result<Vec<(&'a str, Node<'a>)>> {
        Ok(self.as_object()?.iter().map(|(k, v)| (k.as_str(), self.child(k, v))).collect())
    }

    /// A row such as `["g","f","gf"]` of exactly `n` strings.
    pub fn row(&self, n: usize) -> Result<Vec<(&'a str, Node<'a>)>> {
        let items = self.items()?;
        if items.len() != n {
            return Err(self.err(format!("expected {n} entries, found {}", items.len())));
        }
        items.into_iter().map(|x| Ok((x.str()?, x))).collect()
    }

    pub fn strings(&self) -> Result<Vec<(&'a str, Node<'a>)>> {
        self.items()?.into_iter().map(|x| Ok((x.str()?, x))).collect()
    }
}

/// Label → index table that reports unknown and duplicate labels with the
/// pointer of the offending field.
pub struct Labels<'s> {
    kind: &'static str,
    map: BTreeMap<&'s str, usize>,
}

impl<'s> Labels<'s> {
    pub fn new(kind: &'static str, items: &[(&'s str, Node<'_>)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, (l, n)) in items.iter().enumerate() {
            if map.insert(*l, i).is_some() {
                return Err(n.err(format!("duplicate {} `{l}`", kind)));
            }
        }
        Ok(Labels { kind, map })
    }

    pub fn get(&self, label: &str, at: &Node<'_>) -> Result<usize> {
        self.map.get(label).copied().ok_or_else(|| at.err(format!("unknown {} `{label}`", self.kind)))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Rebuilds every object with keys inserted in sorted order, so the output
/// is canonical whether or not serde_json preserves insertion order.
pub fn canonicalize(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let sorted: BTreeMap<String, Value> = m.into_iter().map(|(k, v)| (k, canonicalize(v))).collect();
            Value::Object(sorted.into_iter().collect())
        }
        Value::Array(a) => Value::Array(a.into_iter().map(canonicalize).collect()),
        other => other,
    }
}

/// Canonical text: sorted keys, two-space indentation, trailing newline.
pub fn to_canonical_string(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&canonicalize(v)).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Sorts rows of strings lexicographically and turns them into JSON.
pub fn sorted_rows(mut rows: Vec<Vec<String>>) -> Value {
    rows.sort();
    Value::Array(rows.into_iter().map(|r| Value::Array(r.into_iter().map(Value::String).collect())).collect())
}

pub fn sorted_strings(mut xs: Vec<String>) -> Value {
    xs.sort();
    Value::Array(xs.into_iter().map(Value::String).collect())
}

pub fn string_map(pairs: impl IntoIterator<Item = (String, String)>) -> Value {
    let m: BTreeMap<String, Value> = pairs.into_iter().map(|(k, v)| (k, Value::String(v))).collect();
    Value::Object(m.into_iter().collect())
}

//! Plain structured text documents: `key: value` lines with sorted keys.
//! Multi-line values continue on following lines indented by two spaces.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    fields: BTreeMap<String, String>,
}

impl Document {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, key: impl Into<String>, value: impl fmt::Display) -> &mut Self {
        self.fields.insert(key.into(), value.to_string());
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.get(key).map(String::as_str)
    }

    /// Parses rendered text. Unknown lines before the first key are ignored.
    pub fn parse(text: &str) -> Self {
        let mut doc = Document::new();
        let mut current: Option<String> = None;
        for line in text.lines() {
            if let Some(rest) = line.strip_prefix("  ") {
                if let Some(key) = &current {
                    let value = doc.fields.get_mut(key).unwrap();
                    if !value.is_empty() {
                        value.push('\n');
                    }
                    value.push_str(rest);
                }
                continue;
            }
            if let Some((key, value)) = line.split_once(':') {
                let key = key.trim().to_string();
                doc.fields.insert(key.clone(), value.trim().to_string());
                current = Some(key);
            }
        }
        doc
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (key, value) in &self.fields {
            if value.contains('\n') {
                writeln!(f, "{key}:")?;
                for line in value.lines() {
                    writeln!(f, "  {line}")?;
                }
            } else if value.is_empty() {
                writeln!(f, "{key}:")?;
            } else {
                writeln!(f, "{key}: {value}")?;
            }
        }
        Ok(())
    }
}

/// Space-separated list.
pub fn join<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

//! Reading JSON inputs with line/column diagnostics.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use grext::format::{CoeffJson, CrossedProductJson, FactorSystemFile, GroupRingJson, GroupSpec};
use grext::AlgebraError;
use serde::de::DeserializeOwned;
use serde::Deserialize;

/// An input error, reported with exit status 2.
#[derive(Debug)]
pub struct InputError {
    pub path: Option<PathBuf>,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl InputError {
    pub fn plain(message: impl Into<String>) -> Self {
        Self { path: None, line: None, column: None, message: message.into() }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = &self.path {
            write!(f, "{}:", p.display())?;
        }
        if let (Some(l), Some(c)) = (self.line, self.column) {
            write!(f, "{l}:{c}:")?;
        }
        if self.path.is_some() || self.line.is_some() {
            write!(f, " ")?;
        }
        write!(f, "{}", self.message)
    }
}

pub struct Source {
    pub path: PathBuf,
    pub text: String,
}

impl Source {
    pub fn read(path: &Path) -> Result<Self, InputError> {
        let text = fs::read_to_string(path).map_err(|e| InputError {
            path: Some(path.to_path_buf()),
            line: None,
            column: None,
            message: format!("cannot read: {e}"),
        })?;
        Ok(Self { path: path.to_path_buf(), text })
    }

    pub fn parse<T: DeserializeOwned>(&self) -> Result<T, InputError> {
        serde_json::from_str(&self.text).map_err(|e| InputError {
            path: Some(self.path.clone()),
            line: Some(e.line()),
            column: Some(e.column()),
            message: strip_position(&e.to_string()),
        })
    }

    /// Attaches a position to an algebra error. Element parse errors mention
    /// the offending literal, which is located in the file text.
    pub fn algebra(&self, err: AlgebraError) -> InputError {
        let message = err.to_string();
        let mut out = InputError { path: Some(self.path.clone()), line: None, column: None, message };
        if let AlgebraError::Parse(msg) = &err {
            if let Some(literal) = quoted_literal(msg) {
                let inner = column_in_literal(msg).unwrap_or(1);
                if let Some((line, col)) = self.locate(&format!("\"{literal}\"")) {
                    out.line = Some(line);
                    out.column = Some(col + inner);
                }
            }
        }
        out
    }

    fn locate(&self, needle: &str) -> Option<(usize, usize)> {
        let offset = self.text.find(needle)?;
        let before = &self.text[..offset];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Some((line, col))
    }

    pub fn has_key(&self, key: &str) -> bool {
        match serde_json::from_str::<serde_json::Value>(&self.text) {
            Ok(serde_json::Value::Object(m)) => m.contains_key(key),
            _ => false,
        }
    }
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

fn quoted_literal(msg: &str) -> Option<&str> {
    let start = msg.find("element \"")? + "element \"".len();
    let len = msg[start..].find('"')?;
    Some(&msg[start..start + len])
}

fn column_in_literal(msg: &str) -> Option<usize> {
    let i = msg.rfind("at column ")? + "at column ".len();
    msg[i..].split(|c: char| !c.is_ascii_digit()).next()?.parse().ok()
}

/// Element files: a crossed-product element when `crossed_system` is
/// present, otherwise a group-ring element.
pub enum ElementFile {
    GroupRing(GroupRingJson),
    Crossed(CrossedProductJson),
}

pub fn read_element(source: &Source) -> Result<ElementFile, InputError> {
    if source.has_key("crossed_system") {
        source.parse().map(ElementFile::Crossed)
    } else {
        source.parse().map(ElementFile::GroupRing)
    }
}

pub fn read_factor_system(source: &Source) -> Result<FactorSystemFile, InputError> {
    source.parse()
}

/// The algebra searched over: a group file `{"group": ...}` gives ℂ[G], a
/// factor-system file gives the crossed product ℂ[N] ×_(S̄,ω̄) H.
pub enum AlgebraFile {
    Group(GroupSpec),
    Crossed(FactorSystemFile),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    group: GroupSpec,
}

pub fn read_algebra(source: &Source) -> Result<AlgebraFile, InputError> {
    if source.has_key("group") {
        source.parse::<GroupFile>().map(|g| AlgebraFile::Group(g.group))
    } else {
        read_factor_system(source).map(AlgebraFile::Crossed)
    }
}

pub fn read_grid(source: &Source) -> Result<Vec<CoeffJson>, InputError> {
    source.parse()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_positions() {
        let src = Source { path: "x.json".into(), text: "{\n  \"terms\": [{\"elem\": \"[1,\", \"coeff\": 1}]\n}".into() };
        let err = src.algebra(AlgebraError::Parse("element \"[1,\": unexpected end of input at column 4".into()));
        assert_eq!((err.line, err.column), (Some(2), Some(26)));
        assert_eq!(strip_position("expected value at line 3 column 7"), "expected value");
    }
}

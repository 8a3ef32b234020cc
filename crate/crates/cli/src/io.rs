use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use dualfib::cat::{full_nerve, nerve, nerve_map};
use dualfib::format::{tool_version, Body, Document};
use dualfib::sset::{SSetMap, SimplicialSet};
use dualfib::Error;

/// Exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Fail = 1,
    Precondition = 2,
    Parse = 3,
}

#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub message: String,
}

impl Failure {
    pub fn parse(message: impl Into<String>) -> Self {
        Failure {
            status: Status::Parse,
            message: message.into(),
        }
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        Failure {
            status: Status::Precondition,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Format(_) | Error::MissingComposite(..) => Failure::parse(e.to_string()),
            _ => Failure::precondition(e.to_string()),
        }
    }
}

pub type Outcome<T> = std::result::Result<T, Failure>;

pub struct Input {
    pub path: PathBuf,
    pub doc: Document,
}

pub fn load(path: &Path) -> Outcome<Input> {
    let text = fs::read_to_string(path).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    let doc = Document::parse(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    Ok(Input {
        path: path.to_path_buf(),
        doc,
    })
}

impl Input {
    pub fn trace(&self) -> Vec<String> {
        self.doc.provenance.construction.clone()
    }

    /// A simplicial set, or the nerve of a category.
    pub fn sset(&self, max_dim: usize) -> Outcome<Arc<SimplicialSet>> {
        match &self.doc.body {
            Body::SimplicialSet(x) => Ok(Arc::new(x.to_sset()?)),
            Body::Category(c) => {
                let c = Arc::new(c.to_category()?);
                let n = full_nerve(c.clone()).or_else(|_| nerve(c, max_dim.max(1)))?;
                Ok(n.sset().clone())
            }
            other => Err(self.wrong_kind("a simplicial-set or category", other.kind())),
        }
    }

    /// A map, the nerve of a functor, or the projection of a simplicial set to a point.
    pub fn map(&self) -> Outcome<SSetMap> {
        match &self.doc.body {
            Body::Map(m) => Ok(m.to_map()?),
            Body::Functor(f) => {
                let f = f.to_functor()?;
                let (a, b) = (full_nerve(f.source.clone())?, full_nerve(f.target.clone())?);
                Ok(nerve_map(&f, &a, &b)?)
            }
            Body::SimplicialSet(x) => {
                let x = Arc::new(x.to_sset()?);
                Ok(SSetMap::to_point(x, Arc::new(SimplicialSet::point())))
            }
            other => Err(self.wrong_kind("a map, functor or simplicial-set", other.kind())),
        }
    }

    pub fn wrong_kind(&self, wanted: &str, found: &str) -> Failure {
        Failure::precondition(format!("{}: expected {wanted}, found a {found}", self.path.display()))
    }
}

/// Writes `text` to `path` through a sibling file and a rename.
pub fn write_atomic(path: &Path, text: &str) -> Outcome<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| Failure::precondition(format!("{} is not a file path", path.display())))?;
    let tmp = dir.join(format!(".{}.partial", name.to_string_lossy()));
    fs::write(&tmp, text).map_err(|e| Failure::precondition(format!("{}: {e}", tmp.display())))?;
    fs::rename(&tmp, path).map_err(|e| Failure::precondition(format!("{}: {e}", path.display())))
}

/// A plain-text report with a fixed header: tool, command, inputs, bound,
/// trace, then command-specific fields in insertion order.
pub struct Report {
    text: String,
}

impl Report {
    pub fn new(command: &str, inputs: &[&Input], bound: Option<usize>, trace: &[String]) -> Self {
        let mut text = String::new();
        writeln!(text, "tool: {}", tool_version()).unwrap();
        writeln!(text, "command: {command}").unwrap();
        let names: Vec<String> = inputs.iter().map(|i| i.path.display().to_string()).collect();
        writeln!(text, "inputs: {}", if names.is_empty() { "none".into() } else { names.join(", ") }).unwrap();
        match bound {
            Some(b) => writeln!(text, "bound: {b}").unwrap(),
            None => writeln!(text, "bound: none").unwrap(),
        }
        writeln!(text, "trace: {}", if trace.is_empty() { "input".into() } else { trace.join(" > ") }).unwrap();
        Report { text }
    }

    pub fn field(&mut self, key: &str, value: impl std::fmt::Display) {
        writeln!(self.text, "{key}: {value}").unwrap();
    }

    /// Appends a multi-line block under a heading, indented by two spaces.
    pub fn block(&mut self, heading: &str, body: impl std::fmt::Display) {
        writeln!(self.text, "{heading}:").unwrap();
        for line in body.to_string().lines() {
            writeln!(self.text, "  {line}").unwrap();
        }
    }

    pub fn finish(mut self, status: Status) -> String {
        let word = match status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Precondition => "inconclusive",
            Status::Parse => "parse-error",
        };
        writeln!(self.text, "status: {word}").unwrap();
        self.text
    }
}

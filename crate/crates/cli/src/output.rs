use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::Format;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io { path: PathBuf, err: std::io::Error },
    Core(fsgraph::Error),
}

impl CliError {
    /// Every error is a usage or input problem.
    pub const EXIT: u8 = 2;
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Io { path, err } => write!(f, "{}: {err}", path.display()),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<fsgraph::Error> for CliError {
    fn from(e: fsgraph::Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A counterexample, rejection or disagreement.
    Finding,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Finding => 1,
        }
    }

    pub fn finding_if(cond: bool) -> Self {
        if cond {
            Status::Finding
        } else {
            Status::Ok
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "str::is_empty")]
    detail: &'a str,
    result: &'a T,
}

/// Where results go, plus the provenance stamped on them.
pub struct Out {
    pub format: Format,
    pub command: &'static str,
    pub seed: Option<u64>,
    /// Flags worth repeating for a replay, e.g. `r=256 samples=1000`.
    pub detail: String,
    buf: String,
}

impl Out {
    pub fn new(format: Format, command: &'static str, seed: Option<u64>) -> Self {
        Out { format, command, seed, detail: String::new(), buf: String::new() }
    }

    pub fn stamp(&self) -> String {
        let mut s = format!("# fsgraph {VERSION} {}", self.command);
        if let Some(seed) = self.seed {
            s += &format!(" seed={seed}");
        }
        if !self.detail.is_empty() {
            s += " ";
            s += &self.detail;
        }
        s
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.buf.push_str(s.as_ref());
        self.buf.push('\n');
    }

    pub fn buf_raw(&mut self, s: &str) {
        self.buf.push_str(s);
    }

    pub fn json<T: Serialize>(&mut self, result: &T) {
        let env = Envelope {
            tool: "fsgraph",
            version: VERSION,
            command: self.command,
            seed: self.seed,
            detail: &self.detail,
            result,
        };
        self.line(serde_json::to_string_pretty(&env).expect("serializable"));
    }

    pub fn finish(self, path: Option<&Path>) -> CliResult<()> {
        let text = if self.format == Format::Text && self.seed.is_some() {
            format!("{}\n{}", self.stamp(), self.buf)
        } else {
            self.buf
        };
        match path {
            Some(p) => std::fs::write(p, text).map_err(|err| CliError::Io { path: p.to_path_buf(), err }),
            None => {
                let mut so = std::io::stdout().lock();
                so.write_all(text.as_bytes())
                    .and_then(|_| so.flush())
                    .map_err(|err| CliError::Io { path: "<stdout>".into(), err })
            }
        }
    }
}

pub fn progress(msg: impl AsRef<str>) {
    eprintln!("fsgraph: {}", msg.as_ref());
}

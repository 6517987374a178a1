use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("edge ({0}, {1}) is not a cross pair of K_{{{2},{2}}}: expected 0 <= a < {2} <= b < {3}")]
    BadEdge(usize, usize, usize, usize),

    #[error("partite size r must be positive")]
    ZeroSize,

    #[error("probability {0} is outside [0, 1]")]
    BadProbability(f64),

    #[error("the two-component criterion needs r >= 5 (got r = {0})")]
    CriterionNeedsR5(usize),

    #[error("graphs have different partite sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),

    #[error("token {0} out of range for {1} vertices")]
    TokenOutOfRange(usize, usize),

    #[error("a swap needs two distinct tokens (got {0} twice)")]
    SameToken(usize),

    #[error("not a permutation of 0..{0}")]
    NotPermutation(usize),

    #[error(
        "dense counting over {states} states (2r = {n}) exceeds the cap 2r <= {cap}; \
         union-find would need about {mib} MiB. Use BFS-based queries (exchange, isolated) instead"
    )]
    StateSpaceTooLarge {
        n: usize,
        cap: usize,
        states: u128,
        mib: u128,
    },

    #[error("BFS state packing supports at most {max} vertices (got {n})")]
    TooManyVertices { n: usize, max: usize },

    #[error("{0}")]
    Enumeration(String),

    #[error("{what}:{line}: {msg}")]
    Parse {
        what: String,
        line: usize,
        msg: String,
    },

    #[error("malformed gadget `{name}`: {msg}")]
    Gadget { name: String, msg: String },

    #[error("unknown token `{0}`")]
    UnknownToken(String),

    #[error("{0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(what: impl Into<String>, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            what: what.into(),
            line,
            msg: msg.into(),
        }
    }
}

use thiserror::Error;

/// Errors raised by graph construction, parsing and the recognition pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: malformed edge-list line {text:?}")]
    MalformedLine { line: usize, text: String },

    #[error("self-loop on vertex {vertex:?}{}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    SelfLoop { vertex: String, line: Option<usize> },

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("graph is not chordal")]
    NotChordal,

    #[error("vertex set is not a clique")]
    NotAClique,

    #[error("clique does not separate the graph")]
    NotSeparating,

    #[error("{what} cap exceeded: {actual} > {cap}")]
    CapExceeded {
        what: &'static str,
        actual: usize,
        cap: usize,
    },

    #[error("tree nodes are not the maximal cliques of the graph")]
    CliqueSetMismatch,

    #[error("not a clique path tree: {0}")]
    NotAPathTree(String),

    #[error("template {family} needs parameter >= {min}, got {param}")]
    TemplateParameter {
        family: &'static str,
        param: usize,
        min: usize,
    },

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("part {part} lies below {} upper bounds", uppers.len())]
    OverDominated { part: usize, uppers: Vec<usize> },

    #[error("part {0} lies below no upper bound")]
    Undominated(usize),

    #[error("unknown generator model {0:?}")]
    UnknownModel(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

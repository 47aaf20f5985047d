use crate::lattice::{EdgeId, Vertex};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("edge {0} lies outside the box")]
    OutOfBox(EdgeId),
    #[error("vertex {0} lies outside the box")]
    VertexOutOfBox(Vertex),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("inconsistent detour set: {0}")]
    Splice(String),
    #[error("no trial met the conditioning event")]
    NoAcceptedTrials,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

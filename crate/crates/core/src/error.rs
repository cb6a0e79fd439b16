use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "interaction point {point} of station {station} is not in free space \
         (clearance {clearance:.3} m, needs {required:.3} m, deficit {deficit:.3} m)",
        deficit = required - clearance
    )]
    InteractionPointBlocked {
        station: String,
        point: String,
        clearance: f64,
        required: f64,
    },

    #[error("interaction points {a} and {b} are {distance:.3} m apart, minimum node distance is {required:.3} m")]
    InteractionPointsTooClose {
        a: String,
        b: String,
        distance: f64,
        required: f64,
    },

    #[error("transport matrix is {got}x{got}, expected {expected}x{expected}")]
    MatrixSize { expected: usize, got: usize },

    #[error("transport matrix entry ({row}, {col}) is negative")]
    NegativeDemand { row: usize, col: usize },

    #[error("transport matrix diagonal entry {index} is non-zero")]
    NonZeroDiagonal { index: usize },

    #[error("edge {a}-{b} is a self-loop")]
    SelfLoop { a: usize, b: usize },

    #[error("duplicate edge {a}-{b}")]
    DuplicateEdge { a: usize, b: usize },

    #[error("node id {id} out of range (roadmap has {len} nodes)")]
    NodeOutOfRange { id: usize, len: usize },

    #[error("no station node at interaction point {0}")]
    MissingStation(String),

    #[error("demand pair {from} -> {to} is not connected in the roadmap")]
    Unreachable { from: String, to: String },

    #[error("operation needs at least {needed} nodes, roadmap has {got}")]
    TooFewNodes { needed: usize, got: usize },
}

impl Error {
    /// True for errors caused by a demand pair that cannot be served.
    pub fn is_infeasible_demand(&self) -> bool {
        matches!(self, Error::Unreachable { .. })
    }
}

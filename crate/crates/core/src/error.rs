use alloc::string::String;

/// Errors raised by the core algorithms.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right} qubits")]
    LengthMismatch { left: usize, right: usize },
    #[error("qubit index {index} out of range for {n} qubits")]
    QubitOutOfRange { index: usize, n: usize },
    #[error("unsupported gate `{0}`")]
    UnsupportedGate(String),
    #[error("gate {gate} expects {expected} qubit(s), got {got}")]
    GateArity { gate: &'static str, expected: usize, got: usize },
    #[error("tableau is limited to {max} qubits, got {n}")]
    TableauTooLarge { n: usize, max: usize },
    #[error("fault at location {location} has support outside its element")]
    FaultOutsideElement { location: usize },
    #[error("unknown fault location {0}")]
    UnknownLocation(usize),
    #[error("unknown measurement tag {0}")]
    UnknownTag(u32),
    #[error("circuit parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("code too large for brute force: {n} qubits (max {max})")]
    CodeTooLarge { n: usize, max: usize },
    #[error("invalid error probability {0}")]
    InvalidProbability(f64),
    #[error("noise preset requires round metadata the circuit does not carry")]
    MissingRoundMetadata,
    #[error("matching graph has an odd number of nodes ({0})")]
    OddNodeCount(usize),
    #[error("no perfect matching exists")]
    NoPerfectMatching,
    #[error("detection event {event} outside the decoding graph ({nodes} nodes)")]
    EventOutOfRange { event: usize, nodes: usize },
    #[error("too many events for brute force: {n} (max {max})")]
    TooManyEvents { n: usize, max: usize },
    #[error("operator is not supported on the data qubits")]
    OffData,
    #[error("correction does not clear the syndrome")]
    ResidualSyndrome,
    #[error("defect layout: {0}")]
    Defect(String),
    #[error("logical operator would be measured by {0}")]
    LogicalMeasured(String),
}

pub type Result<T> = core::result::Result<T, Error>;

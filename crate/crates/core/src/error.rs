use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("undefined root set: the zero polynomial vanishes everywhere")]
    UndefinedRootSet,
    #[error("interval [{lo}, {hi}] does not isolate exactly one root (found {count})")]
    NotIsolating { lo: String, hi: String, count: usize },
    #[error("empty window: lower bound {lo} exceeds upper bound {hi}")]
    EmptyWindow { lo: String, hi: String },
    #[error("incompatible generators")]
    IncompatibleGenerators,
    #[error("division by zero")]
    DivisionByZero,
    #[error("map not applicable: T{digit} requires {bound}")]
    MapNotApplicable { digit: u8, bound: &'static str },
    #[error("point {0} lies outside I_q = [0, 1/(q-1)]")]
    OutsideUnitInterval(String),
    #[error("base q = {0} must lie in (1, 2)")]
    BaseOutOfRange(String),
    #[error("q = {0} is out of range: the unique-expansion description needs q in (golden ratio, q_f)")]
    UniqueRangeViolation(String),
    #[error("pole in window")]
    PoleInWindow,
    #[error("identically satisfied: the cleared equation is the zero polynomial")]
    IdenticallySatisfied,
    #[error("conjugate precondition failed: {0}")]
    ConjugatePrecondition(String),
    #[error("window outside supported range: {0}")]
    UnsupportedWindow(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Parse errors are user input problems; everything else is a domain error.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

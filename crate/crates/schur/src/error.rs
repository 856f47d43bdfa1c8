use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("letter {letter} is outside the alphabet 1..={rank}")]
    LetterOutOfRange { letter: u8, rank: usize },
    #[error("word repeats letter {letter} at position {position}")]
    RepeatedLetter { letter: u8, position: usize },
    #[error("cannot parse word {0:?}")]
    WordSyntax(String),
    #[error("invalid Cartan matrix: {0}")]
    Cartan(String),
    #[error("invalid exchange matrix: {0}")]
    ExchangeMatrix(String),
    #[error("word {0} has even length")]
    EvenLength(String),
    #[error("word {0} is not a reflection word")]
    NotAReflection(String),
    #[error("vector {0} is not a positive real root")]
    NotARealRoot(String),
    #[error("empty word where a nonempty one is required")]
    EmptyWord,
    #[error("segment ({0}, {1}) does not have coprime components")]
    NotCoprime(i64, i64),
    #[error("segment ({0}, {1}) runs along a grid line")]
    DegenerateSegment(i64, i64),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("decomposition mismatch for {word}: matrix walk gives {matrix}, pattern gives {pattern}")]
    DecompositionMismatch { word: String, matrix: usize, pattern: usize },
    #[error("the 2-complete engine needs a rank-3 exchange matrix with |b_ij| >= 2 off the diagonal and vertex 1 a source, vertex 3 a sink")]
    NotTwoComplete,
    #[error("Laurent division failed: {0}")]
    InexactDivision(String),
    #[error("term budget of {budget} exceeded after prefix {completed:?}")]
    Budget { budget: usize, completed: String },
    #[error("search for ({b}, {c}) exhausted its bound: {reason}")]
    SearchExhausted { b: i64, c: i64, reason: String },
    #[error("round trip failed: {0}")]
    RoundTrip(String),
    #[error("polyline resolution {0} is too coarse")]
    Resolution(usize),
    #[error("invalid setting: {0}")]
    Config(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

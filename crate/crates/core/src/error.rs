use qab_arith::ArithError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("singular model: {0}")]
    Singular(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("no rational 2-torsion: 2-division cubic {0} has no rational root")]
    NoTwoTorsion(String),
    #[error("not a kernel polynomial: {0}")]
    NotKernel(String),
    #[error("undecided at degree cap: {0}")]
    Undecided(String),
    #[error("invariant breach: {0}")]
    InvariantBreach(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

impl Error {
    /// Process exit code for command-line use.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvariantBreach(_) => 3,
            _ => 2,
        }
    }
}

use thiserror::Error;

/// Crate-wide error type.
///
/// Variants are grouped by the subsystem that raises them; the CLI maps
/// them onto exit codes (input errors -> 2, resource caps -> 3, math
/// mismatches -> 1).
#[derive(Debug, Error)]
pub enum Error {
    // exact arithmetic
    #[error("division by zero in cyclotomic field")]
    ZeroInverse,
    #[error("conductor {0} exceeds the configured limit {1}")]
    ConductorLimit(u32, u32),
    #[error("cannot parse cyclotomic number from {0:?}: {1}")]
    CycParse(String, String),

    // reflection groups
    #[error("group order cap {cap} exceeded during enumeration ({found}+ elements)")]
    OrderCapExceeded { cap: usize, found: usize },
    #[error("generator {0} is not invertible")]
    NonInvertibleGenerator(usize),
    #[error("generator {0} does not have finite order within the cap")]
    InfiniteOrderGenerator(usize),
    #[error("invariant degree extraction failed: {0}")]
    DegreeExtraction(String),
    #[error("bad group specification: {0}")]
    BadGroupSpec(String),

    // braid algebra
    #[error("algebra dimension cap {0} exceeded; enumeration did not close")]
    DimCapExceeded(usize),
    #[error("relations are inconsistent: the quotient algebra collapsed to zero")]
    ZeroAlgebra,
    #[error("bad presentation: {0}")]
    BadPresentation(String),
    #[error("relation set error: {0}")]
    BadRelationSet(String),

    // rank-one / symmetric spaces
    #[error("invalid rank-one datum: {0}")]
    BadRankOneDatum(String),
    #[error("invalid restricted-root datum: {0}")]
    BadRootDatum(String),
    #[error("involution model inconsistent: {0}")]
    ModelInconsistent(String),

    // monodromy tracker
    #[error("polar model invalid: {0}")]
    BadPolarModel(String),
    #[error("Newton iteration diverged at {0}")]
    NewtonDiverged(String),
    #[error("path tracking exceeded the step cap of {0}")]
    StepCapExceeded(usize),
    #[error("endpoint matching ambiguous: two lifts within the acceptance radius")]
    AmbiguousMatch,
    #[error("critical orbit incomplete: {0}")]
    OrbitIncomplete(String),
    #[error("cluster gap not found: {0}")]
    ClusterGapNotFound(String),
    #[error("loop passes too close to the discriminant (|det J| = {0:.3e})")]
    DiscriminantTooClose(f64),

    // catalog / io
    #[error("catalog entry {id}: {msg}")]
    CatalogEntry { id: String, msg: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error in {path}: {msg}")]
    Parse { path: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit code contract: 1 mathematical mismatch, 2 input error, 3 resource cap.
    pub fn exit_code(&self) -> i32 {
        use Error::*;
        match self {
            OrderCapExceeded { .. } | DimCapExceeded(_) | StepCapExceeded(_) | ConductorLimit(..) => 3,
            CycParse(..) | BadGroupSpec(_) | BadPresentation(_) | BadRelationSet(_)
            | BadRankOneDatum(_) | BadRootDatum(_) | BadPolarModel(_) | Io { .. } | Parse { .. } => 2,
            _ => 1,
        }
    }
}

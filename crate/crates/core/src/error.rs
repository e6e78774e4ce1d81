use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("odd characteristic only")]
    EvenCharacteristic,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a subfield: {0}")]
    NotSubfield(String),
    #[error("group of order {order} exceeds size bound {bound}")]
    SizeBound { order: usize, bound: usize },
    #[error("not closed under multiplication: {0}")]
    NotClosed(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("class functions live on different groups")]
    GroupMismatch,
    #[error("reducible parameter (order-2 θ): packet {{σ⁺,σ⁻}}")]
    ReducibleParameter,
    #[error("non-regular parameter: {0}")]
    NotRegular(String),
    #[error("Ennola mismatch")]
    EnnolaMismatch,
    #[error("ambiguous: {0}")]
    Ambiguous(String),
    #[error("no identification: {0}")]
    NoIdentification(String),
    #[error("hypothesis (H) fails: {0}")]
    HypothesisH(String),
    #[error("realization impossible: {0}")]
    Realization(String),
    #[error("central character must be nontrivial")]
    TrivialCentralCharacter,
    #[error("oracle failure: {0}")]
    Oracle(String),
    #[error("non-integral multiplicity: {0}")]
    NonIntegral(String),
    #[error("intertwiner averaging produced zero for every seed")]
    ZeroIntertwiner,
}

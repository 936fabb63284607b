use quandlekit::abgrp::AbError;
use quandlekit::cocycle::CocycleError;
use quandlekit::covering::CoveringError;
use quandlekit::fingroup::GroupError;
use quandlekit::knot::KnotError;
use quandlekit::permgrp::PermError;
use quandlekit::pi1::Pi1Error;
use quandlekit::quandle::QuandleError;
use thiserror::Error;

/// Failure of a command, carrying its exit status.
#[derive(Debug, Error)]
pub enum CliError {
    /// Exit 1: the input is well formed but fails the property asked about.
    #[error("{0}")]
    Negative(String),
    /// Exit 2.
    #[error("{0}")]
    Usage(String),
    /// Exit 3.
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Negative(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<PermError> for CliError {
    fn from(e: PermError) -> Self {
        match e {
            PermError::CapExceeded { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<AbError> for CliError {
    fn from(e: AbError) -> Self {
        match e {
            AbError::CapExceeded { .. } => CliError::Budget(e.to_string()),
            AbError::NotAutomorphism => CliError::Negative(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::TooLarge(_) => CliError::Budget(e.to_string()),
            GroupError::Abelian(a) => a.into(),
            GroupError::Perm(p) => p.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<QuandleError> for CliError {
    fn from(e: QuandleError) -> Self {
        match e {
            QuandleError::Parse(_) | QuandleError::Io { .. } | QuandleError::Shape => CliError::Usage(e.to_string()),
            QuandleError::TooLarge => CliError::Budget(e.to_string()),
            QuandleError::Perm(p) => p.into(),
            QuandleError::Abelian(a) => a.into(),
            _ => CliError::Negative(e.to_string()),
        }
    }
}

impl From<CocycleError> for CliError {
    fn from(e: CocycleError) -> Self {
        match e {
            CocycleError::BudgetExceeded => CliError::Budget(e.to_string()),
            CocycleError::NotLatin | CocycleError::InvalidCocycle(_) => CliError::Negative(e.to_string()),
            CocycleError::Group(g) => g.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<Pi1Error> for CliError {
    fn from(e: Pi1Error) -> Self {
        match e {
            Pi1Error::NotConnected => CliError::Negative(e.to_string()),
            Pi1Error::Overflow => CliError::Budget(e.to_string()),
            Pi1Error::Abelian(a) => a.into(),
        }
    }
}

impl From<CoveringError> for CliError {
    fn from(e: CoveringError) -> Self {
        match e {
            CoveringError::BudgetExceeded => CliError::Budget(e.to_string()),
            CoveringError::Shape => CliError::Usage(e.to_string()),
            CoveringError::Quandle(q) => q.into(),
            CoveringError::Cocycle(c) => c.into(),
            _ => CliError::Negative(e.to_string()),
        }
    }
}

impl From<KnotError> for CliError {
    fn from(e: KnotError) -> Self {
        match e {
            KnotError::InvalidCocycle(_) => CliError::Negative(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

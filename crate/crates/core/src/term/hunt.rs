//! Search the enumerated small hoops for a counterexample to an identity.

use serde::Serialize;
use thiserror::Error;

use super::eval::{check_identity, CheckError, FiniteModel, Model, Verdict, Witness};
use super::Identity;
use crate::enumerate::{enumerate_hoops_with, EnumerateError, EnumerateOptions};
use crate::exec::Exec;
use crate::hoop::FiniteHoop;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HuntError {
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error(transparent)]
    Check(#[from] CheckError),
}

/// The first failing model, by size and then enumeration order.
#[derive(Clone, Debug, Serialize)]
pub struct HuntWitness {
    pub size: usize,
    /// position in the enumeration of hoops of this size
    pub index: usize,
    #[serde(skip)]
    pub hoop: FiniteHoop,
    pub witness: Option<Witness>,
    pub detail: String,
}

/// Hoops of size `1..=max_size` are searched in enumeration order. Root
/// symbols and `0` add their hypotheses, so models without them are skipped.
pub fn hunt(
    identity: &Identity,
    max_size: usize,
    opts: EnumerateOptions,
) -> Result<Option<HuntWitness>, HuntError> {
    let id = identity.with_implied_hypotheses();
    for n in 1..=max_size {
        let models = enumerate_hoops_with(n, opts)?.models;
        let indexed: Vec<(usize, FiniteHoop)> = models.into_iter().enumerate().collect();
        let verdicts = check_all(&id, indexed, opts.exec)?;
        if let Some(found) = verdicts.into_iter().flatten().next() {
            return Ok(Some(HuntWitness { size: n, ..found }));
        }
    }
    Ok(None)
}

fn check_all(
    id: &Identity,
    models: Vec<(usize, FiniteHoop)>,
    exec: Exec,
) -> Result<Vec<Option<HuntWitness>>, CheckError> {
    exec.map(models, |(index, hoop)| {
        let m = FiniteModel::new(hoop);
        let r = check_identity(Model::Finite(&m), id)?;
        Ok(match r.verdict {
            Verdict::Fail { detail, witness } => Some(HuntWitness {
                size: m.hoop().size(),
                index,
                hoop: m.hoop().clone(),
                witness,
                detail,
            }),
            _ => None,
        })
    })
    .into_iter()
    .collect()
}

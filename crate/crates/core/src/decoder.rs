//! Shot-by-shot decoding of full flag codes on F_q^{2k} over erasure channels.
//!
//! At shot `i` the received subspace `X_i` pins down a unique codeword once
//! `dim X_i > 0` (for `i <= k`, where the projected code is a partial spread)
//! or `dim X_i > 2(i-k)` (for `i > k`, where codewords meet in exactly
//! `2(i-k)` dimensions). The decoder stops at the first such shot.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flags::{is_disjoint, projected_code, FlagCode, StutteringFlag};
use crate::geometry::Subspace;

/// Per-dimension lookup from projected subspace to flag index.
#[derive(Clone, Debug)]
pub struct DecoderIndex {
    k: usize,
    /// `projected[i][j]` is the `(i+1)`-th subspace of flag `j`.
    projected: Vec<Vec<Subspace>>,
    maps: Vec<HashMap<Subspace, usize>>,
}

impl DecoderIndex {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn shots(&self) -> usize {
        self.projected.len()
    }

    /// Flag whose `shot`-th subspace (1-based) is `s`.
    pub fn lookup(&self, shot: usize, s: &Subspace) -> Option<usize> {
        self.maps.get(shot.checked_sub(1)?)?.get(s).copied()
    }

    pub fn map_sizes(&self) -> Vec<usize> {
        self.maps.iter().map(HashMap::len).collect()
    }

    /// Flags whose `shot`-th subspace contains `x`.
    pub fn containing(&self, shot: usize, x: &Subspace) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (j, s) in self.projected[shot - 1].iter().enumerate() {
            if s.contains(x)? {
                out.push(j);
            }
        }
        Ok(out)
    }
}

/// Builds the lookup for a disjoint full flag code on an even dimensional space.
pub fn build_index(code: &FlagCode) -> Result<DecoderIndex> {
    let ty = code.flag_type();
    let n = ty.ambient();
    if !is_disjoint(code)? {
        return Err(Error::NotDisjoint);
    }
    if !ty.is_full() || !n.is_multiple_of(2) {
        return Err(Error::Unsupported("decoding needs a full flag code on F_q^{2k}".into()));
    }
    let mut projected = Vec::with_capacity(ty.len());
    let mut maps = Vec::with_capacity(ty.len());
    for i in 0..ty.len() {
        let column: Vec<Subspace> = code.flags().iter().map(|f| f.get(i).clone()).collect();
        let map: HashMap<Subspace, usize> = column.iter().cloned().enumerate().map(|(j, s)| (s, j)).collect();
        debug_assert_eq!(map.len(), projected_code(code, i)?.len());
        projected.push(column);
        maps.push(map);
    }
    Ok(DecoderIndex { k: n / 2, projected, maps })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureReason {
    /// No shot carried enough information.
    NoConditionMet,
    /// A qualifying received subspace lies in no codeword: not an erasure.
    ChannelContractViolated,
    /// A qualifying received subspace lies in several codewords.
    Ambiguous,
}

impl FailureReason {
    pub fn as_str(self) -> &'static str {
        match self {
            FailureReason::NoConditionMet => "no_condition_met",
            FailureReason::ChannelContractViolated => "channel_contract_violated",
            FailureReason::Ambiguous => "ambiguous",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecodeOutcome {
    /// `flag` is a 0-based code index, `shot` is 1-based.
    Decoded {
        flag: usize,
        shot: usize,
    },
    Failure(FailureReason),
}

impl DecodeOutcome {
    pub fn decoded_flag(&self) -> Option<usize> {
        match self {
            DecodeOutcome::Decoded { flag, .. } => Some(*flag),
            DecodeOutcome::Failure(_) => None,
        }
    }

    pub fn shot(&self) -> Option<usize> {
        match self {
            DecodeOutcome::Decoded { shot, .. } => Some(*shot),
            DecodeOutcome::Failure(_) => None,
        }
    }
}

/// Whether shot `shot` (1-based) with a received subspace of dimension `dim`
/// identifies a unique codeword.
pub fn shot_fires(shot: usize, dim: usize, k: usize) -> bool {
    if shot <= k {
        dim > 0
    } else {
        dim > 2 * (shot - k)
    }
}

/// `e <= k^2 - 1`, half the minimum distance `2k^2` rounded down.
pub fn correctable(e: usize, k: usize) -> bool {
    e < k * k
}

/// Receives `X_1, X_2, ...` one shot at a time and decides as early as possible.
#[derive(Debug)]
pub struct OnlineDecoder<'a> {
    index: &'a DecoderIndex,
    shot: usize,
    outcome: Option<DecodeOutcome>,
}

impl<'a> OnlineDecoder<'a> {
    pub fn new(index: &'a DecoderIndex) -> Self {
        Self { index, shot: 0, outcome: None }
    }

    pub fn outcome(&self) -> Option<DecodeOutcome> {
        self.outcome
    }

    /// Feeds the next received subspace. Returns the verdict once one exists;
    /// later shots do not change it.
    pub fn push(&mut self, x: &Subspace) -> Result<Option<DecodeOutcome>> {
        if self.outcome.is_some() {
            return Ok(self.outcome);
        }
        let total = self.index.shots();
        if self.shot == total {
            return Err(Error::InvalidFlag(format!("more than {total} shots")));
        }
        self.shot += 1;
        let shot = self.shot;
        if x.dim() > shot {
            return Err(Error::InvalidFlag(format!("shot {shot} received dimension {}", x.dim())));
        }
        if shot_fires(shot, x.dim(), self.index.k) {
            let hits = self.index.containing(shot, x)?;
            self.outcome = Some(match hits.as_slice() {
                [j] => DecodeOutcome::Decoded { flag: *j, shot },
                [] => DecodeOutcome::Failure(FailureReason::ChannelContractViolated),
                _ => DecodeOutcome::Failure(FailureReason::Ambiguous),
            });
        } else if shot == total {
            self.outcome = Some(DecodeOutcome::Failure(FailureReason::NoConditionMet));
        }
        Ok(self.outcome)
    }
}

pub fn decode(code: &FlagCode, index: &DecoderIndex, x: &StutteringFlag) -> Result<DecodeOutcome> {
    if x.flag_type() != code.flag_type() || index.shots() != code.flag_type().len() {
        return Err(Error::TypeMismatch);
    }
    let mut online = OnlineDecoder::new(index);
    for s in x.subspaces() {
        if let Some(outcome) = online.push(s)? {
            return Ok(outcome);
        }
    }
    unreachable!("the last shot always yields a verdict")
}

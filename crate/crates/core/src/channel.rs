//! Multishot erasure channel.
//!
//! At shot `i` the receiver gets `Z_i = Y_i G^{(t_i)}`, where `G^{(t_i)}` is
//! the first `t_i` rows of the sent flag's generator and `Y_i` is an
//! `a_i x t_i` coefficient matrix, and keeps `X_i = rowsp(Z_1; ...; Z_i)`.
//! Erasures come from two independent mechanisms: a whole shot blacked out
//! (probability `blackout_prob`), or the newest row's coefficient column lost
//! (probability `erasure_prob`). Received data is never corrupted, so
//! `X_i ⊆ F_i` always.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::decoder::{build_index, correctable, decode, DecodeOutcome};
use crate::error::{Error, Result};
use crate::flags::{Flag, FlagCode, FlagType, StutteringFlag};
use crate::geometry::Subspace;
use crate::linalg::MatrixFq;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChannelConfig {
    /// `a_i` per shot; `None` means `a_i = t_i`.
    pub packets_per_shot: Option<Vec<usize>>,
    pub erasure_prob: f64,
    pub blackout_prob: f64,
    pub seed: u64,
}

impl Default for ChannelConfig {
    fn default() -> Self {
        Self { packets_per_shot: None, erasure_prob: 0.0, blackout_prob: 0.0, seed: 0 }
    }
}

impl ChannelConfig {
    pub fn new(erasure_prob: f64, blackout_prob: f64, seed: u64) -> Result<Self> {
        let cfg = Self { packets_per_shot: None, erasure_prob, blackout_prob, seed };
        cfg.check_probabilities()?;
        Ok(cfg)
    }

    pub fn with_packets(mut self, packets: Vec<usize>) -> Self {
        self.packets_per_shot = Some(packets);
        self
    }

    fn check_probabilities(&self) -> Result<()> {
        for (name, p) in [("erasure", self.erasure_prob), ("blackout", self.blackout_prob)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidConfig(format!("{name} probability {p} outside [0, 1]")));
            }
        }
        Ok(())
    }

    /// The `a_i` for a code of type `ty`.
    pub fn packets_for(&self, ty: &FlagType) -> Result<Vec<usize>> {
        self.check_probabilities()?;
        match &self.packets_per_shot {
            None => Ok(ty.dims().to_vec()),
            Some(a) if a.len() == ty.len() => Ok(a.clone()),
            Some(a) if a.len() == 1 => Ok(vec![a[0]; ty.len()]),
            Some(a) => Err(Error::InvalidConfig(format!("{} packet counts for {} shots", a.len(), ty.len()))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TransmissionTrace {
    pub sent_flag_index: usize,
    pub received: StutteringFlag,
    pub y_matrices: Vec<MatrixFq>,
    pub z_matrices: Vec<MatrixFq>,
    pub shot_errors: Vec<usize>,
    pub total_error: usize,
}

impl TransmissionTrace {
    /// `rowsp(Z_i)` alone, what a receiver without accumulation would hold.
    pub fn single_shot_subspaces(&self) -> Vec<Subspace> {
        self.z_matrices.iter().map(Subspace::from_matrix).collect()
    }
}

/// Per-shot subspace distances `d_S(F_i, X_i)` and their sum.
pub fn error_accounting(flag: &Flag, x: &StutteringFlag) -> Result<(Vec<usize>, usize)> {
    if flag.flag_type() != x.flag_type() {
        return Err(Error::TypeMismatch);
    }
    let shot_errors =
        flag.subspaces().iter().zip(x.subspaces()).map(|(f, xi)| f.distance(xi)).collect::<Result<Vec<_>>>()?;
    let total = shot_errors.iter().sum();
    Ok((shot_errors, total))
}

/// Cumulative row spaces of `Z_1, Z_2, ...`.
pub fn assemble_stuttering_flag(ty: &FlagType, z_matrices: &[MatrixFq]) -> Result<StutteringFlag> {
    let first = z_matrices.first().ok_or_else(|| Error::ShapeMismatch("no shots".into()))?;
    let mut acc = Subspace::zero(first.field(), ty.ambient());
    let mut xs = Vec::with_capacity(z_matrices.len());
    for z in z_matrices {
        acc = acc.sum(&Subspace::from_matrix(z))?;
        xs.push(acc.clone());
    }
    StutteringFlag::new(ty.clone(), xs)
}

fn run(code: &FlagCode, flag_index: usize, y_matrices: Vec<MatrixFq>) -> Result<TransmissionTrace> {
    let flag = code.flag(flag_index)?;
    let ty = code.flag_type();
    let z_matrices = y_matrices
        .iter()
        .zip(ty.dims())
        .map(|(y, &t)| y.mul(&flag.generator().row_prefix(t)?))
        .collect::<Result<Vec<_>>>()?;
    let received = assemble_stuttering_flag(ty, &z_matrices)?;
    assert!(received.is_contained_in(flag)?, "erasure channel produced a subspace outside the sent flag");
    let (shot_errors, total_error) = error_accounting(flag, &received)?;
    Ok(TransmissionTrace { sent_flag_index: flag_index, received, y_matrices, z_matrices, shot_errors, total_error })
}

/// Replays the channel with given coefficient matrices (`Y_i` has `t_i` columns).
pub fn inject(code: &FlagCode, flag_index: usize, y_matrices: Vec<MatrixFq>) -> Result<TransmissionTrace> {
    code.flag(flag_index)?;
    let ty = code.flag_type();
    if y_matrices.len() != ty.len() {
        return Err(Error::ShapeMismatch(format!("{} coefficient matrices for {} shots", y_matrices.len(), ty.len())));
    }
    for (i, (y, &t)) in y_matrices.iter().zip(ty.dims()).enumerate() {
        if y.cols() != t {
            return Err(Error::ShapeMismatch(format!("Y_{} has {} columns, expected {t}", i + 1, y.cols())));
        }
        if y.field() != code.field() {
            return Err(Error::FieldMismatch);
        }
    }
    run(code, flag_index, y_matrices)
}

fn sample_y(code: &FlagCode, packets: &[usize], cfg: &ChannelConfig, rng: &mut ChaCha8Rng) -> Vec<MatrixFq> {
    let f = code.field();
    let q = f.q();
    packets
        .iter()
        .zip(code.flag_type().dims())
        .map(|(&a, &t)| {
            if rng.random_bool(cfg.blackout_prob) {
                return MatrixFq::zeros(f, 0, t);
            }
            let mut y = MatrixFq::zeros(f, a, t);
            for r in 0..a {
                for c in 0..t {
                    y.set(r, c, rng.random_range(0..q));
                }
            }
            if rng.random_bool(cfg.erasure_prob) {
                for r in 0..a {
                    y.set(r, t - 1, 0);
                }
            }
            y
        })
        .collect()
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Sends flag `flag_index` through the random channel seeded by `cfg.seed`.
pub fn transmit(code: &FlagCode, flag_index: usize, cfg: &ChannelConfig) -> Result<TransmissionTrace> {
    code.flag(flag_index)?;
    trial_trace(code, cfg, 0, Some(flag_index))
}

/// The transmission behind trial `trial` of [`simulate`]. The sent flag is
/// `fixed_flag` or drawn uniformly from the trial's own stream.
pub fn trial_trace(
    code: &FlagCode,
    cfg: &ChannelConfig,
    trial: u64,
    fixed_flag: Option<usize>,
) -> Result<TransmissionTrace> {
    let packets = cfg.packets_for(code.flag_type())?;
    let mut rng = trial_rng(cfg.seed, trial);
    let sent = match fixed_flag {
        Some(i) => i,
        None => rng.random_range(0..code.len()),
    };
    let ys = sample_y(code, &packets, cfg, &mut rng);
    run(code, sent, ys)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub sent: usize,
    pub received_dims: Vec<usize>,
    pub total_error: usize,
    pub correctable: bool,
    pub decoded: bool,
    /// Decoded flag index, if any.
    pub decoded_flag: Option<usize>,
    pub decode_shot: Option<usize>,
    pub failure: Option<&'static str>,
    pub correct: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimulationSummary {
    pub trials: u64,
    pub correctable: u64,
    pub decoded: u64,
    pub decoded_correct: u64,
    pub decoded_wrong: u64,
    pub no_condition_met: u64,
    pub channel_contract_violated: u64,
    pub ambiguous: u64,
    pub correctable_decoded_correct: u64,
    pub mean_total_error: f64,
    pub success_rate: f64,
    pub correctable_success_rate: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimulationReport {
    pub q: u32,
    pub n: usize,
    pub flag_type: String,
    pub code_size: usize,
    pub config: ChannelConfig,
    pub packets: Vec<usize>,
    /// Fixed sent flag, or `None` for a uniformly random one per trial.
    pub fixed_flag: Option<usize>,
    pub records: Vec<TrialRecord>,
    pub summary: SimulationSummary,
}

/// Runs `trials` independent transmissions and decodes each. Trial `t` uses
/// its own generator stream, so results do not depend on scheduling.
pub fn simulate(
    code: &FlagCode,
    cfg: &ChannelConfig,
    trials: u64,
    fixed_flag: Option<usize>,
) -> Result<SimulationReport> {
    let packets = cfg.packets_for(code.flag_type())?;
    if let Some(i) = fixed_flag {
        code.flag(i)?;
    }
    let index = build_index(code)?;
    let k = index.k();
    let records = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let trace = trial_trace(code, cfg, trial, fixed_flag)?;
            let sent = trace.sent_flag_index;
            let outcome = decode(code, &index, &trace.received)?;
            let (decoded_flag, decode_shot, failure) = match outcome {
                DecodeOutcome::Decoded { flag, shot } => (Some(flag), Some(shot), None),
                DecodeOutcome::Failure(r) => (None, None, Some(r.as_str())),
            };
            Ok(TrialRecord {
                trial,
                sent,
                received_dims: trace.received.dims(),
                total_error: trace.total_error,
                correctable: correctable(trace.total_error, k),
                decoded: decoded_flag.is_some(),
                decoded_flag,
                decode_shot,
                failure,
                correct: decoded_flag == Some(sent),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let summary = summarize(&records);
    Ok(SimulationReport {
        q: code.field().q(),
        n: code.ambient(),
        flag_type: code.flag_type().to_string(),
        code_size: code.len(),
        config: cfg.clone(),
        packets,
        fixed_flag,
        records,
        summary,
    })
}

fn summarize(records: &[TrialRecord]) -> SimulationSummary {
    let count = |pred: &dyn Fn(&TrialRecord) -> bool| records.iter().filter(|r| pred(r)).count() as u64;
    let trials = records.len() as u64;
    let correctable = count(&|r| r.correctable);
    let decoded_correct = count(&|r| r.correct);
    let correctable_decoded_correct = count(&|r| r.correctable && r.correct);
    let ratio = |a: u64, b: u64| if b == 0 { 0.0 } else { a as f64 / b as f64 };
    SimulationSummary {
        trials,
        correctable,
        decoded: count(&|r| r.decoded),
        decoded_correct,
        decoded_wrong: count(&|r| r.decoded && !r.correct),
        no_condition_met: count(&|r| r.failure == Some("no_condition_met")),
        channel_contract_violated: count(&|r| r.failure == Some("channel_contract_violated")),
        ambiguous: count(&|r| r.failure == Some("ambiguous")),
        correctable_decoded_correct,
        mean_total_error: ratio(records.iter().map(|r| r.total_error as u64).sum(), trials),
        success_rate: ratio(decoded_correct, trials),
        correctable_success_rate: ratio(correctable_decoded_correct, correctable),
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "-".to_string(), |v| v.to_string())
}

impl SimulationReport {
    /// Human-readable report: header, summary, then one line per trial.
    pub fn to_text(&self) -> String {
        let c = &self.config;
        let s = &self.summary;
        let mut out = String::new();
        let _ = writeln!(out, "code q={} n={} type={} size={}", self.q, self.n, self.flag_type, self.code_size);
        let _ = writeln!(
            out,
            "channel seed={} erasure_prob={} blackout_prob={} packets={} sent={}",
            c.seed,
            c.erasure_prob,
            c.blackout_prob,
            join(&self.packets),
            self.fixed_flag.map_or_else(|| "random".to_string(), |i| i.to_string())
        );
        let _ = writeln!(
            out,
            "trials={} correctable={} decoded={} decoded_correct={} decoded_wrong={}",
            s.trials, s.correctable, s.decoded, s.decoded_correct, s.decoded_wrong
        );
        let _ = writeln!(
            out,
            "failures no_condition_met={} channel_contract_violated={} ambiguous={}",
            s.no_condition_met, s.channel_contract_violated, s.ambiguous
        );
        let _ = writeln!(
            out,
            "success_rate={:.6} correctable_success_rate={:.6} mean_total_error={:.6}",
            s.success_rate, s.correctable_success_rate, s.mean_total_error
        );
        let _ = writeln!(out, "trial sent dims total_error correctable outcome shot");
        for r in &self.records {
            let outcome = match (r.decoded_flag, r.failure) {
                (Some(f), _) if r.correct => format!("decoded:{f}"),
                (Some(f), _) => format!("wrong:{f}"),
                (None, Some(why)) => format!("failure:{why}"),
                (None, None) => unreachable!(),
            };
            let _ = writeln!(
                out,
                "{} {} {} {} {} {} {}",
                r.trial,
                r.sent,
                join(&r.received_dims),
                r.total_error,
                r.correctable,
                outcome,
                opt(r.decode_shot)
            );
        }
        out
    }

    /// One JSON object per line: each trial, then the summary.
    pub fn to_json_lines(&self) -> String {
        #[derive(Serialize)]
        struct Line<'a, T: Serialize> {
            kind: &'a str,
            #[serde(flatten)]
            body: T,
        }
        let mut out = String::new();
        #[derive(Serialize)]
        struct Header<'a> {
            q: u32,
            n: usize,
            flag_type: &'a str,
            code_size: usize,
            config: &'a ChannelConfig,
            packets: &'a [usize],
            fixed_flag: Option<usize>,
        }
        let h = Header {
            q: self.q,
            n: self.n,
            flag_type: &self.flag_type,
            code_size: self.code_size,
            config: &self.config,
            packets: &self.packets,
            fixed_flag: self.fixed_flag,
        };
        let lines = std::iter::once(serde_json::to_string(&Line { kind: "header", body: h }))
            .chain(self.records.iter().map(|r| serde_json::to_string(&Line { kind: "trial", body: r })))
            .chain(std::iter::once(serde_json::to_string(&Line { kind: "summary", body: &self.summary })));
        for l in lines {
            out.push_str(&l.expect("report serializes"));
            out.push('\n');
        }
        out
    }
}

/// Wilson score interval for `successes` out of `n` at normal quantile `z`.
pub fn wilson_interval(successes: u64, n: u64, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let nf = n as f64;
    let p = successes as f64 / nf;
    let z2 = z * z;
    let centre = (p + z2 / (2.0 * nf)) / (1.0 + z2 / nf);
    let half = z * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt() / (1.0 + z2 / nf);
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Two-sided 99% normal quantile.
pub const Z_99: f64 = 2.575_829_303_548_901;

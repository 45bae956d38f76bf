//! Brute-force oracles and generators shared by the integration tests.
#![allow(dead_code)]

use flagcode::flags::{Flag, FlagCode, FlagType, Provenance, StutteringFlag};
use flagcode::geometry::Subspace;
use flagcode::gf::PrimePowerField;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn gf(p: u64, m: u32) -> PrimePowerField {
    PrimePowerField::with_default_modulus(p, m).unwrap()
}

/// `dim(U ∩ V)` by counting the vectors of `U` that lie in `V`.
pub fn brute_intersection_dim(u: &Subspace, v: &Subspace) -> usize {
    let q = u.field().q() as usize;
    let count = u.vectors().unwrap().iter().filter(|x| v.contains_vector(x)).count();
    let mut d = 0;
    let mut size = 1;
    while size < count {
        size *= q;
        d += 1;
    }
    assert_eq!(size, count, "intersection size is not a power of q");
    d
}

pub fn brute_subspace_distance(u: &Subspace, v: &Subspace) -> usize {
    u.dim() + v.dim() - 2 * brute_intersection_dim(u, v)
}

pub fn brute_flag_distance(a: &[Subspace], b: &[Subspace]) -> usize {
    a.iter().zip(b).map(|(u, v)| brute_subspace_distance(u, v)).sum()
}

/// Maximum pairwise distance between `t`-dimensional subspaces of F_q^n.
pub fn brute_max_subspace_distance(t: usize, n: usize) -> usize {
    2 * t.min(n - t)
}

pub fn brute_min_distance(code: &FlagCode) -> usize {
    let fs = code.flags();
    let mut best = usize::MAX;
    for i in 0..fs.len() {
        for j in i + 1..fs.len() {
            best = best.min(brute_flag_distance(fs[i].subspaces(), fs[j].subspaces()));
        }
    }
    best
}

pub fn random_type<R: Rng>(rng: &mut R, n: usize) -> FlagType {
    loop {
        let dims: Vec<usize> = (1..n).filter(|_| rng.random_bool(0.5)).collect();
        if !dims.is_empty() {
            return FlagType::new(dims, n).unwrap();
        }
    }
}

/// Up to `size` distinct random flags; `None` if fewer than two came out.
pub fn random_code<R: Rng>(rng: &mut R, field: &PrimePowerField, ty: &FlagType, size: usize) -> Option<FlagCode> {
    let flags: Vec<Flag> = (0..size).map(|_| Flag::random(field, ty.clone(), rng)).collect();
    FlagCode::collapsing(flags, Provenance::Adhoc).ok()
}

/// Random subset (at least two flags) of `code`, optionally with a random
/// extra flag mixed in.
pub fn random_subcode<R: Rng>(rng: &mut R, code: &FlagCode, extra: bool) -> Option<FlagCode> {
    let mut flags = code.flags().to_vec();
    flags.shuffle(rng);
    let keep = rng.random_range(2..=flags.len());
    flags.truncate(keep);
    if extra {
        flags.push(Flag::random(code.field(), code.flag_type().clone(), rng));
    }
    FlagCode::collapsing(flags, Provenance::Adhoc).ok()
}

/// Every stuttering flag `X` with `X_i ⊆ F_i` and `Σ (t_i - dim X_i) <= max_error`.
pub fn stuttering_subflags(flag: &Flag, max_error: usize) -> Vec<StutteringFlag> {
    let ty = flag.flag_type();
    let r = ty.len();
    let candidates: Vec<Vec<Subspace>> = flag.subspaces().iter().map(|f| f.all_subspaces().unwrap()).collect();
    let mut out = Vec::new();
    let mut chosen: Vec<Option<Subspace>> = vec![None; r];
    fn go(
        i: usize,
        budget: usize,
        ty: &FlagType,
        candidates: &[Vec<Subspace>],
        chosen: &mut Vec<Option<Subspace>>,
        out: &mut Vec<StutteringFlag>,
    ) {
        for x in &candidates[i] {
            let loss = ty.dims()[i] - x.dim();
            if loss > budget {
                continue;
            }
            if let Some(Some(next)) = chosen.get(i + 1) {
                if !next.contains(x).unwrap() {
                    continue;
                }
            }
            chosen[i] = Some(x.clone());
            if i == 0 {
                let xs = chosen.iter().map(|s| s.clone().unwrap()).collect();
                out.push(StutteringFlag::new(ty.clone(), xs).unwrap());
            } else {
                go(i - 1, budget - loss, ty, candidates, chosen, out);
            }
        }
        chosen[i] = None;
    }
    go(r - 1, max_error, ty, &candidates, &mut chosen, &mut out);
    out
}

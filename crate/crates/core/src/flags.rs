//! Flags, stuttering flags, flag codes and their distance structure.

use std::collections::HashSet;
use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{enumerate_grassmannian, Subspace};
use crate::gf::PrimePowerField;
use crate::linalg::MatrixFq;

/// Type vector `(t_1 < ... < t_r)` of flags in F_q^n, `0 < t_i < n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlagType {
    dims: Vec<usize>,
    n: usize,
}

impl FlagType {
    pub fn new(dims: Vec<usize>, n: usize) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidType("empty type vector".into()));
        }
        if dims[0] == 0 || *dims.last().unwrap() >= n {
            return Err(Error::InvalidType(format!("dimensions must lie in 1..{n}: {dims:?}")));
        }
        if dims.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidType(format!("dimensions must increase strictly: {dims:?}")));
        }
        Ok(Self { dims, n })
    }

    /// `(1, 2, ..., n-1)`.
    pub fn full(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidType(format!("no full flags in dimension {n}")));
        }
        Self::new((1..n).collect(), n)
    }

    /// Parses `"1,2,3"`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let dims = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidType(format!("{s:?}: {e}")))?;
        Self::new(dims, n)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn last(&self) -> usize {
        *self.dims.last().unwrap()
    }

    pub fn is_full(&self) -> bool {
        self.dims.len() == self.n - 1
    }

    /// Largest possible subspace distance between two `t`-dimensional subspaces.
    pub fn max_subspace_distance(&self, t: usize) -> usize {
        (2 * t).min(2 * (self.n - t))
    }

    /// Upper bound on the minimum distance of any flag code of this type.
    pub fn max_distance_bound(&self) -> usize {
        max_flag_distance_bound(self)
    }

    pub fn is_subtype_of(&self, other: &FlagType) -> bool {
        self.n == other.n && self.dims.iter().all(|d| other.dims.contains(d))
    }
}

impl fmt::Display for FlagType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.dims.iter().map(usize::to_string).collect();
        write!(f, "{}", s.join(","))
    }
}

/// `2 (Σ_{t_i ≤ ⌊n/2⌋} t_i + Σ_{t_i > ⌊n/2⌋} (n - t_i))`.
pub fn max_flag_distance_bound(ty: &FlagType) -> usize {
    let half = ty.n / 2;
    2 * ty.dims.iter().map(|&t| if t <= half { t } else { ty.n - t }).sum::<usize>()
}

/// Anything that is a typed sequence of subspaces.
pub trait SubspaceSequence {
    fn flag_type(&self) -> &FlagType;
    fn subspaces(&self) -> &[Subspace];
}

/// Sum of coordinate-wise subspace distances.
///
/// Works for any pair of typed sequences (flag/flag, flag/stuttering flag)
/// as long as the ambient dimension and length agree.
pub fn flag_distance<A, B>(a: &A, b: &B) -> Result<usize>
where
    A: SubspaceSequence + ?Sized,
    B: SubspaceSequence + ?Sized,
{
    let (ta, tb) = (a.flag_type(), b.flag_type());
    if ta.n != tb.n || ta.len() != tb.len() {
        return Err(Error::TypeMismatch);
    }
    a.subspaces().iter().zip(b.subspaces()).map(|(u, v)| u.distance(v)).sum()
}

/// A flag `F_1 ⊊ ... ⊊ F_r` together with a generator matrix whose
/// first `t_i` rows span `F_i`.
#[derive(Clone)]
pub struct Flag {
    ty: FlagType,
    subspaces: Vec<Subspace>,
    generator: MatrixFq,
}

impl PartialEq for Flag {
    fn eq(&self, other: &Self) -> bool {
        self.ty == other.ty && self.subspaces == other.subspaces
    }
}

impl Eq for Flag {}

impl std::hash::Hash for Flag {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ty.hash(state);
        self.subspaces.hash(state);
    }
}

impl fmt::Debug for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Flag").field("type", &self.ty.dims).field("subspaces", &self.subspaces).finish()
    }
}

impl SubspaceSequence for Flag {
    fn flag_type(&self) -> &FlagType {
        &self.ty
    }
    fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }
}

impl Flag {
    /// Flag spanned by the row prefixes of `generator` at the type's dimensions.
    pub fn from_generator(generator: &MatrixFq, ty: FlagType) -> Result<Flag> {
        if generator.cols() != ty.n {
            return Err(Error::DimensionMismatch(format!(
                "generator has {} columns, ambient dimension is {}",
                generator.cols(),
                ty.n
            )));
        }
        if generator.rows() < ty.last() {
            return Err(Error::InvalidFlag(format!(
                "generator has {} rows, type needs {}",
                generator.rows(),
                ty.last()
            )));
        }
        let generator = generator.take_rows(ty.last());
        if generator.rank() != ty.last() {
            return Err(Error::InvalidFlag("generator rows are linearly dependent".into()));
        }
        let subspaces = ty.dims.iter().map(|&t| Subspace::from_matrix(&generator.take_rows(t))).collect();
        Ok(Flag { ty, subspaces, generator })
    }

    /// Flag from explicit nested subspaces; a compatible generator is derived
    /// by extending a basis of each subspace to the next.
    pub fn from_subspaces(ty: FlagType, subspaces: Vec<Subspace>) -> Result<Flag> {
        if subspaces.len() != ty.len() {
            return Err(Error::InvalidFlag(format!("{} subspaces for a type of length {}", subspaces.len(), ty.len())));
        }
        for (s, &t) in subspaces.iter().zip(&ty.dims) {
            if s.ambient() != ty.n {
                return Err(Error::AmbientMismatch(s.ambient(), ty.n));
            }
            if s.dim() != t {
                return Err(Error::InvalidFlag(format!("subspace of dimension {} where {t} expected", s.dim())));
            }
        }
        for w in subspaces.windows(2) {
            if !w[1].contains(&w[0])? {
                return Err(Error::InvalidFlag("subspaces are not nested".into()));
            }
        }
        let field = subspaces[0].field().clone();
        let mut generator = MatrixFq::zeros(&field, 0, ty.n);
        for s in &subspaces {
            for r in 0..s.dim() {
                let one = MatrixFq::from_flat(&field, 1, ty.n, s.basis().row(r).to_vec())?;
                let extended = generator.stack(&one)?;
                if extended.rank() == extended.rows() {
                    generator = extended;
                }
            }
        }
        debug_assert_eq!(generator.rows(), ty.last());
        Ok(Flag { ty, subspaces, generator })
    }

    /// Uniformly random full-rank generator, hence a random flag of the given type.
    pub fn random<R: Rng + ?Sized>(field: &PrimePowerField, ty: FlagType, rng: &mut R) -> Flag {
        let q = field.q();
        loop {
            let data: Vec<u32> = (0..ty.last() * ty.n).map(|_| rng.random_range(0..q)).collect();
            let g = MatrixFq::from_flat(field, ty.last(), ty.n, data).expect("in range");
            if let Ok(f) = Flag::from_generator(&g, ty.clone()) {
                return f;
            }
        }
    }

    pub fn flag_type(&self) -> &FlagType {
        &self.ty
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    /// Subspace at position `i` (0-based).
    pub fn get(&self, i: usize) -> &Subspace {
        &self.subspaces[i]
    }

    pub fn generator(&self) -> &MatrixFq {
        &self.generator
    }

    pub fn field(&self) -> &PrimePowerField {
        self.generator.field()
    }

    pub fn distance(&self, other: &Flag) -> Result<usize> {
        if self.ty != other.ty {
            return Err(Error::TypeMismatch);
        }
        flag_distance(self, other)
    }

    /// Keeps only the coordinates whose dimension appears in `ty`.
    pub fn puncture(&self, ty: &FlagType) -> Result<Flag> {
        if !ty.is_subtype_of(&self.ty) {
            return Err(Error::TypeNotSubset(ty.to_string(), self.ty.to_string()));
        }
        Flag::from_generator(&self.generator, ty.clone())
    }
}

/// Weakly nested subspaces `X_1 ⊆ ... ⊆ X_r` with `dim X_i ≤ t_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StutteringFlag {
    ty: FlagType,
    subspaces: Vec<Subspace>,
}

impl SubspaceSequence for StutteringFlag {
    fn flag_type(&self) -> &FlagType {
        &self.ty
    }
    fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }
}

impl StutteringFlag {
    pub fn new(ty: FlagType, subspaces: Vec<Subspace>) -> Result<Self> {
        if subspaces.len() != ty.len() {
            return Err(Error::InvalidFlag(format!("{} subspaces for a type of length {}", subspaces.len(), ty.len())));
        }
        for (s, &t) in subspaces.iter().zip(&ty.dims) {
            if s.ambient() != ty.n {
                return Err(Error::AmbientMismatch(s.ambient(), ty.n));
            }
            if s.dim() > t {
                return Err(Error::InvalidFlag(format!("dimension {} exceeds {t}", s.dim())));
            }
        }
        for w in subspaces.windows(2) {
            if !w[1].contains(&w[0])? {
                return Err(Error::InvalidFlag("stuttering flag is not weakly nested".into()));
            }
        }
        Ok(Self { ty, subspaces })
    }

    pub fn zero(field: &PrimePowerField, ty: FlagType) -> Self {
        let subspaces = vec![Subspace::zero(field, ty.n); ty.len()];
        Self { ty, subspaces }
    }

    pub fn flag_type(&self) -> &FlagType {
        &self.ty
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn get(&self, i: usize) -> &Subspace {
        &self.subspaces[i]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.subspaces.iter().map(Subspace::dim).collect()
    }

    /// `X_i ⊆ F_i` for every coordinate.
    pub fn is_contained_in(&self, flag: &Flag) -> Result<bool> {
        if self.ty.n != flag.ty.n || self.ty.len() != flag.ty.len() {
            return Err(Error::TypeMismatch);
        }
        for (x, f) in self.subspaces.iter().zip(&flag.subspaces) {
            if !f.contains(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when the sequence equals the given flag coordinate-wise.
    pub fn equals_flag(&self, flag: &Flag) -> bool {
        self.subspaces == flag.subspaces
    }
}

impl From<&Flag> for StutteringFlag {
    fn from(f: &Flag) -> Self {
        Self { ty: f.ty.clone(), subspaces: f.subspaces.clone() }
    }
}

/// Where a flag code came from. Recorded in code files as a comment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Full flag code from the planar spread of F_q^{2k}.
    FullFromSpread {
        k: usize,
    },
    /// Punctured from a parent code of the given type.
    Punctured {
        parent: Vec<usize>,
    },
    /// Prefix flags of a `spread_dim`-spread.
    DivisorType {
        spread_dim: usize,
    },
    Adhoc,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        match self {
            Provenance::FullFromSpread { k } => write!(f, "full-from-spread k={k}"),
            Provenance::Punctured { parent } => write!(f, "punctured parent={}", join(parent)),
            Provenance::DivisorType { spread_dim } => write!(f, "divisor-type spread={spread_dim}"),
            Provenance::Adhoc => write!(f, "adhoc"),
        }
    }
}

impl std::str::FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidFlag(format!("unknown provenance {s:?}"));
        let mut it = s.split_whitespace();
        let kind = it.next().ok_or_else(bad)?;
        let arg = it.next().and_then(|a| a.split_once('=')).map(|(_, v)| v);
        let num = |v: Option<&str>| v.and_then(|x| x.parse::<usize>().ok()).ok_or_else(bad);
        match kind {
            "full-from-spread" => Ok(Provenance::FullFromSpread { k: num(arg)? }),
            "divisor-type" => Ok(Provenance::DivisorType { spread_dim: num(arg)? }),
            "punctured" => {
                let parent = arg
                    .ok_or_else(bad)?
                    .split(',')
                    .map(|x| x.parse::<usize>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Provenance::Punctured { parent })
            }
            "adhoc" => Ok(Provenance::Adhoc),
            _ => Err(bad()),
        }
    }
}

/// A set of at least two distinct flags of one type, in insertion order.
#[derive(Clone, Debug)]
pub struct FlagCode {
    field: PrimePowerField,
    ty: FlagType,
    flags: Vec<Flag>,
    provenance: Provenance,
}

impl PartialEq for FlagCode {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.ty == other.ty && self.flags == other.flags
    }
}

impl FlagCode {
    /// Rejects duplicates, mixed types and codes with fewer than two flags.
    pub fn new(flags: Vec<Flag>, provenance: Provenance) -> Result<Self> {
        if flags.len() < 2 {
            return Err(Error::CodeTooSmall(flags.len()));
        }
        let ty = flags[0].ty.clone();
        let field = flags[0].field().clone();
        let mut seen = HashSet::new();
        for (i, f) in flags.iter().enumerate() {
            if f.ty != ty {
                return Err(Error::TypeMismatch);
            }
            if *f.field() != field {
                return Err(Error::FieldMismatch);
            }
            if !seen.insert(f) {
                return Err(Error::DuplicateFlag(i));
            }
        }
        Ok(Self { field, ty, flags, provenance })
    }

    /// Like [`FlagCode::new`] but silently drops repeated flags.
    pub fn collapsing(flags: Vec<Flag>, provenance: Provenance) -> Result<Self> {
        let mut seen = HashSet::new();
        let flags: Vec<Flag> = flags.into_iter().filter(|f| seen.insert(f.clone())).collect();
        Self::new(flags, provenance)
    }

    pub fn field(&self) -> &PrimePowerField {
        &self.field
    }

    pub fn flag_type(&self) -> &FlagType {
        &self.ty
    }

    pub fn ambient(&self) -> usize {
        self.ty.n
    }

    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }

    pub fn flag(&self, i: usize) -> Result<&Flag> {
        self.flags.get(i).ok_or_else(|| Error::IndexOutOfRange { index: i, valid: format!("0..{}", self.flags.len()) })
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// All `(i, j, d_f)` with `i < j`.
    pub fn pairwise_distances(&self) -> Vec<(usize, usize, usize)> {
        let n = self.flags.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        pairs
            .into_par_iter()
            .map(|(i, j)| (i, j, flag_distance(&self.flags[i], &self.flags[j]).expect("same type")))
            .collect()
    }

    /// Exhaustive all-pairs minimum flag distance.
    pub fn min_distance(&self) -> usize {
        self.pairwise_distances().into_iter().map(|(_, _, d)| d).min().expect("at least two flags")
    }
}

/// The `i`-projected code (0-based position), duplicates collapsed, first-seen order.
pub fn projected_code(code: &FlagCode, i: usize) -> Result<Vec<Subspace>> {
    if i >= code.ty.len() {
        return Err(Error::IndexOutOfRange { index: i, valid: format!("0..{}", code.ty.len()) });
    }
    let mut seen = HashSet::new();
    Ok(code.flags.iter().map(|f| f.subspaces[i].clone()).filter(|s| seen.insert(s.clone())).collect())
}

/// Minimum subspace distance of a constant dimension code; `None` for a single codeword.
pub fn subspace_code_min_distance(code: &[Subspace]) -> Option<usize> {
    let mut best = None;
    for (i, a) in code.iter().enumerate() {
        for b in &code[i + 1..] {
            let d = a.distance(b).expect("same ambient space");
            best = Some(best.map_or(d, |x: usize| x.min(d)));
        }
    }
    best
}

/// Every projected code has `|C|` elements.
pub fn is_disjoint(code: &FlagCode) -> Result<bool> {
    if code.len() < 2 {
        return Err(Error::CodeTooSmall(code.len()));
    }
    for i in 0..code.ty.len() {
        if projected_code(code, i)?.len() != code.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectedStats {
    pub dim: usize,
    pub size: usize,
    /// `None` when all flags share the subspace.
    pub min_distance: Option<usize>,
    pub max_possible: usize,
}

impl ProjectedStats {
    pub fn attains_max(&self) -> bool {
        self.min_distance == Some(self.max_possible)
    }
}

/// Outcome of [`is_optimum_distance`]: the direct verdict and the
/// disjoint-plus-projected verdict side by side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OptimumDistanceReport {
    pub size: usize,
    pub min_distance: usize,
    pub bound: usize,
    /// `min_distance == bound`.
    pub optimum: bool,
    pub disjoint: bool,
    pub projected: Vec<ProjectedStats>,
    /// Disjoint and every projected code at maximum distance.
    pub characterization: bool,
}

impl OptimumDistanceReport {
    pub fn verdicts_agree(&self) -> bool {
        self.optimum == self.characterization
    }
}

pub fn is_optimum_distance(code: &FlagCode) -> Result<OptimumDistanceReport> {
    if code.len() < 2 {
        return Err(Error::CodeTooSmall(code.len()));
    }
    let min_distance = code.min_distance();
    let bound = max_flag_distance_bound(&code.ty);
    let disjoint = is_disjoint(code)?;
    let projected = code
        .ty
        .dims
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let c = projected_code(code, i)?;
            Ok(ProjectedStats {
                dim: t,
                size: c.len(),
                min_distance: subspace_code_min_distance(&c),
                max_possible: code.ty.max_subspace_distance(t),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let characterization = disjoint && projected.iter().all(ProjectedStats::attains_max);
    Ok(OptimumDistanceReport {
        size: code.len(),
        min_distance,
        bound,
        optimum: min_distance == bound,
        disjoint,
        projected,
        characterization,
    })
}

/// All flags of the given type, in lexicographic order of their subspace tuples.
pub fn enumerate_flags(field: &PrimePowerField, ty: &FlagType) -> Result<Vec<Flag>> {
    let layers = ty.dims.iter().map(|&t| enumerate_grassmannian(field, ty.n, t)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    let mut chain: Vec<Subspace> = Vec::with_capacity(ty.len());
    fn rec(layers: &[Vec<Subspace>], ty: &FlagType, chain: &mut Vec<Subspace>, out: &mut Vec<Flag>) -> Result<()> {
        let level = chain.len();
        if level == layers.len() {
            out.push(Flag::from_subspaces(ty.clone(), chain.clone())?);
            return Ok(());
        }
        for s in &layers[level] {
            if let Some(prev) = chain.last() {
                if !s.contains(prev)? {
                    continue;
                }
            }
            chain.push(s.clone());
            rec(layers, ty, chain, out)?;
            chain.pop();
        }
        Ok(())
    }
    rec(&layers, ty, &mut chain, &mut out)?;
    Ok(out)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::geometry::Subspace;

    fn f2() -> PrimePowerField {
        PrimePowerField::with_default_modulus(2, 1).unwrap()
    }

    /// The type-(1,3) code over F_2^5 whose projected codes are maximum
    /// distance but which is not optimum distance.
    pub(crate) fn counterexample_code() -> FlagCode {
        let f = f2();
        let ty = FlagType::new(vec![1, 3], 5).unwrap();
        let e = |idx: &[usize]| Subspace::span_of_unit_vectors(&f, 5, idx);
        let third =
            Subspace::from_rows(&f, 5, &[vec![1, 0, 0, 0, 0], vec![0, 1, 0, 1, 0], vec![0, 0, 1, 0, 1]]).unwrap();
        let flags = vec![
            Flag::from_subspaces(ty.clone(), vec![e(&[1]), e(&[1, 2, 3])]).unwrap(),
            Flag::from_subspaces(ty.clone(), vec![e(&[4]), e(&[1, 4, 5])]).unwrap(),
            Flag::from_subspaces(ty, vec![e(&[1]), third]).unwrap(),
        ];
        FlagCode::new(flags, Provenance::Adhoc).unwrap()
    }

    #[test]
    fn bound_values() {
        assert_eq!(max_flag_distance_bound(&FlagType::new(vec![1, 3], 5).unwrap()), 6);
        assert_eq!(max_flag_distance_bound(&FlagType::full(4).unwrap()), 8);
        assert_eq!(max_flag_distance_bound(&FlagType::new(vec![2], 4).unwrap()), 4);
        for n in 2..12 {
            let expect = if n % 2 == 0 { n * n / 2 } else { (n * n - 1) / 2 };
            assert_eq!(max_flag_distance_bound(&FlagType::full(n).unwrap()), expect);
        }
    }

    #[test]
    fn invalid_types() {
        assert!(FlagType::new(vec![], 4).is_err());
        assert!(FlagType::new(vec![0, 1], 4).is_err());
        assert!(FlagType::new(vec![1, 4], 4).is_err());
        assert!(FlagType::new(vec![2, 2], 4).is_err());
        assert_eq!(FlagType::parse("1, 2,3", 4).unwrap(), FlagType::full(4).unwrap());
        assert!(FlagType::parse("1,x", 4).is_err());
    }

    #[test]
    fn counterexample_distances() {
        let c = counterexample_code();
        assert_eq!(c.flags()[0].distance(&c.flags()[2]).unwrap(), 4);
        assert_eq!(c.min_distance(), 4);
        let c1 = projected_code(&c, 0).unwrap();
        assert_eq!(c1.len(), 2);
        assert!(!is_disjoint(&c).unwrap());
        let r = is_optimum_distance(&c).unwrap();
        assert!(!r.optimum);
        assert_eq!(r.bound, 6);
        assert!(r.verdicts_agree());
        // Both projected codes are maximum distance on their own.
        assert!(r.projected.iter().all(ProjectedStats::attains_max));
    }

    #[test]
    fn distance_to_self_is_zero() {
        let c = counterexample_code();
        for f in c.flags() {
            assert_eq!(f.distance(f).unwrap(), 0);
        }
    }

    #[test]
    fn type_mismatch() {
        let f = f2();
        let a = Flag::from_generator(&MatrixFq::identity(&f, 4), FlagType::full(4).unwrap()).unwrap();
        let b = Flag::from_generator(&MatrixFq::identity(&f, 4), FlagType::new(vec![1, 2], 4).unwrap()).unwrap();
        assert_eq!(a.distance(&b), Err(Error::TypeMismatch));
        assert!(matches!(FlagCode::new(vec![a.clone(), b], Provenance::Adhoc), Err(Error::TypeMismatch)));
        assert!(matches!(FlagCode::new(vec![a.clone()], Provenance::Adhoc), Err(Error::CodeTooSmall(1))));
        assert!(matches!(FlagCode::new(vec![a.clone(), a], Provenance::Adhoc), Err(Error::DuplicateFlag(1))));
    }

    #[test]
    fn from_subspaces_rejects_bad_nesting() {
        let f = f2();
        let ty = FlagType::new(vec![1, 2], 4).unwrap();
        let e = |idx: &[usize]| Subspace::span_of_unit_vectors(&f, 4, idx);
        assert!(Flag::from_subspaces(ty.clone(), vec![e(&[3]), e(&[1, 2])]).is_err());
        assert!(Flag::from_subspaces(ty.clone(), vec![e(&[1, 2]), e(&[1, 2])]).is_err());
        let ok = Flag::from_subspaces(ty, vec![e(&[2]), e(&[1, 2])]).unwrap();
        assert_eq!(ok.generator().rows(), 2);
        assert_eq!(Subspace::from_matrix(&ok.generator().take_rows(1)), e(&[2]));
    }

    #[test]
    fn disjoint_two_flags() {
        let f = f2();
        let ty = FlagType::full(4).unwrap();
        let id = MatrixFq::identity(&f, 4);
        let rev = MatrixFq::from_rows(&f, 4, &[vec![0, 0, 0, 1], vec![0, 0, 1, 0], vec![0, 1, 0, 0], vec![1, 0, 0, 0]])
            .unwrap();
        let c = FlagCode::new(
            vec![Flag::from_generator(&id, ty.clone()).unwrap(), Flag::from_generator(&rev, ty).unwrap()],
            Provenance::Adhoc,
        )
        .unwrap();
        assert!(is_disjoint(&c).unwrap());
        let r = is_optimum_distance(&c).unwrap();
        // Shot distances 2 + 4 + 2.
        assert_eq!(r.min_distance, 8);
        assert!(r.optimum && r.characterization);
    }

    #[test]
    fn sub_maximal_disjoint_pair() {
        let f = f2();
        let ty = FlagType::full(4).unwrap();
        let a = MatrixFq::identity(&f, 4);
        let b = MatrixFq::from_rows(&f, 4, &[vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 1, 0]])
            .unwrap();
        let c = FlagCode::new(
            vec![Flag::from_generator(&a, ty.clone()).unwrap(), Flag::from_generator(&b, ty).unwrap()],
            Provenance::Adhoc,
        )
        .unwrap();
        let r = is_optimum_distance(&c).unwrap();
        assert!(!r.optimum);
        assert!(r.verdicts_agree());
    }

    #[test]
    fn singleton_projection() {
        let f = f2();
        let ty = FlagType::new(vec![1, 2], 4).unwrap();
        let a = MatrixFq::from_rows(&f, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        let b = MatrixFq::from_rows(&f, 4, &[vec![1, 0, 0, 0], vec![0, 0, 1, 0]]).unwrap();
        let c = FlagCode::new(
            vec![Flag::from_generator(&a, ty.clone()).unwrap(), Flag::from_generator(&b, ty).unwrap()],
            Provenance::Adhoc,
        )
        .unwrap();
        assert_eq!(projected_code(&c, 0).unwrap().len(), 1);
        assert!(matches!(projected_code(&c, 2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn stuttering_flag_validation() {
        let f = f2();
        let ty = FlagType::full(4).unwrap();
        let z = Subspace::zero(&f, 4);
        let e1 = Subspace::span_of_unit_vectors(&f, 4, &[1]);
        let e2 = Subspace::span_of_unit_vectors(&f, 4, &[2]);
        assert!(StutteringFlag::new(ty.clone(), vec![z.clone(), e1.clone(), e1.clone()]).is_ok());
        assert!(StutteringFlag::new(ty.clone(), vec![e1.clone(), e2, z.clone()]).is_err());
        assert!(StutteringFlag::new(ty.clone(), vec![Subspace::whole(&f, 4), z.clone(), z]).is_err());
        let flag = Flag::from_generator(&MatrixFq::identity(&f, 4), ty.clone()).unwrap();
        let x = StutteringFlag::new(ty.clone(), vec![e1.clone(), e1.clone(), e1]).unwrap();
        assert!(x.is_contained_in(&flag).unwrap());
        // Mixed distance: (0, 1, 2) shot errors.
        assert_eq!(flag_distance(&flag, &x).unwrap(), 3);
    }

    #[test]
    fn provenance_roundtrip() {
        for p in [
            Provenance::FullFromSpread { k: 2 },
            Provenance::Punctured { parent: vec![1, 2, 3] },
            Provenance::DivisorType { spread_dim: 3 },
            Provenance::Adhoc,
        ] {
            assert_eq!(p.to_string().parse::<Provenance>().unwrap(), p);
        }
        assert!("bogus".parse::<Provenance>().is_err());
    }
}

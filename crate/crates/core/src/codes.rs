//! Optimum distance flag codes built from spreads.
//!
//! The full flag code on F_q^{2k} pairs each planar spread member with its
//! cyclic successor, `W_i = [S_i; S_{i+1}]`, and takes the flag of row
//! prefixes of `W_i`. Puncturing and the divisor-type construction derive
//! codes of other types from the same machinery.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::clique::{cliques_of_size, max_clique, Graph};
use crate::error::{Error, Result};
use crate::flags::{enumerate_flags, projected_code, Flag, FlagCode, FlagType, Provenance};
use crate::gf::PrimePowerField;
use crate::linalg::MatrixFq;
use crate::spreads::{build_spread, partial_spread_bound, verify_spread, Spread, SpreadReport};

/// The `2k x 2k` matrices `W_1, ..., W_{q^k+1}` aligned with the spread order.
#[derive(Clone, Debug)]
pub struct WMatrixFamily {
    matrices: Vec<MatrixFq>,
}

impl WMatrixFamily {
    pub fn matrices(&self) -> &[MatrixFq] {
        &self.matrices
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }
}

pub fn build_w_family(spread: &Spread) -> Result<WMatrixFamily> {
    if !spread.is_planar() {
        return Err(Error::NotPlanar { n: spread.n(), k: spread.k() });
    }
    let gens = spread.generators();
    let count = gens.len();
    let matrices = (0..count)
        .map(|i| {
            let w = gens[i].stack(&gens[(i + 1) % count])?;
            if w.rank() != spread.n() {
                return Err(Error::RankDeficient { index: i + 1 });
            }
            Ok(w)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WMatrixFamily { matrices })
}

/// `{F_{W_i}}`, the optimum distance full flag code of size `q^k + 1`.
pub fn full_flag_code_from_spread(spread: &Spread) -> Result<FlagCode> {
    let family = build_w_family(spread)?;
    let ty = FlagType::full(spread.n())?;
    let flags = family.matrices.iter().map(|w| Flag::from_generator(w, ty.clone())).collect::<Result<Vec<_>>>()?;
    FlagCode::new(flags, Provenance::FullFromSpread { k: spread.k() })
}

/// Builds the companion-matrix planar spread of F_q^{2k} and its full flag code.
pub fn full_flag_code(field: &PrimePowerField, k: usize) -> Result<FlagCode> {
    full_flag_code_from_spread(&build_spread(field, k, 2 * k)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelCheck {
    pub dim: usize,
    pub size: usize,
    /// 0 for `j <= k`, `2(j - k)` above.
    pub expected_intersection: usize,
    pub observed_intersections: BTreeSet<usize>,
}

impl LevelCheck {
    pub fn ok(&self, code_size: usize) -> bool {
        self.size == code_size && self.observed_intersections.iter().all(|&d| d == self.expected_intersection)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionReport {
    pub k: usize,
    pub code_size: usize,
    pub levels: Vec<LevelCheck>,
    /// Verification of the k-projected code as a spread.
    pub middle_spread: SpreadReport,
}

impl ConstructionReport {
    pub fn passed(&self) -> bool {
        self.levels.iter().all(|l| l.ok(self.code_size)) && self.middle_spread.passed()
    }
}

/// Projected codes of the full flag code: partial spreads up to dimension
/// `k`, equidistant `2(j-k)`-intersecting above, all of size `|C|`.
pub fn verify_projected_structure(code: &FlagCode) -> Result<ConstructionReport> {
    let ty = code.flag_type();
    let n = ty.ambient();
    if !ty.is_full() || !n.is_multiple_of(2) {
        return Err(Error::Unsupported("a full flag code on F_q^{2k}".into()));
    }
    let k = n / 2;
    let mut levels = Vec::with_capacity(n - 1);
    for (i, &j) in ty.dims().iter().enumerate() {
        let proj = projected_code(code, i)?;
        let mut observed = BTreeSet::new();
        for (a_idx, a) in proj.iter().enumerate() {
            for b in &proj[a_idx + 1..] {
                observed.insert(a.intersection_dim(b)?);
            }
        }
        levels.push(LevelCheck {
            dim: j,
            size: proj.len(),
            expected_intersection: if j <= k { 0 } else { 2 * (j - k) },
            observed_intersections: observed,
        });
    }
    let middle: Vec<MatrixFq> = projected_code(code, k - 1)?.iter().map(|s| s.basis().clone()).collect();
    let middle_spread = verify_spread(&Spread::from_generators(code.field(), n, k, middle)?);
    Ok(ConstructionReport { k, code_size: code.len(), levels, middle_spread })
}

/// Keeps only the coordinates listed in `ty`; repeated flags collapse.
pub fn puncture(code: &FlagCode, ty: &FlagType) -> Result<FlagCode> {
    if !ty.is_subtype_of(code.flag_type()) {
        return Err(Error::TypeNotSubset(ty.to_string(), code.flag_type().to_string()));
    }
    let flags = code.flags().iter().map(|f| f.puncture(ty)).collect::<Result<Vec<_>>>()?;
    let provenance = if ty == code.flag_type() {
        code.provenance().clone()
    } else {
        Provenance::Punctured { parent: code.flag_type().dims().to_vec() }
    };
    FlagCode::collapsing(flags, provenance)
}

/// Optimum distance code of type `(t_1, ..., t_r)` with `t_r | n`: row
/// prefixes of the generators of a `t_r`-spread.
pub fn divisor_type_code(field: &PrimePowerField, n: usize, ty: &FlagType) -> Result<FlagCode> {
    if ty.ambient() != n {
        return Err(Error::InvalidType(format!("type lives in dimension {}, not {n}", ty.ambient())));
    }
    let top = ty.last();
    if !n.is_multiple_of(top) {
        return Err(Error::NotDivisor { k: top, n });
    }
    let spread = build_spread(field, top, n)?;
    let flags = spread.generators().iter().map(|g| Flag::from_generator(g, ty.clone())).collect::<Result<Vec<_>>>()?;
    FlagCode::new(flags, Provenance::DivisorType { spread_dim: top })
}

/// Whether an optimum distance full flag code on F_q^n may have a `k`-spread
/// as its `k`-projected code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SpreadProjectionVerdict {
    /// `n = 2k`.
    Admissible,
    /// `n = 3`, `k = 1`: not ruled out, no construction offered.
    AdmissibleSpecialCase,
    /// The `(k+1)`-projected code would be a partial spread too large for its bound.
    Inadmissible { next_partial_spread_bound: u64, spread_size: u64 },
}

pub fn check_spread_projection_dimension(q: u64, n: usize, k: usize) -> Result<SpreadProjectionVerdict> {
    if k == 0 || !n.is_multiple_of(k) || k >= n {
        return Err(Error::NotDivisor { k, n });
    }
    let s = n / k;
    if n == 3 {
        return Ok(SpreadProjectionVerdict::AdmissibleSpecialCase);
    }
    if s == 2 {
        return Ok(SpreadProjectionVerdict::Admissible);
    }
    let next = partial_spread_bound(q, k + 1, n);
    let spread_size = partial_spread_bound(q, k, n);
    debug_assert!(next < spread_size);
    Ok(SpreadProjectionVerdict::Inadmissible { next_partial_spread_bound: next, spread_size })
}

/// Largest number of full flags the maximality oracle will put in a graph.
pub const MAX_ORACLE_VERTICES: usize = 4096;

#[derive(Clone, Debug, Serialize)]
pub struct MaximalityReport {
    pub n: usize,
    pub vertices: usize,
    pub edges: usize,
    pub symmetric: bool,
    pub clique_number: usize,
    /// Sampled maximum cliques (indices into the full flag enumeration).
    pub witnesses: Vec<Vec<usize>>,
    /// Whether each witness's k-projected code passes spread verification.
    pub witness_spreads: Vec<bool>,
}

impl MaximalityReport {
    pub fn all_witnesses_project_to_spreads(&self) -> bool {
        !self.witness_spreads.is_empty() && self.witness_spreads.iter().all(|&b| b)
    }
}

/// Exact maximum size of an optimum distance full flag code on F_q^n (n even),
/// by maximum clique search over all full flags.
pub fn maximality_oracle(field: &PrimePowerField, n: usize, witness_limit: usize) -> Result<MaximalityReport> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::Unsupported("an even ambient dimension".into()));
    }
    let k = n / 2;
    let ty = FlagType::full(n)?;
    let bound = ty.max_distance_bound();
    let count: u64 = (1..n).map(|t| crate::geometry::gaussian_binomial(field.q() as u64, n - t + 1, 1)).product();
    if count > MAX_ORACLE_VERTICES as u64 {
        return Err(Error::TooLarge(format!("{count} full flags")));
    }
    let flags = enumerate_flags(field, &ty)?;
    let mut g = Graph::new(flags.len());
    for i in 0..flags.len() {
        for j in i + 1..flags.len() {
            if flags[i].distance(&flags[j])? == bound {
                g.add_edge(i, j);
            }
        }
    }
    let best = max_clique(&g);
    let clique_number = best.len();
    let witnesses = cliques_of_size(&g, clique_number, witness_limit.max(1));
    let witness_spreads = witnesses
        .iter()
        .map(|w| {
            let gens = w.iter().map(|&v| flags[v].get(k - 1).basis().clone()).collect();
            Ok(verify_spread(&Spread::from_generators(field, n, k, gens)?).passed())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MaximalityReport {
        n,
        vertices: flags.len(),
        edges: g.edge_count(),
        symmetric: g.is_symmetric(),
        clique_number,
        witnesses,
        witness_spreads,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flags::{is_disjoint, is_optimum_distance};

    fn gf(p: u64, m: u32) -> PrimePowerField {
        PrimePowerField::with_default_modulus(p, m).unwrap()
    }

    #[test]
    fn w_family_f2_k2() {
        let f = gf(2, 1);
        let s = build_spread(&f, 2, 4).unwrap();
        let w = build_w_family(&s).unwrap();
        assert_eq!(w.len(), 5);
        assert_eq!(w.matrices()[3], MatrixFq::identity(&f, 4));
        assert_eq!(
            w.matrices()[0].to_rows(),
            vec![vec![1, 0, 0, 1], vec![0, 1, 1, 1], vec![1, 0, 1, 1], vec![0, 1, 1, 0]]
        );
        // Cyclic: the last matrix wraps around to S_1.
        assert_eq!(w.matrices()[4].row_prefix(2).unwrap(), s.generators()[4]);
        assert_eq!(w.matrices()[4].to_rows()[2..], s.generators()[0].to_rows()[..]);
    }

    #[test]
    fn w_family_size_f3() {
        let s = build_spread(&gf(3, 1), 2, 4).unwrap();
        assert_eq!(build_w_family(&s).unwrap().len(), 10);
    }

    #[test]
    fn w_family_rejects_non_planar_and_broken() {
        let f = gf(2, 1);
        let s = build_spread(&f, 2, 6).unwrap();
        assert_eq!(build_w_family(&s).unwrap_err(), Error::NotPlanar { n: 6, k: 2 });
        let planar = build_spread(&f, 2, 4).unwrap();
        let dup = planar.with_generator(1, planar.generators()[0].clone()).unwrap();
        assert_eq!(build_w_family(&dup).unwrap_err(), Error::RankDeficient { index: 1 });
    }

    #[test]
    fn full_code_small_cases() {
        for (p, m, k, size, dist) in [(2, 1, 2, 5, 8), (3, 1, 2, 10, 8), (2, 1, 3, 9, 18), (2, 1, 1, 3, 2)] {
            let c = full_flag_code(&gf(p, m), k).unwrap();
            assert_eq!(c.len(), size);
            assert_eq!(c.min_distance(), dist);
            assert!(is_disjoint(&c).unwrap());
            let r = is_optimum_distance(&c).unwrap();
            assert!(r.optimum && r.characterization);
        }
    }

    #[test]
    fn middle_projection_is_the_spread() {
        let f = gf(2, 1);
        let s = build_spread(&f, 2, 4).unwrap();
        let c = full_flag_code_from_spread(&s).unwrap();
        let mid: BTreeSet<_> = projected_code(&c, 1).unwrap().into_iter().collect();
        let members: BTreeSet<_> = s.members().iter().cloned().collect();
        assert_eq!(mid, members);
    }

    #[test]
    fn construction_report() {
        let c = full_flag_code(&gf(2, 1), 2).unwrap();
        let r = verify_projected_structure(&c).unwrap();
        assert!(r.passed());
        assert_eq!(r.levels[0].observed_intersections, BTreeSet::from([0]));
        assert_eq!(r.levels[2].observed_intersections, BTreeSet::from([2]));
    }

    #[test]
    fn puncture_cases() {
        let c = full_flag_code(&gf(2, 1), 2).unwrap();
        let t2 = FlagType::new(vec![2], 4).unwrap();
        let p2 = puncture(&c, &t2).unwrap();
        assert_eq!(p2.len(), 5);
        let spread = build_spread(&gf(2, 1), 2, 4).unwrap();
        let members: BTreeSet<_> = spread.members().iter().cloned().collect();
        let got: BTreeSet<_> = p2.flags().iter().map(|f| f.get(0).clone()).collect();
        assert_eq!(got, members);

        let t13 = FlagType::new(vec![1, 3], 4).unwrap();
        let p13 = puncture(&c, &t13).unwrap();
        assert_eq!(p13.len(), 5);
        assert_eq!(p13.min_distance(), 4);
        assert_eq!(*p13.provenance(), Provenance::Punctured { parent: vec![1, 2, 3] });

        assert_eq!(puncture(&c, c.flag_type()).unwrap(), c);
        let bad = FlagType::new(vec![1, 4], 5).unwrap();
        assert!(matches!(puncture(&c, &bad), Err(Error::TypeNotSubset(..))));
    }

    #[test]
    fn divisor_type_cases() {
        let f = gf(2, 1);
        let c = divisor_type_code(&f, 6, &FlagType::new(vec![1, 2, 3], 6).unwrap()).unwrap();
        assert_eq!((c.len(), c.min_distance()), (9, 12));
        let c = divisor_type_code(&f, 6, &FlagType::new(vec![2, 3], 6).unwrap()).unwrap();
        assert_eq!((c.len(), c.min_distance()), (9, 10));
        let c = divisor_type_code(&f, 4, &FlagType::new(vec![2], 4).unwrap()).unwrap();
        let spread = build_spread(&f, 2, 4).unwrap();
        let got: Vec<_> = c.flags().iter().map(|fl| fl.get(0).clone()).collect();
        assert_eq!(got, spread.members());
        assert!(matches!(
            divisor_type_code(&f, 5, &FlagType::new(vec![1, 2], 5).unwrap()),
            Err(Error::NotDivisor { .. })
        ));
    }

    #[test]
    fn spread_projection_verdicts() {
        assert_eq!(check_spread_projection_dimension(2, 6, 3).unwrap(), SpreadProjectionVerdict::Admissible);
        assert_eq!(
            check_spread_projection_dimension(2, 6, 2).unwrap(),
            SpreadProjectionVerdict::Inadmissible { next_partial_spread_bound: 9, spread_size: 21 }
        );
        assert_eq!(check_spread_projection_dimension(2, 3, 1).unwrap(), SpreadProjectionVerdict::AdmissibleSpecialCase);
        assert_eq!(check_spread_projection_dimension(2, 2, 1).unwrap(), SpreadProjectionVerdict::Admissible);
        assert!(matches!(
            check_spread_projection_dimension(2, 8, 1).unwrap(),
            SpreadProjectionVerdict::Inadmissible { .. }
        ));
        assert!(check_spread_projection_dimension(2, 6, 4).is_err());
        assert!(check_spread_projection_dimension(2, 6, 6).is_err());
    }
}

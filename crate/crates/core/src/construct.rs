//! Canonical constructions and decompositions.
//!
//! * comonotone quantile coupling of given marginals,
//! * the representation `X_i = Z 1_{A_i} + m_i` of pairwise counter-monotonic
//!   vectors, both directions,
//! * increasing transforms of disjoint sub-vectors,
//! * the difference representation of a counter-monotonic pair.

use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::dependence::{
    classify_mutual_exclusivity, is_comonotonic, is_counter_monotonic_pair,
    is_pairwise_counter_monotonic, MutualExclusivityType,
};
use crate::{
    Composition, DiscreteDistribution, Error, RandomVariable, RandomVector, RankLayout, Rational,
    RefinePolicy, Result, Space,
};

/// Nondecreasing function tabulated on finitely many points of `R^d`
/// (componentwise order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    inputs: Vec<Vec<Rational>>,
    outputs: Vec<Rational>,
}

impl MonotoneMap {
    pub fn new(pairs: Vec<(Vec<Rational>, Rational)>) -> Result<MonotoneMap> {
        let mut pairs = pairs;
        pairs.sort();
        pairs.dedup();
        if let Some(first) = pairs.first() {
            let d = first.0.len();
            if pairs.iter().any(|(x, _)| x.len() != d) {
                return Err(Error::ArityMismatch(
                    "breakpoints of one map must share a dimension".into(),
                ));
            }
        }
        for (i, (x, fx)) in pairs.iter().enumerate() {
            for (y, fy) in &pairs[i + 1..] {
                let x_le_y = x.iter().zip(y).all(|(a, b)| a <= b);
                let y_le_x = y.iter().zip(x).all(|(a, b)| a <= b);
                if (x_le_y && fx > fy) || (y_le_x && fy > fx) {
                    let (lower, upper) = if x_le_y { (x, y) } else { (y, x) };
                    return Err(Error::NotMonotone {
                        lower: lower.clone(),
                        upper: upper.clone(),
                    });
                }
            }
        }
        let (inputs, outputs) = pairs.into_iter().unzip();
        Ok(MonotoneMap { inputs, outputs })
    }

    /// One-dimensional table.
    pub fn scalar(points: &[Rational], outputs: &[Rational]) -> Result<MonotoneMap> {
        if points.len() != outputs.len() {
            return Err(Error::LengthMismatch {
                expected: points.len(),
                got: outputs.len(),
            });
        }
        MonotoneMap::new(
            points
                .iter()
                .zip(outputs)
                .map(|(x, y)| (vec![x.clone()], y.clone()))
                .collect(),
        )
    }

    /// Tabulates `f` on `domain`, then checks monotonicity.
    pub fn from_fn(
        domain: &[Vec<Rational>],
        f: impl Fn(&[Rational]) -> Rational,
    ) -> Result<MonotoneMap> {
        MonotoneMap::new(domain.iter().map(|x| (x.clone(), f(x))).collect())
    }

    pub fn eval(&self, x: &[Rational]) -> Option<&Rational> {
        self.inputs
            .binary_search_by(|p| p.as_slice().cmp(x))
            .ok()
            .map(|i| &self.outputs[i])
    }

    pub fn arity(&self) -> Option<usize> {
        self.inputs.first().map(Vec::len)
    }

    pub fn breakpoints(&self) -> &[Vec<Rational>] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[Rational] {
        &self.outputs
    }
}

/// Comonotone coupling `X_i = F_i^{-1}(U)` where `U` ranks the atoms in
/// their order.
///
/// Atoms are split where needed so that every cumulative mass of every
/// marginal falls on an atom boundary; the result lives on that refined
/// space. With [`RefinePolicy::Forbid`] a needed split is an error.
pub fn build_comonotonic(
    marginals: &[DiscreteDistribution],
    space: &Arc<Space>,
    policy: RefinePolicy,
) -> Result<RandomVector> {
    let layout = quantile_layout(marginals, space, policy)?;
    comonotone_on(marginals, &layout)
}

fn quantile_layout(
    marginals: &[DiscreteDistribution],
    space: &Arc<Space>,
    policy: RefinePolicy,
) -> Result<RankLayout> {
    let cuts: Vec<Rational> = marginals.iter().flat_map(|f| f.cumulative()).collect();
    let order: Vec<usize> = (0..space.len()).collect();
    space.layout(&order, &cuts, policy)
}

fn comonotone_on(marginals: &[DiscreteDistribution], layout: &RankLayout) -> Result<RandomVector> {
    let k = layout.space().len();
    let mut tables = vec![vec![Rational::zero(); k]; marginals.len()];
    for (atom, _, upper) in layout.intervals() {
        for (table, f) in tables.iter_mut().zip(marginals) {
            table[atom] = f.quantile(upper).clone();
        }
    }
    RandomVector::from_values(layout.space(), tables)
}

/// Counter-monotone coupling `(F^{-1}(U), G^{-1}(1 - U))`.
pub fn build_counter_monotonic_pair(
    first: &DiscreteDistribution,
    second: &DiscreteDistribution,
    space: &Arc<Space>,
    policy: RefinePolicy,
) -> Result<RandomVector> {
    let v = build_comonotonic(&[first.clone(), second.negated()], space, policy)?;
    let mut c = v.into_components();
    let y = c.pop().expect("two components").neg();
    let x = c.pop().expect("two components");
    RandomVector::new(vec![x, y])
}

/// Which bound the shifts of a representation sit at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PcmType {
    /// `Z >= 0` and `m_i` are essential infima.
    Type1,
    /// `Z <= 0` and `m_i` are essential suprema.
    Type2,
}

/// `X_i = Z 1_{A_i} + m_i` with `Z` of one sign.
#[derive(Debug, Clone, PartialEq)]
pub struct PcmRepresentation {
    pub z: RandomVariable,
    pub composition: Composition,
    pub shifts: Vec<Rational>,
    pub kind: PcmType,
    /// `m = m_1 + ... + m_n`.
    pub total_shift: Rational,
}

impl PcmRepresentation {
    pub fn rebuild(&self) -> Result<RandomVector> {
        build_pcm(&self.z, &self.composition, &self.shifts)
    }
}

/// Evaluates `X_i = Z 1_{A_i} + m_i` atom by atom.
pub fn build_pcm(
    z: &RandomVariable,
    composition: &Composition,
    shifts: &[Rational],
) -> Result<RandomVector> {
    let n = composition.block_count();
    if shifts.len() != n {
        return Err(Error::ArityMismatch(format!(
            "{n} blocks but {} shifts",
            shifts.len()
        )));
    }
    if composition.atom_count() != z.space().len() {
        return Err(Error::ArityMismatch(format!(
            "composition covers {} atoms, space has {}",
            composition.atom_count(),
            z.space().len()
        )));
    }
    let has_pos = z.values().iter().any(Signed::is_positive);
    let has_neg = z.values().iter().any(Signed::is_negative);
    if has_pos && has_neg {
        return Err(Error::SignViolation);
    }
    let tables = (0..n)
        .map(|i| {
            z.values()
                .iter()
                .zip(composition.assignment())
                .map(|(zv, &b)| {
                    if b == i {
                        zv + &shifts[i]
                    } else {
                        shifts[i].clone()
                    }
                })
                .collect()
        })
        .collect();
    RandomVector::from_values(z.space(), tables)
}

/// Canonical representation of a pairwise counter-monotonic vector with at
/// least three non-degenerate components.
///
/// `m_i` are the essential infima (first type) or suprema (second type),
/// `B_i = {X_i != m_i}` and the atoms where `S = m` join the first block.
/// `Z = S - m`.
pub fn decompose_pcm(v: &RandomVector) -> Result<PcmRepresentation> {
    if !is_pairwise_counter_monotonic(v) {
        return Err(Error::NotPcm);
    }
    let nd = v.non_degenerate_count();
    if nd < 3 {
        return Err(Error::TooFewNonDegenerate(nd));
    }
    let kind = match classify_mutual_exclusivity(v) {
        MutualExclusivityType::Type1 => PcmType::Type1,
        MutualExclusivityType::Type2 => PcmType::Type2,
        // impossible for a counter-monotonic vector with three moving parts
        _ => return Err(Error::NotPcm),
    };
    let shifts: Vec<Rational> = v
        .components()
        .iter()
        .map(|x| match kind {
            PcmType::Type1 => x.ess_inf(),
            PcmType::Type2 => x.ess_sup(),
        })
        .collect();
    let total_shift: Rational = shifts.iter().sum();
    let assignment = (0..v.space().len())
        .map(|a| {
            v.components()
                .iter()
                .zip(&shifts)
                .position(|(x, m)| x.value(a) != m)
                .unwrap_or(0)
        })
        .collect();
    let composition = Composition::from_assignment(v.dim(), assignment)?;
    let z = v.sum().shift(&-&total_shift);
    Ok(PcmRepresentation {
        z,
        composition,
        shifts,
        kind,
        total_shift,
    })
}

/// `Y_j = g_j(X_{I_j})` atom by atom.
///
/// Index sets must be disjoint unless `v` is comonotonic.
pub fn apply_increasing_transforms(
    v: &RandomVector,
    index_sets: &[Vec<usize>],
    maps: &[MonotoneMap],
) -> Result<RandomVector> {
    if index_sets.len() != maps.len() {
        return Err(Error::ArityMismatch(format!(
            "{} index sets but {} maps",
            index_sets.len(),
            maps.len()
        )));
    }
    let n = v.dim();
    let mut used = vec![false; n];
    let mut overlap = false;
    for set in index_sets {
        if set.is_empty() {
            return Err(Error::ArityMismatch("empty index set".into()));
        }
        for &i in set {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            overlap |= used[i];
            used[i] = true;
        }
    }
    for (set, map) in index_sets.iter().zip(maps) {
        if map.arity().is_some_and(|d| d != set.len()) {
            return Err(Error::ArityMismatch(format!(
                "map of arity {:?} applied to {} components",
                map.arity(),
                set.len()
            )));
        }
    }
    if overlap && !is_comonotonic(v) {
        return Err(Error::OverlappingIndexSets);
    }
    let k = v.space().len();
    let tables = index_sets
        .iter()
        .zip(maps)
        .map(|(set, map)| {
            (0..k)
                .map(|a| {
                    let row = v.project_row(set, a);
                    map.eval(&row).cloned().ok_or(Error::UncoveredSupport(row))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    RandomVector::from_values(v.space(), tables)
}

/// Increasing `f_1`, `f_2` with `X = f_1(X - Y)` and `Y = f_2(Y - X)`.
pub fn decompose_cm_pair(
    x: &RandomVariable,
    y: &RandomVariable,
) -> Result<(MonotoneMap, MonotoneMap)> {
    if !is_counter_monotonic_pair(x, y)? {
        return Err(Error::NotCounterMonotonicPair);
    }
    let d = x.sub(y)?;
    let f1 = MonotoneMap::new(
        d.values()
            .iter()
            .zip(x.values())
            .map(|(dv, xv)| (vec![dv.clone()], xv.clone()))
            .collect(),
    )?;
    let f2 = MonotoneMap::new(
        d.values()
            .iter()
            .zip(y.values())
            .map(|(dv, yv)| (vec![-dv], yv.clone()))
            .collect(),
    )?;
    // a value of the difference mapping to two values would leave a duplicate breakpoint
    if f1.breakpoints().windows(2).any(|w| w[0] == w[1])
        || f2.breakpoints().windows(2).any(|w| w[0] == w[1])
    {
        return Err(Error::NotCounterMonotonicPair);
    }
    Ok((f1, f2))
}

/// Increasing `f_i` with `X_i = f_i(S)` for a comonotonic vector.
pub fn decompose_comonotonic(v: &RandomVector) -> Result<Vec<MonotoneMap>> {
    if !is_comonotonic(v) {
        return Err(Error::NotComonotonic);
    }
    let s = v.sum();
    v.components()
        .iter()
        .map(|x| {
            let map = MonotoneMap::new(
                s.values()
                    .iter()
                    .zip(x.values())
                    .map(|(sv, xv)| (vec![sv.clone()], xv.clone()))
                    .collect(),
            )?;
            if map.breakpoints().windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::NotComonotonic);
            }
            Ok(map)
        })
        .collect()
}

//! Fréchet classes: which tuples of marginals admit a pairwise
//! counter-monotonic coupling, a joint mix, or both.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::construct::{build_comonotonic, build_counter_monotonic_pair};
use crate::dependence::cartesian;
use crate::{
    lp, DiscreteDistribution, Error, RandomVariable, RandomVector, Rational, RefinePolicy, Result,
    Space,
};

/// The set of joint laws with marginals `F_1, ..., F_n`, identified by the
/// marginals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrechetClass {
    marginals: Vec<DiscreteDistribution>,
}

impl FrechetClass {
    pub fn new(marginals: Vec<DiscreteDistribution>) -> Result<FrechetClass> {
        if marginals.len() < 2 {
            return Err(Error::TooFewComponents(marginals.len()));
        }
        Ok(FrechetClass { marginals })
    }

    pub fn marginals(&self) -> &[DiscreteDistribution] {
        &self.marginals
    }

    pub fn dim(&self) -> usize {
        self.marginals.len()
    }

    pub fn non_degenerate(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| !self.marginals[i].is_degenerate())
            .collect()
    }

    /// `sum_i P(X_i > ess_inf X_i)`.
    pub fn mass_above_inf(&self) -> Rational {
        self.marginals
            .iter()
            .map(|f| Rational::one() - f.mass_at(f.ess_inf()))
            .sum()
    }

    /// `sum_i P(X_i < ess_sup X_i)`.
    pub fn mass_below_sup(&self) -> Rational {
        self.marginals
            .iter()
            .map(|f| Rational::one() - f.mass_at(f.ess_sup()))
            .sum()
    }

    /// `sum_i E[X_i]`.
    pub fn mean_sum(&self) -> Rational {
        self.marginals.iter().map(DiscreteDistribution::mean).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PcmSupport {
    No,
    /// Supported with mutually exclusive upward deviations.
    Type1,
    /// Supported with mutually exclusive downward deviations.
    Type2,
    /// Both conditions hold. Needs at most two non-degenerate marginals, so
    /// [`supports_pcm`] reports those classes as `Bivariate` instead.
    Both,
    /// At most two non-degenerate marginals: always supported.
    Bivariate,
}

/// Whether some pairwise counter-monotonic vector has these marginals.
pub fn supports_pcm(class: &FrechetClass) -> PcmSupport {
    if class.dim() == 2 || class.non_degenerate().len() <= 2 {
        return PcmSupport::Bivariate;
    }
    let one = Rational::one();
    match (class.mass_above_inf() <= one, class.mass_below_sup() <= one) {
        (true, true) => PcmSupport::Both,
        (true, false) => PcmSupport::Type1,
        (false, true) => PcmSupport::Type2,
        (false, false) => PcmSupport::No,
    }
}

/// Shapes of the classes supporting both counter-monotonicity and joint
/// mixes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BothSupportForm {
    /// `F_i = p_i δ_{a + m_i} + (1 - p_i) δ_{m_i}`, `a != 0`, `p` on the
    /// simplex.
    TwoPoint {
        a: Rational,
        m: Vec<Rational>,
        p: Vec<Rational>,
    },
    /// `F_i(x) = 1 - F_j((c - x)-)`, i.e. `c - X_i ~ F_j`; everything else is
    /// a point mass.
    SymmetricPair {
        i: usize,
        j: usize,
        c: Rational,
    },
    AllDegenerate,
}

pub fn classify_both_support(class: &FrechetClass) -> Option<BothSupportForm> {
    let nd = class.non_degenerate();
    match nd.len() {
        0 => Some(BothSupportForm::AllDegenerate),
        1 => None,
        2 => {
            let (i, j) = (nd[0], nd[1]);
            let (fi, fj) = (&class.marginals[i], &class.marginals[j]);
            // c is pinned by matching the infimum of F_i with the supremum of F_j
            let c = fi.ess_inf() + fj.ess_sup();
            (fi.negated().shifted(&c) == *fj).then_some(BothSupportForm::SymmetricPair { i, j, c })
        }
        _ => two_point_form(class),
    }
}

fn two_point_form(class: &FrechetClass) -> Option<BothSupportForm> {
    let mut gap: Option<Rational> = None;
    for f in class.marginals() {
        match f.len() {
            1 => {}
            2 => {
                let g = f.ess_sup() - f.ess_inf();
                if gap.get_or_insert_with(|| g.clone()) != &g {
                    return None;
                }
            }
            _ => return None,
        }
    }
    let g = gap?;
    let one = Rational::one();
    let upper: Rational = class
        .marginals()
        .iter()
        .filter(|f| !f.is_degenerate())
        .map(|f| f.mass_at(f.ess_sup()))
        .sum();
    let lower: Rational = class
        .marginals()
        .iter()
        .filter(|f| !f.is_degenerate())
        .map(|f| f.mass_at(f.ess_inf()))
        .sum();
    let (a, at_base_inf) = if upper == one {
        (g, true)
    } else if lower == one {
        (-g, false)
    } else {
        return None;
    };
    let (m, p) = class
        .marginals()
        .iter()
        .map(|f| {
            if f.is_degenerate() {
                (f.ess_inf().clone(), Rational::zero())
            } else if at_base_inf {
                (f.ess_inf().clone(), f.mass_at(f.ess_sup()))
            } else {
                (f.ess_sup().clone(), f.mass_at(f.ess_inf()))
            }
        })
        .unzip();
    Some(BothSupportForm::TwoPoint { a, m, p })
}

/// A pairwise counter-monotonic vector with the given marginals, on a
/// refinement of `space`.
///
/// With mutually exclusive upward deviations the events `B_i` are laid
/// side by side in atom order and `X_i` follows the upper tail of `F_i`
/// inside `B_i`; the downward case is the negation of that.
pub fn construct_pcm_with_marginals(
    class: &FrechetClass,
    space: &Arc<Space>,
    policy: RefinePolicy,
) -> Result<RandomVector> {
    match supports_pcm(class) {
        PcmSupport::No => Err(Error::Unsupported),
        PcmSupport::Bivariate => bivariate(class, space, policy),
        PcmSupport::Type1 | PcmSupport::Both => upper_tails(class.marginals(), space, policy),
        PcmSupport::Type2 => {
            let negated: Vec<_> = class.marginals().iter().map(|f| f.negated()).collect();
            Ok(upper_tails(&negated, space, policy)?.negate())
        }
    }
}

fn bivariate(
    class: &FrechetClass,
    space: &Arc<Space>,
    policy: RefinePolicy,
) -> Result<RandomVector> {
    let nd = class.non_degenerate();
    let f = class.marginals();
    let moving: Vec<RandomVariable> = match nd.as_slice() {
        [] => Vec::new(),
        [i] => build_comonotonic(&[f[*i].clone(), f[*i].clone()], space, policy)?
            .into_components()
            .into_iter()
            .take(1)
            .collect(),
        [i, j] => build_counter_monotonic_pair(&f[*i], &f[*j], space, policy)?.into_components(),
        _ => unreachable!("bivariate classes have at most two moving marginals when n > 2"),
    };
    let target = moving
        .first()
        .map_or_else(|| Arc::clone(space), |x| Arc::clone(x.space()));
    let mut moving = moving.into_iter();
    let components = f
        .iter()
        .map(|fi| {
            if fi.is_degenerate() {
                RandomVariable::constant(&target, fi.ess_inf().clone())
            } else {
                moving.next().expect("one variable per moving marginal")
            }
        })
        .collect();
    RandomVector::new(components)
}

fn upper_tails(
    marginals: &[DiscreteDistribution],
    space: &Arc<Space>,
    policy: RefinePolicy,
) -> Result<RandomVector> {
    // block i is (offset[i], offset[i] + tail[i]]
    let base: Vec<Rational> = marginals.iter().map(|f| f.mass_at(f.ess_inf())).collect();
    let mut offset = Vec::with_capacity(marginals.len());
    let mut cuts = Vec::new();
    let mut pos = Rational::zero();
    for (f, b) in marginals.iter().zip(&base) {
        offset.push(pos.clone());
        for c in f.cumulative() {
            if c > *b {
                cuts.push(&pos + (c - b));
            }
        }
        pos += Rational::one() - b;
    }
    cuts.extend(offset.iter().cloned());
    let order: Vec<usize> = (0..space.len()).collect();
    let layout = space.layout(&order, &cuts, policy)?;
    let k = layout.space().len();
    let mut tables: Vec<Vec<Rational>> = marginals
        .iter()
        .map(|f| vec![f.ess_inf().clone(); k])
        .collect();
    for (atom, _, upper) in layout.intervals() {
        let owner = (0..marginals.len()).find(|&i| {
            let end = &offset[i] + (Rational::one() - &base[i]);
            *upper > offset[i] && *upper <= end
        });
        if let Some(i) = owner {
            let level = &base[i] + (upper - &offset[i]);
            tables[i][atom] = marginals[i].quantile(&level).clone();
        }
    }
    RandomVector::from_values(layout.space(), tables)
}

/// Charged grid points with their masses.
pub type JointPmf = Vec<(Vec<Rational>, Rational)>;

/// A joint pmf on the support grid with the class marginals and
/// `sum_i x_i = center` on every charged cell, if one exists.
///
/// `center` defaults to the sum of the means, the only possible value.
/// `budget` caps the number of grid cells.
pub fn joint_mix_coupling(
    class: &FrechetClass,
    center: Option<&Rational>,
    budget: u64,
) -> Result<Option<JointPmf>> {
    let needed = class
        .marginals()
        .iter()
        .try_fold(1u64, |acc, f| acc.checked_mul(f.len() as u64))
        .unwrap_or(u64::MAX);
    if needed > budget {
        return Err(Error::TooLarge { needed, budget });
    }
    let c = center.cloned().unwrap_or_else(|| class.mean_sum());
    if c != class.mean_sum() {
        return Ok(None);
    }
    let supports: Vec<Vec<Rational>> = class
        .marginals()
        .iter()
        .map(|f| f.support().to_vec())
        .collect();
    let cells: Vec<Vec<Rational>> = cartesian(&supports)
        .into_iter()
        .filter(|x| x.iter().sum::<Rational>() == c)
        .collect();
    if cells.is_empty() {
        return Ok(None);
    }
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (i, f) in class.marginals().iter().enumerate() {
        for (s, mass) in f.support().iter().zip(f.mass()) {
            a.push(
                cells
                    .iter()
                    .map(|x| {
                        if x[i] == *s {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect(),
            );
            b.push(mass.clone());
        }
    }
    Ok(lp::feasible_point(&a, &b).map(|p| {
        cells
            .into_iter()
            .zip(p)
            .filter(|(_, m)| !m.is_zero())
            .collect()
    }))
}

pub fn joint_mix_feasible(
    class: &FrechetClass,
    center: Option<&Rational>,
    budget: u64,
) -> Result<bool> {
    Ok(joint_mix_coupling(class, center, budget)?.is_some())
}

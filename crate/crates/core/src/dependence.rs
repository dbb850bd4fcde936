//! Dependence checkers for random vectors on finite spaces.
//!
//! Pair criteria are evaluated over every ordered pair of atoms; since no
//! atom has zero mass, "for almost every pair" is the same as "for every
//! pair". A pair with a degenerate member is both comonotonic and
//! counter-monotonic.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};

use crate::space::same_space;
use crate::{
    DiscreteDistribution, Error, RandomVariable, RandomVector, Rational, Result, DEFAULT_NA_BUDGET,
};

/// `(X(w) - X(w')) (Y(w) - Y(w')) >= 0` for every pair of atoms.
pub fn is_comonotonic_pair(x: &RandomVariable, y: &RandomVariable) -> Result<bool> {
    if !same_space(x.space(), y.space()) {
        return Err(Error::SpaceMismatch);
    }
    Ok(comonotonic_values(x.values(), y.values()))
}

/// Sorted by `(x, y)`, the `y` values must be nondecreasing: inside a run
/// of equal `x` the product vanishes, across runs `y` may not drop.
fn comonotonic_values(x: &[Rational], y: &[Rational]) -> bool {
    let mut idx: Vec<usize> = (0..x.len()).collect();
    idx.sort_by(|&a, &b| x[a].cmp(&x[b]).then_with(|| y[a].cmp(&y[b])));
    idx.windows(2).all(|w| y[w[0]] <= y[w[1]])
}

/// `(X, -Y)` is comonotonic.
pub fn is_counter_monotonic_pair(x: &RandomVariable, y: &RandomVariable) -> Result<bool> {
    is_comonotonic_pair(x, &y.neg())
}

pub fn is_comonotonic(v: &RandomVector) -> bool {
    all_pairs(v, |x, y| comonotonic_values(x.values(), y.values()))
}

/// Every pair of components is counter-monotonic.
pub fn is_pairwise_counter_monotonic(v: &RandomVector) -> bool {
    all_pairs(v, |x, y| comonotonic_values(x.values(), y.neg().values()))
}

fn all_pairs(v: &RandomVector, test: impl Fn(&RandomVariable, &RandomVariable) -> bool) -> bool {
    let c = v.components();
    (0..c.len()).all(|i| (i + 1..c.len()).all(|j| test(&c[i], &c[j])))
}

/// Which mutual-exclusivity pattern a vector follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MutualExclusivityType {
    /// No two components exceed their essential infima on the same atom.
    Type1,
    /// No two components fall below their essential suprema on the same atom.
    Type2,
    Both,
    Neither,
}

pub fn classify_mutual_exclusivity(v: &RandomVector) -> MutualExclusivityType {
    let infs: Vec<Rational> = v.components().iter().map(RandomVariable::ess_inf).collect();
    let sups: Vec<Rational> = v.components().iter().map(RandomVariable::ess_sup).collect();
    let exclusive = |bound: &[Rational], above: bool| {
        (0..v.space().len()).all(|a| {
            v.components()
                .iter()
                .zip(bound)
                .filter(|(x, b)| {
                    if above {
                        x.value(a) > *b
                    } else {
                        x.value(a) < *b
                    }
                })
                .count()
                <= 1
        })
    };
    match (exclusive(&infs, true), exclusive(&sups, false)) {
        (true, true) => MutualExclusivityType::Both,
        (true, false) => MutualExclusivityType::Type1,
        (false, true) => MutualExclusivityType::Type2,
        (false, false) => MutualExclusivityType::Neither,
    }
}

/// Center `c` when the components sum to the constant `c` on every atom.
pub fn is_joint_mix(v: &RandomVector) -> Option<Rational> {
    let s = v.sum();
    if s.is_degenerate() {
        Some(s.value(0).clone())
    } else {
        None
    }
}

/// Disjoint index sets and upper sets whose indicators have positive
/// covariance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaWitness {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    /// Realized points of the first sub-vector lying in the upper set.
    pub upper_first: Vec<Vec<Rational>>,
    pub upper_second: Vec<Vec<Rational>>,
    pub covariance: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaVerdict {
    pub negatively_associated: bool,
    pub witness: Option<NaWitness>,
    /// Number of upper-set pairs whose covariance was evaluated.
    pub pairs_checked: u64,
}

/// Realized points of a sub-vector, with the point index of every atom.
struct SubSupport {
    points: Vec<Vec<Rational>>,
    mass: Vec<Rational>,
    atom_point: Vec<usize>,
    /// Nontrivial upper sets, each as membership flags over `points`.
    upper_sets: Vec<Vec<bool>>,
}

fn dominates(p: &[Rational], q: &[Rational]) -> bool {
    p.iter().zip(q).all(|(a, b)| a >= b)
}

impl SubSupport {
    fn new(v: &RandomVector, indices: &[usize], budget: u64) -> Result<SubSupport> {
        let mut index_of: BTreeMap<Vec<Rational>, usize> = BTreeMap::new();
        let rows: Vec<Vec<Rational>> = (0..v.space().len())
            .map(|a| v.project_row(indices, a))
            .collect();
        for r in &rows {
            let next = index_of.len();
            index_of.entry(r.clone()).or_insert(next);
        }
        let mut points = vec![Vec::new(); index_of.len()];
        for (p, &i) in &index_of {
            points[i] = p.clone();
        }
        let atom_point: Vec<usize> = rows.iter().map(|r| index_of[r]).collect();
        let mut mass = vec![Rational::zero(); points.len()];
        for (a, &p) in atom_point.iter().enumerate() {
            mass[p] += v.space().prob(a);
        }
        let upper_sets = enumerate_upper_sets(&points, budget)?;
        Ok(SubSupport {
            points,
            mass,
            atom_point,
            upper_sets,
        })
    }

    fn prob(&self, set: &[bool]) -> Rational {
        self.mass
            .iter()
            .zip(set)
            .filter(|(_, &inside)| inside)
            .map(|(m, _)| m)
            .sum()
    }

    fn listed(&self, set: &[bool]) -> Vec<Vec<Rational>> {
        let mut out: Vec<Vec<Rational>> = self
            .points
            .iter()
            .zip(set)
            .filter(|(_, &inside)| inside)
            .map(|(p, _)| p.clone())
            .collect();
        out.sort();
        out
    }
}

/// All upper sets of a finite poset under the componentwise order, except
/// the empty set and the whole set.
fn enumerate_upper_sets(points: &[Vec<Rational>], budget: u64) -> Result<Vec<Vec<bool>>> {
    let k = points.len();
    // Lexicographically decreasing order is a linear extension of the
    // reversed componentwise order, so every point comes after all points
    // strictly above it.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| points[b].cmp(&points[a]));
    let above: Vec<Vec<usize>> = order
        .iter()
        .map(|&p| {
            (0..k)
                .filter(|&q| q != p && dominates(&points[q], &points[p]))
                .collect()
        })
        .collect();

    let mut out = Vec::new();
    let mut member = vec![false; k];
    fn walk(
        depth: usize,
        order: &[usize],
        above: &[Vec<usize>],
        member: &mut Vec<bool>,
        out: &mut Vec<Vec<bool>>,
        budget: u64,
    ) -> Result<()> {
        if depth == order.len() {
            let count = member.iter().filter(|&&m| m).count();
            if count != 0 && count != member.len() {
                if out.len() as u64 >= budget {
                    return Err(Error::TooLarge {
                        needed: budget + 1,
                        budget,
                    });
                }
                out.push(member.clone());
            }
            return Ok(());
        }
        let p = order[depth];
        walk(depth + 1, order, above, member, out, budget)?;
        if above[depth].iter().all(|&q| member[q]) {
            member[p] = true;
            walk(depth + 1, order, above, member, out, budget)?;
            member[p] = false;
        }
        Ok(())
    }
    walk(0, &order, &above, &mut member, &mut out, budget)?;
    Ok(out)
}

/// Negative association with the default enumeration budget.
pub fn is_negatively_associated(v: &RandomVector) -> Result<NaVerdict> {
    is_negatively_associated_with_budget(v, DEFAULT_NA_BUDGET)
}

/// Checks `Cov(1_U(X_I), 1_V(X_J)) <= 0` for all disjoint nonempty index
/// sets `I`, `J` and all upper sets `U`, `V` of the realized supports.
///
/// Every nondecreasing function on a finite poset is a constant plus a
/// nonnegative combination of upper-set indicators, so by bilinearity of
/// the covariance these pairs are enough.
pub fn is_negatively_associated_with_budget(v: &RandomVector, budget: u64) -> Result<NaVerdict> {
    let n = v.dim();
    if n > 20 {
        return Err(Error::TooLarge {
            needed: 1 << n,
            budget,
        });
    }
    let full = (1u32 << n) - 1;
    let indices = |mask: u32| -> Vec<usize> { (0..n).filter(|&i| mask & (1 << i) != 0).collect() };

    let mut cache: HashMap<u32, SubSupport> = HashMap::new();
    let mut needed: u64 = 0;
    let mut pairs = Vec::new();
    for first in 1..=full {
        let rest = full & !first;
        // Enumerate submasks of the complement that are larger than `first`
        // so each unordered pair appears once.
        let mut second = rest;
        while second != 0 {
            if second > first {
                pairs.push((first, second));
            }
            second = (second - 1) & rest;
        }
    }
    pairs.sort();
    for &(i, j) in &pairs {
        for mask in [i, j] {
            if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(mask) {
                e.insert(SubSupport::new(v, &indices(mask), budget)?);
            }
        }
        let count = cache[&i].upper_sets.len() as u64 * cache[&j].upper_sets.len() as u64;
        needed = needed.saturating_add(count);
    }
    if needed > budget {
        return Err(Error::TooLarge { needed, budget });
    }

    let probs = v.space().probs();
    let mut checked = 0u64;
    for &(i, j) in &pairs {
        let (si, sj) = (&cache[&i], &cache[&j]);
        let mut joint = vec![vec![Rational::zero(); sj.points.len()]; si.points.len()];
        for (a, p) in probs.iter().enumerate() {
            joint[si.atom_point[a]][sj.atom_point[a]] += p;
        }
        for u in &si.upper_sets {
            let pu = si.prob(u);
            for w in &sj.upper_sets {
                checked += 1;
                let mut both = Rational::zero();
                for (row, _) in joint.iter().zip(u).filter(|(_, &inside)| inside) {
                    for (m, _) in row.iter().zip(w).filter(|(_, &inside)| inside) {
                        both += m;
                    }
                }
                let cov = both - &pu * sj.prob(w);
                if cov.is_positive() {
                    return Ok(NaVerdict {
                        negatively_associated: false,
                        witness: Some(NaWitness {
                            first: indices(i),
                            second: indices(j),
                            upper_first: si.listed(u),
                            upper_second: sj.listed(w),
                            covariance: cov,
                        }),
                        pairs_checked: checked,
                    });
                }
            }
        }
    }
    Ok(NaVerdict {
        negatively_associated: true,
        witness: None,
        pairs_checked: checked,
    })
}

/// Cartesian product of the component supports, in odometer order.
pub fn support_grid(v: &RandomVector) -> Vec<Vec<Rational>> {
    let supports: Vec<Vec<Rational>> = v
        .marginals()
        .into_iter()
        .map(|d| d.support().to_vec())
        .collect();
    cartesian(&supports)
}

pub(crate) fn cartesian(sets: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut out = vec![Vec::new()];
    for set in sets {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                set.iter().map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect();
    }
    out
}

fn check_dim(v: &RandomVector, x: &[Rational]) -> Result<()> {
    if x.len() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: v.dim(),
            got: x.len(),
        });
    }
    Ok(())
}

/// `P(X_1 <= x_1, ..., X_n <= x_n)`.
pub fn joint_cdf(v: &RandomVector, x: &[Rational]) -> Result<Rational> {
    check_dim(v, x)?;
    Ok((0..v.space().len())
        .filter(|&a| v.components().iter().zip(x).all(|(c, t)| c.value(a) <= t))
        .map(|a| v.space().prob(a))
        .sum())
}

/// `P(X_1 > x_1, ..., X_n > x_n)`.
pub fn joint_survival(v: &RandomVector, x: &[Rational]) -> Result<Rational> {
    check_dim(v, x)?;
    Ok((0..v.space().len())
        .filter(|&a| v.components().iter().zip(x).all(|(c, t)| c.value(a) > t))
        .map(|a| v.space().prob(a))
        .sum())
}

fn check_marginal_dim(marginals: &[DiscreteDistribution], x: &[Rational]) -> Result<()> {
    if x.len() != marginals.len() {
        return Err(Error::DimensionMismatch {
            expected: marginals.len(),
            got: x.len(),
        });
    }
    Ok(())
}

/// `(F_1(x_1) + ... + F_n(x_n) - n + 1)_+`.
pub fn frechet_lower_bound(marginals: &[DiscreteDistribution], x: &[Rational]) -> Result<Rational> {
    check_marginal_dim(marginals, x)?;
    let n = Rational::from_integer((marginals.len() as i64).into());
    let s: Rational = marginals.iter().zip(x).map(|(f, t)| f.cdf(t)).sum();
    let w = s - n + Rational::one();
    Ok(if w.is_negative() { Rational::zero() } else { w })
}

/// `min_i F_i(x_i)`.
pub fn frechet_upper_bound(marginals: &[DiscreteDistribution], x: &[Rational]) -> Result<Rational> {
    check_marginal_dim(marginals, x)?;
    Ok(marginals
        .iter()
        .zip(x)
        .map(|(f, t)| f.cdf(t))
        .min()
        .expect("at least one marginal"))
}

/// Joint CDF equals the lower Fréchet bound of its own marginals at every
/// grid point.
pub fn attains_frechet_lower_bound(v: &RandomVector) -> bool {
    let marginals = v.marginals();
    support_grid(v).iter().all(|x| {
        joint_cdf(v, x).expect("grid point has the right dimension")
            == frechet_lower_bound(&marginals, x).expect("grid point has the right dimension")
    })
}

/// Joint CDF equals the upper Fréchet bound at every grid point.
pub fn attains_frechet_upper_bound(v: &RandomVector) -> bool {
    let marginals = v.marginals();
    support_grid(v).iter().all(|x| {
        joint_cdf(v, x).expect("grid point has the right dimension")
            == frechet_upper_bound(&marginals, x).expect("grid point has the right dimension")
    })
}

/// Joint CDF and joint survival function are dominated by the products of
/// their marginal counterparts at every grid point.
pub fn is_negative_orthant_dependent(v: &RandomVector) -> bool {
    let marginals = v.marginals();
    support_grid(v).iter().all(|x| {
        let lower: Rational = marginals.iter().zip(x).map(|(f, t)| f.cdf(t)).product();
        let upper: Rational = marginals
            .iter()
            .zip(x)
            .map(|(f, t)| f.survival(t))
            .product();
        joint_cdf(v, x).expect("grid point has the right dimension") <= lower
            && joint_survival(v, x).expect("grid point has the right dimension") <= upper
    })
}

//! Risk sharing among quantile agents.
//!
//! Agent `i` assesses a position `X_i` by `VaR_{α_i}(X_i)`. For compatible
//! agents (`sum α_i < 1`) an allocation of `S` is Pareto optimal iff
//! `sum_i VaR_{α_i}(X_i) = VaR_{sum α_i}(S)`, and the left side never falls
//! below the right one. Everything here is decided through that identity.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::construct::build_pcm;
use crate::dependence::{
    classify_mutual_exclusivity, is_comonotonic, is_pairwise_counter_monotonic,
    MutualExclusivityType,
};
use crate::risk::var;
use crate::{
    Composition, Error, RandomVariable, RandomVector, Rational, RefinePolicy, Result, Space,
};

/// Levels `α_1, ..., α_n`, each in `(0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantileAgents {
    levels: Vec<Rational>,
}

impl QuantileAgents {
    pub fn new(levels: Vec<Rational>) -> Result<QuantileAgents> {
        if levels.len() < 2 {
            return Err(Error::TooFewComponents(levels.len()));
        }
        if let Some(bad) = levels
            .iter()
            .find(|a| !(**a > Rational::zero() && **a < Rational::one()))
        {
            return Err(Error::LevelOutOfRange(bad.clone()));
        }
        Ok(QuantileAgents { levels })
    }

    pub fn levels(&self) -> &[Rational] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.levels.iter().sum()
    }

    pub fn is_compatible(&self) -> bool {
        self.total() < Rational::one()
    }

    fn require_compatible(&self) -> Result<Rational> {
        let t = self.total();
        if t < Rational::one() {
            Ok(t)
        } else {
            Err(Error::IncompatibleAgents(t))
        }
    }
}

/// Components summing to `total` on every atom.
#[derive(Debug, Clone, PartialEq)]
pub struct Allocation {
    components: RandomVector,
    total: RandomVariable,
}

impl Allocation {
    pub fn new(components: RandomVector, total: RandomVariable) -> Result<Allocation> {
        if !crate::space::same_space(components.space(), total.space()) {
            return Err(Error::SpaceMismatch);
        }
        let sum = components.sum();
        if let Some(a) = (0..total.space().len()).find(|&a| sum.value(a) != total.value(a)) {
            return Err(Error::NotAllocation(a));
        }
        Ok(Allocation { components, total })
    }

    /// Allocation of whatever the components add up to.
    pub fn of(components: RandomVector) -> Allocation {
        let total = components.sum();
        Allocation { components, total }
    }

    pub fn components(&self) -> &RandomVector {
        &self.components
    }

    pub fn total(&self) -> &RandomVariable {
        &self.total
    }

    pub fn dim(&self) -> usize {
        self.components.dim()
    }

    pub fn negate(&self) -> Allocation {
        Allocation {
            components: self.components.negate(),
            total: self.total.neg(),
        }
    }

    /// `sum_i VaR_{α_i}(X_i)`.
    pub fn var_sum(&self, agents: &QuantileAgents) -> Result<Rational> {
        if agents.len() != self.dim() {
            return Err(Error::ArityMismatch(format!(
                "{} agents for {} components",
                agents.len(),
                self.dim()
            )));
        }
        self.components
            .components()
            .iter()
            .zip(agents.levels())
            .map(|(x, a)| var(x, a))
            .sum()
    }
}

/// `VaR_{sum α_i}(S)`, the smallest total any allocation can reach.
pub fn inf_convolution_var(s: &RandomVariable, agents: &QuantileAgents) -> Result<Rational> {
    let t = agents.require_compatible()?;
    var(s, &t)
}

/// A pairwise counter-monotonic Pareto-optimal allocation.
///
/// `X_i = (S - m) 1_{A_i}` for `i < n` and `X_n = (S - m) 1_{A_n} + m`
/// with `m = ess_inf S`. `A_1, ..., A_{n-1}` have probabilities
/// `α_1, ..., α_{n-1}` and are carved from the top of `S` downwards (atoms
/// with equal values in atom order), splitting atoms where needed.
pub fn optimal_allocation(
    s: &RandomVariable,
    agents: &QuantileAgents,
    policy: RefinePolicy,
) -> Result<Allocation> {
    agents.require_compatible()?;
    let n = agents.len();
    let mut order: Vec<usize> = (0..s.space().len()).collect();
    order.sort_by(|&a, &b| s.value(b).cmp(s.value(a)).then(a.cmp(&b)));
    let mut cuts = Vec::with_capacity(n - 1);
    let mut acc = Rational::zero();
    for a in &agents.levels()[..n - 1] {
        acc += a;
        cuts.push(acc.clone());
    }
    let layout = s.space().layout(&order, &cuts, policy)?;
    let k = layout.space().len();
    let mut assignment = vec![n - 1; k];
    for (atom, _, upper) in layout.intervals() {
        if let Some(i) = cuts.iter().position(|c| upper <= c) {
            assignment[atom] = i;
        }
    }
    let s = layout.refinement.lift_variable(s);
    let m = s.ess_inf();
    let composition = Composition::from_assignment(n, assignment)?;
    let mut shifts = vec![Rational::zero(); n];
    shifts[n - 1] = m.clone();
    let components = build_pcm(&s.shift(&-&m), &composition, &shifts)?;
    Allocation::new(components, s)
}

/// Pareto optimality for the given agents; never for incompatible ones.
pub fn verify_pareto(alloc: &Allocation, agents: &QuantileAgents) -> bool {
    let Ok(bound) = inf_convolution_var(alloc.total(), agents) else {
        return false;
    };
    alloc.var_sum(agents).is_ok_and(|v| v == bound)
}

/// `sum_i VaR_{α_i}(X_i) >= VaR_{sum α_i}(S)`.
pub fn lower_bound_check(alloc: &Allocation, agents: &QuantileAgents) -> Result<bool> {
    let bound = inf_convolution_var(alloc.total(), agents)?;
    Ok(alloc.var_sum(agents)? >= bound)
}

/// Levels for which a pairwise counter-monotonic allocation with
/// mutually exclusive upward deviations is Pareto optimal.
///
/// After shifting every `X_i` to `ess_inf X_i = 0`, let `B = {S = ess_inf S}`
/// and `A = ∪ {X_i > 0}`. If `P(B ∩ A) = 0`, `α_i = P(X_i > 0) + P(B)/(2n)`.
/// Otherwise `j` is the first index with `P(B ∩ {X_j > 0}) > 0`,
/// `ε = P(B ∩ {X_j > 0})/(2n)`, `α_i = P(X_i > 0) + ε` for `i != j` and
/// `α_j = P({X_j > 0} \ B) + ε`.
pub fn levels_for_allocation(alloc: &Allocation) -> Result<QuantileAgents> {
    let v = alloc.components();
    let nd = v.non_degenerate_count();
    if nd < 3 {
        return Err(Error::TooFewNonDegenerate(nd));
    }
    if !is_pairwise_counter_monotonic(v)
        || classify_mutual_exclusivity(v) != MutualExclusivityType::Type1
    {
        return Err(Error::NotPcmType1);
    }
    let space = v.space();
    let n = v.dim();
    let nn = Rational::from_integer(n.into());
    let k = space.len();
    let pos: Vec<Vec<bool>> = v
        .components()
        .iter()
        .map(|x| {
            let m = x.ess_inf();
            x.values().iter().map(|y| *y > m).collect()
        })
        .collect();
    // the normalized total is the original one shifted by a constant
    let s = alloc.total();
    let s_min = s.ess_inf();
    let in_b: Vec<bool> = s.values().iter().map(|y| *y == s_min).collect();
    let p_b = space.prob_of((0..k).filter(|&a| in_b[a]));
    if p_b.is_zero() {
        return Err(Error::NoMassAtEssInf);
    }
    let p_pos = |i: usize| space.prob_of((0..k).filter(|&a| pos[i][a]));
    let p_b_pos = |i: usize| space.prob_of((0..k).filter(|&a| pos[i][a] && in_b[a]));

    let levels = match (0..n).find(|&j| !p_b_pos(j).is_zero()) {
        None => {
            let bump = &p_b / (Rational::from_integer(2.into()) * &nn);
            (0..n).map(|i| p_pos(i) + &bump).collect()
        }
        Some(j) => {
            let hit = p_b_pos(j);
            let eps = &hit / (Rational::from_integer(2.into()) * &nn);
            (0..n)
                .map(|i| {
                    if i == j {
                        p_pos(i) - &hit + &eps
                    } else {
                        p_pos(i) + &eps
                    }
                })
                .collect()
        }
    };
    QuantileAgents::new(levels)
}

/// Levels for the mirrored problem: the negated allocation, which has
/// mutually exclusive upward deviations, is Pareto optimal for them.
pub fn levels_for_negated_allocation(alloc: &Allocation) -> Result<QuantileAgents> {
    levels_for_allocation(&alloc.negate())
}

/// `sum_i VaR_{α_i}(X_i) - VaR_{sum α_i}(S)` for a comonotonic allocation.
///
/// Never negative, and at least `VaR_β(S) - VaR_{sum α_i}(S)` with
/// `β = max α_i`.
pub fn comonotonic_gap(alloc: &Allocation, agents: &QuantileAgents) -> Result<Rational> {
    if !is_comonotonic(alloc.components()) {
        return Err(Error::NotComonotonic);
    }
    let bound = inf_convolution_var(alloc.total(), agents)?;
    Ok(alloc.var_sum(agents)? - bound)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuctionOutcome {
    /// `α` times the probability that somebody receives the whole good,
    /// maximized.
    pub value: Rational,
    pub maximizers: Vec<RandomVector>,
    /// Every maximizer is a vector of indicators of a partition.
    pub all_indicator: bool,
    pub candidates: u64,
}

/// Brute force over every allocation of the good `S = 1` with values in
/// `grid`: maximize `sum_i E[α 1{X_i >= 1}]` subject to `X_i >= 0`.
///
/// `budget` caps the number of allocations enumerated.
pub fn auction_optimum(
    n: usize,
    alpha: &Rational,
    space: &Arc<Space>,
    grid: &[Rational],
    budget: u64,
) -> Result<AuctionOutcome> {
    if n < 2 {
        return Err(Error::TooFewComponents(n));
    }
    if !(*alpha > Rational::zero()) {
        return Err(Error::ParameterOutOfRange(format!(
            "alpha = {alpha} must be positive"
        )));
    }
    let one = Rational::one();
    let mut grid = grid.to_vec();
    grid.sort();
    grid.dedup();
    if grid.iter().any(|g| *g < Rational::zero() || *g > one) {
        return Err(Error::InvalidGrid("values must lie in [0, 1]".into()));
    }
    if grid.first() != Some(&Rational::zero()) || grid.last() != Some(&one) {
        return Err(Error::InvalidGrid("grid must contain 0 and 1".into()));
    }

    let per_atom = split_one(n, &grid);
    let k = space.len();
    let candidates = (0..k)
        .try_fold(1u64, |acc, _| acc.checked_mul(per_atom.len() as u64))
        .unwrap_or(u64::MAX);
    if candidates > budget {
        return Err(Error::TooLarge {
            needed: candidates,
            budget,
        });
    }

    let mut best: Option<Rational> = None;
    let mut maximizers: Vec<Vec<usize>> = Vec::new();
    let mut choice = vec![0usize; k];
    loop {
        let value: Rational = choice
            .iter()
            .enumerate()
            .map(|(a, &c)| {
                let winners = per_atom[c].iter().filter(|x| **x >= one).count();
                space.prob(a) * alpha * Rational::from_integer(winners.into())
            })
            .sum();
        match best.as_ref().map(|b| value.cmp(b)) {
            Some(std::cmp::Ordering::Less) => {}
            Some(std::cmp::Ordering::Equal) => maximizers.push(choice.clone()),
            _ => {
                best = Some(value);
                maximizers = vec![choice.clone()];
            }
        }
        // odometer over per-atom choices
        let Some(a) = (0..k).find(|&a| choice[a] + 1 < per_atom.len()) else {
            break;
        };
        choice[a] += 1;
        for c in &mut choice[..a] {
            *c = 0;
        }
    }

    let maximizers = maximizers
        .into_iter()
        .map(|ch| {
            let tables = (0..n)
                .map(|i| ch.iter().map(|&c| per_atom[c][i].clone()).collect())
                .collect();
            RandomVector::from_values(space, tables)
        })
        .collect::<Result<Vec<_>>>()?;
    let all_indicator = maximizers.iter().all(|v| {
        v.components()
            .iter()
            .all(|x| x.values().iter().all(|y| y.is_zero() || y.is_one()))
    });
    Ok(AuctionOutcome {
        value: best.expect("at least one allocation"),
        maximizers,
        all_indicator,
        candidates,
    })
}

/// Vectors of `n` grid points summing to one, in lexicographic order.
fn split_one(n: usize, grid: &[Rational]) -> Vec<Vec<Rational>> {
    fn go(
        n: usize,
        grid: &[Rational],
        rest: &Rational,
        prefix: &mut Vec<Rational>,
        out: &mut Vec<Vec<Rational>>,
    ) {
        if prefix.len() + 1 == n {
            if grid.contains(rest) {
                prefix.push(rest.clone());
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        for g in grid.iter().filter(|g| *g <= rest) {
            prefix.push(g.clone());
            go(n, grid, &(rest - g), prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, grid, &Rational::one(), &mut Vec::new(), &mut out);
    out
}

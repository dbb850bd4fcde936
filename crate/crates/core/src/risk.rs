//! Value-at-Risk and Expected Shortfall in the small-α-is-deep-tail
//! convention, convex order, and worst/best aggregation of Bernoulli
//! default indicators.
//!
//! `VaR_α(X) = min{x : P(X <= x) >= 1 - α}` and
//! `ES_α(X) = (1/α) ∫_0^α VaR_u(X) du`.

use std::borrow::Cow;

use num_traits::{One, Signed, Zero};

use crate::dependence::cartesian;
use crate::{lp, DiscreteDistribution, Error, RandomVariable, Rational, Result};

/// Anything with a distribution on finitely many points.
pub trait Law {
    fn law(&self) -> Cow<'_, DiscreteDistribution>;
}

impl Law for DiscreteDistribution {
    fn law(&self) -> Cow<'_, DiscreteDistribution> {
        Cow::Borrowed(self)
    }
}

impl Law for RandomVariable {
    fn law(&self) -> Cow<'_, DiscreteDistribution> {
        Cow::Owned(self.distribution())
    }
}

/// A level strictly between 0 and 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarLevel(Rational);

impl VarLevel {
    pub fn new(alpha: Rational) -> Result<VarLevel> {
        if alpha.is_positive() && alpha < Rational::one() {
            Ok(VarLevel(alpha))
        } else {
            Err(Error::LevelOutOfRange(alpha))
        }
    }

    pub fn get(&self) -> &Rational {
        &self.0
    }
}

pub fn var<L: Law + ?Sized>(x: &L, alpha: &Rational) -> Result<Rational> {
    let level = VarLevel::new(alpha.clone())?;
    Ok(var_at(&x.law(), &level))
}

pub fn var_at(f: &DiscreteDistribution, alpha: &VarLevel) -> Rational {
    f.quantile(&(Rational::one() - alpha.get())).clone()
}

pub fn es<L: Law + ?Sized>(x: &L, alpha: &Rational) -> Result<Rational> {
    let level = VarLevel::new(alpha.clone())?;
    Ok(es_at(&x.law(), &level))
}

/// `VaR_u` equals the `k`-th support point for `1 - u` in
/// `(F(x_{k-1}), F(x_k)]`; the integral is a finite sum.
pub fn es_at(f: &DiscreteDistribution, alpha: &VarLevel) -> Rational {
    let floor = Rational::one() - alpha.get();
    let mut prev = Rational::zero();
    let mut acc = Rational::zero();
    for (x, cum) in f.support().iter().zip(f.cumulative()) {
        let lo = if prev > floor { &prev } else { &floor };
        if cum > *lo {
            acc += x * (&cum - lo);
        }
        prev = cum;
    }
    acc / alpha.get()
}

/// `E[(X - t)_+]`.
pub fn stop_loss(f: &DiscreteDistribution, t: &Rational) -> Rational {
    f.support()
        .iter()
        .zip(f.mass())
        .filter(|(x, _)| *x > t)
        .map(|(x, m)| (x - t) * m)
        .sum()
}

/// `F <=_cx G`: equal means and dominated stop-loss transforms.
///
/// Both transforms are piecewise linear with kinks on the supports, so the
/// union of supports is enough; beyond it both sides are affine with equal
/// slope (or zero).
pub fn convex_order_leq(f: &DiscreteDistribution, g: &DiscreteDistribution) -> bool {
    if f.mean() != g.mean() {
        return false;
    }
    f.support()
        .iter()
        .chain(g.support())
        .all(|t| stop_loss(f, t) <= stop_loss(g, t))
}

/// Dependence structures compared in [`AggregationBoundsReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coupling {
    CounterMonotonic,
    Independent,
    Comonotonic,
}

impl Coupling {
    pub const ALL: [Coupling; 3] = [
        Coupling::CounterMonotonic,
        Coupling::Independent,
        Coupling::Comonotonic,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingRisk {
    pub coupling: Coupling,
    /// Law of the number of defaults.
    pub sum: DiscreteDistribution,
    pub var: Rational,
    pub es: Rational,
}

/// `n` Bernoulli(ε) default indicators evaluated under three couplings.
///
/// `var_worst` is the counter-monotonic VaR, the maximum over all
/// couplings; `es_cm` is the counter-monotonic ES, the minimum over all
/// couplings. `var_best` is the smallest VaR among the three listed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AggregationBoundsReport {
    pub n: usize,
    pub epsilon: Rational,
    pub alpha: Rational,
    pub var_worst: Rational,
    pub var_worst_by: Coupling,
    pub var_best: Rational,
    pub var_best_by: Coupling,
    pub es_cm: Rational,
    pub es_indep: Rational,
    pub es_comono: Rational,
    pub couplings: Vec<CouplingRisk>,
}

/// Law of the number of ones among `n` Bernoulli(ε) under `coupling`.
///
/// The counter-monotonic case needs `n ε <= 1`.
pub fn bernoulli_sum(
    n: usize,
    epsilon: &Rational,
    coupling: Coupling,
) -> Result<DiscreteDistribution> {
    let nn = Rational::from_integer(n.into());
    match coupling {
        Coupling::CounterMonotonic => DiscreteDistribution::bernoulli(&nn * epsilon),
        Coupling::Comonotonic => {
            DiscreteDistribution::two_point(Rational::zero(), nn, epsilon.clone())
        }
        Coupling::Independent => {
            let q = Rational::one() - epsilon;
            let mut coef = Rational::one();
            let mut pairs = Vec::with_capacity(n + 1);
            for k in 0..=n {
                let mass = &coef * pow(epsilon, k) * pow(&q, n - k);
                pairs.push((Rational::from_integer(k.into()), mass));
                coef = coef * Rational::from_integer((n - k).into())
                    / Rational::from_integer((k + 1).into());
            }
            DiscreteDistribution::from_pairs(pairs)
        }
    }
}

fn pow(x: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * x)
}

pub fn bernoulli_aggregation_bounds(
    n: usize,
    epsilon: &Rational,
    alpha: &Rational,
) -> Result<AggregationBoundsReport> {
    if n < 2 {
        return Err(Error::ParameterOutOfRange(format!(
            "n = {n} must be at least 2"
        )));
    }
    let nn = Rational::from_integer(n.into());
    if !epsilon.is_positive() || &nn * epsilon >= Rational::one() {
        return Err(Error::ParameterOutOfRange(format!(
            "epsilon = {epsilon} must lie in (0, 1/{n})"
        )));
    }
    let ratio = alpha / epsilon;
    if !(ratio > &nn / Rational::from_integer(2.into()) && ratio < nn) {
        return Err(Error::ParameterOutOfRange(format!(
            "alpha / epsilon = {ratio} must lie in ({n}/2, {n})"
        )));
    }
    let level = VarLevel::new(alpha.clone())?;
    let couplings = Coupling::ALL
        .iter()
        .map(|&c| {
            let sum = bernoulli_sum(n, epsilon, c)?;
            Ok(CouplingRisk {
                coupling: c,
                var: var_at(&sum, &level),
                es: es_at(&sum, &level),
                sum,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let of = |c: Coupling| &couplings[c as usize];
    let best = couplings
        .iter()
        .min_by(|a, b| a.var.cmp(&b.var))
        .expect("three couplings");
    Ok(AggregationBoundsReport {
        n,
        epsilon: epsilon.clone(),
        alpha: alpha.clone(),
        var_worst: of(Coupling::CounterMonotonic).var.clone(),
        var_worst_by: Coupling::CounterMonotonic,
        var_best: best.var.clone(),
        var_best_by: best.coupling,
        es_cm: of(Coupling::CounterMonotonic).es.clone(),
        es_indep: of(Coupling::Independent).es.clone(),
        es_comono: of(Coupling::Comonotonic).es.clone(),
        couplings,
    })
}

/// Extremes of sum risk over every coupling of the given marginals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingExtremes {
    pub var_worst: Rational,
    pub var_best: Rational,
    pub es_min: Rational,
    pub vertex_count: usize,
}

/// Exhaustive search over the vertices of the coupling polytope.
///
/// `VaR_α(S) >= s` iff `P(S >= s) > α`, and the largest `P(S >= s)` is a
/// linear program, so both VaR extremes sit at vertices. ES is concave
/// under mixing laws, so its minimum does too. `budget` caps the number of
/// candidate bases.
pub fn coupling_extremes(
    marginals: &[DiscreteDistribution],
    alpha: &Rational,
    budget: u64,
) -> Result<CouplingExtremes> {
    let level = VarLevel::new(alpha.clone())?;
    let supports: Vec<Vec<Rational>> = marginals.iter().map(|f| f.support().to_vec()).collect();
    let cells = cartesian(&supports);
    if cells.len() as u64 > budget {
        return Err(Error::TooLarge {
            needed: cells.len() as u64,
            budget,
        });
    }
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (i, f) in marginals.iter().enumerate() {
        for (s, m) in f.support().iter().zip(f.mass()) {
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
            b.push(m.clone());
        }
    }
    let verts = lp::vertices(&a, &b, budget)?;
    let mut out: Option<CouplingExtremes> = None;
    for p in &verts {
        let law = DiscreteDistribution::from_pairs(
            cells
                .iter()
                .zip(p)
                .map(|(x, m)| (x.iter().sum::<Rational>(), m.clone())),
        )?;
        let v = var_at(&law, &level);
        let e = es_at(&law, &level);
        out = Some(match out {
            None => CouplingExtremes {
                var_worst: v.clone(),
                var_best: v,
                es_min: e,
                vertex_count: 1,
            },
            Some(c) => CouplingExtremes {
                var_worst: c.var_worst.max(v.clone()),
                var_best: c.var_best.min(v),
                es_min: c.es_min.min(e),
                vertex_count: c.vertex_count + 1,
            },
        });
    }
    out.ok_or_else(|| Error::InvalidDistribution("coupling polytope is empty".into()))
}

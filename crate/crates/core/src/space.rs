//! Finite probability spaces and the random objects that live on them.
//!
//! A [`Space`] is an ordered list of atoms with strictly positive rational
//! masses summing to one. Random variables are value tables indexed by atom
//! position and hold an [`Arc`] to their space. Atom identifiers are opaque
//! labels; all operations address atoms by position.
//!
//! Events of arbitrary rational probability are obtained by splitting atoms
//! ([`Space::refine`], [`Space::layout`]). A [`Refinement`] remembers which
//! old atom each new atom came from, so existing variables can be lifted onto
//! the finer space without changing their laws.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::{Error, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomId(pub u64);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Space {
    ids: Vec<AtomId>,
    probs: Vec<Rational>,
}

/// Builds a space from a list of atom masses.
pub fn make_space(probs: Vec<Rational>) -> Result<Arc<Space>> {
    Space::new(probs)
}

impl Space {
    pub fn new(probs: Vec<Rational>) -> Result<Arc<Space>> {
        let ids = (0..probs.len() as u64).map(AtomId).collect();
        Self::from_parts(ids, probs)
    }

    fn from_parts(ids: Vec<AtomId>, probs: Vec<Rational>) -> Result<Arc<Space>> {
        if probs.is_empty() {
            return Err(Error::EmptySpace);
        }
        if let Some((index, mass)) = probs.iter().enumerate().find(|(_, p)| !p.is_positive()) {
            return Err(Error::NonPositiveMass {
                index,
                mass: mass.clone(),
            });
        }
        let sum: Rational = probs.iter().sum();
        if !sum.is_one() {
            return Err(Error::MassNotOne { sum });
        }
        Ok(Arc::new(Space { ids, probs }))
    }

    /// `k` atoms of mass `1/k` each.
    pub fn uniform(k: usize) -> Result<Arc<Space>> {
        if k == 0 {
            return Err(Error::EmptySpace);
        }
        let p = Rational::new(1.into(), (k as i64).into());
        Space::new(vec![p; k])
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn prob(&self, atom: usize) -> &Rational {
        &self.probs[atom]
    }

    pub fn ids(&self) -> &[AtomId] {
        &self.ids
    }

    /// Total mass of a set of atom positions.
    pub fn prob_of<I: IntoIterator<Item = usize>>(&self, atoms: I) -> Rational {
        atoms.into_iter().map(|a| &self.probs[a]).sum()
    }

    fn next_id(&self) -> u64 {
        self.ids.iter().map(|id| id.0).max().map_or(0, |m| m + 1)
    }

    /// Splits `atom` into sub-atoms with masses `prob(atom) * weights[k]`.
    ///
    /// The sub-atoms take the place of the original atom in the atom order.
    /// Splitting with `[1]` returns the same space.
    pub fn refine(self: &Arc<Self>, atom: usize, weights: &[Rational]) -> Result<Refinement> {
        if atom >= self.len() {
            return Err(Error::AtomOutOfRange(atom));
        }
        if weights.is_empty() {
            return Err(Error::MassNotOne {
                sum: Rational::zero(),
            });
        }
        if let Some((index, mass)) = weights.iter().enumerate().find(|(_, w)| !w.is_positive()) {
            return Err(Error::NonPositiveMass {
                index,
                mass: mass.clone(),
            });
        }
        let sum: Rational = weights.iter().sum();
        if !sum.is_one() {
            return Err(Error::MassNotOne { sum });
        }
        if weights.len() == 1 {
            return Ok(Refinement::identity(self));
        }
        let mut pieces: Vec<Vec<Rational>> = self.probs.iter().map(|p| vec![p.clone()]).collect();
        pieces[atom] = weights.iter().map(|w| w * &self.probs[atom]).collect();
        self.split(pieces)
    }

    /// Replaces atom `a` by sub-atoms of the masses in `pieces[a]`, in place.
    fn split(self: &Arc<Self>, pieces: Vec<Vec<Rational>>) -> Result<Refinement> {
        let mut fresh = self.next_id();
        let mut ids = Vec::new();
        let mut probs = Vec::new();
        let mut parent = Vec::new();
        for (a, masses) in pieces.into_iter().enumerate() {
            for (k, m) in masses.into_iter().enumerate() {
                if k == 0 {
                    ids.push(self.ids[a]);
                } else {
                    ids.push(AtomId(fresh));
                    fresh += 1;
                }
                probs.push(m);
                parent.push(a);
            }
        }
        let space = Space::from_parts(ids, probs)?;
        Ok(Refinement { space, parent })
    }

    /// Lays the atoms out along `(0, 1]` in the given order, each atom
    /// occupying an interval of its own length, and splits atoms so that
    /// every cut in `cuts` falls on an atom boundary.
    ///
    /// `order` must be a permutation of the atom positions. Cuts outside
    /// `(0, 1)` are ignored.
    pub fn layout(
        self: &Arc<Self>,
        order: &[usize],
        cuts: &[Rational],
        policy: RefinePolicy,
    ) -> Result<RankLayout> {
        let k = self.len();
        let mut seen = vec![false; k];
        if order.len() != k {
            return Err(Error::LengthMismatch {
                expected: k,
                got: order.len(),
            });
        }
        for &a in order {
            if a >= k || seen[a] {
                return Err(Error::AtomOutOfRange(a));
            }
            seen[a] = true;
        }
        let mut cuts: Vec<Rational> = cuts
            .iter()
            .filter(|c| c.is_positive() && **c < Rational::one())
            .cloned()
            .collect();
        cuts.sort();
        cuts.dedup();

        let mut pieces: Vec<Vec<Rational>> = vec![Vec::new(); k];
        let mut pos = Rational::zero();
        let mut next_cut = 0;
        for &a in order {
            let end = &pos + &self.probs[a];
            while next_cut < cuts.len() && cuts[next_cut] <= pos {
                next_cut += 1;
            }
            let mut start = pos.clone();
            while next_cut < cuts.len() && cuts[next_cut] < end {
                if policy == RefinePolicy::Forbid {
                    return Err(Error::NotRepresentable(cuts[next_cut].clone()));
                }
                pieces[a].push(&cuts[next_cut] - &start);
                start = cuts[next_cut].clone();
                next_cut += 1;
            }
            pieces[a].push(&end - &start);
            pos = end;
        }

        let refinement = if pieces.iter().all(|p| p.len() == 1) {
            Refinement::identity(self)
        } else {
            self.split(pieces.clone())?
        };
        let mut first_new = Vec::with_capacity(k);
        let mut idx = 0;
        for p in &pieces {
            first_new.push(idx);
            idx += p.len();
        }
        let mut new_order = Vec::with_capacity(idx);
        let mut upper = Vec::with_capacity(idx);
        let mut acc = Rational::zero();
        for &a in order {
            for (j, m) in pieces[a].iter().enumerate() {
                new_order.push(first_new[a] + j);
                acc += m;
                upper.push(acc.clone());
            }
        }
        Ok(RankLayout {
            refinement,
            order: new_order,
            upper,
        })
    }
}

/// Whether constructions may split atoms to reach exact event probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RefinePolicy {
    #[default]
    Allow,
    Forbid,
}

/// A finer space together with the map from each new atom to the atom of
/// the coarser space it came from.
#[derive(Debug, Clone)]
pub struct Refinement {
    space: Arc<Space>,
    parent: Vec<usize>,
}

impl Refinement {
    pub fn identity(space: &Arc<Space>) -> Refinement {
        Refinement {
            space: Arc::clone(space),
            parent: (0..space.len()).collect(),
        }
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    /// Old atom position for each new atom position.
    pub fn parent(&self) -> &[usize] {
        &self.parent
    }

    pub fn is_identity(&self) -> bool {
        self.parent.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Refinement from the original space straight to the space of `next`,
    /// where `next` refines `self.space()`.
    pub fn then(&self, next: &Refinement) -> Refinement {
        Refinement {
            space: Arc::clone(&next.space),
            parent: next.parent.iter().map(|&p| self.parent[p]).collect(),
        }
    }

    pub fn lift_values<T: Clone>(&self, values: &[T]) -> Vec<T> {
        self.parent.iter().map(|&p| values[p].clone()).collect()
    }

    pub fn lift_variable(&self, x: &RandomVariable) -> RandomVariable {
        RandomVariable {
            space: Arc::clone(&self.space),
            values: self.lift_values(&x.values),
        }
    }

    pub fn lift_vector(&self, v: &RandomVector) -> RandomVector {
        RandomVector {
            components: v.components.iter().map(|x| self.lift_variable(x)).collect(),
        }
    }

    pub fn lift_composition(&self, c: &Composition) -> Composition {
        Composition {
            blocks: c.blocks,
            assignment: self.lift_values(&c.assignment),
        }
    }
}

/// Atoms of a refined space laid out along `(0, 1]`: atom `order[k]`
/// occupies `(upper[k-1], upper[k]]`.
#[derive(Debug, Clone)]
pub struct RankLayout {
    pub refinement: Refinement,
    pub order: Vec<usize>,
    pub upper: Vec<Rational>,
}

impl RankLayout {
    pub fn space(&self) -> &Arc<Space> {
        self.refinement.space()
    }

    /// Iterates `(atom, lower, upper)` in layout order.
    pub fn intervals(&self) -> impl Iterator<Item = (usize, Rational, &Rational)> + '_ {
        self.order.iter().enumerate().map(move |(k, &a)| {
            let lo = if k == 0 {
                Rational::zero()
            } else {
                self.upper[k - 1].clone()
            };
            (a, lo, &self.upper[k])
        })
    }
}

pub(crate) fn same_space(a: &Arc<Space>, b: &Arc<Space>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A rational-valued function on the atoms of a space.
#[derive(Debug, Clone)]
pub struct RandomVariable {
    space: Arc<Space>,
    values: Vec<Rational>,
}

impl PartialEq for RandomVariable {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space) && self.values == other.values
    }
}

impl RandomVariable {
    pub fn new(space: &Arc<Space>, values: Vec<Rational>) -> Result<RandomVariable> {
        if values.len() != space.len() {
            return Err(Error::LengthMismatch {
                expected: space.len(),
                got: values.len(),
            });
        }
        Ok(RandomVariable {
            space: Arc::clone(space),
            values,
        })
    }

    pub fn constant(space: &Arc<Space>, c: Rational) -> RandomVariable {
        RandomVariable {
            space: Arc::clone(space),
            values: vec![c; space.len()],
        }
    }

    pub fn indicator(space: &Arc<Space>, atoms: &[usize]) -> Result<RandomVariable> {
        let mut values = vec![Rational::zero(); space.len()];
        for &a in atoms {
            *values.get_mut(a).ok_or(Error::AtomOutOfRange(a))? = Rational::one();
        }
        Ok(RandomVariable {
            space: Arc::clone(space),
            values,
        })
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, atom: usize) -> &Rational {
        &self.values[atom]
    }

    pub fn ess_inf(&self) -> Rational {
        self.values
            .iter()
            .min()
            .cloned()
            .expect("space is nonempty")
    }

    pub fn ess_sup(&self) -> Rational {
        self.values
            .iter()
            .max()
            .cloned()
            .expect("space is nonempty")
    }

    pub fn is_degenerate(&self) -> bool {
        self.values.iter().all(|v| *v == self.values[0])
    }

    /// Law of the variable: distinct values with their total masses.
    pub fn distribution(&self) -> DiscreteDistribution {
        let mut acc: BTreeMap<&Rational, Rational> = BTreeMap::new();
        for (v, p) in self.values.iter().zip(self.space.probs()) {
            *acc.entry(v).or_insert_with(Rational::zero) += p;
        }
        let (support, mass) = acc.into_iter().map(|(v, m)| (v.clone(), m)).unzip();
        DiscreteDistribution { support, mass }
    }

    /// Probability of the atoms whose value satisfies `pred`.
    pub fn prob(&self, pred: impl Fn(&Rational) -> bool) -> Rational {
        self.values
            .iter()
            .zip(self.space.probs())
            .filter(|(v, _)| pred(v))
            .map(|(_, p)| p)
            .sum()
    }

    pub fn expectation(&self) -> Rational {
        self.values
            .iter()
            .zip(self.space.probs())
            .map(|(v, p)| v * p)
            .sum()
    }

    pub fn map(&self, f: impl Fn(&Rational) -> Rational) -> RandomVariable {
        RandomVariable {
            space: Arc::clone(&self.space),
            values: self.values.iter().map(f).collect(),
        }
    }

    pub fn neg(&self) -> RandomVariable {
        self.map(|v| -v)
    }

    pub fn shift(&self, c: &Rational) -> RandomVariable {
        self.map(|v| v + c)
    }

    pub fn scale(&self, c: &Rational) -> RandomVariable {
        self.map(|v| v * c)
    }

    fn zip_with(
        &self,
        other: &RandomVariable,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<RandomVariable> {
        if !same_space(&self.space, &other.space) {
            return Err(Error::SpaceMismatch);
        }
        Ok(RandomVariable {
            space: Arc::clone(&self.space),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &RandomVariable) -> Result<RandomVariable> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RandomVariable) -> Result<RandomVariable> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &RandomVariable) -> Result<RandomVariable> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn covariance(&self, other: &RandomVariable) -> Result<Rational> {
        let prod = self.mul(other)?;
        Ok(prod.expectation() - self.expectation() * other.expectation())
    }
}

/// Law of a random variable.
pub fn distribution_of(x: &RandomVariable) -> DiscreteDistribution {
    x.distribution()
}

/// `n >= 2` random variables on one shared space.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomVector {
    components: Vec<RandomVariable>,
}

impl RandomVector {
    pub fn new(components: Vec<RandomVariable>) -> Result<RandomVector> {
        if components.len() < 2 {
            return Err(Error::TooFewComponents(components.len()));
        }
        let space = &components[0].space;
        if components.iter().any(|x| !same_space(space, &x.space)) {
            return Err(Error::SpaceMismatch);
        }
        Ok(RandomVector { components })
    }

    /// Builds a vector from one value table per component.
    pub fn from_values(space: &Arc<Space>, tables: Vec<Vec<Rational>>) -> Result<RandomVector> {
        let components = tables
            .into_iter()
            .map(|t| RandomVariable::new(space, t))
            .collect::<Result<Vec<_>>>()?;
        RandomVector::new(components)
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.components[0].space
    }

    pub fn components(&self) -> &[RandomVariable] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &RandomVariable {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<RandomVariable> {
        self.components
    }

    pub fn sum(&self) -> RandomVariable {
        let mut values = vec![Rational::zero(); self.space().len()];
        for x in &self.components {
            for (acc, v) in values.iter_mut().zip(&x.values) {
                *acc += v;
            }
        }
        RandomVariable {
            space: Arc::clone(self.space()),
            values,
        }
    }

    pub fn negate(&self) -> RandomVector {
        RandomVector {
            components: self.components.iter().map(RandomVariable::neg).collect(),
        }
    }

    pub fn marginals(&self) -> Vec<DiscreteDistribution> {
        self.components
            .iter()
            .map(RandomVariable::distribution)
            .collect()
    }

    /// Realization of the whole vector at one atom.
    pub fn row(&self, atom: usize) -> Vec<Rational> {
        self.components
            .iter()
            .map(|x| x.values[atom].clone())
            .collect()
    }

    /// Realization of the sub-vector `indices` at one atom.
    pub fn project_row(&self, indices: &[usize], atom: usize) -> Vec<Rational> {
        indices
            .iter()
            .map(|&i| self.components[i].values[atom].clone())
            .collect()
    }

    pub fn non_degenerate_count(&self) -> usize {
        self.components
            .iter()
            .filter(|x| !x.is_degenerate())
            .count()
    }
}

/// Ordered partition of the atoms into `n` possibly empty blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composition {
    blocks: usize,
    assignment: Vec<usize>,
}

impl Composition {
    /// `assignment[a]` is the block containing atom `a`.
    pub fn from_assignment(blocks: usize, assignment: Vec<usize>) -> Result<Composition> {
        if let Some(&b) = assignment.iter().find(|&&b| b >= blocks) {
            return Err(Error::InvalidComposition(format!(
                "block {b} out of range for {blocks} blocks"
            )));
        }
        Ok(Composition { blocks, assignment })
    }

    /// Blocks given as atom lists; they must be disjoint and cover all atoms.
    pub fn from_blocks(atom_count: usize, blocks: &[Vec<usize>]) -> Result<Composition> {
        let mut assignment = vec![usize::MAX; atom_count];
        for (b, atoms) in blocks.iter().enumerate() {
            for &a in atoms {
                let slot = assignment.get_mut(a).ok_or(Error::AtomOutOfRange(a))?;
                if *slot != usize::MAX {
                    return Err(Error::InvalidComposition(format!(
                        "atom {a} appears in blocks {} and {b}",
                        *slot
                    )));
                }
                *slot = b;
            }
        }
        if let Some(a) = assignment.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidComposition(format!(
                "atom {a} is in no block"
            )));
        }
        Ok(Composition {
            blocks: blocks.len(),
            assignment,
        })
    }

    pub fn block_count(&self) -> usize {
        self.blocks
    }

    pub fn atom_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn block_of(&self, atom: usize) -> usize {
        self.assignment[atom]
    }

    pub fn block(&self, b: usize) -> Vec<usize> {
        (0..self.assignment.len())
            .filter(|&a| self.assignment[a] == b)
            .collect()
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        (0..self.blocks).map(|b| self.block(b)).collect()
    }
}

/// Finite law on the real line: strictly increasing support points with
/// strictly positive masses summing to one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteDistribution {
    support: Vec<Rational>,
    mass: Vec<Rational>,
}

impl DiscreteDistribution {
    pub fn new(support: Vec<Rational>, mass: Vec<Rational>) -> Result<DiscreteDistribution> {
        if support.len() != mass.len() {
            return Err(Error::LengthMismatch {
                expected: support.len(),
                got: mass.len(),
            });
        }
        if support.is_empty() {
            return Err(Error::InvalidDistribution("empty support".into()));
        }
        if support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidDistribution(
                "support must be strictly increasing".into(),
            ));
        }
        if let Some((index, m)) = mass.iter().enumerate().find(|(_, m)| !m.is_positive()) {
            return Err(Error::NonPositiveMass {
                index,
                mass: m.clone(),
            });
        }
        let sum: Rational = mass.iter().sum();
        if !sum.is_one() {
            return Err(Error::MassNotOne { sum });
        }
        Ok(DiscreteDistribution { support, mass })
    }

    /// Builds a law from unsorted `(point, mass)` pairs, merging repeated
    /// points and dropping zero masses.
    pub fn from_pairs<I>(pairs: I) -> Result<DiscreteDistribution>
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let mut acc: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (x, m) in pairs {
            if m.is_negative() {
                return Err(Error::InvalidDistribution(format!("negative mass {m}")));
            }
            *acc.entry(x).or_insert_with(Rational::zero) += m;
        }
        let (support, mass) = acc.into_iter().filter(|(_, m)| !m.is_zero()).unzip();
        DiscreteDistribution::new(support, mass)
    }

    pub fn point_mass(x: Rational) -> DiscreteDistribution {
        DiscreteDistribution {
            support: vec![x],
            mass: vec![Rational::one()],
        }
    }

    /// `P(X = high) = p`, `P(X = low) = 1 - p`, with `p` in `[0, 1]`.
    pub fn two_point(low: Rational, high: Rational, p: Rational) -> Result<DiscreteDistribution> {
        if p.is_negative() || p > Rational::one() {
            return Err(Error::InvalidDistribution(format!(
                "probability {p} outside [0, 1]"
            )));
        }
        let q = Rational::one() - &p;
        Self::from_pairs([(low, q), (high, p)])
    }

    pub fn bernoulli(p: Rational) -> Result<DiscreteDistribution> {
        Self::two_point(Rational::zero(), Rational::one(), p)
    }

    /// Equal masses on the given (distinct or repeated) points.
    pub fn uniform(points: &[Rational]) -> Result<DiscreteDistribution> {
        if points.is_empty() {
            return Err(Error::InvalidDistribution("empty support".into()));
        }
        let m = Rational::new(1.into(), (points.len() as i64).into());
        Self::from_pairs(points.iter().map(|x| (x.clone(), m.clone())))
    }

    pub fn support(&self) -> &[Rational] {
        &self.support
    }

    pub fn mass(&self) -> &[Rational] {
        &self.mass
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn ess_inf(&self) -> &Rational {
        &self.support[0]
    }

    pub fn ess_sup(&self) -> &Rational {
        self.support.last().expect("support is nonempty")
    }

    pub fn is_degenerate(&self) -> bool {
        self.support.len() == 1
    }

    pub fn mass_at(&self, x: &Rational) -> Rational {
        match self.support.binary_search(x) {
            Ok(i) => self.mass[i].clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// `P(X <= x)`.
    pub fn cdf(&self, x: &Rational) -> Rational {
        self.support
            .iter()
            .zip(&self.mass)
            .take_while(|(s, _)| *s <= x)
            .map(|(_, m)| m)
            .sum()
    }

    /// `P(X > x)`.
    pub fn survival(&self, x: &Rational) -> Rational {
        Rational::one() - self.cdf(x)
    }

    pub fn mean(&self) -> Rational {
        self.support
            .iter()
            .zip(&self.mass)
            .map(|(s, m)| s * m)
            .sum()
    }

    /// Smallest support point `x` with `P(X <= x) >= t`, for `t` in `(0, 1]`.
    pub fn quantile(&self, t: &Rational) -> &Rational {
        let mut acc = Rational::zero();
        for (s, m) in self.support.iter().zip(&self.mass) {
            acc += m;
            if acc >= *t {
                return s;
            }
        }
        self.ess_sup()
    }

    /// Cumulative masses `F(s_1), ..., F(s_k)` at the support points.
    pub fn cumulative(&self) -> Vec<Rational> {
        let mut acc = Rational::zero();
        self.mass
            .iter()
            .map(|m| {
                acc += m;
                acc.clone()
            })
            .collect()
    }

    /// Law of `-X`.
    pub fn negated(&self) -> DiscreteDistribution {
        DiscreteDistribution {
            support: self.support.iter().rev().map(|s| -s).collect(),
            mass: self.mass.iter().rev().cloned().collect(),
        }
    }

    /// Law of `X + c`.
    pub fn shifted(&self, c: &Rational) -> DiscreteDistribution {
        DiscreteDistribution {
            support: self.support.iter().map(|s| s + c).collect(),
            mass: self.mass.clone(),
        }
    }
}

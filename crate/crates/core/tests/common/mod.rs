//! Brute-force oracles and random generators shared by the integration
//! tests. Oracles avoid the library's algorithms on purpose: they work
//! from definitions, atom pair by atom pair or subset by subset.
#![allow(dead_code)]

use std::sync::Arc;

use negdep::{
    rat, Composition, DiscreteDistribution, RandomVariable, RandomVector, Rational, Space,
};
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::Rng;

pub fn r(n: i64) -> Rational {
    rat(n, 1)
}

pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| r(x)).collect()
}

/// Space with `k` atoms of random positive integer weights.
pub fn random_space(rng: &mut StdRng, k: usize) -> Arc<Space> {
    let w: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=4)).collect();
    let total: i64 = w.iter().sum();
    Space::new(w.iter().map(|&x| rat(x, total)).collect()).unwrap()
}

pub fn random_values(rng: &mut StdRng, k: usize, lo: i64, hi: i64) -> Vec<Rational> {
    (0..k).map(|_| r(rng.gen_range(lo..=hi))).collect()
}

/// `(Z, composition, shifts)` with `Z` of one sign and, when `all_moving`,
/// every component non-degenerate.
pub fn random_pcm_parts(
    rng: &mut StdRng,
    max_atoms: usize,
    all_moving: bool,
) -> (RandomVariable, Composition, Vec<Rational>) {
    let n = rng.gen_range(3..=5.min(max_atoms - 1));
    let k = rng.gen_range(n + 1..=max_atoms);
    let space = random_space(rng, k);
    let mut assignment: Vec<usize> = (0..k).map(|_| rng.gen_range(0..n)).collect();
    let mut z: Vec<i64> = (0..k).map(|_| rng.gen_range(0..=3)).collect();
    if all_moving {
        // the first n atoms pin one moving atom per block, atom n is idle
        for (i, slot) in assignment.iter_mut().enumerate().take(n) {
            *slot = i;
            z[i] = rng.gen_range(1..=3);
        }
        z[n] = 0;
    }
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let z = RandomVariable::new(&space, z.iter().map(|&x| r(sign * x)).collect()).unwrap();
    let comp = Composition::from_assignment(n, assignment).unwrap();
    let shifts = random_values(rng, n, -3, 3);
    (z, comp, shifts)
}

/// Product criterion over every ordered pair of atoms.
pub fn comonotone_by_pairs(x: &[Rational], y: &[Rational]) -> bool {
    (0..x.len()).all(|a| {
        (0..x.len()).all(|b| {
            let d = (&x[a] - &x[b]) * (&y[a] - &y[b]);
            d >= Rational::zero()
        })
    })
}

pub fn pcm_by_pairs(v: &RandomVector) -> bool {
    let n = v.dim();
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let y: Vec<Rational> = v.component(j).values().iter().map(|t| -t).collect();
            comonotone_by_pairs(v.component(i).values(), &y)
        })
    })
}

pub fn cov(space: &Space, x: &[Rational], y: &[Rational]) -> Rational {
    let e = |f: &dyn Fn(usize) -> Rational| -> Rational {
        (0..space.len()).map(|a| space.prob(a) * f(a)).sum()
    };
    let ex = e(&|a| x[a].clone());
    let ey = e(&|a| y[a].clone());
    let exy = e(&|a| &x[a] * &y[a]);
    exy - ex * ey
}

/// Distinct realized rows of the sub-vector `indices`, sorted.
pub fn realized(v: &RandomVector, indices: &[usize]) -> Vec<Vec<Rational>> {
    let mut pts: Vec<Vec<Rational>> = (0..v.space().len())
        .map(|a| v.project_row(indices, a))
        .collect();
    pts.sort();
    pts.dedup();
    pts
}

fn leq(p: &[Rational], q: &[Rational]) -> bool {
    p.iter().zip(q).all(|(a, b)| a <= b)
}

/// Random nondecreasing function on `points`: a nonnegative combination of
/// orthant indicators plus a nonnegative linear part.
pub fn random_monotone(rng: &mut StdRng, points: &[Vec<Rational>]) -> Vec<Rational> {
    let d = points[0].len();
    let lin: Vec<Rational> = (0..d).map(|_| r(rng.gen_range(0..=2))).collect();
    let steps: Vec<(usize, Rational)> = (0..rng.gen_range(0..=3))
        .map(|_| (rng.gen_range(0..points.len()), r(rng.gen_range(1..=5))))
        .collect();
    points
        .iter()
        .map(|p| {
            let mut v: Rational = p.iter().zip(&lin).map(|(a, b)| a * b).sum();
            for (t, w) in &steps {
                if leq(&points[*t], p) {
                    v += w;
                }
            }
            v
        })
        .collect()
}

/// Evaluates a table from [`random_monotone`] on every atom.
pub fn apply_table(
    v: &RandomVector,
    indices: &[usize],
    points: &[Vec<Rational>],
    table: &[Rational],
) -> Vec<Rational> {
    (0..v.space().len())
        .map(|a| {
            let row = v.project_row(indices, a);
            let k = points.iter().position(|p| *p == row).unwrap();
            table[k].clone()
        })
        .collect()
}

/// Negative association by listing every subset of the realized points and
/// keeping the upper sets. Exponential; for tiny supports only.
pub fn na_by_subsets(v: &RandomVector) -> bool {
    let n = v.dim();
    let space = v.space();
    for mask_i in 1u32..(1 << n) {
        for mask_j in 1u32..(1 << n) {
            if mask_i & mask_j != 0 || mask_i > mask_j {
                continue;
            }
            let i: Vec<usize> = (0..n).filter(|b| mask_i >> b & 1 == 1).collect();
            let j: Vec<usize> = (0..n).filter(|b| mask_j >> b & 1 == 1).collect();
            let (pi, pj) = (realized(v, &i), realized(v, &j));
            assert!(
                pi.len() <= 12 && pj.len() <= 12,
                "support too large for the subset oracle"
            );
            let ups = |pts: &Vec<Vec<Rational>>| -> Vec<Vec<bool>> {
                (0u32..(1 << pts.len()))
                    .map(|m| {
                        (0..pts.len())
                            .map(|b| m >> b & 1 == 1)
                            .collect::<Vec<bool>>()
                    })
                    .filter(|s| {
                        (0..pts.len()).all(|a| {
                            !s[a] || (0..pts.len()).all(|b| !leq(&pts[a], &pts[b]) || s[b])
                        })
                    })
                    .collect()
            };
            for su in ups(&pi) {
                let fi: Vec<Rational> = (0..space.len())
                    .map(|a| {
                        let k = pi.iter().position(|p| *p == v.project_row(&i, a)).unwrap();
                        if su[k] {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect();
                for sv in ups(&pj) {
                    let gj: Vec<Rational> = (0..space.len())
                        .map(|a| {
                            let k = pj.iter().position(|p| *p == v.project_row(&j, a)).unwrap();
                            if sv[k] {
                                Rational::one()
                            } else {
                                Rational::zero()
                            }
                        })
                        .collect();
                    if cov(space, &fi, &gj) > Rational::zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `P(X_1 <= x_1, ..., X_n <= x_n)` by summing atoms.
pub fn cdf_by_atoms(v: &RandomVector, x: &[Rational]) -> Rational {
    (0..v.space().len())
        .filter(|&a| (0..v.dim()).all(|i| v.component(i).value(a) <= &x[i]))
        .map(|a| v.space().prob(a).clone())
        .sum()
}

/// `(sum_i F_i(x_i) - n + 1)_+` with each `F_i` summed from the marginal.
pub fn lower_bound_by_marginals(ms: &[DiscreteDistribution], x: &[Rational]) -> Rational {
    let mut s = Rational::zero();
    for (f, xi) in ms.iter().zip(x) {
        s += f
            .support()
            .iter()
            .zip(f.mass())
            .filter(|(p, _)| *p <= xi)
            .map(|(_, m)| m.clone())
            .sum::<Rational>();
    }
    let v = s - r(ms.len() as i64) + Rational::one();
    if v > Rational::zero() {
        v
    } else {
        Rational::zero()
    }
}

pub fn grid_points(ms: &[DiscreteDistribution]) -> Vec<Vec<Rational>> {
    let mut out = vec![Vec::new()];
    for f in ms {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Rational>| {
                f.support().iter().map(move |s| {
                    let mut q = p.clone();
                    q.push(s.clone());
                    q
                })
            })
            .collect();
    }
    out
}

/// `VaR_α` from the definition: smallest value whose lower mass reaches
/// `1 - α`, scanning values of a variable.
pub fn var_by_scan(space: &Space, x: &[Rational], alpha: &Rational) -> Rational {
    let mut vals = x.to_vec();
    vals.sort();
    vals.dedup();
    let target = Rational::one() - alpha;
    vals.into_iter()
        .find(|t| {
            (0..space.len())
                .filter(|&a| x[a] <= *t)
                .map(|a| space.prob(a).clone())
                .sum::<Rational>()
                >= target
        })
        .unwrap()
}

/// `ES_α` as the average of the top `α` of the mass, atoms sorted by value
/// descending.
pub fn es_by_top_mass(support: &[Rational], mass: &[Rational], alpha: &Rational) -> Rational {
    let mut idx: Vec<usize> = (0..support.len()).collect();
    idx.sort_by(|&a, &b| support[b].cmp(&support[a]));
    let mut left = alpha.clone();
    let mut acc = Rational::zero();
    for k in idx {
        if left <= Rational::zero() {
            break;
        }
        let take = if mass[k] < left {
            mass[k].clone()
        } else {
            left.clone()
        };
        acc += &support[k] * &take;
        left -= take;
    }
    acc / alpha
}

/// Laws on `{0, ..., n}` with mean `mu` supported on at most two points:
/// the extreme points of all such laws.
pub fn two_point_laws(n: i64, mu: &Rational) -> Vec<(Vec<Rational>, Vec<Rational>)> {
    let mut out = Vec::new();
    for j in 0..=n {
        for k in j..=n {
            let (a, b) = (r(j), r(k));
            if j == k {
                if a == *mu {
                    out.push((vec![a], vec![Rational::one()]));
                }
                continue;
            }
            if a <= *mu && *mu <= b {
                let pk = (mu - &a) / (&b - &a);
                let pj = Rational::one() - &pk;
                out.push((vec![a, b], vec![pj, pk]));
            }
        }
    }
    out
}

/// Random level in `(0, 1)` with denominator `den`.
pub fn random_level(rng: &mut StdRng, den: i64, max_num: i64) -> Rational {
    rat(rng.gen_range(1..=max_num), den)
}

/// `VaR_α` of a law listed with ascending support.
pub fn var_of_law(support: &[Rational], mass: &[Rational], alpha: &Rational) -> Rational {
    let target = Rational::one() - alpha;
    let mut acc = Rational::zero();
    for (x, m) in support.iter().zip(mass) {
        acc += m;
        if acc >= target {
            return x.clone();
        }
    }
    unreachable!("masses sum to one")
}

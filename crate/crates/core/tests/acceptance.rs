//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Random instances come from fixed seeds, so every run checks the same
//! cases.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use negdep::construct::{apply_increasing_transforms, build_pcm, decompose_pcm, MonotoneMap};
use negdep::dependence::{
    is_joint_mix, is_negatively_associated, is_pairwise_counter_monotonic, joint_cdf,
};
use negdep::frechet::{
    classify_both_support, construct_pcm_with_marginals, joint_mix_coupling, supports_pcm,
    FrechetClass, PcmSupport,
};
use negdep::risk::{bernoulli_aggregation_bounds, coupling_extremes, var, Coupling};
use negdep::sharing::{
    auction_optimum, inf_convolution_var, levels_for_allocation, lower_bound_check,
    optimal_allocation, verify_pareto, Allocation, QuantileAgents,
};
use negdep::{
    rat, DiscreteDistribution, RandomVariable, RandomVector, Rational, RefinePolicy, Space,
    DEFAULT_CELL_BUDGET,
};
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Name, time limit, body.
type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "credit aggregation worst-case VaR",
            Some(Duration::from_secs(1)),
            c1_var_worst,
        ),
        (
            "credit aggregation best-case ES",
            Some(Duration::from_secs(1)),
            c2_es_best,
        ),
        ("representation roundtrip", None, c3_roundtrip),
        (
            "invariance under increasing transforms",
            None,
            c4_invariance,
        ),
        ("negative association", None, c5_na),
        (
            "Fréchet classification sweep",
            Some(Duration::from_secs(30)),
            c6_frechet,
        ),
        ("risk sharing optimality", None, c7_sharing),
        ("level recovery", None, c8_levels),
        ("universal lower bound", None, c9_lower_bound),
        (
            "auction maximizers",
            Some(Duration::from_secs(10)),
            c10_auction,
        ),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut out = run();
        let took = start.elapsed();
        if let Some(limit) = limit {
            if took > *limit {
                out.pass = false;
                out.detail += &format!("; exceeded {} ms", limit.as_millis());
            }
        }
        if !out.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} [{}] {}: {} ({} ms)",
            i + 1,
            if out.pass { "PASS" } else { "FAIL" },
            name,
            out.detail,
            took.as_millis()
        );
    }
    println!(
        "acceptance: {} passed, {} failed",
        criteria.len() - failed,
        failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

/// Worst VaR and smallest ES of the number of defaults over all laws on
/// `{0..n}` with mean `n ε`; every such law comes from an exchangeable
/// coupling, and the extremes sit on two-point laws.
fn default_count_extremes(n: i64, eps: &Rational, alpha: &Rational) -> (Rational, Rational) {
    let laws = two_point_laws(n, &(r(n) * eps));
    let worst = laws
        .iter()
        .map(|(s, m)| var_of_law(s, m, alpha))
        .max()
        .unwrap();
    let es_min = laws
        .iter()
        .map(|(s, m)| es_by_top_mass(s, m, alpha))
        .min()
        .unwrap();
    (worst, es_min)
}

fn c1_var_worst() -> Outcome {
    let (eps, alpha) = (rat(1, 10), rat(1, 4));
    let rep = bernoulli_aggregation_bounds(3, &eps, &alpha).unwrap();
    let marginals = vec![DiscreteDistribution::bernoulli(eps.clone()).unwrap(); 3];
    let ex = coupling_extremes(&marginals, &alpha, DEFAULT_CELL_BUDGET).unwrap();
    let (oracle_worst, _) = default_count_extremes(3, &eps, &alpha);
    let ok = rep.var_worst == r(1)
        && rep.var_worst_by == Coupling::CounterMonotonic
        && ex.var_worst == r(1)
        && oracle_worst == r(1);
    check(
        ok,
        format!(
            "var_worst = {} by {:?}; polytope vertices ({}) max = {}; two-point oracle max = {}",
            rep.var_worst, rep.var_worst_by, ex.vertex_count, ex.var_worst, oracle_worst
        ),
    )
}

fn c2_es_best() -> Outcome {
    let (eps, alpha) = (rat(1, 10), rat(1, 5));
    let rep = bernoulli_aggregation_bounds(3, &eps, &alpha).unwrap();
    let marginals = vec![DiscreteDistribution::bernoulli(eps.clone()).unwrap(); 3];
    let ex = coupling_extremes(&marginals, &alpha, DEFAULT_CELL_BUDGET).unwrap();
    let (_, oracle_min) = default_count_extremes(3, &eps, &alpha);
    let ok = rep.es_cm == r(1)
        && rep.es_comono == rat(3, 2)
        && rep.es_cm <= rep.es_indep
        && rep.es_indep <= rep.es_comono
        && ex.es_min == rep.es_cm
        && oracle_min == rep.es_cm;
    check(
        ok,
        format!(
            "es cm = {} <= indep = {} <= comono = {}; vertex min = {}; two-point oracle min = {}",
            rep.es_cm, rep.es_indep, rep.es_comono, ex.es_min, oracle_min
        ),
    )
}

fn c3_roundtrip() -> Outcome {
    let mut rng = StdRng::seed_from_u64(3);
    let mut failures = 0;
    let trials = 1000;
    for _ in 0..trials {
        let (z, comp, shifts) = random_pcm_parts(&mut rng, 12, true);
        let v = build_pcm(&z, &comp, &shifts).unwrap();
        let ok = is_pairwise_counter_monotonic(&v)
            && pcm_by_pairs(&v)
            && decompose_pcm(&v)
                .and_then(|rep| rep.rebuild())
                .is_ok_and(|w| w == v);
        if !ok {
            failures += 1;
        }
    }
    check(
        failures == 0,
        format!("{trials} instances, {failures} failures"),
    )
}

fn random_disjoint_sets(rng: &mut StdRng, n: usize) -> Vec<Vec<usize>> {
    loop {
        let label: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=n)).collect();
        let sets: Vec<Vec<usize>> = (0..n)
            .map(|b| (0..n).filter(|&i| label[i] == b).collect::<Vec<_>>())
            .filter(|s| !s.is_empty())
            .collect();
        if sets.len() >= 2 {
            return sets;
        }
    }
}

fn c4_invariance() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    let mut failures = 0;
    let trials = 1000;
    for _ in 0..trials {
        let moving = rng.gen_bool(0.5);
        let (z, comp, shifts) = random_pcm_parts(&mut rng, 10, moving);
        let v = build_pcm(&z, &comp, &shifts).unwrap();
        let sets = random_disjoint_sets(&mut rng, v.dim());
        let maps: Vec<MonotoneMap> = sets
            .iter()
            .map(|s| {
                let pts = realized(&v, s);
                let table = random_monotone(&mut rng, &pts);
                MonotoneMap::new(pts.into_iter().zip(table).collect()).unwrap()
            })
            .collect();
        let ok = apply_increasing_transforms(&v, &sets, &maps)
            .is_ok_and(|w| is_pairwise_counter_monotonic(&w) && pcm_by_pairs(&w));
        if !ok {
            failures += 1;
        }
    }
    check(
        failures == 0,
        format!("{trials} transformed vectors, {failures} failures"),
    )
}

/// Vectors for the reduction check: counter-monotonic ones, independent
/// coordinates and arbitrary tables.
fn random_small_vector(rng: &mut StdRng) -> RandomVector {
    let n = rng.gen_range(2..=4);
    match rng.gen_range(0..3) {
        0 => {
            let moving = rng.gen_bool(0.5);
            let (z, comp, shifts) = random_pcm_parts(rng, 7, moving);
            build_pcm(&z, &comp, &shifts).unwrap()
        }
        1 => {
            let k = rng.gen_range(2..=8);
            let space = random_space(rng, k);
            RandomVector::from_values(
                &space,
                (0..n).map(|_| random_values(rng, k, 0, 2)).collect(),
            )
            .unwrap()
        }
        _ => {
            // product of a three-point and a two-point coordinate
            let space = Space::uniform(6).unwrap();
            let x = ints(&[0, 0, 1, 1, 2, 2]);
            let y = ints(&[0, 1, 0, 1, 0, 1]);
            RandomVector::from_values(&space, vec![x, y]).unwrap()
        }
    }
}

fn c5_na() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let mut not_na = 0;
    let pcm_trials = 200;
    for _ in 0..pcm_trials {
        // n <= 4 components, at most three values each
        let n = rng.gen_range(3..=4);
        let k = rng.gen_range(n + 1..=8);
        let space = random_space(&mut rng, k);
        let assignment: Vec<usize> = (0..k).map(|_| rng.gen_range(0..n)).collect();
        let z: Vec<Rational> = (0..k).map(|_| r(rng.gen_range(0..=2))).collect();
        let z = RandomVariable::new(&space, z).unwrap();
        let comp = negdep::Composition::from_assignment(n, assignment).unwrap();
        let v = build_pcm(&z, &comp, &random_values(&mut rng, n, -2, 2)).unwrap();
        if !is_negatively_associated(&v).is_ok_and(|x| x.negatively_associated) {
            not_na += 1;
        }
    }

    let pair_trials = 10_000;
    let mut disagreements = 0;
    let mut pairs = 0;
    while pairs < pair_trials {
        let v = random_small_vector(&mut rng);
        let verdict = is_negatively_associated(&v).unwrap();
        if let Some(w) = &verdict.witness {
            // the witness indicators are monotone functions with positive covariance
            let ind = |set: &[usize], up: &[Vec<Rational>]| -> Vec<Rational> {
                (0..v.space().len())
                    .map(|a| {
                        if up.contains(&v.project_row(set, a)) {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            };
            let c = cov(
                v.space(),
                &ind(&w.first, &w.upper_first),
                &ind(&w.second, &w.upper_second),
            );
            if !(c > Rational::zero() && c == w.covariance) {
                disagreements += 1;
            }
        }
        for _ in 0..20 {
            let sets = random_disjoint_sets(&mut rng, v.dim());
            let (i, j) = (&sets[0], &sets[1]);
            let (pi, pj) = (realized(&v, i), realized(&v, j));
            let (ti, tj) = (
                random_monotone(&mut rng, &pi),
                random_monotone(&mut rng, &pj),
            );
            let c = cov(
                v.space(),
                &apply_table(&v, i, &pi, &ti),
                &apply_table(&v, j, &pj, &tj),
            );
            if verdict.negatively_associated && c > Rational::zero() {
                disagreements += 1;
            }
            pairs += 1;
        }
    }
    check(
        not_na == 0 && disagreements == 0,
        format!(
            "{pcm_trials} counter-monotonic vectors, {not_na} not NA; {pairs} monotone pairs, {disagreements} disagreements"
        ),
    )
}

fn c6_frechet() -> Outcome {
    let mut families = Vec::new();
    for k in 0..=8 {
        for gap in [1, 2] {
            for m in [0, 1] {
                let d = DiscreteDistribution::two_point(r(m), r(m + gap), rat(k, 8)).unwrap();
                if !families.contains(&d) {
                    families.push(d);
                }
            }
        }
    }
    let one_atom = Space::uniform(1).unwrap();
    let (mut classes, mut supported, mut disagreements) = (0, 0, 0);
    for f1 in &families {
        for f2 in &families {
            for f3 in &families {
                classes += 1;
                let class = FrechetClass::new(vec![f1.clone(), f2.clone(), f3.clone()]).unwrap();
                let form = classify_both_support(&class);
                let pmf = joint_mix_coupling(&class, None, DEFAULT_CELL_BUDGET).unwrap();
                let expect = supports_pcm(&class) != PcmSupport::No && pmf.is_some();
                if form.is_some() != expect {
                    disagreements += 1;
                    continue;
                }
                if form.is_none() {
                    continue;
                }
                supported += 1;
                let v =
                    construct_pcm_with_marginals(&class, &one_atom, RefinePolicy::Allow).unwrap();
                let grid = grid_points(class.marginals());
                let ok = is_joint_mix(&v).is_some()
                    && is_pairwise_counter_monotonic(&v)
                    && v.marginals() == class.marginals()
                    && grid.iter().all(|x| {
                        let lb = lower_bound_by_marginals(class.marginals(), x);
                        joint_cdf(&v, x).unwrap() == lb && cdf_by_atoms(&v, x) == lb
                    });
                // the joint mix found by the oracle has the lower-bound law too
                let pmf = pmf.unwrap();
                let pmf_ok = grid.iter().all(|x| {
                    let c: Rational = pmf
                        .iter()
                        .filter(|(p, _)| p.iter().zip(x).all(|(a, b)| a <= b))
                        .map(|(_, m)| m.clone())
                        .sum();
                    c == lower_bound_by_marginals(class.marginals(), x)
                });
                if !(ok && pmf_ok) {
                    disagreements += 1;
                }
            }
        }
    }
    check(
        disagreements == 0,
        format!("{classes} classes, {supported} support both, {disagreements} disagreements"),
    )
}

fn c7_sharing() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;

    // optimal allocation of the ten-point uniform total
    let ten = Space::uniform(10).unwrap();
    let s = RandomVariable::new(&ten, (1..=10).map(|k| rat(k, 10)).collect()).unwrap();
    let agents = QuantileAgents::new(vec![rat(1, 10); 3]).unwrap();
    let alloc = optimal_allocation(&s, &agents, RefinePolicy::Allow).unwrap();
    let total = alloc.var_sum(&agents).unwrap();
    let inf = inf_convolution_var(&s, &agents).unwrap();
    ok &= total == rat(7, 10) && inf == rat(7, 10);
    ok &= is_pairwise_counter_monotonic(alloc.components()) && verify_pareto(&alloc, &agents);
    notes.push(format!(
        "optimal sum VaR = {total}, inf-convolution = {inf}"
    ));

    // discretized counterexample: S uniform on 100 points, A_i independent of S
    let kk = 100;
    let space = Space::uniform(3 * kk).unwrap();
    let sv: Vec<Rational> = (0..3 * kk)
        .map(|a| rat((a / 3 + 1) as i64, kk as i64))
        .collect();
    let s = RandomVariable::new(&space, sv.clone()).unwrap();
    let parts: Vec<RandomVariable> = (0..3)
        .map(|i| {
            let vals = (0..3 * kk)
                .map(|a| {
                    if a % 3 == i {
                        sv[a].clone()
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            RandomVariable::new(&space, vals).unwrap()
        })
        .collect();
    let ex1 = Allocation::new(RandomVector::new(parts).unwrap(), s).unwrap();
    let mut rng = StdRng::seed_from_u64(7);
    let mut optimal_hits = 0;
    let mut sweeps = 0;
    while sweeps < 50 {
        let a: Vec<Rational> = (0..3).map(|_| random_level(&mut rng, 100, 60)).collect();
        if a.iter().sum::<Rational>() > rat(9, 10) {
            continue;
        }
        sweeps += 1;
        let agents = QuantileAgents::new(a).unwrap();
        if verify_pareto(&ex1, &agents) {
            optimal_hits += 1;
        }
    }
    ok &= optimal_hits == 0;
    notes.push(format!(
        "counterexample optimal for {optimal_hits} of {sweeps} level vectors"
    ));
    // on a finite space the minimum of S carries mass, so some levels do work
    let rescue = levels_for_allocation(&ex1).unwrap();
    notes.push(format!("recovered levels sum to {}", rescue.total()));
    ok &= verify_pareto(&ex1, &rescue);

    // follow-up example: the union of A_1, A_2 is the top two tenths
    let s = RandomVariable::new(&ten, (1..=10).map(|k| rat(k, 10)).collect()).unwrap();
    let pick = |atoms: &[usize]| {
        RandomVariable::new(
            &ten,
            (0..10)
                .map(|a| {
                    if atoms.contains(&a) {
                        s.value(a).clone()
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
        )
        .unwrap()
    };
    let follow = Allocation::new(
        RandomVector::new(vec![
            pick(&[9]),
            pick(&[8]),
            pick(&[0, 1, 2, 3, 4, 5, 6, 7]),
        ])
        .unwrap(),
        s,
    )
    .unwrap();
    let var_n = var(follow.components().component(2), &rat(1, 10)).unwrap();
    ok &= verify_pareto(&follow, &agents) && var_n == Rational::one() - agents.total();
    notes.push(format!("follow-up VaR_n = {var_n}"));
    check(ok, notes.join("; "))
}

fn c8_levels() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let trials = 200;
    let mut failures = 0;
    let mut eps_case = 0;
    for _ in 0..trials {
        let (z, comp, shifts) = random_pcm_parts(&mut rng, 12, true);
        // half the time Z > 0 everywhere, so deviations reach the minimum of S
        let floor = if rng.gen_bool(0.5) {
            Rational::one()
        } else {
            Rational::zero()
        };
        let z = z.map(|x| {
            let a = if *x < Rational::zero() { -x } else { x.clone() };
            if a < floor {
                floor.clone()
            } else {
                a
            }
        });
        let v = build_pcm(&z, &comp, &shifts).unwrap();
        let alloc = Allocation::of(v);
        match levels_for_allocation(&alloc) {
            Ok(a) => {
                if !(a.is_compatible() && verify_pareto(&alloc, &a)) {
                    failures += 1;
                }
                let s_min = alloc.total().ess_inf();
                let hits_min = (0..alloc.total().space().len()).any(|at| {
                    alloc.total().value(at) == &s_min
                        && alloc
                            .components()
                            .components()
                            .iter()
                            .any(|x| x.value(at) > &x.ess_inf())
                });
                eps_case += usize::from(hits_min);
            }
            Err(_) => failures += 1,
        }
    }
    check(
        failures == 0,
        format!(
            "{trials} allocations ({eps_case} with deviations at the minimum), {failures} failures"
        ),
    )
}

fn c9_lower_bound() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let trials = 10_000;
    let mut violations = 0;
    let mut done = 0;
    while done < trials {
        let n = rng.gen_range(2..=4);
        let k = rng.gen_range(1..=8);
        let space = random_space(&mut rng, k);
        let v = RandomVector::from_values(
            &space,
            (0..n).map(|_| random_values(&mut rng, k, -5, 5)).collect(),
        )
        .unwrap();
        let levels: Vec<Rational> = (0..n).map(|_| random_level(&mut rng, 20, 19)).collect();
        if levels.iter().sum::<Rational>() >= Rational::one() {
            continue;
        }
        let agents = QuantileAgents::new(levels).unwrap();
        let alloc = Allocation::of(v);
        let lhs: Rational = alloc
            .components()
            .components()
            .iter()
            .zip(agents.levels())
            .map(|(x, a)| var_by_scan(&space, x.values(), a))
            .sum();
        let rhs = var_by_scan(&space, alloc.total().values(), &agents.total());
        if !(lower_bound_check(&alloc, &agents).unwrap() && lhs >= rhs) {
            violations += 1;
        }
        done += 1;
    }
    check(
        violations == 0,
        format!("{trials} allocations, {violations} violations"),
    )
}

fn c10_auction() -> Outcome {
    let grids: Vec<Vec<Rational>> = vec![
        vec![r(0), r(1)],
        vec![r(0), rat(1, 2), r(1)],
        vec![r(0), rat(1, 3), rat(2, 3), r(1)],
        (0..=4).map(|k| rat(k, 4)).collect(),
    ];
    let spaces = vec![
        Space::uniform(1).unwrap(),
        Space::uniform(2).unwrap(),
        Space::new(vec![rat(1, 2), rat(1, 3), rat(1, 6)]).unwrap(),
    ];
    let alpha = rat(5, 2);
    let (mut cases, mut mismatches) = (0, 0);
    for n in [2usize, 3] {
        for space in &spaces {
            let k = space.len();
            // indicator partitions: one owner per atom
            let mut expected: Vec<Vec<Vec<Rational>>> = Vec::new();
            for code in 0..n.pow(k as u32) {
                let owner: Vec<usize> = (0..k).map(|a| code / n.pow(a as u32) % n).collect();
                expected.push(
                    (0..n)
                        .map(|i| {
                            owner
                                .iter()
                                .map(|&o| if o == i { r(1) } else { r(0) })
                                .collect()
                        })
                        .collect(),
                );
            }
            expected.sort();
            for grid in &grids {
                cases += 1;
                let out = auction_optimum(n, &alpha, space, grid, DEFAULT_CELL_BUDGET).unwrap();
                let mut got: Vec<Vec<Vec<Rational>>> = out
                    .maximizers
                    .iter()
                    .map(|v| v.components().iter().map(|x| x.values().to_vec()).collect())
                    .collect();
                got.sort();
                if !(got == expected && out.value == alpha && out.all_indicator) {
                    mismatches += 1;
                }
            }
        }
    }
    check(
        mismatches == 0,
        format!("{cases} (n, space, grid) cases, {mismatches} mismatches"),
    )
}

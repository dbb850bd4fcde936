//! One handler per scenario kind. Each returns the `result` object of the
//! report; rationals are emitted as `"p/q"` strings.

use negdep::construct::{
    build_comonotonic, build_counter_monotonic_pair, build_pcm, decompose_pcm, PcmRepresentation,
};
use negdep::dependence::{
    attains_frechet_lower_bound, attains_frechet_upper_bound, classify_mutual_exclusivity,
    is_comonotonic, is_joint_mix, is_negative_orthant_dependent,
    is_negatively_associated_with_budget, is_pairwise_counter_monotonic, NaWitness,
};
use negdep::frechet::{
    classify_both_support, construct_pcm_with_marginals, joint_mix_coupling, supports_pcm,
    BothSupportForm, FrechetClass, PcmSupport,
};
use negdep::risk::{bernoulli_aggregation_bounds, coupling_extremes, var};
use negdep::sharing::{
    auction_optimum, comonotonic_gap, inf_convolution_var, levels_for_allocation,
    levels_for_negated_allocation, lower_bound_check, optimal_allocation, verify_pareto,
    Allocation, QuantileAgents,
};
use negdep::{
    format_rational, Composition, DiscreteDistribution, RandomVector, Rational, RefinePolicy, Space,
};
use serde_json::{json, Value};

use crate::scenario::{self as sc, ConstructPayload, Scenario};
use crate::{Budgets, CliError};

type Out = Result<Value, CliError>;

pub fn dispatch(s: &Scenario, b: Budgets) -> Out {
    match s {
        Scenario::Check(p) => check(&sc::vector(&p.vector)?, b),
        Scenario::Construct(p) => construct(p),
        Scenario::Frechet(p) => frechet(p, b),
        Scenario::Aggregate(p) => aggregate(p, b),
        Scenario::Share(p) => share(p),
        Scenario::Auction(p) => auction(p, b),
    }
}

fn q(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn qv(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(q).collect())
}

fn points(v: &[Vec<Rational>]) -> Value {
    Value::Array(v.iter().map(|p| qv(p)).collect())
}

fn vector(v: &RandomVector) -> Value {
    serde_json::to_value(sc::vector_doc(v)).expect("vector documents serialize")
}

fn law(f: &DiscreteDistribution) -> Value {
    serde_json::to_value(sc::law_doc(f)).expect("law documents serialize")
}

fn tag<T: std::fmt::Debug>(t: T) -> Value {
    Value::String(format!("{t:?}"))
}

fn witness(w: &NaWitness) -> Value {
    json!({
        "first": w.first,
        "second": w.second,
        "upper_first": points(&w.upper_first),
        "upper_second": points(&w.upper_second),
        "covariance": q(&w.covariance),
    })
}

fn representation(r: &PcmRepresentation) -> Value {
    json!({
        "kind": tag(r.kind),
        "z": qv(r.z.values()),
        "assignment": r.composition.assignment(),
        "shifts": qv(&r.shifts),
        "total_shift": q(&r.total_shift),
    })
}

fn check(v: &RandomVector, b: Budgets) -> Out {
    let pcm = is_pairwise_counter_monotonic(v);
    let na = is_negatively_associated_with_budget(v, b.na_pairs)?;
    let rep = if pcm && v.non_degenerate_count() >= 3 {
        representation(&decompose_pcm(v)?)
    } else {
        Value::Null
    };
    Ok(json!({
        "comonotonic": is_comonotonic(v),
        "pcm": pcm,
        "type": tag(classify_mutual_exclusivity(v)),
        "na": na.negatively_associated,
        "na_pairs_checked": na.pairs_checked,
        "na_witness": na.witness.as_ref().map_or(Value::Null, witness),
        "nod": is_negative_orthant_dependent(v),
        "joint_mix_center": is_joint_mix(v).as_ref().map_or(Value::Null, q),
        "attains_frechet_lower_bound": attains_frechet_lower_bound(v),
        "attains_frechet_upper_bound": attains_frechet_upper_bound(v),
        "representation": rep,
    }))
}

fn start_space(probs: &Option<Vec<sc::Q>>) -> Result<std::sync::Arc<Space>, CliError> {
    match probs {
        Some(p) => sc::space(p),
        None => Ok(Space::uniform(1)?),
    }
}

fn construct(p: &ConstructPayload) -> Out {
    match p {
        ConstructPayload::BuildPcm {
            space,
            z,
            assignment,
            shifts,
        } => {
            let s = sc::space(space)?;
            let z = sc::variable(&s, z)?;
            let comp = Composition::from_assignment(shifts.len(), assignment.clone())
                .map_err(|e| CliError::Schema(e.to_string()))?;
            let v = build_pcm(&z, &comp, &sc::rationals(shifts))?;
            Ok(json!({
                "vector": vector(&v),
                "pcm": is_pairwise_counter_monotonic(&v),
                "type": tag(classify_mutual_exclusivity(&v)),
            }))
        }
        ConstructPayload::DecomposePcm { vector: doc } => {
            let v = sc::vector(doc)?;
            let r = decompose_pcm(&v)?;
            let rebuilt = r.rebuild()?;
            Ok(json!({
                "representation": representation(&r),
                "roundtrip": rebuilt == v,
            }))
        }
        ConstructPayload::Comonotonic { marginals, space } => {
            let ms = marginals
                .iter()
                .map(sc::law)
                .collect::<Result<Vec<_>, _>>()?;
            let v = build_comonotonic(&ms, &start_space(space)?, RefinePolicy::Allow)?;
            Ok(json!({
                "vector": vector(&v),
                "comonotonic": is_comonotonic(&v),
                "attains_frechet_upper_bound": attains_frechet_upper_bound(&v),
            }))
        }
        ConstructPayload::CounterMonotonicPair {
            first,
            second,
            space,
        } => {
            let v = build_counter_monotonic_pair(
                &sc::law(first)?,
                &sc::law(second)?,
                &start_space(space)?,
                RefinePolicy::Allow,
            )?;
            Ok(json!({
                "vector": vector(&v),
                "pcm": is_pairwise_counter_monotonic(&v),
                "attains_frechet_lower_bound": attains_frechet_lower_bound(&v),
            }))
        }
    }
}

fn both_form(f: &BothSupportForm) -> Value {
    match f {
        BothSupportForm::TwoPoint { a, m, p } => {
            json!({"form": "TwoPoint", "a": q(a), "m": qv(m), "p": qv(p)})
        }
        BothSupportForm::SymmetricPair { i, j, c } => {
            json!({"form": "SymmetricPair", "i": i, "j": j, "c": q(c)})
        }
        BothSupportForm::AllDegenerate => json!({"form": "AllDegenerate"}),
    }
}

fn frechet(p: &sc::FrechetPayload, b: Budgets) -> Out {
    let ms = p
        .marginals
        .iter()
        .map(sc::law)
        .collect::<Result<Vec<_>, _>>()?;
    let class = FrechetClass::new(ms)?;
    let support = supports_pcm(&class);
    let center = p.center.as_ref().map(|c| c.0.clone());
    let coupling = joint_mix_coupling(&class, center.as_ref(), b.cells)?;
    let built = if support == PcmSupport::No {
        Value::Null
    } else {
        let v = construct_pcm_with_marginals(&class, &Space::uniform(1)?, RefinePolicy::Allow)?;
        json!({
            "vector": vector(&v),
            "joint_mix_center": is_joint_mix(&v).as_ref().map_or(Value::Null, q),
            "attains_frechet_lower_bound": attains_frechet_lower_bound(&v),
        })
    };
    Ok(json!({
        "supports_pcm": tag(support),
        "both_support": classify_both_support(&class).as_ref().map_or(Value::Null, both_form),
        "mean_sum": q(&class.mean_sum()),
        "joint_mix": {
            "center": q(&center.unwrap_or_else(|| class.mean_sum())),
            "feasible": coupling.is_some(),
            "coupling": coupling.map_or(Value::Null, |pmf| {
                Value::Array(pmf.iter().map(|(x, m)| json!({"cell": qv(x), "mass": q(m)})).collect())
            }),
        },
        "pcm_construction": built,
    }))
}

fn aggregate(p: &sc::AggregatePayload, b: Budgets) -> Out {
    let rep = bernoulli_aggregation_bounds(p.n, &p.epsilon.0, &p.alpha.0)?;
    let couplings: Vec<Value> = rep
        .couplings
        .iter()
        .map(|c| {
            json!({
                "coupling": tag(c.coupling),
                "defaults": law(&c.sum),
                "var": q(&c.var),
                "es": q(&c.es),
            })
        })
        .collect();
    let exhaustive = if p.exhaustive {
        let ms = vec![DiscreteDistribution::bernoulli(p.epsilon.0.clone())?; p.n];
        let ex = coupling_extremes(&ms, &p.alpha.0, b.bases)?;
        json!({
            "var_worst": q(&ex.var_worst),
            "var_best": q(&ex.var_best),
            "es_min": q(&ex.es_min),
            "vertices": ex.vertex_count,
        })
    } else {
        Value::Null
    };
    Ok(json!({
        "var_worst": q(&rep.var_worst),
        "var_worst_by": tag(rep.var_worst_by),
        "var_best": q(&rep.var_best),
        "var_best_by": tag(rep.var_best_by),
        "es_counter_monotonic": q(&rep.es_cm),
        "es_independent": q(&rep.es_indep),
        "es_comonotonic": q(&rep.es_comono),
        "couplings": couplings,
        "exhaustive": exhaustive,
    }))
}

fn share(p: &sc::SharePayload) -> Out {
    let s = sc::space(&p.space)?;
    let total = sc::variable(&s, &p.total)?;
    let agents = QuantileAgents::new(sc::rationals(&p.levels))?;
    let bound = inf_convolution_var(&total, &agents)?;
    let (alloc, constructed) = match &p.allocation {
        Some(tables) => {
            let v = sc::vector_on(&s, tables)?;
            (Allocation::new(v, total)?, false)
        }
        None => (
            optimal_allocation(&total, &agents, RefinePolicy::Allow)?,
            true,
        ),
    };
    let vars = alloc
        .components()
        .components()
        .iter()
        .zip(agents.levels())
        .map(|(x, a)| var(x, a))
        .collect::<negdep::Result<Vec<_>>>()?;
    let v = alloc.components();
    // levels under which this allocation is optimal, when it has that shape
    let recovered = levels_for_allocation(&alloc)
        .or_else(|_| levels_for_negated_allocation(&alloc))
        .map_or(Value::Null, |a| qv(a.levels()));
    let gap = if is_comonotonic(v) {
        q(&comonotonic_gap(&alloc, &agents)?)
    } else {
        Value::Null
    };
    Ok(json!({
        "constructed": constructed,
        "allocation": vector(v),
        "total": qv(alloc.total().values()),
        "var_by_agent": qv(&vars),
        "var_sum": q(&alloc.var_sum(&agents)?),
        "inf_convolution": q(&bound),
        "pareto": verify_pareto(&alloc, &agents),
        "lower_bound_holds": lower_bound_check(&alloc, &agents)?,
        "pcm": is_pairwise_counter_monotonic(v),
        "type": tag(classify_mutual_exclusivity(v)),
        "recovered_levels": recovered,
        "comonotonic_gap": gap,
    }))
}

fn auction(p: &sc::AuctionPayload, b: Budgets) -> Out {
    let s = sc::space(&p.space)?;
    let out = auction_optimum(p.n, &p.alpha.0, &s, &sc::rationals(&p.grid), b.auction)?;
    Ok(json!({
        "value": q(&out.value),
        "maximizers": out
            .maximizers
            .iter()
            .map(|v| v.components().iter().map(|x| qv(x.values())).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "all_indicator": out.all_indicator,
        "candidates": out.candidates,
    }))
}

//! Seeded randomized properties of the dimension ledger: soundness
//! against a hidden truth, order independence of the fixpoint, interval
//! monotonicity under added axioms, and exact Euler-characteristic
//! additivity across short exact sequences.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tschirn_core::ledger::{check_consistency, propagate, Claim, LedgerProblem, RuleKind};
use tschirn_core::qpoly::int;

type Triple = [i64; 3];

fn chi(t: Triple) -> i64 {
    t[0] - t[1] + t[2]
}

/// A randomly generated problem whose rules are all true of a hidden
/// assignment of dimension triples.
struct HiddenInstance {
    problem: LedgerProblem,
    truth: Vec<Triple>,
}

fn random_triple(rng: &mut ChaCha8Rng) -> Triple {
    [
        rng.gen_range(0..=5),
        rng.gen_range(0..=5),
        rng.gen_range(0..=5),
    ]
}

/// Builds a problem from base sheaves, split extensions, duals, and
/// sums, together with axioms revealing random components, chi facts,
/// and map ranks valid for split sequences.
fn random_instance(rng: &mut ChaCha8Rng, reveal: f64) -> HiddenInstance {
    let mut problem = LedgerProblem::new();
    let mut truth: Vec<Triple> = Vec::new();
    let declare = |problem: &mut LedgerProblem, truth: &mut Vec<Triple>, t: Triple| {
        let name = format!("S{}", truth.len());
        let idx = problem.declare_sheaf(&name).unwrap();
        truth.push(t);
        idx
    };

    for _ in 0..rng.gen_range(2..=3) {
        let t = random_triple(rng);
        declare(&mut problem, &mut truth, t);
    }

    let mut ses_labels: Vec<(String, usize, usize, usize)> = Vec::new();
    for k in 0..rng.gen_range(1..=3) {
        let a = rng.gen_range(0..truth.len());
        let c = rng.gen_range(0..truth.len());
        let sum = [
            truth[a][0] + truth[c][0],
            truth[a][1] + truth[c][1],
            truth[a][2] + truth[c][2],
        ];
        let b = declare(&mut problem, &mut truth, sum);
        let label = format!("E{k}");
        problem
            .add_rule(
                RuleKind::Ses {
                    label: label.clone(),
                    a,
                    b,
                    c,
                },
                "generated split extension",
            )
            .unwrap();
        ses_labels.push((label, a, b, c));
    }

    if rng.gen_bool(0.7) {
        let left = rng.gen_range(0..truth.len());
        let reversed = [truth[left][2], truth[left][1], truth[left][0]];
        let right = declare(&mut problem, &mut truth, reversed);
        problem
            .add_rule(RuleKind::Serre { left, right }, "generated dual")
            .unwrap();
    }

    if rng.gen_bool(0.7) {
        let p = rng.gen_range(0..truth.len());
        let q = rng.gen_range(0..truth.len());
        let sum = [
            truth[p][0] + truth[q][0],
            truth[p][1] + truth[q][1],
            truth[p][2] + truth[q][2],
        ];
        let total = declare(&mut problem, &mut truth, sum);
        problem
            .add_rule(
                RuleKind::Sum {
                    total,
                    parts: vec![p, q],
                },
                "generated direct sum",
            )
            .unwrap();
    }

    for (label, a, _, c) in &ses_labels {
        if rng.gen_bool(0.5) {
            let term = rng.gen_range(1..=9usize);
            // Ranks of the maps in the long sequence of a split
            // extension: inclusions have full rank, projections hit
            // everything, connecting maps vanish.
            let rank = match term {
                1 => truth[*a][0],
                2 => truth[*c][0],
                4 => truth[*a][1],
                5 => truth[*c][1],
                7 => truth[*a][2],
                8 => truth[*c][2],
                _ => 0,
            };
            problem
                .add_rule(
                    RuleKind::MapRank {
                        label: label.clone(),
                        term,
                        rank,
                    },
                    "generated split rank",
                )
                .unwrap();
        }
    }

    for (idx, t) in truth.iter().enumerate() {
        if rng.gen_bool(0.5) {
            problem
                .add_rule(
                    RuleKind::Chi {
                        sheaf: idx,
                        value: int(chi(*t)),
                    },
                    "generated chi",
                )
                .unwrap();
        }
        let h = [
            rng.gen_bool(reveal).then_some(t[0]),
            rng.gen_bool(reveal).then_some(t[1]),
            rng.gen_bool(reveal).then_some(t[2]),
        ];
        if h.iter().any(Option::is_some) {
            problem
                .add_rule(RuleKind::Axiom { sheaf: idx, h }, "generated reveal")
                .unwrap();
        }
    }

    HiddenInstance { problem, truth }
}

#[test]
fn derived_intervals_always_contain_the_hidden_truth() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1ed6e5);
    for instance in 0..100 {
        let hidden = random_instance(&mut rng, 0.5);
        let report = propagate(&hidden.problem).unwrap();
        assert!(
            report.contradiction.is_none(),
            "instance {instance}: {:?}",
            report.contradiction
        );
        for (idx, truth) in hidden.truth.iter().enumerate() {
            for component in 0..3 {
                assert!(
                    report.sheaves[idx].h[component].contains(truth[component]),
                    "instance {instance}: sheaf {idx} h{component} interval {:?} \
                     lost the truth {}",
                    report.sheaves[idx].h[component],
                    truth[component]
                );
            }
        }
        let claims: Vec<Claim> = hidden
            .truth
            .iter()
            .enumerate()
            .map(|(sheaf, t)| Claim {
                sheaf,
                h: [Some(t[0]), Some(t[1]), Some(t[2])],
            })
            .collect();
        // Claims only pass when propagation forces them, so sparse rule
        // sets legitimately leave some true claims undecided; what must
        // never happen is a true claim being refuted.
        let consistency = check_consistency(&hidden.problem, &claims).unwrap();
        for failure in &consistency.failures {
            assert!(
                failure.description.contains("not forced"),
                "instance {instance}: true claim refuted: {}",
                failure.description
            );
        }
    }
}

/// Rebuilds a problem with its rules added in a different order,
/// keeping every map-rank fact after the sequence that declares its
/// label.
fn reorder(problem: &LedgerProblem, rng: &mut ChaCha8Rng) -> LedgerProblem {
    let mut out = LedgerProblem::new();
    for name in problem.sheaf_names() {
        out.declare_sheaf(name).unwrap();
    }
    let mut front: Vec<usize> = Vec::new();
    let mut back: Vec<usize> = Vec::new();
    for (idx, rule) in problem.rules().iter().enumerate() {
        if matches!(rule.kind, RuleKind::MapRank { .. }) {
            back.push(idx);
        } else {
            front.push(idx);
        }
    }
    front.shuffle(rng);
    back.shuffle(rng);
    for idx in front.into_iter().chain(back) {
        let rule = &problem.rules()[idx];
        out.add_rule(rule.kind.clone(), problem.rule_why(idx)).unwrap();
    }
    out
}

#[test]
fn fixpoint_is_independent_of_rule_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0f1e5);
    for instance in 0..30 {
        let hidden = random_instance(&mut rng, 0.6);
        let baseline = propagate(&hidden.problem).unwrap();
        for _ in 0..3 {
            let shuffled = reorder(&hidden.problem, &mut rng);
            let report = propagate(&shuffled).unwrap();
            for (a, b) in baseline.sheaves.iter().zip(&report.sheaves) {
                assert_eq!(a.name, b.name);
                assert_eq!(a.h, b.h, "instance {instance}: sheaf {}", a.name);
            }
        }
    }
}

#[test]
fn adding_an_axiom_never_widens_an_interval() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x30060);
    for instance in 0..50 {
        let hidden = random_instance(&mut rng, 0.3);
        let before = propagate(&hidden.problem).unwrap();
        let mut extended = hidden.problem.clone();
        let sheaf = rng.gen_range(0..hidden.truth.len());
        let component = rng.gen_range(0..3);
        let mut h = [None; 3];
        h[component] = Some(hidden.truth[sheaf][component]);
        extended
            .add_rule(RuleKind::Axiom { sheaf, h }, "extra reveal")
            .unwrap();
        let after = propagate(&extended).unwrap();
        assert!(after.contradiction.is_none(), "instance {instance}");
        for (a, b) in before.sheaves.iter().zip(&after.sheaves) {
            for c in 0..3 {
                assert!(
                    b.h[c].lo() >= a.h[c].lo(),
                    "instance {instance}: sheaf {} h{c} lower bound widened",
                    a.name
                );
                match (a.h[c].hi(), b.h[c].hi()) {
                    (Some(ha), Some(hb)) => assert!(
                        hb <= ha,
                        "instance {instance}: sheaf {} h{c} upper bound widened",
                        a.name
                    ),
                    (None, _) => {}
                    (Some(_), None) => panic!(
                        "instance {instance}: sheaf {} h{c} became unbounded",
                        a.name
                    ),
                }
            }
        }
    }
}

#[test]
fn chi_additivity_is_exact_across_extensions() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xadd17e);
    for instance in 0..50 {
        let a = random_triple(&mut rng);
        let c = random_triple(&mut rng);
        let offset: i64 = *[-2, -1, 1, 2].choose(&mut rng).unwrap();

        let build = |wrong: bool| {
            let mut problem = LedgerProblem::new();
            let ia = problem.declare_sheaf("A").unwrap();
            let ib = problem.declare_sheaf("B").unwrap();
            let ic = problem.declare_sheaf("C").unwrap();
            problem
                .add_rule(
                    RuleKind::Axiom {
                        sheaf: ia,
                        h: [Some(a[0]), Some(a[1]), Some(a[2])],
                    },
                    "pinned",
                )
                .unwrap();
            problem
                .add_rule(
                    RuleKind::Axiom {
                        sheaf: ic,
                        h: [Some(c[0]), Some(c[1]), Some(c[2])],
                    },
                    "pinned",
                )
                .unwrap();
            problem
                .add_rule(
                    RuleKind::Ses {
                        label: "E".into(),
                        a: ia,
                        b: ib,
                        c: ic,
                    },
                    "extension",
                )
                .unwrap();
            let value = chi(a) + chi(c) + if wrong { offset } else { 0 };
            problem
                .add_rule(
                    RuleKind::Chi {
                        sheaf: ib,
                        value: int(value),
                    },
                    "claimed chi",
                )
                .unwrap();
            problem
        };

        let honest = propagate(&build(false)).unwrap();
        assert!(
            honest.contradiction.is_none(),
            "instance {instance}: true chi rejected"
        );
        let dishonest = propagate(&build(true)).unwrap();
        assert!(
            dishonest.contradiction.is_some(),
            "instance {instance}: chi off by {offset} went unnoticed (a = {a:?}, c = {c:?})"
        );
    }
}

//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::{BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use voracious::{all_words, CoxeterGroup, CoxeterMatrix, GroupElement, Verifier, Wall, Word};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Words that are reduced, found by enumerating words by length and keeping
/// those whose matrix has not been reached by a shorter word.
fn reduced_word_oracle(g: &CoxeterGroup, max_len: usize) -> (HashSet<Word>, usize) {
    let mut seen: HashSet<Vec<voracious::FieldScalar>> = HashSet::new();
    let mut reduced = HashSet::new();
    let mut frontier: Vec<(Word, GroupElement)> = vec![(Word::empty(), g.identity())];
    seen.insert(g.identity().matrix().to_vec());
    reduced.insert(Word::empty());
    for _ in 0..max_len {
        let mut layer_new: HashSet<Vec<voracious::FieldScalar>> = HashSet::new();
        let mut next = Vec::new();
        for (w, e) in &frontier {
            for s in 0..g.rank() {
                let h = g.apply_generator(e, s, voracious::Side::Right);
                let key = h.matrix().to_vec();
                if seen.contains(&key) {
                    continue;
                }
                layer_new.insert(key);
                let mut v = w.0.clone();
                v.push(s);
                reduced.insert(Word(v.clone()));
                next.push((Word(v), h));
            }
        }
        seen.extend(layer_new);
        frontier = next;
    }
    (reduced, seen.len())
}

fn finite_collapse() -> Outcome {
    let groups = [
        ("A2", CoxeterMatrix::dihedral(3), 3),
        ("B2", CoxeterMatrix::dihedral(4), 4),
        ("I2(5)", CoxeterMatrix::dihedral(5), 5),
        ("A3", CoxeterMatrix::a3(), 6),
    ];
    let mut notes = Vec::new();
    for (name, m, longest) in groups {
        let g = CoxeterGroup::new(m);
        let (reduced, elements) = reduced_word_oracle(&g, longest + 1);
        let aut = g
            .build_automaton(longest)
            .map_err(|e| e.to_string())?
            .automaton;
        let words = all_words(g.rank(), longest + 1);
        for v in &words {
            let expected = reduced.contains(v);
            ensure(g.is_voracious(v) == expected, || {
                format!("{name}: membership of {}", g.format_word(v))
            })?;
            ensure(aut.accepts(v) == expected, || {
                format!("{name}: acceptance of {}", g.format_word(v))
            })?;
        }
        for e in g.ball(longest).map_err(|e| e.to_string())? {
            ensure(g.voracious_projection(&e).is_identity(), || {
                format!("{name}: p({}) is not the identity", g.element_name(&e))
            })?;
        }
        if name == "A2" {
            ensure(elements == 6 && reduced.len() == 7, || {
                format!("A2: {elements} elements, {} words", reduced.len())
            })?;
        }
        notes.push(format!(
            "{name}: {elements} elements, {} words",
            reduced.len()
        ));
    }
    Ok(notes.join("; "))
}

fn dinf_gold() -> Outcome {
    let g = CoxeterGroup::new(CoxeterMatrix::dihedral(0));
    let aut = g.build_automaton(10).map_err(|e| e.to_string())?.automaton;
    let state = |walls: &[Wall]| aut.state_index(&walls.iter().cloned().collect());
    let (ws, wt) = (g.simple_wall(0), g.simple_wall(1));
    let empty = state(&[]).ok_or("no empty state")?;
    let qs = state(&[ws]).ok_or("no {W_s} state")?;
    let qt = state(&[wt]).ok_or("no {W_t} state")?;
    ensure(aut.states.len() == 3, || {
        format!("{} states", aut.states.len())
    })?;
    let edges: BTreeSet<(usize, usize, String)> = aut
        .edges
        .iter()
        .map(|e| {
            (
                e.from,
                e.to,
                e.labels
                    .iter()
                    .map(|w| g.format_word(w))
                    .collect::<Vec<_>>()
                    .join(","),
            )
        })
        .collect();
    let expected: BTreeSet<(usize, usize, String)> = [
        (empty, qs, "s".to_string()),
        (empty, qt, "t".to_string()),
        (qt, qs, "s".to_string()),
        (qs, qt, "t".to_string()),
    ]
    .into_iter()
    .collect();
    ensure(aut.edges.len() == 4 && edges == expected, || {
        format!("edges {edges:?}")
    })?;
    let (reduced, _) = reduced_word_oracle(&g, 10);
    let words = all_words(2, 10);
    for v in &words {
        let alternating = v.letters().windows(2).all(|p| p[0] != p[1]);
        ensure(reduced.contains(v) == alternating, || {
            format!("oracle disagrees on {}", g.format_word(v))
        })?;
        ensure(aut.accepts(v) == alternating, || {
            format!("acceptance of {}", g.format_word(v))
        })?;
        ensure(g.is_voracious(v) == alternating, || {
            format!("membership of {}", g.format_word(v))
        })?;
    }
    Ok(format!("3 states, 4 edges, {} words", words.len()))
}

fn triangles() -> [(&'static str, CoxeterGroup); 2] {
    [
        (
            "(3,3,3)",
            CoxeterGroup::new(CoxeterMatrix::triangle(3, 3, 3)),
        ),
        (
            "(3,3,4)",
            CoxeterGroup::new(CoxeterMatrix::triangle(3, 3, 4)),
        ),
    ]
}

const RADIUS: usize = 6;

fn check_result(r: voracious::CheckResult) -> Result<String, String> {
    if r.status == voracious::CheckStatus::Fail {
        Err(format!(
            "{}: {}",
            r.name,
            r.witness.map(|w| w.to_string()).unwrap_or_default()
        ))
    } else {
        Ok(format!("{} cases {}", r.cases, r.detail))
    }
}

fn unique_max() -> Outcome {
    let mut notes = Vec::new();
    for (name, g) in triangles() {
        let v = Verifier::new(&g, RADIUS).map_err(|e| e.to_string())?;
        notes.push(format!(
            "{name}: {}",
            check_result(v.check_unique_max(true))?
        ));
    }
    Ok(notes.join("; "))
}

fn regularity() -> Outcome {
    let mut notes = Vec::new();
    for (name, g) in triangles() {
        let v = Verifier::new(&g, RADIUS).map_err(|e| e.to_string())?;
        let build = g.build_automaton(RADIUS).map_err(|e| e.to_string())?;
        let r = v.check_automaton_agreement(&build.automaton, 6);
        notes.push(format!(
            "{name}: {} states, {} edges, {}",
            build.automaton.states.len(),
            build.automaton.edges.len(),
            check_result(r)?
        ));
    }
    Ok(notes.join("; "))
}

fn fellow_traveller() -> Outcome {
    let mut notes = Vec::new();
    for (name, g) in triangles() {
        let v = Verifier::new(&g, RADIUS).map_err(|e| e.to_string())?;
        let constants = *v.constants_by_radius(2).last().expect("nonempty");
        let (right, left, max) = v.check_fellow_traveller(&constants, 4096, 0);
        check_result(right)?;
        check_result(left)?;
        notes.push(format!(
            "{name}: C={} Q={} N={} right {}<={} left {}<={}",
            constants.c_hat,
            constants.q_hat,
            constants.n_hat,
            max.right_max,
            max.right_bound,
            max.left_max,
            max.left_bound
        ));
    }
    Ok(notes.join("; "))
}

fn small_roots() -> Outcome {
    let groups = [
        ("D_inf", CoxeterMatrix::dihedral(0), Some(2)),
        ("A2", CoxeterMatrix::dihedral(3), Some(3)),
        ("B2", CoxeterMatrix::dihedral(4), Some(4)),
        ("I2(5)", CoxeterMatrix::dihedral(5), None),
        ("A3", CoxeterMatrix::a3(), None),
        ("(3,3,3)", CoxeterMatrix::triangle(3, 3, 3), None),
        ("(3,3,4)", CoxeterMatrix::triangle(3, 3, 4), None),
    ];
    let mut notes = Vec::new();
    for (name, m, expected) in groups {
        let g = CoxeterGroup::new(m);
        let u = g.small_roots().map_err(|e| e.to_string())?;
        let depth = u
            .iter()
            .map(|w| g.wall_distance_from_identity(w) + 1)
            .max()
            .unwrap_or(0);
        // Two extra layers show that no further small roots appear.
        let brute = g
            .small_roots_brute_force(depth + 2)
            .map_err(|e| e.to_string())?;
        ensure(u == brute, || {
            format!("{name}: recursion {} vs ball {}", u.len(), brute.len())
        })?;
        if let Some(n) = expected {
            ensure(u.len() == n, || {
                format!("{name}: |U| = {}, expected {n}", u.len())
            })?;
        }
        notes.push(format!("{name}: {}", u.len()));
    }
    Ok(notes.join("; "))
}

fn symmetry() -> Outcome {
    let groups = [
        ("A2", CoxeterMatrix::dihedral(3)),
        ("D_inf", CoxeterMatrix::dihedral(0)),
        ("(3,3,3)", CoxeterMatrix::triangle(3, 3, 3)),
    ];
    let mut notes = Vec::new();
    for (name, m) in groups {
        let g = CoxeterGroup::new(m);
        let v = Verifier::new(&g, RADIUS).map_err(|e| e.to_string())?;
        let r = v.check_symmetry();
        ensure(r.status == voracious::CheckStatus::Pass, || {
            format!("{name}: {:?} {:?}", r.status, r.witness)
        })?;
        // The swap s <-> t must be among the automorphisms checked.
        let swap: Vec<usize> = (0..g.rank()).map(|i| [1, 0, 2][i]).collect();
        ensure(
            g.coxeter_matrix().diagram_automorphisms().contains(&swap),
            || format!("{name}: no swap"),
        )?;
        notes.push(format!("{name}: {}", check_result(r)?));
    }
    Ok(notes.join("; "))
}

fn sharp_angles() -> Outcome {
    let mut notes = Vec::new();
    for (name, g) in triangles() {
        let v = Verifier::new(&g, RADIUS).map_err(|e| e.to_string())?;
        let r = v.check_sharp_angles(100, 3, 0);
        ensure(r.cases >= 100, || {
            format!("{name}: only {} samples", r.cases)
        })?;
        notes.push(format!("{name}: {}", check_result(r)?));
    }
    Ok(notes.join("; "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 8] = [
        (
            "1 finite groups: language is all reduced words",
            finite_collapse,
            Some(Duration::from_secs(1)),
        ),
        (
            "2 infinite dihedral gold automaton",
            dinf_gold,
            Some(Duration::from_secs(1)),
        ),
        (
            "3 unique largest element of P(g), all orderings",
            unique_max,
            None,
        ),
        ("4 automaton agrees with membership", regularity, None),
        ("5 fellow traveller bounds", fellow_traveller, None),
        ("6 small roots recursion vs ball", small_roots, None),
        ("7 diagram symmetry preserves the language", symmetry, None),
        ("8 sharp-angled separation sampling", sharp_angles, None),
    ];
    let mut failed = 0;
    for (name, f, limit) in criteria {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS [{name}] {detail} ({elapsed:.2?})"),
            Err(why) => {
                failed += 1;
                println!("FAIL [{name}] {why} ({elapsed:.2?})");
            }
        }
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Brute-force oracles for quantities the engine computes by shortcut.

use std::collections::{HashMap, HashSet};

use voracious::{
    all_words, CoxeterGroup, CoxeterMatrix, GroupElement, Side, Wall, WallSet, WallSide, Word,
};

fn groups() -> Vec<(&'static str, CoxeterGroup)> {
    vec![
        ("A2", CoxeterGroup::new(CoxeterMatrix::dihedral(3))),
        ("B2", CoxeterGroup::new(CoxeterMatrix::dihedral(4))),
        ("I2(5)", CoxeterGroup::new(CoxeterMatrix::dihedral(5))),
        ("D_inf", CoxeterGroup::new(CoxeterMatrix::dihedral(0))),
        ("A3", CoxeterGroup::new(CoxeterMatrix::a3())),
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

/// Shortest words per element, by enumerating all words and keeping the
/// first layer at which each matrix shows up.
fn geodesics(g: &CoxeterGroup, radius: usize) -> HashMap<GroupElement, Vec<Word>> {
    let mut first: HashMap<Vec<voracious::FieldScalar>, usize> = HashMap::new();
    let mut out: HashMap<GroupElement, Vec<Word>> = HashMap::new();
    for w in all_words(g.rank(), radius) {
        let e = g.element_of_word(&w);
        let layer = *first.entry(e.matrix().to_vec()).or_insert(w.len());
        if layer == w.len() {
            out.entry(e).or_default().push(w);
        }
    }
    out
}

#[test]
fn ball_matches_word_enumeration() {
    for (name, g) in groups() {
        let r = if g.rank() == 2 { 7 } else { 5 };
        let geo = geodesics(&g, r);
        let ball = g.ball(r).unwrap();
        assert_eq!(ball.len(), geo.len(), "{name}");
        for e in &ball {
            let words = &geo[e];
            assert!(words.iter().all(|w| w.len() == e.length()), "{name}");
        }
    }
    let affine = CoxeterGroup::new(CoxeterMatrix::triangle(3, 3, 3));
    let growth: Vec<usize> = (0..=5).map(|r| affine.ball(r).unwrap().len()).collect();
    assert_eq!(growth, [1, 4, 10, 19, 31, 46]);
    assert_eq!(
        CoxeterGroup::new(CoxeterMatrix::a3())
            .ball(10)
            .unwrap()
            .len(),
        24
    );
}

#[test]
fn reduced_words_match_enumeration() {
    for (name, g) in groups() {
        let r = if g.rank() == 2 { 6 } else { 5 };
        for (e, mut words) in geodesics(&g, r) {
            words.sort();
            assert_eq!(
                g.reduced_words_all(&e),
                words,
                "{name} {}",
                g.element_name(&e)
            );
            assert_eq!(g.shortlex_word(&e), words[0], "{name}");
        }
    }
}

fn ball_walls(g: &CoxeterGroup, ball: &[GroupElement]) -> HashMap<Wall, Vec<GroupElement>> {
    let mut incident: HashMap<Wall, Vec<GroupElement>> = HashMap::new();
    for h in ball {
        for s in 0..g.rank() {
            incident
                .entry(g.wall_of_root(g.image_of_simple(h, s)))
                .or_default()
                .push(h.clone());
        }
    }
    incident
}

/// In a finite group every chamber is available, so "every chamber incident
/// to `W` lies across `W'` from `g`" decides separation exactly.
#[test]
fn frontier_sets_match_definition_in_finite_groups() {
    for (name, g) in groups()
        .into_iter()
        .filter(|(n, _)| ["A2", "B2", "I2(5)", "A3"].contains(n))
    {
        let ball = g.ball(20).unwrap();
        let incident = ball_walls(&g, &ball);
        for e in &ball {
            let brute: WallSet = g
                .inversion_walls(e)
                .iter()
                .filter(|w| {
                    !incident.keys().filter(|x| x != w).any(|x| {
                        let mine = g.side_of_wall(x, e);
                        incident[w].iter().all(|h| g.side_of_wall(x, h) != mine)
                    })
                })
                .cloned()
                .collect();
            assert_eq!(g.frontier_set(e), brute, "{name} {}", g.element_name(e));
            // All walls pairwise intersect, so nothing is ever separated.
            assert_eq!(brute, g.inversion_walls(e), "{name}");
        }
    }
}

/// In infinite groups only part of a wall is visible, so the oracle checks
/// one direction: a claimed separator puts every visible incident chamber
/// on the far side.
#[test]
fn separators_hold_on_visible_chambers() {
    for (name, g) in groups()
        .into_iter()
        .filter(|(n, _)| ["D_inf", "(3,3,3)", "(3,3,4)"].contains(n))
    {
        let ball = g.ball(7).unwrap();
        let incident = ball_walls(&g, &ball);
        for e in ball.iter().filter(|e| e.length() <= 4) {
            for w in g.inversion_walls(e).iter() {
                for x in incident.keys().filter(|x| *x != w) {
                    if g.separates_from_wall(x, e, w).unwrap() {
                        let mine = g.side_of_wall(x, e);
                        assert!(
                            incident[w].iter().all(|h| g.side_of_wall(x, h) != mine),
                            "{name}"
                        );
                    }
                }
            }
        }
    }
}

/// Projections recomputed from the definition of `P(g)` over the ball, and
/// the language rebuilt from them on top of the reduced-word oracle.
#[test]
fn language_matches_definition() {
    for (name, g) in groups() {
        let r = if g.rank() == 2 { 6 } else { 5 };
        let ball = g.ball(r).unwrap();
        let mut proj: HashMap<GroupElement, GroupElement> = HashMap::new();
        for e in &ball {
            let frontier = g.frontier_set(e);
            let members: Vec<&GroupElement> = ball
                .iter()
                .filter(|p| g.is_prefix(p, e) && g.inversion_walls(p).is_disjoint(&frontier))
                .collect();
            let top = members.iter().max_by_key(|p| p.length()).unwrap();
            assert!(members.iter().all(|p| g.is_prefix(p, top)), "{name}");
            proj.insert(e.clone(), (*top).clone());
        }
        let geo = geodesics(&g, r);
        let reduced: HashSet<&Word> = geo.values().flatten().collect();
        fn member(
            g: &CoxeterGroup,
            v: &Word,
            proj: &HashMap<GroupElement, GroupElement>,
            reduced: &HashSet<&Word>,
        ) -> bool {
            if !reduced.contains(v) {
                return false;
            }
            if v.is_empty() {
                return true;
            }
            let p = &proj[&g.element_of_word(v)];
            let head = v.prefix(p.length());
            g.element_of_word(&head) == *p && member(g, &head, proj, reduced)
        }
        for v in all_words(g.rank(), r) {
            assert_eq!(
                g.is_voracious(&v),
                member(&g, &v, &proj, &reduced),
                "{name} {}",
                g.format_word(&v)
            );
        }
        for e in &ball {
            let expect: Vec<Word> = {
                let mut w: Vec<Word> = geo[e]
                    .iter()
                    .filter(|v| member(&g, v, &proj, &reduced))
                    .cloned()
                    .collect();
                w.sort();
                w
            };
            assert_eq!(g.all_words_of(e), expect, "{name}");
            assert_eq!(g.count_words_of(e), expect.len(), "{name}");
        }
    }
}

#[test]
fn pivots_match_projection_definition() {
    for (name, g) in groups() {
        let r = if g.rank() == 2 { 6 } else { 5 };
        let set = g.pivots(r).unwrap();
        let brute: HashSet<GroupElement> = g
            .ball(r)
            .unwrap()
            .into_iter()
            .filter(|w| !w.is_identity() && g.voracious_projection(w).is_identity())
            .collect();
        let listed: HashSet<GroupElement> = set.pivots.iter().map(|p| p.element.clone()).collect();
        assert_eq!(listed, brute, "{name}");
    }
}

#[test]
fn wall_distance_is_nearest_incident_chamber() {
    for (name, g) in groups()
        .into_iter()
        .filter(|(n, _)| ["D_inf", "(3,3,3)", "(3,3,4)"].contains(n))
    {
        let ball = g.ball(7).unwrap();
        let incident = ball_walls(&g, &ball);
        for e in ball.iter().filter(|e| e.length() <= 2) {
            for (w, hs) in &incident {
                if g.wall_distance_from_identity(w) > 3 {
                    continue;
                }
                let brute = hs.iter().map(|h| g.distance(e, h)).min().unwrap();
                assert_eq!(g.wall_distance(e, w), brute, "{name}");
            }
        }
    }
}

#[test]
fn sides_flip_across_simple_walls() {
    for (name, g) in groups() {
        for e in g.ball(4).unwrap() {
            for s in 0..g.rank() {
                let w = g.wall_of_root(g.image_of_simple(&e, s));
                let f = g.apply_generator(&e, s, Side::Right);
                assert_ne!(g.side_of_wall(&w, &e), g.side_of_wall(&w, &f), "{name}");
                let grows = f.length() > e.length();
                assert_eq!(
                    g.side_of_wall(&w, &e) == WallSide::Identity,
                    grows,
                    "{name}"
                );
            }
        }
    }
}

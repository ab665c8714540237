//! Empirical verification on balls of the Cayley graph.
//!
//! Each check walks a finite ball and either passes, fails with a witness
//! that reproduces the failure, or is skipped when the group offers nothing
//! to test. Constants are ball-restricted maxima; they are measured, not
//! certified.

use std::collections::{BTreeSet, HashMap, HashSet};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::automaton::VoraciousAutomaton;
use crate::error::Result;
use crate::group::{CoxeterGroup, GroupElement, Side, Word};
use crate::walls::{Wall, WallSet};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifyConfig {
    pub radius: usize,
    /// Elements within this distance of the ball's boundary are left out of
    /// the wall-distance estimate.
    pub margin: usize,
    pub max_word_length: usize,
    pub pivot_cap: usize,
    pub sharp_angle_samples: usize,
    /// Radius of the ball searched for conjugators of sharp-angled pairs.
    pub conjugator_radius: usize,
    /// Per `(g, s)`, the largest number of word pairs compared exhaustively
    /// before falling back to seeded sampling.
    pub pair_cap: usize,
    pub seed: u64,
    /// Compare the greedy projection under every generator ordering.
    pub all_orderings: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            radius: 6,
            margin: 2,
            max_word_length: 6,
            pivot_cap: 6,
            sharp_angle_samples: 100,
            conjugator_radius: 3,
            pair_cap: 4096,
            seed: 0,
            all_orderings: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    /// Number of cases examined.
    pub cases: usize,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
}

impl CheckResult {
    fn new(name: &str, cases: usize, failure: Option<Value>, detail: String) -> Self {
        CheckResult {
            name: name.to_string(),
            status: if failure.is_some() {
                CheckStatus::Fail
            } else {
                CheckStatus::Pass
            },
            cases,
            detail,
            witness: failure,
            warnings: vec![],
        }
    }

    fn skipped(name: &str, detail: String) -> Self {
        CheckResult {
            name: name.to_string(),
            status: CheckStatus::Skipped,
            cases: 0,
            detail,
            witness: None,
            warnings: vec![],
        }
    }

    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

/// Ball-restricted estimates of the constants appearing in the bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Constants {
    /// Largest block `l(p(g)^-1 g)`.
    #[serde(rename = "C_hat")]
    pub c_hat: usize,
    /// Largest distance from `g` to a wall no other wall separates from `g`.
    #[serde(rename = "Q_hat")]
    pub q_hat: usize,
    /// Largest `|W(g)|`.
    #[serde(rename = "N_hat")]
    pub n_hat: usize,
    /// Largest distance from the identity to a wall of `U`; translation
    /// invariance makes this the limit of `Q_hat` over growing balls.
    #[serde(rename = "Q_hat_small_roots")]
    pub q_hat_small_roots: usize,
}

impl Constants {
    /// `2C`.
    pub fn right_bound(&self) -> usize {
        2 * self.c_hat
    }

    /// `2C(C + 2Q) + 2Q`.
    pub fn left_bound(&self) -> usize {
        2 * self.c_hat * (self.c_hat + 2 * self.q_hat) + 2 * self.q_hat
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupDescription {
    pub generators: Vec<String>,
    pub m: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FellowTravellerMaxima {
    pub right_max: usize,
    pub left_max: usize,
    pub right_bound: usize,
    pub left_bound: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub group: GroupDescription,
    pub radius: usize,
    pub config: VerifyConfig,
    pub constants: Constants,
    pub fellow_traveller: Option<FellowTravellerMaxima>,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}

/// All words of length at most `max_len` over `k` letters, shortest first.
pub fn all_words(k: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * k);
        for w in &layer {
            for s in 0..k {
                let mut v = w.0.clone();
                v.push(s);
                next.push(Word(v));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Runs checks against one group, sharing the enumerated ball.
pub struct Verifier<'a> {
    group: &'a CoxeterGroup,
    ball: Vec<GroupElement>,
    radius: usize,
}

impl<'a> Verifier<'a> {
    pub fn new(group: &'a CoxeterGroup, radius: usize) -> Result<Self> {
        Ok(Verifier {
            ball: group.ball(radius)?,
            group,
            radius,
        })
    }

    pub fn ball(&self) -> &[GroupElement] {
        &self.ball
    }

    fn name(&self, g: &GroupElement) -> String {
        self.group.element_name(g)
    }

    fn word(&self, w: &Word) -> String {
        self.group.format_word(w)
    }

    /// Every `P(g)` has a unique largest element which the greedy projection
    /// finds under every generator ordering. `P(g)` is computed from its
    /// definition over the ball.
    pub fn check_unique_max(&self, all_orderings: bool) -> CheckResult {
        let g0 = self.group;
        let k = g0.rank();
        let orderings: Vec<Vec<usize>> = if all_orderings && k <= 5 {
            (0..k).permutations(k).collect()
        } else {
            vec![(0..k).collect(), (0..k).rev().collect()]
        };
        let inversions: Vec<WallSet> = self.ball.iter().map(|p| g0.inversion_walls(p)).collect();
        for g in &self.ball {
            let frontier = g0.frontier_set(g);
            let members: Vec<&GroupElement> = self
                .ball
                .iter()
                .zip(&inversions)
                .filter(|(p, inv)| {
                    p.length() <= g.length() && g0.is_prefix(p, g) && inv.is_disjoint(&frontier)
                })
                .map(|(p, _)| p)
                .collect();
            let maxima: Vec<&GroupElement> = members
                .iter()
                .copied()
                .filter(|m| members.iter().all(|p| g0.is_prefix(p, m)))
                .collect();
            let failure = |reason: &str| {
                Some(json!({
                    "element": self.name(g),
                    "reason": reason,
                    "projection_set": members.iter().map(|p| self.name(p)).collect::<Vec<_>>(),
                }))
            };
            if maxima.len() != 1 {
                return CheckResult::new(
                    "unique_max",
                    self.ball.len(),
                    failure("no unique largest element"),
                    String::new(),
                );
            }
            let top = maxima[0];
            for order in &orderings {
                let greedy = g0.voracious_projection_with_order(g, order);
                if &greedy != top {
                    let mut w =
                        failure("greedy projection differs from the largest element").unwrap();
                    w["ordering"] = json!(order);
                    w["greedy"] = json!(self.name(&greedy));
                    return CheckResult::new("unique_max", self.ball.len(), Some(w), String::new());
                }
            }
            let bfs: HashSet<GroupElement> = g0.projection_set(g).into_iter().collect();
            let brute: HashSet<GroupElement> = members.iter().map(|p| (*p).clone()).collect();
            if bfs != brute {
                return CheckResult::new(
                    "unique_max",
                    self.ball.len(),
                    failure("projection_set differs from the definition"),
                    String::new(),
                );
            }
            if !g.is_identity() && top == g {
                return CheckResult::new(
                    "unique_max",
                    self.ball.len(),
                    failure("p(g) = g"),
                    String::new(),
                );
            }
        }
        CheckResult::new(
            "unique_max",
            self.ball.len(),
            None,
            format!(
                "{} elements, {} orderings",
                self.ball.len(),
                orderings.len()
            ),
        )
    }

    /// Structural properties of walls and projections: `|Inv(g)| = l(g)`,
    /// `W(g)` is a nonempty part of `Inv(g)`, `P(g)` is prefix-closed, and
    /// every wall of `W(g)` separates `p(g)` from `g`.
    pub fn check_projection_properties(&self) -> CheckResult {
        let g0 = self.group;
        let mut cases = 0;
        for g in &self.ball {
            cases += 1;
            let inv = g0.inversion_walls(g);
            let frontier = g0.frontier_set(g);
            let p = g0.voracious_projection(g);
            let fail = |reason: &str| Some(json!({"element": self.name(g), "reason": reason}));
            let bad = if inv.len() != g.length() {
                fail("inversion set size differs from length")
            } else if !frontier.is_subset(&inv) || (frontier.is_empty() != g.is_identity()) {
                fail("frontier set is not a nonempty subset of the inversion set")
            } else if frontier.iter().any(|w| !g0.wall_separates(w, &p, g)) {
                fail("a frontier wall does not separate p(g) from g")
            } else {
                let set: HashSet<GroupElement> = g0.projection_set(g).into_iter().collect();
                let closed = set.iter().all(|q| {
                    g0.right_descents(q)
                        .into_iter()
                        .all(|s| set.contains(&g0.apply_generator(q, s, Side::Right)))
                });
                if closed {
                    None
                } else {
                    fail("projection set is not prefix-closed")
                }
            };
            if bad.is_some() {
                return CheckResult::new("projection_properties", cases, bad, String::new());
            }
        }
        CheckResult::new("projection_properties", cases, None, String::new())
    }

    /// Constants over the ball together with their values over every smaller
    /// radius, so monotonicity can be checked.
    pub fn constants_by_radius(&self, margin: usize) -> Vec<Constants> {
        let g0 = self.group;
        let r = self.radius;
        let mut by_radius = vec![Constants::default(); r + 1];
        for g in &self.ball {
            let p = g0.voracious_projection(g);
            let c = g.length() - p.length();
            let n = g0.frontier_set(g).len();
            for slot in &mut by_radius[g.length()..] {
                slot.c_hat = slot.c_hat.max(c);
                slot.n_hat = slot.n_hat.max(n);
            }
        }
        // Walls adjacent to some chamber of the ball, keyed by the radius at
        // which they first appear.
        let mut walls: HashMap<Wall, usize> = HashMap::new();
        for h in &self.ball {
            for s in 0..g0.rank() {
                let w = g0.wall_of_root(g0.image_of_simple(h, s));
                let e = walls.entry(w).or_insert(h.length());
                *e = (*e).min(h.length());
            }
        }
        for g in self.ball.iter().filter(|g| g.length() + margin <= r) {
            for (w, &appears) in &walls {
                if g0.find_separator(g, w).is_some() {
                    continue;
                }
                let d = g0.wall_distance(g, w);
                let from = appears.max(g.length() + margin);
                for slot in &mut by_radius[from..] {
                    slot.q_hat = slot.q_hat.max(d);
                }
            }
        }
        let q_universe = g0
            .small_roots()
            .map(|u| {
                u.iter()
                    .map(|w| g0.wall_distance_from_identity(w))
                    .max()
                    .unwrap_or(0)
            })
            .unwrap_or(0);
        for slot in &mut by_radius {
            slot.q_hat_small_roots = q_universe;
        }
        by_radius
    }

    pub fn check_constants_monotone(&self, by_radius: &[Constants]) -> CheckResult {
        let bad = by_radius.windows(2).enumerate().find(|(_, w)| {
            w[1].c_hat < w[0].c_hat || w[1].q_hat < w[0].q_hat || w[1].n_hat < w[0].n_hat
        });
        let last = by_radius.last().copied().unwrap_or_default();
        let failure = bad
            .map(|(i, _)| json!({"radius": i + 1, "values": by_radius}))
            .or_else(|| {
                (last.q_hat > last.q_hat_small_roots).then(
                    || json!({"reason": "Q_hat exceeds the small-root bound", "values": by_radius}),
                )
            });
        CheckResult::new(
            "constants_monotone",
            by_radius.len(),
            failure,
            format!(
                "C_hat={} Q_hat={} N_hat={} Q_hat_small_roots={}",
                last.c_hat, last.q_hat, last.n_hat, last.q_hat_small_roots
            ),
        )
    }

    /// `p(g) <= g' <= g` implies `p(g') <= p(g)`.
    pub fn check_monotonicity(&self) -> CheckResult {
        let g0 = self.group;
        let mut cases = 0;
        for g in &self.ball {
            let p = g0.voracious_projection(g);
            let ginv = g0.inversion_walls(g);
            // Interval [p(g), g] in the prefix order, grown upward from p(g).
            let mut interval = vec![p.clone()];
            let mut seen: HashSet<GroupElement> = HashSet::from([p.clone()]);
            let mut i = 0;
            while i < interval.len() {
                let x = interval[i].clone();
                for s in 0..g0.rank() {
                    let beta = g0.image_of_simple(&x, s);
                    if g0.root_sign(&beta) != crate::field::Sign::Positive {
                        continue;
                    }
                    if ginv.contains(&g0.wall_of_root(beta)) {
                        let y = g0.apply_generator(&x, s, Side::Right);
                        if seen.insert(y.clone()) {
                            interval.push(y);
                        }
                    }
                }
                i += 1;
            }
            for h in &interval {
                cases += 1;
                debug_assert!(g0.is_prefix(&p, h) && g0.is_prefix(h, g));
                let ph = g0.voracious_projection(h);
                if !g0.is_prefix(&ph, &p) {
                    return CheckResult::new(
                        "projection_monotonicity",
                        cases,
                        Some(json!({"g": self.name(g), "g_prime": self.name(h),
                                    "p_g": self.name(&p), "p_g_prime": self.name(&ph)})),
                        String::new(),
                    );
                }
            }
        }
        CheckResult::new("projection_monotonicity", cases, None, String::new())
    }

    fn prefix_elements(&self, v: &Word) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(v.len() + 1);
        let mut cur = self.group.identity();
        out.push(cur.clone());
        for &s in v.letters() {
            cur = self.group.apply_generator(&cur, s, Side::Right);
            out.push(cur.clone());
        }
        out
    }

    /// Largest `l(v(i)^-1 x v'(i))` over `i >= 1`, with `x` either nothing
    /// (right multiplication) or the generator `s` (left multiplication).
    fn track_distance(&self, a: &[GroupElement], b: &[GroupElement], left: Option<usize>) -> usize {
        let n = (a.len().max(b.len())) - 1;
        (1..=n.max(1))
            .map(|i| {
                let x = &a[i.min(a.len() - 1)];
                let mut y = b[i.min(b.len() - 1)].clone();
                if let Some(s) = left {
                    y = self.group.apply_generator(&y, s, Side::Left);
                }
                self.group.distance(x, &y)
            })
            .max()
            .unwrap_or(0)
    }

    /// Fellow-traveller distances between language words for `g` and for
    /// `gs` (right) and `sg` (left), against `2C` and `2C(C+2Q)+2Q`.
    pub fn check_fellow_traveller(
        &self,
        constants: &Constants,
        pair_cap: usize,
        seed: u64,
    ) -> (CheckResult, CheckResult, FellowTravellerMaxima) {
        let g0 = self.group;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut words: HashMap<GroupElement, Vec<Vec<GroupElement>>> = HashMap::new();
        let mut prefixes_of = |g: &GroupElement| -> Vec<Vec<GroupElement>> {
            words
                .entry(g.clone())
                .or_insert_with(|| {
                    g0.all_words_of(g)
                        .iter()
                        .map(|v| self.prefix_elements(v))
                        .collect()
                })
                .clone()
        };
        let mut max = [0usize; 2];
        let mut worst: [Option<Value>; 2] = [None, None];
        let mut cases = [0usize; 2];
        let mut sampled = false;
        let bounds = [constants.right_bound(), constants.left_bound()];
        // Both endpoints stay inside the ball the constants were measured on.
        for g in self.ball.iter().filter(|g| g.length() < self.radius) {
            let vs = prefixes_of(g);
            for s in 0..g0.rank() {
                for (side, idx) in [(Side::Right, 0), (Side::Left, 1)] {
                    let h = g0.apply_generator(g, s, side);
                    let ws = prefixes_of(&h);
                    let mut pairs: Vec<(usize, usize)> =
                        (0..vs.len()).cartesian_product(0..ws.len()).collect();
                    if pairs.len() > pair_cap {
                        pairs.shuffle(&mut rng);
                        pairs.truncate(pair_cap);
                        sampled = true;
                    }
                    for (a, b) in pairs {
                        cases[idx] += 1;
                        let left = (side == Side::Left).then_some(s);
                        let d = self.track_distance(&vs[a], &ws[b], left);
                        if d > max[idx] {
                            max[idx] = d;
                        }
                        if d > bounds[idx] && worst[idx].is_none() {
                            let last = |p: &Vec<GroupElement>| p.last().cloned().expect("nonempty");
                            let word_of = |p: &Vec<GroupElement>| {
                                let e = last(p);
                                self.word(&g0.canonical_word(&e))
                            };
                            worst[idx] = Some(json!({
                                "g": self.name(g),
                                "generator": g0.generators()[s],
                                "v": word_of(&vs[a]),
                                "v_prime": word_of(&ws[b]),
                                "distance": d,
                                "bound": bounds[idx],
                            }));
                        }
                    }
                }
            }
        }
        let maxima = FellowTravellerMaxima {
            right_max: max[0],
            left_max: max[1],
            right_bound: bounds[0],
            left_bound: bounds[1],
        };
        let mut results =
            [("fellow_traveller_right", 0), ("fellow_traveller_left", 1)].map(|(name, i)| {
                CheckResult::new(
                    name,
                    cases[i],
                    worst[i].take(),
                    format!("max {} <= bound {}", max[i], bounds[i]),
                )
            });
        if sampled {
            for r in &mut results {
                r.warnings
                    .push(format!("word pairs sampled (cap {pair_cap}, seed {seed})"));
            }
        }
        let [right, left] = results;
        (right, left, maxima)
    }

    /// Words of the language for each element equal the words found by
    /// filtering all words through the membership test, and every member is
    /// geodesic.
    pub fn check_language_oracle(&self, max_len: usize) -> CheckResult {
        let g0 = self.group;
        let mut by_element: HashMap<GroupElement, BTreeSet<Word>> = HashMap::new();
        let words = all_words(g0.rank(), max_len);
        for v in &words {
            if g0.is_voracious(v) {
                let g = g0.element_of_word(v);
                if g.length() != v.len() {
                    return CheckResult::new(
                        "language_oracle",
                        words.len(),
                        Some(json!({"word": self.word(v), "reason": "member is not geodesic"})),
                        String::new(),
                    );
                }
                by_element.entry(g).or_default().insert(v.clone());
            }
        }
        for g in self.ball.iter().filter(|g| g.length() <= max_len) {
            let listed: BTreeSet<Word> = g0.all_words_of(g).into_iter().collect();
            let found = by_element.remove(g).unwrap_or_default();
            if listed != found || listed.is_empty() {
                return CheckResult::new(
                    "language_oracle",
                    words.len(),
                    Some(json!({
                        "element": self.name(g),
                        "all_words_of": listed.iter().map(|w| self.word(w)).collect::<Vec<_>>(),
                        "membership": found.iter().map(|w| self.word(w)).collect::<Vec<_>>(),
                    })),
                    String::new(),
                );
            }
        }
        CheckResult::new(
            "language_oracle",
            words.len(),
            None,
            format!("{} words", words.len()),
        )
    }

    /// Diagram automorphisms carry the language for `g` onto the language
    /// for the image of `g`.
    pub fn check_symmetry(&self) -> CheckResult {
        let g0 = self.group;
        let autos: Vec<Vec<usize>> = g0
            .coxeter_matrix()
            .diagram_automorphisms()
            .into_iter()
            .filter(|p| p.iter().enumerate().any(|(i, &j)| i != j))
            .collect();
        if autos.is_empty() {
            return CheckResult::skipped("symmetry", "no nontrivial diagram automorphism".into());
        }
        let mut cases = 0;
        for sigma in &autos {
            for g in &self.ball {
                cases += 1;
                let words = g0.all_words_of(g);
                let image = g0.element_of_word(&words[0].permute(sigma));
                let mut mapped: Vec<Word> = words.iter().map(|w| w.permute(sigma)).collect();
                mapped.sort();
                if mapped != g0.all_words_of(&image) {
                    return CheckResult::new(
                        "symmetry",
                        cases,
                        Some(json!({"element": self.name(g), "permutation": sigma})),
                        String::new(),
                    );
                }
            }
        }
        CheckResult::new(
            "symmetry",
            cases,
            None,
            format!("{} automorphisms", autos.len()),
        )
    }

    /// Recursive small roots against the ball computation.
    pub fn check_small_roots(&self) -> CheckResult {
        let g0 = self.group;
        let recursive = match g0.small_roots() {
            Ok(u) => u,
            Err(e) => {
                return CheckResult::new(
                    "small_roots",
                    0,
                    Some(json!({"error": e.to_string()})),
                    String::new(),
                )
            }
        };
        let brute = match g0.small_roots_brute_force(self.radius) {
            Ok(u) => u,
            Err(e) => {
                return CheckResult::new(
                    "small_roots",
                    0,
                    Some(json!({"error": e.to_string()})),
                    String::new(),
                )
            }
        };
        // The ball sees exactly the walls crossed by its elements.
        let visible: WallSet = recursive
            .iter()
            .filter(|w| g0.wall_distance_from_identity(w) < self.radius)
            .cloned()
            .collect();
        let failure = (visible != brute).then(|| {
            json!({
                "recursion": recursive.iter().map(|w| w.root().to_string()).collect::<Vec<_>>(),
                "ball": brute.iter().map(|w| w.root().to_string()).collect::<Vec<_>>(),
            })
        });
        let mut res = CheckResult::new(
            "small_roots",
            recursive.len(),
            failure,
            format!("|U| = {}", recursive.len()),
        );
        if visible.len() < recursive.len() {
            res.warnings.push(format!(
                "{} small roots lie outside the ball and were not cross-checked",
                recursive.len() - visible.len()
            ));
        }
        res
    }

    /// The descent test for pivots agrees with `p(w) = id`.
    pub fn check_pivot_characterisation(&self) -> CheckResult {
        let g0 = self.group;
        for w in &self.ball {
            let by_descents = g0.is_pivot(w);
            let by_projection = !w.is_identity() && g0.voracious_projection(w).is_identity();
            if by_descents != by_projection {
                return CheckResult::new(
                    "pivot_characterisation",
                    self.ball.len(),
                    Some(json!({"element": self.name(w)})),
                    String::new(),
                );
            }
        }
        CheckResult::new(
            "pivot_characterisation",
            self.ball.len(),
            None,
            String::new(),
        )
    }

    /// Acceptance agrees with membership on every word up to `max_len`, and
    /// accepted words end exactly in `g^-1 W(g)`.
    pub fn check_automaton_agreement(
        &self,
        aut: &VoraciousAutomaton,
        max_len: usize,
    ) -> CheckResult {
        let g0 = self.group;
        let words = all_words(g0.rank(), max_len);
        let mut expected: HashMap<GroupElement, Option<usize>> = HashMap::new();
        for v in &words {
            let runs = aut.run_states(v);
            let member = g0.is_voracious(v);
            if member != !runs.is_empty() {
                return CheckResult::new(
                    "automaton_agreement",
                    words.len(),
                    Some(
                        json!({"word": self.word(v), "member": member, "accepted": !runs.is_empty()}),
                    ),
                    String::new(),
                );
            }
            if member {
                let g = g0.element_of_word(v);
                let state = *expected
                    .entry(g.clone())
                    .or_insert_with(|| aut.state_index(&g0.expected_state(&g)));
                if state.is_none() || runs.len() != 1 || runs.iter().next().copied() != state {
                    return CheckResult::new(
                        "automaton_agreement",
                        words.len(),
                        Some(
                            json!({"word": self.word(v), "reason": "accept state differs from g^-1 W(g)",
                                    "runs": runs, "expected": state}),
                        ),
                        String::new(),
                    );
                }
            }
        }
        CheckResult::new(
            "automaton_agreement",
            words.len(),
            None,
            format!("{} words", words.len()),
        )
    }

    /// For sharp-angled `r, q` and `g` in a geometric fundamental domain of
    /// `<r, q>` that is separated from `W_r` or `W_q` by some wall, every
    /// other wall of `<r, q>` is separated from `g` by some wall.
    pub fn check_sharp_angles(
        &self,
        samples: usize,
        conjugator_radius: usize,
        seed: u64,
    ) -> CheckResult {
        let g0 = self.group;
        let name = "sharp_angle_separation";
        if g0.rank() < 3 {
            return CheckResult::skipped(name, "needs rank at least 3".into());
        }
        let conjugators = match g0.ball(conjugator_radius.min(self.radius)) {
            Ok(b) => b,
            Err(e) => {
                return CheckResult::new(
                    name,
                    0,
                    Some(json!({"error": e.to_string()})),
                    String::new(),
                )
            }
        };
        struct Pair {
            u: GroupElement,
            r: Wall,
            q: Wall,
            others: Vec<Wall>,
        }
        let mut pairs: Vec<Pair> = Vec::new();
        let mut seen: HashSet<(Wall, Wall)> = HashSet::new();
        for u in &conjugators {
            for (s, t) in (0..g0.rank()).tuple_combinations() {
                let m = match g0.coxeter_matrix().order(s, t) {
                    Some(m) if m >= 3 => m as usize,
                    _ => continue,
                };
                let r = g0.wall_of_root(g0.image_of_simple(u, s));
                let q = g0.wall_of_root(g0.image_of_simple(u, t));
                let key = if r < q {
                    (r.clone(), q.clone())
                } else {
                    (q.clone(), r.clone())
                };
                if !seen.insert(key) {
                    continue;
                }
                let longest = Word((0..m).map(|i| if i % 2 == 0 { s } else { t }).collect());
                let w0 = g0.element_of_word(&longest);
                let others = g0
                    .inversion_walls(&w0)
                    .iter()
                    .map(|w| g0.translate_wall(u, w))
                    .filter(|w| *w != r && *w != q)
                    .collect();
                pairs.push(Pair {
                    u: u.clone(),
                    r,
                    q,
                    others,
                });
            }
        }
        let mut candidates: Vec<(usize, usize)> = (0..pairs.len())
            .cartesian_product(0..self.ball.len())
            .collect();
        candidates.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let mut qualified = 0;
        for (pi, gi) in candidates {
            if qualified >= samples {
                break;
            }
            let pair = &pairs[pi];
            let g = &self.ball[gi];
            let side = |w: &Wall, x: &GroupElement| g0.side_of_wall(w, x);
            let same = (
                side(&pair.r, g) == side(&pair.r, &pair.u),
                side(&pair.q, g) == side(&pair.q, &pair.u),
            );
            let in_domain = same == (true, true) || same == (false, false);
            if !in_domain {
                continue;
            }
            if g0.find_separator(g, &pair.r).is_none() && g0.find_separator(g, &pair.q).is_none() {
                continue;
            }
            qualified += 1;
            for w in &pair.others {
                if g0.find_separator(g, w).is_none() {
                    return CheckResult::new(
                        name,
                        qualified,
                        Some(json!({
                            "g": self.name(g),
                            "conjugator": self.name(&pair.u),
                            "wall_r": pair.r.root().to_string(),
                            "wall_q": pair.q.root().to_string(),
                            "unseparated": w.root().to_string(),
                        })),
                        String::new(),
                    );
                }
            }
        }
        if qualified == 0 {
            return CheckResult::skipped(name, "no qualifying configuration in the ball".into());
        }
        let mut res =
            CheckResult::new(name, qualified, None, format!("{qualified} configurations"));
        if qualified < samples {
            res.warnings.push(format!(
                "only {qualified} qualifying configurations found, {samples} requested"
            ));
        }
        res
    }
}

/// Runs every check and assembles the report.
pub fn run_suite(group: &CoxeterGroup, config: &VerifyConfig) -> Result<VerificationReport> {
    let verifier = Verifier::new(group, config.radius)?;
    let mut warnings = Vec::new();
    if config.radius == 0 {
        warnings.push("radius 0: checks over the ball are vacuous".to_string());
    }
    let mut checks = vec![
        verifier.check_unique_max(config.all_orderings),
        verifier.check_projection_properties(),
    ];
    let by_radius = verifier.constants_by_radius(config.margin);
    let constants = by_radius.last().copied().unwrap_or_default();
    checks.push(verifier.check_constants_monotone(&by_radius));
    checks.push(verifier.check_monotonicity());
    let (right, left, maxima) =
        verifier.check_fellow_traveller(&constants, config.pair_cap, config.seed);
    checks.push(right);
    checks.push(left);
    checks.push(verifier.check_language_oracle(config.max_word_length.min(config.radius)));
    checks.push(verifier.check_symmetry());
    checks.push(verifier.check_small_roots());
    checks.push(verifier.check_pivot_characterisation());
    if config.max_word_length > 0 {
        let cap = config.pivot_cap.max(config.max_word_length);
        let build = group.build_automaton(cap)?;
        warnings.extend(build.warnings.iter().cloned());
        checks.push(verifier.check_automaton_agreement(&build.automaton, config.max_word_length));
    } else {
        checks.push(CheckResult::skipped(
            "automaton_agreement",
            "max word length 0".into(),
        ));
    }
    checks.push(verifier.check_sharp_angles(
        config.sharp_angle_samples,
        config.conjugator_radius,
        config.seed,
    ));
    let m = group.coxeter_matrix();
    Ok(VerificationReport {
        group: GroupDescription {
            generators: m.generators().to_vec(),
            m: (0..m.rank())
                .map(|i| (0..m.rank()).map(|j| m.order(i, j).unwrap_or(0)).collect())
                .collect(),
        },
        radius: config.radius,
        config: config.clone(),
        constants,
        fellow_traveller: Some(maxima),
        checks,
        warnings,
    })
}

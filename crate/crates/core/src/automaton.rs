//! A finite state automaton accepting the voracious language.
//!
//! States are sets of walls drawn from the finite set `U` of walls not
//! separated from the identity by any other wall. An edge leaves state `a`
//! for every pivot `w` (an element with `p(w) = id`) such that no wall of `a`
//! separates `w` from the identity and every wall of `a` is separated from
//! `w` by some other wall; it enters `w^-1 W(w)` and consumes any reduced word
//! of `w` as a single block.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{FieldScalar, Sign};
use crate::group::{CoxeterGroup, GroupElement, Word};
use crate::walls::{Wall, WallSet};

/// Default limit on the small-root recursion.
pub const DEFAULT_ROOT_CAP: usize = 10_000;

/// An element whose voracious projection is the identity.
#[derive(Debug, Clone)]
pub struct Pivot {
    pub element: GroupElement,
    pub word: Word,
    pub inversions: WallSet,
    /// `w^-1 W(w)`.
    pub target: WallSet,
    /// All reduced words of the element.
    pub labels: Vec<Word>,
}

#[derive(Debug, Clone)]
pub struct PivotSet {
    pub pivots: Vec<Pivot>,
    pub length_cap: usize,
    /// Some pivot has length equal to the cap, so longer pivots may exist.
    pub saturated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub pivot_word: Word,
    pub labels: Vec<Word>,
}

/// The automaton restricted to states reachable from the empty set. Every
/// state accepts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoraciousAutomaton {
    pub universe: Vec<Wall>,
    /// Sorted indices into `universe`.
    pub states: Vec<Vec<usize>>,
    pub start: usize,
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone)]
pub struct AutomatonBuild {
    pub automaton: VoraciousAutomaton,
    pub pivot_cap: usize,
    pub pivots_saturated: bool,
    pub warnings: Vec<String>,
}

impl CoxeterGroup {
    pub fn small_roots(&self) -> Result<WallSet> {
        self.small_roots_with_cap(DEFAULT_ROOT_CAP)
    }

    /// Walls of the elementary roots. Starting from the simple roots, `s(beta)`
    /// is kept iff `-1 < B(alpha_s, beta) < 1`; otherwise it dominates a
    /// simple root (or is `beta` itself, or negative) and is dropped.
    pub fn small_roots_with_cap(&self, cap: usize) -> Result<WallSet> {
        let field = self.field();
        let one = field.one();
        let mut found: WallSet = (0..self.rank()).map(|s| self.simple_wall(s)).collect();
        let mut queue: VecDeque<Wall> = found.iter().cloned().collect();
        while let Some(beta) = queue.pop_front() {
            for s in 0..self.rank() {
                let b = self.gram_row_dot(s, beta.coords());
                if b.is_zero() || self.simple_index(&beta) == Some(s) {
                    continue;
                }
                let inside = field.sign(&(&one - &b)) == Sign::Positive
                    && field.sign(&(&one + &b)) == Sign::Positive;
                if !inside {
                    continue;
                }
                let next = self.wall_of_root(self.reflect_simple(s, beta.coords()));
                if found.insert(next.clone()) {
                    if found.len() > cap {
                        return Err(Error::RootCap(cap));
                    }
                    queue.push_back(next);
                }
            }
        }
        Ok(found)
    }

    /// `U` computed from definitions over a ball: a wall is kept iff no other
    /// wall separates the identity from it. Separators are searched among the
    /// walls between the identity and a chamber adjacent to the wall, which
    /// contain all of them.
    pub fn small_roots_brute_force(&self, radius: usize) -> Result<WallSet> {
        let id = self.identity();
        let mut walls = WallSet::new();
        for g in self.ball(radius)? {
            for w in self.inversion_walls_ordered(&g) {
                walls.insert(w);
            }
        }
        let mut out = WallSet::new();
        for w in walls.iter() {
            let h = self.incident_chamber(w).chamber;
            let separated = self
                .inversion_walls_ordered(&h)
                .iter()
                .filter(|x| *x != w)
                .any(|x| self.separates_from_wall(x, &id, w).expect("distinct"));
            if !separated {
                out.insert(w.clone());
            }
        }
        Ok(out)
    }

    /// `p(w) = id` for `w != id`, via the equivalent test that every left
    /// descent's simple wall lies in `W(w)`.
    pub fn is_pivot(&self, w: &GroupElement) -> bool {
        if w.is_identity() {
            return false;
        }
        let frontier = self.frontier_set(w);
        self.left_descents(w)
            .into_iter()
            .all(|s| frontier.contains(&self.simple_wall(s)))
    }

    fn make_pivot(&self, w: GroupElement) -> Pivot {
        let inverse = w.inverse();
        let target = self
            .frontier_set(&w)
            .iter()
            .map(|x| self.translate_wall(&inverse, x))
            .collect();
        Pivot {
            word: self.shortlex_word(&w),
            inversions: self.inversion_walls(&w),
            labels: self.reduced_words_all(&w),
            target,
            element: w,
        }
    }

    /// Pivots of length at most `length_cap`, ordered by length then shortlex.
    pub fn pivots(&self, length_cap: usize) -> Result<PivotSet> {
        if length_cap == 0 {
            return Err(Error::InvalidCap(0));
        }
        let mut pivots: Vec<Pivot> = self
            .ball(length_cap)?
            .into_iter()
            .filter(|w| self.is_pivot(w))
            .map(|w| self.make_pivot(w))
            .collect();
        pivots.sort_by(|a, b| (a.word.len(), &a.word).cmp(&(b.word.len(), &b.word)));
        let saturated = pivots.iter().any(|p| p.word.len() == length_cap);
        Ok(PivotSet {
            pivots,
            length_cap,
            saturated,
        })
    }

    pub fn build_automaton(&self, length_cap: usize) -> Result<AutomatonBuild> {
        let universe: Vec<Wall> = self.small_roots()?.into_iter().collect();
        let index: HashMap<&Wall, usize> =
            universe.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let pivot_set = self.pivots(length_cap)?;
        let mut targets = Vec::with_capacity(pivot_set.pivots.len());
        for p in &pivot_set.pivots {
            let t: Option<Vec<usize>> = p.target.iter().map(|w| index.get(w).copied()).collect();
            let mut t = t.ok_or_else(|| {
                Error::Invariant(format!(
                    "target of pivot {} is not contained in the small-root walls",
                    self.format_word(&p.word)
                ))
            })?;
            t.sort_unstable();
            targets.push(t);
        }

        // (pivot, wall) -> some other wall separates the pivot from the wall
        let mut separated: HashMap<(usize, usize), bool> = HashMap::new();
        let mut states: Vec<Vec<usize>> = vec![vec![]];
        let mut state_ids: HashMap<Vec<usize>, usize> = HashMap::from([(vec![], 0)]);
        let mut edges = Vec::new();
        let mut next = 0;
        while next < states.len() {
            let a = states[next].clone();
            for (pi, p) in pivot_set.pivots.iter().enumerate() {
                if a.iter().any(|&i| p.inversions.contains(&universe[i])) {
                    continue;
                }
                let all_separated = a.iter().all(|&i| {
                    *separated
                        .entry((pi, i))
                        .or_insert_with(|| self.find_separator(&p.element, &universe[i]).is_some())
                });
                if !all_separated {
                    continue;
                }
                let to = *state_ids.entry(targets[pi].clone()).or_insert_with(|| {
                    states.push(targets[pi].clone());
                    states.len() - 1
                });
                edges.push(Edge {
                    from: next,
                    to,
                    pivot_word: p.word.clone(),
                    labels: p.labels.clone(),
                });
            }
            next += 1;
        }

        let mut warnings = Vec::new();
        if pivot_set.saturated {
            warnings.push(format!(
                "pivot enumeration reached the length cap {length_cap}; longer pivots may exist"
            ));
        }
        Ok(AutomatonBuild {
            automaton: VoraciousAutomaton {
                universe,
                states,
                start: 0,
                edges,
            },
            pivot_cap: length_cap,
            pivots_saturated: pivot_set.saturated,
            warnings,
        })
    }

    /// The state the automaton should reach on a language word for `g`:
    /// `g^-1 W(g)`.
    pub fn expected_state(&self, g: &GroupElement) -> WallSet {
        let inverse = g.inverse();
        self.frontier_set(g)
            .iter()
            .map(|w| self.translate_wall(&inverse, w))
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct JsonEdge {
    from: usize,
    to: usize,
    pivot_word: String,
    labels: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct JsonAutomaton {
    universe: Vec<Vec<Value>>,
    states: Vec<Vec<usize>>,
    start: usize,
    edges: Vec<JsonEdge>,
}

fn rational_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Automaton(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            s.trim().parse().map_err(|_| bad())?,
        )),
    }
}

fn scalar_json(x: &FieldScalar) -> Value {
    match x.degree() {
        1 => Value::String(rational_string(&x.coefficients()[0])),
        _ => Value::Array(
            x.coefficients()
                .iter()
                .map(|q| Value::String(rational_string(q)))
                .collect(),
        ),
    }
}

fn scalar_from_json(v: &Value, degree: usize) -> Result<FieldScalar> {
    match v {
        Value::String(s) => Ok(FieldScalar::from_rational(degree, parse_rational(s)?)),
        Value::Array(items) if items.len() == degree => {
            let coeffs = items
                .iter()
                .map(|i| match i {
                    Value::String(s) => parse_rational(s),
                    _ => Err(Error::Automaton("coefficient must be a string".into())),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(FieldScalar::from_coefficients(coeffs))
        }
        _ => Err(Error::Automaton(format!(
            "coordinate must be a rational string or {degree} coefficient strings"
        ))),
    }
}

impl VoraciousAutomaton {
    /// `2^|U|`, the size of the full state space; `None` if it overflows.
    pub fn state_space_size(&self) -> Option<u128> {
        1u128.checked_shl(self.universe.len() as u32)
    }

    pub fn state_walls(&self, state: usize) -> WallSet {
        self.states[state]
            .iter()
            .map(|&i| self.universe[i].clone())
            .collect()
    }

    pub fn state_index(&self, walls: &WallSet) -> Option<usize> {
        (0..self.states.len()).find(|&i| self.state_walls(i) == *walls)
    }

    /// States reachable after reading all of `v`, splitting it into edge
    /// labels.
    pub fn run_states(&self, v: &Word) -> BTreeSet<usize> {
        let n = v.len();
        let mut outgoing: Vec<Vec<&Edge>> = vec![vec![]; self.states.len()];
        for e in &self.edges {
            outgoing[e.from].push(e);
        }
        let mut reach: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n + 1];
        reach[0].insert(self.start);
        for i in 0..n {
            if reach[i].is_empty() {
                continue;
            }
            let current: Vec<usize> = reach[i].iter().copied().collect();
            for a in current {
                for e in &outgoing[a] {
                    let len = e.pivot_word.len();
                    if i + len > n {
                        continue;
                    }
                    let piece = Word(v.letters()[i..i + len].to_vec());
                    if e.labels.binary_search(&piece).is_ok() {
                        reach[i + len].insert(e.to);
                    }
                }
            }
        }
        reach.pop().expect("n + 1 entries")
    }

    /// Every state accepts, so a word is accepted iff some run consumes it.
    pub fn accepts(&self, v: &Word) -> bool {
        !self.run_states(v).is_empty()
    }

    pub fn to_json(&self, group: &CoxeterGroup) -> String {
        let doc = JsonAutomaton {
            universe: self
                .universe
                .iter()
                .map(|w| w.coords().iter().map(scalar_json).collect())
                .collect(),
            states: self.states.clone(),
            start: self.start,
            edges: self
                .edges
                .iter()
                .map(|e| JsonEdge {
                    from: e.from,
                    to: e.to,
                    pivot_word: group.format_word(&e.pivot_word),
                    labels: e.labels.iter().map(|l| group.format_word(l)).collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    }

    pub fn from_json(group: &CoxeterGroup, text: &str) -> Result<Self> {
        let doc: JsonAutomaton = serde_json::from_str(text)?;
        let degree = group.field().degree();
        let universe = doc
            .universe
            .iter()
            .map(|coords| {
                if coords.len() != group.rank() {
                    return Err(Error::Automaton(format!(
                        "root has {} coordinates, group rank is {}",
                        coords.len(),
                        group.rank()
                    )));
                }
                let v = coords
                    .iter()
                    .map(|c| scalar_from_json(c, degree))
                    .collect::<Result<Vec<_>>>()?;
                if v.iter().all(FieldScalar::is_zero) {
                    return Err(Error::Automaton("zero root".into()));
                }
                Ok(group.wall_of_root(v))
            })
            .collect::<Result<Vec<_>>>()?;
        let n_states = doc.states.len();
        for s in &doc.states {
            if s.iter().any(|&i| i >= universe.len()) {
                return Err(Error::Automaton("state refers to a missing wall".into()));
            }
        }
        if doc.start >= n_states {
            return Err(Error::Automaton("start state out of range".into()));
        }
        let edges = doc
            .edges
            .iter()
            .map(|e| {
                if e.from >= n_states || e.to >= n_states {
                    return Err(Error::Automaton("edge endpoint out of range".into()));
                }
                let pivot_word = group.parse_word(&e.pivot_word)?;
                let mut labels = e
                    .labels
                    .iter()
                    .map(|l| group.parse_word(l))
                    .collect::<Result<Vec<_>>>()?;
                labels.sort();
                if labels.iter().any(|l| l.len() != pivot_word.len()) {
                    return Err(Error::Automaton("label length differs from pivot".into()));
                }
                Ok(Edge {
                    from: e.from,
                    to: e.to,
                    pivot_word,
                    labels,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(VoraciousAutomaton {
            universe,
            states: doc.states,
            start: doc.start,
            edges,
        })
    }

    pub fn to_dot(&self, group: &CoxeterGroup) -> String {
        let mut out =
            String::from("digraph voracious {\n  rankdir=LR;\n  node [shape=doublecircle];\n");
        for (i, s) in self.states.iter().enumerate() {
            let walls: Vec<String> = s
                .iter()
                .map(|&w| self.universe[w].root().to_string())
                .collect();
            let style = if i == self.start { ", style=bold" } else { "" };
            let _ = writeln!(out, "  q{i} [label=\"{{{}}}\"{style}];", walls.join(", "));
        }
        for e in &self.edges {
            let labels: Vec<String> = e.labels.iter().map(|l| group.format_word(l)).collect();
            let _ = writeln!(
                out,
                "  q{} -> q{} [label=\"{}\"];",
                e.from,
                e.to,
                labels.join(",")
            );
        }
        out.push_str("}\n");
        out
    }

    /// `format` is `dot` or `json`.
    pub fn serialize(&self, group: &CoxeterGroup, format: &str) -> Result<String> {
        match format {
            "dot" => Ok(self.to_dot(group)),
            "json" => Ok(self.to_json(group)),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::CoxeterMatrix;

    fn group(m: CoxeterMatrix) -> CoxeterGroup {
        CoxeterGroup::new(m)
    }

    fn word(g: &CoxeterGroup, s: &str) -> Word {
        g.parse_word(s).unwrap()
    }

    #[test]
    fn small_root_counts() {
        assert_eq!(
            group(CoxeterMatrix::dihedral(3))
                .small_roots()
                .unwrap()
                .len(),
            3
        );
        assert_eq!(
            group(CoxeterMatrix::dihedral(4))
                .small_roots()
                .unwrap()
                .len(),
            4
        );
        let d = group(CoxeterMatrix::dihedral(0));
        let u = d.small_roots().unwrap();
        let expected: WallSet = [d.simple_wall(0), d.simple_wall(1)].into_iter().collect();
        assert_eq!(u, expected);
        assert_eq!(d.small_roots_brute_force(4).unwrap(), expected);
        assert!(matches!(
            group(CoxeterMatrix::triangle(3, 3, 4)).small_roots_with_cap(3),
            Err(Error::RootCap(3))
        ));
    }

    #[test]
    fn pivot_sets() {
        let a2 = group(CoxeterMatrix::dihedral(3));
        let p = a2.pivots(3).unwrap();
        assert_eq!(p.pivots.len(), 5);
        assert!(p.saturated);
        let d = group(CoxeterMatrix::dihedral(0));
        let p = d.pivots(4).unwrap();
        let words: Vec<_> = p.pivots.iter().map(|x| d.format_word(&x.word)).collect();
        assert_eq!(words, ["s", "t"]);
        assert!(!p.saturated);
        let t = group(CoxeterMatrix::triangle(3, 3, 4));
        assert_eq!(t.pivots(1).unwrap().pivots.len(), 3);
        assert!(matches!(t.pivots(0), Err(Error::InvalidCap(0))));
    }

    #[test]
    fn infinite_dihedral_automaton() {
        let d = group(CoxeterMatrix::dihedral(0));
        let aut = d.build_automaton(4).unwrap().automaton;
        assert_eq!(aut.states.len(), 3);
        let ws = aut
            .state_index(&[d.simple_wall(0)].into_iter().collect())
            .unwrap();
        let wt = aut
            .state_index(&[d.simple_wall(1)].into_iter().collect())
            .unwrap();
        let edges: BTreeSet<(usize, usize, String)> = aut
            .edges
            .iter()
            .map(|e| (e.from, e.to, d.format_word(&e.pivot_word)))
            .collect();
        let expected: BTreeSet<_> = [
            (0, ws, "s".to_string()),
            (0, wt, "t".to_string()),
            (wt, ws, "s".to_string()),
            (ws, wt, "t".to_string()),
        ]
        .into_iter()
        .collect();
        assert_eq!(edges, expected);
        assert!(aut.accepts(&word(&d, "")));
        assert!(aut.accepts(&word(&d, "stst")));
        assert!(!aut.accepts(&word(&d, "stt")));
        assert!(!aut.accepts(&word(&d, "ss")));
        assert_eq!(aut.run_states(&word(&d, "")), BTreeSet::from([0]));
        assert_eq!(aut.run_states(&word(&d, "st")), BTreeSet::from([wt]));
        let dot = aut.to_dot(&d);
        assert_eq!(dot.matches("->").count(), 4);
        assert_eq!(dot.matches(" [label=\"{").count(), 3);
    }

    #[test]
    fn finite_dihedral_automaton_is_a_star() {
        let a2 = group(CoxeterMatrix::dihedral(3));
        let aut = a2.build_automaton(3).unwrap().automaton;
        assert!(aut.edges.iter().all(|e| e.from == 0));
        assert_eq!(aut.edges.len(), 5);
        let top = aut.edges.iter().find(|e| e.pivot_word.len() == 3).unwrap();
        assert_eq!(aut.states[top.to].len(), 3);
        assert_eq!(top.labels, vec![word(&a2, "sts"), word(&a2, "tst")]);
        assert!(aut.accepts(&word(&a2, "sts")));
        assert!(!aut.accepts(&word(&a2, "stst")));
        let st = a2.element_of_word(&word(&a2, "st"));
        let expected = a2.expected_state(&st);
        let wall =
            |c: [i64; 2]| a2.wall_of_root(c.iter().map(|&x| a2.field().integer(x)).collect());
        assert_eq!(expected, [wall([1, 1]), wall([0, 1])].into_iter().collect());
        let runs = aut.run_states(&word(&a2, "st"));
        assert_eq!(runs, BTreeSet::from([aut.state_index(&expected).unwrap()]));
    }

    #[test]
    fn generator_edges_out_of_the_start() {
        for m in [CoxeterMatrix::triangle(3, 3, 4), CoxeterMatrix::dihedral(5)] {
            let g = group(m);
            let aut = g.build_automaton(2).unwrap().automaton;
            for s in 0..g.rank() {
                let e = aut
                    .edges
                    .iter()
                    .find(|e| e.from == 0 && e.pivot_word == Word(vec![s]))
                    .unwrap();
                assert_eq!(e.labels, vec![Word(vec![s])]);
                assert_eq!(
                    aut.state_walls(e.to),
                    [g.simple_wall(s)].into_iter().collect()
                );
            }
        }
    }

    #[test]
    fn rank_one() {
        let g = group(CoxeterMatrix::rank_one());
        let aut = g.build_automaton(1).unwrap().automaton;
        assert_eq!(aut.states.len(), 2);
        assert_eq!(aut.edges.len(), 1);
        assert_eq!(aut.state_space_size(), Some(2));
    }

    #[test]
    fn json_round_trip() {
        for m in [
            CoxeterMatrix::dihedral(0),
            CoxeterMatrix::dihedral(4),
            CoxeterMatrix::triangle(3, 3, 4),
        ] {
            let g = group(m);
            let aut = g.build_automaton(3).unwrap().automaton;
            let text = aut.to_json(&g);
            let back = VoraciousAutomaton::from_json(&g, &text).unwrap();
            assert_eq!(back, aut);
            assert_eq!(back.to_json(&g), text);
        }
        let d = group(CoxeterMatrix::dihedral(0));
        let text = d.build_automaton(2).unwrap().automaton.to_json(&d);
        assert!(text.contains("\"1/1\""));
        assert!(matches!(
            d.build_automaton(2).unwrap().automaton.serialize(&d, "svg"),
            Err(Error::UnknownFormat(_))
        ));
        assert!(VoraciousAutomaton::from_json(&d, "{}").is_err());
    }
}

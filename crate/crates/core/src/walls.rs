//! Walls of the Cayley graph and the voracious projection.
//!
//! A wall is the fixed set of a reflection `r_beta`, identified by its
//! positive root `beta`. An element `g` lies on the identity side of the wall
//! exactly when `g^-1(beta)` is positive. Two distinct walls intersect iff
//! `|B(beta_1, beta_2)| < 1`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldScalar, Sign};
use crate::group::{CoxeterGroup, GroupElement, Side};

/// A root in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root(Vec<FieldScalar>);

impl Root {
    pub fn coords(&self) -> &[FieldScalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<FieldScalar> {
        self.0
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// A wall, stored as the positive root of its reflection.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Wall(Root);

impl Wall {
    pub fn root(&self) -> &Root {
        &self.0
    }

    pub fn coords(&self) -> &[FieldScalar] {
        &self.0 .0
    }
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{}", self.0)
    }
}

/// A finite, deduplicated, canonically ordered set of walls.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct WallSet(BTreeSet<Wall>);

impl WallSet {
    pub fn new() -> Self {
        WallSet(BTreeSet::new())
    }

    pub fn insert(&mut self, w: Wall) -> bool {
        self.0.insert(w)
    }

    pub fn contains(&self, w: &Wall) -> bool {
        self.0.contains(w)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Wall> {
        self.0.iter()
    }

    pub fn is_disjoint(&self, other: &WallSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn is_subset(&self, other: &WallSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &WallSet) -> WallSet {
        WallSet(self.0.union(&other.0).cloned().collect())
    }
}

impl FromIterator<Wall> for WallSet {
    fn from_iter<I: IntoIterator<Item = Wall>>(iter: I) -> Self {
        WallSet(iter.into_iter().collect())
    }
}

impl IntoIterator for WallSet {
    type Item = Wall;
    type IntoIter = std::collections::btree_set::IntoIter<Wall>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a WallSet {
    type Item = &'a Wall;
    type IntoIter = std::collections::btree_set::Iter<'a, Wall>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// The half-space of a wall an element lies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WallSide {
    /// Same side as the identity.
    Identity,
    Far,
}

/// A chamber adjacent to a wall: `chamber` and `chamber * s` lie on opposite
/// sides, with `chamber` on the identity side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidentChamber {
    pub chamber: GroupElement,
    pub generator: usize,
}

impl CoxeterGroup {
    /// The wall of `+-v`, normalised to the positive root.
    pub fn wall_of_root(&self, v: Vec<FieldScalar>) -> Wall {
        match self.root_sign(&v) {
            Sign::Positive => Wall(Root(v)),
            Sign::Negative => Wall(Root(v.iter().map(|x| -x).collect())),
            Sign::Zero => panic!("zero vector is not a root"),
        }
    }

    pub fn simple_wall(&self, s: usize) -> Wall {
        let mut v = vec![self.field().zero(); self.rank()];
        v[s] = self.field().one();
        Wall(Root(v))
    }

    /// The simple generator whose wall this is, if any.
    pub fn simple_index(&self, w: &Wall) -> Option<usize> {
        let one = self.field().one();
        let c = w.coords();
        let pos = c.iter().position(|x| *x == one)?;
        c.iter()
            .enumerate()
            .all(|(i, x)| i == pos || x.is_zero())
            .then_some(pos)
    }

    /// `u W`.
    pub fn translate_wall(&self, u: &GroupElement, w: &Wall) -> Wall {
        self.wall_of_root(self.act(u, w.coords()))
    }

    /// `B(beta_1, beta_2)` for the roots of two walls.
    pub fn wall_pairing(&self, a: &Wall, b: &Wall) -> FieldScalar {
        self.bilinear(a.coords(), b.coords())
    }

    /// Walls separating the identity from `g`, in the order a geodesic along
    /// the shortlex word crosses them.
    pub fn inversion_walls_ordered(&self, g: &GroupElement) -> Vec<Wall> {
        let word = self.shortlex_word(g);
        let mut prefix = self.identity();
        let mut out = Vec::with_capacity(word.len());
        for &s in word.letters() {
            // beta_i = s_1 ... s_{i-1} (alpha_{s_i}), positive along a reduced word.
            let beta = self.image_of_simple(&prefix, s);
            out.push(self.wall_of_root(beta));
            prefix = self.apply_generator(&prefix, s, Side::Right);
        }
        out
    }

    pub fn inversion_walls(&self, g: &GroupElement) -> WallSet {
        self.inversion_walls_ordered(g).into_iter().collect()
    }

    pub fn side_of_wall(&self, w: &Wall, g: &GroupElement) -> WallSide {
        match self.root_sign(&self.act_inverse(g, w.coords())) {
            Sign::Positive => WallSide::Identity,
            Sign::Negative => WallSide::Far,
            Sign::Zero => unreachable!("invertible action sends roots to roots"),
        }
    }

    /// Whether `w` separates `g` from `h`.
    pub fn wall_separates(&self, w: &Wall, g: &GroupElement, h: &GroupElement) -> bool {
        self.side_of_wall(w, g) != self.side_of_wall(w, h)
    }

    /// Distinct walls intersect iff the reflections generate a finite group,
    /// i.e. `|B| < 1`. Tangent walls (`|B| = 1`) count as disjoint.
    pub fn walls_intersect(&self, a: &Wall, b: &Wall) -> Result<bool> {
        if a == b {
            return Err(Error::SameWall);
        }
        let pairing = self.wall_pairing(a, b);
        let one = self.field().one();
        let below = self.field().sign(&(&one - &pairing)) == Sign::Positive;
        let above = self.field().sign(&(&one + &pairing)) == Sign::Positive;
        Ok(below && above)
    }

    /// The chamber of minimal length adjacent to `w`, found by lowering the
    /// root with the smallest generator `s` satisfying `B(alpha_s, beta) > 0`
    /// until it becomes simple.
    pub fn incident_chamber(&self, w: &Wall) -> IncidentChamber {
        let mut beta = w.coords().to_vec();
        let mut chamber = self.identity();
        loop {
            if let Some(t) = self.simple_index(&Wall(Root(beta.clone()))) {
                debug_assert_eq!(self.side_of_wall(w, &chamber), WallSide::Identity);
                return IncidentChamber {
                    chamber,
                    generator: t,
                };
            }
            let s = (0..self.rank())
                .find(|&s| self.field().sign(&self.gram_row_dot(s, &beta)) == Sign::Positive)
                .expect("a non-simple positive root has a lowering generator");
            beta = self.reflect_simple(s, &beta);
            chamber = self.apply_generator(&chamber, s, Side::Right);
        }
    }

    /// Distance from the identity to the nearest chamber adjacent to `w`.
    pub fn wall_distance_from_identity(&self, w: &Wall) -> usize {
        self.incident_chamber(w).chamber.length()
    }

    /// Distance from `g` to the nearest chamber adjacent to `w`.
    pub fn wall_distance(&self, g: &GroupElement, w: &Wall) -> usize {
        self.wall_distance_from_identity(&self.translate_wall(&g.inverse(), w))
    }

    /// Walls separating `g` from `h`; their number is the distance.
    pub fn walls_between(&self, g: &GroupElement, h: &GroupElement) -> WallSet {
        let u = self.multiply(&g.inverse(), h);
        self.inversion_walls_ordered(&u)
            .iter()
            .map(|w| self.translate_wall(g, w))
            .collect()
    }

    /// Whether `sep` separates `g` from the wall `w`: the walls are disjoint
    /// and `g` lies on the other side of `sep` from every chamber adjacent to
    /// `w`.
    pub fn separates_from_wall(&self, sep: &Wall, g: &GroupElement, w: &Wall) -> Result<bool> {
        if self.walls_intersect(sep, w)? {
            return Ok(false);
        }
        let h = self.incident_chamber(w).chamber;
        Ok(self.wall_separates(sep, g, &h))
    }

    /// Some wall separating `g` from `w`, found by exhausting the walls
    /// between `g` and a chamber adjacent to `w` (every separator is among
    /// them).
    pub fn find_separator(&self, g: &GroupElement, w: &Wall) -> Option<Wall> {
        let h = self.incident_chamber(w).chamber;
        let u = self.multiply(&g.inverse(), &h);
        self.inversion_walls_ordered(&u)
            .iter()
            .map(|x| self.translate_wall(g, x))
            .filter(|x| x != w)
            .find(|x| {
                !self.walls_intersect(x, w).expect("distinct") && self.wall_separates(x, g, &h)
            })
    }

    /// `W(g)`: walls separating `g` from the identity that no other wall
    /// separates from `g`. Candidate separators are limited to the inversion
    /// walls, since a separator of `g` from an inversion wall also separates
    /// `g` from the identity.
    pub fn frontier_set(&self, g: &GroupElement) -> WallSet {
        let inv = self.inversion_walls_ordered(g);
        let mut out = WallSet::new();
        for w in &inv {
            let h = self.incident_chamber(w).chamber;
            let separated = inv.iter().filter(|x| *x != w).any(|x| {
                !self.walls_intersect(x, w).expect("distinct") && self.wall_separates(x, g, &h)
            });
            if !separated {
                out.insert(w.clone());
            }
        }
        out
    }

    /// `p` lies on a geodesic from the identity to `g`.
    pub fn is_prefix(&self, p: &GroupElement, g: &GroupElement) -> bool {
        p.length() <= g.length() && p.length() + self.distance(p, g) == g.length()
    }

    /// `P(g)`: prefixes of `g` not separated from the identity by any wall of
    /// `W(g)`. Explored upward from the identity, since the set is closed
    /// under taking prefixes.
    pub fn projection_set(&self, g: &GroupElement) -> Vec<GroupElement> {
        let frontier = self.frontier_set(g);
        let mut seen: HashSet<GroupElement> = HashSet::new();
        let mut out = vec![self.identity()];
        let mut queue = VecDeque::from([self.identity()]);
        seen.insert(self.identity());
        while let Some(p) = queue.pop_front() {
            for s in 0..self.rank() {
                if let Some(next) = self.projection_step(&p, s, g, &frontier) {
                    if seen.insert(next.clone()) {
                        out.push(next.clone());
                        queue.push_back(next);
                    }
                }
            }
        }
        out
    }

    /// `p s` if it lies in `P(g)` given that `p` does. The new wall crossed
    /// is `p(alpha_s)`; `p s` is a prefix of `g` iff that wall separates `g`
    /// from the identity.
    fn projection_step(
        &self,
        p: &GroupElement,
        s: usize,
        g: &GroupElement,
        frontier: &WallSet,
    ) -> Option<GroupElement> {
        let beta = self.image_of_simple(p, s);
        if self.root_sign(&beta) != Sign::Positive {
            return None;
        }
        let wall = self.wall_of_root(beta);
        if self.side_of_wall(&wall, g) != WallSide::Far || frontier.contains(&wall) {
            return None;
        }
        Some(self.apply_generator(p, s, Side::Right))
    }

    /// The voracious projection `p(g)`, the largest element of `P(g)`.
    pub fn voracious_projection(&self, g: &GroupElement) -> GroupElement {
        if let Some(p) = self.projections.read().expect("cache lock").get(g) {
            return p.clone();
        }
        let order: Vec<usize> = (0..self.rank()).collect();
        let p = self.voracious_projection_with_order(g, &order);
        self.projections
            .write()
            .expect("cache lock")
            .insert(g.clone(), p.clone());
        p
    }

    /// Greedy ascent through `P(g)` trying generators in `order`; the result
    /// does not depend on the order because `P(g)` is prefix-closed with a
    /// largest element.
    pub fn voracious_projection_with_order(
        &self,
        g: &GroupElement,
        order: &[usize],
    ) -> GroupElement {
        let frontier = self.frontier_set(g);
        let mut p = self.identity();
        'ascend: loop {
            for &s in order {
                if let Some(next) = self.projection_step(&p, s, g, &frontier) {
                    p = next;
                    continue 'ascend;
                }
            }
            return p;
        }
    }
}

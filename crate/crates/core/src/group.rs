//! Coxeter matrices, the geometric representation, and element arithmetic.
//!
//! An element `g` is stored as the matrix of its action on the root space in
//! the basis of simple roots (column `j` is `g(alpha_j)`), together with the
//! matrix of `g^-1` and the word length. Element equality is matrix equality;
//! the geometric representation is faithful.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::RwLock;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldScalar, Sign};

/// Default limit on the number of elements a single ball enumeration may hold.
pub const DEFAULT_ELEMENT_CAP: usize = 200_000;

#[derive(Serialize, Deserialize)]
struct RawConfig {
    generators: Vec<String>,
    m: Vec<Vec<u64>>,
}

/// Symmetric Coxeter matrix with named generators. `None` stands for an
/// infinite edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    generators: Vec<String>,
    orders: Vec<Vec<Option<u64>>>,
}

impl CoxeterMatrix {
    /// Validates a matrix given in file encoding (0 means infinity).
    pub fn new(generators: Vec<String>, m: Vec<Vec<u64>>) -> Result<Self> {
        let k = generators.len();
        if k == 0 {
            return Err(Error::Config("at least one generator is required".into()));
        }
        let mut seen = HashSet::new();
        for g in &generators {
            if g.is_empty() || g.contains(',') || g.chars().any(char::is_whitespace) {
                return Err(Error::Config(format!("invalid generator name {g:?}")));
            }
            if !seen.insert(g) {
                return Err(Error::Config(format!("duplicate generator name {g:?}")));
            }
        }
        if m.len() != k || m.iter().any(|row| row.len() != k) {
            return Err(Error::Config(format!("matrix must be {k}x{k}")));
        }
        for i in 0..k {
            if m[i][i] != 1 {
                return Err(Error::BadDiagonal(i));
            }
            for j in 0..k {
                if m[i][j] != m[j][i] {
                    return Err(Error::NotSymmetric(i, j));
                }
                if i != j && m[i][j] == 1 {
                    return Err(Error::BadOrder(i, j, 1));
                }
            }
        }
        let orders = m
            .iter()
            .map(|row| row.iter().map(|&x| (x != 0).then_some(x)).collect())
            .collect();
        Ok(CoxeterMatrix { generators, orders })
    }

    /// Parses the JSON configuration document
    /// `{"generators": [...], "m": [[...]]}`.
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawConfig = serde_json::from_str(text)?;
        Self::new(raw.generators, raw.m)
    }

    pub fn to_json(&self) -> String {
        let raw = RawConfig {
            generators: self.generators.clone(),
            m: (0..self.rank())
                .map(|i| {
                    (0..self.rank())
                        .map(|j| self.orders[i][j].unwrap_or(0))
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string(&raw).expect("serializable")
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    /// `m_st`, `None` for infinity.
    pub fn order(&self, s: usize, t: usize) -> Option<u64> {
        self.orders[s][t]
    }

    /// Least common multiple of the finite off-diagonal orders, 1 if none.
    pub fn field_modulus(&self) -> u64 {
        let mut m = 1u64;
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                if i != j {
                    if let Some(x) = self.orders[i][j] {
                        m = m.lcm(&x);
                    }
                }
            }
        }
        m
    }

    /// Generator permutations `sigma` with `m(sigma s, sigma t) = m(s, t)`,
    /// identity first.
    pub fn diagram_automorphisms(&self) -> Vec<Vec<usize>> {
        use itertools::Itertools;
        let k = self.rank();
        (0..k)
            .permutations(k)
            .filter(|p| {
                (0..k).all(|i| (0..k).all(|j| self.orders[p[i]][p[j]] == self.orders[i][j]))
            })
            .collect()
    }

    fn named(names: &[&str], m: Vec<Vec<u64>>) -> Self {
        Self::new(names.iter().map(|s| s.to_string()).collect(), m).expect("valid preset")
    }

    /// Dihedral group `I_2(m)` on generators `s, t`; `0` gives the infinite
    /// dihedral group.
    pub fn dihedral(m: u64) -> Self {
        Self::named(&["s", "t"], vec![vec![1, m], vec![m, 1]])
    }

    /// Rank-3 group with `m_st = p`, `m_tu = q`, `m_su = r`.
    pub fn triangle(p: u64, q: u64, r: u64) -> Self {
        Self::named(
            &["s", "t", "u"],
            vec![vec![1, p, r], vec![p, 1, q], vec![r, q, 1]],
        )
    }

    /// Symmetric group `S_4` as the Coxeter group `A_3`.
    pub fn a3() -> Self {
        Self::triangle(3, 3, 2)
    }

    /// The group of order two.
    pub fn rank_one() -> Self {
        Self::named(&["s"], vec![vec![1]])
    }
}

/// A word over the generators, stored as generator indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    /// `v(i)`: the prefix of length `i`, or the whole word when `i >= n`.
    pub fn prefix(&self, i: usize) -> Word {
        Word(self.0[..i.min(self.len())].to_vec())
    }

    /// `v(i, j)` for `1 <= i <= j <= n`: letters `i..=j` (1-based).
    pub fn subword(&self, i: usize, j: usize) -> Word {
        Word(self.0[i - 1..j].to_vec())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Relabels letters by a generator permutation.
    pub fn permute(&self, sigma: &[usize]) -> Word {
        Word(self.0.iter().map(|&s| sigma[s]).collect())
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

/// Which side a generator multiplies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// An element of the group in the geometric representation.
#[derive(Debug, Clone)]
pub struct GroupElement {
    mat: Vec<FieldScalar>,
    inv: Vec<FieldScalar>,
    len: usize,
}

impl GroupElement {
    pub fn length(&self) -> usize {
        self.len
    }

    pub fn is_identity(&self) -> bool {
        self.len == 0
    }

    /// Row-major `k x k` matrix; column `j` is the image of `alpha_j`.
    pub fn matrix(&self) -> &[FieldScalar] {
        &self.mat
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            mat: self.inv.clone(),
            inv: self.mat.clone(),
            len: self.len,
        }
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && self.mat == other.mat
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.len.hash(state);
        self.mat.hash(state);
    }
}

/// Left and right descent sets of an element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Descents {
    pub length: usize,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// A Coxeter group realised through its geometric representation over an
/// exact field, with memoised voracious projections.
pub struct CoxeterGroup {
    matrix: CoxeterMatrix,
    field: FieldContext,
    gram: Vec<FieldScalar>,
    two_gram: Vec<FieldScalar>,
    element_cap: usize,
    pub(crate) projections: RwLock<HashMap<GroupElement, GroupElement>>,
}

impl fmt::Debug for CoxeterGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterGroup")
            .field("matrix", &self.matrix)
            .field("field_modulus", &self.field.modulus())
            .finish()
    }
}

impl CoxeterGroup {
    pub fn new(matrix: CoxeterMatrix) -> Self {
        let field = FieldContext::new(matrix.field_modulus());
        let gram = gram_matrix(&matrix, &field);
        let two_gram = gram.iter().map(|x| x.scale_int(2)).collect();
        CoxeterGroup {
            matrix,
            field,
            gram,
            two_gram,
            element_cap: DEFAULT_ELEMENT_CAP,
            projections: RwLock::new(HashMap::new()),
        }
    }

    pub fn with_element_cap(mut self, cap: usize) -> Self {
        self.element_cap = cap;
        self
    }

    pub fn coxeter_matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn generators(&self) -> &[String] {
        self.matrix.generators()
    }

    /// `B(alpha_s, alpha_t)`.
    pub fn gram(&self, s: usize, t: usize) -> &FieldScalar {
        &self.gram[s * self.rank() + t]
    }

    pub fn gram_matrix(&self) -> &[FieldScalar] {
        &self.gram
    }

    /// `B(u, v)` for vectors in the simple-root basis.
    pub fn bilinear(&self, u: &[FieldScalar], v: &[FieldScalar]) -> FieldScalar {
        let k = self.rank();
        let mut acc = self.field.zero();
        for i in 0..k {
            if u[i].is_zero() {
                continue;
            }
            let bv = self.gram_row_dot(i, v);
            acc = &acc + &self.field.mul(&u[i], &bv);
        }
        acc
    }

    /// `B(alpha_s, v)`.
    pub fn gram_row_dot(&self, s: usize, v: &[FieldScalar]) -> FieldScalar {
        let k = self.rank();
        let mut acc = self.field.zero();
        for j in 0..k {
            if !v[j].is_zero() {
                acc = &acc + &self.field.mul(&self.gram[s * k + j], &v[j]);
            }
        }
        acc
    }

    /// The reflection `s(v) = v - 2 B(alpha_s, v) alpha_s`.
    pub fn reflect_simple(&self, s: usize, v: &[FieldScalar]) -> Vec<FieldScalar> {
        let b = self.gram_row_dot(s, v);
        let mut out = v.to_vec();
        out[s] = &out[s] - &b.scale_int(2);
        out
    }

    pub fn identity(&self) -> GroupElement {
        let k = self.rank();
        let mut mat = vec![self.field.zero(); k * k];
        for i in 0..k {
            mat[i * k + i] = self.field.one();
        }
        GroupElement {
            inv: mat.clone(),
            mat,
            len: 0,
        }
    }

    pub fn generator(&self, s: usize) -> GroupElement {
        self.apply_generator(&self.identity(), s, Side::Right)
    }

    /// Column `j` of the matrix: `g(alpha_j)`.
    pub fn image_of_simple(&self, g: &GroupElement, j: usize) -> Vec<FieldScalar> {
        let k = self.rank();
        (0..k).map(|i| g.mat[i * k + j].clone()).collect()
    }

    /// `g^-1(alpha_j)`.
    pub fn preimage_of_simple(&self, g: &GroupElement, j: usize) -> Vec<FieldScalar> {
        let k = self.rank();
        (0..k).map(|i| g.inv[i * k + j].clone()).collect()
    }

    fn mat_vec(&self, m: &[FieldScalar], v: &[FieldScalar]) -> Vec<FieldScalar> {
        let k = self.rank();
        (0..k)
            .map(|i| {
                let mut acc = self.field.zero();
                for j in 0..k {
                    if !v[j].is_zero() && !m[i * k + j].is_zero() {
                        acc = &acc + &self.field.mul(&m[i * k + j], &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    /// `g(v)`.
    pub fn act(&self, g: &GroupElement, v: &[FieldScalar]) -> Vec<FieldScalar> {
        self.mat_vec(&g.mat, v)
    }

    /// `g^-1(v)`.
    pub fn act_inverse(&self, g: &GroupElement, v: &[FieldScalar]) -> Vec<FieldScalar> {
        self.mat_vec(&g.inv, v)
    }

    /// Sign of a root: the sign of its coordinates, which all agree. The zero
    /// vector reports `Zero`.
    pub fn root_sign(&self, v: &[FieldScalar]) -> Sign {
        let mut found = Sign::Zero;
        for x in v {
            if x.is_zero() {
                continue;
            }
            let s = self.field.sign(x);
            if !cfg!(debug_assertions) {
                return s;
            }
            if found == Sign::Zero {
                found = s;
            } else {
                assert_eq!(found, s, "root is not sign-coherent");
            }
        }
        found
    }

    /// `gs` or `sg`. The new length is decided exactly: `l(gs) > l(g)` iff
    /// `g(alpha_s)` is positive, and `l(sg) > l(g)` iff `g^-1(alpha_s)` is.
    pub fn apply_generator(&self, g: &GroupElement, s: usize, side: Side) -> GroupElement {
        let k = self.rank();
        let col_op = |m: &[FieldScalar]| -> Vec<FieldScalar> {
            // M * S_s: column j becomes col_j - 2B(s,j) col_s.
            let mut out = m.to_vec();
            for j in 0..k {
                let f = &self.two_gram[s * k + j];
                if f.is_zero() {
                    continue;
                }
                for i in 0..k {
                    let t = self.field.mul(f, &m[i * k + s]);
                    out[i * k + j] = &out[i * k + j] - &t;
                }
            }
            out
        };
        let row_op = |m: &[FieldScalar]| -> Vec<FieldScalar> {
            // S_s * M: row s becomes row_s - 2 sum_i B(s,i) row_i.
            let mut out = m.to_vec();
            for j in 0..k {
                let mut acc = self.field.zero();
                for i in 0..k {
                    let f = &self.two_gram[s * k + i];
                    if !f.is_zero() && !m[i * k + j].is_zero() {
                        acc = &acc + &self.field.mul(f, &m[i * k + j]);
                    }
                }
                out[s * k + j] = &m[s * k + j] - &acc;
            }
            out
        };
        let (grows, mat, inv) = match side {
            Side::Right => {
                let grows = self.root_sign(&self.image_of_simple(g, s)) == Sign::Positive;
                (grows, col_op(&g.mat), row_op(&g.inv))
            }
            Side::Left => {
                let grows = self.root_sign(&self.preimage_of_simple(g, s)) == Sign::Positive;
                (grows, row_op(&g.mat), col_op(&g.inv))
            }
        };
        let len = if grows { g.len + 1 } else { g.len - 1 };
        GroupElement { mat, inv, len }
    }

    /// Element represented by `w`.
    pub fn element_of_word(&self, w: &Word) -> GroupElement {
        self.multiply_word(&self.identity(), w)
    }

    /// `g * w`.
    pub fn multiply_word(&self, g: &GroupElement, w: &Word) -> GroupElement {
        w.0.iter().fold(g.clone(), |acc, &s| {
            self.apply_generator(&acc, s, Side::Right)
        })
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        if b.len <= a.len {
            self.multiply_word(a, &self.shortlex_word(b))
        } else {
            // a * b = (b^-1 a^-1)^-1
            self.multiply_word(&b.inverse(), &self.shortlex_word(&a.inverse()))
                .inverse()
        }
    }

    /// `l(a^-1 b)`, the distance between `a` and `b` in the Cayley graph.
    pub fn distance(&self, a: &GroupElement, b: &GroupElement) -> usize {
        self.multiply(&a.inverse(), b).len
    }

    pub fn is_left_descent(&self, g: &GroupElement, s: usize) -> bool {
        self.root_sign(&self.preimage_of_simple(g, s)) == Sign::Negative
    }

    pub fn is_right_descent(&self, g: &GroupElement, s: usize) -> bool {
        self.root_sign(&self.image_of_simple(g, s)) == Sign::Negative
    }

    pub fn left_descents(&self, g: &GroupElement) -> Vec<usize> {
        (0..self.rank())
            .filter(|&s| self.is_left_descent(g, s))
            .collect()
    }

    pub fn right_descents(&self, g: &GroupElement) -> Vec<usize> {
        (0..self.rank())
            .filter(|&s| self.is_right_descent(g, s))
            .collect()
    }

    pub fn length_and_descents(&self, g: &GroupElement) -> Descents {
        Descents {
            length: g.len,
            left: self.left_descents(g),
            right: self.right_descents(g),
        }
    }

    /// Reduced word built by repeatedly stripping the smallest left descent.
    pub fn shortlex_word(&self, g: &GroupElement) -> Word {
        let mut cur = g.clone();
        let mut out = Vec::with_capacity(g.len);
        while cur.len > 0 {
            let s = (0..self.rank())
                .find(|&s| self.is_left_descent(&cur, s))
                .expect("nontrivial element has a left descent");
            cur = self.apply_generator(&cur, s, Side::Left);
            out.push(s);
        }
        Word(out)
    }

    /// Every reduced word for `g`, sorted.
    pub fn reduced_words_all(&self, g: &GroupElement) -> Vec<Word> {
        let mut memo: HashMap<GroupElement, Vec<Word>> = HashMap::new();
        self.reduced_words_rec(g, &mut memo)
    }

    fn reduced_words_rec(
        &self,
        g: &GroupElement,
        memo: &mut HashMap<GroupElement, Vec<Word>>,
    ) -> Vec<Word> {
        if g.len == 0 {
            return vec![Word::empty()];
        }
        if let Some(w) = memo.get(g) {
            return w.clone();
        }
        let mut out = Vec::new();
        for s in self.left_descents(g) {
            let rest = self.apply_generator(g, s, Side::Left);
            for w in self.reduced_words_rec(&rest, memo) {
                let mut letters = Vec::with_capacity(g.len);
                letters.push(s);
                letters.extend_from_slice(&w.0);
                out.push(Word(letters));
            }
        }
        memo.insert(g.clone(), out.clone());
        out
    }

    /// All elements of length at most `radius`, in breadth-first order.
    pub fn ball(&self, radius: usize) -> Result<Vec<GroupElement>> {
        let mut all = vec![self.identity()];
        let mut frontier = vec![self.identity()];
        for _ in 0..radius {
            let mut seen = HashSet::new();
            let mut next = Vec::new();
            for g in &frontier {
                for s in 0..self.rank() {
                    if self.is_right_descent(g, s) {
                        continue;
                    }
                    let h = self.apply_generator(g, s, Side::Right);
                    if seen.insert(h.clone()) {
                        next.push(h);
                    }
                }
            }
            if all.len() + next.len() > self.element_cap {
                return Err(Error::ElementCap(self.element_cap));
            }
            if next.is_empty() {
                break;
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        Ok(all)
    }

    /// Parses a word: single-character names may be concatenated, otherwise
    /// letters are comma separated.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::empty());
        }
        let index = |name: &str| -> Result<usize> {
            self.generators()
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
        };
        if text.contains(',') || !self.single_char_names() {
            text.split(',')
                .map(|p| index(p.trim()))
                .collect::<Result<Vec<_>>>()
                .map(Word)
        } else {
            text.chars()
                .map(|c| index(&c.to_string()))
                .collect::<Result<Vec<_>>>()
                .map(Word)
        }
    }

    fn single_char_names(&self) -> bool {
        self.generators().iter().all(|g| g.chars().count() == 1)
    }

    pub fn format_word(&self, w: &Word) -> String {
        let names = w.0.iter().map(|&s| self.generators()[s].as_str());
        if self.single_char_names() {
            names.collect()
        } else {
            names.collect::<Vec<_>>().join(",")
        }
    }

    /// Human-readable name of an element: its shortlex word, or `id`.
    pub fn element_name(&self, g: &GroupElement) -> String {
        if g.is_identity() {
            "id".to_string()
        } else {
            self.format_word(&self.shortlex_word(g))
        }
    }
}

/// The Gram matrix `B(alpha_s, alpha_t) = -cos(pi/m_st)`, with `-1` for
/// infinite orders and `1` on the diagonal.
pub fn gram_matrix(mat: &CoxeterMatrix, field: &FieldContext) -> Vec<FieldScalar> {
    let k = mat.rank();
    let mut out = Vec::with_capacity(k * k);
    for s in 0..k {
        for t in 0..k {
            out.push(if s == t {
                field.one()
            } else {
                match mat.order(s, t) {
                    Some(m) => -&field.cos_pi_over(m),
                    None => field.integer(-1),
                }
            });
        }
    }
    out
}

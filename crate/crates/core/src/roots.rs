//! Finite (possibly nonreduced) root systems over the simple-root
//! coordinate basis, and restriction by zeroing a subset of simple roots.
//!
//! Roots are integer coefficient vectors in Bourbaki order. Positive roots
//! are generated from the Cartan matrix by root-string closure; the
//! nonreduced `BC` family lists both `α` and `2α` explicitly. The invariant
//! form is symmetrized from the Cartan matrix and scaled so the longest
//! root has squared length 2.

use crate::matrix::Mat;
use crate::ratio::{rat, Rat};
use crate::{Error, Result};
use num::Zero;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

/// A root as an integer coefficient vector over the simple-root basis.
///
/// Only genuine roots are admitted: the zero vector and mixed-sign vectors
/// are rejected, so positivity is simply "all coefficients >= 0".
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Root {
    coeffs: Vec<i64>,
}

impl Root {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.iter().all(|&c| c == 0) {
            return Err(Error::NotARoot("zero vector".into()));
        }
        let pos = coeffs.iter().any(|&c| c > 0);
        let neg = coeffs.iter().any(|&c| c < 0);
        if pos && neg {
            return Err(Error::NotARoot(format!("mixed signs in {coeffs:?}")));
        }
        Ok(Root { coeffs })
    }

    /// Unit coordinate vector for the `i`-th simple root (0-based).
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut coeffs = vec![0; rank];
        coeffs[i] = 1;
        Root { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn negated(&self) -> Root {
        Root {
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }

    pub fn scaled(&self, k: i64) -> Result<Root> {
        Root::new(self.coeffs.iter().map(|&c| k * c).collect())
    }

    /// Coefficient-vector sum; a plain vector because it need not be a root.
    pub fn plus(&self, other: &Root) -> Vec<i64> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect()
    }

    pub fn minus(&self, other: &Root) -> Vec<i64> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect()
    }

    /// `true` iff `other - self` is coefficientwise nonnegative.
    pub fn dominated_by(&self, other: &Root) -> bool {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(a, b)| a <= b)
    }
}

/// Height-graded order; within a height, roots supported further to the
/// left come first (descending comparison coordinate by coordinate).
impl Ord for Root {
    fn cmp(&self, other: &Self) -> Ordering {
        self.height()
            .cmp(&other.height())
            .then_with(|| {
                for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
                    match b.cmp(a) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Root {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "{}", if c > 0 { "+" } else { "-" })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "ψ{}", i + 1)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Descending reverse-lexicographic comparison on coefficient vectors:
/// the canonical tie-break among simultaneous cascade maxima.
pub fn desc_rev_lex(a: &Root, b: &Root) -> Ordering {
    for (x, y) in a.coeffs().iter().rev().zip(b.coeffs().iter().rev()) {
        match y.cmp(x) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

/// Cartan type of a (possibly nonreduced) irreducible system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    BC,
}

impl TypeLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            TypeLabel::A => "A",
            TypeLabel::B => "B",
            TypeLabel::C => "C",
            TypeLabel::D => "D",
            TypeLabel::E => "E",
            TypeLabel::F => "F",
            TypeLabel::G => "G",
            TypeLabel::BC => "BC",
        }
    }

    /// Parses labels like `"E7"`, `"BC3"`, or a bare `"F"` (rank `None`).
    pub fn parse_with_rank(s: &str) -> Result<(TypeLabel, Option<usize>)> {
        let s = s.trim();
        let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let (letters, digits) = s.split_at(split);
        let label = match letters.to_ascii_uppercase().as_str() {
            "A" => TypeLabel::A,
            "B" => TypeLabel::B,
            "C" => TypeLabel::C,
            "D" => TypeLabel::D,
            "E" => TypeLabel::E,
            "F" => TypeLabel::F,
            "G" => TypeLabel::G,
            "BC" => TypeLabel::BC,
            other => {
                return Err(Error::InvalidSystem(format!(
                    "unknown type label {other:?}"
                )))
            }
        };
        let rank = if digits.is_empty() {
            None
        } else {
            Some(
                digits
                    .parse::<usize>()
                    .map_err(|e| Error::InvalidSystem(format!("bad rank {digits:?}: {e}")))?,
            )
        };
        Ok((label, rank))
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A root system with exact invariant form and a fixed positive-root order.
#[derive(Debug, Clone)]
pub struct RootSystem {
    label: TypeLabel,
    rank: usize,
    simple_roots: Vec<Root>,
    cartan: Vec<Vec<i64>>,
    gram: Vec<Vec<Rat>>,
    positive_roots: Vec<Root>,
    positive_set: HashSet<Vec<i64>>,
}

impl RootSystem {
    pub fn label(&self) -> TypeLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.label, self.rank)
    }

    pub fn simple_roots(&self) -> &[Root] {
        &self.simple_roots
    }

    /// Cartan matrix with `a[i][j] = 2 (ψ_i, ψ_j) / (ψ_j, ψ_j)`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn gram(&self) -> &[Vec<Rat>] {
        &self.gram
    }

    /// Positive roots, height-graded then ordered within a height.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    /// Membership of `v` in the full system (positive or negative).
    pub fn is_root_vec(&self, v: &[i64]) -> bool {
        if v.len() != self.rank {
            return false;
        }
        if self.positive_set.contains(v) {
            return true;
        }
        let neg: Vec<i64> = v.iter().map(|&c| -c).collect();
        self.positive_set.contains(&neg)
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.is_root_vec(r.coeffs())
    }

    pub fn is_positive_root(&self, v: &[i64]) -> bool {
        self.positive_set.contains(v)
    }

    /// Exact invariant pairing of two coefficient vectors.
    pub fn bilinear_vec(&self, a: &[i64], b: &[i64]) -> Result<Rat> {
        if a.len() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: a.len(),
            });
        }
        if b.len() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: b.len(),
            });
        }
        let mut acc = Rat::zero();
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                acc += &self.gram[i][j] * rat(ai * bj);
            }
        }
        Ok(acc)
    }

    pub fn bilinear(&self, a: &Root, b: &Root) -> Result<Rat> {
        self.bilinear_vec(a.coeffs(), b.coeffs())
    }

    pub fn orthogonal(&self, a: &Root, b: &Root) -> bool {
        self.bilinear(a, b).map(|x| x.is_zero()).unwrap_or(false)
    }

    /// `2 (α, β) / (β, β)`, an integer for any two roots.
    pub fn cartan_pairing(&self, alpha: &Root, beta: &Root) -> Result<i64> {
        let num = self.bilinear(alpha, beta)?;
        let den = self.bilinear(beta, beta)?;
        let q = num * rat(2) / den;
        if !q.denom().is_zero() && q.denom() == &num::BigInt::from(1) {
            use num::ToPrimitive;
            q.numer()
                .to_i64()
                .ok_or_else(|| Error::InvalidSystem("Cartan pairing overflow".into()))
        } else {
            Err(Error::InvalidSystem(format!(
                "non-integral Cartan pairing for {alpha} against {beta}"
            )))
        }
    }

    /// Weyl reflection `s_β(α) = α − (2(α,β)/(β,β)) β`. Both arguments must
    /// be roots of the system.
    pub fn reflect(&self, beta: &Root, alpha: &Root) -> Result<Root> {
        if !self.is_root(beta) {
            return Err(Error::NotARoot(beta.to_string()));
        }
        if !self.is_root(alpha) {
            return Err(Error::NotARoot(alpha.to_string()));
        }
        let k = self.cartan_pairing(alpha, beta)?;
        let coeffs: Vec<i64> = alpha
            .coeffs()
            .iter()
            .zip(beta.coeffs())
            .map(|(a, b)| a - k * b)
            .collect();
        Root::new(coeffs)
    }

    /// Two roots are strongly orthogonal when neither their sum nor their
    /// difference is a root.
    pub fn strongly_orthogonal(&self, a: &Root, b: &Root) -> Result<bool> {
        if !self.is_root(a) {
            return Err(Error::NotARoot(a.to_string()));
        }
        if !self.is_root(b) {
            return Err(Error::NotARoot(b.to_string()));
        }
        Ok(!self.is_root_vec(&a.plus(b)) && !self.is_root_vec(&a.minus(b)))
    }

    /// Nonmultipliable positive roots (`2α` not a root); the whole positive
    /// set for reduced types.
    pub fn nonmultipliable_positive(&self) -> Vec<Root> {
        self.positive_roots
            .iter()
            .filter(|r| {
                let doubled: Vec<i64> = r.coeffs().iter().map(|&c| 2 * c).collect();
                !self.positive_set.contains(&doubled)
            })
            .cloned()
            .collect()
    }
}

/// Valid `(label, rank)` pairs for [`build_root_system`].
pub fn valid_pair(label: TypeLabel, rank: usize) -> Result<()> {
    let ok = match label {
        TypeLabel::A => rank >= 1,
        TypeLabel::B | TypeLabel::C => rank >= 2,
        TypeLabel::D => rank >= 4,
        TypeLabel::E => (6..=8).contains(&rank),
        TypeLabel::F => rank == 4,
        TypeLabel::G => rank == 2,
        TypeLabel::BC => rank >= 1,
    };
    if ok {
        Ok(())
    } else if label == TypeLabel::D && rank == 3 {
        Err(Error::InvalidSystem(
            "D3 coincides with A3; request A3 instead".into(),
        ))
    } else {
        Err(Error::InvalidSystem(format!(
            "invalid (type, rank) pair ({label}, {rank})"
        )))
    }
}

fn cartan_matrix(label: TypeLabel, rank: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; rank]; rank];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    // (i, j, a_ij, a_ji), 0-based
    let edge = |a: &mut Vec<Vec<i64>>, i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match label {
        TypeLabel::A => {
            for i in 0..rank.saturating_sub(1) {
                edge(&mut a, i, i + 1, -1, -1);
            }
        }
        TypeLabel::B | TypeLabel::BC => {
            // BC_n shares the B_n basis; rank 1 degenerates to a single node.
            for i in 0..rank.saturating_sub(2) {
                edge(&mut a, i, i + 1, -1, -1);
            }
            if rank >= 2 {
                edge(&mut a, rank - 2, rank - 1, -2, -1);
            }
        }
        TypeLabel::C => {
            for i in 0..rank.saturating_sub(2) {
                edge(&mut a, i, i + 1, -1, -1);
            }
            if rank >= 2 {
                edge(&mut a, rank - 2, rank - 1, -1, -2);
            }
        }
        TypeLabel::D => {
            for i in 0..rank.saturating_sub(2) {
                edge(&mut a, i, i + 1, -1, -1);
            }
            edge(&mut a, rank - 3, rank - 1, -1, -1);
            // undo the chain edge (n-2, n-1): Bourbaki D has the fork at n-2
            a[rank - 2][rank - 1] = 0;
            a[rank - 1][rank - 2] = 0;
        }
        TypeLabel::E => {
            // chain 1-3-4-5-6(-7)(-8), node 2 attached to node 4
            let chain = [0usize, 2, 3, 4, 5, 6, 7];
            for w in chain[..rank - 1].windows(2) {
                edge(&mut a, w[0], w[1], -1, -1);
            }
            edge(&mut a, 1, 3, -1, -1);
        }
        TypeLabel::F => {
            edge(&mut a, 0, 1, -1, -1);
            edge(&mut a, 1, 2, -2, -1);
            edge(&mut a, 2, 3, -1, -1);
        }
        TypeLabel::G => {
            edge(&mut a, 0, 1, -1, -3);
        }
    }
    a
}

/// Positive roots of the reduced system with the given Cartan matrix,
/// generated by root-string closure from the simple roots.
fn closure_positive_roots(cartan: &[Vec<i64>]) -> Vec<Root> {
    let rank = cartan.len();
    let mut found: HashSet<Vec<i64>> = HashSet::new();
    let mut by_height: Vec<Vec<Vec<i64>>> = vec![Vec::new()];
    let mut simple_layer = Vec::new();
    for i in 0..rank {
        let v = Root::simple(rank, i).coeffs().to_vec();
        found.insert(v.clone());
        simple_layer.push(v);
    }
    by_height.push(simple_layer);
    let mut h = 1;
    while !by_height[h].is_empty() {
        let mut next = Vec::new();
        for alpha in by_height[h].clone() {
            for j in 0..rank {
                // root string through alpha in the direction ψ_j:
                // q = p − <alpha, ψ_j^∨>, alpha + ψ_j is a root iff q > 0
                let pairing: i64 = alpha
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| c * cartan[i][j])
                    .sum();
                let mut p = 0i64;
                loop {
                    let mut down = alpha.clone();
                    down[j] -= p + 1;
                    if down.iter().all(|&c| c == 0) || !found.contains(&down) {
                        break;
                    }
                    p += 1;
                }
                if p - pairing > 0 {
                    let mut up = alpha.clone();
                    up[j] += 1;
                    if found.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        by_height.push(next);
        h += 1;
    }
    let mut out: Vec<Root> = found
        .into_iter()
        .map(|v| Root::new(v).expect("closure produced a root"))
        .collect();
    out.sort();
    out
}

/// Builds the root system for a valid `(label, rank)` pair.
pub fn build_root_system(label: TypeLabel, rank: usize) -> Result<RootSystem> {
    valid_pair(label, rank)?;
    let cartan = cartan_matrix(label, rank);
    let mut positive = closure_positive_roots(&cartan);

    // Provisional simple-root lengths from the symmetry constraint
    // L_i / L_j = a_ij / a_ji, propagated over the (connected) diagram.
    let mut lengths: Vec<Option<Rat>> = vec![None; rank];
    lengths[0] = Some(rat(2));
    let mut queue = vec![0usize];
    while let Some(i) = queue.pop() {
        let li = lengths[i].clone().unwrap();
        for j in 0..rank {
            if i != j && cartan[i][j] != 0 && lengths[j].is_none() {
                lengths[j] = Some(&li * rat(cartan[j][i]) / rat(cartan[i][j]));
                queue.push(j);
            }
        }
    }
    let lengths: Vec<Rat> = lengths
        .into_iter()
        .map(|l| l.ok_or_else(|| Error::InvalidSystem("disconnected diagram".into())))
        .collect::<Result<_>>()?;
    let mut gram = vec![vec![Rat::zero(); rank]; rank];
    for i in 0..rank {
        for j in 0..rank {
            gram[i][j] = rat(cartan[i][j]) * &lengths[j] / rat(2);
        }
    }

    if label == TypeLabel::BC {
        // Double every root of minimal length.
        let sq = |v: &Root, gram: &Vec<Vec<Rat>>| -> Rat {
            let mut acc = Rat::zero();
            for (i, &ai) in v.coeffs().iter().enumerate() {
                for (j, &bj) in v.coeffs().iter().enumerate() {
                    if ai != 0 && bj != 0 {
                        acc += &gram[i][j] * rat(ai * bj);
                    }
                }
            }
            acc
        };
        let min_len = positive
            .iter()
            .map(|r| sq(r, &gram))
            .min()
            .expect("nonempty system");
        let doubles: Vec<Root> = positive
            .iter()
            .filter(|r| sq(r, &gram) == min_len)
            .map(|r| r.scaled(2).expect("double of a root"))
            .collect();
        positive.extend(doubles);
        positive.sort();
    }

    // Rescale so the longest root has squared length 2.
    let sq_len = |v: &Root| -> Rat {
        let mut acc = Rat::zero();
        for (i, &ai) in v.coeffs().iter().enumerate() {
            for (j, &bj) in v.coeffs().iter().enumerate() {
                if ai != 0 && bj != 0 {
                    acc += &gram[i][j] * rat(ai * bj);
                }
            }
        }
        acc
    };
    let max_len = positive.iter().map(&sq_len).max().expect("nonempty");
    if max_len != rat(2) {
        let scale = rat(2) / max_len;
        for row in gram.iter_mut() {
            for x in row.iter_mut() {
                *x *= &scale;
            }
        }
    }

    let positive_set: HashSet<Vec<i64>> =
        positive.iter().map(|r| r.coeffs().to_vec()).collect();
    Ok(RootSystem {
        label,
        rank,
        simple_roots: (0..rank).map(|i| Root::simple(rank, i)).collect(),
        cartan,
        gram,
        positive_roots: positive,
        positive_set,
    })
}

/// Classical count of positive roots, used as an independent cross-check.
pub fn classical_positive_count(label: TypeLabel, rank: usize) -> usize {
    match label {
        TypeLabel::A => rank * (rank + 1) / 2,
        TypeLabel::B | TypeLabel::C => rank * rank,
        TypeLabel::D => rank * (rank - 1),
        TypeLabel::E => match rank {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        TypeLabel::F => 24,
        TypeLabel::G => 6,
        TypeLabel::BC => rank * rank + rank,
    }
}

/// A root system restricted by deleting the coordinates in `zero_set`.
///
/// Exactly correct for restrictions whose Satake diagram carries no
/// involution; other patterns are not detected here and are the caller's
/// responsibility. Root multiplicities are reported as fiber cardinalities,
/// which again is only valid in the involution-free case.
#[derive(Debug, Clone)]
pub struct RestrictedSystem {
    ambient: RootSystem,
    zero_set: Vec<usize>,
    surviving: Vec<usize>,
    restricted_positive: Vec<Root>,
    fibers: BTreeMap<Root, Vec<Root>>,
    zero_fiber: Vec<Root>,
}

impl RestrictedSystem {
    pub fn ambient(&self) -> &RootSystem {
        &self.ambient
    }

    /// 1-based indices of the zeroed simple roots.
    pub fn zero_set(&self) -> Vec<usize> {
        self.zero_set.iter().map(|&i| i + 1).collect()
    }

    /// 1-based indices of the surviving simple roots.
    pub fn surviving(&self) -> Vec<usize> {
        self.surviving.iter().map(|&i| i + 1).collect()
    }

    pub fn restricted_positive(&self) -> &[Root] {
        &self.restricted_positive
    }

    /// Ambient positive roots restricting to the given restricted root.
    pub fn fiber(&self, restricted: &Root) -> Option<&[Root]> {
        self.fibers.get(restricted).map(|v| v.as_slice())
    }

    pub fn fibers(&self) -> &BTreeMap<Root, Vec<Root>> {
        &self.fibers
    }

    /// Ambient positive roots restricting to zero.
    pub fn zero_fiber(&self) -> &[Root] {
        &self.zero_fiber
    }

    pub fn restrict_vec(&self, ambient: &Root) -> Vec<i64> {
        self.surviving
            .iter()
            .map(|&i| ambient.coeffs()[i])
            .collect()
    }

    /// Realizes the restricted roots as a root system of their own, with the
    /// invariant form induced by orthogonal projection away from the zeroed
    /// simple roots. Fails when the restricted data does not match a known
    /// Cartan type.
    pub fn restricted_root_system(&self) -> Result<RootSystem> {
        let rank = self.surviving.len();
        let amb = &self.ambient;
        // Projection of each surviving ψ_i off span{ψ_k : k zeroed}, in the
        // ambient invariant form.
        let nz = self.zero_set.len();
        let gram_zero = Mat::from_fn(nz, nz, |a, b| {
            amb.gram()[self.zero_set[a]][self.zero_set[b]].clone()
        });
        let mut proj_gram = vec![vec![Rat::zero(); rank]; rank];
        let mut corrections: Vec<Vec<Rat>> = Vec::with_capacity(rank);
        for &i in &self.surviving {
            if nz == 0 {
                corrections.push(Vec::new());
                continue;
            }
            let rhs: Vec<Rat> = self
                .zero_set
                .iter()
                .map(|&k| amb.gram()[k][i].clone())
                .collect();
            let c = gram_zero
                .solve(&rhs)
                .ok_or_else(|| Error::InvalidRestriction("degenerate zero-set Gram".into()))?;
            corrections.push(c);
        }
        for (a, &i) in self.surviving.iter().enumerate() {
            for (b, &j) in self.surviving.iter().enumerate() {
                let mut g = amb.gram()[i][j].clone();
                for (t, &k) in self.zero_set.iter().enumerate() {
                    g -= &corrections[a][t] * &amb.gram()[k][j];
                }
                proj_gram[a][b] = g;
            }
        }

        let candidates: &[TypeLabel] = &[
            TypeLabel::A,
            TypeLabel::B,
            TypeLabel::C,
            TypeLabel::D,
            TypeLabel::BC,
            TypeLabel::E,
            TypeLabel::F,
            TypeLabel::G,
        ];
        let ours: BTreeSet<Vec<i64>> = self
            .restricted_positive
            .iter()
            .map(|r| r.coeffs().to_vec())
            .collect();
        for &label in candidates {
            if valid_pair(label, rank).is_err() {
                continue;
            }
            let cand = build_root_system(label, rank)?;
            let theirs: BTreeSet<Vec<i64>> = cand
                .positive_roots()
                .iter()
                .map(|r| r.coeffs().to_vec())
                .collect();
            if ours == theirs {
                // keep the classified combinatorics but the projected form,
                // rescaled so the longest root has squared length 2
                let sq = |v: &Root, g: &Vec<Vec<Rat>>| -> Rat {
                    let mut acc = Rat::zero();
                    for (x, &ai) in v.coeffs().iter().enumerate() {
                        for (y, &bj) in v.coeffs().iter().enumerate() {
                            if ai != 0 && bj != 0 {
                                acc += &g[x][y] * rat(ai * bj);
                            }
                        }
                    }
                    acc
                };
                let max_len = self
                    .restricted_positive
                    .iter()
                    .map(|r| sq(r, &proj_gram))
                    .max()
                    .expect("nonempty restriction");
                let scale = rat(2) / max_len;
                let mut gram = proj_gram.clone();
                for row in gram.iter_mut() {
                    for x in row.iter_mut() {
                        *x *= &scale;
                    }
                }
                let positive_set: HashSet<Vec<i64>> = self
                    .restricted_positive
                    .iter()
                    .map(|r| r.coeffs().to_vec())
                    .collect();
                return Ok(RootSystem {
                    label,
                    rank,
                    simple_roots: (0..rank).map(|i| Root::simple(rank, i)).collect(),
                    cartan: cand.cartan,
                    gram,
                    positive_roots: self.restricted_positive.clone(),
                    positive_set,
                });
            }
        }
        Err(Error::UnsupportedPattern(format!(
            "restriction of {} by {:?} is not a recognized root system",
            amb.name(),
            self.zero_set()
        )))
    }
}

/// Restricts `sys` by zeroing the given 1-based simple-root indices.
pub fn restrict(sys: &RootSystem, zero_set: &[usize]) -> Result<RestrictedSystem> {
    let mut zs: Vec<usize> = Vec::new();
    for &i in zero_set {
        if i == 0 || i > sys.rank() {
            return Err(Error::InvalidRestriction(format!(
                "simple-root index {i} out of range 1..={}",
                sys.rank()
            )));
        }
        if !zs.contains(&(i - 1)) {
            zs.push(i - 1);
        }
    }
    zs.sort_unstable();
    if zs.len() == sys.rank() {
        return Err(Error::InvalidRestriction(
            "zero set must be a proper subset of the simple roots".into(),
        ));
    }
    let surviving: Vec<usize> = (0..sys.rank()).filter(|i| !zs.contains(i)).collect();

    let mut fibers: BTreeMap<Root, Vec<Root>> = BTreeMap::new();
    let mut zero_fiber = Vec::new();
    for r in sys.positive_roots() {
        let v: Vec<i64> = surviving.iter().map(|&i| r.coeffs()[i]).collect();
        if v.iter().all(|&c| c == 0) {
            zero_fiber.push(r.clone());
        } else {
            fibers
                .entry(Root::new(v).expect("nonzero restriction"))
                .or_default()
                .push(r.clone());
        }
    }
    for members in fibers.values_mut() {
        members.sort();
    }
    let mut restricted_positive: Vec<Root> = fibers.keys().cloned().collect();
    restricted_positive.sort();
    Ok(RestrictedSystem {
        ambient: sys.clone(),
        zero_set: zs,
        surviving,
        restricted_positive,
        fibers,
        zero_fiber,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat_frac;

    fn sys(label: TypeLabel, rank: usize) -> RootSystem {
        build_root_system(label, rank).unwrap()
    }

    #[test]
    fn counts_match_classical_formulas() {
        let cases = [
            (TypeLabel::A, 1),
            (TypeLabel::A, 5),
            (TypeLabel::B, 2),
            (TypeLabel::B, 5),
            (TypeLabel::C, 3),
            (TypeLabel::D, 4),
            (TypeLabel::D, 6),
            (TypeLabel::E, 6),
            (TypeLabel::E, 7),
            (TypeLabel::E, 8),
            (TypeLabel::F, 4),
            (TypeLabel::G, 2),
            (TypeLabel::BC, 1),
            (TypeLabel::BC, 3),
        ];
        for (l, r) in cases {
            let s = sys(l, r);
            assert_eq!(
                s.num_positive(),
                classical_positive_count(l, r),
                "count for {}{}",
                l,
                r
            );
        }
    }

    #[test]
    fn invalid_pairs_rejected() {
        assert!(build_root_system(TypeLabel::D, 3).is_err());
        assert!(build_root_system(TypeLabel::E, 9).is_err());
        assert!(build_root_system(TypeLabel::F, 3).is_err());
        assert!(build_root_system(TypeLabel::G, 3).is_err());
        assert!(build_root_system(TypeLabel::B, 1).is_err());
    }

    #[test]
    fn a1_is_trivial() {
        let s = sys(TypeLabel::A, 1);
        assert_eq!(s.positive_roots(), &[Root::simple(1, 0)]);
    }

    #[test]
    fn g2_contains_highest_root() {
        let s = sys(TypeLabel::G, 2);
        assert!(s.is_positive_root(&[3, 2]));
        assert_eq!(s.num_positive(), 6);
    }

    #[test]
    fn g2_short_root_length() {
        // long-root normalization <β1, β1> = 2 forces |ψ1|² = 2/3
        let s = sys(TypeLabel::G, 2);
        let psi1 = Root::simple(2, 0);
        assert_eq!(s.bilinear(&psi1, &psi1).unwrap(), rat_frac(2, 3));
        let beta1 = Root::new(vec![3, 2]).unwrap();
        assert_eq!(s.bilinear(&beta1, &beta1).unwrap(), rat(2));
    }

    #[test]
    fn a2_simple_pairing() {
        let s = sys(TypeLabel::A, 2);
        let p1 = Root::simple(2, 0);
        let p2 = Root::simple(2, 1);
        assert_eq!(s.bilinear(&p1, &p2).unwrap(), rat(-1));
        assert_eq!(s.bilinear(&p1, &p1).unwrap(), rat(2));
    }

    #[test]
    fn b2_membership_examples() {
        let s = sys(TypeLabel::B, 2);
        assert!(s.is_root_vec(&[1, 2]));
        assert!(!s.is_root_vec(&[2, 1]));
    }

    #[test]
    fn reflection_examples() {
        let a2 = sys(TypeLabel::A, 2);
        let highest = Root::new(vec![1, 1]).unwrap();
        let p1 = Root::simple(2, 0);
        let p2 = Root::simple(2, 1);
        assert_eq!(a2.reflect(&p1, &highest).unwrap(), p2);

        let g2 = sys(TypeLabel::G, 2);
        let beta1 = Root::new(vec![3, 2]).unwrap();
        let once = g2.reflect(&Root::simple(2, 1), &beta1).unwrap();
        let twice = g2.reflect(&Root::simple(2, 1), &once).unwrap();
        assert_eq!(twice, beta1);

        assert!(g2
            .reflect(&Root::new(vec![1, 1]).unwrap(), &beta1)
            .is_ok());
        // a non-root β is rejected
        assert!(g2
            .reflect(&Root::new(vec![2, 2]).unwrap(), &beta1)
            .is_err());
    }

    #[test]
    fn reflection_permutes_roots() {
        for (l, r) in [(TypeLabel::B, 3), (TypeLabel::G, 2), (TypeLabel::BC, 2)] {
            let s = sys(l, r);
            for beta in s.positive_roots() {
                let mut seen = HashSet::new();
                for alpha in s.positive_roots() {
                    let img = s.reflect(beta, alpha).unwrap();
                    assert!(s.is_root(&img));
                    assert!(seen.insert(img.coeffs().to_vec()));
                }
            }
        }
    }

    #[test]
    fn strong_orthogonality_examples() {
        let a3 = sys(TypeLabel::A, 3);
        let p1 = Root::simple(3, 0);
        let p2 = Root::simple(3, 1);
        let p3 = Root::simple(3, 2);
        assert!(a3.strongly_orthogonal(&p1, &p3).unwrap());
        let a2 = sys(TypeLabel::A, 2);
        assert!(!a2
            .strongly_orthogonal(&Root::simple(2, 0), &Root::simple(2, 1))
            .unwrap());
        assert!(!a3.strongly_orthogonal(&p1, &p2).unwrap());
    }

    #[test]
    fn closure_property_exhaustive() {
        for (l, r) in [
            (TypeLabel::A, 4),
            (TypeLabel::B, 3),
            (TypeLabel::C, 3),
            (TypeLabel::D, 4),
            (TypeLabel::G, 2),
            (TypeLabel::F, 4),
            (TypeLabel::BC, 2),
        ] {
            let s = sys(l, r);
            for a in s.positive_roots() {
                for b in s.positive_roots() {
                    let sum = a.plus(b);
                    if s.is_root_vec(&sum) {
                        assert!(s.is_positive_root(&sum), "{}: {a} + {b}", s.name());
                    }
                }
            }
        }
    }

    #[test]
    fn bc_lists_both_alpha_and_two_alpha() {
        let s = sys(TypeLabel::BC, 2);
        // short basis direction e2 = ψ2 and its double
        assert!(s.is_positive_root(&[0, 1]));
        assert!(s.is_positive_root(&[0, 2]));
        // e1 = ψ1 + ψ2 and its double
        assert!(s.is_positive_root(&[1, 1]));
        assert!(s.is_positive_root(&[2, 2]));
        let nm = s.nonmultipliable_positive();
        assert_eq!(nm.len(), 4); // C2-like: e1±e2, 2e1, 2e2
        assert_eq!(s.num_positive(), 6);
    }

    #[test]
    fn gram_symmetric_positive_definite_on_simples() {
        for (l, r) in [
            (TypeLabel::A, 3),
            (TypeLabel::B, 4),
            (TypeLabel::C, 4),
            (TypeLabel::D, 5),
            (TypeLabel::F, 4),
            (TypeLabel::G, 2),
            (TypeLabel::E, 6),
            (TypeLabel::BC, 3),
        ] {
            let s = sys(l, r);
            let g = Mat::from_fn(r, r, |i, j| s.gram()[i][j].clone());
            assert_eq!(g, g.transpose(), "{} gram symmetric", s.name());
            // leading principal minors positive
            for k in 1..=r {
                let sub = Mat::from_fn(k, k, |i, j| s.gram()[i][j].clone());
                assert!(sub.det() > Rat::zero(), "{} minor {k}", s.name());
            }
        }
    }

    #[test]
    fn restriction_identity_when_zero_set_empty() {
        let s = sys(TypeLabel::A, 3);
        let r = restrict(&s, &[]).unwrap();
        assert!(r.fibers().values().all(|f| f.len() == 1));
        assert_eq!(r.restricted_positive().len(), s.num_positive());
    }

    #[test]
    fn restriction_partition_exhaustive() {
        let s = sys(TypeLabel::A, 5);
        let r = restrict(&s, &[1, 3, 5]).unwrap();
        let total: usize =
            r.fibers().values().map(|f| f.len()).sum::<usize>() + r.zero_fiber().len();
        assert_eq!(total, s.num_positive());
    }

    #[test]
    fn sl3h_fiber_over_restricted_highest() {
        let s = sys(TypeLabel::A, 5);
        let r = restrict(&s, &[1, 3, 5]).unwrap();
        let highest = Root::new(vec![1, 1]).unwrap();
        let fiber = r.fiber(&highest).unwrap();
        let expect: BTreeSet<Vec<i64>> = [
            vec![1, 1, 1, 1, 1],
            vec![0, 1, 1, 1, 1],
            vec![1, 1, 1, 1, 0],
            vec![0, 1, 1, 1, 0],
        ]
        .into_iter()
        .collect();
        let got: BTreeSet<Vec<i64>> = fiber.iter().map(|r| r.coeffs().to_vec()).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn e6_restriction_shape() {
        let s = sys(TypeLabel::E, 6);
        let r = restrict(&s, &[2, 3, 4, 5]).unwrap();
        assert_eq!(r.zero_fiber().len(), 12);
        assert_eq!(r.surviving().len(), 2);
        let rsys = r.restricted_root_system().unwrap();
        assert_eq!(rsys.label(), TypeLabel::A);
        assert_eq!(rsys.rank(), 2);
        // all three fibers have cardinality 8
        assert!(r.fibers().values().all(|f| f.len() == 8));
    }

    #[test]
    fn sl3h_restricted_system_is_a2() {
        let s = sys(TypeLabel::A, 5);
        let r = restrict(&s, &[1, 3, 5]).unwrap();
        let rsys = r.restricted_root_system().unwrap();
        assert_eq!(rsys.label(), TypeLabel::A);
        assert_eq!(rsys.rank(), 2);
        assert!(r.fibers().values().all(|f| f.len() == 4));
    }

    #[test]
    fn restrict_rejects_full_zero_set() {
        let s = sys(TypeLabel::A, 2);
        assert!(restrict(&s, &[1, 2]).is_err());
        assert!(restrict(&s, &[3]).is_err());
    }

    #[test]
    fn root_order_is_height_then_leftmost() {
        let s = sys(TypeLabel::A, 2);
        let ps: Vec<&Root> = s.positive_roots().iter().collect();
        assert_eq!(ps[0].coeffs(), &[1, 0]);
        assert_eq!(ps[1].coeffs(), &[0, 1]);
        assert_eq!(ps[2].coeffs(), &[1, 1]);
    }

    #[test]
    fn root_constructor_rejects_bad_vectors() {
        assert!(Root::new(vec![0, 0]).is_err());
        assert!(Root::new(vec![1, -1]).is_err());
        assert!(Root::new(vec![-1, -1]).is_ok());
    }
}

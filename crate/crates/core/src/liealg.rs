//! Nilpotent Lie algebras over the rationals with exact structure
//! constants, layered along a cascade: strictly upper-triangular matrices,
//! split nilradicals via Chevalley constants, and the two involution-free
//! restricted nilradicals.

use crate::cascade::{compute_layers, kostant_cascade, LayerPair};
use crate::ratio::{rat, rat_from_string, rat_to_string, Rat};
use crate::report::VerificationReport;
use crate::roots::{restrict, Root, RootSystem, TypeLabel};
use crate::{Error, Result};
use num::{One, ToPrimitive, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// A labeled basis vector: a strictly-upper-triangular matrix position, or
/// a root space with a multiplicity slot (slots enumerate the ambient roots
/// in the fiber of a restricted root).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BasisLabel {
    Matrix { row: usize, col: usize },
    RootSpace { root: Root, slot: usize },
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Matrix { row, col } => write!(f, "e[{row},{col}]"),
            BasisLabel::RootSpace { root, slot } => {
                let coeffs: Vec<String> =
                    root.coeffs().iter().map(|c| c.to_string()).collect();
                if *slot == 0 {
                    write!(f, "g[{}]", coeffs.join(","))
                } else {
                    write!(f, "g[{}]#{slot}", coeffs.join(","))
                }
            }
        }
    }
}

impl BasisLabel {
    pub fn parse(s: &str) -> Result<BasisLabel> {
        let bad = || Error::Parse(format!("bad basis label {s:?}"));
        if let Some(rest) = s.strip_prefix("e[") {
            let inner = rest.strip_suffix(']').ok_or_else(bad)?;
            let (r, c) = inner.split_once(',').ok_or_else(bad)?;
            return Ok(BasisLabel::Matrix {
                row: r.trim().parse().map_err(|_| bad())?,
                col: c.trim().parse().map_err(|_| bad())?,
            });
        }
        if let Some(rest) = s.strip_prefix("g[") {
            let (inner, slot) = match rest.split_once("]#") {
                Some((inner, slot)) => (inner, slot.parse().map_err(|_| bad())?),
                None => (rest.strip_suffix(']').ok_or_else(bad)?, 0),
            };
            let coeffs: Vec<i64> = inner
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            return Ok(BasisLabel::RootSpace {
                root: Root::new(coeffs)?,
                slot,
            });
        }
        Err(bad())
    }
}

/// Sparse coefficient vector over the algebra basis, sorted by index.
pub type SparseVec = Vec<(usize, Rat)>;

/// A finite-dimensional nilpotent Lie algebra over the rationals with a
/// designated layering `n = m_1 ⊕ … ⊕ m_m`, `m_r = z_r ⊕ v_r`.
#[derive(Debug, Clone)]
pub struct NilpotentAlgebra {
    basis: Vec<BasisLabel>,
    /// Brackets for `i < j` only; antisymmetry is implicit.
    sc: BTreeMap<(usize, usize), SparseVec>,
    layers: Vec<Vec<usize>>,
    centers: Vec<Vec<usize>>,
    complements: Vec<Vec<usize>>,
}

impl NilpotentAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisLabel] {
        &self.basis
    }

    pub fn num_layers(&self) -> usize {
        self.layers.len()
    }

    /// Basis indices of `m_r` (0-based layer index).
    pub fn layer(&self, r: usize) -> &[usize] {
        &self.layers[r]
    }

    pub fn center(&self, r: usize) -> &[usize] {
        &self.centers[r]
    }

    pub fn complement(&self, r: usize) -> &[usize] {
        &self.complements[r]
    }

    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    pub fn centers(&self) -> &[Vec<usize>] {
        &self.centers
    }

    pub fn complements(&self) -> &[Vec<usize>] {
        &self.complements
    }

    /// Bracket of two basis vectors as a sparse vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Equal => Vec::new(),
            Ordering::Less => self.sc.get(&(i, j)).cloned().unwrap_or_default(),
            Ordering::Greater => self
                .sc
                .get(&(j, i))
                .map(|v| v.iter().map(|(k, c)| (*k, -c.clone())).collect())
                .unwrap_or_default(),
        }
    }

    /// Bilinear extension of the structure constants to coefficient vectors.
    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Result<Vec<Rat>> {
        let n = self.dim();
        if x.len() != n || y.len() != n {
            return Err(Error::RankMismatch {
                expected: n,
                got: if x.len() != n { x.len() } else { y.len() },
            });
        }
        let mut out = vec![Rat::zero(); n];
        for ((i, j), v) in &self.sc {
            let scale = &x[*i] * &y[*j] - &x[*j] * &y[*i];
            if scale.is_zero() {
                continue;
            }
            for (k, c) in v {
                out[*k] += &scale * c;
            }
        }
        Ok(out)
    }

    /// Index lookup by label.
    pub fn index_of(&self, label: &BasisLabel) -> Option<usize> {
        self.basis.iter().position(|b| b == label)
    }

    /// Sizes `d_r = dim(m_r / z_r) / 2`; errors when some `v_r` is odd.
    pub fn half_dims(&self) -> Result<Vec<usize>> {
        self.complements
            .iter()
            .map(|v| {
                if v.len() % 2 == 0 {
                    Ok(v.len() / 2)
                } else {
                    Err(Error::OddDimension(v.len()))
                }
            })
            .collect()
    }

    /// Lower central series dimensions until stabilization.
    pub fn lower_central_series_dims(&self) -> Vec<usize> {
        let n = self.dim();
        // current ideal as a basis of sparse row-echelon vectors
        let mut current: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                let mut e = vec![Rat::zero(); n];
                e[i] = rat(1);
                e
            })
            .collect();
        let mut dims = vec![n];
        loop {
            let mut span: Vec<Vec<Rat>> = Vec::new();
            for x in &current {
                for j in 0..n {
                    let mut y = vec![Rat::zero(); n];
                    y[j] = rat(1);
                    let br = self.bracket(x, &y).expect("dimensions agree");
                    add_to_span(&mut span, br);
                }
            }
            let d = span.len();
            dims.push(d);
            if d == 0 || d == *dims.get(dims.len() - 2).unwrap() {
                break;
            }
            current = span;
        }
        dims
    }
}

fn add_to_span(span: &mut Vec<Vec<Rat>>, mut v: Vec<Rat>) {
    for b in span.iter() {
        let lead = b.iter().position(|c| !c.is_zero()).unwrap();
        if !v[lead].is_zero() {
            let f = &v[lead] / &b[lead];
            for (vi, bi) in v.iter_mut().zip(b) {
                let sub = &f * bi;
                *vi -= sub;
            }
        }
    }
    if v.iter().any(|c| !c.is_zero()) {
        span.push(v);
    }
}

/// Strictly upper-triangular `ℓ×ℓ` matrices with the antidiagonal layering.
///
/// Layer `m_r` spans the hooks `e[r,s]`, `e[q, ℓ−r+1]` (`r+1 ≤ s,q ≤ ℓ−r`)
/// and the corner `e[r, ℓ−r+1]`, which is its center. Pair partners
/// `e[r,s], e[s, ℓ−r+1]` sit adjacently in the basis so the central pairing
/// is block anti-diagonal.
pub fn build_upper_triangular(ell: usize) -> Result<NilpotentAlgebra> {
    if ell < 2 {
        return Err(Error::InvalidAlgebra(format!(
            "upper-triangular size must be at least 2, got {ell}"
        )));
    }
    let m = ell / 2;
    let mut basis = Vec::new();
    let mut layers = Vec::new();
    let mut centers = Vec::new();
    let mut complements = Vec::new();
    for r in 1..=m {
        let mut layer = Vec::new();
        let mut comp = Vec::new();
        for s in r + 1..=ell - r {
            comp.push(basis.len());
            layer.push(basis.len());
            basis.push(BasisLabel::Matrix { row: r, col: s });
            comp.push(basis.len());
            layer.push(basis.len());
            basis.push(BasisLabel::Matrix {
                row: s,
                col: ell - r + 1,
            });
        }
        let center_idx = basis.len();
        layer.push(center_idx);
        basis.push(BasisLabel::Matrix {
            row: r,
            col: ell - r + 1,
        });
        layers.push(layer);
        centers.push(vec![center_idx]);
        complements.push(comp);
    }

    let pos: HashMap<(usize, usize), usize> = basis
        .iter()
        .enumerate()
        .map(|(i, b)| match b {
            BasisLabel::Matrix { row, col } => ((*row, *col), i),
            _ => unreachable!(),
        })
        .collect();
    let mut sc: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    for (i, bi) in basis.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate().skip(i + 1) {
            let (BasisLabel::Matrix { row: a, col: b }, BasisLabel::Matrix { row: c, col: d }) =
                (bi, bj)
            else {
                unreachable!()
            };
            // [e_{ab}, e_{cd}] = δ_{bc} e_{ad} − δ_{da} e_{cb}
            let mut out: SparseVec = Vec::new();
            if b == c {
                if let Some(&k) = pos.get(&(*a, *d)) {
                    out.push((k, rat(1)));
                }
            }
            if d == a {
                if let Some(&k) = pos.get(&(*c, *b)) {
                    out.push((k, rat(-1)));
                }
            }
            out.sort_by_key(|(k, _)| *k);
            if !out.is_empty() {
                sc.insert((i, j), out);
            }
        }
    }
    Ok(NilpotentAlgebra {
        basis,
        sc,
        layers,
        centers,
        complements,
    })
}

/// Chevalley structure constants `N_{α,β}` for the positive roots of a
/// reduced irreducible system, with the extraspecial pairs taken positive.
#[derive(Debug, Clone)]
pub struct ConstantsTable {
    /// Keyed by (index of α, index of β) in the positive-root order.
    table: HashMap<(usize, usize), i64>,
    index: HashMap<Vec<i64>, usize>,
}

impl ConstantsTable {
    /// `N_{α,β}` for positive roots; `None` when `α + β` is not a root.
    pub fn constant(&self, a: &Root, b: &Root) -> Option<i64> {
        let i = *self.index.get(a.coeffs())?;
        let j = *self.index.get(b.coeffs())?;
        self.table.get(&(i, j)).copied()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

/// Signed-root bookkeeping for the constants computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Signed_ {
    idx: usize,
    neg: bool,
}

struct ConstantsBuilder<'a> {
    sys: &'a RootSystem,
    positives: &'a [Root],
    index: HashMap<Vec<i64>, usize>,
    /// N for signed pairs, memoized.
    memo: HashMap<(Signed_, Signed_), Rat>,
}

impl<'a> ConstantsBuilder<'a> {
    fn vec_of(&self, s: Signed_) -> Vec<i64> {
        let v = self.positives[s.idx].coeffs();
        if s.neg {
            v.iter().map(|&c| -c).collect()
        } else {
            v.to_vec()
        }
    }

    fn signed_of_vec(&self, v: &[i64]) -> Option<Signed_> {
        if let Some(&i) = self.index.get(v) {
            return Some(Signed_ { idx: i, neg: false });
        }
        let neg: Vec<i64> = v.iter().map(|&c| -c).collect();
        self.index.get(&neg).map(|&i| Signed_ { idx: i, neg: true })
    }

    fn length_sq(&self, v: &[i64]) -> Rat {
        self.sys.bilinear_vec(v, v).expect("rank agrees")
    }

    /// `p`: the largest `k ≥ 0` with `b − k a` a root.
    fn string_down(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut p = 0i64;
        loop {
            let probe: Vec<i64> = b
                .iter()
                .zip(a)
                .map(|(x, y)| x - (p + 1) * y)
                .collect();
            if probe.iter().all(|&c| c == 0) || !self.sys.is_root_vec(&probe) {
                return p;
            }
            p += 1;
        }
    }

    /// N for an arbitrary signed pair whose sum is a root (0 otherwise).
    fn n(&mut self, x: Signed_, y: Signed_) -> Rat {
        if let Some(v) = self.memo.get(&(x, y)) {
            return v.clone();
        }
        let vx = self.vec_of(x);
        let vy = self.vec_of(y);
        let sum: Vec<i64> = vx.iter().zip(&vy).map(|(a, b)| a + b).collect();
        let value = if sum.iter().all(|&c| c == 0) || !self.sys.is_root_vec(&sum) {
            Rat::zero()
        } else if !x.neg && !y.neg {
            // positive pairs are seeded by `compute`; reaching here would
            // mean a pair of greater height than the current frontier
            panic!("positive pair requested before it was computed");
        } else if x.neg && y.neg {
            -self.n(
                Signed_ {
                    idx: x.idx,
                    neg: false,
                },
                Signed_ {
                    idx: y.idx,
                    neg: false,
                },
            )
        } else {
            // mixed signs: reduce via the triple rule
            // N_{u,−w} = (δ,δ)/(u,u) · (−N_{w,δ})   for δ = u − w positive
            // N_{u,−w} = (δ',δ')/(w,w) · (−N_{u,δ'}) for δ' = w − u positive
            let (u, w, flip) = if y.neg {
                (x, Signed_ { idx: y.idx, neg: false }, false)
            } else {
                (y, Signed_ { idx: x.idx, neg: false }, true)
            };
            let vu = self.vec_of(u);
            let vw = self.vec_of(w);
            let delta: Vec<i64> = vu.iter().zip(&vw).map(|(a, b)| a - b).collect();
            let val = if delta.iter().all(|&c| c >= 0) {
                let d = self.signed_of_vec(&delta).expect("difference is a root");
                let nn = self.n(w, d);
                -self.length_sq(&delta) / self.length_sq(&vu) * nn
            } else {
                let delta_p: Vec<i64> = delta.iter().map(|&c| -c).collect();
                let d = self.signed_of_vec(&delta_p).expect("difference is a root");
                let nn = self.n(u, d);
                -self.length_sq(&delta_p) / self.length_sq(&vw) * nn
            };
            // N_{u,−w} computed; undo the argument swap if needed
            if flip {
                -val
            } else {
                val
            }
        };
        self.memo.insert((x, y), value.clone());
        value
    }

    fn seed_positive(&mut self, i: usize, j: usize, val: Rat) {
        let x = Signed_ { idx: i, neg: false };
        let y = Signed_ { idx: j, neg: false };
        self.memo.insert((x, y), val.clone());
        self.memo.insert((y, x), -val);
    }

    fn compute(&mut self) -> Result<HashMap<(usize, usize), i64>> {
        // process target roots by increasing height
        let order: Vec<usize> = (0..self.positives.len()).collect();
        for &gi in &order {
            let gamma = &self.positives[gi];
            if gamma.height() == 1 {
                continue;
            }
            // all decompositions γ = α + β into positive roots, α < β
            let mut decomps: Vec<(usize, usize)> = Vec::new();
            for (ai, alpha) in self.positives.iter().enumerate() {
                if alpha >= gamma {
                    break;
                }
                let rest = gamma.minus(alpha);
                if let Some(&bi) = self.index.get(&rest) {
                    if ai < bi {
                        decomps.push((ai, bi));
                    }
                }
            }
            if decomps.is_empty() {
                return Err(Error::InvalidAlgebra(format!(
                    "no decomposition of {gamma} into positive roots"
                )));
            }
            // decomps are sorted by ai since positives are ordered
            let (e_a, e_b) = decomps[0];
            let p = self.string_down(
                self.positives[e_a].coeffs(),
                self.positives[e_b].coeffs(),
            );
            self.seed_positive(e_a, e_b, rat(p + 1));
            for &(ai, bi) in &decomps[1..] {
                // four-root identity with α1+β1 = a+b = γ:
                //   N_{α1,β1}N_{−a,−b}/(γ,γ) + N_{β1,−a}N_{α1,−b}/(β1−a,β1−a)
                //     + N_{−a,α1}N_{β1,−b}/(α1−a,α1−a) = 0
                let a_neg = Signed_ { idx: ai, neg: true };
                let b_neg = Signed_ { idx: bi, neg: true };
                let alpha1 = Signed_ { idx: e_a, neg: false };
                let beta1 = Signed_ { idx: e_b, neg: false };
                let diff1: Vec<i64> = self.positives[e_b]
                    .coeffs()
                    .iter()
                    .zip(self.positives[ai].coeffs())
                    .map(|(x, y)| x - y)
                    .collect();
                let diff2: Vec<i64> = self.positives[e_a]
                    .coeffs()
                    .iter()
                    .zip(self.positives[ai].coeffs())
                    .map(|(x, y)| x - y)
                    .collect();
                let t1 = self.n(beta1, a_neg) * self.n(alpha1, b_neg) / self.length_sq(&diff1);
                let t2 = self.n(a_neg, alpha1) * self.n(beta1, b_neg) / self.length_sq(&diff2);
                let denom = self.n(alpha1, beta1);
                let val = self.length_sq(gamma.coeffs()) * (t1 + t2) / denom;
                if val.is_zero() {
                    return Err(Error::InvalidAlgebra(format!(
                        "vanishing constant for {} + {}",
                        self.positives[ai], self.positives[bi]
                    )));
                }
                self.seed_positive(ai, bi, val);
            }
        }

        let mut out = HashMap::new();
        for ((x, y), v) in &self.memo {
            if !x.neg && !y.neg && !v.is_zero() {
                let i = v
                    .to_integer()
                    .to_i64()
                    .ok_or_else(|| Error::InvalidAlgebra("constant overflow".into()))?;
                if !v.denom().is_one() {
                    return Err(Error::InvalidAlgebra(format!(
                        "non-integral structure constant {v}"
                    )));
                }
                out.insert((x.idx, y.idx), i);
            }
        }
        Ok(out)
    }
}

/// Computes the Chevalley constants of a reduced irreducible system.
///
/// Sign convention: for each non-simple positive `γ`, the decomposition
/// `γ = α + β` with `α` minimal in the root order gets `N_{α,β} = +(p+1)`;
/// everything else follows from the bilinear identities. The result is
/// validated downstream by the exhaustive Jacobi sweep.
pub fn chevalley_constants(sys: &RootSystem) -> Result<ConstantsTable> {
    if sys.label() == TypeLabel::BC {
        return Err(Error::InvalidAlgebra(
            "Chevalley constants need a reduced system".into(),
        ));
    }
    let positives = sys.positive_roots();
    let index: HashMap<Vec<i64>, usize> = positives
        .iter()
        .enumerate()
        .map(|(i, r)| (r.coeffs().to_vec(), i))
        .collect();
    let mut builder = ConstantsBuilder {
        sys,
        positives,
        index: index.clone(),
        memo: HashMap::new(),
    };
    let table = builder.compute()?;

    // |N_{α,β}| = p + 1 for every pair, by construction of the recursion;
    // cheap to assert outright.
    for (&(i, j), &n) in &table {
        let p = builder.string_down(positives[i].coeffs(), positives[j].coeffs());
        if n.abs() != p + 1 {
            return Err(Error::InvalidAlgebra(format!(
                "|N| = {} but root string gives {} for {} + {}",
                n.abs(),
                p + 1,
                positives[i],
                positives[j]
            )));
        }
    }
    Ok(ConstantsTable { table, index })
}

fn algebra_from_root_layers(
    layer_roots: Vec<Vec<(Root, usize)>>, // (restricted-or-ambient root label, slot)
    center_sizes: Vec<usize>,
    ambient_of: impl Fn(&Root, usize) -> Root,
    constants: &ConstantsTable,
    ambient: &RootSystem,
    keep: impl Fn(&Root) -> Option<(Root, usize)>,
) -> NilpotentAlgebra {
    // layer_roots lists each layer's v-part first (pairs adjacent), center last
    let mut basis: Vec<BasisLabel> = Vec::new();
    let mut layers = Vec::new();
    let mut centers = Vec::new();
    let mut complements = Vec::new();
    for (lr, csize) in layer_roots.iter().zip(&center_sizes) {
        let start = basis.len();
        for (root, slot) in lr {
            basis.push(BasisLabel::RootSpace {
                root: root.clone(),
                slot: *slot,
            });
        }
        let end = basis.len();
        let center_start = end - csize;
        layers.push((start..end).collect());
        complements.push((start..center_start).collect());
        centers.push((center_start..end).collect());
    }

    let ambient_roots: Vec<Root> = basis
        .iter()
        .map(|b| match b {
            BasisLabel::RootSpace { root, slot } => ambient_of(root, *slot),
            _ => unreachable!(),
        })
        .collect();
    let index: HashMap<Vec<i64>, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, b)| match b {
            BasisLabel::RootSpace { root, slot } => {
                let mut key = root.coeffs().to_vec();
                key.push(*slot as i64);
                (key, i)
            }
            _ => unreachable!(),
        })
        .collect();

    let mut sc: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let ga = &ambient_roots[i];
            let gb = &ambient_roots[j];
            let sum = ga.plus(gb);
            if !ambient.is_positive_root(&sum) {
                continue;
            }
            let Some(n) = constants.constant(ga, gb) else {
                continue;
            };
            let sum_root = Root::new(sum).expect("positive root");
            if let Some((label, slot)) = keep(&sum_root) {
                let mut key = label.coeffs().to_vec();
                key.push(slot as i64);
                let k = *index.get(&key).expect("closed under bracket");
                sc.insert((i, j), vec![(k, rat(n))]);
            }
        }
    }
    NilpotentAlgebra {
        basis,
        sc,
        layers,
        centers,
        complements,
    }
}

/// The nilradical of the split form: one generator per positive root,
/// `[e_α, e_β] = N_{α,β} e_{α+β}`, layered along the cascade with the
/// one-dimensional centers `g_{β_r}`.
pub fn build_split_nilradical(sys: &RootSystem) -> Result<NilpotentAlgebra> {
    let constants = chevalley_constants(sys)?;
    let cascade = kostant_cascade(sys);
    let layers = compute_layers(sys, &cascade)?;
    let mut layer_roots: Vec<Vec<(Root, usize)>> = Vec::new();
    let mut center_sizes = Vec::new();
    for (r, beta) in cascade.betas().iter().enumerate() {
        let mut lr: Vec<(Root, usize)> = Vec::new();
        for pair in layers.pairs(r) {
            match pair {
                LayerPair::Pair(a, b) => {
                    lr.push((a.clone(), 0));
                    lr.push((b.clone(), 0));
                }
                LayerPair::Half(_) => {
                    return Err(Error::InvalidAlgebra(
                        "split nilradical needs a reduced system".into(),
                    ))
                }
            }
        }
        lr.push((beta.clone(), 0));
        layer_roots.push(lr);
        center_sizes.push(1);
    }
    Ok(algebra_from_root_layers(
        layer_roots,
        center_sizes,
        |root, _| root.clone(),
        &constants,
        sys,
        |sum| Some((sum.clone(), 0)),
    ))
}

/// Supported involution-free restriction patterns.
fn validate_restricted_pattern(sys: &RootSystem, zero_set: &[usize]) -> Result<()> {
    let mut zs: Vec<usize> = zero_set.to_vec();
    zs.sort_unstable();
    zs.dedup();
    let ok = match (sys.label(), sys.rank()) {
        (TypeLabel::A, rank) if rank % 2 == 1 && rank >= 3 => {
            let odds: Vec<usize> = (1..=rank).step_by(2).collect();
            zs == odds
        }
        (TypeLabel::E, 6) => zs == vec![2, 3, 4, 5],
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::UnsupportedPattern(format!(
            "({}, {:?}); supported: (A_(2n−1), odd indices) and (E6, [2,3,4,5])",
            sys.name(),
            zero_set
        )))
    }
}

/// Nilradical of a restricted system: one generator per ambient positive
/// root with nonzero restriction, ambient Chevalley brackets, layers grouped
/// by the restricted cascade, centers the (multi-dimensional) fibers over
/// the cascade roots.
pub fn build_restricted_nilradical(
    sys: &RootSystem,
    zero_set: &[usize],
) -> Result<NilpotentAlgebra> {
    validate_restricted_pattern(sys, zero_set)?;
    let constants = chevalley_constants(sys)?;
    let restriction = restrict(sys, zero_set)?;
    let rsys = restriction.restricted_root_system()?;
    let cascade = kostant_cascade(&rsys);
    let layers = compute_layers(&rsys, &cascade)?;

    // slot = position of the ambient root within its (sorted) fiber
    let slot_of = |restricted: &Root, ambient_root: &Root| -> usize {
        restriction
            .fiber(restricted)
            .expect("fiber exists")
            .iter()
            .position(|r| r == ambient_root)
            .expect("ambient root in its fiber")
    };

    let mut layer_roots: Vec<Vec<(Root, usize)>> = Vec::new();
    let mut center_sizes = Vec::new();
    for (r, beta) in cascade.betas().iter().enumerate() {
        let mut lr: Vec<(Root, usize)> = Vec::new();
        let push_fiber = |restricted: &Root, lr: &mut Vec<(Root, usize)>| {
            for (slot, _amb) in restriction
                .fiber(restricted)
                .expect("fiber exists")
                .iter()
                .enumerate()
            {
                lr.push((restricted.clone(), slot));
            }
        };
        for pair in layers.pairs(r) {
            match pair {
                LayerPair::Pair(a, b) => {
                    push_fiber(a, &mut lr);
                    push_fiber(b, &mut lr);
                }
                LayerPair::Half(a) => push_fiber(a, &mut lr),
            }
        }
        let csize = restriction.fiber(beta).expect("fiber exists").len();
        push_fiber(beta, &mut lr);
        layer_roots.push(lr);
        center_sizes.push(csize);
    }

    let restriction_for_keep = restriction.clone();
    Ok(algebra_from_root_layers(
        layer_roots,
        center_sizes,
        |restricted, slot| restriction.fiber(restricted).expect("fiber")[slot].clone(),
        &constants,
        sys,
        move |ambient_sum| {
            let rv = restriction_for_keep.restrict_vec(ambient_sum);
            if rv.iter().all(|&c| c == 0) {
                return None;
            }
            let restricted = Root::new(rv).expect("nonzero");
            let slot = slot_of(&restricted, ambient_sum);
            Some((restricted, slot))
        },
    ))
}

/// Exhaustive Jacobi sweep over basis triples.
pub fn verify_jacobi(alg: &NilpotentAlgebra) -> VerificationReport {
    let mut report = VerificationReport::new();
    let n = alg.dim();
    let sc: Vec<Vec<SparseVec>> = (0..n)
        .map(|i| (0..n).map(|j| alg.bracket_basis(i, j)).collect())
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut acc: HashMap<usize, Rat> = HashMap::new();
                let add = |acc: &mut HashMap<usize, Rat>, a: usize, b: usize, c: usize| {
                    // [[a,b],c]
                    for (l, coef) in &sc[a][b] {
                        for (m, coef2) in &sc[*l][c] {
                            let e = acc.entry(*m).or_insert_with(Rat::zero);
                            *e += coef * coef2;
                        }
                    }
                };
                add(&mut acc, i, j, k);
                add(&mut acc, j, k, i);
                add(&mut acc, k, i, j);
                if acc.values().any(|v| !v.is_zero()) {
                    report.fail(
                        "jacobi",
                        format!(
                            "violated on ({}, {}, {})",
                            alg.basis()[i],
                            alg.basis()[j],
                            alg.basis()[k]
                        ),
                    );
                    return report;
                }
            }
        }
    }
    report.pass(format!("jacobi over {n}^3 basis triples"));
    report
}

/// Checks the layered-decomposition conditions at the structure-constant
/// level: the partial sums are ideals, late layers centralize early
/// centers, cross brackets avoid the centers, each center is central in
/// its own layer, and `[v_r, v_r] ⊂ z_r + v`.
pub fn verify_setup(alg: &NilpotentAlgebra) -> VerificationReport {
    let mut report = VerificationReport::new();
    let n = alg.dim();
    let m = alg.num_layers();
    let layer_of: Vec<usize> = {
        let mut lo = vec![usize::MAX; n];
        for (r, layer) in alg.layers().iter().enumerate() {
            for &i in layer {
                lo[i] = r;
            }
        }
        lo
    };
    let center_set: Vec<bool> = {
        let mut cs = vec![false; n];
        for c in alg.centers() {
            for &i in c {
                cs[i] = true;
            }
        }
        cs
    };

    // (i) each n_r = m_1 + … + m_r is an ideal
    let mut ideal_ok = true;
    let mut ideal_detail = String::new();
    'ideal: for r in 0..m {
        for i in 0..n {
            for j in 0..n {
                if layer_of[j] > r {
                    continue;
                }
                for (k, _) in alg.bracket_basis(i, j) {
                    if layer_of[k] > r {
                        ideal_ok = false;
                        ideal_detail = format!(
                            "[{}, {}] leaves n_{}",
                            alg.basis()[i],
                            alg.basis()[j],
                            r + 1
                        );
                        break 'ideal;
                    }
                }
            }
        }
    }
    report.record("setup: partial sums are ideals", ideal_ok, ideal_detail);

    // (ii) [m_r, z_s] = 0 for r > s
    let mut cz_ok = true;
    let mut cz_detail = String::new();
    'cz: for r in 1..m {
        for &i in alg.layer(r) {
            for s in 0..r {
                for &j in alg.center(s) {
                    if !alg.bracket_basis(i, j).is_empty() {
                        cz_ok = false;
                        cz_detail =
                            format!("[{}, {}] ≠ 0", alg.basis()[i], alg.basis()[j]);
                        break 'cz;
                    }
                }
            }
        }
    }
    report.record("setup: [m_r, z_s] = 0 for r > s", cz_ok, cz_detail);

    // (iii) [m_r, m_s] ⊂ v for r > s
    let mut cross_ok = true;
    let mut cross_detail = String::new();
    'cross: for r in 1..m {
        for s in 0..r {
            for &i in alg.layer(r) {
                for &j in alg.layer(s) {
                    for (k, _) in alg.bracket_basis(i, j) {
                        if center_set[k] {
                            cross_ok = false;
                            cross_detail = format!(
                                "[{}, {}] has a component on {}",
                                alg.basis()[i],
                                alg.basis()[j],
                                alg.basis()[k]
                            );
                            break 'cross;
                        }
                    }
                }
            }
        }
    }
    report.record("setup: [m_r, m_s] ⊂ v for r > s", cross_ok, cross_detail);

    // (iv) z_r central in m_r, and [v_r, v_r] ⊂ z_r + v
    let mut central_ok = true;
    let mut central_detail = String::new();
    'central: for r in 0..m {
        for &i in alg.center(r) {
            for &j in alg.layer(r) {
                if !alg.bracket_basis(i, j).is_empty() {
                    central_ok = false;
                    central_detail =
                        format!("[{}, {}] ≠ 0", alg.basis()[i], alg.basis()[j]);
                    break 'central;
                }
            }
        }
    }
    report.record("setup: z_r central in m_r", central_ok, central_detail);

    let mut vv_ok = true;
    let mut vv_detail = String::new();
    'vv: for r in 0..m {
        for &i in alg.complement(r) {
            for &j in alg.complement(r) {
                for (k, _) in alg.bracket_basis(i, j) {
                    if center_set[k] && layer_of[k] != r {
                        vv_ok = false;
                        vv_detail = format!(
                            "[{}, {}] meets the center of layer {}",
                            alg.basis()[i],
                            alg.basis()[j],
                            layer_of[k] + 1
                        );
                        break 'vv;
                    }
                }
            }
        }
    }
    report.record("setup: [v_r, v_r] ⊂ z_r + v", vv_ok, vv_detail);

    report
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

/// Serializes the algebra as a JSON value with sorted keys and `"p/q"`
/// rationals; round-trips bit-exactly through [`algebra_from_json`].
pub fn algebra_to_json(alg: &NilpotentAlgebra) -> serde_json::Value {
    use serde_json::json;
    let basis: Vec<String> = alg.basis().iter().map(|b| b.to_string()).collect();
    let mut sc_entries = Vec::new();
    for ((i, j), v) in &alg.sc {
        let comps: Vec<serde_json::Value> = v
            .iter()
            .map(|(k, c)| json!([k, rat_to_string(c)]))
            .collect();
        sc_entries.push(json!([i, j, comps]));
    }
    json!({
        "basis": basis,
        "sc": sc_entries,
        "layers": alg.layers(),
        "centers": alg.centers(),
    })
}

/// Rebuilds an algebra from [`algebra_to_json`] output.
pub fn algebra_from_json(v: &serde_json::Value) -> Result<NilpotentAlgebra> {
    let bad = |m: &str| Error::Parse(format!("algebra json: {m}"));
    let obj = v.as_object().ok_or_else(|| bad("not an object"))?;
    let basis: Vec<BasisLabel> = obj
        .get("basis")
        .and_then(|b| b.as_array())
        .ok_or_else(|| bad("missing basis"))?
        .iter()
        .map(|s| BasisLabel::parse(s.as_str().ok_or_else(|| bad("basis label not a string"))?))
        .collect::<Result<_>>()?;
    let mut sc = BTreeMap::new();
    for entry in obj
        .get("sc")
        .and_then(|b| b.as_array())
        .ok_or_else(|| bad("missing sc"))?
    {
        let arr = entry.as_array().ok_or_else(|| bad("sc entry not array"))?;
        if arr.len() != 3 {
            return Err(bad("sc entry arity"));
        }
        let i = arr[0].as_u64().ok_or_else(|| bad("sc index"))? as usize;
        let j = arr[1].as_u64().ok_or_else(|| bad("sc index"))? as usize;
        let mut comps: SparseVec = Vec::new();
        for c in arr[2].as_array().ok_or_else(|| bad("sc components"))? {
            let pair = c.as_array().ok_or_else(|| bad("sc component"))?;
            let k = pair[0].as_u64().ok_or_else(|| bad("sc component index"))? as usize;
            let val = rat_from_string(
                pair[1]
                    .as_str()
                    .ok_or_else(|| bad("sc component value"))?,
            )?;
            comps.push((k, val));
        }
        comps.sort_by_key(|(k, _)| *k);
        sc.insert((i, j), comps);
    }
    let read_index_lists = |key: &str| -> Result<Vec<Vec<usize>>> {
        obj.get(key)
            .and_then(|b| b.as_array())
            .ok_or_else(|| bad(&format!("missing {key}")))?
            .iter()
            .map(|l| {
                l.as_array()
                    .ok_or_else(|| bad("index list"))?
                    .iter()
                    .map(|x| Ok(x.as_u64().ok_or_else(|| bad("index"))? as usize))
                    .collect()
            })
            .collect()
    };
    let layers = read_index_lists("layers")?;
    let centers = read_index_lists("centers")?;
    let complements = layers
        .iter()
        .zip(&centers)
        .map(|(l, c)| l.iter().copied().filter(|i| !c.contains(i)).collect())
        .collect();
    Ok(NilpotentAlgebra {
        basis,
        sc,
        layers,
        centers,
        complements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::build_root_system;

    fn sys(label: TypeLabel, rank: usize) -> RootSystem {
        build_root_system(label, rank).unwrap()
    }

    fn root(v: &[i64]) -> Root {
        Root::new(v.to_vec()).unwrap()
    }

    fn label_set(alg: &NilpotentAlgebra, indices: &[usize]) -> Vec<String> {
        let mut v: Vec<String> = indices.iter().map(|&i| alg.basis()[i].to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn upper_triangular_four() {
        let alg = build_upper_triangular(4).unwrap();
        assert_eq!(alg.dim(), 6);
        assert_eq!(
            label_set(&alg, alg.layer(0)),
            vec!["e[1,2]", "e[1,3]", "e[1,4]", "e[2,4]", "e[3,4]"]
        );
        assert_eq!(label_set(&alg, alg.center(0)), vec!["e[1,4]"]);
        assert_eq!(label_set(&alg, alg.layer(1)), vec!["e[2,3]"]);

        // [e12, e24] = e14, [e12, e34] = 0
        let idx = |r, c| {
            alg.index_of(&BasisLabel::Matrix { row: r, col: c })
                .unwrap()
        };
        let mut x = vec![Rat::zero(); 6];
        x[idx(1, 2)] = rat(1);
        let mut y = vec![Rat::zero(); 6];
        y[idx(2, 4)] = rat(1);
        let br = alg.bracket(&x, &y).unwrap();
        assert_eq!(br[idx(1, 4)], rat(1));
        assert!(br.iter().enumerate().all(|(k, v)| k == idx(1, 4) || v.is_zero()));

        let mut z = vec![Rat::zero(); 6];
        z[idx(3, 4)] = rat(1);
        assert!(alg.bracket(&x, &z).unwrap().iter().all(|v| v.is_zero()));
        // antisymmetry: [x, x] = 0
        assert!(alg.bracket(&x, &x).unwrap().iter().all(|v| v.is_zero()));
    }

    #[test]
    fn upper_triangular_edge_cases() {
        assert!(build_upper_triangular(1).is_err());
        let two = build_upper_triangular(2).unwrap();
        assert_eq!(two.dim(), 1);
        assert!(two.sc.is_empty());

        // ℓ = 3: the three-dimensional Heisenberg algebra
        let three = build_upper_triangular(3).unwrap();
        assert_eq!(three.dim(), 3);
        let idx = |r, c| {
            three
                .index_of(&BasisLabel::Matrix { row: r, col: c })
                .unwrap()
        };
        let br = three.bracket_basis(idx(1, 2), idx(2, 3));
        assert_eq!(br, vec![(idx(1, 3), rat(1))]);
    }

    #[test]
    fn upper_triangular_layer_dimensions() {
        for ell in 2..=8usize {
            let alg = build_upper_triangular(ell).unwrap();
            let m = ell / 2;
            assert_eq!(alg.num_layers(), m);
            for r in 1..=m {
                assert_eq!(alg.layer(r - 1).len(), 2 * (ell - 2 * r) + 1);
                assert_eq!(alg.center(r - 1).len(), 1);
            }
            let total: usize = alg.layers().iter().map(|l| l.len()).sum();
            assert_eq!(total, ell * (ell - 1) / 2);
        }
    }

    #[test]
    fn upper_triangular_nilpotent() {
        let alg = build_upper_triangular(5).unwrap();
        let dims = alg.lower_central_series_dims();
        assert_eq!(*dims.last().unwrap(), 0);
        assert!(dims.len() <= alg.dim() + 1);
    }

    #[test]
    fn chevalley_simple_examples() {
        let a2 = sys(TypeLabel::A, 2);
        let t = chevalley_constants(&a2).unwrap();
        assert_eq!(t.constant(&root(&[1, 0]), &root(&[0, 1])), Some(1));
        assert_eq!(t.constant(&root(&[0, 1]), &root(&[1, 0])), Some(-1));
        assert_eq!(t.constant(&root(&[1, 0]), &root(&[1, 1])), None);

        let g2 = sys(TypeLabel::G, 2);
        let tg = chevalley_constants(&g2).unwrap();
        // string (ψ1+ψ2) − kψ1 reaches ψ2, so p = 1
        let n = tg.constant(&root(&[1, 0]), &root(&[1, 1])).unwrap();
        assert_eq!(n.abs(), 2);
        // the long G2 string: |N| = 3 for (ψ1+ψ2) + (2ψ1+ψ2)
        let n3 = tg.constant(&root(&[1, 1]), &root(&[2, 1])).unwrap();
        assert_eq!(n3.abs(), 3);

        let b2 = sys(TypeLabel::B, 2);
        let tb = chevalley_constants(&b2).unwrap();
        let n = tb.constant(&root(&[0, 1]), &root(&[1, 1])).unwrap();
        assert_eq!(n.abs(), 2);
    }

    #[test]
    fn chevalley_rejects_nonreduced() {
        let bc = sys(TypeLabel::BC, 2);
        assert!(chevalley_constants(&bc).is_err());
    }

    #[test]
    fn jacobi_holds_for_builders() {
        for alg in [
            build_upper_triangular(6).unwrap(),
            build_split_nilradical(&sys(TypeLabel::G, 2)).unwrap(),
            build_split_nilradical(&sys(TypeLabel::F, 4)).unwrap(),
            build_split_nilradical(&sys(TypeLabel::B, 3)).unwrap(),
            build_restricted_nilradical(&sys(TypeLabel::A, 5), &[1, 3, 5]).unwrap(),
        ] {
            let report = verify_jacobi(&alg);
            assert!(report.all_passed(), "{}", report.render());
        }
    }

    #[test]
    fn jacobi_detects_a_flipped_sign() {
        let mut alg = build_upper_triangular(4).unwrap();
        // flip one constant: [e12, e24] = e14 becomes -e14
        let i = alg
            .index_of(&BasisLabel::Matrix { row: 1, col: 2 })
            .unwrap();
        let j = alg
            .index_of(&BasisLabel::Matrix { row: 2, col: 4 })
            .unwrap();
        let key = (i.min(j), i.max(j));
        let v = alg.sc.get_mut(&key).unwrap();
        v[0].1 = -v[0].1.clone();
        let report = verify_jacobi(&alg);
        assert!(!report.all_passed());
        assert!(report.render().contains("violated on"));
    }

    #[test]
    fn split_g2_layer_one_is_heisenberg() {
        let g2 = sys(TypeLabel::G, 2);
        let alg = build_split_nilradical(&g2).unwrap();
        assert_eq!(alg.layer(0).len(), 5);
        assert_eq!(alg.center(0).len(), 1);
        assert_eq!(alg.layer(1).len(), 1);
        // derived algebra of m_1 is its center: [v_1, v_1] ⊂ z_1 and the
        // pairing v_1 × v_1 → z_1 is nondegenerate (checked via setup+rank
        // tests elsewhere); here: every v-pair bracket lands on the center
        for &i in alg.complement(0) {
            for &j in alg.complement(0) {
                for (k, _) in alg.bracket_basis(i, j) {
                    assert!(alg.center(0).contains(&k));
                }
            }
        }
    }

    #[test]
    fn split_type_a_matches_upper_triangular_dimensions() {
        for ell in 2..=8usize {
            let a = sys(TypeLabel::A, ell - 1);
            let split = build_split_nilradical(&a).unwrap();
            let upper = build_upper_triangular(ell).unwrap();
            let sd: Vec<usize> = split.layers().iter().map(|l| l.len()).collect();
            let ud: Vec<usize> = upper.layers().iter().map(|l| l.len()).collect();
            assert_eq!(sd, ud, "ℓ = {ell}");
        }
        let split4 = build_split_nilradical(&sys(TypeLabel::A, 3)).unwrap();
        let dims: Vec<usize> = split4.layers().iter().map(|l| l.len()).collect();
        assert_eq!(dims, vec![5, 1]);
    }

    #[test]
    fn constructed_algebras_are_nilpotent() {
        for alg in [
            build_upper_triangular(8).unwrap(),
            build_split_nilradical(&sys(TypeLabel::G, 2)).unwrap(),
            build_split_nilradical(&sys(TypeLabel::C, 3)).unwrap(),
            build_restricted_nilradical(&sys(TypeLabel::A, 5), &[1, 3, 5]).unwrap(),
        ] {
            let dims = alg.lower_central_series_dims();
            assert_eq!(*dims.last().unwrap(), 0, "series: {dims:?}");
            assert!(dims.len() <= alg.dim() + 1);
            assert!(dims.windows(2).all(|w| w[1] < w[0] || w[1] == 0));
        }
    }

    #[test]
    fn split_f4_layer_dimensions() {
        let f4 = sys(TypeLabel::F, 4);
        let alg = build_split_nilradical(&f4).unwrap();
        let dims: Vec<usize> = alg.layers().iter().map(|l| l.len()).collect();
        // 7, 2, 1 pairs plus the one-dimensional centers; totals 24 roots
        assert_eq!(dims, vec![15, 5, 3, 1]);
    }

    #[test]
    fn restricted_sl3h_shape() {
        let a5 = sys(TypeLabel::A, 5);
        let alg = build_restricted_nilradical(&a5, &[1, 3, 5]).unwrap();
        assert_eq!(alg.dim(), 12);
        assert_eq!(alg.num_layers(), 1);
        assert_eq!(alg.center(0).len(), 4);
        assert_eq!(alg.complement(0).len(), 8);
        assert!(verify_setup(&alg).all_passed());
    }

    #[test]
    fn restricted_sl2h_is_abelian() {
        let a3 = sys(TypeLabel::A, 3);
        let alg = build_restricted_nilradical(&a3, &[1, 3]).unwrap();
        assert_eq!(alg.dim(), 4);
        assert_eq!(alg.num_layers(), 1);
        assert!(alg.sc.is_empty());
    }

    #[test]
    fn restricted_e6_shape() {
        let e6 = sys(TypeLabel::E, 6);
        let alg = build_restricted_nilradical(&e6, &[2, 3, 4, 5]).unwrap();
        // fibers of cardinality 8 over each of the three restricted roots
        assert_eq!(alg.dim(), 24);
        assert_eq!(alg.num_layers(), 1);
        assert_eq!(alg.center(0).len(), 8);
        assert_eq!(alg.complement(0).len(), 16);
        assert!(verify_setup(&alg).all_passed());
        assert!(verify_jacobi(&alg).all_passed());
    }

    #[test]
    fn restricted_rejects_unsupported_patterns() {
        let a4 = sys(TypeLabel::A, 4);
        assert!(build_restricted_nilradical(&a4, &[1, 3]).is_err());
        let e6 = sys(TypeLabel::E, 6);
        assert!(build_restricted_nilradical(&e6, &[1, 2]).is_err());
        let a5 = sys(TypeLabel::A, 5);
        assert!(build_restricted_nilradical(&a5, &[2, 4]).is_err());
    }

    #[test]
    fn setup_conditions_hold() {
        for alg in [
            build_upper_triangular(5).unwrap(),
            build_upper_triangular(8).unwrap(),
            build_split_nilradical(&sys(TypeLabel::E, 6)).unwrap(),
            build_split_nilradical(&sys(TypeLabel::C, 4)).unwrap(),
        ] {
            let report = verify_setup(&alg);
            assert!(report.all_passed(), "{}", report.render());
        }
    }

    #[test]
    fn setup_detects_swapped_layers() {
        let mut alg = build_upper_triangular(5).unwrap();
        alg.layers.swap(0, 1);
        alg.centers.swap(0, 1);
        alg.complements.swap(0, 1);
        let report = verify_setup(&alg);
        assert!(!report.all_passed());
        let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        assert!(failed.iter().any(|n| n.contains("ideals")));
    }

    #[test]
    fn json_round_trip_bit_exact() {
        for alg in [
            build_upper_triangular(5).unwrap(),
            build_split_nilradical(&sys(TypeLabel::G, 2)).unwrap(),
            build_restricted_nilradical(&sys(TypeLabel::A, 5), &[1, 3, 5]).unwrap(),
        ] {
            let j1 = algebra_to_json(&alg);
            let s1 = serde_json::to_string(&j1).unwrap();
            let back = algebra_from_json(&j1).unwrap();
            let s2 = serde_json::to_string(&algebra_to_json(&back)).unwrap();
            assert_eq!(s1, s2);
        }
    }

    #[test]
    fn basis_label_display_parse() {
        let labels = [
            BasisLabel::Matrix { row: 2, col: 5 },
            BasisLabel::RootSpace {
                root: root(&[1, 0, 2]),
                slot: 0,
            },
            BasisLabel::RootSpace {
                root: root(&[0, 1]),
                slot: 3,
            },
        ];
        for l in labels {
            let s = l.to_string();
            assert_eq!(BasisLabel::parse(&s).unwrap(), l);
        }
        assert!(BasisLabel::parse("nope").is_err());
    }
}

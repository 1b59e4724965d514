//! The cascade of strongly orthogonal roots, the layer sets it cuts out of
//! the positive roots, and executable checks of the structure lemmas.
//!
//! Layers are computed twice, by the difference rule (`β_r − α` positive)
//! and by the pairing characterization (`α ⊥ β_i` for `i < r`,
//! `⟨α, β_r⟩ > 0`); construction fails loudly if the two routes disagree.

use crate::ratio::Rat;
use crate::report::VerificationReport;
use crate::roots::{desc_rev_lex, Root, RootSystem};
use crate::{Error, Result};
use num::Zero;
use std::collections::HashSet;

/// The ordered list of cascade roots together with its generation
/// structure: one generation per batch of simultaneous maximal elements
/// (one from each orthogonal component available at that stage).
#[derive(Debug, Clone)]
pub struct Cascade {
    betas: Vec<Root>,
    generations: Vec<Vec<usize>>,
}

impl Cascade {
    pub fn betas(&self) -> &[Root] {
        &self.betas
    }

    pub fn len(&self) -> usize {
        self.betas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.betas.is_empty()
    }

    /// Indices into [`Self::betas`] grouped by generation.
    pub fn generations(&self) -> &[Vec<usize>] {
        &self.generations
    }

    pub fn generation_roots(&self) -> Vec<Vec<&Root>> {
        self.generations
            .iter()
            .map(|g| g.iter().map(|&i| &self.betas[i]).collect())
            .collect()
    }
}

/// Greedy cascade with the canonical tie-break (descending
/// reverse-lexicographic within a generation).
pub fn kostant_cascade(sys: &RootSystem) -> Cascade {
    kostant_cascade_with_tiebreak(sys, false)
}

/// Same construction with the generation-internal order reversed; the
/// resulting beta sets per generation must not change.
pub fn kostant_cascade_with_tiebreak(sys: &RootSystem, reversed: bool) -> Cascade {
    let mut betas: Vec<Root> = Vec::new();
    let mut generations: Vec<Vec<usize>> = Vec::new();
    let mut candidates: Vec<Root> = sys.positive_roots().to_vec();
    while !candidates.is_empty() {
        let mut maximal: Vec<Root> = candidates
            .iter()
            .filter(|a| {
                !candidates
                    .iter()
                    .any(|b| b != *a && a.dominated_by(b))
            })
            .cloned()
            .collect();
        maximal.sort_by(desc_rev_lex);
        if reversed {
            maximal.reverse();
        }
        let start = betas.len();
        generations.push((start..start + maximal.len()).collect());
        candidates.retain(|c| maximal.iter().all(|m| sys.orthogonal(c, m)));
        betas.extend(maximal);
    }
    Cascade { betas, generations }
}

/// One matched constituent of a layer: an `{α, β_r − α}` pair, or the
/// fixed point `β_r / 2` when that is itself a root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LayerPair {
    Pair(Root, Root),
    Half(Root),
}

impl LayerPair {
    pub fn roots(&self) -> Vec<&Root> {
        match self {
            LayerPair::Pair(a, b) => vec![a, b],
            LayerPair::Half(a) => vec![a],
        }
    }
}

/// The partition of the positive roots into the cascade and its layers.
#[derive(Debug, Clone)]
pub struct LayerDecomposition {
    layers: Vec<Vec<Root>>,
    pairs: Vec<Vec<LayerPair>>,
}

impl LayerDecomposition {
    /// Layer `r` (0-based, following the cascade order), sorted.
    pub fn layer(&self, r: usize) -> &[Root] {
        &self.layers[r]
    }

    pub fn layers(&self) -> &[Vec<Root>] {
        &self.layers
    }

    pub fn pairs(&self, r: usize) -> &[LayerPair] {
        &self.pairs[r]
    }

    pub fn all_pairs(&self) -> &[Vec<LayerPair>] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn contains(&self, r: usize, alpha: &Root) -> bool {
        self.layers[r].binary_search(alpha).is_ok()
    }

    /// Test seam: assembles a decomposition without any validation.
    pub fn from_raw_parts(layers: Vec<Vec<Root>>, pairs: Vec<Vec<LayerPair>>) -> Self {
        LayerDecomposition { layers, pairs }
    }
}

/// Cuts the positive roots into layers along the cascade.
///
/// Errors with [`Error::LayerMismatch`] if the two characterizations of a
/// layer disagree, which would indicate an ordering violating the pairing
/// lemma rather than bad input.
pub fn compute_layers(sys: &RootSystem, cascade: &Cascade) -> Result<LayerDecomposition> {
    let betas = cascade.betas();
    let beta_set: HashSet<&[i64]> = betas.iter().map(|b| b.coeffs()).collect();
    let mut assigned: HashSet<Vec<i64>> = HashSet::new();
    let mut layers: Vec<Vec<Root>> = Vec::with_capacity(betas.len());
    let mut pairs: Vec<Vec<LayerPair>> = Vec::with_capacity(betas.len());

    for (r, beta) in betas.iter().enumerate() {
        // difference rule
        let mut layer: Vec<Root> = sys
            .positive_roots()
            .iter()
            .filter(|a| {
                !assigned.contains(a.coeffs()) && sys.is_positive_root(&beta.minus(a))
            })
            .cloned()
            .collect();
        layer.sort();

        // pairing characterization
        let mut by_pairing: Vec<Root> = sys
            .positive_roots()
            .iter()
            .filter(|a| {
                !beta_set.contains(a.coeffs())
                    && betas[..r].iter().all(|b| sys.orthogonal(a, b))
                    && sys
                        .bilinear(a, beta)
                        .map(|x| x > Rat::zero())
                        .unwrap_or(false)
            })
            .cloned()
            .collect();
        by_pairing.sort();

        if layer != by_pairing {
            let diff: Vec<String> = layer
                .iter()
                .filter(|a| by_pairing.binary_search(a).is_err())
                .chain(
                    by_pairing
                        .iter()
                        .filter(|a| layer.binary_search(a).is_err()),
                )
                .map(|a| a.to_string())
                .collect();
            return Err(Error::LayerMismatch {
                r,
                detail: format!(
                    "difference rule vs pairing rule differ on {{{}}}",
                    diff.join(", ")
                ),
            });
        }

        // match α with β_r − α
        let mut remaining: Vec<Root> = layer.clone();
        let mut matched = Vec::new();
        while !remaining.is_empty() {
            let alpha = remaining.remove(0);
            let partner_vec = beta.minus(&alpha);
            if partner_vec == alpha.coeffs() {
                matched.push(LayerPair::Half(alpha));
                continue;
            }
            let partner = Root::new(partner_vec)?;
            match remaining.iter().position(|x| *x == partner) {
                Some(pos) => {
                    remaining.remove(pos);
                    matched.push(LayerPair::Pair(alpha, partner));
                }
                None => {
                    return Err(Error::LayerMismatch {
                        r,
                        detail: format!("{alpha} has no partner {partner} in its own layer"),
                    })
                }
            }
        }

        for a in &layer {
            assigned.insert(a.coeffs().to_vec());
        }
        layers.push(layer);
        pairs.push(matched);
    }
    Ok(LayerDecomposition { layers, pairs })
}

/// The layer involution `σ_r(α) = −s_{β_r}(α)`; rejects `α` outside layer `r`
/// (0-based cascade index).
pub fn sigma(sys: &RootSystem, cascade: &Cascade, r: usize, alpha: &Root) -> Result<Root> {
    let betas = cascade.betas();
    if r >= betas.len() {
        return Err(Error::NotInLayer {
            r,
            root: alpha.to_string(),
        });
    }
    let beta = &betas[r];
    let in_layer = alpha != beta
        && alpha.is_positive()
        && betas[..r].iter().all(|b| sys.orthogonal(alpha, b))
        && sys.bilinear(alpha, beta)? > Rat::zero();
    if !in_layer {
        return Err(Error::NotInLayer {
            r,
            root: alpha.to_string(),
        });
    }
    let reflected = sys.reflect(beta, alpha)?;
    Ok(reflected.negated())
}

/// Runs the executable forms of the partition, pairing and bracket-location
/// lemmas; failures become report entries, never panics.
pub fn verify_layer_lemmas(
    sys: &RootSystem,
    cascade: &Cascade,
    layers: &LayerDecomposition,
) -> VerificationReport {
    let mut report = VerificationReport::new();
    let name = sys.name();
    let betas = cascade.betas();

    // (a) every positive root is a beta or lies in exactly one layer
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut partition_ok = true;
    let mut partition_detail = String::new();
    for b in betas {
        if !seen.insert(b.coeffs().to_vec()) {
            partition_ok = false;
            partition_detail = format!("duplicate cascade root {b}");
        }
    }
    for layer in layers.layers() {
        for a in layer {
            if !seen.insert(a.coeffs().to_vec()) {
                partition_ok = false;
                partition_detail = format!("{a} appears twice in the partition");
            }
        }
    }
    if seen.len() != sys.num_positive() {
        partition_ok = false;
        partition_detail = format!(
            "covered {} of {} positive roots",
            seen.len(),
            sys.num_positive()
        );
    }
    report.record(
        format!("{name}: fill-out partition"),
        partition_ok,
        partition_detail,
    );

    // (b) layer set equality with the pairing characterization
    let beta_set: HashSet<&[i64]> = betas.iter().map(|b| b.coeffs()).collect();
    let mut eq_ok = true;
    let mut eq_detail = String::new();
    for (r, beta) in betas.iter().enumerate() {
        let mut chr: Vec<Root> = sys
            .positive_roots()
            .iter()
            .filter(|a| {
                !beta_set.contains(a.coeffs())
                    && betas[..r].iter().all(|b| sys.orthogonal(a, b))
                    && sys
                        .bilinear(a, beta)
                        .map(|x| x > Rat::zero())
                        .unwrap_or(false)
            })
            .cloned()
            .collect();
        chr.sort();
        if layers.layers().get(r).map(|l| &l[..]) != Some(&chr[..]) {
            eq_ok = false;
            eq_detail = format!("layer {} differs from its pairing characterization", r + 1);
            break;
        }
    }
    report.record(format!("{name}: layers2 set equality"), eq_ok, eq_detail);

    // (c) sums inside one layer only reach that layer's beta
    let mut sum_ok = true;
    let mut sum_detail = String::new();
    'outer_c: for (r, beta) in betas.iter().enumerate() {
        let layer = layers.layer(r);
        for (i, a) in layer.iter().enumerate() {
            for b in &layer[i..] {
                let s = a.plus(b);
                if sys.is_root_vec(&s) && s != beta.coeffs() {
                    sum_ok = false;
                    sum_detail = format!("{a} + {b} is a root but not β_{}", r + 1);
                    break 'outer_c;
                }
            }
        }
    }
    report.record(
        format!("{name}: layers-nilpotent in-layer sums"),
        sum_ok,
        sum_detail,
    );

    // (d) for r > s, β_s + α is never a root for α in layer r
    let mut zs_ok = true;
    let mut zs_detail = String::new();
    'outer_d: for r in 0..layers.len() {
        for (s, beta_s) in betas.iter().enumerate().take(r) {
            for a in layers.layer(r) {
                if sys.is_root_vec(&a.plus(beta_s)) {
                    zs_ok = false;
                    zs_detail =
                        format!("β_{} + {a} is a root with α in layer {}", s + 1, r + 1);
                    break 'outer_d;
                }
            }
        }
    }
    report.record(format!("{name}: [m_r, z_s] = 0 for r > s"), zs_ok, zs_detail);

    // (e) cross-layer sums never land on any beta
    let mut cross_ok = true;
    let mut cross_detail = String::new();
    'outer_e: for r in 0..layers.len() {
        for s in 0..layers.len() {
            if r == s {
                continue;
            }
            for a in layers.layer(r) {
                for b in layers.layer(s) {
                    let sum = a.plus(b);
                    if betas.iter().any(|t| t.coeffs() == sum) {
                        cross_ok = false;
                        cross_detail = format!(
                            "{a} + {b} hits a cascade root across layers {} ≠ {}",
                            r + 1,
                            s + 1
                        );
                        break 'outer_e;
                    }
                }
            }
        }
    }
    report.record(
        format!("{name}: [m_r, m_s] ⊂ v for r ≠ s"),
        cross_ok,
        cross_detail,
    );

    // cascade-side invariants
    let mut so_ok = true;
    let mut so_detail = String::new();
    for (i, a) in betas.iter().enumerate() {
        for b in &betas[i + 1..] {
            if !sys.strongly_orthogonal(a, b).unwrap_or(false) {
                so_ok = false;
                so_detail = format!("{a} and {b} are not strongly orthogonal");
            }
        }
    }
    report.record(
        format!("{name}: cascade strongly orthogonal"),
        so_ok,
        so_detail,
    );

    let mut max_ok = true;
    let mut max_detail = String::new();
    for (r, beta) in betas.iter().enumerate() {
        let violation = sys.positive_roots().iter().find(|a| {
            *a != beta
                && beta.dominated_by(a)
                && betas[..r].iter().all(|b| sys.orthogonal(a, b))
        });
        if let Some(v) = violation {
            max_ok = false;
            max_detail = format!("{v} dominates β_{} among its candidates", r + 1);
        }
    }
    report.record(format!("{name}: cascade maximality"), max_ok, max_detail);

    let exhausted = !sys
        .positive_roots()
        .iter()
        .any(|a| betas.iter().all(|b| sys.orthogonal(a, b)));
    report.record(
        format!("{name}: no positive root orthogonal to the whole cascade"),
        exhausted,
        "cascade is not maximal",
    );

    let nonmult = betas.iter().all(|b| {
        let doubled: Vec<i64> = b.coeffs().iter().map(|&c| 2 * c).collect();
        !sys.is_root_vec(&doubled)
    });
    report.record(
        format!("{name}: cascade roots nonmultipliable"),
        nonmult,
        "a cascade root is multipliable",
    );

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{build_root_system, TypeLabel};

    fn sys(label: TypeLabel, rank: usize) -> RootSystem {
        build_root_system(label, rank).unwrap()
    }

    fn root(v: &[i64]) -> Root {
        Root::new(v.to_vec()).unwrap()
    }

    #[test]
    fn type_a_parametric_formula() {
        for ell in 2..=8usize {
            let s = sys(TypeLabel::A, ell - 1);
            let c = kostant_cascade(&s);
            assert_eq!(c.len(), ell / 2, "A{} cascade length", ell - 1);
            for (r, beta) in c.betas().iter().enumerate() {
                let expect: Vec<i64> = (0..ell - 1)
                    .map(|k| i64::from((r..(ell - 1 - r)).contains(&k)))
                    .collect();
                assert_eq!(beta.coeffs(), &expect[..], "A{} beta {}", ell - 1, r + 1);
            }
            assert!(c.generations().iter().all(|g| g.len() == 1));
        }
    }

    #[test]
    fn g2_cascade_and_layers() {
        let s = sys(TypeLabel::G, 2);
        let c = kostant_cascade(&s);
        assert_eq!(c.betas(), &[root(&[3, 2]), root(&[1, 0])]);
        let layers = compute_layers(&s, &c).unwrap();
        let mut expect: Vec<Root> = [[3, 1], [0, 1], [2, 1], [1, 1]]
            .iter()
            .map(|v| root(v))
            .collect();
        expect.sort();
        assert_eq!(layers.layer(0), &expect[..]);
        assert!(layers.layer(1).is_empty());
        assert!(s
            .strongly_orthogonal(&c.betas()[0], &c.betas()[1])
            .unwrap());
    }

    #[test]
    fn f4_layer_three() {
        let s = sys(TypeLabel::F, 4);
        let c = kostant_cascade(&s);
        assert_eq!(c.betas()[0], root(&[2, 3, 4, 2]));
        let layers = compute_layers(&s, &c).unwrap();
        let mut expect = [root(&[0, 0, 1, 0]), root(&[0, 1, 1, 0])];
        expect.sort();
        assert_eq!(layers.layer(2), &expect[..]);
        assert!(layers.layer(3).is_empty());
    }

    #[test]
    fn e8_layer_cardinalities() {
        let s = sys(TypeLabel::E, 8);
        let c = kostant_cascade(&s);
        assert_eq!(c.len(), 8);
        let layers = compute_layers(&s, &c).unwrap();
        let sizes: Vec<usize> = layers.layers().iter().map(|l| l.len()).collect();
        assert_eq!(sizes, vec![56, 32, 16, 0, 8, 0, 0, 0]);
        let total: usize = sizes.iter().sum::<usize>() + c.len();
        assert_eq!(total, 120);
    }

    #[test]
    fn e7_generation_structure() {
        let s = sys(TypeLabel::E, 7);
        let c = kostant_cascade(&s);
        let gens: Vec<usize> = c.generations().iter().map(|g| g.len()).collect();
        assert_eq!(gens, vec![1, 1, 2, 3]);
        // canonical tie-break puts ψ7 before the interior component head
        assert_eq!(c.betas()[2], root(&[0, 0, 0, 0, 0, 0, 1]));
        assert_eq!(c.betas()[3], root(&[0, 1, 1, 2, 1, 0, 0]));
    }

    #[test]
    fn sigma_examples() {
        let g2 = sys(TypeLabel::G, 2);
        let c = kostant_cascade(&g2);
        assert_eq!(sigma(&g2, &c, 0, &root(&[0, 1])).unwrap(), root(&[3, 1]));

        let bc1 = sys(TypeLabel::BC, 1);
        let c1 = kostant_cascade(&bc1);
        assert_eq!(c1.betas(), &[root(&[2])]);
        assert_eq!(sigma(&bc1, &c1, 0, &root(&[1])).unwrap(), root(&[1]));

        let f4 = sys(TypeLabel::F, 4);
        let c4 = kostant_cascade(&f4);
        assert_eq!(
            sigma(&f4, &c4, 1, &root(&[0, 0, 0, 1])).unwrap(),
            root(&[0, 1, 2, 1])
        );
    }

    #[test]
    fn sigma_rejects_outsiders() {
        let g2 = sys(TypeLabel::G, 2);
        let c = kostant_cascade(&g2);
        // ψ1 = β_2 is not in layer 1
        assert!(sigma(&g2, &c, 0, &root(&[1, 0])).is_err());
        assert!(sigma(&g2, &c, 5, &root(&[0, 1])).is_err());
    }

    #[test]
    fn sigma_is_an_involution_with_sums_on_beta() {
        for (l, r) in [
            (TypeLabel::A, 5),
            (TypeLabel::B, 4),
            (TypeLabel::C, 4),
            (TypeLabel::D, 5),
            (TypeLabel::F, 4),
            (TypeLabel::G, 2),
            (TypeLabel::BC, 3),
            (TypeLabel::E, 6),
        ] {
            let s = sys(l, r);
            let c = kostant_cascade(&s);
            let layers = compute_layers(&s, &c).unwrap();
            for (ri, beta) in c.betas().iter().enumerate() {
                for alpha in layers.layer(ri) {
                    let im = sigma(&s, &c, ri, alpha).unwrap();
                    assert!(
                        layers.contains(ri, &im),
                        "{}: σ image stays in layer",
                        s.name()
                    );
                    assert_eq!(alpha.plus(&im), beta.coeffs(), "{}: α + σ(α) = β", s.name());
                    assert_eq!(sigma(&s, &c, ri, &im).unwrap(), *alpha);
                }
            }
        }
    }

    #[test]
    fn lemma_suite_passes_for_supported_systems() {
        for (l, r) in [
            (TypeLabel::A, 3),
            (TypeLabel::B, 5),
            (TypeLabel::C, 5),
            (TypeLabel::D, 6),
            (TypeLabel::G, 2),
            (TypeLabel::F, 4),
            (TypeLabel::E, 7),
            (TypeLabel::BC, 2),
        ] {
            let s = sys(l, r);
            let c = kostant_cascade(&s);
            let layers = compute_layers(&s, &c).unwrap();
            let report = verify_layer_lemmas(&s, &c, &layers);
            assert!(report.all_passed(), "{}:\n{}", s.name(), report.render());
        }
    }

    #[test]
    fn swapped_layers_fail_partition_check() {
        let s = sys(TypeLabel::B, 3);
        let c = kostant_cascade(&s);
        let good = compute_layers(&s, &c).unwrap();
        let mut layers = good.layers().to_vec();
        layers.swap(0, 1);
        let broken = LayerDecomposition::from_raw_parts(layers, good.all_pairs().to_vec());
        let report = verify_layer_lemmas(&s, &c, &broken);
        assert!(!report.all_passed());
        let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        assert!(failed.iter().any(|n| n.contains("layers2")));
    }

    #[test]
    fn tiebreak_permutation_leaves_sets_invariant() {
        for (l, r) in [
            (TypeLabel::B, 5),
            (TypeLabel::D, 6),
            (TypeLabel::E, 7),
            (TypeLabel::E, 8),
        ] {
            let s = sys(l, r);
            let a = kostant_cascade_with_tiebreak(&s, false);
            let b = kostant_cascade_with_tiebreak(&s, true);
            let set = |c: &Cascade| -> Vec<Vec<Vec<i64>>> {
                c.generations()
                    .iter()
                    .map(|g| {
                        let mut v: Vec<Vec<i64>> =
                            g.iter().map(|&i| c.betas()[i].coeffs().to_vec()).collect();
                        v.sort();
                        v
                    })
                    .collect()
            };
            assert_eq!(set(&a), set(&b), "{}", s.name());
            let la = compute_layers(&s, &a).unwrap();
            let lb = compute_layers(&s, &b).unwrap();
            use std::collections::BTreeMap;
            let fam = |c: &Cascade, l: &LayerDecomposition| -> BTreeMap<Root, Vec<Root>> {
                c.betas()
                    .iter()
                    .cloned()
                    .zip(l.layers().iter().cloned())
                    .collect()
            };
            assert_eq!(fam(&a, &la), fam(&b, &lb), "{}", s.name());
        }
    }

    #[test]
    fn bc_layers_contain_half_singleton() {
        let s = sys(TypeLabel::BC, 2);
        let c = kostant_cascade(&s);
        assert_eq!(c.betas(), &[root(&[2, 2]), root(&[0, 2])]);
        let layers = compute_layers(&s, &c).unwrap();
        let halves: Vec<&LayerPair> = layers
            .pairs(0)
            .iter()
            .filter(|p| matches!(p, LayerPair::Half(_)))
            .collect();
        assert_eq!(halves, vec![&LayerPair::Half(root(&[1, 1]))]);
        assert!(layers.pairs(1).contains(&LayerPair::Half(root(&[0, 1]))));
    }
}

//! Golden reference data for the exceptional cascades and layer pair
//! lists, transcribed from the published tables, plus the parametric
//! classical families. Three misprints in the source tables are corrected
//! and annotated; every correction is validated by the partition identity
//! before the fixtures are trusted.

use cascade_lie::roots::{Root, TypeLabel};

/// A documented correction to the source table.
#[derive(Debug, Clone, Copy)]
pub struct Correction {
    /// Where the misprint sits, e.g. `"F4 beta 1"`.
    pub location: &'static str,
    /// Verbatim transcription of the printed (wrong) expression.
    pub printed: &'static str,
    /// The value the fixture records instead.
    pub corrected: &'static str,
    /// Why the correction is forced.
    pub note: &'static str,
}

/// Cascade and layer data for one exceptional system.
#[derive(Debug, Clone)]
pub struct GoldenFixture {
    pub name: &'static str,
    pub label: TypeLabel,
    pub rank: usize,
    /// Cascade roots grouped by generation, in table order.
    pub generations: Vec<Vec<Root>>,
    /// Unordered `{α, β_r − α}` pairs per layer.
    pub layer_pairs: Vec<Vec<(Root, Root)>>,
    pub corrections: Vec<Correction>,
}

impl GoldenFixture {
    pub fn betas(&self) -> Vec<Root> {
        self.generations.iter().flatten().cloned().collect()
    }

    pub fn pair_counts(&self) -> Vec<usize> {
        self.layer_pairs.iter().map(|l| l.len()).collect()
    }
}

fn root(v: &[i64]) -> Root {
    Root::new(v.to_vec()).expect("fixture root")
}

fn pairs(raw: &[(&[i64], &[i64])]) -> Vec<(Root, Root)> {
    raw.iter().map(|(a, b)| (root(a), root(b))).collect()
}

const G2_BETA_GENS: &[&[&[i64]]] = &[&[&[3, 2]], &[&[1, 0]]];
const G2_L1: &[(&[i64], &[i64])] = &[
        (&[3, 1], &[0, 1]),
        (&[2, 1], &[1, 1]),
];

const F4_BETA_GENS: &[&[&[i64]]] = &[
    // printed "2ψ1 + 3ψ2 + 4ψ4 + 2ψ4"; corrected below
    &[&[2, 3, 4, 2]],
    &[&[0, 1, 2, 2]],
    &[&[0, 1, 2, 0]],
    &[&[0, 1, 0, 0]],
];
const F4_L1: &[(&[i64], &[i64])] = &[
        (&[1, 0, 0, 0], &[1, 3, 4, 2]),
        (&[1, 1, 0, 0], &[1, 2, 4, 2]),
        (&[1, 1, 1, 0], &[1, 2, 3, 2]),
        (&[1, 1, 2, 0], &[1, 2, 2, 2]),
        (&[1, 1, 1, 1], &[1, 2, 3, 1]),
        (&[1, 2, 2, 0], &[1, 1, 2, 2]),
        (&[1, 1, 2, 1], &[1, 2, 2, 1]),
];
const F4_L2: &[(&[i64], &[i64])] = &[
        (&[0, 0, 0, 1], &[0, 1, 2, 1]),
        (&[0, 0, 1, 1], &[0, 1, 1, 1]),
];
const F4_L3: &[(&[i64], &[i64])] = &[
        (&[0, 0, 1, 0], &[0, 1, 1, 0]),
];

const E6_BETA_GENS: &[&[&[i64]]] = &[
    &[&[1, 2, 2, 3, 2, 1]],
    &[&[1, 0, 1, 1, 1, 1]],
    &[&[0, 0, 1, 1, 1, 0]],
    &[&[0, 0, 0, 1, 0, 0]],
];
const E6_L1: &[(&[i64], &[i64])] = &[
        (&[0, 1, 0, 0, 0, 0], &[1, 1, 2, 3, 2, 1]),
        (&[0, 1, 0, 1, 0, 0], &[1, 1, 2, 2, 2, 1]),
        (&[0, 1, 1, 1, 0, 0], &[1, 1, 1, 2, 2, 1]),
        (&[0, 1, 0, 1, 1, 0], &[1, 1, 2, 2, 1, 1]),
        (&[1, 1, 1, 1, 0, 0], &[0, 1, 1, 2, 2, 1]),
        (&[0, 1, 1, 1, 1, 0], &[1, 1, 1, 2, 1, 1]),
        (&[0, 1, 0, 1, 1, 1], &[1, 1, 2, 2, 1, 0]),
        (&[1, 1, 1, 1, 1, 0], &[0, 1, 1, 2, 1, 1]),
        (&[0, 1, 1, 2, 1, 0], &[1, 1, 1, 1, 1, 1]),
        (&[0, 1, 1, 1, 1, 1], &[1, 1, 1, 2, 1, 0]),
];
const E6_L2: &[(&[i64], &[i64])] = &[
        (&[1, 0, 0, 0, 0, 0], &[0, 0, 1, 1, 1, 1]),
        (&[0, 0, 0, 0, 0, 1], &[1, 0, 1, 1, 1, 0]),
        (&[1, 0, 1, 0, 0, 0], &[0, 0, 0, 1, 1, 1]),
        (&[0, 0, 0, 0, 1, 1], &[1, 0, 1, 1, 0, 0]),
];
const E6_L3: &[(&[i64], &[i64])] = &[
        (&[0, 0, 1, 0, 0, 0], &[0, 0, 0, 1, 1, 0]),
        (&[0, 0, 0, 0, 1, 0], &[0, 0, 1, 1, 0, 0]),
];

const E7_BETA_GENS_FLAT: &[&[i64]] = &[
        &[2, 2, 3, 4, 3, 2, 1],
        &[0, 1, 1, 2, 2, 2, 1],
        &[0, 0, 0, 0, 0, 0, 1],
        &[0, 1, 1, 2, 1, 0, 0],
        &[0, 1, 0, 0, 0, 0, 0],
        &[0, 0, 1, 0, 0, 0, 0],
        &[0, 0, 0, 0, 1, 0, 0],
];
const E7_L1: &[(&[i64], &[i64])] = &[
        (&[1, 0, 0, 0, 0, 0, 0], &[1, 2, 3, 4, 3, 2, 1]),
        (&[1, 0, 1, 0, 0, 0, 0], &[1, 2, 2, 4, 3, 2, 1]),
        (&[1, 0, 1, 1, 0, 0, 0], &[1, 2, 2, 3, 3, 2, 1]),
        (&[1, 1, 1, 1, 0, 0, 0], &[1, 1, 2, 3, 3, 2, 1]),
        (&[1, 0, 1, 1, 1, 0, 0], &[1, 2, 2, 3, 2, 2, 1]),
        (&[1, 1, 1, 1, 1, 0, 0], &[1, 1, 2, 3, 2, 2, 1]),
        (&[1, 0, 1, 1, 1, 1, 0], &[1, 2, 2, 3, 2, 1, 1]),
        (&[1, 1, 1, 2, 1, 0, 0], &[1, 1, 2, 2, 2, 2, 1]),
        (&[1, 1, 1, 1, 1, 1, 0], &[1, 1, 2, 3, 2, 1, 1]),
        (&[1, 0, 1, 1, 1, 1, 1], &[1, 2, 2, 3, 2, 1, 0]),
        (&[1, 1, 2, 2, 1, 0, 0], &[1, 1, 1, 2, 2, 2, 1]),
        (&[1, 1, 1, 2, 1, 1, 0], &[1, 1, 2, 2, 2, 1, 1]),
        (&[1, 1, 1, 1, 1, 1, 1], &[1, 1, 2, 3, 2, 1, 0]),
        (&[1, 1, 2, 2, 1, 1, 0], &[1, 1, 1, 2, 2, 1, 1]),
        (&[1, 1, 1, 2, 2, 1, 0], &[1, 1, 2, 2, 1, 1, 1]),
        (&[1, 1, 1, 2, 1, 1, 1], &[1, 1, 2, 2, 2, 1, 0]),
];
const E7_L2: &[(&[i64], &[i64])] = &[
        (&[0, 0, 0, 0, 0, 1, 0], &[0, 1, 1, 2, 2, 1, 1]),
        (&[0, 0, 0, 0, 1, 1, 0], &[0, 1, 1, 2, 1, 1, 1]),
        (&[0, 0, 0, 0, 0, 1, 1], &[0, 1, 1, 2, 2, 1, 0]),
        (&[0, 0, 0, 1, 1, 1, 0], &[0, 1, 1, 1, 1, 1, 1]),
        (&[0, 0, 0, 0, 1, 1, 1], &[0, 1, 1, 2, 1, 1, 0]),
        (&[0, 1, 0, 1, 1, 1, 0], &[0, 0, 1, 1, 1, 1, 1]),
        (&[0, 0, 1, 1, 1, 1, 0], &[0, 1, 0, 1, 1, 1, 1]),
        (&[0, 0, 0, 1, 1, 1, 1], &[0, 1, 1, 1, 1, 1, 0]),
];
const E7_L4: &[(&[i64], &[i64])] = &[
        (&[0, 0, 0, 1, 0, 0, 0], &[0, 1, 1, 1, 1, 0, 0]),
        (&[0, 1, 0, 1, 0, 0, 0], &[0, 0, 1, 1, 1, 0, 0]),
        (&[0, 0, 1, 1, 0, 0, 0], &[0, 1, 0, 1, 1, 0, 0]),
        (&[0, 0, 0, 1, 1, 0, 0], &[0, 1, 1, 1, 0, 0, 0]),
];

const E8_BETA_GENS_FLAT: &[&[i64]] = &[
        &[2, 3, 4, 6, 5, 4, 3, 2],
        &[2, 2, 3, 4, 3, 2, 1, 0],
        &[0, 1, 1, 2, 2, 2, 1, 0],
        &[0, 0, 0, 0, 0, 0, 1, 0],
        &[0, 1, 1, 2, 1, 0, 0, 0],
        &[0, 1, 0, 0, 0, 0, 0, 0],
        &[0, 0, 1, 0, 0, 0, 0, 0],
        &[0, 0, 0, 0, 1, 0, 0, 0],
];
const E8_L1: &[(&[i64], &[i64])] = &[
        (&[0, 0, 0, 0, 0, 0, 0, 1], &[2, 3, 4, 6, 5, 4, 3, 1]),
        (&[0, 0, 0, 0, 0, 0, 1, 1], &[2, 3, 4, 6, 5, 4, 2, 1]),
        (&[0, 0, 0, 0, 0, 1, 1, 1], &[2, 3, 4, 6, 5, 3, 2, 1]),
        (&[0, 0, 0, 0, 1, 1, 1, 1], &[2, 3, 4, 6, 4, 3, 2, 1]),
        (&[0, 0, 0, 1, 1, 1, 1, 1], &[2, 3, 4, 5, 4, 3, 2, 1]),
        (&[0, 1, 0, 1, 1, 1, 1, 1], &[2, 2, 4, 5, 4, 3, 2, 1]),
        (&[0, 0, 1, 1, 1, 1, 1, 1], &[2, 3, 3, 5, 4, 3, 2, 1]),
        (&[1, 0, 1, 1, 1, 1, 1, 1], &[1, 3, 3, 5, 4, 3, 2, 1]),
        (&[0, 1, 1, 1, 1, 1, 1, 1], &[2, 2, 3, 5, 4, 3, 2, 1]),
        (&[1, 1, 1, 1, 1, 1, 1, 1], &[1, 2, 3, 5, 4, 3, 2, 1]),
        (&[0, 1, 1, 2, 1, 1, 1, 1], &[2, 2, 3, 4, 4, 3, 2, 1]),
        (&[1, 1, 1, 2, 1, 1, 1, 1], &[1, 2, 3, 4, 4, 3, 2, 1]),
        (&[0, 1, 1, 2, 2, 1, 1, 1], &[2, 2, 3, 4, 3, 3, 2, 1]),
        (&[1, 1, 2, 2, 1, 1, 1, 1], &[1, 2, 2, 4, 4, 3, 2, 1]),
        (&[1, 1, 1, 2, 2, 1, 1, 1], &[1, 2, 3, 4, 3, 3, 2, 1]),
        (&[0, 1, 1, 2, 2, 2, 1, 1], &[2, 2, 3, 4, 3, 2, 2, 1]),
        (&[1, 1, 2, 2, 2, 1, 1, 1], &[1, 2, 2, 4, 3, 3, 2, 1]),
        (&[1, 1, 1, 2, 2, 2, 1, 1], &[1, 2, 3, 4, 3, 2, 2, 1]),
        (&[0, 1, 1, 2, 2, 2, 2, 1], &[2, 2, 3, 4, 3, 2, 1, 1]),
        (&[1, 1, 2, 3, 2, 1, 1, 1], &[1, 2, 2, 3, 3, 3, 2, 1]),
        (&[1, 1, 2, 2, 2, 2, 1, 1], &[1, 2, 2, 4, 3, 2, 2, 1]),
        (&[1, 1, 1, 2, 2, 2, 2, 1], &[1, 2, 3, 4, 3, 2, 1, 1]),
        (&[1, 2, 2, 3, 2, 1, 1, 1], &[1, 1, 2, 3, 3, 3, 2, 1]),
        (&[1, 1, 2, 3, 2, 2, 1, 1], &[1, 2, 2, 3, 3, 2, 2, 1]),
        (&[1, 1, 2, 2, 2, 2, 2, 1], &[1, 2, 2, 4, 3, 2, 1, 1]),
        (&[1, 2, 2, 3, 2, 2, 1, 1], &[1, 1, 2, 3, 3, 2, 2, 1]),
        (&[1, 1, 2, 3, 3, 2, 1, 1], &[1, 2, 2, 3, 2, 2, 2, 1]),
        (&[1, 1, 2, 3, 2, 2, 2, 1], &[1, 2, 2, 3, 3, 2, 1, 1]),
];
const E8_L2: &[(&[i64], &[i64])] = &[
        (&[1, 0, 0, 0, 0, 0, 0, 0], &[1, 2, 3, 4, 3, 2, 1, 0]),
        (&[1, 0, 1, 0, 0, 0, 0, 0], &[1, 2, 2, 4, 3, 2, 1, 0]),
        (&[1, 0, 1, 1, 0, 0, 0, 0], &[1, 2, 2, 3, 3, 2, 1, 0]),
        (&[1, 1, 1, 1, 0, 0, 0, 0], &[1, 1, 2, 3, 3, 2, 1, 0]),
        (&[1, 0, 1, 1, 1, 0, 0, 0], &[1, 2, 2, 3, 2, 2, 1, 0]),
        (&[1, 1, 1, 1, 1, 0, 0, 0], &[1, 1, 2, 3, 2, 2, 1, 0]),
        (&[1, 0, 1, 1, 1, 1, 0, 0], &[1, 2, 2, 3, 2, 1, 1, 0]),
        (&[1, 1, 1, 2, 1, 0, 0, 0], &[1, 1, 2, 2, 2, 2, 1, 0]),
        (&[1, 1, 1, 1, 1, 1, 0, 0], &[1, 1, 2, 3, 2, 1, 1, 0]),
        (&[1, 0, 1, 1, 1, 1, 1, 0], &[1, 2, 2, 3, 2, 1, 0, 0]),
        (&[1, 1, 2, 2, 1, 0, 0, 0], &[1, 1, 1, 2, 2, 2, 1, 0]),
        (&[1, 1, 1, 2, 1, 1, 0, 0], &[1, 1, 2, 2, 2, 1, 1, 0]),
        (&[1, 1, 1, 1, 1, 1, 1, 0], &[1, 1, 2, 3, 2, 1, 0, 0]),
        (&[1, 1, 2, 2, 1, 1, 0, 0], &[1, 1, 1, 2, 2, 1, 1, 0]),
        (&[1, 1, 1, 2, 2, 1, 0, 0], &[1, 1, 2, 2, 1, 1, 1, 0]),
        (&[1, 1, 1, 2, 1, 1, 1, 0], &[1, 1, 2, 2, 2, 1, 0, 0]),
];
const E8_L3: &[(&[i64], &[i64])] = &[
        (&[0, 0, 0, 0, 0, 1, 0, 0], &[0, 1, 1, 2, 2, 1, 1, 0]),
        (&[0, 0, 0, 0, 1, 1, 0, 0], &[0, 1, 1, 2, 1, 1, 1, 0]),
        (&[0, 0, 0, 0, 0, 1, 1, 0], &[0, 1, 1, 2, 2, 1, 0, 0]),
        (&[0, 0, 0, 1, 1, 1, 0, 0], &[0, 1, 1, 1, 1, 1, 1, 0]),
        (&[0, 0, 0, 0, 1, 1, 1, 0], &[0, 1, 1, 2, 1, 1, 0, 0]),
        (&[0, 1, 0, 1, 1, 1, 0, 0], &[0, 0, 1, 1, 1, 1, 1, 0]),
        (&[0, 0, 1, 1, 1, 1, 0, 0], &[0, 1, 0, 1, 1, 1, 1, 0]),
        (&[0, 0, 0, 1, 1, 1, 1, 0], &[0, 1, 1, 1, 1, 1, 0, 0]),
];
const E8_L5: &[(&[i64], &[i64])] = &[
        (&[0, 0, 0, 1, 0, 0, 0, 0], &[0, 1, 1, 1, 1, 0, 0, 0]),
        (&[0, 1, 0, 1, 0, 0, 0, 0], &[0, 0, 1, 1, 1, 0, 0, 0]),
        (&[0, 0, 1, 1, 0, 0, 0, 0], &[0, 1, 0, 1, 1, 0, 0, 0]),
        (&[0, 0, 0, 1, 1, 0, 0, 0], &[0, 1, 1, 1, 0, 0, 0, 0]),
];

fn gens_of(slices: &[&[&[i64]]]) -> Vec<Vec<Root>> {
    slices
        .iter()
        .map(|g| g.iter().map(|v| root(v)).collect())
        .collect()
}

/// The table's flat beta lists regrouped by generation (simultaneous
/// maximal elements): sizes 1/1/2/3 for the rank-7 system and 1/1/1/2/3
/// for the rank-8 system.
fn regroup(flat: &[&[i64]], sizes: &[usize]) -> Vec<Vec<Root>> {
    let mut out = Vec::new();
    let mut it = flat.iter();
    for &s in sizes {
        out.push((0..s).map(|_| root(it.next().expect("enough betas"))).collect());
    }
    out
}

pub fn g2() -> GoldenFixture {
    GoldenFixture {
        name: "G2",
        label: TypeLabel::G,
        rank: 2,
        generations: gens_of(G2_BETA_GENS),
        layer_pairs: vec![pairs(G2_L1), Vec::new()],
        corrections: Vec::new(),
    }
}

pub fn f4() -> GoldenFixture {
    GoldenFixture {
        name: "F4",
        label: TypeLabel::F,
        rank: 4,
        generations: gens_of(F4_BETA_GENS),
        layer_pairs: vec![pairs(F4_L1), pairs(F4_L2), pairs(F4_L3), Vec::new()],
        corrections: vec![Correction {
            location: "F4 beta 1",
            printed: "2psi1 + 3psi2 + 4psi4 + 2psi4",
            corrected: "2psi1 + 3psi2 + 4psi3 + 2psi4",
            note: "psi3 coefficient printed as a duplicated psi4; the printed \
                   vector is not a root and fails the partition identity",
        }],
    }
}

pub fn e6() -> GoldenFixture {
    GoldenFixture {
        name: "E6",
        label: TypeLabel::E,
        rank: 6,
        generations: gens_of(E6_BETA_GENS),
        layer_pairs: vec![pairs(E6_L1), pairs(E6_L2), pairs(E6_L3), Vec::new()],
        corrections: vec![Correction {
            location: "E6 layer 1 pair 1",
            printed: "psi1 + psi2 + 2psi2 + 3psi4 + 2psi5 + psi6",
            corrected: "psi1 + psi2 + 2psi3 + 3psi4 + 2psi5 + psi6",
            note: "the second 2psi2 reads 2psi3; the printed vector is not a \
                   root and the pair would not sum to beta 1",
        }],
    }
}

pub fn e7() -> GoldenFixture {
    GoldenFixture {
        name: "E7",
        label: TypeLabel::E,
        rank: 7,
        generations: regroup(E7_BETA_GENS_FLAT, &[1, 1, 2, 3]),
        layer_pairs: vec![
            pairs(E7_L1),
            pairs(E7_L2),
            Vec::new(),
            pairs(E7_L4),
            Vec::new(),
            Vec::new(),
            Vec::new(),
        ],
        corrections: Vec::new(),
    }
}

pub fn e8() -> GoldenFixture {
    GoldenFixture {
        name: "E8",
        label: TypeLabel::E,
        rank: 8,
        generations: regroup(E8_BETA_GENS_FLAT, &[1, 1, 1, 2, 3]),
        layer_pairs: vec![
            pairs(E8_L1),
            pairs(E8_L2),
            pairs(E8_L3),
            Vec::new(),
            pairs(E8_L5),
            Vec::new(),
            Vec::new(),
            Vec::new(),
        ],
        corrections: Vec::new(),
    }
}

pub fn exceptional_fixtures() -> Vec<GoldenFixture> {
    vec![g2(), f4(), e6(), e7(), e8()]
}

pub fn fixture_for(label: TypeLabel, rank: usize) -> Option<GoldenFixture> {
    exceptional_fixtures()
        .into_iter()
        .find(|f| f.label == label && f.rank == rank)
}

/// The corrected classical-family note.
pub fn classical_corrections() -> Vec<Correction> {
    vec![Correction {
        location: "C_n beta 1",
        printed: "2(psi_1 + ... psi_(n-1) + psi_n",
        corrected: "2(psi_1 + ... + psi_(n-1)) + psi_n",
        note: "unbalanced parenthesis; the closing parenthesis belongs \
               before psi_n since 2e_1 has psi_n coefficient 1",
    }]
}

/// The parametric cascades of the classical families, in generations,
/// written down independently of the construction code (directly from the
/// orthogonal-coordinate formulas).
pub fn classical_cascade(label: TypeLabel, rank: usize) -> Option<Vec<Vec<Root>>> {
    let interval = |lo: usize, hi: usize| -> Vec<i64> {
        // ψ_lo + ... + ψ_hi, 1-based inclusive
        (1..=rank)
            .map(|i| if (lo..=hi).contains(&i) { 1 } else { 0 })
            .collect()
    };
    match label {
        TypeLabel::A => {
            let m = rank.div_ceil(2);
            Some(
                (1..=m)
                    .map(|r| vec![root(&interval(r, rank + 1 - r))])
                    .collect(),
            )
        }
        TypeLabel::B => {
            let n = rank;
            // e_i − e_j and e_i + e_j and e_i in simple-root coordinates
            let e_minus = |i: usize, j: usize| interval(i, j - 1);
            let e_plus = |i: usize, j: usize| {
                let mut v = interval(i, j - 1);
                for k in j..=n {
                    v[k - 1] += 2;
                }
                v
            };
            let e_single = |i: usize| interval(i, n);
            let mut gens = vec![vec![root(&e_plus(1, 2))]];
            // generation j holds the tail of pair j−1 plus whatever opens up
            for j in 2..=(n / 2 + 1) {
                let mut gen = vec![root(&e_minus(2 * j - 3, 2 * j - 2))];
                if 2 * j <= n {
                    gen.push(root(&e_plus(2 * j - 1, 2 * j)));
                }
                if n % 2 == 1 && 2 * j - 1 == n {
                    gen.push(root(&e_single(n)));
                }
                gens.push(gen);
            }
            Some(gens)
        }
        TypeLabel::C => {
            let n = rank;
            Some(
                (1..=n)
                    .map(|i| {
                        let mut v = vec![0i64; n];
                        for k in i..n {
                            v[k - 1] = 2;
                        }
                        v[n - 1] = 1;
                        vec![root(&v)]
                    })
                    .collect(),
            )
        }
        TypeLabel::D => {
            let n = rank;
            let e_minus = |i: usize, j: usize| interval(i, j - 1);
            let e_plus = |i: usize, j: usize| -> Vec<i64> {
                // e_i + e_j for j ≤ n−2; the fork cases handled separately
                let mut v = interval(i, j - 1);
                for k in j..=n - 2 {
                    v[k - 1] += 2;
                }
                v[n - 2] += 1;
                v[n - 1] += 1;
                v
            };
            let mut gens = vec![vec![root(&e_plus(1, 2))]];
            for j in 2..=n.div_ceil(2) {
                let mut gen = vec![root(&e_minus(2 * j - 3, 2 * j - 2))];
                if 2 * j < n {
                    gen.push(root(&e_plus(2 * j - 1, 2 * j)));
                } else if 2 * j == n {
                    // terminal pair: e_(n−1) ± e_n are ψ_n and ψ_(n−1)
                    gen.push(root(&interval(n, n)));
                    gen.push(root(&interval(n - 1, n - 1)));
                }
                gens.push(gen);
            }
            Some(gens)
        }
        _ => None,
    }
}

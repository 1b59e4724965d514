//! Pfaffians of the central pairings, the density polynomial `P(λ)`,
//! formal degrees, nondegeneracy witnesses, and lattice multiplicities.
//!
//! Functionals `λ` on `s = ⊕ z_r` are coordinate vectors over the center
//! basis vectors in layer order. The polynomial `P` lives in one variable
//! per center coordinate, named `l<layer>_<k>` (both 1-based).

use crate::liealg::NilpotentAlgebra;
use crate::matrix::{pfaffian, Mat};
use crate::ratio::{rat, rat_from_string, rat_to_string, Rat};
use crate::{Error, Result};
use num::bigint::BigInt;
use num::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use serde_json::json;
use std::collections::BTreeMap;

/// Largest complement dimension for which the multi-variable symbolic
/// Pfaffian is expanded; beyond this, use numeric witnesses.
pub const SYMBOLIC_V_BUDGET: usize = 16;
/// Largest center dimension admitted for symbolic expansion.
pub const SYMBOLIC_Z_BUDGET: usize = 8;
/// Default seed of the witness search; override per call (the CLI exposes
/// the `CASCADE_LIE_SEED` environment variable).
pub const DEFAULT_WITNESS_SEED: u64 = 0xCA5C_5EED;

/// Exact multivariate polynomial in the center coordinates of `s*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PfaffianPolynomial {
    vars: Vec<String>,
    /// exponent vector (length = vars) -> coefficient, zero coefficients pruned
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl PfaffianPolynomial {
    pub fn constant(vars: Vec<String>, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; vars.len()], c);
        }
        PfaffianPolynomial { vars, terms }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rat> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree of every monomial when homogeneous, else `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for e in self.terms.keys() {
            let d: u32 = e.iter().sum();
            match deg {
                None => deg = Some(d),
                Some(x) if x == d => {}
                _ => return None,
            }
        }
        deg
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.vars.len() {
            return Err(Error::RankMismatch {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        let mut acc = Rat::zero();
        for (exps, c) in &self.terms {
            let mut term = c.clone();
            for (e, x) in exps.iter().zip(point) {
                for _ in 0..*e {
                    term *= x;
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    pub fn mul(&self, other: &PfaffianPolynomial) -> PfaffianPolynomial {
        assert_eq!(self.vars, other.vars, "mismatched variable lists");
        let mut terms: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let entry = terms.entry(e).or_insert_with(Rat::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        PfaffianPolynomial {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// `{vars, terms}` with `"p/q"` coefficients; deterministic term order.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| json!([e, rat_to_string(c)]))
            .collect();
        json!({ "vars": self.vars, "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("pfaffian polynomial json: {m}"));
        let obj = v.as_object().ok_or_else(|| bad("not an object"))?;
        let vars: Vec<String> = obj
            .get("vars")
            .and_then(|x| x.as_array())
            .ok_or_else(|| bad("missing vars"))?
            .iter()
            .map(|s| {
                s.as_str()
                    .map(String::from)
                    .ok_or_else(|| bad("var not a string"))
            })
            .collect::<Result<_>>()?;
        let mut terms = BTreeMap::new();
        for t in obj
            .get("terms")
            .and_then(|x| x.as_array())
            .ok_or_else(|| bad("missing terms"))?
        {
            let pair = t.as_array().ok_or_else(|| bad("term not array"))?;
            let exps: Vec<u32> = pair[0]
                .as_array()
                .ok_or_else(|| bad("exponents"))?
                .iter()
                .map(|x| Ok(x.as_u64().ok_or_else(|| bad("exponent"))? as u32))
                .collect::<Result<_>>()?;
            let c = rat_from_string(pair[1].as_str().ok_or_else(|| bad("coefficient"))?)?;
            if !c.is_zero() {
                terms.insert(exps, c);
            }
        }
        Ok(PfaffianPolynomial { vars, terms })
    }
}

/// Variable names for the center coordinates, layer by layer.
pub fn plancherel_variables(alg: &NilpotentAlgebra) -> Vec<String> {
    let mut vars = Vec::new();
    for (r, c) in alg.centers().iter().enumerate() {
        for k in 0..c.len() {
            vars.push(format!("l{}_{}", r + 1, k + 1));
        }
    }
    vars
}

/// Total center dimension (the dimension of `s*`).
pub fn s_dim(alg: &NilpotentAlgebra) -> usize {
    alg.centers().iter().map(|c| c.len()).sum()
}

fn split_lambda<'a>(alg: &NilpotentAlgebra, lambda: &'a [Rat]) -> Result<Vec<&'a [Rat]>> {
    if lambda.len() != s_dim(alg) {
        return Err(Error::RankMismatch {
            expected: s_dim(alg),
            got: lambda.len(),
        });
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for c in alg.centers() {
        out.push(&lambda[offset..offset + c.len()]);
        offset += c.len();
    }
    Ok(out)
}

/// Linear form over the local center coordinates of one layer.
type LinForm = Vec<(usize, Rat)>;

/// Entries of the central pairing on `v_r` as linear forms in the local
/// center coordinates: `entry[i][j] = Σ_k coeff · z_k`.
fn b_entries(alg: &NilpotentAlgebra, r: usize) -> Result<Vec<Vec<LinForm>>> {
    if r >= alg.num_layers() {
        return Err(Error::InvalidAlgebra(format!(
            "layer index {r} out of range 0..{}",
            alg.num_layers()
        )));
    }
    let v = alg.complement(r);
    let z = alg.center(r);
    let local: BTreeMap<usize, usize> = z.iter().enumerate().map(|(k, &b)| (b, k)).collect();
    let mut entries: Vec<Vec<LinForm>> = vec![vec![Vec::new(); v.len()]; v.len()];
    for (i, &bi) in v.iter().enumerate() {
        for (j, &bj) in v.iter().enumerate().skip(i + 1) {
            let mut form: Vec<(usize, Rat)> = alg
                .bracket_basis(bi, bj)
                .into_iter()
                .filter_map(|(k, c)| local.get(&k).map(|&lk| (lk, c)))
                .collect();
            form.sort_by_key(|(k, _)| *k);
            entries[j][i] = form.iter().map(|(k, c)| (*k, -c.clone())).collect();
            entries[i][j] = form;
        }
    }
    Ok(entries)
}

/// The antisymmetric matrix `b_{λ_r}(x, y) = λ([x, y])` on `v_r`, for a
/// numeric `λ_r` over the layer's center coordinates.
pub fn b_matrix(alg: &NilpotentAlgebra, r: usize, lambda_r: &[Rat]) -> Result<Mat> {
    if r >= alg.num_layers() {
        return Err(Error::InvalidAlgebra(format!(
            "layer index {r} out of range 0..{}",
            alg.num_layers()
        )));
    }
    let z = alg.center(r);
    if lambda_r.len() != z.len() {
        return Err(Error::RankMismatch {
            expected: z.len(),
            got: lambda_r.len(),
        });
    }
    let entries = b_entries(alg, r)?;
    let n = entries.len();
    Ok(Mat::from_fn(n, n, |i, j| {
        entries[i][j]
            .iter()
            .map(|(k, c)| &lambda_r[*k] * c)
            .sum()
    }))
}

fn pf_symbolic(
    entries: &[Vec<LinForm>],
    free: &[usize],
    nz: usize,
) -> BTreeMap<Vec<u32>, Rat> {
    let mut acc: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
    if free.is_empty() {
        acc.insert(vec![0; nz], Rat::one());
        return acc;
    }
    let i = free[0];
    for pos in 1..free.len() {
        let j = free[pos];
        let form = &entries[i][j];
        if form.is_empty() {
            continue;
        }
        let mut rest: Vec<usize> = free[1..].to_vec();
        rest.remove(pos - 1);
        let sub = pf_symbolic(entries, &rest, nz);
        let negate = pos % 2 == 0;
        for (zk, c) in form {
            for (exps, sc) in &sub {
                let mut e = exps.clone();
                e[*zk] += 1;
                let mut term = c * sc;
                if negate {
                    term = -term;
                }
                let entry = acc.entry(e).or_insert_with(Rat::zero);
                *entry += term;
            }
        }
    }
    acc.retain(|_, c| !c.is_zero());
    acc
}

/// The exact Pfaffian of `b_λ` on `v_r` as a polynomial in the center
/// coordinates of layer `r` (embedded in the full variable list).
///
/// One-dimensional centers use the scalar factorization
/// `Pf(t·A) = Pf(A)·t^{d_r}`; larger centers are expanded symbolically
/// within the [`SYMBOLIC_V_BUDGET`]/[`SYMBOLIC_Z_BUDGET`] limits.
pub fn layer_pfaffian(alg: &NilpotentAlgebra, r: usize) -> Result<PfaffianPolynomial> {
    let vars = plancherel_variables(alg);
    let nv = alg.complement(r).len();
    let nz = alg.center(r).len();
    if !nv.is_multiple_of(2) {
        return Err(Error::OddDimension(nv));
    }
    let offset: usize = alg.centers()[..r].iter().map(|c| c.len()).sum();
    if nz == 1 {
        let coeff_matrix = b_matrix(alg, r, &[rat(1)])?;
        let pf = pfaffian(&coeff_matrix)?;
        let mut terms = BTreeMap::new();
        if !pf.is_zero() {
            let mut exps = vec![0u32; vars.len()];
            exps[offset] = (nv / 2) as u32;
            terms.insert(exps, pf);
        }
        return Ok(PfaffianPolynomial { vars, terms });
    }
    if nv > SYMBOLIC_V_BUDGET || nz > SYMBOLIC_Z_BUDGET {
        return Err(Error::SymbolicBudget(format!(
            "layer {} has dim v = {nv}, dim z = {nz} (budget {SYMBOLIC_V_BUDGET}/{SYMBOLIC_Z_BUDGET})",
            r + 1
        )));
    }
    let entries = b_entries(alg, r)?;
    let free: Vec<usize> = (0..nv).collect();
    let local = pf_symbolic(&entries, &free, nz);
    let mut terms = BTreeMap::new();
    for (le, c) in local {
        let mut exps = vec![0u32; vars.len()];
        for (k, e) in le.iter().enumerate() {
            exps[offset + k] = *e;
        }
        terms.insert(exps, c);
    }
    Ok(PfaffianPolynomial { vars, terms })
}

/// `P = Pf(b_{λ_1}) ⋯ Pf(b_{λ_m})` over all center coordinates.
pub fn plancherel_polynomial(alg: &NilpotentAlgebra) -> Result<PfaffianPolynomial> {
    let vars = plancherel_variables(alg);
    let mut acc = PfaffianPolynomial::constant(vars, rat(1));
    for r in 0..alg.num_layers() {
        acc = acc.mul(&layer_pfaffian(alg, r)?);
    }
    Ok(acc)
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `c = 2^{d_1 + … + d_m} · d_1! ⋯ d_m!`.
pub fn plancherel_constant(alg: &NilpotentAlgebra) -> Result<BigInt> {
    let ds = alg.half_dims()?;
    let total: usize = ds.iter().sum();
    let mut c = BigInt::from(2).pow(total as u32);
    for d in ds {
        c *= factorial(d);
    }
    Ok(c)
}

/// The per-layer Pfaffian values at a numeric `λ`.
pub fn layer_pfaffian_values(alg: &NilpotentAlgebra, lambda: &[Rat]) -> Result<Vec<Rat>> {
    let slices = split_lambda(alg, lambda)?;
    let mut out = Vec::new();
    for (r, lr) in slices.iter().enumerate() {
        let m = b_matrix(alg, r, lr)?;
        out.push(pfaffian(&m)?);
    }
    Ok(out)
}

/// `|P(λ)|`, the formal degree of the stepwise representation at `λ`.
pub fn formal_degree(alg: &NilpotentAlgebra, lambda: &[Rat]) -> Result<Rat> {
    let prod = layer_pfaffian_values(alg, lambda)?
        .into_iter()
        .fold(Rat::one(), |acc, x| acc * x);
    Ok(prod.abs())
}

/// `λ ∈ t*`: every layer factor nonzero.
pub fn is_stepwise_si(alg: &NilpotentAlgebra, lambda: &[Rat]) -> Result<bool> {
    Ok(layer_pfaffian_values(alg, lambda)?
        .iter()
        .all(|pf| !pf.is_zero()))
}

/// Outcome of the deterministic witness search for a nondegenerate `b_λ`.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    /// Coordinates over the layer's center basis, when found.
    pub witness: Option<Vec<Rat>>,
    pub method: Option<&'static str>,
    pub trials: u32,
    pub seed: u64,
    pub note: Option<String>,
}

/// Searches for `λ_r` with `b_{λ_r}` nonsingular on `v_r`: first the
/// sparse pattern supported on the extreme fiber elements, then all-ones,
/// then seeded random coordinates. `None` after the budget is inconclusive.
pub fn find_nondegenerate_lambda(alg: &NilpotentAlgebra, r: usize) -> Result<WitnessReport> {
    find_nondegenerate_lambda_with_seed(alg, r, DEFAULT_WITNESS_SEED)
}

pub fn find_nondegenerate_lambda_with_seed(
    alg: &NilpotentAlgebra,
    r: usize,
    seed: u64,
) -> Result<WitnessReport> {
    let nz = alg.center(r).len();
    let nv = alg.complement(r).len();
    if nz == 0 {
        return Err(Error::InvalidAlgebra("layer has no center".into()));
    }
    if !nv.is_multiple_of(2) {
        return Ok(WitnessReport {
            witness: None,
            method: None,
            trials: 0,
            seed,
            note: Some("odd complement dimension: every b_λ is singular".into()),
        });
    }
    let nonsingular = |lam: &[Rat]| -> Result<bool> {
        let m = b_matrix(alg, r, lam)?;
        Ok(!m.det().is_zero())
    };

    let mut trials = 0u32;
    // sparse pattern: nonzero exactly on the extreme center coordinates
    // (ordered by the layer basis, so first = lowest, last = highest root)
    let mut sparse = vec![Rat::zero(); nz];
    sparse[0] = rat(1);
    sparse[nz - 1] = rat(1);
    trials += 1;
    if nonsingular(&sparse)? {
        return Ok(WitnessReport {
            witness: Some(sparse),
            method: Some("sparse-extremes"),
            trials,
            seed,
            note: None,
        });
    }
    let ones = vec![rat(1); nz];
    trials += 1;
    if nonsingular(&ones)? {
        return Ok(WitnessReport {
            witness: Some(ones),
            method: Some("all-ones"),
            trials,
            seed,
            note: None,
        });
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let lam: Vec<Rat> = (0..nz)
            .map(|_| {
                let mut x = 0i64;
                while x == 0 {
                    x = rng.gen_range(-9..=9);
                }
                rat(x)
            })
            .collect();
        trials += 1;
        if nonsingular(&lam)? {
            return Ok(WitnessReport {
                witness: Some(lam),
                method: Some("random"),
                trials,
                seed,
                note: None,
            });
        }
    }
    Ok(WitnessReport {
        witness: None,
        method: None,
        trials,
        seed,
        note: Some("no witness within the trial budget; inconclusive".into()),
    })
}

// ---------------------------------------------------------------------------
// Lattices and multiplicities
// ---------------------------------------------------------------------------

/// A lattice in `s` respecting the center filtration: one nonsingular
/// rational block per `z_r`, columns = generators over the center basis.
#[derive(Debug, Clone)]
pub struct LatticeSpec {
    blocks: Vec<Mat>,
}

impl LatticeSpec {
    pub fn new(blocks: Vec<Mat>) -> Result<Self> {
        for b in &blocks {
            if !b.is_square() {
                return Err(Error::InvalidLattice("blocks must be square".into()));
            }
            if b.det().is_zero() {
                return Err(Error::InvalidLattice("singular lattice block".into()));
            }
        }
        Ok(LatticeSpec { blocks })
    }

    /// The standard integer lattice over the algebra's center basis.
    pub fn standard(alg: &NilpotentAlgebra) -> Self {
        LatticeSpec {
            blocks: alg.centers().iter().map(|c| Mat::identity(c.len())).collect(),
        }
    }

    /// Validates a full matrix as block-diagonal with the given block sizes.
    pub fn from_matrix(basis: &Mat, dims: &[usize]) -> Result<Self> {
        let n: usize = dims.iter().sum();
        if basis.nrows() != n || basis.ncols() != n {
            return Err(Error::InvalidLattice(format!(
                "expected a {n}x{n} matrix"
            )));
        }
        let mut blocks = Vec::new();
        let mut off = 0;
        for &d in dims {
            for i in 0..n {
                for j in off..off + d {
                    let inside = (off..off + d).contains(&i);
                    if !inside && !basis[(i, j)].is_zero() {
                        return Err(Error::InvalidLattice(
                            "basis is not block-diagonal over the centers".into(),
                        ));
                    }
                }
            }
            blocks.push(Mat::from_fn(d, d, |i, j| basis[(off + i, off + j)].clone()));
            off += d;
        }
        LatticeSpec::new(blocks)
    }

    pub fn blocks(&self) -> &[Mat] {
        &self.blocks
    }

    pub fn block_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.nrows()).collect()
    }
}

/// The dual lattice: inverse-transpose block by block.
pub fn dual_lattice(lattice: &LatticeSpec) -> LatticeSpec {
    let blocks = lattice
        .blocks()
        .iter()
        .map(|b| {
            b.inverse()
                .expect("lattice blocks are nonsingular")
                .transpose()
        })
        .collect();
    LatticeSpec { blocks }
}

/// `true` iff `λ_r` takes integer values on every generator of the block.
fn lambda_in_dual(block: &Mat, lambda_r: &[Rat]) -> bool {
    let d = block.nrows();
    (0..d).all(|col| {
        let val: Rat = (0..d).map(|k| &lambda_r[k] * &block[(k, col)]).sum();
        val.denom().is_one()
    })
}

/// Multiplicity of `π_λ` on the quotient by the lattice group: `|P(λ)|`
/// when every `λ_r` lies in the dual lattice of its block and `P(λ) ≠ 0`,
/// otherwise zero.
pub fn multiplicity(alg: &NilpotentAlgebra, lattice: &LatticeSpec, lambda: &[Rat]) -> Result<Rat> {
    let dims: Vec<usize> = alg.centers().iter().map(|c| c.len()).collect();
    if lattice.block_dims() != dims {
        return Err(Error::InvalidLattice(format!(
            "lattice blocks {:?} do not match center dimensions {:?}",
            lattice.block_dims(),
            dims
        )));
    }
    let slices = split_lambda(alg, lambda)?;
    for (block, lr) in lattice.blocks().iter().zip(&slices) {
        if !lambda_in_dual(block, lr) {
            return Ok(Rat::zero());
        }
    }
    if !is_stepwise_si(alg, lambda)? {
        return Ok(Rat::zero());
    }
    formal_degree(alg, lambda)
}

/// Multiplicities over a box of dual-lattice points.
#[derive(Debug, Clone)]
pub struct MultiplicityReport {
    pub bound: i64,
    /// `(λ coordinates over the center basis, multiplicity)`, every listed
    /// `λ` has all layer Pfaffians nonzero.
    pub entries: Vec<(Vec<Rat>, Rat)>,
}

impl MultiplicityReport {
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|(lam, m)| {
                let coords: Vec<String> = lam.iter().map(rat_to_string).collect();
                json!([coords, rat_to_string(m)])
            })
            .collect();
        json!({ "box": self.bound, "entries": entries })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("multiplicity report json: {m}"));
        let obj = v.as_object().ok_or_else(|| bad("not an object"))?;
        let bound = obj
            .get("box")
            .and_then(|x| x.as_i64())
            .ok_or_else(|| bad("missing box"))?;
        let mut entries = Vec::new();
        for e in obj
            .get("entries")
            .and_then(|x| x.as_array())
            .ok_or_else(|| bad("missing entries"))?
        {
            let pair = e.as_array().ok_or_else(|| bad("entry"))?;
            let lam: Vec<Rat> = pair[0]
                .as_array()
                .ok_or_else(|| bad("coords"))?
                .iter()
                .map(|s| rat_from_string(s.as_str().ok_or_else(|| bad("coord"))?))
                .collect::<Result<_>>()?;
            let m = rat_from_string(pair[1].as_str().ok_or_else(|| bad("mult"))?)?;
            entries.push((lam, m));
        }
        Ok(MultiplicityReport { bound, entries })
    }
}

/// Enumerates dual-lattice points with integer coefficient vectors of
/// sup-norm at most `bound` and lists those with nonzero density.
pub fn multiplicity_table(
    alg: &NilpotentAlgebra,
    lattice: &LatticeSpec,
    bound: i64,
) -> Result<MultiplicityReport> {
    if bound < 0 {
        return Err(Error::InvalidLattice("box bound must be nonnegative".into()));
    }
    let dims: Vec<usize> = alg.centers().iter().map(|c| c.len()).collect();
    if lattice.block_dims() != dims {
        return Err(Error::InvalidLattice(format!(
            "lattice blocks {:?} do not match center dimensions {:?}",
            lattice.block_dims(),
            dims
        )));
    }
    let dual = dual_lattice(lattice);
    let total: usize = dims.iter().sum();
    let mut entries = Vec::new();
    // odometer over integer coefficient vectors a, -bound..=bound per axis
    let mut a = vec![-bound; total];
    loop {
        // λ = Σ a_i · (dual generator i), per block
        let mut lambda = Vec::with_capacity(total);
        let mut off = 0;
        for (bi, &d) in dims.iter().enumerate() {
            let block = &dual.blocks()[bi];
            for row in 0..d {
                let mut x = Rat::zero();
                for col in 0..d {
                    x += &block[(row, col)] * rat(a[off + col]);
                }
                lambda.push(x);
            }
            off += d;
        }
        if is_stepwise_si(alg, &lambda)? {
            let m = formal_degree(alg, &lambda)?;
            entries.push((lambda, m));
        }
        // advance odometer
        let mut k = 0;
        loop {
            if k == total {
                return Ok(MultiplicityReport { bound, entries });
            }
            a[k] += 1;
            if a[k] <= bound {
                break;
            }
            a[k] = -bound;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{
        build_restricted_nilradical, build_split_nilradical, build_upper_triangular,
        chevalley_constants, BasisLabel,
    };
    use crate::ratio::rat_frac;
    use crate::roots::{build_root_system, Root, TypeLabel};

    fn upper(ell: usize) -> NilpotentAlgebra {
        build_upper_triangular(ell).unwrap()
    }

    #[test]
    fn b_matrix_upper_four() {
        let alg = upper(4);
        let t = rat_frac(7, 2);
        let m = b_matrix(&alg, 0, std::slice::from_ref(&t)).unwrap();
        assert_eq!(m.nrows(), 4);
        assert!(m.is_antisymmetric());
        // basis order pairs (e12, e24), (e13, e34); entries ±t on the pairs
        assert_eq!(m[(0, 1)], t);
        assert_eq!(m[(2, 3)], t);
        assert!(m[(0, 2)].is_zero() && m[(0, 3)].is_zero() && m[(1, 2)].is_zero());
        // λ = 0 gives the zero matrix
        let z = b_matrix(&alg, 0, &[Rat::zero()]).unwrap();
        assert!((0..4).all(|i| (0..4).all(|j| z[(i, j)].is_zero())));
    }

    #[test]
    fn upper_triangular_polynomial_is_a_single_monomial() {
        for ell in 3..=8usize {
            let alg = upper(ell);
            let p = plancherel_polynomial(&alg).unwrap();
            assert_eq!(p.num_terms(), 1, "ℓ = {ell}");
            let (exps, coeff) = p.terms().iter().next().unwrap();
            let m = ell / 2;
            let expect: Vec<u32> = (1..=m).map(|r| (ell - 2 * r) as u32).collect();
            assert_eq!(exps, &expect, "ℓ = {ell}");
            assert_eq!(coeff.abs(), rat(1), "ℓ = {ell}");
        }
    }

    #[test]
    fn empty_layer_contributes_one() {
        let alg = upper(4);
        // layer 2 is the one-dimensional abelian center: v empty
        let f = layer_pfaffian(&alg, 1).unwrap();
        assert_eq!(f.num_terms(), 1);
        let (exps, c) = f.terms().iter().next().unwrap();
        assert!(exps.iter().all(|&e| e == 0));
        assert_eq!(c, &rat(1));
    }

    #[test]
    fn split_g2_density() {
        let g2 = build_root_system(TypeLabel::G, 2).unwrap();
        let alg = build_split_nilradical(&g2).unwrap();
        let p = plancherel_polynomial(&alg).unwrap();
        assert_eq!(p.num_terms(), 1);
        let (exps, coeff) = p.terms().iter().next().unwrap();
        assert_eq!(exps, &vec![2, 0]);
        // the coefficient is the product of the two pair constants
        let table = chevalley_constants(&g2).unwrap();
        let n1 = table
            .constant(
                &Root::new(vec![0, 1]).unwrap(),
                &Root::new(vec![3, 1]).unwrap(),
            )
            .unwrap();
        let n2 = table
            .constant(
                &Root::new(vec![1, 1]).unwrap(),
                &Root::new(vec![2, 1]).unwrap(),
            )
            .unwrap();
        assert_eq!(coeff.abs(), rat((n1 * n2).abs()));
        assert_eq!(p.homogeneous_degree(), Some(2));
    }

    #[test]
    fn plancherel_constants() {
        assert_eq!(plancherel_constant(&upper(3)).unwrap(), BigInt::from(2));
        assert_eq!(plancherel_constant(&upper(5)).unwrap(), BigInt::from(96));
        // all layers abelian
        assert_eq!(plancherel_constant(&upper(2)).unwrap(), BigInt::from(1));
    }

    #[test]
    fn formal_degree_upper_four() {
        let alg = upper(4);
        // d = (2, 0): degree |λ1|² regardless of λ2
        let deg = formal_degree(&alg, &[rat(2), rat(7)]).unwrap();
        assert_eq!(deg, rat(4));
        assert!(is_stepwise_si(&alg, &[rat(2), rat(7)]).unwrap());
        assert!(!is_stepwise_si(&alg, &[rat(0), rat(7)]).unwrap());
    }

    #[test]
    fn homogeneity_of_the_density() {
        let b3 = build_root_system(TypeLabel::B, 3).unwrap();
        let alg = build_split_nilradical(&b3).unwrap();
        let p = plancherel_polynomial(&alg).unwrap();
        let d = p.homogeneous_degree().expect("homogeneous");
        let point: Vec<Rat> = (1..=s_dim(&alg) as i64).map(rat).collect();
        let t = rat_frac(5, 3);
        let scaled: Vec<Rat> = point.iter().map(|x| x * &t).collect();
        let mut tpow = Rat::one();
        for _ in 0..d {
            tpow *= &t;
        }
        assert_eq!(
            p.eval(&scaled).unwrap(),
            tpow * p.eval(&point).unwrap()
        );
    }

    #[test]
    fn split_density_nonzero_off_the_zero_set() {
        for (l, r) in [
            (TypeLabel::A, 4),
            (TypeLabel::B, 3),
            (TypeLabel::C, 3),
            (TypeLabel::D, 4),
            (TypeLabel::G, 2),
        ] {
            let sys = build_root_system(l, r).unwrap();
            let alg = build_split_nilradical(&sys).unwrap();
            let lam: Vec<Rat> = (0..s_dim(&alg)).map(|k| rat(k as i64 + 2)).collect();
            assert!(
                is_stepwise_si(&alg, &lam).unwrap(),
                "{}{} at a nonzero point",
                l,
                r
            );
        }
    }

    #[test]
    fn sl3h_paper_lambda_is_nonsingular() {
        let a5 = build_root_system(TypeLabel::A, 5).unwrap();
        let alg = build_restricted_nilradical(&a5, &[1, 3, 5]).unwrap();
        assert_eq!(alg.center(0).len(), 4);
        // center basis is the fiber in root order: lowest first, highest last;
        // the sparse witness is supported on exactly those two
        let lam = vec![rat(1), Rat::zero(), Rat::zero(), rat(1)];
        let m = b_matrix(&alg, 0, &lam).unwrap();
        assert_eq!(m.nrows(), 8);
        assert!(!m.det().is_zero());
        // zero altogether is singular
        let z = b_matrix(&alg, 0, &vec![Rat::zero(); 4]).unwrap();
        assert!(z.det().is_zero());
    }

    #[test]
    fn witness_search_finds_the_sparse_pattern() {
        let a5 = build_root_system(TypeLabel::A, 5).unwrap();
        let alg = build_restricted_nilradical(&a5, &[1, 3, 5]).unwrap();
        let w = find_nondegenerate_lambda(&alg, 0).unwrap();
        assert_eq!(w.method, Some("sparse-extremes"));
        let lam = w.witness.unwrap();
        assert_eq!(lam[0], rat(1));
        assert_eq!(lam[3], rat(1));
        assert!(lam[1].is_zero() && lam[2].is_zero());

        let e6 = build_root_system(TypeLabel::E, 6).unwrap();
        let alg6 = build_restricted_nilradical(&e6, &[2, 3, 4, 5]).unwrap();
        let w6 = find_nondegenerate_lambda(&alg6, 0).unwrap();
        assert_eq!(w6.method, Some("sparse-extremes"));

        // split case: one-dimensional center, immediate witness
        let g2 = build_root_system(TypeLabel::G, 2).unwrap();
        let algg = build_split_nilradical(&g2).unwrap();
        let wg = find_nondegenerate_lambda(&algg, 0).unwrap();
        assert_eq!(wg.witness.unwrap(), vec![rat(1)]);
    }

    #[test]
    fn symbolic_budget_rejects_large_restricted_layers() {
        // sl(5, H): restricted A4, v_1 is 24-dimensional with a 4-dimensional
        // center, beyond the expansion budget
        let a9 = build_root_system(TypeLabel::A, 9).unwrap();
        let alg = build_restricted_nilradical(&a9, &[1, 3, 5, 7, 9]).unwrap();
        match layer_pfaffian(&alg, 0) {
            Err(Error::SymbolicBudget(_)) => {}
            other => panic!("expected budget rejection, got {other:?}"),
        }
        // numeric witnesses still work there
        let w = find_nondegenerate_lambda(&alg, 0).unwrap();
        assert!(w.witness.is_some());
    }

    #[test]
    fn restricted_e6_density_from_symbolic_expansion() {
        let e6 = build_root_system(TypeLabel::E, 6).unwrap();
        let alg = build_restricted_nilradical(&e6, &[2, 3, 4, 5]).unwrap();
        let p = plancherel_polynomial(&alg).unwrap();
        assert_eq!(p.homogeneous_degree(), Some(8));
        // evaluating on the sparse witness agrees with the numeric Pfaffian
        let mut lam = vec![Rat::zero(); 8];
        lam[0] = rat(1);
        lam[7] = rat(1);
        let via_poly = p.eval(&lam).unwrap();
        let via_matrix = pfaffian(&b_matrix(&alg, 0, &lam).unwrap()).unwrap();
        assert_eq!(via_poly, via_matrix);
        assert!(!via_poly.is_zero());
    }

    #[test]
    fn heisenberg_multiplicities() {
        let alg = upper(3);
        let lat = LatticeSpec::standard(&alg);
        for n in 1..=5i64 {
            assert_eq!(multiplicity(&alg, &lat, &[rat(n)]).unwrap(), rat(n.abs()));
            assert_eq!(multiplicity(&alg, &lat, &[rat(-n)]).unwrap(), rat(n.abs()));
        }
        assert_eq!(multiplicity(&alg, &lat, &[rat(0)]).unwrap(), rat(0));
        assert_eq!(
            multiplicity(&alg, &lat, &[rat_frac(1, 2)]).unwrap(),
            rat(0)
        );
    }

    #[test]
    fn multiplicity_table_heisenberg() {
        let alg = upper(3);
        let lat = LatticeSpec::standard(&alg);
        let report = multiplicity_table(&alg, &lat, 3).unwrap();
        assert_eq!(report.entries.len(), 6); // ±1, ±2, ±3
        for (lam, m) in &report.entries {
            assert_eq!(m, &lam[0].abs());
        }
        let j = report.to_json();
        let back = MultiplicityReport::from_json(&j).unwrap();
        assert_eq!(
            serde_json::to_string(&back.to_json()).unwrap(),
            serde_json::to_string(&j).unwrap()
        );
    }

    #[test]
    fn rescaled_lattice_changes_the_support() {
        let alg = upper(3);
        // z-lattice spanned by 2·e13: dual = (1/2)Z
        let lat = LatticeSpec::new(vec![Mat::from_rows(vec![vec![rat(2)]])]).unwrap();
        assert_eq!(
            multiplicity(&alg, &lat, &[rat_frac(1, 2)]).unwrap(),
            rat_frac(1, 2)
        );
        assert_eq!(multiplicity(&alg, &lat, &[rat_frac(1, 3)]).unwrap(), rat(0));
        let dual = dual_lattice(&lat);
        assert_eq!(dual.blocks()[0][(0, 0)], rat_frac(1, 2));
    }

    #[test]
    fn lattice_validation() {
        let alg = upper(4);
        // wrong block count
        let lat = LatticeSpec::standard(&upper(3));
        assert!(multiplicity(&alg, &lat, &[rat(1), rat(1)]).is_err());
        // non-block matrices are rejected
        let full = Mat::from_rows(vec![
            vec![rat(1), rat(1)],
            vec![rat(0), rat(1)],
        ]);
        assert!(LatticeSpec::from_matrix(&full, &[1, 1]).is_err());
        let ok = Mat::identity(2);
        assert!(LatticeSpec::from_matrix(&ok, &[1, 1]).is_ok());
        // singular blocks are rejected
        assert!(LatticeSpec::new(vec![Mat::zeros(1, 1)]).is_err());
    }

    #[test]
    fn multiplicity_sign_flip_invariance() {
        let alg = upper(5);
        let lat = LatticeSpec::standard(&alg);
        let lam = vec![rat(3), rat(-2)];
        let flipped = vec![rat(-3), rat(-2)];
        assert_eq!(
            multiplicity(&alg, &lat, &lam).unwrap(),
            multiplicity(&alg, &lat, &flipped).unwrap()
        );
    }

    #[test]
    fn polynomial_json_round_trip() {
        let alg = upper(5);
        let p = plancherel_polynomial(&alg).unwrap();
        let j = p.to_json();
        let back = PfaffianPolynomial::from_json(&j).unwrap();
        assert_eq!(back, p);
        assert_eq!(
            serde_json::to_string(&back.to_json()).unwrap(),
            serde_json::to_string(&j).unwrap()
        );
        // variable labels carry the layer index
        assert_eq!(p.vars(), &["l1_1".to_string(), "l2_1".to_string()]);
    }

    #[test]
    fn b_matrix_rejects_bad_input() {
        let alg = upper(4);
        assert!(b_matrix(&alg, 5, &[rat(1)]).is_err());
        assert!(b_matrix(&alg, 0, &[rat(1), rat(1)]).is_err());
        assert!(formal_degree(&alg, &[rat(1)]).is_err());
    }

    #[test]
    fn center_variable_labels() {
        let a5 = build_root_system(TypeLabel::A, 5).unwrap();
        let alg = build_restricted_nilradical(&a5, &[1, 3, 5]).unwrap();
        assert_eq!(
            plancherel_variables(&alg),
            vec!["l1_1", "l1_2", "l1_3", "l1_4"]
        );
        // the center basis slots follow the fiber order
        let labels: Vec<String> = alg
            .center(0)
            .iter()
            .map(|&i| alg.basis()[i].to_string())
            .collect();
        assert!(labels.iter().all(|l| l.starts_with("g[1,1]")));
        let _ = BasisLabel::parse(&labels[0]).unwrap();
    }
}

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::deodhar::m0_to_completion;
use super::CompletionError;
use crate::crystal::{
    quotient_lattice, sense_of, verify_crystal_basis, verify_crystal_lattice, Check, CrystalBasis, Lattice, Sense, Tail,
    TailLaw,
};
use crate::linalg::dvr::DvrBasis;
use crate::qq::RatFunc;
use crate::rep::{
    completion_module, divided_f, kashiwara_pow, ker_e, ComponentEmbedding, ComponentShape, Element, KashiwaraDir,
    ModuleCompletion, ModuleShape, Slot, Tag,
};

/// Valuation law `a k + b` in a slot index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct OrdLaw {
    a: i64,
    b: i64,
}

impl OrdLaw {
    fn plus(self, o: OrdLaw) -> OrdLaw {
        OrdLaw { a: self.a + o.a, b: self.b + o.b }
    }

    /// Re-expresses a law in `j` as a law in `i = j + shift`.
    fn reindex(self, shift: i64) -> OrdLaw {
        OrdLaw { a: self.a, b: self.b - self.a * shift }
    }

    fn tail(self) -> Tail {
        Tail::Monomial(TailLaw::new(self.a, self.b))
    }
}

/// For `j > 0`, `f^(j) m0 = q^(-(n+1) j) * unit * f^(j+n+1) m~`.
fn conversion_law(n: i64) -> OrdLaw {
    OrdLaw { a: -(n + 1), b: 0 }
}

fn window_for(n: u64, window: u64) -> u64 {
    window + n + 1
}

/// Lattice in `M(n)` coordinates given by coefficients on `f^(j) m0`, `j >= -n-1`.
fn lattice_from_m0_coeffs(n: u64, window: u64, coeff: impl Fn(i64) -> RatFunc, law_in_j: OrdLaw) -> Lattice {
    let shape = ModuleShape::verma(n as i64);
    let shift = n as i64 + 1;
    Lattice::diagonal(
        &shape,
        window_for(n, window),
        |_, i| {
            let j = i as i64 - shift;
            Some(&coeff(j) * &m0_to_completion(n, j))
        },
        vec![law_in_j.plus(conversion_law(n as i64)).reindex(shift).tail()],
    )
}

/// The completion of the standard lattice of `M(-n-2)` from the closed-form generators
/// `2 q^(n j) / (1 + q^-j) f^(j) m0`, `j = i - n - 1`, written in `M(n)` coordinates.
pub fn complete_verma_lattice(n: u64, window: u64) -> Lattice {
    let ni = n as i64;
    // for j > 0 the generator has valuation n j + j
    let gen_law = OrdLaw { a: ni + 1, b: 0 };
    lattice_from_m0_coeffs(n, window, |j| lowered_coefficient(n, j), gen_law)
}

/// `2 q^(n j) / (1 + q^-j)`.
pub fn lowered_coefficient(n: u64, j: i64) -> RatFunc {
    let den = &RatFunc::one() + &RatFunc::q_pow(-j);
    &(&RatFunc::from_int(2) * &RatFunc::q_pow(n as i64 * j)) / &den
}

/// The unit-free generators: `q^(n j) f^(j) m0` for `j <= 0` and `q^((n+1) j) f^(j) m0` for `j > 0`.
pub fn reduced_generator_lattice(n: u64, window: u64) -> Lattice {
    let ni = n as i64;
    lattice_from_m0_coeffs(
        n,
        window,
        |j| RatFunc::q_pow(if j > 0 { (ni + 1) * j } else { ni * j }),
        OrdLaw { a: ni + 1, b: 0 },
    )
}

/// `sum_{j >= -n-1} A f^(j) m0`.
pub fn full_span_lattice(n: u64, window: u64) -> Lattice {
    lattice_from_m0_coeffs(n, window, |_| RatFunc::one(), OrdLaw { a: 0, b: 0 })
}

/// Scalar by which `(q t Δ)^(-1/2)` acts on `f^(j) m0`: `q^j / (q^(-n-1) - 1)`.
pub fn delta_root_inverse(n: u64, j: i64) -> RatFunc {
    let d = &RatFunc::q_pow(-(n as i64) - 1) - &RatFunc::one();
    &RatFunc::q_pow(j) / &d
}

/// Scalar of the rescaling on `f^(j) m0`: `q^(-n-1) (q t Δ)^(-1/2)` in weights `<= -n-2`, identity above.
pub fn rescale_factor(n: u64, j: i64) -> RatFunc {
    if j >= 0 {
        &RatFunc::q_pow(-(n as i64) - 1) * &delta_root_inverse(n, j)
    } else {
        RatFunc::one()
    }
}

/// `q^(-n(n+1)) rescale (q t Δ)^(-n/2) L_full`.
pub fn rescaled_completion_lattice(n: u64, window: u64) -> Lattice {
    let ni = n as i64;
    let coeff = |j: i64| {
        let mut c = RatFunc::q_pow(-ni * (ni + 1));
        c = &c * &rescale_factor(n, j);
        let root = delta_root_inverse(n, j);
        for _ in 0..n {
            c = &c * &root;
        }
        c
    };
    // valuations for j > 0: n(j + n + 1) from the roots, j from the rescaling, -n(n+1) from the scalar
    let law = OrdLaw { a: ni, b: ni * (ni + 1) }.plus(OrdLaw { a: 1, b: 0 }).plus(OrdLaw { a: 0, b: -ni * (ni + 1) });
    lattice_from_m0_coeffs(n, window, coeff, law)
}

/// Completion of a standard crystal basis: complete components are kept and each `M(-n-2)` is
/// replaced by the standard basis of `M(n)` with `f^(n+1) m~ = m0`.
#[derive(Clone, Debug)]
pub struct CompletedBasis {
    pub completion: ModuleCompletion,
    pub basis: CrystalBasis,
}

fn shift_window(completion: &ModuleCompletion, window: u64) -> u64 {
    completion
        .embeddings
        .iter()
        .map(|e| match e {
            ComponentEmbedding::VermaShift { n } => window_for(*n, window),
            ComponentEmbedding::Identity => window,
        })
        .max()
        .unwrap_or(window)
}

/// Window that the standard basis was built with, recovered from its floor.
fn window_of(cb: &CrystalBasis) -> u64 {
    let shape = cb.shape();
    let floor = cb.lattice.floor();
    shape
        .strings()
        .iter()
        .filter(|&&(c, _)| !shape.components[c].is_findim())
        .map(|&(c, t)| ((shape.components[c].top_weight(t) - floor) / 2) as u64)
        .min()
        .unwrap_or(0)
}

pub fn complete_lattice(cb: &CrystalBasis) -> Result<CompletedBasis, CompletionError> {
    let shape = cb.shape().clone();
    let window = window_of(cb);
    let standard = CrystalBasis::standard(&shape, window);
    if !cb.lattice.equals(&standard.lattice)? || !verify_crystal_basis(cb)?.pass() {
        return Err(CompletionError::NotStandard);
    }
    let completion = completion_module(&shape)?;
    let basis = CrystalBasis::standard(&completion.target, shift_window(&completion, window));
    Ok(CompletedBasis { completion, basis })
}

/// Image of a lattice of `M` in `C(M)`.
pub fn embed_lattice(l: &Lattice, completion: &ModuleCompletion) -> Result<Lattice, CompletionError> {
    let strings = completion.source.strings();
    let tails = strings
        .iter()
        .zip(l.tails())
        .map(|(&(c, _), t)| match (completion.embeddings[c], t) {
            (ComponentEmbedding::VermaShift { n }, Tail::Monomial(law)) => {
                // f^(k) m -> binom(n+1+k, k) f^(n+1+k) m~, and the binomial has valuation -(n+1) k
                let n = n as i64;
                let moved = OrdLaw { a: law.a, b: law.b }.plus(OrdLaw { a: -(n + 1), b: 0 }).reindex(n + 1);
                moved.tail()
            }
            (_, t) => t.clone(),
        })
        .collect();
    Ok(l.map(&completion.target, |s| completion.embed_slot(s), tails)?)
}

/// Projection `C(M) -> C(M)/M` onto the finite-dimensional quotients of the lowered Verma pieces.
pub fn quotient_shape(completion: &ModuleCompletion) -> (ModuleShape, BTreeMap<usize, usize>) {
    let mut comps = Vec::new();
    let mut index = BTreeMap::new();
    for (c, e) in completion.embeddings.iter().enumerate() {
        if let ComponentEmbedding::VermaShift { n } = e {
            index.insert(c, comps.len());
            comps.push(ComponentShape::FinDim(*n));
        }
    }
    (ModuleShape::new(comps), index)
}

fn project(completion: &ModuleCompletion, index: &BTreeMap<usize, usize>, s: Slot) -> Element {
    match (completion.embeddings[s.component], index.get(&s.component)) {
        (ComponentEmbedding::VermaShift { n }, Some(&qc)) if s.k <= n => Element::basis(Slot::new(qc, Tag::U, s.k)),
        _ => Element::zero(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionReport {
    /// `L^e ⊆ L~` and `L~` is not strictly inside `L`.
    pub cond_i: Check,
    /// `L~ ∩ M = L~ ∩ L`.
    pub cond_ii: Check,
    /// `L~ / (L~ ∩ L)` is a crystal lattice of `C(M)/M`.
    pub cond_iii: Check,
    /// The nonzero images of the basis of `L~` form a crystal basis of `C(M)/M`.
    pub basis_cond: Check,
    /// `L~^e = L^e` in each weight `-n-2` where a lowered Verma piece sits.
    pub kernel_match: Check,
    /// `f^(n+1)` of the top basis vector of each completed piece is a unit multiple of `m0`.
    pub top_generator: Check,
    pub pass: bool,
}

pub fn verify_lattice_completion(
    l: &CrystalBasis,
    ltilde: &CrystalBasis,
    completion: &ModuleCompletion,
) -> Result<CompletionReport, CompletionError> {
    if completion.source != *l.shape() || completion.target != *ltilde.shape() {
        return Err(CompletionError::ShapeMismatch);
    }
    let target = &completion.target;
    let lt = &ltilde.lattice;
    let phi_l = embed_lattice(&l.lattice, completion)?;

    // (i)
    let le = phi_l.kernel_e()?;
    let cond_i = if !lt.contains_lattice(&le)? {
        Check::fail(None, "L^e is not contained in L~")
    } else if phi_l.contains_lattice(lt)? && !lt.contains_lattice(&phi_l)? {
        Check::fail(None, "L~ is strictly contained in L")
    } else {
        Check::ok()
    };

    // (ii)
    let src = completion.source.clone();
    let image_basis = |w: i64| -> Result<Vec<Element>, crate::crystal::CrystalError> {
        Ok(src.weight_slots(w).into_iter().map(|s| completion.embed_slot(s)).filter(|e| e.weight(target) == Some(w)).collect())
    };
    let lt_cap_m = lt.intersect_subspace(image_basis, lt.tails().to_vec())?;
    let lt_cap_l = lt.intersect(&phi_l)?;
    let cond_ii = Check::from_bool(lt_cap_m.equals(&lt_cap_l)?, "L~ ∩ M differs from L~ ∩ L");

    // (iii) and the basis condition
    let (qshape, index) = quotient_shape(completion);
    let quotient = quotient_lattice(lt, &lt_cap_l, &qshape, |s| project(completion, &index, s))?;
    let qreport = verify_crystal_lattice(&quotient)?;
    let cond_iii = Check::from_bool(qreport.pass(), format!("quotient lattice fails: {qreport:?}"));

    let mut reps = Vec::new();
    let qinv = RatFunc::q_pow(-1);
    for r in &ltilde.reps {
        let mut img = Element::zero();
        for (s, c) in r.terms() {
            img = img.add(&project(completion, &index, *s).scale(c));
        }
        if img.is_zero() || quotient.contains(&img.scale(&qinv))? {
            continue;
        }
        reps.push(img);
    }
    let basis_cond = if qshape.is_empty() {
        Check::from_bool(reps.is_empty(), "nonzero classes in an empty quotient")
    } else {
        let qb = CrystalBasis::new(quotient.clone(), reps, vec![None; qshape.strings().len()])?;
        let r = verify_crystal_basis(&qb)?;
        Check::from_bool(r.pass(), format!("induced basis fails: {r:?}"))
    };

    // L~^e and L^e in weight -n-2, and the top generator
    let lte = lt.kernel_e()?;
    let mut kernel_match = Check::ok();
    let mut top_generator = Check::ok();
    for (c, e) in completion.embeddings.iter().enumerate() {
        let ComponentEmbedding::VermaShift { n } = *e else { continue };
        let w = -(n as i64) - 2;
        if !lte.space(w)?.same_lattice(&le.space(w)?) {
            kernel_match = Check::fail(None, format!("kernels differ in weight {w}"));
        }
        let m0 = Element::basis(Slot::new(c, Tag::M, n + 1));
        let top = ltilde.reps.iter().find(|r| r.len() == 1 && r.slots().next() == Some(&Slot::new(c, Tag::M, 0)));
        match top {
            Some(r) => {
                let img = divided_f(r, target, n + 1)?;
                let ratio = img.coeff(&Slot::new(c, Tag::M, n + 1));
                if img != m0.scale(&ratio) || !ratio.is_unit_a() {
                    top_generator = Check::fail(Some(r.clone()), "f^(n+1) of the top vector is not a unit times m0");
                }
            }
            None => top_generator = Check::fail(None, format!("no basis vector at the top of component {c}")),
        }
    }

    let pass = cond_i.pass && cond_ii.pass && cond_iii.pass && basis_cond.pass && kernel_match.pass && top_generator.pass;
    Ok(CompletionReport { cond_i, cond_ii, cond_iii, basis_cond, kernel_match, top_generator, pass })
}

/// Weights `n >= 0` at which `Ker e` can be nonzero in weight `n` or `-n-2`.
fn candidate_ns(shape: &ModuleShape) -> Vec<u64> {
    let bound = shape.strings().iter().map(|&(c, t)| shape.components[c].top_weight(t).unsigned_abs()).max().unwrap_or(0);
    (0..=bound + 2).collect()
}

/// Whether `f~^(n+1)` maps `L^e_n` onto `L^e_{-n-2}` for every `n >= 0`.
pub fn is_complete_lattice(cb: &CrystalBasis) -> Result<bool, CompletionError> {
    let shape = cb.shape();
    if sense_of(shape)? != Sense::Bq {
        return Ok(false);
    }
    let le = cb.lattice.kernel_e()?;
    for n in candidate_ns(shape) {
        let hi = le.space(n as i64)?;
        let lo = le.space(-(n as i64) - 2)?;
        if hi.rank() == 0 && lo.rank() == 0 {
            continue;
        }
        let slots_hi = shape.weight_slots(n as i64);
        let slots_lo = shape.weight_slots(-(n as i64) - 2);
        let mut images = Vec::new();
        for row in &hi.rows {
            let x = Element::from_coords(&slots_hi, row);
            images.push(kashiwara_pow(KashiwaraDir::FTilde, &x, shape, n + 1)?.coords(&slots_lo));
        }
        let image = DvrBasis::from_generators(&images, slots_lo.len());
        if !image.same_lattice(&lo) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The same question answered by dimensions of `Ker e` alone.
pub fn kernel_dimensions_match(shape: &ModuleShape) -> Result<bool, CompletionError> {
    for n in candidate_ns(shape) {
        if ker_e(shape, n as i64)?.len() != ker_e(shape, -(n as i64) - 2)?.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

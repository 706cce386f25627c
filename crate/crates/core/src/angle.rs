//! Angles between the intermediate subfactors `P` and `Q` of a GHJ pair,
//! by a closed form, by a direct computation in the corner tower, and for
//! the real quadrilateral `P̃`, `Q̃` built from the Temperley-Lieb floor.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::coxeter::{distance_to_trivalent, exact_json, Kind, PointedCoxeterGraph};
use crate::error::{Error, Result};
use crate::field::{approximate, sign, CycNumber, Poly};
use crate::ghj::{conjugated_towers, shift_element};
use crate::linalg::Matrix;
use crate::tower::{AlgElement, ExactTower, Subalgebra, Tower, DEFAULT_LEVEL_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AngleMethod {
    ClosedForm,
    PathOracle,
    SimplerQuadrilateral,
}

impl AngleMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            AngleMethod::ClosedForm => "closed-form",
            AngleMethod::PathOracle => "path-oracle",
            AngleMethod::SimplerQuadrilateral => "simpler-quadrilateral",
        }
    }
}

#[derive(Debug, Clone)]
pub struct AngleResult {
    pub graph: String,
    pub method: AngleMethod,
    /// `|cos θ|` for the nontrivial angle `θ`; the other angles are 0 and π/2.
    pub cos_value: CycNumber,
    /// Exact intermediate quantities, by name.
    pub witnesses: BTreeMap<String, CycNumber>,
}

impl AngleResult {
    pub fn degrees(&self) -> f64 {
        self.cos_value.to_f64().clamp(-1.0, 1.0).acos().to_degrees()
    }

    /// The angle set `{0, π/2, θ}` in degrees.
    pub fn angle_set_degrees(&self) -> [f64; 3] {
        [0.0, 90.0, self.degrees()]
    }

    pub fn to_json(&self) -> serde_json::Value {
        let witnesses: serde_json::Map<String, serde_json::Value> = self
            .witnesses
            .iter()
            .map(|(k, v)| (k.clone(), exact_json(v)))
            .collect();
        serde_json::json!({
            "graph": self.graph,
            "method": self.method.as_str(),
            "cos": exact_json(&self.cos_value),
            "cos_approx": approximate(&self.cos_value, 12),
            "angle_degrees_approx": format!("{:.9}", self.degrees()),
            "angle_set_degrees_approx": self.angle_set_degrees().iter().map(|d| format!("{d:.6}")).collect::<Vec<_>>(),
            "witnesses": witnesses,
        })
    }
}

fn abs_real(x: &CycNumber) -> Result<CycNumber> {
    if !x.is_real() {
        return Err(Error::Inconsistent(format!(
            "expected a real value, got {}",
            approximate(x, 12)
        )));
    }
    Ok(if sign(x) == Ordering::Less {
        -x.clone()
    } else {
        x.clone()
    })
}

fn require_de(p: &PointedCoxeterGraph) -> Result<usize> {
    if p.graph().kind() == Kind::A {
        return Err(Error::NoTrivalentVertex(p.name()));
    }
    distance_to_trivalent(p)
}

/// `(s^k + s^{-k}) / (s + s^{-1})` with `s = ζ_{2ℓ}`, i.e.
/// `cos(kπ/ℓ) / cos(π/ℓ)`.
pub fn cos_ratio(l: u32, k: u32) -> CycNumber {
    let s = CycNumber::two_cos(2 * l);
    let sk = CycNumber::root_of_unity(2 * l, k as i64).expect("positive order")
        + CycNumber::root_of_unity(2 * l, -(k as i64)).expect("positive order");
    sk / s
}

/// `|cos((2d+3)π/ℓ)| / cos(π/ℓ)`.
pub fn angle_closed_form(p: &PointedCoxeterGraph) -> Result<AngleResult> {
    let d = require_de(p)?;
    let l = p.graph().coxeter_number();
    let signed = cos_ratio(l, 2 * d as u32 + 3);
    let cos_value = abs_real(&signed)?;
    Ok(AngleResult {
        graph: p.name(),
        method: AngleMethod::ClosedForm,
        cos_value,
        witnesses: BTreeMap::from([("signed_ratio".to_string(), signed)]),
    })
}

/// The element of `pA_{d+1}p` orthogonal to the Temperley-Lieb floor,
/// made self-adjoint with its first nonzero real coordinate positive.
fn orthogonal_to_tl(t: &ExactTower, level: usize) -> Result<AlgElement<CycNumber>> {
    let gens: Vec<_> = (1..level)
        .map(|i| t.jones(i, level))
        .collect::<Result<_>>()?;
    let tl = t.generated_subalgebra(&gens, level)?;
    let complement = t.dim(level) - tl.len();
    if complement != 1 {
        return Err(Error::HypothesisFailure(format!(
            "the complement of the Temperley-Lieb floor in level {level} has dimension {complement}, not 1 (not 2-transitive)"
        )));
    }
    let sub = Subalgebra::span(t, tl)?;
    for (a, b) in t.matrix_units(level)? {
        let u = t.unit(level, a, b)?;
        let y0 = u.sub(&t.conditional_expectation(&u, &sub)?);
        if y0.is_zero() {
            continue;
        }
        let sum = y0.add(&t.adjoint(&y0)?);
        let mut y = if sum.is_zero() {
            let i = CycNumber::root_of_unity(4, 1)?;
            y0.sub(&t.adjoint(&y0)?).scale(&i)
        } else {
            sum
        };
        if let Some(first) = y.entries().values().find(|c| c.is_real()) {
            if sign(first) == Ordering::Less {
                y = y.neg();
            }
        }
        return Ok(y);
    }
    Err(Error::Inconsistent(
        "no element outside the Temperley-Lieb floor".into(),
    ))
}

/// The cosine as `|tr(v y v* · w y w*)| / tr(y²)` for `y` orthogonal to the
/// Temperley-Lieb floor of `pA_{d+1}p`, `v = g_1⋯g_{d+1}`, `w = g_1⁻¹⋯g_{d+1}⁻¹`.
/// Also checks the result against `‖E_Q(x)‖² / ‖x‖²` for `x = v y v*`.
pub fn angle_path_oracle(p: &PointedCoxeterGraph) -> Result<AngleResult> {
    let d = require_de(p)?;
    let mut t: ExactTower = Tower::pointed(p, DEFAULT_LEVEL_CAP)?;
    t.ensure_level(d + 2)?;
    let y = orthogonal_to_tl(&t, d + 1)?;
    let top = d + 2;
    let y_top = t.include(&y, top)?;
    let v = shift_element(&t, d + 1, false)?;
    let w = shift_element(&t, d + 1, true)?;
    let v_inv = v.inverse(&t)?;
    let w_inv = w.inverse(&t)?;
    let x = v.element.mul(&y_top).mul(&v_inv.element);
    let z = w.element.mul(&y_top).mul(&w_inv.element);
    let inner = t.trace(&x.mul(&z))?;
    let norm = t.trace(&y.mul(&y))?;
    let signed = inner.checked_div(&norm)?;
    let cos_value = abs_real(&signed)?;

    let q = Subalgebra::conjugated(d + 1, w.element.clone(), w_inv.element.clone())?;
    let ex = t.conditional_expectation(&x, &q)?;
    let projected = t
        .trace_product(&ex, &ex)?
        .checked_div(&t.trace_product(&x, &x)?)?;
    if projected != &cos_value * &cos_value {
        return Err(Error::Inconsistent(format!(
            "projection onto Q gives cos² = {}, inner product gives {}",
            approximate(&projected, 12),
            approximate(&(&cos_value * &cos_value), 12)
        )));
    }
    Ok(AngleResult {
        graph: p.name(),
        method: AngleMethod::PathOracle,
        cos_value,
        witnesses: BTreeMap::from([
            ("inner_product".to_string(), inner),
            ("norm_squared".to_string(), norm),
            ("signed_ratio".to_string(), signed),
            ("projected_cos_squared".to_string(), projected),
        ]),
    })
}

/// An eigenvalue of a finite-level angle operator.
#[derive(Debug, Clone)]
pub enum SpectralValue {
    Exact(CycNumber),
    /// A factor of the characteristic polynomial with no identified roots,
    /// with numerical approximations of them.
    Factor {
        poly: Poly<CycNumber>,
        roots: Vec<Complex64>,
    },
}

#[derive(Debug, Clone)]
pub struct SpectrumEntry {
    pub value: SpectralValue,
    pub multiplicity: usize,
}

fn durand_kerner(poly: &Poly<CycNumber>) -> Vec<Complex64> {
    let c: Vec<Complex64> = poly.coeffs().iter().map(|x| x.to_complex()).collect();
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let monic: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
    let eval = |z: Complex64| {
        monic
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..500 {
        let prev = roots.clone();
        for i in 0..n {
            let denom = (0..n)
                .filter(|&j| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, j| {
                    acc * (roots[i] - roots[j])
                });
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
        }
        if roots.iter().zip(&prev).all(|(a, b)| (a - b).norm() < 1e-14) {
            break;
        }
    }
    roots
}

/// Spectrum of `E_A E_B E_A` acting on `A_level` with the trace inner
/// product. Exact eigenvalues are found among 0, 1 and `candidates`; any
/// remaining factor of the characteristic polynomial is reported as is.
pub fn angle_spectrum_finite(
    t: &ExactTower,
    a: &Subalgebra<CycNumber>,
    b: &Subalgebra<CycNumber>,
    level: usize,
    candidates: &[CycNumber],
) -> Result<Vec<SpectrumEntry>> {
    let units = t.matrix_units(level)?;
    let paths = t.path_count(level);
    let index: BTreeMap<usize, usize> = units
        .iter()
        .enumerate()
        .map(|(k, &(x, y))| (x as usize * paths + y as usize, k))
        .collect();
    let n = units.len();
    let mut m = Matrix::<CycNumber>::zeros(n, n);
    for (k, &(x, y)) in units.iter().enumerate() {
        let u = t.unit(level, x, y)?;
        let ea = t.conditional_expectation(&u, a)?;
        if t.conditional_expectation(&ea, a)? != ea {
            return Err(Error::NotIdempotent);
        }
        let img = t.conditional_expectation(&t.conditional_expectation(&ea, b)?, a)?;
        for (key, c) in t.to_sparse(&img) {
            m.set(index[&key], k, c);
        }
    }
    let mut chi = m.charpoly();
    let mut out = Vec::new();
    let mut tried: Vec<CycNumber> = Vec::new();
    for c in [CycNumber::zero(), CycNumber::one()]
        .iter()
        .chain(candidates)
    {
        if tried.contains(c) {
            continue;
        }
        tried.push(c.clone());
        let lin = Poly::linear(c.clone());
        let mut mult = 0;
        loop {
            let (q, r) = chi.div_rem(&lin);
            if !r.is_zero() || chi.degree() == Some(0) {
                break;
            }
            chi = q;
            mult += 1;
        }
        if mult > 0 {
            out.push(SpectrumEntry {
                value: SpectralValue::Exact(c.clone()),
                multiplicity: mult,
            });
        }
    }
    if chi.degree().unwrap_or(0) > 0 {
        let roots = durand_kerner(&chi);
        out.push(SpectrumEntry {
            value: SpectralValue::Factor { poly: chi, roots },
            multiplicity: 1,
        });
    }
    Ok(out)
}

/// The projection `f ∈ pA_2p` other than `pe_1` with trace `τ`, checked
/// against `fpe_1 = 0`, `pe_2 f pe_2 = τ pe_2` and `f pe_2 f = τ f`.
fn find_f(t: &ExactTower) -> Result<AlgElement<CycNumber>> {
    let tau = t.tau().clone();
    let e1 = t.jones(1, 2)?;
    let e2 = t.jones(2, 3)?;
    for v in t.vertices(2) {
        let f = t.central_projection(v, 2)?;
        if f == e1 || t.trace(&f)? != tau {
            continue;
        }
        let f3 = t.include(&f, 3)?;
        if f.mul(&e1).is_zero()
            && e2.mul(&f3).mul(&e2) == e2.scale(&tau)
            && f3.mul(&e2).mul(&f3) == f3.scale(&tau)
        {
            return Ok(f);
        }
    }
    Err(Error::HypothesisFailure(
        "no projection f in pA_2p with tr(f) = τ, fpe_1 = 0, pe_2fpe_2 = τpe_2".into(),
    ))
}

/// The angle between `P̃ = pTL` and `Q̃ = ⟨pTL2, f⟩`, from
/// `x = f − τ` and its projection onto `pTL_2`.
pub fn simpler_quadrilateral(p: &PointedCoxeterGraph) -> Result<AngleResult> {
    let g = p.graph();
    let allowed = match (g.kind(), p.variant()) {
        (Kind::D, Some(2)) => g.rank() >= 5,
        (Kind::E, Some(2)) => g.rank() == 6,
        _ => false,
    };
    if !allowed {
        return Err(Error::HypothesisFailure(format!(
            "{} is not D_n,2 (n ≥ 5) or E6,2",
            p.name()
        )));
    }
    let mut t: ExactTower = Tower::pointed(p, DEFAULT_LEVEL_CAP)?;
    t.ensure_level(3)?;
    let tau = t.tau().clone();
    let f = find_f(&t)?;
    let x = f.sub(&t.scalar(2, &tau)?);
    let tl2 = Subalgebra::span(&t, vec![t.identity(2)?, t.jones(1, 2)?])?;
    let ex = t.conditional_expectation(&x, &tl2)?;
    let ex_norm = t.trace_product(&ex, &ex)?;
    let x_norm = t.trace_product(&x, &x)?;
    let ratio = ex_norm.checked_div(&x_norm)?;
    let one_minus = CycNumber::one() - tau.clone();
    let cos_value = tau.checked_div(&one_minus)?;
    if ratio != &cos_value * &cos_value {
        return Err(Error::Inconsistent(format!(
            "‖E(x)‖²/‖x‖² = {} is not (τ/(1−τ))²",
            approximate(&ratio, 12)
        )));
    }
    Ok(AngleResult {
        graph: p.name(),
        method: AngleMethod::SimplerQuadrilateral,
        cos_value,
        witnesses: BTreeMap::from([
            ("tau".to_string(), tau),
            ("projection_norm_squared".to_string(), ex_norm),
            ("x_norm_squared".to_string(), x_norm),
            ("cos_squared".to_string(), ratio),
        ]),
    })
}

/// The floors `P̃_n = pTL_n` and `Q̃_n = ⟨f, e_2, …, e_{n−1}⟩` of the real
/// quadrilateral, as subalgebras of `pA_np`.
pub fn simpler_floors(
    t: &ExactTower,
    n: usize,
) -> Result<(Subalgebra<CycNumber>, Subalgebra<CycNumber>)> {
    let f = find_f(t)?;
    let e: Vec<_> = (1..n).map(|i| t.jones(i, n)).collect::<Result<_>>()?;
    let p_tilde = t.generated_subalgebra(&e, n)?;
    let mut gens = vec![t.include(&f, n)?];
    gens.extend(e.into_iter().skip(1));
    let q_tilde = t.generated_subalgebra(&gens, n)?;
    Ok((Subalgebra::span(t, p_tilde)?, Subalgebra::span(t, q_tilde)?))
}

/// The floors `P_n`, `Q_n` of the GHJ pair in the corner tower.
pub fn ghj_floors(
    t: &ExactTower,
    n: usize,
) -> Result<(Subalgebra<CycNumber>, Subalgebra<CycNumber>)> {
    if n == 0 {
        return Err(Error::OutOfRange {
            index: 0,
            valid: "n ≥ 1".into(),
        });
    }
    let towers = conjugated_towers(t, n - 1)?;
    Ok((towers.p(n).clone(), towers.q(n).clone()))
}

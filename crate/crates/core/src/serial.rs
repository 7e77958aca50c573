//! JSON forms of the exact values, plus the probe, word and module-spec
//! file formats.
//!
//! Rationals are `"p/q"` strings (plain integers are also accepted on
//! input), cyclotomic values are 4-arrays of rationals, and scalars are
//! arrays of `{radicand, tau_power, cyclo}` records.

use num_traits::Zero;
use serde_json::{json, Value};
use thiserror::Error;

use crate::gauss::{GaussError, GaussPhase, GaussVector, PhasedJet, Poly};
use crate::jets::{JetRing, JetScalar};
use crate::kashiwara::{KashiwaraError, ZModule};
use crate::linalg::Mat;
use crate::metaplectic::{Generator, GeneratorWord, MetaplecticError};
use crate::scalars::rational::{format_rational, rational_from_json};
use crate::scalars::{Cyclo, Rational, Scalar};
use crate::weyl::{Coeff, WeylOp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SerialError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Gauss(#[from] GaussError),
    #[error(transparent)]
    Metaplectic(#[from] MetaplecticError),
    #[error(transparent)]
    Kashiwara(#[from] KashiwaraError),
}

fn malformed(what: &str, v: &Value) -> SerialError {
    SerialError::Malformed(format!("{what}: {v}"))
}

pub fn rational(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn parse_rational(v: &Value) -> Result<Rational, SerialError> {
    rational_from_json(v).ok_or_else(|| malformed("rational", v))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, SerialError> {
    v.as_array().ok_or_else(|| malformed(what, v))
}

pub fn cyclo(c: &Cyclo) -> Value {
    Value::Array(c.coords().iter().map(rational).collect())
}

pub fn parse_cyclo(v: &Value) -> Result<Cyclo, SerialError> {
    let items = array(v, "cyclotomic value")?;
    if items.len() != 4 {
        return Err(malformed("cyclotomic value needs 4 coordinates", v));
    }
    let c: Vec<Rational> = items.iter().map(parse_rational).collect::<Result<_, _>>()?;
    Ok(Cyclo::new([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()]))
}

pub fn scalar(s: &Scalar) -> Value {
    Value::Array(
        s.terms()
            .map(|(d, k, c)| json!({"radicand": d.to_string(), "tau_power": k, "cyclo": cyclo(c)}))
            .collect(),
    )
}

/// Accepts rational radicands `p/q`, read as `√(pq)/q`.
pub fn parse_scalar(v: &Value) -> Result<Scalar, SerialError> {
    let mut out = Scalar::zero();
    for term in array(v, "scalar")? {
        let radicand = term.get("radicand").map(parse_rational).transpose()?.unwrap_or_else(|| Rational::from_integer(1.into()));
        if radicand <= Rational::zero() {
            return Err(malformed("radicand must be positive", term));
        }
        let tau_power = term
            .get("tau_power")
            .map(|t| t.as_i64().and_then(|k| i32::try_from(k).ok()).ok_or_else(|| malformed("tau_power", t)))
            .transpose()?
            .unwrap_or(0);
        let c = parse_cyclo(term.get("cyclo").ok_or_else(|| malformed("missing cyclo", term))?)?;
        let product = radicand.numer() * radicand.denom();
        let d = u64::try_from(&product).map_err(|_| malformed("radicand too large", term))?;
        let c = c.scale(&(Rational::from_integer(1.into()) / Rational::from_integer(radicand.denom().clone())));
        out = &out + &Scalar::monomial(c, d, tau_power);
    }
    Ok(out)
}

pub fn jet(j: &JetScalar) -> Value {
    json!({
        "base": rational(j.base()),
        "order": j.order(),
        "coeffs": j.coeffs().iter().map(scalar).collect::<Vec<_>>(),
    })
}

pub fn parse_jet(v: &Value) -> Result<JetScalar, SerialError> {
    let base = parse_rational(v.get("base").ok_or_else(|| malformed("jet base", v))?)?;
    let coeffs: Vec<Scalar> = array(v.get("coeffs").ok_or_else(|| malformed("jet coeffs", v))?, "jet coeffs")?
        .iter()
        .map(parse_scalar)
        .collect::<Result<_, _>>()?;
    let mut coeffs = coeffs;
    if let Some(order) = v.get("order") {
        let k = order.as_u64().ok_or_else(|| malformed("jet order", order))? as usize;
        if coeffs.len() > k {
            return Err(malformed("more coefficients than the order", v));
        }
        coeffs.resize(k, Scalar::zero());
    }
    JetScalar::new(base, coeffs).map_err(|e| SerialError::Malformed(e.to_string()))
}

/// A jet in `ring`; shorter jets at the same base are padded with zeros.
fn parse_jet_in(v: &Value, ring: &JetRing) -> Result<JetScalar, SerialError> {
    let j = parse_jet(v)?;
    if j.base() != &ring.base || j.order() > ring.order {
        return Err(malformed("jet does not fit the suite's ring", v));
    }
    let mut coeffs = j.coeffs().to_vec();
    coeffs.resize(ring.order, Scalar::zero());
    JetScalar::new(ring.base.clone(), coeffs).map_err(|e| SerialError::Malformed(e.to_string()))
}

pub fn phased_jet(p: &PhasedJet) -> Value {
    Value::Array(p.parts().map(|(tag, j)| json!({"tag": cyclo(tag), "jet": jet(j)})).collect())
}

pub fn matrix(m: &Mat) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(rational).collect())).collect())
}

pub fn parse_matrix(v: &Value) -> Result<Mat, SerialError> {
    let rows: Vec<Vec<Rational>> = array(v, "matrix")?
        .iter()
        .map(|r| array(r, "matrix row")?.iter().map(parse_rational).collect())
        .collect::<Result<_, _>>()?;
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        return Err(malformed("ragged matrix", v));
    }
    Ok(Mat::from_rows(rows))
}

pub fn poly(p: &Poly) -> Value {
    Value::Array(p.terms().map(|(e, c)| json!({"exps": e, "coeff": jet(c)})).collect())
}

fn gaussian_pair(c: &Cyclo) -> Value {
    match c.gaussian_parts() {
        Some((re, im)) => json!([rational(re), rational(im)]),
        None => cyclo(c),
    }
}

pub fn gauss_vector(v: &GaussVector) -> Value {
    let n = v.arity();
    Value::Array(
        v.terms()
            .map(|(ph, p)| {
                let q: Vec<Value> = (0..n)
                    .map(|i| Value::Array((0..n).map(|j| gaussian_pair(ph.quad(i, j))).collect()))
                    .collect();
                let l: Vec<Value> = (0..n).map(|i| gaussian_pair(ph.linear(i))).collect();
                json!({"phase": {"Q": q, "l": l, "c": gaussian_pair(ph.constant())}, "poly": poly(p)})
            })
            .collect(),
    )
}

pub fn weyl_op<C: Coeff>(op: &WeylOp<C>, coeff: impl Fn(&C) -> Value) -> Value {
    Value::Array(
        op.terms()
            .map(|(x, d, c)| json!({"x_exp": x, "d_exp": d, "coeff": coeff(c)}))
            .collect(),
    )
}

pub fn generator(g: &Generator) -> Value {
    match g {
        Generator::J => Value::String("J".into()),
        Generator::DiagA(a) => json!({"diag": matrix(a)}),
        Generator::LowerC(c) => json!({"lower": matrix(c)}),
    }
}

pub fn parse_generator(v: &Value) -> Result<Generator, SerialError> {
    if v.as_str() == Some("J") {
        return Ok(Generator::J);
    }
    if let Some(a) = v.get("diag") {
        return Ok(Generator::diag(parse_matrix(a)?)?);
    }
    if let Some(c) = v.get("lower") {
        return Ok(Generator::lower(parse_matrix(c)?)?);
    }
    Err(malformed("generator", v))
}

pub fn word(w: &GeneratorWord) -> Value {
    Value::Array(w.generators().iter().map(generator).collect())
}

pub fn parse_word(v: &Value) -> Result<GeneratorWord, SerialError> {
    Ok(GeneratorWord(array(v, "word")?.iter().map(parse_generator).collect::<Result<_, _>>()?))
}

/// A word pair `{"w1": word, "w2": word}` with an optional `"w12"`.
pub fn parse_word_pair(v: &Value) -> Result<(GeneratorWord, GeneratorWord, Option<GeneratorWord>), SerialError> {
    let w1 = parse_word(v.get("w1").ok_or_else(|| malformed("missing w1", v))?)?;
    let w2 = parse_word(v.get("w2").ok_or_else(|| malformed("missing w2", v))?)?;
    let w12 = v.get("w12").map(parse_word).transpose()?;
    Ok((w1, w2, w12))
}

/// One probe: `poly(x)·e^{τ(σ·xᵀQx + lᵀx)}`. `Q` is given row by row as
/// `[re, im]` pairs; the linear coefficients are jets in the ring of `σ`.
pub fn parse_probe(v: &Value, sigma: &JetScalar) -> Result<GaussVector, SerialError> {
    let ring = sigma.ring();
    let terms = array(v.get("poly").ok_or_else(|| malformed("probe poly", v))?, "probe poly")?;
    let mut p: Option<Poly> = None;
    for t in terms {
        let exps: Vec<u32> = array(t.get("exps").ok_or_else(|| malformed("exps", t))?, "exps")?
            .iter()
            .map(|e| e.as_u64().and_then(|k| u32::try_from(k).ok()).ok_or_else(|| malformed("exponent", e)))
            .collect::<Result<_, _>>()?;
        let c = parse_jet_in(t.get("coeff").ok_or_else(|| malformed("coeff", t))?, &ring)?;
        let mono = Poly::monomial(exps, c);
        p = Some(match p {
            None => mono,
            Some(acc) if acc.arity() == mono.arity() => acc.add(&mono),
            Some(_) => return Err(malformed("inconsistent arity", t)),
        });
    }
    let p = p.ok_or_else(|| malformed("empty probe", v))?;
    let n = p.arity();
    let phase = v.get("phase").cloned().unwrap_or(json!({}));
    let mut q = vec![Cyclo::zero(); n * n];
    if let Some(qv) = phase.get("Q") {
        let rows = array(qv, "Q")?;
        let flat: Vec<&Value> = if rows.len() == n && rows.iter().all(|r| r.as_array().is_some_and(|a| a.len() == n && a.iter().all(Value::is_array))) {
            rows.iter().flat_map(|r| r.as_array().expect("checked").iter()).collect()
        } else {
            rows.iter().collect()
        };
        if flat.len() != n * n {
            return Err(malformed("Q has the wrong size", qv));
        }
        for (slot, entry) in q.iter_mut().zip(flat) {
            let pair = array(entry, "Q entry")?;
            if pair.len() != 2 {
                return Err(malformed("Q entries are [re, im]", entry));
            }
            *slot = Cyclo::gaussian(parse_rational(&pair[0])?, parse_rational(&pair[1])?);
        }
    }
    let quad = GaussPhase::new(n, q, vec![Cyclo::zero(); n], Cyclo::zero())?;
    let mut exponent = quad.as_poly(&ring).scale(sigma);
    if let Some(lv) = phase.get("l") {
        let ls = array(lv, "l")?;
        if ls.len() != n {
            return Err(malformed("l has the wrong length", lv));
        }
        for (i, l) in ls.iter().enumerate() {
            let c = parse_jet_in(l, &ring)?;
            let mut e = vec![0; n];
            e[i] = 1;
            exponent = exponent.add(&Poly::monomial(e, c));
        }
    }
    Ok(GaussVector::from_poly(p).mul_exp(&exponent)?)
}

pub fn parse_probes(v: &Value, sigma: &JetScalar) -> Result<Vec<GaussVector>, SerialError> {
    array(v, "probe file")?.iter().map(|p| parse_probe(p, sigma)).collect()
}

/// A module spec `{n, dim, z_matrix, degree_bound}`. Invertibility of `z`
/// is not enforced here so that degenerate specs can be reported.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    pub n: usize,
    pub base: ZModule,
    pub degree_bound: u32,
}

pub fn parse_module_spec(v: &Value) -> Result<ModuleSpec, SerialError> {
    let get_u = |key: &str| -> Result<u64, SerialError> {
        v.get(key).and_then(Value::as_u64).ok_or_else(|| malformed(key, v))
    };
    let n = get_u("n")? as usize;
    let dim = get_u("dim")? as usize;
    let degree_bound = u32::try_from(get_u("degree_bound")?).map_err(|_| malformed("degree_bound", v))?;
    let z = parse_matrix(v.get("z_matrix").ok_or_else(|| malformed("z_matrix", v))?)?;
    if z.rows() != dim || z.cols() != dim {
        return Err(malformed("z_matrix does not match dim", v));
    }
    Ok(ModuleSpec { n, base: ZModule::new_unchecked(z)?, degree_bound })
}

/// Entry encoding for emitted matrices: integers as numbers, other
/// rationals as `"p/q"`, anything else in its display form.
pub fn scalar_entry(s: &Scalar) -> Value {
    match s.as_rational() {
        Some(r) => crate::scalars::rational::rational_to_json(&r),
        None => Value::String(s.to_string()),
    }
}

/// Reads a JetRing from `--s0` and `--jet-order` style inputs.
pub fn ring(s0: &str, order: usize) -> Result<JetRing, SerialError> {
    let base = crate::scalars::rational::parse_rational(s0).ok_or_else(|| SerialError::Malformed(format!("s0: {s0}")))?;
    JetRing::new(base, order).map_err(|e| SerialError::Malformed(e.to_string()))
}

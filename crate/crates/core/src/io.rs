//! Text and JSON forms of field elements, series, points and derivation
//! tables.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::field::Field;
use crate::algebra::gf::{render_bits, BinaryField, Gf2};
use crate::algebra::text::{parse_expr, parse_gf, parse_tower, render_tower, resolve_w};
use crate::ec::ProjPoint;
use crate::error::{Error, Result};
use crate::function_field::FieldElem;
use crate::hd::HdData;
use crate::series::Tps;

pub const FORMAT_VERSION: u32 = 1;
pub const CURVE_LABEL: &str = "z^2+z=x^3/F2";

/// `{"a": ..., "b": ...}` for `a + b z`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ElemJson {
    pub a: String,
    pub b: String,
}

impl ElemJson {
    pub fn from_elem<F: BinaryField>(u: &FieldElem<F>) -> Self {
        ElemJson {
            a: render_tower(u.a()),
            b: render_tower(u.b()),
        }
    }

    pub fn to_elem<F: BinaryField>(&self) -> Result<FieldElem<F>> {
        Ok(FieldElem::new(parse_tower(&self.a)?, parse_tower(&self.b)?))
    }
}

/// Single-string form `a+(b)*z`, accepted back by [`parse_elem`].
pub fn render_elem<F: BinaryField>(u: &FieldElem<F>) -> String {
    let b = u.b();
    if b.is_zero() {
        return render_tower(u.a());
    }
    let zpart = if b.is_one() {
        "z".to_string()
    } else {
        format!("({})*z", render_tower(b))
    };
    if u.a().is_zero() {
        zpart
    } else {
        format!("{}+{}", render_tower(u.a()), zpart)
    }
}

/// Parse an expression in `t, x, z` (and `w` over GF(2^m), m >= 2).
pub fn parse_elem<F: BinaryField>(s: &str) -> Result<FieldElem<F>> {
    parse_expr(s, &|name| match name {
        "t" => Some(FieldElem::t()),
        "x" => Some(FieldElem::x()),
        "z" => Some(FieldElem::z()),
        _ => resolve_w::<F>(name).map(FieldElem::constant),
    })
}

pub fn tps_to_json<F: BinaryField>(s: &Tps<FieldElem<F>>) -> Vec<ElemJson> {
    s.coeffs().iter().map(ElemJson::from_elem).collect()
}

pub fn tps_from_json<F: BinaryField>(v: &[ElemJson]) -> Result<Tps<FieldElem<F>>> {
    if v.is_empty() {
        return Err(Error::Parse("empty series".into()));
    }
    let coeffs = v.iter().map(ElemJson::to_elem).collect::<Result<Vec<_>>>()?;
    let order = coeffs.len() - 1;
    Ok(Tps::from_coeffs(coeffs, order))
}

/// `{"x": ..., "z": ...}` or the string `"infinity"`.
pub fn point_to_json<F: BinaryField>(p: &ProjPoint<F>) -> serde_json::Value {
    match p {
        ProjPoint::Infinity => serde_json::Value::String("infinity".into()),
        ProjPoint::Affine(a) => serde_json::json!({
            "x": render_bits(a.x.bits()),
            "z": render_bits(a.z.bits()),
        }),
    }
}

/// `(x,z)` or `infinity`.
pub fn point_to_text<F: BinaryField>(p: &ProjPoint<F>) -> String {
    match p {
        ProjPoint::Infinity => "infinity".into(),
        ProjPoint::Affine(a) => format!("({}, {})", render_bits(a.x.bits()), render_bits(a.z.bits())),
    }
}

/// Accepts the JSON form, `(x, z)` and `infinity`. The curve equation is
/// not checked here.
pub fn parse_point<F: BinaryField>(s: &str) -> Result<ProjPoint<F>> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("infinity") || s.eq_ignore_ascii_case("\"infinity\"") {
        return Ok(ProjPoint::Infinity);
    }
    if s.starts_with('{') {
        #[derive(Deserialize)]
        struct P {
            x: String,
            z: String,
        }
        let p: P = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        return Ok(ProjPoint::affine(parse_gf(&p.x)?, parse_gf(&p.z)?));
    }
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected `(x, z)`, got `{s}`")))?;
    let (x, z) =
        split_top_comma(inner).ok_or_else(|| Error::Parse(format!("expected two coordinates in `{s}`")))?;
    Ok(ProjPoint::affine(parse_gf(x)?, parse_gf(z)?))
}

fn split_top_comma(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub tool_version: String,
    pub choices: Vec<String>,
    pub digest: String,
}

/// On-disk form of a derivation table over `F_2`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HdFile {
    pub version: u32,
    pub curve: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub xi: Vec<ElemJson>,
    pub choices: Vec<String>,
    pub zc_digest: String,
    pub provenance: Provenance,
}

/// SHA-256 over the compact JSON of the z-table.
pub fn zc_digest<F: BinaryField>(hd: &HdData<F>) -> String {
    let table: Vec<ElemJson> = hd.zc_table().iter().map(ElemJson::from_elem).collect();
    let bytes = serde_json::to_vec(&table).expect("string table serializes");
    hex::encode(Sha256::digest(&bytes))
}

impl HdFile {
    pub fn from_hd(hd: &HdData<Gf2>) -> Self {
        HdFile {
            version: FORMAT_VERSION,
            curve: CURVE_LABEL.into(),
            n: hd.order(),
            xi: hd.xi_table().iter().map(ElemJson::from_elem).collect(),
            choices: hd.choices().to_vec(),
            zc_digest: zc_digest(hd),
            provenance: Provenance {
                tool: env!("CARGO_PKG_NAME").into(),
                tool_version: env!("CARGO_PKG_VERSION").into(),
                choices: hd.choices().to_vec(),
                digest: "sha256".into(),
            },
        }
    }

    /// Rebuild the table, recompute the z-table and compare digests. The
    /// membership condition on `xi` is left to the verifier.
    pub fn to_hd(&self) -> Result<HdData<Gf2>> {
        if self.version != FORMAT_VERSION {
            return Err(Error::Parse(format!("unsupported version {}", self.version)));
        }
        if self.curve != CURVE_LABEL {
            return Err(Error::Parse(format!("unsupported curve `{}`", self.curve)));
        }
        if self.n != self.xi.len() {
            return Err(Error::Parse(format!(
                "N = {} but {} xi entries",
                self.n,
                self.xi.len()
            )));
        }
        let xi = self
            .xi
            .iter()
            .map(ElemJson::to_elem)
            .collect::<Result<Vec<_>>>()?;
        let hd = HdData::from_table_unchecked(xi, self.choices.clone())?;
        if zc_digest(&hd) != self.zc_digest {
            return Err(Error::DigestMismatch);
        }
        Ok(hd)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("file serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// A JSON array of strings, e.g. a choice file.
pub fn parse_string_array(s: &str) -> Result<Vec<String>> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

/// Pretty JSON array of reports with a trailing newline.
pub fn reports_to_json(reports: &[crate::verify::Report]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

pub fn hd_to_json(hd: &HdData<Gf2>) -> String {
    HdFile::from_hd(hd).to_json()
}

pub fn hd_from_json(s: &str) -> Result<HdData<Gf2>> {
    HdFile::from_json(s)?.to_hd()
}

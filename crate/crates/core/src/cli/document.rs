//! Versioned JSON documents for seeds, and the seed builders shared by the
//! command line and the HTTP service.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::cluster::Seed;
use crate::error::{Error, Result};
use crate::flagmodels::{self, TypeAModel};
use crate::liealg::{self, DynkinDiagram, ReducedWord, Series};
use crate::poly::Poly;
use crate::seedgen::{self, ExchangeMatrix};

pub const FORMAT_VERSION: u32 = 1;

/// A coefficient: a JSON integer when it fits in `i64`, a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Small(i64),
    Big(String),
}

impl Coeff {
    fn from_bigint(c: &BigInt) -> Coeff {
        c.to_i64().map(Coeff::Small).unwrap_or_else(|| Coeff::Big(c.to_string()))
    }

    fn to_bigint(&self) -> Result<BigInt> {
        match self {
            Coeff::Small(x) => Ok(BigInt::from(*x)),
            Coeff::Big(s) => s.parse().map_err(|_| Error::Invalid(format!("bad coefficient {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarEntry {
    pub name: String,
    /// Terms as `[exponents, coefficient]`, exponents indexed by `symbols`.
    pub laurent: Vec<(Vec<i32>, Coeff)>,
    #[serde(default)]
    pub text: String,
}

/// Description of an initial-seed row: its minor label and, in type A, the
/// minor as a polynomial on the unitriangular group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelEntry {
    pub row: String,
    pub minor: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedDocument {
    pub v: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagram: Option<String>,
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<usize>>,
    pub matrix: ExchangeMatrix,
    /// Names of the initial variables the Laurent polynomials are written in.
    pub symbols: Vec<String>,
    pub vars: Vec<VarEntry>,
    /// Labels of the rows of the initial seed this document descends from.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub initial_labels: Vec<LabelEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl SeedDocument {
    pub fn from_matrix(matrix: ExchangeMatrix) -> SeedDocument {
        Self::from_seed(&Seed::initial(matrix))
    }

    pub fn from_seed(seed: &Seed) -> SeedDocument {
        let vars = seed
            .matrix()
            .row_labels()
            .iter()
            .zip(seed.vars())
            .map(|(name, p)| VarEntry {
                name: name.clone(),
                laurent: p.terms().map(|(e, c)| (e.clone(), Coeff::from_bigint(c))).collect(),
                text: seed.render_var(p),
            })
            .collect();
        SeedDocument {
            v: FORMAT_VERSION,
            diagram: None,
            j: None,
            word: None,
            matrix: seed.matrix().clone(),
            symbols: seed.symbol_names().to_vec(),
            vars,
            initial_labels: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn from_json(s: &str) -> Result<SeedDocument> {
        let doc: SeedDocument = serde_json::from_str(s).map_err(|e| Error::Invalid(format!("seed document: {e}")))?;
        doc.check()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn check(&self) -> Result<()> {
        if self.v != FORMAT_VERSION {
            return Err(Error::Invalid(format!("unsupported document version {}", self.v)));
        }
        self.to_seed().map(|_| ())
    }

    pub fn to_seed(&self) -> Result<Seed> {
        if self.vars.len() != self.matrix.nrows() {
            return Err(Error::SizeMismatch(format!(
                "{} variables for {} rows",
                self.vars.len(),
                self.matrix.nrows()
            )));
        }
        let nv = self.symbols.len();
        let mut polys = Vec::with_capacity(self.vars.len());
        for (entry, label) in self.vars.iter().zip(self.matrix.row_labels()) {
            if &entry.name != label {
                return Err(Error::Invalid(format!("variable {:?} does not match row {label:?}", entry.name)));
            }
            let mut terms = Vec::with_capacity(entry.laurent.len());
            for (e, c) in &entry.laurent {
                if e.len() != nv {
                    return Err(Error::SizeMismatch(format!("exponent vector of {label:?} has length {}", e.len())));
                }
                terms.push((e.clone(), c.to_bigint()?));
            }
            polys.push(Poly::from_terms(nv, terms));
        }
        Seed::with_vars(self.matrix.clone(), polys, self.symbols.clone())
    }

    /// A column label given literally or by its number, so `2` names `z2`
    /// when no column is called `2`.
    pub fn resolve_label(&self, token: &str) -> Result<String> {
        let cols = self.matrix.col_labels();
        let token = token.trim();
        if cols.iter().any(|c| c == token) {
            return Ok(token.to_string());
        }
        let hits: Vec<&String> =
            cols.iter().filter(|c| c.trim_start_matches(|ch: char| ch.is_alphabetic()) == token).collect();
        match hits[..] {
            [one] if !token.is_empty() => Ok(one.clone()),
            _ => Err(Error::NotMutable(token.to_string())),
        }
    }

    /// Mutation at a column label; returns the new document and the
    /// rendering of the new variable.
    pub fn mutate(&self, label: &str) -> Result<(SeedDocument, String)> {
        let label = self.resolve_label(label)?;
        let label = label.as_str();
        let seed = self.to_seed()?.mutate(label)?;
        let text = seed.render_var(seed.var(label).expect("mutable label"));
        Ok((self.replace_seed(&seed), text))
    }

    pub fn apply_sequence<S: AsRef<str>>(&self, labels: &[S]) -> Result<SeedDocument> {
        let labels = labels.iter().map(|l| self.resolve_label(l.as_ref())).collect::<Result<Vec<_>>>()?;
        let seed = self.to_seed()?.apply_sequence(&labels)?;
        Ok(self.replace_seed(&seed))
    }

    fn replace_seed(&self, seed: &Seed) -> SeedDocument {
        let fresh = SeedDocument::from_seed(seed);
        SeedDocument { matrix: fresh.matrix, vars: fresh.vars, ..self.clone() }
    }
}

/// Request for an initial seed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedRequest {
    #[serde(rename = "type", default)]
    pub diagram: Option<String>,
    #[serde(rename = "J", default)]
    pub j: Option<Vec<usize>>,
    #[serde(default)]
    pub word: Option<Vec<usize>>,
    #[serde(default)]
    pub preset: Option<String>,
    /// Append the degree rows (type A only).
    #[serde(default)]
    pub extend: bool,
    /// Allow the non-simply-laced series.
    #[serde(default)]
    pub extended: bool,
}

pub fn build_seed(req: &SeedRequest) -> Result<SeedDocument> {
    if let Some(p) = &req.preset {
        return preset_document(&resolve_preset(p, req.diagram.as_deref())?);
    }
    let name = req.diagram.as_deref().ok_or_else(|| Error::Missing("diagram type".into()))?;
    let d = DynkinDiagram::parse(name, req.extended)?;
    let mut j = req.j.clone().ok_or_else(|| Error::Missing("J".into()))?;
    for &v in &j {
        d.check_vertex(v)?;
    }
    j.sort_unstable();
    j.dedup();
    if j.is_empty() {
        return Err(Error::EmptyJ);
    }
    let k: Vec<usize> = (1..=d.rank()).filter(|v| !j.contains(v)).collect();
    let (word, supplied) = match &req.word {
        Some(w) => {
            liealg::validate_rw0k(&d, &k, w)?;
            (ReducedWord::checked(&d, w.clone())?, true)
        }
        None => (liealg::rw0k_word(&d, &k)?, false),
    };
    let matrix = if req.extend {
        if d.series() != Series::A {
            return Err(Error::Invalid("degree rows are computed in type A only".into()));
        }
        flagmodels::type_a_extended_matrix(&d, &word, &j)?
    } else {
        seedgen::b_matrix_restricted(&d, &word, &j)?
    };
    let labels = seedgen::initial_cluster_labels(&d, &word, &j)?;
    let model = (d.series() == Series::A).then(|| TypeAModel::new(d.rank()));
    let mut initial_labels = Vec::new();
    for l in &labels {
        let polynomial = match &model {
            Some(m) => Some(m.label_minor(l)?.render(m.var_names())),
            None => None,
        };
        initial_labels.push(LabelEntry { row: l.index.to_string(), minor: l.render(&d), polynomial });
    }
    let mut doc = SeedDocument::from_matrix(matrix);
    doc.diagram = Some(d.name());
    doc.j = Some(j);
    doc.word = Some(word.letters);
    doc.initial_labels = initial_labels;
    doc.notes.push(if supplied { "word supplied" } else { "canonical word" }.to_string());
    if req.extend {
        doc.notes.push("degree rows appended".into());
    }
    if !d.is_simply_laced() {
        doc.notes.push("non-simply-laced entry rule (experimental)".into());
    }
    Ok(doc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresetInfo {
    pub name: String,
    pub description: String,
}

pub fn presets() -> Vec<PresetInfo> {
    let p = |name: &str, description: &str| PresetInfo { name: name.into(), description: description.into() };
    vec![
        p("A5-J13", "A5, J = {1,3}, word (2,4,5,4,1,2,3,4,5,2,3,4,1,2,3); finite type E6"),
        p("A5-J13-extended", "the A5, J = {1,3} seed with degree rows for Δ1 and Δ123"),
        p("A4-J2", "Grassmannian of 2-planes in C^5; finite type A2"),
        p("D4-J3", "D4, J = {3}, word (1,2,4,3) repeated three times; infinite type"),
        p("D5-isotropic", "isotropic D5 seed on z1..z5 with coefficients q1..q5, q0; finite type A5"),
        p("quadric-5", "quadric seed for n = 5; finite type (A1)^3"),
        p("grid-7-4", "rectangular grid seed for n = 7, j = 4"),
    ]
}

/// Accepts full preset names and short forms such as `isotropic` together
/// with a diagram (`D5`).
pub fn resolve_preset(name: &str, diagram: Option<&str>) -> Result<String> {
    let all = presets();
    if all.iter().any(|p| p.name == name) {
        return Ok(name.to_string());
    }
    if let Some(d) = diagram {
        let full = format!("{}-{name}", d.trim().to_uppercase());
        if all.iter().any(|p| p.name == full) {
            return Ok(full);
        }
    }
    Err(Error::Invalid(format!("unknown preset {name:?}")))
}

pub fn preset_document(name: &str) -> Result<SeedDocument> {
    let req = |d: &str, j: Vec<usize>, word: Option<Vec<usize>>, extend: bool| SeedRequest {
        diagram: Some(d.into()),
        j: Some(j),
        word,
        extend,
        ..Default::default()
    };
    let mut doc = match name {
        "A5-J13" => build_seed(&req("A5", vec![1, 3], None, false))?,
        "A5-J13-extended" => build_seed(&req("A5", vec![1, 3], None, true))?,
        "A4-J2" => build_seed(&req("A4", vec![2], None, false))?,
        "D4-J3" => build_seed(&req("D4", vec![3], Some([1, 2, 4, 3].repeat(3)), false))?,
        "D5-isotropic" => {
            let mut doc = SeedDocument::from_matrix(seedgen::d5_isotropic_seed());
            doc.diagram = Some("D5".into());
            doc.j = Some(vec![1]);
            doc
        }
        "quadric-5" => SeedDocument::from_matrix(seedgen::quadric_seed(5)?),
        "grid-7-4" => SeedDocument::from_matrix(seedgen::grassmannian_grid_seed(7, 4)?.matrix),
        _ => return Err(Error::Invalid(format!("unknown preset {name:?}"))),
    };
    doc.notes.insert(0, format!("preset {name}"));
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_is_exact() {
        let doc = preset_document("A5-J13").unwrap();
        let s = doc.to_json();
        let back = SeedDocument::from_json(&s).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json(), s);
    }

    #[test]
    fn big_coefficients_survive() {
        let c = BigInt::from(i64::MAX) * 4;
        let entry = Coeff::from_bigint(&c);
        assert!(matches!(entry, Coeff::Big(_)));
        assert_eq!(entry.to_bigint().unwrap(), c);
    }

    #[test]
    fn rejects_inconsistent_documents() {
        let mut doc = preset_document("quadric-5").unwrap();
        doc.vars.pop();
        assert!(SeedDocument::from_json(&doc.to_json()).is_err());
        let mut doc = preset_document("quadric-5").unwrap();
        doc.v = 7;
        assert!(SeedDocument::from_json(&doc.to_json()).is_err());
        assert!(SeedDocument::from_json("{").is_err());
    }

    #[test]
    fn preset_names() {
        assert_eq!(resolve_preset("isotropic", Some("d5")).unwrap(), "D5-isotropic");
        assert!(resolve_preset("isotropic", None).is_err());
        for p in presets() {
            preset_document(&p.name).unwrap();
        }
    }

    #[test]
    fn word_rejection_reports_prefix() {
        let req = SeedRequest {
            diagram: Some("A5".into()),
            j: Some(vec![1, 3]),
            word: Some(vec![1, 4, 5, 4, 2, 2, 3, 4, 5, 2, 3, 4, 1, 2, 3]),
            ..Default::default()
        };
        assert!(matches!(build_seed(&req), Err(Error::WordRejected { .. })));
    }
}

//! JSON model files: an algebra, a complex of free modules, a connection and
//! a cyclic form, with every coefficient an exact rational string.
//!
//! ```json
//! {
//!   "name": "torus1-rank2",
//!   "algebra": {
//!     "basis": [{"name": "1", "p": 0, "q": 0}, {"name": "x", "p": 1, "q": 0}],
//!     "unit": "1",
//!     "product": [["x", "y", [["xy", "1"]]]],
//!     "partial": [],
//!     "delbar": [["x", [["xy", "1"]]]]
//!   },
//!   "complex": {
//!     "degrees": [{"deg": -1, "rank": 1}, {"deg": 0, "rank": 2}],
//!     "delta": [{"deg": -1, "rows": [["1"], ["0"]]}]
//!   },
//!   "connection": {"gamma": [{"deg": 0, "rows": [[[["x", "1"]], []], [[], []]]}]},
//!   "form": {"a": "-1", "b": "0"}
//! }
//! ```
//!
//! Basis references are names or indices. A matrix entry is either a
//! rational string (a multiple of the unit) or a list of `[basis, "c"]` terms.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bga::{BasisElement, Bga, BgaElement, SparseRow};
use crate::connection::{Connection, CyclicForm};
use crate::error::Error;
use crate::graded::{Bidegree, Degree};
use crate::homcomplex::{FormMatrix, FreeComplex, HomForm};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BasisRef {
    Index(usize),
    Name(String),
}

pub type Terms = Vec<(BasisRef, Rational)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Scalar(Rational),
    Element(Terms),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisSpec {
    pub name: String,
    pub p: i32,
    pub q: i32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub basis: Vec<BasisSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<BasisRef>,
    #[serde(default)]
    pub product: Vec<(BasisRef, BasisRef, Terms)>,
    #[serde(default)]
    pub partial: Vec<(BasisRef, Terms)>,
    #[serde(default)]
    pub delbar: Vec<(BasisRef, Terms)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankSpec {
    pub deg: Degree,
    pub rank: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockSpec {
    pub deg: Degree,
    pub rows: Vec<Vec<Entry>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    pub degrees: Vec<RankSpec>,
    #[serde(default)]
    pub delta: Vec<BlockSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectionSpec {
    #[serde(default)]
    pub gamma: Vec<BlockSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormSpec {
    pub a: Rational,
    pub b: Rational,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub algebra: AlgebraSpec,
    pub complex: ComplexSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connection: Option<ConnectionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<FormSpec>,
}

/// A fully validated model.
#[derive(Debug, Clone)]
pub struct Model {
    pub name: String,
    pub algebra: Arc<Bga>,
    pub complex: Arc<FreeComplex>,
    pub connection: Connection,
    pub form: CyclicForm,
    /// SHA-256 of the canonical serialisation.
    pub hash: String,
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("line {} column {}: {e}", e.line(), e.column())))
    }

    /// Pretty JSON down to one record per line (a basis element, a product
    /// entry, a matrix block), compact below that.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("model serialises");
        let mut out = String::new();
        write_layered(&v, 0, &mut out);
        out
    }

    /// SHA-256 of the canonical (compact) serialisation.
    pub fn content_hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("model serialises");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }

    fn names(&self) -> BTreeMap<&str, usize> {
        self.algebra.basis.iter().enumerate().map(|(i, b)| (b.name.as_str(), i)).collect()
    }

    fn resolve(&self, names: &BTreeMap<&str, usize>, r: &BasisRef, at: &str) -> Result<usize, Error> {
        let dim = self.algebra.basis.len();
        match r {
            BasisRef::Index(i) if *i < dim => Ok(*i),
            BasisRef::Index(i) => Err(Error::Input(format!("{at}: basis index {i} out of range (dimension {dim})"))),
            BasisRef::Name(n) => names.get(n.as_str()).copied().ok_or_else(|| Error::Input(format!("{at}: unknown basis element {n:?}"))),
        }
    }

    fn row(&self, names: &BTreeMap<&str, usize>, terms: &Terms, at: &str) -> Result<SparseRow, Error> {
        terms.iter().map(|(r, c)| Ok((self.resolve(names, r, at)?, c.clone()))).collect()
    }

    fn entry(&self, names: &BTreeMap<&str, usize>, unit: usize, e: &Entry, at: &str) -> Result<BgaElement, Error> {
        Ok(match e {
            Entry::Scalar(c) => BgaElement::term(unit, c.clone()),
            Entry::Element(t) => BgaElement::from_terms(self.row(names, t, at)?),
        })
    }

    fn unit_index(&self, names: &BTreeMap<&str, usize>) -> Result<usize, Error> {
        match &self.algebra.unit {
            Some(r) => self.resolve(names, r, "algebra.unit"),
            None => names.get("1").copied().ok_or_else(|| Error::Input("algebra.unit: missing and no basis element named \"1\"".into())),
        }
    }

    /// The structure tables without checking any axiom.
    pub fn algebra_unchecked(&self) -> Result<Bga, Error> {
        let names = self.names();
        if names.len() != self.algebra.basis.len() {
            return Err(Error::Input("algebra.basis: duplicate names".into()));
        }
        let basis = self.algebra.basis.iter().map(|b| BasisElement { name: b.name.clone(), bidegree: Bidegree::new(b.p, b.q) }).collect();
        let unit = self.unit_index(&names)?;
        let mut product = Vec::new();
        for (n, (i, j, t)) in self.algebra.product.iter().enumerate() {
            let at = format!("algebra.product[{n}]");
            product.push((self.resolve(&names, i, &at)?, self.resolve(&names, j, &at)?, self.row(&names, t, &at)?));
        }
        let diff = |list: &[(BasisRef, Terms)], what: &str| -> Result<Vec<(usize, SparseRow)>, Error> {
            let mut out = Vec::new();
            for (n, (i, t)) in list.iter().enumerate() {
                let at = format!("algebra.{what}[{n}]");
                out.push((self.resolve(&names, i, &at)?, self.row(&names, t, &at)?));
            }
            Ok(out)
        };
        let partial = diff(&self.algebra.partial, "partial")?;
        let delbar = diff(&self.algebra.delbar, "delbar")?;
        Bga::from_tables_unchecked(basis, unit, &product, &partial, &delbar)
    }

    pub fn ranks(&self) -> Vec<(Degree, usize)> {
        self.complex.degrees.iter().map(|r| (r.deg, r.rank)).collect()
    }

    fn blocks(&self, list: &[BlockSpec], what: &str) -> Result<BTreeMap<Degree, FormMatrix>, Error> {
        let names = self.names();
        let unit = self.unit_index(&names)?;
        let mut out = BTreeMap::new();
        for b in list {
            let mut m = Vec::new();
            for (r, row) in b.rows.iter().enumerate() {
                let mut mr = Vec::new();
                for (c, e) in row.iter().enumerate() {
                    mr.push(self.entry(&names, unit, e, &format!("{what}[deg={}][{r}][{c}]", b.deg))?);
                }
                m.push(mr);
            }
            if out.insert(b.deg, m).is_some() {
                return Err(Error::Input(format!("{what}: two blocks for degree {}", b.deg)));
            }
        }
        Ok(out)
    }

    pub fn delta_blocks(&self) -> Result<BTreeMap<Degree, FormMatrix>, Error> {
        self.blocks(&self.complex.delta, "complex.delta")
    }

    pub fn gamma_blocks(&self) -> Result<BTreeMap<Degree, FormMatrix>, Error> {
        match &self.connection {
            Some(c) => self.blocks(&c.gamma, "connection.gamma"),
            None => Ok(BTreeMap::new()),
        }
    }

    pub fn form(&self) -> CyclicForm {
        self.form.as_ref().map_or_else(CyclicForm::standard, |f| CyclicForm::new(f.a.clone(), f.b.clone()))
    }

    /// Builds and validates everything; the first failure is returned with
    /// its location.
    pub fn build(&self) -> Result<Model, Error> {
        let a = self.algebra_unchecked()?;
        let report = a.validate();
        if !report.is_valid() {
            return Err(Error::InvalidAlgebra(report.summary()));
        }
        let a = Arc::new(a);
        let delta = self.delta_blocks()?;
        if let Some(msg) = first_delta_square_failure(&a, &delta) {
            return Err(Error::InvalidComplex(msg));
        }
        let complex = Arc::new(FreeComplex::new(a.clone(), &self.ranks(), delta)?);
        let connection = Connection::new(complex.clone(), &self.gamma_blocks()?)?;
        let form = self.form();
        if let Err((f, g, r)) = form.check_compatibility(&connection, &complex.source_basis()) {
            return Err(Error::Incompatible(format!("{} and {}: residual {}", complex.render(&HomForm::basis(f)), complex.render(&HomForm::basis(g)), a.render(&r))));
        }
        Ok(Model {
            name: self.name.clone().unwrap_or_else(|| "unnamed".into()),
            algebra: a,
            complex,
            connection,
            form,
            hash: self.content_hash(),
        })
    }

    /// Serialises in-memory objects, naming basis elements.
    pub fn from_objects(name: &str, connection: &Connection, form: &CyclicForm) -> Self {
        let cx = connection.complex();
        let a = cx.algebra();
        let name_of = |i: usize| BasisRef::Name(a.name(i).to_string());
        let terms = |row: &[(usize, Rational)]| -> Terms { row.iter().map(|(k, c)| (name_of(*k), c.clone())).collect() };
        let entry = |e: &BgaElement| -> Entry {
            if e.keys().all(|&k| k == a.unit_index()) {
                Entry::Scalar(e.coeff(&a.unit_index()))
            } else {
                Entry::Element(e.iter().map(|(k, c)| (name_of(*k), c.clone())).collect())
            }
        };
        let gamma_entry = |e: &BgaElement| -> Entry { Entry::Element(e.iter().map(|(k, c)| (name_of(*k), c.clone())).collect()) };
        let algebra = AlgebraSpec {
            basis: a.basis().iter().map(|b| BasisSpec { name: b.name.clone(), p: b.bidegree.p, q: b.bidegree.q }).collect(),
            unit: Some(name_of(a.unit_index())),
            product: a.product_entries().iter().map(|(i, j, r)| (name_of(*i), name_of(*j), terms(r))).collect(),
            partial: a.partial_entries().iter().map(|(i, r)| (name_of(*i), terms(r))).collect(),
            delbar: a.delbar_entries().iter().map(|(i, r)| (name_of(*i), terms(r))).collect(),
        };
        let complex = ComplexSpec {
            degrees: cx.ranks().iter().map(|&(deg, rank)| RankSpec { deg, rank }).collect(),
            delta: cx.blocks().iter().map(|(&deg, m)| BlockSpec { deg, rows: m.iter().map(|r| r.iter().map(entry).collect()).collect() }).collect(),
        };
        let gamma = connection
            .gamma_blocks()
            .iter()
            .map(|(&deg, m)| BlockSpec { deg, rows: m.iter().map(|r| r.iter().map(gamma_entry).collect()).collect() })
            .collect();
        ModelFile {
            name: Some(name.to_string()),
            algebra,
            complex,
            connection: Some(ConnectionSpec { gamma }),
            form: Some(FormSpec { a: form.a.clone(), b: form.b.clone() }),
        }
    }
}

fn write_layered(v: &serde_json::Value, depth: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Object(m) if depth < 2 && !m.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(&format!("{}{}: ", pad(depth + 1), Value::String(k.clone())));
                write_layered(x, depth + 1, out);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        Value::Array(a) if depth == 2 && !a.is_empty() => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&x.to_string());
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        _ => out.push_str(&v.to_string()),
    }
}

/// Checks `δ_{l+1} δ_l = 0` block by block, naming the first offending pair.
pub fn first_delta_square_failure(a: &Bga, blocks: &BTreeMap<Degree, FormMatrix>) -> Option<String> {
    for (&l, first) in blocks {
        let Some(second) = blocks.get(&(l + 1)) else { continue };
        for (r, row) in second.iter().enumerate() {
            for c in 0..first.first().map_or(0, Vec::len) {
                let mut s = BgaElement::zero();
                for (k, e) in row.iter().enumerate() {
                    if let Some(f) = first.get(k).and_then(|fr| fr.get(c)) {
                        s.add_assign(&a.mul(e, f));
                    }
                }
                if !s.is_zero() {
                    return Some(format!("delta blocks in degrees {l} and {} compose to {} at [{r}][{c}]", l + 1, a.render(&s)));
                }
            }
        }
    }
    None
}

impl Model {
    pub fn load(path: &std::path::Path) -> Result<Model, Error> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        ModelFile::parse(&text)?.build()
    }
}

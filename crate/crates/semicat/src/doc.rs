//! The single-file JSON document format: ground field, category
//! presentation, semigroup structure, optional braiding, optional rigidity
//! certificate, optional named module sections. Scalars travel as strings
//! ("a/b" rationals, decimal residues mod p); structure constants are
//! sparse index triples. Loading validates shapes and cross-references;
//! storing canonicalizes, so load-store round trips byte-stably.

use crate::field::{FieldSpec, K};
use crate::fincat::{CatPresentation, Fo, Mor};
use crate::linalg::Mat;
use crate::modlift::ModuleCatData;
use crate::rigidity::{AdjunctionData, RigidityCertificate};
use crate::semicat::SemigroupData;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Error, Debug)]
pub enum DocError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("format error: {0}")]
    Format(String),
}

#[derive(Clone, Debug)]
pub struct Document {
    pub field: FieldSpec,
    pub semigroup: SemigroupData,
    pub rigidity: Option<RigidityCertificate>,
    pub modules: Vec<(String, ModuleCatData)>,
    pub metadata: BTreeMap<String, String>,
}

// --- wire representation ---------------------------------------------------

#[derive(Serialize, Deserialize)]
struct DocFile {
    format: u32,
    field: FieldDoc,
    category: CategoryDoc,
    semigroup: SemigroupDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    braiding: Option<Vec<BraidCell>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rigidity: Option<RigidityDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    modules: Vec<ModuleDoc>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    metadata: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
enum FieldDoc {
    Q,
    GFp(u64),
}

#[derive(Serialize, Deserialize)]
struct CategoryDoc {
    objects: Vec<String>,
    /// (src, dst, dim), omitting zero-dimensional pairs
    hom: Vec<(String, String, usize)>,
    /// (src, mid, dst, rows of (basis-of-mid-dst, basis-of-src-mid, coords))
    comp: Vec<(String, String, String, Vec<(usize, usize, Vec<String>)>)>,
    ident: Vec<(String, Vec<String>)>,
}

#[derive(Serialize, Deserialize)]
struct MorDoc {
    src: Vec<String>,
    dst: Vec<String>,
    /// sparse blocks (target component, source component, coordinates)
    blocks: Vec<(usize, usize, Vec<String>)>,
}

#[derive(Serialize, Deserialize)]
struct SemigroupDoc {
    obj_tensor: Vec<(String, String, Vec<String>)>,
    /// (lsrc, ldst, rsrc, rdst, cells of (p, q, morphism))
    mor_tensor: Vec<(String, String, String, String, Vec<(usize, usize, MorDoc)>)>,
    assoc: Vec<(String, String, String, MorDoc)>,
}

#[derive(Serialize, Deserialize)]
struct BraidCell {
    x: String,
    y: String,
    mor: MorDoc,
}

#[derive(Serialize, Deserialize)]
struct AdjDoc {
    object: Vec<String>,
    dual: Vec<String>,
    eta_l: Vec<MorDoc>,
    eps_l: Vec<MorDoc>,
    eta_r: Vec<MorDoc>,
    eps_r: Vec<MorDoc>,
}

#[derive(Serialize, Deserialize)]
struct RigidityDoc {
    right: Vec<AdjDoc>,
    left: Vec<AdjDoc>,
}

#[derive(Serialize, Deserialize)]
struct ModuleDoc {
    name: String,
    category: CategoryDoc,
    /// (generator of S, object of M, summands)
    action_obj: Vec<(String, String, Vec<String>)>,
    action_mor: Vec<(String, String, String, String, Vec<(usize, usize, MorDoc)>)>,
    mult: Vec<(String, String, String, MorDoc)>,
}

// --- store -------------------------------------------------------------------

fn render_vec(v: &[K]) -> Vec<String> {
    v.iter().map(|k| k.render()).collect()
}

fn mor_to_doc(objects: &[String], m: &Mor) -> MorDoc {
    let mut blocks = Vec::new();
    for (t, row) in m.blocks.iter().enumerate() {
        for (s, b) in row.iter().enumerate() {
            if b.iter().any(|k| !k.is_zero()) {
                blocks.push((t, s, render_vec(b)));
            }
        }
    }
    MorDoc {
        src: m.src.0.iter().map(|&x| objects[x].clone()).collect(),
        dst: m.dst.0.iter().map(|&x| objects[x].clone()).collect(),
        blocks,
    }
}

fn category_to_doc(c: &CatPresentation) -> CategoryDoc {
    let n = c.n();
    let mut hom = Vec::new();
    let mut comp = Vec::new();
    let mut ident = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if c.dim(x, y) > 0 {
                hom.push((c.objects[x].clone(), c.objects[y].clone(), c.dim(x, y)));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let m = &c.comp[x][y][z];
                let mut cells = Vec::new();
                for j in 0..c.dim(y, z) {
                    for i in 0..c.dim(x, y) {
                        let col: Vec<K> =
                            (0..m.rows).map(|r| m.get(r, j * c.dim(x, y) + i).clone()).collect();
                        if col.iter().any(|k| !k.is_zero()) {
                            cells.push((j, i, render_vec(&col)));
                        }
                    }
                }
                if !cells.is_empty() {
                    comp.push((
                        c.objects[x].clone(),
                        c.objects[y].clone(),
                        c.objects[z].clone(),
                        cells,
                    ));
                }
            }
        }
    }
    for x in 0..n {
        if c.dim(x, x) > 0 {
            ident.push((c.objects[x].clone(), render_vec(&c.ident[x])));
        }
    }
    CategoryDoc { objects: c.objects.clone(), hom, comp, ident }
}

fn semigroup_to_doc(s: &SemigroupData) -> (SemigroupDoc, Option<Vec<BraidCell>>) {
    let c = &s.base;
    let n = s.n();
    let name = |x: usize| c.objects[x].clone();
    let mut obj_tensor = Vec::new();
    for x in 0..n {
        for y in 0..n {
            obj_tensor.push((name(x), name(y), s.obj_tensor[x][y].0.iter().map(|&z| name(z)).collect()));
        }
    }
    let mut mor_tensor = Vec::new();
    for x in 0..n {
        for xd in 0..n {
            for y in 0..n {
                for yd in 0..n {
                    let dq = c.dim(y, yd);
                    let mut cells = Vec::new();
                    for p in 0..c.dim(x, xd) {
                        for qi in 0..dq {
                            let cell = &s.mor_tensor[x][xd][y][yd][p * dq + qi];
                            if !cell.is_zero() {
                                cells.push((p, qi, mor_to_doc(&c.objects, cell)));
                            }
                        }
                    }
                    if !cells.is_empty() {
                        mor_tensor.push((name(x), name(xd), name(y), name(yd), cells));
                    }
                }
            }
        }
    }
    let mut assoc = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                assoc.push((name(x), name(y), name(z), mor_to_doc(&c.objects, &s.assoc[x][y][z])));
            }
        }
    }
    let braiding = s.braid.as_ref().map(|b| {
        let mut cells = Vec::new();
        for x in 0..n {
            for y in 0..n {
                cells.push(BraidCell { x: name(x), y: name(y), mor: mor_to_doc(&c.objects, &b[x][y]) });
            }
        }
        cells
    });
    (SemigroupDoc { obj_tensor, mor_tensor, assoc }, braiding)
}

fn adj_to_doc(c: &CatPresentation, a: &AdjunctionData) -> AdjDoc {
    let name = |fo: &Fo| fo.0.iter().map(|&x| c.objects[x].clone()).collect();
    AdjDoc {
        object: name(&a.fobj),
        dual: name(&a.fdual),
        eta_l: a.eta_l.iter().map(|m| mor_to_doc(&c.objects, m)).collect(),
        eps_l: a.eps_l.iter().map(|m| mor_to_doc(&c.objects, m)).collect(),
        eta_r: a.eta_r.iter().map(|m| mor_to_doc(&c.objects, m)).collect(),
        eps_r: a.eps_r.iter().map(|m| mor_to_doc(&c.objects, m)).collect(),
    }
}

pub fn store(doc: &Document) -> String {
    let (semigroup, braiding) = semigroup_to_doc(&doc.semigroup);
    let file = DocFile {
        format: FORMAT_VERSION,
        field: match doc.field {
            FieldSpec::Q => FieldDoc::Q,
            FieldSpec::Fp(p) => FieldDoc::GFp(p),
        },
        category: category_to_doc(&doc.semigroup.base),
        semigroup,
        braiding,
        rigidity: doc.rigidity.as_ref().map(|cert| RigidityDoc {
            right: cert.right.iter().map(|a| adj_to_doc(&doc.semigroup.base, a)).collect(),
            left: cert.left.iter().map(|a| adj_to_doc(&doc.semigroup.base, a)).collect(),
        }),
        modules: doc
            .modules
            .iter()
            .map(|(name, m)| {
                let cm = &m.base;
                let sname = |x: usize| doc.semigroup.base.objects[x].clone();
                let mname = |x: usize| cm.objects[x].clone();
                let mut action_obj = Vec::new();
                for f in 0..doc.semigroup.n() {
                    for x in 0..m.nm() {
                        action_obj.push((
                            sname(f),
                            mname(x),
                            m.act_obj[f][x].0.iter().map(|&z| mname(z)).collect(),
                        ));
                    }
                }
                let mut action_mor = Vec::new();
                for f in 0..doc.semigroup.n() {
                    for fd in 0..doc.semigroup.n() {
                        for x in 0..m.nm() {
                            for xd in 0..m.nm() {
                                let dq = cm.dim(x, xd);
                                let mut cells = Vec::new();
                                for p in 0..doc.semigroup.base.dim(f, fd) {
                                    for qi in 0..dq {
                                        let cell = &m.act_mor[f][fd][x][xd][p * dq + qi];
                                        if !cell.is_zero() {
                                            cells.push((p, qi, mor_to_doc(&cm.objects, cell)));
                                        }
                                    }
                                }
                                if !cells.is_empty() {
                                    action_mor.push((sname(f), sname(fd), mname(x), mname(xd), cells));
                                }
                            }
                        }
                    }
                }
                let mut mult = Vec::new();
                for g in 0..doc.semigroup.n() {
                    for f in 0..doc.semigroup.n() {
                        for x in 0..m.nm() {
                            mult.push((
                                sname(g),
                                sname(f),
                                mname(x),
                                mor_to_doc(&cm.objects, &m.mult[g][f][x]),
                            ));
                        }
                    }
                }
                ModuleDoc {
                    name: name.clone(),
                    category: category_to_doc(cm),
                    action_obj,
                    action_mor,
                    mult,
                }
            })
            .collect(),
        metadata: doc.metadata.clone(),
    };
    serde_json::to_string_pretty(&file).expect("document serialization cannot fail") + "\n"
}

// --- load --------------------------------------------------------------------

struct Resolver {
    index: BTreeMap<String, usize>,
}

impl Resolver {
    fn new(objects: &[String]) -> Result<Resolver, DocError> {
        let mut index = BTreeMap::new();
        for (i, o) in objects.iter().enumerate() {
            if index.insert(o.clone(), i).is_some() {
                return Err(DocError::Format(format!("duplicate object label {o:?}")));
            }
        }
        Ok(Resolver { index })
    }

    fn get(&self, name: &str) -> Result<usize, DocError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| DocError::Format(format!("dangling object label {name:?}")))
    }

    fn fo(&self, names: &[String]) -> Result<Fo, DocError> {
        Ok(Fo(names.iter().map(|n| self.get(n)).collect::<Result<_, _>>()?))
    }
}

fn parse_vec(field: FieldSpec, v: &[String]) -> Result<Vec<K>, DocError> {
    v.iter().map(|s| field.parse(s).map_err(DocError::Parse)).collect()
}

fn category_from_doc(field: FieldSpec, doc: &CategoryDoc) -> Result<CatPresentation, DocError> {
    let res = Resolver::new(&doc.objects)?;
    let n = doc.objects.len();
    let mut homdim = vec![vec![0usize; n]; n];
    for (src, dst, d) in &doc.hom {
        homdim[res.get(src)?][res.get(dst)?] = *d;
    }
    let mut comp: Vec<Vec<Vec<Mat>>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    (0..n)
                        .map(|z| Mat::zero(field, homdim[x][z], homdim[y][z] * homdim[x][y]))
                        .collect()
                })
                .collect()
        })
        .collect();
    for (src, mid, dst, cells) in &doc.comp {
        let (x, y, z) = (res.get(src)?, res.get(mid)?, res.get(dst)?);
        for (j, i, coords) in cells {
            if *j >= homdim[y][z] || *i >= homdim[x][y] {
                return Err(DocError::Format(format!(
                    "composition index out of range in cell ({src}, {mid}, {dst})"
                )));
            }
            let col = parse_vec(field, coords)?;
            if col.len() != homdim[x][z] {
                return Err(DocError::Format(format!(
                    "structure-constant vector of wrong length in cell ({src}, {mid}, {dst})"
                )));
            }
            for (r, val) in col.into_iter().enumerate() {
                comp[x][y][z].set(r, j * homdim[x][y] + i, val);
            }
        }
    }
    let mut ident = (0..n).map(|x| vec![field.zero(); homdim[x][x]]).collect::<Vec<_>>();
    for (obj, coords) in &doc.ident {
        let x = res.get(obj)?;
        let v = parse_vec(field, coords)?;
        if v.len() != homdim[x][x] {
            return Err(DocError::Format(format!("identity coordinates of wrong length at {obj}")));
        }
        ident[x] = v;
    }
    Ok(CatPresentation { field, objects: doc.objects.clone(), homdim, comp, ident })
}

fn mor_from_doc(c: &CatPresentation, res: &Resolver, doc: &MorDoc) -> Result<Mor, DocError> {
    let src = res.fo(&doc.src)?;
    let dst = res.fo(&doc.dst)?;
    let mut m = Mor::zero(c, src, dst);
    for (t, s, coords) in &doc.blocks {
        if *t >= m.dst.len() || *s >= m.src.len() {
            return Err(DocError::Format("morphism block index out of range".into()));
        }
        let v = parse_vec(c.field, coords)?;
        if v.len() != c.dim(m.src.0[*s], m.dst.0[*t]) {
            return Err(DocError::Format("morphism block of wrong dimension".into()));
        }
        m.blocks[*t][*s] = v;
    }
    Ok(m)
}

pub fn load(text: &str) -> Result<Document, DocError> {
    let file: DocFile = serde_json::from_str(text).map_err(|e| DocError::Parse(e.to_string()))?;
    if file.format != FORMAT_VERSION {
        return Err(DocError::Format(format!("unsupported format version {}", file.format)));
    }
    let field = match file.field {
        FieldDoc::Q => FieldSpec::Q,
        FieldDoc::GFp(p) => FieldSpec::Fp(p),
    };
    if !field.is_valid() {
        return Err(DocError::Format("prime-field characteristic must be prime".into()));
    }
    let base = category_from_doc(field, &file.category)?;
    let res = Resolver::new(&base.objects)?;
    let n = base.n();
    let mut obj_tensor = vec![vec![Fo::empty(); n]; n];
    for (x, y, summands) in &file.semigroup.obj_tensor {
        obj_tensor[res.get(x)?][res.get(y)?] = res.fo(summands)?;
    }
    let mut mor_tensor: Vec<Vec<Vec<Vec<Vec<Mor>>>>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|xd| {
                    (0..n)
                        .map(|y| {
                            (0..n)
                                .map(|yd| {
                                    let cells = base.dim(x, xd) * base.dim(y, yd);
                                    (0..cells)
                                        .map(|_| {
                                            Mor::zero(
                                                &base,
                                                obj_tensor[x][y].clone(),
                                                obj_tensor[xd][yd].clone(),
                                            )
                                        })
                                        .collect()
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    for (x, xd, y, yd, cells) in &file.semigroup.mor_tensor {
        let (x, xd, y, yd) = (res.get(x)?, res.get(xd)?, res.get(y)?, res.get(yd)?);
        let dq = base.dim(y, yd);
        for (p, qi, mordoc) in cells {
            if *p >= base.dim(x, xd) || *qi >= dq {
                return Err(DocError::Format("tensor cell index out of range".into()));
            }
            let m = mor_from_doc(&base, &res, mordoc)?;
            if m.src != obj_tensor[x][y] || m.dst != obj_tensor[xd][yd] {
                return Err(DocError::Format(format!(
                    "tensor cell endpoints disagree with the decomposition table at \
                     ({}, {}, {}, {})",
                    base.objects[x], base.objects[xd], base.objects[y], base.objects[yd]
                )));
            }
            mor_tensor[x][xd][y][yd][p * dq + qi] = m;
        }
    }
    let mut assoc: Vec<Vec<Vec<Mor>>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| (0..n).map(|_| Mor::zero(&base, Fo::empty(), Fo::empty())).collect())
                .collect()
        })
        .collect();
    for (x, y, z, mordoc) in &file.semigroup.assoc {
        assoc[res.get(x)?][res.get(y)?][res.get(z)?] = mor_from_doc(&base, &res, mordoc)?;
    }
    let braid = match &file.braiding {
        None => None,
        Some(cells) => {
            let mut b: Vec<Vec<Mor>> = (0..n)
                .map(|_| (0..n).map(|_| Mor::zero(&base, Fo::empty(), Fo::empty())).collect())
                .collect();
            for cell in cells {
                b[res.get(&cell.x)?][res.get(&cell.y)?] = mor_from_doc(&base, &res, &cell.mor)?;
            }
            Some(b)
        }
    };
    let semigroup = SemigroupData::assemble(base, obj_tensor, mor_tensor, assoc, braid);

    let rigidity = match &file.rigidity {
        None => None,
        Some(rd) => {
            let adj_from = |a: &AdjDoc| -> Result<AdjunctionData, DocError> {
                Ok(AdjunctionData {
                    fobj: res.fo(&a.object)?,
                    fdual: res.fo(&a.dual)?,
                    eta_l: a
                        .eta_l
                        .iter()
                        .map(|m| mor_from_doc(&semigroup.base, &res, m))
                        .collect::<Result<_, _>>()?,
                    eps_l: a
                        .eps_l
                        .iter()
                        .map(|m| mor_from_doc(&semigroup.base, &res, m))
                        .collect::<Result<_, _>>()?,
                    eta_r: a
                        .eta_r
                        .iter()
                        .map(|m| mor_from_doc(&semigroup.base, &res, m))
                        .collect::<Result<_, _>>()?,
                    eps_r: a
                        .eps_r
                        .iter()
                        .map(|m| mor_from_doc(&semigroup.base, &res, m))
                        .collect::<Result<_, _>>()?,
                })
            };
            Some(RigidityCertificate {
                right: rd.right.iter().map(&adj_from).collect::<Result<_, _>>()?,
                left: rd.left.iter().map(&adj_from).collect::<Result<_, _>>()?,
            })
        }
    };

    let mut modules = Vec::new();
    for md in &file.modules {
        let mbase = category_from_doc(field, &md.category)?;
        let mres = Resolver::new(&mbase.objects)?;
        let nm = mbase.n();
        let mut act_obj = vec![vec![Fo::empty(); nm]; n];
        for (f, x, summands) in &md.action_obj {
            act_obj[res.get(f)?][mres.get(x)?] = mres.fo(summands)?;
        }
        let mut act_mor: Vec<Vec<Vec<Vec<Vec<Mor>>>>> = (0..n)
            .map(|f| {
                (0..n)
                    .map(|fd| {
                        (0..nm)
                            .map(|x| {
                                (0..nm)
                                    .map(|xd| {
                                        let cells =
                                            semigroup.base.dim(f, fd) * mbase.dim(x, xd);
                                        (0..cells)
                                            .map(|_| {
                                                Mor::zero(
                                                    &mbase,
                                                    act_obj[f][x].clone(),
                                                    act_obj[fd][xd].clone(),
                                                )
                                            })
                                            .collect()
                                    })
                                    .collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        for (f, fd, x, xd, cells) in &md.action_mor {
            let (f, fd, x, xd) = (res.get(f)?, res.get(fd)?, mres.get(x)?, mres.get(xd)?);
            let dq = mbase.dim(x, xd);
            for (p, qi, mordoc) in cells {
                act_mor[f][fd][x][xd][p * dq + qi] = mor_from_doc(&mbase, &mres, mordoc)?;
            }
        }
        let mut mult: Vec<Vec<Vec<Mor>>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| (0..nm).map(|_| Mor::zero(&mbase, Fo::empty(), Fo::empty())).collect())
                    .collect()
            })
            .collect();
        for (g, f, x, mordoc) in &md.mult {
            mult[res.get(g)?][res.get(f)?][mres.get(x)?] = mor_from_doc(&mbase, &mres, mordoc)?;
        }
        let mult_inv = mult
            .iter()
            .map(|r| {
                r.iter()
                    .map(|cc| {
                        cc.iter()
                            .map(|mm| {
                                crate::fincat::try_inverse(&mbase, mm).unwrap_or_else(|| {
                                    Mor::zero(&mbase, mm.dst.clone(), mm.src.clone())
                                })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        modules.push((
            md.name.clone(),
            ModuleCatData { base: mbase, act_obj, act_mor, mult, mult_inv },
        ));
    }

    Ok(Document { field, semigroup, rigidity, modules, metadata: file.metadata.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::*;

    #[test]
    fn round_trip_is_byte_stable() {
        for s in [
            bimodule_proj(&algebra_dual_numbers(FieldSpec::Q)).unwrap(),
            group_proj(&group_z2(), FieldSpec::Fp(2)).unwrap(),
        ] {
            let field = s.base.field;
            let doc = Document {
                field,
                semigroup: s,
                rigidity: None,
                modules: Vec::new(),
                metadata: BTreeMap::new(),
            };
            let text = store(&doc);
            let loaded = load(&text).unwrap();
            let text2 = store(&loaded);
            assert_eq!(text, text2);
        }
    }

    #[test]
    fn malformed_rational_is_a_parse_error() {
        let s = bimodule_proj(&algebra_k(FieldSpec::Q)).unwrap();
        let doc = Document {
            field: FieldSpec::Q,
            semigroup: s,
            rigidity: None,
            modules: Vec::new(),
            metadata: BTreeMap::new(),
        };
        let text = store(&doc).replace("\"1\"", "\"1/0\"");
        assert!(load(&text).is_err());
    }

    #[test]
    fn dangling_label_is_a_format_error() {
        let s = bimodule_proj(&algebra_k(FieldSpec::Q)).unwrap();
        let doc = Document {
            field: FieldSpec::Q,
            semigroup: s,
            rigidity: None,
            modules: Vec::new(),
            metadata: BTreeMap::new(),
        };
        let text = store(&doc).replace("\"X\",\n        \"X\",\n        1", "\"X\", \"Y\", 1");
        // the replacement may or may not hit depending on formatting; a
        // direct corruption is more reliable
        let corrupted = text.replace("\"objects\": [\n      \"X\"\n    ]", "\"objects\": [\n      \"Z\"\n    ]");
        assert!(load(&corrupted).is_err());
    }

    #[test]
    fn wrong_length_vector_is_a_format_error() {
        let s = bimodule_proj(&algebra_dual_numbers(FieldSpec::Q)).unwrap();
        let doc = Document {
            field: FieldSpec::Q,
            semigroup: s,
            rigidity: None,
            modules: Vec::new(),
            metadata: BTreeMap::new(),
        };
        let text = store(&doc);
        // identity has four coordinates on the unique object; truncate them
        let corrupted = text.replacen(
            "\"1\",\n          \"0\",\n          \"0\",\n          \"0\"",
            "\"1\",\n          \"0\",\n          \"0\"",
            1,
        );
        if corrupted != text {
            assert!(load(&corrupted).is_err());
        }
    }
}

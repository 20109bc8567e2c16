//! Finite-dimensional presheaves on a finitary base: action matrices,
//! morphism and isomorphism solving, radicals and tops, projective covers
//! and homological flags, and Day convolution over a semigroup structure.

use crate::field::K;
use crate::fincat::{
    compose, radical, CatPresentation, FincatError, Fo, HomFlat, IdealData, Mor,
};
use crate::linalg::{self, ColSpace, Mat};
use crate::par;
use crate::semicat::SemigroupData;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A contravariant functor to finite-dimensional vector spaces, stored as a
/// dimension per indecomposable plus one matrix per basis morphism:
/// `act[x][y][i]` maps P(y) -> P(x) for the i-th basis element of Hom(x, y).
#[derive(Clone, Debug)]
pub struct Presheaf {
    pub dims: Vec<usize>,
    pub act: Vec<Vec<Vec<Mat>>>,
}

impl Presheaf {
    pub fn zero(c: &CatPresentation) -> Presheaf {
        let n = c.n();
        Presheaf {
            dims: vec![0; n],
            act: (0..n)
                .map(|x| {
                    (0..n).map(|y| (0..c.dim(x, y)).map(|_| Mat::zero(c.field, 0, 0)).collect()).collect()
                })
                .collect(),
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Action matrix of an arbitrary morphism between indecomposables,
    /// by linearity in its coordinates.
    pub fn act_coords(&self, c: &CatPresentation, x: usize, y: usize, coords: &[K]) -> Mat {
        let mut m = Mat::zero(c.field, self.dims[x], self.dims[y]);
        for (i, k) in coords.iter().enumerate() {
            if !k.is_zero() {
                m = m.add(&self.act[x][y][i].scale(k));
            }
        }
        m
    }

    /// Contravariant functoriality on all basis pairs plus identities.
    pub fn validate(&self, c: &CatPresentation) -> bool {
        let n = c.n();
        for x in 0..n {
            let idm = self.act_coords(c, x, x, c.id_coords(x));
            if idm != Mat::identity(c.field, self.dims[x]) {
                return false;
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for i in 0..c.dim(x, y) {
                        for j in 0..c.dim(y, z) {
                            let comp = c.compose_vec(
                                x,
                                y,
                                z,
                                &c.basis_coords(y, z, j),
                                &c.basis_coords(x, y, i),
                            );
                            let lhs = self.act_coords(c, x, z, &comp);
                            let rhs = self.act[x][y][i].mul(&self.act[y][z][j]);
                            if lhs != rhs {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

/// Morphism of presheaves: one matrix per indecomposable.
#[derive(Clone, Debug, PartialEq)]
pub struct PresheafMap {
    pub comps: Vec<Mat>,
}

impl PresheafMap {
    pub fn identity(c: &CatPresentation, p: &Presheaf) -> PresheafMap {
        PresheafMap { comps: p.dims.iter().map(|&d| Mat::identity(c.field, d)).collect() }
    }

    pub fn compose(&self, other: &PresheafMap) -> PresheafMap {
        PresheafMap {
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.comps.iter().all(|m| {
            m.rows == m.cols && *m == Mat::identity(m.field, m.rows)
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.comps.iter().all(|m| m.rows == m.cols && linalg::inverse(m).is_some())
    }

    pub fn inverse(&self) -> Option<PresheafMap> {
        let comps: Option<Vec<Mat>> = self.comps.iter().map(linalg::inverse).collect();
        comps.map(|comps| PresheafMap { comps })
    }

    /// Componentwise commutation with every action matrix.
    pub fn is_natural(&self, c: &CatPresentation, p: &Presheaf, q: &Presheaf) -> bool {
        for x in 0..c.n() {
            for y in 0..c.n() {
                for i in 0..c.dim(x, y) {
                    if self.comps[x].mul(&p.act[x][y][i]) != q.act[x][y][i].mul(&self.comps[y]) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Representable presheaf Hom(-, w).
pub fn yoneda(c: &CatPresentation, w: &Fo) -> Presheaf {
    let n = c.n();
    let spaces: Vec<HomFlat> = (0..n).map(|x| HomFlat::new(c, &Fo::one(x), w)).collect();
    let dims: Vec<usize> = spaces.iter().map(|s| s.total).collect();
    let act = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    (0..c.dim(x, y))
                        .map(|i| {
                            let b = crate::semicat::basis_mor(c, x, y, i);
                            // precomposition Hom(y, w) -> Hom(x, w)
                            Mat::from_cols(
                                c.field,
                                (0..spaces[y].total)
                                    .map(|k| {
                                        let f = spaces[y].basis_mor(c, k);
                                        spaces[x].flatten(c, &compose(c, &f, &b))
                                    })
                                    .collect(),
                            )
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Presheaf { dims, act }
}

/// Post-composition Y(f.src) -> Y(f.dst).
pub fn yoneda_map(c: &CatPresentation, f: &Mor) -> PresheafMap {
    let n = c.n();
    let comps = (0..n)
        .map(|x| {
            let src = HomFlat::new(c, &Fo::one(x), &f.src);
            let dst = HomFlat::new(c, &Fo::one(x), &f.dst);
            Mat::from_cols(
                c.field,
                (0..src.total)
                    .map(|k| dst.flatten(c, &compose(c, f, &src.basis_mor(c, k))))
                    .collect(),
            )
        })
        .collect();
    PresheafMap { comps }
}

/// Exact basis of the space of presheaf morphisms P -> Q.
pub fn presheaf_hom(c: &CatPresentation, p: &Presheaf, q: &Presheaf) -> Vec<PresheafMap> {
    let n = c.n();
    let sizes: Vec<usize> = (0..n).map(|x| q.dims[x] * p.dims[x]).collect();
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let total: usize = sizes.iter().sum();
    let unpack = |v: &[K]| -> Vec<Mat> {
        (0..n)
            .map(|x| {
                Mat::from_fn(c.field, q.dims[x], p.dims[x], |i, j| {
                    v[offsets[x] + i * p.dims[x] + j].clone()
                })
            })
            .collect()
    };
    let mut rows: Vec<Vec<K>> = Vec::new();
    let basis: Vec<Vec<Mat>> = (0..total)
        .map(|k| {
            let mut v = vec![c.field.zero(); total];
            v[k] = c.field.one();
            unpack(&v)
        })
        .collect();
    for x in 0..n {
        for y in 0..n {
            for i in 0..c.dim(x, y) {
                let cols: Vec<Vec<K>> = basis
                    .iter()
                    .map(|comps| {
                        let lhs = comps[x].mul(&p.act[x][y][i]);
                        let rhs = q.act[x][y][i].mul(&comps[y]);
                        let d = lhs.sub(&rhs);
                        let mut out = Vec::with_capacity(d.rows * d.cols);
                        for r in 0..d.rows {
                            for cl in 0..d.cols {
                                out.push(d.get(r, cl).clone());
                            }
                        }
                        out
                    })
                    .collect();
                if cols.is_empty() || cols[0].is_empty() {
                    continue;
                }
                for r in 0..cols[0].len() {
                    rows.push(cols.iter().map(|col| col[r].clone()).collect());
                }
            }
        }
    }
    let mat = if rows.is_empty() {
        Mat::zero(c.field, 0, total)
    } else {
        Mat::from_rows(c.field, rows)
    };
    let ker = linalg::kernel(&mat);
    (0..ker.cols).map(|j| PresheafMap { comps: unpack(&ker.col(j)) }).collect()
}

/// Three-valued isomorphism test. Non-isomorphism is certified only by a
/// dimension-vector or top mismatch; otherwise a deterministic coefficient
/// grid followed by seeded random exact coefficients searches for an
/// invertible morphism, reporting Undecided when the budget runs out.
#[derive(Debug)]
pub enum IsoResult {
    Isomorphic(PresheafMap),
    NotIsomorphic(String),
    Undecided,
}

pub fn presheaf_iso(
    c: &CatPresentation,
    rad: Option<&IdealData>,
    p: &Presheaf,
    q: &Presheaf,
    seed: u64,
    retries: usize,
) -> IsoResult {
    if p.dims != q.dims {
        return IsoResult::NotIsomorphic(format!(
            "dimension vectors differ: {:?} vs {:?}",
            p.dims, q.dims
        ));
    }
    if let Some(rad) = rad {
        let tp = top_dims(c, rad, p);
        let tq = top_dims(c, rad, q);
        if tp != tq {
            return IsoResult::NotIsomorphic(format!("tops differ: {tp:?} vs {tq:?}"));
        }
    }
    let basis = presheaf_hom(c, p, q);
    if basis.is_empty() {
        if p.total_dim() == 0 {
            return IsoResult::Isomorphic(PresheafMap { comps: Vec::new() });
        }
        return IsoResult::Undecided;
    }
    // deterministic grid: single basis elements, then the running sum
    let mut sum = basis[0].clone();
    for cand in &basis {
        if cand.is_invertible() {
            return IsoResult::Isomorphic(cand.clone());
        }
    }
    for b in basis.iter().skip(1) {
        sum = PresheafMap {
            comps: sum.comps.iter().zip(&b.comps).map(|(a, x)| a.add(x)).collect(),
        };
        if sum.is_invertible() {
            return IsoResult::Isomorphic(sum.clone());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..retries {
        let mut acc: Option<PresheafMap> = None;
        for b in &basis {
            let k = c.field.from_i64(rng.gen_range(-5i64..=5));
            let scaled = PresheafMap { comps: b.comps.iter().map(|m| m.scale(&k)).collect() };
            acc = Some(match acc {
                None => scaled,
                Some(a) => PresheafMap {
                    comps: a.comps.iter().zip(&scaled.comps).map(|(x, y)| x.add(y)).collect(),
                },
            });
        }
        if let Some(candidate) = acc {
            if candidate.is_invertible() {
                return IsoResult::Isomorphic(candidate);
            }
        }
    }
    IsoResult::Undecided
}

/// The radical subspace (P * Rad)(x) as a column space per object.
pub fn radical_span(c: &CatPresentation, rad: &IdealData, p: &Presheaf) -> Vec<ColSpace> {
    let n = c.n();
    (0..n)
        .map(|x| {
            let mut cs = ColSpace::new(c.field, p.dims[x]);
            for y in 0..n {
                let b = &rad.bases[x][y];
                for j in 0..b.cols {
                    let m = p.act_coords(c, x, y, &b.col(j));
                    for col in 0..m.cols {
                        cs.insert(&m.col(col));
                    }
                }
            }
            cs
        })
        .collect()
}

pub fn top_dims(c: &CatPresentation, rad: &IdealData, p: &Presheaf) -> Vec<usize> {
    radical_span(c, rad, p)
        .iter()
        .zip(&p.dims)
        .map(|(cs, &d)| d - cs.rank())
        .collect()
}

/// The simple presheaf concentrated at x (top of the representable), valid
/// for presentations with one-dimensional End/Rad.
pub fn simple_presheaf(c: &CatPresentation, rad: &IdealData, x: usize) -> Presheaf {
    // quotient of Y(x) by its radical span
    let y = yoneda(c, &Fo::one(x));
    quotient_by(c, &y, &radical_span(c, rad, &y))
}

/// Quotient presheaf by an action-stable family of subspaces.
pub fn quotient_by(c: &CatPresentation, p: &Presheaf, subs: &[ColSpace]) -> Presheaf {
    let n = c.n();
    let pairs: Vec<(Mat, Mat)> = (0..n)
        .map(|x| linalg::cokernel_of_colspace(&subs[x], c.field, p.dims[x]))
        .collect();
    let dims: Vec<usize> = pairs.iter().map(|(pr, _)| pr.rows).collect();
    let act = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    (0..c.dim(x, y))
                        .map(|i| pairs[x].0.mul(&p.act[x][y][i]).mul(&pairs[y].1))
                        .collect()
                })
                .collect()
        })
        .collect();
    Presheaf { dims, act }
}

#[derive(Debug, serde::Serialize)]
pub struct CoverReport {
    /// Multiplicity of Y(x) in the projective cover, per indecomposable.
    pub cover_multiplicities: Vec<usize>,
    pub is_projective: bool,
    pub is_injective: bool,
}

/// Projective cover from the top, with the cover epimorphism, plus the
/// projectivity and injectivity flags.
pub fn cover_and_flags(
    c: &CatPresentation,
    p: &Presheaf,
) -> Result<(CoverReport, Presheaf, PresheafMap), FincatError> {
    let rad = radical(c)?;
    let (report, cover, epi) = cover_with_epi(c, &rad, p)?;
    Ok((report, cover, epi))
}

fn cover_with_epi(
    c: &CatPresentation,
    rad: &IdealData,
    p: &Presheaf,
) -> Result<(CoverReport, Presheaf, PresheafMap), FincatError> {
    let (mults, cover, epi) = cover_epi_from_top(c, rad, p);
    let is_projective = presheaf_split_section(c, &cover, p, &epi).is_some();
    let is_injective = {
        let cop = c.opposite();
        let pd = dual_presheaf(c, p);
        let rad_op = radical(&cop)?;
        let (_, cover_op, epi_op) = cover_epi_from_top(&cop, &rad_op, &pd);
        presheaf_split_section(&cop, &cover_op, &pd, &epi_op).is_some()
    };
    Ok((CoverReport { cover_multiplicities: mults, is_projective, is_injective }, cover, epi))
}

/// Cover built from top representatives: a direct sum of representables
/// with a Yoneda-determined epimorphism onto the presheaf.
fn cover_epi_from_top(
    c: &CatPresentation,
    rad: &IdealData,
    p: &Presheaf,
) -> (Vec<usize>, Presheaf, PresheafMap) {
    let n = c.n();
    let spans = radical_span(c, rad, p);
    let mut gens: Vec<(usize, Vec<K>)> = Vec::new();
    let mut mults = vec![0usize; n];
    for x in 0..n {
        let mut cs = ColSpace::new(c.field, p.dims[x]);
        let b = spans[x].basis_mat();
        for j in 0..b.cols {
            cs.insert(&b.col(j));
        }
        for i in 0..p.dims[x] {
            let mut e = vec![c.field.zero(); p.dims[x]];
            e[i] = c.field.one();
            if cs.insert(&e) {
                gens.push((x, e));
                mults[x] += 1;
            }
        }
    }
    let w = Fo(gens.iter().map(|(x, _)| *x).collect());
    let cover = yoneda(c, &w);
    let spaces: Vec<HomFlat> = (0..n).map(|x| HomFlat::new(c, &Fo::one(x), &w)).collect();
    let comps: Vec<Mat> = (0..n)
        .map(|x| {
            Mat::from_cols(
                c.field,
                (0..spaces[x].total)
                    .map(|k| {
                        let f = spaces[x].basis_mor(c, k);
                        // f: x -> w; evaluate the chosen generators along f
                        let mut v = vec![c.field.zero(); p.dims[x]];
                        for (t, (gx, gv)) in gens.iter().enumerate() {
                            let m = p.act_coords(c, x, *gx, &f.blocks[t][0]);
                            let img = m.apply(gv);
                            for (r, val) in img.into_iter().enumerate() {
                                v[r] = v[r].add(&val);
                            }
                        }
                        v
                    })
                    .collect(),
            )
        })
        .collect();
    (mults, cover, PresheafMap { comps })
}

/// Linear-duality transpose of a presheaf, regarded over the opposite
/// presentation. Injective over C iff the dual is projective over C^op.
pub fn dual_presheaf(c: &CatPresentation, p: &Presheaf) -> Presheaf {
    let n = c.n();
    let act = (0..n)
        .map(|y| {
            (0..n)
                .map(|x| {
                    // over C^op, Hom(y, x) has the basis of Hom_C(x, y)
                    (0..c.dim(x, y)).map(|i| p.act[x][y][i].transpose()).collect()
                })
                .collect()
        })
        .collect();
    Presheaf { dims: p.dims.clone(), act }
}

/// Section of a presheaf epi, when one exists.
pub fn presheaf_split_section(
    c: &CatPresentation,
    cover: &Presheaf,
    p: &Presheaf,
    epi: &PresheafMap,
) -> Option<PresheafMap> {
    let maps = presheaf_hom(c, p, cover);
    solve_section(c, p, epi, &maps)
}

fn solve_section(
    c: &CatPresentation,
    p: &Presheaf,
    epi: &PresheafMap,
    maps: &[PresheafMap],
) -> Option<PresheafMap> {
    // want s with epi ∘ s = id_p, s expressed in the solution basis
    let n = c.n();
    let total_eq: usize = (0..n).map(|x| p.dims[x] * p.dims[x]).sum();
    if maps.is_empty() {
        return if total_eq == 0 { Some(PresheafMap { comps: Vec::new() }) } else { None };
    }
    let cols: Vec<Vec<K>> = maps
        .iter()
        .map(|s| {
            let mut v = Vec::with_capacity(total_eq);
            for x in 0..n {
                let m = epi.comps[x].mul(&s.comps[x]);
                for r in 0..m.rows {
                    for cl in 0..m.cols {
                        v.push(m.get(r, cl).clone());
                    }
                }
            }
            v
        })
        .collect();
    let mut rhs = Vec::with_capacity(total_eq);
    for x in 0..n {
        let id = Mat::identity(c.field, p.dims[x]);
        for r in 0..id.rows {
            for cl in 0..id.cols {
                rhs.push(id.get(r, cl).clone());
            }
        }
    }
    let a = Mat::from_cols(c.field, cols);
    let b = Mat::col_vector(c.field, &rhs);
    let sol = linalg::solve(&a, &b)?;
    let mut out: Option<PresheafMap> = None;
    for (j, s) in maps.iter().enumerate() {
        let k = sol.get(j, 0);
        let scaled = PresheafMap { comps: s.comps.iter().map(|m| m.scale(k)).collect() };
        out = Some(match out {
            None => scaled,
            Some(acc) => PresheafMap {
                comps: acc.comps.iter().zip(&scaled.comps).map(|(x, y)| x.add(y)).collect(),
            },
        });
    }
    out
}

// ---------------------------------------------------------------------------
// Day convolution
// ---------------------------------------------------------------------------

/// Free-part layout of a Day convolution: at each object w the free space is
/// the direct sum over indecomposable pairs (h, k) of
/// Hom(w, h ⊠ k) ⊗ P(h) ⊗ Q(k).
pub struct DayLayout {
    pub hom_dims: Vec<Vec<Vec<usize>>>, // [w][h][k]
    pub p_dims: Vec<usize>,
    pub q_dims: Vec<usize>,
}

impl DayLayout {
    pub fn offset(&self, w: usize, h: usize, k: usize) -> usize {
        let n = self.p_dims.len();
        let mut off = 0;
        for hh in 0..n {
            for kk in 0..n {
                if hh == h && kk == k {
                    return off;
                }
                off += self.hom_dims[w][hh][kk] * self.p_dims[hh] * self.q_dims[kk];
            }
        }
        off
    }

    pub fn free_dim(&self, w: usize) -> usize {
        let n = self.p_dims.len();
        let mut t = 0;
        for h in 0..n {
            for k in 0..n {
                t += self.hom_dims[w][h][k] * self.p_dims[h] * self.q_dims[k];
            }
        }
        t
    }

    pub fn index(&self, w: usize, h: usize, k: usize, u: usize, pi: usize, qi: usize) -> usize {
        self.offset(w, h, k) + (u * self.p_dims[h] + pi) * self.q_dims[k] + qi
    }
}

/// The convolution presheaf with its explicit presentation: per object a
/// projection from the free part and a section of it.
pub struct DayResult {
    pub presheaf: Presheaf,
    pub proj: Vec<Mat>,
    pub sect: Vec<Mat>,
    pub layout: DayLayout,
}

/// Coend over basis-morphism generators: relations are imposed for the
/// pairs (b, id) and (id, b) only, which generate all coend relations.
pub fn day_convolve(s: &SemigroupData, p: &Presheaf, q: &Presheaf) -> DayResult {
    let c = &s.base;
    let n = s.n();
    let hom_spaces: Vec<Vec<Vec<HomFlat>>> = (0..n)
        .map(|w| {
            (0..n)
                .map(|h| {
                    (0..n)
                        .map(|k| HomFlat::new(c, &Fo::one(w), &s.obj_tensor[h][k]))
                        .collect()
                })
                .collect()
        })
        .collect();
    let layout = DayLayout {
        hom_dims: hom_spaces
            .iter()
            .map(|r| r.iter().map(|r2| r2.iter().map(|hf| hf.total).collect()).collect())
            .collect(),
        p_dims: p.dims.clone(),
        q_dims: q.dims.clone(),
    };

    // relation columns per object, inserted incrementally
    let ws: Vec<usize> = (0..n).collect();
    let spaces: Vec<(Mat, Mat)> = par::map_collect(&ws, |&w| {
        let mut cs = ColSpace::new(c.field, layout.free_dim(w));
        // generator (b: h -> h', id_k)
        for h in 0..n {
            for hp in 0..n {
                for ib in 0..c.dim(h, hp) {
                    let b = crate::semicat::basis_mor(c, h, hp, ib);
                    for k in 0..n {
                        // covariant leg: Hom(w, (b ⊠ id_k)) on the hom factor
                        let tensored = s.tensor_mor(&b, &Mor::identity(c, &Fo::one(k)));
                        for u in 0..layout.hom_dims[w][h][k] {
                            let um = hom_spaces[w][h][k].basis_mor(c, u);
                            let cov_u = hom_spaces[w][hp][k].flatten(c, &compose(c, &tensored, &um));
                            for pi in 0..p.dims[hp] {
                                // contravariant leg on P
                                let pcol = p.act[h][hp][ib].col(pi);
                                for qi in 0..q.dims[k] {
                                    let mut v = vec![c.field.zero(); layout.free_dim(w)];
                                    for (uu, cval) in cov_u.iter().enumerate() {
                                        if !cval.is_zero() {
                                            let ix = layout.index(w, hp, k, uu, pi, qi);
                                            v[ix] = v[ix].add(cval);
                                        }
                                    }
                                    for (pr, pval) in pcol.iter().enumerate() {
                                        if !pval.is_zero() {
                                            let ix = layout.index(w, h, k, u, pr, qi);
                                            v[ix] = v[ix].sub(pval);
                                        }
                                    }
                                    cs.insert(&v);
                                }
                            }
                        }
                    }
                }
            }
        }
        // generator (id_h, b: k -> k')
        for k in 0..n {
            for kp in 0..n {
                for ib in 0..c.dim(k, kp) {
                    let b = crate::semicat::basis_mor(c, k, kp, ib);
                    for h in 0..n {
                        let tensored = s.tensor_mor(&Mor::identity(c, &Fo::one(h)), &b);
                        for u in 0..layout.hom_dims[w][h][k] {
                            let um = hom_spaces[w][h][k].basis_mor(c, u);
                            let cov_u = hom_spaces[w][h][kp].flatten(c, &compose(c, &tensored, &um));
                            for pi in 0..p.dims[h] {
                                for qi in 0..q.dims[kp] {
                                    let qcol = q.act[k][kp][ib].col(qi);
                                    let mut v = vec![c.field.zero(); layout.free_dim(w)];
                                    for (uu, cval) in cov_u.iter().enumerate() {
                                        if !cval.is_zero() {
                                            let ix = layout.index(w, h, kp, uu, pi, qi);
                                            v[ix] = v[ix].add(cval);
                                        }
                                    }
                                    for (qr, qval) in qcol.iter().enumerate() {
                                        if !qval.is_zero() {
                                            let ix = layout.index(w, h, k, u, pi, qr);
                                            v[ix] = v[ix].sub(qval);
                                        }
                                    }
                                    cs.insert(&v);
                                }
                            }
                        }
                    }
                }
            }
        }
        linalg::cokernel_of_colspace(&cs, c.field, layout.free_dim(w))
    });

    let dims: Vec<usize> = spaces.iter().map(|(pr, _)| pr.rows).collect();
    // free-level action: precomposition on the hom factor
    let act: Vec<Vec<Vec<Mat>>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    (0..c.dim(x, y))
                        .map(|i| {
                            let b = crate::semicat::basis_mor(c, x, y, i);
                            let mut free = Mat::zero(c.field, layout.free_dim(x), layout.free_dim(y));
                            for h in 0..n {
                                for k in 0..n {
                                    for u in 0..layout.hom_dims[y][h][k] {
                                        let um = hom_spaces[y][h][k].basis_mor(c, u);
                                        let pre =
                                            hom_spaces[x][h][k].flatten(c, &compose(c, &um, &b));
                                        for (uu, val) in pre.iter().enumerate() {
                                            if val.is_zero() {
                                                continue;
                                            }
                                            for pi in 0..p.dims[h] {
                                                for qi in 0..q.dims[k] {
                                                    let r = layout.index(x, h, k, uu, pi, qi);
                                                    let cc = layout.index(y, h, k, u, pi, qi);
                                                    let cur = free.get(r, cc).add(val);
                                                    free.set(r, cc, cur);
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                            spaces[x].0.mul(&free).mul(&spaces[y].1)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let proj = spaces.iter().map(|(pr, _)| pr.clone()).collect();
    let sect = spaces.iter().map(|(_, se)| se.clone()).collect();
    DayResult { presheaf: Presheaf { dims, act }, proj, sect, layout }
}

/// Functorial action of the convolution on a pair of presheaf maps.
pub fn day_map(
    s: &SemigroupData,
    source: &DayResult,
    target: &DayResult,
    f: &PresheafMap,
    g: &PresheafMap,
) -> PresheafMap {
    let c = &s.base;
    let n = s.n();
    let comps = (0..n)
        .map(|w| {
            let mut free =
                Mat::zero(c.field, target.layout.free_dim(w), source.layout.free_dim(w));
            for h in 0..n {
                for k in 0..n {
                    for u in 0..source.layout.hom_dims[w][h][k] {
                        for pi in 0..source.layout.p_dims[h] {
                            for qi in 0..source.layout.q_dims[k] {
                                let col = source.layout.index(w, h, k, u, pi, qi);
                                for pr in 0..target.layout.p_dims[h] {
                                    let fv = f.comps[h].get(pr, pi);
                                    if fv.is_zero() {
                                        continue;
                                    }
                                    for qr in 0..target.layout.q_dims[k] {
                                        let gv = g.comps[k].get(qr, qi);
                                        if gv.is_zero() {
                                            continue;
                                        }
                                        let row = target.layout.index(w, h, k, u, pr, qr);
                                        let cur = free.get(row, col).add(&fv.mul(gv));
                                        free.set(row, col, cur);
                                    }
                                }
                            }
                        }
                    }
                }
            }
            target.proj[w].mul(&free).mul(&source.sect[w])
        })
        .collect();
    PresheafMap { comps }
}

/// Canonical comparison Y(a) ⊛ Y(b) -> Y(a ⊠ b) given by tensoring and
/// composing representatives; an isomorphism by the convolution's
/// universal property, verified exactly where the tests require it.
pub fn yoneda_day_iso(s: &SemigroupData, day: &DayResult, a: &Fo, b: &Fo) -> PresheafMap {
    let c = &s.base;
    let n = s.n();
    let ab = s.tensor_fo(a, b);
    let comps = (0..n)
        .map(|w| {
            let dst = HomFlat::new(c, &Fo::one(w), &ab);
            let mut free = Mat::zero(c.field, dst.total, day.layout.free_dim(w));
            for h in 0..n {
                let ph = HomFlat::new(c, &Fo::one(h), a);
                for k in 0..n {
                    let qk = HomFlat::new(c, &Fo::one(k), b);
                    let hom = HomFlat::new(c, &Fo::one(w), &s.obj_tensor[h][k]);
                    for u in 0..day.layout.hom_dims[w][h][k] {
                        let um = hom.basis_mor(c, u);
                        for pi in 0..day.layout.p_dims[h] {
                            let pm = ph.basis_mor(c, pi);
                            for qi in 0..day.layout.q_dims[k] {
                                let qm = qk.basis_mor(c, qi);
                                let composite = compose(c, &s.tensor_mor(&pm, &qm), &um);
                                let col = day.layout.index(w, h, k, u, pi, qi);
                                for (r, val) in dst.flatten(c, &composite).into_iter().enumerate()
                                {
                                    if !val.is_zero() {
                                        let cur = free.get(r, col).add(&val);
                                        free.set(r, col, cur);
                                    }
                                }
                            }
                        }
                    }
                }
            }
            free.mul(&day.sect[w])
        })
        .collect();
    PresheafMap { comps }
}


//! Semigroup-category structure on a finitary base: tensor bifunctor,
//! blockwise associators, coherence rebracketing, the pentagon and
//! naturality validators, and solvers for spaces of (module) natural
//! transformations.

use crate::fincat::{compose, CatPresentation, Fo, HomFlat, Mor, Violation};
use crate::field::K;
use crate::linalg::{self, Mat};
use crate::par;

/// Tensor-on-objects, tensor-on-morphisms structure constants, associator
/// blocks and an optional symmetry.
#[derive(Clone, Debug)]
pub struct SemigroupData {
    pub base: CatPresentation,
    /// obj_tensor[x][y]: decomposition of x ⊠ y into indecomposables.
    pub obj_tensor: Vec<Vec<Fo>>,
    /// mor_tensor[x][xd][y][yd][p * dim(y,yd) + q]: the morphism
    /// b_p ⊠ b_q : T(x,y) -> T(xd,yd) for basis elements b_p: x -> xd and
    /// b_q: y -> yd.
    pub mor_tensor: Vec<Vec<Vec<Vec<Vec<Mor>>>>>,
    /// assoc[x][y][z]: (x ⊠ y) ⊠ z -> x ⊠ (y ⊠ z).
    pub assoc: Vec<Vec<Vec<Mor>>>,
    /// Cached inverses of the associator cells.
    pub assoc_inv: Vec<Vec<Vec<Mor>>>,
    /// braid[x][y]: x ⊠ y -> y ⊠ x, when the category is symmetric.
    pub braid: Option<Vec<Vec<Mor>>>,
}

/// Component layout of a binary tensor of formal objects: outer loop over
/// components of the left factor, inner loop over the right factor, then the
/// components of the indecomposable tensor.
pub struct TensorLayout {
    pub fo: Fo,
    /// entries[c] = (i, j, t): global component c is component t of
    /// obj_tensor(a_i, b_j).
    pub entries: Vec<(usize, usize, usize)>,
    /// group_offset[i][j] = first global component of the (i, j) group.
    pub group_offset: Vec<Vec<usize>>,
}

impl SemigroupData {
    /// Assemble the structure, inverting each associator cell once. Cells
    /// that fail to invert are surfaced by `validate_semigroup` rather than
    /// here; a zero morphism stands in for the missing inverse.
    pub fn assemble(
        base: CatPresentation,
        obj_tensor: Vec<Vec<Fo>>,
        mor_tensor: Vec<Vec<Vec<Vec<Vec<Mor>>>>>,
        assoc: Vec<Vec<Vec<Mor>>>,
        braid: Option<Vec<Vec<Mor>>>,
    ) -> SemigroupData {
        let assoc_inv = assoc
            .iter()
            .map(|row| {
                row.iter()
                    .map(|col| {
                        col.iter()
                            .map(|a| {
                                crate::fincat::try_inverse(&base, a).unwrap_or_else(|| {
                                    Mor::zero(&base, a.dst.clone(), a.src.clone())
                                })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        SemigroupData { base, obj_tensor, mor_tensor, assoc, assoc_inv, braid }
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn tensor_layout(&self, a: &Fo, b: &Fo) -> TensorLayout {
        let mut fo = Vec::new();
        let mut entries = Vec::new();
        let mut group_offset = vec![vec![0; b.len()]; a.len()];
        for (i, &ai) in a.0.iter().enumerate() {
            for (j, &bj) in b.0.iter().enumerate() {
                group_offset[i][j] = fo.len();
                let t = &self.obj_tensor[ai][bj];
                for (k, &c) in t.0.iter().enumerate() {
                    fo.push(c);
                    entries.push((i, j, k));
                }
            }
        }
        TensorLayout { fo: Fo(fo), entries, group_offset }
    }

    pub fn tensor_fo(&self, a: &Fo, b: &Fo) -> Fo {
        self.tensor_layout(a, b).fo
    }

    /// Bilinear additive extension of the tensor to block morphisms.
    pub fn tensor_mor(&self, f: &Mor, g: &Mor) -> Mor {
        let src = self.tensor_layout(&f.src, &g.src);
        let dst = self.tensor_layout(&f.dst, &g.dst);
        let mut out = Mor::zero(&self.base, src.fo.clone(), dst.fo.clone());
        for (i, &fsi) in f.src.0.iter().enumerate() {
            for (id, &fdi) in f.dst.0.iter().enumerate() {
                let fb = &f.blocks[id][i];
                if fb.iter().all(|k| k.is_zero()) {
                    continue;
                }
                for (j, &gsj) in g.src.0.iter().enumerate() {
                    for (jd, &gdj) in g.dst.0.iter().enumerate() {
                        let gb = &g.blocks[jd][j];
                        if gb.iter().all(|k| k.is_zero()) {
                            continue;
                        }
                        let table = &self.mor_tensor[fsi][fdi][gsj][gdj];
                        let dq = self.base.dim(gsj, gdj);
                        let so = src.group_offset[i][j];
                        let to = dst.group_offset[id][jd];
                        for (p, fc) in fb.iter().enumerate() {
                            if fc.is_zero() {
                                continue;
                            }
                            for (q, gc) in gb.iter().enumerate() {
                                if gc.is_zero() {
                                    continue;
                                }
                                let cell = &table[p * dq + q];
                                let coef = fc.mul(gc);
                                for (tt, row) in cell.blocks.iter().enumerate() {
                                    for (ss, vec) in row.iter().enumerate() {
                                        for (k, v) in vec.iter().enumerate() {
                                            if !v.is_zero() {
                                                let cur = out.blocks[to + tt][so + ss][k]
                                                    .add(&coef.mul(v));
                                                out.blocks[to + tt][so + ss][k] = cur;
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Blockwise associator (a ⊠ b) ⊠ c -> a ⊠ (b ⊠ c) on formal objects,
    /// derived from the indecomposable-triple data.
    pub fn assoc_fo(&self, a: &Fo, b: &Fo, c: &Fo) -> Mor {
        self.assoc_fo_impl(a, b, c, false)
    }

    /// Inverse blockwise associator a ⊠ (b ⊠ c) -> (a ⊠ b) ⊠ c, from the
    /// cached cell inverses.
    pub fn assoc_fo_inv(&self, a: &Fo, b: &Fo, c: &Fo) -> Mor {
        self.assoc_fo_impl(a, b, c, true)
    }

    fn assoc_fo_impl(&self, a: &Fo, b: &Fo, c: &Fo, inverse: bool) -> Mor {
        let ab = self.tensor_layout(a, b);
        let lhs = self.tensor_layout(&ab.fo, c);
        let bc = self.tensor_layout(b, c);
        let rhs = self.tensor_layout(a, &bc.fo);
        let mut out = if inverse {
            Mor::zero(&self.base, rhs.fo.clone(), lhs.fo.clone())
        } else {
            Mor::zero(&self.base, lhs.fo.clone(), rhs.fo.clone())
        };
        for (lg, &(abc_comp, kc, t_out)) in lhs.entries.iter().enumerate() {
            let (i, j, u) = ab.entries[abc_comp];
            let (ai, bj, ck) = (a.0[i], b.0[j], c.0[kc]);
            let cell =
                if inverse { &self.assoc_inv[ai][bj][ck] } else { &self.assoc[ai][bj][ck] };
            // local source index inside (a_i ⊠ b_j) ⊠ c_k
            let local_src_layout = self.tensor_layout(&self.obj_tensor[ai][bj], &Fo::one(ck));
            let ls = local_src_layout.group_offset[u][0] + t_out;
            // walk rhs components belonging to the same (i, j, kc) triple
            for (rg, &(i2, bc_comp, t2)) in rhs.entries.iter().enumerate() {
                if i2 != i {
                    continue;
                }
                let (j2, k2, v) = bc.entries[bc_comp];
                if j2 != j || k2 != kc {
                    continue;
                }
                let local_dst_layout = self.tensor_layout(&Fo::one(ai), &self.obj_tensor[bj][ck]);
                let ld = local_dst_layout.group_offset[0][v] + t2;
                if inverse {
                    let blk = &cell.blocks[ls][ld];
                    if blk.iter().any(|x| !x.is_zero()) {
                        out.blocks[lg][rg] = blk.clone();
                    }
                } else {
                    let blk = &cell.blocks[ld][ls];
                    if blk.iter().any(|x| !x.is_zero()) {
                        out.blocks[rg][lg] = blk.clone();
                    }
                }
            }
        }
        out
    }

    /// Blockwise symmetry x ⊠ y -> y ⊠ x on formal objects.
    pub fn braid_fo(&self, a: &Fo, b: &Fo) -> Option<Mor> {
        let braid = self.braid.as_ref()?;
        let src = self.tensor_layout(a, b);
        let dst = self.tensor_layout(b, a);
        let mut out = Mor::zero(&self.base, src.fo.clone(), dst.fo.clone());
        for (sg, &(i, j, t)) in src.entries.iter().enumerate() {
            let cell = &braid[a.0[i]][b.0[j]];
            for (dg, &(j2, i2, t2)) in dst.entries.iter().enumerate() {
                if i2 != i || j2 != j {
                    continue;
                }
                let blk = &cell.blocks[t2][t];
                if blk.iter().any(|x| !x.is_zero()) {
                    out.blocks[dg][sg] = blk.clone();
                }
            }
        }
        Some(out)
    }

    /// The tensor-reversed category. Right duals there are left duals here.
    pub fn reversed(&self) -> SemigroupData {
        let n = self.n();
        let obj_tensor =
            (0..n).map(|x| (0..n).map(|y| self.obj_tensor[y][x].clone()).collect()).collect();
        let mut mor_tensor = vec![vec![vec![vec![Vec::new(); n]; n]; n]; n];
        for x in 0..n {
            for xd in 0..n {
                for y in 0..n {
                    for yd in 0..n {
                        let dp = self.base.dim(x, xd);
                        let dq = self.base.dim(y, yd);
                        let mut cells = Vec::with_capacity(dp * dq);
                        for p in 0..dp {
                            for q in 0..dq {
                                cells.push(self.mor_tensor[y][yd][x][xd][q * dp + p].clone());
                            }
                        }
                        mor_tensor[x][xd][y][yd] = cells;
                    }
                }
            }
        }
        let assoc = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| (0..n).map(|z| self.assoc_inv[z][y][x].clone()).collect())
                    .collect()
            })
            .collect();
        let assoc_inv = (0..n)
            .map(|x| {
                (0..n).map(|y| (0..n).map(|z| self.assoc[z][y][x].clone()).collect()).collect()
            })
            .collect();
        let braid = self.braid.as_ref().map(|b| {
            (0..n).map(|x| (0..n).map(|y| b[y][x].clone()).collect()).collect()
        });
        SemigroupData { base: self.base.clone(), obj_tensor, mor_tensor, assoc, assoc_inv, braid }
    }
}

/// Parenthesized tensor word over formal objects.
#[derive(Clone, Debug)]
pub enum Tree {
    Leaf(Fo),
    Node(Box<Tree>, Box<Tree>),
}

pub fn leaf(fo: Fo) -> Tree {
    Tree::Leaf(fo)
}

pub fn node(l: Tree, r: Tree) -> Tree {
    Tree::Node(Box::new(l), Box::new(r))
}

impl Tree {
    pub fn eval(&self, s: &SemigroupData) -> Fo {
        match self {
            Tree::Leaf(fo) => fo.clone(),
            Tree::Node(l, r) => s.tensor_fo(&l.eval(s), &r.eval(s)),
        }
    }

    pub fn word(&self) -> Vec<Fo> {
        match self {
            Tree::Leaf(fo) => vec![fo.clone()],
            Tree::Node(l, r) => {
                let mut w = l.word();
                w.extend(r.word());
                w
            }
        }
    }

}

/// Canonical coherence morphism from a tree to the right comb on its word,
/// returned together with its inverse (built structurally from the cached
/// associator cell inverses, never by solving).
fn to_right_comb(s: &SemigroupData, t: &Tree) -> (Mor, Mor, Tree) {
    match t {
        Tree::Leaf(fo) => {
            let id = Mor::identity(&s.base, fo);
            (id.clone(), id, t.clone())
        }
        Tree::Node(l, r) => {
            let (ml, mli, cl) = to_right_comb(s, l);
            let (mr, mri, cr) = to_right_comb(s, r);
            let m0 = s.tensor_mor(&ml, &mr);
            let m0i = s.tensor_mor(&mli, &mri);
            let (m1, m1i, comb) = graft(s, &cl, &cr);
            (compose(&s.base, &m1, &m0), compose(&s.base, &m0i, &m1i), comb)
        }
    }
}

/// Given two right combs, produce the coherence morphism (and inverse) from
/// their node to the right comb on the concatenated word.
fn graft(s: &SemigroupData, l: &Tree, r: &Tree) -> (Mor, Mor, Tree) {
    match l {
        Tree::Leaf(x) => {
            let comb = node(leaf(x.clone()), r.clone());
            let id = Mor::identity(&s.base, &comb.eval(s));
            (id.clone(), id, comb)
        }
        Tree::Node(a, b) => {
            let Tree::Leaf(x) = a.as_ref() else { panic!("graft expects right combs") };
            // (x ⊠ B) ⊠ R -> x ⊠ (B ⊠ R), then graft B onto R under x
            let fb = b.eval(s);
            let fr = r.eval(s);
            let assoc = s.assoc_fo(x, &fb, &fr);
            let assoc_inv = s.assoc_fo_inv(x, &fb, &fr);
            let (mrec, mreci, comb) = graft(s, b, r);
            let idx = Mor::identity(&s.base, x);
            let whisker = s.tensor_mor(&idx, &mrec);
            let whisker_inv = s.tensor_mor(&idx, &mreci);
            (
                compose(&s.base, &whisker, &assoc),
                compose(&s.base, &assoc_inv, &whisker_inv),
                node(leaf(x.clone()), comb),
            )
        }
    }
}

/// Canonical coherence isomorphism between two bracketings of the same
/// flattened word.
pub fn rebracket(s: &SemigroupData, from: &Tree, to: &Tree) -> Mor {
    let wf = from.word();
    let wt = to.word();
    assert_eq!(wf, wt, "rebracket requires identical tensor words");
    let (mf, _, _) = to_right_comb(s, from);
    let (_, mti, _) = to_right_comb(s, to);
    compose(&s.base, &mti, &mf)
}

#[derive(Clone, Debug, serde::Serialize, Default)]
pub struct SemigroupReport {
    pub pass: bool,
    pub violations: Vec<Violation>,
}

const MAX_WITNESSES: usize = 10;

/// Bifunctoriality, associator invertibility and naturality, the pentagon,
/// and (when present) symmetry axioms, all on basis data.
pub fn validate_semigroup(s: &SemigroupData) -> SemigroupReport {
    let c = &s.base;
    let n = s.n();
    let mut violations: Vec<Violation> = Vec::new();

    // id ⊠ id = id
    for x in 0..n {
        for y in 0..n {
            let l = s.tensor_mor(&Mor::identity(c, &Fo::one(x)), &Mor::identity(c, &Fo::one(y)));
            if l != Mor::identity(c, &s.obj_tensor[x][y]) {
                violations.push(Violation {
                    rule: "tensor-identity".into(),
                    witness: format!("({}, {})", c.objects[x], c.objects[y]),
                });
            }
        }
    }

    // interchange on composable basis 4-tuples
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if c.dim(x, y) > 0 && c.dim(y, z) > 0 {
                    pairs.push((x, y, z));
                }
            }
        }
    }
    let interchange: Vec<Violation> = par::flat_map_collect(&pairs, |&(x, y, z)| {
        let mut out = Vec::new();
        for (u, v, w) in pairs.iter().copied() {
            for i in 0..c.dim(x, y) {
                for j in 0..c.dim(y, z) {
                    for p in 0..c.dim(u, v) {
                        for q in 0..c.dim(v, w) {
                            let f = basis_mor(c, x, y, i);
                            let g = basis_mor(c, y, z, j);
                            let ff = basis_mor(c, u, v, p);
                            let gg = basis_mor(c, v, w, q);
                            let lhs = s.tensor_mor(&compose(c, &g, &f), &compose(c, &gg, &ff));
                            let rhs = compose(c, &s.tensor_mor(&g, &gg), &s.tensor_mor(&f, &ff));
                            if lhs != rhs {
                                out.push(Violation {
                                    rule: "bifunctoriality".into(),
                                    witness: format!(
                                        "basis ({i},{j},{p},{q}) on ({},{},{}) x ({},{},{})",
                                        c.objects[x], c.objects[y], c.objects[z],
                                        c.objects[u], c.objects[v], c.objects[w]
                                    ),
                                });
                            }
                        }
                    }
                }
            }
        }
        out
    });
    violations.extend(interchange.into_iter().take(MAX_WITNESSES));

    // associator shape, invertibility and naturality
    let mut triples = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                triples.push((x, y, z));
            }
        }
    }
    let assoc_viol: Vec<Violation> = par::flat_map_collect(&triples, |&(x, y, z)| {
        let mut out = Vec::new();
        let a = &s.assoc[x][y][z];
        let lhs = s.tensor_fo(&s.obj_tensor[x][y], &Fo::one(z));
        let rhs = s.tensor_fo(&Fo::one(x), &s.obj_tensor[y][z]);
        if a.src != lhs || a.dst != rhs {
            out.push(Violation {
                rule: "associator-shape".into(),
                witness: format!("({}, {}, {})", c.objects[x], c.objects[y], c.objects[z]),
            });
            return out;
        }
        if crate::fincat::try_inverse(c, a).is_none() {
            out.push(Violation {
                rule: "associator-invertible".into(),
                witness: format!("({}, {}, {})", c.objects[x], c.objects[y], c.objects[z]),
            });
        }
        // naturality in all three slots on basis morphisms
        for xd in 0..n {
            for i in 0..c.dim(x, xd) {
                let f = basis_mor(c, x, xd, i);
                let idy = Mor::identity(c, &Fo::one(y));
                let idz = Mor::identity(c, &Fo::one(z));
                let lhs_m = compose(
                    c,
                    &s.assoc[xd][y][z],
                    &s.tensor_mor(&s.tensor_mor(&f, &idy), &idz),
                );
                let rhs_m = compose(
                    c,
                    &s.tensor_mor(&f, &s.tensor_mor(&idy, &idz)),
                    a,
                );
                if lhs_m != rhs_m {
                    out.push(Violation {
                        rule: "associator-naturality".into(),
                        witness: format!(
                            "slot 1 basis {i}: ({},{},{}) -> {}",
                            c.objects[x], c.objects[y], c.objects[z], c.objects[xd]
                        ),
                    });
                }
            }
            for i in 0..c.dim(y, xd) {
                let g = basis_mor(c, y, xd, i);
                let idx = Mor::identity(c, &Fo::one(x));
                let idz = Mor::identity(c, &Fo::one(z));
                let lhs_m = compose(
                    c,
                    &s.assoc[x][xd][z],
                    &s.tensor_mor(&s.tensor_mor(&idx, &g), &idz),
                );
                let rhs_m = compose(c, &s.tensor_mor(&idx, &s.tensor_mor(&g, &idz)), a);
                if lhs_m != rhs_m {
                    out.push(Violation {
                        rule: "associator-naturality".into(),
                        witness: format!(
                            "slot 2 basis {i}: ({},{},{}) -> {}",
                            c.objects[x], c.objects[y], c.objects[z], c.objects[xd]
                        ),
                    });
                }
            }
            for i in 0..c.dim(z, xd) {
                let h = basis_mor(c, z, xd, i);
                let idx = Mor::identity(c, &Fo::one(x));
                let idy = Mor::identity(c, &Fo::one(y));
                let lhs_m = compose(
                    c,
                    &s.assoc[x][y][xd],
                    &s.tensor_mor(&s.tensor_mor(&idx, &idy), &h),
                );
                let rhs_m = compose(c, &s.tensor_mor(&idx, &s.tensor_mor(&idy, &h)), a);
                if lhs_m != rhs_m {
                    out.push(Violation {
                        rule: "associator-naturality".into(),
                        witness: format!(
                            "slot 3 basis {i}: ({},{},{}) -> {}",
                            c.objects[x], c.objects[y], c.objects[z], c.objects[xd]
                        ),
                    });
                }
            }
        }
        out
    });
    violations.extend(assoc_viol.into_iter().take(MAX_WITNESSES));

    // pentagon on all indecomposable quadruples
    let mut quads = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    quads.push((x, y, z, w));
                }
            }
        }
    }
    let pentagon: Vec<Violation> = par::flat_map_collect(&quads, |&(x, y, z, w)| {
        let fx = Fo::one(x);
        let fy = Fo::one(y);
        let fz = Fo::one(z);
        let fw = Fo::one(w);
        let xy = s.tensor_fo(&fx, &fy);
        let zw = s.tensor_fo(&fz, &fw);
        let yz = s.tensor_fo(&fy, &fz);
        // path 1: ((x y) z) w -> (x y)(z w) -> x (y (z w))
        let p1 = compose(
            &s.base,
            &s.assoc_fo(&fx, &fy, &zw),
            &s.assoc_fo(&xy, &fz, &fw),
        );
        // path 2: ((x y) z) w -> (x (y z)) w -> x ((y z) w) -> x (y (z w))
        let step1 = s.tensor_mor(&s.assoc_fo(&fx, &fy, &fz), &Mor::identity(&s.base, &fw));
        let step2 = s.assoc_fo(&fx, &yz, &fw);
        let step3 = s.tensor_mor(&Mor::identity(&s.base, &fx), &s.assoc_fo(&fy, &fz, &fw));
        let p2 = compose(&s.base, &step3, &compose(&s.base, &step2, &step1));
        if p1 != p2 {
            vec![Violation {
                rule: "pentagon".into(),
                witness: format!(
                    "({}, {}, {}, {})",
                    s.base.objects[x], s.base.objects[y], s.base.objects[z], s.base.objects[w]
                ),
            }]
        } else {
            Vec::new()
        }
    });
    violations.extend(pentagon.into_iter().take(MAX_WITNESSES));

    // symmetry axioms when a braiding is present
    if s.braid.is_some() {
        for x in 0..n {
            for y in 0..n {
                let bxy = s.braid_fo(&Fo::one(x), &Fo::one(y)).unwrap();
                let byx = s.braid_fo(&Fo::one(y), &Fo::one(x)).unwrap();
                if compose(c, &byx, &bxy) != Mor::identity(c, &s.obj_tensor[x][y]) {
                    violations.push(Violation {
                        rule: "symmetry-involution".into(),
                        witness: format!("({}, {})", c.objects[x], c.objects[y]),
                    });
                }
                // naturality
                for xd in 0..n {
                    for i in 0..c.dim(x, xd) {
                        let f = basis_mor(c, x, xd, i);
                        let idy = Mor::identity(c, &Fo::one(y));
                        let lhs = compose(c, &s.braid_fo(&Fo::one(xd), &Fo::one(y)).unwrap(), &s.tensor_mor(&f, &idy));
                        let rhs = compose(c, &s.tensor_mor(&idy, &f), &bxy);
                        if lhs != rhs {
                            violations.push(Violation {
                                rule: "symmetry-naturality".into(),
                                witness: format!("basis {i}: ({}, {})", c.objects[x], c.objects[y]),
                            });
                        }
                    }
                }
            }
        }
        // hexagon against the associator
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (fx, fy, fz) = (Fo::one(x), Fo::one(y), Fo::one(z));
                    let yz = s.tensor_fo(&fy, &fz);
                    // a_{y,z,x} ∘ β_{x, y ⊠ z} ∘ a_{x,y,z}
                    let lhs = compose(
                        c,
                        &s.assoc_fo(&fy, &fz, &fx),
                        &compose(c, &s.braid_fo(&fx, &yz).unwrap(), &s.assoc_fo(&fx, &fy, &fz)),
                    );
                    // (id_y ⊠ β_{x,z}) ∘ a_{y,x,z} ∘ (β_{x,y} ⊠ id_z)
                    let rhs = compose(
                        c,
                        &s.tensor_mor(&Mor::identity(c, &fy), &s.braid_fo(&fx, &fz).unwrap()),
                        &compose(
                            c,
                            &s.assoc_fo(&fy, &fx, &fz),
                            &s.tensor_mor(&s.braid_fo(&fx, &fy).unwrap(), &Mor::identity(c, &fz)),
                        ),
                    );
                    if lhs != rhs {
                        violations.push(Violation {
                            rule: "hexagon".into(),
                            witness: format!("({}, {}, {})", c.objects[x], c.objects[y], c.objects[z]),
                        });
                    }
                }
            }
        }
    }

    violations.truncate(4 * MAX_WITNESSES);
    SemigroupReport { pass: violations.is_empty(), violations }
}

pub fn basis_mor(c: &CatPresentation, x: usize, y: usize, i: usize) -> Mor {
    let mut m = Mor::zero(c, Fo::one(x), Fo::one(y));
    m.blocks[0][0] = c.basis_coords(x, y, i);
    m
}

/// Additive endofunctors of the base that carry canonical module-functor
/// structure: the identity, the zero functor, and tensoring on one side.
#[derive(Clone, Debug, PartialEq)]
pub enum EndoFunctor {
    Identity,
    Zero,
    /// A ⊠ − (a right-module endofunctor)
    TensorLeft(Fo),
    /// − ⊠ A (a left-module endofunctor)
    TensorRight(Fo),
}

impl EndoFunctor {
    pub fn apply_fo(&self, s: &SemigroupData, x: &Fo) -> Fo {
        match self {
            EndoFunctor::Identity => x.clone(),
            EndoFunctor::Zero => Fo::empty(),
            EndoFunctor::TensorLeft(a) => s.tensor_fo(a, x),
            EndoFunctor::TensorRight(a) => s.tensor_fo(x, a),
        }
    }

    pub fn apply_mor(&self, s: &SemigroupData, f: &Mor) -> Mor {
        match self {
            EndoFunctor::Identity => f.clone(),
            EndoFunctor::Zero => Mor::zero(&s.base, Fo::empty(), Fo::empty()),
            EndoFunctor::TensorLeft(a) => s.tensor_mor(&Mor::identity(&s.base, a), f),
            EndoFunctor::TensorRight(a) => s.tensor_mor(f, &Mor::identity(&s.base, a)),
        }
    }

    /// Right-module constraint F(x ⊠ h) -> F(x) ⊠ h.
    fn right_constraint(&self, s: &SemigroupData, x: &Fo, h: &Fo) -> Mor {
        match self {
            EndoFunctor::Identity => Mor::identity(&s.base, &s.tensor_fo(x, h)),
            EndoFunctor::Zero => Mor::zero(&s.base, Fo::empty(), Fo::empty()),
            EndoFunctor::TensorLeft(a) => s.assoc_fo_inv(a, x, h),
            EndoFunctor::TensorRight(_) => panic!("not a right-module functor"),
        }
    }

    /// Left-module constraint F(g ⊠ x) -> g ⊠ F(x).
    fn left_constraint(&self, s: &SemigroupData, g: &Fo, x: &Fo) -> Mor {
        match self {
            EndoFunctor::Identity => Mor::identity(&s.base, &s.tensor_fo(g, x)),
            EndoFunctor::Zero => Mor::zero(&s.base, Fo::empty(), Fo::empty()),
            EndoFunctor::TensorRight(a) => s.assoc_fo(g, x, a),
            EndoFunctor::TensorLeft(_) => panic!("not a left-module functor"),
        }
    }

    fn right_module_ok(&self) -> bool {
        !matches!(self, EndoFunctor::TensorRight(_))
    }

    fn left_module_ok(&self) -> bool {
        !matches!(self, EndoFunctor::TensorLeft(_))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub enum Flavor {
    Plain,
    LeftModule,
    RightModule,
}

/// A natural family between two endofunctors, stored by components on
/// indecomposables only; components on formal objects are spliced out of
/// these by additivity.
#[derive(Clone, Debug)]
pub struct Transform {
    pub flavor: Flavor,
    pub f: EndoFunctor,
    pub g: EndoFunctor,
    pub comps: Vec<Mor>,
}

impl Transform {
    /// Component at a formal object, by additivity.
    pub fn component_at(&self, s: &SemigroupData, w: &Fo) -> Mor {
        component_from_parts(s, &self.f, &self.g, &self.comps, w)
    }
}

/// Splice per-indecomposable components into the component at a formal
/// object W = ⊕ w_c: the (c, c) diagonal blocks carry the components.
fn component_from_parts(
    s: &SemigroupData,
    f: &EndoFunctor,
    g: &EndoFunctor,
    comps: &[Mor],
    w: &Fo,
) -> Mor {
    let src = f.apply_fo(s, w);
    let dst = g.apply_fo(s, w);
    let mut out = Mor::zero(&s.base, src.clone(), dst.clone());
    // index maps from F(W) components to (w-component, local index)
    let src_map = functor_layout(s, f, w);
    let dst_map = functor_layout(s, g, w);
    for (si, &(sc, sl)) in src_map.iter().enumerate() {
        for (di, &(dc, dl)) in dst_map.iter().enumerate() {
            if sc != dc {
                continue;
            }
            let comp = &comps[w.0[sc]];
            let blk = &comp.blocks[dl][sl];
            if blk.iter().any(|x| !x.is_zero()) {
                out.blocks[di][si] = blk.clone();
            }
        }
    }
    out
}

/// For F applied to W, map each component of F(W) to (index of the W
/// component it came from, local component index within F(w_c)).
fn functor_layout(s: &SemigroupData, f: &EndoFunctor, w: &Fo) -> Vec<(usize, usize)> {
    match f {
        EndoFunctor::Identity => (0..w.len()).map(|c| (c, 0)).collect(),
        EndoFunctor::Zero => Vec::new(),
        EndoFunctor::TensorLeft(a) => {
            let layout = s.tensor_layout(a, w);
            // local index within a ⊠ w_c: count components with the same j=c
            let mut counters = vec![0usize; w.len()];
            layout
                .entries
                .iter()
                .map(|&(_, j, _)| {
                    let l = counters[j];
                    counters[j] += 1;
                    (j, l)
                })
                .collect()
        }
        EndoFunctor::TensorRight(a) => {
            let layout = s.tensor_layout(w, a);
            let mut counters = vec![0usize; w.len()];
            layout
                .entries
                .iter()
                .map(|&(i, _, _)| {
                    let l = counters[i];
                    counters[i] += 1;
                    (i, l)
                })
                .collect()
        }
    }
}

/// Exact basis of the space of natural (and, per flavor, equivariant)
/// transformations F => G. Components are unknowns on indecomposables;
/// naturality is imposed against every basis morphism and equivariance
/// against every pair of indecomposables.
pub fn nat_module_space(
    s: &SemigroupData,
    flavor: Flavor,
    f: &EndoFunctor,
    g: &EndoFunctor,
) -> Vec<Transform> {
    match flavor {
        Flavor::RightModule => assert!(
            f.right_module_ok() && g.right_module_ok(),
            "right-module transformations need right-module functors"
        ),
        Flavor::LeftModule => assert!(
            f.left_module_ok() && g.left_module_ok(),
            "left-module transformations need left-module functors"
        ),
        Flavor::Plain => {}
    }
    let c = &s.base;
    let n = s.n();
    let spaces: Vec<HomFlat> = (0..n)
        .map(|x| HomFlat::new(c, &f.apply_fo(s, &Fo::one(x)), &g.apply_fo(s, &Fo::one(x))))
        .collect();
    let offsets: Vec<usize> = spaces
        .iter()
        .scan(0, |acc, sp| {
            let o = *acc;
            *acc += sp.total;
            Some(o)
        })
        .collect();
    let total: usize = spaces.iter().map(|sp| sp.total).sum();

    let unknown_to_mors = |v: &[K]| -> Vec<Mor> {
        (0..n)
            .map(|x| spaces[x].unflatten(c, &v[offsets[x]..offsets[x] + spaces[x].total]))
            .collect()
    };

    // rows of the big constraint matrix, built by evaluating each linear
    // condition on every unknown basis vector
    let mut rows: Vec<Vec<K>> = Vec::new();
    let unknown_basis: Vec<Vec<Mor>> = (0..total)
        .map(|k| {
            let mut v = vec![c.field.zero(); total];
            v[k] = c.field.one();
            unknown_to_mors(&v)
        })
        .collect();

    let mut add_condition = |eval: &dyn Fn(&[Mor]) -> Vec<K>| {
        let cols: Vec<Vec<K>> = unknown_basis.iter().map(|tau| eval(tau)).collect();
        if cols.is_empty() {
            return;
        }
        let rows_n = cols[0].len();
        for r in 0..rows_n {
            rows.push(cols.iter().map(|col| col[r].clone()).collect());
        }
    };

    for x in 0..n {
        for y in 0..n {
            for i in 0..c.dim(x, y) {
                let b = basis_mor(c, x, y, i);
                let fb = f.apply_mor(s, &b);
                let gb = g.apply_mor(s, &b);
                let cod = HomFlat::new(c, &f.apply_fo(s, &Fo::one(x)), &g.apply_fo(s, &Fo::one(y)));
                add_condition(&|tau: &[Mor]| {
                    let lhs = compose(c, &gb, &tau[x]);
                    let rhs = compose(c, &tau[y], &fb);
                    cod.flatten(c, &lhs.sub(&rhs))
                });
            }
        }
    }

    match flavor {
        Flavor::Plain => {}
        Flavor::RightModule => {
            // con_G ∘ τ_{x ⊠ h} = (τ_x ⊠ id_h) ∘ con_F for all pairs
            for x in 0..n {
                for h in 0..n {
                    let fx = Fo::one(x);
                    let fh = Fo::one(h);
                    let xh = s.tensor_fo(&fx, &fh);
                    let con_f = f.right_constraint(s, &fx, &fh);
                    let con_g = g.right_constraint(s, &fx, &fh);
                    let cod = HomFlat::new(c, &con_f.src, &con_g.dst);
                    add_condition(&|tau: &[Mor]| {
                        let at_xh = component_from_parts(s, f, g, tau, &xh);
                        let lhs = compose(c, &con_g, &at_xh);
                        let idh = Mor::identity(c, &fh);
                        let rhs = compose(c, &s.tensor_mor(&tau[x], &idh), &con_f);
                        cod.flatten(c, &lhs.sub(&rhs))
                    });
                }
            }
        }
        Flavor::LeftModule => {
            for g0 in 0..n {
                for x in 0..n {
                    let fg = Fo::one(g0);
                    let fx = Fo::one(x);
                    let gx = s.tensor_fo(&fg, &fx);
                    let con_f = f.left_constraint(s, &fg, &fx);
                    let con_g = g.left_constraint(s, &fg, &fx);
                    let cod = HomFlat::new(c, &con_f.src, &con_g.dst);
                    add_condition(&|tau: &[Mor]| {
                        let at_gx = component_from_parts(s, f, g, tau, &gx);
                        let lhs = compose(c, &con_g, &at_gx);
                        let idg = Mor::identity(c, &fg);
                        let rhs = compose(c, &s.tensor_mor(&idg, &tau[x]), &con_f);
                        cod.flatten(c, &lhs.sub(&rhs))
                    });
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
    (0..ker.cols)
        .map(|j| Transform {
            flavor,
            f: f.clone(),
            g: g.clone(),
            comps: unknown_to_mors(&ker.col(j)),
        })
        .collect()
}

/// Composite builder that tracks the current bracketing alongside the
/// accumulated morphism; every step asserts object agreement, which turns
/// index-bookkeeping mistakes into immediate failures.
pub struct Chain<'a> {
    s: &'a SemigroupData,
    pub tree: Tree,
    pub mor: Mor,
}

impl<'a> Chain<'a> {
    pub fn start(s: &'a SemigroupData, tree: Tree) -> Chain<'a> {
        let mor = Mor::identity(&s.base, &tree.eval(s));
        Chain { s, tree, mor }
    }

    /// Apply a morphism whose source is the current object; `next` names the
    /// bracketing of its target.
    pub fn then(mut self, m: &Mor, next: Tree) -> Chain<'a> {
        assert_eq!(m.src, self.tree.eval(self.s), "chain step source mismatch");
        assert_eq!(m.dst, next.eval(self.s), "chain step target mismatch");
        self.mor = compose(&self.s.base, m, &self.mor);
        self.tree = next;
        self
    }

    /// Insert the canonical coherence isomorphism to another bracketing of
    /// the same word.
    pub fn rebracket_to(mut self, next: Tree) -> Chain<'a> {
        let m = rebracket(self.s, &self.tree, &next);
        self.mor = compose(&self.s.base, &m, &self.mor);
        self.tree = next;
        self
    }

    pub fn finish(self) -> Mor {
        self.mor
    }
}

/// Express a transform (assumed to lie in the span of `basis`) in its
/// coordinates; exact, panics if the membership fails.
pub fn transform_coords(s: &SemigroupData, basis: &[Transform], t: &Transform) -> Vec<K> {
    let c = &s.base;
    let n = s.n();
    let spaces: Vec<HomFlat> = (0..n)
        .map(|x| HomFlat::new(c, &t.f.apply_fo(s, &Fo::one(x)), &t.g.apply_fo(s, &Fo::one(x))))
        .collect();
    let flatten_all = |tr: &Transform| -> Vec<K> {
        (0..n).flat_map(|x| spaces[x].flatten(c, &tr.comps[x])).collect()
    };
    let cols: Vec<Vec<K>> = basis.iter().map(flatten_all).collect();
    let target = flatten_all(t);
    if cols.is_empty() {
        assert!(target.iter().all(|k| k.is_zero()), "transform outside the given span");
        return Vec::new();
    }
    let a = Mat::from_cols(c.field, cols);
    let b = Mat::col_vector(c.field, &target);
    let sol = linalg::solve(&a, &b).expect("transform outside the given span");
    sol.col(0)
}

//! Generators for the example categories: zero semigroup structures,
//! linearized finite semigroups, projective-bimodule categories of a
//! finite-dimensional algebra, group-algebra projectives, and projectives
//! over a commutative algebra under its own tensor.

use crate::field::{FieldSpec, K};
use crate::fincat::{CatPresentation, Fo, Mor};
use crate::linalg::Mat;
use crate::semicat::SemigroupData;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum GenerateError {
    #[error("invalid generator input: {0}")]
    Invalid(String),
}

/// A finite-dimensional algebra with a basis adapted to an orthogonal
/// idempotent decomposition of the unit.
#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    pub field: FieldSpec,
    pub basis: Vec<String>,
    /// mult[i][j] = coordinates of basis_i * basis_j.
    pub mult: Vec<Vec<Vec<K>>>,
    pub unit: Vec<K>,
    /// Orthogonal idempotents summing to the unit, as coordinate vectors.
    pub idempotents: Vec<Vec<K>>,
}

impl AlgebraSpec {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn product(&self, a: &[K], b: &[K]) -> Vec<K> {
        let d = self.dim();
        let mut out = vec![self.field.zero(); d];
        for i in 0..d {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if b[j].is_zero() {
                    continue;
                }
                let c = a[i].mul(&b[j]);
                for k in 0..d {
                    if !self.mult[i][j][k].is_zero() {
                        out[k] = out[k].add(&c.mul(&self.mult[i][j][k]));
                    }
                }
            }
        }
        out
    }

    fn validate(&self) -> Result<(), GenerateError> {
        let d = self.dim();
        if self.mult.len() != d
            || self.mult.iter().any(|r| r.len() != d || r.iter().any(|v| v.len() != d))
        {
            return Err(GenerateError::Invalid("multiplication table shape".into()));
        }
        let e = |i: usize| -> Vec<K> {
            let mut v = vec![self.field.zero(); d];
            v[i] = self.field.one();
            v
        };
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let l = self.product(&self.product(&e(i), &e(j)), &e(k));
                    let r = self.product(&e(i), &self.product(&e(j), &e(k)));
                    if l != r {
                        return Err(GenerateError::Invalid(format!(
                            "non-associative product on basis ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        for i in 0..d {
            if self.product(&self.unit, &e(i)) != e(i) || self.product(&e(i), &self.unit) != e(i) {
                return Err(GenerateError::Invalid("unit is not a two-sided identity".into()));
            }
        }
        // idempotents orthogonal, idempotent, summing to the unit
        let mut sum = vec![self.field.zero(); d];
        for (a, ea) in self.idempotents.iter().enumerate() {
            for (k, v) in ea.iter().enumerate() {
                sum[k] = sum[k].add(v);
            }
            for (b, eb) in self.idempotents.iter().enumerate() {
                let p = self.product(ea, eb);
                let expect = if a == b { ea.clone() } else { vec![self.field.zero(); d] };
                if p != expect {
                    return Err(GenerateError::Invalid("idempotents not orthogonal".into()));
                }
            }
        }
        if sum != self.unit {
            return Err(GenerateError::Invalid("idempotents do not sum to the unit".into()));
        }
        Ok(())
    }

    /// Corner membership: index of the unique (s, t) with e_s b e_t = b.
    fn corner_of(&self, i: usize) -> Result<(usize, usize), GenerateError> {
        let d = self.dim();
        let mut b = vec![self.field.zero(); d];
        b[i] = self.field.one();
        let mut hit = None;
        for s in 0..self.idempotents.len() {
            for t in 0..self.idempotents.len() {
                let p = self.product(&self.product(&self.idempotents[s], &b), &self.idempotents[t]);
                if p == b {
                    if hit.is_some() {
                        return Err(GenerateError::Invalid(format!(
                            "basis element {} lies in more than one corner",
                            self.basis[i]
                        )));
                    }
                    hit = Some((s, t));
                }
            }
        }
        hit.ok_or_else(|| {
            GenerateError::Invalid(format!("basis element {} is not corner-adapted", self.basis[i]))
        })
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        let e = |i: usize| -> Vec<K> {
            let mut v = vec![self.field.zero(); d];
            v[i] = self.field.one();
            v
        };
        (0..d).all(|i| (0..d).all(|j| self.product(&e(i), &e(j)) == self.product(&e(j), &e(i))))
    }
}

/// Ground field k itself.
pub fn algebra_k(field: FieldSpec) -> AlgebraSpec {
    AlgebraSpec {
        field,
        basis: vec!["e".into()],
        mult: vec![vec![vec![field.one()]]],
        unit: vec![field.one()],
        idempotents: vec![vec![field.one()]],
    }
}

/// Dual numbers k[x]/(x^2), basis (1, x).
pub fn algebra_dual_numbers(field: FieldSpec) -> AlgebraSpec {
    let o = field.one();
    let z = field.zero();
    AlgebraSpec {
        field,
        basis: vec!["e".into(), "x".into()],
        mult: vec![
            vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
            vec![vec![z.clone(), o.clone()], vec![z.clone(), z.clone()]],
        ],
        unit: vec![o.clone(), z.clone()],
        idempotents: vec![vec![o, z]],
    }
}

/// The split algebra k x k, basis (e1, e2).
pub fn algebra_k_times_k(field: FieldSpec) -> AlgebraSpec {
    let o = field.one();
    let z = field.zero();
    AlgebraSpec {
        field,
        basis: vec!["e1".into(), "e2".into()],
        mult: vec![
            vec![vec![o.clone(), z.clone()], vec![z.clone(), z.clone()]],
            vec![vec![z.clone(), z.clone()], vec![z.clone(), o.clone()]],
        ],
        unit: vec![o.clone(), o.clone()],
        idempotents: vec![vec![o.clone(), z.clone()], vec![z, o]],
    }
}

/// A finite group presented by its multiplication table.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub elements: Vec<String>,
    /// table[i][j] = index of elements[i] * elements[j].
    pub table: Vec<Vec<usize>>,
}

impl GroupSpec {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    fn validate(&self) -> Result<(usize, Vec<usize>), GenerateError> {
        let n = self.order();
        if self.table.len() != n || self.table.iter().any(|r| r.len() != n) {
            return Err(GenerateError::Invalid("group table shape".into()));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.table[self.table[i][j]][k] != self.table[i][self.table[j][k]] {
                        return Err(GenerateError::Invalid("non-associative group table".into()));
                    }
                }
            }
        }
        let unit = (0..n)
            .find(|&e| (0..n).all(|i| self.table[e][i] == i && self.table[i][e] == i))
            .ok_or_else(|| GenerateError::Invalid("group table has no identity".into()))?;
        let mut inv = vec![usize::MAX; n];
        for i in 0..n {
            inv[i] = (0..n)
                .find(|&j| self.table[i][j] == unit && self.table[j][i] == unit)
                .ok_or_else(|| GenerateError::Invalid("group table has a non-invertible element".into()))?;
        }
        Ok((unit, inv))
    }
}

pub fn group_z2() -> GroupSpec {
    GroupSpec { elements: vec!["e".into(), "g".into()], table: vec![vec![0, 1], vec![1, 0]] }
}

pub fn group_cyclic(n: usize) -> GroupSpec {
    GroupSpec {
        elements: (0..n).map(|i| format!("g{i}")).collect(),
        table: (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect(),
    }
}

fn empty_mor_tensor_tables(base: &CatPresentation, obj_tensor: &[Vec<Fo>]) -> Vec<Vec<Vec<Vec<Vec<Mor>>>>> {
    let n = base.n();
    (0..n)
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
                                                base,
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
        .collect()
}

/// Zero semigroup structure on a base with one simple object per label.
pub fn zero_semigroup(field: FieldSpec, labels: &[&str]) -> SemigroupData {
    let n = labels.len();
    let homdim: Vec<Vec<usize>> =
        (0..n).map(|x| (0..n).map(|y| usize::from(x == y)).collect()).collect();
    let comp = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    (0..n)
                        .map(|z| {
                            Mat::from_fn(field, homdim[x][z], homdim[y][z] * homdim[x][y], |_, _| {
                                field.one()
                            })
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let base = CatPresentation {
        field,
        objects: labels.iter().map(|s| s.to_string()).collect(),
        homdim,
        comp,
        ident: (0..n).map(|_| vec![field.one()]).collect(),
    };
    let obj_tensor: Vec<Vec<Fo>> = vec![vec![Fo::empty(); n]; n];
    let mor_tensor = empty_mor_tensor_tables(&base, &obj_tensor);
    let assoc = (0..n)
        .map(|_| (0..n).map(|_| (0..n).map(|_| Mor::zero(&base, Fo::empty(), Fo::empty())).collect()).collect())
        .collect();
    SemigroupData::assemble(base, obj_tensor, mor_tensor, assoc, None)
}

/// Linearization of a finite semigroup: one object per element, scalar
/// endomorphisms only, tensor given by the multiplication table.
pub fn linear_semigroup(
    field: FieldSpec,
    elements: &[&str],
    table: &[Vec<usize>],
) -> Result<SemigroupData, GenerateError> {
    let n = elements.len();
    if table.len() != n || table.iter().any(|r| r.len() != n) {
        return Err(GenerateError::Invalid("semigroup table shape".into()));
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if table[table[i][j]][k] != table[i][table[j][k]] {
                    return Err(GenerateError::Invalid(format!(
                        "non-associative semigroup table at ({i},{j},{k})"
                    )));
                }
            }
        }
    }
    let homdim: Vec<Vec<usize>> =
        (0..n).map(|x| (0..n).map(|y| usize::from(x == y)).collect()).collect();
    let comp = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    (0..n)
                        .map(|z| {
                            Mat::from_fn(field, homdim[x][z], homdim[y][z] * homdim[x][y], |_, _| {
                                field.one()
                            })
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let base = CatPresentation {
        field,
        objects: elements.iter().map(|s| s.to_string()).collect(),
        homdim,
        comp,
        ident: (0..n).map(|_| vec![field.one()]).collect(),
    };
    let obj_tensor: Vec<Vec<Fo>> =
        (0..n).map(|x| (0..n).map(|y| Fo::one(table[x][y])).collect()).collect();
    let mut mor_tensor = empty_mor_tensor_tables(&base, &obj_tensor);
    for x in 0..n {
        for y in 0..n {
            mor_tensor[x][x][y][y][0] = Mor::identity(&base, &obj_tensor[x][y]);
        }
    }
    let assoc = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    (0..n)
                        .map(|z| Mor::identity(&base, &Fo::one(table[table[x][y]][z])))
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(SemigroupData::assemble(base, obj_tensor, mor_tensor, assoc, None))
}

/// Projective bimodules of a finite-dimensional algebra A under the tensor
/// over A. Indecomposables are P_ij = A e_i (x) e_j A; Hom(P_ij, P_kl) has a
/// basis of pairs (u, v) with u in e_i A e_k and v in e_l A e_j.
pub fn bimodule_proj(alg: &AlgebraSpec) -> Result<SemigroupData, GenerateError> {
    alg.validate()?;
    let field = alg.field;
    let ni = alg.idempotents.len();
    let d = alg.dim();
    let corners: Vec<(usize, usize)> =
        (0..d).map(|i| alg.corner_of(i)).collect::<Result<_, _>>()?;
    let corner_basis = |s: usize, t: usize| -> Vec<usize> {
        (0..d).filter(|&i| corners[i] == (s, t)).collect()
    };
    // expand a full coordinate vector known to live in a corner
    let corner_coords = |v: &[K], s: usize, t: usize| -> Vec<K> {
        let cb = corner_basis(s, t);
        for i in 0..d {
            if !v[i].is_zero() && corners[i] != (s, t) {
                panic!("vector escapes its corner");
            }
        }
        cb.iter().map(|&i| v[i].clone()).collect()
    };

    // objects P_ij in row-major order
    let mut objects = Vec::new();
    let mut obj_of = vec![vec![0usize; ni]; ni];
    for i in 0..ni {
        for j in 0..ni {
            obj_of[i][j] = objects.len();
            if ni == 1 {
                objects.push("X".to_string());
            } else {
                objects.push(format!("P{}{}", i + 1, j + 1));
            }
        }
    }
    let n = objects.len();
    let pair_of = |o: usize| -> (usize, usize) { (o / ni, o % ni) };

    // Hom bases: pairs (u, v), u in e_i A e_k, v in e_l A e_j, lex order
    let hom_basis = |o1: usize, o2: usize| -> Vec<(usize, usize)> {
        let (i, j) = pair_of(o1);
        let (k, l) = pair_of(o2);
        let us = corner_basis(i, k);
        let vs = corner_basis(l, j);
        let mut out = Vec::new();
        for &u in &us {
            for &v in &vs {
                out.push((u, v));
            }
        }
        out
    };
    let homdim: Vec<Vec<usize>> =
        (0..n).map(|a| (0..n).map(|b| hom_basis(a, b).len()).collect()).collect();

    // composition: (s ⊗ t) ∘ (u ⊗ v) = (u s) ⊗ (t v)
    let e_vec = |i: usize| -> Vec<K> {
        let mut v = vec![field.zero(); d];
        v[i] = field.one();
        v
    };
    let mut comp = vec![vec![Vec::new(); n]; n];
    for o1 in 0..n {
        for o2 in 0..n {
            for o3 in 0..n {
                let b12 = hom_basis(o1, o2);
                let b23 = hom_basis(o2, o3);
                let b13 = hom_basis(o1, o3);
                let (i, j) = pair_of(o1);
                let (_k, _l) = pair_of(o2);
                let (m, nn) = pair_of(o3);
                let mut mat = Mat::zero(field, b13.len(), b23.len() * b12.len());
                for (gj, &(s, t)) in b23.iter().enumerate() {
                    for (fi, &(u, v)) in b12.iter().enumerate() {
                        let us = alg.product(&e_vec(u), &e_vec(s));
                        let tv = alg.product(&e_vec(t), &e_vec(v));
                        let us_c = corner_coords(&us, i, m);
                        let tv_c = corner_coords(&tv, nn, j);
                        let us_idx = corner_basis(i, m);
                        let vv_idx = corner_basis(nn, j);
                        for (a, _) in us_idx.iter().enumerate() {
                            for (b, _) in vv_idx.iter().enumerate() {
                                let coeff = us_c[a].mul(&tv_c[b]);
                                if coeff.is_zero() {
                                    continue;
                                }
                                let row = b13
                                    .iter()
                                    .position(|&(uu, vv)| uu == us_idx[a] && vv == vv_idx[b])
                                    .expect("corner basis closed under products");
                                let cur = mat.get(row, gj * b12.len() + fi).add(&coeff);
                                mat.set(row, gj * b12.len() + fi, cur);
                            }
                        }
                    }
                }
                comp[o1][o2].push(mat);
            }
        }
    }

    // identity of P_ij: e_i ⊗ e_j expanded over the Hom basis
    let mut ident = Vec::new();
    for o in 0..n {
        let (i, j) = pair_of(o);
        let b = hom_basis(o, o);
        let ei = corner_coords(&alg.idempotents[i], i, i);
        let ej = corner_coords(&alg.idempotents[j], j, j);
        let ib = corner_basis(i, i);
        let jb = corner_basis(j, j);
        let mut v = vec![field.zero(); b.len()];
        for (a, &u) in ib.iter().enumerate() {
            for (c, &w) in jb.iter().enumerate() {
                let coeff = ei[a].mul(&ej[c]);
                if coeff.is_zero() {
                    continue;
                }
                let pos = b.iter().position(|&(uu, vv)| uu == u && vv == w).unwrap();
                v[pos] = v[pos].add(&coeff);
            }
        }
        ident.push(v);
    }

    let base = CatPresentation { field, objects, homdim, comp, ident };

    // tensor on objects: P_ij ⊠ P_kl = P_il^{(dim e_j A e_k)} when j = k is
    // read through the middle corner e_j A e_k
    let obj_tensor: Vec<Vec<Fo>> = (0..n)
        .map(|o1| {
            (0..n)
                .map(|o2| {
                    let (i, j) = pair_of(o1);
                    let (k, l) = pair_of(o2);
                    let mid = corner_basis(j, k);
                    Fo(vec![obj_of[i][l]; mid.len()])
                })
                .collect()
        })
        .collect();

    // tensor on morphisms
    let mut mor_tensor = empty_mor_tensor_tables(&base, &obj_tensor);
    for o1 in 0..n {
        for o1d in 0..n {
            for o2 in 0..n {
                for o2d in 0..n {
                    let bf = hom_basis(o1, o1d);
                    let bg = hom_basis(o2, o2d);
                    if bf.is_empty() || bg.is_empty() {
                        continue;
                    }
                    let (i, j) = pair_of(o1);
                    let (k, l) = pair_of(o1d);
                    let (ip, jp) = pair_of(o2);
                    let (kp, lp) = pair_of(o2d);
                    let src_mid = corner_basis(j, ip);
                    let dst_mid = corner_basis(l, kp);
                    let src_fo = obj_tensor[o1][o2].clone();
                    let dst_fo = obj_tensor[o1d][o2d].clone();
                    let src_obj = obj_of[i][jp];
                    let dst_obj = obj_of[k][lp];
                    let bres = hom_basis(src_obj, dst_obj);
                    for (p, &(u, v)) in bf.iter().enumerate() {
                        for (q, &(up, vp)) in bg.iter().enumerate() {
                            let mut cell = Mor::zero(&base, src_fo.clone(), dst_fo.clone());
                            for (mi, &w) in src_mid.iter().enumerate() {
                                // middle transform w -> v * w * u'
                                let vw = alg.product(&e_vec(v), &e_vec(w));
                                let vwu = alg.product(&vw, &e_vec(up));
                                let coords = corner_coords(&vwu, l, kp);
                                for (mo, &_wp) in dst_mid.iter().enumerate() {
                                    if coords[mo].is_zero() {
                                        continue;
                                    }
                                    // residual morphism u ⊗ v'
                                    let pos = bres
                                        .iter()
                                        .position(|&(uu, vv)| uu == u && vv == vp)
                                        .expect("residual basis pair exists");
                                    let mut vec = vec![field.zero(); bres.len()];
                                    vec[pos] = coords[mo].clone();
                                    cell.blocks[mo][mi] = vec;
                                }
                            }
                            mor_tensor[o1][o1d][o2][o2d][p * bg.len() + q] = cell;
                        }
                    }
                }
            }
        }
    }

    // associator: pure relabeling of middle-basis pairs
    let mut assoc = vec![vec![Vec::new(); n]; n];
    for o1 in 0..n {
        for o2 in 0..n {
            for o3 in 0..n {
                let (i, j) = pair_of(o1);
                let (k, l) = pair_of(o2);
                let (m, nn) = pair_of(o3);
                let mid1 = corner_basis(j, k).len();
                let mid2 = corner_basis(l, m).len();
                let lhs = {
                    let ab = &obj_tensor[o1][o2];
                    // (P_ij ⊠ P_kl) ⊠ P_mn
                    let mut fo = Vec::new();
                    for _ in 0..ab.len() {
                        for _ in 0..mid2 {
                            fo.push(obj_of[i][nn]);
                        }
                    }
                    Fo(fo)
                };
                let rhs = {
                    let mut fo = Vec::new();
                    for _ in 0..mid2 {
                        for _ in 0..mid1 {
                            fo.push(obj_of[i][nn]);
                        }
                    }
                    Fo(fo)
                };
                let mut a = Mor::zero(&base, lhs, rhs);
                let id_in = base.ident[obj_of[i][nn]].clone();
                for alpha in 0..mid1 {
                    for beta in 0..mid2 {
                        let src_idx = alpha * mid2 + beta;
                        let dst_idx = beta * mid1 + alpha;
                        a.blocks[dst_idx][src_idx] = id_in.clone();
                    }
                }
                assoc[o1][o2].push(a);
            }
        }
    }

    Ok(SemigroupData::assemble(base, obj_tensor, mor_tensor, assoc, None))
}

/// Group-algebra projectives: a single object kG over GF(p) with
/// End = kG and kG (x) kG decomposing into |G| copies diagonally.
pub fn group_proj(group: &GroupSpec, field: FieldSpec) -> Result<SemigroupData, GenerateError> {
    if !field.is_valid() {
        return Err(GenerateError::Invalid("characteristic must be prime".into()));
    }
    let (unit, inv) = group.validate()?;
    let n = group.order();
    // End(P) basis phi_a (right multiplication by a); phi_a ∘ phi_b = phi_{b a}
    let mut comp = Mat::zero(field, n, n * n);
    for a in 0..n {
        for b in 0..n {
            comp.set(group.table[b][a], a * n + b, field.one());
        }
    }
    let mut ident = vec![field.zero(); n];
    ident[unit] = field.one();
    let base = CatPresentation {
        field,
        objects: vec!["P".into()],
        homdim: vec![vec![n]],
        comp: vec![vec![vec![comp]]],
        ident: vec![ident],
    };
    let obj_tensor = vec![vec![Fo(vec![0; n])]];
    let mut mor_tensor = empty_mor_tensor_tables(&base, &obj_tensor);
    for a in 0..n {
        for b in 0..n {
            // phi_a ⊠ phi_b sends slot h to slot a^{-1} h b acting as phi_a
            let mut cell = Mor::zero(&base, Fo(vec![0; n]), Fo(vec![0; n]));
            for h in 0..n {
                let hd = group.table[group.table[inv[a]][h]][b];
                let mut v = vec![field.zero(); n];
                v[a] = field.one();
                cell.blocks[hd][h] = v;
            }
            mor_tensor[0][0][0][0][a * n + b] = cell;
        }
    }
    // associator: slot (h, k) -> (h^{-1} k, h), identity on the residual
    let lhs = Fo(vec![0; n * n]);
    let rhs = Fo(vec![0; n * n]);
    let mut a = Mor::zero(&base, lhs, rhs);
    for h in 0..n {
        for k in 0..n {
            let src = h * n + k;
            let m = group.table[inv[h]][k];
            let dst = m * n + h;
            let mut v = vec![field.zero(); n];
            v[unit] = field.one();
            a.blocks[dst][src] = v;
        }
    }
    let assoc = vec![vec![vec![a]]];
    // symmetry: slot h -> slot h^{-1} acting as phi_h
    let mut b = Mor::zero(&base, Fo(vec![0; n]), Fo(vec![0; n]));
    for h in 0..n {
        let mut v = vec![field.zero(); n];
        v[h] = field.one();
        b.blocks[inv[h]][h] = v;
    }
    let braid = Some(vec![vec![b]]);
    Ok(SemigroupData::assemble(base, obj_tensor, mor_tensor, assoc, braid))
}

/// Projectives over a commutative algebra A with the tensor over A itself:
/// one object, End = A, X ⊠ X = X, morphism tensor = multiplication.
pub fn commutative_proj(alg: &AlgebraSpec) -> Result<SemigroupData, GenerateError> {
    alg.validate()?;
    if !alg.is_commutative() {
        return Err(GenerateError::Invalid("algebra must be commutative".into()));
    }
    let field = alg.field;
    let d = alg.dim();
    let e_vec = |i: usize| -> Vec<K> {
        let mut v = vec![field.zero(); d];
        v[i] = field.one();
        v
    };
    let mut comp = Mat::zero(field, d, d * d);
    for j in 0..d {
        for i in 0..d {
            let p = alg.product(&e_vec(j), &e_vec(i));
            for (k, v) in p.into_iter().enumerate() {
                comp.set(k, j * d + i, v);
            }
        }
    }
    let base = CatPresentation {
        field,
        objects: vec!["X".into()],
        homdim: vec![vec![d]],
        comp: vec![vec![vec![comp]]],
        ident: vec![alg.unit.clone()],
    };
    let obj_tensor = vec![vec![Fo::one(0)]];
    let mut mor_tensor = empty_mor_tensor_tables(&base, &obj_tensor);
    for p in 0..d {
        for q in 0..d {
            let mut cell = Mor::zero(&base, Fo::one(0), Fo::one(0));
            cell.blocks[0][0] = alg.product(&e_vec(p), &e_vec(q));
            mor_tensor[0][0][0][0][p * d + q] = cell;
        }
    }
    let assoc = vec![vec![vec![Mor::identity(&base, &Fo::one(0))]]];
    let braid = Some(vec![vec![Mor::identity(&base, &Fo::one(0))]]);
    Ok(SemigroupData::assemble(base, obj_tensor, mor_tensor, assoc, braid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::validate_presentation;
    use crate::semicat::validate_semigroup;

    #[test]
    fn zero_fixture_validates() {
        let s = zero_semigroup(FieldSpec::Q, &["A", "B"]);
        assert!(validate_presentation(&s.base).pass);
        assert!(validate_semigroup(&s).pass);
        assert!(s.obj_tensor[0][1].is_empty());
    }

    #[test]
    fn naive_semigroup_fixture_validates() {
        // S = {y, 0} with y^2 = y and 0 absorbing
        let s = linear_semigroup(FieldSpec::Q, &["y", "0"], &[vec![0, 1], vec![1, 1]]).unwrap();
        assert!(validate_presentation(&s.base).pass);
        assert!(validate_semigroup(&s).pass);
        assert_eq!(s.base.homdim[0][0], 1);
        assert_eq!(s.base.homdim[0][1], 0);
    }

    #[test]
    fn non_associative_table_rejected() {
        // table with t[0][0]=1, others 0 is not associative: (00)0 = 10 = 0
        // vs 0(00) = 01 = 0 ... construct a genuinely broken one
        let r = linear_semigroup(FieldSpec::Q, &["a", "b"], &[vec![1, 0], vec![0, 0]]);
        assert!(r.is_err());
    }

    #[test]
    fn bimodule_proj_k_validates() {
        let s = bimodule_proj(&algebra_k(FieldSpec::Q)).unwrap();
        assert!(validate_presentation(&s.base).pass);
        assert!(validate_semigroup(&s).pass);
        assert_eq!(s.base.n(), 1);
        assert_eq!(s.base.dim(0, 0), 1);
        assert_eq!(s.obj_tensor[0][0].len(), 1);
    }

    #[test]
    fn bimodule_proj_dual_numbers_validates() {
        let s = bimodule_proj(&algebra_dual_numbers(FieldSpec::Q)).unwrap();
        assert!(validate_presentation(&s.base).pass);
        assert!(validate_semigroup(&s).pass);
        // oracle: End(X) = A ⊗ A° has dim (dim A)^2 = 4, X ⊠ X = X^{dim A}
        assert_eq!(s.base.dim(0, 0), 4);
        assert_eq!(s.obj_tensor[0][0].len(), 2);
    }

    #[test]
    fn bimodule_proj_k_times_k_validates() {
        let s = bimodule_proj(&algebra_k_times_k(FieldSpec::Q)).unwrap();
        assert!(validate_presentation(&s.base).pass);
        assert!(validate_semigroup(&s).pass);
        assert_eq!(s.base.n(), 4);
        // oracle: P_ij ⊠ P_kl = delta_{jk} P_il by the bimodule tensor rule
        let idx = |i: usize, j: usize| i * 2 + j;
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        let t = &s.obj_tensor[idx(i, j)][idx(k, l)];
                        if j == k {
                            assert_eq!(t.0, vec![idx(i, l)]);
                        } else {
                            assert!(t.is_empty());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn group_proj_z2_validates() {
        let s = group_proj(&group_z2(), FieldSpec::Fp(2)).unwrap();
        assert!(validate_presentation(&s.base).pass);
        assert!(validate_semigroup(&s).pass);
        assert_eq!(s.base.dim(0, 0), 2);
        assert_eq!(s.obj_tensor[0][0].len(), 2);
    }

    #[test]
    fn group_proj_rejects_composite_characteristic() {
        assert!(group_proj(&group_z2(), FieldSpec::Fp(4)).is_err());
    }

    #[test]
    fn commutative_proj_dual_numbers_validates() {
        let s = commutative_proj(&algebra_dual_numbers(FieldSpec::Q)).unwrap();
        assert!(validate_presentation(&s.base).pass);
        assert!(validate_semigroup(&s).pass);
        assert_eq!(s.base.dim(0, 0), 2);
        assert_eq!(s.obj_tensor[0][0].len(), 1);
    }

    #[test]
    fn perturbed_associator_fails_pentagon_or_naturality() {
        let mut s = bimodule_proj(&algebra_dual_numbers(FieldSpec::Q)).unwrap();
        let two = FieldSpec::Q.from_i64(2);
        s.assoc[0][0][0] = s.assoc[0][0][0].scale_by(&two);
        let rep = validate_semigroup(&s);
        assert!(!rep.pass);
        assert!(rep
            .violations
            .iter()
            .any(|v| v.rule == "pentagon" || v.rule == "associator-naturality"));
    }
}

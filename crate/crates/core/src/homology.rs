//! Minimal free resolutions, syzygies and cosyzygies, R-duals and the
//! biduality map, the Auslander transpose, Ext, Matlis duality, trace ideals
//! and stability. Resolutions are cached per module and extended in place.

use std::sync::Arc;

use crate::algebra::LocalAlgebra;
use crate::matrix::{Matrix, Subspace};
use crate::module::{
    cover_surjection, direct_sum, free_module, hom_space, quotient, zero_module, FinModule,
    FreeMatrix, HomSpace, ModuleHom,
};

/// Cached resolution data (grows monotonically).
pub(crate) struct ResolutionData {
    pub frees: Vec<FinModule>,
    pub covers: Vec<Arc<ModuleHom>>,
    pub syzygies: Vec<FinModule>,
    pub incls: Vec<Arc<ModuleHom>>,
    pub diffs: Vec<Arc<FreeMatrix>>,
}

pub(crate) struct DualData {
    pub hom: Arc<HomSpace>,
    pub sigma: Arc<ModuleHom>,
}

pub(crate) struct CosyzygyData {
    pub mods: Vec<FinModule>,
    pub maps: Vec<Arc<ModuleHom>>,
}

/// A stretch of the minimal free resolution of `base`.
///
/// `ranks[i]` is the i-th Betti number; `diffs[i]` is d_{i+1}: F_{i+1} -> F_i;
/// `augment` is F_0 -> M.
#[derive(Clone)]
pub struct ResolutionSegment {
    pub base: FinModule,
    pub length: usize,
    pub ranks: Vec<usize>,
    pub frees: Vec<FinModule>,
    pub covers: Vec<Arc<ModuleHom>>,
    pub syzygies: Vec<FinModule>,
    pub incls: Vec<Arc<ModuleHom>>,
    pub diffs: Vec<Arc<FreeMatrix>>,
}

impl ResolutionSegment {
    pub fn augment(&self) -> Arc<ModuleHom> {
        self.covers[0].clone()
    }

    /// d_i: F_i -> F_{i-1} for 1 <= i <= length.
    pub fn diff(&self, i: usize) -> Arc<FreeMatrix> {
        self.diffs[i - 1].clone()
    }

    pub fn free(&self, i: usize) -> &FinModule {
        &self.frees[i]
    }

    /// Omega^i for 0 <= i <= length (Omega^0 is the base module).
    pub fn syzygy(&self, i: usize) -> FinModule {
        if i == 0 {
            self.base.clone()
        } else {
            self.syzygies[i - 1].clone()
        }
    }
}

/// Minimal free resolution of M to homological degree n (iterated covers).
pub fn resolve(m: &FinModule, n: usize) -> ResolutionSegment {
    // Syzygies created by a parent resolution share the parent's cache.
    if let Some((parent, level)) = m.syzygy_origin() {
        let seg = resolve(&parent, level + n);
        let mut ranks = Vec::new();
        let mut frees = Vec::new();
        let mut covers = Vec::new();
        let mut syzygies = Vec::new();
        let mut incls = Vec::new();
        let mut diffs = Vec::new();
        for i in 0..=n {
            ranks.push(seg.ranks[level + i]);
            frees.push(seg.frees[level + i].clone());
            covers.push(seg.covers[level + i].clone());
        }
        for i in 1..=n {
            syzygies.push(seg.syzygies[level + i - 1].clone());
            incls.push(seg.incls[level + i - 1].clone());
            diffs.push(seg.diffs[level + i - 1].clone());
        }
        return ResolutionSegment {
            base: m.clone(),
            length: n,
            ranks,
            frees,
            covers,
            syzygies,
            incls,
            diffs,
        };
    }

    let d = m.algebra().dim();
    loop {
        // Inspect the cache, then extend outside the lock (covers and kernels
        // of syzygies take their own locks). The kernel of the last cover is
        // only computed when a deeper level is requested.
        enum Step {
            Init,
            Extend {
                level: usize,
                last_cover: Arc<ModuleHom>,
                prev_rank: usize,
            },
        }
        let next = {
            let mut caches = m.0.caches.lock().unwrap();
            let data = caches.resolution.get_or_insert_with(|| ResolutionData {
                frees: Vec::new(),
                covers: Vec::new(),
                syzygies: Vec::new(),
                incls: Vec::new(),
                diffs: Vec::new(),
            });
            if data.frees.is_empty() {
                Some(Step::Init)
            } else if data.frees.len() > n {
                None
            } else {
                let level = data.frees.len();
                Some(Step::Extend {
                    level,
                    last_cover: data.covers.last().unwrap().clone(),
                    prev_rank: data.frees.last().unwrap().vdim() / d,
                })
            }
        };
        match next {
            None => break,
            Some(Step::Init) => {
                let (free, pi) = cover_surjection(m);
                let mut caches = m.0.caches.lock().unwrap();
                let data = caches.resolution.as_mut().unwrap();
                if data.frees.is_empty() {
                    data.frees.push(free);
                    data.covers.push(Arc::new(pi));
                }
            }
            Some(Step::Extend {
                level,
                last_cover,
                prev_rank,
            }) => {
                // Syzygy #level = kernel of the previous cover, then cover it.
                let (ker, incl) = last_cover.kernel();
                ker.set_origin_syzygy(m, level);
                let (free, pi) = cover_surjection(&ker);
                let rank = free.vdim() / d;
                // Only the generator columns of the composite are needed.
                let unit = m.algebra().unit_index();
                let gen_cols: Vec<usize> = (0..rank).map(|g| g * d + unit).collect();
                let comp_cols = incl.mat.mul(&pi.mat.select_cols(&gen_cols));
                let mut fm = FreeMatrix::zeros(m.algebra(), prev_rank, rank);
                for j in 0..rank {
                    let col = comp_cols.column(j);
                    for i in 0..prev_rank {
                        fm.set(
                            i,
                            j,
                            m.algebra().elem_from_coords(col.block(i * d, d, 0, 1)),
                        );
                    }
                }
                debug_assert!(fm.is_minimal(), "resolution differential must land in mF");
                let mut caches = m.0.caches.lock().unwrap();
                let data = caches.resolution.as_mut().unwrap();
                if data.frees.len() == level {
                    data.diffs.push(Arc::new(fm));
                    data.frees.push(free);
                    data.covers.push(Arc::new(pi));
                    data.syzygies.push(ker);
                    data.incls.push(Arc::new(incl));
                }
            }
        }
    }
    let caches = m.0.caches.lock().unwrap();
    let data = caches.resolution.as_ref().unwrap();
    ResolutionSegment {
        base: m.clone(),
        length: n,
        ranks: data.frees[..=n].iter().map(|f| f.vdim() / d).collect(),
        frees: data.frees[..=n].to_vec(),
        covers: data.covers[..=n].to_vec(),
        syzygies: data.syzygies[..n].to_vec(),
        incls: data.incls[..n].to_vec(),
        diffs: data.diffs[..n].to_vec(),
    }
}

pub fn syzygy(m: &FinModule, n: usize) -> FinModule {
    if n == 0 {
        return m.clone();
    }
    resolve(m, n).syzygy(n)
}

pub fn betti_numbers(m: &FinModule, n: usize) -> Vec<usize> {
    resolve(m, n).ranks
}

/// Projective dimension if it is at most `bound`.
pub fn pd_within(m: &FinModule, bound: usize) -> Option<usize> {
    if m.is_zero() {
        return Some(0);
    }
    let seg = resolve(m, bound + 1);
    (0..=bound + 1)
        .find(|&i| seg.ranks[i] == 0)
        .map(|i| i.saturating_sub(1))
}

/// M* = Hom_R(M, R) with its module structure.
pub fn r_dual(m: &FinModule) -> (FinModule, Arc<HomSpace>) {
    let data = dual_data(m);
    (data.hom.module.clone(), data.hom.clone())
}

/// The natural map sigma: M -> M**.
pub fn bidual_map(m: &FinModule) -> Arc<ModuleHom> {
    dual_data(m).sigma.clone()
}

struct DualView {
    hom: Arc<HomSpace>,
    sigma: Arc<ModuleHom>,
}

fn dual_data(m: &FinModule) -> DualView {
    {
        let caches = m.0.caches.lock().unwrap();
        if let Some(d) = &caches.dual {
            return DualView {
                hom: d.hom.clone(),
                sigma: d.sigma.clone(),
            };
        }
    }
    let alg = m.algebra().clone();
    let r1 = free_module(&alg, 1);
    let hom = Arc::new(hom_space(m, &r1).expect("same algebra"));
    let dual = hom.module.clone();
    let bidual_hom = Arc::new(hom_space(&dual, &r1).expect("same algebra"));

    // sigma(v)(phi) = phi(v): column j of sigma is the coordinate vector of
    // the evaluation-at-v_j functional in the bidual basis.
    let field = alg.field();
    let h = hom.dim();
    let mut cols = Vec::with_capacity(m.vdim());
    for j in 0..m.vdim() {
        // The functional dual -> R: phi_i |-> phi_i(v_j), as a d x h matrix.
        let mut t = Matrix::zeros(field, alg.dim(), h);
        for (i, phi) in hom.basis.iter().enumerate() {
            t.set_block(0, i, &phi.column(j));
        }
        let coords = bidual_hom
            .coords_of(&t)
            .expect("evaluation functional lies in the bidual");
        cols.push(coords);
    }
    let mat = Matrix::from_columns(field, bidual_hom.dim(), &cols);
    let sigma = Arc::new(ModuleHom::new_unchecked(
        m.clone(),
        bidual_hom.module.clone(),
        mat,
    ));

    let mut caches = m.0.caches.lock().unwrap();
    caches.dual = Some(DualData {
        hom: hom.clone(),
        sigma: sigma.clone(),
    });
    DualView { hom, sigma }
}

pub fn is_torsionless(m: &FinModule) -> bool {
    bidual_map(m).is_injective()
}

pub fn is_reflexive(m: &FinModule) -> bool {
    bidual_map(m).is_iso()
}

/// Ext^i(Tr M, R) = 0 for 1 <= i <= n.
pub fn is_n_torsionfree(m: &FinModule, n: usize) -> bool {
    let tr = transpose(m);
    (1..=n).all(|i| ext_dim(&tr, &free_module(m.algebra(), 1), i) == 0)
}

/// Minimal left F-approximation f: M -> R^n, n = nu(M*), stacking a minimal
/// generating system of M*.
pub fn left_f_approximation(m: &FinModule) -> ModuleHom {
    let alg = m.algebra().clone();
    let (dual, hom) = r_dual(m);
    let gens = dual.min_generators();
    let n = gens.len();
    let free = free_module(&alg, n);
    let mut mat = Matrix::zeros(alg.field(), free.vdim(), m.vdim());
    for (t, g) in gens.iter().enumerate() {
        let f_t = hom.from_coords(g);
        mat.set_block(t * alg.dim(), 0, &f_t.mat);
    }
    ModuleHom::new_unchecked(m.clone(), free, mat)
}

/// First cosyzygy: cokernel of the minimal left F-approximation.
pub fn cosyzygy(m: &FinModule) -> FinModule {
    cosyzygy_chain(m, 1).mods[0].clone()
}

#[derive(Clone)]
pub struct CosyzygyChain {
    pub base: FinModule,
    /// mods[j] = Omega^{-(j+1)} M.
    pub mods: Vec<FinModule>,
    /// maps[j]: the left approximation out of Omega^{-j} M.
    pub maps: Vec<Arc<ModuleHom>>,
}

pub fn cosyzygy_chain(m: &FinModule, n: usize) -> CosyzygyChain {
    loop {
        let cur = {
            let mut caches = m.0.caches.lock().unwrap();
            let data = caches.cosyzygies.get_or_insert_with(|| CosyzygyData {
                mods: Vec::new(),
                maps: Vec::new(),
            });
            if data.mods.len() >= n {
                None
            } else {
                Some((
                    data.mods.len(),
                    data.mods.last().cloned().unwrap_or_else(|| m.clone()),
                ))
            }
        };
        let Some((len, cur)) = cur else { break };
        let theta = left_f_approximation(&cur);
        let (c, _) = theta.cokernel();
        let mut caches = m.0.caches.lock().unwrap();
        let data = caches.cosyzygies.as_mut().unwrap();
        if data.mods.len() == len {
            data.maps.push(Arc::new(theta));
            data.mods.push(c);
        }
    }
    let caches = m.0.caches.lock().unwrap();
    let data = caches.cosyzygies.as_ref().unwrap();
    CosyzygyChain {
        base: m.clone(),
        mods: data.mods[..n].to_vec(),
        maps: data.maps[..n].to_vec(),
    }
}

impl CosyzygyChain {
    /// Per-level certificates: (stable, Ext^1(-, R) vanishes), the two facts
    /// the chain is contractually required to satisfy.
    pub fn certificates(&self) -> Vec<(bool, bool)> {
        let r1 = free_module(self.base.algebra(), 1);
        self.mods
            .iter()
            .map(|c| {
                let stable = c.is_zero() || is_stable_module(c);
                let ext1 = ext_dim(c, &r1, 1) == 0;
                (stable, ext1)
            })
            .collect()
    }
}

pub fn cosyzygy_n(m: &FinModule, n: usize) -> FinModule {
    if n == 0 {
        return m.clone();
    }
    cosyzygy_chain(m, n).mods[n - 1].clone()
}

/// Auslander transpose from a minimal presentation.
pub fn transpose(m: &FinModule) -> FinModule {
    {
        let caches = m.0.caches.lock().unwrap();
        if let Some(t) = &caches.transpose {
            return t.clone();
        }
    }
    let t = if m.is_zero() {
        zero_module(m.algebra())
    } else {
        let seg = resolve(m, 1);
        let d1 = seg.diff(1);
        let dual = d1.transpose();
        let h = dual.to_hom();
        let (t, _) = h.cokernel();
        t
    };
    m.0.caches.lock().unwrap().transpose = Some(t.clone());
    t
}

/// The value of Ext^i_R(M, N) with its module structure.
pub struct ExtValue {
    pub dim: usize,
    pub module: FinModule,
}

/// Hom(R^rank, N) identified with N^rank; the induced map of Hom(-, N) along a
/// free matrix d: R^cols -> R^rows is a block matrix of action matrices.
fn hom_free_complex_map(d: &FreeMatrix, n: &FinModule) -> Matrix {
    let field = n.algebra().field();
    let (a, b) = (d.rows, d.cols); // d: R^b -> R^a; map N^a -> N^b
    let v = n.vdim();
    let mut m = Matrix::zeros(field, b * v, a * v);
    for s in 0..b {
        for t in 0..a {
            let block = n.action_of(d.get(t, s));
            m.set_block(s * v, t * v, &block);
        }
    }
    m
}

/// Ext^i(M, N): for i = 0 the Hom module, for i >= 1 the cohomology of
/// Hom(F_., N) at spot i.
pub fn ext(m: &FinModule, n: &FinModule, i: usize) -> ExtValue {
    if i == 0 {
        let h = hom_space(m, n).expect("same algebra");
        return ExtValue {
            dim: h.dim(),
            module: h.module,
        };
    }
    if m.is_zero() || n.is_zero() {
        return ExtValue {
            dim: 0,
            module: zero_module(m.algebra()),
        };
    }
    let seg = resolve(m, i + 1);
    if seg.ranks[i] == 0 {
        return ExtValue {
            dim: 0,
            module: zero_module(m.algebra()),
        };
    }
    // C^j = Hom(F_j, N) = N^{b_j}; delta^j: C^{j-1} -> C^j.
    let delta_in = hom_free_complex_map(&seg.diff(i), n); // C^{i-1} -> C^i
    let delta_out = if seg.ranks[i + 1] == 0 {
        Matrix::zeros(n.algebra().field(), 0, seg.ranks[i] * n.vdim())
    } else {
        hom_free_complex_map(&seg.diff(i + 1), n) // C^i -> C^{i+1}
    };
    // Module structure: N^{b_i} with the diagonal action.
    let copies: Vec<FinModule> = (0..seg.ranks[i]).map(|_| n.clone()).collect();
    let refs: Vec<&FinModule> = copies.iter().collect();
    let (ambient, _, _) = direct_sum(&refs);
    let z = Subspace::span(&delta_out.kernel_basis());
    let (zmod, zincl) = crate::module::submodule(&ambient, &z, "cocycles");
    // image of delta_in inside the kernel coordinates
    let b_in_z = zincl
        .mat
        .solve(&delta_in)
        .expect("image lies in the kernel of the next map");
    let bspan = Subspace::span(&b_in_z);
    let (q, _) = quotient(
        &zmod,
        &bspan,
        &format!("Ext^{i}({},{})", m.label(), n.label()),
    );
    ExtValue {
        dim: q.vdim(),
        module: q,
    }
}

pub fn ext_dim(m: &FinModule, n: &FinModule, i: usize) -> usize {
    if i == 0 {
        return hom_space(m, n).expect("same algebra").dim();
    }
    if m.is_zero() || n.is_zero() {
        return 0;
    }
    let seg = resolve(m, i + 1);
    if seg.ranks[i] == 0 {
        return 0;
    }
    let v = n.vdim();
    let dim_ci = seg.ranks[i] * v;
    let rank_in = hom_free_complex_map(&seg.diff(i), n).rank();
    let rank_out = if seg.ranks[i + 1] == 0 {
        0
    } else {
        hom_free_complex_map(&seg.diff(i + 1), n).rank()
    };
    dim_ci - rank_out - rank_in
}

/// Hom_R(f, R): the dual map N* -> M* (in the canonical Hom-space bases),
/// for f: M -> N.
pub fn dual_hom(f: &ModuleHom) -> ModuleHom {
    let (mdual, mhom) = r_dual(&f.src);
    let (ndual, nhom) = r_dual(&f.tgt);
    let field = f.src.algebra().field();
    let mut cols = Vec::with_capacity(nhom.dim());
    for psi in &nhom.basis {
        let comp = psi.mul(&f.mat);
        cols.push(mhom.coords_of(&comp).expect("composite is R-linear into R"));
    }
    let mat = Matrix::from_columns(field, mhom.dim(), &cols);
    ModuleHom::new_unchecked(ndual, mdual, mat)
}

/// Matlis dual D(M): the k-linear dual with transposed actions.
pub fn matlis_dual(m: &FinModule) -> FinModule {
    let action = m.action_matrices().iter().map(|a| a.transpose()).collect();
    FinModule::new_unchecked(m.algebra().clone(), action, &format!("D({})", m.label()))
}

/// The canonical module omega = D(R).
pub fn canonical_module(alg: &LocalAlgebra) -> FinModule {
    let mut d = matlis_dual(&free_module(alg, 1));
    d = FinModule::new_unchecked(alg.clone(), d.action_matrices().to_vec(), "omega");
    d
}

/// Trace ideal: sum of images of all homomorphisms M -> R, as a subspace of R.
pub fn trace_ideal(m: &FinModule) -> Subspace {
    let alg = m.algebra();
    let (_, hom) = r_dual(m);
    if hom.dim() == 0 || m.is_zero() {
        return Subspace::zero(alg.field(), alg.dim());
    }
    let parts: Vec<Matrix> = hom.basis.iter().map(|b| (**b).clone()).collect();
    let refs: Vec<&Matrix> = parts.iter().collect();
    Subspace::span(&Matrix::hstack(&refs))
}

/// Stable (no nonzero free summand) iff the trace ideal lies in m.
pub fn is_stable_module(m: &FinModule) -> bool {
    let alg = m.algebra();
    let tr = trace_ideal(m);
    let mm = alg.mm_subspace();
    mm.contains(&tr)
}

/// Split off free summands: returns (stable part, number of R-summands split).
pub fn strip_free_summands(m: &FinModule) -> (FinModule, usize) {
    let mut cur = m.clone();
    let mut count = 0;
    loop {
        if cur.is_zero() || is_stable_module(&cur) {
            return (cur, count);
        }
        let alg = cur.algebra().clone();
        let (_, hom) = r_dual(&cur);
        // Find a functional whose image contains a unit.
        let unit_row = alg.unit_index();
        let mut split = None;
        for i in 0..hom.dim() {
            let phi = hom.basis_hom(i);
            // some v with phi(v) invertible?
            for j in 0..cur.vdim() {
                let col = phi.mat.column(j);
                if !col.get(unit_row, 0).is_zero() {
                    split = Some((phi.clone(), col));
                    break;
                }
            }
            if split.is_some() {
                break;
            }
        }
        let Some((phi, val)) = split else {
            // Trace not in m but no single basis functional shows it; combine.
            // This cannot happen: the trace is the sum of basis images.
            return (cur, count);
        };
        // Normalize so phi(v) = 1, then M = ker(phi) (+) R v.
        let u = alg.elem_from_coords(val);
        let uinv = alg.inverse(&u).expect("unit value");
        let phi_n = ModuleHom::new_unchecked(
            cur.clone(),
            phi.tgt.clone(),
            alg.mul_matrix(&uinv).mul(&phi.mat),
        );
        let (ker, _) = phi_n.kernel();
        debug_assert_eq!(ker.vdim() + alg.dim(), cur.vdim());
        cur = ker;
        count += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldKind;
    use crate::poly::{Monomial, Poly};

    const F: FieldKind = FieldKind::Fp(101);

    fn algebra_a() -> LocalAlgebra {
        let x = Poly::monomial(1, Monomial::var(1, 0), F.one());
        LocalAlgebra::build_quotient(F, "A", &["x".into()], &[x.mul(&x)], 8).unwrap()
    }

    fn algebra_b() -> LocalAlgebra {
        let vars: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let v = |i: usize| Poly::monomial(3, Monomial::var(3, i), F.one());
        let rels = vec![
            v(0).mul(&v(0)),
            v(1).mul(&v(1)),
            v(1).mul(&v(2)),
            v(2).mul(&v(2)),
        ];
        LocalAlgebra::build_quotient(F, "B", &vars, &rels, 8).unwrap()
    }

    fn cyclic(alg: &LocalAlgebra, g: usize, label: &str) -> FinModule {
        let d = FreeMatrix::new(alg.clone(), 1, 1, vec![alg.generators()[g].clone()]);
        let (q, _) = d.to_hom().cokernel();
        FinModule::new_unchecked(alg.clone(), q.action_matrices().to_vec(), label)
    }

    fn residue_field(alg: &LocalAlgebra) -> FinModule {
        let r = free_module(alg, 1);
        let (k, _) = quotient(&r, &alg.mm_subspace(), "k");
        k
    }

    #[test]
    fn resolve_free_module() {
        let a = algebra_a();
        let r = free_module(&a, 2);
        let seg = resolve(&r, 3);
        assert_eq!(seg.ranks, vec![2, 0, 0, 0]);
    }

    #[test]
    fn resolve_k_over_dual_numbers() {
        let a = algebra_a();
        let k = residue_field(&a);
        let seg = resolve(&k, 4);
        assert_eq!(seg.ranks, vec![1, 1, 1, 1, 1]);
        // Omega k = k (vdim 1) at every level.
        for i in 1..=4 {
            assert_eq!(seg.syzygy(i).vdim(), 1);
        }
    }

    #[test]
    fn resolve_bx_is_periodic_rank_one() {
        let b = algebra_b();
        let m = cyclic(&b, 0, "B/(x)");
        let seg = resolve(&m, 4);
        assert_eq!(seg.ranks, vec![1, 1, 1, 1, 1]);
        for i in 1..=4 {
            assert_eq!(seg.syzygy(i).vdim(), 3);
        }
    }

    #[test]
    fn betti_of_k_over_b_doubles() {
        // Poincare series of k over B is 1/((1-t)(1-2t)): b_i = 2^{i+1} - 1.
        let b = algebra_b();
        let k = residue_field(&b);
        let seg = resolve(&k, 4);
        assert_eq!(seg.ranks, vec![1, 3, 7, 15, 31]);
    }

    #[test]
    fn dual_of_free_and_cyclic() {
        let b = algebra_b();
        let r = free_module(&b, 1);
        let (rd, _) = r_dual(&r);
        assert_eq!(rd.vdim(), 6);
        assert!(bidual_map(&r).is_iso());

        let m = cyclic(&b, 0, "B/(x)");
        let (md, _) = r_dual(&m);
        assert_eq!(md.vdim(), 3); // (0:x) = (x)
        assert!(is_reflexive(&m));

        let k = residue_field(&b);
        let (kd, _) = r_dual(&k);
        assert_eq!(kd.vdim(), 2); // socle has dim 2
                                  // k embeds into the socle of B, so k IS torsionless over B.
        assert!(is_torsionless(&k));
        assert!(!is_reflexive(&k));
    }

    #[test]
    fn left_approximation_cases() {
        let b = algebra_b();
        let r = free_module(&b, 1);
        let f = left_f_approximation(&r);
        assert!(f.is_iso());

        let m = cyclic(&b, 0, "B/(x)");
        let f = left_f_approximation(&m);
        assert_eq!(f.tgt.vdim(), 6); // into R^1
        assert!(f.is_injective());
        // torsionless <-> injective left approximation
        assert_eq!(is_torsionless(&m), f.is_injective());

        let k = residue_field(&b);
        let fk = left_f_approximation(&k);
        assert_eq!(is_torsionless(&k), fk.is_injective());
    }

    #[test]
    fn cosyzygies_are_stable_with_vanishing_ext() {
        let b = algebra_b();
        let r1 = free_module(&b, 1);
        for m in [
            cyclic(&b, 0, "B/(x)"),
            residue_field(&b),
            canonical_module(&b),
        ] {
            let chain = cosyzygy_chain(&m, 2);
            for c in &chain.mods {
                assert!(is_stable_module(c), "cosyzygy of {} not stable", m.label());
            }
            assert_eq!(ext_dim(&chain.mods[0], &r1, 1), 0);
            for (stable, ext1) in chain.certificates() {
                assert!(stable && ext1, "certificates for {}", m.label());
            }
        }
        // Omega^{-1} R = 0.
        assert!(cosyzygy(&r1).is_zero());
    }

    #[test]
    fn cosyzygy_of_bx_is_itself() {
        let b = algebra_b();
        let m = cyclic(&b, 0, "B/(x)");
        let c = cosyzygy(&m);
        assert_eq!(c.vdim(), 3);
        assert_eq!(c.nu(), 1);
    }

    #[test]
    fn transpose_cases() {
        let b = algebra_b();
        let r = free_module(&b, 2);
        assert!(transpose(&r).is_zero());

        let m = cyclic(&b, 0, "B/(x)");
        let t = transpose(&m);
        assert_eq!(t.vdim(), 3); // presentation [x] is self-transpose

        let a = algebra_a();
        let k = residue_field(&a);
        let tk = transpose(&k);
        assert_eq!(tk.vdim(), 1);
    }

    #[test]
    fn ext_vanishing_on_free_source() {
        let b = algebra_b();
        let r = free_module(&b, 1);
        let k = residue_field(&b);
        for i in 1..=3 {
            assert_eq!(ext_dim(&r, &k, i), 0);
        }
    }

    #[test]
    fn ext1_k_k_over_dual_numbers() {
        let a = algebra_a();
        let k = residue_field(&a);
        assert_eq!(ext_dim(&k, &k, 1), 1);
        let e = ext(&k, &k, 1);
        assert_eq!(e.dim, 1);
        // The cohomology carries an honest module structure.
        e.module.validate().unwrap();
        let b = algebra_b();
        let kb = residue_field(&b);
        let e2 = ext(&kb, &kb, 2);
        assert_eq!(e2.dim, ext_dim(&kb, &kb, 2));
        e2.module.validate().unwrap();
    }

    #[test]
    fn ext_bx_into_b_vanishes() {
        let b = algebra_b();
        let m = cyclic(&b, 0, "B/(x)");
        let r = free_module(&b, 1);
        for i in 1..=6 {
            assert_eq!(ext_dim(&m, &r, i), 0, "Ext^{i}(B/(x), B)");
        }
    }

    #[test]
    fn ext_dimension_shift() {
        let b = algebra_b();
        let k = residue_field(&b);
        let m = cyclic(&b, 0, "B/(x)");
        // dim Ext^{i+1}(M, N) = dim Ext^i(Omega M, N) for i >= 1.
        let om = syzygy(&k, 1);
        for i in 1..=2 {
            assert_eq!(ext_dim(&k, &m, i + 1), ext_dim(&om, &m, i));
        }
    }

    #[test]
    fn matlis_duality_basics() {
        let b = algebra_b();
        let k = residue_field(&b);
        let dk = matlis_dual(&k);
        assert_eq!(dk.vdim(), 1);
        let omega = canonical_module(&b);
        assert_eq!(omega.vdim(), 6);
        assert_eq!(omega.nu(), 2); // socle dim of B
        omega.validate().unwrap();
        // D(D(M)) = M as dimensions + module check
        let dd = matlis_dual(&matlis_dual(&k));
        assert!(dd.same_as(&k) || dd.vdim() == k.vdim());
    }

    #[test]
    fn trace_and_stability() {
        let b = algebra_b();
        let r = free_module(&b, 1);
        assert!(!is_stable_module(&r));
        assert_eq!(trace_ideal(&r).dim(), 6);

        let m = cyclic(&b, 0, "B/(x)");
        assert!(is_stable_module(&m));
        assert_eq!(trace_ideal(&m).dim(), 3); // (x)
    }

    #[test]
    fn strip_free_summands_works() {
        let b = algebra_b();
        let m = cyclic(&b, 0, "B/(x)");
        let r = free_module(&b, 1);
        let (s, _, _) = direct_sum(&[&m, &r]);
        let (stable, t) = strip_free_summands(&s);
        assert_eq!(t, 1);
        assert_eq!(stable.vdim(), 3);
        assert!(is_stable_module(&stable));
    }

    #[test]
    fn pd_detection() {
        let a = algebra_a();
        let r = free_module(&a, 3);
        assert_eq!(pd_within(&r, 4), Some(0));
        let k = residue_field(&a);
        assert_eq!(pd_within(&k, 4), None);
    }
}

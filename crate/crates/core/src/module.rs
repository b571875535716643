//! Finitely generated R-modules as vector spaces with action matrices, and
//! the diagram machinery on them: homomorphisms, Hom-spaces with their
//! R-module structure, kernels, cokernels, direct sums, pushouts, pullbacks,
//! and minimal free covers.

use std::fmt;
use std::sync::{Arc, Mutex, OnceLock, Weak};

use crate::algebra::{fresh_id, LocalAlgebra, RingElement};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Subspace};

pub(crate) enum Origin {
    Root,
    /// Created as the `level`-th syzygy of `parent` (1-based).
    Syzygy {
        parent: Weak<ModInner>,
        level: usize,
    },
}

#[derive(Default)]
pub(crate) struct ModCaches {
    pub mm: Option<Subspace>,
    pub resolution: Option<crate::homology::ResolutionData>,
    pub dual: Option<crate::homology::DualData>,
    pub cosyzygies: Option<crate::homology::CosyzygyData>,
    pub transpose: Option<FinModule>,
}

pub(crate) enum ActionRep {
    Dense(Vec<Matrix>),
    /// Free module of the given rank; the dense block-diagonal matrices are
    /// only materialized on demand.
    Free {
        rank: usize,
        cell: OnceLock<Vec<Matrix>>,
    },
}

pub(crate) struct ModInner {
    pub alg: LocalAlgebra,
    pub vdim: usize,
    pub action: ActionRep,
    pub label: String,
    pub id: u64,
    pub origin: Mutex<Origin>,
    pub caches: Mutex<ModCaches>,
}

/// A finitely generated module, cheaply clonable (shared interior + caches).
#[derive(Clone)]
pub struct FinModule(pub(crate) Arc<ModInner>);

impl fmt::Debug for FinModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinModule({}, vdim {})", self.0.label, self.0.vdim)
    }
}

impl FinModule {
    pub fn new(alg: LocalAlgebra, action: Vec<Matrix>, label: &str) -> Result<FinModule> {
        let m = FinModule::new_unchecked(alg, action, label);
        m.validate()?;
        Ok(m)
    }

    pub fn new_unchecked(alg: LocalAlgebra, action: Vec<Matrix>, label: &str) -> FinModule {
        let vdim = action.first().map(|a| a.rows()).unwrap_or(0);
        FinModule(Arc::new(ModInner {
            alg,
            vdim,
            action: ActionRep::Dense(action),
            label: label.to_string(),
            id: fresh_id(),
            origin: Mutex::new(Origin::Root),
            caches: Mutex::new(ModCaches::default()),
        }))
    }

    /// Check the action respects the structure constants and the unit.
    pub fn validate(&self) -> Result<()> {
        let alg = &self.0.alg;
        let d = alg.dim();
        let action = self.action_matrices();
        if action.len() != d {
            return Err(Error::ConstructionFailed(
                "action list length != algebra dim".into(),
            ));
        }
        for a in action {
            if a.rows() != self.0.vdim || a.cols() != self.0.vdim || a.field() != alg.field() {
                return Err(Error::ConstructionFailed(
                    "action matrix shape mismatch".into(),
                ));
            }
        }
        if action[alg.unit_index()] != Matrix::identity(alg.field(), self.0.vdim) {
            return Err(Error::ConstructionFailed(
                "unit does not act as identity".into(),
            ));
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = action[i].mul(&action[j]);
                let mut rhs = Matrix::zeros(alg.field(), self.0.vdim, self.0.vdim);
                for l in 0..d {
                    let c = alg.left_mul(i).get(l, j);
                    if !c.is_zero() {
                        rhs = rhs.add(&action[l].scale(&c));
                    }
                }
                if lhs != rhs {
                    return Err(Error::ConstructionFailed(format!(
                        "action violates structure constants at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &LocalAlgebra {
        &self.0.alg
    }

    pub fn vdim(&self) -> usize {
        self.0.vdim
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn is_zero(&self) -> bool {
        self.0.vdim == 0
    }

    /// The rank when this module is a lazily represented free module.
    pub fn free_rank(&self) -> Option<usize> {
        match &self.0.action {
            ActionRep::Free { rank, .. } => Some(*rank),
            ActionRep::Dense(_) => None,
        }
    }

    fn materialized(&self) -> &[Matrix] {
        match &self.0.action {
            ActionRep::Dense(v) => v,
            ActionRep::Free { rank, cell } => cell.get_or_init(|| {
                let alg = &self.0.alg;
                let d = alg.dim();
                (0..d)
                    .map(|i| {
                        let mut m = Matrix::zeros(alg.field(), rank * d, rank * d);
                        for g in 0..*rank {
                            m.set_block(g * d, g * d, alg.left_mul(i));
                        }
                        m
                    })
                    .collect()
            }),
        }
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.materialized()[i]
    }

    pub fn action_matrices(&self) -> &[Matrix] {
        self.materialized()
    }

    /// action(e_i) . m, using the block structure for free modules instead of
    /// materializing the dense action.
    pub fn apply_action(&self, i: usize, m: &Matrix) -> Matrix {
        match &self.0.action {
            ActionRep::Free { rank, .. } => {
                let alg = &self.0.alg;
                let d = alg.dim();
                assert_eq!(m.rows(), rank * d);
                let mut out = Matrix::zeros(alg.field(), m.rows(), m.cols());
                for g in 0..*rank {
                    let block = m.block(g * d, d, 0, m.cols());
                    out.set_block(g * d, 0, &alg.left_mul(i).mul(&block));
                }
                out
            }
            ActionRep::Dense(v) => v[i].mul(m),
        }
    }

    pub fn action_of(&self, r: &RingElement) -> Matrix {
        let alg = &self.0.alg;
        let mut m = Matrix::zeros(alg.field(), self.0.vdim, self.0.vdim);
        for i in 0..alg.dim() {
            let c = r.coords.get(i, 0);
            if !c.is_zero() {
                m = m.add(&self.action(i).scale(&c));
            }
        }
        m
    }

    pub fn same_as(&self, other: &FinModule) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if !self.0.alg.same_as(&other.0.alg) || self.0.vdim != other.0.vdim {
            return false;
        }
        match (&self.0.action, &other.0.action) {
            (ActionRep::Free { rank: a, .. }, ActionRep::Free { rank: b, .. }) => a == b,
            _ => self.action_matrices() == other.action_matrices(),
        }
    }

    /// The subspace mM (image of the maximal-ideal action).
    pub fn mm_subspace(&self) -> Subspace {
        if let Some(s) = &self.0.caches.lock().unwrap().mm {
            return s.clone();
        }
        let alg = &self.0.alg;
        let s = if alg.mm_indices().is_empty() || self.0.vdim == 0 {
            Subspace::zero(alg.field(), self.0.vdim)
        } else {
            let parts: Vec<&Matrix> = alg.mm_indices().iter().map(|&i| self.action(i)).collect();
            Subspace::span(&Matrix::hstack(&parts))
        };
        self.0.caches.lock().unwrap().mm = Some(s.clone());
        s
    }

    /// Minimal number of generators (Nakayama).
    pub fn nu(&self) -> usize {
        if let Some(r) = self.free_rank() {
            return r;
        }
        self.0.vdim - self.mm_subspace().dim()
    }

    /// Lexicographically first standard vectors lifting a basis of M/mM.
    pub fn min_generators(&self) -> Vec<Matrix> {
        let idx = self.mm_subspace().lex_complement_indices();
        idx.iter()
            .map(|&j| {
                let mut c = Matrix::zeros(self.0.alg.field(), self.0.vdim, 1);
                c.set(j, 0, self.0.alg.field().one());
                c
            })
            .collect()
    }

    pub(crate) fn set_origin_syzygy(&self, parent: &FinModule, level: usize) {
        *self.0.origin.lock().unwrap() = Origin::Syzygy {
            parent: Arc::downgrade(&parent.0),
            level,
        };
    }

    /// If this module was produced as a syzygy, return (parent, level).
    pub fn syzygy_origin(&self) -> Option<(FinModule, usize)> {
        match &*self.0.origin.lock().unwrap() {
            Origin::Root => None,
            Origin::Syzygy { parent, level } => parent.upgrade().map(|p| (FinModule(p), *level)),
        }
    }
}

/// The zero module.
pub fn zero_module(alg: &LocalAlgebra) -> FinModule {
    let action = (0..alg.dim())
        .map(|_| Matrix::zeros(alg.field(), 0, 0))
        .collect();
    FinModule::new_unchecked(alg.clone(), action, "0")
}

/// Free module R^n with the regular action, generator-major coordinates.
pub fn free_module(alg: &LocalAlgebra, n: usize) -> FinModule {
    FinModule(Arc::new(ModInner {
        alg: alg.clone(),
        vdim: n * alg.dim(),
        action: ActionRep::Free {
            rank: n,
            cell: OnceLock::new(),
        },
        label: format!("R^{n}"),
        id: fresh_id(),
        origin: Mutex::new(Origin::Root),
        caches: Mutex::new(ModCaches::default()),
    }))
}

/// Column of R^n picking out generator g.
pub fn free_generator(alg: &LocalAlgebra, n: usize, g: usize) -> Matrix {
    let d = alg.dim();
    let mut c = Matrix::zeros(alg.field(), n * d, 1);
    c.set(g * d + alg.unit_index(), 0, alg.field().one());
    c
}

/// An R-linear map between modules, stored as its k-matrix.
#[derive(Clone)]
pub struct ModuleHom {
    pub src: FinModule,
    pub tgt: FinModule,
    pub mat: Arc<Matrix>,
}

impl fmt::Debug for ModuleHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleHom({} -> {})", self.src.label(), self.tgt.label())
    }
}

impl ModuleHom {
    pub fn new(src: FinModule, tgt: FinModule, mat: Matrix) -> Result<ModuleHom> {
        let h = ModuleHom::new_unchecked(src, tgt, mat);
        h.validate()?;
        Ok(h)
    }

    pub fn new_unchecked(src: FinModule, tgt: FinModule, mat: Matrix) -> ModuleHom {
        assert_eq!(mat.rows(), tgt.vdim(), "hom matrix rows != target vdim");
        assert_eq!(mat.cols(), src.vdim(), "hom matrix cols != source vdim");
        ModuleHom {
            src,
            tgt,
            mat: Arc::new(mat),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.src.algebra().same_as(self.tgt.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        for g in self.src.algebra().hom_generators() {
            let a = self.mat.mul(&self.src.action_of(g));
            let b = self.tgt.action_of(g).mul(&self.mat);
            if a != b {
                return Err(Error::ConstructionFailed("map is not R-linear".into()));
            }
        }
        Ok(())
    }

    pub fn identity(m: &FinModule) -> ModuleHom {
        ModuleHom::new_unchecked(
            m.clone(),
            m.clone(),
            Matrix::identity(m.algebra().field(), m.vdim()),
        )
    }

    pub fn zero(src: &FinModule, tgt: &FinModule) -> ModuleHom {
        ModuleHom::new_unchecked(
            src.clone(),
            tgt.clone(),
            Matrix::zeros(src.algebra().field(), tgt.vdim(), src.vdim()),
        )
    }

    /// self o inner.
    pub fn compose(&self, inner: &ModuleHom) -> ModuleHom {
        debug_assert!(inner.tgt.same_as(&self.src), "composition mismatch");
        ModuleHom::new_unchecked(
            inner.src.clone(),
            self.tgt.clone(),
            self.mat.mul(&inner.mat),
        )
    }

    pub fn add(&self, other: &ModuleHom) -> ModuleHom {
        ModuleHom::new_unchecked(self.src.clone(), self.tgt.clone(), self.mat.add(&other.mat))
    }

    pub fn neg(&self) -> ModuleHom {
        ModuleHom::new_unchecked(self.src.clone(), self.tgt.clone(), self.mat.neg())
    }

    pub fn rank(&self) -> usize {
        self.mat.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.src.vdim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.tgt.vdim()
    }

    pub fn is_iso(&self) -> bool {
        self.src.vdim() == self.tgt.vdim() && self.rank() == self.src.vdim()
    }

    pub fn inverse(&self) -> Result<ModuleHom> {
        if !self.is_iso() {
            return Err(Error::ConstructionFailed("not an isomorphism".into()));
        }
        let id = Matrix::identity(self.src.algebra().field(), self.src.vdim());
        let inv = self.mat.solve(&id)?;
        Ok(ModuleHom::new_unchecked(
            self.tgt.clone(),
            self.src.clone(),
            inv,
        ))
    }

    pub fn kernel(&self) -> (FinModule, ModuleHom) {
        let (k, free_rows) = self.mat.kernel_basis_with_free();
        // The kernel basis has identity rows at the free coordinates, so the
        // coordinates of any kernel vector are read off by row selection.
        let alg = self.src.algebra().clone();
        let label = format!("ker({})", short(&self.src, &self.tgt));
        let action: Vec<Matrix> = (0..alg.dim())
            .map(|i| self.src.apply_action(i, &k).select_rows(&free_rows))
            .collect();
        let sub = FinModule::new_unchecked(alg, action, &label);
        let incl = ModuleHom::new_unchecked(sub.clone(), self.src.clone(), k);
        (sub, incl)
    }

    pub fn image(&self) -> (FinModule, ModuleHom) {
        let s = Subspace::span(&self.mat);
        submodule(
            &self.tgt,
            &s,
            &format!("im({})", short(&self.src, &self.tgt)),
        )
    }

    pub fn cokernel(&self) -> (FinModule, ModuleHom) {
        let s = Subspace::span(&self.mat);
        quotient(
            &self.tgt,
            &s,
            &format!("coker({})", short(&self.src, &self.tgt)),
        )
    }

    /// Factor self through an inclusion S -> tgt whose image contains im(self).
    pub fn corestrict(&self, incl: &ModuleHom) -> ModuleHom {
        let x = incl
            .mat
            .solve(&self.mat)
            .expect("corestrict: image not contained in the submodule");
        ModuleHom::new_unchecked(self.src.clone(), incl.src.clone(), x)
    }
}

fn short(a: &FinModule, b: &FinModule) -> String {
    format!("{}->{}", a.label(), b.label())
}

/// Submodule spanned by a subspace (must be action-stable), with inclusion.
pub fn submodule(m: &FinModule, s: &Subspace, label: &str) -> (FinModule, ModuleHom) {
    let alg = m.algebra().clone();
    let basis = s.basis().clone();
    let action = m
        .action_matrices()
        .iter()
        .map(|a| {
            basis
                .solve(&a.mul(&basis))
                .expect("submodule: subspace is not action-stable")
        })
        .collect();
    let sub = FinModule::new_unchecked(alg, action, label);
    let incl = ModuleHom::new_unchecked(sub.clone(), m.clone(), basis);
    (sub, incl)
}

/// Quotient by an action-stable subspace, with projection.
pub fn quotient(m: &FinModule, s: &Subspace, label: &str) -> (FinModule, ModuleHom) {
    let alg = m.algebra().clone();
    let field = alg.field();
    let comp = s.lex_complement_matrix();
    let t = Matrix::hstack(&[s.basis(), &comp]);
    // proj = last q rows of t^{-1}
    let id = Matrix::identity(field, m.vdim());
    let tinv = t.solve(&id).expect("change of basis must be invertible");
    let q = comp.cols();
    let proj = tinv.block(s.dim(), q, 0, m.vdim());
    let action = m
        .action_matrices()
        .iter()
        .map(|a| proj.mul(&a.mul(&comp)))
        .collect();
    let quo = FinModule::new_unchecked(alg, action, label);
    let pr = ModuleHom::new_unchecked(m.clone(), quo.clone(), proj);
    (quo, pr)
}

/// Direct sum with canonical injections and projections.
pub fn direct_sum(parts: &[&FinModule]) -> (FinModule, Vec<ModuleHom>, Vec<ModuleHom>) {
    assert!(!parts.is_empty());
    let alg = parts[0].algebra().clone();
    let field = alg.field();
    let total: usize = parts.iter().map(|m| m.vdim()).sum();
    let action = (0..alg.dim())
        .map(|i| {
            let mut m = Matrix::zeros(field, total, total);
            let mut off = 0;
            for p in parts {
                m.set_block(off, off, p.action(i));
                off += p.vdim();
            }
            m
        })
        .collect();
    let label = parts
        .iter()
        .map(|p| p.label().to_string())
        .collect::<Vec<_>>()
        .join("+");
    let sum = FinModule::new_unchecked(alg, action, &label);
    let mut injs = Vec::new();
    let mut projs = Vec::new();
    let mut off = 0;
    for p in parts {
        let mut inj = Matrix::zeros(field, total, p.vdim());
        inj.set_block(off, 0, &Matrix::identity(field, p.vdim()));
        injs.push(ModuleHom::new_unchecked((*p).clone(), sum.clone(), inj));
        let mut proj = Matrix::zeros(field, p.vdim(), total);
        proj.set_block(0, off, &Matrix::identity(field, p.vdim()));
        projs.push(ModuleHom::new_unchecked(sum.clone(), (*p).clone(), proj));
        off += p.vdim();
    }
    (sum, injs, projs)
}

/// Pushout of B <-f- A -g-> C: P = coker(A -> B (+) C), with the two legs.
pub fn pushout(f: &ModuleHom, g: &ModuleHom) -> (FinModule, ModuleHom, ModuleHom) {
    assert!(f.src.same_as(&g.src), "pushout requires a shared source");
    let (_, injs, _) = direct_sum(&[&f.tgt, &g.tgt]);
    let embed = injs[0].compose(f).add(&injs[1].compose(g).neg());
    let (p, pr) = embed.cokernel();
    let to_p_from_b = pr.compose(&injs[0]);
    let to_p_from_c = pr.compose(&injs[1]);
    (p, to_p_from_b, to_p_from_c)
}

/// Pullback of B -f-> D <-g- C: P = ker(B (+) C -> D), with the two legs.
pub fn pullback(f: &ModuleHom, g: &ModuleHom) -> (FinModule, ModuleHom, ModuleHom) {
    assert!(f.tgt.same_as(&g.tgt), "pullback requires a shared target");
    let (_, _, projs) = direct_sum(&[&f.src, &g.src]);
    let diff = f.compose(&projs[0]).add(&g.compose(&projs[1]).neg());
    let (p, incl) = diff.kernel();
    let to_b = projs[0].compose(&incl);
    let to_c = projs[1].compose(&incl);
    (p, to_b, to_c)
}

/// A basis of Hom_R(M, N) with the induced R-module structure.
pub struct HomSpace {
    pub src: FinModule,
    pub tgt: FinModule,
    pub basis: Vec<Arc<Matrix>>,
    /// (tgt.vdim * src.vdim) x dim matrix whose columns are vectorized basis maps.
    vecs: Matrix,
    pub module: FinModule,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_hom(&self, i: usize) -> ModuleHom {
        ModuleHom {
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            mat: self.basis[i].clone(),
        }
    }

    pub fn vectorize(mat: &Matrix) -> Matrix {
        let (r, c) = (mat.rows(), mat.cols());
        Matrix::from_fn(mat.field(), r * c, 1, |k, _| mat.get(k / c, k % c))
    }

    /// Coordinates of an R-linear map in this basis.
    pub fn coords_of(&self, mat: &Matrix) -> Result<Matrix> {
        self.vecs.solve(&Self::vectorize(mat))
    }

    pub fn from_coords(&self, coords: &Matrix) -> ModuleHom {
        let field = self.src.algebra().field();
        let mut m = Matrix::zeros(field, self.tgt.vdim(), self.src.vdim());
        for i in 0..self.dim() {
            let c = coords.get(i, 0);
            if !c.is_zero() {
                m = m.add(&self.basis[i].scale(&c));
            }
        }
        ModuleHom::new_unchecked(self.src.clone(), self.tgt.clone(), m)
    }
}

/// Solve the intertwining system for Hom_R(M, N).
pub fn hom_space(m: &FinModule, n: &FinModule) -> Result<HomSpace> {
    if !m.algebra().same_as(n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let alg = m.algebra().clone();
    let field = alg.field();
    let (sm, tn) = (m.vdim(), n.vdim());
    let unknowns = tn * sm;

    let gens = alg.hom_generators();
    let mut sys = Matrix::zeros(field, gens.len() * unknowns, unknowns);
    for (gi, g) in gens.iter().enumerate() {
        let a = m.action_of(g);
        let b = n.action_of(g);
        // (phi A - B phi)[r][c] = sum_k phi[r][k] A[k][c] - sum_k B[r][k] phi[k][c]
        for r in 0..tn {
            for c in 0..sm {
                let row = gi * unknowns + r * sm + c;
                for k in 0..sm {
                    let v = a.get(k, c);
                    if !v.is_zero() {
                        let col = r * sm + k;
                        let cur = sys.get(row, col);
                        sys.set(row, col, cur.add(&v));
                    }
                }
                for k in 0..tn {
                    let v = b.get(r, k);
                    if !v.is_zero() {
                        let col = k * sm + c;
                        let cur = sys.get(row, col);
                        sys.set(row, col, cur.sub(&v));
                    }
                }
            }
        }
    }
    let kernel = sys.kernel_basis();
    let dim = kernel.cols();
    let mut basis = Vec::with_capacity(dim);
    for j in 0..dim {
        let col = kernel.column(j);
        let mat = Matrix::from_fn(field, tn, sm, |r, c| col.get(r * sm + c, 0));
        basis.push(Arc::new(mat));
    }
    let vecs = kernel;

    // R-module structure: (g . phi) = action_N(g) o phi expressed in the basis.
    let mut action = Vec::with_capacity(alg.dim());
    for i in 0..alg.dim() {
        let bn = n.action(i);
        let mut cols = Vec::with_capacity(dim);
        for b in &basis {
            let img = bn.mul(b);
            let coords = vecs
                .solve(&HomSpace::vectorize(&img))
                .expect("Hom space is closed under the action");
            cols.push(coords);
        }
        action.push(Matrix::from_columns(field, dim, &cols));
    }
    let module = FinModule::new_unchecked(
        alg.clone(),
        action,
        &format!("Hom({},{})", m.label(), n.label()),
    );
    Ok(HomSpace {
        src: m.clone(),
        tgt: n.clone(),
        basis,
        vecs,
        module,
    })
}

/// Minimal free cover of M: a surjection pi: R^nu -> M with kernel the first
/// syzygy, packaged with the kernel inclusion.
pub struct Cover {
    pub free: FinModule,
    pub pi: ModuleHom,
    pub ker: FinModule,
    pub incl: ModuleHom,
}

pub fn minimal_cover(m: &FinModule) -> Cover {
    let (free, pi) = cover_surjection(m);
    let (ker, incl) = pi.kernel();
    Cover {
        free,
        pi,
        ker,
        incl,
    }
}

/// The cover surjection alone (no kernel computation).
pub fn cover_surjection(m: &FinModule) -> (FinModule, ModuleHom) {
    let alg = m.algebra().clone();
    let d = alg.dim();
    let gens = m.min_generators();
    let n = gens.len();
    debug_assert_eq!(n, m.nu());
    let free = free_module(&alg, n);
    let mut mat = Matrix::zeros(alg.field(), m.vdim(), n * d);
    for (g, v) in gens.iter().enumerate() {
        for i in 0..d {
            let col = m.action(i).mul(v);
            mat.set_block(0, g * d + i, &col);
        }
    }
    let pi = ModuleHom::new_unchecked(free, m.clone(), mat);
    debug_assert!(
        m.vdim() > 600 || pi.is_surjective(),
        "minimal cover must be surjective"
    );
    (pi.src.clone(), pi)
}

/// A map between free modules as a grid of ring elements (rows x cols),
/// representing R^cols -> R^rows.
#[derive(Clone)]
pub struct FreeMatrix {
    pub alg: LocalAlgebra,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<RingElement>,
}

impl fmt::Debug for FreeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeMatrix({}x{})", self.rows, self.cols)
    }
}

impl FreeMatrix {
    pub fn new(
        alg: LocalAlgebra,
        rows: usize,
        cols: usize,
        entries: Vec<RingElement>,
    ) -> FreeMatrix {
        assert_eq!(entries.len(), rows * cols);
        FreeMatrix {
            alg,
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(alg: &LocalAlgebra, rows: usize, cols: usize) -> FreeMatrix {
        let entries = (0..rows * cols).map(|_| alg.elem_zero()).collect();
        FreeMatrix {
            alg: alg.clone(),
            rows,
            cols,
            entries,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: RingElement) {
        self.entries[i * self.cols + j] = e;
    }

    pub fn transpose(&self) -> FreeMatrix {
        let mut t = FreeMatrix::zeros(&self.alg, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// All entries in the maximal ideal (the minimality condition for
    /// presentation differentials).
    pub fn is_minimal(&self) -> bool {
        self.entries.iter().all(|e| self.alg.is_in_mm(e))
    }

    /// Realize as a hom between given free modules (shapes must match).
    pub fn to_hom_between(&self, src: &FinModule, tgt: &FinModule) -> ModuleHom {
        let d = self.alg.dim();
        assert_eq!(src.vdim(), self.cols * d);
        assert_eq!(tgt.vdim(), self.rows * d);
        let mut mat = Matrix::zeros(self.alg.field(), self.rows * d, self.cols * d);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let block = self.alg.mul_matrix(self.get(i, j));
                mat.set_block(i * d, j * d, &block);
            }
        }
        ModuleHom::new_unchecked(src.clone(), tgt.clone(), mat)
    }

    pub fn to_hom(&self) -> ModuleHom {
        let src = free_module(&self.alg, self.cols);
        let tgt = free_module(&self.alg, self.rows);
        self.to_hom_between(&src, &tgt)
    }

    /// Read back a FreeMatrix from a hom between free modules of the given ranks.
    pub fn from_hom(h: &ModuleHom, tgt_rank: usize, src_rank: usize) -> FreeMatrix {
        let alg = h.src.algebra().clone();
        let d = alg.dim();
        assert_eq!(h.src.vdim(), src_rank * d);
        assert_eq!(h.tgt.vdim(), tgt_rank * d);
        let mut fm = FreeMatrix::zeros(&alg, tgt_rank, src_rank);
        for j in 0..src_rank {
            let col = h.mat.column(j * d + alg.unit_index());
            for i in 0..tgt_rank {
                let coords = col.block(i * d, d, 0, 1);
                fm.set(i, j, alg.elem_from_coords(coords));
            }
        }
        fm
    }
}

/// Module presented by a free matrix: R^rows / im(d).
pub fn coker_of_free_matrix(d: &FreeMatrix) -> FinModule {
    let h = d.to_hom();
    let (q, _) = h.cokernel();
    q
}

/// Extend prescribed generator images to an R-linear map out of a free module.
pub fn rlinear_from_generators(
    src_free: &FinModule,
    tgt: &FinModule,
    gen_images: &[Matrix],
) -> ModuleHom {
    let alg = tgt.algebra().clone();
    let d = alg.dim();
    let rank = src_free.vdim() / d.max(1);
    assert_eq!(gen_images.len(), rank);
    let mut mat = Matrix::zeros(alg.field(), tgt.vdim(), src_free.vdim());
    for (g, v) in gen_images.iter().enumerate() {
        for i in 0..d {
            let col = tgt.action(i).mul(v);
            mat.set_block(0, g * d + i, &col);
        }
    }
    ModuleHom::new_unchecked(src_free.clone(), tgt.clone(), mat)
}

/// Lift c: R^a -> Q along a surjection pi: B -> Q, generator by generator.
pub fn lift_along_surjection(pi: &ModuleHom, c: &ModuleHom) -> Result<ModuleHom> {
    let alg = c.src.algebra().clone();
    let d = alg.dim();
    let rank = c.src.vdim() / d.max(1);
    let mut images = Vec::with_capacity(rank);
    for g in 0..rank {
        let genv = free_generator(&alg, rank, g);
        let target = c.mat.mul(&genv);
        images.push(pi.mat.solve(&target)?);
    }
    Ok(rlinear_from_generators(&c.src, &pi.src, &images))
}

/// The map on cokernels induced by psi: X -> Y over projections q1: X -> Q1,
/// q2: Y -> Q2 with psi(ker q1) contained in ker q2.
pub fn induced_on_cokernels(q1: &ModuleHom, psi: &ModuleHom, q2: &ModuleHom) -> ModuleHom {
    let field = psi.src.algebra().field();
    let sect = q1
        .mat
        .solve(&Matrix::identity(field, q1.tgt.vdim()))
        .expect("surjection");
    let mat = q2.mat.mul(&psi.mat).mul(&sect);
    let out = ModuleHom::new_unchecked(q1.tgt.clone(), q2.tgt.clone(), mat);
    debug_assert!(
        out.compose(q1).mat == q2.compose(psi).mat,
        "induced map does not commute (kernel not respected)"
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldKind;
    use crate::poly::{Monomial, Poly};

    const F: FieldKind = FieldKind::Fp(101);

    pub fn algebra_a() -> LocalAlgebra {
        let x = Poly::monomial(1, Monomial::var(1, 0), F.one());
        LocalAlgebra::build_quotient(F, "A", &["x".into()], &[x.mul(&x)], 8).unwrap()
    }

    pub fn algebra_b() -> LocalAlgebra {
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

    pub fn cyclic_quotient(alg: &LocalAlgebra, gen_idx: usize, label: &str) -> FinModule {
        // R/(g) as the cokernel of the 1x1 free matrix [g].
        let g = alg.generators()[gen_idx].clone();
        let d = FreeMatrix::new(alg.clone(), 1, 1, vec![g]);
        let (q, _) = d.to_hom().cokernel();
        FinModule::new_unchecked(alg.clone(), q.action_matrices().to_vec(), label)
    }

    #[test]
    fn free_module_basics() {
        let a = algebra_a();
        let f0 = free_module(&a, 0);
        assert!(f0.is_zero());
        let f1 = free_module(&a, 1);
        assert_eq!(f1.vdim(), 2);
        assert_eq!(f1.nu(), 1);
        let b = algebra_b();
        let f2 = free_module(&b, 2);
        assert_eq!(f2.vdim(), 12);
        assert_eq!(f2.nu(), 2);
        f2.validate().unwrap();
    }

    #[test]
    fn cover_of_residue_field() {
        let a = algebra_a();
        // k = R/m over k[x]/(x^2).
        let k = cyclic_quotient(&a, 0, "k");
        assert_eq!(k.vdim(), 1);
        let c = minimal_cover(&k);
        assert_eq!(c.free.vdim(), 2);
        assert!(c.pi.is_surjective());
        assert_eq!(c.ker.vdim(), 1); // Omega k = (x) = k
                                     // Induced map F/mF -> M/mM is an isomorphism (minimality).
        assert_eq!(c.free.nu(), k.nu());
    }

    #[test]
    fn cover_of_free_is_identity_like() {
        let a = algebra_a();
        let r = free_module(&a, 1);
        let c = minimal_cover(&r);
        assert_eq!(c.free.vdim(), r.vdim());
        assert!(c.pi.is_iso());
        assert!(c.ker.is_zero());
    }

    #[test]
    fn coker_of_x_over_b() {
        let b = algebra_b();
        let m = cyclic_quotient(&b, 0, "B/(x)");
        assert_eq!(m.vdim(), 3); // 6 - dim xB = 6 - 3
        assert_eq!(m.nu(), 1);
        m.validate().unwrap();
    }

    #[test]
    fn coker_edge_cases() {
        let a = algebra_a();
        // d = identity 1x1: coker = 0.
        let d = FreeMatrix::new(a.clone(), 1, 1, vec![a.elem_unit()]);
        assert!(coker_of_free_matrix(&d).is_zero());
        // d = empty 1x0: coker = R.
        let d = FreeMatrix::zeros(&a, 1, 0);
        let q = coker_of_free_matrix(&d);
        assert_eq!(q.vdim(), 2);
    }

    #[test]
    fn hom_free_source_is_target() {
        let b = algebra_b();
        let r = free_module(&b, 1);
        let m = cyclic_quotient(&b, 0, "B/(x)");
        let h = hom_space(&r, &m).unwrap();
        assert_eq!(h.dim(), m.vdim()); // Hom(R, M) = M
        h.module.validate().unwrap();
    }

    #[test]
    fn hom_bx_into_b_is_annihilator_of_x() {
        let b = algebra_b();
        let m = cyclic_quotient(&b, 0, "B/(x)");
        let r = free_module(&b, 1);
        let h = hom_space(&m, &r).unwrap();
        // Hom(B/(x), B) = (0 : x) = (x), dimension 3.
        assert_eq!(h.dim(), 3);
        // Cross-check: (0:x) = (x) as subspaces of B.
        let x = &b.generators()[0];
        let lx = b.mul_matrix(x);
        let ann = Subspace::span(&lx.kernel_basis());
        let ideal = Subspace::span(&lx);
        assert!(ann.same_as(&ideal));
    }

    #[test]
    fn hom_simple_endomorphisms() {
        let a = algebra_a();
        let k = cyclic_quotient(&a, 0, "k");
        let h = hom_space(&k, &k).unwrap();
        assert_eq!(h.dim(), 1);
    }

    #[test]
    fn direct_sum_nu_additive() {
        let b = algebra_b();
        let m = cyclic_quotient(&b, 0, "B/(x)");
        let r = free_module(&b, 1);
        let (s, injs, projs) = direct_sum(&[&m, &r]);
        assert_eq!(s.vdim(), m.vdim() + r.vdim());
        assert_eq!(s.nu(), m.nu() + r.nu());
        // proj_i o inj_i = id
        let p = projs[0].compose(&injs[0]);
        assert!(p.is_iso());
    }

    #[test]
    fn kernel_cokernel_of_identity() {
        let b = algebra_b();
        let m = cyclic_quotient(&b, 0, "B/(x)");
        let id = ModuleHom::identity(&m);
        let (k, _) = id.kernel();
        assert!(k.is_zero());
        let (c, _) = id.cokernel();
        assert!(c.is_zero());
    }

    #[test]
    fn pushout_pullback_trivial_cases() {
        let a = algebra_a();
        let r = free_module(&a, 1);
        let k = cyclic_quotient(&a, 0, "k");
        let f = minimal_cover(&k).pi; // R -> k
                                      // pushout of f along identity gives k again.
        let (p, _, _) = pushout(&f, &ModuleHom::identity(&r));
        assert_eq!(p.vdim(), k.vdim());
        // pullback of f along identity gives R.
        let (q, _, _) = pullback(&f, &ModuleHom::identity(&k));
        assert_eq!(q.vdim(), r.vdim());
    }

    #[test]
    fn pushout_dimension_count() {
        // pushout of iota: Omega k -> R with itself over k[x]/(x^2): vdim 3.
        let a = algebra_a();
        let k = cyclic_quotient(&a, 0, "k");
        let c = minimal_cover(&k);
        let iota = c.incl; // Omega k = (x) -> R
        let (p, _, _) = pushout(&iota, &iota);
        assert_eq!(p.vdim(), 3); // 2*2 - 1
    }

    #[test]
    fn quotient_then_submodule_roundtrip() {
        let b = algebra_b();
        let r = free_module(&b, 1);
        let x = &b.generators()[0];
        let im = Subspace::span(&r.action_of(x));
        let (q, pr) = quotient(&r, &im, "B/(x)");
        assert_eq!(q.vdim(), 3);
        assert!(pr.is_surjective());
        let (s, incl) = submodule(&r, &im, "(x)");
        assert_eq!(s.vdim(), 3);
        assert!(incl.is_injective());
        s.validate().unwrap();
        q.validate().unwrap();
    }
}

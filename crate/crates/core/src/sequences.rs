//! Short exact sequences and the diagram constructions on them: verification,
//! splitting, the syzygy step (horseshoe) and the cosyzygy step (extending
//! left approximations along an injection).

use crate::error::{Error, Result};
use crate::homology::left_f_approximation;
use crate::matrix::Matrix;
use crate::module::{direct_sum, free_generator, hom_space, minimal_cover, FinModule, ModuleHom};

/// 0 -> sub -> mid -> quo -> 0.
#[derive(Clone)]
pub struct Ses {
    pub incl: ModuleHom,
    pub proj: ModuleHom,
}

impl Ses {
    pub fn sub(&self) -> &FinModule {
        &self.incl.src
    }

    pub fn mid(&self) -> &FinModule {
        &self.incl.tgt
    }

    pub fn quo(&self) -> &FinModule {
        &self.proj.tgt
    }

    pub fn new(incl: ModuleHom, proj: ModuleHom) -> Result<Ses> {
        let s = Ses { incl, proj };
        s.verify()?;
        Ok(s)
    }

    pub fn verify(&self) -> Result<()> {
        if !self.incl.tgt.same_as(&self.proj.src) {
            return Err(Error::CompositionMismatch);
        }
        if !self.proj.compose(&self.incl).mat.is_zero() {
            return Err(Error::ConstructionFailed("ses: composite nonzero".into()));
        }
        if !self.incl.is_injective() {
            return Err(Error::ConstructionFailed(
                "ses: not injective at sub".into(),
            ));
        }
        if !self.proj.is_surjective() {
            return Err(Error::ConstructionFailed(
                "ses: not surjective at quo".into(),
            ));
        }
        if self.incl.rank() + self.proj.rank() != self.mid().vdim() {
            return Err(Error::ConstructionFailed("ses: not exact at middle".into()));
        }
        Ok(())
    }

    /// 0 -> ker f -> src f -> tgt f -> 0 for surjective f.
    pub fn from_surjection(f: &ModuleHom) -> Result<Ses> {
        if !f.is_surjective() {
            return Err(Error::ConstructionFailed("not surjective".into()));
        }
        let (_, incl) = f.kernel();
        Ses::new(incl, f.clone())
    }

    /// 0 -> src f -> tgt f -> coker f -> 0 for injective f.
    pub fn from_injection(f: &ModuleHom) -> Result<Ses> {
        if !f.is_injective() {
            return Err(Error::ConstructionFailed("not injective".into()));
        }
        let (_, proj) = f.cokernel();
        Ses::new(f.clone(), proj)
    }

    /// The split sequence 0 -> a -> a (+) b -> b -> 0.
    pub fn split(a: &FinModule, b: &FinModule) -> Ses {
        let (_, injs, projs) = direct_sum(&[a, b]);
        Ses {
            incl: injs[0].clone(),
            proj: projs[1].clone(),
        }
    }
}

/// Horseshoe step: from 0 -> A -> B -> C -> 0 produce
/// 0 -> Omega A -> K -> Omega C -> 0 together with the surjection
/// (F_A (+) F_C) -> B whose kernel is K (K = Omega B (+) free abstractly).
pub struct SyzygyStep {
    pub ses: Ses,
    /// The covering surjection F_A (+) F_C -> B.
    pub cover: ModuleHom,
    /// The inclusion of the new middle (= ker cover) into F_A (+) F_C.
    pub kernel_incl: ModuleHom,
    /// Chain inclusion F_A -> F_A (+) F_C and projection to F_C.
    pub inj: ModuleHom,
    pub proj: ModuleHom,
}

pub fn syzygy_ses(s: &Ses) -> Result<SyzygyStep> {
    let a = s.sub();
    let c = s.quo();
    let b = s.mid();
    let alg = a.algebra().clone();
    let ca = minimal_cover(a);
    let cc = minimal_cover(c);
    let (_, injs, projs) = direct_sum(&[&ca.free, &cc.free]);

    // Lift pi_C through proj: s_map(gen_g) = some preimage of pi_C(gen_g).
    let rank_c = cc.free.vdim() / alg.dim().max(1);
    let d = alg.dim();
    let mut cols = Vec::new();
    for g in 0..rank_c {
        let genv = free_generator(&alg, rank_c, g);
        let target = cc.pi.mat.mul(&genv);
        let pre = s.proj.mat.solve(&target)?;
        cols.push(pre);
    }
    // R-linear extension: column (g, e_i) = action_B(e_i) . pre_g.
    let mut smat = Matrix::zeros(alg.field(), b.vdim(), rank_c * d);
    for (g, pre) in cols.iter().enumerate() {
        for i in 0..d {
            let col = b.action(i).mul(pre);
            smat.set_block(0, g * d + i, &col);
        }
    }
    let s_map = ModuleHom::new_unchecked(cc.free.clone(), b.clone(), smat);

    let phi = s
        .incl
        .compose(&ca.pi)
        .compose(&projs[0])
        .add(&s_map.compose(&projs[1]));
    debug_assert!(phi.is_surjective());
    let (_k, k_incl) = phi.kernel();

    // Omega A -> K: x |-> (incl_A(x), 0).
    let oa_in_fb = injs[0].compose(&ca.incl);
    let oa_to_k = oa_in_fb.corestrict(&k_incl);
    // K -> Omega C: (k1, k2) |-> k2, landing in ker pi_C.
    let to_fc = projs[1].compose(&k_incl);
    let to_oc = to_fc.corestrict(&cc.incl);
    let ses = Ses::new(oa_to_k, to_oc)?;
    Ok(SyzygyStep {
        ses,
        cover: phi,
        kernel_incl: k_incl,
        inj: injs[0].clone(),
        proj: projs[1].clone(),
    })
}

/// Cosyzygy step: from 0 -> A -> B -> C -> 0 (with Ext^1(C, R) = 0, e.g. all
/// terms G-projective) produce 0 -> Omega^{-1}A -> B' -> Omega^{-1}C -> 0 by
/// extending the minimal left approximations.
pub struct CosyzygyStep {
    pub ses: Ses,
    /// beta: B -> R^{a+c}, a left F-approximation of B.
    pub beta: ModuleHom,
}

pub fn cosyzygy_ses(s: &Ses) -> Result<CosyzygyStep> {
    let a = s.sub();
    let b = s.mid();
    let c = s.quo();
    let theta_a = left_f_approximation(a);
    let theta_c = left_f_approximation(c);
    let fa = theta_a.tgt.clone();
    let fc = theta_c.tgt.clone();

    // Extend theta_A over the inclusion: u: B -> F_a with u o incl = theta_A.
    let hom_b_fa = hom_space(b, &fa)?;
    let field = b.algebra().field();
    let cols: Vec<Matrix> = hom_b_fa
        .basis
        .iter()
        .map(|h| crate::module::HomSpace::vectorize(&h.mul(&s.incl.mat)))
        .collect();
    if hom_b_fa.dim() == 0 && !(a.is_zero() || fa.is_zero()) && !theta_a.mat.is_zero() {
        return Err(Error::ConstructionFailed(
            "cannot extend left approximation".into(),
        ));
    }
    let u = if fa.vdim() == 0 {
        ModuleHom::zero(b, &fa)
    } else {
        let big = Matrix::from_columns(field, fa.vdim() * a.vdim().max(1), &cols);
        // Guard the degenerate A = 0 case: empty system, u = 0.
        if a.vdim() == 0 {
            ModuleHom::zero(b, &fa)
        } else {
            let rhs = crate::module::HomSpace::vectorize(&theta_a.mat);
            let coeffs = big.solve(&rhs).map_err(|_| {
                Error::ConstructionFailed(
                    "left approximation does not extend (Ext^1(C,R) != 0?)".into(),
                )
            })?;
            hom_b_fa.from_coords(&coeffs)
        }
    };

    let (_, injs, projs) = direct_sum(&[&fa, &fc]);
    let beta = injs[0]
        .compose(&u)
        .add(&injs[1].compose(&theta_c.compose(&s.proj)));
    if !beta.is_injective() {
        return Err(Error::ConstructionFailed(
            "cosyzygy step: beta not injective".into(),
        ));
    }
    let (_, pa) = theta_a.cokernel();
    let (_, pc) = theta_c.cokernel();
    let (_, pb) = beta.cokernel();

    // Induced maps on cokernels: a section of each projection transports them.
    let ja = section(&pa);
    let jb = section(&pb);
    // A' -> B': p_B o inj_a o (section of p_A).
    let a_to_b = ModuleHom::new_unchecked(
        pa.tgt.clone(),
        pb.tgt.clone(),
        pb.mat.mul(&injs[0].mat).mul(&ja),
    );
    // B' -> C': p_C o proj_fc o (section of p_B).
    let b_to_c = ModuleHom::new_unchecked(
        pb.tgt.clone(),
        pc.tgt.clone(),
        pc.mat.mul(&projs[1].mat).mul(&jb),
    );
    let ses = Ses::new(a_to_b, b_to_c)?;
    Ok(CosyzygyStep { ses, beta })
}

/// Any right inverse of a surjective k-matrix (k-linear section).
fn section(p: &ModuleHom) -> Matrix {
    let id = Matrix::identity(p.src.algebra().field(), p.tgt.vdim());
    p.mat.solve(&id).expect("surjection has a section")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldKind;
    use crate::homology::{cosyzygy, is_stable_module, syzygy};
    use crate::module::{free_module, FreeMatrix};
    use crate::poly::{Monomial, Poly};
    use crate::LocalAlgebra;

    const F: FieldKind = FieldKind::Fp(101);

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

    fn x_ses(alg: &LocalAlgebra) -> Ses {
        // 0 -> (x) -> B -> B/(x) -> 0
        let r = free_module(alg, 1);
        let x = &alg.generators()[0];
        let lx = ModuleHom::new_unchecked(r.clone(), r.clone(), r.action_of(x));
        let (_, incl) = lx.image();
        Ses::from_injection(&incl).unwrap()
    }

    #[test]
    fn ses_verification() {
        let b = algebra_b();
        let s = x_ses(&b);
        assert_eq!(s.sub().vdim(), 3);
        assert_eq!(s.quo().vdim(), 3);
        s.verify().unwrap();

        let m = cyclic(&b, 0, "B/(x)");
        let split = Ses::split(&m, &m);
        split.verify().unwrap();
    }

    #[test]
    fn syzygy_step_matches_syzygies() {
        let b = algebra_b();
        let s = x_ses(&b);
        let step = syzygy_ses(&s).unwrap();
        step.ses.verify().unwrap();
        // Ends are the honest syzygies.
        assert_eq!(step.ses.sub().vdim(), syzygy(s.sub(), 1).vdim());
        assert_eq!(step.ses.quo().vdim(), syzygy(s.quo(), 1).vdim());
    }

    #[test]
    fn cosyzygy_step_matches_cosyzygies() {
        let b = algebra_b();
        let s = x_ses(&b);
        let step = cosyzygy_ses(&s).unwrap();
        step.ses.verify().unwrap();
        assert_eq!(step.ses.sub().vdim(), cosyzygy(s.sub()).vdim());
        assert_eq!(step.ses.quo().vdim(), cosyzygy(s.quo()).vdim());
        // Middles of cosyzygy steps stay stable up to the free drift; the ends
        // are honest cosyzygies, hence stable.
        assert!(is_stable_module(step.ses.sub()));
        assert!(is_stable_module(step.ses.quo()));
    }
}

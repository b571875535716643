//! The full property registry on both builtin corpora, plus the cross-module
//! invariants that tie resolutions, Ext, duals and the stable layer together.

use totref_core::field::FieldKind;
use totref_core::gtheory::{gcheck, iso_test, IsoResult, DEFAULT_ISO_TRIALS};
use totref_core::homology::{
    ext_dim, matlis_dual, resolve, strip_free_summands, syzygy, transpose,
};
use totref_core::module::{direct_sum, free_module};
use totref_core::verify::{
    builtin_algebra, generate_corpus, run_property, CorpusParams, ALL_PROPS,
};

const F: FieldKind = FieldKind::Fp(101);

fn small_params(seed: u64) -> CorpusParams {
    CorpusParams {
        seed,
        size: 6,
        closure_depth: 1,
        vdim_cap: 20,
        bound: 4,
    }
}

#[test]
fn all_properties_pass_on_a() {
    let a = builtin_algebra("A", F).unwrap();
    let corpus = generate_corpus(&a, small_params(1));
    for id in ALL_PROPS {
        let rep = run_property(&corpus, id, None);
        assert!(rep.passed, "{} failed: {:?}", rep.id, rep.failures);
    }
}

#[test]
fn all_properties_pass_on_b() {
    let b = builtin_algebra("B", F).unwrap();
    let corpus = generate_corpus(&b, small_params(1));
    for id in ALL_PROPS {
        let rep = run_property(&corpus, id, None);
        assert!(rep.passed, "{} failed: {:?}", rep.id, rep.failures);
    }
}

#[test]
fn empty_corpus_is_vacuous() {
    let b = builtin_algebra("B", F).unwrap();
    let corpus = totref_core::verify::Corpus {
        algebra: b.clone(),
        modules: Vec::new(),
        tests: totref_core::gtheory::TestSet::default(),
        params: small_params(1),
    };
    for id in ALL_PROPS {
        let rep = run_property(&corpus, id, None);
        assert!(rep.passed, "{} not vacuous", rep.id);
    }
}

#[test]
fn ext_dims_additive_and_shift_stable() {
    let b = builtin_algebra("B", F).unwrap();
    let corpus = generate_corpus(&b, small_params(2));
    let r1 = free_module(&b, 1);
    let mods: Vec<_> = corpus
        .modules
        .iter()
        .take(4)
        .map(|c| c.module.clone())
        .collect();
    for m in &mods {
        for n in &mods {
            // additivity in the first argument
            let (s, _, _) = direct_sum(&[m, n]);
            for i in 1..=2 {
                assert_eq!(
                    ext_dim(&s, &r1, i),
                    ext_dim(m, &r1, i) + ext_dim(n, &r1, i),
                    "additivity at i={i}"
                );
            }
            // dimension shifting
            let om = syzygy(m, 1);
            for i in 1..=2 {
                assert_eq!(ext_dim(m, n, i + 1), ext_dim(&om, n, i), "shift at i={i}");
            }
        }
    }
}

#[test]
fn resolution_length_independence() {
    let b = builtin_algebra("B", F).unwrap();
    let corpus = generate_corpus(&b, small_params(3));
    let r1 = free_module(&b, 1);
    for c in corpus.modules.iter().take(4) {
        let m = &c.module;
        // ext computed after resolving deeper must agree (shared cache grows).
        let e1 = ext_dim(m, &r1, 2);
        let _ = resolve(m, 6);
        let e2 = ext_dim(m, &r1, 2);
        assert_eq!(e1, e2);
    }
}

#[test]
fn double_transpose_recovers_up_to_free_summands() {
    let b = builtin_algebra("B", F).unwrap();
    let corpus = generate_corpus(&b, small_params(4));
    for (i, c) in corpus.modules.iter().take(6).enumerate() {
        let m = &c.module;
        let tt = transpose(&transpose(m));
        let (sm, _) = strip_free_summands(m);
        let (st, _) = strip_free_summands(&tt);
        assert_eq!(sm.vdim(), st.vdim(), "module {}", m.label());
        if !sm.is_zero() {
            let r = iso_test(&sm, &st, 40 + i as u64, DEFAULT_ISO_TRIALS).unwrap();
            assert!(
                matches!(r, IsoResult::CertifiedIso(_)),
                "module {}",
                m.label()
            );
        }
    }
}

#[test]
fn matlis_duality_is_involutive_and_detects_gorenstein() {
    let a = builtin_algebra("A", F).unwrap();
    let b = builtin_algebra("B", F).unwrap();
    // A is Gorenstein: omega is free; B is not.
    let omega_a = totref_core::homology::canonical_module(&a);
    let ra = free_module(&a, 1);
    assert!(matches!(
        iso_test(&omega_a, &ra, 7, DEFAULT_ISO_TRIALS).unwrap(),
        IsoResult::CertifiedIso(_)
    ));
    let omega_b = totref_core::homology::canonical_module(&b);
    let rb = free_module(&b, 1);
    assert!(!matches!(
        iso_test(&omega_b, &rb, 7, DEFAULT_ISO_TRIALS).unwrap(),
        IsoResult::CertifiedIso(_)
    ));
    // D(D(M)) = M on a sample.
    let corpus = generate_corpus(&b, small_params(5));
    for (i, c) in corpus.modules.iter().take(4).enumerate() {
        let m = &c.module;
        let dd = matlis_dual(&matlis_dual(m));
        let r = iso_test(m, &dd, 60 + i as u64, DEFAULT_ISO_TRIALS).unwrap();
        assert!(
            matches!(r, IsoResult::CertifiedIso(_)),
            "module {}",
            m.label()
        );
    }
}

#[test]
fn syzygy_additivity_over_direct_sums() {
    let b = builtin_algebra("B", F).unwrap();
    let corpus = generate_corpus(&b, small_params(6));
    let mods: Vec<_> = corpus
        .modules
        .iter()
        .take(3)
        .map(|c| c.module.clone())
        .collect();
    for (i, m) in mods.iter().enumerate() {
        for n in &mods {
            let (s, _, _) = direct_sum(&[m, n]);
            let os = syzygy(&s, 1);
            let (sum_o, _, _) = direct_sum(&[&syzygy(m, 1), &syzygy(n, 1)]);
            assert_eq!(os.vdim(), sum_o.vdim());
            if !os.is_zero() {
                let r = iso_test(&os, &sum_o, 80 + i as u64, DEFAULT_ISO_TRIALS).unwrap();
                assert!(matches!(r, IsoResult::CertifiedIso(_)));
            }
        }
    }
}

#[test]
fn gcheck_closure_on_sums_of_certified() {
    let b = builtin_algebra("B", F).unwrap();
    let corpus = generate_corpus(&b, small_params(7));
    let certified: Vec<_> = corpus
        .tests
        .entries
        .iter()
        .map(|t| t.module.clone())
        .collect();
    if certified.len() >= 2 {
        let (s, _, _) = direct_sum(&[&certified[0], &certified[1]]);
        assert!(gcheck(&s, 4, 9).is_certified());
    }
}

#[test]
fn rationals_cross_check() {
    // The same flagship computations over QQ instead of GF(101).
    let b = builtin_algebra("B", FieldKind::Rat).unwrap();
    assert_eq!(b.dim(), 6);
    assert_eq!(b.socle().dim(), 2);
    let r = free_module(&b, 1);
    let x = &b.generators()[0];
    let lx = totref_core::module::ModuleHom::new_unchecked(r.clone(), r.clone(), r.action_of(x));
    let (m, _) = lx.cokernel();
    assert_eq!(m.vdim(), 3);
    let g = gcheck(&m, 4, 1);
    assert!(g.is_certified(), "{}", g.reason);
    assert_eq!(g.cert.unwrap().period, (0, 1));
    let k = {
        let (k, _) = totref_core::module::quotient(&r, &b.mm_subspace(), "k");
        k
    };
    for i in 1..=2 {
        assert!(ext_dim(&k, &r, i) > 0);
    }
}

#[test]
fn gdim_additive_on_sums_of_certified() {
    // Over Artinian rings finite G-dimension forces G-dimension zero, so
    // additivity gdim(M (+) N) = max(gdim M, gdim N) is checked on pairs of
    // certified modules (both sides zero) and on mixed pairs (both infinite).
    use totref_core::gtheory::{gdim, GdimResult};
    let b = builtin_algebra("B", F).unwrap();
    let corpus = generate_corpus(&b, small_params(8));
    let certified: Vec<_> = corpus.tests.entries.iter().map(|t| t.module.clone()).collect();
    for m in certified.iter().take(2) {
        for n in certified.iter().take(2) {
            let (s, _, _) = direct_sum(&[m, n]);
            match gdim(&s, 4, 3) {
                GdimResult::Finite { n: g, .. } => assert_eq!(g, 0),
                other => panic!("sum of certified has gdim {other:?}"),
            }
        }
    }
}

//! Module-level invariants on randomised inputs (fixed seeds throughout):
//! Yoneda dimensions, exactness of minimal resolutions, right-exactness of
//! the tensor product with its Tor correction, cover minimality,
//! independence of homotopy Hom from the chosen resolution, restriction of
//! projectives along finite epimorphisms, and idempotency of the kernel
//! ideal in the surjective homological case.

mod common;

use common::{random_algebra, random_module, rng, small_caps};
use qha_core::corpus;
use qha_core::homology::{build_kf_resolution, homotopy_hom, k_complex, tor, TwoTermComplex};
use qha_core::localisation::{classify, quotient_and_corner, realise_sigma, universal_localise};
use qha_core::matrix::{span_basis, span_contains};
use qha_core::rep::{
    direct_sum, hom_space, kernel_cokernel, lift_through_surjection, projective,
    projective_cover, projective_decomposition, projective_sum, quotient_representation,
    radical_subspaces, resolve, subrepresentation, tensor, tensor_induced_left, ModuleMap,
};
use qha_core::{LinComb, PathWord, Scalar};
use rand::Rng;

#[test]
fn yoneda_dimensions_on_random_modules() {
    let mut r = rng(101);
    for _ in 0..12 {
        let a = random_algebra(&mut r);
        let m = random_module(&mut r, &a);
        for i in 0..a.vertex_count() {
            let p = projective(&a, i);
            let homs = hom_space(&p.rep, &m).unwrap();
            assert_eq!(homs.len(), m.dim(i), "dim Hom(P_i, M) = dim e_i M");
        }
    }
}

#[test]
fn minimal_resolutions_are_exact_and_minimal() {
    let mut r = rng(102);
    for _ in 0..10 {
        let a = random_algebra(&mut r);
        let m = random_module(&mut r, &a);
        let res = resolve(&m, 16);
        // covers are minimal: kernel of each cover sits inside rad·P
        let cover = projective_cover(&m);
        let kc = kernel_cokernel(&cover.map);
        let rad = radical_subspaces(&cover.proj.rep);
        for v in 0..a.vertex_count() {
            for c in 0..kc.kernel_incl.mat(v).cols() {
                let col = kc.kernel_incl.mat(v).column(c);
                assert!(
                    span_contains(&rad[v], &col),
                    "cover kernel must lie in rad·P"
                );
            }
        }
        // exactness at every computed stage, by rank identities
        for k in 0..res.diffs.len() {
            let d_up = &res.diffs[k];
            let lower: &ModuleMap = if k == 0 { &res.augment } else { &res.diffs[k - 1] };
            assert!(lower.compose(d_up).is_zero());
            for v in 0..a.vertex_count() {
                let rank_up = d_up.mat(v).rank();
                let ker_low = lower.mat(v).cols() - lower.mat(v).rank();
                assert_eq!(rank_up, ker_low, "im(d_{}) = ker(d_{})", k + 1, k);
            }
        }
    }
}

#[test]
fn tensor_right_exactness_with_tor_correction() {
    // for surjections M ↠ M'' with kernel M': B⊗M' -> B⊗M -> B⊗M'' -> 0 is
    // exact, and when Tor_1(B, M) = 0 the defect of left exactness is
    // exactly Tor_1(B, M'')
    let mut r = rng(103);
    let mut tested = 0;
    while tested < 8 {
        let a = random_algebra(&mut r);
        let epi = common::random_epi(&mut r, &a);
        let b_right = epi.b_right_module();
        let m = random_module(&mut r, &a);
        if m.is_zero() {
            continue;
        }
        // random quotient M ↠ M''
        let field = a.field();
        let mut spans: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); a.vertex_count()];
        let v = r.gen_range(0..a.vertex_count());
        if m.dim(v) > 0 {
            let vec: Vec<Scalar> = (0..m.dim(v))
                .map(|_| field.from_i64(r.gen_range(-1..=1i64)))
                .collect();
            spans[v].push(vec);
        }
        // close under arrows
        loop {
            let mut grown = false;
            for (ai, ar) in a.quiver().arrows.iter().enumerate() {
                let mut new_vecs = Vec::new();
                for s in &spans[ar.source] {
                    let img = m.arrow_map(ai).apply(s);
                    if img.iter().any(|c| !field.is_zero(c)) {
                        new_vecs.push(img);
                    }
                }
                for nv in new_vecs {
                    let cur = span_basis(field, m.dim(ar.target), &spans[ar.target]);
                    if !span_contains(&cur, &nv) {
                        spans[ar.target].push(nv);
                        grown = true;
                    }
                }
            }
            if !grown {
                break;
            }
        }
        let sub: Vec<qha_core::Mat> = (0..a.vertex_count())
            .map(|w| span_basis(field, m.dim(w), &spans[w]))
            .collect();
        let (m_sub, incl) = subrepresentation(&m, &sub).unwrap();
        let (m_quot, proj) = quotient_representation(&m, &sub).unwrap();
        let t_sub = tensor(b_right, &m_sub).unwrap();
        let t_m = tensor(b_right, &m).unwrap();
        let t_quot = tensor(b_right, &m_quot).unwrap();
        let incl_t = tensor_induced_left(b_right, &incl, &t_sub, &t_m);
        let proj_t = tensor_induced_left(b_right, &proj, &t_m, &t_quot);
        // right exactness
        assert_eq!(proj_t.rank(), t_quot.dim);
        assert_eq!(t_m.dim - proj_t.rank(), incl_t.rank());
        // Tor_1 correction when the middle Tor vanishes
        if tor(b_right, &m, 1, small_caps()).unwrap() == 0 {
            let defect = t_sub.dim - incl_t.rank();
            assert_eq!(defect, tor(b_right, &m_quot, 1, small_caps()).unwrap());
        }
        tested += 1;
    }
}

#[test]
fn homotopy_hom_independent_of_resolution_choice() {
    // build a second, padded (non-minimal) projective model of K_f and
    // compare all three homotopy Hom dimensions
    let a = corpus::two_vertex_bab();
    let pms = corpus::two_vertex_alpha_star(&a);
    let sigmas: Vec<_> = pms
        .iter()
        .map(|pm| realise_sigma(&a, pm).unwrap())
        .collect();
    let loc = universal_localise(&a, &sigmas, small_caps()).unwrap();
    let f = &loc.epi;
    let pf = build_kf_resolution(f, small_caps()).unwrap();
    let kf = k_complex(f);

    // padded resolution: P0' = P0 ⊕ P_1, pi' = [pi, 0]
    let pad = projective(&a, 0);
    let (p0p, injections, projections) = direct_sum(&a, &[pf.p0.rep.clone(), pad.rep.clone()]);
    let pi_padded = pf.rho_0.compose(&projections[0]);
    assert!(pi_padded.is_surjective());
    let kcp = kernel_cokernel(&pi_padded);
    // kernel of the padded cover is projective since pd(B) <= 1
    let kernel_vertices = projective_decomposition(&kcp.kernel).expect("kernel projective");
    let p1p = projective_sum(&a, &kernel_vertices);
    let iso = qha_core::rep::find_isomorphism(&p1p.rep, &kcp.kernel)
        .unwrap()
        .expect("kernel is the projective on its vertices");
    let h_padded = kcp.kernel_incl.compose(&iso);
    let f_hat = lift_through_surjection(&pi_padded, f.as_module_map()).unwrap();
    let (pm1, injs2, projs2) = direct_sum(&a, &[f.a_module().rep.clone(), p1p.rep.clone()]);
    let _ = injs2;
    let d = f_hat
        .compose(&projs2[0])
        .add(&h_padded.compose(&projs2[1]));
    let padded = TwoTermComplex {
        term_m1: pm1,
        term_0: p0p,
        differential: d,
        projective_terms: true,
    };
    let _ = injections;
    for shift in [-1, 0, 1] {
        let d1 = homotopy_hom(&pf.pf, &kf, shift).unwrap().dim;
        let d2 = homotopy_hom(&padded, &kf, shift).unwrap().dim;
        assert_eq!(d1, d2, "shift {shift} differs between resolutions");
    }
}

#[test]
fn projectives_restrict_along_finite_epis() {
    // for a finite ring epimorphism, the restrictions of the indecomposable
    // projective B-modules are projective A-modules
    let a = corpus::two_vertex_bab();
    let pms = corpus::two_vertex_alpha_star(&a);
    let sigmas: Vec<_> = pms
        .iter()
        .map(|pm| realise_sigma(&a, pm).unwrap())
        .collect();
    let loc = universal_localise(&a, &sigmas, small_caps()).unwrap();
    let f = &loc.epi;
    let flags = classify(f, small_caps()).unwrap();
    assert!(flags.finite);
    let field = a.field();
    for idem in &f.target().idempotents {
        // B·ε as a left A-submodule of B
        let right = f.target().right_mult_matrix(&idem.coords);
        let spaces: Vec<qha_core::Mat> = (0..a.vertex_count())
            .map(|v| {
                let embed = &f.vertex_embed()[v];
                // image of right multiplication inside the vertex block
                let moved = right.mul(embed);
                let (sol, _) = embed.solve_and_kernel(&moved);
                sol.unwrap().column_space_basis()
            })
            .collect();
        let (sub, _) = subrepresentation(f.b_module(), &spaces).unwrap();
        assert!(
            projective_decomposition(&sub).is_some(),
            "B·ε restricts to a projective A-module"
        );
    }
    let _ = field;
}

#[test]
fn surjective_homological_kernel_is_idempotent() {
    // dim ker(f)/ker(f)^2 = 0 for surjective homological epis
    for (alg, subset) in [
        (corpus::line_free(), vec![1usize]),
        (corpus::two_vertex_bab(), vec![1usize]),
    ] {
        let qc = quotient_and_corner(&alg, &subset).unwrap();
        let flags = classify(&qc.quotient_epi, small_caps()).unwrap();
        assert_eq!(
            flags.homological,
            qha_core::localisation::HomologicalVerdict::Yes
        );
        let field = alg.field();
        let ker = &qc.ideal_basis;
        // span of pairwise products
        let mut products = Vec::new();
        for i in 0..ker.cols() {
            for j in 0..ker.cols() {
                products.push(alg.algebra().mul_elems(&ker.column(i), &ker.column(j)));
            }
        }
        let sq = span_basis(field, alg.dim(), &products);
        assert_eq!(sq.rank(), ker.rank(), "kernel ideal is idempotent");
    }
}

#[test]
fn rewriting_confluence_on_random_lincombs() {
    // normal_form(x·y) = normal_form(normal_form(x)·normal_form(y))
    let mut r = rng(104);
    let algebras = [
        corpus::line_ba(),
        corpus::two_vertex_bab(),
        corpus::triangle_ba(),
        corpus::cycle4(),
    ];
    let mut trials = 0;
    while trials < 1000 {
        let a = &algebras[r.gen_range(0..algebras.len())];
        let field = a.field();
        let q = a.quiver();
        // random words of length <= 4 by random walks
        let mut random_lincomb = |r: &mut rand::rngs::StdRng| {
            let mut terms = Vec::new();
            for _ in 0..r.gen_range(1..=3usize) {
                let len = r.gen_range(0..=4usize);
                if len == 0 {
                    terms.push((
                        PathWord::trivial(r.gen_range(0..q.vertex_count)),
                        field.from_i64(r.gen_range(-2..=2i64)),
                    ));
                    continue;
                }
                let mut arrows = Vec::new();
                let mut v = r.gen_range(0..q.vertex_count);
                for _ in 0..len {
                    let outs: Vec<usize> = q.arrows_from(v).collect();
                    if outs.is_empty() {
                        break;
                    }
                    let a_idx = outs[r.gen_range(0..outs.len())];
                    arrows.push(a_idx);
                    v = q.arrows[a_idx].target;
                }
                if arrows.is_empty() {
                    continue;
                }
                terms.push((
                    PathWord::from_arrows(q, arrows).unwrap(),
                    field.from_i64(r.gen_range(-2..=2i64)),
                ));
            }
            LinComb::from_terms(field, terms)
        };
        let x = random_lincomb(&mut r);
        let y = random_lincomb(&mut r);
        let lhs = a.normal_form(&x.mul(field, &y)).unwrap();
        let nx = a.normal_form(&x).unwrap();
        let ny = a.normal_form(&y).unwrap();
        let rhs = a.normal_form(&nx.mul(field, &ny)).unwrap();
        assert_eq!(lhs, rhs);
        trials += 1;
    }
}

//! Seeded random generators shared by the property and acceptance suites.
//! Everything is deterministic: a fixed seed reproduces the exact run.

#![allow(dead_code)]

use qha_core::localisation::{
    quotient_and_corner, realise_sigma, universal_localise, Caps, ProjMap, RingEpi,
};
use qha_core::rep::{
    direct_sum, hom_space, kernel_cokernel, projective_sum, subrepresentation, ModuleMap,
    Representation,
};
use qha_core::{
    build_algebra, AlgebraPresentation, Arrow, FieldSpec, LinComb, PathWord, PresentedAlgebra,
    Quiver,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::sync::Arc;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn small_caps() -> Caps {
    Caps {
        max_dim: 400,
        max_iter: 64,
        resolution_cap: 16,
        tor_cap: 16,
    }
}

/// A random bound quiver algebra: an acyclic quiver (guaranteed admissible)
/// with a few monomial length-2 relations. Dimensions stay small.
pub fn random_algebra(rng: &mut StdRng) -> Arc<PresentedAlgebra> {
    let field = FieldSpec::Rationals;
    loop {
        let n = rng.gen_range(2..=4usize);
        let arrow_count = rng.gen_range(1..=n + 1);
        let mut arrows = Vec::new();
        for k in 0..arrow_count {
            let u = rng.gen_range(0..n - 1);
            let v = rng.gen_range(u + 1..n);
            arrows.push(Arrow {
                name: format!("x{k}"),
                source: u,
                target: v,
            });
        }
        let Ok(quiver) = Quiver::new(n, arrows) else {
            continue;
        };
        // composable pairs for monomial relations
        let mut pairs = Vec::new();
        for a1 in 0..quiver.arrows.len() {
            for a2 in 0..quiver.arrows.len() {
                if quiver.arrows[a1].target == quiver.arrows[a2].source {
                    pairs.push((a1, a2));
                }
            }
        }
        let mut relations = Vec::new();
        if !pairs.is_empty() {
            let count = rng.gen_range(0..=pairs.len().min(2));
            for _ in 0..count {
                let (a1, a2) = pairs[rng.gen_range(0..pairs.len())];
                let w = PathWord::from_arrows(&quiver, vec![a1, a2]).unwrap();
                relations.push(LinComb::single(w, field.one()));
            }
        }
        match build_algebra(AlgebraPresentation::new(field, quiver, relations)) {
            Ok(a) if a.dim() <= 14 => return a,
            _ => continue,
        }
    }
}

/// A random module built as a quotient of a random projective sum by the
/// submodule generated by random vectors (always a valid representation).
pub fn random_module(rng: &mut StdRng, algebra: &Arc<PresentedAlgebra>) -> Representation {
    let field = algebra.field();
    let n = algebra.vertex_count();
    let summand_count = rng.gen_range(1..=3usize);
    let vertices: Vec<usize> = (0..summand_count).map(|_| rng.gen_range(0..n)).collect();
    let ps = projective_sum(algebra, &vertices);
    let rep = ps.rep.clone();
    if rep.is_zero() {
        return rep;
    }
    // random generators of a submodule
    let gen_count = rng.gen_range(0..=2usize);
    let mut spans: Vec<Vec<Vec<qha_core::Scalar>>> = vec![Vec::new(); n];
    for _ in 0..gen_count {
        let v = rng.gen_range(0..n);
        if rep.dim(v) == 0 {
            continue;
        }
        let vec: Vec<qha_core::Scalar> = (0..rep.dim(v))
            .map(|_| field.from_i64(rng.gen_range(-2..=2i64)))
            .collect();
        spans[v].push(vec);
    }
    // close under the arrow action
    loop {
        let mut grown = false;
        for (a, ar) in algebra.quiver().arrows.iter().enumerate() {
            let mut new_vecs = Vec::new();
            for s in &spans[ar.source] {
                let img = rep.arrow_map(a).apply(s);
                if img.iter().any(|c| !field.is_zero(c)) {
                    new_vecs.push(img);
                }
            }
            for nv in new_vecs {
                let cur = qha_core::matrix::span_basis(
                    field,
                    rep.dim(ar.target),
                    &spans[ar.target],
                );
                if !qha_core::matrix::span_contains(&cur, &nv) {
                    spans[ar.target].push(nv);
                    grown = true;
                }
            }
        }
        if !grown {
            break;
        }
    }
    let sub: Vec<qha_core::Mat> = (0..n)
        .map(|v| qha_core::matrix::span_basis(field, rep.dim(v), &spans[v]))
        .collect();
    let (quot, _) = qha_core::rep::quotient_representation(&rep, &sub).unwrap();
    if rng.gen_bool(0.3) {
        // sometimes return the submodule instead
        let (subrep, _) = subrepresentation(&rep, &sub).unwrap();
        if !subrep.is_zero() {
            return subrep;
        }
    }
    quot
}

/// A random map between finitely generated projectives (one summand each
/// side, a random Hom-space combination as the entry).
pub fn random_sigma(rng: &mut StdRng, algebra: &Arc<PresentedAlgebra>) -> ProjMap {
    let field = algebra.field();
    let n = algebra.vertex_count();
    let j = rng.gen_range(0..n);
    let i = rng.gen_range(0..n);
    // entry lives in Hom(Ae_j, Ae_i) = e_j A e_i: paths from i to j
    let words: Vec<&PathWord> = algebra
        .basis()
        .iter()
        .filter(|w| w.source() == i && w.target() == j)
        .collect();
    let mut entry = LinComb::zero();
    for w in &words {
        let c = rng.gen_range(-1..=1i64);
        if c != 0 {
            entry = entry.add(field, &LinComb::single((*w).clone(), field.from_i64(c)));
        }
    }
    ProjMap {
        name: "sigma".into(),
        source_vertices: vec![j],
        target_vertices: vec![i],
        entries: vec![vec![entry]],
    }
}

/// A cheap random ring epimorphism: the identity or a vertex-subset
/// quotient (no reflection iteration involved).
pub fn random_epi(rng: &mut StdRng, algebra: &Arc<PresentedAlgebra>) -> RingEpi {
    loop {
        match rng.gen_range(0..8u32) {
            0 => return RingEpi::identity(algebra.clone()).unwrap(),
            _ => {
                let n = algebra.vertex_count();
                let mask = rng.gen_range(1..(1usize << n));
                let subset: Vec<usize> = (0..n).filter(|v| mask & (1 << v) != 0).collect();
                if subset.len() == n && rng.gen_bool(0.8) {
                    continue; // mostly avoid the zero ring
                }
                return quotient_and_corner(algebra, &subset).unwrap().quotient_epi;
            }
        }
    }
}

/// A pool of random algebras with ring epimorphisms of all three flavours
/// (identities, quotients, universal localisations), built once per test
/// binary with a fixed seed and shared across the randomised suites.
pub struct Pool {
    pub algebras: Vec<Arc<PresentedAlgebra>>,
    pub epis: Vec<RingEpi>,
    /// Localisations paired with their σ data, for reflection tests.
    pub localisations: Vec<(Arc<PresentedAlgebra>, Vec<qha_core::localisation::SigmaData>, RingEpi)>,
}

static POOL: std::sync::OnceLock<Pool> = std::sync::OnceLock::new();

pub fn pool() -> &'static Pool {
    POOL.get_or_init(|| {
        let mut r = rng(7_312_911);
        let mut algebras = Vec::new();
        for _ in 0..14 {
            algebras.push(random_algebra(&mut r));
        }
        let mut epis = Vec::new();
        let mut localisations = Vec::new();
        for a in &algebras {
            epis.push(RingEpi::identity(a.clone()).unwrap());
            // two random proper quotients
            for _ in 0..2 {
                let n = a.vertex_count();
                let mask = r.gen_range(1..(1usize << n));
                let subset: Vec<usize> = (0..n).filter(|v| mask & (1 << v) != 0).collect();
                epis.push(quotient_and_corner(a, &subset).unwrap().quotient_epi);
            }
            // one random localisation attempt
            for _ in 0..3 {
                let pm = random_sigma(&mut r, a);
                let Ok(sigma) = realise_sigma(a, &pm) else {
                    continue;
                };
                match universal_localise(a, std::slice::from_ref(&sigma), small_caps()) {
                    Ok(loc) => {
                        localisations.push((a.clone(), vec![sigma], loc.epi));
                        break;
                    }
                    Err(_) => continue,
                }
            }
        }
        Pool {
            algebras,
            epis,
            localisations,
        }
    })
}

/// A random object of the σ-local subcategory attached to an epi: a kernel
/// or cokernel of a random map between copies of `B_mod`.
pub fn random_local_object(
    rng: &mut StdRng,
    algebra: &Arc<PresentedAlgebra>,
    b_mod: &Representation,
) -> Representation {
    let copies_a = rng.gen_range(1..=2usize);
    let copies_b = rng.gen_range(1..=2usize);
    let (src, _, _) = direct_sum(algebra, &vec![b_mod.clone(); copies_a]);
    let (tgt, _, _) = direct_sum(algebra, &vec![b_mod.clone(); copies_b]);
    let homs = hom_space(&src, &tgt).unwrap();
    let field = algebra.field();
    let mut map = ModuleMap::zero(&src, &tgt);
    for h in &homs {
        let c = rng.gen_range(-1..=1i64);
        if c != 0 {
            map = map.add(&h.scale(&field.from_i64(c)));
        }
    }
    let kc = kernel_cokernel(&map);
    if rng.gen_bool(0.5) {
        kc.kernel
    } else {
        kc.cokernel
    }
}

/// A random presentation meeting the finite-localisation scan conditions
/// for the arrow `x0: 1 -> 2`: no other arrow leaves vertex 1 or enters
/// vertex 2, and no relation can end at vertex 2 by construction.
pub fn random_scan_presentation(rng: &mut StdRng) -> Arc<PresentedAlgebra> {
    let field = FieldSpec::Rationals;
    loop {
        let n = rng.gen_range(3..=5usize);
        let mut arrows = vec![Arrow {
            name: "x0".into(),
            source: 0,
            target: 1,
        }];
        let extra = rng.gen_range(1..=n);
        for k in 0..extra {
            // u >= 1, v >= 2, u < v: keeps the quiver acyclic and keeps
            // vertex 1 with unique out-arrow, vertex 2 with unique in-arrow
            let u = rng.gen_range(1..n - 1);
            let v = rng.gen_range(u + 1..n).max(2);
            if v == 1 {
                continue;
            }
            arrows.push(Arrow {
                name: format!("x{}", k + 1),
                source: u,
                target: v,
            });
        }
        let Ok(quiver) = Quiver::new(n, arrows) else {
            continue;
        };
        let mut pairs = Vec::new();
        for a1 in 0..quiver.arrows.len() {
            for a2 in 0..quiver.arrows.len() {
                if quiver.arrows[a1].target == quiver.arrows[a2].source
                    && quiver.arrows[a2].target != 1
                {
                    pairs.push((a1, a2));
                }
            }
        }
        let mut relations = Vec::new();
        if !pairs.is_empty() && rng.gen_bool(0.6) {
            let (a1, a2) = pairs[rng.gen_range(0..pairs.len())];
            let w = PathWord::from_arrows(&quiver, vec![a1, a2]).unwrap();
            relations.push(LinComb::single(w, field.one()));
        }
        match build_algebra(AlgebraPresentation::new(field, quiver, relations)) {
            Ok(a) if a.dim() <= 16 => return a,
            _ => continue,
        }
    }
}

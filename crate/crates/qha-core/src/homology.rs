//! Derived-level computations: Tor via minimal resolutions of the right
//! argument, the two-term complex `K_f` of a ring epimorphism and its
//! projective model `P_f`, Hom spaces in the homotopy category for shifts
//! -1, 0, 1 (everything else vanishes for two-term complexes), and the
//! endomorphism ring of `K_f` together with the map `Ω: A -> End`.

use crate::algebra::{FDAlgebra, Idempotent, PresentedAlgebra, SparseVec};
use crate::error::{Error, Result};
use crate::localisation::{Caps, RingEpi};
use crate::matrix::{span_basis, Mat};
use crate::rep::{
    direct_sum, hom_space, kernel_cokernel, lift_through_surjection, projective_sum, resolve,
    tensor, tensor_induced_right, ConstraintTerm, MapSystem, ModuleMap, PdVerdict, ProjectiveSum,
    Representation,
};
use crate::scalar::Scalar;
use std::sync::Arc;

/// A complex concentrated in degrees -1 and 0.
#[derive(Debug, Clone)]
pub struct TwoTermComplex {
    pub term_m1: Representation,
    pub term_0: Representation,
    pub differential: ModuleMap,
    pub projective_terms: bool,
}

/// `K_f`: the complex `A -> B` with `A` in degree -1.
pub fn k_complex(f: &RingEpi) -> TwoTermComplex {
    TwoTermComplex {
        term_m1: f.a_module().rep.clone(),
        term_0: f.b_module().clone(),
        differential: f.as_module_map().clone(),
        projective_terms: false,
    }
}

/// `Tor_i^A(M, N)` for a right module `M` (over the opposite algebra) and a
/// left module `N`: resolve `M` minimally to stage `i+1`, tensor, take
/// homology.
pub fn tor(
    m_right: &Representation,
    n_left: &Representation,
    i: usize,
    caps: Caps,
) -> Result<usize> {
    if i > caps.tor_cap {
        return Err(Error::ResolutionCapExceeded { cap: caps.tor_cap });
    }
    if i == 0 {
        return Ok(tensor(m_right, n_left)?.dim);
    }
    let res = resolve(m_right, i + 1);
    if i >= res.terms.len() {
        // the resolution stopped early: pd(M) < i
        return Ok(0);
    }
    let t_i = tensor(&res.terms[i].rep, n_left)?;
    let ker_dim = if i == 0 {
        t_i.dim
    } else {
        let t_prev = tensor(&res.terms[i - 1].rep, n_left)?;
        let d_i = tensor_induced_right(&res.diffs[i - 1], n_left, &t_i, &t_prev);
        t_i.dim - d_i.rank()
    };
    let im_dim = if i + 1 < res.terms.len() {
        let t_next = tensor(&res.terms[i + 1].rep, n_left)?;
        let d_next = tensor_induced_right(&res.diffs[i], n_left, &t_next, &t_i);
        d_next.rank()
    } else {
        0
    };
    Ok(ker_dim - im_dim)
}

/// The projective model of `K_f` along with the quasi-isomorphism data.
pub struct PfData {
    /// `P_f = (A ⊕ P_1^B -> P_0^B)` with the Cartan–Eilenberg differential.
    pub pf: TwoTermComplex,
    /// Summand vertices of `P_f^{-1}`: all vertices of `A`, then `P_1^B`.
    pub p_minus1_vertices: Vec<usize>,
    pub p0: ProjectiveSum,
    pub p1: ProjectiveSum,
    /// Quasi-isomorphism components `ρ: P_f -> K_f`.
    pub rho_m1: ModuleMap,
    pub rho_0: ModuleMap,
    pub kf: TwoTermComplex,
}

/// Build `P_f` for a 1-finite epimorphism: choose the minimal projective
/// resolution `0 -> P_1 -> P_0 -> B -> 0`, lift `f` through the cover, and
/// totalise. Both defining quasi-isomorphism identities (`H^{-1} ≅ ker f`,
/// `H^0 ≅ coker f`) are verified before returning.
pub fn build_kf_resolution(f: &RingEpi, caps: Caps) -> Result<PfData> {
    let algebra = f.source().clone();
    let res = resolve(f.b_module(), caps.resolution_cap);
    match res.pd {
        PdVerdict::Exact(n) if n <= 1 => {}
        PdVerdict::Exact(n) => {
            return Err(Error::ProjectiveDimensionTooLarge(format!(
                "pd(B) = {n} but the construction needs pd(B) <= 1"
            )))
        }
        PdVerdict::AtLeastCap(c) => {
            return Err(Error::ProjectiveDimensionTooLarge(format!(
                "pd(B) >= {c} (resolution cap)"
            )))
        }
    }
    let p0 = res.terms[0].clone();
    let pi = res.augment.clone();
    let (p1, h) = if res.terms.len() > 1 {
        (res.terms[1].clone(), res.diffs[0].clone())
    } else {
        let empty = projective_sum(&algebra, &[]);
        let zero = ModuleMap::zero(&empty.rep, &p0.rep);
        (empty, zero)
    };
    let f_hat = lift_through_surjection(&pi, f.as_module_map())
        .ok_or_else(|| Error::Invalid("internal: cover lift failed".into()))?;
    let a_mod = f.a_module();
    let parts = vec![a_mod.rep.clone(), p1.rep.clone()];
    let (p_m1, injections, projections) = direct_sum(&algebra, &parts);
    let d = f_hat
        .compose(&projections[0])
        .add(&h.compose(&projections[1]));
    let _ = injections;
    let pf = TwoTermComplex {
        term_m1: p_m1.clone(),
        term_0: p0.rep.clone(),
        differential: d,
        projective_terms: true,
    };
    let rho_m1 = projections[0].clone();
    let rho_0 = pi;
    let kf = k_complex(f);
    let data = PfData {
        p_minus1_vertices: {
            let mut v: Vec<usize> = (0..algebra.vertex_count()).collect();
            v.extend(p1.summands.iter().copied());
            v
        },
        pf,
        p0,
        p1,
        rho_m1,
        rho_0,
        kf,
    };
    let (hm1, h0) = quasi_iso_check(f, &data)?;
    if !hm1 || !h0 {
        return Err(Error::Invalid(
            "internal: totalisation is not quasi-isomorphic to K_f".into(),
        ));
    }
    Ok(data)
}

/// Verify `H^{-1}(P_f) ≅ ker f` and `H^0(P_f) ≅ coker f` through the maps
/// induced by ρ.
pub fn quasi_iso_check(f: &RingEpi, pf: &PfData) -> Result<(bool, bool)> {
    let kc_d = kernel_cokernel(&pf.pf.differential);
    // induced map ker(d) -> ker(f): rho_m1 restricted, expressed through the
    // kernel inclusions
    let u = pf.rho_m1.compose(&kc_d.kernel_incl);
    let mut hm1 = kc_d.kernel.total_dim() == f.kernel().total_dim();
    if hm1 {
        let mut mats = Vec::new();
        for v in 0..f.source().vertex_count() {
            let (sol, _) = f.kernel_incl().mat(v).solve_and_kernel(u.mat(v));
            match sol {
                Some(x) => mats.push(x),
                None => {
                    hm1 = false;
                    break;
                }
            }
        }
        if hm1 {
            let induced = ModuleMap::new_unchecked(kc_d.kernel.clone(), f.kernel().clone(), mats);
            hm1 = induced.is_bijective();
        }
    }
    // induced map coker(d) -> coker(f): factor coker_f_proj ∘ rho_0 through
    // the projection onto coker(d)
    let target = f.cokernel_proj().compose(&pf.rho_0);
    let mut h0 = kc_d.cokernel.total_dim() == f.cokernel().total_dim();
    if h0 {
        let mut mats = Vec::new();
        for v in 0..f.source().vertex_count() {
            // solve Y * proj_v = target_v  (proj has full row rank)
            let proj_t = kc_d.cokernel_proj.mat(v).transpose();
            let (sol, _) = proj_t.solve_and_kernel(&target.mat(v).transpose());
            match sol {
                Some(x) => mats.push(x.transpose()),
                None => {
                    h0 = false;
                    break;
                }
            }
        }
        if h0 {
            let induced =
                ModuleMap::new_unchecked(kc_d.cokernel.clone(), f.cokernel().clone(), mats);
            h0 = induced.is_bijective();
        }
    }
    Ok((hm1, h0))
}

/// The reverse direction of the two-term-resolution equivalence: assemble
/// `0 -> P^{-1} -> A ⊕ P^0 -> B -> 0` from `P_f` and check exactness.
pub fn totalisation_exact(f: &RingEpi, pf: &PfData) -> Result<bool> {
    let algebra = f.source().clone();
    let parts = vec![f.a_module().rep.clone(), pf.p0.rep.clone()];
    let (middle, injections, projections) = direct_sum(&algebra, &parts);
    // p1: x -> (rho_m1(x), d(x))
    let p1 = injections[0]
        .compose(&pf.rho_m1)
        .add(&injections[1].compose(&pf.pf.differential));
    // p2: (y, z) -> f(y) - pi(z)
    let p2 = f
        .as_module_map()
        .compose(&projections[0])
        .sub(&pf.rho_0.compose(&projections[1]));
    let injective = p1.is_injective();
    let surjective = p2.is_surjective();
    let composes_to_zero = p2.compose(&p1).is_zero();
    let mut exact_middle = true;
    for v in 0..algebra.vertex_count() {
        let rank_p1 = p1.mat(v).rank();
        let ker_p2 = middle.dim(v) - p2.mat(v).rank();
        if rank_p1 != ker_p2 {
            exact_middle = false;
        }
    }
    Ok(injective && surjective && composes_to_zero && exact_middle)
}

/// `Hom_{K(A)}(P, C[i])` for a two-term complex `P` of projectives.
pub struct HomotopyHomSpace {
    pub shift: i32,
    pub chain_dim: usize,
    pub null_dim: usize,
    pub dim: usize,
    /// Shift-0 chain maps as pairs of components, when computed.
    pub chain_pairs: Vec<(ModuleMap, ModuleMap)>,
    pub null_pairs: Vec<(ModuleMap, ModuleMap)>,
}

fn pair_to_vec(f: crate::scalar::FieldSpec, pair: &(ModuleMap, ModuleMap)) -> Vec<Scalar> {
    let mut v = Vec::new();
    for mm in [&pair.0, &pair.1] {
        for m in mm.mats() {
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    v.push(m.at(r, c).clone());
                }
            }
        }
    }
    let _ = f;
    v
}

/// Case analysis over the shift; `|i| >= 2` vanishes for degree reasons and
/// is returned without computation.
pub fn homotopy_hom(p: &TwoTermComplex, c: &TwoTermComplex, shift: i32) -> Result<HomotopyHomSpace> {
    if !p.projective_terms {
        return Err(Error::Invalid(
            "homotopy_hom requires projective terms in the source".into(),
        ));
    }
    let field = p.term_0.field();
    match shift {
        0 => {
            // chain maps (φ_{-1}, φ_0) with d_C φ_{-1} = φ_0 d_P, modulo
            // (s d_P, d_C s)
            let mut sys = MapSystem::new(field);
            let v_m1 = sys.add_var(&p.term_m1, &c.term_m1);
            let v_0 = sys.add_var(&p.term_0, &c.term_0);
            sys.add_constraint(
                &[
                    ConstraintTerm {
                        left: Some(&c.differential),
                        var: v_m1,
                        right: None,
                        sign: 1,
                    },
                    ConstraintTerm {
                        left: None,
                        var: v_0,
                        right: Some(&p.differential),
                        sign: -1,
                    },
                ],
                None,
            );
            let (_, chain_basis) = sys.solve();
            let chain_pairs: Vec<(ModuleMap, ModuleMap)> = chain_basis
                .into_iter()
                .map(|mut v| {
                    let b = v.pop().unwrap();
                    let a = v.pop().unwrap();
                    (a, b)
                })
                .collect();
            let homotopies = hom_space(&p.term_0, &c.term_m1)?;
            let null_pairs: Vec<(ModuleMap, ModuleMap)> = homotopies
                .iter()
                .map(|s| {
                    (
                        s.compose(&p.differential),
                        c.differential.compose(s),
                    )
                })
                .collect();
            let dims = quotient_dim(field, &chain_pairs, &null_pairs);
            Ok(HomotopyHomSpace {
                shift,
                chain_dim: chain_pairs.len(),
                null_dim: dims.1,
                dim: dims.0,
                chain_pairs,
                null_pairs,
            })
        }
        1 => {
            // chain maps are all of Hom(P^{-1}, C^0); null maps are
            // s ∘ d_P + d_C ∘ s'
            let chain = hom_space(&p.term_m1, &c.term_0)?;
            let mut null = Vec::new();
            for s in hom_space(&p.term_0, &c.term_0)? {
                null.push(s.compose(&p.differential));
            }
            for s in hom_space(&p.term_m1, &c.term_m1)? {
                null.push(c.differential.compose(&s));
            }
            let zero0 = ModuleMap::zero(&p.term_0, &c.term_0);
            let chain_pairs: Vec<(ModuleMap, ModuleMap)> =
                chain.into_iter().map(|m| (m, zero0.clone())).collect();
            let null_pairs: Vec<(ModuleMap, ModuleMap)> =
                null.into_iter().map(|m| (m, zero0.clone())).collect();
            let dims = quotient_dim(field, &chain_pairs, &null_pairs);
            Ok(HomotopyHomSpace {
                shift,
                chain_dim: chain_pairs.len(),
                null_dim: dims.1,
                dim: dims.0,
                chain_pairs,
                null_pairs,
            })
        }
        -1 => {
            // maps φ: P^0 -> C^{-1} with φ d_P = 0 and d_C φ = 0; no
            // homotopies exist
            let mut sys = MapSystem::new(field);
            let v = sys.add_var(&p.term_0, &c.term_m1);
            sys.add_constraint(
                &[ConstraintTerm {
                    left: None,
                    var: v,
                    right: Some(&p.differential),
                    sign: 1,
                }],
                None,
            );
            sys.add_constraint(
                &[ConstraintTerm {
                    left: Some(&c.differential),
                    var: v,
                    right: None,
                    sign: 1,
                }],
                None,
            );
            let (_, basis) = sys.solve();
            let zero_m1 = ModuleMap::zero(&p.term_m1, &c.term_m1);
            let chain_pairs: Vec<(ModuleMap, ModuleMap)> = basis
                .into_iter()
                .map(|mut v| (zero_m1.clone(), v.pop().unwrap()))
                .collect();
            let n = chain_pairs.len();
            Ok(HomotopyHomSpace {
                shift,
                chain_dim: n,
                null_dim: 0,
                dim: n,
                chain_pairs,
                null_pairs: Vec::new(),
            })
        }
        _ => Ok(HomotopyHomSpace {
            shift,
            chain_dim: 0,
            null_dim: 0,
            dim: 0,
            chain_pairs: Vec::new(),
            null_pairs: Vec::new(),
        }),
    }
}

fn quotient_dim(
    field: crate::scalar::FieldSpec,
    chain: &[(ModuleMap, ModuleMap)],
    null: &[(ModuleMap, ModuleMap)],
) -> (usize, usize) {
    if chain.is_empty() {
        return (0, 0);
    }
    let null_vecs: Vec<Vec<Scalar>> = null.iter().map(|p| pair_to_vec(field, p)).collect();
    let amb = pair_to_vec(field, &chain[0]).len();
    let null_rank = span_basis(field, amb, &null_vecs).cols();
    (chain.len() - null_rank, null_rank)
}

/// The endomorphism ring of `K_f` in the derived category, computed as
/// chain endomorphisms of `P_f` modulo homotopy, with multiplication
/// opposite to composition so that `Ω` is a ring homomorphism.
pub struct EndRingData {
    pub ring: FDAlgebra,
    /// `Ω: A -> E` as a matrix (dim E x dim A).
    pub omega: Mat,
    pub omega_surjective: bool,
    /// Chosen chain-map representatives of the basis classes.
    pub representatives: Vec<(ModuleMap, ModuleMap)>,
}

pub fn homotopy_end_ring(f: &RingEpi, pf: &PfData) -> Result<EndRingData> {
    let field = f.source().field();
    let hh = homotopy_hom(&pf.pf, &pf.pf, 0)?;
    let dim_e = hh.dim;
    let amb = if hh.chain_pairs.is_empty() {
        0
    } else {
        pair_to_vec(field, &hh.chain_pairs[0]).len()
    };
    let chain_mat = Mat::from_fn(field, amb, hh.chain_pairs.len(), |r, c| {
        pair_to_vec(field, &hh.chain_pairs[c])[r].clone()
    });
    let null_vecs: Vec<Vec<Scalar>> = hh
        .null_pairs
        .iter()
        .map(|p| pair_to_vec(field, p))
        .collect();
    let null_mat = span_basis(field, amb, &null_vecs);
    // representatives: chain basis columns extending the null span
    let ext = null_mat.hstack(&chain_mat);
    let red = ext.row_reduce();
    let mut rep_cols = Vec::new();
    for &p in &red.pivots {
        if p >= null_mat.cols() {
            rep_cols.push(p - null_mat.cols());
        }
    }
    debug_assert_eq!(rep_cols.len(), dim_e);
    let representatives: Vec<(ModuleMap, ModuleMap)> = rep_cols
        .iter()
        .map(|&c| hh.chain_pairs[c].clone())
        .collect();
    // coordinates of an arbitrary chain-map vector modulo homotopy
    let rep_mat = Mat::from_fn(field, amb, dim_e, |r, c| {
        pair_to_vec(field, &representatives[c])[r].clone()
    });
    let solve_mat = null_mat.hstack(&rep_mat);
    let class_coords = |pair: &(ModuleMap, ModuleMap)| -> Result<Vec<Scalar>> {
        let v = pair_to_vec(field, pair);
        let (sol, _) = solve_mat.solve_and_kernel(&Mat::col_vec(field, &v));
        let sol = sol.ok_or_else(|| {
            Error::Invalid("internal: composite is not a chain map modulo homotopy".into())
        })?;
        Ok((0..dim_e).map(|k| sol.at(null_mat.cols() + k, 0).clone()).collect())
    };

    // multiplication opposite to composition: x·y = y ∘ x
    let mut mult: Vec<Vec<SparseVec>> = vec![vec![Vec::new(); dim_e]; dim_e];
    for i in 0..dim_e {
        for j in 0..dim_e {
            let comp = (
                representatives[j].0.compose(&representatives[i].0),
                representatives[j].1.compose(&representatives[i].1),
            );
            let coords = class_coords(&comp)?;
            mult[i][j] = coords
                .iter()
                .enumerate()
                .filter(|(_, v)| !field.is_zero(v))
                .map(|(k, v)| (k, v.clone()))
                .collect();
        }
    }
    let unit = class_coords(&(
        ModuleMap::identity(&pf.pf.term_m1),
        ModuleMap::identity(&pf.pf.term_0),
    ))?;

    // Ω(a): lift the right-multiplication chain endomorphism of K_f through ρ
    let dim_a = f.source().dim();
    let mut omega = Mat::zeros(field, dim_e, dim_a);
    for w in 0..dim_a {
        let theta_m1 = right_mult_on_free(f, w);
        let theta_0 = right_mult_on_b(f, w)?;
        let mut sys = MapSystem::new(field);
        let v_m1 = sys.add_var(&pf.pf.term_m1, &pf.pf.term_m1);
        let v_0 = sys.add_var(&pf.pf.term_0, &pf.pf.term_0);
        let v_h = sys.add_var(&pf.pf.term_0, &pf.kf.term_m1);
        // chain condition: d φ_{-1} - φ_0 d = 0
        sys.add_constraint(
            &[
                ConstraintTerm {
                    left: Some(&pf.pf.differential),
                    var: v_m1,
                    right: None,
                    sign: 1,
                },
                ConstraintTerm {
                    left: None,
                    var: v_0,
                    right: Some(&pf.pf.differential),
                    sign: -1,
                },
            ],
            None,
        );
        // degree -1: ρ_{-1} φ_{-1} - H d = θ_{-1} ρ_{-1}
        let rhs_m1 = theta_m1.compose(&pf.rho_m1);
        sys.add_constraint(
            &[
                ConstraintTerm {
                    left: Some(&pf.rho_m1),
                    var: v_m1,
                    right: None,
                    sign: 1,
                },
                ConstraintTerm {
                    left: None,
                    var: v_h,
                    right: Some(&pf.pf.differential),
                    sign: -1,
                },
            ],
            Some(&rhs_m1),
        );
        // degree 0: ρ_0 φ_0 - f H = θ_0 ρ_0
        let rhs_0 = theta_0.compose(&pf.rho_0);
        sys.add_constraint(
            &[
                ConstraintTerm {
                    left: Some(&pf.rho_0),
                    var: v_0,
                    right: None,
                    sign: 1,
                },
                ConstraintTerm {
                    left: Some(&pf.kf.differential),
                    var: v_h,
                    right: None,
                    sign: -1,
                },
            ],
            Some(&rhs_0),
        );
        let (part, _) = sys.solve();
        let maps = part.ok_or_else(|| {
            Error::Invalid("internal: lifting right multiplication through ρ failed".into())
        })?;
        let coords = class_coords(&(maps[0].clone(), maps[1].clone()))?;
        for r in 0..dim_e {
            omega.set(r, w, coords[r].clone());
        }
    }

    // Ω must send 1 to the unit class and be multiplicative
    let unit_a = f.source().algebra().unit.clone();
    if omega.apply(&unit_a) != unit {
        return Err(Error::Invalid("internal: Ω(1) is not the unit class".into()));
    }
    let omega_surjective = omega.rank() == dim_e;

    let mut idempotents = Vec::new();
    let mut radical = None;
    if omega_surjective {
        for v in 0..f.source().vertex_count() {
            let col = omega.column(f.source().vertex_idempotent_index(v));
            if col.iter().any(|c| !field.is_zero(c)) {
                idempotents.push(Idempotent {
                    coords: col,
                    vertex: Some(v),
                });
            }
        }
        if let Some(rad_a) = &f.source().algebra().radical {
            let imgs: Vec<Vec<Scalar>> = rad_a.iter().map(|r| omega.apply(r)).collect();
            let b = span_basis(field, dim_e, &imgs);
            radical = Some((0..b.cols()).map(|c| b.column(c)).collect());
        }
    } else if dim_e > 0 {
        idempotents.push(Idempotent {
            coords: unit.clone(),
            vertex: None,
        });
    }

    let ring = FDAlgebra {
        field,
        dim: dim_e,
        labels: (0..dim_e).map(|i| format!("E{i}")).collect(),
        mult,
        unit,
        idempotents,
        radical,
    };
    ring.verify()?;
    // multiplicativity of Ω, checked on all basis pairs
    for i in 0..dim_a {
        for j in 0..dim_a {
            let mut prod = vec![field.zero(); dim_a];
            for (k, c) in &f.source().algebra().mult[i][j] {
                prod[*k] = c.clone();
            }
            let lhs = omega.apply(&prod);
            let rhs = ring.mul_elems(&omega.column(i), &omega.column(j));
            if lhs != rhs {
                return Err(Error::Invalid(
                    "internal: Ω is not multiplicative".into(),
                ));
            }
        }
    }
    Ok(EndRingData {
        ring,
        omega,
        omega_surjective,
        representatives,
    })
}

/// Right multiplication by the basis element `w` on the free module `A`.
fn right_mult_on_free(f: &RingEpi, w: usize) -> ModuleMap {
    let algebra: &Arc<PresentedAlgebra> = f.source();
    let field = algebra.field();
    let a_mod = f.a_module();
    let rep = &a_mod.rep;
    let nv = algebra.vertex_count();
    let flat_of = f.a_perm();
    let mut mats = Vec::new();
    for v in 0..nv {
        let mut m = Mat::zeros(field, rep.dim(v), rep.dim(v));
        for (col, &(_, word)) in a_mod.coords[v].iter().enumerate() {
            // (word)·w in the algebra
            let prod = {
                let mut out = vec![field.zero(); algebra.dim()];
                for (k, c) in &algebra.algebra().mult[word][w] {
                    out[*k] = c.clone();
                }
                out
            };
            for (k, c) in prod.iter().enumerate() {
                if field.is_zero(c) {
                    continue;
                }
                let flat = flat_of[k];
                debug_assert!(flat >= rep.offset(v) && flat < rep.offset(v) + rep.dim(v));
                m.set(flat - rep.offset(v), col, c.clone());
            }
        }
        mats.push(m);
    }
    let mm = ModuleMap::new_unchecked(rep.clone(), rep.clone(), mats);
    debug_assert!(mm.check_intertwining().is_ok());
    mm
}

/// Right multiplication by `f(w)` on `B` as a left module.
fn right_mult_on_b(f: &RingEpi, w: usize) -> Result<ModuleMap> {

    let fw = f.matrix().column(w);
    let right = f.target().right_mult_matrix(&fw);
    let b = f.b_module();
    let mut mats = Vec::new();
    for v in 0..f.source().vertex_count() {
        let moved = right.mul(&f.vertex_embed()[v]);
        let (sol, _) = f.vertex_embed()[v].solve_and_kernel(&moved);
        let sol = sol.ok_or_else(|| {
            Error::Invalid("internal: right multiplication leaves the vertex block".into())
        })?;
        mats.push(sol);
    }
    let mm = ModuleMap::new_unchecked(b.clone(), b.clone(), mats);
    mm.check_intertwining()?;
    Ok(mm)
}

//! Chern-class 3-cocycles of induced representations.
//!
//! Two independent constructions are provided and cross-validated:
//! - the Riemann-Roch route: 12 beta^{-1} c_2(Ind phi) represented by
//!   6 (Tr(phi) cup beta(Tr phi) - Tr(phi cup beta phi));
//! - the Evens-norm route: the explicit degree-4 norm cocycle plus the
//!   c_1(pi) correction term, pushed through the inverse Bockstein.
//!
//! For subgroups of index <= 2 the permutation representation pi = Ind(1)
//! splits as 1 + sign, so c_2(pi) = 0 and the Evens route yields a cocycle
//! representing beta^{-1} c_2(Ind phi) on the nose, not just its 12-multiple.

use crate::bockstein::{bockstein, bockstein_inverse_four, bockstein_one};
use crate::chains::{cup, Cochain, Ring};
use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::group::Subgroup;
use crate::homology::GroupHomology;
use crate::transfer::{evens_norm_four_cocycle, transfer_cochain};

/// A subgroup H of G together with a one-dimensional representation of H,
/// regarded as a Q/Z-valued character.
#[derive(Clone)]
pub struct InducedRepSpec {
    pub subgroup: Subgroup,
    pub phi: Cochain,
}

impl InducedRepSpec {
    pub fn new(subgroup: Subgroup, phi: Cochain) -> Result<InducedRepSpec> {
        if phi.group != *subgroup.as_group() || phi.degree != 1 || phi.ring != Ring::QmodZ {
            return Err(Error::BadInput(
                "phi must be a Q/Z 1-cochain on the subgroup".into(),
            ));
        }
        if !phi.is_cocycle(0) {
            return Err(Error::NotCocycle("phi must be a homomorphism".into()));
        }
        Ok(InducedRepSpec { subgroup, phi })
    }

    pub fn trivial_phi(subgroup: Subgroup) -> InducedRepSpec {
        let phi = Cochain::zero(subgroup.as_group(), 1, Ring::QmodZ);
        InducedRepSpec { subgroup, phi }
    }
}

/// An integer combination of induced one-dimensional representations over a
/// common parent group.
#[derive(Clone)]
pub struct VirtualBrauerRep {
    pub terms: Vec<(i64, InducedRepSpec)>,
}

impl VirtualBrauerRep {
    pub fn new(terms: Vec<(i64, InducedRepSpec)>) -> Result<VirtualBrauerRep> {
        if terms.is_empty() {
            return Err(Error::BadInput("virtual representation must be nonempty".into()));
        }
        let g = terms[0].1.subgroup.parent.clone();
        if terms.iter().any(|(_, s)| s.subgroup.parent != g) {
            return Err(Error::GroupMismatch("mixed parent groups"));
        }
        Ok(VirtualBrauerRep { terms })
    }
}

fn check_cocycle(c: Cochain, what: &str) -> Result<Cochain> {
    if !c.is_cocycle(100_000) {
        return Err(Error::Verification(format!("{what} is not a cocycle")));
    }
    Ok(c)
}

/// 6 ( Tr(phi) cup beta(Tr phi) - Tr(phi cup beta phi) ), a Q/Z 3-cocycle on
/// G whose class is 12 beta^{-1} c_2(Ind phi).
pub fn twelve_c2_cocycle(spec: &InducedRepSpec) -> Result<Cochain> {
    let h = &spec.subgroup;
    let tr_phi = transfer_cochain(h, &spec.phi)?;
    let a = cup(&tr_phi, &bockstein(&tr_phi)?)?;
    let b = transfer_cochain(h, &cup(&spec.phi, &bockstein(&spec.phi)?)?)?;
    check_cocycle(a.sub(&b)?.scale_int(6), "twelve_c2_cocycle output")
}

/// 2 Tr(phi) cup beta(Tr phi'), whose class is
/// 2 beta^{-1}( c_1(Ind phi) cup c_1(Ind phi') ).
pub fn two_c1c1_cocycle(spec: &InducedRepSpec, spec2: &InducedRepSpec) -> Result<Cochain> {
    if spec.subgroup.parent != spec2.subgroup.parent {
        return Err(Error::GroupMismatch("two_c1c1 factors over different groups"));
    }
    let a = transfer_cochain(&spec.subgroup, &spec.phi)?;
    let b = transfer_cochain(&spec2.subgroup, &spec2.phi)?;
    check_cocycle(cup(&a, &bockstein(&b)?)?.scale_int(2), "two_c1c1 output")
}

/// The virtual-representation formula
/// 6 sum_k n_k ( (sum_j n_j Tr phi_j) cup beta(Tr phi_k) - Tr(phi_k cup beta phi_k) ),
/// whose class is 12 beta^{-1} c_2(rho).
pub fn twelve_c2_virtual(rep: &VirtualBrauerRep) -> Result<Cochain> {
    let g = rep.terms[0].1.subgroup.parent.clone();
    let mut total_c1 = Cochain::zero(&g, 1, Ring::QmodZ);
    for (n, spec) in &rep.terms {
        total_c1 = total_c1.add(&transfer_cochain(&spec.subgroup, &spec.phi)?.scale_int(*n))?;
    }
    let mut acc = Cochain::zero(&g, 3, Ring::QmodZ);
    for (n, spec) in &rep.terms {
        let tr_k = transfer_cochain(&spec.subgroup, &spec.phi)?;
        let first = cup(&total_c1, &bockstein(&tr_k)?)?;
        let second = transfer_cochain(
            &spec.subgroup,
            &cup(&spec.phi, &bockstein(&spec.phi)?)?,
        )?;
        acc = acc.add(&first.sub(&second)?.scale_int(*n))?;
    }
    check_cocycle(acc.scale_int(6), "twelve_c2_virtual output")
}

/// The determinant character of the coset permutation representation:
/// eps(g) = 0 or 1/2 according to the parity of the permutation that g
/// induces on the cosets of H. Its Bockstein represents c_1(Ind 1).
pub fn sign_character(h: &Subgroup) -> Cochain {
    let parent = h.parent.clone();
    let parities: Vec<bool> = parent
        .elements()
        .map(|s| perm_is_odd(&h.coset_perm(s)))
        .collect();
    let eps = Cochain::from_fn(&parent, 1, Ring::QmodZ, move |t| {
        if parities[t[0] as usize] {
            Frac::new(1, 2)
        } else {
            Frac::ZERO
        }
    });
    assert!(eps.is_cocycle(0), "coset sign character must be a homomorphism");
    eps
}

fn perm_is_odd(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut odd = false;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}

/// The integral 2-cocycle Tr(beta phi) + beta(eps) representing c_1(Ind phi)
/// exactly (Evens' formula for the first Chern class of an induction).
pub fn induced_c1_cocycle(spec: &InducedRepSpec) -> Result<Cochain> {
    let tr = transfer_cochain(&spec.subgroup, &bockstein_one(&spec.phi))?;
    let beta_eps = bockstein(&sign_character(&spec.subgroup))?;
    tr.add(&beta_eps)
}

/// The integral 4-cocycle N(1 + c_1 phi) + c_1(pi) cup Tr(c_1 phi)
/// representing c_2(Ind phi) - c_2(pi). For [G:H] <= 2 the missing c_2(pi)
/// vanishes, so this represents c_2(Ind phi) exactly; in general c_2(pi) is
/// 12-torsion.
pub fn induced_c2_four_cocycle(spec: &InducedRepSpec) -> Result<Cochain> {
    let norm = evens_norm_four_cocycle(&spec.subgroup, &spec.phi)?;
    let beta_eps = bockstein(&sign_character(&spec.subgroup))?;
    let tr_c1 = transfer_cochain(&spec.subgroup, &bockstein_one(&spec.phi))?;
    let correction = cup(&beta_eps, &tr_c1)?;
    check_cocycle(norm.add(&correction)?, "induced_c2_four_cocycle output")
}

/// 12 beta^{-1} of the Evens-route 4-cocycle: the second construction of the
/// class of `twelve_c2_cocycle`.
pub fn twelve_c2_evens(spec: &InducedRepSpec) -> Result<Cochain> {
    let c4 = induced_c2_four_cocycle(spec)?;
    Ok(bockstein_inverse_four(&c4)?.scale_int(12))
}

/// beta^{-1} c_2(Ind phi) itself; only valid when c_2(pi) vanishes, i.e. for
/// subgroups of index <= 2 (or H = G, where c_2 of a character is zero).
pub fn beta_inv_c2_exact(spec: &InducedRepSpec) -> Result<Cochain> {
    if spec.subgroup.index() > 2 {
        return Err(Error::BadInput(
            "exact c_2 route requires [G:H] <= 2 (c_2 of the coset representation must vanish)"
                .into(),
        ));
    }
    let c4 = induced_c2_four_cocycle(spec)?;
    bockstein_inverse_four(&c4)
}

/// Multiplies a cocycle by the inverse of k modulo the class order:
/// k * [output] = [c] whenever gcd(k, ord) = 1 and ord * [c] = 0.
pub fn divide_class(gh: &GroupHomology, c: &Cochain, k: i64, ord: i64) -> Result<Cochain> {
    if ord <= 0 {
        return Err(Error::BadInput("class order must be positive".into()));
    }
    let (g, s, _) = crate::frac::egcd_i128(k as i128, ord as i128);
    if g != 1 {
        return Err(Error::BadInput(format!(
            "gcd({k}, {ord}) = {g} is not 1; the class cannot be divided by {k}"
        )));
    }
    if !gh.is_coboundary(&c.scale_int(ord))? {
        return Err(Error::Verification(format!(
            "class order assertion failed: {ord} * [c] != 0"
        )));
    }
    let u = (s.rem_euclid(ord as i128)) as i64;
    Ok(c.scale_int(u))
}

/// The standard pool of Chern-type cocycles used to enrich the H^3 generator
/// harvest: exact c_2 classes of index <= 2 cyclic subgroups and the
/// 12-multiples from all cyclic subgroups.
pub fn chern_cocycle_pool(gh: &GroupHomology) -> Result<Vec<Cochain>> {
    let g = &gh.group;
    let mut pool = Vec::new();
    let mut seen: Vec<Vec<u16>> = Vec::new();
    for x in g.elements().skip(1) {
        let sub = Subgroup::from_generators(g, &[x])?;
        if seen.contains(&sub.members) {
            continue;
        }
        seen.push(sub.members.clone());
        let phi = crate::homology::cyclic_faithful_character(&sub)?;
        let spec = InducedRepSpec::new(sub.clone(), phi)?;
        if sub.index() <= 2 {
            pool.push(beta_inv_c2_exact(&spec)?);
        }
        pool.push(twelve_c2_cocycle(&spec)?);
    }
    Ok(pool)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::pair;
    use crate::chains::BarChain;
    use crate::group::{make_cyclic, make_dihedral, make_quaternion, make_symmetric};
    use crate::homology::cyclic_faithful_character;

    fn spec_on(
        g: &crate::group::FiniteGroup,
        gens: &[u16],
    ) -> InducedRepSpec {
        let sub = Subgroup::from_generators(g, gens).unwrap();
        let phi = cyclic_faithful_character(&sub).unwrap();
        InducedRepSpec::new(sub, phi).unwrap()
    }

    #[test]
    fn full_subgroup_gives_coboundary() {
        // phi extends to G, so the class vanishes
        let g = make_cyclic(4);
        let spec = spec_on(&g, &[1]);
        let c = twelve_c2_cocycle(&spec).unwrap();
        let gh = GroupHomology::new(&g);
        assert!(gh.is_coboundary(&c).unwrap());
    }

    #[test]
    fn trivial_phi_gives_zero() {
        let g = make_dihedral(3);
        let sub = Subgroup::from_generators(&g, &[1]).unwrap();
        let spec = InducedRepSpec::trivial_phi(sub);
        let c = twelve_c2_cocycle(&spec).unwrap();
        assert!(c.dense_values().unwrap().iter().all(|v| v.is_zero()));
    }

    #[test]
    fn d5_class_has_order_five() {
        let g = make_dihedral(5);
        let spec = spec_on(&g, &[1]); // H = Z/5
        let c = twelve_c2_cocycle(&spec).unwrap();
        let gh = GroupHomology::new(&g);
        assert_eq!(gh.class_order(&c).unwrap(), 5);
    }

    #[test]
    fn two_c1c1_lens_pairing() {
        // spec = spec2 on G = Z/n with H = G: pairing with the lens cycle is 2/n
        for n in [3usize, 5] {
            let g = make_cyclic(n);
            let spec = spec_on(&g, &[1]);
            let c = two_c1c1_cocycle(&spec, &spec).unwrap();
            let mut terms = Vec::new();
            for i in 0..n as u16 {
                terms.push((1i128, vec![1u16, i, 1]));
            }
            let z = BarChain::new(&g, 3, terms);
            assert_eq!(pair(&c, &z).unwrap(), Frac::new(2, n as i64).mod_one());
        }
    }

    #[test]
    fn two_c1c1_vanishes_on_trivial_factor() {
        let g = make_cyclic(4);
        let spec = spec_on(&g, &[1]);
        let triv = InducedRepSpec::trivial_phi(Subgroup::full(&g));
        let c = two_c1c1_cocycle(&spec, &triv).unwrap();
        assert!(c.dense_values().unwrap().iter().all(|v| v.is_zero()));
    }

    #[test]
    fn two_c1c1_symmetry_up_to_coboundary() {
        let g = make_cyclic(4);
        let s1 = spec_on(&g, &[1]);
        let s2 = spec_on(&g, &[2]);
        let a = two_c1c1_cocycle(&s1, &s2).unwrap();
        let b = two_c1c1_cocycle(&s2, &s1).unwrap();
        // c_1 classes are even-degree, so the two products agree up to coboundary
        let gh = GroupHomology::new(&g);
        assert!(gh.classes_equal(&a, &b).unwrap());
    }

    #[test]
    fn virtual_single_term_matches() {
        let g = make_dihedral(3);
        let spec = spec_on(&g, &[1]);
        let rep = VirtualBrauerRep::new(vec![(1, spec.clone())]).unwrap();
        let a = twelve_c2_virtual(&rep).unwrap();
        let b = twelve_c2_cocycle(&spec).unwrap();
        assert_eq!(a.dense_values().unwrap(), b.dense_values().unwrap());
    }

    #[test]
    fn virtual_zero_coefficients_give_zero() {
        let g = make_cyclic(6);
        let spec = spec_on(&g, &[1]);
        let rep = VirtualBrauerRep::new(vec![(0, spec)]).unwrap();
        let c = twelve_c2_virtual(&rep).unwrap();
        assert!(c.dense_values().unwrap().iter().all(|v| v.is_zero()));
    }

    #[test]
    fn whitney_two_term_expansion() {
        // [12 c2(rho + rho')] = [12 c2(rho)] + [12 c2(rho')] + 6 [2 c1 c1']
        let g = make_dihedral(3);
        let s1 = spec_on(&g, &[1]); // Z/3
        let s2 = spec_on(&g, &[3]); // a reflection subgroup Z/2
        let rep = VirtualBrauerRep::new(vec![(1, s1.clone()), (1, s2.clone())]).unwrap();
        let whole = twelve_c2_virtual(&rep).unwrap();
        let parts = twelve_c2_cocycle(&s1)
            .unwrap()
            .add(&twelve_c2_cocycle(&s2).unwrap())
            .unwrap()
            .add(&two_c1c1_cocycle(&s1, &s2).unwrap().scale_int(3))
            .unwrap()
            .add(&two_c1c1_cocycle(&s2, &s1).unwrap().scale_int(3))
            .unwrap();
        let gh = GroupHomology::new(&g);
        assert!(gh.classes_equal(&whole, &parts).unwrap());
    }

    #[test]
    fn sign_character_examples() {
        let g = make_cyclic(4);
        let h = Subgroup::from_generators(&g, &[2]).unwrap();
        let eps = sign_character(&h);
        assert_eq!(eps.eval(&[1]), Frac::new(1, 2));
        assert_eq!(eps.eval(&[2]), Frac::ZERO);

        let full = Subgroup::full(&g);
        let eps = sign_character(&full);
        assert!(eps.dense_values().unwrap().iter().all(|v| v.is_zero()));

        // on S3 with H = <3-cycle>, eps is the sign character
        let s3 = make_symmetric(3);
        let r = s3.elements().find(|&x| s3.element_order(x) == 3).unwrap();
        let h = Subgroup::from_generators(&s3, &[r]).unwrap();
        let eps = sign_character(&h);
        for x in s3.elements() {
            let odd = s3.element_order(x) == 2;
            assert_eq!(eps.eval(&[x]), if odd { Frac::new(1, 2) } else { Frac::ZERO });
        }
    }

    #[test]
    fn evens_route_agrees_with_riemann_roch_on_z4() {
        let g = make_cyclic(4);
        let spec = spec_on(&g, &[2]);
        let a = twelve_c2_cocycle(&spec).unwrap();
        let b = twelve_c2_evens(&spec).unwrap();
        let gh = GroupHomology::new(&g);
        assert!(gh.classes_equal(&a, &b).unwrap());
    }

    #[test]
    fn exact_c2_on_q8_generates_h3() {
        let q8 = make_quaternion(2);
        let spec = spec_on(&q8, &[1]); // <x> of index 2
        let c = beta_inv_c2_exact(&spec).unwrap();
        let gh = GroupHomology::new(&q8);
        assert_eq!(gh.class_order(&c).unwrap(), 8);
    }

    #[test]
    fn divide_class_examples() {
        let g = make_dihedral(5);
        let gh = GroupHomology::new(&g);
        let spec = spec_on(&g, &[1]);
        let c = twelve_c2_cocycle(&spec).unwrap();
        // k = 1 is the identity
        let d = divide_class(&gh, &c, 1, 5).unwrap();
        assert_eq!(d.dense_values().unwrap(), c.dense_values().unwrap());
        // 12^{-1} = 3 mod 5
        let d = divide_class(&gh, &c, 12, 5).unwrap();
        assert_eq!(
            d.dense_values().unwrap(),
            c.scale_int(3).dense_values().unwrap()
        );
        // round trip: k * divide_class(c, k, ord) ~ c
        assert!(gh.classes_equal(&d.scale_int(12), &c).unwrap());
        // gcd failure
        assert!(divide_class(&gh, &c, 10, 5).is_err());
    }

    #[test]
    fn chern_pool_spans_q8_generators() {
        let q8 = make_quaternion(2);
        let gh = GroupHomology::new(&q8);
        let pool = chern_cocycle_pool(&gh).unwrap();
        let gens = gh.cocycle_generators(&pool).unwrap();
        assert!(!gens.is_empty());
    }
}

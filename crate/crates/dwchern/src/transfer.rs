//! Transfer (corestriction) on cochains by coset walks, the dual chain-level
//! transfer used for coverings, and the Evens-norm 4-cocycle.
//!
//! The walk for a tuple (s_1..s_n) and transversal entry t sets t_0 = t and
//! h_k = t_{k-1} s_k * rep(t_{k-1} s_k)^{-1} in H, t_k = rep(t_{k-1} s_k).
//! This makes the cochain transfer a chain map on the nose and the chain
//! transfer its exact adjoint.

use crate::bockstein::bockstein_one;
use crate::chains::{pair, BarChain, Cochain, Ring};
use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::group::{monomial_representation, Subgroup};

fn walk(h: &Subgroup, start: u16, tuple: &[u16]) -> Vec<u16> {
    let g = &h.parent;
    let mut t = start;
    let mut out = Vec::with_capacity(tuple.len());
    for &s in tuple {
        let u = g.mul(t, s);
        out.push(h.h_part(u));
        t = h.coset_rep(u);
    }
    out
}

/// Coset-walk transfer of a degree 1..=3 cochain on H to one on G.
pub fn transfer_cochain(h: &Subgroup, psi: &Cochain) -> Result<Cochain> {
    if psi.group != *h.as_group() {
        return Err(Error::GroupMismatch("cochain is not on the subgroup"));
    }
    if psi.degree == 0 || psi.degree > 3 {
        return Err(Error::BadInput(format!(
            "transfer supports degrees 1..=3, got {}",
            psi.degree
        )));
    }
    let hh = h.clone();
    let p = psi.clone();
    Ok(Cochain::from_fn(
        &h.parent.clone(),
        psi.degree,
        psi.ring,
        move |t| {
            let mut acc = Frac::ZERO;
            for &start in &hh.transversal {
                acc = acc.add(&p.eval(&walk(&hh, start, t)));
            }
            acc
        },
    ))
}

/// Chain-level transfer: each term [s_1|..|s_n] contributes one walked term
/// per transversal entry. Input must be a cycle.
pub fn chain_transfer(h: &Subgroup, z: &BarChain) -> Result<BarChain> {
    if z.group != h.parent {
        return Err(Error::GroupMismatch("chain is not on the parent group"));
    }
    if !z.is_cycle() {
        return Err(Error::NotCycle("chain_transfer input".into()));
    }
    let mut terms = Vec::with_capacity(z.terms.len() * h.transversal.len());
    for (c, t) in &z.terms {
        for &start in &h.transversal {
            terms.push((*c, walk(h, start, t)));
        }
    }
    Ok(BarChain::new(h.as_group(), z.degree, terms))
}

/// The degree-4 norm cocycle of a one-dimensional character phi on H, pulled
/// back to G along the monomial representation. The value at (s1,s2,s3,s4)
/// sums, over ordered pairs of distinct strands i != j, the product of
/// c1(phi) read along strand i of the first two letters and along strand j of
/// the last two.
pub fn evens_norm_four_cocycle(h: &Subgroup, phi: &Cochain) -> Result<Cochain> {
    if phi.group != *h.as_group() || phi.degree != 1 || phi.ring != Ring::QmodZ {
        return Err(Error::BadInput(
            "evens norm needs a Q/Z 1-cochain on the subgroup".into(),
        ));
    }
    if !phi.is_cocycle(0) {
        return Err(Error::NotCocycle("evens norm needs a homomorphism".into()));
    }
    let rep = monomial_representation(h);
    let c1 = bockstein_one(phi);
    let d = rep.wreath.d;
    let g = h.parent.clone();
    let out = Cochain::from_fn(&g.clone(), 4, Ring::Int, move |t| {
        let w1 = rep.apply(t[0]);
        let w2 = rep.apply(t[1]);
        let w3 = rep.apply(t[2]);
        let w4 = rep.apply(t[3]);
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> {
            (0..d).map(|i| p[q[i]]).collect()
        };
        let invert = |p: &[usize]| -> Vec<usize> {
            let mut o = vec![0usize; d];
            for (i, &v) in p.iter().enumerate() {
                o[v] = i;
            }
            o
        };
        // strand i reads letter k of the word at the index given by the
        // inverse of the product of the strictly preceding permutations;
        // adjacent bar faces then merge strand letters multiplicatively
        let p1i = invert(&w1.perm);
        let p12 = compose(&w1.perm, &w2.perm);
        let p12i = invert(&p12);
        let p123i = invert(&compose(&p12, &w3.perm));
        let mut acc = Frac::ZERO;
        for i in 0..d {
            let first = c1.eval(&[w1.vec[i], w2.vec[p1i[i]]]);
            if first.is_zero() {
                continue;
            }
            for j in 0..d {
                if i == j {
                    continue;
                }
                let second = c1.eval(&[w3.vec[p12i[j]], w4.vec[p123i[j]]]);
                acc = acc.add(&first.mul(&second));
            }
        }
        acc
    });
    if !out.is_cocycle(100_000) {
        return Err(Error::Verification(
            "evens norm output failed the 4-cocycle check".into(),
        ));
    }
    Ok(out)
}

/// Exact adjunction <Tr psi, z> = <psi, Tr z>, available as a helper for
/// covering-route evaluations.
pub fn transfer_pairing(h: &Subgroup, psi: &Cochain, z: &BarChain) -> Result<Frac> {
    pair(&transfer_cochain(h, psi)?, z)
}

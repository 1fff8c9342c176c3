//! Bockstein maps for 0 -> Z -> Q -> Q/Z -> 0, in both directions.
//!
//! The canonical lift of a Q/Z value is always its representative in [0,1);
//! no other section is offered.

use crate::chains::{coboundary, index_tuple, tuple_count, Cochain, Ring};
use crate::error::{Error, Result};
use crate::frac::Frac;

/// The explicit degree-1 formula: beta(phi)(g,h) = 1 if the canonical lifts
/// satisfy phi(g) + phi(h) >= 1, else 0. Applied pointwise; when phi is a
/// homomorphism the output is a 2-cocycle.
pub fn bockstein_one(phi: &Cochain) -> Cochain {
    assert_eq!(phi.degree, 1, "bockstein_one takes 1-cochains");
    assert_eq!(phi.ring, Ring::QmodZ);
    let p = phi.clone();
    Cochain::from_fn(&phi.group, 2, Ring::Int, move |t| {
        let s = p.eval(&t[..1]).add(&p.eval(&t[1..]));
        if s >= Frac::ONE {
            Frac::ONE
        } else {
            Frac::ZERO
        }
    })
}

/// The connecting map: lift a Q/Z n-cocycle to Q canonically and take the
/// coboundary; the output is integral because the input is a cocycle.
pub fn bockstein(c: &Cochain) -> Result<Cochain> {
    if c.ring != Ring::QmodZ {
        return Err(Error::RingMismatch("bockstein needs Q/Z coefficients".into()));
    }
    if !c.is_cocycle(100_000) {
        return Err(Error::NotCocycle("bockstein input".into()));
    }
    let lifted = coboundary(&c.lift_to_rat())?;
    let out = Cochain::from_fn(&c.group, c.degree + 1, Ring::Int, move |t| {
        let v = lifted.eval(t);
        assert!(v.is_integer(), "bockstein output not integral at {t:?}");
        v
    });
    if out.is_dense() {
        // force evaluation so the integrality assertion runs now
        let _ = out.dense_values()?;
    }
    Ok(out)
}

/// Inverse Bockstein for integral 4-cocycles by averaging over the first
/// argument: (g1,g2,g3) -> sum_g C4(g,g1,g2,g3) / |G| mod 1.
///
/// Summing the cocycle identity of C4 over its first argument gives
/// delta(S) = |G| * C4 exactly for S(g1,g2,g3) = sum_g C4(g,g1,g2,g3), so
/// S/|G| mod 1 is a Q/Z 3-cocycle whose Bockstein is cohomologous to C4.
pub fn bockstein_inverse_four(c4: &Cochain) -> Result<Cochain> {
    if c4.degree != 4 || c4.ring != Ring::Int {
        return Err(Error::BadInput("bockstein_inverse_four takes integral 4-cochains".into()));
    }
    if !c4.is_cocycle(100_000) {
        return Err(Error::NotCocycle("bockstein_inverse_four input".into()));
    }
    let g = c4.group.clone();
    let n = g.order();
    let c = c4.clone();
    let out = Cochain::from_fn(&c4.group, 3, Ring::QmodZ, move |t| {
        let mut sum = Frac::ZERO;
        let mut tuple = [0u16; 4];
        tuple[1] = t[0];
        tuple[2] = t[1];
        tuple[3] = t[2];
        for x in 0..n as u16 {
            tuple[0] = x;
            sum = sum.add(&c.eval(&tuple));
        }
        Frac::new(sum.num(), n as i64)
    });
    debug_assert!(out.is_cocycle(100_000));
    Ok(out)
}

//! Non-homogeneous bar-complex chains and cochains.
//!
//! Cochains are total functions G^n -> A for A one of Z, Q, Q/Z, stored dense
//! (index sum_k t_k |G|^k) below [`DENSE_LIMIT`] entries and as lazy closures
//! above. No normalization is assumed: values on tuples containing the
//! identity may be nonzero.

use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::group::{FiniteGroup, GroupHom};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Dense cochain tables are materialized up to this many entries.
pub const DENSE_LIMIT: usize = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ring {
    Int,
    Rat,
    QmodZ,
}

impl Ring {
    /// Bring a raw value into the ring's canonical form.
    pub fn normalize(&self, v: Frac) -> Frac {
        match self {
            Ring::QmodZ => v.mod_one(),
            _ => v,
        }
    }

    fn check(&self, v: &Frac) -> bool {
        match self {
            Ring::Int => v.is_integer(),
            Ring::Rat => true,
            Ring::QmodZ => Frac::ZERO <= *v && *v < Frac::ONE,
        }
    }
}

#[derive(Clone)]
enum Data {
    Dense(Arc<Vec<Frac>>),
    Lazy(Arc<dyn Fn(&[u16]) -> Frac + Send + Sync>),
}

/// A degree-n cochain on a finite group.
#[derive(Clone)]
pub struct Cochain {
    pub group: FiniteGroup,
    pub degree: usize,
    pub ring: Ring,
    data: Data,
}

pub fn tuple_count(order: usize, degree: usize) -> usize {
    order.pow(degree as u32)
}

pub fn tuple_index(order: usize, tuple: &[u16]) -> usize {
    let mut idx = 0usize;
    for &t in tuple.iter().rev() {
        idx = idx * order + t as usize;
    }
    idx
}

pub fn index_tuple(order: usize, degree: usize, mut idx: usize) -> Vec<u16> {
    let mut out = Vec::with_capacity(degree);
    for _ in 0..degree {
        out.push((idx % order) as u16);
        idx /= order;
    }
    out
}

impl Cochain {
    pub fn zero(group: &FiniteGroup, degree: usize, ring: Ring) -> Cochain {
        Cochain {
            group: group.clone(),
            degree,
            ring,
            data: Data::Dense(Arc::new(vec![Frac::ZERO; tuple_count(group.order(), degree)])),
        }
    }

    /// Materializes a dense table when it fits, otherwise stores the closure.
    pub fn from_fn<F>(group: &FiniteGroup, degree: usize, ring: Ring, f: F) -> Cochain
    where
        F: Fn(&[u16]) -> Frac + Send + Sync + 'static,
    {
        let n = group.order();
        let count = tuple_count(n, degree);
        if count <= DENSE_LIMIT {
            let table: Vec<Frac> = (0..count)
                .into_par_iter()
                .map(|idx| ring.normalize(f(&index_tuple(n, degree, idx))))
                .collect();
            Cochain {
                group: group.clone(),
                degree,
                ring,
                data: Data::Dense(Arc::new(table)),
            }
        } else {
            let ring2 = ring;
            Cochain {
                group: group.clone(),
                degree,
                ring,
                data: Data::Lazy(Arc::new(move |t| ring2.normalize(f(t)))),
            }
        }
    }

    pub fn from_table(group: &FiniteGroup, degree: usize, ring: Ring, table: Vec<Frac>) -> Result<Cochain> {
        if table.len() != tuple_count(group.order(), degree) {
            return Err(Error::BadInput("cochain table has wrong length".into()));
        }
        for v in &table {
            if !ring.check(v) {
                return Err(Error::BadInput(format!("value {v} not in ring {ring:?}")));
            }
        }
        Ok(Cochain {
            group: group.clone(),
            degree,
            ring,
            data: Data::Dense(Arc::new(table)),
        })
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.data, Data::Dense(_))
    }

    #[inline]
    pub fn eval(&self, tuple: &[u16]) -> Frac {
        debug_assert_eq!(tuple.len(), self.degree);
        match &self.data {
            Data::Dense(t) => t[tuple_index(self.group.order(), tuple)],
            Data::Lazy(f) => f(tuple),
        }
    }

    pub fn dense_values(&self) -> Result<Vec<Frac>> {
        match &self.data {
            Data::Dense(t) => Ok(t.as_ref().clone()),
            Data::Lazy(_) => Err(Error::SizeBound("cochain is lazy".into())),
        }
    }

    fn same_shape(&self, other: &Cochain) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch("cochains on different groups"));
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: other.degree,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.same_shape(other)?;
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!(
                "{:?} + {:?}",
                self.ring, other.ring
            )));
        }
        let (a, b, ring) = (self.clone(), other.clone(), self.ring);
        Ok(Cochain::from_fn(&self.group, self.degree, ring, move |t| {
            a.eval(t).add(&b.eval(t))
        }))
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.add(&other.scale_int(-1))
    }

    pub fn scale_int(&self, k: i64) -> Cochain {
        let a = self.clone();
        Cochain::from_fn(&self.group, self.degree, self.ring, move |t| {
            a.eval(t).mul_int(k as i128)
        })
    }

    /// Reinterpret Q/Z values by their canonical lift in Q (or Z values in Q).
    pub fn lift_to_rat(&self) -> Cochain {
        let a = self.clone();
        Cochain::from_fn(&self.group, self.degree, Ring::Rat, move |t| a.eval(t))
    }

    /// Project Q or Z values into Q/Z.
    pub fn project_qmodz(&self) -> Cochain {
        let a = self.clone();
        Cochain::from_fn(&self.group, self.degree, Ring::QmodZ, move |t| a.eval(t))
    }

    /// Exhaustively checks the cocycle condition when the (n+1)-tuple space is
    /// enumerable, otherwise samples `fallback_samples` tuples deterministically.
    pub fn is_cocycle(&self, fallback_samples: usize) -> bool {
        let n = self.group.order();
        let deg = self.degree;
        let count = n.checked_pow(deg as u32 + 1);
        match count {
            Some(c) if c <= DENSE_LIMIT => (0..c).into_par_iter().all(|idx| {
                let t = index_tuple(n, deg + 1, idx);
                coboundary_eval(self, &t).is_zero()
            }),
            _ => {
                use rand::{Rng, SeedableRng};
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
                (0..fallback_samples).all(|_| {
                    let t: Vec<u16> = (0..deg + 1).map(|_| rng.gen_range(0..n as u16)).collect();
                    coboundary_eval(self, &t).is_zero()
                })
            }
        }
    }
}

/// delta c evaluated at a single (n+1)-tuple; result is in the ambient ring
/// before normalization (integral for Int, reduced mod 1 for QmodZ).
pub fn coboundary_eval(c: &Cochain, tuple: &[u16]) -> Frac {
    let n = c.degree;
    debug_assert_eq!(tuple.len(), n + 1);
    let g = &c.group;
    let mut acc = c.eval(&tuple[1..]);
    let mut face: Vec<u16> = Vec::with_capacity(n);
    for i in 1..=n {
        face.clear();
        face.extend_from_slice(&tuple[..i - 1]);
        face.push(g.mul(tuple[i - 1], tuple[i]));
        face.extend_from_slice(&tuple[i + 1..]);
        let v = c.eval(&face);
        acc = if i % 2 == 1 { acc.sub(&v) } else { acc.add(&v) };
    }
    let last = c.eval(&tuple[..n]);
    acc = if (n + 1) % 2 == 1 {
        acc.sub(&last)
    } else {
        acc.add(&last)
    };
    c.ring.normalize(acc)
}

/// The coboundary as a cochain; materialized only for degree <= 3 outputs
/// unless `lazy` is set.
pub fn coboundary(c: &Cochain) -> Result<Cochain> {
    if c.degree >= 4 {
        return coboundary_lazy(c);
    }
    let a = c.clone();
    Ok(Cochain::from_fn(
        &c.group,
        c.degree + 1,
        c.ring,
        move |t| coboundary_eval(&a, t),
    ))
}

pub fn coboundary_lazy(c: &Cochain) -> Result<Cochain> {
    let a = c.clone();
    let ring = c.ring;
    Ok(Cochain {
        group: c.group.clone(),
        degree: c.degree + 1,
        ring,
        data: Data::Lazy(Arc::new(move |t| coboundary_eval(&a, t))),
    })
}

/// A formal integer combination of bar tuples.
#[derive(Clone, Debug, PartialEq)]
pub struct BarChain {
    pub group: FiniteGroup,
    pub degree: usize,
    pub terms: Vec<(i128, Vec<u16>)>,
}

impl BarChain {
    pub fn new(group: &FiniteGroup, degree: usize, terms: Vec<(i128, Vec<u16>)>) -> BarChain {
        let mut map: BTreeMap<Vec<u16>, i128> = BTreeMap::new();
        for (c, t) in terms {
            assert_eq!(t.len(), degree, "bar term has wrong degree");
            debug_assert!(t.iter().all(|&x| (x as usize) < group.order()));
            *map.entry(t).or_insert(0) += c;
        }
        let terms = map
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(t, c)| (c, t))
            .collect();
        BarChain {
            group: group.clone(),
            degree,
            terms,
        }
    }

    pub fn zero(group: &FiniteGroup, degree: usize) -> BarChain {
        BarChain {
            group: group.clone(),
            degree,
            terms: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &BarChain) -> BarChain {
        assert_eq!(self.group, other.group);
        assert_eq!(self.degree, other.degree);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        BarChain::new(&self.group, self.degree, terms)
    }

    pub fn scale(&self, k: i128) -> BarChain {
        BarChain::new(
            &self.group,
            self.degree,
            self.terms.iter().map(|(c, t)| (c * k, t.clone())).collect(),
        )
    }

    pub fn neg(&self) -> BarChain {
        self.scale(-1)
    }

    pub fn is_cycle(&self) -> bool {
        boundary(self).is_zero()
    }
}

/// Alternating-sum bar boundary; the boundary of degree-1 chains is zero.
pub fn boundary(z: &BarChain) -> BarChain {
    let n = z.degree;
    if n <= 1 {
        return BarChain::zero(&z.group, n.saturating_sub(1));
    }
    let g = z.group.clone();
    let mut terms: Vec<(i128, Vec<u16>)> = Vec::with_capacity(z.terms.len() * (n + 1));
    for (c, t) in &z.terms {
        terms.push((*c, t[1..].to_vec()));
        for i in 1..n {
            let mut face = Vec::with_capacity(n - 1);
            face.extend_from_slice(&t[..i - 1]);
            face.push(g.mul(t[i - 1], t[i]));
            face.extend_from_slice(&t[i + 1..]);
            let sign = if i % 2 == 1 { -1 } else { 1 };
            terms.push((c * sign, face));
        }
        let sign = if n % 2 == 1 { -1 } else { 1 };
        terms.push((c * sign, t[..n - 1].to_vec()));
    }
    BarChain::new(&z.group, n - 1, terms)
}

/// Alexander-Whitney cup product for the supported coefficient pairings.
pub fn cup(a: &Cochain, b: &Cochain) -> Result<Cochain> {
    if a.group != b.group {
        return Err(Error::GroupMismatch("cup factors on different groups"));
    }
    let ring = match (a.ring, b.ring) {
        (Ring::Int, Ring::Int) => Ring::Int,
        (Ring::Int, Ring::QmodZ) | (Ring::QmodZ, Ring::Int) => Ring::QmodZ,
        (Ring::Rat, Ring::Rat) | (Ring::Rat, Ring::Int) | (Ring::Int, Ring::Rat) => Ring::Rat,
        (x, y) => {
            return Err(Error::RingMismatch(format!("no pairing {x:?} x {y:?}")));
        }
    };
    let (p, q) = (a.degree, b.degree);
    let (ac, bc) = (a.clone(), b.clone());
    Ok(Cochain::from_fn(&a.group, p + q, ring, move |t| {
        ac.eval(&t[..p]).mul(&bc.eval(&t[p..]))
    }))
}

/// <c, z> = sum of coeff * c(tuple) in the cochain's ring.
pub fn pair(c: &Cochain, z: &BarChain) -> Result<Frac> {
    if c.group != z.group {
        return Err(Error::GroupMismatch("pairing across different groups"));
    }
    if c.degree != z.degree {
        return Err(Error::DegreeMismatch {
            expected: c.degree,
            got: z.degree,
        });
    }
    let mut acc = Frac::ZERO;
    for (coeff, t) in &z.terms {
        acc = acc.add(&c.eval(t).mul_int(*coeff));
    }
    Ok(c.ring.normalize(acc))
}

/// Entrywise application of a homomorphism to bar tuples.
pub fn pushforward_chain(f: &GroupHom, z: &BarChain) -> Result<BarChain> {
    if f.source != z.group {
        return Err(Error::GroupMismatch("pushforward source mismatch"));
    }
    Ok(BarChain::new(
        &f.target,
        z.degree,
        z.terms
            .iter()
            .map(|(c, t)| (*c, t.iter().map(|&x| f.apply(x)).collect()))
            .collect(),
    ))
}

/// Precomposition of a cochain with a homomorphism.
pub fn pullback_cochain(f: &GroupHom, c: &Cochain) -> Result<Cochain> {
    if f.target != c.group {
        return Err(Error::GroupMismatch("pullback target mismatch"));
    }
    let f = f.clone();
    let c2 = c.clone();
    Ok(Cochain::from_fn(
        &f.source.clone(),
        c.degree,
        c.ring,
        move |t| {
            let mapped: Vec<u16> = t.iter().map(|&x| f.apply(x)).collect();
            c2.eval(&mapped)
        },
    ))
}

/// Random dense cochain with denominators dividing `den`, for tests and
/// randomized property suites.
pub fn random_cochain(
    group: &FiniteGroup,
    degree: usize,
    ring: Ring,
    den: i64,
    rng: &mut impl rand::Rng,
) -> Cochain {
    let count = tuple_count(group.order(), degree);
    assert!(count <= DENSE_LIMIT);
    let table = (0..count)
        .map(|_| {
            let num = rng.gen_range(-(2 * den)..=2 * den);
            let v = match ring {
                Ring::Int => Frac::from_int(num),
                _ => Frac::new(num, den),
            };
            ring.normalize(v)
        })
        .collect();
    Cochain::from_table(group, degree, ring, table).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_cyclic, make_dihedral, make_symmetric};
    use rand::SeedableRng;

    fn phi_cochain(n: usize) -> Cochain {
        // the inclusion character k -> k/n on Z/n
        let g = make_cyclic(n);
        Cochain::from_fn(&g, 1, Ring::QmodZ, move |t| Frac::new(t[0] as i64, n as i64))
    }

    #[test]
    fn coboundary_of_character_vanishes() {
        let phi = phi_cochain(2);
        let d = coboundary(&phi).unwrap();
        assert!(d.eval(&[1, 1]).is_zero());
        assert!(phi.is_cocycle(0));
    }

    #[test]
    fn coboundary_of_zero_is_zero() {
        let g = make_symmetric(3);
        let z = Cochain::zero(&g, 1, Ring::QmodZ);
        let d = coboundary(&z).unwrap();
        for idx in 0..36 {
            assert!(d.eval(&index_tuple(6, 2, idx)).is_zero());
        }
    }

    #[test]
    fn delta_delta_is_zero_on_random_cochains() {
        let g = make_symmetric(3);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let c = random_cochain(&g, 1, Ring::QmodZ, 6, &mut rng);
            let dd = coboundary(&coboundary(&c).unwrap()).unwrap();
            assert!(dd.dense_values().unwrap().iter().all(|v| v.is_zero()));
        }
    }

    #[test]
    fn telescoping_boundary() {
        let g = make_cyclic(2);
        let z = BarChain::new(&g, 3, vec![(1, vec![1, 0, 1]), (1, vec![1, 1, 1])]);
        assert!(boundary(&z).is_zero());
    }

    #[test]
    fn degree_one_boundary_is_zero() {
        let g = make_cyclic(3);
        let z = BarChain::new(&g, 1, vec![(1, vec![2])]);
        assert!(boundary(&z).is_zero());
    }

    #[test]
    fn boundary_boundary_is_zero() {
        let g = make_dihedral(3);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        use rand::Rng;
        for _ in 0..20 {
            let terms: Vec<(i128, Vec<u16>)> = (0..8)
                .map(|_| {
                    (
                        rng.gen_range(-3i128..=3),
                        (0..3).map(|_| rng.gen_range(0..6u16)).collect(),
                    )
                })
                .collect();
            let z = BarChain::new(&g, 3, terms);
            assert!(boundary(&boundary(&z)).is_zero());
        }
    }

    #[test]
    fn cup_unit() {
        let g = make_cyclic(4);
        let one = Cochain::from_fn(&g, 0, Ring::Int, |_| Frac::ONE);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let b = random_cochain(&g, 2, Ring::QmodZ, 4, &mut rng);
        let ab = cup(&one, &b).unwrap();
        assert_eq!(ab.dense_values().unwrap(), b.dense_values().unwrap());
    }

    #[test]
    fn cup_rejects_qmodz_squared() {
        let g = make_cyclic(2);
        let a = Cochain::zero(&g, 1, Ring::QmodZ);
        assert!(cup(&a, &a).is_err());
    }

    #[test]
    fn leibniz_rule() {
        let g = make_cyclic(6);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let a = random_cochain(&g, 1, Ring::Int, 1, &mut rng);
            let b = random_cochain(&g, 1, Ring::QmodZ, 6, &mut rng);
            let lhs = coboundary(&cup(&a, &b).unwrap()).unwrap();
            let da_b = cup(&coboundary(&a).unwrap(), &b).unwrap();
            let a_db = cup(&a, &coboundary(&b).unwrap()).unwrap().scale_int(-1);
            let rhs = da_b.add(&a_db).unwrap();
            assert_eq!(
                lhs.dense_values().unwrap(),
                rhs.dense_values().unwrap(),
                "Leibniz fails"
            );
        }
    }

    #[test]
    fn pairing_adjunction() {
        let g = make_dihedral(3);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        use rand::Rng;
        for _ in 0..20 {
            let c = random_cochain(&g, 2, Ring::QmodZ, 6, &mut rng);
            let terms: Vec<(i128, Vec<u16>)> = (0..6)
                .map(|_| {
                    (
                        rng.gen_range(-2i128..=2),
                        (0..3).map(|_| rng.gen_range(0..6u16)).collect(),
                    )
                })
                .collect();
            let z = BarChain::new(&g, 3, terms);
            let lhs = pair(&coboundary(&c).unwrap(), &z).unwrap();
            let rhs = pair(&c, &boundary(&z)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn pairing_with_empty_chain() {
        let g = make_cyclic(5);
        let c = Cochain::zero(&g, 3, Ring::QmodZ);
        let z = BarChain::zero(&g, 3);
        assert!(pair(&c, &z).unwrap().is_zero());
    }

    #[test]
    fn lens_style_pairing_value() {
        // <phi cup beta(phi), [g|g^0|g] + [g|g|g]> = 1/2 on Z/2
        let g = make_cyclic(2);
        let phi = phi_cochain(2);
        let beta = crate::bockstein::bockstein_one(&phi);
        let c = cup(&phi, &beta).unwrap();
        assert_eq!(c.eval(&[1, 1, 1]), Frac::new(1, 2));
        let z = BarChain::new(&g, 3, vec![(1, vec![1, 0, 1]), (1, vec![1, 1, 1])]);
        assert_eq!(pair(&c, &z).unwrap(), Frac::new(1, 2));
    }

    #[test]
    fn pushforward_and_naturality() {
        let z2 = make_cyclic(2);
        let z4 = make_cyclic(4);
        let f = GroupHom::new(z2.clone(), z4.clone(), vec![0, 2]).unwrap();
        let z = BarChain::new(&z2, 3, vec![(1, vec![1, 1, 1])]);
        let fz = pushforward_chain(&f, &z).unwrap();
        assert_eq!(fz.terms, vec![(1, vec![2, 2, 2])]);

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..10 {
            let c = random_cochain(&z4, 3, Ring::QmodZ, 4, &mut rng);
            let lhs = pair(&pullback_cochain(&f, &c).unwrap(), &z).unwrap();
            let rhs = pair(&c, &fz).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn aw_cup_is_associative() {
        let g = make_cyclic(4);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let a = random_cochain(&g, 1, Ring::Int, 1, &mut rng);
            let b = random_cochain(&g, 1, Ring::Int, 1, &mut rng);
            let c = random_cochain(&g, 1, Ring::QmodZ, 4, &mut rng);
            let l = cup(&cup(&a, &b).unwrap(), &c).unwrap();
            let r = cup(&a, &cup(&b, &c).unwrap()).unwrap();
            assert_eq!(l.dense_values().unwrap(), r.dense_values().unwrap());
        }
    }
}

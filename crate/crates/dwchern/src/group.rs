//! Finite groups as immutable multiplication tables, subgroups with coset
//! transversals, homomorphisms, wreath products and monomial representations.
//!
//! Element indexing conventions are part of the public contract:
//! - cyclic Z/n: element `k` at index `k`;
//! - dihedral D_n (order 2n): rotations `r^k` at `k`, reflections `s r^k` at `n + k`;
//! - quaternion Q_4n: normal form `x^a y^b` at `b*2n + a`, `0 <= a < 2n`, `b in {0,1}`;
//! - symmetric S_d: permutations in lexicographic rank of their image words;
//! - SL2(F_q): matrices `[[a,b],[c,d]]` of determinant 1 in row-major lex order;
//! - wreath H^d x S_d: `perm_rank * |H|^d + sum h_i |H|^i`.

use crate::error::{Error, Result};
use crate::frac::Frac;
use std::collections::HashMap;
use std::sync::Arc;

/// Eager tables are refused above this order; wreath groups beyond it are
/// usable only through [`Wreath`] element arithmetic.
pub const EAGER_GROUP_LIMIT: usize = 4096;

/// Full associativity is checked at construction up to this order, sampled above.
const FULL_ASSOC_LIMIT: usize = 48;

#[derive(Debug)]
struct GroupData {
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    labels: Option<Vec<String>>,
    name: String,
}

/// A finite group as an immutable multiplication table; index 0 is the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup(Arc<GroupData>);

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.order == other.0.order && self.0.mul == other.0.mul)
    }
}
impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table, verifying the
    /// group axioms (associativity exhaustively up to order 48, sampled above).
    pub fn from_table(order: usize, mul: Vec<u16>, name: String) -> Result<FiniteGroup> {
        if order == 0 {
            return Err(Error::BadInput("group order must be positive".into()));
        }
        if order > EAGER_GROUP_LIMIT {
            return Err(Error::SizeBound(format!(
                "order {order} exceeds eager table limit {EAGER_GROUP_LIMIT}"
            )));
        }
        if mul.len() != order * order {
            return Err(Error::BadInput("multiplication table has wrong size".into()));
        }
        if mul.iter().any(|&x| x as usize >= order) {
            return Err(Error::BadInput("table entry out of range".into()));
        }
        for x in 0..order {
            if mul[x * order] as usize != x || mul[x] as usize != x {
                return Err(Error::BadInput("index 0 is not an identity".into()));
            }
        }
        let mut inv = vec![u16::MAX; order];
        for x in 0..order {
            for y in 0..order {
                if mul[x * order + y] == 0 {
                    if mul[y * order + x] != 0 {
                        return Err(Error::BadInput("one-sided inverse".into()));
                    }
                    inv[x] = y as u16;
                }
            }
            if inv[x] == u16::MAX {
                return Err(Error::BadInput(format!("element {x} has no inverse")));
            }
        }
        let at = |a: usize, b: usize| mul[a * order + b] as usize;
        if order <= FULL_ASSOC_LIMIT {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        if at(at(a, b), c) != at(a, at(b, c)) {
                            return Err(Error::BadInput(format!(
                                "associativity fails at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            // deterministic sample: stride through the cube
            let step = (order * order * order / 100_000).max(1);
            let mut i = 0usize;
            while i < order * order * order {
                let a = i / (order * order);
                let b = (i / order) % order;
                let c = i % order;
                if at(at(a, b), c) != at(a, at(b, c)) {
                    return Err(Error::BadInput(format!(
                        "associativity fails at ({a},{b},{c})"
                    )));
                }
                i += step;
            }
        }
        Ok(FiniteGroup(Arc::new(GroupData {
            order,
            mul,
            inv,
            labels: None,
            name,
        })))
    }

    fn with_labels(self, labels: Vec<String>) -> FiniteGroup {
        let data = Arc::try_unwrap(self.0).unwrap_or_else(|arc| GroupData {
            order: arc.order,
            mul: arc.mul.clone(),
            inv: arc.inv.clone(),
            labels: arc.labels.clone(),
            name: arc.name.clone(),
        });
        FiniteGroup(Arc::new(GroupData {
            labels: Some(labels),
            ..data
        }))
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.0.mul[a as usize * self.0.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.0.inv[a as usize]
    }

    pub fn identity(&self) -> u16 {
        0
    }

    pub fn label(&self, a: u16) -> String {
        match &self.0.labels {
            Some(ls) => ls[a as usize].clone(),
            None => a.to_string(),
        }
    }

    pub fn elements(&self) -> std::ops::Range<u16> {
        0..self.0.order as u16
    }

    pub fn element_order(&self, g: u16) -> usize {
        let mut x = g;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, g);
            n += 1;
        }
        n
    }

    /// Product of a word of signed 1-based generator letters under `images`.
    pub fn eval_word(&self, images: &[u16], word: &[i32]) -> u16 {
        let mut acc = 0u16;
        for &letter in word {
            let idx = (letter.unsigned_abs() as usize) - 1;
            let g = images[idx];
            let g = if letter < 0 { self.inv(g) } else { g };
            acc = self.mul(acc, g);
        }
        acc
    }

    pub fn conjugate(&self, g: u16, by: u16) -> u16 {
        self.mul(self.mul(by, g), self.inv(by))
    }
}

/// Z/n with element k at index k.
pub fn make_cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let mut mul = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            mul[a * n + b] = ((a + b) % n) as u16;
        }
    }
    let labels = (0..n).map(|k| format!("{k}")).collect();
    FiniteGroup::from_table(n, mul, format!("Z/{n}"))
        .expect("cyclic table is a group")
        .with_labels(labels)
}

/// D_n of order 2n; rotations first, then reflections.
pub fn make_dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let ord = 2 * n;
    let idx = |k: usize, e: usize| (e * n + k) as u16;
    let mut mul = vec![0u16; ord * ord];
    for k1 in 0..n {
        for e1 in 0..2 {
            for k2 in 0..n {
                for e2 in 0..2 {
                    // (r^k1 s^e1)(r^k2 s^e2) = r^(k1 + (-1)^e1 k2) s^(e1+e2)
                    let k = if e1 == 0 {
                        (k1 + k2) % n
                    } else {
                        (k1 + n - k2 % n) % n
                    };
                    let e = (e1 + e2) % 2;
                    mul[(idx(k1, e1) as usize) * ord + idx(k2, e2) as usize] = idx(k, e);
                }
            }
        }
    }
    let mut labels = Vec::with_capacity(ord);
    for e in 0..2 {
        for k in 0..n {
            labels.push(match (k, e) {
                (0, 0) => "e".to_string(),
                (k, 0) => format!("r{k}"),
                (0, _) => "s".to_string(),
                (k, _) => format!("sr{k}"),
            });
        }
    }
    FiniteGroup::from_table(ord, mul, format!("D{n}"))
        .expect("dihedral table is a group")
        .with_labels(labels)
}

/// Generalized quaternion Q_4n = <x, y | x^n = y^2, x y x = y>; element
/// x^a y^b at index b*2n + a.
pub fn make_quaternion(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let ord = 4 * n;
    let m = 2 * n;
    let idx = |a: usize, b: usize| (b * m + a) as u16;
    let mut mul = vec![0u16; ord * ord];
    for a1 in 0..m {
        for b1 in 0..2 {
            for a2 in 0..m {
                for b2 in 0..2 {
                    // y x^a = x^{-a} y;  y^2 = x^n
                    let (a, b) = if b1 == 0 {
                        ((a1 + a2) % m, b2)
                    } else if b2 == 0 {
                        ((a1 + m - a2 % m) % m, 1)
                    } else {
                        ((a1 + m - a2 % m + n) % m, 0)
                    };
                    mul[(idx(a1, b1) as usize) * ord + idx(a2, b2) as usize] = idx(a, b);
                }
            }
        }
    }
    let mut labels = Vec::with_capacity(ord);
    for b in 0..2 {
        for a in 0..m {
            labels.push(match (a, b) {
                (0, 0) => "e".to_string(),
                (a, 0) => format!("x{a}"),
                (0, _) => "y".to_string(),
                (a, _) => format!("x{a}y"),
            });
        }
    }
    FiniteGroup::from_table(ord, mul, format!("Q{ord}"))
        .expect("quaternion table is a group")
        .with_labels(labels)
}

fn perm_rank(perm: &[usize]) -> usize {
    // Lehmer code, lexicographic on image words
    let d = perm.len();
    let mut rank = 0usize;
    let mut fact = 1usize;
    for i in (0..d).rev() {
        let smaller = perm[i + 1..].iter().filter(|&&x| x < perm[i]).count();
        rank += smaller * fact;
        fact *= d - i;
    }
    rank
}

fn perm_unrank(mut rank: usize, d: usize) -> Vec<usize> {
    let mut avail: Vec<usize> = (0..d).collect();
    let mut fact: Vec<usize> = vec![1; d];
    for i in 1..d {
        fact[i] = fact[i - 1] * i;
    }
    let mut out = Vec::with_capacity(d);
    for i in (0..d).rev() {
        let f = fact[i];
        let j = rank / f;
        rank %= f;
        out.push(avail.remove(j));
    }
    out
}

/// S_d acting on {0..d-1}; composition (pq)(i) = p(q(i)).
pub fn make_symmetric(d: usize) -> FiniteGroup {
    assert!(d >= 1 && d <= 8, "symmetric group limited to d <= 8");
    let ord: usize = (1..=d).product();
    let mut mul = vec![0u16; ord * ord];
    let perms: Vec<Vec<usize>> = (0..ord).map(|r| perm_unrank(r, d)).collect();
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            let comp: Vec<usize> = (0..d).map(|k| p[q[k]]).collect();
            mul[i * ord + j] = perm_rank(&comp) as u16;
        }
    }
    let labels = perms
        .iter()
        .map(|p| {
            let s: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            format!("[{}]", s.join(""))
        })
        .collect();
    FiniteGroup::from_table(ord, mul, format!("S{d}"))
        .expect("symmetric table is a group")
        .with_labels(labels)
}

/// SL_2(F_q) for odd prime q <= 7, matrices in row-major lex order.
pub fn make_sl2(q: usize) -> Result<FiniteGroup> {
    if !matches!(q, 3 | 5 | 7) {
        return Err(Error::BadInput(format!(
            "sl2 parameter must be an odd prime <= 7, got {q}"
        )));
    }
    let mut mats: Vec<[usize; 4]> = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    if (a * d + q * q - (b * c) % (q * q)) % q == 1 % q {
                        mats.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    // put the identity first, keep lex order otherwise
    let id_pos = mats.iter().position(|m| *m == [1, 0, 0, 1]).unwrap();
    let id = mats.remove(id_pos);
    mats.insert(0, id);
    let ord = mats.len();
    debug_assert_eq!(ord, q * (q * q - 1));
    let index: HashMap<[usize; 4], usize> =
        mats.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut mul = vec![0u16; ord * ord];
    for (i, m) in mats.iter().enumerate() {
        for (j, n) in mats.iter().enumerate() {
            let p = [
                (m[0] * n[0] + m[1] * n[2]) % q,
                (m[0] * n[1] + m[1] * n[3]) % q,
                (m[2] * n[0] + m[3] * n[2]) % q,
                (m[2] * n[1] + m[3] * n[3]) % q,
            ];
            mul[i * ord + j] = index[&p] as u16;
        }
    }
    let labels = mats
        .iter()
        .map(|m| format!("[{} {};{} {}]", m[0], m[1], m[2], m[3]))
        .collect();
    Ok(FiniteGroup::from_table(ord, mul, format!("SL2(F{q})"))?.with_labels(labels))
}

/// Lazy wreath product algebra H^d x S_d (no index table required).
#[derive(Clone, Debug)]
pub struct Wreath {
    pub base: FiniteGroup,
    pub d: usize,
}

/// Element (h_0..h_{d-1}, p) of a wreath product; p composes as (pq)(i) = p(q(i))
/// and acts on vectors by (p.v)_k = v_{p^{-1}(k)}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathElem {
    pub vec: Vec<u16>,
    pub perm: Vec<usize>,
}

impl Wreath {
    pub fn new(base: FiniteGroup, d: usize) -> Wreath {
        assert!(d >= 1);
        Wreath { base, d }
    }

    pub fn identity(&self) -> WreathElem {
        WreathElem {
            vec: vec![0; self.d],
            perm: (0..self.d).collect(),
        }
    }

    pub fn mul(&self, a: &WreathElem, b: &WreathElem) -> WreathElem {
        let d = self.d;
        let mut vec = vec![0u16; d];
        let mut pinv = vec![0usize; d];
        for i in 0..d {
            pinv[a.perm[i]] = i;
        }
        for k in 0..d {
            vec[k] = self.base.mul(a.vec[k], b.vec[pinv[k]]);
        }
        let perm = (0..d).map(|i| a.perm[b.perm[i]]).collect();
        WreathElem { vec, perm }
    }

    pub fn inv(&self, a: &WreathElem) -> WreathElem {
        let d = self.d;
        let mut perm = vec![0usize; d];
        for i in 0..d {
            perm[a.perm[i]] = i;
        }
        let vec = (0..d).map(|k| self.base.inv(a.vec[perm[k]])).collect();
        WreathElem {
            vec,
            perm: perm.clone(),
        }
    }

    pub fn order(&self) -> usize {
        let fact: usize = (1..=self.d).product();
        self.base.order().pow(self.d as u32) * fact
    }

    pub fn elem_index(&self, e: &WreathElem) -> usize {
        let b = self.base.order();
        let mut v = 0usize;
        for i in (0..self.d).rev() {
            v = v * b + e.vec[i] as usize;
        }
        perm_rank(&e.perm) * b.pow(self.d as u32) + v
    }

    pub fn elem_at(&self, mut idx: usize) -> WreathElem {
        let b = self.base.order();
        let bd = b.pow(self.d as u32);
        let perm = perm_unrank(idx / bd, self.d);
        idx %= bd;
        let mut vec = Vec::with_capacity(self.d);
        for _ in 0..self.d {
            vec.push((idx % b) as u16);
            idx /= b;
        }
        WreathElem { vec, perm }
    }
}

/// Eagerly materialized wreath product; errors if the order exceeds the table cap.
pub fn make_wreath(base: &FiniteGroup, d: usize) -> Result<FiniteGroup> {
    let w = Wreath::new(base.clone(), d);
    let ord = w.order();
    if ord > EAGER_GROUP_LIMIT {
        return Err(Error::SizeBound(format!(
            "wreath order {ord} exceeds eager table limit"
        )));
    }
    let elems: Vec<WreathElem> = (0..ord).map(|i| w.elem_at(i)).collect();
    debug_assert_eq!(w.elem_index(&elems[ord - 1]), ord - 1);
    let mut mul = vec![0u16; ord * ord];
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate() {
            mul[i * ord + j] = w.elem_index(&w.mul(a, b)) as u16;
        }
    }
    FiniteGroup::from_table(ord, mul, format!("{}wr S{}", base.name(), d))
}

/// A subgroup with a fixed transversal: `transversal[i]` represents the coset
/// `H g`, with `transversal[0]` the identity.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub parent: FiniteGroup,
    pub members: Vec<u16>,
    pub transversal: Vec<u16>,
    group: FiniteGroup,
    member_pos: Vec<u16>, // parent index -> position in members, or MAX
    rep_of: Vec<u16>,     // parent element -> its coset representative in transversal
}

impl Subgroup {
    /// Closure of `gens`, with the transversal chosen greedily by smallest
    /// unassigned element index.
    pub fn from_generators(parent: &FiniteGroup, gens: &[u16]) -> Result<Subgroup> {
        for &g in gens {
            if g as usize >= parent.order() {
                return Err(Error::BadInput(format!("generator {g} out of range")));
            }
        }
        let mut in_h = vec![false; parent.order()];
        in_h[0] = true;
        let mut frontier = vec![0u16];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = parent.mul(x, g);
                if !in_h[y as usize] {
                    in_h[y as usize] = true;
                    frontier.push(y);
                }
            }
        }
        // gens may not include inverses explicitly, but closure under mul in a
        // finite group yields the subgroup
        let members: Vec<u16> = (0..parent.order() as u16).filter(|&x| in_h[x as usize]).collect();
        Subgroup::from_members(parent, members)
    }

    pub fn from_members(parent: &FiniteGroup, members: Vec<u16>) -> Result<Subgroup> {
        let n = parent.order();
        let mut is_member = vec![false; n];
        for &m in &members {
            is_member[m as usize] = true;
        }
        if !is_member[0] {
            return Err(Error::BadInput("subgroup must contain the identity".into()));
        }
        for &a in &members {
            if !is_member[parent.inv(a) as usize] {
                return Err(Error::BadInput("subgroup not closed under inverse".into()));
            }
            for &b in &members {
                if !is_member[parent.mul(a, b) as usize] {
                    return Err(Error::BadInput("subgroup not closed under product".into()));
                }
            }
        }
        if n % members.len() != 0 {
            return Err(Error::BadInput("subgroup order does not divide group order".into()));
        }
        let mut transversal = Vec::with_capacity(n / members.len());
        let mut rep_of = vec![u16::MAX; n];
        for g in 0..n as u16 {
            if rep_of[g as usize] == u16::MAX {
                transversal.push(g);
                for &h in &members {
                    rep_of[parent.mul(h, g) as usize] = g;
                }
            }
        }
        Subgroup::assemble(parent, members, transversal, rep_of)
    }

    fn assemble(
        parent: &FiniteGroup,
        members: Vec<u16>,
        transversal: Vec<u16>,
        rep_of: Vec<u16>,
    ) -> Result<Subgroup> {
        let n = parent.order();
        let k = members.len();
        let mut member_pos = vec![u16::MAX; n];
        for (i, &m) in members.iter().enumerate() {
            member_pos[m as usize] = i as u16;
        }
        let mut mul = vec![0u16; k * k];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                mul[i * k + j] = member_pos[parent.mul(a, b) as usize];
            }
        }
        let group = FiniteGroup::from_table(k, mul, format!("sub({})", parent.name()))?;
        Ok(Subgroup {
            parent: parent.clone(),
            members,
            transversal,
            group,
            member_pos,
            rep_of,
        })
    }

    /// Same subgroup with a caller-supplied transversal (one representative
    /// per coset Hg, identity first).
    pub fn with_transversal(&self, transversal: Vec<u16>) -> Result<Subgroup> {
        if transversal.len() != self.transversal.len() {
            return Err(Error::BadInput("transversal has wrong size".into()));
        }
        if transversal[0] != 0 {
            return Err(Error::BadInput(
                "transversal must list the identity first (it represents H)".into(),
            ));
        }
        let n = self.parent.order();
        let mut rep_of = vec![u16::MAX; n];
        for &t in &transversal {
            for &h in &self.members {
                let g = self.parent.mul(h, t) as usize;
                if rep_of[g] != u16::MAX {
                    return Err(Error::BadInput("transversal entries share a coset".into()));
                }
                rep_of[g] = t;
            }
        }
        if rep_of.iter().any(|&r| r == u16::MAX) {
            return Err(Error::BadInput("transversal misses a coset".into()));
        }
        Subgroup::assemble(&self.parent, self.members.clone(), transversal, rep_of)
    }

    pub fn full(parent: &FiniteGroup) -> Subgroup {
        Subgroup::from_members(parent, (0..parent.order() as u16).collect()).unwrap()
    }

    pub fn trivial(parent: &FiniteGroup) -> Subgroup {
        Subgroup::from_members(parent, vec![0]).unwrap()
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.transversal.len()
    }

    pub fn contains(&self, g: u16) -> bool {
        self.member_pos[g as usize] != u16::MAX
    }

    /// The subgroup as a group in its own right (members reindexed 0..|H|-1).
    pub fn as_group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Parent index of internal element `h`.
    pub fn embed(&self, h: u16) -> u16 {
        self.members[h as usize]
    }

    /// Internal index of a parent element lying in H.
    pub fn restrict(&self, g: u16) -> u16 {
        let p = self.member_pos[g as usize];
        assert!(p != u16::MAX, "element not in subgroup");
        p
    }

    /// Representative of the coset Hg.
    #[inline]
    pub fn coset_rep(&self, g: u16) -> u16 {
        self.rep_of[g as usize]
    }

    /// H-part g * rep(g)^{-1} of a parent element, as an internal index.
    #[inline]
    pub fn h_part(&self, g: u16) -> u16 {
        let rep = self.rep_of[g as usize];
        self.restrict(self.parent.mul(g, self.parent.inv(rep)))
    }

    /// The inclusion as a homomorphism from the internal group to the parent.
    pub fn inclusion(&self) -> GroupHom {
        GroupHom::new(self.group.clone(), self.parent.clone(), self.members.clone()).unwrap()
    }

    /// Permutation of transversal positions induced by right multiplication,
    /// inverted so that `s -> coset_perm(s)` is a homomorphism to S_d.
    pub fn coset_perm(&self, s: u16) -> Vec<usize> {
        let d = self.transversal.len();
        let mut pos = HashMap::new();
        for (i, &t) in self.transversal.iter().enumerate() {
            pos.insert(t, i);
        }
        let mut rho = vec![0usize; d];
        for (i, &t) in self.transversal.iter().enumerate() {
            rho[i] = pos[&self.coset_rep(self.parent.mul(t, s))];
        }
        let mut pi = vec![0usize; d];
        for (i, &v) in rho.iter().enumerate() {
            pi[v] = i;
        }
        pi
    }
}

/// A homomorphism given by its full image table.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupHom {
    pub source: FiniteGroup,
    pub target: FiniteGroup,
    pub image: Vec<u16>,
}

impl GroupHom {
    pub fn new(source: FiniteGroup, target: FiniteGroup, image: Vec<u16>) -> Result<GroupHom> {
        if image.len() != source.order() {
            return Err(Error::BadInput("image table has wrong length".into()));
        }
        if image[0] != 0 {
            return Err(Error::BadInput("homomorphism must preserve the identity".into()));
        }
        for a in 0..source.order() as u16 {
            for b in 0..source.order() as u16 {
                if image[source.mul(a, b) as usize]
                    != target.mul(image[a as usize], image[b as usize])
                {
                    return Err(Error::BadInput(format!(
                        "not a homomorphism at ({a},{b})"
                    )));
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            image,
        })
    }

    pub fn identity(g: &FiniteGroup) -> GroupHom {
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            image: (0..g.order() as u16).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, a: u16) -> u16 {
        self.image[a as usize]
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        for &i in &self.image {
            seen[i as usize] = true;
        }
        seen.iter().all(|&b| b)
    }
}

/// A Sylow p-subgroup found by normalizer growth.
pub fn sylow_subgroup(g: &FiniteGroup, p: usize) -> Result<Subgroup> {
    let n = g.order();
    if p < 2 || n % p != 0 {
        return Err(Error::BadInput(format!("{p} does not divide |G| = {n}")));
    }
    let mut target = 1usize;
    let mut m = n;
    while m % p == 0 {
        target *= p;
        m /= p;
    }
    let mut current = Subgroup::trivial(g);
    while current.order() < target {
        // normalizer of current
        let mut grown = false;
        for cand in g.elements() {
            if current.contains(cand) {
                continue;
            }
            let ord = g.element_order(cand);
            if !is_p_power(ord, p) {
                continue;
            }
            let normalizes = current
                .members
                .iter()
                .all(|&h| current.contains(g.conjugate(h, cand)));
            if !normalizes {
                continue;
            }
            let mut gens: Vec<u16> = current.members.clone();
            gens.push(cand);
            let bigger = Subgroup::from_generators(g, &gens)?;
            if is_p_power(bigger.order(), p) && bigger.order() > current.order() {
                current = bigger;
                grown = true;
                break;
            }
        }
        if !grown {
            return Err(Error::Verification(format!(
                "sylow growth stalled at order {}",
                current.order()
            )));
        }
    }
    Ok(current)
}

fn is_p_power(mut n: usize, p: usize) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// The monomial representation G -> H wr S_d attached to a subgroup with a
/// fixed transversal. `images[s]` has the H-part of the coset walk of s in
/// position k for source strand k.
#[derive(Clone, Debug)]
pub struct MonomialRep {
    pub subgroup: Subgroup,
    pub wreath: Wreath,
    pub images: Vec<WreathElem>,
}

pub fn monomial_representation(h: &Subgroup) -> MonomialRep {
    let d = h.index();
    let w = Wreath::new(h.as_group().clone(), d);
    let parent = &h.parent;
    let mut pos = HashMap::new();
    for (i, &t) in h.transversal.iter().enumerate() {
        pos.insert(t, i);
    }
    let mut images = Vec::with_capacity(parent.order());
    for s in parent.elements() {
        let mut vec = vec![0u16; d];
        let mut rho = vec![0usize; d];
        for (i, &t) in h.transversal.iter().enumerate() {
            let u = parent.mul(t, s);
            rho[i] = pos[&h.coset_rep(u)];
            vec[i] = h.h_part(u);
        }
        // strand i of s carries the H-part of t_i s and moves coset i to
        // rho(i); the pair (vec, rho^{-1}) multiplies like monomial matrices
        let mut perm = vec![0usize; d];
        for (i, &v) in rho.iter().enumerate() {
            perm[v] = i;
        }
        images.push(WreathElem { vec, perm });
    }
    let rep = MonomialRep {
        subgroup: h.clone(),
        wreath: w,
        images,
    };
    rep.verify();
    rep
}

impl MonomialRep {
    fn verify(&self) {
        let g = &self.subgroup.parent;
        let w = &self.wreath;
        assert_eq!(self.images[0], w.identity(), "monomial rep must preserve identity");
        for a in g.elements() {
            for b in g.elements() {
                let lhs = w.mul(&self.images[a as usize], &self.images[b as usize]);
                let rhs = &self.images[g.mul(a, b) as usize];
                assert_eq!(&lhs, rhs, "monomial representation is not a homomorphism");
            }
        }
    }

    pub fn apply(&self, s: u16) -> &WreathElem {
        &self.images[s as usize]
    }

    /// As a homomorphism into the eagerly materialized wreath group.
    pub fn as_group_hom(&self) -> Result<GroupHom> {
        let wg = make_wreath(&self.subgroup.as_group().clone(), self.wreath.d)?;
        let image = self
            .images
            .iter()
            .map(|e| self.wreath.elem_index(e) as u16)
            .collect();
        GroupHom::new(self.subgroup.parent.clone(), wg, image)
    }
}

/// All homomorphisms G -> Q/Z as value tables, for small G.
pub fn characters(g: &FiniteGroup) -> Result<Vec<Vec<Frac>>> {
    if g.order() > 64 {
        return Err(Error::SizeBound("character enumeration limited to |G| <= 64".into()));
    }
    // greedy generating set
    let mut gens: Vec<u16> = Vec::new();
    let mut span = Subgroup::trivial(g);
    for cand in g.elements() {
        if !span.contains(cand) {
            gens.push(cand);
            span = Subgroup::from_generators(g, &gens)?;
            if span.order() == g.order() {
                break;
            }
        }
    }
    let mut out = Vec::new();
    let orders: Vec<usize> = gens.iter().map(|&x| g.element_order(x)).collect();
    let mut choice = vec![0usize; gens.len()];
    loop {
        // candidate values phi(gen_i) = choice_i / ord_i
        let vals: Vec<Frac> = choice
            .iter()
            .zip(&orders)
            .map(|(&c, &o)| Frac::new(c as i64, o as i64).mod_one())
            .collect();
        if let Some(table) = extend_character(g, &gens, &vals) {
            out.push(table);
        }
        // increment mixed-radix counter
        let mut i = 0;
        loop {
            if i == gens.len() {
                out.sort();
                out.dedup();
                return Ok(out);
            }
            choice[i] += 1;
            if choice[i] < orders[i] {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn extend_character(g: &FiniteGroup, gens: &[u16], vals: &[Frac]) -> Option<Vec<Frac>> {
    let n = g.order();
    let mut table: Vec<Option<Frac>> = vec![None; n];
    table[0] = Some(Frac::ZERO);
    let mut frontier = vec![0u16];
    while let Some(x) = frontier.pop() {
        let vx = table[x as usize].unwrap();
        for (i, &gen) in gens.iter().enumerate() {
            let y = g.mul(x, gen);
            let vy = vx.add(&vals[i]).mod_one();
            match table[y as usize] {
                None => {
                    table[y as usize] = Some(vy);
                    frontier.push(y);
                }
                Some(old) if old != vy => return None,
                _ => {}
            }
        }
    }
    let table: Vec<Frac> = table.into_iter().map(|v| v.unwrap()).collect();
    for a in 0..n as u16 {
        for b in 0..n as u16 {
            let want = table[a as usize].add(&table[b as usize]).mod_one();
            if table[g.mul(a, b) as usize] != want {
                return None;
            }
        }
    }
    Some(table)
}

/// Brute-force isomorphism search; test oracle only.
pub fn find_isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Option<Vec<u16>> {
    if a.order() != b.order() {
        return None;
    }
    // minimal generating set of a
    let mut gens: Vec<u16> = Vec::new();
    let mut span = Subgroup::trivial(a);
    for cand in a.elements() {
        if !span.contains(cand) {
            gens.push(cand);
            span = Subgroup::from_generators(a, &gens).ok()?;
            if span.order() == a.order() {
                break;
            }
        }
    }
    let mut images = vec![0u16; gens.len()];
    search_iso(a, b, &gens, &mut images, 0)
}

fn search_iso(
    a: &FiniteGroup,
    b: &FiniteGroup,
    gens: &[u16],
    images: &mut Vec<u16>,
    k: usize,
) -> Option<Vec<u16>> {
    if k == gens.len() {
        // build the map by words and check bijectivity + homomorphism
        let mut table: Vec<Option<u16>> = vec![None; a.order()];
        table[0] = Some(0);
        let mut frontier = vec![0u16];
        while let Some(x) = frontier.pop() {
            let ix = table[x as usize].unwrap();
            for (i, &g) in gens.iter().enumerate() {
                let y = a.mul(x, g);
                let iy = b.mul(ix, images[i]);
                match table[y as usize] {
                    None => {
                        table[y as usize] = Some(iy);
                        frontier.push(y);
                    }
                    Some(v) if v != iy => return None,
                    _ => {}
                }
            }
        }
        let table: Vec<u16> = table.into_iter().map(|v| v.unwrap()).collect();
        let mut seen = vec![false; b.order()];
        for &v in &table {
            if seen[v as usize] {
                return None;
            }
            seen[v as usize] = true;
        }
        for x in 0..a.order() as u16 {
            for y in 0..a.order() as u16 {
                if table[a.mul(x, y) as usize] != b.mul(table[x as usize], table[y as usize]) {
                    return None;
                }
            }
        }
        return Some(table);
    }
    let want = a.element_order(gens[k]);
    for cand in b.elements() {
        if b.element_order(cand) == want {
            images[k] = cand;
            if let Some(t) = search_iso(a, b, gens, images, k + 1) {
                return Some(t);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_basics() {
        let g = make_cyclic(1);
        assert_eq!(g.order(), 1);
        let g = make_cyclic(5);
        assert_eq!(g.order(), 5);
        assert_eq!(g.mul(2, 4), 1);
        let g = make_cyclic(12);
        assert_eq!(g.element_order(6), 2);
    }

    #[test]
    fn dihedral3_is_s3() {
        let d3 = make_dihedral(3);
        let s3 = make_symmetric(3);
        assert_eq!(d3.order(), 6);
        assert!(find_isomorphism(&d3, &s3).is_some());
    }

    #[test]
    fn q8_has_one_involution() {
        let q8 = make_quaternion(2);
        assert_eq!(q8.order(), 8);
        let count = q8.elements().filter(|&g| q8.element_order(g) == 2).count();
        assert_eq!(count, 1);
    }

    #[test]
    fn quaternion_relations() {
        for n in 1..=5 {
            let q = make_quaternion(n);
            let x = 1u16; // x^1 y^0
            let y = (2 * n) as u16; // x^0 y^1
            // x^n = y^2
            let mut xn = 0u16;
            for _ in 0..n {
                xn = q.mul(xn, x);
            }
            assert_eq!(xn, q.mul(y, y));
            // x y x = y
            assert_eq!(q.mul(q.mul(x, y), x), y);
        }
    }

    #[test]
    fn sl2_orders() {
        assert_eq!(make_sl2(3).unwrap().order(), 24);
        assert_eq!(make_sl2(5).unwrap().order(), 120);
        assert!(make_sl2(4).is_err());
        assert!(make_sl2(9).is_err());
    }

    #[test]
    fn wreath_z2_s2_is_d4() {
        let z2 = make_cyclic(2);
        let w = make_wreath(&z2, 2).unwrap();
        assert_eq!(w.order(), 8);
        assert!(find_isomorphism(&w, &make_dihedral(4)).is_some());
    }

    #[test]
    fn wreath_trivial_base_is_symmetric() {
        let t = make_cyclic(1);
        let w = make_wreath(&t, 3).unwrap();
        assert!(find_isomorphism(&w, &make_symmetric(3)).is_some());
    }

    #[test]
    fn wreath_d1_is_base() {
        let z2 = make_cyclic(2);
        let w = make_wreath(&z2, 1).unwrap();
        assert!(find_isomorphism(&w, &z2).is_some());
    }

    #[test]
    fn subgroup_examples() {
        let z4 = make_cyclic(4);
        let h = Subgroup::from_generators(&z4, &[2]).unwrap();
        assert_eq!(h.members, vec![0, 2]);
        assert_eq!(h.transversal, vec![0, 1]);

        let q8 = make_quaternion(2);
        let hx = Subgroup::from_generators(&q8, &[1]).unwrap();
        assert_eq!(hx.order(), 4);

        let s3 = make_symmetric(3);
        let t = Subgroup::from_generators(&s3, &[]).unwrap();
        assert_eq!(t.order(), 1);
        assert_eq!(t.transversal.len(), 6);
    }

    #[test]
    fn transversal_membership_identity() {
        let d3 = make_dihedral(3);
        let h = Subgroup::from_generators(&d3, &[1]).unwrap(); // <r> = Z/3
        for g in d3.elements() {
            let rep = h.coset_rep(g);
            let part = d3.mul(g, d3.inv(rep));
            assert!(h.contains(part));
        }
    }

    #[test]
    fn sylow_examples() {
        let s3 = make_symmetric(3);
        assert_eq!(sylow_subgroup(&s3, 3).unwrap().order(), 3);

        let sl2 = make_sl2(3).unwrap();
        let syl = sylow_subgroup(&sl2, 2).unwrap();
        assert_eq!(syl.order(), 8);
        assert!(find_isomorphism(syl.as_group(), &make_quaternion(2)).is_some());

        let z12 = make_cyclic(12);
        let syl = sylow_subgroup(&z12, 2).unwrap();
        assert_eq!(syl.members, vec![0, 3, 6, 9]);
    }

    #[test]
    fn monomial_rep_z4_example() {
        let z4 = make_cyclic(4);
        let h = Subgroup::from_generators(&z4, &[2]).unwrap();
        let rep = monomial_representation(&h);
        let phi1 = rep.apply(1);
        // H = {0,2} internally {0,1}; the walk of 1 gives (0, 2) with the swap
        assert_eq!(phi1.perm, vec![1, 0]);
        assert_eq!(
            phi1.vec.iter().map(|&i| h.embed(i)).collect::<Vec<_>>(),
            vec![0, 2]
        );
        assert_eq!(rep.apply(0), &rep.wreath.identity());
    }

    #[test]
    fn monomial_rep_projection_is_coset_action() {
        let s3 = make_symmetric(3);
        // <(123)>: find an order-3 element
        let r = s3.elements().find(|&g| s3.element_order(g) == 3).unwrap();
        let h = Subgroup::from_generators(&s3, &[r]).unwrap();
        let rep = monomial_representation(&h);
        for s in s3.elements() {
            assert_eq!(rep.apply(s).perm, h.coset_perm(s));
        }
    }

    #[test]
    fn characters_of_s3() {
        let s3 = make_symmetric(3);
        let chars = characters(&s3).unwrap();
        assert_eq!(chars.len(), 2); // trivial and sign
    }
}

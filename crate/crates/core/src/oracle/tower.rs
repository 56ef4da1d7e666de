//! Explicit towers `K = K_0 < K_1 < .. < K_d` of Artin-Schreier extensions.
//! An element of `K_l` is a polynomial of degree `< p` in the level
//! generator with coefficients in `K_{l-1}`.

use std::sync::Arc;

use num_bigint::BigInt;

use super::OracleError;
use crate::arith::mod_inverse;
use crate::asw::{is_reduced, subext_vector, CharacterVec};
use crate::field::{FqElement, FqField, LaurentPoly};
use crate::ring::Ring;
use crate::witt::{WittRing, WittVec};

pub const MAX_DEPTH: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Base(LaurentPoly),
    /// `p` coefficients of `1, x, .., x^{p-1}`.
    Ext(Vec<Node>),
}

/// An element of `K_level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerElement {
    pub level: usize,
    pub node: Node,
}

/// Data of the extension `K_{i+1} = K_i(y_i)`, `y_i^p - y_i = rhs`.
#[derive(Clone, Debug)]
pub struct Level {
    /// Right-hand side before in-tower reduction, an element of `K_i`.
    pub raw_rhs: Node,
    pub rhs: Node,
    /// `x_i = y_i + offset`, where `x` solves `F(x) = x (+) a`.
    pub offset: Node,
    /// `v_{K_{i+1}}(y_i) = v_{K_i}(rhs)`.
    pub gen_valuation: i64,
}

#[derive(Clone, Debug)]
pub struct Tower {
    p: u64,
    field: Arc<FqField>,
    input: CharacterVec,
    levels: Vec<Level>,
}

/// Result of [`Tower::reduce_rhs`]: `rhs = g - w^p + w`, with the
/// coefficients chosen at each cancellation step.
#[derive(Clone, Debug)]
pub struct RhsReduction {
    pub rhs: Node,
    pub offset: Node,
    pub steps: Vec<FqElement>,
}

impl Tower {
    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn field(&self) -> &Arc<FqField> {
        &self.field
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn input(&self) -> &CharacterVec {
        &self.input
    }

    fn pu(&self) -> usize {
        self.p as usize
    }

    pub fn zero(&self, level: usize) -> Node {
        match level {
            0 => Node::Base(LaurentPoly::zero(&self.field)),
            l => Node::Ext(vec![self.zero(l - 1); self.pu()]),
        }
    }

    pub fn from_base(&self, level: usize, a: LaurentPoly) -> Node {
        self.embed(Node::Base(a), 0, level)
    }

    pub fn one(&self, level: usize) -> Node {
        self.from_base(level, LaurentPoly::constant(&self.field, FqElement::ONE))
    }

    pub fn t_pow(&self, level: usize, e: i64) -> Node {
        self.from_base(level, LaurentPoly::t_pow(&self.field, e))
    }

    /// Views an element of `K_from` inside `K_to`.
    pub fn embed(&self, a: Node, from: usize, to: usize) -> Node {
        let mut out = a;
        for l in from..to {
            let mut cs = vec![self.zero(l); self.pu()];
            cs[0] = out;
            out = Node::Ext(cs);
        }
        out
    }

    /// The generator `y_{level-1}` of `K_level` over `K_{level-1}`.
    pub fn generator(&self, level: usize) -> Node {
        assert!(level >= 1 && level <= self.depth(), "no generator at level {level}");
        let mut cs = vec![self.zero(level - 1); self.pu()];
        cs[1] = self.one(level - 1);
        Node::Ext(cs)
    }

    pub fn is_zero(&self, a: &Node) -> bool {
        match a {
            Node::Base(x) => x.is_zero(),
            Node::Ext(cs) => cs.iter().all(|c| self.is_zero(c)),
        }
    }

    pub fn add(&self, a: &Node, b: &Node) -> Node {
        match (a, b) {
            (Node::Base(x), Node::Base(y)) => Node::Base(x.add_unchecked(y)),
            (Node::Ext(xs), Node::Ext(ys)) => Node::Ext(xs.iter().zip(ys).map(|(x, y)| self.add(x, y)).collect()),
            _ => panic!("adding tower elements of different levels"),
        }
    }

    pub fn neg(&self, a: &Node) -> Node {
        match a {
            Node::Base(x) => Node::Base(x.neg()),
            Node::Ext(xs) => Node::Ext(xs.iter().map(|x| self.neg(x)).collect()),
        }
    }

    pub fn sub(&self, a: &Node, b: &Node) -> Node {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Node, c: FqElement) -> Node {
        match a {
            Node::Base(x) => Node::Base(x.scale(c)),
            Node::Ext(xs) => Node::Ext(xs.iter().map(|x| self.scale(x, c)).collect()),
        }
    }

    pub fn mul(&self, level: usize, a: &Node, b: &Node) -> Node {
        match (a, b) {
            (Node::Base(x), Node::Base(y)) => Node::Base(x.mul_unchecked(y)),
            (Node::Ext(xs), Node::Ext(ys)) => {
                let p = self.pu();
                let lower = level - 1;
                let mut prod = vec![self.zero(lower); 2 * p - 1];
                for (i, x) in xs.iter().enumerate() {
                    if self.is_zero(x) {
                        continue;
                    }
                    for (j, y) in ys.iter().enumerate() {
                        if self.is_zero(y) {
                            continue;
                        }
                        prod[i + j] = self.add(&prod[i + j], &self.mul(lower, x, y));
                    }
                }
                // x^k = x^{k-p} (x + g) for k >= p
                let g = &self.levels[lower].rhs;
                for k in (p..2 * p - 1).rev() {
                    let top = std::mem::replace(&mut prod[k], self.zero(lower));
                    if self.is_zero(&top) {
                        continue;
                    }
                    prod[k - p + 1] = self.add(&prod[k - p + 1], &top);
                    prod[k - p] = self.add(&prod[k - p], &self.mul(lower, &top, g));
                }
                prod.truncate(p);
                Node::Ext(prod)
            }
            _ => panic!("multiplying tower elements of different levels"),
        }
    }

    pub fn pow(&self, level: usize, a: &Node, mut e: u64) -> Node {
        let mut result = self.one(level);
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(level, &result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(level, &base, &base);
            }
        }
        result
    }

    /// `v_{K_level}`, normalized by `v(t) = p^level`; `None` for zero.
    pub fn valuation(&self, level: usize, a: &Node) -> Result<Option<i64>, OracleError> {
        match a {
            Node::Base(x) => Ok(x.valuation().finite()),
            Node::Ext(cs) => {
                let vg = self.levels[level - 1].gen_valuation;
                let mut best: Option<i64> = None;
                let mut tie = false;
                for (j, c) in cs.iter().enumerate() {
                    if let Some(vc) = self.valuation(level - 1, c)? {
                        let cand = self.p as i64 * vc + j as i64 * vg;
                        match best {
                            Some(b) if cand == b => tie = true,
                            Some(b) if cand > b => {}
                            _ => {
                                best = Some(cand);
                                tie = false;
                            }
                        }
                    }
                }
                if tie {
                    return Err(OracleError::NonUniqueMinimum { level });
                }
                Ok(best)
            }
        }
    }

    pub fn element_valuation(&self, z: &TowerElement) -> Result<i64, OracleError> {
        self.valuation(z.level, &z.node)?.ok_or(OracleError::ZeroElement)
    }

    /// A monomial `y_{l-1}^{s_l} .. y_0^{s_1} t^r` of valuation `v` in `K_level`,
    /// each `s` solved from the valuation equation modulo `p`.
    pub fn element_of_valuation(&self, level: usize, v: i64) -> Node {
        if level == 0 {
            return self.t_pow(0, v);
        }
        let p = self.p as i64;
        let vg = self.levels[level - 1].gen_valuation;
        let inv = mod_inverse(vg.rem_euclid(p), p).expect("generator valuation is prime to p");
        let s = (v.rem_euclid(p) * inv).rem_euclid(p);
        let rest = (v - s * vg) / p;
        let mut cs = vec![self.zero(level - 1); self.pu()];
        cs[s as usize] = self.element_of_valuation(level - 1, rest);
        Node::Ext(cs)
    }

    /// Clears valuations divisible by `p` from `g` in `K_level` by
    /// subtracting `(u theta)^p - u theta` for a searched `u` in `F_q^*`.
    pub fn reduce_rhs(&self, level: usize, g: &Node) -> Result<RhsReduction, OracleError> {
        let p = self.p as i64;
        let mut g = g.clone();
        let mut offset = self.zero(level);
        let mut steps = Vec::new();
        loop {
            let v = self.valuation(level, &g)?;
            match v {
                Some(v) if v < 0 && v % p != 0 => {
                    return Ok(RhsReduction { rhs: g, offset, steps });
                }
                Some(v) if v < 0 => {
                    let theta = self.element_of_valuation(level, v / p);
                    let theta_p = self.pow(level, &theta, self.p);
                    let mut found = None;
                    for u in self.field.elements().skip(1) {
                        let cand = self.sub(&g, &self.scale(&theta_p, self.field.frobenius(u)));
                        if self.valuation(level, &cand)?.is_none_or(|w| w > v) {
                            found = Some((u, cand));
                            break;
                        }
                    }
                    let (u, cand) = found.ok_or(OracleError::NoCancellingCoefficient { level })?;
                    let w = self.scale(&theta, u);
                    g = self.add(&cand, &w);
                    offset = self.add(&offset, &w);
                    steps.push(u);
                }
                v => return Err(OracleError::NotTotallyRamified { level, valuation: v }),
            }
        }
    }

    /// `x_j = y_j + offset_j` as an element of `K_level`, `j < level`.
    pub fn witt_solution_component(&self, j: usize, level: usize) -> Node {
        let offset = self.embed(self.levels[j].offset.clone(), j, j + 1);
        let x = self.add(&self.generator(j + 1), &offset);
        self.embed(x, j + 1, level)
    }

    pub fn ring(&self, level: usize) -> TowerRing<'_> {
        TowerRing { tower: self, level }
    }
}

/// `K_level` as a coefficient ring.
pub struct TowerRing<'t> {
    pub tower: &'t Tower,
    pub level: usize,
}

impl Ring for TowerRing<'_> {
    type Elem = Node;

    fn zero(&self) -> Node {
        self.tower.zero(self.level)
    }
    fn one(&self) -> Node {
        self.tower.one(self.level)
    }
    fn add(&self, a: &Node, b: &Node) -> Node {
        self.tower.add(a, b)
    }
    fn mul(&self, a: &Node, b: &Node) -> Node {
        self.tower.mul(self.level, a, b)
    }
    fn neg(&self, a: &Node) -> Node {
        self.tower.neg(a)
    }
    fn integer(&self, n: &BigInt) -> Node {
        let c = self.tower.field.from_bigint(n);
        self.tower.from_base(self.level, LaurentPoly::constant(&self.tower.field, c))
    }
    fn is_zero(&self, a: &Node) -> bool {
        self.tower.is_zero(a)
    }
    fn characteristic(&self) -> u64 {
        self.tower.p
    }
}

/// Builds `K_1 < .. < K_depth` for `F(x) = x (+) a`. Level `i+1` is cut out by
/// component `i` of `lambda_i(mu_i(x) (+) a)`, reduced inside `K_i`.
pub fn build_tower(a: &CharacterVec, depth: usize) -> Result<Tower, OracleError> {
    if depth == 0 || depth > MAX_DEPTH || depth > a.len() {
        return Err(OracleError::UnsupportedDepth(depth));
    }
    if !is_reduced(a)? {
        return Err(OracleError::NotReduced);
    }
    // a_0 with a pole makes every level totally ramified; later components
    // may vanish.
    let m0 = a.neg_valuations()[0];
    if !m0.is_some_and(|m| m > 0) {
        return Err(OracleError::NotTotallyRamified {
            level: 0,
            valuation: m0.map(|m| -m),
        });
    }
    let p = a.prime();
    let field = a.field().clone();
    let mut tower = Tower {
        p,
        field,
        input: a.clone(),
        levels: Vec::with_capacity(depth),
    };
    for i in 0..depth {
        let raw = if i == 0 {
            Node::Base(a.component(0).clone())
        } else {
            let ring = tower.ring(i);
            let w = WittRing::new(&ring, p, i + 1)?;
            let avec = WittVec::new(
                (0..=i)
                    .map(|k| tower.from_base(i, a.component(k).clone()))
                    .collect(),
            );
            let xs: Vec<Node> = (0..i).map(|j| tower.witt_solution_component(j, i)).collect();
            subext_vector(&w, &avec, &xs, i)?.component(i).clone()
        };
        let red = tower.reduce_rhs(i, &raw)?;
        let gen_valuation = tower.valuation(i, &red.rhs)?.expect("reduced right-hand side is nonzero");
        tower.levels.push(Level {
            raw_rhs: raw,
            rhs: red.rhs,
            offset: red.offset,
            gen_valuation,
        });
    }
    Ok(tower)
}

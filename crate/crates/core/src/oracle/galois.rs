//! The Galois group of a tower, acting through `x -> x (+) k.1`, and the
//! lower ramification filtration read off from a uniformizer.

use super::tower::{Node, Tower, TowerElement};
use super::OracleError;
use crate::arith::mod_inverse;
use crate::field::{FqField, LaurentPoly};
use crate::witt::WittRing;

/// `sigma_k`, identified with `k mod p^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaloisElt {
    k: u64,
    order_of_group: u64,
}

impl GaloisElt {
    pub fn new(k: u64, p: u64, depth: usize) -> Self {
        let n = p.pow(depth as u32);
        GaloisElt {
            k: k % n,
            order_of_group: n,
        }
    }

    pub fn k(self) -> u64 {
        self.k
    }

    pub fn compose(self, other: GaloisElt) -> GaloisElt {
        assert_eq!(self.order_of_group, other.order_of_group);
        GaloisElt {
            k: (self.k + other.k) % self.order_of_group,
            order_of_group: self.order_of_group,
        }
    }

    /// Order in `Z/p^d`.
    pub fn order(self) -> u64 {
        let n = self.order_of_group;
        if self.k == 0 {
            return 1;
        }
        n / num_integer::gcd(self.k, n)
    }
}

/// Images of the generators `y_0, .., y_{d-1}` under `sigma`, all in `K_d`.
/// `sigma(x_j) = S_j(x_0..x_j, c_0..c_j)` with `c = k.1_d`, then
/// `sigma(y_j) = sigma(x_j) - sigma(offset_j)`.
pub fn generator_images(tower: &Tower, sigma: GaloisElt) -> Result<Vec<Node>, OracleError> {
    let p = tower.prime();
    let d = tower.depth();
    let prime_field = FqField::prime(p as u32)?;
    let wp = WittRing::new(&prime_field, p, d)?;
    let c = wp.int_image(sigma.k())?;
    let field = tower.field();
    let cs: Vec<Node> = c
        .components()
        .iter()
        .map(|ci| {
            let lifted = field.from_i64(ci.index() as i64);
            tower.from_base(d, LaurentPoly::constant(field, lifted))
        })
        .collect();
    let xs: Vec<Node> = (0..d).map(|j| tower.witt_solution_component(j, d)).collect();
    let ring = tower.ring(d);
    let sums = &wp.polys().sum;
    let mut images: Vec<Node> = Vec::with_capacity(d);
    for (j, sum) in sums.iter().enumerate().take(d) {
        let sx = sum.eval_with(&ring, |v| match v.block {
            crate::wittpoly::Block::X => xs.get(v.index),
            crate::wittpoly::Block::Y => cs.get(v.index),
        })?;
        let moved_offset = substitute(tower, j, &tower.levels()[j].offset, &images);
        images.push(tower.sub(&sx, &moved_offset));
    }
    Ok(images)
}

/// Maps an element of `K_level` into `K_d`, sending `y_j` to `images[j]`.
fn substitute(tower: &Tower, level: usize, z: &Node, images: &[Node]) -> Node {
    let d = tower.depth();
    match z {
        Node::Base(_) => tower.embed(z.clone(), 0, d),
        Node::Ext(cs) => {
            let y = &images[level - 1];
            let mut acc = tower.zero(d);
            for c in cs.iter().rev() {
                acc = tower.mul(d, &acc, y);
                acc = tower.add(&acc, &substitute(tower, level - 1, c, images));
            }
            acc
        }
    }
}

/// `sigma(z)` for `z` in any level, returned in `K_d`.
pub fn apply_galois(tower: &Tower, z: &TowerElement, sigma: GaloisElt) -> Result<TowerElement, OracleError> {
    let images = generator_images(tower, sigma)?;
    Ok(apply_with_images(tower, z, &images))
}

pub fn apply_with_images(tower: &Tower, z: &TowerElement, images: &[Node]) -> TowerElement {
    TowerElement {
        level: tower.depth(),
        node: substitute(tower, z.level, &z.node, images),
    }
}

/// `pi = y_{d-1}^alpha t^beta` with `alpha v(y_{d-1}) + beta p^d = 1`.
pub fn uniformizer(tower: &Tower) -> Result<TowerElement, OracleError> {
    let d = tower.depth();
    let n = tower.prime().pow(d as u32) as i64;
    let vg = tower.levels()[d - 1].gen_valuation;
    let alpha = mod_inverse(vg.rem_euclid(n), n).expect("generator valuation is prime to p");
    let beta = (1 - alpha * vg) / n;
    let node = tower.mul(
        d,
        &tower.pow(d, &tower.generator(d), alpha as u64),
        &tower.t_pow(d, beta),
    );
    let pi = TowerElement { level: d, node };
    match tower.element_valuation(&pi)? {
        1 => Ok(pi),
        v => Err(OracleError::UniformizerCheck(v)),
    }
}

/// `i_G(sigma) = v(sigma(pi) - pi)`.
pub fn ramification_index_of(tower: &Tower, pi: &TowerElement, sigma: GaloisElt) -> Result<Option<i64>, OracleError> {
    let moved = apply_galois(tower, pi, sigma)?;
    tower.valuation(tower.depth(), &tower.sub(&moved.node, &pi.node))
}

/// Lower breaks `b_i = i_G(sigma_{p^{i-1}}) - 1`, each cross-checked
/// against a second element generating the same subgroup.
pub fn filtration_breaks(tower: &Tower) -> Result<Vec<i64>, OracleError> {
    let p = tower.prime();
    let d = tower.depth();
    let n = p.pow(d as u32);
    let pi = uniformizer(tower)?;
    let mut breaks = Vec::with_capacity(d);
    for i in 1..=d {
        let k = p.pow(i as u32 - 1);
        let first = ramification_index_of(tower, &pi, GaloisElt::new(k, p, d))?;
        let second = ramification_index_of(tower, &pi, GaloisElt::new(n - k, p, d))?;
        if first != second {
            return Err(OracleError::InconsistentBreaks { index: i, first, second });
        }
        let v = first.ok_or(OracleError::ZeroElement)?;
        breaks.push(v - 1);
    }
    if breaks.first().is_some_and(|&b| b <= 0) || breaks.windows(2).any(|w| w[1] <= w[0]) {
        return Err(OracleError::NonIncreasingBreaks(breaks));
    }
    Ok(breaks)
}

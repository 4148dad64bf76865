//! Left actions of finite groupoids on finite sets.

use crate::group::FinGroup;
use crate::groupoid::{Arr, FinGroupoid, Obj};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ActionError {
    #[error("anchor of point {0} is not an object")]
    BadAnchor(usize),
    #[error("arrow {0} sends point {1} off its target fibre")]
    WrongFibre(Arr, usize),
    #[error("identity moves point {0}")]
    NotUnital(usize),
    #[error("action not associative at arrows ({0},{1}) on point {2}")]
    NotAssociative(Arr, Arr, usize),
}

/// A set over the objects of a groupoid with a left action: `a·p` is
/// defined when `anchor(p) == src(a)` and lands over `tgt(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    carrier: usize,
    anchor: Vec<Obj>,
    table: Vec<usize>,
}

impl GSet {
    /// Tabulate `act` on all compatible pairs of `g`.
    pub fn new(
        g: &FinGroupoid,
        anchor: Vec<Obj>,
        act: impl Fn(Arr, usize) -> usize,
    ) -> Self {
        let carrier = anchor.len();
        let mut table = vec![NONE; g.n_arrows() * carrier];
        for a in g.arrows() {
            for p in 0..carrier {
                if anchor[p] == g.src(a) {
                    table[a * carrier + p] = act(a, p);
                }
            }
        }
        GSet { carrier, anchor, table }
    }

    /// A group action on `n` points, viewed over the delooping.
    pub fn from_group(group: &FinGroup, n: usize, act: impl Fn(usize, usize) -> usize) -> Self {
        let carrier = n;
        let mut table = vec![NONE; group.order() * carrier];
        for g in 0..group.order() {
            for p in 0..carrier {
                table[g * carrier + p] = act(g, p);
            }
        }
        GSet { carrier, anchor: vec![0; n], table }
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn anchor(&self, p: usize) -> Obj {
        self.anchor[p]
    }

    pub fn anchors(&self) -> &[Obj] {
        &self.anchor
    }

    /// `a·p`; panics if the pair is not compatible.
    pub fn act(&self, a: Arr, p: usize) -> usize {
        let r = self.table[a * self.carrier + p];
        assert_ne!(r, NONE, "arrow {a} cannot act on point {p}");
        r
    }

    pub fn try_act(&self, a: Arr, p: usize) -> Option<usize> {
        let r = *self.table.get(a * self.carrier + p)?;
        (r != NONE).then_some(r)
    }

    /// Check the unit and associativity squares against `g`.
    pub fn validate(&self, g: &FinGroupoid) -> Result<(), ActionError> {
        for p in 0..self.carrier {
            if self.anchor[p] >= g.n_objects() {
                return Err(ActionError::BadAnchor(p));
            }
        }
        for a in g.arrows() {
            for p in 0..self.carrier {
                if self.anchor[p] != g.src(a) {
                    continue;
                }
                let q = self.table[a * self.carrier + p];
                if q >= self.carrier || self.anchor[q] != g.tgt(a) {
                    return Err(ActionError::WrongFibre(a, p));
                }
            }
        }
        for p in 0..self.carrier {
            if self.act(g.id(self.anchor[p]), p) != p {
                return Err(ActionError::NotUnital(p));
            }
        }
        for b in g.arrows() {
            for p in (0..self.carrier).filter(|&p| self.anchor[p] == g.src(b)) {
                let bp = self.act(b, p);
                for &a in g.out_arrows(g.tgt(b)) {
                    if self.act(g.comp(a, b), p) != self.act(a, bp) {
                        return Err(ActionError::NotAssociative(a, b, p));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Left cosets `G/K` with `g·aK = gaK`. Cosets are numbered by their least
/// element; the second vector sends each element to its coset.
pub fn coset_space(group: &FinGroup, sub: &[usize]) -> (GSet, Vec<usize>) {
    let mut coset = vec![usize::MAX; group.order()];
    let mut count = 0;
    for a in 0..group.order() {
        if coset[a] == usize::MAX {
            for &k in sub {
                coset[group.mul(a, k)] = count;
            }
            count += 1;
        }
    }
    let rep: Vec<usize> = (0..count).map(|c| coset.iter().position(|&d| d == c).unwrap()).collect();
    let x = GSet::from_group(group, count, |g, c| coset[group.mul(g, rep[c])]);
    (x, coset)
}

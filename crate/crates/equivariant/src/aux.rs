//! The auxiliary category between the two orbit categories: objects the
//! family, hom-groupoids `{x : H^x ⊂ K} ⋊ K` with `x -> xk`.

use crate::orbit::{check_family, conjugate_into, EquivariantError, Subgroup};
use gpd_core::{FinGroup, FinGroupoid, Obj};

#[derive(Clone, Debug)]
pub struct AuxHom {
    /// Sorted `x` with `H^x ⊂ K`; object `i` is `elements[i]`.
    pub elements: Vec<usize>,
    /// Arrow `i·|K| + j` is `(elements[i], K[j])`.
    pub groupoid: FinGroupoid,
}

impl AuxHom {
    pub fn object(&self, x: usize) -> Option<Obj> {
        self.elements.binary_search(&x).ok()
    }
}

#[derive(Clone, Debug)]
pub struct AuxCategory {
    pub group: FinGroup,
    pub family: Vec<Subgroup>,
    homs: Vec<Vec<AuxHom>>,
}

impl AuxCategory {
    pub fn hom(&self, h: usize, k: usize) -> &AuxHom {
        &self.homs[h][k]
    }

    /// Composite of `x` in `O(H, K)` and `y` in `O(K, L)`: `xy`.
    pub fn compose(&self, h: usize, l: usize, x: usize, y: usize) -> Obj {
        self.homs[h][l].object(self.group.mul(x, y)).expect("H^(xy) ⊂ L")
    }
}

fn aux_hom(g: &FinGroup, h: &[usize], k: &[usize]) -> AuxHom {
    let elements: Vec<usize> = (0..g.order()).filter(|&x| conjugate_into(g, h, x, k)).collect();
    let m = k.len();
    let n = elements.len() * m;
    let pos = |x: usize| elements.binary_search(&x).expect("closed under right K-multiplication");
    let kpos = |a: usize| k.binary_search(&a).expect("in K");
    let src: Vec<usize> = (0..n).map(|a| a / m).collect();
    let tgt: Vec<usize> = (0..n).map(|a| pos(g.mul(elements[a / m], k[a % m]))).collect();
    let ident = (0..elements.len()).map(|i| i * m + kpos(g.unit())).collect();
    let inv = (0..n).map(|a| tgt[a] * m + kpos(g.inv(k[a % m]))).collect();
    let groupoid = FinGroupoid::from_parts(elements.len(), src, tgt, ident, inv, |a, b| {
        // (xk, k') after (x, k) is (x, kk')
        (b / m) * m + kpos(g.mul(k[b % m], k[a % m]))
    });
    AuxHom { elements, groupoid }
}

pub fn aux_category(g: &FinGroup, family: &[Subgroup]) -> Result<AuxCategory, EquivariantError> {
    let family = check_family(g, family)?;
    let homs = family.iter().map(|h| family.iter().map(|k| aux_hom(g, h, k)).collect()).collect();
    Ok(AuxCategory { group: g.clone(), family, homs })
}

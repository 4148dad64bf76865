//! Every Orb-space is the coequalizer of its free resolution
//! `F U F U X ⇉ F U X -> X`, witnessed by the split fork
//!
//! ```text
//! ε(φ, x)        = φ* x                 s(x)        = (1, x)
//! d₀(ψ, φ, x)    = (φ ψ, x)             t(φ, x)     = (1, φ, x)
//! d₁(ψ, φ, x)    = (ψ, φ* x)
//! ```
//!
//! with `ε d₀ = ε d₁`, `ε s = 1`, `d₀ t = 1` and `d₁ t = s ε`. The
//! identities are checked on objects and on the arrows with one
//! non-identity coordinate.

use crate::orb::OrbCategory;
use crate::space::OrbSpace;
use gpd_core::{Arr, Obj};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoequalizerReport {
    /// `ε d₀ = ε d₁`.
    pub fork: bool,
    /// `ε s = 1`.
    pub section: bool,
    /// `d₀ t = 1`.
    pub top_section: bool,
    /// `d₁ t = s ε`.
    pub square: bool,
}

impl CoequalizerReport {
    pub fn holds(&self) -> bool {
        self.fork && self.section && self.top_section && self.square
    }
}

pub fn coequalizer_check(orb: &OrbCategory, x: &OrbSpace) -> CoequalizerReport {
    let n = orb.len();
    let mut report = CoequalizerReport { fork: true, section: true, top_section: true, square: true };
    for h in 0..n {
        let one = orb.identity(h);
        let one_arr = orb.hom(h, h).groupoid.id(one);
        for g in 0..n {
            let v = x.value(g);
            let m = &orb.hom(h, g).groupoid;
            // ε s and the top section on (φ, x) pairs
            if h == g {
                report.section &= v.objects().all(|p| x.act(g, g, one, p) == p)
                    && v.arrows().all(|a| x.act_arr(g, g, one_arr, a) == a);
            }
            for phi in m.objects() {
                report.top_section &= orb.compose(h, h, g, phi, one) == phi;
                let t = |p: Obj| (one, phi, p);
                let d1 = |(psi, phi, p): (Obj, Obj, Obj)| (psi, x.act(h, g, phi, p));
                let s_eps = |p: Obj| (one, x.act(h, g, phi, p));
                report.square &= v.objects().all(|p| d1(t(p)) == s_eps(p));
            }
            report.top_section &= m.arrows().all(|a| orb.compose_arr(h, h, g, a, one_arr) == a);
            for k in 0..n {
                let (outer, inner) = (&orb.hom(h, k).groupoid, &orb.hom(k, g).groupoid);
                let obj = |psi: Obj, phi: Obj, p: Obj| {
                    x.act(h, g, orb.compose(h, k, g, phi, psi), p) == x.act(h, k, psi, x.act(k, g, phi, p))
                };
                let arr = |al: Arr, be: Arr, xi: Arr| {
                    x.act_arr(h, g, orb.compose_arr(h, k, g, be, al), xi)
                        == x.act_arr(h, k, al, x.act_arr(k, g, be, xi))
                };
                for psi in outer.objects() {
                    let ipsi = outer.id(psi);
                    for phi in inner.objects() {
                        let iphi = inner.id(phi);
                        for p in v.objects() {
                            let ip = v.id(p);
                            report.fork &= obj(psi, phi, p)
                                && outer.out_arrows(psi).iter().all(|&al| arr(al, iphi, ip))
                                && inner.out_arrows(phi).iter().all(|&be| arr(ipsi, be, ip))
                                && v.out_arrows(p).iter().all(|&xi| arr(ipsi, iphi, xi));
                        }
                    }
                }
            }
        }
    }
    report
}

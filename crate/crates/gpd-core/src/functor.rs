//! Functors between finite groupoids as plain maps on ids.

use crate::groupoid::{Arr, FinGroupoid, Obj};

/// Which functors count as maps: all of them, or only those injective on
/// every automorphism group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum MapMode {
    #[default]
    All,
    Faithful,
}

impl std::fmt::Display for MapMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MapMode::All => "all",
            MapMode::Faithful => "faithful",
        })
    }
}

impl std::str::FromStr for MapMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "all" => Ok(MapMode::All),
            "faithful" => Ok(MapMode::Faithful),
            other => Err(format!("unknown mode {other}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FunctorError {
    #[error("table sizes do not match the source groupoid")]
    Shape,
    #[error("arrow {0} is sent off the images of its endpoints")]
    Endpoints(Arr),
    #[error("identity of object {0} is not preserved")]
    Identity(Obj),
    #[error("composite of ({0},{1}) is not preserved")]
    Composition(Arr, Arr),
}

/// A functor given by its object and arrow maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Functor {
    pub obj: Vec<Obj>,
    pub arr: Vec<Arr>,
}

impl Functor {
    pub fn identity(g: &FinGroupoid) -> Self {
        Functor { obj: g.objects().collect(), arr: g.arrows().collect() }
    }

    /// The constant functor at an object of `tgt`.
    pub fn constant(src: &FinGroupoid, tgt: &FinGroupoid, x: Obj) -> Self {
        Functor { obj: vec![x; src.n_objects()], arr: vec![tgt.id(x); src.n_arrows()] }
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Functor) -> Functor {
        Functor {
            obj: first.obj.iter().map(|&x| self.obj[x]).collect(),
            arr: first.arr.iter().map(|&a| self.arr[a]).collect(),
        }
    }

    pub fn check(&self, src: &FinGroupoid, tgt: &FinGroupoid) -> Result<(), FunctorError> {
        if self.obj.len() != src.n_objects()
            || self.arr.len() != src.n_arrows()
            || self.obj.iter().any(|&x| x >= tgt.n_objects())
            || self.arr.iter().any(|&a| a >= tgt.n_arrows())
        {
            return Err(FunctorError::Shape);
        }
        for a in src.arrows() {
            let fa = self.arr[a];
            if tgt.src(fa) != self.obj[src.src(a)] || tgt.tgt(fa) != self.obj[src.tgt(a)] {
                return Err(FunctorError::Endpoints(a));
            }
        }
        for x in src.objects() {
            if self.arr[src.id(x)] != tgt.id(self.obj[x]) {
                return Err(FunctorError::Identity(x));
            }
        }
        for a in src.arrows() {
            for &b in src.in_arrows(src.src(a)) {
                if self.arr[src.comp(a, b)] != tgt.comp(self.arr[a], self.arr[b]) {
                    return Err(FunctorError::Composition(a, b));
                }
            }
        }
        Ok(())
    }

    pub fn is_functor(&self, src: &FinGroupoid, tgt: &FinGroupoid) -> bool {
        self.check(src, tgt).is_ok()
    }

    /// Injective on every automorphism group of the source.
    pub fn is_faithful(&self, src: &FinGroupoid) -> bool {
        src.objects().all(|x| {
            src.hom(x, x)
                .all(|a| src.is_identity(a) || !is_identity_image(self, src, a))
        })
    }

    /// Injective on every hom-set.
    pub fn is_faithful_on_homs(&self, src: &FinGroupoid) -> bool {
        src.objects().all(|x| {
            src.objects().all(|y| {
                let mut seen: Vec<Arr> = src.hom(x, y).map(|a| self.arr[a]).collect();
                let n = seen.len();
                seen.sort_unstable();
                seen.dedup();
                seen.len() == n
            })
        })
    }

    pub fn allowed(&self, src: &FinGroupoid, mode: MapMode) -> bool {
        match mode {
            MapMode::All => true,
            MapMode::Faithful => self.is_faithful(src),
        }
    }

    pub fn is_isomorphism(&self, src: &FinGroupoid, tgt: &FinGroupoid) -> bool {
        self.obj.len() == src.n_objects()
            && is_bijection(&self.obj, tgt.n_objects()) && is_bijection(&self.arr, tgt.n_arrows())
    }

    /// Inverse of a bijective functor.
    pub fn inverse(&self, tgt: &FinGroupoid) -> Option<Functor> {
        let mut obj = vec![usize::MAX; tgt.n_objects()];
        let mut arr = vec![usize::MAX; tgt.n_arrows()];
        for (x, &y) in self.obj.iter().enumerate() {
            obj[y] = x;
        }
        for (a, &b) in self.arr.iter().enumerate() {
            arr[b] = a;
        }
        (obj.iter().chain(&arr).all(|&v| v != usize::MAX)
            && self.obj.len() == tgt.n_objects()
            && self.arr.len() == tgt.n_arrows())
        .then_some(Functor { obj, arr })
    }
}

fn is_identity_image(f: &Functor, src: &FinGroupoid, a: Arr) -> bool {
    f.arr[a] == f.arr[src.id(src.src(a))]
}

fn is_bijection(map: &[usize], n: usize) -> bool {
    if map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    map.iter().all(|&y| y < n && !std::mem::replace(&mut seen[y], true))
}

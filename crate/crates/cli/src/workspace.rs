//! Entity files: one YAML document holding named groups, groupoids,
//! functors, diagrams and Orb-spaces. Names are unique across sections
//! and may refer to each other or to builtins (`Z4`, `S3`, `D4`, `1`,
//! `BZ2`, `terminal`, `empty`).

use crate::error::{CliError, Result};
use bundles_descent::GammaDiagram;
use gpd_core::budget::ENUM_NODES;
use gpd_core::{
    action_groupoid, coproduct_all, coset_space, delooping, empty_groupoid, gauge_groupoid_of_group, pair_groupoid,
    product, restriction, terminal_groupoid, translation_groupoid, unit_groupoid, validate_groupoid, Arr, Budget,
    Exec, FinGroup, FinGroupoid, Functor, GSet, MapMode, Obj, RawGroupoid,
};
use laxcolim::{hom_diagram, cov2_builder, LaxDiagram};
use orb_model::{build_orb, free_orbspace, r_functor, OrbCategory, OrbSpace};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

/// An entity label: YAML integers and strings are both accepted.
#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Str(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(n) => write!(f, "{n}"),
            Label::Str(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default)]
    pub groups: BTreeMap<String, GroupDef>,
    #[serde(default)]
    pub groupoids: BTreeMap<String, GroupoidDef>,
    #[serde(default)]
    pub functors: BTreeMap<String, FunctorDef>,
    #[serde(default)]
    pub diagrams: BTreeMap<String, DiagramDef>,
    #[serde(default)]
    pub orbspaces: BTreeMap<String, OrbSpaceDef>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum GroupDef {
    Alias(String),
    Spec(GroupSpec),
}

/// Either a multiplication table over named elements (the first element
/// must be the unit) or a direct product of other groups.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub elements: Option<Vec<Label>>,
    pub table: Option<Vec<Vec<Label>>>,
    pub product: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum GroupoidDef {
    Alias(String),
    Spec(Box<GroupoidSpec>),
}

/// Explicit tables (`objects`, `arrows` as `[id, src, tgt]`, `comp` as
/// `[a, b, a∘b]`, `id` as `[object, arrow]`, `inv` as `[a, a⁻¹]`) or
/// exactly one construction key.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidSpec {
    pub objects: Option<Vec<Label>>,
    #[serde(default)]
    pub arrows: Vec<(Label, Label, Label)>,
    #[serde(default)]
    pub comp: Vec<(Label, Label, Label)>,
    #[serde(default)]
    pub id: Vec<(Label, Label)>,
    #[serde(default)]
    pub inv: Vec<(Label, Label)>,
    pub delooping: Option<String>,
    pub pair: Option<usize>,
    pub unit: Option<usize>,
    pub action: Option<SubgroupRef>,
    pub gauge: Option<SubgroupRef>,
    pub translation: Option<String>,
    pub product: Option<Vec<String>>,
    pub coproduct: Option<Vec<String>>,
    pub restriction: Option<RestrictionDef>,
}

/// A group and a subgroup given by generating element names.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupRef {
    pub group: String,
    #[serde(default)]
    pub subgroup: Vec<Label>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictionDef {
    pub groupoid: String,
    pub cover: Vec<Label>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDef {
    pub source: String,
    pub target: String,
    pub obj: Vec<Label>,
    pub arr: Vec<Label>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramDef {
    pub span: Option<SpanDef>,
    pub constant: Option<String>,
    pub cech: Option<CechDef>,
    pub hom: Option<HomDef>,
}

/// `left <- centre -> right`; legs default to the constant functors at
/// object 0.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpanDef {
    pub left: String,
    pub centre: String,
    pub right: String,
    pub to_left: Option<String>,
    pub to_right: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CechDef {
    pub value: String,
    pub cover: Vec<usize>,
    pub base: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomDef {
    pub source: String,
    pub target: String,
    pub cover_bound: Option<usize>,
}

/// A free Orb-space (`free`: cell count per family member) or `R(W)`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbSpaceDef {
    pub family: Vec<String>,
    pub mode: Option<String>,
    pub free: Option<Vec<usize>>,
    pub r_of: Option<String>,
}

/// Which section a name is looked up in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Group,
    Groupoid,
    Functor,
    Diagram,
    OrbSpace,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Group => "group",
            Kind::Groupoid => "groupoid",
            Kind::Functor => "functor",
            Kind::Diagram => "diagram",
            Kind::OrbSpace => "orbspace",
        }
    }
}

/// A groupoid with the labels of its objects and arrows.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub name: String,
    pub groupoid: FinGroupoid,
    pub objects: Vec<String>,
    pub arrows: Vec<String>,
}

impl Resolved {
    fn numbered(name: &str, g: FinGroupoid) -> Self {
        Resolved {
            name: name.to_string(),
            objects: g.objects().map(|o| o.to_string()).collect(),
            arrows: g.arrows().map(|a| a.to_string()).collect(),
            groupoid: g,
        }
    }

    pub fn object(&self, l: &Label) -> Result<Obj> {
        let s = l.to_string();
        self.objects.iter().position(|o| *o == s).ok_or_else(|| CliError::UnknownEntity(format!("{}.{s}", self.name)))
    }

    pub fn arrow(&self, l: &Label) -> Result<Arr> {
        let s = l.to_string();
        self.arrows.iter().position(|a| *a == s).ok_or_else(|| CliError::UnknownEntity(format!("{}.{s}", self.name)))
    }
}

#[derive(Clone, Debug)]
pub struct ResolvedFunctor {
    pub source: Resolved,
    pub target: Resolved,
    pub functor: Functor,
}

pub enum Diagram {
    Lax(LaxDiagram),
    Constant(FinGroupoid),
    Cech { value: FinGroupoid, cover: Vec<usize>, base: usize },
}

impl Diagram {
    /// The diagram over a 2-category of indices, for colimits.
    pub fn lax(&self) -> Option<LaxDiagram> {
        match self {
            Diagram::Lax(d) => Some(d.clone()),
            Diagram::Constant(a) => Some(LaxDiagram::constant(a)),
            Diagram::Cech { .. } => None,
        }
    }

    /// The three-level diagram, for descent.
    pub fn gamma(&self) -> Option<std::result::Result<GammaDiagram, bundles_descent::DiagramError>> {
        match self {
            Diagram::Constant(a) => Some(Ok(GammaDiagram::constant(a))),
            Diagram::Cech { value, cover, base } => Some(bundles_descent::cech_diagram(value, cover, *base)),
            Diagram::Lax(_) => None,
        }
    }
}

pub struct ResolvedOrbSpace {
    pub orb: OrbCategory,
    pub space: OrbSpace,
    pub family: Vec<String>,
}

const MAX_DEPTH: usize = 64;

#[derive(Debug, Default)]
pub struct Workspace {
    pub doc: Document,
    stem: Option<String>,
}

fn parse_error(e: serde_yaml::Error) -> CliError {
    let line = e.location().map_or(0, |l| l.line());
    CliError::Parse { line, message: e.to_string() }
}

impl Workspace {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: Document = if text.trim().is_empty() {
            Document::default()
        } else {
            serde_yaml::from_str(text).map_err(parse_error)?
        };
        let ws = Workspace { doc, stem: None };
        ws.check_unique()?;
        Ok(ws)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let mut ws = Self::parse(&text)?;
        ws.stem = path.file_stem().map(|s| s.to_string_lossy().into_owned());
        Ok(ws)
    }

    fn check_unique(&self) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        for name in self.names().into_iter().map(|(_, n)| n) {
            if !seen.insert(name.clone()) {
                return Err(CliError::Parse { line: 0, message: format!("name {name} is defined twice") });
            }
        }
        Ok(())
    }

    /// Every defined name with its section, sections in document order.
    pub fn names(&self) -> Vec<(Kind, String)> {
        let d = &self.doc;
        let mut out = Vec::new();
        out.extend(d.groups.keys().map(|k| (Kind::Group, k.clone())));
        out.extend(d.groupoids.keys().map(|k| (Kind::Groupoid, k.clone())));
        out.extend(d.functors.keys().map(|k| (Kind::Functor, k.clone())));
        out.extend(d.diagrams.keys().map(|k| (Kind::Diagram, k.clone())));
        out.extend(d.orbspaces.keys().map(|k| (Kind::OrbSpace, k.clone())));
        out
    }

    /// The entity a bare file reference stands for: the only one of its
    /// kind, or the one named after the file.
    pub fn default_name(&self, kind: Kind) -> Option<String> {
        let names: Vec<String> = self.names().into_iter().filter(|(k, _)| *k == kind).map(|(_, n)| n).collect();
        if names.len() == 1 {
            return names.into_iter().next();
        }
        self.stem.clone().filter(|s| names.contains(s))
    }

    pub fn group(&self, name: &str) -> Result<FinGroup> {
        self.group_at(name, 0)
    }

    fn group_at(&self, name: &str, depth: usize) -> Result<FinGroup> {
        if depth > MAX_DEPTH {
            return Err(CliError::invalid("group", name, "definition is cyclic"));
        }
        let Some(def) = self.doc.groups.get(name) else {
            return builtin_group(name).ok_or_else(|| CliError::UnknownEntity(name.to_string()));
        };
        match def {
            GroupDef::Alias(other) => self.group_at(other, depth + 1),
            GroupDef::Spec(spec) => match (&spec.elements, &spec.table, &spec.product) {
                (Some(elements), Some(table), None) => {
                    let names: Vec<String> = elements.iter().map(ToString::to_string).collect();
                    let index = |l: &Label| {
                        let s = l.to_string();
                        names.iter().position(|n| *n == s).ok_or_else(|| CliError::UnknownEntity(format!("{name}.{s}")))
                    };
                    let mul = table
                        .iter()
                        .map(|row| row.iter().map(index).collect::<Result<Vec<_>>>())
                        .collect::<Result<Vec<_>>>()?;
                    FinGroup::from_table(names, mul).map_err(|e| CliError::invalid("group", name, e))
                }
                (None, None, Some(parts)) => parts.iter().try_fold(FinGroup::trivial(), |acc, p| {
                    let g = self.group_at(p, depth + 1)?;
                    Ok(if acc.order() == 1 { g } else { FinGroup::product(&acc, &g) })
                }),
                _ => Err(CliError::invalid("group", name, "give either elements and table, or product")),
            },
        }
    }

    /// Generated subgroup from element names.
    pub fn subgroup(&self, g: &FinGroup, group_name: &str, gens: &[Label]) -> Result<Vec<usize>> {
        let gens = gens
            .iter()
            .map(|l| {
                let s = l.to_string();
                g.element_by_name(&s).ok_or_else(|| CliError::UnknownEntity(format!("{group_name}.{s}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut k = g.closure(&gens);
        k.sort_unstable();
        Ok(k)
    }

    pub fn groupoid(&self, name: &str) -> Result<Resolved> {
        self.groupoid_at(name, 0)
    }

    fn groupoid_at(&self, name: &str, depth: usize) -> Result<Resolved> {
        if depth > MAX_DEPTH {
            return Err(CliError::invalid("groupoid", name, "definition is cyclic"));
        }
        let Some(def) = self.doc.groupoids.get(name) else {
            return self.builtin_groupoid(name, depth);
        };
        let spec = match def {
            GroupoidDef::Alias(other) => {
                let mut r = self.groupoid_at(other, depth + 1)?;
                r.name = name.to_string();
                return Ok(r);
            }
            GroupoidDef::Spec(spec) => spec,
        };
        let sub = |n: &str| self.groupoid_at(n, depth + 1).map(|r| r.groupoid);
        let invalid = |m: &str| CliError::invalid("groupoid", name, m);
        let constructions = [
            spec.delooping.is_some(),
            spec.pair.is_some(),
            spec.unit.is_some(),
            spec.action.is_some(),
            spec.gauge.is_some(),
            spec.translation.is_some(),
            spec.product.is_some(),
            spec.coproduct.is_some(),
            spec.restriction.is_some(),
        ]
        .iter()
        .filter(|&&b| b)
        .count();
        if let Some(objects) = &spec.objects {
            if constructions > 0 {
                return Err(invalid("tables and a construction given together"));
            }
            let raw = RawGroupoid {
                objects: objects.iter().map(ToString::to_string).collect(),
                arrows: spec.arrows.iter().map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string())).collect(),
                comp: spec.comp.iter().map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string())).collect(),
                id: spec.id.iter().map(|(o, a)| (o.to_string(), a.to_string())).collect(),
                inv: spec.inv.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            };
            let labeled = validate_groupoid(&raw).map_err(|e| CliError::invalid("groupoid", name, e))?;
            return Ok(Resolved {
                name: name.to_string(),
                groupoid: labeled.groupoid,
                objects: labeled.objects,
                arrows: labeled.arrows,
            });
        }
        if constructions != 1 {
            return Err(invalid("expected tables or exactly one construction"));
        }
        let g = if let Some(group) = &spec.delooping {
            delooping(&self.group_at(group, depth + 1)?)
        } else if let Some(n) = spec.pair {
            pair_groupoid(n)
        } else if let Some(n) = spec.unit {
            unit_groupoid(n)
        } else if let Some(s) = &spec.action {
            let g = self.group_at(&s.group, depth + 1)?;
            let k = self.subgroup(&g, &s.group, &s.subgroup)?;
            action_groupoid(&g, &coset_space(&g, &k).0)
        } else if let Some(s) = &spec.gauge {
            let g = self.group_at(&s.group, depth + 1)?;
            let k = self.subgroup(&g, &s.group, &s.subgroup)?;
            coset_gauge(&g, &k)
        } else if let Some(t) = &spec.translation {
            translation_groupoid(&sub(t)?)
        } else if let Some(parts) = &spec.product {
            let mut acc = terminal_groupoid();
            for (i, p) in parts.iter().enumerate() {
                let g = sub(p)?;
                acc = if i == 0 { g } else { product(&acc, &g) };
            }
            acc
        } else if let Some(parts) = &spec.coproduct {
            coproduct_all(&parts.iter().map(|p| sub(p)).collect::<Result<Vec<_>>>()?)
        } else if let Some(r) = &spec.restriction {
            let base = self.groupoid_at(&r.groupoid, depth + 1)?;
            let cover = r.cover.iter().map(|l| base.object(l)).collect::<Result<Vec<_>>>()?;
            restriction(&base.groupoid, &cover)
                .map_err(|e| CliError::invalid("groupoid", name, format!("object {} is not covered", e.0)))?
                .groupoid
        } else {
            unreachable!("exactly one construction")
        };
        Ok(Resolved::numbered(name, g))
    }

    fn builtin_groupoid(&self, name: &str, depth: usize) -> Result<Resolved> {
        let g = match name {
            "terminal" | "pt" => terminal_groupoid(),
            "empty" => empty_groupoid(),
            _ => match name.strip_prefix('B') {
                Some(group) if !group.is_empty() => match self.group_at(group, depth + 1) {
                    Ok(g) => delooping(&g),
                    Err(CliError::UnknownEntity(_)) => return Err(CliError::UnknownEntity(name.to_string())),
                    Err(e) => return Err(e),
                },
                _ => return Err(CliError::UnknownEntity(name.to_string())),
            },
        };
        Ok(Resolved::numbered(name, g))
    }

    pub fn functor(&self, name: &str) -> Result<ResolvedFunctor> {
        let def = self.doc.functors.get(name).ok_or_else(|| CliError::UnknownEntity(name.to_string()))?;
        let source = self.groupoid(&def.source)?;
        let target = self.groupoid(&def.target)?;
        let obj = def.obj.iter().map(|l| target.object(l)).collect::<Result<Vec<_>>>()?;
        let arr = def.arr.iter().map(|l| target.arrow(l)).collect::<Result<Vec<_>>>()?;
        let functor = Functor { obj, arr };
        functor
            .check(&source.groupoid, &target.groupoid)
            .map_err(|e| CliError::invalid("functor", name, e))?;
        Ok(ResolvedFunctor { source, target, functor })
    }

    pub fn diagram(&self, name: &str, cover_bound: usize) -> Result<Diagram> {
        let def = self.doc.diagrams.get(name).ok_or_else(|| CliError::UnknownEntity(name.to_string()))?;
        let given = [def.span.is_some(), def.constant.is_some(), def.cech.is_some(), def.hom.is_some()];
        if given.iter().filter(|&&b| b).count() != 1 {
            return Err(CliError::invalid("diagram", name, "expected exactly one of span, constant, cech, hom"));
        }
        if let Some(s) = &def.span {
            let (l, c, r) = (self.groupoid(&s.left)?, self.groupoid(&s.centre)?, self.groupoid(&s.right)?);
            let leg = |given: &Option<String>, tgt: &Resolved| -> Result<Functor> {
                match given {
                    Some(f) => {
                        let f = self.functor(f)?;
                        if f.source.groupoid != c.groupoid || f.target.groupoid != tgt.groupoid {
                            return Err(CliError::invalid("diagram", name, "leg does not match the span"));
                        }
                        Ok(f.functor)
                    }
                    None if tgt.groupoid.n_objects() > 0 || c.groupoid.n_objects() == 0 => {
                        let x = if tgt.groupoid.n_objects() > 0 { 0 } else { usize::MAX };
                        Ok(Functor::constant(&c.groupoid, &tgt.groupoid, x))
                    }
                    None => Err(CliError::invalid("diagram", name, "no constant leg into an empty groupoid")),
                }
            };
            let (fl, fr) = (leg(&s.to_left, &l)?, leg(&s.to_right, &r)?);
            return Ok(Diagram::Lax(LaxDiagram::span(&l.groupoid, &c.groupoid, &r.groupoid, fl, fr)));
        }
        if let Some(a) = &def.constant {
            return Ok(Diagram::Constant(self.groupoid(a)?.groupoid));
        }
        if let Some(c) = &def.cech {
            return Ok(Diagram::Cech { value: self.groupoid(&c.value)?.groupoid, cover: c.cover.clone(), base: c.base });
        }
        let h = def.hom.as_ref().expect("one kind given");
        let (src, tgt) = (self.groupoid(&h.source)?, self.groupoid(&h.target)?);
        let bound = h.cover_bound.unwrap_or(cover_bound);
        let cov = cov2_builder(src.groupoid.n_objects(), bound);
        let hd = hom_diagram(&src.groupoid, &tgt.groupoid, cov, MapMode::All, Budget::or_env(ENUM_NODES), Exec::default())
            .map_err(|_| CliError::BudgetExceeded(format!("hom diagram {name}")))?;
        Ok(Diagram::Lax(hd.diagram))
    }

    pub fn orbspace(&self, name: &str) -> Result<ResolvedOrbSpace> {
        let def = self.doc.orbspaces.get(name).ok_or_else(|| CliError::UnknownEntity(name.to_string()))?;
        let groups = def.family.iter().map(|g| self.group(g)).collect::<Result<Vec<_>>>()?;
        let mode = match &def.mode {
            Some(m) => m.parse().map_err(|e: String| CliError::invalid("orbspace", name, e))?,
            None => MapMode::All,
        };
        let orb = build_orb(&groups, mode).map_err(|_| CliError::BudgetExceeded("orb".into()))?;
        let space = match (&def.free, &def.r_of) {
            (Some(cells), None) => {
                if cells.len() != groups.len() {
                    return Err(CliError::invalid("orbspace", name, "one cell count per family member"));
                }
                free_orbspace(&orb, cells).space
            }
            (None, Some(w)) => {
                let w = self.groupoid(w)?;
                r_functor(&orb, &w.groupoid).map_err(|_| CliError::BudgetExceeded(format!("R({})", w.name)))?.space
            }
            _ => return Err(CliError::invalid("orbspace", name, "give exactly one of free, r_of")),
        };
        Ok(ResolvedOrbSpace { orb, space, family: def.family.clone() })
    }
}

/// `Z<n>`, `S<n>` (n ≤ 5), `D<n>` (order 2n) and `1`.
pub fn builtin_group(name: &str) -> Option<FinGroup> {
    if name == "1" {
        return Some(FinGroup::trivial());
    }
    let (kind, n) = name.split_at(1.min(name.len()));
    let n: usize = n.parse().ok().filter(|&n| n > 0)?;
    match kind {
        "Z" => Some(FinGroup::cyclic(n)),
        "S" if n <= 5 => Some(FinGroup::symmetric(n)),
        "D" => Some(FinGroup::dihedral(n)),
        _ => None,
    }
}

/// Gauge groupoid of the principal `K`-bundle `G -> G/K`, `k·x = x k⁻¹`.
pub fn coset_gauge(g: &FinGroup, k: &[usize]) -> FinGroupoid {
    let kg = g.subgroup(k).expect("closed under products");
    let (cosets, proj) = coset_space(g, k);
    let p = GSet::from_group(&kg, g.order(), |i, x| g.mul(x, g.inv(k[i])));
    gauge_groupoid_of_group(&kg, &p, cosets.carrier(), &proj).expect("free and transitive on fibres")
}

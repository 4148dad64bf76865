//! Subcommands. Each builds a [`Report`]; a report with a failed check
//! makes the process exit with status 1.

use crate::acceptance;
use crate::error::{CliError, Result};
use crate::report::{Format, Report};
use crate::workspace::{builtin_group, Kind, Workspace};
use clap::{Parser, Subcommand};
use functor_calc::{categorical_equivalence, mapping_groupoid};
use gpd_core::budget::{ENUM_NODES, NERVE_GENERATORS};
use gpd_core::{components, iso_check, vertex_group, Budget, Exec, FinGroup, MapMode};
use serde_json::json;
use std::path::Path;

#[derive(Parser, Debug)]
#[command(name = "orbkit", version, about = "Finite groupoids, their mapping groupoids, colimits and Orb-spaces")]
pub struct Cli {
    /// Which functors count as maps: all, or faithful on automorphism groups
    #[arg(long, global = true)]
    pub mode: Option<MapMode>,
    /// Number of homology groups to compute
    #[arg(long, global = true, default_value_t = 5)]
    pub degree: usize,
    /// Node budget for every search; overrides ORBKIT_BUDGET
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Largest cover size in cover diagrams
    #[arg(long = "cover-bound", global = true, default_value_t = 2)]
    pub cover_bound: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Resolve and check every entity in a file
    Validate { file: String },
    /// Build a groupoid and summarize it
    Build { groupoid: String },
    /// Integer homology of the nerve
    Homology { groupoid: String },
    /// The mapping groupoid Map(H, G)
    Map { source: String, target: String },
    /// Decide whether a functor is an equivalence
    Equiv { functor: String },
    /// Homotopy colimit of a diagram and its universal property against a target
    Hocolim {
        diagram: String,
        #[arg(long)]
        target: Option<String>,
    },
    /// Compare a presheaf value with its descent groupoid
    Descent { diagram: String },
    /// The Orb category of a family of groups
    Orb {
        #[arg(long, value_delimiter = ',', required = true)]
        family: Vec<String>,
    },
    /// Check the adjunction, unit and counit between groupoids and Orb-spaces
    LrCheck {
        /// An Orb-space entity; overrides --family and --cells
        orbspace: Option<String>,
        #[arg(long, value_delimiter = ',', default_values_t = ["Z2".to_string(), "Z3".to_string()])]
        family: Vec<String>,
        /// Cell counts per family member, cell vectors separated by ';'
        #[arg(long)]
        cells: Option<String>,
        #[arg(long, default_value = "BS3")]
        target: String,
    },
    /// Compare the orbit category with Orb on a family of subgroups
    Tvc {
        group: String,
        /// Subgroups separated by ';', each given by generator names separated by ','
        family: String,
    },
    /// Run the acceptance criteria and print a deterministic report
    Acceptance,
}

/// `path:name`, `path`, or a builtin name.
pub fn resolve_ref(r: &str, kind: Kind) -> Result<(Workspace, String)> {
    if let Some((path, name)) = r.rsplit_once(':') {
        if Path::new(path).is_file() {
            return Ok((Workspace::load(Path::new(path))?, name.to_string()));
        }
    }
    let path = Path::new(r);
    if path.is_file() {
        let ws = Workspace::load(path)?;
        let name = ws.default_name(kind).ok_or_else(|| CliError::UnknownEntity(format!("{r}: no single {}", kind.as_str())))?;
        return Ok((ws, name));
    }
    Ok((Workspace::default(), r.to_string()))
}

fn group_ref(r: &str) -> Result<(FinGroup, String)> {
    if let Some(g) = builtin_group(r) {
        return Ok((g, r.to_string()));
    }
    let (ws, name) = resolve_ref(r, Kind::Group)?;
    Ok((ws.group(&name)?, name))
}

fn family_groups(names: &[String]) -> Result<Vec<FinGroup>> {
    names.iter().map(|n| group_ref(n).map(|(g, _)| g)).collect()
}

pub fn run(cli: &Cli) -> Result<Report> {
    let mode = |default: MapMode| cli.mode.unwrap_or(default);
    match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Build { groupoid } => build(groupoid),
        Command::Homology { groupoid } => homology(groupoid, cli.degree),
        Command::Map { source, target } => map(source, target, mode(MapMode::All)),
        Command::Equiv { functor } => equiv(functor),
        Command::Hocolim { diagram, target } => hocolim(diagram, target.as_deref(), cli.cover_bound),
        Command::Descent { diagram } => descent(diagram, cli.cover_bound),
        Command::Orb { family } => orb(family, mode(MapMode::All)),
        Command::LrCheck { orbspace, family, cells, target } => {
            lr_check(orbspace.as_deref(), family, cells.as_deref(), target, mode(MapMode::All))
        }
        Command::Tvc { group, family } => tvc(group, family, mode(MapMode::Faithful)),
        Command::Acceptance => Ok(acceptance::report(&acceptance::run_all())),
    }
}

fn validate(file: &str) -> Result<Report> {
    let ws = Workspace::load(Path::new(file))?;
    let mut items = Vec::new();
    for (kind, name) in ws.names() {
        let outcome = match kind {
            Kind::Group => ws.group(&name).map(|g| format!("order {}", g.order())),
            Kind::Groupoid => ws
                .groupoid(&name)
                .map(|r| format!("{} objects, {} arrows", r.groupoid.n_objects(), r.groupoid.n_arrows())),
            Kind::Functor => ws.functor(&name).map(|f| format!("{} -> {}", f.source.name, f.target.name)),
            Kind::Diagram => ws.diagram(&name, 2).and_then(|d| match (d.lax(), d.gamma()) {
                (Some(l), _) => laxcolim::validate_diagram(&l)
                    .map(|_| "lax diagram".to_string())
                    .map_err(|e| CliError::invalid("diagram", &name, format!("{e:?}"))),
                (None, Some(g)) => g
                    .and_then(|g| g.validate().map(|_| g))
                    .map(|_| "descent diagram".to_string())
                    .map_err(|e| CliError::invalid("diagram", &name, e)),
                (None, None) => unreachable!("every diagram has a shape"),
            }),
            Kind::OrbSpace => ws.orbspace(&name).and_then(|o| {
                orb_model::validate_orbspace(&o.orb, &o.space)
                    .map(|_| format!("{} levels", o.space.levels()))
                    .map_err(|e| CliError::invalid("orbspace", &name, e))
            }),
        };
        let mut item = Report::new();
        item.kv("kind", kind.as_str()).kv("name", name.as_str());
        match outcome {
            Ok(summary) => {
                item.kv("summary", summary).check("valid", true);
            }
            Err(e @ (CliError::Invalid { .. } | CliError::UnknownEntity(_))) => {
                let message = match e {
                    CliError::Invalid { message, .. } => message,
                    other => other.to_string(),
                };
                item.kv("error", message).check("valid", false);
            }
            Err(other) => return Err(other),
        }
        items.push(item);
    }
    let mut r = Report::new();
    r.kv("file", file).items("entities", items);
    Ok(r)
}

fn groupoid_summary(g: &gpd_core::FinGroupoid) -> Report {
    let comps = components(g);
    let mut r = Report::new();
    r.kv("objects", g.n_objects()).kv("arrows", g.n_arrows()).kv("pi0", comps.len());
    let items = comps
        .iter()
        .map(|c| {
            let (aut, _) = vertex_group(g, c[0]);
            let mut item = Report::new();
            item.inline(vec![
                ("objects", json!(c.len())),
                ("automorphisms", json!(aut.order())),
                ("abelian", json!(aut.is_abelian())),
            ]);
            item
        })
        .collect();
    r.items("components", items);
    r
}

fn build(groupoid: &str) -> Result<Report> {
    let (ws, name) = resolve_ref(groupoid, Kind::Groupoid)?;
    let g = ws.groupoid(&name)?;
    let mut r = Report::new();
    r.kv("groupoid", name.as_str()).section("summary", groupoid_summary(&g.groupoid));
    Ok(r)
}

/// `Z`, `Z^2`, `Z/2`, `Z + Z/2`, or `0`.
pub fn homology_name(rank: usize, torsion: &[String]) -> String {
    let mut parts = Vec::new();
    match rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    parts.extend(torsion.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn homology(groupoid: &str, degree: usize) -> Result<Report> {
    let (ws, name) = resolve_ref(groupoid, Kind::Groupoid)?;
    let g = ws.groupoid(&name)?;
    let table = nerve_homotopy::homology_with(
        &g.groupoid,
        degree,
        nerve_homotopy::Coeffs::Integers,
        Budget::or_env(NERVE_GENERATORS),
        Exec::default(),
    )
    .map_err(|_| CliError::BudgetExceeded("homology".into()))?;
    let mut r = Report::new();
    r.kv("groupoid", name.as_str()).kv("degree", degree);
    let mut groups = Report::new();
    for (n, h) in table.groups.iter().enumerate() {
        let torsion: Vec<String> = h.torsion.iter().map(ToString::to_string).collect();
        groups.kv(&format!("H{n}"), homology_name(h.rank, &torsion));
    }
    r.section("homology", groups);
    Ok(r)
}

fn map(source: &str, target: &str, mode: MapMode) -> Result<Report> {
    let (ws, h) = resolve_ref(source, Kind::Groupoid)?;
    let h = ws.groupoid(&h)?;
    let (ws, g) = resolve_ref(target, Kind::Groupoid)?;
    let g = ws.groupoid(&g)?;
    let m = mapping_groupoid(&h.groupoid, &g.groupoid, mode).map_err(|_| CliError::BudgetExceeded("map".into()))?;
    let mut r = Report::new();
    r.inline(vec![("objects", json!(m.groupoid.n_objects())), ("pi0", json!(components(&m.groupoid).len()))])
        .kv("arrows", m.groupoid.n_arrows())
        .kv("mode", mode.to_string());
    Ok(r)
}

fn equiv(functor: &str) -> Result<Report> {
    let (ws, name) = resolve_ref(functor, Kind::Functor)?;
    let f = ws.functor(&name)?;
    let v = categorical_equivalence(&f.functor, &f.source.groupoid, &f.target.groupoid);
    let mut r = Report::new();
    r.kv("functor", name.as_str())
        .kv("source", f.source.name.as_str())
        .kv("target", f.target.name.as_str())
        .kv("fully_faithful", v.fully_faithful)
        .kv("essentially_surjective", v.essentially_surjective)
        .check("equivalence", v.is_equivalence());
    Ok(r)
}

fn hocolim(diagram: &str, target: Option<&str>, cover_bound: usize) -> Result<Report> {
    let (ws, name) = resolve_ref(diagram, Kind::Diagram)?;
    let d = ws
        .diagram(&name, cover_bound)?
        .lax()
        .ok_or_else(|| CliError::usage(format!("{name} is a descent diagram; use the descent command")))?;
    laxcolim::validate_diagram(&d).map_err(|e| CliError::invalid("diagram", &name, format!("{e:?}")))?;
    let pres = laxcolim::hocolim_presentation(&d);
    let mut r = Report::new();
    r.kv("diagram", name.as_str())
        .inline(vec![
            ("vertices", json!(pres.n_vertices)),
            ("generators", json!(pres.generators.len())),
            ("relations", json!(pres.relations.len())),
        ]);
    match laxcolim::realize(&pres, Budget::or_env(ENUM_NODES)) {
        Ok(real) => {
            r.section("realized", groupoid_summary(&real.groupoid));
        }
        Err(_) => {
            r.kv("realized", "not finite within the budget");
        }
    }
    if let Some(t) = target {
        let (ws, w) = resolve_ref(t, Kind::Groupoid)?;
        let w = ws.groupoid(&w)?;
        let u = laxcolim::universal_property_report(&d, &w.groupoid, Budget::or_env(ENUM_NODES), Exec::default())
            .map_err(|e| match e {
                laxcolim::ConeError::Budget { .. } | laxcolim::ConeError::Enumeration(_) => {
                    CliError::BudgetExceeded("hocolim".into())
                }
                other => CliError::invalid("diagram", &name, other),
            })?;
        let mut s = Report::new();
        s.kv("target", w.name.as_str())
            .inline(vec![("hom_objects", json!(u.hom_objects)), ("cone_objects", json!(u.cone_objects))])
            .inline(vec![("hom_arrows", json!(u.hom_arrows)), ("cone_arrows", json!(u.cone_arrows))])
            .kv("based_objects", u.based_objects)
            .check("isomorphism", u.is_isomorphism());
        r.section("universal_property", s);
    }
    Ok(r)
}

fn descent(diagram: &str, cover_bound: usize) -> Result<Report> {
    let (ws, name) = resolve_ref(diagram, Kind::Diagram)?;
    let d = ws.diagram(&name, cover_bound)?;
    let mut r = Report::new();
    r.kv("diagram", name.as_str());
    match &d {
        crate::workspace::Diagram::Cech { value, cover, base } => {
            let rep = bundles_descent::descent_check(value, cover, *base).map_err(|e| match e {
                bundles_descent::DescentError::Holim(_) => CliError::BudgetExceeded("descent".into()),
                other => CliError::invalid("diagram", &name, other),
            })?;
            r.inline(vec![
                ("global_objects", json!(rep.global.n_objects())),
                ("global_arrows", json!(rep.global.n_arrows())),
            ])
            .inline(vec![
                ("holim_objects", json!(rep.holim.groupoid.n_objects())),
                ("holim_arrows", json!(rep.holim.groupoid.n_arrows())),
            ])
            .kv("fully_faithful", rep.verdict.fully_faithful)
            .kv("essentially_surjective", rep.verdict.essentially_surjective)
            .check("descent", rep.holds());
        }
        crate::workspace::Diagram::Constant(a) => {
            let g = d.gamma().expect("constant diagrams have three levels").map_err(|e| CliError::invalid("diagram", &name, e))?;
            let h = bundles_descent::holim_gamma(&g).map_err(|_| CliError::BudgetExceeded("descent".into()))?;
            r.inline(vec![("holim_objects", json!(h.groupoid.n_objects())), ("holim_arrows", json!(h.groupoid.n_arrows()))])
                .check("isomorphic_to_value", iso_check(&h.groupoid, a).is_iso());
        }
        crate::workspace::Diagram::Lax(_) => {
            return Err(CliError::usage(format!("{name} is not a descent diagram; use the hocolim command")));
        }
    }
    Ok(r)
}

fn orb(family: &[String], mode: MapMode) -> Result<Report> {
    let groups = family_groups(family)?;
    let orb = orb_model::build_orb(&groups, mode).map_err(|_| CliError::BudgetExceeded("orb".into()))?;
    let mut r = Report::new();
    r.kv("family", family.to_vec()).kv("mode", mode.to_string());
    let mut items = Vec::new();
    for h in 0..orb.len() {
        for g in 0..orb.len() {
            let m = &orb.hom(h, g).groupoid;
            let mut item = Report::new();
            item.inline(vec![
                ("source", json!(family[h])),
                ("target", json!(family[g])),
                ("objects", json!(m.n_objects())),
                ("arrows", json!(m.n_arrows())),
                ("pi0", json!(components(m).len())),
            ]);
            items.push(item);
        }
    }
    r.items("homs", items).check("laws", orb.check_laws());
    Ok(r)
}

fn parse_cells(s: &str, n: usize) -> Result<Vec<Vec<usize>>> {
    s.split(';')
        .map(|v| {
            let cells = v
                .split(',')
                .map(|c| c.trim().parse::<usize>().map_err(|e| CliError::usage(format!("cell count {c:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            if cells.len() != n {
                return Err(CliError::usage(format!("cell vector {v:?} needs {n} entries")));
            }
            Ok(cells)
        })
        .collect()
}

fn orb_error(e: orb_model::OrbError) -> CliError {
    match e {
        orb_model::OrbError::Space(s) => CliError::invalid("orbspace", "X", s),
        _ => CliError::BudgetExceeded("lr-check".into()),
    }
}

fn lr_check(orbspace: Option<&str>, family: &[String], cells: Option<&str>, target: &str, mode: MapMode) -> Result<Report> {
    let (wws, wname) = resolve_ref(target, Kind::Groupoid)?;
    let w = wws.groupoid(&wname)?;
    let mut r = Report::new();
    let (orb, spaces): (orb_model::OrbCategory, Vec<(String, orb_model::OrbSpace)>) = match orbspace {
        Some(x) => {
            let (ws, name) = resolve_ref(x, Kind::OrbSpace)?;
            let o = ws.orbspace(&name)?;
            r.kv("family", o.family.clone());
            (o.orb, vec![(name, o.space)])
        }
        None => {
            let groups = family_groups(family)?;
            let orb = orb_model::build_orb(&groups, mode).map_err(|_| CliError::BudgetExceeded("orb".into()))?;
            let vectors = match cells {
                Some(c) => parse_cells(c, groups.len())?,
                None => (0..groups.len()).map(|g| orb_model::delta(groups.len(), g)).collect(),
            };
            r.kv("family", family.to_vec()).kv("mode", mode.to_string());
            let spaces = vectors
                .into_iter()
                .map(|v| {
                    let label = format!("free{v:?}");
                    (label, orb_model::free_orbspace(&orb, &v).space)
                })
                .collect();
            (orb, spaces)
        }
    };
    r.kv("target", w.name.as_str());
    let mut items = Vec::new();
    for (label, x) in &spaces {
        let adj = orb_model::adjunction_check(&orb, x, &w.groupoid).map_err(orb_error)?;
        let unit = orb_model::unit_check(&orb, x).map_err(orb_error)?;
        let mut item = Report::new();
        item.kv("space", label.as_str())
            .inline(vec![("hom_objects", json!(adj.hom_objects)), ("orb_objects", json!(adj.orb_objects))])
            .inline(vec![("hom_arrows", json!(adj.hom_arrows)), ("orb_arrows", json!(adj.orb_arrows))])
            .check("adjunction", adj.is_isomorphism())
            .check("unit", unit.holds());
        items.push(item);
    }
    r.items("spaces", items);
    let counit = orb_model::counit_check(&orb, &w.groupoid).map_err(orb_error)?;
    r.inline(vec![("counit_vertices", json!(counit.vertices)), ("counit_components", json!(counit.components))])
        .check("counit", counit.holds());
    Ok(r)
}

/// Subgroups separated by `;`, generators by `,`. An empty entry or `1`
/// is the trivial subgroup; `G` is the whole group.
pub fn parse_family(g: &FinGroup, spec: &str) -> Result<Vec<Vec<usize>>> {
    spec.split(';')
        .map(|s| {
            let s = s.trim();
            let gens: Vec<usize> = match s {
                "G" => (0..g.order()).collect(),
                "" | "1" => vec![g.unit()],
                _ => s
                    .split(',')
                    .map(|e| g.element_by_name(e.trim()).ok_or_else(|| CliError::UnknownEntity(e.trim().to_string())))
                    .collect::<Result<Vec<_>>>()?,
            };
            let mut k = g.closure(&gens);
            k.sort_unstable();
            Ok(k)
        })
        .collect()
}

fn tvc(group: &str, family: &str, mode: MapMode) -> Result<Report> {
    let (g, name) = group_ref(group)?;
    let fam = parse_family(&g, family)?;
    let to_cli = |e: equivariant::EquivariantError| match e {
        equivariant::EquivariantError::NotASubgroup { index } => CliError::invalid("family", family, format!("member {index}")),
        _ => CliError::BudgetExceeded("tvc".into()),
    };
    let mut r = Report::new();
    r.kv("group", name.as_str())
        .kv("family", fam.iter().map(|k| k.len()).collect::<Vec<_>>())
        .kv("mode", mode.to_string());
    let contractible = equivariant::f_contractible_check(&g, &fam, mode).map_err(to_cli)?;
    r.check("f_contractible", contractible);
    if contractible {
        let t = equivariant::tvc_compare(&g, &fam, mode).map_err(to_cli)?;
        let items = t
            .pairs
            .iter()
            .map(|p| {
                let mut item = Report::new();
                item.inline(vec![
                    ("h", json!(p.h)),
                    ("k", json!(p.k)),
                    ("aux_objects", json!(p.aux_objects)),
                    ("orbit_homs", json!(p.orbit_homs)),
                    ("orb_objects", json!(p.orb_objects)),
                    ("orb_components", json!(p.orb_components)),
                ])
                .check("to_orbit", p.to_orbit)
                .check("to_orb", p.to_orb);
                item
            })
            .collect();
        r.items("pairs", items)
            .check("functorial", t.functorial)
            .check("orbit_pi0_surjective", t.orbit_pi0_surjective)
            .check("orb_pi0_surjective", t.orb_pi0_surjective);
    }
    Ok(r)
}

//! One function per command. Each returns a report and an exit status:
//! 0 on success, 2 when the requested cover does not exist.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use coverforge_core::classgroup::{class_group, torsion_check, torsion_cover, ClassGroupData};
use coverforge_core::cover::{
    cross_check_abelian_toric, enumerate_covers, existence_toric, gmax, max_toric_cover,
    reduced_relations_solvable, solve_building_data, verify_fundamental_relations,
    AbelianCoverData, BranchData, ExistenceReport,
};
use coverforge_core::fan::{CoverSpec, Fan};
use coverforge_core::{BigInt, Error};
use serde_json::{json, Value};

use crate::io::{load_abstract, load_fan, load_sublattice, parse_orders};
use crate::report::{self, cover_spec, elements, group, int, ints, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    ClGroup,
    Exists,
    MaxCover,
    Covers,
    Verify,
    TorsionCover,
    CrossCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::ClGroup => "clgroup",
            Command::Exists => "exists",
            Command::MaxCover => "maxcover",
            Command::Covers => "covers",
            Command::Verify => "verify",
            Command::TorsionCover => "torsion-cover",
            Command::CrossCheck => "crosscheck",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Source {
    Fan(PathBuf),
    Abstract(PathBuf),
}

#[derive(Clone, Debug)]
pub struct Job {
    pub command: Command,
    pub source: Source,
    pub orders: Option<String>,
    pub bound: u64,
    pub sublattice: Option<PathBuf>,
}

#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub exit: u8,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Outcome { report, exit: 0 }
    }
}

struct Input {
    fan: Option<Fan>,
    cl: ClassGroupData,
}

impl Input {
    fn load(source: &Source) -> Result<Self> {
        Ok(match source {
            Source::Fan(p) => {
                let fan = load_fan(p)?;
                let cl = class_group(&fan)?;
                Input { fan: Some(fan), cl }
            }
            Source::Abstract(p) => Input {
                fan: None,
                cl: load_abstract(p)?,
            },
        })
    }

    fn mode(&self) -> &'static str {
        if self.fan.is_some() {
            "toric"
        } else {
            "abstract"
        }
    }

    fn require_fan(&self, command: Command) -> Result<&Fan> {
        match &self.fan {
            Some(f) => Ok(f),
            None => bail!("`{}` works on fans; pass --fan", command.name()),
        }
    }

    fn branch(&self, orders: Option<&str>, command: Command) -> Result<BranchData> {
        let Some(arg) = orders else {
            bail!("`{}` needs --orders", command.name());
        };
        let orders = parse_orders(arg)?;
        let n = self.cl.divisor_count();
        if orders.len() != n {
            bail!(
                "--orders has {} entries but the input has {} divisors",
                orders.len(),
                n
            );
        }
        Ok(BranchData::new(orders)?)
    }
}

pub fn run(job: &Job) -> Result<Outcome> {
    if job.bound == 0 {
        bail!("--bound must be at least 1");
    }
    let input = Input::load(&job.source)?;
    let r = Report::new(job.command.name(), input.mode());
    let result = match job.command {
        Command::ClGroup => clgroup(&input, r),
        Command::Exists => exists(&input, job, r),
        Command::MaxCover => maxcover(&input, job, r),
        Command::Covers => covers(&input, job, r),
        Command::Verify => verify(&input, job, r),
        Command::TorsionCover => {
            let mut r = r;
            input
                .require_fan(job.command)
                .and_then(|fan| torsion_section(fan, &mut r))
                .map(|()| Outcome::ok(r))
        }
        Command::CrossCheck => crosscheck(&input, job, r),
    };
    result.or_else(|e| match e.downcast_ref::<Error>() {
        Some(Error::CoverDoesNotExist { .. }) | Some(Error::TorsionObstruction(_)) => {
            let mut r = Report::new(job.command.name(), input.mode());
            r.line(e.to_string());
            r.set("exists", false.into());
            Ok(Outcome { report: r, exit: 2 })
        }
        _ => Err(e),
    })
}

fn class_group_value(cl: &ClassGroupData) -> Value {
    json!({
        "group": group(cl.cl()),
        "divisor_classes": elements(cl.cl(), cl.divisor_classes()),
    })
}

fn torsion_section(fan: &Fan, r: &mut Report) -> Result<()> {
    let t = torsion_check(fan)?;
    let cover = torsion_cover(fan)?;
    let covering = cover.covering_fan()?;
    r.line(format!(
        "torsion cover group {}",
        cover.galois_group().structure()
    ));
    r.set(
        "torsion",
        json!({
            "torsion_free": t.torsion_free,
            "class_group_torsion": ints(&t.class_group_torsion),
            "ray_quotient": ints(&t.ray_quotient),
        }),
    );
    let mut c = cover_spec(&cover)?;
    c["covering_class_group"] = group(class_group(&covering)?.cl());
    r.set("torsion_cover", c);
    Ok(())
}

fn clgroup(input: &Input, mut r: Report) -> Result<Outcome> {
    r.line(format!("Cl ≅ {}", input.cl.cl().structure()));
    r.set("class_group", class_group_value(&input.cl));
    if let Some(fan) = &input.fan {
        torsion_section(fan, &mut r)?;
    }
    Ok(Outcome::ok(r))
}

fn existence_value(e: &ExistenceReport) -> Value {
    json!({
        "branch_orders": ints(e.branch.orders()),
        "lcm": int(e.branch.lcm()),
        "k_min": group(&e.k_min),
        "g_max": group(&e.g_max),
        "branch_elements": elements(&e.g_max, &e.branch_elements),
        "per_divisor_injective": e.per_divisor_injective,
        "torsion_condition_ok": e.torsion_condition_ok,
        "exists": e.exists,
    })
}

/// Summary lines explaining why the maximal cover does not exist.
fn diagnose(e: &ExistenceReport, r: &mut Report) {
    for i in e.failing_divisors() {
        r.line(format!(
            "Z_{} → G_max not injective at divisor {}",
            e.branch.orders()[i],
            i
        ));
    }
    if !e.torsion_condition_ok {
        r.line(format!(
            "Cl(Y) has torsion of order sharing a factor with d = {}",
            e.branch.lcm()
        ));
    }
}

fn exists(input: &Input, job: &Job, mut r: Report) -> Result<Outcome> {
    let branch = input.branch(job.orders.as_deref(), job.command)?;
    let e = gmax(&input.cl, &branch)?;
    r.set("existence", existence_value(&e));
    if let Some(fan) = &input.fan {
        r.set("primitive_in_n_min", existence_toric(fan, &branch)?.into());
    }
    if e.exists {
        r.line(format!("cover exists; G_max ≅ {}", e.g_max.structure()));
        Ok(Outcome::ok(r))
    } else {
        diagnose(&e, &mut r);
        Ok(Outcome { report: r, exit: 2 })
    }
}

/// Solves and verifies the building data of a cover, or says why not.
fn building_value(cl: &ClassGroupData, data: &AbelianCoverData) -> Result<Value> {
    if !data.is_totally_ramified() {
        return Ok(json!({
            "status": "skipped",
            "reason": "the branch elements do not generate the group",
        }));
    }
    match solve_building_data(cl, data) {
        Ok(bd) => {
            if let Some(v) = verify_fundamental_relations(&bd)? {
                return Err(Error::Falsified(format!(
                    "fundamental relation fails for characters {:?} and {:?}",
                    v.chi, v.chi_prime
                ))
                .into());
            }
            let order = data.group().order().unwrap_or_default();
            Ok(json!({
                "status": "verified",
                "basis_dependent": true,
                "basis_character_orders": ints(&bd.basis_orders()),
                "l_classes": report::matrix_columns(
                    &bd.l_classes().iter().map(|l| l.coords().to_vec()).collect::<Vec<_>>()
                ),
                "l_classes_canonical": elements(cl.cl(), bd.l_classes()),
                "relation_pairs_checked": int(&(&order * &order)),
            }))
        }
        Err(Error::TorsionObstruction(d)) => Ok(json!({
            "status": "not unique",
            "reason": format!("Cl(Y) has torsion of order sharing a factor with {d}; use torsion-cover"),
            "reduced_relations_solvable": reduced_relations_solvable(cl, data)?,
        })),
        Err(e) => Err(e.into()),
    }
}

fn maxcover(input: &Input, job: &Job, mut r: Report) -> Result<Outcome> {
    let branch = input.branch(job.orders.as_deref(), job.command)?;
    let e = gmax(&input.cl, &branch)?;
    if let Some(fan) = &input.fan {
        let spec = match max_toric_cover(fan, &branch) {
            Ok(s) => s,
            Err(Error::CoverDoesNotExist { .. }) => {
                r.set("existence", existence_value(&e));
                diagnose(&e, &mut r);
                return Ok(Outcome { report: r, exit: 2 });
            }
            Err(err) => return Err(err.into()),
        };
        r.line(format!(
            "Galois group {}, sublattice index {}",
            spec.galois_group().structure(),
            spec.sublattice().index()
        ));
        for (k, v) in cover_spec(&spec)?.as_object().expect("object") {
            r.set(k, v.clone());
        }
        r.set("g_max", group(&e.g_max));
        let data = AbelianCoverData::from_toric(&spec)?;
        r.set("building_data", building_value(&input.cl, &data)?);
        return Ok(Outcome::ok(r));
    }
    r.set("existence", existence_value(&e));
    if !e.exists {
        diagnose(&e, &mut r);
        return Ok(Outcome { report: r, exit: 2 });
    }
    r.line(format!("Galois group {}", e.g_max.structure()));
    r.set("galois_group", group(&e.g_max));
    r.set("building_data", building_value(&input.cl, &e.max_cover_data()?)?);
    Ok(Outcome::ok(r))
}

fn covers(input: &Input, job: &Job, mut r: Report) -> Result<Outcome> {
    let fan = input.require_fan(job.command)?;
    let branch = input.branch(job.orders.as_deref(), job.command)?;
    let all = enumerate_covers(fan, &branch, job.bound)?;
    r.line(format!("{} covers", all.len()));
    r.set("count", all.len().into());
    r.set(
        "covers",
        Value::Array(all.iter().map(cover_spec).collect::<Result<Vec<_>>>()?),
    );
    Ok(Outcome::ok(r))
}

fn verify(input: &Input, job: &Job, mut r: Report) -> Result<Outcome> {
    let Some(path) = &job.sublattice else {
        // abelian side only: the maximal cover for the given orders
        let branch = input.branch(job.orders.as_deref(), job.command)?;
        let e = gmax(&input.cl, &branch)?;
        r.set("existence", existence_value(&e));
        if !e.exists {
            diagnose(&e, &mut r);
            return Ok(Outcome { report: r, exit: 2 });
        }
        r.set("building_data", building_value(&input.cl, &e.max_cover_data()?)?);
        r.line("fundamental relations hold for every pair of characters");
        return Ok(Outcome::ok(r));
    };
    let fan = input.require_fan(job.command)?;
    let sub = load_sublattice(path)?;
    let spec = CoverSpec::new(fan, sub).context("the sublattice does not fit the fan")?;
    if let Some(arg) = &job.orders {
        let orders = input.branch(Some(arg), job.command)?;
        if orders.orders() != spec.ram_orders() {
            bail!(
                "ramification orders {:?} differ from --orders {:?}",
                spec.ram_orders().iter().map(BigInt::to_string).collect::<Vec<_>>(),
                orders.orders().iter().map(BigInt::to_string).collect::<Vec<_>>()
            );
        }
    }
    r.line(format!(
        "Galois group {}, ramification orders {}",
        spec.galois_group().structure(),
        spec.ram_orders()
            .iter()
            .map(BigInt::to_string)
            .collect::<Vec<_>>()
            .join(",")
    ));
    for (k, v) in cover_spec(&spec)?.as_object().expect("object") {
        r.set(k, v.clone());
    }
    let data = AbelianCoverData::from_toric(&spec)?;
    r.set("totally_ramified", data.is_totally_ramified().into());
    r.set("building_data", building_value(&input.cl, &data)?);
    Ok(Outcome::ok(r))
}

fn crosscheck(input: &Input, job: &Job, mut r: Report) -> Result<Outcome> {
    let fan = input.require_fan(job.command)?;
    let branch = input.branch(job.orders.as_deref(), job.command)?;
    let c = cross_check_abelian_toric(fan, &branch, job.bound)?;
    r.line(format!(
        "G_max and N/N'_min agree; {} subgroups, {} covers, {} lattices",
        c.subgroup_count, c.cover_count, c.brute_force_count
    ));
    r.set("g_max", ints(&c.g_max));
    r.set("toric_group", ints(&c.toric_group));
    r.set("subgroup_count", c.subgroup_count.into());
    r.set("cover_count", c.cover_count.into());
    r.set("brute_force_count", c.brute_force_count.into());
    r.set("relation_pairs_checked", c.relation_pairs_checked.into());
    Ok(Outcome::ok(r))
}

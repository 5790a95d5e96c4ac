//! `ybx verify`.

use std::collections::BTreeMap;

use rand::Rng;
use ybx_core::catalog::Instance;
use ybx_core::random::{random_nonzero_rational, rng};
use ybx_core::systems::{
    render_text, verify, Kind, MatrixFamily, ResidualReport, RoleSource, RoleValue, Roles, SystemDef, SystemError,
    VerificationDocument,
};
use ybx_core::tensor::ColourMatrix;
use ybx_core::{Assignment, Var};

use crate::spec::{load, Loaded, MatrixSpec};
use crate::CliError;

pub const DEFAULT_SAMPLES: usize = 10;
const ATTEMPTS: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyArgs {
    pub system: String,
    pub roles: Vec<(String, MatrixSpec)>,
    pub samples: usize,
    pub symbolic: bool,
    pub json: bool,
    pub seed: u64,
    pub family_size: usize,
}

/// Parses the flags after the system name. Role flags are `--ROLE SPEC`;
/// for family roles `--ROLEjk SPEC` overrides member `(j, k)`.
pub fn parse_args(system: String, args: &[String]) -> Result<VerifyArgs, CliError> {
    let mut out = VerifyArgs {
        system,
        roles: Vec::new(),
        samples: DEFAULT_SAMPLES,
        symbolic: false,
        json: false,
        seed: 0,
        family_size: 1,
    };
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        let Some(flag) = arg.strip_prefix("--") else {
            return Err(CliError::Usage(format!("unexpected argument '{arg}'")));
        };
        let (flag, inline) = match flag.split_once('=') {
            Some((f, v)) => (f, Some(v.to_owned())),
            None => (flag, None),
        };
        match flag {
            "symbolic" => out.symbolic = true,
            "json" => out.json = true,
            _ => {
                let value = match inline {
                    Some(v) => v,
                    None => it.next().cloned().ok_or_else(|| CliError::Usage(format!("--{flag} needs a value")))?,
                };
                let number = |v: &str| v.parse::<u64>().map_err(|_| CliError::Usage(format!("--{flag}: '{v}' is not a count")));
                match flag {
                    "samples" => out.samples = number(&value)? as usize,
                    "seed" => out.seed = number(&value)?,
                    "family-size" => out.family_size = number(&value)? as usize,
                    role => {
                        let spec = value.parse().map_err(|e| CliError::Usage(format!("--{role}: {e}")))?;
                        out.roles.push((role.to_owned(), spec));
                    }
                }
            }
        }
    }
    if out.samples == 0 || out.family_size == 0 {
        return Err(CliError::Usage("--samples and --family-size must be positive".into()));
    }
    Ok(out)
}

fn role_kind(def: &SystemDef, role: &str) -> Kind {
    def.equations.iter().find(|e| e.terms.iter().any(|t| t.role == role)).map_or(Kind::Const, |e| e.kind)
}

/// One loaded matrix and the role slot it fills.
struct Slot {
    role: String,
    member: Option<(usize, usize)>,
    loaded: Loaded,
}

fn slots(def: &SystemDef, args: &VerifyArgs) -> Result<Vec<Slot>, CliError> {
    let mut given: BTreeMap<String, &MatrixSpec> = BTreeMap::new();
    for (flag, spec) in &args.roles {
        if given.insert(flag.clone(), spec).is_some() {
            return Err(CliError::Usage(format!("role --{flag} given twice")));
        }
    }
    let mut out = Vec::new();
    let mut used = Vec::new();
    for role in &def.roles {
        if role_kind(def, role) == Kind::Family {
            let n = args.family_size;
            for j in 0..n {
                for k in 0..n {
                    let member = format!("{role}{}{}", j + 1, k + 1);
                    let (flag, spec) = match given.get(&member) {
                        Some(s) => (member, *s),
                        None => (role.clone(), *given.get(role).ok_or_else(|| {
                            CliError::Usage(format!("missing role --{role} (or --{member}) for system {}", def.name))
                        })?),
                    };
                    used.push(flag);
                    out.push(Slot { role: role.clone(), member: Some((j, k)), loaded: load(spec)? });
                }
            }
        } else {
            let spec = given
                .get(role)
                .ok_or_else(|| CliError::Usage(format!("missing role --{role} for system {}", def.name)))?;
            used.push(role.clone());
            out.push(Slot { role: role.clone(), member: None, loaded: load(spec)? });
        }
    }
    if let Some(extra) = given.keys().find(|k| !used.contains(k)) {
        return Err(CliError::Usage(format!("system {} has no role --{extra}", def.name)));
    }
    Ok(out)
}

fn colour(i: Instance) -> ColourMatrix {
    match i {
        Instance::Constant(m) => ColourMatrix::standard(m),
        Instance::Colour(c) => c,
    }
}

fn build_roles(def: &SystemDef, slots: &[Slot], values: Vec<Instance>) -> Result<Roles, CliError> {
    let mut roles = Roles::new();
    let mut grids: BTreeMap<String, Vec<Vec<Option<ColourMatrix>>>> = BTreeMap::new();
    for (slot, inst) in slots.iter().zip(values) {
        match (role_kind(def, &slot.role), slot.member) {
            (Kind::Family, Some((j, k))) => {
                let n = slots.iter().filter(|s| s.role == slot.role).count().isqrt();
                let grid = grids.entry(slot.role.clone()).or_insert_with(|| vec![vec![None; n]; n]);
                grid[j][k] = Some(colour(inst));
            }
            (Kind::Colour, _) => {
                roles.insert(slot.role.clone(), RoleValue::Colour(colour(inst)));
            }
            _ => {
                let value = match inst {
                    Instance::Constant(m) => RoleValue::Constant(m),
                    Instance::Colour(c) => RoleValue::Colour(c),
                };
                roles.insert(slot.role.clone(), value);
            }
        }
    }
    for (role, grid) in grids {
        let grid = grid.into_iter().map(|r| r.into_iter().map(|m| m.expect("every member filled")).collect()).collect();
        roles.insert(role, RoleValue::Family(MatrixFamily::new(grid).map_err(system_error)?));
    }
    Ok(roles)
}

pub fn system_error(e: SystemError) -> CliError {
    match e {
        SystemError::NotInvertible { .. } => CliError::Failure(e.to_string()),
        other => CliError::Usage(other.to_string()),
    }
}

fn slot_name(s: &Slot) -> String {
    match s.member {
        Some((j, k)) => format!("{}{}{}", s.role, j + 1, k + 1),
        None => s.role.clone(),
    }
}

fn describe(values: &Assignment, slots: &[Slot], combo: &[&Assignment]) -> String {
    let mut parts = Vec::new();
    if !values.is_empty() {
        parts.push(values.to_string());
    }
    for (s, b) in slots.iter().zip(combo) {
        if !b.is_empty() {
            parts.push(format!("{}: {b}", slot_name(s)));
        }
    }
    parts.join("; ")
}

fn combos(branches: &[Vec<Assignment>]) -> Vec<Vec<&Assignment>> {
    let mut out: Vec<Vec<&Assignment>> = vec![Vec::new()];
    for options in branches {
        out = out.into_iter().flat_map(|prefix| options.iter().map(move |b| [prefix.clone(), vec![b]].concat())).collect();
    }
    out
}

fn check_point(def: &SystemDef, slots: &[Slot], values: Vec<Instance>, text: String) -> Result<ResidualReport, CliError> {
    let roles = build_roles(def, slots, values)?;
    let (_, report) = verify(def, &roles).map_err(system_error)?;
    Ok(report.with_assignment(text))
}

pub fn run(args: &VerifyArgs) -> Result<VerificationDocument, CliError> {
    let def = SystemDef::builtin(&args.system).map_err(|e| {
        CliError::Usage(format!("{e}; known systems: {}", SystemDef::BUILTIN.join(", ")))
    })?;
    let slots = slots(&def, args)?;
    let mut open: Vec<Var> = Vec::new();
    for s in &slots {
        for v in s.loaded.open_vars() {
            if !open.contains(&v) {
                open.push(v);
            }
        }
    }
    let branches: Vec<Vec<Assignment>> = slots.iter().map(|s| s.loaded.branches()).collect();
    let combos = combos(&branches);
    let mut reports = Vec::new();
    let mode;
    if args.symbolic || open.is_empty() {
        mode = if open.is_empty() { "exact".to_owned() } else { "symbolic".to_owned() };
        for combo in &combos {
            let values = slots.iter().zip(combo).map(|(s, b)| s.loaded.at(b)).collect::<Result<Vec<_>, _>>()?;
            let mut text = describe(&Assignment::new(), &slots, combo);
            if open.is_empty() && text.is_empty() {
                text = "as given".into();
            }
            reports.push(check_point(&def, &slots, values, text)?);
        }
    } else {
        mode = format!("sampled, {} points, seed {}", args.samples, args.seed);
        let mut r = rng(args.seed);
        for _ in 0..args.samples {
            let point = (0..ATTEMPTS).find_map(|_| {
                let combo = &combos[r.gen_range(0..combos.len())];
                let mut values = Assignment::new();
                for v in &open {
                    values.insert(*v, random_nonzero_rational(&mut r));
                }
                let insts: Result<Vec<Instance>, CliError> =
                    slots.iter().zip(combo).map(|(s, b)| s.loaded.at(&values.merged(b))).collect();
                let overridden: Vec<Var> = combo.iter().flat_map(|b| b.vars()).collect();
                insts.ok().map(|i| {
                    let mut shown = values.clone();
                    for v in overridden {
                        shown.remove(v);
                    }
                    (i, describe(&shown, &slots, combo))
                })
            });
            let (insts, text) = point.ok_or_else(|| CliError::Usage("no admissible parameter point found".into()))?;
            reports.push(check_point(&def, &slots, insts, text)?);
        }
    }
    let mut sources: Vec<RoleSource> = Vec::new();
    for (flag, spec) in &args.roles {
        sources.push(RoleSource { role: flag.clone(), source: spec.to_string() });
    }
    let passed = reports.iter().all(ResidualReport::is_zero);
    Ok(VerificationDocument { system: def.name.clone(), roles: sources, mode, reports, passed })
}

pub fn output(doc: &VerificationDocument, json: bool) -> String {
    if json {
        doc.to_json() + "\n"
    } else {
        render_text(doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| (*s).to_owned()).collect()
    }

    #[test]
    fn flags() {
        let a = parse_args("ybe".into(), &args(&["--R", "catalog:P", "--samples=3", "--json", "--seed", "5"])).unwrap();
        assert_eq!(a.roles.len(), 1);
        assert_eq!((a.samples, a.seed, a.json, a.symbolic), (3, 5, true, false));
        assert!(parse_args("ybe".into(), &args(&["--R"])).is_err());
        assert!(parse_args("ybe".into(), &args(&["R"])).is_err());
        assert!(parse_args("ybe".into(), &args(&["--samples", "x"])).is_err());
    }

    #[test]
    fn sampled_w_passes_ybe() {
        let a = parse_args("ybe".into(), &args(&["--R", "catalog:W"])).unwrap();
        let doc = run(&a).unwrap();
        assert!(doc.passed);
        assert_eq!(doc.reports.len(), DEFAULT_SAMPLES);
        assert!(doc.reports.iter().all(|r| r.assignment.contains("R: t=")));
    }

    #[test]
    fn symbolic_w_covers_both_branches() {
        let a = parse_args("ybe".into(), &args(&["--R", "catalog:W", "--symbolic"])).unwrap();
        let doc = run(&a).unwrap();
        assert_eq!(doc.mode, "symbolic");
        assert_eq!(doc.reports.len(), 2);
        assert!(doc.passed);
    }

    #[test]
    fn role_errors() {
        let run_with = |v: &[&str]| run(&parse_args("qdouble".into(), &args(v)).unwrap());
        assert!(matches!(run_with(&["--W", "catalog:P", "--X", "catalog:P"]), Err(CliError::Usage(_))));
        assert!(matches!(
            run_with(&["--W", "catalog:P", "--X", "catalog:P", "--Z", "catalog:P", "--Q", "catalog:P"]),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn braided_family_of_identities() {
        let a = parse_args(
            "braided-family".into(),
            &args(&["--family-size", "2", "--W", "catalog:P", "--X", "catalog:P", "--Y", "catalog:P", "--Z", "catalog:P"]),
        )
        .unwrap();
        let doc = run(&a).unwrap();
        assert!(doc.passed, "{}", render_text(&doc));
    }
}

//! Matrix sources given on the command line.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use ybx_core::catalog::{self, Instance, NamedMatrix};
use ybx_core::random::random_matrix;
use ybx_core::tensor::format::parse_matrix;
use ybx_core::tensor::ColourMatrix;
use ybx_core::{Assignment, SquareMatrix, Var};

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum MatrixSpec {
    Catalog { name: String, params: Vec<(String, String)> },
    File(PathBuf),
    Random { dim: usize, seed: u64 },
}

/// Splits `a=1,b=f(x,y)` at top-level commas.
fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (k, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out.into_iter().map(str::trim).filter(|p| !p.is_empty()).collect()
}

fn bracketed(rest: &str) -> Result<(&str, Vec<(String, String)>), String> {
    let Some(open) = rest.find('[') else { return Ok((rest, Vec::new())) };
    let inner = rest[open + 1..].strip_suffix(']').ok_or_else(|| format!("unclosed '[' in '{rest}'"))?;
    let pairs = split_top(inner)
        .into_iter()
        .map(|p| {
            let (k, v) = p.split_once('=').ok_or_else(|| format!("expected 'name=value', found '{p}'"))?;
            Ok((k.trim().to_owned(), v.trim().to_owned()))
        })
        .collect::<Result<_, String>>()?;
    Ok((&rest[..open], pairs))
}

impl FromStr for MatrixSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("catalog:") {
            let (name, params) = bracketed(rest)?;
            return Ok(MatrixSpec::Catalog { name: name.trim().to_owned(), params });
        }
        if let Some(path) = s.strip_prefix("file:") {
            return Ok(MatrixSpec::File(PathBuf::from(path)));
        }
        if let Some(rest) = s.strip_prefix("random") {
            let (head, params) = bracketed(rest)?;
            if !head.is_empty() {
                return Err(format!("unrecognized matrix spec '{s}'"));
            }
            let (mut dim, mut seed) = (4, 0);
            for (k, v) in params {
                let bad = || format!("'{k}={v}' is not a nonnegative integer");
                match k.as_str() {
                    "dim" => dim = v.parse().map_err(|_| bad())?,
                    "seed" => seed = v.parse().map_err(|_| bad())?,
                    _ => return Err(format!("unknown random parameter '{k}'")),
                }
            }
            if dim == 0 {
                return Err("random dimension must be positive".into());
            }
            return Ok(MatrixSpec::Random { dim, seed });
        }
        Err(format!("unrecognized matrix spec '{s}'; expected catalog:NAME[..], file:PATH or random[dim=n,seed=k]"))
    }
}

impl fmt::Display for MatrixSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixSpec::Catalog { name, params } if params.is_empty() => write!(f, "catalog:{name}"),
            MatrixSpec::Catalog { name, params } => {
                let p: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                write!(f, "catalog:{name}[{}]", p.join(","))
            }
            MatrixSpec::File(p) => write!(f, "file:{}", p.display()),
            MatrixSpec::Random { dim, seed } => write!(f, "random[dim={dim},seed={seed}]"),
        }
    }
}

/// A loaded spec: either a fixed matrix or a catalog entry with its
/// user bindings, still open in its remaining parameters.
#[derive(Debug, Clone)]
pub enum Loaded {
    Fixed(Instance),
    Entry { entry: &'static NamedMatrix, bind: Assignment },
}

impl Loaded {
    /// Parameters not bound by the user, including those a branch would fix.
    pub fn open_vars(&self) -> Vec<Var> {
        match self {
            Loaded::Fixed(_) => Vec::new(),
            Loaded::Entry { entry, bind } => {
                let mut vars: Vec<Var> = entry.params.iter().copied().filter(|v| !bind.contains(*v)).collect();
                vars.retain(|v| entry.colour.is_none_or(|(a, b)| *v != a && *v != b));
                vars
            }
        }
    }

    /// Branches still undecided after the user bindings.
    pub fn branches(&self) -> Vec<Assignment> {
        match self {
            Loaded::Fixed(_) => vec![Assignment::new()],
            Loaded::Entry { entry, bind } => {
                let decided = entry.branches.iter().all(|b| b.vars().all(|v| bind.contains(v)));
                if decided {
                    vec![Assignment::new()]
                } else {
                    entry.branches.clone()
                }
            }
        }
    }

    /// Instance at `extra` merged under the user bindings.
    pub fn at(&self, extra: &Assignment) -> Result<Instance, CliError> {
        match self {
            Loaded::Fixed(i) => Ok(i.clone()),
            Loaded::Entry { entry, bind } => {
                let at = extra.merged(bind);
                let inst = if entry.is_colour() {
                    Instance::Colour(entry.instantiate_colour(&at)?)
                } else {
                    Instance::Constant(entry.instantiate(&at)?)
                };
                Ok(inst)
            }
        }
    }

    /// Instance with only the user bindings applied.
    pub fn bound(&self) -> Result<Instance, CliError> {
        self.at(&Assignment::new())
    }
}

pub fn load(spec: &MatrixSpec) -> Result<Loaded, CliError> {
    match spec {
        MatrixSpec::Catalog { name, params } => {
            let entry = catalog::get(name)?;
            let bind = catalog::parse_assignment(params.iter().map(|(k, v)| (k.as_str(), v.as_str())))
                .map_err(|e| CliError::Usage(format!("{spec}: {e}")))?;
            if let Some(v) = bind.vars().find(|v| !entry.params.contains(v)) {
                return Err(CliError::Usage(format!("{name} has no parameter '{v}'")));
            }
            let loaded = Loaded::Entry { entry, bind };
            // Reject bindings that already violate a decided constraint.
            loaded.bound()?;
            Ok(loaded)
        }
        MatrixSpec::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            let file = parse_matrix(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            Ok(Loaded::Fixed(match file.colour {
                Some((u, v)) => Instance::Colour(ColourMatrix::new(file.matrix, u, v)),
                None => Instance::Constant(file.matrix),
            }))
        }
        MatrixSpec::Random { dim, seed } => Ok(Loaded::Fixed(Instance::Constant(random_matrix(*dim, *seed)))),
    }
}

/// A constant matrix from a spec, with only the user bindings applied.
pub fn load_constant(spec: &MatrixSpec) -> Result<SquareMatrix, CliError> {
    match load(spec)?.bound()? {
        Instance::Constant(m) => Ok(m),
        Instance::Colour(_) => Err(CliError::Usage(format!("{spec} is a colour matrix; a constant matrix is needed"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_displays() {
        for s in ["catalog:W[q=2,s=3,t=q]", "catalog:P", "file:a/b.txt", "random[dim=4,seed=7]"] {
            assert_eq!(s.parse::<MatrixSpec>().unwrap().to_string(), s);
        }
        assert_eq!("random".parse::<MatrixSpec>().unwrap(), MatrixSpec::Random { dim: 4, seed: 0 });
        let spec: MatrixSpec = "catalog:X[a=(1,2),b=3]".parse().unwrap();
        let MatrixSpec::Catalog { params, .. } = spec else { panic!() };
        assert_eq!(params.len(), 2);
    }

    #[test]
    fn rejects_malformed() {
        for s in ["catalog:W[q=2", "catalog:W[q]", "random[dim=x]", "random[dim=0]", "random[foo=1]", "nope", "randomx"] {
            assert!(s.parse::<MatrixSpec>().is_err(), "{s}");
        }
    }

    #[test]
    fn catalog_bindings_are_checked() {
        assert!(load(&"catalog:W[q=1,s=1]".parse().unwrap()).is_err());
        assert!(load(&"catalog:W[z=1]".parse().unwrap()).is_err());
        let w = load(&"catalog:W[q=2]".parse().unwrap()).unwrap();
        assert_eq!(w.open_vars(), [Var::new("s"), Var::new("t")]);
        assert_eq!(w.branches().len(), 2);
    }
}

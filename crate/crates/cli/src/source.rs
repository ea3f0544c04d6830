//! Resolving command-line inputs into groups, towers, functors and sheaves.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use mackey_core::io::{read_json, MackeyFile, SheafFile, TowerFile};
use mackey_core::mackey::sample_module;
use mackey_core::sheaf::{sheaf_to_mackey, Transversal};
use mackey_core::suite::skyscraper_sheaf;
use mackey_core::{EquivariantSheaf, Error, MackeyFunctor, Tower, WeylSheaf};

use crate::Global;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
}

impl CliError {
    /// Validation problems exit with 2; a failed mathematical identity with 1.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(
                Error::NotIso(_) | Error::NotStabilized { .. } | Error::IdempotentMismatch(_),
            ) => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => f.write_str(s),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn looks_like_file(s: &str) -> bool {
    s.ends_with(".json") || Path::new(s).is_file()
}

pub fn tower(g: &Global) -> CliResult<Arc<Tower>> {
    let spec = g
        .tower
        .as_deref()
        .ok_or_else(|| CliError::Usage("--tower is required for builtin inputs".into()))?;
    let t = if looks_like_file(spec) {
        read_json::<TowerFile>(Path::new(spec))?.build(g.max_order)?
    } else {
        let t = Tower::from_spec(spec)?;
        let big = (0..=t.max_depth())
            .map(|i| t.level(i).order())
            .max()
            .unwrap_or(1);
        if big > g.max_order {
            return Err(Error::GroupTooLarge {
                order: big,
                cap: g.max_order,
            }
            .into());
        }
        t
    };
    Ok(Arc::new(t))
}

fn depth(g: &Global, t: &Tower) -> CliResult<usize> {
    let d = g.depth.unwrap_or(t.max_depth());
    t.check_depth(d)?;
    Ok(d)
}

/// A Mackey functor from a file (positional or `--mackey <file>`) or a
/// builtin name: `constant_q`, `constant:<dim>`, `burnside`,
/// `fixed_point[:<level>]`, `zero`, `broken`, `skyscraper`.
pub fn mackey(g: &Global, input: Option<&Path>) -> CliResult<MackeyFunctor> {
    if let Some(p) = input {
        return Ok(read_json::<MackeyFile>(p)?.build(g.max_order)?);
    }
    let spec = g
        .mackey
        .as_deref()
        .ok_or_else(|| CliError::Usage("give a Mackey file or --mackey".into()))?;
    if looks_like_file(spec) {
        return Ok(read_json::<MackeyFile>(Path::new(spec))?.build(g.max_order)?);
    }
    let t = tower(g)?;
    let d = depth(g, &t)?;
    let (name, arg) = match spec.split_once(':') {
        Some((a, b)) => (a, Some(b)),
        None => (spec, None),
    };
    let num = |default: usize| -> CliResult<usize> {
        arg.map_or(Ok(default), |a| {
            a.parse()
                .map_err(|_| CliError::Usage(format!("bad parameter in {spec:?}")))
        })
    };
    let m = match name {
        "constant_q" => MackeyFunctor::constant(t, d, 1)?,
        "constant" => MackeyFunctor::constant(t, d, num(1)?)?,
        "burnside" => MackeyFunctor::burnside(t, d)?,
        "fixed_point" => {
            let level = num(d)?;
            let module = sample_module(&t, level)?;
            MackeyFunctor::fixed_point(t, d, &module, level)?
        }
        "zero" => MackeyFunctor::constant(t, d, 0)?.with_name("zero"),
        "broken" => MackeyFunctor::broken_constant(t, d)?,
        "skyscraper" => {
            let e = skyscraper_sheaf(t, d)?;
            sheaf_to_mackey(&e, Transversal::Canonical)?.with_name("skyscraper")
        }
        _ => return Err(CliError::Usage(format!("unknown Mackey functor {spec:?}"))),
    };
    Ok(m)
}

/// A sheaf from a file or a builtin: `constant[:<dim>]`, `skyscraper`.
pub fn sheaf(g: &Global, input: Option<&Path>) -> CliResult<EquivariantSheaf> {
    if let Some(p) = input {
        return Ok(read_json::<SheafFile>(p)?.build(g.max_order)?.0);
    }
    let spec = g
        .sheaf
        .as_deref()
        .ok_or_else(|| CliError::Usage("give a sheaf file or --sheaf".into()))?;
    if looks_like_file(spec) {
        return Ok(read_json::<SheafFile>(Path::new(spec))?
            .build(g.max_order)?
            .0);
    }
    let t = tower(g)?;
    let d = depth(g, &t)?;
    let w = match spec.split_once(':') {
        None if spec == "constant" => WeylSheaf::constant(t, d, 1)?,
        Some(("constant", n)) => WeylSheaf::constant(
            t,
            d,
            n.parse()
                .map_err(|_| CliError::Usage(format!("bad dimension in {spec:?}")))?,
        )?,
        None if spec == "skyscraper" => skyscraper_sheaf(t, d)?,
        _ => return Err(CliError::Usage(format!("unknown sheaf {spec:?}"))),
    };
    Ok(w.into_inner())
}

/// Whether a positional file holds a sheaf rather than a Mackey functor.
pub fn is_sheaf_file(path: &Path) -> CliResult<bool> {
    let v: serde_json::Value = read_json(path)?;
    Ok(v.get("conj").is_some() && v.get("maps").is_none())
}

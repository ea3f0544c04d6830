//! JSON file formats for groups, towers, Mackey functors and sheaves.
//!
//! Matrices are arrays of rows of `"num/den"` strings. Subgroups of the
//! deepest level are named either by lattice index (`"3"`) or by their
//! element set (`"{0,2}"`). Group elements are Cayley-table ids.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup, SubgroupLattice};
use crate::mackey::MackeyFunctor;
use crate::qmod::QMap;
use crate::rational;
use crate::sheaf::{EquivariantSheaf, Section};
use crate::tower::Tower;

pub type Matrix = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Presentation {
    Cayley {
        table: Vec<Vec<u32>>,
    },
    /// Images of `0..degree` under each generating permutation.
    Perm {
        degree: usize,
        generators: Vec<Vec<u32>>,
    },
    Cyclic {
        n: usize,
    },
    /// Symmetries of the `n`-gon, order `2n`.
    Dihedral {
        n: usize,
    },
    Symmetric {
        n: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    #[serde(default)]
    pub name: Option<String>,
    pub presentation: Presentation,
}

impl GroupFile {
    pub fn build(&self) -> Result<FiniteGroup> {
        let g = match &self.presentation {
            Presentation::Cayley { table } => FiniteGroup::from_table(table.clone(), None)?,
            Presentation::Perm { degree, generators } => {
                FiniteGroup::from_permutations(*degree, generators)?
            }
            Presentation::Cyclic { n } => FiniteGroup::cyclic(*n)?,
            Presentation::Dihedral { n } => FiniteGroup::dihedral(*n)?,
            Presentation::Symmetric { n } => FiniteGroup::symmetric(*n)?,
        };
        Ok(match &self.name {
            Some(n) => g.with_label(n.clone()),
            None => g,
        })
    }

    pub fn cayley(g: &FiniteGroup) -> Self {
        GroupFile {
            name: g.label().map(str::to_string),
            presentation: Presentation::Cayley { table: g.table() },
        }
    }
}

/// A group by shorthand name (`"s3"`, `"c2xc2"`) or inline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Name(String),
    Inline(GroupFile),
}

impl GroupRef {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupRef::Name(n) => FiniteGroup::from_name(n),
            GroupRef::Inline(f) => f.build(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TowerFile {
    Shorthand(TowerShorthand),
    Levels {
        levels: Vec<GroupRef>,
        maps: Vec<Vec<u32>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TowerShorthand {
    #[serde(rename = "p-adic")]
    PAdic {
        p: usize,
        depth: usize,
    },
    Constant {
        group: GroupRef,
    },
}

impl TowerFile {
    pub fn build(&self, max_order: usize) -> Result<Tower> {
        match self {
            TowerFile::Shorthand(TowerShorthand::PAdic { p, depth }) => Tower::p_adic(*p, *depth),
            TowerFile::Shorthand(TowerShorthand::Constant { group }) => {
                Tower::with_cap("constant", vec![group.build()?], vec![], max_order)
            }
            TowerFile::Levels { levels, maps } => {
                let groups = levels
                    .iter()
                    .map(GroupRef::build)
                    .collect::<Result<Vec<_>>>()?;
                Tower::with_cap("file", groups, maps.clone(), max_order)
            }
        }
    }

    pub fn from_tower(t: &Tower) -> Self {
        let levels = (0..=t.max_depth())
            .map(|i| GroupRef::Inline(GroupFile::cayley(t.level(i))))
            .collect();
        let maps = (0..t.max_depth()).map(|i| t.map(i).to_vec()).collect();
        TowerFile::Levels { levels, maps }
    }
}

/// A tower by spec string (`"p-adic:2:3"`, `"s3"`) or inline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TowerRef {
    Spec(String),
    Inline(TowerFile),
}

impl TowerRef {
    pub fn build(&self, max_order: usize) -> Result<Tower> {
        match self {
            TowerRef::Spec(s) => {
                let t = Tower::from_spec(s)?;
                let big = (0..=t.max_depth())
                    .map(|i| t.level(i).order())
                    .max()
                    .unwrap_or(1);
                if big > max_order {
                    return Err(Error::GroupTooLarge {
                        order: big,
                        cap: max_order,
                    });
                }
                Ok(t)
            }
            TowerRef::Inline(f) => f.build(max_order),
        }
    }

    /// Keeps spec-built towers as their label so files stay short.
    pub fn for_tower(t: &Tower) -> Self {
        match Tower::from_spec(t.label()) {
            Ok(s) if same_tower(&s, t) => TowerRef::Spec(t.label().to_string()),
            _ => TowerRef::Inline(TowerFile::from_tower(t)),
        }
    }
}

fn same_tower(a: &Tower, b: &Tower) -> bool {
    a.max_depth() == b.max_depth()
        && (0..=a.max_depth()).all(|i| a.level(i).table() == b.level(i).table())
        && (0..a.max_depth()).all(|i| a.map(i) == b.map(i))
}

pub fn matrix_to_strings(m: &QMap) -> Matrix {
    m.to_strings()
}

pub fn matrix_from_strings(rows: &Matrix, r: usize, c: usize) -> Result<QMap> {
    QMap::from_strings(rows, r, c)
}

/// Name of a subgroup of the deepest level: its lattice index.
pub fn subgroup_name(k: usize) -> String {
    k.to_string()
}

/// Parses a lattice index or an element set such as `{0,2}`.
pub fn parse_subgroup(lat: &SubgroupLattice, s: &str) -> Result<usize> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
        let mut members = inner
            .split(',')
            .filter(|x| !x.trim().is_empty())
            .map(|x| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad element in {s}")))
            })
            .collect::<Result<Vec<_>>>()?;
        members.sort_unstable();
        members.dedup();
        return lat
            .index_of(&Subgroup::from_sorted(members))
            .ok_or_else(|| Error::Parse(format!("{s} is not a subgroup")));
    }
    let k: usize = s
        .parse()
        .map_err(|_| Error::Parse(format!("bad subgroup {s:?}")))?;
    if k >= lat.len() {
        return Err(Error::Parse(format!("subgroup index {k} out of range")));
    }
    Ok(k)
}

fn parse_element(grp: &FiniteGroup, s: &str) -> Result<u32> {
    let g: u32 = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad element {s:?}")))?;
    if g as usize >= grp.order() {
        return Err(Error::Parse(format!("element {g} out of range")));
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MackeyFile {
    #[serde(default)]
    pub name: Option<String>,
    pub tower: TowerRef,
    /// Defaults to the deepest level.
    #[serde(default)]
    pub depth: Option<usize>,
    pub dims: Vec<usize>,
    /// `"R:H>K"` and `"I:K>H"` hold matrices; `"C:g"` holds one matrix per
    /// subgroup, keyed by subgroup name.
    pub maps: BTreeMap<String, serde_json::Value>,
}

impl MackeyFile {
    pub fn build(&self, max_order: usize) -> Result<MackeyFunctor> {
        let tower = Arc::new(self.tower.build(max_order)?);
        let depth = self.depth.unwrap_or(tower.max_depth());
        tower.check_depth(depth)?;
        let lat = tower.lattice(depth).clone();
        let grp = tower.level(depth).clone();
        if self.dims.len() != lat.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} dimensions for {} subgroups",
                self.dims.len(),
                lat.len()
            )));
        }
        let dims = &self.dims;
        let mut res = BTreeMap::new();
        let mut ind = BTreeMap::new();
        let mut conj: BTreeMap<u32, BTreeMap<usize, QMap>> = BTreeMap::new();
        for (key, value) in &self.maps {
            let (kind, rest) = key
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("bad map name {key:?}")))?;
            match kind {
                "R" | "I" => {
                    let (a, b) = rest
                        .split_once('>')
                        .ok_or_else(|| Error::Parse(format!("bad map name {key:?}")))?;
                    let (a, b) = (parse_subgroup(&lat, a)?, parse_subgroup(&lat, b)?);
                    let rows: Matrix = serde_json::from_value(value.clone())?;
                    if kind == "R" {
                        res.insert((a, b), matrix_from_strings(&rows, dims[b], dims[a])?);
                    } else {
                        ind.insert((b, a), matrix_from_strings(&rows, dims[b], dims[a])?);
                    }
                }
                "C" => {
                    let g = parse_element(&grp, rest)?;
                    let per: BTreeMap<String, Matrix> = serde_json::from_value(value.clone())?;
                    let entry = conj.entry(g).or_default();
                    for (h, rows) in per {
                        let h = parse_subgroup(&lat, &h)?;
                        entry.insert(
                            h,
                            matrix_from_strings(&rows, dims[lat.conjugate(g, h)], dims[h])?,
                        );
                    }
                }
                _ => return Err(Error::Parse(format!("unknown map kind in {key:?}"))),
            }
        }
        let conj_gens = conj_by_generators(&grp, &lat, dims, conj)?;
        let name = self.name.clone().unwrap_or_else(|| "file".into());
        MackeyFunctor::from_parts(name, tower, depth, dims.clone(), res, ind, conj_gens)
    }

    pub fn from_functor(m: &MackeyFunctor) -> Self {
        let lat = m.lattice();
        let mut maps = BTreeMap::new();
        for h in 0..lat.len() {
            for &k in lat.subsets(h) {
                let r = matrix_to_strings(m.res(h, k).expect("stored"));
                let i = matrix_to_strings(m.ind(h, k).expect("stored"));
                maps.insert(
                    format!("R:{}>{}", subgroup_name(h), subgroup_name(k)),
                    serde_json::json!(r),
                );
                maps.insert(
                    format!("I:{}>{}", subgroup_name(k), subgroup_name(h)),
                    serde_json::json!(i),
                );
            }
        }
        for (s, &g) in lat.group().generators().iter().enumerate() {
            let per: BTreeMap<String, Matrix> = (0..lat.len())
                .map(|h| {
                    (
                        subgroup_name(h),
                        matrix_to_strings(&m.conj_generators()[s][h]),
                    )
                })
                .collect();
            maps.insert(format!("C:{g}"), serde_json::json!(per));
        }
        MackeyFile {
            name: Some(m.name().to_string()),
            tower: TowerRef::for_tower(m.tower()),
            depth: Some(m.depth()),
            dims: m.dims().to_vec(),
            maps,
        }
    }
}

/// Orders conjugation data by the generators of the group, requiring every
/// generator and subgroup to be present.
fn conj_by_generators(
    grp: &FiniteGroup,
    lat: &SubgroupLattice,
    dims: &[usize],
    mut conj: BTreeMap<u32, BTreeMap<usize, QMap>>,
) -> Result<Vec<Vec<QMap>>> {
    let mut out = Vec::with_capacity(grp.generators().len());
    for &g in grp.generators() {
        let mut per = conj
            .remove(&g)
            .ok_or_else(|| Error::Invalid(format!("missing conjugation by generator {g}")))?;
        let row = (0..lat.len())
            .map(|h| {
                per.remove(&h).ok_or_else(|| {
                    Error::Invalid(format!(
                        "missing conjugation by {g} on subgroup {h} ({}x{})",
                        dims[lat.conjugate(g, h)],
                        dims[h]
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(row);
    }
    if let Some(g) = conj.keys().next() {
        return Err(Error::Invalid(format!(
            "conjugation given for {g}, which is not a stored generator"
        )));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionFile {
    pub domain: Vec<String>,
    pub germs: Vec<Vec<String>>,
    #[serde(default)]
    pub equivariant_under: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheafFile {
    #[serde(default)]
    pub name: Option<String>,
    pub tower: TowerRef,
    #[serde(default)]
    pub depth: Option<usize>,
    /// Stalk dimension per chain, in lattice order.
    pub dims: Vec<usize>,
    /// `"C:g"` to a matrix per chain.
    pub conj: BTreeMap<String, BTreeMap<String, Matrix>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sections: Vec<SectionFile>,
}

impl SheafFile {
    pub fn build(&self, max_order: usize) -> Result<(EquivariantSheaf, Vec<Section>)> {
        let tower = Arc::new(self.tower.build(max_order)?);
        let depth = self.depth.unwrap_or(tower.max_depth());
        tower.check_depth(depth)?;
        let lat = tower.lattice(depth).clone();
        let grp = tower.level(depth).clone();
        let dims = &self.dims;
        if dims.len() != lat.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} stalks for {} chains",
                dims.len(),
                lat.len()
            )));
        }
        let mut conj: BTreeMap<u32, BTreeMap<usize, QMap>> = BTreeMap::new();
        for (key, per) in &self.conj {
            let g = parse_element(
                &grp,
                key.strip_prefix("C:")
                    .ok_or_else(|| Error::Parse(format!("bad map name {key:?}")))?,
            )?;
            let entry = conj.entry(g).or_default();
            for (k, rows) in per {
                let k = parse_subgroup(&lat, k)?;
                entry.insert(
                    k,
                    matrix_from_strings(rows, dims[lat.conjugate(g, k)], dims[k])?,
                );
            }
        }
        let conj_gens = conj_by_generators(&grp, &lat, dims, conj)?;
        let name = self.name.clone().unwrap_or_else(|| "file".into());
        let sheaf = EquivariantSheaf::from_parts(name, tower, depth, dims.clone(), conj_gens)?;
        let sections = self
            .sections
            .iter()
            .map(|s| {
                let domain = s
                    .domain
                    .iter()
                    .map(|k| parse_subgroup(&lat, k))
                    .collect::<Result<Vec<_>>>()?;
                if domain.len() != s.germs.len() {
                    return Err(Error::ShapeMismatch(
                        "section needs one germ per chain".into(),
                    ));
                }
                let germs = domain
                    .iter()
                    .zip(&s.germs)
                    .map(|(&k, g)| {
                        if g.len() != dims[k] {
                            return Err(Error::ShapeMismatch(format!(
                                "germ at chain {k} has length {}",
                                g.len()
                            )));
                        }
                        g.iter()
                            .map(|x| rational::parse(x))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let equivariant_under = s
                    .equivariant_under
                    .as_deref()
                    .map(|h| parse_subgroup(&lat, h))
                    .transpose()?;
                Ok(Section {
                    domain,
                    germs,
                    equivariant_under,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((sheaf, sections))
    }

    pub fn from_sheaf(e: &EquivariantSheaf) -> Self {
        let lat = e.lattice();
        let conj = lat
            .group()
            .generators()
            .iter()
            .enumerate()
            .map(|(s, &g)| {
                let per = (0..lat.len())
                    .map(|k| {
                        (
                            subgroup_name(k),
                            matrix_to_strings(&e.conj_generators()[s][k]),
                        )
                    })
                    .collect();
                (format!("C:{g}"), per)
            })
            .collect();
        SheafFile {
            name: Some(e.name().to_string()),
            tower: TowerRef::for_tower(e.tower()),
            depth: Some(e.depth()),
            dims: e.dims().to_vec(),
            conj,
            sections: Vec::new(),
        }
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

#[cfg(test)]
mod tests;

//! Representing germs by equivariant sections over basic open sets.

use super::{EquivariantSheaf, Section};
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::rational::Q;

/// A section through `germ` at chain `k` over `{L <= J : N L = J}`, where
/// `N` is the kernel down to `level` and `J = N K`. The section is the
/// `J`-orbit of the germ and zero elsewhere, so it is `J`-equivariant; this
/// needs the germ to be fixed by `N_J(K)`.
pub fn represent_germ_at_level(
    sheaf: &EquivariantSheaf,
    k: usize,
    germ: &[Q],
    level: usize,
) -> Result<Section> {
    let lat = sheaf.lattice();
    let g = lat.group();
    if germ.len() != sheaf.stalk_dim(k) {
        return Err(Error::ShapeMismatch(format!(
            "germ of length {} for a stalk of dim {}",
            germ.len(),
            sheaf.stalk_dim(k)
        )));
    }
    if level > sheaf.depth() {
        return Err(Error::DepthExceeded {
            requested: level,
            available: sheaf.depth(),
        });
    }
    let n = sheaf.tower().kernel(level, sheaf.depth());
    let j = lat.join(n, k);
    let stab = lat.normalizer_in(k, j);
    for x in g.subgroup_generators(lat.subgroup(stab)) {
        if sheaf.conj(x, k).apply(germ) != germ {
            return Err(Error::Invalid(format!(
                "germ is not fixed by the stabilizer {} at level {level}",
                lat.subgroup(stab)
            )));
        }
    }
    let mut domain = Vec::new();
    let mut germs = Vec::new();
    for &l in lat.subsets(j) {
        if lat.join(n, l) != j {
            continue;
        }
        let value = match lat
            .subgroup(j)
            .members()
            .iter()
            .find(|&&x| lat.conjugate(x, k) == l)
        {
            Some(&x) => sheaf.conj(x, k).apply(germ),
            None => vec![Q::default(); sheaf.stalk_dim(l)],
        };
        domain.push(l);
        germs.push(value);
    }
    Ok(Section {
        domain,
        germs,
        equivariant_under: Some(j),
    })
}

/// The coarsest level at which [`represent_germ_at_level`] succeeds;
/// `NotStabilized` if none does within the depth.
pub fn represent_germ(sheaf: &EquivariantSheaf, k: usize, germ: &[Q]) -> Result<(usize, Section)> {
    for level in 0..=sheaf.depth() {
        match represent_germ_at_level(sheaf, k, germ, level) {
            Ok(s) => return Ok((level, s)),
            Err(Error::Invalid(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NotStabilized { chain: Some(k) })
}

/// The subgroup of elements `g` with `g * s = s`.
pub fn section_stabilizer(sheaf: &EquivariantSheaf, section: &Section) -> usize {
    let lat = sheaf.lattice();
    let g = lat.group();
    let fixes = |x: u32| {
        section.domain.iter().zip(&section.germs).all(|(&l, v)| {
            match section.germ(lat.conjugate(x, l)) {
                Some(w) => sheaf.conj(x, l).apply(v) == w,
                None => false,
            }
        })
    };
    let members: Vec<u32> = g.elements().filter(|&x| fixes(x)).collect();
    lat.index_of(&Subgroup::from_sorted(members))
        .expect("stabilizer is a subgroup")
}

//! Equivariant sections: `M(H)` is the space of `H`-fixed sections over the
//! chains below `H`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Blocks, EquivariantSheaf, SheafMap};
use crate::error::Result;
use crate::group::left_transversal;
use crate::mackey::MackeyFunctor;
use crate::qmod::{QMap, Subspace};

/// Coset representatives used for induction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Transversal {
    /// Smallest element of each coset.
    Canonical,
    /// A seeded random element of each coset.
    Random(u64),
}

impl Transversal {
    pub(crate) fn reps(&self, sheaf: &EquivariantSheaf, h: usize, k: usize) -> Vec<u32> {
        let lat = sheaf.lattice();
        let g = lat.group();
        let (kk, hh) = (lat.subgroup(k), lat.subgroup(h));
        let base = left_transversal(g, kk, hh);
        match *self {
            Transversal::Canonical => base,
            Transversal::Random(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((h as u64) << 32) ^ k as u64);
                base.into_iter()
                    .map(|t| g.mul(t, kk.members()[rng.gen_range(0..kk.order())]))
                    .collect()
            }
        }
    }
}

/// Block layout over the chains below `H` and the subspace of `H`-fixed
/// sections, whose basis is the basis of `M(H)`.
pub fn equivariant_sections(sheaf: &EquivariantSheaf, h: usize) -> Result<(Blocks, Subspace)> {
    let lat = sheaf.lattice();
    let blocks = sheaf.blocks(lat.subsets(h).to_vec());
    let gens = lat.group().subgroup_generators(lat.subgroup(h));
    let mats = gens
        .iter()
        .map(|&x| sheaf.translate(x, &blocks, &blocks))
        .collect::<Result<Vec<_>>>()?;
    let fixed = Subspace::fixed_by(blocks.total(), &mats);
    Ok((blocks, fixed))
}

/// The Mackey functor of equivariant sections. Restriction restricts the
/// domain, induction sums the translates of the extension by zero over a
/// transversal, and conjugation translates.
pub fn sheaf_to_mackey(
    sheaf: &EquivariantSheaf,
    transversal: Transversal,
) -> Result<MackeyFunctor> {
    let lat = sheaf.lattice().clone();
    let grp = lat.group().clone();
    let spaces = (0..lat.len())
        .map(|h| equivariant_sections(sheaf, h))
        .collect::<Result<Vec<_>>>()?;
    let mut res = BTreeMap::new();
    let mut ind = BTreeMap::new();
    for h in 0..lat.len() {
        let (bh, fh) = &spaces[h];
        let inc_h = fh.inclusion();
        for &k in lat.subsets(h) {
            let (bk, fk) = &spaces[k];
            let r = sheaf.restriction(bh, bk)?.compose(&inc_h)?;
            res.insert((h, k), fk.coords_of_columns(&r)?);
            let ext = sheaf.extension_by_zero(bk, bh)?.compose(&fk.inclusion())?;
            let mut sum = QMap::zero(bh.total(), fk.dim());
            for t in transversal.reps(sheaf, h, k) {
                sum.add_assign(&sheaf.translate(t, bh, bh)?.compose(&ext)?);
            }
            ind.insert((h, k), fh.coords_of_columns(&sum)?);
        }
    }
    let conj = grp
        .generators()
        .iter()
        .map(|&s| {
            (0..lat.len())
                .map(|h| {
                    let t = lat.conjugate(s, h);
                    let moved = sheaf
                        .translate(s, &spaces[h].0, &spaces[t].0)?
                        .compose(&spaces[h].1.inclusion())?;
                    spaces[t].1.coords_of_columns(&moved)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let dims = spaces.iter().map(|(_, f)| f.dim()).collect();
    MackeyFunctor::from_parts(
        format!("sections({})", sheaf.name()),
        sheaf.tower().clone(),
        sheaf.depth(),
        dims,
        res,
        ind,
        conj,
    )
}

/// The map `M(H) -> M'(H)` induced by a sheaf map, one matrix per subgroup.
pub fn induced_mackey_map(
    f: &SheafMap,
    source: &EquivariantSheaf,
    target: &EquivariantSheaf,
) -> Result<Vec<QMap>> {
    let lat = source.lattice();
    (0..lat.len())
        .map(|h| {
            let (bs, fs) = equivariant_sections(source, h)?;
            let (bt, ft) = equivariant_sections(target, h)?;
            let mut block = QMap::zero(bt.total(), bs.total());
            for &k in bs.chains() {
                let (ro, co) = (bt.offset(k).unwrap(), bs.offset(k).unwrap());
                let m = &f.stalks[k];
                for r in 0..m.rows() {
                    for c in 0..m.cols() {
                        block[(ro + r, co + c)] = m[(r, c)].clone();
                    }
                }
            }
            ft.coords_of_columns(&block.compose(&fs.inclusion())?)
        })
        .collect()
}

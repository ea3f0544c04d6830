use std::sync::Arc;

use super::{ClopenBasic, OpenSubgroupRef, Tower};
use crate::burnside::{BurnsideElement, BurnsideRing};
use crate::error::Result;
use crate::qmod::QMap;
use crate::report::{Check, Report};

/// Verifies at depth `d` that the chains inside an open `H` form a finite
/// union of basic sets built from `C = core(H)`: the sets
/// `{L : CL = J}` for `C <= J <= H`, each itself a union of level basics.
pub fn sh_is_clopen_check(tower: &Tower, h: OpenSubgroupRef, d: usize) -> Result<Report> {
    tower.check_depth(d)?;
    let mut report = Report::new("sh_is_clopen")
        .with_input("tower", tower.label())
        .with_input("depth", d.to_string());
    let lat = tower.lattice(d);
    let hd = tower.preimage(h, d);
    let core = lat.core(hd);
    report.set_input("H", lat.subgroup(hd).to_string());
    // coarsest level whose kernel lies in the core
    let level = (0..=d)
        .find(|&i| lat.leq(tower.kernel(i, d), core))
        .expect("the deepest kernel is trivial");
    let inside: Vec<bool> = (0..lat.len()).map(|l| lat.leq(l, hd)).collect();
    let mut covered = vec![0usize; lat.len()];
    for &j in lat.supersets(core) {
        if !lat.leq(j, hd) {
            continue;
        }
        let piece: Vec<usize> = (0..lat.len()).filter(|&l| lat.join(core, l) == j).collect();
        for &l in &piece {
            covered[l] += 1;
        }
        // the piece only depends on the level-`level` image, so it is a union of basics there
        let mut basics: Vec<ClopenBasic> = piece
            .iter()
            .map(|&l| ClopenBasic {
                level,
                index: tower.project_subgroup(l, d, level),
            })
            .collect();
        basics.sort();
        basics.dedup();
        let union: Vec<usize> = (0..lat.len())
            .filter(|&l| {
                basics
                    .iter()
                    .any(|b| b.index == tower.project_subgroup(l, d, level))
            })
            .collect();
        report.push(Check::from_bool(
            "core_piece_is_union_of_basics",
            "subgroup space of an open subgroup is clopen",
            union == piece,
            format!(
                "J={} level={level} basics={}",
                lat.subgroup(j),
                basics.len()
            ),
        ));
    }
    let exact = (0..lat.len()).all(|l| covered[l] == usize::from(inside[l]));
    report.push(Check::from_bool(
        "core_pieces_partition_subgroups_of_H",
        "subgroup space of an open subgroup is clopen",
        exact,
        format!(
            "core={} chains_in_H={}",
            lat.subgroup(core),
            inside.iter().filter(|&&x| x).count()
        ),
    ));
    Ok(report)
}

/// Inflation `A_Q(G_i) -> A_Q(G_{i+1})` in the transitive-set bases.
pub fn inflation_matrix(tower: &Tower, lo: &BurnsideRing, hi: &BurnsideRing, i: usize) -> QMap {
    let cols: Vec<Vec<_>> = (0..lo.rank())
        .map(|c| {
            let pre = tower.preimage(
                OpenSubgroupRef {
                    level: i,
                    index: lo.class_rep(c),
                },
                i + 1,
            );
            hi.transitive(pre)
                .expect("preimage is a subgroup")
                .coeffs()
                .to_vec()
        })
        .collect();
    QMap::from_columns(hi.rank(), &cols)
}

/// Checks that each inflation map up to depth `d` is an injective unital
/// ring map compatible with marks.
pub fn tower_burnside_check(tower: &Tower, d: usize) -> Result<Report> {
    tower.check_depth(d)?;
    let mut report = Report::new("tower_burnside")
        .with_input("tower", tower.label())
        .with_input("depth", d.to_string());
    let rings: Vec<BurnsideRing> = (0..=d)
        .map(|i| BurnsideRing::of_group(Arc::clone(tower.lattice(i))))
        .collect();
    for i in 0..d {
        let (lo, hi) = (&rings[i], &rings[i + 1]);
        let infl = inflation_matrix(tower, lo, hi, i);
        let apply = |x: &BurnsideElement| hi.from_coeffs(infl.apply(x.coeffs())).expect("rank");
        let w = format!("level {i} -> {}", i + 1);
        report.push(Check::from_bool(
            "inflation_injective",
            "Burnside rings along the tower",
            infl.is_injective(),
            &w,
        ));
        report.push(Check::from_bool(
            "inflation_unital",
            "Burnside rings along the tower",
            apply(&lo.one()) == hi.one(),
            &w,
        ));
        let mut marks_ok = true;
        let mut mult_ok = true;
        for a in 0..lo.rank() {
            let fa = hi.mark_of(&apply(&lo.basis(a))).values;
            let base = lo.mark_of(&lo.basis(a)).values;
            for (c, v) in fa.iter().enumerate() {
                let l = tower.project_subgroup(hi.class_rep(c), i + 1, i);
                marks_ok &= *v == base[lo.class_of(l).expect("image lies in the level")];
            }
            for b in 0..lo.rank() {
                let lhs = apply(&lo.mul(&lo.basis(a), &lo.basis(b)));
                mult_ok &= lhs == hi.mul(&apply(&lo.basis(a)), &apply(&lo.basis(b)));
            }
        }
        report.push(Check::from_bool(
            "inflation_preserves_marks",
            "Burnside rings along the tower",
            marks_ok,
            &w,
        ));
        report.push(Check::from_bool(
            "inflation_multiplicative",
            "Burnside rings along the tower",
            mult_ok,
            &w,
        ));
    }
    Ok(report)
}

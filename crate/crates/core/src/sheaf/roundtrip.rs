//! Round trips between Mackey functors and Weyl sheaves, and the Burnside
//! ring action on sections.

use super::from_mackey::{mackey_to_sheaf, theta, theta_germs, MackeySheaf, StalkPolicy};
use super::to_mackey::{equivariant_sections, sheaf_to_mackey, Transversal};
use super::{Blocks, EquivariantSheaf, WeylSheaf};
use crate::error::Result;
use crate::group::left_transversal;
use crate::mackey::{burnside_action, check_axioms, MackeyFunctor};
use crate::qmod::{QMap, Subspace};
use crate::rational::q;
use crate::report::{Check, Report};

const MAX_WITNESSES: usize = 10;

/// Collects failing witnesses for one family of checks.
struct Family {
    name: &'static str,
    statement: &'static str,
    tried: usize,
    bad: Vec<String>,
}

impl Family {
    fn new(name: &'static str, statement: &'static str) -> Self {
        Family {
            name,
            statement,
            tried: 0,
            bad: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.tried += 1;
        if !ok && self.bad.len() < MAX_WITNESSES {
            self.bad.push(witness());
        }
    }

    fn finish(self, report: &mut Report) {
        if self.bad.is_empty() {
            report.push(Check::pass(
                self.name,
                self.statement,
                format!("{} cases", self.tried),
            ));
        } else {
            report.push(Check::fail(self.name, self.statement, self.bad.join("; ")));
        }
    }
}

/// Places `f : E_K -> target` as the `K` block of a map out of sections over `blocks`.
fn block_diagonal(blocks_in: &Blocks, blocks_out: &Blocks, f: impl Fn(usize) -> QMap) -> QMap {
    let mut out = QMap::zero(blocks_out.total(), blocks_in.total());
    for &k in blocks_in.chains() {
        let m = f(k);
        let (ro, co) = (
            blocks_out.offset(k).expect("same chains"),
            blocks_in.offset(k).unwrap(),
        );
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                out[(ro + r, co + c)] = m[(r, c)].clone();
            }
        }
    }
    out
}

/// `E_K -> (ΦΓE)_K`: a germ goes to the section over the chains below `K`
/// that is the germ at `K` and zero elsewhere, read in the stalk of `M(K)`.
/// `incl` embeds a subspace of `E_K` first.
fn germ_embedding(
    sheaf: &EquivariantSheaf,
    ms: &MackeySheaf,
    k: usize,
    incl: &QMap,
) -> Result<QMap> {
    let (bk, fk) = equivariant_sections(sheaf, k)?;
    let point = sheaf.blocks(vec![k]);
    let ext = sheaf.extension_by_zero(&point, &bk)?.compose(incl)?;
    let in_m = fk.coords_of_columns(&ext)?;
    ms.stalks[k].coords_of_columns(&in_m)
}

/// Checks that `θ` is a natural isomorphism `M -> ΓΦM`, including the
/// germwise induction identity, with both the canonical and a seeded random
/// transversal for the section functor.
pub fn roundtrip_mackey(m: &MackeyFunctor, seed: u64) -> Result<Report> {
    let lat = m.lattice().clone();
    let g = lat.group().clone();
    let ms = mackey_to_sheaf(m, StalkPolicy::Terminal)?;
    let n = sheaf_to_mackey(&ms.sheaf, Transversal::Canonical)?;
    let n_rand = sheaf_to_mackey(&ms.sheaf, Transversal::Random(seed))?;
    let mut report = Report::new("roundtrip_mackey")
        .with_input("functor", m.name())
        .with_input("tower", m.tower().label())
        .with_input("depth", m.depth().to_string())
        .with_input("seed", seed.to_string());

    let mut bij = Family::new(
        "theta_bijective",
        "theta_H is an isomorphism onto equivariant sections",
    );
    let mut thetas = Vec::with_capacity(lat.len());
    for h in 0..lat.len() {
        match theta(m, &ms, h) {
            Ok(t) => {
                bij.record(true, String::new);
                thetas.push(Some(t));
            }
            Err(e) => {
                bij.record(false, || e.to_string());
                thetas.push(None);
            }
        }
    }
    bij.finish(&mut report);
    if thetas.iter().any(Option::is_none) {
        return Ok(report);
    }
    let th = |h: usize| thetas[h].as_ref().expect("all bijective");
    let germs: Vec<QMap> = (0..lat.len())
        .map(|h| theta_germs(m, &ms, h))
        .collect::<Result<_>>()?;

    let mut res = Family::new(
        "theta_commutes_with_restriction",
        "theta is compatible with restriction",
    );
    let mut ind = Family::new(
        "theta_commutes_with_induction",
        "theta is compatible with induction",
    );
    let mut ind_r = Family::new(
        "theta_commutes_with_random_induction",
        "induction of sections does not depend on the transversal",
    );
    let mut dc = Family::new(
        "induction_germ_identity",
        "germs of an induced element are sums of translated germs",
    );
    for h in 0..lat.len() {
        let bh = ms.sheaf.blocks(lat.subsets(h).to_vec());
        for &k in lat.subsets(h) {
            let w = || format!("H={} K={}", lat.subgroup(h), lat.subgroup(k));
            res.record(
                n.res(h, k)?.compose(th(h))? == th(k).compose(m.res(h, k)?)?,
                w,
            );
            let lhs = th(h).compose(m.ind(h, k)?)?;
            ind.record(n.ind(h, k)?.compose(th(k))? == lhs, w);
            ind_r.record(n_rand.ind(h, k)?.compose(th(k))? == lhs, w);
            let bk = ms.sheaf.blocks(lat.subsets(k).to_vec());
            let mut rhs = QMap::zero(bh.total(), m.dim(k));
            for t in left_transversal(&g, lat.subgroup(k), lat.subgroup(h)) {
                rhs.add_assign(&ms.sheaf.translate(t, &bk, &bh)?.compose(&germs[k])?);
            }
            dc.record(germs[h].compose(m.ind(h, k)?)? == rhs, w);
        }
    }
    let mut conj = Family::new(
        "theta_commutes_with_conjugation",
        "theta is compatible with conjugation",
    );
    for x in g.elements() {
        for h in 0..lat.len() {
            let t = lat.conjugate(x, h);
            conj.record(
                n.conj(x, h).compose(th(h))? == th(t).compose(m.conj(x, h))?,
                || format!("g={x} H={}", lat.subgroup(h)),
            );
        }
    }
    for f in [res, ind, ind_r, dc, conj] {
        f.finish(&mut report);
    }
    let stable = ms.witnesses.iter().filter(|w| w.stabilized()).count();
    report.push(Check::pass(
        "stalk_stages",
        "stalks are the terminal stage of the idempotent sequence",
        format!(
            "{stable} of {} chains stable before the last stage",
            ms.witnesses.len()
        ),
    ));
    report.absorb("sections", check_axioms(&n));
    Ok(report)
}

/// Checks `E ≅ ΦΓE` stalkwise and on sections.
pub fn roundtrip_sheaf(sheaf: &WeylSheaf) -> Result<Report> {
    let lat = sheaf.lattice().clone();
    let m = sheaf_to_mackey(sheaf, Transversal::Canonical)?;
    let ms = mackey_to_sheaf(&m, StalkPolicy::Terminal)?;
    let mut report = Report::new("roundtrip_sheaf")
        .with_input("sheaf", sheaf.name())
        .with_input("tower", sheaf.tower().label());
    let phi: Vec<QMap> = (0..lat.len())
        .map(|k| germ_embedding(sheaf, &ms, k, &QMap::identity(sheaf.stalk_dim(k))))
        .collect::<Result<_>>()?;

    let mut iso = Family::new(
        "stalk_iso",
        "each stalk is recovered from the Mackey functor of sections",
    );
    for (k, f) in phi.iter().enumerate() {
        iso.record(f.is_isomorphism(), || {
            format!("K={} dims {} -> {}", lat.subgroup(k), f.cols(), f.rows())
        });
    }
    iso.finish(&mut report);

    let mut eq = Family::new(
        "stalk_iso_equivariant",
        "the stalk isomorphism commutes with conjugation",
    );
    for &s in lat.group().generators() {
        for k in 0..lat.len() {
            let t = lat.conjugate(s, k);
            eq.record(
                phi[t].compose(sheaf.conj(s, k))? == ms.sheaf.conj(s, k).compose(&phi[k])?,
                || format!("g={s} K={}", lat.subgroup(k)),
            );
        }
    }
    eq.finish(&mut report);

    let mut sec = Family::new(
        "sections_match",
        "germs of a section are the images of its values",
    );
    for h in 0..lat.len() {
        let (bh, fh) = equivariant_sections(sheaf, h)?;
        let bo = ms.sheaf.blocks(bh.chains().to_vec());
        let big_phi = block_diagonal(&bh, &bo, |k| phi[k].clone());
        sec.record(
            theta_germs(&m, &ms, h)? == big_phi.compose(&fh.inclusion())?,
            || format!("H={}", lat.subgroup(h)),
        );
    }
    sec.finish(&mut report);
    report.absorb("sections", check_axioms(&m));
    Ok(report)
}

/// Replaces each stalk `F_K` by `F_K^K`.
pub fn weylify(sheaf: &EquivariantSheaf) -> Result<WeylSheaf> {
    let lat = sheaf.lattice().clone();
    let fixed: Vec<Subspace> = (0..lat.len()).map(|k| sheaf.stalk_fixed(k)).collect();
    let conj = lat
        .group()
        .generators()
        .iter()
        .map(|&s| {
            (0..lat.len())
                .map(|k| {
                    fixed[lat.conjugate(s, k)]
                        .coords_of_columns(&sheaf.conj(s, k).compose(&fixed[k].inclusion())?)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let dims = fixed.iter().map(Subspace::dim).collect();
    let e = EquivariantSheaf::from_parts(
        format!("weyl({})", sheaf.name()),
        sheaf.tower().clone(),
        sheaf.depth(),
        dims,
        conj,
    )?;
    WeylSheaf::new(e)
}

/// For a plain equivariant sheaf: the sections still form a Mackey functor,
/// and its stalks are the Weyl-fixed parts `F_K^K`.
pub fn weylify_check(sheaf: &EquivariantSheaf) -> Result<Report> {
    let lat = sheaf.lattice().clone();
    let m = sheaf_to_mackey(sheaf, Transversal::Canonical)?;
    let ms = mackey_to_sheaf(&m, StalkPolicy::Terminal)?;
    let w = weylify(sheaf)?;
    let mut report = Report::new("weylify").with_input("sheaf", sheaf.name());
    report.absorb("sections", check_axioms(&m));
    let mut iso = Family::new(
        "weyl_stalk_iso",
        "stalks of the sections functor are the fixed parts of the stalks",
    );
    let mut eq = Family::new(
        "weyl_stalk_iso_equivariant",
        "the stalk isomorphism commutes with conjugation",
    );
    let psi: Vec<QMap> = (0..lat.len())
        .map(|k| germ_embedding(sheaf, &ms, k, &sheaf.stalk_fixed(k).inclusion()))
        .collect::<Result<_>>()?;
    for (k, f) in psi.iter().enumerate() {
        iso.record(f.is_isomorphism(), || {
            format!("K={} dims {} -> {}", lat.subgroup(k), f.cols(), f.rows())
        });
    }
    for &s in lat.group().generators() {
        for k in 0..lat.len() {
            let t = lat.conjugate(s, k);
            eq.record(
                psi[t].compose(w.conj(s, k))? == ms.sheaf.conj(s, k).compose(&psi[k])?,
                || format!("g={s} K={}", lat.subgroup(k)),
            );
        }
    }
    iso.finish(&mut report);
    eq.finish(&mut report);
    Ok(report)
}

/// The Burnside ring of `H` acts on `H`-equivariant sections germwise:
/// `[H/K]` multiplies the germ at `L` by `|(H/K)^L|`, and each idempotent
/// restricts to its support and extends by zero.
pub fn burnside_action_on_sections(sheaf: &EquivariantSheaf, h: usize) -> Result<Report> {
    let lat = sheaf.lattice().clone();
    let g = lat.group().clone();
    let m = sheaf_to_mackey(sheaf, Transversal::Canonical)?;
    let ring = m.burnside_ring(h);
    let (bh, fh) = equivariant_sections(sheaf, h)?;
    let incl = fh.inclusion();
    let mut report = Report::new("burnside_action_on_sections")
        .with_input("sheaf", sheaf.name())
        .with_input("H", lat.subgroup(h).to_string());

    let mut marks = Family::new(
        "marks_from_fixed_cosets",
        "table of marks counts fixed cosets",
    );
    let mut orbit = Family::new(
        "orbit_acts_by_marks",
        "[H/K] multiplies the germ at L by the number of L-fixed cosets",
    );
    for c in 0..ring.rank() {
        let k = ring.class_rep(c);
        let reps = left_transversal(&g, lat.subgroup(k), lat.subgroup(h));
        let count = |l: usize| {
            reps.iter()
                .filter(|&&t| lat.leq(lat.conjugate(g.inv(t), l), k))
                .count()
        };
        for &l in bh.chains() {
            let tom = ring
                .table_of_marks()
                .get(c, ring.class_of(l).expect("below H")) as usize;
            marks.record(count(l) == tom, || {
                format!(
                    "K={} L={} cosets={} table={tom}",
                    lat.subgroup(k),
                    lat.subgroup(l),
                    count(l)
                )
            });
        }
        let diag = block_diagonal(&bh, &bh, |l| {
            QMap::scalar(sheaf.stalk_dim(l), q(count(l) as i64))
        });
        let act = burnside_action(&m, h, &ring.basis(c))?;
        orbit.record(incl.compose(&act)? == diag.compose(&incl)?, || {
            format!("K={}", lat.subgroup(k))
        });
    }
    marks.finish(&mut report);
    orbit.finish(&mut report);

    let mut idem = Family::new(
        "idempotent_restricts_and_extends",
        "an idempotent acts by restriction to its support and extension by zero",
    );
    for &n in lat.subsets(h).iter().filter(|&&n| lat.is_normal_in(n, h)) {
        for &j in lat.supersets(n).iter().filter(|&&j| lat.leq(j, h)) {
            let support = |l: usize| {
                lat.subgroup(h).members().iter().any(|&x| {
                    let c = lat.conjugate(x, l);
                    lat.leq(c, j) && lat.join(n, c) == j
                })
            };
            let diag = block_diagonal(&bh, &bh, |l| {
                if support(l) {
                    QMap::identity(sheaf.stalk_dim(l))
                } else {
                    QMap::zero(sheaf.stalk_dim(l), sheaf.stalk_dim(l))
                }
            });
            let act = burnside_action(&m, h, &ring.idempotent_char(n, j)?)?;
            idem.record(incl.compose(&act)? == diag.compose(&incl)?, || {
                format!("N={} J={}", lat.subgroup(n), lat.subgroup(j))
            });
        }
    }
    idem.finish(&mut report);
    let unit = burnside_action(&m, h, &ring.one())?;
    report.push(Check::from_bool(
        "unit_acts_trivially",
        "the unit acts as the identity",
        unit.is_identity(),
        format!("dim={}", fh.dim()),
    ));
    Ok(report)
}

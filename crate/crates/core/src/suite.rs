//! The acceptance matrix: one report per criterion over the standard test
//! groups and towers.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::burnside::BurnsideRing;
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::mackey::{check_axioms, fix_inflate_iso, sample_module, MackeyFunctor};
use crate::qmod::{QMap, QModule};
use crate::rational::{frac, q, Q};
use crate::report::{Check, Report};
use crate::sheaf::{
    burnside_action_on_sections, decompose, mackey_to_sheaf, roundtrip_mackey, roundtrip_sheaf,
    sheaf_to_mackey, StalkPolicy, Transversal, WeylSheaf,
};
use crate::tower::Tower;

/// Constant towers of the round-trip and decomposition matrix.
pub const FINITE_GROUPS: [&str; 5] = ["c2", "c4", "c2xc2", "s3", "d8"];
/// Groups of the idempotent suite.
pub const IDEMPOTENT_GROUPS: [&str; 7] = ["c2", "c4", "c2xc2", "s3", "d8", "q8", "a4"];

/// Finite constant towers, then `Z/p^d` for `p = 2, 3` and `d = 1..=4`.
pub fn test_towers() -> Result<Vec<Arc<Tower>>> {
    let mut out = Vec::new();
    for g in FINITE_GROUPS {
        out.push(Arc::new(Tower::from_spec(g)?));
    }
    for p in [2, 3] {
        for d in 1..=4 {
            out.push(Arc::new(Tower::p_adic(p, d)?));
        }
    }
    Ok(out)
}

/// Skyscraper at the smallest non-trivial subgroup (the trivial one for the
/// trivial group) with `Q` carrying the trivial Weyl action.
pub fn skyscraper_sheaf(tower: Arc<Tower>, depth: usize) -> Result<WeylSheaf> {
    let lat = tower.lattice(depth).clone();
    let k = if lat.len() > 1 { 1 } else { 0 };
    let w = lat.weyl_group(k)?;
    WeylSheaf::skyscraper(
        tower,
        depth,
        k,
        &QModule::trivial_action(Arc::new(w.group), 1),
    )
}

/// `constant(Q)`, `burnside`, `fixed_point` of the 2-dimensional sample
/// module at every level, and the sections of the skyscraper sheaf.
pub fn builtin_functors(tower: &Arc<Tower>, depth: usize) -> Result<Vec<MackeyFunctor>> {
    let mut out = vec![
        MackeyFunctor::constant(tower.clone(), depth, 1)?,
        MackeyFunctor::burnside(tower.clone(), depth)?,
    ];
    for level in 0..=depth {
        let module = sample_module(tower, level)?;
        let m = MackeyFunctor::fixed_point(tower.clone(), depth, &module, level)?;
        out.push(m.with_name(format!("fixed_point(level {level})")));
    }
    let sky = skyscraper_sheaf(tower.clone(), depth)?;
    out.push(sheaf_to_mackey(&sky, Transversal::Canonical)?.with_name("skyscraper"));
    Ok(out)
}

/// Idempotents from the Möbius formula with `N = 1`.
pub fn idempotent_suite() -> Result<Report> {
    let mut report = Report::new("idempotents");
    for name in IDEMPOTENT_GROUPS {
        let g = Arc::new(FiniteGroup::from_name(name)?);
        let lat = Arc::new(crate::group::SubgroupLattice::new(g)?);
        let ring = BurnsideRing::of_group(lat.clone());
        report.absorb(name, ring.idempotent_suite_check(lat.trivial())?);
        if name == "s3" {
            let e = ring.idempotent_formula(lat.trivial(), lat.top())?;
            let want = vec![frac(1, 2), q(-1), frac(-1, 2), q(1)];
            report.push(Check::from_bool(
                "s3/top_idempotent_coefficients",
                "coefficients of the idempotent at the whole group",
                e.coeffs() == want.as_slice(),
                ring.format(&e),
            ));
        }
    }
    Ok(report)
}

/// Every builtin passes the axioms on every test tower; the broken fixture
/// fails with a witness.
pub fn axiom_suite() -> Result<Report> {
    let towers = test_towers()?;
    let parts = towers
        .par_iter()
        .map(|t| {
            let mut r = Report::new("axioms");
            for m in builtin_functors(t, t.max_depth())? {
                r.absorb(&format!("{}/{}", t.label(), m.name()), check_axioms(&m));
            }
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = Report::new("axioms");
    for p in parts {
        report.absorb("", p);
    }
    let broken = MackeyFunctor::broken_constant(Arc::new(Tower::from_spec("c2")?), 0)?;
    let r = check_axioms(&broken);
    let witness = r
        .failures()
        .next()
        .and_then(|c| c.witness.clone())
        .unwrap_or_default();
    report.push(Check::from_bool(
        "broken_fixture_fails",
        "a functor violating the double coset formula is rejected",
        !r.passed(),
        witness,
    ));
    Ok(report)
}

/// Induction of the constant functor on the p-adic towers of depth 4 is
/// multiplication by the index.
pub fn p_adic_induction() -> Result<Report> {
    let mut report = Report::new("p_adic_induction");
    for p in [2usize, 3] {
        let t = Arc::new(Tower::p_adic(p, 4)?);
        let m = MackeyFunctor::constant(t.clone(), 4, 1)?;
        let lat = t.lattice(4);
        for h in 0..lat.len() {
            for &k in lat.subsets(h) {
                let index = (lat.order_of(h) / lat.order_of(k)) as i64;
                let want = QMap::scalar(1, q(index));
                let ok = m.ind(h, k)? == &want;
                report.push(Check::from_bool(
                    &format!("p{p}/induction"),
                    "induction is multiplication by the index",
                    ok,
                    format!("H={} K={} index={index}", lat.subgroup(h), lat.subgroup(k)),
                ));
            }
        }
    }
    Ok(report)
}

/// Restriction from the `(N,K)` piece of `M(H)` onto the fixed points of the
/// `(N,K)` piece of `M(K)` is an isomorphism, for all `N <= K <= H` with
/// `N` normal in `H`, over the builtins on the finite groups and `Z/8`.
pub fn fix_inflate_suite() -> Result<(Report, usize)> {
    let mut towers: Vec<Arc<Tower>> = FINITE_GROUPS
        .iter()
        .map(|g| Tower::from_spec(g).map(Arc::new))
        .collect::<Result<_>>()?;
    towers.push(Arc::new(Tower::p_adic(2, 3)?));
    let parts = towers
        .par_iter()
        .map(|t| {
            let mut r = Report::new("fix_inflate");
            let mut count = 0usize;
            let lat = t.lattice(t.max_depth()).clone();
            for m in builtin_functors(t, t.max_depth())? {
                let mut bad = Vec::new();
                let mut tried = 0usize;
                for h in 0..lat.len() {
                    for &k in lat.subsets(h) {
                        for &n in lat.subsets(k) {
                            if !lat.is_normal_in(n, h) {
                                continue;
                            }
                            tried += 1;
                            if let Err(e) = fix_inflate_iso(&m, h, k, n) {
                                bad.push(e.to_string());
                            }
                        }
                    }
                }
                count += tried;
                let name = format!("{}/{}/fix_inflate", t.label(), m.name());
                let statement =
                    "restriction onto fixed points of an idempotent piece is an isomorphism";
                match bad.first() {
                    None => r.push(Check::pass(&name, statement, format!("{tried} triples"))),
                    Some(w) => r.push(Check::fail(
                        &name,
                        statement,
                        format!("{} of {tried} fail, first: {w}", bad.len()),
                    )),
                }
            }
            Ok((r, count))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = Report::new("fix_inflate");
    let mut total = 0;
    for (p, c) in parts {
        total += c;
        report.absorb("", p);
    }
    report.push(Check::from_bool(
        "enough_triples",
        "the matrix has at least 50 triples",
        total >= 50,
        format!("{total} triples"),
    ));
    Ok((report, total))
}

/// Stalks of fixed point functors sit at the trivial chain; the Burnside
/// functor of `S3` has six one-dimensional stalks.
pub fn stalk_suite() -> Result<Report> {
    let mut report = Report::new("stalks");
    for t in test_towers()? {
        let d = t.max_depth();
        let lat = t.lattice(d).clone();
        for level in 0..=d {
            let module = sample_module(&t, level)?;
            let m = MackeyFunctor::fixed_point(t.clone(), d, &module, level)?;
            let ms = mackey_to_sheaf(&m, StalkPolicy::Terminal)?;
            let ok = (0..lat.len()).all(|k| {
                ms.sheaf.stalk_dim(k) == if k == lat.trivial() { module.dim() } else { 0 }
            });
            report.push(Check::from_bool(
                &format!("{}/fixed_point(level {level})", t.label()),
                "fixed point stalks vanish away from the trivial chain",
                ok,
                format!("stalk dims {:?}", ms.sheaf.dims()),
            ));
        }
    }
    let t = Arc::new(Tower::from_spec("s3")?);
    let ms = mackey_to_sheaf(&MackeyFunctor::burnside(t, 0)?, StalkPolicy::Terminal)?;
    let dims = ms.sheaf.dims().to_vec();
    report.push(Check::from_bool(
        "s3/burnside",
        "Burnside stalks are one-dimensional",
        dims.len() == 6 && dims.iter().all(|&x| x == 1),
        format!("stalk dims {dims:?}"),
    ));
    Ok(report)
}

/// Both round trips over the full matrix of builtins and towers, including
/// the constant and skyscraper sheaves directly.
pub fn roundtrip_suite(seed: u64) -> Result<Report> {
    let towers = test_towers()?;
    let parts = towers
        .par_iter()
        .map(|t| {
            let d = t.max_depth();
            let mut r = Report::new("roundtrip");
            for m in builtin_functors(t, d)? {
                let prefix = format!("{}/{}", t.label(), m.name());
                r.absorb(&format!("{prefix}/mackey"), roundtrip_mackey(&m, seed)?);
                let ms = mackey_to_sheaf(&m, StalkPolicy::Terminal)?;
                r.absorb(&format!("{prefix}/sheaf"), roundtrip_sheaf(&ms.sheaf)?);
            }
            r.absorb(
                &format!("{}/constant_sheaf", t.label()),
                roundtrip_sheaf(&WeylSheaf::constant(t.clone(), d, 1)?)?,
            );
            r.absorb(
                &format!("{}/skyscraper_sheaf", t.label()),
                roundtrip_sheaf(&skyscraper_sheaf(t.clone(), d)?)?,
            );
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = Report::new("roundtrip").with_input("seed", seed.to_string());
    for p in parts {
        report.absorb("", p);
    }
    Ok(report)
}

/// `dim M(G)` is the sum of the Weyl-fixed dimensions of the pieces, for
/// every builtin on the finite groups.
pub fn decompose_suite() -> Result<Report> {
    let mut report = Report::new("decompose");
    for g in FINITE_GROUPS {
        let t = Arc::new(Tower::from_spec(g)?);
        for m in builtin_functors(&t, 0)? {
            let d = decompose(&m)?;
            let fixed: Vec<usize> = d.pieces.iter().map(|p| p.fixed_dim).collect();
            report.push(Check::from_bool(
                &format!("{g}/{}", m.name()),
                "dimension at the whole group is the sum of Weyl-fixed pieces",
                d.holds(),
                format!("dim M(G)={} pieces {fixed:?}", d.top_dim),
            ));
        }
    }
    let t = Arc::new(Tower::from_spec("s3")?);
    let d = decompose(&MackeyFunctor::burnside(t, 0)?)?;
    let fixed: Vec<usize> = d.pieces.iter().map(|p| p.fixed_dim).collect();
    report.push(Check::from_bool(
        "s3/burnside/contributions",
        "each class contributes once",
        fixed == [1, 1, 1, 1],
        format!("{fixed:?}"),
    ));
    Ok(report)
}

/// The Burnside ring acts on sections of the constant sheaf germwise by
/// marks, on `C2` and `S3`.
pub fn germwise_suite() -> Result<Report> {
    let mut report = Report::new("germwise_action");
    for g in ["c2", "s3"] {
        let t = Arc::new(Tower::from_spec(g)?);
        for dim in [1, 2] {
            let e = WeylSheaf::constant(t.clone(), 0, dim)?;
            for h in 0..t.lattice(0).len() {
                let name = format!("{g}/dim {dim}/H={}", t.lattice(0).subgroup(h));
                report.absorb(&name, burnside_action_on_sections(&e, h)?);
            }
        }
    }
    // on C2, [C2/1] doubles the germ at 1 and kills the germ at C2
    let t = Arc::new(Tower::from_spec("c2")?);
    let e = WeylSheaf::constant(t.clone(), 0, 1)?;
    let m = sheaf_to_mackey(&e, Transversal::Canonical)?;
    let lat = t.lattice(0).clone();
    let ring = m.burnside_ring(lat.top());
    let x = ring.transitive(lat.trivial())?;
    let act = m.act(&x);
    let (blocks, fixed) = crate::sheaf::equivariant_sections(&e, lat.top())?;
    let germs = fixed.inclusion().compose(&act)?;
    let mut ok = true;
    for col in 0..germs.cols() {
        let v = germs.column(col);
        let s = fixed.basis_vector(col);
        ok &= blocks.germ(&v, lat.trivial(), 1)[0]
            == q(2) * blocks.germ(&s, lat.trivial(), 1)[0].clone();
        ok &= blocks.germ(&v, lat.top(), 1)[0] == Q::default();
    }
    report.push(Check::from_bool(
        "c2/free_orbit_marks",
        "the free orbit acts by marks (2, 0)",
        ok,
        "germs at 1 and C2",
    ));
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub number: usize,
    pub title: &'static str,
    pub report: Report,
    pub elapsed: Duration,
    /// Runtime limit, if the criterion has one.
    pub limit: Option<Duration>,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.report.passed() && self.limit.is_none_or(|l| self.elapsed <= l)
    }

    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let limit = self
            .limit
            .map(|l| format!(" (limit {}s)", l.as_secs()))
            .unwrap_or_default();
        format!(
            "criterion {} {status}: {} [{}/{} checks, {:.2}s{limit}]",
            self.number,
            self.title,
            self.report.summary.passed,
            self.report.summary.total,
            self.elapsed.as_secs_f64()
        )
    }
}

fn timed(
    number: usize,
    title: &'static str,
    limit: Option<u64>,
    f: impl FnOnce() -> Result<Report>,
) -> Result<CriterionResult> {
    let start = Instant::now();
    let report = f()?;
    Ok(CriterionResult {
        number,
        title,
        report,
        elapsed: start.elapsed(),
        limit: limit.map(Duration::from_secs),
    })
}

/// Runs one criterion of the acceptance matrix by number.
pub fn run_criterion(number: usize, seed: u64) -> Result<CriterionResult> {
    match number {
        1 => timed(1, "idempotent formula", Some(5), idempotent_suite),
        2 => timed(2, "Mackey axioms", Some(10), axiom_suite),
        3 => timed(3, "p-adic induction", None, p_adic_induction),
        4 => timed(4, "fixed points of idempotent pieces", Some(30), || {
            fix_inflate_suite().map(|r| r.0)
        }),
        5 => timed(5, "stalks", None, stalk_suite),
        6 => timed(6, "round trips", Some(60), || roundtrip_suite(seed)),
        7 => timed(7, "classification at finite level", None, decompose_suite),
        8 => timed(8, "germwise Burnside action", None, germwise_suite),
        _ => Err(crate::error::Error::Invalid(format!(
            "no criterion {number}"
        ))),
    }
}

/// All criteria in order, merged into one report.
pub fn run_suite(seed: u64) -> Result<(Report, Vec<CriterionResult>)> {
    let results = (1..=8)
        .map(|n| run_criterion(n, seed))
        .collect::<Result<Vec<_>>>()?;
    let mut report = Report::new("suite").with_input("seed", seed.to_string());
    for r in &results {
        report.absorb(&format!("criterion {}", r.number), r.report.clone());
        if let Some(l) = r.limit {
            report.push(Check::from_bool(
                &format!("criterion {}/runtime", r.number),
                "runs within its time limit",
                r.elapsed <= l,
                format!("limit {}s", l.as_secs()),
            ));
        }
    }
    Ok((report, results))
}

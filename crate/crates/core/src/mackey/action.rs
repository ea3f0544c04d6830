use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::MackeyFunctor;
use crate::burnside::{induction_matrix, restriction_matrix, BurnsideElement};
use crate::error::{Error, Result};
use crate::qmod::{QMap, Subspace};
use crate::report::{Check, Report};

/// Action of `x in A_Q(H)` on `M(H)`: `[H/K]` acts as `I^H_K R^H_K`.
pub fn burnside_action(m: &MackeyFunctor, h: usize, x: &BurnsideElement) -> Result<QMap> {
    if x.top() != h {
        return Err(Error::ShapeMismatch(format!(
            "element over subgroup {} acting on M({h})",
            x.top()
        )));
    }
    let ring = m.burnside_ring(h);
    let mut out = QMap::zero(m.dim(h), m.dim(h));
    for (c, coeff) in x.coeffs().iter().enumerate() {
        if num_traits::Zero::is_zero(coeff) {
            continue;
        }
        let k = ring.class_rep(c);
        let term = m.ind(h, k)?.compose(m.res(h, k)?)?;
        out.add_assign(&term.scale(coeff));
    }
    Ok(out)
}

/// Checks that the action is unital and multiplicative, commutes with
/// restriction, and satisfies both Frobenius identities, on seeded random
/// Burnside elements.
pub fn frobenius_check(m: &MackeyFunctor, seed: u64) -> Result<Report> {
    let lat = m.lattice().clone();
    let s = |h: usize| lat.subgroup(h).to_string();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new("frobenius_check")
        .with_input("functor", m.name())
        .with_input("tower", m.tower().label())
        .with_input("seed", seed.to_string());
    let mut fails: Vec<(&str, String)> = Vec::new();
    let mut counts = [0usize; 5];
    for h in 0..lat.len() {
        let ah = m.burnside_ring(h);
        counts[0] += 1;
        if !burnside_action(m, h, &ah.one())?.is_identity() {
            fails.push(("unital_action", format!("H={}", s(h))));
        }
        let x = ah.random_element(&mut rng, 4);
        let y = ah.random_element(&mut rng, 4);
        counts[1] += 1;
        let lhs = burnside_action(m, h, &ah.mul(&x, &y))?;
        let rhs = burnside_action(m, h, &x)?.compose(&burnside_action(m, h, &y)?)?;
        if lhs != rhs {
            fails.push(("ring_action", format!("H={}", s(h))));
        }
        for &k in lat.subsets(h) {
            let ak = m.burnside_ring(k);
            let res_ring = restriction_matrix(&ah, &ak);
            let ind_ring = induction_matrix(&ak, &ah);
            let alpha = ah.random_element(&mut rng, 4);
            let beta = ak.random_element(&mut rng, 4);
            let alpha_k = ak.from_coeffs(res_ring.apply(alpha.coeffs()))?;
            let beta_h = ah.from_coeffs(ind_ring.apply(beta.coeffs()))?;
            let (r, i) = (m.res(h, k)?, m.ind(h, k)?);
            let act_alpha = burnside_action(m, h, &alpha)?;
            let act_alpha_k = burnside_action(m, k, &alpha_k)?;
            let w = format!("H={} K={}", s(h), s(k));
            counts[2] += 1;
            if r.compose(&act_alpha)? != act_alpha_k.compose(r)? {
                fails.push(("restriction_square", w.clone()));
            }
            counts[3] += 1;
            if act_alpha.compose(i)? != i.compose(&act_alpha_k)? {
                fails.push(("frobenius_alpha_induction", w.clone()));
            }
            counts[4] += 1;
            let lhs = burnside_action(m, h, &beta_h)?;
            let rhs = i.compose(&burnside_action(m, k, &beta)?)?.compose(r)?;
            if lhs != rhs {
                fails.push(("frobenius_induced_element", w));
            }
        }
    }
    let names = [
        "unital_action",
        "ring_action",
        "restriction_square",
        "frobenius_alpha_induction",
        "frobenius_induced_element",
    ];
    for (idx, name) in names.iter().enumerate() {
        let failing: Vec<&String> = fails
            .iter()
            .filter(|(n, _)| n == name)
            .map(|(_, w)| w)
            .collect();
        if failing.is_empty() {
            report.push(Check::pass(
                name,
                "Burnside ring action and Frobenius reciprocity",
                format!("{} cases", counts[idx]),
            ));
        }
        for w in failing {
            report.push(Check::fail(
                name,
                "Burnside ring action and Frobenius reciprocity",
                w.clone(),
            ));
        }
    }
    Ok(report)
}

/// Restriction `e^H_{(N,K)} M(H) -> (e^K_{(N,K)} M(K))^{N_H(K)}` in
/// coordinates of the two subspaces.
#[derive(Clone, Debug)]
pub struct FixInflate {
    pub map: QMap,
    pub source: Subspace,
    pub target: Subspace,
    pub report: Report,
}

/// Restriction from the `(N,K)`-piece of `M(H)` to the `N_H(K)`-fixed part
/// of the `(N,K)`-piece of `M(K)`; errors with `NotIso` unless bijective.
///
/// Requires `N <= K <= H` with `N` normal in `H`. Normality in `K` alone is
/// not enough: in `S4` with `K = N = D8` the two sides have dimensions 7
/// and 8 for the Burnside functor.
pub fn fix_inflate_iso(m: &MackeyFunctor, h: usize, k: usize, n: usize) -> Result<FixInflate> {
    let lat = m.lattice().clone();
    if !lat.leq(k, h) {
        return Err(Error::NotComparable { lower: k, upper: h });
    }
    if !lat.leq(n, k) {
        return Err(Error::NotComparable { lower: n, upper: k });
    }
    if !lat.is_normal_in(n, h) {
        return Err(Error::NotNormal { sub: n, ambient: h });
    }
    let norm = lat.normalizer_in(k, h);
    let e_h = m.idempotent_action(h, n, k)?;
    let e_k = m.idempotent_action(k, n, k)?;
    let source = Subspace::image(&e_h);
    let g = lat.group();
    let conj: Vec<QMap> = g
        .subgroup_generators(lat.subgroup(norm))
        .into_iter()
        .map(|w| m.conj(w, k).clone())
        .collect();
    let target = Subspace::image(&e_k).intersection(&Subspace::fixed_by(m.dim(k), &conj));
    let images = m.res(h, k)?.compose(&source.inclusion())?;
    let w = format!(
        "H={} K={} N={}",
        lat.subgroup(h),
        lat.subgroup(k),
        lat.subgroup(n)
    );
    let map = target
        .coords_of_columns(&images)
        .map_err(|_| Error::NotIso(format!("{w}: image leaves the fixed piece")))?;
    if !map.is_isomorphism() {
        return Err(Error::NotIso(format!(
            "{w}: source dim {}, target dim {}, rank {}",
            source.dim(),
            target.dim(),
            map.rank()
        )));
    }
    let mut report = Report::new("fix_inflate_iso").with_input("functor", m.name());
    report.push(Check::pass(
        "restriction_lands_in_fixed_piece",
        "restriction onto fixed points of an idempotent piece",
        &w,
    ));
    report.push(Check::pass(
        "restriction_is_bijective",
        "restriction onto fixed points of an idempotent piece",
        format!("{w} dim={}", source.dim()),
    ));
    Ok(FixInflate {
        map,
        source,
        target,
        report,
    })
}

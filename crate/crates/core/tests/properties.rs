//! Randomized invariants beyond the acceptance set.

mod common;

use common::*;
use multimult_core::hilbert::{fit_table, HilbertEvaluator};
use multimult_core::koszul::strand_profile;
use multimult_core::reduction::{is_multiplicity_system, is_system_of_parameters};
use multimult_core::{
    hf_f, hf_p, interpolate, koszul_strand_homology, mult_symbol, rees_piece_basis, BandPolicy, IdealFamily,
    JointReductionCandidate, MultiDegree, PieceKind, QuotientModule, ReesDatum, RingContext, Source,
    StabilizationPolicy, Which,
};
use proptest::prelude::*;

/// Family on `m ≤ 2` variables with one ideal, plus a candidate of one or
/// two generators, at least one from `J`.
fn small_datum(m: usize, q: &[Vec<u32>], i: &[Vec<u32>], jb: u32, picks: &[(bool, usize)]) -> Option<ReesDatum> {
    let c = RingContext::new(m).unwrap();
    let ideal = ideal_of(&c, i);
    let j = primary_of(&c, &[], jb);
    let module = QuotientModule::cyclic(ideal_of(&c, q));
    let fam = IdealFamily::new(j.clone(), vec![ideal.clone()], module).ok()?;
    let elements: Vec<_> = picks
        .iter()
        .map(|&(from_j, idx)| {
            if from_j {
                (j.gens()[idx % j.gens().len()], Source::J)
            } else {
                (ideal.gens()[idx % ideal.gens().len()], Source::I(0))
            }
        })
        .collect();
    let cand = JointReductionCandidate::from_elements(&fam, elements).ok()?;
    Some(ReesDatum::uncertified(fam, cand))
}

fn gf3_rank(rows: &[Vec<i64>]) -> usize {
    // image size by enumerating all coefficient vectors
    let ncols = rows.first().map_or(0, Vec::len);
    let mut images = std::collections::HashSet::new();
    for code in 0..3usize.pow(ncols as u32) {
        let mut v = vec![0i64; ncols];
        let mut c = code;
        for x in v.iter_mut() {
            *x = (c % 3) as i64;
            c /= 3;
        }
        let img: Vec<i64> = rows
            .iter()
            .map(|r| r.iter().zip(&v).map(|(a, b)| a * b).sum::<i64>().rem_euclid(3))
            .collect();
        images.insert(img);
    }
    (images.len() as f64).log(3.0).round() as usize
}

/// Strand homology rebuilt from piece bases with GF(3) enumeration.
fn brute_strand(d: &ReesDatum, deg: &MultiDegree, a: &[u32]) -> Vec<usize> {
    let elems = d.candidate().elements();
    let n = elems.len();
    let present = |mask: usize| -> bool {
        let mut axes = deg.axes();
        let mut e: Vec<i64> = a.iter().map(|&v| v as i64).collect();
        for (j, (u, src)) in elems.iter().enumerate() {
            if mask >> j & 1 == 1 {
                let axis = match src {
                    Source::J => 0,
                    Source::I(i) => i + 1,
                };
                if axes[axis] == 0 {
                    return false;
                }
                axes[axis] -= 1;
                for (x, y) in e.iter_mut().zip(u.to_vec()) {
                    *x -= y as i64;
                }
            }
        }
        if e.iter().any(|&x| x < 0) {
            return false;
        }
        let e: Vec<u32> = e.iter().map(|&x| x as u32).collect();
        let shifted = MultiDegree::new(axes[0], axes[1..].to_vec());
        !rees_piece_basis(d, &shifted, &e, PieceKind::Full).is_empty()
    };
    let chains: Vec<Vec<usize>> = (0..=n)
        .map(|p| {
            (0..1usize << n)
                .filter(|&s| s.count_ones() as usize == p && present(s))
                .collect()
        })
        .collect();
    let mut ranks = vec![0usize; n + 2];
    for p in 1..=n {
        if chains[p].is_empty() || chains[p - 1].is_empty() {
            continue;
        }
        let rows: Vec<Vec<i64>> = chains[p - 1]
            .iter()
            .map(|&t| {
                chains[p]
                    .iter()
                    .map(|&s| {
                        if s & t != t || (s ^ t).count_ones() != 1 {
                            return 0;
                        }
                        let j = (s ^ t).trailing_zeros();
                        let r = (s & ((1 << j) - 1)).count_ones() + 1;
                        if r % 2 == 1 {
                            1
                        } else {
                            -1
                        }
                    })
                    .collect()
            })
            .collect();
        ranks[p] = gf3_rank(&rows);
    }
    (0..=n).map(|p| chains[p].len() - ranks[p] - ranks[p + 1]).collect()
}

/// `(m, module relations, ideal, J exponent, candidate picks)`.
type DatumSpec = (usize, Vec<Vec<u32>>, Vec<Vec<u32>>, u32, Vec<(bool, usize)>);

fn datum_strategy() -> impl Strategy<Value = DatumSpec> {
    (1usize..=2).prop_flat_map(|m| {
        (
            Just(m),
            ideal_strategy(m, 3, 2),
            ideal_strategy(m, 2, 3),
            1u32..=2,
            proptest::collection::vec((any::<bool>(), 0usize..4), 1..=2),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn strand_homology_matches_enumeration(
        (m, q, i, jb, picks) in datum_strategy(),
        n0 in 0usize..4,
        n1 in 0usize..4,
        a in proptest::collection::vec(0u32..5, 2),
    ) {
        if let Some(d) = small_datum(m, &q, &i, jb, &picks) {
            let deg = MultiDegree::new(n0, vec![n1]);
            let a = &a[..m];
            prop_assert_eq!(koszul_strand_homology(&d, &deg, a, PieceKind::Full), brute_strand(&d, &deg, a));
        }
    }

    #[test]
    fn band_profile_matches_single_strands(
        (m, q, i, jb, picks) in datum_strategy(),
        n0 in 0usize..3,
        n1 in 0usize..3,
    ) {
        if let Some(d) = small_datum(m, &q, &i, jb, &picks) {
            let deg = MultiDegree::new(n0, vec![n1]);
            let band = BandPolicy { initial: Some(5), max_doublings: 0 };
            let profile = strand_profile(&d, &deg, PieceKind::Full, &band);
            let mut totals = vec![0usize; d.candidate().len() + 1];
            for a in box_monomials(&d.family().ctx(), 5) {
                let h = koszul_strand_homology(&d, &deg, &a.to_vec(), PieceKind::Full);
                for (t, v) in totals.iter_mut().zip(h) {
                    *t += v;
                }
            }
            prop_assert_eq!(profile.totals, totals);
        }
    }

    #[test]
    fn symbol_of_pure_powers_is_the_colength(m in 1usize..=3, e in proptest::collection::vec(1u32..=4, 3)) {
        let c = RingContext::new(m).unwrap();
        let y: Vec<_> = (0..m).map(|i| c.var(i).pow(e[i])).collect();
        let expected: u32 = e[..m].iter().product();
        prop_assert_eq!(mult_symbol(&QuotientModule::ring(c), &y), Ok(expected as i64));
        prop_assert!(is_system_of_parameters(&QuotientModule::ring(c), &y));
    }

    #[test]
    fn symbol_vanishes_on_redundant_systems(
        m in 1usize..=3,
        q in ideal_strategy(3, 3, 2),
        e in proptest::collection::vec(1u32..=3, 3),
    ) {
        let c = RingContext::new(m).unwrap();
        let q: Vec<Vec<u32>> = q.into_iter().map(|g| g[..m].to_vec()).collect();
        let module = QuotientModule::cyclic(ideal_of(&c, &q));
        let mut y: Vec<_> = (0..m).map(|i| c.var(i).pow(e[i])).collect();
        y.push(c.var(0));
        prop_assert!(is_multiplicity_system(&module, &y));
        if module.dim().finite().is_none_or(|dim| y.len() > dim) {
            prop_assert_eq!(mult_symbol(&module, &y), Ok(0));
        }
    }

    #[test]
    fn piece_counts_agree(
        (m, q, i, jb, _picks) in datum_strategy(),
        n0 in 0usize..4,
        n1 in 0usize..4,
    ) {
        let c = RingContext::new(m).unwrap();
        let fam = IdealFamily::new(primary_of(&c, &[], jb), vec![ideal_of(&c, &i)], QuotientModule::cyclic(ideal_of(&c, &q))).unwrap();
        let deg = MultiDegree::new(n0, vec![n1]);
        let mut eval = HilbertEvaluator::new(&fam);
        prop_assert_eq!(hf_p(&fam, &deg).unwrap(), eval.p(&deg));
        prop_assert_eq!(hf_f(&fam, &deg).unwrap(), eval.f(&deg));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn interpolation_reproduces_far_values(
        (m, q, i, jb, _picks) in datum_strategy(),
        far in proptest::collection::vec(0usize..6, 2),
    ) {
        let c = RingContext::new(m).unwrap();
        let fam = IdealFamily::new(primary_of(&c, &[], jb), vec![ideal_of(&c, &i)], QuotientModule::cyclic(ideal_of(&c, &q))).unwrap();
        let policy = StabilizationPolicy::default();
        for which in [Which::P, Which::F] {
            let interp = interpolate(&fam, which, &policy).unwrap();
            let Some(base) = interp.base() else { continue };
            let axes: Vec<usize> = base.axes().iter().zip(&far).map(|(b, f)| b + 4 + f).collect();
            let deg = MultiDegree::new(axes[0], axes[1..].to_vec());
            let value = match which {
                Which::P => hf_p(&fam, &deg).unwrap(),
                Which::F => hf_f(&fam, &deg).unwrap(),
            };
            let point: Vec<i64> = axes.iter().map(|&v| v as i64).collect();
            prop_assert_eq!(interp.polynomial.evaluate(&point), num_rational::BigRational::from_integer((value as i64).into()));
            // the fit of the recorded window is the same polynomial
            prop_assert_eq!(&fit_table(interp.window.as_ref().unwrap()), &interp.polynomial);
        }
    }
}

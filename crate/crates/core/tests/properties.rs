use proptest::prelude::*;

use eunorm::cocycles::{self, coboundary, Coc, CocOptions, Coco, Pcoc, Sul};
use eunorm::exact::{int, rat};
use eunorm::montecarlo::{itu_estimate, ItuOptions, SampleMode};
use eunorm::{hereditarily_spanning, ori, sig, ExecPolicy, OrientedFlag, Rational, RationalMatrix, RationalVector};

const M: i64 = 30;

fn rational() -> impl Strategy<Value = Rational> {
    (-M..=M, 1..=M).prop_map(|(p, q)| rat(p, q))
}

fn vector(n: usize) -> impl Strategy<Value = RationalVector> {
    prop::collection::vec(rational(), n).prop_map(RationalVector::new)
}

fn nonzero_vector(n: usize) -> impl Strategy<Value = RationalVector> {
    vector(n).prop_filter("nonzero", |v| !v.is_zero())
}

/// Nonzero vectors, with an occasional planted repeat to hit degenerate tuples.
fn tuple(n: usize, k: usize) -> impl Strategy<Value = Vec<RationalVector>> {
    (prop::collection::vec(nonzero_vector(n), k), any::<u8>(), 1..=M).prop_map(move |(mut xs, plant, c)| {
        if plant % 4 == 0 {
            let (i, j) = (plant as usize / 4 % k, (plant as usize / 4 + 1) % k);
            xs[i] = xs[j].scale(&int(c));
        }
        xs
    })
}

fn spanning_tuple(n: usize, k: usize) -> impl Strategy<Value = Vec<RationalVector>> {
    prop::collection::vec(nonzero_vector(n), k).prop_filter("hereditarily spanning", move |xs| {
        hereditarily_spanning(xs, n).unwrap()
    })
}

fn gl(n: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(rational(), n * n)
        .prop_map(move |d| RationalMatrix::new(n, n, d))
        .prop_filter("invertible", |g| !g.det_sign().unwrap().is_zero())
}

fn flag(n: usize) -> impl Strategy<Value = OrientedFlag> {
    prop::collection::vec(vector(n), n).prop_filter_map("independent", |b| OrientedFlag::new(b).ok())
}

/// Flags where later ones sometimes repeat an earlier flag's low levels.
fn flags(n: usize, k: usize) -> impl Strategy<Value = Vec<OrientedFlag>> {
    (prop::collection::vec(flag(n), k), prop::collection::vec((any::<u8>(), 1..=n), k)).prop_map(
        move |(mut fs, shares)| {
            for (i, &(pick, r)) in shares.iter().enumerate().skip(1) {
                if pick % 3 == 0 {
                    let src = fs[pick as usize / 3 % i].clone();
                    let mut basis = src.basis()[..r].to_vec();
                    basis.extend_from_slice(&fs[i].basis()[r..]);
                    if let Ok(f) = OrientedFlag::new(basis) {
                        fs[i] = if pick % 2 == 0 { f.flip(r).unwrap() } else { f };
                    }
                }
            }
            fs
        },
    )
}

fn swapped<T: Clone>(xs: &[T], i: usize) -> Vec<T> {
    let mut ys = xs.to_vec();
    ys.swap(i, i + 1);
    ys
}

fn dim() -> impl Strategy<Value = usize> {
    prop_oneof![Just(2usize), Just(4usize)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn vector_cocycles_alternate((xs, i) in dim().prop_flat_map(|n| (tuple(n, n + 1), 0..n))) {
        for f in [cocycles::pcoc, cocycles::sul, cocycles::smi] {
            prop_assert_eq!(f(&swapped(&xs, i)).unwrap(), -f(&xs).unwrap());
        }
    }

    #[test]
    fn ori_alternates((xs, i) in dim().prop_flat_map(|n| (tuple(n, n), 0..n - 1))) {
        prop_assert_eq!(ori(&swapped(&xs, i)).unwrap(), -ori(&xs).unwrap());
    }

    #[test]
    fn equivariance(
        (xs, fs, g) in dim().prop_flat_map(|n| (tuple(n, n + 1), flags(n, n + 1), gl(n)))
    ) {
        let s = sig(&g).unwrap().to_rational();
        let gx: Vec<_> = xs.iter().map(|x| g.mul_vec(x)).collect();
        for f in [cocycles::pcoc, cocycles::sul, cocycles::smi] {
            prop_assert_eq!(f(&gx).unwrap(), &s * f(&xs).unwrap());
        }
        let gf: Vec<_> = fs.iter().map(|f| f.transform(&g).unwrap()).collect();
        prop_assert_eq!(cocycles::coco(&gf).unwrap(), &s * cocycles::coco(&fs).unwrap());
        let opts = CocOptions::factorized();
        prop_assert_eq!(cocycles::coc(&gf, opts).unwrap(), &s * cocycles::coc(&fs, opts).unwrap());
    }

    #[test]
    fn rescaling_and_reorientation_are_invisible(
        (xs, scales, fs, masks) in dim().prop_flat_map(|n| (
            tuple(n, n + 1),
            prop::collection::vec(rational().prop_filter("nonzero", |r| *r != int(0)), n + 1),
            flags(n, n + 1),
            prop::collection::vec(0u64..(1 << n), n + 1),
        ))
    ) {
        let ys: Vec<_> = xs.iter().zip(&scales).map(|(x, c)| x.scale(c)).collect();
        prop_assert_eq!(cocycles::pcoc(&ys).unwrap(), cocycles::pcoc(&xs).unwrap());
        prop_assert_eq!(cocycles::smi(&ys).unwrap(), cocycles::smi(&xs).unwrap());
        let gs: Vec<_> = fs.iter().zip(&masks).map(|(f, &m)| f.flip_mask(m)).collect();
        let opts = CocOptions::factorized();
        prop_assert_eq!(cocycles::coc(&gs, opts).unwrap(), cocycles::coc(&fs, opts).unwrap());
    }

    #[test]
    fn pcoc_detects_hereditary_spanning(xs in dim().prop_flat_map(|n| tuple(n, n + 1))) {
        let n = xs[0].dim();
        let spans = hereditarily_spanning(&xs, n).unwrap();
        prop_assert_eq!(cocycles::pcoc(&xs).unwrap() != int(0), spans);
        let minors_nonzero = (0..=n).all(|i| {
            let sub: Vec<_> = xs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()).collect();
            !ori(&sub).unwrap().is_zero()
        });
        prop_assert_eq!(spans, minors_nonzero);
    }

    #[test]
    fn pcoc_is_proportional_to_smi(xs in dim().prop_flat_map(|n| tuple(n, n + 1))) {
        let n = xs[0].dim();
        let c = Rational::from_integer(((-1i64).pow(n as u32 / 2) << n).into());
        prop_assert_eq!(cocycles::pcoc(&xs).unwrap(), c * cocycles::smi(&xs).unwrap());
    }

    #[test]
    fn smi_is_bounded(xs in dim().prop_flat_map(|n| tuple(n, n + 1))) {
        let n = xs[0].dim();
        let bound = rat(1, 1 << n);
        let v = cocycles::smi(&xs).unwrap();
        prop_assert!(v <= bound && -v <= bound);
    }

    #[test]
    fn vector_cocycle_identities(xs in dim().prop_flat_map(|n| spanning_tuple(n, n + 2))) {
        prop_assert_eq!(coboundary(&Pcoc, &xs).unwrap(), int(0));
        prop_assert_eq!(coboundary(&Sul, &xs).unwrap(), int(0));
    }

    #[test]
    fn flag_cocycle_identities(fs in dim().prop_flat_map(|n| flags(n, n + 2))) {
        prop_assert_eq!(coboundary(&Coco, &fs).unwrap(), int(0));
        prop_assert_eq!(coboundary(&Coc(CocOptions::factorized()), &fs).unwrap(), int(0));
    }

    #[test]
    fn coco_is_a_sign(fs in dim().prop_flat_map(|n| flags(n, n + 1))) {
        let v = cocycles::coco(&fs).unwrap();
        prop_assert!(v == int(1) || v == int(-1));
    }

    #[test]
    fn deflation_modes_agree(fs in flags(2, 3)) {
        let naive = cocycles::coc(&fs, CocOptions::naive()).unwrap();
        prop_assert_eq!(&naive, &cocycles::coc(&fs, CocOptions::factorized()).unwrap());
        let seq = cocycles::coc(&fs, CocOptions::naive().with_policy(ExecPolicy::Sequential)).unwrap();
        prop_assert_eq!(naive, seq);
    }

    #[test]
    fn coc_with_spanning_flagstaffs_is_pcoc(
        (staffs, rest) in dim().prop_flat_map(|n| (
            spanning_tuple(n, n + 1),
            prop::collection::vec(prop::collection::vec(vector(n), n - 1), n + 1),
        ))
    ) {
        let fs: Option<Vec<_>> = staffs.iter().zip(&rest).map(|(s, r)| {
            let mut basis = vec![s.clone()];
            basis.extend(r.iter().cloned());
            OrientedFlag::new(basis).ok()
        }).collect();
        prop_assume!(fs.is_some());
        let fs = fs.unwrap();
        prop_assert_eq!(
            cocycles::coc(&fs, CocOptions::factorized()).unwrap(),
            cocycles::pcoc(&staffs).unwrap()
        );
    }

    #[test]
    fn realized_points_match_brackets(fs in dim().prop_flat_map(|n| flags(n, n + 2))) {
        // the construction checks every pairwise-deleted equality itself
        let xs = eunorm::realize_points(&fs).unwrap();
        prop_assert_eq!(xs.len(), fs.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn sampling_is_deterministic(seed in any::<u64>(), entries in prop::collection::vec(-5.0f64..5.0, 12)) {
        let gs: Vec<_> = entries.chunks(4).map(|c| nalgebra::DMatrix::from_row_slice(2, 2, c)).collect();
        prop_assume!(gs.iter().all(|g| g.determinant().abs() > 1e-3));
        let opts = ItuOptions::new(10_000, seed, SampleMode::Ball);
        let a = itu_estimate(&gs, opts).unwrap();
        prop_assert_eq!(&a, &itu_estimate(&gs, opts).unwrap());
        prop_assert_eq!(&a, &itu_estimate(&gs, opts.with_policy(ExecPolicy::Sequential)).unwrap());
    }
}

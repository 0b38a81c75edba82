use bicrossx_exact::sparse::{to_dense, to_sparse};
use bicrossx_exact::{root_of_unity, Cyclotomic, ExactMatrix, SparseEchelon};
use proptest::prelude::*;

fn entry(n: u32) -> impl Strategy<Value = Cyclotomic> {
    prop_oneof![3 => Just(0i64), 1 => -2i64..=2].prop_flat_map(move |k| (Just(k), 0i64..n as i64)).prop_map(move |(k, e)| &Cyclotomic::from_int(n, k) * &root_of_unity(n, e))
}

#[test]
fn dependent_rows_are_rejected() {
    let n = 3;
    let mut e = SparseEchelon::new(n, 4);
    let one = Cyclotomic::one(n);
    assert!(e.insert(&[(1, one.clone()), (3, one.clone())]));
    assert!(e.insert(&[(0, one.clone()), (1, one.clone())]));
    assert!(!e.insert(&[(0, one.clone()), (3, -&one)]));
    assert!(e.contains(&[(0, root_of_unity(n, 1)), (1, root_of_unity(n, 1))]));
    assert!(!e.insert(&[]));
    assert_eq!(e.rank(), 2);
    let r = e.into_rref();
    assert_eq!(r.pivots, vec![0, 1]);
    assert_eq!(r.rows[0], vec![(0, one.clone()), (3, -&one)]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn sparse_rref_matches_dense(rows in proptest::collection::vec(proptest::collection::vec(entry(6), 7), 1..8)) {
        let n = 6;
        let dense = ExactMatrix::from_rows(n, 7, rows.clone());
        let (rref, pivots) = dense.rref();
        let mut e = SparseEchelon::new(n, 7);
        for r in &rows {
            e.insert(&to_sparse(r));
        }
        prop_assert_eq!(e.rank(), pivots.len());
        let s = e.into_rref();
        prop_assert_eq!(&s.pivots, &pivots);
        for (i, r) in s.rows.iter().enumerate() {
            prop_assert_eq!(to_dense(n, 7, r), rref.row(i).to_vec());
        }
        let cols = s.columns();
        for &p in &pivots {
            prop_assert_eq!(cols[p].len(), 1);
        }
    }
}

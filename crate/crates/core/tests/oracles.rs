//! Library results against independent closed forms and brute-force oracles.

use xconn::cones::{build_tp, ConeP};
use xconn::foundation::{enumerate_sing, GroundSet, SetPartition, Transformation};
use xconn::ideals::exclude_minimal_partitions;
use xconn::semigroup::{sing_table, CayleyTable};

fn g(n: usize) -> GroundSet {
    GroundSet::new(n).unwrap()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn bell(n: usize) -> usize {
    // Bell triangle
    let mut row = vec![1usize];
    for _ in 1..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            next.push(next.last().unwrap() + x);
        }
        row = next;
    }
    *row.last().unwrap()
}

fn pairwise_right_reductive<T>(t: &CayleyTable<T>) -> bool {
    let n = t.order();
    (0..n).all(|a| (a + 1..n).all(|b| (0..n).any(|s| t.product(s, a) != t.product(s, b))))
}

#[test]
fn object_counts_match_closed_forms() {
    for n in 2..=6 {
        let x = g(n);
        assert_eq!(enumerate_sing(x).len(), n.pow(n as u32) - (1..=n).product::<usize>());
        assert_eq!(x.partitions().len(), bell(n) - 1);
        assert_eq!(x.subsets().len(), (1 << n) - 2);
    }
}

#[test]
fn idempotents_match_closed_form() {
    for n in 2..=4 {
        let t = sing_table(g(n)).unwrap();
        let want: usize = (1..n).map(|k| binomial(n, k) * k.pow((n - k) as u32)).sum();
        assert_eq!(t.idempotents().len(), want, "n={n}");
    }
}

#[test]
fn cross_sections_by_brute_force() {
    for n in 2..=5 {
        let x = g(n);
        for p in x.partitions() {
            let brute: Vec<_> = x
                .subsets()
                .into_iter()
                .filter(|s| {
                    let elems: Vec<usize> = s.iter().collect();
                    elems.len() == p.block_count()
                        && (0..elems.len()).all(|i| (i + 1..elems.len()).all(|j| !p.same_block(elems[i], elems[j])))
                })
                .collect();
            let mut lib = p.cross_sections();
            lib.sort();
            let mut brute = brute;
            brute.sort();
            assert_eq!(lib, brute, "{p}");
        }
    }
}

#[test]
fn regularity_by_brute_force() {
    let t = sing_table(g(3)).unwrap();
    let brute = (0..t.order()).all(|a| (0..t.order()).any(|x| t.product(t.product(a, x), a) == a));
    assert_eq!(t.is_regular(), brute);
    assert!(brute);
}

#[test]
fn right_reductivity_matches_pairwise_oracle() {
    let tables = [
        sing_table(g(3)).unwrap(),
        exclude_minimal_partitions(g(3), &[SetPartition::parse("12|3").unwrap()])
            .unwrap()
            .table,
        exclude_minimal_partitions(g(4), &[SetPartition::parse("12|3|4").unwrap()])
            .unwrap()
            .table,
    ];
    for t in &tables {
        assert_eq!(t.is_right_reductive(), pairwise_right_reductive(t));
    }
    let left_zero = CayleyTable::from_parts(vec!["x", "y"], vec![vec![0, 0], vec![1, 1]]).unwrap();
    assert!(!left_zero.is_right_reductive() && !pairwise_right_reductive(&left_zero));
}

#[test]
fn cone_products_by_direct_evaluation() {
    // rho^a . rho^b must carry the composite a;b, evaluated pointwise
    let x = g(3);
    let tp = build_tp(x).unwrap();
    for a in enumerate_sing(x) {
        for b in enumerate_sing(x) {
            let direct =
                Transformation::new(x, &x.elements().map(|i| b.apply(a.apply(i))).collect::<Vec<_>>()).unwrap();
            let prod = tp.multiply(&ConeP::new(a).unwrap(), &ConeP::new(b).unwrap()).unwrap();
            assert_eq!(prod.transformation(), direct);
        }
    }
}

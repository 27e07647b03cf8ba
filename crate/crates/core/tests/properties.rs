use proptest::prelude::*;
use symcube_core::perm::parse_permutation;
use symcube_core::realize::{smith_normal_form, Matrix};
use symcube_core::site::{classify, factor};
use symcube_core::{Entry, Morphism, Permutation};

/// Symbol `i` goes to slot `assign[i]` (or is dropped when that is `n`), slots
/// order their symbols by `keys`, and empty slots take the constant `bits[j]`.
fn build(m: usize, n: usize, assign: &[usize], keys: &[u32], bits: &[bool]) -> Morphism {
    let entries = (0..n)
        .map(|j| {
            let mut syms: Vec<usize> = (0..m).filter(|&i| assign[i] == j).collect();
            syms.sort_by_key(|&i| (keys[i], i));
            if syms.is_empty() {
                Entry::constant(bits[j])
            } else {
                Entry::Conj(syms.into_iter().map(|i| i + 1).collect())
            }
        })
        .collect();
    Morphism::new(m, entries).expect("each symbol used once")
}

fn arrow(m: usize, n: usize) -> impl Strategy<Value = Morphism> {
    (
        proptest::collection::vec(0..=n, m),
        proptest::collection::vec(any::<u32>(), m),
        proptest::collection::vec(any::<bool>(), n),
    )
        .prop_map(move |(a, k, b)| build(m, n, &a, &k, &b))
}

fn any_arrow() -> impl Strategy<Value = Morphism> {
    (0usize..=5, 0usize..=4).prop_flat_map(|(m, n)| arrow(m, n))
}

/// Three composable arrows `f: a → b`, `g: b → c`, `h: c → d`.
fn chain() -> impl Strategy<Value = (Morphism, Morphism, Morphism)> {
    (0usize..=4, 0usize..=4, 0usize..=4, 0usize..=4)
        .prop_flat_map(|(a, b, c, d)| (arrow(a, b), arrow(b, c), arrow(c, d)))
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i128>>> {
    (1usize..=4, 1usize..=4)
        .prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-6i128..=6, c), r))
}

proptest! {
    #[test]
    fn composition_is_associative_and_unital((f, g, h) in chain()) {
        let left = h.compose(&g).unwrap().compose(&f).unwrap();
        let right = h.compose(&g.compose(&f).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(Morphism::identity(f.dst()).compose(&f).unwrap(), f.clone());
        prop_assert_eq!(f.compose(&Morphism::identity(f.src())).unwrap(), f);
    }

    #[test]
    fn tensor_is_functorial((f, g, _) in chain(), (f2, g2, _) in chain()) {
        let lhs = g.tensor(&g2).compose(&f.tensor(&f2)).unwrap();
        let rhs = g.compose(&f).unwrap().tensor(&g2.compose(&f2).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn printing_round_trips(f in any_arrow()) {
        let back: Morphism = f.to_string().parse().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn normal_form_round_trips(f in any_arrow()) {
        let nf = factor(&f);
        prop_assert!(nf.validate().is_ok());
        prop_assert_eq!(nf.evaluate().unwrap(), f.clone());
        let c = classify(&f);
        prop_assert_eq!(c.is_iso, c.is_mono && c.is_epi);
        if c.is_iso {
            prop_assert_eq!(f.src(), f.dst());
        }
    }

    #[test]
    fn permutations_round_trip(p in (1usize..=6).prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())) {
        let p = Permutation::new(p).unwrap();
        prop_assert_eq!(parse_permutation(&p.cycle_string(), p.len()).unwrap(), p.clone());
        prop_assert!(p.compose(&p.inverse()).is_identity());
    }

    #[test]
    fn smith_form_factors_the_input(rows in matrix()) {
        let m = Matrix::from_rows(&rows).unwrap();
        let s = smith_normal_form(&m).unwrap();
        prop_assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d.clone());
        let f = s.invariant_factors();
        prop_assert!(f.iter().all(|&x| x > 0));
        prop_assert!(f.windows(2).all(|w| w[1] % w[0] == 0));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                prop_assert!(i == j || s.d.get(i, j) == 0);
            }
        }
    }
}

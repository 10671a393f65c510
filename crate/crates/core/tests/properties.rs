mod common;

use proptest::collection::vec;
use proptest::prelude::*;

use common::{naive_closed_run, naive_run, XorShift};
use lockers::{
    closed_all, closed_all_but_one, closed_single, count_open_prefix, forward, forward_basis,
    forward_divisor_parity, inverse_map, reduce_moves, sigma_set, simulate, solve_from_initial,
    squarefree_upto, theta, IndexSet, LockerState, MoveSequence, ProblemSpec, SignatureSet,
};

fn subset(n: usize) -> impl Strategy<Value = IndexSet> {
    vec(any::<bool>(), n).prop_map(move |flags| {
        IndexSet::from_members(n, (1..=n).filter(|&i| flags[i - 1])).unwrap()
    })
}

fn state(n: usize) -> impl Strategy<Value = LockerState> {
    vec(any::<bool>(), n).prop_map(|flags| LockerState::from_bools(flags).unwrap())
}

fn sized_subset() -> impl Strategy<Value = IndexSet> {
    (1usize..300).prop_flat_map(subset)
}

fn triple() -> impl Strategy<Value = (IndexSet, IndexSet, IndexSet)> {
    (1usize..200).prop_flat_map(|n| (subset(n), subset(n), subset(n)))
}

fn state_triple() -> impl Strategy<Value = (LockerState, LockerState, LockerState)> {
    (1usize..200).prop_flat_map(|n| (state(n), state(n), state(n)))
}

fn run(n: usize, moves: Vec<usize>) -> LockerState {
    simulate(&ProblemSpec::all_closed(n, MoveSequence::new(moves).unwrap()).unwrap())
}

proptest! {
    #[test]
    fn sym_diff_group_laws((a, b, c) in triple()) {
        let e = IndexSet::empty(a.universe()).unwrap();
        prop_assert_eq!(a.sym_diff(&b).unwrap(), b.sym_diff(&a).unwrap());
        prop_assert_eq!(
            a.sym_diff(&b).unwrap().sym_diff(&c).unwrap(),
            a.sym_diff(&b.sym_diff(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.sym_diff(&e).unwrap(), a.clone());
        prop_assert!(a.sym_diff(&a).unwrap().is_empty());
    }

    #[test]
    fn xor_group_laws((x, y, z) in state_triple()) {
        let zero = LockerState::zeros(x.len()).unwrap();
        prop_assert_eq!(x.xor(&y).unwrap(), y.xor(&x).unwrap());
        prop_assert_eq!(
            x.xor(&y).unwrap().xor(&z).unwrap(),
            x.xor(&y.xor(&z).unwrap()).unwrap()
        );
        prop_assert_eq!(x.xor(&zero).unwrap(), x.clone());
        prop_assert!(x.xor(&x).unwrap().is_all_closed());
    }

    #[test]
    fn forward_routes_agree_with_naive_game(u in sized_subset()) {
        let n = u.universe();
        let naive = naive_closed_run(n, &u.members());
        let (by_basis, peeled) = forward_basis(&u);
        prop_assert_eq!(by_basis.to_bools(), naive);
        prop_assert_eq!(forward_divisor_parity(&u), by_basis.clone());
        prop_assert_eq!(forward(&u), by_basis.clone());
        prop_assert_eq!(peeled, by_basis.open_indices());
    }

    #[test]
    fn peeled_indices_strictly_increase(u in sized_subset()) {
        let (_, peeled) = forward_basis(&u);
        prop_assert!(peeled.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(peeled.len() <= u.universe());
    }

    #[test]
    fn inverse_is_two_sided(u in sized_subset(), seed in any::<u64>()) {
        prop_assert_eq!(inverse_map(&forward(&u)), u.clone());
        let v = LockerState::from_bools(XorShift(seed | 1).bools(u.universe())).unwrap();
        prop_assert_eq!(forward(&inverse_map(&v)), v);
    }

    #[test]
    fn homomorphism((a, b, _) in triple()) {
        prop_assert_eq!(
            forward(&a.sym_diff(&b).unwrap()),
            forward(&a).xor(&forward(&b)).unwrap()
        );
    }

    #[test]
    fn simulate_is_order_independent(u in sized_subset(), seed in any::<u64>()) {
        let mut moves = u.members();
        let sorted = run(u.universe(), moves.clone());
        XorShift(seed | 1).shuffle(&mut moves);
        prop_assert_eq!(run(u.universe(), moves), sorted);
    }

    #[test]
    fn repetition_parity(n in 1usize..80, moves in vec(1usize..200, 0..300), seed in any::<u64>()) {
        let initial = XorShift(seed | 1).bools(n);
        let v0 = LockerState::from_bools(initial.iter().copied()).unwrap();
        let ms = MoveSequence::new(moves.clone()).unwrap();
        let played = simulate(&ProblemSpec::new(v0.clone(), ms.clone()));
        prop_assert_eq!(played.to_bools(), naive_run(n, &initial, &moves.iter().copied().filter(|&i| i <= n).collect::<Vec<_>>()));
        prop_assert_eq!(played, v0.xor(&forward(&reduce_moves(&ms, n).unwrap())).unwrap());
    }

    #[test]
    fn doubled_moves_cancel(n in 1usize..100, moves in vec(1usize..200, 0..100)) {
        let ms = MoveSequence::new(moves).unwrap();
        prop_assert!(reduce_moves(&ms.concat(&ms), n).unwrap().is_empty());
    }

    #[test]
    fn reduce_is_permutation_invariant(n in 1usize..100, moves in vec(1usize..200, 0..100), seed in any::<u64>()) {
        let mut shuffled = moves.clone();
        XorShift(seed | 1).shuffle(&mut shuffled);
        prop_assert_eq!(
            reduce_moves(&MoveSequence::new(moves).unwrap(), n).unwrap(),
            reduce_moves(&MoveSequence::new(shuffled).unwrap(), n).unwrap()
        );
    }

    #[test]
    fn solve_reaches_target((from, to, _) in state_triple()) {
        let u = solve_from_initial(&from, &to).unwrap();
        let played = simulate(&ProblemSpec::new(from.clone(), u.to_moves()));
        prop_assert_eq!(played, to.clone());
        // forward(u) = v0 + simulate(v0, u)
        prop_assert_eq!(forward(&u), from.xor(&to).unwrap());
    }

    #[test]
    fn state_text_round_trip(v in (1usize..300).prop_flat_map(state)) {
        prop_assert_eq!(LockerState::parse(&v.to_string(), v.len()).unwrap(), v);
    }

    #[test]
    fn theta_brackets(n in 1u64..u64::MAX / 2) {
        let t = theta(n);
        prop_assert!(t * t <= n);
        prop_assert!((t + 1).checked_mul(t + 1).is_none_or(|sq| sq > n));
        prop_assert!(theta(n) <= theta(n + 1));
    }
}

#[test]
fn closed_forms_match_naive_game_to_300() {
    for n in 1..=300usize {
        let everyone: Vec<usize> = (1..=n).collect();
        assert_eq!(
            closed_all(n).unwrap().to_bools(),
            naive_closed_run(n, &everyone)
        );
        for i in 1..=n {
            assert_eq!(
                closed_single(i, n).unwrap().to_bools(),
                naive_closed_run(n, &[i])
            );
            let others: Vec<usize> = everyone.iter().copied().filter(|&s| s != i).collect();
            assert_eq!(
                closed_all_but_one(i, n).unwrap().to_bools(),
                naive_closed_run(n, &others),
                "n={n} i={i}"
            );
        }
        assert!(closed_single(n + 1, n).unwrap().is_all_closed());
    }
}

#[test]
fn prefix_formula_fails_below_half() {
    // the formula is only claimed for p > n/2; confirm it really breaks below
    let formula = |p: usize, n: usize| {
        let (tp, tn) = (theta(p as u64) as usize, theta(n as u64) as usize);
        tp + ((n - p) - (tn - tp))
    };
    let broken = (1..=100usize)
        .any(|n| (1..=n / 2).any(|p| formula(p, n) != run(n, (1..=p).collect()).count_open()));
    assert!(broken);
    assert!(count_open_prefix(5, 10).is_err());
}

#[test]
fn sigma_of_one_is_squarefree() {
    let one = SignatureSet::new([1]).unwrap();
    for n in [1u64, 2, 10, 97, 1000, 5000] {
        assert_eq!(sigma_set(&one, n), squarefree_upto(n));
    }
}

use std::collections::{BTreeMap, BTreeSet};

use pfaff::bpf::{bpf, bpf0, c_t, gen_pf, partial_lin_pf, LinearizationSpec};
use pfaff::combinat::{all_perms, Word};
use pfaff::corpus::{gen_corpus, CorpusBounds};
use pfaff::decomp::{
    class_partition_check, enumerate_quadruples, newton_consistency_check, pfaffian_product_terms,
    verify_decomposition,
};
use pfaff::tableau::{contract, eval_word, word_of, Tableau};
use pfaff::{Polynomial, SymMatrix};

fn corpus(seed: u64, count: usize) -> Vec<(Tableau, usize, usize)> {
    gen_corpus(seed, &CorpusBounds::default(), count)
        .unwrap()
        .into_iter()
        .map(|s| {
            let [q1, q2] = s.q.unwrap();
            (s.build().unwrap(), q1, q2)
        })
        .collect()
}

#[test]
fn decomposition_holds_on_other_seeds() {
    for seed in [1, 2, 3] {
        for (i, (t, q1, q2)) in corpus(seed, 30).iter().enumerate() {
            let r = verify_decomposition(t, *q1, *q2).unwrap();
            assert!(r.equal && r.witness_independent, "seed {seed} instance {i}");
        }
    }
}

#[test]
fn bpf_coefficients_are_units() {
    for (t, _, _) in corpus(5, 50) {
        let p = bpf(&t).unwrap();
        assert!(p.terms().all(|(_, c)| *c == 1.into() || *c == (-1).into()));
        assert_eq!(p.scale(&c_t(&t)), bpf0(&t).unwrap());
    }
}

#[test]
fn path_structure_on_corpus() {
    for (t, q1, q2) in corpus(9, 40) {
        let n = t.dims()[q1 - 1];
        let mut signatures = BTreeSet::new();
        for tau in all_perms(n).unwrap() {
            let tt = t.apply_tau(q2, &tau).unwrap();
            let c = contract(&tt, q1, q2).unwrap();
            assert!(c.tableau.validate().is_empty());
            let mut seen = BTreeMap::new();
            for p in c.decomposition.open.iter().chain(&c.decomposition.closed) {
                for e in &p.elems {
                    *seen.entry(e.arrow).or_insert(0) += 1;
                }
            }
            for a in tt
                .arrows()
                .iter()
                .filter(|a| a.touches(q1) || a.touches(q2))
            {
                assert_eq!(seen.get(&a.id), Some(&1), "arrow {} covered once", a.id);
            }
            for p in &c.decomposition.open {
                assert!(word_of(p, &tt).unwrap().is_primitive());
            }
            let open: Vec<_> = c
                .decomposition
                .open
                .iter()
                .map(|p| p.elems.clone())
                .collect();
            let closed: BTreeSet<_> = c
                .decomposition
                .closed
                .iter()
                .map(|p| p.elems.clone())
                .collect();
            assert!(
                signatures.insert((open, closed)),
                "distinct permutations give distinct path sets"
            );
        }
    }
}

#[test]
fn census_and_trace_forms_on_corpus() {
    for (i, (t, q1, q2)) in corpus(13, 30).iter().enumerate() {
        assert!(
            class_partition_check(t, *q1, *q2).unwrap().ok(),
            "instance {i}"
        );
        assert!(
            newton_consistency_check(t, *q1, *q2).unwrap().equal(),
            "instance {i}"
        );
    }
}

#[test]
fn quadruple_terms_only_use_short_sigmas() {
    for (t, q1, q2) in corpus(21, 30) {
        let set = enumerate_quadruples(&t, q1, q2).unwrap();
        let rest: Vec<usize> = t
            .dims()
            .iter()
            .enumerate()
            .filter(|(i, _)| i + 1 != q1 && i + 1 != q2)
            .map(|(_, &d)| d)
            .collect();
        for q in &set.quadruples {
            assert!(q.gamma().iter().all(|&g| g <= set.n));
            assert_eq!(q.contracted.dims(), rest.as_slice());
        }
    }
}

#[test]
fn determinant_tableau_gives_trace_formula() {
    let t = Tableau::generic_from_triples(&[2, 2], &[((1, 1), (2, 1), 1), ((1, 2), (2, 2), 2)])
        .unwrap();
    let s = t.substitution();
    let tr = |w: &str| {
        eval_word(&w.parse::<Word>().unwrap(), s)
            .unwrap()
            .trace()
            .unwrap()
    };
    let r = verify_decomposition(&t, 1, 2).unwrap();
    assert!(r.equal);
    assert_eq!(r.rhs, &(&tr("1") * &tr("2")) - &tr("1·2"));
}

#[test]
fn six_term_pfaffian_product() {
    let (y, z) = (SymMatrix::generic(1, 4, 4), SymMatrix::generic(2, 4, 4));
    let words: BTreeSet<(String, usize, i32)> = pfaffian_product_terms(&y, &z)
        .unwrap()
        .into_iter()
        .flat_map(|t| {
            let sign = t.sign;
            t.words
                .into_iter()
                .map(move |(w, i)| (w.to_string(), i, sign))
        })
        .collect();
    let expected: BTreeSet<(String, usize, i32)> = [
        ("1·2", 2, 1),
        ("1·2^t", 2, 1),
        ("1·2", 1, -1),
        ("1·2^t", 1, -1),
        ("1·2·1·2^t", 1, 1),
        ("1·2·1^t·2", 1, 1),
        ("1·2·1^t·2^t", 1, -1),
    ]
    .into_iter()
    .map(|(w, i, s)| (w.to_string(), i, s))
    .collect();
    assert_eq!(words, expected);
    let total: Polynomial = pfaffian_product_terms(&y, &z)
        .unwrap()
        .into_iter()
        .map(|t| t.value)
        .sum();
    assert_eq!(total, &gen_pf(&y).unwrap() * &gen_pf(&z).unwrap());
}

#[test]
fn single_column_tableau_is_partial_linearization() {
    let t =
        Tableau::generic_from_triples(&[4], &[((1, 1), (1, 2), 1), ((1, 3), (1, 4), 2)]).unwrap();
    let spec = LinearizationSpec::new(
        vec![SymMatrix::generic(1, 4, 4), SymMatrix::generic(2, 4, 4)],
        vec![1, 1],
    );
    assert_eq!(bpf(&t).unwrap(), partial_lin_pf(&spec.unwrap()).unwrap());
}

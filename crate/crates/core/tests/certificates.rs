use fsgraph::cert::{
    builtin_corpus, embed, instantiation_table, sequence_product, shortest_exchange, shortest_robust,
    verify_certificate, verify_corpus,
};
use fsgraph::fs::{exchangeable, ExchangeOutcome, SearchOptions};

#[test]
fn every_case_accepted_under_every_instantiation() {
    let corpus = builtin_corpus();
    for (c, v) in corpus.iter().zip(verify_corpus(&corpus).unwrap()) {
        assert!(v.accepted, "{}: {:?}", c.name, v.failure);
        assert_eq!(v.instantiations_checked, c.instantiation_count());
        let mut swap: Vec<usize> = (0..c.k()).collect();
        swap.swap(c.target.0, c.target.1);
        assert_eq!(sequence_product(c.k(), &c.sequence).unwrap(), swap, "{}", c.name);
    }
}

#[test]
fn ladder_product_is_the_target_transposition() {
    let c = builtin_corpus().into_iter().find(|c| c.name == "chord-both").unwrap();
    assert_eq!(c.sequence_text(), "uc dv bv dw dv xv bv dv bc bv xc uc uw");
    let p = sequence_product(c.k(), &c.sequence).unwrap();
    let (u, v) = (c.token_index("u").unwrap(), c.token_index("v").unwrap());
    for (t, &home) in p.iter().enumerate() {
        let expect = if t == u { v } else if t == v { u } else { t };
        assert_eq!(home, expect);
    }
}

#[test]
fn eight_token_sequences_are_shortest() {
    for c in builtin_corpus()
        .iter()
        .filter(|c| c.name.starts_with("sparse8-") || c.name.starts_with("complete8-"))
    {
        let s = shortest_robust(c).unwrap().expect("reachable");
        assert_eq!(s.len(), c.sequence.len(), "{}", c.name);
        // the robust optimum can never beat a single instantiation's optimum
        for inst in c.instantiations() {
            let per = shortest_exchange(c, &inst).unwrap().unwrap();
            assert!(per.len() <= s.len());
        }
    }
}

#[test]
fn instantiation_table_matches_verdict() {
    for c in builtin_corpus() {
        let rows = instantiation_table(&c).unwrap();
        assert_eq!(rows.len(), c.instantiation_count());
        assert!(rows.iter().all(|r| r.failure.is_none() && r.shortest.is_some()));
        assert!(verify_certificate(&c).unwrap().accepted);
    }
}

#[test]
fn embedded_cases_exchange_in_the_state_space() {
    let mut checked = 0;
    for c in builtin_corpus() {
        for inst in c.instantiations() {
            let e = embed(&c, &inst).unwrap();
            if e.x.n() > 12 {
                continue;
            }
            let end = e.sequence.replay(&e.x, &e.y, &e.start).unwrap().expect("legal replay");
            assert_eq!(end, e.start.apply_swap(e.target.0, e.target.1).unwrap());
            let out = exchangeable(&e.x, &e.y, &e.start, e.target.0, e.target.1, &SearchOptions::default())
                .unwrap();
            match out {
                ExchangeOutcome::Exchangeable { witness } => assert!(witness.len() <= c.sequence.len()),
                other => panic!("{}: {other:?}", c.name),
            }
            checked += 1;
        }
    }
    assert!(checked >= 3, "only {checked} embeddings fit");
}

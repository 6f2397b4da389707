use oagw_core::formula::{
    classify, decide_rphi, eval_atom, evaluate, neg_rphi_localize, neg_rphi_normalize, parse_formula, Atom, Env,
    Formula, Verdict,
};
use oagw_core::oag::{parse_element, psi, Construction, FragmentConfig, GroupElement};
use oagw_core::sample::{case_rng, random_element, Shape};
use oagw_core::Error;
use rand::Rng;

const L: Construction = Construction::Lambda;
const G: Construction = Construction::Gamma;

fn el(s: &str, c: Construction) -> GroupElement {
    parse_element(s, c).unwrap()
}

fn env(pairs: &[(&str, GroupElement)]) -> Env {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

#[test]
fn parses_nested_quantifiers() {
    let f = parse_formula("E x. A y. (0 < y & y < x) -> ~cong(2, y, {G2[0].c: 1})", L).unwrap();
    let Formula::Exists(x, body) = &f else { panic!("{f:?}") };
    assert_eq!(x, "x");
    let Formula::Forall(y, body) = body.as_ref() else { panic!() };
    assert_eq!(y, "y");
    assert!(matches!(body.as_ref(), Formula::Implies(..)));
}

#[test]
fn print_parse_round_trip() {
    let texts = [
        "E x. A y. (0 < y & y < x) -> ~cong(2, y, {G2[0].c: 1})",
        "~(x < y | y = 2*x - {G1[0].s[0]: 2 + c1}) & true",
        "psi(3, a, b) -> A z. ~psi(2, z, a)",
        "rphi([z1, z2] < a, [z3] < b; [u]; cong(2, z1, u) & cong(3, z2 + z3, c))",
        "(E x. x < a) & (A y. a < y | y = a)",
        "rphi([z] < a; []; true)",
        "x = y -> (y = x -> false)",
    ];
    for t in texts {
        let f = parse_formula(t, L).unwrap();
        let printed = f.to_string();
        assert_eq!(parse_formula(&printed, L).unwrap(), f, "{t} printed as {printed}");
        assert_eq!(parse_formula(&printed, L).unwrap().to_string(), printed);
    }
}

#[test]
fn rejects_bad_input_with_location() {
    match parse_formula("cong(1, x, y)", L) {
        Err(Error::Parse(p)) => assert_eq!(p.offset, 5),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_formula("x < ", L), Err(Error::Parse(_))));
    assert!(matches!(parse_formula("rphi([z] < a; []; z < a)", L), Err(Error::Parse(_))));
    assert!(matches!(parse_formula("x < {G1[0].s[0]: 1/2}", L), Err(Error::Parse(_)) | Err(_)));
}

#[test]
fn halving_witness_is_found() {
    let f = parse_formula("E x. x + x = a", L).unwrap();
    let a = el("{G2[0].c: 1}", L);
    let half = el("{G2[0].c: 1/2}", L);
    let cfg = FragmentConfig::new(1).with_pool(vec![half.clone()]);
    let out = evaluate(L, &f, &env(&[("a", a)]), &cfg).unwrap();
    assert_eq!(out.verdict, Verdict::True);
    assert_eq!(out.witness, Some(("x".to_string(), half)));
}

#[test]
fn quantifier_free_is_decided() {
    let f = parse_formula("0 < 0", L).unwrap();
    assert_eq!(evaluate(L, &f, &Env::new(), &FragmentConfig::default()).unwrap().verdict, Verdict::False);
}

#[test]
fn tight_bounds_give_unknown() {
    let f = parse_formula("E x. cong(2, x, a) & 0 < x & x < b", L).unwrap();
    let e = env(&[("a", el("{G1[0].s[0]: 1}", L)), ("b", el("{G1[0].s[0]: c1}", L))]);
    let out = evaluate(L, &f, &e, &FragmentConfig::new(1)).unwrap();
    assert!(matches!(out.verdict, Verdict::Unknown(_)), "{:?}", out.verdict);
}

#[test]
fn universal_counterexample_gives_false() {
    let f = parse_formula("A y. y < a", L).unwrap();
    let e = env(&[("a", el("{G1[0].c: 1}", L))]);
    let out = evaluate(L, &f, &e, &FragmentConfig::new(1)).unwrap();
    assert_eq!(out.verdict, Verdict::False);
}

#[test]
fn evaluation_errors() {
    let f = parse_formula("x < y", L).unwrap();
    assert!(matches!(
        evaluate(L, &f, &env(&[("x", el("0", L))]), &FragmentConfig::default()),
        Err(Error::UnboundVariable(_))
    ));
    let g = env(&[("x", el("0", L)), ("y", el("{G2[0].c: 1}", G))]);
    assert!(evaluate(L, &f, &g, &FragmentConfig::default()).is_err());
}

#[test]
fn prefix_classes() {
    let cases = [
        ("E x. A y. E z. x < y & y < z", "∃∀∃"),
        ("x < y", "qf"),
        ("E x. psi(2, x, a)", "∃∀"),
        ("A x. E y. x < y", "∀∃"),
        ("~(E x. A y. x < y)", "∀∃"),
        ("(E x. x < a) & (A y. y < a)", "∃∀"),
    ];
    for (t, want) in cases {
        let f = parse_formula(t, L).unwrap();
        assert_eq!(classify(&f).to_string(), want, "{t}");
    }
}

fn rphi_atom(text: &str, c: Construction) -> oagw_core::formula::RPhiSpec {
    match parse_formula(text, c).unwrap() {
        Formula::Atom(Atom::RPhi(s)) => s,
        other => panic!("{other:?}"),
    }
}

#[test]
fn single_bound_rphi_is_psi() {
    let shape = Shape::default();
    for c in [L, G] {
        for n in [2u64, 3] {
            let spec = rphi_atom(&format!("rphi([y] < b; []; cong({n}, y, a))"), c);
            for i in 0..300 {
                let mut rng = case_rng(n, i);
                let a = random_element(&mut rng, c, &shape);
                let b = random_element(&mut rng, c, &shape);
                let e = env(&[("a", a.clone()), ("b", b.clone())]);
                assert_eq!(!decide_rphi(c, &spec, &e).unwrap(), psi(n, &a, &b).unwrap(), "{c} {a} {b}");
            }
        }
    }
}

#[test]
fn degenerate_rphi_is_positivity() {
    let spec = rphi_atom("rphi([z] < a; []; true)", L);
    for a in ["{G1[0].s[0]: 1}", "0", "{G2[0].c: -1}", "{G1[0].s[0]: c1}"] {
        let a = el(a, L);
        let e = env(&[("a", a.clone())]);
        let nf = neg_rphi_normalize(L, &spec, &e).unwrap();
        let neg = evaluate(L, &nf, &e, &FragmentConfig::default()).unwrap().verdict;
        assert_eq!(neg, if a.is_positive() { Verdict::False } else { Verdict::True });
    }
}

#[test]
fn normal_form_matches_decision_and_search() {
    let shape = Shape {
        max_entries: 2,
        ..Shape::default()
    };
    let specs = [
        "rphi([z1] < a1, [z2] < a2; []; cong(2, z1, b1) & cong(2, z2, b2) & cong(2, z1, z2))",
        "rphi([z1, z2] < a1; [u]; cong(3, z1 + z2, b1) & cong(3, z1, u + u))",
        "rphi([z1] < a1, [z2] < a2; []; cong(6, z1 - z2, b1) & cong(2, z2, b2))",
        "rphi([z1] < a1; [u]; cong(2, z1, b1 + u) & cong(4, u, b2))",
    ];
    for c in [L, G] {
        for text in specs {
            let spec = rphi_atom(text, c);
            for i in 0..80 {
                let mut rng = case_rng(7, i);
                let mut draw = || {
                    let g = random_element(&mut rng, c, &shape);
                    if rng_bool(i) { g.abs() } else { g }
                };
                let e = env(&[("a1", draw()), ("a2", draw()), ("b1", draw()), ("b2", draw())]);
                let truth = decide_rphi(c, &spec, &e).unwrap();
                let nf = neg_rphi_normalize(c, &spec, &e).unwrap();
                let nv = evaluate(c, &nf, &e, &FragmentConfig::default()).unwrap().verdict;
                assert_eq!(nv.as_bool(), Some(!truth), "{c} {text} {e:?}\n{nf}");
                if let Some(local) = neg_rphi_localize(c, &spec, &e).unwrap() {
                    let lv = evaluate(c, &local, &e, &FragmentConfig::default()).unwrap().verdict;
                    assert_eq!(lv, Verdict::True, "{c} {text}: {local}");
                } else {
                    assert!(truth);
                }
                let expanded = spec.expand();
                let cfg = FragmentConfig::new(1).with_cap(600);
                let searched = evaluate(c, &expanded, &e, &cfg).unwrap().verdict;
                if searched == Verdict::True {
                    assert!(truth, "{c} {text}: search found a solution the decision rejects");
                }
                let atom = Atom::RPhi(spec.clone());
                assert_eq!(eval_atom(c, &atom, &e).unwrap(), truth);
            }
        }
    }
}

fn rng_bool(i: u64) -> bool {
    let mut rng = case_rng(99, i);
    rng.random_bool(0.7)
}

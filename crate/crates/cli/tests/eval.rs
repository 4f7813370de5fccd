use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use rcx_cli::{parse_expr, Env};
use rcx_core::{rat, Error, GenId, Monomial, RealAlg, Series};

fn env() -> Env {
    Env::new(8).unwrap()
}

fn eval(env: &mut Env, src: &str) -> Series {
    env.eval(&parse_expr(src).unwrap()).unwrap()
}

fn x_pow(e: i64) -> Monomial {
    Monomial::gen_pow(GenId(0), rat(e, 1))
}

#[test]
fn sum_with_constant() {
    let mut env = env();
    let s = eval(&mut env, "x + 1/2");
    let want = Series::from_terms(
        vec![
            (RealAlg::one(), x_pow(1)),
            (RealAlg::from_rational(rat(1, 2)), Monomial::one()),
        ],
        None,
        &env.reg,
    )
    .unwrap();
    assert_eq!(s, want);
}

#[test]
fn geometric_quotient_with_cutoff() {
    let mut env = env().with_cutoff(x_pow(-5));
    let s = eval(&mut env, "x/(x-1)");
    let terms = (0..5).map(|k| (RealAlg::one(), x_pow(-k))).collect();
    let want = Series::from_terms(terms, Some(x_pow(-5)), &env.reg).unwrap();
    assert_eq!(s, want);
}

#[test]
fn log_of_x_is_next_ladder_element() {
    let mut env = env();
    let s = eval(&mut env, "log2(x)");
    assert_eq!(s, Series::monomial(env.reg.y(1).unwrap()));
    let s = eval(&mut env, "log2(log2(x))");
    assert_eq!(s, Series::monomial(env.reg.y(2).unwrap()));
}

#[test]
fn exp_and_log_cancel() {
    let mut env = env();
    let s = eval(&mut env, "exp2(log2(x)+1/2)");
    let root2 = RealAlg::from_int(2).root(2).unwrap();
    assert_eq!(s, Series::term(root2, x_pow(1)));
    assert_eq!(eval(&mut env, "log2(exp2(log2(x)+1/2))"), eval(&mut env, "log2(x)+1/2"));
}

#[test]
fn errors_are_spanned() {
    let mut env = env();
    let err = env.eval(&parse_expr("x + 1/(x - x)").unwrap()).unwrap_err();
    assert!(matches!(err.source, Error::DivisionByZero));
    assert_eq!(err.span, (4, 13));
    let err = env.eval(&parse_expr("exp2(1/x)").unwrap()).unwrap_err();
    assert!(matches!(err.source, Error::InfinitesimalExponent));
    let err = env.eval(&parse_expr("sqrt(0-x)").unwrap()).unwrap_err();
    assert!(matches!(err.source, Error::NegativeEvenRoot));
}

/// Long division of polynomials in x, highest power first.
fn long_division(a: &[i64], b: &[i64], terms: usize) -> Vec<(i64, BigRational)> {
    let da = a.len() as i64 - 1;
    let db = b.len() as i64 - 1;
    let mut r: Vec<BigRational> = a.iter().map(|&c| BigRational::from_integer(c.into())).collect();
    r.resize(a.len() + terms + b.len(), BigRational::zero());
    let lead = BigRational::from_integer(b[0].into());
    let mut out = Vec::new();
    for k in 0..terms {
        let q = r[k].clone() / &lead;
        for (j, &c) in b.iter().enumerate() {
            r[k + j] -= &q * BigRational::from_integer(BigInt::from(c));
        }
        out.push((da - db - k as i64, q));
    }
    out
}

fn poly_src(c: &[i64]) -> String {
    let d = c.len() - 1;
    let parts: Vec<String> = c
        .iter()
        .enumerate()
        .map(|(i, v)| format!("({v})*x^{}", d - i))
        .collect();
    parts.join(" + ")
}

fn poly_strategy() -> impl Strategy<Value = Vec<i64>> {
    (1i64..6, prop::collection::vec(-5i64..6, 0..4)).prop_map(|(lead, mut rest)| {
        rest.insert(0, lead);
        rest
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quotients_match_long_division(a in poly_strategy(), b in poly_strategy()) {
        let mut env = env();
        let s = eval(&mut env, &format!("({})/({})", poly_src(&a), poly_src(&b)));
        let oracle = long_division(&a, &b, 8);
        let top = oracle[0].0;
        let monomial_divisor = b[1..].iter().all(|&c| c == 0);
        let cutoff = if monomial_divisor { None } else { Some(x_pow(top - 8)) };
        prop_assert_eq!(s.cutoff(), cutoff.as_ref());
        let want: Vec<(RealAlg, Monomial)> = oracle
            .into_iter()
            .filter(|(_, q)| !q.is_zero())
            .map(|(e, q)| (RealAlg::from_rational(q), x_pow(e)))
            .collect();
        let got: Vec<(RealAlg, Monomial)> =
            s.terms().iter().map(|t| (t.coeff.clone(), t.mono.clone())).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn eval_is_a_ring_homomorphism(a in poly_strategy(), b in poly_strategy(), k in 1i64..4) {
        let mut env = env();
        let (pa, pb) = (format!("({})*log2(x)^{k}", poly_src(&a)), poly_src(&b));
        let ea = eval(&mut env, &pa);
        let eb = eval(&mut env, &pb);
        prop_assert_eq!(eval(&mut env, &format!("{pa} + ({pb})")), ea.add(&eb, &env.reg).unwrap());
        prop_assert_eq!(eval(&mut env, &format!("{pa} - ({pb})")), ea.sub(&eb, &env.reg).unwrap());
        prop_assert_eq!(eval(&mut env, &format!("({pa}) * ({pb})")), ea.mul(&eb, &env.reg).unwrap());
        prop_assert_eq!(eval(&mut env, &format!("-({pb})")), eb.neg());
        prop_assert_eq!(eval(&mut env, &format!("({pb})^3")), eb.pow(3, &env.reg).unwrap());
        let one = Series::constant(RealAlg::from_rational(BigRational::one()));
        prop_assert_eq!(eval(&mut env, &format!("({pb})^0")), one);
    }
}

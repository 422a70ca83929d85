//! Library values against closed forms and brute force computed here.

use modva::dual::DualCarrier;
use modva::forms::{form_space_dim, InvariantForm};
use modva::lie::LieSpec;
use modva::vacuum::{Carrier, GradedVector};
use modva::{Error, Fp, PrimeField};
use num_bigint::{BigInt, BigUint};

fn field(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn residue(n: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let r = ((n % &p) + &p) % &p;
    u32::try_from(r).unwrap()
}

fn falling_binom(m: i64, k: u64) -> BigInt {
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..k as i64 {
        num *= m - i;
        den *= i + 1;
    }
    num / den
}

#[test]
fn binomials_match_exact_integers() {
    for p in [3u64, 5, 7, 13] {
        let f = field(p);
        for m in -60i64..=120 {
            for k in 0..=40u64 {
                assert_eq!(f.binom(m, k).value(), residue(&falling_binom(m, k), p), "binom({m},{k}) mod {p}");
            }
        }
    }
}

#[test]
fn binomials_of_large_arguments() {
    let f = field(7);
    let fact = |n: u64| (1..=n).fold(BigUint::from(1u32), |a, i| a * i);
    for (m, k) in [(343u64, 49u64), (400, 123), (2400, 343), (2401, 2401), (1000, 999)] {
        let exact = fact(m) / (fact(k) * fact(m - k));
        assert_eq!(f.binom(m as i64, k).value() as u64, u64::try_from(exact % 7u32).unwrap());
    }
}

fn invalid_modulus(p: u64) -> bool {
    matches!(PrimeField::new(p), Err(Error::InvalidModulus(_)))
}

#[test]
fn modulus_validation() {
    for p in [0, 1, 2, 4, 9, 15, 1 << 31] {
        assert!(invalid_modulus(p), "{p}");
    }
    for p in [3, 5, 7, 2_147_483_647] {
        assert!(!invalid_modulus(p), "{p}");
    }
}

/// Coefficients of `prod_{s >= min_s} (1 - q^s)^{-copies}` up to `q^n`.
fn pbw_series(copies: usize, min_s: usize, n: usize) -> Vec<u64> {
    let mut c = vec![0u64; n + 1];
    c[0] = 1;
    for s in min_s..=n {
        for _ in 0..copies {
            for i in s..=n {
                c[i] += c[i - s];
            }
        }
    }
    c
}

#[test]
fn graded_dimensions_follow_the_generating_functions() {
    let f = field(5);
    let n = 9;
    for (c, want) in [
        (Carrier::affine(LieSpec::sl2(&f), f.one(), n), pbw_series(3, 1, n as usize)),
        (Carrier::affine(LieSpec::abelian1(&f), f.one(), n), pbw_series(1, 1, n as usize)),
        (Carrier::virasoro(&f, f.one(), n), pbw_series(1, 2, n as usize)),
    ] {
        let got: Vec<u64> = (0..=n).map(|d| c.dim(d) as u64).collect();
        assert_eq!(got, want, "{}", c.describe());
    }
}

#[test]
fn lie_specs_satisfy_the_axioms_by_brute_force() {
    let f = field(7);
    let heis = r#"{"basis": ["x", "y", "z", "t"],
        "brackets": [["x", "y", {"z": 1}], ["t", "x", {"x": 1}], ["t", "y", {"y": -1}]],
        "form": [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]}"#;
    for spec in [LieSpec::sl2(&f), LieSpec::abelian1(&f), LieSpec::from_json(heis, &f).unwrap()] {
        let d = spec.dim();
        let br = |a: &[Fp], b: &[Fp]| -> Vec<Fp> {
            let mut out = vec![f.zero(); d];
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        out[k] += a[i] * b[j] * spec.bracket(i, j)[k];
                    }
                }
            }
            out
        };
        let unit = |i: usize| (0..d).map(|j| if i == j { f.one() } else { f.zero() }).collect::<Vec<_>>();
        let form = |a: &[Fp], b: &[Fp]| {
            let mut s = f.zero();
            for i in 0..d {
                for j in 0..d {
                    s += a[i] * b[j] * spec.form(i, j);
                }
            }
            s
        };
        for i in 0..d {
            let a = unit(i);
            assert!(br(&a, &a).iter().all(|x| x.is_zero()));
            for j in 0..d {
                let b = unit(j);
                assert_eq!(spec.form(i, j), spec.form(j, i));
                for k in 0..d {
                    let c = unit(k);
                    let jac: Vec<Fp> = (0..d)
                        .map(|t| br(&a, &br(&b, &c))[t] + br(&b, &br(&c, &a))[t] + br(&c, &br(&a, &b))[t])
                        .collect();
                    assert!(jac.iter().all(|x| x.is_zero()));
                    assert_eq!(form(&br(&a, &b), &c), form(&a, &br(&b, &c)));
                }
            }
        }
    }
}

#[test]
fn invalid_lie_specs_are_rejected() {
    let f = field(5);
    let not_invariant = r#"{"basis": ["e", "h", "f"],
        "brackets": [["e", "f", {"h": 1}], ["h", "e", {"e": 2}], ["h", "f", {"f": -2}]],
        "form": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}"#;
    let not_jacobi = r#"{"basis": ["x", "y", "z"],
        "brackets": [["x", "y", {"y": 1}], ["x", "z", {"y": 1}], ["y", "z", {"x": 1}]],
        "form": [[0, 0, 0], [0, 0, 0], [0, 0, 0]]}"#;
    for text in [not_invariant, not_jacobi] {
        assert!(matches!(LieSpec::from_json(text, &f), Err(Error::LieAxiom { .. })));
    }
    for text in ["{", r#"{"basis": ["a"], "form": [[1, 0]]}"#, r#"{"basis": ["a", "a"], "form": [[1, 0], [0, 1]]}"#] {
        assert!(LieSpec::from_json(text, &f).is_err(), "{text}");
    }
}

fn state(c: &Carrier, word: &str) -> GradedVector {
    c.normal_order_word(&c.parse_modes(word).unwrap()).unwrap()
}

#[test]
fn virasoro_gram_entries_match_closed_forms() {
    for p in [5u64, 7, 11] {
        let f = field(p);
        for k in 0..p as i64 {
            let cc = f.elem(k);
            let c = Carrier::virasoro(&f, cc, 4);
            let form = InvariantForm::new(&c);
            let pair = |a: &str, b: &str| form.pair(&state(&c, a), &state(&c, b)).unwrap();
            assert_eq!(pair("L(-2)", "L(-2)"), cc * f.half());
            assert_eq!(pair("L(-3)", "L(-3)"), f.elem(2) * cc);
            assert_eq!(pair("L(-4)", "L(-4)"), f.elem(5) * cc);
            assert_eq!(pair("L(-4)", "L(-2) L(-2)"), f.elem(3) * cc);
            assert_eq!(pair("L(-2) L(-2)", "L(-2) L(-2)"), cc * cc * f.half() + f.elem(4) * cc);
            assert_eq!(pair("L(-2)", "L(-3)"), f.zero());
        }
    }
}

#[test]
fn affine_degree_two_entries_match_commutators() {
    let f = field(7);
    let spec = LieSpec::sl2(&f);
    let names = ["e", "h", "f"];
    for level in [0i64, 1, 3] {
        let l = f.elem(level);
        let c = Carrier::affine(spec.clone(), l, 2);
        let form = InvariantForm::new(&c);
        for (a, na) in names.iter().enumerate() {
            for (b, nb) in names.iter().enumerate() {
                let x = state(&c, &format!("{na}(-2)"));
                // (a(-2)1, b(-2)1) = -(1, a(2) b(-2) 1) = -2 level <a,b>
                assert_eq!(form.pair(&x, &state(&c, &format!("{nb}(-2)"))).unwrap(), -(f.elem(2) * l * spec.form(a, b)));
                for (d, nd) in names.iter().enumerate() {
                    // (a(-2)1, b(-1)d(-1)1) = -(1, [a,b](1) d(-1) 1) = -level <[a,b],d>
                    let ab = spec.bracket(a, b);
                    let want = -(0..3).fold(f.zero(), |s, t| s + ab[t] * spec.form(t, d)) * l;
                    assert_eq!(form.pair(&x, &state(&c, &format!("{nb}(-1) {nd}(-1)"))).unwrap(), want);
                }
            }
        }
    }
}

/// Nullity of a square matrix over F_p by plain Gaussian elimination.
fn nullity(mut m: Vec<Vec<Fp>>) -> usize {
    let n = m.len();
    let mut rank = 0;
    for col in 0..n {
        let Some(r) = (rank..n).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, r);
        let inv = m[rank][col].inv().unwrap();
        for r in 0..n {
            if r != rank && !m[r][col].is_zero() {
                let k = m[r][col] * inv;
                for j in 0..n {
                    let v = m[rank][j];
                    m[r][j] -= k * v;
                }
            }
        }
        rank += 1;
    }
    n - rank
}

#[test]
fn radical_dimensions_match_gram_nullity() {
    let f = field(5);
    for c in [
        Carrier::affine(LieSpec::sl2(&f), f.elem(0), 4),
        Carrier::affine(LieSpec::sl2(&f), f.elem(3), 4),
        Carrier::virasoro(&f, f.zero(), 6),
        Carrier::virasoro(&f, f.elem(2), 6),
    ] {
        let form = InvariantForm::new(&c);
        for n in 0..=c.truncation() {
            let row = form.gram_row(n).unwrap();
            assert_eq!(row.radical.len(), nullity(row.matrix.clone()), "{} degree {n}", c.describe());
            assert!(row.is_symmetric());
        }
    }
}

#[test]
fn level_zero_radical_is_everything_above_the_vacuum() {
    let f = field(3);
    let c = Carrier::affine(LieSpec::sl2(&f), f.zero(), 3);
    let rows = InvariantForm::new(&c).gram_table(3).unwrap();
    assert_eq!(rows[0].rank, 1);
    for r in &rows[1..] {
        assert_eq!((r.rank, r.radical.len()), (0, r.dim()));
    }
}

#[test]
fn form_space_is_one_dimensional() {
    let f = field(7);
    for c in [Carrier::affine(LieSpec::abelian1(&f), f.elem(4), 5), Carrier::virasoro(&f, f.elem(6), 6)] {
        let fs = form_space_dim(&c).unwrap();
        assert_eq!((fs.dim, fs.stabilized), (1, true));
        assert_eq!(fs.span_ranks.len(), c.truncation() as usize + 1);
    }
}

#[test]
fn dual_pairs_basis_functionals_with_the_basis() {
    let f = field(5);
    let c = Carrier::affine(LieSpec::sl2(&f), f.one(), 3);
    let dual = DualCarrier::new(&c, 3).unwrap();
    assert!(DualCarrier::new(&c, 4).is_err());
    for n in 0..=3 {
        assert_eq!(dual.dim(n), c.dim(n));
        for i in 0..c.dim(n) {
            let phi = dual.basis_functional(n, i);
            for m in 0..=3 {
                for j in 0..c.dim(m) {
                    let want = if (n, i) == (m, j) { f.one() } else { f.zero() };
                    assert_eq!(dual.pair(&phi, &c.basis_vector(m, j)), want);
                }
            }
        }
    }
    assert_eq!(dual.pair(&dual.basis_functional(0, 0), &c.vacuum()), f.one());
}

#[test]
fn form_functional_of_vacuum_is_the_vacuum_covector() {
    let f = field(7);
    let c = Carrier::virasoro(&f, f.elem(3), 4);
    let form = InvariantForm::new(&c);
    let dual = DualCarrier::new(&c, 4).unwrap();
    let phi = dual.functional_of(&c.vacuum(), |u, w| form.pair(u, w)).unwrap();
    for n in 0..=4 {
        for j in 0..c.dim(n) {
            let want = if n == 0 { f.one() } else { f.zero() };
            assert_eq!(dual.pair(&phi, &c.basis_vector(n, j)), want);
        }
    }
}

//! Differential fixtures for the Buchberger engine: reduced grevlex bases and
//! normal forms computed independently with another computer-algebra system
//! and frozen here. Expected bases are given up to scaling (the oracle
//! normalizes to primitive integer coefficients, this engine to monic), so
//! both sides are monicized before comparison.

use std::sync::Arc;

use satnorm::field::Rationals;
use satnorm::groebner::GroebnerBasis;
use satnorm::order::MonomialOrder;
use satnorm::poly::{Poly, PolyRing};
use satnorm::poly_parse;

struct Case {
    vars: &'static [&'static str],
    gens: &'static [&'static str],
    basis: &'static [&'static str],
    probes: &'static [(&'static str, &'static str)],
}

const CASES: &[Case] = &[
    Case {
        vars: &["x", "y"],
        gens: &["x^2 + y^2 - 1", "x*y - 1"],
        basis: &["x + y^3 - y", "x^2 + y^2 - 1", "x*y - 1"],
        probes: &[
            ("-2*x*y^2 - x + 3*y^2 - 2", "-x + 3*y^2 - 2*y - 2"),
            ("3*x^2 + x*y + 3*y^2 - 4", "0"),
        ],
    },
    Case {
        vars: &["x", "y"],
        gens: &["x^3 - 2*x*y", "x^2*y + x - 2*y^2"],
        basis: &["x^2", "x*y", "-x + 2*y^2"],
        probes: &[
            ("-3*x^2*y - 2*x^2 - y - 2", "-y - 2"),
            ("x^3*y^2 - 2*x^3 + x^2*y - 2*x*y^3 + 4*x*y + x - 2*y^2", "0"),
        ],
    },
    Case {
        vars: &["x", "y", "z"],
        gens: &["x + y + z", "x*y + x*z + y*z", "x*y*z - 1"],
        basis: &["z^3 - 1", "y^2 + y*z + z^2", "x + y + z"],
        probes: &[
            ("-x^2*z + y + 2", "-y*z^2 + y + 2"),
            ("-2*x*y + x*z - x - 3*y^2 - 2*y*z - y - z", "0"),
        ],
    },
    Case {
        vars: &["x", "y", "z"],
        gens: &["x^2 - y", "y^2 - z", "-x + z^2"],
        basis: &["x^2 - y", "y^2 - z", "-x + z^2"],
        probes: &[
            ("3*x*z^3 + y^2 + 4", "3*y*z + z + 4"),
            ("2*x^3*y + 3*x^2 - 2*x*y^2 + y^2 - 3*y - z", "0"),
        ],
    },
    Case {
        vars: &["x", "y"],
        gens: &["2*x^2 - 3*y", "1/2*x*y + x - 5"],
        basis: &["x^2 - 3/2*y", "x*y + 2*x - 10", "-20/3*x + y^2 + 2*y"],
        probes: &[
            ("x^2*y + 3*x^2 + 2*x*y^2 + 2", "18*x + 43/2*y - 38"),
            ("6*x^3*y + 4*x^2*y - 9*x*y^2 + 1/2*x*y + x - 6*y^2 - 5", "0"),
        ],
    },
    Case {
        vars: &["x", "y"],
        gens: &[
            "-3*x^2*y - 3*x*y^2 - 3*x*y",
            "2*x^2*y - y",
            "-3*x^2*y + 3*y^2 - 1",
        ],
        basis: &["1"],
        probes: &[
            ("-2*x^2*y^2 + x", "0"),
            (
                "3*x^2*y^3 - 6*x^2*y^2 + 2*x^2*y + 3*x*y^4 - 3*x*y^3 - 6*x*y^2 - y",
                "0",
            ),
        ],
    },
    Case {
        vars: &["x", "y"],
        gens: &["-3*y^2 - 3*y + 2", "3*x*y^2 - x + 3*y", "x^2*y + 2*x - 1"],
        basis: &["1"],
        probes: &[
            ("2*x^2*y - 3*x*y - y - 2", "0"),
            ("3*x*y^2 - x - 3*y^4 - 3*y^3 - 4*y^2 - 3*y + 4", "0"),
        ],
    },
    Case {
        vars: &["x", "y", "z"],
        gens: &[
            "-x^2*z - 2*y*z + 3*z",
            "y^3 - 2*y + 1",
            "x^2*y + x*y^2 - 2*x*y",
        ],
        basis: &["y^3 - 2*y + 1", "x^2 + x*y - 2*x", "x*z - z", "y*z - z"],
        probes: &[
            (
                "2*x^3*y - 3*x*y + 2*y*z^2 + 3",
                "-8*x*y^2 + 9*x*y - 2*x + 2*z^2 + 3",
            ),
            ("-2*x^2*z + y^3 - 4*y*z - 2*y + 6*z + 1", "0"),
        ],
    },
];

fn monic_display(p: &Poly<Rationals>) -> String {
    p.monic(&MonomialOrder::GrevLex).to_string()
}

fn ring_for(case: &Case) -> Arc<PolyRing<Rationals>> {
    PolyRing::new(Rationals, case.vars.iter().map(|s| s.to_string()).collect()).unwrap()
}

#[test]
fn reduced_bases_match_the_independent_oracle() {
    for (idx, case) in CASES.iter().enumerate() {
        let ring = ring_for(case);
        let gens: Vec<_> = case
            .gens
            .iter()
            .map(|t| poly_parse(t, &ring).unwrap())
            .collect();
        let gb = GroebnerBasis::new(&ring, &gens, MonomialOrder::GrevLex).unwrap();

        let mut got: Vec<String> = gb.generators().iter().map(monic_display).collect();
        let mut expect: Vec<String> = case
            .basis
            .iter()
            .map(|t| monic_display(&poly_parse(t, &ring).unwrap()))
            .collect();
        got.sort();
        expect.sort();
        assert_eq!(got, expect, "case {idx}: reduced basis differs from oracle");
    }
}

struct FpCase {
    p: u64,
    vars: &'static [&'static str],
    gens: &'static [&'static str],
    basis: &'static [&'static str],
    probe: (&'static str, &'static str),
}

const FP_CASES: &[FpCase] = &[
    FpCase {
        p: 5,
        vars: &["x", "y"],
        gens: &["x^2 + 2*y", "3*x*y + 4"],
        basis: &["x^2 + 2*y", "x*y + 3", "x + y^2"],
        probe: ("x^3 + 3*x*y^2 + 3*x*y + 4*y + 1", "3"),
    },
    FpCase {
        p: 5,
        vars: &["x", "y"],
        gens: &["x^3 + 4*y^2", "x*y + 3"],
        basis: &["x^3 + 4*y^2", "3*x^2 + y^3", "x*y + 3"],
        probe: ("x^4 + x*y + 3*y + 1", "3"),
    },
    FpCase {
        p: 2,
        vars: &["x", "y", "z"],
        gens: &["x*y + z", "x + y*z", "x + y + z"],
        basis: &["x", "y", "z"],
        probe: ("x^2*y + x*z + y^2*z + 1", "1"),
    },
];

#[test]
fn prime_field_bases_match_the_independent_oracle() {
    use satnorm::field::PrimeField;
    for (idx, case) in FP_CASES.iter().enumerate() {
        let ring = PolyRing::new(
            PrimeField::new(case.p).unwrap(),
            case.vars.iter().map(|s| s.to_string()).collect(),
        )
        .unwrap();
        let gens: Vec<_> = case
            .gens
            .iter()
            .map(|t| poly_parse(t, &ring).unwrap())
            .collect();
        let gb = GroebnerBasis::new(&ring, &gens, MonomialOrder::GrevLex).unwrap();
        let mut got: Vec<String> = gb
            .generators()
            .iter()
            .map(|p| p.monic(&MonomialOrder::GrevLex).to_string())
            .collect();
        let mut expect: Vec<String> = case
            .basis
            .iter()
            .map(|t| {
                poly_parse(t, &ring)
                    .unwrap()
                    .monic(&MonomialOrder::GrevLex)
                    .to_string()
            })
            .collect();
        got.sort();
        expect.sort();
        assert_eq!(got, expect, "F_{} case {idx}: basis differs", case.p);

        let (probe, expect_nf) = case.probe;
        let nf = gb.normal_form(&poly_parse(probe, &ring).unwrap()).unwrap();
        assert_eq!(nf, poly_parse(expect_nf, &ring).unwrap());
    }
}

#[test]
fn normal_forms_match_the_independent_oracle() {
    for (idx, case) in CASES.iter().enumerate() {
        let ring = ring_for(case);
        let gens: Vec<_> = case
            .gens
            .iter()
            .map(|t| poly_parse(t, &ring).unwrap())
            .collect();
        let gb = GroebnerBasis::new(&ring, &gens, MonomialOrder::GrevLex).unwrap();
        for (probe, expect) in case.probes {
            let nf = gb.normal_form(&poly_parse(probe, &ring).unwrap()).unwrap();
            let expect = poly_parse(expect, &ring).unwrap();
            assert_eq!(nf, expect, "case {idx}: NF({probe}) differs from oracle");
        }
    }
}

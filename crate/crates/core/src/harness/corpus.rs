//! Named families of explicit ideals and the values expected of them.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::kernel_of_ring_map;
use crate::ideal::Ideal;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::RingDescriptor;
use crate::veronese::full_veronese_ideal;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    /// Stated in the literature the harness checks.
    Literature,
    /// Computed once by an independent method and frozen.
    Oracle,
    /// True by the way the ideal is built.
    Construction,
}

/// A builder with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    RationalNormalCurve { r: usize },
    Veronese { r: usize, ell: u32 },
    PlaneCurve { curve: String },
    /// `x_i ↦ s^{a_i} t^{d - a_i}` with `d = max a_i`.
    MonomialCurve { exponents: Vec<u32> },
    CompleteIntersection { degrees: Vec<u32>, n_vars: usize },
    Quadric { rank: usize, n_vars: usize },
    /// The Fermat hypersurface `Σ x_i^d`.
    Hypersurface { degree: u32, n_vars: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "quantity", rename_all = "snake_case")]
pub enum Expected {
    Regularity { value: u32 },
    NormalityFrom { value: u32 },
    GenerationDegree { value: u32 },
    /// Betti number `β_{i,q}` of the coordinate ring.
    Betti { i: usize, q: u32, value: u64 },
    /// `N_p` of the degree-`ell` re-embedding holds for `p ≤ holds`
    /// (`-1`: `N_0` fails) and, when given, fails at `fails`.
    Np { ell: u32, holds: i64, fails: Option<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectation {
    #[serde(flatten)]
    pub expected: Expected,
    pub origin: Origin,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub family: Family,
    pub expectations: Vec<Expectation>,
}

impl CorpusEntry {
    pub fn ideal(&self, prime: u32, budget: &Budget) -> Result<Ideal> {
        self.family.build(prime, budget)
    }
}

fn x_ring(n: usize, prime: u32) -> Result<crate::ring::Ring> {
    RingDescriptor::standard("x", n, prime, MonomialOrder::Grevlex)
}

/// Moves an ideal onto `x0, x1, ...` keeping variable positions.
fn rename_to_x(ideal: &Ideal) -> Result<Ideal> {
    let n = ideal.n_vars();
    let ring = x_ring(n, ideal.ring().prime())?;
    let map: Vec<usize> = (0..n).collect();
    Ideal::new(&ring, ideal.gens().iter().map(|g| g.remap(&ring, &map)).collect())
}

fn power_sum(ring: &crate::ring::Ring, n: usize, degree: u32, weight: impl Fn(usize) -> i64) -> Result<Polynomial> {
    let field = ring.field();
    let terms = (0..n).map(|i| {
        let mut e = vec![0u16; ring.n_vars()];
        e[i] = degree as u16;
        (Monomial::from_exponents(&e), field.from_i64(weight(i)))
    });
    Ok(Polynomial::from_terms(ring, terms))
}

impl Family {
    pub fn build(&self, prime: u32, budget: &Budget) -> Result<Ideal> {
        match self {
            Family::RationalNormalCurve { r } => rename_to_x(&full_veronese_ideal(1, *r as u32, prime, budget)?),
            Family::Veronese { r, ell } => rename_to_x(&full_veronese_ideal(*r, *ell, prime, budget)?),
            Family::PlaneCurve { curve } => {
                let ring = RingDescriptor::new(vec!["x".into(), "y".into(), "z".into()], prime, MonomialOrder::Grevlex)?;
                let text = match curve.as_str() {
                    "nodal_cubic" => "y^2*z - x^3 - x^2*z",
                    "cuspidal_cubic" => "y^2*z - x^3",
                    "smooth_cubic" => "x^3 + y^3 + z^3",
                    other => other,
                };
                let f = Polynomial::parse(&ring, text)?;
                if !f.is_homogeneous() || f.is_constant() {
                    return Err(Error::Precondition(format!("plane curve '{text}' is not a homogeneous form")));
                }
                Ideal::new(&ring, vec![f])
            }
            Family::MonomialCurve { exponents } => {
                let d = exponents.iter().copied().max().unwrap_or(0);
                if exponents.len() < 2 || d == 0 {
                    return Err(Error::Precondition("a monomial curve needs two or more exponents, not all zero".into()));
                }
                let params = RingDescriptor::new(vec!["s".into(), "t".into()], prime, MonomialOrder::Grevlex)?;
                let images: Vec<Polynomial> = exponents
                    .iter()
                    .map(|&a| Polynomial::monomial(&params, Monomial::from_exponents(&[a as u16, (d - a) as u16]), 1))
                    .collect();
                let target = x_ring(exponents.len(), prime)?;
                kernel_of_ring_map(&images, &target, &Ideal::zero(&params), budget)
            }
            Family::CompleteIntersection { degrees, n_vars } => {
                if degrees.is_empty() || degrees.len() >= *n_vars || degrees.contains(&0) {
                    return Err(Error::Precondition(format!(
                        "complete intersection of {} forms in {n_vars} variables",
                        degrees.len()
                    )));
                }
                let mut sorted = degrees.clone();
                sorted.sort_unstable();
                let ring = x_ring(*n_vars, prime)?;
                // generator j is Σ (i+1)^j x_i^{d_j}
                let gens = sorted
                    .iter()
                    .enumerate()
                    .map(|(j, &d)| power_sum(&ring, *n_vars, d, |i| (i as i64 + 1).pow(j as u32)))
                    .collect::<Result<Vec<_>>>()?;
                Ideal::new(&ring, gens)
            }
            Family::Quadric { rank, n_vars } => {
                if *rank == 0 || rank > n_vars {
                    return Err(Error::Precondition(format!("quadric of rank {rank} in {n_vars} variables")));
                }
                let ring = x_ring(*n_vars, prime)?;
                Ideal::new(&ring, vec![power_sum(&ring, *rank, 2, |_| 1)?])
            }
            Family::Hypersurface { degree, n_vars } => {
                if *degree == 0 || *n_vars < 2 {
                    return Err(Error::Precondition("hypersurfaces need degree ≥ 1 in two or more variables".into()));
                }
                let ring = x_ring(*n_vars, prime)?;
                Ideal::new(&ring, vec![power_sum(&ring, *n_vars, *degree, |_| 1)?])
            }
        }
    }

    /// Canonical name, parseable by [`parse_name`].
    pub fn name(&self) -> String {
        let list = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        match self {
            Family::RationalNormalCurve { r } => format!("rational_normal_curve({r})"),
            Family::Veronese { r, ell } => format!("veronese({r},{ell})"),
            Family::PlaneCurve { curve } => format!("plane_curve({curve})"),
            Family::MonomialCurve { exponents } => format!("monomial_curve([{}])", list(exponents)),
            Family::CompleteIntersection { degrees, n_vars } => {
                format!("complete_intersection([{}],{n_vars})", list(degrees))
            }
            Family::Quadric { rank, n_vars } => format!("quadric({rank},{n_vars})"),
            Family::Hypersurface { degree, n_vars } => format!("hypersurface({degree},{n_vars})"),
        }
    }
}

/// Splits `a, [b, c], d` at top-level commas.
fn split_args(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ => {}
        }
        if c == ',' && depth == 0 {
            out.push(cur.trim().to_string());
            cur.clear();
        } else {
            cur.push(c);
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

fn parse_num<T: std::str::FromStr>(name: &str, s: &str) -> Result<T> {
    s.trim().parse().map_err(|_| Error::UnknownCorpus(format!("{name}: bad parameter '{s}'")))
}

fn parse_list(name: &str, s: &str) -> Result<Vec<u32>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::UnknownCorpus(format!("{name}: expected a [..] list, got '{s}'")))?;
    split_args(inner).iter().map(|x| parse_num(name, x)).collect()
}

/// Parses `family(args)` or one of the short aliases.
pub fn parse_name(name: &str) -> Result<Family> {
    let name = name.trim();
    match name {
        "twisted_cubic" => return Ok(Family::RationalNormalCurve { r: 3 }),
        "rational_quartic" => return Ok(Family::MonomialCurve { exponents: vec![4, 3, 1, 0] }),
        "nodal_cubic" | "smooth_cubic" | "cuspidal_cubic" => return Ok(Family::PlaneCurve { curve: name.into() }),
        "veronese_surface" => return Ok(Family::Veronese { r: 2, ell: 2 }),
        _ => {}
    }
    let unknown = || Error::UnknownCorpus(name.to_string());
    let open = name.find('(').ok_or_else(unknown)?;
    let head = &name[..open];
    let body = name[open + 1..].strip_suffix(')').ok_or_else(unknown)?;
    let args = split_args(body);
    let arity = |k: usize| if args.len() == k { Ok(()) } else { Err(unknown()) };
    let family = match head {
        "rational_normal_curve" => {
            arity(1)?;
            Family::RationalNormalCurve { r: parse_num(name, &args[0])? }
        }
        "veronese" => {
            arity(2)?;
            Family::Veronese { r: parse_num(name, &args[0])?, ell: parse_num(name, &args[1])? }
        }
        "plane_curve" => {
            arity(1)?;
            Family::PlaneCurve { curve: args[0].clone() }
        }
        "monomial_curve" => {
            arity(1)?;
            Family::MonomialCurve { exponents: parse_list(name, &args[0])? }
        }
        "complete_intersection" => {
            arity(2)?;
            Family::CompleteIntersection { degrees: parse_list(name, &args[0])?, n_vars: parse_num(name, &args[1])? }
        }
        "quadric" => {
            arity(2)?;
            Family::Quadric { rank: parse_num(name, &args[0])?, n_vars: parse_num(name, &args[1])? }
        }
        "hypersurface" => {
            arity(2)?;
            Family::Hypersurface { degree: parse_num(name, &args[0])?, n_vars: parse_num(name, &args[1])? }
        }
        _ => return Err(unknown()),
    };
    Ok(family)
}

/// Builds a corpus ideal by name at the given prime.
pub fn corpus_emit(name: &str, prime: u32, budget: &Budget) -> Result<Ideal> {
    parse_name(name)?.build(prime, budget)
}

fn lit(expected: Expected) -> Expectation {
    Expectation { expected, origin: Origin::Literature }
}

fn oracle(expected: Expected) -> Expectation {
    Expectation { expected, origin: Origin::Oracle }
}

fn built(expected: Expected) -> Expectation {
    Expectation { expected, origin: Origin::Construction }
}

fn entry(name: &str, family: Family, expectations: Vec<Expectation>) -> CorpusEntry {
    CorpusEntry { name: name.to_string(), family, expectations }
}

fn invariants(reg: u32, s: u32, t: u32, origin: fn(Expected) -> Expectation) -> Vec<Expectation> {
    vec![
        origin(Expected::Regularity { value: reg }),
        origin(Expected::NormalityFrom { value: s }),
        origin(Expected::GenerationDegree { value: t }),
    ]
}

/// The standard corpus.
pub fn standard_corpus() -> Vec<CorpusEntry> {
    use Expected::*;
    let mut out = Vec::new();

    let mut tc = invariants(2, 1, 2, oracle);
    tc.extend([
        oracle(Betti { i: 1, q: 2, value: 3 }),
        oracle(Betti { i: 2, q: 3, value: 2 }),
        lit(Np { ell: 2, holds: 2, fails: None }),
    ]);
    out.push(entry("twisted_cubic", Family::RationalNormalCurve { r: 3 }, tc));
    out.push(entry("rational_normal_curve(4)", Family::RationalNormalCurve { r: 4 }, invariants(2, 1, 2, oracle)));

    let mut quartic = invariants(3, 2, 3, oracle);
    quartic.extend([
        oracle(Betti { i: 1, q: 2, value: 1 }),
        oracle(Betti { i: 1, q: 3, value: 3 }),
        oracle(Betti { i: 2, q: 4, value: 4 }),
        oracle(Betti { i: 3, q: 5, value: 1 }),
        oracle(Np { ell: 1, holds: -1, fails: Some(0) }),
    ]);
    out.push(entry("rational_quartic", Family::MonomialCurve { exponents: vec![4, 3, 1, 0] }, quartic));

    for curve in ["nodal_cubic", "smooth_cubic"] {
        let mut e = invariants(3, 1, 3, built);
        // plane cubics at ℓ = 3 satisfy N_4 and N_6 but not N_7
        e.extend([lit(Np { ell: 3, holds: 6, fails: Some(7) }), lit(Np { ell: 2, holds: 1, fails: None })]);
        out.push(entry(curve, Family::PlaneCurve { curve: curve.into() }, e));
    }

    for n_vars in [3, 4] {
        for degree in 2..=4 {
            let mut e = invariants(degree, 1, degree, built);
            e.push(built(Betti { i: 1, q: degree, value: 1 }));
            if degree == 2 && n_vars == 4 {
                e.push(lit(Np { ell: 2, holds: 5, fails: None }));
            }
            out.push(entry(&format!("hypersurface({degree},{n_vars})"), Family::Hypersurface { degree, n_vars }, e));
        }
    }

    let ci = |degrees: &[u32]| Family::CompleteIntersection { degrees: degrees.to_vec(), n_vars: 4 };
    let mut ci22 = invariants(3, 1, 2, built);
    ci22.push(lit(Np { ell: 1, holds: 1, fails: None }));
    out.push(entry("complete_intersection([2,2],4)", ci(&[2, 2]), ci22));
    let mut ci23 = invariants(4, 1, 3, built);
    ci23.extend([lit(Np { ell: 1, holds: 0, fails: Some(1) }), lit(Np { ell: 2, holds: 1, fails: None })]);
    out.push(entry("complete_intersection([2,3],4)", ci(&[2, 3]), ci23));
    let mut ci33 = invariants(5, 1, 3, built);
    ci33.extend([lit(Np { ell: 1, holds: 0, fails: Some(1) }), lit(Np { ell: 2, holds: 1, fails: None })]);
    out.push(entry("complete_intersection([3,3],4)", ci(&[3, 3]), ci33));

    let mut cone = invariants(2, 1, 2, built);
    cone.push(lit(Np { ell: 2, holds: 5, fails: None }));
    out.push(entry("quadric(3,4)", Family::Quadric { rank: 3, n_vars: 4 }, cone));

    // ν_ℓ(P^r) is arithmetically Cohen-Macaulay with a-invariant
    // -⌈(r+1)/ℓ⌉, so m = r + 2 - ⌈(r+1)/ℓ⌉
    let veronese = |r: usize, ell: u32, claims: Vec<Expectation>| {
        let m = r as u32 + 2 - (r as u32 + 1).div_ceil(ell);
        let mut e = invariants(m, 1, 2, oracle);
        e.extend(claims);
        entry(&format!("veronese({r},{ell})"), Family::Veronese { r, ell }, e)
    };
    out.push(veronese(
        2,
        2,
        vec![
            oracle(Betti { i: 1, q: 2, value: 6 }),
            oracle(Betti { i: 2, q: 3, value: 8 }),
            oracle(Betti { i: 3, q: 4, value: 3 }),
            lit(Np { ell: 1, holds: 2, fails: None }),
        ],
    ));
    out.push(veronese(2, 3, vec![lit(Np { ell: 1, holds: 6, fails: Some(7) })]));
    out.push(veronese(3, 2, vec![lit(Np { ell: 1, holds: 5, fails: Some(6) })]));
    out.push(veronese(1, 4, vec![lit(Np { ell: 1, holds: 4, fails: None })]));
    out
}

/// Looks a name up in the standard corpus, falling back to the builders.
pub fn lookup(name: &str) -> Result<CorpusEntry> {
    let family = parse_name(name)?;
    Ok(standard_corpus()
        .into_iter()
        .find(|e| e.family == family)
        .unwrap_or_else(|| CorpusEntry { name: family.name(), family, expectations: Vec::new() }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn canon(i: &Ideal) -> Vec<String> {
        i.gens().iter().map(|g| g.to_canonical_string()).collect()
    }

    #[test]
    fn names_round_trip() {
        for e in standard_corpus() {
            assert_eq!(parse_name(&e.family.name()).unwrap(), e.family);
            assert_eq!(parse_name(&e.name).unwrap(), e.family, "{}", e.name);
        }
        assert!(parse_name("k3_surface(4)").is_err());
        assert!(parse_name("veronese(2)").is_err());
    }

    #[test]
    fn twisted_cubic_has_three_quadrics() {
        let i = corpus_emit("rational_normal_curve(3)", 32003, &Budget::unlimited()).unwrap();
        assert_eq!(i.gens().len(), 3);
        assert!(i.gens().iter().all(|g| g.homogeneous_degree() == Some(2)));
        assert_eq!(i.ring().var_names(), ["x0", "x1", "x2", "x3"]);
    }

    #[test]
    fn complete_intersection_coefficients() {
        let i = corpus_emit("complete_intersection([3,2],4)", 32003, &Budget::unlimited()).unwrap();
        assert_eq!(canon(&i), ["x0^2 + x1^2 + x2^2 + x3^2", "x0^3 + 2*x1^3 + 3*x2^3 + 4*x3^3"]);
        assert!(corpus_emit("complete_intersection([2,2,2,2],4)", 32003, &Budget::unlimited()).is_err());
    }

    #[test]
    fn plane_curves_and_quadrics() {
        let b = Budget::unlimited();
        assert_eq!(canon(&corpus_emit("nodal_cubic", 32003, &b).unwrap()), ["x^3 + x^2*z + 32002*y^2*z"]);
        assert_eq!(canon(&corpus_emit("quadric(3,4)", 101, &b).unwrap()), ["x0^2 + x1^2 + x2^2"]);
        assert_eq!(canon(&corpus_emit("plane_curve(x^2*y - z^3)", 32003, &b).unwrap()).len(), 1);
        assert!(corpus_emit("plane_curve(x + 1)", 32003, &b).is_err());
    }

    #[test]
    fn rational_quartic_is_the_monomial_curve() {
        let i = corpus_emit("rational_quartic", 32003, &Budget::unlimited()).unwrap();
        let mut degrees: Vec<u32> = i.gens().iter().filter_map(|g| g.homogeneous_degree()).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, [2, 3, 3, 3]);
    }
}

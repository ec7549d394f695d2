//! Reproducible checks of the classification results for small torus
//! manifolds. Each case study collects claims; a claim records what was
//! expected, what was computed and whether they agree.

use serde::Serialize;
use thiserror::Error;

use crate::cohomology::{facet_count_solutions, CohomologyError, CohomologyRing, FacetTypeCount};
use crate::complex::OrbitComplex;
use crate::equivalence::{are_equivalent, enumerate_pairs, EquivalenceError, Mode};
use crate::pair::{CharacteristicPair, PairError, SquareKind};

#[derive(Debug, Error)]
pub enum CaseStudyError {
    #[error("unknown case study {0:?}; expected one of cp3, figure1, figure2, s2xkcp2")]
    UnknownCaseStudy(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Equivalence(#[from] EquivalenceError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Pair(#[from] PairError),
}

pub type Result<T> = std::result::Result<T, CaseStudyError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseStudy {
    /// Characteristic maps over the tetrahedron.
    Cp3 { bound: i64 },
    /// The `S^2 x S^4` and `S^2 x CP^2` families for `a` in `0..=max_a`.
    Figure1 { max_a: i64 },
    /// Square pairs and their products with `S^2`, for `|p| <= max_p`.
    Figure2 { max_p: i64 },
    /// Facet census of `S^2 x kCP^2`.
    S2xKcp2 { k: usize },
}

impl CaseStudy {
    pub const NAMES: [&'static str; 4] = ["cp3", "figure1", "figure2", "s2xkcp2"];

    /// Case study by name with default parameters, `k` and `max_a`
    /// overriding them where they apply.
    pub fn parse(name: &str, k: Option<usize>, max_a: Option<i64>) -> Result<Self> {
        match name {
            "cp3" => Ok(CaseStudy::Cp3 { bound: 2 }),
            "figure1" => Ok(CaseStudy::Figure1 {
                max_a: max_a.unwrap_or(5),
            }),
            "figure2" => Ok(CaseStudy::Figure2 { max_p: 3 }),
            "s2xkcp2" => Ok(CaseStudy::S2xKcp2 { k: k.unwrap_or(2) }),
            other => Err(CaseStudyError::UnknownCaseStudy(other.into())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CaseStudy::Cp3 { .. } => "cp3",
            CaseStudy::Figure1 { .. } => "figure1",
            CaseStudy::Figure2 { .. } => "figure2",
            CaseStudy::S2xKcp2 { .. } => "s2xkcp2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub holds: bool,
}

impl Claim {
    fn new(name: impl Into<String>, expected: impl ToString, observed: impl ToString) -> Self {
        let (expected, observed) = (expected.to_string(), observed.to_string());
        Claim {
            name: name.into(),
            holds: expected == observed,
            expected,
            observed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub claims: Vec<Claim>,
}

impl CaseReport {
    pub fn holds(&self) -> bool {
        self.claims.iter().all(|c| c.holds)
    }
}

impl std::fmt::Display for CaseReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "case study {}", self.case)?;
        for c in &self.claims {
            let mark = if c.holds { "ok  " } else { "FAIL" };
            writeln!(f, "  [{mark}] {}: {}", c.name, c.observed)?;
            if !c.holds {
                writeln!(f, "         expected {}", c.expected)?;
            }
        }
        Ok(())
    }
}

pub fn run(case: CaseStudy) -> Result<CaseReport> {
    let claims = match case {
        CaseStudy::Cp3 { bound } => cp3(bound)?,
        CaseStudy::Figure1 { max_a } => figure1(max_a)?,
        CaseStudy::Figure2 { max_p } => figure2(max_p)?,
        CaseStudy::S2xKcp2 { k } => s2xkcp2(k)?,
    };
    Ok(CaseReport {
        case: case.name().into(),
        claims,
    })
}

fn cp3(bound: i64) -> Result<Vec<Claim>> {
    let reps = enumerate_pairs(&OrbitComplex::simplex(3), bound)?;
    let standard = match reps.as_slice() {
        [only] => are_equivalent(only, &CharacteristicPair::simplex(3), Mode::Weak)?.is_some(),
        _ => false,
    };
    Ok(vec![
        Claim::new(
            format!("equivalence classes over the tetrahedron (bound {bound})"),
            1,
            reps.len(),
        ),
        Claim::new("the class is the standard action on CP^3", true, standard),
    ])
}

/// Number of equivalence classes among `pairs` and the number of
/// equivalent unordered pairs of distinct members.
fn class_structure(pairs: &[CharacteristicPair]) -> Result<(usize, usize, usize)> {
    let mut reflexive = 0;
    let mut equivalent_distinct = 0;
    let mut class_of: Vec<usize> = (0..pairs.len()).collect();
    for i in 0..pairs.len() {
        for j in i..pairs.len() {
            if are_equivalent(&pairs[i], &pairs[j], Mode::Weak)?.is_some() {
                if i == j {
                    reflexive += 1;
                } else {
                    equivalent_distinct += 1;
                    class_of[j] = class_of[j].min(class_of[i]);
                }
            }
        }
    }
    let mut classes = class_of.clone();
    classes.sort_unstable();
    classes.dedup();
    Ok((classes.len(), reflexive, equivalent_distinct))
}

type Family = fn(i64) -> CharacteristicPair;

fn figure1(max_a: i64) -> Result<Vec<Claim>> {
    if max_a < 0 {
        return Err(CaseStudyError::InvalidParameter(format!(
            "max-a must be nonnegative, got {max_a}"
        )));
    }
    let count = (max_a + 1) as usize;
    let unordered = count * (count - 1) / 2;
    let mut claims = Vec::new();
    let families: [(&str, Family); 2] = [
        ("S^2 x S^4 family", CharacteristicPair::lens_family),
        ("S^2 x CP^2 family", CharacteristicPair::prism_family),
    ];
    for (label, make) in families {
        let pairs: Vec<CharacteristicPair> = (0..=max_a).map(make).collect();
        let (classes, reflexive, equivalent) = class_structure(&pairs)?;
        claims.push(Claim::new(
            format!("{label}: classes for a in 0..={max_a}"),
            count,
            classes,
        ));
        claims.push(Claim::new(
            format!("{label}: self-equivalences found"),
            count,
            reflexive,
        ));
        claims.push(Claim::new(
            format!("{label}: equivalent pairs among {unordered} with a != b"),
            0,
            equivalent,
        ));
    }
    Ok(claims)
}

fn square_family(max_p: i64) -> Vec<(String, CharacteristicPair)> {
    let mut out: Vec<(String, CharacteristicPair)> = (-max_p..=max_p)
        .map(|p| (format!("a({p})"), CharacteristicPair::square(SquareKind::A(p))))
        .collect();
    out.push(("b".into(), CharacteristicPair::square(SquareKind::B)));
    out
}

fn figure2(max_p: i64) -> Result<Vec<Claim>> {
    let family = square_family(max_p);
    let products = family
        .iter()
        .map(|(_, p)| p.product_with_s2())
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let mut mismatches = Vec::new();
    let mut compared = 0;
    for i in 0..family.len() {
        for j in i..family.len() {
            let base = are_equivalent(&family[i].1, &family[j].1, Mode::Weak)?.is_some();
            let prod = are_equivalent(&products[i], &products[j], Mode::Weak)?.is_some();
            compared += 1;
            if base != prod {
                mismatches.push(format!("{} vs {}", family[i].0, family[j].0));
            }
        }
    }
    let mut claims = vec![Claim::new(
        format!("product with S^2 preserves and reflects equivalence ({compared} pairs)"),
        "no mismatches",
        if mismatches.is_empty() {
            "no mismatches".to_string()
        } else {
            mismatches.join(", ")
        },
    )];
    let expected_opposite = |name: &str| match name {
        "b" => 1,
        "a(0)" => 3,
        _ => 2,
    };
    let expected: Vec<String> = family
        .iter()
        .map(|(name, _)| format!("{name}:{}", expected_opposite(name)))
        .collect();
    let observed: Vec<String> = family
        .iter()
        .zip(&products)
        .map(|((name, _), q)| format!("{name}:{}", q.equal_opposite_facets()))
        .collect();
    claims.push(Claim::new(
        "opposite facet pairs of the cube with equal characteristic value",
        expected.join(" "),
        observed.join(" "),
    ));
    for p in 1..=max_p {
        let plus = &family[(max_p + p) as usize].1;
        let minus = &family[(max_p - p) as usize].1;
        claims.push(Claim::new(
            format!("a({p}) and a({}) are equivalent", -p),
            true,
            are_equivalent(plus, minus, Mode::Weak)?.is_some(),
        ));
    }
    Ok(claims)
}

fn s2xkcp2(k: usize) -> Result<Vec<Claim>> {
    if k < 2 {
        return Err(CaseStudyError::InvalidParameter(format!(
            "k must be at least 2, got {k}"
        )));
    }
    let pair = CharacteristicPair::polygon_sum(k).product_with_s2()?;
    let ring = CohomologyRing::new(&pair)?;
    let m = pair.facet_count();
    let (bottom, top) = (m - 2, m - 1);
    let y = ring.generator(bottom);
    let mut claims = vec![
        Claim::new(
            "f-vector",
            format!("{:?}", [2 * k + 4, 3 * k + 6, k + 4]),
            format!("{:?}", pair.complex().f_vector()),
        ),
        Claim::new("Euler characteristic", 2 * k + 4, ring.euler_char()),
    ];
    let census = ring.facet_type_census(k)?;
    claims.push(Claim::new(
        "facet census (d4, dk2, dk3)",
        FacetTypeCount::new(k + 2, 2, 0),
        census.counts,
    ));
    for f in [bottom, top] {
        let (_, _, kernel) = ring.restriction_deg2(f)?;
        let is_y = kernel.len() == 1 && (ring.equal(&kernel[0], &y)? || ring.equal(&kernel[0], &y.scaled(-1))?);
        claims.push(Claim::new(
            format!("kernel of restriction to end facet {f} is generated by y"),
            true,
            is_y,
        ));
    }
    let side_ranks = (0..bottom)
        .map(|f| ring.restriction_deg2(f).map(|(_, _, kernel)| kernel.len()))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    claims.push(Claim::new(
        "kernel ranks of restriction to side facets",
        format!("{:?}", vec![k - 1; bottom]),
        format!("{side_ranks:?}"),
    ));
    let solutions = facet_count_solutions(k);
    let expected = match k {
        2 => (0..=6).map(|d4| FacetTypeCount::new(d4, 6 - d4, 0)).collect(),
        3 => vec![FacetTypeCount::new(5, 2, 0), FacetTypeCount::new(6, 0, 1)],
        _ => vec![FacetTypeCount::new(k + 2, 2, 0)],
    };
    let show = |s: &[FacetTypeCount]| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    claims.push(Claim::new(
        "solutions of the facet-count system",
        show(&expected),
        show(&solutions),
    ));
    Ok(claims)
}

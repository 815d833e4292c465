use super::{
    Coefficients, ExpectedStem, FamilySpec, GroupEntry, GroupSpec, Mode, ModuleSpec, PicardSpec,
    PicardTag, Scenario, ScenarioError, SeededDifferential,
};
use crate::gradedring::{RingGenerator, RingPresentation};
use crate::picard::ImportRule;
use crate::specseq::Window;

const NAMES: [&str; 4] = ["ko-endo", "pic-kgl-2adic", "pic-ko-classical", "kq-weight0"];

pub fn builtin_names() -> &'static [&'static str] {
    &NAMES
}

pub fn builtin(name: &str) -> Result<Scenario, ScenarioError> {
    match name {
        "ko-endo" => Ok(ko_endo()),
        "pic-kgl-2adic" => Ok(pic_kgl()),
        "pic-ko-classical" => Ok(pic_ko_classical()),
        "kq-weight0" => Ok(kq_weight0()),
        other => Err(ScenarioError::UnknownScenario(other.to_string())),
    }
}

/// `π_{2k} = Z_2` with conjugation acting by `(-1)^k`; zero below `t = 0`
/// when connective.
fn k_theory_family(connective: bool) -> FamilySpec {
    let entry = |t, name: &str, sign| GroupEntry {
        t,
        names: Some(vec![name.to_string()]),
        orders: vec![0],
        action: vec![vec![sign]],
        pro2: true,
    };
    FamilySpec::periodic(
        4,
        connective.then_some(0),
        vec![entry(0, "β^2", 1), entry(2, "β", -1)],
    )
}

fn ku_e2_ring() -> RingPresentation {
    RingPresentation::from_strings(
        vec![
            RingGenerator::new("h1", 2, 1, 2),
            RingGenerator::new("a", 4, 0, 0),
            RingGenerator::new("z", 0, 2, 0),
        ],
        &[("a*z", "h1^2")],
        &[],
    )
    .expect("well-formed")
}

fn d3_a(ring: &RingPresentation) -> Vec<SeededDifferential> {
    vec![SeededDifferential {
        page: 3,
        generator: "a".into(),
        target: ring.parse("h1^3").expect("well-formed"),
    }]
}

fn ko_pattern() -> Vec<ExpectedStem> {
    let free = |n| ExpectedStem::new(n, 1, &[]);
    let two = |n| ExpectedStem::new(n, 0, &[2]);
    let zero = |n| ExpectedStem::new(n, 0, &[]);
    vec![
        free(0),
        two(1),
        two(2),
        zero(3),
        free(4),
        zero(5),
        zero(6),
        zero(7),
        free(8),
    ]
}

/// `Z_2^×` modelled as `Z/2{-1} ⊕ Z_2{5}` with trivial action.
fn two_adic_units() -> ModuleSpec {
    ModuleSpec::new(&["-1", "5"], &[2, 0], &[&[1, 0], &[0, 1]], true)
}

fn ko_endo() -> Scenario {
    let ring = ku_e2_ring();
    Scenario {
        name: "ko-endo".into(),
        mode: Mode::Endomorphism,
        window: Window::default(),
        coefficients: Coefficients::Family(k_theory_family(true)),
        differentials: d3_a(&ring),
        presentation: Some(ring),
        permanent: vec!["h1".into()],
        expected_abutment: ko_pattern(),
        lower_bound: None,
    }
}

fn pic_kgl() -> Scenario {
    let ring = ku_e2_ring();
    Scenario {
        name: "pic-kgl-2adic".into(),
        mode: Mode::Picard,
        window: Window::default(),
        coefficients: Coefficients::Picard(PicardTag::Picard(PicardSpec {
            pic0: ModuleSpec::new(&["Σ"], &[0], &[&[1]], false),
            pic1: two_adic_units(),
            endo: k_theory_family(true),
            import_rule: ImportRule::default(),
        })),
        differentials: d3_a(&ring),
        presentation: Some(ring),
        permanent: vec!["h1".into()],
        expected_abutment: Vec::new(),
        lower_bound: Some(GroupSpec::new(1, &[4])),
    }
}

fn pic_ko_classical() -> Scenario {
    let ring = RingPresentation::from_strings(
        vec![
            RingGenerator::new("h1", 2, 1, 2),
            RingGenerator::new("a", 4, 0, 0),
        ],
        &[],
        &["a"],
    )
    .expect("well-formed");
    Scenario {
        name: "pic-ko-classical".into(),
        mode: Mode::Picard,
        window: Window::default(),
        coefficients: Coefficients::Picard(PicardTag::Picard(PicardSpec {
            pic0: ModuleSpec::new(&["Σ"], &[2], &[&[1]], false),
            pic1: two_adic_units(),
            endo: k_theory_family(false),
            import_rule: ImportRule::default(),
        })),
        differentials: d3_a(&ring),
        presentation: Some(ring),
        permanent: vec!["h1".into()],
        expected_abutment: Vec::new(),
        lower_bound: Some(GroupSpec::new(0, &[8])),
    }
}

fn kq_weight0() -> Scenario {
    let ring = RingPresentation::from_strings(
        vec![
            RingGenerator::new("tau", 0, 0, 0).with_weight(-1),
            RingGenerator::new("h1", 1, 0, 0).with_weight(1),
            RingGenerator::new("a", 4, 0, 0).with_weight(2),
            RingGenerator::new("b", 8, 0, 0).with_weight(4),
        ],
        &[
            ("2*h1", "0"),
            ("tau*h1^3", "0"),
            ("a^2", "4*b"),
            ("h1*a", "0"),
        ],
        &["b"],
    )
    .expect("well-formed");
    Scenario {
        name: "kq-weight0".into(),
        mode: Mode::WeightZero,
        window: Window::new(0, 8, 0),
        coefficients: Coefficients::default(),
        presentation: Some(ring),
        differentials: Vec::new(),
        permanent: Vec::new(),
        expected_abutment: ko_pattern(),
        lower_bound: None,
    }
}

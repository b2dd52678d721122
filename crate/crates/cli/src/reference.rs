//! Published reference values the verify suites compare against.

/// Rows of the initial-values table for `n = 1..=6`: `(label, sequence, values)`.
pub const TABLE1: [(&str, Row, [&str; 6]); 5] = [
    (
        "a",
        Row::Acyclic,
        ["1", "3", "25", "543", "29281", "3781503"],
    ),
    (
        "h2",
        Row::SimplexPower(2),
        ["1", "7", "289", "63487", "69711361", "367404658687"],
    ),
    (
        "h3",
        Row::SimplexPower(3),
        [
            "1",
            "15",
            "2689",
            "5140479",
            "98267258881",
            "18033699790913535",
        ],
    ),
    (
        "h4",
        Row::SimplexPower(4),
        [
            "1",
            "31",
            "23041",
            "365330431",
            "115851037900801",
            "705367139018659069951",
        ],
    ),
    (
        "b",
        Row::Bicolored,
        ["2", "8", "74", "1664", "90722", "11756288"],
    ),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Row {
    Acyclic,
    SimplexPower(u32),
    Bicolored,
}

/// Which quantity a published constant is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constant {
    Omega,
    Lambda,
    PsiNegOmega,
}

/// Published 19-decimal constants: `(k, quantity, digits)`.
pub const CONSTANTS: [(u64, Constant, &str); 11] = [
    (1, Constant::Omega, "1.4880785455997102947"),
    (1, Constant::Lambda, "1.7410611252932298403"),
    (1, Constant::PsiNegOmega, "3.1135745244678549301"),
    (3, Constant::Omega, "1.1657706116147275128"),
    (3, Constant::Lambda, "1.1928652399365987835"),
    (7, Constant::Omega, "1.0713348333900423361"),
    (7, Constant::Lambda, "1.0763509327694490247"),
    (15, Constant::Omega, "1.0333224614072573348"),
    (15, Constant::Lambda, "1.0344230890647444796"),
    (31, Constant::Omega, "1.0161277190328587378"),
    (31, Constant::Lambda, "1.0163865733813064088"),
];

/// Decimal places of the published constants.
pub const PUBLISHED_DIGITS: u32 = 19;

//! Reference comparison values at x = 10^4 .. 10^7, used to flag rows whose
//! computed value departs from the tabulated one.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PublishedRow {
    pub x: u64,
    pub pi2: u64,
    pub hl: u64,
    pub this_work: u64,
}

pub const PUBLISHED_ROWS: [PublishedRow; 4] = [
    PublishedRow { x: 10_000, pi2: 205, hl: 214, this_work: 161 },
    PublishedRow { x: 100_000, pi2: 1_224, hl: 1_249, this_work: 1_087 },
    PublishedRow { x: 1_000_000, pi2: 8_169, hl: 8_167, this_work: 11_978 },
    PublishedRow { x: 10_000_000, pi2: 58_980, hl: 58_754, this_work: 163_740 },
];

pub fn published_row(x: u64) -> Option<PublishedRow> {
    PUBLISHED_ROWS.iter().copied().find(|r| r.x == x)
}

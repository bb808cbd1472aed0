//! Published low-order coefficients of the six branches, used as regression
//! data. Each entry is (series, power, [(i, j, num, den)]) for the monomial
//! num/den * g_s^i g_l^j.
//!
//! The second G2 branch is printed with g_s^2 on z^2 in y; the term belongs
//! to z^1 (it is the image of the first branch under sigma), and is stored
//! that way here.

use crate::curve_family::CurveType;

pub type RefTerm = (char, i32, &'static [(u32, u32, i64, i64)]);

pub struct Reference {
    pub ty: CurveType,
    pub infinity: usize,
    pub terms: &'static [RefTerm],
}

const A2_1: &[RefTerm] = &[
    ('x', -2, &[(0, 0, 1, 4)]),
    ('x', 0, &[]),
    ('x', 2, &[(1, 0, 1, 5)]),
    ('x', 4, &[(0, 1, 4, 7)]),
    ('x', 6, &[(2, 0, 4, 75)]),
    ('x', 8, &[(1, 1, 48, 385)]),
    ('y', -3, &[(0, 0, -1, 4)]),
    ('y', 1, &[(1, 0, 1, 5)]),
    ('y', 3, &[(0, 1, 8, 7)]),
    ('y', 5, &[(2, 0, 4, 25)]),
    ('y', 7, &[(1, 1, 192, 385)]),
];

const B2_1: &[RefTerm] = &[
    ('x', -1, &[(0, 0, 1, 2)]),
    ('x', 1, &[(1, 0, 1, 3)]),
    ('x', 3, &[(2, 0, 1, 18), (0, 1, -4, 5)]),
    ('x', 5, &[(3, 0, 1, 27), (1, 1, -8, 35)]),
    ('y', -2, &[(0, 0, -1, 4)]),
    ('y', 0, &[(1, 0, 1, 6)]),
    ('y', 2, &[(2, 0, 1, 12), (0, 1, -6, 5)]),
    ('y', 4, &[(3, 0, 5, 54), (1, 1, -4, 7)]),
];

const B2_2: &[RefTerm] = &[
    ('x', -1, &[(0, 0, -1, 2)]),
    ('x', 1, &[(1, 0, -1, 3)]),
    ('x', 3, &[(2, 0, -1, 18), (0, 1, 4, 5)]),
    ('y', -2, &[(0, 0, 1, 4)]),
    ('y', 0, &[(1, 0, -1, 6)]),
    ('y', 2, &[(2, 0, -1, 12), (0, 1, 6, 5)]),
];

const G2_1: &[RefTerm] = &[
    ('x', -1, &[(0, 0, 1, 2)]),
    ('x', 0, &[(1, 0, 1, 2)]),
    ('x', 1, &[(2, 0, 3, 2)]),
    ('x', 2, &[(3, 0, 1, 1), (0, 1, -1, 2)]),
    ('x', 3, &[(4, 0, 3, 2), (1, 1, -6, 5)]),
    ('y', -1, &[(0, 0, -1, 2)]),
    ('y', 0, &[(1, 0, 3, 2)]),
    ('y', 1, &[(2, 0, -3, 2)]),
    ('y', 2, &[(3, 0, 3, 1), (0, 1, -3, 2)]),
    ('y', 3, &[(4, 0, -3, 2), (1, 1, 6, 5)]),
];

const G2_2: &[RefTerm] = &[
    ('x', -1, &[(0, 0, -1, 2)]),
    ('x', 0, &[(1, 0, 1, 2)]),
    ('x', 1, &[(2, 0, -3, 2)]),
    ('x', 2, &[(3, 0, 1, 1), (0, 1, -1, 2)]),
    ('y', -1, &[(0, 0, -1, 2)]),
    ('y', 0, &[(1, 0, -3, 2)]),
    ('y', 1, &[(2, 0, -3, 2)]),
    ('y', 2, &[(3, 0, -3, 1), (0, 1, 3, 2)]),
];

const G2_3: &[RefTerm] = &[
    ('x', 0, &[(1, 0, -1, 1)]),
    ('x', 1, &[]),
    ('x', 2, &[(3, 0, -2, 1), (0, 1, 1, 1)]),
    ('y', -1, &[(0, 0, 1, 1)]),
    ('y', 0, &[]),
    ('y', 1, &[(2, 0, 3, 1)]),
];

pub const REFERENCES: &[Reference] = &[
    Reference { ty: CurveType::A2, infinity: 1, terms: A2_1 },
    Reference { ty: CurveType::B2, infinity: 1, terms: B2_1 },
    Reference { ty: CurveType::B2, infinity: 2, terms: B2_2 },
    Reference { ty: CurveType::G2, infinity: 1, terms: G2_1 },
    Reference { ty: CurveType::G2, infinity: 2, terms: G2_2 },
    Reference { ty: CurveType::G2, infinity: 3, terms: G2_3 },
];

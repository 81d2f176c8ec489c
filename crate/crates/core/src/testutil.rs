//! Shared fixtures for unit tests.

use crate::model::{Instance, parse_instance};

/// n=9, t=3 with blocks <1,3,5>, <2,6,8>, <4,7,9>; optimum 2.
pub(crate) fn example1() -> Instance {
    parse_instance("9 3\n1 2 1 3 1 2 3 2 3\n").unwrap()
}

/// n=17, t=5 with blocks <1,4,10>, <5,12,14>, <11,13,17>, <2,3,8,9>,
/// <6,7,15,16> (labels 1..5 in that order); optimum 3.
pub(crate) fn example17() -> Instance {
    parse_instance("17 5\n1 4 4 1 2 5 5 4 4 1 3 2 3 2 5 5 3\n").unwrap()
}

//! Expansions in a base q in (1, 2): digit words, the coding map, the two
//! digit maps, region geometry and unique expansions.

mod base;
mod point;
mod uq;
mod word;

pub use base::Base;
pub use point::{
    in_j, in_switch, make_y, make_z, pi_rf, pi_value, reflect, region_of, t_apply, t_apply_word, y_rf, z_rf, PointSpec,
    Region, RegionTag,
};
pub use uq::{
    greedy_expansion, identify_special, in_switch_preimage_of_uq, lazy_expansion, unique_expansion, uq_membership,
    SpecialPoint,
};
pub use word::{digits_to_string, parse_digits, DigitWord, EventuallyPeriodic};

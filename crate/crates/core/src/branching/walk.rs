//! Following forced digit maps until the orbit reaches the switch region.

use std::cmp::Ordering;

use crate::error::Result;
use crate::expansions::{in_switch, t_apply, Base, DigitWord, EventuallyPeriodic, PointSpec};

/// Where a forced walk ended.
#[derive(Clone, Debug)]
pub enum SwitchOutcome {
    /// The walk entered the switch region; `word` lists the maps applied.
    Landed {
        word: DigitWord,
        point: PointSpec,
    },
    /// The orbit reached a point with a forced unique tail before any
    /// branching; `expansion` is the full (unique) expansion of the start.
    Resolved {
        word: DigitWord,
        expansion: EventuallyPeriodic,
    },
    LimitExceeded {
        word: DigitWord,
        point: PointSpec,
    },
}

/// Period of the unique tail when `x` is one of the forced cycles outside
/// the switch region: 0, 1/(q-1), or the two-cycle of (10)^inf.
fn forced_cycle(x: &PointSpec, base: &Base) -> Result<Option<Vec<u8>>> {
    if x.value.is_zero() {
        return Ok(Some(vec![0]));
    }
    if &x.value == base.top() {
        return Ok(Some(vec![1]));
    }
    if &x.value == base.pi_10() {
        return Ok(Some(vec![1, 0]));
    }
    let pi_01 = base.pi_10() * base.inv_q();
    if x.value == pi_01 {
        return Ok(Some(vec![0, 1]));
    }
    Ok(None)
}

/// Applies the only applicable map while outside the switch region.
pub fn minimal_to_switch(x: &PointSpec, base: &Base, step_limit: usize) -> Result<SwitchOutcome> {
    let mut p = x.clone();
    let mut word = Vec::new();
    loop {
        if in_switch(&p.value, base)? {
            return Ok(SwitchOutcome::Landed { word, point: p });
        }
        if let Some(period) = forced_cycle(&p, base)? {
            let expansion = EventuallyPeriodic::new(word.clone(), period)?;
            return Ok(SwitchOutcome::Resolved { word, expansion });
        }
        if word.len() >= step_limit {
            return Ok(SwitchOutcome::LimitExceeded { word, point: p });
        }
        let d = u8::from(p.value.cmp_element(base.inv_q())? != Ordering::Less);
        p = t_apply(&p, d, base)?;
        word.push(d);
    }
}

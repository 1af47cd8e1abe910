use serde::Serialize;

use super::{beta_for_mass, mass1d, perimeter1d, Interval};
use crate::density::Density;
use crate::error::{domain, Result};

/// Bookkeeping of the reduction of several disjoint intervals to one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reduction {
    pub interval: Interval,
    pub input_perimeter: f64,
    pub input_mass: f64,
    /// After cutting intervals that straddle the origin at 0.
    pub split_perimeter: f64,
    /// After concatenating the pieces on each half-line.
    pub concatenated_perimeter: f64,
    /// After sliding each half-line's interval to touch the origin.
    pub translated_perimeter: f64,
    pub final_perimeter: f64,
    /// Perimeter removed by joining the two origin-anchored halves; `2 rho(0)`
    /// when both halves carry mass.
    pub merge_reduction: Option<f64>,
}

/// One half-line in reflected coordinates, so every end is `>= 0`.
struct HalfLine {
    pieces: Vec<(f64, f64)>,
}

impl HalfLine {
    fn perimeter(&self, dens: &Density) -> f64 {
        self.pieces.iter().map(|&(l, h)| dens.at(l) + dens.at(h)).sum()
    }

    fn concatenate(&mut self, dens: &Density) -> Result<()> {
        self.pieces.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut iter = self.pieces.iter().copied();
        let Some(mut cur) = iter.next() else {
            return Ok(());
        };
        for (l, h) in iter {
            // slide [l, h] down onto cur.1, keeping its mass
            let moved = dens.primitive_abs(h) - dens.primitive_abs(l);
            let end = beta_for_mass(dens, dens.primitive_abs(cur.1) + moved)?;
            cur = (cur.0, end.max(cur.1));
        }
        self.pieces = vec![cur];
        Ok(())
    }

    fn translate_to_origin(&mut self, dens: &Density) -> Result<()> {
        if let Some(&(l, h)) = self.pieces.first() {
            let m = dens.primitive_abs(h) - dens.primitive_abs(l);
            self.pieces = vec![(0.0, beta_for_mass(dens, m)?)];
        }
        Ok(())
    }

    fn end(&self) -> Option<f64> {
        self.pieces.first().map(|&(_, h)| h)
    }
}

/// Reduces disjoint intervals to a single interval containing the origin
/// with the same mass and no larger perimeter.
pub fn reduce_intervals(dens: &Density, ivs: &[Interval]) -> Result<Interval> {
    Ok(reduce_intervals_traced(dens, ivs)?.interval)
}

/// [`reduce_intervals`] with the perimeter after every stage.
///
/// Stages: split at the origin, concatenate on each half-line, translate
/// each half-line's interval to the origin, merge the two halves.
pub fn reduce_intervals_traced(dens: &Density, ivs: &[Interval]) -> Result<Reduction> {
    if ivs.is_empty() {
        return domain("cannot reduce an empty set of intervals");
    }
    let mut sorted = ivs.to_vec();
    sorted.sort_by(|x, y| x.lo().total_cmp(&y.lo()));
    for w in sorted.windows(2) {
        if w[1].lo() < w[0].hi() {
            return domain(format!(
                "intervals overlap: [{}, {}] and [{}, {}]",
                w[0].lo(),
                w[0].hi(),
                w[1].lo(),
                w[1].hi()
            ));
        }
    }
    let input_perimeter: f64 = sorted.iter().map(|iv| perimeter1d(dens, iv)).sum();
    let input_mass: f64 = sorted.iter().map(|iv| mass1d(dens, iv)).sum();

    if sorted.len() == 1 && sorted[0].contains_origin() {
        return Ok(Reduction {
            interval: sorted[0],
            input_perimeter,
            input_mass,
            split_perimeter: input_perimeter,
            concatenated_perimeter: input_perimeter,
            translated_perimeter: input_perimeter,
            final_perimeter: input_perimeter,
            merge_reduction: None,
        });
    }

    let mut pos = HalfLine { pieces: Vec::new() };
    let mut neg = HalfLine { pieces: Vec::new() };
    for iv in &sorted {
        if iv.hi() > 0.0 {
            pos.pieces.push((iv.lo().max(0.0), iv.hi()));
        }
        if iv.lo() < 0.0 {
            neg.pieces.push((-iv.hi().min(0.0), -iv.lo()));
        }
        if iv.lo() == 0.0 && iv.hi() == 0.0 {
            pos.pieces.push((0.0, 0.0));
        }
    }
    let total = |pos: &HalfLine, neg: &HalfLine| pos.perimeter(dens) + neg.perimeter(dens);

    let split_perimeter = total(&pos, &neg);
    pos.concatenate(dens)?;
    neg.concatenate(dens)?;
    let concatenated_perimeter = total(&pos, &neg);
    pos.translate_to_origin(dens)?;
    neg.translate_to_origin(dens)?;
    let translated_perimeter = total(&pos, &neg);

    let (interval, merge_reduction) = match (neg.end(), pos.end()) {
        (Some(bn), Some(bp)) => {
            let iv = Interval::new(-bn, bp)?;
            (iv, Some(translated_perimeter - perimeter1d(dens, &iv)))
        }
        (None, Some(bp)) => (Interval::new(0.0, bp)?, None),
        (Some(bn), None) => (Interval::new(-bn, 0.0)?, None),
        (None, None) => unreachable!("non-empty input yields at least one half-line"),
    };
    Ok(Reduction {
        interval,
        input_perimeter,
        input_mass,
        split_perimeter,
        concatenated_perimeter,
        translated_perimeter,
        final_perimeter: perimeter1d(dens, &interval),
        merge_reduction,
    })
}

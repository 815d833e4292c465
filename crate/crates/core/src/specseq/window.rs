use serde::{Deserialize, Serialize};

/// Stems `stem_min..=stem_max` and filtrations `0..=filtration_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Window {
    pub stem_min: i64,
    pub stem_max: i64,
    pub filtration_max: i64,
}

impl Default for Window {
    fn default() -> Self {
        Self {
            stem_min: -4,
            stem_max: 12,
            filtration_max: 14,
        }
    }
}

impl Window {
    pub fn new(stem_min: i64, stem_max: i64, filtration_max: i64) -> Self {
        Self {
            stem_min,
            stem_max,
            filtration_max,
        }
    }

    pub fn contains(&self, s: i64, t: i64) -> bool {
        let n = t - s;
        (0..=self.filtration_max).contains(&s) && (self.stem_min..=self.stem_max).contains(&n)
    }

    /// All `(s, t)` in the window, ordered by stem then filtration.
    pub fn cells(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for n in self.stem_min..=self.stem_max {
            for s in 0..=self.filtration_max {
                out.push((s, n + s));
            }
        }
        out
    }

    /// Window large enough that pages `2..=max_page` are exact on `self`:
    /// each `d_r` moves one stem and `r` filtrations.
    pub fn padded(&self, max_page: usize) -> Window {
        let max_page = max_page.max(2) as i64;
        let stems = max_page - 2;
        let extra: i64 = (2..max_page).sum();
        Window {
            stem_min: self.stem_min - stems,
            stem_max: self.stem_max + stems,
            filtration_max: self.filtration_max + extra,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn padding_grows_with_pages() {
        let w = Window::default();
        assert_eq!(w.padded(2), w);
        assert_eq!(w.padded(4), Window::new(-6, 14, 19));
        assert!(w.contains(0, -4) && !w.contains(15, 15) && !w.contains(-1, 0));
        assert_eq!(w.cells().len(), 17 * 15);
    }
}

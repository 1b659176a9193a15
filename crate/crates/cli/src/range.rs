use std::str::FromStr;

/// Inclusive index range: `5`, `0..10` or `0..=10`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelRange {
    pub start: usize,
    pub end: usize,
}

impl LevelRange {
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        self.start..=self.end
    }
}

fn parse_index(s: &str) -> Result<usize, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("`{s}` is not a non-negative integer"))
}

fn split_range(s: &str) -> Option<(&str, &str)> {
    s.split_once("..=").or_else(|| s.split_once(".."))
}

impl FromStr for LevelRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (start, end) = match split_range(s) {
            Some((a, b)) => (parse_index(a)?, parse_index(b)?),
            None => {
                let n = parse_index(s)?;
                (n, n)
            }
        };
        if start > end {
            return Err(format!("empty range `{s}`"));
        }
        Ok(LevelRange { start, end })
    }
}

/// One end of a scan window.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Bound {
    /// Offset from the least-addition order `L`.
    Relative(i64),
    Absolute(usize),
}

fn parse_bound(s: &str) -> Result<Bound, String> {
    let s = s.trim();
    let Some(rest) = s.strip_prefix('L') else {
        return parse_index(s).map(Bound::Absolute);
    };
    let rest = rest.trim();
    if rest.is_empty() {
        return Ok(Bound::Relative(0));
    }
    let (sign, digits) = match rest.split_at(1) {
        ("+", d) => (1, d),
        ("-", d) => (-1, d),
        _ => return Err(format!("bad scan bound `{s}`")),
    };
    Ok(Bound::Relative(sign * parse_index(digits)? as i64))
}

/// Scan window: `L-2..L+2` or `11..15` (inclusive).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanSpec {
    start: Bound,
    end: Bound,
}

impl FromStr for ScanSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = split_range(s).ok_or_else(|| format!("scan `{s}` must look like L-2..L+2"))?;
        let (start, end) = (parse_bound(a)?, parse_bound(b)?);
        match (start, end) {
            (Bound::Relative(x), Bound::Relative(y)) if x <= y => {}
            (Bound::Absolute(x), Bound::Absolute(y)) if x <= y => {}
            (Bound::Relative(_), Bound::Relative(_)) | (Bound::Absolute(_), Bound::Absolute(_)) => {
                return Err(format!("empty scan `{s}`"))
            }
            _ => return Err(format!("scan `{s}` mixes relative and absolute bounds")),
        }
        Ok(ScanSpec { start, end })
    }
}

impl ScanSpec {
    /// Offsets from `center`; relative windows are taken as written,
    /// absolute ones are converted.
    pub fn offsets(&self, center: usize) -> Result<Vec<i64>, String> {
        let (a, b) = match (self.start, self.end) {
            (Bound::Relative(x), Bound::Relative(y)) => (x, y),
            (Bound::Absolute(x), Bound::Absolute(y)) => {
                (x as i64 - center as i64, y as i64 - center as i64)
            }
            _ => unreachable!("validated when parsed"),
        };
        if center as i64 + a < 0 {
            return Err(format!("scan reaches below order 0 (L = {center})"));
        }
        Ok((a..=b).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(
            "5".parse::<LevelRange>().unwrap(),
            LevelRange { start: 5, end: 5 }
        );
        assert_eq!(
            "0..10".parse::<LevelRange>().unwrap(),
            LevelRange { start: 0, end: 10 }
        );
        assert_eq!("2..=4".parse::<LevelRange>().unwrap().iter().count(), 3);
        assert!("4..2".parse::<LevelRange>().is_err());
        assert!("x".parse::<LevelRange>().is_err());
    }

    #[test]
    fn scans() {
        let s: ScanSpec = "L-2..L+2".parse().unwrap();
        assert_eq!(s.offsets(13).unwrap(), vec![-2, -1, 0, 1, 2]);
        let a: ScanSpec = "11..15".parse().unwrap();
        assert_eq!(a.offsets(13).unwrap(), vec![-2, -1, 0, 1, 2]);
        assert_eq!(
            "L..L+1".parse::<ScanSpec>().unwrap().offsets(3).unwrap(),
            vec![0, 1]
        );
        assert!("L-5..L".parse::<ScanSpec>().unwrap().offsets(3).is_err());
        assert!("L-2..15".parse::<ScanSpec>().is_err());
        assert!("L+2..L-2".parse::<ScanSpec>().is_err());
        assert!("L*2..L".parse::<ScanSpec>().is_err());
    }
}

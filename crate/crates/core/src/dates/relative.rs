use chrono::{Datelike, Days, NaiveDate};
use thiserror::Error;

use super::NormalizedDate;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error("{0} is not a relative date")]
    NotRelative(NormalizedDate),
    #[error("{0} moves outside the supported calendar range")]
    OutOfRange(NormalizedDate),
}

/// Anchor a relative expression to `reference`.
///
/// * a day offset gives a full date;
/// * "next June" is the first June strictly after the reference month,
///   "last June" the last one strictly before, "mid-June" the one in the
///   reference year;
/// * "June last year" is June of the reference year plus the offset.
pub fn resolve_relative(date: &NormalizedDate, reference: NaiveDate) -> Result<NormalizedDate, ResolveError> {
    let out_of_range = || ResolveError::OutOfRange(*date);
    match *date {
        NormalizedDate::RelativeDay { offset } => {
            let days = Days::new(offset.unsigned_abs());
            let d = if offset >= 0 {
                reference.checked_add_days(days)
            } else {
                reference.checked_sub_days(days)
            };
            d.map(NormalizedDate::from).ok_or_else(out_of_range)
        }
        NormalizedDate::RelativeMonth { month, offset } => {
            let (y, m) = (reference.year(), reference.month());
            let year = match offset.signum() {
                1 if month > m => y,
                1 => y + 1,
                -1 if month < m => y,
                -1 => y - 1,
                _ => y,
            };
            Ok(NormalizedDate::YearMonth { year, month })
        }
        NormalizedDate::MonthRelativeYear { month, offset } => {
            let year = reference.year().checked_add(offset).ok_or_else(out_of_range)?;
            Ok(NormalizedDate::YearMonth { year, month })
        }
        _ => Err(ResolveError::NotRelative(*date)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ymd(y: i32, m: u32, d: u32) -> NaiveDate {
        NaiveDate::from_ymd_opt(y, m, d).unwrap()
    }

    #[test]
    fn days() {
        let r = ymd(2004, 3, 1);
        assert_eq!(
            resolve_relative(&NormalizedDate::RelativeDay { offset: -1 }, r),
            Ok(NormalizedDate::Full {
                year: 2004,
                month: 2,
                day: 29
            })
        );
        assert_eq!(
            resolve_relative(&NormalizedDate::RelativeDay { offset: 0 }, r),
            Ok(r.into())
        );
    }

    #[test]
    fn months() {
        let r = ymd(2003, 6, 15);
        let rm = |month, offset| resolve_relative(&NormalizedDate::RelativeMonth { month, offset }, r).unwrap();
        assert_eq!(rm(6, 1), NormalizedDate::YearMonth { year: 2004, month: 6 });
        assert_eq!(rm(7, 1), NormalizedDate::YearMonth { year: 2003, month: 7 });
        assert_eq!(rm(6, -1), NormalizedDate::YearMonth { year: 2002, month: 6 });
        assert_eq!(rm(1, -1), NormalizedDate::YearMonth { year: 2003, month: 1 });
        assert_eq!(rm(8, 0), NormalizedDate::YearMonth { year: 2003, month: 8 });
    }

    #[test]
    fn relative_year() {
        let r = ymd(2003, 6, 15);
        assert_eq!(
            resolve_relative(&NormalizedDate::MonthRelativeYear { month: 2, offset: -1 }, r),
            Ok(NormalizedDate::YearMonth { year: 2002, month: 2 })
        );
    }

    #[test]
    fn absolute_kinds_refused() {
        let d = NormalizedDate::YearMonth { year: 2003, month: 1 };
        assert_eq!(resolve_relative(&d, ymd(2003, 1, 1)), Err(ResolveError::NotRelative(d)));
    }

    #[test]
    fn overflow_is_an_error() {
        let d = NormalizedDate::RelativeDay { offset: i64::MAX };
        assert!(matches!(
            resolve_relative(&d, ymd(2003, 1, 1)),
            Err(ResolveError::OutOfRange(_))
        ));
    }
}

//! Fringe phases from screen profiles and linear fits over flux scans.

mod profile;
mod scan;
mod shift;

pub use profile::ScreenProfile;
pub use scan::{phase_linearity_scan, LinearityFit, ScanPoint};
pub use shift::{fringe_period, fringe_shift, PeriodEstimate, MIN_CONTRAST, MIN_PEAK_RATIO};

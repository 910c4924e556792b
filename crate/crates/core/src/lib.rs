//! Pythagorean tunings, generalized major/minor chord systems and the graph
//! theory of their Tonnetze.

pub mod circulant;
pub mod graphlab;
pub mod harmony;
pub mod precise;
pub mod rational;
pub mod report;
pub mod tonnetz;
pub mod tuning;

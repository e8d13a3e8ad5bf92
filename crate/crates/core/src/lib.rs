//! Exact cycle statistics for permutations, derangements and a-derangements.
//!
//! * [`census`]: count tables `c(n,k)`, `d_a(n,k)`, `m_a(i,b)` and closed forms.
//! * [`genfunc`]: the row generating polynomials and their evaluations.
//! * [`rootloc`]: Sturm-chain root counting and certified root intervals.
//! * [`balance`]: residue classes of the cycle count modulo `q`.
//! * [`oracle`]: brute-force enumeration for small lengths.
//! * [`verify`]: runnable property suites over all of the above.

pub mod balance;
pub mod census;
pub mod error;
pub mod genfunc;
pub mod oracle;
pub mod poly;
pub mod rootloc;
pub mod verify;

pub use balance::{
    decay_series, good_root_bound, magnitude_product, residue_sums, unity_filter_check,
    DecaySeries, FilterCheck, GoodRootBound, ResidueReport,
};
pub use census::{
    census_table, cycle_type_count, derangement_count, inclusion_exclusion_count,
    leading_coefficient, small_cycle_table, CensusTable, CycleType, Limits, SmallCycleTable,
};
pub use error::{CensusError, Result};
pub use genfunc::{
    build_polynomial, eval_exact, eval_negative_simplified, eval_unit_circle,
    finite_difference_profile, CyclePolynomial, DifferenceReport, UnitPoint,
};
pub use oracle::{brute_force_census, brute_force_small_cycle, OracleRow};
pub use rootloc::{
    count_roots_in, isolate_root_near, isolate_root_near_with, pigeonhole_bound, threshold_scan,
    RootWitness, ScanResult, SturmChain,
};

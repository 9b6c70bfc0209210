//! The decision procedure for `E(Q^ab)_tors`.
//!
//! The cyclic isogeny degrees `I` settle most curves outright. Three shapes
//! of `I` need field computations: odd `N` (is `Q(E[2])` abelian?),
//! `I_2 = [1,2,4,4]` (order-8 points, full 4-torsion) and `I_2 = [1,2]`
//! (order-4 points). Every decision is recorded in an [`AlgorithmTrace`]
//! that [`replay`] can re-run without touching the curve.

use serde::Serialize;

use crate::curve::RationalCurve;
use crate::error::{Error, Result};
use crate::galois::{
    cubic_class, exists_abelian_point_of_order, full_level_abelian_capped, FULL_LEVEL_CAP, order4_over_qab_quick, CubicClass, Order4Quick,
    PointSearch, ORDER4_CAP, ORDER8_CAP,
};
use crate::group::TorsionGroup;
use crate::isogeny::{cyclic_degrees_of, CyclicDegrees};

/// `N` values whose isogeny forces `T = Z/N`.
pub const CYCLIC_N: [u64; 12] = [11, 13, 15, 17, 19, 21, 25, 27, 37, 43, 67, 163];
/// `N` values whose isogeny forces `T = Z/2 x Z/N`.
pub const TWO_BY_N: [u64; 4] = [10, 14, 16, 18];
/// Odd `N` where the 2-division field decides between `Z/N` and `Z/2 x Z/2N`.
pub const ODD_N: [u64; 5] = [1, 3, 5, 7, 9];

/// Degree patterns that fix `T` (or its 2-part) with no field computation.
pub const EXACT_PATTERNS: [(&[u64], TorsionGroup, Branch); 11] = [
    (&[1, 5, 5], TorsionGroup { m: 5, k: 5 }, Branch::FiveByFive),
    (&[1, 3, 3, 9], TorsionGroup { m: 3, k: 9 }, Branch::ThreeByNine),
    (&[1, 3, 3], TorsionGroup { m: 3, k: 3 }, Branch::ThreeByThree),
    (&[1, 2, 3, 3, 6, 6], TorsionGroup { m: 6, k: 6 }, Branch::SixBySix),
    (&[1, 2, 2, 2, 4, 4, 4, 4], TorsionGroup { m: 8, k: 8 }, Branch::TwoPowerPattern),
    (&[1, 2, 2, 2, 4, 4, 8, 8], TorsionGroup { m: 4, k: 16 }, Branch::TwoPowerPattern),
    (&[1, 2, 4, 4, 8, 8, 8, 8], TorsionGroup { m: 4, k: 8 }, Branch::TwoPowerPattern),
    (&[1, 2, 2, 2, 4, 4], TorsionGroup { m: 4, k: 8 }, Branch::TwoPowerPattern),
    (&[1, 2, 4, 4, 8, 8], TorsionGroup { m: 2, k: 8 }, Branch::TwoPowerPattern),
    (&[1, 2, 2, 2, 3, 6, 6, 6], TorsionGroup { m: 4, k: 12 }, Branch::FourByTwelve),
    (&[1, 2, 2, 2], TorsionGroup { m: 4, k: 4 }, Branch::FourByFour),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// N in {11, 13, 15, 17, 19, 21, 25, 27, 37, 43, 67, 163}: T = Z/N.
    CyclicN,
    /// N in {10, 14, 16, 18}: T = Z/2 x Z/N.
    TwoByN,
    /// I = [1,5,5]: T = Z/5 x Z/5.
    FiveByFive,
    /// I = [1,3,3,9]: T = Z/3 x Z/9.
    ThreeByNine,
    /// I = [1,3,3]: T = Z/3 x Z/3.
    ThreeByThree,
    /// I = [1,2,3,3,6,6]: T = Z/6 x Z/6.
    SixBySix,
    /// One of the 2-power patterns that fix T.
    TwoPowerPattern,
    /// I = [1,2,2,2,3,6,6,6]: T = Z/4 x Z/12.
    FourByTwelve,
    /// I = [1,2,2,2]: T = Z/4 x Z/4.
    FourByFour,
    /// N in {1, 3, 5, 7, 9}: Z/N, or Z/2 x Z/2N when Q(E[2]) is abelian.
    OddN,
    /// I_2 = [1,2,4,4]: T_2 is Z/2 x Z/4, Z/2 x Z/8 or Z/4 x Z/4.
    TwoFourFour,
    /// I_2 = [1,2]: T_2 is Z/2 x Z/2 or Z/2 x Z/4.
    TwoTwo,
}

impl Branch {
    pub fn statement(self) -> &'static str {
        match self {
            Branch::CyclicN => "N in {11,13,15,17,19,21,25,27,37,43,67,163} => T = Z/N",
            Branch::TwoByN => "N in {10,14,16,18} => T = Z/2 x Z/N",
            Branch::FiveByFive => "I = [1,5,5] => T = Z/5 x Z/5",
            Branch::ThreeByNine => "I = [1,3,3,9] => T = Z/3 x Z/9",
            Branch::ThreeByThree => "I = [1,3,3] => T = Z/3 x Z/3",
            Branch::SixBySix => "I = [1,2,3,3,6,6] => T = Z/6 x Z/6",
            Branch::TwoPowerPattern => "I is a 2-power pattern that fixes T",
            Branch::FourByTwelve => "I = [1,2,2,2,3,6,6,6] => T = Z/4 x Z/12",
            Branch::FourByFour => "I = [1,2,2,2] => T = Z/4 x Z/4",
            Branch::OddN => "N in {1,3,5,7,9} => T = Z/N, or Z/2 x Z/2N if Q(E[2]) is abelian",
            Branch::TwoFourFour => "I_2 = [1,2,4,4] => order-8 point and Q(E[4]) decide T_2",
            Branch::TwoTwo => "I_2 = [1,2] => an order-4 point decides T_2",
        }
    }
}

/// Field computations behind a decision.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    TwoDivisionCubic { cubic: String, class: CubicClass },
    OrderEightPoint { search: PointSearch },
    FullFourTorsion { abelian: bool },
    OrderFourPoint { quick: Order4Quick, search: PointSearch },
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub branch: Branch,
    pub statement: &'static str,
    pub evidence: Vec<Evidence>,
    /// The 2-part settled by this step, when the step only settles `T_2`.
    pub two_part: Option<TorsionGroup>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgorithmTrace {
    /// The cyclic isogeny degrees `I`.
    pub degrees: Vec<u64>,
    pub n: u64,
    pub two_part_degrees: Vec<u64>,
    pub steps: Vec<TraceStep>,
    pub result: TorsionGroup,
}

/// Answers to the field questions the branches may ask.
trait Oracle {
    fn two_division(&mut self) -> Result<CubicClass>;
    fn order_eight(&mut self) -> Result<bool>;
    fn full_four(&mut self) -> Result<bool>;
    fn order_four(&mut self) -> Result<bool>;
}

/// Computes the answers on the curve and records them.
struct Live<'a> {
    e: &'a RationalCurve,
    caps: Caps,
    evidence: Vec<Evidence>,
}

impl Oracle for Live<'_> {
    fn two_division(&mut self) -> Result<CubicClass> {
        let cubic = self.e.two_division_poly();
        let class = cubic_class(&cubic)?;
        self.evidence.push(Evidence::TwoDivisionCubic { cubic: cubic.to_string(), class });
        Ok(class)
    }

    fn order_eight(&mut self) -> Result<bool> {
        let search = exists_abelian_point_of_order(self.e, 8, self.caps.order8)?;
        let found = search.found;
        self.evidence.push(Evidence::OrderEightPoint { search });
        Ok(found)
    }

    fn full_four(&mut self) -> Result<bool> {
        let abelian = full_level_abelian_capped(self.e, 4, self.caps.full_level)?;
        self.evidence.push(Evidence::FullFourTorsion { abelian });
        Ok(abelian)
    }

    fn order_four(&mut self) -> Result<bool> {
        let quick = order4_over_qab_quick(&self.e.two_torsion_model()?);
        let search = exists_abelian_point_of_order(self.e, 4, self.caps.order4)?;
        // The square criteria and the field search are separate routes to
        // the same answer.
        let agree = match quick {
            Order4Quick::YesNotFull => search.found,
            Order4Quick::No => !search.found,
            Order4Quick::NeedsFullCheck => true,
        };
        if !agree {
            return Err(Error::InvariantBreach(format!(
                "order-4 quick filter says {quick:?} but the field search found={}",
                search.found
            )));
        }
        let found = search.found;
        self.evidence.push(Evidence::OrderFourPoint { quick, search });
        Ok(found)
    }
}

/// Reads the answers back from a recorded step.
struct Recorded<'a> {
    evidence: &'a [Evidence],
}

impl Recorded<'_> {
    fn missing(what: &str) -> Error {
        Error::InvariantBreach(format!("trace has no recorded {what}"))
    }
}

impl Oracle for Recorded<'_> {
    fn two_division(&mut self) -> Result<CubicClass> {
        self.evidence
            .iter()
            .find_map(|e| match e {
                Evidence::TwoDivisionCubic { class, .. } => Some(*class),
                _ => None,
            })
            .ok_or_else(|| Self::missing("2-division cubic"))
    }

    fn order_eight(&mut self) -> Result<bool> {
        self.evidence
            .iter()
            .find_map(|e| match e {
                Evidence::OrderEightPoint { search } if search.order == 8 => Some(search.found),
                _ => None,
            })
            .ok_or_else(|| Self::missing("order-8 search"))
    }

    fn full_four(&mut self) -> Result<bool> {
        self.evidence
            .iter()
            .find_map(|e| match e {
                Evidence::FullFourTorsion { abelian } => Some(*abelian),
                _ => None,
            })
            .ok_or_else(|| Self::missing("full 4-torsion test"))
    }

    fn order_four(&mut self) -> Result<bool> {
        self.evidence
            .iter()
            .find_map(|e| match e {
                Evidence::OrderFourPoint { search, .. } if search.order == 4 => Some(search.found),
                _ => None,
            })
            .ok_or_else(|| Self::missing("order-4 search"))
    }
}

/// The odd part of `T` in the ambiguous 2-power cases: only whether 3 or 5
/// is a degree matters.
fn odd_part(degrees: &CyclicDegrees, allow_five: bool) -> TorsionGroup {
    if degrees.contains(3) {
        TorsionGroup::cyclic(3)
    } else if allow_five && degrees.contains(5) {
        TorsionGroup::cyclic(5)
    } else {
        TorsionGroup::trivial()
    }
}

/// Branch selection. Returns the branch, the group, and the 2-part if the
/// branch settles only that.
fn decide(degrees: &CyclicDegrees, oracle: &mut dyn Oracle) -> Result<(Branch, TorsionGroup, Option<TorsionGroup>)> {
    let n = degrees.max();
    let n32 = u32::try_from(n).map_err(|_| Error::InvariantBreach(format!("isogeny degree {n}")))?;
    if CYCLIC_N.contains(&n) {
        return Ok((Branch::CyclicN, TorsionGroup::cyclic(n32), None));
    }
    if TWO_BY_N.contains(&n) {
        return Ok((Branch::TwoByN, TorsionGroup::new(2, n32), None));
    }
    for (pattern, group, branch) in EXACT_PATTERNS {
        if degrees.degrees == pattern {
            let two = matches!(branch, Branch::FourByTwelve | Branch::FourByFour).then(|| group.p_part(2));
            return Ok((branch, group, two));
        }
    }
    if ODD_N.contains(&n) {
        let class = oracle.two_division()?;
        let group = if class.is_abelian() { TorsionGroup::new(2, 2 * n32) } else { TorsionGroup::cyclic(n32) };
        return Ok((Branch::OddN, group, None));
    }
    let two_part = degrees.two_part();
    if two_part == [1, 2, 4, 4] {
        let t2 = if oracle.order_eight()? {
            TorsionGroup::new(2, 8)
        } else if oracle.full_four()? {
            TorsionGroup::new(4, 4)
        } else {
            TorsionGroup::new(2, 4)
        };
        // An order-8 point fixes T outright; the other cases take 3 from I.
        let group = if t2 == TorsionGroup::new(2, 8) { t2 } else { t2.product(&odd_part(degrees, false)) };
        return Ok((Branch::TwoFourFour, group, Some(t2)));
    }
    if two_part == [1, 2] {
        let t2 = if oracle.order_four()? { TorsionGroup::new(2, 4) } else { TorsionGroup::new(2, 2) };
        let allow_five = t2 == TorsionGroup::new(2, 2);
        return Ok((Branch::TwoTwo, t2.product(&odd_part(degrees, allow_five)), Some(t2)));
    }
    Err(Error::InvariantBreach(format!("isogeny degrees {:?} match no case of the algorithm", degrees.degrees)))
}

/// `E(Q^ab)_tors` with its trace. Fails on an undecided field test or on any
/// invariant breach; a group outside the classification is never returned.
pub fn torsion_over_qab(e: &RationalCurve) -> Result<(TorsionGroup, AlgorithmTrace)> {
    torsion_over_qab_with_caps(e, Caps::default())
}

/// Caps on the degree of the fields the branches test for abelianness.
/// A field above its cap makes the answer undecided rather than wrong.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub order4: usize,
    pub order8: usize,
    pub full_level: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { order4: ORDER4_CAP, order8: ORDER8_CAP, full_level: FULL_LEVEL_CAP }
    }
}

impl Caps {
    /// The same cap for every test.
    pub fn uniform(cap: usize) -> Self {
        Caps { order4: cap, order8: cap, full_level: cap }
    }
}

pub fn torsion_over_qab_with_caps(e: &RationalCurve, caps: Caps) -> Result<(TorsionGroup, AlgorithmTrace)> {
    let (_, degrees) = cyclic_degrees_of(e)?;
    torsion_from_degrees_with_caps(e, &degrees, caps)
}

/// As [`torsion_over_qab`] with the isogeny degrees already known.
pub fn torsion_from_degrees(e: &RationalCurve, degrees: &CyclicDegrees) -> Result<(TorsionGroup, AlgorithmTrace)> {
    torsion_from_degrees_with_caps(e, degrees, Caps::default())
}

pub fn torsion_from_degrees_with_caps(e: &RationalCurve, degrees: &CyclicDegrees, caps: Caps) -> Result<(TorsionGroup, AlgorithmTrace)> {
    let mut live = Live { e, caps, evidence: Vec::new() };
    let (branch, group, two_part) = decide(degrees, &mut live)?;
    let trace = AlgorithmTrace {
        degrees: degrees.degrees.clone(),
        n: degrees.max(),
        two_part_degrees: degrees.two_part(),
        steps: vec![TraceStep { branch, statement: branch.statement(), evidence: live.evidence, two_part }],
        result: group,
    };
    if !classification_gate(&group) {
        return Err(Error::InvariantBreach(format!("{group} is not an admissible torsion group")));
    }
    let report = bounds_check(e, &group, degrees);
    if !report.passed() {
        return Err(Error::InvariantBreach(report.violations.join("; ")));
    }
    Ok((group, trace))
}

/// Re-runs the branch conditions against the recorded degrees and evidence.
pub fn replay(trace: &AlgorithmTrace) -> Result<TorsionGroup> {
    let degrees = CyclicDegrees::new(trace.degrees.clone());
    let [step] = trace.steps.as_slice() else {
        return Err(Error::InvariantBreach(format!("trace has {} steps, expected one", trace.steps.len())));
    };
    let mut recorded = Recorded { evidence: &step.evidence };
    let (branch, group, two_part) = decide(&degrees, &mut recorded)?;
    if branch != step.branch || two_part != step.two_part || group != trace.result {
        return Err(Error::InvariantBreach(format!(
            "replay took {branch:?} to {group}, trace records {:?} to {}",
            step.branch, trace.result
        )));
    }
    Ok(group)
}

/// The groups that occur as `E(Q^ab)_tors`.
pub fn admissible_groups() -> Vec<TorsionGroup> {
    let mut out: Vec<TorsionGroup> =
        [1, 3, 5, 7, 9, 11, 13, 15, 17, 19, 21, 25, 27, 37, 43, 67, 163].map(TorsionGroup::cyclic).to_vec();
    out.extend((1..=9).map(|n| TorsionGroup::new(2, 2 * n)));
    out.extend([1, 3].map(|n| TorsionGroup::new(3, 3 * n)));
    out.extend((1..=4).map(|n| TorsionGroup::new(4, 4 * n)));
    out.extend([TorsionGroup::new(5, 5), TorsionGroup::new(6, 6), TorsionGroup::new(8, 8)]);
    out
}

pub fn classification_gate(t: &TorsionGroup) -> bool {
    admissible_groups().contains(t)
}

/// The 2-primary rows: `(T_2, I_2)` pairs that occur.
pub const TWO_PRIMARY_ROWS: [(TorsionGroup, &[u64]); 14] = [
    (TorsionGroup { m: 1, k: 1 }, &[1]),
    (TorsionGroup { m: 2, k: 2 }, &[1]),
    (TorsionGroup { m: 2, k: 2 }, &[1, 2]),
    (TorsionGroup { m: 2, k: 4 }, &[1, 2]),
    (TorsionGroup { m: 2, k: 4 }, &[1, 2, 4, 4]),
    (TorsionGroup { m: 2, k: 8 }, &[1, 2, 4, 4]),
    (TorsionGroup { m: 2, k: 8 }, &[1, 2, 4, 4, 8, 8]),
    (TorsionGroup { m: 4, k: 4 }, &[1, 2, 2, 2]),
    (TorsionGroup { m: 4, k: 4 }, &[1, 2, 4, 4]),
    (TorsionGroup { m: 2, k: 16 }, &[1, 2, 4, 4, 8, 8, 16, 16]),
    (TorsionGroup { m: 4, k: 8 }, &[1, 2, 2, 2, 4, 4]),
    (TorsionGroup { m: 4, k: 8 }, &[1, 2, 4, 4, 8, 8, 8, 8]),
    (TorsionGroup { m: 4, k: 16 }, &[1, 2, 2, 2, 4, 4, 8, 8]),
    (TorsionGroup { m: 8, k: 8 }, &[1, 2, 2, 2, 4, 4, 4, 4]),
];

#[derive(Clone, Debug, Default, Serialize)]
pub struct BoundsReport {
    pub violations: Vec<String>,
}

impl BoundsReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Largest group the `p`-part may embed in.
pub fn p_part_bound(p: u32) -> Vec<TorsionGroup> {
    match p {
        2 => vec![TorsionGroup::new(4, 16), TorsionGroup::new(8, 8)],
        3 => vec![TorsionGroup::new(3, 27)],
        5 => vec![TorsionGroup::new(5, 25)],
        7 | 11 | 13 | 17 | 19 | 37 | 43 | 67 | 163 => vec![TorsionGroup::cyclic(p)],
        _ => vec![TorsionGroup::trivial()],
    }
}

/// Checks `T` against the per-prime bounds, the size bound, the 2-primary
/// table and the rational torsion of `E`.
pub fn bounds_check(e: &RationalCurve, t: &TorsionGroup, degrees: &CyclicDegrees) -> BoundsReport {
    let mut report = bounds_check_degrees(t, &degrees.degrees);
    let (rational, _) = e.rational_torsion();
    if !rational.embeds_in(t) {
        report.violations.push(format!("E(Q)_tors = {rational} does not embed in {t}"));
    }
    report
}

/// The curve-free part of [`bounds_check`].
pub fn bounds_check_degrees(t: &TorsionGroup, degrees: &[u64]) -> BoundsReport {
    let mut violations = Vec::new();
    let mut rest = t.order();
    let mut p = 2;
    while rest > 1 {
        if rest.is_multiple_of(p) {
            let part = t.p_part(p);
            if !p_part_bound(p).iter().any(|b| part.embeds_in(b)) {
                violations.push(format!("{p}-part {part} exceeds its bound"));
            }
            while rest.is_multiple_of(p) {
                rest /= p;
            }
        }
        p += 1;
    }
    if t.order() > 163 {
        violations.push(format!("|T| = {} exceeds 163", t.order()));
    }
    let i2 = CyclicDegrees::new(degrees.to_vec()).two_part();
    let t2 = t.p_part(2);
    if !TWO_PRIMARY_ROWS.iter().any(|(g, row)| *g == t2 && *row == i2.as_slice()) {
        violations.push(format!("2-part {t2} with 2-power degrees {i2:?} is not a row of the 2-primary table"));
    }
    BoundsReport { violations }
}

/// `T(E) = T(E_d)` for the quadratic twist by `d`.
pub fn twist_invariance_check(e: &RationalCurve, d: i64) -> Result<bool> {
    let (t, _) = torsion_over_qab(e)?;
    let twisted = e.quadratic_twist(&d.into())?;
    let (td, _) = torsion_over_qab(&twisted)?;
    Ok(t == td)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gate_lists_each_group_once() {
        let groups = admissible_groups();
        assert_eq!(groups.len(), 35);
        let cyclic = groups.iter().filter(|g| g.is_cyclic()).count();
        assert_eq!(cyclic, 17);
        let mut sorted = groups.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), groups.len());
        assert!(groups.iter().all(|g| g.order() <= 163));
    }

    #[test]
    fn gate_examples() {
        assert!(classification_gate(&TorsionGroup::cyclic(163)));
        assert!(!classification_gate(&TorsionGroup::new(2, 26)));
        assert!(!classification_gate(&TorsionGroup::cyclic(2)));
    }

    #[test]
    fn bounds_examples() {
        assert!(bounds_check_degrees(&TorsionGroup::new(8, 8), &[1, 2, 2, 2, 4, 4, 4, 4]).passed());
        assert!(!bounds_check_degrees(&TorsionGroup::new(2, 16), &[1, 2]).passed());
        assert!(bounds_check_degrees(&TorsionGroup::trivial(), &[1]).passed());
        assert!(!bounds_check_degrees(&TorsionGroup::cyclic(23), &[1]).passed());
        assert!(!bounds_check_degrees(&TorsionGroup::new(3, 81), &[1]).passed());
    }

    #[test]
    fn patterns_are_exclusive() {
        for (i, (a, ..)) in EXACT_PATTERNS.iter().enumerate() {
            for (b, ..) in &EXACT_PATTERNS[i + 1..] {
                assert_ne!(a, b);
            }
            let max = *a.last().unwrap();
            assert!(!CYCLIC_N.contains(&max) && !TWO_BY_N.contains(&max));
        }
    }
}

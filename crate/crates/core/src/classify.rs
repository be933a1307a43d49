//! Local Sidorenko classification of oriented paths and cycles from their
//! signed counts.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pattern::{Orientation, OrientedCycle};
use crate::signed::{cycle_counts, path_counts, SignedCounts};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    #[serde(rename = "LTS")]
    Lts,
    #[serde(rename = "LTAS")]
    Ltas,
    Neither,
    Impartial,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Lts => "LTS",
            Verdict::Ltas => "LTAS",
            Verdict::Neither => "Neither",
            Verdict::Impartial => "Impartial",
            Verdict::Unknown => "Unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub input: String,
    pub v: usize,
    pub e: usize,
    pub counts: SignedCounts,
    pub verdict: Verdict,
    pub rule: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flips: Option<usize>,
    pub preconditions_met: bool,
}

/// Outcome of the `C(P5)` / `C(2P3)` / min-`k` cascade before any parity gate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Cascade {
    Lts,
    Ltas,
    Neither,
}

fn cascade(c: &SignedCounts) -> Cascade {
    let (p5, two) = (c.c_p5, c.c_2p3);
    let tail = |positive: bool| match (c.min_k, c.c_min_k) {
        (Some(k), Some(ck)) => {
            let s = if k % 2 == 0 { ck } else { -ck };
            if positive {
                s > 0
            } else {
                s < 0
            }
        }
        _ => true,
    };
    let lts = (p5 > 0 && p5 > -two) || (p5 == 0 && two > 0 && tail(true));
    let ltas = (p5 < 0 && p5 < -two) || (p5 == 0 && two < 0 && tail(false));
    if lts {
        Cascade::Lts
    } else if ltas {
        Cascade::Ltas
    } else {
        Cascade::Neither
    }
}

fn case_tag(c: &SignedCounts, outcome: Cascade) -> String {
    let case = match outcome {
        Cascade::Lts => "i",
        Cascade::Ltas => "ii",
        Cascade::Neither => "iii",
    };
    if c.c_p5 != 0 {
        format!("P5-2P3:case({case})")
    } else {
        format!("2P3:case({case})")
    }
}

/// Classifies an oriented path. Paths on `v ≡ 0 (mod 4)` vertices are
/// outside the characterisation; with `best_effort` the cascade still runs
/// and degenerate cases come back `Unknown`.
pub fn classify_path(o: &Orientation, best_effort: bool) -> Result<Classification> {
    let e = o.edges();
    let v = o.vertices();
    let counts = path_counts(o);
    let preconditions_met = v % 4 != 0;
    let make = |verdict, rule: &str, counts: SignedCounts| Classification {
        input: o.to_string(),
        v,
        e,
        counts,
        verdict,
        rule: rule.to_string(),
        flips: None,
        preconditions_met,
    };
    if e == 1 {
        return Ok(make(Verdict::Impartial, "single-arc", counts));
    }
    if !preconditions_met && !best_effort {
        return Err(Error::PreconditionViolated(format!("path on {v} vertices, v = 0 mod 4")));
    }
    if counts.c_p3 > 0 {
        return Ok(make(Verdict::Ltas, "wedges:C(P3)>0", counts));
    }
    if counts.c_p3 < 0 {
        return Ok(make(Verdict::Lts, "wedges:C(P3)<0", counts));
    }
    if counts.c_p5 == -counts.c_2p3 {
        if v % 4 == 2 {
            return Err(Error::InternalAssertionFailed(format!(
                "C(P5) = -C(2P3) = {} on {v} vertices",
                counts.c_p5
            )));
        }
        return Ok(make(Verdict::Unknown, "P5=-2P3:degenerate", counts));
    }
    let outcome = cascade(&counts);
    let verdict = match outcome {
        Cascade::Lts => Verdict::Lts,
        Cascade::Ltas => Verdict::Ltas,
        Cascade::Neither => Verdict::Neither,
    };
    let rule = case_tag(&counts, outcome);
    Ok(make(verdict, &rule, counts))
}

/// Whether the cycle term `(−1)^t t_{C_ℓ}(B)` can only help an LTS claim.
fn lts_parity(l: usize, t: usize) -> bool {
    l % 2 == 1 || (l % 4 == 0 && t % 2 == 0) || (l % 4 == 2 && t % 2 == 1)
}

fn ltas_parity(l: usize, t: usize) -> bool {
    l % 2 == 1 || (l % 4 == 0 && t % 2 == 1) || (l % 4 == 2 && t % 2 == 0)
}

/// Classifies an oriented cycle: the path cascade gated by the parity of
/// the number of flipped edges.
pub fn classify_cycle(c: &OrientedCycle, best_effort: bool) -> Result<Classification> {
    let l = c.len();
    let t = c.flips();
    if l < 3 {
        return Err(Error::TooShort(format!("cycle length {l} < 3")));
    }
    let counts = cycle_counts(c);
    let preconditions_met = l % 4 != 0;
    let make = |verdict, rule: &str, counts: SignedCounts| Classification {
        input: c.to_string(),
        v: l,
        e: l,
        counts,
        verdict,
        rule: rule.to_string(),
        flips: Some(t),
        preconditions_met,
    };
    if !preconditions_met && !best_effort {
        return Err(Error::PreconditionViolated(format!("cycle of length {l}, l = 0 mod 4")));
    }
    let gate = |want_lts: bool, want_ltas: bool, rule: String, counts: SignedCounts| {
        if want_lts {
            if lts_parity(l, t) {
                make(Verdict::Lts, &rule, counts)
            } else {
                make(Verdict::Neither, "cycle-parity", counts)
            }
        } else if want_ltas {
            if ltas_parity(l, t) {
                make(Verdict::Ltas, &rule, counts)
            } else {
                make(Verdict::Neither, "cycle-parity", counts)
            }
        } else {
            make(Verdict::Neither, &rule, counts)
        }
    };
    if counts.c_p3 != 0 {
        let neg = counts.c_p3 < 0;
        let rule = if neg { "wedges-cycle:C(P3)<0" } else { "wedges-cycle:C(P3)>0" };
        return Ok(gate(neg, !neg, rule.to_string(), counts));
    }
    if counts.c_p5 == -counts.c_2p3 {
        if l % 4 == 2 {
            return Err(Error::InternalAssertionFailed(format!(
                "C(P5) = -C(2P3) = {} on a cycle of length {l}",
                counts.c_p5
            )));
        }
        return Ok(make(Verdict::Unknown, "P5=-2P3:degenerate", counts));
    }
    let outcome = cascade(&counts);
    let rule = format!("cycle-{}", case_tag(&counts, outcome));
    Ok(gate(outcome == Cascade::Lts, outcome == Cascade::Ltas, rule, counts))
}

/// Path with `k` forward edges followed by `k−1` edges alternating `<`, `>`.
pub fn neither_family(k: usize) -> Orientation {
    let tail: String = (0..k - 1).map(|i| if i % 2 == 0 { '<' } else { '>' }).collect();
    Orientation::parse(&format!("{}{}", ">".repeat(k), tail)).expect("valid characters")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::alternating_cycle;

    fn path(s: &str) -> Result<Classification> {
        classify_path(&Orientation::parse(s).unwrap(), false)
    }

    #[test]
    fn path_examples() {
        let d1 = path(">>>>><><>").unwrap();
        assert_eq!((d1.verdict, d1.rule.as_str()), (Verdict::Neither, "P5-2P3:case(iii)"));
        let p = path("><").unwrap();
        assert_eq!((p.verdict, p.rule.as_str()), (Verdict::Lts, "wedges:C(P3)<0"));
        let p = path(">>>>>").unwrap();
        assert_eq!((p.verdict, p.rule.as_str()), (Verdict::Ltas, "wedges:C(P3)>0"));
        assert!(matches!(path(">><>><>"), Err(Error::PreconditionViolated(_))));
        // C(P3) = -2 here, so the wedge rule already decides it
        let d2 = classify_path(&Orientation::parse(">><>><>").unwrap(), true).unwrap();
        assert_eq!((d2.verdict, d2.preconditions_met), (Verdict::Lts, false));
        let deg = classify_path(&Orientation::parse(">><>><<").unwrap(), true).unwrap();
        assert_eq!((deg.verdict, deg.rule.as_str()), (Verdict::Unknown, "P5=-2P3:degenerate"));
        assert_eq!(path(">").unwrap().verdict, Verdict::Impartial);
    }

    #[test]
    fn neither_family_members() {
        assert_eq!(neither_family(5).to_string(), ">>>>><><>");
        for k in [5, 7] {
            assert_eq!(classify_path(&neither_family(k), false).unwrap().verdict, Verdict::Neither);
        }
    }

    #[test]
    fn cycle_examples() {
        let c5 = classify_cycle(&OrientedCycle::directed(5).unwrap(), false).unwrap();
        assert_eq!((c5.verdict, c5.rule.as_str()), (Verdict::Ltas, "wedges-cycle:C(P3)>0"));
        let sub = alternating_cycle(6).unwrap().subdivide(3);
        let s = classify_cycle(&sub, false).unwrap();
        assert_eq!((s.verdict, s.rule.as_str(), s.flips), (Verdict::Neither, "cycle-parity", Some(9)));
        let alt = classify_cycle(&alternating_cycle(6).unwrap(), false).unwrap();
        assert_ne!(alt.verdict, Verdict::Ltas);
        assert!(matches!(
            classify_cycle(&OrientedCycle::directed(8).unwrap(), false),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn internal_assertion_never_fires() {
        for e in [5usize, 9, 13] {
            for o in Orientation::all(e) {
                assert!(classify_path(&o, false).is_ok(), "{o}");
            }
        }
        for l in [6usize, 10, 14] {
            for o in Orientation::all(l) {
                assert!(classify_cycle(&OrientedCycle::new(o).unwrap(), false).is_ok());
            }
        }
    }

    #[test]
    fn reversal_symmetry() {
        for e in 1..=10 {
            for o in Orientation::all(e) {
                let a = classify_path(&o, true).unwrap();
                let b = classify_path(&o.reversed(), true).unwrap();
                assert_eq!((a.verdict, a.rule), (b.verdict, b.rule), "{o}");
            }
        }
    }
}

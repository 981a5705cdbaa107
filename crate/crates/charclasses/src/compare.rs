use std::collections::BTreeMap;
use std::fmt::Write;

use serde_json::{json, Value};
use spinvariants::{stable_ring, OutFnTable};

use crate::genus::{grw_kappa_degrees, kappa_borel_relation, KappaBorelRelation};
use crate::poly::monomial_string;
use crate::ClassError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeCount {
    pub degree: i64,
    pub aut: usize,
    pub diff: usize,
}

/// Generator counts of the stable cohomology of homotopy automorphisms (`aut`) against the
/// `κ`-class generators for diffeomorphisms (`diff`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingComparison {
    pub d: i64,
    pub maxdeg: i64,
    pub counts: Vec<DegreeCount>,
    /// Odd-degree `aut` generators; the `diff` side is concentrated in even degrees.
    pub odd_aut_generators: Vec<(String, i64)>,
    /// Degrees where `diff` has strictly more generators than `aut`.
    pub diff_surplus_degrees: Vec<i64>,
    pub borel: Vec<KappaBorelRelation>,
    pub kappa_labels: BTreeMap<i64, Vec<String>>,
}

impl RingComparison {
    pub fn injective_obstruction(&self) -> bool {
        !self.odd_aut_generators.is_empty()
    }

    pub fn surjective_obstruction(&self) -> bool {
        !self.diff_surplus_degrees.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d,
            "maxdeg": self.maxdeg,
            "counts": self.counts.iter().map(|c| json!({"degree": c.degree, "aut": c.aut, "diff": c.diff})).collect::<Vec<_>>(),
            "odd_aut_generators": self.odd_aut_generators.iter().map(|(l, g)| json!({"label": l, "degree": g})).collect::<Vec<_>>(),
            "diff_surplus_degrees": self.diff_surplus_degrees,
            "kappa_generators": self.kappa_labels,
            "borel_relations": self.borel.iter().map(KappaBorelRelation::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "d = {}, degrees ≤ {}", self.d, self.maxdeg);
        let _ = writeln!(s, "degree\taut\tdiff");
        for c in &self.counts {
            let _ = writeln!(s, "{}\t{}\t{}", c.degree, c.aut, c.diff);
        }
        for (l, g) in &self.odd_aut_generators {
            let _ = writeln!(s, "odd generator {l} in degree {g}: not in the image of an evenly graded ring");
        }
        for g in &self.diff_surplus_degrees {
            let _ = writeln!(s, "degree {g}: more kappa generators than generators on the aut side");
        }
        for r in &self.borel {
            let _ = writeln!(
                s,
                "x{} ↦ nonzero combination of kappa classes (single-part coefficient {})",
                r.i,
                r.single_partition_coefficient()
            );
        }
        s
    }
}

pub fn compare_rings(d: i64, maxdeg: i64, table: &OutFnTable) -> Result<RingComparison, ClassError> {
    if d % 2 == 0 {
        return Err(ClassError::EvenDimension(d));
    }
    let ring = stable_ring(d, table, maxdeg).map_err(ClassError::Ring)?;
    let kappa = grw_kappa_degrees(d, maxdeg)?;
    let mut counts: BTreeMap<i64, (usize, usize)> = BTreeMap::new();
    for g in &ring.generators {
        counts.entry(g.degree).or_default().0 += 1;
    }
    let mut kappa_labels: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    for k in &kappa {
        counts.entry(k.kappa_degree).or_default().1 += 1;
        kappa_labels.entry(k.kappa_degree).or_default().push(format!("kappa[{}]", monomial_string(&k.monomial)));
    }
    let counts: Vec<DegreeCount> = counts.into_iter().map(|(degree, (aut, diff))| DegreeCount { degree, aut, diff }).collect();
    let odd_aut_generators =
        ring.generators.iter().filter(|g| g.degree % 2 != 0).map(|g| (g.label.clone(), g.degree)).collect();
    let diff_surplus_degrees = counts.iter().filter(|c| c.diff > c.aut).map(|c| c.degree).collect();
    let borel = (1..).take_while(|&i| 4 * i as i64 - 2 <= maxdeg).map(|i| kappa_borel_relation(i, d)).collect::<Result<_, _>>()?;
    Ok(RingComparison { d, maxdeg, counts, odd_aut_generators, diff_surplus_degrees, borel, kappa_labels })
}

use std::time::Instant;

use flexcolor::witnesses::*;

fn entry(name: &str) -> WitnessEntry {
    catalog().into_iter().find(|e| e.name == name).unwrap_or_else(|| panic!("missing {name}"))
}

#[test]
fn every_claim_verifies() {
    let names: Vec<String> = catalog().into_iter().map(|e| e.name).collect();
    assert_eq!(
        names,
        ["k37_32", "k45_32", "k46_23", "k2n_t2_n2", "k2n_t2_n3", "k3n_t3_flex_n7", "k3n_t3_flex_n8", "precolor_3_2_9", "precolor_2_2_4"]
    );
    for e in catalog() {
        let start = Instant::now();
        let rep = verify(&e).unwrap();
        assert!(rep.passed, "{rep:?}");
        assert!(start.elapsed().as_secs_f64() < 1.0, "{} took {:?}", e.name, start.elapsed());
    }
}

#[test]
fn measured_values() {
    let rep = verify(&entry("k3n_t3_flex_n8")).unwrap();
    assert_eq!(rep.measured_best, Some(1));
    let rep = verify(&entry("k2n_t2_n3")).unwrap();
    assert_eq!(rep.measured_best, Some(0));
    let rep = verify(&entry("k45_32")).unwrap();
    assert!(!rep.colorable);
    let rep = verify(&entry("precolor_2_2_4")).unwrap();
    assert!(rep.passed && !rep.colorable);
}

#[test]
fn shapes_match_claims() {
    let ab = |name: &str, a, b| {
        let e = entry(name);
        assert!(e.lists.is_ab_assignment(&e.graph, a, b), "{name}");
    };
    ab("k37_32", 3, 2);
    ab("k45_32", 3, 2);
    ab("k46_23", 2, 3);
    ab("precolor_3_2_9", 3, 2);
    ab("precolor_2_2_4", 2, 2);
    for n in ["k2n_t2_n2", "k2n_t2_n3"] {
        assert!(entry(n).lists.is_k_assignment(2));
    }
    for n in ["k3n_t3_flex_n7", "k3n_t3_flex_n8"] {
        assert!(entry(n).lists.is_k_assignment(3));
    }
}

#[test]
fn printed_labels_are_kept() {
    let rec = entry("k37_32").to_record();
    assert_eq!(rec.lists[0], vec![vec![1, 2, 3], vec![1, 3, 4], vec![2, 4, 5]]);
    assert_eq!(rec.lists[1][6], vec![3, 5]);
}

/// Every single-color substitution in every list slot of the K_{3,7}
/// witness is caught, either by the claim check or by the diff.
#[test]
fn tampering_is_detected() {
    let base = entry("k37_32").to_record();
    let mut slots = 0;
    let mut by_claim = 0;
    for p in 0..base.lists.len() {
        for i in 0..base.lists[p].len() {
            let list = base.lists[p][i].clone();
            for (pos, &old) in list.iter().enumerate() {
                // every other color of the pot plus one fresh color
                for new in (1..=6).filter(|c| !list.contains(c)) {
                    let mut t = base.clone();
                    t.lists[p][i][pos] = new;
                    let e = t.to_entry().unwrap();
                    let d = diff(&e);
                    assert!(!d.is_empty(), "lists[{p}][{i}]: {old} -> {new} not reported");
                    if !verify(&e).unwrap().passed {
                        by_claim += 1;
                    }
                }
            }
            slots += 1;
        }
    }
    assert_eq!(slots, 3 + 7);
    assert_eq!(base.lists.iter().flatten().map(|l| l.len()).sum::<usize>(), 3 * 3 + 7 * 2);
    assert!(by_claim > 0);
    assert!(diff(&entry("k37_32")).is_empty());
}

#[test]
fn catalog_round_trip() {
    let records: Vec<WitnessRecord> = catalog().iter().map(WitnessEntry::to_record).collect();
    let text = to_canonical_json(&records);
    let back = parse_records(&text).unwrap();
    assert_eq!(back, records);
    assert_eq!(to_canonical_json(&back), text);
    for (r, e) in back.iter().zip(catalog()) {
        assert_eq!(r.to_entry().unwrap().to_record(), e.to_record());
    }
}

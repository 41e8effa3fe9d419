use fusionforge::catalog::{
    analyze, bundled, bundled_names, parse_catalog, parse_str, render, AnalyzeOptions, Cache,
    LoadedGroup, Lookup, Stage, BUNDLED,
};
use fusionforge::Error;

#[test]
fn bundled_files_round_trip() {
    for (stem, text) in BUNDLED {
        let entries = parse_str(text).unwrap();
        assert!(!entries.is_empty(), "{}", stem);
        let again = parse_str(&render(&entries)).unwrap();
        assert_eq!(entries, again, "{}", stem);
    }
}

#[test]
fn bundled_files_are_canonical() {
    for (stem, text) in BUNDLED {
        assert_eq!(render(&parse_str(text).unwrap()), *text, "{}", stem);
    }
}

#[test]
fn every_bundled_entry_validates() {
    let names = bundled_names();
    assert!(names.len() >= 19);
    for n in &names {
        let lg = bundled(n).unwrap();
        if let Some(h) = &lg.entry.order_hint {
            assert_eq!(&lg.group.order().to_string(), h);
        }
    }
}

#[test]
fn example_group_has_order_960() {
    let lg = bundled("2^4:15:4").unwrap();
    assert_eq!(lg.group.order_u64(), 960);
    assert_eq!(bundled("example_2_4_15_4").unwrap().group.order_u64(), 960);
}

#[test]
fn lookup_ignores_case() {
    assert_eq!(bundled("m11").unwrap().entry.name, "M11");
    assert!(matches!(bundled("M99"), Err(Error::Unknown { .. })));
}

#[test]
fn unclosed_cycle_reports_its_line() {
    let text = "[group]\nname = Bad\ndegree = 4\ngen = (1 2\n";
    match parse_str(text) {
        Err(Error::Parse { line, msg }) => {
            assert_eq!(line, 4);
            assert!(msg.contains("unclosed"), "{}", msg);
        }
        other => panic!("expected a parse error, got {:?}", other),
    }
}

#[test]
fn point_outside_degree_is_rejected() {
    let text = "[group]\nname = Bad\ndegree = 3\ngen = (1 4)\n";
    assert!(matches!(parse_str(text), Err(Error::Parse { line: 4, .. })));
}

#[test]
fn wrong_order_hint_is_rejected() {
    let text = "[group]\nname = S3\ndegree = 3\norder = 7\ngen = (1 2 3)\ngen = (1 2)\n";
    let e = parse_str(text).unwrap();
    assert!(matches!(LoadedGroup::from_entry(&e[0]), Err(Error::OrderMismatch { .. })));
}

#[test]
fn overgroup_must_normalize() {
    // ⟨(1 2 3)⟩ in S3 written with a wrong overgroup index
    let text = "[group]\nname = C3\ndegree = 3\ngen = (1 2 3)\n\n[out]\norder = 3\ngen = (1 2 3)\ngen = (1 2)\n";
    let e = parse_str(text).unwrap();
    assert!(matches!(LoadedGroup::from_entry(&e[0]), Err(Error::OutData(_))));
}

#[test]
fn catalog_file_from_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two.grp");
    let text = format!("{}\n{}", BUNDLED.iter().find(|b| b.0 == "s4").unwrap().1, BUNDLED.iter().find(|b| b.0 == "a5").unwrap().1);
    std::fs::write(&path, text).unwrap();
    let groups = parse_catalog(&path).unwrap();
    assert_eq!(groups.iter().map(|g| g.group.order_u64()).collect::<Vec<_>>(), vec![24, 60]);
}

#[test]
fn report_is_deterministic() {
    let lg = bundled("M11").unwrap();
    let opts = AnalyzeOptions::default();
    let a = serde_json::to_string(&analyze(&lg, 2, &opts).unwrap()).unwrap();
    let b = serde_json::to_string(&analyze(&lg, 2, &opts).unwrap()).unwrap();
    assert_eq!(a, b);
    let back: fusionforge::catalog::AnalysisReport = serde_json::from_str(&a).unwrap();
    assert_eq!(serde_json::to_string(&back).unwrap(), a);
}

#[test]
fn large_sylow_skips_lattice_stages() {
    let lg = bundled("M24").unwrap();
    let r = analyze(&lg, 2, &AnalyzeOptions::default()).unwrap();
    assert!(matches!(r.essential_classes, Stage::Skipped { .. }));
    assert!(matches!(r.z_hat, Stage::Done { .. }));
}

#[test]
fn non_prime_is_rejected() {
    let lg = bundled("S4").unwrap();
    assert!(matches!(analyze(&lg, 4, &AnalyzeOptions::default()), Err(Error::NotPrime(4))));
}

#[test]
fn cache_hit_miss_and_corrupt() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let lg = bundled("S5").unwrap();
    let opts = AnalyzeOptions::default();
    let key = Cache::key(&lg.entry, 2, &opts);
    assert_eq!(cache.get(&key), Lookup::Miss);

    let report = analyze(&lg, 2, &opts).unwrap();
    cache.put(&key, &report).unwrap();
    assert_eq!(cache.get(&key), Lookup::Hit(Box::new(report.clone())));

    std::fs::write(dir.path().join(format!("{}.json", key)), "{ not json").unwrap();
    assert!(matches!(cache.get(&key), Lookup::Corrupt(_)));
    cache.put(&key, &report).unwrap();
    assert!(matches!(cache.get(&key), Lookup::Hit(_)));

    // keys separate primes, options and entries
    assert_ne!(key, Cache::key(&lg.entry, 3, &opts));
    let other = AnalyzeOptions { elementary_only: true, ..opts };
    assert_ne!(key, Cache::key(&lg.entry, 2, &other));
    assert_ne!(key, Cache::key(&bundled("A5").unwrap().entry, 2, &opts));
}

#[test]
fn prime_must_divide_the_order() {
    let lg = bundled("S4").unwrap();
    assert!(matches!(analyze(&lg, 5, &AnalyzeOptions::default()), Err(Error::PrimeDoesNotDivide { p: 5 })));
}

#[test]
fn edited_entry_misses_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let opts = AnalyzeOptions::default();
    let lg = bundled("S4").unwrap();
    let key = Cache::key(&lg.entry, 2, &opts);
    cache.put(&key, &analyze(&lg, 2, &opts).unwrap()).unwrap();
    let mut edited = lg.entry.clone();
    edited.generators[1] = "(2 3)".into();
    let k2 = Cache::key(&edited, 2, &opts);
    assert_ne!(key, k2);
    assert_eq!(cache.get(&k2), Lookup::Miss);
}

#[test]
fn cache_file_under_another_key_is_corrupt() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let lg = bundled("S4").unwrap();
    let opts = AnalyzeOptions::default();
    let k2 = Cache::key(&lg.entry, 2, &opts);
    let k3 = Cache::key(&lg.entry, 3, &opts);
    cache.put(&k2, &analyze(&lg, 2, &opts).unwrap()).unwrap();
    std::fs::copy(dir.path().join(format!("{}.json", k2)), dir.path().join(format!("{}.json", k3))).unwrap();
    assert!(matches!(cache.get(&k3), Lookup::Corrupt(_)));
}

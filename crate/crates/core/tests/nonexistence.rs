use heun_atlas::exactalg::fmt_rat;
use heun_atlas::lemmas::{nonexistence_search, replay, Rule, Status};
use heun_atlas::patterns::{BranchingPattern, RestrictionType};

/// Unrealizable patterns with the rule and pulled-back differences of a known refutation.
const UNREALIZABLE: [(&str, &str, &str, &str); 27] = [
    ("N1", "[2]^6=[3]^4=7+3+1+1", "6.2a", "1/3, 1/3, 7/3"),
    ("N2", "[2]^6=[3]^4=7+2+2+1", "6.1b", "1/2, 7/2"),
    ("N3", "[2]^6=[3]^4=6+4+1+1", "6.2b", "1/4, 1/4, 3/2"),
    ("N4", "[2]^6=[3]^4=6+2+2+2", "6.1a", "3"),
    ("N5", "[2]^6=[3]^4=5+4+2+1", "6.2d", "1/2, 2, 5/2"),
    ("N6", "[2]^6=[3]^4=5+3+3+1", "6.1b", "1/3, 5/3"),
    ("N7", "[2]^6=[3]^4=5+3+2+2", "6.1b", "3/2, 5/2"),
    ("N8", "[2]^6=[3]^4=4+4+3+1", "6.1b", "1/4, 3/4"),
    ("N9", "[2]^6=[3]^4=4+3+3+2", "6.1b", "2/3, 4/3"),
    ("N10", "[2]^5=[3]^3+1=6+3+1", "6.3-eisenstein", "1/6, 1/3, 1/2"),
    ("N11", "[2]^5=[3]^3+1=6+2+2", "6.1b", "1/3, 3"),
    ("N12", "[2]^5=[3]^3+1=4+4+2", "6.1b", "1/3, 1/2"),
    ("N13", "[2]^5=[3]^3+1=4+3+3", "6.1b", "1/3, 4/3"),
    ("N14", "[2]^4+1=[3]^3=5+2+2", "6.1b", "1/2, 5/2"),
    ("N15", "[2]^4+1=[3]^3=4+4+1", "6.1b", "1/4, 1/2"),
    ("N16", "[2]^4+1=[3]^3=3+3+3", "6.1a", "1/2"),
    ("N17", "[2]^4=[3]^2+2=4+3+1", "6.2a", "1/3, 2/3, 4/3"),
    ("N18", "[2]^4=[3]^2+2=4+2+2", "6.1b", "2/3, 2"),
    ("N19", "[2]^4=[3]^2+1+1=5+3", "6.2a", "1/3, 1/3, 5/3"),
    ("N20", "[2]^3=[3]+2+1=3+3", "6.1b", "1/3, 2/3"),
    ("N21", "[2]^4=[4]^2=5+1+1+1", "6.2c", "2, 2, 5"),
    ("N22", "[2]^4=[4]^2=3+2+2+1", "6.1b", "1/2, 3/2"),
    ("N23", "[2]^3=[4]+2=4+1+1", "6.1b", "2, 4"),
    ("N24", "[2]^3=[4]+2=2+2+2", "6.1a", "1/2"),
    ("N25", "[2]^3=[5]+1=2+2+2", "6.1a", "1/5"),
    ("N26", "[3]^2=[3]^2=3+1+1+1", "6.1a", "3"),
    ("N27", "[2]^2=3+1=2+2", "6.1a", "1/3"),
];

fn search(text: &str) -> heun_atlas::lemmas::Verdict {
    let p = BranchingPattern::parse(text).unwrap();
    let ty = RestrictionType::new(p.restriction_type()).unwrap();
    nonexistence_search(&ty, &p, true)
}

#[test]
fn unrealizable_patterns_are_refuted() {
    for (id, text, rule, diffs) in UNREALIZABLE {
        let v = search(text);
        assert_eq!(v.status, Status::Nonexistent, "{id}");
        let rule = Rule::parse(rule).unwrap();
        let found = v.chain.iter().any(|c| {
            let s: Vec<String> = c.profile.singular().iter().map(fmt_rat).collect();
            let mut want: Vec<&str> = diffs.split(", ").collect();
            want.sort_by_key(|w| heun_atlas::exactalg::parse_rational(w).unwrap());
            c.rule == rule && s == want
        });
        assert!(found, "{id}: {:?}", v.chain.iter().map(|c| (c.rule, c.profile.to_text())).collect::<Vec<_>>());
        assert!(v.chain.iter().all(replay), "{id}");
    }
}

#[test]
fn realized_pattern_is_undecided() {
    let v = search("[2]^6=[3]^4=9+1+1+1");
    assert_eq!(v.status, Status::Undecided);
}

#[test]
fn realizable_patterns_are_never_refuted() {
    let key = |p: &BranchingPattern| {
        let mut k = p.partitions().to_vec();
        k.sort();
        k
    };
    let refuted: Vec<_> = UNREALIZABLE.iter().map(|r| key(&BranchingPattern::parse(r.1).unwrap())).collect();
    let all = heun_atlas::patterns::enumerate_all();
    assert_eq!(all.len(), 89);
    let mut realizable = 0;
    for (ty, p) in &all {
        if refuted.contains(&key(p)) {
            continue;
        }
        realizable += 1;
        let v = nonexistence_search(ty, p, false);
        assert_eq!(v.status, Status::Undecided, "{} {:?}", p.to_text(), v.rules());
    }
    // one unrealizable pattern occurs under two restriction types
    assert_eq!(realizable, 89 - 28);
}

use welding_core::algebra::{enumerate_partitions, Partition};
use welding_core::exact::rational::rat;
use welding_core::moments::{solve_system, MomentConfig, MomentEngine};

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

#[test]
fn identities_through_level_six() {
    let mut e = MomentEngine::new(MomentConfig::default()).unwrap();
    e.solve_through(6).unwrap();
    let report = e.verify_identities(6).unwrap();
    for line in &report {
        assert!(line.pass, "{line}");
    }
    assert_eq!(e.moment(&p("1+1+1"), &p("3")).unwrap(), rat(1, 4));
    assert_eq!(e.moment(&p("4"), &p("4")).unwrap(), rat(1, 5));
}

#[test]
fn leibniz_and_factored_assembly_coincide() {
    let mut e = MomentEngine::new(MomentConfig::default()).unwrap();
    for n in 1..=6 {
        let a = e.assemble_level(n).unwrap();
        let b = e.assemble_level_factored(n).unwrap();
        assert_eq!(a.ids, b.ids);
        for i in 0..a.ids.len() {
            assert_eq!(a.rows[i], b.rows[i], "row {}", a.ids[i]);
            assert_eq!(a.rhs[i], b.rhs[i], "rhs {}", a.ids[i]);
        }
        e.solve_level(n).unwrap();
    }
}

#[test]
fn reordering_and_conjugates_do_not_change_solutions() {
    let mut full = MomentEngine::new(MomentConfig::default()).unwrap();
    let mut half = MomentEngine::new(MomentConfig {
        include_conjugates: false,
        ..Default::default()
    })
    .unwrap();
    for n in 1..=5 {
        let sys = full.assemble_level(n).unwrap();
        let x = solve_system(&sys.shuffled(11)).unwrap();
        let y = solve_system(&sys.shuffled(29)).unwrap();
        assert_eq!(x.digest(), y.digest());
        full.solve_level(n).unwrap();
        assert_eq!(full.table(n).unwrap().digest(), x.digest());
        half.solve_level(n).unwrap();
        assert_eq!(
            half.table(n).unwrap().digest(),
            full.table(n).unwrap().digest()
        );
    }
}

#[test]
fn tables_are_symmetric() {
    let mut e = MomentEngine::new(MomentConfig::default()).unwrap();
    e.solve_through(4).unwrap();
    for n in 0..=4 {
        let t = e.table(n).unwrap();
        assert!(t.is_symmetric());
        assert_eq!(t.entries().count(), enumerate_partitions(n).len().pow(2));
    }
}

use std::collections::{BTreeMap, BTreeSet};

use braidforge::arrangements::*;
use braidforge::braid::{artin, braid_equal, full_twist, pure_gen, u_chain};
use braidforge::wiring::{parse_wiring, wiring_from_real_lines, RealLine};
use braidforge::{BraidWord, Exec, Word};
use num_complex::Complex64;
use TypeBGen::{A, B, C};

fn w(text: &str) -> Word {
    Word::parse(text, 5).unwrap()
}

#[test]
fn typeb_lines_small() {
    let l = typeb_lines(2).unwrap();
    let want: Vec<RealLine> = [(-2, -120), (-1, 0), (0, 0), (1, 0), (2, 120)]
        .iter()
        .map(|&(s, b)| RealLine::from_ints(s, b))
        .collect();
    assert_eq!(l, want);

    let d = wiring_from_real_lines(&typeb_lines(1).unwrap()).unwrap();
    assert_eq!(d.len(), 1);
    assert_eq!(d.events()[0].partition.block_sets(), vec![vec![1, 2, 3]]);

    let d = wiring_from_real_lines(&typeb_lines(2).unwrap()).unwrap();
    let b2 = parse_wiring(include_str!("../../../data/b2.wd")).unwrap();
    let parts = |d: &braidforge::wiring::WiringDiagram| {
        d.events().iter().map(|e| e.partition.block_sets()).collect::<Vec<_>>()
    };
    assert_eq!(parts(&d), parts(&b2));
    assert!(typeb_lines(0).is_err());
}

#[test]
fn b2_meridians_match_closed_forms() {
    assert_eq!(meridian_order(2).unwrap(), vec![C(1), B(1, 2), C(2), A(1, 2)]);
    // the four displayed monodromy braids of the n = 2 example
    let a = |i, j| pure_gen(i, j, 5).unwrap();
    let shown = [
        (C(1), full_twist(&[2, 3, 4], 5).unwrap()),
        (
            B(1, 2),
            BraidWord::product(
                5,
                &[a(1, 2), a(1, 3), a(1, 4), a(1, 3).inverse(), a(1, 2).inverse(), a(2, 5)],
            ),
        ),
        (C(2), BraidWord::product(5, &[a(1, 2), full_twist(&[1, 3, 5], 5).unwrap(), a(1, 2).inverse()])),
        (A(1, 2), &a(1, 2) * &a(4, 5)),
    ];
    let closed = typeb_monodromy_closed(2).unwrap();
    let computed = typeb_monodromy_computed(2).unwrap();
    for (g, b) in &shown {
        assert!(braid_equal(b, &closed[g]).unwrap(), "{g}");
        assert!(braid_equal(b, &computed[g]).unwrap(), "{g}");
    }
}

#[test]
fn closed_forms_match_wiring_up_to_four() {
    for n in 1..=4 {
        let rep = verify_typeb_monodromy(n, Exec::Sequential);
        assert_eq!(rep.len(), n * n);
        assert!(rep.all_passed(), "{}", rep.failure_list());
    }
    assert!(u_chain(3, 3, 7).unwrap().is_empty());
    assert!(typeb_closed(A(2, 2), 3).is_err());
    assert!(typeb_closed(C(4), 3).is_err());
}

#[test]
fn meridian_order_follows_the_hyperplane_points() {
    // h^+_{n-1,n} > ⋯ > h^+_{1,n} > h_n > h^-_{1,n} > ⋯ > h^-_{n-1,n}, level by level
    let mut want = Vec::new();
    for l in 1..=4 {
        want.extend((1..l).rev().map(|k| B(k, l)));
        want.push(C(l));
        want.extend((1..l).map(|k| A(k, l)));
    }
    assert_eq!(meridian_order(4).unwrap(), want);
}

#[test]
fn exponent_lists() {
    assert_eq!(exponents(ArrangementKind::TypeB { n: 3 }), vec![1, 3, 5]);
    assert_eq!(exponents(ArrangementKind::Monomial { r: 2, n: 3 }), vec![1, 3, 5]);
    assert_eq!(exponents(ArrangementKind::Monomial { r: 1, n: 3 }), vec![1, 2, 3]);
    assert_eq!(exponents(ArrangementKind::Monomial { r: 3, n: 3 }), vec![1, 4, 7]);
}

#[test]
fn trivial_tower_is_a_direct_product() {
    let tower = vec![
        TowerLevel { level: 1, rank: 1, names: vec!["u".into()], monodromy: vec![] },
        TowerLevel {
            level: 2,
            rank: 2,
            names: vec!["v1".into(), "v2".into()],
            monodromy: vec![("u".into(), BraidWord::identity(2))],
        },
    ];
    let p = assemble_presentation(&tower).unwrap();
    assert_eq!(p.relations.len(), 2);
    for rel in &p.relations {
        let q = p.generators[rel.target].position;
        assert_eq!(rel.rhs, Word::generator(q, 2));
    }
    assert_eq!(
        p.render(),
        "# x[1,1] = u\n# x[1,2] = v1\n# x[2,2] = v2\nx[1,1]^-1 x[1,2] x[1,1] = x[1,2]\nx[1,1]^-1 x[2,2] x[1,1] = x[2,2]\n"
    );

    let mut bad = tower.clone();
    bad[1].monodromy[0].1 = BraidWord::sigma(1, 2);
    assert!(assemble_presentation(&bad).is_err());
    let mut bad = tower.clone();
    bad[1].monodromy[0].1 = BraidWord::identity(3);
    assert!(assemble_presentation(&bad).is_err());
    let mut bad = tower;
    bad[1].monodromy.clear();
    assert!(assemble_presentation(&bad).is_err());
}

#[test]
fn typeb_presentation_reproduces_b2_table() {
    let p = assemble_presentation(&typeb_tower(3).unwrap()).unwrap();
    let ranks = [1usize, 3, 5];
    let count: usize = (0..3).flat_map(|i| ((i + 1)..3).map(move |j| ranks[i] * ranks[j])).sum();
    assert_eq!(p.relations.len(), count);
    let c25 = w("t2 t5 t2^-1 t5^-1");
    let x = w("t2^-1 t1 t2 t3");
    let one = Word::identity(5);
    let table: BTreeMap<TypeBGen, Vec<Word>> = [
        (C(1), vec![one.clone(), w("t2 t3 t4"), w("t2 t3 t4"), w("t2 t3 t4"), one.clone()]),
        (
            B(1, 2),
            vec![
                w("t1 t2 t3 t4 t3^-1 t2^-1"),
                w("t2 t5"),
                c25.clone(),
                &c25 * &w("t3^-1 t2^-1 t1 t2 t3"),
                w("t2 t5"),
            ],
        ),
        (
            C(2),
            vec![
                w("t1 t2 t3 t5 t2^-1"),
                one.clone(),
                w("t2^-1 t1 t2 t3 t5"),
                x.commutator(&w("t5")).unwrap(),
                w("t2^-1 t1 t2 t3 t5"),
            ],
        ),
        (A(1, 2), vec![w("t1 t2"), w("t1 t2"), one, w("t4 t5"), w("t4 t5")]),
    ]
    .into_iter()
    .collect();
    let mut seen = 0;
    for rel in &p.relations {
        let (xg, yg) = (&p.generators[rel.conjugator], &p.generators[rel.target]);
        assert_eq!(rel.rhs.abelianize(), Word::generator(yg.position, ranks[yg.level - 1]).abelianize());
        if yg.level != 3 {
            continue;
        }
        let g = TypeBGen::all(2).into_iter().find(|g| g.to_string() == xg.name).unwrap();
        let wq = &table[&g][yg.position - 1];
        let t = Word::generator(yg.position, 5);
        assert_eq!(rel.rhs, t.conjugate(&wq.invert()).unwrap(), "{} on {}", xg.name, yg.name);
        seen += 1;
    }
    assert_eq!(seen, 20);
    let text = p.render();
    assert!(text.contains("# x[3,3] = c_3\n"));
    assert!(text
        .contains("x[1,1]^-1 x[3,3] x[1,1] = x[2,3] x[3,3] x[4,3] x[3,3] x[4,3]^-1 x[3,3]^-1 x[2,3]^-1\n"));
}

#[test]
fn monomial_presentation_shapes() {
    for (r, n) in [(1, 3), (2, 3), (3, 3)] {
        let tower = monomial_tower(r, n).unwrap();
        let p = assemble_presentation(&tower).unwrap();
        let ranks = exponents(ArrangementKind::Monomial { r, n });
        assert_eq!(tower.iter().map(|t| t.rank).collect::<Vec<_>>(), ranks);
        let count: usize =
            (0..n).flat_map(|i| ((i + 1)..n).map(|j| ranks[i] * ranks[j]).collect::<Vec<_>>()).sum();
        assert_eq!(p.relations.len(), count);
        for rel in &p.relations {
            let y = &p.generators[rel.target];
            assert_eq!(rel.rhs.abelianize(), Word::generator(y.position, ranks[y.level - 1]).abelianize());
        }
    }
    let t = monomial_tower(2, 2).unwrap();
    assert_eq!(t[1].names, vec!["Z[2]", "A[1,2;1]", "A[1,2;2]"]);
    assert_eq!(t[1].monodromy[0].0, "Z[1]");
}

fn complex_flats(r: usize, n: usize) -> BTreeSet<BTreeSet<Hyperplane>> {
    let zeta = |p: usize| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * p as f64 / r as f64);
    let hs = monomial_hyperplanes(r, n);
    let normal = |h: &Hyperplane| {
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        match *h {
            Hyperplane::Coord(j) => v[j - 1] = Complex64::new(1.0, 0.0),
            Hyperplane::Diag { i, j, p } => {
                v[j - 1] = Complex64::new(1.0, 0.0);
                v[i - 1] = -zeta(p);
            }
        }
        v
    };
    let normals: Vec<_> = hs.iter().map(normal).collect();
    // rank < 3 iff every 3x3 minor vanishes
    let rank3 = |a: &[Complex64], b: &[Complex64], c: &[Complex64]| {
        for x in 0..n {
            for y in (x + 1)..n {
                for z in (y + 1)..n {
                    let det = a[x] * (b[y] * c[z] - b[z] * c[y]) - a[y] * (b[x] * c[z] - b[z] * c[x])
                        + a[z] * (b[x] * c[y] - b[y] * c[x]);
                    if det.norm() > 1e-9 {
                        return true;
                    }
                }
            }
        }
        false
    };
    let mut out = BTreeSet::new();
    for a in 0..hs.len() {
        for b in (a + 1)..hs.len() {
            let flat: BTreeSet<Hyperplane> = (0..hs.len())
                .filter(|&c| c == a || c == b || !rank3(&normals[a], &normals[b], &normals[c]))
                .map(|c| hs[c])
                .collect();
            out.insert(flat);
        }
    }
    out
}

#[test]
fn monomial_flats_match_brute_force() {
    let f = monomial_flats(2, 2).unwrap();
    assert_eq!(f.len(), 1);
    assert_eq!(
        f[0].hyperplanes(),
        &[
            Hyperplane::Coord(1),
            Hyperplane::Diag { i: 1, j: 2, p: 1 },
            Hyperplane::Coord(2),
            Hyperplane::Diag { i: 1, j: 2, p: 2 }
        ]
    );
    for r in 1..=4 {
        for n in 2..=4 {
            let flats = monomial_flats(r, n).unwrap();
            let got: BTreeSet<BTreeSet<Hyperplane>> =
                flats.iter().map(|f| f.hyperplanes().iter().copied().collect()).collect();
            assert_eq!(got.len(), flats.len());
            assert_eq!(got, complex_flats(r, n), "r={r} n={n}");
            // each pair of hyperplanes lies on exactly one flat
            let m = monomial_hyperplanes(r, n).len();
            let pairs: usize = flats.iter().map(|f| f.len() * (f.len() - 1) / 2).sum();
            assert_eq!(pairs, m * (m - 1) / 2);
        }
    }
    assert!(monomial_flats(2, 1).unwrap().is_empty());
    assert!(monomial_flats(0, 2).is_err());
}

#[test]
fn r1_flats_are_braid_triples_and_coordinate_pairs() {
    let flats = monomial_flats(1, 3).unwrap();
    let sizes: Vec<usize> = flats.iter().map(FlatC2::len).collect();
    // three {H_j, H_l, H_{j,l}} triples, one disjoint-free triple, and the
    // pairs {H_m, H_{k,l}} with m outside {k,l}
    assert_eq!(sizes.iter().filter(|&&s| s == 3).count(), 4);
    assert_eq!(sizes.iter().filter(|&&s| s == 2).count(), 3);
}

#[test]
fn r2_flats_are_the_type_b_flats() {
    for n in 2..=4 {
        let typeb: BTreeSet<BTreeSet<TypeBGen>> =
            typeb_flats(n).into_iter().map(|f| f.into_iter().collect()).collect();
        let mono: BTreeSet<BTreeSet<TypeBGen>> = monomial_flats(2, n)
            .unwrap()
            .iter()
            .map(|f| f.hyperplanes().iter().map(|h| h.typeb().unwrap()).collect())
            .collect();
        assert_eq!(typeb, mono, "n={n}");
    }
}

#[test]
fn pbn_table_holds_with_flagged_entries_resolved() {
    for n in 2..=4 {
        let rep = verify_pbn_table(n, Exec::Sequential);
        assert!(rep.all_passed(), "{}", rep.failure_list());
        let flagged: Vec<_> = rep.entries.iter().filter(|e| e.family == "PBn flagged").collect();
        assert!(!flagged.is_empty());
        for e in flagged {
            assert!(e.detail.contains("computed w = "), "{}", e.detail);
            assert!(!e.detail.ends_with("matching readings: none"), "{}", e.detail);
            if e.detail.starts_with("UnboundIndex") {
                let l = e.instance.split(' ').nth(2).unwrap();
                let (i, l) = match l.strip_prefix("b_{").and_then(|s| s.strip_suffix('}')) {
                    Some(s) => {
                        let v: Vec<usize> = s.split(',').map(|x| x.parse().unwrap()).collect();
                        (v[0], v[1])
                    }
                    None => panic!("{}", e.instance),
                };
                assert!(e.detail.contains(&format!("\\bar b_{{{},{l}}}", i + 1)), "{}", e.detail);
            }
        }
    }
    for n in 2..=3 {
        let rep = verify_pbn_monomial(n, Exec::Sequential);
        assert!(rep.all_passed(), "{}", rep.failure_list());
    }
    assert!(!verify_pbn_table(5, Exec::Sequential).all_passed());
}

#[test]
fn artin_of_closed_forms_fixes_the_boundary_product() {
    for n in 1..=3 {
        let s = 2 * n + 1;
        let prod: Vec<i32> = (1..=s as i32).collect();
        let boundary = Word::reduce(&prod, s).unwrap();
        for (g, b) in typeb_monodromy_closed(n).unwrap() {
            assert_eq!(artin(&b).unwrap().apply(&boundary).unwrap(), boundary, "{g}");
        }
    }
}

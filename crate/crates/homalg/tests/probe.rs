use homalg::complex::ChainMap;
use homalg::derived::{compose_roofs, hom_d, roof_eq, Roof};
use homalg::matrix::Ring;
use homalg::laws::{roof_triple, InstanceGenSpec};
use std::time::Instant;

#[test]
fn probe() {
    let mut spec = InstanceGenSpec::new(Ring::Z, 0x600F5, 100);
    spec.max_gens = 2;
    spec.max_torsion = 3;
    spec.degree_span = 2;
    for i in 0..100usize {
        let t = Instant::now();
        let (r1, r2, r3) = roof_triple(&spec, i);
        let t_gen = t.elapsed();
        let t = Instant::now();
        let id_src = Roof::from_map(&ChainMap::identity(r1.source()));
        let id_dst = Roof::from_map(&ChainMap::identity(r1.dest()));
        assert!(roof_eq(&compose_roofs(&id_src, &r1), &r1), "unit L {}", i);
        assert!(roof_eq(&compose_roofs(&r1, &id_dst), &r1), "unit R {}", i);
        let t_unit = t.elapsed();
        let t = Instant::now();
        let left = compose_roofs(&compose_roofs(&r1, &r2), &r3);
        let right = compose_roofs(&r1, &compose_roofs(&r2, &r3));
        assert!(roof_eq(&left, &right), "assoc {}", i);
        let t_assoc = t.elapsed();
        let t = Instant::now();
        let r1_alt = compose_roofs(&id_src, &r1);
        assert!(
            roof_eq(&compose_roofs(&r1_alt, &r2), &compose_roofs(&r1, &r2)),
            "congr {}",
            i
        );
        let t_congr = t.elapsed();
        let t = Instant::now();
        let hd = hom_d(r1.source(), r1.dest());
        let c = hd.class_of_roof(&r1);
        let back = hd.class_of_roof(&hd.roof_for(&c));
        assert!(hd.group().element_is_zero(&c.sub(&back)), "rt {}", i);
        let t_rt = t.elapsed();
        println!(
            "case {:3}: gen {:?} unit {:?} assoc {:?} congr {:?} rt {:?}",
            i, t_gen, t_unit, t_assoc, t_congr, t_rt
        );
    }
}

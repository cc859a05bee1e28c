use sepline_core::geometry::{rat, ConvexPolygon};
use sepline_core::guaranteed_count;
use sepline_core::instances::{
    instance_hash, parse_instance, random_disjoint_polygons, serialize_instance, validate_instance,
    verify_certificate, CertificateFile, GeneratorParams, Instance,
};
use sepline_core::pipeline::solve;

fn check(inst: &Instance) -> usize {
    let cert = solve(&inst.sets).unwrap_or_else(|e| panic!("{}: {e}", inst.label));
    let file = CertificateFile::from_theorem(instance_hash(inst), &cert);
    let report = verify_certificate(inst, &file).unwrap();
    assert!(report.pass, "{}: {:?}", inst.label, report.problems);
    assert_eq!(report.min_observed_max, cert.guarantee, "{}", inst.label);
    assert!(cert.guarantee >= guaranteed_count(inst.len()));
    cert.guarantee
}

#[test]
fn two_hundred_seeds() {
    for seed in 0..200u64 {
        let n = 2 + (seed as usize % 39);
        let inst = random_disjoint_polygons(n, seed, &GeneratorParams::default()).unwrap();
        check(&inst);
    }
}

#[test]
fn crowded_touching_instances() {
    let params = GeneratorParams { k_min: 3, k_max: 8, spread: 5, min_gap: rat(0) };
    for seed in 0..40u64 {
        let inst = random_disjoint_polygons(2 + seed as usize % 20, seed, &params).unwrap();
        check(&inst);
    }
}

#[test]
fn touching_grid_of_squares() {
    let mut sets = Vec::new();
    for x in 0..5 {
        for y in 0..4 {
            sets.push(ConvexPolygon::from_i64(&[(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)]).unwrap());
        }
    }
    let g = check(&Instance::new("grid", None, sets));
    assert!(g >= 2);
}

#[test]
fn fan_of_triangles_around_a_point() {
    // eight triangles sharing the origin
    let ring = [(4, 0), (3, 3), (0, 4), (-3, 3), (-4, 0), (-3, -3), (0, -4), (3, -3)];
    let sets = (0..8)
        .map(|k| {
            let (a, b) = (ring[k], ring[(k + 1) % 8]);
            ConvexPolygon::from_i64(&[(0, 0), a, b]).unwrap()
        })
        .collect();
    check(&Instance::new("fan", None, sets));
}

#[test]
fn generated_instances_round_trip_byte_identically() {
    for seed in 0..20u64 {
        let inst = random_disjoint_polygons(1 + seed as usize, seed, &GeneratorParams::default()).unwrap();
        let text = serialize_instance(&inst);
        let back = parse_instance(&text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(serialize_instance(&back), text);
        assert!(validate_instance(&back).passed());
    }
}

use super::*;
use crate::geometry::{line_through, HalfSide};

fn square(x: i64, y: i64, s: i64) -> ConvexPolygon {
    ConvexPolygon::from_i64(&[(x, y), (x + s, y), (x + s, y + s), (x, y + s)]).unwrap()
}

fn three_squares() -> Vec<ConvexPolygon> {
    vec![square(0, 0, 2), square(5, 0, 2), square(0, 5, 2)]
}

fn line(a: i64, b: i64, c: i64) -> DirectedLine {
    DirectedLine::from_integers(a.into(), b.into(), c.into()).unwrap()
}

#[test]
fn counts_for_vertical_line() {
    // 2x = 7
    let counts = count_sides_of_line(&three_squares(), &line(2, 0, 7));
    assert_eq!(counts.max(), 2);
    assert_eq!(counts.left + counts.right, 3);
}

#[test]
fn counts_for_slanted_line() {
    // 3x + y = 9 cuts through the top square
    let counts = count_sides_of_line(&three_squares(), &line(3, 1, 9));
    assert_eq!((counts.left, counts.right), (1, 1));
    assert!(separates(&three_squares()[0], &three_squares()[1], &line(3, 1, 9)));
}

#[test]
fn touching_counts_on_both_sides() {
    let sets = vec![square(0, 0, 1), square(1, 0, 1)];
    let l = line_through(&Point2::from_i64(1, 0), &Point2::from_i64(1, 1)).unwrap();
    assert_eq!(count_sides_of_line(&sets, &l), SideCounts { left: 1, right: 1 });
}

#[test]
fn minmax_on_three_squares() {
    let sets = three_squares();
    let m = minmax_separating_line(&sets, 0, 1).unwrap();
    assert_eq!(m.g, 1);
    assert_eq!(m.counts.max(), 1);
    assert!(separates(&sets[0], &sets[1], &m.line));
    // the bottom-left and top squares can also be split off alone
    assert_eq!(minmax_separating_line(&sets, 0, 2).unwrap().g, 1);
    // and every pair agrees with the all-pairs search
    let all = all_minmax_lines(&sets).unwrap();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let single = minmax_separating_line(&sets, i, j).unwrap();
        assert_eq!(all.get(i, j), &single);
    }
}

#[test]
fn minmax_rejects_bad_pairs() {
    let sets = three_squares();
    assert!(minmax_separating_line(&sets, 1, 1).is_err());
    assert!(minmax_separating_line(&sets, 0, 3).is_err());
}

#[test]
fn collinear_row_forces_big_side() {
    // thin slabs in a row: any line separating the two middle ones that
    // is not vertical crosses nothing, but vertical ones leave half behind
    let sets: Vec<ConvexPolygon> = (0..6)
        .map(|k| ConvexPolygon::from_i64(&[(3 * k, 0), (3 * k + 1, 0), (3 * k + 1, 100), (3 * k, 100)]).unwrap())
        .collect();
    let m = minmax_separating_line(&sets, 2, 3).unwrap();
    assert_eq!(m.g, 3);
    let m = minmax_separating_line(&sets, 0, 5).unwrap();
    // a steep diagonal through the slabs still separates 0 and 5
    assert!(m.g >= 1);
    assert!(separates(&sets[0], &sets[5], &m.line));
}

#[test]
fn candidate_lines_are_canonical_and_distinct() {
    let lines = candidate_lines(&three_squares());
    assert!(!lines.is_empty());
    for w in lines.windows(2) {
        assert!(w[0] < w[1]);
    }
    for l in &lines {
        assert_eq!(&DirectedLine::from_integers(l.a().clone(), l.b().clone(), l.c().clone()).unwrap(), l);
    }
}

#[test]
fn bounding_triangle_contains_everything_strictly() {
    let sets = three_squares();
    let t = bounding_triangle(&sets).unwrap();
    assert_eq!(t.len(), 3);
    for s in &sets {
        for v in s.vertices() {
            assert!(t.contains_point_strictly(v));
        }
    }
}

#[test]
fn clipped_cells_cover_their_sets_and_do_not_overlap() {
    let sets = three_squares();
    let lines = all_minmax_lines(&sets).unwrap();
    let t = bounding_triangle(&sets).unwrap();
    let cells = build_clipped_polygons(&sets, &t, &lines).unwrap();
    for (i, c) in cells.iter().enumerate() {
        assert!(sets[i].vertices().iter().all(|v| c.polygon.contains_point(v)));
        for (k, src) in c.sources.iter().enumerate() {
            let (a, b) = c.polygon.side(k);
            let side_line = line_through(a, b).unwrap();
            match *src {
                SideSource::Triangle(s) => {
                    let (p, q) = t.side(s);
                    assert_eq!(side_line, line_through(p, q).unwrap());
                }
                SideSource::Separator(j) => assert_eq!(side_line, lines.get(i, j).line),
            }
        }
    }
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            assert!(!crate::geometry::interiors_intersect(&cells[i].polygon, &cells[j].polygon));
        }
    }
}

#[test]
fn solve_two_sets() {
    let sets = vec![square(0, 0, 1), square(4, 4, 1)];
    let cert = solve(&sets).unwrap();
    assert_eq!(cert.pair, (0, 1));
    assert_eq!(cert.guarantee, 1);
    assert!(cert.cover.is_none());
}

#[test]
fn solve_three_squares() {
    let sets = three_squares();
    let cert = solve(&sets).unwrap();
    assert!(cert.guarantee >= 1);
    let (i, j) = cert.pair;
    assert!(separates(&sets[i], &sets[j], &cert.witness.line));
    let toward_i = cert.witness.halfplane_toward(&sets, i);
    assert_ne!(toward_i.side, side_holding(&sets[j], &cert.witness.line).unwrap());
    let _ = HalfSide::Left;
}

#[test]
fn solve_row_of_nineteen() {
    let sets: Vec<ConvexPolygon> = (0..19).map(|k| square(3 * k, 0, 1)).collect();
    let cert = solve(&sets).unwrap();
    assert!(cert.guarantee >= 2);
    let sep = cert.separator.as_ref().unwrap();
    assert!(cert.guarantee >= sep.degree);
}

#[test]
fn solve_rejects_overlap_and_singletons() {
    assert!(solve(&[square(0, 0, 1)]).is_err());
    assert!(matches!(solve(&[square(0, 0, 2), square(1, 1, 2)]), Err(Error::Overlap { .. })));
}

//! Reference drawings of small graphs, stored in `fixtures/drawings`.

use super::format::parse;
use super::OneDrawing;

macro_rules! fixture {
    ($(#[$m:meta])* $name:ident, $text:ident, $file:literal) => {
        pub const $text: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/drawings/", $file));

        $(#[$m])*
        pub fn $name() -> OneDrawing {
            parse($text).expect(concat!("fixture ", $file, " parses"))
        }
    };
}

fixture!(
    /// `K_6` with three crossings inside two nested triangles.
    k6, K6_TEXT, "k6.1d");
fixture!(
    /// `K_3 + C_4` with apex 0 and four crossings.
    k3_c4, K3_C4_TEXT, "k3_c4.1d");
fixture!(
    /// `K_{2,2,2,2}` on a cube skeleton with six crossings.
    k2222, K2222_TEXT, "k2222.1d");
fixture!(
    /// `K_2 + complement(P_6)` with five crossings.
    k2_p6c, K2_P6C_TEXT, "k2_p6c.1d");
fixture!(
    /// `K_3 + complement(K_{1,3})`, rich drawing.
    k3_k13c_rich, K3_K13C_RICH_TEXT, "k3_k13c_rich.1d");
fixture!(
    /// `K_3 + complement(K_{1,3})`, simple but not rich.
    k3_k13c_not_rich, K3_K13C_NOT_RICH_TEXT, "k3_k13c_not_rich.1d");
fixture!(
    /// `K_3 + complement(K_2)` with the separating triangle facial.
    k3_k2c, K3_K2C_TEXT, "k3_k2c.1d");
fixture!(
    /// `K_5` with one crossing.
    k5, K5_TEXT, "k5.1d");
fixture!(
    /// A 2-drawing of `K_7`; it parses but is not a 1-drawing.
    k7_two_drawing, K7_TWO_DRAWING_TEXT, "k7_two_drawing.1d");

/// All stored 1-drawings with their names.
pub fn one_drawings() -> Vec<(&'static str, OneDrawing)> {
    vec![
        ("k6", k6()),
        ("k3_c4", k3_c4()),
        ("k2222", k2222()),
        ("k2_p6c", k2_p6c()),
        ("k3_k13c_rich", k3_k13c_rich()),
        ("k3_k13c_not_rich", k3_k13c_not_rich()),
        ("k3_k2c", k3_k2c()),
        ("k5", k5()),
    ]
}

#[cfg(test)]
mod tests {
    use super::super::format::write;
    use super::super::Violation;
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::graph::*;

    #[test]
    fn fixtures_validate_and_round_trip() {
        for (name, d) in one_drawings() {
            assert_eq!(d.validate(), Ok(()), "{name}");
            assert!(d.is_simple(), "{name}");
            assert!(d.crossing_count() + 2 <= d.graph().n(), "{name}");
        }
        for text in [K6_TEXT, K3_C4_TEXT, K2222_TEXT, K2_P6C_TEXT, K3_K13C_RICH_TEXT, K3_K13C_NOT_RICH_TEXT, K3_K2C_TEXT, K5_TEXT, K7_TWO_DRAWING_TEXT] {
            assert_eq!(write(&parse(text).unwrap()), text);
        }
    }

    #[test]
    fn fixture_graphs() {
        let k3 = complete(3).unwrap();
        assert!(is_isomorphic(k6().graph(), &complete(6).unwrap()));
        assert!(is_isomorphic(k3_c4().graph(), &join(&k3, &cycle(4).unwrap()).unwrap()));
        assert!(is_isomorphic(k2222().graph(), &complete_multipartite(&[2, 2, 2, 2]).unwrap()));
        let p6c = complement(&path(6).unwrap());
        assert!(is_isomorphic(k2_p6c().graph(), &join(&complete(2).unwrap(), &p6c).unwrap()));
        let k13c = complement(&complete_multipartite(&[1, 3]).unwrap());
        assert!(is_isomorphic(k3_k13c_rich().graph(), &join(&k3, &k13c).unwrap()));
        assert!(is_isomorphic(k3_k13c_not_rich().graph(), k3_k13c_rich().graph()));
        assert!(is_isomorphic(k3_k2c().graph(), &join(&k3, &Graph::empty(2).unwrap()).unwrap()));
        assert!(is_isomorphic(k5().graph(), &complete(5).unwrap()));
    }

    #[test]
    fn richness() {
        assert!(k3_k13c_rich().is_rich());
        assert!(!k3_k13c_not_rich().is_rich());
        for d in [k6(), k3_c4(), k2222(), k2_p6c()] {
            assert!(d.is_rich());
        }
    }

    #[test]
    fn facial_triangles() {
        let t = k6().facial_triangles();
        assert_eq!(t.len(), 2);
        assert!(t[0].intersection(t[1]).is_empty());
        assert_eq!(k3_c4().facial_triangles().len(), 2);
        assert_eq!(k2222().facial_triangles().len(), 0);
        assert_eq!(k2_p6c().facial_triangles().len(), 2);
        assert!(k3_k2c().facial_triangles().contains(&crate::VertexSet::from_slice(&[0, 1, 2])));
    }

    #[test]
    fn two_drawing_is_only_syntax() {
        let d = k7_two_drawing();
        assert_eq!(d.crossing_count(), 9);
        assert!(matches!(d.validate(), Err(Violation::Matching(_))));
    }

    #[test]
    fn skeletons() {
        let (s, _) = k6().true_planar_skeleton();
        let prism = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap();
        assert!(is_isomorphic(&s, &prism));
        let (s, emb) = k2_p6c().true_planar_skeleton();
        assert_eq!(s.m(), 13);
        let mut degrees: Vec<usize> = emb.faces().iter().map(|f| f.len()).collect();
        degrees.sort();
        assert_eq!(degrees, vec![3, 3, 4, 4, 4, 4, 4]);
        let (s, _) = k2222().true_planar_skeleton();
        assert!(is_isomorphic(&s, &cube()));
    }

    #[test]
    fn skeleton_separators() {
        assert!(k6().skeleton_separating_triangles().is_empty());
        assert!(k2_p6c().skeleton_separating_triangles().is_empty());
    }
}

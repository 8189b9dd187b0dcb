//! Small cubic cages used as ingredients, stored as graph6.

use crate::graph::Graph;
use crate::graph6;

/// `(3,4)`-cage `K_{3,3}`.
pub const K33: &str = "EFz_";
/// `(3,5)`-cage, the Petersen graph.
pub const PETERSEN: &str = "IheA@GUAo";
/// `(3,6)`-cage, the Heawood graph.
pub const HEAWOOD: &str = "MhEGHC@AI?_PC@_G_";
/// `(3,7)`-cage, the McGee graph.
pub const MCGEE: &str = "WhCGGD@?G?`@_@??_GG_@??C?GGC?H??C?@@?C?GG??o?@@";
/// `(3,8)`-cage, the Tutte-Coxeter graph.
pub const TUTTE_COXETER: &str = "]hCGGC@GG?_@?@A?_?G@@??E??GG?G?OC??@??GI???_O?@?@?@??A?a???G??@@?O??E?A??G";

/// The bundled cubic cage of girth `g`, for `4 <= g <= 8`.
pub fn cubic_cage(g: usize) -> Option<Graph> {
    let s = match g {
        4 => K33,
        5 => PETERSEN,
        6 => HEAWOOD,
        7 => MCGEE,
        8 => TUTTE_COXETER,
        _ => return None,
    };
    Some(graph6::decode(s).expect("bundled graph6 is valid"))
}

//! Bundled knots: table diagrams (Rolfsen names, standard PD codes), braid
//! closures of the same knots for Reidemeister comparisons, and the 10-knot
//! batch table.

use crate::diagram::{braid_closure, parse_pd, KnotDiagram};
use crate::pretzel::{pretzel_diagram, PretzelParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableKnot {
    pub name: &'static str,
    pub pd: &'static str,
    pub crossing_number: usize,
    pub alternating: bool,
}

pub const TABLE: &[TableKnot] = &[
    TableKnot {
        name: "3_1",
        pd: "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]",
        crossing_number: 3,
        alternating: true,
    },
    TableKnot {
        name: "4_1",
        pd: "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]",
        crossing_number: 4,
        alternating: true,
    },
    TableKnot {
        name: "5_1",
        pd: "X[1,6,2,7] X[3,8,4,9] X[5,10,6,1] X[7,2,8,3] X[9,4,10,5]",
        crossing_number: 5,
        alternating: true,
    },
    TableKnot {
        name: "5_2",
        pd: "X[1,4,2,5] X[3,8,4,9] X[5,10,6,1] X[9,6,10,7] X[7,2,8,3]",
        crossing_number: 5,
        alternating: true,
    },
    TableKnot {
        name: "6_1",
        pd: "X[1,4,2,5] X[7,10,8,11] X[3,9,4,8] X[9,3,10,2] X[5,12,6,1] X[11,6,12,7]",
        crossing_number: 6,
        alternating: true,
    },
    TableKnot {
        name: "6_2",
        pd: "X[1,4,2,5] X[5,10,6,11] X[3,9,4,8] X[9,3,10,2] X[7,12,8,1] X[11,6,12,7]",
        crossing_number: 6,
        alternating: true,
    },
    TableKnot {
        name: "6_3",
        pd: "X[4,2,5,1] X[8,4,9,3] X[12,9,1,10] X[10,5,11,6] X[6,11,7,12] X[2,8,3,7]",
        crossing_number: 6,
        alternating: true,
    },
    TableKnot {
        name: "7_1",
        pd:
            "X[1,8,2,9] X[3,10,4,11] X[5,12,6,13] X[7,14,8,1] X[9,2,10,3] X[11,4,12,5] X[13,6,14,7]",
        crossing_number: 7,
        alternating: true,
    },
];

/// Braid words whose closures are the table knots up to mirror image.
pub const BRAIDS: &[(&str, &[i32])] = &[
    ("3_1", &[1, 1, 1]),
    ("4_1", &[1, -2, 1, -2]),
    ("5_1", &[1, 1, 1, 1, 1]),
    ("5_2", &[1, 1, 1, 2, -1, 2]),
    ("6_1", &[1, 1, 2, -1, -3, 2, -3]),
    ("6_2", &[1, 1, 1, -2, 1, -2]),
    ("6_3", &[1, 1, -2, 1, -2, -2]),
];

pub fn table_knot(name: &str) -> Option<&'static TableKnot> {
    TABLE.iter().find(|k| k.name == name)
}

impl TableKnot {
    pub fn diagram(&self) -> KnotDiagram {
        parse_pd(self.pd)
            .expect("bundled PD codes are valid")
            .with_name(self.name)
    }
}

/// Standard figure-eight diagram.
pub fn figure_eight() -> KnotDiagram {
    table_knot("4_1").unwrap().diagram()
}

/// Braid-closure diagram of a table knot, if one is bundled.
pub fn braid_diagram(name: &str) -> Option<KnotDiagram> {
    let (_, word) = BRAIDS.iter().find(|(n, _)| *n == name)?;
    Some(
        braid_closure(word)
            .expect("bundled braids close to knots")
            .with_name(format!("{name} (braid)")),
    )
}

/// Looks up a bundled knot: a table name, `U`/`unknot`, or `P(r,s,t)`.
pub fn lookup(name: &str) -> Option<KnotDiagram> {
    let trimmed = name.trim();
    if trimmed.eq_ignore_ascii_case("u") || trimmed.eq_ignore_ascii_case("unknot") {
        return Some(KnotDiagram::unknot().with_name("unknot"));
    }
    if let Some(k) = table_knot(trimmed) {
        return Some(k.diagram());
    }
    let inner = trimmed.strip_prefix("P(")?.strip_suffix(')')?;
    let v: Vec<i64> = inner
        .split(',')
        .map(|x| x.trim().parse().ok())
        .collect::<Option<_>>()?;
    match v[..] {
        [r, s, t] => pretzel_diagram(PretzelParams::new(r, s, t)).ok(),
        _ => None,
    }
}

/// The bundled batch: eight table knots and two pretzel knots.
pub fn batch_table() -> Vec<KnotDiagram> {
    let mut out: Vec<KnotDiagram> = TABLE.iter().map(TableKnot::diagram).collect();
    for p in [PretzelParams::new(-1, 3, 3), PretzelParams::new(-2, 3, 7)] {
        out.push(pretzel_diagram(p).expect("bundled pretzel parameters give knots"));
    }
    out
}

/// `name,pd` CSV of [`batch_table`].
pub fn batch_csv() -> String {
    let mut s = String::from("name,pd\n");
    for d in batch_table() {
        s.push_str(&format!(
            "\"{}\",\"{}\"\n",
            d.name().unwrap_or(""),
            d.to_pd()
        ));
    }
    s
}

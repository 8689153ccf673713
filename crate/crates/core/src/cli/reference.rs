//! Published reference values shipped in `data/`.

use num_bigint::BigUint;

use crate::family::FamilySpec;

/// Which exact sequences a table lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    /// `z_N`, and `y_N` when the file carries a `y_half` column.
    Series,
    /// One-sided rigid counts `g_N`.
    OneSidedG,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceTable {
    pub id: &'static str,
    pub family: FamilySpec,
    pub kind: TableKind,
    pub provenance: &'static str,
    pub z: Vec<BigUint>,
    /// Full `y_N`; files store `y_N / 2`.
    pub y: Option<Vec<BigUint>>,
    pub g: Vec<BigUint>,
}

impl ReferenceTable {
    pub fn len(&self) -> usize {
        match self.kind {
            TableKind::Series => self.z.len(),
            TableKind::OneSidedG => self.g.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The `N` cap used by `verify fast`.
    pub fn fast_cap(&self) -> usize {
        let cap = match self.id {
            "regular3" => 12,
            "rigid6_g" => 10,
            _ => 6,
        };
        cap.min(self.len())
    }
}

struct Source {
    id: &'static str,
    family: &'static str,
    kind: TableKind,
    provenance: &'static str,
    csv: &'static str,
}

const SOURCES: &[Source] = &[
    Source {
        id: "regular3",
        family: "regular:3",
        kind: TableKind::Series,
        provenance: "3-regular bicolored maps, z_N and y_N/2 for N <= 34; z_N is OEIS A116456",
        csv: include_str!("../../data/regular3.csv"),
    },
    Source {
        id: "regular4",
        family: "regular:4",
        kind: TableKind::Series,
        provenance: "4-regular bicolored maps, z_N and y_N/2 for N <= 19",
        csv: include_str!("../../data/regular4.csv"),
    },
    Source {
        id: "regular5",
        family: "regular:5",
        kind: TableKind::Series,
        provenance: "5-regular bicolored maps, z_N for N <= 14",
        csv: include_str!("../../data/regular5.csv"),
    },
    Source {
        id: "regular6",
        family: "regular:6",
        kind: TableKind::Series,
        provenance: "6-regular bicolored maps, z_N for N <= 11",
        csv: include_str!("../../data/regular6.csv"),
    },
    Source {
        id: "regular7",
        family: "regular:7",
        kind: TableKind::Series,
        provenance: "7-regular bicolored maps, z_N for N <= 9",
        csv: include_str!("../../data/regular7.csv"),
    },
    Source {
        id: "mixed23",
        family: "mixed:2=1,3=1",
        kind: TableKind::Series,
        provenance: "bicolored maps with valencies 2 and 3, z_N and y_N/2 for N <= 31",
        csv: include_str!("../../data/mixed23.csv"),
    },
    Source {
        id: "mixed24",
        family: "mixed:2=1,4=1",
        kind: TableKind::Series,
        provenance: "bicolored maps with valencies 2 and 4, z_N for N <= 18",
        csv: include_str!("../../data/mixed24.csv"),
    },
    Source {
        id: "mixed34",
        family: "mixed:3=1,4=1",
        kind: TableKind::Series,
        provenance: "bicolored maps with valencies 3 and 4, z_N and y_N/2 for N <= 16",
        csv: include_str!("../../data/mixed34.csv"),
    },
    Source {
        id: "rigid6_g",
        family: "rigid:6",
        kind: TableKind::OneSidedG,
        provenance: "rigid 6-regular maps, one-sided g_N for N <= 30",
        csv: include_str!("../../data/rigid6_g.csv"),
    },
];

fn parse(source: &Source) -> ReferenceTable {
    let mut lines = source.csv.lines();
    let header: Vec<&str> = lines.next().expect("header row").split(',').collect();
    let mut columns: Vec<Vec<BigUint>> = vec![Vec::new(); header.len() - 1];
    for (k, line) in lines.filter(|l| !l.trim().is_empty()).enumerate() {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(
            cells[0].parse::<usize>().ok(),
            Some(k + 1),
            "{}: row {}",
            source.id,
            k + 1
        );
        for (col, cell) in columns.iter_mut().zip(&cells[1..]) {
            col.push(cell.trim().parse().expect("decimal integer"));
        }
    }
    let column = |name: &str| {
        header
            .iter()
            .position(|h| *h == name)
            .map(|i| columns[i - 1].clone())
    };
    ReferenceTable {
        id: source.id,
        family: source.family.parse().expect("valid family"),
        kind: source.kind,
        provenance: source.provenance,
        z: column("z").unwrap_or_default(),
        y: column("y_half").map(|v| v.into_iter().map(|x| x * 2u32).collect()),
        g: column("g").unwrap_or_default(),
    }
}

pub fn reference_tables() -> Vec<ReferenceTable> {
    SOURCES.iter().map(parse).collect()
}

pub fn reference_table(id: &str) -> Option<ReferenceTable> {
    SOURCES.iter().find(|s| s.id == id).map(parse)
}

pub fn table_ids() -> Vec<&'static str> {
    SOURCES.iter().map(|s| s.id).collect()
}

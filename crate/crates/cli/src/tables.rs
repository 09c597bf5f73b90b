//! Published reference tables, rows indexed by `n` and columns by `m`.
//! A cell that the source leaves empty is `None`.

use hardpart::Family;

/// Integer-valued table (alternating sums).
#[derive(Clone, Debug)]
pub struct ZTable {
    pub id: u8,
    pub title: &'static str,
    pub family: Family,
    pub ms: Vec<usize>,
    pub rows: Vec<(usize, Vec<Option<i128>>)>,
}

/// Homology table: each cell lists `(k, d)` with `H_k = Z^d`.
#[derive(Clone, Debug)]
pub struct HTable {
    pub id: u8,
    pub title: &'static str,
    pub family: Family,
    pub ms: Vec<usize>,
    pub rows: Vec<(usize, Vec<Option<Vec<(isize, u64)>>>)>,
}

impl ZTable {
    pub fn get(&self, m: usize, n: usize) -> Option<i128> {
        let col = self.ms.iter().position(|&x| x == m)?;
        self.rows.iter().find(|r| r.0 == n).and_then(|r| r.1.get(col).copied().flatten())
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, i128)> + '_ {
        self.rows.iter().flat_map(move |(n, vals)| vals.iter().zip(&self.ms).filter_map(move |(v, &m)| v.map(|v| (m, *n, v))))
    }
}

impl HTable {
    pub fn get(&self, m: usize, n: usize) -> Option<&[(isize, u64)]> {
        let col = self.ms.iter().position(|&x| x == m)?;
        self.rows.iter().find(|r| r.0 == n).and_then(|r| r.1.get(col)).and_then(|c| c.as_deref())
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, &[(isize, u64)])> + '_ {
        self.rows.iter().flat_map(move |(n, vals)| vals.iter().zip(&self.ms).filter_map(move |(v, &m)| v.as_deref().map(|v| (m, *n, v))))
    }
}

fn z_rows(rows: &[(usize, &[i128])]) -> Vec<(usize, Vec<Option<i128>>)> {
    rows.iter().map(|(n, v)| (*n, v.iter().map(|&x| Some(x)).collect())).collect()
}

/// Parse `"(2,3) (5,1)|(4,1)"`: cells split on `|`, groups inside a cell on
/// spaces.
fn h_row(s: &str) -> Vec<Option<Vec<(isize, u64)>>> {
    s.split('|')
        .map(|cell| {
            let groups: Vec<(isize, u64)> = cell
                .split_whitespace()
                .map(|g| {
                    let (k, d) = g.trim_matches(|c| c == '(' || c == ')').split_once(',').expect("(k,d)");
                    (k.parse().expect("k"), d.parse().expect("d"))
                })
                .collect();
            (!groups.is_empty()).then_some(groups)
        })
        .collect()
}

pub fn table1() -> HTable {
    HTable {
        id: 1,
        title: "Homology of I(C_{m,n}), n even",
        family: Family::SquareCyl,
        ms: (1..=8).collect(),
        rows: vec![
            (2, h_row("(0,1)|(0,1)|(1,1)|(1,1)|(2,1)|(2,1)|(3,1)|(3,1)")),
            (4, h_row("(0,1)|(1,3)|(2,3)|(3,5)|(4,5)|(5,7)|(6,7)|(7,9)")),
            (6, h_row("(1,2)|(2,1)|(3,1)|(5,4)|(6,1)|(7,1) (8,2)|(9,4)|(11,7)")),
            (8, h_row("(2,1)|(3,3)|(5,5)|(7,5)|(8,1) (9,4)|(11,7)")),
            (10, h_row("(2,1)|(4,1)|(7,1)|(8,1) (9,2)")),
            (12, h_row("(3,2)|(5,3)|(8,3)|(11,8)")),
            (14, h_row("(4,1)|(6,1)|(9,1)")),
        ],
    }
}

pub fn table2() -> HTable {
    HTable {
        id: 2,
        title: "Homology of I(C_{m,n}), n odd",
        family: Family::SquareCyl,
        ms: (1..=11).collect(),
        rows: vec![
            (3, h_row("(0,2)|(1,1)|(1,1)|(2,2)|(3,1)|(3,1)|(4,2)|(5,1)|(5,1)|(6,2)|(7,1)")),
            (5, h_row("(1,1)|(1,1)|(3,1)|(3,1)|(5,1)|(5,1)|(7,1)|(7,1)|(9,1)|(9,1)")),
            (7, h_row("(1,1)|(3,1)|(5,1)|(5,1)|(7,1)|(9,1)|(11,1)")),
            (9, h_row("(2,2)|(3,1)|(5,1)|(7,1) (8,3)|(9,1)")),
            (11, h_row("(3,1)|(5,1)|(7,1)|(9,1)")),
            (13, h_row("(3,1)|(5,1)|(9,1)")),
            (15, h_row("(4,2)|(7,1)|(11,1)")),
            (17, h_row("(5,1)|(7,1)")),
            (19, h_row("(5,1)|(9,1)")),
        ],
    }
}

pub fn table3() -> ZTable {
    ZTable {
        id: 3,
        title: "Z(C_{m,n}), n even",
        family: Family::SquareCyl,
        ms: (1..=11).collect(),
        rows: z_rows(&[
            (2, &[-1, -1, 1, 1, -1, -1, 1, 1, -1, -1, 1]),
            (4, &[-1, 3, -3, 5, -5, 7, -7, 9, -9, 11, -11]),
            (6, &[2, -1, 1, 4, -1, -1, 4, 1, -1, 2, 1]),
            (8, &[-1, 3, 5, 5, 3, 7, 1, 1, -1, 3, -3]),
            (10, &[-1, -1, 1, 1, 9, -1, 1, 1, -11, -1, 1]),
            (12, &[2, 3, -3, 8, -5, 7, 8, 9, -9, 14, -11]),
            (14, &[-1, -1, 1, 1, -1, 13, 1, 1, 13, -1, 15]),
            (16, &[-1, 3, 5, 5, 3, 7, 1, 33, -1, 3, 13]),
            (18, &[2, -1, 1, 4, -1, -1, 22, 1, -1, 38, 1]),
            (20, &[-1, 3, -3, 5, 5, 7, -7, 9, 41, 11, -11]),
            (22, &[-1, -1, 1, 1, -1, -1, 1, 23, -1, -1, 89]),
            (24, &[2, 3, 5, 8, 3, 7, 16, 1, -1, 78, -3]),
        ]),
    }
}

pub fn table5() -> HTable {
    HTable {
        id: 5,
        title: "Homology of I(C^H_{m,n})",
        family: Family::HexCyl,
        ms: (2..=8).collect(),
        rows: vec![
            (2, h_row("(2,3)|(3,5)|(4,8)|(5,13)|(6,21)|(7,34)|(8,55)")),
            (3, h_row("(4,5)|(6,7)|(7,3)|(9,22)|(11,23)|(12,24)")),
            (4, h_row("(6,3)|(7,4) (9,1)|(10,8)|(11,8) (13,5)")),
            (5, h_row("(7,6)|(10,11)")),
            (6, h_row("(9,15)|(11,4) (13,13)")),
            (7, h_row("(11,8)")),
            (8, h_row("(12,19)")),
        ],
    }
}

pub fn table6() -> ZTable {
    ZTable {
        id: 6,
        title: "Z(C^H_{m,n})",
        family: Family::HexCyl,
        ms: (1..=12).collect(),
        rows: z_rows(&[
            (1, &[0, 1, -1, 0, 1, -1, 0, 1, -1, 0, 1, -1]),
            (2, &[2, -3, 5, -8, 13, -21, 34, -55, 89, -144, 233, -377]),
            (3, &[0, -5, -7, 3, 22, 23, -24, -92, -67, 141, 367, 152]),
            (4, &[2, -3, 5, -8, 13, -21, 34, -55, 89, -144, 233, -377]),
            (5, &[0, 6, -11, -5, 51, -76, -60, 416, -536, -655, 3351, -3646]),
            (6, &[2, 15, 17, 55, 160, 231, 886, 1664, 3947, 11121, 21065, 59296]),
            (7, &[0, 8, -15, -35, 57, 34, -42, 687, 20, -4207, -2379, 3611]),
            (8, &[2, -19, 37, -88, 533, -725, 3466, -11927, 21417, -105552, 273881, -682665]),
            (9, &[0, -41, -43, 183, 958, 941, -9924, -22943, 19265, 289806, 587437, -1949599]),
        ]),
    }
}

pub fn table7() -> HTable {
    HTable {
        id: 7,
        title: "Homology of I(T^H_{m,n})",
        family: Family::HexTorus,
        ms: (2..=8).collect(),
        rows: vec![
            (2, h_row("(1,3)|(2,4)|(3,7)|(4,11)|(5,18)|(6,29)|(7,47)")),
            (3, h_row("(2,4)|(4,10)|(6,4)|(7,17)|(9,32)|(10,1) (11,3)|(12,76)")),
            (4, h_row("(3,7)|(6,4)|(7,15)|(9,1) (10,12)|(11,20) (12,1) (13,3)")),
        ],
    }
}

pub fn table8() -> ZTable {
    ZTable {
        id: 8,
        title: "Z(T^H_{m,n})",
        family: Family::HexTorus,
        ms: (1..=7).collect(),
        rows: z_rows(&[
            (1, &[-1, -1, 2, -1, -1, 2, -1]),
            (2, &[-1, 3, -4, 7, -11, 18, -29]),
            (3, &[2, -4, -10, -4, 17, 32, 2]),
            (4, &[-1, 7, -4, 15, -11, 22, -29]),
            (5, &[-1, -11, 17, -11, -51, 127, -36]),
            (6, &[2, 18, 32, 22, 127, 192, 394]),
            (7, &[-1, -29, 2, -29, -36, 394, 552]),
            (8, &[-1, 47, -76, 55, -411, 1478, 83]),
        ]),
    }
}

/// Residual sums over the odd-interval singleton classes; blank cells are 0.
pub fn table9() -> ZTable {
    ZTable {
        id: 9,
        title: "Residual Q2 sums on C_{m,n}",
        family: Family::SquareCyl,
        ms: (1..=11).collect(),
        rows: z_rows(&[
            (2, &[0; 11]),
            (4, &[0; 11]),
            (6, &[0; 11]),
            (8, &[0, 0, 8, 0, 8, 0, 8, -8, 8, -8, 8]),
            (10, &[0, 0, 0, 0, 10, 0, 0, 0, -10, 0, 0]),
            (12, &[0, 0, 0, 0, 0, 0, 12, 0, 0, 0, 0]),
            (14, &[0, 0, 0, 0, 0, 14, 0, 0, 14, 0, 14]),
            (16, &[0, 0, 8, 0, 8, 0, 8, 24, 8, -8, 24]),
            (18, &[0, 0, 0, 0, 0, 0, 18, 0, 0, 36, 0]),
            (20, &[0, 0, 0, 0, 10, 0, 0, 0, 50, 0, 0]),
            (22, &[0, 0, 0, 0, 0, 0, 0, 22, 0, 0, 88]),
            (24, &[0, 0, 8, 0, 8, 0, 20, -8, 8, 64, 8]),
        ]),
    }
}

pub fn z_table(id: u8) -> Option<ZTable> {
    match id {
        3 => Some(table3()),
        6 => Some(table6()),
        8 => Some(table8()),
        9 => Some(table9()),
        _ => None,
    }
}

pub fn h_table(id: u8) -> Option<HTable> {
    match id {
        1 => Some(table1()),
        2 => Some(table2()),
        5 => Some(table5()),
        7 => Some(table7()),
        _ => None,
    }
}

/// Z(C_{m,6}) for m = 1..=12; the sequence repeats with period 12.
pub const Z_C6_PERIOD: [i128; 12] = [2, -1, 1, 4, -1, -1, 4, 1, -1, 2, 1, 1];

use std::collections::BTreeMap;

use crate::algebra::{ParameterSpace, Poly, Rational};

/// A printed value that disagrees with first-principles computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableErratum {
    pub id: &'static str,
    pub printed: Poly,
    pub corrected: Poly,
}

/// A component table as printed, completed by its symmetries. Indices are
/// 0-based; `name` is the prefix used in reports (`F`, `tR`, ...).
#[derive(Debug, Clone)]
pub struct Table {
    pub name: &'static str,
    pub rank: usize,
    pub entries: BTreeMap<Vec<usize>, Poly>,
    pub errata: BTreeMap<Vec<usize>, TableErratum>,
}

impl Table {
    fn new(name: &'static str, rank: usize) -> Self {
        Self {
            name,
            rank,
            entries: BTreeMap::new(),
            errata: BTreeMap::new(),
        }
    }

    /// Printed value of a 1-based component, `None` when unlisted.
    pub fn lookup(&self, idx: &[usize]) -> Option<&Poly> {
        self.entries.get(&idx.iter().map(|i| i - 1).collect::<Vec<_>>())
    }

    /// Corrected value of a 1-based component: the printed value unless an
    /// erratum replaces it.
    pub fn corrected(&self, idx: &[usize]) -> Option<&Poly> {
        let key: Vec<usize> = idx.iter().map(|i| i - 1).collect();
        match self.errata.get(&key) {
            Some(e) => Some(&e.corrected),
            None => self.entries.get(&key),
        }
    }

    /// Component name as used in reports, e.g. `R_1441`.
    pub fn component_name(&self, idx: &[usize]) -> String {
        let digits: String = idx.iter().map(|i| (i + 1).to_string()).collect();
        format!("{}_{}", self.name, digits)
    }

    fn insert(&mut self, idx: Vec<usize>, value: Poly) {
        if let Some(old) = self.entries.get(&idx) {
            assert_eq!(*old, value, "inconsistent completion of {} at {:?}", self.name, idx);
        }
        self.entries.insert(idx, value);
    }

    /// Insert with the `F(x,y,z) = F(x,z,y)` completion.
    fn insert_f(&mut self, idx: [usize; 3], value: Poly) {
        let [x, y, z] = idx;
        self.insert(vec![x, z, y], value.clone());
        self.insert(vec![x, y, z], value);
    }

    /// Insert with the full orbit of curvature-type symmetries.
    fn insert_curvature(&mut self, idx: [usize; 4], value: Poly) {
        for (key, sign) in curvature_orbit(idx) {
            let v = if sign { value.clone() } else { -&value };
            if v.is_zero() || key[0] == key[1] || key[2] == key[3] {
                continue;
            }
            self.insert(key, v);
        }
    }

    fn mark_curvature_erratum(&mut self, idx: [usize; 4], id: &'static str, printed: &Poly, corrected: &Poly) {
        for (key, sign) in curvature_orbit(idx) {
            let (p, c) = if sign {
                (printed.clone(), corrected.clone())
            } else {
                (-printed, -corrected)
            };
            self.errata.insert(
                key,
                TableErratum {
                    id,
                    printed: p,
                    corrected: c,
                },
            );
        }
    }
}

/// `(index, same sign?)` for `R_ijst = -R_jist = -R_ijts = R_stij`.
fn curvature_orbit(idx: [usize; 4]) -> Vec<(Vec<usize>, bool)> {
    let [i, j, s, t] = idx;
    vec![
        (vec![i, j, s, t], true),
        (vec![j, i, s, t], false),
        (vec![i, j, t, s], false),
        (vec![j, i, t, s], true),
        (vec![s, t, i, j], true),
        (vec![t, s, i, j], false),
        (vec![s, t, j, i], false),
        (vec![t, s, j, i], true),
    ]
}

/// Closed-form scalar with an optional correction.
#[derive(Debug, Clone)]
pub struct ClosedForm {
    pub name: &'static str,
    pub printed: Poly,
    pub erratum: Option<TableErratum>,
}

impl ClosedForm {
    pub fn corrected(&self) -> &Poly {
        self.erratum.as_ref().map_or(&self.printed, |e| &e.corrected)
    }
}

/// Every printed table and closed form of the family.
#[derive(Debug, Clone)]
pub struct ExpectedTables {
    pub space: ParameterSpace,
    pub f: Table,
    pub f_tilde: Table,
    pub r: Table,
    pub r_tilde: Table,
    pub w_tilde: Table,
    pub closed_forms: Vec<ClosedForm>,
}

impl ExpectedTables {
    pub fn tables(&self) -> [&Table; 5] {
        [&self.f, &self.f_tilde, &self.r, &self.r_tilde, &self.w_tilde]
    }

    pub fn closed_form(&self, name: &str) -> Option<&ClosedForm> {
        self.closed_forms.iter().find(|c| c.name == name)
    }
}

fn idx<const N: usize>(digits: &str) -> [usize; N] {
    let v: Vec<usize> = digits.bytes().map(|b| (b - b'1') as usize).collect();
    v.try_into().expect("index width")
}

/// One printed chain `c1 F_a = c2 F_b = ... = value`.
fn f_chain(t: &mut Table, space: &ParameterSpace, value: &str, chain: &[(i64, &str)]) {
    let v = Poly::parse(space, value).expect("table literal");
    for &(coeff, digits) in chain {
        t.insert_f(idx(digits), v.scale(&Rational::new(1.into(), coeff.into())));
    }
}

fn p(space: &ParameterSpace, s: &str) -> Poly {
    Poly::parse(space, s).expect("table literal")
}

fn f_table(space: &ParameterSpace) -> Table {
    let mut t = Table::new("F", 3);
    #[rustfmt::skip]
    let rows: [(&str, &[(i64, &str)]); 4] = [
        ("l1", &[(-1, "122"), (-1, "144"), (2, "212"), (2, "221"), (2, "234"), (2, "243"), (2, "414"), (-2, "423"), (-2, "432"), (2, "441")]),
        ("l2", &[(2, "112"), (2, "121"), (2, "134"), (2, "143"), (-2, "211"), (-2, "233"), (-2, "314"), (2, "323"), (2, "332"), (-2, "341")]),
        ("l3", &[(2, "214"), (-2, "223"), (-2, "232"), (2, "241"), (1, "322"), (1, "344"), (-2, "412"), (-2, "421"), (-2, "434"), (-2, "443")]),
        ("l4", &[(-2, "114"), (2, "123"), (2, "132"), (-2, "141"), (-2, "312"), (-2, "321"), (-2, "334"), (-2, "343"), (1, "411"), (1, "433")]),
    ];
    for (value, chain) in rows {
        f_chain(&mut t, space, value, chain);
    }
    let (printed, corrected) = (p(space, "-1/2*l2"), p(space, "-l2"));
    for d in ["211", "233"] {
        t.errata.insert(
            idx::<3>(d).to_vec(),
            TableErratum {
                id: "E5",
                printed: printed.clone(),
                corrected: corrected.clone(),
            },
        );
    }
    t
}

fn f_tilde_table(space: &ParameterSpace) -> Table {
    let mut t = Table::new("tF", 3);
    #[rustfmt::skip]
    let rows: [(&str, &[(i64, &str)]); 4] = [
        ("l1", &[(-2, "214"), (2, "223"), (2, "232"), (-2, "241"), (-1, "322"), (-1, "344"), (2, "412"), (2, "421"), (2, "434"), (2, "443")]),
        ("l2", &[(2, "114"), (-2, "123"), (-2, "132"), (2, "141"), (2, "312"), (2, "321"), (2, "334"), (2, "343"), (-2, "411"), (-2, "433")]),
        ("l3", &[(-1, "122"), (-1, "144"), (2, "212"), (2, "221"), (2, "234"), (2, "243"), (2, "414"), (-2, "423"), (-2, "432"), (2, "441")]),
        ("l4", &[(2, "112"), (2, "121"), (2, "134"), (2, "143"), (-1, "211"), (-1, "233"), (-2, "314"), (2, "323"), (2, "332"), (-2, "341")]),
    ];
    for (value, chain) in rows {
        f_chain(&mut t, space, value, chain);
    }
    let (printed, corrected) = (p(space, "-1/2*l2"), p(space, "-l2"));
    for d in ["411", "433"] {
        t.errata.insert(
            idx::<3>(d).to_vec(),
            TableErratum {
                id: "E6",
                printed: printed.clone(),
                corrected: corrected.clone(),
            },
        );
    }
    t
}

fn curvature_table(name: &'static str, space: &ParameterSpace, reps: &[(&str, &str)]) -> Table {
    let mut t = Table::new(name, 4);
    for &(digits, value) in reps {
        t.insert_curvature(idx(digits), p(space, value));
    }
    t
}

fn r_table(space: &ParameterSpace) -> Table {
    let mut t = curvature_table(
        "R",
        space,
        &[
            ("1221", "-1/4*l1^2 - 1/4*l2^2"),
            ("1331", "1/4*l2^2 - 1/4*l4^2"),
            ("1441", "-1/4*l1^2 + 1/4*l4^2"),
            ("2332", "1/4*l2^2 - 1/4*l3^2"),
            ("2442", "1/4*l1^2 - 1/4*l3^2"),
            ("3443", "1/4*l3^2 + 1/4*l4^2"),
            ("1341", "-1/4*l1*l2"),
            ("2342", "-1/4*l1*l2"),
            ("2132", "1/4*l1*l3"),
            ("4134", "-1/4*l1*l3"),
            ("1231", "1/4*l1*l4"),
            ("4234", "-1/4*l1*l4"),
            ("2142", "1/4*l2*l3"),
            ("3143", "-1/4*l2*l3"),
            ("1241", "1/4*l2*l4"),
            ("3243", "-1/4*l2*l4"),
            ("3123", "1/4*l3*l4"),
            ("4124", "1/4*l3*l4"),
        ],
    );
    t.mark_curvature_erratum(
        idx("1441"),
        "E1",
        &p(space, "-1/4*l1^2 + 1/4*l4^2"),
        &p(space, "1/4*l1^2 - 1/4*l4^2"),
    );
    t
}

fn r_tilde_table(space: &ParameterSpace) -> Table {
    curvature_table(
        "tR",
        space,
        &[
            ("1221", "l1*l3 + l2*l4"),
            ("1441", "-l1*l3 - l2*l4"),
            ("2332", "-l1*l3 - l2*l4"),
            ("3443", "l1*l3 + l2*l4"),
            ("1331", "-1/2*l2*l4"),
            ("2442", "-1/2*l1*l3"),
            ("1234", "3/4*l1*l3 + 3/4*l2*l4"),
            ("1432", "3/4*l1*l3 + 3/4*l2*l4"),
            ("1241", "l1^2 + 1/2*l2^2 + 1/4*l3^2 - 1/2*l4^2"),
            ("2132", "1/2*l1^2 + l2^2 - 1/2*l3^2 + 1/4*l4^2"),
            ("4134", "-1/2*l1^2 + 1/4*l2^2 + 1/2*l3^2 + l4^2"),
            ("3243", "1/4*l1^2 - 1/2*l2^2 + l3^2 + 1/2*l4^2"),
            ("1231", "-1/2*l1*l2 - 3/4*l3*l4"),
            ("2142", "-1/2*l1*l2 - 3/4*l3*l4"),
            ("1341", "-1/2*l1*l4 + 3/4*l2*l3"),
            ("4124", "-1/2*l1*l4 + 3/4*l2*l3"),
            ("3143", "-3/4*l1*l2 - 1/2*l3*l4"),
            ("4234", "-3/4*l1*l2 - 1/2*l3*l4"),
            ("3123", "3/4*l1*l4 - 1/2*l2*l3"),
            ("2342", "3/4*l1*l4 - 1/2*l2*l3"),
        ],
    )
}

fn w_tilde_table(space: &ParameterSpace) -> Table {
    curvature_table(
        "tW",
        space,
        &[
            ("1221", "l1*l3 + l2*l4"),
            ("1441", "-l1*l3 - l2*l4"),
            ("2332", "-l1*l3 - l2*l4"),
            ("3443", "l1*l3 + l2*l4"),
            ("1234", "1/3*l1*l3 + 1/3*l2*l4"),
            ("1432", "1/3*l1*l3 + 1/3*l2*l4"),
            ("1331", "-2/3*l1*l3 - 2/3*l2*l4"),
            ("2442", "-2/3*l1*l3 - 2/3*l2*l4"),
        ],
    )
}

/// The printed tables of the family with symmetry completion and errata.
pub fn expected_tables() -> ExpectedTables {
    let space = ParameterSpace::family();
    let closed_forms = vec![
        ClosedForm {
            name: "tau",
            printed: p(&space, "-3/2*l1^2 - 3/2*l2^2 + 3/2*l3^2 + 3/2*l4^2"),
            erratum: None,
        },
        ClosedForm {
            name: "tau_tilde",
            printed: p(&space, "5*l1*l3 + 5*l2*l4"),
            erratum: Some(TableErratum {
                id: "E4",
                printed: p(&space, "5*l1*l3 + 5*l2*l4"),
                corrected: p(&space, "-5*l1*l3 - 5*l2*l4"),
            }),
        },
        ClosedForm {
            name: "norm",
            printed: p(&space, "4*l1^2 + 4*l2^2 - 4*l3^2 - 4*l4^2"),
            erratum: None,
        },
        ClosedForm {
            name: "norm_tilde",
            printed: p(&space, "-8*l1*l3 - 8*l2*l4"),
            erratum: None,
        },
    ];
    ExpectedTables {
        f: f_table(&space),
        f_tilde: f_tilde_table(&space),
        r: r_table(&space),
        r_tilde: r_tilde_table(&space),
        w_tilde: w_tilde_table(&space),
        closed_forms,
        space,
    }
}

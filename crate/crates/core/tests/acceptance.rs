//! One line per acceptance criterion. Expectations are restated here and
//! checked with oracles written in this file where that is feasible:
//! matrix mutation, Dynkin recognition by arm lengths, root closure,
//! determinants and the unitriangular derivations.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use flagcluster::classify::{self, ClusterTypeVerdict, InfiniteWitness};
use flagcluster::cli::suite;
use flagcluster::cluster::{self, Seed};
use flagcluster::error::Error;
use flagcluster::flagmodels::{self, GenericMatrix, MinorExpr, QuadricModel, TypeAModel};
use flagcluster::liealg::{self, DynkinDiagram, ReducedWord, Series};
use flagcluster::poly::Poly;
use flagcluster::seedgen;

type Mat = Vec<Vec<i64>>;

#[derive(Default)]
struct Check {
    failures: Vec<String>,
}

impl Check {
    fn ensure(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn within(&mut self, what: &str, start: Instant, limit: Duration) {
        let took = start.elapsed();
        self.ensure(took < limit, format!("{what}: {took:?} over {limit:?}"));
    }
}

// ---------------------------------------------------------------------------
// oracles

/// Mutation of an extended matrix at column `k`; the first columns-many rows
/// are the mutable ones.
fn mutate(b: &Mat, k: usize) -> Mat {
    let mut out = b.clone();
    for i in 0..b.len() {
        for j in 0..b[0].len() {
            out[i][j] = if i == k || j == k {
                -b[i][j]
            } else {
                b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2
            };
        }
    }
    out
}

/// Connected components of a simply-laced quiver, named by shape.
fn dynkin_components(b: &Mat) -> Option<Vec<String>> {
    let n = b.len();
    if b.iter().flatten().any(|x| x.abs() > 1) {
        return None;
    }
    let adj: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| b[i][j] != 0).collect()).collect();
    let mut seen = vec![false; n];
    let mut names = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            for &t in &adj[comp[i]] {
                if !seen[t] {
                    seen[t] = true;
                    comp.push(t);
                }
            }
            i += 1;
        }
        let edges: usize = comp.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
        if edges + 1 != comp.len() {
            return None;
        }
        let branch: Vec<usize> = comp.iter().copied().filter(|&v| adj[v].len() >= 3).collect();
        let m = comp.len();
        match branch.as_slice() {
            [] => names.push(format!("A{m}")),
            [c] if adj[*c].len() == 3 => {
                let mut arms: Vec<usize> = adj[*c]
                    .iter()
                    .map(|&start| {
                        let (mut prev, mut cur, mut len) = (*c, start, 1);
                        while adj[cur].len() == 2 {
                            let next = adj[cur].iter().copied().find(|&x| x != prev).unwrap();
                            prev = cur;
                            cur = next;
                            len += 1;
                        }
                        len
                    })
                    .collect();
                arms.sort_unstable();
                names.push(match arms.as_slice() {
                    [1, 1, c] => format!("D{}", c + 3),
                    [1, 2, 2] => "E6".into(),
                    [1, 2, 3] => "E7".into(),
                    [1, 2, 4] => "E8".into(),
                    _ => return None,
                });
            }
            _ => return None,
        }
    }
    names.sort();
    Some(names)
}

fn expected_components(name: &str) -> Vec<String> {
    if name == "trivial" {
        return vec![];
    }
    if let Some(m) = name.strip_prefix("(A1)^") {
        return vec!["A1".to_string(); m.parse().unwrap()];
    }
    vec![name.to_string()]
}

/// Positive roots in simple-root coordinates, closed under reflections.
fn positive_roots(d: &DynkinDiagram) -> usize {
    let n = d.rank();
    let mut roots: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut todo: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|k| (k == i) as i64).collect()).collect();
    while let Some(beta) = todo.pop() {
        if !roots.insert(beta.clone()) {
            continue;
        }
        for i in 0..n {
            let pair: i64 = (0..n).map(|j| d.a(i + 1, j + 1) * beta[j]).sum();
            let mut img = beta.clone();
            img[i] -= pair;
            if img.iter().all(|&x| x >= 0) && img.iter().any(|&x| x > 0) {
                todo.push(img);
            }
        }
    }
    roots.len()
}

/// Reduced iff every letter sends the simple root to a positive root under
/// the prefix before it.
fn is_reduced_by_roots(d: &DynkinDiagram, word: &[usize]) -> bool {
    let n = d.rank();
    (0..word.len()).all(|m| {
        let mut beta: Vec<i64> = (0..n).map(|k| (k + 1 == word[m]) as i64).collect();
        for &i in word[..m].iter().rev() {
            let pair: i64 = (0..n).map(|j| d.a(i, j + 1) * beta[j]).sum();
            beta[i - 1] -= pair;
        }
        beta.iter().all(|&x| x >= 0)
    })
}

fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<i128>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, &x)| x).collect()).collect();
            let s = if c % 2 == 0 { 1 } else { -1 };
            s * m[0][c] * det(&minor)
        })
        .sum()
}

/// Plücker coordinate of the columns `cols` (1-based) of a `rows x n` matrix.
fn pl(a: &[Vec<i128>], cols: &[usize]) -> i128 {
    let sub: Vec<Vec<i128>> = a.iter().map(|r| cols.iter().map(|&c| r[c - 1]).collect()).collect();
    det(&sub)
}

/// `e_j^†` on the upper unitriangular model: left translation adding row
/// `j+1` to row `j`, which fixes the flag minors of other sizes.
fn e_dagger(m: &TypeAModel, f: &Poly, j: usize) -> Poly {
    let mut acc = Poly::zero(m.nvars());
    for b in j + 1..=m.rank() + 1 {
        let d = f.derivative(m.var_index(j, b));
        acc += &(&m.entry(j + 1, b) * &d);
    }
    acc
}

fn degree(m: &TypeAModel, f: &Poly, j: usize) -> i64 {
    let (mut g, mut k) = (f.clone(), 0);
    loop {
        g = e_dagger(m, &g, j);
        if g.is_zero() {
            return k;
        }
        k += 1;
    }
}

// ---------------------------------------------------------------------------
// frozen data

const EX_WORD: [usize; 15] = [2, 4, 5, 4, 1, 2, 3, 4, 5, 2, 3, 4, 1, 2, 3];
const EX_ROWS: [&str; 11] = ["5", "6", "7", "8", "10", "11", "-1", "1", "-3", "4", "3"];

fn ex_matrix() -> Mat {
    vec![
        vec![0, 0, 0, 0, -1, 0],
        vec![0, 0, -1, 0, 1, 0],
        vec![0, 1, 0, -1, -1, 1],
        vec![0, 0, 1, 0, 0, -1],
        vec![1, -1, 1, 0, 0, -1],
        vec![0, 0, -1, 1, 1, 0],
        vec![1, 0, 0, 0, 0, 0],
        vec![-1, 1, 0, 0, 0, 0],
        vec![0, -1, 1, 0, 0, 0],
        vec![0, 0, -1, 1, 0, 0],
        vec![0, 0, 0, -1, 0, 0],
    ]
}

/// `(rows, columns)` of each initial minor, in row order.
const EX_MINORS: [(&[usize], &[usize]); 11] = [
    (&[3], &[6]),
    (&[2, 3], &[5, 6]),
    (&[2, 3, 6], &[4, 5, 6]),
    (&[2, 3, 5, 6], &[3, 4, 5, 6]),
    (&[3, 6], &[5, 6]),
    (&[3, 5, 6], &[4, 5, 6]),
    (&[1], &[6]),
    (&[1, 3], &[5, 6]),
    (&[1, 2, 3], &[4, 5, 6]),
    (&[1, 2, 3, 6], &[3, 4, 5, 6]),
    (&[1, 2, 3, 5, 6], &[2, 3, 4, 5, 6]),
];

fn a5() -> DynkinDiagram {
    DynkinDiagram::new(Series::A, 5).unwrap()
}

fn digits(s: &[usize]) -> String {
    s.iter().map(|x| x.to_string()).collect()
}

// ---------------------------------------------------------------------------
// criteria

fn ac1(c: &mut Check) {
    let start = Instant::now();
    let b = seedgen::b_matrix_restricted(&a5(), &ReducedWord::new(EX_WORD.to_vec()), &[1, 3]).unwrap();
    c.within("B(i,J)", start, Duration::from_secs(1));
    c.ensure(b.entries() == &ex_matrix()[..], "entries");
    c.ensure(b.row_labels() == EX_ROWS, format!("rows {:?}", b.row_labels()));
    c.ensure(b.col_labels() == &EX_ROWS[..6], format!("columns {:?}", b.col_labels()));
    c.ensure(liealg::validate_rw0k(&a5(), &[2, 4, 5], &EX_WORD).is_ok(), "word rejected");
    c.ensure(is_reduced_by_roots(&a5(), &EX_WORD) && EX_WORD.len() == positive_roots(&a5()), "word is not a reduced w0");
}

fn ac2(c: &mut Check) {
    let start = Instant::now();
    let b = flagmodels::type_a_extended_matrix(&a5(), &ReducedWord::new(EX_WORD.to_vec()), &[1, 3]).unwrap();
    c.within("extended matrix", start, Duration::from_secs(30));
    let mut want = ex_matrix();
    want.push(vec![0, -1, 0, 0, 0, 0]);
    want.push(vec![0, 0, 0, 0, 0, 1]);
    c.ensure(b.entries() == &want[..], format!("entries {:?}", &b.entries()[11..]));
    c.ensure(b.row_labels()[11..] == ["Δ1", "Δ123"], format!("degree rows {:?}", &b.row_labels()[11..]));

    // degree rows from the derivation oracle: b_{Δj,k} = -Σ_i a_j(x_i) b_ik
    let m = TypeAModel::new(5);
    let polys: Vec<Poly> = EX_MINORS.iter().map(|(r, col)| m.minor(r, col).unwrap()).collect();
    for (row, j) in [(11, 1), (12, 3)] {
        let degs: Vec<i64> = polys.iter().map(|f| degree(&m, f, j)).collect();
        for k in 0..6 {
            let v: i64 = -(0..11).map(|i| degs[i] * want[i][k]).sum::<i64>();
            c.ensure(v == want[row][k], format!("degree row Δ{j}, column {k}: oracle gives {v}"));
        }
    }
}

fn ac3(c: &mut Check) {
    let d = a5();
    let w = ReducedWord::new(EX_WORD.to_vec());
    let labels = seedgen::initial_cluster_labels(&d, &w, &[1, 3]).unwrap();
    let got: Vec<String> = labels.iter().map(|l| l.render(&d)).collect();
    let want: Vec<String> = EX_MINORS.iter().map(|(r, col)| format!("D_{{{},{}}}", digits(r), digits(col))).collect();
    c.ensure(got == want, format!("labels {got:?}"));
    let idx: Vec<String> = labels.iter().map(|l| l.index.to_string()).collect();
    c.ensure(idx == EX_ROWS, format!("order {idx:?}"));
    // the row polynomials are those minors
    let m = TypeAModel::new(5);
    let polys = flagmodels::type_a_row_polynomials(&m, &d, &w, &[1, 3]).unwrap();
    for (i, (r, col)) in EX_MINORS.iter().enumerate() {
        c.ensure(polys[i] == m.minor(r, col).unwrap(), format!("row {} polynomial", EX_ROWS[i]));
    }
}

/// Classifies a flag seed and checks a finite verdict by replaying its
/// mutation sequence and recognizing the result.
fn check_finite(c: &mut Check, diagram: &str, j: &[usize], expect: &str, extended: bool) {
    let what = format!("{diagram} J={j:?}");
    let d = DynkinDiagram::parse(diagram, extended).unwrap();
    let start = Instant::now();
    let seed = classify::flag_seed_matrix(&d, j).unwrap();
    let v = classify::is_finite_type(&seed, classify::cap_from_env()).unwrap();
    c.within(&what, start, Duration::from_secs(60));
    let ClusterTypeVerdict::Finite { name, sequence, matrix } = &v else {
        c.ensure(false, format!("{what}: {v}"));
        return;
    };
    if extended {
        c.ensure(name == expect || (expect == "B2" && name == "C2"), format!("{what}: {name}, expected {expect}"));
        return;
    }
    let mut p = seed.principal();
    for label in sequence {
        p = mutate(&p, seed.col_index(label).unwrap());
    }
    c.ensure(&p == matrix, format!("{what}: sequence does not reach the reported matrix"));
    let comps = dynkin_components(&p);
    c.ensure(comps.as_ref() == Some(&expected_components(expect)), format!("{what}: {comps:?}, expected {expect}"));
    c.ensure(name == expect, format!("{what}: named {name}"));
}

fn ac4(c: &mut Check) {
    let mut rows: Vec<(String, Vec<usize>, String)> = Vec::new();
    let mut push = |d: String, j: Vec<usize>, e: String| rows.push((d, j, e));
    let a = |m: usize| if m == 0 { "trivial".to_string() } else { format!("A{m}") };
    let a1 = |m: usize| match m {
        0 => "trivial".to_string(),
        1 => "A1".to_string(),
        _ => format!("(A1)^{m}"),
    };
    // families, kept to principal rank <= 6
    for n in 2..=8usize {
        let t = format!("A{n}");
        push(t.clone(), vec![1], "trivial".into());
        push(t.clone(), vec![2], a(n - 2));
        if n <= 7 {
            push(t.clone(), vec![1, 2], a(n - 1));
            push(t.clone(), vec![1, n], a1(n - 1));
        }
        if (3..=5).contains(&n) {
            push(t.clone(), vec![1, n - 1], a(2 * n - 4));
        }
        if (3..=4).contains(&n) {
            push(t.clone(), vec![1, 2, n], a(2 * n - 3));
        }
    }
    for (d, j, e) in [
        ("A4", vec![2, 3], "D4"),
        ("A4", vec![1, 2, 3], "D5"),
        ("A4", vec![1, 2, 3, 4], "D6"),
        ("A5", vec![3], "D4"),
        ("A5", vec![1, 3], "E6"),
        ("A5", vec![2, 3], "E6"),
        ("A6", vec![3], "E6"),
        ("D4", vec![1, 2], "A5"),
        ("D5", vec![1], "A5"),
    ] {
        push(d.into(), j, e.into());
    }
    for n in 4..=8usize {
        push(format!("D{n}"), vec![n], a1(n - 2));
    }
    for (d, j, e) in &rows {
        check_finite(c, d, j, e, false);
    }
    for (d, j, e) in [
        ("B2", vec![2], "A1"),
        ("B3", vec![3], "(A1)^2"),
        ("C2", vec![2], "A1"),
        ("C3", vec![3], "(A1)^2"),
        ("B2", vec![1, 2], "B2"),
        ("C2", vec![1, 2], "B2"),
        ("B3", vec![1], "C3"),
        ("C3", vec![1], "B3"),
    ] {
        check_finite(c, d, &j, e, true);
    }
    println!("       {} table rows of rank <= 6, 8 non-simply-laced rows", rows.len());
}

fn ac5(c: &mut Check) {
    let cases: [(&str, &[usize]); 18] = [
        ("A5", &[1, 3, 5]),
        ("A6", &[1, 3]),
        ("A6", &[1, 4]),
        ("A6", &[3, 4]),
        ("A7", &[2, 3]),
        ("A7", &[3, 7]),
        ("A5", &[2, 4]),
        ("A6", &[2, 5]),
        ("A7", &[2, 6]),
        ("D4", &[1, 2, 4]),
        ("D4", &[3]),
        ("D5", &[1, 2]),
        ("D5", &[1, 5]),
        ("D6", &[1]),
        ("D5", &[4]),
        ("D6", &[5]),
        ("E6", &[1]),
        ("E6", &[2]),
    ];
    for (d, j) in cases {
        let what = format!("{d} J={j:?}");
        let start = Instant::now();
        let seed = classify::flag_seed_matrix(&DynkinDiagram::parse(d, false).unwrap(), j).unwrap();
        let v = classify::is_finite_type(&seed, classify::cap_from_env()).unwrap();
        c.within(&what, start, Duration::from_secs(60));
        match v {
            // a double arrow reached by mutation is a Kronecker subquiver
            ClusterTypeVerdict::Infinite { witness: InfiniteWitness::EntryBound { sequence, matrix, pair } } => {
                let mut p = seed.principal();
                for label in &sequence {
                    p = mutate(&p, seed.col_index(label).unwrap());
                }
                c.ensure(p == matrix, format!("{what}: witness does not replay"));
                let (a, b) = (seed.col_index(&pair.0).unwrap(), seed.col_index(&pair.1).unwrap());
                c.ensure(p[a][b].abs() >= 2, format!("{what}: witness pair has entry {}", p[a][b]));
            }
            ClusterTypeVerdict::Infinite { .. } => {}
            other => c.ensure(false, format!("{what}: {other}")),
        }
    }
}

fn ac6(c: &mut Check) {
    let p: Mat = ex_matrix()[..6].to_vec();
    let col = |l: &str| EX_ROWS.iter().position(|x| *x == l).unwrap();
    let q = mutate(&mutate(&mutate(&p, col("6")), col("11")), col("7"));
    c.ensure(dynkin_components(&q) == Some(vec!["E6".into()]), format!("(6,11,7): {q:?}"));
    c.ensure(classify::dynkin_recognize(&q).as_deref() == Some("E6"), "library recognizer");

    let d4 = DynkinDiagram::new(Series::D, 4).unwrap();
    let word = [1, 2, 4, 3].repeat(3);
    let b = seedgen::b_matrix_restricted(&d4, &ReducedWord::new(word), &[3]).unwrap();
    c.ensure(b.col_labels() == ["4", "5", "6", "7", "8"], format!("D4 columns {:?}", b.col_labels()));
    let m = mutate(&b.principal(), b.col_index("4").unwrap());
    let degs: Vec<usize> = m.iter().map(|r| r.iter().filter(|&&x| x != 0).count()).collect();
    let centre = degs.iter().position(|&x| x == 4);
    let star = centre.is_some()
        && degs.iter().filter(|&&x| x == 1).count() == 4
        && m.iter().flatten().all(|x| x.abs() <= 1);
    c.ensure(star, format!("mu4 gives {m:?}"));
    c.ensure(dynkin_components(&m).is_none(), "the star is not Dynkin");
}

/// Frozen coefficients written out from their defining sums.
fn q_values(y: &[i128], n: usize) -> Vec<i128> {
    let y = |i: usize| y[i - 1];
    (0..=n)
        .map(|k| match k {
            0 => y(1),
            1 => y(n),
            2 => y(n + 1),
            _ if k == n => y(2 * n),
            _ => (1..=n + 1 - k).map(|i| if (n + 1 - k - i).is_multiple_of(2) { 1 } else { -1 } * y(i) * y(2 * n + 1 - i)).sum(),
        })
        .collect()
}

fn ac7(c: &mut Check) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 3..=8usize {
        let rels = flagmodels::verify_quadric_relations(n).unwrap();
        c.ensure(rels.len() == n - 2 && rels.iter().all(|r| r.holds && r.seed_agrees), format!("n={n}: symbolic check"));
        // points of the quadric: y_{2n} = 1 and y_1 solved for
        let seed = seedgen::quadric_seed(n).unwrap();
        for _ in 0..20 {
            let mut y: Vec<i128> = (0..2 * n).map(|_| rng.gen_range(-9..=9)).collect();
            y[2 * n - 1] = 1;
            y[0] = (2..=n).map(|i| if i % 2 == 0 { 1 } else { -1 } * y[i - 1] * y[2 * n - i]).sum();
            let qs = q_values(&y, n);
            let mut vals: Vec<i128> = (2..n).map(|k| y[k - 1]).collect();
            vals.extend(&qs);
            for k in 2..n {
                let col = k - 2;
                let (mut plus, mut minus) = (1i128, 1i128);
                for (i, row) in seed.entries().iter().enumerate() {
                    let e = row[col];
                    if e > 0 {
                        plus *= vals[i].pow(e as u32);
                    } else if e < 0 {
                        minus *= vals[i].pow((-e) as u32);
                    }
                }
                let lhs = y[k - 1] * y[2 * n - k];
                c.ensure(lhs == plus + minus, format!("n={n}, k={k}: {lhs} != {plus} + {minus}"));
            }
        }
        let model = QuadricModel::new(n).unwrap();
        let q = |k: usize| model.qk_coeff(k).unwrap();
        let want = if n == 3 { &(&q(1) * &q(2)) + &(&q(0) * &q(3)) } else { &q(n - 1) + &(&q(0) * &q(n)) };
        c.ensure(model.displayed_rhs(2).unwrap() == want, format!("n={n}: k=2 form"));
    }
    let rels = flagmodels::verify_quadric_relations(3).unwrap();
    c.ensure(rels[0].lhs == "y2*y5", format!("n=3 lhs {}", rels[0].lhs));
    c.within("quadrics", start, Duration::from_secs(10));
}

fn ac8(c: &mut Check) {
    let start = Instant::now();
    let b = seedgen::d5_isotropic_seed();
    let printed: Mat = vec![
        vec![0, 0, 0, 0, 1],
        vec![0, 0, 1, 1, -1],
        vec![0, -1, 0, 0, 0],
        vec![0, -1, 0, 0, 1],
        vec![-1, 1, 0, -1, 0],
        vec![1, 0, 0, 0, -1],
        vec![0, 0, 1, 0, 0],
        vec![0, 0, -1, 0, 1],
        vec![0, 0, 0, 1, -1],
        vec![0, 0, 0, -1, 0],
        vec![1, 0, 0, 0, 0],
    ];
    c.ensure(b.entries() == &printed[..], "matrix");
    let rows = ["z1", "z2", "z3", "z4", "z5", "q1", "q2", "q3", "q4", "q5", "q0"];
    c.ensure(b.row_labels() == rows, format!("rows {:?}", b.row_labels()));

    let seed = Seed::initial(b);
    let var = |l: &str| seed.var(l).unwrap().clone();
    // minors Δ_i; sequences as printed, composed right to left
    let printed_seqs: [(usize, &str); 8] = [
        (6, "μ2"),
        (8, "μ1"),
        (9, "μ2μ1μ5μ4"),
        (11, "μ1μ5μ4"),
        (12, "μ5μ4"),
        (13, "μ4μ3μ2μ1μ5μ4"),
        (14, "μ1μ4μ3μ2μ1μ5μ4"),
        (15, "μ3μ1μ5μ4"),
    ];
    let mut delta: BTreeMap<usize, Poly> = BTreeMap::new();
    for (i, l) in [(1, "q0"), (2, "z1"), (3, "z2"), (4, "z3"), (5, "z4"), (7, "q5"), (10, "q1"), (16, "q2")] {
        delta.insert(i, var(l));
    }
    for (i, s) in printed_seqs {
        let seq: Vec<String> = s.split('μ').filter(|x| !x.is_empty()).rev().map(|k| format!("z{k}")).collect();
        match seed.sequence_variable(&seq) {
            Ok(Some(v)) => {
                delta.insert(i, v);
            }
            other => c.ensure(false, format!("Δ{i}: {other:?}")),
        }
    }
    let targets: Vec<usize> = vec![2, 3, 4, 5, 6, 8, 9, 11, 12, 13, 14, 15];
    let distinct: HashSet<&Poly> = targets.iter().filter_map(|i| delta.get(i)).collect();
    c.ensure(distinct.len() == 12, format!("{} distinct minors", distinct.len()));
    if delta.len() != 16 {
        return;
    }
    let d = |i: usize| &delta[&i];
    let quad = |a: usize, b: usize, x: usize, y: usize| &(d(a) * d(b)) - &(d(x) * d(y));
    // Δ_i has weight u_i(ϖ1); each binomial below must be weight-homogeneous
    let d5 = DynkinDiagram::new(Series::D, 5).unwrap();
    let words: [&[usize]; 16] = [
        &[],
        &[1],
        &[3, 1],
        &[2, 3, 1],
        &[4, 3, 1],
        &[2, 4, 3, 1],
        &[5, 4, 3, 1],
        &[3, 2, 4, 3, 1],
        &[2, 5, 4, 3, 1],
        &[1, 3, 2, 4, 3, 1],
        &[5, 3, 2, 4, 3, 1],
        &[1, 5, 3, 2, 4, 3, 1],
        &[4, 5, 3, 2, 4, 3, 1],
        &[1, 4, 5, 3, 2, 4, 3, 1],
        &[3, 1, 4, 5, 3, 2, 4, 3, 1],
        &[2, 3, 1, 4, 5, 3, 2, 4, 3, 1],
    ];
    let wt = |i: usize| liealg::apply_word(&d5, words[i - 1], &d5.fundamental_weight(1)).unwrap().0;
    let balanced = |a: usize, b: usize, x: usize, y: usize| {
        let s = |p: usize, q: usize| wt(p).iter().zip(wt(q)).map(|(u, v)| u + v).collect::<Vec<i64>>();
        s(a, b) == s(x, y)
    };
    for (name, a, b, x, y) in [("z5", 2, 8, 1, 10), ("q3", 4, 15, 3, 16), ("q4", 2, 13, 1, 14)] {
        c.ensure(balanced(a, b, x, y), format!("{name}: unbalanced weights"));
        c.ensure(var(name) == quad(a, b, x, y), format!("{name} = Δ{a}Δ{b} - Δ{x}Δ{y}"));
    }
    // pairing 14 with Δ2 instead is not weight-homogeneous
    c.ensure(!balanced(2, 14, 1, 13), "Δ2Δ14 - Δ1Δ13 balanced");

    // the inventory: five initial variables, eight further minors, seven quadratics
    let mut expected: BTreeSet<Poly> = BTreeSet::new();
    for l in ["z1", "z2", "z3", "z4", "z5"] {
        expected.insert(var(l));
    }
    for i in [6, 8, 9, 11, 12, 13, 14, 15] {
        expected.insert(d(i).clone());
    }
    for (a, b, x, y) in [(3, 13, 1, 15), (4, 14, 2, 16), (6, 15, 5, 16), (2, 11, 1, 12), (4, 13, 1, 16), (9, 15, 7, 16), (5, 12, 7, 10)] {
        c.ensure(balanced(a, b, x, y), format!("Δ{a}Δ{b} - Δ{x}Δ{y}: unbalanced weights"));
        expected.insert(quad(a, b, x, y));
    }
    c.ensure(expected.len() == 20, format!("inventory has {} elements", expected.len()));
    let all = cluster::enumerate_cluster_variables(&seed, 10_000).unwrap();
    // type A5 has 5 * 8 / 2 cluster variables
    c.ensure(all.len() == 5 * 8 / 2, format!("{} cluster variables", all.len()));
    c.ensure(all == expected, "enumeration differs from the listed variables");
    let v = classify::is_finite_type(seed.matrix(), classify::cap_from_env()).unwrap();
    if let ClusterTypeVerdict::Finite { sequence, matrix, .. } = &v {
        let mut p = seed.matrix().principal();
        for l in sequence {
            p = mutate(&p, seed.matrix().col_index(l).unwrap());
        }
        c.ensure(&p == matrix && dynkin_components(&p) == Some(vec!["A5".into()]), "type A5 certificate");
    } else {
        c.ensure(false, format!("type {v}"));
    }
    c.within("D5 suite", start, Duration::from_secs(120));
}

fn ac9(c: &mut Check) {
    for (n, j) in [(4, 2), (5, 2), (5, 3), (6, 3), (7, 4)] {
        let g = seedgen::grassmannian_grid_seed(n, j).unwrap();
        let cols = n - j + 1;
        let subset = |r: usize, col: usize| -> Vec<usize> { (1..=j - r).chain(j + col - r + 1..=j + col).collect() };
        for r in 1..=j {
            for col in 1..=cols {
                c.ensure(g.subsets[r - 1][col - 1] == subset(r, col), format!("({n},{j}) subset at ({r},{col})"));
            }
        }
        // right, down and north-west arrows; none between two frozen vertices
        let frozen = |r: usize, col: usize| r == j || col == cols;
        let mut want: BTreeSet<(String, String)> = BTreeSet::new();
        let mut add = |a: (usize, usize), b: (usize, usize)| {
            if !(frozen(a.0, a.1) && frozen(b.0, b.1)) {
                want.insert((digits(&subset(a.0, a.1)), digits(&subset(b.0, b.1))));
            }
        };
        for r in 1..=j {
            for col in 1..=cols {
                if col < cols {
                    add((r, col), (r, col + 1));
                }
                if r < j {
                    add((r, col), (r + 1, col));
                }
                if r < j && col < cols {
                    add((r + 1, col + 1), (r, col));
                }
            }
        }
        let arrows = g.matrix.arrows();
        let got: BTreeSet<(String, String)> = arrows.iter().map(|a| (a.0.clone(), a.1.clone())).collect();
        c.ensure(arrows.iter().all(|a| a.2 == 1) && got == want, format!("({n},{j}) arrows"));
        if (n, j) == (7, 4) {
            c.ensure(arrows.len() == 27, format!("(7,4): {} arrows", arrows.len()));
        }
        let m = flagmodels::grid_pipeline_matching(n, j).unwrap();
        c.ensure(m.is_some(), format!("({n},{j}) differs from the flag seed"));
    }
    // the lifted exchange relation, symbolically and at random integer points
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (n, j) in [(4, 2), (5, 2), (5, 3)] {
        c.ensure(flagmodels::verify_grid_corner_relation(n, j).unwrap(), format!("({n},{j}) corner relation"));
        let base: Vec<usize> = (1..j - 1).collect();
        let s = |extra: &[usize]| -> Vec<usize> { base.iter().chain(extra).copied().collect() };
        for _ in 0..20 {
            let a: Vec<Vec<i128>> = (0..j).map(|_| (0..=n).map(|_| rng.gen_range(-5..=5)).collect()).collect();
            let lhs = pl(&a, &s(&[j - 1, j + 1])) * pl(&a, &s(&[j, j + 2]));
            let rhs = pl(&a, &s(&[j - 1, j + 2])) * pl(&a, &s(&[j, j + 1])) + pl(&a, &s(&[j - 1, j])) * pl(&a, &s(&[j + 1, j + 2]));
            c.ensure(lhs == rhs, format!("({n},{j}) relation at a random point"));
        }
    }
}

/// Drops the factors `[1, k]`, which project to one.
fn strip(e: &MinorExpr) -> MinorExpr {
    MinorExpr::new(
        e.terms
            .iter()
            .map(|(c, f)| {
                let kept = f.iter().filter(|s| **s != (1..=s.len()).collect::<Vec<_>>()).cloned().collect();
                (c.clone(), kept)
            })
            .collect(),
    )
}

fn ac10(c: &mut Check) {
    let g = GenericMatrix::new(2, 4);
    let p = |s: &[usize]| g.pluecker(s).unwrap();
    c.ensure(&(&p(&[1, 3]) * &p(&[2, 4])) - &(&p(&[2, 3]) * &p(&[1, 4])) == &p(&[1, 2]) * &p(&[3, 4]), "Plücker identity");
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..50 {
        let a: Vec<Vec<i128>> = (0..2).map(|_| (0..4).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let ok = pl(&a, &[1, 3]) * pl(&a, &[2, 4]) - pl(&a, &[2, 3]) * pl(&a, &[1, 4]) == pl(&a, &[1, 2]) * pl(&a, &[3, 4]);
        c.ensure(ok, "Plücker identity at a random point");
    }

    let m4 = TypeAModel::new(4);
    let r = flagmodels::lift(&m4, &MinorExpr::parse("D13*D24 - D23*D14").unwrap(), &[2]);
    c.ensure(matches!(r, Err(Error::CancellationCase { .. })), format!("cancellation case gave {r:?}"));

    let m5 = TypeAModel::new(5);
    let l = flagmodels::lift(&m5, &MinorExpr::parse("D2*D156 - D1*D256").unwrap(), &[1, 3]).unwrap();
    c.ensure(l == MinorExpr::parse("Δ2*Δ156 - Δ1*Δ256").unwrap(), format!("lift is {}", l.render("Δ")));

    let (mut done, mut tries) = (0, 0);
    while done < 100 && tries < 2000 {
        tries += 1;
        let (m, j): (&TypeAModel, &[usize]) = if rng.gen_bool(0.5) { (&m4, &[2]) } else { (&m5, &[1, 3]) };
        let size = m.rank() + 1;
        let terms: Vec<(BigInt, Vec<Vec<usize>>)> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let factors = (0..rng.gen_range(1..=3))
                    .map(|_| {
                        let k = *j.choose(&mut rng).unwrap();
                        let mut s: Vec<usize> = (1..=size).collect::<Vec<_>>().choose_multiple(&mut rng, k).copied().collect();
                        s.sort_unstable();
                        s
                    })
                    .collect();
                (BigInt::from(rng.gen_range(-5i64..=5)), factors)
            })
            .collect();
        let e = MinorExpr::new(terms);
        let f = e.expand(m).unwrap();
        if f.is_zero() {
            continue;
        }
        match flagmodels::lift(m, &e, j) {
            Ok(l) => {
                c.ensure(flagmodels::project(m, &l).as_ref() == Ok(&f), format!("pr(lift) of {}", e.render("D")));
                c.ensure(strip(&l) == strip(&e), format!("lift of {} is more than a rescaling", e.render("D")));
                done += 1;
            }
            Err(Error::CancellationCase { .. }) => {}
            Err(err) => c.ensure(false, format!("lift of {}: {err}", e.render("D"))),
        }
    }
    c.ensure(done == 100, format!("{done} random lifts"));
}

fn ac11(c: &mut Check) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..500 {
        let n = rng.gen_range(1..=6);
        let f = rng.gen_range(0..=3);
        let b = suite::random_matrix(&mut rng, n, f, 3);
        let k = rng.gen_range(0..n);
        let once = b.mutate_index(k);
        c.ensure(once.entries() == &mutate(&b.entries().to_vec(), k)[..], format!("mutation formula, case {case}"));
        c.ensure(once.mutate_index(k) == b, format!("involution, case {case}"));
        let p = once.principal();
        c.ensure((0..n).all(|i| (0..n).all(|j| p[i][j] == -p[j][i])), format!("skew-symmetry, case {case}"));
    }

    // Laurent exactness along screened paths, at a random evaluation point
    let mut case = 0;
    while case < 100 {
        let n = rng.gen_range(1..=5);
        let f = rng.gen_range(0..=2);
        let b = suite::random_matrix(&mut rng, n, f, 1);
        let seq: Vec<usize> = (0..rng.gen_range(1..=10)).map(|_| rng.gen_range(0..n)).collect();
        if suite::max_entry_along(&b, &seq) > suite::LAURENT_ENTRY_BOUND {
            continue;
        }
        case += 1;
        let mut seed = Seed::initial(b.clone());
        let frozen = seed.frozen().to_vec();
        for &k in &seq {
            match seed.mutate_index(k) {
                Ok(s) => seed = s,
                Err(e) => {
                    c.ensure(false, format!("Laurent case {case}: {e}"));
                    break;
                }
            }
        }
        c.ensure(seed.frozen() == &frozen[..], format!("frozen variables moved in case {case}"));
        for v in seed.vars() {
            let low = v.min_exponents();
            c.ensure(low[n..].iter().all(|&e| e >= 0), format!("frozen denominator in case {case}"));
        }
        // numeric replay of the exchange relations over the rationals, as
        // integer pairs; every variable must match its Laurent polynomial
        let point: Vec<BigInt> = (0..b.nrows()).map(|_| BigInt::from(rng.gen_range(1..=4))).collect();
        let mut num: Vec<BigInt> = point.clone();
        let mut den: Vec<BigInt> = vec![BigInt::from(1); b.nrows()];
        let mut m = b.entries().to_vec();
        for &k in &seq {
            let (mut pn, mut pd, mut qn, mut qd) = (BigInt::from(1), BigInt::from(1), BigInt::from(1), BigInt::from(1));
            for i in 0..m.len() {
                let e = m[i][k];
                if e > 0 {
                    pn *= num[i].pow(e as u32);
                    pd *= den[i].pow(e as u32);
                } else if e < 0 {
                    qn *= num[i].pow((-e) as u32);
                    qd *= den[i].pow((-e) as u32);
                }
            }
            // (pn/pd + qn/qd) / (num_k/den_k)
            let top = (&pn * &qd + &qn * &pd) * &den[k];
            let bottom = &pd * &qd * &num[k];
            num[k] = top;
            den[k] = bottom;
            m = mutate(&m, k);
        }
        for (i, v) in seed.vars().iter().enumerate() {
            let low = v.min_exponents();
            let shifted = v.shift(&low.iter().map(|e| -e).collect::<Vec<_>>());
            let value = shifted.eval(&point).unwrap();
            // v = shifted * x^low
            let (mut vn, mut vd) = (value, BigInt::from(1));
            for (x, &e) in point.iter().zip(low.iter()) {
                if e > 0 {
                    vn *= x.pow(e as u32);
                } else if e < 0 {
                    vd *= x.pow((-e) as u32);
                }
            }
            c.ensure(&vn * &den[i] == &num[i] * &vd, format!("Laurent value of row {i} in case {case}"));
        }
    }

    // rw0k words: reduced, of full length, with the parabolic prefix
    let mut diagrams: Vec<DynkinDiagram> = Vec::new();
    for r in 1..=6 {
        diagrams.push(DynkinDiagram::new(Series::A, r).unwrap());
    }
    for r in 4..=6 {
        diagrams.push(DynkinDiagram::new(Series::D, r).unwrap());
    }
    diagrams.push(DynkinDiagram::new(Series::E, 6).unwrap());
    for r in 2..=6 {
        diagrams.push(DynkinDiagram::new_extended(Series::B, r).unwrap());
        diagrams.push(DynkinDiagram::new_extended(Series::C, r).unwrap());
    }
    diagrams.push(DynkinDiagram::new_extended(Series::F, 4).unwrap());
    diagrams.push(DynkinDiagram::new_extended(Series::G, 2).unwrap());
    let mut words = 0;
    for d in &diagrams {
        let n = d.rank();
        let total = positive_roots(d);
        for mask in 1u32..(1 << n) {
            let k: Vec<usize> = (1..=n).filter(|&v| mask & (1 << (v - 1)) == 0).collect();
            let w = liealg::rw0k_word(d, &k).unwrap();
            let pk = liealg::parabolic_longest_word(d, &k).unwrap();
            let ok = w.letters.len() == total
                && is_reduced_by_roots(d, &w.letters)
                && w.letters[..pk.len()] == pk.letters[..]
                && pk.letters.iter().all(|v| k.contains(v));
            c.ensure(ok, format!("{} K={k:?}: {:?}", d.name(), w.letters));
            words += 1;
        }
    }
    println!("       {words} canonical words checked");
}

fn ac12(c: &mut Check) {
    let start = Instant::now();
    let out = flagcluster::cli::run(["flagcluster", "verify", "--suite", "paper"]);
    c.within("verify --suite paper", start, suite::SUITE_BUDGET);
    for line in out.stdout.lines() {
        println!("       | {line}");
    }
    c.ensure(out.code == 0, format!("exit code {}", out.code));
}

fn main() {
    let criteria: [(&str, &str, fn(&mut Check)); 12] = [
        ("AC-1", "A5, J={1,3}: 11x6 matrix and row order", ac1),
        ("AC-2", "A5, J={1,3}: 13x6 matrix with degree rows", ac2),
        ("AC-3", "A5, J={1,3}: initial minor labels", ac3),
        ("AC-4", "finite type tables, rank <= 6 and non-simply-laced", ac4),
        ("AC-5", "minimal infinite cases", ac5),
        ("AC-6", "E6 after (6,11,7); affine D4 star", ac6),
        ("AC-7", "quadric relations, n = 3..8", ac7),
        ("AC-8", "isotropic D5 seed", ac8),
        ("AC-9", "Grassmannian grid seeds", ac9),
        ("AC-10", "lifting", ac10),
        ("AC-11", "property suites", ac11),
        ("AC-12", "full verification suite under five minutes", ac12),
    ];
    let only: Vec<String> = std::env::args().skip(1).filter(|a| a.starts_with("AC-")).collect();
    let mut failed = 0;
    for (id, name, f) in criteria {
        if !only.is_empty() && !only.iter().any(|o| o == id) {
            continue;
        }
        let start = Instant::now();
        let mut c = Check::default();
        let panicked = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| f(&mut c)));
        if let Err(e) = panicked {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            c.failures.push(format!("panic: {}", msg.unwrap_or_default()));
        }
        let pass = c.failures.is_empty();
        println!("[{}] {id} {name} ({} ms)", if pass { "PASS" } else { "FAIL" }, start.elapsed().as_millis());
        for f in c.failures.iter().take(10) {
            println!("       {f}");
        }
        if !pass {
            failed += 1;
        }
    }
    println!("acceptance: {failed} failed");
    if failed > 0 {
        std::process::exit(1);
    }
}

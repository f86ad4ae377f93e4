use std::process::{Command, Output};

use branching_core::lambda::LambdaRow;
use branching_core::{Rat, Signature};

fn branching(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_branching"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn sig(v: &[u32]) -> Signature {
    Signature::new(v.to_vec()).unwrap()
}

#[test]
fn lambda_json_row() {
    let o = branching(&["lambda", "--series", "d", "--nu", "1,0", "--N", "2", "--K", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let row = LambdaRow::from_json(stdout(&o).trim()).unwrap();
    assert_eq!(row.total(), Rat::one());
    assert_eq!(row.get(&sig(&[0])), Rat::half());
    assert_eq!(row.get(&sig(&[1])), Rat::half());
}

#[test]
fn lambda_general_parameters_point_mass() {
    let o = branching(&["lambda", "--a", "1/2", "--eps", "1", "--nu", "0", "--N", "3", "--K", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let row = LambdaRow::from_json(stdout(&o).trim()).unwrap();
    assert_eq!(row.weights.len(), 1);
    assert_eq!(row.get(&Signature::empty(2)), Rat::one());
}

#[test]
fn lambda_csv_is_ordered_with_header() {
    let o = branching(&["lambda", "--series", "c", "--nu", "2,1,0", "--N", "3", "--K", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("kappa,p"));
    let kappas: Vec<&str> = lines.map(|l| l.split(',').next().unwrap()).collect();
    let mut sorted = kappas.clone();
    sorted.sort();
    assert_eq!(kappas, sorted);
    assert_eq!(kappas.len(), 5);
}

#[test]
fn sample_is_deterministic() {
    let args = ["sample", "--series", "b", "--nu", "3,1,0", "--N", "3", "--K", "1", "--seed", "42", "--count", "50"];
    let a = branching(&args);
    let b = branching(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let draws: Vec<Vec<u32>> = serde_json::from_str(stdout(&a).trim()).unwrap();
    assert_eq!(draws.len(), 50);
    assert!(draws.iter().all(|d| d.len() == 1 && d[0] <= 3));
    let other = branching(&["sample", "--series", "b", "--nu", "3,1,0", "--N", "3", "--K", "1", "--seed", "43", "--count", "50"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn sample_of_empty_signature_is_constant() {
    let o = branching(&["sample", "--series", "c", "--nu", "0", "--N", "3", "--K", "2", "--count", "20", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("kappa"));
    assert!(lines.all(|l| l == "0 0"));
}

#[test]
fn spline_csv_sums_to_one() {
    let o = branching(&["spline", "--series", "c", "--nu", "3,1,0", "--N", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,p,decimal"));
    let total: Rat = lines.map(|l| l.split(',').nth(1).unwrap().parse::<Rat>().unwrap()).sum();
    assert_eq!(total, Rat::one());
}

#[test]
fn spline_from_knots() {
    let o = branching(&["spline", "--knots", "5,2,0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("3,2/5,0.400000000000000"), "{text}");
}

#[test]
fn basis_tables() {
    let o = branching(&["basis", "--series", "c", "--L", "2", "--maxk", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("m,k,E,decimal\n1,0,"));
    let g = branching(&["basis", "--a", "0", "--eps", "1/2", "--L", "1", "--maxk", "1", "--table", "g"]);
    assert_eq!(stdout(&g), "k,g_k\n0,1\n1,1 * (u - 1/4) / (u - 9/4)\n");
}

#[test]
fn verify_biortho_at_l4() {
    let o = branching(&["verify", "--only", "biortho", "--L", "4", "--maxk", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "PASS biortho (108 checks)");
}

#[test]
fn verify_failure_exits_one() {
    let o = branching(&["verify", "--only", "biortho", "--L", "2", "--maxk", "6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL biortho"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("biortho"));
}

#[test]
fn verify_reports_in_requested_order() {
    let o = branching(&["verify", "--only", "structure,closed-forms", "--max-n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let names: Vec<&str> = text.lines().map(|l| l.split(' ').nth(1).unwrap()).collect();
    assert_eq!(names, ["structure", "closed-forms"]);
}

#[test]
fn domain_violations_exit_two() {
    let cases: &[&[&str]] = &[
        &["lambda", "--series", "c", "--nu", "1", "--N", "2", "--K", "2"],
        &["lambda", "--a", "-2", "--eps", "1", "--nu", "1", "--N", "2", "--K", "1"],
        &["lambda", "--series", "c", "--nu", "1,2", "--N", "2", "--K", "1"],
        &["lambda", "--series", "q", "--nu", "1", "--N", "2", "--K", "1"],
        &["lambda", "--nu", "1", "--N", "2", "--K", "1"],
        &["spline", "--knots", "1,1"],
        &["verify", "--only", "nonsense"],
    ];
    for args in cases {
        let o = branching(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
        assert!(!o.stderr.is_empty());
    }
}

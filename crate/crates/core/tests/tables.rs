use pencil_core::io::reproduce_table;

fn check(id: u32) {
    let report = reproduce_table(id, 12).unwrap();
    if !report.ok {
        panic!("{}", report.to_text());
    }
}

#[test]
fn table1_rows() {
    check(1);
}

#[test]
fn table2_rows() {
    check(2);
}

#[test]
fn table3_rows() {
    check(3);
}

#[test]
fn table4_rows() {
    check(4);
}

#[test]
fn table5_rows() {
    check(5);
}

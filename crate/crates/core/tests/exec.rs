mod common;

use std::time::Duration;

use common::dbs;
use nldb_core::catalog::Cell;
use nldb_core::exec::{ExecError, Executor};

#[test]
fn write_statements_are_rejected_and_the_file_is_untouched() {
    let path = dbs().path("dog_kennels");
    let before = std::fs::read(&path).unwrap();
    let db = Executor::open(&path).unwrap();
    for sql in [
        "DROP TABLE dogs",
        "DELETE FROM dogs",
        "UPDATE dogs SET age = 0",
        "INSERT INTO breeds VALUES ('X', 'x')",
        "CREATE TABLE t (a)",
        "ATTACH DATABASE ':memory:' AS m",
    ] {
        assert!(matches!(db.execute(sql, 10), Err(ExecError::ReadOnly | ExecError::Sql(_))), "{sql}");
    }
    assert!(matches!(db.execute("DROP TABLE dogs", 10), Err(ExecError::ReadOnly)));
    drop(db);
    assert_eq!(std::fs::read(&path).unwrap(), before);
}

#[test]
fn nested_average_query_finds_clothes() {
    let db = Executor::open(&dbs().path("product_catalog")).unwrap();
    let r = db
        .execute(
            "SELECT product_type_code FROM products GROUP BY product_type_code \
             HAVING avg(product_price) > (SELECT avg(product_price) FROM products)",
            100,
        )
        .unwrap();
    assert_eq!(r.rows, vec![vec![Cell::Text("Clothes".into())]]);
}

#[test]
fn row_cap_truncates() {
    let db = Executor::open(&dbs().path("dog_kennels")).unwrap();
    let r = db.execute("SELECT * FROM dogs", 4).unwrap();
    assert_eq!(r.rows.len(), 4);
    assert!(r.truncated);
    let r = db.execute("SELECT * FROM dogs", 1000).unwrap();
    assert!(!r.truncated);
}

#[test]
fn runaway_queries_time_out() {
    let db = Executor::open(&dbs().path("dog_kennels")).unwrap().with_timeout(Duration::from_millis(100));
    let sql = "WITH RECURSIVE c(x) AS (SELECT 1 UNION ALL SELECT x + 1 FROM c) SELECT count(*) FROM c";
    assert!(matches!(db.execute(sql, 10), Err(ExecError::Timeout(_))));
    // The connection stays usable afterwards.
    assert!(db.execute("SELECT count(*) FROM dogs", 10).is_ok());
}

#[test]
fn missing_file_is_an_open_error() {
    assert!(matches!(Executor::open(std::path::Path::new("/nonexistent/x.sqlite")), Err(ExecError::Open { .. })));
}

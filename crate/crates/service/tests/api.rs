use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::routing::post;
use axum::{Json, Router};
use http_body_util::BodyExt;
use nldb_core::catalog::load_from_database;
use nldb_core::hypothesis::BeamRow;
use nldb_core::sql::parse_sql;
use nldb_core::transition::{tokenize_question, SqlGrammar};
use nldb_service::config::SourceConfig;
use nldb_service::{router, AppState, ServiceConfig};
use serde_json::{json, Value};
use tower::ServiceExt;

const FIG1: &str = "What is the average age of the dogs who have gone through any treatments?";

fn fixture_db(id: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/databases").join(id).join(format!("{id}.sqlite"))
}

fn copy_db(root: &Path, id: &str) {
    std::fs::create_dir_all(root.join(id)).unwrap();
    std::fs::copy(fixture_db(id), root.join(id).join(format!("{id}.sqlite"))).unwrap();
}

fn workspace(ids: &[&str]) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for id in ids {
        copy_db(dir.path(), id);
    }
    dir
}

fn checksum(path: &Path) -> u64 {
    let mut h = DefaultHasher::new();
    std::fs::read(path).unwrap().hash(&mut h);
    h.finish()
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri).header("content-type", "application/json");
    let req = match body {
        Some(b) => req.body(Body::from(b.to_string())).unwrap(),
        None => req.body(Body::empty()).unwrap(),
    };
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let v = serde_json::from_slice(&bytes).unwrap_or(Value::Null);
    (status, v)
}

fn app_for(dir: &Path, edit: impl FnOnce(&mut ServiceConfig)) -> Router {
    let mut cfg = ServiceConfig::for_directory(dir);
    edit(&mut cfg);
    router(AppState::new(cfg))
}

fn rows_for(db: &str, question: &str, sqls: &[&str]) -> Vec<BeamRow> {
    let cat = load_from_database(&fixture_db(db)).unwrap();
    let q = tokenize_question(question);
    sqls.iter()
        .enumerate()
        .map(|(i, sql)| {
            let ast = parse_sql(sql, &cat).unwrap();
            let acts = SqlGrammar::shipped().ast_to_actions(&ast, &cat, &q, None).unwrap();
            BeamRow {
                example: None,
                actions: acts.iter().map(|a| a.to_tag(Some(&cat))).collect(),
                logps: vec![-0.1 * i as f64; acts.len()],
            }
        })
        .collect()
}

fn write_beam_file(dir: &Path, rows: &[BeamRow]) -> PathBuf {
    let path = dir.join("beam.jsonl");
    let text: Vec<String> = rows.iter().map(|r| serde_json::to_string(r).unwrap()).collect();
    std::fs::write(&path, text.join("\n")).unwrap();
    path
}

#[tokio::test]
async fn lists_databases_and_picks_up_new_ones() {
    let dir = workspace(&["dog_kennels", "pets_1"]);
    let app = app_for(dir.path(), |_| {});
    let (status, v) = call(&app, "GET", "/api/databases", None).await;
    assert_eq!(status, StatusCode::OK);
    let ids: Vec<&str> = v.as_array().unwrap().iter().map(|d| d["db_id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["dog_kennels", "pets_1"]);
    assert!(v[0]["table_count"].as_u64().unwrap() >= 5);

    copy_db(dir.path(), "orchestra");
    let (_, v) = call(&app, "GET", "/api/databases", None).await;
    assert_eq!(v.as_array().unwrap().len(), 3);
}

#[tokio::test]
async fn empty_directory_lists_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let app = app_for(dir.path(), |_| {});
    let (status, v) = call(&app, "GET", "/api/databases", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v, json!([]));
}

#[tokio::test]
async fn schema_and_table_preview() {
    let dir = workspace(&["dog_kennels"]);
    let app = app_for(dir.path(), |_| {});
    let (status, v) = call(&app, "GET", "/api/databases/dog_kennels/schema", None).await;
    assert_eq!(status, StatusCode::OK);
    let names: Vec<String> =
        v["tables"].as_array().unwrap().iter().map(|t| t["name"].as_str().unwrap().to_lowercase()).collect();
    assert!(names.contains(&"dogs".to_string()) && names.contains(&"treatments".to_string()), "{names:?}");

    let (status, v) = call(&app, "GET", "/api/databases/dog_kennels/tables/dogs?limit=0", None).await;
    assert_eq!(status, StatusCode::OK);
    assert!(!v["columns"].as_array().unwrap().is_empty());
    assert_eq!(v["rows"], json!([]));

    let (_, v) = call(&app, "GET", "/api/databases/dog_kennels/tables/dogs?limit=2", None).await;
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
}

#[tokio::test]
async fn unknown_names_are_404() {
    let dir = workspace(&["dog_kennels"]);
    let app = app_for(dir.path(), |_| {});
    for uri in ["/api/databases/nope/schema", "/api/databases/nope/tables/dogs", "/api/databases/dog_kennels/tables/cats"]
    {
        let (status, v) = call(&app, "GET", uri, None).await;
        assert_eq!(status, StatusCode::NOT_FOUND, "{uri}");
        assert!(v["error"].is_string());
    }
    let (status, _) = call(&app, "POST", "/api/query", Some(json!({"db_id": "nope", "question": "how many?"}))).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) =
        call(&app, "POST", "/api/execute", Some(json!({"db_id": "nope", "hypothesis_sql": "SELECT 1"}))).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn bad_query_bodies_are_422() {
    let dir = workspace(&["dog_kennels"]);
    let app = app_for(dir.path(), |_| {});
    let (status, v) = call(&app, "POST", "/api/query", Some(json!({"db_id": "dog_kennels", "question": "  "}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(v["error"], "question is empty");
    let (status, _) = call(&app, "POST", "/api/query", Some(json!({"db_id": "dog_kennels"}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    let (status, _) = call(&app, "POST", "/api/query", Some(json!({"db_id": "dog_kennels", "question": "x", "source": "remote"}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn heuristic_query_is_explained() {
    let dir = workspace(&["pets_1"]);
    let app = app_for(dir.path(), |_| {});
    let (status, v) =
        call(&app, "POST", "/api/query", Some(json!({"db_id": "pets_1", "question": "How many pets are there?"}))).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    let hyps = v["hypotheses"].as_array().unwrap();
    assert!(!hyps.is_empty());
    assert_eq!(v["question"], "How many pets are there?");
    let scores: Vec<f64> = hyps.iter().map(|h| h["weighted_score"].as_f64().unwrap()).collect();
    assert!(scores.windows(2).all(|w| w[0] >= w[1]), "{scores:?}");
    for (i, h) in hyps.iter().enumerate() {
        assert_eq!(h["id"], i);
        assert_eq!(h["valid"], true);
        assert!(!h["explanation"]["steps"].as_array().unwrap().is_empty());
    }
}

#[tokio::test]
async fn gibberish_is_not_a_server_error() {
    let dir = workspace(&["dog_kennels"]);
    let app = app_for(dir.path(), |_| {});
    let (status, v) = call(&app, "POST", "/api/query", Some(json!({"db_id": "dog_kennels", "question": "asdf qwerty"}))).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    assert!(v["hypotheses"].is_array());
}

#[tokio::test]
async fn first_three_are_shown_by_default() {
    let dir = workspace(&["dog_kennels"]);
    let rows = rows_for(
        "dog_kennels",
        FIG1,
        &[
            "SELECT avg(age) FROM dogs WHERE dog_id IN (SELECT dog_id FROM treatments)",
            "SELECT avg(age) FROM dogs",
            "SELECT max(age) FROM dogs",
            "SELECT min(age) FROM dogs",
            "SELECT count(*) FROM treatments",
        ],
    );
    let beam = write_beam_file(dir.path(), &rows);
    let app = app_for(dir.path(), |c| {
        c.sources.insert("dog_kennels".into(), SourceConfig::BeamFile { path: beam });
    });
    let (status, v) = call(&app, "POST", "/api/query", Some(json!({"db_id": "dog_kennels", "question": FIG1}))).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    let hyps = v["hypotheses"].as_array().unwrap();
    assert_eq!(hyps.len(), 5);
    let shown: Vec<bool> = hyps.iter().map(|h| h["shown"].as_bool().unwrap()).collect();
    assert_eq!(shown, [true, true, true, false, false]);
    assert_eq!(v["show_more"], 2);

    let top = &hyps[0];
    assert_eq!(top["sql"], "SELECT avg(age) FROM dogs WHERE dog_id IN (SELECT dog_id FROM treatments)");
    let text = top["text"].as_str().unwrap();
    assert!(text.contains("dogs table") && text.contains("treatments table"), "{text}");
    let marked = hyps.iter().any(|h| {
        h["explanation"]["steps"].as_array().unwrap().iter().any(|s| !s["changes"].as_array().unwrap().is_empty())
    });
    assert!(marked);

    let (status, v) = call(&app, "POST", "/api/query", Some(json!({"db_id": "dog_kennels", "question": FIG1, "source": "heuristic"}))).await;
    assert_eq!(status, StatusCode::OK, "{v}");
}

#[tokio::test]
async fn a_single_hypothesis_needs_no_show_more() {
    let dir = workspace(&["dog_kennels"]);
    let rows = rows_for("dog_kennels", "How many dogs?", &["SELECT count(*) FROM dogs"]);
    let beam = write_beam_file(dir.path(), &rows);
    let app = app_for(dir.path(), |c| {
        c.sources.insert("dog_kennels".into(), SourceConfig::BeamFile { path: beam });
    });
    let (_, v) = call(&app, "POST", "/api/query", Some(json!({"db_id": "dog_kennels", "question": "How many dogs?"}))).await;
    assert_eq!(v["hypotheses"].as_array().unwrap().len(), 1);
    assert_eq!(v["show_more"], 0);
}

#[tokio::test]
async fn execute_reads_and_refuses_writes() {
    let dir = workspace(&["dog_kennels"]);
    let file = dir.path().join("dog_kennels/dog_kennels.sqlite");
    let before = checksum(&file);
    let app = app_for(dir.path(), |_| {});

    let (status, v) =
        call(&app, "POST", "/api/execute", Some(json!({"db_id": "dog_kennels", "hypothesis_sql": "SELECT count(*) FROM dogs"})))
            .await;
    assert_eq!(status, StatusCode::OK, "{v}");
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);
    assert!(v["rows"][0][0].is_number());

    let (status, v) = call(
        &app,
        "POST",
        "/api/execute",
        Some(json!({"db_id": "dog_kennels", "hypothesis_sql": FIG1_SQL})),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    let expected = fig1_average();
    assert!((v["rows"][0][0].as_f64().unwrap() - expected).abs() < 1e-9);

    for sql in ["DELETE FROM dogs", "DROP TABLE dogs", "UPDATE dogs SET age = 1", "SELEC nonsense"] {
        let (status, v) =
            call(&app, "POST", "/api/execute", Some(json!({"db_id": "dog_kennels", "hypothesis_sql": sql}))).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{sql}");
        assert!(v["error"].is_string());
    }
    // Every endpoint in turn; none may touch the file.
    call(&app, "GET", "/api/databases", None).await;
    call(&app, "GET", "/api/databases/dog_kennels/schema", None).await;
    call(&app, "GET", "/api/databases/dog_kennels/tables/dogs?limit=5", None).await;
    call(&app, "POST", "/api/query", Some(json!({"db_id": "dog_kennels", "question": FIG1}))).await;
    assert_eq!(checksum(&file), before);
}

const FIG1_SQL: &str = "SELECT avg(age) FROM dogs WHERE dog_id IN (SELECT dog_id FROM treatments)";

fn fig1_average() -> f64 {
    let conn = nldb_core::exec::Executor::open(&fixture_db("dog_kennels")).unwrap();
    conn.execute(FIG1_SQL, 10).unwrap().rows[0][0].as_f64().unwrap()
}

#[tokio::test]
async fn remote_source_down_is_502() {
    let dir = workspace(&["dog_kennels"]);
    let port = {
        let l = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
        l.local_addr().unwrap().port()
    };
    let app = app_for(dir.path(), |c| {
        c.sources.insert(
            "dog_kennels".into(),
            SourceConfig::Remote { url: format!("http://127.0.0.1:{port}/parse"), timeout_ms: 2000 },
        );
    });
    let (status, v) = call(&app, "POST", "/api/query", Some(json!({"db_id": "dog_kennels", "question": FIG1}))).await;
    assert_eq!(status, StatusCode::BAD_GATEWAY);
    assert!(v["error"].as_str().unwrap().starts_with("remote parser:"), "{v}");
}

#[tokio::test(flavor = "multi_thread", worker_threads = 2)]
async fn remote_source_rows_are_explained() {
    let dir = workspace(&["dog_kennels"]);
    let rows = rows_for("dog_kennels", FIG1, &[FIG1_SQL, "SELECT avg(age) FROM dogs"]);
    let seen = Arc::new(std::sync::Mutex::new(None::<Value>));
    let log = seen.clone();
    let mock = Router::new().route(
        "/parse",
        post(move |Json(req): Json<Value>| {
            let rows = rows.clone();
            let log = log.clone();
            async move {
                *log.lock().unwrap() = Some(req);
                Json(json!({ "hypotheses": rows }))
            }
        }),
    );
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(async move { axum::serve(listener, mock).await.unwrap() });

    let app = app_for(dir.path(), |c| {
        c.sources.insert("dog_kennels".into(), SourceConfig::Remote { url: format!("http://{addr}/parse"), timeout_ms: 5000 });
    });
    let (status, v) =
        call(&app, "POST", "/api/query", Some(json!({"db_id": "dog_kennels", "question": FIG1, "beam_size": 4}))).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    assert_eq!(v["hypotheses"][0]["sql"], FIG1_SQL);
    assert_eq!(v["hypotheses"].as_array().unwrap().len(), 2);
    let req = seen.lock().unwrap().clone().unwrap();
    assert_eq!(req, json!({"db_id": "dog_kennels", "question": FIG1, "beam_size": 4}));
}

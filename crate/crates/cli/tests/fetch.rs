mod common;

use std::fs;

use common::{fixture_dir, serve_quotes};
use markowitz_cli::{cmd_fetch, RunConfig};

fn config(dir: &std::path::Path, symbols: &str, template: Option<String>) -> RunConfig {
    let list = dir.join("stocks.txt");
    fs::write(&list, symbols).unwrap();
    RunConfig {
        symbols_file: list,
        data_dir: dir.join("raw"),
        url_template: template,
        ..RunConfig::default()
    }
}

#[test]
fn fixture_symbols_from_local_server() {
    let fx = fixture_dir();
    let template = serve_quotes(fx.join("data"));
    let dir = tempfile::tempdir().unwrap();
    let symbols = fs::read_to_string(fx.join("stocks.txt")).unwrap();
    let cfg = config(dir.path(), &symbols, Some(template));
    let mut out = Vec::new();
    let files = cmd_fetch(&cfg, &mut out).unwrap();
    assert_eq!(files.len(), 10);
    let log = String::from_utf8(out).unwrap();
    assert_eq!(log.lines().filter(|l| l.starts_with("fetched")).count(), 10);
    for f in files {
        let name = f.file_name().unwrap();
        assert_eq!(fs::read(&f).unwrap(), fs::read(fx.join("data").join(name)).unwrap());
    }
}

#[test]
fn one_bad_symbol_among_three_is_a_warning() {
    let template = serve_quotes(fixture_dir().join("data"));
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), "IBM,HPQ,NOPE\n", Some(template));
    let mut out = Vec::new();
    let files = cmd_fetch(&cfg, &mut out).unwrap();
    assert_eq!(files.len(), 2);
    let log = String::from_utf8(out).unwrap();
    let warnings: Vec<&str> = log.lines().filter(|l| l.starts_with("warning")).collect();
    assert_eq!(warnings.len(), 1);
    assert!(warnings[0].contains("NOPE") && warnings[0].contains("404"), "{log}");
    assert!(!dir.path().join("raw/NOPE").exists());
}

#[test]
fn zero_successes_is_nonzero_exit() {
    let template = serve_quotes(fixture_dir().join("data"));
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), "NOPE,NADA\n", Some(template));
    let err = cmd_fetch(&cfg, &mut Vec::new()).unwrap_err();
    assert_ne!(err.code, 0);
}

#[test]
fn unreachable_host_fails_every_symbol() {
    // bind then drop to get a port nothing listens on
    let port = std::net::TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port();
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), "IBM\n", Some(format!("http://127.0.0.1:{port}/{{symbol}}")));
    let mut out = Vec::new();
    let err = cmd_fetch(&cfg, &mut out).unwrap_err();
    assert_eq!(err.code, 1);
    assert!(String::from_utf8(out).unwrap().contains("warning: skipped IBM"));
}

#[test]
fn missing_symbols_file_is_exit_2_naming_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = RunConfig {
        symbols_file: dir.path().join("absent.txt"),
        url_template: Some("http://127.0.0.1:9/{symbol}".into()),
        ..RunConfig::default()
    };
    let err = cmd_fetch(&cfg, &mut Vec::new()).unwrap_err();
    assert_eq!(err.code, 2);
    assert!(err.message.contains("absent.txt"), "{}", err.message);
}

#[test]
fn fetch_needs_a_template() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path(), "IBM\n", None);
    assert_eq!(cmd_fetch(&cfg, &mut Vec::new()).unwrap_err().code, 2);
}

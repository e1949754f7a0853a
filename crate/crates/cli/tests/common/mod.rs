#![allow(dead_code)]

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::net::TcpListener;
use std::path::{Path, PathBuf};
use std::thread;

use markowitz_cli::report::CsvTable;
use markowitz_cli::RunConfig;

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// Config reading the bundled fixture and writing everything under `out`.
pub fn fixture_config(out: &Path) -> RunConfig {
    let fx = fixture_dir();
    RunConfig {
        symbols_file: fx.join("stocks.txt"),
        data_dir: fx.join("data"),
        prices_file: out.join("data/portfolio.txt"),
        output_dir: out.to_path_buf(),
        ..RunConfig::default()
    }
}

pub fn read_table(path: &Path) -> CsvTable {
    let text = fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    CsvTable::parse(&text).unwrap()
}

pub fn numbers(table: &CsvTable, column: &str) -> Vec<f64> {
    let c = table.column(column).unwrap_or_else(|| panic!("no column {column}"));
    table.rows.iter().map(|r| r[c].parse().unwrap()).collect()
}

/// Sum of the cells from `first` to the end of each row.
pub fn row_sums(table: &CsvTable, first: &str) -> Vec<f64> {
    let c = table.column(first).unwrap();
    table
        .rows
        .iter()
        .map(|r| r[c..].iter().map(|x| x.parse::<f64>().unwrap()).sum())
        .collect()
}

/// Every file under `dir` with its contents, sorted by path.
pub fn snapshot(dir: &Path) -> Vec<(PathBuf, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in fs::read_dir(&d).unwrap() {
            let p = entry.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.push((p.strip_prefix(dir).unwrap().to_path_buf(), fs::read(&p).unwrap()));
            }
        }
    }
    out.sort();
    out
}

/// Serves `GET /q/<SYM>` from `data_dir/<SYM>`; unknown symbols get 404.
/// Returns the URL template.
pub fn serve_quotes(data_dir: PathBuf) -> String {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let port = listener.local_addr().unwrap().port();
    thread::spawn(move || {
        for stream in listener.incoming() {
            let Ok(mut stream) = stream else { continue };
            let mut reader = BufReader::new(stream.try_clone().unwrap());
            let mut request = String::new();
            if reader.read_line(&mut request).is_err() {
                continue;
            }
            loop {
                let mut line = String::new();
                if reader.read_line(&mut line).unwrap_or(0) == 0 || line == "\r\n" {
                    break;
                }
            }
            let path = request.split_whitespace().nth(1).unwrap_or("");
            let symbol = path.strip_prefix("/q/").unwrap_or("");
            let body = if symbol.is_empty() || symbol.contains('/') {
                None
            } else {
                fs::read(data_dir.join(symbol)).ok()
            };
            let response = match body {
                Some(b) => {
                    let mut r = format!(
                        "HTTP/1.1 200 OK\r\nContent-Type: text/csv\r\nContent-Length: {}\r\nConnection: close\r\n\r\n",
                        b.len()
                    )
                    .into_bytes();
                    r.extend(b);
                    r
                }
                None => b"HTTP/1.1 404 Not Found\r\nContent-Length: 0\r\nConnection: close\r\n\r\n".to_vec(),
            };
            let _ = stream.write_all(&response);
        }
    });
    format!("http://127.0.0.1:{port}/q/{{symbol}}")
}

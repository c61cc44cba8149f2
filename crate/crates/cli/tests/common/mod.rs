// Each test binary uses a different subset of these helpers.
#![allow(dead_code)]

use std::process::{Command, Output};

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kernelshot"))
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary launches")
}

pub fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

pub fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf8 stderr")
}

pub fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("process exits normally")
}

/// A parsed CSV report with header-name column access.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn parse(text: &str) -> Table {
        let mut lines = text.lines();
        let header: Vec<String> = lines
            .next()
            .expect("csv has a header")
            .split(',')
            .map(str::to_string)
            .collect();
        let rows: Vec<Vec<String>> = lines
            .map(|l| {
                let cells: Vec<String> = l.split(',').map(str::to_string).collect();
                assert_eq!(cells.len(), header.len(), "ragged row: {l}");
                cells
            })
            .collect();
        Table { header, rows }
    }

    fn index(&self, name: &str) -> usize {
        self.header
            .iter()
            .position(|h| h == name)
            .unwrap_or_else(|| panic!("no column {name} in {:?}", self.header))
    }

    pub fn get<'a>(&'a self, row: usize, name: &str) -> &'a str {
        &self.rows[row][self.index(name)]
    }

    pub fn column<'a>(&'a self, name: &str) -> Vec<&'a str> {
        let i = self.index(name);
        self.rows.iter().map(|r| r[i].as_str()).collect()
    }

    pub fn float(&self, row: usize, name: &str) -> f64 {
        self.get(row, name)
            .parse()
            .unwrap_or_else(|_| panic!("column {name} is not a float"))
    }
}

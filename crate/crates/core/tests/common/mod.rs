#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use probmem::counterauto::{parse_automaton, CounterAutomaton};
use probmem::grammar::{parse_grammar, Cfg};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn load<T>(sub: &str, ext: &str, parse: impl Fn(&str) -> probmem::Result<T>) -> Vec<(String, T)> {
    let dir = corpus_dir().join(sub);
    let mut paths: Vec<PathBuf> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == ext))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = fs::read_to_string(&p).unwrap();
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let value = parse(&text).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
            (name, value)
        })
        .collect()
}

pub fn unambiguous_grammars() -> Vec<(String, Cfg)> {
    load("grammars/unambiguous", "cfg", parse_grammar)
}

pub fn ambiguous_grammars() -> Vec<(String, Cfg)> {
    load("grammars/ambiguous", "cfg", parse_grammar)
}

pub fn all_grammars() -> Vec<(String, Cfg)> {
    let mut all = unambiguous_grammars();
    all.extend(ambiguous_grammars());
    all
}

pub fn automata() -> Vec<(String, CounterAutomaton)> {
    load("automata", "ca", parse_automaton)
}

pub fn automaton(name: &str) -> CounterAutomaton {
    automata().into_iter().find(|(n, _)| n == name).unwrap_or_else(|| panic!("no automaton {name}")).1
}

pub fn grammar(name: &str) -> Cfg {
    all_grammars().into_iter().find(|(n, _)| n == name).unwrap_or_else(|| panic!("no grammar {name}")).1
}

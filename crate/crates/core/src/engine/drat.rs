//! DRAT proof logging in the plain text format: learned clauses as
//! zero-terminated literal lines, deletions prefixed with `d`.

use std::io::{self, Write};

use crate::cnf::Literal;

pub struct DratWriter<W: Write> {
    sink: W,
}

impl<W: Write> DratWriter<W> {
    pub fn new(sink: W) -> DratWriter<W> {
        DratWriter { sink }
    }

    pub fn add_clause(&mut self, lits: &[Literal]) -> io::Result<()> {
        self.write_lits(lits)
    }

    /// The empty clause, ending the proof.
    pub fn add_empty(&mut self) -> io::Result<()> {
        self.write_lits(&[])
    }

    pub fn delete_clause(&mut self, lits: &[Literal]) -> io::Result<()> {
        self.sink.write_all(b"d ")?;
        self.write_lits(lits)
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.sink.flush()
    }

    fn write_lits(&mut self, lits: &[Literal]) -> io::Result<()> {
        let mut line = String::new();
        for lit in lits {
            line.push_str(&lit.to_dimacs().to_string());
            line.push(' ');
        }
        line.push_str("0\n");
        self.sink.write_all(line.as_bytes())
    }
}

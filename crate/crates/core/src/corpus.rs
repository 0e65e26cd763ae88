//! Loading a corpus directory: `*.sexp` source programs and `*.prop`
//! property files, found recursively and ordered by path.

use std::fs;
use std::path::{Path, PathBuf};

use crate::srclang::{SrcProgram, SrcType};
use crate::trace::syntax::{parse_property_file, PropertySpec};
use crate::trace::Hyperproperty;
use crate::Error;

#[derive(Clone, Debug)]
pub struct NamedProgram {
    pub name: String,
    pub path: PathBuf,
    pub program: SrcProgram,
}

#[derive(Clone, Debug)]
pub struct NamedProperty {
    pub name: String,
    pub path: PathBuf,
    pub spec: PropertySpec,
}

impl NamedProperty {
    /// The hyperproperty view, named after the file.
    pub fn hyper(&self) -> Hyperproperty {
        self.spec.clone().into_hyper().named(self.name.clone())
    }
}

#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub programs: Vec<NamedProgram>,
    pub properties: Vec<NamedProperty>,
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Config(format!("{}: {e}", path.display()))
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn files(dir: &Path, out: &mut Vec<PathBuf>) -> Result<(), Error> {
    let entries = fs::read_dir(dir).map_err(|e| io_error(dir, e))?;
    for entry in entries {
        let path = entry.map_err(|e| io_error(dir, e))?.path();
        if path.is_dir() {
            files(&path, out)?;
        } else {
            out.push(path);
        }
    }
    Ok(())
}

fn with_path<T>(path: &Path, r: Result<T, Error>) -> Result<T, Error> {
    r.map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
        Error::Type { path: p, message } => Error::Type {
            path: p,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })
}

pub fn load_program(path: &Path) -> Result<NamedProgram, Error> {
    let src = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    Ok(NamedProgram {
        name: stem(path),
        path: path.to_path_buf(),
        program: with_path(path, SrcProgram::parse(&src))?,
    })
}

pub fn load_property(path: &Path, val_cap: u32) -> Result<NamedProperty, Error> {
    let src = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    Ok(NamedProperty {
        name: stem(path),
        path: path.to_path_buf(),
        spec: with_path(path, parse_property_file(&src, val_cap))?,
    })
}

impl Corpus {
    pub fn load(dir: &Path, val_cap: u32) -> Result<Self, Error> {
        let mut paths = Vec::new();
        files(dir, &mut paths)?;
        paths.sort();
        let mut corpus = Corpus::default();
        for path in paths {
            match path.extension().and_then(|e| e.to_str()) {
                Some("sexp") => corpus.programs.push(load_program(&path)?),
                Some("prop") => corpus.properties.push(load_property(&path, val_cap)?),
                _ => {}
            }
        }
        for (i, p) in corpus.programs.iter().enumerate() {
            if corpus.programs[..i].iter().any(|q| q.name == p.name) {
                return Err(Error::Config(format!("duplicate program name `{}`", p.name)));
            }
        }
        for (i, p) in corpus.properties.iter().enumerate() {
            if corpus.properties[..i].iter().any(|q| q.name == p.name) {
                return Err(Error::Config(format!("duplicate property name `{}`", p.name)));
            }
        }
        Ok(corpus)
    }

    pub fn programs_of_type<'a>(&'a self, ty: &'a SrcType) -> impl Iterator<Item = &'a NamedProgram> + 'a {
        self.programs.iter().filter(move |p| p.program.ty().alpha_eq(ty))
    }

    pub fn program(&self, name: &str) -> Option<&NamedProgram> {
        self.programs.iter().find(|p| p.name == name)
    }

    pub fn property(&self, name: &str) -> Option<&NamedProperty> {
        self.properties.iter().find(|p| p.name == name)
    }
}

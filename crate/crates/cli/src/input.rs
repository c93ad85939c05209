use std::path::Path;

use anyhow::{anyhow, Context};
use serde::Deserialize;
use toric_core::catalog::Recipe;
use toric_core::geometry::{GeometricPolytope, PolytopeFile};
use toric_core::lattice::LatticeFile;
use toric_core::{Error, FaceLattice};

/// A polytope as given on the command line: with coordinates when the
/// source has them.
pub enum Input {
    Geometric(GeometricPolytope),
    Combinatorial(FaceLattice),
    Empty,
}

pub struct Loaded {
    pub name: String,
    pub input: Input,
    pub recipe: Option<Recipe>,
}

impl Loaded {
    pub fn lattice(&self) -> FaceLattice {
        match &self.input {
            Input::Geometric(p) => p.lattice.clone(),
            Input::Combinatorial(l) => l.clone(),
            Input::Empty => FaceLattice::empty(),
        }
    }

    pub fn geometric(&self, command: &str) -> anyhow::Result<&GeometricPolytope> {
        match &self.input {
            Input::Geometric(p) => Ok(p),
            _ => Err(Error::CoordinatesRequired(format!(
                "`{command}` needs vertex coordinates, but {} is given only combinatorially",
                self.name
            ))
            .into()),
        }
    }
}

#[derive(Deserialize)]
struct Schema {
    schema: Option<String>,
}

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str, path: &str) -> anyhow::Result<T> {
    serde_json::from_str(text).map_err(|e| {
        anyhow!(Error::Parse { position: e.column(), message: format!("{path}: {e}") })
    })
}

pub fn load_file(path: &str) -> anyhow::Result<Loaded> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let header: Schema = parse_json(&text, path)?;
    let input = match header.schema.as_deref() {
        Some("lattice/v1") => {
            let file: LatticeFile = parse_json(&text, path)?;
            let lattice = FaceLattice::from_file(&file)?;
            if lattice.is_empty_polytope() {
                Input::Empty
            } else {
                Input::Combinatorial(lattice)
            }
        }
        Some("polytope/v1") | None => {
            let file: PolytopeFile = parse_json(&text, path)?;
            let points = file.points()?;
            if points.is_empty() {
                Input::Empty
            } else {
                Input::Geometric(GeometricPolytope::from_points(&points)?)
            }
        }
        Some(other) => return Err(Error::InvalidInput(format!("{path}: unknown schema {other:?}")).into()),
    };
    Ok(Loaded { name: path.to_string(), input, recipe: None })
}

pub fn load_recipe(recipe: Recipe) -> anyhow::Result<Loaded> {
    let input = match recipe.realize()? {
        Some(p) => Input::Geometric(p),
        None => Input::Empty,
    };
    Ok(Loaded { name: recipe.to_string(), input, recipe: Some(recipe) })
}

/// A readable file path, or else a catalog recipe such as `pyramid(cube3)`.
pub fn load(source: &str) -> anyhow::Result<Loaded> {
    if Path::new(source).is_file() {
        load_file(source)
    } else {
        load_recipe(Recipe::parse(source)?)
    }
}

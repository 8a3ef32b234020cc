//! The JSON interchange format.
//!
//! Every file is a [`Document`]: a schema tag, a provenance header and one
//! tagged body. Simplices are written as `[cell_dim, cell_index, collapsed]`,
//! where `collapsed` lists the positions `j` with `j` and `j + 1` identified
//! by the degeneracy. All containers are ordered, so equal values serialize
//! to identical bytes.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::anodyne::Certificate;
use crate::cat::{CatFunctor, FinCategory, Morphism};
use crate::sset::{Cell, CellId, SSetMap, SimplexRef, SimplicialSet, SurjectionWord};
use crate::{Error, Result};

pub const SCHEMA: &str = "dualfib/1";

pub fn tool_version() -> String {
    format!("dualfib {}", env!("CARGO_PKG_VERSION"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    /// Construction steps, outermost last.
    pub construction: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_dim: Option<usize>,
}

impl Provenance {
    pub fn new(construction: impl IntoIterator<Item = String>, max_dim: Option<usize>) -> Self {
        Provenance {
            tool: tool_version(),
            construction: construction.into_iter().collect(),
            max_dim,
        }
    }

    pub fn input() -> Self {
        Provenance::new(["input".to_string()], None)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplexJson(pub usize, pub usize, pub Vec<usize>);

impl From<SimplexRef> for SimplexJson {
    fn from(s: SimplexRef) -> Self {
        SimplexJson(s.cell.dim, s.cell.index, s.degeneracy.collapsed())
    }
}

impl SimplexJson {
    pub fn to_simplex(&self) -> Result<SimplexRef> {
        let degeneracy = SurjectionWord::from_collapsed(self.0 + self.2.len(), &self.2)?;
        Ok(SimplexRef {
            cell: CellId::new(self.0, self.1),
            degeneracy,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub faces: Vec<SimplexJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SSetJson {
    /// `null` when the cells are complete in every dimension.
    pub faithful: Option<usize>,
    pub levels: Vec<Vec<CellJson>>,
}

impl SSetJson {
    pub fn from_sset(x: &SimplicialSet) -> Self {
        let levels = (0..x.counts().len())
            .map(|d| {
                x.level(d)
                    .iter()
                    .map(|c| CellJson {
                        label: c.label.clone(),
                        faces: c.faces.iter().map(|&f| f.into()).collect(),
                    })
                    .collect()
            })
            .collect();
        SSetJson {
            faithful: x.faithful(),
            levels,
        }
    }

    /// Rebuilds the simplicial set, checking references and identities.
    pub fn to_sset(&self) -> Result<SimplicialSet> {
        let cells = self
            .levels
            .iter()
            .enumerate()
            .map(|(d, level)| {
                level
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        let faces = c.faces.iter().map(|f| f.to_simplex()).collect::<Result<Vec<_>>>()?;
                        if faces.len() != if d == 0 { 0 } else { d + 1 } {
                            return Err(Error::Format(format!(
                                "cell {i} of dimension {d} has {} faces",
                                faces.len()
                            )));
                        }
                        Ok(Cell {
                            faces,
                            label: c.label.clone(),
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialSet::new(cells, self.faithful)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub domain: SSetJson,
    pub codomain: SSetJson,
    /// Images of the nondegenerate cells, by dimension.
    pub images: Vec<Vec<SimplexJson>>,
}

impl MapJson {
    pub fn from_map(f: &SSetMap) -> Self {
        MapJson {
            domain: SSetJson::from_sset(f.domain()),
            codomain: SSetJson::from_sset(f.codomain()),
            images: f
                .images()
                .iter()
                .map(|l| l.iter().map(|&s| s.into()).collect())
                .collect(),
        }
    }

    pub fn to_map(&self) -> Result<SSetMap> {
        let domain = Arc::new(self.domain.to_sset()?);
        let codomain = Arc::new(self.codomain.to_sset()?);
        let images = self
            .images
            .iter()
            .map(|l| l.iter().map(|s| s.to_simplex()).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if images.len() != domain.counts().len()
            || images.iter().zip(domain.counts()).any(|(l, c)| l.len() != c)
        {
            return Err(Error::Format("image table does not match the domain".into()));
        }
        for (d, level) in images.iter().enumerate() {
            for s in level {
                if s.dim() != d || s.cell.dim >= codomain.counts().len() || s.cell.index >= codomain.count(s.cell.dim) {
                    return Err(Error::Format(format!("image {s:?} of a {d}-cell is not a simplex of the codomain")));
                }
            }
        }
        SSetMap::new(domain, codomain, images)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// Composites involving an identity may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismJson>,
    /// Name of the identity of each object, in object order.
    pub identities: Vec<String>,
    /// Triples `[g, f, g∘f]` by name.
    pub composition: Vec<[String; 3]>,
}

impl CategoryJson {
    pub fn from_category(c: &FinCategory) -> Self {
        let name = |f: usize| c.morphism(f).name.clone();
        CategoryJson {
            objects: c.objects().to_vec(),
            morphisms: c
                .morphisms()
                .iter()
                .map(|m| MorphismJson {
                    name: m.name.clone(),
                    source: c.objects()[m.source].clone(),
                    target: c.objects()[m.target].clone(),
                })
                .collect(),
            identities: c.identities().iter().map(|&i| name(i)).collect(),
            composition: c
                .composites()
                .into_iter()
                .filter(|&(g, f, _)| !c.is_identity(g) && !c.is_identity(f))
                .map(|(g, f, h)| [name(g), name(f), name(h)])
                .collect(),
        }
    }

    pub fn to_category(&self) -> Result<FinCategory> {
        let object = |s: &str| {
            self.objects
                .iter()
                .position(|o| o == s)
                .ok_or_else(|| Error::Format(format!("unknown object {s}")))
        };
        let morphism = |s: &str| {
            self.morphisms
                .iter()
                .position(|m| m.name == s)
                .ok_or_else(|| Error::Format(format!("unknown morphism {s}")))
        };
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| {
                Ok(Morphism {
                    name: m.name.clone(),
                    source: object(&m.source)?,
                    target: object(&m.target)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let identities = self.identities.iter().map(|s| morphism(s)).collect::<Result<Vec<_>>>()?;
        let mut composites = Vec::new();
        for [g, f, h] in &self.composition {
            composites.push((morphism(g)?, morphism(f)?, morphism(h)?));
        }
        for (k, m) in morphisms.iter().enumerate() {
            if let (Some(&is), Some(&it)) = (identities.get(m.source), identities.get(m.target)) {
                composites.push((k, is, k));
                composites.push((it, k, k));
            }
        }
        FinCategory::new(self.objects.clone(), morphisms, identities, &composites)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorJson {
    pub source: CategoryJson,
    pub target: CategoryJson,
    /// Object images by name, in source object order.
    pub objects: Vec<String>,
    /// Morphism images by name, in source morphism order.
    pub morphisms: Vec<String>,
}

impl FunctorJson {
    pub fn from_functor(f: &CatFunctor) -> Self {
        FunctorJson {
            source: CategoryJson::from_category(&f.source),
            target: CategoryJson::from_category(&f.target),
            objects: f.on_objects.iter().map(|&a| f.target.objects()[a].clone()).collect(),
            morphisms: f.on_morphisms.iter().map(|&m| f.target.morphism(m).name.clone()).collect(),
        }
    }

    pub fn to_functor(&self) -> Result<CatFunctor> {
        let source = Arc::new(self.source.to_category()?);
        let target = Arc::new(self.target.to_category()?);
        let on_objects = self
            .objects
            .iter()
            .map(|s| target.object_index(s).ok_or_else(|| Error::Format(format!("unknown target object {s}"))))
            .collect::<Result<Vec<_>>>()?;
        let on_morphisms = self
            .morphisms
            .iter()
            .map(|s| target.morphism_index(s).ok_or_else(|| Error::Format(format!("unknown target morphism {s}"))))
            .collect::<Result<Vec<_>>>()?;
        CatFunctor::new(source, target, on_objects, on_morphisms)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Body {
    SimplicialSet(SSetJson),
    Map(MapJson),
    Category(CategoryJson),
    Functor(FunctorJson),
    Certificate(Certificate),
    /// Structured report or census.
    Report { content: serde_json::Value },
}

impl Body {
    pub fn kind(&self) -> &'static str {
        match self {
            Body::SimplicialSet(_) => "simplicial-set",
            Body::Map(_) => "map",
            Body::Category(_) => "category",
            Body::Functor(_) => "functor",
            Body::Certificate(_) => "certificate",
            Body::Report { .. } => "report",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub schema: String,
    pub provenance: Provenance,
    pub body: Body,
}

impl Document {
    pub fn new(provenance: Provenance, body: Body) -> Self {
        Document {
            schema: SCHEMA.to_string(),
            provenance,
            body,
        }
    }

    pub fn sset(x: &SimplicialSet, provenance: Provenance) -> Self {
        Document::new(provenance, Body::SimplicialSet(SSetJson::from_sset(x)))
    }

    pub fn map(f: &SSetMap, provenance: Provenance) -> Self {
        Document::new(provenance, Body::Map(MapJson::from_map(f)))
    }

    pub fn category(c: &FinCategory, provenance: Provenance) -> Self {
        Document::new(provenance, Body::Category(CategoryJson::from_category(c)))
    }

    pub fn functor(f: &CatFunctor, provenance: Provenance) -> Self {
        Document::new(provenance, Body::Functor(FunctorJson::from_functor(f)))
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    /// Parses and structurally validates a document.
    pub fn parse(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::Format(e.to_string()))?;
        match value.get("schema").and_then(|s| s.as_str()) {
            Some(SCHEMA) => {}
            Some(other) => return Err(Error::Format(format!("schema {other} is not supported (expected {SCHEMA})"))),
            None => return Err(Error::Format("missing schema field".into())),
        }
        let doc: Document = serde_json::from_str(text)
            .map_err(|e| Error::Format(e.to_string()))?;
        doc.validate()?;
        Ok(doc)
    }

    /// Rebuilds the body's value, surfacing structural errors.
    pub fn validate(&self) -> Result<()> {
        match &self.body {
            Body::SimplicialSet(x) => x.to_sset().map(|_| ()),
            Body::Map(m) => m.to_map().map(|_| ()),
            Body::Category(c) => c.to_category().map(|_| ()),
            Body::Functor(f) => f.to_functor().map(|_| ()),
            Body::Certificate(_) | Body::Report { .. } => Ok(()),
        }
    }

    pub fn to_sset(&self) -> Result<SimplicialSet> {
        match &self.body {
            Body::SimplicialSet(x) => x.to_sset(),
            other => Err(Error::Format(format!("expected a simplicial-set, found a {}", other.kind()))),
        }
    }

    pub fn to_map(&self) -> Result<SSetMap> {
        match &self.body {
            Body::Map(m) => m.to_map(),
            other => Err(Error::Format(format!("expected a map, found a {}", other.kind()))),
        }
    }

    pub fn to_category(&self) -> Result<FinCategory> {
        match &self.body {
            Body::Category(c) => c.to_category(),
            other => Err(Error::Format(format!("expected a category, found a {}", other.kind()))),
        }
    }

    pub fn to_functor(&self) -> Result<CatFunctor> {
        match &self.body {
            Body::Functor(f) => f.to_functor(),
            other => Err(Error::Format(format!("expected a functor, found a {}", other.kind()))),
        }
    }
}

//! Workspace file: a single JSON document of named objects over one ring.
//!
//! Serialization is canonical — sections always present, names sorted,
//! keys in fixed order — so emit(parse(emit(ws))) is byte-identical.

use homalg::complex::{ChainMap, Complex};
use homalg::derived::Roof;
use homalg::dg::{DGAlgebra, DGModule};
use homalg::fpmodule::FPModule;
use homalg::matrix::Ring;
use homalg::ser;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

pub const FORMAT_VERSION: u64 = 1;

pub struct Workspace {
    pub ring: Ring,
    pub modules: BTreeMap<String, FPModule>,
    pub complexes: BTreeMap<String, Complex>,
    pub maps: BTreeMap<String, ChainMap>,
    /// map name -> (source complex name, target complex name)
    pub map_refs: BTreeMap<String, (String, String)>,
    pub roofs: BTreeMap<String, Roof>,
    /// roof name -> (alpha map name, sigma map name)
    pub roof_refs: BTreeMap<String, (String, String)>,
    pub dg_algebras: BTreeMap<String, DGAlgebra>,
    pub dg_modules: BTreeMap<String, DGModule>,
    /// dg module name -> algebra name
    pub dg_module_refs: BTreeMap<String, String>,
}

fn field<'a>(v: &'a Value, k: &str) -> Result<&'a Value, String> {
    v.get(k).ok_or_else(|| format!("missing field {:?}", k))
}

fn section<'a>(v: &'a Value, k: &str) -> Result<Vec<(String, &'a Value)>, String> {
    match v.get(k) {
        None => Ok(Vec::new()),
        Some(Value::Object(m)) => Ok(m.iter().map(|(k, v)| (k.clone(), v)).collect()),
        Some(_) => Err(format!("section {:?} must be an object", k)),
    }
}

fn name_str(v: &Value, what: &str) -> Result<String, String> {
    v.as_str().map(str::to_string).ok_or_else(|| format!("{} must be a name string", what))
}

impl Workspace {
    pub fn empty(ring: Ring) -> Workspace {
        Workspace {
            ring,
            modules: BTreeMap::new(),
            complexes: BTreeMap::new(),
            maps: BTreeMap::new(),
            map_refs: BTreeMap::new(),
            roofs: BTreeMap::new(),
            roof_refs: BTreeMap::new(),
            dg_algebras: BTreeMap::new(),
            dg_modules: BTreeMap::new(),
            dg_module_refs: BTreeMap::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Workspace, String> {
        let v: Value = serde_json::from_str(text).map_err(|e| format!("bad JSON: {}", e))?;
        let version = field(&v, "format_version")?
            .as_u64()
            .ok_or("format_version must be an integer")?;
        if version != FORMAT_VERSION {
            return Err(format!("unsupported format version {}", version));
        }
        let ring = ser::ring_from_json(field(&v, "ring")?)?;
        let mut ws = Workspace::empty(ring);
        for (name, mv) in section(&v, "modules")? {
            ws.modules.insert(name, ser::module_from_json(ring, mv)?);
        }
        for (name, cv) in section(&v, "complexes")? {
            let c = ser::complex_from_json(cv)?;
            if c.ring() != ring {
                return Err(format!("complex {:?} is over the wrong ring", name));
            }
            ws.complexes.insert(name, c);
        }
        for (name, mv) in section(&v, "maps")? {
            let sname = name_str(field(mv, "source")?, "map source")?;
            let tname = name_str(field(mv, "target")?, "map target")?;
            let src = ws
                .complexes
                .get(&sname)
                .ok_or_else(|| format!("map {:?}: unknown complex {:?}", name, sname))?;
            let tgt = ws
                .complexes
                .get(&tname)
                .ok_or_else(|| format!("map {:?}: unknown complex {:?}", name, tname))?;
            let inline = json!({
                "source": ser::complex_to_json(src),
                "target": ser::complex_to_json(tgt),
                "components": field(mv, "components")?,
            });
            let f = ser::chain_map_from_json(&inline)
                .map_err(|e| format!("map {:?}: {}", name, e))?;
            ws.map_refs.insert(name.clone(), (sname, tname));
            ws.maps.insert(name, f);
        }
        for (name, rv) in section(&v, "roofs")? {
            let aname = name_str(field(rv, "alpha")?, "roof numerator")?;
            let sname = name_str(field(rv, "sigma")?, "roof denominator")?;
            let alpha = ws
                .maps
                .get(&aname)
                .ok_or_else(|| format!("roof {:?}: unknown map {:?}", name, aname))?;
            let sigma = ws
                .maps
                .get(&sname)
                .ok_or_else(|| format!("roof {:?}: unknown map {:?}", name, sname))?;
            ws.roof_refs.insert(name.clone(), (aname, sname));
            ws.roofs.insert(name, Roof::new(alpha.clone(), sigma.clone()));
        }
        for (name, av) in section(&v, "dg_algebras")? {
            let a = ser::dg_algebra_from_json(av)
                .map_err(|e| format!("dg algebra {:?}: {}", name, e))?;
            ws.dg_algebras.insert(name, a);
        }
        for (name, mv) in section(&v, "dg_modules")? {
            let aname = name_str(field(mv, "algebra")?, "dg module algebra")?;
            let a = ws
                .dg_algebras
                .get(&aname)
                .ok_or_else(|| format!("dg module {:?}: unknown algebra {:?}", name, aname))?;
            let mut inline = mv
                .as_object()
                .ok_or_else(|| format!("dg module {:?} must be an object", name))?
                .clone();
            inline.insert("algebra".into(), ser::dg_algebra_to_json(a));
            let m = ser::dg_module_from_json(&Value::Object(inline))
                .map_err(|e| format!("dg module {:?}: {}", name, e))?;
            ws.dg_module_refs.insert(name.clone(), aname);
            ws.dg_modules.insert(name, m);
        }
        Ok(ws)
    }

    pub fn to_json(&self) -> Value {
        let obj = |it: Vec<(String, Value)>| {
            Value::Object(it.into_iter().collect::<Map<String, Value>>())
        };
        let modules =
            self.modules.iter().map(|(k, m)| (k.clone(), ser::module_to_json(m))).collect();
        let complexes =
            self.complexes.iter().map(|(k, c)| (k.clone(), ser::complex_to_json(c))).collect();
        let maps = self
            .maps
            .iter()
            .map(|(k, f)| {
                let (s, t) = &self.map_refs[k];
                let x = f.source();
                let comps: Vec<Value> = (x.lo()..=x.hi())
                    .map(|n| ser::matrix_to_json(&f.component_action(n)))
                    .collect();
                (k.clone(), json!({ "source": s, "target": t, "components": comps }))
            })
            .collect();
        let roofs = self
            .roofs
            .keys()
            .map(|k| {
                let (a, s) = &self.roof_refs[k];
                (k.clone(), json!({ "alpha": a, "sigma": s }))
            })
            .collect();
        let dg_algebras = self
            .dg_algebras
            .iter()
            .map(|(k, a)| (k.clone(), ser::dg_algebra_to_json(a)))
            .collect();
        let dg_modules = self
            .dg_modules
            .iter()
            .map(|(k, m)| {
                let mut v = ser::dg_module_to_json(m);
                v.as_object_mut()
                    .unwrap()
                    .insert("algebra".into(), Value::String(self.dg_module_refs[k].clone()));
                (k.clone(), v)
            })
            .collect();
        json!({
            "format_version": FORMAT_VERSION,
            "ring": ser::ring_to_json(self.ring),
            "modules": obj(modules),
            "complexes": obj(complexes),
            "maps": obj(maps),
            "roofs": obj(roofs),
            "dg_algebras": obj(dg_algebras),
            "dg_modules": obj(dg_modules),
        })
    }

    pub fn canonical_text(&self) -> String {
        ser::canonical_text(&self.to_json())
    }

    pub fn object_count(&self) -> usize {
        self.modules.len()
            + self.complexes.len()
            + self.maps.len()
            + self.roofs.len()
            + self.dg_algebras.len()
            + self.dg_modules.len()
    }
}

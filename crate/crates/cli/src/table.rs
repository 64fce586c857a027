//! Character tables and their output formats: json, csv, tex, text.

use serde::Serialize;
use xcat_core::construct::BuildRequest;
use xcat_core::gspace::GradedObject;
use xcat_core::roots::Weight;

#[derive(Serialize)]
pub struct TableMeta {
    pub rs: String,
    pub field: String,
    pub q: String,
    pub ell: u64,
    pub lambda: String,
    pub policy: String,
    pub complete: bool,
    pub choice: String,
}

#[derive(Serialize)]
pub struct TableRow {
    pub weight: Vec<i64>,
    pub height: i64,
    pub multiplicity: u64,
}

/// Rows run from the highest weight downwards (height below λ ascending,
/// then lexicographic on coordinates).
#[derive(Serialize)]
pub struct CharacterTable {
    pub meta: TableMeta,
    pub rows: Vec<TableRow>,
    pub total_dim: u64,
}

impl CharacterTable {
    pub fn from_object(req: &BuildRequest, obj: &GradedObject) -> Self {
        let top = obj
            .lambda()
            .cloned()
            .unwrap_or_else(|| req.lambda.clone());
        let mut rows: Vec<TableRow> = obj
            .character()
            .0
            .iter()
            .map(|(w, &m)| TableRow {
                weight: w.0.clone(),
                height: req.rs.height_below(w, &top).unwrap_or(i64::MAX),
                multiplicity: m,
            })
            .collect();
        rows.sort_by(|a, b| a.height.cmp(&b.height).then(a.weight.cmp(&b.weight)));
        let total_dim = rows.iter().map(|r| r.multiplicity).sum();
        CharacterTable {
            meta: TableMeta {
                rs: req.rs.descriptor(),
                field: req.ctx.descriptor().to_string(),
                q: xcat_core::qarith::context::q_literal(req.ctx.descriptor(), req.ctx.q()),
                ell: req.ctx.ell(),
                lambda: req.lambda.to_string(),
                policy: match req.policy {
                    xcat_core::construct::BuildPolicy::DominantAuto => "auto".into(),
                    xcat_core::construct::BuildPolicy::FixedDepth(h) => format!("depth:{h}"),
                },
                complete: obj.is_complete(),
                choice: obj.choice().tag().to_string(),
            },
            rows,
            total_dim,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("table serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let rank = self.rows.first().map_or(0, |r| r.weight.len());
        let mut out = String::new();
        for i in 0..rank {
            out.push_str(&format!("mu_{i},"));
        }
        out.push_str("multiplicity\n");
        for row in &self.rows {
            for c in &row.weight {
                out.push_str(&format!("{c},"));
            }
            out.push_str(&format!("{}\n", row.multiplicity));
        }
        out
    }

    pub fn to_tex(&self) -> String {
        let mut terms = Vec::new();
        for row in &self.rows {
            let w = Weight(row.weight.clone());
            if row.multiplicity == 1 {
                terms.push(format!("e^{{({w})}}"));
            } else {
                terms.push(format!("{}\\,e^{{({w})}}", row.multiplicity));
            }
        }
        format!(
            "\\operatorname{{ch}} S({}) = {}\n",
            self.meta.lambda,
            terms.join(" + ")
        )
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "S({}) over {}[q={}]  (ell = {}, policy = {}, complete = {})\n",
            self.meta.lambda,
            self.meta.field,
            self.meta.q,
            self.meta.ell,
            self.meta.policy,
            self.meta.complete,
        ));
        out.push_str(&format!("total dimension: {}\n", self.total_dim));
        out.push_str("height  weight          multiplicity\n");
        for row in &self.rows {
            let w = Weight(row.weight.clone());
            out.push_str(&format!(
                "{:>6}  {:<14}  {}\n",
                row.height,
                w.to_string(),
                row.multiplicity
            ));
        }
        out
    }

    pub fn render(&self, format: &str) -> String {
        match format {
            "json" => self.to_json(),
            "csv" => self.to_csv(),
            "tex" => self.to_tex(),
            _ => self.to_text(),
        }
    }
}

//! On-disk array format.
//!
//! JSON is canonical and round-trips cell-for-cell; CSV is a signed-integer
//! row-major export for pasting next to printed tables. Both are UTF-8 and
//! newline-terminated.

use serde::{Deserialize, Serialize};

use heffter_core::construct::{NzsArray, Provenance};

fn default_provenance() -> Provenance {
    Provenance::External
}

/// Array file: header plus signed rows (`null` marks an empty cell).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrayFile {
    pub n: u64,
    pub t: u64,
    pub v: u64,
    #[serde(default = "default_provenance")]
    pub provenance: Provenance,
    pub rows: Vec<Vec<Option<i64>>>,
}

impl ArrayFile {
    pub fn from_array(a: &NzsArray) -> Self {
        let ctx = a.ctx();
        ArrayFile {
            n: a.n_rows() as u64,
            t: ctx.t(),
            v: ctx.modulus(),
            provenance: a.provenance(),
            rows: a.signed_rows(),
        }
    }

    /// Validate the header and shape, then build the array. Entries must be
    /// signed representatives in `±[1, floor(v/2)]`; whether they satisfy
    /// the `NH_t` axioms is the verifier's business, not the parser's.
    pub fn into_array(self) -> Result<NzsArray, String> {
        if self.v != 2 * self.n * self.n + self.t {
            return Err(format!(
                "header says v={}, but 2n²+t = {}",
                self.v,
                2 * self.n * self.n + self.t
            ));
        }
        if self.rows.len() != self.n as usize {
            return Err(format!(
                "expected {} rows, found {}",
                self.n,
                self.rows.len()
            ));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != self.n as usize {
                return Err(format!(
                    "row {} has {} cells, expected {}",
                    i,
                    row.len(),
                    self.n
                ));
            }
            for (j, cell) in row.iter().enumerate() {
                if let Some(x) = cell {
                    if *x == 0 || x.unsigned_abs() > self.v / 2 {
                        return Err(format!(
                            "cell ({i},{j}) = {x} is not a signed representative in ±[1, {}]",
                            self.v / 2
                        ));
                    }
                }
            }
        }
        NzsArray::from_signed_rows(self.n, self.t, &self.rows, self.provenance)
            .map_err(|e| e.to_string())
    }

    /// Pretty JSON with one array row per line, so an n×n grid reads like
    /// the printed tables.
    pub fn to_json(&self) -> String {
        let prov = serde_json::to_string(&self.provenance).expect("provenance serializes");
        let mut s = String::new();
        s.push_str("{\n");
        s.push_str(&format!("  \"n\": {},\n", self.n));
        s.push_str(&format!("  \"t\": {},\n", self.t));
        s.push_str(&format!("  \"v\": {},\n", self.v));
        s.push_str(&format!("  \"provenance\": {prov},\n"));
        s.push_str("  \"rows\": [\n");
        for (i, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = row
                .iter()
                .map(|c| c.map(|x| x.to_string()).unwrap_or_else(|| "null".into()))
                .collect();
            let sep = if i + 1 < self.rows.len() { "," } else { "" };
            s.push_str(&format!("    [{}]{}\n", cells.join(", "), sep));
        }
        s.push_str("  ]\n}\n");
        s
    }

    pub fn parse_json(text: &str) -> Result<ArrayFile, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }

    pub fn to_csv(&self) -> String {
        let prov = serde_json::to_value(self.provenance)
            .ok()
            .and_then(|v| v.as_str().map(String::from))
            .unwrap_or_default();
        let mut out = format!(
            "# NH_{}({};{}) over Z_{} provenance={}\n",
            self.t, self.n, self.n, self.v, prov
        );
        for row in &self.rows {
            let line: Vec<String> = row
                .iter()
                .map(|c| c.map(|x| x.to_string()).unwrap_or_default())
                .collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

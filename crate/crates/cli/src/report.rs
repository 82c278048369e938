use std::fmt::Write;

use serde::Serialize;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct GroupSummary {
    pub name: String,
    pub order: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Field {
    pub key: String,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Section {
    Fields { title: String, fields: Vec<Field> },
    Table { title: String, columns: Vec<String>, rows: Vec<Vec<String>> },
    Lines { title: String, lines: Vec<String> },
}

impl Section {
    pub fn fields<K: Into<String>, V: ToString>(title: &str, items: impl IntoIterator<Item = (K, V)>) -> Section {
        Section::Fields {
            title: title.into(),
            fields: items.into_iter().map(|(k, v)| Field { key: k.into(), value: v.to_string() }).collect(),
        }
    }

    pub fn table(title: &str, columns: &[&str], rows: Vec<Vec<String>>) -> Section {
        Section::Table { title: title.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows }
    }

    pub fn lines(title: &str, lines: Vec<String>) -> Section {
        Section::Lines { title: title.into(), lines }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub format_version: u32,
    pub command: Vec<String>,
    pub group: Option<GroupSummary>,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(command: Vec<String>) -> Report {
        Report { format_version: FORMAT_VERSION, command, group: None, sections: Vec::new() }
    }

    pub fn with_group(mut self, group: &dtorsion::FiniteGroup) -> Report {
        self.group = Some(GroupSummary { name: group.name().to_string(), order: group.order() });
        self
    }

    pub fn push(&mut self, section: Section) {
        self.sections.push(section);
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# dtorsion {}", self.command.join(" ")).unwrap();
        writeln!(out, "# format {}", self.format_version).unwrap();
        if let Some(g) = &self.group {
            writeln!(out, "# group {} order {}", g.name, g.order).unwrap();
        }
        for section in &self.sections {
            out.push('\n');
            match section {
                Section::Fields { title, fields } => {
                    writeln!(out, "[{title}]").unwrap();
                    for f in fields {
                        writeln!(out, "{}\t{}", f.key, f.value).unwrap();
                    }
                }
                Section::Table { title, columns, rows } => {
                    writeln!(out, "[{title}]").unwrap();
                    writeln!(out, "{}", columns.join("\t")).unwrap();
                    for row in rows {
                        writeln!(out, "{}", row.join("\t")).unwrap();
                    }
                }
                Section::Lines { title, lines } => {
                    writeln!(out, "[{title}]").unwrap();
                    for l in lines {
                        writeln!(out, "{l}").unwrap();
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_table_keeps_its_header() {
        let mut r = Report::new(vec!["phases".into()]);
        r.push(Section::table("epsilon", &["g", "h", "epsilon"], vec![]));
        assert!(r.to_text().ends_with("[epsilon]\ng\th\tepsilon\n"));
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["format_version"], 1);
        assert_eq!(v["sections"][0]["kind"], "table");
        assert_eq!(v["sections"][0]["rows"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn fields_render_tab_separated() {
        let mut r = Report::new(vec!["info".into(), "Z2".into()]);
        r.push(Section::fields("group", [("order", 2), ("exponent", 2)]));
        assert!(r.to_text().contains("[group]\norder\t2\nexponent\t2\n"));
    }
}

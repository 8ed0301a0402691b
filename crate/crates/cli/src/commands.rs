//! Subcommand implementations. Each returns the process exit code for
//! completed runs; errors map to exit code 2 in `main`.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use colorvd::builder::schema::DiagramDocument;
use colorvd::generate::{random_sites, IntBox};
use colorvd::verify::lifted_facets;
use colorvd::{
    build_sequences, census_entries, diagram_vertex_count, facets_2d, refined_vertex_count, verify_builder,
    verify_identities, CensusTable, ColoredSiteSet, FacetTable, Metric, Side, VerifyOptions,
};
use serde_json::json;

use crate::sitefile;
use crate::svg::{render, SvgOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub fn load_sites(path: &Path, metric: Metric) -> Result<ColoredSiteSet> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    sitefile::parse(&text, metric).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: &mut dyn Write, path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

pub struct GenArgs {
    pub n: usize,
    pub m: usize,
    pub metric: Metric,
    pub seed: u64,
    pub half_width: i64,
    pub out: Option<PathBuf>,
}

pub fn gen(args: &GenArgs, out: &mut dyn Write) -> Result<i32> {
    if args.m == 0 || args.n < args.m {
        bail!("need n >= m >= 1, got n = {}, m = {}", args.n, args.m);
    }
    let s = random_sites(args.n, args.m, args.metric, args.seed, IntBox::square(args.half_width))?;
    emit(out, args.out.as_ref(), &sitefile::write(&s))?;
    Ok(EXIT_OK)
}

fn matrix(title: &str, rows: &[Vec<i64>], first_row: usize) -> String {
    let mut s = format!("{title}\n");
    let width = rows.first().map_or(0, |r| r.len());
    let _ = write!(s, "{:>4}", "c\\j");
    for j in 0..width {
        let _ = write!(s, " {j:>6}");
    }
    s.push('\n');
    for (c, row) in rows.iter().enumerate().skip(first_row) {
        let _ = write!(s, "{c:>4}");
        for v in row {
            let _ = write!(s, " {v:>6}");
        }
        s.push('\n');
    }
    s
}

pub fn census_cmd(file: &Path, metric: Metric, json_out: Option<&PathBuf>, out: &mut dyn Write) -> Result<i32> {
    let s = load_sites(file, metric)?;
    let entries = census_entries(&s)?;
    let t = CensusTable::from_entries(metric, s.n(), s.m(), &entries);
    let mut text = format!("metric: {metric}, n = {}, m = {}, entries = {}\n", s.n(), s.m(), entries.len());
    text += &matrix("v (min side)", &t.v, 1);
    text += &matrix("vbar (max side)", &t.vbar, 1);
    text += &format!("{:>4} {:>8} {:>8} {:>12} {:>12}\n", "k", "min", "max", "refined-min", "refined-max");
    for k in 1..=s.m() {
        let _ = writeln!(
            text,
            "{k:>4} {:>8} {:>8} {:>12} {:>12}",
            diagram_vertex_count(&t, k, Side::Min)?,
            diagram_vertex_count(&t, k, Side::Max)?,
            refined_vertex_count(&t, k, Side::Min)?,
            refined_vertex_count(&t, k, Side::Max)?
        );
    }
    out.write_all(text.as_bytes())?;
    if let Some(p) = json_out {
        fs::write(p, serde_json::to_string_pretty(&t)?)?;
    }
    Ok(EXIT_OK)
}

pub fn facets_cmd(file: &Path, metric: Metric, json_out: Option<&PathBuf>, out: &mut dyn Write) -> Result<i32> {
    let s = load_sites(file, metric)?;
    let f2: FacetTable = facets_2d(&s);
    let mut text = format!("n = {}, m = {}\n", s.n(), s.m());
    text += &matrix("planar facets e[c][j]", &f2.counts, 1);
    let f3 = (metric == Metric::Euclidean).then(|| lifted_facets(&s));
    if let Some(f3) = &f3 {
        text += &matrix("lifted facets e[c][j]", &f3.counts, 1);
    }
    out.write_all(text.as_bytes())?;
    if let Some(p) = json_out {
        let doc = json!({ "facets_2d": f2, "facets_3d": f3 });
        fs::write(p, serde_json::to_string_pretty(&doc)?)?;
    }
    Ok(EXIT_OK)
}

pub struct BuildArgs {
    pub file: PathBuf,
    pub metric: Metric,
    pub k: Option<usize>,
    pub sides: Vec<Side>,
    pub out: Option<PathBuf>,
    pub samples_per_face: usize,
}

fn require_builder_metric(metric: Metric) -> Result<()> {
    if metric != Metric::Euclidean {
        bail!("the diagram builder supports only the Euclidean metric; use `colorvd census --metric linf` for L-infinity counts");
    }
    Ok(())
}

pub fn build_cmd(args: &BuildArgs, out: &mut dyn Write) -> Result<i32> {
    require_builder_metric(args.metric)?;
    let s = load_sites(&args.file, args.metric)?;
    let k = args.k.unwrap_or(s.m());
    let (min, max) = build_sequences(&s, k)?;
    let chosen: Vec<_> = [&min, &max].into_iter().filter(|q| args.sides.contains(&q.side)).collect();
    let mut text = format!(
        "{:>5} {:>4} {:>8} {:>6} {:>6} {:>9} {:>7} {:>7} {:>7}\n",
        "order", "side", "vertices", "edges", "faces", "refined-v", "new-c1", "new-c2", "new-c3"
    );
    for seq in &chosen {
        for o in &seq.orders {
            let st = &o.stats;
            let _ = writeln!(
                text,
                "{:>5} {:>4} {:>8} {:>6} {:>6} {:>9} {:>7} {:>7} {:>7}",
                st.order,
                seq.side,
                st.vertices,
                st.edges,
                st.faces,
                st.refined_vertices,
                st.new_vertices[1],
                st.new_vertices[2],
                st.new_vertices[3]
            );
        }
    }
    if chosen.len() == 2 {
        let n = s.n() as i64;
        for i in 0..k.min(s.m() - 1) {
            let total = min.orders[i].stats.vertices + max.orders[i].stats.vertices;
            let kk = i as i64 + 1;
            let _ = writeln!(text, "total k={kk}: {total} vertices (4k(n-k)-2n = {})", 4 * kk * (n - kk) - 2 * n);
        }
    }
    let mut code = EXIT_OK;
    if args.samples_per_face > 0 {
        let entries = census_entries(&s)?;
        let t = CensusTable::from_entries(args.metric, s.n(), s.m(), &entries);
        let r = verify_builder(&s, &entries, &t, &chosen, args.samples_per_face)?;
        let failed = r.failures().count();
        let _ = writeln!(text, "cross-checks: {} records, {failed} failed", r.records.len());
        if failed > 0 {
            text += &r.to_string();
            code = EXIT_FAIL;
        }
    }
    out.write_all(text.as_bytes())?;
    if let Some(p) = &args.out {
        let doc = DiagramDocument::new(&s, &chosen);
        fs::write(p, doc.to_json()).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(code)
}

pub struct VerifyArgs {
    pub file: PathBuf,
    pub metric: Metric,
    pub k: Option<usize>,
    pub seed: u64,
    pub subsets: usize,
    pub samples_per_face: usize,
    pub skip_builder: bool,
    pub out: Option<PathBuf>,
}

pub fn verify_cmd(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let s = load_sites(&args.file, args.metric)?;
    if let Some(k) = args.k {
        if k == 0 || k > s.m() {
            bail!("order {k} outside 1..={}", s.m());
        }
    }
    let entries = census_entries(&s)?;
    let t = CensusTable::from_entries(args.metric, s.n(), s.m(), &entries);
    let opts = VerifyOptions { subsets: args.subsets, seed: args.seed, max_order: args.k };
    let f3 = lifted_facets(&s);
    let mut report = verify_identities(&s, &t, &facets_2d(&s), &f3, opts)?;
    if args.metric == Metric::Euclidean && !args.skip_builder {
        let (min, max) = build_sequences(&s, args.k.unwrap_or(s.m()))?;
        let b = verify_builder(&s, &entries, &t, &[&min, &max], args.samples_per_face)?;
        report.records.extend(b.records);
    }
    let failed = report.failures().count();
    let mut text = report.to_string();
    let _ = writeln!(text, "{} records, {failed} failed", report.records.len());
    out.write_all(text.as_bytes())?;
    if let Some(p) = &args.out {
        fs::write(p, serde_json::to_string_pretty(&report)?)?;
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAIL })
}

pub fn svg_cmd(diagram: &Path, out_path: Option<&PathBuf>, opts: SvgOptions, out: &mut dyn Write) -> Result<i32> {
    let text = fs::read_to_string(diagram).with_context(|| format!("reading {}", diagram.display()))?;
    let doc = DiagramDocument::from_json(&text)?;
    let svg = render(&doc, opts)?;
    emit(out, out_path, &svg)?;
    Ok(EXIT_OK)
}

//! Plain-text rendering that mirrors the layout of the worked-example
//! tables: special vectors on the left, the reduced middle convolutions on
//! the right, then bounds, rows and the exact weight.

use enb_core::enb::EnbParams;
use enb_core::tensor::{ComplexityReport, CyclicVector};

use crate::formats::{element_to_csv, upper_note};

fn vec_str(v: &CyclicVector) -> String {
    let parts: Vec<String> = v.entries().iter().map(element_to_csv).collect();
    format!("({})", parts.join(", "))
}

pub fn render_params(params: &EnbParams) -> String {
    let mut out = String::new();
    let curve = params.curve();
    let coeffs: Vec<String> = curve.coefficients().iter().map(element_to_csv).collect();
    out.push_str(&format!("q = {}, n = {}\n", params.q(), params.n()));
    out.push_str(&format!("curve (a1,a2,a3,a4,a6) = ({})\n", coeffs.join(", ")));
    out.push_str(&format!("torsion point t = {}\n", point_str(params.torsion())));
    let qcoeffs: Vec<String> =
        params.isogeny().codomain().coefficients().iter().map(element_to_csv).collect();
    out.push_str(&format!("quotient curve = ({})\n", qcoeffs.join(", ")));
    out.push_str(&format!("generator a = {}\n", point_str(params.generator())));
    let modulus: Vec<String> = params.modulus().iter().map(element_to_csv).collect();
    out.push_str(&format!("modulus (low to high) = [{}]\n", modulus.join(", ")));
    out.push_str(&format!("lifted point b = {}\n", point_str(params.lifted())));
    out.push_str(&format!(
        "scalars: c = {}, a = {}, b = {}\n",
        element_to_csv(params.constant()),
        element_to_csv(params.scale()),
        element_to_csv(params.offset()),
    ));
    out.push_str(&format!("auxiliary point R = {}\n", point_str(params.aux())));
    out.push_str(&format!(
        "n_q = {} (sufficient condition satisfied: {})\n",
        params.existence_index(),
        params.advisory(),
    ));
    out
}

fn point_str(p: &enb_core::Point) -> String {
    match p {
        enb_core::Point::Infinity => "O".into(),
        enb_core::Point::Affine(x, y) => {
            format!("({}, {})", element_to_csv(x), element_to_csv(y))
        }
    }
}

pub fn render_report(report: &ComplexityReport, reported_upper: Option<u64>, full: bool) -> String {
    let mut out = String::new();
    let left = [
        ("Rx  ", vec_str(&report.special.rx)),
        ("R   ", vec_str(&report.special.r)),
        ("R^-1", vec_str(&report.special.r_inv)),
    ];
    let left_width = left.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    out.push_str(&format!(
        "{:6}{:left_width$}   (R^-1 * <R>_k) for k = 2..n-2\n",
        "", ""
    ));
    for (i, (label, value)) in left.iter().enumerate() {
        let right = report
            .middle
            .get(i)
            .map(|m| vec_str(&m.vector))
            .unwrap_or_default();
        out.push_str(&format!("{label}  {value:left_width$}   {right}\n"));
    }
    for m in report.middle.iter().skip(3) {
        out.push_str(&format!("{:6}{:left_width$}   {}\n", "", "", vec_str(&m.vector)));
    }
    out.push_str(&format!("\nmiddle weight sum = {}\n", report.middle_sum));
    out.push_str(&format!("bounds: {} <= C <= {}\n", report.lower, report.upper));
    if let Some(note) = upper_note(report.upper, reported_upper) {
        out.push_str(&format!("note: {note}\n"));
    }
    if full {
        let n = report.row_weights.len();
        out.push_str(&format!("\niota = {}\n", vec_str(&report.special.iota)));
        out.push_str(&format!(
            "row 0   = {}  (weight {})\n",
            vec_str(&report.row_first),
            report.row_first.weight()
        ));
        out.push_str(&format!(
            "row 1   = {}  (weight {})\n",
            vec_str(&report.row_second),
            report.row_second.weight()
        ));
        out.push_str(&format!(
            "row n-1 = {}  (weight {})\n",
            vec_str(&report.row_last),
            report.row_last.weight()
        ));
        let weights: Vec<String> = report.row_weights.iter().map(|w| w.to_string()).collect();
        out.push_str(&format!("row weights = [{}]\n", weights.join(", ")));
        out.push_str(&format!("exact complexity C = {}\n", report.exact));
        out.push_str(&format!("\nshift-product matrix (k = 1..{n}):\n"));
        for row in &report.m_matrix {
            out.push_str(&format!("  {}\n", vec_str(row)));
        }
    }
    out
}

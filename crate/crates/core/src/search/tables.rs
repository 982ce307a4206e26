//! The printed tables of orbit-equation roots, recomputed and compared.

use num_traits::ToPrimitive;
use serde_json::{json, Value};

use super::equation::{solve_in, Agreement, CandidateEquation, Step, TableRow};
use crate::error::Result;
use crate::exactnum::{rat, IntPolynomial};
use crate::expansions::SpecialPoint::{self, InvQ, Y, Z};
use crate::symbolic::Window;

/// One printed line: the equation, the printed root and polynomial
/// (coefficients highest degree first).
struct Printed {
    steps: Vec<(SpecialPoint, &'static [u8], SpecialPoint)>,
    decimal: &'static str,
    poly: &'static [i64],
}

const Q1: &[i64] = &[1, 0, -1, -1, -2, -1, -1];
const Q2: &[i64] = &[1, 0, -2, -1, 0, 0, -1];
const Q3: &[i64] = &[1, -1, -1, 0, -1, 1];
const QPP: &[i64] = &[1, -2, 1, -1, 1, -1];

const T0_T1: &[u8] = &[1, 0];
const T0_2_T1: &[u8] = &[1, 0, 0];
const T0_3_T1: &[u8] = &[1, 0, 0, 0];
const ESC2: &[u8] = &[1, 0, 0, 1, 0];
const ESC3: &[u8] = &[1, 0, 0, 1];

fn row(
    from: SpecialPoint,
    word: &'static [u8],
    to: SpecialPoint,
    decimal: &'static str,
    poly: &'static [i64],
) -> Printed {
    Printed { steps: vec![(from, word, to)], decimal, poly }
}

fn printed(which: u8) -> Vec<Printed> {
    match which {
        1 => vec![
            row(Y(2), T0_2_T1, Y(4), "1.65027", &[1, -1, -1, -1, 1]),
            row(Y(2), T0_2_T1, Y(5), "1.63923", &[1, 0, -2, -2, 0, 1, 1]),
            row(Y(2), ESC2, Y(1), "1.65637", &[1, 0, -2, -1, -1, -1]),
            row(Y(2), ESC2, Y(2), "1.64308", &[1, -1, -1, 0, 0, -1]),
            row(Y(2), ESC2, Y(3), "1.63420", &[1, 0, -2, -1, 0, -1, -1, -1]),
            row(Y(2), ESC2, Z(1), "1.64114", &[1, -1, -1]),
            row(Y(2), ESC2, Z(2), "1.65363", &[1, 0, -2, -1, 0, 1]),
            row(Y(2), ESC2, Z(3), "1.66065", &[1, -1, -1, 0, 0, 1]),
        ],
        2 => vec![
            row(Y(3), T0_T1, Z(4), "1.66041", &[1, -1, 0, -1, -1, 0, -1]),
            row(Y(3), T0_T1, Z(5), "1.66883", &[1, 0, -1, -1, -2, -1, -1, -1, -1]),
            row(Y(3), T0_T1, Z(6), "1.67365", QPP),
            row(Y(3), T0_T1, Z(7), "1.67644", &[1, 0, -1, -1, -2, -1, -1, -1, -1, -1, -1]),
            row(Y(3), T0_T1, InvQ, "1.68042", Q3),
            row(Y(3), ESC3, Y(1), "1.68042", Q3),
            row(Y(3), ESC3, Y(2), "1.65963", &[1, 0, -2, -1, -1, 0, 1, 1]),
            row(Y(3), ESC3, Y(3), "1.64541", Q1),
            row(Y(3), ESC3, Z(1), "1.65462", Q2),
            row(Y(3), ESC3, Z(2), "1.67365", QPP),
            row(Y(3), ESC3, Z(3), "1.68400", &[1, 0, -2, -1, 0, 0, -1, -1, -1]),
        ],
        3 => vec![
            row(Y(1), T0_3_T1, Y(1), "1.68042", Q3),
            row(Y(1), T0_3_T1, Y(2), "1.65963", &[1, 0, -2, -1, -1, 0, 1, 1]),
            row(Y(1), T0_3_T1, Y(3), "1.64541", Q1),
            row(Y(1), T0_3_T1, Z(1), "1.65462", Q2),
            row(Y(1), T0_3_T1, Z(2), "1.67365", QPP),
            row(Y(1), T0_3_T1, Z(3), "1.68400", &[1, 0, -2, -1, 0, 0, -1, -1, -1]),
            row(Y(2), T0_2_T1, Y(1), "1.72208", &[1, -1, -1, -1, 1]),
            row(Y(2), T0_2_T1, Y(2), "1.68929", &[1, 0, -2, -2, 0, 1, 1]),
            row(Y(2), T0_2_T1, Y(3), "1.6663", &[1, -1, -1, -1, 1, 0, 1]),
            row(Y(2), T0_2_T1, Z(1), "1.67602", &[1, 0, -2, -1, 0, -1]),
            row(Y(2), T0_2_T1, Z(2), "1.7049", &[1, -1, -1, 0, 0, -1]),
            row(Y(2), T0_2_T1, Z(3), "1.72004", &[1, 0, -2, -1, 0, -1, -1, -1]),
            row(Y(3), T0_T1, Z(3), "1.64541", Q1),
            Printed { steps: vec![(Y(3), T0_T1, Z(6)), (Z(6), &[0, 1], Z(2))], decimal: "1.67365", poly: QPP },
            Printed { steps: vec![(Y(3), T0_T1, InvQ), (InvQ, &[0, 1], Y(1))], decimal: "1.68042", poly: Q3 },
        ],
        _ => Vec::new(),
    }
}

/// Window the table roots are isolated in.
pub fn table_window() -> Window {
    Window::rational(&rat(8, 5), &rat(7, 4))
}

/// Compares a recomputed root with a printed one. The decimal must agree
/// at the printed precision; the printed polynomial must vanish at the
/// root and divide the recomputed one.
pub fn agreement(r: &TableRow, poly: &IntPolynomial, decimal: &str) -> Agreement {
    let places = decimal.split('.').nth(1).map_or(0, str::len);
    if r.root.refine_to_digits(places) != decimal {
        return Agreement::DecimalMismatch;
    }
    if r.root.is_root_of(poly) && r.equation.cleared.pseudo_rem(poly).is_zero() {
        Agreement::Match
    } else {
        Agreement::PolynomialMismatch
    }
}

/// Recomputes every printed line of table 1, 2 or 3.
pub fn emit_tables(which: u8) -> Result<Vec<TableRow>> {
    let w = table_window();
    let mut out = Vec::new();
    for p in printed(which) {
        let steps = p.steps.iter().map(|&(f, word, t)| Step::new(f, word, t)).collect();
        let eq = CandidateEquation::new(steps)?;
        let poly = IntPolynomial::from_descending(p.poly);
        let target: f64 = p.decimal.parse().unwrap();
        // The root matching the printed decimal, else the nearest one.
        let mut rows = solve_in(&eq, &w)?;
        let pick =
            rows.iter().position(|r| agreement(r, &poly, p.decimal) != Agreement::DecimalMismatch).or_else(|| {
                (0..rows.len()).min_by(|&a, &b| {
                    let da = (rows[a].root.to_f64() - target).abs();
                    let db = (rows[b].root.to_f64() - target).abs();
                    da.total_cmp(&db)
                })
            });
        let Some(i) = pick else { continue };
        let mut r = rows.swap_remove(i);
        r.agreement = Some(agreement(&r, &poly, p.decimal));
        r.printed_polynomial = Some(poly);
        r.printed_decimal = Some(p.decimal.to_string());
        out.push(r);
    }
    Ok(out)
}

fn coeffs_json(p: &IntPolynomial) -> Value {
    Value::Array(
        p.coeffs().iter().map(|c| c.to_i64().map_or_else(|| Value::String(c.to_string()), |v| json!(v))).collect(),
    )
}

/// JSON row: equation, k, ascending polynomial coefficients, root, printed
/// columns and agreement.
pub fn row_json(r: &TableRow, certificate: Option<Value>) -> Value {
    json!({
        "equation": r.equation.to_string(),
        "k": r.k,
        "polynomial": coeffs_json(&r.equation.cleared),
        "root_5dp": r.root_decimal_5dp,
        "printed_polynomial": r.printed_polynomial.as_ref().map(coeffs_json),
        "printed_root_5dp": r.printed_decimal,
        "agreement": r.agreement.map(Agreement::name),
        "certificate": certificate,
    })
}

pub const CSV_HEADER: [&str; 7] =
    ["equation", "k", "polynomial", "root_5dp", "printed_polynomial", "printed_root_5dp", "agreement"];

/// CSV fields in the order of [`CSV_HEADER`]; polynomials as ascending
/// coefficient lists separated by spaces.
pub fn row_csv(r: &TableRow) -> Vec<String> {
    let coeffs = |p: &IntPolynomial| p.to_coeff_string().replace(',', " ");
    vec![
        r.equation.to_string(),
        r.k.map(|k| k.to_string()).unwrap_or_default(),
        coeffs(&r.equation.cleared),
        r.root_decimal_5dp.clone(),
        r.printed_polynomial.as_ref().map(coeffs).unwrap_or_default(),
        r.printed_decimal.clone().unwrap_or_default(),
        r.agreement.map(|a| a.name().to_string()).unwrap_or_default(),
    ]
}

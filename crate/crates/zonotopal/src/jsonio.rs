//! The documented JSON schemas: vector lists, polynomials, P-space bases,
//! lattice point sets, Tutte polynomials, spline dumps, value files, and
//! interpolants. Rationals serialize as `"p/q"` strings (`"p"` when the
//! denominator is one).

use crate::error::{Error, Result};
use crate::interpolate::{GridFunction, Interpolant};
use crate::poly::{Exponent, MultiPoly};
use crate::pspace::{PSpaceBasis, SpaceKind};
use crate::rational::{format_rat, parse_rat, to_f64, Rat};
use crate::spline::PiecewiseSpline;
use crate::vectorlist::{TuttePoly, VectorList};
use crate::zonotope::LatticePointSet;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixDto {
    pub dim: usize,
    pub vectors: Vec<Vec<i64>>,
}

impl MatrixDto {
    pub fn to_list(&self) -> Result<VectorList> {
        VectorList::new(self.dim, self.vectors.clone())
    }

    pub fn from_list(list: &VectorList) -> Self {
        MatrixDto {
            dim: list.dim(),
            vectors: list.vectors().to_vec(),
        }
    }
}

pub fn parse_matrix(json: &str) -> Result<VectorList> {
    let dto: MatrixDto =
        serde_json::from_str(json).map_err(|e| Error::InvalidInput(format!("matrix JSON: {e}")))?;
    dto.to_list()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermDto {
    pub exps: Vec<u32>,
    pub coef: String,
}

pub fn poly_to_terms(p: &MultiPoly) -> Vec<TermDto> {
    p.terms()
        .map(|(e, c)| TermDto {
            exps: e.0.clone(),
            coef: format_rat(c),
        })
        .collect()
}

pub fn poly_from_terms(nvars: usize, terms: &[TermDto]) -> Result<MultiPoly> {
    let mut p = MultiPoly::zero(nvars);
    for t in terms {
        if t.exps.len() != nvars {
            return Err(Error::InvalidInput(format!(
                "term exponents {:?} do not match {} variables",
                t.exps, nvars
            )));
        }
        let c = parse_rat(&t.coef)?;
        p = p.add(&MultiPoly::monomial(nvars, t.exps.clone(), c));
    }
    Ok(p)
}

pub fn parse_poly(nvars: usize, json: &str) -> Result<MultiPoly> {
    let terms: Vec<TermDto> = serde_json::from_str(json)
        .map_err(|e| Error::InvalidInput(format!("polynomial JSON: {e}")))?;
    poly_from_terms(nvars, &terms)
}

#[derive(Debug, Clone, Serialize)]
pub struct PSpaceDto {
    pub kind: String,
    pub hilbert: Vec<usize>,
    pub dimension: usize,
    pub basis: Vec<Vec<TermDto>>,
}

impl PSpaceDto {
    pub fn from_basis(b: &PSpaceBasis) -> Self {
        PSpaceDto {
            kind: match b.kind() {
                SpaceKind::Central => "central".into(),
                SpaceKind::Internal => "internal".into(),
            },
            hilbert: b.hilbert(),
            dimension: b.dimension(),
            basis: b.basis().iter().map(poly_to_terms).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PointsDto {
    pub points: Vec<Vec<i64>>,
}

impl PointsDto {
    pub fn from_set(s: &LatticePointSet) -> Self {
        PointsDto {
            points: s.points().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TutteTermDto {
    pub x: u32,
    pub y: u32,
    pub coef: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TutteDto {
    pub terms: Vec<TutteTermDto>,
    pub pretty: String,
    pub at_0_1: i64,
    pub at_1_1: i64,
}

impl TutteDto {
    pub fn from_poly(t: &TuttePoly) -> Self {
        TutteDto {
            terms: t
                .coeffs()
                .iter()
                .map(|(&(x, y), &coef)| TutteTermDto { x, y, coef })
                .collect(),
            pretty: t.to_display(),
            at_0_1: t.eval(0, 1),
            at_1_1: t.eval(1, 1),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SplinePieceDto {
    pub signs: String,
    pub poly: Vec<TermDto>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SplineDumpDto {
    pub normals: Vec<Vec<i64>>,
    pub pieces: Vec<SplinePieceDto>,
    pub degree: u32,
    pub translation: Vec<i64>,
}

impl SplineDumpDto {
    pub fn from_spline(s: &PiecewiseSpline) -> Self {
        SplineDumpDto {
            normals: s.arrangement().normals().to_vec(),
            pieces: s
                .arrangement()
                .topes()
                .iter()
                .zip(s.pieces())
                .map(|(tope, piece)| SplinePieceDto {
                    signs: tope
                        .signs
                        .iter()
                        .map(|&v| if v > 0 { '+' } else { '-' })
                        .collect(),
                    poly: poly_to_terms(piece),
                })
                .collect(),
            degree: s.degree(),
            translation: s.translation().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValueEntryDto {
    pub point: Vec<i64>,
    pub value: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValuesFileDto {
    pub matrix: MatrixDto,
    pub values: Vec<ValueEntryDto>,
}

impl ValuesFileDto {
    pub fn parse(json: &str) -> Result<(VectorList, GridFunction)> {
        let dto: ValuesFileDto = serde_json::from_str(json)
            .map_err(|e| Error::InvalidInput(format!("values JSON: {e}")))?;
        let list = dto.matrix.to_list()?;
        let pairs = dto
            .values
            .iter()
            .map(|e| Ok((e.point.clone(), parse_rat(&e.value)?)))
            .collect::<Result<Vec<_>>>()?;
        let f = GridFunction::from_pairs(list.dim(), pairs)?;
        Ok((list, f))
    }

    pub fn render(list: &VectorList, f: &GridFunction) -> Self {
        ValuesFileDto {
            matrix: MatrixDto::from_list(list),
            values: f
                .support()
                .map(|(p, v)| ValueEntryDto {
                    point: p.clone(),
                    value: format_rat(v),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateEntryDto {
    pub point: Vec<i64>,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub float: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InterpolantDto {
    pub poly: Vec<TermDto>,
    pub pretty: String,
    pub internal_basis_coords: Vec<String>,
    pub certificate: Vec<CertificateEntryDto>,
}

impl InterpolantDto {
    pub fn from_interpolant(sol: &Interpolant, float: bool) -> Self {
        InterpolantDto {
            poly: poly_to_terms(&sol.poly),
            pretty: sol.poly.to_string(),
            internal_basis_coords: sol.internal_coords.iter().map(format_rat).collect(),
            certificate: sol
                .certificate
                .iter()
                .map(|(p, v)| CertificateEntryDto {
                    point: p.clone(),
                    value: format_rat(v),
                    float: float.then(|| to_f64(v)),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ValueDto {
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub float: Option<f64>,
}

impl ValueDto {
    pub fn from_rat(v: &Rat, float: bool) -> Self {
        ValueDto {
            value: format_rat(v),
            float: float.then(|| to_f64(v)),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TuWitnessDto {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub det: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckTuDto {
    pub tu: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<TuWitnessDto>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorBodyDto {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorDto {
    pub error: ErrorBodyDto,
}

impl ErrorDto {
    pub fn from_error(e: &Error) -> Self {
        ErrorDto {
            error: ErrorBodyDto {
                kind: e.kind().to_string(),
                message: e.to_string(),
            },
        }
    }
}

/// Parses a comma-separated rational point such as `"3/2,-1,0"`.
pub fn parse_point(s: &str) -> Result<Vec<Rat>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rat).collect()
}

pub fn exponent_key(e: &Exponent) -> Vec<u32> {
    e.0.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn matrix_round_trip() {
        let json = r#"{"dim": 2, "vectors": [[1,0],[0,1],[1,1]]}"#;
        let list = parse_matrix(json).unwrap();
        assert_eq!(list.dim(), 2);
        assert_eq!(list.len(), 3);
        let back = serde_json::to_string(&MatrixDto::from_list(&list)).unwrap();
        let again = parse_matrix(&back).unwrap();
        assert_eq!(list, again);
        assert!(parse_matrix(r#"{"dim": 2, "vectors": [[1]]}"#).is_err());
        assert!(parse_matrix("not json").is_err());
    }

    #[test]
    fn poly_round_trip() {
        let p = MultiPoly::product_form(2, &[vec![1, 0], vec![1, 2]]);
        let terms = poly_to_terms(&p);
        let q = poly_from_terms(2, &terms).unwrap();
        assert_eq!(p, q);
        // graded-lex order in the serialization
        assert_eq!(terms[0].exps, vec![2, 0]);
        assert_eq!(terms[1].exps, vec![1, 1]);
    }

    #[test]
    fn values_file_round_trip() {
        let json = r#"{
            "matrix": {"dim": 1, "vectors": [[1],[1],[1]]},
            "values": [{"point": [1], "value": "1"}, {"point": [2], "value": "-1/2"}]
        }"#;
        let (list, f) = ValuesFileDto::parse(json).unwrap();
        assert_eq!(list.len(), 3);
        assert_eq!(f.get(&[2]), rat(-1, 2));
        let rendered = ValuesFileDto::render(&list, &f);
        let text = serde_json::to_string(&rendered).unwrap();
        let (list2, f2) = ValuesFileDto::parse(&text).unwrap();
        assert_eq!(list, list2);
        assert_eq!(f, f2);
    }

    #[test]
    fn point_parsing() {
        assert_eq!(parse_point("3/2,-1").unwrap(), vec![rat(3, 2), rat(-1, 1)]);
        assert!(parse_point("x,y").is_err());
    }
}

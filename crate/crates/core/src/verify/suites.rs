use num_traits::ToPrimitive;
use serde_json::{json, Value};

use super::{Record, Target, VerifyError, VerifyOptions};
use crate::center::{
    bikwad_elements, center_deformation_compare, center_dims, expected_center_dim, is_central, mu3_check, normalizing_check,
    sigma_surjectivity_check, zeta_dimension_check,
};
use crate::exactfield::{Field, FieldDescriptor, Rationals};
use crate::frobalg::{catalog, deformation, is_frobenius, AnyPair, FrobeniusPair, CATALOG_NAMES, FAMILY_COUNT, REJECT_NAMES};
use crate::par::par_map;
use crate::preproj::{resolution_residuals, GradedAlgebra};
use crate::splitcase::{generator_monomial_rank, invariant_dims, invariant_relation_check, quiver_hilbert, split_comparison};
use crate::with_pair;

const Q: FieldDescriptor = FieldDescriptor::Q;

fn build<F: Field>(p: &FrobeniusPair<F>, d: usize, opts: &VerifyOptions) -> Result<GradedAlgebra<F>, VerifyError> {
    Ok(GradedAlgebra::build_cached(p, d, opts.cache.as_ref())?.0)
}

/// Run `job` for every (target, field) combination, in parallel, keeping
/// the combination order in the output.
fn per_pair<J>(opts: &VerifyOptions, default_fields: &[FieldDescriptor], job: J) -> Result<Vec<Record>, VerifyError>
where
    J: Fn(&str, &AnyPair) -> Result<Vec<Record>, VerifyError> + Sync + Send,
{
    let jobs: Vec<(Target, Option<FieldDescriptor>)> = opts
        .targets()
        .into_iter()
        .flat_map(|t| opts.fields(default_fields).into_iter().map(move |f| (t.clone(), f)))
        .collect();
    let out = par_map(&jobs, |(t, f)| {
        let pair = t.materialize(*f)?;
        job(&t.name, &pair)
    });
    let mut records = Vec::new();
    for r in out {
        records.extend(r?);
    }
    Ok(records)
}

/// Expected `(dim Π_d, dim 1_R Π_d)` from the star quiver with `n` arms.
fn expected_ranks(n: usize, max: usize) -> Vec<(usize, usize)> {
    let w = quiver_hilbert(n, max);
    let int = |q: num_rational::BigRational| q.to_integer().to_usize().expect("nonnegative integer");
    (0..=max).map(|d| (int(w.total(d)), int(w.column_sum(d, 0)))).collect()
}

fn rank_records<F: Field>(name: &str, g: &GradedAlgebra<F>, max: usize) -> Result<Vec<Record>, VerifyError> {
    let field = g.field().descriptor();
    let expected = expected_ranks(g.rank_s(), max);
    let mut out = Vec::new();
    for (d, (dim, r)) in expected.into_iter().enumerate() {
        let (gr, gs) = g.split_dims(d)?;
        out.push(Record::new("ranks", "dim", json!(g.dim(d)?), json!(dim)).on(name, field).at(d));
        out.push(Record::new("ranks", "split_dims", json!([gr, gs]), json!([r, dim - r])).on(name, field).at(d));
    }
    Ok(out)
}

/// One line of the `dims` table.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct DimRow {
    pub degree: usize,
    pub dim: usize,
    pub dim_r: usize,
    pub dim_s: usize,
    pub expected: usize,
    pub expected_r: usize,
    pub pass: bool,
}

/// Graded and split dimensions of one pair against the star-quiver series.
pub fn dims_table(pair: &AnyPair, max: usize, opts: &VerifyOptions) -> Result<Vec<DimRow>, VerifyError> {
    with_pair!(pair, p => {
        let g = build(p, max, opts)?;
        expected_ranks(g.rank_s(), max)
            .into_iter()
            .enumerate()
            .map(|(d, (e, er))| {
                let (r, s) = g.split_dims(d)?;
                let dim = g.dim(d)?;
                Ok(DimRow { degree: d, dim, dim_r: r, dim_s: s, expected: e, expected_r: er, pass: dim == e && r == er })
            })
            .collect()
    })
}

pub fn ranks(opts: &VerifyOptions) -> Result<Vec<Record>, VerifyError> {
    let max = opts.degree(12);
    let fields = [Q, FieldDescriptor::Fp(2), FieldDescriptor::Fp(3), FieldDescriptor::Fp(5), FieldDescriptor::Fp(7)];
    per_pair(opts, &fields, |name, pair| with_pair!(pair, p => rank_records(name, &build(p, max, opts)?, max)))
}

pub fn center(opts: &VerifyOptions) -> Result<Vec<Record>, VerifyError> {
    let max = opts.degree(12);
    per_pair(opts, &[Q, FieldDescriptor::Fp(2), FieldDescriptor::Fp(5)], |name, pair| {
        with_pair!(pair, p => {
            let g = build(p, max + 1, opts)?;
            let field = g.field().descriptor();
            let rank4 = g.rank_s() == 4;
            Ok(center_dims(&g, max)?
                .into_iter()
                .enumerate()
                .map(|(d, z)| {
                    let r = Record::new("center", "dim_center", json!(z), if rank4 { json!(expected_center_dim(d)) } else { Value::Null });
                    let r = if rank4 { r } else { r.with_pass(true) };
                    r.on(name, field).at(d)
                })
                .collect())
        })
    })
}

pub fn sigma(opts: &VerifyOptions) -> Result<Vec<Record>, VerifyError> {
    let max = opts.degree(12);
    per_pair(opts, &[Q], |name, pair| {
        with_pair!(pair, p => {
            let g = build(p, max.max(5), opts)?;
            let field = g.field().descriptor();
            Ok(sigma_surjectivity_check(&g, max)?
                .into_iter()
                .map(|r| Record::new("sigma", "image_dim", json!(r.image_dim), json!(r.pi_dim)).on(name, field).at(r.degree))
                .collect())
        })
    })
}

pub fn resolution(opts: &VerifyOptions) -> Result<Vec<Record>, VerifyError> {
    let max = opts.degree(16);
    per_pair(opts, &[Q], |name, pair| {
        with_pair!(pair, p => {
            let g = build(p, max, opts)?;
            let field = g.field().descriptor();
            Ok(resolution_residuals(&g, max)?
                .into_iter()
                .enumerate()
                .map(|(d, (a, b))| Record::new("resolution", "residuals", json!([a, b]), json!([0, 0])).on(name, field).at(d))
                .collect())
        })
    })
}

/// The split pair over ℚ against the star quiver and the invariant ring.
pub fn split(opts: &VerifyOptions) -> Result<Vec<Record>, VerifyError> {
    let max = opts.degree(12);
    let p = catalog(&Rationals, "split4")?.into_pair("split4")?;
    let g = build(&p, max + 1, opts)?;
    let mut out = Vec::new();
    for r in split_comparison(&g, max)? {
        let d = r.degree;
        out.push(Record::new("split", "engine_dim", json!(r.engine_dim), json!(r.quiver_total)).on("split4", Q).at(d));
        out.push(Record::new("split", "engine_r_part", json!(r.engine_r_part), json!(r.quiver_r_part)).on("split4", Q).at(d));
        out.push(Record::new("split", "dim_center", json!(r.center_dim), json!(Some(r.invariant_dim))).on("split4", Q).at(d));
    }
    for (d, (total, _)) in expected_ranks(4, 2 * max).into_iter().enumerate() {
        let closed = if d % 2 == 0 { 5 * (d + 1) } else { 4 * (d + 1) };
        out.push(Record::new("split", "quiver_total", json!(total), json!(closed)).at(d));
    }
    Ok(out)
}

pub fn invariants(opts: &VerifyOptions) -> Result<Vec<Record>, VerifyError> {
    let max = opts.degree(24);
    let mut out: Vec<Record> = invariant_dims(max as u32)
        .into_iter()
        .enumerate()
        .map(|(d, k)| Record::new("invariants", "invariant_dim", json!(k), json!(expected_center_dim(d))).at(d))
        .collect();
    out.push(Record::new("invariants", "relation_vanishes", json!(invariant_relation_check()), json!(true)));
    for d in 0..=max.min(12) {
        let (count, rank) = generator_monomial_rank(d as u32);
        let expected = if d == 12 { count - 1 } else { count };
        out.push(Record::new("invariants", "generator_monomial_rank", json!(rank), json!(expected)).at(d));
    }
    Ok(out)
}

pub fn deformations(opts: &VerifyOptions) -> Result<Vec<Record>, VerifyError> {
    let max = opts.degree(8);
    let families: Vec<(u32, bool)> = (1..=FAMILY_COUNT).map(|n| (n, false)).chain([(6, true)]).collect();
    let out = par_map(&families, |&(n, char2)| -> Result<Vec<Record>, VerifyError> {
        let fam = deformation(n, char2)?;
        let name = if char2 { format!("family-{n}-char2") } else { format!("family-{n}") };
        let mut recs = vec![Record::new("deformations", "special_fiber_matches", json!(fam.special_fiber_matches()?), json!(true))
            .on(&name, FieldDescriptor::QU)];
        for r in center_deformation_compare(n, char2, max)? {
            let d = r.degree;
            recs.push(
                Record::new("deformations", "pi_dims", json!([r.pi_special, r.pi_generic]), json!([r.pi_special, r.pi_special]))
                    .with_pass(r.pi_special == r.pi_generic)
                    .on(&name, FieldDescriptor::QU)
                    .at(d),
            );
            recs.push(
                Record::new(
                    "deformations",
                    "center_dims",
                    json!([r.center_special, r.center_generic]),
                    json!([r.center_special, r.center_special]),
                )
                .with_pass(r.center_special == r.center_generic)
                .on(&name, FieldDescriptor::QU)
                .at(d),
            );
        }
        Ok(recs)
    });
    let mut records = Vec::new();
    for r in out {
        records.extend(r?);
    }
    Ok(records)
}

pub fn classification() -> Result<Vec<Record>, VerifyError> {
    let names = CATALOG_NAMES.iter().map(|n| (*n, true)).chain(REJECT_NAMES.iter().map(|n| (*n, false)));
    names
        .map(|(name, expected)| {
            let entry = catalog(&Rationals, name)?;
            let verdict = is_frobenius(entry.algebra());
            Ok(Record::new("classification", "is_frobenius", json!(verdict.is_frobenius), json!(expected)).on(name, Q))
        })
        .collect()
}

/// Identities in the bikwad pair that each evaluate to zero.
pub const BIKWAD_ZERO_IDENTITIES: [&str; 8] = [
    "fe",
    "ee",
    "ff",
    "efst + seft + tefs + stef",
    "fsefte + ftefse",
    "steft + tefst",
    "stefs + sefst",
    "stefst",
];

fn explicit_on<F: Field>(g: &GradedAlgebra<F>, max: usize) -> Result<Vec<Record>, VerifyError> {
    let field = g.field().descriptor();
    let el = bikwad_elements(g)?;
    let rec = |check: &str, v: bool, e: bool| Record::new("explicit", check, json!(v), json!(e)).on("bikwad", field);
    let mut out = vec![
        rec("u_squared_is_A", g.multiply(&el.u, &el.u)? == el.a, true),
        rec("v_squared_is_B", g.multiply(&el.v, &el.v)? == el.b, true),
        rec("A_central", is_central(g, &el.a)?, true),
        rec("B_central", is_central(g, &el.b)?, true),
        rec("C_central", is_central(g, &el.c)?, true),
        rec("u_normalizing_for_t", normalizing_check(g, &el.u, "t")?, true),
        rec("v_normalizing_for_s", normalizing_check(g, &el.v, "s")?, true),
        rec("f_normalizing_for_t", normalizing_check(g, &g.gen_f(), "t")?, false),
        rec("f_normalizing_for_s", normalizing_check(g, &g.gen_f(), "s")?, false),
    ];
    for id in BIKWAD_ZERO_IDENTITIES {
        out.push(rec(&format!("vanishes: {id}"), g.parse_element(id)?.is_zero(), true));
    }
    let (span, pi3) = mu3_check(g)?;
    out.push(Record::new("explicit", "mu3_span_dim", json!(span), json!(pi3)).on("bikwad", field).at(3));
    let (c2, rows) = zeta_dimension_check(g, max)?;
    out.push(rec("C_squared_zero", c2, true));
    for r in rows {
        out.push(
            Record::new("explicit", "zeta_span_dim", json!(r.span_dim), json!(r.center_dim))
                .with_pass(r.pass())
                .on("bikwad", field)
                .at(r.degree),
        );
    }
    Ok(out)
}

pub fn explicit(opts: &VerifyOptions) -> Result<Vec<Record>, VerifyError> {
    let max = opts.degree(12);
    let fields = opts.fields.clone().unwrap_or_else(|| vec![Q]);
    let mut out = Vec::new();
    for f in fields {
        let pair = AnyPair::catalog("bikwad", f)?;
        out.extend(with_pair!(&pair, p => explicit_on(&build(p, 13.max(max + 1), opts)?, max))?);
    }
    Ok(out)
}

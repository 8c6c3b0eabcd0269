//! Acceptance suite: eleven criteria, one verdict line each.
//!
//! Runs without the libtest harness so the verdicts are always printed.
//! Every expected value is the closed form, not something the library
//! computes. Two criteria are known to fail (see `KNOWN_FAILURES`), and the
//! binary exits non-zero only when the set of failures changes.

use std::collections::BTreeSet;
use std::fmt::Display;
use std::time::Instant;

use frobpi::center::{bikwad_elements, center_deformation_compare, center_dims, is_central, sigma_surjectivity_check, zeta_dimension_check};
use frobpi::exactfield::{Field, FieldDescriptor, Rationals};
use frobpi::exactlinalg::TruncSeriesMat;
use frobpi::frobalg::{catalog, deformation, is_frobenius, AnyPair, FrobeniusPair, CATALOG_NAMES, FAMILY_COUNT, REJECT_NAMES};
use frobpi::preproj::{resolution_residuals, GradedAlgebra};
use frobpi::splitcase::{invariant_dims, invariant_relation_check, quiver_hilbert};
use frobpi::with_pair;
use num_rational::BigRational;

/// Criteria expected to fail:
/// 3 — over F_2, `σ` is the identity, so `u` and `v` are central for the
///     non-split algebras and `dim Z_d` exceeds the closed form;
/// 9 — `k[s,t]/(s²+t², st)` has a one-dimensional socle spanned by `s²`;
///     `λ = (s²)^*` gives an invertible Gram matrix, so it is Frobenius.
const KNOWN_FAILURES: [usize; 2] = [3, 9];

const Q: FieldDescriptor = FieldDescriptor::Q;

/// Failure details for a criterion; empty means pass.
type Faults = Vec<String>;

fn err(e: impl Display) -> String {
    e.to_string()
}

fn dim_law(d: usize) -> usize {
    if d.is_multiple_of(2) {
        5 * (d + 1)
    } else {
        4 * (d + 1)
    }
}

fn split_law(d: usize) -> (usize, usize) {
    if d.is_multiple_of(2) {
        (d + 1, 4 * (d + 1))
    } else {
        (2 * (d + 1), 2 * (d + 1))
    }
}

fn center_law(d: usize) -> usize {
    match d % 4 {
        0 => d / 4 + 1,
        2 => (d - 2) / 4,
        _ => 0,
    }
}

fn all_fields() -> Vec<FieldDescriptor> {
    vec![Q, FieldDescriptor::Fp(2), FieldDescriptor::Fp(3), FieldDescriptor::Fp(5), FieldDescriptor::Fp(7)]
}

fn pair(name: &str, field: FieldDescriptor) -> Result<AnyPair, String> {
    AnyPair::catalog(name, field).map_err(err)
}

fn for_all<T>(fields: &[FieldDescriptor], job: impl Fn(&str, FieldDescriptor) -> Result<T, String> + Sync) -> Vec<(String, FieldDescriptor, Result<T, String>)>
where
    T: Send,
{
    let jobs: Vec<(&str, FieldDescriptor)> = CATALOG_NAMES.iter().flat_map(|n| fields.iter().map(move |f| (*n, *f))).collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = jobs.iter().map(|(n, f)| s.spawn(|| job(n, *f))).collect();
        jobs.iter().zip(handles).map(|((n, f), h)| (n.to_string(), *f, h.join().expect("worker panicked"))).collect()
    })
}

fn collect(results: Vec<(String, FieldDescriptor, Result<Faults, String>)>) -> Faults {
    results
        .into_iter()
        .flat_map(|(n, f, r)| match r {
            Ok(v) => v.into_iter().map(|m| format!("{n}/{f}: {m}")).collect(),
            Err(e) => vec![format!("{n}/{f}: error: {e}")],
        })
        .collect()
}

fn graded_dims<F: Field>(p: &FrobeniusPair<F>, max: usize) -> Result<Faults, String> {
    let g = GradedAlgebra::build(p, max);
    let mut out = Faults::new();
    for d in 0..=max {
        let dim = g.dim(d).map_err(err)?;
        if dim != dim_law(d) {
            out.push(format!("d={d}: dim {dim}, want {}", dim_law(d)));
        }
    }
    Ok(out)
}

fn split_dims<F: Field>(p: &FrobeniusPair<F>, max: usize) -> Result<Faults, String> {
    let g = GradedAlgebra::build(p, max);
    let mut out = Faults::new();
    for d in 0..=max {
        let got = g.split_dims(d).map_err(err)?;
        if got != split_law(d) {
            out.push(format!("d={d}: split {got:?}, want {:?}", split_law(d)));
        }
    }
    Ok(out)
}

fn center_ranks<F: Field>(p: &FrobeniusPair<F>, max: usize) -> Result<Faults, String> {
    let g = GradedAlgebra::build(p, max + 1);
    let dims = center_dims(&g, max).map_err(err)?;
    Ok(dims
        .iter()
        .enumerate()
        .filter(|(d, z)| **z != center_law(*d))
        .map(|(d, z)| format!("d={d}: dim Z {z}, want {}", center_law(d)))
        .collect())
}

fn criterion_1() -> Faults {
    collect(for_all(&all_fields(), |n, f| with_pair!(&pair(n, f)?, p => graded_dims(p, 12))))
}

fn criterion_2() -> Faults {
    collect(for_all(&all_fields(), |n, f| with_pair!(&pair(n, f)?, p => split_dims(p, 12))))
}

fn criterion_3() -> Faults {
    let fields = [Q, FieldDescriptor::Fp(2), FieldDescriptor::Fp(5)];
    collect(for_all(&fields, |n, f| with_pair!(&pair(n, f)?, p => center_ranks(p, 12))))
}

fn criterion_4() -> Faults {
    let run = || -> Result<Faults, String> {
        let p = catalog(&Rationals, "bikwad").map_err(err)?.into_pair("bikwad").map_err(err)?;
        let g = GradedAlgebra::build(&p, 13);
        let el = bikwad_elements(&g).map_err(err)?;
        let mut out = Faults::new();
        if g.multiply(&el.u, &el.u).map_err(err)? != el.a {
            out.push("u² ≠ A".into());
        }
        if g.multiply(&el.v, &el.v).map_err(err)? != el.b {
            out.push("v² ≠ B".into());
        }
        if !is_central(&g, &el.c).map_err(err)? {
            out.push("C not central".into());
        }
        let (c2, rows) = zeta_dimension_check(&g, 12).map_err(err)?;
        if !c2 {
            out.push("C² ≠ 0".into());
        }
        for r in rows {
            if r.span_dim != center_law(r.degree) || r.center_dim != center_law(r.degree) || !r.contained {
                out.push(format!("d={}: span {} center {} (want {})", r.degree, r.span_dim, r.center_dim, center_law(r.degree)));
            }
        }
        Ok(out)
    };
    run().unwrap_or_else(|e| vec![e])
}

fn integer(q: &BigRational) -> Option<usize> {
    q.is_integer().then(|| q.to_integer().try_into().ok()).flatten()
}

/// Coefficients of `(5 + 8t + 5t²)/(1 − t²)²` by explicit convolution.
fn closed_form(max: usize) -> Vec<usize> {
    // 1/(1 − t²)² = Σ (k+1) t^{2k}
    let inv: Vec<usize> = (0..=max).map(|d| if d % 2 == 0 { d / 2 + 1 } else { 0 }).collect();
    let num = [5, 8, 5];
    (0..=max).map(|d| (0..3).filter(|i| *i <= d).map(|i| num[i] * inv[d - i]).sum()).collect()
}

fn criterion_5() -> Faults {
    let w: TruncSeriesMat = quiver_hilbert(4, 24);
    let closed = closed_form(24);
    let mut out: Faults = (0..=24)
        .filter(|d| integer(&w.total(*d)) != Some(closed[*d]))
        .map(|d| format!("d={d}: total {}, want {}", w.total(d), closed[d]))
        .collect();
    let p = catalog(&Rationals, "split4").and_then(|e| e.into_pair("split4"));
    match p {
        Ok(p) => {
            let g = GradedAlgebra::build(&p, 12);
            for d in 0..=12 {
                let dim = g.dim(d).unwrap_or(usize::MAX);
                if integer(&w.total(d)) != Some(dim) {
                    out.push(format!("split4 d={d}: engine {dim}, series {}", w.total(d)));
                }
            }
        }
        Err(e) => out.push(err(e)),
    }
    out
}

fn criterion_6() -> Faults {
    let mut out = Faults::new();
    if !invariant_relation_check() {
        out.push("C² − B(A² − 4B²) ≠ 0".into());
    }
    let inv = invariant_dims(12);
    let run = || -> Result<Vec<usize>, String> {
        let p = catalog(&Rationals, "split4").map_err(err)?.into_pair("split4").map_err(err)?;
        center_dims(&GradedAlgebra::build(&p, 13), 12).map_err(err)
    };
    match run() {
        Ok(z) => {
            for d in 0..=12 {
                if inv[d] != z[d] || z[d] != center_law(d) {
                    out.push(format!("d={d}: invariants {} center {} (want {})", inv[d], z[d], center_law(d)));
                }
            }
        }
        Err(e) => out.push(e),
    }
    out
}

fn criterion_7() -> Faults {
    collect(for_all(&[Q], |n, f| {
        with_pair!(&pair(n, f)?, p => {
            let g = GradedAlgebra::build(p, 12);
            let rows = sigma_surjectivity_check(&g, 12).map_err(err)?;
            let mut out = Faults::new();
            if rows.len() != 13 {
                out.push(format!("{} degrees checked", rows.len()));
            }
            for r in rows {
                if r.image_dim != dim_law(r.degree) || r.pi_dim != dim_law(r.degree) {
                    out.push(format!("d={}: image {} of {}", r.degree, r.image_dim, r.pi_dim));
                }
            }
            Ok(out)
        })
    }))
}

fn criterion_8() -> Faults {
    let families: Vec<(u32, bool)> = (1..=FAMILY_COUNT).map(|n| (n, false)).chain([(6, true)]).collect();
    let results: Vec<Result<Faults, String>> = std::thread::scope(|s| {
        let hs: Vec<_> = families
            .iter()
            .map(|&(n, char2)| {
                s.spawn(move || -> Result<Faults, String> {
                    let fam = deformation(n, char2).map_err(err)?;
                    let tag = if char2 { format!("family {n} (char 2)") } else { format!("family {n}") };
                    let mut out = Faults::new();
                    if !fam.special_fiber_matches().map_err(err)? {
                        out.push(format!("{tag}: special fiber differs from the catalog"));
                    }
                    for r in center_deformation_compare(n, char2, 8).map_err(err)? {
                        if !r.equal() {
                            out.push(format!(
                                "{tag} d={}: Π {}/{} Z {}/{}",
                                r.degree, r.pi_special, r.pi_generic, r.center_special, r.center_generic
                            ));
                        }
                    }
                    Ok(out)
                })
            })
            .collect();
        hs.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    results.into_iter().flat_map(|r| r.unwrap_or_else(|e| vec![e])).collect()
}

fn criterion_9() -> Faults {
    let names = CATALOG_NAMES.iter().map(|n| (*n, true)).chain(REJECT_NAMES.iter().map(|n| (*n, false)));
    names
        .filter_map(|(name, want)| match catalog(&Rationals, name) {
            Ok(entry) => {
                let got = is_frobenius(entry.algebra()).is_frobenius;
                (got != want).then(|| format!("{name}: is_frobenius = {got}"))
            }
            Err(e) => Some(format!("{name}: {e}")),
        })
        .collect()
}

fn criterion_10() -> Faults {
    collect(for_all(&[Q], |n, f| {
        with_pair!(&pair(n, f)?, p => {
            let g = GradedAlgebra::build(p, 16);
            let res = resolution_residuals(&g, 16).map_err(err)?;
            let mut out = Faults::new();
            if res.len() != 17 {
                out.push(format!("{} degrees checked", res.len()));
            }
            out.extend(res.iter().enumerate().filter(|(_, r)| **r != (0, 0)).map(|(d, r)| format!("d={d}: residuals {r:?}")));
            Ok(out)
        })
    }))
}

fn criterion_11() -> Faults {
    let run = || -> Result<Faults, String> {
        let p = catalog(&Rationals, "bikwad").map_err(err)?.into_pair("bikwad").map_err(err)?;
        let g = GradedAlgebra::build(&p, 6);
        let el = |s: &str| g.parse_element(s).map_err(err);
        let zero = ["fe", "ee", "ff", "efst + seft + tefs + stef", "stefst"];
        let negatives = [("fsefte", "ftefse"), ("steft", "tefst"), ("stefs", "sefst")];
        let mut out = Faults::new();
        for w in zero {
            if !el(w)?.is_zero() {
                out.push(format!("{w} ≠ 0"));
            }
        }
        for (x, y) in negatives {
            let (x_el, y_el) = (el(x)?, el(y)?);
            if x_el.is_zero() || x_el != g.neg(&y_el) {
                out.push(format!("{x} ≠ −{y}"));
            }
        }
        Ok(out)
    };
    run().unwrap_or_else(|e| vec![e])
}

fn main() {
    let criteria: [(usize, &str, fn() -> Faults); 11] = [
        (1, "dimension law over ℚ, F_2, F_3, F_5, F_7, d ≤ 12", criterion_1),
        (2, "split ranks (1_R, 1_S), d ≤ 12", criterion_2),
        (3, "center ranks over ℚ, F_2, F_5, d ≤ 12", criterion_3),
        (4, "bikwad central elements u, v, A, B, C", criterion_4),
        (5, "star-quiver series, d ≤ 24, and split4 dims", criterion_5),
        (6, "BD₂ invariants against the split4 center", criterion_6),
        (7, "σ-surjectivity over ℚ, d ≤ 12", criterion_7),
        (8, "deformation families, d ≤ 8", criterion_8),
        (9, "Frobenius classification", criterion_9),
        (10, "resolution Hilbert identities, d ≤ 16", criterion_10),
        (11, "bikwad word identities", criterion_11),
    ];
    let mut failed = BTreeSet::new();
    for (n, label, run) in criteria {
        let t = Instant::now();
        let faults = run();
        let verdict = if faults.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {n:>2}: {verdict}  {label}  ({:.1?})", t.elapsed());
        for f in faults.iter().take(16) {
            println!("      {f}");
        }
        if faults.len() > 16 {
            println!("      … {} more", faults.len() - 16);
        }
        if !faults.is_empty() {
            failed.insert(n);
        }
    }
    let known: BTreeSet<usize> = KNOWN_FAILURES.into_iter().collect();
    println!("failed: {failed:?}; known: {known:?}");
    if failed != known {
        eprintln!("acceptance: failing criteria changed");
        std::process::exit(1);
    }
}

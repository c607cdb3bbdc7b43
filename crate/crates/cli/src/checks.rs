//! Named verification suites run by `formalq verify`.

use formalq::branching::{branch, branch_series, Embedding};
use formalq::formalseries::radius_json;
use formalq::hamiltonian::{
    formal_quantisation_series, induce_formal_quantisation, induce_quantisation, product_model,
    semi_formal_quantisation, HamiltonianModel, InnerModel, LinearModel,
};
use formalq::khom::{
    dirac_induction, dirac_pullback, dirac_restriction, discrete_series_class, external_product, lift_series,
    module_action, module_action_via_restriction, GroupModel,
};
use formalq::repring::tensor_decompose;
use formalq::{Error, FormalSeries, RKElement, Rational64, RootDatum, Weight};
use serde_json::{json, Value};

use crate::{as_induced, identity_embedding, CliError, CliResult};

pub const CHECKS: [&str; 6] = ["restr-cpt", "mult", "module", "qr-induced", "shift", "dres-sign"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub check: String,
    pub radius: Rational64,
    pub window: Vec<Weight>,
    pub counterexample: Option<Weight>,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "check": self.check,
            "radius": radius_json(self.radius),
            "pass": self.pass(),
            "witnessedWindow": self.window,
        });
        if let Some(w) = &self.counterexample {
            v["counterexample"] = json!(w);
        }
        v
    }
}

pub fn run_check(name: &str, model: &HamiltonianModel, radius: Rational64) -> CliResult<VerifyReport> {
    let (window, counterexample) = match name {
        "restr-cpt" => restriction(model, radius)?,
        "mult" => multiplicativity(model, radius)?,
        "module" => module(model, radius)?,
        "qr-induced" => quantisation_commutes_with_reduction(model, radius)?,
        "shift" => shifting(model, radius)?,
        "dres-sign" => discrete_series_signs(model, radius)?,
        other => return Err(CliError::UnknownCheck(other.to_string())),
    };
    Ok(VerifyReport {
        check: name.to_string(),
        radius,
        window,
        counterexample,
    })
}

type Outcome = (Vec<Weight>, Option<Weight>);

fn compare(a: &FormalSeries, b: &FormalSeries, radius: Rational64) -> CliResult<Outcome> {
    let window = a.datum().dominant_weights_up_to(radius);
    Ok((window, a.first_difference(b, radius)?))
}

/// The linear model underlying a linear or induced-linear model.
pub fn linear_inner(model: &HamiltonianModel) -> CliResult<LinearModel> {
    match model {
        HamiltonianModel::Linear(m) => Ok(m.clone()),
        HamiltonianModel::Induced(im) => match &im.inner {
            InnerModel::Linear(m) => Ok(m.clone()),
            InnerModel::Coadjoint(_) => Err(not_linear()),
        },
        HamiltonianModel::Coadjoint(_) => Err(not_linear()),
    }
}

fn not_linear() -> CliError {
    Error::InvalidModel("this check needs a linear model".into()).into()
}

/// Maximal torus for nonabelian data, the diagonal circle for higher tori.
fn default_embedding(rd: &RootDatum) -> Embedding {
    if !rd.is_torus() {
        Embedding::maximal_torus(rd)
    } else if rd.rank() >= 2 {
        Embedding::diagonal_circle(rd.rank())
    } else {
        identity_embedding(rd)
    }
}

/// Restricting the quantisation equals quantising the restriction.
fn restriction(model: &HamiltonianModel, radius: Rational64) -> CliResult<Outcome> {
    let m = linear_inner(model)?;
    let e = default_embedding(m.datum());
    let restricted = branch_series(&e, &formal_quantisation_series(&m)?, radius)?;
    let direct = formal_quantisation_series(&m.restrict(&e)?)?;
    compare(&restricted, &direct, radius)
}

/// `Q(M × M)` equals the external product `Q(M) × Q(M)`, degrees adding.
fn multiplicativity(model: &HamiltonianModel, radius: Rational64) -> CliResult<Outcome> {
    let m = linear_inner(model)?;
    let group = as_induced(model)?.group;
    let c = lift_series(&group, formal_quantisation_series(&m)?)?;
    let product = external_product(&c, &c);
    let direct = formal_quantisation_series(&product_model(&m, &m)?)?;
    let (window, mut bad) = compare(&product.series, &direct, radius)?;
    if product.degree() != 2 * group.d && bad.is_none() {
        bad = window.first().cloned();
    }
    Ok((window, bad))
}

/// `(π · s)(ν) = Σ_λ s(λ) mult(ν; π ⊗ π_λ)`, summed forward over all `λ`
/// that can reach `ν`.
pub fn compact_action(pi: &RKElement, s: &FormalSeries, nu: &Weight) -> i64 {
    let rd = s.datum();
    let nu_norm = rd.norm_sq(nu).expect("weight fits the datum");
    let mut total = 0;
    for (l1, &a) in pi.terms() {
        let l1_norm = rd.norm_sq(l1).expect("weight fits the datum");
        // ‖λ‖ ≤ ‖λ₁‖ + ‖ν‖ and (x + y)² ≤ 2x² + 2y².
        let bound = Rational64::from_integer(2) * (l1_norm + nu_norm);
        for l2 in rd.dominant_weights_up_to(bound) {
            let c = s.coefficient(&l2).expect("dominant");
            if c != 0 {
                total += a * c * tensor_decompose(rd, l1, &l2).expect("dominant").get(nu);
            }
        }
    }
    total
}

/// The `R(K)`-action through the Dirac pullback matches the compact tensor
/// action, and the two definitions of the action agree.
fn module(model: &HamiltonianModel, radius: Rational64) -> CliResult<Outcome> {
    let im = as_induced(model)?;
    let b = induce_quantisation(&im)?;
    let rd = im.group.compact.clone();
    let window = rd.dominant_weights_up_to(radius);
    let small = rd.dominant_weights_up_to(Rational64::from_integer(2));
    for l1 in small {
        let pi = RKElement::irreducible(rd.clone(), l1)?;
        let a = dirac_induction(&im.group, &pi)?;
        let direct = dirac_pullback(&module_action(&a, &b)?);
        let via = module_action_via_restriction(&a, &b, radius)?;
        for nu in &window {
            let expect = compact_action(&pi, &b.series, nu);
            if direct.coefficient(nu)? != expect || via.series.coefficient(nu)? != expect {
                return Ok((window.clone(), Some(nu.clone())));
            }
        }
    }
    Ok((window, None))
}

fn quantisation_commutes_with_reduction(model: &HamiltonianModel, radius: Rational64) -> CliResult<Outcome> {
    let im = as_induced(model)?;
    let lifted = induce_quantisation(&im)?;
    let reduced = induce_formal_quantisation(&im)?;
    compare(&lifted.series, &reduced.series, radius)
}

fn shifting(model: &HamiltonianModel, radius: Rational64) -> CliResult<Outcome> {
    let m = linear_inner(model)?;
    compare(&semi_formal_quantisation(&m)?, &formal_quantisation_series(&m)?, radius)
}

/// `[π^G_λ] = (−1)^{d/2}[λ]` and its Dirac restriction to the maximal torus
/// is the signed branching sum.
fn discrete_series_signs(model: &HamiltonianModel, radius: Rational64) -> CliResult<Outcome> {
    let group = as_induced(model)?.group;
    let rd = group.compact.clone();
    let torus = GroupModel::new(format!("{} torus", group.name), RootDatum::torus(rd.rank()), group.d);
    let e = Embedding::maximal_torus(&rd);
    if !group.d.is_multiple_of(2) {
        return Err(Error::OddDimension {
            name: group.name.clone(),
            d: group.d,
        }
        .into());
    }
    let expected_sign: i64 = if (group.d / 2).is_multiple_of(2) { 1 } else { -1 };
    let mut window = Vec::new();
    for lambda in rd.dominant_weights_up_to(radius) {
        if !group.is_strongly_elliptic(&lambda) {
            continue;
        }
        window.push(lambda.clone());
        let (sign, class) = discrete_series_class(&group, &lambda)?;
        let restricted = dirac_restriction(&class, &torus, &e, radius)?;
        let expect = FormalSeries::from_rk(&branch(&e, &lambda)?.scale(expected_sign));
        if i64::from(sign) != expected_sign || !restricted.series.equal_up_to(&expect, radius)? {
            return Ok((window, Some(lambda)));
        }
    }
    if window.is_empty() {
        return Err(Error::NotStronglyElliptic(format!("no declared discrete series labels for {}", group.name)).into());
    }
    Ok((window, None))
}

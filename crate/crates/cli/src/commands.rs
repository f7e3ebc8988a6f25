//! One function per verb. Each returns a finished report; input problems
//! surface as `InputError` and become exit code 2.

use gpcomod::algpcom::{globalize_apc, AlgebraicPartialComodule};
use gpcomod::exactla::{format_rational, kernel, LinMap};
use gpcomod::findimcat::Direction;
use gpcomod::findimcat::Dualize;
use gpcomod::globalization::{globalize, roundtrip_ind_gl, Globalization};
use gpcomod::gpc::{
    certify, check_gpc1, check_gpc2_criterion, check_gpc2_definitional, induce_from_nc, NcComodule,
    PartialComoduleDatum,
};
use gpcomod::hopfpc::{
    check_hopf_pc, from_pair, globalize_hopf, pair_roundtrip_from, pair_roundtrip_to, to_pair,
    FundamentalPair, HopfPartialComodule,
};
use gpcomod::parmod::{
    crosscheck_dilation_globalization, standard_dilation, verify_dilation, PartialGroupRep,
    PartialModule,
};
use gpcomod::structures::{Bialgebra, Coalgebra, FiniteGroup, Structure};
use serde_json::{json, Value};

use crate::input::{
    self, ApcFile, DatumFile, Document, HopfFile, InputError, NcFile, PairFile, PartialModuleFile,
    PartialRepFile,
};
use crate::report::{vector, Report};

fn coalgebra_of(s: Structure, context: &str) -> Result<Coalgebra, InputError> {
    s.coalgebra()
        .cloned()
        .ok_or_else(|| InputError::Schema(format!("{context}: a coalgebra is required")))
}

fn bialgebra_of(s: Structure, context: &str) -> Result<Bialgebra, InputError> {
    s.bialgebra()
        .cloned()
        .ok_or_else(|| InputError::Schema(format!("{context}: a bialgebra is required")))
}

pub fn datum_from(doc: &Document) -> Result<PartialComoduleDatum, InputError> {
    let f: DatumFile = doc.parse()?;
    let c = coalgebra_of(input::structure(&f.coalgebra, doc)?, &doc.context)?;
    let mut d = PartialComoduleDatum::new(c, f.pi, f.rho).map_err(|e| match e {
        gpcomod::gpc::GpcError::NotEpi { rank, bullet_dim } => InputError::Schema(format!(
            "{}: π has rank {rank} but X•H has dimension {bullet_dim}",
            doc.context
        )),
        other => InputError::Schema(format!("{}: {other}", doc.context)),
    })?;
    if f.x_dim.is_some_and(|m| m != d.x_dim) {
        return Err(InputError::Schema(format!(
            "{}: x_dim does not match ρ",
            doc.context
        )));
    }
    if f.bullet_dim.is_some_and(|k| k != d.bullet_dim) {
        return Err(InputError::Schema(format!(
            "{}: bullet_dim does not match π",
            doc.context
        )));
    }
    d.direction = f.direction;
    Ok(d)
}

fn datum_summary(r: &mut Report, d: &PartialComoduleDatum) {
    r.set("coalgebra_dim", d.coalgebra.dim);
    r.set("x_dim", d.x_dim);
    r.set("bullet_dim", d.bullet_dim);
    r.set("kernel_pi_dim", kernel(&d.pi).dim());
    r.set(
        "direction",
        match d.direction {
            Direction::Standard => "std",
            Direction::Opposite => "op",
        },
    );
}

pub fn validate(arg: &str) -> Result<Report, InputError> {
    let s = input::structure_arg(arg)?;
    let mut r = Report::new("validate");
    match s.validate() {
        Ok(c) => {
            r.set("kind", c.kind);
            r.set("dim", c.dim);
            r.set("axioms", &c.axioms);
            r.set("valid", true);
        }
        Err(e) => r.fail_err("valid", &e),
    }
    let dual = match &s {
        Structure::Coalgebra(c) => c.dualize().validate(),
        Structure::Algebra(a) => a.dualize().validate(),
        Structure::Bialgebra(b) => b.dualize().validate(),
        Structure::Hopf(h) | Structure::Group(_, h) => h.dualize().validate(),
    };
    match dual {
        Ok(_) => r.set("dual_valid", true),
        Err(e) => r.fail_err("dual_valid", &e),
    }
    if let Structure::Group(g, _) = &s {
        r.set("group_order", g.order());
        r.set("element_names", g.names());
    }
    Ok(r)
}

/// Both GPC2 routes run separately; disagreement is itself a failure.
pub fn check_gpc(d: &PartialComoduleDatum, command: &str) -> Report {
    let mut r = Report::new(command);
    datum_summary(&mut r, d);
    match check_gpc1(d) {
        Ok(_) => r.set("gpc1", true),
        Err(e) => r.fail_err("gpc1", &e),
    }
    let criterion = match check_gpc2_criterion(d) {
        Ok(c) => {
            r.set("pullback_apex_dim", c.pullback_apex.dim());
            r.set("equalizer_apex_dim", c.equalizer_apex.dim());
            r.check(
                "gpc2_criterion",
                c.verdict,
                "pullback apex differs from equalizer apex",
                json!({
                    "pullback_apex_dim": c.pullback_apex.dim(),
                    "equalizer_apex_dim": c.equalizer_apex.dim(),
                }),
            );
            Some(c.verdict)
        }
        Err(e) => {
            r.fail_err("gpc2_criterion", &e);
            None
        }
    };
    let definitional = match check_gpc2_definitional(d) {
        Ok(_) => {
            r.set("gpc2_definitional", true);
            true
        }
        Err(e) => {
            r.fail_err("gpc2_definitional", &e);
            false
        }
    };
    if let Some(v) = criterion {
        r.check(
            "gpc2_routes_agree",
            v == definitional,
            "criterion and definitional routes disagree",
            json!({"criterion": v, "definitional": definitional}),
        );
    }
    r
}

pub fn globalization_summary(r: &mut Report, g: &Globalization, d: &PartialComoduleDatum) {
    let c = &g.certificate;
    r.set("y_dim", g.comodule.dim);
    r.set("equalizer_dim", c.equalizer_dim);
    r.check("gl1", c.gl1, "GL1 fails", Value::Null);
    r.check(
        "gl3_pushout",
        c.pushout,
        "pushout square fails",
        Value::Null,
    );
    r.check("proper", c.proper, "cover is not proper", Value::Null);
    let expected = d.x_dim + kernel(&d.pi).dim();
    r.check(
        "dimension_identity",
        g.comodule.dim == expected,
        "dim Y ≠ dim X + dim ker π",
        json!({"expected": expected, "actual": g.comodule.dim}),
    );
}

pub fn globalize_datum(d: &PartialComoduleDatum, command: &str) -> Report {
    let mut r = Report::new(command);
    datum_summary(&mut r, d);
    match globalize(d) {
        Ok(g) => {
            globalization_summary(&mut r, &g, d);
            match roundtrip_ind_gl(d) {
                Ok(_) => r.set("roundtrip_ind_gl", true),
                Err(e) => r.fail_err("roundtrip_ind_gl", &e),
            }
        }
        Err(e) => r.fail_err("globalize", &e),
    }
    r
}

pub fn nc_from(doc: &Document) -> Result<NcComodule, InputError> {
    let f: NcFile = doc.parse()?;
    let c = coalgebra_of(input::structure(&f.coalgebra, doc)?, &doc.context)?;
    NcComodule::new(c, f.coaction).map_err(|e| InputError::Schema(format!("{}: {e}", doc.context)))
}

pub fn induce(nc: &NcComodule) -> Report {
    let mut r = Report::new("induce");
    match nc.check_counital() {
        Ok(()) => r.set("counital", true),
        Err(e) => {
            r.fail_err("counital", &e);
            return r;
        }
    }
    let q = nc.defect_slices();
    r.set("defect_dim", q.dim());
    r.set("defect_basis", basis_json(&q.basis_vectors()));
    match induce_from_nc(nc) {
        Ok(d) => {
            datum_summary(&mut r, &d);
            match certify(&d) {
                Ok(_) => r.set("certified", true),
                Err(e) => r.fail_err("certified", &e),
            }
        }
        Err(e) => r.fail_err("induce", &e),
    }
    r
}

pub fn basis_json(vs: &[Vec<gpcomod::exactla::Rational>]) -> Value {
    Value::Array(vs.iter().map(|v| vector(v)).collect())
}

pub fn partial_module_from(doc: &Document) -> Result<PartialModule, InputError> {
    let f: PartialModuleFile = doc.parse()?;
    let s = input::structure(&f.hopf, doc)?;
    let h = s.hopf().cloned().ok_or_else(|| {
        InputError::Schema(format!("{}: a Hopf algebra is required", doc.context))
    })?;
    let pm = PartialModule::new(h, f.lambda)
        .map_err(|e| InputError::Schema(format!("{}: {e}", doc.context)))?;
    if pm.m_dim != f.m_dim {
        return Err(InputError::Schema(format!(
            "{}: m_dim does not match λ",
            doc.context
        )));
    }
    Ok(pm)
}

pub fn dilate(pm: &PartialModule, command: &str) -> Report {
    let mut r = Report::new(command);
    r.set("m_dim", pm.m_dim);
    r.set("hopf_dim", pm.hopf.dim());
    if let Err(e) = pm.check() {
        r.fail_err("partial_module", &e);
        return r;
    }
    r.set("partial_module", true);
    r.set("bullet_dim", pm.bullet_subspace().dim());
    match standard_dilation(pm) {
        Ok(d) => {
            r.set("dilation_dim", d.dim);
            match verify_dilation(pm, &d) {
                Ok(()) => r.set("dilation_verified", true),
                Err(e) => r.fail_err("dilation_verified", &e),
            }
        }
        Err(e) => r.fail_err("dilation", &e),
    }
    match crosscheck_dilation_globalization(pm) {
        Ok(iso) => {
            r.set("globalization_dim", iso.globalization_dim);
            r.set("dilation_equals_globalization", true);
        }
        Err(e) => r.fail_err("dilation_equals_globalization", &e),
    }
    r
}

pub fn partial_rep_from(doc: &Document) -> Result<PartialGroupRep, InputError> {
    let f: PartialRepFile = doc.parse()?;
    let g = FiniteGroup::from_table(f.group)
        .map_err(|e| InputError::Schema(format!("{}: {e}", doc.context)))?;
    let mut pi = Vec::with_capacity(g.order());
    for x in 0..g.order() {
        let by_index = f.pi.get(&x.to_string());
        let by_name = f.pi.get(&g.names()[x]);
        match by_index.or(by_name) {
            Some(m) => pi.push(m.clone()),
            None => {
                return Err(InputError::Schema(format!(
                    "{}: no operator for element {} ({})",
                    doc.context,
                    x,
                    g.names()[x]
                )))
            }
        }
    }
    let rep = PartialGroupRep::new(g, pi)
        .map_err(|e| InputError::Schema(format!("{}: {e}", doc.context)))?;
    if rep.v_dim != f.v_dim {
        return Err(InputError::Schema(format!(
            "{}: v_dim does not match the operators",
            doc.context
        )));
    }
    Ok(rep)
}

pub fn parrep(rep: &PartialGroupRep) -> Report {
    let mut r = Report::new("parrep");
    r.set("group_order", rep.group.order());
    r.set("v_dim", rep.v_dim);
    if let Err(e) = rep.check() {
        r.fail_err("partial_representation", &e);
        return r;
    }
    r.set("partial_representation", true);
    let s = rep.subspace_s();
    let z = rep.subspace_z();
    r.set("s_dim", s.dim());
    r.set("z_dim", z.dim());
    r.check(
        "s_equals_z",
        s == z,
        "S and Z differ",
        json!({"s": basis_json(&s.basis_vectors()), "z": basis_json(&z.basis_vectors())}),
    );
    let pm = rep.to_partial_module();
    match crosscheck_dilation_globalization(&pm) {
        Ok(iso) => {
            r.set("globalization_dim", iso.globalization_dim);
            r.set("dilation_equals_globalization", true);
        }
        Err(e) => r.fail_err("dilation_equals_globalization", &e),
    }
    r
}

pub enum ApcInput {
    Sweedler(usize),
    Explicit(Box<AlgebraicPartialComodule>),
}

pub fn apc_from(doc: &Document) -> Result<ApcInput, InputError> {
    match doc.parse::<ApcFile>()? {
        ApcFile::Fixture { fixture, n } => {
            if fixture != "sweedler_trunc" {
                return Err(InputError::Schema(format!(
                    "{}: unknown fixture {fixture:?}",
                    doc.context
                )));
            }
            if n == 0 {
                return Err(InputError::Schema(format!(
                    "{}: N must be positive",
                    doc.context
                )));
            }
            Ok(ApcInput::Sweedler(n))
        }
        ApcFile::Explicit {
            hopf,
            m_dim,
            partial_coaction,
        } => {
            let h = input::structure(&hopf, doc)?
                .hopf()
                .cloned()
                .ok_or_else(|| {
                    InputError::Schema(format!("{}: a Hopf algebra is required", doc.context))
                })?;
            let a = AlgebraicPartialComodule::new(h, partial_coaction)
                .map_err(|e| InputError::Schema(format!("{}: {e}", doc.context)))?;
            if a.m_dim != m_dim {
                return Err(InputError::Schema(format!(
                    "{}: m_dim does not match the coaction",
                    doc.context
                )));
            }
            Ok(ApcInput::Explicit(Box::new(a)))
        }
    }
}

pub fn apc(a: &AlgebraicPartialComodule) -> Report {
    let mut r = Report::new("apc");
    r.set("m_dim", a.m_dim);
    match a.check() {
        Ok(()) => r.set("apc_axioms", true),
        Err(e) => {
            r.fail_err("apc_axioms", &e);
            return r;
        }
    }
    let q = a.build_q();
    r.set("q_dim", q.dim());
    r.check(
        "q_matches_defect",
        q == a.as_nc().defect_slices(),
        "structure-constant Q differs from the defect slices",
        Value::Null,
    );
    match globalize_apc(a) {
        Ok(g) => {
            let d = induce_from_nc(&a.as_nc()).expect("checked above");
            globalization_summary(&mut r, &g, &d);
        }
        Err(e) => r.fail_err("globalize", &e),
    }
    r
}

#[allow(clippy::large_enum_variant)]
pub enum HopfInput {
    Structure(HopfPartialComodule),
    Pair(FundamentalPair, Bialgebra),
}

pub fn hopf_from(doc: &Document) -> Result<HopfInput, InputError> {
    if doc.value.get("v_dim").is_some() {
        let f: PairFile = doc.parse()?;
        let b = bialgebra_of(input::structure(&f.hopf, doc)?, &doc.context)?;
        let n = f.subspace()?;
        if n.ambient_dim() != f.v_dim * b.dim() {
            return Err(InputError::Schema(format!(
                "{}: N must live in V⊗H of dimension {}",
                doc.context,
                f.v_dim * b.dim()
            )));
        }
        return Ok(HopfInput::Pair(FundamentalPair::new(f.v_dim, n), b));
    }
    let f: HopfFile = doc.parse()?;
    let b = bialgebra_of(input::structure(&f.bialgebra, doc)?, &doc.context)?;
    let d = datum_from(&input::resolve(&f.datum, doc)?)?;
    if d.coalgebra.delta != b.coalgebra.delta || d.coalgebra.eps != b.coalgebra.eps {
        return Err(InputError::Schema(format!(
            "{}: the datum's coalgebra is not the bialgebra's",
            doc.context
        )));
    }
    let n = b.dim();
    if f.act_m.rows() != d.x_dim || f.act_m.cols() != d.x_dim * n {
        return Err(InputError::Schema(format!(
            "{}: act_m must be {}×{}",
            doc.context,
            d.x_dim,
            d.x_dim * n
        )));
    }
    let h = match HopfPartialComodule::new(b.clone(), d.clone(), f.act_m.clone()) {
        Ok(h) => h,
        // π not B-linear: keep the given data so the check reports the witness
        Err(_) => HopfPartialComodule {
            bialgebra: b,
            act_bullet: f
                .act_bullet
                .clone()
                .unwrap_or_else(|| LinMap::zeros(d.bullet_dim, d.bullet_dim * n)),
            datum: d,
            act_m: f.act_m,
        },
    };
    if let Some(given) = f.act_bullet {
        if given.rows() != h.act_bullet.rows() || given.cols() != h.act_bullet.cols() {
            return Err(InputError::Schema(format!(
                "{}: act_bullet has the wrong shape",
                doc.context
            )));
        }
        return Ok(HopfInput::Structure(HopfPartialComodule {
            act_bullet: given,
            ..h
        }));
    }
    Ok(HopfInput::Structure(h))
}

pub fn hopf(h: &HopfPartialComodule) -> Report {
    let mut r = Report::new("hopf");
    datum_summary(&mut r, &h.datum);
    match check_hopf_pc(h) {
        Ok(c) => {
            r.set("hopf_partial_comodule", true);
            r.set("kernel_bb_submodule", c.kernel_bb_submodule);
            r.set("kernel_right_leg_submodule", c.kernel_right_leg_submodule);
        }
        Err(e) => {
            r.fail_err("hopf_partial_comodule", &e);
            return r;
        }
    }
    match globalize_hopf(h) {
        Ok(g) => {
            globalization_summary(&mut r, &g.globalization, &h.datum);
            r.set("hopf_module_globalization", true);
        }
        Err(e) => {
            r.fail_err("hopf_module_globalization", &e);
            return r;
        }
    }
    if h.bialgebra.solve_antipode().is_some() {
        match to_pair(h) {
            Ok(p) => {
                r.set("pair_v_dim", p.pair.v_dim);
                r.set("pair_n_dim", p.pair.n.dim());
                match pair_roundtrip_to(h) {
                    Ok(_) => r.set("pair_roundtrip", true),
                    Err(e) => r.fail_err("pair_roundtrip", &e),
                }
            }
            Err(e) => r.fail_err("to_pair", &e),
        }
    }
    r
}

pub fn pair(p: &FundamentalPair, b: &Bialgebra) -> Report {
    let mut r = Report::new("hopf");
    r.set("v_dim", p.v_dim);
    r.set("n_dim", p.n.dim());
    let by_intersection = match p.intersection_witness(b) {
        Ok(w) => w,
        Err(e) => {
            r.fail_err("pair_condition", &e);
            return r;
        }
    };
    r.check(
        "pair_condition",
        by_intersection.is_none(),
        "(V⊗Δ(H)) ∩ (N⊗H) ≠ 0",
        by_intersection
            .as_deref()
            .map(vector)
            .unwrap_or(Value::Null),
    );
    if let Some(w) = p.submodule_witness(b) {
        r.fail("n_submodule", "N is not a right H-submodule", vector(&w));
    } else {
        r.set("n_submodule", true);
    }
    if r.failures.is_empty() {
        match from_pair(p, b) {
            Ok(h) => {
                r.set("bullet_dim", h.datum.bullet_dim);
                match pair_roundtrip_from(p, b) {
                    Ok(f) => {
                        r.set("pair_roundtrip", true);
                        r.set(
                            "roundtrip_iso",
                            f.entries().iter().map(format_rational).collect::<Vec<_>>(),
                        );
                    }
                    Err(e) => r.fail_err("pair_roundtrip", &e),
                }
            }
            Err(e) => r.fail_err("from_pair", &e),
        }
    }
    r
}

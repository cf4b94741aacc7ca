//! Per-group pipeline: lattice, structure report, and all three
//! covering numbers, plus the line-record rendering used by batch mode.

use grpcover::covering::sigma_n_of_family;
use grpcover::error::{Error, Result};
use grpcover::{
    enumerate_subgroups, proper_normalizers, sigma, sigma_c, structure_profile, structure_report,
    Budgets, CoverOutcome, ElementId, ElementSet, GroupTable, NormalizerFamily, StructureProfile,
    StructureReport, SubgroupLattice,
};

/// Everything the checks and reports need about one group.
pub struct GroupAnalysis {
    pub name: String,
    pub source: String,
    pub table: GroupTable,
    pub lattice: SubgroupLattice,
    pub family: NormalizerFamily,
    pub report: StructureReport,
    pub profile: StructureProfile,
    pub sigma_n: CoverOutcome,
    /// None when the group is over the sigma order budget.
    pub sigma: Option<CoverOutcome>,
    pub sigma_c: CoverOutcome,
}

impl GroupAnalysis {
    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn sigma_n_value(&self) -> Option<usize> {
        self.sigma_n.value()
    }
}

pub fn analyze(table: GroupTable, source: String, budgets: &Budgets) -> Result<GroupAnalysis> {
    let lattice = enumerate_subgroups(&table, budgets)?;
    let family = proper_normalizers(&table, &lattice);
    let sigma_n = sigma_n_of_family(&table, &family, budgets)?;
    let sigma_outcome = if table.order() <= budgets.sigma_order_budget {
        Some(sigma(&table, &lattice, budgets)?)
    } else {
        None
    };
    let sigma_c = sigma_c(&table, budgets)?;
    let report = structure_report(&table, &lattice, budgets.min_gen_search_limit);
    let profile = structure_profile(&table, &lattice);
    Ok(GroupAnalysis {
        name: table.name().to_string(),
        source,
        table,
        lattice,
        family,
        report,
        profile,
        sigma_n,
        sigma: sigma_outcome,
        sigma_c,
    })
}

/// Deterministic small generating set of a subgroup, for witness output.
pub fn subgroup_generators(g: &GroupTable, members: &ElementSet) -> Vec<ElementId> {
    let mut gens = Vec::new();
    let mut closure = ElementSet::from_members(g.order(), [0]);
    while closure.len() < members.len() {
        let next = members
            .iter()
            .find(|&e| !closure.contains(e))
            .expect("closure still proper");
        gens.push(next);
        let mut seed = closure.clone();
        seed.insert(next);
        closure = grpcover::generated_subgroup(g, &seed).expect("valid seed");
    }
    gens
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

fn cover_value_json(outcome: &CoverOutcome) -> String {
    match outcome {
        CoverOutcome::Finite { value, .. } => value.to_string(),
        CoverOutcome::Infinite { .. } => "\"inf\"".to_string(),
    }
}

/// Witness JSON for a sigma_n outcome.
fn witness_json(analysis: &GroupAnalysis) -> String {
    match &analysis.sigma_n {
        CoverOutcome::Finite { witness_cover, .. } => {
            let parts: Vec<String> = witness_cover
                .iter()
                .map(|&id| {
                    let members = &analysis.lattice.subgroup(id).members;
                    let gens: Vec<String> = subgroup_generators(&analysis.table, members)
                        .iter()
                        .map(|e| e.to_string())
                        .collect();
                    format!("[{}]", gens.join(","))
                })
                .collect();
            format!("{{\"kind\":\"finite\",\"cover\":[{}]}}", parts.join(","))
        }
        CoverOutcome::Infinite { witness_element } => format!(
            "{{\"kind\":\"infinite\",\"element\":{},\"element_order\":{}}}",
            witness_element,
            analysis.table.order_of(*witness_element)
        ),
    }
}

/// One line-delimited result record. Key order is fixed:
/// name, order, sigma_n, sigma, sigma_c, is_nilpotent, is_solvable,
/// fitting_size, witness, elapsed_ms, error.
pub fn result_line(
    name: &str,
    outcome: &Result<GroupAnalysis>,
    elapsed_ms: Option<u128>,
) -> String {
    let elapsed = elapsed_ms.map_or("null".to_string(), |v| v.to_string());
    match outcome {
        Ok(a) => format!(
            "{{\"name\":\"{}\",\"order\":{},\"sigma_n\":{},\"sigma\":{},\"sigma_c\":{},\"is_nilpotent\":{},\"is_solvable\":{},\"fitting_size\":{},\"witness\":{},\"elapsed_ms\":{},\"error\":null}}",
            json_escape(name),
            a.order(),
            cover_value_json(&a.sigma_n),
            a.sigma.as_ref().map_or("null".to_string(), cover_value_json),
            cover_value_json(&a.sigma_c),
            a.report.is_nilpotent,
            a.report.is_solvable,
            a.report.fitting_size,
            witness_json(a),
            elapsed,
        ),
        Err(e) => format!(
            "{{\"name\":\"{}\",\"order\":null,\"sigma_n\":null,\"sigma\":null,\"sigma_c\":null,\"is_nilpotent\":null,\"is_solvable\":null,\"fitting_size\":null,\"witness\":null,\"elapsed_ms\":{},\"error\":\"{}\"}}",
            json_escape(name),
            elapsed,
            json_escape(&e.to_string()),
        ),
    }
}

/// Exit-code category for an error per the CLI contract:
/// 2 input, 3 budget.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::OrderBudgetExceeded { .. }
        | Error::LatticeBudgetExceeded { .. }
        | Error::SolverBudgetExceeded { .. } => 3,
        _ => 2,
    }
}

//! The instability case catalogue for the smallest binary dihedral group.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct D4Case {
    pub id: &'static str,
}

#[derive(Clone, Debug)]
pub enum D4Outcome {
    Certificate,
    Contradiction,
}

#[derive(Clone, Debug)]
pub struct D4CaseReport {
    pub id: &'static str,
    pub outcome: D4Outcome,
    pub pairing: i64,
    pub limit_vanishes: bool,
}

pub fn d4_case_ids() -> Vec<&'static str> {
    unimplemented!()
}

pub fn d4_case(id: &str) -> Option<D4Case> {
    let _ = id;
    unimplemented!()
}

pub fn d4_catalogue_check(id: &str, seed: u64, tol: &str) -> D4CaseReport {
    let _ = (id, seed, tol);
    unimplemented!()
}

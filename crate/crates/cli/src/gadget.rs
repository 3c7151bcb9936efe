//! Turning `efpa gen` flags into instances.

use std::path::PathBuf;

use clap::ValueEnum;
use efpa_core::generators::{
    gen_folklore, gen_identical_3partition, gen_random, gen_shadow_extension, gen_x3c_2v,
    gen_x3c_kv, gen_x3c_kvc, ThreePartitionInput, X3cInput,
};
use efpa_core::{Instance, UtilityClass, ValueClass};

use crate::document::read_instance;
use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Gadget {
    Folklore,
    #[value(name = "identical-3partition")]
    Identical3Partition,
    Shadow,
    #[value(name = "x3c-kv")]
    X3cKv,
    #[value(name = "x3c-2v")]
    X3c2v,
    #[value(name = "x3c-kvc")]
    X3cKvc,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassName {
    Binary,
    Bivalued,
    Ternary,
    General,
}

/// Flags shared by all gadgets; each gadget reads the ones it needs.
#[derive(Debug, Clone, Default)]
pub struct GadgetParams {
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub numbers: Option<String>,
    pub sets: Option<String>,
    pub v: Option<u64>,
    pub u: Option<u64>,
    pub k: Option<u64>,
    pub c: Option<u64>,
    pub seed: u64,
    pub base: Option<PathBuf>,
    pub class: Option<ClassName>,
    pub identical: bool,
}

fn required<T: Copy>(value: Option<T>, flag: &str, gadget: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("--{flag} is required for {gadget}")))
}

fn parse_list(text: &str) -> Result<Vec<u64>, Failure> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("not a non-negative integer: {s:?}")))
        })
        .collect()
}

/// `"0,1,2;1,3,4"`: triples separated by semicolons.
pub fn parse_sets(text: &str) -> Result<Vec<[usize; 3]>, Failure> {
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let items = parse_list(s)?;
            let triple: [u64; 3] = items
                .try_into()
                .map_err(|_| Failure::Usage(format!("set {s:?} does not have three elements")))?;
            Ok(triple.map(|x| x as usize))
        })
        .collect()
}

fn x3c_input(params: &GadgetParams, gadget: &str) -> Result<X3cInput, Failure> {
    let sets = parse_sets(
        params
            .sets
            .as_deref()
            .ok_or_else(|| Failure::Usage(format!("--sets is required for {gadget}")))?,
    )?;
    let ground = match params.n {
        Some(n) => 3 * n,
        None => {
            let top = sets.iter().flatten().max().map_or(0, |&x| x + 1);
            top.div_ceil(3) * 3
        }
    };
    Ok(X3cInput::new(ground, sets)?)
}

/// Builds the instance and collects warnings worth showing the user.
pub fn generate(gadget: Gadget, params: &GadgetParams) -> Result<(Instance, Vec<String>), Failure> {
    let mut warnings = Vec::new();
    let instance = match gadget {
        Gadget::Folklore => gen_folklore(required(params.n, "n", "folklore")?)?,
        Gadget::Identical3Partition => {
            let text = params.numbers.as_deref().ok_or_else(|| {
                Failure::Usage("--numbers is required for identical-3partition".into())
            })?;
            let input = ThreePartitionInput::new(parse_list(text)?)?;
            warnings = input.warnings();
            gen_identical_3partition(&input)?
        }
        Gadget::Shadow => {
            let path = params
                .base
                .as_ref()
                .ok_or_else(|| Failure::Usage("--base is required for shadow".into()))?;
            gen_shadow_extension(
                &read_instance(path)?,
                params.v.unwrap_or(1),
                params.u.unwrap_or(2),
            )?
        }
        Gadget::X3cKv => gen_x3c_kv(
            &x3c_input(params, "x3c-kv")?,
            params.v.unwrap_or(1),
            params.k.unwrap_or(3),
        )?,
        Gadget::X3c2v => gen_x3c_2v(&x3c_input(params, "x3c-2v")?, params.v.unwrap_or(1))?,
        Gadget::X3cKvc => gen_x3c_kvc(
            &x3c_input(params, "x3c-kvc")?,
            params.v.unwrap_or(2),
            params.k.unwrap_or(1),
            params.c.unwrap_or(1),
        )?,
        Gadget::Random => {
            let values = match params.class.unwrap_or(ClassName::Binary) {
                ClassName::Binary => ValueClass::Binary,
                ClassName::Bivalued => ValueClass::Bivalued,
                ClassName::Ternary => ValueClass::Ternary {
                    low: params.v.unwrap_or(1),
                    high: params.u.unwrap_or(2),
                },
                ClassName::General => ValueClass::General,
            };
            let class = UtilityClass {
                values,
                identical: params.identical,
            };
            let n = required(params.n, "n", "random")?;
            gen_random(n, params.m.unwrap_or(n), class, params.seed)?
        }
    };
    Ok((instance, warnings))
}

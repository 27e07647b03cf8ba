//! Argument parsing and dispatch.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use symcube_core::homotopy::{cap_inclusion, count_extensions, find_homotopy, is_fibrant};
use symcube_core::monoidal::{convolve, restrict, symmetrize};
use symcube_core::perm::parse_permutation;
use symcube_core::presheaf::{
    boundary, cap, coskeleton, quotient_boundary, quotient_by_group, representable, skeleton, verify_skeletal_pushout,
    SubgroupSpec,
};
use symcube_core::realize::{homology, realize_to};
use symcube_core::site::{
    enumerate_hom, factor, resource_limit, set_resource_limit, verify_ez1, verify_ez2, verify_ez3, verify_relations,
};
use symcube_core::{Error, Morphism, Presheaf, PresheafMap, Site};

use crate::format::{load_presheaf, presheaf_json, print_presheaf};
use crate::verify::{pushout_corpus, run_all};

pub const SUCCESS: i32 = 0;
pub const VERIFICATION_FAILED: i32 = 1;
pub const INPUT_ERROR: i32 = 2;
pub const RESOURCE_BOUND: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "symcube", version, about = "Exact computations in the box category and the symmetric cubical site")]
pub struct Cli {
    /// Site used by commands that build objects from scratch.
    #[arg(long, global = true, default_value = "QSigma", value_parser = parse_site)]
    pub site: Site,
    /// Dimension argument of the command.
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    /// Bound on enumerated elements.
    #[arg(long, global = true)]
    pub limit: Option<u128>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Presheaf file, text or JSON.
    #[arg(value_name = "FILE")]
    pub path: Option<PathBuf>,
    #[arg(long = "file", value_name = "FILE", conflicts_with = "path")]
    pub file: Option<PathBuf>,
}

impl Input {
    fn load(&self) -> Result<Arc<Presheaf>, Failure> {
        let path = self.path.as_ref().or(self.file.as_ref()).ok_or_else(|| usage("a presheaf file is required"))?;
        Ok(Arc::new(load_presheaf(path)?))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Composite g∘f.
    Compose { g: String, f: String },
    /// Normal form δ…γ…π σ… of an arrow.
    Factor { f: String },
    /// Every arrow ⟦m⟧ → ⟦n⟧ of the site.
    EnumHom { m: usize, n: usize },
    /// Monoidal sum f ⊕ g.
    Tensor { f: String, g: String },
    /// All cocubical and conjunction relations up to --dim (default 4).
    VerifyRelations,
    /// EZ1 and EZ2 up to --dim, EZ3 up to --dim + 1 (default 3).
    VerifyEz,
    /// Skeletal pushout squares at every k ≤ --dim (default 3).
    VerifyPushouts {
        #[arg(long, value_name = "FILE")]
        file: Option<PathBuf>,
    },
    /// Day convolution of two presheaves.
    Convolve { a: PathBuf, b: PathBuf },
    /// Left Kan extension along Q → QΣ.
    Symmetrize(Input),
    /// Restriction along Q → QΣ, up to level --dim.
    Restrict(Input),
    /// The --dim skeleton.
    Skeleton(Input),
    /// The --dim coskeleton, computed up to --up-to.
    Coskeleton {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        up_to: Option<usize>,
    },
    /// Quotient of □ⁿ (or ∂□ⁿ) by the subgroup generated by --gen.
    Quotient {
        #[arg(long = "gen", value_name = "PERM")]
        gens: Vec<String>,
        #[arg(long)]
        boundary: bool,
    },
    /// ∂□ⁿ for n = --dim.
    Boundary,
    /// The cap ⊓ⁿ_{i,ε} for n = --dim, over Q or symmetrized.
    Cap {
        #[arg(long)]
        index: usize,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        eps: u8,
    },
    /// Simplicial realization, up to level --dim.
    Realize(Input),
    /// Integral homology of the realization.
    Homology(Input),
    /// Which maps from a cap or boundary into X extend to the cube.
    Lift {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "N,I,EPS", value_delimiter = ',', conflicts_with = "boundary")]
        cap: Option<Vec<usize>>,
        #[arg(long, value_name = "N")]
        boundary: Option<usize>,
    },
    /// Cap extension for every cap up to --dim (default 2).
    Fibrant(Input),
    /// Searches for a homotopy □ᵏ ⊗ □ⁿ → Y between two k-sections, n = --dim (default 1).
    Homotopic {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Every property suite at scale --dim (default 3).
    VerifyAll,
}

fn parse_site(s: &str) -> Result<Site, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn usage(msg: &str) -> Failure {
    Failure::Usage(msg.into())
}

struct Out<'a> {
    w: &'a mut dyn Write,
    json: bool,
}

impl Out<'_> {
    /// Prints the text form, or the JSON value when `--json` is set.
    fn emit(&mut self, text: &str, value: Value) -> Result<(), Failure> {
        if self.json {
            writeln!(self.w, "{}", serde_json::to_string_pretty(&value).expect("values serialize"))?;
        } else {
            write!(self.w, "{text}")?;
            if !text.is_empty() && !text.ends_with('\n') {
                writeln!(self.w)?;
            }
        }
        Ok(())
    }

    fn presheaf(&mut self, x: &Presheaf) -> Result<(), Failure> {
        let text = print_presheaf(x);
        self.emit(&text, presheaf_json(x))
    }
}

/// Parses `args` (program name first) and runs the command, returning the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { INPUT_ERROR } else { SUCCESS };
            let text = e.render().to_string();
            let _ = if code == SUCCESS { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    if let Some(limit) = cli.limit {
        set_resource_limit(limit);
    }
    let mut o = Out { w: out, json: cli.json };
    match dispatch(&cli, &mut o) {
        Ok(true) => SUCCESS,
        Ok(false) => VERIFICATION_FAILED,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Core(e @ (Error::ResourceBound { .. } | Error::Overflow)) => (RESOURCE_BOUND, e.to_string()),
                Failure::Core(e) => (INPUT_ERROR, e.to_string()),
                Failure::Usage(m) => (INPUT_ERROR, m),
                Failure::Io(e) => (INPUT_ERROR, e.to_string()),
            };
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn morphism(s: &str) -> Result<Morphism, Failure> {
    Ok(s.parse()?)
}

fn need_dim(cli: &Cli, what: &str) -> Result<usize, Failure> {
    cli.dim.ok_or_else(|| Failure::Usage(format!("{what} needs --dim")))
}

/// Runs the command; `Ok(false)` is a completed check that failed.
fn dispatch(cli: &Cli, o: &mut Out) -> Result<bool, Failure> {
    let site = cli.site;
    match &cli.command {
        Command::Compose { g, f } => {
            let gf = morphism(g)?.compose(&morphism(f)?)?;
            o.emit(&gf.to_string(), json!({ "result": gf }))?;
        }
        Command::Factor { f } => {
            let f = morphism(f)?;
            let nf = factor(&f);
            let value = json!({
                "morphism": f,
                "normal_form": nf.to_string(),
                "faces": nf.faces,
                "conjs": nf.conjs,
                "perm": nf.perm.cycle_string(),
                "degens": nf.degens,
            });
            o.emit(&nf.to_string(), value)?;
        }
        Command::EnumHom { m, n } => {
            let hom = enumerate_hom(*m, *n, site, resource_limit())?;
            let text: String = hom.iter().map(|f| format!("{f}\n")).collect();
            o.emit(&text, json!({ "site": site, "count": hom.len(), "morphisms": hom }))?;
        }
        Command::Tensor { f, g } => {
            let s = morphism(f)?.tensor(&morphism(g)?);
            o.emit(&s.to_string(), json!({ "result": s }))?;
        }
        Command::VerifyRelations => {
            let n = cli.dim.unwrap_or(4);
            let r = verify_relations(n);
            let failures: Vec<_> = r.failures().collect();
            let mut text = format!("{} relation instances up to {n}, {} failures\n", r.instances.len(), failures.len());
            for i in &failures {
                text.push_str(&format!("FAIL {}: {} != {}\n", i.label, i.lhs, i.rhs));
            }
            o.emit(&text, json!({ "passed": r.passed(), "report": r }))?;
            return Ok(r.passed());
        }
        Command::VerifyEz => {
            let n = cli.dim.unwrap_or(3);
            let reports = [("EZ1", verify_ez1(n, site)?), ("EZ2", verify_ez2(n)?), ("EZ3", verify_ez3(n + 1)?)];
            let mut text = String::new();
            let mut ok = true;
            for (axiom, r) in &reports {
                let bad = r.failures().count();
                ok &= r.passed();
                text.push_str(&format!("{axiom}: {} checks, {bad} failures\n", r.checks.len()));
                for c in r.failures() {
                    text.push_str(&format!("FAIL {} {}: {}\n", c.axiom, c.subject, c.detail));
                }
            }
            let value: Vec<Value> =
                reports.iter().map(|(a, r)| json!({ "axiom": a, "passed": r.passed(), "report": r })).collect();
            o.emit(&text, json!({ "passed": ok, "reports": value }))?;
            return Ok(ok);
        }
        Command::VerifyPushouts { file } => {
            let n = cli.dim.unwrap_or(3);
            let corpus = match file {
                Some(p) => vec![(p.display().to_string(), Arc::new(load_presheaf(p)?))],
                None => pushout_corpus()?,
            };
            let (mut text, mut value, mut ok) = (String::new(), Vec::new(), true);
            for (name, x) in &corpus {
                for k in 0..=n {
                    let r = verify_skeletal_pushout(x, k)?;
                    ok &= r.passed();
                    let mark = if r.passed() { "ok" } else { "FAIL" };
                    text.push_str(&format!(
                        "{mark} {name} k={k} orbits={} sizes={:?}\n",
                        r.orbits.len(),
                        r.skeleton_sizes
                    ));
                    value.push(json!({ "object": name, "passed": r.passed(), "report": r }));
                }
            }
            o.emit(&text, json!({ "passed": ok, "checks": value }))?;
            return Ok(ok);
        }
        Command::Convolve { a, b } => {
            let (a, b) = (Arc::new(load_presheaf(a)?), Arc::new(load_presheaf(b)?));
            o.presheaf(&convolve(&a, &b)?.product)?;
        }
        Command::Symmetrize(input) => o.presheaf(&symmetrize(&input.load()?)?)?,
        Command::Restrict(input) => o.presheaf(&restrict(&*input.load()?, need_dim(cli, "restrict")?)?)?,
        Command::Skeleton(input) => o.presheaf(&skeleton(&input.load()?, need_dim(cli, "skeleton")?)?.0)?,
        Command::Coskeleton { input, up_to } => {
            let k = need_dim(cli, "coskeleton")?;
            o.presheaf(&coskeleton(&input.load()?, k, up_to.unwrap_or(k + 1))?)?;
        }
        Command::Quotient { gens, boundary } => {
            let n = need_dim(cli, "quotient")?;
            let gens = gens.iter().map(|g| parse_permutation(g, n)).collect::<Result<Vec<_>, _>>()?;
            let h = SubgroupSpec::new(n, gens)?;
            let (q, _) = if *boundary { quotient_boundary(n, &h, site)? } else { quotient_by_group(n, &h, site)? };
            o.presheaf(&q)?;
        }
        Command::Boundary => o.presheaf(&boundary(need_dim(cli, "boundary")?, site)?.0)?,
        Command::Cap { index, eps } => {
            let n = need_dim(cli, "cap")?;
            let inc = match site {
                Site::Q => cap(n, *index, *eps == 1)?.1,
                Site::QSigma => cap_inclusion(n, *index, *eps == 1, site)?,
            };
            o.presheaf(inc.src())?;
        }
        Command::Realize(input) => {
            let x = input.load()?;
            let r = realize_to(&x, cli.dim.unwrap_or(x.truncation()))?;
            let s = &r.simplicial;
            let (sizes, nondeg) = (s.level_sizes(), s.nondegenerate_counts());
            let mut text = String::new();
            for k in 0..sizes.len() {
                text.push_str(&format!("level {k}: {} simplices, {} nondegenerate\n", sizes[k], nondeg[k]));
            }
            text.push_str(&format!("euler characteristic: {}\n", s.euler_characteristic()));
            let value = json!({
                "level_sizes": sizes,
                "nondegenerate": nondeg,
                "euler_characteristic": s.euler_characteristic(),
            });
            o.emit(&text, value)?;
        }
        Command::Homology(input) => {
            let h = homology(&input.load()?)?;
            let value =
                json!({ "groups": h.groups, "betti": h.betti(), "euler_characteristic": h.euler_characteristic() });
            o.emit(&h.to_string(), value)?;
        }
        Command::Lift { input, cap, boundary: bdry } => {
            let x = input.load()?;
            let (what, inc) = match (cap, bdry) {
                (Some(c), None) => match c.as_slice() {
                    &[n, i, e] if e <= 1 => (format!("cap({n},{i},{e})"), cap_inclusion(n, i, e == 1, x.site())?),
                    _ => return Err(usage("--cap takes N,I,EPS with EPS in {0,1}")),
                },
                (None, Some(n)) => (format!("boundary({n})"), boundary(*n, x.site())?.1),
                _ => return Err(usage("lift needs exactly one of --cap and --boundary")),
            };
            let (maps, extendable) = count_extensions(&inc, &x, resource_limit())?;
            let ok = maps == extendable;
            let text = format!("{what}: {extendable} of {maps} maps extend\n");
            o.emit(&text, json!({ "inclusion": what, "maps": maps, "extendable": extendable, "passed": ok }))?;
            return Ok(ok);
        }
        Command::Fibrant(input) => {
            let x = input.load()?;
            let r = is_fibrant(&x, cli.dim.unwrap_or(2), resource_limit())?;
            let mut text = String::new();
            for c in &r.checks {
                let mark = if c.passed() { "ok" } else { "FAIL" };
                text.push_str(&format!(
                    "{mark} cap({},{},{}): {} of {} maps extend\n",
                    c.n,
                    c.i,
                    u8::from(c.eps),
                    c.extendable,
                    c.maps
                ));
            }
            text.push_str(if r.fibrant() { "fibrant\n" } else { "not fibrant\n" });
            o.emit(&text, json!({ "fibrant": r.fibrant(), "report": r }))?;
            return Ok(r.fibrant());
        }
        Command::Homotopic { input, from, to } => {
            let y = input.load()?;
            let n = cli.dim.unwrap_or(1);
            let (k, a) = locate(&y, from)?;
            let (l, b) = locate(&y, to)?;
            if k != l {
                return Err(Failure::Usage(format!("{from} lies at level {k} and {to} at level {l}")));
            }
            let f = yoneda(&y, k, a)?;
            let g = yoneda(&y, k, b)?;
            let found = find_homotopy(&f, &g, n)?.is_some();
            let verdict = if found { "homotopic" } else { "not homotopic" };
            let text = format!("{from} and {to} are {verdict} through □{n}\n");
            o.emit(&text, json!({ "from": from, "to": to, "level": k, "n": n, "homotopic": found }))?;
            return Ok(found);
        }
        Command::VerifyAll => {
            let reports = run_all(cli.dim.unwrap_or(3))?;
            let ok = reports.iter().all(|r| r.passed);
            let mut text = String::new();
            for r in &reports {
                let mark = if r.passed { "PASS" } else { "FAIL" };
                text.push_str(&format!("{mark} {:>2} {} ({} checks)\n", r.id, r.name, r.checks));
                for f in &r.failures {
                    text.push_str(&format!("     {f}\n"));
                }
            }
            o.emit(&text, json!({ "passed": ok, "criteria": reports }))?;
            return Ok(ok);
        }
    }
    Ok(true)
}

fn locate(y: &Presheaf, name: &str) -> Result<(usize, usize), Failure> {
    (0..=y.truncation())
        .find_map(|k| y.find(k, name).map(|x| (k, x)))
        .ok_or_else(|| Failure::Usage(format!("no section named {name:?}")))
}

/// The map `□ᵏ → Y` classifying the section `s` at level `k`.
fn yoneda(y: &Arc<Presheaf>, k: usize, s: usize) -> Result<PresheafMap, Failure> {
    let cube = Arc::new(representable(k, y.site())?);
    let comps = (0..=k)
        .map(|j| cube.labels(j).unwrap_or_default().iter().map(|f| y.act(f, s)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PresheafMap::new(cube, y.clone(), comps)?)
}

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use subtile::cohomology::{
    all_cohomology, ap_cohomology, bd_cohomology, properisation_cohomology, properise, CohomologyPresentation,
};
use subtile::complexes::{anderson_putnam, barge_diamond, eventual_range};
use subtile::io::{
    check_latex, export_report, format_eigenvalue, join_words, parse_save_file, render_complex, Report,
};
use subtile::language::admitted_words;
use subtile::recognisability::{fixed_letter, is_recognisable, return_words};
use subtile::spectral::{eigenvalues, is_primitive, pf_data, report_eigenvalues};
use subtile::{Error, IntegerMatrix, Substitution};

#[derive(Parser)]
#[command(name = "subtile", version, about = "Substitution tilings: languages, complexes and cohomology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Matrix, primitivity, eigenvalues and Perron-Frobenius data
    Info { sub: String },
    /// Count (and optionally list) the admitted words of length N
    Words {
        sub: String,
        #[arg(short = 'n', long)]
        n: usize,
        #[arg(long)]
        list: bool,
    },
    /// Fixed letter, return words and recognisability
    Recog { sub: String },
    /// TikZ code for a complex
    Complex {
        sub: String,
        #[arg(long = "type", value_enum, default_value_t = ComplexType::Bd)]
        kind: ComplexType,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// First cohomology presentations
    Cohomology {
        sub: String,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
    },
    /// Properisation stages on return words
    Properise {
        sub: String,
        #[arg(long, value_enum, default_value_t = Stage::Full)]
        stage: Stage,
    },
    /// Full LaTeX report
    Report {
        sub: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One report per entry of a save file
    Batch {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ComplexType {
    Bd,
    Ap,
    Er,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Bd,
    Ap,
    Proper,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Stage {
    Pre,
    Left,
    Conjugate,
    Full,
}

#[derive(Debug)]
enum Failure {
    Domain(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn print_matrix(m: &IntegerMatrix) {
    let width = m.to_rows().iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
    for row in m.to_rows() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
        println!("  {}", cells.join(" "));
    }
}

fn print_substitution(s: &Substitution) {
    for x in s.letters() {
        println!("  {} -> {}", subtile::word::letter_name(x), s.image(x));
    }
}

fn print_presentation(p: &CohomologyPresentation) {
    println!("{} :", p.method);
    println!("  group : {}", p.render());
    println!("  matrix :");
    print_matrix(&p.matrix);
    println!("  rank : {}", p.rank);
}

fn write_output(out: Option<PathBuf>, text: &str) -> Result<(), Failure> {
    if let Err(e) = check_latex(text) {
        return Err(Failure::Io(format!("generated LaTeX failed the balance check: {e}")));
    }
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Info { sub } => {
            let s = Substitution::parse(&sub)?;
            let m = s.matrix();
            println!("Substitution : {s}");
            println!("Substitution Matrix :");
            print_matrix(&m);
            let primitive = is_primitive(&m)?;
            println!("Primitive: {}", if primitive { "Yes" } else { "No" });
            let values: Vec<String> =
                report_eigenvalues(&eigenvalues(&m)?).iter().map(format_eigenvalue).collect();
            println!("Eigenvalues : {}", values.join(", "));
            if primitive {
                let pf = pf_data(&m)?;
                let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.2}")).collect::<Vec<_>>().join(", ");
                println!("Perron-Frobenius Eigenvalue : {:.2}", pf.pf_eigenvalue);
                println!("Tile Lengths : {}", fmt(&pf.tile_lengths));
                println!("Letter Frequencies : {}", fmt(&pf.frequencies));
            } else {
                println!("Perron-Frobenius Data : skipped: {}", Error::NotPrimitive);
            }
        }
        Command::Words { sub, n, list } => {
            let s = Substitution::parse(&sub)?;
            let words = admitted_words(&s, n)?;
            println!("{}", words.len());
            if list {
                for w in &words {
                    println!("{w}");
                }
            }
        }
        Command::Recog { sub } => {
            let s = Substitution::parse(&sub)?;
            let f = fixed_letter(&s);
            let rw = return_words(&s, f)?;
            println!("Fixed Letter : {}", subtile::word::letter_name(f.letter));
            println!("Order : {}", f.order);
            println!("Return Words : {}", join_words(&rw.words));
            println!("Recognisable: {}", if is_recognisable(&s)? { "Yes" } else { "No" });
        }
        Command::Complex { sub, kind, out } => {
            let s = Substitution::parse(&sub)?;
            let complex = match kind {
                ComplexType::Bd => barge_diamond(&s)?,
                ComplexType::Ap => anderson_putnam(&s)?,
                ComplexType::Er => eventual_range(&s)?.complex(),
            };
            write_output(out, &render_complex(&complex))?;
        }
        Command::Cohomology { sub, method } => {
            let s = Substitution::parse(&sub)?;
            match method {
                MethodArg::Bd => print_presentation(&bd_cohomology(&s)?),
                MethodArg::Ap => print_presentation(&ap_cohomology(&s)?),
                MethodArg::Proper => print_presentation(&properisation_cohomology(&s)?),
                MethodArg::All => {
                    let all = all_cohomology(&s)?;
                    for p in &all {
                        print_presentation(p);
                    }
                    println!("Cohomology Rank : {}", all[0].rank);
                    if all.iter().any(|p| p.rank != all[0].rank) {
                        return Err(Failure::Io("the three methods disagree on the rank".into()));
                    }
                }
            }
        }
        Command::Properise { sub, stage } => {
            let s = Substitution::parse(&sub)?;
            let p = properise(&s)?;
            println!("Return Words : {}", join_words(&p.return_alphabet));
            let (title, result) = match stage {
                Stage::Pre => ("Pre-left Properisation", &p.pre_left_proper),
                Stage::Left => ("Left Proper Power", &p.left_proper),
                Stage::Conjugate => ("Right Conjugate", &p.right_conjugate),
                Stage::Full => ("Full Properisation", &p.full_proper),
            };
            if !matches!(stage, Stage::Pre) {
                println!("Left Power : {}", p.left_power);
            }
            println!("{title} :");
            print_substitution(result);
        }
        Command::Report { sub, out } => {
            let s = Substitution::parse(&sub)?;
            write_output(out, &export_report(&Report::compute(&s)))?;
        }
        Command::Batch { input, out } => {
            let entries = parse_save_file(&fs::read_to_string(&input)?)?;
            fs::create_dir_all(&out)?;
            for entry in entries {
                let path = out.join(format!("{}.tex", entry.name));
                write_output(Some(path.clone()), &export_report(&Report::compute(&entry.substitution)))?;
                println!("{}", path.display());
            }
        }
    }
    Ok(())
}

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{CommandFactory, Parser, ValueEnum};
use secure_fdm::itemset::split_rows;
use secure_fdm::net::{cost_report, write_cost_csv};
use secure_fdm::support::write_rules_csv;
use secure_fdm::{
    parse_transactions, partition_db, run_secure_fdm, MiningConfig, PartitionPolicy, Ratio,
    UnionProtocol,
};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Partition {
    Roundrobin,
    Random,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Protocol {
    Unifi,
    UnifiKc,
    Plaintext,
}

impl From<Protocol> for UnionProtocol {
    fn from(p: Protocol) -> Self {
        match p {
            Protocol::Unifi => UnionProtocol::Unifi,
            Protocol::UnifiKc => UnionProtocol::UnifiKc,
            Protocol::Plaintext => UnionProtocol::Plaintext,
        }
    }
}

/// Mine association rules from a transaction file split among simulated
/// players, using a secure union protocol and secure threshold checks.
#[derive(Debug, Parser)]
#[command(name = "secure-fdm", version)]
struct Cli {
    /// Transaction file: one row per line, whitespace-separated item ids.
    #[arg(long)]
    input: PathBuf,
    /// Number of items L (default: largest id + 1).
    #[arg(long)]
    items: Option<usize>,
    /// Number of players M.
    #[arg(long)]
    players: usize,
    #[arg(long, value_enum, default_value = "roundrobin")]
    partition: Partition,
    /// Minimum support, as "num/den" or a decimal.
    #[arg(long)]
    support: Ratio,
    /// Minimum confidence, as "num/den" or a decimal.
    #[arg(long)]
    confidence: Ratio,
    #[arg(long, value_enum, default_value = "unifi")]
    protocol: Protocol,
    #[arg(long, default_value_t = 1)]
    max_consequent: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Bit size of the commutative cipher modulus (unifi-kc).
    #[arg(long, default_value_t = 256)]
    modulus_bits: u64,
    /// Keyed-hash digest width (unifi).
    #[arg(long, default_value_t = 160)]
    digest_bits: usize,
    /// Rules CSV destination (default: stdout, after the itemsets).
    #[arg(long)]
    rules_out: Option<PathBuf>,
    /// Cost report CSV destination.
    #[arg(long)]
    cost_out: Option<PathBuf>,
    /// Reveal global supports to the output instead of only frequency bits.
    #[arg(long)]
    reveal_supports: bool,
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    let text = std::fs::read_to_string(&cli.input)
        .with_context(|| format!("reading {}", cli.input.display()))?;
    let db = parse_transactions(&text, cli.items)?;
    let policy = match cli.partition {
        Partition::Roundrobin => PartitionPolicy::RoundRobin,
        Partition::Random => PartitionPolicy::Random { seed: cli.seed },
    };
    let protocol = UnionProtocol::from(cli.protocol);
    let parts = if protocol.is_secure() {
        partition_db(&db, cli.players, policy)?
    } else {
        split_rows(&db, cli.players, policy)?
    };

    let mut config = MiningConfig::new(cli.support, cli.confidence);
    config.protocol = protocol;
    config.reveal_supports = cli.reveal_supports;
    config.max_consequent = cli.max_consequent;
    config.seed = cli.seed;
    config.digest_bits = cli.digest_bits;
    config.modulus_bits = cli.modulus_bits;
    let result = run_secure_fdm(&parts, &config)?;

    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    result.write_frequent(&mut out)?;
    match &cli.rules_out {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_rules_csv(&result.rules, BufWriter::new(file))?;
        }
        None => {
            writeln!(out)?;
            write_rules_csv(&result.rules, &mut out)?;
        }
    }
    out.flush()?;
    if let Some(path) = &cli.cost_out {
        let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
        write_cost_csv(&cost_report(&result.ledger), BufWriter::new(file))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.players <= 2 && UnionProtocol::from(cli.protocol).is_secure() {
        Cli::command()
            .error(
                clap::error::ErrorKind::ArgumentConflict,
                format!(
                    "--protocol {} needs --players greater than 2",
                    UnionProtocol::from(cli.protocol)
                ),
            )
            .exit();
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

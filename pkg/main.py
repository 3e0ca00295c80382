"""
Herd Testing Analysis - command line entry point

Runs the Bayesian, info-gap, imprecise-probability and theorem analyses of
the herd inspection model and writes their tables as CSV/JSON.

Subcommands:
- bayes:   optimal m per prior, exceedance probabilities, prior sensitivity
- infogap: most robust m per critical cost, robustness curves
- maximal: maximality scores and maximal sets per horizon
- bridge:  info-gap vs Gamma-minimax and maximality verdicts, counterexamples
- loss:    conditional and expected loss tables
"""

import argparse
import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import List, Optional

from app.commands import bayes, bridge, infogap, loss, maximal
from app.config import get_settings, load_run_config
from app.exceptions import ConfigError, HerdTestError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_USAGE = 64

COMMANDS = {
    'bayes': (bayes, "Bayesian tables: optimal m per prior, exceedance, sensitivity"),
    'infogap': (infogap, "Info-gap tables: most robust m per critical cost, robustness curves"),
    'maximal': (maximal, "Maximality scores and maximal sets per horizon"),
    'bridge': (bridge, "Theorem verdicts for the herd model and both counterexamples"),
    'loss': (loss, "Conditional loss by diseased count, expected loss by m"),
}

logger = logging.getLogger("herdtest")
_configured = False


# Configure logging
def setup_logging():
    """Setup logging to both file and console"""
    global _configured
    root = logging.getLogger()
    if _configured:
        return root

    settings = get_settings()
    level = getattr(logging, settings.log_level.upper(), logging.INFO)
    root.setLevel(level)
    formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')

    # Console handler
    console_handler = logging.StreamHandler(sys.stdout)
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)
    root.addHandler(console_handler)

    # File handler with rotation
    if settings.log_to_file:
        settings.log_dir.mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(
            settings.log_file,
            maxBytes=10*1024*1024,  # 10MB
            backupCount=5
        )
        file_handler.setLevel(level)
        file_handler.setFormatter(formatter)
        root.addHandler(file_handler)

    _configured = True
    return root


class UsageErrorParser(argparse.ArgumentParser):
    """ArgumentParser that exits with EX_USAGE instead of 2"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = UsageErrorParser(
        prog="herdtest",
        description="Bayesian, info-gap and imprecise analyses of herd testing",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="{" + ",".join(COMMANDS) + "}")
    subparsers.required = True
    for name, (_, help_text) in COMMANDS.items():
        sub = subparsers.add_parser(name, help=help_text, description=help_text)
        sub.add_argument("--config", type=Path, default=None, help="JSON run configuration (defaults if omitted)")
        sub.add_argument("--out", type=Path, default=None, help="output directory")
    return parser


def resolve_output_dir(out: Optional[Path], run_config) -> Path:
    """--out, else the run config's output_dir, else HERDTEST_OUTPUT_DIR"""
    if out is not None:
        return out
    if run_config.output_dir is not None:
        return run_config.output_dir
    return get_settings().output_dir


def log_banner(command: str, run_config, out_dir: Path) -> None:
    logger.info("="*80)
    logger.info(f"🚀 Herd testing analysis: {command}")
    logger.info("="*80)
    for key, value in get_settings().describe().items():
        logger.info(f"{key}: {value}")
    for key, value in run_config.summary().items():
        logger.info(f"{key}: {value}")
    logger.info(f"Output directory: {out_dir}")
    logger.info("="*80)


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one subcommand and return the exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    setup_logging()
    try:
        run_config = load_run_config(args.config)
        out_dir = resolve_output_dir(args.out, run_config)
        log_banner(args.command, run_config, out_dir)
        module, _ = COMMANDS[args.command]
        paths = module.run(run_config, out_dir)
    except ConfigError as e:
        logger.error(f"❌ {e}")
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (HerdTestError, ValueError) as e:
        logger.error(f"❌ {e}")
        print(f"domain error: {e}", file=sys.stderr)
        return EXIT_DOMAIN

    logger.info(f"✅ {args.command} finished, {len(paths)} file(s) written")
    logger.info("="*80)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

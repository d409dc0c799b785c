"""
Tor-algebra classifier - Main Entry Point
Command line surface over the algebra, predictor and experiment modules.
"""

import json
import sys
from pathlib import Path
from typing import Dict, List, Optional, Tuple

# Allow running as `python src/main.py` from anywhere
sys.path.insert(0, str(Path(__file__).parent))

import click
import numpy as np

from algebra.apolarity import random_type2_pair
from algebra.graded_ideal import GORENSTEIN, TYPE2, GradedIdeal
from algebra.koszul import tor_algebra
from algebra.linalg_gf import FieldPrime
from config import get_config, validate_config
from errors import ParameterRangeError, TorClassifierError
from experiment.report import FORMATS, emit, format_counts, format_h
from experiment.runner import TallyRow, record_pair, reproduce_table1, run_trials, trial_seed
from theory.predictor import general_e_bounds, type2_profile
from utils.console import error, status, warn
from utils.file_utils import load_fixture, load_ideal, write_ideal, write_text


class TorClassifierApp:
    """Runs one command against the configured defaults."""

    def __init__(self):
        """Validate the configuration once and keep it for the commands."""
        if not validate_config():
            warn("Configuration has problems (falling back to defaults where possible)")
        self.config = get_config()

    def option(self, value: Optional[int], setting: str) -> int:
        """The given option, or the configured default when it is unset."""
        return getattr(self.config, setting) if value is None else value

    def experiment_options(
        self, prime: Optional[int], trials: Optional[int], seed: Optional[int]
    ) -> Tuple[int, int, int]:
        """(prime, trials, seed) with unset values taken from the configuration."""
        return (
            self.option(prime, "default_prime"),
            self.option(trials, "default_trials"),
            self.option(seed, "default_seed"),
        )

    def predict(self, s1: int, s: int, e: int = 3, fmt: str = "json") -> str:
        """Closed-form predictions for the socle polynomial χ^s1 + χ^s."""
        if e != 3:
            document = general_e_bounds(e, s, s1).to_dict()
            return json.dumps(document, indent=2)
        profile = type2_profile(s1, s)
        if fmt == "json":
            return json.dumps(profile.to_dict(), indent=2)
        lines = [
            f"## Socle polynomial χ^{s1} + χ^{s}",
            "",
            f"- h-vector: {format_h(profile.h)}",
            f"- initial degree t: {profile.t}",
            f"- a: {profile.a}, f-vector: ({profile.f0}, {profile.f1}, {profile.f2})",
            f"- generic class: {profile.generic_class}",
            f"- generic m: {profile.generic_m}",
            f"- Golod by degree: {'yes' if profile.golod_by_degree else 'no'}",
        ]
        if profile.special:
            lines.append(f"- forced m: {profile.special.m} ({profile.special.tor_class}, {profile.special.family})")
        if profile.betti_shape:
            columns = ", ".join(
                "{" + ", ".join(f"{j}: {n}" for j, n in sorted(column.items())) + "}"
                for column in profile.betti_shape.columns
            )
            lines.append(f"- Betti shape: {columns}")
        return "\n".join(lines)

    def describe(self, ideal: GradedIdeal, title: str) -> str:
        """Hilbert, socle, generator and Tor data of Q/I as a text report."""
        tor = tor_algebra(ideal)
        socle = ideal.socle_polynomial()
        degrees = ideal.minimal_generator_degrees()
        lines = [
            f"{title} over {ideal.field}",
            f"  h-vector:     {format_h(ideal.hilbert())}",
            f"  socle:        {socle} (type {socle.type}, socle degree {ideal.socle_degree()})",
            f"  initial t:    {ideal.initial_degree()}",
            f"  generators:   m = {ideal.generator_count()} "
            + "{" + ", ".join(f"{d}: {n}" for d, n in sorted(degrees.items())) + "}",
        ]
        kind = {1: GORENSTEIN, 2: TYPE2}.get(socle.type)
        if kind:
            lines.append(f"  compressed:   {'yes' if ideal.is_compressed(kind) else 'no'}")
        lines += [
            f"  (p, q, r):    {tor.parameters}",
            f"  class:        {tor.tor_class}",
            "  Betti table:",
        ]
        lines += ["    " + row for row in tor.betti_table().splitlines()]
        return "\n".join(lines)

    def classify(self, ideal_file: Optional[Path], fixture: Optional[str], prime: Optional[int]) -> str:
        """Hilbert, socle, generator and Tor-algebra report for a file or a fixture."""
        if (ideal_file is None) == (fixture is None):
            raise click.UsageError("Give exactly one of --ideal FILE or --fixture NAME")
        if fixture:
            ideal = load_fixture(fixture, prime)
            title = f"Fixture {fixture}"
        else:
            ideal = load_ideal(ideal_file, prime, self.config.truncation_cap)
            title = f"Ideal {ideal_file}"
        status(f"🔍 Classifying {title.lower()}")
        return self.describe(ideal, title)

    def pair(self, s1: int, s: int, prime: int, seed: int, export: Optional[Path]) -> str:
        """Draw one pair with the seed an experiment would use for its first trial."""
        field = FieldPrime(prime)
        derived = trial_seed(seed, s1, s, 0)
        rng = np.random.default_rng(derived)
        status(f"🎲 Drawing a pair for ({s1}, {s}) over {field}, seed {seed}")
        pair = random_type2_pair(s1, s, field, rng, self.config.retry_cap, require_compressed=False)
        record = record_pair(pair, derived)
        if not pair.compressed:
            warn("The intersection is not compressed")

        if export:
            for name, ideal in (("I1", pair.i1), ("I2", pair.i2), ("I", pair.intersection), ("I_sum", pair.sum)):
                path = write_ideal(export / f"{name}.json", ideal, name)
                status(f"💾 Wrote {path}")

        sections = [
            json.dumps(record.to_dict(), indent=2),
            self.describe(pair.i1, "Q/I1"),
            self.describe(pair.i2, "Q/I2"),
            self.describe(pair.intersection, "Q/(I1 ∩ I2)"),
        ]
        return "\n\n".join(sections)

    def _metadata(self, prime: int, trials: int, seed: int) -> Dict[str, object]:
        return {"prime": prime, "trials": trials, "seed": seed}

    def experiment(self, s1: int, s: int, prime: int, trials: int, seed: int, fmt: str) -> str:
        """Run trials for one socle pair and emit the tally row."""
        row = run_trials(s1, s, prime, trials, seed)
        status(format_counts(row))
        return emit([row], fmt, self._metadata(prime, trials, seed))

    def table1(self, max_s: int, prime: int, trials: int, seed: int, fmt: str) -> str:
        """Run trials for every socle pair up to max_s and emit the table."""
        rows: List[TallyRow] = reproduce_table1(max_s, prime, trials, seed)
        disagreements = [row for row in rows if not row.agree]
        if disagreements:
            warn(f"{len(disagreements)} of {len(rows)} rows differ from the generic prediction")
        else:
            status(f"✅ All {len(rows)} rows agree with the generic prediction")
        return emit(rows, fmt, self._metadata(prime, trials, seed))


def _run(action):
    """Map library errors onto click's exit codes."""
    try:
        return action()
    except ParameterRangeError as e:
        raise click.UsageError(str(e)) from e
    except TorClassifierError as e:
        error(str(e))
        raise click.ClickException(str(e)) from e


def _output(text: str, out: Optional[Path]) -> None:
    """Print to stdout, or write to a file when --out is given."""
    if out:
        path = write_text(out, text if text.endswith("\n") else text + "\n")
        status(f"💾 Wrote {path}")
    else:
        click.echo(text, nl=not text.endswith("\n"))


@click.group()
@click.pass_context
def cli(ctx: click.Context):
    """Classify Tor algebras of graded artinian quotients of k[x, y, z]."""
    ctx.obj = TorClassifierApp()


@cli.command()
@click.option("--s1", type=int, required=True, help="Lower socle degree")
@click.option("--s", "s", type=int, required=True, help="Top socle degree")
@click.option("--e", "e", type=int, default=3, show_default=True, help="Embedding dimension")
@click.option("--format", "fmt", type=click.Choice(["json", "markdown"]), default="json", show_default=True)
@click.pass_obj
def predict(app: TorClassifierApp, s1: int, s: int, e: int, fmt: str):
    """Closed-form predictions for a compressed type 2 ring."""
    _output(_run(lambda: app.predict(s1, s, e, fmt)), None)


@cli.command()
@click.option("--ideal", "ideal_file", type=click.Path(path_type=Path), help="JSON ideal file")
@click.option("--fixture", help="Name of a bundled example ideal")
@click.option("--prime", type=int, help="Override the file's prime")
@click.pass_obj
def classify(app: TorClassifierApp, ideal_file: Optional[Path], fixture: Optional[str], prime: Optional[int]):
    """Report Hilbert, socle and Tor-algebra data of Q/I."""
    _output(_run(lambda: app.classify(ideal_file, fixture, prime)), None)


@cli.command()
@click.option("--s1", type=int, required=True)
@click.option("--s", "s", type=int, required=True)
@click.option("--prime", type=int, help="Field size (default TORCLASS_PRIME)")
@click.option("--seed", type=int, help="Base seed (default TORCLASS_SEED)")
@click.option("--export", type=click.Path(file_okay=False, path_type=Path), help="Directory for I1, I2, I, I_sum")
@click.pass_obj
def pair(app: TorClassifierApp, s1: int, s: int, prime: Optional[int], seed: Optional[int], export: Optional[Path]):
    """Draw one random pair of compressed Gorenstein ideals and classify the intersection."""
    _output(
        _run(lambda: app.pair(s1, s, app.option(prime, "default_prime"), app.option(seed, "default_seed"), export)),
        None,
    )


def _experiment_options(command):
    command = click.option("--format", "fmt", type=click.Choice(FORMATS), default="csv", show_default=True)(command)
    command = click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Write to a file")(command)
    command = click.option("--seed", type=int, help="Base seed (default TORCLASS_SEED)")(command)
    command = click.option("--trials", type=int, help="Trials per row (default TORCLASS_TRIALS)")(command)
    command = click.option("--prime", type=int, help="Field size (default TORCLASS_PRIME)")(command)
    return command


@cli.command()
@click.option("--s1", type=int, required=True)
@click.option("--s", "s", type=int, required=True)
@_experiment_options
@click.pass_obj
def experiment(app: TorClassifierApp, s1: int, s: int, prime, trials, seed, out, fmt):
    """Tally random trials for one socle pair."""
    _output(_run(lambda: app.experiment(s1, s, *app.experiment_options(prime, trials, seed), fmt)), out)


@cli.command()
@click.option("--max-s", "max_s", type=int, default=6, show_default=True, help="Largest top socle degree")
@_experiment_options
@click.pass_obj
def table1(app: TorClassifierApp, max_s: int, prime, trials, seed, out, fmt):
    """Tally random trials for every socle pair with s <= max-s."""
    _output(_run(lambda: app.table1(max_s, *app.experiment_options(prime, trials, seed), fmt)), out)


def main():
    """Entry point for the application."""
    cli()


if __name__ == "__main__":
    main()

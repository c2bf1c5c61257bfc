"""Command-line interface.

Subcommands:

* ``link``      single-point received power (watts and dBm) per carrier
* ``assoc``     association-vs-distance sweep, CSV
* ``capacity``  capacity-vs-device-density sweep, CSV
* ``validate``  Monte Carlo check of the association formula

Exit codes: 0 success, 1 configuration error, 2 numeric/domain error,
3 I/O error.
"""

from __future__ import annotations

import sys

import click

from .association import association_at, macro_rx_power_at, micro_rx_power_at
from .errors import ConfigError, DomainError
from .oracle import OracleConfig, simulate_association, window_radius_for_count
from .radio import watts_to_dbm
from .scenario import Scenario, load_scenario
from .sweep import ground_offset_for_separation, render_csv, \
    run_association_sweep, run_capacity_sweep

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DOMAIN = 2
EXIT_IO = 3

_scenario_option = click.option(
    "--scenario", "scenario_path", type=str, default=None,
    help="Scenario TOML file; omitted fields take the bundled defaults.")
_model_option = click.option(
    "--model", type=click.Choice(["conventional", "irs"]), default="conventional",
    show_default=True, help="Micro-link model to evaluate.")
_output_option = click.option(
    "--output", "output_path", type=str, default=None,
    help="Write CSV here instead of stdout.")


def _load(scenario_path: str | None) -> Scenario:
    return load_scenario(scenario_path) if scenario_path else Scenario()


def _emit(rows, output_path: str | None) -> None:
    text = render_csv(rows)
    if output_path is None:
        click.echo(text, nl=False)
    else:
        with open(output_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


@click.group()
def cli():
    """Two-tier link budget, user association and capacity simulator."""


@cli.command()
@_scenario_option
@_model_option
@click.option("--distance", type=float, default=10.0, show_default=True,
              help="Station-device separation in meters.")
def link(scenario_path, model, distance):
    """Evaluate the micro-link received power at one separation."""
    scenario = _load(scenario_path)
    click.echo("model,carrier_ghz,distance_m,p_rx_w,p_rx_dbm,p_rx_macro_w,assoc_prob")
    for carrier in sorted(scenario.carriers, key=lambda c: c.frequency_hz):
        geom = scenario.geometry(model, carrier)
        x = geom.micro.position.x + ground_offset_for_separation(scenario, distance)
        p = float(micro_rx_power_at(geom, x, geom.micro.position.y))
        p_ma = float(macro_rx_power_at(geom, x, geom.micro.position.y))
        assoc = float(association_at(geom, x, geom.micro.position.y))
        click.echo(f"{model},{carrier.frequency_hz / 1e9:g},{distance:g},"
                   f"{p:.17g},{watts_to_dbm(p):.6f},{p_ma:.17g},{assoc:.17g}")


@cli.command()
@_scenario_option
@_model_option
@_output_option
def assoc(scenario_path, model, output_path):
    """Association probability versus station-device separation."""
    scenario = _load(scenario_path)
    rows = run_association_sweep(scenario, scenario.distance_sweep, model)
    _emit(rows, output_path)


@cli.command()
@_scenario_option
@_model_option
@_output_option
def capacity(scenario_path, model, output_path):
    """Supportable devices versus device density."""
    scenario = _load(scenario_path)
    rows = run_capacity_sweep(scenario, scenario.density_sweep, model)
    _emit(rows, output_path)


@cli.command()
@_scenario_option
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--trials", type=int, default=100_000, show_default=True)
@click.option("--alpha", type=float, default=None,
              help="Common attenuation exponent [default: scenario micro exponent].")
@click.option("--window-radius", type=float, default=None,
              help="Sampling window radius in meters [default: sized so the sparser "
                   "tier expects 100 stations].")
def validate(scenario_path, seed, trials, alpha, window_radius):
    """Monte Carlo check of the closed-form association probability.

    Drops Poisson station fields around a centered device and attaches it
    to the strongest station; the micro-tier win rate must match the
    closed form under a common attenuation exponent.
    """
    scenario = _load(scenario_path)
    d = scenario.densities
    cfg = OracleConfig(
        lambda_ma=d.lambda_ma,
        lambda_mi=d.lambda_mi,
        p_ma_w=scenario.macro_power_w,
        p_mi_w=scenario.micro_power_conventional_w,
        alpha=alpha if alpha is not None else scenario.micro_pathloss_exponent,
        window_radius_m=(window_radius if window_radius is not None
                         else window_radius_for_count(min(d.lambda_ma, d.lambda_mi))),
        n_trials=trials,
        seed=seed,
    )
    result = simulate_association(cfg)
    click.echo(f"trials           {result.n_trials}")
    click.echo(f"micro_wins       {result.micro_wins}")
    click.echo(f"estimate         {result.estimate:.17g}")
    click.echo(f"std_error        {result.std_error:.17g}")
    click.echo(f"closed_form      {result.closed_form:.17g}")
    click.echo(f"model_gap        {result.model_gap:.17g}")
    click.echo(f"resampled_trials {result.resampled_trials}")
    click.echo(f"seed             {result.seed}")
    click.echo(f"rng              {result.rng_algorithm}")
    click.echo(f"backend          {result.backend}")


def main(argv: list[str] | None = None) -> int:
    """Entry point mapping library errors onto the documented exit codes."""
    try:
        cli.main(args=argv, standalone_mode=False)
        return EXIT_OK
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        return EXIT_CONFIG
    except DomainError as exc:
        click.echo(f"domain error: {exc}", err=True)
        return EXIT_DOMAIN
    except OSError as exc:
        click.echo(f"i/o error: {exc}", err=True)
        return EXIT_IO
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return EXIT_CONFIG
    except click.Abort:
        click.echo("aborted", err=True)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())

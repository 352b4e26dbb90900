"""Main entry point for the wdw-isospectral CLI."""

import asyncio
import sys
from pathlib import Path
from typing import Annotated, Any, Optional

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from src.closed_forms import CASE_REQUIREMENTS, classify
from src.config import ModelParams, OutputFormat, RunConfig
from src.errors import EXIT_CONFIG, EXIT_OK, ConfigurationError, VerificationError, WDWError
from src.family import check_lambdas, cumulative_integral, sweep_family, verify_family_member

from .export import write_csv, write_json
from .pipeline import make_grid, resolve_config, resolve_seed
from .suite import CheckResult, VerificationSuite

app = typer.Typer(
    name="wdw-isospectral",
    help="SUSY factorization and isospectral families of the Wheeler-DeWitt equation",
    add_completion=False,
    pretty_exceptions_enable=False,
)
console = Console()

# Base of the parse errors typer raises, whichever click build it ships with
UsageFailure: type[Exception] = next(
    cls for cls in typer.BadParameter.__mro__ if cls.__name__ == "ClickException"
)


GammaOpt = Annotated[Optional[float], typer.Option("--gamma", help="Barotropic index gamma")]
KappaOpt = Annotated[Optional[int], typer.Option("--kappa", help="Curvature index -1, 0 or 1")]
CcOpt = Annotated[Optional[float], typer.Option("--cc", help="Cosmological constant Lambda")]
MatterOpt = Annotated[Optional[float], typer.Option("--matter", help="pi*G*M_gamma")]
MsqOpt = Annotated[
    Optional[float], typer.Option("--msq", help="Set matter so that m^2 takes this value")
]
QOpt = Annotated[Optional[float], typer.Option("--q", help="Factor ordering q")]
AMinOpt = Annotated[Optional[float], typer.Option("--a-min", help="Left end of the A grid")]
AMaxOpt = Annotated[Optional[float], typer.Option("--a-max", help="Right end of the A grid")]
NOpt = Annotated[Optional[int], typer.Option("--n", help="Number of grid points")]
LamOpt = Annotated[
    Optional[list[float]], typer.Option("--lam", help="Family parameter lambda (repeatable)")
]
ClosedOpt = Annotated[bool, typer.Option("--closed-form", help="Use the closed-form seed")]
C1Opt = Annotated[Optional[float], typer.Option("--c1", help="First basis coefficient")]
C2Opt = Annotated[Optional[float], typer.Option("--c2", help="Second basis coefficient")]
InitValueOpt = Annotated[Optional[float], typer.Option("--init-value", help="u(a_min)")]
InitDerivOpt = Annotated[Optional[float], typer.Option("--init-deriv", help="u'(a_min)")]
OutOpt = Annotated[Optional[Path], typer.Option("--out", help="Output file")]
FormatOpt = Annotated[Optional[OutputFormat], typer.Option("--format", help="csv or json")]
Fig1Opt = Annotated[
    bool, typer.Option("--fig1", help="Closed inflationary preset with m^2 = 4 and five lambdas")
]
ConfigOpt = Annotated[Optional[Path], typer.Option("--config", help="YAML run file")]
NegativeOpt = Annotated[
    bool,
    typer.Option("--allow-negative-lambda", help="Admit lambda <= -1 - I(a_max)"),
]


def _overrides(
    gamma: float | None = None,
    kappa: int | None = None,
    cc: float | None = None,
    matter: float | None = None,
    q: float | None = None,
    a_min: float | None = None,
    a_max: float | None = None,
    n: int | None = None,
    lam: list[float] | None = None,
    closed_form: bool = False,
    c1: float | None = None,
    c2: float | None = None,
    init_value: float | None = None,
    init_deriv: float | None = None,
    out: Path | None = None,
    fmt: OutputFormat | None = None,
    allow_negative: bool = False,
) -> dict[str, Any]:
    """Nested dict of the flags that were actually given."""
    given = {"gamma": gamma, "kappa": kappa, "cc": cc, "matter": matter, "q": q}
    model = {key: value for key, value in given.items() if value is not None}
    flat = {
        "a_min": a_min,
        "a_max": a_max,
        "n_points": n,
        "lambdas": lam or None,
        "init_value": init_value,
        "init_deriv": init_deriv,
        "output_path": out,
        "format": fmt,
    }
    data: dict[str, Any] = {key: value for key, value in flat.items() if value is not None}
    if model:
        data["model"] = model
    if closed_form:
        data["closed_form"] = True
    if allow_negative:
        data["allow_negative_lambda"] = True
    if c1 is not None or c2 is not None:
        data["coeffs"] = (c1 if c1 is not None else 1.0, c2 if c2 is not None else 0.0)
    return data


def _write(
    config: RunConfig,
    columns: dict[str, Any],
    path: Path,
    checks: list[CheckResult] | None = None,
) -> Path:
    """CSV with provenance header, or one JSON document holding everything."""
    if config.format is OutputFormat.JSON:
        payload: dict[str, Any] = {
            "config": config.provenance(),
            "columns": {name: [float(v) for v in values] for name, values in columns.items()},
        }
        if checks is not None:
            payload["checks"] = [c.to_dict() for c in checks]
        return write_json(path, payload)
    return write_csv(path, columns, config.provenance())


@app.command()
def solve(
    gamma: GammaOpt = None,
    kappa: KappaOpt = None,
    cc: CcOpt = None,
    matter: MatterOpt = None,
    msq: MsqOpt = None,
    q: QOpt = None,
    a_min: AMinOpt = None,
    a_max: AMaxOpt = None,
    n: NOpt = None,
    closed_form: ClosedOpt = False,
    c1: C1Opt = None,
    c2: C2Opt = None,
    init_value: InitValueOpt = None,
    init_deriv: InitDerivOpt = None,
    out: OutOpt = None,
    fmt: FormatOpt = None,
    config_path: ConfigOpt = None,
) -> None:
    """Solve the Wheeler-DeWitt equation and write A, u, du."""
    config = resolve_config(
        _overrides(
            gamma, kappa, cc, matter, q, a_min, a_max, n, None, closed_form,
            c1, c2, init_value, init_deriv, out, fmt,
        ),
        config_path=config_path,
        msq=msq,
    )
    grid = make_grid(config)
    seed, label = resolve_seed(config, grid)
    columns = {"A": grid.points, "u": seed.values, "du": seed.derivs}
    path = _write(config, columns, config.output_path)
    console.print(f"[green]✓ {label} seed on {len(grid)} points written:[/green] {path}")


def _member_results(config: RunConfig, members: list[Any]) -> list[CheckResult]:
    threshold = config.settings.member_threshold
    return [
        CheckResult(
            f"member residual (lambda={member.lambda_param:g})",
            verify_family_member(config.model, member),
            threshold,
        )
        for member in members
    ]


@app.command()
def family(
    gamma: GammaOpt = None,
    kappa: KappaOpt = None,
    cc: CcOpt = None,
    matter: MatterOpt = None,
    msq: MsqOpt = None,
    q: QOpt = None,
    a_min: AMinOpt = None,
    a_max: AMaxOpt = None,
    n: NOpt = None,
    lam: LamOpt = None,
    closed_form: ClosedOpt = False,
    c1: C1Opt = None,
    c2: C2Opt = None,
    init_value: InitValueOpt = None,
    init_deriv: InitDerivOpt = None,
    out: OutOpt = None,
    fmt: FormatOpt = None,
    fig1: Fig1Opt = False,
    config_path: ConfigOpt = None,
    allow_negative: NegativeOpt = False,
) -> None:
    """Build the isospectral family u^_lambda and V^+_lambda for every --lam."""
    config = resolve_config(
        _overrides(
            gamma, kappa, cc, matter, q, a_min, a_max, n, lam, closed_form,
            c1, c2, init_value, init_deriv, out, fmt, allow_negative,
        ),
        config_path=config_path,
        fig1=fig1,
        msq=msq,
    )
    if not config.lambdas:
        raise ConfigurationError("family needs at least one --lam")
    check_lambdas(config.lambdas, allow_negative=config.allow_negative_lambda)

    grid = make_grid(config)
    seed, label = resolve_seed(config, grid)
    i_gamma = cumulative_integral(config.model, seed, config.settings)
    members = asyncio.run(
        sweep_family(
            config.model, seed, i_gamma, config.lambdas, config.settings,
            allow_negative=config.allow_negative_lambda,
        )
    )

    columns: dict[str, Any] = {"A": grid.points, "u": seed.values, "I_gamma": i_gamma.values}
    for member in members:
        columns[f"u_hat[{member.lambda_param:g}]"] = member.u_hat.values
        columns[f"V_hat[{member.lambda_param:g}]"] = member.v_hat.values

    results = _member_results(config, members)

    path = _write(config, columns, config.output_path, checks=results)
    if config.format is OutputFormat.CSV:
        report = {"checks": [r.to_dict() for r in results], "config": config.provenance()}
        sidecar = write_json(path.with_suffix(".json"), report)
        console.print(f"[dim]Residuals written: {sidecar}[/dim]")
    console.print(
        f"[green]✓ {len(members)} family members over the {label} seed written:[/green] {path}"
    )


@app.command()
def verify(
    gamma: GammaOpt = None,
    kappa: KappaOpt = None,
    cc: CcOpt = None,
    matter: MatterOpt = None,
    msq: MsqOpt = None,
    q: QOpt = None,
    a_min: AMinOpt = None,
    a_max: AMaxOpt = None,
    n: NOpt = None,
    lam: LamOpt = None,
    closed_form: ClosedOpt = False,
    c1: C1Opt = None,
    c2: C2Opt = None,
    init_value: InitValueOpt = None,
    init_deriv: InitDerivOpt = None,
    out: OutOpt = None,
    fig1: Fig1Opt = False,
    config_path: ConfigOpt = None,
    allow_negative: NegativeOpt = False,
) -> None:
    """Run the invariant suite; exit 4 if any check fails."""
    config = resolve_config(
        _overrides(
            gamma, kappa, cc, matter, q, a_min, a_max, n, lam, closed_form,
            c1, c2, init_value, init_deriv, out, None, allow_negative,
        ),
        config_path=config_path,
        fig1=fig1,
        msq=msq,
    )
    check_lambdas(config.lambdas, allow_negative=config.allow_negative_lambda)
    seed, label = resolve_seed(config)

    console.print(f"[dim]Verifying {label} seed on {config.n_points} points...[/dim]")
    suite = VerificationSuite(
        config.model, seed, config.lambdas, config.settings,
        allow_negative=config.allow_negative_lambda, console=console,
    )
    results = asyncio.run(suite.run_all())
    suite.render_summary_table(results)

    report = {"checks": [r.to_dict() for r in results], "config": config.provenance()}
    path = write_json(config.output_path.with_suffix(".json"), report)
    console.print(f"[dim]Report written: {path}[/dim]")

    failed = [r.name for r in results if not r.passed]
    if failed:
        raise VerificationError(f"{len(failed)} check(s) failed: {', '.join(failed)}")


@app.command()
def cases(
    gamma: GammaOpt = None,
    kappa: KappaOpt = None,
    cc: CcOpt = None,
    matter: MatterOpt = None,
    q: QOpt = None,
) -> None:
    """List the closed-form cases and which one the given parameters select."""
    table = Table(title="Closed-form cases")
    table.add_column("Case", style="cyan")
    table.add_column("Requires")
    for case_id, requirement in CASE_REQUIREMENTS.items():
        table.add_row(case_id.value, requirement.description)
    console.print(table)

    if gamma is None:
        return
    try:
        params = ModelParams(
            gamma=gamma,
            kappa=kappa if kappa is not None else 0,
            cc=cc if cc is not None else 0.0,
            matter=matter if matter is not None else 0.0,
            q=q if q is not None else 0.0,
        )
    except ValidationError as err:
        raise ConfigurationError(f"Invalid model parameters: {err}") from err
    match = classify(params)
    if match is None:
        console.print("[yellow]No closed form for these parameters; use the integrator[/yellow]")
    else:
        console.print(f"[green]Matching case:[/green] {match.value}")


def main(argv: list[str] | None = None) -> int:
    """Run the CLI and return its exit status instead of exiting."""
    try:
        result = app(args=argv, standalone_mode=False)
    except UsageFailure as e:
        console.print(f"[red]Usage error: {e}[/red]")
        return EXIT_CONFIG
    except typer.Abort:
        return EXIT_CONFIG
    except WDWError as e:
        console.print(f"[red]{type(e).__name__}: {e.message}[/red]")
        return e.code
    return result if isinstance(result, int) else EXIT_OK


def run() -> None:
    sys.exit(main())

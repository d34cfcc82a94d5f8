"""Command line interface.

Exit codes: 0 success, 1 a verification failed, 2 usage or parse error.
"""

from __future__ import annotations

import sys
from fractions import Fraction

import click

from . import constructions as C
from .errors import GeometryError, ParseError
from .essential import essential_dimension, g_profile
from .fileio import dumps_canonical, load_config, render_report, save_config
from .incidence import (
    is_alpha_degenerate,
    is_essentially_alpha_degenerate,
    rich_profile,
    spanned_flats,
)
from .verify import (
    rich_report,
    verify_beck_constructions,
    verify_degeneracy_implication,
    verify_dim_identities,
    verify_lemma8,
)


class RationalType(click.ParamType):
    name = "rational"

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            return Fraction(str(value))
        except (ValueError, ZeroDivisionError):
            self.fail(f"{value!r} is not a rational like 3 or 3/4", param, ctx)


RATIONAL = RationalType()


def _load(ctx, path):
    try:
        config = load_config(path)
    except ParseError as e:
        raise click.UsageError(f"{path}: {e}", ctx) from None
    max_n = ctx.obj["max_n"]
    if config.n > max_n:
        raise click.UsageError(f"{path}: n={config.n} exceeds --max-n {max_n}", ctx)
    return config


def _emit(text, output):
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _finish(report, output, fmt="json"):
    _emit(render_report(report, fmt), output)
    sys.exit(0 if report.passed else 1)


@click.group()
@click.option("--seed", default=0, show_default=True, help="Seed for randomized generators and suites.")
@click.option("--max-n", default=64, show_default=True, help="Refuse configurations with more points.")
@click.option("--jobs", default=1, show_default=True, help="Worker threads for flat enumeration.")
@click.pass_context
def main(ctx, seed, max_n, jobs):
    """Exact point-flat incidence toolkit."""
    ctx.obj = {"seed": seed, "max_n": max_n, "jobs": jobs}


@main.command()
@click.argument("construction", type=click.Choice(sorted(C.CONSTRUCTIONS)))
@click.option("--n", type=int)
@click.option("--m", type=int)
@click.option("--k", type=int)
@click.option("--d", type=int)
@click.option("-o", "--output", required=True, type=click.Path(dir_okay=False))
@click.pass_context
def gen(ctx, construction, n, m, k, d, output):
    """Write a named construction to a config file."""
    args = {
        "grid": lambda: C.grid(m, d),
        "skew_lines": lambda: C.skew_lines(n),
        "flat_plus_line": lambda: C.flat_plus_line(n, k, d),
        "k_lines": lambda: C.k_lines(n, k, d),
        "planes_through_common_line": lambda: C.planes_through_common_line(n)[0],
        "random_general_position": lambda: C.random_general_position(n, d, ctx.obj["seed"]),
    }
    try:
        config = args[construction]()
    except TypeError:
        raise click.UsageError(f"missing parameters for {construction}", ctx) from None
    except GeometryError as e:
        raise click.UsageError(str(e), ctx) from None
    if config.n > ctx.obj["max_n"]:
        raise click.UsageError(f"n={config.n} exceeds --max-n {ctx.obj['max_n']}", ctx)
    save_config(config, output)


@main.command()
@click.argument("config", type=click.Path(exists=True, dir_okay=False))
@click.option("--k", type=int, required=True)
@click.option("--r", "r_values", type=int, multiple=True)
@click.pass_context
def count(ctx, config, k, r_values):
    """Count spanned k-flats and their richness profile."""
    cfg = _load(ctx, config)
    inv = _spanned(ctx, cfg, k)
    prof = rich_profile(inv, r_values)
    _emit(dumps_canonical({"k": k, "f_k": len(inv), "rich_profile": [list(r) for r in prof.rows]}), None)


def _spanned(ctx, cfg, k):
    try:
        return spanned_flats(cfg, k, workers=ctx.obj["jobs"])
    except GeometryError as e:
        raise click.UsageError(str(e), ctx) from None


@main.command()
@click.argument("config", type=click.Path(exists=True, dir_okay=False))
@click.option("--k", type=int, required=True)
@click.option("--alpha", type=RATIONAL, required=True)
@click.pass_context
def degeneracy(ctx, config, k, alpha):
    """Classify every spanned k-flat as (essentially) alpha-degenerate."""
    cfg = _load(ctx, config)
    inv = _spanned(ctx, cfg, k)
    rows = [
        {
            "flat": f,
            "points": inv.richness(f),
            "alpha_degenerate": is_alpha_degenerate(f, cfg, alpha),
            "essentially_alpha_degenerate": is_essentially_alpha_degenerate(f, cfg, alpha),
        }
        for f in inv
    ]
    _emit(dumps_canonical({"k": k, "alpha": alpha, "flats": rows}), None)


@main.command()
@click.argument("config", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def essdim(ctx, config):
    """Essential dimension with a witness cover."""
    cfg = _load(ctx, config)
    if not cfg.support:
        raise click.UsageError("empty configuration", ctx)
    K, cover = essential_dimension(cfg)
    _emit(dumps_canonical({"K": K, "witness": list(cover.flats),
                           "g_profile": list(g_profile(cfg, K).values)}), None)


@main.command()
@click.argument("suite", type=click.Choice(["dim-identities", "lemma8", "implication", "beck"]))
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--k", type=int)
@click.option("--r", type=int)
@click.option("--n", type=int)
@click.option("--alpha", type=RATIONAL)
@click.option("--trials", type=int, default=None)
@click.option("-o", "--output", type=click.Path(dir_okay=False))
@click.pass_context
def verify(ctx, suite, config_path, k, r, n, alpha, trials, output):
    """Run a verification suite; exit 1 if any case fails."""
    seed = ctx.obj["seed"]

    def need(**vals):
        missing = [name for name, v in vals.items() if v is None]
        if missing:
            raise click.UsageError(f"suite {suite} needs --{', --'.join(missing)}", ctx)

    try:
        if suite == "dim-identities":
            rep = verify_dim_identities(seed=seed, trials=1000 if trials is None else trials)
        elif suite == "lemma8":
            need(config=config_path, k=k, r=r, alpha=alpha)
            rep = verify_lemma8(_load(ctx, config_path), k, r, alpha, workers=ctx.obj["jobs"])
        elif suite == "implication":
            need(config=config_path, k=k, alpha=alpha)
            rep = verify_degeneracy_implication(_load(ctx, config_path), k, alpha,
                                                trials=trials or 0, seed=seed)
        else:
            need(k=k)
            rep = verify_beck_constructions(k, n)
    except GeometryError as e:
        raise click.UsageError(str(e), ctx) from None
    _finish(rep, output)


@main.command()
@click.argument("config", type=click.Path(exists=True, dir_okay=False))
@click.option("--k", type=int, required=True)
@click.option("--r", "r_values", type=int, multiple=True)
@click.option("--alpha", "alphas", type=RATIONAL, multiple=True)
@click.option("--gamma", type=RATIONAL, default="1/4", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False))
@click.pass_context
def report(ctx, config, k, r_values, alphas, gamma, fmt, output):
    """Richness / degeneracy table for spanned k-flats."""
    cfg = _load(ctx, config)
    try:
        rep = rich_report(cfg, k, r_values, alphas, gamma, workers=ctx.obj["jobs"])
    except GeometryError as e:
        raise click.UsageError(str(e), ctx) from None
    _finish(rep, output, fmt)


if __name__ == "__main__":
    main()

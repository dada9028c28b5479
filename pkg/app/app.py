# app/app.py  ·  command-line entry point
#
#   python app/app.py dual corpus/example_zero.pres --max-degree 6
#   python app/app.py betti corpus/fibonacci.pres --power 2 --nmax 4 --format table
#
import functools
import logging
import pathlib
import sys

import click
from pydantic import ValidationError

from utils.logger import get_logger, set_verbosity
from config import (DEFAULT_MAX_DEGREE, DEFAULT_NMAX, DEFAULT_POWER, EXIT_INPUT, RunConfig)
from utils.errors import EngineError
from utils.exactlin import FieldSpec
from utils.presentation import parse_presentation

from commands import betti, common, dual, koszul_check, resolve, verify

log = get_logger(__name__)


# ── shared options ───────────────────────────────────────
def run_options(func):
    """Options every command accepts, collected into a RunConfig by _dispatch."""
    options = [
        click.argument("path", type=click.Path(dir_okay=False, path_type=pathlib.Path)),
        click.option("--max-degree", "max_degree", type=int, default=DEFAULT_MAX_DEGREE, show_default=True,
                     help="Degree cap D for A, A^! and every strand."),
        click.option("--power", type=int, default=DEFAULT_POWER, show_default=True,
                     help="The a in m^a."),
        click.option("--nmax", type=int, default=DEFAULT_NMAX, show_default=True,
                     help="Highest homological degree."),
        click.option("--field", default=None, help="Override the file's field: QQ or 'GF p'."),
        click.option("--format", "fmt", default="json", show_default=True, help="json | table"),
        click.option("--parallel", type=int, default=1, show_default=True,
                     help="Worker threads for independent strands."),
        click.option("--allow-non-koszul", is_flag=True,
                     help="Keep going after a failed certificate; output is diagnostics only."),
        click.option("--out", type=click.Path(dir_okay=False, path_type=pathlib.Path), default=None,
                     help="Write the document here instead of stdout."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _dispatch(module, path: pathlib.Path, out: pathlib.Path | None, **options) -> None:
    try:
        config = RunConfig(**options)
        field = FieldSpec.parse(config.field) if config.field else None
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            click.echo(f"error: cannot read {path}: {exc.strerror}", err=True)
            sys.exit(EXIT_INPUT)
        except UnicodeDecodeError:
            click.echo(f"error: {path} is not UTF-8 text", err=True)
            sys.exit(EXIT_INPUT)
        pres = parse_presentation(text, field)
        log.info("[%s] %s  (hash %s)", module.SCHEMA, path.name, pres.fingerprint()[:12])
        doc, code = module.render(pres, config)
        common.validate(module.SCHEMA, doc)
    except EngineError as exc:
        log.debug("engine error", exc_info=True)
        click.echo(f"error: {exc}", err=True)
        sys.exit(exc.exit_code)
    except ValidationError as exc:
        click.echo(f"error: invalid options: {exc.errors()[0]['msg']}", err=True)
        sys.exit(EXIT_INPUT)

    text = common.dump(doc) if config.fmt == "json" else module.to_text(doc)
    if out is None:
        click.echo(text)
    else:
        out.write_text(text + "\n", encoding="utf-8")
        log.info("[%s] wrote %s", module.SCHEMA, out)
    sys.exit(code)


# ── command group ────────────────────────────────────────
@click.group()
@click.option("-v", "--verbose", "level", flag_value=logging.DEBUG, help="Debug logging.")
@click.option("-q", "--quiet", "level", flag_value=logging.WARNING, help="Warnings and errors only.")
def cli(level):
    """Exact-arithmetic Koszul duality and resolutions of powers of the augmentation ideal."""
    if level is not None:
        set_verbosity(level)


@cli.command("dual")
@run_options
def dual_cmd(path, out, **options):
    """Quadratic dual A^! with its Hilbert function."""
    _dispatch(dual, path, out, **options)


@cli.command("koszul-check")
@run_options
def koszul_check_cmd(path, out, **options):
    """Certify Koszulness up to the degree cap, or report a witness."""
    _dispatch(koszul_check, path, out, **options)


@cli.command("betti")
@run_options
@click.option("--quotient", is_flag=True, help="Also tabulate the Betti numbers of A/m^a.")
def betti_cmd(path, out, **options):
    """Betti numbers of m^a: closed formula against kernel ranks."""
    _dispatch(betti, path, out, **options)


@cli.command("resolve")
@run_options
def resolve_cmd(path, out, **options):
    """Build the linear resolution of m^a and verify it."""
    _dispatch(resolve, path, out, **options)


@cli.command("verify")
@run_options
def verify_cmd(path, out, **options):
    """Run every cross-check in one report."""
    _dispatch(verify, path, out, **options)


if __name__ == "__main__":
    cli()

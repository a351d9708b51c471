"""Command line interface.

Exit codes: 0 on success, 2 when a verification check fails, 1 on usage or
convergence errors. JSON output is deterministic: fields keep their order and
floats are written with 17 significant digits.
"""

from __future__ import annotations

import json
import math
import os
import sys
from dataclasses import dataclass

import click

from .polynomial import EvenPolynomial, parse_potential

EXIT_OK, EXIT_ERROR, EXIT_FAILED = 0, 1, 2
COMMANDS = ("spectrum", "zeros", "qes", "asymptotic", "gscan", "trees", "verify")


class VerificationFailed(Exception):
    pass


# ---------------------------------------------------------------- serialisation

def dumps(obj) -> str:
    """Deterministic JSON with floats at 17 significant digits."""
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return "null"
        return format(obj, ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, complex):
        return dumps([obj.real, obj.imag])
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if hasattr(obj, "item"):  # numpy scalars
        return dumps(obj.item())
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def workers_from_env() -> int:
    raw = os.environ.get("ANHARMONIC_WORKERS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise click.UsageError(f"ANHARMONIC_WORKERS must be an integer, got {raw!r}")


def parse_box(text: str) -> tuple[float, float]:
    """'3x3' -> half-widths (3.0, 3.0)."""
    try:
        a, b = text.lower().split("x")
        box = (float(a), float(b))
    except ValueError:
        raise click.BadParameter(f"box must look like 3x3, got {text!r}")
    if not (box[0] > 0 and box[1] > 0):
        raise click.BadParameter("box half-widths must be positive")
    return box


def parse_qes(text: str) -> tuple[int, int, float]:
    """'m=1,p=0,b=0' -> (1, 0, 0.0)."""
    try:
        fields = dict(item.split("=") for item in text.replace(" ", "").split(","))
        return int(fields["m"]), int(fields["p"]), float(fields["b"])
    except (KeyError, ValueError):
        raise click.BadParameter(f"expected m=<int>,p=<0|1>,b=<float>, got {text!r}")


# ---------------------------------------------------------------- run configuration

@dataclass
class RunConfig:
    command: str
    potential: EvenPolynomial | None = None
    qes: tuple[int, int, float] | None = None
    K: int = 3
    k: int = 0
    box: tuple[float, float] = (3.0, 3.0)
    tol: float = 1e-8
    radius: float | None = None
    output: str | None = None
    fmt: str = "json"
    suite: str | None = None
    b_grid: tuple[float, ...] = ()
    ends: int = 8
    axes: bool = False

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise click.UsageError(f"unknown command {self.command!r}")
        if not self.tol > 0:
            raise click.UsageError("tol must be positive")
        if not (self.box[0] > 0 and self.box[1] > 0):
            raise click.UsageError("box must be positive")
        needs = {"spectrum", "zeros", "asymptotic"}
        if self.command in needs and (self.potential is None) == (self.qes is None):
            raise click.UsageError("give exactly one of --potential and --qes")


def _resolve(config: RunConfig):
    """(potential, QES spec or None)."""
    if config.qes is not None:
        from .qes import QesSpec

        spec = QesSpec(*config.qes)
        return spec.potential, spec
    return config.potential, None


def _emit(config: RunConfig, payload) -> None:
    if config.fmt == "csv":
        text = payload
    else:
        text = dumps(payload) + "\n"
    if config.output:
        with open(config.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def run(config: RunConfig) -> int:
    """Execute one command; raises VerificationFailed for exit code 2."""
    config.validate()
    handler = {
        "spectrum": _spectrum, "zeros": _zeros, "qes": _qes, "asymptotic": _asymptotic,
        "gscan": _gscan, "trees": _trees, "verify": _verify,
    }[config.command]
    payload, ok = handler(config)
    _emit(config, payload)
    if not ok:
        raise VerificationFailed(f"{config.command}: verification failed")
    return EXIT_OK


def _spectrum(c: RunConfig):
    from .spectrum import eigenvalues

    P, _ = _resolve(c)
    pairs = eigenvalues(P, c.K, tol=c.tol, radius=c.radius, workers=workers_from_env())
    return {"potential": P.to_dict(), "eigenpairs": [e.to_dict() for e in pairs]}, True


def _zeros(c: RunConfig):
    from .spectrum import eigenpair
    from .zeros import Box, census

    P, _ = _resolve(c)
    e = eigenpair(P, c.k, tol=min(c.tol, 1e-10), radius=c.radius)
    z = census(P, e.lam, e.parity, Box(*c.box), tol=max(c.tol, 1e-6), k=c.k)
    return {"potential": P.to_dict(), "census": z.to_dict()}, z.consistent and z.offaxis_count == 0


def _qes(c: RunConfig):
    from .qes import QesSpec, cross_check, qes_solve

    if c.qes is None:
        raise click.UsageError("qes needs --qes m=..,p=..,b=..")
    spec = QesSpec(*c.qes)
    sols = qes_solve(spec)
    checks = [cross_check(spec, s.k, strict=False) for s in sols]
    return {"solutions": [s.to_dict() for s in sols],
            "cross_checks": [x.to_dict() for x in checks]}, all(x.ok for x in checks)


def _asymptotic(c: RunConfig):
    from .asymptotics import table
    from .spectrum import eigenpair

    P, spec = _resolve(c)
    if spec is not None:
        from .qes import qes_solve

        sol = qes_solve(spec)[c.k]
        lam, parity, index = sol.lam, spec.parity, sol.index
    else:
        e = eigenpair(P, c.k, tol=1e-12)
        lam, parity, index = e.lam, e.parity, e.k
    t = table(P, lam, parity, R=c.radius)
    defects = t.symmetry_defects()
    out = {"potential": P.to_dict(), "index": index, "lambda": lam, "table": t.to_dict(),
           "defects": defects}
    return out, max(defects.values()) < 1e-6


def _gscan(c: RunConfig):
    from .asymptotics import surjectivity_scan
    from .verify import arg_interval

    if c.qes is None:
        raise click.UsageError("gscan needs --qes m=..,p=.. (b is scanned)")
    m, p, _ = c.qes
    scan = surjectivity_scan(c.k, m, p, c.b_grid)
    lo, hi = arg_interval(p)
    lines = ["b,g"] + [f"{format(b, '.17g')},{format(v, '.17g')}" for b, v in scan.samples]
    ok = all(lo < v < hi for _, v in scan.samples)
    if c.fmt == "csv":
        return "\n".join(lines) + "\n", ok
    return {"m": m, "p": p, "k": c.k, "interval": [lo, hi], "covered": list(scan.covered),
            "max_jump": scan.max_jump, "samples": [list(s) for s in scan.samples]}, ok


def _trees(c: RunConfig):
    from .trees import contour, double_symmetric_trees, canonical_form

    ts = double_symmetric_trees(c.ends, c.axes)
    return {"ends": c.ends, "ends_on_axes": c.axes, "count": len(ts),
            "trees": [{"form": canonical_form(t), "contour": contour(t)} for t in ts]}, True


def _verify(c: RunConfig):
    from .verify import verify_suite

    name = c.suite
    if name == "theorem1":
        if c.potential is None:
            raise click.UsageError("theorem1 needs --potential")
        rep = verify_suite(name, P=c.potential, K=c.K, box=c.box, tol=max(c.tol, 1e-6),
                           workers=workers_from_env())
    elif name == "theorem2":
        if c.qes is None:
            raise click.UsageError("theorem2 needs --qes")
        m, p, b = c.qes
        rep = verify_suite(name, m=m, p=p, b=b, box=c.box)
    elif name == "corollary":
        rep = verify_suite(name, m_max=c.K)
    else:
        rep = verify_suite(name)
    return rep.to_dict(), rep.ok


# ---------------------------------------------------------------- click front end

def _potential(ctx, param, value):
    if value is None:
        return None
    try:
        return parse_potential(value)
    except ValueError as exc:
        raise click.BadParameter(str(exc))


def _qes_opt(ctx, param, value):
    return None if value is None else parse_qes(value)


def _box_opt(ctx, param, value):
    return parse_box(value)


potential_opt = click.option("--potential", callback=_potential, help="e.g. 'z^6-7z^2'")
qes_opt = click.option("--qes", "qes", callback=_qes_opt, help="e.g. 'm=1,p=0,b=0'")
box_opt = click.option("--box", default="3x3", callback=_box_opt, show_default=True,
                       help="half-widths XxY")
out_opt = click.option("--out", "output", type=click.Path(dir_okay=False), default=None,
                       help="write the result here instead of standard output")


@click.group()
@click.version_option(package_name="anharmonic")
def cli():
    """Eigenvalues, zeros and asymptotic values of even polynomial oscillators."""


@cli.command()
@potential_opt
@qes_opt
@click.option("--K", "K", type=int, default=3, show_default=True)
@click.option("--tol", type=float, default=1e-8, show_default=True)
@click.option("--radius", type=float, default=None)
@out_opt
def spectrum(potential, qes, K, tol, radius, output):
    """Eigenvalues lambda_0 .. lambda_K."""
    return run(RunConfig("spectrum", potential, qes, K=K, tol=tol, radius=radius, output=output))


@cli.command()
@potential_opt
@qes_opt
@click.option("--k", "k", type=int, default=0, show_default=True)
@box_opt
@click.option("--tol", type=float, default=1e-6, show_default=True)
@click.option("--radius", type=float, default=None)
@out_opt
def zeros(potential, qes, k, box, tol, radius, output):
    """Zero census of the k-th eigenfunction."""
    return run(RunConfig("zeros", potential, qes, k=k, box=box, tol=tol, radius=radius,
                         output=output))


@cli.command()
@qes_opt
@out_opt
def qes(qes, output):
    """Closed-form QES eigenpairs with numerical cross-checks."""
    return run(RunConfig("qes", qes=qes, output=output))


@cli.command()
@potential_opt
@qes_opt
@click.option("--k", "k", type=int, default=0, show_default=True)
@click.option("--radius", type=float, default=None)
@out_opt
def asymptotic(potential, qes, k, radius, output):
    """Asymptotic values of y / y1 in all sectors."""
    return run(RunConfig("asymptotic", potential, qes, k=k, radius=radius, output=output))


@cli.command()
@qes_opt
@click.option("--k", "k", type=int, default=0, show_default=True)
@click.option("--b-min", type=float, default=-3.0, show_default=True)
@click.option("--b-max", type=float, default=3.0, show_default=True)
@click.option("--b-step", type=float, default=0.5, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
              show_default=True)
@out_opt
def gscan(qes, k, b_min, b_max, b_step, fmt, output):
    """Sample g(b) = Arg a_1 along a grid of b values."""
    if not b_step > 0 or b_max < b_min:
        raise click.UsageError("need b-step > 0 and b-max >= b-min")
    n = int(round((b_max - b_min) / b_step))
    grid = tuple(b_min + i * b_step for i in range(n + 1))
    return run(RunConfig("gscan", qes=qes, k=k, b_grid=grid, fmt=fmt, output=output))


@cli.group()
def trees():
    """Symmetric embedded trees."""


@trees.command("enumerate")
@click.option("--ends", type=int, required=True)
@click.option("--axes", is_flag=True, help="put an end on the positive real axis")
@out_opt
def trees_enumerate(ends, axes, output):
    """Catalogue of trees invariant under both reflections."""
    if ends < 2 or ends % 2:
        raise click.UsageError("--ends must be even and at least 2")
    return run(RunConfig("trees", ends=ends, axes=axes, output=output))


@trees.command("validate")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--d", "d", type=int, required=True)
@out_opt
def trees_validate(path, d, output):
    """Check a labelled tree given as JSON {ends, edges, kinds, labels}."""
    from .trees import EmbeddedTree, InvalidTree, check_proposition1

    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    try:
        t = EmbeddedTree.build(data["ends"], data["edges"], data.get("kinds"),
                               data.get("labels"), data.get("offset", -1))
        rep = check_proposition1(t, d)
    except (KeyError, InvalidTree) as exc:
        raise click.UsageError(f"bad tree file: {exc}")
    cfg = RunConfig("trees", output=output)
    _emit(cfg, rep.to_dict())
    if not rep.ok:
        raise VerificationFailed("tree violates " + ", ".join(rep.violated))
    return EXIT_OK


@cli.command()
@click.argument("suite", type=click.Choice(["theorem1", "theorem2", "corollary", "trees"]))
@potential_opt
@qes_opt
@click.option("--K", "K", type=int, default=3, show_default=True)
@box_opt
@click.option("--tol", type=float, default=1e-6, show_default=True)
@out_opt
def verify(suite, potential, qes, K, box, tol, output):
    """Run a verification suite and report each check."""
    return run(RunConfig("verify", potential, qes, K=K, box=box, tol=tol, output=output,
                         suite=suite))


def main(argv=None) -> int:
    from .spectrum import ConvergenceFailure

    try:
        rv = cli.main(args=argv, prog_name="anharmonic", standalone_mode=False)
    except VerificationFailed as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_FAILED
    except click.ClickException as exc:
        exc.show()
        return EXIT_ERROR
    except click.exceptions.Abort:
        return EXIT_ERROR
    except (ConvergenceFailure, ArithmeticError, ValueError) as exc:
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        return EXIT_ERROR
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

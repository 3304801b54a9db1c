"""Command-line front end: ``superpoly {dim,algebra,verify,classify}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass
from typing import Callable

from .algebras import clifford, ground_field, sergeev, split_algebra
from .centralizer import (
    double_centralizer,
    qn_identification,
    schur_I,
    schur_I_commutant,
    schur_I_dim,
    schur_II,
    schur_II_commutant,
    schur_II_dim,
)
from .classify import labels_type_I, labels_type_II
from .duality import (
    cosalg_duality_check,
    double_dual_algebra_check,
    dual_coalgebra,
    gamma_sym_pairing,
    tensor_dual_check,
)
from .gammacat import surjectivity_report
from .modules import RIGHT, trivial_module, u1_module
from .scalars import Field
from .superlinear import make_space
from .symaction import VerificationError, exponential_decomposition, gamma_dim

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
BOUND = 4
SUITES = ("surjectivity", "sergeev", "duality", "cosalg", "exponential")
TARGETS = ("S", "Q", "W", "C")


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    p: int = 0
    type: str = "I"
    m: int = 1
    n: int = 1
    d: int = 2
    out: str | None = None
    format: str = "json"
    force_large: bool = False
    suite: str | None = None
    target: str | None = None
    what: str | None = None

    @property
    def field(self) -> Field:
        return Field(self.p)

    def check_bounds(self) -> list[str]:
        """Validate sizes; returns warnings for overridden limits."""
        for name in ("m", "n", "d"):
            if getattr(self, name) < 0:
                raise UsageError(f"--{name} must be non-negative")
        big = [name for name in ("m", "n", "d") if getattr(self, name) > BOUND]
        if big and not self.force_large:
            raise UsageError(f"{', '.join('--' + b for b in big)} above {BOUND}; pass --force-large to override")
        if not big:
            return []
        if self.type == "I":
            size = (self.m + self.n) ** self.d
        else:
            size = (2 * self.n) ** self.d
        return [f"warning: tensor space has dimension {size}; commutant systems scale with its square"]


# commands


def cmd_dim(cfg: RunConfig) -> tuple[dict, bool]:
    f = cfg.field
    if cfg.type == "I":
        com = schur_I_commutant(cfg.m, cfg.n, cfg.d, f)
        closed = schur_I_dim(cfg.m, cfg.n, cfg.d)
        out = {"algebra": "S", "m": cfg.m, "n": cfg.n}
    else:
        com = schur_II_commutant(cfg.n, cfg.d, f)
        closed = schur_II_dim(cfg.n, cfg.d)
        out = {"algebra": "Q", "n": cfg.n}
    ok = com.dim == closed
    out.update(d=cfg.d, field=f.name, dim=com.dim, sdim=list(com.sdim), closed_form=closed, match=ok)
    return out, ok


def cmd_algebra(cfg: RunConfig) -> tuple[dict, bool]:
    f = cfg.field
    if cfg.target == "S":
        alg = schur_I(cfg.m, cfg.n, cfg.d, f)
    elif cfg.target == "Q":
        alg = schur_II(cfg.n, cfg.d, f)
    elif cfg.target == "W":
        if cfg.d < 1:
            raise UsageError("W(d) needs d >= 1")
        alg = sergeev(cfg.d, f)
    else:
        alg = clifford(cfg.d, f)
    return alg.to_json(), True


def _check(name: str, passed: bool, **details) -> dict:
    return {**details, "check": name, "passed": bool(passed)}


def _drop_passed(data: dict) -> dict:
    return {k: v for k, v in data.items() if k != "passed"}


def _surjectivity(cfg: RunConfig) -> list[dict]:
    f = cfg.field
    if cfg.type == "I":
        V = trivial_module(make_space(f, cfg.m, cfg.n))
        P = trivial_module(make_space(f, cfg.d, cfg.d))
        label = f"k^{cfg.m}|{cfg.n} via k^{cfg.d}|{cfg.d}"
    else:
        V = u1_module(cfg.n, RIGHT, f)
        P = u1_module(cfg.d, RIGHT, f)
        label = f"U(1)^{cfg.n} via U(1)^{cfg.d}"
    rep = surjectivity_report(V, P, V, cfg.d)
    return [_check(f"surjectivity {label}, d={cfg.d}", rep.surjective and rep.all_in_target, **rep.to_json())]


def _sergeev(cfg: RunConfig) -> list[dict]:
    f = cfg.field
    rep = double_centralizer(cfg.n, cfg.d, f)
    out = [_check(f"double centralizer n={cfg.n}, d={cfg.d}", rep.passed, **_drop_passed(rep.to_json()))]
    qn = qn_identification(cfg.n, f)
    out.append(_check(f"End over C(1) of U(1)^{cfg.n}", qn.passed, **asdict(qn)))
    return out


def _duality(cfg: RunConfig) -> list[dict]:
    f = cfg.field
    what = [cfg.what] if cfg.what else ["pairing", "cosalg", "doubledual"]
    out = []
    if "pairing" in what:
        pr = gamma_sym_pairing(make_space(f, cfg.m, cfg.n), cfg.d)
        out.append(_check(f"Γ/S pairing k^{cfg.m}|{cfg.n}, d={cfg.d}", pr.nondegenerate, rank=pr.rank, dim=pr.left.dim))
    if "cosalg" in what:
        out.extend(_cosalg_checks(f, cfg.d, tensor=False))
    if "doubledual" in what:
        for B in (clifford(1, f), sergeev(2, f)):
            rep = double_dual_algebra_check(B)
            out.append(_check(f"double dual {B.name}", rep.isomorphism, **rep.to_json()))
    return out


def _cosalg_checks(f: Field, d: int, tensor: bool) -> list[dict]:
    out = []
    for B in (ground_field(f), split_algebra(f), clifford(1, f)):
        rep = cosalg_duality_check(B, d)
        out.append(_check(f"S^d dual vs Γ^d for {B.name}, d={d}", rep.passed, **_drop_passed(rep.to_json())))
    if tensor and d >= 1:
        rep = tensor_dual_check(dual_coalgebra(clifford(1, f)), d)
        out.append(_check(f"tensor power of C(1) dual, d={d}", rep.isomorphism, **asdict(rep)))
    return out


def _cosalg(cfg: RunConfig) -> list[dict]:
    return _cosalg_checks(cfg.field, cfg.d, tensor=True)


def _exponential(cfg: RunConfig) -> list[dict]:
    f = cfg.field
    M, N = make_space(f, cfg.m, cfg.n), make_space(f, cfg.n, cfg.m)
    try:
        dec = exponential_decomposition(M, N, cfg.d)
    except (VerificationError, ValueError) as exc:
        return [_check("exponential property", False, error=str(exc))]
    total = sum(b for _, b in dec.blocks)
    expected = gamma_dim(cfg.m + cfg.n, cfg.m + cfg.n, cfg.d)
    return [
        _check(
            f"exponential property k^{cfg.m}|{cfg.n} ⊕ k^{cfg.n}|{cfg.m}, d={cfg.d}",
            total == dec.gamma_sum.dim == expected,
            blocks=[list(b) for b in dec.blocks],
            dim=dec.gamma_sum.dim,
        )
    ]


SUITE_RUNNERS: dict[str, Callable[[RunConfig], list[dict]]] = {
    "surjectivity": _surjectivity,
    "sergeev": _sergeev,
    "duality": _duality,
    "cosalg": _cosalg,
    "exponential": _exponential,
}


def cmd_verify(cfg: RunConfig) -> tuple[dict, bool]:
    if cfg.suite not in SUITE_RUNNERS:
        raise UsageError(f"unknown suite {cfg.suite!r}")
    checks = SUITE_RUNNERS[cfg.suite](cfg)
    failures = sum(not c["passed"] for c in checks)
    return {"suite": cfg.suite, "field": cfg.field.name, "checks": checks, "failures": failures}, failures == 0


def cmd_classify(cfg: RunConfig) -> tuple[dict, bool]:
    if cfg.type == "I":
        labels = [[str(lam), str(mu)] for lam, mu in labels_type_I(cfg.d, cfg.p)]
    else:
        labels = [str(lam) for lam in labels_type_II(cfg.d, cfg.p)]
    return {"type": cfg.type, "d": cfg.d, "p": cfg.p, "count": len(labels), "labels": labels}, True


COMMANDS = {"dim": cmd_dim, "algebra": cmd_algebra, "verify": cmd_verify, "classify": cmd_classify}


# output


def _scalar(x) -> str:
    if isinstance(x, (list, tuple)):
        return " ".join(_scalar(y) for y in x)
    if isinstance(x, dict):
        return json.dumps(x, sort_keys=True, ensure_ascii=False)
    return str(x)


def render(result: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if "checks" in result:
            w.writerow(["check", "passed"])
            w.writerows([c["check"], c["passed"]] for c in result["checks"])
        elif "constants" in result:
            w.writerow(["i", "j", "k", "c"])
            w.writerows(result["constants"])
        elif "labels" in result:
            w.writerow(["index", "label"])
            w.writerows([i, _scalar(lab)] for i, lab in enumerate(result["labels"]))
        else:
            w.writerow(["key", "value"])
            w.writerows([k, _scalar(result[k])] for k in sorted(result))
        return buf.getvalue()
    lines = []
    if "checks" in result:
        for c in result["checks"]:
            lines.append(f"[{'PASS' if c['passed'] else 'FAIL'}] {c['check']}")
        lines.append(f"{result['failures']} failure(s)")
    elif "labels" in result:
        lines.append(f"{result['count']} labels")
        lines.extend(f"  {_scalar(lab)}" for lab in result["labels"])
    else:
        width = max(map(len, result))
        lines.extend(f"{k:<{width}}  {_scalar(result[k])}" for k in sorted(result))
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", "--B", dest="type", choices=("I", "II"), default="I")
    common.add_argument("--m", type=int, default=1)
    common.add_argument("--n", type=int, default=1)
    common.add_argument("--d", type=int, default=2)
    common.add_argument("--p", type=int, default=0, help="field characteristic; 0 for the rationals")
    common.add_argument("--out", help="write output to this file")
    common.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    common.add_argument("--force-large", action="store_true", help=f"lift the m, n, d <= {BOUND} bounds")

    parser = argparse.ArgumentParser(prog="superpoly", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("dim", parents=[common], help="dimension of S(m|n,d) or Q(n,d)")
    alg = sub.add_parser("algebra", parents=[common], help="structure constants as JSON")
    alg.add_argument("target", choices=TARGETS)
    ver = sub.add_parser("verify", parents=[common], help="run a verification suite")
    ver.add_argument("suite", choices=SUITES)
    ver.add_argument("--what", choices=("pairing", "cosalg", "doubledual"))
    sub.add_parser("classify", parents=[common], help="labels of simple objects")
    return parser


def parse_config(argv: list[str] | None = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    return RunConfig(
        command=ns.command,
        p=ns.p,
        type=ns.type,
        m=ns.m,
        n=ns.n,
        d=ns.d,
        out=ns.out,
        format=ns.format,
        force_large=ns.force_large,
        suite=getattr(ns, "suite", None),
        target=getattr(ns, "target", None),
        what=getattr(ns, "what", None),
    )


def run(cfg: RunConfig) -> tuple[str, int]:
    """Execute a config; returns rendered output and exit code."""
    result, ok = COMMANDS[cfg.command](cfg)
    return render(result, cfg.format), EXIT_OK if ok else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    cfg = parse_config(argv)
    try:
        cfg.field
        for w in cfg.check_bounds():
            print(w, file=sys.stderr)
        text, code = run(cfg)
    except ValueError as exc:
        print(f"superpoly: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.out:
        try:
            with open(cfg.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"superpoly: cannot write {cfg.out}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""
Command-line front end.

Subcommands::

    lhi eval    --kind K --nu 0 --mu 0 --s 1 [--oracle]
    lhi verify  [--grid FILE] [--tol 1e-8] [--format json|csv] [--out FILE]
    lhi errata  [--entry ID] [--full] [--format json|csv] [--out FILE]
    lhi ilhi    --kind J --nu 0 --mu 0 --T 40 --s 1 [--limit]

Exit status: 0 when everything passes, 1 when a check fails, 2 on a usage
or domain error.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import errata
from .errors import LHIError
from .quadrature import generic_lhs, ilhi, lt_oracle
from .special import BesselKind
from .transforms import (IdentityId, TRIG_IDENTITIES, closed_form, converges,
                         laplace_transform, rhs_trig, s_identity_for, transform_exists)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

#: Below this |oracle| the pass test is absolute, with floor ABS_FLOOR.
NEAR_ZERO = 1e-10
ABS_FLOOR = 1e-12

#: The oracle is always asked for this much more accuracy than --tol.
ORACLE_MARGIN = 100.0

DEFAULT_NU = (-0.4, 0.0, 0.7, 1.5, 3.2)
DEFAULT_MU = (-0.3, 0.0, 0.5, 1.0, 2.25)
DEFAULT_THETA = (0.3, 0.8, 1.2)
DEFAULT_XI = (0.2, 0.7, 1.5)
DEFAULT_S = {
    BesselKind.J: (0.5, 1.0, 2.0),
    BesselKind.Y: (0.5, 1.0, 2.0),
    BesselKind.I: (1.2, 2.0, 5.0),
    BesselKind.K: (-0.5, 0.3, 1.0, 2.0),
}

ROW_FIELDS = ("identity", "nu", "mu", "point_kind", "point", "closed_form",
              "oracle", "abs_err", "rel_err", "pass", "evaluations")

_IDENT_ORDER = {ident.value: i for i, ident in enumerate(IdentityId)}
_IDENT_ORDER["L_Y"] = len(_IDENT_ORDER)


class UsageError(Exception):
    pass


def fmt(x):
    """Fixed 17-significant-digit rendering used in every report."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, ".17g")


# -- verification grid ------------------------------------------------------

@dataclass(frozen=True)
class Task:
    """One grid row: an identity label and its (nu, mu, point)."""

    identity: str
    nu: float
    mu: float
    point_kind: str
    point: float

    @property
    def kind(self):
        if self.identity == "L_Y":
            return BesselKind.Y
        return IdentityId(self.identity).kind

    def sort_key(self):
        return (_IDENT_ORDER[self.identity], self.nu, self.mu, self.point_kind, self.point)

    def valid(self):
        if not converges(self.kind, self.nu, self.mu):
            return False
        if self.point_kind == "s":
            return transform_exists(self.kind, self.point)
        return True


def _s_label(kind, s):
    if kind is BesselKind.Y:
        return "L_Y"
    return s_identity_for(kind, s).value


def tasks_for(nu, mu, point_kind, point, identity=None):
    """Grid rows for one (nu, mu, point) entry. Y at a Laplace point is "L_Y"."""
    if identity is not None:
        return [Task(str(identity), nu, mu, point_kind, point)]
    if point_kind == "theta":
        idents = [IdentityId.T1_J, IdentityId.T1_Y]
        return [Task(i.value, nu, mu, point_kind, point) for i in idents]
    if point_kind == "xi":
        return [Task(i.value, nu, mu, point_kind, point)
                for i in TRIG_IDENTITIES if i.point_kind == "xi"]
    if point_kind == "s":
        return [Task(_s_label(k, point), nu, mu, "s", point)
                for k in (BesselKind.J, BesselKind.Y, BesselKind.I, BesselKind.K)
                if transform_exists(k, point)]
    raise UsageError(f"unknown point_kind {point_kind!r}")


def default_tasks():
    tasks = []
    for nu, mu in itertools.product(DEFAULT_NU, DEFAULT_MU):
        for th in DEFAULT_THETA:
            tasks += tasks_for(nu, mu, "theta", th)
        for xi in DEFAULT_XI:
            tasks += tasks_for(nu, mu, "xi", xi)
        for kind, points in DEFAULT_S.items():
            for s in points:
                tasks.append(Task(_s_label(kind, s), nu, mu, "s", s))
    return tasks


def load_grid(path):
    """Tasks from a JSON array of {nu, mu, point_kind, point[, identity]}."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read grid file {path}: {exc}") from None
    if not isinstance(data, list):
        raise UsageError("grid file must hold a JSON array")
    tasks = []
    for entry in data:
        try:
            nu, mu = float(entry["nu"]), float(entry["mu"])
            kind, point = str(entry["point_kind"]), float(entry["point"])
        except (KeyError, TypeError, ValueError):
            raise UsageError(f"bad grid entry {entry!r}") from None
        ident = entry.get("identity")
        if ident is not None and ident != "L_Y" and ident not in IdentityId.__members__:
            raise UsageError(f"unknown identity {ident!r}")
        tasks += tasks_for(nu, mu, kind, point, ident)
    return tasks


def _closed_value(task):
    if task.identity == "L_Y":
        return laplace_transform(BesselKind.Y, task.nu, task.mu, task.point)
    return closed_form(task.identity, task.nu, task.mu, task.point)


def _oracle(task, tol):
    if task.identity == "L_Y":
        return lt_oracle(BesselKind.Y, task.nu, task.mu, task.point, tol)
    return generic_lhs(task.identity, task.nu, task.mu, task.point, tol)


def judge(closed, oracle, tol):
    """(abs_err, rel_err, pass) under the near-zero rule."""
    abs_err = abs(closed - oracle)
    rel_err = abs_err / abs(oracle) if oracle != 0 else math.inf
    if abs(oracle) < NEAR_ZERO:
        return abs_err, rel_err, abs_err <= ABS_FLOOR
    return abs_err, rel_err, rel_err <= tol


def run_task(task, tol):
    oracle_tol = max(1e-12, tol / ORACLE_MARGIN)
    try:
        cf = _closed_value(task)
        q = _oracle(task, oracle_tol)
    except LHIError as exc:
        return dict(identity=task.identity, nu=task.nu, mu=task.mu,
                    point_kind=task.point_kind, point=task.point,
                    closed_form=math.nan, oracle=math.nan, abs_err=math.nan,
                    rel_err=math.nan, evaluations=0, error=str(exc), **{"pass": False})
    abs_err, rel_err, ok = judge(cf, q.value, tol)
    return {"identity": task.identity, "nu": task.nu, "mu": task.mu,
            "point_kind": task.point_kind, "point": task.point,
            "closed_form": cf, "oracle": q.value, "abs_err": abs_err,
            "rel_err": rel_err, "pass": ok, "evaluations": q.evaluations}


def run_grid(tasks, tol, jobs=1):
    """Evaluate the valid tasks; returns (sorted rows, number skipped)."""
    todo = sorted({t for t in tasks if t.valid()}, key=Task.sort_key)
    skipped = len(tasks) - sum(1 for t in tasks if t.valid())
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(lambda t: run_task(t, tol), todo))
    else:
        rows = [run_task(t, tol) for t in todo]
    return rows, skipped


# -- report writers ---------------------------------------------------------

def rows_to_json(rows, fields=ROW_FIELDS):
    lines = []
    for row in rows:
        body = ", ".join(f"{json.dumps(k)}: {_json_value(row[k])}" for k in fields)
        lines.append("  {" + body + "}")
    return "[\n" + ",\n".join(lines) + "\n]\n" if lines else "[]\n"


def _json_value(v):
    if v is None:
        return "null"
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    return fmt(v)


def rows_to_csv(rows, fields=ROW_FIELDS):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow([v if isinstance(v, str) else ("" if v is None else fmt(v))
                         for v in (row[k] for k in fields)])
    return buf.getvalue()


def emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def render(rows, form, fields=ROW_FIELDS):
    return rows_to_csv(rows, fields) if form == "csv" else rows_to_json(rows, fields)


# -- subcommands ------------------------------------------------------------

def _point(args):
    given = [(k, getattr(args, k)) for k in ("s", "theta", "xi") if getattr(args, k) is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --s, --theta, --xi")
    return given[0]


def _eval_identity(kind, point_kind, explicit):
    if explicit:
        try:
            ident = IdentityId(explicit)
        except ValueError:
            raise UsageError(f"unknown identity {explicit!r}") from None
        if ident.point_kind != point_kind:
            raise UsageError(f"{ident.value} is stated in {ident.point_kind}, not {point_kind}")
        return ident
    if point_kind == "theta":
        if kind not in (BesselKind.J, BesselKind.Y):
            raise UsageError("--theta applies to kinds J and Y")
        return IdentityId.T1_J if kind is BesselKind.J else IdentityId.T1_Y
    if kind not in (BesselKind.I, BesselKind.K, BesselKind.Kh):
        raise UsageError("--xi applies to kinds I, K and Kh")
    return IdentityId.T1_I if kind is BesselKind.I else IdentityId.T1_K


def cmd_eval(args):
    kind = BesselKind.parse(args.kind)
    point_kind, point = _point(args)
    if point_kind == "s":
        label = "L_" + kind.value
        value = laplace_transform(kind, args.nu, args.mu, point)
    else:
        ident = _eval_identity(kind, point_kind, args.identity)
        label = ident.value
        value = rhs_trig(ident, args.nu, args.mu, point)
        if kind is BesselKind.Kh:
            value *= 2.0 / math.pi
    row = {"identity": label, "nu": args.nu, "mu": args.mu, "point_kind": point_kind,
           "point": point, "closed_form": value}
    fields = ["identity", "nu", "mu", "point_kind", "point", "closed_form"]
    status = EXIT_OK
    if args.oracle:
        if point_kind == "s":
            q = lt_oracle(kind, args.nu, args.mu, point, max(1e-12, args.tol / ORACLE_MARGIN))
        else:
            q = generic_lhs(label, args.nu, args.mu, point, max(1e-12, args.tol / ORACLE_MARGIN))
            if kind is BesselKind.Kh:
                q = q.scaled(2.0 / math.pi)
        abs_err, rel_err, ok = judge(value, q.value, args.tol)
        row.update(oracle=q.value, abs_err=abs_err, rel_err=rel_err, evaluations=q.evaluations)
        row["pass"] = ok
        fields += ["oracle", "abs_err", "rel_err", "pass", "evaluations"]
        status = EXIT_OK if ok else EXIT_FAIL
    if args.format == "text":
        text = f"{label}({args.nu:g}, {args.mu:g}; {point_kind}={point:g})\n"
        text += f"closed_form  {fmt(value)}\n"
        if args.oracle:
            text += (f"oracle       {fmt(row['oracle'])}\n"
                     f"rel_err      {fmt(row['rel_err'])}\n")
    else:
        text = render([row], args.format, fields)
    emit(text, args.out)
    return status


def cmd_verify(args):
    tasks = load_grid(args.grid) if args.grid else default_tasks()
    rows, skipped = run_grid(tasks, args.tol, args.jobs)
    emit(render(rows, args.format), args.out)
    failed = sum(1 for r in rows if not r["pass"])
    print(f"verify: {len(rows) - failed} passed, {failed} failed, {skipped} skipped "
          f"(tol {fmt(args.tol)})", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


ERRATA_FIELDS = ("label", "source", "entry_id", "identity", "mode", "nu", "mu", "point",
                 "oracle", "wrong_value", "corrected_value", "wrong_rel_err",
                 "corrected_rel_err", "verdict")


def _errata_csv_rows(rows):
    out = []
    for r in rows:
        r = dict(r)
        for key in ("wrong_value", "corrected_value"):
            re_, im_ = r.pop(key)
            r[key + "_re"], r[key + "_im"] = re_, im_
        out.append(r)
    return out


def cmd_errata(args):
    if args.entry:
        cases = errata.find_cases(args.entry)
        if not cases:
            raise UsageError(f"no erratum with entry id {args.entry!r}")
    else:
        cases = errata.builtin_cases()
    records = errata.audit_all(cases, full=args.full)
    rows = [r.as_row() for r in records]
    if args.format == "csv":
        fields = [f for f in ERRATA_FIELDS if f not in ("wrong_value", "corrected_value")]
        fields[9:9] = ["wrong_value_re", "wrong_value_im",
                       "corrected_value_re", "corrected_value_im"]
        text = rows_to_csv(_errata_csv_rows(rows), fields)
    else:
        text = rows_to_json(rows, ERRATA_FIELDS + ("detail",))
    emit(text, args.out)
    bad = sum(1 for r in records if r.verdict is not errata.Verdict.Confirmed)
    print(f"errata: {len(records) - bad} confirmed, {bad} inconclusive", file=sys.stderr)
    return EXIT_FAIL if bad else EXIT_OK


def cmd_ilhi(args):
    kind = BesselKind.parse(args.kind)
    r = ilhi(kind, args.nu, args.mu, args.T, args.s)
    lines = [f"Ce({kind.value}; {args.nu:g}, {args.mu:g}; T={args.T:g}, s={args.s:g})",
             f"value           {fmt(r.value)}",
             f"error_estimate  {fmt(r.error_estimate)}",
             f"evaluations     {r.evaluations}"]
    status = EXIT_OK
    if args.limit:
        limit = laplace_transform(kind, args.nu, args.mu, args.s)
        gap = abs(r.value - limit)
        lines += [f"limit           {fmt(limit)}", f"gap             {fmt(gap)}"]
    emit("\n".join(lines) + "\n", args.out)
    return status


def build_parser():
    p = argparse.ArgumentParser(
        prog="lhi", description="Laplace transforms of Bessel functions: closed forms, "
        "quadrature checks and table errata.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, default_format="json", formats=("json", "csv")):
        sp.add_argument("--tol", type=float, default=1e-8, help="relative tolerance (default 1e-8)")
        sp.add_argument("--format", choices=formats, default=default_format)
        sp.add_argument("--out", help="write the report to this file")

    e = sub.add_parser("eval", help="evaluate one closed form")
    e.add_argument("--kind", required=True, choices=[k.value for k in BesselKind])
    e.add_argument("--nu", type=float, required=True)
    e.add_argument("--mu", type=float, required=True)
    e.add_argument("--s", type=float)
    e.add_argument("--theta", type=float)
    e.add_argument("--xi", type=float)
    e.add_argument("--identity", help="e.g. T1_K2 or T2_Kp for the xi forms of K")
    e.add_argument("--oracle", action="store_true", help="also integrate numerically")
    common(e, "text", ("text", "json", "csv"))
    e.set_defaults(func=cmd_eval)

    v = sub.add_parser("verify", help="check every identity against quadrature")
    v.add_argument("--grid", help="JSON array of {nu, mu, point_kind, point}")
    v.add_argument("--jobs", type=int, default=1, help="worker threads")
    common(v)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("errata", help="audit the table errata")
    r.add_argument("--entry", help="audit one entry, e.g. '6.628(5)'")
    r.add_argument("--full", action="store_true", help="audit over the generic grid")
    common(r)
    r.set_defaults(func=cmd_errata)

    i = sub.add_parser("ilhi", help="incomplete integral over [0, T]")
    i.add_argument("--kind", required=True, choices=[k.value for k in BesselKind])
    i.add_argument("--nu", type=float, required=True)
    i.add_argument("--mu", type=float, required=True)
    i.add_argument("--T", type=float, required=True)
    i.add_argument("--s", type=float, required=True)
    i.add_argument("--limit", action="store_true", help="also print the T -> inf value")
    i.add_argument("--out")
    i.set_defaults(func=cmd_ilhi)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be positive")
    if getattr(args, "tol", 1.0) <= 0:
        parser.error("--tol must be positive")
    try:
        return args.func(args)
    except (UsageError, LHIError) as exc:
        print(f"lhi {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

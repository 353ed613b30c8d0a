"""Command line interface and JSON workspace format.

A workspace is one JSON document::

    {"rings":    {"T2F2": {"orders": [2,2,2], "mul": [...], "one": [1,0,1]}},
     "modules":  {"e11R": {"ring": "T2F2", "orders": [2,2],
                           "action": {"0": [[1,0],[0,0]], ...}}},
     "zmodules": {"QZ6": "Q + Z/6"},
     "tasks":    [["cartan", "T2F2"], ["check-cokasch", "e11R"]]}

Every description is validated before any task runs.  Reports are one JSON
object per line with sorted keys, so equal inputs give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from .errors import AlgebraError
from .kasch import PropertyReport, cartan_matrix, construct_extension, ext1, is_co_kasch, is_h_ring, is_kasch
from .module import FiniteModule, is_isomorphic, principal_module, regular_module, simple_catalog, submodule_generated, validate_module
from .oracle import PROPOSITIONS, Budget, Harness
from .fixtures import random_rings
from .ring import FiniteRing, validate_ring
from .zmod import ZModuleExpr, is_co_kasch_z, parse_zmodule

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class WorkspaceError(AlgebraError):
    """Invalid workspace content; ``location`` is a dotted path into the document."""

    def __init__(self, location: str, message: str):
        self.location = location
        super().__init__(f"{location}: {message}")


@dataclass
class Workspace:
    rings: dict[str, FiniteRing] = field(default_factory=dict)
    modules: dict[str, FiniteModule] = field(default_factory=dict)
    module_rings: dict[str, str] = field(default_factory=dict)
    zmodules: dict[str, ZModuleExpr] = field(default_factory=dict)
    tasks: list[tuple[str, str]] = field(default_factory=list)
    source: str = "<workspace>"

    def ring(self, name: str, where: str = "--ring") -> FiniteRing:
        if name not in self.rings:
            raise WorkspaceError(where, f"unknown ring {name!r}; known: {', '.join(self.rings) or 'none'}")
        return self.rings[name]

    def module(self, name: str, where: str = "--module") -> FiniteModule:
        """A named module, or the regular module of a named ring."""
        if name in self.modules:
            return self.modules[name]
        if name in self.rings:
            return regular_module(self.rings[name])
        raise WorkspaceError(where, f"unknown module {name!r}; known: {', '.join(self.modules) or 'none'}")

    def zmodule(self, name: str, where: str = "--zmodule") -> ZModuleExpr:
        if name in self.zmodules:
            return self.zmodules[name]
        try:
            return parse_zmodule(name)
        except AlgebraError as exc:
            raise WorkspaceError(where, f"{name!r} is neither a named Z-module nor an expression ({exc})") from None


# ---------------------------------------------------------------------------
# Loading and serialization


def _int_array(value, where: str, depth: int):
    if depth == 0:
        if isinstance(value, bool) or not isinstance(value, int):
            raise WorkspaceError(where, f"expected an integer, got {value!r}")
        return value
    if not isinstance(value, list):
        raise WorkspaceError(where, f"expected a list, got {type(value).__name__}")
    return [_int_array(v, f"{where}[{i}]", depth - 1) for i, v in enumerate(value)]


def _object(value, where: str) -> dict:
    if not isinstance(value, dict):
        raise WorkspaceError(where, f"expected an object, got {type(value).__name__}")
    return value


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise WorkspaceError(where, f"missing field {key!r}")
    return obj[key]


def parse_ring(doc: Any, where: str) -> FiniteRing:
    doc = _object(doc, where)
    orders = _int_array(_require(doc, "orders", where), f"{where}.orders", 1)
    mul = _int_array(_require(doc, "mul", where), f"{where}.mul", 3)
    one = _int_array(_require(doc, "one", where), f"{where}.one", 1)
    try:
        return validate_ring(orders, mul, one)
    except AlgebraError as exc:
        raise WorkspaceError(where, str(exc)) from None


def parse_module(doc: Any, where: str, rings: dict[str, FiniteRing]) -> tuple[str, FiniteModule]:
    doc = _object(doc, where)
    ring_name = _require(doc, "ring", where)
    if ring_name not in rings:
        raise WorkspaceError(f"{where}.ring", f"unknown ring {ring_name!r}")
    R = rings[ring_name]
    orders = _int_array(_require(doc, "orders", where), f"{where}.orders", 1)
    action = _object(_require(doc, "action", where), f"{where}.action")
    mats = []
    for k in range(R.rank):
        key = str(k)
        if key not in action:
            raise WorkspaceError(f"{where}.action", f"missing matrix for ring generator {k}")
        mats.append(_int_array(action[key], f"{where}.action.{key}", 2))
    extra = sorted(set(action) - {str(k) for k in range(R.rank)})
    if extra:
        raise WorkspaceError(f"{where}.action", f"unexpected keys {extra}; the ring has {R.rank} generators")
    try:
        return ring_name, validate_module(R, orders, mats)
    except AlgebraError as exc:
        raise WorkspaceError(where, str(exc)) from None


def workspace_from_dict(doc: Any, source: str = "<workspace>") -> Workspace:
    doc = _object(doc, source)
    unknown = sorted(set(doc) - {"rings", "modules", "zmodules", "tasks"})
    if unknown:
        raise WorkspaceError(source, f"unknown top-level keys {unknown}")
    ws = Workspace(source=source)
    for name, r in _object(doc.get("rings", {}), "rings").items():
        ws.rings[name] = parse_ring(r, f"rings.{name}")
    for name, m in _object(doc.get("modules", {}), "modules").items():
        ws.module_rings[name], ws.modules[name] = parse_module(m, f"modules.{name}", ws.rings)
    for name, z in _object(doc.get("zmodules", {}), "zmodules").items():
        if not isinstance(z, str):
            raise WorkspaceError(f"zmodules.{name}", "expected an expression string")
        try:
            ws.zmodules[name] = parse_zmodule(z)
        except AlgebraError as exc:
            raise WorkspaceError(f"zmodules.{name}", str(exc)) from None
    tasks = doc.get("tasks", [])
    if not isinstance(tasks, list):
        raise WorkspaceError("tasks", "expected a list of [command, target] pairs")
    for i, t in enumerate(tasks):
        if not (isinstance(t, list) and len(t) == 2 and all(isinstance(x, str) for x in t)):
            raise WorkspaceError(f"tasks[{i}]", "expected a [command, target] pair of strings")
        if t[0] not in TASKS:
            raise WorkspaceError(f"tasks[{i}]", f"unknown command {t[0]!r}")
        ws.tasks.append((t[0], t[1]))
    return ws


def load_workspace(path: Optional[str]) -> Workspace:
    """Load ``path``, or the packaged fixture workspace when ``path`` is None."""
    if path is None:
        text = resources.files("cokasch").joinpath("data/fixtures.json").read_text()
        source = "<fixtures>"
    else:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise WorkspaceError(path, exc.strerror or str(exc)) from None
        source = path
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WorkspaceError(f"{source}:{exc.lineno}:{exc.colno}", exc.msg) from None
    return workspace_from_dict(doc, source)


def ring_to_dict(R: FiniteRing) -> dict[str, Any]:
    return {"orders": list(R.orders), "mul": [[list(v) for v in row] for row in R.mul], "one": list(R.one)}


def module_to_dict(M: FiniteModule, ring_name: str) -> dict[str, Any]:
    return {"ring": ring_name, "orders": list(M.orders),
            "action": {str(k): [list(r) for r in A] for k, A in enumerate(M.actions)}}


def workspace_to_dict(ws: Workspace) -> dict[str, Any]:
    return {
        "rings": {n: ring_to_dict(R) for n, R in ws.rings.items()},
        "modules": {n: module_to_dict(M, ws.module_rings[n]) for n, M in ws.modules.items()},
        "zmodules": {n: str(z) for n, z in ws.zmodules.items()},
        "tasks": [list(t) for t in ws.tasks],
    }


def dumps_workspace(doc: dict[str, Any]) -> str:
    """JSON text with integer arrays kept on one line."""

    def flat(v) -> bool:
        return isinstance(v, list) and all(isinstance(x, int) or flat(x) for x in v)

    def enc(v, ind: int) -> str:
        pad = "  " * (ind + 1)
        if flat(v) or not isinstance(v, (list, dict)) or not v:
            return json.dumps(v, separators=(", ", ": "))
        if isinstance(v, list):
            return "[\n" + ",\n".join(pad + enc(x, ind + 1) for x in v) + "\n" + "  " * ind + "]"
        return "{\n" + ",\n".join(f"{pad}{json.dumps(k)}: {enc(x, ind + 1)}" for k, x in v.items()) + "\n" + "  " * ind + "}"

    return enc(doc, 0) + "\n"


# ---------------------------------------------------------------------------
# Tasks


@dataclass
class Context:
    ws: Workspace
    seed: int = 0
    prop: str = "all"
    ring: str = "all"
    budget: Budget = field(default_factory=Budget)


def _module_data(M: FiniteModule) -> dict[str, Any]:
    return {"orders": list(M.orders), "action": [[list(r) for r in A] for A in M.actions]}


def _report(task: str, target: str, rep: PropertyReport, **extra) -> dict[str, Any]:
    out = {"task": task, "target": target, "verdict": rep.verdict, **extra}
    if rep.witness is not None:
        out["witness"] = rep.witness
    if rep.notes:
        out["notes"] = list(rep.notes)
    return out


def _with_simple_name(rep: PropertyReport) -> PropertyReport:
    if rep.witness and "simple_index" in rep.witness:
        rep.witness["simple"] = f"S{rep.witness['simple_index'] + 1}"
    return rep


def task_validate(ctx: Context, target: str) -> list[dict]:
    ws = ctx.ws
    out = []
    pick = (lambda n: True) if target in ("*", "all") else (lambda n: n == target)
    for n, R in ws.rings.items():
        if pick(n):
            out.append({"task": "validate", "target": n, "kind": "ring", "verdict": True, "size": R.size})
    for n, M in ws.modules.items():
        if pick(n):
            out.append({"task": "validate", "target": n, "kind": "module", "verdict": True, "size": M.size,
                        "ring": ws.module_rings[n]})
    for n, z in ws.zmodules.items():
        if pick(n):
            out.append({"task": "validate", "target": n, "kind": "zmodule", "verdict": True, "expression": str(z)})
    if not out:
        raise WorkspaceError("target", f"nothing named {target!r} in {ws.source}")
    return out


def task_simples(ctx: Context, target: str) -> list[dict]:
    cat = simple_catalog(ctx.ws.ring(target))
    simples = [{"name": f"S{i + 1}", **_module_data(S), "end_size": cat.end_sizes[i],
                "cover_idempotent": list(cat.idempotent(i))} for i, S in enumerate(cat.simples)]
    return [{"task": "simples", "target": target, "verdict": True, "simples": simples}]


def task_cartan(ctx: Context, target: str) -> list[dict]:
    C = cartan_matrix(ctx.ws.ring(target))
    return [{"task": "cartan", "target": target, "verdict": True, "cartan": C.tolist(), "diagonal": C.is_diagonal()}]


def task_check_cokasch(ctx: Context, target: str) -> list[dict]:
    return [_report("check-cokasch", target, _with_simple_name(is_co_kasch(ctx.ws.module(target))))]


def task_check_kasch(ctx: Context, target: str) -> list[dict]:
    return [_report("check-kasch", target, _with_simple_name(is_kasch(ctx.ws.module(target))))]


def task_check_hring(ctx: Context, target: str) -> list[dict]:
    return [_report("check-hring", target, is_h_ring(ctx.ws.ring(target)))]


def task_witness_hring(ctx: Context, target: str) -> list[dict]:
    """For a non-H-ring, build the non-split extension and certify it is a non-co-Kasch cyclic module."""
    R = ctx.ws.ring(target)
    cat = simple_catalog(R)
    rep = is_h_ring(R, cat)
    if rep.verdict:
        return [_report("witness-hring", target, rep)]
    i, j = rep.witness["pair"]
    X = construct_extension(cat, i, j, ext1(i, j, cat).cocycle)
    gen = next(x for x in X.elements() if submodule_generated(X, [x]).size == X.size)
    P = principal_module(R, cat.idempotent(i))
    witness = {**rep.witness, "module": _module_data(X), "generator": list(gen),
               "co_kasch": is_co_kasch(X, cat).verdict, "isomorphic_to_principal": is_isomorphic(X, P),
               "principal_idempotent": list(cat.idempotent(i))}
    return [_report("witness-hring", target, PropertyReport("H-ring", False, witness, rep.notes))]


def task_check_z(ctx: Context, target: str) -> list[dict]:
    M = ctx.ws.zmodule(target, "target")
    return [_report("check-z", target, is_co_kasch_z(M), expression=str(M))]


def _verify_rings(ctx: Context) -> dict[str, FiniteRing]:
    if ctx.ring != "all":
        return {ctx.ring: ctx.ws.ring(ctx.ring)}
    rings = dict(ctx.ws.rings)
    for i, R in enumerate(random_rings(ctx.seed, ctx.budget.random_rings, ctx.budget.max_ring_size)):
        rings[f"random{i}"] = R
    return rings


def task_verify(ctx: Context, target: str) -> list[dict]:
    props = list(PROPOSITIONS) if target in ("all", "*") else [target]
    for p in props:
        if p not in PROPOSITIONS:
            raise WorkspaceError("--prop", f"unknown proposition {p!r}; known: {', '.join(PROPOSITIONS)}")
    rings = _verify_rings(ctx)
    h = Harness(rings, ctx.budget, ctx.seed)
    out = []
    for p in props:
        res = h.run(p)
        out.append({"task": "verify", "target": p, "verdict": res.passed, "instances": res.instances,
                    "failures": res.failures, "rings": list(rings), "seed": ctx.seed})
    return out


TASKS: dict[str, Callable[[Context, str], list[dict]]] = {
    "validate": task_validate,
    "simples": task_simples,
    "cartan": task_cartan,
    "check-cokasch": task_check_cokasch,
    "check-kasch": task_check_kasch,
    "check-hring": task_check_hring,
    "witness-hring": task_witness_hring,
    "check-z": task_check_z,
    "verify": task_verify,
}


# ---------------------------------------------------------------------------
# Output


def _fmt_matrix(m) -> str:
    return "[" + ", ".join("[" + ",".join(str(x) for x in r) + "]" for r in m) + "]"


def format_text(rec: dict) -> str:
    task, target = rec["task"], rec["target"]
    v = rec["verdict"]
    head = f"{task} {target}: "
    if task == "validate":
        return head + f"ok ({rec['kind']})"
    if task == "cartan":
        return head + f"{_fmt_matrix(rec['cartan'])}" + (" diagonal" if rec["diagonal"] else "")
    if task == "simples":
        lines = [head + f"{len(rec['simples'])} simple module(s)"]
        for s in rec["simples"]:
            lines.append(f"  {s['name']}: orders={s['orders']} action={s['action']} |End|={s['end_size']} "
                         f"cover e={s['cover_idempotent']}")
        return "\n".join(lines)
    if task == "verify":
        lines = [head + ("pass" if v else "FAIL") + f" ({rec['instances']} instances)"]
        lines += [f"  {f}" for f in rec["failures"]]
        return "\n".join(lines)
    line = head + str(v).lower()
    w = rec.get("witness")
    if w:
        if "simple" in w:
            line += f"  witness {w['simple']}: orders={w['simple_orders']} action={w['simple_action']}"
        elif "prime" in w:
            line += f"  witness p = {w['prime']}"
        elif "pair" in w:
            line += f"  witness Ext^1(S{w['pair'][0] + 1}, S{w['pair'][1] + 1}) of size {w['ext_size']}, cocycle {_fmt_matrix(w['cocycle'])}"
            if "module" in w:
                line += (f"\n  extension X: orders={w['module']['orders']} action={w['module']['action']}"
                         f" generator={w['generator']} co-Kasch={str(w['co_kasch']).lower()}"
                         f" X ~ eR for e={w['principal_idempotent']}: {str(w['isomorphic_to_principal']).lower()}")
    return line


def _emit(rec: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(rec, sort_keys=True) + "\n")
    else:
        out.write(format_text(rec) + "\n")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cokasch", description="Co-Kasch, Kasch and H-ring checks for finite rings and modules.")
    p.add_argument("command", choices=sorted([*TASKS, "run"]), help="task to run; 'run' executes the workspace task list")
    p.add_argument("target", nargs="?", help="ring, module or Z-module name (alternative to the flags below)")
    p.add_argument("--workspace", "-w", help="workspace JSON file (default: built-in fixtures)")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ring")
    p.add_argument("--module")
    p.add_argument("--zmodule")
    p.add_argument("--prop", default="all", help="proposition id for verify, or 'all'")
    p.add_argument("--random-rings", type=int, default=Budget().random_rings,
                   help="seeded random rings added by verify --ring all")
    p.add_argument("--timings", action="store_true", help="add wall-clock seconds to each record (breaks byte-determinism)")
    return p


def _target(args) -> str:
    if args.command == "verify":
        return args.prop
    if args.command in ("check-cokasch", "check-kasch"):
        t = args.module or args.target
    elif args.command == "check-z":
        t = args.zmodule or args.target
    elif args.command == "validate":
        t = args.target or args.module or args.ring or "*"
    else:
        t = args.ring or args.target
    if t is None:
        raise WorkspaceError("command line", f"{args.command} needs a target")
    return t


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        ws = load_workspace(args.workspace)
        budget = Budget(random_rings=args.random_rings)
        ctx = Context(ws, seed=args.seed, prop=args.prop, ring=args.ring or "all", budget=budget)
        jobs = ws.tasks if args.command == "run" else [(args.command, _target(args))]
        status = EXIT_OK
        for i, (cmd, target) in enumerate(jobs):
            t0 = time.perf_counter()
            records = TASKS[cmd](ctx, target)
            elapsed = time.perf_counter() - t0
            for rec in records:
                if args.command == "run":
                    rec["index"] = i
                if args.timings:
                    rec["timings"] = {"seconds": round(elapsed, 6)}
                _emit(rec, args.format, out)
                if cmd == "verify" and not rec["verdict"]:
                    status = EXIT_FAIL
        return status
    except WorkspaceError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except AlgebraError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

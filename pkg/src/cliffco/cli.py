"""Command-line front end.  Every subcommand prints one JSON document.

Exit codes: 0 when the computation succeeds / the property holds, 1 when the
property fails (the JSON then carries a witness), 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Any

from . import comodule, en_hopf, inner, quadratic
from .clifford import CliffordAlgebra, algebra_new, center, pseudoscalar, regular_trace
from .errors import (
    CharTwo,
    CliffcoError,
    ConfigError,
    DeltaNotSquare,
    InvalidAction,
    InvalidCoaction,
    InvalidTuple,
    NotAutomorphism,
    NotEven,
    NotInvertible,
    NotSemisimple,
    TooLarge,
)
from .scalars import FieldElement, field_from_json, parse_field

CONFIG_KEYS = {"field", "n", "alpha", "beta", "gamma", "lambda"}


class InputError(Exception):
    pass


def _line_of(text: str, key: str) -> int | None:
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def _read_json(path: str | Path) -> tuple[Any, str]:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        return json.loads(text), text
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON ({exc.msg})") from exc


def algebra_from_config(obj: dict, text: str = "", path: str = "<config>") -> CliffordAlgebra:
    def err(key, msg, cls=ConfigError):
        line = _line_of(text, key) if key else None
        where = f"{path}:{line}" if line else path
        return cls(f"{where}: {msg}")

    if not isinstance(obj, dict):
        raise err(None, "top level must be a JSON object")
    unknown = sorted(set(obj) - CONFIG_KEYS)
    if unknown:
        raise err(unknown[0], f"unknown key(s) {unknown}")
    for key in ("field", "n", "alpha"):
        if key not in obj:
            raise err(None, f"missing key '{key}'")
    try:
        fld = field_from_json(obj["field"]) if isinstance(obj["field"], dict) else parse_field(str(obj["field"]))
    except CharTwo as exc:
        raise err("field", str(exc), CharTwo) from exc
    except CliffcoError as exc:
        raise err("field", str(exc)) from exc
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise err("n", "n must be a non-negative integer")
    beta = obj.get("beta", [0] * n)
    gamma = obj.get("gamma", [0] * n)
    for key, seq in (("beta", beta), ("gamma", gamma)):
        if not isinstance(seq, list) or len(seq) != n:
            raise err(key, f"'{key}' must be a list of {n} scalars")
    lam = {}
    for entry in obj.get("lambda", []):
        if not isinstance(entry, dict) or set(entry) != {"i", "j", "value"}:
            raise err("lambda", "lambda entries look like {\"i\": 1, \"j\": 2, \"value\": \"1\"}")
        i, j = entry["i"], entry["j"]
        if not (isinstance(i, int) and isinstance(j, int) and 1 <= i < j <= n):
            raise err("lambda", f"lambda index ({i},{j}) must satisfy 1 <= i < j <= {n}")
        lam[(i, j)] = entry["value"]
    try:
        return algebra_new(fld, n, obj["alpha"], beta, gamma, lam)
    except CliffcoError as exc:
        raise err(None, str(exc)) from exc


def load_config(path: str | Path) -> CliffordAlgebra:
    obj, text = _read_json(path)
    return algebra_from_config(obj, text, str(path))


# -- helpers -------------------------------------------------------------------

def _elements(xs) -> list:
    return [x.to_json() for x in xs]


def _emit(payload: dict, code: int = 0) -> int:
    print(json.dumps(payload, indent=2, sort_keys=False))
    return code


def _report_code(rep) -> int:
    return 0 if rep.ok else 1


# -- subcommands -----------------------------------------------------------------

def cmd_info(args):
    A = load_config(args.config)
    Q = quadratic.build_q(A)
    return _emit({"algebra": A.params_json(), "dim": A.dim, "basis": A.labels, "Q": Q.to_json()})


def cmd_semisimple(args):
    A = load_config(args.config)
    d = quadratic.det_q(A)
    ok = bool(d)
    return _emit({"det_q": str(d), "semisimple": ok}, 0 if ok else 1)


def cmd_radical(args):
    A = load_config(args.config)
    rad = quadratic.radical(A)
    return _emit({"dim": len(rad), "basis": _elements(rad)})


def cmd_diagonalize(args):
    A = load_config(args.config)
    cong = quadratic.diagonalize(quadratic.build_q(A))
    new, images = quadratic.orthogonalize_algebra(A)
    return _emit({**cong.to_json(), "orthogonal_algebra": new.params_json(), "images": _elements(images)})


def cmd_center(args):
    A = load_config(args.config)
    Z = center(A)
    return _emit({"dim": len(Z), "basis": _elements(Z)})


def cmd_trace(args):
    A = load_config(args.config)
    if args.element:
        x = A.from_json(json.loads(args.element))
        return _emit({"element": x.to_json(), "trace": str(regular_trace(x))})
    return _emit({"traces": {A.label_str(i): str(regular_trace(b)) for i, b in enumerate(A.basis_elements())}})


def cmd_bialgebra(args):
    A = load_config(args.config)
    ok, reason = quadratic.bialgebra_admissible(A)
    return _emit({"admissible": ok, "reason": reason}, 0 if ok else 1)


def cmd_classify(args):
    A = load_config(args.config)
    return _emit(quadratic.classify_structure(A).to_json())


def cmd_pseudoscalar(args):
    A = load_config(args.config)
    z = pseudoscalar(A)
    return _emit({"z": z.to_json(), "z_squared": (z * z).to_json(), "delta": str(quadratic.delta(A))})


def cmd_canonical(args):
    A = load_config(args.config)
    return _emit(comodule.canonical_coaction(A).to_json())


def _load_coaction(A: CliffordAlgebra, path: str, en_n: int | None):
    obj, _ = _read_json(path)
    E = en_hopf.EnDescriptor(A.field, A.n if en_n is None else en_n)
    try:
        return comodule.Coaction.from_json(A, E, obj)
    except CliffcoError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def cmd_verify_coaction(args):
    A = load_config(args.config)
    rho = _load_coaction(A, args.file, args.en)
    rep = comodule.verify_comodule_algebra(rho)
    return _emit(rep.to_json(), _report_code(rep))


def cmd_from_inner(args):
    A = load_config(args.config)
    obj, _ = _read_json(args.file)
    try:
        t = inner.InnerTuple.from_json(A, obj)
    except CliffcoError as exc:
        raise ConfigError(f"{args.file}: {exc}") from exc
    if len(t.us) != A.n:
        raise ConfigError(f"{args.file}: need {A.n} elements u, got {len(t.us)}")
    try:
        rep = inner.check_inner_tuple(t)
    except NotInvertible as exc:
        return _emit({"ok": False, "axiom": "c invertible", "detail": str(exc)}, 1)
    if not rep:
        return _emit(rep.to_json(), 1)
    return _emit(inner.tuple_to_coaction(t).to_json())


def cmd_from_tuple(args):
    A = load_config(args.config)
    obj, _ = _read_json(args.file)
    try:
        t = comodule.CoactionTuple.from_json(A, obj)
    except CliffcoError as exc:
        raise ConfigError(f"{args.file}: {exc}") from exc
    rep = comodule.verify_tuple(t)
    if not rep:
        return _emit(rep.to_json(), 1)
    return _emit(comodule.coaction_from_tuple(t, check=False).to_json())


def cmd_coinvariants(args):
    A = load_config(args.config)
    rho = _load_coaction(A, args.file, args.en)
    rep = comodule.verify_comodule_algebra(rho)
    if not rep:
        return _emit(rep.to_json(), 1)
    co = comodule.coinvariants(rho)
    return _emit({"dim": len(co), "basis": _elements(co)})


def cmd_split_even(args):
    A = load_config(args.config)
    try:
        sp = inner.split_even(A)
    except (NotEven, NotSemisimple, DeltaNotSquare) as exc:
        return _emit({"ok": False, "reason": type(exc).__name__, "detail": str(exc)}, 1)
    return _emit({
        "ok": True,
        "delta": str(quadratic.delta(A)),
        "sqrt_delta": str(sp.sqrt_delta),
        "z": sp.z.to_json(),
        "t1": sp.t1.to_json(),
        "t2": sp.t2.to_json(),
    })


def cmd_enumerate(args):
    A = load_config(args.config)
    classes = inner.enumerate_coactions(A, args.twisted, max_candidates=args.max_candidates)
    ok = all(k.verified for k in classes)
    return _emit({"count": len(classes), "classes": [k.to_json() for k in classes]}, 0 if ok else 1)


def cmd_verify_hopf(args):
    F = parse_field(args.field)
    rep = en_hopf.verify_hopf(F, args.n)
    return _emit({"n": args.n, "field": F.to_json(), **rep.to_json()}, _report_code(rep))


def cmd_verify_duality(args):
    F = parse_field(args.field)
    fn = en_hopf.psi_basis if args.psi else None
    rep = en_hopf.verify_duality_iso(F, args.n, fn)
    return _emit({"n": args.n, "field": F.to_json(), "map": "psi" if args.psi else "phi", **rep.to_json()},
                 _report_code(rep))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cliffco", description="Clifford-type algebras and E(n)-coactions")
    sub = p.add_subparsers(dest="command", required=True)

    def algebra_cmd(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("config", help="algebra config (JSON)")
        sp.set_defaults(func=fn)
        return sp

    algebra_cmd("info", cmd_info, "parameters, basis and Q")
    algebra_cmd("semisimple", cmd_semisimple, "det Q and semisimplicity")
    algebra_cmd("radical", cmd_radical, "basis of the Jacobson radical")
    algebra_cmd("diagonalize", cmd_diagonalize, "orthogonal basis for Q")
    algebra_cmd("center", cmd_center, "basis of the centre")
    sp = algebra_cmd("trace", cmd_trace, "regular trace")
    sp.add_argument("--element", help='JSON element, e.g. \'{"1": "3", "g": "1"}\'')
    algebra_cmd("bialgebra", cmd_bialgebra, "bialgebra admissibility")
    algebra_cmd("classify", cmd_classify, "structure verdict")
    algebra_cmd("pseudoscalar", cmd_pseudoscalar, "pseudoscalar z and z^2")
    algebra_cmd("canonical-coaction", cmd_canonical, "canonical E(n)-coaction")
    for name, fn, help_ in (
        ("verify-coaction", cmd_verify_coaction, "check comodule-algebra axioms"),
        ("coinvariants", cmd_coinvariants, "coinvariant subalgebra"),
    ):
        sp = algebra_cmd(name, fn, help_)
        sp.add_argument("file", help="coaction JSON")
        sp.add_argument("--en", type=int, default=None, help="rank of E(n) (default: n of the algebra)")
    sp = algebra_cmd("coaction-from-inner", cmd_from_inner, "coaction from (c, u, twisted)")
    sp.add_argument("file", help="inner tuple JSON")
    sp = algebra_cmd("coaction-from-tuple", cmd_from_tuple, "coaction from (phi, d)")
    sp.add_argument("file", help="operator tuple JSON")
    algebra_cmd("split-even", cmd_split_even, "idempotent splitting for even n")
    sp = algebra_cmd("enumerate", cmd_enumerate, "inequivalent inner tuples over a finite field")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--twisted", dest="twisted", action="store_const", const=True, default=None)
    g.add_argument("--untwisted", dest="twisted", action="store_const", const=False)
    sp.add_argument("--max-candidates", type=int, default=200_000)
    for name, fn in (("verify-hopf", cmd_verify_hopf), ("verify-duality", cmd_verify_duality)):
        sp = sub.add_parser(name)
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--field", default="Q", help="Q, GF(p), p, or a JSON descriptor")
        sp.set_defaults(func=fn)
        if name == "verify-duality":
            sp.add_argument("--psi", action="store_true", help="check the naive map psi instead of phi")
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (InvalidTuple, InvalidCoaction, InvalidAction, NotAutomorphism) as exc:
        return _emit({"ok": False, "error": type(exc).__name__, "detail": str(exc)}, 1)
    except (CliffcoError, TooLarge) as exc:
        print(json.dumps({"error": type(exc).__name__, "detail": str(exc)}), file=sys.stderr)
        return 2
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        print(json.dumps({"error": "InputError", "detail": str(exc)}), file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

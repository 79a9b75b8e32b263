"""Exact JSON documents for domains and reports.

Every number is written as a string ``"p/q"`` (or ``"p"``); Gaussian
rationals with nonzero imaginary part become ``{"re": "p/q", "im": "p/q"}``.
No float ever enters or leaves.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .algebra import BoundCheck, GradedReport, SiegelDomain, make_domain
from .cones import Cone, ConeError, TransitivityVerdict, halfline, lorentz, orthant, product
from .fields import PolyVectorField
from .hermitian import HermitianError, HermitianTuple
from .linalg import GaussianRational, Matrix

__all__ = [
    "REPORT_SCHEMA",
    "DOMAIN_SCHEMA",
    "InputError",
    "DomainDocument",
    "ReportDocument",
    "parse_domain_document",
    "parse_report_document",
    "dumps",
]

REPORT_SCHEMA = "siegel-report/1"
DOMAIN_SCHEMA = "siegel-domain/1"
GRADES = ("-1", "-1/2", "0", "1/2", "1")


class InputError(ValueError):
    """Malformed input, located by line and column when the source text is known."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None,
                 path: str | None = None):
        self.message = message
        self.line = line
        self.col = col
        self.path = path
        where = []
        if line is not None:
            where.append(f"line {line}, column {col}")
        if path:
            where.append(f"at {path}")
        super().__init__(f"{message} ({'; '.join(where)})" if where else message)


class _Bad(Exception):
    def __init__(self, message: str, path: tuple):
        super().__init__(message)
        self.message = message
        self.path = path


def _path_str(path: tuple) -> str:
    return "$" + "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in path)


# ---------------------------------------------------------------------------
# Locating a JSON path in source text
# ---------------------------------------------------------------------------

_decoder = json.JSONDecoder()


def _skip_ws(text: str, i: int) -> int:
    while i < len(text) and text[i] in " \t\r\n":
        i += 1
    return i


def _locate(text: str, path: tuple) -> int:
    """Offset of the value at ``path``; falls back to the deepest reachable prefix."""
    i = _skip_ws(text, 0)
    for step in path:
        if i >= len(text):
            break
        if text[i] == "{" and isinstance(step, str):
            j = _skip_ws(text, i + 1)
            found = None
            while j < len(text) and text[j] != "}":
                key, j = _decoder.raw_decode(text, j)
                j = _skip_ws(text, j) + 1  # colon
                j = _skip_ws(text, j)
                if key == step:
                    found = j
                    break
                _, j = _decoder.raw_decode(text, j)
                j = _skip_ws(text, j)
                if j < len(text) and text[j] == ",":
                    j = _skip_ws(text, j + 1)
            if found is None:
                break
            i = found
        elif text[i] == "[" and isinstance(step, int):
            j = _skip_ws(text, i + 1)
            idx = 0
            while j < len(text) and text[j] != "]" and idx < step:
                _, j = _decoder.raw_decode(text, j)
                j = _skip_ws(text, j)
                if j < len(text) and text[j] == ",":
                    j = _skip_ws(text, j + 1)
                idx += 1
            if idx != step or j >= len(text) or text[j] == "]":
                break
            i = j
        else:
            break
    return i


def _line_col(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


class _Inexact(Exception):
    def __init__(self, literal: str):
        super().__init__(literal)
        self.literal = literal


def _load(text: str) -> Any:
    try:
        return json.loads(text, parse_float=_reject, parse_constant=_reject)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    except _Inexact as exc:
        hit = re.search(r'(?<![\w."/])' + re.escape(exc.literal) + r'(?![\w."/])', text)
        line, col = _line_col(text, hit.start()) if hit else (None, None)
        raise InputError(f"{exc.literal} is not exact; write numbers as strings \"p/q\"",
                         line, col) from None


def _reject(literal: str):
    raise _Inexact(literal)


def _located(text: str, exc: _Bad) -> InputError:
    line, col = _line_col(text, _locate(text, exc.path))
    return InputError(exc.message, line, col, _path_str(exc.path))


# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------

def _q_out(q: Fraction) -> str:
    return str(Fraction(q))


def _q_in(x, path) -> Fraction:
    if isinstance(x, bool):
        raise _Bad("expected a rational number", path)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            pass
        raise _Bad(f"{x!r} is not an exact rational \"p/q\"", path)
    raise _Bad("expected a rational number written as \"p/q\"", path)


def _int_in(x, path) -> int:
    q = _q_in(x, path)
    if q.denominator != 1:
        raise _Bad("expected an integer", path)
    return int(q)


def _scalar_out(z: GaussianRational):
    return _q_out(z.re) if not z.im else {"re": _q_out(z.re), "im": _q_out(z.im)}


def _scalar_in(x, path) -> GaussianRational:
    if isinstance(x, dict):
        extra = set(x) - {"re", "im"}
        if extra:
            raise _Bad(f"unexpected key {sorted(extra)[0]!r} in complex number", path)
        re = _q_in(x.get("re", "0"), path + ("re",))
        im = _q_in(x.get("im", "0"), path + ("im",))
        return GaussianRational(re, im)
    return GaussianRational(_q_in(x, path))


def _matrix_out(m: Matrix) -> list:
    return [[_scalar_out(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def _matrix_in(x, path, rows=None, cols=None) -> Matrix:
    if not isinstance(x, list) or not all(isinstance(r, list) for r in x):
        raise _Bad("expected a matrix as a list of rows", path)
    if rows is not None and len(x) != rows:
        raise _Bad(f"expected {rows} rows, found {len(x)}", path)
    width = cols if cols is not None else (len(x[0]) if x else 0)
    out = []
    for i, r in enumerate(x):
        if len(r) != width:
            raise _Bad(f"row has {len(r)} entries, expected {width}", path + (i,))
        out.append([_scalar_in(e, path + (i, j)) for j, e in enumerate(r)])
    if not out:
        return Matrix.zeros(0, width)
    return Matrix.from_rows(out)


# ---------------------------------------------------------------------------
# Cones and Hermitian tuples
# ---------------------------------------------------------------------------

def cone_to_json(cone: Cone) -> dict:
    groups: list[dict] = []
    run = 0

    def flush():
        nonlocal run
        if run == 1:
            groups.append({"type": "halfline"})
        elif run > 1:
            groups.append({"type": "orthant", "dim": str(run)})
        run = 0

    for atom in cone.atoms:
        if atom.kind == "halfline":
            run += 1
        else:
            flush()
            groups.append({"type": "lorentz", "dim": str(atom.dim)})
    flush()
    return groups[0] if len(groups) == 1 else {"type": "product", "factors": groups}


def cone_from_json(x, path=()) -> Cone:
    if not isinstance(x, dict) or "type" not in x:
        raise _Bad("cone must be an object with a \"type\"", path)
    kind = x["type"]
    allowed = {"halfline": {"type"}, "orthant": {"type", "dim"}, "lorentz": {"type", "dim"},
               "product": {"type", "factors"}}
    if kind not in allowed:
        raise _Bad(f"unknown cone type {kind!r}", path + ("type",))
    extra = set(x) - allowed[kind]
    if extra:
        raise _Bad(f"unexpected key {sorted(extra)[0]!r} for cone type {kind}", path)
    try:
        if kind == "halfline":
            return halfline()
        if kind == "product":
            fs = x.get("factors")
            if not isinstance(fs, list) or not fs:
                raise _Bad("product needs a non-empty \"factors\" list", path + ("factors",))
            return product(*(cone_from_json(f, path + ("factors", i)) for i, f in enumerate(fs)))
        if "dim" not in x:
            raise _Bad(f"{kind} cone needs \"dim\"", path)
        dim = _int_in(x["dim"], path + ("dim",))
        return orthant(dim) if kind == "orthant" else lorentz(dim)
    except ConeError as exc:
        raise _Bad(str(exc), path) from None


def hermitian_to_json(h: HermitianTuple) -> list:
    return [_matrix_out(c) for c in h.components]


def hermitian_from_json(x, k: int, path=()) -> HermitianTuple:
    if not isinstance(x, list):
        raise _Bad("hermitian must be a list of k matrices", path)
    if len(x) != k:
        raise _Bad(f"hermitian has {len(x)} components but the cone lives in R^{k}", path)
    m = len(x[0]) if x and isinstance(x[0], list) else 0
    comps = [_matrix_in(c, path + (j,), m, m) for j, c in enumerate(x)]
    for j, c in enumerate(comps):
        if not c.is_hermitian():
            raise _Bad(f"component {j + 1} is not Hermitian", path + (j,))
    try:
        return HermitianTuple(k, m, tuple(comps))
    except HermitianError as exc:
        raise _Bad(str(exc), path) from None


# ---------------------------------------------------------------------------
# Domain documents
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DomainDocument:
    """Either an explicit (cone, hermitian) pair or a named-domain shortcut."""

    cone: Cone | None = None
    hermitian: HermitianTuple | None = None
    name: str | None = None
    params: tuple[str, ...] = ()

    def to_json(self) -> dict:
        out: dict = {"schema": DOMAIN_SCHEMA}
        if self.name is not None:
            out["name"] = self.name
            out["params"] = list(self.params)
        if self.cone is not None:
            out["cone"] = cone_to_json(self.cone)
            out["hermitian"] = hermitian_to_json(self.hermitian)
        return out

    def build(self, validate: bool = True, samples: int = 256, seed: int = 0) -> SiegelDomain:
        if self.cone is not None:
            return make_domain(self.cone, self.hermitian, validate=validate, samples=samples, seed=seed)
        from .catalog import named_domain

        return named_domain(self.name, self.params, validate=validate).spec


def _domain_from_obj(x) -> DomainDocument:
    if not isinstance(x, dict):
        raise _Bad("domain document must be a JSON object", ())
    extra = set(x) - {"schema", "name", "params", "cone", "hermitian"}
    if extra:
        raise _Bad(f"unexpected key {sorted(extra)[0]!r}", ())
    if "schema" in x and x["schema"] != DOMAIN_SCHEMA:
        raise _Bad(f"unsupported schema {x['schema']!r}, expected {DOMAIN_SCHEMA!r}", ("schema",))
    name = x.get("name")
    params: tuple[str, ...] = ()
    if name is not None:
        if not isinstance(name, str):
            raise _Bad("name must be a string", ("name",))
        raw = x.get("params", [])
        if not isinstance(raw, list):
            raise _Bad("params must be a list", ("params",))
        for i, p in enumerate(raw):
            if not isinstance(p, (str, int)) or isinstance(p, bool):
                raise _Bad("params must be strings or integers", ("params", i))
        params = tuple(str(p) for p in raw)
    if "cone" in x or "hermitian" in x:
        if "cone" not in x:
            raise _Bad("missing \"cone\"", ())
        cone = cone_from_json(x["cone"], ("cone",))
        if "hermitian" not in x:
            raise _Bad("missing \"hermitian\"", ())
        h = hermitian_from_json(x["hermitian"], cone.k, ("hermitian",))
        return DomainDocument(cone, h, name, params)
    if name is None:
        raise _Bad("need either \"cone\" and \"hermitian\" or a \"name\"", ())
    return DomainDocument(None, None, name, params)


def parse_domain_document(text: str) -> DomainDocument:
    obj = _load(text)
    try:
        return _domain_from_obj(obj)
    except _Bad as exc:
        raise _located(text, exc) from None


def domain_document(domain: SiegelDomain) -> DomainDocument:
    return DomainDocument(domain.cone, domain.form)


# ---------------------------------------------------------------------------
# Report documents
# ---------------------------------------------------------------------------

def _field_out(f: PolyVectorField) -> dict:
    return {
        "k": str(f.k),
        "m": str(f.m),
        "components": [[{"exp": [str(p) for p in e], "coef": _scalar_out(c)} for e, c in comp]
                       for comp in f.components],
    }


def _field_in(x, path) -> PolyVectorField:
    if not isinstance(x, dict):
        raise _Bad("vector field must be an object", path)
    k = _int_in(x.get("k"), path + ("k",))
    m = _int_in(x.get("m"), path + ("m",))
    comps = x.get("components")
    if not isinstance(comps, list) or len(comps) != k + m:
        raise _Bad("vector field needs k + m components", path + ("components",))
    polys = []
    for i, comp in enumerate(comps):
        p = {}
        for t, term in enumerate(comp):
            tp = path + ("components", i, t)
            if not isinstance(term, dict) or not isinstance(term.get("exp"), list):
                raise _Bad("term must be {\"exp\": [...], \"coef\": ...}", tp)
            e = tuple(_int_in(v, tp + ("exp", j)) for j, v in enumerate(term["exp"]))
            if len(e) != k + m:
                raise _Bad("exponent tuple has the wrong length", tp + ("exp",))
            p[e] = _scalar_in(term.get("coef"), tp + ("coef",))
        polys.append(p)
    return PolyVectorField.from_polys(k, m, polys)


@dataclass(frozen=True)
class ReportDocument:
    n: int
    k: int
    m: int
    cone: Cone
    dims: tuple[int, int, int, int, int]
    s: int
    cone_algebra_dim: int
    stabilizer_dim: int
    d: int
    bound_checks: tuple[BoundCheck, ...]
    homogeneity: TransitivityVerdict
    validation: str
    name: str | None = None
    generators: tuple[tuple[PolyVectorField, ...], ...] | None = None

    @classmethod
    def from_report(cls, r: GradedReport, cone: Cone, name: str | None = None,
                    generators: bool = False) -> "ReportDocument":
        gens = None
        if generators and r.algebra is not None:
            by_grade = r.algebra.fields()
            gens = tuple(tuple(by_grade[Fraction(g)]) for g in GRADES)
        return cls(r.n, r.k, r.m, cone, r.dims, r.s, r.cone_algebra_dim, r.stabilizer_dim, r.d,
                   r.bound_checks, r.homogeneity, r.validation, name, gens)

    @property
    def bounds_hold(self) -> bool:
        return all(b.holds for b in self.bound_checks)

    def to_json(self) -> dict:
        out: dict = {"schema": REPORT_SCHEMA}
        if self.name is not None:
            out["name"] = self.name
        out.update({
            "n": str(self.n),
            "k": str(self.k),
            "m": str(self.m),
            "cone": cone_to_json(self.cone),
            "dims": {g: str(v) for g, v in zip(GRADES, self.dims)},
            "d": str(self.d),
            "s": str(self.s),
            "cone_algebra_dim": str(self.cone_algebra_dim),
            "stabilizer_dim": str(self.stabilizer_dim),
            "validation": self.validation,
            "bound_checks": [
                {"label": b.label, "statement": b.statement, "lhs": _q_out(b.lhs),
                 "relation": b.relation, "rhs": _q_out(b.rhs), "holds": b.holds}
                for b in self.bound_checks
            ],
            "homogeneity": {
                "verdict": self.homogeneity.verdict,
                "samples": str(len(self.homogeneity.points)),
                "points": [[_q_out(t) for t in p] for p in self.homogeneity.points],
                "ranks": [str(r) for r in self.homogeneity.ranks],
                "caveat": self.homogeneity.caveat,
            },
        })
        if self.generators is not None:
            out["generators"] = {g: [_field_out(f) for f in fs] for g, fs in zip(GRADES, self.generators)}
        return out


def _report_from_obj(x) -> ReportDocument:
    if not isinstance(x, dict):
        raise _Bad("report document must be a JSON object", ())
    if x.get("schema") != REPORT_SCHEMA:
        raise _Bad(f"expected schema {REPORT_SCHEMA!r}", ("schema",))

    def need(key, path=()):
        obj = x
        for p in path:
            obj = obj[p]
        if not isinstance(obj, dict) or key not in obj:
            raise _Bad(f"missing {key!r}", path)
        return obj[key]

    dims_obj = need("dims")
    if not isinstance(dims_obj, dict):
        raise _Bad("dims must be an object keyed by grade", ("dims",))
    dims = tuple(_int_in(need(g, ("dims",)), ("dims", g)) for g in GRADES)
    checks = []
    raw_checks = need("bound_checks")
    if not isinstance(raw_checks, list):
        raise _Bad("bound_checks must be a list", ("bound_checks",))
    for i, b in enumerate(raw_checks):
        bp = ("bound_checks", i)
        if not isinstance(b, dict):
            raise _Bad("bound check must be an object", bp)
        relation = b.get("relation")
        if relation not in ("<=", "="):
            raise _Bad("relation must be \"<=\" or \"=\"", bp + ("relation",))
        check = BoundCheck(str(b.get("label")), str(b.get("statement")),
                           _q_in(b.get("lhs"), bp + ("lhs",)), relation,
                           _q_in(b.get("rhs"), bp + ("rhs",)))
        if b.get("holds") is not check.holds:
            raise _Bad("\"holds\" disagrees with lhs, relation and rhs", bp + ("holds",))
        checks.append(check)
    hp = ("homogeneity",)
    h = need("homogeneity")
    if not isinstance(h, dict):
        raise _Bad("homogeneity must be an object", hp)
    points = tuple(tuple(_q_in(t, hp + ("points", i, j)) for j, t in enumerate(p))
                   for i, p in enumerate(need("points", hp)))
    ranks = tuple(_int_in(r, hp + ("ranks", i)) for i, r in enumerate(need("ranks", hp)))
    if _int_in(need("samples", hp), hp + ("samples",)) != len(points):
        raise _Bad("sample count disagrees with the listed points", hp + ("samples",))
    verdict = TransitivityVerdict(str(need("verdict", hp)), ranks, points, str(need("caveat", hp)))
    gens = None
    if "generators" in x:
        g = x["generators"]
        if not isinstance(g, dict):
            raise _Bad("generators must be an object keyed by grade", ("generators",))
        gens = tuple(tuple(_field_in(f, ("generators", gr, i)) for i, f in enumerate(need(gr, ("generators",))))
                     for gr in GRADES)
    name = x.get("name")
    return ReportDocument(
        n=_int_in(need("n"), ("n",)),
        k=_int_in(need("k"), ("k",)),
        m=_int_in(need("m"), ("m",)),
        cone=cone_from_json(need("cone"), ("cone",)),
        dims=dims,
        s=_int_in(need("s"), ("s",)),
        cone_algebra_dim=_int_in(need("cone_algebra_dim"), ("cone_algebra_dim",)),
        stabilizer_dim=_int_in(need("stabilizer_dim"), ("stabilizer_dim",)),
        d=_int_in(need("d"), ("d",)),
        bound_checks=tuple(checks),
        homogeneity=verdict,
        validation=str(need("validation")),
        name=name if isinstance(name, str) else None,
        generators=gens,
    )


def parse_report_document(text: str) -> ReportDocument:
    obj = _load(text)
    try:
        return _report_from_obj(obj)
    except _Bad as exc:
        raise _located(text, exc) from None


def dumps(obj: dict) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False) + "\n"

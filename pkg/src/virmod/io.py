"""Descriptor files, vector literals and report documents.

Descriptor files are JSON objects::

    {"family": "gamma",
     "parameters": {"alpha1": "1/2", "lambda1": "2", "lambda2": "3"},
     "mode": {"alpha": "1/4"}}

    {"family": "qlambda", "r": 5, "S": [2, 4, 5], "lambda": {"5": "1"},
     "mode": {"beta": {"0": "1", "1": "2", "-3": "-1"}}}

Rationals are always strings ``"p/q"`` (or ``"p"``); integers are accepted on
input.  Reports are JSON with sorted keys and exact rational strings, so a
rerun with the same arguments reproduces them byte for byte.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .action import ModuleInstance, TwistedInstance, WeightVector
from .coeff import AVector, Gamma, OneDim, QLambda, q_lambda_straighten, validate_descriptor
from .kernel import LaurentPoly, Q, UniPoly

FAMILIES = ("onedim", "gamma", "qlambda")
PARAMS = {"onedim": ("b",), "gamma": ("alpha1", "lambda1", "lambda2"), "qlambda": ()}


class DescriptorError(ValueError):
    """Malformed descriptor; ``where`` names the field or line."""

    def __init__(self, where: str, msg: str):
        super().__init__(f"{where}: {msg}")
        self.where = where


class DescriptorInvalid(ValueError):
    def __init__(self, descriptor, violations):
        super().__init__("; ".join(violations))
        self.descriptor = descriptor
        self.violations = violations


_RAT = re.compile(r"[+-]?\d+(?:/\d+)?")


def _rat(value, where) -> Fraction:
    if isinstance(value, float):
        raise DescriptorError(where, "floats are not allowed; write rationals as \"p/q\" strings")
    if isinstance(value, str) and not _RAT.fullmatch(value.strip()):
        raise DescriptorError(where, f"not a rational \"p/q\" string: {value!r}")
    try:
        return Q(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise DescriptorError(where, f"not a rational: {value!r}") from None


def _int(value, where) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DescriptorError(where, f"expected an integer, got {value!r}")
    return value


@dataclass(frozen=True)
class Descriptor:
    family: str
    coeff: object
    alpha: Fraction | None = None
    beta: LaurentPoly | None = None

    @property
    def twisted(self) -> bool:
        return self.beta is not None

    def instance(self):
        if self.twisted:
            return TwistedInstance(self.coeff, self.beta)
        return ModuleInstance(self.coeff, self.alpha)

    def violations(self) -> list[str]:
        return validate_descriptor(self.coeff)

    def to_dict(self) -> dict:
        c = self.coeff
        out: dict = {"family": self.family, "r": c.rank}
        if self.family == "qlambda":
            out["S"] = sorted(c.S)
            out["lambda"] = {str(i): str(v) for i, v in c.lam}
        else:
            out["parameters"] = {k: str(v) for k, v in c.params().items()}
        if self.twisted:
            out["mode"] = {"beta": {str(k): str(v) for k, v in self.beta.items()}}
        else:
            out["mode"] = {"alpha": str(self.alpha)}
        return out


def parse_descriptor(data: dict, validate: bool = True) -> Descriptor:
    if not isinstance(data, dict):
        raise DescriptorError("<root>", "descriptor must be a JSON object")
    family = data.get("family")
    if family not in FAMILIES:
        raise DescriptorError("family", f"must be one of {FAMILIES}, got {family!r}")
    params = data.get("parameters", {})
    if not isinstance(params, dict):
        raise DescriptorError("parameters", "must be an object")
    unknown = set(params) - set(PARAMS[family])
    if unknown:
        raise DescriptorError("parameters", f"unknown names for {family}: {sorted(unknown)}")
    if family == "onedim":
        coeff = OneDim(_rat(params.get("b", 0), "parameters.b"))
    elif family == "gamma":
        coeff = Gamma(*(_rat(params.get(k, 0), f"parameters.{k}") for k in PARAMS["gamma"]))
    else:
        if "r" not in data:
            raise DescriptorError("r", "qlambda needs a rank r")
        r = _int(data["r"], "r")
        S = data.get("S")
        if not isinstance(S, list):
            raise DescriptorError("S", "must be a list of integers")
        S = [_int(i, "S") for i in S]
        lam_raw = data.get("lambda", {})
        if not isinstance(lam_raw, dict):
            raise DescriptorError("lambda", "must be an object keyed by index")
        lam = {}
        for k, v in lam_raw.items():
            try:
                i = int(k)
            except ValueError:
                raise DescriptorError(f"lambda.{k}", "keys must be integers") from None
            if i not in S:
                raise DescriptorError(f"lambda.{k}", "index not in S")
            lam[i] = _rat(v, f"lambda.{k}")
        coeff = QLambda(r, S, lam)
    if family != "qlambda" and "r" in data and _int(data["r"], "r") != coeff.rank:
        raise DescriptorError("r", f"declared rank {data['r']} but the {family} module has rank "
                                   f"{coeff.rank}")
    mode = data.get("mode", {"alpha": "0"})
    if not isinstance(mode, dict) or len(mode) != 1 or not set(mode) <= {"alpha", "beta"}:
        raise DescriptorError("mode", "must be {\"alpha\": q} or {\"beta\": {exp: q}}")
    if "alpha" in mode:
        desc = Descriptor(family, coeff, alpha=_rat(mode["alpha"], "mode.alpha"))
    else:
        beta = mode["beta"]
        if not isinstance(beta, dict):
            raise DescriptorError("mode.beta", "must map exponents to rationals")
        terms = {}
        for k, v in beta.items():
            try:
                e = int(k)
            except ValueError:
                raise DescriptorError(f"mode.beta.{k}", "exponent must be an integer") from None
            terms[e] = _rat(v, f"mode.beta.{k}")
        desc = Descriptor(family, coeff, beta=LaurentPoly(terms))
    if validate:
        bad = desc.violations()
        if bad:
            raise DescriptorInvalid(desc, bad)
    return desc


def loads_descriptor(text: str, validate: bool = True) -> Descriptor:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DescriptorError(f"line {e.lineno} column {e.colno}", e.msg) from None
    return parse_descriptor(data, validate)


def load_descriptor(path, validate: bool = True) -> Descriptor:
    return loads_descriptor(Path(path).read_text(), validate)


def dumps_descriptor(desc: Descriptor) -> str:
    return json.dumps(desc.to_dict(), indent=2, sort_keys=True) + "\n"


# -- vector literals ---------------------------------------------------------
#
#   literal   := component (';' component)*
#   component := expr '@' ['grade'] int
#   expr      := signed sum of [coef ['*'|'·']] basis
#
# basis: onedim ``v`` (or empty), gamma ``x^k``/``x``/``1``, qlambda a word of
# ``d<i>`` / ``d<i>^k`` letters (straightened on vac) or ``vac``/``1``.

class LiteralError(ValueError):
    pass


_COEF = re.compile(r"^\(?([+-]?\d+(?:/\d+)?)\)?")
_DLETTER = re.compile(r"d(\d+)(?:\^(\d+))?")


def _split_terms(expr: str) -> list[str]:
    out, cur, depth = [], "", 0
    for i, ch in enumerate(expr):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and cur and cur[-1] not in "*^(/":
            out.append(cur)
            cur = ""
        cur += ch
    if cur:
        out.append(cur)
    return out


def _basis_vector(coeff, token: str) -> AVector:
    token = token.lstrip("*")
    fam = coeff.family
    if fam == "onedim":
        if token not in ("", "v", "1"):
            raise LiteralError(f"onedim basis is 'v', got {token!r}")
        return AVector.basis(())
    if fam == "gamma":
        if token in ("", "1"):
            return AVector.basis(0)
        m = re.fullmatch(r"x(?:\^(\d+))?", token)
        if not m:
            raise LiteralError(f"gamma basis is x^k, got {token!r}")
        return AVector.basis(int(m.group(1) or 1))
    if token in ("", "1", "vac"):
        return AVector.basis(())
    word = []
    pos = 0
    token = token.replace("*", "")
    while pos < len(token):
        m = _DLETTER.match(token, pos)
        if not m:
            raise LiteralError(f"bad generator word {token!r}")
        word.extend([int(m.group(1))] * int(m.group(2) or 1))
        pos = m.end()
    try:
        return q_lambda_straighten(coeff, word)
    except IndexError as e:
        raise LiteralError(str(e)) from None


def parse_avector(coeff, expr: str) -> AVector:
    expr = expr.replace("·", "*").replace(" ", "")
    if expr in ("", "0"):
        return AVector()
    total = AVector()
    for term in _split_terms(expr):
        sign = 1
        if term[0] in "+-":
            sign = -1 if term[0] == "-" else 1
            term = term[1:]
        c = Fraction(1)
        m = _COEF.match(term)
        if m:
            c = Fraction(m.group(1))
            term = term[m.end():]
        total = total + _basis_vector(coeff, term).scale(sign * c)
    return total


def parse_vector(coeff, text: str) -> WeightVector:
    comps = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        m = re.fullmatch(r"(.*)@\s*(?:grade\s*)?([+-]?\d+)\s*", part)
        if not m:
            raise LiteralError(f"component {part!r} needs '@ <grade>'")
        comps.append((int(m.group(2)), parse_avector(coeff, m.group(1))))
    return WeightVector(comps)


def format_avector(coeff, v: AVector) -> str:
    if not v:
        return "0"
    keys = sorted(v.keys(), key=lambda k: (coeff.degree(k), repr(k)))
    return " + ".join(f"({v[k]})·{coeff.format_key(k)}" for k in keys)


def format_vector(coeff, w: WeightVector) -> str:
    if not w:
        return "0"
    return " ; ".join(f"{format_avector(coeff, v)} @ grade {n}" for n, v in w.items())


# -- plain-data conversion ---------------------------------------------------

def _key(k):
    if isinstance(k, tuple):
        return list(k)
    return k


def to_plain(x):
    """Recursively convert exact values to JSON-ready data (rationals as strings)."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, WeightVector):
        return [[n, to_plain(v)] for n, v in x.items()]
    if isinstance(x, AVector):
        return [[_key(k), str(c)] for k, c in sorted(x.items(), key=lambda kv: repr(kv[0]))]
    if isinstance(x, UniPoly):
        return [str(c) for c in x.coeffs]
    if isinstance(x, LaurentPoly):
        return {str(k): str(v) for k, v in x.items()}
    if isinstance(x, dict):
        return {str(k): to_plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        seq = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [to_plain(v) for v in seq]
    if hasattr(x, "__dataclass_fields__"):
        return {k: to_plain(getattr(x, k)) for k in x.__dataclass_fields__}
    return repr(x)


MAX_LISTED_FAILURES = 20


def report_to_dict(rep) -> dict:
    status = "skipped" if rep.skipped else ("pass" if rep.passed else "fail")
    return {
        "suite": rep.suite,
        "status": status,
        "parameters": to_plain(rep.parameters),
        "checks": rep.checks,
        "failure_count": len(rep.failures),
        "failures": to_plain(rep.failures[:MAX_LISTED_FAILURES]),
        "derived": to_plain(rep.derived),
        "notes": list(rep.notes),
    }


def report_document(reports, seed: int, descriptor: Descriptor | None, options: dict,
                    discrepancies: list | None = None) -> dict:
    suites = [report_to_dict(r) for r in reports]
    derived = {}
    for r in reports:
        if r.derived:
            derived[r.suite] = to_plain(r.derived)
    return {
        "tool": "virmod",
        "version": __version__,
        "seed": seed,
        "descriptor": descriptor.to_dict() if descriptor else None,
        "options": to_plain(options),
        "suites": suites,
        "derived_constants": derived,
        "discrepancies": to_plain(discrepancies or []),
        "passed": all(r.passed for r in reports),
    }


def dumps_report(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"

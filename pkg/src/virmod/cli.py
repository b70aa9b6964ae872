"""virmod command line: describe, act, verify, probe.

Exit codes: 0 success, 1 a selected suite failed, 2 configuration error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .action import (ModuleInstance, OmegaSpec, WeightVector, c_act,
                     omega_apply, t_act)
from .io import (DescriptorError, DescriptorInvalid, LiteralError, dumps_descriptor, dumps_report,
                 format_vector, load_descriptor, parse_vector, report_document, to_plain)
from .kernel import Q
from .oracles import (MUTATIONS, AbOracleConfig, ConfigError, MWOracleConfig, VerificationReport,
                      ab_omega_check, check_bracket, check_hv_relations, check_module_axiom,
                      constant_suite, eh_identity_check, intertwiner_check, lemma3_suite,
                      mutated_action, mw_suite, reach_suite, tensor_contrast_check,
                      SliceOverflow)

SUITES = ("bracket", "hv", "lemma3", "constant", "reach", "intertwiner", "tensor", "eh", "ab",
          "mw")
DEFAULT_MW = ("2", "1/3", "5/7", "-1")
DEFAULT_AB_B = "1/3"
DEFAULT_TENSOR = ("1/3", "2")
REACH_SPAN_CAP = 3000

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _err(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_CONFIG


def _load(path, validate=True):
    return load_descriptor(path, validate)


# -- describe ----------------------------------------------------------------

def cmd_describe(args) -> int:
    try:
        desc = _load(args.path, validate=False)
    except (DescriptorError, OSError) as e:
        return _err(str(e))
    if args.emit:
        sys.stdout.write(dumps_descriptor(desc))
        return EXIT_OK
    c = desc.coeff
    label = "effective rank" if desc.family == "gamma" else "rank"
    bad = desc.violations()
    print(f"family {desc.family}, {label} {c.rank}, {'valid' if not bad else 'INVALID'}")
    for k, v in c.params().items():
        if isinstance(v, dict):
            v = ", ".join(f"{i}: {x}" for i, x in sorted(v.items()))
        elif isinstance(v, list):
            v = "{" + ", ".join(map(str, v)) + "}"
        print(f"  {k} = {v}")
    if desc.twisted:
        print("  mode twisted, beta = " + " + ".join(f"({v})t^{k}" for k, v in desc.beta.items()))
    else:
        approx = f"  (≈ {float(desc.alpha):.6g})" if desc.alpha.denominator != 1 else ""
        print(f"  mode plain, alpha = {desc.alpha}{approx}")
    if desc.family == "gamma" and not c.lambda2:
        print("  note: lambda2 = 0, treated as a rank-1 module (d_1 is the top generator)")
    for v in bad:
        print(f"  violation {v}")
    return EXIT_OK if not bad else EXIT_CONFIG


# -- act ---------------------------------------------------------------------

_OP = re.compile(r"^\s*(d|t|c|omega)\s*(?:\(([^)]*)\))?\s*$")


def parse_operator(spec: str):
    m = _OP.match(spec)
    if not m:
        raise ConfigError(f"operator must be d(m), t(k), c or omega(l,m,s); got {spec!r}")
    name, argstr = m.group(1), m.group(2)
    args = [int(a) for a in argstr.split(",")] if argstr and argstr.strip() else []
    want = {"d": 1, "t": 1, "c": 0, "omega": 3}[name]
    if len(args) != want:
        raise ConfigError(f"{name} takes {want} integer argument(s)")
    return name, args


def apply_operator(inst, name, args, w: WeightVector) -> WeightVector:
    if name == "d":
        return inst.act(args[0], w)
    if name == "t":
        return t_act(args[0], w)
    if name == "c":
        return c_act(w)
    return omega_apply(OmegaSpec(*args), w, inst)


def cmd_act(args) -> int:
    try:
        desc = _load(args.path)
        name, oargs = parse_operator(args.operator)
        w = parse_vector(desc.coeff, args.vector)
    except (DescriptorError, DescriptorInvalid, LiteralError, ConfigError, OSError) as e:
        return _err(str(e))
    out = apply_operator(desc.instance(), name, oargs, w)
    if args.json:
        print(json.dumps(to_plain(out)))
    else:
        print(format_vector(desc.coeff, out))
    return EXIT_OK


# -- verify ------------------------------------------------------------------

def _parse_suites(text: str) -> list[str]:
    names = [s.strip() for s in text.split(",") if s.strip()]
    if "all" in names:
        return list(SUITES)
    bad = [n for n in names if n not in SUITES]
    if bad:
        raise ConfigError(f"unknown suite(s) {bad}; choose from {SUITES + ('all',)}")
    return names


def _skipped(name, reason) -> VerificationReport:
    rep = VerificationReport(name, skipped=True)
    rep.notes.append(reason)
    return rep


def run_suites(desc, suites, seed=0, window=5, samples=20, degree_cap=3, mutate=None,
               mw=DEFAULT_MW, ab_b=DEFAULT_AB_B, tensor=DEFAULT_TENSOR):
    """Run the selected suites; returns (reports, discrepancies). Raises ConfigError."""
    inst = desc.instance()
    coeff = desc.coeff
    r = coeff.rank
    plain = inst if isinstance(inst, ModuleInstance) else ModuleInstance(coeff, 0)
    mw_cfg = MWOracleConfig(*(Q(x) for x in mw)) if "mw" in suites else None
    ab_cfg = AbOracleConfig(Q(ab_b)) if "ab" in suites else None
    reports, disc = [], []
    if desc.family == "gamma" and not coeff.lambda2:
        disc.append({"flag": "gamma-rank-reading",
                     "detail": "lambda2 = 0: Gamma read as a rank-1 module"})
    for name in suites:
        if name == "bracket":
            act = mutated_action(inst, mutate) if mutate else None
            reports.append(check_bracket(inst, window, samples, seed, act=act))
            reports.append(check_module_axiom(coeff, samples, seed))
        elif name == "hv":
            reports.append(check_hv_relations(ModuleInstance(coeff, 0), window, samples, seed))
        elif name == "lemma3":
            reports.append(lemma3_suite(inst, samples=max(samples // 2, 1), seed=seed,
                                        window=min(window, 4)))
        elif name == "constant":
            if r < 1:
                reports.append(_skipped("constant", "rank 0: constant oracle needs r >= 1"))
                continue
            rep = constant_suite(inst, samples=max(samples, 50), seed=seed)
            reports.append(rep)
            if rep.derived["discrepancy"]:
                disc.append({"flag": "omega-constant",
                             "measured": rep.derived["measured_constant"],
                             "printed": rep.derived["printed_constant"], "rank": r})
        elif name == "reach":
            if r < 1:
                reports.append(_skipped("reach", "rank 0: reachability probe needs r >= 1"))
                continue
            try:
                reports.append(reach_suite(inst, degree_cap=degree_cap, span_cap=REACH_SPAN_CAP))
            except SliceOverflow as e:
                reports.append(_skipped("reach", f"inconclusive: {e}"))
        elif name == "intertwiner":
            for n0 in range(-2, 3):
                reports.append(intertwiner_check(coeff, plain.alpha, n0, window, samples, seed))
        elif name == "tensor":
            if r < 1:
                reports.append(_skipped("tensor", "rank 0: comparison needs r >= 1"))
                continue
            reports.append(tensor_contrast_check(tensor[0], tensor[1], inst,
                                                 samples=max(samples // 2, 1), seed=seed))
        elif name == "eh":
            rep = eh_identity_check(12, window)
            reports.append(rep)
        elif name == "ab":
            reports.append(ab_omega_check(ab_cfg, window=min(window, 4), samples=samples,
                                          seed=seed))
        elif name == "mw":
            rep = mw_suite(mw_cfg)
            reports.append(rep)
            if rep.derived.get("printed_c4_fails"):
                disc.append({"flag": "mw-c4", "detail": "printed c_4 = m_3 breaks the "
                             "cancellation; c_4 = m_4 is used"})
    return reports, disc


def cmd_verify(args) -> int:
    try:
        desc = _load(args.path)
        suites = _parse_suites(args.suite)
        mw = tuple(args.mw.split(",")) if args.mw else DEFAULT_MW
        if len(mw) != 4:
            raise ConfigError("--mw takes z,m2,m3,m4")
        reports, disc = run_suites(desc, suites, args.seed, args.window, args.samples,
                                   args.degree_cap, args.mutate, mw, args.ab_b)
    except (DescriptorError, DescriptorInvalid, ConfigError, OSError, ValueError) as e:
        return _err(str(e))
    options = {"suites": suites, "window": args.window, "samples": args.samples,
               "degree_cap": args.degree_cap, "mutate": args.mutate, "mw": list(mw),
               "ab_b": args.ab_b}
    doc = report_document(reports, args.seed, desc, options, disc)
    text = dumps_report(doc)
    if args.out:
        Path(args.out).write_text(text)
    for rep in reports:
        print(rep.summary())
        if rep.failures:
            print(f"  first counterexample: {to_plain(rep.failures[0])}")
    for d in disc:
        print(f"discrepancy: {to_plain(d)}")
    return EXIT_OK if doc["passed"] else EXIT_FAIL


# -- probe -------------------------------------------------------------------

def cmd_probe(args) -> int:
    try:
        desc = _load(args.path)
        lo, hi = (int(x) for x in args.grades.split(".."))
        if args.seed_vector:
            seed_vector = parse_vector(desc.coeff, args.seed_vector)
        else:
            seed_vector = None
        rep = reach_suite(desc.instance(), seed_vector, degree_cap=args.degree_cap,
                          grade_window=(lo, hi), operator_window=args.window,
                          max_length=args.length)
    except (DescriptorError, DescriptorInvalid, LiteralError, ConfigError, OSError,
            ValueError) as e:
        return _err(str(e))
    d = rep.derived
    print(f"rank {d['rank']} of slice dimension {d['slice_dim']} "
          f"({'full' if d['full'] else 'deficit ' + str(d['slice_dim'] - d['rank'])})")
    print(f"rank by word length: {d['level_ranks']}")
    for n in rep.notes:
        print(f"note: {n}")
    if args.out:
        doc = report_document([rep], 0, desc, {"probe": rep.parameters})
        Path(args.out).write_text(dumps_report(doc))
    return EXIT_OK if rep.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="virmod", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("describe", help="summarize and validate a descriptor file")
    d.add_argument("path")
    d.add_argument("--emit", action="store_true", help="print the canonical descriptor JSON")
    d.set_defaults(func=cmd_describe)

    a = sub.add_parser("act", help="apply d(m), t(k), c or omega(l,m,s) to a vector literal")
    a.add_argument("path")
    a.add_argument("operator")
    a.add_argument("vector", help="e.g. '1 @ grade 2' or 'x^2 - 1/2*x @ 0 ; 3 @ 1'")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_act)

    v = sub.add_parser("verify", help="run verification suites and write a report")
    v.add_argument("path")
    v.add_argument("--suite", default="all", help="comma list of " + ",".join(SUITES) + ",all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--window", type=int, default=5)
    v.add_argument("--samples", type=int, default=20)
    v.add_argument("--degree-cap", type=int, default=3)
    v.add_argument("--out")
    v.add_argument("--mutate", choices=MUTATIONS, help="negative control for the bracket suite")
    v.add_argument("--mw", help="z,m2,m3,m4 for the mw suite (default " + ",".join(DEFAULT_MW) + ")")
    v.add_argument("--ab-b", default=DEFAULT_AB_B)
    v.set_defaults(func=cmd_verify)

    pr = sub.add_parser("probe", help="reachability probe from a seed vector")
    pr.add_argument("path")
    pr.add_argument("--seed-vector")
    pr.add_argument("--degree-cap", type=int, default=3)
    pr.add_argument("--grades", default="-2..2")
    pr.add_argument("--window", type=int, default=6, help="operator window |m| <= window")
    pr.add_argument("--length", type=int, default=4)
    pr.add_argument("--out")
    pr.set_defaults(func=cmd_probe)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

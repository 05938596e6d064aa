"""Command-line driver: scenario ingestion, dispatch, and reporting.

Every command reads a scenario file, resolves the requested names, runs
one library operation, and prints a report either as stable line-oriented
text or as a single JSON document.  Exit status 0 means success, 2 a
parse/validation problem (including unresolved names), and 3 a violated
computation precondition.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import covers
from .divisors import (
    ContactProfile,
    DivisorComponent,
    DivisorData,
    active_component_span,
    cover_homology_finitely_generated,
    deck_group,
    gcd_tuple,
    invariance_verdict,
    rim_tori_module,
    self_glue,
    vanishing_cycles,
    vanishing_threshold,
)
from .groups import CanonicalForm, FgAbGroup, format_canonical
from .scenario import Scenario, ScenarioError, UnresolvedReferenceError, load_scenario
from .squares import ExactnessReport, elliptic_p1xt2_square, verify

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_PRECONDITION = 3

BUILTIN_SQUARES = {
    "elliptic_p1xt2": elliptic_p1xt2_square,
}


@dataclass(frozen=True)
class Report:
    command: str
    names: tuple[str, ...]
    result: dict
    text_lines: tuple[str, ...]

    def to_text(self) -> str:
        return "\n".join(self.text_lines)

    def to_machine(self) -> str:
        document = {"command": self.command, "names": list(self.names), "result": self.result}
        return json.dumps(document, sort_keys=True, separators=(", ", ": "))


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _canonical_payload(form: CanonicalForm) -> dict:
    return {
        "free_rank": form[0],
        "invariant_factors": list(form[1]),
        "group": format_canonical(form),
    }


def _group_payload(group: FgAbGroup) -> dict:
    return _canonical_payload(group.canonical_form())


def _complex_str(z) -> str:
    return f"({z[0]}, {z[1]})"


def _complex_payload(z) -> list[str]:
    return [str(Fraction(z[0])), str(Fraction(z[1]))]


def _exactness_payload(report: ExactnessReport) -> dict:
    def seq(r):
        return {"injective": r.injective, "exact_middle": r.exact_middle,
                "surjective": r.surjective}

    return {
        "rows": [seq(r) for r in report.rows],
        "cols": [seq(c) for c in report.cols],
        "cells": list(report.cells),
        "exact": report.all_exact,
        "commutative": report.all_commute,
        "overall": report.overall,
    }


class _NameError(Exception):
    """Wrong names passed on the command line (validation class)."""


def _pick(names: list[str], count: int, command: str) -> list[str]:
    if len(names) != count:
        raise _NameError(f"{command} expects {count} --name argument(s), got {len(names)}")
    return names


def _resolve(table: dict, name: str, kind: str):
    if name not in table:
        raise UnresolvedReferenceError(f"unknown {kind} {name!r}")
    return table[name]


def _single_tuple(profile: ContactProfile, command: str) -> tuple[int, ...]:
    if len(profile.tuples) != 1:
        raise _NameError(f"{command} needs a single-component profile")
    return profile.tuples[0]


def run(command: str, scenario: Scenario, names: list[str],
        gamma: tuple[int, int] | None = None) -> Report:
    """Dispatch one command against a loaded scenario."""
    if command == "compute":
        (name,) = _pick(names, 1, command)
        divisor = _resolve(scenario.divisors, name, "divisor")
        group, _ = rim_tori_module(divisor)
        payload = _group_payload(group)
        return Report(command, (name,), payload, (f"group: {payload['group']}",))

    if command == "deck":
        dname, pname = _pick(names, 2, command)
        divisor = _resolve(scenario.divisors, dname, "divisor")
        profile = _resolve(scenario.profiles, pname, "profile")
        report = deck_group(divisor, profile)
        finite = format_canonical(report.finite_part)
        free = format_canonical(report.free_part)
        total = format_canonical(report.total)
        payload = {
            "finite": _canonical_payload(report.finite_part),
            "free": _canonical_payload(report.free_part),
            "total": _canonical_payload(report.total),
            "gcds": list(profile.gcds()),
        }
        return Report(command, (dname, pname), payload,
                      (f"finite: {finite}; free: {free}; total: {total}",))

    if command == "glue":
        (name,) = _pick(names, 1, command)
        gluing = _resolve(scenario.gluings, name, "gluing")
        side_x = _resolve(scenario.divisors, gluing.side_x, "divisor")
        side_y = _resolve(scenario.divisors, gluing.side_y, "divisor")
        group = vanishing_cycles(side_x, side_y, gluing.ident)
        payload = _group_payload(group)
        return Report(command, (name,), payload, (f"group: {payload['group']}",))

    if command == "self-glue":
        (name,) = _pick(names, 1, command)
        divisor = _resolve(scenario.divisors, name, "divisor")
        payload = _group_payload(self_glue(divisor))
        return Report(command, (name,), payload, (f"group: {payload['group']}",))

    if command == "vanishing":
        dname, pname = _pick(names, 2, command)
        divisor = _resolve(scenario.divisors, dname, "divisor")
        profile = _resolve(scenario.profiles, pname, "profile")
        threshold = vanishing_threshold(divisor, profile)
        payload = {"threshold": threshold, "contacts": profile.total_contacts()}
        return Report(command, (dname, pname), payload, (f"threshold r* = {threshold}",))

    if command == "invariance":
        dname, pname = _pick(names, 2, command)
        divisor = _resolve(scenario.divisors, dname, "divisor")
        profile = _resolve(scenario.profiles, pname, "profile")
        verdict = invariance_verdict(divisor, profile)
        payload = {
            "lift_independent": verdict.lift_independent,
            "equals_standard_gw": verdict.equals_standard_gw,
            "reasons": {name: ok for name, ok in verdict.reasons},
        }
        lines = (
            f"lift_independent: {_yes(verdict.lift_independent)}",
            f"equals_standard_gw: {_yes(verdict.equals_standard_gw)}",
            *(f"reason {name}: {_yes(ok)}" for name, ok in verdict.reasons),
        )
        return Report(command, (dname, pname), payload, lines)

    if command == "finite-generation":
        dname, pname = _pick(names, 2, command)
        divisor = _resolve(scenario.divisors, dname, "divisor")
        profile = _resolve(scenario.profiles, pname, "profile")
        span, finite_index = active_component_span(divisor, profile)
        rim, _ = rim_tori_module(divisor)
        index = rim.index_of(span)
        index_repr = "inf" if index is None else index
        verdict = cover_homology_finitely_generated(divisor, profile)
        payload = {
            "finitely_generated": verdict,
            "active_span_finite_index": finite_index,
            "active_span_index": index_repr,
        }
        return Report(command, (dname, pname), payload,
                      (f"finitely_generated: {_yes(verdict)}",
                       f"active_span_index: {index_repr}"))

    if command == "verify-square":
        (name,) = _pick(names, 1, command)
        if name in scenario.squares:
            square = scenario.squares[name]
        elif name in BUILTIN_SQUARES:
            square = BUILTIN_SQUARES[name]()
        else:
            raise UnresolvedReferenceError(f"unknown square {name!r}")
        report = verify(square)
        payload = _exactness_payload(report)
        lines = [f"exact: {_yes(report.all_exact)}; commutative: {_yes(report.all_commute)}"]
        for i, r in enumerate(report.rows):
            lines.append(f"row {i}: injective={_yes(r.injective)}"
                         f" middle={_yes(r.exact_middle)} surjective={_yes(r.surjective)}")
        for i, c in enumerate(report.cols):
            lines.append(f"col {i}: injective={_yes(c.injective)}"
                         f" middle={_yes(c.exact_middle)} surjective={_yes(c.surjective)}")
        lines.append("cells: " + " ".join(_yes(c) for c in report.cells))
        return Report(command, (name,), payload, tuple(lines))

    if command == "torus-cover":
        (pname,) = _pick(names, 1, command)
        profile = _resolve(scenario.profiles, pname, "profile")
        weights = _single_tuple(profile, command)
        if not weights:
            raise ValueError("torus-cover requires at least one contact point")
        ambient = FgAbGroup.free(2)
        r0, torus_dim = covers.rank_profile(2, ambient.zero_subgroup(), weights)
        divisor = _torus_divisor()
        report = deck_group(divisor, ContactProfile((weights,)))
        payload = {
            "euclidean_rank": r0,
            "torus_dim": torus_dim,
            "gcd": gcd_tuple(weights),
            "deck_finite": _canonical_payload(report.finite_part),
            "deck_free": _canonical_payload(report.free_part),
            "deck_total": _canonical_payload(report.total),
        }
        shape = "C" if torus_dim == 0 else f"C x T^{torus_dim}"
        lines = (
            f"cover: {shape}",
            f"deck finite: {format_canonical(report.finite_part)}",
            f"deck free: {format_canonical(report.free_part)}",
            f"deck total: {format_canonical(report.total)}",
        )
        return Report(command, (pname,), payload, lines)

    if command == "base-point":
        (pname,) = _pick(names, 1, command)
        profile = _resolve(scenario.profiles, pname, "profile")
        weights = _single_tuple(profile, command)
        point = covers.base_point(weights, gamma or (1, 0))
        projected = covers.cover_project(weights, point)
        origin = all(z == (0, 0) for z in projected.coordinates)
        payload = {
            "z": _complex_payload(point.z),
            "torus": [_complex_payload(z) for z in point.torus.coordinates],
            "projects_to_origin": origin,
        }
        lines = (
            f"z: {_complex_str(point.z)}",
            "torus: " + ", ".join(_complex_str(z) for z in point.torus.coordinates),
            f"projects_to_origin: {_yes(origin)}",
        )
        return Report(command, (pname,), payload, lines)

    raise _NameError(f"unknown command {command!r}")


def _torus_divisor() -> DivisorData:
    """The standard two-torus divisor with nothing swept."""
    torus = DivisorComponent(name="T2", h1=FgAbGroup.free(2), is_torus=True)
    return DivisorData(components=(torus,), h_xv=torus.h1.zero_subgroup(), dim_v=2)


def _parse_gamma(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected two comma-separated integers")
    try:
        return (int(parts[0]), int(parts[1]))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rimtori",
        description="exact rim-tori, vanishing-cycles, and deck-group calculator")
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "compute": "canonical form of the rim tori module of a divisor",
        "deck": "deck group of the contact cover of a divisor and profile",
        "glue": "vanishing-cycles module of a named gluing",
        "self-glue": "vanishing-cycles module of gluing a divisor to itself",
        "vanishing": "largest useful relative insertion degree",
        "invariance": "lift-independence and agreement with standard counts",
        "finite-generation": "finite generation of the contact cover homology",
        "verify-square": "exactness and commutativity of a 3x3 square",
        "torus-cover": "shape and deck group of the explicit torus cover",
        "base-point": "distinguished cover point of a sheet representative",
    }
    for name, help_text in commands.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--scenario", help="scenario file (JSON)")
        p.add_argument("--name", action="append", default=[], dest="names",
                       help="name to resolve in the scenario (repeatable)")
        p.add_argument("--format", choices=("text", "machine"), default="text")
        if name == "base-point":
            p.add_argument("--gamma", type=_parse_gamma, default=(1, 0),
                           help="sheet representative as 'a,b'")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.scenario is not None:
            scenario = load_scenario(args.scenario)
        else:
            scenario = Scenario()
        report = run(args.command, scenario, args.names,
                     gamma=getattr(args, "gamma", None))
    except (ScenarioError, _NameError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    if args.format == "machine":
        print(report.to_machine())
    else:
        print(report.to_text())
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

import argparse
from typing import Any, Callable, Dict, List

import pandas as pd

import pcomplex.settings as settings
from pcomplex.exceptions import InvalidInputError, UnknownDataNameError
from pcomplex.extension import Extension
from pcomplex.extension_registrar import register_extension
from pcomplex.groupspec import resolve
from pcomplex.pipeline import Analysis, analyze, sylow_count
from pcomplex.posets import BOUC, POSET_KINDS, QUILLEN, SP
from pcomplex.topology import free_rank_of, join_free_rank, wreath_free_rank
from pcomplex.utils import (
    CLIColors,
    debug_print,
    progress,
    write_content,
)

PASS = "pass"
FAIL = "FAIL"
TABLE_COLUMNS = ["check", "property", "expected", "got", "result"]


@register_extension(default=True)
class Run(Extension):
    """Analyze one group: its p-subgroup poset, order complex, pi_1 and homology.

    The group is given in the group spec language, e.g. alternating:5,
    wreath2(alternating:5), product(symmetric:3,cyclic:3), data:m11 or file:PATH.
    """

    def define_arguments(self, parser: argparse.ArgumentParser):
        parser.add_argument("--group", metavar="SPEC", help="group spec to analyze")
        parser.add_argument("--prime", type=int, metavar="P", help="the prime p")
        parser.add_argument("--poset", choices=POSET_KINDS, help="which p-subgroup poset")
        parser.add_argument(
            "--truncate", type=int, metavar="N", help="keep subgroups of order at most p^(N+1)"
        )
        parser.add_argument(
            "--homology", type=int, metavar="D", help="also compute H_0..H_D"
        )
        parser.add_argument("--json", metavar="PATH", help="write the JSON report here")
        parser.add_argument(
            "--check-invariants",
            action="store_true",
            default=None,
            help="re-assert structural invariants, exit 4 on a violation",
        )

    def apply_arguments(self, args: argparse.Namespace):
        super().apply_arguments(args)
        for name in settings.CAP_SOURCES:
            value = getattr(args, f"cap_{name}", None)
            if value is not None:
                self.config.caps.set_var(name, value)

    def ready(self):
        self.config.validate()
        self.config.caps.apply()
        if self.config.threads:
            settings.settings["threads"] = self.config.threads

    def main(self) -> int:
        analysis = analyze(
            self.config.group,
            self.config.prime,
            kind=self.config.poset,
            truncation=self.config.truncate,
            homology_dim=self.config.homology,
            check=bool(self.config.check_invariants),
            threads=self.config.threads,
        )
        if self.config.json:
            write_content(analysis.report, self.config.json)
        print(
            self.render_extension_template(
                "summary.txt", {"report": analysis.report, "status": analysis.status}
            ),
            end="",
        )
        return 0


def _first(analysis: Analysis, field: str):
    return getattr(analysis.pi1.per_component[0], field)


# Expectation key -> how to read the observed value off an analysis.
OBSERVERS: Dict[str, Callable[[Analysis], Any]] = {
    "components": lambda a: a.pi1.component_count,
    "components_min": lambda a: a.pi1.component_count,
    "status": lambda a: a.status,
    "status_prefix": lambda a: a.status,
    "free_rank": lambda a: free_rank_of(a.status),
    "betti": lambda a: a.homology.betti,
    "reduced_betti": lambda a: a.homology.reduced_betti(),
    "homology_torsion": lambda a: a.homology.torsion,
    "abelianization_rank": lambda a: _first(a, "abelianization_rank"),
    "torsion": lambda a: list(_first(a, "torsion")),
    "free_split_sum": lambda a: _first(a, "free_factor_rank")
    + _first(a, "residual_abelianization_rank"),
    "residual_nonempty": lambda a: _first(a, "residual_generators") > 0,
}

COMPARISONS: Dict[str, Callable[[Any, Any], bool]] = {
    "components_min": lambda expected, got: got >= expected,
    "status_prefix": lambda expected, got: str(got).startswith(expected),
}


def compare(key: str, expected, got) -> bool:
    return COMPARISONS.get(key, lambda e, g: e == g)(expected, got)


def _row(check: str, prop: str, expected, got, result: str) -> Dict:
    return {
        "check": check,
        "property": prop,
        "expected": str(expected),
        "got": str(got),
        "result": result,
    }


def homotopy_signature(analysis: Analysis):
    """(components, abelianization per component, certified statuses)."""
    abelian = tuple(
        (c.abelianization_rank, tuple(c.torsion)) for c in analysis.pi1.per_component
    )
    return analysis.pi1.component_count, abelian, tuple(sorted(analysis.pi1.statuses))


def predicted_free_rank(prediction, prime: int) -> int:
    if prediction.formula == "wreath":
        L = resolve(prediction.factors[0])
        return wreath_free_rank(sylow_count(L, prime), L.order)
    if prediction.formula == "join":
        a, b = (analyze(factor, prime).pi1.component_count for factor in prediction.factors)
        return join_free_rank(a, b)
    raise InvalidInputError(f"unknown prediction formula {prediction.formula!r}", module="verify")


def invariance_rows(check) -> List[Dict]:
    rows = []
    variants = [(SP, None), (BOUC, None), (QUILLEN, 2)]
    for group in check.groups:
        base = homotopy_signature(analyze(group, check.prime, QUILLEN))
        for kind, level in variants:
            got = homotopy_signature(analyze(group, check.prime, kind, truncation=level))
            label = f"{kind}" if level is None else f"{kind} truncated at {level}"
            rows.append(
                _row(
                    f"{check.name}[{group}]",
                    label,
                    base,
                    got,
                    PASS if got == base else FAIL,
                )
            )
    return rows


def run_check(check) -> List[Dict]:
    """Evaluate one acceptance check; one table row per compared property."""
    if check.invariance:
        return invariance_rows(check)
    try:
        analysis = analyze(
            check.group,
            check.prime,
            kind=check.poset,
            truncation=check.truncate,
            homology_dim=check.homology,
            check=True,
        )
    except UnknownDataNameError as error:
        debug_print(error)
        return [_row(check.name, "data", check.group, "missing", FAIL)]

    rows = []
    for key, expected in check.expect.to_dict().items():
        if expected is None:
            continue
        got = OBSERVERS[key](analysis)
        rows.append(_row(check.name, key, expected, got, PASS if compare(key, expected, got) else FAIL))
    if check.prediction is not None:
        expected = predicted_free_rank(check.prediction, check.prime)
        got = free_rank_of(analysis.status)
        rows.append(
            _row(
                check.name,
                f"{check.prediction.formula} prediction",
                expected,
                got,
                PASS if got == expected else FAIL,
            )
        )
    return rows


@register_extension()
class Verify(Extension):
    """Run the acceptance suite and print expected against got.

    Exits 1 when any compared property does not match.
    """

    def define_arguments(self, parser: argparse.ArgumentParser):
        parser.add_argument(
            "--extended",
            action="store_true",
            default=None,
            help="include the long running rows",
        )
        parser.add_argument("--only", metavar="NAME", help="run a single named check")

    def selected_checks(self) -> List:
        checks = self.config.checks
        if self.config.only:
            chosen = [check for check in checks if check.name == self.config.only]
            if not chosen:
                names = ", ".join(check.name for check in checks)
                raise InvalidInputError(
                    f"no check named {self.config.only!r}; choose from {names}",
                    module="verify",
                )
            return chosen
        if self.config.extended:
            return list(checks)
        return [check for check in checks if check.level == "default"]

    def main(self) -> int:
        rows = []
        for check in progress(self.selected_checks(), desc="verify"):
            debug_print(f"running {check.name}")
            rows.extend(run_check(check))
        table = pd.DataFrame(rows, columns=TABLE_COLUMNS)
        print(table.to_string(index=False))
        failed = int((table["result"] == FAIL).sum())
        summary = f"{len(table) - failed} passed, {failed} failed"
        if failed:
            print(CLIColors.build_error_string(summary))
            return 1
        print(CLIColors.build_info_string(summary))
        return 0

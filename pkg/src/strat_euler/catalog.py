"""Curated census library and the harness that re-verifies all of it.

Each catalog entry is a census file shipped with the package whose expected
invariants were derived independently (by hand or by an elementary oracle
noted next to each number) and frozen.  ``run_all`` recomputes every
expected value and every applicable identity on every entry; the catalog
passing is the package's end-to-end self-test.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .census_io import CensusBundle, load_document
from .errors import (
    InsufficientData,
    MissingLinkEntry,
    MissingPolarData,
    NotEquidimensional,
    UnknownEntry,
)
from .fibered import (
    GENERIC,
    FiberedCensus,
    IDENTITY_NAMES,
    brasselet,
    brasselet_infinity,
    check_identity,
    detect_irregular_values,
    eu_of_f_at,
    eu_weight,
    lambda_infinity,
    local_fiber_defect,
    total_brasselet_infinity,
    total_lambda_infinity,
)
from .obstruction import check_bdk_point_formula, global_euler_obstruction, solve_bdk
from .polar import brasselet_from_polar, infinity_from_polar, stv_global_eu
from .reports import CheckLine
from .strata import chi_global, indicator_of_space


def _fixture_dir():
    return resources.files("strat_euler").joinpath("fixtures")


def list_entries() -> list[str]:
    """Names of the shipped censuses, sorted."""
    return sorted(
        p.name[: -len(".json")]
        for p in _fixture_dir().iterdir()
        if p.name.endswith(".json")
    )


def load_entry(name: str) -> CensusBundle:
    path = _fixture_dir().joinpath(f"{name}.json")
    try:
        text = path.read_text()
    except (FileNotFoundError, OSError):
        raise UnknownEntry(
            f"no catalog entry {name!r}; available: {', '.join(list_entries())}"
        ) from None
    return load_document(json.loads(text))


# --- expected-value evaluation -----------------------------------------


def evaluate_expected_key(bundle: CensusBundle, key: str):
    """Recompute the invariant an expected key names.

    Key grammar: eu_global, chi_global, stv_sum, lambda_total, binf_total,
    irregular_values, eu_x_at_<stratum>, B_at_<value>, B_generic,
    eu_f_at_<value>, eu_f_at_generic, lambda_at_<value>, binf_at_<value>,
    defect_at_<point>, B_polar_at_<value>, B_polar_generic.
    """
    census = bundle.census
    base = census.base

    def table():
        return solve_bdk(base)

    if key == "eu_global":
        return global_euler_obstruction(base, table())
    if key == "chi_global":
        return chi_global(base, indicator_of_space(base))
    if key == "lambda_total":
        return total_lambda_infinity(census)
    if key == "binf_total":
        return total_brasselet_infinity(census, eu_weight(census, table()))
    if key == "irregular_values":
        return detect_irregular_values(census)
    if key == "stv_sum":
        if bundle.polar is None:
            raise InsufficientData(["polar"])
        return stv_global_eu(census, table(), bundle.polar).lhs
    if key == "B_generic":
        return brasselet(census, GENERIC, eu_weight(census, table()))
    if key == "B_polar_generic":
        if bundle.polar is None:
            raise InsufficientData(["polar"])
        return brasselet_from_polar(census, bundle.polar, GENERIC)
    if key == "eu_f_at_generic":
        return eu_of_f_at(census, table(), GENERIC)
    if key.startswith("B_polar_at_") and len(key) > len("B_polar_at_"):
        if bundle.polar is None:
            raise InsufficientData(["polar"])
        return brasselet_from_polar(census, bundle.polar, key[len("B_polar_at_"):])
    for prefix, run in (
        ("eu_x_at_", lambda arg: table().eu_at(arg)),
        ("B_at_", lambda arg: brasselet(census, arg, eu_weight(census, table()))),
        ("eu_f_at_", lambda arg: eu_of_f_at(census, table(), arg)),
        ("lambda_at_", lambda arg: lambda_infinity(census, arg)),
        ("binf_at_", lambda arg: brasselet_infinity(census, arg, eu_weight(census, table()))),
        ("defect_at_", lambda arg: local_fiber_defect(census, arg)),
    ):
        if key.startswith(prefix) and len(key) > len(prefix):
            return run(key[len(prefix):])
    raise ValueError(f"expected key {key!r} does not name an implemented invariant")


def validate_entry(bundle: CensusBundle) -> None:
    """Catalog hygiene: every expected number parses to an operation and
    carries a nonempty derivation note."""
    if not bundle.expected:
        raise ValueError(f"catalog entry {bundle.name!r} declares no expected values")
    for key in bundle.expected:
        if key not in bundle.derivation_notes or not bundle.derivation_notes[key].strip():
            raise ValueError(
                f"catalog entry {bundle.name!r}: expected key {key!r} has no "
                "derivation note"
            )


# --- the standard battery of identity checks ---------------------------

# data deficiencies that demote a check to SKIP instead of failing the run
SKIPPABLE_ERRORS = (
    InsufficientData,
    NotEquidimensional,
    MissingLinkEntry,
    MissingPolarData,
)


def _run_one(
    census: FiberedCensus,
    identity: str,
    detail: str,
    **kwargs,
) -> CheckLine:
    try:
        report = check_identity(census, identity, **kwargs)
    except SKIPPABLE_ERRORS as exc:
        return CheckLine.skip(identity, detail, str(exc))
    line = CheckLine.from_report(report)
    return CheckLine(
        name=line.name,
        status=line.status,
        detail=detail,
        lhs=line.lhs,
        rhs=line.rhs,
    )


def standard_check_lines(bundle: CensusBundle) -> list[CheckLine]:
    """Every applicable check on one bundle, in a fixed deterministic order.

    Identity checks run at each declared special value where the identity is
    per-value, with the constant weight 1 and, on equidimensional censuses,
    with the obstruction weight.  Identities whose data is absent produce
    SKIP rows rather than failures.  Polar data, when declared, is
    cross-checked against the census route to the same numbers.
    """
    census = bundle.census
    base = census.base
    lines: list[CheckLine] = []

    for sid in base.poset.linear_extension():
        if base.poset.stratum(sid).dim == 0:
            try:
                table = solve_bdk(base)
                report = check_bdk_point_formula(base, table, sid)
            except SKIPPABLE_ERRORS as exc:
                lines.append(CheckLine.skip("bdk_point_formula", f"at={sid}", str(exc)))
                continue
            lines.append(CheckLine.from_report(report))

    alphas: list[tuple[str, object]] = [("1", None)]
    if base.equidimensional:
        try:
            alphas.append(("Eu", eu_weight(census, solve_bdk(base))))
        except SKIPPABLE_ERRORS:
            pass
    values = list(census.special_values)

    for identity in IDENTITY_NAMES:
        if identity == "prop_brasselet_vs_fiber_eu":
            for a in values:
                fiber = bundle.fiber_censuses.get(a)
                if fiber is None:
                    lines.append(
                        CheckLine.skip(identity, f"a={a}", f"missing: fiber_census.{a}")
                    )
                    continue
                lines.append(
                    _run_one(census, identity, f"a={a}", at=a, fiber_census=fiber)
                )
        elif identity in ("bdk_global_1",):
            for a in values + [GENERIC]:
                for label, alpha in alphas:
                    lines.append(
                        _run_one(
                            census, identity, f"a={a}, alpha={label}", at=a, alpha=alpha
                        )
                    )
        elif identity == "thm_generic_fiber":
            lines.append(_run_one(census, identity, ""))
            if census.f_general:
                lines.append(
                    _run_one(census, identity, "counts=milnor", use_milnor=True)
                )
        elif identity == "cor_constructible":
            for label, alpha in alphas:
                lines.append(_run_one(census, identity, f"alpha={label}", alpha=alpha))
        elif identity == "cor_equi":
            lines.append(_run_one(census, identity, ""))
        elif identity == "bdk_global_2":
            for label, alpha in alphas:
                lines.append(_run_one(census, identity, f"alpha={label}", alpha=alpha))
        elif identity == "bdk_global_3":
            for a in values:
                for label, alpha in alphas:
                    lines.append(
                        _run_one(
                            census, identity, f"a={a}, alpha={label}", at=a, alpha=alpha
                        )
                    )
        elif identity == "prop_any_value":
            for a in values:
                for label, alpha in alphas:
                    lines.append(
                        _run_one(
                            census, identity, f"a={a}, alpha={label}", at=a, alpha=alpha
                        )
                    )
        elif identity == "cor_generic_vs_any":
            for a in values:
                lines.append(_run_one(census, identity, f"a={a}", at=a))
        elif identity == "value_consistency":
            for a in values:
                lines.append(_run_one(census, identity, f"a={a}", at=a))

    if bundle.polar is not None:
        polar = bundle.polar
        if polar.alpha is not None:
            try:
                report = stv_global_eu(census, solve_bdk(base), polar)
                lines.append(CheckLine.from_report(report))
            except SKIPPABLE_ERRORS as exc:
                lines.append(CheckLine.skip("stv_global_eu", "", str(exc)))
        for a in values + [GENERIC]:
            try:
                lhs = brasselet_from_polar(census, polar, a)
                rhs = brasselet(census, a, eu_weight(census, solve_bdk(base)))
            except SKIPPABLE_ERRORS as exc:
                lines.append(CheckLine.skip("polar_vs_fiber", f"a={a}", str(exc)))
            else:
                lines.append(
                    CheckLine(
                        name="polar_vs_fiber",
                        status="OK" if lhs == rhs else "FAIL",
                        detail=f"a={a}",
                        lhs=lhs,
                        rhs=rhs,
                    )
                )
        for a in values:
            try:
                lhs = infinity_from_polar(census, polar, a)
                rhs = brasselet_infinity(census, a, eu_weight(census, solve_bdk(base)))
            except SKIPPABLE_ERRORS as exc:
                lines.append(CheckLine.skip("polar_vs_infinity", f"a={a}", str(exc)))
            else:
                lines.append(
                    CheckLine(
                        name="polar_vs_infinity",
                        status="OK" if lhs == rhs else "FAIL",
                        detail=f"a={a}",
                        lhs=lhs,
                        rhs=rhs,
                    )
                )
    return lines


# --- whole-catalog runs ------------------------------------------------


@dataclass(frozen=True)
class ExpectedResult:
    key: str
    want: object
    got: object

    @property
    def ok(self) -> bool:
        return self.want == self.got

    def line(self) -> str:
        tag = "OK" if self.ok else "FAIL"
        return f"expected {self.key}: want={self.want!r} got={self.got!r} {tag}"


@dataclass(frozen=True)
class EntryReport:
    name: str
    expected: tuple[ExpectedResult, ...]
    checks: tuple[CheckLine, ...]

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.expected) and all(
            c.status != "FAIL" for c in self.checks
        )


@dataclass(frozen=True)
class CatalogReport:
    entries: tuple[EntryReport, ...]

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def summary(self) -> str:
        good = sum(1 for e in self.entries if e.ok)
        return f"{good}/{len(self.entries)} catalog entries verified"


def run_entry(bundle: CensusBundle) -> EntryReport:
    validate_entry(bundle)
    results = []
    for key in sorted(bundle.expected):
        want = bundle.expected[key]
        got = evaluate_expected_key(bundle, key)
        results.append(ExpectedResult(key=key, want=want, got=got))
    return EntryReport(
        name=bundle.name,
        expected=tuple(results),
        checks=tuple(standard_check_lines(bundle)),
    )


def run_all(names: list[str] | None = None) -> CatalogReport:
    if names is None:
        names = list_entries()
    return CatalogReport(entries=tuple(run_entry(load_entry(n)) for n in names))

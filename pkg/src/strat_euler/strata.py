"""Stratified censuses: the combinatorial skeleton of a singular space.

A census records what an exact stratified computation actually consumes:
the poset of strata with complex dimensions and Euler characteristics, and
the Euler characteristics of complex links of one stratum inside the closure
of another.  No equations, no embeddings.  Two spaces with the same census
are indistinguishable to every operation in this package, which is exactly
the point: the identities being verified are census-level facts.

Conventions
-----------
* The order is the frontier order: ``a < b`` means the stratum ``a`` lies in
  the closure of ``b``.  It is stored transitively closed.
* ``eta(V', alpha)`` is the normal Morse datum pairing.  On a closure
  indicator it evaluates to 1 on the stratum itself, to
  ``1 - chi(link of V' inside the closure of V_j)`` strictly below, and to 0
  on strata not contained in the closure.  The vanishing case follows from
  supports (the normal slice misses the closure) and is applied uniformly,
  including to incomparable strata.
* Linear extensions are chosen by (dim, id) lexicographic order everywhere a
  matrix needs its rows and columns ordered.  Dimensions strictly increase
  along the frontier order, so this is always a valid linear extension.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping

from .errors import (
    InsufficientData,
    MissingLinkEntry,
    UnknownStratum,
)


@dataclass(frozen=True)
class Stratum:
    """One connected stratum, or the possibly-disconnected regular part.

    ``dim`` is the complex dimension.  ``chi`` is the topological Euler
    characteristic of the open stratum (equal to its compactly supported one;
    the strata are complex).  ``chi=None`` marks a value the census does not
    know yet; operations that need it say so instead of guessing.
    """

    id: str
    dim: int
    chi: int | None
    is_regular_part: bool = False


def _transitive_closure(ids: list[str], pairs: set[tuple[str, str]]) -> set[tuple[str, str]]:
    below: dict[str, set[str]] = {i: set() for i in ids}
    for a, b in pairs:
        below[b].add(a)
    changed = True
    while changed:
        changed = False
        for b in ids:
            extra = set()
            for a in below[b]:
                extra |= below[a]
            if not extra <= below[b]:
                below[b] |= extra
                changed = True
    return {(a, b) for b in ids for a in below[b]}


@dataclass(frozen=True)
class StratumPoset:
    """Strata plus the strict frontier order, closed under transitivity.

    The constructor accepts any generating set of order pairs and closes it.
    Cycles and order pairs that do not strictly increase dimension are
    rejected, as are duplicate or unknown ids.
    """

    strata: tuple[Stratum, ...]
    relations: frozenset[tuple[str, str]] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "strata", tuple(self.strata))
        ids = [s.id for s in self.strata]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate stratum ids")
        for a, b in self.relations:
            for x in (a, b):
                if x not in ids:
                    raise UnknownStratum(f"order pair mentions unknown stratum {x!r}")
        closed = _transitive_closure(ids, set(self.relations))
        for a, b in closed:
            if a == b:
                raise ValueError(f"order relation has a cycle through {a!r}")
        by_id = {s.id: s for s in self.strata}
        for a, b in closed:
            if by_id[a].dim >= by_id[b].dim:
                raise ValueError(
                    f"frontier order must raise dimension: {a!r} (dim {by_id[a].dim}) "
                    f"< {b!r} (dim {by_id[b].dim})"
                )
        object.__setattr__(self, "relations", frozenset(closed))
        object.__setattr__(self, "_by_id", by_id)

    def ids(self) -> list[str]:
        return [s.id for s in self.strata]

    def stratum(self, stratum_id: str) -> Stratum:
        try:
            return self._by_id[stratum_id]
        except KeyError:
            raise UnknownStratum(f"no stratum {stratum_id!r}") from None

    def lt(self, a: str, b: str) -> bool:
        self.stratum(a), self.stratum(b)
        return (a, b) in self.relations

    def leq(self, a: str, b: str) -> bool:
        self.stratum(a), self.stratum(b)
        return a == b or (a, b) in self.relations

    def down_set(self, stratum_id: str) -> list[str]:
        """Ids of strata in the closure of the given one, itself included."""
        return [i for i in self.ids() if i == stratum_id or self.lt(i, stratum_id)]

    def maximal_ids(self) -> list[str]:
        return [i for i in self.ids() if not any(self.lt(i, j) for j in self.ids())]

    def linear_extension(self) -> list[str]:
        return [s.id for s in sorted(self.strata, key=lambda s: (s.dim, s.id))]


@dataclass(frozen=True)
class LinkTable:
    """Euler characteristics of complex links: (lower, upper) -> chi.

    The entry at ``(i, j)`` is the chi of the link of the stratum ``i``
    inside the closure of ``j``.  It depends only on that pair, which is what
    makes restriction to a closed union a sub-table and nothing more.
    """

    entries: Mapping[tuple[str, str], int]

    def __post_init__(self):
        object.__setattr__(self, "entries", dict(self.entries))

    def has(self, lower: str, upper: str) -> bool:
        return (lower, upper) in self.entries

    def get(self, lower: str, upper: str) -> int:
        try:
            return self.entries[(lower, upper)]
        except KeyError:
            raise MissingLinkEntry(lower, upper) from None

    def restricted(self, keep: Iterable[str]) -> "LinkTable":
        keep = set(keep)
        return LinkTable({p: v for p, v in self.entries.items() if p[0] in keep and p[1] in keep})


@dataclass(frozen=True)
class StratifiedCensus:
    """A named stratified space: poset, link data, equidimensionality flag."""

    name: str
    poset: StratumPoset
    links: LinkTable
    equidimensional: bool = False

    def validate(self) -> None:
        """Reject structurally inconsistent censuses.

        Checks, beyond what the poset constructor already enforced: link keys
        are genuine strict order pairs; exactly one stratum carries the
        regular-part flag and it is maximal; under the equidimensionality
        flag the regular part is the unique maximal stratum of top dimension.
        """
        poset = self.poset
        for (a, b) in self.links.entries:
            if not poset.lt(a, b):
                raise ValueError(f"link entry at ({a!r}, {b!r}) is not a strict order pair")
        flagged = [s for s in poset.strata if s.is_regular_part]
        if len(flagged) != 1:
            raise ValueError(f"expected exactly one regular-part stratum, found {len(flagged)}")
        top = flagged[0]
        if any(poset.lt(top.id, j) for j in poset.ids()):
            raise ValueError("the regular part must be a maximal stratum")
        if self.equidimensional:
            others = [i for i in poset.ids() if i != top.id]
            not_below = [i for i in others if not poset.lt(i, top.id)]
            if not_below:
                raise ValueError(
                    "equidimensional census must have every stratum in the closure "
                    f"of the regular part; violated by {not_below}"
                )
            if top.dim != max(s.dim for s in poset.strata):
                raise ValueError("the regular part must have top dimension")

    def regular_part(self) -> Stratum:
        for s in self.poset.strata:
            if s.is_regular_part:
                return s
        raise ValueError("census has no regular-part stratum")

    def top_dim(self) -> int:
        return max(s.dim for s in self.poset.strata)


@dataclass(frozen=True)
class StratumConstructibleFunction:
    """Integer coefficients on open strata; missing ids count as zero."""

    coeffs: Mapping[str, int]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", dict(self.coeffs))

    def value(self, stratum_id: str) -> int:
        return self.coeffs.get(stratum_id, 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StratumConstructibleFunction):
            return NotImplemented
        mine = {k: v for k, v in self.coeffs.items() if v}
        its = {k: v for k, v in other.coeffs.items() if v}
        return mine == its

    def __hash__(self):
        return hash(frozenset((k, v) for k, v in self.coeffs.items() if v))


def indicator_of_space(census: StratifiedCensus) -> StratumConstructibleFunction:
    """The constant function 1 on the whole space."""
    return StratumConstructibleFunction({i: 1 for i in census.poset.ids()})


def _check_alpha(census: StratifiedCensus, alpha: StratumConstructibleFunction) -> None:
    known = set(census.poset.ids())
    for k in alpha.coeffs:
        if k not in known:
            raise UnknownStratum(f"coefficient on unknown stratum {k!r}")


def chi_global(census: StratifiedCensus, alpha: StratumConstructibleFunction) -> int:
    """Euler characteristic of the space weighted by alpha.

    Additivity of chi_c over the strata makes this a plain weighted sum of
    the per-stratum Euler characteristics.
    """
    _check_alpha(census, alpha)
    missing = []
    total = 0
    for s in census.poset.strata:
        a = alpha.value(s.id)
        if a == 0:
            continue
        if s.chi is None:
            missing.append(f"chi.{s.id}")
            continue
        total += a * s.chi
    if missing:
        raise InsufficientData(missing)
    return total


def _eta_entry(census: StratifiedCensus, at: str, closure_of: str) -> int:
    # eta of the closure indicator 1_{cl(V_j)} evaluated at the stratum `at`
    if at == closure_of:
        return 1
    if census.poset.lt(at, closure_of):
        return 1 - census.links.get(at, closure_of)
    return 0


@dataclass(frozen=True)
class LabeledMatrix:
    """A square integer matrix with stratum ids labeling rows and columns."""

    labels: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]

    def entry(self, row_label: str, col_label: str) -> int:
        i = self.labels.index(row_label)
        j = self.labels.index(col_label)
        return self.rows[i][j]

    def pretty(self) -> str:
        width = max(
            [len(l) for l in self.labels] + [len(str(v)) for r in self.rows for v in r]
        )
        head = " " * (width + 2) + " ".join(l.rjust(width) for l in self.labels)
        lines = [head]
        for label, row in zip(self.labels, self.rows):
            lines.append(label.rjust(width) + "  " + " ".join(str(v).rjust(width) for v in row))
        return "\n".join(lines)


def eta_closure_matrix(census: StratifiedCensus) -> LabeledMatrix:
    """The matrix of eta values against closure indicators.

    Rows are strata, columns are closures, both in (dim, id) order.  The
    matrix is upper triangular with unit diagonal because eta against a
    closure vanishes off the closure and is 1 on the open top stratum.
    """
    order = census.poset.linear_extension()
    rows = tuple(
        tuple(_eta_entry(census, at, cl) for cl in order) for at in order
    )
    return LabeledMatrix(tuple(order), rows)


def closure_coefficients(
    census: StratifiedCensus, alpha: StratumConstructibleFunction
) -> dict[str, int]:
    """Coefficients of alpha in the basis of closure indicators.

    Inverts ``1_{cl(V_k)} = sum of 1_{V_j} over j <= k`` by running through
    strata in decreasing (dim, id) order, a Moebius inversion on the poset.
    """
    _check_alpha(census, alpha)
    poset = census.poset
    coeffs: dict[str, int] = {}
    for j in reversed(poset.linear_extension()):
        above = sum(coeffs[k] for k in coeffs if poset.lt(j, k))
        coeffs[j] = alpha.value(j) - above
    return coeffs


def function_from_closure_coefficients(
    census: StratifiedCensus, coeffs: Mapping[str, int]
) -> StratumConstructibleFunction:
    """Expand a closure-basis combination back into per-stratum values."""
    poset = census.poset
    for k in coeffs:
        poset.stratum(k)
    out = {}
    for j in poset.ids():
        out[j] = sum(v for k, v in coeffs.items() if k == j or poset.lt(j, k))
    return StratumConstructibleFunction(out)


def eta(census: StratifiedCensus, at: str, alpha: StratumConstructibleFunction) -> int:
    """Normal Morse datum pairing of alpha at a stratum.

    Computed by expanding alpha in the closure basis and contracting with the
    closure columns; linear in alpha by construction.
    """
    census.poset.stratum(at)
    coeffs = closure_coefficients(census, alpha)
    return sum(c * _eta_entry(census, at, k) for k, c in coeffs.items() if c)


def restrict_to_closure(census: StratifiedCensus, stratum_id: str) -> StratifiedCensus:
    """The census of the closure of one stratum.

    Keeps the down-set of the stratum, moves the regular-part flag onto it,
    and restricts the link table, whose entries depend only on their pair of
    strata.  The closure of a connected stratum is irreducible and the
    closure of the regular part has pure top dimension, so the result is
    declared equidimensional.
    """
    poset = census.poset
    keep = poset.down_set(stratum_id)
    keep_set = set(keep)
    strata = tuple(
        replace(poset.stratum(i), is_regular_part=(i == stratum_id)) for i in keep
    )
    relations = frozenset(
        (a, b) for (a, b) in poset.relations if a in keep_set and b in keep_set
    )
    return StratifiedCensus(
        name=f"{census.name}|closure({stratum_id})",
        poset=StratumPoset(strata, relations),
        links=census.links.restricted(keep_set),
        equidimensional=True,
    )

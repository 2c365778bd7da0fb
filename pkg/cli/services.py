import json
import logging
from pathlib import Path

import graphviz
from django.core.exceptions import ValidationError
from django.utils.translation import gettext as _

from core.exceptions import CrossCheckError
from facering.services import (
    face_module_hilbert,
    h_from_f,
    hilbert_from_h,
    hilbert_via_chains,
    verify_main_theorem,
)
from poly.services import format_poly
from torsion_poset.models import TorsionPoset
from torsion_poset.services import (
    build_poset,
    components,
    cover_counts_by_index,
    f_vector,
    is_simplicial,
    link,
    posets_isomorphic,
    verify_point_decomposition,
)
from zmatroid.models import Realization, format_subset, members
from zmatroid.services import (
    arithmetic_tutte,
    dual_realization,
    evaluate_gt,
    grothendieck_class,
    is_essential,
    matroid_rank,
    modulo_initial_torsion,
    profile,
    realization,
    subset_profiles,
)

from .models import CheckResult

logger = logging.getLogger(__name__)


def _malformed(message: str) -> ValidationError:
    return ValidationError(_("Malformed realization file: %(reason)s") % {"reason": message}, code="malformed_file")


def _integer_vectors(value, field: str) -> list[list[int]]:
    if not isinstance(value, list) or not all(
        isinstance(v, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in v) for v in value
    ):
        raise _malformed(_("%(field)s must be a list of integer vectors") % {"field": field})
    return value


def _parse_json(data) -> Realization:
    if not isinstance(data, dict):
        raise _malformed(_("the JSON document must be an object"))
    ambient_rank = data.get("ambient_rank")
    if not isinstance(ambient_rank, int) or isinstance(ambient_rank, bool) or ambient_rank < 0:
        raise _malformed(_("ambient_rank must be a nonnegative integer"))
    generators = _integer_vectors(data.get("generators", []), "generators")
    relations = _integer_vectors(data.get("relations", []), "relations")
    return realization(ambient_rank, generators, relations)


def _parse_shorthand(text: str) -> Realization:
    try:
        rows = [[int(x) for x in line.split()] for line in text.splitlines() if line.strip()]
    except ValueError as e:
        raise _malformed(_("matrix entries must be integers")) from e
    if not rows:
        return realization(0, [])
    if len({len(row) for row in rows}) != 1:
        raise _malformed(_("matrix rows must have the same length"))
    return realization(len(rows), [list(column) for column in zip(*rows)])


def parse_realization(text: str) -> Realization:
    """Parses a realization file.

    Logic:
        - A document starting with ``{`` is JSON with the fields
          ``ambient_rank``, ``generators`` and the optional ``relations``.
        - Anything else is the matrix shorthand: one line per ambient
          coordinate, one whitespace-separated column per generator, no
          relations.

    Raises:
        ValidationError: If the text is not a valid realization.
    """

    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise _malformed(str(e)) from e
        return _parse_json(data)
    return _parse_shorthand(text)


def read_realization(path: str) -> Realization:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise _malformed(_("the file is not valid UTF-8")) from e
    return parse_realization(text)


def _flag(value: bool) -> str:
    return "true" if value else "false"


def render_info(r: Realization, all_subsets: bool = False) -> str:
    """Summary line of a realization, optionally followed by the subset table."""

    empty = profile(r, 0)
    lines = [f"d(∅)={empty.d} m(∅)={empty.multiplicity} r={matroid_rank(r)} essential={_flag(is_essential(r))}"]
    if all_subsets:
        lines.extend(
            f"{format_subset(p.subset)} d={p.d} cork={p.cork} m={p.multiplicity} independent={_flag(p.independent)}"
            for p in subset_profiles(r)
        )
    return "\n".join(lines)


def render_tutte(r: Realization, dual: bool = False) -> str:
    """The arithmetic Tutte polynomial, or with ``dual`` the one of the dual.

    The dual polynomial is T with x and y swapped. When M(∅) is free it is
    also computed from the dual realization.

    Raises:
        CrossCheckError: If the two dual polynomials differ.
    """

    tutte = arithmetic_tutte(r)
    if not dual:
        return str(tutte)
    if profile(r, 0).structure.is_free:
        explicit = arithmetic_tutte(dual_realization(r))
        if explicit != tutte.swap():
            raise CrossCheckError(f"Dual realization gives {explicit}, duality gives {tutte.swap()}")
    return format_poly(tutte, names=("y", "x"))


def poset_payload(p: TorsionPoset) -> dict:
    return {
        "elements": [
            {
                "id": p.ids[i],
                "rank": e.rank,
                "subset": [j + 1 for j in members(e.subset)],
                "character": e.character.labels() if e.character else [],
            }
            for i, e in enumerate(p.elements)
        ],
        "covers": [[p.ids[child], p.ids[parent]] for child, parent in p.covers],
        "components": [list(c.ids) for c in components(p)],
        "f_vector_per_component": [list(f_vector(c, p.max_rank).entries) for c in components(p)],
    }


def render_poset_json(p: TorsionPoset) -> str:
    return json.dumps(poset_payload(p), indent=2, ensure_ascii=False)


def render_poset_dot(p: TorsionPoset) -> str:
    """DOT source of the Hasse diagram, bottom to top, one row per rank."""

    dot = graphviz.Digraph(name="poset", graph_attr={"rankdir": "BT"}, node_attr={"shape": "box"})
    for rank in range(p.max_rank + 1):
        with dot.subgraph(name=f"rank{rank}") as row:
            row.attr(rank="same")
            for i, e in enumerate(p.elements):
                if e.rank == rank:
                    row.node(str(p.ids[i]), str(e))
    for child, parent in p.covers:
        dot.edge(str(p.ids[child]), str(p.ids[parent]))
    return dot.source


def render_hilbert(r: Realization, dual: bool = False) -> str:
    """Hilbert series of the face module of the realization or of its dual."""
    return str(face_module_hilbert(dual_realization(r) if dual else r))


def _check(name: str, compute) -> CheckResult:
    try:
        outcome = compute()
    except (ValidationError, CrossCheckError) as e:
        detail = "; ".join(e.messages) if isinstance(e, ValidationError) else str(e)
        return CheckResult(name, False, detail)
    passed, detail = outcome if isinstance(outcome, tuple) else (outcome, "")
    return CheckResult(name, passed, "" if passed else detail)


def _components_simplicial(parts: list[TorsionPoset]):
    for component in parts:
        check = is_simplicial(component)
        if not check.simplicial:
            bottom, sigma = check.witness
            return False, f"[{component.ids[bottom]}, {component.ids[sigma]}] is not boolean"
    return True


def _identity_element(poset: TorsionPoset) -> int:
    """Index of (∅, 0), or of the first bottom when the poset carries no characters."""
    for i, e in enumerate(poset.elements):
        if e.subset == 0 and e.character is not None and e.character.is_trivial:
            return i
    return poset.minimal[0]


def _components_isomorphic(poset: TorsionPoset, parts: list[TorsionPoset]) -> bool:
    identity_link = link(poset, _identity_element(poset))
    return all(posets_isomorphic(c, identity_link) for c in parts)


def _f_vector_matches(r: Realization, poset: TorsionPoset):
    rank = matroid_rank(r)
    expected = [0] * (rank + 1)
    for p in subset_profiles(r):
        if p.independent:
            expected[p.size] += p.multiplicity
    actual = list(f_vector(poset, max(rank, poset.max_rank)).entries)
    return actual == expected, f"{actual} != {expected}"


def _covers_by_index(poset: TorsionPoset) -> bool:
    for i, per_index in cover_counts_by_index(poset).items():
        if set(per_index) != set(members(poset.elements[i].subset)) or any(c != 1 for c in per_index.values()):
            return False
    return True


def _chains_match(parts: list[TorsionPoset]):
    for component in parts:
        chains = hilbert_via_chains(component)
        series = hilbert_from_h(h_from_f(f_vector(component)))
        if chains != series:
            return False, f"{chains} != {series}"
    return True


def _main_theorem(r: Realization):
    check = verify_main_theorem(r)
    return check.holds, f"{check.left} != {check.right} (dual route: {check.dual_right})"


def _duality(r: Realization):
    dual = dual_realization(r)
    if arithmetic_tutte(dual) != arithmetic_tutte(r).swap():
        return False, "T_(M*) is not T_M with x and y swapped"
    # M**(∅) is only defined when M*(∅) is free.
    if profile(dual, 0).structure.is_free and arithmetic_tutte(dual_realization(dual)) != arithmetic_tutte(r):
        return False, "T_(M**) differs from T_M"
    return True


def _multiplicity_identity(r: Realization) -> bool:
    reduced = modulo_initial_torsion(r)
    initial = profile(r, 0).multiplicity
    return all(
        p.multiplicity == initial * profile(reduced, p.subset).multiplicity for p in subset_profiles(r) if p.independent
    )


def _point_decomposition(r: Realization):
    result = verify_point_decomposition(r)
    return result.holds, f"{result.left} != {result.right}"


def _gt_evaluation(r: Realization):
    evaluated, tutte = evaluate_gt(grothendieck_class(r)), arithmetic_tutte(r)
    return evaluated == tutte, f"{evaluated} != {tutte}"


def run_verification(r: Realization) -> tuple[list[CheckResult], list[str]]:
    """Runs the identity suite on one realization.

    Logic:
        - The poset is built once; checks on it fail, never raise, when it is
          malformed.
        - Checks that need the dual realization are skipped when M(∅) has
          torsion.

    Returns:
        tuple: The check results in a fixed order, and NOTE lines.
    """

    notes = []
    if not is_essential(r):
        notes.append("NOTE realization is not essential; series use the matroid rank")
    poset = build_poset(r)
    parts = components(poset)
    initial = profile(r, 0)
    results = [
        _check("simplicial components", lambda: _components_simplicial(parts)),
        _check(
            "component count = m(∅)",
            lambda: (len(parts) == initial.multiplicity, f"{len(parts)} components, m(∅)={initial.multiplicity}"),
        ),
        _check("components isomorphic", lambda: _components_isomorphic(poset, parts)),
        _check("f-vector = multiplicity sums", lambda: _f_vector_matches(r, poset)),
        _check("one cover per dropped index", lambda: _covers_by_index(poset)),
        _check("chain count = h-vector series", lambda: _chains_match(parts)),
        _check("main theorem", lambda: _main_theorem(r)),
        _check("multiplicity identity", lambda: _multiplicity_identity(r)),
        _check("point decomposition", lambda: _point_decomposition(r)),
    ]
    if initial.structure.is_free:
        results.append(_check("duality involution", lambda: _duality(r)))
        results.append(_check("GT evaluation = Tutte", lambda: _gt_evaluation(r)))
    else:
        notes.append("NOTE M(∅) has torsion; duality checks skipped")
    for result in results:
        if not result.passed:
            logger.warning("Check failed: %s", result)
    return results, notes


def render_verification(results: list[CheckResult], notes: list[str]) -> str:
    passed = sum(result.passed for result in results)
    lines = [*notes, *(str(result) for result in results), f"{passed}/{len(results)} checks passed"]
    return "\n".join(lines)

"""Construction and exact verification of the witnessing isometry pairs.

A graph property becomes an operator fact through an explicit pair
(U, V) of partial isometries with orthogonal ranges and equal initial
projections: U = sum_k L_{u_k}, V = sum_k L_{v_k}, the summand words
indexed by pairwise distinct source vertices.

Three constructions are provided:

* double-cycle: from distinct first-return cycles w1 != w2 at x, the
  words u_k = w1^(2k-1) w2 r_k and v_k = w1^(2k) w2 r_k, where r_k runs
  from the k-th vertex that reaches x down to x.  Distinct exponents make
  every cross product L_a* L_b vanish: a nonzero product needs one word
  to be a left factor of the other, which would place an interior edge
  with source x inside a first-return cycle.
* infinite-path: a finite window of the tail construction for the
  built-in countable families (u_k, v_k run from the k-th window vertex
  to the (2k)-th and (2k+1)-th).
* quiver: the single-summand pair (L_{w1}, L_{w2}), which keeps the
  initial projection a finite sum of vertex projections as the norm
  closed algebra requires.

Everything is verified a posteriori on a truncated Fock space with exact
rational arithmetic; no identity is claimed past the interior level at
which truncation defects are expected.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .fock import (
    FockBasis,
    PartialIsometryReport,
    SparseOp,
    left_op,
    length_projection,
    partial_isometry_report,
    sum_vertex_projection,
)
from .graphs import (
    DoubleCycleWitness,
    Graph,
    GraphError,
    double_cycle_witnesses,
    saturation_vertices,
)
from .paths import Path, is_left_divisor, literal, path_from_literal, word

_RETRY_BOUND = 8

MODES = ("double-cycle", "infinite-path", "unital", "quiver")


class PairConstructionError(GraphError):
    """A pair cannot be built (precondition failure or bad pair file)."""


@dataclass(frozen=True)
class Summand:
    source: str
    word: Path


@dataclass(frozen=True)
class FormalIsometryPair:
    """Symbolic description of (U, V) as sums of L_w over distinct sources."""

    mode: str
    u_summands: tuple[Summand, ...]
    v_summands: tuple[Summand, ...]
    initial_set: frozenset[str]

    def __post_init__(self):
        if self.mode not in MODES:
            raise PairConstructionError(f"unknown pair mode {self.mode!r}")
        for side in (self.u_summands, self.v_summands):
            sources = [s.source for s in side]
            if len(set(sources)) != len(sources):
                raise PairConstructionError("summand sources must be pairwise distinct")
            for s in side:
                if s.word.source != s.source:
                    raise PairConstructionError(
                        f"word {literal(s.word)} does not start at {s.source!r}"
                    )
        if self.mode == "quiver" and (len(self.u_summands) != 1 or len(self.v_summands) != 1):
            raise PairConstructionError("quiver pairs carry exactly one summand per operator")

    def max_word_length(self) -> int:
        lengths = [len(s.word) for s in self.u_summands + self.v_summands]
        return max(lengths) if lengths else 0

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "summands_u": [{"source": s.source, "word": literal(s.word)} for s in self.u_summands],
            "summands_v": [{"source": s.source, "word": literal(s.word)} for s in self.v_summands],
            "initial_set": sorted(self.initial_set),
        }


def pair_from_json(g: Graph, obj: dict) -> FormalIsometryPair:
    try:
        mode = obj["mode"]
        su = tuple(
            Summand(item["source"], path_from_literal(g, item["word"]))
            for item in obj["summands_u"]
        )
        sv = tuple(
            Summand(item["source"], path_from_literal(g, item["word"]))
            for item in obj["summands_v"]
        )
        initial = frozenset(obj["initial_set"])
    except (KeyError, TypeError) as exc:
        raise PairConstructionError(f"malformed pair description: {exc}") from None
    for x in initial:
        if not g.has_vertex(x):
            raise PairConstructionError(f"initial set names unknown vertex {x!r}")
    return FormalIsometryPair(mode, su, sv, initial)


def _shortest_word(g: Graph, frm: str, to: str) -> Optional[tuple[str, ...]]:
    """Lexicographically least shortest edge word from ``frm`` to ``to``."""
    if frm == to:
        return ()
    visited = {frm}
    frontier: dict[str, tuple[str, ...]] = {frm: ()}
    while frontier:
        nxt: dict[str, tuple[str, ...]] = {}
        for v, w in frontier.items():
            for e in g.out_edges(v):
                if e.dst in visited:
                    continue
                cand = w + (e.name,)
                if e.dst not in nxt or cand < nxt[e.dst]:
                    nxt[e.dst] = cand
        if to in nxt:
            return nxt[to]
        visited.update(nxt)
        frontier = nxt
    return None


def _formally_orthogonal(pair: FormalIsometryPair) -> bool:
    """No word is a left factor of another: every cross product vanishes."""
    words = [s.word for s in pair.u_summands + pair.v_summands]
    for i, a in enumerate(words):
        for b in words[i + 1:]:
            if is_left_divisor(a, b) or is_left_divisor(b, a):
                return False
    return True


def _double_cycle_summands(
    g: Graph,
    witness: DoubleCycleWitness,
    members: Sequence[str],
    offset: int,
) -> tuple[list[Summand], list[Summand]]:
    w1, w2 = witness.first.word, witness.second.word
    us, vs = [], []
    for k, xk in enumerate(members, start=1):
        r = _shortest_word(g, xk, witness.base)
        if r is None:
            raise PairConstructionError(f"vertex {xk!r} does not reach {witness.base!r}")
        # traversal order: connecting path first, then w2, then the w1 blocks
        us.append(Summand(xk, word(g, r + w2 + w1 * (2 * k - 1 + offset))))
        vs.append(Summand(xk, word(g, r + w2 + w1 * (2 * k + offset))))
    return us, vs


def construct_pair_double_cycle(g: Graph, witness: DoubleCycleWitness) -> FormalIsometryPair:
    """Pair witnessing partial freeness from a double-cycle.

    The summand index set is every vertex whose saturation contains the
    witness base, ordered lexicographically; connecting paths are
    shortest with lexicographic tie-break.  Orthogonality holds by the
    exponent design; it is still checked symbolically, and in the
    (never observed) event of a word coincidence the exponents are
    shifted and the construction retried rather than emitting an
    unverified pair.
    """
    witness.validate(g)
    base = witness.base
    members = sorted(v for v in g.vertices if base in saturation_vertices(g, v))
    for attempt in range(_RETRY_BOUND):
        us, vs = _double_cycle_summands(g, witness, members, 2 * len(members) * attempt)
        pair = FormalIsometryPair("double-cycle", tuple(us), tuple(vs), frozenset(members))
        if _formally_orthogonal(pair):
            return pair
    raise PairConstructionError(
        f"no orthogonal word family found at {base!r} after {_RETRY_BOUND} exponent shifts"
    )


def construct_pair_unital(g: Graph) -> FormalIsometryPair:
    """Unital pair for a finite graph with the uniform double-cycle property.

    The vertex set is partitioned by the first (lexicographically) double
    cycle each vertex reaches; each part contributes summands by the
    double-cycle recipe, so the initial set is the whole vertex set and
    the materialized operators are isometries up to the interior level.
    """
    if not g.vertices:
        raise PairConstructionError("cannot build a unital pair over the empty graph")
    witnesses = double_cycle_witnesses(g)
    assignments: dict[str, DoubleCycleWitness] = {}
    for v in g.vertices:
        reach = saturation_vertices(g, v)
        for w in witnesses:
            if w.base in reach:
                assignments[v] = w
                break
        else:
            raise PairConstructionError(
                f"the saturation of vertex {v!r} contains no double-cycle; "
                "the graph is not uniformly aperiodic"
            )
    for attempt in range(_RETRY_BOUND):
        us: list[Summand] = []
        vs: list[Summand] = []
        for w in witnesses:
            members = sorted(v for v, assigned in assignments.items() if assigned is w)
            if not members:
                continue
            offset = 2 * len(members) * attempt
            part_u, part_v = _double_cycle_summands(g, w, members, offset)
            us.extend(part_u)
            vs.extend(part_v)
        pair = FormalIsometryPair("unital", tuple(us), tuple(vs), frozenset(g.vertices))
        if _formally_orthogonal(pair):
            return pair
    raise PairConstructionError(
        f"no orthogonal word family found after {_RETRY_BOUND} exponent shifts"
    )


def quiver_pair(g: Graph) -> FormalIsometryPair:
    """The norm-closed witness (L_{w1}, L_{w2}) from one double-cycle."""
    witnesses = double_cycle_witnesses(g)
    if not witnesses:
        raise PairConstructionError("graph has no double-cycle")
    w = witnesses[0]
    u = Summand(w.base, word(g, w.first.word))
    v = Summand(w.base, word(g, w.second.word))
    pair = FormalIsometryPair("quiver", (u,), (v,), frozenset({w.base}))
    if not _formally_orthogonal(pair):  # distinct first-return cycles never divide
        raise PairConstructionError("double-cycle words unexpectedly interfere")
    return pair


def construct_pair_infinite_path(family: str, window: int) -> FormalIsometryPair:
    """Finite window of the tail construction for a built-in family.

    The words live on the family's truncation at the same window; the
    summand list is the part of the infinite sum whose words stay inside
    the window.
    """
    from . import catalog  # deferred: catalog builds on this module

    entry = catalog.builtin(family)
    if entry.certificate is None or entry.window_pair is None:
        raise PairConstructionError(f"family {entry.name!r} carries no infinite-path certificate")
    g = catalog.family_truncation(entry.name, window)
    triples = entry.window_pair(window)
    if not triples:
        raise PairConstructionError(
            f"window {window} is too small for the pair construction of {entry.name!r}"
        )
    us = tuple(Summand(src, word(g, u_edges)) for src, u_edges, _ in triples)
    vs = tuple(Summand(src, word(g, v_edges)) for src, _, v_edges in triples)
    pair = FormalIsometryPair(
        "infinite-path", us, vs, frozenset(s.source for s in us)
    )
    if not _formally_orthogonal(pair):
        raise PairConstructionError(f"window words of {entry.name!r} unexpectedly interfere")
    return pair


@dataclass(frozen=True)
class MaterializedPair:
    u: SparseOp
    v: SparseOp
    level: int            # depth minus the longest summand word; < 0 means empty interior
    u_levels: dict[str, int]
    v_levels: dict[str, int]
    pair: FormalIsometryPair


def materialize(
    pair: FormalIsometryPair, b: FockBasis, allow_boundary_zeros: Optional[bool] = None
) -> MaterializedPair:
    """Sum the truncated L_w matrices of both operators.

    A word longer than the depth materializes as the zero block.  For
    infinite-path windows this is expected (the window may outrun the
    depth) and allowed by default; for the other modes it indicates a
    depth chosen too small and raises instead.
    """
    if allow_boundary_zeros is None:
        allow_boundary_zeros = pair.mode == "infinite-path"
    maxlen = pair.max_word_length()
    if maxlen > b.depth and not allow_boundary_zeros:
        raise PairConstructionError(
            f"summand words reach length {maxlen}; materialize at depth >= {maxlen}"
        )
    u = SparseOp.zero(b)
    for s in pair.u_summands:
        u = u + left_op(b, s.word)
    v = SparseOp.zero(b)
    for s in pair.v_summands:
        v = v + left_op(b, s.word)
    u_levels = {s.source: b.depth - len(s.word) for s in pair.u_summands}
    v_levels = {s.source: b.depth - len(s.word) for s in pair.v_summands}
    return MaterializedPair(u, v, b.depth - maxlen, u_levels, v_levels, pair)


@dataclass(frozen=True)
class VerificationReport:
    """Exact verification outcomes for a materialized pair.

    Every boolean is the result of an exact rational matrix identity.
    ``initial_projections_match`` compares U*U, V*V and the sum of the
    initial vertex projections after compressing to the interior E_m;
    ``blockwise_exact`` states the uncompressed identity
    U*U == sum_k P_{x_k} E_{N - |u_k|} (and likewise for V), which is the
    exact finite shadow of equal initial projections even when summand
    words have different lengths.
    """

    depth: int
    interior_level: int
    nonzero: bool
    orthogonal: bool
    initial_projections_match: bool
    blockwise_exact: Optional[bool]
    range_condition: bool
    standard_form: bool
    u_report: PartialIsometryReport
    v_report: PartialIsometryReport
    messages: tuple[str, ...]
    exactness_note: str = "all identities checked in exact rational arithmetic (zero tolerance)"

    @property
    def passed(self) -> bool:
        checks = [
            self.nonzero,
            self.orthogonal,
            self.initial_projections_match,
            self.range_condition,
            self.standard_form,
        ]
        if self.blockwise_exact is not None:
            checks.append(self.blockwise_exact)
        return all(checks)

    def lines(self) -> list[str]:
        def mark(ok):
            return "ok" if ok else "FAIL"

        out = [
            f"depth N = {self.depth}, interior level m = {self.interior_level}",
            f"U and V are nonzero                     {mark(self.nonzero)}",
            f"U*V == 0 (full truncated space)         {mark(self.orthogonal)}",
            f"U*U == V*V == sum P_x  (modulo E_m)     {mark(self.initial_projections_match)}",
        ]
        if self.blockwise_exact is not None:
            out.append(f"blockwise initial projections (exact)   {mark(self.blockwise_exact)}")
        out.append(f"UU* <= U*U and VV* <= V*V (modulo E_m)  {mark(self.range_condition)}")
        out.append(f"standard form of initial projections    {mark(self.standard_form)}")
        for msg in self.messages:
            out.append(f"  note: {msg}")
        out.append(self.exactness_note)
        return out


def _blockwise_projection(b: FockBasis, levels: dict[str, int]) -> SparseOp:
    from fractions import Fraction

    one = Fraction(1)
    entries = {
        (i, i): one
        for i, p in enumerate(b.paths)
        if p.target in levels and len(p) <= levels[p.target]
    }
    return SparseOp(b, entries)


def verify_pair(
    u: SparseOp,
    v: SparseOp,
    initial_set: frozenset[str],
    level: int,
    u_levels: Optional[dict[str, int]] = None,
    v_levels: Optional[dict[str, int]] = None,
    range_set: Optional[frozenset[str]] = None,
) -> VerificationReport:
    """Check the defining identities of a partly-free witness pair.

    (a) U*V == 0 on the full truncated space (orthogonality has no
        boundary defect for left-factor-free words);
    (b) U*U == V*V == sum_{x in initial_set} P_x, compressed to E_level;
        with summand levels also the exact blockwise identity;
    (c) UU* <= U*U and VV* <= V*V as containment of 0/1 diagonal
        supports after compressing to E_level; for windowed
        infinite-path pairs ``range_set`` names the vertex set whose
        projection plays the role of the full initial projection, since
        a window sees only finitely many of the infinitely many summands;
    (d) both operators pass the partial-isometry standard-form check.
    """
    b = u.basis
    messages: list[str] = []
    nonzero = not u.is_zero() and not v.is_zero()
    if not nonzero:
        messages.append("an operator materialized to zero (depth far below the word lengths?)")
    orthogonal = (u.adjoint() * v).is_zero()
    if not orthogonal:
        messages.append("U*V has a nonzero entry")

    em = length_projection(b, level)
    p_initial = sum_vertex_projection(b, initial_set)
    uu = u.adjoint() * u
    vv = v.adjoint() * v
    uu_m = em * uu * em
    vv_m = em * vv * em
    target = p_initial * em
    initial_match = uu_m == vv_m == target
    if not initial_match:
        messages.append("compressed initial projections disagree")

    blockwise: Optional[bool] = None
    if u_levels is not None and v_levels is not None:
        blockwise = uu == _blockwise_projection(b, u_levels) and vv == _blockwise_projection(
            b, v_levels
        )
        if not blockwise:
            messages.append("blockwise initial projection identity fails")

    if range_set is None:
        rhs_u = uu_m.diagonal_01_support()
        rhs_v = vv_m.diagonal_01_support()
    else:
        rhs = (sum_vertex_projection(b, range_set) * em).diagonal_01_support()
        rhs_u = rhs_v = rhs
    lhs_u = (em * (u * u.adjoint()) * em).diagonal_01_support()
    lhs_v = (em * (v * v.adjoint()) * em).diagonal_01_support()
    if lhs_u is None or lhs_v is None or rhs_u is None or rhs_v is None:
        range_condition = False
        messages.append("a range or initial projection is not a 0/1 diagonal")
    else:
        range_condition = lhs_u <= rhs_u and lhs_v <= rhs_v
        if not range_condition:
            messages.append("a range projection escapes the initial projection")

    u_report = partial_isometry_report(u)
    v_report = partial_isometry_report(v)
    standard_form = (
        u_report.is_partial_isometry
        and u_report.failure is None
        and v_report.is_partial_isometry
        and v_report.failure is None
    )
    if standard_form and u_levels is not None and v_levels is not None:
        expected_u = frozenset(x for x, m in u_levels.items() if m >= 0)
        expected_v = frozenset(x for x, m in v_levels.items() if m >= 0)
        standard_form = u_report.vertex_set == expected_u and v_report.vertex_set == expected_v
    elif standard_form:
        standard_form = (
            u_report.vertex_set <= initial_set and v_report.vertex_set <= initial_set
        )
    if not standard_form:
        messages.append("standard-form decomposition does not match the predicted vertex set")

    return VerificationReport(
        depth=b.depth,
        interior_level=level,
        nonzero=nonzero,
        orthogonal=orthogonal,
        initial_projections_match=initial_match,
        blockwise_exact=blockwise,
        range_condition=range_condition,
        standard_form=standard_form,
        u_report=u_report,
        v_report=v_report,
        messages=tuple(messages),
    )


def verify_materialized(pair: FormalIsometryPair, b: FockBasis) -> VerificationReport:
    """Materialize and verify in one step, with mode-appropriate settings."""
    mat = materialize(pair, b)
    range_set = frozenset(b.graph.vertices) if pair.mode == "infinite-path" else None
    return verify_pair(
        mat.u,
        mat.v,
        pair.initial_set,
        mat.level,
        u_levels=mat.u_levels,
        v_levels=mat.v_levels,
        range_set=range_set,
    )

"""Truncated Fock space of a graph and exact sparse operators on it.

The Fock space of a graph has an orthonormal basis indexed by the paths
of the free semigroupoid; the truncation at depth N keeps the paths of
length <= N.  On that finite space the creation-type generators act by

    L_w xi_v = xi_{wv}  if wv composes and |wv| <= N, else 0
    R_w xi_v = xi_{vw}  if vw composes and |vw| <= N, else 0

with L_x = P_x (projection onto paths with range x) and R_x = Q_x
(projection onto paths with source x) for a vertex x.  All generator
matrices are 0/1 and every operator built from them stays exactly
rational, so identities are checked with zero tolerance.

Truncation semantics: images that would exceed length N map to 0.
Identities that hold on the infinite space only up to this boundary are
always stated against the interior projections E_m (onto paths of length
<= m) rather than by comparing raw matrices.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .graphs import Graph, GraphError
from .paths import Path, compose, enumerate_paths, literal, unit

DEFAULT_BASIS_CAP = 2_000_000


class BasisCapError(GraphError):
    """The requested truncation is larger than the configured cap."""


@dataclass
class FockBasis:
    """Ordered basis of all paths of length <= depth, with an index map."""

    graph: Graph
    depth: int
    paths: tuple[Path, ...]
    index: dict = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        if not self.index:
            self.index = {p: i for i, p in enumerate(self.paths)}

    @property
    def dim(self) -> int:
        return len(self.paths)

    def ordinal(self, p: Path) -> int:
        try:
            return self.index[p]
        except KeyError:
            raise GraphError(f"path {literal(p)} is not in the basis") from None

    def basis_hash(self) -> str:
        digest = hashlib.sha256()
        digest.update(str(self.depth).encode())
        for p in self.paths:
            digest.update(literal(p).encode())
            digest.update(b"\n")
        return digest.hexdigest()[:12]


def build_basis(g: Graph, depth: int, cap: int = DEFAULT_BASIS_CAP) -> FockBasis:
    """Materialize the depth-N truncation, refusing absurd dimensions."""
    if depth < 0:
        raise GraphError("depth must be >= 0")
    # count level by level before materializing, so a runaway graph is
    # refused without first exhausting memory
    count = len(g.vertices)
    level = {v: 1 for v in g.vertices}
    for _ in range(depth):
        nxt: dict[str, int] = {}
        for v, n in level.items():
            for e in g.out_edges(v):
                nxt[e.dst] = nxt.get(e.dst, 0) + n
        if not nxt:
            break
        count += sum(nxt.values())
        if count > cap:
            raise BasisCapError(
                f"truncation needs more than {cap} basis paths; "
                "lower the depth or raise the cap"
            )
        level = nxt
    paths = tuple(enumerate_paths(g, depth))
    return FockBasis(g, depth, paths)


class SparseOp:
    """Exact sparse matrix over a Fock basis, entries in Q.

    Entries are stored as ``(row, col) -> Fraction`` with no explicit
    zeros; equality is entrywise exact.  The adjoint is the transpose
    since every operator here has real rational entries.  Instances are
    immutable by convention; arithmetic returns new operators.
    """

    __slots__ = ("basis", "entries")

    def __init__(self, basis: FockBasis, entries: Mapping[tuple[int, int], Fraction]):
        self.basis = basis
        self.entries = {k: v for k, v in entries.items() if v != 0}

    @classmethod
    def zero(cls, basis: FockBasis) -> "SparseOp":
        return cls(basis, {})

    @classmethod
    def identity(cls, basis: FockBasis) -> "SparseOp":
        one = Fraction(1)
        return cls(basis, {(i, i): one for i in range(basis.dim)})

    def _check_same_basis(self, other: "SparseOp") -> None:
        if self.basis is not other.basis and (
            self.basis.graph != other.basis.graph or self.basis.depth != other.basis.depth
        ):
            raise GraphError("operators live over different bases")

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseOp):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        raise TypeError("SparseOp is not hashable")

    def __add__(self, other: "SparseOp") -> "SparseOp":
        self._check_same_basis(other)
        out = dict(self.entries)
        for k, v in other.entries.items():
            s = out.get(k)
            out[k] = v if s is None else s + v
        return SparseOp(self.basis, out)

    def __sub__(self, other: "SparseOp") -> "SparseOp":
        return self + (-other)

    def __neg__(self) -> "SparseOp":
        return SparseOp(self.basis, {k: -v for k, v in self.entries.items()})

    def __mul__(self, other):
        if isinstance(other, SparseOp):
            self._check_same_basis(other)
            by_row: dict[int, list[tuple[int, Fraction]]] = {}
            for (r, c), v in other.entries.items():
                by_row.setdefault(r, []).append((c, v))
            out: dict[tuple[int, int], Fraction] = {}
            for (r, k), va in self.entries.items():
                for c, vb in by_row.get(k, ()):
                    key = (r, c)
                    s = out.get(key)
                    prod = va * vb
                    out[key] = prod if s is None else s + prod
            return SparseOp(self.basis, out)
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return SparseOp(self.basis, {k: q * v for k, v in self.entries.items()})
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def adjoint(self) -> "SparseOp":
        return SparseOp(self.basis, {(c, r): v for (r, c), v in self.entries.items()})

    def diagonal_01_support(self) -> Optional[frozenset[int]]:
        """Support of a 0/1 diagonal matrix, or None if not of that form."""
        support = set()
        for (r, c), v in self.entries.items():
            if r != c or v != 1:
                return None
            support.add(r)
        return frozenset(support)

    def __repr__(self):
        return f"SparseOp(dim={self.basis.dim}, nnz={self.nnz})"


def left_op(b: FockBasis, w: Path) -> SparseOp:
    """The truncated left creation operator L_w (P_x for a unit)."""
    _check_path(b.graph, w)
    one = Fraction(1)
    entries = {}
    for j, v in enumerate(b.paths):
        image = compose(w, v)
        if image is not None and len(image) <= b.depth:
            entries[(b.ordinal(image), j)] = one
    return SparseOp(b, entries)


def right_op(b: FockBasis, w: Path) -> SparseOp:
    """The truncated right-regular operator R_w (Q_x for a unit)."""
    _check_path(b.graph, w)
    one = Fraction(1)
    entries = {}
    for j, v in enumerate(b.paths):
        image = compose(v, w)
        if image is not None and len(image) <= b.depth:
            entries[(b.ordinal(image), j)] = one
    return SparseOp(b, entries)


def _check_path(g: Graph, w: Path) -> None:
    if w.is_unit:
        if not g.has_vertex(w.source):
            raise GraphError(f"path {literal(w)} is not a path of this graph")
        return
    at = w.source
    for name in w.edges:
        e = g.edge(name)
        if e.src != at:
            raise GraphError(f"path {literal(w)} is not a path of this graph")
        at = e.dst
    if at != w.target:
        raise GraphError(f"path {literal(w)} is not a path of this graph")


def vertex_projection(b: FockBasis, x: str) -> SparseOp:
    """P_x: diagonal projection onto basis paths with range x."""
    return left_op(b, unit(b.graph, x))


def source_projection(b: FockBasis, x: str) -> SparseOp:
    """Q_x: diagonal projection onto basis paths with source x."""
    return right_op(b, unit(b.graph, x))


def sum_vertex_projection(b: FockBasis, vertices: Iterable[str]) -> SparseOp:
    vs = set(vertices)
    for x in vs:
        if not b.graph.has_vertex(x):
            raise GraphError(f"unknown vertex {x!r}")
    one = Fraction(1)
    return SparseOp(b, {(i, i): one for i, p in enumerate(b.paths) if p.target in vs})


def length_projection(b: FockBasis, max_length: int) -> SparseOp:
    """E_m: diagonal projection onto paths of length <= m (zero for m < 0)."""
    if max_length < 0:
        return SparseOp.zero(b)
    one = Fraction(1)
    return SparseOp(b, {(i, i): one for i, p in enumerate(b.paths) if len(p) <= max_length})


def interior_projection(b: FockBasis, degree: int) -> SparseOp:
    """E_{N-d}: the interior that degree-d operators map into the basis."""
    if not 0 <= degree <= b.depth:
        raise GraphError(f"degree must lie in 0..{b.depth}")
    return length_projection(b, b.depth - degree)


def fourier_coefficients(a: SparseOp) -> dict[Path, Fraction]:
    """Coefficients a_w of the expansion A ~ sum a_w L_w.

    a_w is the entry of A at row w and column unit(source(w)); for
    elements of the truncated algebra this reads the coefficients off the
    columns of the unit vectors, exactly.
    """
    b = a.basis
    unit_index = {p.source: i for i, p in enumerate(b.paths) if p.is_unit}
    table: dict[Path, Fraction] = {}
    for w in b.paths:
        value = a.entries.get((b.ordinal(w), unit_index[w.source]))
        if value:
            table[w] = value
    return table


def reconstruct(
    table: Mapping[Path, Fraction], b: FockBasis, mode: str = "plain", degree: int = 0
) -> SparseOp:
    """Partial sums of sum a_w L_w from a coefficient table.

    ``plain``  : sum over |w| <= degree of a_w L_w
    ``cesaro`` : sum over |w| <= degree of (1 - |w|/(degree+1)) a_w L_w,
                 the first-order Cesaro mean over word length.
    """
    if mode not in ("plain", "cesaro"):
        raise GraphError(f"unknown reconstruction mode {mode!r}")
    out = SparseOp.zero(b)
    for w, coeff in sorted(table.items(), key=lambda kv: (len(kv[0]), kv[0].edges, kv[0].source)):
        if len(w) > degree:
            continue
        weight = Fraction(coeff)
        if mode == "cesaro":
            weight *= 1 - Fraction(len(w), degree + 1)
        if weight:
            out = out + weight * left_op(b, w)
    return out


@dataclass(frozen=True)
class PartialIsometryReport:
    """Outcome of checking V*V for projection- and standard-form.

    Initial projections of partial isometries in these algebras are sums
    of vertex projections; on the truncation each surviving vertex class
    is a full initial segment by length, so the decomposition is a vertex
    set together with per-vertex interior levels.  ``level`` is the least
    of those: V*V agrees with sum_{x in vertex_set} P_x exactly after
    composing with E_level.
    """

    is_partial_isometry: bool
    failure: Optional[str]
    initial_projection: SparseOp
    vertex_set: Optional[frozenset[str]]
    level: Optional[int]
    per_vertex_levels: Optional[dict[str, int]]


def partial_isometry_report(v: SparseOp) -> PartialIsometryReport:
    """Check V*V == (V*V)^2 exactly and decompose it into vertex slices."""
    b = v.basis
    k = v.adjoint() * v
    if k * k != k:
        return PartialIsometryReport(False, "V*V is not idempotent", k, None, None, None)
    if k != k.adjoint():
        return PartialIsometryReport(False, "V*V is not self-adjoint", k, None, None, None)
    support = k.diagonal_01_support()
    if support is None:
        return PartialIsometryReport(
            True, "initial projection is not 0/1 diagonal in the path basis", k, None, None, None
        )
    if not support:
        return PartialIsometryReport(True, None, k, frozenset(), b.depth, {})
    by_vertex: dict[str, list[int]] = {}
    for i in support:
        by_vertex.setdefault(b.paths[i].target, []).append(i)
    class_counts: dict[str, dict[int, int]] = {}
    for p in b.paths:
        if p.target in by_vertex:
            class_counts.setdefault(p.target, {})
            class_counts[p.target][len(p)] = class_counts[p.target].get(len(p), 0) + 1
    levels: dict[str, int] = {}
    for x, ordinals in by_vertex.items():
        m = max(len(b.paths[i]) for i in ordinals)
        expected = sum(n for length, n in class_counts[x].items() if length <= m)
        if expected != len(ordinals):
            return PartialIsometryReport(
                True,
                f"support at vertex {x!r} is not an initial segment by length",
                k,
                None,
                None,
                None,
            )
        levels[x] = m
    return PartialIsometryReport(
        True, None, k, frozenset(levels), min(levels.values()), levels
    )


def export_sparse(a: SparseOp) -> str:
    """Line-based export: header ``dim N basis-hash``, then sorted entries."""
    b = a.basis
    lines = [f"{b.dim} {b.depth} {b.basis_hash()}"]
    for (r, c) in sorted(a.entries):
        v = a.entries[(r, c)]
        lines.append(f"{r} {c} {v.numerator}/{v.denominator}")
    return "\n".join(lines) + "\n"

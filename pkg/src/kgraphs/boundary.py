"""Exhaustive sets, vertex classification, the path space and its boundary.

In exact mode (acyclic skeleton) the path space is the finite set of all
paths and boundary membership is decidable by checking minimal exhaustive
sets at every vertex along a path.  On cyclic skeletons only a truncated
view is available: elements are prefix classes up to a degree bound, with
per-color markers recording whether extensions continue past the bound or
run forever (cycle reachability).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .skeleton import Degree, ExactModeError, Skeleton, degree_box, is_acyclic
from . import paths as pth
from .paths import Path


@dataclass(frozen=True)
class VertexClassification:
    """Vertices split by how they receive edges.

    sources receive none; every vertex of a finite skeleton receives
    finitely many, so the regular vertices are exactly the non-sources.
    """

    sources: tuple[str, ...]
    finitely_receiving: tuple[str, ...]
    regular: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "sources": list(self.sources),
            "finitely_receiving": list(self.finitely_receiving),
            "regular": list(self.regular),
        }


def classify_vertices(sk: Skeleton) -> VertexClassification:
    sources = tuple(sorted(v.id for v in sk.vertices if not sk.edges_by_range[v.id]))
    finite = tuple(sorted(v.id for v in sk.vertices))
    regular = tuple(sorted(set(finite) - set(sources)))
    return VertexClassification(sources, finite, regular)


@dataclass(frozen=True)
class ExhaustiveSet:
    """A set of paths ranged at one vertex, exhaustive for it."""

    vertex: str
    members: tuple[Path, ...]


@dataclass(frozen=True)
class ExhaustivenessResult:
    status: str  # "exhaustive" | "not_exhaustive" | "unknown"
    witness: Path | None = None
    bound: Degree | None = None


def _has_common_extension(sk: Skeleton, a: Path, b: Path) -> bool:
    return bool(pth.minimal_extension_pairs(sk, a, b))


def is_exhaustive(
    sk: Skeleton, vertex_id: str, members, bound: Degree | None = None
) -> ExhaustivenessResult:
    """Decide whether the member paths are exhaustive at the vertex.

    Without a bound every path ranged at the vertex is checked, which
    requires that set to be finite.  With a bound, only paths of degree
    <= bound are checked: a failure witness is always definitive, but a
    clean sweep is reported as "unknown": compatibility of the checked
    prefixes says nothing about longer paths.
    """
    members = list(members)
    for m in members:
        if m.range != vertex_id:
            raise ValueError(f"member ranges at {m.range!r}, not {vertex_id!r}")
    if bound is None:
        candidates = pth.paths_with_range(sk, vertex_id)
    else:
        candidates = [
            p for n in degree_box(bound) for p in pth.paths_from(sk, vertex_id, n)
        ]
    for lam in candidates:
        if not any(_has_common_extension(sk, lam, mu) for mu in members):
            return ExhaustivenessResult("not_exhaustive", witness=lam, bound=bound)
    if bound is None:
        return ExhaustivenessResult("exhaustive")
    return ExhaustivenessResult("unknown", bound=bound)


def minimal_exhaustive_sets(sk: Skeleton, vertex_id: str) -> tuple[ExhaustiveSet, ...]:
    """All inclusion-minimal exhaustive subsets of the paths at a vertex.

    Monotonicity (supersets of exhaustive sets are exhaustive) means these
    suffice for boundary checking.  Searched smallest-first with superset
    pruning; the vertex path itself guarantees at least one hit.
    """
    pool = pth.paths_with_range(sk, vertex_id)
    # Precompute pairwise compatibility: entry [i][j] says pool[i] and
    # pool[j] admit a common extension.
    compatible = [
        [_has_common_extension(sk, a, b) for b in pool] for a in pool
    ]
    found: list[tuple[int, ...]] = []
    for size in range(1, len(pool) + 1):
        for combo in combinations(range(len(pool)), size):
            if any(set(minimal) <= set(combo) for minimal in found):
                continue
            if all(any(compatible[i][j] for j in combo) for i in range(len(pool))):
                found.append(combo)
    return tuple(
        ExhaustiveSet(vertex_id, tuple(pool[i] for i in combo)) for combo in found
    )


@dataclass(frozen=True)
class PathSpaceElement:
    """A path-space point, or in truncated mode a prefix class.

    Exact elements are plain paths.  A truncated element records the path
    seen up to the bound plus, per color, whether extensions continue past
    it (`extendable`) and whether they can continue forever (`unbounded`,
    from cycle reachability).
    """

    path: Path
    truncated: bool = False
    extendable: tuple[bool, ...] | None = None
    unbounded: tuple[bool, ...] | None = None

    @property
    def degree(self) -> Degree:
        return self.path.degree

    @property
    def extended_degree(self) -> tuple[int | float, ...]:
        """Recorded degree with `inf` where the class grows without bound."""
        if not self.truncated or self.unbounded is None:
            return self.path.degree.coords
        return tuple(
            float("inf") if unb else c
            for c, unb in zip(self.path.degree.coords, self.unbounded)
        )

    def prefix_table(self, sk: Skeleton) -> dict[Degree, Path]:
        return {
            m: pth.factorize(sk, self.path, m)[0] for m in degree_box(self.path.degree)
        }

    def to_json(self, sk: Skeleton) -> dict:
        out: dict = {
            "degree": [c if c != float("inf") else "inf" for c in self.extended_degree],
            "prefixes": [
                [list(m.coords), p.to_json()]
                for m, p in sorted(
                    self.prefix_table(sk).items(), key=lambda kv: kv[0].coords
                )
            ],
            "truncated": self.truncated,
        }
        if self.truncated:
            out["extendable"] = list(self.extendable or ())
        return out


class FinitePathSpace:
    """An enumerated path space: exact (all paths) or truncated at a bound."""

    def __init__(
        self,
        skeleton: Skeleton,
        mode: str,
        elements,
        bound: Degree | None = None,
        boundary_only: bool = False,
    ):
        if mode not in ("exact", "truncated"):
            raise ValueError(f"mode must be 'exact' or 'truncated', got {mode!r}")
        self.skeleton = skeleton
        self.mode = mode
        self.bound = bound
        self.elements: tuple[PathSpaceElement, ...] = tuple(elements)
        self.boundary_only = boundary_only
        self._index = {el.path: i for i, el in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def index_of(self, p: Path) -> int:
        return self._index[p]

    def __contains__(self, p: Path) -> bool:
        return p in self._index

    @property
    def is_exact(self) -> bool:
        return self.mode == "exact"


def _color_unbounded(sk: Skeleton, vertex_id: str) -> tuple[bool, ...]:
    """Per color: can extensions from the vertex grow that coordinate forever?"""
    reach = sk.descendants[vertex_id] | {vertex_id}
    out = []
    for c in range(1, sk.rank + 1):
        out.append(
            any(
                e.color == c and sk.edge_on_cycle(e.id)
                for v in reach
                for e in sk.edges_by_range[v]
            )
        )
    return tuple(out)


def _truncated_element(sk: Skeleton, p: Path) -> PathSpaceElement:
    tail_vertex = pth.source(sk, p)
    extendable = tuple(
        any(e.color == c for e in sk.edges_by_range[tail_vertex])
        for c in range(1, sk.rank + 1)
    )
    return PathSpaceElement(
        p, truncated=True, extendable=extendable, unbounded=_color_unbounded(sk, tail_vertex)
    )


def enumerate_path_space(sk: Skeleton, bound: Degree | None = None) -> FinitePathSpace:
    """Enumerate the path space: exact when no bound is given (needs acyclicity)."""
    if bound is None:
        if not is_acyclic(sk):
            raise ExactModeError(
                "cyclic skeleton: the path space is infinite, pass a truncation bound"
            )
        elements = [PathSpaceElement(p) for p in pth.enumerate_paths(sk)]
        return FinitePathSpace(sk, "exact", elements)
    pool = sorted(
        {p for n in degree_box(bound) for p in pth.all_paths(sk, n)},
        key=pth.path_sort_key,
    )
    return FinitePathSpace(sk, "truncated", [_truncated_element(sk, p) for p in pool], bound)


def shift(sk: Skeleton, x: PathSpaceElement, m: Degree) -> PathSpaceElement:
    """Drop the degree-m prefix: the tail element after m."""
    if not m <= x.path.degree:
        raise ValueError(f"cannot shift by {m} past recorded degree {x.path.degree}")
    _, tail = pth.factorize(sk, x.path, m)
    if x.truncated:
        return PathSpaceElement(tail, True, x.extendable, x.unbounded)
    return PathSpaceElement(tail)


def prepend(sk: Skeleton, lam: Path, x: PathSpaceElement) -> PathSpaceElement:
    """Extend the element by a path on the range side; s(lam) must be r(x)."""
    combined = pth.compose(sk, lam, x.path)
    if x.truncated:
        return PathSpaceElement(combined, True, x.extendable, x.unbounded)
    return PathSpaceElement(combined)


@dataclass(frozen=True)
class BoundaryEntry:
    """One (position, exhaustive set) obligation and how it was settled."""

    at: Degree
    vertex: str
    members: tuple[Path, ...]
    witness: Path | None

    def to_json(self) -> dict:
        return {
            "at": list(self.at.coords),
            "vertex": self.vertex,
            "set": [p.to_json() for p in self.members],
            "witness": None if self.witness is None else self.witness.to_json(),
        }


@dataclass(frozen=True)
class BoundaryCertificate:
    status: str  # "boundary" | "not_boundary" | "undecided_at_bound"
    entries: tuple[BoundaryEntry, ...]

    def to_json(self) -> dict:
        return {"status": self.status, "entries": [e.to_json() for e in self.entries]}


def is_boundary(
    space: FinitePathSpace, x: PathSpaceElement | Path, _cache: dict | None = None
) -> tuple[bool | None, BoundaryCertificate]:
    """Decide boundary membership of an exact element, with a certificate.

    For every position m along the path and every minimal exhaustive set at
    the vertex there, some member must be a prefix of the tail.  Truncated
    spaces cannot settle this; the certificate then says so and the boolean
    is None.
    """
    el = x if isinstance(x, PathSpaceElement) else PathSpaceElement(x)
    if not space.is_exact or el.truncated:
        return None, BoundaryCertificate("undecided_at_bound", ())
    sk = space.skeleton
    cache = _cache if _cache is not None else {}
    entries: list[BoundaryEntry] = []
    p = el.path
    for m in degree_box(p.degree):
        v = pth.vertex_at(sk, p, m)
        if v not in cache:
            cache[v] = minimal_exhaustive_sets(sk, v)
        for ex_set in cache[v]:
            witness = None
            for lam in ex_set.members:
                if m + lam.degree <= p.degree and pth.segment(sk, p, m, m + lam.degree) == lam:
                    witness = lam
                    break
            entries.append(BoundaryEntry(m, v, ex_set.members, witness))
            if witness is None:
                return False, BoundaryCertificate("not_boundary", tuple(entries))
    return True, BoundaryCertificate("boundary", tuple(entries))


def boundary_paths(space: FinitePathSpace) -> FinitePathSpace:
    """The boundary restriction of an exact path space."""
    if not space.is_exact:
        raise ExactModeError("boundary paths are only decidable in exact mode")
    cache: dict = {}
    kept = [el for el in space.elements if is_boundary(space, el, cache)[0]]
    return FinitePathSpace(space.skeleton, "exact", kept, boundary_only=True)


def boundary_report(space: FinitePathSpace) -> dict:
    """Serializable boundary listing with certificates and vertex classes."""
    sk = space.skeleton
    cache: dict = {}
    members = []
    for el in space.elements:
        verdict, cert = is_boundary(space, el, cache)
        members.append(
            {
                "element": el.to_json(sk),
                "boundary": verdict,
                "certificate": cert.to_json(),
            }
        )
    return {
        "classification": classify_vertices(sk).to_json(),
        "elements": members,
        "boundary_size": sum(1 for m in members if m["boundary"]),
    }

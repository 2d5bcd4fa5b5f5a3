"""Path arithmetic in a validated rank-k graph.

Paths are stored in color-ascending normal form: all color-1 edges first,
then color-2, and so on.  Composition and factorization are computed by
adjacent-transposition rewriting with the skeleton's factorization squares;
on a validated skeleton the rewriting is confluent, so the normal form is
canonical and path equality is structural equality.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

from .skeleton import Degree, ExactModeError, Skeleton, degree_box, load_skeleton


@dataclass(frozen=True)
class Path:
    """A morphism in normal form: range vertex plus one edge word per color.

    The flattened word reads left to right from the range: the source of
    each letter is the range of the next.  A degree-0 path is a vertex.
    """

    range: str
    blocks: tuple[tuple[str, ...], ...]

    @cached_property
    def degree(self) -> Degree:
        return Degree(tuple(len(b) for b in self.blocks))

    @property
    def word(self) -> tuple[str, ...]:
        return tuple(e for block in self.blocks for e in block)

    @property
    def is_vertex(self) -> bool:
        return all(not b for b in self.blocks)

    def to_json(self) -> dict:
        return {"range": self.range, "blocks": [list(b) for b in self.blocks]}


def path_sort_key(p: Path) -> str:
    return json.dumps(p.to_json(), sort_keys=True)


def sort_paths(paths) -> tuple[Path, ...]:
    return tuple(sorted(paths, key=path_sort_key))


def vertex_path(sk: Skeleton, vertex_id: str) -> Path:
    if vertex_id not in sk.vertex_ids:
        raise ValueError(f"unknown vertex {vertex_id!r}")
    return Path(vertex_id, ((),) * sk.rank)


def edge_path(sk: Skeleton, edge_id: str) -> Path:
    e = sk.edge_by_id[edge_id]
    blocks = tuple((e.id,) if c == e.color else () for c in range(1, sk.rank + 1))
    return Path(e.range, blocks)


def source(sk: Skeleton, p: Path) -> str:
    word = p.word
    return sk.edge_by_id[word[-1]].source if word else p.range


def _check_word(sk: Skeleton, word: list[str] | tuple[str, ...]) -> None:
    for a, b in zip(word, word[1:]):
        if sk.edge_by_id[a].source != sk.edge_by_id[b].range:
            raise ValueError(f"word not composable at {a}.{b}")


def _normalize(sk: Skeleton, word: list[str]) -> list[str]:
    """Bubble the word into color-ascending order, leftmost descent first."""
    color = sk.color_of
    swap = sk.swap_map
    w = list(word)
    while True:
        t = next((t for t in range(len(w) - 1) if color(w[t]) > color(w[t + 1])), None)
        if t is None:
            return w
        pair = (w[t], w[t + 1])
        try:
            w[t], w[t + 1] = swap[pair]
        except KeyError:
            raise ValueError(
                f"no factorization square for the pair {pair[0]}.{pair[1]}; "
                "skeleton does not present a rank-k graph"
            ) from None


def _from_sorted_word(sk: Skeleton, range_vertex: str, word: list[str]) -> Path:
    blocks: list[list[str]] = [[] for _ in range(sk.rank)]
    for eid in word:
        blocks[sk.color_of(eid) - 1].append(eid)
    return Path(range_vertex, tuple(tuple(b) for b in blocks))


def path_from_word(sk: Skeleton, word, at: str | None = None) -> Path:
    """Build the path of an arbitrary composable edge word (any color order).

    `at` names the range vertex and is required only for the empty word.
    """
    word = list(word)
    if not word:
        if at is None:
            raise ValueError("empty word needs an explicit vertex")
        return vertex_path(sk, at)
    _check_word(sk, word)
    rng = sk.edge_by_id[word[0]].range
    if at is not None and at != rng:
        raise ValueError(f"word ranges at {rng!r}, not {at!r}")
    return _from_sorted_word(sk, rng, _normalize(sk, word))


def compose(sk: Skeleton, a: Path, b: Path) -> Path:
    """The composite a.b; requires s(a) = r(b)."""
    if source(sk, a) != b.range:
        raise ValueError(
            f"not composable: source {source(sk, a)!r} != range {b.range!r}"
        )
    word = _normalize(sk, list(a.word) + list(b.word))
    return _from_sorted_word(sk, a.range, word)


def factorize(sk: Skeleton, p: Path, m: Degree) -> tuple[Path, Path]:
    """The unique (head, tail) with p = head.tail and d(head) = m."""
    d = p.degree
    if not m <= d:
        raise ValueError(f"cannot factor degree-{m} prefix out of degree-{d} path")
    color = sk.color_of
    swap = sk.swap_map
    word = list(p.word)
    prefix: list[str] = []
    for c in range(1, sk.rank + 1):
        for _ in range(m.coords[c - 1]):
            t = next(t for t, eid in enumerate(word) if color(eid) == c)
            while t > 0:
                word[t - 1], word[t] = swap[(word[t - 1], word[t])]
                t -= 1
            prefix.append(word.pop(0))
    head = _from_sorted_word(sk, p.range, prefix)
    tail_range = sk.edge_by_id[prefix[-1]].source if prefix else p.range
    tail = _from_sorted_word(sk, tail_range, _normalize(sk, word))
    return head, tail


def segment(sk: Skeleton, p: Path, lo: Degree, hi: Degree) -> Path:
    """The middle factor p(lo, hi); requires 0 <= lo <= hi <= d(p)."""
    if not (lo <= hi and hi <= p.degree):
        raise ValueError(f"segment bounds must satisfy 0 <= {lo} <= {hi} <= {p.degree}")
    head, _ = factorize(sk, p, hi)
    _, mid = factorize(sk, head, lo)
    return mid


def vertex_at(sk: Skeleton, p: Path, m: Degree) -> str:
    """The vertex p(m) = source of the degree-m prefix."""
    head, _ = factorize(sk, p, m)
    return source(sk, head)


def paths_from(sk: Skeleton, vertex_id: str, n: Degree) -> tuple[Path, ...]:
    """All degree-n paths ranged at the vertex, in normal form, sorted."""
    if n.k != sk.rank:
        raise ValueError(f"degree has {n.k} coordinates, skeleton has rank {sk.rank}")
    if vertex_id not in sk.vertex_ids:
        raise ValueError(f"unknown vertex {vertex_id!r}")
    out: list[Path] = []
    word: list[str] = []

    def grow(c: int, left: int, at: str) -> None:
        if left == 0:
            if c == sk.rank:
                out.append(_from_sorted_word(sk, vertex_id, word))
                return
            grow(c + 1, n.coords[c], at)
            return
        for e in sk.edges_by_range[at]:
            if e.color == c:
                word.append(e.id)
                grow(c, left - 1, e.source)
                word.pop()

    grow(1, n.coords[0], vertex_id)
    return sort_paths(out)


def all_paths(sk: Skeleton, n: Degree) -> tuple[Path, ...]:
    """All paths of degree n, in normal form, sorted."""
    out: list[Path] = []
    for v in sk.vertices:
        out.extend(paths_from(sk, v.id, n))
    return sort_paths(out)


def paths_with_range(sk: Skeleton, vertex_id: str) -> tuple[Path, ...]:
    """All paths (every degree) ranged at the vertex; requires that set finite."""
    if sk.has_infinite_extensions(vertex_id):
        raise ExactModeError(
            f"vertex {vertex_id!r} reaches a cycle: its path set is infinite"
        )
    collected: set[Path] = set()
    frontier = [vertex_path(sk, vertex_id)]
    while frontier:
        nxt: list[Path] = []
        for p in frontier:
            if p in collected:
                continue
            collected.add(p)
            for e in sk.edges_by_range[source(sk, p)]:
                nxt.append(compose(sk, p, edge_path(sk, e.id)))
        frontier = nxt
    return sort_paths(collected)


def enumerate_paths(sk: Skeleton) -> tuple[Path, ...]:
    """All paths of the graph; requires an acyclic skeleton."""
    out: set[Path] = set()
    for v in sk.vertices:
        out.update(paths_with_range(sk, v.id))
    return sort_paths(out)


@dataclass(frozen=True)
class MinimalExtensionPair:
    """(alpha, beta) with a.alpha = b.beta of degree d(a) v d(b)."""

    alpha: Path
    beta: Path


def minimal_extension_pairs(sk: Skeleton, a: Path, b: Path) -> tuple[MinimalExtensionPair, ...]:
    """All minimal common extension pairs of two paths with the same range."""
    if a.range != b.range:
        return ()
    top = a.degree.join(b.degree)
    alphas = paths_from(sk, source(sk, a), top - a.degree)
    betas = paths_from(sk, source(sk, b), top - b.degree)
    left = {alpha: compose(sk, a, alpha) for alpha in alphas}
    right = {beta: compose(sk, b, beta) for beta in betas}
    pairs = [
        MinimalExtensionPair(alpha, beta)
        for alpha in alphas
        for beta in betas
        if left[alpha] == right[beta]
    ]
    pairs.sort(key=lambda p: (path_sort_key(p.alpha), path_sort_key(p.beta)))
    return tuple(pairs)


def minimal_common_extensions(sk: Skeleton, U, V) -> tuple[Path, ...]:
    """The set of minimal common extensions of two uniform-degree path sets."""
    U, V = list(U), list(V)
    for name, group in (("U", U), ("V", V)):
        degs = {p.degree for p in group}
        if len(degs) > 1:
            raise ValueError(f"{name} mixes degrees {sorted(d.coords for d in degs)}")
    out: set[Path] = set()
    for a in U:
        for b in V:
            for pair in minimal_extension_pairs(sk, a, b):
                out.add(compose(sk, a, pair.alpha))
    return sort_paths(out)


@dataclass(frozen=True)
class AlignmentReport:
    bound: Degree
    pairs_checked: int
    max_size: int
    witness: tuple[Path, Path] | None
    rank_one_single_valued: bool | None
    passed: bool

    def to_json(self) -> dict:
        return {
            "bound": list(self.bound.coords),
            "pairs_checked": self.pairs_checked,
            "max_size": self.max_size,
            "witness": None
            if self.witness is None
            else [self.witness[0].to_json(), self.witness[1].to_json()],
            "rank_one_single_valued": self.rank_one_single_valued,
            "passed": self.passed,
        }


def alignment_report(sk: Skeleton, bound: Degree) -> AlignmentReport:
    """Survey |minimal extension pair sets| over all path pairs up to a bound.

    Finite skeletons are finitely aligned by construction, so the survey
    always completes; for rank 1 it additionally asserts that every pair set
    has at most one element.
    """
    pool = [p for n in degree_box(bound) for p in all_paths(sk, n)]
    max_size, witness, pairs = 0, None, 0
    single = True
    for a in pool:
        for b in pool:
            pairs += 1
            size = len(minimal_extension_pairs(sk, a, b))
            if size > 1:
                single = False
            if size > max_size:
                max_size, witness = size, (a, b)
    rank_one = single if sk.rank == 1 else None
    passed = rank_one is not False
    return AlignmentReport(bound, pairs, max_size, witness, rank_one, passed)


@dataclass(frozen=True)
class GridModel:
    """The lattice-interval rank-k graph on {p : p <= shape}.

    `morphisms` maps each path to the interval pair (range coords,
    range coords + degree); the map is a bijection onto
    {(p, q) : p <= q <= shape}.
    """

    shape: Degree
    skeleton: Skeleton
    morphisms: dict[Path, tuple[tuple[int, ...], tuple[int, ...]]]

    @property
    def morphism_count(self) -> int:
        return len(self.morphisms)


def _grid_vertex_id(coords: tuple[int, ...]) -> str:
    return ",".join(map(str, coords))


def grid_skeleton(k: int, shape: Degree) -> GridModel:
    """Present the interval category on {p <= shape} as a skeleton."""
    if k < 1:
        raise ValueError(f"rank must be >= 1, got {k}")
    if shape.k != k:
        raise ValueError(f"shape has {shape.k} coordinates, expected {k}")
    points = list(degree_box(shape))
    vertices = [{"id": _grid_vertex_id(p.coords)} for p in points]
    edges = []
    for p in points:
        for c in range(1, k + 1):
            q = p + Degree.basis(k, c)
            if q <= shape:
                edges.append(
                    {
                        "id": f"{_grid_vertex_id(p.coords)}+e{c}",
                        "color": c,
                        "range": _grid_vertex_id(p.coords),
                        "source": _grid_vertex_id(q.coords),
                    }
                )
    squares = []
    for p in points:
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                ei, ej = Degree.basis(k, i), Degree.basis(k, j)
                if not p + ei + ej <= shape:
                    continue
                pid = _grid_vertex_id(p.coords)
                squares.append(
                    {
                        "first": f"{pid}+e{i}",
                        "second": f"{_grid_vertex_id((p + ei).coords)}+e{j}",
                        "swapped_first": f"{pid}+e{j}",
                        "swapped_second": f"{_grid_vertex_id((p + ej).coords)}+e{i}",
                    }
                )
    sk = load_skeleton({"rank": k, "vertices": vertices, "edges": edges, "squares": squares})
    table: dict[Path, tuple[tuple[int, ...], tuple[int, ...]]] = {}
    for n in degree_box(shape):
        for p in all_paths(sk, n):
            lo = tuple(int(c) for c in p.range.split(","))
            hi = tuple(a + b for a, b in zip(lo, n.coords))
            table[p] = (lo, hi)
    return GridModel(shape, sk, table)
